//! Tutte polynomials by subset enumeration and by dynamic programming over
//! nice amalgam decompositions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::decomposition::{AmalgamDecomposition, NodeId};
use crate::element::bits;
use crate::error::{Error, Result};
use crate::matroid::{Matroid, EXPLICIT_MAX};
use crate::types::{frames, Signature};

/// An exact bivariate polynomial in `x`, `y`, kept in both the monomial
/// basis and the `(x − 1), (y − 1)` basis it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuttePolynomial {
    /// `coeffs[i][j]` multiplies `x^i y^j`.
    coeffs: Vec<Vec<BigInt>>,
    /// `whitney[a][b]` multiplies `(x − 1)^a (y − 1)^b`.
    whitney: Vec<Vec<BigInt>>,
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    b
}

impl TuttePolynomial {
    /// From `counts[(r, s)]`, the number of subsets of rank `r` and size `s`.
    pub fn from_rank_size_counts(full_rank: usize, counts: &BTreeMap<(usize, usize), BigUint>) -> Self {
        let amax = counts.keys().map(|&(r, _)| full_rank - r).max().unwrap_or(0);
        let bmax = counts.keys().map(|&(r, s)| s - r).max().unwrap_or(0);
        let mut whitney = vec![vec![BigInt::zero(); bmax + 1]; amax + 1];
        for (&(r, s), c) in counts {
            whitney[full_rank - r][s - r] += BigInt::from(c.clone());
        }
        let mut coeffs = vec![vec![BigInt::zero(); bmax + 1]; amax + 1];
        for a in 0..=amax {
            for b in 0..=bmax {
                let w = &whitney[a][b];
                if w.is_zero() {
                    continue;
                }
                for i in 0..=a {
                    let ci = binomial(a, i) * if (a - i) % 2 == 0 { 1 } else { -1 };
                    for j in 0..=b {
                        let cj = binomial(b, j) * if (b - j) % 2 == 0 { 1 } else { -1 };
                        coeffs[i][j] += w * &ci * cj;
                    }
                }
            }
        }
        TuttePolynomial { coeffs, whitney }
    }

    /// Coefficient of `x^i y^j`.
    pub fn coefficient(&self, i: usize, j: usize) -> BigInt {
        self.coeffs.get(i).and_then(|row| row.get(j)).cloned().unwrap_or_default()
    }

    /// Coefficient of `(x − 1)^a (y − 1)^b`.
    pub fn whitney_coefficient(&self, a: usize, b: usize) -> BigInt {
        self.whitney.get(a).and_then(|row| row.get(b)).cloned().unwrap_or_default()
    }

    /// Nonzero `(i, j, c)` with `c` the coefficient of `x^i y^j`, in display order.
    pub fn terms(&self) -> Vec<(usize, usize, BigInt)> {
        let mut out: Vec<(usize, usize, BigInt)> = Vec::new();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        out
    }

    pub fn evaluate(&self, x: &BigRational, y: &BigRational) -> BigRational {
        let mut total = BigRational::zero();
        let mut xi = BigRational::one();
        for row in &self.coeffs {
            let mut yj = BigRational::one();
            for c in row {
                if !c.is_zero() {
                    total += BigRational::from_integer(c.clone()) * &xi * &yj;
                }
                yj *= y;
            }
            xi *= x;
        }
        total
    }

    /// Evaluation at integer points.
    pub fn evaluate_int(&self, x: i64, y: i64) -> BigInt {
        let v = self.evaluate(&BigRational::from_integer(x.into()), &BigRational::from_integer(y.into()));
        v.to_integer()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> =
            self.terms().into_iter().map(|(i, j, c)| serde_json::json!([i, j, c.to_string()])).collect();
        serde_json::json!({ "coeffs": coeffs, "text": self.to_string() })
    }
}

fn monomial(i: usize, j: usize) -> String {
    let part = |v: &str, e: usize| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    format!("{}{}", part("x", i), part("y", j))
}

impl fmt::Display for TuttePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (i, j, c)) in terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let m = monomial(*i, *j);
            if m.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}{m}")?;
            }
        }
        Ok(())
    }
}

/// `T(M)` by summing over all `2^|E|` subsets.
pub fn tutte_bruteforce(m: &Matroid) -> Result<TuttePolynomial> {
    if m.len() > EXPLICIT_MAX {
        return Err(Error::resource(format!("brute-force Tutte over {} elements exceeds {EXPLICIT_MAX}", m.len())));
    }
    let mut counts: BTreeMap<(usize, usize), BigUint> = BTreeMap::new();
    for x in 0..(1u64 << m.len()) {
        *counts.entry((m.rank_mask(x), x.count_ones() as usize)).or_default() += 1u32;
    }
    Ok(TuttePolynomial::from_rank_size_counts(m.full_rank(), &counts))
}

/// Counts by rank and size, dense in both.
#[derive(Clone, Debug)]
struct Grid {
    sizes: usize,
    data: Vec<BigUint>,
}

impl Grid {
    fn new(n: usize) -> Self {
        Grid { sizes: n + 1, data: vec![BigUint::zero(); (n + 1) * (n + 1)] }
    }

    fn nonzero(&self) -> Vec<(usize, usize, &BigUint)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k / self.sizes, k % self.sizes, c))
            .collect()
    }

    fn add(&mut self, r: usize, s: usize, c: &BigUint) {
        self.data[r * self.sizes + s] += c;
    }

    fn total(&self) -> BigUint {
        self.data.iter().sum()
    }
}

/// One row of a count table, as written by `--dump-types`.
#[derive(Clone, Debug, Serialize)]
pub struct TableEntry {
    pub trace: u32,
    pub offsets: Vec<u8>,
    /// `[rank, size, count]` triples.
    pub counts: Vec<(usize, usize, String)>,
}

/// The count table of one node.
#[derive(Clone, Debug, Serialize)]
pub struct NodeTable {
    pub node: NodeId,
    pub boundary: Vec<u32>,
    pub entries: Vec<TableEntry>,
}

/// Per-node count tables and the resulting polynomial.
#[derive(Clone, Debug)]
pub struct TutteRun {
    pub polynomial: TuttePolynomial,
    pub tables: Vec<NodeTable>,
    /// Total count at each node, which is `2^{|E(M(v))|}`.
    pub totals: BTreeMap<NodeId, BigUint>,
}

/// `T(M)` for the matroid decomposed by `t`; non-nice trees are made nice first.
pub fn tutte_decomposition(t: &AmalgamDecomposition) -> Result<TuttePolynomial> {
    Ok(run(t, false)?.polynomial)
}

/// Like [`tutte_decomposition`], also returning every node's count table.
pub fn tutte_decomposition_with_tables(t: &AmalgamDecomposition) -> Result<TutteRun> {
    run(t, true)
}

fn run(t: &AmalgamDecomposition, keep_tables: bool) -> Result<TutteRun> {
    let report = t.validate();
    if !report.is_valid() {
        return Err(Error::Invalid(report));
    }
    let nice;
    let t = if t.is_nice() {
        t
    } else {
        nice = t.to_nice()?;
        &nice
    };
    let frames = frames(t)?;
    let grounds = t.grounds();
    let mut tables: HashMap<NodeId, HashMap<Signature, Grid>> = HashMap::new();
    let mut dumped = Vec::new();
    let mut totals = BTreeMap::new();
    for v in t.postorder() {
        let frame = &frames[&v];
        let n = grounds[&v].len();
        let fresh: Vec<u64> = bits(frame.fresh).map(|i| 1u64 << i).collect();
        let subsets: Vec<(u64, usize)> = (0..1u64 << fresh.len())
            .map(|c| (bits(c).fold(0, |a, i| a | fresh[i]), c.count_ones() as usize))
            .collect();
        let mut table: HashMap<Signature, Grid> = HashMap::new();
        let node = t.node(v)?;
        if node.is_leaf() {
            for &(s, size) in &subsets {
                if let Some((sig, delta)) = frame.combine(None, s) {
                    table.entry(sig).or_insert_with(|| Grid::new(n)).add(delta as usize, size, &BigUint::one());
                }
            }
        } else {
            let left = tables.remove(&node.children[0]).unwrap();
            let right = tables.remove(&node.children[1]).unwrap();
            for (a, ga) in &left {
                let na = ga.nonzero();
                for (b, gb) in &right {
                    let nb = gb.nonzero();
                    // The product does not depend on the fresh part, so form it once.
                    let mut product: BTreeMap<(usize, usize), BigUint> = BTreeMap::new();
                    for &(r1, s1, c1) in &na {
                        for &(r2, s2, c2) in &nb {
                            *product.entry((r1 + r2, s1 + s2)).or_default() += c1 * c2;
                        }
                    }
                    for &(s, size) in &subsets {
                        let Some((sig, delta)) = frame.combine(Some((a, b)), s) else { continue };
                        let g = table.entry(sig).or_insert_with(|| Grid::new(n));
                        for (&(r, sz), c) in &product {
                            let r = r as isize + delta;
                            debug_assert!(r >= 0);
                            g.add(r as usize, sz + size, c);
                        }
                    }
                }
            }
        }
        totals.insert(v, table.values().map(Grid::total).sum());
        if keep_tables {
            let mut entries: Vec<TableEntry> = table
                .iter()
                .map(|(sig, g)| TableEntry {
                    trace: sig.trace,
                    offsets: sig.offsets.clone(),
                    counts: g.nonzero().into_iter().map(|(r, s, c)| (r, s, c.to_string())).collect(),
                })
                .collect();
            entries.sort_by(|x, y| (x.trace, &x.offsets).cmp(&(y.trace, &y.offsets)));
            dumped.push(NodeTable { node: v, boundary: frame.boundary.iter().map(|e| e.0).collect(), entries });
        }
        tables.insert(v, table);
    }
    let root = tables.remove(&t.root()).unwrap();
    let mut counts: BTreeMap<(usize, usize), BigUint> = BTreeMap::new();
    for g in root.values() {
        for (r, s, c) in g.nonzero() {
            *counts.entry((r, s)).or_default() += c;
        }
    }
    let full_rank = counts.keys().map(|k| k.0).max().unwrap_or(0);
    Ok(TutteRun { polynomial: TuttePolynomial::from_rank_size_counts(full_rank, &counts), tables: dumped, totals })
}
