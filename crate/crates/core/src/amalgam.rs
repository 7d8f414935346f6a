//! Modular flats, proper amalgams, the generalized parallel connection and glueing.

use crate::element::{bits, ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::matroid::{restrictions_equal, Matroid, DEFAULT_BRUTE_FORCE_BOUND, DEFAULT_FLAT_BUDGET, EXPLICIT_MAX};

/// Whether the flat `x` (a local mask) satisfies the modular equality against every flat in `flats`.
pub(crate) fn modular_against(m: &Matroid, x: u64, flats: &[u64]) -> bool {
    let rx = m.rank_mask(x);
    flats.iter().all(|&y| m.rank_mask(x | y) + m.rank_mask(x & y) == rx + m.rank_mask(y))
}

/// True iff the flat `x` is modular: `r(X ∪ Y) + r(X ∩ Y) = r(X) + r(Y)` for every flat `Y`.
pub fn is_modular_flat(m: &Matroid, x: &ElementSet) -> Result<bool> {
    let xm = m.mask_of(x)?;
    if !m.is_flat_mask(xm) {
        return Err(Error::domain(format!("{x:?} is not a flat")));
    }
    let flats = m.flat_masks(DEFAULT_FLAT_BUDGET)?;
    Ok(modular_against(m, xm, &flats))
}

/// Semiflat test on local masks, with the flats supplied by the caller.
pub(crate) fn semiflat_mask(m: &Matroid, t: u64, flats: &[u64]) -> bool {
    let cl = m.closure_mask(t);
    let extra_ok = bits(cl & !t).all(|i| m.rank_mask(1 << i) == 0 || bits(t).any(|j| m.parallel(i, j)));
    extra_ok && modular_against(m, cl, flats)
}

/// True iff `cl(T)` is a modular flat and every element of `cl(T) \ T` is a loop or parallel to an element of `T`.
pub fn is_modular_semiflat(m: &Matroid, t: &ElementSet) -> Result<bool> {
    let tm = m.mask_of(t)?;
    let flats = m.flat_masks(DEFAULT_FLAT_BUDGET)?;
    Ok(semiflat_mask(m, tm, &flats))
}

/// The functions eta and zeta of a pair of matroids, tabulated over the union of their ground sets.
#[derive(Clone, Debug)]
pub struct AmalgamBounds {
    pub ground: ElementSet,
    pub eta: Vec<u8>,
    pub zeta: Vec<u8>,
}

impl AmalgamBounds {
    /// Tabulates `η(X) = r1(X∩E1) + r2(X∩E2) − r(X∩T)` and `ζ(X) = min{η(Y) : Y ⊇ X}` by exhaustive enumeration.
    pub fn new(m1: &Matroid, m2: &Matroid) -> Result<Self> {
        let ground: ElementSet = m1.elements().iter().chain(m2.elements()).copied().collect();
        let n = ground.len();
        if n > DEFAULT_BRUTE_FORCE_BOUND {
            return Err(Error::resource(format!("zeta over {n} elements exceeds bound {DEFAULT_BRUTE_FORCE_BOUND}")));
        }
        let common: ElementSet = m1.ground_set().intersection(&m2.ground_set()).copied().collect();
        if !restrictions_equal(m1, m2, &common)? {
            return Err(Error::domain("the matroids differ on their common elements"));
        }
        let order: Vec<ElementId> = ground.iter().copied().collect();
        let to1: Vec<Option<usize>> = order.iter().map(|e| m1.position(*e)).collect();
        let to2: Vec<Option<usize>> = order.iter().map(|e| m2.position(*e)).collect();
        let proj = |x: u64, to: &[Option<usize>]| bits(x).filter_map(|i| to[i]).fold(0u64, |m, p| m | 1 << p);
        let tmask = m1.mask_of(&common)?;
        let eta: Vec<u8> = (0..1u64 << n)
            .map(|x| {
                let a = proj(x, &to1);
                let b = proj(x, &to2);
                (m1.rank_mask(a) + m2.rank_mask(b) - m1.rank_mask(a & tmask)) as u8
            })
            .collect();
        let mut zeta = eta.clone();
        for x in (0..1u64 << n).rev() {
            for i in 0..n {
                if x & (1 << i) == 0 {
                    let up = zeta[(x | 1 << i) as usize];
                    if up < zeta[x as usize] {
                        zeta[x as usize] = up;
                    }
                }
            }
        }
        Ok(AmalgamBounds { ground, eta, zeta })
    }

    fn mask(&self, x: &ElementSet) -> Result<u64> {
        let mut m = 0;
        for e in x {
            let i = self.ground.iter().position(|g| g == e).ok_or_else(|| Error::domain(format!("unknown element {e}")))?;
            m |= 1u64 << i;
        }
        Ok(m)
    }

    fn set(&self, m: u64) -> ElementSet {
        let order: Vec<ElementId> = self.ground.iter().copied().collect();
        bits(m).map(|i| order[i]).collect()
    }
}

pub fn eta(m1: &Matroid, m2: &Matroid, x: &ElementSet) -> Result<usize> {
    let b = AmalgamBounds::new(m1, m2)?;
    Ok(b.eta[b.mask(x)? as usize] as usize)
}

pub fn zeta(m1: &Matroid, m2: &Matroid, x: &ElementSet) -> Result<usize> {
    let b = AmalgamBounds::new(m1, m2)?;
    Ok(b.zeta[b.mask(x)? as usize] as usize)
}

/// The matroid with rank function zeta, when zeta is submodular.
pub fn proper_amalgam(m1: &Matroid, m2: &Matroid) -> Result<Matroid> {
    let b = AmalgamBounds::new(m1, m2)?;
    let n = b.ground.len();
    let z = &b.zeta;
    for x in 0..(1u64 << n) {
        for i in 0..n {
            if x & (1 << i) != 0 {
                continue;
            }
            for j in i + 1..n {
                if x & (1 << j) != 0 {
                    continue;
                }
                let (f, g) = (x | 1 << i, x | 1 << j);
                let lhs = z[f as usize] as usize + z[g as usize] as usize;
                if lhs < z[(f | g) as usize] as usize + z[x as usize] as usize {
                    return Err(Error::NoProperAmalgam { f: b.set(f), g: b.set(g) });
                }
            }
        }
    }
    let m = Matroid::from_rank_table(&b.ground, b.zeta.clone())?;
    Ok(m)
}

fn check_is_amalgam(m: &Matroid, m1: &Matroid, m2: &Matroid) -> Result<()> {
    for (part, which) in [(m1, "first"), (m2, "second")] {
        let e = part.ground_set();
        if !e.iter().all(|x| m.contains(*x)) || !restrictions_equal(m, part, &e)? {
            return Err(Error::domain(format!("the matroid does not restrict to the {which} part")));
        }
    }
    let union: ElementSet = m1.ground_set().union(&m2.ground_set()).copied().collect();
    if union != m.ground_set() {
        return Err(Error::domain("ground set is not the union of the parts"));
    }
    Ok(())
}

/// An amalgam `M` of `M1`, `M2` is proper iff `r(F) = r(F∩E1) + r(F∩E2) − r(F∩T)` for every flat `F`.
pub fn is_proper_amalgam(m: &Matroid, m1: &Matroid, m2: &Matroid) -> Result<bool> {
    check_is_amalgam(m, m1, m2)?;
    let e1 = m.mask_of(m1.elements())?;
    let e2 = m.mask_of(m2.elements())?;
    let flats = m.flat_masks(DEFAULT_FLAT_BUDGET)?;
    Ok(flats
        .iter()
        .all(|&f| m.rank_mask(f) + m.rank_mask(f & e1 & e2) == m.rank_mask(f & e1) + m.rank_mask(f & e2)))
}

fn common(m1: &Matroid, m2: &Matroid) -> ElementSet {
    m1.ground_set().intersection(&m2.ground_set()).copied().collect()
}

/// Keeps small results as rank tables so repeated rank queries are lookups.
fn settle(m: Matroid) -> Result<Matroid> {
    if m.len() <= EXPLICIT_MAX.min(16) {
        m.to_explicit()
    } else {
        Ok(m)
    }
}

/// `M1 ⊕_N M2` for `T = E(M1) ∩ E(M2)` a modular semiflat of `M1`, evaluated with the closed rank formula.
pub fn generalized_parallel_connection(m1: &Matroid, m2: &Matroid) -> Result<Matroid> {
    let t = common(m1, m2);
    if !restrictions_equal(m1, m2, &t)? {
        return Err(Error::precondition("restriction-mismatch", format!("the parts differ on {t:?}")));
    }
    if !is_modular_semiflat(m1, &t)? {
        return Err(Error::precondition("not-modular-semiflat", format!("{t:?} is not a modular semiflat of the first matroid")));
    }
    settle(Matroid::gpc_lazy(m1, m2)?)
}

/// Named precondition failures of glueing `m1` and `m2` along `k` and deleting `d`.
pub fn glue_violations(m1: &Matroid, m2: &Matroid, k: &Matroid, d: &ElementSet) -> Result<Vec<(&'static str, String)>> {
    let mut out = Vec::new();
    let shared = common(m1, m2);
    let outside: ElementSet = shared.iter().filter(|e| !k.contains(**e)).copied().collect();
    if !outside.is_empty() {
        out.push(("shared-outside-glue-matroid", format!("{outside:?} shared by both parts but missing from K")));
    }
    if let Some(e) = d.iter().find(|e| !k.contains(**e)) {
        out.push(("deletion-outside-glue-matroid", format!("deleted element {e} is not in K")));
    }
    let flats = k.flat_masks(DEFAULT_FLAT_BUDGET)?;
    for (i, mi) in [m1, m2].into_iter().enumerate() {
        let j = common(mi, k);
        if !restrictions_equal(mi, k, &j)? {
            out.push(("restriction-mismatch", format!("part {} differs from K on {j:?}", i + 1)));
        }
        if !semiflat_mask(k, k.mask_of(&j)?, &flats) {
            out.push(("not-modular-semiflat", format!("J{} = {j:?} is not a modular semiflat of K", i + 1)));
        }
    }
    Ok(out)
}

/// `((K ⊕_{J1} M1) ⊕_{J2} M2) \ D`.
pub fn glue(m1: &Matroid, m2: &Matroid, k: &Matroid, d: &ElementSet) -> Result<Matroid> {
    if let Some((name, detail)) = glue_violations(m1, m2, k, d)?.into_iter().next() {
        return Err(Error::precondition(name, detail));
    }
    glue_unchecked(m1, m2, k, d)
}

pub(crate) fn glue_unchecked(m1: &Matroid, m2: &Matroid, k: &Matroid, d: &ElementSet) -> Result<Matroid> {
    let k = settle(k.clone())?;
    let inner = Matroid::gpc_lazy(&k, m1)?;
    let outer = Matroid::gpc_lazy(&inner, m2)?;
    settle(outer.delete(d)?)
}
