//! Ground sets, rank oracles and the basic matroid operations.
//!
//! Subsets are bit masks over the matroid's local element order (the sorted
//! label order), so every matroid is limited to 64 elements. Explicit rank
//! tables are limited to [`EXPLICIT_MAX`] elements.

mod io;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

pub use io::MatroidSpec;

use crate::element::{bits, ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::gf::{self, Prime};

/// Largest ground set stored as a full rank table.
pub const EXPLICIT_MAX: usize = 20;
/// Largest ground set of any matroid (subsets are 64-bit masks).
pub const MASK_MAX: usize = 64;
/// Default bound for brute-force enumerations such as circuits.
pub const DEFAULT_BRUTE_FORCE_BOUND: usize = 16;
/// Default cap on the number of flats produced by flat enumeration.
pub const DEFAULT_FLAT_BUDGET: usize = 200_000;

/// A finite matroid given by a rank oracle. Cheap to clone; immutable.
#[derive(Clone)]
pub struct Matroid {
    inner: Arc<Inner>,
}

struct Inner {
    ground: Vec<ElementId>,
    index: HashMap<ElementId, usize>,
    names: BTreeMap<ElementId, String>,
    repr: Repr,
}

enum Repr {
    Explicit(Vec<u8>),
    Linear { field: Prime, dim: usize, columns: Vec<Vec<u8>> },
    Graphic { ends: Vec<(usize, usize)>, vertices: usize },
    /// Rank pulled back from `base` through a position map, with an optional contracted set.
    View { base: Matroid, map: Vec<usize>, contracted: u64, offset: usize },
    Gpc(Box<GpcRepr>),
}

/// Lazy generalized parallel connection, evaluated with the closed rank formula.
struct GpcRepr {
    m1: Matroid,
    m2: Matroid,
    to1: Vec<Option<usize>>,
    to2: Vec<Option<usize>>,
    from1: Vec<usize>,
    from2: Vec<usize>,
    common1: u64,
}

/// Description of a violated rank axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    EmptyRank(usize),
    UnitIncrease { set: ElementSet, element: ElementId },
    Submodular { set: ElementSet, a: ElementId, b: ElementId },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::EmptyRank(r) => write!(f, "rank of the empty set is {r}"),
            AxiomViolation::UnitIncrease { set, element } => {
                write!(f, "adding {element} to {set:?} changes the rank by more than one or decreases it")
            }
            AxiomViolation::Submodular { set, a, b } => {
                write!(f, "submodularity fails at {set:?} with {a} and {b}")
            }
        }
    }
}

fn index_of(ground: &[ElementId]) -> HashMap<ElementId, usize> {
    ground.iter().enumerate().map(|(i, &e)| (e, i)).collect()
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Matroid {
    fn build(ground: Vec<ElementId>, repr: Repr) -> Result<Self> {
        if ground.len() > MASK_MAX {
            return Err(Error::resource(format!("{} elements exceed the {MASK_MAX}-element limit", ground.len())));
        }
        let index = index_of(&ground);
        if index.len() != ground.len() {
            return Err(Error::domain("duplicate element label in ground set"));
        }
        debug_assert!(ground.windows(2).all(|w| w[0] < w[1]));
        Ok(Matroid { inner: Arc::new(Inner { ground, index, names: BTreeMap::new(), repr }) })
    }

    /// The matroid with no elements.
    pub fn empty() -> Self {
        Matroid::build(Vec::new(), Repr::Explicit(vec![0])).unwrap()
    }

    /// An explicit matroid from a rank function evaluated on every subset (by local mask).
    ///
    /// `ground` is sorted internally; `rank` receives masks over the sorted order.
    pub fn from_rank_fn<F: FnMut(u64) -> usize>(ground: &ElementSet, mut rank: F) -> Result<Self> {
        let ground: Vec<ElementId> = ground.iter().copied().collect();
        if ground.len() > EXPLICIT_MAX {
            return Err(Error::resource(format!(
                "explicit rank table over {} elements exceeds the {EXPLICIT_MAX}-element limit",
                ground.len()
            )));
        }
        let table = (0..1u64 << ground.len()).map(|m| rank(m) as u8).collect();
        Matroid::build(ground, Repr::Explicit(table))
    }

    /// An explicit matroid from a rank table indexed by local mask. Rank axioms are checked.
    pub fn from_rank_table(ground: &ElementSet, table: Vec<u8>) -> Result<Self> {
        let n = ground.len();
        if n > EXPLICIT_MAX {
            return Err(Error::resource(format!("explicit matroid with {n} elements")));
        }
        if table.len() != 1 << n {
            return Err(Error::domain(format!("rank table has {} entries, expected {}", table.len(), 1u64 << n)));
        }
        let m = Matroid::build(ground.iter().copied().collect(), Repr::Explicit(table))?;
        m.check_rank_axioms().map_err(|v| Error::domain(format!("not a matroid: {v}")))?;
        Ok(m)
    }

    /// A vector matroid over GF(p); each element is a column of residues.
    pub fn linear(field: Prime, columns: BTreeMap<ElementId, Vec<u8>>) -> Result<Self> {
        let dim = columns.values().next().map_or(0, |c| c.len());
        if columns.values().any(|c| c.len() != dim) {
            return Err(Error::domain("columns of a linear representation must have equal length"));
        }
        if columns.values().flatten().any(|&x| x as u32 >= field.get()) {
            return Err(Error::domain(format!("column entry out of range for GF({})", field.get())));
        }
        let ground: Vec<ElementId> = columns.keys().copied().collect();
        let columns = columns.into_values().collect();
        Matroid::build(ground, Repr::Linear { field, dim, columns })
    }

    /// The cycle matroid of a multigraph; each element is an edge between two vertex labels.
    pub fn graphic(edges: BTreeMap<ElementId, (u32, u32)>) -> Result<Self> {
        let mut vmap: BTreeMap<u32, usize> = BTreeMap::new();
        for &(u, v) in edges.values() {
            let n = vmap.len();
            vmap.entry(u).or_insert(n);
            let n = vmap.len();
            vmap.entry(v).or_insert(n);
        }
        let ground: Vec<ElementId> = edges.keys().copied().collect();
        let ends = edges.values().map(|(u, v)| (vmap[u], vmap[v])).collect();
        Matroid::build(ground, Repr::Graphic { ends, vertices: vmap.len() })
    }

    /// The matroid whose circuits are exactly `circuits`.
    pub fn from_circuits(ground: &ElementSet, circuits: &[ElementSet]) -> Result<Self> {
        let n = ground.len();
        if n > EXPLICIT_MAX {
            return Err(Error::resource(format!("circuit-defined matroid with {n} elements")));
        }
        let index: HashMap<ElementId, usize> = ground.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut dependent = vec![false; 1 << n];
        for c in circuits {
            let mut m = 0u64;
            for e in c {
                let i = index.get(e).ok_or_else(|| Error::domain(format!("circuit element {e} not in ground set")))?;
                m |= 1 << i;
            }
            dependent[m as usize] = true;
        }
        let mut table = vec![0u8; 1 << n];
        for m in 1..(1u64 << n) {
            let mu = m as usize;
            if !dependent[mu] {
                dependent[mu] = bits(m).any(|i| dependent[(m & !(1 << i)) as usize]);
            }
            table[mu] = if dependent[mu] {
                bits(m).map(|i| table[(m & !(1 << i)) as usize]).max().unwrap_or(0)
            } else {
                m.count_ones() as u8
            };
        }
        Matroid::from_rank_table(ground, table)
    }

    /// Attaches display names to elements.
    pub fn with_names(mut self, names: BTreeMap<ElementId, String>) -> Self {
        if let Some(inner) = Arc::get_mut(&mut self.inner) {
            inner.names = names;
            return self;
        }
        let mut m = self.view(self.full_mask(), 0);
        Arc::get_mut(&mut m.inner).unwrap().names = names;
        m
    }

    pub fn name(&self, e: ElementId) -> Option<&str> {
        self.inner.names.get(&e).map(String::as_str)
    }

    pub fn names(&self) -> &BTreeMap<ElementId, String> {
        &self.inner.names
    }

    pub fn len(&self) -> usize {
        self.inner.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.ground.is_empty()
    }

    /// Ground set labels in local (sorted) order.
    pub fn elements(&self) -> &[ElementId] {
        &self.inner.ground
    }

    pub fn ground_set(&self) -> ElementSet {
        self.inner.ground.iter().copied().collect()
    }

    pub fn contains(&self, e: ElementId) -> bool {
        self.inner.index.contains_key(&e)
    }

    pub fn position(&self, e: ElementId) -> Option<usize> {
        self.inner.index.get(&e).copied()
    }

    pub fn full_mask(&self) -> u64 {
        full_mask(self.len())
    }

    /// Local mask of an element set; unknown labels are a domain error.
    pub fn mask_of<'a, I: IntoIterator<Item = &'a ElementId>>(&self, set: I) -> Result<u64> {
        let mut m = 0u64;
        for e in set {
            let i = self.position(*e).ok_or_else(|| Error::domain(format!("unknown element {e}")))?;
            m |= 1 << i;
        }
        Ok(m)
    }

    /// Local mask of the elements of `set` that belong to this matroid.
    pub fn mask_of_known<'a, I: IntoIterator<Item = &'a ElementId>>(&self, set: I) -> u64 {
        set.into_iter().filter_map(|e| self.position(*e)).fold(0, |m, i| m | 1 << i)
    }

    pub fn set_of(&self, mask: u64) -> ElementSet {
        bits(mask).map(|i| self.inner.ground[i]).collect()
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self.inner.repr, Repr::Explicit(_))
    }

    /// The linear representation, if this matroid was built from one.
    pub fn linear_representation(&self) -> Option<(Prime, BTreeMap<ElementId, Vec<u8>>)> {
        match &self.inner.repr {
            Repr::Linear { field, columns, .. } => {
                Some((*field, self.inner.ground.iter().copied().zip(columns.iter().cloned()).collect()))
            }
            _ => None,
        }
    }

    /// Rank of a local mask.
    pub fn rank_mask(&self, mask: u64) -> usize {
        match &self.inner.repr {
            Repr::Explicit(t) => t[mask as usize] as usize,
            Repr::Linear { field, dim, columns } => {
                gf::rank(*field, bits(mask).map(|i| columns[i].as_slice()), *dim)
            }
            Repr::Graphic { ends, vertices } => {
                let mut parent: Vec<usize> = (0..*vertices).collect();
                fn find(p: &mut [usize], mut x: usize) -> usize {
                    while p[x] != x {
                        p[x] = p[p[x]];
                        x = p[x];
                    }
                    x
                }
                let mut r = 0;
                for i in bits(mask) {
                    let (a, b) = ends[i];
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        parent[ra] = rb;
                        r += 1;
                    }
                }
                r
            }
            Repr::View { base, map, contracted, offset } => {
                let m = bits(mask).fold(*contracted, |m, i| m | 1 << map[i]);
                base.rank_mask(m) - offset
            }
            Repr::Gpc(g) => g.rank(mask),
        }
    }

    /// Rank of an element set.
    pub fn rank(&self, set: &ElementSet) -> Result<usize> {
        Ok(self.rank_mask(self.mask_of(set)?))
    }

    pub fn full_rank(&self) -> usize {
        self.rank_mask(self.full_mask())
    }

    pub fn is_independent_mask(&self, mask: u64) -> bool {
        self.rank_mask(mask) == mask.count_ones() as usize
    }

    pub fn closure_mask(&self, mask: u64) -> u64 {
        match &self.inner.repr {
            Repr::View { base, map, contracted, .. } => {
                let m = bits(mask).fold(*contracted, |m, i| m | 1 << map[i]);
                let cl = base.closure_mask(m);
                return map.iter().enumerate().filter(|(_, &p)| cl & (1 << p) != 0).fold(0, |acc, (i, _)| acc | 1 << i);
            }
            Repr::Gpc(g) => return g.closure(mask),
            _ => {}
        }
        self.closure_by_rank(mask)
    }

    pub(crate) fn closure_by_rank(&self, mask: u64) -> u64 {
        let r = self.rank_mask(mask);
        let mut cl = mask;
        for i in 0..self.len() {
            if mask & (1 << i) == 0 && self.rank_mask(mask | 1 << i) == r {
                cl |= 1 << i;
            }
        }
        cl
    }

    pub fn closure(&self, set: &ElementSet) -> Result<ElementSet> {
        Ok(self.set_of(self.closure_mask(self.mask_of(set)?)))
    }

    pub fn is_flat_mask(&self, mask: u64) -> bool {
        self.closure_mask(mask) == mask
    }

    pub fn loops_mask(&self) -> u64 {
        self.closure_mask(0)
    }

    /// Whether elements at local positions `a` and `b` are parallel (a rank-one pair of non-loops).
    pub fn parallel(&self, a: usize, b: usize) -> bool {
        a != b
            && self.rank_mask(1 << a) == 1
            && self.rank_mask(1 << b) == 1
            && self.rank_mask(1 << a | 1 << b) == 1
    }

    /// All flats, enumerated by closing flats under single-element extension.
    pub fn flat_masks(&self, budget: usize) -> Result<Vec<u64>> {
        let mut seen: BTreeSet<u64> = BTreeSet::new();
        let mut queue = VecDeque::new();
        let bottom = self.closure_mask(0);
        seen.insert(bottom);
        queue.push_back(bottom);
        while let Some(f) = queue.pop_front() {
            for i in 0..self.len() {
                if f & (1 << i) == 0 {
                    let g = self.closure_mask(f | 1 << i);
                    if seen.insert(g) {
                        if seen.len() > budget {
                            return Err(Error::resource(format!("more than {budget} flats")));
                        }
                        queue.push_back(g);
                    }
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    pub fn flats(&self) -> Result<Vec<ElementSet>> {
        Ok(self.flat_masks(DEFAULT_FLAT_BUDGET)?.into_iter().map(|m| self.set_of(m)).collect())
    }

    /// All circuits as local masks, for ground sets up to `bound` elements.
    pub fn circuit_masks(&self, bound: usize) -> Result<Vec<u64>> {
        let n = self.len();
        if n > bound {
            return Err(Error::resource(format!("circuit enumeration over {n} elements exceeds bound {bound}")));
        }
        let mut out = Vec::new();
        for m in 1..(1u64 << n) {
            let k = m.count_ones() as usize;
            if self.rank_mask(m) == k - 1 && bits(m).all(|i| self.rank_mask(m & !(1 << i)) == k - 1) {
                out.push(m);
            }
        }
        out.sort_by_key(|m| (m.count_ones(), *m));
        Ok(out)
    }

    pub fn circuits(&self) -> Result<BTreeSet<ElementSet>> {
        self.circuits_with_bound(DEFAULT_BRUTE_FORCE_BOUND)
    }

    pub fn circuits_with_bound(&self, bound: usize) -> Result<BTreeSet<ElementSet>> {
        Ok(self.circuit_masks(bound)?.into_iter().map(|m| self.set_of(m)).collect())
    }

    fn view(&self, keep: u64, contracted: u64) -> Matroid {
        let ground: Vec<ElementId> = bits(keep).map(|i| self.inner.ground[i]).collect();
        let map: Vec<usize> = bits(keep).collect();
        let offset = self.rank_mask(contracted);
        let names = self.inner.names.iter().filter(|(e, _)| ground.contains(e)).map(|(e, n)| (*e, n.clone())).collect();
        let mut m = Matroid::build(ground, Repr::View { base: self.clone(), map, contracted, offset }).unwrap();
        Arc::get_mut(&mut m.inner).unwrap().names = names;
        m
    }

    /// `M \ F`.
    pub fn delete(&self, set: &ElementSet) -> Result<Matroid> {
        let f = self.mask_of(set)?;
        Ok(self.view(self.full_mask() & !f, 0))
    }

    /// `M / F`, with rank `r(X ∪ F) - r(F)`.
    pub fn contract(&self, set: &ElementSet) -> Result<Matroid> {
        let f = self.mask_of(set)?;
        Ok(self.view(self.full_mask() & !f, f))
    }

    /// `M | F`.
    pub fn restrict(&self, set: &ElementSet) -> Result<Matroid> {
        let f = self.mask_of(set)?;
        Ok(self.view(f, 0))
    }

    /// Renames elements; labels missing from `map` are kept. The result must have distinct labels.
    pub fn relabel(&self, map: &BTreeMap<ElementId, ElementId>) -> Result<Matroid> {
        let new: Vec<ElementId> = self.inner.ground.iter().map(|e| *map.get(e).unwrap_or(e)).collect();
        let mut order: Vec<usize> = (0..new.len()).collect();
        order.sort_by_key(|&i| new[i]);
        let ground: Vec<ElementId> = order.iter().map(|&i| new[i]).collect();
        let names = self.inner.names.iter().map(|(e, n)| (*map.get(e).unwrap_or(e), n.clone())).collect();
        let mut m = Matroid::build(ground, Repr::View { base: self.clone(), map: order, contracted: 0, offset: 0 })?;
        Arc::get_mut(&mut m.inner).unwrap().names = names;
        Ok(m)
    }

    /// Adds `new` as a parallel copy of `of` (a loop if `of` is a loop).
    pub fn add_parallel(&self, of: ElementId, new: ElementId) -> Result<Matroid> {
        let src = self.position(of).ok_or_else(|| Error::domain(format!("unknown element {of}")))?;
        if self.contains(new) {
            return Err(Error::domain(format!("element {new} already present")));
        }
        let mut ground = self.inner.ground.clone();
        ground.push(new);
        ground.sort();
        let map = ground.iter().map(|e| if *e == new { src } else { self.inner.index[e] }).collect();
        Matroid::build(ground, Repr::View { base: self.clone(), map, contracted: 0, offset: 0 })
    }

    /// Copies the rank function into a table. Fails above [`EXPLICIT_MAX`] elements.
    pub fn to_explicit(&self) -> Result<Matroid> {
        if self.is_explicit() {
            return Ok(self.clone());
        }
        let mut m = Matroid::from_rank_fn(&self.ground_set(), |mask| self.rank_mask(mask))?;
        Arc::get_mut(&mut m.inner).unwrap().names = self.inner.names.clone();
        Ok(m)
    }

    /// The rank of every subset, indexed by local mask.
    pub fn rank_table(&self) -> Result<Vec<u8>> {
        if self.len() > EXPLICIT_MAX {
            return Err(Error::resource(format!("rank table over {} elements", self.len())));
        }
        Ok((0..1u64 << self.len()).map(|m| self.rank_mask(m) as u8).collect())
    }

    /// Same ground set and same rank on every subset (label-sensitive).
    pub fn same_as(&self, other: &Matroid) -> bool {
        self.inner.ground == other.inner.ground
            && self.len() <= EXPLICIT_MAX
            && (0..1u64 << self.len()).all(|m| self.rank_mask(m) == other.rank_mask(m))
    }

    /// Checks `r(∅) = 0`, unit increase and local submodularity on every subset.
    /// Together these imply all rank axioms.
    pub fn check_rank_axioms(&self) -> std::result::Result<(), AxiomViolation> {
        let n = self.len();
        assert!(n <= EXPLICIT_MAX + 4, "exhaustive axiom check over {n} elements");
        let r0 = self.rank_mask(0);
        if r0 != 0 {
            return Err(AxiomViolation::EmptyRank(r0));
        }
        for m in 0..(1u64 << n) {
            let r = self.rank_mask(m);
            let mut plus = [0usize; 64];
            for i in 0..n {
                if m & (1 << i) != 0 {
                    continue;
                }
                let ri = self.rank_mask(m | 1 << i);
                if ri < r || ri > r + 1 {
                    return Err(AxiomViolation::UnitIncrease { set: self.set_of(m), element: self.inner.ground[i] });
                }
                plus[i] = ri;
            }
            for i in 0..n {
                if m & (1 << i) != 0 {
                    continue;
                }
                for j in i + 1..n {
                    if m & (1 << j) != 0 {
                        continue;
                    }
                    if plus[i] + plus[j] < r + self.rank_mask(m | 1 << i | 1 << j) {
                        return Err(AxiomViolation::Submodular {
                            set: self.set_of(m),
                            a: self.inner.ground[i],
                            b: self.inner.ground[j],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// `r(A) + r(E \ A) - r(E) + 1`, the least `k` for which `(A, E \ A)` is a k-separation.
    pub fn separation_width(&self, a: &ElementSet) -> Result<usize> {
        let am = self.mask_of(a)?;
        Ok(self.separation_width_mask(am))
    }

    pub fn separation_width_mask(&self, a: u64) -> usize {
        let b = self.full_mask() & !a;
        self.rank_mask(a) + self.rank_mask(b) - self.full_rank() + 1
    }

    pub fn is_loop(&self, e: ElementId) -> bool {
        self.position(e).is_some_and(|i| self.rank_mask(1 << i) == 0)
    }

    pub fn is_coloop(&self, e: ElementId) -> bool {
        self.position(e).is_some_and(|i| self.rank_mask(self.full_mask() & !(1 << i)) < self.full_rank())
    }

    /// Lazy generalized parallel connection; callers check preconditions.
    pub(crate) fn gpc_lazy(m1: &Matroid, m2: &Matroid) -> Result<Matroid> {
        let ground: BTreeSet<ElementId> = m1.elements().iter().chain(m2.elements()).copied().collect();
        let ground: Vec<ElementId> = ground.into_iter().collect();
        let to1 = ground.iter().map(|e| m1.position(*e)).collect();
        let to2 = ground.iter().map(|e| m2.position(*e)).collect();
        let idx = index_of(&ground);
        let from1 = m1.elements().iter().map(|e| idx[e]).collect();
        let from2 = m2.elements().iter().map(|e| idx[e]).collect();
        let common1 = m1.mask_of_known(m2.elements().iter().filter(|e| m1.contains(**e)));
        let repr = GpcRepr { m1: m1.clone(), m2: m2.clone(), to1, to2, from1, from2, common1 };
        Matroid::build(ground, Repr::Gpc(Box::new(repr)))
    }
}

impl GpcRepr {
    fn split(&self, mask: u64) -> (u64, u64) {
        let (mut a, mut b) = (0u64, 0u64);
        for i in bits(mask) {
            if let Some(p) = self.to1[i] {
                a |= 1 << p;
            }
            if let Some(p) = self.to2[i] {
                b |= 1 << p;
            }
        }
        (a, b)
    }

    fn lift1(&self, m: u64) -> u64 {
        bits(m).fold(0, |acc, i| acc | 1 << self.from1[i])
    }

    fn lift2(&self, m: u64) -> u64 {
        bits(m).fold(0, |acc, i| acc | 1 << self.from2[i])
    }

    /// Least set containing `mask` whose traces on both parts are closed.
    fn closure(&self, mask: u64) -> u64 {
        let mut z = mask;
        loop {
            let (a, b) = self.split(z);
            let next = z | self.lift1(self.m1.closure_mask(a)) | self.lift2(self.m2.closure_mask(b));
            if next == z {
                return z;
            }
            z = next;
        }
    }

    /// `r(X) = r1(X2 ∩ E1) + r2(X1 ∩ E2) - r(T ∩ (X1 ∪ X2))` with `Xi = cl_i(X ∩ Ei) ∪ X`.
    fn rank(&self, mask: u64) -> usize {
        let (a, b) = self.split(mask);
        let x1 = self.lift1(self.m1.closure_mask(a)) | mask;
        let x2 = self.lift2(self.m2.closure_mask(b)) | mask;
        let (x2_in1, _) = self.split(x2);
        let (_, x1_in2) = self.split(x1);
        let (t_part, _) = self.split(x1 | x2);
        self.m1.rank_mask(x2_in1) + self.m2.rank_mask(x1_in2) - self.m1.rank_mask(t_part & self.common1)
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.inner.repr {
            Repr::Explicit(_) => "explicit",
            Repr::Linear { .. } => "linear",
            Repr::Graphic { .. } => "graphic",
            Repr::View { .. } => "view",
            Repr::Gpc(_) => "gpc",
        };
        write!(f, "Matroid({kind}, elements={:?}, rank={})", self.inner.ground.iter().map(|e| e.0).collect::<Vec<_>>(), self.full_rank())
    }
}

/// True iff `M1|T` and `M2|T` have the same rank on every subset of `T`.
pub fn restrictions_equal(m1: &Matroid, m2: &Matroid, t: &ElementSet) -> Result<bool> {
    let a = m1.mask_of(t)?;
    let b = m2.mask_of(t)?;
    let ia: Vec<usize> = bits(a).collect();
    let ib: Vec<usize> = bits(b).collect();
    // Both lists follow the label order of T.
    let k = ia.len();
    if k > 30 {
        return Err(Error::resource(format!("restriction comparison over {k} elements")));
    }
    for s in 0..(1u64 << k) {
        let ma = bits(s).fold(0u64, |m, i| m | 1 << ia[i]);
        let mb = bits(s).fold(0u64, |m, i| m | 1 << ib[i]);
        if m1.rank_mask(ma) != m2.rank_mask(mb) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The 2-sum of `m1` and `m2` along the basepoints `p1` and `p2`, defined by its circuits.
pub fn two_sum(m1: &Matroid, m2: &Matroid, p1: ElementId, p2: ElementId) -> Result<Matroid> {
    for (m, p, name) in [(m1, p1, "first"), (m2, p2, "second")] {
        if !m.contains(p) {
            return Err(Error::domain(format!("basepoint {p} not in the {name} matroid")));
        }
        if m.is_loop(p) || m.is_coloop(p) {
            return Err(Error::domain(format!("basepoint {p} is a loop or coloop of the {name} matroid")));
        }
    }
    let e1: ElementSet = m1.ground_set().into_iter().filter(|&e| e != p1).collect();
    let e2: ElementSet = m2.ground_set().into_iter().filter(|&e| e != p2).collect();
    if let Some(e) = e1.intersection(&e2).next() {
        return Err(Error::domain(format!("element {e} appears in both summands")));
    }
    let c1 = m1.circuits_with_bound(EXPLICIT_MAX)?;
    let c2 = m2.circuits_with_bound(EXPLICIT_MAX)?;
    let mut circuits: Vec<ElementSet> = Vec::new();
    circuits.extend(c1.iter().filter(|c| !c.contains(&p1)).cloned());
    circuits.extend(c2.iter().filter(|c| !c.contains(&p2)).cloned());
    for a in c1.iter().filter(|c| c.contains(&p1)) {
        for b in c2.iter().filter(|c| c.contains(&p2)) {
            let mut u: ElementSet = a.iter().copied().filter(|&e| e != p1).collect();
            u.extend(b.iter().copied().filter(|&e| e != p2));
            circuits.push(u);
        }
    }
    let ground: ElementSet = e1.union(&e2).copied().collect();
    Matroid::from_circuits(&ground, &circuits)
}

#[cfg(test)]
mod tests;
