//! Node types: what a subtree of a decomposition reveals about a tracked set
//! through its boundary `J(v)`.
//!
//! A [`NodeType`] maps each `Y ⊆ J(v)` to `cl((X ∩ E(M(v))) ∪ Y) ∩ J(v)`.
//! An [`ExtendedType`] also keeps the trace `X ∩ J(v)` and the rank offsets
//! `r(X ∪ Y) − r(X)`, which is enough to compute ranks at the parent without
//! realizing any matroid. Subsets of a boundary are bit masks over its sorted
//! labels.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::decomposition::{AmalgamDecomposition, NodeId};
use crate::element::{bits, ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::matroid::{Matroid, DEFAULT_BRUTE_FORCE_BOUND};

/// Largest boundary for which per-subset tables are built.
pub const MAX_BOUNDARY: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NodeType {
    pub boundary: Vec<ElementId>,
    /// `map[Y]` for every boundary mask `Y`.
    pub map: Vec<u32>,
}

impl NodeType {
    pub fn apply(&self, y: &ElementSet) -> ElementSet {
        let m = boundary_mask(&self.boundary, y);
        boundary_set(&self.boundary, self.map[m as usize])
    }
}

/// The part of an [`ExtendedType`] that does not depend on the absolute rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Signature {
    pub trace: u32,
    pub offsets: Vec<u8>,
}

impl Signature {
    /// `f(Y) = Y ∪ {j : offset(Y + j) = offset(Y)}`.
    pub fn closed(&self, y: u32, width: usize) -> u32 {
        let base = self.offsets[y as usize];
        (0..width).filter(|j| self.offsets[(y | 1 << j) as usize] == base).fold(y, |m, j| m | 1 << j)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtendedType {
    pub boundary: Vec<ElementId>,
    pub trace: u32,
    pub base_rank: usize,
    pub offsets: Vec<u8>,
}

impl ExtendedType {
    pub fn signature(&self) -> Signature {
        Signature { trace: self.trace, offsets: self.offsets.clone() }
    }

    pub fn node_type(&self) -> NodeType {
        let s = self.signature();
        let n = self.boundary.len();
        NodeType { boundary: self.boundary.clone(), map: (0..1u32 << n).map(|y| s.closed(y, n)).collect() }
    }

    pub fn trace_set(&self) -> ElementSet {
        boundary_set(&self.boundary, self.trace)
    }
}

fn boundary_mask(boundary: &[ElementId], s: &ElementSet) -> u32 {
    boundary.iter().enumerate().filter(|(_, e)| s.contains(e)).fold(0, |m, (i, _)| m | 1 << i)
}

fn boundary_set(boundary: &[ElementId], m: u32) -> ElementSet {
    bits(m as u64).map(|i| boundary[i]).collect()
}

fn check_boundary(n: usize) -> Result<()> {
    if n > MAX_BOUNDARY {
        return Err(Error::resource(format!("boundary of {n} elements exceeds {MAX_BOUNDARY}")));
    }
    Ok(())
}

fn realized(t: &AmalgamDecomposition, v: NodeId) -> Result<(Matroid, Vec<ElementId>)> {
    let m = t.realize_with_bound(v, DEFAULT_BRUTE_FORCE_BOUND)?;
    let boundary: Vec<ElementId> = t.boundary(v).into_iter().collect();
    check_boundary(boundary.len())?;
    Ok((m, boundary))
}

/// `f_v^X` computed on the realized `M(v)`; the reference for [`join_types`].
pub fn type_of(t: &AmalgamDecomposition, v: NodeId, x: &ElementSet) -> Result<NodeType> {
    let (m, boundary) = realized(t, v)?;
    let xm = m.mask_of_known(x.iter().filter(|e| m.contains(**e)));
    let jm: Vec<u64> = boundary.iter().map(|e| m.mask_of_known([e])).collect();
    let map = (0..1u32 << boundary.len())
        .map(|y| {
            let ym = bits(y as u64).fold(0, |a, i| a | jm[i]);
            let cl = m.closure_mask(xm | ym);
            (0..boundary.len()).filter(|&i| cl & jm[i] != 0).fold(0, |a, i| a | 1 << i)
        })
        .collect();
    Ok(NodeType { boundary, map })
}

/// The extended type computed on the realized `M(v)`; the reference for [`NodeFrame::combine`].
pub fn extended_type_of(t: &AmalgamDecomposition, v: NodeId, x: &ElementSet) -> Result<ExtendedType> {
    let (m, boundary) = realized(t, v)?;
    let xm = m.mask_of_known(x.iter().filter(|e| m.contains(**e)));
    let jm: Vec<u64> = boundary.iter().map(|e| m.mask_of_known([e])).collect();
    let base = m.rank_mask(xm);
    let offsets = (0..1u32 << boundary.len())
        .map(|y| (m.rank_mask(bits(y as u64).fold(xm, |a, i| a | jm[i])) - base) as u8)
        .collect();
    let trace = (0..boundary.len()).filter(|&i| xm & jm[i] != 0).fold(0, |a, i| a | 1 << i);
    Ok(ExtendedType { boundary, trace, base_rank: base, offsets })
}

/// The join of two child types through `K`: for each `Y ⊆ J`, the least
/// `Z ⊆ E(K)` containing `Y ∪ X_K` that is closed in `K` and satisfies
/// `f_i(Z ∩ J_i) = Z ∩ J_i`, restricted to `J`.
pub fn join_types(k: &Matroid, x_k: &ElementSet, f1: &NodeType, f2: &NodeType, j: &[ElementId]) -> Result<NodeType> {
    check_boundary(j.len())?;
    let pos = |e: &ElementId| k.mask_of_known([e]);
    let jm: Vec<u64> = j.iter().map(pos).collect();
    let xm = k.mask_of(x_k)?;
    let reflect = |z: u64, f: &NodeType| -> u64 {
        let bm: Vec<u64> = f.boundary.iter().map(pos).collect();
        let y = (0..bm.len()).filter(|&i| z & bm[i] != 0).fold(0u32, |a, i| a | 1 << i);
        bits(f.map[y as usize] as u64).fold(z, |a, i| a | bm[i])
    };
    let map = (0..1u32 << j.len())
        .map(|y| {
            let mut z = bits(y as u64).fold(xm, |a, i| a | jm[i]);
            loop {
                let next = reflect(reflect(k.closure_mask(z), f1), f2);
                if next == z {
                    break;
                }
                z = next;
            }
            (0..j.len()).filter(|&i| z & jm[i] != 0).fold(0, |a, i| a | 1 << i)
        })
        .collect();
    Ok(NodeType { boundary: j.to_vec(), map })
}

/// Sorted labels together with their bit positions in `K`.
#[derive(Clone, Debug, Default)]
struct Embedding {
    pos: Vec<u32>,
}

impl Embedding {
    fn new(k: &Matroid, set: &[ElementId]) -> Self {
        Embedding { pos: set.iter().map(|e| k.position(*e).unwrap() as u32).collect() }
    }

    fn width(&self) -> usize {
        self.pos.len()
    }

    fn to_k(&self, m: u32) -> u64 {
        bits(m as u64).fold(0, |a, i| a | 1 << self.pos[i])
    }

    fn project(&self, km: u64) -> u32 {
        self.pos.iter().enumerate().filter(|(_, &p)| km & (1 << p) != 0).fold(0, |a, (i, _)| a | 1 << i)
    }
}

/// Everything about a node needed to combine child signatures.
#[derive(Clone, Debug)]
pub struct NodeFrame {
    pub node: NodeId,
    pub boundary: Vec<ElementId>,
    k: Matroid,
    kids: Option<(Embedding, Embedding)>,
    up: Embedding,
    /// Elements of `K` outside both child boundaries and outside `D`, as `K` positions.
    pub fresh: u64,
    d: u64,
}

impl NodeFrame {
    pub fn new(t: &AmalgamDecomposition, v: NodeId, boundary: &ElementSet) -> Result<Self> {
        let n = t.node(v)?;
        let k = if n.k.len() <= DEFAULT_BRUTE_FORCE_BOUND { n.k.to_explicit()? } else { n.k.clone() };
        let boundary: Vec<ElementId> = boundary.iter().copied().collect();
        check_boundary(boundary.len())?;
        let d = k.mask_of(&n.d)?;
        let kids = if n.is_leaf() {
            None
        } else {
            if !n.j1.is_disjoint(&n.j2) {
                return Err(Error::precondition("nice", format!("node {v} has overlapping child boundaries")));
            }
            let j1: Vec<ElementId> = n.j1.iter().copied().collect();
            let j2: Vec<ElementId> = n.j2.iter().copied().collect();
            check_boundary(j1.len().max(j2.len()))?;
            Some((Embedding::new(&k, &j1), Embedding::new(&k, &j2)))
        };
        let fresh = k.mask_of(&n.fresh())? & !d;
        let up = Embedding::new(&k, &boundary);
        Ok(NodeFrame { node: v, boundary, k, kids, up, fresh, d })
    }

    pub fn is_leaf(&self) -> bool {
        self.kids.is_none()
    }

    pub fn glue_matroid(&self) -> &Matroid {
        &self.k
    }

    /// Labels of the fresh elements selected by a `K` mask.
    pub fn fresh_labels(&self, s: u64) -> ElementSet {
        self.k.set_of(s & self.fresh)
    }

    pub fn k_mask(&self, set: &ElementSet) -> u64 {
        self.k.mask_of_known(set.iter().filter(|e| self.k.contains(**e)))
    }

    fn rho1(&self, w: u64, a: &Signature, e1: &Embedding) -> isize {
        let rk = |m: u64| self.k.rank_mask(m) as isize;
        let ck = e1.project(self.k.closure_mask(w));
        let c1 = a.closed(e1.project(w), e1.width());
        rk(w | e1.to_k(c1)) + a.offsets[ck as usize] as isize - rk(e1.to_k(ck | c1))
    }

    /// Rank of `X1 ∪ X2 ∪ W` minus the children's base ranks, for `W ⊇` both traces.
    fn rho(&self, w: u64, kids: Option<(&Signature, &Signature)>) -> isize {
        let (Some((a, b)), Some((e1, e2))) = (kids, self.kids.as_ref()) else {
            return self.k.rank_mask(w) as isize;
        };
        let base = self.rho1(w, a, e1);
        let mut dn = e2.project(w);
        for (i, &p) in e2.pos.iter().enumerate() {
            if w & (1 << p) == 0 && self.rho1(w | 1 << p, a, e1) == base {
                dn |= 1 << i;
            }
        }
        let c2 = b.closed(e2.project(w), e2.width());
        self.rho1(w | e2.to_k(c2), a, e1) + b.offsets[dn as usize] as isize - self.k.rank_mask(e2.to_k(dn | c2)) as isize
    }

    /// The parent's signature from the children's and the fresh part `s` of the
    /// tracked set, with the rank increment `δ` such that `r(X) = r(X1) + r(X2) + δ`
    /// (negative when the children's tracked sets overlap in span).
    /// `None` when the tracked set would meet `D`.
    pub fn combine(&self, kids: Option<(&Signature, &Signature)>, s: u64) -> Option<(Signature, isize)> {
        debug_assert_eq!(s & !self.fresh, 0);
        let w0 = match (kids, &self.kids) {
            (Some((a, b)), Some((e1, e2))) => s | e1.to_k(a.trace) | e2.to_k(b.trace),
            _ => s,
        };
        if w0 & self.d != 0 {
            return None;
        }
        let base = self.rho(w0, kids);
        let offsets = (0..1u32 << self.up.width()).map(|y| (self.rho(w0 | self.up.to_k(y), kids) - base) as u8).collect();
        Some((Signature { trace: self.up.project(w0), offsets }, base))
    }
}

/// Frames for every node of a nice decomposition.
pub fn frames(t: &AmalgamDecomposition) -> Result<BTreeMap<NodeId, NodeFrame>> {
    let bounds = t.boundaries();
    t.postorder().into_iter().map(|v| Ok((v, NodeFrame::new(t, v, &bounds[&v])?))).collect()
}

/// The extended type of `v` for the tracked set `x ⊆ E(M(v))`, computed bottom-up by joins.
pub fn extended_type_by_join(t: &AmalgamDecomposition, v: NodeId, x: &ElementSet) -> Result<ExtendedType> {
    let sub = t.subtree(v)?;
    let bounds = t.boundaries();
    let mut memo: BTreeMap<NodeId, (Signature, isize)> = BTreeMap::new();
    let mut frame_v = None;
    for w in sub.postorder() {
        let frame = NodeFrame::new(t, w, &bounds[&w])?;
        let s = frame.k_mask(x) & frame.fresh;
        let n = t.node(w)?;
        let (sig, rank) = if n.is_leaf() {
            frame.combine(None, s).ok_or_else(|| Error::domain("tracked set meets a deleted element"))?
        } else {
            let (a, ra) = &memo[&n.children[0]];
            let (b, rb) = &memo[&n.children[1]];
            let (sig, delta) =
                frame.combine(Some((a, b)), s).ok_or_else(|| Error::domain("tracked set meets a deleted element"))?;
            (sig, ra + rb + delta)
        };
        memo.insert(w, (sig, rank));
        if w == v {
            frame_v = Some(frame);
        }
    }
    let (sig, base_rank) = memo.remove(&v).unwrap();
    Ok(ExtendedType { boundary: frame_v.unwrap().boundary, trace: sig.trace, base_rank: base_rank as usize, offsets: sig.offsets })
}

#[cfg(test)]
mod tests;
