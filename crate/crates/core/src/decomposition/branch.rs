//! Branch decompositions and their conversion into amalgam decompositions of
//! finite-field-represented matroids.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{AmalgamDecomposition, DecompositionNode, NodeId};
use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::gf::{self, Prime};
use crate::matroid::Matroid;

/// An unrooted tree whose leaves are labelled bijectively by the ground set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchDecomposition {
    pub tree: Vec<(NodeId, NodeId)>,
    pub leaf_labels: BTreeMap<NodeId, ElementId>,
}

pub(super) struct Tree {
    adj: BTreeMap<NodeId, Vec<NodeId>>,
}

impl BranchDecomposition {
    pub fn from_json_str(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    /// A caterpillar over the given element order: the simplest cubic tree.
    pub fn caterpillar(elements: &[ElementId]) -> Self {
        let n = elements.len() as NodeId;
        let leaf_labels: BTreeMap<NodeId, ElementId> = elements.iter().enumerate().map(|(i, e)| (i as NodeId, *e)).collect();
        let mut tree = Vec::new();
        if n == 2 {
            tree.push((0, 1));
        } else if n >= 3 {
            // spine nodes n, n+1, ..., 2n-3
            let spine = |i: NodeId| n + i;
            tree.push((0, spine(0)));
            tree.push((1, spine(0)));
            for i in 2..n - 1 {
                tree.push((spine(i - 2), spine(i - 1)));
                tree.push((i, spine(i - 1)));
            }
            tree.push((n - 1, spine(n - 3)));
        }
        BranchDecomposition { tree, leaf_labels }
    }

    pub(super) fn adjacency(&self) -> Tree {
        let mut adj: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
        for v in self.leaf_labels.keys() {
            adj.entry(*v).or_default();
        }
        for &(a, b) in &self.tree {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        Tree { adj }
    }

    /// Checks that the tree is a cubic tree whose leaves carry exactly the ground set of `m`.
    pub fn validate(&self, m: &Matroid) -> Result<()> {
        let bad = |msg: String| Err(Error::domain(format!("invalid branch decomposition: {msg}")));
        let t = self.adjacency();
        if t.adj.is_empty() {
            return if m.is_empty() { Ok(()) } else { bad("empty tree".into()) };
        }
        if self.tree.len() + 1 != t.adj.len() {
            return bad(format!("{} edges on {} nodes", self.tree.len(), t.adj.len()));
        }
        let start = *t.adj.keys().next().unwrap();
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &t.adj[&v] {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        if seen.len() != t.adj.len() {
            return bad("tree is disconnected".into());
        }
        for (v, nb) in &t.adj {
            let leaf = nb.len() <= 1;
            if leaf != self.leaf_labels.contains_key(v) {
                return bad(format!("node {v} has degree {} but is {}labelled", nb.len(), if leaf { "not " } else { "" }));
            }
            if !leaf && nb.len() != 3 {
                return bad(format!("internal node {v} has degree {}", nb.len()));
            }
        }
        let labels: ElementSet = self.leaf_labels.values().copied().collect();
        if labels.len() != self.leaf_labels.len() || labels != m.ground_set() {
            return bad("leaf labels are not a bijection onto the ground set".into());
        }
        Ok(())
    }

    /// Elements on the `a` side of the tree edge `(a, b)`.
    pub(super) fn side(&self, t: &Tree, a: NodeId, b: NodeId) -> ElementSet {
        let mut out = ElementSet::new();
        let mut stack = vec![(a, b)];
        while let Some((v, from)) = stack.pop() {
            if let Some(e) = self.leaf_labels.get(&v) {
                out.insert(*e);
            }
            for &w in &t.adj[&v] {
                if w != from {
                    stack.push((w, v));
                }
            }
        }
        out
    }
}

/// The maximum of `r(E1) + r(E2) − r(E) + 1` over the tree edges; 1 when there are none.
pub fn branch_width_of(m: &Matroid, b: &BranchDecomposition) -> Result<usize> {
    b.validate(m)?;
    let t = b.adjacency();
    let mut w = 1;
    for &(x, y) in &b.tree {
        w = w.max(m.separation_width(&b.side(&t, x, y))?);
    }
    Ok(w)
}

/// The decomposition obtained from a branch decomposition of a matroid given by vectors over GF(p).
///
/// Each internal node gets a projective geometry `K(v)` on the sum of its two
/// children's guts `span(E_c) ∩ span(E ∖ E_c)`. A child's guts points are
/// represented in the parent by the same labels the child exposes, so the
/// result is nice. Points no longer needed are deleted as soon as they leave
/// the boundary.
pub fn from_branch_decomposition(m: &Matroid, b: &BranchDecomposition) -> Result<AmalgamDecomposition> {
    let (field, columns) =
        m.linear_representation().ok_or_else(|| Error::domain("the matroid has no linear representation"))?;
    b.validate(m)?;
    let leaf = |e: ElementId| -> Result<DecompositionNode> {
        Ok(DecompositionNode::leaf(Matroid::linear(field, [(e, columns[&e].clone())].into())?))
    };
    let elems = m.elements();
    match elems.len() {
        0 => return Ok(AmalgamDecomposition::single(m.clone())),
        1 => return Ok(AmalgamDecomposition::single(Matroid::linear(field, columns)?)),
        _ => {}
    }
    let t = b.adjacency();
    let fresh_node = t.adj.keys().max().unwrap() + 1;
    if elems.len() == 2 {
        let (l1, l2) = b.tree[0];
        let (e1, e2) = (b.leaf_labels[&l1], b.leaf_labels[&l2]);
        let k = Matroid::linear(field, columns.clone())?;
        let root = DecompositionNode::internal(l1, l2, k, [e1].into(), [e2].into(), ElementSet::new());
        let nodes = [(fresh_node, root), (l1, leaf(e1)?), (l2, leaf(e2)?)];
        return Ok(AmalgamDecomposition::new(nodes.into(), fresh_node));
    }

    // Root at the first internal node; its three neighbours become two children via a new node.
    let root = b.tree.iter().flat_map(|&(x, y)| [x, y]).find(|v| t.adj[v].len() == 3).unwrap();
    let nb = &t.adj[&root];
    let mut children: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
    children.insert(fresh_node, vec![nb[0], nb[1]]);
    children.insert(root, vec![fresh_node, nb[2]]);
    let mut stack: Vec<(NodeId, NodeId)> = nb.iter().map(|&c| (c, root)).collect();
    while let Some((v, parent)) = stack.pop() {
        let below: Vec<NodeId> = t.adj[&v].iter().copied().filter(|&w| w != parent).collect();
        for &w in &below {
            stack.push((w, v));
        }
        children.insert(v, below);
    }

    let dim = columns.values().next().map_or(0, |c| c.len());
    let guts = |side: &ElementSet| -> Vec<Vec<u8>> {
        let inside: Vec<Vec<u8>> = side.iter().map(|e| columns[e].clone()).collect();
        let outside: Vec<Vec<u8>> = elems.iter().filter(|e| !side.contains(e)).map(|e| columns[e].clone()).collect();
        gf::intersect(field, &gf::span_basis(field, &inside, dim), &gf::span_basis(field, &outside, dim), dim)
    };

    // Post-order over the rooted tree.
    let mut order = Vec::new();
    let mut st = vec![(root, false)];
    while let Some((v, done)) = st.pop() {
        if done {
            order.push(v);
        } else {
            st.push((v, true));
            for &c in children[&v].iter().rev() {
                st.push((c, false));
            }
        }
    }

    let mut next_label = elems.iter().map(|e| e.0).max().unwrap() + 1;
    let mut sides: BTreeMap<NodeId, ElementSet> = BTreeMap::new();
    let mut gut_basis: BTreeMap<NodeId, Vec<Vec<u8>>> = BTreeMap::new();
    // For every node, the labels it exposes to its parent, one per guts point.
    let mut exposed: BTreeMap<NodeId, Vec<(Vec<u8>, ElementId)>> = BTreeMap::new();
    let mut nodes: BTreeMap<NodeId, DecompositionNode> = BTreeMap::new();
    let is_surplus = |e: &ElementId| !m.contains(*e);

    for &v in &order {
        let kids = &children[&v];
        let side: ElementSet = if kids.is_empty() {
            [b.leaf_labels[&v]].into()
        } else {
            kids.iter().flat_map(|c| sides[c].iter().copied()).collect()
        };
        let gb = if v == root { Vec::new() } else { guts(&side) };
        let gpoints: BTreeSet<Vec<u8>> = gf::projective_points(field, &gb, dim).into_iter().collect();
        if kids.is_empty() {
            let e = b.leaf_labels[&v];
            let exp = gf::normalize(field, &columns[&e]).filter(|p| gpoints.contains(p)).map(|p| (p, e));
            exposed.insert(v, exp.into_iter().collect());
            nodes.insert(v, leaf(e)?);
        } else {
            let (c1, c2) = (kids[0], kids[1]);
            let mut cols: BTreeMap<ElementId, Vec<u8>> = BTreeMap::new();
            let mut by_point: BTreeMap<Vec<u8>, Vec<ElementId>> = BTreeMap::new();
            for c in [c1, c2] {
                for (p, e) in &exposed[&c] {
                    cols.insert(*e, p.clone());
                    by_point.entry(p.clone()).or_default().push(*e);
                }
            }
            let mut sum = gut_basis[&c1].clone();
            sum.extend(gut_basis[&c2].iter().cloned());
            let sum = gf::span_basis(field, &sum, dim);
            for p in gf::projective_points(field, &sum, dim) {
                if let std::collections::btree_map::Entry::Vacant(slot) = by_point.entry(p) {
                    let e = ElementId(next_label);
                    next_label += 1;
                    cols.insert(e, slot.key().clone());
                    slot.insert(vec![e]);
                }
            }
            let exp: Vec<(Vec<u8>, ElementId)> = gpoints.iter().map(|p| (p.clone(), by_point[p][0])).collect();
            let keep: BTreeSet<ElementId> = exp.iter().map(|x| x.1).collect();
            let d: ElementSet = cols.keys().copied().filter(|e| is_surplus(e) && !keep.contains(e)).collect();
            let j1 = exposed[&c1].iter().map(|x| x.1).collect();
            let j2 = exposed[&c2].iter().map(|x| x.1).collect();
            let k = Matroid::linear(field, cols)?;
            nodes.insert(v, DecompositionNode::internal(c1, c2, k, j1, j2, d));
            exposed.insert(v, exp);
        }
        sides.insert(v, side);
        gut_basis.insert(v, gb);
    }
    Ok(AmalgamDecomposition::new(nodes, root))
}

/// `|F|^⌊3k/2⌋`, the width guaranteed for branch-width `k` over a field of size `|F|`.
pub fn converted_width_bound(field: Prime, k: usize) -> usize {
    (field.get() as usize).saturating_pow((3 * k / 2) as u32)
}
