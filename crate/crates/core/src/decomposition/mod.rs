//! Amalgam decompositions: rooted binary trees whose internal nodes glue the
//! matroids of their children through a small glue matroid `K`.

mod branch;
mod io;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

pub use branch::{branch_width_of, converted_width_bound, from_branch_decomposition, BranchDecomposition};
pub use io::{DecompositionSpec, NodeSpec};

use crate::amalgam::{glue_unchecked, semiflat_mask};
use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::matroid::{restrictions_equal, Matroid, DEFAULT_BRUTE_FORCE_BOUND, DEFAULT_FLAT_BUDGET, EXPLICIT_MAX};

pub type NodeId = u32;

/// One node of a decomposition. Leaves have no children, `K = M(v)` with at
/// most one element, and empty `J1`, `J2`, `D`.
#[derive(Clone, Debug)]
pub struct DecompositionNode {
    pub children: Vec<NodeId>,
    pub k: Matroid,
    pub j1: ElementSet,
    pub j2: ElementSet,
    pub d: ElementSet,
}

impl DecompositionNode {
    pub fn leaf(k: Matroid) -> Self {
        DecompositionNode { children: Vec::new(), k, j1: ElementSet::new(), j2: ElementSet::new(), d: ElementSet::new() }
    }

    pub fn internal(c1: NodeId, c2: NodeId, k: Matroid, j1: ElementSet, j2: ElementSet, d: ElementSet) -> Self {
        DecompositionNode { children: vec![c1, c2], k, j1, j2, d }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Elements of `K` in neither boundary: they enter the matroid at this node.
    pub fn fresh(&self) -> ElementSet {
        self.k.ground_set().into_iter().filter(|e| !self.j1.contains(e) && !self.j2.contains(e)).collect()
    }
}

/// A rooted amalgam decomposition. Construction does not validate; see [`AmalgamDecomposition::validate`].
#[derive(Clone, Debug)]
pub struct AmalgamDecomposition {
    nodes: BTreeMap<NodeId, DecompositionNode>,
    root: NodeId,
}

/// A single failed check, tagged with the node where it was found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub node: NodeId,
    pub kind: &'static str,
    pub detail: String,
}

/// All violations found by [`AmalgamDecomposition::validate`].
#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn kinds(&self) -> Vec<&'static str> {
        self.violations.iter().map(|v| v.kind).collect()
    }

    fn push(&mut self, node: NodeId, kind: &'static str, detail: impl Into<String>) {
        self.violations.push(Violation { node, kind, detail: detail.into() });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "node {}: {}: {}", v.node, v.kind, v.detail)?;
        }
        Ok(())
    }
}

fn ids(s: &ElementSet) -> Vec<u32> {
    s.iter().map(|e| e.0).collect()
}

impl AmalgamDecomposition {
    pub fn new(nodes: BTreeMap<NodeId, DecompositionNode>, root: NodeId) -> Self {
        AmalgamDecomposition { nodes, root }
    }

    /// The one-node decomposition of a matroid with at most one element.
    pub fn single(m: Matroid) -> Self {
        AmalgamDecomposition { nodes: [(0, DecompositionNode::leaf(m))].into(), root: 0 }
    }

    /// A width-`|E|` decomposition: `K = M` glued from two singleton leaves.
    pub fn trivial(m: &Matroid) -> Self {
        if m.len() <= 1 {
            return Self::single(m.clone());
        }
        let e = m.elements();
        let leaf = |x: ElementId| DecompositionNode::leaf(m.restrict(&[x].into()).unwrap().to_explicit().unwrap());
        let nodes = [
            (0, DecompositionNode::internal(1, 2, m.clone(), [e[0]].into(), [e[1]].into(), ElementSet::new())),
            (1, leaf(e[0])),
            (2, leaf(e[1])),
        ];
        AmalgamDecomposition { nodes: nodes.into(), root: 0 }
    }

    /// Node ids renumbered `start, start+1, ...` in postorder.
    pub fn renumbered(&self, start: NodeId) -> AmalgamDecomposition {
        let order = self.postorder();
        let map: BTreeMap<NodeId, NodeId> = order.iter().enumerate().map(|(i, v)| (*v, start + i as NodeId)).collect();
        let nodes = order
            .iter()
            .map(|v| {
                let mut n = self.nodes[v].clone();
                n.children = n.children.iter().map(|c| map[c]).collect();
                (map[v], n)
            })
            .collect();
        AmalgamDecomposition { nodes, root: map[&self.root] }
    }

    /// A new root glueing the two decompositions through `k`, deleting `d`.
    /// The boundaries are derived from the children's ground sets.
    pub fn join(left: &AmalgamDecomposition, right: &AmalgamDecomposition, k: Matroid, d: ElementSet) -> AmalgamDecomposition {
        let l = left.renumbered(0);
        let r = right.renumbered(l.nodes.len() as NodeId);
        let root = (l.nodes.len() + r.nodes.len()) as NodeId;
        let ke = k.ground_set();
        let j1 = l.grounds()[&l.root].intersection(&ke).copied().collect();
        let j2 = r.grounds()[&r.root].intersection(&ke).copied().collect();
        let mut nodes = l.nodes;
        nodes.extend(r.nodes);
        nodes.insert(root, DecompositionNode::internal(l.root, r.root, k, j1, j2, d));
        AmalgamDecomposition { nodes, root }
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn nodes(&self) -> &BTreeMap<NodeId, DecompositionNode> {
        &self.nodes
    }

    pub fn node(&self, v: NodeId) -> Result<&DecompositionNode> {
        self.nodes.get(&v).ok_or_else(|| Error::domain(format!("unknown node {v}")))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Maximum `|E(K(v))|` over all nodes, and at least 1.
    pub fn width(&self) -> usize {
        self.nodes.values().map(|n| n.k.len()).max().unwrap_or(0).max(1)
    }

    /// True iff `J1(v)` and `J2(v)` are disjoint at every node.
    pub fn is_nice(&self) -> bool {
        self.nodes.values().all(|n| n.j1.is_disjoint(&n.j2))
    }

    /// Node ids with every child before its parent. Requires a well-formed tree.
    pub fn postorder(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, false)];
        while let Some((v, done)) = stack.pop() {
            if done {
                out.push(v);
                continue;
            }
            stack.push((v, true));
            if let Some(n) = self.nodes.get(&v) {
                for &c in n.children.iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        out
    }

    /// The parent of every non-root node.
    pub fn parents(&self) -> BTreeMap<NodeId, NodeId> {
        let mut p = BTreeMap::new();
        for (&v, n) in &self.nodes {
            for &c in &n.children {
                p.insert(c, v);
            }
        }
        p
    }

    /// `J(v)`: the set glueing `M(v)` to its parent (empty at the root).
    pub fn boundary(&self, v: NodeId) -> ElementSet {
        match self.parents().get(&v) {
            Some(&p) => {
                let n = &self.nodes[&p];
                if n.children[0] == v {
                    n.j1.clone()
                } else {
                    n.j2.clone()
                }
            }
            None => ElementSet::new(),
        }
    }

    /// All boundaries at once.
    pub fn boundaries(&self) -> BTreeMap<NodeId, ElementSet> {
        let mut out: BTreeMap<NodeId, ElementSet> = [(self.root, ElementSet::new())].into();
        for n in self.nodes.values() {
            if let [a, b] = n.children[..] {
                out.insert(a, n.j1.clone());
                out.insert(b, n.j2.clone());
            }
        }
        out
    }

    /// Ground sets `E(M(v))`, derived from the tree without realizing any matroid.
    pub fn grounds(&self) -> BTreeMap<NodeId, ElementSet> {
        let mut out: BTreeMap<NodeId, ElementSet> = BTreeMap::new();
        for v in self.postorder() {
            let n = &self.nodes[&v];
            let mut g = n.k.ground_set();
            for c in &n.children {
                g.extend(out[c].iter().copied());
            }
            g.retain(|e| !n.d.contains(e));
            out.insert(v, g);
        }
        out
    }

    /// Node ids in the subtree rooted at `v`.
    pub fn subtree_nodes(&self, v: NodeId) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            out.push(u);
            if let Some(n) = self.nodes.get(&u) {
                stack.extend(n.children.iter().copied());
            }
        }
        out
    }

    /// The decomposition of `M(v)` formed by the subtree at `v`.
    pub fn subtree(&self, v: NodeId) -> Result<AmalgamDecomposition> {
        self.node(v)?;
        let nodes = self.subtree_nodes(v).into_iter().map(|u| (u, self.nodes[&u].clone())).collect();
        Ok(AmalgamDecomposition { nodes, root: v })
    }

    /// Largest element label used anywhere in the tree.
    pub fn max_element(&self) -> u32 {
        self.nodes.values().flat_map(|n| n.k.elements().iter().map(|e| e.0)).max().unwrap_or(0)
    }

    fn check_shape(&self, report: &mut ValidationReport) {
        if !self.nodes.contains_key(&self.root) {
            report.push(self.root, "missing-node", "root is not a node");
            return;
        }
        let mut seen = BTreeSet::new();
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            if !seen.insert(v) {
                report.push(v, "not-a-tree", "node reached twice");
                continue;
            }
            let Some(n) = self.nodes.get(&v) else {
                report.push(v, "missing-node", "referenced child does not exist");
                continue;
            };
            if !(n.children.is_empty() || n.children.len() == 2) {
                report.push(v, "bad-arity", format!("{} children", n.children.len()));
            }
            stack.extend(n.children.iter().copied());
        }
        for v in self.nodes.keys().filter(|v| !seen.contains(v)) {
            report.push(*v, "unreachable", "node is not below the root");
        }
    }

    /// Checks the glue preconditions at every node and reports all violations.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        self.check_shape(&mut report);
        if !report.is_valid() {
            return report;
        }
        let grounds = self.grounds();
        for (&v, n) in &self.nodes {
            let ke = n.k.ground_set();
            if n.is_leaf() {
                if n.k.len() > 1 {
                    report.push(v, "leaf-too-large", format!("leaf matroid has {} elements", n.k.len()));
                }
                if !(n.j1.is_empty() && n.j2.is_empty() && n.d.is_empty()) {
                    report.push(v, "leaf-glue-sets", "a leaf carries J1, J2 or D");
                }
                continue;
            }
            if !n.d.is_subset(&ke) {
                report.push(v, "deletion-outside-glue-matroid", format!("D = {:?} is not inside E(K)", ids(&n.d)));
            }
            let (c1, c2) = (n.children[0], n.children[1]);
            let shared: ElementSet = grounds[&c1].intersection(&grounds[&c2]).copied().collect();
            if !shared.is_subset(&ke) {
                let out: ElementSet = shared.difference(&ke).copied().collect();
                report.push(v, "shared-outside-glue-matroid", format!("{:?} shared by both children but missing from K", ids(&out)));
            }
            let flats = match n.k.flat_masks(DEFAULT_FLAT_BUDGET) {
                Ok(f) => Some(f),
                Err(e) => {
                    report.push(v, "glue-matroid-too-large", e.to_string());
                    None
                }
            };
            for (i, (c, j)) in [(c1, &n.j1), (c2, &n.j2)].into_iter().enumerate() {
                let label = if i == 0 { "J1" } else { "J2" };
                if !j.is_subset(&ke) {
                    report.push(v, "boundary-outside-glue-matroid", format!("{label} = {:?} is not inside E(K)", ids(j)));
                    continue;
                }
                let expected: ElementSet = grounds[&c].intersection(&ke).copied().collect();
                if &expected != j {
                    report.push(
                        v,
                        "j-mismatch",
                        format!("{label} = {:?} but E(M(child {c})) ∩ E(K) = {:?}", ids(j), ids(&expected)),
                    );
                    continue;
                }
                let ck = &self.nodes[&c].k;
                if !j.iter().all(|e| ck.contains(*e)) {
                    report.push(v, "boundary-outside-child-glue-matroid", format!("{label} is not inside K of child {c}"));
                } else {
                    match restrictions_equal(ck, &n.k, j) {
                        Ok(true) => {}
                        Ok(false) => report.push(v, "restriction-mismatch", format!("child {c} and K differ on {label} = {:?}", ids(j))),
                        Err(e) => report.push(v, "restriction-mismatch", e.to_string()),
                    }
                }
                if let Some(flats) = &flats {
                    if !semiflat_mask(&n.k, n.k.mask_of_known(j), flats) {
                        report.push(v, "not-modular-semiflat", format!("{label} = {:?} is not a modular semiflat of K", ids(j)));
                    }
                }
            }
        }
        self.check_labels(&mut report);
        report
    }

    /// An element deleted at `u` must not occur in any glue matroid outside the subtree of `u`.
    fn check_labels(&self, report: &mut ValidationReport) {
        let mut holders: BTreeMap<ElementId, Vec<NodeId>> = BTreeMap::new();
        for (&v, n) in &self.nodes {
            for e in n.k.elements() {
                holders.entry(*e).or_default().push(v);
            }
        }
        for (&u, n) in &self.nodes {
            if n.d.is_empty() {
                continue;
            }
            let inside: BTreeSet<NodeId> = self.subtree_nodes(u).into_iter().collect();
            for e in &n.d {
                if let Some(w) = holders.get(e).into_iter().flatten().find(|w| !inside.contains(w)) {
                    report.push(u, "deleted-label-reused", format!("element {e} deleted here also appears at node {w}"));
                }
            }
        }
    }

    fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::Invalid(report))
        }
    }

    /// `M(v)` for every node, with each realized ground set at most `bound` elements.
    pub fn realize_all(&self, bound: usize) -> Result<BTreeMap<NodeId, Matroid>> {
        self.ensure_valid()?;
        self.realize_nodes(&self.postorder(), bound)
    }

    fn realize_nodes(&self, order: &[NodeId], bound: usize) -> Result<BTreeMap<NodeId, Matroid>> {
        let grounds = self.grounds();
        if let Some(v) = order.iter().find(|v| grounds[v].len() > bound) {
            return Err(Error::resource(format!("node {v} realizes {} elements, above the bound {bound}", grounds[v].len())));
        }
        let mut out: BTreeMap<NodeId, Matroid> = BTreeMap::new();
        for &v in order {
            let n = &self.nodes[&v];
            let m = match n.children[..] {
                [a, b] => glue_unchecked(&out[&a], &out[&b], &n.k, &n.d)?,
                _ => n.k.clone(),
            };
            out.insert(v, m);
        }
        Ok(out)
    }

    /// `M(v)`, built bottom-up by glueing. Refuses invalid trees.
    pub fn realize(&self, v: NodeId) -> Result<Matroid> {
        self.realize_with_bound(v, DEFAULT_BRUTE_FORCE_BOUND)
    }

    pub fn realize_with_bound(&self, v: NodeId, bound: usize) -> Result<Matroid> {
        self.node(v)?;
        self.ensure_valid()?;
        let mut order = self.subtree_nodes(v);
        order.reverse();
        // reversed preorder lists children before parents
        Ok(self.realize_nodes(&order, bound)?.remove(&v).unwrap())
    }

    /// The decomposed matroid.
    pub fn realize_root(&self) -> Result<Matroid> {
        self.realize(self.root)
    }

    /// An equivalent nice decomposition of at most twice the width.
    ///
    /// Every `e ∈ J1(v) ∩ J2(v)` is renamed to a fresh `e'` inside the second
    /// subtree; `e'` joins `K(v)` parallel to `e` and is deleted at `v`.
    pub fn to_nice(&self) -> Result<AmalgamDecomposition> {
        self.ensure_valid()?;
        let mut out = self.clone();
        let mut next = self.max_element() + 1;
        let mut order = self.postorder();
        order.reverse();
        for v in order {
            let n = &out.nodes[&v];
            let overlap: Vec<ElementId> = n.j1.intersection(&n.j2).copied().collect();
            if overlap.is_empty() {
                continue;
            }
            let c2 = n.children[1];
            let mut map = BTreeMap::new();
            for &e in &overlap {
                map.insert(e, ElementId(next));
                next += 1;
            }
            for u in out.subtree_nodes(c2) {
                let node = out.nodes.get_mut(&u).unwrap();
                if node.k.elements().iter().any(|e| map.contains_key(e)) {
                    node.k = relabel_keeping_form(&node.k, &map)?;
                }
                for s in [&mut node.j1, &mut node.j2, &mut node.d] {
                    *s = s.iter().map(|e| *map.get(e).unwrap_or(e)).collect();
                }
            }
            let node = out.nodes.get_mut(&v).unwrap();
            for (&e, &copy) in &map {
                node.k = add_parallel_keeping_form(&node.k, e, copy)?;
                node.j2.remove(&e);
                node.j2.insert(copy);
                node.d.insert(copy);
            }
        }
        Ok(out)
    }
}

/// Relabels, keeping linear matroids linear and small ones explicit so they stay serializable.
pub(crate) fn relabel_keeping_form(k: &Matroid, map: &BTreeMap<ElementId, ElementId>) -> Result<Matroid> {
    let names = k.names().iter().map(|(e, s)| (*map.get(e).unwrap_or(e), s.clone())).collect();
    let m = match k.linear_representation() {
        Some((field, cols)) => Matroid::linear(field, cols.into_iter().map(|(e, c)| (*map.get(&e).unwrap_or(&e), c)).collect())?,
        None if k.len() <= EXPLICIT_MAX => k.relabel(map)?.to_explicit()?,
        None => k.relabel(map)?,
    };
    Ok(m.with_names(names))
}

pub(crate) fn add_parallel_keeping_form(k: &Matroid, of: ElementId, new: ElementId) -> Result<Matroid> {
    let names = k.names().clone();
    let m = match k.linear_representation() {
        Some((field, mut cols)) => {
            let c = cols.get(&of).cloned().ok_or_else(|| Error::domain(format!("unknown element {of}")))?;
            if cols.insert(new, c).is_some() {
                return Err(Error::domain(format!("element {new} already present")));
            }
            Matroid::linear(field, cols)?
        }
        None if k.len() < EXPLICIT_MAX => k.add_parallel(of, new)?.to_explicit()?,
        None => k.add_parallel(of, new)?,
    };
    Ok(m.with_names(names))
}
