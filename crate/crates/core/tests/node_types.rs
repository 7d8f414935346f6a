//! Does the closure type of a tracked set carry enough information for the
//! Tutte recursion? These tests search the corpus for sets that share a type
//! but behave differently.

use std::collections::HashMap;
use std::path::Path;

use amalgam::decomposition::AmalgamDecomposition;
use amalgam::{ElementSet, Matroid};

const MAX_REALIZED: usize = 12;

/// `Y ↦ cl(X ∪ Y) ∩ J` for every `Y ⊆ J`, as masks over `J`.
fn closure_type(m: &Matroid, x: &ElementSet, j: &[amalgam::ElementId]) -> Vec<u32> {
    let xm = m.mask_of(x).unwrap();
    (0..1u32 << j.len())
        .map(|y| {
            let ym = m.mask_of_known(j.iter().enumerate().filter(|(i, _)| y >> i & 1 == 1).map(|(_, e)| e));
            let cl = m.closure_mask(xm | ym);
            j.iter().enumerate().filter(|(_, e)| cl >> m.position(**e).unwrap() & 1 == 1).fold(0, |acc, (i, _)| acc | 1 << i)
        })
        .collect()
}

fn offsets(m: &Matroid, x: &ElementSet, j: &[amalgam::ElementId]) -> Vec<usize> {
    let xm = m.mask_of(x).unwrap();
    let r = m.rank_mask(xm);
    (0..1u32 << j.len())
        .map(|y| m.rank_mask(xm | m.mask_of_known(j.iter().enumerate().filter(|(i, _)| y >> i & 1 == 1).map(|(_, e)| e))) - r)
        .collect()
}

fn corpus() -> Vec<(String, AmalgamDecomposition)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus/decompositions");
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let t = AmalgamDecomposition::load(&path).unwrap();
        if t.realize(t.root()).unwrap().len() <= MAX_REALIZED {
            out.push((path.file_name().unwrap().to_string_lossy().into_owned(), t.to_nice().unwrap()));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

#[test]
fn closure_type_determines_rank_offsets() {
    for (name, t) in corpus() {
        let ms = t.realize_all(16).unwrap();
        let bounds = t.boundaries();
        for (v, m) in &ms {
            let j: Vec<_> = bounds[v].iter().copied().collect();
            let mut seen: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
            for x in 0..1u64 << m.len() {
                let xs = m.set_of(x);
                let off = offsets(m, &xs, &j);
                let prev = seen.entry(closure_type(m, &xs, &j)).or_insert_with(|| off.clone());
                assert_eq!(*prev, off, "{name}, node {v}: one type, two offset vectors");
            }
        }
    }
}

/// At every internal node, the children's types and ranks plus the fresh part
/// of the set determine the parent's type and rank.
#[test]
fn child_types_and_ranks_determine_the_parent() {
    let mut merged = 0usize;
    for (name, t) in corpus() {
        let ms = t.realize_all(16).unwrap();
        let bounds = t.boundaries();
        for (v, node) in t.nodes() {
            if node.is_leaf() {
                continue;
            }
            let (c1, c2) = (node.children[0], node.children[1]);
            let (m, m1, m2) = (&ms[v], &ms[&c1], &ms[&c2]);
            let j: Vec<_> = bounds[v].iter().copied().collect();
            let (j1, j2): (Vec<_>, Vec<_>) = (bounds[&c1].iter().copied().collect(), bounds[&c2].iter().copied().collect());
            let (e1, e2) = (m1.ground_set(), m2.ground_set());
            let mut table: HashMap<_, (Vec<u32>, usize)> = HashMap::new();
            let mut sets: HashMap<_, usize> = HashMap::new();
            for x in 0..1u64 << m.len() {
                let xs = m.set_of(x);
                let x1: ElementSet = xs.intersection(&e1).copied().collect();
                let x2: ElementSet = xs.intersection(&e2).copied().collect();
                let fresh: ElementSet = xs.iter().filter(|e| !e1.contains(e) && !e2.contains(e)).copied().collect();
                let key = (
                    closure_type(m1, &x1, &j1),
                    m1.rank(&x1).unwrap(),
                    closure_type(m2, &x2, &j2),
                    m2.rank(&x2).unwrap(),
                    fresh,
                );
                let value = (closure_type(m, &xs, &j), m.rank_mask(x));
                *sets.entry(key.clone()).or_default() += 1;
                let prev = table.entry(key).or_insert_with(|| value.clone());
                assert_eq!(*prev, value, "{name}, node {v}: equal child summaries, different parent summary");
            }
            merged += sets.values().filter(|&&n| n > 1).count();
        }
    }
    // The summaries really are coarser than the sets they stand for.
    assert!(merged > 0);
}
