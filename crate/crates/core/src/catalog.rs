//! Small named matroids used by the examples, tests and the shipped corpus.

use std::collections::BTreeMap;

use crate::element::{ElementId, ElementSet};
use crate::gf::Prime;
use crate::matroid::Matroid;

fn ids(first: u32, n: usize) -> ElementSet {
    (first..first + n as u32).map(ElementId).collect()
}

/// `U_{r,n}` on labels `first, first+1, ...`.
pub fn uniform(r: usize, n: usize, first: u32) -> Matroid {
    Matroid::from_rank_fn(&ids(first, n), |m| (m.count_ones() as usize).min(r)).unwrap()
}

/// `U_{n,n}`: every subset independent.
pub fn free(n: usize, first: u32) -> Matroid {
    uniform(n, n, first)
}

/// The Fano plane over GF(2); element `i` (1..=7) is the binary vector of `i`.
pub fn fano() -> Matroid {
    let cols = (1u32..=7).map(|i| (ElementId(i), vec![(i & 1) as u8, ((i >> 1) & 1) as u8, ((i >> 2) & 1) as u8]));
    Matroid::linear(Prime::new(2).unwrap(), cols.collect()).unwrap()
}

/// Cycle matroid of a graph given as `(label, (u, v))` edges.
pub fn graph(edges: &[(u32, (u32, u32))]) -> Matroid {
    Matroid::graphic(edges.iter().map(|&(e, uv)| (ElementId(e), uv)).collect()).unwrap()
}

/// Cycle matroid of `K_n`; edge labels start at `first` in lexicographic vertex order.
pub fn complete_graph(n: u32, first: u32) -> Matroid {
    let mut edges = BTreeMap::new();
    let mut next = first;
    for u in 0..n {
        for v in u + 1..n {
            edges.insert(ElementId(next), (u, v));
            next += 1;
        }
    }
    Matroid::graphic(edges).unwrap()
}

/// A triangle on the three given edge labels.
pub fn triangle(a: u32, b: u32, c: u32) -> Matroid {
    graph(&[(a, (0, 1)), (b, (1, 2)), (c, (2, 0))])
}

/// The cycle `C_n` on consecutive labels.
pub fn cycle(n: usize, first: u32) -> Matroid {
    let edges: Vec<(u32, (u32, u32))> =
        (0..n as u32).map(|i| (first + i, (i, (i + 1) % n as u32))).collect();
    graph(&edges)
}

/// Cycle matroid of a path (a free matroid) on consecutive labels.
pub fn path(n: usize, first: u32) -> Matroid {
    let edges: Vec<(u32, (u32, u32))> = (0..n as u32).map(|i| (first + i, (i, i + 1))).collect();
    graph(&edges)
}

/// A single element: a coloop, or a loop when `is_loop`.
pub fn single(e: u32, is_loop: bool) -> Matroid {
    Matroid::from_rank_fn(&[ElementId(e)].into_iter().collect(), |m| if is_loop { 0 } else { m as usize }).unwrap()
}

/// Vector matroid over GF(p) from `(label, column)` pairs.
pub fn vectors(p: u32, cols: &[(u32, Vec<u8>)]) -> Matroid {
    Matroid::linear(Prime::new(p).unwrap(), cols.iter().map(|(e, c)| (ElementId(*e), c.clone())).collect()).unwrap()
}

/// `U_{r,n}` on arbitrary labels.
pub fn uniform_on(r: usize, labels: &[u32]) -> Matroid {
    let ground: ElementSet = labels.iter().map(|&e| ElementId(e)).collect();
    Matroid::from_rank_fn(&ground, |m| (m.count_ones() as usize).min(r)).unwrap()
}

/// The cycle matroid of a graph as vectors over GF(p), using signed vertex incidence columns.
/// Loops become zero columns.
pub fn graph_over(p: u32, edges: &[(u32, (u32, u32))]) -> Matroid {
    let field = Prime::new(p).unwrap();
    let n = edges.iter().map(|&(_, (u, v))| u.max(v) + 1).max().unwrap_or(0) as usize;
    let cols = edges.iter().map(|&(e, (u, v))| {
        let mut c = vec![0u8; n];
        if u != v {
            c[u as usize] = 1;
            c[v as usize] = field.sub(0, 1);
        }
        (ElementId(e), c)
    });
    Matroid::linear(field, cols.collect()).unwrap()
}
