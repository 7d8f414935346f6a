//! Parametrized decomposition families used by the shipped corpus, the tests and the benchmarks.

use crate::catalog::{graph, single, triangle, uniform_on};
use crate::decomposition::AmalgamDecomposition;
use crate::element::{ElementId, ElementSet};
use crate::matroid::Matroid;

fn leaf(e: u32, is_loop: bool) -> AmalgamDecomposition {
    AmalgamDecomposition::single(single(e, is_loop))
}

fn none() -> ElementSet {
    ElementSet::new()
}

/// 2-sums of `links` copies of `U_{2,s}` along a path: each link shares one
/// connector with the previous one and deletes it. Width `s`, realized size
/// `s + (links - 1)(s - 2)`.
pub fn uniform_chain(links: usize, s: usize) -> AmalgamDecomposition {
    assert!(links >= 1 && s >= 3);
    let mut next = 1u32;
    let mut take = |n: usize| {
        let v: Vec<u32> = (next..next + n as u32).collect();
        next += n as u32;
        v
    };
    let base = take(s);
    let (a, b, p) = (base[0], base[1], base[s - 1]);
    let mut d = AmalgamDecomposition::join(&leaf(a, false), &leaf(b, false), uniform_on(2, &base), none());
    let mut connector = p;
    for _ in 1..links {
        let new = take(s - 1);
        let mut labels = vec![connector];
        labels.extend(&new);
        let k = uniform_on(2, &labels);
        d = AmalgamDecomposition::join(&d, &leaf(new[0], false), k, [ElementId(connector)].into());
        connector = new[s - 2];
    }
    d
}

/// 2-sums of `n` triangles along a path; realizes the cycle on `n + 2` edges with width 3.
pub fn triangle_chain(n: usize) -> AmalgamDecomposition {
    uniform_chain(n, 3)
}

/// `U_{1,n}` as a chain of parallel pairs; width 2.
pub fn parallel_chain(n: u32) -> AmalgamDecomposition {
    assert!(n >= 2);
    let mut d = leaf(1, false);
    for i in 2..=n {
        d = AmalgamDecomposition::join(&d, &leaf(i, false), uniform_on(1, &[i - 1, i]), none());
    }
    d
}

/// Direct sum of coloops and loops (`true` marks a loop) joined through empty glue matroids; width 1.
pub fn direct_sum_comb(loops: &[bool]) -> AmalgamDecomposition {
    let mut d = leaf(1, loops[0]);
    for (i, &l) in loops.iter().enumerate().skip(1) {
        d = AmalgamDecomposition::join(&d, &leaf(i as u32 + 1, l), Matroid::empty(), none());
    }
    d
}

/// Copies of `M(K4)` glued along triangles; width 6, realized size `3 + 3 links`.
pub fn k4_chain(links: usize) -> AmalgamDecomposition {
    // triangle edges as (label, (u, v))
    let mut tri = [(1u32, (0u32, 1u32)), (2, (0, 2)), (3, (1, 2))];
    let mut d = AmalgamDecomposition::join(&leaf(1, false), &leaf(2, false), graph(&tri), none());
    let mut label = 4u32;
    for vertex in (3u32..).take(links) {
        let (q1, q2, q3) = (tri[0].1 .0, tri[0].1 .1, tri[1].1 .1);
        let (a, u, w) = (label, label + 1, label + 2);
        label += 3;
        let mut edges = tri.to_vec();
        edges.extend([(a, (q1, vertex)), (u, (q2, vertex)), (w, (q3, vertex))]);
        d = AmalgamDecomposition::join(&d, &leaf(a, false), graph(&edges), none());
        tri = [(tri[2].0, (q2, q3)), (u, (q2, vertex)), (w, (q3, vertex))];
    }
    d
}

/// A triangle `{a, b, p}` built from two leaves.
pub fn triangle_node(a: u32, b: u32, p: u32) -> AmalgamDecomposition {
    AmalgamDecomposition::join(&leaf(a, false), &leaf(b, false), triangle(a, b, p), none())
}

/// The 2-sum of two triangles along `p`, written with `K = {p}` and `D = {p}`.
/// Both children contain `p`, so the decomposition is not nice.
pub fn two_sum_of_triangles() -> AmalgamDecomposition {
    AmalgamDecomposition::join(&triangle_node(1, 2, 5), &triangle_node(3, 4, 5), single(5, false), [ElementId(5)].into())
}

/// The parallel connection of two triangles along `p` (nothing deleted); not nice.
pub fn parallel_connection_of_triangles() -> AmalgamDecomposition {
    AmalgamDecomposition::join(&triangle_node(1, 2, 5), &triangle_node(3, 4, 5), single(5, false), none())
}
