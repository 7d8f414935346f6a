use super::*;
use crate::catalog::{complete_graph, cycle, fano, free, single, triangle, uniform, vectors};
use crate::element::set;

/// Largest independent subset, by enumerating all subsets (independent of the rank backend).
fn brute_rank(m: &Matroid, x: u64) -> usize {
    crate::element::submasks(x)
        .filter(|&s| m.is_independent_mask(s))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap()
}

/// Independence straight from Gaussian elimination on explicit columns over GF(p).
fn cols_independent(p: u32, cols: &[Vec<u8>]) -> bool {
    // Exhaustive search for a nontrivial vanishing combination.
    let k = cols.len();
    let total = (p as usize).pow(k as u32);
    (1..total).all(|mut code| {
        let mut acc = vec![0u32; cols.first().map_or(0, |c| c.len())];
        for c in cols {
            let coef = (code % p as usize) as u32;
            code /= p as usize;
            for (a, x) in acc.iter_mut().zip(c) {
                *a = (*a + coef * *x as u32) % p;
            }
        }
        acc.iter().any(|&a| a != 0)
    })
}

#[test]
fn rank_of_empty_set_is_zero() {
    for m in [fano(), complete_graph(4, 1), uniform(2, 4, 1)] {
        assert_eq!(m.rank(&ElementSet::new()).unwrap(), 0);
    }
}

#[test]
fn fano_has_full_rank_three() {
    assert_eq!(fano().full_rank(), 3);
}

#[test]
fn triangle_rank_matches_spanning_tree_size() {
    let k3 = triangle(1, 2, 3);
    assert_eq!(k3.rank(&set([1, 2, 3])).unwrap(), 2);
    assert_eq!(brute_rank(&k3, 0b111), 2);
}

#[test]
fn unknown_element_is_domain_error() {
    assert!(matches!(fano().rank(&set([99])), Err(Error::Domain(_))));
}

#[test]
fn linear_rank_agrees_with_subset_enumeration() {
    let m = vectors(3, &[(1, vec![1, 0, 0]), (2, vec![0, 1, 0]), (3, vec![1, 1, 0]), (4, vec![1, 2, 0]), (5, vec![0, 0, 1]), (6, vec![1, 1, 1]), (7, vec![0, 0, 0])]);
    let (_, cols) = m.linear_representation().unwrap();
    let cols: Vec<Vec<u8>> = cols.into_values().collect();
    for x in 0..(1u64 << 7) {
        let sel: Vec<Vec<u8>> = bits(x).map(|i| cols[i].clone()).collect();
        assert_eq!(m.is_independent_mask(x), cols_independent(3, &sel), "mask {x:b}");
        assert_eq!(m.rank_mask(x), brute_rank(&m, x));
    }
}

#[test]
fn fano_closure_of_two_points_is_their_line() {
    // Points 1=(1,0,0) and 2=(0,1,0); their sum is 3=(1,1,0).
    let f = fano();
    assert_eq!(f.closure(&set([1, 2])).unwrap(), set([1, 2, 3]));
    let all = f.ground_set();
    assert_eq!(f.closure(&all).unwrap(), all);
}

#[test]
fn loop_is_in_closure_of_empty_set() {
    let m = vectors(2, &[(1, vec![1, 0]), (2, vec![0, 0])]);
    assert_eq!(m.closure(&ElementSet::new()).unwrap(), set([2]));
}

#[test]
fn closure_axioms_hold_exhaustively() {
    for m in [fano(), complete_graph(4, 1), uniform(3, 6, 1)] {
        for x in 0..(1u64 << m.len()) {
            let c = m.closure_mask(x);
            assert_eq!(c & x, x);
            assert_eq!(m.closure_mask(c), c);
            assert_eq!(m.rank_mask(c), m.rank_mask(x));
        }
    }
}

#[test]
fn circuits_of_small_matroids() {
    let u24 = uniform(2, 4, 1);
    let expected: BTreeSet<ElementSet> = [set([1, 2, 3]), set([1, 2, 4]), set([1, 3, 4]), set([2, 3, 4])].into();
    assert_eq!(u24.circuits().unwrap(), expected);
    assert!(free(5, 1).circuits().unwrap().is_empty());
    assert_eq!(triangle(1, 2, 3).circuits().unwrap(), [set([1, 2, 3])].into());
    assert!(matches!(uniform(2, 17, 1).circuits(), Err(Error::Resource(_))));
}

#[test]
fn minors() {
    let k3 = triangle(1, 2, 3);
    assert!(k3.delete(&ElementSet::new()).unwrap().same_as(&k3));
    let c = k3.contract(&set([1])).unwrap();
    assert_eq!(c.rank(&set([2, 3])).unwrap(), 1);
    assert_eq!(c.elements(), &[ElementId(2), ElementId(3)]);
    let u = uniform(2, 4, 1).restrict(&set([1, 2])).unwrap();
    assert!(u.same_as(&free(2, 1)));
    let m = complete_graph(4, 1);
    let a = m.delete(&set([1])).unwrap().restrict(&set([2, 3, 4])).unwrap();
    let b = m.restrict(&set([2, 3, 4])).unwrap();
    assert!(a.same_as(&b));
    m.contract(&set([1, 6])).unwrap().check_rank_axioms().unwrap();
}

#[test]
fn separation_widths() {
    let k3 = triangle(1, 2, 3);
    assert_eq!(k3.separation_width(&ElementSet::new()).unwrap(), 1);
    assert_eq!(k3.separation_width(&set([1])).unwrap(), 2);
    // Two disjoint triangles glued at a vertex: graphic direct sum.
    let two = crate::catalog::graph(&[(1, (0, 1)), (2, (1, 2)), (3, (2, 0)), (4, (0, 3)), (5, (3, 4)), (6, (4, 0))]);
    assert_eq!(two.separation_width(&set([1, 2, 3])).unwrap(), 1);
}

#[test]
fn restriction_equality() {
    let a = triangle(1, 2, 3);
    let b = triangle(3, 4, 5);
    assert!(restrictions_equal(&a, &b, &ElementSet::new()).unwrap());
    assert!(restrictions_equal(&a, &b, &set([3])).unwrap());
    let l = single(3, true);
    assert!(!restrictions_equal(&a, &l, &set([3])).unwrap());
}

#[test]
fn two_sum_of_triangles_is_four_cycle() {
    let s = two_sum(&triangle(1, 2, 10), &triangle(11, 3, 4), ElementId(10), ElementId(11)).unwrap();
    assert_eq!(s.circuits().unwrap(), [set([1, 2, 3, 4])].into());
    assert!(s.same_as(&cycle(4, 1)));
}

#[test]
fn two_sum_with_parallel_pair_relabels_basepoint() {
    let m1 = complete_graph(4, 1);
    let u12 = crate::catalog::graph(&[(20, (0, 1)), (21, (0, 1))]);
    let s = two_sum(&m1, &u12, ElementId(1), ElementId(20)).unwrap();
    let relabeled = m1.relabel(&[(ElementId(1), ElementId(21))].into()).unwrap();
    assert_eq!(s.circuits().unwrap(), relabeled.circuits().unwrap());
    for c in s.circuits().unwrap() {
        assert!(!c.contains(&ElementId(1)) && !c.contains(&ElementId(20)));
    }
}

#[test]
fn two_sum_preconditions() {
    let t = triangle(1, 2, 3);
    let l = crate::catalog::graph(&[(5, (0, 0)), (6, (0, 1)), (7, (1, 0))]);
    assert!(two_sum(&t, &l, ElementId(1), ElementId(5)).is_err());
    assert!(two_sum(&t, &triangle(2, 8, 9), ElementId(1), ElementId(8)).is_err());
}

#[test]
fn parallel_extension() {
    let t = triangle(1, 2, 3);
    let p = t.add_parallel(ElementId(1), ElementId(9)).unwrap();
    assert_eq!(p.rank(&set([1, 9])).unwrap(), 1);
    assert_eq!(p.rank(&set([9, 2, 3])).unwrap(), 2);
    p.check_rank_axioms().unwrap();
}

#[test]
fn rank_axioms_hold_for_every_backend() {
    for m in [fano(), complete_graph(4, 1), uniform(2, 5, 1), vectors(5, &[(1, vec![1, 2]), (2, vec![2, 4]), (3, vec![0, 1]), (4, vec![0, 0])])] {
        m.check_rank_axioms().unwrap();
        m.to_explicit().unwrap().check_rank_axioms().unwrap();
    }
}

#[test]
fn flats_of_fano() {
    // empty, 7 points, 7 lines, whole plane
    assert_eq!(fano().flats().unwrap().len(), 16);
}
