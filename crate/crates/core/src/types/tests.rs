use super::*;
use crate::catalog::{fano, graph_over, vectors};
use crate::corpus::{direct_sum_comb, k4_chain, parallel_chain, triangle_chain, two_sum_of_triangles, uniform_chain};
use crate::decomposition::{from_branch_decomposition, BranchDecomposition};
use crate::element::{set, submasks};

fn corpus() -> Vec<AmalgamDecomposition> {
    let k4 = graph_over(2, &[(1, (0, 1)), (2, (0, 2)), (3, (0, 3)), (4, (1, 2)), (5, (1, 3)), (6, (2, 3))]);
    let u24 = vectors(3, &[(1, vec![1, 0]), (2, vec![0, 1]), (3, vec![1, 1]), (4, vec![1, 2])]);
    vec![
        triangle_chain(3),
        two_sum_of_triangles().to_nice().unwrap(),
        k4_chain(1),
        parallel_chain(4),
        direct_sum_comb(&[false, true, false]),
        uniform_chain(2, 4),
        from_branch_decomposition(&k4, &BranchDecomposition::caterpillar(k4.elements())).unwrap(),
        from_branch_decomposition(&fano(), &BranchDecomposition::caterpillar(fano().elements())).unwrap(),
        from_branch_decomposition(&u24, &BranchDecomposition::caterpillar(u24.elements())).unwrap(),
    ]
}

#[test]
fn extended_join_matches_realized_types() {
    for t in corpus() {
        let grounds = t.grounds();
        for v in t.postorder() {
            let g: Vec<ElementId> = grounds[&v].iter().copied().collect();
            if g.len() > 10 {
                continue;
            }
            for xm in submasks((1u64 << g.len()) - 1) {
                let x: ElementSet = bits(xm).map(|i| g[i]).collect();
                let direct = extended_type_of(&t, v, &x).unwrap();
                let joined = extended_type_by_join(&t, v, &x).unwrap();
                assert_eq!(joined, direct, "node {v}, X = {x:?}");
                let o = &direct.offsets;
                assert_eq!(o[0], 0);
                for y in 0..o.len() {
                    for j in 0..direct.boundary.len() {
                        let step = o[y | 1 << j] as i32 - o[y] as i32;
                        assert!((0..=1).contains(&step));
                    }
                }
            }
        }
    }
}

#[test]
fn type_join_matches_realized_types() {
    for t in corpus() {
        let grounds = t.grounds();
        for (&v, n) in t.nodes() {
            if n.is_leaf() || grounds[&v].len() > 9 {
                continue;
            }
            let (c1, c2) = (n.children[0], n.children[1]);
            let g: Vec<ElementId> = grounds[&v].iter().copied().collect();
            let j: Vec<ElementId> = t.boundary(v).into_iter().collect();
            for xm in submasks((1u64 << g.len()) - 1) {
                let x: ElementSet = bits(xm).map(|i| g[i]).collect();
                let x_k: ElementSet = x.iter().copied().filter(|e| n.k.contains(*e)).collect();
                let f1 = type_of(&t, c1, &x).unwrap();
                let f2 = type_of(&t, c2, &x).unwrap();
                let joined = join_types(&n.k, &x_k, &f1, &f2, &j).unwrap();
                assert_eq!(joined, type_of(&t, v, &x).unwrap());
                assert_eq!(joined, extended_type_of(&t, v, &x).unwrap().node_type());
            }
        }
    }
}

#[test]
fn type_examples() {
    // X = ∅ on a loop-free node: nothing forced
    let t = triangle_chain(2);
    let first = t.nodes().iter().find(|(_, n)| !n.is_leaf() && n.k.len() == 3 && n.d.is_empty()).map(|(v, _)| *v).unwrap();
    let f = type_of(&t, first, &ElementSet::new()).unwrap();
    assert_eq!(f.boundary.len(), 1);
    assert_eq!(f.map, vec![0, 1]);
    // X spans the connector p = 3 of the first triangle {1, 2, 3}
    let f = type_of(&t, first, &set([1, 2])).unwrap();
    assert_eq!(f.apply(&ElementSet::new()), set([3]));
    // X = ∅: offsets are plain ranks
    let e = extended_type_of(&t, first, &ElementSet::new()).unwrap();
    assert_eq!(e.offsets, vec![0, 1]);
    assert_eq!(e.trace, 0);
    // root has an empty boundary and base rank r(X)
    let e = extended_type_of(&t, t.root(), &set([1, 2, 4])).unwrap();
    assert_eq!(e.offsets, vec![0]);
    assert_eq!(e.base_rank, 3);
}

#[test]
fn identity_types_join_to_closure_in_k() {
    let k = fano();
    let id = |b: Vec<ElementId>| NodeType { map: (0..1u32 << b.len()).collect(), boundary: b };
    let f1 = id(vec![ElementId(1)]);
    let f2 = id(vec![ElementId(2)]);
    let j = vec![ElementId(1), ElementId(2), ElementId(3)];
    let joined = join_types(&k, &ElementSet::new(), &f1, &f2, &j).unwrap();
    for y in 0..8u32 {
        let ys: ElementSet = bits(y as u64).map(|i| j[i]).collect();
        let cl: ElementSet = k.closure(&ys).unwrap().into_iter().filter(|e| j.contains(e)).collect();
        assert_eq!(boundary_set(&j, joined.map[y as usize]), cl);
    }
}

#[test]
fn non_nice_nodes_are_rejected() {
    let t = two_sum_of_triangles();
    assert!(matches!(frames(&t), Err(Error::Precondition { name: "nice", .. })));
}
