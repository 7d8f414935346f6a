use amalgam::catalog::vectors;
use amalgam::corpus::{direct_sum_comb, parallel_chain, triangle_chain, uniform_chain};
use amalgam::decomposition::AmalgamDecomposition;
use amalgam::mso::{eval_decomposition, eval_naive, parse};
use amalgam::tutte::{tutte_bruteforce, tutte_decomposition};
use amalgam::{ElementSet, Matroid};
use num_bigint::BigInt;
use proptest::prelude::*;

fn linear_matroid() -> impl Strategy<Value = Matroid> {
    (prop_oneof![Just(2u32), Just(3u32)], 1usize..=3, 1usize..=7).prop_flat_map(|(p, rows, n)| {
        proptest::collection::vec(proptest::collection::vec(0..p as u8, rows), n).prop_map(move |cols| {
            let cols: Vec<(u32, Vec<u8>)> = cols.into_iter().enumerate().map(|(i, c)| (i as u32 + 1, c)).collect();
            vectors(p, &cols)
        })
    })
}

fn family() -> impl Strategy<Value = AmalgamDecomposition> {
    prop_oneof![
        (1usize..10).prop_map(triangle_chain),
        (2u32..8).prop_map(parallel_chain),
        proptest::collection::vec(any::<bool>(), 1..10).prop_map(|l| direct_sum_comb(&l)),
        (1usize..3, 3usize..6).prop_map(|(links, s)| uniform_chain(links, s)),
    ]
}

fn count(m: &Matroid, keep: impl Fn(u64) -> bool) -> BigInt {
    (0..1u64 << m.len()).filter(|&x| keep(x)).count().into()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tutte_dp_matches_brute_force(t in family()) {
        let m = t.realize(t.root()).unwrap();
        prop_assert_eq!(tutte_decomposition(&t).unwrap(), tutte_bruteforce(&m).unwrap());
    }

    #[test]
    fn nice_form_realizes_the_same_matroid(t in family()) {
        let n = t.to_nice().unwrap();
        prop_assert!(n.is_nice());
        prop_assert!(n.width() <= 2 * t.width());
        prop_assert!(n.realize(n.root()).unwrap().same_as(&t.realize(t.root()).unwrap()));
    }

    #[test]
    fn tutte_evaluations_count_subsets(m in linear_matroid()) {
        let t = tutte_bruteforce(&m).unwrap();
        let r = m.full_rank();
        prop_assert_eq!(t.evaluate_int(1, 1), count(&m, |x| x.count_ones() as usize == r && m.rank_mask(x) == r));
        prop_assert_eq!(t.evaluate_int(2, 1), count(&m, |x| m.is_independent_mask(x)));
        prop_assert_eq!(t.evaluate_int(1, 2), count(&m, |x| m.rank_mask(x) == r));
        prop_assert_eq!(t.evaluate_int(2, 2), BigInt::from(1u64 << m.len()));
    }

    #[test]
    fn tutte_deletion_contraction(m in linear_matroid()) {
        let t = tutte_bruteforce(&m).unwrap();
        for &e in m.elements() {
            let one: ElementSet = [e].into();
            let (del, con) = (tutte_bruteforce(&m.delete(&one).unwrap()).unwrap(), tutte_bruteforce(&m.contract(&one).unwrap()).unwrap());
            let (x, y) = (3, 5);
            let expected = if m.is_loop(e) {
                del.evaluate_int(x, y) * y
            } else if m.is_coloop(e) {
                con.evaluate_int(x, y) * x
            } else {
                del.evaluate_int(x, y) + con.evaluate_int(x, y)
            };
            prop_assert_eq!(t.evaluate_int(x, y), expected);
        }
    }

    #[test]
    fn dp_on_trivial_decomposition(m in linear_matroid()) {
        let t = AmalgamDecomposition::trivial(&m);
        prop_assert_eq!(tutte_decomposition(&t).unwrap(), tutte_bruteforce(&m).unwrap());
    }

    #[test]
    fn minors_satisfy_rank_axioms(m in linear_matroid(), pick in any::<u64>()) {
        let s: ElementSet = m.elements().iter().copied().filter(|e| pick >> e.0 & 1 == 1).collect();
        prop_assert!(m.delete(&s).unwrap().check_rank_axioms().is_ok());
        prop_assert!(m.contract(&s).unwrap().check_rank_axioms().is_ok());
    }
}

const SENTENCES: &[&str] = &[
    "exists X is_circuit(X)",
    "exists x x in cl({})",
    "exists x exists y (x != y & x in cl({y}))",
    "forall x exists B (is_base(B) & x notin B)",
    "exists X (indep(X) & !indep(X + X))",
    "forall X forall Y (cl(X) = cl(Y) -> cl(X + Y) = cl(X))",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn compiled_engine_matches_naive(m in linear_matroid()) {
        let t = AmalgamDecomposition::trivial(&m);
        for text in SENTENCES {
            let phi = parse(text).unwrap();
            let q = Default::default();
            prop_assert_eq!(eval_decomposition(&t, &phi, &q).unwrap(), eval_naive(&m, &phi, &q).unwrap(), "{}", text);
        }
    }
}
