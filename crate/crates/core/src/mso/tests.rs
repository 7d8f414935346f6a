use super::*;
use crate::catalog::{complete_graph, fano, graph_over, path, triangle, vectors};
use crate::corpus::{direct_sum_comb, k4_chain, parallel_chain, triangle_chain, two_sum_of_triangles, uniform_chain};
use crate::decomposition::{from_branch_decomposition, AmalgamDecomposition, BranchDecomposition};
use crate::element::set;

const HAMILTONIAN: &str = "exists H exists e (is_circuit(H) & is_base(H \\ {e}))";

fn sentences() -> Vec<&'static str> {
    vec![
        HAMILTONIAN,
        "exists X is_base(X)",
        "exists X is_circuit(X)",
        "exists x x in cl({})",
        "exists x exists y (x != y & x in cl({y}))",
        "exists x forall C (is_circuit(C) -> x notin C)",
        "forall x forall y (x = y | exists C (is_circuit(C) & x in C & y in C))",
        "forall x exists y (x != y & y in cl({x}) | forall z (z in cl({x, y}) -> z = x | z = y))",
        "exists B (indep(B) & forall x x in cl(B))",
        "forall x exists X (x in X & !indep(X))",
        "exists X (X = {} | exists x (x in X & X \\ {x} = {}))",
        "∃x ∀y (y ∈ cl({x}) → y = x)",
    ]
}

fn empty() -> Assignment {
    Assignment::new()
}

#[test]
fn parses_hamiltonicity_with_macros() {
    let phi = parse(HAMILTONIAN).unwrap();
    let Formula::Exists(h, inner) = &phi else { panic!("{phi}") };
    assert_eq!(h, "H");
    let Formula::Exists(e, body) = &**inner else { panic!("{phi}") };
    assert_eq!(e, "e");
    let Formula::And(circuit, base) = &**body else { panic!("{phi}") };
    let mut used = phi.variables();
    used.remove("e1");
    used.remove("e2");
    assert_eq!(**circuit, is_circuit(&SetTerm::var("H"), &mut used));
    assert_eq!(**base, is_base(&SetTerm::var("H").minus(SetTerm::single("e")), &mut used));
    assert!(phi.free_variables().is_empty());
}

#[test]
fn independence_desugars_to_closure_form() {
    let phi = parse("indep(X1)").unwrap();
    assert_eq!(phi, Formula::Indep(SetTerm::var("X1")));
    assert_eq!(phi.desugar_indep().to_string(), "!(exists e1 : e1 in X1 & cl(X1) = cl(X1 \\ {e1}))");
    assert_eq!(parse("x1 in X1").unwrap(), Formula::Member("x1".into(), SetTerm::var("X1")));
}

#[test]
fn printing_round_trips() {
    let extra = [
        "(exists x x in X) & y in Y",
        "a = a -> b = c -> X = Y",
        "!!(x = y) <-> (X + {x}) \\ Y = Z \\ (Y + {y})",
        "forall x in X : x in cl(X \\ {x})",
        "x in Y | x in Z & x = y",
    ];
    for text in sentences().into_iter().chain(extra) {
        let phi = parse(text).unwrap();
        let printed = phi.to_string();
        assert_eq!(parse(&printed).unwrap(), phi, "{text} printed as {printed}");
    }
}

#[test]
fn precedence_and_scope() {
    let phi = parse("a = b | c = d & a = c").unwrap();
    assert!(matches!(phi, Formula::Or(..)));
    let phi = parse("exists x x in X & x in Y").unwrap();
    let Formula::Exists(_, body) = phi else { panic!() };
    assert!(matches!(*body, Formula::And(..)));
}

#[test]
fn syntax_errors_carry_positions() {
    match parse("exists x (x in X") {
        Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 16),
        other => panic!("{other:?}"),
    }
    match parse("x in X $") {
        Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 7),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse("x in"), Err(Error::Syntax { .. })));
    assert!(matches!(parse("indep(x)"), Err(Error::Kind(_))));
    assert!(matches!(parse("X in Y"), Err(Error::Kind(_))));
    assert!(matches!(parse("x = X"), Err(Error::Kind(_))));
}

#[test]
fn naive_examples() {
    let k3 = triangle(1, 2, 3);
    let q = Assignment::from([("B".to_string(), Value::Set(set([1, 2])))]);
    assert!(eval_naive(&k3, &parse("is_base(B)").unwrap(), &q).unwrap());
    let q = Assignment::from([("B".to_string(), Value::Set(set([1])))]);
    assert!(!eval_naive(&k3, &parse("is_base(B)").unwrap(), &q).unwrap());
    let ham = parse(HAMILTONIAN).unwrap();
    assert!(eval_naive(&complete_graph(4, 1), &ham, &empty()).unwrap());
    assert!(!eval_naive(&path(5, 1), &ham, &empty()).unwrap());
    assert!(eval_naive(&fano(), &parse("exists X is_circuit(X) & forall x x in cl(X)").unwrap(), &empty()).unwrap());
}

#[test]
fn base_macro_requires_independence() {
    // A dependent spanning set passes the unguarded maximality test but is not a base.
    let k3 = triangle(1, 2, 3);
    let q = Assignment::from([("B".to_string(), Value::Set(set([1, 2, 3])))]);
    assert!(!eval_naive(&k3, &parse("is_base(B)").unwrap(), &q).unwrap());
}

#[test]
fn assignments_are_checked() {
    let k3 = triangle(1, 2, 3);
    let phi = parse("x in X").unwrap();
    let missing = Assignment::from([("x".to_string(), Value::Element(ElementId(1)))]);
    assert!(matches!(eval_naive(&k3, &phi, &missing), Err(Error::Domain(_))));
    let wrong = Assignment::from([("x".to_string(), Value::Set(set([1]))), ("X".to_string(), Value::Set(set([1])))]);
    assert!(matches!(eval_naive(&k3, &phi, &wrong), Err(Error::Kind(_))));
    let outside = Assignment::from([("x".to_string(), Value::Element(ElementId(9))), ("X".to_string(), Value::Set(set([1])))]);
    assert!(matches!(eval_naive(&k3, &phi, &outside), Err(Error::Domain(_))));
    let q = parse_assignment(r#"{"x": 1, "X": [1, 2]}"#).unwrap();
    assert!(eval_naive(&k3, &phi, &q).unwrap());
}

pub(crate) fn decompositions() -> Vec<AmalgamDecomposition> {
    let k4 = graph_over(2, &[(1, (0, 1)), (2, (0, 2)), (3, (0, 3)), (4, (1, 2)), (5, (1, 3)), (6, (2, 3))]);
    let u24 = vectors(3, &[(1, vec![1, 0]), (2, vec![0, 1]), (3, vec![1, 1]), (4, vec![1, 2])]);
    let c5 = graph_over(3, &[(1, (0, 1)), (2, (1, 2)), (3, (2, 3)), (4, (3, 4)), (5, (4, 0))]);
    vec![
        triangle_chain(2),
        two_sum_of_triangles(),
        k4_chain(1),
        parallel_chain(3),
        direct_sum_comb(&[false, true, false]),
        uniform_chain(2, 4),
        from_branch_decomposition(&k4, &BranchDecomposition::caterpillar(k4.elements())).unwrap(),
        from_branch_decomposition(&u24, &BranchDecomposition::caterpillar(u24.elements())).unwrap(),
        from_branch_decomposition(&c5, &BranchDecomposition::caterpillar(c5.elements())).unwrap(),
    ]
}

#[test]
fn compiled_agrees_with_naive() {
    for t in decompositions() {
        let m = t.realize_root().unwrap();
        for text in sentences() {
            let phi = parse(text).unwrap();
            let naive = eval_naive(&m, &phi, &empty()).unwrap();
            assert_eq!(eval_decomposition(&t, &phi, &empty()).unwrap(), naive, "{text} on {m:?}");
            assert_eq!(eval_decomposition(&t, &phi.clone().not(), &empty()).unwrap(), !naive);
        }
    }
}

#[test]
fn hamiltonicity_on_decompositions() {
    let ham = parse(HAMILTONIAN).unwrap();
    assert_eq!(msom(&k4_chain(1), &ham, &empty()).unwrap(), Verdict::Accept);
    assert_eq!(msom(&direct_sum_comb(&[false; 4]), &ham, &empty()).unwrap(), Verdict::Reject);
}

#[test]
fn closure_predicate_matches_realized_closure() {
    let phi = parse("x in cl(X)").unwrap();
    let compiled = Compiled::new(&phi).unwrap();
    for t in [triangle_chain(2), uniform_chain(2, 4), k4_chain(1)] {
        let m = t.realize_root().unwrap();
        let elems = m.elements().to_vec();
        for x in 0..1u64 << m.len() {
            let cl = m.closure_mask(x);
            for (i, &e) in elems.iter().enumerate() {
                let q = Assignment::from([
                    ("x".to_string(), Value::Element(e)),
                    ("X".to_string(), Value::Set(m.set_of(x))),
                ]);
                assert_eq!(compiled.evaluate(&t, &q, DEFAULT_BUDGET).unwrap(), cl >> i & 1 == 1);
            }
        }
    }
}

#[test]
fn free_variable_problems() {
    let eq = parse("X1 = X2").unwrap();
    let same = Assignment::from([("X1".to_string(), Value::Set(set([1, 3]))), ("X2".to_string(), Value::Set(set([1, 3])))]);
    assert_eq!(msom(&two_sum_of_triangles(), &eq, &same).unwrap(), Verdict::Accept);
    let circuit = parse("is_circuit(X1)").unwrap();
    let c4 = Assignment::from([("X1".to_string(), Value::Set(set([1, 2, 3, 4])))]);
    assert_eq!(msom(&two_sum_of_triangles(), &circuit, &c4).unwrap(), Verdict::Accept);
    let pair = Assignment::from([("X1".to_string(), Value::Set(set([1, 3])))]);
    assert_eq!(msom(&two_sum_of_triangles(), &circuit, &pair).unwrap(), Verdict::Reject);
    assert!(matches!(msom(&two_sum_of_triangles(), &circuit, &empty()), Err(Error::Domain(_))));
    // The deleted basepoint is not an element of the 4-cycle.
    let deleted = Assignment::from([("X1".to_string(), Value::Set(set([1, 5])))]);
    assert!(matches!(msom(&two_sum_of_triangles(), &circuit, &deleted), Err(Error::Domain(_))));
}

#[test]
fn free_variables_agree_with_naive() {
    let formulas = ["is_circuit(X)", "is_base(X)", "x in cl(X \\ {x})", "exists y (y != x & y in cl(X + {x}))"];
    for t in [triangle_chain(2), k4_chain(1)] {
        let m = t.realize_root().unwrap();
        for text in formulas {
            let phi = parse(text).unwrap();
            let compiled = Compiled::new(&phi).unwrap();
            for x in (0..1u64 << m.len()).step_by(3) {
                let mut q = Assignment::from([("X".to_string(), Value::Set(m.set_of(x)))]);
                if phi.free_variables().contains_key("x") {
                    q.insert("x".into(), Value::Element(m.elements()[x as usize % m.len()]));
                }
                assert_eq!(compiled.evaluate(&t, &q, DEFAULT_BUDGET).unwrap(), eval_naive(&m, &phi, &q).unwrap(), "{text}");
            }
        }
    }
}

#[test]
fn membership_automaton_trace() {
    // Triangles {1,2,3} and {3,4,5} glued at 3; element 4 lives in the second leaf.
    let t = triangle_chain(2);
    let trace = membership_trace(&t, ElementId(4), &set([2, 4])).unwrap();
    let order = t.postorder();
    assert_eq!(trace.iter().map(|(v, _)| *v).collect::<Vec<_>>(), order);
    let home = trace.iter().position(|(_, s)| s != "0").unwrap();
    assert!(trace[..home].iter().all(|(_, s)| s == "0"));
    assert!(trace[home..].iter().all(|(_, s)| s == "ACCEPT"));
    let reject = membership_trace(&t, ElementId(4), &set([2])).unwrap();
    assert!(reject[home..].iter().all(|(_, s)| s == "REJECT"));
    assert!(t.node(order[home]).unwrap().k.contains(ElementId(4)));
}

#[test]
fn disjunction_states_are_bounded_by_the_product() {
    let a = parse("x in X").unwrap();
    let b = parse("x in cl(X \\ {x})").unwrap();
    let both = a.clone().or(b.clone());
    for t in decompositions() {
        let ca = reachable_state_counts(&t, &a.clone().or(parse("X = X").unwrap())).unwrap();
        let cb = reachable_state_counts(&t, &b.clone().or(parse("X = X").unwrap())).unwrap();
        let cab = reachable_state_counts(&t, &both.clone().or(parse("X = X").unwrap())).unwrap();
        for (v, n) in &cab {
            assert!(*n <= ca[v] * cb[v], "node {v}: {n} > {} * {}", ca[v], cb[v]);
        }
    }
}

#[test]
fn budget_overflow_names_the_subformula() {
    let phi = parse(HAMILTONIAN).unwrap();
    match eval_decomposition_with_budget(&k4_chain(1), &phi, &empty(), 3) {
        Err(Error::Resource(msg)) => assert!(msg.contains("exists"), "{msg}"),
        other => panic!("{other:?}"),
    }
}
