//! Regenerates the shipped corpus under `corpus/`.
//!
//! ```text
//! cargo run --example write_corpus [-- <dir>]
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use amalgam::catalog::{complete_graph, fano, graph_over, single, triangle, uniform_on, vectors};
use amalgam::corpus::{
    direct_sum_comb, k4_chain, parallel_chain, parallel_connection_of_triangles, triangle_chain, triangle_node,
    two_sum_of_triangles, uniform_chain,
};
use amalgam::decomposition::{branch_width_of, from_branch_decomposition, AmalgamDecomposition, BranchDecomposition};
use amalgam::matroid::MatroidSpec;
use amalgam::{ElementId, Matroid, Result};
use serde_json::{json, Value};

fn write(dir: &Path, name: &str, value: &Value) -> Result<()> {
    let path = dir.join(name);
    fs::create_dir_all(path.parent().unwrap())?;
    fs::write(&path, serde_json::to_string_pretty(value)? + "\n")?;
    Ok(())
}

fn spec(m: &Matroid) -> Result<Value> {
    Ok(serde_json::to_value(MatroidSpec::from_matroid(m)?)?)
}

fn k4_gf2() -> Matroid {
    graph_over(2, &[(1, (0, 1)), (2, (0, 2)), (3, (0, 3)), (4, (1, 2)), (5, (1, 3)), (6, (2, 3))])
}

/// Three parallel connections of triangles at a shared element; two nodes are not nice.
fn fan_of_triangles() -> AmalgamDecomposition {
    let inner = parallel_connection_of_triangles();
    AmalgamDecomposition::join(&inner, &triangle_node(6, 7, 5), single(5, false), Default::default())
}

fn decompositions() -> Vec<(&'static str, AmalgamDecomposition)> {
    vec![
        ("triangle", triangle_chain(1)),
        ("two_sum_of_triangles", two_sum_of_triangles()),
        ("parallel_connection_of_triangles", parallel_connection_of_triangles()),
        ("fan_of_triangles", fan_of_triangles()),
        ("cycle_7", triangle_chain(5)),
        ("cycle_10", triangle_chain(8)),
        ("cycle_11", triangle_chain(9)),
        ("cycle_14", triangle_chain(12)),
        ("parallel_class_6", parallel_chain(6)),
        ("loops_and_coloops", direct_sum_comb(&[false, true, false, true, false])),
        ("free_3", direct_sum_comb(&[false; 3])),
        ("comb_13", direct_sum_comb(&[true, false, false, true, false, false, false, true, false, true, false, false, true])),
        ("k4", k4_chain(1)),
        ("k4_chain_2", k4_chain(2)),
        ("k4_chain_3", k4_chain(3)),
        ("u24_chain_3", uniform_chain(3, 4)),
        ("u25_chain_2", uniform_chain(2, 5)),
        ("u26_chain_2", uniform_chain(2, 6)),
    ]
}

/// Hand-written branch decomposition of `M(K4)` pairing opposite edges.
fn k4_opposite_pairs() -> BranchDecomposition {
    let tree = vec![(1, 11), (6, 11), (2, 12), (5, 12), (3, 13), (4, 13), (11, 10), (12, 10), (13, 10)];
    let leaf_labels = (1..=6).map(|i| (i, ElementId(i))).collect();
    BranchDecomposition { tree, leaf_labels }
}

fn linear_matroids() -> Vec<(&'static str, Matroid, BranchDecomposition)> {
    let cat = |m: &Matroid| BranchDecomposition::caterpillar(m.elements());
    let loops = vectors(3, &[(1, vec![1, 0]), (2, vec![0, 1]), (3, vec![0, 0])]);
    let parallel = vectors(2, &[(1, vec![1]), (2, vec![1]), (3, vec![1]), (4, vec![1])]);
    let c5 = graph_over(3, &[(1, (0, 1)), (2, (1, 2)), (3, (2, 3)), (4, (3, 4)), (5, (4, 0))]);
    let u24 = vectors(3, &[(1, vec![1, 0]), (2, vec![0, 1]), (3, vec![1, 1]), (4, vec![1, 2])]);
    let k4 = k4_gf2();
    let fano = fano();
    vec![
        ("coloops_and_loop_gf3", loops.clone(), cat(&loops)),
        ("parallel_class_gf2", parallel.clone(), cat(&parallel)),
        ("cycle_5_gf3", c5.clone(), cat(&c5)),
        ("u24_gf3", u24.clone(), cat(&u24)),
        ("k4_gf2", k4, k4_opposite_pairs()),
        ("fano_gf2", fano.clone(), cat(&fano)),
    ]
}

const FORMULAS: &[(&str, &str)] = &[
    ("hamiltonian", "exists H exists e (is_circuit(H) & is_base(H \\ {e}))"),
    ("has_base", "exists X is_base(X)"),
    ("has_circuit", "exists X is_circuit(X)"),
    ("has_loop", "exists x x in cl({})"),
    ("has_parallel_pair", "exists x exists y (x != y & x in cl({y}))"),
    ("has_coloop", "exists x forall C (is_circuit(C) -> x notin C)"),
    ("connected", "forall x forall y (x = y | exists C (is_circuit(C) & x in C & y in C))"),
    ("every_element_on_a_line", "forall x exists y (x != y & y in cl({x}) | forall z (z in cl({x, y}) -> z = x | z = y))"),
    ("spanning_independent_set", "exists B (indep(B) & forall x x in cl(B))"),
    ("every_element_in_a_dependent_set", "forall x exists X (x in X & !indep(X))"),
    ("singletons_exist", "exists X (X = {} | exists x (x in X & X \\ {x} = {}))"),
    ("independent_sets_are_hereditary", "forall x forall y (indep({x, y}) -> indep({x}))"),
];

fn main() -> Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus"));

    for (name, t) in decompositions() {
        write(&dir, &format!("decompositions/{name}.json"), &t.to_json()?)?;
    }
    let mut broken = two_sum_of_triangles().to_json()?;
    let root = broken["root"].to_string();
    broken["nodes"][&root]["J1"] = json!([5, 99]);
    write(&dir, "invalid/j1_outside_k.json", &broken)?;

    for (name, m, b) in linear_matroids() {
        write(&dir, &format!("matroids/{name}.json"), &spec(&m)?)?;
        write(&dir, &format!("matroids/{name}.branch.json"), &serde_json::to_value(&b)?)?;
        let t = from_branch_decomposition(&m, &b)?;
        if t.width() <= 6 {
            write(&dir, &format!("decompositions/converted_{name}.json"), &t.to_json()?)?;
        }
        println!("{name}: branch width {}, converted width {}", branch_width_of(&m, &b)?, t.width());
    }
    write(&dir, "matroids/k3_graphic.json", &json!({"type": "graphic", "edges": {"1": [0, 1], "2": [1, 2], "3": [0, 2]}}))?;
    write(
        &dir,
        "matroids/k4_graphic.json",
        &json!({"type": "graphic", "edges": {"1": [0, 1], "2": [0, 2], "3": [0, 3], "4": [1, 2], "5": [1, 3], "6": [2, 3]}}),
    )?;
    write(&dir, "matroids/path_graphic.json", &json!({"type": "graphic", "edges": {"1": [0, 1], "2": [1, 2], "3": [2, 3], "4": [3, 4]}}))?;
    write(&dir, "matroids/u24.json", &spec(&uniform_on(2, &[1, 2, 3, 4]))?)?;

    let gpc = [
        ("triangles_at_a_point", triangle(1, 2, 3), triangle(3, 4, 5)),
        ("k4_and_k4_along_a_triangle", complete_graph(4, 1), glued_k4()),
        ("fano_and_fano_along_a_line", fano(), second_fano()),
        ("u24_and_u23_at_a_point", uniform_on(2, &[1, 2, 3, 4]), uniform_on(2, &[4, 5, 6])),
        ("free_pair_shared", uniform_on(3, &[1, 2, 3]), uniform_on(2, &[2, 3, 4, 5])),
    ];
    for (name, m1, m2) in gpc {
        write(&dir, &format!("gpc/{name}.json"), &json!({"M1": spec(&m1)?, "M2": spec(&m2)?}))?;
    }

    let commutation = [
        ("triangle_with_two_triangles", triangle(1, 2, 3), triangle(1, 4, 5), triangle(2, 6, 7)),
        ("k4_with_two_triangles", complete_graph(4, 1), triangle(1, 7, 8), triangle(6, 9, 10)),
        ("u24_with_two_lines", uniform_on(2, &[1, 2, 3, 4]), uniform_on(2, &[1, 5, 6]), uniform_on(2, &[2, 7, 8])),
    ];
    for (name, k, m1, m2) in commutation {
        write(&dir, &format!("commutation/{name}.json"), &json!({"K": spec(&k)?, "M1": spec(&m1)?, "M2": spec(&m2)?}))?;
    }

    let two_sums = [
        ("triangles", triangle(1, 2, 9), triangle(3, 4, 9)),
        ("k4_and_triangle", complete_graph(4, 1), triangle(7, 8, 6)),
        ("u24_and_u23", uniform_on(2, &[1, 2, 3, 9]), uniform_on(2, &[4, 5, 9])),
        ("fano_and_triangle", fano(), triangle(8, 9, 7)),
    ];
    for (name, m1, m2) in two_sums {
        let p = *m1.elements().iter().find(|e| m2.contains(**e)).unwrap();
        write(&dir, &format!("two_sum/{name}.json"), &json!({"M1": spec(&m1)?, "M2": spec(&m2)?, "p": p}))?;
    }

    write(&dir, "glue/k.json", &spec(&single(5, false))?)?;
    write(&dir, "glue/m1.json", &spec(&triangle(1, 2, 5))?)?;
    write(&dir, "glue/m2.json", &spec(&triangle(3, 4, 5))?)?;

    for (name, text) in FORMULAS {
        let path = dir.join(format!("formulas/{name}.mso"));
        fs::create_dir_all(path.parent().unwrap())?;
        fs::write(path, format!("{text}\n"))?;
    }
    println!("corpus written to {}", dir.display());
    Ok(())
}

/// `M(K4)` on vertices 0, 1, 2, 4; it shares the triangle {1, 2, 4} with `complete_graph(4, 1)`.
fn glued_k4() -> Matroid {
    amalgam::catalog::graph(&[(1, (0, 1)), (2, (0, 2)), (4, (1, 2)), (7, (0, 4)), (8, (1, 4)), (9, (2, 4))])
}

/// A second Fano plane meeting the standard one in the line through points 1, 2, 3.
fn second_fano() -> Matroid {
    let f = fano();
    let (_, cols) = f.linear_representation().unwrap();
    let line: Vec<(u32, Vec<u8>)> = [1u32, 2, 3].iter().map(|&e| (e, cols[&ElementId(e)].clone())).collect();
    let mut all = line.clone();
    for (label, v) in [(8u32, [0u8, 0, 1]), (9, [1, 0, 1]), (10, [0, 1, 1]), (11, [1, 1, 1])] {
        all.push((label, v.to_vec()));
    }
    vectors(2, &all)
}
