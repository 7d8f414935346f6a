//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the report is always printed.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use amalgam::amalgam::{generalized_parallel_connection, glue, proper_amalgam};
use amalgam::catalog::{fano, single};
use amalgam::cli::run_with;
use amalgam::corpus::triangle_chain;
use amalgam::decomposition::{branch_width_of, AmalgamDecomposition, BranchDecomposition};
use amalgam::matroid::{restrictions_equal, two_sum};
use amalgam::tutte::{tutte_bruteforce, tutte_decomposition};
use amalgam::{ElementId, ElementSet, Matroid};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const CORPUS_RUNTIME_LIMIT: Duration = Duration::from_secs(120);
const MIN_CORPUS_FILES: usize = 15;
const AMALGAM_ORACLE_MAX: usize = 12;
const MIN_CONVERTED_MATROIDS: usize = 5;
const MIN_FORMULAS: usize = 10;
const NAIVE_SIZE_MAX: usize = 12;
const SCALING_SIZES: [usize; 4] = [8, 16, 32, 64];
const SCALING_SLOPE_MAX: f64 = 3.3;
const FUZZ_CASES: usize = 1000;
const FUZZ_SEED: u64 = 0x5eed;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn corpus(sub: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(sub)
}

fn files(sub: &str, suffix: &str) -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(corpus(sub))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.to_string_lossy().ends_with(suffix))
        .collect();
    out.sort();
    out
}

fn name(p: &Path) -> String {
    p.file_name().unwrap().to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["amalgam"];
    argv.extend_from_slice(args);
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let (code, out, err) = cli(args);
    if code != 0 {
        return Err(format!("`{}` exited {code}: {}", args.join(" "), err.trim()));
    }
    serde_json::from_str(&out).map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pair(v: &Value, a: &str, b: &str) -> (Matroid, Matroid) {
    let load = |k: &str| Matroid::from_json_str(&v[k].to_string()).unwrap();
    (load(a), load(b))
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn tutte_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let paths = files("decompositions", ".json");
    ensure(paths.len() >= MIN_CORPUS_FILES, || format!("only {} decomposition files", paths.len()))?;
    let (mut sizes, mut widths) = (BTreeSet::new(), BTreeSet::new());
    for p in &paths {
        let t = AmalgamDecomposition::load(p).unwrap();
        sizes.insert(t.realize(t.root()).map_err(|e| e.to_string())?.len());
        widths.insert(t.width());
        let path = p.to_str().unwrap();
        let dp = cli_json(&["tutte", path, "--dp"])?;
        let brute = cli_json(&["tutte", path, "--brute"])?;
        ensure(dp["coeffs"] == brute["coeffs"], || format!("{}: dp {} but brute {}", name(p), dp["text"], brute["text"]))?;
    }
    ensure((3..=14).all(|n| sizes.contains(&n)), || format!("realized sizes {sizes:?} do not cover 3..14"))?;
    ensure((1..=6).all(|w| widths.contains(&w)), || format!("widths {widths:?} do not cover 1..6"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < CORPUS_RUNTIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("{} files, sizes {sizes:?}, widths {widths:?}, {:.1}s", paths.len(), elapsed.as_secs_f64()))
}

fn known_polynomials() -> Outcome {
    let u24 = Matroid::load(corpus("matroids/u24.json")).unwrap();
    let brute = tutte_bruteforce(&u24).unwrap().to_string();
    ensure(brute == "x^2 + 2x + 2y + y^2", || format!("U(2,4) brute force gave {brute}"))?;
    let lin = Matroid::load(corpus("matroids/u24_gf3.json")).unwrap();
    let b = BranchDecomposition::load(corpus("matroids/u24_gf3.branch.json")).unwrap();
    let t = amalgam::decomposition::from_branch_decomposition(&lin, &b).unwrap();
    let dp = tutte_decomposition(&t).unwrap().to_string();
    ensure(dp == brute, || format!("U(2,4) dp gave {dp}"))?;

    let k3 = Matroid::load(corpus("matroids/k3_graphic.json")).unwrap();
    let brute = tutte_bruteforce(&k3).unwrap().to_string();
    ensure(brute == "x^2 + x + y", || format!("K3 brute force gave {brute}"))?;
    let dp = tutte_decomposition(&AmalgamDecomposition::load(corpus("decompositions/triangle.json")).unwrap())
        .unwrap()
        .to_string();
    ensure(dp == brute, || format!("K3 dp gave {dp}"))?;

    let f = fano();
    let triples = (0..1u64 << 7).filter(|m| m.count_ones() == 3).count();
    let bases = (0..1u64 << 7).filter(|&m| m.count_ones() == 3 && f.rank_mask(m) == 3).count();
    let t11 = tutte_bruteforce(&f).unwrap().evaluate_int(1, 1);
    ensure(triples == 35 && bases == 28 && t11 == 28.into(), || format!("Fano: {triples} triples, {bases} bases, T(1,1) = {t11}"))?;
    Ok("U(2,4), K3 and Fano T(1,1) = 28 match".into())
}

fn amalgam_construction() -> Outcome {
    let mut checked = 0;
    for p in files("gpc", ".json") {
        let (m1, m2) = pair(&read_json(&p), "M1", "M2");
        let gpc = generalized_parallel_connection(&m1, &m2).map_err(|e| format!("{}: {e}", name(&p)))?;
        ensure(gpc.len() <= AMALGAM_ORACLE_MAX, || format!("{}: {} elements", name(&p), gpc.len()))?;
        let oracle = proper_amalgam(&m1, &m2).map_err(|e| format!("{}: {e}", name(&p)))?;
        ensure(gpc.ground_set() == oracle.ground_set() && gpc.rank_table().unwrap() == oracle.rank_table().unwrap(), || {
            format!("{}: closed formula and zeta disagree", name(&p))
        })?;
        for part in [&m1, &m2] {
            let e = part.ground_set();
            ensure(restrictions_equal(&gpc, part, &e).unwrap(), || format!("{}: restriction to a part differs", name(&p)))?;
        }
        checked += 1;
    }
    let mut triples = 0;
    for p in files("commutation", ".json") {
        let v = read_json(&p);
        let (m1, m2) = pair(&v, "M1", "M2");
        let k = Matroid::from_json_str(&v["K"].to_string()).unwrap();
        let none = ElementSet::new();
        let a = glue(&m1, &m2, &k, &none).map_err(|e| format!("{}: {e}", name(&p)))?;
        let b = glue(&m2, &m1, &k, &none).map_err(|e| format!("{}: {e}", name(&p)))?;
        ensure(a.ground_set() == b.ground_set() && a.rank_table().unwrap() == b.rank_table().unwrap(), || {
            format!("{}: glue order changes the rank table", name(&p))
        })?;
        triples += 1;
    }
    ensure(checked > 0 && triples > 0, || "empty corpus".into())?;
    Ok(format!("{checked} connections, {triples} commutation triples"))
}

fn two_sum_realization() -> Outcome {
    let mut n = 0;
    for p in files("two_sum", ".json") {
        let v = read_json(&p);
        let (m1, m2) = pair(&v, "M1", "M2");
        let e = ElementId(v["p"].as_u64().unwrap() as u32);
        let glued = glue(&m1, &m2, &single(e.0, false), &[e].into()).map_err(|err| format!("{}: {err}", name(&p)))?;
        let direct = two_sum(&m1, &m2, e, e).unwrap();
        ensure(glued.circuits().unwrap() == direct.circuits().unwrap(), || format!("{}: circuit sets differ", name(&p)))?;
        n += 1;
    }
    ensure(n > 0, || "empty corpus".into())?;
    Ok(format!("{n} pairs"))
}

fn conversion_bound() -> Outcome {
    let dir = std::env::temp_dir().join(format!("amalgam-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut report = Vec::new();
    for b in files("matroids", ".branch.json") {
        let mpath = PathBuf::from(b.to_string_lossy().replace(".branch.json", ".json"));
        let m = Matroid::load(&mpath).unwrap();
        let branch = BranchDecomposition::load(&b).unwrap();
        let k = branch_width_of(&m, &branch).unwrap();
        if !(1..=3).contains(&k) {
            continue;
        }
        let (p, _) = m.linear_representation().ok_or_else(|| format!("{} is not linear", name(&mpath)))?;
        let out = dir.join(name(&mpath));
        let (code, _, err) =
            cli(&["convert", "--matroid", mpath.to_str().unwrap(), "--branch", b.to_str().unwrap(), "-o", out.to_str().unwrap()]);
        ensure(code == 0, || format!("convert {} exited {code}: {err}", name(&mpath)))?;
        let t = AmalgamDecomposition::load(&out).unwrap();
        ensure(t.validate().is_valid(), || format!("{}: converted decomposition is invalid", name(&mpath)))?;
        ensure(t.realize(t.root()).unwrap().same_as(&m), || format!("{}: realization differs", name(&mpath)))?;
        let bound = (p.get() as usize).pow(3 * k as u32 / 2);
        ensure(t.width() <= bound, || format!("{}: width {} exceeds {bound}", name(&mpath), t.width()))?;
        report.push(format!("{}: k={k} width {} <= {bound}", name(&mpath).trim_end_matches(".json"), t.width()));
    }
    std::fs::remove_dir_all(&dir).ok();
    ensure(report.len() >= MIN_CONVERTED_MATROIDS, || format!("only {} matroids with k in 1..=3", report.len()))?;
    Ok(report.join(", "))
}

fn nice_transform() -> Outcome {
    let paths = files("decompositions", ".json");
    for p in &paths {
        let t = AmalgamDecomposition::load(p).unwrap();
        let n = t.to_nice().map_err(|e| format!("{}: {e}", name(p)))?;
        ensure(n.is_nice() && n.validate().is_valid(), || format!("{}: output is not a valid nice decomposition", name(p)))?;
        ensure(n.realize(n.root()).unwrap().same_as(&t.realize(t.root()).unwrap()), || format!("{}: realization changed", name(p)))?;
        ensure(n.width() <= 2 * t.width(), || format!("{}: width {} -> {}", name(p), t.width(), n.width()))?;
    }
    Ok(format!("{} files", paths.len()))
}

fn mso_oracle_equivalence() -> Outcome {
    let formulas = files("formulas", ".mso");
    ensure(formulas.len() >= MIN_FORMULAS, || format!("only {} formulas", formulas.len()))?;
    let mut runs = 0;
    for d in files("decompositions", ".json") {
        let t = AmalgamDecomposition::load(&d).unwrap();
        if t.realize(t.root()).unwrap().len() > NAIVE_SIZE_MAX {
            continue;
        }
        for f in &formulas {
            cli_json(&["mso", "--formula", f.to_str().unwrap(), "--decomposition", d.to_str().unwrap(), "--engine", "both"])
                .map_err(|e| format!("{} on {}: {e}", name(f), name(&d)))?;
            runs += 1;
        }
    }
    let ham = corpus("formulas/hamiltonian.mso");
    let verdict = |flag: &str, file: &Path, engine: &str| -> Result<String, String> {
        let v = cli_json(&["mso", "--formula", ham.to_str().unwrap(), flag, file.to_str().unwrap(), "--engine", engine])?;
        Ok(v["verdict"].as_str().unwrap_or_default().to_string())
    };
    ensure(verdict("--decomposition", &corpus("decompositions/k4.json"), "both")? == "ACCEPT", || "K4 is not Hamiltonian".into())?;
    ensure(verdict("--matroid", &corpus("matroids/k4_graphic.json"), "naive")? == "ACCEPT", || "graphic K4 rejected".into())?;
    ensure(verdict("--matroid", &corpus("matroids/path_graphic.json"), "naive")? == "REJECT", || "path accepted".into())?;
    ensure(verdict("--decomposition", &corpus("decompositions/free_3.json"), "both")? == "REJECT", || "free matroid accepted".into())?;
    Ok(format!("{runs} formula/decomposition pairs agree; Hamiltonicity ACCEPT on K4, REJECT on the path"))
}

fn scaling() -> Outcome {
    let mut points = Vec::new();
    for &n in &SCALING_SIZES {
        let t = triangle_chain(n);
        let best = (0..3)
            .map(|_| {
                let start = Instant::now();
                tutte_decomposition(&t).unwrap();
                start.elapsed().as_secs_f64()
            })
            .fold(f64::INFINITY, f64::min);
        points.push(((n as f64).ln(), best.ln()));
    }
    let k = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / k, sy / k);
    let num: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = points.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    let slope = num / den;
    ensure(slope <= SCALING_SLOPE_MAX, || format!("log-log slope {slope:.2} > {SCALING_SLOPE_MAX}"))?;
    let at64 = points.last().unwrap().1.exp();
    Ok(format!("log-log slope {slope:.2} over n = {SCALING_SIZES:?}, {:.1} ms at n = 64", at64 * 1e3))
}

fn random_base(rng: &mut ChaCha8Rng, first: u32) -> Matroid {
    let p = if rng.gen_bool(0.5) { 2 } else { 3 };
    let rows = rng.gen_range(1..=3);
    let cols: Vec<(u32, Vec<u8>)> =
        (0..rng.gen_range(2..=5)).map(|i| (first + i, (0..rows).map(|_| rng.gen_range(0..p as u8)).collect())).collect();
    amalgam::catalog::vectors(p, &cols)
}

fn random_minor(rng: &mut ChaCha8Rng, m: &Matroid) -> Matroid {
    let pick = |rng: &mut ChaCha8Rng| -> ElementSet { m.elements().iter().copied().filter(|_| rng.gen_bool(0.2)).collect() };
    let s = pick(rng);
    if rng.gen_bool(0.5) {
        m.delete(&s).unwrap()
    } else {
        m.contract(&s).unwrap()
    }
}

fn fuzz_case(rng: &mut ChaCha8Rng) -> Result<Matroid, String> {
    let mut m = random_base(rng, 1);
    for _ in 0..rng.gen_range(1..=3) {
        let next = m.elements().last().map_or(1, |e| e.0 + 1);
        let other = random_base(rng, next);
        match (m.elements().first().copied(), rng.gen_range(0..3)) {
            (Some(p), 0) => {
                // Identify the first element of `other` with `p` when their loop status matches.
                let q = other.elements()[0];
                if m.is_loop(p) != other.is_loop(q) {
                    continue;
                }
                let map = other.elements().iter().map(|&e| (e, if e == q { p } else { e })).collect();
                let other = other.relabel(&map).unwrap();
                let d: ElementSet = if rng.gen_bool(0.5) { [p].into() } else { ElementSet::new() };
                m = glue(&m, &other, &single(p.0, m.is_loop(p)), &d).map_err(|e| e.to_string())?;
            }
            (_, 1) => m = glue(&m, &other, &Matroid::empty(), &ElementSet::new()).map_err(|e| e.to_string())?,
            _ => m = random_minor(rng, &m),
        }
        if m.len() > 12 {
            m = random_minor(rng, &m.delete(&m.elements()[12..].iter().copied().collect()).unwrap());
        }
    }
    Ok(m)
}

fn rank_axiom_fuzzing() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(FUZZ_SEED);
    let mut largest = 0;
    for case in 0..FUZZ_CASES {
        let m = fuzz_case(&mut rng).map_err(|e| format!("case {case}: {e}"))?;
        largest = largest.max(m.len());
        m.check_rank_axioms().map_err(|v| format!("case {case}: {v:?}"))?;
    }
    Ok(format!("{FUZZ_CASES} compositions, up to {largest} elements"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("tutte oracle equivalence", tutte_oracle_equivalence),
        ("known polynomials", known_polynomials),
        ("amalgam construction", amalgam_construction),
        ("2-sum realization", two_sum_realization),
        ("conversion width bound", conversion_bound),
        ("nice transform", nice_transform),
        ("mso oracle equivalence", mso_oracle_equivalence),
        ("tutte dp scaling", scaling),
        ("rank-axiom fuzzing", rank_axiom_fuzzing),
    ];
    let mut failed = 0;
    for (i, (label, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS {label}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {label}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
