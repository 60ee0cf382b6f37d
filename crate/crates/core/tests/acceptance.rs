//! Acceptance criteria 1-10. Runs without the libtest harness and prints one
//! `criterion N: PASS|FAIL` line each; exits nonzero if any fails.
//!
//! Tolerances: every count and multiplicity is compared exactly; the time
//! limits below are part of the criteria.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use meshknit::center::{a_inf_obstruction, check_propagation, mu_element, support_report};
use meshknit::linalg::{quotient_dim, FieldSpec};
use meshknit::mesh::{diamond, diamond_cokernel, knit_layers, path_sign_check, PathSpace};
use meshknit::oracle::{Oracle, DEFAULT_ORACLE_FIELD};
use meshknit::quiver::{build_dihedral_family, build_tube, build_za_inf, PathLength};
use meshknit::report::{self, Format, RunConfig};
use meshknit::{Result, Vertex};

const Q: FieldSpec = FieldSpec::Rationals;

const LIMIT_1: Duration = Duration::from_secs(10);
const LIMIT_2: Duration = Duration::from_secs(1);
const LIMIT_3: Duration = Duration::from_secs(30);
const LIMIT_4: Duration = Duration::from_secs(10);
const LIMIT_5: Duration = Duration::from_secs(60);

/// `Ok(detail)` passes, `Err(detail)` fails.
type Outcome = std::result::Result<String, String>;

type Criterion = fn() -> Result<Outcome>;

fn u(i: i64, j: i64) -> Vertex {
    Vertex::dihedral(i, j).unwrap()
}

fn within(t: Instant, limit: Duration, detail: String) -> Outcome {
    let spent = t.elapsed();
    if spent < limit {
        Ok(format!("{detail}; {:.2}s < {}s", spent.as_secs_f64(), limit.as_secs()))
    } else {
        Err(format!("{detail}; {:.2}s exceeds {}s", spent.as_secs_f64(), limit.as_secs()))
    }
}

fn lift(r: Result<Outcome>) -> Outcome {
    r.unwrap_or_else(|e| Err(format!("error: {e}")))
}

fn criterion_1() -> Result<Outcome> {
    let t = Instant::now();
    let mut pairs = 0;
    for n in 4..=6u32 {
        let q = build_tube(n)?;
        let o = Oracle::new(n, DEFAULT_ORACLE_FIELD)?;
        for m in o.indecomposables() {
            let v = m.vertex().expect("non-projective");
            let knit = knit_layers(&q, &v, 2 * n, 1)?;
            let brute = o.radical_layers_bruteforce(&m, 2 * n)?;
            for k in 0..=knit.valid_through {
                if knit.layer(k) != brute.layer(k) {
                    return Ok(Err(format!("n={n} target {v} layer {k}: knit {:?} brute {:?}", knit.layer(k), brute.layer(k))));
                }
            }
            pairs += o.indecomposables().len();
        }
    }
    Ok(within(t, LIMIT_1, format!("{pairs} pairs agree")))
}

fn criterion_2() -> Result<Outcome> {
    let t = Instant::now();
    let q = build_dihedral_family(2)?;
    let targets = [u(0, 0), u(2, 0), u(-2, 4), u(1, 1), u(3, -1)];
    for m in targets {
        let table = knit_layers(&q, &m, 2, 2)?;
        let (i, j) = m.coords();
        let want: BTreeMap<Vertex, i64> =
            [(u(i + 4, j), 1), (q.tau(&m), 1), (u(i, j + 4), 1)].into_iter().collect();
        if table.layer(2) != want {
            return Ok(Err(format!("layer 2 at {m}: {:?}", table.layer(2))));
        }
    }
    Ok(within(t, LIMIT_2, format!("{} targets", targets.len())))
}

/// Cokernel dimension at `v` straight from the path space: paths modulo mesh
/// relations and every path through a shoulder.
fn brute_cokernel(q: &meshknit::TranslationQuiver, v: &Vertex, m: &Vertex, n: u32, window: u32) -> Result<usize> {
    let PathLength::Forced(len) = q.path_length(v, m) else { return Ok(0) };
    let d = diamond(q, m, n)?;
    let space = PathSpace::build(q, v, m, len, window + 2)?;
    let units: Vec<_> = (0..space.paths().len()).map(|i| space.unit(Q, i)).collect();
    let mut sub = space.relation_vectors(Q);
    for (i, p) in space.paths().iter().enumerate() {
        if p.contains(&d.first_shoulder) || p.contains(&d.second_shoulder) {
            sub.push(units[i].clone());
        }
    }
    quotient_dim(&units, &sub)
}

fn criterion_3() -> Result<Outcome> {
    let t = Instant::now();
    let m = u(0, 0);
    for n in 1..=3u32 {
        let window = n + 1;
        let q = build_dihedral_family(window)?;
        let table = diamond_cokernel(&q, &m, n, window, Q)?;
        let want: BTreeSet<Vertex> =
            (0..n as i64).flat_map(|a| (0..n as i64).map(move |b| u(2 * a, 2 * b))).collect();
        if table.factors() != want || table.layers.values().any(|&x| x != 1) {
            return Ok(Err(format!("n={n}: factors {:?}", table.layers)));
        }
        if table.factor_count() != (n * n) as i64 {
            return Ok(Err(format!("n={n}: {} factors", table.factor_count())));
        }
        for v in q.component_window(&m, window) {
            let brute = brute_cokernel(&q, &v, &m, n, window)?;
            if brute as i64 != table.total_at(&v) {
                return Ok(Err(format!("n={n} at {v}: brute {brute}, table {}", table.total_at(&v))));
            }
        }
    }
    Ok(within(t, LIMIT_3, "n^2 factors for n=1,2,3, brute force agrees".into()))
}

fn criterion_4() -> Result<Outcome> {
    let t = Instant::now();
    let window = 4;
    let q = build_dihedral_family(window)?;
    let vertices = q.window(window);
    let (mut pairs, mut paths) = (0, 0);
    for a in &vertices {
        for b in &vertices {
            if !matches!(q.path_length(a, b), PathLength::Forced(l) if l > 0) {
                continue;
            }
            let rep = path_sign_check(&q, a, b, None, window, Q)?;
            if let Some(c) = rep.counterexamples.first() {
                return Ok(Err(format!("{a} -> {b}: {c}")));
            }
            if !rep.ok() {
                return Ok(Err(format!("{a} -> {b}: report not ok")));
            }
            pairs += 1;
            paths += rep.paths.len();
        }
    }
    Ok(within(t, LIMIT_4, format!("{pairs} vertex pairs, {paths} paths, 0 counterexamples")))
}

fn criterion_5() -> Result<Outcome> {
    let t = Instant::now();
    let all = vec!["all".to_string()];
    let mut count = 0;
    for n in 3..=6u32 {
        let o = Oracle::new(n, DEFAULT_ORACLE_FIELD)?;
        for v in o.run_checks(&all)? {
            if !v.passed {
                return Ok(Err(format!("n={n} {}: {}", v.check, v.witness.unwrap_or_default())));
            }
            count += 1;
        }
        for m in o.indecomposables() {
            let s = o.socle_of_representable(&m)?;
            if Some(s) != o.omega(&m)?.vertex() {
                return Ok(Err(format!("n={n}: socle of Hom(-,{m}) at {s}")));
            }
        }
    }
    Ok(within(t, LIMIT_5, format!("{count} verdicts passed for n=3..6")))
}

fn criterion_6() -> Result<Outcome> {
    let mut cases = 0;
    for n in 4..=5u32 {
        let o = Oracle::new(n, DEFAULT_ORACLE_FIELD)?;
        for m in o.indecomposables() {
            for r in -4..=4i64 {
                let s = o.single_object_support_solver(&m, r)?;
                let forced = s.codomain == s.serre_image;
                let ok = if forced { s.dim == 1 && s.almost_vanishing && s.contains_connecting_class } else { s.dim == 0 };
                if !ok {
                    return Ok(Err(format!("n={n} {m} r={r}: {s:?}")));
                }
                cases += 1;
            }
        }
    }
    Ok(Ok(format!("{cases} (M, r) cases for n=4,5")))
}

fn criterion_7() -> Result<Outcome> {
    let mut details = Vec::new();
    for n in 1..=2u32 {
        let window = 2 * n + 2;
        let q = build_dihedral_family(window)?;
        let e = mu_element(&q, n)?;
        let rep = check_propagation(&q, &e, window)?;
        let mut required = vec!["1_calabi_yau", "2_tau_orbit", "3_two_middles", "4a_finite_support"];
        // a per-vertex support of size >= 2 needs n >= 2
        if n >= 2 {
            required.push("4b_support_at_least_2");
        }
        if let Some(h) = required.iter().find(|h| !rep.hypotheses[**h]) {
            return Ok(Err(format!("n={n}: hypothesis {h} fails")));
        }
        if !rep.conclusion {
            return Ok(Err(format!("n={n}: support misses part of the component")));
        }
        let s = support_report(&e, window)?;
        let component = q.component_window(&u(0, 0), window);
        if let Some(v) = component.iter().find(|v| s.per_vertex_hom_support.get(*v).map_or(0, BTreeSet::len) != (n * n) as usize) {
            return Ok(Err(format!("n={n}: hom support at {v} is not of size {}", n * n)));
        }
        details.push(format!("n={n}: {} vertices, sizes {}", component.len(), n * n));
    }
    Ok(Ok(details.join(", ")))
}

fn criterion_8() -> Result<Outcome> {
    let mut composites = 0;
    for radius in 2..=5u32 {
        let q = build_za_inf(radius)?;
        for r in [-2i64, 1, 3] {
            let rep = a_inf_obstruction(&q, r, radius, Q)?;
            if !rep.certified || rep.small_window {
                return Ok(Err(format!("radius {radius} degree {r}: {:?}", rep.witness)));
            }
            composites += rep.composites;
        }
    }
    Ok(Ok(format!("{composites} rim composites zero on radii 2..5")))
}

fn criterion_9() -> Result<Outcome> {
    let mut checked = 0;
    for n in 1..=2u32 {
        let window = 2 * n + 2;
        let q = build_dihedral_family(window)?;
        let e = mu_element(&q, n)?;
        for m in q.window(window) {
            let table = e.image_table(&m)?;
            for (k, v) in table.layers.keys() {
                let dist = match q.path_length(v, &m) {
                    PathLength::Forced(l) => l,
                    _ => return Ok(Err(format!("n={n}: factor {v} at {m} has no path"))),
                };
                if dist != *k || dist > 2 * n {
                    return Ok(Err(format!("n={n}: factor {v} at {m} at distance {dist}")));
                }
                checked += 1;
            }
        }
    }
    Ok(Ok(format!("{checked} factors within distance 2n")))
}

/// The criterion 1-3 artifacts, rendered from scratch.
fn artifacts() -> Result<Vec<String>> {
    let mut out = Vec::new();
    for format in [Format::Tsv, Format::Json] {
        let tube = build_tube(5)?;
        let o = Oracle::new(5, DEFAULT_ORACLE_FIELD)?;
        let cfg = RunConfig::new("knit", Q, 1, 10, format, 0)?.param("quiver", "tube:5").param("vertex", "J2");
        out.push(report::render(&cfg, &report::layer_table(&knit_layers(&tube, &Vertex::tube(2), 10, 1)?)));
        let brute = o.radical_layers_bruteforce(&o.j(2)?, 10)?;
        out.push(report::render(&cfg, &report::layer_table(&brute)));
        let q = build_dihedral_family(3)?;
        let cfg = RunConfig::new("knit", Q, 2, 4, format, 0)?.param("vertex", "2,0");
        out.push(report::render(&cfg, &report::layer_table(&knit_layers(&q, &u(2, 0), 4, 2)?)));
        let cfg = RunConfig::new("diamond", Q, 3, 4, format, 0)?.param("n", 3);
        out.push(report::render(&cfg, &report::layer_table(&diamond_cokernel(&q, &u(0, 0), 3, 3, Q)?)));
    }
    Ok(out)
}

fn criterion_10() -> Result<Outcome> {
    let first = artifacts()?;
    for run in 2..=3 {
        if artifacts()? != first {
            return Ok(Err(format!("run {run} differs from run 1")));
        }
    }
    let bytes: usize = first.iter().map(String::len).sum();
    Ok(Ok(format!("{} artifacts, {bytes} bytes, identical over 3 runs", first.len())))
}

fn main() -> ExitCode {
    let criteria: [(u8, Criterion); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut failed = 0;
    for (id, f) in criteria {
        let t = Instant::now();
        let outcome = lift(f());
        let wall = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id}: PASS ({detail}) [{wall:.2}s]"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id}: FAIL ({detail}) [{wall:.2}s]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
