//! End-to-end acceptance gates. Each criterion prints one `PASS`/`FAIL` line; the
//! process exits non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::str::FromStr;
use std::time::{Duration, Instant};

use incidence_core::arrangement::{pencil, random_arrangement, spanned_lines, square_grid_points};
use incidence_core::clique::{
    build_graph, count_triangles, de_caen_szekely_monitor, enumerate_complete_tuples,
};
use incidence_core::document::{ArrangementDocument, MonitorView};
use incidence_core::geom::{
    collinear, concurrent, incident, intersection, ratio, strictly_between, Crossing, Line, Point,
};
use incidence_core::partition::{crossing_profile, partition};
use incidence_core::{grid_construction, Arrangement, Scalar};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_incidence");

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

struct Suite {
    dir: tempfile::TempDir,
    artifacts: PathBuf,
    /// Every arrangement built along the way, for the triangle monitor.
    seen: Vec<(String, Arrangement)>,
}

impl Suite {
    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn keep(&mut self, name: impl Into<String>, arr: &Arrangement) {
        self.seen.push((name.into(), arr.clone()));
    }
}

fn write_doc(path: &Path, arr: &Arrangement) {
    std::fs::write(
        path,
        ArrangementDocument::from_arrangement(arr, None).to_json_pretty(),
    )
    .unwrap();
}

fn cli(args: &[&str]) -> (i32, Vec<u8>, String) {
    let out = Command::new(BIN)
        .args(args)
        .output()
        .expect("run incidence");
    (
        out.status.code().unwrap_or(-1),
        out.stdout,
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn within(limit_s: u64, elapsed: Duration) -> Result<(), String> {
    if elapsed <= Duration::from_secs(limit_s) {
        Ok(())
    } else {
        Err(format!(
            "took {:.1}s, limit {limit_s}s",
            elapsed.as_secs_f64()
        ))
    }
}

fn brute_incidences(arr: &Arrangement) -> usize {
    arr.points()
        .iter()
        .map(|p| arr.lines().iter().filter(|l| incident(p, l)).count())
        .sum()
}

fn criterion_1(_: &mut Suite) -> Outcome {
    let start = Instant::now();
    for n in [1u32, 2, 3, 5, 10] {
        let arr = grid_construction(n).unwrap();
        let n = n as usize;
        let expected_incidences = n.pow(4);
        if arr.n_points() != 2 * n.pow(3) || arr.n_lines() != n.pow(3) {
            return fail(format!(
                "N={n}: {} points, {} lines",
                arr.n_points(),
                arr.n_lines()
            ));
        }
        if arr.n_incidences() != expected_incidences {
            return fail(format!("N={n}: {} incidences", arr.n_incidences()));
        }
        if n <= 3 && brute_incidences(&arr) != expected_incidences {
            return fail(format!("N={n}: brute-force scan disagrees"));
        }
        if let Some(j) = (0..arr.n_lines()).find(|&j| arr.richness(j) != n) {
            return fail(format!("N={n}: line {j} has {} points", arr.richness(j)));
        }
    }
    match within(10, start.elapsed()) {
        Ok(()) => pass(format!("{:.2}s", start.elapsed().as_secs_f64())),
        Err(e) => fail(e),
    }
}

fn criterion_2(s: &mut Suite) -> Outcome {
    let arr = grid_construction(10).unwrap();
    let rows = arr.st_bound_report(&ratio(4, 1));
    let tightest = rows
        .iter()
        .map(|r| r.tightest_constant())
        .max()
        .unwrap_or_else(Scalar::zero);
    let tight_f = tightest.to_f64().unwrap_or(f64::NAN);
    let detail = format!(
        "{} rows, tightest constant {tightest} (~{tight_f:.4})",
        rows.len()
    );
    s.keep("grid(10)", &arr);
    if rows.is_empty() {
        return fail("no rows");
    }
    match rows.iter().find(|r| !r.within_bound) {
        None => pass(detail),
        Some(r) => fail(format!(
            "m={} count {} > bound {}; {detail}",
            r.m, r.rich_count, r.bound
        )),
    }
}

fn brute_triangles(arr: &Arrangement) -> usize {
    let pts = arr.points();
    let joined = |i: usize, j: usize| {
        arr.lines()
            .iter()
            .any(|l| incident(&pts[i], l) && incident(&pts[j], l))
    };
    let n = pts.len();
    let mut count = 0;
    for a in 0..n {
        for b in a + 1..n {
            if !joined(a, b) {
                continue;
            }
            for c in b + 1..n {
                if joined(a, c) && joined(b, c) && !collinear(&pts[a], &pts[b], &pts[c]) {
                    count += 1;
                }
            }
        }
    }
    count
}

fn brute_line_triples(arr: &Arrangement) -> usize {
    let lines = arr.lines();
    let points: HashSet<&Point> = arr.points().iter().collect();
    let meet = |i: usize, j: usize| {
        matches!(
            intersection(&lines[i], &lines[j]),
            Ok(Crossing::Point(p)) if points.contains(&p)
        )
    };
    let n = lines.len();
    let mut count = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if meet(a, b)
                    && meet(a, c)
                    && meet(b, c)
                    && !concurrent(&lines[a], &lines[b], &lines[c])
                {
                    count += 1;
                }
            }
        }
    }
    count
}

fn criterion_3(s: &mut Suite) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut built = 0;
    let mut seed = 0u64;
    let mut total_triangles = 0;
    let mut total_triples = 0;
    while built < 50 {
        seed += 1;
        let np = rng.random_range(4..=30);
        let nl = rng.random_range(3..=12);
        let Ok(arr) = random_arrangement(seed, np, nl, 6) else {
            continue;
        };
        built += 1;
        let tri = count_triangles(&arr);
        let tri_brute = brute_triangles(&arr);
        if tri != tri_brute {
            return fail(format!(
                "seed {seed}: count_triangles {tri}, brute force {tri_brute}"
            ));
        }
        let all: BTreeSet<usize> = (0..arr.n_points()).collect();
        let g = build_graph(&arr, &all);
        let tuples = enumerate_complete_tuples(&g, &arr, 3, None).unwrap();
        if tuples.iter().any(|t| !t.general_position_certificate) {
            return fail(format!("seed {seed}: uncertified tuple"));
        }
        let triples = brute_line_triples(&arr);
        if tuples.len() != triples {
            return fail(format!(
                "seed {seed}: {} tuples, brute force {triples}",
                tuples.len()
            ));
        }
        total_triangles += tri;
        total_triples += triples;
        s.keep(format!("random seed {seed}"), &arr);
    }
    match within(60, start.elapsed()) {
        Ok(()) => pass(format!(
            "50 arrangements, {total_triangles} triangles, {total_triples} line triples, {:.2}s",
            start.elapsed().as_secs_f64()
        )),
        Err(e) => fail(e),
    }
}

fn random_rational_points(seed: u64, n: usize) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p = Point::new(
            ratio(
                rng.random_range(-1_000_000..=1_000_000),
                rng.random_range(1..=1000),
            ),
            ratio(
                rng.random_range(-1_000_000..=1_000_000),
                rng.random_range(1..=1000),
            ),
        );
        if seen.insert(p.clone()) {
            out.push(p);
        }
    }
    out
}

fn criterion_4(_: &mut Suite) -> Outcome {
    let start = Instant::now();
    let n = 1 << 14;
    let points = random_rational_points(4, n);
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let lines: Vec<Line> = (0..1000)
        .map(|_| loop {
            let i = rng.random_range(0..n);
            let j = rng.random_range(0..n);
            if i != j {
                break incidence_core::geom::line_through(&points[i], &points[j]).unwrap();
            }
        })
        .collect();
    let mut details = Vec::new();
    for r in [16usize, 64, 256] {
        let pr = partition(&points, r).unwrap();
        let check = pr.verify(&points);
        if !check.covers || !check.sizes_in_window || !check.cell_count_within {
            return fail(format!("r={r}: {check:?}"));
        }
        let profile = crossing_profile(&pr, &lines);
        // max <= 8·√r  ⟺  max² <= 64·r
        let gate_ok = profile.max * profile.max <= 64 * r;
        let limit = 8.0 * (r as f64).sqrt();
        details.push(format!(
            "r={r} t={} max={} (gate {limit:.0})",
            pr.t(),
            profile.max
        ));
        if !gate_ok {
            return fail(details.join(", "));
        }
    }
    match within(120, start.elapsed()) {
        Ok(()) => pass(format!(
            "{}, {:.1}s",
            details.join(", "),
            start.elapsed().as_secs_f64()
        )),
        Err(e) => fail(format!("{}; {e}", details.join(", "))),
    }
}

fn json_int(v: &Value) -> BigInt {
    match v {
        Value::Number(n) => BigInt::from(n.as_i64().expect("integer")),
        Value::String(s) => BigInt::from_str(s).expect("decimal integer"),
        _ => panic!("not an integer: {v}"),
    }
}

fn json_scalar(v: &Value) -> Scalar {
    Scalar::new(json_int(&v[0]), json_int(&v[1]))
}

/// Re-check a certificate from the report JSON using only the exact predicates.
fn revalidate(arr: &Arrangement, report: &Value, k: usize) -> Result<(), String> {
    let cert = &report["certificate"];
    let pts: Vec<Point> = cert["points"]
        .as_array()
        .ok_or("no certificate points")?
        .iter()
        .map(|p| Point::new(json_scalar(&p["x"]), json_scalar(&p["y"])))
        .collect();
    if pts.len() != k {
        return Err(format!("{} points", pts.len()));
    }
    let members: HashSet<&Point> = arr.points().iter().collect();
    if pts.iter().any(|p| !members.contains(p)) || pts.iter().collect::<HashSet<_>>().len() != k {
        return Err("points not distinct arrangement points".into());
    }
    let lines: HashSet<&Line> = arr.lines().iter().collect();
    let mut joined = BTreeMap::new();
    for entry in cert["connecting_lines"].as_array().ok_or("no lines")? {
        let c = &entry["coefficients"];
        let l = Line::new(json_int(&c[0]), json_int(&c[1]), json_int(&c[2]))
            .map_err(|e| e.to_string())?;
        if !lines.contains(&l) {
            return Err(format!("line {l:?} not in the arrangement"));
        }
        let a = entry["a"].as_u64().unwrap() as usize;
        let b = entry["b"].as_u64().unwrap() as usize;
        if !incident(&pts[a], &l) || !incident(&pts[b], &l) {
            return Err(format!("pair ({a}, {b}) not on its line"));
        }
        joined.insert((a, b), l);
    }
    for a in 0..k {
        for b in a + 1..k {
            if !joined.contains_key(&(a, b)) {
                return Err(format!("pair ({a}, {b}) has no line"));
            }
            for c in b + 1..k {
                if collinear(&pts[a], &pts[b], &pts[c]) {
                    return Err(format!("({a}, {b}, {c}) collinear"));
                }
            }
            let between = arr
                .points()
                .iter()
                .filter(|q| strictly_between(&pts[a], &pts[b], q))
                .count();
            if between >= k {
                return Err(format!("pair ({a}, {b}) has {between} points between"));
            }
        }
    }
    Ok(())
}

fn criterion_5(s: &mut Suite) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut okays = Vec::new();
    for n in [3u32, 5, 8] {
        let arr = grid_construction(n).unwrap();
        let input = s.path(&format!("grid{n}.json"));
        write_doc(&input, &arr);
        s.keep(format!("grid({n})"), &arr);
        for k in [3usize, 4] {
            let (code, stdout, stderr) = cli(&[
                "theorem1",
                "-i",
                input.to_str().unwrap(),
                "--k",
                &k.to_string(),
            ]);
            if code != 0 {
                failures.push(format!("N={n} k={k}: exit {code} {}", stderr.trim()));
                continue;
            }
            let report: Value = serde_json::from_slice(&stdout).unwrap();
            match revalidate(&arr, &report, k) {
                Ok(()) => okays.push(format!("N={n} k={k}")),
                Err(e) => failures.push(format!("N={n} k={k}: {e}")),
            }
        }
    }
    let timing = within(300, start.elapsed());
    let summary = format!(
        "ok: [{}]; {:.1}s",
        okays.join(", "),
        start.elapsed().as_secs_f64()
    );
    if failures.is_empty() && timing.is_ok() {
        pass(summary)
    } else {
        let mut all = failures;
        all.extend(timing.err());
        fail(format!("{}; {summary}", all.join("; ")))
    }
}

fn criterion_6(s: &mut Suite) -> Outcome {
    let start = Instant::now();
    let arr = pencil(&Point::from_ints(0, 0), 20, true);
    s.keep("pencil(20)", &arr);
    let input = s.path("pencil.json");
    write_doc(&input, &arr);
    let (code, stdout, _) = cli(&["theorem1", "-i", input.to_str().unwrap(), "--k", "3"]);
    let report: Value = serde_json::from_slice(&stdout).unwrap_or(Value::Null);
    let g = build_graph(&arr, &(0..arr.n_points()).collect());
    let complete = g.n_edges() == 190 && g.is_clique(&(0..20).collect::<Vec<_>>());
    let tuples = enumerate_complete_tuples(&g, &arr, 3, None).unwrap().len();
    let detail = format!(
        "exit {code}, status {}, graph K20 {complete}, {tuples} tuples",
        report["status"]
    );
    match within(5, start.elapsed()) {
        Ok(()) if code == 3 && report["status"] == "not_found" && complete && tuples == 0 => {
            pass(detail)
        }
        Ok(()) => fail(detail),
        Err(e) => fail(format!("{detail}; {e}")),
    }
}

fn incidence_pairs(arr: &Arrangement) -> BTreeSet<(usize, usize)> {
    arr.incidences().iter().map(|i| (i.point, i.line)).collect()
}

fn criterion_7(s: &mut Suite) -> Outcome {
    let start = Instant::now();
    let mut built = 0;
    let mut seed = 700u64;
    while built < 20 {
        seed += 1;
        let Ok(raw) =
            random_arrangement(seed, 6 + (seed % 20) as usize, 3 + (seed % 10) as usize, 9)
        else {
            continue;
        };
        let arr = raw.shear(&raw.generic_shear());
        if arr.lines().iter().any(Line::is_vertical) {
            return fail(format!("seed {seed}: shear left a vertical line"));
        }
        built += 1;
        let dual = arr.dualize().unwrap();
        let back = dual.dualize().unwrap();
        if incidence_pairs(&back) != incidence_pairs(&arr) || back != arr {
            return fail(format!("seed {seed}: double dual differs"));
        }
        let transposed: BTreeSet<(usize, usize)> = incidence_pairs(&dual)
            .into_iter()
            .map(|(p, l)| (l, p))
            .collect();
        if transposed != incidence_pairs(&arr) {
            return fail(format!(
                "seed {seed}: dual incidences are not the transpose"
            ));
        }
        s.keep(format!("sheared seed {seed}"), &arr);
    }
    match within(30, start.elapsed()) {
        Ok(()) => pass(format!(
            "20 arrangements, {:.2}s",
            start.elapsed().as_secs_f64()
        )),
        Err(e) => fail(e),
    }
}

fn criterion_8(s: &mut Suite) -> Outcome {
    let spanned = spanned_lines(square_grid_points(3)).unwrap();
    s.keep("spanned 3x3", &spanned);
    let mut counterexamples = Vec::new();
    let mut max_ratio = (0usize, 1usize);
    for (name, arr) in &s.seen {
        let m = de_caen_szekely_monitor(arr);
        if m.bound > 0 && m.triangles * max_ratio.1 > max_ratio.0 * m.bound {
            max_ratio = (m.triangles, m.bound);
        }
        if !m.conjecture_holds {
            let path = s.artifacts.join(format!(
                "COUNTEREXAMPLE-{}.json",
                name.replace([' ', '(', ')'], "_")
            ));
            let body = serde_json::json!({
                "name": name,
                "monitor": MonitorView::from(&m),
                "arrangement": ArrangementDocument::from_arrangement(arr, None),
            });
            std::fs::write(&path, serde_json::to_string_pretty(&body).unwrap()).unwrap();
            counterexamples.push(path.display().to_string());
        }
    }
    let spanned_triangles = count_triangles(&spanned);
    let detail = format!(
        "{} arrangements, 3x3 spanned has {spanned_triangles} triangles, peak triangles/bound {}/{}",
        s.seen.len(),
        max_ratio.0,
        max_ratio.1
    );
    if counterexamples.is_empty() {
        pass(detail)
    } else {
        // reported, never a failure
        pass(format!(
            "{detail}; COUNTEREXAMPLE written to {}",
            counterexamples.join(", ")
        ))
    }
}

fn criterion_9(s: &mut Suite) -> Outcome {
    let input = s.path("grid5.json");
    write_doc(&input, &grid_construction(5).unwrap());
    let mut outputs = Vec::new();
    for run in 0..2 {
        let out = s.path(&format!("report{run}.json"));
        let (code, stdout, _) = cli(&[
            "theorem1",
            "-i",
            input.to_str().unwrap(),
            "--k",
            "4",
            "--seed",
            "9",
            "-o",
            out.to_str().unwrap(),
        ]);
        if code != 0 || !stdout.is_empty() {
            return fail(format!("run {run}: exit {code}"));
        }
        outputs.push(std::fs::read(&out).unwrap());
    }
    if outputs[0] == outputs[1] {
        pass(format!("{} identical bytes", outputs[0].len()))
    } else {
        fail("reports differ")
    }
}

fn main() {
    let artifacts = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    std::fs::create_dir_all(&artifacts).unwrap();
    let mut suite = Suite {
        dir: tempfile::tempdir().unwrap(),
        artifacts,
        seen: Vec::new(),
    };
    type Criterion = fn(&mut Suite) -> Outcome;
    let criteria: [(&str, Criterion); 9] = [
        ("grid construction counts", criterion_1),
        ("rich-line bound with constant 4 on grid(10)", criterion_2),
        ("triangle and line-triple oracles", criterion_3),
        ("partition contract and crossing gate", criterion_4),
        ("tuple search on grids", criterion_5),
        ("pencil rejection", criterion_6),
        ("duality involution", criterion_7),
        ("triangle monitor", criterion_8),
        ("byte-identical reports", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run(&mut suite);
        let tag = if outcome.ok { "PASS" } else { "FAIL" };
        println!("{tag} {} {name}: {}", i + 1, outcome.detail);
        failed += usize::from(!outcome.ok);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
