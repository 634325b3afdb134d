use incidence_core::arrangement::{density_lower_bound, random_arrangement};
use incidence_core::geom::{collinear, incident};
use incidence_core::pipeline::{
    locality_check, run_theorem1, validate_certificate, PipelineConfig, Theorem1Outcome,
};
use incidence_core::{grid_construction, Arrangement};

/// Some `k` points in general position, pairwise joined by arrangement lines, with
/// fewer than `k` arrangement points strictly between each pair.
fn brute_force_exists(arr: &Arrangement, k: usize) -> bool {
    let pts = arr.points();
    let joined = |i: usize, j: usize| {
        arr.lines()
            .iter()
            .any(|l| incident(&pts[i], l) && incident(&pts[j], l))
    };
    fn grow(
        arr: &Arrangement,
        k: usize,
        chosen: &mut Vec<usize>,
        joined: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        let pts = arr.points();
        if chosen.len() == k {
            let sel: Vec<_> = chosen.iter().map(|&i| pts[i].clone()).collect();
            return locality_check(arr, &sel).values().all(|&c| c < k);
        }
        let start = chosen.last().map_or(0, |&i| i + 1);
        for u in start..pts.len() {
            if !chosen.iter().all(|&v| joined(u, v)) {
                continue;
            }
            let clash = chosen.iter().enumerate().any(|(a, &p)| {
                chosen[a + 1..]
                    .iter()
                    .any(|&q| collinear(&pts[p], &pts[q], &pts[u]))
            });
            if clash {
                continue;
            }
            chosen.push(u);
            if grow(arr, k, chosen, joined) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    grow(arr, k, &mut Vec::new(), &joined)
}

fn measured_config(arr: &Arrangement, k: usize) -> PipelineConfig {
    let n = arr.n_points().max(arr.n_lines());
    PipelineConfig::new(k, density_lower_bound(arr.n_incidences(), n, 1000)).unwrap()
}

#[test]
fn found_tuples_are_confirmed_and_absent_ones_are_absent() {
    let mut found = 0;
    for seed in 0..60u64 {
        let Ok(arr) =
            random_arrangement(seed, 10 + (seed % 8) as usize, 4 + (seed % 9) as usize, 4)
        else {
            continue;
        };
        for k in [3, 4] {
            let cfg = measured_config(&arr, k);
            let outcome = run_theorem1(&arr, &cfg).unwrap();
            let oracle = brute_force_exists(&arr, k);
            match outcome {
                Theorem1Outcome::Found { certificate, .. } => {
                    validate_certificate(&arr, &certificate, k).unwrap();
                    assert!(oracle, "seed {seed}, k {k}");
                    found += 1;
                }
                Theorem1Outcome::NotFound { .. } => {}
            }
        }
    }
    assert!(found > 0);
}

#[test]
fn grid_runs_produce_valid_certificates() {
    for (n, k) in [(3, 3), (5, 3), (5, 4)] {
        let arr = grid_construction(n).unwrap();
        let cfg = measured_config(&arr, k);
        let outcome = run_theorem1(&arr, &cfg).unwrap();
        let cert = outcome.certificate().expect("grid tuple");
        validate_certificate(&arr, cert, k).unwrap();
        if n == 3 {
            assert!(brute_force_exists(&arr, k));
        }
    }
}

#[test]
fn runs_are_repeatable() {
    let arr = grid_construction(4).unwrap();
    let cfg = measured_config(&arr, 3);
    assert_eq!(
        run_theorem1(&arr, &cfg).unwrap(),
        run_theorem1(&arr, &cfg).unwrap()
    );
}
