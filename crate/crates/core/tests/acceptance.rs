//! End-to-end acceptance checks. Runs as a plain binary so each criterion
//! prints one PASS or FAIL line even when the run succeeds.

mod common;

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::Instant;

use vguard::bench::{balanced_r, hybrid, large, small_low_r, Instance};
use vguard::decomp::decompose;
use vguard::fixtures;
use vguard::geom::{is_simple, reflex_vertices};
use vguard::guards::{
    hybrid_uses_reflex, solve_ghosh, solve_hybrid, solve_optimal, solve_weakvis6, solve_weakvis6_with,
    verify_coverage, CoverageMode, GuardSolution, HybridBranch, WeakVisInstance, WeakVisOptions,
};
use vguard::polygen::{gen_convex, gen_simple, gen_weakvis, validate_weakvis, GenConfig};
use vguard::Polygon;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn mean(xs: &[usize]) -> f64 {
    xs.iter().sum::<usize>() as f64 / xs.len().max(1) as f64
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2.0
    }
}

fn opt_len(poly: &Polygon, mode: CoverageMode) -> usize {
    solve_optimal(poly, mode).expect("oracle").len()
}

/// Guard counts from the balanced suite, reused by the trend check.
#[derive(Default)]
struct Shared {
    balanced: Vec<(usize, usize)>,
}

fn coverage_soundness(shared: &mut Shared) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut vertex_only_gaps = Vec::new();
    let complete = WeakVisOptions {
        complete_interior: true,
        ..WeakVisOptions::default()
    };
    let suites: [(&str, fn(u64) -> vguard::Result<Instance>); 2] =
        [("small-low-r", small_low_r), ("balanced-r", balanced_r)];
    for (name, make) in suites {
        for seed in 0..100 {
            let inst = match make(seed) {
                Ok(i) => i,
                Err(e) => {
                    failures.push(format!("{name}-{seed}: {e}"));
                    continue;
                }
            };
            let poly = &inst.polygon;
            let wv = inst.weakvis().expect("suite instances carry an edge");
            let sols: Vec<(&str, vguard::Result<GuardSolution>)> = vec![
                ("ghosh", solve_ghosh(poly)),
                ("weakvis6", solve_weakvis6_with(&wv, &complete)),
                ("hybrid", solve_hybrid(poly, 1.0)),
            ];
            let mut seen: HashMap<(Vec<usize>, CoverageMode), bool> = HashMap::new();
            let mut counts = [0usize; 2];
            for (algo, sol) in sols {
                let sol = match sol {
                    Ok(s) => s,
                    Err(e) => {
                        failures.push(format!("{name}-{seed} {algo}: {e}"));
                        continue;
                    }
                };
                match algo {
                    "ghosh" => counts[0] = sol.len(),
                    "weakvis6" => {
                        // Count sets that needed guards beyond the marking.
                        let raw = solve_weakvis6(&wv).expect("weakvis6");
                        counts[1] = raw.len();
                        if raw.guards != sol.guards {
                            vertex_only_gaps.push(format!("{name}-{seed}"));
                        }
                    }
                    _ => {}
                }
                let key = (sol.guards.clone(), sol.mode);
                let pass = *seen.entry(key).or_insert_with(|| {
                    checked += 1;
                    let report = verify_coverage(poly, &sol, sol.mode).expect("verify");
                    report.pass && report.samples == 10_000
                });
                if !pass {
                    failures.push(format!("{name}-{seed} {algo}"));
                }
            }
            if name == "balanced-r" {
                shared.balanced.push((counts[0], counts[1]));
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "200 instances, {checked} distinct guard sets verified with 10^4 samples, \
             failures {failures:?}; vertex-only weakvis6 sets topped up on {vertex_only_gaps:?}"
        ),
    )
}

fn small_weakvis(seed: u64) -> WeakVisInstance {
    let spokes = 3 + (seed % 4) as usize; // 7 to 13 vertices
    gen_weakvis(&GenConfig::default().with_seed(seed).with_n(spokes)).expect("generator")
}

fn small_simple(seed: u64) -> Polygon {
    let hull = 6 + (seed % 5) as usize;
    let reflex = 1 + (seed % 4) as usize; // at most 14 vertices
    gen_simple(&GenConfig::default().with_seed(seed).with_n(hull).with_reflex(reflex))
        .expect("generator")
}

fn ghosh_ratio() -> Outcome {
    let mut log_bound_violations = Vec::new();
    let mut within_two = 0;
    let mut total = 0;
    let polys: Vec<Polygon> = (0..25)
        .map(|s| small_weakvis(100 + s).polygon().clone())
        .chain((0..25).map(|s| small_simple(200 + s)))
        .collect();
    for (i, poly) in polys.iter().enumerate() {
        assert!(poly.len() <= 14);
        let m = decompose(poly).expect("decomposition").len();
        let g = solve_ghosh(poly).expect("ghosh").len();
        let opt = opt_len(poly, CoverageMode::Components);
        total += 1;
        if g as f64 > (1.0 + (m as f64).ln()) * opt as f64 {
            log_bound_violations.push(i);
        }
        if g <= 2 * opt {
            within_two += 1;
        }
    }
    let share = within_two as f64 / total as f64;
    outcome(
        log_bound_violations.is_empty() && share >= 0.9,
        format!(
            "{total} instances, (1 + ln m) bound violations {log_bound_violations:?}, within 2 OPT {:.0}%",
            100.0 * share
        ),
    )
}

fn weakvis6_ratio() -> Outcome {
    let mut violations = Vec::new();
    let mut worst: f64 = 0.0;
    for seed in 300..350 {
        let inst = small_weakvis(seed);
        let poly = inst.polygon();
        let w = solve_weakvis6(&inst).expect("weakvis6").len();
        // Optimum for vertex coverage is a lower bound on the polygon optimum.
        let opt = opt_len(poly, CoverageMode::Vertices);
        worst = worst.max(w as f64 / opt as f64);
        if w > 6 * opt {
            violations.push(seed);
        }
    }
    outcome(
        violations.is_empty(),
        format!("50 instances, worst ratio {worst:.2}, violations {violations:?}"),
    )
}

fn trend_and_crossover(shared: &Shared) -> (Outcome, Outcome) {
    let (g_mid, w_mid): (Vec<usize>, Vec<usize>) = shared.balanced.iter().copied().unzip();
    let mut g_big = Vec::new();
    let mut w_big = Vec::new();
    let mut g_time = Vec::new();
    let mut w_time = Vec::new();
    for seed in (0..60).step_by(2) {
        let inst = large(seed).expect("large instance");
        let wv = inst.weakvis().expect("edge");
        let g = solve_ghosh(&inst.polygon).expect("ghosh");
        let w = solve_weakvis6(&wv).expect("weakvis6");
        g_big.push(g.len());
        w_big.push(w.len());
        g_time.push(g.elapsed);
        w_time.push(w.elapsed);
    }
    let (gm, wm, gb, wb) = (mean(&g_mid), mean(&w_mid), mean(&g_big), mean(&w_big));
    let trend = outcome(
        g_mid.len() >= 30 && g_big.len() >= 30 && gm <= wm && gb <= wb,
        format!(
            "n 11-31 ({} instances): mean {gm:.2} vs {wm:.2}; n 101 ({} instances): mean {gb:.2} vs {wb:.2}",
            g_mid.len(),
            g_big.len()
        ),
    );
    let (gt, wt) = (median(g_time), median(w_time));
    let crossover = outcome(
        wt < gt,
        format!("n 101: median seconds weakvis6 {wt:.4} vs ghosh {gt:.4}"),
    );
    (trend, crossover)
}

fn hybrid_ratio() -> Outcome {
    let mut within = 0;
    let mut branches = [0usize; 3];
    let mut ratios = Vec::new();
    for seed in (0..60).step_by(2) {
        let inst = hybrid(seed).expect("hybrid instance");
        let poly = &inst.polygon;
        assert!(poly.len() <= 20);
        let sol = solve_hybrid(poly, 1.0).expect("hybrid");
        let opt = opt_len(poly, CoverageMode::Components);
        let ratio = sol.len() as f64 / opt as f64;
        ratios.push(ratio);
        if ratio <= 2.0 {
            within += 1;
        }
        let b = match sol.branch {
            Some(HybridBranch::Convex) => 0,
            Some(HybridBranch::Reflex) => 1,
            _ => 2,
        };
        branches[b] += 1;
        let r = reflex_vertices(poly).len();
        assert_eq!(b == 1, r > 0 && hybrid_uses_reflex(poly.len(), r, 1.0));
    }
    let share = within as f64 / ratios.len() as f64;
    outcome(
        share >= 0.9 && branches[1] > 0 && branches[2] > 0,
        format!(
            "30 instances, reflex branch {} / greedy branch {}, ratio <= 2 in {:.0}%, max {:.2}",
            branches[1],
            branches[2],
            100.0 * share,
            ratios.iter().copied().fold(0.0, f64::max)
        ),
    )
}

fn generator_validity() -> Outcome {
    let mut failures = Vec::new();
    for seed in 0..100 {
        let spokes = 3 + (seed % 18) as usize;
        match gen_weakvis(&GenConfig::default().with_seed(seed).with_n(spokes)) {
            Ok(inst) => {
                let poly = inst.polygon();
                let report = validate_weakvis(poly, inst.edge());
                if !report.pass || !is_simple(poly.vertices()) || poly.len() != 2 * spokes + 1 {
                    failures.push(format!("weakvis {seed}"));
                }
            }
            Err(e) => failures.push(format!("weakvis {seed}: {e}")),
        }
    }
    for seed in 0..100 {
        let hull = 5 + (seed % 30) as usize;
        let reflex = 1 + (seed as usize % 25) % (3 * (hull - 2));
        let cfg = GenConfig::default().with_seed(seed).with_n(hull).with_reflex(reflex);
        match gen_simple(&cfg) {
            Ok(poly) => {
                if reflex_vertices(&poly).len() != reflex || !is_simple(poly.vertices()) {
                    failures.push(format!("simple {seed}"));
                }
            }
            Err(e) => failures.push(format!("simple {seed}: {e}")),
        }
    }
    outcome(
        failures.is_empty(),
        format!("100 + 100 seeds, failures {failures:?}"),
    )
}

fn structural() -> Outcome {
    let mut polys = common::fixture_polygons();
    polys.extend((0..5).map(|s| small_weakvis(400 + s).polygon().clone()));
    polys.extend((0..5).map(|s| small_simple(500 + s)));
    let mut failures = Vec::new();
    for (i, poly) in polys.iter().enumerate() {
        for (name, ok) in [
            ("area", common::area_conserved(poly)),
            ("partition", common::partition_holds(poly, i as u64)),
            ("spt", common::spt_matches_dijkstra(poly)),
            ("symmetry", common::visibility_symmetric(poly)),
            ("determinism", common::greedy_deterministic(poly)),
            ("round trip", common::round_trips(poly)),
        ] {
            if !ok {
                failures.push(format!("polygon {i}: {name}"));
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("{} polygons, failures {failures:?}", polys.len()),
    )
}

fn known_instances() -> Outcome {
    let mut failures = Vec::new();
    for k in 2..=4 {
        let comb = fixtures::comb(k);
        let opt = opt_len(&comb, CoverageMode::Components);
        let g = solve_ghosh(&comb).expect("ghosh").len();
        if opt != k || g != k {
            failures.push(format!("comb {k}: opt {opt}, ghosh {g}"));
        }
    }
    let mut convex: Vec<Polygon> = (3..=9).map(|n| fixtures::regular(n, 5.0)).collect();
    convex.extend((0..5).map(|s| gen_convex(6 + s as usize, s).expect("convex")));
    for (i, poly) in convex.iter().enumerate() {
        let inst = WeakVisInstance::new(poly.clone(), 0, 1).expect("convex edge");
        let counts = [
            solve_ghosh(poly).expect("ghosh").len(),
            solve_weakvis6(&inst).expect("weakvis6").len(),
            solve_hybrid(poly, 1.0).expect("hybrid").len(),
            opt_len(poly, CoverageMode::Components),
        ];
        if counts != [1; 4] {
            failures.push(format!("convex {i}: {counts:?}"));
        }
    }
    let l = fixtures::l_shape();
    let (opt, g) = (
        opt_len(&l, CoverageMode::Components),
        solve_ghosh(&l).expect("ghosh").len(),
    );
    if opt != 1 || g != 1 {
        failures.push(format!("L-shape: opt {opt}, ghosh {g}"));
    }
    outcome(failures.is_empty(), format!("failures {failures:?}"))
}

fn main() -> ExitCode {
    let mut shared = Shared::default();
    let mut all_pass = true;
    let mut report = |no: usize, title: &str, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = run();
        all_pass &= o.pass;
        println!(
            "criterion {no} {}: {title} ({:.1} s) {}",
            if o.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            o.detail
        );
    };
    report(1, "coverage soundness", &mut || coverage_soundness(&mut shared));
    report(2, "greedy oracle ratio", &mut ghosh_ratio);
    report(3, "weak-visibility oracle ratio", &mut weakvis6_ratio);
    let mut crossover = None;
    report(4, "greedy uses fewer guards on average", &mut || {
        let (trend, c) = trend_and_crossover(&shared);
        crossover = Some(c);
        trend
    });
    report(5, "weak-visibility algorithm is faster at n = 101", &mut || {
        crossover.take().expect("computed with criterion 4")
    });
    report(6, "hybrid ratio", &mut hybrid_ratio);
    report(7, "generator validity", &mut generator_validity);
    report(8, "structural properties", &mut structural);
    report(9, "known instances", &mut known_instances);
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
