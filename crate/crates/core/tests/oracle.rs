//! Small instances whose optimum is known by construction, checked against
//! the exact search first and the heuristics second.

use vguard::fixtures;
use vguard::guards::{
    solve_ghosh, solve_hybrid, solve_optimal, solve_weakvis6, verify_coverage, CoverageMode,
    WeakVisInstance, OPTIMAL_MAX_N,
};
use vguard::polygen::{gen_convex, gen_weakvis, GenConfig};
use vguard::Error;

#[test]
fn oracle_on_known_optima() {
    assert_eq!(solve_optimal(&fixtures::unit_square(), CoverageMode::Components).unwrap().len(), 1);
    assert_eq!(solve_optimal(&fixtures::l_shape(), CoverageMode::Components).unwrap().len(), 1);
    for k in 1..=4 {
        let comb = fixtures::comb(k);
        let opt = solve_optimal(&comb, CoverageMode::Components).unwrap();
        assert_eq!(opt.len(), k, "comb {k}");
        assert!(verify_coverage(&comb, &opt, CoverageMode::Components).unwrap().pass);
    }
}

#[test]
fn oracle_rejects_large_polygons() {
    let big = fixtures::regular(OPTIMAL_MAX_N + 1, 1.0);
    assert!(matches!(
        solve_optimal(&big, CoverageMode::Components),
        Err(Error::TooLarge { .. })
    ));
}

#[test]
fn heuristics_match_the_oracle_on_combs() {
    for k in 2..=4 {
        let comb = fixtures::comb(k);
        assert_eq!(solve_ghosh(&comb).unwrap().len(), k);
        let hybrid = solve_hybrid(&comb, 1.0).unwrap();
        assert!(hybrid.len() >= k);
        assert!(verify_coverage(&comb, &hybrid, CoverageMode::Components).unwrap().pass);
    }
}

#[test]
fn convex_polygons_need_one_guard() {
    for seed in 0..5 {
        let poly = gen_convex(5 + seed as usize, seed).unwrap();
        assert_eq!(solve_optimal(&poly, CoverageMode::Components).unwrap().len(), 1);
        assert_eq!(solve_ghosh(&poly).unwrap().len(), 1);
        assert_eq!(solve_hybrid(&poly, 1.0).unwrap().len(), 1);
        let inst = WeakVisInstance::new(poly, 0, 1).unwrap();
        assert_eq!(solve_weakvis6(&inst).unwrap().len(), 1);
    }
}

#[test]
fn weakvis_within_six_of_optimum() {
    for seed in 0..10 {
        let inst = gen_weakvis(&GenConfig::default().with_seed(seed).with_n(4)).unwrap();
        let opt = solve_optimal(inst.polygon(), CoverageMode::Vertices).unwrap().len();
        let sol = solve_weakvis6(&inst).unwrap();
        assert!(sol.len() <= 6 * opt, "seed {seed}: {} vs {opt}", sol.len());
    }
}
