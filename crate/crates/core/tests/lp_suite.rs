mod support;

use support::random_lp::{kkt, random_feasible_lp};
use support::textbook::SUITE;
use tepkit_core::lpcore::{solve_lp, LpOptions, LpStatus};

#[test]
fn textbook_optima() {
    assert_eq!(SUITE.len(), 20);
    for tb in SUITE {
        let lp = tb.build();
        let sol = solve_lp(&lp, &LpOptions::default()).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal, "{}", tb.name);
        assert!(
            (sol.objective - tb.optimum).abs() <= 1e-8,
            "{}: got {} expected {}",
            tb.name,
            sol.objective,
            tb.optimum
        );
    }
}

#[test]
fn random_lps_satisfy_kkt() {
    for seed in 0..100 {
        let lp = random_feasible_lp(seed);
        let sol = solve_lp(&lp, &LpOptions::default()).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal, "seed {seed}");
        let r = kkt(&lp, &sol);
        assert!(r.primal_violation <= 1e-7, "seed {seed}: primal {}", r.primal_violation);
        assert!(r.dual_violation <= 1e-6, "seed {seed}: dual {}", r.dual_violation);
        assert!(r.complementarity <= 1e-6, "seed {seed}: cs {}", r.complementarity);
        assert!(r.duality_gap <= 1e-6, "seed {seed}: gap {}", r.duality_gap);
    }
}

#[test]
fn resolve_is_bit_identical() {
    for seed in 0..20 {
        let lp = random_feasible_lp(1000 + seed);
        let a = solve_lp(&lp, &LpOptions::default()).unwrap();
        let b = solve_lp(&lp, &LpOptions::default()).unwrap();
        assert_eq!(a.primal, b.primal);
        assert_eq!(a.duals, b.duals);
    }
}

#[test]
fn bland_only_still_solves_degenerate_suite() {
    let opts = LpOptions { degenerate_limit: 1, ..LpOptions::default() };
    for tb in SUITE {
        let sol = solve_lp(&tb.build(), &opts).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal, "{}", tb.name);
        assert!((sol.objective - tb.optimum).abs() <= 1e-8, "{}", tb.name);
    }
}

#[test]
fn frequent_refactorisation_agrees() {
    let opts = LpOptions { refactor_interval: 1, ..LpOptions::default() };
    for seed in 0..30 {
        let lp = random_feasible_lp(seed);
        let a = solve_lp(&lp, &LpOptions::default()).unwrap();
        let b = solve_lp(&lp, &opts).unwrap();
        assert!((a.objective - b.objective).abs() <= 1e-7 * (1.0 + a.objective.abs()));
    }
}
