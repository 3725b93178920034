use super::*;
use crate::netmodel::fixtures::*;
use crate::netmodel::{Network, ScenarioConfig};
use crate::NullClock;
use alloc::string::ToString;
use alloc::vec;

fn config() -> ScenarioConfig {
    ScenarioConfig { renewable_share: 0.3, volume_cap: 1.0, ..ScenarioConfig::default() }
}

/// Two buses, all load at `b`, generation only at `a`; the line must grow
/// by `0.43` circuits to carry the load at 70% loading.
fn radial() -> Network {
    Network::new(
        "radial",
        vec![bus("a", vec![0.0, 0.0]), bus("b", vec![200.0, 150.0])],
        snapshots(2),
        vec![ocgt("g", "a", 2)],
        vec![line("ab", "a", "b", 1, 200.0, 10.0)],
        vec![],
    )
    .unwrap()
}

fn radial_config() -> ScenarioConfig {
    ScenarioConfig { renewable_share: 0.0, volume_cap: 1.0, ..ScenarioConfig::default() }
}

#[test]
fn codes_round_trip() {
    for v in HeuristicVariant::ALL {
        assert_eq!(v.code().parse::<HeuristicVariant>().unwrap(), v);
    }
    assert_eq!(
        "heur-iter-seqdisc-postdisc_mult".parse::<HeuristicVariant>().unwrap(),
        HeuristicVariant::HEUR_ITER_SEQDISC_POSTDISC_MULT
    );
    assert_eq!(HeuristicVariant::HEUR_INT_ITER.to_string(), "heur-int-iter");
}

#[test]
fn rejects_invalid_codes() {
    assert_eq!("heur-seqdisc".parse::<HeuristicVariant>(), Err(HeuristicError::SeqdiscWithoutIteration));
    assert_eq!("heur-int-iter-postdisc".parse::<HeuristicVariant>(), Err(HeuristicError::IntegerWithPostdisc));
    assert!(matches!("bigm".parse::<HeuristicVariant>(), Err(HeuristicError::UnknownCode(_))));
    assert!(matches!("heur-iter-extra".parse::<HeuristicVariant>(), Err(HeuristicError::UnknownCode(_))));
}

#[test]
fn seq_discretize_examples() {
    let c = [0, 1, 2];
    assert_eq!(seq_discretize(0.4, &c), 0);
    assert_eq!(seq_discretize(0.5, &c), 1);
    assert_eq!(seq_discretize(2.4, &c), 2);
    assert_eq!(seq_discretize(1.0, &[0, 2]), 2);
}

#[test]
fn post_discretize_examples() {
    let c = [0, 1, 2];
    assert_eq!(post_discretize(1.29, 0.3, &c), 1);
    assert_eq!(post_discretize(1.31, 0.3, &c), 2);
    assert_eq!(post_discretize(0.0, 0.1, &c), 0);
    assert_eq!(post_discretize(0.0, 0.9, &c), 0);
    assert_eq!(post_discretize(2.7, 0.3, &c), 2);
    assert_eq!(post_discretize(0.9, 0.3, &[0, 2]), 2);
}

#[test]
fn radial_heur_iter_converges_immediately() {
    let net = radial();
    let run = run_slp(&net, &radial_config(), HeuristicVariant::HEUR_ITER, &NullClock).unwrap();
    assert!(run.converged);
    assert_eq!(run.iterations.len(), 2);
    let (a, b) = (&run.iterations[0], &run.iterations[1]);
    for (fa, fb) in a.line_flow.iter().flatten().zip(b.line_flow.iter().flatten()) {
        assert!((fa - fb).abs() < 1e-8);
    }
    assert_eq!(a.susceptances, vec![10.0]);
    assert!((a.gamma[0] - (200.0 / 0.7 / 200.0 - 1.0)).abs() < 1e-9);
    assert!(!run.minlp_feasible);
}

#[test]
fn heur_single_iteration_is_infeasible() {
    let net = radial();
    let run = run_slp(&net, &radial_config(), HeuristicVariant::HEUR, &NullClock).unwrap();
    assert_eq!(run.iterations.len(), 1);
    assert!(!run.converged);
    assert!(!run.minlp_feasible);
    assert!(run
        .violations
        .iter()
        .any(|v| v.kind == ViolationKind::CircuitsNotInCandidateSet && v.entity == "ab"));
}

#[test]
fn seqdisc_postdisc_on_triangle() {
    let net = triangle();
    let cfg = config();
    let run = run_slp(&net, &cfg, HeuristicVariant::HEUR_ITER_SEQDISC_POSTDISC, &NullClock).unwrap();
    assert!(run.minlp_feasible, "{:?}", run.violations);
    assert!(run.iterations.len() <= 10);
    assert_eq!(run.chosen_threshold, Some(0.3));
    let relaxed = run_slp(&net, &cfg, HeuristicVariant::HEUR, &NullClock).unwrap();
    assert_eq!(relaxed.iterations.len(), 1);
}

#[test]
fn fixed_point_on_convergence() {
    let net = triangle();
    let cfg = config();
    for v in [HeuristicVariant::HEUR_ITER_SEQDISC_POSTDISC, HeuristicVariant::HEUR_INT_ITER] {
        let run = run_slp(&net, &cfg, v, &NullClock).unwrap();
        assert!(run.converged, "{v}");
        let last = run.iterations.last().unwrap();
        assert_eq!(consistent_susceptances(&net, &last.update_gamma), last.susceptances, "{v}");
    }
}

#[test]
fn integer_variant_is_feasible() {
    let net = triangle();
    let run = run_slp(&net, &config(), HeuristicVariant::HEUR_INT_ITER, &NullClock).unwrap();
    assert!(run.minlp_feasible, "{:?}", run.violations);
    assert!(run.chosen_threshold.is_none());
}

#[test]
fn high_threshold_can_be_infeasible() {
    let net = radial();
    let cfg = radial_config();
    let gamma = [200.0 / 0.7 / 200.0 - 1.0];
    assert!(matches!(
        finalize_with_threshold(&net, &cfg, &gamma, 0.9),
        Err(HeuristicError::Threshold { z, .. }) if z == 0.9
    ));
    assert!(matches!(
        post_discretize_multi(&net, &cfg, &gamma, &[0.9]),
        Err(HeuristicError::AllThresholdsInfeasible(f)) if f.len() == 1
    ));
    let (sol, z) = post_discretize_multi(&net, &cfg, &gamma, &[0.9, 0.3]).unwrap();
    assert_eq!(z, 0.3);
    assert_eq!(sol.circuits, vec![1.0]);
}

#[test]
fn integral_input_finalizes_to_identity() {
    let net = triangle();
    let cfg = config();
    let sol = finalize_with_threshold(&net, &cfg, &[1.0, 0.0, 2.0], 0.3).unwrap();
    assert_eq!(sol.circuits, vec![1.0, 0.0, 2.0]);
    let b = consistent_susceptances(&net, &sol.circuits);
    let (direct, _) =
        solve_lopf(&net, &cfg, &b, &LineMode::Fixed(vec![1.0, 0.0, 2.0]), &LpOptions::default()).unwrap();
    assert_eq!(sol.objective, direct.objective);
    assert!(verify_minlp_feasibility(&net, &cfg, &sol, 1e-6).0);
}

#[test]
fn multi_threshold_never_worse() {
    let net = triangle();
    let cfg = config();
    let gamma = [0.35, 0.62, 1.15];
    let single = finalize_with_threshold(&net, &cfg, &gamma, 0.3).unwrap();
    let (multi, _) = post_discretize_multi(&net, &cfg, &gamma, &cfg.thresholds).unwrap();
    assert!(multi.objective <= single.objective);
    let (only, z) = post_discretize_multi(&net, &cfg, &gamma, &[0.3]).unwrap();
    assert_eq!((only, z), (single, 0.3));
}

#[test]
fn verify_reports_perturbed_flow() {
    let net = triangle();
    let cfg = config();
    let mut sol = finalize_with_threshold(&net, &cfg, &[1.0, 0.0, 0.0], 0.3).unwrap();
    sol.line_flow[1][1] += 1.0;
    let (ok, violations) = verify_minlp_feasibility(&net, &cfg, &sol, 1e-6);
    assert!(!ok);
    assert!(violations
        .iter()
        .any(|v| v.kind == ViolationKind::FlowEquation && v.entity == "bc" && v.snapshot == Some(1)));
    assert!(violations.iter().any(|v| v.kind == ViolationKind::Kcl));
    sol.circuits[0] = 0.7;
    let (_, violations) = verify_minlp_feasibility(&net, &cfg, &sol, 1e-6);
    let v = violations.iter().find(|v| v.kind == ViolationKind::CircuitsNotInCandidateSet).unwrap();
    assert!(v.to_string().contains("Γ not in candidate set"));
}

#[test]
fn trace_has_one_row_per_iteration() {
    let net = radial();
    let run = run_slp(&net, &radial_config(), HeuristicVariant::HEUR_ITER, &NullClock).unwrap();
    let csv = trace_csv(&run);
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "k,objective,max_delta_gamma,wall_time_s");
    assert_eq!(rows.len(), run.iterations.len() + 1);
    assert!(rows[2].starts_with("2,"));
    let delta: f64 = rows[2].split(',').nth(2).unwrap().parse().unwrap();
    assert!(delta < 1e-9, "{}", rows[2]);
}

#[test]
fn infeasible_iteration_reports_index() {
    let net = single_bus();
    let cfg = ScenarioConfig::default();
    let err = run_slp(&net, &cfg, HeuristicVariant::HEUR_ITER, &NullClock).unwrap_err();
    assert!(matches!(err, HeuristicError::Iteration { k: 1, source: LopfError::Infeasible(_) }));
}
