//! Sequential linear programming heuristics for the expansion MINLP.
//!
//! Each iteration solves the co-optimisation with line investment relaxed to
//! real values (or kept integer) and susceptances frozen at the previous
//! iterate, then re-derives the susceptances from the investment found.
//! Variants differ in whether they iterate at all, round the investment
//! before updating impedances, and how the final investment is discretised.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::lpcore::LpOptions;
use crate::math::{abs, floor};
use crate::milp::MilpOptions;
use crate::netmodel::{AcLine, Network, ScenarioConfig};
use crate::lopf::{
    build_integer_lopf, solve_lopf, solve_lopf_milp, ExpansionSolution, LineMode, LopfError, SolutionStatus,
};
use crate::Clock;

/// MIP gap of the per-iteration MILP in the integer variant.
pub const INTEGER_ITERATION_GAP: f64 = 0.005;

/// Two real-valued investments count as unchanged within this distance.
const GAMMA_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PostDiscretization {
    None,
    SingleThreshold,
    MultiThreshold,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HeuristicVariant {
    pub integer_investment: bool,
    pub iterate: bool,
    pub sequential_discretization: bool,
    pub post_discretization: PostDiscretization,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum HeuristicError {
    #[error("unknown heuristic code {0:?}")]
    UnknownCode(String),
    #[error("sequential discretization requires iteration")]
    SeqdiscWithoutIteration,
    #[error("integer investment cannot be combined with post-discretization")]
    IntegerWithPostdisc,
    #[error("iteration {k}: {source}")]
    Iteration { k: usize, source: LopfError },
    #[error("threshold {z}: {source}")]
    Threshold { z: f64, source: LopfError },
    #[error("all {} thresholds infeasible", .0.len())]
    AllThresholdsInfeasible(Vec<(f64, LopfError)>),
    #[error("threshold list is empty")]
    NoThresholds,
    #[error("threshold {0} outside (0, 1)")]
    BadThreshold(f64),
    #[error("final round: {0}")]
    Final(LopfError),
}

impl HeuristicVariant {
    pub const HEUR: Self = Self::of(false, false, false, PostDiscretization::None);
    pub const HEUR_ITER: Self = Self::of(false, true, false, PostDiscretization::None);
    pub const HEUR_INT_ITER: Self = Self::of(true, true, false, PostDiscretization::None);
    pub const HEUR_ITER_POSTDISC: Self = Self::of(false, true, false, PostDiscretization::SingleThreshold);
    pub const HEUR_ITER_POSTDISC_MULT: Self = Self::of(false, true, false, PostDiscretization::MultiThreshold);
    pub const HEUR_ITER_SEQDISC_POSTDISC: Self = Self::of(false, true, true, PostDiscretization::SingleThreshold);
    pub const HEUR_ITER_SEQDISC_POSTDISC_MULT: Self =
        Self::of(false, true, true, PostDiscretization::MultiThreshold);

    /// The variants compared in the benchmark, in reporting order.
    pub const ALL: [Self; 7] = [
        Self::HEUR,
        Self::HEUR_ITER,
        Self::HEUR_INT_ITER,
        Self::HEUR_ITER_POSTDISC,
        Self::HEUR_ITER_POSTDISC_MULT,
        Self::HEUR_ITER_SEQDISC_POSTDISC,
        Self::HEUR_ITER_SEQDISC_POSTDISC_MULT,
    ];

    const fn of(int: bool, iter: bool, seq: bool, post: PostDiscretization) -> Self {
        HeuristicVariant {
            integer_investment: int,
            iterate: iter,
            sequential_discretization: seq,
            post_discretization: post,
        }
    }

    pub fn new(
        integer_investment: bool,
        iterate: bool,
        sequential_discretization: bool,
        post_discretization: PostDiscretization,
    ) -> Result<Self, HeuristicError> {
        let v = Self::of(integer_investment, iterate, sequential_discretization, post_discretization);
        v.validate()?;
        Ok(v)
    }

    pub fn validate(&self) -> Result<(), HeuristicError> {
        if self.sequential_discretization && !self.iterate {
            return Err(HeuristicError::SeqdiscWithoutIteration);
        }
        if self.integer_investment && self.post_discretization != PostDiscretization::None {
            return Err(HeuristicError::IntegerWithPostdisc);
        }
        Ok(())
    }

    /// Whether the variant's output is meant to be MINLP-feasible.
    pub fn discretizes(&self) -> bool {
        self.integer_investment || self.post_discretization != PostDiscretization::None
    }

    pub fn code(&self) -> String {
        let mut s = String::from("heur");
        if self.integer_investment {
            s.push_str("-int");
        }
        if self.iterate {
            s.push_str("-iter");
        }
        if self.sequential_discretization {
            s.push_str("-seqdisc");
        }
        match self.post_discretization {
            PostDiscretization::None => {}
            PostDiscretization::SingleThreshold => s.push_str("-postdisc"),
            PostDiscretization::MultiThreshold => s.push_str("-postdisc-mult"),
        }
        s
    }
}

impl fmt::Display for HeuristicVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

impl FromStr for HeuristicVariant {
    type Err = HeuristicError;

    fn from_str(code: &str) -> Result<Self, Self::Err> {
        let unknown = || HeuristicError::UnknownCode(code.into());
        let normalized = code.replace('_', "-");
        let mut rest = normalized.strip_prefix("heur").ok_or_else(unknown)?;
        let mut take = |tag: &str| match rest.strip_prefix(tag) {
            Some(r) => {
                rest = r;
                true
            }
            None => false,
        };
        let int = take("-int");
        let iter = take("-iter");
        let seq = take("-seqdisc");
        let post = if take("-postdisc-mult") {
            PostDiscretization::MultiThreshold
        } else if take("-postdisc") {
            PostDiscretization::SingleThreshold
        } else {
            PostDiscretization::None
        };
        if !rest.is_empty() {
            return Err(unknown());
        }
        Self::new(int, iter, seq, post)
    }
}

impl Serialize for HeuristicVariant {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.code())
    }
}

impl<'de> Deserialize<'de> for HeuristicVariant {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub k: usize,
    /// Susceptances used in this iteration.
    pub susceptances: Vec<f64>,
    /// Optimal added circuits per line.
    pub gamma: Vec<f64>,
    /// Investment that drives the next impedance update (rounded under
    /// sequential discretization).
    pub update_gamma: Vec<f64>,
    pub objective: f64,
    pub wall_time: f64,
    /// `[line][snapshot]`
    pub line_flow: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeuristicRun {
    pub variant: HeuristicVariant,
    pub iterations: Vec<IterationRecord>,
    pub converged: bool,
    pub final_solution: ExpansionSolution,
    pub minlp_feasible: bool,
    pub violations: Vec<Violation>,
    pub chosen_threshold: Option<f64>,
}

/// Nearest candidate, exact ties resolved upwards.
pub fn seq_discretize(gamma: f64, candidates: &[u32]) -> u32 {
    let mut best = candidates[0];
    let mut best_d = f64::INFINITY;
    for &c in candidates {
        let d = abs(gamma - f64::from(c));
        if d < best_d || (d == best_d && c > best) {
            best = c;
            best_d = d;
        }
    }
    best
}

/// Rounds up iff the fractional part reaches `z`, then moves onto the
/// candidate set: the smallest candidate not below the rounded value, or the
/// largest candidate when none is.
pub fn post_discretize(gamma: f64, z: f64, candidates: &[u32]) -> u32 {
    let base = floor(gamma.max(0.0));
    let r = gamma - base;
    let rounded = if r < z { base } else { base + 1.0 };
    let mut up: Option<u32> = None;
    let mut max = 0;
    for &c in candidates {
        max = max.max(c);
        if f64::from(c) >= rounded && up.map_or(true, |u| c < u) {
            up = Some(c);
        }
    }
    up.unwrap_or(max)
}

fn consistent_susceptances(network: &Network, gamma: &[f64]) -> Vec<f64> {
    network
        .lines()
        .iter()
        .zip(gamma)
        .map(|(l, &g)| l.circuit_factor(g) * l.init_susceptance)
        .collect()
}

/// Generation-only round with lines fixed at integral `circuits` and
/// matching susceptances.
fn fixed_line_round(
    network: &Network,
    config: &ScenarioConfig,
    circuits: Vec<f64>,
) -> Result<ExpansionSolution, LopfError> {
    let b = consistent_susceptances(network, &circuits);
    let (mut sol, _) = solve_lopf(network, config, &b, &LineMode::Fixed(circuits), &LpOptions::default())?;
    sol.status = SolutionStatus::Feasible;
    Ok(sol)
}

/// Discretises every line at threshold `z` and re-optimises generation and
/// links with the lines fixed.
pub fn finalize_with_threshold(
    network: &Network,
    config: &ScenarioConfig,
    gamma: &[f64],
    z: f64,
) -> Result<ExpansionSolution, HeuristicError> {
    if !(z > 0.0 && z < 1.0) {
        return Err(HeuristicError::BadThreshold(z));
    }
    let circuits = network
        .lines()
        .iter()
        .zip(gamma)
        .map(|(l, &g)| f64::from(post_discretize(g, z, &l.sorted_candidates())))
        .collect();
    fixed_line_round(network, config, circuits).map_err(|source| HeuristicError::Threshold { z, source })
}

/// Best of [`finalize_with_threshold`] over `thresholds`, skipping infeasible
/// ones. Equal objectives keep the lowest threshold.
pub fn post_discretize_multi(
    network: &Network,
    config: &ScenarioConfig,
    gamma: &[f64],
    thresholds: &[f64],
) -> Result<(ExpansionSolution, f64), HeuristicError> {
    if thresholds.is_empty() {
        return Err(HeuristicError::NoThresholds);
    }
    let mut zs = thresholds.to_vec();
    zs.sort_by(f64::total_cmp);
    let mut best: Option<(ExpansionSolution, f64)> = None;
    let mut failures = Vec::new();
    for z in zs {
        match finalize_with_threshold(network, config, gamma, z) {
            Ok(sol) => {
                if best.as_ref().map_or(true, |(b, _)| sol.objective < b.objective) {
                    best = Some((sol, z));
                }
            }
            Err(HeuristicError::Threshold { z, source }) => failures.push((z, source)),
            Err(e) => return Err(e),
        }
    }
    best.ok_or(HeuristicError::AllThresholdsInfeasible(failures))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    CircuitsNotInCandidateSet,
    CapacityMismatch,
    FlowEquation,
    Loading,
    Kcl,
    RenewableShare,
    VolumeCap,
    LinkCapacity,
    GeneratorAvailability,
    GeneratorCapacity,
}

impl ViolationKind {
    pub fn describe(self) -> &'static str {
        match self {
            ViolationKind::CircuitsNotInCandidateSet => "Γ not in candidate set",
            ViolationKind::CapacityMismatch => "capacity does not match circuits",
            ViolationKind::FlowEquation => "flow does not match susceptance and angles",
            ViolationKind::Loading => "flow exceeds loading limit",
            ViolationKind::Kcl => "nodal balance violated",
            ViolationKind::RenewableShare => "renewable share not met",
            ViolationKind::VolumeCap => "expansion volume above cap",
            ViolationKind::LinkCapacity => "link flow or capacity out of bounds",
            ViolationKind::GeneratorAvailability => "dispatch above availability",
            ViolationKind::GeneratorCapacity => "generator capacity out of bounds",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub entity: String,
    pub snapshot: Option<usize>,
    /// Size of the violation in the constraint's own units.
    pub amount: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.entity, self.kind.describe())?;
        if let Some(t) = self.snapshot {
            write!(f, " at snapshot {t}")?;
        }
        write!(f, " (by {})", self.amount)
    }
}

/// Checks integrality, the capacity-consistent flow equation and every
/// operating constraint. Residuals are compared against
/// `tol * max(1, |scale|)`. Returns all violations found.
pub fn verify_minlp_feasibility(
    network: &Network,
    config: &ScenarioConfig,
    sol: &ExpansionSolution,
    tol: f64,
) -> (bool, Vec<Violation>) {
    let mut out = Vec::new();
    let mut check = |kind, entity: &str, snapshot, excess: f64, scale: f64| {
        if excess > tol * abs(scale).max(1.0) || excess.is_nan() {
            out.push(Violation { kind, entity: entity.into(), snapshot, amount: excess });
        }
    };
    let nt = network.snapshot_count();
    let llf = config.line_loading_factor;

    let mut volume = 0.0;
    for (l, line) in network.lines().iter().enumerate() {
        let gamma = sol.circuits[l];
        let distance =
            line.sorted_candidates().iter().map(|&c| abs(gamma - f64::from(c))).fold(f64::INFINITY, f64::min);
        if distance != 0.0 {
            // integrality is exact, so bypass the tolerance
            check(ViolationKind::CircuitsNotInCandidateSet, &line.id, None, f64::INFINITY, 1.0);
        }
        let g = gamma.max(0.0);
        let cap = line.circuit_factor(g) * line.init_capacity;
        check(ViolationKind::CapacityMismatch, &line.id, None, abs(sol.line_capacity[l] - cap), cap);
        volume += (sol.line_capacity[l] - line.init_capacity) * line.length;
        let b = line.circuit_factor(g) * line.init_susceptance;
        let (i, j) = network.line_ends(l);
        for t in 0..nt {
            let f = sol.line_flow[l][t];
            let implied = b * (sol.angle[i][t] - sol.angle[j][t]);
            check(ViolationKind::FlowEquation, &line.id, Some(t), abs(f - implied), f);
            check(ViolationKind::Loading, &line.id, Some(t), abs(f) - llf * sol.line_capacity[l], f);
        }
    }
    let v0 = network.original_volume();
    check(ViolationKind::VolumeCap, "volume", None, volume - config.volume_cap * v0, v0);

    for (k, link) in network.links().iter().enumerate() {
        let h = sol.link_capacity[k];
        check(ViolationKind::LinkCapacity, &link.id, None, link.capacity - h, h);
        if !link.stub {
            check(ViolationKind::LinkCapacity, &link.id, None, h - link.capacity_max, h);
        }
        for t in 0..nt {
            check(ViolationKind::LinkCapacity, &link.id, Some(t), abs(sol.link_flow[k][t]) - h, h);
        }
    }

    let mut renewable = 0.0;
    for (k, gen) in network.generators().iter().enumerate() {
        let cap = sol.generator_capacity[k];
        if gen.extendable {
            check(ViolationKind::GeneratorCapacity, &gen.id, None, -cap, 1.0);
            if let Some(max) = gen.capacity_max {
                check(ViolationKind::GeneratorCapacity, &gen.id, None, cap - max, max);
            }
        } else {
            check(ViolationKind::GeneratorCapacity, &gen.id, None, abs(cap - gen.capacity), gen.capacity);
        }
        for t in 0..nt {
            let g = sol.dispatch[k][t];
            check(ViolationKind::GeneratorAvailability, &gen.id, Some(t), g - gen.availability[t] * cap, cap);
            check(ViolationKind::GeneratorAvailability, &gen.id, Some(t), -g, 1.0);
            if gen.renewable {
                renewable += network.weight(t) * g;
            }
        }
    }
    let demand = network.demand_energy();
    check(ViolationKind::RenewableShare, "share", None, config.renewable_share * demand - renewable, demand);

    for (i, bus) in network.buses().iter().enumerate() {
        for t in 0..nt {
            let mut net = -bus.load[t];
            for (k, _) in network.generators().iter().enumerate().filter(|&(k, _)| network.generator_bus(k) == i) {
                net += sol.dispatch[k][t];
            }
            for l in 0..network.lines().len() {
                let (a, b) = network.line_ends(l);
                if a == i {
                    net -= sol.line_flow[l][t];
                }
                if b == i {
                    net += sol.line_flow[l][t];
                }
            }
            for k in 0..network.links().len() {
                let (a, b) = network.link_ends(k);
                if a == i {
                    net -= sol.link_flow[k][t];
                }
                if b == i {
                    net += sol.link_flow[k][t];
                }
            }
            check(ViolationKind::Kcl, &bus.id, Some(t), abs(net), bus.load[t]);
        }
    }
    (out.is_empty(), out)
}

fn gamma_unchanged(a: &[f64], b: &[f64], exact: bool) -> bool {
    a.iter().zip(b).all(|(&x, &y)| if exact { x == y } else { abs(x - y) <= GAMMA_TOL })
}

fn max_delta(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(&x, &y)| abs(x - y)).fold(0.0, f64::max)
}

/// Outcome of the SLP loop before any post-discretization.
#[derive(Clone, Debug, PartialEq)]
pub struct SlpIterations {
    pub iterations: Vec<IterationRecord>,
    pub converged: bool,
    pub last_solution: ExpansionSolution,
}

/// Runs the linearized iterations only.
pub fn iterate_slp(
    network: &Network,
    config: &ScenarioConfig,
    variant: HeuristicVariant,
    clock: &dyn Clock,
) -> Result<SlpIterations, HeuristicError> {
    variant.validate()?;
    config.validate().map_err(|e| HeuristicError::Iteration { k: 1, source: e.into() })?;
    let start = clock.now();
    let lines = network.lines();
    let candidates: Vec<Vec<u32>> = lines.iter().map(AcLine::sorted_candidates).collect();
    let max_iter = if variant.iterate { config.max_iterations } else { 1 };
    let exact = variant.sequential_discretization || variant.integer_investment;
    let milp_opts = MilpOptions {
        mip_gap: INTEGER_ITERATION_GAP,
        walltime: config.milp_walltime,
        ..MilpOptions::default()
    };

    let mut b: Vec<f64> = lines.iter().map(|l| l.init_susceptance).collect();
    let mut records: Vec<IterationRecord> = Vec::new();
    let mut last: Option<ExpansionSolution> = None;
    let mut converged = false;
    for k in 1..=max_iter {
        let solved = if variant.integer_investment {
            build_integer_lopf(network, config, &b).and_then(|(milp, map)| {
                solve_lopf_milp(network, config, &milp, &map, &milp_opts, clock).map(|(s, _)| s)
            })
        } else {
            solve_lopf(network, config, &b, &LineMode::ExtendableContinuous, &LpOptions::default()).map(|(s, _)| s)
        };
        let sol = solved.map_err(|source| HeuristicError::Iteration { k, source })?;
        let gamma = sol.circuits.clone();
        let update_gamma: Vec<f64> = if variant.sequential_discretization {
            gamma.iter().zip(&candidates).map(|(&g, c)| f64::from(seq_discretize(g, c))).collect()
        } else {
            gamma.clone()
        };
        let record = IterationRecord {
            k,
            susceptances: b.clone(),
            gamma,
            update_gamma,
            objective: sol.objective,
            wall_time: clock.now() - start,
            line_flow: sol.line_flow.clone(),
        };
        if let Some(prev) = records.last() {
            converged = abs(record.objective - prev.objective) <= config.convergence_tol
                && gamma_unchanged(&record.update_gamma, &prev.update_gamma, exact);
        }
        b = consistent_susceptances(network, &record.update_gamma);
        records.push(record);
        last = Some(sol);
        if converged {
            break;
        }
    }
    Ok(SlpIterations {
        iterations: records,
        converged,
        last_solution: last.expect("at least one iteration"),
    })
}

/// Post-discretizes an iteration outcome and checks the result.
pub fn finalize_slp(
    network: &Network,
    config: &ScenarioConfig,
    variant: HeuristicVariant,
    iters: SlpIterations,
) -> Result<HeuristicRun, HeuristicError> {
    let SlpIterations { iterations: records, converged, last_solution: last_sol } = iters;
    let last_gamma = &records.last().expect("at least one iteration").gamma;

    let (final_solution, chosen_threshold) = match variant.post_discretization {
        PostDiscretization::SingleThreshold => {
            let z = config.default_threshold;
            (finalize_with_threshold(network, config, last_gamma, z)?, Some(z))
        }
        PostDiscretization::MultiThreshold => {
            let (s, z) = post_discretize_multi(network, config, last_gamma, &config.thresholds)?;
            (s, Some(z))
        }
        PostDiscretization::None if variant.integer_investment => {
            let circuits = last_gamma.clone();
            (fixed_line_round(network, config, circuits).map_err(HeuristicError::Final)?, None)
        }
        PostDiscretization::None => (last_sol, None),
    };
    let (minlp_feasible, violations) = verify_minlp_feasibility(network, config, &final_solution, 1e-6);
    Ok(HeuristicRun {
        variant,
        iterations: records,
        converged,
        final_solution,
        minlp_feasible,
        violations,
        chosen_threshold,
    })
}

/// Runs one heuristic variant end to end.
pub fn run_slp(
    network: &Network,
    config: &ScenarioConfig,
    variant: HeuristicVariant,
    clock: &dyn Clock,
) -> Result<HeuristicRun, HeuristicError> {
    let iters = iterate_slp(network, config, variant, clock)?;
    finalize_slp(network, config, variant, iters)
}

/// Iteration trace as CSV: `k,objective,max_delta_gamma,wall_time_s`.
/// The first row's delta is measured against zero investment.
pub fn trace_csv(run: &HeuristicRun) -> String {
    let mut s = String::from("k,objective,max_delta_gamma,wall_time_s\n");
    let mut prev: Option<&[f64]> = None;
    for r in &run.iterations {
        let zero = alloc::vec![0.0; r.gamma.len()];
        let d = max_delta(&r.gamma, prev.unwrap_or(&zero));
        s.push_str(&format!("{},{},{},{}\n", r.k, r.objective, d, r.wall_time));
        prev = Some(&r.gamma);
    }
    s
}

#[cfg(test)]
mod tests;
