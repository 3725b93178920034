//! Benchmark harness: brute-force oracle, synthetic networks and the method
//! comparison that produces an [`ExperimentReport`].

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::heuristics::{finalize_slp, iterate_slp, trace_csv, verify_minlp_feasibility, HeuristicError, HeuristicVariant};
use crate::lopf::{
    build_bigm_milp, compute_big_m, solve_lopf, solve_lopf_milp, ExpansionSolution, LineMode, LopfError,
};
use crate::lpcore::{solve_lp, LpOptions, LpStatus};
use crate::milp::{GapLogEntry, MilpOptions};
use crate::math::{round, sqrt};
use crate::netmodel::{
    expansion_volume_ratio, AcLine, Bus, Generator, HvdcLink, Network, ScenarioConfig, Snapshot, Technology,
    HOURS_PER_YEAR,
};
use crate::Clock;

/// Largest number of candidate combinations [`brute_force_optimum`] will try.
pub const ENUMERATION_CAP: u64 = 4096;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum BenchError {
    #[error("{count} candidate combinations exceed the enumeration cap of {cap}")]
    EnumerationCap { count: u64, cap: u64 },
    #[error("all {0} candidate combinations are infeasible")]
    AllInfeasible(u64),
    #[error(transparent)]
    Lopf(#[from] LopfError),
    #[error(transparent)]
    Heuristic(#[from] HeuristicError),
    #[error("unknown method {0:?}")]
    UnknownMethod(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct BruteForce {
    pub solution: ExpansionSolution,
    pub combinations: u64,
    pub feasible: u64,
}

/// Enumerates every candidate combination of the extendable lines, solving
/// the fixed-line LP with consistent capacities and susceptances for each.
/// Ties keep the combination enumerated first.
pub fn brute_force_optimum(network: &Network, config: &ScenarioConfig, cap: u64) -> Result<BruteForce, BenchError> {
    let lines = network.lines();
    let cands: Vec<Vec<u32>> = lines.iter().map(AcLine::sorted_candidates).collect();
    let count = cands.iter().try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64)).unwrap_or(u64::MAX);
    if count > cap {
        return Err(BenchError::EnumerationCap { count, cap });
    }
    let mut idx = vec![0usize; lines.len()];
    let mut best: Option<ExpansionSolution> = None;
    let mut feasible = 0;
    let opts = LpOptions::default();
    for _ in 0..count {
        let gamma: Vec<f64> = idx.iter().zip(&cands).map(|(&i, c)| f64::from(c[i])).collect();
        let b: Vec<f64> = lines.iter().zip(&gamma).map(|(l, &g)| l.circuit_factor(g) * l.init_susceptance).collect();
        match solve_lopf(network, config, &b, &LineMode::Fixed(gamma), &opts) {
            Ok((sol, _)) => {
                feasible += 1;
                if best.as_ref().map_or(true, |b| sol.objective < b.objective) {
                    best = Some(sol);
                }
            }
            Err(LopfError::Infeasible(_)) => {}
            Err(e) => return Err(e.into()),
        }
        for k in 0..idx.len() {
            idx[k] += 1;
            if idx[k] < cands[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
    match best {
        Some(solution) => Ok(BruteForce { solution, combinations: count, feasible }),
        None => Err(BenchError::AllInfeasible(count)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Topology {
    /// Minimum spanning tree plus the shortest remaining edges.
    Meshed,
    Tree,
}

/// Parameters of a synthetic network.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyntheticSpec {
    pub seed: u64,
    pub buses: usize,
    pub snapshots: usize,
    /// In `[0, 1]`. Higher values put good wind sites and load at opposite
    /// ends of the map.
    #[serde(default = "default_skew")]
    pub wind_skew: f64,
    #[serde(default = "default_topology")]
    pub topology: Topology,
    /// Keep at most this many lines extendable (chosen at random).
    #[serde(default)]
    pub max_extendable: Option<usize>,
}

fn default_skew() -> f64 {
    0.8
}

fn default_topology() -> Topology {
    Topology::Meshed
}

impl SyntheticSpec {
    pub fn new(seed: u64, buses: usize, snapshots: usize) -> Self {
        SyntheticSpec {
            seed,
            buses,
            snapshots,
            wind_skew: default_skew(),
            topology: Topology::Meshed,
            max_extendable: None,
        }
    }
}

/// Ranges the synthetic generator draws from.
pub mod ranges {
    /// Map scale, km per unit distance, plus a minimum line length.
    pub const KM_PER_UNIT: f64 = 400.0;
    pub const MIN_LENGTH_KM: f64 = 50.0;
    /// Peak load per bus, MW.
    pub const PEAK_LOAD: (f64, f64) = (200.0, 800.0);
    /// Per-snapshot load factor.
    pub const LOAD_FACTOR: (f64, f64) = (0.6, 1.0);
    /// Existing parallel circuits per line.
    pub const INIT_CIRCUITS: (u32, u32) = (2, 4);
    /// Rating of one circuit, MW.
    pub const CIRCUIT_RATING: (f64, f64) = (120.0, 250.0);
    /// Susceptance of one circuit times length, p.u. km.
    pub const SUSCEPTANCE_KM: f64 = 5000.0;
    /// Line annuity, EUR per MW per km per year.
    pub const LINE_COST_PER_KM: (f64, f64) = (60.0, 90.0);
    /// HVDC annuity, EUR per MW per km per year.
    pub const LINK_COST_PER_KM: f64 = 120.0;
    /// Annuities, EUR per MW per year.
    pub const WIND_COST: (f64, f64) = (95_000.0, 120_000.0);
    pub const SOLAR_COST: (f64, f64) = (45_000.0, 60_000.0);
    pub const GAS_COST: (f64, f64) = (40_000.0, 50_000.0);
    /// EUR per MWh.
    pub const GAS_MARGINAL: (f64, f64) = (60.0, 90.0);
    /// Availability floor keeps every bus able to meet the renewable share
    /// on its own.
    pub const WIND_FLOOR: f64 = 0.05;
    pub const SOLAR_PEAK: (f64, f64) = (0.4, 0.8);
}

fn draw(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    rng.gen_range(lo..hi)
}

fn gen(id: String, bus: &str, tech: Technology, capital: f64, marginal: f64, renewable: bool, avail: Vec<f64>) -> Generator {
    Generator {
        id,
        bus: bus.to_owned(),
        tech,
        capital_cost: capital,
        marginal_cost: marginal,
        capacity_max: None,
        capacity: 0.0,
        extendable: true,
        renewable,
        availability: avail,
    }
}

/// Deterministic random network for `spec`. Every bus carries wind, solar
/// and gas, so the network is feasible without any line expansion.
pub fn generate_synthetic_network(spec: &SyntheticSpec) -> Network {
    use ranges::*;
    let n = spec.buses.max(1);
    let nt = spec.snapshots.max(1);
    let skew = spec.wind_skew.clamp(0.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let pos: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen::<f64>(), rng.gen::<f64>())).collect();
    let ids: Vec<String> = (0..n).map(|i| format!("b{i}")).collect();
    let load_profile: Vec<f64> = (0..nt).map(|_| draw(&mut rng, LOAD_FACTOR)).collect();
    let wind_profile: Vec<f64> = (0..nt).map(|_| rng.gen::<f64>()).collect();
    let solar_profile: Vec<f64> = (0..nt).map(|_| if rng.gen_bool(0.5) { draw(&mut rng, SOLAR_PEAK) } else { 0.0 }).collect();

    let mut buses = Vec::with_capacity(n);
    let mut generators = Vec::with_capacity(3 * n);
    for i in 0..n {
        let north = pos[i].1;
        // load concentrates in the south, wind in the north
        let peak = draw(&mut rng, PEAK_LOAD) * (1.0 - 0.7 * skew * north);
        let load = load_profile.iter().map(|f| round(peak * f * 10.0) / 10.0).collect();
        buses.push(Bus { id: ids[i].clone(), load });

        let site = skew * north + (1.0 - skew) * 0.5;
        let wind = wind_profile
            .iter()
            .map(|&w| {
                let a = WIND_FLOOR + (0.9 - WIND_FLOOR) * site * (0.4 + 0.6 * w) * draw(&mut rng, (0.8, 1.0));
                round(a * 1000.0) / 1000.0
            })
            .collect();
        let solar = solar_profile.iter().map(|&s| round(s * draw(&mut rng, (0.8, 1.0)) * 1000.0) / 1000.0).collect();
        generators.push(gen(format!("{}-wind", ids[i]), &ids[i], Technology::WindOnshore, draw(&mut rng, WIND_COST), 0.0, true, wind));
        generators.push(gen(format!("{}-solar", ids[i]), &ids[i], Technology::Solar, draw(&mut rng, SOLAR_COST), 0.0, true, solar));
        let marginal = draw(&mut rng, GAS_MARGINAL);
        generators.push(gen(format!("{}-ocgt", ids[i]), &ids[i], Technology::Ocgt, draw(&mut rng, GAS_COST), marginal, false, vec![1.0; nt]));
    }

    let dist = |a: usize, b: usize| {
        let (dx, dy) = (pos[a].0 - pos[b].0, pos[a].1 - pos[b].1);
        sqrt(dx * dx + dy * dy)
    };
    let mut edges = spanning_tree(n, &dist);
    if spec.topology == Topology::Meshed && n >= 3 {
        let extra = (n + 1) / 2 - 1;
        let mut rest: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|e| !edges.contains(e))
            .collect();
        rest.sort_by(|x, y| dist(x.0, x.1).total_cmp(&dist(y.0, y.1)));
        edges.extend(rest.into_iter().take(extra));
    }

    let mut lines = Vec::with_capacity(edges.len());
    for &(a, b) in &edges {
        let length = round((dist(a, b) * KM_PER_UNIT).max(MIN_LENGTH_KM));
        let circuits: u32 = rng.gen_range(INIT_CIRCUITS.0..=INIT_CIRCUITS.1);
        let rating = round(draw(&mut rng, CIRCUIT_RATING));
        lines.push(AcLine {
            id: format!("{}-{}", ids[a], ids[b]),
            from: ids[a].clone(),
            to: ids[b].clone(),
            length,
            init_circuits: circuits,
            init_capacity: rating * f64::from(circuits),
            init_susceptance: round(SUSCEPTANCE_KM / length * f64::from(circuits) * 1000.0) / 1000.0,
            capital_cost: round(draw(&mut rng, LINE_COST_PER_KM) * length),
            extendable: true,
            candidates: vec![0, 1, 2],
        });
    }
    if let Some(k) = spec.max_extendable {
        if k < lines.len() {
            let mut order: Vec<usize> = (0..lines.len()).collect();
            order.shuffle(&mut rng);
            for &l in &order[k..] {
                lines[l].extendable = false;
            }
        }
    }

    let mut links = Vec::new();
    if n >= 4 {
        let north = (0..n).max_by(|&a, &b| pos[a].1.total_cmp(&pos[b].1)).unwrap_or(0);
        let south = (0..n).min_by(|&a, &b| pos[a].1.total_cmp(&pos[b].1)).unwrap_or(0);
        if north != south {
            let length = round((dist(north, south) * KM_PER_UNIT).max(MIN_LENGTH_KM));
            links.push(HvdcLink {
                id: format!("{}-{}-dc", ids[north], ids[south]),
                from: ids[north].clone(),
                to: ids[south].clone(),
                capital_cost: LINK_COST_PER_KM * length,
                capacity_max: 8000.0,
                stub: false,
                capacity: 0.0,
            });
        }
    }

    let snapshots = (0..nt).map(|t| Snapshot { id: t as i64, weight: HOURS_PER_YEAR / nt as f64 }).collect();
    Network::new(
        format!("synthetic-s{}-n{}-t{}", spec.seed, n, nt),
        buses,
        snapshots,
        generators,
        lines,
        links,
    )
    .expect("synthetic networks are valid by construction")
}

/// Prim's algorithm on the complete graph; edges as `(low, high)` pairs.
fn spanning_tree(n: usize, dist: &dyn Fn(usize, usize) -> f64) -> Vec<(usize, usize)> {
    let mut in_tree = vec![false; n];
    let mut best = vec![(f64::INFINITY, 0usize); n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    in_tree[0] = true;
    for v in 1..n {
        best[v] = (dist(0, v), 0);
    }
    for _ in 1..n {
        let v = (0..n)
            .filter(|&v| !in_tree[v])
            .min_by(|&a, &b| best[a].0.total_cmp(&best[b].0))
            .expect("vertex left");
        in_tree[v] = true;
        let u = best[v].1;
        edges.push((u.min(v), u.max(v)));
        for w in 0..n {
            if !in_tree[w] {
                let d = dist(v, w);
                if d < best[w].0 {
                    best[w] = (d, v);
                }
            }
        }
    }
    edges
}

/// A method compared by the harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    BruteForce,
    BigM,
    Heuristic(HeuristicVariant),
}

impl Method {
    pub fn code(&self) -> String {
        match self {
            Method::BruteForce => "brute-force".into(),
            Method::BigM => "bigm".into(),
            Method::Heuristic(v) => v.code(),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

impl FromStr for Method {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "brute-force" | "brute_force" => Ok(Method::BruteForce),
            "bigm" | "big-m" => Ok(Method::BigM),
            _ => s.parse().map(Method::Heuristic).map_err(|_| BenchError::UnknownMethod(s.into())),
        }
    }
}

impl Serialize for Method {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.code())
    }
}

impl<'de> Deserialize<'de> for Method {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReferenceKind {
    BruteForce,
    MilpLowerBound,
    ContinuousRelaxation,
}

impl ReferenceKind {
    pub fn label(self) -> &'static str {
        match self {
            ReferenceKind::BruteForce => "brute-force optimum",
            ReferenceKind::MilpLowerBound => "MILP lower bound",
            ReferenceKind::ContinuousRelaxation => "continuous relaxation (not a feasible-solution bound gap)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReferenceBound {
    pub kind: ReferenceKind,
    pub label: String,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MethodRecord {
    pub method: Method,
    /// `None` on success, otherwise the cause of failure.
    pub error: Option<String>,
    pub objective: Option<f64>,
    pub lower_bound: Option<f64>,
    pub deviation: Option<f64>,
    pub wall_time: f64,
    /// SLP iterations, B&B nodes for `bigm`, LP solves for `brute-force`.
    pub iterations: Option<usize>,
    pub volume_ratio: Option<f64>,
    pub minlp_feasible: bool,
    pub converged: Option<bool>,
    pub chosen_threshold: Option<f64>,
    pub circuits: Vec<f64>,
    pub violations: Vec<String>,
    pub solution: Option<ExpansionSolution>,
    /// Iteration trace (heuristics) or bound progression (`bigm`) as CSV.
    pub trace: Option<String>,
}

impl MethodRecord {
    fn failed(method: Method, error: String, wall_time: f64) -> Self {
        MethodRecord {
            method,
            error: Some(error),
            objective: None,
            lower_bound: None,
            deviation: None,
            wall_time,
            iterations: None,
            volume_ratio: None,
            minlp_feasible: false,
            converged: None,
            chosen_threshold: None,
            circuits: Vec::new(),
            violations: Vec::new(),
            solution: None,
            trace: None,
        }
    }

    pub fn completed(&self) -> bool {
        self.error.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub network: String,
    /// Root LP relaxation of the big-M MILP; always computed.
    pub continuous_relaxation: Option<f64>,
    pub reference: Option<ReferenceBound>,
    pub records: Vec<MethodRecord>,
    /// `wall_time(bigm) / wall_time(method)` per heuristic, when `bigm` ran.
    pub speedups: Vec<(Method, f64)>,
}

impl ExperimentReport {
    pub fn record(&self, method: Method) -> Option<&MethodRecord> {
        self.records.iter().find(|r| r.method == method)
    }

    pub fn all_completed(&self) -> bool {
        self.records.iter().all(MethodRecord::completed)
    }
}

pub const REPORT_CSV_HEADER: &str = "method,objective,lower_bound,deviation,wall_time_s,iterations,volume_ratio,feasible";

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// One row per method. Undefined values are left empty.
pub fn report_csv(report: &ExperimentReport) -> String {
    let mut s = String::from(REPORT_CSV_HEADER);
    s.push('\n');
    for r in &report.records {
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.method,
            opt(r.objective),
            opt(r.lower_bound),
            opt(r.deviation),
            r.wall_time,
            opt(r.iterations),
            opt(r.volume_ratio),
            r.minlp_feasible,
        ));
    }
    s
}

/// Bound progression as CSV.
pub fn gap_log_csv(log: &[GapLogEntry]) -> String {
    let mut s = String::from("wall_time_s,nodes,lower_bound,upper_bound,gap\n");
    for e in log {
        s.push_str(&format!("{},{},{},{},{}\n", e.wall_time, e.nodes, e.lower_bound, e.upper_bound, e.gap));
    }
    s
}

fn finish(network: &Network, config: &ScenarioConfig, mut rec: MethodRecord, sol: ExpansionSolution) -> MethodRecord {
    let (ok, violations) = verify_minlp_feasibility(network, config, &sol, 1e-6);
    rec.objective = Some(sol.objective);
    rec.volume_ratio = expansion_volume_ratio(network, &sol.circuits).ok();
    rec.minlp_feasible = ok;
    rec.violations = violations.iter().map(ToString::to_string).collect();
    rec.circuits = sol.circuits.clone();
    rec.solution = Some(sol);
    rec
}

fn run_method(network: &Network, config: &ScenarioConfig, method: Method, clock: &dyn Clock) -> MethodRecord {
    let start = clock.now();
    let mut rec = MethodRecord::failed(method, String::new(), 0.0);
    rec.error = None;
    match method {
        Method::BruteForce => match brute_force_optimum(network, config, ENUMERATION_CAP) {
            Ok(bf) => {
                rec.wall_time = clock.now() - start;
                rec.lower_bound = Some(bf.solution.objective);
                rec.iterations = Some(bf.combinations as usize);
                finish(network, config, rec, bf.solution)
            }
            Err(e) => MethodRecord::failed(method, e.to_string(), clock.now() - start),
        },
        Method::BigM => {
            let opts = MilpOptions { mip_gap: config.mip_gap, walltime: config.milp_walltime, ..MilpOptions::default() };
            let result = build_bigm_milp(network, config, &compute_big_m(network, config))
                .and_then(|(milp, map)| solve_lopf_milp(network, config, &milp, &map, &opts, clock));
            match result {
                Ok((sol, raw)) => {
                    rec.wall_time = clock.now() - start;
                    rec.lower_bound = Some(raw.lower_bound);
                    rec.iterations = Some(raw.nodes_explored);
                    rec.trace = Some(gap_log_csv(&raw.log));
                    finish(network, config, rec, sol)
                }
                Err(e) => MethodRecord::failed(method, e.to_string(), clock.now() - start),
            }
        }
        Method::Heuristic(v) => {
            let iters = match iterate_slp(network, config, v, clock) {
                Ok(it) => it,
                Err(e) => return MethodRecord::failed(method, e.to_string(), clock.now() - start),
            };
            let (k, converged) = (iters.iterations.len(), iters.converged);
            match finalize_slp(network, config, v, iters) {
                Ok(run) => {
                    rec.wall_time = clock.now() - start;
                    rec.iterations = Some(k);
                    rec.converged = Some(converged);
                    rec.chosen_threshold = run.chosen_threshold;
                    rec.trace = Some(trace_csv(&run));
                    finish(network, config, rec, run.final_solution)
                }
                // keep the iteration outcome even when discretization fails
                Err(e) => {
                    let mut failed = MethodRecord::failed(method, e.to_string(), clock.now() - start);
                    failed.iterations = Some(k);
                    failed.converged = Some(converged);
                    failed
                }
            }
        }
    }
}

/// Root LP relaxation of the big-M MILP, the weakest of the reference bounds.
pub fn continuous_relaxation(network: &Network, config: &ScenarioConfig) -> Result<f64, LopfError> {
    let (milp, _) = build_bigm_milp(network, config, &compute_big_m(network, config))?;
    let sol = solve_lp(milp.lp(), &LpOptions::default())?;
    match sol.status {
        LpStatus::Optimal => Ok(sol.objective),
        LpStatus::Infeasible => Err(LopfError::Infeasible(sol.certificate)),
        LpStatus::Unbounded => Err(LopfError::Unbounded),
        LpStatus::NumericFailure => Err(LopfError::NumericFailure(sol.message.unwrap_or("lp"))),
    }
}

/// Runs every method in order. Failures are recorded and do not stop the
/// remaining methods.
pub fn run_experiment(
    network: &Network,
    config: &ScenarioConfig,
    methods: &[Method],
    clock: &dyn Clock,
) -> ExperimentReport {
    let mut records: Vec<MethodRecord> = methods.iter().map(|&m| run_method(network, config, m, clock)).collect();
    let relaxation = continuous_relaxation(network, config).ok();

    let done = |recs: &[MethodRecord], m: Method| -> Option<MethodRecord> {
        recs.iter().find(|r| r.method == m && r.completed()).cloned()
    };
    let reference = if let Some(v) = done(&records, Method::BruteForce).and_then(|r| r.objective) {
        Some((ReferenceKind::BruteForce, v))
    } else if let Some(v) = done(&records, Method::BigM).and_then(|r| r.lower_bound) {
        Some((ReferenceKind::MilpLowerBound, v))
    } else {
        relaxation.map(|v| (ReferenceKind::ContinuousRelaxation, v))
    }
    .map(|(kind, value)| ReferenceBound { kind, label: kind.label().into(), value });

    if let Some(r) = &reference {
        for rec in &mut records {
            rec.deviation = rec.objective.map(|o| (o - r.value) / r.value.abs().max(1e-10));
        }
    }
    let speedups = match done(&records, Method::BigM).map(|r| r.wall_time) {
        Some(t_milp) => records
            .iter()
            .filter(|r| matches!(r.method, Method::Heuristic(_)) && r.completed())
            .map(|r| (r.method, if r.wall_time > 0.0 { t_milp / r.wall_time } else { f64::NAN }))
            .collect(),
        None => Vec::new(),
    };
    ExperimentReport {
        network: network.name().into(),
        continuous_relaxation: relaxation,
        reference,
        records,
        speedups,
    }
}

/// Per-method aggregates over a suite of reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MethodSummary {
    pub method: Method,
    pub runs: usize,
    pub completed: usize,
    pub feasible: usize,
    pub mean_iterations: f64,
    pub mean_wall_time: f64,
    /// Sorted deviations of the completed runs.
    pub deviations: Vec<f64>,
    pub mean_speedup: Option<f64>,
}

pub fn summarize_suite(reports: &[ExperimentReport]) -> Vec<MethodSummary> {
    let mut methods: Vec<Method> = Vec::new();
    for r in reports.iter().flat_map(|r| &r.records) {
        if !methods.contains(&r.method) {
            methods.push(r.method);
        }
    }
    methods
        .into_iter()
        .map(|m| {
            let recs: Vec<&MethodRecord> = reports.iter().filter_map(|r| r.record(m)).collect();
            let done: Vec<&&MethodRecord> = recs.iter().filter(|r| r.completed()).collect();
            let mean = |xs: &mut dyn Iterator<Item = f64>| {
                let (s, c) = xs.fold((0.0, 0usize), |(s, c), x| (s + x, c + 1));
                if c == 0 { f64::NAN } else { s / c as f64 }
            };
            let mut deviations: Vec<f64> = done.iter().filter_map(|r| r.deviation).collect();
            deviations.sort_by(f64::total_cmp);
            let speeds: Vec<f64> = reports
                .iter()
                .flat_map(|r| r.speedups.iter().filter(|(mm, _)| *mm == m).map(|&(_, s)| s))
                .collect();
            MethodSummary {
                method: m,
                runs: recs.len(),
                completed: done.len(),
                feasible: done.iter().filter(|r| r.minlp_feasible).count(),
                mean_iterations: mean(&mut done.iter().filter_map(|r| r.iterations).map(|i| i as f64)),
                mean_wall_time: mean(&mut done.iter().map(|r| r.wall_time)),
                deviations,
                mean_speedup: if speeds.is_empty() { None } else { Some(mean(&mut speeds.iter().copied())) },
            }
        })
        .collect()
}
