//! Translation of a [`Network`] and [`ScenarioConfig`] into linear and
//! mixed-binary programs.
//!
//! Every build shares the same skeleton: generator capacities and dispatch,
//! per-snapshot nodal balance (KCL), the renewable share row, the AC volume
//! cap and HVDC links as controllable transport. Lines differ by treatment:
//!
//! * fixed circuits: constant capacity, plain KVL with the given susceptance;
//! * continuous: capacity variable tied to a real circuit count;
//! * integer: one binary per candidate, plain KVL with a fixed susceptance;
//! * disjunctive: one binary per candidate and a big-M pair of inequalities
//!   per candidate replacing KVL, which makes flows follow the susceptance of
//!   the chosen candidate.

mod bigm;
mod extract;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

pub use bigm::{compute_big_m, BigMEntry, BigMValues};
pub use extract::{extract_solution, ExpansionSolution, SolutionStatus};

use crate::lpcore::{
    solve_lp, InfeasibilityCertificate, LinearProgram, LpError, LpOptions, LpSolution, LpStatus, Row, Sense, Var,
};
use crate::milp::{solve_milp, MilpError, MilpOptions, MilpProblem, MilpSolution, MilpStatus};
use crate::Clock;
use crate::netmodel::{Network, NetworkError, ScenarioConfig};

const INF: f64 = f64::INFINITY;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum LopfError {
    #[error("bus {bus} has load but no generator, line or link")]
    StructurallyInfeasible { bus: String },
    #[error("line {line}: susceptance must be positive, got {value}")]
    InvalidSusceptance { line: String, value: f64 },
    #[error("line {line}: invalid circuit count {value}")]
    InvalidCircuits { line: String, value: f64 },
    #[error("{what}: expected {expected} values, got {got}")]
    LengthMismatch { what: &'static str, expected: usize, got: usize },
    #[error(transparent)]
    Config(#[from] NetworkError),
    #[error("objective mismatch: solver {solver}, recomputed {recomputed}")]
    ObjectiveMismatch { solver: f64, recomputed: f64 },
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Milp(#[from] MilpError),
    #[error("problem is infeasible")]
    Infeasible(Option<InfeasibilityCertificate>),
    #[error("problem is unbounded")]
    Unbounded,
    #[error("numeric failure: {0}")]
    NumericFailure(&'static str),
    #[error("no feasible solution found (status {0})")]
    NoIncumbent(MilpStatus),
}

/// How extendable lines enter a continuous build.
#[derive(Clone, Debug, PartialEq)]
pub enum LineMode {
    /// Real-valued added circuits in `[0, max candidate]`.
    ExtendableContinuous,
    /// One binary per candidate; flows still use the supplied susceptances.
    ExtendableInteger,
    /// Added circuits fixed per line (in line order; non-extendable lines
    /// must be 0).
    Fixed(Vec<f64>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormulationKind {
    Continuous,
    Integer,
    Fixed,
    BigM,
}

/// One candidate's pair of disjunctive KVL inequalities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DisjunctivePair {
    pub candidate: u32,
    /// `k_c b (theta_i - theta_j) - f - M_up * x_c >= -M_up`
    pub lower: Row,
    /// `k_c b (theta_i - theta_j) - f + M_lo * x_c <= M_lo`
    pub upper: Row,
}

#[derive(Clone, Debug, PartialEq)]
pub enum KvlRows {
    Equality(Row),
    Disjunctive(Vec<DisjunctivePair>),
}

/// Index between model entities and LP columns and rows.
///
/// Per-snapshot entries are indexed `[entity][snapshot]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormulationMap {
    pub kind: FormulationKind,
    /// Susceptance used in plain KVL rows, per line.
    pub susceptance: Vec<f64>,
    /// Added circuits of lines without circuit variables, per line.
    pub fixed_circuits: Vec<f64>,

    pub generator_capacity: Vec<Var>,
    pub dispatch: Vec<Vec<Var>>,
    pub line_capacity: Vec<Option<Var>>,
    pub line_circuits: Vec<Option<Var>>,
    pub line_candidates: Vec<Vec<(u32, Var)>>,
    pub link_capacity: Vec<Var>,
    pub link_flow: Vec<Vec<Var>>,
    pub line_flow: Vec<Vec<Var>>,
    pub angle: Vec<Vec<Var>>,

    pub kcl: Vec<Vec<Row>>,
    pub kvl: Vec<Vec<KvlRows>>,
    pub flow_limit: Vec<Vec<Option<(Row, Row)>>>,
    pub availability: Vec<Vec<Option<Row>>>,
    pub link_limit: Vec<Vec<(Row, Row)>>,
    pub capacity_link: Vec<Option<Row>>,
    pub choice: Vec<Option<Row>>,
    pub share: Row,
    pub volume: Row,
}

impl FormulationMap {
    pub fn binaries(&self) -> Vec<Var> {
        self.line_candidates.iter().flatten().map(|&(_, v)| v).collect()
    }

    /// Every column the map claims, in no particular order.
    pub fn claimed_vars(&self) -> Vec<Var> {
        let mut v: Vec<Var> = Vec::new();
        v.extend(&self.generator_capacity);
        v.extend(self.dispatch.iter().flatten());
        v.extend(self.line_capacity.iter().flatten());
        v.extend(self.line_circuits.iter().flatten());
        v.extend(self.binaries());
        v.extend(&self.link_capacity);
        v.extend(self.link_flow.iter().flatten());
        v.extend(self.line_flow.iter().flatten());
        v.extend(self.angle.iter().flatten());
        v
    }

    /// Every row the map claims, in no particular order.
    pub fn claimed_rows(&self) -> Vec<Row> {
        let mut r: Vec<Row> = Vec::new();
        r.extend(self.kcl.iter().flatten());
        for k in self.kvl.iter().flatten() {
            match k {
                KvlRows::Equality(row) => r.push(*row),
                KvlRows::Disjunctive(pairs) => {
                    for p in pairs {
                        r.push(p.lower);
                        r.push(p.upper);
                    }
                }
            }
        }
        for &(a, b) in self.flow_limit.iter().flatten().flatten() {
            r.push(a);
            r.push(b);
        }
        r.extend(self.availability.iter().flatten().flatten());
        for &(a, b) in self.link_limit.iter().flatten() {
            r.push(a);
            r.push(b);
        }
        r.extend(self.capacity_link.iter().flatten());
        r.extend(self.choice.iter().flatten());
        r.push(self.share);
        r.push(self.volume);
        r
    }

    /// Number of model constraints, counting each disjunctive pair of
    /// inequalities as a single (two-sided) constraint.
    pub fn constraint_count(&self) -> usize {
        let pairs: usize = self
            .kvl
            .iter()
            .flatten()
            .map(|k| match k {
                KvlRows::Equality(_) => 0,
                KvlRows::Disjunctive(p) => p.len(),
            })
            .sum();
        self.claimed_rows().len() - pairs
    }
}

#[derive(Clone, Copy, Debug)]
enum LineTreatment<'a> {
    Fixed(f64),
    Continuous,
    Integer,
    Disjunctive(&'a BigMValues),
}

fn check_structure(network: &Network, config: &ScenarioConfig) -> Result<(), LopfError> {
    config.validate()?;
    if let Some(&bus) = network.isolated_load_buses().first() {
        return Err(LopfError::StructurallyInfeasible { bus: network.buses()[bus].id.clone() });
    }
    Ok(())
}

fn check_susceptances(network: &Network, b: &[f64]) -> Result<(), LopfError> {
    if b.len() != network.lines().len() {
        return Err(LopfError::LengthMismatch {
            what: "susceptances",
            expected: network.lines().len(),
            got: b.len(),
        });
    }
    for (line, &v) in network.lines().iter().zip(b) {
        if !(v > 0.0) || !v.is_finite() {
            return Err(LopfError::InvalidSusceptance { line: line.id.clone(), value: v });
        }
    }
    Ok(())
}

/// Builds the co-optimisation LP with fixed susceptances `b` (one per line).
///
/// With [`LineMode::ExtendableInteger`] the result contains binaries
/// ([`FormulationMap::binaries`]); see [`build_integer_lopf`].
pub fn build_continuous_lopf(
    network: &Network,
    config: &ScenarioConfig,
    b: &[f64],
    mode: &LineMode,
) -> Result<(LinearProgram, FormulationMap), LopfError> {
    check_structure(network, config)?;
    check_susceptances(network, b)?;
    let lines = network.lines();
    let mut treatments = Vec::with_capacity(lines.len());
    match mode {
        LineMode::Fixed(circuits) => {
            if circuits.len() != lines.len() {
                return Err(LopfError::LengthMismatch {
                    what: "fixed circuits",
                    expected: lines.len(),
                    got: circuits.len(),
                });
            }
            for (line, &c) in lines.iter().zip(circuits) {
                if !(c >= 0.0) || (!line.extendable && c != 0.0) {
                    return Err(LopfError::InvalidCircuits { line: line.id.clone(), value: c });
                }
                treatments.push(LineTreatment::Fixed(c));
            }
        }
        LineMode::ExtendableContinuous | LineMode::ExtendableInteger => {
            for line in lines {
                treatments.push(match (line.extendable, mode) {
                    (false, _) => LineTreatment::Fixed(0.0),
                    (true, LineMode::ExtendableContinuous) => LineTreatment::Continuous,
                    (true, _) => LineTreatment::Integer,
                });
            }
        }
    }
    let kind = match mode {
        LineMode::ExtendableContinuous => FormulationKind::Continuous,
        LineMode::ExtendableInteger => FormulationKind::Integer,
        LineMode::Fixed(_) => FormulationKind::Fixed,
    };
    Ok(build(network, config, b, &treatments, kind))
}

/// Continuous build with integer circuit choices and fixed susceptances.
pub fn build_integer_lopf(
    network: &Network,
    config: &ScenarioConfig,
    b: &[f64],
) -> Result<(MilpProblem, FormulationMap), LopfError> {
    let (lp, map) = build_continuous_lopf(network, config, b, &LineMode::ExtendableInteger)?;
    let milp = MilpProblem::new(lp, map.binaries())?;
    Ok((milp, map))
}

/// Builds the exact big-M disjunctive MILP.
pub fn build_bigm_milp(
    network: &Network,
    config: &ScenarioConfig,
    big_m: &BigMValues,
) -> Result<(MilpProblem, FormulationMap), LopfError> {
    check_structure(network, config)?;
    let lines = network.lines();
    let b: Vec<f64> = lines.iter().map(|l| l.init_susceptance).collect();
    let treatments: Vec<_> = lines
        .iter()
        .map(|l| if l.extendable { LineTreatment::Disjunctive(big_m) } else { LineTreatment::Fixed(0.0) })
        .collect();
    let (lp, map) = build(network, config, &b, &treatments, FormulationKind::BigM);
    let milp = MilpProblem::new(lp, map.binaries())?;
    Ok((milp, map))
}

/// Variables and constraints the big-M reformulation adds on top of the
/// continuous build: `(sum |C| - |L_ext|, |L_ext| + |T| (sum |C| - |L_ext|))`.
pub fn formulation_size(network: &Network, snapshot_count: usize) -> (usize, usize) {
    let mut ext = 0;
    let mut cands = 0;
    for line in network.lines().iter().filter(|l| l.extendable) {
        ext += 1;
        cands += line.sorted_candidates().len();
    }
    let vars = cands - ext;
    (vars, ext + snapshot_count * vars)
}

fn build(
    network: &Network,
    config: &ScenarioConfig,
    b: &[f64],
    treatments: &[LineTreatment<'_>],
    kind: FormulationKind,
) -> (LinearProgram, FormulationMap) {
    let nt = network.snapshot_count();
    let buses = network.buses();
    let gens = network.generators();
    let lines = network.lines();
    let links = network.links();
    let llf = config.line_loading_factor;
    let mut lp = LinearProgram::new();
    let mut offset = 0.0;

    // Generators.
    let mut generator_capacity = Vec::with_capacity(gens.len());
    let mut dispatch = Vec::with_capacity(gens.len());
    let mut availability = Vec::with_capacity(gens.len());
    for g in gens {
        let (lo, up) = if g.extendable {
            (0.0, g.capacity_max.unwrap_or(INF))
        } else {
            (g.capacity, g.capacity)
        };
        let cap = lp.add_named_var(format!("G[{}]", g.id), lo, up, g.capital_cost);
        generator_capacity.push(cap);
        let mut disp = Vec::with_capacity(nt);
        let mut avail = Vec::with_capacity(nt);
        for t in 0..nt {
            let w = network.weight(t);
            let a = g.availability[t];
            if g.extendable {
                let v = lp.add_named_var(format!("g[{},{t}]", g.id), 0.0, INF, w * g.marginal_cost);
                let row = lp.add_named_row(
                    format!("avail[{},{t}]", g.id),
                    vec![(v, 1.0), (cap, -a)],
                    Sense::Le,
                    0.0,
                );
                disp.push(v);
                avail.push(Some(row));
            } else {
                let v = lp.add_named_var(format!("g[{},{t}]", g.id), 0.0, a * g.capacity, w * g.marginal_cost);
                disp.push(v);
                avail.push(None);
            }
        }
        dispatch.push(disp);
        availability.push(avail);
    }

    // Angles, one reference bus per AC component pinned to zero.
    let angle: Vec<Vec<Var>> = buses
        .iter()
        .enumerate()
        .map(|(i, bus)| {
            (0..nt)
                .map(|t| {
                    let (lo, up) = if network.is_reference_bus(i) { (0.0, 0.0) } else { (-INF, INF) };
                    lp.add_named_var(format!("theta[{},{t}]", bus.id), lo, up, 0.0)
                })
                .collect()
        })
        .collect();

    // Lines.
    let mut line_capacity = vec![None; lines.len()];
    let mut line_circuits = vec![None; lines.len()];
    let mut line_candidates = vec![Vec::new(); lines.len()];
    let mut capacity_link = vec![None; lines.len()];
    let mut choice = vec![None; lines.len()];
    let mut fixed_circuits = vec![0.0; lines.len()];
    let mut line_flow = Vec::with_capacity(lines.len());
    let mut kvl = Vec::with_capacity(lines.len());
    let mut flow_limit = Vec::with_capacity(lines.len());
    let mut volume_terms = Vec::new();
    let mut volume_rhs = config.volume_cap * network.original_volume();

    for (l, line) in lines.iter().enumerate() {
        let (i, j) = network.line_ends(l);
        let step = line.init_capacity / f64::from(line.init_circuits);
        let treatment = treatments[l];
        let fixed_cap = match treatment {
            LineTreatment::Fixed(c) => {
                fixed_circuits[l] = c;
                let cap = line.circuit_factor(c) * line.init_capacity;
                offset += line.capital_cost * cap;
                volume_rhs -= (cap - line.init_capacity) * line.length;
                Some(cap)
            }
            _ => None,
        };
        if fixed_cap.is_none() {
            let cap = lp.add_named_var(format!("F[{}]", line.id), 0.0, INF, line.capital_cost);
            line_capacity[l] = Some(cap);
            volume_terms.push((cap, line.length));
            volume_rhs += line.init_capacity * line.length;
            let mut link_terms = vec![(cap, 1.0)];
            if let LineTreatment::Continuous = treatment {
                let gamma = lp.add_named_var(format!("Gamma[{}]", line.id), 0.0, f64::from(line.max_candidate()), 0.0);
                line_circuits[l] = Some(gamma);
                link_terms.push((gamma, -step));
            } else {
                let mut choice_terms = Vec::new();
                for c in line.sorted_candidates() {
                    let x = lp.add_named_var(format!("Gamma[{},{c}]", line.id), 0.0, 1.0, 0.0);
                    line_candidates[l].push((c, x));
                    choice_terms.push((x, 1.0));
                    if c > 0 {
                        link_terms.push((x, -step * f64::from(c)));
                    }
                }
                choice[l] = Some(lp.add_named_row(format!("choice[{}]", line.id), choice_terms, Sense::Eq, 1.0));
            }
            capacity_link[l] = Some(lp.add_named_row(
                format!("caplink[{}]", line.id),
                link_terms,
                Sense::Eq,
                line.init_capacity,
            ));
        }

        let mut flows = Vec::with_capacity(nt);
        let mut kvl_l = Vec::with_capacity(nt);
        let mut limits = Vec::with_capacity(nt);
        for t in 0..nt {
            let (lo, up) = match fixed_cap {
                Some(cap) => (-llf * cap, llf * cap),
                None => (-INF, INF),
            };
            let f = lp.add_named_var(format!("f[{},{t}]", line.id), lo, up, 0.0);
            flows.push(f);
            limits.push(line_capacity[l].map(|cap| {
                let upper = lp.add_named_row(
                    format!("flowmax[{},{t}]", line.id),
                    vec![(f, 1.0), (cap, -llf)],
                    Sense::Le,
                    0.0,
                );
                let lower = lp.add_named_row(
                    format!("flowmin[{},{t}]", line.id),
                    vec![(f, -1.0), (cap, -llf)],
                    Sense::Le,
                    0.0,
                );
                (upper, lower)
            }));
            let (ti, tj) = (angle[i][t], angle[j][t]);
            kvl_l.push(match treatment {
                LineTreatment::Disjunctive(big_m) => {
                    let mut pairs = Vec::new();
                    for &(c, x) in &line_candidates[l] {
                        let entry = big_m.get(l, c).expect("big-M value for every extendable candidate");
                        let bc = line.circuit_factor(f64::from(c)) * line.init_susceptance;
                        let lower = lp.add_named_row(
                            format!("kvl_lo[{},{c},{t}]", line.id),
                            vec![(ti, bc), (tj, -bc), (f, -1.0), (x, -entry.upper)],
                            Sense::Ge,
                            -entry.upper,
                        );
                        let upper = lp.add_named_row(
                            format!("kvl_up[{},{c},{t}]", line.id),
                            vec![(ti, bc), (tj, -bc), (f, -1.0), (x, entry.lower)],
                            Sense::Le,
                            entry.lower,
                        );
                        pairs.push(DisjunctivePair { candidate: c, lower, upper });
                    }
                    KvlRows::Disjunctive(pairs)
                }
                _ => KvlRows::Equality(lp.add_named_row(
                    format!("kvl[{},{t}]", line.id),
                    vec![(f, 1.0), (ti, -b[l]), (tj, b[l])],
                    Sense::Eq,
                    0.0,
                )),
            });
        }
        line_flow.push(flows);
        kvl.push(kvl_l);
        flow_limit.push(limits);
    }

    // HVDC links.
    let mut link_capacity = Vec::with_capacity(links.len());
    let mut link_flow = Vec::with_capacity(links.len());
    let mut link_limit = Vec::with_capacity(links.len());
    for k in links {
        let cap = lp.add_named_var(format!("H[{}]", k.id), k.capacity, k.upper_capacity(), k.capital_cost);
        let mut flows = Vec::with_capacity(nt);
        let mut limits = Vec::with_capacity(nt);
        for t in 0..nt {
            let h = lp.add_named_var(format!("h[{},{t}]", k.id), -INF, INF, 0.0);
            let up = lp.add_named_row(format!("linkmax[{},{t}]", k.id), vec![(h, 1.0), (cap, -1.0)], Sense::Le, 0.0);
            let lo = lp.add_named_row(format!("linkmin[{},{t}]", k.id), vec![(h, -1.0), (cap, -1.0)], Sense::Le, 0.0);
            flows.push(h);
            limits.push((up, lo));
        }
        link_capacity.push(cap);
        link_flow.push(flows);
        link_limit.push(limits);
    }

    // Nodal balance.
    let mut kcl_terms: Vec<Vec<Vec<(Var, f64)>>> = vec![vec![Vec::new(); nt]; buses.len()];
    for (k, disp) in dispatch.iter().enumerate() {
        let bus = network.generator_bus(k);
        for (t, &v) in disp.iter().enumerate() {
            kcl_terms[bus][t].push((v, 1.0));
        }
    }
    for (l, flows) in line_flow.iter().enumerate() {
        let (i, j) = network.line_ends(l);
        for (t, &f) in flows.iter().enumerate() {
            kcl_terms[i][t].push((f, -1.0));
            kcl_terms[j][t].push((f, 1.0));
        }
    }
    for (k, flows) in link_flow.iter().enumerate() {
        let (i, j) = network.link_ends(k);
        for (t, &h) in flows.iter().enumerate() {
            kcl_terms[i][t].push((h, -1.0));
            kcl_terms[j][t].push((h, 1.0));
        }
    }
    let kcl: Vec<Vec<Row>> = kcl_terms
        .into_iter()
        .enumerate()
        .map(|(i, per_t)| {
            per_t
                .into_iter()
                .enumerate()
                .map(|(t, terms)| {
                    lp.add_named_row(format!("kcl[{},{t}]", buses[i].id), terms, Sense::Eq, buses[i].load[t])
                })
                .collect()
        })
        .collect();

    // Renewable share of demand energy.
    let mut share_terms = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        if g.renewable {
            for t in 0..nt {
                share_terms.push((dispatch[k][t], network.weight(t)));
            }
        }
    }
    let share = lp.add_named_row(
        "share",
        share_terms,
        Sense::Ge,
        config.renewable_share * network.demand_energy(),
    );

    let volume = lp.add_named_row("volume", volume_terms, Sense::Le, volume_rhs);

    if !config.charge_existing {
        offset -= lines.iter().map(|l| l.capital_cost * l.init_capacity).sum::<f64>();
    }
    lp.set_objective_offset(offset);

    let map = FormulationMap {
        kind,
        susceptance: b.to_vec(),
        fixed_circuits,
        generator_capacity,
        dispatch,
        line_capacity,
        line_circuits,
        line_candidates,
        link_capacity,
        link_flow,
        line_flow,
        angle,
        kcl,
        kvl,
        flow_limit,
        availability,
        link_limit,
        capacity_link,
        choice,
        share,
        volume,
    };
    (lp, map)
}

/// Solves a continuous build and extracts the solution.
pub fn solve_lopf(
    network: &Network,
    config: &ScenarioConfig,
    b: &[f64],
    mode: &LineMode,
    options: &LpOptions,
) -> Result<(ExpansionSolution, LpSolution), LopfError> {
    let (lp, map) = build_continuous_lopf(network, config, b, mode)?;
    let sol = solve_lp(&lp, options)?;
    match sol.status {
        LpStatus::Optimal => {}
        LpStatus::Infeasible => return Err(LopfError::Infeasible(sol.certificate)),
        LpStatus::Unbounded => return Err(LopfError::Unbounded),
        LpStatus::NumericFailure => {
            return Err(LopfError::NumericFailure(sol.message.unwrap_or("lp")))
        }
    }
    let exp = extract_solution(network, config, &map, &sol.primal, sol.objective, SolutionStatus::Optimal)?;
    Ok((exp, sol))
}

/// Solves a mixed-binary build and extracts the incumbent.
pub fn solve_lopf_milp(
    network: &Network,
    config: &ScenarioConfig,
    problem: &MilpProblem,
    map: &FormulationMap,
    options: &MilpOptions,
    clock: &dyn Clock,
) -> Result<(ExpansionSolution, MilpSolution), LopfError> {
    let sol = solve_milp(problem, options, clock)?;
    let status = match sol.status {
        MilpStatus::OptimalWithinGap if sol.gap <= 0.0 => SolutionStatus::Optimal,
        MilpStatus::OptimalWithinGap => SolutionStatus::WithinGap,
        MilpStatus::FeasibleWalltime => SolutionStatus::Feasible,
        MilpStatus::Infeasible => return Err(LopfError::Infeasible(None)),
        MilpStatus::Unbounded => return Err(LopfError::Unbounded),
        other => return Err(LopfError::NoIncumbent(other)),
    };
    let Some(x) = sol.incumbent.as_ref() else {
        return Err(LopfError::NoIncumbent(sol.status));
    };
    // Re-solve with the binaries fixed so that the continuous part carries
    // no slack from near-integral binaries.
    let mut lp = problem.lp().clone();
    for &v in problem.binaries() {
        lp.set_bounds(v, x[v.index()], x[v.index()]);
    }
    let polished = solve_lp(&lp, &options.lp)?;
    let exp = if polished.is_optimal() {
        extract_solution(network, config, map, &polished.primal, polished.objective, status)?
    } else {
        extract_solution(network, config, map, x, sol.upper_bound, status)?
    };
    Ok((exp, sol))
}
