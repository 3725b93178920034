//! Best-bound branch and bound for mixed-binary programs on top of
//! [`crate::lpcore`].
//!
//! Termination follows the usual solver semantics: stop once the relative gap
//! between the incumbent (upper bound) and the best open node (lower bound)
//! falls to `mip_gap`, when no open nodes remain, or when the walltime runs
//! out.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::clock::Clock;
use crate::lpcore::{solve_lp, LinearProgram, LpError, LpOptions, LpStatus, Var};
use crate::math::{abs, round};

/// A linear program where a subset of variables must be 0 or 1.
#[derive(Clone, Debug, PartialEq)]
pub struct MilpProblem {
    lp: LinearProgram,
    binaries: Vec<Var>,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum MilpError {
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("binary variable {0} must have bounds within [0, 1] at integer values")]
    NotBinary(usize),
    #[error("lower bound {lower} exceeds upper bound {upper}")]
    BoundCrossing { upper: f64, lower: f64 },
}

impl MilpProblem {
    pub fn new(lp: LinearProgram, mut binaries: Vec<Var>) -> Result<Self, MilpError> {
        binaries.sort_unstable();
        binaries.dedup();
        for &v in &binaries {
            if v.0 >= lp.num_vars() {
                return Err(MilpError::NotBinary(v.0));
            }
            let (l, u) = lp.bounds(v);
            let ok = |b: f64| b == 0.0 || b == 1.0;
            if !(ok(l) && ok(u) && l <= u) {
                return Err(MilpError::NotBinary(v.0));
            }
        }
        Ok(MilpProblem { lp, binaries })
    }

    pub fn lp(&self) -> &LinearProgram {
        &self.lp
    }

    pub fn binaries(&self) -> &[Var] {
        &self.binaries
    }

    /// Fixes a binary to 0 or 1 through its bounds.
    pub fn fix(&mut self, var: Var, value: f64) {
        debug_assert!(self.binaries.contains(&var));
        self.lp.set_bounds(var, value, value);
    }
}

#[derive(Clone, Copy, Debug)]
pub struct MilpOptions {
    /// Relative gap at which the search stops.
    pub mip_gap: f64,
    /// Seconds measured with the supplied clock.
    pub walltime: f64,
    /// Distance from 0/1 under which a binary counts as integral.
    pub int_tol: f64,
    /// Run the rounding heuristic at the root and every this many nodes
    /// (0 disables it).
    pub rounding_interval: usize,
    pub lp: LpOptions,
}

impl Default for MilpOptions {
    fn default() -> Self {
        MilpOptions {
            mip_gap: 0.0,
            walltime: f64::INFINITY,
            int_tol: 1e-6,
            rounding_interval: 10,
            lp: LpOptions::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MilpStatus {
    /// Incumbent proven within the requested gap.
    OptimalWithinGap,
    /// Walltime reached with an incumbent.
    FeasibleWalltime,
    /// Proven infeasible (root LP infeasible or tree exhausted).
    Infeasible,
    /// Walltime reached before any incumbent was found.
    InfeasibleUnknown,
    /// Root relaxation unbounded.
    Unbounded,
    /// A node LP broke down numerically.
    NumericFailure,
}

impl fmt::Display for MilpStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MilpStatus::OptimalWithinGap => "optimal-within-gap",
            MilpStatus::FeasibleWalltime => "feasible-walltime",
            MilpStatus::Infeasible => "infeasible",
            MilpStatus::InfeasibleUnknown => "infeasible-unknown",
            MilpStatus::Unbounded => "unbounded",
            MilpStatus::NumericFailure => "numeric-failure",
        })
    }
}

/// One line of the bound progression log.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GapLogEntry {
    pub wall_time: f64,
    pub nodes: usize,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub gap: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MilpSolution {
    pub status: MilpStatus,
    pub incumbent: Option<Vec<f64>>,
    pub upper_bound: f64,
    pub lower_bound: f64,
    pub gap: f64,
    pub nodes_explored: usize,
    pub wall_time: f64,
    /// Objective of the root LP relaxation.
    pub root_relaxation: Option<f64>,
    pub log: Vec<GapLogEntry>,
}

impl MilpSolution {
    pub fn objective(&self) -> Option<f64> {
        self.incumbent.as_ref().map(|_| self.upper_bound)
    }
}

/// `(upper - lower) / max(|upper|, 1e-10)`.
///
/// A lower bound above the upper bound (beyond 1e-9) indicates a solver bug
/// and is reported as [`MilpError::BoundCrossing`].
pub fn mip_gap(upper: f64, lower: f64) -> Result<f64, MilpError> {
    if lower > upper + 1e-9 {
        return Err(MilpError::BoundCrossing { upper, lower });
    }
    if upper == lower {
        return Ok(0.0);
    }
    Ok(((upper - lower) / abs(upper).max(1e-10)).max(0.0))
}

fn gap_or_inf(upper: f64, lower: f64) -> f64 {
    if upper == f64::INFINITY || lower == f64::NEG_INFINITY {
        f64::INFINITY
    } else if lower > upper {
        0.0
    } else {
        mip_gap(upper, lower).unwrap_or(0.0)
    }
}

struct Node {
    bound: f64,
    depth: usize,
    seq: usize,
    fixings: Vec<(Var, f64)>,
}

// Min-heap by bound, then deeper first, then creation order.
impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .bound
            .total_cmp(&self.bound)
            .then(self.depth.cmp(&other.depth))
            .then(other.seq.cmp(&self.seq))
    }
}
impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Node {}

/// Solves `problem` by best-bound branch and bound, branching on the most
/// fractional binary (lowest index on ties).
pub fn solve_milp(
    problem: &MilpProblem,
    opts: &MilpOptions,
    clock: &dyn Clock,
) -> Result<MilpSolution, MilpError> {
    problem.lp.validate()?;
    let start = clock.now();
    let elapsed = || clock.now() - start;

    let mut out = MilpSolution {
        status: MilpStatus::Infeasible,
        incumbent: None,
        upper_bound: f64::INFINITY,
        lower_bound: f64::NEG_INFINITY,
        gap: f64::INFINITY,
        nodes_explored: 0,
        wall_time: 0.0,
        root_relaxation: None,
        log: Vec::new(),
    };

    let mut heap = BinaryHeap::new();
    heap.push(Node { bound: f64::NEG_INFINITY, depth: 0, seq: 0, fixings: Vec::new() });
    let mut seq = 1;
    let mut work = problem.lp.clone();
    let mut timed_out = false;
    let mut numeric_failure = false;

    while let Some(node) = heap.pop() {
        if elapsed() > opts.walltime {
            heap.push(node);
            timed_out = true;
            break;
        }
        if out.incumbent.is_some() && node.bound >= prune_level(out.upper_bound) {
            continue;
        }

        // Node LP with this node's fixings applied.
        for &(v, val) in &node.fixings {
            work.set_bounds(v, val, val);
        }
        let sol = solve_lp(&work, &opts.lp)?;
        for &(v, _) in &node.fixings {
            let (l, u) = problem.lp.bounds(v);
            work.set_bounds(v, l, u);
        }
        out.nodes_explored += 1;

        match sol.status {
            LpStatus::Optimal => {}
            LpStatus::Infeasible => {
                update_lower(&mut out, &heap, elapsed(), false);
                continue;
            }
            LpStatus::Unbounded if node.depth == 0 => {
                out.status = MilpStatus::Unbounded;
                out.wall_time = elapsed();
                return Ok(out);
            }
            LpStatus::Unbounded | LpStatus::NumericFailure => {
                numeric_failure = true;
                break;
            }
        }
        if node.depth == 0 {
            out.root_relaxation = Some(sol.objective);
        }
        let obj = sol.objective;

        if out.incumbent.is_none() || obj < prune_level(out.upper_bound) {
            match most_fractional(&problem.binaries, &sol.primal, opts.int_tol) {
                None => {
                    let mut x = sol.primal.clone();
                    for &v in &problem.binaries {
                        x[v.0] = round(x[v.0]);
                    }
                    out.incumbent = Some(x);
                    out.upper_bound = obj;
                    update_lower(&mut out, &heap, elapsed(), true);
                }
                Some(branch) => {
                    for val in [0.0, 1.0] {
                        let mut fixings = node.fixings.clone();
                        fixings.push((branch, val));
                        heap.push(Node { bound: obj, depth: node.depth + 1, seq, fixings });
                        seq += 1;
                    }
                    let due = opts.rounding_interval > 0
                        && (node.depth == 0 || out.nodes_explored % opts.rounding_interval == 0);
                    if due {
                        if let Some((x, val)) = round_and_resolve(problem, &node, &sol.primal, opts)? {
                            if val < out.upper_bound {
                                out.incumbent = Some(x);
                                out.upper_bound = val;
                            }
                        }
                    }
                    update_lower(&mut out, &heap, elapsed(), true);
                }
            }
        } else {
            update_lower(&mut out, &heap, elapsed(), false);
        }

        if out.incumbent.is_some() && out.gap <= opts.mip_gap {
            break;
        }
    }

    out.wall_time = elapsed();
    if heap.is_empty() && !timed_out && !numeric_failure {
        if out.incumbent.is_some() {
            out.lower_bound = out.upper_bound;
            out.gap = 0.0;
            let now = out.wall_time;
            push_log(&mut out, now);
        }
    }
    out.status = if numeric_failure {
        MilpStatus::NumericFailure
    } else if out.incumbent.is_none() {
        if timed_out {
            MilpStatus::InfeasibleUnknown
        } else {
            MilpStatus::Infeasible
        }
    } else if out.gap <= opts.mip_gap {
        MilpStatus::OptimalWithinGap
    } else {
        MilpStatus::FeasibleWalltime
    };
    if out.incumbent.is_some() {
        mip_gap(out.upper_bound, out.lower_bound)?;
    }
    Ok(out)
}

/// Nodes whose bound reaches this level cannot improve the incumbent.
fn prune_level(upper: f64) -> f64 {
    upper - 1e-9 * abs(upper).max(1.0)
}

/// Refreshes the global lower bound from the open nodes and logs any
/// improvement. The bound never decreases.
fn update_lower(out: &mut MilpSolution, heap: &BinaryHeap<Node>, now: f64, force_log: bool) {
    let open = heap.peek().map(|n| n.bound).unwrap_or(f64::INFINITY);
    let candidate = open.min(out.upper_bound);
    let improved = candidate > out.lower_bound;
    if improved {
        out.lower_bound = candidate;
    }
    if out.incumbent.is_some() && out.lower_bound > out.upper_bound {
        out.lower_bound = out.upper_bound;
    }
    out.gap = gap_or_inf(out.upper_bound, out.lower_bound);
    if out.incumbent.is_some() && (improved || force_log) {
        push_log(out, now);
    }
}

fn push_log(out: &mut MilpSolution, now: f64) {
    let entry = GapLogEntry {
        wall_time: now,
        nodes: out.nodes_explored,
        lower_bound: out.lower_bound,
        upper_bound: out.upper_bound,
        gap: out.gap,
    };
    if let Some(last) = out.log.last() {
        if last.lower_bound == entry.lower_bound && last.upper_bound == entry.upper_bound {
            return;
        }
    }
    out.log.push(entry);
}

fn most_fractional(binaries: &[Var], x: &[f64], int_tol: f64) -> Option<Var> {
    let mut best: Option<Var> = None;
    let mut best_frac = int_tol;
    for &v in binaries {
        let val = x[v.0];
        let frac = val.min(1.0 - val).max(0.0);
        if frac > best_frac {
            best_frac = frac;
            best = Some(v);
        }
    }
    best
}

/// Rounds the node's binaries to the nearest value, fixes them and re-solves
/// for the continuous part.
fn round_and_resolve(
    problem: &MilpProblem,
    node: &Node,
    x: &[f64],
    opts: &MilpOptions,
) -> Result<Option<(Vec<f64>, f64)>, MilpError> {
    let mut lp = problem.lp.clone();
    for &v in &problem.binaries {
        let r = if x[v.0] >= 0.5 { 1.0 } else { 0.0 };
        lp.set_bounds(v, r, r);
    }
    for &(v, val) in &node.fixings {
        lp.set_bounds(v, val, val);
    }
    let sol = solve_lp(&lp, &opts.lp)?;
    if sol.status != LpStatus::Optimal {
        return Ok(None);
    }
    Ok(Some((sol.primal, sol.objective)))
}
