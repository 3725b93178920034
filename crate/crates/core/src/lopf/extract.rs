use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{FormulationKind, FormulationMap, LopfError};
use crate::math::{close_rel, round};
use crate::netmodel::{Network, ScenarioConfig};

const OBJECTIVE_RTOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolutionStatus {
    Optimal,
    /// MILP incumbent proven within the requested gap.
    WithinGap,
    /// Feasible but without an optimality proof (walltime, heuristics).
    Feasible,
}

/// Decision values of a solved formulation, indexed like the network.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpansionSolution {
    pub status: SolutionStatus,
    pub objective: f64,
    pub generator_capacity: Vec<f64>,
    /// `[generator][snapshot]`
    pub dispatch: Vec<Vec<f64>>,
    pub line_capacity: Vec<f64>,
    /// Added circuits per line.
    pub circuits: Vec<f64>,
    /// Susceptance the flows obey, per line.
    pub susceptance: Vec<f64>,
    pub link_capacity: Vec<f64>,
    pub link_flow: Vec<Vec<f64>>,
    pub line_flow: Vec<Vec<f64>>,
    pub angle: Vec<Vec<f64>>,
}

impl ExpansionSolution {
    /// Objective evaluated from the decision values.
    pub fn recompute_objective(&self, network: &Network, config: &ScenarioConfig) -> f64 {
        let mut obj = 0.0;
        for (k, g) in network.generators().iter().enumerate() {
            obj += g.capital_cost * self.generator_capacity[k];
            for t in 0..network.snapshot_count() {
                obj += network.weight(t) * g.marginal_cost * self.dispatch[k][t];
            }
        }
        for (l, line) in network.lines().iter().enumerate() {
            obj += line.capital_cost * self.line_capacity[l];
            if !config.charge_existing {
                obj -= line.capital_cost * line.init_capacity;
            }
        }
        for (k, link) in network.links().iter().enumerate() {
            obj += link.capital_cost * self.link_capacity[k];
        }
        obj
    }
}

fn values(primal: &[f64], vars: &[Vec<crate::lpcore::Var>]) -> Vec<Vec<f64>> {
    vars.iter().map(|row| row.iter().map(|v| primal[v.index()]).collect()).collect()
}

/// Reads a primal vector back into model quantities and cross-checks the
/// solver objective against the recomputed one.
pub fn extract_solution(
    network: &Network,
    config: &ScenarioConfig,
    map: &FormulationMap,
    primal: &[f64],
    objective: f64,
    status: SolutionStatus,
) -> Result<ExpansionSolution, LopfError> {
    let claimed = map.claimed_vars().into_iter().map(|v| v.index()).max().map_or(0, |m| m + 1);
    if primal.len() < claimed {
        return Err(LopfError::LengthMismatch { what: "primal", expected: claimed, got: primal.len() });
    }
    let lines = network.lines();
    let mut line_capacity = Vec::with_capacity(lines.len());
    let mut circuits = Vec::with_capacity(lines.len());
    let mut susceptance = Vec::with_capacity(lines.len());
    for (l, line) in lines.iter().enumerate() {
        let gamma = if let Some(v) = map.line_circuits[l] {
            primal[v.index()].max(0.0)
        } else if !map.line_candidates[l].is_empty() {
            let mut best = (f64::NEG_INFINITY, 0u32);
            for &(c, x) in &map.line_candidates[l] {
                if primal[x.index()] > best.0 {
                    best = (primal[x.index()], c);
                }
            }
            f64::from(best.1)
        } else {
            map.fixed_circuits[l]
        };
        let cap = match map.line_capacity[l] {
            Some(v) => primal[v.index()],
            None => line.circuit_factor(gamma) * line.init_capacity,
        };
        line_capacity.push(cap);
        susceptance.push(match map.kind {
            FormulationKind::BigM if line.extendable => line.circuit_factor(round(gamma)) * line.init_susceptance,
            _ => map.susceptance[l],
        });
        circuits.push(gamma);
    }
    let sol = ExpansionSolution {
        status,
        objective,
        generator_capacity: map.generator_capacity.iter().map(|v| primal[v.index()]).collect(),
        dispatch: values(primal, &map.dispatch),
        line_capacity,
        circuits,
        susceptance,
        link_capacity: map.link_capacity.iter().map(|v| primal[v.index()]).collect(),
        link_flow: values(primal, &map.link_flow),
        line_flow: values(primal, &map.line_flow),
        angle: values(primal, &map.angle),
    };
    let recomputed = sol.recompute_objective(network, config);
    if !close_rel(recomputed, objective, OBJECTIVE_RTOL) {
        return Err(LopfError::ObjectiveMismatch { solver: objective, recomputed });
    }
    Ok(sol)
}
