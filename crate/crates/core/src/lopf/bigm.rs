use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::netmodel::{Network, ScenarioConfig};

/// Big-M constants for one candidate of one line, with the angle bound they
/// were derived from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BigMEntry {
    pub line: usize,
    pub candidate: u32,
    /// Constant of the `>=` disjunct.
    pub upper: f64,
    /// Constant of the `<=` disjunct.
    pub lower: f64,
    /// Bound on `|theta_i - theta_j|` over every feasible operating point.
    pub angle_bound: f64,
    /// Lines of the path that certifies `angle_bound`; empty on fallback.
    pub path: Vec<usize>,
    /// Set when line `line` is a bridge and the global spread bound was used.
    pub fallback: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BigMValues {
    /// `[line][k]`, the k-th sorted candidate; empty for fixed lines.
    entries: Vec<Vec<BigMEntry>>,
}

impl BigMValues {
    pub fn get(&self, line: usize, candidate: u32) -> Option<&BigMEntry> {
        self.entries.get(line)?.iter().find(|e| e.candidate == candidate)
    }

    pub fn entries(&self) -> impl Iterator<Item = &BigMEntry> {
        self.entries.iter().flatten()
    }

    /// Copy with every constant multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> BigMValues {
        let mut out = self.clone();
        for e in out.entries.iter_mut().flatten() {
            e.upper *= factor;
            e.lower *= factor;
        }
        out
    }
}

/// Largest phase-angle difference a line can sustain: `LLF * F^max / b^min`.
fn angle_weight(network: &Network, config: &ScenarioConfig, l: usize) -> f64 {
    let line = &network.lines()[l];
    let fmax = line.circuit_factor(f64::from(line.max_candidate())) * line.init_capacity;
    config.line_loading_factor * fmax / line.init_susceptance
}

#[derive(PartialEq)]
struct HeapItem(f64, usize);

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortest `from`-`to` path over AC lines except `skip`. Returns the length
/// and the lines on the path.
fn shortest_path(
    network: &Network,
    adjacency: &[Vec<(usize, usize)>],
    weights: &[f64],
    from: usize,
    to: usize,
    skip: usize,
) -> Option<(f64, Vec<usize>)> {
    let n = network.buses().len();
    let mut dist = vec![f64::INFINITY; n];
    let mut via: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut heap = BinaryHeap::new();
    dist[from] = 0.0;
    heap.push(HeapItem(0.0, from));
    while let Some(HeapItem(d, u)) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        if u == to {
            break;
        }
        for &(v, l) in &adjacency[u] {
            if l == skip {
                continue;
            }
            let nd = d + weights[l];
            if nd < dist[v] {
                dist[v] = nd;
                via[v] = Some((u, l));
                heap.push(HeapItem(nd, v));
            }
        }
    }
    if !dist[to].is_finite() {
        return None;
    }
    let mut path = Vec::new();
    let mut cur = to;
    while let Some((prev, l)) = via[cur] {
        path.push(l);
        cur = prev;
    }
    path.reverse();
    Some((dist[to], path))
}

/// Computes `M = k_c b (dtheta_max) + LLF * F^max` for every candidate of
/// every extendable line.
///
/// `dtheta_max` is the length of the shortest path between the line's ends
/// that avoids the line itself, each line weighted by its largest angle
/// difference. Bridges fall back to `config.angle_spread_bound`, or when
/// unset to the sum of all line weights.
pub fn compute_big_m(network: &Network, config: &ScenarioConfig) -> BigMValues {
    let lines = network.lines();
    let weights: Vec<f64> = (0..lines.len()).map(|l| angle_weight(network, config, l)).collect();
    let spread = config.angle_spread_bound.unwrap_or_else(|| weights.iter().sum());
    let mut adjacency = vec![Vec::new(); network.buses().len()];
    for l in 0..lines.len() {
        let (i, j) = network.line_ends(l);
        adjacency[i].push((j, l));
        adjacency[j].push((i, l));
    }
    let mut entries = vec![Vec::new(); lines.len()];
    for l in network.extendable_lines() {
        let line = &lines[l];
        let (i, j) = network.line_ends(l);
        let (bound, path, fallback) = match shortest_path(network, &adjacency, &weights, i, j, l) {
            Some((d, p)) => (d, p, false),
            None => (spread, Vec::new(), true),
        };
        let fmax = line.circuit_factor(f64::from(line.max_candidate())) * line.init_capacity;
        for c in line.sorted_candidates() {
            let bc = line.circuit_factor(f64::from(c)) * line.init_susceptance;
            let m = bc * bound + config.line_loading_factor * fmax;
            entries[l].push(BigMEntry {
                line: l,
                candidate: c,
                upper: m,
                lower: m,
                angle_bound: bound,
                path: path.clone(),
                fallback,
            });
        }
    }
    BigMValues { entries }
}
