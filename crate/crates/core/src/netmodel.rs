//! Power system domain types, validation and the circuit algebra that ties
//! line capacity and susceptance to the number of added circuits.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::math::abs;

/// Hours in a (non-leap) year; snapshot weights must add up to this.
pub const HOURS_PER_YEAR: f64 = 8760.0;

/// Default cap on non-stub HVDC link capacity in MW.
pub const DEFAULT_LINK_CAPACITY_MAX: f64 = 8000.0;

/// Relative tolerance on the snapshot weight sum.
pub const WEIGHT_SUM_RTOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bus {
    pub id: String,
    /// Demand per snapshot in MW.
    pub load: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Snapshot {
    pub id: i64,
    /// Hours represented by this snapshot.
    pub weight: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Technology {
    Solar,
    WindOnshore,
    WindOffshoreAc,
    WindOffshoreDc,
    Ocgt,
    Ccgt,
    Ror,
    Biomass,
}

impl Technology {
    pub fn as_str(self) -> &'static str {
        match self {
            Technology::Solar => "solar",
            Technology::WindOnshore => "wind-onshore",
            Technology::WindOffshoreAc => "wind-offshore-ac",
            Technology::WindOffshoreDc => "wind-offshore-dc",
            Technology::Ocgt => "ocgt",
            Technology::Ccgt => "ccgt",
            Technology::Ror => "ror",
            Technology::Biomass => "biomass",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Generator {
    pub id: String,
    pub bus: String,
    pub tech: Technology,
    /// Annualised investment cost, EUR per MW per year.
    pub capital_cost: f64,
    /// EUR per MWh.
    pub marginal_cost: f64,
    /// Installable potential in MW; `None` means unbounded.
    #[serde(default)]
    pub capacity_max: Option<f64>,
    /// Existing capacity in MW. This is the fixed capacity of a
    /// non-extendable generator and ignored otherwise.
    #[serde(default)]
    pub capacity: f64,
    pub extendable: bool,
    pub renewable: bool,
    /// Per-unit availability per snapshot.
    pub availability: Vec<f64>,
}

fn default_candidates() -> Vec<u32> {
    vec![0, 1, 2]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AcLine {
    pub id: String,
    pub from: String,
    pub to: String,
    /// km
    pub length: f64,
    pub init_circuits: u32,
    /// MW
    pub init_capacity: f64,
    /// per unit
    pub init_susceptance: f64,
    /// EUR per MW per year, charged on the full line capacity.
    pub capital_cost: f64,
    pub extendable: bool,
    /// Allowed numbers of added circuits. Must contain 0 when extendable.
    #[serde(default = "default_candidates")]
    pub candidates: Vec<u32>,
}

impl AcLine {
    /// `1 + circuits / init_circuits`, the common scale of capacity and
    /// susceptance.
    pub fn circuit_factor(&self, circuits: f64) -> f64 {
        1.0 + circuits / f64::from(self.init_circuits)
    }

    /// Largest admissible number of added circuits (0 when not extendable).
    pub fn max_candidate(&self) -> u32 {
        if self.extendable {
            self.candidates.iter().copied().max().unwrap_or(0)
        } else {
            0
        }
    }

    /// Candidate set in ascending order without duplicates.
    pub fn sorted_candidates(&self) -> Vec<u32> {
        if !self.extendable {
            return vec![0];
        }
        let mut c = self.candidates.clone();
        c.sort_unstable();
        c.dedup();
        c
    }
}

fn default_link_cap() -> f64 {
    DEFAULT_LINK_CAPACITY_MAX
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HvdcLink {
    pub id: String,
    pub from: String,
    pub to: String,
    /// EUR per MW per year.
    pub capital_cost: f64,
    #[serde(default = "default_link_cap")]
    pub capacity_max: f64,
    /// Stub links (offshore connections) are exempt from `capacity_max`.
    #[serde(default)]
    pub stub: bool,
    /// Existing capacity in MW, a lower bound on the optimised capacity.
    #[serde(default)]
    pub capacity: f64,
}

impl HvdcLink {
    pub fn upper_capacity(&self) -> f64 {
        if self.stub {
            f64::INFINITY
        } else {
            self.capacity_max
        }
    }
}

fn default_share() -> f64 {
    0.70
}
fn default_volume_cap() -> f64 {
    0.25
}
fn default_loading() -> f64 {
    0.70
}
fn default_thresholds() -> Vec<f64> {
    vec![0.1, 0.2, 0.3, 0.4, 0.5]
}
fn default_threshold() -> f64 {
    0.3
}
fn default_max_iterations() -> usize {
    10
}
fn default_convergence_tol() -> f64 {
    1000.0
}
fn default_mip_gap() -> f64 {
    0.01
}
fn default_walltime() -> f64 {
    3600.0
}
fn default_true() -> bool {
    true
}

/// Scenario and algorithm settings shared by all methods.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Minimum renewable energy as a fraction of total demand energy.
    #[serde(default = "default_share")]
    pub renewable_share: f64,
    /// Addable AC line volume (MWkm) as a fraction of the existing volume.
    #[serde(default = "default_volume_cap")]
    pub volume_cap: f64,
    /// Usable fraction of a line's nominal rating.
    #[serde(default = "default_loading")]
    pub line_loading_factor: f64,
    #[serde(default = "default_thresholds")]
    pub thresholds: Vec<f64>,
    #[serde(default = "default_threshold")]
    pub default_threshold: f64,
    #[serde(default = "default_max_iterations")]
    pub max_iterations: usize,
    /// EUR/a
    #[serde(default = "default_convergence_tol")]
    pub convergence_tol: f64,
    #[serde(default = "default_mip_gap")]
    pub mip_gap: f64,
    /// Seconds.
    #[serde(default = "default_walltime")]
    pub milp_walltime: f64,
    #[serde(default)]
    pub seed: u64,
    /// Charge line capital cost on existing capacity as well. When false the
    /// constant existing-capacity term is removed from the objective.
    #[serde(default = "default_true")]
    pub charge_existing: bool,
    /// Angle-spread bound used for big-M values of bridge lines. When absent
    /// it is derived from the network (sum of all per-line angle limits).
    #[serde(default)]
    pub angle_spread_bound: Option<f64>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            renewable_share: default_share(),
            volume_cap: default_volume_cap(),
            line_loading_factor: default_loading(),
            thresholds: default_thresholds(),
            default_threshold: default_threshold(),
            max_iterations: default_max_iterations(),
            convergence_tol: default_convergence_tol(),
            mip_gap: default_mip_gap(),
            milp_walltime: default_walltime(),
            seed: 0,
            charge_existing: true,
            angle_spread_bound: None,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<(), NetworkError> {
        let fractions = [
            ("renewable_share", self.renewable_share),
            ("volume_cap", self.volume_cap),
            ("line_loading_factor", self.line_loading_factor),
            ("default_threshold", self.default_threshold),
            ("mip_gap", self.mip_gap),
        ];
        for (name, v) in fractions {
            if !(0.0..=1.0).contains(&v) {
                return Err(NetworkError::new("config", Rule::Fraction, name));
            }
        }
        for &z in &self.thresholds {
            if !(0.0..=1.0).contains(&z) {
                return Err(NetworkError::new("config", Rule::Fraction, "thresholds"));
            }
        }
        if !(self.convergence_tol > 0.0) {
            return Err(NetworkError::new("config", Rule::Positive, "convergence_tol"));
        }
        if self.max_iterations < 1 {
            return Err(NetworkError::new("config", Rule::Positive, "max_iterations"));
        }
        if let Some(b) = self.angle_spread_bound {
            if !(b > 0.0) {
                return Err(NetworkError::new("config", Rule::Positive, "angle_spread_bound"));
            }
        }
        Ok(())
    }
}

/// Validation rule that a document or argument violated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    Empty,
    DuplicateId,
    DanglingBus,
    SeriesLength,
    NegativeLoad,
    WeightSum,
    NonPositiveWeight,
    AvailabilityRange,
    NonPositiveSusceptance,
    NonPositiveCapacity,
    ZeroCircuits,
    MissingZeroCandidate,
    EmptyCandidates,
    Negative,
    NonFinite,
    CapacityAboveMax,
    Fraction,
    Positive,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Empty => "empty",
            Rule::DuplicateId => "duplicate-id",
            Rule::DanglingBus => "dangling-bus",
            Rule::SeriesLength => "series-length",
            Rule::NegativeLoad => "negative-load",
            Rule::WeightSum => "weight-sum",
            Rule::NonPositiveWeight => "non-positive-weight",
            Rule::AvailabilityRange => "availability-range",
            Rule::NonPositiveSusceptance => "non-positive-susceptance",
            Rule::NonPositiveCapacity => "non-positive-capacity",
            Rule::ZeroCircuits => "zero-circuits",
            Rule::MissingZeroCandidate => "missing-zero-candidate",
            Rule::EmptyCandidates => "empty-candidates",
            Rule::Negative => "negative",
            Rule::NonFinite => "non-finite",
            Rule::CapacityAboveMax => "capacity-above-max",
            Rule::Fraction => "fraction",
            Rule::Positive => "positive",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("{entity}: rule {rule} violated ({detail})")]
pub struct NetworkError {
    pub entity: String,
    pub rule: Rule,
    pub detail: String,
}

impl NetworkError {
    pub fn new(entity: impl Into<String>, rule: Rule, detail: impl Into<String>) -> Self {
        NetworkError { entity: entity.into(), rule, detail: detail.into() }
    }
}

/// A validated, immutable power network.
///
/// Entity references are resolved to indices once at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Network {
    name: String,
    buses: Vec<Bus>,
    snapshots: Vec<Snapshot>,
    generators: Vec<Generator>,
    lines: Vec<AcLine>,
    links: Vec<HvdcLink>,
    generator_bus: Vec<usize>,
    line_ends: Vec<(usize, usize)>,
    link_ends: Vec<(usize, usize)>,
    component: Vec<usize>,
    reference_bus: Vec<usize>,
}

fn check_finite(entity: &str, what: &str, v: f64) -> Result<(), NetworkError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(NetworkError::new(entity, Rule::NonFinite, what))
    }
}

fn check_nonneg(entity: &str, what: &str, v: f64) -> Result<(), NetworkError> {
    check_finite(entity, what, v)?;
    if v < 0.0 {
        return Err(NetworkError::new(entity, Rule::Negative, what));
    }
    Ok(())
}

impl Network {
    pub fn new(
        name: impl Into<String>,
        buses: Vec<Bus>,
        snapshots: Vec<Snapshot>,
        generators: Vec<Generator>,
        lines: Vec<AcLine>,
        links: Vec<HvdcLink>,
    ) -> Result<Self, NetworkError> {
        let name = name.into();
        if buses.is_empty() {
            return Err(NetworkError::new(name, Rule::Empty, "no buses"));
        }
        if snapshots.is_empty() {
            return Err(NetworkError::new(name, Rule::Empty, "no snapshots"));
        }
        let nt = snapshots.len();

        let mut weight_sum = 0.0;
        let mut snap_ids = BTreeMap::new();
        for s in &snapshots {
            let ent = s.id.to_string();
            check_finite(&ent, "weight", s.weight)?;
            if s.weight <= 0.0 {
                return Err(NetworkError::new(ent, Rule::NonPositiveWeight, "weight"));
            }
            if snap_ids.insert(s.id, ()).is_some() {
                return Err(NetworkError::new(ent, Rule::DuplicateId, "snapshot"));
            }
            weight_sum += s.weight;
        }
        if abs(weight_sum - HOURS_PER_YEAR) > WEIGHT_SUM_RTOL * HOURS_PER_YEAR {
            return Err(NetworkError::new(
                "snapshots",
                Rule::WeightSum,
                alloc::format!("weights sum to {weight_sum}, expected {HOURS_PER_YEAR}"),
            ));
        }

        let mut bus_index = BTreeMap::new();
        for (i, b) in buses.iter().enumerate() {
            if bus_index.insert(b.id.clone(), i).is_some() {
                return Err(NetworkError::new(&b.id, Rule::DuplicateId, "bus"));
            }
            if b.load.len() != nt {
                return Err(NetworkError::new(&b.id, Rule::SeriesLength, "load"));
            }
            for &l in &b.load {
                check_finite(&b.id, "load", l)?;
                if l < 0.0 {
                    return Err(NetworkError::new(&b.id, Rule::NegativeLoad, "load"));
                }
            }
        }
        let resolve = |entity: &str, bus: &str| -> Result<usize, NetworkError> {
            bus_index
                .get(bus)
                .copied()
                .ok_or_else(|| NetworkError::new(entity, Rule::DanglingBus, bus))
        };

        let mut ids = BTreeMap::new();
        let mut generator_bus = Vec::with_capacity(generators.len());
        for g in &generators {
            if ids.insert(("generator", g.id.clone()), ()).is_some() {
                return Err(NetworkError::new(&g.id, Rule::DuplicateId, "generator"));
            }
            generator_bus.push(resolve(&g.id, &g.bus)?);
            check_nonneg(&g.id, "capital_cost", g.capital_cost)?;
            check_finite(&g.id, "marginal_cost", g.marginal_cost)?;
            check_nonneg(&g.id, "capacity", g.capacity)?;
            if let Some(max) = g.capacity_max {
                check_nonneg(&g.id, "capacity_max", max)?;
                if !g.extendable && g.capacity > max {
                    return Err(NetworkError::new(&g.id, Rule::CapacityAboveMax, "capacity"));
                }
            }
            if g.availability.len() != nt {
                return Err(NetworkError::new(&g.id, Rule::SeriesLength, "availability"));
            }
            if g.availability.iter().any(|a| !(0.0..=1.0).contains(a)) {
                return Err(NetworkError::new(&g.id, Rule::AvailabilityRange, "availability"));
            }
        }

        let mut line_ends = Vec::with_capacity(lines.len());
        for l in &lines {
            if ids.insert(("line", l.id.clone()), ()).is_some() {
                return Err(NetworkError::new(&l.id, Rule::DuplicateId, "line"));
            }
            line_ends.push((resolve(&l.id, &l.from)?, resolve(&l.id, &l.to)?));
            check_nonneg(&l.id, "length", l.length)?;
            check_nonneg(&l.id, "capital_cost", l.capital_cost)?;
            check_finite(&l.id, "init_susceptance", l.init_susceptance)?;
            check_finite(&l.id, "init_capacity", l.init_capacity)?;
            if l.init_susceptance <= 0.0 {
                return Err(NetworkError::new(&l.id, Rule::NonPositiveSusceptance, "init_susceptance"));
            }
            if l.init_capacity <= 0.0 {
                return Err(NetworkError::new(&l.id, Rule::NonPositiveCapacity, "init_capacity"));
            }
            if l.init_circuits == 0 {
                return Err(NetworkError::new(&l.id, Rule::ZeroCircuits, "init_circuits"));
            }
            if l.extendable {
                if l.candidates.is_empty() {
                    return Err(NetworkError::new(&l.id, Rule::EmptyCandidates, "candidates"));
                }
                if !l.candidates.contains(&0) {
                    return Err(NetworkError::new(&l.id, Rule::MissingZeroCandidate, "candidates"));
                }
            }
        }

        let mut link_ends = Vec::with_capacity(links.len());
        for k in &links {
            if ids.insert(("link", k.id.clone()), ()).is_some() {
                return Err(NetworkError::new(&k.id, Rule::DuplicateId, "link"));
            }
            link_ends.push((resolve(&k.id, &k.from)?, resolve(&k.id, &k.to)?));
            check_nonneg(&k.id, "capital_cost", k.capital_cost)?;
            check_nonneg(&k.id, "capacity", k.capacity)?;
            if !k.capacity_max.is_nan() && k.capacity_max < 0.0 {
                return Err(NetworkError::new(&k.id, Rule::Negative, "capacity_max"));
            }
            if !k.stub && k.capacity > k.capacity_max {
                return Err(NetworkError::new(&k.id, Rule::CapacityAboveMax, "capacity"));
            }
        }

        let (component, reference_bus) = ac_components(buses.len(), &line_ends);

        Ok(Network {
            name,
            buses,
            snapshots,
            generators,
            lines,
            links,
            generator_bus,
            line_ends,
            link_ends,
            component,
            reference_bus,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn buses(&self) -> &[Bus] {
        &self.buses
    }
    pub fn snapshots(&self) -> &[Snapshot] {
        &self.snapshots
    }
    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }
    pub fn lines(&self) -> &[AcLine] {
        &self.lines
    }
    pub fn links(&self) -> &[HvdcLink] {
        &self.links
    }
    pub fn snapshot_count(&self) -> usize {
        self.snapshots.len()
    }
    pub fn weight(&self, t: usize) -> f64 {
        self.snapshots[t].weight
    }
    pub fn generator_bus(&self, k: usize) -> usize {
        self.generator_bus[k]
    }
    /// `(from, to)` bus indices of AC line `l`.
    pub fn line_ends(&self, l: usize) -> (usize, usize) {
        self.line_ends[l]
    }
    pub fn link_ends(&self, k: usize) -> (usize, usize) {
        self.link_ends[k]
    }
    /// Index of the AC-connected component containing `bus`.
    pub fn component_of(&self, bus: usize) -> usize {
        self.component[bus]
    }
    /// Reference (angle-pinned) bus of every AC component, lowest index first.
    pub fn reference_buses(&self) -> &[usize] {
        &self.reference_bus
    }
    pub fn is_reference_bus(&self, bus: usize) -> bool {
        self.reference_bus[self.component[bus]] == bus
    }
    pub fn extendable_lines(&self) -> impl Iterator<Item = usize> + '_ {
        self.lines.iter().enumerate().filter(|(_, l)| l.extendable).map(|(i, _)| i)
    }
    pub fn bus_index(&self, id: &str) -> Option<usize> {
        self.buses.iter().position(|b| b.id == id)
    }

    /// Total weighted demand energy, MWh per year.
    pub fn demand_energy(&self) -> f64 {
        let mut e = 0.0;
        for b in &self.buses {
            for (t, l) in b.load.iter().enumerate() {
                e += self.snapshots[t].weight * l;
            }
        }
        e
    }

    /// Existing AC transmission volume `sum F * length` in MWkm.
    pub fn original_volume(&self) -> f64 {
        self.lines.iter().map(|l| l.init_capacity * l.length).sum()
    }

    /// Buses with positive load that have no generator, line or link attached.
    pub fn isolated_load_buses(&self) -> Vec<usize> {
        let mut attached = vec![false; self.buses.len()];
        for &b in &self.generator_bus {
            attached[b] = true;
        }
        for &(i, j) in self.line_ends.iter().chain(self.link_ends.iter()) {
            attached[i] = true;
            attached[j] = true;
        }
        (0..self.buses.len())
            .filter(|&b| !attached[b] && self.buses[b].load.iter().any(|&l| l > 0.0))
            .collect()
    }
}

/// Union-find over AC lines; returns component id per bus and the lowest bus
/// index of each component.
fn ac_components(n: usize, ends: &[(usize, usize)]) -> (Vec<usize>, Vec<usize>) {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(i, j) in ends {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            parent[hi] = lo;
        }
    }
    let mut component = vec![usize::MAX; n];
    let mut reference = Vec::new();
    let mut root_to_comp = BTreeMap::new();
    for bus in 0..n {
        let root = find(&mut parent, bus);
        let c = *root_to_comp.entry(root).or_insert_with(|| {
            reference.push(bus);
            reference.len() - 1
        });
        component[bus] = c;
    }
    (component, reference)
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum AlgebraError {
    #[error("negative number of added circuits: {0}")]
    NegativeCircuits(f64),
    #[error("expected {expected} circuit values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

/// Capacity of `line` after adding `circuits` parallel circuits, in MW.
pub fn capacity_from_circuits(line: &AcLine, circuits: f64) -> Result<f64, AlgebraError> {
    if !(circuits >= 0.0) {
        return Err(AlgebraError::NegativeCircuits(circuits));
    }
    Ok(line.circuit_factor(circuits) * line.init_capacity)
}

/// Susceptance of `line` after adding `circuits` parallel circuits.
///
/// Scales with the same factor as [`capacity_from_circuits`], so the ratio
/// of susceptance to capacity is fixed per line.
pub fn susceptance_from_circuits(line: &AcLine, circuits: f64) -> Result<f64, AlgebraError> {
    if !(circuits >= 0.0) {
        return Err(AlgebraError::NegativeCircuits(circuits));
    }
    Ok(line.circuit_factor(circuits) * line.init_susceptance)
}

/// Added AC volume over existing AC volume, both in MWkm.
///
/// `circuits` holds the added circuits per line, in line order.
pub fn expansion_volume_ratio(network: &Network, circuits: &[f64]) -> Result<f64, AlgebraError> {
    let lines = network.lines();
    if circuits.len() != lines.len() {
        return Err(AlgebraError::LengthMismatch { expected: lines.len(), got: circuits.len() });
    }
    let mut added = 0.0;
    for (line, &gamma) in lines.iter().zip(circuits) {
        let cap = capacity_from_circuits(line, gamma)?;
        added += (cap - line.init_capacity) * line.length;
    }
    let original = network.original_volume();
    if original <= 0.0 {
        return Ok(0.0);
    }
    Ok(added / original)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use alloc::borrow::ToOwned;

    pub fn line(id: &str, from: &str, to: &str, circuits: u32, cap: f64, b: f64) -> AcLine {
        AcLine {
            id: id.to_owned(),
            from: from.to_owned(),
            to: to.to_owned(),
            length: 100.0,
            init_circuits: circuits,
            init_capacity: cap,
            init_susceptance: b,
            capital_cost: 1000.0,
            extendable: true,
            candidates: vec![0, 1, 2],
        }
    }

    pub fn ocgt(id: &str, bus: &str, nt: usize) -> Generator {
        Generator {
            id: id.to_owned(),
            bus: bus.to_owned(),
            tech: Technology::Ocgt,
            capital_cost: 100.0,
            marginal_cost: 50.0,
            capacity_max: None,
            capacity: 0.0,
            extendable: true,
            renewable: false,
            availability: vec![1.0; nt],
        }
    }

    pub fn bus(id: &str, load: Vec<f64>) -> Bus {
        Bus { id: id.to_owned(), load }
    }

    pub fn snapshots(n: usize) -> Vec<Snapshot> {
        (0..n).map(|i| Snapshot { id: i as i64, weight: HOURS_PER_YEAR / n as f64 }).collect()
    }

    /// Three buses in a ring, wind at `a`, gas everywhere, two snapshots.
    pub fn triangle() -> Network {
        let mut wind = ocgt("wind", "a", 2);
        wind.tech = Technology::WindOnshore;
        wind.renewable = true;
        wind.capital_cost = 60_000.0;
        wind.marginal_cost = 0.0;
        wind.availability = vec![0.9, 0.3];
        let gas = |id: &str, bus: &str| {
            let mut g = ocgt(id, bus, 2);
            g.capital_cost = 40_000.0;
            g.marginal_cost = 80.0;
            g
        };
        let mut lines = vec![
            line("ab", "a", "b", 1, 100.0, 10.0),
            line("bc", "b", "c", 1, 100.0, 10.0),
            line("ca", "c", "a", 2, 150.0, 20.0),
        ];
        for l in &mut lines {
            l.capital_cost = 200.0;
        }
        Network::new(
            "triangle",
            vec![bus("a", vec![20.0, 40.0]), bus("b", vec![300.0, 200.0]), bus("c", vec![100.0, 150.0])],
            snapshots(2),
            vec![wind, gas("gas_a", "a"), gas("gas_b", "b"), gas("gas_c", "c")],
            lines,
            vec![],
        )
        .unwrap()
    }

    pub fn single_bus() -> Network {
        Network::new(
            "single",
            vec![bus("b0", vec![100.0])],
            snapshots(1),
            vec![ocgt("g0", "b0", 1)],
            vec![],
            vec![],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use alloc::borrow::ToOwned;

    #[test]
    fn capacity_examples() {
        let l = line("l", "a", "b", 2, 1000.0, 50.0);
        assert_eq!(capacity_from_circuits(&l, 1.0).unwrap(), 1500.0);
        assert_eq!(capacity_from_circuits(&l, 0.0).unwrap(), 1000.0);
        let l1 = line("l", "a", "b", 1, 500.0, 50.0);
        assert_eq!(capacity_from_circuits(&l1, 2.0).unwrap(), 1500.0);
        assert!(matches!(
            capacity_from_circuits(&l, -1.0),
            Err(AlgebraError::NegativeCircuits(_))
        ));
    }

    #[test]
    fn susceptance_examples() {
        let l = line("l", "a", "b", 2, 1000.0, 50.0);
        assert_eq!(susceptance_from_circuits(&l, 1.0).unwrap(), 75.0);
        assert_eq!(susceptance_from_circuits(&l, 0.0).unwrap(), 50.0);
        assert!((susceptance_from_circuits(&l, 0.8).unwrap() - 70.0).abs() < 1e-12);
        assert!(susceptance_from_circuits(&l, -0.1).is_err());
    }

    #[test]
    fn volume_ratio_single_line() {
        let net = Network::new(
            "two",
            vec![bus("a", vec![0.0]), bus("b", vec![0.0])],
            snapshots(1),
            vec![],
            vec![line("l", "a", "b", 2, 1000.0, 50.0)],
            vec![],
        )
        .unwrap();
        assert_eq!(expansion_volume_ratio(&net, &[0.0]).unwrap(), 0.0);
        assert!((expansion_volume_ratio(&net, &[1.0]).unwrap() - 0.5).abs() < 1e-15);
        assert!(expansion_volume_ratio(&net, &[]).is_err());
    }

    #[test]
    fn weight_sum_rule() {
        let mut snaps = snapshots(2);
        snaps[0].weight = 4000.0;
        snaps[1].weight = 4000.0;
        let err = Network::new("w", vec![bus("a", vec![1.0, 1.0])], snaps, vec![], vec![], vec![])
            .unwrap_err();
        assert_eq!(err.rule, Rule::WeightSum);
        assert_eq!(err.rule.name(), "weight-sum");
    }

    #[test]
    fn semantic_errors_name_entity() {
        let mut l = line("bad", "a", "zz", 1, 100.0, 10.0);
        let err = Network::new(
            "n",
            vec![bus("a", vec![1.0])],
            snapshots(1),
            vec![],
            vec![l.clone()],
            vec![],
        )
        .unwrap_err();
        assert_eq!((err.entity.as_str(), err.rule), ("bad", Rule::DanglingBus));

        l.to = "a".to_owned();
        l.init_susceptance = 0.0;
        let err = Network::new("n", vec![bus("a", vec![1.0])], snapshots(1), vec![], vec![l.clone()], vec![])
            .unwrap_err();
        assert_eq!(err.rule, Rule::NonPositiveSusceptance);

        l.init_susceptance = 1.0;
        l.candidates = vec![1, 2];
        let err = Network::new("n", vec![bus("a", vec![1.0])], snapshots(1), vec![], vec![l], vec![])
            .unwrap_err();
        assert_eq!(err.rule, Rule::MissingZeroCandidate);
    }

    #[test]
    fn availability_checked() {
        let mut g = ocgt("g", "a", 1);
        g.availability = vec![1.2];
        let err = Network::new("n", vec![bus("a", vec![1.0])], snapshots(1), vec![g], vec![], vec![])
            .unwrap_err();
        assert_eq!(err.rule, Rule::AvailabilityRange);
    }

    #[test]
    fn components_and_reference() {
        let net = Network::new(
            "c",
            vec![bus("a", vec![0.0]), bus("b", vec![0.0]), bus("c", vec![0.0]), bus("d", vec![1.0])],
            snapshots(1),
            vec![],
            vec![line("l1", "c", "b", 1, 1.0, 1.0)],
            vec![],
        )
        .unwrap();
        assert_eq!(net.reference_buses(), &[0, 1, 3]);
        assert_eq!(net.component_of(2), net.component_of(1));
        assert!(net.is_reference_bus(1));
        assert!(!net.is_reference_bus(2));
        assert_eq!(net.isolated_load_buses(), vec![3]);
    }

    #[test]
    fn config_validation() {
        let mut c = ScenarioConfig::default();
        assert!(c.validate().is_ok());
        c.volume_cap = 1.5;
        assert!(c.validate().is_err());
        c = ScenarioConfig::default();
        c.convergence_tol = 0.0;
        assert!(c.validate().is_err());
        c = ScenarioConfig::default();
        c.max_iterations = 0;
        assert!(c.validate().is_err());
    }
}
