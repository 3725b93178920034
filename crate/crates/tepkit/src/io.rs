//! JSON documents: networks, scenario configs and solutions.

use serde::{Deserialize, Serialize};
use tepkit_core::lopf::ExpansionSolution;
use tepkit_core::netmodel::{AcLine, Bus, Generator, HvdcLink, Network, NetworkError, ScenarioConfig, Snapshot};

pub const NETWORK_FORMAT: &str = "tepkit-net-1";

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    /// The document is not valid JSON or does not match the schema.
    #[error("schema violation: {0}")]
    Schema(#[from] serde_json::Error),
    #[error("schema violation: unsupported format {found:?}, expected {NETWORK_FORMAT:?}")]
    Format { found: String },
    /// The document parsed but breaks a model invariant.
    #[error("semantic violation: {0}")]
    Semantic(#[from] NetworkError),
}

impl LoadError {
    /// Name of the violated rule for semantic errors.
    pub fn rule(&self) -> Option<&'static str> {
        match self {
            LoadError::Semantic(e) => Some(e.rule.name()),
            _ => None,
        }
    }

    pub fn entity(&self) -> Option<&str> {
        match self {
            LoadError::Semantic(e) => Some(&e.entity),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkDoc {
    pub format: String,
    #[serde(default)]
    pub name: String,
    pub buses: Vec<Bus>,
    pub snapshots: Vec<Snapshot>,
    pub generators: Vec<Generator>,
    #[serde(default)]
    pub lines: Vec<AcLine>,
    #[serde(default)]
    pub links: Vec<HvdcLink>,
}

impl NetworkDoc {
    pub fn from_network(n: &Network) -> Self {
        NetworkDoc {
            format: NETWORK_FORMAT.into(),
            name: n.name().into(),
            buses: n.buses().to_vec(),
            snapshots: n.snapshots().to_vec(),
            generators: n.generators().to_vec(),
            lines: n.lines().to_vec(),
            links: n.links().to_vec(),
        }
    }

    pub fn into_network(self) -> Result<Network, LoadError> {
        if self.format != NETWORK_FORMAT {
            return Err(LoadError::Format { found: self.format });
        }
        Ok(Network::new(self.name, self.buses, self.snapshots, self.generators, self.lines, self.links)?)
    }
}

pub fn load_network(bytes: &[u8]) -> Result<Network, LoadError> {
    serde_json::from_slice::<NetworkDoc>(bytes)?.into_network()
}

pub fn network_to_json(network: &Network) -> String {
    let mut s = serde_json::to_string_pretty(&NetworkDoc::from_network(network)).expect("network serializes");
    s.push('\n');
    s
}

/// Parses a config where every field is optional, then validates it.
pub fn load_config(bytes: &[u8]) -> Result<ScenarioConfig, LoadError> {
    let config: ScenarioConfig = serde_json::from_slice(bytes)?;
    config.validate()?;
    Ok(config)
}

pub fn load_solution(bytes: &[u8]) -> Result<ExpansionSolution, LoadError> {
    Ok(serde_json::from_slice(bytes)?)
}

/// Checks that a solution's vectors are sized for `network`.
pub fn check_solution_shape(network: &Network, sol: &ExpansionSolution) -> Result<(), String> {
    let nt = network.snapshot_count();
    let check = |what: &str, got: usize, want: usize| {
        if got == want {
            Ok(())
        } else {
            Err(format!("{what}: expected {want} entries, got {got}"))
        }
    };
    let check_series = |what: &str, rows: &[Vec<f64>], want: usize| {
        check(what, rows.len(), want)?;
        rows.iter().try_for_each(|r| check(what, r.len(), nt))
    };
    let (ng, nl, nk) = (network.generators().len(), network.lines().len(), network.links().len());
    check("generator_capacity", sol.generator_capacity.len(), ng)?;
    check_series("dispatch", &sol.dispatch, ng)?;
    check("line_capacity", sol.line_capacity.len(), nl)?;
    check("circuits", sol.circuits.len(), nl)?;
    check("susceptance", sol.susceptance.len(), nl)?;
    check_series("line_flow", &sol.line_flow, nl)?;
    check("link_capacity", sol.link_capacity.len(), nk)?;
    check_series("link_flow", &sol.link_flow, nk)?;
    check_series("angle", &sol.angle, network.buses().len())
}
