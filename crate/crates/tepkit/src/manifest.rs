use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};
use tepkit_core::bench::{generate_synthetic_network, Method, SyntheticSpec};
use tepkit_core::netmodel::{Network, ScenarioConfig};

use crate::io::load_network;

/// What to run, on which network, and where to write the results.
///
/// Exactly one of `network` and `synthetic` must be given. Relative paths are
/// resolved against the manifest's directory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default)]
    pub network: Option<PathBuf>,
    #[serde(default)]
    pub synthetic: Option<SyntheticSpec>,
    pub methods: Vec<Method>,
    /// Fields not given keep their defaults.
    #[serde(default)]
    pub config: ScenarioConfig,
    pub output: PathBuf,
}

impl Manifest {
    pub fn from_file(path: &Path) -> anyhow::Result<Self> {
        let bytes = std::fs::read(path).with_context(|| format!("reading manifest {}", path.display()))?;
        let mut m: Manifest =
            serde_json::from_slice(&bytes).with_context(|| format!("parsing manifest {}", path.display()))?;
        let base = path.parent().unwrap_or(Path::new("."));
        m.network = m.network.map(|p| base.join(p));
        m.output = base.join(&m.output);
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.methods.is_empty() {
            bail!("manifest lists no methods");
        }
        match (&self.network, &self.synthetic) {
            (Some(_), Some(_)) => bail!("manifest gives both a network file and a synthetic spec"),
            (None, None) => bail!("manifest gives neither a network file nor a synthetic spec"),
            (None, Some(s)) if s.buses < 1 || s.snapshots < 1 => {
                bail!("synthetic spec needs at least one bus and one snapshot")
            }
            _ => {}
        }
        self.config.validate()?;
        Ok(())
    }

    pub fn load_network(&self) -> anyhow::Result<Network> {
        match (&self.network, &self.synthetic) {
            (Some(p), _) => {
                let bytes = std::fs::read(p).with_context(|| format!("reading network {}", p.display()))?;
                load_network(&bytes).with_context(|| format!("loading network {}", p.display()))
            }
            (None, Some(s)) => Ok(generate_synthetic_network(s)),
            (None, None) => bail!("no network source"),
        }
    }
}
