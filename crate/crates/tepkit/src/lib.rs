//! File formats, the experiment runner and a wall clock for `tepkit-core`.

use std::time::Instant;

use tepkit_core::bench::{run_experiment, ExperimentReport};
use tepkit_core::Clock;

pub mod io;
pub mod manifest;
pub mod output;

pub use manifest::Manifest;

/// Seconds since construction.
#[derive(Clone, Copy, Debug)]
pub struct StdClock(Instant);

impl StdClock {
    pub fn new() -> Self {
        StdClock(Instant::now())
    }
}

impl Default for StdClock {
    fn default() -> Self {
        Self::new()
    }
}

impl Clock for StdClock {
    fn now(&self) -> f64 {
        self.0.elapsed().as_secs_f64()
    }
}

/// Runs a manifest and writes its report. Methods run one after another.
pub fn run_manifest(manifest: &Manifest) -> anyhow::Result<ExperimentReport> {
    let network = manifest.load_network()?;
    let report = run_experiment(&network, &manifest.config, &manifest.methods, &StdClock::new());
    output::write_report(&manifest.output, &report)?;
    Ok(report)
}
