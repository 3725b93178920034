use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use tepkit::io::{check_solution_shape, load_config, load_network, load_solution, network_to_json};
use tepkit::{run_manifest, Manifest};
use tepkit_core::bench::{brute_force_optimum, generate_synthetic_network, SyntheticSpec, Topology, ENUMERATION_CAP};
use tepkit_core::heuristics::verify_minlp_feasibility;
use tepkit_core::netmodel::{Network, ScenarioConfig};

#[derive(Parser)]
#[command(name = "tepkit", version, about = "Transmission expansion planning: exact MILP and SLP heuristics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every method of a manifest and write the report.
    Run {
        #[arg(long)]
        manifest: PathBuf,
    },
    /// Generate a synthetic network document.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        buses: usize,
        #[arg(long)]
        snapshots: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        tree: bool,
        #[arg(long)]
        max_extendable: Option<usize>,
        #[arg(long)]
        wind_skew: Option<f64>,
    },
    /// Brute-force optimum over all candidate combinations.
    Oracle {
        #[arg(long)]
        network: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write the solution here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = ENUMERATION_CAP)]
        cap: u64,
    },
    /// Check a solution for integer circuits and consistent physics.
    Verify {
        #[arg(long)]
        network: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

fn read_network(path: &Path) -> anyhow::Result<Network> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    load_network(&bytes).with_context(|| format!("loading network {}", path.display()))
}

fn read_config(path: Option<&Path>) -> anyhow::Result<ScenarioConfig> {
    match path {
        Some(p) => {
            let bytes = std::fs::read(p).with_context(|| format!("reading {}", p.display()))?;
            load_config(&bytes).with_context(|| format!("loading config {}", p.display()))
        }
        None => Ok(ScenarioConfig::default()),
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.6e}")).unwrap_or_else(|| "-".into())
}

fn execute(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Run { manifest } => {
            let m = Manifest::from_file(&manifest)?;
            let report = run_manifest(&m)?;
            if let Some(r) = &report.reference {
                println!("reference: {} = {:.6e}", r.label, r.value);
            }
            for rec in &report.records {
                match &rec.error {
                    None => println!(
                        "{:<38} obj {}  dev {}  {:>8.3}s  feasible={}",
                        rec.method.code(),
                        fmt_opt(rec.objective),
                        fmt_opt(rec.deviation),
                        rec.wall_time,
                        rec.minlp_feasible
                    ),
                    Some(e) => println!("{:<38} FAILED: {e}", rec.method.code()),
                }
            }
            println!("report written to {}", m.output.display());
            Ok(if report.all_completed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Gen { seed, buses, snapshots, out, tree, max_extendable, wind_skew } => {
            let mut spec = SyntheticSpec::new(seed, buses, snapshots);
            if tree {
                spec.topology = Topology::Tree;
            }
            spec.max_extendable = max_extendable;
            if let Some(s) = wind_skew {
                spec.wind_skew = s;
            }
            let net = generate_synthetic_network(&spec);
            std::fs::write(&out, network_to_json(&net)).with_context(|| format!("writing {}", out.display()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { network, config, out, cap } => {
            let net = read_network(&network)?;
            let cfg = read_config(config.as_deref())?;
            let bf = brute_force_optimum(&net, &cfg, cap)?;
            eprintln!(
                "optimum {:.6e} EUR/a, circuits {:?} ({} of {} combinations feasible)",
                bf.solution.objective, bf.solution.circuits, bf.feasible, bf.combinations
            );
            let json = serde_json::to_string_pretty(&bf.solution)? + "\n";
            match out {
                Some(p) => std::fs::write(&p, json).with_context(|| format!("writing {}", p.display()))?,
                None => print!("{json}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { network, solution, config, tol } => {
            let net = read_network(&network)?;
            let cfg = read_config(config.as_deref())?;
            let bytes = std::fs::read(&solution).with_context(|| format!("reading {}", solution.display()))?;
            let sol = load_solution(&bytes)?;
            check_solution_shape(&net, &sol).map_err(|e| anyhow::anyhow!("solution does not match network: {e}"))?;
            let (ok, violations) = verify_minlp_feasibility(&net, &cfg, &sol, tol);
            for v in &violations {
                println!("{v}");
            }
            println!("{}", if ok { "MINLP-feasible" } else { "not MINLP-feasible" });
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
