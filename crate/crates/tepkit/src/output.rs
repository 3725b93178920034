//! Report files.

use std::fs;
use std::path::Path;

use anyhow::Context;
use tepkit_core::bench::{report_csv, ExperimentReport};

/// Writes `report.csv`, `report.json`, `solutions/<method>.json` and
/// `trace/<method>.csv` under `dir`.
pub fn write_report(dir: &Path, report: &ExperimentReport) -> anyhow::Result<()> {
    fs::create_dir_all(dir.join("solutions"))?;
    fs::create_dir_all(dir.join("trace"))?;
    fs::write(dir.join("report.csv"), report_csv(report)).context("writing report.csv")?;
    let json = serde_json::to_string_pretty(report)?;
    fs::write(dir.join("report.json"), json + "\n").context("writing report.json")?;
    for rec in &report.records {
        let code = rec.method.code();
        if let Some(sol) = &rec.solution {
            let json = serde_json::to_string_pretty(sol)?;
            fs::write(dir.join("solutions").join(format!("{code}.json")), json + "\n")?;
        }
        if let Some(trace) = &rec.trace {
            fs::write(dir.join("trace").join(format!("{code}.csv")), trace)?;
        }
    }
    Ok(())
}

/// `report.csv` with the wall-time column removed.
pub fn strip_wall_time(csv: &str) -> String {
    let mut lines = csv.lines();
    let Some(header) = lines.next() else { return String::new() };
    let col = header.split(',').position(|c| c == "wall_time_s");
    let keep = |line: &str| -> String {
        line.split(',')
            .enumerate()
            .filter(|&(i, _)| Some(i) != col)
            .map(|(_, v)| v)
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut out = keep(header);
    out.push('\n');
    for l in lines {
        out.push_str(&keep(l));
        out.push('\n');
    }
    out
}
