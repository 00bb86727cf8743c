//! CSV and JSON emitters for analysis and simulation results.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};

use pagsim_core::dse::SweepCurve;
use pagsim_core::partition::SubgraphRecord;
use pagsim_core::report::{ActivityReport, SimReport};
use pagsim_core::table::RankedPatterns;

/// Pattern ranking as CSV: rank, bits-hex, frequency, share,
/// cumulative-share.
pub fn rank_csv(ranked: &RankedPatterns) -> String {
    let total = ranked.total_subgraphs() as f64;
    let mut out = String::from("rank,bits_hex,frequency,share,cumulative_share\n");
    let mut cum = 0u64;
    for (i, &(pattern, freq)) in ranked.entries.iter().enumerate() {
        cum += freq;
        out.push_str(&format!(
            "{},{:x},{},{},{}\n",
            i + 1,
            pattern.bits,
            freq,
            freq as f64 / total,
            cum as f64 / total
        ));
    }
    out
}

/// Subgraph records as CSV: base_src, base_dst, bits-hex.
pub fn records_csv(records: &[SubgraphRecord]) -> String {
    let mut out = String::from("base_src,base_dst,bits_hex\n");
    for r in records {
        out.push_str(&format!("{},{},{:x}\n", r.base_src, r.base_dst, r.pattern.bits));
    }
    out
}

/// Sweep curve as CSV: N, speedup, energy_J, configures, max_cell_writes.
pub fn sweep_csv(curve: &SweepCurve) -> String {
    let mut out = String::from("N,speedup,energy_J,configures,max_cell_writes\n");
    for p in &curve.points {
        out.push_str(&format!(
            "{},{},{:e},{},{}\n",
            p.n_static, p.speedup, p.energy_j, p.runtime_configures, p.max_cell_writes_dynamic
        ));
    }
    out
}

/// Activity series as CSV: engine, step, read_activity, write_activity.
pub fn activity_csv(activity: &ActivityReport) -> String {
    let mut out = String::from("engine,step,read_activity,write_activity\n");
    for (e, (reads, writes)) in activity
        .read_activity
        .iter()
        .zip(&activity.write_activity)
        .enumerate()
    {
        for (step, (r, w)) in reads.iter().zip(writes).enumerate() {
            out.push_str(&format!("{e},{step},{r},{w}\n"));
        }
    }
    out
}

/// Stable pretty-printed JSON with a trailing newline; field order is
/// fixed by the report types so identical runs serialize identically.
pub fn report_json(report: &SimReport) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}

pub fn write(path: &Path, content: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(path, content).with_context(|| format!("writing {}", path.display()))
}
