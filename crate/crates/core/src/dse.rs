//! Design-space exploration over the static/dynamic engine split.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::cost::CostModel;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::partition;
use crate::program::Algo;
use crate::report::{speedup, SimReport};
use crate::sched::{run, ArchParams, SimOptions};
use crate::table::{assign_engines, build_subgraph_table, rank_patterns};

/// One sweep sample: speedup is relative to the all-dynamic (N = 0)
/// baseline of the same sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub n_static: u32,
    pub speedup: f64,
    pub total_latency_s: f64,
    pub energy_j: f64,
    pub runtime_configures: u64,
    pub max_cell_writes_dynamic: u64,
    pub static_coverage: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCurve {
    pub points: Vec<SweepPoint>,
    /// N with the highest speedup (lowest N wins ties).
    pub best_n: u32,
}

/// Sweeps the number of static engines. Partitioning and pattern ranking
/// are N-independent, so preprocessing runs once; engine assignment and
/// simulation repeat per N. The N = 0 baseline is always simulated for
/// normalization, whether or not 0 is in `n_values`.
pub fn sweep_static(
    g: &Graph,
    base: &ArchParams,
    opts: &SimOptions,
    cost: &CostModel,
    algo: Algo,
    n_values: &[u32],
) -> Result<(SweepCurve, Vec<SimReport>)> {
    if n_values.is_empty() {
        return Err(Error::Config("sweep needs at least one N value".into()));
    }
    for &n in n_values {
        if n > base.t_engines {
            return Err(Error::Config(alloc::format!(
                "N={n} exceeds T={}",
                base.t_engines
            )));
        }
    }
    let records = partition(g, base.c)?;
    let ranked = rank_patterns(&records);
    let st = build_subgraph_table(&records, base.order);

    let simulate = |n: u32| -> Result<SimReport> {
        let ct = assign_engines(&ranked, n, base.m_crossbars)?;
        let arch = ArchParams { n_static: n, ..*base };
        let mut program = algo.make_program();
        let (_, report) = run(g, &ct, &st, &arch, opts, cost, program.as_mut())?;
        Ok(report)
    };

    let baseline = simulate(0)?;
    let mut points = Vec::with_capacity(n_values.len());
    let mut reports = Vec::with_capacity(n_values.len());
    for &n in n_values {
        let report = if n == 0 { baseline.clone() } else { simulate(n)? };
        points.push(SweepPoint {
            n_static: n,
            speedup: speedup(&report, &baseline)?,
            total_latency_s: report.total_latency_s,
            energy_j: report.energy.total_j,
            runtime_configures: report.runtime_configures,
            max_cell_writes_dynamic: report.max_cell_writes_dynamic,
            static_coverage: report.static_coverage,
        });
        reports.push(report);
    }
    let best_n = points
        .iter()
        .max_by(|a, b| a.speedup.partial_cmp(&b.speedup).unwrap())
        .map(|p| p.n_static)
        .unwrap();
    Ok((SweepCurve { points, best_n }, reports))
}
