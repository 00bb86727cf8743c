//! Simulation reports and derived metrics: energy breakdown, speedup,
//! and circuit lifetime under limited write endurance.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::engine::EngineKind;
use crate::error::{Error, Result};
use crate::sched::{ArchParams, ReplacementPolicy};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub crossbar_read_j: f64,
    pub crossbar_write_j: f64,
    pub sense_adc_j: f64,
    pub buffer_j: f64,
    pub total_j: f64,
}

impl EnergyReport {
    pub fn from_parts(read: f64, write: f64, sense_adc: f64, buffer: f64) -> Self {
        EnergyReport {
            crossbar_read_j: read,
            crossbar_write_j: write,
            sense_adc_j: sense_adc,
            buffer_j: buffer,
            total_j: read + write + sense_adc + buffer,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EngineReport {
    pub id: u32,
    pub kind: EngineKind,
    /// Bit-level crossbar reads.
    pub reads: u64,
    /// Bit-level crossbar writes.
    pub writes: u64,
    pub configures: u64,
    pub mvms: u64,
    pub max_cell_writes: u64,
}

/// Normalized sliding-window activity (0-100) per engine, one series
/// entry per window position over the run's execution steps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActivityReport {
    pub window: u64,
    pub read_activity: Vec<Vec<f64>>,
    pub write_activity: Vec<Vec<f64>>,
}

/// Everything a completed run reports. Serialization uses a fixed field
/// order so identical runs produce byte-identical JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub algo: String,
    pub num_vertices: u32,
    pub num_edges: u64,
    pub arch: ArchParams,
    pub policy: ReplacementPolicy,
    pub seed: u64,
    pub diff_writes: bool,
    pub iterations: u64,
    /// Records in the subgraph table (dispatches per iteration).
    pub subgraph_count: u64,
    pub distinct_patterns: u64,
    pub static_patterns: u64,
    pub static_coverage: f64,
    pub subgraphs_static: u64,
    pub subgraphs_dynamic: u64,
    pub init_configures: u64,
    pub runtime_configures: u64,
    /// Highest per-cell write count over dynamic crossbars for this run.
    pub max_cell_writes_dynamic: u64,
    pub total_latency_s: f64,
    pub energy: EnergyReport,
    pub engines: Vec<EngineReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub activity: Option<ActivityReport>,
}

/// Endurance model: cells tolerate `endurance` write cycles; the
/// workload runs once every `interval_s` seconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LifetimeModel {
    pub endurance: f64,
    pub interval_s: f64,
}

impl Default for LifetimeModel {
    fn default() -> Self {
        LifetimeModel { endurance: 1e8, interval_s: 3600.0 }
    }
}

impl LifetimeModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.endurance > 0.0) || !(self.interval_s > 0.0) {
            return Err(Error::Config(
                "endurance and execution interval must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Lifetime in seconds until the most-written dynamic cell exhausts its
/// endurance: (E / w) x T_exec, with w the maximum per-cell writes per
/// execution. Static engines are excluded; they are written once at
/// initialization. `None` means unbounded (no dynamic writes at all).
pub fn lifetime(report: &SimReport, model: &LifetimeModel) -> Result<Option<f64>> {
    model.validate()?;
    let w = report.max_cell_writes_dynamic;
    if w == 0 {
        return Ok(None);
    }
    Ok(Some(model.endurance / w as f64 * model.interval_s))
}

/// Speedup of run `a` over run `b`: latency(b) / latency(a). Both runs
/// must be the same workload and algorithm.
pub fn speedup(a: &SimReport, b: &SimReport) -> Result<f64> {
    if a.algo != b.algo || a.num_vertices != b.num_vertices || a.num_edges != b.num_edges {
        return Err(Error::Config(
            "speedup requires reports for the same workload and algorithm".into(),
        ));
    }
    Ok(b.total_latency_s / a.total_latency_s)
}

pub const SECONDS_PER_YEAR: f64 = 365.25 * 24.0 * 3600.0;

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn dummy_report(latency: f64, w: u64) -> SimReport {
        SimReport {
            algo: String::from("bfs"),
            num_vertices: 10,
            num_edges: 20,
            arch: ArchParams::default(),
            policy: ReplacementPolicy::Lru,
            seed: 0,
            diff_writes: false,
            iterations: 3,
            subgraph_count: 5,
            distinct_patterns: 2,
            static_patterns: 1,
            static_coverage: 0.5,
            subgraphs_static: 8,
            subgraphs_dynamic: 7,
            init_configures: 1,
            runtime_configures: 4,
            max_cell_writes_dynamic: w,
            total_latency_s: latency,
            energy: EnergyReport::from_parts(1e-9, 2e-9, 3e-10, 4e-10),
            engines: vec![],
            activity: None,
        }
    }

    #[test]
    fn lifetime_formula() {
        let model = LifetimeModel { endurance: 1e8, interval_s: 3600.0 };
        let lt = lifetime(&dummy_report(1.0, 2000), &model).unwrap().unwrap();
        // 1e8 / 2000 executions * 1 h = 50,000 h
        assert!((lt - 50_000.0 * 3600.0).abs() < 1e-6);
        assert!(lt / SECONDS_PER_YEAR > 5.0 && lt / SECONDS_PER_YEAR < 6.0);
    }

    #[test]
    fn lifetime_unbounded_without_dynamic_writes() {
        let model = LifetimeModel::default();
        assert_eq!(lifetime(&dummy_report(1.0, 0), &model).unwrap(), None);
    }

    #[test]
    fn lifetime_rejects_bad_model() {
        let model = LifetimeModel { endurance: 0.0, interval_s: 1.0 };
        assert!(lifetime(&dummy_report(1.0, 1), &model).is_err());
    }

    #[test]
    fn speedup_identity_and_ratio() {
        let a = dummy_report(1.0, 0);
        assert_eq!(speedup(&a, &a).unwrap(), 1.0);
        let slow = dummy_report(2.5, 0);
        assert_eq!(speedup(&a, &slow).unwrap(), 2.5);
    }

    #[test]
    fn speedup_rejects_mismatched_workloads() {
        let a = dummy_report(1.0, 0);
        let mut b = dummy_report(1.0, 0);
        b.num_edges = 99;
        assert!(speedup(&a, &b).is_err());
    }

    #[test]
    fn energy_total_is_sum_of_parts() {
        let e = EnergyReport::from_parts(0.1, 0.2, 0.3, 0.4);
        assert_eq!(
            e.total_j,
            e.crossbar_read_j + e.crossbar_write_j + e.sense_adc_j + e.buffer_j
        );
    }
}
