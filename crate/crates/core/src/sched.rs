//! Streaming-apply execution: initialize static engines once, stream
//! destination-keyed groups of subgraphs, dispatch to static or dynamic
//! engines, and compose latency as parallel engines with serialized
//! per-engine queues.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cost::CostModel;
use crate::engine::{CostBreakdown, EngineKind, EngineState};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Pattern;
use crate::program::VertexProgram;
use crate::report::{ActivityReport, EnergyReport, EngineReport, SimReport};
use crate::table::{check_consistency, ConfigTable, Placement, SubgraphTable};

pub use crate::table::ExecOrder;

/// Architecture parameters: window/crossbar size C, total engines T,
/// static engines N, crossbars per engine M, and the execution order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArchParams {
    pub c: u8,
    pub t_engines: u32,
    pub n_static: u32,
    pub m_crossbars: u32,
    pub order: ExecOrder,
}

impl Default for ArchParams {
    fn default() -> Self {
        ArchParams {
            c: 4,
            t_engines: 32,
            n_static: 16,
            m_crossbars: 1,
            order: ExecOrder::ColumnMajor,
        }
    }
}

impl ArchParams {
    pub fn validate(&self) -> Result<()> {
        if !(2..=8).contains(&self.c) {
            return Err(Error::Config(format!("crossbar size {} outside [2, 8]", self.c)));
        }
        if self.t_engines == 0 {
            return Err(Error::Config("need at least one graph engine".into()));
        }
        if self.n_static > self.t_engines {
            return Err(Error::Config(format!(
                "{} static engines exceed {} total engines",
                self.n_static, self.t_engines
            )));
        }
        if self.m_crossbars == 0 {
            return Err(Error::Config("need at least one crossbar per engine".into()));
        }
        Ok(())
    }
}

/// Which dynamic crossbar hosts an incoming pattern on a miss. A
/// pattern-hit check always runs first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReplacementPolicy {
    Lru,
    Fifo,
    Random,
}

impl core::str::FromStr for ReplacementPolicy {
    type Err = String;
    fn from_str(s: &str) -> core::result::Result<Self, String> {
        match s {
            "lru" => Ok(ReplacementPolicy::Lru),
            "fifo" => Ok(ReplacementPolicy::Fifo),
            "random" => Ok(ReplacementPolicy::Random),
            other => Err(format!("unknown replacement policy '{other}'")),
        }
    }
}

impl core::fmt::Display for ReplacementPolicy {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            ReplacementPolicy::Lru => "lru",
            ReplacementPolicy::Fifo => "fifo",
            ReplacementPolicy::Random => "random",
        })
    }
}

/// Run-level knobs that are not part of the architecture proper.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimOptions {
    pub policy: ReplacementPolicy,
    /// Seed for the random replacement policy.
    pub seed: u64,
    /// Differential writes on reconfigure instead of a full C^2 rewrite.
    pub diff_writes: bool,
    /// Sliding-window width for activity logging; `None` disables the
    /// (potentially large) activity series.
    pub activity_window: Option<usize>,
}

impl Default for SimOptions {
    fn default() -> Self {
        SimOptions {
            policy: ReplacementPolicy::Lru,
            seed: 0,
            diff_writes: false,
            activity_window: None,
        }
    }
}

/// Selects the dynamic crossbar for pattern `p`: any crossbar already
/// holding it is a hit; otherwise the policy picks the victim (LRU by
/// default), ties broken by lowest (engine, crossbar).
/// Returns (engine id, crossbar id, needs_configure).
pub fn find_engine(
    engines: &[EngineState],
    p: Pattern,
    policy: ReplacementPolicy,
    rng: &mut ChaCha8Rng,
) -> Result<(u32, u32, bool)> {
    let dynamics: Vec<(u32, u32)> = engines
        .iter()
        .filter(|e| e.kind == EngineKind::Dynamic)
        .flat_map(|e| (0..e.crossbars.len() as u32).map(move |x| (e.id, x)))
        .collect();
    if dynamics.is_empty() {
        return Err(Error::Config(
            "no dynamic engines available for a dynamic pattern".into(),
        ));
    }
    for &(e, x) in &dynamics {
        if engines[e as usize].crossbars[x as usize].loaded == Some(p) {
            return Ok((e, x, false));
        }
    }
    let victim = match policy {
        ReplacementPolicy::Lru => *dynamics
            .iter()
            .min_by_key(|&&(e, x)| {
                (engines[e as usize].crossbars[x as usize].last_used, e, x)
            })
            .unwrap(),
        ReplacementPolicy::Fifo => *dynamics
            .iter()
            .min_by_key(|&&(e, x)| {
                (engines[e as usize].crossbars[x as usize].configured_at, e, x)
            })
            .unwrap(),
        ReplacementPolicy::Random => dynamics[rng.random_range(0..dynamics.len())],
    };
    Ok((victim.0, victim.1, true))
}

struct ActivityLog {
    window: usize,
    /// step-major, per engine: (read ops, write ops) in that step; one
    /// read op per mvm, one write op per reconfiguration
    steps: Vec<Vec<(u64, u64)>>,
}

/// Executes the vertex program to convergence over the prepared tables.
/// Static engines are configured once up front; per iteration every
/// subgraph is dispatched exactly once; group latency is the maximum
/// over engines of their serialized queue time.
pub fn run(
    g: &Graph,
    ct: &ConfigTable,
    st: &SubgraphTable,
    arch: &ArchParams,
    opts: &SimOptions,
    cost: &CostModel,
    program: &mut dyn VertexProgram,
) -> Result<(Vec<f64>, SimReport)> {
    arch.validate()?;
    cost.validate()?;
    if ct.c != arch.c && !ct.entries.is_empty() {
        return Err(Error::Consistency(format!(
            "configuration table built for C={} but architecture has C={}",
            ct.c, arch.c
        )));
    }
    check_consistency(ct, st)?;
    let has_dynamic = ct
        .entries
        .values()
        .any(|e| e.placement == Placement::Dynamic);
    if has_dynamic && arch.n_static == arch.t_engines {
        return Err(Error::Config(
            "dynamic patterns exist but every engine is static".into(),
        ));
    }

    let mut engines: Vec<EngineState> = (0..arch.t_engines)
        .map(|id| {
            let kind = if id < arch.n_static { EngineKind::Static } else { EngineKind::Dynamic };
            EngineState::new(id, kind, arch.m_crossbars, arch.c)
        })
        .collect();

    let mut energy = CostBreakdown::default();
    let mut init_configures = 0u64;

    // one-time static initialization; engines configure in parallel,
    // crossbars within an engine serialize
    let mut init_latencies = vec![0.0f64; arch.t_engines as usize];
    for (&bits, entry) in &ct.entries {
        if let Placement::Static { engine, crossbar } = entry.placement {
            if engine >= arch.n_static || crossbar >= arch.m_crossbars {
                return Err(Error::Consistency(format!(
                    "static placement ({engine}, {crossbar}) outside {}x{}",
                    arch.n_static, arch.m_crossbars
                )));
            }
            let p = Pattern::new(arch.c, bits)?;
            let cb = engines[engine as usize].crossbars[crossbar as usize]
                .configure(p, cost, opts.diff_writes)?;
            init_latencies[engine as usize] += cb.latency_ns;
            energy += cb;
            init_configures += 1;
        }
    }
    for e in engines.iter_mut().take(arch.n_static as usize) {
        for xb in &mut e.crossbars {
            xb.seal();
        }
    }
    let init_latency = init_latencies.iter().fold(0.0f64, |a, &b| a.max(b));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut values = program.init(g)?;
    let n = g.num_vertices as usize;
    let c = arch.c as usize;

    let mut total_latency = init_latency;
    let mut iterations = 0u64;
    let mut subgraphs_static = 0u64;
    let mut subgraphs_dynamic = 0u64;
    let mut runtime_configures = 0u64;
    let mut clock = 0u64;

    let mut activity = opts.activity_window.map(|w| ActivityLog {
        window: w.max(1),
        steps: Vec::new(),
    });

    let mut msg = vec![0.0f64; n];
    let mut input = vec![0.0f64; c];
    let mut out = vec![0.0f64; c];

    loop {
        program.begin_iteration(&values, g);
        let identity = program.reduce_identity();
        msg.fill(identity);

        let mut start = 0;
        while start < st.records.len() {
            // contiguous run sharing the grouping key
            let key = |r: &crate::partition::SubgraphRecord| match st.order {
                ExecOrder::ColumnMajor => r.base_dst,
                ExecOrder::RowMajor => r.base_src,
            };
            let group_key = key(&st.records[start]);
            let mut end = start;
            while end < st.records.len() && key(&st.records[end]) == group_key {
                end += 1;
            }

            let mut queue = vec![0.0f64; arch.t_engines as usize];
            let mut agg_updates = 0u64;
            let step_base: Option<Vec<(u64, u64)>> = activity.as_ref().map(|_| {
                engines
                    .iter()
                    .map(|e| {
                        e.crossbars
                            .iter()
                            .fold((0, 0), |(r, w), xb| (r + xb.mvms, w + xb.configures))
                    })
                    .collect()
            });

            for rec in &st.records[start..end] {
                let entry = ct.get(&rec.pattern).expect("checked by consistency pass");
                let (eng, xbar, needs_cfg) = match entry.placement {
                    Placement::Static { engine, crossbar } => (engine, crossbar, false),
                    Placement::Dynamic => {
                        find_engine(&engines, rec.pattern, opts.policy, &mut rng)?
                    }
                };
                let xb = &mut engines[eng as usize].crossbars[xbar as usize];
                if needs_cfg {
                    let cb = xb.configure(rec.pattern, cost, opts.diff_writes)?;
                    xb.configured_at = clock;
                    runtime_configures += 1;
                    queue[eng as usize] += cb.latency_ns;
                    energy += cb;
                }
                for (r, slot) in input.iter_mut().enumerate() {
                    let v = rec.base_src + r as u32;
                    *slot = if v < g.num_vertices {
                        program.edge_input(v, values[v as usize])
                    } else {
                        identity
                    };
                }
                // the stored row address only short-circuits row iteration
                // on static engines; dynamic engines scan all rows
                let row_hint = match entry.placement {
                    Placement::Static { .. } => entry.row_hint,
                    Placement::Dynamic => None,
                };
                let cb = xb.mvm(
                    &input,
                    &rec.weights,
                    row_hint,
                    identity,
                    |a, w| program.edge_compute(a, w),
                    |a, b| program.reduce(a, b),
                    &mut out,
                    cost,
                )?;
                xb.last_used = clock;
                clock += 1;
                queue[eng as usize] += cb.latency_ns;
                energy += cb;
                match entry.placement {
                    Placement::Static { .. } => subgraphs_static += 1,
                    Placement::Dynamic => subgraphs_dynamic += 1,
                }
                for (j, &m) in out.iter().enumerate() {
                    if m != identity {
                        let v = (rec.base_dst + j as u32) as usize;
                        msg[v] = program.reduce(msg[v], m);
                        agg_updates += 1;
                    }
                }
            }

            // parallel engines, serialized queues; aggregation returns
            // through the output buffer one value at a time
            let group_latency = queue.iter().fold(0.0f64, |a, &b| a.max(b))
                + agg_updates as f64 * cost.buffer_access.latency_ns;
            energy.buffer_pj += agg_updates as f64 * cost.buffer_access.energy_pj;
            total_latency += group_latency;

            if let (Some(log), Some(base)) = (activity.as_mut(), step_base) {
                let step: Vec<(u64, u64)> = engines
                    .iter()
                    .zip(base)
                    .map(|(e, (r0, w0))| {
                        let (r, w) = e
                            .crossbars
                            .iter()
                            .fold((0, 0), |(r, w), xb| (r + xb.mvms, w + xb.configures));
                        (r - r0, w - w0)
                    })
                    .collect();
                log.steps.push(step);
            }

            start = end;
        }

        let mut new_values = values.clone();
        for (v, nv) in new_values.iter_mut().enumerate() {
            *nv = program.apply(v as u32, values[v], msg[v]);
        }
        iterations += 1;
        let done = program.converged(&values, &new_values, iterations);
        values = new_values;
        if done {
            break;
        }
    }

    let engine_reports: Vec<EngineReport> = engines
        .iter()
        .map(|e| EngineReport {
            id: e.id,
            kind: e.kind,
            reads: e.crossbars.iter().map(|x| x.reads).sum(),
            writes: e.crossbars.iter().map(|x| x.writes).sum(),
            configures: e.crossbars.iter().map(|x| x.configures).sum(),
            mvms: e.crossbars.iter().map(|x| x.mvms).sum(),
            max_cell_writes: e.crossbars.iter().map(|x| x.max_cell_writes()).max().unwrap_or(0),
        })
        .collect();
    let max_cell_writes_dynamic = engines
        .iter()
        .filter(|e| e.kind == EngineKind::Dynamic)
        .flat_map(|e| e.crossbars.iter().map(|x| x.max_cell_writes()))
        .max()
        .unwrap_or(0);

    let activity_report = activity.map(|log| build_activity(&log, &engines));

    let report = SimReport {
        algo: String::from(program.name()),
        num_vertices: g.num_vertices,
        num_edges: g.num_edges() as u64,
        arch: *arch,
        policy: opts.policy,
        seed: opts.seed,
        diff_writes: opts.diff_writes,
        iterations,
        subgraph_count: st.records.len() as u64,
        distinct_patterns: ct.entries.len() as u64,
        static_patterns: ct.static_count() as u64,
        static_coverage: ct.static_coverage(),
        subgraphs_static,
        subgraphs_dynamic,
        init_configures,
        runtime_configures,
        max_cell_writes_dynamic,
        total_latency_s: total_latency * 1e-9,
        energy: EnergyReport::from_parts(
            energy.read_pj * 1e-12,
            energy.write_pj * 1e-12,
            energy.sense_adc_pj * 1e-12,
            energy.buffer_pj * 1e-12,
        ),
        engines: engine_reports,
        activity: activity_report,
    };
    Ok((values, report))
}

/// Sliding-window activity per engine, normalized to 100 at the busiest
/// engine-window, separately for reads and writes.
fn build_activity(log: &ActivityLog, engines: &[EngineState]) -> ActivityReport {
    let steps = log.steps.len();
    let w = log.window.min(steps.max(1));
    let positions = steps.saturating_sub(w) + 1;
    let n_engines = engines.len();
    let series = |pick: fn(&(u64, u64)) -> u64| -> Vec<Vec<f64>> {
        // prefix sums per engine
        let mut raw = vec![vec![0u64; positions]; n_engines];
        for e in 0..n_engines {
            let mut prefix = vec![0u64; steps + 1];
            for (s, step) in log.steps.iter().enumerate() {
                prefix[s + 1] = prefix[s] + pick(&step[e]);
            }
            for p in 0..positions {
                raw[e][p] = prefix[p + w] - prefix[p];
            }
        }
        let max = raw.iter().flatten().copied().max().unwrap_or(0);
        raw.iter()
            .map(|row| {
                row.iter()
                    .map(|&v| if max == 0 { 0.0 } else { 100.0 * v as f64 / max as f64 })
                    .collect()
            })
            .collect()
    };
    ActivityReport {
        window: w as u64,
        read_activity: series(|&(r, _)| r),
        write_activity: series(|&(_, wr)| wr),
    }
}
