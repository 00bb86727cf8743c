//! Command-line front end for the pattern-aware crossbar graph
//! accelerator simulator.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use pagsim::output;
use pagsim::{dataset, exit_code_for};
use pagsim_core::cost::CostModel;
use pagsim_core::dse::sweep_static;
use pagsim_core::error::Error;
use pagsim_core::partition::partition;
use pagsim_core::program::Algo;
use pagsim_core::report::{lifetime, LifetimeModel, SimReport, SECONDS_PER_YEAR};
use pagsim_core::sched::{run, ArchParams, ExecOrder, ReplacementPolicy, SimOptions};
use pagsim_core::synth::{synthetic_graph, SynthParams};
use pagsim_core::table::{assign_engines, build_subgraph_table, rank_patterns};
use pagsim_core::Graph;

#[derive(Parser)]
#[command(name = "pagsim", version, about = "Pattern-aware ReRAM graph accelerator simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pattern statistics for a dataset: distinct patterns, top-1 and
    /// top-16 shares, optional rank/record CSV dumps
    Analyze {
        #[arg(long)]
        dataset: String,
        #[arg(long, default_value_t = 4)]
        xbar_size: u8,
        #[arg(long)]
        directed: bool,
        #[arg(long, conflicts_with = "directed")]
        undirected: bool,
        /// Write the pattern ranking CSV here
        #[arg(long)]
        rank_csv: Option<PathBuf>,
        /// Write the per-window record CSV here
        #[arg(long)]
        records_csv: Option<PathBuf>,
    },
    /// Single simulation run; prints a summary and optionally a full
    /// JSON report
    Simulate {
        #[command(flatten)]
        flags: SimFlags,
        /// Write the full JSON report here
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write the sliding-window activity series here (requires
        /// --activity-window)
        #[arg(long)]
        activity_csv: Option<PathBuf>,
    },
    /// Sweep the number of static engines and report the speedup curve
    Sweep {
        #[command(flatten)]
        flags: SimFlags,
        /// Write the sweep CSV here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Circuit lifetime under limited write endurance, from a fresh run
    /// or a saved report
    Lifetime {
        #[command(flatten)]
        flags: SimFlags,
        /// Use a saved JSON report instead of simulating
        #[arg(long)]
        from_report: Option<PathBuf>,
        /// Cell write endurance in cycles
        #[arg(long, default_value_t = 1e8)]
        endurance: f64,
        /// Seconds between workload executions
        #[arg(long, default_value_t = 3600.0)]
        interval: f64,
    },
    /// Download a SNAP dataset by short name into the cache directory
    FetchDataset {
        /// Short name (wg, az, sd, ep, pg, wv) or full dataset name
        name: String,
        /// Cache directory (default: $PAGSIM_DATA_DIR or ./data)
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// Generate a deterministic power-law graph as edge-list text
    Synth {
        #[arg(long, default_value_t = 7115)]
        vertices: u32,
        #[arg(long, default_value_t = 103_689)]
        edges: usize,
        #[arg(long, default_value_t = 2.15)]
        exponent: f64,
        /// Id/degree decorrelation strength in [0, 1]
        #[arg(long, default_value_t = 0.25)]
        noise: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum AlgoArg {
    Bfs,
    Sssp,
    Pagerank,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum OrderArg {
    Row,
    Col,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum PolicyArg {
    Lru,
    Fifo,
    Random,
}

/// Flags shared by simulate, sweep, and lifetime. Every flag can also be
/// supplied through a JSON config file (`--config`); explicit flags win.
#[derive(Args, Default, Deserialize)]
#[serde(default, rename_all = "kebab-case", deny_unknown_fields)]
struct SimFlags {
    /// Dataset: file path, SNAP short name, or `surrogate-wv`
    #[arg(long)]
    dataset: Option<String>,
    #[arg(long)]
    directed: bool,
    #[arg(long, conflicts_with = "directed")]
    undirected: bool,
    /// bfs, sssp, or pagerank (default bfs)
    #[arg(long, value_enum)]
    algo: Option<AlgoArg>,
    /// Source vertex for bfs/sssp
    #[arg(long)]
    source: Option<u32>,
    /// PageRank damping factor
    #[arg(long)]
    damping: Option<f64>,
    /// PageRank iteration cap
    #[arg(long)]
    iterations: Option<u64>,
    /// PageRank L1 convergence tolerance
    #[arg(long)]
    tolerance: Option<f64>,
    /// Total graph engines T
    #[arg(long)]
    engines: Option<u32>,
    /// Static engines N; sweep accepts a comma list like 0,4,8,16
    #[arg(long = "static")]
    #[serde(rename = "static")]
    static_engines: Option<String>,
    /// Crossbars per engine M
    #[arg(long)]
    xbars: Option<u32>,
    /// Crossbar dimension C (square, 2 to 8)
    #[arg(long)]
    xbar_size: Option<u8>,
    /// Streaming order: row (by source) or col (by destination)
    #[arg(long, value_enum)]
    order: Option<OrderArg>,
    /// Dynamic crossbar replacement: lru, fifo, or random
    #[arg(long, value_enum)]
    policy: Option<PolicyArg>,
    /// RNG seed (random policy)
    #[arg(long)]
    seed: Option<u64>,
    /// Write only differing cells on reconfigure
    #[arg(long)]
    diff_writes: bool,
    /// Sliding-window width for per-engine activity logging
    #[arg(long)]
    activity_window: Option<usize>,
    /// JSON file overriding cost-model constants (partial files allowed)
    #[arg(long)]
    cost_model: Option<PathBuf>,
    #[arg(long)]
    read_bit_ns: Option<f64>,
    #[arg(long)]
    read_bit_pj: Option<f64>,
    #[arg(long)]
    write_bit_ns: Option<f64>,
    #[arg(long)]
    write_bit_pj: Option<f64>,
    #[arg(long)]
    sense_amp_ns: Option<f64>,
    #[arg(long)]
    sense_amp_pj: Option<f64>,
    #[arg(long)]
    buffer_ns: Option<f64>,
    #[arg(long)]
    buffer_pj: Option<f64>,
    #[arg(long)]
    adc_ns: Option<f64>,
    #[arg(long)]
    adc_pj: Option<f64>,
    /// Value data width in bits
    #[arg(long)]
    data_width: Option<u32>,
    /// JSON config file mirroring these flags
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
}

impl SimFlags {
    /// Layers a config file (if any) under the explicit flags.
    fn merged(self) -> Result<SimFlags> {
        let Some(path) = &self.config else { return Ok(self) };
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let file: SimFlags = serde_json::from_str(&text)
            .map_err(|e| anyhow!(Error::Config(format!("config {}: {e}", path.display()))))?;
        Ok(SimFlags {
            dataset: self.dataset.or(file.dataset),
            directed: self.directed || file.directed,
            undirected: self.undirected || file.undirected,
            algo: self.algo.or(file.algo),
            source: self.source.or(file.source),
            damping: self.damping.or(file.damping),
            iterations: self.iterations.or(file.iterations),
            tolerance: self.tolerance.or(file.tolerance),
            engines: self.engines.or(file.engines),
            static_engines: self.static_engines.or(file.static_engines),
            xbars: self.xbars.or(file.xbars),
            xbar_size: self.xbar_size.or(file.xbar_size),
            order: self.order.or(file.order),
            policy: self.policy.or(file.policy),
            seed: self.seed.or(file.seed),
            diff_writes: self.diff_writes || file.diff_writes,
            activity_window: self.activity_window.or(file.activity_window),
            cost_model: self.cost_model.or(file.cost_model),
            read_bit_ns: self.read_bit_ns.or(file.read_bit_ns),
            read_bit_pj: self.read_bit_pj.or(file.read_bit_pj),
            write_bit_ns: self.write_bit_ns.or(file.write_bit_ns),
            write_bit_pj: self.write_bit_pj.or(file.write_bit_pj),
            sense_amp_ns: self.sense_amp_ns.or(file.sense_amp_ns),
            sense_amp_pj: self.sense_amp_pj.or(file.sense_amp_pj),
            buffer_ns: self.buffer_ns.or(file.buffer_ns),
            buffer_pj: self.buffer_pj.or(file.buffer_pj),
            adc_ns: self.adc_ns.or(file.adc_ns),
            adc_pj: self.adc_pj.or(file.adc_pj),
            data_width: self.data_width.or(file.data_width),
            config: None,
        })
    }
}

struct Resolved {
    graph: Graph,
    algo: Algo,
    arch: ArchParams,
    n_list: Vec<u32>,
    opts: SimOptions,
    cost: CostModel,
}

fn resolve(flags: SimFlags, default_n: &str) -> Result<Resolved> {
    let flags = flags.merged()?;
    let dataset = flags
        .dataset
        .as_deref()
        .ok_or_else(|| anyhow!(Error::Config("--dataset is required".into())))?;
    let graph = dataset::load(dataset, !flags.undirected)?;

    let algo = match flags.algo.unwrap_or(AlgoArg::Bfs) {
        AlgoArg::Bfs => Algo::Bfs { source: flags.source.unwrap_or(0) },
        AlgoArg::Sssp => Algo::Sssp { source: flags.source.unwrap_or(0) },
        AlgoArg::Pagerank => Algo::PageRank {
            damping: flags.damping.unwrap_or(0.85),
            max_iterations: flags.iterations.unwrap_or(10),
            tolerance: flags.tolerance.unwrap_or(1e-6),
        },
    };

    let n_spec = flags.static_engines.as_deref().unwrap_or(default_n);
    let n_list: Vec<u32> = n_spec
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u32>()
                .map_err(|_| anyhow!(Error::Config(format!("invalid static-engine count '{tok}'"))))
        })
        .collect::<Result<_>>()?;
    if n_list.is_empty() {
        bail!(Error::Config("--static needs at least one value".into()));
    }

    let arch = ArchParams {
        c: flags.xbar_size.unwrap_or(4),
        t_engines: flags.engines.unwrap_or(32),
        n_static: n_list[0],
        m_crossbars: flags.xbars.unwrap_or(1),
        order: match flags.order.unwrap_or(OrderArg::Col) {
            OrderArg::Row => ExecOrder::RowMajor,
            OrderArg::Col => ExecOrder::ColumnMajor,
        },
    };

    let opts = SimOptions {
        policy: match flags.policy.unwrap_or(PolicyArg::Lru) {
            PolicyArg::Lru => ReplacementPolicy::Lru,
            PolicyArg::Fifo => ReplacementPolicy::Fifo,
            PolicyArg::Random => ReplacementPolicy::Random,
        },
        seed: flags.seed.unwrap_or(0),
        diff_writes: flags.diff_writes,
        activity_window: flags.activity_window,
    };

    let mut cost = match &flags.cost_model {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading cost model {}", path.display()))?;
            serde_json::from_str(&text).map_err(|e| {
                anyhow!(Error::Config(format!("cost model {}: {e}", path.display())))
            })?
        }
        None => CostModel::default(),
    };
    let overrides = [
        (&mut cost.read_bit.latency_ns, flags.read_bit_ns),
        (&mut cost.read_bit.energy_pj, flags.read_bit_pj),
        (&mut cost.write_bit.latency_ns, flags.write_bit_ns),
        (&mut cost.write_bit.energy_pj, flags.write_bit_pj),
        (&mut cost.sense_amp.latency_ns, flags.sense_amp_ns),
        (&mut cost.sense_amp.energy_pj, flags.sense_amp_pj),
        (&mut cost.buffer_access.latency_ns, flags.buffer_ns),
        (&mut cost.buffer_access.energy_pj, flags.buffer_pj),
        (&mut cost.adc_access.latency_ns, flags.adc_ns),
        (&mut cost.adc_access.energy_pj, flags.adc_pj),
    ];
    for (slot, value) in overrides {
        if let Some(v) = value {
            *slot = v;
        }
    }
    if let Some(w) = flags.data_width {
        cost.data_width_bits = w;
    }
    cost.validate()?;

    Ok(Resolved { graph, algo, arch, n_list, opts, cost })
}

fn simulate_once(r: &Resolved) -> Result<SimReport> {
    let records = partition(&r.graph, r.arch.c)?;
    let ranked = rank_patterns(&records);
    let ct = assign_engines(&ranked, r.arch.n_static, r.arch.m_crossbars)?;
    let st = build_subgraph_table(&records, r.arch.order);
    let mut program = r.algo.make_program();
    let (_, report) = run(
        &r.graph,
        &ct,
        &st,
        &r.arch,
        &r.opts,
        &r.cost,
        program.as_mut(),
    )?;
    Ok(report)
}

fn cmd_analyze(
    dataset: &str,
    c: u8,
    directed: bool,
    rank_csv: Option<&Path>,
    records_csv: Option<&Path>,
) -> Result<()> {
    let graph = match dataset::load(dataset, directed) {
        Ok(g) => g,
        Err(err) => {
            // a dataset with zero edges is an empty analysis, not a failure
            if let Some(Error::Parse { msg, .. }) = err.downcast_ref::<Error>() {
                if msg == "no edges" {
                    println!("no non-empty subgraphs");
                    return Ok(());
                }
            }
            return Err(err);
        }
    };
    let records = partition(&graph, c)?;
    if records.is_empty() {
        println!("no non-empty subgraphs");
        return Ok(());
    }
    let ranked = rank_patterns(&records);
    let total = ranked.total_subgraphs();
    println!("vertices: {}", graph.num_vertices);
    println!("edges: {}", graph.num_edges());
    println!("windows: {total}");
    println!("distinct patterns: {}", ranked.entries.len());
    println!(
        "top-1 share: {:.2}%",
        100.0 * ranked.entries[0].1 as f64 / total as f64
    );
    println!(
        "top-16 cumulative share: {:.2}%",
        100.0 * ranked.cumulative_share(16)
    );
    if let Some(path) = rank_csv {
        output::write(path, &output::rank_csv(&ranked))?;
    }
    if let Some(path) = records_csv {
        output::write(path, &output::records_csv(&records))?;
    }
    Ok(())
}

fn cmd_simulate(
    flags: SimFlags,
    report_path: Option<&Path>,
    activity_csv: Option<&Path>,
) -> Result<()> {
    let r = resolve(flags, "16")?;
    if r.n_list.len() != 1 {
        bail!(Error::Config("simulate takes a single --static value".into()));
    }
    let report = simulate_once(&r)?;
    print_summary(&report);
    if let Some(path) = report_path {
        output::write(path, &output::report_json(&report)?)?;
    }
    if let Some(path) = activity_csv {
        let activity = report.activity.as_ref().ok_or_else(|| {
            anyhow!(Error::Config("--activity-csv requires --activity-window".into()))
        })?;
        output::write(path, &output::activity_csv(activity))?;
    }
    Ok(())
}

fn print_summary(report: &SimReport) {
    println!("algo: {}", report.algo);
    println!("iterations: {}", report.iterations);
    println!("subgraphs per iteration: {}", report.subgraph_count);
    println!(
        "static coverage: {:.4} ({} of {} patterns static)",
        report.static_coverage, report.static_patterns, report.distinct_patterns
    );
    println!(
        "dispatches: {} static, {} dynamic",
        report.subgraphs_static, report.subgraphs_dynamic
    );
    println!(
        "configures: {} init, {} runtime",
        report.init_configures, report.runtime_configures
    );
    println!("max dynamic cell writes: {}", report.max_cell_writes_dynamic);
    println!("latency: {:.6e} s", report.total_latency_s);
    println!("energy: {:.6e} J", report.energy.total_j);
}

fn cmd_sweep(flags: SimFlags, out: Option<&Path>) -> Result<()> {
    let r = resolve(flags, "0,4,8,12,16,20,24,28")?;
    let (curve, _) = sweep_static(&r.graph, &r.arch, &r.opts, &r.cost, r.algo, &r.n_list)?;
    print!("{}", output::sweep_csv(&curve));
    println!("best N: {}", curve.best_n);
    if let Some(path) = out {
        output::write(path, &output::sweep_csv(&curve))?;
    }
    Ok(())
}

fn cmd_lifetime(
    flags: SimFlags,
    from_report: Option<&Path>,
    endurance: f64,
    interval: f64,
) -> Result<()> {
    let report: SimReport = match from_report {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading report {}", path.display()))?;
            serde_json::from_str(&text)
                .map_err(|e| anyhow!(Error::Config(format!("report {}: {e}", path.display()))))?
        }
        None => {
            let r = resolve(flags, "16")?;
            if r.n_list.len() != 1 {
                bail!(Error::Config("lifetime takes a single --static value".into()));
            }
            simulate_once(&r)?
        }
    };
    let model = LifetimeModel { endurance, interval_s: interval };
    println!("max dynamic cell writes per execution: {}", report.max_cell_writes_dynamic);
    match lifetime(&report, &model)? {
        Some(seconds) => {
            println!("lifetime: {:.6e} s ({:.2} years)", seconds, seconds / SECONDS_PER_YEAR);
        }
        None => println!("lifetime: unbounded (no dynamic writes)"),
    }
    Ok(())
}

fn cmd_synth(
    vertices: u32,
    edges: usize,
    exponent: f64,
    noise: f64,
    seed: u64,
    out: Option<&Path>,
) -> Result<()> {
    let g = synthetic_graph(&SynthParams {
        num_vertices: vertices,
        num_edges: edges,
        exponent,
        id_noise: noise,
        seed,
    })?;
    let text = g.to_edge_list();
    match out {
        Some(path) => output::write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analyze { dataset, xbar_size, directed: _, undirected, rank_csv, records_csv } => {
            cmd_analyze(
                &dataset,
                xbar_size,
                !undirected,
                rank_csv.as_deref(),
                records_csv.as_deref(),
            )
        }
        Command::Simulate { flags, report, activity_csv } => {
            cmd_simulate(flags, report.as_deref(), activity_csv.as_deref())
        }
        Command::Sweep { flags, out } => cmd_sweep(flags, out.as_deref()),
        Command::Lifetime { flags, from_report, endurance, interval } => {
            cmd_lifetime(flags, from_report.as_deref(), endurance, interval)
        }
        Command::FetchDataset { name, dir } => {
            let dir = dir.unwrap_or_else(dataset::data_dir);
            let path = dataset::fetch(&name, &dir)?;
            println!("{}", path.display());
            Ok(())
        }
        Command::Synth { vertices, edges, exponent, noise, seed, out } => {
            cmd_synth(vertices, edges, exponent, noise, seed, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            exit_code_for(&err)
        }
    }
}
