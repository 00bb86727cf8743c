//! Simulation core for a pattern-aware ReRAM graph accelerator.
//!
//! The pipeline: load a graph in COO form ([`graph`]), tile its adjacency
//! matrix with a non-overlapping CxC window ([`partition`]), rank the
//! resulting binary patterns and assign the most frequent ones to
//! write-once static engines ([`table`]), then execute vertex programs
//! ([`program`]) under a streaming-apply schedule ([`sched`]) against a
//! counted cost model ([`engine`], [`cost`]). Results are summarized as a
//! [`report::SimReport`]; [`dse`] sweeps the static/dynamic split.
//!
//! The crate is `no_std` + `alloc`; all IO lives in the companion CLI
//! crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod cost;
pub mod dse;
pub mod engine;
pub mod error;
pub mod graph;
pub mod partition;
pub mod program;
pub mod report;
pub mod sched;
pub mod synth;
pub mod table;

pub use cost::CostModel;
pub use error::Error;
pub use graph::Graph;
pub use partition::{Pattern, SubgraphRecord};
pub use report::SimReport;
pub use sched::{ArchParams, ExecOrder, ReplacementPolicy};
