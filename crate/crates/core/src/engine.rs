//! Behavioral graph-engine model: crossbars holding patterns, with exact
//! read/write/ADC/buffer accounting. Functional results are exact; the
//! analog path is modeled only as latency and energy.

use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::cost::CostModel;
use crate::error::{Error, Result};
use crate::partition::Pattern;

/// Latency plus energy split by circuit block, accumulated per dispatch.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct CostBreakdown {
    pub latency_ns: f64,
    pub read_pj: f64,
    pub write_pj: f64,
    pub sense_adc_pj: f64,
    pub buffer_pj: f64,
}

impl CostBreakdown {
    pub fn energy_pj(&self) -> f64 {
        self.read_pj + self.write_pj + self.sense_adc_pj + self.buffer_pj
    }
}

impl core::ops::AddAssign for CostBreakdown {
    fn add_assign(&mut self, rhs: CostBreakdown) {
        self.latency_ns += rhs.latency_ns;
        self.read_pj += rhs.read_pj;
        self.write_pj += rhs.write_pj;
        self.sense_adc_pj += rhs.sense_adc_pj;
        self.buffer_pj += rhs.buffer_pj;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EngineKind {
    Static,
    Dynamic,
}

/// One CxC crossbar with its loaded pattern and access counters.
#[derive(Debug, Clone)]
pub struct CrossbarState {
    pub c: u8,
    pub loaded: Option<Pattern>,
    /// Per-cell write counts, row-major.
    pub cell_writes: Vec<u64>,
    /// Bit-level read count.
    pub reads: u64,
    /// Bit-level write count; always equals the sum of cell_writes
    /// increments.
    pub writes: u64,
    pub configures: u64,
    pub mvms: u64,
    /// Logical timestamp of the last dispatch touching this crossbar.
    pub last_used: u64,
    /// Logical timestamp of the last configure (FIFO replacement).
    pub configured_at: u64,
    sealed: bool,
}

impl CrossbarState {
    pub fn new(c: u8) -> Self {
        let cells = c as usize * c as usize;
        CrossbarState {
            c,
            loaded: None,
            cell_writes: vec![0; cells],
            reads: 0,
            writes: 0,
            configures: 0,
            mvms: 0,
            last_used: 0,
            configured_at: 0,
            sealed: false,
        }
    }

    /// Forbids further configures; applied to static crossbars once
    /// initialization ends.
    pub fn seal(&mut self) {
        self.sealed = true;
    }

    pub fn max_cell_writes(&self) -> u64 {
        self.cell_writes.iter().copied().max().unwrap_or(0)
    }

    /// Loads a pattern. A full C^2 rewrite is charged by default (the
    /// conservative upper bound on wear); with `diff_writes` only cells
    /// whose value changes are written. Writes proceed row by row, each
    /// row's cells in parallel. Reconfiguring to the pattern already
    /// loaded is a hit and costs nothing.
    pub fn configure(
        &mut self,
        p: Pattern,
        cost: &CostModel,
        diff_writes: bool,
    ) -> Result<CostBreakdown> {
        if p.c != self.c {
            return Err(Error::Engine("pattern size does not match crossbar".into()));
        }
        if self.loaded == Some(p) {
            return Ok(CostBreakdown::default());
        }
        if self.sealed {
            return Err(Error::Engine(
                "attempt to reconfigure a static crossbar after initialization".into(),
            ));
        }
        let c = self.c as usize;
        let mut written = 0u64;
        let mut rows_written = 0u64;
        let old = self.loaded.map(|q| q.bits).unwrap_or(0);
        for row in 0..c {
            let mut row_touched = false;
            for col in 0..c {
                let cell = row * c + col;
                let changes = (old ^ p.bits) >> cell & 1 == 1;
                if !diff_writes || changes {
                    self.cell_writes[cell] += 1;
                    written += 1;
                    row_touched = true;
                }
            }
            if row_touched {
                rows_written += 1;
            }
        }
        self.writes += written;
        self.configures += 1;
        self.loaded = Some(p);
        // one wordline is written at a time with its cells in parallel,
        // so latency counts rows; energy and wear count every cell. The
        // configuration word is fetched through the input buffer.
        Ok(CostBreakdown {
            latency_ns: rows_written as f64 * cost.write_bit.latency_ns
                + cost.buffer_access.latency_ns,
            write_pj: written as f64 * cost.write_bit.energy_pj,
            buffer_pj: cost.buffer_access.energy_pj,
            ..Default::default()
        })
    }

    /// In-situ matrix-vector multiply over the loaded pattern:
    /// `out[j] = reduce over set bits (r, j) of edge_compute(input[r], w)`,
    /// with `identity` elsewhere. `weights` is aligned with the set bits
    /// in row-major bit order. With a row hint only one wordline is
    /// driven; otherwise all C rows are read.
    #[allow(clippy::too_many_arguments)]
    pub fn mvm(
        &mut self,
        input: &[f64],
        weights: &[f64],
        row_hint: Option<u8>,
        identity: f64,
        edge_compute: impl Fn(f64, f64) -> f64,
        reduce: impl Fn(f64, f64) -> f64,
        out: &mut [f64],
        cost: &CostModel,
    ) -> Result<CostBreakdown> {
        let p = self
            .loaded
            .ok_or_else(|| Error::Engine("unconfigured crossbar".into()))?;
        let c = self.c as usize;
        debug_assert_eq!(input.len(), c);
        debug_assert_eq!(out.len(), c);
        out.fill(identity);
        let mut widx = 0;
        for r in 0..c {
            for col in 0..c {
                if p.bits >> (r * c + col) & 1 == 1 {
                    let msg = edge_compute(input[r], weights[widx]);
                    out[col] = reduce(out[col], msg);
                    widx += 1;
                }
            }
        }
        let active_rows = if row_hint.is_some() { 1 } else { c };
        let bit_reads = (active_rows * c) as u64;
        self.reads += bit_reads;
        self.mvms += 1;
        // every bitline is sensed and digitized; V_i in and PV_i out pass
        // through the FIFO buffers
        Ok(CostBreakdown {
            latency_ns: bit_reads as f64 * cost.read_bit.latency_ns
                + c as f64 * (cost.sense_amp.latency_ns + cost.adc_access.latency_ns)
                + 2.0 * cost.buffer_access.latency_ns,
            read_pj: bit_reads as f64 * cost.read_bit.energy_pj,
            sense_adc_pj: c as f64 * (cost.sense_amp.energy_pj + cost.adc_access.energy_pj),
            buffer_pj: 2.0 * cost.buffer_access.energy_pj,
            ..Default::default()
        })
    }

    /// Reconstructs this crossbar's total energy from counters alone.
    pub fn energy_from_counters_pj(&self, cost: &CostModel) -> f64 {
        let c = self.c as f64;
        self.reads as f64 * cost.read_bit.energy_pj
            + self.writes as f64 * cost.write_bit.energy_pj
            + self.mvms as f64 * c * (cost.sense_amp.energy_pj + cost.adc_access.energy_pj)
            + (2 * self.mvms + self.configures) as f64 * cost.buffer_access.energy_pj
    }
}

/// A graph engine: a set of crossbars driven by one controller. Parallel
/// engine execution is modeled logically; within an engine, dispatches
/// serialize.
#[derive(Debug, Clone)]
pub struct EngineState {
    pub id: u32,
    pub kind: EngineKind,
    pub crossbars: Vec<CrossbarState>,
}

impl EngineState {
    pub fn new(id: u32, kind: EngineKind, m_crossbars: u32, c: u8) -> Self {
        EngineState {
            id,
            kind,
            crossbars: (0..m_crossbars).map(|_| CrossbarState::new(c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bfs_compute(input: f64, _w: f64) -> f64 {
        input + 1.0
    }

    fn min_reduce(a: f64, b: f64) -> f64 {
        if a < b {
            a
        } else {
            b
        }
    }

    #[test]
    fn configure_cost_c4() {
        let mut xb = CrossbarState::new(4);
        let cost = CostModel::default();
        let p = Pattern::new(4, 0xbeef).unwrap();
        let cb = xb.configure(p, &cost, false).unwrap();
        assert!((cb.write_pj - 16.0 * 4.9).abs() < 1e-12);
        assert!((cb.energy_pj() - (78.4 + 29.0)).abs() < 1e-12);
        assert!((cb.latency_ns - (4.0 * 20.2 + 0.31)).abs() < 1e-12);
        assert_eq!(xb.writes, 16);
        assert!(xb.cell_writes.iter().all(|&w| w == 1));
    }

    #[test]
    fn reconfigure_same_pattern_is_free() {
        let mut xb = CrossbarState::new(4);
        let cost = CostModel::default();
        let p = Pattern::new(4, 0x1).unwrap();
        xb.configure(p, &cost, false).unwrap();
        let cb = xb.configure(p, &cost, false).unwrap();
        assert_eq!(cb, CostBreakdown::default());
        assert_eq!(xb.configures, 1);
    }

    #[test]
    fn static_crossbar_seals() {
        let mut xb = CrossbarState::new(2);
        let cost = CostModel::default();
        xb.configure(Pattern::new(2, 0b01).unwrap(), &cost, false).unwrap();
        assert!(xb.cell_writes.iter().all(|&w| w == 1));
        xb.seal();
        let err = xb.configure(Pattern::new(2, 0b10).unwrap(), &cost, false);
        assert!(matches!(err, Err(Error::Engine(_))));
        // re-sending the loaded pattern stays a free hit
        assert!(xb.configure(Pattern::new(2, 0b01).unwrap(), &cost, false).is_ok());
    }

    #[test]
    fn diff_writes_touch_changed_cells_only() {
        let mut xb = CrossbarState::new(2);
        let cost = CostModel::default();
        xb.configure(Pattern::new(2, 0b0011).unwrap(), &cost, true).unwrap();
        assert_eq!(xb.writes, 2);
        xb.configure(Pattern::new(2, 0b0110).unwrap(), &cost, true).unwrap();
        assert_eq!(xb.writes, 4); // bits 0 and 2 flipped
    }

    #[test]
    fn mvm_bfs_example() {
        let mut xb = CrossbarState::new(2);
        let cost = CostModel::default();
        xb.configure(Pattern::new(2, 0b0010).unwrap(), &cost, false).unwrap();
        let mut out = [0.0; 2];
        xb.mvm(
            &[1.0, f64::INFINITY],
            &[1.0],
            None,
            f64::INFINITY,
            bfs_compute,
            min_reduce,
            &mut out,
            &cost,
        )
        .unwrap();
        assert_eq!(out, [f64::INFINITY, 2.0]);
    }

    #[test]
    fn mvm_unconfigured_errors() {
        let mut xb = CrossbarState::new(2);
        let cost = CostModel::default();
        let mut out = [0.0; 2];
        let r = xb.mvm(&[0.0, 0.0], &[], None, 0.0, |a, _| a, |a, b| a + b, &mut out, &cost);
        assert!(matches!(r, Err(Error::Engine(_))));
    }

    #[test]
    fn mvm_read_cost_with_and_without_hint() {
        let cost = CostModel::default();
        let mut xb = CrossbarState::new(4);
        let p = Pattern::new(4, 1 << 5).unwrap(); // single edge, row 1
        xb.configure(p, &cost, false).unwrap();
        let mut out = [0.0; 4];
        let full = xb
            .mvm(&[0.0; 4], &[1.0], None, 0.0, |a, _| a, |a, b| a + b, &mut out, &cost)
            .unwrap();
        assert!((full.read_pj - 16.0 * 1.1).abs() < 1e-12);
        let hinted = xb
            .mvm(&[0.0; 4], &[1.0], Some(1), 0.0, |a, _| a, |a, b| a + b, &mut out, &cost)
            .unwrap();
        assert!((hinted.read_pj - 4.0 * 1.1).abs() < 1e-12);
        assert_eq!(xb.reads, 16 + 4);
    }

    #[test]
    fn zero_input_still_charged() {
        let cost = CostModel::default();
        let mut xb = CrossbarState::new(2);
        xb.configure(Pattern::new(2, 0b0010).unwrap(), &cost, false).unwrap();
        let mut out = [0.0; 2];
        let cb = xb
            .mvm(
                &[f64::INFINITY; 2],
                &[1.0],
                None,
                f64::INFINITY,
                bfs_compute,
                min_reduce,
                &mut out,
                &cost,
            )
            .unwrap();
        assert_eq!(out, [f64::INFINITY, f64::INFINITY]);
        assert!(cb.latency_ns > 0.0);
    }

    /// The mvm result must equal a direct sparse matrix-vector product
    /// over the subgraph: exhaustive over all 2^16 - 1 nonzero c=4
    /// patterns.
    #[test]
    fn mvm_matches_direct_spmv_all_c4_patterns() {
        let cost = CostModel::default();
        let input = [3.0, 0.5, 7.0, 2.0];
        for bits in 1u64..=0xffff {
            let p = Pattern::new(4, bits).unwrap();
            let nw = bits.count_ones() as usize;
            let weights: Vec<f64> = (0..nw).map(|k| 1.0 + k as f64).collect();
            let mut xb = CrossbarState::new(4);
            xb.configure(p, &cost, false).unwrap();
            let mut out = [0.0; 4];
            xb.mvm(
                &input,
                &weights,
                None,
                0.0,
                |a, w| a * w,
                |a, b| a + b,
                &mut out,
                &cost,
            )
            .unwrap();
            // independent dense evaluation
            let mut expect = [0.0f64; 4];
            let mut widx = 0;
            for r in 0..4 {
                for col in 0..4 {
                    if bits >> (r * 4 + col) & 1 == 1 {
                        expect[col] += input[r] * weights[widx];
                        widx += 1;
                    }
                }
            }
            assert_eq!(out, expect, "pattern {bits:#x}");
        }
    }

    #[test]
    fn energy_reconstructible_from_counters() {
        let cost = CostModel::default();
        let mut xb = CrossbarState::new(4);
        let mut total = 0.0;
        let mut out = [0.0; 4];
        for bits in [0x1u64, 0x8001, 0x1, 0xff] {
            let p = Pattern::new(4, bits).unwrap();
            total += xb.configure(p, &cost, false).unwrap().energy_pj();
            let nw = bits.count_ones() as usize;
            total += xb
                .mvm(
                    &[1.0; 4],
                    &alloc::vec![1.0; nw],
                    None,
                    0.0,
                    |a, w| a * w,
                    |a, b| a + b,
                    &mut out,
                    &cost,
                )
                .unwrap()
                .energy_pj();
        }
        assert!((total - xb.energy_from_counters_pj(&cost)).abs() < 1e-9);
    }
}
