//! Pattern ranking, static/dynamic engine assignment, and the
//! configuration / subgraph tables driving execution.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::partition::{Pattern, SubgraphRecord};

/// Patterns ordered by (frequency desc, bits asc). The tie-break makes
/// the ranking a total order so runs are reproducible.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedPatterns {
    pub entries: Vec<(Pattern, u64)>,
}

impl RankedPatterns {
    pub fn total_subgraphs(&self) -> u64 {
        self.entries.iter().map(|&(_, f)| f).sum()
    }

    /// Fraction of subgraphs covered by the `k` top-ranked patterns.
    pub fn cumulative_share(&self, k: usize) -> f64 {
        let total = self.total_subgraphs();
        if total == 0 {
            return 0.0;
        }
        let covered: u64 = self.entries.iter().take(k).map(|&(_, f)| f).sum();
        covered as f64 / total as f64
    }
}

/// Where a pattern's crossbar image lives during execution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    /// Written once at initialization, never rewritten.
    Static { engine: u32, crossbar: u32 },
    /// Loaded on demand into whichever dynamic crossbar the replacement
    /// policy selects.
    Dynamic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigEntry {
    pub placement: Placement,
    pub frequency: u64,
    /// Local row of the edge for single-edge patterns; lets the engine
    /// drive one wordline instead of iterating all crossbar rows.
    pub row_hint: Option<u8>,
}

/// Pattern -> placement map produced by preprocessing.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigTable {
    pub entries: BTreeMap<u64, ConfigEntry>,
    pub c: u8,
    pub n_static: u32,
    pub m_crossbars: u32,
}

impl ConfigTable {
    pub fn get(&self, p: &Pattern) -> Option<&ConfigEntry> {
        self.entries.get(&p.bits)
    }

    pub fn static_count(&self) -> usize {
        self.entries
            .values()
            .filter(|e| matches!(e.placement, Placement::Static { .. }))
            .count()
    }

    /// Fraction of subgraphs whose pattern is statically placed.
    pub fn static_coverage(&self) -> f64 {
        let total: u64 = self.entries.values().map(|e| e.frequency).sum();
        if total == 0 {
            return 0.0;
        }
        let covered: u64 = self
            .entries
            .values()
            .filter(|e| matches!(e.placement, Placement::Static { .. }))
            .map(|e| e.frequency)
            .sum();
        covered as f64 / total as f64
    }
}

/// Execution order of the subgraph table: group by shared source windows
/// (row-major) or shared destination windows (column-major).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ExecOrder {
    RowMajor,
    ColumnMajor,
}

/// Execution-ordered subgraph records.
#[derive(Debug, Clone, PartialEq)]
pub struct SubgraphTable {
    pub records: Vec<SubgraphRecord>,
    pub order: ExecOrder,
}

/// Counts pattern occurrences over the partition output and orders them
/// by (frequency desc, bits asc).
pub fn rank_patterns(records: &[SubgraphRecord]) -> RankedPatterns {
    let mut freq: BTreeMap<Pattern, u64> = BTreeMap::new();
    for r in records {
        *freq.entry(r.pattern).or_insert(0) += 1;
    }
    let mut entries: Vec<_> = freq.into_iter().collect();
    entries.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.bits.cmp(&b.0.bits)));
    RankedPatterns { entries }
}

/// Marks the top `n_static * m_crossbars` patterns Static, placed
/// round-robin over engines first, then crossbars (rank i -> engine
/// i mod N, crossbar i / N), so pattern load balances across static
/// engines. The rest stay Dynamic. Single-edge patterns get a row hint.
pub fn assign_engines(
    ranked: &RankedPatterns,
    n_static: u32,
    m_crossbars: u32,
) -> Result<ConfigTable> {
    if m_crossbars < 1 {
        return Err(Error::Config("crossbars per engine must be at least 1".into()));
    }
    let c = ranked.entries.first().map(|(p, _)| p.c).unwrap_or(0);
    let slots = n_static as u64 * m_crossbars as u64;
    let mut entries = BTreeMap::new();
    for (rank, &(pattern, frequency)) in ranked.entries.iter().enumerate() {
        let placement = if (rank as u64) < slots {
            Placement::Static {
                engine: (rank as u32) % n_static,
                crossbar: (rank as u32) / n_static,
            }
        } else {
            Placement::Dynamic
        };
        entries.insert(
            pattern.bits,
            ConfigEntry { placement, frequency, row_hint: pattern.single_edge_row() },
        );
    }
    Ok(ConfigTable { entries, c, n_static, m_crossbars })
}

/// Stably sorts the partition output into the chosen execution order:
/// column-major by (base_dst, base_src), row-major by (base_src, base_dst).
pub fn build_subgraph_table(records: &[SubgraphRecord], order: ExecOrder) -> SubgraphTable {
    let mut records = records.to_vec();
    match order {
        ExecOrder::ColumnMajor => records.sort_by_key(|r| (r.base_dst, r.base_src)),
        ExecOrder::RowMajor => records.sort_by_key(|r| (r.base_src, r.base_dst)),
    }
    SubgraphTable { records, order }
}

/// Checks that every pattern referenced by the subgraph table has a
/// configuration entry with a matching window size.
pub fn check_consistency(ct: &ConfigTable, st: &SubgraphTable) -> Result<()> {
    for r in &st.records {
        if r.pattern.c != ct.c {
            return Err(Error::Consistency(format!(
                "subgraph window size {} does not match table size {}",
                r.pattern.c, ct.c
            )));
        }
        if ct.get(&r.pattern).is_none() {
            return Err(Error::Consistency(format!(
                "pattern {:#x} missing from configuration table",
                r.pattern.bits
            )));
        }
    }
    Ok(())
}
