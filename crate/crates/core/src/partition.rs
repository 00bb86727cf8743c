//! Non-overlapping CxC window partitioning of the adjacency matrix.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A binary CxC adjacency submatrix, bit `r*c + col` set iff the local
/// edge (r, col) exists. All-zero patterns never occur; windows without
/// edges are dropped during partitioning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern {
    pub c: u8,
    pub bits: u64,
}

impl Pattern {
    pub fn new(c: u8, bits: u64) -> Result<Self> {
        if !(2..=8).contains(&c) {
            return Err(Error::Config(format!("window size {c} outside [2, 8]")));
        }
        if bits == 0 {
            return Err(Error::Config("all-zero pattern".into()));
        }
        let cells = (c as u32) * (c as u32);
        if cells < 64 && bits >> cells != 0 {
            return Err(Error::Config(format!("bits exceed {c}x{c} window")));
        }
        Ok(Pattern { c, bits })
    }

    pub fn edge_count(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Local row of the single edge, when the pattern has exactly one.
    pub fn single_edge_row(&self) -> Option<u8> {
        if self.edge_count() == 1 {
            Some((self.bits.trailing_zeros() / self.c as u32) as u8)
        } else {
            None
        }
    }

    pub fn has_edge(&self, row: u8, col: u8) -> bool {
        self.bits >> (row as u32 * self.c as u32 + col as u32) & 1 == 1
    }
}

/// One non-empty window of the partition. Only the window's starting
/// source and destination vertices are recorded; the pattern supplies
/// the local structure. Weights are aligned with the set bits of the
/// pattern in row-major bit order.
#[derive(Debug, Clone, PartialEq)]
pub struct SubgraphRecord {
    pub base_src: u32,
    pub base_dst: u32,
    pub pattern: Pattern,
    pub weights: Vec<f64>,
}

/// Tiles the adjacency matrix with a non-overlapping CxC window, emitting
/// one record per window that contains at least one edge, in row-major
/// window order. The ragged edge is zero-padded virtually; padding cells
/// can never hold edges. Every edge of `g` lands in exactly one record.
pub fn partition(g: &Graph, c: u8) -> Result<Vec<SubgraphRecord>> {
    if c < 2 {
        return Err(Error::Config(format!("window size {c} must be at least 2")));
    }
    if c > 8 {
        return Err(Error::Config(format!("window size {c} exceeds 8")));
    }
    let c32 = c as u32;
    // (window row, window col) -> set bits with weights
    let mut windows: BTreeMap<(u32, u32), Vec<(u8, f64)>> = BTreeMap::new();
    for &(src, dst, w) in &g.edges {
        let key = (src / c32, dst / c32);
        let bit = ((src % c32) * c32 + dst % c32) as u8;
        windows.entry(key).or_default().push((bit, w));
    }
    let mut records = Vec::with_capacity(windows.len());
    for ((wr, wc), mut cells) in windows {
        cells.sort_unstable_by_key(|&(bit, _)| bit);
        let mut bits = 0u64;
        let mut weights = Vec::with_capacity(cells.len());
        for (bit, w) in cells {
            bits |= 1 << bit;
            weights.push(w);
        }
        records.push(SubgraphRecord {
            base_src: wr * c32,
            base_dst: wc * c32,
            pattern: Pattern::new(c, bits)?,
            weights,
        });
    }
    Ok(records)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use alloc::vec;

    /// 6-vertex graph whose 2x2 partition has 9 windows, 2 of them empty,
    /// and a top pattern occurring 3 times (windows S0, S4, S6 of the
    /// row-major 3x3 grid).
    pub(crate) fn six_vertex_graph() -> Graph {
        let edges = [
            (0, 1),
            (2, 3),
            (4, 1), // P0 = 0b0010 in S0, S4, S6
            (0, 2),
            (1, 3),
            (4, 2),
            (5, 3), // P1 = 0b1001 in S1, S7
            (1, 4), // P2 = 0b0100 in S2
            (2, 0), // P3 = 0b0001 in S3
        ];
        let edges: Vec<_> = edges.iter().map(|&(s, d)| (s, d, 1.0)).collect();
        Graph::new(6, &edges, true).unwrap()
    }

    #[test]
    fn two_windows_toy() {
        let g = Graph::new(4, &[(0, 1, 1.0), (2, 3, 1.0)], true).unwrap();
        let recs = partition(&g, 2).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!((recs[0].base_src, recs[0].base_dst, recs[0].pattern.bits), (0, 0, 0b0010));
        assert_eq!((recs[1].base_src, recs[1].base_dst, recs[1].pattern.bits), (2, 2, 0b0010));
    }

    #[test]
    fn six_vertex_example() {
        let recs = partition(&six_vertex_graph(), 2).unwrap();
        // 3x3 window grid, 2 empty windows excluded
        assert_eq!(recs.len(), 7);
        let mut freq: BTreeMap<u64, usize> = BTreeMap::new();
        for r in &recs {
            *freq.entry(r.pattern.bits).or_default() += 1;
        }
        assert_eq!(freq.values().max(), Some(&3));
        assert_eq!(freq[&0b0010], 3);
    }

    #[test]
    fn edgeless_graph_empty() {
        let g = Graph { num_vertices: 5, edges: vec![], directed: true };
        assert!(partition(&g, 2).unwrap().is_empty());
    }

    #[test]
    fn window_size_bounds() {
        let g = six_vertex_graph();
        assert!(partition(&g, 1).is_err());
        assert!(partition(&g, 9).is_err());
        assert!(partition(&g, 8).is_ok());
    }

    #[test]
    fn ragged_edge_zero_padded() {
        // 5 vertices, c=4: last window row/col only partially covered
        let g = Graph::new(5, &[(4, 4, 1.0), (0, 4, 1.0)], true).unwrap();
        let recs = partition(&g, 4).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!((recs[0].base_src, recs[0].base_dst), (0, 4));
        assert_eq!(recs[0].pattern.bits, 1); // local (0, 0)
        assert_eq!((recs[1].base_src, recs[1].base_dst), (4, 4));
    }

    #[test]
    fn edge_conservation_and_reconstruction() {
        let g = six_vertex_graph();
        for c in [2u8, 3, 4] {
            let recs = partition(&g, c).unwrap();
            let total: u32 = recs.iter().map(|r| r.pattern.edge_count()).sum();
            assert_eq!(total as usize, g.num_edges());
            // rebuild the adjacency set from records
            let mut rebuilt = alloc::collections::BTreeSet::new();
            for r in &recs {
                for row in 0..c {
                    for col in 0..c {
                        if r.pattern.has_edge(row, col) {
                            rebuilt.insert((r.base_src + row as u32, r.base_dst + col as u32));
                        }
                    }
                }
            }
            let original: alloc::collections::BTreeSet<_> =
                g.edges.iter().map(|&(s, d, _)| (s, d)).collect();
            assert_eq!(rebuilt, original);
            let n = g.num_vertices.div_ceil(c as u32) as usize;
            assert!(recs.len() <= n * n);
        }
    }

    #[test]
    fn weights_follow_bit_order() {
        let g = Graph::new(2, &[(1, 0, 7.0), (0, 1, 3.0)], true).unwrap();
        let recs = partition(&g, 2).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].pattern.bits, 0b0110);
        // bit 1 = (0,1) weight 3, bit 2 = (1,0) weight 7
        assert_eq!(recs[0].weights, vec![3.0, 7.0]);
    }

    #[test]
    fn single_edge_row_hint() {
        let p = Pattern::new(4, 1 << 9).unwrap(); // local edge (2, 1)
        assert_eq!(p.single_edge_row(), Some(2));
        let p = Pattern::new(4, 0b11).unwrap();
        assert_eq!(p.single_edge_row(), None);
    }
}
