//! COO graph representation and edge-list parsing.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A graph in coordinate-list form. Vertex ids are taken as given from
/// the input; gaps in the id space become isolated vertices so window
/// coordinates stay comparable to the raw adjacency matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    pub num_vertices: u32,
    /// Directed edges (src, dst, weight), deduplicated. For undirected
    /// graphs the set is closed under reversal.
    pub edges: Vec<(u32, u32, f64)>,
    pub directed: bool,
}

impl Graph {
    /// Builds a graph from explicit edges, enforcing the COO invariants:
    /// ids in range, nonnegative weights, duplicates dropped (first
    /// occurrence wins), reverse edges added when `directed` is false.
    pub fn new(num_vertices: u32, edges: &[(u32, u32, f64)], directed: bool) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(edges.len());
        let mut push = |src: u32, dst: u32, w: f64, out: &mut Vec<(u32, u32, f64)>| {
            if seen.insert((src, dst)) {
                out.push((src, dst, w));
            }
        };
        for &(src, dst, w) in edges {
            if src >= num_vertices || dst >= num_vertices {
                return Err(Error::Config(format!(
                    "edge ({src}, {dst}) out of range for {num_vertices} vertices"
                )));
            }
            if !(w >= 0.0) {
                return Err(Error::Config(format!(
                    "negative or NaN weight {w} on edge ({src}, {dst})"
                )));
            }
            push(src, dst, w, &mut out);
            if !directed {
                push(dst, src, w, &mut out);
            }
        }
        Ok(Graph { num_vertices, edges: out, directed })
    }

    /// Parses SNAP-style edge-list text: whitespace-separated
    /// `src dst [weight]` per line, `#` lines are comments.
    /// `num_vertices` becomes 1 + the maximum vertex id seen.
    pub fn parse_edge_list(text: &str, directed: bool) -> Result<Self> {
        let mut raw: Vec<(u32, u32, f64)> = Vec::new();
        let mut max_id: u32 = 0;
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let src = parse_id(fields.next(), lineno)?;
            let dst = parse_id(fields.next(), lineno)?;
            let w = match fields.next() {
                Some(tok) => tok.parse::<f64>().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("invalid weight '{tok}'"),
                })?,
                None => 1.0,
            };
            if !(w >= 0.0) {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("negative weight {w}"),
                });
            }
            max_id = max_id.max(src).max(dst);
            raw.push((src, dst, w));
        }
        if raw.is_empty() {
            return Err(Error::Parse { line: 0, msg: String::from("no edges") });
        }
        Graph::new(max_id + 1, &raw, directed)
    }

    /// Serializes to edge-list text (one `src dst weight` line per stored
    /// directed edge). Reloading the output as a directed graph restores
    /// the same edge set.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for &(src, dst, w) in &self.edges {
            s.push_str(&format!("{src} {dst} {w}\n"));
        }
        s
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// (average degree, sparsity %) over the stored directed edge count.
    pub fn stats(&self) -> Result<(f64, f64)> {
        if self.num_vertices == 0 {
            return Err(Error::Config(String::from("graph has zero vertices")));
        }
        let n = self.num_vertices as f64;
        let m = self.edges.len() as f64;
        Ok((m / n, 100.0 * (1.0 - m / (n * n))))
    }

    /// Out-degree per vertex (stored directed edges).
    pub fn out_degrees(&self) -> Vec<u32> {
        let mut deg = alloc::vec![0u32; self.num_vertices as usize];
        for &(src, _, _) in &self.edges {
            deg[src as usize] += 1;
        }
        deg
    }

    pub fn in_degrees(&self) -> Vec<u32> {
        let mut deg = alloc::vec![0u32; self.num_vertices as usize];
        for &(_, dst, _) in &self.edges {
            deg[dst as usize] += 1;
        }
        deg
    }
}

fn parse_id(tok: Option<&str>, lineno: usize) -> Result<u32> {
    let tok = tok.ok_or_else(|| Error::Parse {
        line: lineno,
        msg: String::from("fewer than 2 fields"),
    })?;
    tok.parse::<u32>().map_err(|_| Error::Parse {
        line: lineno,
        msg: format!("invalid vertex id '{tok}'"),
    })
}
