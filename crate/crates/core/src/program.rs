//! Vertex programs (BFS, SSSP, PageRank) expressed as edge-compute /
//! reduce-apply pairs, plus plain CPU reference implementations used as
//! correctness oracles.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A vertex program in the streaming-apply model. Per iteration the
/// scheduler builds crossbar inputs with [`edge_input`], runs
/// [`edge_compute`] (the in-crossbar phase) for every edge, folds
/// incoming messages with [`reduce`], and finishes with [`apply`] on
/// every vertex. Values never depend on the architecture, only on the
/// graph.
///
/// [`edge_input`]: VertexProgram::edge_input
/// [`edge_compute`]: VertexProgram::edge_compute
/// [`reduce`]: VertexProgram::reduce
/// [`apply`]: VertexProgram::apply
pub trait VertexProgram {
    fn name(&self) -> &'static str;
    fn init(&mut self, g: &Graph) -> Result<Vec<f64>>;
    /// Hook run before each iteration over a snapshot of the values.
    fn begin_iteration(&mut self, _values: &[f64], _g: &Graph) {}
    /// Value fed into the crossbar wordline for vertex `v`.
    fn edge_input(&self, v: u32, value: f64) -> f64;
    /// The per-edge computation (the crossbar's multiply role).
    fn edge_compute(&self, input: f64, weight: f64) -> f64;
    /// Associative, commutative message fold with `reduce_identity()`.
    fn reduce(&self, a: f64, b: f64) -> f64;
    fn reduce_identity(&self) -> f64;
    /// New vertex value from the old value and the reduced message.
    fn apply(&self, v: u32, old: f64, reduced: f64) -> f64;
    fn converged(&self, old: &[f64], new: &[f64], iterations: u64) -> bool;
}

fn fabs(x: f64) -> f64 {
    if x < 0.0 {
        -x
    } else {
        x
    }
}

fn min(a: f64, b: f64) -> f64 {
    if a < b {
        a
    } else {
        b
    }
}

/// Hop distances from a source vertex; edge weights are ignored.
pub struct Bfs {
    pub source: u32,
}

impl VertexProgram for Bfs {
    fn name(&self) -> &'static str {
        "bfs"
    }

    fn init(&mut self, g: &Graph) -> Result<Vec<f64>> {
        if self.source >= g.num_vertices {
            return Err(Error::Config(format!("source {} out of range", self.source)));
        }
        let mut v = vec![f64::INFINITY; g.num_vertices as usize];
        v[self.source as usize] = 0.0;
        Ok(v)
    }

    fn edge_input(&self, _v: u32, value: f64) -> f64 {
        value
    }

    fn edge_compute(&self, input: f64, _weight: f64) -> f64 {
        input + 1.0
    }

    fn reduce(&self, a: f64, b: f64) -> f64 {
        min(a, b)
    }

    fn reduce_identity(&self) -> f64 {
        f64::INFINITY
    }

    fn apply(&self, _v: u32, old: f64, reduced: f64) -> f64 {
        min(old, reduced)
    }

    fn converged(&self, old: &[f64], new: &[f64], _iterations: u64) -> bool {
        old == new
    }
}

/// Weighted shortest-path distances from a source vertex.
pub struct Sssp {
    pub source: u32,
}

impl VertexProgram for Sssp {
    fn name(&self) -> &'static str {
        "sssp"
    }

    fn init(&mut self, g: &Graph) -> Result<Vec<f64>> {
        if self.source >= g.num_vertices {
            return Err(Error::Config(format!("source {} out of range", self.source)));
        }
        if g.edges.iter().any(|&(_, _, w)| w < 0.0) {
            return Err(Error::Config("negative edge weights are rejected".into()));
        }
        let mut v = vec![f64::INFINITY; g.num_vertices as usize];
        v[self.source as usize] = 0.0;
        Ok(v)
    }

    fn edge_input(&self, _v: u32, value: f64) -> f64 {
        value
    }

    fn edge_compute(&self, input: f64, weight: f64) -> f64 {
        input + weight
    }

    fn reduce(&self, a: f64, b: f64) -> f64 {
        min(a, b)
    }

    fn reduce_identity(&self) -> f64 {
        f64::INFINITY
    }

    fn apply(&self, _v: u32, old: f64, reduced: f64) -> f64 {
        min(old, reduced)
    }

    fn converged(&self, old: &[f64], new: &[f64], _iterations: u64) -> bool {
        old == new
    }
}

/// PageRank with uniform redistribution of dangling mass, so ranks sum
/// to one every iteration. Runs a fixed iteration budget or stops when
/// the L1 delta drops below `tolerance`.
pub struct PageRank {
    pub damping: f64,
    pub max_iterations: u64,
    pub tolerance: f64,
    out_degrees: Vec<u32>,
    dangling_mass: f64,
    n: f64,
}

impl PageRank {
    pub fn new(damping: f64, max_iterations: u64, tolerance: f64) -> Self {
        PageRank {
            damping,
            max_iterations,
            tolerance,
            out_degrees: Vec::new(),
            dangling_mass: 0.0,
            n: 0.0,
        }
    }
}

impl Default for PageRank {
    fn default() -> Self {
        PageRank::new(0.85, 10, 1e-6)
    }
}

impl VertexProgram for PageRank {
    fn name(&self) -> &'static str {
        "pagerank"
    }

    fn init(&mut self, g: &Graph) -> Result<Vec<f64>> {
        if !(0.0..=1.0).contains(&self.damping) {
            return Err(Error::Config("damping must lie in [0, 1]".into()));
        }
        if g.num_vertices == 0 {
            return Err(Error::Config("empty graph".into()));
        }
        self.out_degrees = g.out_degrees();
        self.n = g.num_vertices as f64;
        Ok(vec![1.0 / self.n; g.num_vertices as usize])
    }

    fn begin_iteration(&mut self, values: &[f64], _g: &Graph) {
        self.dangling_mass = values
            .iter()
            .zip(&self.out_degrees)
            .filter(|&(_, &d)| d == 0)
            .map(|(&r, _)| r)
            .sum();
    }

    fn edge_input(&self, v: u32, value: f64) -> f64 {
        let d = self.out_degrees[v as usize];
        if d == 0 {
            0.0
        } else {
            value / d as f64
        }
    }

    fn edge_compute(&self, input: f64, _weight: f64) -> f64 {
        input
    }

    fn reduce(&self, a: f64, b: f64) -> f64 {
        a + b
    }

    fn reduce_identity(&self) -> f64 {
        0.0
    }

    fn apply(&self, _v: u32, _old: f64, reduced: f64) -> f64 {
        (1.0 - self.damping) / self.n
            + self.damping * (reduced + self.dangling_mass / self.n)
    }

    fn converged(&self, old: &[f64], new: &[f64], iterations: u64) -> bool {
        if iterations >= self.max_iterations {
            return true;
        }
        let delta: f64 = old.iter().zip(new).map(|(&a, &b)| fabs(a - b)).sum();
        delta < self.tolerance
    }
}

/// Algorithm selector used by the scheduler CLI and the sweep harness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Algo {
    Bfs { source: u32 },
    Sssp { source: u32 },
    PageRank { damping: f64, max_iterations: u64, tolerance: f64 },
}

impl Algo {
    pub fn make_program(&self) -> Box<dyn VertexProgram> {
        match *self {
            Algo::Bfs { source } => Box::new(Bfs { source }),
            Algo::Sssp { source } => Box::new(Sssp { source }),
            Algo::PageRank { damping, max_iterations, tolerance } => {
                Box::new(PageRank::new(damping, max_iterations, tolerance))
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Algo::Bfs { .. } => "bfs",
            Algo::Sssp { .. } => "sssp",
            Algo::PageRank { .. } => "pagerank",
        }
    }

    /// Reference CPU result for the same graph, used as the oracle the
    /// simulated execution must reproduce.
    pub fn reference(&self, g: &Graph, iterations: u64) -> Result<Vec<f64>> {
        match *self {
            Algo::Bfs { source } => reference::bfs(g, source),
            Algo::Sssp { source } => reference::sssp(g, source),
            Algo::PageRank { damping, .. } => reference::pagerank(g, damping, iterations),
        }
    }
}

impl core::fmt::Display for Algo {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for Algo {
    type Err = String;
    fn from_str(s: &str) -> core::result::Result<Self, String> {
        match s {
            "bfs" => Ok(Algo::Bfs { source: 0 }),
            "sssp" => Ok(Algo::Sssp { source: 0 }),
            "pagerank" => Ok(Algo::PageRank { damping: 0.85, max_iterations: 10, tolerance: 1e-6 }),
            other => Err(format!("unknown algorithm '{other}'")),
        }
    }
}

/// Textbook implementations, independent of the window/engine execution
/// path.
pub mod reference {
    use super::*;
    use alloc::collections::VecDeque;

    pub fn bfs(g: &Graph, source: u32) -> Result<Vec<f64>> {
        if source >= g.num_vertices {
            return Err(Error::Config(format!("source {source} out of range")));
        }
        let n = g.num_vertices as usize;
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &(s, d, _) in &g.edges {
            adj[s as usize].push(d);
        }
        let mut dist = vec![f64::INFINITY; n];
        dist[source as usize] = 0.0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v as usize] {
                if dist[u as usize].is_infinite() {
                    dist[u as usize] = dist[v as usize] + 1.0;
                    queue.push_back(u);
                }
            }
        }
        Ok(dist)
    }

    /// Bellman-Ford; fine at the graph sizes the oracle runs on.
    pub fn sssp(g: &Graph, source: u32) -> Result<Vec<f64>> {
        if source >= g.num_vertices {
            return Err(Error::Config(format!("source {source} out of range")));
        }
        if g.edges.iter().any(|&(_, _, w)| w < 0.0) {
            return Err(Error::Config("negative edge weights are rejected".into()));
        }
        let n = g.num_vertices as usize;
        let mut dist = vec![f64::INFINITY; n];
        dist[source as usize] = 0.0;
        for _ in 0..n {
            let mut changed = false;
            for &(s, d, w) in &g.edges {
                let cand = dist[s as usize] + w;
                if cand < dist[d as usize] {
                    dist[d as usize] = cand;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Ok(dist)
    }

    pub fn pagerank(g: &Graph, damping: f64, iterations: u64) -> Result<Vec<f64>> {
        if g.num_vertices == 0 {
            return Err(Error::Config("empty graph".into()));
        }
        let n = g.num_vertices as usize;
        let nf = n as f64;
        let out_deg = g.out_degrees();
        let mut rank = vec![1.0 / nf; n];
        for _ in 0..iterations {
            let dangling: f64 = rank
                .iter()
                .zip(&out_deg)
                .filter(|&(_, &d)| d == 0)
                .map(|(&r, _)| r)
                .sum();
            let mut incoming = vec![0.0; n];
            for &(s, d, _) in &g.edges {
                incoming[d as usize] += rank[s as usize] / out_deg[s as usize] as f64;
            }
            for v in 0..n {
                rank[v] = (1.0 - damping) / nf + damping * (incoming[v] + dangling / nf);
            }
        }
        Ok(rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bfs_reference_path() {
        let g = Graph::new(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)], true).unwrap();
        assert_eq!(reference::bfs(&g, 0).unwrap(), vec![0.0, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn bfs_disconnected_is_infinite() {
        let g = Graph::new(3, &[(0, 1, 1.0)], true).unwrap();
        let d = reference::bfs(&g, 0).unwrap();
        assert!(d[2].is_infinite());
    }

    #[test]
    fn bfs_source_out_of_range() {
        let g = Graph::new(2, &[(0, 1, 1.0)], true).unwrap();
        assert!(reference::bfs(&g, 2).is_err());
        assert!(Bfs { source: 2 }.init(&g).is_err());
    }

    #[test]
    fn sssp_weighted_triangle() {
        let g = Graph::new(3, &[(0, 1, 5.0), (0, 2, 1.0), (2, 1, 1.0)], true).unwrap();
        let d = reference::sssp(&g, 0).unwrap();
        assert_eq!(d[1], 2.0);
    }

    #[test]
    fn sssp_rejects_negative_weights() {
        let g = Graph {
            num_vertices: 2,
            edges: vec![(0, 1, -1.0)],
            directed: true,
        };
        assert!(reference::sssp(&g, 0).is_err());
        assert!(Sssp { source: 0 }.init(&g).is_err());
    }

    #[test]
    fn pagerank_two_cycle_symmetric() {
        let g = Graph::new(2, &[(0, 1, 1.0), (1, 0, 1.0)], true).unwrap();
        let r = reference::pagerank(&g, 0.85, 50).unwrap();
        assert!(fabs(r[0] - 0.5) < 1e-12);
        assert!(fabs(r[1] - 0.5) < 1e-12);
    }

    #[test]
    fn pagerank_mass_conserved_with_dangling() {
        // vertex 2 dangles
        let g = Graph::new(3, &[(0, 1, 1.0), (1, 2, 1.0)], true).unwrap();
        let r = reference::pagerank(&g, 0.85, 25).unwrap();
        let total: f64 = r.iter().sum();
        assert!(fabs(total - 1.0) < 1e-9);
    }

    #[test]
    fn algo_parses_from_str() {
        assert_eq!("bfs".parse::<Algo>().unwrap().name(), "bfs");
        assert!("dfs".parse::<Algo>().is_err());
    }
}
