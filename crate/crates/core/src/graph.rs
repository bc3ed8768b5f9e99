//! Simple undirected graphs with an eager all-pairs distance matrix, and the
//! point/block incidence graph of a design.

use std::collections::VecDeque;
use std::ops::Deref;

use crate::design::{Design, DesignError};
use crate::vset::VertexSet;

/// Hop distance; [`INF`] marks disconnected pairs.
pub type Dist = u16;
pub const INF: Dist = Dist::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    nbhd: Vec<VertexSet>,
    dist: Vec<Dist>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Loops are rejected and parallel edges merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            assert!(a < n && b < n && a != b, "bad edge ({a}, {b}) for {n} vertices");
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let nbhd = adj
            .iter()
            .map(|l| VertexSet::from_iter(n, l.iter().copied()))
            .collect();
        let dist = all_pairs_bfs(&adj);
        Self { adj, nbhd, dist }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, x: usize) -> &[usize] {
        &self.adj[x]
    }

    pub fn neighbor_set(&self, x: usize) -> &VertexSet {
        &self.nbhd[x]
    }

    pub fn degree(&self, x: usize) -> usize {
        self.adj[x].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.nbhd[a].contains(b)
    }

    #[inline]
    pub fn dist(&self, a: usize, b: usize) -> Dist {
        self.dist[a * self.adj.len() + b]
    }

    /// Row of the distance matrix for `a`.
    #[inline]
    pub fn dist_row(&self, a: usize) -> &[Dist] {
        let n = self.adj.len();
        &self.dist[a * n..(a + 1) * n]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, l)| l.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }

    pub fn is_connected(&self) -> bool {
        self.dist.iter().all(|&d| d != INF)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// Length of a shortest cycle, or `None` for forests. Exhaustive BFS from every vertex.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        let mut depth = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        for s in 0..n {
            depth.iter_mut().for_each(|d| *d = usize::MAX);
            depth[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if depth[y] == usize::MAX {
                        depth[y] = depth[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        let len = depth[x] + depth[y] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// True iff no edge joins two members of `s`.
    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|x| self.nbhd[x].is_disjoint(s))
    }
}

fn all_pairs_bfs(adj: &[Vec<usize>]) -> Vec<Dist> {
    let n = adj.len();
    assert!(n < INF as usize, "graph too large for the distance matrix");
    let mut dist = vec![INF; n * n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        row[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            let dx = row[x];
            for &y in &adj[x] {
                if row[y] == INF {
                    row[y] = dx + 1;
                    queue.push_back(y);
                }
            }
        }
    }
    dist
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Point,
    Block,
}

/// Incidence graph of a design: vertices `0..v` are points, `v..v+b` blocks.
#[derive(Debug, Clone)]
pub struct IncidenceGraph {
    graph: Graph,
    v: usize,
    b: usize,
}

impl IncidenceGraph {
    pub fn new(design: &Design) -> Result<Self, DesignError> {
        let v = design.v();
        let b = design.b();
        let edges = design
            .blocks()
            .iter()
            .enumerate()
            .flat_map(|(i, block)| block.iter().map(move |&p| (p, v + i)));
        let graph = Graph::from_edges(v + b, edges);
        if !graph.is_connected() {
            return Err(DesignError::DisconnectedGraph);
        }
        Ok(Self { graph, v, b })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn side(&self, x: usize) -> Side {
        if x < self.v {
            Side::Point
        } else {
            Side::Block
        }
    }

    /// Vertex id of block `i`.
    pub fn block_vertex(&self, i: usize) -> usize {
        self.v + i
    }

    pub fn points(&self) -> impl Iterator<Item = usize> {
        0..self.v
    }

    pub fn block_vertices(&self) -> impl Iterator<Item = usize> {
        self.v..self.v + self.b
    }
}

impl Deref for IncidenceGraph {
    type Target = Graph;

    fn deref(&self) -> &Graph {
        &self.graph
    }
}

/// Builds the incidence graph of `design`.
pub fn incidence_graph(design: &Design) -> Result<IncidenceGraph, DesignError> {
    IncidenceGraph::new(design)
}

/// Small named graphs used in tests and examples.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))))
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i)))
    }

    pub fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner))
    }
}
