//! Independent reference implementations for integration tests.
//!
//! Nothing here calls the library's game engine, solver or distance code;
//! only graph construction and adjacency lists are shared.

#![allow(dead_code)]

use std::collections::VecDeque;
use std::io::Write;

use locgame::graph::{named, Graph};

/// Prints a line that bypasses the test harness's output capture.
pub fn report(line: &str) {
    let mut err = std::io::stderr();
    let _ = writeln!(err, "{line}");
}

/// All-pairs distances by plain BFS; unreachable is `usize::MAX`.
pub fn bfs_distances(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    (0..n)
        .map(|s| {
            let mut d = vec![usize::MAX; n];
            d[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for &y in g.neighbors(x) {
                    if d[y] == usize::MAX {
                        d[y] = d[x] + 1;
                        q.push_back(y);
                    }
                }
            }
            d
        })
        .collect()
}

/// Brute-force game solver over every subset of vertices (`n <= 16`).
///
/// `rank[S]` is the least `R` such that the cops, facing candidate set `S`,
/// capture within `R + 1` probes, trying every placement of at most `k`
/// vertices with no pruning. Computed as a global fixpoint over all `2^n`
/// sets.
pub struct Oracle {
    n: usize,
    closed: Vec<u32>,
    /// For each placement, the classes of `V` by distance vector.
    classes: Vec<Vec<u32>>,
    pub rank: Vec<Option<u32>>,
}

impl Oracle {
    #[allow(clippy::needless_range_loop)]
    pub fn new(g: &Graph, k: usize) -> Self {
        let n = g.n();
        assert!(n <= 16, "oracle limited to 16 vertices");
        let dist = bfs_distances(g);
        let closed = (0..n)
            .map(|x| g.neighbors(x).iter().fold(1u32 << x, |m, &y| m | 1 << y))
            .collect();
        let mut classes = Vec::new();
        for p in 0u32..(1 << n) {
            if p.count_ones() as usize > k {
                continue;
            }
            let probes: Vec<usize> = (0..n).filter(|&i| p >> i & 1 == 1).collect();
            let mut groups: Vec<(Vec<usize>, u32)> = Vec::new();
            for x in 0..n {
                let key: Vec<usize> = probes.iter().map(|&c| dist[c][x]).collect();
                match groups.iter_mut().find(|(k2, _)| *k2 == key) {
                    Some((_, m)) => *m |= 1 << x,
                    None => groups.push((key, 1 << x)),
                }
            }
            classes.push(groups.into_iter().map(|(_, m)| m).collect());
        }
        let mut o = Oracle {
            n,
            closed,
            classes,
            rank: vec![None; 1 << n],
        };
        o.solve();
        o
    }

    fn expand(&self, s: u32) -> u32 {
        (0..self.n)
            .filter(|&x| s >> x & 1 == 1)
            .fold(0, |m, x| m | self.closed[x])
    }

    fn solve(&mut self) {
        let full = (1u32 << self.n) - 1;
        for r in 0.. {
            let mut fresh = Vec::new();
            for s in 1..=full {
                if self.rank[s as usize].is_some() {
                    continue;
                }
                let wins = self.classes.iter().any(|cls| {
                    cls.iter().all(|&c| {
                        let b = c & s;
                        b.count_ones() < 2
                            || self.rank[self.expand(b) as usize].is_some_and(|x| x < r)
                    })
                });
                if wins {
                    fresh.push(s);
                }
            }
            if fresh.is_empty() && r > 0 {
                break;
            }
            for s in fresh {
                self.rank[s as usize] = Some(r);
            }
        }
    }

    /// Probes needed from the full vertex set, if the cops win.
    pub fn rounds(&self) -> Option<usize> {
        self.rank[(1usize << self.n) - 1].map(|r| r as usize + 1)
    }
}

/// Least `k` for which the cops win, with the capture round.
pub fn oracle_value(g: &Graph) -> (usize, usize) {
    (1..=g.n().max(1))
        .find_map(|k| Oracle::new(g, k).rounds().map(|r| (k, r)))
        .expect("n cops always win")
}

fn remove_vertex(g: &Graph, v: usize) -> Graph {
    let relabel = |x: usize| if x > v { x - 1 } else { x };
    let edges = g
        .edges()
        .filter(|&(a, b)| a != v && b != v)
        .map(|(a, b)| (relabel(a), relabel(b)));
    Graph::from_edges(g.n() - 1, edges)
}

/// Connected graphs with at most 12 vertices.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 2..=12 {
        out.push((format!("P{n}"), named::path(n)));
    }
    for n in 3..=12 {
        out.push((format!("C{n}"), named::cycle(n)));
    }
    for leaves in 2..=7 {
        out.push((format!("K1,{leaves}"), named::star(leaves)));
    }
    for n in 2..=5 {
        out.push((format!("K{n}"), named::complete(n)));
    }
    let pet = named::petersen();
    out.push(("Petersen".into(), pet.clone()));
    out.push(("Petersen-v".into(), remove_vertex(&pet, 0)));
    let (a, b) = pet.edges().next().unwrap();
    let minus_edge = Graph::from_edges(10, pet.edges().filter(|&e| e != (a, b)));
    out.push(("Petersen-e".into(), minus_edge));
    out.push(("Petersen-2v".into(), remove_vertex(&remove_vertex(&pet, 0), 0)));
    let mut pendant = pet.edges().collect::<Vec<_>>();
    pendant.extend([(0, 10), (10, 11)]);
    out.push(("Petersen+path".into(), Graph::from_edges(12, pendant)));
    out
}
