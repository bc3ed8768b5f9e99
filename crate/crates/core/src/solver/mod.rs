//! Exact localization numbers of small graphs.
//!
//! A state is a territory (the candidate set before a probe). From the full
//! vertex set the solver explores every territory the robber can reach
//! against some `k`-probe, then ranks states by rounds-to-capture: rank 0
//! when some probe splits the state into singletons, rank `R + 1` when some
//! probe leaves only cells whose neighbourhoods have rank at most `R`. States
//! never ranked form the robber's region.
//!
//! Only probes of exactly `k` vertices are tried (extra probes never hurt),
//! probes inducing the same partition are merged, and a probe is dropped when
//! another one strictly refines its partition: a finer split leaves the
//! robber fewer and smaller options.

mod certificate;

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::game::{expand, partition_by_probe, Placement};
use crate::graph::Graph;
use crate::vset::VertexSet;

pub use certificate::{
    extract_certificate, CertificateError, CertificateStrategy, CopCertificate, RobberCertificate,
    RobberEntry, ShadowRobber,
};

#[derive(Debug, Clone)]
pub struct Budgets {
    /// Most states to explore.
    pub states: usize,
    /// Deepest rank to compute; `None` means `3 |V|`.
    pub rounds: Option<usize>,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl Default for Budgets {
    fn default() -> Self {
        Self {
            states: 2_000_000,
            rounds: None,
            threads: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveStatus {
    /// `k` cops capture within `rounds` probes.
    CopsWin { rounds: usize },
    RobberWins,
    /// A budget ran out first.
    Unknown { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Cops(CopCertificate),
    Robber(RobberCertificate),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub k: usize,
    pub status: SolveStatus,
    /// Distinct territories explored.
    pub states: usize,
    pub certificate: Option<Certificate>,
}

/// One non-dominated probe from a state.
#[derive(Debug, Clone)]
struct Move {
    placement: Placement,
    /// Non-singleton cells, sorted.
    cells: Vec<VertexSet>,
    /// State ids of the expanded cells.
    next: Vec<u32>,
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let k = k.min(n);
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// `a` refines `b`: every cell of `a` sits inside a cell of `b`.
fn refines(a: &[VertexSet], b: &[VertexSet]) -> bool {
    a.iter().all(|x| b.iter().any(|y| x.is_subset(y)))
}

/// Non-singleton cells of `s` under probe `p`, sorted.
///
/// With at most 16 probes and distances below 255 the distance vector is
/// packed into one integer key; otherwise the engine's partition is used.
fn open_cells(g: &Graph, s: &VertexSet, p: &Placement, packable: bool) -> Vec<VertexSet> {
    let mut cells: Vec<VertexSet> = if packable && p.len() <= 16 {
        let probes = p.to_vec();
        let mut keyed: Vec<(u128, usize)> = s
            .iter()
            .map(|x| {
                let key = probes
                    .iter()
                    .fold(0u128, |k, &c| k << 8 | u128::from(g.dist(c, x).min(255) as u8));
                (key, x)
            })
            .collect();
        keyed.sort_unstable();
        keyed
            .chunk_by(|a, b| a.0 == b.0)
            .filter(|run| run.len() >= 2)
            .map(|run| VertexSet::from_iter(g.n(), run.iter().map(|&(_, x)| x)))
            .collect()
    } else {
        partition_by_probe(g, s, p)
            .into_iter()
            .filter(|c| c.len() >= 2)
            .map(|c| c.members)
            .collect()
    };
    cells.sort();
    cells
}

/// True when every finite distance in `g` fits below 255.
fn packable(g: &Graph) -> bool {
    (0..g.n()).all(|a| (0..g.n()).all(|b| g.dist(a, b) < 255))
}

/// Non-dominated probes from `s`, as (placement, open cells), in
/// enumeration order of their first placement.
fn moves_from(
    g: &Graph,
    s: &VertexSet,
    probes: &[Placement],
    packable: bool,
) -> Vec<(Placement, Vec<VertexSet>)> {
    let mut seen: HashSet<Vec<VertexSet>> = HashSet::new();
    let mut list: Vec<(Placement, Vec<VertexSet>, VertexSet)> = Vec::new();
    for p in probes {
        let cells = open_cells(g, s, p, packable);
        if cells.is_empty() {
            return vec![(p.clone(), cells)];
        }
        if !seen.insert(cells.clone()) {
            continue;
        }
        let mut cover = VertexSet::empty(g.n());
        cells.iter().for_each(|c| cover.union_with(c));
        list.push((p.clone(), cells, cover));
    }
    // A refining partition covers a subset of the vertices in open cells.
    let keep: Vec<bool> = (0..list.len())
        .map(|i| {
            !list.iter().enumerate().any(|(j, other)| {
                j != i && other.2.is_subset(&list[i].2) && refines(&other.1, &list[i].1)
            })
        })
        .collect();
    list.into_iter()
        .zip(keep)
        .filter_map(|((p, cells, _), k)| k.then_some((p, cells)))
        .collect()
}

/// Explored game graph and ranks.
struct Solved {
    states: Vec<VertexSet>,
    moves: Vec<Vec<Move>>,
    rank: Vec<Option<u32>>,
    probes: Vec<Placement>,
}

enum Explore {
    Done(Solved),
    OutOfStates(usize),
}

fn explore(g: &Graph, k: usize, budgets: &Budgets) -> Explore {
    let n = g.n();
    let probes: Vec<Placement> = k_subsets(n, k)
        .into_iter()
        .map(|s| VertexSet::from_iter(n, s))
        .collect();
    let packable = packable(g);
    let mut ids: HashMap<VertexSet, u32> = HashMap::new();
    let mut states = vec![g.vertices()];
    ids.insert(g.vertices(), 0);
    let mut moves: Vec<Vec<Move>> = Vec::new();
    let mut frontier = 0..1;
    while !frontier.is_empty() {
        let layer: Vec<Vec<(Placement, Vec<VertexSet>)>> = states[frontier.clone()]
            .par_iter()
            .map(|s| moves_from(g, s, &probes, packable))
            .collect();
        let start = states.len();
        for raw in layer {
            let mut out = Vec::with_capacity(raw.len());
            for (placement, cells) in raw {
                let mut next = Vec::with_capacity(cells.len());
                for c in &cells {
                    let t = expand(g, c);
                    let id = *ids.entry(t.clone()).or_insert_with(|| {
                        states.push(t);
                        (states.len() - 1) as u32
                    });
                    next.push(id);
                }
                out.push(Move {
                    placement,
                    cells,
                    next,
                });
            }
            moves.push(out);
            if states.len() > budgets.states {
                return Explore::OutOfStates(states.len());
            }
        }
        frontier = start..states.len();
    }
    let rank = vec![None; states.len()];
    Explore::Done(Solved {
        states,
        moves,
        rank,
        probes,
    })
}

impl Solved {
    /// Ranks up to `max_rank`. Returns true if a fixpoint was reached.
    fn rank_states(&mut self, max_rank: usize) -> bool {
        for r in 0..=max_rank as u32 {
            let rank = &self.rank;
            let fresh: Vec<usize> = (0..self.states.len())
                .into_par_iter()
                .filter(|&s| {
                    rank[s].is_none()
                        && self.moves[s].iter().any(|m| {
                            m.next.iter().all(|&t| rank[t as usize].is_some_and(|x| x < r))
                        })
                })
                .collect();
            if fresh.is_empty() && r > 0 {
                return true;
            }
            for s in fresh {
                self.rank[s] = Some(r);
            }
            if self.rank.iter().all(Option::is_some) {
                return true;
            }
        }
        false
    }

    /// Best move of a ranked state: least worst successor rank, earliest on ties.
    fn best_move(&self, s: usize) -> &Move {
        self.moves[s]
            .iter()
            .filter(|m| m.next.iter().all(|&t| self.rank[t as usize].is_some()))
            .min_by_key(|m| {
                m.next
                    .iter()
                    .map(|&t| self.rank[t as usize].unwrap() as i64)
                    .max()
                    .unwrap_or(-1)
            })
            .expect("ranked state has a ranking move")
    }
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

/// Decides whether `k` cops win on `g`, with a certificate either way.
pub fn can_win(g: &Graph, k: usize, budgets: &Budgets) -> SolveResult {
    assert!(k >= 1, "at least one cop");
    let max_rank = budgets.rounds.unwrap_or(3 * g.n());
    with_threads(budgets.threads, || {
        let mut solved = match explore(g, k, budgets) {
            Explore::Done(s) => s,
            Explore::OutOfStates(states) => {
                return SolveResult {
                    k,
                    status: SolveStatus::Unknown {
                        reason: format!("state budget {} exceeded", budgets.states),
                    },
                    states,
                    certificate: None,
                }
            }
        };
        let fixpoint = solved.rank_states(max_rank);
        let states = solved.states.len();
        match solved.rank[0] {
            Some(r) => SolveResult {
                k,
                status: SolveStatus::CopsWin {
                    rounds: r as usize + 1,
                },
                states,
                certificate: Some(Certificate::Cops(cop_certificate(&solved, k))),
            },
            None if fixpoint => SolveResult {
                k,
                status: SolveStatus::RobberWins,
                states,
                certificate: Some(Certificate::Robber(robber_certificate(g, &solved, k))),
            },
            None => SolveResult {
                k,
                status: SolveStatus::Unknown {
                    reason: format!("round budget {max_rank} reached"),
                },
                states,
                certificate: None,
            },
        }
    })
}

fn cop_certificate(solved: &Solved, k: usize) -> CopCertificate {
    let mut entries = Vec::new();
    let mut seen = vec![false; solved.states.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(s) = stack.pop() {
        let m = solved.best_move(s);
        entries.push((solved.states[s].clone(), m.placement.clone()));
        for &t in &m.next {
            if !std::mem::replace(&mut seen[t as usize], true) {
                stack.push(t as usize);
            }
        }
    }
    entries.sort();
    CopCertificate {
        k,
        rounds: solved.rank[0].unwrap() as usize + 1,
        entries,
    }
}

fn robber_certificate(g: &Graph, solved: &Solved, k: usize) -> RobberCertificate {
    let region: Vec<usize> = (0..solved.states.len())
        .filter(|&s| solved.rank[s].is_none())
        .collect();
    let id_of: HashMap<&VertexSet, usize> = solved
        .states
        .iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let pack = packable(g);
    let free = |s: &VertexSet| id_of.get(s).is_some_and(|&i| solved.rank[i].is_none());
    let mut entries: Vec<RobberEntry> = region
        .par_iter()
        .flat_map_iter(|&s| {
            let state = &solved.states[s];
            solved.probes.iter().map(move |p| {
                let cells = open_cells(g, state, p, pack);
                let direct = cells.iter().find_map(|c| {
                    let t = expand(g, c);
                    free(&t).then(|| (c.clone(), t))
                });
                let (cell, next) = direct.unwrap_or_else(|| {
                    // Some kept probe refines this one and leaves the robber a
                    // free cell; its expansion fits inside this probe's cell.
                    solved.moves[s]
                        .iter()
                        .flat_map(|m| m.cells.iter().zip(&m.next))
                        .filter(|(_, &t)| solved.rank[t as usize].is_none())
                        .find_map(|(inner, &t)| {
                            cells
                                .iter()
                                .find(|c| inner.is_subset(c))
                                .map(|c| (c.clone(), solved.states[t as usize].clone()))
                        })
                        .expect("robber region is closed")
                });
                RobberEntry {
                    state: state.clone(),
                    probe: p.clone(),
                    cell,
                    next,
                }
            })
        })
        .collect();
    entries.sort();
    RobberCertificate { k, entries }
}

/// Exact value, or bounds when budgets cut the search short.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalizationNumber {
    Exact(usize),
    /// `lower <= ζ`, and `ζ <= upper` when known.
    Interval { lower: usize, upper: Option<usize> },
}

/// Smallest `k <= k_max` with a cop win, trying `k = 1, 2, ...`.
pub fn localization_number(g: &Graph, k_max: usize, budgets: &Budgets) -> LocalizationNumber {
    let mut lower = 1;
    let mut clean = true;
    for k in 1..=k_max {
        match can_win(g, k, budgets).status {
            SolveStatus::CopsWin { .. } if clean => return LocalizationNumber::Exact(k),
            SolveStatus::CopsWin { .. } => {
                return LocalizationNumber::Interval {
                    lower,
                    upper: Some(k),
                }
            }
            SolveStatus::RobberWins => {
                if clean {
                    lower = k + 1;
                }
            }
            SolveStatus::Unknown { .. } => clean = false,
        }
    }
    LocalizationNumber::Interval { lower, upper: None }
}
