//! Exhaustive verification of a cop strategy against every robber.
//!
//! The search is a depth-first walk over all choices of kept cell. When the
//! strategy exposes a memory key, states `(key, last cell)` are memoised and
//! a state repeating on the current path is a robber loop, hence a
//! counterexample. Top-level branches run in parallel; their results are
//! combined in cell order, so the verdict does not depend on scheduling.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use thiserror::Error;

use super::{partition_by_probe, Cell, CopStrategy, GameTranscript, Round};
use crate::graph::Graph;
use crate::vset::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Every robber is captured by round `rounds` at the latest.
    Proven { rounds: usize },
    /// A branch on which the robber is never captured; the last round
    /// returns to a state already on the path.
    Counterexample { transcript: GameTranscript },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("budget exhausted after {nodes} nodes (round budget {round_budget})")]
    BudgetExhausted { nodes: usize, round_budget: usize },
    #[error("strategy placed {probes} probes in round {round} with {cops} cops")]
    TooManyProbes {
        round: usize,
        probes: usize,
        cops: usize,
    },
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Longest branch explored; `None` means `4 |V|`.
    pub round_budget: Option<usize>,
    /// Search nodes allowed per top-level branch.
    pub node_budget: usize,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            round_budget: None,
            node_budget: 20_000_000,
            threads: None,
        }
    }
}

enum Stop {
    Cycle(GameTranscript),
    Error(VerifyError),
}

type State = (u64, Option<VertexSet>);

struct Search<'a> {
    g: &'a Graph,
    cs: &'a dyn CopStrategy,
    round_budget: usize,
    node_budget: usize,
    nodes: usize,
    memo: HashMap<State, usize>,
    path: HashSet<State>,
}

impl Search<'_> {
    fn budget(&self) -> Stop {
        Stop::Error(VerifyError::BudgetExhausted {
            nodes: self.nodes,
            round_budget: self.round_budget,
        })
    }

    /// Open cells of the strategy's next probe.
    fn probe(&self, t: &GameTranscript) -> Result<(VertexSet, Vec<Cell>), Stop> {
        let placement = self.cs.next_placement(self.g, t);
        if placement.len() > self.cs.cops() {
            return Err(Stop::Error(VerifyError::TooManyProbes {
                round: t.round() + 1,
                probes: placement.len(),
                cops: self.cs.cops(),
            }));
        }
        let cells = partition_by_probe(self.g, &t.territory(self.g), &placement)
            .into_iter()
            .filter(|c| c.len() >= 2)
            .collect();
        Ok((placement, cells))
    }

    /// Rounds needed to capture from `t`, counting the next probe.
    fn explore(&mut self, t: &mut GameTranscript) -> Result<usize, Stop> {
        self.nodes += 1;
        if self.nodes > self.node_budget || t.round() >= self.round_budget {
            return Err(self.budget());
        }
        let state = self
            .cs
            .memory_key(t)
            .map(|k| (k, t.last_cell().cloned()));
        if let Some(s) = &state {
            if let Some(&r) = self.memo.get(s) {
                if t.round() + r > self.round_budget {
                    return Err(self.budget());
                }
                return Ok(r);
            }
            if !self.path.insert(s.clone()) {
                return Err(Stop::Cycle(t.clone()));
            }
        }
        let (placement, cells) = self.probe(t)?;
        let mut worst = 0;
        let mut result = Ok(());
        for cell in cells {
            t.rounds.push(Round {
                placement: placement.clone(),
                vector: cell.vector,
                cell: cell.members,
            });
            let r = self.explore(t);
            t.rounds.pop();
            match r {
                Ok(r) => worst = worst.max(r),
                Err(e) => {
                    result = Err(e);
                    break;
                }
            }
        }
        if let Some(s) = state {
            self.path.remove(&s);
            if result.is_ok() {
                self.memo.insert(s, worst + 1);
            }
        }
        result.map(|()| worst + 1)
    }
}

/// Explores every robber choice against `cs` starting from `T0 = V`.
pub fn verify_strategy_exhaustive(
    g: &Graph,
    cs: &dyn CopStrategy,
    opts: &VerifyOptions,
) -> Result<Verdict, VerifyError> {
    let round_budget = opts.round_budget.unwrap_or(4 * g.n());
    let new_search = || Search {
        g,
        cs,
        round_budget,
        node_budget: opts.node_budget,
        nodes: 0,
        memo: HashMap::new(),
        path: HashSet::new(),
    };
    let root = GameTranscript::new(g.vertices());
    if round_budget == 0 {
        return Err(VerifyError::BudgetExhausted {
            nodes: 0,
            round_budget,
        });
    }
    let (placement, cells) = match new_search().probe(&root) {
        Ok(x) => x,
        Err(Stop::Error(e)) => return Err(e),
        Err(Stop::Cycle(t)) => return Ok(Verdict::Counterexample { transcript: t }),
    };
    let root_state = cs.memory_key(&root).map(|k| (k, None));
    let run = |cell: &Cell| {
        let mut search = new_search();
        if let Some(s) = &root_state {
            search.path.insert(s.clone());
        }
        let mut t = root.clone();
        t.rounds.push(Round {
            placement: placement.clone(),
            vector: cell.vector.clone(),
            cell: cell.members.clone(),
        });
        search.explore(&mut t)
    };
    let results: Vec<Result<usize, Stop>> = match opts.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("thread pool");
            pool.install(|| cells.par_iter().map(run).collect())
        }
        None => cells.par_iter().map(run).collect(),
    };
    let mut worst = 0;
    for r in results {
        match r {
            Ok(r) => worst = worst.max(r),
            Err(Stop::Cycle(t)) => return Ok(Verdict::Counterexample { transcript: t }),
            Err(Stop::Error(e)) => return Err(e),
        }
    }
    Ok(Verdict::Proven { rounds: worst + 1 })
}
