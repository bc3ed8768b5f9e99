//! Exact maximum sets of pairwise disjoint blocks.

use super::StrategyError;
use crate::design::Design;

/// A largest family of pairwise disjoint blocks and the points it misses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Packing {
    /// Block indices, ascending.
    pub blocks: Vec<usize>,
    pub uncovered: Vec<usize>,
}

struct Search<'a> {
    design: &'a Design,
    through: Vec<Vec<usize>>,
    k: usize,
    target: usize,
    used: Vec<bool>,
    chosen: Vec<usize>,
    best: Vec<usize>,
    nodes: usize,
    budget: usize,
}

impl Search<'_> {
    /// Branches on the lowest undecided point: each fitting block through
    /// it, or leaving it uncovered. `free` counts undecided points.
    fn go(&mut self, from: usize, free: usize) -> Result<(), StrategyError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(StrategyError::BudgetExhausted(self.budget));
        }
        if self.best.len() == self.target {
            return Ok(());
        }
        if self.chosen.len() + free / self.k <= self.best.len() {
            return Ok(());
        }
        let Some(p) = (from..self.used.len()).find(|&p| !self.used[p]) else {
            if self.chosen.len() > self.best.len() {
                self.best = self.chosen.clone();
            }
            return Ok(());
        };
        for i in 0..self.through[p].len() {
            let bi = self.through[p][i];
            let block = self.design.block(bi);
            if block.iter().any(|&x| self.used[x]) {
                continue;
            }
            block.iter().for_each(|&x| self.used[x] = true);
            self.chosen.push(bi);
            let r = self.go(p + 1, free - block.len());
            self.chosen.pop();
            block.iter().for_each(|&x| self.used[x] = false);
            r?;
        }
        self.used[p] = true;
        let r = self.go(p + 1, free - 1);
        self.used[p] = false;
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        r
    }
}

/// Branch and bound over blocks; the bound is the chosen count plus the
/// undecided points divided by the block size. Stops early at `⌊v/k⌋`.
pub fn max_partial_parallel_class(
    design: &Design,
    node_budget: usize,
) -> Result<Packing, StrategyError> {
    let k = design
        .uniform_block_size()
        .filter(|&k| k > 0)
        .ok_or_else(|| StrategyError::NotApplicable("blocks differ in size".into()))?;
    let v = design.v();
    let mut s = Search {
        design,
        through: (0..v).map(|p| design.blocks_through(p)).collect(),
        k,
        target: v / k,
        used: vec![false; v],
        chosen: Vec::new(),
        best: Vec::new(),
        nodes: 0,
        budget: node_budget,
    };
    s.go(0, v)?;
    let mut blocks = s.best;
    blocks.sort_unstable();
    let mut covered = vec![false; v];
    for &bi in &blocks {
        design.block(bi).iter().for_each(|&x| covered[x] = true);
    }
    let uncovered = (0..v).filter(|&p| !covered[p]).collect();
    Ok(Packing { blocks, uncovered })
}
