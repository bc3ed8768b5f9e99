//! Strategies for Steiner triple and quadruple systems and for Steiner
//! systems with a large set of disjoint blocks.

use super::{common_side, max_partial_parallel_class, not_applicable, Packing, StrategyError};
use crate::design::{validate_bibd, validate_steiner, Design};
use crate::game::{partition_by_probe, CopStrategy, GameTranscript, Placement};
use crate::graph::{incidence_graph, Graph, Side};
use crate::vset::VertexSet;

fn require_sts(design: &Design) -> Result<(), StrategyError> {
    match validate_bibd(design) {
        Ok(p) if p.lambda == 1 && p.k == 3 => Ok(()),
        Ok(p) => not_applicable(format!("{p} is not a Steiner triple system")),
        Err(e) => Err(e.into()),
    }
}

/// `(v + 1) / 2` cops on a triple system. The points are split into the
/// lower half `A` (`(v + 1) / 2` points) and the upper half `B`. The cops
/// probe `A` until the kept cell says the robber is on `B` or on a block
/// with a known point, then probe `B` (plus that point, or plus the lowest
/// point of `A`) or `A` minus its lowest point plus that point.
#[derive(Debug, Clone)]
pub struct StsHalfStrategy {
    v: usize,
    n: usize,
    half: usize,
    blocks: Vec<Vec<usize>>,
}

impl StsHalfStrategy {
    fn in_a(&self, x: usize) -> bool {
        x < self.half
    }

    fn set(&self, it: impl IntoIterator<Item = usize>) -> Placement {
        VertexSet::from_iter(self.n, it)
    }

    fn probe_a(&self) -> Placement {
        self.set(0..self.half)
    }

    fn probe_b_with(&self, extra: usize) -> Placement {
        self.set((self.half..self.v).chain([extra]))
    }

    fn choose(&self, cell: &VertexSet) -> Placement {
        match common_side(self.v, cell) {
            Some(Side::Point) if cell.iter().all(|x| !self.in_a(x)) => self.probe_b_with(0),
            Some(Side::Block) => {
                let blocks: Vec<&Vec<usize>> =
                    cell.iter().map(|x| &self.blocks[x - self.v]).collect();
                let a_count = |b: &Vec<usize>| b.iter().filter(|&&x| self.in_a(x)).count();
                let shared = |pick: &dyn Fn(usize) -> bool| {
                    let first: Vec<usize> =
                        blocks[0].iter().copied().filter(|&x| pick(x)).collect();
                    first
                        .into_iter()
                        .find(|x| blocks.iter().all(|b| b.contains(x)))
                };
                if blocks.iter().all(|b| a_count(b) == 0) {
                    self.probe_b_with(0)
                } else if blocks.iter().all(|b| a_count(b) == 1) {
                    match shared(&|x| self.in_a(x)) {
                        Some(p) => self.probe_b_with(p),
                        None => self.probe_a(),
                    }
                } else if blocks.iter().all(|b| a_count(b) == 2) {
                    match shared(&|x| !self.in_a(x)) {
                        Some(p) => self.set((1..self.half).chain([p])),
                        None => self.probe_a(),
                    }
                } else {
                    self.probe_a()
                }
            }
            _ => self.probe_a(),
        }
    }
}

impl CopStrategy for StsHalfStrategy {
    fn cops(&self) -> usize {
        self.half
    }

    fn next_placement(&self, _: &Graph, t: &GameTranscript) -> Placement {
        match t.last_cell() {
            Some(cell) => self.choose(cell),
            None => self.probe_a(),
        }
    }

    fn memory_key(&self, _: &GameTranscript) -> Option<u64> {
        Some(0)
    }
}

pub fn sts_half_strategy(design: &Design) -> Result<StsHalfStrategy, StrategyError> {
    require_sts(design)?;
    Ok(StsHalfStrategy {
        v: design.v(),
        n: design.v() + design.b(),
        half: design.v().div_ceil(2),
        blocks: design.blocks().to_vec(),
    })
}

/// Cops fixed on a maximum set `T` of disjoint blocks and on the points `Q`
/// it misses, plus one spare. A robber seen on the points of one block of
/// `T` is chased there by the spare, one point per round. A robber seen on
/// a set of blocks is pinned by probing every point of those blocks, which
/// for a triple system is at most the nine points of three `T` blocks.
#[derive(Debug, Clone)]
pub struct MatchingStrategy {
    cops: usize,
    v: usize,
    n: usize,
    base: Placement,
    packing: Packing,
    blocks: Vec<Vec<usize>>,
}

impl MatchingStrategy {
    pub fn packing(&self) -> &Packing {
        &self.packing
    }

    fn inside_one_packed_block(&self, cell: &VertexSet) -> bool {
        self.packing
            .blocks
            .iter()
            .any(|&bi| cell.iter().all(|x| self.blocks[bi].contains(&x)))
    }

    /// Points of the given block vertices, truncated to the cop count.
    fn cover(&self, cell: &VertexSet) -> Placement {
        let mut pts = VertexSet::empty(self.n);
        for x in cell.iter() {
            for &p in &self.blocks[x - self.v] {
                pts.insert(p);
            }
        }
        VertexSet::from_iter(self.n, pts.iter().take(self.cops))
    }

    fn new(design: &Design, packing: Packing, cops: usize) -> Self {
        let v = design.v();
        let n = v + design.b();
        let base = VertexSet::from_iter(
            n,
            packing
                .blocks
                .iter()
                .map(|&b| v + b)
                .chain(packing.uncovered.iter().copied()),
        );
        Self {
            cops,
            v,
            n,
            base,
            packing,
            blocks: design.blocks().to_vec(),
        }
    }
}

impl CopStrategy for MatchingStrategy {
    fn cops(&self) -> usize {
        self.cops
    }

    fn next_placement(&self, _: &Graph, t: &GameTranscript) -> Placement {
        let Some(cell) = t.last_cell() else {
            return self.base.clone();
        };
        match common_side(self.v, cell) {
            Some(Side::Point) if self.inside_one_packed_block(cell) => {
                let mut p = self.base.clone();
                p.insert(cell.first().expect("cells are non-empty"));
                p
            }
            Some(Side::Block) => self.cover(cell),
            _ => self.base.clone(),
        }
    }

    fn memory_key(&self, _: &GameTranscript) -> Option<u64> {
        Some(0)
    }
}

/// Matching strategy on a triple system with `t + |Q| + 1` cops, where `t`
/// blocks are packed and `Q` is unpacked. Needs at least 9 cops.
pub fn sts_matching_strategy(
    design: &Design,
    node_budget: usize,
) -> Result<MatchingStrategy, StrategyError> {
    require_sts(design)?;
    let packing = max_partial_parallel_class(design, node_budget)?;
    let cops = packing.blocks.len() + packing.uncovered.len() + 1;
    if cops < 9 {
        return not_applicable(format!("{cops} cops, at least 9 needed"));
    }
    Ok(MatchingStrategy::new(design, packing, cops))
}

/// Matching strategy on an `S(t, k, v)`. The cop count is the larger of
/// `|T| + |Q| + 1` and the most points any cell of blocks under the opening
/// probe can span.
pub fn steiner_matching_strategy(
    design: &Design,
    t: usize,
    node_budget: usize,
) -> Result<MatchingStrategy, StrategyError> {
    let k = design.uniform_block_size().unwrap_or(0);
    if t < 2 || k <= t || k >= design.v() || !validate_steiner(design, t).holds {
        return not_applicable(format!("not a Steiner system with t = {t}"));
    }
    let packing = max_partial_parallel_class(design, node_budget)?;
    let probe = MatchingStrategy::new(design, packing.clone(), usize::MAX);
    let g = incidence_graph(design)?;
    let blocks = VertexSet::from_iter(g.n(), design.v()..g.n());
    let widest = partition_by_probe(&g, &blocks, &probe.base)
        .iter()
        .filter(|c| c.len() >= 2)
        .map(|c| probe.cover(&c.members).len())
        .max()
        .unwrap_or(0);
    let cops = (packing.blocks.len() + packing.uncovered.len() + 1).max(widest);
    Ok(MatchingStrategy::new(design, packing, cops))
}

/// `v - 3` cops on a quadruple system: probe every point except `0, 1, 2`,
/// and every point except `3, 4, 5` once the robber is seen among `0, 1, 2`.
#[derive(Debug, Clone)]
pub struct SqsStrategy {
    v: usize,
    n: usize,
}

impl CopStrategy for SqsStrategy {
    fn cops(&self) -> usize {
        self.v - 3
    }

    fn next_placement(&self, _: &Graph, t: &GameTranscript) -> Placement {
        let skip = match t.last_cell() {
            Some(cell) if cell.iter().all(|x| x < 3) => 3..6,
            _ => 0..3,
        };
        VertexSet::from_iter(self.n, (0..self.v).filter(|x| !skip.contains(x)))
    }

    fn memory_key(&self, _: &GameTranscript) -> Option<u64> {
        Some(0)
    }
}

pub fn sqs_strategy(design: &Design) -> Result<SqsStrategy, StrategyError> {
    let v = design.v();
    if design.uniform_block_size() != Some(4) || v < 8 || !validate_steiner(design, 3).holds {
        return not_applicable("not a Steiner quadruple system");
    }
    Ok(SqsStrategy {
        v,
        n: v + design.b(),
    })
}
