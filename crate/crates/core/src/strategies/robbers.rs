//! Robber adversaries that keep two same-side candidates alive, and a
//! seeded random cop strategy to play them against.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{not_applicable, separation_depth, split_sides, StrategyError};
use crate::design::{validate_bibd, Design};
use crate::game::{Cell, CopStrategy, GameTranscript, Placement, RobberAdversary};
use crate::graph::Graph;
use crate::vset::VertexSet;

/// Keeps the first cell holding two points or two blocks. Against at most
/// `k - 1` cops on a symmetric index-1 design such a cell always exists.
#[derive(Debug, Clone)]
pub struct SymmetricRobber {
    v: usize,
}

impl SymmetricRobber {
    /// True iff `cell` holds at least two vertices of one side.
    pub fn witnesses(&self, cell: &VertexSet) -> bool {
        let (p, b) = split_sides(self.v, cell);
        p >= 2 || b >= 2
    }
}

impl RobberAdversary for SymmetricRobber {
    fn choose(&mut self, _: &VertexSet, _: &Placement, cells: &[Cell]) -> usize {
        cells
            .iter()
            .position(|c| self.witnesses(&c.members))
            .unwrap_or(0)
    }
}

pub fn symmetric_robber(design: &Design, cop_count: usize) -> Result<SymmetricRobber, StrategyError> {
    let p = validate_bibd(design)?;
    if !p.symmetric || p.lambda != 1 {
        return not_applicable("design is not a symmetric index-1 design");
    }
    if cop_count + 1 > p.k {
        return not_applicable(format!("{cop_count} cops is not below k = {}", p.k));
    }
    Ok(SymmetricRobber { v: p.v })
}

/// Keeps the cell with the most vertices on one side, earliest on ties.
#[derive(Debug, Clone)]
pub struct GeneralRobber {
    v: usize,
    d: usize,
}

impl GeneralRobber {
    pub fn cops(&self) -> usize {
        self.d
    }

    fn weight(&self, cell: &VertexSet) -> usize {
        let (p, b) = split_sides(self.v, cell);
        p.max(b)
    }
}

impl RobberAdversary for GeneralRobber {
    fn choose(&mut self, _: &VertexSet, _: &Placement, cells: &[Cell]) -> usize {
        let mut best = 0;
        for (i, c) in cells.iter().enumerate() {
            if self.weight(&c.members) > self.weight(&cells[best].members) {
                best = i;
            }
        }
        best
    }
}

/// Robber against `d` cops on an index-1 design with `k < r`, for `d` up to
/// the depth given by [`separation_depth`].
pub fn general_robber(design: &Design, d: usize) -> Result<GeneralRobber, StrategyError> {
    let p = validate_bibd(design)?;
    let Some(max) = separation_depth(&p) else {
        return not_applicable(format!("no separation depth for {p}"));
    };
    if d == 0 || d > max {
        return not_applicable(format!("d = {d} outside 1..={max}"));
    }
    Ok(GeneralRobber { v: p.v, d })
}

/// Uniformly random `cops`-subsets of the vertices, drawn from a ChaCha
/// stream keyed by the seed and the round index.
#[derive(Debug, Clone)]
pub struct RandomPlacements {
    cops: usize,
    seed: u64,
}

impl RandomPlacements {
    pub fn new(cops: usize, seed: u64) -> Self {
        Self { cops, seed }
    }
}

impl CopStrategy for RandomPlacements {
    fn cops(&self) -> usize {
        self.cops
    }

    fn next_placement(&self, g: &Graph, t: &GameTranscript) -> Placement {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(t.round() as u64);
        let n = g.n();
        VertexSet::from_iter(n, sample(&mut rng, n, self.cops.min(n)))
    }
}
