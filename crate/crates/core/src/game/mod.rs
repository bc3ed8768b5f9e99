//! The candidate-set form of the localization game.
//!
//! The robber is never tracked directly. The state is the set of vertices
//! still consistent with every probe so far (the territory). Each round the
//! cops probe a placement, the territory splits into cells of equal distance
//! vectors, and the robber keeps one non-singleton cell and may step to a
//! neighbour, so the next territory is the closed neighbourhood of that cell.
//! The cops win once every cell is a singleton.
//!
//! Cops teleport between rounds, so a placement is just a vertex set; which
//! cop stands where is irrelevant.

mod verify;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Dist, Graph};
use crate::vset::VertexSet;

pub use verify::{verify_strategy_exhaustive, Verdict, VerifyError, VerifyOptions};

/// Probe vertices of one round.
pub type Placement = VertexSet;

/// Distances from each probe, in ascending probe order.
pub type DistanceVector = Vec<Dist>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("probe set is not delayed-resolving")]
    NotDelayedResolving,
}

/// One part of a probe partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub vector: DistanceVector,
    pub members: VertexSet,
}

impl Cell {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Closed neighbourhood `N[s]`.
pub fn expand(g: &Graph, s: &VertexSet) -> VertexSet {
    let mut out = s.clone();
    for x in s.iter() {
        out.union_with(g.neighbor_set(x));
    }
    out
}

pub fn distance_vector(g: &Graph, p: &Placement, x: usize) -> DistanceVector {
    p.iter().map(|c| g.dist(c, x)).collect()
}

/// Splits `s` by distance vectors to the probes of `p`. Cells come in
/// lexicographic order of their vectors.
pub fn partition_by_probe(g: &Graph, s: &VertexSet, p: &Placement) -> Vec<Cell> {
    let probes: Vec<&[Dist]> = p.iter().map(|c| g.dist_row(c)).collect();
    let mut classes: BTreeMap<DistanceVector, VertexSet> = BTreeMap::new();
    for x in s.iter() {
        let key: DistanceVector = probes.iter().map(|row| row[x]).collect();
        classes
            .entry(key)
            .or_insert_with(|| VertexSet::empty(g.n()))
            .insert(x);
    }
    classes
        .into_iter()
        .map(|(vector, members)| Cell { vector, members })
        .collect()
}

/// Chooses which ambiguous cell the robber keeps.
///
/// Adversaries may hold state (a seeded generator, a shadow of some
/// certificate), so `choose` takes `&mut self`.
pub trait RobberAdversary {
    /// Index into `cells`, which holds only the non-singleton cells of the
    /// current partition and is never empty.
    fn choose(&mut self, territory: &VertexSet, placement: &Placement, cells: &[Cell]) -> usize;
}

/// A deterministic cop strategy.
pub trait CopStrategy: Sync {
    /// Largest placement the strategy may use.
    fn cops(&self) -> usize;

    /// Placement for the next round, given everything observed so far.
    fn next_placement(&self, g: &Graph, transcript: &GameTranscript) -> Placement;

    /// A summary of the strategy's internal memory. When `Some`, the
    /// strategy promises that its future placements depend only on this key
    /// and the last kept cell, which lets the verifier detect loops and
    /// share work between branches. The key for the following round must in
    /// turn be a function of the current key.
    fn memory_key(&self, _transcript: &GameTranscript) -> Option<u64> {
        None
    }
}

impl<S: CopStrategy + ?Sized> CopStrategy for &S {
    fn cops(&self) -> usize {
        (**self).cops()
    }
    fn next_placement(&self, g: &Graph, t: &GameTranscript) -> Placement {
        (**self).next_placement(g, t)
    }
    fn memory_key(&self, t: &GameTranscript) -> Option<u64> {
        (**self).memory_key(t)
    }
}

impl<S: CopStrategy + ?Sized> CopStrategy for Box<S> {
    fn cops(&self) -> usize {
        (**self).cops()
    }
    fn next_placement(&self, g: &Graph, t: &GameTranscript) -> Placement {
        (**self).next_placement(g, t)
    }
    fn memory_key(&self, t: &GameTranscript) -> Option<u64> {
        (**self).memory_key(t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Round {
    pub placement: Placement,
    /// Vector of the cell the robber kept.
    pub vector: DistanceVector,
    pub cell: VertexSet,
}

/// Rounds survived so far, starting from `initial` (normally all of `V`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameTranscript {
    pub initial: VertexSet,
    pub rounds: Vec<Round>,
}

impl GameTranscript {
    pub fn new(initial: VertexSet) -> Self {
        Self {
            initial,
            rounds: Vec::new(),
        }
    }

    /// Number of rounds survived so far; also the 0-based index of the next round.
    pub fn round(&self) -> usize {
        self.rounds.len()
    }

    pub fn last_cell(&self) -> Option<&VertexSet> {
        self.rounds.last().map(|r| &r.cell)
    }

    /// Territory the next probe will partition.
    pub fn territory(&self, g: &Graph) -> VertexSet {
        match self.last_cell() {
            Some(cell) => expand(g, cell),
            None => self.initial.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOutcome {
    Captured,
    /// The robber kept `cell`.
    Ongoing { cell: Cell },
}

/// Plays one probe against `s`. Returns the outcome and the next territory
/// (`s` itself on capture).
pub fn step(
    g: &Graph,
    s: &VertexSet,
    p: &Placement,
    adv: &mut dyn RobberAdversary,
) -> (StepOutcome, VertexSet) {
    let mut open: Vec<Cell> = partition_by_probe(g, s, p)
        .into_iter()
        .filter(|c| c.len() >= 2)
        .collect();
    if open.is_empty() {
        return (StepOutcome::Captured, s.clone());
    }
    let i = adv.choose(s, p, &open);
    assert!(i < open.len(), "adversary chose cell {i} of {}", open.len());
    let cell = open.swap_remove(i);
    let next = expand(g, &cell.members);
    (StepOutcome::Ongoing { cell }, next)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameOutcome {
    /// Captured by the probe of round `round` (1-based).
    Captured { round: usize, placement: Placement },
    /// Still free after `rounds` rounds.
    Survived { rounds: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayResult {
    pub transcript: GameTranscript,
    pub outcome: GameOutcome,
}

/// Plays from `T0 = V` for at most `round_budget` rounds.
///
/// # Panics
/// If the strategy places more probes than it declares.
pub fn play(
    g: &Graph,
    cs: &dyn CopStrategy,
    adv: &mut dyn RobberAdversary,
    round_budget: usize,
) -> PlayResult {
    let mut t = GameTranscript::new(g.vertices());
    for _ in 0..round_budget {
        let territory = t.territory(g);
        let placement = cs.next_placement(g, &t);
        assert!(
            placement.len() <= cs.cops(),
            "strategy placed {} probes with {} cops",
            placement.len(),
            cs.cops()
        );
        match step(g, &territory, &placement, adv) {
            (StepOutcome::Captured, _) => {
                let round = t.round() + 1;
                return PlayResult {
                    transcript: t,
                    outcome: GameOutcome::Captured { round, placement },
                };
            }
            (StepOutcome::Ongoing { cell }, _) => t.rounds.push(Round {
                placement,
                vector: cell.vector,
                cell: cell.members,
            }),
        }
    }
    let rounds = t.round();
    PlayResult {
        transcript: t,
        outcome: GameOutcome::Survived { rounds },
    }
}

/// Keeps the first non-singleton cell.
#[derive(Debug, Clone, Copy, Default)]
pub struct FirstCell;

impl RobberAdversary for FirstCell {
    fn choose(&mut self, _: &VertexSet, _: &Placement, _: &[Cell]) -> usize {
        0
    }
}

/// Keeps the largest cell, earliest on ties.
#[derive(Debug, Clone, Copy, Default)]
pub struct LargestCell;

impl RobberAdversary for LargestCell {
    fn choose(&mut self, _: &VertexSet, _: &Placement, cells: &[Cell]) -> usize {
        let mut best = 0;
        for (i, c) in cells.iter().enumerate() {
            if c.len() > cells[best].len() {
                best = i;
            }
        }
        best
    }
}

/// Keeps a uniformly random cell from a seeded ChaCha stream.
#[derive(Debug, Clone)]
pub struct RandomCell {
    rng: ChaCha8Rng,
}

impl RandomCell {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl RobberAdversary for RandomCell {
    fn choose(&mut self, _: &VertexSet, _: &Placement, cells: &[Cell]) -> usize {
        self.rng.gen_range(0..cells.len())
    }
}

/// True iff the vertices left ambiguous by probing all of `V(g)` with `s`
/// form an independent set.
pub fn is_delayed_resolving(g: &Graph, s: &VertexSet) -> bool {
    let mut ambiguous = VertexSet::empty(g.n());
    for cell in partition_by_probe(g, &g.vertices(), s) {
        if cell.len() >= 2 {
            ambiguous.union_with(&cell.members);
        }
    }
    g.is_independent(&ambiguous)
}

/// Fixed probes on a set plus one rover that walks a scan order, one
/// vertex per round, cyclically.
#[derive(Debug, Clone)]
pub struct ScanningStrategy {
    fixed: VertexSet,
    scan: Vec<usize>,
}

impl ScanningStrategy {
    /// Skips the delayed-resolving check; for exhibiting failures.
    pub fn new_unchecked(fixed: VertexSet, scan: Vec<usize>) -> Self {
        Self { fixed, scan }
    }

    pub fn fixed(&self) -> &VertexSet {
        &self.fixed
    }

    pub fn scan_order(&self) -> &[usize] {
        &self.scan
    }
}

impl CopStrategy for ScanningStrategy {
    fn cops(&self) -> usize {
        self.fixed.len() + 1
    }

    fn next_placement(&self, _: &Graph, t: &GameTranscript) -> Placement {
        let mut p = self.fixed.clone();
        if !self.scan.is_empty() {
            p.insert(self.scan[t.round() % self.scan.len()]);
        }
        p
    }

    fn memory_key(&self, t: &GameTranscript) -> Option<u64> {
        Some((t.round() % self.scan.len().max(1)) as u64)
    }
}

/// Scanning strategy over `s`; fails unless `s` is delayed-resolving.
pub fn scanning_strategy(
    g: &Graph,
    s: &VertexSet,
    scan_order: Vec<usize>,
) -> Result<ScanningStrategy, GameError> {
    if !is_delayed_resolving(g, s) {
        return Err(GameError::NotDelayedResolving);
    }
    Ok(ScanningStrategy::new_unchecked(s.clone(), scan_order))
}

/// The vertices left ambiguous by `s`, ascending: a natural scan order.
pub fn ambiguous_vertices(g: &Graph, s: &VertexSet) -> Vec<usize> {
    partition_by_probe(g, &g.vertices(), s)
        .into_iter()
        .filter(|c| c.len() >= 2)
        .flat_map(|c| c.members.to_vec())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect()
}
