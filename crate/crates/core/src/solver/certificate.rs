//! Replayable evidence for solver answers.
//!
//! A cop certificate maps each territory the cops can face to a probe; it is
//! checked by exhaustive verification of the strategy it induces. A robber
//! certificate is a set of territories closed under every `k`-probe: for
//! each territory and probe it names a non-singleton cell and a listed
//! territory inside that cell's neighbourhood.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use super::{k_subsets, Certificate, SolveResult};
use crate::game::{
    expand, partition_by_probe, verify_strategy_exhaustive, Cell, CopStrategy, GameTranscript,
    Placement, RobberAdversary, Verdict, VerifyError, VerifyOptions,
};
use crate::graph::Graph;
use crate::vset::VertexSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertificateError {
    #[error("certificate is for {found} vertices, graph has {expected}")]
    WrongGraph { expected: usize, found: usize },
    #[error("probe {probe} has more than {k} vertices")]
    ProbeTooLarge { probe: String, k: usize },
    #[error("the full vertex set is not a listed state")]
    MissingStart,
    #[error("no entry for state {state} and probe {probe}")]
    MissingEntry { state: String, probe: String },
    #[error("cell {cell} is not a non-singleton cell of state {state} under probe {probe}")]
    BadCell {
        state: String,
        probe: String,
        cell: String,
    },
    #[error("successor {next} is not a listed state inside the neighbourhood of cell {cell}")]
    BadSuccessor { cell: String, next: String },
    #[error("cop strategy fails: robber survives {rounds} rounds")]
    Refuted { rounds: usize },
    #[error("cop strategy needs {actual} rounds, certificate claims {claimed}")]
    TooSlow { claimed: usize, actual: usize },
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

/// Probe to play from each territory the cops can face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CopCertificate {
    pub k: usize,
    /// Claimed capture round.
    pub rounds: usize,
    /// (territory, probe), sorted by territory.
    pub entries: Vec<(VertexSet, Placement)>,
}

impl CopCertificate {
    pub fn strategy(&self) -> CertificateStrategy {
        CertificateStrategy {
            k: self.k,
            table: self.entries.iter().cloned().collect(),
        }
    }

    /// Exhaustively verifies the induced strategy on `g`.
    pub fn check(&self, g: &Graph, opts: &VerifyOptions) -> Result<(), CertificateError> {
        for (s, p) in &self.entries {
            if s.universe() != g.n() {
                return Err(CertificateError::WrongGraph {
                    expected: g.n(),
                    found: s.universe(),
                });
            }
            if p.len() > self.k {
                return Err(CertificateError::ProbeTooLarge {
                    probe: p.to_string(),
                    k: self.k,
                });
            }
        }
        match verify_strategy_exhaustive(g, &self.strategy(), opts)? {
            Verdict::Proven { rounds } if rounds <= self.rounds => Ok(()),
            Verdict::Proven { rounds } => Err(CertificateError::TooSlow {
                claimed: self.rounds,
                actual: rounds,
            }),
            Verdict::Counterexample { transcript } => Err(CertificateError::Refuted {
                rounds: transcript.round(),
            }),
        }
    }
}

/// Plays a cop certificate. Unlisted territories get an empty probe.
#[derive(Debug, Clone)]
pub struct CertificateStrategy {
    k: usize,
    table: HashMap<VertexSet, Placement>,
}

impl CopStrategy for CertificateStrategy {
    fn cops(&self) -> usize {
        self.k
    }

    fn next_placement(&self, g: &Graph, t: &GameTranscript) -> Placement {
        self.table
            .get(&t.territory(g))
            .cloned()
            .unwrap_or_else(|| VertexSet::empty(g.n()))
    }

    fn memory_key(&self, _: &GameTranscript) -> Option<u64> {
        Some(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RobberEntry {
    pub state: VertexSet,
    pub probe: Placement,
    pub cell: VertexSet,
    pub next: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RobberCertificate {
    pub k: usize,
    /// Sorted by (state, probe).
    pub entries: Vec<RobberEntry>,
}

impl RobberCertificate {
    pub fn states(&self) -> HashSet<&VertexSet> {
        self.entries.iter().map(|e| &e.state).collect()
    }

    /// Checks closure: the full vertex set is listed, and every listed state
    /// has a valid answer to every probe of `min(k, |V|)` vertices.
    pub fn check(&self, g: &Graph) -> Result<(), CertificateError> {
        let n = g.n();
        if let Some(e) = self.entries.iter().find(|e| e.state.universe() != n) {
            return Err(CertificateError::WrongGraph {
                expected: n,
                found: e.state.universe(),
            });
        }
        let region = self.states();
        if !region.contains(&g.vertices()) {
            return Err(CertificateError::MissingStart);
        }
        let table: HashMap<(&VertexSet, &VertexSet), &RobberEntry> = self
            .entries
            .iter()
            .map(|e| ((&e.state, &e.probe), e))
            .collect();
        let probes: Vec<Placement> = k_subsets(n, self.k)
            .into_iter()
            .map(|s| VertexSet::from_iter(n, s))
            .collect();
        for s in &region {
            for p in &probes {
                let Some(e) = table.get(&(*s, p)) else {
                    return Err(CertificateError::MissingEntry {
                        state: s.to_string(),
                        probe: p.to_string(),
                    });
                };
                let is_cell = partition_by_probe(g, s, p)
                    .iter()
                    .any(|c| c.len() >= 2 && c.members == e.cell);
                if !is_cell {
                    return Err(CertificateError::BadCell {
                        state: s.to_string(),
                        probe: p.to_string(),
                        cell: e.cell.to_string(),
                    });
                }
                if !region.contains(&e.next) || !e.next.is_subset(&expand(g, &e.cell)) {
                    return Err(CertificateError::BadSuccessor {
                        cell: e.cell.to_string(),
                        next: e.next.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn adversary(&self) -> ShadowRobber {
        ShadowRobber {
            k: self.k,
            table: self
                .entries
                .iter()
                .map(|e| ((e.state.clone(), e.probe.clone()), (e.cell.clone(), e.next.clone())))
                .collect(),
            shadow: None,
        }
    }
}

/// Robber driven by a robber certificate.
///
/// It tracks a certified state inside the real territory. A probe with
/// fewer than `k` vertices is padded with the lowest unused vertices; the
/// padded probe only splits cells further, so the certified cell lies in
/// one real cell, which is the one kept.
#[derive(Debug, Clone)]
pub struct ShadowRobber {
    k: usize,
    table: HashMap<(VertexSet, VertexSet), (VertexSet, VertexSet)>,
    shadow: Option<VertexSet>,
}

impl RobberAdversary for ShadowRobber {
    fn choose(&mut self, territory: &VertexSet, placement: &Placement, cells: &[Cell]) -> usize {
        let n = territory.universe();
        let shadow = self.shadow.get_or_insert_with(|| VertexSet::full(n));
        let mut probe = placement.clone();
        let mut x = 0;
        while probe.len() < self.k.min(n) {
            probe.insert(x);
            x += 1;
        }
        let Some((cell, next)) = self.table.get(&(shadow.clone(), probe)) else {
            return 0;
        };
        match cells.iter().position(|c| cell.is_subset(&c.members)) {
            Some(i) => {
                *shadow = next.clone();
                i
            }
            None => 0,
        }
    }
}

pub fn extract_certificate(result: &SolveResult) -> Option<&Certificate> {
    result.certificate.as_ref()
}
