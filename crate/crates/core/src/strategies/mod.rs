//! Cop strategies and robber adversaries for design incidence graphs, the
//! `f` function of a design, lower-bound formulas and per-design bound
//! reports.
//!
//! Every strategy works on the incidence graph built by
//! [`crate::graph::incidence_graph`] (points first, then blocks) and is
//! deterministic. Wherever a construction leaves a choice open (which vertex
//! of a neighbourhood stays uncovered, which line hosts helper cops, the
//! scan order) the lowest-numbered option is taken.

mod bounds;
mod fvalue;
mod packing;
mod planes;
mod resolving;
mod robbers;
mod steiner;
mod transversal;

use thiserror::Error;

use crate::design::DesignError;
use crate::graph::{Graph, Side};
use crate::vset::VertexSet;

pub use bounds::{
    bounds_report, lower_bounds, separation_depth, BoundKind, BoundReport, BoundRow,
    upper_strategies, LowerBound, ReportOptions, RowVerdict, UpperStrategy,
};
pub use fvalue::{f_minimizer, f_of_design, f_value, FPartition};
pub use packing::{max_partial_parallel_class, Packing};
pub use planes::{affine_strategy, near_symmetric_strategy, symmetric_strategy, PlaneStrategy};
pub use resolving::{general_bibd_strategy, two_design_set, two_design_strategy};
pub use robbers::{
    general_robber, symmetric_robber, GeneralRobber, RandomPlacements, SymmetricRobber,
};
pub use steiner::{
    sqs_strategy, steiner_matching_strategy, sts_half_strategy, sts_matching_strategy,
    MatchingStrategy, SqsStrategy, StsHalfStrategy,
};
pub use transversal::{td_strategy, TdStrategy};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(usize),
    #[error(transparent)]
    Design(#[from] DesignError),
}

fn not_applicable<T>(msg: impl Into<String>) -> Result<T, StrategyError> {
    Err(StrategyError::NotApplicable(msg.into()))
}

/// Side shared by every member of `s`, if any. `v` is the point count.
fn common_side(v: usize, s: &VertexSet) -> Option<Side> {
    let side = |x: usize| if x < v { Side::Point } else { Side::Block };
    let first = side(s.first()?);
    s.iter().all(|x| side(x) == first).then_some(first)
}

/// Lowest vertex adjacent to every member of `s`.
fn common_neighbor(g: &Graph, s: &VertexSet) -> Option<usize> {
    let mut it = s.iter();
    let mut acc = g.neighbor_set(it.next()?).clone();
    for x in it {
        acc.intersect_with(g.neighbor_set(x));
    }
    acc.first()
}

/// Members of `s` that are points, and members that are blocks.
fn split_sides(v: usize, s: &VertexSet) -> (usize, usize) {
    let points = s.iter().take_while(|&x| x < v).count();
    (points, s.len() - points)
}
