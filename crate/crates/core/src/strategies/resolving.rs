//! Scanning strategies built from explicit delayed-resolving sets.

use super::{f_minimizer, not_applicable, FPartition, StrategyError};
use crate::design::{validate_bibd, Design};
use crate::game::{ambiguous_vertices, scanning_strategy, GameError, ScanningStrategy};
use crate::graph::incidence_graph;
use crate::vset::VertexSet;

/// `N(u) ∪ N(u') ∪ N(c) \ {u, u', c}` where `c` is the block through both
/// points. Vertices are incidence-graph ids.
pub fn two_design_set(design: &Design, u: usize, u2: usize) -> Result<VertexSet, StrategyError> {
    let p = validate_bibd(design)?;
    if p.lambda != 1 {
        return not_applicable(format!("index {} is not 1", p.lambda));
    }
    if u == u2 || u >= p.v || u2 >= p.v {
        return not_applicable("need two distinct points");
    }
    if p.r < 2 {
        return not_applicable("points need degree at least 2");
    }
    let v = p.v;
    let n = v + p.b;
    let through_u = design.blocks_through(u);
    let through_u2 = design.blocks_through(u2);
    let c = *through_u
        .iter()
        .find(|b| through_u2.contains(b))
        .expect("index 1 puts every pair in a block");
    let mut s = VertexSet::empty(n);
    for &bi in through_u.iter().chain(&through_u2) {
        s.insert(v + bi);
    }
    for &x in design.block(c) {
        s.insert(x);
    }
    s.remove(u);
    s.remove(u2);
    s.remove(v + c);
    Ok(s)
}

fn scan_over(design: &Design, s: &VertexSet) -> Result<ScanningStrategy, StrategyError> {
    let g = incidence_graph(design)?;
    let order = ambiguous_vertices(&g, s);
    scanning_strategy(&g, s, order).map_err(|GameError::NotDelayedResolving| {
        StrategyError::NotApplicable("probe set is not delayed-resolving".into())
    })
}

/// Scanning over [`two_design_set`]: `2r + k - 3` cops for an index-1 BIBD.
pub fn two_design_strategy(
    design: &Design,
    u: usize,
    u2: usize,
) -> Result<ScanningStrategy, StrategyError> {
    scan_over(design, &two_design_set(design, u, u2)?)
}

/// Scanning over `N(u*)` plus all but the highest point of each fingerprint
/// cell, where `u*` minimises `f`. Uses `f + r + 1` cops.
pub fn general_bibd_strategy(design: &Design) -> Result<ScanningStrategy, StrategyError> {
    let p = validate_bibd(design)?;
    if p.lambda < 2 || p.lambda + 1 > p.r {
        return not_applicable(format!("index {} outside 2..=r-1", p.lambda));
    }
    let u = f_minimizer(design);
    let mut s = VertexSet::empty(p.v + p.b);
    for bi in design.blocks_through(u) {
        s.insert(p.v + bi);
    }
    for cell in FPartition::new(design, u).cells {
        for &x in &cell[..cell.len() - 1] {
            s.insert(x);
        }
    }
    scan_over(design, &s)
}
