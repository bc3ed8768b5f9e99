//! Territory-shrinking strategies for index-1 designs with `r = k` or
//! `r = k + 1`, including affine planes.
//!
//! Play starts with a scan: all but one block of a fixed pencil (or parallel
//! class) are probed every round and one rover walks the remaining blocks.
//! As soon as the kept cell `A` lies inside the neighbourhood of a single
//! vertex `c` and misses some `u ∈ N(c)`, the cops switch to a step: probes
//! on all but one member of `A` (all of `A` when `|A| = 2`) and the rest on
//! helper vertices that split each neighbourhood `N(a) \ {c}` into singletons
//! except for a shrinking remainder. Helpers are `N(w) \ {u}` for the lowest
//! `w ∈ N(u) \ {c}`, or, for an affine plane with `A` a set of blocks, the
//! other blocks parallel to `u`.

use super::{common_neighbor, common_side, not_applicable, StrategyError};
use crate::design::{validate_bibd, Design, DesignParams, ResolvedDesign};
use crate::game::{CopStrategy, GameTranscript, Placement};
use crate::graph::{Graph, Side};
use crate::vset::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Helpers {
    /// `N(w) \ {u}` on both sides.
    Pencil,
    /// Parallel blocks when `A` is a set of blocks.
    Parallel,
}

#[derive(Debug, Clone)]
pub struct PlaneStrategy {
    cops: usize,
    v: usize,
    helpers: Helpers,
    scan_fixed: VertexSet,
    rover: Vec<usize>,
    /// Block vertex ids of each parallel class; empty unless affine.
    classes: Vec<Vec<usize>>,
    /// Class index per block; empty unless affine.
    class_of: Vec<usize>,
}

impl PlaneStrategy {
    fn step(&self, g: &Graph, a: &VertexSet) -> Option<Placement> {
        if a.len() < 2 {
            return None;
        }
        let side = common_side(self.v, a)?;
        let c = common_neighbor(g, a)?;
        if a.len() >= g.degree(c) {
            return None;
        }
        let u = g.neighbors(c).iter().copied().find(|&x| !a.contains(x))?;
        let keep = if a.len() >= 3 { a.len() - 1 } else { a.len() };
        let mut p = VertexSet::from_iter(g.n(), a.iter().take(keep));
        let helpers: Vec<usize> = match (self.helpers, side) {
            (Helpers::Parallel, Side::Block) => {
                let class = &self.classes[self.class_of[u - self.v]];
                class.iter().copied().filter(|&x| x != u).collect()
            }
            _ => {
                let w = g.neighbors(u).iter().copied().find(|&x| x != c)?;
                g.neighbors(w).iter().copied().filter(|&x| x != u).collect()
            }
        };
        for x in helpers {
            if p.len() >= self.cops {
                break;
            }
            p.insert(x);
        }
        Some(p)
    }

    fn scan(&self, round: usize) -> Placement {
        let mut p = self.scan_fixed.clone();
        if !self.rover.is_empty() {
            p.insert(self.rover[round % self.rover.len()]);
        }
        p
    }
}

impl CopStrategy for PlaneStrategy {
    fn cops(&self) -> usize {
        self.cops
    }

    fn next_placement(&self, g: &Graph, t: &GameTranscript) -> Placement {
        t.last_cell()
            .and_then(|a| self.step(g, a))
            .unwrap_or_else(|| self.scan(t.round()))
    }

    fn memory_key(&self, t: &GameTranscript) -> Option<u64> {
        Some((t.round() % self.rover.len().max(1)) as u64)
    }
}

/// Pencil scan: blocks through point 0 except the highest, rover on the rest.
fn pencil_scan(design: &Design, p: &DesignParams) -> (VertexSet, Vec<usize>) {
    let n = p.v + p.b;
    let through: Vec<usize> = design.blocks_through(0).iter().map(|&b| p.v + b).collect();
    let fixed = VertexSet::from_iter(n, through[..through.len() - 1].iter().copied());
    let rover = (p.v..n).filter(|x| !through.contains(x)).collect();
    (fixed, rover)
}

fn index_one(design: &Design) -> Result<DesignParams, StrategyError> {
    let p = validate_bibd(design)?;
    if p.lambda != 1 {
        return not_applicable(format!("index {} is not 1", p.lambda));
    }
    if p.k < 3 {
        return not_applicable("block size below 3");
    }
    Ok(p)
}

/// `k` cops for a symmetric index-1 design with `k >= 3`.
pub fn symmetric_strategy(design: &Design) -> Result<PlaneStrategy, StrategyError> {
    let p = index_one(design)?;
    if !p.symmetric {
        return not_applicable("design is not symmetric");
    }
    let (scan_fixed, rover) = pencil_scan(design, &p);
    Ok(PlaneStrategy {
        cops: p.k,
        v: p.v,
        helpers: Helpers::Pencil,
        scan_fixed,
        rover,
        classes: Vec::new(),
        class_of: Vec::new(),
    })
}

/// `k + 1` cops for an index-1 design with `r = k + 1` and `k >= 3`.
pub fn near_symmetric_strategy(design: &Design) -> Result<PlaneStrategy, StrategyError> {
    let p = index_one(design)?;
    if p.r != p.k + 1 {
        return not_applicable(format!("r = {} is not k + 1 = {}", p.r, p.k + 1));
    }
    let (scan_fixed, rover) = pencil_scan(design, &p);
    Ok(PlaneStrategy {
        cops: p.k + 1,
        v: p.v,
        helpers: Helpers::Pencil,
        scan_fixed,
        rover,
        classes: Vec::new(),
        class_of: Vec::new(),
    })
}

/// `k` cops for an affine plane of order `k >= 3` given with its resolution.
/// The scan fixes all but the highest block of class 0.
pub fn affine_strategy(ap: &ResolvedDesign) -> Result<PlaneStrategy, StrategyError> {
    let p = index_one(&ap.design)?;
    if p.r != p.k + 1 || p.v != p.k * p.k {
        return not_applicable("parameters are not those of an affine plane");
    }
    ap.validate_resolution()?;
    let n = p.v + p.b;
    let classes: Vec<Vec<usize>> = ap
        .classes
        .iter()
        .map(|c| {
            let mut c: Vec<usize> = c.iter().map(|&b| p.v + b).collect();
            c.sort_unstable();
            c
        })
        .collect();
    let mut class_of = vec![0; p.b];
    for (i, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x - p.v] = i;
        }
    }
    let first = &classes[0];
    let scan_fixed = VertexSet::from_iter(n, first[..first.len() - 1].iter().copied());
    let rover = (p.v..n).filter(|x| !first.contains(x)).collect();
    Ok(PlaneStrategy {
        cops: p.k,
        v: p.v,
        helpers: Helpers::Parallel,
        scan_fixed,
        rover,
        classes,
        class_of,
    })
}
