//! `n + k - 4` cops on a transversal design `TD(k, n)` with `k >= 4`.
//!
//! The scan probes all but the highest point of the first group while a
//! rover walks the other points. A robber seen on blocks through a point
//! `u` is met by probing all of `N(u)`. A robber seen on points of a block
//! `c` is met by probing `k - 2` points of `c` and `n - 2` points of the
//! first group, both avoiding the first-group point of `c`; every block
//! then answers with a distinct pair of nearby probes.

use super::{common_neighbor, common_side, not_applicable, StrategyError};
use crate::design::GroupedDesign;
use crate::game::{CopStrategy, GameTranscript, Placement};
use crate::graph::{Graph, Side};
use crate::vset::VertexSet;

#[derive(Debug, Clone)]
pub struct TdStrategy {
    cops: usize,
    v: usize,
    k: usize,
    n_group: usize,
    group: Vec<usize>,
    scan_fixed: VertexSet,
    rover: Vec<usize>,
}

impl TdStrategy {
    fn step(&self, g: &Graph, a: &VertexSet) -> Option<Placement> {
        let side = common_side(self.v, a)?;
        let c = common_neighbor(g, a)?;
        let mut p = VertexSet::empty(g.n());
        match side {
            Side::Block => {
                for &x in g.neighbors(c) {
                    p.insert(x);
                }
            }
            Side::Point => {
                let anchor = g.neighbors(c).iter().copied().find(|x| self.group.contains(x))?;
                let on_block = a
                    .iter()
                    .chain(g.neighbors(c).iter().copied())
                    .filter(|&x| x != anchor);
                let mut placed = 0;
                for x in on_block {
                    if placed == self.k - 2 {
                        break;
                    }
                    if !p.contains(x) {
                        p.insert(x);
                        placed += 1;
                    }
                }
                let in_group = self.group.iter().copied().filter(|&x| x != anchor);
                for x in in_group.take(self.n_group - 2) {
                    p.insert(x);
                }
            }
        }
        (p.len() <= self.cops).then_some(p)
    }
}

impl CopStrategy for TdStrategy {
    fn cops(&self) -> usize {
        self.cops
    }

    fn next_placement(&self, g: &Graph, t: &GameTranscript) -> Placement {
        if let Some(p) = t.last_cell().and_then(|a| self.step(g, a)) {
            return p;
        }
        let mut p = self.scan_fixed.clone();
        if !self.rover.is_empty() {
            p.insert(self.rover[t.round() % self.rover.len()]);
        }
        p
    }

    fn memory_key(&self, t: &GameTranscript) -> Option<u64> {
        Some((t.round() % self.rover.len().max(1)) as u64)
    }
}

pub fn td_strategy(td: &GroupedDesign) -> Result<TdStrategy, StrategyError> {
    let params = td.validate_td()?;
    let (k, n) = (params.k, params.n);
    if k < 4 {
        return not_applicable(format!("block size {k} below 4"));
    }
    let v = td.design.v();
    let total = v + td.design.b();
    let mut group = td.groups[0].clone();
    group.sort_unstable();
    let scan_fixed = VertexSet::from_iter(total, group[..n - 1].iter().copied());
    let rover = (0..v).filter(|x| !group.contains(x)).collect();
    Ok(TdStrategy {
        cops: n + k - 4,
        v,
        k,
        n_group: n,
        group,
        scan_fixed,
        rover,
    })
}
