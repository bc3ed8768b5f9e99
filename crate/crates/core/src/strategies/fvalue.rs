//! The fingerprint partition around a point and the derived `f` values.

use std::collections::BTreeMap;

use crate::design::Design;

/// Points other than `base`, grouped by the set of blocks they share with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FPartition {
    pub base: usize,
    /// Cells ordered by their smallest member; members ascending.
    pub cells: Vec<Vec<usize>>,
}

impl FPartition {
    pub fn new(design: &Design, base: usize) -> Self {
        let through = design.blocks_through(base);
        let mut by_print: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for x in (0..design.v()).filter(|&x| x != base) {
            let print: Vec<usize> = through
                .iter()
                .copied()
                .filter(|&bi| design.block(bi).binary_search(&x).is_ok())
                .collect();
            by_print.entry(print).or_default().push(x);
        }
        let mut cells: Vec<Vec<usize>> = by_print.into_values().collect();
        cells.sort();
        Self { base, cells }
    }

    /// Extra probes needed to separate every cell: the sum of `|cell| - 1`.
    pub fn f(&self) -> usize {
        self.cells.iter().map(|c| c.len() - 1).sum()
    }
}

pub fn f_value(design: &Design, u: usize) -> usize {
    FPartition::new(design, u).f()
}

/// Minimum of [`f_value`] over all points.
pub fn f_of_design(design: &Design) -> usize {
    f_value(design, f_minimizer(design))
}

/// Lowest point attaining [`f_of_design`].
pub fn f_minimizer(design: &Design) -> usize {
    (0..design.v())
        .min_by_key(|&u| (f_value(design, u), u))
        .expect("design has points")
}
