//! Block designs and their parameter checks.
//!
//! A [`Design`] is a point count plus an ordered list of blocks. Blocks are
//! stored with their points in ascending order and are addressed by position;
//! repeated blocks are kept as given.

use std::collections::HashMap;

use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("design has no points or no blocks")]
    EmptyDesign,
    #[error("block {block} contains point {point} outside 0..{v}")]
    PointOutOfRange { block: usize, point: usize, v: usize },
    #[error("block {block} repeats point {point}")]
    RepeatedPoint { block: usize, point: usize },
    #[error("block {block} has size {size}, expected {expected}")]
    NotUniform {
        block: usize,
        size: usize,
        expected: usize,
    },
    #[error("point {point} lies in {count} blocks, expected {expected}")]
    ReplicationViolation {
        point: usize,
        count: usize,
        expected: usize,
    },
    #[error("pair ({}, {}) lies in {count} blocks, expected {expected}", .pair.0, .pair.1)]
    PairCountViolation {
        pair: (usize, usize),
        count: usize,
        expected: usize,
    },
    #[error("incidence graph is disconnected")]
    DisconnectedGraph,
    #[error("not a transversal design: {0}")]
    NotTransversal(String),
    #[error("not a resolution: {0}")]
    NotResolved(String),
}

/// A set of `v` points and an ordered list of blocks over them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Design {
    v: usize,
    blocks: Vec<Vec<usize>>,
}

impl Design {
    /// Builds a design, sorting the points inside each block.
    pub fn new(v: usize, blocks: Vec<Vec<usize>>) -> Result<Self, DesignError> {
        let mut out = Vec::with_capacity(blocks.len());
        for (i, mut block) in blocks.into_iter().enumerate() {
            block.sort_unstable();
            for w in block.windows(2) {
                if w[0] == w[1] {
                    return Err(DesignError::RepeatedPoint {
                        block: i,
                        point: w[0],
                    });
                }
            }
            if let Some(&p) = block.last() {
                if p >= v {
                    return Err(DesignError::PointOutOfRange { block: i, point: p, v });
                }
            }
            out.push(block);
        }
        Ok(Self { v, blocks: out })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    /// Indices of the blocks containing point `p`, ascending.
    pub fn blocks_through(&self, p: usize) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&i| self.blocks[i].binary_search(&p).is_ok())
            .collect()
    }

    /// Block size if all blocks share one, `None` otherwise or when empty.
    pub fn uniform_block_size(&self) -> Option<usize> {
        let k = self.blocks.first()?.len();
        self.blocks.iter().all(|b| b.len() == k).then_some(k)
    }
}

/// Parameters of a balanced incomplete block design.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DesignParams {
    pub v: usize,
    pub b: usize,
    pub r: usize,
    pub k: usize,
    pub lambda: usize,
    pub symmetric: bool,
    pub simple: bool,
}

impl DesignParams {
    /// The `(v, b, r, k, λ)` tuple.
    pub fn tuple(&self) -> (usize, usize, usize, usize, usize) {
        (self.v, self.b, self.r, self.k, self.lambda)
    }
}

impl std::fmt::Display for DesignParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "BIBD({},{},{},{},{})",
            self.v, self.b, self.r, self.k, self.lambda
        )
    }
}

/// Checks the BIBD axioms and returns the parameters.
///
/// Violations report the lexicographically smallest offending point or pair.
pub fn validate_bibd(design: &Design) -> Result<DesignParams, DesignError> {
    let v = design.v();
    let b = design.b();
    if v == 0 || b == 0 {
        return Err(DesignError::EmptyDesign);
    }
    let k = design.blocks[0].len();
    for (i, block) in design.blocks.iter().enumerate() {
        if block.len() != k {
            return Err(DesignError::NotUniform {
                block: i,
                size: block.len(),
                expected: k,
            });
        }
    }

    let mut replication = vec![0usize; v];
    let mut pairs = vec![0usize; v * v];
    for block in &design.blocks {
        for (i, &x) in block.iter().enumerate() {
            replication[x] += 1;
            for &y in &block[i + 1..] {
                pairs[x * v + y] += 1;
            }
        }
    }
    // Expected index is the most common pair count (ties to the larger), so a
    // single damaged region is what gets reported.
    let lambda = if v >= 2 {
        let mut freq: HashMap<usize, usize> = HashMap::new();
        for x in 0..v {
            for y in x + 1..v {
                *freq.entry(pairs[x * v + y]).or_insert(0) += 1;
            }
        }
        freq.into_iter()
            .max_by_key(|&(count, n)| (n, count))
            .map(|(count, _)| count)
            .unwrap_or(0)
    } else {
        0
    };
    for x in 0..v {
        for y in x + 1..v {
            let count = pairs[x * v + y];
            if count != lambda {
                return Err(DesignError::PairCountViolation {
                    pair: (x, y),
                    count,
                    expected: lambda,
                });
            }
        }
    }
    let r = replication[0];
    if let Some(point) = (0..v).find(|&p| replication[p] != r) {
        return Err(DesignError::ReplicationViolation {
            point,
            count: replication[point],
            expected: r,
        });
    }

    let mut sorted: Vec<&Vec<usize>> = design.blocks.iter().collect();
    sorted.sort();
    let simple = sorted.windows(2).all(|w| w[0] != w[1]);

    debug_assert_eq!(v * r, b * k);
    debug_assert_eq!(lambda * (v - 1), r * (k.saturating_sub(1)));
    Ok(DesignParams {
        v,
        b,
        r,
        k,
        lambda,
        symmetric: v == b,
        simple,
    })
}

/// Outcome of a Steiner system check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerCheck {
    pub holds: bool,
    /// First `t`-subset (lexicographic) not covered exactly once, with its block count.
    pub violation: Option<(Vec<usize>, usize)>,
}

/// Checks that every `t`-subset of points lies in exactly one block.
pub fn validate_steiner(design: &Design, t: usize) -> SteinerCheck {
    let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();
    for block in design.blocks() {
        for_each_subset(block, t, |s| *counts.entry(s.to_vec()).or_insert(0) += 1);
    }
    let points: Vec<usize> = (0..design.v()).collect();
    let mut violation = None;
    if t == 0 || t > design.v() {
        return SteinerCheck {
            holds: false,
            violation: Some((Vec::new(), 0)),
        };
    }
    for_each_subset(&points, t, |s| {
        if violation.is_none() {
            let c = counts.get(s).copied().unwrap_or(0);
            if c != 1 {
                violation = Some((s.to_vec(), c));
            }
        }
    });
    SteinerCheck {
        holds: violation.is_none(),
        violation,
    }
}

/// Calls `f` on every `t`-subset of `items` in lexicographic order of positions.
pub(crate) fn for_each_subset<F: FnMut(&[usize])>(items: &[usize], t: usize, mut f: F) {
    fn rec<F: FnMut(&[usize])>(items: &[usize], t: usize, start: usize, cur: &mut Vec<usize>, f: &mut F) {
        if cur.len() == t {
            f(cur);
            return;
        }
        let need = t - cur.len();
        for i in start..items.len() {
            if items.len() - i < need {
                break;
            }
            cur.push(items[i]);
            rec(items, t, i + 1, cur, f);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(t);
    rec(items, t, 0, &mut cur, &mut f);
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc as u64
}

/// Number of blocks through a point of an `S(t,k,v)`: `C(v-1,t-1) / C(k-1,t-1)`.
///
/// The value is exact; a non-integral result means no such system exists.
pub fn repetition_number(t: u64, k: u64, v: u64) -> Ratio<u64> {
    assert!(t >= 1 && t < k && k < v, "repetition number needs 1 <= t < k < v");
    Ratio::new(binomial(v - 1, t - 1), binomial(k - 1, t - 1))
}

/// A design with its points partitioned into groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupedDesign {
    pub design: Design,
    pub groups: Vec<Vec<usize>>,
}

/// Parameters of a transversal design `TD(k, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TdParams {
    pub k: usize,
    pub n: usize,
}

impl GroupedDesign {
    /// Checks the transversal design axioms: `k` groups of size `n`, every
    /// block meets every group once, and every pair of points from distinct
    /// groups lies in exactly one block.
    pub fn validate_td(&self) -> Result<TdParams, DesignError> {
        let fail = |m: String| Err(DesignError::NotTransversal(m));
        let v = self.design.v();
        let k = self.groups.len();
        if k == 0 || v == 0 {
            return fail("no groups".into());
        }
        let n = self.groups[0].len();
        let mut group_of = vec![usize::MAX; v];
        for (g, group) in self.groups.iter().enumerate() {
            if group.len() != n {
                return fail(format!("group {g} has size {}, expected {n}", group.len()));
            }
            for &p in group {
                if p >= v || group_of[p] != usize::MAX {
                    return fail(format!("point {p} is out of range or in two groups"));
                }
                group_of[p] = g;
            }
        }
        if let Some(p) = group_of.iter().position(|&g| g == usize::MAX) {
            return fail(format!("point {p} is in no group"));
        }
        let mut pairs = vec![0usize; v * v];
        for (i, block) in self.design.blocks().iter().enumerate() {
            let mut seen = vec![false; k];
            for &p in block {
                if std::mem::replace(&mut seen[group_of[p]], true) {
                    return fail(format!("block {i} meets group {} twice", group_of[p]));
                }
            }
            if block.len() != k {
                return fail(format!("block {i} misses a group"));
            }
            for (a, &x) in block.iter().enumerate() {
                for &y in &block[a + 1..] {
                    pairs[x * v + y] += 1;
                }
            }
        }
        for x in 0..v {
            for y in x + 1..v {
                if group_of[x] != group_of[y] && pairs[x * v + y] != 1 {
                    return fail(format!(
                        "pair ({x}, {y}) lies in {} blocks",
                        pairs[x * v + y]
                    ));
                }
            }
        }
        Ok(TdParams { k, n })
    }
}

/// Recovers the groups of a transversal design from the "never in a common
/// block" relation. Returns `None` if the design is not a TD.
pub fn detect_groups(design: &Design) -> Option<GroupedDesign> {
    let v = design.v();
    let mut together = vec![false; v * v];
    for block in design.blocks() {
        for &x in block {
            for &y in block {
                together[x * v + y] = true;
            }
        }
    }
    let mut assigned = vec![false; v];
    let mut groups = Vec::new();
    for p in 0..v {
        if assigned[p] {
            continue;
        }
        let group: Vec<usize> = (0..v).filter(|&q| q == p || !together[p * v + q]).collect();
        for &q in &group {
            if assigned[q] {
                return None;
            }
            assigned[q] = true;
        }
        groups.push(group);
    }
    let gd = GroupedDesign {
        design: design.clone(),
        groups,
    };
    gd.validate_td().ok().map(|_| gd)
}

/// A design together with a partition of its blocks into parallel classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedDesign {
    pub design: Design,
    pub classes: Vec<Vec<usize>>,
}

impl ResolvedDesign {
    /// Checks that the classes partition the blocks and each class partitions the points.
    pub fn validate_resolution(&self) -> Result<(), DesignError> {
        let fail = |m: String| Err(DesignError::NotResolved(m));
        let mut used = vec![false; self.design.b()];
        for (c, class) in self.classes.iter().enumerate() {
            let mut covered = vec![false; self.design.v()];
            for &bi in class {
                if bi >= used.len() || std::mem::replace(&mut used[bi], true) {
                    return fail(format!("block {bi} is missing or in two classes"));
                }
                for &p in self.design.block(bi) {
                    if std::mem::replace(&mut covered[p], true) {
                        return fail(format!("class {c} covers point {p} twice"));
                    }
                }
            }
            if let Some(p) = covered.iter().position(|&x| !x) {
                return fail(format!("class {c} misses point {p}"));
            }
        }
        if let Some(bi) = used.iter().position(|&x| !x) {
            return fail(format!("block {bi} is in no class"));
        }
        Ok(())
    }

    /// Index of the class containing block `bi`.
    pub fn class_of(&self, bi: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&bi))
    }
}

/// Finds a resolution by grouping blocks under "equal or disjoint". This is
/// the unique resolution of an affine plane; returns `None` when the relation
/// does not yield one.
pub fn find_resolution(design: &Design) -> Option<ResolvedDesign> {
    let b = design.b();
    let disjoint = |i: usize, j: usize| {
        let (x, y) = (design.block(i), design.block(j));
        x.iter().all(|p| y.binary_search(p).is_err())
    };
    let mut class_of = vec![usize::MAX; b];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..b {
        if class_of[i] != usize::MAX {
            continue;
        }
        let class: Vec<usize> = (0..b).filter(|&j| j == i || disjoint(i, j)).collect();
        for &j in &class {
            if class_of[j] != usize::MAX {
                return None;
            }
            class_of[j] = classes.len();
        }
        classes.push(class);
    }
    let rd = ResolvedDesign {
        design: design.clone(),
        classes,
    };
    rd.validate_resolution().ok().map(|_| rd)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn fano() -> Design {
        Design::new(
            7,
            vec![
                vec![0, 1, 2],
                vec![0, 3, 4],
                vec![0, 5, 6],
                vec![1, 3, 5],
                vec![1, 4, 6],
                vec![2, 3, 6],
                vec![2, 4, 5],
            ],
        )
        .unwrap()
    }

    #[test]
    fn fano_params() {
        let p = validate_bibd(&fano()).unwrap();
        assert_eq!(p.tuple(), (7, 7, 3, 3, 1));
        assert!(p.symmetric);
        assert!(p.simple);
        assert_eq!(p.to_string(), "BIBD(7,7,3,3,1)");
    }

    #[test]
    fn deleted_block_reports_smallest_pair() {
        let mut blocks = fano().blocks().to_vec();
        blocks.remove(0);
        let d = Design::new(7, blocks).unwrap();
        assert_eq!(
            validate_bibd(&d),
            Err(DesignError::PairCountViolation {
                pair: (0, 1),
                count: 0,
                expected: 1
            })
        );
    }

    #[test]
    fn pair_violation_with_uniform_replication() {
        // Every point lies in two blocks but pair counts vary.
        let d = Design::new(4, vec![vec![0, 1], vec![2, 3], vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(
            validate_bibd(&d),
            Err(DesignError::PairCountViolation {
                pair: (0, 1),
                count: 2,
                expected: 0
            })
        );
    }

    #[test]
    fn rejects_bad_blocks() {
        assert!(matches!(
            Design::new(3, vec![vec![0, 3]]),
            Err(DesignError::PointOutOfRange { .. })
        ));
        assert!(matches!(
            Design::new(3, vec![vec![1, 1]]),
            Err(DesignError::RepeatedPoint { .. })
        ));
        assert_eq!(
            validate_bibd(&Design::new(3, vec![]).unwrap()),
            Err(DesignError::EmptyDesign)
        );
        assert!(matches!(
            validate_bibd(&Design::new(3, vec![vec![0, 1], vec![0, 1, 2]]).unwrap()),
            Err(DesignError::NotUniform { block: 1, .. })
        ));
    }

    #[test]
    fn steiner_checks() {
        assert!(validate_steiner(&fano(), 2).holds);
        let c = validate_steiner(&fano(), 3);
        assert!(!c.holds);
        assert_eq!(c.violation, Some((vec![0, 1, 3], 0)));
    }

    #[test]
    fn repetition_numbers() {
        assert_eq!(repetition_number(2, 3, 7), Ratio::from_integer(3));
        assert_eq!(repetition_number(3, 4, 8), Ratio::from_integer(7));
        assert_eq!(repetition_number(2, 3, 8), Ratio::new(7, 2));
    }

    #[test]
    fn fano_has_no_resolution() {
        assert!(find_resolution(&fano()).is_none());
        assert!(detect_groups(&fano()).is_none());
    }
}
