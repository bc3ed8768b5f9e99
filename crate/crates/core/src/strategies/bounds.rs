//! Lower-bound formulas and the per-design bound report.
//!
//! Lower bounds are exact integer or rational evaluations. Upper bounds come
//! from the constructive strategies of this module and are verified against
//! every robber when the incidence graph is small enough.

use num_rational::Ratio;

use super::{
    affine_strategy, general_bibd_strategy, near_symmetric_strategy, sqs_strategy,
    steiner_matching_strategy, sts_half_strategy, sts_matching_strategy, symmetric_strategy,
    td_strategy, two_design_strategy,
};
use crate::design::{
    detect_groups, find_resolution, validate_bibd, validate_steiner, Design, DesignError,
    DesignParams,
};
use crate::game::{verify_strategy_exhaustive, CopStrategy, Verdict, VerifyError, VerifyOptions};
use crate::graph::incidence_graph;

/// `ζ(G) >= value`, with the tag of the argument that gives it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBound {
    pub value: usize,
    pub tag: &'static str,
    pub note: String,
}

/// Largest `d >= 1` with `d <= (r - 2)/α` and
/// `d < max(k, (2r(k-1) - 2)/(k + 1 + 2(k-1)α))`, `α = min(k, r - k)`,
/// for index-1 designs with `k < r`. A robber then beats `d` cops.
pub fn separation_depth(p: &DesignParams) -> Option<usize> {
    if p.lambda != 1 || p.k >= p.r || p.k < 2 {
        return None;
    }
    let (r, k) = (p.r as i64, p.k as i64);
    let alpha = k.min(r - k);
    let cap = Ratio::new(r - 2, alpha).floor().to_integer();
    let ratio = Ratio::new(2 * r * (k - 1) - 2, k + 1 + 2 * (k - 1) * alpha);
    let escape = Ratio::from_integer(k).max(ratio);
    let below = escape.ceil().to_integer() - 1;
    let d = cap.min(below);
    (d >= 1).then_some(d as usize)
}

fn ceil_log2(k: usize) -> usize {
    (0..).find(|&m| 1usize << m >= k).unwrap_or(0)
}

/// Every applicable lower bound for a validated BIBD.
pub fn lower_bounds(design: &Design) -> Result<Vec<LowerBound>, DesignError> {
    let p = validate_bibd(design)?;
    let mut out = Vec::new();
    let log = ceil_log2(p.k);
    if log > 0 {
        out.push(LowerBound {
            value: log,
            tag: "Thm2.5",
            note: format!("log2({}) rounded up", p.k),
        });
    }
    if let Some(d) = separation_depth(&p) {
        let (r, k) = (p.r as i64, p.k as i64);
        let alpha = k.min(r - k);
        let ratio = Ratio::new(2 * r * (k - 1) - 2, k + 1 + 2 * (k - 1) * alpha);
        let escape = Ratio::from_integer(k).max(ratio);
        let mut note = format!("d = {d}, alpha = {alpha}, escape bound {escape}");
        if escape.is_integer() && escape.to_integer() == d as i64 + 1 {
            note.push_str(", strict at boundary");
        }
        out.push(LowerBound {
            value: d + 1,
            tag: "Thm2.6",
            note,
        });
    }
    if p.symmetric && p.lambda == 1 {
        out.push(LowerBound {
            value: p.k,
            tag: "Thm3.1",
            note: "symmetric index 1".into(),
        });
    }
    if p.lambda == 1 && p.k == 3 && p.v > 9 {
        out.push(LowerBound {
            value: (p.v - 2) / 8 + 1,
            tag: "Cor4.1",
            note: format!("floor(({} - 2)/8) + 1", p.v),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundKind {
    Lower,
    Upper,
    Exact,
}

impl BoundKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::Lower => "LOWER",
            BoundKind::Upper => "UPPER",
            BoundKind::Exact => "EXACT",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowVerdict {
    /// A closed-form lower bound.
    Formula,
    Proven,
    Counterexample,
    BudgetExhausted,
    /// Too large to verify here.
    Unverified,
}

impl RowVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            RowVerdict::Formula => "FORMULA",
            RowVerdict::Proven => "PROVEN",
            RowVerdict::Counterexample => "COUNTEREXAMPLE",
            RowVerdict::BudgetExhausted => "BUDGET",
            RowVerdict::Unverified => "UNVERIFIED",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRow {
    pub kind: BoundKind,
    pub value: usize,
    pub theorem: String,
    pub verdict: RowVerdict,
    /// Worst-case capture round of a proven strategy.
    pub rounds: Option<usize>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub design: String,
    pub rows: Vec<BoundRow>,
}

impl BoundReport {
    pub fn best_lower(&self) -> Option<usize> {
        self.rows
            .iter()
            .filter(|r| r.kind == BoundKind::Lower)
            .map(|r| r.value)
            .max()
    }

    pub fn best_proven_upper(&self) -> Option<usize> {
        self.rows
            .iter()
            .filter(|r| r.kind == BoundKind::Upper && r.verdict == RowVerdict::Proven)
            .map(|r| r.value)
            .min()
    }
}

#[derive(Debug, Clone)]
pub struct ReportOptions {
    /// Skip verification when the incidence graph has more vertices.
    pub max_vertices: usize,
    pub verify: VerifyOptions,
    pub packing_budget: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            max_vertices: 400,
            verify: VerifyOptions::default(),
            packing_budget: 5_000_000,
        }
    }
}

/// A constructive upper bound.
pub struct UpperStrategy {
    pub tag: &'static str,
    pub strategy: Box<dyn CopStrategy>,
    pub note: String,
}

/// Every strategy that applies to `design`, in a fixed order.
pub fn upper_strategies(design: &Design, packing_budget: usize) -> Vec<UpperStrategy> {
    let mut out = Vec::new();
    let mut push = |tag, s: Box<dyn CopStrategy>, note: &str| {
        out.push(UpperStrategy {
            tag,
            strategy: s,
            note: note.to_string(),
        })
    };
    let params = validate_bibd(design).ok();
    if let Some(p) = params {
        if p.lambda == 1 && p.v >= 2 {
            if let Ok(s) = two_design_strategy(design, 0, 1) {
                push("Cor2.5", Box::new(s), "scan over N(0) and N(1) and their common block");
            }
        }
        if let Ok(s) = general_bibd_strategy(design) {
            push("Thm2.4", Box::new(s), "scan with f + r probes");
        }
        if let Ok(s) = symmetric_strategy(design) {
            push("Thm3.2", Box::new(s), "");
        }
        if let Ok(s) = near_symmetric_strategy(design) {
            push("Thm3.4", Box::new(s), "");
        }
        if p.lambda == 1 && p.r == p.k + 1 {
            if let Some(ap) = find_resolution(design) {
                if let Ok(s) = affine_strategy(&ap) {
                    push("Thm3.6", Box::new(s), "");
                }
            }
        }
        if let Ok(s) = sts_half_strategy(design) {
            push("Thm4.2", Box::new(s), "");
        }
        if let Ok(s) = sts_matching_strategy(design, packing_budget) {
            push("Thm4.3", Box::new(s), "exact-packing instantiation");
        }
    }
    if let Ok(s) = sqs_strategy(design) {
        push("Thm4.5", Box::new(s), "");
    }
    let k = design.uniform_block_size().unwrap_or(0);
    for t in [2, 3] {
        let is_triple_system = t == 2 && k == 3;
        if !is_triple_system && k > t && validate_steiner(design, t).holds {
            if let Ok(s) = steiner_matching_strategy(design, t, packing_budget) {
                push("Thm4.6", Box::new(s), "exact-packing instantiation");
            }
        }
    }
    if params.is_none() {
        if let Some(td) = detect_groups(design) {
            if let Ok(s) = td_strategy(&td) {
                push("Thm5.1", Box::new(s), "");
            }
        }
    }
    out
}

/// Runs every applicable bound on `design`. Lower rows come first, then
/// upper rows, then an exact row when the best lower bound meets a proven
/// upper bound.
pub fn bounds_report(design: &Design, opts: &ReportOptions) -> BoundReport {
    let name = match validate_bibd(design) {
        Ok(p) => p.to_string(),
        Err(_) => format!("design({},{})", design.v(), design.b()),
    };
    let mut rows = Vec::new();
    for lb in lower_bounds(design).unwrap_or_default() {
        rows.push(BoundRow {
            kind: BoundKind::Lower,
            value: lb.value,
            theorem: lb.tag.to_string(),
            verdict: RowVerdict::Formula,
            rounds: None,
            note: lb.note,
        });
    }
    let graph = incidence_graph(design).ok();
    for up in upper_strategies(design, opts.packing_budget) {
        let (verdict, rounds, extra) = match &graph {
            Some(g) if g.n() <= opts.max_vertices => {
                match verify_strategy_exhaustive(g, up.strategy.as_ref(), &opts.verify) {
                    Ok(Verdict::Proven { rounds }) => (RowVerdict::Proven, Some(rounds), None),
                    Ok(Verdict::Counterexample { .. }) => (RowVerdict::Counterexample, None, None),
                    Err(VerifyError::BudgetExhausted { .. }) => {
                        (RowVerdict::BudgetExhausted, None, None)
                    }
                    Err(e) => (RowVerdict::Counterexample, None, Some(e.to_string())),
                }
            }
            _ => (RowVerdict::Unverified, None, Some("unverified (size)".to_string())),
        };
        let note = [Some(up.note), extra]
            .into_iter()
            .flatten()
            .filter(|s| !s.is_empty())
            .collect::<Vec<_>>()
            .join("; ");
        rows.push(BoundRow {
            kind: BoundKind::Upper,
            value: up.strategy.cops(),
            theorem: up.tag.to_string(),
            verdict,
            rounds,
            note,
        });
    }
    let mut report = BoundReport { design: name, rows };
    if let (Some(lo), Some(hi)) = (report.best_lower(), report.best_proven_upper()) {
        if lo == hi {
            let tag_of = |kind: BoundKind, value: usize| {
                report
                    .rows
                    .iter()
                    .find(|r| {
                        r.kind == kind
                            && r.value == value
                            && (kind == BoundKind::Lower || r.verdict == RowVerdict::Proven)
                    })
                    .map(|r| r.theorem.clone())
                    .unwrap_or_default()
            };
            let theorem = format!(
                "{}+{}",
                tag_of(BoundKind::Lower, lo),
                tag_of(BoundKind::Upper, hi)
            );
            report.rows.push(BoundRow {
                kind: BoundKind::Exact,
                value: lo,
                theorem,
                verdict: RowVerdict::Proven,
                rounds: None,
                note: "lower bound meets a proven strategy".into(),
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{affine_plane, projective_plane, sts};

    fn values(d: &Design) -> Vec<(usize, &'static str)> {
        lower_bounds(d).unwrap().iter().map(|b| (b.value, b.tag)).collect()
    }

    #[test]
    fn separation_depths() {
        let p = |d: &Design| validate_bibd(d).unwrap();
        assert_eq!(separation_depth(&p(&sts(13).unwrap())), Some(1));
        assert_eq!(separation_depth(&p(&sts(25).unwrap())), Some(2));
        assert_eq!(separation_depth(&p(&affine_plane(3).unwrap().design)), Some(2));
        assert_eq!(separation_depth(&p(&projective_plane(3).unwrap())), None);
    }

    #[test]
    fn lower_bound_lists() {
        assert_eq!(values(&projective_plane(2).unwrap()), vec![(2, "Thm2.5"), (3, "Thm3.1")]);
        assert_eq!(values(&projective_plane(3).unwrap()), vec![(2, "Thm2.5"), (4, "Thm3.1")]);
        assert_eq!(
            values(&sts(25).unwrap()),
            vec![(2, "Thm2.5"), (3, "Thm2.6"), (3, "Cor4.1")]
        );
    }

    #[test]
    fn fano_report_is_exact() {
        let r = bounds_report(&projective_plane(2).unwrap(), &ReportOptions::default());
        let exact = r.rows.iter().find(|r| r.kind == BoundKind::Exact).unwrap();
        assert_eq!((exact.value, exact.theorem.as_str()), (3, "Thm3.1+Thm3.2"));
    }
}
