//! Constructions for the design families studied here.
//!
//! Point numbering is fixed per construction so that test vectors are stable:
//!
//! * projective planes: points and lines are normalized homogeneous triples
//!   (first nonzero coordinate is 1), numbered in lexicographic order of their
//!   element codes;
//! * affine planes: point `(x, y)` is `x*q + y`; blocks are grouped by class,
//!   slope classes `m = 0..q` first (`y = m*x + c`) then the vertical class,
//!   each ordered by intercept;
//! * Bose and Skolem triple systems: point `(x, i)` is `3*x + i`, and the
//!   Skolem point at infinity is `v - 1`;
//! * boolean quadruple systems: points are the integers `0..2^e`;
//! * transversal designs: point `x` of group `g` is `g*n + x`.

use thiserror::Error;

use crate::design::{validate_bibd, Design, DesignError, GroupedDesign, ResolvedDesign};
use crate::field::{FieldError, FiniteField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("invalid order {0}")]
    InvalidOrder(usize),
    #[error("block size {k} exceeds n + 1 = {}", .n + 1)]
    KTooLarge { k: usize, n: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("design is not a projective plane")]
    NotAPlane,
    #[error("design is not a resolved affine plane: {0}")]
    NotResolved(String),
    #[error(transparent)]
    Design(#[from] DesignError),
}

fn normalized_triples(f: &FiniteField) -> Vec<[usize; 3]> {
    let q = f.order();
    let mut out = Vec::with_capacity(q * q + q + 1);
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                let t = [a, b, c];
                if t.iter().find(|&&x| x != 0) == Some(&1) {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// The Desarguesian projective plane `PG(2, q)`.
pub fn projective_plane(q: usize) -> Result<Design, GenError> {
    let f = FiniteField::new(q)?;
    let triples = normalized_triples(&f);
    let dot = |x: &[usize; 3], y: &[usize; 3]| {
        (0..3).fold(0, |acc, i| f.add(acc, f.mul(x[i], y[i])))
    };
    let blocks = triples
        .iter()
        .map(|line| {
            (0..triples.len())
                .filter(|&p| dot(line, &triples[p]) == 0)
                .collect()
        })
        .collect();
    Ok(Design::new(triples.len(), blocks)?)
}

/// The affine plane `AG(2, q)` with its parallel classes.
pub fn affine_plane(q: usize) -> Result<ResolvedDesign, GenError> {
    let f = FiniteField::new(q)?;
    let mut blocks = Vec::with_capacity(q * q + q);
    let mut classes = Vec::with_capacity(q + 1);
    for m in 0..q {
        let mut class = Vec::with_capacity(q);
        for c in 0..q {
            class.push(blocks.len());
            blocks.push((0..q).map(|x| x * q + f.add(f.mul(m, x), c)).collect());
        }
        classes.push(class);
    }
    let mut vertical = Vec::with_capacity(q);
    for c in 0..q {
        vertical.push(blocks.len());
        blocks.push((0..q).map(|y| c * q + y).collect());
    }
    classes.push(vertical);
    Ok(ResolvedDesign {
        design: Design::new(q * q, blocks)?,
        classes,
    })
}

/// A Steiner triple system on `v` points: Bose for `v ≡ 3 (mod 6)`,
/// Skolem for `v ≡ 1 (mod 6)`.
pub fn sts(v: usize) -> Result<Design, GenError> {
    if v < 7 {
        return Err(GenError::InvalidOrder(v));
    }
    match v % 6 {
        3 => Ok(bose(v)),
        1 => Ok(skolem(v)),
        _ => Err(GenError::InvalidOrder(v)),
    }
}

fn bose(v: usize) -> Design {
    let m = v / 3; // odd order of the idempotent quasigroup
    let half = m.div_ceil(2); // inverse of 2 mod m
    let pt = |x: usize, i: usize| 3 * x + i;
    let op = |x: usize, y: usize| ((x + y) * half) % m;
    let mut blocks = Vec::with_capacity(v * (v - 1) / 6);
    for x in 0..m {
        blocks.push(vec![pt(x, 0), pt(x, 1), pt(x, 2)]);
    }
    for x in 0..m {
        for y in x + 1..m {
            for i in 0..3 {
                blocks.push(vec![pt(x, i), pt(y, i), pt(op(x, y), (i + 1) % 3)]);
            }
        }
    }
    Design::new(v, blocks).expect("Bose construction is well formed")
}

fn skolem(v: usize) -> Design {
    let n = (v - 1) / 6;
    let m = 2 * n; // order of the half-idempotent quasigroup
    let inf = v - 1;
    let pt = |x: usize, i: usize| 3 * x + i;
    // x∘y = σ(x + y) with σ(2i) = i and σ(2i + 1) = n + i.
    let op = |x: usize, y: usize| {
        let s = (x + y) % m;
        if s.is_multiple_of(2) {
            s / 2
        } else {
            n + s / 2
        }
    };
    let mut blocks = Vec::with_capacity(v * (v - 1) / 6);
    for x in 0..n {
        blocks.push(vec![pt(x, 0), pt(x, 1), pt(x, 2)]);
    }
    for x in 0..n {
        for i in 0..3 {
            blocks.push(vec![inf, pt(n + x, i), pt(x, (i + 1) % 3)]);
        }
    }
    for x in 0..m {
        for y in x + 1..m {
            for i in 0..3 {
                blocks.push(vec![pt(x, i), pt(y, i), pt(op(x, y), (i + 1) % 3)]);
            }
        }
    }
    Design::new(v, blocks).expect("Skolem construction is well formed")
}

/// The boolean Steiner quadruple system on `2^e` points: all 4-sets whose
/// XOR is zero.
pub fn sqs_boolean(e: usize) -> Result<Design, GenError> {
    if !(3..=10).contains(&e) {
        return Err(GenError::InvalidOrder(e));
    }
    let v = 1usize << e;
    let mut blocks = Vec::new();
    for a in 0..v {
        for b in a + 1..v {
            for c in b + 1..v {
                let d = a ^ b ^ c;
                if d > c {
                    blocks.push(vec![a, b, c, d]);
                }
            }
        }
    }
    Ok(Design::new(v, blocks)?)
}

/// `TD(k, n)` from `k - 2` mutually orthogonal Latin squares over `GF(n)`.
///
/// Block `(a, b)` (numbered `a*n + b`) takes element `a` in group 0 and
/// `a*e_{g-1} + b` in group `g >= 1`, where `e_j` is the field element with code `j`.
pub fn transversal_design(k: usize, n: usize) -> Result<GroupedDesign, GenError> {
    let f = FiniteField::new(n)?;
    if k < 3 {
        return Err(GenError::InvalidParameter(format!("block size {k} < 3")));
    }
    if k > n + 1 {
        return Err(GenError::KTooLarge { k, n });
    }
    let mut blocks = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut block = vec![a];
            for g in 1..k {
                block.push(g * n + f.add(f.mul(a, g - 1), b));
            }
            blocks.push(block);
        }
    }
    let groups = (0..k).map(|g| (g * n..(g + 1) * n).collect()).collect();
    Ok(GroupedDesign {
        design: Design::new(k * n, blocks)?,
        groups,
    })
}

/// Order `q` of a projective plane, if `design` is one.
fn plane_order(design: &Design) -> Option<usize> {
    let p = validate_bibd(design).ok()?;
    let q = p.k.checked_sub(1)?;
    (p.lambda == 1 && p.symmetric && q >= 2 && p.v == q * q + q + 1).then_some(q)
}

/// Deletes `point` and every block through it; the deleted blocks (minus the
/// point) become the groups of a `TD(q + 1, q)`. Remaining points keep their
/// relative order and groups follow the order of the deleted blocks.
pub fn derive_td_from_pp(pp: &Design, point: usize) -> Result<GroupedDesign, GenError> {
    plane_order(pp).ok_or(GenError::NotAPlane)?;
    if point >= pp.v() {
        return Err(GenError::InvalidParameter(format!("point {point} out of range")));
    }
    let renumber = |p: usize| if p > point { p - 1 } else { p };
    let mut groups = Vec::new();
    let mut blocks = Vec::new();
    for block in pp.blocks() {
        let mapped: Vec<usize> = block.iter().filter(|&&p| p != point).map(|&p| renumber(p)).collect();
        if mapped.len() < block.len() {
            groups.push(mapped);
        } else {
            blocks.push(mapped);
        }
    }
    Ok(GroupedDesign {
        design: Design::new(pp.v() - 1, blocks)?,
        groups,
    })
}

/// Deletes parallel class `class` of an affine plane; its blocks become the
/// groups of a `TD(q, q)`. Remaining blocks keep their order.
pub fn derive_td_from_affine(ap: &ResolvedDesign, class: usize) -> Result<GroupedDesign, GenError> {
    ap.validate_resolution()
        .map_err(|e| GenError::NotResolved(e.to_string()))?;
    let p = validate_bibd(&ap.design).map_err(|e| GenError::NotResolved(e.to_string()))?;
    if p.lambda != 1 || p.r != p.k + 1 || p.v != p.k * p.k {
        return Err(GenError::NotResolved("not an affine plane".into()));
    }
    let removed = ap
        .classes
        .get(class)
        .ok_or_else(|| GenError::InvalidParameter(format!("class {class} out of range")))?;
    let groups = removed.iter().map(|&bi| ap.design.block(bi).to_vec()).collect();
    let blocks = (0..ap.design.b())
        .filter(|bi| !removed.contains(bi))
        .map(|bi| ap.design.block(bi).to_vec())
        .collect();
    Ok(GroupedDesign {
        design: Design::new(ap.design.v(), blocks)?,
        groups,
    })
}
