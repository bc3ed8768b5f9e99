//! Table-driven finite fields of small order.
//!
//! Elements are encoded as integers `0..q`. For `q = p^e` with `e > 1` an
//! element `c` stands for the polynomial whose base-`p` digits (least
//! significant first) are its coefficients, reduced modulo a fixed
//! irreducible polynomial from [`IRREDUCIBLES`].

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("no finite field of order {0} is supported")]
    UnsupportedOrder(usize),
}

/// Largest prime order accepted; tables are `q*q` bytes each.
pub const MAX_PRIME: usize = 251;

/// `(q, p, e, modulus)` where the modulus is the monic irreducible polynomial
/// of degree `e`, listed as its low-order coefficients `c_0..c_{e-1}`:
/// `x^e = -(c_0 + c_1 x + ... + c_{e-1} x^{e-1})`.
pub const IRREDUCIBLES: &[(usize, usize, usize, &[usize])] = &[
    (4, 2, 2, &[1, 1]),    // x^2 + x + 1
    (8, 2, 3, &[1, 1, 0]), // x^3 + x + 1
    (9, 3, 2, &[1, 0]),    // x^2 + 1
    (16, 2, 4, &[1, 1, 0, 0]), // x^4 + x + 1
    (25, 5, 2, &[2, 0]),   // x^2 + 2
    (27, 3, 3, &[1, 2, 0]), // x^3 + 2x + 1
];

#[derive(Debug, Clone)]
pub struct FiniteField {
    q: usize,
    p: usize,
    e: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl FiniteField {
    pub fn new(q: usize) -> Result<Self, FieldError> {
        if is_prime(q) && q <= MAX_PRIME {
            let add = table(q, |a, b| (a + b) % q);
            let mul = table(q, |a, b| (a * b) % q);
            return Ok(Self::finish(q, q, 1, add, mul));
        }
        let &(_, p, e, modulus) = IRREDUCIBLES
            .iter()
            .find(|row| row.0 == q)
            .ok_or(FieldError::UnsupportedOrder(q))?;
        let to_poly = |mut c: usize| {
            let mut v = vec![0; e];
            for d in v.iter_mut() {
                *d = c % p;
                c /= p;
            }
            v
        };
        let from_poly = |v: &[usize]| v.iter().rev().fold(0, |acc, &d| acc * p + d);
        let add = table(q, |a, b| {
            let (x, y) = (to_poly(a), to_poly(b));
            let s: Vec<usize> = x.iter().zip(&y).map(|(u, w)| (u + w) % p).collect();
            from_poly(&s)
        });
        let mul = table(q, |a, b| {
            let (x, y) = (to_poly(a), to_poly(b));
            let mut prod = vec![0usize; 2 * e - 1];
            for (i, &u) in x.iter().enumerate() {
                for (j, &w) in y.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + u * w) % p;
                }
            }
            // Reduce from the top degree down using x^e = -sum(c_i x^i).
            for deg in (e..prod.len()).rev() {
                let top = prod[deg];
                if top == 0 {
                    continue;
                }
                prod[deg] = 0;
                for (i, &c) in modulus.iter().enumerate() {
                    let idx = deg - e + i;
                    prod[idx] = (prod[idx] + (p - (top * c) % p)) % p;
                }
            }
            from_poly(&prod[..e])
        });
        Ok(Self::finish(q, p, e, add, mul))
    }

    fn finish(q: usize, p: usize, e: usize, add: Vec<u8>, mul: Vec<u8>) -> Self {
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            neg[a] = (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8;
            if a != 0 {
                inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u8;
            }
        }
        Self {
            q,
            p,
            e,
            add,
            mul,
            neg,
            inv,
        }
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.e
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: usize) -> Option<usize> {
        (a != 0).then(|| self.inv[a] as usize)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.q
    }
}

fn table(q: usize, f: impl Fn(usize, usize) -> usize) -> Vec<u8> {
    let mut t = vec![0u8; q * q];
    for a in 0..q {
        for b in 0..q {
            t[a * q + b] = f(a, b) as u8;
        }
    }
    t
}

/// Shorthand for [`FiniteField::new`].
pub fn finite_field(q: usize) -> Result<FiniteField, FieldError> {
    FiniteField::new(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_field_axioms(f: &FiniteField) {
        let q = f.order();
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                if a != 0 && b != 0 {
                    assert_ne!(f.mul(a, b), 0, "zero divisor {a}*{b} in GF({q})");
                }
                for c in 0..q {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
        assert_eq!(f.characteristic().pow(f.degree() as u32), q);
    }

    #[test]
    fn axioms_hold_up_to_32() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31] {
            assert_field_axioms(&FiniteField::new(q).unwrap());
        }
    }

    #[test]
    fn gf4_generator_squares_to_x_plus_one() {
        let f = FiniteField::new(4).unwrap();
        // x is encoded as 2, x + 1 as 3.
        assert_eq!(f.mul(2, 2), 3);
    }

    #[test]
    fn unsupported_orders() {
        for q in [0, 1, 6, 10, 12, 32, 49] {
            assert_eq!(FiniteField::new(q).unwrap_err(), FieldError::UnsupportedOrder(q));
        }
        assert!(FiniteField::new(5).is_ok());
    }
}
