// SPDX-License-Identifier: Apache-2.0

//! Exact arithmetic on the rank-2 lattice spanned by the anticanonical class
//! `A` and a divisor class `E`.
//!
//! Everything is `i64` with checked operations. Overflow surfaces as
//! [`LatticeError::Overflow`], never as wraparound.

use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("integer overflow in lattice arithmetic")]
    Overflow,
    #[error("flop correction must be a strictly positive integer, got {0}")]
    NonPositiveFlop(i64),
    #[error("the zero polynomial has no well-defined root set")]
    ZeroPolynomial,
}

pub type Result<T> = std::result::Result<T, LatticeError>;

/// Intersection numbers `(A^3, A^2.E, A.E^2, E^3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IntersectionQuadruple {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl IntersectionQuadruple {
    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { a, b, c, d }
    }

    /// Basis value for a monomial containing `e_count` copies of `E`.
    fn basis(&self, e_count: usize) -> i64 {
        match e_count {
            0 => self.a,
            1 => self.b,
            2 => self.c,
            _ => self.d,
        }
    }
}

impl fmt::Display for IntersectionQuadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.a, self.b, self.c, self.d)
    }
}

/// The class `x*A - y*E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DivisorClass {
    pub x: i64,
    pub y: i64,
}

impl DivisorClass {
    pub const A: DivisorClass = DivisorClass { x: 1, y: 0 };
    pub const E: DivisorClass = DivisorClass { x: 0, y: -1 };

    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn checked_add(self, other: Self) -> Result<Self> {
        Ok(Self {
            x: self.x.checked_add(other.x).ok_or(LatticeError::Overflow)?,
            y: self.y.checked_add(other.y).ok_or(LatticeError::Overflow)?,
        })
    }

    pub fn checked_scale(self, k: i64) -> Result<Self> {
        Ok(Self {
            x: self.x.checked_mul(k).ok_or(LatticeError::Overflow)?,
            y: self.y.checked_mul(k).ok_or(LatticeError::Overflow)?,
        })
    }

    /// Coefficients on the basis `(A, E)`.
    fn coefficients(self) -> Result<[i64; 2]> {
        Ok([self.x, self.y.checked_neg().ok_or(LatticeError::Overflow)?])
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeff = |c: i64, sym: &str| match c {
            1 => sym.to_string(),
            -1 => format!("-{sym}"),
            c => format!("{c}{sym}"),
        };
        match (self.x, self.y) {
            (x, 0) => f.write_str(&coeff(x, "A")),
            (0, y) => f.write_str(&coeff(-y, "E~")),
            (x, y) if y < 0 => write!(f, "{} + {}", coeff(x, "A"), coeff(-y, "E~")),
            (x, y) => write!(f, "{} - {}", coeff(x, "A"), coeff(y, "E~")),
        }
    }
}

/// Full trilinear expansion of `d1 . d2 . d3` over the basis values of `q`.
pub fn triple_product(q: &IntersectionQuadruple, d1: DivisorClass, d2: DivisorClass, d3: DivisorClass) -> Result<i64> {
    let (c1, c2, c3) = (d1.coefficients()?, d2.coefficients()?, d3.coefficients()?);
    let mut total: i64 = 0;
    for (i, &u) in c1.iter().enumerate() {
        for (j, &v) in c2.iter().enumerate() {
            for (k, &w) in c3.iter().enumerate() {
                let term = u
                    .checked_mul(v)
                    .and_then(|t| t.checked_mul(w))
                    .and_then(|t| t.checked_mul(q.basis(i + j + k)))
                    .ok_or(LatticeError::Overflow)?;
                total = total.checked_add(term).ok_or(LatticeError::Overflow)?;
            }
        }
    }
    Ok(total)
}

/// Effect of a flop sequence on the quadruple: only `E^3` moves, by `-e`.
pub fn flop(q: &IntersectionQuadruple, e: i64) -> Result<IntersectionQuadruple> {
    if e < 1 {
        return Err(LatticeError::NonPositiveFlop(e));
    }
    Ok(IntersectionQuadruple { d: q.d.checked_sub(e).ok_or(LatticeError::Overflow)?, ..*q })
}

/// All integer `t` with `p*t^2 + q*t + r = 0`, ascending.
///
/// The discriminant is tested with an integer square root; no floating point
/// is involved.
pub fn integer_quadratic_roots(p: i64, q: i64, r: i64) -> Result<Vec<i64>> {
    if p == 0 {
        if q == 0 {
            return if r == 0 { Err(LatticeError::ZeroPolynomial) } else { Ok(Vec::new()) };
        }
        return Ok(if r % q == 0 { vec![-r / q] } else { Vec::new() });
    }
    let disc = q
        .checked_mul(q)
        .and_then(|qq| p.checked_mul(r).and_then(|pr| pr.checked_mul(4)).and_then(|f| qq.checked_sub(f)))
        .ok_or(LatticeError::Overflow)?;
    if disc < 0 {
        return Ok(Vec::new());
    }
    let s = disc.isqrt();
    if s * s != disc {
        return Ok(Vec::new());
    }
    let two_p = p.checked_mul(2).ok_or(LatticeError::Overflow)?;
    let neg_q = q.checked_neg().ok_or(LatticeError::Overflow)?;
    let mut roots = Vec::with_capacity(2);
    for numerator in [neg_q.checked_sub(s), neg_q.checked_add(s)] {
        let numerator = numerator.ok_or(LatticeError::Overflow)?;
        if numerator % two_p == 0 {
            roots.push(numerator / two_p);
        }
    }
    roots.sort_unstable();
    roots.dedup();
    Ok(roots)
}
