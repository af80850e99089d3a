// SPDX-License-Identifier: Apache-2.0

//! Right-hand completions of a link.
//!
//! Given the pre-flop quadruple `(A^3, A^2.E, A.E^2, E^3)` on `Z`, each
//! solver finds every integral class `x*A - y*E~` on the flopped side that
//! can be the exceptional divisor (or the pullback of `O(1)` from the base)
//! of the second extremal contraction, together with the flop correction
//! `e`. Every search is a loop over a handful of `y` values followed by exact
//! root extraction from an explicit quadratic.

mod verify;

pub use verify::verify_link;

use crate::catalog::{all_families, lookup_by_degree};
use crate::contractions::{Base, ContractionSpec, ContractionType, CurveCentre, Target};
use crate::lattice::{integer_quadratic_roots, triple_product, DivisorClass, IntersectionQuadruple, LatticeError};
use serde::Serialize;

const A: DivisorClass = DivisorClass::A;
const E: DivisorClass = DivisorClass::E;

/// Intersection numbers of a right-side exceptional divisor `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DerivedNumbers {
    /// `A^2.D`
    pub n2: i64,
    /// `A.D^2`
    pub n1: i64,
    /// `D^3`
    pub n0: i64,
    /// Anticanonical degree of the right-hand target.
    pub target_degree: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RightSolution {
    pub spec: ContractionSpec,
    pub class: DivisorClass,
    pub e: i64,
    pub derived: Option<DerivedNumbers>,
}

/// A del Pezzo candidate that satisfied everything except the fibre degree
/// cap of 9.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BoundaryHit {
    pub quadruple: IntersectionQuadruple,
    pub class: DivisorClass,
    pub fibre_degree: i64,
    pub e: i64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RightSolutions {
    pub solutions: Vec<RightSolution>,
    pub boundary_hits: Vec<BoundaryHit>,
}

fn checked<T>(v: Option<T>) -> Result<T, LatticeError> {
    v.ok_or(LatticeError::Overflow)
}

/// `(value - base) / y^3` when it is an exact, strictly positive integer.
fn positive_quotient(value: i64, base: i64, divisor: i64) -> Result<Option<i64>, LatticeError> {
    let num = checked(value.checked_sub(base))?;
    Ok((num % divisor == 0 && num / divisor >= 1).then(|| num / divisor))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// E1 contractions onto a rank-1 Fano 3-fold of index `y`.
///
/// Solutions whose centre comes out as `(0, 0)` are returned with type
/// [`ContractionType::E3E4`] and no centre.
pub fn solve_right_divisorial_e1(q: &IntersectionQuadruple) -> Result<Vec<RightSolution>, LatticeError> {
    let (a, b, c) = (q.a, q.b, q.c);
    let mut out = Vec::new();
    for y in 1..=4i64 {
        for family in all_families().iter().filter(|f| f.fano_index == y) {
            // (A + D)^3 = A'^3 with D = xA - yE~, as a quadratic in x.
            let p1 = checked((2 * a).checked_sub(2 * y * b))?;
            let p0 = checked(
                a.checked_sub(2 * y * b)
                    .and_then(|t| t.checked_add(y * y * c))
                    .and_then(|t| t.checked_sub(family.a_cubed)),
            )?;
            for x in integer_quadratic_roots(a, p1, p0)? {
                if x < 1 || (x + 1) % y != 0 {
                    continue;
                }
                let d = DivisorClass::new(x, y);
                let n2 = triple_product(q, A, A, d)?;
                let n1 = triple_product(q, A, d, d)?;
                if n2 < 2 || n1 % 2 != 0 || n1 < -2 || (n2 + n1) % y != 0 {
                    continue;
                }
                let deg_h = (n2 + n1) / y;
                if deg_h < 0 || y * deg_h > family.a_cubed {
                    continue;
                }
                let n0 = -n2 - 2 * n1;
                let Some(e) = positive_quotient(n0, triple_product(q, d, d, d)?, y * y * y)? else {
                    continue;
                };
                let target_degree = a + 2 * n2 + n1;
                debug_assert_eq!(target_degree, family.a_cubed);
                let pa = (n1 + 2) / 2;
                let (ctype, centre) = if deg_h == 0 {
                    (ContractionType::E3E4, None)
                } else {
                    (ContractionType::E1, Some(CurveCentre { pa, deg_h }))
                };
                out.push(RightSolution {
                    spec: ContractionSpec { ctype, target: Target::Family(family), centre, aux: None },
                    class: d,
                    e,
                    derived: Some(DerivedNumbers { n2, n1, n0, target_degree }),
                });
            }
        }
    }
    Ok(out)
}

/// Which point contraction to look for on the right.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointKind {
    E2,
    E3E4,
}

impl PointKind {
    /// `(A^2.D, A.D^2, D^3, A'^3 - A^3)` for the exceptional divisor.
    fn numbers(self) -> (i64, i64, i64, i64) {
        match self {
            PointKind::E2 => (4, -2, 1, 8),
            PointKind::E3E4 => (2, -2, 2, 2),
        }
    }
}

/// Contractions of `D = xA - yE~` to a point. Every catalog family of the
/// right degree is offered as a target.
pub fn solve_right_point(q: &IntersectionQuadruple, kind: PointKind) -> Result<Vec<RightSolution>, LatticeError> {
    let (a, b, c) = (q.a, q.b, q.c);
    let (n2, n1, n0, jump) = kind.numbers();
    // Eliminating x = (n2 + y b) / a from A.D^2 = n1 leaves
    // (ac - b^2) y^2 = a n1 - n2^2.
    let lead = checked(a.checked_mul(c).and_then(|ac| b.checked_mul(b).and_then(|bb| ac.checked_sub(bb))))?;
    let rhs = checked(a.checked_mul(n1).and_then(|t| t.checked_sub(n2 * n2)))?;
    let ys = match integer_quadratic_roots(lead, 0, -rhs) {
        Ok(ys) => ys,
        Err(LatticeError::ZeroPolynomial) => Vec::new(),
        Err(err) => return Err(err),
    };
    let ctype = match kind {
        PointKind::E2 => ContractionType::E2,
        PointKind::E3E4 => ContractionType::E3E4,
    };
    let mut out = Vec::new();
    for y in ys.into_iter().filter(|&y| y >= 1) {
        let num = checked(y.checked_mul(b).and_then(|t| t.checked_add(n2)))?;
        if num % a != 0 || num / a < 1 {
            continue;
        }
        let d = DivisorClass::new(num / a, y);
        if triple_product(q, A, A, d)? != n2 || triple_product(q, A, d, d)? != n1 {
            continue;
        }
        let y3 = checked(y.checked_pow(3))?;
        let Some(e) = positive_quotient(n0, triple_product(q, d, d, d)?, y3)? else {
            continue;
        };
        let target_degree = a + jump;
        for family in lookup_by_degree(target_degree) {
            out.push(RightSolution {
                spec: ContractionSpec { ctype, target: Target::Family(family), centre: None, aux: None },
                class: d,
                e,
                derived: Some(DerivedNumbers { n2, n1, n0, target_degree }),
            });
        }
    }
    Ok(out)
}

/// Conic bundles over `P^2`: `L = xA - yE~` with `L^2.A = 2`, `L^3 = 0`.
pub fn solve_right_conic_bundle(q: &IntersectionQuadruple) -> Result<Vec<RightSolution>, LatticeError> {
    let mut out = Vec::new();
    for y in 1..=2i64 {
        let linear = checked(q.b.checked_mul(-2 * y))?;
        let constant = checked(q.c.checked_mul(y * y).and_then(|t| t.checked_sub(2)))?;
        for x in integer_quadratic_roots(q.a, linear, constant)? {
            if x < 1 || gcd(x, y) != 1 {
                continue;
            }
            let l = DivisorClass::new(x, y);
            let delta = 12 - triple_product(q, A, A, l)?;
            if !(0..=12).contains(&delta) {
                continue;
            }
            let Some(e) = positive_quotient(0, triple_product(q, l, l, l)?, y * y * y)? else {
                continue;
            };
            out.push(RightSolution {
                spec: ContractionSpec {
                    ctype: ContractionType::CB,
                    target: Target::Base(Base::P2),
                    centre: None,
                    aux: Some(delta),
                },
                class: l,
                e,
                derived: None,
            });
        }
    }
    Ok(out)
}

/// Del Pezzo fibrations over `P^1`: `L^2.A = 0`, `L^2.E~ = 0`, fibre degree
/// `L.A^2`. Candidates above degree 9 are reported as boundary hits.
pub fn solve_right_del_pezzo(q: &IntersectionQuadruple) -> Result<RightSolutions, LatticeError> {
    let mut out = RightSolutions::default();
    for y in 1..=3i64 {
        let linear = checked(q.b.checked_mul(-2 * y))?;
        let constant = checked(q.c.checked_mul(y * y))?;
        for x in integer_quadratic_roots(q.a, linear, constant)? {
            if x < 1 || gcd(x, y) != 1 {
                continue;
            }
            let l = DivisorClass::new(x, y);
            let fibre_degree = triple_product(q, A, A, l)?;
            // L^2.E~ on the flopped side is L^2.E - y^2 e.
            let Some(e) = positive_quotient(triple_product(q, l, l, E)?, 0, y * y)? else {
                continue;
            };
            if fibre_degree > 9 {
                out.boundary_hits.push(BoundaryHit { quadruple: *q, class: l, fibre_degree, e });
                continue;
            }
            if fibre_degree < 1 {
                continue;
            }
            out.solutions.push(RightSolution {
                spec: ContractionSpec {
                    ctype: ContractionType::DP,
                    target: Target::Base(Base::P1),
                    centre: None,
                    aux: Some(fibre_degree),
                },
                class: l,
                e,
                derived: None,
            });
        }
    }
    Ok(out)
}

/// All five kinds together, sorted, with E1 solutions at a `(0,0)` centre
/// merged into the matching E3/E4 point solutions.
pub fn solve_right(q: &IntersectionQuadruple) -> Result<RightSolutions, LatticeError> {
    let dp = solve_right_del_pezzo(q)?;
    let mut solutions = solve_right_divisorial_e1(q)?;
    solutions.extend(solve_right_point(q, PointKind::E2)?);
    solutions.extend(solve_right_point(q, PointKind::E3E4)?);
    solutions.extend(solve_right_conic_bundle(q)?);
    solutions.extend(dp.solutions);
    solutions.sort_by_key(solution_order);
    solutions.dedup_by_key(|s| identity(s));
    Ok(RightSolutions { solutions, boundary_hits: dp.boundary_hits })
}

type SolutionIdentity = (ContractionType, (u8, i64, i64), Option<CurveCentre>, Option<i64>, i64);

fn identity(s: &RightSolution) -> SolutionIdentity {
    (s.spec.ctype, s.spec.target.sort_key(), s.spec.centre, s.spec.aux, s.e)
}

fn solution_order(s: &RightSolution) -> (SolutionIdentity, DivisorClass) {
    (identity(s), s.class)
}
