// SPDX-License-Identifier: Apache-2.0

//! Brute-force scan over class coordinates `(x, y)`.
//!
//! No root extraction and no trilinear engine: each candidate is tested
//! against the intersection numbers written out as explicit monomials in
//! `i128`. The scan windows are far wider than any root the quadratics can
//! have for the quadruples that occur at genus 3..=10: for point kinds
//! `y^2 (b^2 - ac) = 2a + n2^2` bounds `y` by 8 and then `x <= (4 + 8b)/a`.

#![allow(dead_code)]

use sarkisov_core::catalog::all_families;
use sarkisov_core::contractions::ContractionType;
use sarkisov_core::lattice::IntersectionQuadruple;
use sarkisov_core::solver::RightSolution;

pub const X_MAX: i128 = 3000;
pub const X_MAX_POINT: i128 = 600;
pub const Y_MAX_POINT: i128 = 60;

/// `(type, target, centre, aux, x, y, e)`
pub type Found = (ContractionType, &'static str, Option<(i64, i64)>, Option<i64>, i64, i64, i64);

pub fn summarize(sols: &[RightSolution]) -> Vec<Found> {
    let mut v: Vec<Found> = sols
        .iter()
        .map(|s| {
            (
                s.spec.ctype,
                s.spec.target.name(),
                s.spec.centre.map(|c| (c.pa, c.deg_h)),
                s.spec.aux,
                s.class.x,
                s.class.y,
                s.e,
            )
        })
        .collect();
    v.sort();
    v
}

struct Q {
    a: i128,
    b: i128,
    c: i128,
    d: i128,
}

impl Q {
    fn new(q: &IntersectionQuadruple) -> Self {
        Q { a: q.a.into(), b: q.b.into(), c: q.c.into(), d: q.d.into() }
    }
    /// A^2.D for D = xA - yE
    fn a2d(&self, x: i128, y: i128) -> i128 {
        x * self.a - y * self.b
    }
    fn ad2(&self, x: i128, y: i128) -> i128 {
        x * x * self.a - 2 * x * y * self.b + y * y * self.c
    }
    fn d3(&self, x: i128, y: i128) -> i128 {
        x * x * x * self.a - 3 * x * x * y * self.b + 3 * x * y * y * self.c - y * y * y * self.d
    }
    /// D^2.E
    fn d2e(&self, x: i128, y: i128) -> i128 {
        x * x * self.b - 2 * x * y * self.c + y * y * self.d
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn small(v: i128) -> i64 {
    i64::try_from(v).expect("oracle values fit in i64")
}

/// Exact positive quotient.
fn pos_div(num: i128, den: i128) -> Option<i128> {
    (num % den == 0 && num / den >= 1).then(|| num / den)
}

pub fn scan_e1(q: &IntersectionQuadruple) -> Vec<Found> {
    let z = Q::new(q);
    let mut out = Vec::new();
    for y in 1..=4i128 {
        for x in 1..=X_MAX {
            if (x + 1) % y != 0 {
                continue;
            }
            let (n2, n1) = (z.a2d(x, y), z.ad2(x, y));
            // (A + D)^2.A
            let image = z.a + 2 * n2 + n1;
            for f in all_families().iter().filter(|f| i128::from(f.fano_index) == y && i128::from(f.a_cubed) == image) {
                if n2 < 2 || n1 < -2 || n1 % 2 != 0 || (n2 + n1) % y != 0 {
                    continue;
                }
                let deg = (n2 + n1) / y;
                if deg < 0 || y * deg > i128::from(f.a_cubed) {
                    continue;
                }
                let n0 = -n2 - 2 * n1;
                let Some(e) = pos_div(n0 - z.d3(x, y), y * y * y) else { continue };
                let pa = (n1 + 2) / 2;
                let (ctype, centre) = if deg == 0 {
                    (ContractionType::E3E4, None)
                } else {
                    (ContractionType::E1, Some((small(pa), small(deg))))
                };
                out.push((ctype, f.display_name(), centre, None, small(x), small(y), small(e)));
            }
        }
    }
    out.sort();
    out
}

pub fn scan_point(q: &IntersectionQuadruple, e2: bool) -> Vec<Found> {
    let z = Q::new(q);
    let (n2, n1, n0, jump, ctype) =
        if e2 { (4, -2, 1, 8, ContractionType::E2) } else { (2, -2, 2, 2, ContractionType::E3E4) };
    let mut out = Vec::new();
    for y in 1..=Y_MAX_POINT {
        for x in 1..=X_MAX_POINT {
            if z.a2d(x, y) != n2 || z.ad2(x, y) != n1 {
                continue;
            }
            let Some(e) = pos_div(n0 - z.d3(x, y), y * y * y) else { continue };
            for f in all_families().iter().filter(|f| i128::from(f.a_cubed) == z.a + jump) {
                out.push((ctype, f.display_name(), None, None, small(x), small(y), small(e)));
            }
        }
    }
    out.sort();
    out
}

pub fn scan_cb(q: &IntersectionQuadruple) -> Vec<Found> {
    let z = Q::new(q);
    let mut out = Vec::new();
    for y in 1..=2i128 {
        for x in 1..=X_MAX {
            if gcd(x, y) != 1 || z.ad2(x, y) != 2 {
                continue;
            }
            let delta = 12 - z.a2d(x, y);
            if !(0..=12).contains(&delta) {
                continue;
            }
            // L^3 = 0 after the flop
            let Some(e) = pos_div(-z.d3(x, y), y * y * y) else { continue };
            out.push((ContractionType::CB, "P2", None, Some(small(delta)), small(x), small(y), small(e)));
        }
    }
    out.sort();
    out
}

pub fn scan_dp(q: &IntersectionQuadruple) -> Vec<Found> {
    let z = Q::new(q);
    let mut out = Vec::new();
    for y in 1..=3i128 {
        for x in 1..=X_MAX {
            if gcd(x, y) != 1 || z.ad2(x, y) != 0 {
                continue;
            }
            let k = z.a2d(x, y);
            if !(1..=9).contains(&k) {
                continue;
            }
            // L^2.E~ = 0 after the flop
            let Some(e) = pos_div(z.d2e(x, y), y * y) else { continue };
            out.push((ContractionType::DP, "P1", None, Some(small(k)), small(x), small(y), small(e)));
        }
    }
    out.sort();
    out
}
