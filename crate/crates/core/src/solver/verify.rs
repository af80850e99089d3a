// SPDX-License-Identifier: Apache-2.0

//! Standalone check of a link against the expanded polynomial conditions.
//!
//! Nothing here calls the trilinear engine or the solvers. The left side is
//! rebuilt from the blow-up formulas, the right side is checked with the
//! polynomials written out term by term, and all arithmetic is done in
//! `i128` so the check does not share an overflow path with the search.

use crate::contractions::{ContractionType, Target};
use crate::enumerator::NumericalLink;

struct Left {
    a: i128,
    u: i128,
    v: i128,
    w: i128,
}

fn left(link: &NumericalLink) -> Option<Left> {
    let target = link.left.target.family()?;
    let a1 = i128::from(target.a_cubed);
    let (a, u, v, w) = match link.left.ctype {
        ContractionType::E1 | ContractionType::E3E4 => {
            let (pa, deg) = match (link.left.ctype, link.left.centre) {
                (ContractionType::E1, Some(c)) if c.deg_h >= 1 => (i128::from(c.pa), i128::from(c.deg_h)),
                (ContractionType::E3E4, None) => (0, 0),
                _ => return None,
            };
            let a_gamma = i128::from(target.fano_index) * deg;
            (a1 - 2 * a_gamma - 2 + 2 * pa, a_gamma + 2 - 2 * pa, 2 * pa - 2, -a_gamma + 2 - 2 * pa)
        }
        ContractionType::E2 => (a1 - 8, 4, -2, 1),
        _ => return None,
    };
    Some(Left { a, u, v, w })
}

/// `true` when `link` satisfies every numerical condition for its types.
pub fn verify_link(link: &NumericalLink) -> bool {
    let Some(l) = left(link) else { return false };
    if l.a != 2 * i128::from(link.midpoint_genus) - 2 || l.a < 4 || l.u < 2 || link.e < 1 {
        return false;
    }
    let (x, y) = (i128::from(link.coordinates.x), i128::from(link.coordinates.y));
    let e = i128::from(link.e);
    if x < 1 || y < 1 {
        return false;
    }
    // -E~^3 on the flopped side
    let minus_w = -l.w + e;
    let (a, u, v) = (l.a, l.u, l.v);
    let right = &link.right;
    match (right.ctype, right.target) {
        (ContractionType::E1, Target::Family(f)) => {
            let Some(c) = right.centre else { return false };
            let (pa, deg) = (i128::from(c.pa), i128::from(c.deg_h));
            if y != i128::from(f.fano_index) || (x + 1) % y != 0 || deg < 1 || pa < 0 {
                return false;
            }
            let k = (x + 1) / y;
            let big = i128::from(f.a_cubed);
            y * y * (a * k * k - 2 * u * k + v) == big
                && a * k * k * (y * k - 1) + u * (2 * k - 3 * k * k * y) + v * (3 * k * y - 1) + minus_w * y == 0
                && a * k * (y * k - 1) - u * (2 * y * k - 1) + v * y == deg
                && a * (y * k - 1) * (y * k - 1) - 2 * u * y * (y * k - 1) + v * y * y == 2 * pa - 2
        }
        (ContractionType::E2 | ContractionType::E3E4, Target::Family(f)) => {
            if right.centre.is_some() {
                return false;
            }
            let (n2, n0, m) = if right.ctype == ContractionType::E2 { (4, 1, 2) } else { (2, 2, 1) };
            let a2d = x * a - y * u;
            let ad2 = x * x * a - 2 * x * y * u + y * y * v;
            let d3 = x * x * x * a - 3 * x * x * y * u + 3 * x * y * y * v + y * y * y * minus_w;
            // (A + m D)^3 expanded
            let image = a + 3 * m * a2d + 3 * m * m * ad2 + m * m * m * d3;
            a2d == n2 && ad2 == -2 && d3 == n0 && image == i128::from(f.a_cubed)
        }
        (ContractionType::CB, Target::Base(_)) => {
            let Some(delta) = right.aux.map(i128::from) else { return false };
            y <= 2
                && gcd(x, y) == 1
                && (0..=12).contains(&delta)
                && a * x * x * x - 3 * u * x * x * y + 3 * v * x * y * y + minus_w * y * y * y == 0
                && a * x * x - 2 * u * x * y + v * y * y == 2
                && a * x - u * y == 12 - delta
        }
        (ContractionType::DP, Target::Base(_)) => {
            let Some(k) = right.aux.map(i128::from) else { return false };
            y <= 3
                && gcd(x, y) == 1
                && (1..=9).contains(&k)
                && a * x * x - 2 * u * x * y + v * y * y == 0
                && u * x * x - 2 * v * x * y - minus_w * y * y == 0
                && a * x - u * y == k
        }
        _ => false,
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}
