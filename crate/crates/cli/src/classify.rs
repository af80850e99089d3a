// SPDX-License-Identifier: Apache-2.0

//! Case list for non-factorial Fano 3-folds of a given genus, with the
//! scroll and conic bundle cases filled in from the enumeration.

use sarkisov_core::contractions::{left_quadruple, ContractionType};
use sarkisov_core::enumerator::NumericalLink;
use std::collections::BTreeSet;
use std::fmt::Write;

/// Anticanonical degree of the cheapest generator of `Cl Y / Pic Y` a link
/// offers: the smaller of the two exceptional divisors, with the pullback
/// of `O(1)` standing in for a fibration.
pub fn generator_degree(link: &NumericalLink) -> Option<i64> {
    let left = left_quadruple(&link.left).ok()?.b;
    let right = match link.right.ctype {
        ContractionType::CB => 12 - link.right.aux?,
        ContractionType::DP => link.right.aux?,
        _ => link.derived?.n2,
    };
    Some(left.min(right))
}

/// Degree of del Pezzo fibres in a link between two fibrations, if such
/// links occur at this genus.
fn dp_pencil_degree(genus: i64) -> Option<i64> {
    match genus {
        3 => Some(4),
        g if g <= 8 && g != 6 => Some(g + 1),
        _ => None,
    }
}

pub fn render(genus: i64, links: &[NumericalLink]) -> String {
    let mut s = String::new();
    let a = 2 * genus - 2;
    let _ = writeln!(s, "genus {genus}: Y of degree {a} in P^{}, Picard rank 1", genus + 1);
    let _ = writeln!(s, "a non-factorial Y satisfies one of:");
    let _ = writeln!(s, "  factorial: Y is factorial");
    if genus == 3 || genus <= 8 {
        let _ = writeln!(s, "  plane: Y contains a plane");
    } else {
        let _ = writeln!(s, "  plane: does not occur (genus > 8)");
    }
    match dp_pencil_degree(genus) {
        Some(d) => {
            let _ = writeln!(
                s,
                "  del Pezzo pencil: Y is the midpoint of a link between two del Pezzo fibrations of degree {d}"
            );
        }
        None => {
            let _ = writeln!(s, "  del Pezzo pencil: does not occur");
        }
    }
    let cbs: BTreeSet<i64> =
        links.iter().filter(|l| l.right.ctype == ContractionType::CB).filter_map(|l| l.right.aux).collect();
    let cb_list: Vec<String> = cbs.iter().map(|d| d.to_string()).collect();
    let _ = writeln!(
        s,
        "  conic bundle: a small factorialisation is a conic bundle over P2, F0 or F2 (discriminant degrees seen: {})",
        if cb_list.is_empty() { "none".to_string() } else { cb_list.join(", ") }
    );
    let _ = writeln!(s, "  scroll: Y contains a rational scroll E -> C with (p_a C, deg C) among:");
    let mut scrolls: Vec<(i64, i64, &str, i64, i64)> = Vec::new();
    for link in links.iter().filter(|l| l.left.ctype == ContractionType::E1) {
        let (Some(c), Some(f)) = (link.left.centre, link.left.target.family()) else { continue };
        let entry = (-f.a_cubed, f.fano_index, f.display_name(), c.pa, c.deg_h);
        if !scrolls.contains(&entry) {
            scrolls.push(entry);
        }
    }
    scrolls.sort();
    for (_, _, name, pa, deg) in &scrolls {
        let _ = writeln!(s, "    {name:<10} ({pa},{deg})");
    }
    if let Some(max) = links.iter().filter_map(generator_degree).max() {
        let _ = writeln!(s, "max generator degree: {max}");
    }
    s
}
