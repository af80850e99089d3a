// SPDX-License-Identifier: Apache-2.0

//! The 17 deformation families of terminal Gorenstein Fano 3-folds with
//! Picard rank 1, used as endpoints of links.
//!
//! Entries are ordered by Fano index, then by anticanonical degree. Index 1
//! families are named `X_{2g-2}`; the genus 4 and 5 families also carry their
//! complete-intersection names `X_{2,3}` and `X_{2,2,2}`, which is how the
//! published tables refer to them.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FanoFamily {
    pub fano_index: i64,
    /// Cube of the ample generator `H`, with `-K = fano_index * H`.
    pub h_cubed: i64,
    /// Anticanonical degree `(-K)^3`.
    pub a_cubed: i64,
    /// Defined for index 1 only, where `a_cubed = 2g - 2`.
    pub genus: Option<i64>,
    pub canonical_name: &'static str,
    pub aliases: &'static [&'static str],
}

impl FanoFamily {
    /// Name used in table output: the complete-intersection alias when there
    /// is one, the canonical name otherwise.
    pub fn display_name(&self) -> &'static str {
        self.aliases.first().copied().unwrap_or(self.canonical_name)
    }

    pub fn answers_to(&self, name: &str) -> bool {
        self.canonical_name == name || self.aliases.contains(&name)
    }
}

const fn index_one(genus: i64, name: &'static str, aliases: &'static [&'static str]) -> FanoFamily {
    FanoFamily {
        fano_index: 1,
        h_cubed: 2 * genus - 2,
        a_cubed: 2 * genus - 2,
        genus: Some(genus),
        canonical_name: name,
        aliases,
    }
}

const fn index_two(d: i64, name: &'static str) -> FanoFamily {
    FanoFamily { fano_index: 2, h_cubed: d, a_cubed: 8 * d, genus: None, canonical_name: name, aliases: &[] }
}

static FAMILIES: [FanoFamily; 17] = [
    index_one(2, "X_2", &[]),
    index_one(3, "X_4", &[]),
    index_one(4, "X_6", &["X_{2,3}"]),
    index_one(5, "X_8", &["X_{2,2,2}"]),
    index_one(6, "X_10", &[]),
    index_one(7, "X_12", &[]),
    index_one(8, "X_14", &[]),
    index_one(9, "X_16", &[]),
    index_one(10, "X_18", &[]),
    index_one(12, "X_22", &[]),
    index_two(1, "V_1"),
    index_two(2, "V_2"),
    index_two(3, "V_3"),
    index_two(4, "V_4"),
    index_two(5, "V_5"),
    FanoFamily { fano_index: 3, h_cubed: 2, a_cubed: 54, genus: None, canonical_name: "Q", aliases: &[] },
    FanoFamily { fano_index: 4, h_cubed: 1, a_cubed: 64, genus: None, canonical_name: "P3", aliases: &[] },
];

pub fn all_families() -> &'static [FanoFamily] {
    &FAMILIES
}

pub fn lookup_by_degree(a_cubed: i64) -> Vec<&'static FanoFamily> {
    FAMILIES.iter().filter(|f| f.a_cubed == a_cubed).collect()
}

pub fn lookup_by_index_and_degree(fano_index: i64, a_cubed: i64) -> Option<&'static FanoFamily> {
    FAMILIES.iter().find(|f| f.fano_index == fano_index && f.a_cubed == a_cubed)
}

/// Resolve a canonical name or alias.
pub fn lookup_by_name(name: &str) -> Option<&'static FanoFamily> {
    FAMILIES.iter().find(|f| f.answers_to(name))
}
