// SPDX-License-Identifier: Apache-2.0

//! Rationality verdicts and realizability markers.
//!
//! The rules only look at endpoint families and at the fibre invariants of a
//! right-hand Mori fibre space. Anything else comes from per-link overrides
//! in the fact base.

use crate::catalog::lookup_by_name;
use crate::contractions::{ContractionSpec, ContractionType};
use crate::enumerator::NumericalLink;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

const DEFAULT_FACTS: &str = include_str!("../data/facts/default.toml");

/// Entry of the R column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Plus,
    Question,
    Blank,
}

impl Verdict {
    pub fn symbol(self) -> &'static str {
        match self {
            Verdict::Plus => "+",
            Verdict::Question => "?",
            Verdict::Blank => "",
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Plus => "plus",
            Verdict::Question => "question",
            Verdict::Blank => "blank",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Marker {
    #[default]
    None,
    /// Known to be realized by an actual link.
    Bullet,
    /// Not geometrically realizable.
    Cross,
}

impl Marker {
    pub fn symbol(self) -> &'static str {
        match self {
            Marker::None => "",
            Marker::Bullet => "•",
            Marker::Cross => "×",
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Marker::None => "none",
            Marker::Bullet => "bullet",
            Marker::Cross => "cross",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl fmt::Display for Marker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Annotation {
    pub verdict: Verdict,
    pub marker: Marker,
    /// Which rules or overrides fired, in order.
    pub reasons: Vec<String>,
}

impl Annotation {
    pub fn excluded(&self) -> bool {
        self.marker == Marker::Cross
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Override {
    #[serde(default)]
    pub verdict: Option<Verdict>,
    #[serde(default)]
    pub marker: Option<Marker>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactBase {
    /// Family name -> provenance note.
    pub rational_families: BTreeMap<String, String>,
    pub nonrational_families: BTreeMap<String, String>,
    pub cb_rational_max_delta: i64,
    pub cb_nonrational_min_delta: i64,
    pub dp_rational_min_degree: i64,
    #[serde(default)]
    pub dp4_euler_characteristic: BTreeMap<String, i64>,
    #[serde(default)]
    pub overrides: BTreeMap<String, Override>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactError {
    #[error("fact base does not parse: {0}")]
    Parse(String),
    #[error("unknown family name `{0}`")]
    UnknownFamily(String),
    #[error("family `{0}` is listed as both rational and nonrational")]
    Contradiction(String),
    #[error("conic bundle thresholds overlap: rational max {max} must be below nonrational min {min}")]
    Thresholds { max: i64, min: i64 },
}

impl FactBase {
    pub fn from_toml(text: &str) -> Result<Self, FactError> {
        let facts: FactBase = toml::from_str(text).map_err(|e| FactError::Parse(e.to_string()))?;
        facts.validate()?;
        Ok(facts)
    }

    pub fn validate(&self) -> Result<(), FactError> {
        if self.cb_rational_max_delta >= self.cb_nonrational_min_delta {
            return Err(FactError::Thresholds { max: self.cb_rational_max_delta, min: self.cb_nonrational_min_delta });
        }
        for name in self.rational_families.keys().chain(self.nonrational_families.keys()) {
            if lookup_by_name(name).is_none() {
                return Err(FactError::UnknownFamily(name.clone()));
            }
        }
        if let Some(name) = self.rational_families.keys().find(|n| self.nonrational_families.contains_key(*n)) {
            return Err(FactError::Contradiction(name.clone()));
        }
        Ok(())
    }

    fn is_rational(&self, spec: &ContractionSpec) -> bool {
        spec.target.family().is_some_and(|f| self.rational_families.keys().any(|n| f.answers_to(n)))
    }

    /// Same configuration with every override dropped.
    pub fn without_overrides(&self) -> Self {
        Self { overrides: BTreeMap::new(), ..self.clone() }
    }
}

/// The fact base compiled into the crate.
pub fn default_fact_base() -> FactBase {
    FactBase::from_toml(DEFAULT_FACTS).expect("embedded fact base is valid")
}

/// Verdict and marker for a link identified by `key` with sides `left`
/// and `right`. Overrides keyed by `key` win over the rules.
pub fn annotate_sides(key: &str, left: &ContractionSpec, right: &ContractionSpec, facts: &FactBase) -> Annotation {
    let mut reasons = Vec::new();
    let mut verdict = Verdict::Question;
    let mut marker = Marker::None;

    for (side, spec) in [("left", left), ("right", right)] {
        if facts.is_rational(spec) {
            reasons.push(format!("{side} endpoint {} is rational", spec.target));
            verdict = Verdict::Plus;
        }
    }
    match (right.ctype, right.aux) {
        (ContractionType::DP, Some(k)) if k >= facts.dp_rational_min_degree => {
            reasons.push(format!("del Pezzo fibration of degree {k} >= {}", facts.dp_rational_min_degree));
            verdict = Verdict::Plus;
        }
        (ContractionType::DP, Some(4)) => {
            if let Some(chi) = facts.dp4_euler_characteristic.get(key) {
                if [-8, -4, 0].contains(chi) {
                    reasons.push(format!("degree 4 del Pezzo fibration with Euler characteristic {chi}"));
                    verdict = Verdict::Plus;
                }
            }
        }
        (ContractionType::CB, Some(delta)) => {
            if delta <= facts.cb_rational_max_delta {
                reasons
                    .push(format!("conic bundle with discriminant degree {delta} <= {}", facts.cb_rational_max_delta));
                verdict = Verdict::Plus;
            } else if delta >= facts.cb_nonrational_min_delta && facts.is_rational(left) {
                reasons.push(format!(
                    "conic bundle with discriminant degree {delta} >= {} over a rational left endpoint",
                    facts.cb_nonrational_min_delta
                ));
                marker = Marker::Cross;
            }
        }
        _ => {}
    }
    if let Some(o) = facts.overrides.get(key) {
        if let Some(v) = o.verdict {
            verdict = v;
        }
        if let Some(m) = o.marker {
            marker = m;
        }
        reasons.push(format!("override: {}", o.note));
    }
    Annotation { verdict, marker, reasons }
}

pub fn annotate(link: &NumericalLink, facts: &FactBase) -> NumericalLink {
    let annotation = annotate_sides(&link.key(), &link.left, &link.right, facts);
    NumericalLink { annotation: Some(annotation), ..link.clone() }
}

pub fn annotate_all(links: &[NumericalLink], facts: &FactBase) -> Vec<NumericalLink> {
    links.iter().map(|l| annotate(l, facts)).collect()
}
