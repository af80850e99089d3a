// SPDX-License-Identifier: Apache-2.0

//! The 2-ray game for one midpoint genus: every left contraction onto a
//! catalog family, crossed with every right-hand completion.

use crate::annotator::Annotation;
use crate::catalog::all_families;
use crate::contractions::{
    enumerate_left_centres, left_quadruple, BoundsMode, ContractionError, ContractionSpec, ContractionType, Target,
};
use crate::lattice::{flop, triple_product, DivisorClass, IntersectionQuadruple, LatticeError};
use crate::solver::{solve_right, verify_link, BoundaryHit, DerivedNumbers};
use serde::Serialize;
use std::cmp::Reverse;
use std::collections::HashSet;
use std::fmt;
use thiserror::Error;

pub const MIN_GENUS: i64 = 3;
pub const MAX_GENUS: i64 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("midpoint genus {0} is outside {MIN_GENUS}..={MAX_GENUS}")]
    GenusOutOfRange(i64),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Contraction(#[from] ContractionError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NumericalLink {
    pub midpoint_genus: i64,
    pub left: ContractionSpec,
    pub right: ContractionSpec,
    pub e: i64,
    /// `x*A - y*E~` for the right-hand exceptional divisor or fibration class.
    pub coordinates: DivisorClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derived: Option<DerivedNumbers>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annotation: Option<Annotation>,
}

impl NumericalLink {
    pub fn midpoint_a(&self) -> i64 {
        2 * self.midpoint_genus - 2
    }

    /// Stable textual identity, e.g. `g=3 | E1 X_22 (0,8) | E1 X_22 (0,8) | e=268`.
    pub fn key(&self) -> String {
        link_key(self.midpoint_genus, &self.left, &self.right, self.e)
    }

    /// `E1-CB`, `E3-E1` and so on, in the short style of the published tables.
    pub fn type_pair(&self) -> String {
        let short = |spec: &ContractionSpec| match spec.ctype {
            ContractionType::E3E4 => "E3",
            other => other.as_str(),
        };
        format!("{}-{}", short(&self.left), short(&self.right))
    }
}

pub fn link_key(genus: i64, left: &ContractionSpec, right: &ContractionSpec, e: i64) -> String {
    format!("g={genus} | {left} | {right} | e={e}")
}

fn centre_key(spec: &ContractionSpec) -> (i64, i64, i64) {
    match (spec.centre, spec.aux) {
        (Some(c), _) => (c.pa, c.deg_h, 0),
        (None, Some(aux)) => (-1, -1, aux),
        (None, None) => (-1, -1, -1),
    }
}

type OrderKey = (
    Reverse<i64>,
    i64,
    ContractionType,
    (i64, i64, i64),
    ContractionType,
    (u8, i64, i64),
    (i64, i64, i64),
    i64,
    DivisorClass,
);

/// Canonical ordering: left target degree descending, then left centre,
/// right kind, right target, with the remaining fields breaking ties.
pub fn canonical_key(link: &NumericalLink) -> OrderKey {
    let left = link.left.target.family();
    (
        Reverse(left.map_or(0, |f| f.a_cubed)),
        left.map_or(0, |f| f.fano_index),
        link.left.ctype,
        centre_key(&link.left),
        link.right.ctype,
        link.right.target.sort_key(),
        centre_key(&link.right),
        link.e,
        link.coordinates,
    )
}

/// Every left-hand contraction whose blow-up has midpoint genus `genus`.
pub fn left_specs(genus: i64, mode: BoundsMode) -> Result<Vec<ContractionSpec>, EnumerateError> {
    check_genus(genus)?;
    let a = 2 * genus - 2;
    let mut specs = Vec::new();
    for family in all_families() {
        for centre in enumerate_left_centres(a, family, mode) {
            specs.push(ContractionSpec::curve(family, centre)?);
        }
        if family.a_cubed == a + 8 {
            specs.push(ContractionSpec::point(ContractionType::E2, family)?);
        }
        if family.a_cubed == a + 2 {
            specs.push(ContractionSpec::point(ContractionType::E3E4, family)?);
        }
    }
    specs.retain(|s| left_quadruple(s).is_ok());
    Ok(specs)
}

fn check_genus(genus: i64) -> Result<(), EnumerateError> {
    if (MIN_GENUS..=MAX_GENUS).contains(&genus) {
        Ok(())
    } else {
        Err(EnumerateError::GenusOutOfRange(genus))
    }
}

/// Links plus the del Pezzo candidates cut off by the fibre degree cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub genus: i64,
    pub links: Vec<NumericalLink>,
    pub boundary_hits: Vec<BoundaryHit>,
}

fn links_for(genus: i64, left: &ContractionSpec) -> Result<(Vec<NumericalLink>, Vec<BoundaryHit>), EnumerateError> {
    let q = left_quadruple(left)?;
    let report = solve_right(&q)?;
    let links = report
        .solutions
        .into_iter()
        .map(|s| NumericalLink {
            midpoint_genus: genus,
            left: *left,
            right: s.spec,
            e: s.e,
            coordinates: s.class,
            derived: s.derived,
            annotation: None,
        })
        .collect();
    Ok((links, report.boundary_hits))
}

type Part = (Vec<NumericalLink>, Vec<BoundaryHit>);

/// Full enumeration on `jobs` worker threads. Output does not depend on
/// `jobs`.
pub fn enumerate(genus: i64, mode: BoundsMode, jobs: usize) -> Result<Enumeration, EnumerateError> {
    let specs = left_specs(genus, mode)?;
    let jobs = jobs.clamp(1, specs.len().max(1));
    let chunk = specs.len().div_ceil(jobs).max(1);
    let parts: Vec<Result<Part, EnumerateError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = specs
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    let mut links = Vec::new();
                    let mut hits = Vec::new();
                    for spec in part {
                        let (l, h) = links_for(genus, spec)?;
                        links.extend(l);
                        hits.extend(h);
                    }
                    Ok((links, hits))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("enumeration worker panicked")).collect()
    });
    let mut links = Vec::new();
    let mut boundary_hits = Vec::new();
    for part in parts {
        let (l, h) = part?;
        links.extend(l);
        boundary_hits.extend(h);
    }
    links.sort_by_cached_key(canonical_key);
    boundary_hits.sort_by_key(|h| (h.quadruple, h.class, h.e));
    boundary_hits.dedup();
    Ok(Enumeration { genus, links, boundary_hits })
}

pub fn enumerate_links(genus: i64, mode: BoundsMode) -> Result<Vec<NumericalLink>, EnumerateError> {
    Ok(enumerate(genus, mode, 1)?.links)
}

/// A link whose mirror image is missing from the list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MirrorViolation {
    pub link: String,
    pub expected_mirror: String,
}

fn mirror_eligible(link: &NumericalLink) -> bool {
    let index_one = |t: &Target| t.family().is_some_and(|f| f.fano_index == 1);
    link.right.ctype.is_divisorial()
        && link.coordinates.y == 1
        && index_one(&link.right.target)
        && index_one(&link.left.target)
}

fn mirror_identity(link: &NumericalLink) -> (i64, ContractionSpec, ContractionSpec, i64) {
    (link.midpoint_genus, link.right, link.left, link.e)
}

/// Links between index-1 families through a `y = 1` class whose reverse
/// (sides swapped, same `e`) is not present.
pub fn mirror_check(links: &[NumericalLink]) -> Vec<MirrorViolation> {
    let present: HashSet<_> = links.iter().map(|l| (l.midpoint_genus, l.left, l.right, l.e)).collect();
    links
        .iter()
        .filter(|l| mirror_eligible(l))
        .filter(|l| !present.contains(&mirror_identity(l)))
        .map(|l| MirrorViolation { link: l.key(), expected_mirror: link_key(l.midpoint_genus, &l.right, &l.left, l.e) })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub label: String,
    pub lhs: i64,
    pub rhs: i64,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Every intersection number behind one link.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Explanation {
    pub key: String,
    pub left_quadruple: IntersectionQuadruple,
    pub flopped_quadruple: IntersectionQuadruple,
    pub class_symbol: &'static str,
    pub class: DivisorClass,
    pub identities: Vec<IdentityCheck>,
    /// `(p_a, deg)` of the right-hand centre curve, for E1.
    pub right_centre: Option<(i64, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExplainError {
    #[error("left side: {0}")]
    Left(#[from] ContractionError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("identity {label} = {rhs} fails (left side evaluates to {lhs})")]
    IdentityFailed { label: String, lhs: i64, rhs: i64 },
    #[error("link fails the expanded polynomial check")]
    Unverified,
}

/// Evaluate the defining identities of `link` on the flopped quadruple.
pub fn explain_link(link: &NumericalLink) -> Result<Explanation, ExplainError> {
    let q = left_quadruple(&link.left)?;
    let flopped = flop(&q, link.e)?;
    let a = DivisorClass::A;
    let e_tilde = DivisorClass::E;
    let d = link.coordinates;
    let t = |x, y, z| triple_product(&flopped, x, y, z);
    let check = |label: &str, lhs: i64, rhs: i64| IdentityCheck { label: label.to_string(), lhs, rhs };

    let target_degree = link.right.target.family().map_or(0, |f| f.a_cubed);
    let mut right_centre = None;
    let (class_symbol, identities) = match link.right.ctype {
        ContractionType::E1 => {
            let c = link.right.centre.ok_or(ExplainError::Unverified)?;
            right_centre = Some((c.pa, c.deg_h));
            let image = a.checked_add(d)?;
            (
                "D",
                vec![
                    check("(A+D)²D", t(image, image, d)?, 0),
                    check("(A+D)³", t(image, image, image)?, target_degree),
                    check("(A+D)²A", t(image, image, a)?, target_degree),
                    check("(A+D)DA", t(image, d, a)?, d.y * c.deg_h),
                    check("AD²", t(a, d, d)?, 2 * c.pa - 2),
                ],
            )
        }
        ContractionType::E2 => {
            let image = a.checked_add(d.checked_scale(2)?)?;
            (
                "D",
                vec![
                    check("(A+2D)³", t(image, image, image)?, target_degree),
                    check("(A+2D)²D", t(image, image, d)?, 0),
                    check("(A+2D)DA", t(image, d, a)?, 0),
                    check("AD²", t(a, d, d)?, -2),
                    check("D³", t(d, d, d)?, 1),
                ],
            )
        }
        ContractionType::E3E4 => {
            let image = a.checked_add(d)?;
            (
                "D",
                vec![
                    check("(A+D)³", t(image, image, image)?, target_degree),
                    check("(A+D)²D", t(image, image, d)?, 0),
                    check("(A+D)DA", t(image, d, a)?, 0),
                    check("AD²", t(a, d, d)?, -2),
                    check("D³", t(d, d, d)?, 2),
                ],
            )
        }
        ContractionType::CB => {
            let delta = link.right.aux.ok_or(ExplainError::Unverified)?;
            (
                "L",
                vec![check("L³", t(d, d, d)?, 0), check("L²A", t(d, d, a)?, 2), check("LA²", t(d, a, a)?, 12 - delta)],
            )
        }
        ContractionType::DP => {
            let k = link.right.aux.ok_or(ExplainError::Unverified)?;
            ("L", vec![check("L²A", t(d, d, a)?, 0), check("L²Ẽ", t(d, d, e_tilde)?, 0), check("LA²", t(d, a, a)?, k)])
        }
    };
    if let Some(bad) = identities.iter().find(|c| !c.holds()) {
        return Err(ExplainError::IdentityFailed { label: bad.label.clone(), lhs: bad.lhs, rhs: bad.rhs });
    }
    if !verify_link(link) {
        return Err(ExplainError::Unverified);
    }
    Ok(Explanation {
        key: link.key(),
        left_quadruple: q,
        flopped_quadruple: flopped,
        class_symbol,
        class: d,
        identities,
        right_centre,
    })
}

impl fmt::Display for Explanation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "link      {}", self.key)?;
        writeln!(f, "left      (A³, A²E, AE², E³) = {}", self.left_quadruple)?;
        writeln!(f, "flopped   (A³, A²Ẽ, AẼ², Ẽ³) = {}", self.flopped_quadruple)?;
        writeln!(f, "class     {} = {}", self.class_symbol, self.class)?;
        for c in &self.identities {
            writeln!(f, "identity  {} = {}    [evaluated: {}]", c.label, c.rhs, c.lhs)?;
        }
        if let Some((pa, deg)) = self.right_centre {
            writeln!(f, "centre    p_a C = {pa}, deg C = {deg}")?;
        }
        Ok(())
    }
}
