// SPDX-License-Identifier: Apache-2.0

//! Contraction types on either side of a link, and the left-hand quadruple
//! produced by blowing up a curve or a point on a rank-1 Fano 3-fold.
//!
//! E3 and E4 contractions are numerically identical and share one tag.
//! E5 (a point of Gorenstein index 2) has no representation at all.

use crate::catalog::FanoFamily;
use crate::lattice::IntersectionQuadruple;
use serde::{Serialize, Serializer};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ContractionType {
    E1,
    E2,
    E3E4,
    CB,
    #[serde(rename = "dP")]
    DP,
}

impl ContractionType {
    pub fn is_divisorial(self) -> bool {
        matches!(self, Self::E1 | Self::E2 | Self::E3E4)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::E1 => "E1",
            Self::E2 => "E2",
            Self::E3E4 => "E3E4",
            Self::CB => "CB",
            Self::DP => "dP",
        }
    }
}

impl fmt::Display for ContractionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Base of a strict Mori fibre space on the right of a link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Base {
    P2,
    P1,
}

impl Base {
    pub fn as_str(self) -> &'static str {
        match self {
            Base::P2 => "P2",
            Base::P1 => "P1",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    Family(&'static FanoFamily),
    Base(Base),
}

impl Target {
    pub fn name(&self) -> &'static str {
        match self {
            Target::Family(f) => f.display_name(),
            Target::Base(b) => b.as_str(),
        }
    }

    pub fn family(&self) -> Option<&'static FanoFamily> {
        match self {
            Target::Family(f) => Some(f),
            Target::Base(_) => None,
        }
    }

    /// Families first, by (index, degree); then bases.
    pub fn sort_key(&self) -> (u8, i64, i64) {
        match self {
            Target::Family(f) => (0, f.fano_index, f.a_cubed),
            Target::Base(Base::P2) => (1, 0, 2),
            Target::Base(Base::P1) => (1, 0, 1),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Target {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Centre curve of an E1 contraction: arithmetic genus and degree against
/// the ample generator of the target. `(0, 0)` is the formal centre of an
/// E3/E4 contraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CurveCentre {
    pub pa: i64,
    pub deg_h: i64,
}

impl CurveCentre {
    pub fn new(pa: i64, deg_h: i64) -> Result<Self, ContractionError> {
        if pa < 0 || deg_h < 0 || (deg_h == 0 && pa != 0) {
            return Err(ContractionError::InvalidCentre { pa, deg_h });
        }
        Ok(Self { pa, deg_h })
    }

    pub fn is_degenerate(&self) -> bool {
        self.deg_h == 0
    }
}

impl fmt::Display for CurveCentre {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.pa, self.deg_h)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ContractionError {
    #[error("invalid centre (pa, deg) = ({pa}, {deg_h})")]
    InvalidCentre { pa: i64, deg_h: i64 },
    #[error("{ctype} contraction cannot have target {target}")]
    TargetMismatch { ctype: ContractionType, target: &'static str },
    #[error("E1 contraction needs a centre curve of positive degree")]
    MissingCentre,
    #[error("auxiliary value {aux} out of range for {ctype}")]
    AuxOutOfRange { ctype: ContractionType, aux: i64 },
    #[error("{0} is not a left-side contraction type")]
    NotLeftSide(ContractionType),
    #[error("A^3 = {0} is not a valid index-1 midpoint")]
    InvalidMidpoint(i64),
    #[error("A^2.E = {0} violates A^2.S > 1")]
    WeakStar(i64),
    #[error("integer overflow")]
    Overflow,
}

/// One side of a link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ContractionSpec {
    pub ctype: ContractionType,
    pub target: Target,
    pub centre: Option<CurveCentre>,
    /// Discriminant degree for CB, generic fibre degree for dP.
    pub aux: Option<i64>,
}

impl ContractionSpec {
    pub fn curve(target: &'static FanoFamily, centre: CurveCentre) -> Result<Self, ContractionError> {
        if centre.is_degenerate() {
            return Err(ContractionError::MissingCentre);
        }
        Ok(Self { ctype: ContractionType::E1, target: Target::Family(target), centre: Some(centre), aux: None })
    }

    pub fn point(ctype: ContractionType, target: &'static FanoFamily) -> Result<Self, ContractionError> {
        if !matches!(ctype, ContractionType::E2 | ContractionType::E3E4) {
            return Err(ContractionError::TargetMismatch { ctype, target: target.display_name() });
        }
        Ok(Self { ctype, target: Target::Family(target), centre: None, aux: None })
    }

    pub fn conic_bundle(delta_degree: i64) -> Result<Self, ContractionError> {
        if !(0..=12).contains(&delta_degree) {
            return Err(ContractionError::AuxOutOfRange { ctype: ContractionType::CB, aux: delta_degree });
        }
        Ok(Self { ctype: ContractionType::CB, target: Target::Base(Base::P2), centre: None, aux: Some(delta_degree) })
    }

    pub fn del_pezzo(fibre_degree: i64) -> Result<Self, ContractionError> {
        if !(1..=9).contains(&fibre_degree) {
            return Err(ContractionError::AuxOutOfRange { ctype: ContractionType::DP, aux: fibre_degree });
        }
        Ok(Self { ctype: ContractionType::DP, target: Target::Base(Base::P1), centre: None, aux: Some(fibre_degree) })
    }

    /// Text for the centre/aux column, e.g. `(1,9)`, `delta=4`, `k=6` or `-`.
    pub fn detail(&self) -> String {
        match (self.ctype, self.centre, self.aux) {
            (_, Some(c), _) => c.to_string(),
            (ContractionType::CB, _, Some(d)) => format!("delta={d}"),
            (ContractionType::DP, _, Some(k)) => format!("k={k}"),
            _ => "-".to_string(),
        }
    }
}

impl fmt::Display for ContractionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.ctype, self.target, self.detail())
    }
}

/// Quadruple `(A^3, A^2.E, A.E^2, E^3)` on the small modification `Z` for a
/// left-side contraction `Z -> Z_1` onto `spec.target`.
pub fn left_quadruple(spec: &ContractionSpec) -> Result<IntersectionQuadruple, ContractionError> {
    let target = match spec.target {
        Target::Family(f) => f,
        Target::Base(_) => return Err(ContractionError::NotLeftSide(spec.ctype)),
    };
    let q = match spec.ctype {
        ContractionType::E1 => {
            let centre = spec.centre.filter(|c| c.deg_h >= 1).ok_or(ContractionError::MissingCentre)?;
            blow_up_curve(target, centre)?
        }
        ContractionType::E3E4 => blow_up_curve(target, CurveCentre { pa: 0, deg_h: 0 })?,
        ContractionType::E2 => IntersectionQuadruple::new(target.a_cubed - 8, 4, -2, 1),
        other => return Err(ContractionError::NotLeftSide(other)),
    };
    if q.a < 4 || q.a % 2 != 0 {
        return Err(ContractionError::InvalidMidpoint(q.a));
    }
    if q.b <= 1 {
        return Err(ContractionError::WeakStar(q.b));
    }
    Ok(q)
}

fn blow_up_curve(target: &FanoFamily, centre: CurveCentre) -> Result<IntersectionQuadruple, ContractionError> {
    // A_1 . Gamma = index * deg_H(Gamma)
    let a_gamma = target.fano_index.checked_mul(centre.deg_h).ok_or(ContractionError::Overflow)?;
    let genus_term = 2 - 2 * centre.pa;
    Ok(IntersectionQuadruple {
        a: target.a_cubed - 2 * a_gamma - genus_term,
        b: a_gamma + genus_term,
        c: -genus_term,
        d: -a_gamma + genus_term,
    })
}

/// Which centre-curve bounds apply when enumerating left-side E1 centres.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundsMode {
    /// Add the sharper per-target genus bounds known for quartic midpoints.
    #[default]
    Paper,
    /// Only the degree cap `A_1 . Gamma <= A_1^3` and `A^2.E >= 2`.
    Relaxed,
}

impl std::str::FromStr for BoundsMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper" => Ok(Self::Paper),
            "relaxed" => Ok(Self::Relaxed),
            other => Err(format!("unknown bounds mode `{other}` (expected paper or relaxed)")),
        }
    }
}

/// All E1 centres on `target` whose blow-up has anticanonical degree
/// `midpoint_a`.
pub fn enumerate_left_centres(midpoint_a: i64, target: &FanoFamily, mode: BoundsMode) -> Vec<CurveCentre> {
    let i1 = target.fano_index;
    let mut out = Vec::new();
    for deg_h in 1..=target.a_cubed / i1 {
        // 2 * i1 * deg = A_1^3 - a - 2 + 2 pa
        let twice_pa = 2 * i1 * deg_h - (target.a_cubed - midpoint_a - 2);
        if twice_pa < 0 || twice_pa % 2 != 0 {
            continue;
        }
        let pa = twice_pa / 2;
        if i1 * deg_h + 2 - 2 * pa < 2 {
            continue;
        }
        if mode == BoundsMode::Paper && midpoint_a == 4 && !quartic_genus_bound(target, pa) {
            continue;
        }
        out.push(CurveCentre { pa, deg_h });
    }
    out
}

/// Genus restrictions for centres of E1 contractions from a quartic midpoint.
fn quartic_genus_bound(target: &FanoFamily, pa: i64) -> bool {
    match target.fano_index {
        1 => pa < target.genus.unwrap_or(0),
        2 => pa % 2 == 1 && (pa - 1) / 2 < 2 * target.h_cubed,
        3 => pa % 3 == 0 && pa / 3 <= 9,
        4 => (pa + 1) % 4 == 0 && (pa + 1) / 4 <= 7,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{all_families, lookup_by_name};

    fn fam(name: &str) -> &'static FanoFamily {
        lookup_by_name(name).unwrap()
    }

    fn centres(v: &[(i64, i64)]) -> Vec<CurveCentre> {
        v.iter().map(|&(pa, deg_h)| CurveCentre { pa, deg_h }).collect()
    }

    #[test]
    fn curve_blow_up_quadruple() {
        let spec = ContractionSpec::curve(fam("X_22"), CurveCentre::new(1, 9).unwrap()).unwrap();
        assert_eq!(left_quadruple(&spec), Ok(IntersectionQuadruple::new(4, 9, 0, -9)));
        let spec = ContractionSpec::curve(fam("V_3"), CurveCentre::new(3, 6).unwrap()).unwrap();
        assert_eq!(left_quadruple(&spec), Ok(IntersectionQuadruple::new(4, 8, 4, -16)));
    }

    #[test]
    fn point_blow_up_quadruples() {
        let e3 = ContractionSpec::point(ContractionType::E3E4, fam("X_{2,3}")).unwrap();
        assert_eq!(left_quadruple(&e3), Ok(IntersectionQuadruple::new(4, 2, -2, 2)));
        let e2 = ContractionSpec::point(ContractionType::E2, fam("X_12")).unwrap();
        assert_eq!(left_quadruple(&e2), Ok(IntersectionQuadruple::new(4, 4, -2, 1)));
    }

    #[test]
    fn invalid_midpoints_rejected() {
        // X_4 blown up at a node: A^3 = 2
        let e3 = ContractionSpec::point(ContractionType::E3E4, fam("X_4")).unwrap();
        assert_eq!(left_quadruple(&e3), Err(ContractionError::InvalidMidpoint(2)));
        // V_2, centre (0, 3): a = 16 - 12 - 2 = 2
        let spec = ContractionSpec::curve(fam("V_2"), CurveCentre::new(0, 3).unwrap()).unwrap();
        assert_eq!(left_quadruple(&spec), Err(ContractionError::InvalidMidpoint(2)));
        // b = 3*8 + 2 - 2*27
        let spec = ContractionSpec::curve(fam("Q"), CurveCentre::new(27, 8).unwrap()).unwrap();
        assert_eq!(left_quadruple(&spec), Err(ContractionError::WeakStar(-28)));
        let spec = ContractionSpec::curve(fam("X_22"), CurveCentre::new(5, 8).unwrap()).unwrap();
        assert_eq!(left_quadruple(&spec), Err(ContractionError::WeakStar(0)));
    }

    #[test]
    fn bad_specs_rejected() {
        assert!(CurveCentre::new(1, 0).is_err());
        assert!(CurveCentre::new(-1, 3).is_err());
        assert!(ContractionSpec::curve(fam("X_22"), CurveCentre::new(0, 0).unwrap()).is_err());
        assert!(ContractionSpec::conic_bundle(13).is_err());
        assert!(ContractionSpec::del_pezzo(0).is_err());
        assert!(ContractionSpec::del_pezzo(10).is_err());
        assert!(ContractionSpec::point(ContractionType::E1, fam("X_22")).is_err());
        let cb = ContractionSpec::conic_bundle(4).unwrap();
        assert_eq!(left_quadruple(&cb), Err(ContractionError::NotLeftSide(ContractionType::CB)));
    }

    #[test]
    fn quartic_centres_on_p3() {
        let got = enumerate_left_centres(4, fam("P3"), BoundsMode::Paper);
        assert_eq!(got, centres(&[(3, 8), (7, 9), (11, 10), (15, 11), (19, 12), (23, 13), (27, 14)]));
    }

    #[test]
    fn quartic_centres_on_quadric() {
        // 3 deg = 24 + pa with pa = 3k. The A^2.E >= 2 requirement stops the
        // family at k = 8: (27, 17) would give A^2.E = -1.
        let got = enumerate_left_centres(4, fam("Q"), BoundsMode::Paper);
        let expected: Vec<_> = (0..=8).map(|k| CurveCentre { pa: 3 * k, deg_h: 8 + k }).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn relaxed_centres_at_higher_genus() {
        let got = enumerate_left_centres(6, fam("X_22"), BoundsMode::Relaxed);
        assert!(got.contains(&CurveCentre { pa: 0, deg_h: 7 }));
        assert_eq!(got, enumerate_left_centres(6, fam("X_22"), BoundsMode::Paper));
    }

    #[test]
    fn enumerated_centres_reproduce_midpoint() {
        for a in (4..=22).step_by(2) {
            for target in all_families() {
                for mode in [BoundsMode::Paper, BoundsMode::Relaxed] {
                    for centre in enumerate_left_centres(a, target, mode) {
                        let spec = ContractionSpec::curve(target, centre).unwrap();
                        let q = left_quadruple(&spec).unwrap();
                        assert_eq!(q.a, a);
                        assert_eq!(q.b + q.d, -2 * q.c);
                        assert!(target.fano_index * centre.deg_h <= target.a_cubed);
                    }
                }
            }
        }
    }

    #[test]
    fn e2_quadruple_is_fixed() {
        for target in all_families() {
            if let Ok(q) = left_quadruple(&ContractionSpec::point(ContractionType::E2, target).unwrap()) {
                assert_eq!((q.b, q.c, q.d), (4, -2, 1));
            }
        }
    }
}
