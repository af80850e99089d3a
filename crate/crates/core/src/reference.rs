// SPDX-License-Identifier: Apache-2.0

//! Published link tables as data, and a structural diff against computed
//! links.
//!
//! Rows are stored exactly as printed. Normalization to comparable link
//! keys happens here: printed `E3` becomes [`ContractionType::E3E4`], an E1
//! centre of `(0,0)` becomes a point contraction, a `P1`/`P2` target fixes
//! the fibration type, and `X/Y` left targets stand for one link per family.
//! A row may carry an erratum that replaces one printed field for matching.

use crate::annotator::{annotate_sides, FactBase, Marker, Verdict};
use crate::catalog::lookup_by_name;
use crate::contractions::{ContractionSpec, ContractionType, CurveCentre};
use crate::enumerator::{link_key, NumericalLink};
use crate::lattice::DivisorClass;
use crate::solver::verify_link;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::path::Path;
use thiserror::Error;

pub const HEADER: &str = "# table\tgenus\trow_id\tleft_type\tleft_target\tleft_centre\tright_type\tright_target\tright_centre_or_aux\te\tmarker\tr_column\tanomaly\terratum";

/// Rows known not to satisfy the transcribed systems: `(table, genus, row)`.
pub const ANOMALIES: [(Table, i64, u32); 5] =
    [(Table::T2, 5, 16), (Table::T2, 6, 13), (Table::T2, 7, 5), (Table::T2, 7, 6), (Table::T2, 8, 6)];

/// Row count of every section, `(table, genus, rows)`.
pub const SECTIONS: [(Table, i64, usize); 8] = [
    (Table::T1, 3, 37),
    (Table::T2, 4, 25),
    (Table::T2, 5, 16),
    (Table::T2, 6, 13),
    (Table::T2, 7, 6),
    (Table::T2, 8, 6),
    (Table::T2, 9, 2),
    (Table::T2, 10, 1),
];

const MANIFEST: &str = include_str!("../data/reference/MANIFEST");
const EMBEDDED: [(&str, &str); 8] = [
    ("table1_g3.tsv", include_str!("../data/reference/table1_g3.tsv")),
    ("table2_g4.tsv", include_str!("../data/reference/table2_g4.tsv")),
    ("table2_g5.tsv", include_str!("../data/reference/table2_g5.tsv")),
    ("table2_g6.tsv", include_str!("../data/reference/table2_g6.tsv")),
    ("table2_g7.tsv", include_str!("../data/reference/table2_g7.tsv")),
    ("table2_g8.tsv", include_str!("../data/reference/table2_g8.tsv")),
    ("table2_g9.tsv", include_str!("../data/reference/table2_g9.tsv")),
    ("table2_g10.tsv", include_str!("../data/reference/table2_g10.tsv")),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Table {
    T1,
    T2,
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Table::T1 => "T1",
            Table::T2 => "T2",
        })
    }
}

impl std::str::FromStr for Table {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "T1" => Ok(Table::T1),
            "T2" => Ok(Table::T2),
            other => Err(format!("unknown table `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ErratumField {
    LeftCentre,
    RightCentreOrAux,
    E,
}

impl ErratumField {
    fn as_str(self) -> &'static str {
        match self {
            ErratumField::LeftCentre => "left_centre",
            ErratumField::RightCentreOrAux => "right_centre_or_aux",
            ErratumField::E => "e",
        }
    }
}

/// Corrected value for one printed field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Erratum {
    pub field: ErratumField,
    pub value: String,
}

impl fmt::Display for Erratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.field.as_str(), self.value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ReferenceRow {
    pub table: Table,
    pub genus: i64,
    pub row_id: u32,
    pub left_type: String,
    pub left_target: String,
    pub left_centre: String,
    pub right_type: String,
    pub right_target: String,
    pub right_centre_or_aux: String,
    pub e: i64,
    pub marker: Marker,
    pub r_column: Verdict,
    pub anomaly: bool,
    pub erratum: Option<Erratum>,
}

impl ReferenceRow {
    /// `T1:37` or `T2 g=5:16`.
    pub fn label(&self) -> String {
        match self.table {
            Table::T1 => format!("T1:{}", self.row_id),
            Table::T2 => format!("T2 g={}:{}", self.genus, self.row_id),
        }
    }

    /// The row with its erratum applied.
    pub fn corrected(&self) -> ReferenceRow {
        let mut row = self.clone();
        if let Some(err) = &self.erratum {
            match err.field {
                ErratumField::LeftCentre => row.left_centre = err.value.clone(),
                ErratumField::RightCentreOrAux => row.right_centre_or_aux = err.value.clone(),
                ErratumField::E => row.e = err.value.parse().unwrap_or(row.e),
            }
        }
        row.erratum = None;
        row
    }

    fn to_tsv(&self) -> String {
        [
            self.table.to_string(),
            self.genus.to_string(),
            self.row_id.to_string(),
            self.left_type.clone(),
            self.left_target.clone(),
            self.left_centre.clone(),
            self.right_type.clone(),
            self.right_target.clone(),
            self.right_centre_or_aux.clone(),
            self.e.to_string(),
            self.marker.as_str().to_string(),
            self.r_column.as_str().to_string(),
            if self.anomaly { "yes" } else { "no" }.to_string(),
            self.erratum.as_ref().map_or_else(|| "-".to_string(), Erratum::to_string),
        ]
        .join("\t")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReferenceError {
    #[error("{file}:{line}: {message}")]
    Parse { file: String, line: usize, message: String },
    #[error("integrity check failed for {file}: {message}")]
    Integrity { file: String, message: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{row}: cannot interpret {field} `{value}`")]
    Normalize { row: String, field: &'static str, value: String },
}

fn parse_err(file: &str, line: usize, message: impl Into<String>) -> ReferenceError {
    ReferenceError::Parse { file: file.to_string(), line, message: message.into() }
}

fn integrity(file: &str, message: impl Into<String>) -> ReferenceError {
    ReferenceError::Integrity { file: file.to_string(), message: message.into() }
}

/// Parse one section file. Comment lines start with `#`.
pub fn parse_rows(file: &str, text: &str) -> Result<Vec<ReferenceRow>, ReferenceError> {
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let n = idx + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 14 {
            return Err(parse_err(file, n, format!("expected 14 tab-separated fields, found {}", f.len())));
        }
        let int = |i: usize, what: &str| -> Result<i64, ReferenceError> {
            f[i].parse().map_err(|_| parse_err(file, n, format!("{what} `{}` is not an integer", f[i])))
        };
        let marker = match f[10] {
            "none" => Marker::None,
            "bullet" => Marker::Bullet,
            "cross" => Marker::Cross,
            other => return Err(parse_err(file, n, format!("unknown marker `{other}`"))),
        };
        let r_column = match f[11] {
            "plus" => Verdict::Plus,
            "question" => Verdict::Question,
            "blank" => Verdict::Blank,
            other => return Err(parse_err(file, n, format!("unknown R value `{other}`"))),
        };
        let anomaly = match f[12] {
            "yes" => true,
            "no" => false,
            other => return Err(parse_err(file, n, format!("anomaly must be yes or no, got `{other}`"))),
        };
        let erratum = match f[13] {
            "-" => None,
            text => {
                let (field, value) =
                    text.split_once('=').ok_or_else(|| parse_err(file, n, format!("malformed erratum `{text}`")))?;
                let field = match field {
                    "left_centre" => ErratumField::LeftCentre,
                    "right_centre_or_aux" => ErratumField::RightCentreOrAux,
                    "e" => ErratumField::E,
                    other => return Err(parse_err(file, n, format!("erratum names unknown field `{other}`"))),
                };
                Some(Erratum { field, value: value.to_string() })
            }
        };
        let row_id = u32::try_from(int(2, "row id")?).map_err(|_| parse_err(file, n, "negative row id"))?;
        rows.push(ReferenceRow {
            table: f[0].parse().map_err(|m: String| parse_err(file, n, m))?,
            genus: int(1, "genus")?,
            row_id,
            left_type: f[3].to_string(),
            left_target: f[4].to_string(),
            left_centre: f[5].to_string(),
            right_type: f[6].to_string(),
            right_target: f[7].to_string(),
            right_centre_or_aux: f[8].to_string(),
            e: int(9, "e")?,
            marker,
            r_column,
            anomaly,
            erratum,
        });
    }
    Ok(rows)
}

/// Canonical text of one section: the header line, then one row per line.
pub fn serialize_rows(rows: &[ReferenceRow]) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_tsv());
        out.push('\n');
    }
    out
}

pub fn sha256_hex(text: &str) -> String {
    format!("{:x}", Sha256::digest(text.as_bytes()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub sha256: String,
    pub rows: usize,
    pub file: String,
}

pub fn parse_manifest(text: &str) -> Result<Vec<ManifestEntry>, ReferenceError> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 3 {
            return Err(parse_err("MANIFEST", idx + 1, "expected sha256, row count and file name"));
        }
        let rows = f[1].parse().map_err(|_| parse_err("MANIFEST", idx + 1, "row count is not an integer"))?;
        out.push(ManifestEntry { sha256: f[0].to_string(), rows, file: f[2].to_string() });
    }
    Ok(out)
}

/// Check every file against the manifest, parse it, and check the section
/// structure and the anomaly list.
pub fn load_sections(manifest: &str, files: &[(String, String)]) -> Result<Vec<ReferenceRow>, ReferenceError> {
    let entries = parse_manifest(manifest)?;
    let by_name: HashMap<&str, &str> = files.iter().map(|(n, t)| (n.as_str(), t.as_str())).collect();
    let mut rows = Vec::new();
    for entry in &entries {
        let text = by_name
            .get(entry.file.as_str())
            .ok_or_else(|| integrity(&entry.file, "listed in MANIFEST but not present"))?;
        let digest = sha256_hex(text);
        if digest != entry.sha256 {
            return Err(integrity(&entry.file, format!("sha256 {digest} does not match manifest {}", entry.sha256)));
        }
        let parsed = parse_rows(&entry.file, text)?;
        if parsed.len() != entry.rows {
            return Err(integrity(&entry.file, format!("{} rows, manifest says {}", parsed.len(), entry.rows)));
        }
        rows.extend(parsed);
    }
    check_structure(&rows)?;
    Ok(rows)
}

fn check_structure(rows: &[ReferenceRow]) -> Result<(), ReferenceError> {
    let mut seen = HashSet::new();
    for row in rows {
        if !seen.insert((row.table, row.genus, row.row_id)) {
            return Err(integrity(&row.label(), "duplicate row"));
        }
        let listed = ANOMALIES.contains(&(row.table, row.genus, row.row_id));
        if listed != row.anomaly {
            return Err(integrity(&row.label(), "anomaly flag disagrees with the fixed anomaly list"));
        }
    }
    for (table, genus, count) in SECTIONS {
        let got = rows.iter().filter(|r| r.table == table && r.genus == genus).count();
        if got != count {
            return Err(integrity(&format!("{table} g={genus}"), format!("{got} rows, expected {count}")));
        }
        let mut ids: Vec<u32> =
            rows.iter().filter(|r| r.table == table && r.genus == genus).map(|r| r.row_id).collect();
        ids.sort_unstable();
        if ids != (1..=count as u32).collect::<Vec<_>>() {
            return Err(integrity(&format!("{table} g={genus}"), "row ids are not 1..n"));
        }
    }
    Ok(())
}

/// The reference data compiled into the crate.
pub fn load_embedded() -> Result<Vec<ReferenceRow>, ReferenceError> {
    let files: Vec<(String, String)> = EMBEDDED.iter().map(|(n, t)| (n.to_string(), t.to_string())).collect();
    load_sections(MANIFEST, &files)
}

/// Embedded section files, `(name, text)`.
pub fn embedded_files() -> &'static [(&'static str, &'static str)] {
    &EMBEDDED
}

/// Load a directory holding a `MANIFEST` and the files it lists.
pub fn load_dir(dir: &Path) -> Result<Vec<ReferenceRow>, ReferenceError> {
    let read = |p: &Path| {
        std::fs::read_to_string(p)
            .map_err(|e| ReferenceError::Io { path: p.display().to_string(), message: e.to_string() })
    };
    let manifest = read(&dir.join("MANIFEST"))?;
    let mut files = Vec::new();
    for entry in parse_manifest(&manifest)? {
        files.push((entry.file.clone(), read(&dir.join(&entry.file))?));
    }
    load_sections(&manifest, &files)
}

fn norm_err(row: &ReferenceRow, field: &'static str, value: &str) -> ReferenceError {
    ReferenceError::Normalize { row: row.label(), field, value: value.to_string() }
}

fn parse_centre(text: &str) -> Option<CurveCentre> {
    let inner = text.strip_prefix('(')?.strip_suffix(')')?;
    let (pa, deg) = inner.split_once(',')?;
    CurveCentre::new(pa.trim().parse().ok()?, deg.trim().parse().ok()?).ok()
}

fn parse_aux(text: &str, prefix: &str) -> Option<Vec<i64>> {
    text.strip_prefix(prefix)?.split(',').map(|v| v.trim().parse().ok()).collect()
}

fn divisorial_side(
    row: &ReferenceRow,
    printed: &str,
    name: &str,
    centre: &str,
) -> Result<ContractionSpec, ReferenceError> {
    let family = lookup_by_name(name).ok_or_else(|| norm_err(row, "target", name))?;
    let bad_type = || norm_err(row, "type", printed);
    let spec = match printed {
        "E2" => ContractionSpec::point(ContractionType::E2, family),
        "E3" | "E4" => ContractionSpec::point(ContractionType::E3E4, family),
        "E1" | "E1/2" => {
            let c = parse_centre(centre).ok_or_else(|| norm_err(row, "centre", centre))?;
            if c.is_degenerate() {
                ContractionSpec::point(ContractionType::E3E4, family)
            } else {
                ContractionSpec::curve(family, c)
            }
        }
        _ => return Err(bad_type()),
    };
    spec.map_err(|_| bad_type())
}

/// Link sides a row stands for, after the erratum and normalization. Rows
/// with an `X/Y` left target or a list of fibre degrees expand into several.
pub fn normalize(row: &ReferenceRow) -> Result<Vec<(ContractionSpec, ContractionSpec)>, ReferenceError> {
    let row = row.corrected();
    let mut lefts = Vec::new();
    for name in row.left_target.split('/') {
        lefts.push(divisorial_side(&row, &row.left_type, name, &row.left_centre)?);
    }
    let aux = &row.right_centre_or_aux;
    let rights = match row.right_target.as_str() {
        "P2" => parse_aux(aux, "delta=")
            .ok_or_else(|| norm_err(&row, "aux", aux))?
            .into_iter()
            .map(|d| ContractionSpec::conic_bundle(d).map_err(|_| norm_err(&row, "aux", aux)))
            .collect::<Result<Vec<_>, _>>()?,
        "P1" => parse_aux(aux, "k=")
            .ok_or_else(|| norm_err(&row, "aux", aux))?
            .into_iter()
            .map(|k| ContractionSpec::del_pezzo(k).map_err(|_| norm_err(&row, "aux", aux)))
            .collect::<Result<Vec<_>, _>>()?,
        name => vec![divisorial_side(&row, &row.right_type, name, aux)?],
    };
    Ok(lefts.iter().flat_map(|l| rights.iter().map(move |r| (*l, *r))).collect())
}

/// Link keys a row must match, in the same format as [`NumericalLink::key`].
pub fn match_keys(row: &ReferenceRow) -> Result<Vec<String>, ReferenceError> {
    let e = row.corrected().e;
    Ok(normalize(row)?.into_iter().map(|(l, r)| link_key(row.genus, &l, &r, e)).collect())
}

/// Rebuild the links of a row by searching for the class coordinates that
/// make it pass [`verify_link`]. `None` when no coordinates up to `y = 4`,
/// `x = 400` work.
pub fn to_links(row: &ReferenceRow) -> Result<Option<Vec<NumericalLink>>, ReferenceError> {
    let e = row.corrected().e;
    let mut out = Vec::new();
    for (left, right) in normalize(row)? {
        let found = (1..=4i64).flat_map(|y| (1..=400i64).map(move |x| (x, y))).find_map(|(x, y)| {
            let link = NumericalLink {
                midpoint_genus: row.genus,
                left,
                right,
                e,
                coordinates: DivisorClass::new(x, y),
                derived: None,
                annotation: None,
            };
            verify_link(&link).then_some(link)
        });
        match found {
            Some(link) => out.push(link),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Verdict and marker the shipped rules give a reference row, without
/// needing a computed link. Used for rows that no computed link matches.
pub fn annotate_row(row: &ReferenceRow, facts: &FactBase) -> Result<(Verdict, Marker), ReferenceError> {
    let sides = normalize(row)?;
    let e = row.corrected().e;
    let (left, right) = sides.first().copied().ok_or_else(|| norm_err(row, "row", "empty"))?;
    let ann = annotate_sides(&link_key(row.genus, &left, &right, e), &left, &right, facts);
    Ok((ann.verdict, ann.marker))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowMatch {
    pub row: String,
    pub keys: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub erratum: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnnotationMismatch {
    pub row: String,
    pub key: String,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DiffReport {
    pub matched: Vec<RowMatch>,
    /// Matched only after applying the row's erratum.
    pub matched_with_erratum: Vec<RowMatch>,
    pub missing: Vec<String>,
    pub missing_anomalies: Vec<String>,
    /// Keys of computed links that no row accounts for.
    pub unlisted: Vec<String>,
    /// Rows matched by a computed link whose annotation disagrees with the
    /// printed R column or marker. Only filled when links are annotated.
    pub annotation_mismatches: Vec<AnnotationMismatch>,
    pub errors: Vec<String>,
}

impl DiffReport {
    /// Every non-anomalous row was found.
    pub fn is_success(&self) -> bool {
        self.missing.is_empty() && self.errors.is_empty()
    }

    pub fn matched_count(&self) -> usize {
        self.matched.len() + self.matched_with_erratum.len()
    }
}

fn describe(verdict: Verdict, marker: Marker) -> String {
    format!("R={} marker={}", verdict.as_str(), marker.as_str())
}

pub fn diff(reference: &[ReferenceRow], computed: &[NumericalLink]) -> DiffReport {
    let by_key: BTreeMap<String, &NumericalLink> = computed.iter().map(|l| (l.key(), l)).collect();
    let mut report = DiffReport::default();
    let mut accounted = HashSet::new();
    for row in reference {
        let keys = match match_keys(row) {
            Ok(k) => k,
            Err(err) => {
                report.errors.push(err.to_string());
                continue;
            }
        };
        if keys.iter().all(|k| by_key.contains_key(k)) {
            for key in &keys {
                let link = by_key[key];
                if let Some(ann) = &link.annotation {
                    if (ann.verdict, ann.marker) != (row.r_column, row.marker) {
                        report.annotation_mismatches.push(AnnotationMismatch {
                            row: row.label(),
                            key: key.clone(),
                            expected: describe(row.r_column, row.marker),
                            got: describe(ann.verdict, ann.marker),
                        });
                    }
                }
            }
            accounted.extend(keys.iter().cloned());
            let m = RowMatch { row: row.label(), keys, erratum: row.erratum.as_ref().map(Erratum::to_string) };
            if row.erratum.is_some() {
                report.matched_with_erratum.push(m);
            } else {
                report.matched.push(m);
            }
        } else if row.anomaly {
            report.missing_anomalies.push(row.label());
        } else {
            report.missing.push(row.label());
        }
    }
    report.unlisted = by_key.keys().filter(|k| !accounted.contains(*k)).cloned().collect();
    report
}
