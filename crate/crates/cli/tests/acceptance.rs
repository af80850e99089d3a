// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints one line, pass or fail, on every run.

#[path = "../../core/tests/common/oracle.rs"]
mod oracle;

use oracle::{scan_cb, scan_dp, scan_e1, scan_point, summarize};
use sarkisov_core::annotator::{annotate_all, default_fact_base};
use sarkisov_core::catalog::all_families;
use sarkisov_core::contractions::{left_quadruple, BoundsMode};
use sarkisov_core::enumerator::{enumerate_links, left_specs, mirror_check, NumericalLink};
use sarkisov_core::reference::{annotate_row, diff, load_embedded, match_keys, ReferenceRow, Table, ANOMALIES};
use sarkisov_core::solver::{
    solve_right_conic_bundle, solve_right_del_pezzo, solve_right_divisorial_e1, solve_right_point, verify_link,
    PointKind,
};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::process::{Command, ExitCode};
use std::time::Instant;

type Outcome = Result<String, String>;

fn sarkisov(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_sarkisov")).args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("`sarkisov {}` exited with {:?}", args.join(" "), out.status.code()));
    }
    Ok(out.stdout)
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Data {
    rows: Vec<ReferenceRow>,
    /// Default bounds, genus 3..=10.
    links: HashMap<i64, Vec<NumericalLink>>,
    /// Union of both bound modes, genus 3..=12.
    all: Vec<NumericalLink>,
}

impl Data {
    fn load() -> Self {
        let rows = load_embedded().expect("bundled reference loads");
        let links = (3..=10).map(|g| (g, enumerate_links(g, BoundsMode::Paper).unwrap())).collect();
        let mut all = BTreeMap::new();
        for g in 3..=12 {
            for mode in [BoundsMode::Paper, BoundsMode::Relaxed] {
                all.extend(enumerate_links(g, mode).unwrap().into_iter().map(|l| (l.key(), l)));
            }
        }
        Data { rows, links, all: all.into_values().collect() }
    }

    fn section(&self, g: i64) -> Vec<ReferenceRow> {
        self.rows.iter().filter(|r| r.genus == g).cloned().collect()
    }

    fn row(&self, table: Table, g: i64, id: u32) -> &ReferenceRow {
        self.rows.iter().find(|r| r.table == table && r.genus == g && r.row_id == id).unwrap()
    }

    fn t1_link(&self, id: u32) -> Result<&NumericalLink, String> {
        let key = match_keys(self.row(Table::T1, 3, id)).map_err(|e| e.to_string())?.remove(0);
        self.links[&3].iter().find(|l| l.key() == key).ok_or(format!("T1:{id} not enumerated"))
    }
}

fn anchors(data: &Data, list: &[(Table, i64, u32, i64)]) -> Result<(), String> {
    for &(table, g, id, e) in list {
        let row = data.row(table, g, id);
        check(row.e == e, || format!("{} has e={}, expected {e}", row.label(), row.e))?;
        let keys = match_keys(row).map_err(|err| err.to_string())?;
        for key in keys {
            check(data.links[&g].iter().any(|l| l.key() == key), || format!("{} not enumerated", row.label()))?;
        }
    }
    Ok(())
}

/// `(pair, left, centre, right, centre/aux, e)` as the text table prints them.
fn printed_fields(row: &ReferenceRow) -> [String; 6] {
    let centre = |t: &str, c: &str| if t == "E3" && c == "(0,0)" { "-".to_string() } else { c.to_string() };
    [
        format!("{}-{}", row.left_type, row.right_type),
        row.left_target.clone(),
        centre(&row.left_type, &row.left_centre),
        row.right_target.clone(),
        centre(&row.right_type, &row.right_centre_or_aux),
        row.e.to_string(),
    ]
}

fn criterion_1(data: &Data) -> Outcome {
    let text = String::from_utf8(sarkisov(&["enumerate", "--genus", "3"])?).map_err(|e| e.to_string())?;
    let mut seen = BTreeSet::new();
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split_whitespace().collect();
        let Some(label) = cols.last().filter(|l| l.starts_with("T1:")) else { continue };
        let id: u32 = label[3..].parse().map_err(|_| format!("bad label {label}"))?;
        let want = printed_fields(data.row(Table::T1, 3, id));
        check(cols[1..7] == want, || format!("{label}: printed {:?}, expected {want:?}", &cols[1..7]))?;
        check(seen.insert(id), || format!("{label} printed twice"))?;
    }
    check(seen.len() == 37 && seen.iter().copied().eq(1..=37), || format!("{} of 37 rows printed", seen.len()))?;
    anchors(
        data,
        &[
            (Table::T1, 3, 1, 268),
            (Table::T1, 3, 2, 171),
            (Table::T1, 3, 10, 103),
            (Table::T1, 3, 16, 24),
            (Table::T1, 3, 22, 30),
            (Table::T1, 3, 30, 17),
            (Table::T1, 3, 37, 8),
        ],
    )?;
    Ok("37/37 rows printed with matching types, targets, centres and e".into())
}

fn criterion_2(data: &Data) -> Outcome {
    let mut matched = 0;
    let mut via_erratum = Vec::new();
    let mut anomalies = Vec::new();
    for g in 4..=10 {
        let section = data.section(g);
        let report = diff(&section, &data.links[&g]);
        check(report.missing.is_empty() && report.errors.is_empty(), || {
            format!("g={g}: missing {:?}, errors {:?}", report.missing, report.errors)
        })?;
        matched += report.matched_count();
        via_erratum.extend(report.matched_with_erratum.iter().map(|m| m.row.clone()));
        anomalies.extend(report.missing_anomalies);
    }
    let declared: Vec<String> = ANOMALIES.iter().map(|(_, g, id)| format!("T2 g={g}:{id}")).collect();
    check(anomalies == declared, || format!("anomaly bucket {anomalies:?}, declared {declared:?}"))?;
    anchors(data, &[(Table::T2, 4, 1, 89), (Table::T2, 9, 1, 4), (Table::T2, 10, 1, 3)])?;
    Ok(format!(
        "{matched} rows matched ({} via erratum: {}), {} anomalies in their bucket",
        via_erratum.len(),
        via_erratum.join(", "),
        anomalies.len()
    ))
}

fn criterion_3() -> Outcome {
    let families = all_families();
    let mut by_index = [0usize; 5];
    for f in families {
        by_index[f.fano_index as usize] += 1;
    }
    check(families.len() == 17, || format!("{} families", families.len()))?;
    check(by_index[1..] == [10, 5, 1, 1], || format!("split {:?}", &by_index[1..]))?;
    Ok("17 families, split 10/5/1/1 by index".into())
}

fn criterion_4(data: &Data) -> Outcome {
    let mut n = 0;
    for g in 3..=10 {
        for link in &data.links[&g] {
            check(verify_link(link), || format!("{} fails", link.key()))?;
            n += 1;
        }
    }
    let mut relaxed = 0;
    for link in data.all.iter().filter(|l| l.midpoint_genus <= 10) {
        check(verify_link(link), || format!("{} fails", link.key()))?;
        relaxed += 1;
    }
    Ok(format!("{n} links at genus 3..=10 verify ({relaxed} with relaxed bounds)"))
}

fn criterion_5() -> Outcome {
    let mut quadruples = BTreeSet::new();
    for g in 3..=10 {
        for mode in [BoundsMode::Paper, BoundsMode::Relaxed] {
            for spec in left_specs(g, mode).map_err(|e| e.to_string())? {
                quadruples.insert(left_quadruple(&spec).map_err(|e| e.to_string())?);
            }
        }
    }
    let mut solutions = 0;
    for q in &quadruples {
        let pairs = [
            ("E1", summarize(&solve_right_divisorial_e1(q).unwrap()), scan_e1(q)),
            ("E2", summarize(&solve_right_point(q, PointKind::E2).unwrap()), scan_point(q, true)),
            ("E3E4", summarize(&solve_right_point(q, PointKind::E3E4).unwrap()), scan_point(q, false)),
            ("CB", summarize(&solve_right_conic_bundle(q).unwrap()), scan_cb(q)),
            ("dP", summarize(&solve_right_del_pezzo(q).unwrap().solutions), scan_dp(q)),
        ];
        for (kind, solved, scanned) in pairs {
            check(solved == scanned, || format!("{kind} at {q}: solver {solved:?}, scan {scanned:?}"))?;
            solutions += solved.len();
        }
    }
    Ok(format!("{} left quadruples, {solutions} solutions, 0 missed, 0 spurious", quadruples.len()))
}

fn criterion_6(data: &Data) -> Outcome {
    let bad: Vec<String> = data.all.iter().filter(|l| l.e < 1).map(NumericalLink::key).collect();
    check(bad.is_empty(), || format!("non-positive e: {bad:?}"))?;
    let min = data.all.iter().map(|l| l.e).min().unwrap_or(0);
    Ok(format!("{} links at genus 3..=12, minimum e = {min}", data.all.len()))
}

fn criterion_7(data: &Data) -> Outcome {
    for g in 3..=10 {
        let v = mirror_check(&data.links[&g]);
        check(v.is_empty(), || format!("g={g}: {} violations, first {}", v.len(), v[0].link))?;
    }
    let is_mirror = |a: &NumericalLink, b: &NumericalLink| a.left == b.right && a.right == b.left && a.e == b.e;
    for (i, j) in [(5, 18), (13, 31), (23, 27)] {
        let (a, b) = (data.t1_link(i)?, data.t1_link(j)?);
        check(is_mirror(a, b), || format!("T1:{i} and T1:{j} are not mirrors"))?;
    }
    for i in [1, 3, 8, 11, 15, 20, 22, 25, 35] {
        let a = data.t1_link(i)?;
        check(is_mirror(a, a), || format!("T1:{i} is not self-mirror"))?;
    }
    Ok("no violations at genus 3..=10; 3 pairs and 9 self-mirrors hold".into())
}

fn criterion_8(data: &Data) -> Outcome {
    for link in &data.all {
        let a = link.midpoint_a();
        for side in [&link.left, &link.right] {
            if let Some(f) = side.target.family().filter(|_| side.ctype.is_divisorial()) {
                check(f.a_cubed >= a + 2, || format!("{}: endpoint {} below midpoint", link.key(), f.display_name()))?;
            }
        }
    }
    let min = data.links[&3]
        .iter()
        .flat_map(|l| [&l.left, &l.right])
        .filter(|s| s.ctype.is_divisorial())
        .filter_map(|s| s.target.family())
        .min_by_key(|f| f.a_cubed)
        .ok_or("no divisorial endpoint at genus 3")?;
    check(min.a_cubed == 6, || format!("genus 3 minimum endpoint degree {}", min.a_cubed))?;
    Ok(format!("all endpoints at least midpoint + 2; genus 3 minimum {} ({})", min.a_cubed, min.display_name()))
}

fn criterion_9(data: &Data) -> Outcome {
    let facts = default_fact_base();
    for row in &data.rows {
        let got = annotate_row(row, &facts).map_err(|e| e.to_string())?;
        check(got == (row.r_column, row.marker), || {
            format!("{}: got {} {}, printed {} {}", row.label(), got.0, got.1, row.r_column, row.marker)
        })?;
    }
    for g in 3..=10 {
        let report = diff(&data.section(g), &annotate_all(&data.links[&g], &facts));
        check(report.annotation_mismatches.is_empty(), || format!("g={g}: {:?}", report.annotation_mismatches))?;
    }
    Ok(format!("{}/{} rows agree on R column and marker", data.rows.len(), data.rows.len()))
}

fn criterion_10() -> Outcome {
    for g in 3..=12 {
        let g = g.to_string();
        let args = ["enumerate", "--genus", g.as_str(), "--format", "json"];
        let (a, b) = (sarkisov(&args)?, sarkisov(&args)?);
        check(!a.is_empty() && a == b, || format!("genus {g}: runs differ"))?;
    }
    Ok("two JSON runs byte-identical for genus 3..=12".into())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let data = Data::load();
    let results = [
        ("Table 1 reproduction", criterion_1(&data)),
        ("Table 2 reproduction", criterion_2(&data)),
        ("catalog integrity", criterion_3()),
        ("soundness", criterion_4(&data)),
        ("oracle equivalence", criterion_5()),
        ("positivity", criterion_6(&data)),
        ("mirror closure", criterion_7(&data)),
        ("degree monotonicity", criterion_8(&data)),
        ("annotator fidelity", criterion_9(&data)),
        ("determinism", criterion_10()),
    ];
    let mut failed = 0;
    for (i, (name, result)) in results.iter().enumerate() {
        let (status, detail) = match result {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2}: {status} {name} (tolerance: exact): {detail}", i + 1);
    }
    println!("acceptance: {}/{} passed in {:.2?}", results.len() - failed, results.len(), start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
