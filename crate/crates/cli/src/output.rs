// SPDX-License-Identifier: Apache-2.0

use crate::OutputFormat;
use sarkisov_core::catalog::{all_families, FanoFamily};
use sarkisov_core::enumerator::NumericalLink;
use serde::Serialize;

/// One output line of `enumerate`.
#[derive(Debug, Clone, Serialize)]
pub struct LinkRow {
    pub row: usize,
    pub pair: String,
    pub left_target: String,
    pub left_centre: String,
    pub right_target: String,
    pub right_centre_or_aux: String,
    pub e: i64,
    pub r: String,
    pub marker: String,
    pub reference: String,
    pub x: i64,
    pub y: i64,
    pub key: String,
}

impl LinkRow {
    pub fn new(row: usize, link: &NumericalLink, reference: Option<String>) -> Self {
        let ann = link.annotation.as_ref();
        Self {
            row,
            pair: link.type_pair(),
            left_target: link.left.target.to_string(),
            left_centre: link.left.detail(),
            right_target: link.right.target.to_string(),
            right_centre_or_aux: link.right.detail(),
            e: link.e,
            r: ann.map_or(String::new(), |a| a.verdict.symbol().to_string()),
            marker: ann.map_or("none".into(), |a| a.marker.as_str().to_string()),
            reference: reference.unwrap_or_else(|| "unlisted".into()),
            x: link.coordinates.x,
            y: link.coordinates.y,
            key: link.key(),
        }
    }
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(&width).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(cell);
            } else {
                s.push_str(cell);
                s.push_str(&" ".repeat(w - cell.chars().count() + 2));
            }
        }
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

fn csv_text<T: Serialize>(records: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r).expect("csv serialization of plain records");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv output is utf-8")
}

#[derive(Serialize)]
struct LinksDocument<'a> {
    genus: i64,
    links: &'a [LinkRow],
}

#[derive(Serialize)]
struct CatalogRecord {
    name: &'static str,
    canonical_name: &'static str,
    fano_index: i64,
    h_cubed: i64,
    a_cubed: i64,
    genus: Option<i64>,
}

impl From<&FanoFamily> for CatalogRecord {
    fn from(f: &FanoFamily) -> Self {
        Self {
            name: f.display_name(),
            canonical_name: f.canonical_name,
            fano_index: f.fano_index,
            h_cubed: f.h_cubed,
            a_cubed: f.a_cubed,
            genus: f.genus,
        }
    }
}

pub fn render_catalog(format: OutputFormat) -> String {
    let records: Vec<CatalogRecord> = all_families().iter().map(CatalogRecord::from).collect();
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(&records).expect("json") + "\n",
        OutputFormat::Csv => csv_text(&records),
        OutputFormat::TextTable => {
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| {
                    vec![
                        r.name.to_string(),
                        r.fano_index.to_string(),
                        r.h_cubed.to_string(),
                        r.a_cubed.to_string(),
                        r.genus.map_or("-".into(), |g| g.to_string()),
                    ]
                })
                .collect();
            table(&["family", "index", "H^3", "(-K)^3", "genus"], &rows)
        }
    }
}

pub fn render_links(genus: i64, rows: &[LinkRow], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(&LinksDocument { genus, links: rows }).expect("json") + "\n",
        OutputFormat::Csv => csv_text(rows),
        OutputFormat::TextTable => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.row.to_string(),
                        r.pair.clone(),
                        r.left_target.clone(),
                        r.left_centre.clone(),
                        r.right_target.clone(),
                        r.right_centre_or_aux.clone(),
                        r.e.to_string(),
                        if r.r.is_empty() { ".".into() } else { r.r.clone() },
                        r.marker.clone(),
                        r.reference.clone(),
                    ]
                })
                .collect();
            let header = ["row", "pair", "left", "centre", "right", "centre/aux", "e", "R", "marker", "reference"];
            table(&header, &cells)
        }
    }
}
