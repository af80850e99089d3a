// SPDX-License-Identifier: Apache-2.0

//! `sarkisov`: enumerate, verify and explain numerical Sarkisov links.
//!
//! Exit codes: 0 success, 1 reference mismatch or lookup failure, 2 usage
//! error, 3 unreadable or corrupt data (reference tables, fact base).

mod classify;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use output::{render_catalog, render_links, LinkRow};
use sarkisov_core::annotator::{annotate_all, default_fact_base, FactBase};
use sarkisov_core::contractions::BoundsMode;
use sarkisov_core::enumerator::{enumerate, explain_link, NumericalLink};
use sarkisov_core::reference::{diff, load_dir, load_embedded, match_keys, ReferenceRow, Table};
use std::collections::HashMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    TextTable,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Bounds {
    Paper,
    Relaxed,
}

impl From<Bounds> for BoundsMode {
    fn from(b: Bounds) -> Self {
        match b {
            Bounds::Paper => BoundsMode::Paper,
            Bounds::Relaxed => BoundsMode::Relaxed,
        }
    }
}

#[derive(Parser)]
#[command(name = "sarkisov", version, about = "Numerical Sarkisov links on rank-1 Fano 3-folds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the 17 rank-1 families.
    Catalog {
        #[arg(long, value_enum, default_value = "text-table")]
        format: OutputFormat,
    },
    /// Enumerate every numerical link for one midpoint genus.
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(i64).range(3..=12))]
        genus: i64,
        #[arg(long, value_enum, default_value = "paper")]
        bounds: Bounds,
        #[arg(long, value_enum, default_value = "text-table")]
        format: OutputFormat,
        /// Fact base in TOML; the shipped one is used otherwise.
        #[arg(long)]
        facts: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Compare enumerated links with the bundled reference tables.
    Verify {
        #[command(flatten)]
        scope: Scope,
        /// Directory with a MANIFEST and section files.
        #[arg(long)]
        reference: Option<PathBuf>,
        #[arg(long)]
        facts: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "paper")]
        bounds: Bounds,
    },
    /// Case list of the classification for one genus.
    Classify {
        #[arg(long, value_parser = clap::value_parser!(i64).range(3..=10))]
        genus: i64,
    },
    /// Print every intersection number behind one link.
    Explain {
        #[arg(long, value_parser = clap::value_parser!(i64).range(3..=12))]
        genus: i64,
        #[command(flatten)]
        selector: Selector,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Scope {
    #[arg(long, value_parser = clap::value_parser!(i64).range(3..=10))]
    genus: Option<i64>,
    #[arg(long)]
    all: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Selector {
    /// Reference row, e.g. `T1:37` or `T2:4`.
    #[arg(long)]
    row_like: Option<String>,
    /// Link key as printed by `enumerate`.
    #[arg(long)]
    link: Option<String>,
}

/// Failure with an exit code and a message for stderr.
struct Failure(u8, String);

fn integrity(msg: impl ToString) -> Failure {
    Failure(3, msg.to_string())
}

fn load_facts(path: Option<&PathBuf>) -> Result<FactBase, Failure> {
    match path {
        None => Ok(default_fact_base()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| integrity(format!("{}: {e}", p.display())))?;
            FactBase::from_toml(&text).map_err(|e| integrity(format!("{}: {e}", p.display())))
        }
    }
}

fn load_reference(dir: Option<&PathBuf>) -> Result<Vec<ReferenceRow>, Failure> {
    match dir {
        None => load_embedded(),
        Some(d) => load_dir(d),
    }
    .map_err(integrity)
}

fn annotated_links(
    genus: i64,
    bounds: BoundsMode,
    facts: &FactBase,
    jobs: usize,
) -> Result<Vec<NumericalLink>, Failure> {
    let run = enumerate(genus, bounds, jobs).map_err(|e| Failure(1, e.to_string()))?;
    for hit in &run.boundary_hits {
        eprintln!(
            "note: del Pezzo candidate above degree 9 dropped: quadruple {} class {} degree {} e={}",
            hit.quadruple, hit.class, hit.fibre_degree, hit.e
        );
    }
    Ok(annotate_all(&run.links, facts))
}

/// Link key -> reference row label for every row of `genus`.
fn reference_labels(rows: &[ReferenceRow], genus: i64) -> HashMap<String, String> {
    let mut out = HashMap::new();
    for row in rows.iter().filter(|r| r.genus == genus) {
        if let Ok(keys) = match_keys(row) {
            for key in keys {
                out.insert(key, row.label());
            }
        }
    }
    out
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure(1, e.to_string());
    match cli.command {
        Command::Catalog { format } => out.write_all(render_catalog(format).as_bytes()).map_err(io),
        Command::Enumerate { genus, bounds, format, facts, jobs } => {
            let facts = load_facts(facts.as_ref())?;
            let links = annotated_links(genus, bounds.into(), &facts, jobs)?;
            let reference = load_reference(None)?;
            let labels = reference_labels(&reference, genus);
            let rows: Vec<LinkRow> =
                links.iter().enumerate().map(|(i, l)| LinkRow::new(i + 1, l, labels.get(&l.key()).cloned())).collect();
            out.write_all(render_links(genus, &rows, format).as_bytes()).map_err(io)
        }
        Command::Verify { scope, reference, facts, bounds } => {
            let facts = load_facts(facts.as_ref())?;
            let rows = load_reference(reference.as_ref())?;
            let genera: Vec<i64> = match scope.genus {
                Some(g) => vec![g],
                None => (3..=10).collect(),
            };
            let mut ok = true;
            for g in genera {
                let links = annotated_links(g, bounds.into(), &facts, 1)?;
                let section: Vec<ReferenceRow> = rows.iter().filter(|r| r.genus == g).cloned().collect();
                let report = diff(&section, &links);
                let table = if g == 3 { Table::T1 } else { Table::T2 };
                writeln!(
                    out,
                    "{table} g={g}: {} matched ({} via erratum), {} missing, {} anomalies, {} unlisted, {} annotation mismatches",
                    report.matched_count(),
                    report.matched_with_erratum.len(),
                    report.missing.len(),
                    report.missing_anomalies.len(),
                    report.unlisted.len(),
                    report.annotation_mismatches.len(),
                )
                .map_err(io)?;
                for m in &report.matched_with_erratum {
                    writeln!(out, "  erratum   {} [{}]", m.row, m.erratum.as_deref().unwrap_or("")).map_err(io)?;
                }
                for label in &report.missing {
                    writeln!(out, "  missing   {label}").map_err(io)?;
                }
                for label in &report.missing_anomalies {
                    writeln!(out, "  anomaly   {label}").map_err(io)?;
                }
                for key in &report.unlisted {
                    writeln!(out, "  unlisted  {key}").map_err(io)?;
                }
                for m in &report.annotation_mismatches {
                    writeln!(out, "  annotation {}: expected {}, got {} [{}]", m.row, m.expected, m.got, m.key)
                        .map_err(io)?;
                }
                for e in &report.errors {
                    writeln!(out, "  error     {e}").map_err(io)?;
                }
                ok &= report.is_success();
            }
            writeln!(out, "result: {}", if ok { "ok" } else { "MISMATCH" }).map_err(io)?;
            if ok {
                Ok(())
            } else {
                Err(Failure(1, "reference rows missing from the enumeration".into()))
            }
        }
        Command::Classify { genus } => {
            let links = annotated_links(genus, BoundsMode::Paper, &default_fact_base(), 1)?;
            out.write_all(classify::render(genus, &links).as_bytes()).map_err(io)
        }
        Command::Explain { genus, selector } => {
            let links = annotated_links(genus, BoundsMode::Paper, &default_fact_base(), 1)?;
            let key = match (selector.row_like, selector.link) {
                (Some(sel), _) => row_key(&sel, genus)?,
                (None, Some(key)) => key,
                (None, None) => unreachable!("clap enforces one selector"),
            };
            let link = links
                .iter()
                .find(|l| l.key() == key)
                .ok_or_else(|| Failure(1, format!("no enumerated link with key `{key}`")))?;
            let ex = explain_link(link).map_err(|e| Failure(1, e.to_string()))?;
            write!(out, "{ex}").map_err(io)
        }
    }
}

/// `T1:37` -> link key of that row (first expansion for `X/Y` rows).
fn row_key(selector: &str, genus: i64) -> Result<String, Failure> {
    let bad = || Failure(2, format!("row selector `{selector}` should look like T1:37"));
    let (table, id) = selector.split_once(':').ok_or_else(bad)?;
    let table: Table = table.parse().map_err(|_| bad())?;
    let id: u32 = id.parse().map_err(|_| bad())?;
    let rows = load_reference(None)?;
    let row = rows
        .iter()
        .find(|r| r.table == table && r.genus == genus && r.row_id == id)
        .ok_or_else(|| Failure(1, format!("no reference row {table}:{id} at genus {genus}")))?;
    let keys = match_keys(row).map_err(|e| Failure(1, e.to_string()))?;
    keys.into_iter().next().ok_or_else(|| Failure(1, "row has no link keys".into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            let _ = lock.flush();
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
