//! Recomputed stability tables with printed-cell comparison and pairwise
//! homothety verdicts.

pub mod cases;

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curvature::{einstein_residual, normalized_scalar_curvature};
use crate::flag_su::FlagError;
use crate::model::catalog::catalog_space;
use crate::model::{InvariantMetric, ModelError};
use crate::solver::{refine, SolveError};
use crate::stability::{
    distinguish, stability_report, ReportOptions, SpectralReport, StabilityError, Verdict,
};

pub use cases::{case_rows, Case, PrintedCell, PrintedRow, RowSpec};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Flag(#[from] FlagError),
    #[error(transparent)]
    Stability(#[from] StabilityError),
    #[error("invalid bundle JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// Residual below which a refined row counts as certified Einstein.
pub const CERTIFY_TOL: f64 = 1e-12;
/// Target residual for refinement.
pub const REFINE_TOL: f64 = 1e-13;

/// Comparison of one recomputed cell with the printed value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellCheck {
    pub column: String,
    pub printed: String,
    pub computed: f64,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseRow {
    pub name: String,
    pub coords: Vec<f64>,
    pub refined: Vec<f64>,
    pub residual: f64,
    pub certified: bool,
    pub two_rho: f64,
    pub sc_n: f64,
    pub coindex: usize,
    pub lambda_p: f64,
    pub lambda_p_max: f64,
    pub properties: String,
    pub report: SpectralReport,
    pub checks: Vec<CellCheck>,
}

impl CaseRow {
    /// Cells whose recomputed value disagrees with the printed one.
    pub fn discrepancies(&self) -> impl Iterator<Item = &CellCheck> {
        self.checks.iter().filter(|c| !c.agrees)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseBundle {
    pub case: Case,
    pub title: String,
    pub space: String,
    pub rows: Vec<CaseRow>,
    /// `distinctness[i][j]` compares rows `i` and `j`; the diagonal is empty.
    pub distinctness: Vec<Vec<Option<Verdict>>>,
}

impl CaseBundle {
    pub fn all_certified(&self) -> bool {
        self.rows.iter().all(|r| r.certified)
    }

    pub fn all_distinct(&self) -> bool {
        self.distinctness
            .iter()
            .flatten()
            .flatten()
            .all(Verdict::is_distinct)
    }

    pub fn row(&self, name: &str) -> Option<&CaseRow> {
        self.rows.iter().find(|r| r.name == name)
    }
}

fn properties(report: &SpectralReport) -> String {
    let mut text = report.flags.describe();
    if report.fingerprint.zero_multiplicity > 1 {
        let _ = write!(text, ", mult(0)={}", report.fingerprint.zero_multiplicity);
    }
    text
}

fn check(column: &str, printed: &Option<PrintedCell>, computed: f64) -> Option<CellCheck> {
    printed.as_ref().map(|cell| CellCheck {
        column: column.to_string(),
        printed: cell.text.clone(),
        computed,
        agrees: (computed - cell.value).abs() <= cell.tol,
    })
}

/// Refines a row's coordinates and evaluates every column.
pub fn build_row(
    space: &Arc<crate::model::SpaceModel>,
    spec: &RowSpec,
) -> Result<CaseRow, ReportError> {
    let seed = InvariantMetric::new(space, spec.coords.clone())?;
    let (metric, opts) = match refine(&seed, REFINE_TOL) {
        Ok(m) => (m, ReportOptions::refined()),
        Err(SolveError::DivergedFromBasin { .. }) => (seed, ReportOptions::quoted()),
        Err(other) => unreachable!("refine only reports basin failures: {other}"),
    };
    let residual = einstein_residual(&metric);
    let report = stability_report(&metric, &opts)?;
    let sc_n = normalized_scalar_curvature(&metric);
    let p = &spec.printed;
    let mut checks: Vec<CellCheck> = [
        check("2rho", &p.two_rho, report.two_rho),
        check("Sc_N", &p.sc_n, sc_n),
        check("lambda_p", &p.lambda_p, report.lambda_p),
        check("lambda_p_max", &p.lambda_p_max, report.lambda_p_max),
    ]
    .into_iter()
    .flatten()
    .collect();
    if let Some(c) = p.coindex {
        checks.insert(
            2,
            CellCheck {
                column: "coindex".into(),
                printed: c.to_string(),
                computed: report.coindex as f64,
                agrees: c == report.coindex,
            },
        );
    }
    Ok(CaseRow {
        name: spec.name.clone(),
        coords: spec.coords.clone(),
        refined: metric.coords().to_vec(),
        residual,
        certified: residual < CERTIFY_TOL,
        two_rho: report.two_rho,
        sc_n,
        coindex: report.coindex,
        lambda_p: report.lambda_p,
        lambda_p_max: report.lambda_p_max,
        properties: properties(&report),
        report,
        checks,
    })
}

fn build_rows(
    space: &Arc<crate::model::SpaceModel>,
    specs: &[RowSpec],
) -> Result<Vec<CaseRow>, ReportError> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        specs.par_iter().map(|s| build_row(space, s)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        specs.iter().map(|s| build_row(space, s)).collect()
    }
}

/// Pairwise verdicts between rows.
pub fn distinctness_matrix(rows: &[CaseRow]) -> Vec<Vec<Option<Verdict>>> {
    rows.iter()
        .enumerate()
        .map(|(i, a)| {
            rows.iter()
                .enumerate()
                .map(|(j, b)| (i != j).then(|| distinguish(&a.report, &b.report)))
                .collect()
        })
        .collect()
}

pub fn build_case(case: Case) -> Result<CaseBundle, ReportError> {
    let space = Arc::new(catalog_space(case.space_id())?);
    let specs = case_rows(case)?;
    let rows = build_rows(&space, &specs)?;
    Ok(CaseBundle {
        case,
        title: case.title().to_string(),
        space: space.name().to_string(),
        distinctness: distinctness_matrix(&rows),
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Markdown,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "md" | "markdown" => Ok(Format::Markdown),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}` (md, json)")),
        }
    }
}

pub fn render(bundle: &CaseBundle, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(bundle).expect("bundle serializes"),
        Format::Markdown => render_markdown(bundle),
    }
}

pub fn parse_bundle(json: &str) -> Result<CaseBundle, ReportError> {
    Ok(serde_json::from_str(json)?)
}

fn cell(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v:.4}")
    }
}

fn render_markdown(b: &CaseBundle) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "## {}\n", b.title);
    let _ = writeln!(
        out,
        "| Name | Properties | 2ρ | Sc_N | coindex | λ_p | λ_p^max |"
    );
    let _ = writeln!(out, "|---|---|---|---|---|---|---|");
    for r in &b.rows {
        let mark = if r.certified { "" } else { " (not certified)" };
        let _ = writeln!(
            out,
            "| {}{} | {} | {} | {} | {} | {} | {} |",
            r.name,
            mark,
            r.properties,
            cell(r.two_rho),
            cell(r.sc_n),
            r.coindex,
            cell(r.lambda_p),
            cell(r.lambda_p_max)
        );
    }

    let discrepancies: Vec<(&str, &CellCheck)> = b
        .rows
        .iter()
        .flat_map(|r| r.discrepancies().map(move |c| (r.name.as_str(), c)))
        .collect();
    if !discrepancies.is_empty() {
        let _ = writeln!(out, "\n### Printed cells that disagree\n");
        for (name, c) in discrepancies {
            let _ = writeln!(
                out,
                "- {name} {}: printed {}, computed {:.6}",
                c.column, c.printed, c.computed
            );
        }
    }

    let _ = writeln!(out, "\n### Pairwise verdicts\n");
    let names: Vec<&str> = b.rows.iter().map(|r| r.name.as_str()).collect();
    let _ = writeln!(out, "| | {} |", names.join(" | "));
    let _ = writeln!(out, "|---|{}", "---|".repeat(names.len()));
    for (name, line) in names.iter().zip(&b.distinctness) {
        let cells: Vec<&str> = line
            .iter()
            .map(|v| match v {
                None => "-",
                Some(Verdict::Distinct(d)) => d.code(),
                Some(Verdict::Indistinguishable) => "same",
            })
            .collect();
        let _ = writeln!(out, "| {name} | {} |", cells.join(" | "));
    }
    out
}
