use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use flagstab_core::curvature::{analyze, exact, normalized_scalar_curvature};
use flagstab_core::flag_su::{self, Family, PairIndex};
use flagstab_core::model::catalog::{catalog_ids, catalog_space};
use flagstab_core::model::file::{load_space, space_to_json};
use flagstab_core::report::{build_case, render, Case, Format};
use flagstab_core::solver::{refine, solve_with_ansatz, Ansatz, SolveOptions};
use flagstab_core::stability::{stability_report, ReportOptions, SpectralReport};
use flagstab_core::{InvariantMetric, SpaceModel};

#[derive(Parser)]
#[command(
    name = "flagstab",
    version,
    about = "Einstein metrics and G-stability on flag manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in spaces.
    List,
    /// Print a space as a JSON space file.
    ShowSpace {
        /// Catalog id or path to a JSON space file.
        space: String,
    },
    /// Ricci eigenvalues, Einstein residual and scalar curvatures of a metric.
    Analyze {
        #[arg(long)]
        space: String,
        /// Comma-separated coordinates; decimals or fractions like 1/4.
        #[arg(long)]
        metric: String,
        /// Evaluate in exact rational arithmetic.
        #[arg(long)]
        exact: bool,
    },
    /// Stability report of an Einstein metric.
    Stability {
        #[arg(long)]
        space: String,
        #[arg(long)]
        metric: String,
        #[arg(long, conflicts_with = "md")]
        json: bool,
        #[arg(long)]
        md: bool,
        /// Tolerances for coordinates quoted to a few decimals.
        #[arg(long)]
        quoted: bool,
    },
    /// Recompute a reference table.
    Table {
        #[arg(long)]
        case: Case,
        #[arg(long, default_value = "md")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Multistart search for Einstein metrics.
    Solve {
        #[arg(long)]
        space: String,
        #[arg(long)]
        starts: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Classes of summands sharing a coordinate, e.g. "1,2,3|4,5,6".
        #[arg(long)]
        ansatz: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// A classic metric family on F(n).
    Fn {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        family: FamilyArg,
    },
    /// The seven F(5) Einstein metrics with refined coordinates and reports.
    F5Metrics {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Standard,
    Arvanitoyeorgos,
    Senda,
    Kahler,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Standard => Family::Standard,
            FamilyArg::Arvanitoyeorgos => Family::Arvanitoyeorgos,
            FamilyArg::Senda => Family::Senda,
            FamilyArg::Kahler => Family::Kahler,
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

/// Parses `"3/4"`, `"1.25"` or `"2"` exactly.
fn parse_exact(text: &str) -> Result<BigRational> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p
            .trim()
            .parse()
            .with_context(|| format!("bad numerator in `{t}`"))?;
        let q: BigInt = q
            .trim()
            .parse()
            .with_context(|| format!("bad denominator in `{t}`"))?;
        if q == BigInt::from(0) {
            bail!("zero denominator in `{t}`");
        }
        return Ok(BigRational::new(p, q));
    }
    let (int, frac) = t.split_once('.').unwrap_or((t, ""));
    let digits = format!("{int}{frac}");
    let numer: BigInt = digits
        .parse()
        .with_context(|| format!("`{t}` is not a number"))?;
    Ok(BigRational::new(
        numer,
        BigInt::from(10).pow(frac.len() as u32),
    ))
}

fn parse_coords(text: &str) -> Result<Vec<BigRational>> {
    text.split(',').map(parse_exact).collect()
}

fn metric_from(space: &Arc<SpaceModel>, text: &str) -> Result<InvariantMetric> {
    let coords = parse_coords(text)?.iter().map(exact::to_f64).collect();
    Ok(InvariantMetric::new(space, coords)?)
}

fn load(id: &str) -> Result<Arc<SpaceModel>> {
    Ok(Arc::new(load_space(id)?))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::List => {
            for id in catalog_ids() {
                let s = catalog_space(&id)?;
                println!(
                    "{id:8} r = {:2}  dim = {:3}  triples = {}",
                    s.r(),
                    s.n(),
                    s.triples().len()
                );
            }
        }
        Command::ShowSpace { space } => print!("{}", space_to_json(&load_space(&space)?)),
        Command::Analyze {
            space,
            metric,
            exact: exact_mode,
        } => {
            let space = load(&space)?;
            if exact_mode {
                let x = parse_coords(&metric)?;
                if x.len() != space.r() {
                    bail!("{} coordinates given, space has {}", x.len(), space.r());
                }
                let m = metric_from(&space, &metric)?;
                let rho = exact::rho(&space, &x);
                print_json(&json!({
                    "rho": rho.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "two_rho": exact::two_rho_mean(&space, &x).to_string(),
                    "residual": exact::residual(&space, &x).to_string(),
                    "sc": exact::scalar(&space, &x).to_string(),
                    "sc_n": normalized_scalar_curvature(&m),
                }))?;
            } else {
                print_json(&analyze(&metric_from(&space, &metric)?))?;
            }
        }
        Command::Stability {
            space,
            metric,
            json,
            md,
            quoted,
        } => {
            let space = load(&space)?;
            let m = metric_from(&space, &metric)?;
            let opts = if quoted {
                ReportOptions::quoted()
            } else {
                ReportOptions::refined()
            };
            let report = stability_report(&m, &opts)?;
            if json {
                print_json(&report)?;
            } else if md {
                print!("{}", report_markdown(&m, &report));
            } else {
                print!("{}", report_text(&report));
            }
        }
        Command::Table { case, format, out } => {
            let bundle = build_case(case)?;
            let text = render(&bundle, format);
            match out {
                Some(path) => fs::write(&path, &text)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            if !bundle.all_certified() {
                let bad: Vec<&str> = bundle
                    .rows
                    .iter()
                    .filter(|r| !r.certified)
                    .map(|r| r.name.as_str())
                    .collect();
                eprintln!("rows not certified Einstein: {}", bad.join(", "));
                return Ok(ExitCode::from(1));
            }
        }
        Command::Solve {
            space,
            starts,
            seed,
            ansatz,
            json,
        } => {
            let space = load(&space)?;
            let ansatz = match ansatz {
                Some(text) => Ansatz::parse(space.r(), &text)?,
                None => Ansatz::trivial(space.r()),
            };
            let opts = SolveOptions {
                starts,
                seed,
                ..SolveOptions::default()
            };
            let set = solve_with_ansatz(&space, &ansatz, &opts)?;
            if json {
                print_json(&set.summary())?;
            } else {
                println!(
                    "{}: {} classes ({} of {} starts converged, group order {})",
                    space.name(),
                    set.len(),
                    set.converged,
                    set.starts,
                    set.group.order()
                );
                for (i, s) in set.solutions.iter().enumerate() {
                    println!(
                        "[{}] ({}) residual {:.1e}, Sc_N {:.6}, coindex {}, {}",
                        i + 1,
                        fmt_coords(s.metric.coords()),
                        s.residual,
                        normalized_scalar_curvature(&s.metric),
                        s.report.coindex,
                        s.report.flags.describe()
                    );
                }
            }
        }
        Command::Fn { n, family } => {
            let m = flag_su::classic_metric(n, family.into())?;
            let index = PairIndex::new(n);
            let coords: Vec<_> = index
                .pairs()
                .iter()
                .zip(m.coords())
                .map(|(&(i, j), &x)| json!({ "pair": format!("{i}{j}"), "x": x }))
                .collect();
            print_json(&json!({
                "space": m.space().name(),
                "family": Family::from(family).name(),
                "coords": coords,
                "analysis": analyze(&m),
            }))?;
        }
        Command::F5Metrics { json } => {
            let rows = f5_rows()?;
            if json {
                print_json(&rows)?;
            } else {
                for r in &rows {
                    println!(
                        "{:3} ({}) 2rho {:.6}, Sc_N {:.6}, coindex {}",
                        r.name,
                        fmt_coords(&r.coords),
                        r.report.two_rho,
                        r.sc_n,
                        r.report.coindex
                    );
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct F5Row {
    name: String,
    coords: Vec<f64>,
    residual: f64,
    sc_n: f64,
    report: SpectralReport,
}

fn f5_rows() -> Result<Vec<F5Row>> {
    flag_su::f5_seven_metrics()?
        .into_iter()
        .map(|(name, m)| {
            let m = refine(&m, 1e-13)?;
            let report = stability_report(&m, &ReportOptions::refined())?;
            Ok(F5Row {
                name,
                residual: report.residual,
                sc_n: normalized_scalar_curvature(&m),
                coords: m.into_coords(),
                report,
            })
        })
        .collect()
}

fn fmt_coords(x: &[f64]) -> String {
    x.iter()
        .map(|v| format!("{v:.6}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn report_text(r: &SpectralReport) -> String {
    let spectrum: Vec<String> = r
        .eigenvalues
        .iter()
        .map(|c| format!("{:.6} (x{})", c.value, c.multiplicity))
        .collect();
    format!(
        "2rho        {:.10}\nresidual    {:.1e}\nspectrum    {}\nlambda_p    {:.10}\nlambda_max  {:.10}\ncoindex     {}\nproperties  {}\n",
        r.two_rho,
        r.residual,
        spectrum.join(", "),
        r.lambda_p,
        r.lambda_p_max,
        r.coindex,
        r.flags.describe()
    )
}

fn report_markdown(m: &InvariantMetric, r: &SpectralReport) -> String {
    format!(
        "| Properties | 2ρ | Sc_N | coindex | λ_p | λ_p^max |\n|---|---|---|---|---|---|\n| {} | {:.4} | {:.4} | {} | {:.4} | {:.4} |\n",
        r.flags.describe(),
        r.two_rho,
        normalized_scalar_curvature(m),
        r.coindex,
        r.lambda_p,
        r.lambda_p_max
    )
}
