//! Command-line front end for the slopekit engine: single-point family
//! evaluation, TOML-driven parameter sweeps, and bounds-table lookups,
//! with text, JSON, and CSV output.

pub mod render;
pub mod sweep;

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use slopekit_core::lab::{invariants, table1_bounds};
use slopekit_core::{Error, Result};

use render::Format;
use sweep::SweepSpec;

#[derive(Debug, Parser)]
#[command(
    name = "slopekit",
    version,
    about = "Exact slope invariants and verdicts for families of fibered varieties over curves"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one family member and print its invariants report.
    Family {
        /// Family name: abelian-base, p1-base, kobayashi12, or surf23.
        name: String,
        /// Total dimension (abelian-base only, n >= 3).
        #[arg(long)]
        n: Option<u64>,
        /// Base curve genus.
        #[arg(long, default_value_t = 0)]
        g: u64,
        /// Section count chi_A of the abelian polarization (abelian-base).
        #[arg(long = "chi-a")]
        chi_a: Option<u64>,
        /// Degree of the base-curve divisor D_B (abelian-base, p1-base).
        #[arg(long = "deg-db")]
        deg_db: Option<u64>,
        /// Degree of the P^1 divisor D_A (p1-base).
        #[arg(long = "deg-da")]
        deg_da: Option<u64>,
        /// Degree of the base-curve divisor D_2 (surf23).
        #[arg(long = "deg-d2")]
        deg_d2: Option<u64>,
        /// Ruling twist degree (kobayashi12, e >= 3).
        #[arg(long)]
        e: Option<u64>,
    },
    /// Evaluate a parameter sweep described by a TOML spec file.
    Sweep {
        /// Path to the sweep spec (see README for the schema).
        #[arg(long)]
        spec: PathBuf,
    },
    /// Compare the previous and new slope lower bounds for a surface
    /// fiber type (K_F^2, p_g).
    Table1 {
        /// K_F^2 of the fiber (>= 1).
        #[arg(long)]
        kf2: u64,
        /// p_g of the fiber.
        #[arg(long)]
        pg: u64,
    },
}

/// A rendered invocation: the main document, plus an optional
/// side-channel note for stderr (used when the main output must stay a
/// clean machine-readable table).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rendered {
    pub output: String,
    pub note: Option<String>,
}

impl Rendered {
    fn plain(output: String) -> Self {
        Rendered { output, note: None }
    }
}

#[allow(clippy::too_many_arguments)]
fn family_params_from_flags(
    name: &str,
    n: Option<u64>,
    g: u64,
    chi_a: Option<u64>,
    deg_db: Option<u64>,
    deg_da: Option<u64>,
    deg_d2: Option<u64>,
    e: Option<u64>,
) -> Result<slopekit_core::lab::FamilyParams> {
    let mut map = BTreeMap::new();
    map.insert("g".to_string(), g);
    let optional = [
        ("n", n),
        ("chi_a", chi_a),
        ("deg_db", deg_db),
        ("deg_da", deg_da),
        ("deg_d2", deg_d2),
        ("e", e),
    ];
    for (key, value) in optional {
        if let Some(v) = value {
            map.insert(key.to_string(), v);
        }
    }
    render::params_from_map(name, &map)
}

/// Execute one parsed invocation and render its output.
pub fn execute(cli: &Cli) -> Result<Rendered> {
    match &cli.command {
        Command::Family {
            name,
            n,
            g,
            chi_a,
            deg_db,
            deg_da,
            deg_d2,
            e,
        } => {
            let params =
                family_params_from_flags(name, *n, *g, *chi_a, *deg_db, *deg_da, *deg_d2, *e)?;
            let report = invariants(&params)?;
            Ok(Rendered::plain(match cli.format {
                Format::Text => render::report_text(&report),
                Format::Json => render::report_json(&report),
                Format::Csv => render::reports_csv(std::slice::from_ref(&report))?,
            }))
        }
        Command::Sweep { spec } => {
            let text = std::fs::read_to_string(spec).map_err(|e| {
                Error::Parameter(format!("cannot read sweep spec {}: {e}", spec.display()))
            })?;
            let spec = SweepSpec::parse(&text)?;
            let outcome = sweep::run_sweep(&spec)?;
            let summary = render::SweepSummary::tally(&outcome.reports);
            Ok(match cli.format {
                Format::Text => Rendered::plain(render::sweep_text(&outcome.reports, &summary)),
                Format::Json => Rendered::plain(render::sweep_json(
                    outcome.family,
                    &outcome.reports,
                    &summary,
                )),
                // The CSV table stays clean; the summary goes to stderr.
                Format::Csv => Rendered {
                    output: render::reports_csv(&outcome.reports)?,
                    note: Some(summary.line()),
                },
            })
        }
        Command::Table1 { kf2, pg } => {
            let row = table1_bounds(*kf2, *pg)?;
            Ok(Rendered::plain(match cli.format {
                Format::Text => render::table1_text(&row),
                Format::Json => render::table1_json(&row),
                Format::Csv => render::table1_csv(&row)?,
            }))
        }
    }
}

/// Exit code for an engine error: parameter and domain violations are
/// usage errors (2), capacity refusals are 3, anything else is 1.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parameter(_) | Error::Domain(_) => 2,
        Error::Capacity { .. } => 3,
        _ => 1,
    }
}

/// Run the CLI end to end; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(rendered) => {
            if let Some(note) = &rendered.note {
                eprintln!("{note}");
            }
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &rendered.output)
                    .map_err(|e| Error::Parameter(format!("cannot write {}: {e}", path.display()))),
                None => std::io::stdout()
                    .write_all(rendered.output.as_bytes())
                    .map_err(|e| Error::Internal(format!("stdout write failed: {e}"))),
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("error: {e}");
                    exit_code(&e)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
