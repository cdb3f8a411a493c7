//! Wire formats and renderers for reports: a schema-versioned JSON
//! structure in which every integer and rational is exact (big integers
//! as decimal strings, rationals as numerator/denominator pairs with a
//! non-authoritative decimal rendering), plus aligned text and
//! fixed-column CSV.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use slopekit_core::lab::{
    FamilyKind, FamilyParams, InvariantsReport, Table1Comparison, Verdict, VerdictStatus,
};
use slopekit_core::{Error, Result};

/// Version stamp carried by every structured document this crate emits.
pub const SCHEMA_VERSION: u32 = 1;

/// Output format selector shared by all subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// An exact rational: numerator and denominator as decimal strings, plus
/// a rounded decimal rendering for human convenience only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalWire {
    pub num: String,
    pub den: String,
    /// Six-decimal rounding of `num/den`; informational only — the
    /// authoritative value is the `num`/`den` pair.
    pub decimal_approx: String,
}

/// Six-decimal fixed-point rendering, rounding half away from zero.
fn decimal_approx(r: &BigRational) -> String {
    let scale = BigInt::from(1_000_000);
    let scaled = (r * BigRational::from_integer(scale.clone()))
        .round()
        .to_integer();
    let sign = if scaled.is_negative() { "-" } else { "" };
    let abs = scaled.abs();
    let int_part = &abs / &scale;
    let mut frac = (&abs % &scale).to_string();
    while frac.len() < 6 {
        frac.insert(0, '0');
    }
    format!("{sign}{int_part}.{frac}")
}

impl RationalWire {
    pub fn from_rational(r: &BigRational) -> Self {
        RationalWire {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
            decimal_approx: decimal_approx(r),
        }
    }

    pub fn to_rational(&self) -> Result<BigRational> {
        let num = parse_bigint(&self.num)?;
        let den = parse_bigint(&self.den)?;
        if den.is_zero() {
            return Err(Error::Parameter("rational with zero denominator".into()));
        }
        Ok(BigRational::new(num, den))
    }
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    BigInt::from_str(s).map_err(|e| Error::Parameter(format!("invalid integer {s:?}: {e}")))
}

/// Human-readable short form: `26/5`, or just `5` for integers.
pub fn ratio_display(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictWire {
    pub name: String,
    pub status: String,
    pub detail: String,
}

/// The full structured form of one invariants report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportWire {
    pub schema_version: u32,
    pub family: String,
    pub params: BTreeMap<String, u64>,
    pub n: u32,
    pub g: u64,
    pub k_rel_n: String,
    pub k_abs_n: String,
    pub rank_push: String,
    pub deg_push: String,
    pub kf_top: String,
    pub pg_f: String,
    pub kf2_pg_pair: Option<(String, String)>,
    pub chi: Option<String>,
    pub slope: Option<RationalWire>,
    pub verdicts: Vec<VerdictWire>,
    pub checks: Vec<String>,
    pub warnings: Vec<String>,
}

impl ReportWire {
    pub fn from_report(r: &InvariantsReport) -> Self {
        ReportWire {
            schema_version: SCHEMA_VERSION,
            family: r.params.kind().name().to_string(),
            params: r
                .params
                .pairs()
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            n: r.n,
            g: r.g,
            k_rel_n: r.k_rel_n.to_string(),
            k_abs_n: r.k_abs_n.to_string(),
            rank_push: r.rank_push.to_string(),
            deg_push: r.deg_push.to_string(),
            kf_top: r.kf_top.to_string(),
            pg_f: r.pg_f.to_string(),
            kf2_pg_pair: r
                .kf2_pg_pair
                .as_ref()
                .map(|(a, b)| (a.to_string(), b.to_string())),
            chi: r.chi.as_ref().map(|c| c.to_string()),
            slope: r.slope.as_ref().map(RationalWire::from_rational),
            verdicts: r
                .verdicts
                .iter()
                .map(|v| VerdictWire {
                    name: v.name.clone(),
                    status: v.status.as_str().to_string(),
                    detail: v.detail.clone(),
                })
                .collect(),
            checks: r.checks.clone(),
            warnings: r.warnings.clone(),
        }
    }

    /// Exact inverse of [`ReportWire::from_report`]: reconstructs the
    /// report, erroring on unknown families, malformed integers, or
    /// unknown verdict statuses.
    pub fn to_report(&self) -> Result<InvariantsReport> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Parameter(format!(
                "unsupported schema_version {} (expected {})",
                self.schema_version, SCHEMA_VERSION
            )));
        }
        let params = params_from_map(&self.family, &self.params)?;
        let verdicts = self
            .verdicts
            .iter()
            .map(|v| {
                let status = VerdictStatus::parse(&v.status).ok_or_else(|| {
                    Error::Parameter(format!("unknown verdict status {:?}", v.status))
                })?;
                Ok(Verdict {
                    name: v.name.clone(),
                    status,
                    detail: v.detail.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let kf2_pg_pair = match &self.kf2_pg_pair {
            Some((a, b)) => Some((parse_bigint(a)?, parse_bigint(b)?)),
            None => None,
        };
        Ok(InvariantsReport {
            params,
            n: self.n,
            g: self.g,
            k_rel_n: parse_bigint(&self.k_rel_n)?,
            k_abs_n: parse_bigint(&self.k_abs_n)?,
            rank_push: parse_bigint(&self.rank_push)?,
            deg_push: parse_bigint(&self.deg_push)?,
            kf_top: parse_bigint(&self.kf_top)?,
            pg_f: parse_bigint(&self.pg_f)?,
            kf2_pg_pair,
            chi: self.chi.as_deref().map(parse_bigint).transpose()?,
            slope: self
                .slope
                .as_ref()
                .map(RationalWire::to_rational)
                .transpose()?,
            verdicts,
            checks: self.checks.clone(),
            warnings: self.warnings.clone(),
        })
    }
}

/// Rebuild typed parameters from a family name and a key/value map,
/// requiring exactly the family's axes.
pub fn params_from_map(family: &str, map: &BTreeMap<String, u64>) -> Result<FamilyParams> {
    let kind = FamilyKind::parse(family)
        .ok_or_else(|| Error::Parameter(format!("unknown family {family:?}")))?;
    let axes: &[&str] = match kind {
        FamilyKind::AbelianBase => &["n", "g", "chi_a", "deg_db"],
        FamilyKind::P1Base => &["g", "deg_da", "deg_db"],
        FamilyKind::Kobayashi12 => &["g", "e"],
        FamilyKind::Surf23 => &["g", "deg_d2"],
    };
    for key in map.keys() {
        if !axes.contains(&key.as_str()) {
            return Err(Error::Parameter(format!(
                "parameter {key:?} does not apply to family {}",
                kind.name()
            )));
        }
    }
    let get = |key: &str| -> Result<u64> {
        map.get(key).copied().ok_or_else(|| {
            Error::Parameter(format!("family {} requires parameter {key:?}", kind.name()))
        })
    };
    Ok(match kind {
        FamilyKind::AbelianBase => FamilyParams::AbelianBase {
            n: u32::try_from(get("n")?).map_err(|_| Error::Parameter("n is too large".into()))?,
            g: get("g")?,
            chi_a: get("chi_a")?,
            deg_db: get("deg_db")?,
        },
        FamilyKind::P1Base => FamilyParams::P1Base {
            g: get("g")?,
            deg_da: get("deg_da")?,
            deg_db: get("deg_db")?,
        },
        FamilyKind::Kobayashi12 => FamilyParams::Kobayashi12 {
            g: get("g")?,
            e: get("e")?,
        },
        FamilyKind::Surf23 => FamilyParams::Surf23 {
            g: get("g")?,
            deg_d2: get("deg_d2")?,
        },
    })
}

fn params_inline(r: &InvariantsReport) -> String {
    r.params
        .pairs()
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Aligned human-readable rendering of one report.
pub fn report_text(r: &InvariantsReport) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: String| {
        let _ = writeln!(out, "{k:<14}{v}");
    };
    line("family", r.params.kind().name().to_string());
    line("params", params_inline(r));
    line("n", r.n.to_string());
    line("k_rel_n", r.k_rel_n.to_string());
    line("k_abs_n", r.k_abs_n.to_string());
    line("rank_push", r.rank_push.to_string());
    line("deg_push", r.deg_push.to_string());
    line("kf_top", r.kf_top.to_string());
    line("pg_f", r.pg_f.to_string());
    if let Some((kf2, pg)) = &r.kf2_pg_pair {
        line("fiber_type", format!("({kf2}, {pg})"));
    }
    if let Some(chi) = &r.chi {
        line("chi", chi.to_string());
    }
    match &r.slope {
        Some(s) => line(
            "slope",
            format!("{} (~{})", ratio_display(s), decimal_approx(s)),
        ),
        None => line("slope", "undefined (deg_push = 0)".into()),
    }
    out.push_str("verdicts\n");
    for v in &r.verdicts {
        let _ = writeln!(out, "  {:<22}{:<14}{}", v.name, v.status.as_str(), v.detail);
    }
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

/// Pretty JSON rendering of one report (trailing newline included).
pub fn report_json(r: &InvariantsReport) -> String {
    let wire = ReportWire::from_report(r);
    let mut s = serde_json::to_string_pretty(&wire).expect("report serializes");
    s.push('\n');
    s
}

/// The fixed CSV column set: a superset of all family parameters, so
/// every family writes the same header.
pub const CSV_COLUMNS: [&str; 26] = [
    "family",
    "n",
    "g",
    "chi_a",
    "deg_db",
    "deg_da",
    "deg_d2",
    "e",
    "k_rel_n",
    "k_abs_n",
    "rank_push",
    "deg_push",
    "kf_top",
    "pg_f",
    "kf2",
    "pg",
    "chi",
    "slope_num",
    "slope_den",
    "slope_decimal_approx",
    "slope_inequality",
    "slope_bound_4_3",
    "slope_bound_2",
    "slope_bound_fiberwise",
    "noether_severi",
    "warnings",
];

fn verdict_cell(r: &InvariantsReport, name: &str) -> String {
    r.verdicts
        .iter()
        .find(|v| v.name == name)
        .map(|v| v.status.as_str().to_string())
        .unwrap_or_default()
}

fn csv_row(r: &InvariantsReport) -> Vec<String> {
    let params: BTreeMap<&str, u64> = r.params.pairs().into_iter().collect();
    let param_cell = |key: &str| params.get(key).map(|v| v.to_string()).unwrap_or_default();
    let (kf2, pg) = match &r.kf2_pg_pair {
        Some((a, b)) => (a.to_string(), b.to_string()),
        None => (String::new(), String::new()),
    };
    let (slope_num, slope_den, slope_dec) = match &r.slope {
        Some(s) => (
            s.numer().to_string(),
            s.denom().to_string(),
            decimal_approx(s),
        ),
        None => (String::new(), String::new(), String::new()),
    };
    vec![
        r.params.kind().name().to_string(),
        r.n.to_string(),
        r.g.to_string(),
        param_cell("chi_a"),
        param_cell("deg_db"),
        param_cell("deg_da"),
        param_cell("deg_d2"),
        param_cell("e"),
        r.k_rel_n.to_string(),
        r.k_abs_n.to_string(),
        r.rank_push.to_string(),
        r.deg_push.to_string(),
        r.kf_top.to_string(),
        r.pg_f.to_string(),
        kf2,
        pg,
        r.chi.as_ref().map(|c| c.to_string()).unwrap_or_default(),
        slope_num,
        slope_den,
        slope_dec,
        verdict_cell(r, "slope_inequality"),
        verdict_cell(r, "slope_bound_4_3"),
        verdict_cell(r, "slope_bound_2"),
        verdict_cell(r, "slope_bound_fiberwise"),
        verdict_cell(r, "noether_severi"),
        r.warnings.join("; "),
    ]
}

/// CSV rendering (header plus one row per report).
pub fn reports_csv(reports: &[InvariantsReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_COLUMNS)
        .map_err(|e| Error::Internal(format!("csv write failed: {e}")))?;
    for r in reports {
        w.write_record(csv_row(r))
            .map_err(|e| Error::Internal(format!("csv write failed: {e}")))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Internal(format!("csv flush failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(format!("csv not utf-8: {e}")))
}

/// Structured form of one bounds-table comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Wire {
    pub schema_version: u32,
    pub kf2: u64,
    pub pg: u64,
    pub previous: RationalWire,
    pub ours: RationalWire,
    pub coincide: bool,
}

impl Table1Wire {
    pub fn from_comparison(c: &Table1Comparison) -> Self {
        Table1Wire {
            schema_version: SCHEMA_VERSION,
            kf2: c.kf2,
            pg: c.pg,
            previous: RationalWire::from_rational(&c.previous),
            ours: RationalWire::from_rational(&c.ours),
            coincide: c.coincide,
        }
    }
}

/// Aligned text table for a bounds comparison.
pub fn table1_text(c: &Table1Comparison) -> String {
    let prev = ratio_display(&c.previous);
    let ours = ratio_display(&c.ours);
    let coincide = if c.coincide { "yes" } else { "no" };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<7}{:<5}{:<10}{:<10}coincide",
        "kf2", "pg", "previous", "ours"
    );
    let _ = writeln!(
        out,
        "{:<7}{:<5}{:<10}{:<10}{}",
        c.kf2, c.pg, prev, ours, coincide
    );
    out
}

pub fn table1_json(c: &Table1Comparison) -> String {
    let mut s =
        serde_json::to_string_pretty(&Table1Wire::from_comparison(c)).expect("table serializes");
    s.push('\n');
    s
}

pub fn table1_csv(c: &Table1Comparison) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "kf2",
        "pg",
        "previous_num",
        "previous_den",
        "ours_num",
        "ours_den",
        "coincide",
    ])
    .map_err(|e| Error::Internal(format!("csv write failed: {e}")))?;
    w.write_record([
        c.kf2.to_string(),
        c.pg.to_string(),
        c.previous.numer().to_string(),
        c.previous.denom().to_string(),
        c.ours.numer().to_string(),
        c.ours.denom().to_string(),
        c.coincide.to_string(),
    ])
    .map_err(|e| Error::Internal(format!("csv write failed: {e}")))?;
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Internal(format!("csv flush failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(format!("csv not utf-8: {e}")))
}

/// Verdict tallies over a sweep, keyed by the slope-inequality status.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub points: u64,
    pub holds: u64,
    pub violated: u64,
    pub equality: u64,
    pub inapplicable: u64,
}

impl SweepSummary {
    pub fn tally(reports: &[InvariantsReport]) -> Self {
        let mut s = SweepSummary::default();
        for r in reports {
            s.points += 1;
            let status = r
                .verdicts
                .iter()
                .find(|v| v.name == "slope_inequality")
                .map(|v| v.status)
                .unwrap_or(VerdictStatus::Inapplicable);
            match status {
                VerdictStatus::Holds => s.holds += 1,
                VerdictStatus::Violated => s.violated += 1,
                VerdictStatus::Equality => s.equality += 1,
                VerdictStatus::Inapplicable => s.inapplicable += 1,
            }
        }
        s
    }

    pub fn line(&self) -> String {
        format!(
            "summary: points={} holds={} violated={} equality={} inapplicable={}",
            self.points, self.holds, self.violated, self.equality, self.inapplicable
        )
    }
}

/// Structured form of a full sweep result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepWire {
    pub schema_version: u32,
    pub family: String,
    pub rows: Vec<ReportWire>,
    pub summary: SweepSummary,
}

/// Text rendering of a sweep: one compact line per point, then the
/// summary line.
pub fn sweep_text(reports: &[InvariantsReport], summary: &SweepSummary) -> String {
    let mut out = String::new();
    for r in reports {
        let slope = match &r.slope {
            Some(s) => ratio_display(s),
            None => "-".into(),
        };
        let status = r
            .verdicts
            .iter()
            .find(|v| v.name == "slope_inequality")
            .map(|v| v.status.as_str())
            .unwrap_or("INAPPLICABLE");
        let _ = writeln!(
            out,
            "{:<40} slope={:<10} slope_inequality={}",
            params_inline(r),
            slope,
            status
        );
    }
    out.push_str(&summary.line());
    out.push('\n');
    out
}

pub fn sweep_json(
    family: FamilyKind,
    reports: &[InvariantsReport],
    summary: &SweepSummary,
) -> String {
    let wire = SweepWire {
        schema_version: SCHEMA_VERSION,
        family: family.name().to_string(),
        rows: reports.iter().map(ReportWire::from_report).collect(),
        summary: summary.clone(),
    };
    let mut s = serde_json::to_string_pretty(&wire).expect("sweep serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests;
