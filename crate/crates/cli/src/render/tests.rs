use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use slopekit_core::lab::{invariants, table1_bounds, FamilyParams};
use slopekit_core::Error;

use super::*;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn kobayashi_report() -> InvariantsReport {
    invariants(&FamilyParams::Kobayashi12 { g: 1, e: 3 }).unwrap()
}

#[test]
fn rational_wire_is_exact_with_informational_decimal() {
    let w = RationalWire::from_rational(&rat(26, 5));
    assert_eq!(w.num, "26");
    assert_eq!(w.den, "5");
    assert_eq!(w.decimal_approx, "5.200000");
    assert_eq!(w.to_rational().unwrap(), rat(26, 5));
}

#[test]
fn decimal_rendering_rounds_half_away_from_zero() {
    assert_eq!(
        RationalWire::from_rational(&rat(1, 3)).decimal_approx,
        "0.333333"
    );
    assert_eq!(
        RationalWire::from_rational(&rat(2, 3)).decimal_approx,
        "0.666667"
    );
    assert_eq!(
        RationalWire::from_rational(&rat(-2, 3)).decimal_approx,
        "-0.666667"
    );
    assert_eq!(
        RationalWire::from_rational(&rat(7, 1)).decimal_approx,
        "7.000000"
    );
    assert_eq!(
        RationalWire::from_rational(&rat(1, 2)).decimal_approx,
        "0.500000"
    );
    assert_eq!(
        RationalWire::from_rational(&rat(1, 2_000_000)).decimal_approx,
        "0.000001"
    );
}

#[test]
fn rational_wire_rejects_garbage() {
    let w = RationalWire {
        num: "x".into(),
        den: "3".into(),
        decimal_approx: String::new(),
    };
    assert!(matches!(w.to_rational(), Err(Error::Parameter(_))));
    let w = RationalWire {
        num: "1".into(),
        den: "0".into(),
        decimal_approx: String::new(),
    };
    assert!(matches!(w.to_rational(), Err(Error::Parameter(_))));
}

#[test]
fn ratio_display_prefers_integers() {
    assert_eq!(ratio_display(&rat(26, 5)), "26/5");
    assert_eq!(ratio_display(&rat(4, 2)), "2");
}

#[test]
fn report_wire_round_trips_exactly() {
    let r = kobayashi_report();
    let wire = ReportWire::from_report(&r);
    assert_eq!(wire.schema_version, SCHEMA_VERSION);
    let back = wire.to_report().unwrap();
    assert_eq!(back, r);
}

#[test]
fn report_json_round_trips_through_text() {
    let r = invariants(&FamilyParams::AbelianBase {
        n: 4,
        g: 2,
        chi_a: 2,
        deg_db: 1,
    })
    .unwrap();
    let json = report_json(&r);
    let wire: ReportWire = serde_json::from_str(&json).unwrap();
    assert_eq!(wire.to_report().unwrap(), r);
    // No floats anywhere: every numeric field travels as a string.
    assert!(
        !json.contains("slope\": 1."),
        "rationals must not serialize as floats"
    );
}

#[test]
fn report_json_is_deterministic() {
    let r = kobayashi_report();
    assert_eq!(report_json(&r), report_json(&r));
}

#[test]
fn params_from_map_requires_exactly_the_family_axes() {
    let mut map = BTreeMap::new();
    map.insert("g".to_string(), 1u64);
    map.insert("e".to_string(), 3u64);
    assert_eq!(
        params_from_map("kobayashi12", &map).unwrap(),
        FamilyParams::Kobayashi12 { g: 1, e: 3 }
    );

    let mut missing = BTreeMap::new();
    missing.insert("g".to_string(), 1u64);
    let err = params_from_map("kobayashi12", &missing).unwrap_err();
    assert!(
        matches!(err, Error::Parameter(ref m) if m.contains("\"e\"")),
        "{err}"
    );

    map.insert("deg_d2".to_string(), 1u64);
    assert!(matches!(
        params_from_map("kobayashi12", &map),
        Err(Error::Parameter(_))
    ));
    assert!(matches!(
        params_from_map("nonsense", &map),
        Err(Error::Parameter(_))
    ));
}

#[test]
fn text_report_shows_the_headline_numbers() {
    let r = kobayashi_report();
    let text = report_text(&r);
    assert!(text.contains("kobayashi12"));
    assert!(text.contains("4/3"));
    assert!(text.contains("EQUALITY"));
    assert!(text.contains("slope"));
}

#[test]
fn csv_has_fixed_columns_for_every_family() {
    let reports = vec![
        kobayashi_report(),
        invariants(&FamilyParams::Surf23 { g: 1, deg_d2: 1 }).unwrap(),
    ];
    let csv = reports_csv(&reports).unwrap();
    let mut lines = csv.lines();
    let header = lines.next().unwrap();
    assert_eq!(header, CSV_COLUMNS.join(","));
    let kob_row = lines.next().unwrap();
    let surf_row = lines.next().unwrap();
    assert!(lines.next().is_none());

    let kob_cells: Vec<&str> = kob_row.split(',').collect();
    assert_eq!(kob_cells[0], "kobayashi12");
    let e_col = CSV_COLUMNS.iter().position(|c| *c == "e").unwrap();
    let chi_a_col = CSV_COLUMNS.iter().position(|c| *c == "chi_a").unwrap();
    assert_eq!(kob_cells[e_col], "3");
    assert_eq!(kob_cells[chi_a_col], "");
    let surf_cells: Vec<&str> = surf_row.split(',').collect();
    assert_eq!(surf_cells[0], "surf23");
    assert_eq!(surf_cells[e_col], "");
}

#[test]
fn table1_renderings_agree_on_the_numbers() {
    let row = table1_bounds(3, 1).unwrap();
    let text = table1_text(&row);
    assert!(text.contains("4/3"));
    assert!(text.contains('2'));
    assert!(text.contains("no"));

    let json = table1_json(&row);
    let wire: Table1Wire = serde_json::from_str(&json).unwrap();
    assert_eq!(wire.previous.to_rational().unwrap(), rat(4, 3));
    assert_eq!(wire.ours.to_rational().unwrap(), rat(2, 1));
    assert!(!wire.coincide);

    let csv = table1_csv(&row).unwrap();
    let data = csv.lines().nth(1).unwrap();
    assert_eq!(data, "3,1,4,3,2,1,false");
}

#[test]
fn sweep_summary_tallies_by_slope_verdict() {
    let reports = vec![
        kobayashi_report(),                                             // VIOLATED
        invariants(&FamilyParams::Surf23 { g: 0, deg_d2: 1 }).unwrap(), // EQUALITY
        invariants(&FamilyParams::Surf23 { g: 2, deg_d2: 3 }).unwrap(), // EQUALITY
    ];
    let s = SweepSummary::tally(&reports);
    assert_eq!(
        (s.points, s.holds, s.violated, s.equality, s.inapplicable),
        (3, 0, 1, 2, 0)
    );
    assert_eq!(
        s.line(),
        "summary: points=3 holds=0 violated=1 equality=2 inapplicable=0"
    );
}

#[test]
fn sweep_text_ends_with_the_summary() {
    let reports = vec![kobayashi_report()];
    let summary = SweepSummary::tally(&reports);
    let text = sweep_text(&reports, &summary);
    assert!(text.trim_end().ends_with(&summary.line()));
    assert!(text.contains("g=1 e=3"));
}
