//! Parameterized families of fibered varieties over curves, exact
//! numerical invariants, and the slope-verdict engine.
//!
//! Four families are built from the tower constructors:
//!
//! * `abelian-base` — `X → B` of total dimension `n ≥ 3`: a double cover
//!   of `P(O ⊕ O(−2D))` over `Z = A × B`, where `A` is an abelian
//!   `(n−2)`-fold with `h⁰(D_A) = chi_A`, `deg D_B = deg_db`, and
//!   `D = p_A*D_A + p_B*D_B`. The slope inequality fails on every member.
//! * `p1-base` — the same shape at `n = 3` with `A = P¹` and
//!   `D_A` of degree `deg_da ≥ 3` (at `deg_da = 2` the fiber canonical
//!   degenerates to nef-and-big and a warning is emitted).
//! * `kobayashi12` — a threefold whose minimal model `X` fibers in
//!   `(1,2)`-surfaces with slope exactly `4/3`: a double cover `X'` of
//!   `P(O ⊕ O(−2D))` over the ruled surface `S = P(O_B ⊕ O_B(−D_B))`,
//!   `deg D_B = e ≥ 3`, `D = B₀ + eC`. The minimal model is never
//!   constructed; every invariant of `X` is read off `X'` through the
//!   pullback `M = K_{X'} − Σ` of `K_X`, where `Σ` is half the pullback
//!   of the bundle section.
//! * `surf23` — a double cover of `P² × B` branched along a divisor in
//!   `|2(4h + D₂)|`, fibered in `(2,3)`-surfaces with slope exactly `2`.
//!
//! [`invariants`] evaluates `K^n_{X/B}`, `K^n_X`, `deg f_*ω_{X/B}`,
//! `K_F^{n−1}`, `p_g(F)`, and (for families whose fibers have `q = 0`)
//! `χ(X, ω_X)`, cross-checking the pushforward rank against `p_g(F)` and
//! the relative/absolute identity
//! `K^n_X = K^n_{X/B} + n(2g−2)·K_F^{n−1}`. All comparisons performed by
//! the verdict functions are exact: integers are arbitrary-precision and
//! slopes are exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bundle::{chi_total, pushforward_to_base, rank_and_degree, H0Table};
use crate::error::{Error, Result};
use crate::ring::GradedClass;
use crate::tower::{CoverDescriptor, TowerVariety};

/// The four built-in families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    AbelianBase,
    P1Base,
    Kobayashi12,
    Surf23,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::AbelianBase => "abelian-base",
            FamilyKind::P1Base => "p1-base",
            FamilyKind::Kobayashi12 => "kobayashi12",
            FamilyKind::Surf23 => "surf23",
        }
    }

    pub fn parse(s: &str) -> Option<FamilyKind> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "abelian-base" | "abelianbase" => Some(FamilyKind::AbelianBase),
            "p1-base" | "p1base" => Some(FamilyKind::P1Base),
            "kobayashi12" | "kobayashi-12" => Some(FamilyKind::Kobayashi12),
            "surf23" | "surf-23" => Some(FamilyKind::Surf23),
            _ => None,
        }
    }
}

/// Parameters selecting one member of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyParams {
    /// Total dimension `n ≥ 3`, base genus `g`, `chi_A = h⁰(A, D_A) ≥ 1`,
    /// `deg D_B ≥ 1`.
    AbelianBase {
        n: u32,
        g: u64,
        chi_a: u64,
        deg_db: u64,
    },
    /// Base genus `g`, `deg D_A ≥ 2` on `P¹` (warns at 2, requires ≥ 3 for
    /// an ample fiber canonical), `deg D_B ≥ 1`.
    P1Base { g: u64, deg_da: u64, deg_db: u64 },
    /// Base genus `g`, ruling twist degree `e ≥ 3`.
    Kobayashi12 { g: u64, e: u64 },
    /// Base genus `g`, `deg D₂ ≥ 1`.
    Surf23 { g: u64, deg_d2: u64 },
}

impl FamilyParams {
    pub fn kind(&self) -> FamilyKind {
        match self {
            FamilyParams::AbelianBase { .. } => FamilyKind::AbelianBase,
            FamilyParams::P1Base { .. } => FamilyKind::P1Base,
            FamilyParams::Kobayashi12 { .. } => FamilyKind::Kobayashi12,
            FamilyParams::Surf23 { .. } => FamilyKind::Surf23,
        }
    }

    /// Base genus.
    pub fn genus(&self) -> u64 {
        match *self {
            FamilyParams::AbelianBase { g, .. }
            | FamilyParams::P1Base { g, .. }
            | FamilyParams::Kobayashi12 { g, .. }
            | FamilyParams::Surf23 { g, .. } => g,
        }
    }

    /// Parameter names and values in canonical order, for rendering and
    /// for sweep-axis enumeration.
    pub fn pairs(&self) -> Vec<(&'static str, u64)> {
        match *self {
            FamilyParams::AbelianBase {
                n,
                g,
                chi_a,
                deg_db,
            } => {
                vec![
                    ("n", u64::from(n)),
                    ("g", g),
                    ("chi_a", chi_a),
                    ("deg_db", deg_db),
                ]
            }
            FamilyParams::P1Base { g, deg_da, deg_db } => {
                vec![("g", g), ("deg_da", deg_da), ("deg_db", deg_db)]
            }
            FamilyParams::Kobayashi12 { g, e } => vec![("g", g), ("e", e)],
            FamilyParams::Surf23 { g, deg_d2 } => vec![("g", g), ("deg_d2", deg_d2)],
        }
    }

    /// Range-check the parameters. Returns the warnings the combination
    /// triggers; violations are `Parameter` errors.
    pub fn validate(&self) -> Result<Vec<String>> {
        let mut warnings = Vec::new();
        match *self {
            FamilyParams::AbelianBase {
                n, chi_a, deg_db, ..
            } => {
                if n < 3 {
                    return Err(Error::Parameter(
                        "abelian-base: the total dimension n must be at least 3".into(),
                    ));
                }
                if chi_a < 1 {
                    return Err(Error::Parameter(
                        "abelian-base: chi_a must be at least 1".into(),
                    ));
                }
                if deg_db < 1 {
                    return Err(Error::Parameter(
                        "abelian-base: deg_db must be at least 1".into(),
                    ));
                }
            }
            FamilyParams::P1Base { deg_da, deg_db, .. } => {
                if deg_da < 2 {
                    return Err(Error::Parameter(
                        "p1-base: deg_da must be at least 2 (the branch data needs an ample \
                         twist); the fiber canonical is ample only for deg_da >= 3"
                            .into(),
                    ));
                }
                if deg_da == 2 {
                    warnings.push(
                        "deg_da = 2: the fiber canonical class is nef and big, but not ample"
                            .into(),
                    );
                }
                if deg_db < 1 {
                    return Err(Error::Parameter(
                        "p1-base: deg_db must be at least 1".into(),
                    ));
                }
            }
            FamilyParams::Kobayashi12 { e, .. } => {
                if e < 3 {
                    return Err(Error::Parameter(
                        "kobayashi12: e must be at least 3 for the contraction to produce a \
                         minimal model with ample canonical class"
                            .into(),
                    ));
                }
            }
            FamilyParams::Surf23 { deg_d2, .. } => {
                if deg_d2 < 1 {
                    return Err(Error::Parameter("surf23: deg_d2 must be at least 1".into()));
                }
            }
        }
        Ok(warnings)
    }
}

/// A constructed family member: the total-space tower, its fiber tower,
/// and the classes whose powers carry the canonical invariants.
#[derive(Debug, Clone)]
pub struct Family {
    pub params: FamilyParams,
    pub total: TowerVariety,
    pub fiber: TowerVariety,
    /// Class computing `K_X` of the (possibly contracted) minimal model:
    /// the canonical class itself except for `kobayashi12`, where it is
    /// the pullback `M = K_{X'} − Σ`.
    pub abs_class: GradedClass,
    /// `abs_class − f*K_B`, computing `K_{X/B}`.
    pub rel_class: GradedClass,
    /// Whether the fibers satisfy `q(F) = h¹(F, O_F) = 0`, which makes
    /// `χ(X, ω_X)` computable from the pushforward rank and degree.
    pub q_fiber_zero: bool,
    pub warnings: Vec<String>,
}

fn to_i64(v: u64, what: &str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Parameter(format!("{what} is too large")))
}

/// Build the tower, fiber tower, and distinguished classes for one
/// family member.
pub fn build_family(params: &FamilyParams) -> Result<Family> {
    let warnings = params.validate()?;
    let (total, abs_class) = match *params {
        FamilyParams::AbelianBase {
            n,
            g,
            chi_a,
            deg_db,
        } => {
            let a = TowerVariety::abelian(n - 2, chi_a, "theta")?;
            let b = TowerVariety::curve(g, "c")?;
            let z = TowerVariety::product(&a, &b)?;
            let d = GradedClass::linear(&[(0, 1), (1, to_i64(deg_db, "deg_db")?)]);
            let y = TowerVariety::proj_bundle_rank2(&z, &d.scale_int(2), "xi")?;
            let half = &GradedClass::generator(2).scale_int(3) + &d.scale_int(5);
            let x = TowerVariety::double_cover(&y, &CoverDescriptor { half_branch: half })?;
            let k = x.canonical().clone();
            (x, k)
        }
        FamilyParams::P1Base { g, deg_da, deg_db } => {
            let a = TowerVariety::projective_space(1, "h")?;
            let b = TowerVariety::curve(g, "c")?;
            let z = TowerVariety::product(&a, &b)?;
            let d = GradedClass::linear(&[
                (0, to_i64(deg_da, "deg_da")?),
                (1, to_i64(deg_db, "deg_db")?),
            ]);
            let y = TowerVariety::proj_bundle_rank2(&z, &d.scale_int(2), "xi")?;
            let half = &GradedClass::generator(2).scale_int(3) + &d.scale_int(5);
            let x = TowerVariety::double_cover(&y, &CoverDescriptor { half_branch: half })?;
            let k = x.canonical().clone();
            (x, k)
        }
        FamilyParams::Kobayashi12 { g, e } => {
            let b = TowerVariety::curve(g, "c")?;
            let e_i = to_i64(e, "e")?;
            let s = TowerVariety::proj_bundle_rank2(
                &b,
                &GradedClass::generator(0).scale_int(e_i),
                "b0",
            )?;
            let d = GradedClass::linear(&[(1, 1), (0, e_i)]);
            let y = TowerVariety::proj_bundle_rank2(&s, &d.scale_int(2), "xi")?;
            let half = &GradedClass::generator(2).scale_int(3) + &d.scale_int(5);
            let x = TowerVariety::double_cover(&y, &CoverDescriptor { half_branch: half })?;
            // Half the pullback of the section is the exceptional locus of
            // the contraction to the minimal model; subtracting it from
            // K_{X'} pulls back the minimal model's canonical class.
            let sigma =
                GradedClass::generator(2).scale(&BigRational::new(BigInt::one(), BigInt::from(2)));
            let m = x.canonical() - &sigma;
            (x, m)
        }
        FamilyParams::Surf23 { g, deg_d2 } => {
            let p2 = TowerVariety::projective_space(2, "h")?;
            let b = TowerVariety::curve(g, "c")?;
            let z = TowerVariety::product(&p2, &b)?;
            let d = GradedClass::linear(&[(0, 4), (1, to_i64(deg_d2, "deg_d2")?)]);
            let x = TowerVariety::double_cover(&z, &CoverDescriptor { half_branch: d })?;
            let k = x.canonical().clone();
            (x, k)
        }
    };
    let fiber = total.fiber()?;
    let base_point = total
        .base_point_class()
        .ok_or_else(|| Error::Internal("family tower lost its base curve".into()))?;
    let genus = params.genus();
    let rel_class =
        &abs_class - &base_point.scale(&BigRational::from_integer(BigInt::from(genus) * 2 - 2));
    let q_fiber_zero = !matches!(params, FamilyParams::AbelianBase { .. });
    Ok(Family {
        params: *params,
        total,
        fiber,
        abs_class,
        rel_class,
        q_fiber_zero,
        warnings,
    })
}

/// Outcome of one exact comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerdictStatus {
    Holds,
    Violated,
    Equality,
    Inapplicable,
}

impl VerdictStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictStatus::Holds => "HOLDS",
            VerdictStatus::Violated => "VIOLATED",
            VerdictStatus::Equality => "EQUALITY",
            VerdictStatus::Inapplicable => "INAPPLICABLE",
        }
    }

    pub fn parse(s: &str) -> Option<VerdictStatus> {
        match s {
            "HOLDS" => Some(VerdictStatus::Holds),
            "VIOLATED" => Some(VerdictStatus::Violated),
            "EQUALITY" => Some(VerdictStatus::Equality),
            "INAPPLICABLE" => Some(VerdictStatus::Inapplicable),
            _ => None,
        }
    }
}

/// A named comparison with its exact outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub name: String,
    pub status: VerdictStatus,
    pub detail: String,
}

/// All exact numerical invariants of one family member, with verdicts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantsReport {
    pub params: FamilyParams,
    /// Total space dimension.
    pub n: u32,
    pub g: u64,
    /// `K^n_{X/B}`.
    pub k_rel_n: BigInt,
    /// `K^n_X` (of the minimal model).
    pub k_abs_n: BigInt,
    /// `rank f_*ω_{X/B}` — equal to `p_g(F)`, asserted internally.
    pub rank_push: BigInt,
    /// `deg f_*ω_{X/B}`.
    pub deg_push: BigInt,
    /// `K_F^{n−1}` of the general fiber.
    pub kf_top: BigInt,
    /// `p_g(F) = h⁰(F, K_F)`.
    pub pg_f: BigInt,
    /// `(K_F², p_g(F))` when the fibers are surfaces (`n = 3`).
    pub kf2_pg_pair: Option<(BigInt, BigInt)>,
    /// `χ(X, ω_X)`, computed only when the fibers satisfy `q(F) = 0`.
    pub chi: Option<BigInt>,
    /// `K^n_{X/B} / deg f_*ω_{X/B}`, absent when the degree vanishes.
    pub slope: Option<BigRational>,
    pub verdicts: Vec<Verdict>,
    /// Internal consistency identities verified while computing.
    pub checks: Vec<String>,
    pub warnings: Vec<String>,
}

fn as_integer(x: BigRational, what: &str) -> Result<BigInt> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(Error::Internal(format!(
            "{what} evaluated to the non-integer {x}"
        )))
    }
}

/// Compute the full exact invariants report for one family member.
pub fn invariants(params: &FamilyParams) -> Result<InvariantsReport> {
    let family = build_family(params)?;
    let mut checks = Vec::new();

    let ring = family.total.ring();
    let n = ring.dim();
    let g = params.genus();

    let k_rel_n = as_integer(
        ring.integrate(&ring.power(&family.rel_class, n)?)?,
        "K_rel^n",
    )?;
    let k_abs_n = as_integer(
        ring.integrate(&ring.power(&family.abs_class, n)?)?,
        "K_abs^n",
    )?;

    let fiber_ring = family.fiber.ring();
    let kf_class = family.total.restrict_to_fiber(&family.abs_class)?;
    let kf_top = as_integer(
        fiber_ring.integrate(&fiber_ring.power(&kf_class, n - 1)?)?,
        "K_F^(n-1)",
    )?;

    let table = H0Table::new();
    let pg_f = table.h0(&family.fiber, family.fiber.canonical())?;

    let push = pushforward_to_base(&family.total, &table)?;
    for s in push.summands() {
        let d = s.class.coefficient(&crate::ring::Monomial::generator(0));
        if d.is_negative() {
            return Err(Error::Internal(format!(
                "pushforward summand of negative degree {d}: semipositivity failed"
            )));
        }
    }
    checks.push("pushforward summand degrees are nonnegative".into());
    let (rank_push, deg_push) = rank_and_degree(&push)?;

    if rank_push != pg_f {
        return Err(Error::Internal(format!(
            "pushforward rank {rank_push} disagrees with p_g(F) = {pg_f}"
        )));
    }
    checks.push("pushforward rank equals p_g(F)".into());

    let expected_abs = &k_rel_n + BigInt::from(n) * (BigInt::from(g) * 2 - 2) * &kf_top;
    if k_abs_n != expected_abs {
        return Err(Error::Internal(format!(
            "K^n identity failed: K_abs^n = {k_abs_n}, but K_rel^n + n(2g-2)K_F^(n-1) = \
             {expected_abs}"
        )));
    }
    checks.push("K_abs^n = K_rel^n + n(2g-2)·K_F^(n-1)".into());

    let slope = if deg_push.is_zero() {
        None
    } else {
        Some(BigRational::new(k_rel_n.clone(), deg_push.clone()))
    };
    let chi = family
        .q_fiber_zero
        .then(|| chi_total(&rank_push, &deg_push, g));
    let kf2_pg_pair = (n == 3).then(|| (kf_top.clone(), pg_f.clone()));

    let mut report = InvariantsReport {
        params: *params,
        n,
        g,
        k_rel_n,
        k_abs_n,
        rank_push,
        deg_push,
        kf_top,
        pg_f,
        kf2_pg_pair,
        chi,
        slope,
        verdicts: Vec::new(),
        checks,
        warnings: family.warnings.clone(),
    };

    let mut verdicts = vec![verdict_slope_inequality(&report)];
    if report.n == 3 {
        verdicts.extend(verdict_sharp_bounds(&report)?);
    }
    verdicts.push(verdict_noether_severi(&report));
    report.verdicts = verdicts;
    Ok(report)
}

fn ratio_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The slope inequality `K^n_{X/B} ≥ n·(K_F^{n−1}/p_g(F))·deg f_*ω_{X/B}`,
/// compared exactly by cross-multiplication.
pub fn verdict_slope_inequality(r: &InvariantsReport) -> Verdict {
    let name = "slope_inequality".to_string();
    if r.pg_f <= BigInt::zero() {
        return Verdict {
            name,
            status: VerdictStatus::Inapplicable,
            detail: "requires p_g(F) > 0".into(),
        };
    }
    let lhs = &r.k_rel_n * &r.pg_f;
    let rhs = BigInt::from(r.n) * &r.kf_top * &r.deg_push;
    let status = match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => VerdictStatus::Holds,
        std::cmp::Ordering::Equal => VerdictStatus::Equality,
        std::cmp::Ordering::Less => VerdictStatus::Violated,
    };
    Verdict {
        name,
        status,
        detail: format!("K_rel^n · pg = {lhs} vs n · KF^(n-1) · deg = {rhs}"),
    }
}

/// Closed-form violation test for the abelian-base family at total
/// dimension `n`: the slope inequality fails exactly when
/// `(n−1)(3^n − 3^{n−2}) − 3^{2n−2} + 1 < 0`.
pub fn violation_criterion_abelian(n: u32) -> Result<bool> {
    if n < 3 {
        return Err(Error::Parameter(
            "violation criterion: the total dimension n must be at least 3".into(),
        ));
    }
    let three = BigInt::from(3);
    let p_n = num_traits::pow(three.clone(), n as usize);
    let p_nm2 = num_traits::pow(three.clone(), n as usize - 2);
    let p_2nm2 = num_traits::pow(three, 2 * n as usize - 2);
    let value = BigInt::from(n - 1) * (p_n - p_nm2) - p_2nm2 + 1;
    Ok(value < BigInt::zero())
}

fn compare_slope_to_bound(slope: &BigRational, bound: &BigRational) -> VerdictStatus {
    match slope.cmp(bound) {
        std::cmp::Ordering::Greater => VerdictStatus::Holds,
        std::cmp::Ordering::Equal => VerdictStatus::Equality,
        std::cmp::Ordering::Less => VerdictStatus::Violated,
    }
}

/// The three sharp lower bounds for threefold fibrations: the universal
/// `4/3`, the bound `2` for fibers other than `(1,2)`-surfaces, and the
/// fiber-dependent bound `4K_F²/(K_F²+4)`. Only meaningful at `n = 3`
/// with a positive pushforward degree.
pub fn verdict_sharp_bounds(r: &InvariantsReport) -> Result<Vec<Verdict>> {
    if r.n != 3 || r.slope.is_none() {
        return Ok(vec![Verdict {
            name: "sharp_bounds".into(),
            status: VerdictStatus::Inapplicable,
            detail: "sharp slope bounds apply to threefold fibrations with deg f_*ω > 0".into(),
        }]);
    }
    let slope = r.slope.clone().expect("checked above");
    let (kf2, pg) = r
        .kf2_pg_pair
        .clone()
        .expect("threefold reports carry the surface pair");
    let is_12_surface = kf2 == BigInt::one() && pg == BigInt::from(2);
    let mut verdicts = Vec::new();

    let b43 = BigRational::new(BigInt::from(4), BigInt::from(3));
    let status = compare_slope_to_bound(&slope, &b43);
    if status == VerdictStatus::Equality && !is_12_surface {
        return Err(Error::Internal(format!(
            "slope 4/3 attained by a fiber with (K_F², p_g) = ({kf2}, {pg}), not (1, 2)"
        )));
    }
    let mut detail = format!("slope = {} vs 4/3", ratio_string(&slope));
    if status == VerdictStatus::Equality {
        detail.push_str("; equality attained, fiber type (K_F², p_g) = (1, 2)");
    }
    verdicts.push(Verdict {
        name: "slope_bound_4_3".into(),
        status,
        detail,
    });

    if is_12_surface {
        verdicts.push(Verdict {
            name: "slope_bound_2".into(),
            status: VerdictStatus::Inapplicable,
            detail: "the bound 2 excludes (1,2)-surface fibers".into(),
        });
    } else {
        let two = BigRational::from_integer(BigInt::from(2));
        verdicts.push(Verdict {
            name: "slope_bound_2".into(),
            status: compare_slope_to_bound(&slope, &two),
            detail: format!("slope = {} vs 2", ratio_string(&slope)),
        });
    }

    let fiberwise = BigRational::new(BigInt::from(4) * &kf2, &kf2 + BigInt::from(4));
    verdicts.push(Verdict {
        name: "slope_bound_fiberwise".into(),
        status: compare_slope_to_bound(&slope, &fiberwise),
        detail: format!(
            "slope = {} vs 4·K_F²/(K_F²+4) = {}",
            ratio_string(&slope),
            ratio_string(&fiberwise)
        ),
    });
    Ok(verdicts)
}

/// The Noether–Severi-type comparison `K³_X ≥ 2χ(X, ω_X)` for irregular
/// threefolds (`g ≥ 1`), with the `(1,2)`-surface-fiber exception where
/// the sharp constant drops to `4/3`.
pub fn verdict_noether_severi(r: &InvariantsReport) -> Verdict {
    let name = "noether_severi".to_string();
    let Some(chi) = &r.chi else {
        return Verdict {
            name,
            status: VerdictStatus::Inapplicable,
            detail: "χ(X, ω_X) is not computed for this family (fibers have q > 0)".into(),
        };
    };
    if r.g < 1 {
        return Verdict {
            name,
            status: VerdictStatus::Inapplicable,
            detail: "the comparison concerns irregular total spaces; needs base genus ≥ 1".into(),
        };
    }
    let is_12_surface = r
        .kf2_pg_pair
        .as_ref()
        .is_some_and(|(kf2, pg)| *kf2 == BigInt::one() && *pg == BigInt::from(2));
    let (lhs, rhs, label) = if is_12_surface {
        (
            &r.k_abs_n * 3,
            chi * 4,
            "3·K_X^n vs 4·χ ((1,2)-fiber exception)",
        )
    } else {
        (r.k_abs_n.clone(), chi * 2, "K_X^n vs 2·χ")
    };
    let status = match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => VerdictStatus::Holds,
        std::cmp::Ordering::Equal => VerdictStatus::Equality,
        std::cmp::Ordering::Less => VerdictStatus::Violated,
    };
    Verdict {
        name,
        status,
        detail: format!("{label}: {lhs} vs {rhs}"),
    }
}

/// One row of the slope-bound comparison table for surface fibers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Comparison {
    pub kf2: u64,
    pub pg: u64,
    /// The previously known lower bound for the slope at this fiber type.
    pub previous: BigRational,
    /// The sharp lower bound established here.
    pub ours: BigRational,
    /// Whether the two bounds coincide (no improvement at this type).
    pub coincide: bool,
}

/// Look up the previous and improved slope lower bounds for fibers with
/// invariants `(K_F², p_g)`. The pair must satisfy the Noether
/// inequality `K_F² ≥ 2p_g − 4`.
pub fn table1_bounds(kf2: u64, pg: u64) -> Result<Table1Comparison> {
    if kf2 < 1 {
        return Err(Error::Parameter("K_F² must be at least 1".into()));
    }
    let noether_rhs = 2 * i128::from(pg) - 4;
    if i128::from(kf2) < noether_rhs {
        return Err(Error::Domain(format!(
            "(K_F², p_g) = ({kf2}, {pg}) violates the Noether inequality K_F² ≥ 2p_g − 4"
        )));
    }
    let (previous, ours) = match kf2 {
        1 => (
            BigRational::one(),
            BigRational::new(BigInt::from(4), BigInt::from(3)),
        ),
        2 | 3 => (
            BigRational::new(BigInt::from(4), BigInt::from(3)),
            BigRational::from_integer(BigInt::from(2)),
        ),
        _ => {
            if pg == 0 {
                return Err(Error::Domain(
                    "the previous bound 4(p_g − 2)/p_g is undefined at p_g = 0".into(),
                ));
            }
            (
                BigRational::new(BigInt::from(4) * (BigInt::from(pg) - 2), BigInt::from(pg)),
                BigRational::new(BigInt::from(4) * BigInt::from(kf2), BigInt::from(kf2) + 4),
            )
        }
    };
    let coincide = previous == ours;
    Ok(Table1Comparison {
        kf2,
        pg,
        previous,
        ours,
        coincide,
    })
}
