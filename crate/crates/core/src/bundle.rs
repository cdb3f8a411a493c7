//! Direct-image calculus: pushing the relative dualizing sheaf down a
//! tower as a formal sum of line bundles.
//!
//! The pipeline starts from `ω_{X/B}` at the top of a tower and applies
//! one rule per level until it reaches the base curve:
//!
//! * double cover branched in `|2L|`: `π_*ω_{X/B} = ω_{Y/B} ⊕ ω_{Y/B}(L)`;
//! * `P¹`-bundle `P(O ⊕ O(−L))`: a summand `aξ + π*M` pushes to
//!   `⊕_{i=0..a} O(M − iL)` when `a ≥ 0` and to zero when `a < 0`
//!   (negative fiber degree);
//! * product `A × B`-side: a summand `p_A*M_A + p_B*M_B` pushes to
//!   `O(M_B)` with multiplicity `h⁰(A, M_A)`.
//!
//! The `h⁰` multiplicities come from [`H0Table`], a fixed rule table:
//! Riemann–Roch on curves in the vanishing range, `h⁰(mθ) = m^d·chi` on
//! a polarized abelian `d`-fold for `m ≥ 1`, and
//! `h⁰(O(d)) = binom(d+r, r)` on `P^r` for `d ≥ 0`. Higher direct images
//! are never computed; the only fact used about them is that a negative
//! fiber degree kills the zeroth pushforward.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{GradedClass, Monomial};
use crate::tower::{Level, TowerVariety};

/// Largest fiber degree `a` a bundle summand `aξ + π*M` may carry before
/// the expansion `⊕_{i=0..a}` is refused as a capacity error.
const MAX_FIBER_DEGREE: usize = 10_000;

/// A line bundle class with a multiplicity, one direct summand of a
/// formal direct-sum decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub class: GradedClass,
    pub multiplicity: BigInt,
}

/// A formal direct sum of line bundles `⊕ O(class)^{⊕multiplicity}` on a
/// carrier tower.
#[derive(Debug, Clone)]
pub struct BundleSum {
    carrier: TowerVariety,
    summands: Vec<Summand>,
}

impl BundleSum {
    pub fn new(carrier: TowerVariety, summands: Vec<Summand>) -> Result<Self> {
        for s in &summands {
            carrier.ring().check_class(&s.class)?;
            check_divisor(carrier.ring().codims().as_slice(), &s.class)?;
            if s.multiplicity.is_negative() {
                return Err(Error::Structural(
                    "bundle summand multiplicity must be nonnegative".into(),
                ));
            }
        }
        Ok(BundleSum { carrier, summands })
    }

    pub fn carrier(&self) -> &TowerVariety {
        &self.carrier
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    /// Total multiplicity of the sum.
    pub fn rank(&self) -> BigInt {
        self.summands.iter().map(|s| &s.multiplicity).sum()
    }
}

fn check_divisor(codims: &[u32], class: &GradedClass) -> Result<()> {
    for (m, _) in class.iter() {
        if m.codim(codims) != 1 {
            return Err(Error::Structural(
                "expected a codimension-1 (line bundle) class".into(),
            ));
        }
    }
    Ok(())
}

/// Extract the integer coefficient of a single-generator monomial from a
/// divisor class, erroring when the coefficient is not an integer.
fn integer_coefficient(class: &GradedClass, index: usize, what: &str) -> Result<BigInt> {
    let coeff = class.coefficient(&Monomial::generator(index));
    if !coeff.is_integer() {
        return Err(Error::Structural(format!(
            "{what}: coefficient {coeff} is not an integer"
        )));
    }
    Ok(coeff.to_integer())
}

/// `binom(d + r, r)` for integer `d ≥ 0`.
fn binomial_dr(d: &BigInt, r: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 1..=i64::from(r) {
        num *= d + BigInt::from(i);
        den *= BigInt::from(i);
    }
    num / den
}

/// Rule table for `h⁰` of line bundles on the atomic tower factors, with
/// the recursive cover / bundle / product cases on top.
///
/// * curve of genus `g`: degree `d > 2g−2` gives `h⁰ = d + 1 − g`;
///   smaller degrees are outside the vanishing range and refused;
/// * abelian `d`-fold with polarization `θ` of characteristic `chi`:
///   `h⁰(mθ) = m^d·chi` for `m ≥ 1`; other multiples refused;
/// * `P^r`: `h⁰(O(d)) = binom(d+r, r)` for `d ≥ 0`, else `0`;
/// * product: `h⁰` multiplies across factors;
/// * `P(O ⊕ O(−L))`: `h⁰(aξ + π*M) = Σ_{i=0..a} h⁰(M − iL)` for `a ≥ 0`,
///   else `0`;
/// * double cover branched in `|2L|`: `h⁰(π*G) = h⁰(G) + h⁰(G − L)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct H0Table;

impl H0Table {
    pub fn new() -> Self {
        H0Table
    }

    /// `h⁰` of a line-bundle class on a tower.
    pub fn h0(&self, tower: &TowerVariety, class: &GradedClass) -> Result<BigInt> {
        tower.ring().check_class(class)?;
        check_divisor(tower.ring().codims().as_slice(), class)?;
        self.h0_level(tower.level(), class)
    }

    /// Recursive worker over the construction trace. `class` is written in
    /// the local generator coordinates of `level`.
    fn h0_level(&self, level: &Level, class: &GradedClass) -> Result<BigInt> {
        match level {
            Level::Curve { genus, .. } => {
                let deg = integer_coefficient(class, 0, "h0 on a curve")?;
                let bound = BigInt::from(*genus) * 2 - 2;
                if deg > bound {
                    Ok(deg + 1 - BigInt::from(*genus))
                } else {
                    Err(Error::H0Range(format!(
                        "h0 on a curve of genus {genus}: degree {deg} is outside the \
                         vanishing range (need degree > {bound})"
                    )))
                }
            }
            Level::Abelian { dim, chi, .. } => {
                let m = integer_coefficient(class, 0, "h0 on an abelian variety")?;
                if m < BigInt::one() {
                    return Err(Error::H0Range(format!(
                        "h0 on an abelian variety: the multiple {m} of the polarization \
                         is not ample (need m >= 1)"
                    )));
                }
                Ok(num_traits::pow(m, *dim as usize) * BigInt::from(*chi))
            }
            Level::ProjectiveSpace { dim, .. } => {
                let d = integer_coefficient(class, 0, "h0 on projective space")?;
                if d.is_negative() {
                    Ok(BigInt::zero())
                } else {
                    Ok(binomial_dr(&d, *dim))
                }
            }
            Level::Product { left, right } => {
                let (cl, cr) = split_linear(class, left.width());
                Ok(self.h0_level(left, &cl)? * self.h0_level(right, &cr)?)
            }
            Level::ProjBundle { base, twist, .. } => {
                let xi = base.width();
                let a = integer_coefficient(class, xi, "h0 on a projective bundle")?;
                if a.is_negative() {
                    return Ok(BigInt::zero());
                }
                let m = base_part(class, xi);
                let a = fiber_degree_to_usize(&a)?;
                let mut total = BigInt::zero();
                for i in 0..=a {
                    let tw = &m - &twist.scale_int(i as i64);
                    total += self.h0_level(base, &tw)?;
                }
                Ok(total)
            }
            Level::DoubleCover { base, half_branch } => {
                let anti = class - half_branch;
                Ok(self.h0_level(base, class)? + self.h0_level(base, &anti)?)
            }
        }
    }
}

/// Split a divisor class on a product into its two factor components:
/// terms supported on generators `< left_width` and the rest, reindexed.
fn split_linear(class: &GradedClass, left_width: usize) -> (GradedClass, GradedClass) {
    let mut left = GradedClass::zero();
    let mut right = GradedClass::zero();
    for (m, coeff) in class.iter() {
        let index = m
            .exponents()
            .iter()
            .position(|&e| e > 0)
            .expect("divisor monomial has a generator");
        if index < left_width {
            left.add_term(m.clone(), coeff.clone());
        } else {
            right.add_term(Monomial::generator(index - left_width), coeff.clone());
        }
    }
    (left, right)
}

/// The `π*M` part of a divisor class `aξ + π*M` on a projective bundle
/// whose section class has generator index `xi`.
fn base_part(class: &GradedClass, xi: usize) -> GradedClass {
    GradedClass::from_terms(
        class
            .iter()
            .filter(|(m, _)| m.exponent(xi) == 0)
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

fn fiber_degree_to_usize(a: &BigInt) -> Result<usize> {
    let a = usize::try_from(a.clone()).map_err(|_| Error::Capacity {
        needed: usize::MAX,
        cap: MAX_FIBER_DEGREE,
    })?;
    if a > MAX_FIBER_DEGREE {
        return Err(Error::Capacity {
            needed: a,
            cap: MAX_FIBER_DEGREE,
        });
    }
    Ok(a)
}

/// `π_*ω_{X/B}` for a double cover `π: X → Y` branched in `|2L|`:
/// the sum `ω_{Y/B} ⊕ ω_{Y/B}(L)` on `Y`.
pub fn pushforward_double_cover(cover: &TowerVariety) -> Result<BundleSum> {
    let Level::DoubleCover { base, half_branch } = cover.level() else {
        return Err(Error::Structural(
            "pushforward_double_cover: the carrier is not a double cover".into(),
        ));
    };
    let carrier = TowerVariety::from_level((**base).clone(), cover.notes().to_vec())?;
    let rel = carrier.relative_canonical().ok_or_else(|| {
        Error::Structural(
            "pushforward_double_cover: the cover has no distinguished base curve".into(),
        )
    })?;
    let twisted = &rel + half_branch;
    BundleSum::new(
        carrier,
        vec![
            Summand {
                class: rel,
                multiplicity: BigInt::one(),
            },
            Summand {
                class: twisted,
                multiplicity: BigInt::one(),
            },
        ],
    )
}

/// Push a sum on a `P¹`-bundle `P(O ⊕ O(−L))` down to its base: each
/// summand `aξ + π*M` with `a ≥ 0` contributes `⊕_{i=0..a} O(M − iL)`,
/// and summands with `a < 0` contribute nothing.
pub fn pushforward_p1_bundle(bs: &BundleSum) -> Result<BundleSum> {
    let Level::ProjBundle { base, twist, .. } = bs.carrier().level() else {
        return Err(Error::Structural(
            "pushforward_p1_bundle: the carrier is not a projective bundle".into(),
        ));
    };
    let xi = base.width();
    let carrier = TowerVariety::from_level((**base).clone(), bs.carrier().notes().to_vec())?;
    let mut summands = Vec::new();
    for s in bs.summands() {
        let a = integer_coefficient(&s.class, xi, "bundle summand fiber degree")?;
        if a.is_negative() {
            continue;
        }
        let a = fiber_degree_to_usize(&a)?;
        let m = base_part(&s.class, xi);
        for i in 0..=a {
            summands.push(Summand {
                class: &m - &twist.scale_int(i as i64),
                multiplicity: s.multiplicity.clone(),
            });
        }
    }
    BundleSum::new(carrier, summands)
}

/// Push a sum on a product down to the factor containing the base curve:
/// each summand `p_A*M_A + p_B*M_B` contributes `O(M_B)` with
/// multiplicity `h⁰(A, M_A)`, where `A` is the factor without the base.
pub fn pushforward_product(bs: &BundleSum, table: &H0Table) -> Result<BundleSum> {
    let Level::Product { left, right } = bs.carrier().level() else {
        return Err(Error::Structural(
            "pushforward_product: the carrier is not a product".into(),
        ));
    };
    let base_index = bs.carrier().base_point().ok_or_else(|| {
        Error::Structural("pushforward_product: the product has no distinguished base curve".into())
    })?;
    let lw = left.width();
    let base_on_left = base_index < lw;
    let (kept, dropped): (&Level, &Level) = if base_on_left {
        (left, right)
    } else {
        (right, left)
    };
    let carrier = TowerVariety::from_level(kept.clone(), bs.carrier().notes().to_vec())?;
    let mut summands = Vec::new();
    for s in bs.summands() {
        let (cl, cr) = split_linear(&s.class, lw);
        let (forward, fiber_class) = if base_on_left { (cl, cr) } else { (cr, cl) };
        let h0 = table.h0_level(dropped, &fiber_class)?;
        let multiplicity = &s.multiplicity * h0;
        if !multiplicity.is_zero() {
            summands.push(Summand {
                class: forward,
                multiplicity,
            });
        }
    }
    BundleSum::new(carrier, summands)
}

/// Drive `ω_{X/B}` from the top of a tower all the way down to the base
/// curve, applying the cover, bundle, and product rules level by level.
pub fn pushforward_to_base(tower: &TowerVariety, table: &H0Table) -> Result<BundleSum> {
    let mut bs = match tower.level() {
        Level::DoubleCover { .. } => pushforward_double_cover(tower)?,
        _ => {
            let rel = tower.relative_canonical().ok_or_else(|| {
                Error::Structural(
                    "pushforward_to_base: the tower has no distinguished base curve".into(),
                )
            })?;
            BundleSum::new(
                tower.clone(),
                vec![Summand {
                    class: rel,
                    multiplicity: BigInt::one(),
                }],
            )?
        }
    };
    loop {
        match bs.carrier().level() {
            Level::Curve { is_base: true, .. } => return Ok(bs),
            Level::ProjBundle { .. } => bs = pushforward_p1_bundle(&bs)?,
            Level::Product { .. } => bs = pushforward_product(&bs, table)?,
            Level::DoubleCover { .. } => {
                return Err(Error::Structural(
                    "pushforward_to_base: a double cover below the top level is not supported"
                        .into(),
                ));
            }
            _ => {
                return Err(Error::Structural(
                    "pushforward_to_base: the carrier does not fiber over the base curve".into(),
                ));
            }
        }
    }
}

/// Rank and degree of a sum living on the base curve.
pub fn rank_and_degree(bs: &BundleSum) -> Result<(BigInt, BigInt)> {
    if !matches!(bs.carrier().level(), Level::Curve { is_base: true, .. }) {
        return Err(Error::Structural(
            "rank_and_degree: the sum does not live on the base curve".into(),
        ));
    }
    let mut rank = BigInt::zero();
    let mut degree = BigInt::zero();
    for s in bs.summands() {
        let d = integer_coefficient(&s.class, 0, "summand degree on the base curve")?;
        degree += d * &s.multiplicity;
        rank += &s.multiplicity;
    }
    Ok((rank, degree))
}

/// `χ(X, ω_X) = degree + (rank + 1)(g − 1)` for a fibration over a genus
/// `g` curve whose fibers satisfy `q(F) = 0`, so that the first higher
/// direct image of `ω_X` vanishes. The caller is responsible for the
/// `q(F) = 0` hypothesis; this is the pure arithmetic.
pub fn chi_total(rank: &BigInt, degree: &BigInt, genus: u64) -> BigInt {
    degree + (rank + 1) * (BigInt::from(genus) - 1)
}

#[cfg(test)]
mod tests;
