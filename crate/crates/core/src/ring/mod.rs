//! Graded commutative rings presented by generators and oriented rewrite
//! rules, with exact top-degree integration.
//!
//! A ring is the data
//!
//! ```text
//!   Q[g_1, ..., g_k] / (rules),   deg g_i = codim(g_i) >= 1,
//! ```
//!
//! together with a dimension `dim`, a positive rational degree multiplier
//! (the covering degree accumulated by double covers), and a table assigning
//! an exact rational to every normal-form monomial of codimension `dim`.
//!
//! Each rewrite rule `lhs -> rhs` replaces a monomial by a class of the same
//! codimension whose monomials are strictly smaller in the degree-
//! lexicographic order (see [`Monomial`]'s `Ord`), so iterated rewriting
//! terminates. Rule left-hand sides are required to be pairwise coprime:
//! overlapping reductions then commute, every class has a unique normal form,
//! and confluence holds by construction (it is property-tested as well).
//!
//! Integration sums the top-degree coefficients of the normal form against
//! the table and scales by the degree multiplier. A second, independent path
//! to the same number — Gaussian elimination over the full monomial basis —
//! lives in [`IntersectionRing::oracle_integrate`].

mod class;
mod monomial;
mod oracle;

pub use class::GradedClass;
pub use monomial::Monomial;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Cap on the monomial enumeration used by the integration oracle.
pub const DEFAULT_ORACLE_CAP: usize = 10_000;

/// Cap on the monomial enumeration used by constructor validation.
const VALIDATION_CAP: usize = 1_000_000;

/// A named ring generator of pure codimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub codim: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, codim: u32) -> Self {
        Generator {
            name: name.into(),
            codim,
        }
    }
}

/// An oriented rewrite rule `lhs -> rhs`.
///
/// Validation happens when the rule is installed in a ring: the two sides
/// must be homogeneous of the same codimension, every right-hand monomial
/// must be strictly smaller than `lhs`, and distinct rules must have coprime
/// left-hand sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    lhs: Monomial,
    rhs: GradedClass,
}

impl RewriteRule {
    pub fn new(lhs: Monomial, rhs: GradedClass) -> Self {
        RewriteRule { lhs, rhs }
    }

    pub fn lhs(&self) -> &Monomial {
        &self.lhs
    }

    pub fn rhs(&self) -> &GradedClass {
        &self.rhs
    }
}

/// A graded ring with a fixed fundamental class: the home of all numerical
/// intersection computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionRing {
    generators: Vec<Generator>,
    rules: Vec<RewriteRule>,
    dim: u32,
    degree_multiplier: BigRational,
    top_values: BTreeMap<Monomial, BigRational>,
}

impl IntersectionRing {
    /// Build and fully validate a ring.
    ///
    /// Beyond shape checks, validation enumerates every monomial of
    /// codimension at most `dim` and verifies two semantic invariants:
    /// every normal-form monomial of codimension `dim` has a top value (and
    /// nothing else does), and any monomial of codimension above `dim`
    /// rewrites to zero, so integration of lower-degree tails is honest.
    pub fn new(
        generators: Vec<Generator>,
        rules: Vec<RewriteRule>,
        dim: u32,
        degree_multiplier: BigRational,
        top_values: BTreeMap<Monomial, BigRational>,
    ) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Structural(
                "a ring needs at least one generator".into(),
            ));
        }
        if dim == 0 {
            return Err(Error::Structural(
                "ring dimension must be at least 1".into(),
            ));
        }
        if !degree_multiplier.is_positive() {
            return Err(Error::Structural(
                "degree multiplier must be positive".into(),
            ));
        }
        let mut seen = std::collections::BTreeSet::new();
        for g in &generators {
            if g.codim == 0 {
                return Err(Error::Structural(format!(
                    "generator `{}` must have positive codimension",
                    g.name
                )));
            }
            if !seen.insert(g.name.clone()) {
                return Err(Error::Structural(format!(
                    "generator name clash: `{}`",
                    g.name
                )));
            }
        }

        let codims: Vec<u32> = generators.iter().map(|g| g.codim).collect();
        for (i, rule) in rules.iter().enumerate() {
            if rule.lhs.is_one() {
                return Err(Error::InvalidRule(
                    "left-hand side is the unit monomial".into(),
                ));
            }
            if rule.lhs.width() > generators.len() || rule.rhs.width() > generators.len() {
                return Err(Error::InvalidRule(
                    "rule mentions a generator the ring does not have".into(),
                ));
            }
            let lc = rule.lhs.codim(&codims);
            for (m, _) in rule.rhs.iter() {
                if m.codim(&codims) != lc {
                    return Err(Error::InvalidRule(
                        "right-hand side is not homogeneous of the left-hand codimension".into(),
                    ));
                }
                if m >= &rule.lhs {
                    return Err(Error::InvalidRule(
                        "right-hand monomial does not decrease the monomial order".into(),
                    ));
                }
            }
            for other in &rules[..i] {
                if !rule.lhs.is_coprime_with(&other.lhs) {
                    return Err(Error::InvalidRule(
                        "rule left-hand sides overlap; reductions would not be confluent".into(),
                    ));
                }
            }
        }

        let ring = IntersectionRing {
            generators,
            rules,
            dim,
            degree_multiplier,
            top_values,
        };
        ring.validate_semantics()?;
        Ok(ring)
    }

    fn validate_semantics(&self) -> Result<()> {
        let codims = self.codims();
        let all = self.enumerate_monomials(self.dim, VALIDATION_CAP)?;
        let normal: Vec<&Monomial> = all.iter().filter(|m| !self.is_reducible(m)).collect();

        for m in &normal {
            if m.codim(&codims) == u64::from(self.dim) && !self.top_values.contains_key(*m) {
                return Err(Error::MissingTopValue(self.monomial_string(m)));
            }
        }
        for key in self.top_values.keys() {
            if key.width() > self.generators.len()
                || key.codim(&codims) != u64::from(self.dim)
                || self.is_reducible(key)
            {
                return Err(Error::Structural(format!(
                    "top value keyed by `{}`, which is not a top-codimension normal form",
                    self.monomial_string(key)
                )));
            }
        }

        // Truncation: any monomial of codimension above `dim` must rewrite to
        // zero. It is enough to check one generator past each normal form —
        // rewriting is degreewise and compatible with multiplication, so the
        // general case follows by induction on the number of factors.
        for m in &normal {
            let mc = m.codim(&codims);
            for (i, g) in self.generators.iter().enumerate() {
                if mc + u64::from(g.codim) > u64::from(self.dim) {
                    let product = GradedClass::term(
                        m.mul(&Monomial::generator(i)),
                        BigRational::from_integer(BigInt::from(1)),
                    );
                    if !normalize_with(&self.rules, &product).is_zero() {
                        return Err(Error::Structural(format!(
                            "monomial `{}` exceeds the dimension but does not rewrite to zero",
                            self.monomial_string(&m.mul(&Monomial::generator(i)))
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn degree_multiplier(&self) -> &BigRational {
        &self.degree_multiplier
    }

    pub fn top_values(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.top_values
    }

    pub fn codims(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.codim).collect()
    }

    pub fn codim_of(&self, m: &Monomial) -> u64 {
        m.codim(&self.codims())
    }

    /// Check that a class only mentions generators of this ring.
    pub fn check_class(&self, c: &GradedClass) -> Result<()> {
        let w = c.width();
        if w > self.generators.len() {
            return Err(Error::UnknownGenerator {
                index: w - 1,
                count: self.generators.len(),
            });
        }
        Ok(())
    }

    fn is_reducible(&self, m: &Monomial) -> bool {
        self.rules.iter().any(|r| r.lhs.divides(m))
    }

    /// Rewrite a class to its unique normal form.
    pub fn normalize(&self, c: &GradedClass) -> Result<GradedClass> {
        self.check_class(c)?;
        Ok(normalize_with(&self.rules, c))
    }

    /// Product in the ring: distributive expansion followed by normalization.
    pub fn mul(&self, a: &GradedClass, b: &GradedClass) -> Result<GradedClass> {
        self.check_class(a)?;
        self.check_class(b)?;
        Ok(normalize_with(&self.rules, &a.expand_product(b)))
    }

    /// `a^k`, with `a^0 = 1`.
    pub fn power(&self, a: &GradedClass, k: u32) -> Result<GradedClass> {
        self.check_class(a)?;
        let mut acc = GradedClass::one();
        for _ in 0..k {
            acc = normalize_with(&self.rules, &acc.expand_product(a));
        }
        Ok(acc)
    }

    /// Integrate a class against the fundamental class: the top-codimension
    /// part of the normal form evaluates through the top-value table, scaled
    /// by the degree multiplier. Classes of lower codimension integrate to
    /// zero by convention.
    pub fn integrate(&self, c: &GradedClass) -> Result<BigRational> {
        let nf = self.normalize(c)?;
        let codims = self.codims();
        let mut total = BigRational::zero();
        for (m, coeff) in nf.iter() {
            if m.codim(&codims) == u64::from(self.dim) {
                let v = self
                    .top_values
                    .get(m)
                    .ok_or_else(|| Error::MissingTopValue(self.monomial_string(m)))?;
                total += coeff * v;
            }
        }
        Ok(total * &self.degree_multiplier)
    }

    /// All monomials of codimension at most `max_codim`, in ascending
    /// monomial order, or a capacity error if more than `cap` exist.
    pub fn enumerate_monomials(&self, max_codim: u32, cap: usize) -> Result<Vec<Monomial>> {
        let codims = self.codims();
        let bound = u64::from(max_codim);
        let mut partial: Vec<Vec<u32>> = vec![Vec::new()];
        for (i, &ci) in codims.iter().enumerate() {
            let mut next: Vec<Vec<u32>> = Vec::new();
            for exps in &partial {
                let used: u64 = exps
                    .iter()
                    .enumerate()
                    .map(|(j, &e)| u64::from(e) * u64::from(codims[j]))
                    .sum();
                let max_e = (bound - used) / u64::from(ci);
                for e in 0..=max_e {
                    if next.len() >= cap {
                        return Err(Error::Capacity {
                            needed: next.len() + 1,
                            cap,
                        });
                    }
                    let mut v = exps.clone();
                    v.resize(i + 1, 0);
                    v[i] = e as u32;
                    next.push(v);
                }
            }
            partial = next;
        }
        let mut out: Vec<Monomial> = partial.into_iter().map(Monomial::from_exponents).collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Normal-form monomials of codimension at most `max_codim`.
    pub fn normal_form_monomials(&self, max_codim: u32, cap: usize) -> Result<Vec<Monomial>> {
        Ok(self
            .enumerate_monomials(max_codim, cap)?
            .into_iter()
            .filter(|m| !self.is_reducible(m))
            .collect())
    }

    pub fn monomial_string(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = self
                .generators
                .get(i)
                .map(|g| g.name.clone())
                .unwrap_or_else(|| format!("g{i}"));
            if e == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{name}^{e}"));
            }
        }
        parts.join("*")
    }

    pub fn class_string(&self, c: &GradedClass) -> String {
        if c.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, coeff) in c.iter().collect::<Vec<_>>().into_iter().rev() {
            let ms = self.monomial_string(m);
            let cs = coeff.to_string();
            if ms == "1" {
                parts.push(cs);
            } else if cs == "1" {
                parts.push(ms);
            } else if cs == "-1" {
                parts.push(format!("-{ms}"));
            } else {
                parts.push(format!("{cs}*{ms}"));
            }
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// The rewriting loop: repeatedly replace the largest reducible monomial.
/// Each replacement injects strictly smaller monomials of the same
/// codimension, so the loop terminates with the unique normal form.
pub(crate) fn normalize_with(rules: &[RewriteRule], c: &GradedClass) -> GradedClass {
    let mut pending: BTreeMap<Monomial, BigRational> =
        c.iter().map(|(m, k)| (m.clone(), k.clone())).collect();
    let mut done = GradedClass::zero();
    while let Some(m) = pending.keys().next_back().cloned() {
        let coeff = pending.remove(&m).expect("key just observed");
        if coeff.is_zero() {
            continue;
        }
        match rules.iter().find_map(|r| m.divide(&r.lhs).map(|q| (r, q))) {
            None => done.add_term(m, coeff),
            Some((rule, q)) => {
                for (rm, rc) in rule.rhs.iter() {
                    let nm = rm.mul(&q);
                    let add = rc * &coeff;
                    use std::collections::btree_map::Entry;
                    match pending.entry(nm) {
                        Entry::Vacant(v) => {
                            v.insert(add);
                        }
                        Entry::Occupied(mut o) => {
                            *o.get_mut() += add;
                            if o.get().is_zero() {
                                o.remove();
                            }
                        }
                    }
                }
            }
        }
    }
    done
}
