use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::monomial::Monomial;

/// A finite rational linear combination of monomials.
///
/// The class itself does not know its grading; codimensions are recovered
/// against a ring's generator list. Zero coefficients are never stored, so
/// structural equality is equality of classes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct GradedClass {
    terms: BTreeMap<Monomial, BigRational>,
}

impl GradedClass {
    pub fn zero() -> Self {
        GradedClass {
            terms: BTreeMap::new(),
        }
    }

    /// The multiplicative unit: coefficient 1 on the unit monomial.
    pub fn one() -> Self {
        GradedClass::term(Monomial::one(), BigRational::from_integer(BigInt::from(1)))
    }

    pub fn generator(index: usize) -> Self {
        GradedClass::term(
            Monomial::generator(index),
            BigRational::from_integer(BigInt::from(1)),
        )
    }

    pub fn term(monomial: Monomial, coeff: BigRational) -> Self {
        let mut c = GradedClass::zero();
        c.add_term(monomial, coeff);
        c
    }

    pub fn from_terms<I>(iter: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut c = GradedClass::zero();
        for (m, k) in iter {
            c.add_term(m, k);
        }
        c
    }

    /// Integer linear combination of generators — the common case when a
    /// builder assembles a divisor class.
    pub fn linear(entries: &[(usize, i64)]) -> Self {
        GradedClass::from_terms(entries.iter().map(|&(i, k)| {
            (
                Monomial::generator(i),
                BigRational::from_integer(BigInt::from(k)),
            )
        }))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Largest monomial present, under the ring's monomial order.
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    /// One past the largest generator index used by any monomial.
    pub fn width(&self) -> usize {
        self.terms.keys().map(Monomial::width).max().unwrap_or(0)
    }

    /// Are all coefficients integers?
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn add_term(&mut self, monomial: Monomial, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(monomial) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return GradedClass::zero();
        }
        GradedClass {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    /// Plain distributive expansion — no rewriting. Ring multiplication
    /// composes this with normalization.
    pub fn expand_product(&self, other: &Self) -> Self {
        let mut out = GradedClass::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        GradedClass {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Reinterpret the class after `offset` generators are prepended.
    pub fn shifted(&self, offset: usize) -> Self {
        GradedClass {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.shifted(offset), c.clone()))
                .collect(),
        }
    }

    /// Restrict along "set generator `index` to zero and forget it": terms
    /// containing that generator die, the rest are reindexed.
    pub fn drop_coordinate(&self, index: usize) -> Self {
        let mut out = GradedClass::zero();
        for (m, c) in &self.terms {
            if let Some(m2) = m.drop_coordinate(index) {
                out.add_term(m2, c.clone());
            }
        }
        out
    }
}

impl Add for &GradedClass {
    type Output = GradedClass;
    fn add(self, rhs: &GradedClass) -> GradedClass {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &GradedClass {
    type Output = GradedClass;
    fn sub(self, rhs: &GradedClass) -> GradedClass {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &GradedClass {
    type Output = GradedClass;
    fn neg(self) -> GradedClass {
        GradedClass {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}
