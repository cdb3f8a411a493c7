//! Independent integration path: instead of rewriting, reduce the class
//! against the full relation span of the top graded piece by Gaussian
//! elimination over the complete monomial basis.
//!
//! For each rule `lhs -> rhs` and each monomial `q` of complementary
//! codimension, `lhs*q - rhs*q` is a relation among top-codimension
//! monomials; these span the ideal's top graded piece. Eliminating them
//! (pivoting on each row's largest monomial) leaves exactly the normal-form
//! monomials as residual coordinates, which the top-value table evaluates.
//! The two integration paths share only the ring's defining data, so their
//! agreement is a meaningful cross-check of the rewriting engine.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{GradedClass, IntersectionRing, Monomial, DEFAULT_ORACLE_CAP};
use crate::error::{Error, Result};

type Row = BTreeMap<Monomial, BigRational>;

impl IntersectionRing {
    /// Same value as [`IntersectionRing::integrate`], computed by exhaustive
    /// linear algebra instead of rewriting. Errors with a capacity error if
    /// the monomial basis exceeds the default cap.
    pub fn oracle_integrate(&self, c: &GradedClass) -> Result<BigRational> {
        self.oracle_integrate_capped(c, DEFAULT_ORACLE_CAP)
    }

    /// [`IntersectionRing::oracle_integrate`] with an explicit cap on the
    /// monomial enumeration.
    pub fn oracle_integrate_capped(&self, c: &GradedClass, cap: usize) -> Result<BigRational> {
        self.check_class(c)?;
        let codims = self.codims();
        let dim = u64::from(self.dim());
        let basis = self.enumerate_monomials(self.dim(), cap)?;

        // Echelonize the relation rows incrementally, pivoting each on its
        // largest monomial.
        let mut pivots: BTreeMap<Monomial, Row> = BTreeMap::new();
        for rule in self.rules() {
            let lhs_codim = rule.lhs().codim(&codims);
            if lhs_codim > dim {
                continue;
            }
            let cofactor_codim = dim - lhs_codim;
            for q in basis.iter().filter(|q| q.codim(&codims) == cofactor_codim) {
                let mut row: Row = BTreeMap::new();
                add_to_row(&mut row, rule.lhs().mul(q), BigRational::one());
                for (rm, rc) in rule.rhs().iter() {
                    add_to_row(&mut row, rm.mul(q), -rc.clone());
                }
                reduce_row(&mut row, &pivots);
                if let Some(lead) = row.keys().next_back().cloned() {
                    let lead_coeff = row.remove(&lead).expect("lead just observed");
                    let mut normalized: Row =
                        row.into_iter().map(|(m, k)| (m, k / &lead_coeff)).collect();
                    normalized.insert(lead.clone(), BigRational::one());
                    pivots.insert(lead, normalized);
                }
            }
        }

        // Reduce the class's top-codimension component. Lower-codimension
        // terms integrate to zero; terms above the dimension rewrite to zero
        // by the ring's validated truncation invariant.
        let mut target: Row = BTreeMap::new();
        for (m, coeff) in c.iter() {
            if m.codim(&codims) == dim {
                add_to_row(&mut target, m.clone(), coeff.clone());
            }
        }
        reduce_row(&mut target, &pivots);

        let mut total = BigRational::zero();
        for (m, coeff) in &target {
            let v = self
                .top_values()
                .get(m)
                .ok_or_else(|| Error::MissingTopValue(self.monomial_string(m)))?;
            total += coeff * v;
        }
        Ok(total * self.degree_multiplier())
    }
}

fn add_to_row(row: &mut Row, m: Monomial, k: BigRational) {
    if k.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match row.entry(m) {
        Entry::Vacant(v) => {
            v.insert(k);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += k;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Subtract pivot rows until no monomial of `row` is a pivot. Each step
/// replaces a monomial by strictly smaller ones, so the loop terminates.
fn reduce_row(row: &mut Row, pivots: &BTreeMap<Monomial, Row>) {
    loop {
        let hit = row.keys().rev().find(|m| pivots.contains_key(*m)).cloned();
        let Some(m) = hit else { break };
        let k = row.remove(&m).expect("key just observed");
        let pivot_row = &pivots[&m];
        for (pm, pc) in pivot_row {
            if pm == &m {
                continue;
            }
            add_to_row(row, pm.clone(), -(pc * &k));
        }
    }
}
