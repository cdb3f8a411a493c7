use std::cmp::Ordering;

/// A monomial in the ring generators, stored as an exponent vector indexed by
/// generator declaration order.
///
/// Trailing zero exponents are trimmed, so a monomial keeps its identity when
/// a tower construction appends generators to the ring: `theta * c` is the
/// same value over `[theta, c]` and over `[theta, c, xi]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    /// The unit monomial (all exponents zero).
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    /// The generator with the given declaration index, to the first power.
    pub fn generator(index: usize) -> Self {
        Self::power_of(index, 1)
    }

    /// `generator(index)^exp`.
    pub fn power_of(index: usize, exp: u32) -> Self {
        if exp == 0 {
            return Self::one();
        }
        let mut exps = vec![0; index + 1];
        exps[index] = exp;
        Monomial { exps }
    }

    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial { exps }
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exps.get(index).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// One past the largest generator index with a nonzero exponent
    /// (zero for the unit monomial).
    pub fn width(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Sum of exponents.
    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| u64::from(e)).sum()
    }

    /// Codimension of the monomial, given the per-generator codimensions.
    pub fn codim(&self, codims: &[u32]) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .map(|(i, &e)| u64::from(e) * u64::from(codims[i]))
            .sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.exps.len().max(other.exps.len());
        let exps = (0..n)
            .map(|i| self.exponent(i) + other.exponent(i))
            .collect();
        Monomial::from_exponents(exps)
    }

    /// Does `self` divide `other` exponentwise?
    pub fn divides(&self, other: &Self) -> bool {
        self.exps
            .iter()
            .enumerate()
            .all(|(i, &e)| e <= other.exponent(i))
    }

    /// `self / by`, if `by` divides `self`.
    pub fn divide(&self, by: &Self) -> Option<Monomial> {
        if !by.divides(self) {
            return None;
        }
        let exps = (0..self.exps.len())
            .map(|i| self.exponent(i) - by.exponent(i))
            .collect();
        Some(Monomial::from_exponents(exps))
    }

    /// True when the two monomials share no generator — their least common
    /// multiple factors as a product.
    pub fn is_coprime_with(&self, other: &Self) -> bool {
        let n = self.exps.len().min(other.exps.len());
        (0..n).all(|i| self.exponent(i) == 0 || other.exponent(i) == 0)
    }

    /// Reinterpret the monomial after `offset` new generators are prepended.
    pub fn shifted(&self, offset: usize) -> Monomial {
        if self.is_one() {
            return self.clone();
        }
        let mut exps = vec![0; offset];
        exps.extend_from_slice(&self.exps);
        Monomial { exps }
    }

    /// Remove coordinate `index`, shifting higher coordinates down.
    ///
    /// Returns `None` when the exponent there is positive: such a monomial
    /// restricts to zero rather than to a monomial.
    pub fn drop_coordinate(&self, index: usize) -> Option<Monomial> {
        if self.exponent(index) > 0 {
            return None;
        }
        if index >= self.exps.len() {
            return Some(self.clone());
        }
        let mut exps = self.exps.clone();
        exps.remove(index);
        Some(Monomial::from_exponents(exps))
    }
}

/// Degree-lexicographic order. Total exponent degree compares first; ties are
/// broken lexicographically with later-declared generators taking precedence,
/// so the section class appended by a bundle construction outweighs every
/// class pulled back from its base. Under this order each rewrite rule a
/// builder installs strictly decreases the leading monomial, which is what
/// makes normalization terminate.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                let n = self.exps.len().max(other.exps.len());
                for i in (0..n).rev() {
                    match self.exponent(i).cmp(&other.exponent(i)) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
