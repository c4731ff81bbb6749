use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{BivariatePoly, WPoly};
use crate::Error;

/// Multiset of exponents `m_j` standing for the product `prod_j (w^m_j - 1)`.
///
/// Every exponent is at least 2: a factor `w - 1` would come from a
/// discrepancy-zero component, whose numerator factor is identically zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DenominatorSpec {
    factors: Vec<u32>,
}

impl DenominatorSpec {
    pub fn new(mut factors: Vec<u32>) -> Result<Self, Error> {
        if let Some(&bad) = factors.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidDenominatorFactor(bad));
        }
        factors.sort_unstable();
        Ok(Self { factors })
    }

    /// The empty product.
    pub fn one() -> Self {
        Self::default()
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Sum of all exponents; the degree of the expanded product.
    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|&m| i64::from(m)).sum()
    }

    pub fn expand(&self) -> WPoly {
        self.factors
            .iter()
            .fold(WPoly::one(), |acc, &m| &acc * &WPoly::cyclotomic_like(m))
    }

    fn counts(&self) -> BTreeMap<u32, usize> {
        let mut counts = BTreeMap::new();
        for &m in &self.factors {
            *counts.entry(m).or_insert(0) += 1;
        }
        counts
    }

    fn from_counts(counts: &BTreeMap<u32, usize>) -> Self {
        let factors = counts.iter().flat_map(|(&m, &k)| std::iter::repeat_n(m, k)).collect();
        Self { factors }
    }

    /// Multiset union: each exponent with its larger multiplicity.
    pub fn union(&self, other: &Self) -> Self {
        let mut counts = self.counts();
        for (m, k) in other.counts() {
            let entry = counts.entry(m).or_insert(0);
            *entry = (*entry).max(k);
        }
        Self::from_counts(&counts)
    }

    /// Multiset sum (product of the two denominators).
    pub fn product(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        factors.sort_unstable();
        Self { factors }
    }

    /// Factors of `self` left after removing those of `other` (multiset difference).
    pub fn difference(&self, other: &Self) -> Self {
        let mut counts = self.counts();
        for (m, k) in other.counts() {
            if let Some(entry) = counts.get_mut(&m) {
                *entry = entry.saturating_sub(k);
            }
        }
        Self::from_counts(&counts)
    }
}

impl fmt::Display for DenominatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (m, k) in self.counts() {
            write!(f, "((uv)^{m} - 1)")?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

/// A rational function `numerator / prod_j ((uv)^m_j - 1)`.
///
/// Never reduced to lowest terms. Equality is decided by cross-multiplication,
/// so two values with different representations can compare equal.
#[derive(Clone, Debug, Default)]
pub struct StringyFunction {
    numerator: BivariatePoly,
    denominator: DenominatorSpec,
}

impl StringyFunction {
    pub fn new(numerator: BivariatePoly, denominator: DenominatorSpec) -> Self {
        Self { numerator, denominator }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_polynomial(p: BivariatePoly) -> Self {
        Self::new(p, DenominatorSpec::one())
    }

    pub fn numerator(&self) -> &BivariatePoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &DenominatorSpec {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Sum over the multiset union of the two denominators.
    pub fn add(&self, other: &Self) -> Self {
        let common = self.denominator.union(&other.denominator);
        let lift = |f: &Self| f.numerator.mul_w(&common.difference(&f.denominator).expand());
        Self::new(&lift(self) + &lift(other), common)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            &self.numerator * &other.numerator,
            self.denominator.product(&other.denominator),
        )
    }

    pub fn mul_poly(&self, p: &BivariatePoly) -> Self {
        Self::new(&self.numerator * p, self.denominator.clone())
    }

    /// Exact equality as rational functions.
    pub fn equals(&self, other: &Self) -> bool {
        let lhs = self.numerator.mul_w(&other.denominator.expand());
        let rhs = other.numerator.mul_w(&self.denominator.expand());
        lhs == rhs
    }

    /// `f(v, u)`; the denominator depends on `uv` only and is unchanged.
    pub fn swap_vars(&self) -> Self {
        Self::new(self.numerator.swap_vars(), self.denominator.clone())
    }

    /// `(uv)^n f(1/u, 1/v)`, rewritten over the same denominator.
    ///
    /// Each factor transforms as `w^-m - 1 = -w^-m (w^m - 1)`, so the new
    /// numerator is `(-1)^k w^(n + sum m) N(1/u, 1/v)`.
    pub fn poincare_dual(&self, n: i64) -> Self {
        let k = self.denominator.factors().len();
        let sign = if k.is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let shift = n + self.denominator.degree();
        let numerator = self.numerator.invert_vars().shift(shift, shift).scale(&sign);
        Self::new(numerator, self.denominator.clone())
    }

    /// Returns the polynomial equal to `self` when the denominator divides
    /// every diagonal slice of the numerator.
    pub fn to_polynomial(&self) -> Option<BivariatePoly> {
        if self.denominator.is_one() {
            return Some(self.numerator.clone());
        }
        let den = self.denominator.expand();
        let slices = self.numerator.diagonal_decompose();
        let mut quotients = BTreeMap::new();
        for (d, slice) in &slices {
            quotients.insert(*d, slice.div_exact(&den)?);
        }
        Some(BivariatePoly::from_diagonal_slices(
            quotients.iter().map(|(d, w)| (*d, w)),
        ))
    }

    /// Coefficients `b_{p,q}` of the expansion at `u = v = 0` for all monomials
    /// with `p + q <= bound`. Zero coefficients are omitted.
    pub fn series_coefficients(&self, bound: i64) -> BTreeMap<(i64, i64), BigInt> {
        let den = self.denominator.expand();
        let mut out = BTreeMap::new();
        for (d, slice) in self.numerator.diagonal_decompose() {
            // p + q = |d| + 2 min(p, q)
            let rest = bound - d.abs();
            if rest < 0 {
                continue;
            }
            let max_w = rest.div_euclid(2);
            let series = slice
                .series_div(&den, max_w)
                .expect("denominator has unit constant term");
            for (e, c) in series.terms() {
                if c.is_zero() {
                    continue;
                }
                out.insert((e + d.max(0), e + (-d).max(0)), c.clone());
            }
        }
        out
    }
}

impl PartialEq for StringyFunction {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Display for StringyFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / {}", self.numerator, self.denominator)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wf(num: &[i64], den: &[u32]) -> StringyFunction {
        StringyFunction::new(
            BivariatePoly::from_diagonal(&WPoly::from_dense(num)),
            DenominatorSpec::new(den.to_vec()).unwrap(),
        )
    }

    #[test]
    fn rejects_linear_factor() {
        assert_eq!(
            DenominatorSpec::new(vec![2, 1]),
            Err(Error::InvalidDenominatorFactor(1))
        );
    }

    #[test]
    fn add_zero_is_identity() {
        let f = wf(&[1, 2], &[2]);
        let sum = f.add(&StringyFunction::zero());
        assert_eq!(sum.denominator().factors(), &[2]);
        assert_eq!(sum.numerator(), f.numerator());
    }

    #[test]
    fn add_common_denominator() {
        let f = wf(&[1, 2], &[2]);
        let g = wf(&[0, 0, 3], &[2]);
        let sum = f.add(&g);
        assert_eq!(sum.denominator().factors(), &[2]);
        assert_eq!(sum.numerator(), wf(&[1, 2, 3], &[]).numerator());
    }

    #[test]
    fn add_cross_multiplies() {
        let sum = wf(&[1], &[2]).add(&wf(&[1], &[3]));
        assert_eq!(sum.denominator().factors(), &[2, 3]);
        // (w^3 - 1) + (w^2 - 1)
        assert_eq!(sum.numerator(), wf(&[-2, 0, 1, 1], &[]).numerator());
    }

    #[test]
    fn exact_divide_examples() {
        assert_eq!(wf(&[-1, 0, 1], &[2]).to_polynomial(), Some(BivariatePoly::one()));
        assert_eq!(
            wf(&[0, 1, 0, -1], &[2]).to_polynomial(),
            Some(BivariatePoly::monomial(-1, 1, 1))
        );
        assert_eq!(wf(&[0, 1], &[2]).to_polynomial(), None);
    }

    #[test]
    fn equality_ignores_representation() {
        // (w^2 - 1) / (w^2 - 1) == 1
        assert_eq!(wf(&[-1, 0, 1], &[2]), wf(&[1], &[]));
        assert_ne!(wf(&[0, 1], &[2]), wf(&[1], &[]));
    }

    #[test]
    fn series_of_geometric_factor() {
        // w / (w^2 - 1) = -w - w^3 - ...
        let coeffs = wf(&[0, 1], &[2]).series_coefficients(6);
        let expected: BTreeMap<(i64, i64), BigInt> = [((1, 1), -1), ((3, 3), -1)]
            .into_iter()
            .map(|(k, c)| (k, BigInt::from(c)))
            .collect();
        assert_eq!(coeffs, expected);
    }

    #[test]
    fn display_groups_repeated_factors() {
        let f = wf(&[1], &[2, 2, 3]);
        assert_eq!(f.to_string(), "(1) / ((uv)^2 - 1)^2((uv)^3 - 1)");
    }
}
