use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::WPoly;

/// Sparse Laurent polynomial in `u`, `v` with big-integer coefficients.
///
/// Keys are exponent pairs `(p, q)` for the monomial `u^p v^q`. Negative
/// exponents are allowed so that `u -> 1/u, v -> 1/v` stays inside the type.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BivariatePoly {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0, 0)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(coeff: impl Into<BigInt>, p: i64, q: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(p, q, coeff.into());
        out
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((i64, i64), C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for ((p, q), c) in terms {
            out.add_term(p, q, c.into());
        }
        out
    }

    /// Lifts a polynomial in `w = uv` to the diagonal of the `(u, v)` plane.
    pub fn from_diagonal(w: &WPoly) -> Self {
        Self::from_terms(w.terms().map(|(e, c)| ((e, e), c.clone())))
    }

    pub fn add_term(&mut self, p: i64, q: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((p, q)).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(p, q));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: i64, q: i64) -> BigInt {
        self.terms.get(&(p, q)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &BigInt)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `p + q` over the support.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|(p, q)| p + q).max()
    }

    /// True when every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|(p, q)| *p >= 0 && *q >= 0)
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, c * factor)).collect(),
        }
    }

    /// Multiplies by `u^dp v^dq`.
    pub fn shift(&self, dp: i64, dq: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|((p, q), c)| ((p + dp, q + dq), c.clone()))
                .collect(),
        }
    }

    /// Substitutes `u -> 1/u`, `v -> 1/v`.
    pub fn invert_vars(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|((p, q), c)| ((-p, -q), c.clone())).collect(),
        }
    }

    /// Substitutes `u <-> v`.
    pub fn swap_vars(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|((p, q), c)| ((*q, *p), c.clone())).collect(),
        }
    }

    /// Multiplies by a polynomial in `w = uv`.
    pub fn mul_w(&self, w: &WPoly) -> Self {
        let mut out = Self::zero();
        for ((p, q), c) in &self.terms {
            for (e, cw) in w.terms() {
                out.add_term(p + e, q + e, c * cw);
            }
        }
        out
    }

    /// Splits the polynomial along the diagonals `d = p - q`.
    ///
    /// Each monomial `u^p v^q` is `u^max(d,0) v^max(-d,0) w^min(p,q)`, so the
    /// slice for `d` is the univariate polynomial collecting the `w` parts.
    pub fn diagonal_decompose(&self) -> BTreeMap<i64, WPoly> {
        let mut slices: BTreeMap<i64, WPoly> = BTreeMap::new();
        for ((p, q), c) in &self.terms {
            slices.entry(p - q).or_default().add_term(*p.min(q), c.clone());
        }
        slices
    }

    /// Inverse of [`diagonal_decompose`](Self::diagonal_decompose).
    pub fn from_diagonal_slices<'a, I>(slices: I) -> Self
    where
        I: IntoIterator<Item = (i64, &'a WPoly)>,
    {
        let mut out = Self::zero();
        for (d, w) in slices {
            for (e, c) in w.terms() {
                out.add_term(e + d.max(0), e + (-d).max(0), c.clone());
            }
        }
        out
    }
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for ((p, q), c) in &rhs.terms {
            out.add_term(*p, *q, c.clone());
        }
        out
    }
}

impl Add for BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: BivariatePoly) -> BivariatePoly {
        &self + &rhs
    }
}

impl Sub for &BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for ((p, q), c) in &rhs.terms {
            out.add_term(*p, *q, -c.clone());
        }
        out
    }
}

impl Sub for BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: BivariatePoly) -> BivariatePoly {
        &self - &rhs
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for ((p1, q1), c1) in &self.terms {
            for ((p2, q2), c2) in &rhs.terms {
                out.add_term(p1 + p2, q1 + q2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: BivariatePoly) -> BivariatePoly {
        &self * &rhs
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        BivariatePoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        -&self
    }
}

fn var_power(name: &str, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => name.to_string(),
        e => format!("{name}^{e}"),
    }
}

impl fmt::Display for BivariatePoly {
    /// Terms are printed by increasing total degree, then by decreasing power of `u`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<&(i64, i64)> = self.terms.keys().collect();
        keys.sort_by_key(|(p, q)| (p + q, -p));
        super::write_terms(
            f,
            keys.into_iter().map(|key| {
                let (p, q) = *key;
                let mono = format!("{}{}", var_power("u", p), var_power("v", q));
                (&self.terms[key], mono)
            }),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[((i64, i64), i64)]) -> BivariatePoly {
        BivariatePoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn kunneth_square_of_line() {
        let a = p(&[((0, 0), 1), ((1, 1), 1)]);
        assert_eq!(&a * &a, p(&[((0, 0), 1), ((1, 1), 2), ((2, 2), 1)]));
    }

    #[test]
    fn multiplication_by_zero() {
        let a = p(&[((0, 0), 3), ((2, 1), -1)]);
        assert!((&a * &BivariatePoly::zero()).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let a = p(&[((0, 0), 1), ((1, 0), -1)]);
        let b = p(&[((0, 0), 1), ((1, 0), 1)]);
        assert_eq!(&a * &b, p(&[((0, 0), 1), ((2, 0), -1)]));
    }

    #[test]
    fn invert_vars_examples() {
        let a = p(&[((0, 0), 1), ((1, 1), 1)]);
        assert_eq!(a.invert_vars(), p(&[((0, 0), 1), ((-1, -1), 1)]));
        assert_eq!(BivariatePoly::constant(7).invert_vars(), BivariatePoly::constant(7));
        assert_eq!(p(&[((2, 1), 1)]).invert_vars(), p(&[((-2, -1), 1)]));
    }

    #[test]
    fn diagonal_decompose_examples() {
        let a = p(&[((0, 0), 1), ((1, 1), 2), ((2, 2), 1)]);
        let slices = a.diagonal_decompose();
        assert_eq!(slices.len(), 1);
        assert_eq!(slices[&0], WPoly::from_dense(&[1, 2, 1]));

        let b = p(&[((1, 0), 1), ((0, 1), 1)]);
        let slices = b.diagonal_decompose();
        assert_eq!(slices[&1], WPoly::one());
        assert_eq!(slices[&-1], WPoly::one());

        let c = p(&[((2, 1), 1)]);
        let slices = c.diagonal_decompose();
        assert_eq!(slices.len(), 1);
        assert_eq!(slices[&1], WPoly::monomial(1, 1));
    }

    #[test]
    fn no_zero_terms_after_cancellation() {
        let a = p(&[((1, 0), 1)]);
        let diff = &a - &a;
        assert!(diff.is_zero());
        assert_eq!(diff.len(), 0);
    }

    #[test]
    fn display() {
        let a = p(&[((0, 0), 1), ((1, 0), -2), ((0, 1), -2), ((1, 1), 1)]);
        assert_eq!(a.to_string(), "1 - 2u - 2v + uv");
        assert_eq!(p(&[((-1, -1), 3)]).to_string(), "3u^-1v^-1");
    }
}
