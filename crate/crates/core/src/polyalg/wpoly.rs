use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Univariate Laurent polynomial in the diagonal variable `w = uv`.
///
/// Stored sparsely; zero coefficients are never kept.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl WPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// Builds `c[0] + c[1] w + c[2] w^2 + ...`.
    pub fn from_dense(coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(k as i64, BigInt::from(*c));
        }
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c.into());
        }
        p
    }

    /// `w^m - 1`.
    pub fn cyclotomic_like(m: u32) -> Self {
        Self::from_terms([(i64::from(m), 1), (0, -1)])
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn low_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Multiplies by `w^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * factor)).collect(),
        }
    }

    /// Drops every term of degree above `max_degree`.
    pub fn truncate(&self, max_degree: i64) -> Self {
        Self {
            coeffs: self.coeffs.range(..=max_degree).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    /// Power-series inverse at `w = 0`, up to and including `w^order`.
    ///
    /// Returns `None` unless the lowest term is a constant `±1`, which is the
    /// only case where the inverse is an integer power series.
    pub fn series_inverse(&self, order: i64) -> Option<WPoly> {
        let c0 = self.coeffs.get(&0)?;
        if self.low_degree() != Some(0) || !c0.abs().is_one() {
            return None;
        }
        if order < 0 {
            return Some(Self::zero());
        }
        let n = order as usize;
        let mut inv: Vec<BigInt> = vec![BigInt::zero(); n + 1];
        inv[0] = c0.clone();
        for i in 1..=n {
            let mut acc = BigInt::zero();
            for (e, c) in self.coeffs.range(1..=i as i64) {
                acc += c * &inv[i - *e as usize];
            }
            // c0 is ±1, so dividing is multiplying.
            inv[i] = -(acc * c0);
        }
        Some(Self::from_terms(
            inv.into_iter().enumerate().map(|(k, c)| (k as i64, c)),
        ))
    }

    /// Power-series quotient `self / divisor` at `w = 0`, truncated after `w^max_degree`.
    pub fn series_div(&self, divisor: &WPoly, max_degree: i64) -> Option<WPoly> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let low = self.low_degree().unwrap_or(0);
        let inv = divisor.series_inverse(max_degree - low)?;
        Some((self * &inv).truncate(max_degree))
    }

    /// Exact division in `Z[w, w^-1]`. Returns `None` when `divisor` does not
    /// divide `self` with integer quotient.
    pub fn div_exact(&self, divisor: &WPoly) -> Option<WPoly> {
        let dlow = divisor.low_degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Work with w-free-at-origin shapes; w is a unit in the Laurent ring.
        let d = divisor.shift(-dlow);
        let nlow = self.low_degree().unwrap_or(0);
        let mut rem = self.shift(-nlow);
        let ddeg = d.degree().unwrap_or(0);
        let lead = d.coeff(ddeg);
        let mut quotient = WPoly::zero();
        while let Some(rdeg) = rem.degree() {
            if rdeg < ddeg {
                return None;
            }
            let rc = rem.coeff(rdeg);
            if !(&rc % &lead).is_zero() {
                return None;
            }
            let qc = rc / &lead;
            let qexp = rdeg - ddeg;
            rem = &rem - &d.shift(qexp).scale(&qc);
            quotient.add_term(qexp, qc);
        }
        Some(quotient.shift(nlow - dlow))
    }
}

impl Add for &WPoly {
    type Output = WPoly;
    fn add(self, rhs: &WPoly) -> WPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &WPoly {
    type Output = WPoly;
    fn sub(self, rhs: &WPoly) -> WPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &WPoly {
    type Output = WPoly;
    fn mul(self, rhs: &WPoly) -> WPoly {
        let mut out = WPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &WPoly {
    type Output = WPoly;
    fn neg(self) -> WPoly {
        WPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl fmt::Display for WPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::write_terms(
            f,
            self.coeffs.iter().map(|(e, c)| {
                let mono = match *e {
                    0 => String::new(),
                    1 => "w".to_string(),
                    e => format!("w^{e}"),
                };
                (c, mono)
            }),
        )
    }
}

/// Power series of `(w - w^(a+1)) / (w^(a+1) - 1)` at `w = 0`, truncated after `w^bound`.
///
/// This is the factor each exceptional component of discrepancy `a` contributes.
/// For `a = 0` the numerator vanishes and the result is zero.
pub fn series_expand_factor(discrepancy: u32, bound: u32) -> WPoly {
    if discrepancy == 0 {
        return WPoly::zero();
    }
    let m = i64::from(discrepancy) + 1;
    let numerator = WPoly::from_terms([(1, 1), (m, -1)]);
    let denominator = WPoly::cyclotomic_like(discrepancy + 1);
    numerator
        .series_div(&denominator, i64::from(bound))
        .expect("w^m - 1 has unit constant term")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_series_discrepancy_one() {
        assert_eq!(series_expand_factor(1, 4), WPoly::from_dense(&[0, -1, 1, -1, 1]));
    }

    #[test]
    fn factor_series_discrepancy_zero_vanishes() {
        assert!(series_expand_factor(0, 5).is_zero());
    }

    #[test]
    fn factor_series_discrepancy_two() {
        // Frozen from the multiplication check: (w^3 - 1) * s == w - w^3 mod w^6.
        let s = WPoly::from_dense(&[0, -1, 0, 1, -1, 0]);
        let check = (&s * &WPoly::cyclotomic_like(3)).truncate(5);
        assert_eq!(check, WPoly::from_terms([(1, 1), (3, -1)]));
        assert_eq!(series_expand_factor(2, 5), s);
    }

    #[test]
    fn exact_division() {
        let num = WPoly::from_terms([(1, 1), (3, -1)]);
        let den = WPoly::cyclotomic_like(2);
        assert_eq!(num.div_exact(&den), Some(WPoly::monomial(-1, 1)));
        assert_eq!(WPoly::monomial(1, 1).div_exact(&den), None);
        assert_eq!(den.div_exact(&den), Some(WPoly::one()));
    }

    #[test]
    fn laurent_division_keeps_shift() {
        let den = WPoly::cyclotomic_like(2);
        let num = (&den * &WPoly::from_terms([(-3, 2), (1, 5)])).shift(0);
        assert_eq!(num.div_exact(&den), Some(WPoly::from_terms([(-3, 2), (1, 5)])));
    }

    #[test]
    fn series_inverse_needs_unit_constant() {
        assert!(WPoly::from_dense(&[2, 1]).series_inverse(3).is_none());
        assert!(WPoly::monomial(1, 1).series_inverse(3).is_none());
        let inv = WPoly::from_dense(&[1, -1]).series_inverse(4).unwrap();
        assert_eq!(inv, WPoly::from_dense(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(WPoly::from_dense(&[1, -2, 0, 1]).to_string(), "1 - 2w + w^3");
        assert_eq!(WPoly::zero().to_string(), "0");
    }
}
