//! Stringy E-functions of Gorenstein canonical varieties and the identities
//! they satisfy.
//!
//! Given a log-resolution with exceptional components `D_j` of discrepancy
//! `a_j`, the stringy E-function is
//!
//! ```text
//! E_st(X; u, v) = sum_J E(D_J; u, v) prod_{j in J} (uv - (uv)^(a_j+1)) / ((uv)^(a_j+1) - 1)
//! ```
//!
//! and the stringy Hodge numbers are `h^{p,q}_st = (-1)^(p+q) b_{p,q}`, where
//! `b_{p,q}` are the coefficients of its power-series expansion at `u = v = 0`.

mod descriptor;

pub use descriptor::{Component, DescriptorViolation, ResolutionDescriptor, Stratum};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::polyalg::{BivariatePoly, DenominatorSpec, StringyFunction, WPoly};
use crate::Error;

/// Where the expansion defining `b_{p,q}` is taken.
pub const EXPANSION_POINT: &str = "power series at u = v = 0, 1/((uv)^m - 1) = -sum_k (uv)^(km)";

/// Assembles `E_st` over the common denominator `prod_{a_j >= 1} ((uv)^(a_j+1) - 1)`.
///
/// Strata containing a discrepancy-zero component contribute nothing.
pub fn stringy_e(d: &ResolutionDescriptor) -> StringyFunction {
    let factor_of = |id: u32| d.discrepancy(id).map(|a| a + 1);
    let positive: Vec<(u32, u32)> = d
        .components()
        .iter()
        .filter(|c| c.discrepancy >= 1)
        .map(|c| (c.id, c.discrepancy + 1))
        .collect();
    let denominator =
        DenominatorSpec::new(positive.iter().map(|(_, m)| *m).collect()).expect("exponents are at least 2");

    let mut numerator = BivariatePoly::zero();
    for (stratum, diamond) in d.strata() {
        let ids = stratum.ids();
        if ids.iter().any(|&id| factor_of(id) == Some(1)) {
            continue;
        }
        let mut w_part = WPoly::one();
        for &(id, m) in &positive {
            let factor = if ids.contains(&id) {
                WPoly::from_terms([(1, 1), (i64::from(m), -1)])
            } else {
                WPoly::cyclotomic_like(m)
            };
            w_part = &w_part * &factor;
        }
        numerator = &numerator + &diamond.e_polynomial().mul_w(&w_part);
    }
    StringyFunction::new(numerator, denominator)
}

/// Outcome of the Poincare-duality identity `E_st(u,v) = (uv)^n E_st(1/u, 1/v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PdCheck {
    Holds,
    Fails,
    /// Some stratum does not satisfy Poincare duality itself, so the identity
    /// has no reason to hold.
    Inconclusive(Vec<Stratum>),
}

impl PdCheck {
    pub fn holds(&self) -> bool {
        matches!(self, Self::Holds)
    }
}

/// Structural consequences of `E_st` being a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolynomialConsequences {
    /// `E_st` is not a polynomial.
    Inapplicable,
    Checked {
        degree: Option<i64>,
        degree_ok: bool,
        duality_ok: bool,
        vanishing_ok: bool,
    },
}

impl PolynomialConsequences {
    pub fn passes(&self) -> Option<bool> {
        match self {
            Self::Inapplicable => None,
            Self::Checked {
                degree_ok,
                duality_ok,
                vanishing_ok,
                ..
            } => Some(*degree_ok && *duality_ok && *vanishing_ok),
        }
    }
}

/// Stringy Hodge numbers of a descriptor up to a total-degree bound.
#[derive(Clone, Debug)]
pub struct StringyReport {
    pub e_function: StringyFunction,
    /// `E_st` as a polynomial, when the denominator divides it.
    pub polynomial: Option<BivariatePoly>,
    /// Coefficients `b_{p,q}` with `p + q <= bound` are exact; others were not computed.
    pub bound: i64,
    coefficients: BTreeMap<(i64, i64), BigInt>,
    pub symmetry: bool,
    pub poincare_duality: PdCheck,
    pub polynomial_consequences: PolynomialConsequences,
}

impl StringyReport {
    /// `b_{p,q}`; zero for `p + q > bound` only because it was not computed.
    pub fn coefficient(&self, p: i64, q: i64) -> BigInt {
        self.coefficients.get(&(p, q)).cloned().unwrap_or_default()
    }

    /// `h^{p,q}_st = (-1)^{p+q} b_{p,q}`.
    pub fn h_st(&self, p: i64, q: i64) -> BigInt {
        let b = self.coefficient(p, q);
        if (p + q).rem_euclid(2) == 0 {
            b
        } else {
            -b
        }
    }

    /// Nonzero `b_{p,q}` within the bound.
    pub fn coefficients(&self) -> &BTreeMap<(i64, i64), BigInt> {
        &self.coefficients
    }

    /// All `(p, q)` with `p, q >= 0` and `p + q <= bound`.
    pub fn cells(&self) -> impl Iterator<Item = (i64, i64)> {
        let bound = self.bound;
        (0..=bound.max(-1)).flat_map(move |t| (0..=t).map(move |p| (p, t - p)))
    }

    /// Cells with `h^{p,q}_st < 0`.
    pub fn negative_cells(&self) -> Vec<((i64, i64), BigInt)> {
        self.cells()
            .map(|(p, q)| ((p, q), self.h_st(p, q)))
            .filter(|(_, h)| h.is_negative())
            .collect()
    }
}

/// Expands `E_st` to total degree `bound` (default `2n`) and runs the identity checks.
pub fn stringy_hodge_table(d: &ResolutionDescriptor, bound: Option<u32>) -> StringyReport {
    let bound = bound.map_or(2 * i64::from(d.dim()), i64::from);
    let e_function = stringy_e(d);
    let polynomial = e_function.to_polynomial();
    let coefficients = e_function.series_coefficients(bound);
    StringyReport {
        symmetry: symmetric(&e_function),
        poincare_duality: pd_identity(d, &e_function),
        polynomial_consequences: polynomial_consequences(d.dim(), polynomial.as_ref()),
        e_function,
        polynomial,
        bound,
        coefficients,
    }
}

fn symmetric(f: &StringyFunction) -> bool {
    f.numerator().swap_vars() == *f.numerator()
}

/// `E_st(u, v) = E_st(v, u)`.
pub fn check_symmetry(d: &ResolutionDescriptor) -> bool {
    symmetric(&stringy_e(d))
}

fn pd_identity(d: &ResolutionDescriptor, f: &StringyFunction) -> PdCheck {
    let failures = d.poincare_duality_failures();
    if !failures.is_empty() {
        return PdCheck::Inconclusive(failures);
    }
    if f.poincare_dual(i64::from(d.dim())).equals(f) {
        PdCheck::Holds
    } else {
        PdCheck::Fails
    }
}

/// `E_st(u, v) = (uv)^n E_st(1/u, 1/v)`, checked exactly.
pub fn check_pd_identity(d: &ResolutionDescriptor) -> PdCheck {
    pd_identity(d, &stringy_e(d))
}

fn polynomial_consequences(n: u32, poly: Option<&BivariatePoly>) -> PolynomialConsequences {
    let Some(poly) = poly else {
        return PolynomialConsequences::Inapplicable;
    };
    let n = i64::from(n);
    let degree = poly.total_degree();
    let vanishing_ok = poly
        .terms()
        .all(|((p, q), _)| (0..=n).contains(&p) && (0..=n).contains(&q));
    // (-1)^(p+q) = (-1)^(2n-p-q), so comparing b is comparing h_st.
    let duality_ok = (0..=n)
        .flat_map(|p| (0..=n).map(move |q| (p, q)))
        .all(|(p, q)| poly.coeff(p, q) == poly.coeff(n - p, n - q));
    PolynomialConsequences::Checked {
        degree,
        degree_ok: degree == Some(2 * n),
        duality_ok,
        vanishing_ok,
    }
}

/// Degree `2n`, `h^{p,q}_st = h^{n-p,n-q}_st` and vanishing outside the
/// `n x n` square, when `E_st` is a polynomial.
pub fn check_polynomial_consequences(d: &ResolutionDescriptor) -> PolynomialConsequences {
    polynomial_consequences(d.dim(), stringy_e(d).to_polynomial().as_ref())
}

fn require_terminal(d: &ResolutionDescriptor) -> Result<(), Error> {
    match d.components().iter().find(|c| c.discrepancy == 0) {
        Some(c) => Err(Error::NotTerminal { component: c.id }),
        None => Ok(()),
    }
}

fn h(d: &crate::hodge::HodgeDiamond, p: i64, q: i64) -> i64 {
    d.get(p, q) as i64
}

/// Closed forms for `h^{p,0}_st`, `h^{p,1}_st` and `h^{p,2}_st` of a terminal
/// variety in terms of the resolution data.
pub fn closed_form_h(d: &ResolutionDescriptor, p: i64, q: i64) -> Result<i64, Error> {
    let y = d.ambient();
    match q {
        0 => Ok(h(&y, p, 0)),
        1 => {
            require_terminal(d)?;
            Ok(h(&y, p, 1) - h(&d.level(1), p - 1, 0))
        }
        2 => {
            require_terminal(d)?;
            let d1 = d.level(1);
            let d2 = d.level(2);
            let crepant_like: i64 = d
                .components()
                .iter()
                .filter(|c| c.discrepancy == 1)
                .filter_map(|c| d.stratum(&[c.id]))
                .map(|dj| h(dj, p - 2, 0))
                .sum();
            Ok(h(&y, p, 2) - h(&d1, p - 1, 1) + h(&d2, p - 2, 0) + crepant_like)
        }
        _ => Err(Error::UnsupportedDegree(q)),
    }
}

/// `a_{p,q} = sum_k (-1)^k h^{p-k,q-k}(D(k))`, the part of `h^{p,q}_st`
/// that does not see discrepancies.
pub fn a_pq(d: &ResolutionDescriptor, p: i64, q: i64) -> i64 {
    let top = p.min(q).min(d.depth() as i64);
    (0..=top.max(-1))
        .map(|k| {
            let term = h(&d.level(k as usize), p - k, q - k);
            if k % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// Number of divisors with discrepancy exactly 1, counted with multiplicity
/// (`h^0(D_j)` summed over components with `a_j = 1`).
pub fn discrepancy_one_count(d: &ResolutionDescriptor) -> i64 {
    d.components()
        .iter()
        .filter(|c| c.discrepancy == 1)
        .filter_map(|c| d.stratum(&[c.id]))
        .map(|dj| dj.components() as i64)
        .sum()
}

/// `h^{2,2}_st = a_{2,2} + sum_{a_j = 1} h^0(D_j)` for a terminal fourfold.
pub fn h22st_fourfold(d: &ResolutionDescriptor) -> Result<i64, Error> {
    if d.dim() != 4 {
        return Err(Error::WrongDimension {
            expected: 4,
            found: d.dim(),
        });
    }
    require_terminal(d)?;
    Ok(a_pq(d, 2, 2) + discrepancy_one_count(d))
}

/// Whether two descriptors have the same stringy E-function.
pub fn crepant_compare(d1: &ResolutionDescriptor, d2: &ResolutionDescriptor) -> Result<bool, Error> {
    if d1.dim() != d2.dim() {
        return Err(Error::DimensionMismatch {
            left: d1.dim(),
            right: d2.dim(),
        });
    }
    Ok(stringy_e(d1).equals(&stringy_e(d2)))
}

/// A coefficient where two expansions disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientDifference {
    pub p: i64,
    pub q: i64,
    pub left: BigInt,
    pub right: BigInt,
}

/// The first `(p, q)`, ordered by total degree and then by `p`, at which the
/// expansions of two stringy E-functions differ. Searches up to `max_degree`.
pub fn first_difference(f: &StringyFunction, g: &StringyFunction, max_degree: i64) -> Option<CoefficientDifference> {
    if f.equals(g) {
        return None;
    }
    let mut bound = 8.min(max_degree);
    loop {
        let left = f.series_coefficients(bound);
        let right = g.series_coefficients(bound);
        let mut keys: Vec<(i64, i64)> = left.keys().chain(right.keys()).copied().collect();
        keys.sort_by_key(|(p, q)| (p + q, *p));
        keys.dedup();
        for (p, q) in keys {
            let l = left.get(&(p, q)).cloned().unwrap_or_else(BigInt::zero);
            let r = right.get(&(p, q)).cloned().unwrap_or_else(BigInt::zero);
            if l != r {
                return Some(CoefficientDifference {
                    p,
                    q,
                    left: l,
                    right: r,
                });
            }
        }
        if bound >= max_degree {
            return None;
        }
        bound = (bound * 2).min(max_degree);
    }
}

#[cfg(test)]
mod tests;
