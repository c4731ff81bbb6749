//! Exact polynomial and rational-function arithmetic in `u`, `v`.
//!
//! Every denominator that appears is a product of factors `(uv)^m - 1`, so the
//! rational functions here never need a bivariate gcd: polynomiality and
//! equality reduce to univariate questions along each diagonal `p - q = d`.

mod bivariate;
mod ratfun;
mod wpoly;

pub use bivariate::BivariatePoly;
pub use ratfun::{DenominatorSpec, StringyFunction};
pub use wpoly::{series_expand_factor, WPoly};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Writes `c1 m1 + c2 m2 - ...` with unit coefficients elided.
pub(crate) fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (&'a BigInt, String)>,
{
    let mut first = true;
    for (c, mono) in terms {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        if mono.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{mag}{mono}")?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}
