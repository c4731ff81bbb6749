//! Hodge diamonds of smooth projective varieties and their E-polynomials.
//!
//! A diamond may describe a disconnected variety; it is then the sum of the
//! diamonds of its connected components and `h^{0,0}` counts the components.

use std::fmt;

use num_bigint::BigInt;

use crate::polyalg::BivariatePoly;
use crate::Error;

/// Hodge numbers `h^{p,q}` for `0 <= p, q <= dim`, stored row-major by `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HodgeDiamond {
    dim: u32,
    h: Vec<u64>,
}

/// Which invariants [`HodgeDiamond::validate`] enforces beyond conjugation symmetry.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DiamondChecks {
    /// `h^{p,q} = h^{dim-p, dim-q}`.
    pub poincare_duality: bool,
    /// `h^{0,0} = 1`.
    pub connected: bool,
}

impl DiamondChecks {
    pub const SYMMETRY_ONLY: Self = Self {
        poincare_duality: false,
        connected: false,
    };
    pub const SMOOTH_PROJECTIVE: Self = Self {
        poincare_duality: true,
        connected: false,
    };
    pub const CONNECTED_SMOOTH_PROJECTIVE: Self = Self {
        poincare_duality: true,
        connected: true,
    };
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiamondViolation {
    Shape {
        dim: u32,
        rows: usize,
        bad_row: Option<usize>,
    },
    OutOfRange {
        p: u32,
        q: u32,
    },
    Conjugation {
        p: u32,
        q: u32,
        hpq: u64,
        hqp: u64,
    },
    PoincareDuality {
        p: u32,
        q: u32,
        hpq: u64,
        dual: u64,
    },
    ComponentCount {
        found: u64,
    },
}

impl fmt::Display for DiamondViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Shape { dim, rows, bad_row } => match bad_row {
                Some(r) => write!(f, "row {r} must have {} entries for dimension {dim}", dim + 1),
                None => write!(f, "expected {} rows for dimension {dim}, found {rows}", dim + 1),
            },
            Self::OutOfRange { p, q } => write!(f, "entry ({p},{q}) lies outside the diamond"),
            Self::Conjugation { p, q, hpq, hqp } => {
                write!(f, "h^{{{p},{q}}} = {hpq} but h^{{{q},{p}}} = {hqp}")
            }
            Self::PoincareDuality { p, q, hpq, dual } => {
                write!(
                    f,
                    "Poincare duality fails: h^{{{p},{q}}} = {hpq} but its dual entry is {dual}"
                )
            }
            Self::ComponentCount { found } => {
                write!(f, "connected variety must have h^{{0,0}} = 1, found {found}")
            }
        }
    }
}

/// Every invariant a diamond violates; empty when valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiamondReport {
    pub violations: Vec<DiamondViolation>,
}

impl DiamondReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for DiamondReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl HodgeDiamond {
    /// Builds a diamond from its `(dim+1) x (dim+1)` table, `rows[p][q] = h^{p,q}`.
    /// Only conjugation symmetry is enforced.
    pub fn new(dim: u32, rows: Vec<Vec<u64>>) -> Result<Self, Error> {
        let d = Self::from_rows_unchecked(dim, rows)?;
        d.checked(DiamondChecks::SYMMETRY_ONLY)
    }

    /// Builds a diamond from sparse `((p, q), h)` entries; missing entries are 0.
    pub fn from_entries<I>(dim: u32, entries: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = ((u32, u32), u64)>,
    {
        Self::from_entries_unchecked(dim, entries)?.checked(DiamondChecks::SYMMETRY_ONLY)
    }

    /// Like [`from_entries`](Self::from_entries) but skips the symmetry check.
    /// Entries outside the diamond are still rejected.
    pub fn from_entries_unchecked<I>(dim: u32, entries: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = ((u32, u32), u64)>,
    {
        let mut out = Self::zero(dim);
        for ((p, q), value) in entries {
            if p > dim || q > dim {
                return Err(Error::InvalidDiamond(DiamondReport {
                    violations: vec![DiamondViolation::OutOfRange { p, q }],
                }));
            }
            let idx = out.index(p, q);
            out.h[idx] += value;
        }
        Ok(out)
    }

    /// Like [`new`](Self::new) but skips the symmetry check. The shape is still checked.
    pub fn from_rows_unchecked(dim: u32, rows: Vec<Vec<u64>>) -> Result<Self, Error> {
        let n = dim as usize + 1;
        let shape_error = |bad_row| {
            Error::InvalidDiamond(DiamondReport {
                violations: vec![DiamondViolation::Shape {
                    dim,
                    rows: rows.len(),
                    bad_row,
                }],
            })
        };
        if rows.len() != n {
            return Err(shape_error(None));
        }
        if let Some(r) = rows.iter().position(|row| row.len() != n) {
            return Err(shape_error(Some(r)));
        }
        Ok(Self {
            dim,
            h: rows.into_iter().flatten().collect(),
        })
    }

    fn checked(self, checks: DiamondChecks) -> Result<Self, Error> {
        let report = self.validate(checks);
        if report.is_ok() {
            Ok(self)
        } else {
            Err(Error::InvalidDiamond(report))
        }
    }

    /// The all-zero diamond (the empty variety) of the given dimension.
    pub fn zero(dim: u32) -> Self {
        let n = dim as usize + 1;
        Self { dim, h: vec![0; n * n] }
    }

    fn index(&self, p: u32, q: u32) -> usize {
        p as usize * (self.dim as usize + 1) + q as usize
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// `h^{p,q}`, or 0 outside `0..=dim`.
    pub fn get(&self, p: i64, q: i64) -> u64 {
        let d = i64::from(self.dim);
        if p < 0 || q < 0 || p > d || q > d {
            return 0;
        }
        self.h[self.index(p as u32, q as u32)]
    }

    /// Number of connected components, `h^{0,0}`.
    pub fn components(&self) -> u64 {
        self.get(0, 0)
    }

    pub fn is_empty(&self) -> bool {
        self.h.iter().all(|&x| x == 0)
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.h.chunks(self.dim as usize + 1).map(<[u64]>::to_vec).collect()
    }

    /// Nonzero entries as `((p, q), h^{p,q})`.
    pub fn entries(&self) -> impl Iterator<Item = ((u32, u32), u64)> + '_ {
        let n = self.dim + 1;
        (0..n)
            .flat_map(move |p| (0..n).map(move |q| (p, q)))
            .map(|(p, q)| ((p, q), self.h[self.index(p, q)]))
            .filter(|(_, v)| *v != 0)
    }

    pub fn validate(&self, checks: DiamondChecks) -> DiamondReport {
        let mut violations = Vec::new();
        let n = self.dim;
        for p in 0..=n {
            for q in 0..=n {
                let hpq = self.h[self.index(p, q)];
                if p < q {
                    let hqp = self.h[self.index(q, p)];
                    if hpq != hqp {
                        violations.push(DiamondViolation::Conjugation { p, q, hpq, hqp });
                    }
                }
                if checks.poincare_duality {
                    let (dp, dq) = (n - p, n - q);
                    if (p, q) < (dp, dq) {
                        let dual = self.h[self.index(dp, dq)];
                        if hpq != dual {
                            violations.push(DiamondViolation::PoincareDuality { p, q, hpq, dual });
                        }
                    }
                }
            }
        }
        if checks.connected && self.components() != 1 {
            violations.push(DiamondViolation::ComponentCount {
                found: self.components(),
            });
        }
        DiamondReport { violations }
    }

    /// `E(Z; u, v) = sum (-1)^{p+q} h^{p,q} u^p v^q`.
    pub fn e_polynomial(&self) -> BivariatePoly {
        BivariatePoly::from_terms(self.entries().map(|((p, q), h)| {
            let sign = if (p + q) % 2 == 0 { 1 } else { -1 };
            ((i64::from(p), i64::from(q)), BigInt::from(h) * sign)
        }))
    }

    /// Diamond of the product variety.
    pub fn kunneth(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.dim + other.dim);
        for ((p1, q1), a) in self.entries() {
            for ((p2, q2), b) in other.entries() {
                let idx = out.index(p1 + p2, q1 + q2);
                out.h[idx] += a * b;
            }
        }
        out
    }

    /// Diamond of the disjoint union; both sides must have the same dimension.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self, Error> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(Self {
            dim: self.dim,
            h: self.h.iter().zip(&other.h).map(|(a, b)| a + b).collect(),
        })
    }

    /// Disjoint union of `copies` copies.
    pub fn copies(&self, copies: u64) -> Self {
        Self {
            dim: self.dim,
            h: self.h.iter().map(|x| x * copies).collect(),
        }
    }

    pub fn point() -> Self {
        Self::projective_space(0)
    }

    pub fn projective_space(n: u32) -> Self {
        let mut out = Self::zero(n);
        for p in 0..=n {
            let idx = out.index(p, p);
            out.h[idx] = 1;
        }
        out
    }

    /// Smooth quadric surface, `P^1 x P^1`.
    pub fn quadric_surface() -> Self {
        Self::projective_space(1).kunneth(&Self::projective_space(1))
    }

    pub fn curve(genus: u64) -> Self {
        let mut out = Self::projective_space(1);
        let (i10, i01) = (out.index(1, 0), out.index(0, 1));
        out.h[i10] = genus;
        out.h[i01] = genus;
        out
    }
}

/// Looks up a diamond in the built-in catalog.
///
/// Keys: `point`, `projective_space` (params: `[n]`), `quadric_surface`,
/// `curve` (params: `[genus]`). A trailing `copies` parameter may be given to
/// any key to take a disjoint union, e.g. `("quadric_surface", [45])`.
pub fn builtin_diamond(key: &str, params: &[u64]) -> Result<HodgeDiamond, Error> {
    let bad = || Error::UnknownCatalogEntry(format!("{key}{params:?}"));
    let (base, rest) = match key {
        "point" => (HodgeDiamond::point(), params),
        "quadric_surface" => (HodgeDiamond::quadric_surface(), params),
        "projective_space" => {
            let (&n, rest) = params.split_first().ok_or_else(bad)?;
            let n = u32::try_from(n).map_err(|_| bad())?;
            (HodgeDiamond::projective_space(n), rest)
        }
        "curve" => {
            let (&g, rest) = params.split_first().ok_or_else(bad)?;
            (HodgeDiamond::curve(g), rest)
        }
        _ => return Err(bad()),
    };
    match rest {
        [] => Ok(base),
        [k] => Ok(base.copies(*k)),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[((i64, i64), i64)]) -> BivariatePoly {
        BivariatePoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn e_polynomial_examples() {
        assert_eq!(
            HodgeDiamond::projective_space(1).e_polynomial(),
            poly(&[((0, 0), 1), ((1, 1), 1)])
        );
        assert_eq!(HodgeDiamond::point().e_polynomial(), BivariatePoly::one());
        assert_eq!(
            HodgeDiamond::curve(3).e_polynomial(),
            poly(&[((0, 0), 1), ((1, 0), -3), ((0, 1), -3), ((1, 1), 1)])
        );
    }

    #[test]
    fn e_polynomial_rejects_asymmetric_input() {
        let err = HodgeDiamond::new(1, vec![vec![1, 0], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, Error::InvalidDiamond(_)));
    }

    #[test]
    fn kunneth_examples() {
        let q = HodgeDiamond::quadric_surface();
        assert_eq!(q.rows(), vec![vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 1]]);
        assert_eq!(q.kunneth(&HodgeDiamond::point()), q);

        // Frozen from E(elliptic) * E(P^1) = (1 - u - v + uv)(1 + uv).
        let prod = HodgeDiamond::curve(1).kunneth(&HodgeDiamond::projective_space(1));
        let expected = HodgeDiamond::from_entries(
            2,
            [
                ((0, 0), 1),
                ((1, 0), 1),
                ((0, 1), 1),
                ((1, 1), 2),
                ((2, 1), 1),
                ((1, 2), 1),
                ((2, 2), 1),
            ],
        )
        .unwrap();
        assert_eq!(prod, expected);
        assert_eq!(
            prod.e_polynomial(),
            &HodgeDiamond::curve(1).e_polynomial() * &HodgeDiamond::projective_space(1).e_polynomial()
        );
    }

    #[test]
    fn catalog() {
        assert_eq!(
            builtin_diamond("projective_space", &[2]).unwrap().rows(),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
        let nodes = builtin_diamond("quadric_surface", &[45]).unwrap();
        assert_eq!(nodes.get(0, 0), 45);
        assert_eq!(nodes.get(1, 1), 90);
        assert_eq!(nodes.get(2, 2), 45);
        assert_eq!(
            builtin_diamond("curve", &[0]).unwrap(),
            HodgeDiamond::projective_space(1)
        );
        assert!(matches!(builtin_diamond("k3", &[]), Err(Error::UnknownCatalogEntry(_))));
    }

    #[test]
    fn validate_examples() {
        let p1 = HodgeDiamond::projective_space(1);
        assert!(p1.validate(DiamondChecks::CONNECTED_SMOOTH_PROJECTIVE).is_ok());

        let broken = HodgeDiamond::from_rows_unchecked(1, vec![vec![1, 0], vec![1, 1]]).unwrap();
        let report = broken.validate(DiamondChecks::SYMMETRY_ONLY);
        assert_eq!(
            report.violations,
            vec![DiamondViolation::Conjugation {
                p: 0,
                q: 1,
                hpq: 0,
                hqp: 1
            }]
        );

        let two = p1.copies(2);
        let report = two.validate(DiamondChecks::CONNECTED_SMOOTH_PROJECTIVE);
        assert_eq!(report.violations, vec![DiamondViolation::ComponentCount { found: 2 }]);
        assert!(two.validate(DiamondChecks::SMOOTH_PROJECTIVE).is_ok());
    }

    #[test]
    fn poincare_duality_violation() {
        let d = HodgeDiamond::from_entries(2, [((0, 0), 1), ((1, 1), 1)]).unwrap();
        let report = d.validate(DiamondChecks::SMOOTH_PROJECTIVE);
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(
            report.violations[0],
            DiamondViolation::PoincareDuality { p: 0, q: 0, .. }
        ));
    }

    #[test]
    fn shape_is_checked() {
        assert!(HodgeDiamond::new(1, vec![vec![1, 0]]).is_err());
        assert!(HodgeDiamond::new(1, vec![vec![1, 0], vec![0]]).is_err());
        assert!(HodgeDiamond::from_entries(1, [((2, 0), 1)]).is_err());
    }
}
