//! Local defect of threefold singularities, diamond inequalities, products and
//! nonnegativity reports.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Signed;

use crate::hodge::{DiamondChecks, HodgeDiamond};
use crate::stringy::{
    a_pq, closed_form_h, discrepancy_one_count, stringy_hodge_table, Component, ResolutionDescriptor, Stratum,
    StringyReport,
};
use crate::Error;

/// Exceptional surface `E_{i,j}` over a singular point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberComponent {
    pub id: u32,
    pub discrepancy: u32,
    pub diamond: HodgeDiamond,
}

/// Number of connected components of `E_{i,a} ∩ E_{i,b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairCount {
    pub a: u32,
    pub b: u32,
    pub count: u64,
}

/// The exceptional set `f^{-1}(x_i) = ∪_j E_{i,j}` over one point of a threefold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalFiberDescriptor {
    point: String,
    components: Vec<FiberComponent>,
    pairs: Vec<PairCount>,
}

impl ExceptionalFiberDescriptor {
    pub fn new(
        point: impl Into<String>,
        components: Vec<FiberComponent>,
        pairs: Vec<PairCount>,
    ) -> Result<Self, Error> {
        let fd = Self {
            point: point.into(),
            components,
            pairs,
        };
        let problems = fd.problems();
        if problems.is_empty() {
            Ok(fd)
        } else {
            Err(Error::InvalidFiber {
                point: fd.point,
                problems,
            })
        }
    }

    fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut ids = BTreeSet::new();
        for c in &self.components {
            if !ids.insert(c.id) {
                out.push(format!("component {} is declared twice", c.id));
            }
            if c.diamond.dim() != 2 {
                out.push(format!(
                    "component {} must be a surface, its diamond has dimension {}",
                    c.id,
                    c.diamond.dim()
                ));
            }
            let report = c.diamond.validate(DiamondChecks::SYMMETRY_ONLY);
            if !report.is_ok() {
                out.push(format!("component {}: {report}", c.id));
            }
        }
        let mut seen = BTreeSet::new();
        for pair in &self.pairs {
            if pair.a == pair.b {
                out.push(format!("pair ({}, {}) pairs a component with itself", pair.a, pair.b));
            }
            for id in [pair.a, pair.b] {
                if !ids.contains(&id) {
                    out.push(format!(
                        "pair ({}, {}) refers to unknown component {id}",
                        pair.a, pair.b
                    ));
                }
            }
            if !seen.insert((pair.a.min(pair.b), pair.a.max(pair.b))) {
                out.push(format!("pair ({}, {}) is listed twice", pair.a, pair.b));
            }
        }
        out
    }

    pub fn point(&self) -> &str {
        &self.point
    }

    pub fn components(&self) -> &[FiberComponent] {
        &self.components
    }

    pub fn pairs(&self) -> &[PairCount] {
        &self.pairs
    }

    /// `h^{1,1}(E_i(1))`.
    pub fn h11_level_one(&self) -> i64 {
        self.components.iter().map(|c| c.diamond.get(1, 1) as i64).sum()
    }

    /// `h^0(E_i(1))`.
    pub fn h0_level_one(&self) -> i64 {
        self.components.iter().map(|c| c.diamond.components() as i64).sum()
    }

    /// `h^0(E_i(2))`.
    pub fn h0_level_two(&self) -> i64 {
        self.pairs.iter().map(|p| p.count as i64).sum()
    }

    /// `h^0` of the discrepancy-one components.
    pub fn discrepancy_one_count(&self) -> i64 {
        self.components
            .iter()
            .filter(|c| c.discrepancy == 1)
            .map(|c| c.diamond.components() as i64)
            .sum()
    }
}

/// `sigma(H, x_i) = h^{1,1}(E_i(1)) - h^0(E_i(2)) - h^0(E_i(1))`.
pub fn local_defect(fd: &ExceptionalFiberDescriptor) -> i64 {
    fd.h11_level_one() - fd.h0_level_two() - fd.h0_level_one()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectCheck {
    pub point: String,
    pub defect: i64,
    pub discrepancy_one: i64,
    /// `defect <= discrepancy_one`. A violation means the fiber cannot come
    /// from a terminal threefold singularity.
    pub within_bound: bool,
}

/// Compares the local defect with the number of discrepancy-one divisors over the point.
pub fn defect_bound_check(fd: &ExceptionalFiberDescriptor) -> DefectCheck {
    let defect = local_defect(fd);
    let discrepancy_one = fd.discrepancy_one_count();
    DefectCheck {
        point: fd.point.clone(),
        defect,
        discrepancy_one,
        within_bound: defect <= discrepancy_one,
    }
}

fn require_threefold_terminal(d: &ResolutionDescriptor) -> Result<(), Error> {
    if d.dim() != 3 {
        return Err(Error::WrongDimension {
            expected: 3,
            found: d.dim(),
        });
    }
    if let Some(c) = d.components().iter().find(|c| c.discrepancy == 0) {
        return Err(Error::NotTerminal { component: c.id });
    }
    Ok(())
}

/// `h^{2,2}_st - h^{1,1}_st = -h^{1,1}(E(1)) + h^0(E(2)) + h^0(E(1)) + sum_{a_j=1} h^0(E_j)`
/// for a terminal threefold.
pub fn threefold_h22_minus_h11(d: &ResolutionDescriptor) -> Result<i64, Error> {
    require_threefold_terminal(d)?;
    let e1 = d.level(1);
    let e2 = d.level(2);
    Ok(-(e1.get(1, 1) as i64) + e2.components() as i64 + e1.components() as i64 + discrepancy_one_count(d))
}

/// The same difference read off the series expansion.
pub fn threefold_h22_minus_h11_expansion(d: &ResolutionDescriptor) -> Result<BigInt, Error> {
    require_threefold_terminal(d)?;
    let report = stringy_hodge_table(d, Some(4));
    Ok(report.h_st(2, 2) - report.h_st(1, 1))
}

/// Descriptor of `X x Z` from a descriptor of `X` and a smooth projective `Z`:
/// every stratum is multiplied by `Z`, discrepancies are unchanged.
pub fn product_stringy(d: &ResolutionDescriptor, z: &HodgeDiamond) -> Result<ResolutionDescriptor, Error> {
    let report = z.validate(DiamondChecks::SMOOTH_PROJECTIVE);
    if !report.is_ok() {
        return Err(Error::InvalidDiamond(report));
    }
    let label = format!("{} x Z", d.label());
    Ok(d.map_strata(d.dim() + z.dim(), label, |_, diamond| diamond.kunneth(z)))
}

/// Assembles a threefold descriptor from the fibers over its singular points.
///
/// Each pairwise intersection is modelled as `count` disjoint rational curves;
/// only its number of components enters the invariants computed here.
pub fn descriptor_from_fibers(
    label: impl Into<String>,
    y: HodgeDiamond,
    fibers: &[ExceptionalFiberDescriptor],
) -> Result<ResolutionDescriptor, Error> {
    let mut components = Vec::new();
    let mut strata = BTreeMap::new();
    strata.insert(Stratum::ambient(), y);
    for fd in fibers {
        for c in &fd.components {
            components.push(Component::new(c.id, c.discrepancy));
            strata.insert(Stratum::new(vec![c.id]).expect("single id"), c.diamond.clone());
        }
        for pair in &fd.pairs {
            if pair.count == 0 {
                continue;
            }
            let key = Stratum::new(vec![pair.a, pair.b]).expect("validated pair");
            strata.insert(key, HodgeDiamond::projective_space(1).copies(pair.count));
        }
    }
    ResolutionDescriptor::new(3, label, components, strata)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Nonnegative,
    Negative,
    NotComputableAtBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Read off the series expansion only.
    Expansion,
    /// Closed form for `q <= 2` (or `p <= 2` by symmetry), checked against the expansion.
    ClosedForm,
    NotComputed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellVerdict {
    pub p: i64,
    pub q: i64,
    pub value: Option<BigInt>,
    pub verdict: Verdict,
    pub provenance: Provenance,
    /// Set when a closed form exists but disagrees with the expansion.
    pub closed_form_mismatch: Option<i64>,
}

/// A negative stringy Hodge number split into its discrepancy-free part
/// `a_{p,q}` and the remaining discrepancy terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativeFinding {
    pub p: i64,
    pub q: i64,
    pub value: BigInt,
    pub a_pq: i64,
    pub discrepancy_terms: BigInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThreefoldInequality {
    pub h22: i64,
    pub h11: i64,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub label: String,
    pub dim: u32,
    pub bound: i64,
    pub cells: Vec<CellVerdict>,
    pub negatives: Vec<NegativeFinding>,
    /// `h^{2,2}_st >= h^{1,1}_st`, checked for threefolds.
    pub threefold_inequality: Option<ThreefoldInequality>,
    pub stringy: StringyReport,
}

impl ConjectureReport {
    pub fn all_nonnegative(&self) -> bool {
        self.cells.iter().all(|c| c.verdict != Verdict::Negative) && self.threefold_inequality.is_none_or(|t| t.holds)
    }

    pub fn cell(&self, p: i64, q: i64) -> Option<&CellVerdict> {
        self.cells.iter().find(|c| c.p == p && c.q == q)
    }
}

fn closed_form_for(d: &ResolutionDescriptor, p: i64, q: i64) -> Option<i64> {
    if q <= 2 {
        closed_form_h(d, p, q).ok()
    } else if p <= 2 {
        closed_form_h(d, q, p).ok()
    } else {
        None
    }
}

fn to_i64(x: &BigInt) -> Option<i64> {
    i64::try_from(x).ok()
}

/// Nonnegativity verdicts for every `h^{p,q}_st` with `p + q <= bound`
/// (default `2n`); cells of the `n x n` square beyond the bound are reported
/// as not computable.
pub fn conjecture_report(d: &ResolutionDescriptor, bound: Option<u32>) -> ConjectureReport {
    let stringy = stringy_hodge_table(d, bound);
    let n = i64::from(d.dim());
    let mut cells = Vec::new();
    let mut negatives = Vec::new();
    for (p, q) in stringy.cells() {
        let value = stringy.h_st(p, q);
        let closed = closed_form_for(d, p, q);
        let mismatch = closed.filter(|c| to_i64(&value) != Some(*c));
        let verdict = if value.is_negative() {
            let a = a_pq(d, p, q);
            negatives.push(NegativeFinding {
                p,
                q,
                value: value.clone(),
                a_pq: a,
                discrepancy_terms: &value - BigInt::from(a),
            });
            Verdict::Negative
        } else {
            Verdict::Nonnegative
        };
        cells.push(CellVerdict {
            p,
            q,
            value: Some(value),
            verdict,
            provenance: if closed.is_some() {
                Provenance::ClosedForm
            } else {
                Provenance::Expansion
            },
            closed_form_mismatch: mismatch,
        });
    }
    for p in 0..=n {
        for q in 0..=n {
            if p + q > stringy.bound {
                cells.push(CellVerdict {
                    p,
                    q,
                    value: None,
                    verdict: Verdict::NotComputableAtBound,
                    provenance: Provenance::NotComputed,
                    closed_form_mismatch: None,
                });
            }
        }
    }
    let threefold_inequality = (d.dim() == 3 && stringy.bound >= 4).then(|| {
        let h22 = to_i64(&stringy.h_st(2, 2)).unwrap_or(i64::MAX);
        let h11 = to_i64(&stringy.h_st(1, 1)).unwrap_or(i64::MAX);
        ThreefoldInequality {
            h22,
            h11,
            holds: h22 >= h11,
        }
    });
    ConjectureReport {
        label: d.label().to_string(),
        dim: d.dim(),
        bound: stringy.bound,
        cells,
        negatives,
        threefold_inequality,
        stringy,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn node_fiber_defect() {
        let fd = catalog::node_fiber();
        assert_eq!(local_defect(&fd), 1);
        assert!(defect_bound_check(&fd).within_bound);
    }

    #[test]
    fn plane_fiber_defect() {
        let fd = catalog::plane_fiber();
        assert_eq!(local_defect(&fd), 0);
        let check = defect_bound_check(&fd);
        assert_eq!((check.defect, check.discrepancy_one), (0, 0));
        assert!(check.within_bound);
    }

    #[test]
    fn two_quadrics_fiber_defect() {
        assert_eq!(local_defect(&catalog::two_quadrics_fiber()), 1);
    }

    #[test]
    fn bound_violation_detected() {
        // Two disjoint quadrics with discrepancy 2: sigma = 4 - 0 - 2 = 2 > 0.
        let fd = ExceptionalFiberDescriptor::new(
            "synthetic",
            vec![
                FiberComponent {
                    id: 1,
                    discrepancy: 2,
                    diamond: HodgeDiamond::quadric_surface(),
                },
                FiberComponent {
                    id: 2,
                    discrepancy: 2,
                    diamond: HodgeDiamond::quadric_surface(),
                },
            ],
            vec![],
        )
        .unwrap();
        let check = defect_bound_check(&fd);
        assert_eq!(check.defect, 2);
        assert!(!check.within_bound);
    }

    #[test]
    fn malformed_pairs_rejected() {
        let comp = |id| FiberComponent {
            id,
            discrepancy: 1,
            diamond: HodgeDiamond::quadric_surface(),
        };
        let err = ExceptionalFiberDescriptor::new(
            "x",
            vec![comp(1), comp(2)],
            vec![PairCount { a: 1, b: 3, count: 1 }, PairCount { a: 2, b: 2, count: 1 }],
        )
        .unwrap_err();
        let Error::InvalidFiber { problems, .. } = err else {
            panic!()
        };
        assert_eq!(problems.len(), 2);
    }

    #[test]
    fn fiber_components_must_be_surfaces() {
        let err = ExceptionalFiberDescriptor::new(
            "x",
            vec![FiberComponent {
                id: 1,
                discrepancy: 1,
                diamond: HodgeDiamond::projective_space(3),
            }],
            vec![],
        );
        assert!(err.is_err());
    }

    #[test]
    fn h22_minus_h11_examples() {
        assert_eq!(threefold_h22_minus_h11(&catalog::node_blowup()).unwrap(), 0);
        assert_eq!(threefold_h22_minus_h11(&catalog::burkhardt_x0()).unwrap(), 0);
        assert_eq!(threefold_h22_minus_h11(&catalog::smooth_p3()).unwrap(), 0);
        assert!(matches!(
            threefold_h22_minus_h11(&catalog::burkhardt_times_p1()),
            Err(Error::WrongDimension { expected: 3, found: 4 })
        ));
    }

    #[test]
    fn h22_minus_h11_matches_expansion_on_catalog() {
        for d in [
            catalog::node_blowup(),
            catalog::burkhardt_x0(),
            catalog::blowup_point_p3(),
            catalog::triangle_descriptor(),
        ] {
            assert_eq!(
                BigInt::from(threefold_h22_minus_h11(&d).unwrap()),
                threefold_h22_minus_h11_expansion(&d).unwrap(),
                "{}",
                d.label()
            );
        }
    }

    #[test]
    fn product_with_point_is_identity() {
        let d = catalog::node_blowup();
        let prod = product_stringy(&d, &HodgeDiamond::point()).unwrap();
        assert_eq!(prod.dim(), 3);
        assert!(crate::stringy::crepant_compare(&d, &prod).unwrap());
    }

    #[test]
    fn product_rejects_non_pd_factor() {
        let z = HodgeDiamond::from_entries(1, [((0, 0), 1)]).unwrap();
        assert!(product_stringy(&catalog::node_blowup(), &z).is_err());
    }

    #[test]
    fn node_times_line() {
        // Oracle: (1 + 2w + 2w^2 + w^3)(1 + w) = 1 + 3w + 4w^2 + 3w^3 + w^4.
        let prod = product_stringy(&catalog::node_blowup(), &HodgeDiamond::projective_space(1)).unwrap();
        let report = stringy_hodge_table(&prod, None);
        let expected = [1, 3, 4, 3, 1];
        for (k, e) in expected.iter().enumerate() {
            assert_eq!(report.h_st(k as i64, k as i64), BigInt::from(*e));
        }
        assert_eq!(crate::stringy::h22st_fourfold(&prod).unwrap(), 4);
    }

    #[test]
    fn burkhardt_times_line_report() {
        let report = conjecture_report(&catalog::burkhardt_times_p1(), None);
        assert!(report.all_nonnegative());
        assert_eq!(report.cell(2, 2).unwrap().value, Some(BigInt::from(32)));
        assert!(report.cells.iter().all(|c| c.closed_form_mismatch.is_none()));
    }

    #[test]
    fn smooth_report_is_nonnegative() {
        let report = conjecture_report(&catalog::smooth_p3(), None);
        assert!(report.all_nonnegative());
        assert_eq!(report.threefold_inequality.unwrap().h22, 1);
    }

    #[test]
    fn synthetic_negative_fourfold_is_flagged() {
        let d = catalog::synthetic_negative_fourfold();
        let report = conjecture_report(&d, None);
        assert!(!report.all_nonnegative());
        let cell = report.cell(2, 2).unwrap();
        assert_eq!(cell.verdict, Verdict::Negative);
        let finding = report.negatives.iter().find(|f| (f.p, f.q) == (2, 2)).unwrap();
        assert_eq!(finding.a_pq, -4);
        assert_eq!(finding.value, BigInt::from(-4));
        assert_eq!(finding.discrepancy_terms, BigInt::from(0));
    }

    #[test]
    fn cells_beyond_bound_not_computable() {
        let report = conjecture_report(&catalog::smooth_p3(), Some(2));
        let cell = report.cell(3, 3).unwrap();
        assert_eq!(cell.verdict, Verdict::NotComputableAtBound);
        assert!(report.threefold_inequality.is_none());
    }

    #[test]
    fn fibers_assemble_into_descriptor() {
        let d = descriptor_from_fibers(
            "two points",
            HodgeDiamond::from_entries(3, [((0, 0), 1), ((1, 1), 5), ((2, 2), 5), ((3, 3), 1)]).unwrap(),
            &[catalog::node_fiber(), catalog::two_quadrics_fiber_with_ids(2, 3)],
        )
        .unwrap();
        let diff = threefold_h22_minus_h11(&d).unwrap();
        let per_point: i64 = [catalog::node_fiber(), catalog::two_quadrics_fiber_with_ids(2, 3)]
            .iter()
            .map(|fd| fd.discrepancy_one_count() - local_defect(fd))
            .sum();
        assert_eq!(diff, per_point);
    }
}
