use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::*;
use crate::catalog;
use crate::hodge::HodgeDiamond;
use crate::polyalg::WPoly;

fn w_poly(coeffs: &[i64]) -> BivariatePoly {
    BivariatePoly::from_diagonal(&WPoly::from_dense(coeffs))
}

#[test]
fn smooth_variety_is_its_own_e_polynomial() {
    let d = catalog::smooth_p3();
    let f = stringy_e(&d);
    assert_eq!(f.to_polynomial(), Some(d.ambient().e_polynomial()));
    let report = stringy_hodge_table(&d, None);
    for p in 0..=3 {
        for q in 0..=3 {
            assert_eq!(report.h_st(p, q), BigInt::from(d.ambient().get(p, q)));
        }
    }
}

#[test]
fn smooth_with_odd_cohomology() {
    let y = HodgeDiamond::curve(2).kunneth(&HodgeDiamond::projective_space(1));
    let d = ResolutionDescriptor::smooth("C x P^1", y.clone()).unwrap();
    let report = stringy_hodge_table(&d, None);
    assert_eq!(report.h_st(1, 0), BigInt::from(2));
    assert_eq!(report.coefficient(1, 0), BigInt::from(-2));
    assert_eq!(report.polynomial, Some(y.e_polynomial()));
}

#[test]
fn node_blowup_subtracts_w_and_w_squared() {
    let d = catalog::node_blowup();
    // (1+w)^2 (w - w^2)/(w^2 - 1) simplifies to -w - w^2.
    let expected = &d.ambient().e_polynomial() - &w_poly(&[0, 1, 1]);
    assert_eq!(stringy_e(&d).to_polynomial(), Some(expected));
    let report = stringy_hodge_table(&d, None);
    assert_eq!(report.h_st(1, 1), BigInt::from(d.ambient().get(1, 1) - 1));
}

#[test]
fn burkhardt_h11() {
    let report = stringy_hodge_table(&catalog::burkhardt_x0(), None);
    assert_eq!(report.h_st(1, 1), BigInt::from(16));
    assert_eq!(report.polynomial, Some(w_poly(&[1, 16, 16, 1])));
}

#[test]
fn burkhardt_times_line_h22() {
    let report = stringy_hodge_table(&catalog::burkhardt_times_p1(), None);
    assert_eq!(report.h_st(2, 2), BigInt::from(32));
    assert_eq!(report.polynomial, Some(w_poly(&[1, 17, 32, 17, 1])));
}

#[test]
fn non_polynomial_expansion() {
    // Y = P^3, one P^2 with discrepancy 3 (not geometric): the factor
    // (1 + w + w^2)(w - w^4)/(w^4 - 1) is not a polynomial.
    let d = ResolutionDescriptor::from_parts(
        3,
        "synthetic",
        vec![Component::new(1, 3)],
        [
            (vec![], HodgeDiamond::projective_space(3)),
            (vec![1], HodgeDiamond::projective_space(2)),
        ],
    )
    .unwrap();
    let report = stringy_hodge_table(&d, Some(10));
    assert!(report.polynomial.is_none());
    assert_eq!(report.polynomial_consequences, PolynomialConsequences::Inapplicable);
    // Oracle: factor series -w + w^4 - w^5 + w^8 - w^9 times 1 + w + w^2, plus 1 + w + w^2 + w^3.
    let factor = crate::polyalg::series_expand_factor(3, 5);
    let expected = &(&WPoly::from_dense(&[1, 1, 1]) * &factor) + &WPoly::from_dense(&[1, 1, 1, 1]);
    for k in 0..=5 {
        assert_eq!(report.coefficient(k, k), expected.coeff(k), "w^{k}");
    }
    assert!(report.poincare_duality.holds());
    assert!(report.symmetry);
}

#[test]
fn symmetry_negative_control() {
    let broken = HodgeDiamond::from_rows_unchecked(2, vec![vec![1, 0, 0], vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
    let d = ResolutionDescriptor::new_unchecked(
        3,
        "broken",
        vec![Component::new(1, 1)],
        BTreeMap::from([
            (Stratum::ambient(), HodgeDiamond::projective_space(3)),
            (Stratum::new(vec![1]).unwrap(), broken),
        ]),
    );
    assert!(!d.violations().is_empty());
    assert!(!check_symmetry(&d));
    assert!(check_symmetry(&catalog::node_blowup()));
}

#[test]
fn pd_identity_examples() {
    assert_eq!(check_pd_identity(&catalog::smooth_p3()), PdCheck::Holds);
    assert_eq!(check_pd_identity(&catalog::node_blowup()), PdCheck::Holds);
    assert_eq!(check_pd_identity(&catalog::burkhardt_times_p1()), PdCheck::Holds);
}

#[test]
fn pd_identity_inconclusive_without_stratum_duality() {
    let d = ResolutionDescriptor::from_parts(
        2,
        "non-PD",
        vec![Component::new(1, 1)],
        [
            (
                vec![],
                HodgeDiamond::from_entries(2, [((0, 0), 1), ((1, 1), 3)]).unwrap(),
            ),
            (vec![1], HodgeDiamond::projective_space(1)),
        ],
    )
    .unwrap();
    assert_eq!(check_pd_identity(&d), PdCheck::Inconclusive(vec![Stratum::ambient()]));
}

#[test]
fn pd_identity_detects_tampered_function() {
    let f = stringy_e(&catalog::node_blowup());
    let tampered = StringyFunction::new(
        f.numerator() + &BivariatePoly::monomial(1, 1, 1),
        f.denominator().clone(),
    );
    assert!(!tampered.poincare_dual(3).equals(&tampered));
}

#[test]
fn polynomial_consequences_examples() {
    for d in [
        catalog::smooth_p3(),
        catalog::node_blowup(),
        catalog::burkhardt_times_p1(),
    ] {
        assert_eq!(check_polynomial_consequences(&d).passes(), Some(true), "{}", d.label());
    }
}

#[test]
fn closed_forms() {
    assert_eq!(closed_form_h(&catalog::burkhardt_x0(), 1, 1).unwrap(), 16);
    let smooth = catalog::smooth_p3();
    for p in 0..=3 {
        for q in 0..=2 {
            assert_eq!(closed_form_h(&smooth, p, q).unwrap(), smooth.ambient().get(p, q) as i64);
        }
    }
    let node = catalog::node_blowup();
    assert_eq!(closed_form_h(&node, 1, 1).unwrap(), 3 - 1);
}

#[test]
fn closed_form_errors() {
    assert_eq!(
        closed_form_h(&catalog::smooth_p3(), 0, 3),
        Err(Error::UnsupportedDegree(3))
    );
    let crepant = ResolutionDescriptor::from_parts(
        3,
        "crepant divisor",
        vec![Component::new(4, 0)],
        [
            (vec![], HodgeDiamond::projective_space(3)),
            (vec![4], HodgeDiamond::projective_space(2)),
        ],
    )
    .unwrap();
    assert_eq!(closed_form_h(&crepant, 1, 1), Err(Error::NotTerminal { component: 4 }));
    assert!(closed_form_h(&crepant, 2, 0).is_ok());
}

#[test]
fn a_pq_examples() {
    assert_eq!(a_pq(&catalog::burkhardt_x0(), 2, 2), -29);
    assert_eq!(a_pq(&catalog::burkhardt_times_p1(), 2, 2), -13);
    let smooth = catalog::smooth_p3();
    for p in 0..=3 {
        assert_eq!(a_pq(&smooth, p, p), 1);
    }
    assert_eq!(a_pq(&smooth, -1, 0), 0);
}

#[test]
fn h22st_fourfold_examples() {
    assert_eq!(h22st_fourfold(&catalog::burkhardt_times_p1()).unwrap(), 32);
    let smooth = ResolutionDescriptor::smooth("P^4", HodgeDiamond::projective_space(4)).unwrap();
    assert_eq!(h22st_fourfold(&smooth).unwrap(), 1);
    let neg = catalog::synthetic_negative_fourfold();
    assert_eq!(h22st_fourfold(&neg).unwrap(), a_pq(&neg, 2, 2));
    assert!(matches!(
        h22st_fourfold(&catalog::burkhardt_x0()),
        Err(Error::WrongDimension { expected: 4, found: 3 })
    ));
}

#[test]
fn crepant_comparisons() {
    assert!(crepant_compare(&catalog::node_small_resolution(), &catalog::node_blowup()).unwrap());
    assert!(crepant_compare(&catalog::node_blowup(), &catalog::node_blowup()).unwrap());
    assert!(!crepant_compare(&catalog::node_small_resolution(), &catalog::node_blowup_mislabeled()).unwrap());
    assert!(crepant_compare(&catalog::smooth_p3(), &catalog::blowup_point_p3()).unwrap());
    assert!(matches!(
        crepant_compare(&catalog::smooth_p3(), &catalog::burkhardt_times_p1()),
        Err(Error::DimensionMismatch { left: 3, right: 4 })
    ));
}

#[test]
fn mislabeled_discrepancy_differs_at_w_squared() {
    let small = stringy_e(&catalog::node_small_resolution());
    let wrong = stringy_e(&catalog::node_blowup_mislabeled());
    let diff = first_difference(&small, &wrong, 64).unwrap();
    assert_eq!((diff.p, diff.q), (2, 2));
    assert!(first_difference(&small, &small, 64).is_none());
}

#[test]
fn zero_discrepancy_components_drop_out() {
    let with = ResolutionDescriptor::from_parts(
        3,
        "with crepant divisor",
        vec![Component::new(1, 0), Component::new(2, 1)],
        [
            (vec![], HodgeDiamond::projective_space(3)),
            (vec![1], HodgeDiamond::projective_space(2)),
            (vec![2], HodgeDiamond::quadric_surface()),
            (vec![1, 2], HodgeDiamond::projective_space(1)),
        ],
    )
    .unwrap();
    let without = ResolutionDescriptor::from_parts(
        3,
        "without",
        vec![Component::new(2, 1)],
        [
            (vec![], HodgeDiamond::projective_space(3)),
            (vec![2], HodgeDiamond::quadric_surface()),
        ],
    )
    .unwrap();
    assert!(crepant_compare(&with, &without).unwrap());
    assert_eq!(stringy_e(&with).denominator().factors(), &[2]);
}

#[test]
fn report_cells_cover_bound() {
    let report = stringy_hodge_table(&catalog::smooth_p3(), Some(2));
    assert_eq!(report.cells().count(), 6);
    assert_eq!(report.bound, 2);
    assert!(report.negative_cells().is_empty());
}
