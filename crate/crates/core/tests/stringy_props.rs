use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stringy_core::analysis::{product_stringy, threefold_h22_minus_h11, threefold_h22_minus_h11_expansion};
use stringy_core::random::{random_descriptor, random_pd_diamond, RandomDescriptorParams};
use stringy_core::stringy::{
    check_pd_identity, check_polynomial_consequences, check_symmetry, closed_form_h, stringy_e, stringy_hodge_table,
    PdCheck,
};
use stringy_core::{BivariatePoly, ResolutionDescriptor};

fn descriptor(seed: u64, terminal: bool) -> ResolutionDescriptor {
    let params = RandomDescriptorParams {
        terminal,
        ..RandomDescriptorParams::default()
    };
    random_descriptor(&mut ChaCha8Rng::seed_from_u64(seed), &params)
}

fn threefold(seed: u64) -> ResolutionDescriptor {
    let params = RandomDescriptorParams {
        terminal: true,
        ..RandomDescriptorParams::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let d = random_descriptor(&mut rng, &params);
        if d.dim() == 3 {
            return d;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn symmetry_and_duality(seed in any::<u64>()) {
        let d = descriptor(seed, false);
        prop_assert!(check_symmetry(&d));
        prop_assert_eq!(check_pd_identity(&d), PdCheck::Holds);
    }

    #[test]
    fn closed_forms_match_expansion(seed in any::<u64>()) {
        let d = descriptor(seed, true);
        let n = i64::from(d.dim());
        let report = stringy_hodge_table(&d, Some(2 * d.dim() + 2));
        for p in 0..=2 * n {
            for q in 0..=2 {
                let closed = closed_form_h(&d, p, q).unwrap();
                prop_assert_eq!(BigInt::from(closed), report.h_st(p, q), "(p,q)=({},{})", p, q);
            }
        }
    }

    #[test]
    fn polynomial_case_structure(seed in any::<u64>()) {
        let d = descriptor(seed, false);
        prop_assert_ne!(check_polynomial_consequences(&d).passes(), Some(false));
    }

    #[test]
    fn threefold_difference_agrees(seed in any::<u64>()) {
        let d = threefold(seed);
        let closed = threefold_h22_minus_h11(&d).unwrap();
        prop_assert_eq!(BigInt::from(closed), threefold_h22_minus_h11_expansion(&d).unwrap());
        if stringy_e(&d).to_polynomial().is_some() {
            prop_assert_eq!(closed, 0);
        }
    }

    #[test]
    fn product_is_multiplicative(seed in any::<u64>(), zseed in any::<u64>(), zdim in 0u32..=2) {
        let d = descriptor(seed, false);
        let z = random_pd_diamond(&mut ChaCha8Rng::seed_from_u64(zseed), zdim, 1, 3);
        let product = product_stringy(&d, &z).unwrap();
        prop_assert_eq!(product.dim(), d.dim() + zdim);
        let expected = stringy_e(&d).mul_poly(&z.e_polynomial());
        prop_assert!(stringy_e(&product).equals(&expected));
    }

    #[test]
    fn tampering_breaks_duality(seed in any::<u64>()) {
        let d = descriptor(seed, false);
        let f = stringy_e(&d);
        // The dual of u^(n+1)/den is u^-1 v^n/den, so the added term is never self-dual.
        let bump = BivariatePoly::monomial(1, i64::from(d.dim()) + 1, 0);
        let tampered = stringy_core::StringyFunction::new(f.numerator() + &bump, f.denominator().clone());
        prop_assert!(!tampered.poincare_dual(i64::from(d.dim())).equals(&tampered));
    }
}
