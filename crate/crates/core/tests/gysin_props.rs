use mmm_core::algebra::{int, parse_polynomial, GradedPolynomial, Rational};
use mmm_core::charring::so_ring;
use mmm_core::gysin::{
    bsu2_plus_trivial, ch_pushforward, ch_pushforward_series, kappa_table, projectivize,
    BundleSpec, KappaDomain,
};
use mmm_core::RingPresentation;
use proptest::prelude::*;

fn element(ring: &RingPresentation, degree: u32, coeffs: &[i64]) -> GradedPolynomial {
    let basis = ring.monomial_basis(degree).unwrap();
    let coords: Vec<Rational> = (0..basis.len())
        .map(|i| int(coeffs[i % coeffs.len()]))
        .collect();
    GradedPolynomial::from_terms(ring.table(), basis.into_iter().zip(coords))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn base_linearity(m in 1u32..=4, dx in 1u32..=8, dy in 1u32..=3, a in prop::collection::vec(-5i64..=5, 1..8)) {
        let f = bsu2_plus_trivial(m).unwrap();
        let x = element(f.total(), 2 * dx, &a);
        let y = element(f.base(), 4 * dy, &a);
        let lhs = f.gysin(&f.total().mul(&f.pullback(&y), &x));
        prop_assert_eq!(lhs, f.base().mul(&y, &f.gysin(&x)));
    }

    #[test]
    fn pushforward_of_pullback_vanishes(m in 1u32..=4, d in 0u32..=4, a in prop::collection::vec(-5i64..=5, 1..4)) {
        let f = bsu2_plus_trivial(m).unwrap();
        let y = element(f.base(), 4 * d, &a);
        prop_assert!(f.gysin(&f.pullback(&y)).is_zero());
    }

    #[test]
    fn two_sources_of_a_p_agree(m in 2u32..=6) {
        prop_assert_eq!(ch_pushforward(m, 5).unwrap(), ch_pushforward_series(m, 5));
    }
}

#[test]
fn p4_minus_chi_power_is_in_the_kernel() {
    let fib = projectivize(&BundleSpec::universal_su(3), "z").unwrap();
    let so4 = so_ring(4);
    for d in 1..=4u32 {
        let x =
            so4.reduce(&parse_polynomial(&format!("(p_4 - chi)^{}", d + 1), so4.table()).unwrap());
        assert!(fib.kappa(&x).unwrap().is_zero());
        let table = kappa_table(&fib, 4 * d + 4, KappaDomain::Full).unwrap();
        assert!(table.apply(&x).is_zero());
    }
}
