use mmm_core::algebra::{bernoulli, int, linalg, GradedPolynomial, Rational, RingPresentation};
use mmm_core::charring::so_ring;
use mmm_core::gysin::{projectivize, BundleSpec};
use mmm_core::loops::free_gca;
use num_traits::Zero;
use proptest::prelude::*;

fn element(ring: &RingPresentation, degree: u32, coeffs: &[i64]) -> GradedPolynomial {
    let basis = ring.monomial_basis(degree).unwrap();
    let coords: Vec<Rational> = (0..basis.len())
        .map(|i| int(coeffs[i % coeffs.len()]))
        .collect();
    GradedPolynomial::from_terms(ring.table(), basis.into_iter().zip(coords))
}

fn rings() -> Vec<RingPresentation> {
    vec![
        so_ring(4),
        so_ring(6),
        projectivize(&BundleSpec::universal_su(3), "z")
            .unwrap()
            .total()
            .clone(),
    ]
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-7i64..=7, 1..12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduce_is_idempotent(r in 0usize..3, d in 1u32..8, c in coeffs()) {
        let ring = &rings()[r];
        // Unreduced input: a product of two reduced elements.
        let p = &element(ring, 2 * d, &c) * &element(ring, 2 * d, &c);
        let once = ring.reduce(&p);
        prop_assert_eq!(ring.reduce(&once), once);
    }

    #[test]
    fn reduce_respects_products(r in 0usize..3, d1 in 1u32..6, d2 in 1u32..6, a in coeffs(), b in coeffs()) {
        let ring = &rings()[r];
        let x = &element(ring, 2 * d1, &a) * &element(ring, 2, &b);
        let y = &element(ring, 2 * d2, &b) * &element(ring, 4, &a);
        prop_assert_eq!(ring.reduce(&(&x * &y)), ring.reduce(&(&ring.reduce(&x) * &ring.reduce(&y))));
    }

    #[test]
    fn graded_commutativity(d1 in 1u32..9, d2 in 1u32..9, a in coeffs(), b in coeffs()) {
        let ring = free_gca([("a", 1), ("b", 2), ("c", 3)]).unwrap();
        let x = element(&ring, d1, &a);
        let y = element(&ring, d2, &b);
        let sign = if (d1 * d2) % 2 == 1 { int(-1) } else { int(1) };
        prop_assert!((&(&x * &y) - &(&y * &x).scale(&sign)).is_zero());
    }

    #[test]
    fn nullspace_annihilates(
        rows in 1usize..6,
        cols in 1usize..7,
        entries in prop::collection::vec((-5i64..=5, 1i64..=3), 42),
    ) {
        let m: Vec<Vec<Rational>> = (0..rows)
            .map(|i| (0..cols).map(|j| {
                let (n, d) = entries[i * cols + j];
                Rational::new(n.into(), d.into())
            }).collect())
            .collect();
        let kernel = linalg::nullspace(&m, cols);
        prop_assert_eq!(kernel.len() + linalg::rank(&m, cols), cols);
        for v in &kernel {
            prop_assert!(linalg::mat_vec(&m, v).iter().all(Zero::is_zero));
        }
    }
}

#[test]
fn even_bernoulli_numbers_are_nonzero() {
    for k in 1..=20 {
        assert!(!bernoulli(2 * k).is_zero(), "B_{}", 2 * k);
    }
}
