use mmm_core::algebra::{bernoulli, factorial, int, Rational, TensorRing};
use mmm_core::symmetric::{
    express_in_elementary, l_class_component, l_class_leading_coefficient, power_sum,
    MultiplicativeSequence, SymmetricPolynomial, INDEX_WEIGHT,
};
use mmm_core::RingPresentation;
use proptest::prelude::*;

proptest! {
    #[test]
    fn newton_round_trip(d in 1usize..=8, m in 1usize..=5) {
        let p = power_sum(d, m, INDEX_WEIGHT);
        prop_assert_eq!(express_in_elementary(&p.expand()).unwrap(), p);
    }

    #[test]
    fn l_series_is_multiplicative(d in 0usize..=5, m1 in 1usize..=3, m2 in 1usize..=3) {
        let seq = MultiplicativeSequence::hirzebruch_l(6);
        let left = RingPresentation::free(SymmetricPolynomial::one(m1, INDEX_WEIGHT).poly().table().clone());
        let right = RingPresentation::free(SymmetricPolynomial::one(m2, INDEX_WEIGHT).poly().table().clone());
        let tensor = TensorRing::new(&left, &right, |s| s.to_string(), |s| format!("{s}'")).unwrap();
        // e_k of the union is sum_{i+j=k} e_i ⊗ e_j.
        let e = |side: &[usize], i: usize| {
            if i == 0 { tensor.ring.one() } else { mmm_core::GradedPolynomial::generator(tensor.ring.table(), side[i - 1]) }
        };
        let images: Vec<_> = (1..=m1 + m2)
            .map(|k| {
                let mut sum = tensor.ring.zero();
                for i in 0..=k.min(m1) {
                    if k - i <= m2 {
                        sum += &(&e(&tensor.left_map, i) * &e(&tensor.right_map, k - i));
                    }
                }
                sum
            })
            .collect();
        let union = seq.component(d, m1 + m2).unwrap().evaluate(&images, &tensor.ring).unwrap();
        let mut split = tensor.ring.zero();
        for i in 0..=d {
            let a = seq.component(i, m1).unwrap();
            let b = seq.component(d - i, m2).unwrap();
            split += &tensor.product(a.poly(), b.poly()).unwrap();
        }
        prop_assert_eq!(union, split);
    }

    #[test]
    fn components_are_stable(m in 2usize..=6, d in 0usize..=6) {
        prop_assume!(d <= m);
        let seq = MultiplicativeSequence::hirzebruch_l(6);
        let f = seq.component(d, m).unwrap();
        prop_assert_eq!(f.with_vars(m - 1), seq.component(d, m - 1).unwrap());
    }
}

#[test]
fn leading_coefficient_of_l() {
    for d in 1..=10usize {
        let two_d = 2 * d as u32;
        let expected = Rational::from_integer(num_bigint::BigInt::from(2).pow(two_d))
            * bernoulli(2 * d)
            / Rational::from_integer(factorial(two_d));
        let c = l_class_component(d, d).coefficient_of_e1_power(d as u32);
        assert_eq!(c, expected, "d = {d}");
        assert_eq!(l_class_leading_coefficient(d), expected);
        assert_ne!(c, int(0));
    }
}
