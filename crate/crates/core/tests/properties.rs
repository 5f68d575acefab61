//! Structural invariants as property tests.

use ensemble_moments::algebra::{rat, LaurentPoly};
use ensemble_moments::characters::character;
use ensemble_moments::ensemble::{Ensemble, Mode, Value};
use ensemble_moments::fluctuations::{connected_correlator, rescaled_trace_moment, xk_joint_central_moment};
use ensemble_moments::moments::{gue_trace_poly, trace_joint_moment};
use ensemble_moments::partitions::Partition;
use ensemble_moments::wick::{face_histogram, wick_connected};
use proptest::prelude::*;

fn partition(max_weight: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..=max_weight, 0..=max_weight)
        .prop_filter_map("weight bound", move |parts| {
            let p = Partition::new(parts);
            (p.weight() <= max_weight).then_some(p)
        })
}

fn even_partition(max_weight: usize) -> impl Strategy<Value = Partition> {
    partition(max_weight).prop_filter("even weight", |p| p.weight() % 2 == 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn symbolic_evaluates_to_fixed(mu in partition(8), n in 1u32..7) {
        for e in [Ensemble::Hermite, Ensemble::laguerre(rat(3)).unwrap()] {
            let sym = trace_joint_moment(&e, &mu, Mode::Symbolic).unwrap().value;
            let fixed = trace_joint_moment(&e, &mu, Mode::Fixed(n)).unwrap().value;
            prop_assert_eq!(Value::Scalar(sym.at(&rat(n as i64)).unwrap()), fixed);
        }
    }

    #[test]
    fn hermite_moments_have_definite_parity(mu in even_partition(10)) {
        let poly = gue_trace_poly(&mu).unwrap();
        let m = mu.weight() / 2;
        if mu.len() % 2 == m % 2 {
            prop_assert!(poly.is_even());
        } else {
            prop_assert!(poly.is_odd());
        }
        // leading coefficient counts planar gluings, so it is positive
        prop_assert!(mu.is_empty() || poly.leading_coeff() > rat(0));
    }

    #[test]
    fn euler_parity_of_faces(mu in even_partition(10)) {
        let hist = face_histogram(&mu, false).unwrap();
        let parity = (mu.weight() / 2 + mu.len()) % 2;
        for (f, &count) in hist.iter().enumerate() {
            prop_assert!(count == 0 || f % 2 == parity);
        }
    }

    #[test]
    fn connected_correlators_match_connected_gluings(mu in even_partition(8)) {
        prop_assume!(!mu.is_empty());
        prop_assert_eq!(connected_correlator(&mu).unwrap().value, wick_connected(&mu).unwrap());
    }

    #[test]
    fn odd_weight_moments_vanish(mu in partition(9)) {
        prop_assume!(mu.weight() % 2 == 1);
        prop_assert!(rescaled_trace_moment(&mu).unwrap().is_zero());
        prop_assert!(gue_trace_poly(&mu).unwrap().is_zero());
    }

    #[test]
    fn odd_chebyshev_products_vanish(ks in prop::collection::vec(1usize..=5, 1..=4)) {
        let odd = ks.iter().filter(|&&k| k % 2 == 1).count();
        prop_assume!(odd % 2 == 1);
        let m = xk_joint_central_moment(&ks, Mode::Symbolic).unwrap();
        prop_assert_eq!(m, Value::Laurent(LaurentPoly::zero()));
    }

    #[test]
    fn characters_are_class_functions_of_conjugates(lam in partition(9)) {
        // χ^{λ'}_μ = sgn(μ) χ^λ_μ, checked on the transposition class
        let n = lam.weight();
        prop_assume!(n >= 2);
        let mut parts = vec![2];
        parts.extend(std::iter::repeat_n(1, n - 2));
        let mu = Partition::new(parts);
        prop_assert_eq!(character(&lam.conjugate(), &mu).unwrap(), -character(&lam, &mu).unwrap());
    }
}
