mod common;

use heisencalc::schrodinger::schrodinger_matrix;
use heisencalc::HeisElement;
use num_bigint::BigInt;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn representation_property(n in 2u32..7, x in common::element(2), y in common::element(2)) {
        let lhs = schrodinger_matrix(n, 2, &x).unwrap().mul(&schrodinger_matrix(n, 2, &y).unwrap());
        let rhs = schrodinger_matrix(n, 2, &x.mul(&y).unwrap()).unwrap();
        prop_assert!(lhs.max_diff(&rhs) < 1e-9);
    }

    #[test]
    fn depends_on_reduced_word_form(
        n in 2u32..9,
        x in common::element(1),
        j in -3i64..4,
        lifts in prop::collection::vec(-3i64..4, 2),
    ) {
        let n_big = BigInt::from(n);
        let coords: Vec<BigInt> = x
            .coords()
            .iter()
            .zip(&lifts)
            .map(|(c, l)| c + &n_big * l)
            .collect();
        let kappa = x.word_exponent() + BigInt::from(2) * &n_big * j;
        let y = HeisElement::from_word_form(kappa, coords).unwrap();
        let d = schrodinger_matrix(n, 1, &x).unwrap().max_diff(&schrodinger_matrix(n, 1, &y).unwrap());
        prop_assert!(d < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn central_traces_match_the_torsion_quotient(
        n in 2u32..8,
        terms in prop::collection::vec((-30i64..30, -4i64..5), 1..5),
    ) {
        use heisencalc::ring::specialize_torsion;
        use heisencalc::HeisPolynomial;
        use num_complex::Complex64;

        let p = HeisPolynomial::from_terms(
            1,
            terms.iter().map(|&(k, c)| (HeisElement::central(1, k), BigInt::from(c))),
        )
        .unwrap();
        let mut trace = Complex64::new(0.0, 0.0);
        for (e, c) in p.terms() {
            let m = schrodinger_matrix(n, 1, e).unwrap();
            let c: f64 = c.to_string().parse().unwrap();
            trace += m.matrix().trace() * c / m.dim() as f64;
        }
        let z = Complex64::from_polar(1.0, std::f64::consts::PI / f64::from(n));
        let value = specialize_torsion(&p, &BigInt::from(2 * n))
            .unwrap()
            .eval_central_torsion(z)
            .unwrap();
        prop_assert!((value - trace).norm() < 1e-9);
    }
}
