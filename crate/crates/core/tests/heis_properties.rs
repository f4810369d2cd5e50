mod common;

use heisencalc::braid::BraidWord;
use heisencalc::heis::Generator;
use heisencalc::{HeisAutomorphism, HeisElement};
use num_bigint::BigInt;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn product_is_associative(x in common::element(2), y in common::element(2), z in common::element(2)) {
        let l = x.mul(&y).unwrap().mul(&z).unwrap();
        let r = x.mul(&y.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn u_is_central(x in common::element(3), n in -5i64..5) {
        let c = HeisElement::central(3, n);
        prop_assert_eq!(c.mul(&x).unwrap(), x.mul(&c).unwrap());
        prop_assert!(x.commutator(&x.pow(&BigInt::from(n))).unwrap().is_identity());
    }

    #[test]
    fn commutators_are_central(x in common::element(2), y in common::element(2)) {
        let c = x.commutator(&y).unwrap();
        prop_assert!(c.is_central());
        prop_assert_eq!(c.k(), &(BigInt::from(2) * heisencalc::SymplecticForm::new(2).unwrap().eval(x.coords(), y.coords())));
    }

    #[test]
    fn inverse_is_two_sided(x in common::element(2)) {
        prop_assert!(x.mul(&x.inverse()).unwrap().is_identity());
        prop_assert!(x.inverse().mul(&x).unwrap().is_identity());
    }

    #[test]
    fn normal_forms_round_trip(x in common::element(2)) {
        prop_assert_eq!(&HeisElement::from_word(2, &x.word()).unwrap(), &x);
        prop_assert_eq!(&HeisElement::parse(&x.to_word_string(), 2).unwrap(), &x);
        prop_assert_eq!(&HeisElement::parse(&x.to_pair_string(), 2).unwrap(), &x);
        prop_assert_eq!(&HeisElement::from_word_form(x.word_exponent(), x.coords().to_vec()).unwrap(), &x);
    }

    #[test]
    fn automorphisms_are_homomorphisms(
        phi in common::automorphism(2),
        x in common::element(2),
        y in common::element(2),
    ) {
        let l = phi.apply(&x.mul(&y).unwrap()).unwrap();
        let r = phi.apply(&x).unwrap().mul(&phi.apply(&y).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        prop_assert_eq!(phi.inverse().apply(&phi.apply(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn inner_automorphisms_conjugate(h in common::element(2), x in common::element(2)) {
        let phi = HeisAutomorphism::inner_of(&h);
        prop_assert_eq!(phi.apply(&x).unwrap(), h.conjugate(&x).unwrap());
        let w = phi.inner_witness().expect("inner");
        prop_assert_eq!(HeisAutomorphism::inner_of(&w), phi);
    }
}

fn braid_word(genus: usize, strands: usize) -> impl Strategy<Value = BraidWord> {
    let gens: Vec<String> = (1..strands)
        .map(|i| format!("s{i}"))
        .chain((1..=genus).flat_map(|i| [format!("a{i}"), format!("b{i}")]))
        .collect();
    prop::collection::vec((prop::sample::select(gens), -2i64..3), 0..8).prop_map(move |ls| {
        let text: Vec<String> = ls.into_iter().map(|(g, e)| format!("{g}^{e}")).collect();
        BraidWord::parse(&text.join(" "), genus, strands).unwrap()
    })
}

proptest! {
    #[test]
    fn phi_is_a_homomorphism(x in braid_word(2, 3), y in braid_word(2, 3)) {
        let xy = x.concat(&y).unwrap();
        prop_assert_eq!(xy.phi(), x.phi().mul(&y.phi()).unwrap());
        prop_assert!(x.concat(&x.inverse()).unwrap().phi().is_identity());
    }

    #[test]
    fn sigma_commutators_die_for_two_strands(x in braid_word(1, 2)) {
        let s = BraidWord::parse("s1", 1, 2).unwrap();
        let c = s.commutator(&x).unwrap();
        prop_assert!(c.phi().is_identity());
    }

    #[test]
    fn generator_preimages(i in 1usize..3, b in any::<bool>()) {
        let g = if b { Generator::A(i) } else { Generator::B(i) };
        let w = heisencalc::braid::preimage_of(2, 3, g).unwrap();
        prop_assert_eq!(w.phi(), g.element(2).unwrap());
    }
}
