#![allow(dead_code)]

use heisencalc::aut::EndomorphismTable;
use heisencalc::aut::FreeGen;
use heisencalc::{HeisAutomorphism, HeisElement, HeisPolynomial, RepMatrix};
use num_bigint::BigInt;
use proptest::prelude::*;

pub fn element(genus: usize) -> impl Strategy<Value = HeisElement> {
    (-40i64..40, prop::collection::vec(-12i64..12, 2 * genus))
        .prop_map(|(k, c)| HeisElement::from_ints(k, &c).unwrap())
}

pub fn small_element(genus: usize) -> impl Strategy<Value = HeisElement> {
    (-4i64..4, prop::collection::vec(-2i64..3, 2 * genus))
        .prop_map(|(k, c)| HeisElement::from_ints(k, &c).unwrap())
}

pub fn poly(genus: usize) -> impl Strategy<Value = HeisPolynomial> {
    prop::collection::vec((small_element(genus), -3i64..4), 0..5).prop_map(move |terms| {
        HeisPolynomial::from_terms(genus, terms.into_iter().map(|(e, c)| (e, BigInt::from(c))))
            .unwrap()
    })
}

/// Words in the twists `T_{aᵢ}^{±1}, T_{bᵢ}^{±1}` followed by an inner automorphism.
pub fn automorphism(genus: usize) -> impl Strategy<Value = HeisAutomorphism> {
    (
        prop::collection::vec((0..2 * genus, prop_oneof![Just(-1i64), Just(1)]), 0..6),
        small_element(genus),
        any::<bool>(),
    )
        .prop_map(move |(letters, h, inner)| {
            let mut acc = if inner {
                HeisAutomorphism::inner_of(&h)
            } else {
                HeisAutomorphism::identity(genus)
            };
            for (t, e) in letters {
                let i = t / 2 + 1;
                let tw = if t % 2 == 0 {
                    HeisAutomorphism::twist_a(genus, i)
                } else {
                    HeisAutomorphism::twist_b(genus, i)
                };
                acc = acc.compose(&tw.unwrap().pow(e)).unwrap();
            }
            acc
        })
}

fn generator_table(genus: usize, t: usize) -> EndomorphismTable {
    let i = t / 4 + 1;
    let id = EndomorphismTable::identity(genus);
    match t % 4 {
        0 => EndomorphismTable::twist_a(genus, i).unwrap(),
        1 => EndomorphismTable::twist_b(genus, i).unwrap(),
        2 => id.with(FreeGen::Beta(i), &format!("a{i} b{i}")).unwrap(),
        _ => id
            .with(FreeGen::Alpha(i), &format!("a{i} b{i}^-1"))
            .unwrap(),
    }
}

/// Products of the twist actions and their inverses on `π₁`, with the bounding-pair map
/// available from genus 2.
pub fn table(genus: usize) -> impl Strategy<Value = EndomorphismTable> {
    let kinds = 4 * genus + usize::from(genus >= 2);
    prop::collection::vec(0..kinds, 0..4).prop_map(move |ts| {
        ts.into_iter()
            .fold(EndomorphismTable::identity(genus), |acc, t| {
                let g = if t == 4 * genus {
                    EndomorphismTable::bounding_pair(genus).unwrap()
                } else {
                    generator_table(genus, t)
                };
                acc.compose(&g)
            })
    })
}

/// A square matrix of random entries, regarded as a map `A^{inner(h)⁻¹} → A`.
pub fn inner_twisted(genus: usize, dim: usize) -> impl Strategy<Value = (RepMatrix, HeisElement)> {
    (
        prop::collection::vec(poly(genus), dim * dim),
        small_element(genus),
    )
        .prop_map(move |(entries, h)| {
            let rows = entries.chunks(dim).map(<[_]>::to_vec).collect();
            let m = RepMatrix::new(genus, rows)
                .unwrap()
                .with_twists(
                    HeisAutomorphism::inner_of(&h).inverse(),
                    HeisAutomorphism::identity(genus),
                )
                .unwrap();
            (m, h)
        })
}
