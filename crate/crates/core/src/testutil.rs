use proptest::prelude::*;

use crate::exactring::{LaurentPoly, RingElement};
use crate::freealg::{Letter, NcPoly, Word};

pub fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::bool::ANY, 0..=max_len).prop_map(|bits| {
        let ls: Vec<Letter> = bits
            .into_iter()
            .map(|b| if b { Letter::AStar } else { Letter::A })
            .collect();
        Word::from_letters(&ls).unwrap()
    })
}

pub fn arb_coeff() -> impl Strategy<Value = RingElement> {
    prop::collection::vec(
        (0u32..3, 0u32..2, prop::collection::vec((-4i32..5, -5i64..6), 1..3)),
        1..3,
    )
    .prop_map(|parts| {
        let mut x = RingElement::zero();
        for (i, j, t) in parts {
            x.add_component(i, j, &LaurentPoly::from_terms(t));
        }
        x
    })
}

pub fn arb_ncpoly(max_terms: usize, max_len: usize) -> impl Strategy<Value = NcPoly> {
    prop::collection::vec((arb_word(max_len), arb_coeff()), 0..=max_terms).prop_map(|ts| {
        let mut p = NcPoly::zero();
        for (w, c) in ts {
            p.add_term(w, &c);
        }
        p
    })
}
