#![allow(dead_code)]

use std::sync::Arc;

use generica_core::ring::{Monomial, Poly, Ring};
use proptest::prelude::*;

pub type Terms = Vec<(Vec<u16>, i64)>;

pub fn poly(r: &Ring, terms: &Terms) -> Poly {
    let mut acc = Poly::zero();
    for (e, c) in terms {
        let t = r.poly().term(Monomial::from_exponents(e.clone()), r.field().from_i64(*c));
        acc = r.add(&acc, &r.reduce(&t));
    }
    acc
}

/// Up to `max_terms` terms in `nvars` variables, exponents below `max_exp`.
pub fn terms(nvars: usize, max_exp: u16, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0..max_exp, nvars), -6i64..7), 1..=max_terms)
}

/// Terms without a constant part, so the polynomial lies in the maximal
/// ideal.
pub fn terms_in_m(nvars: usize, max_exp: u16, max_terms: usize) -> impl Strategy<Value = Terms> {
    terms(nvars, max_exp, max_terms).prop_map(|ts| {
        ts.into_iter()
            .map(|(mut e, c)| {
                if e.iter().all(|&x| x == 0) {
                    e[0] = 1;
                }
                (e, c)
            })
            .collect()
    })
}

pub fn xyz() -> Arc<Ring> {
    Ring::default_with_vars(&["x", "y", "z"])
}
