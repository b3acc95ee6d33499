#![allow(dead_code)]

use moyal_core::{EBasisElement, HbarPoly, Monomial, PhasePoly, Rational};
use proptest::prelude::*;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

/// Polynomials on `n_pairs` pairs with total degree (h included) at most
/// `max_degree`.
pub fn poly(n_pairs: usize, max_degree: u32, with_hbar: bool) -> impl Strategy<Value = PhasePoly> {
    let nvars = 2 * n_pairs + 1;
    let exps = proptest::collection::vec(0..=max_degree, nvars);
    proptest::collection::vec((exps, coeff()), 0..10).prop_map(move |terms| {
        PhasePoly::from_terms(
            n_pairs,
            terms.into_iter().filter_map(|(mut e, c)| {
                if !with_hbar {
                    e[nvars - 1] = 0;
                }
                let total: u32 = e.iter().sum();
                if total > max_degree {
                    return None;
                }
                let h = e[nvars - 1];
                Some((Monomial::new(&e[..n_pairs], &e[n_pairs..2 * n_pairs], h), c))
            }),
        )
    })
}

pub fn plane(max_degree: u32) -> impl Strategy<Value = PhasePoly> {
    poly(1, max_degree, true)
}

pub fn plane_classical(max_degree: u32) -> impl Strategy<Value = PhasePoly> {
    poly(1, max_degree, false)
}

pub fn hbar_poly(max_degree: u32) -> impl Strategy<Value = HbarPoly> {
    proptest::collection::vec((0..=max_degree, coeff()), 0..4).prop_map(HbarPoly::from_terms)
}

pub fn ebasis(max_index: u32) -> impl Strategy<Value = EBasisElement> {
    proptest::collection::vec(((0..=max_index, 0..=max_index), hbar_poly(2)), 0..6)
        .prop_map(EBasisElement::from_terms)
}

pub fn x() -> PhasePoly {
    PhasePoly::plane_term(q(1, 1), 0, 1, 0)
}

pub fn p() -> PhasePoly {
    PhasePoly::plane_term(q(1, 1), 1, 0, 0)
}
