#![allow(dead_code)]

use proptest::prelude::*;
use weiljets::exact_linear::{MonomialBasis, TruncatedPolynomial, UNBOUNDED};
use weiljets::{QPoly, Rational};

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

/// Polynomial with degrees in `min..=max` and small rational coefficients.
pub fn poly(nvars: usize, min: u32, max: u32) -> impl Strategy<Value = QPoly> {
    let monomials: Vec<_> =
        MonomialBasis::new(nvars, max).monomials().iter().filter(|m| m.degree() >= min).cloned().collect();
    let len = monomials.len();
    proptest::collection::vec(proptest::option::weighted(0.4, rational()), len).prop_map(move |coeffs| {
        TruncatedPolynomial::from_terms(
            nvars,
            UNBOUNDED,
            monomials.iter().cloned().zip(coeffs).filter_map(|(m, c)| c.map(|c| (m, c))),
        )
    })
}

pub fn vector(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((-3i64..=3).prop_map(q), len)
}
