//! Weyl ordering through the symmetrized-monomial expansion
//! `{a^m a†^n}_W = Σ_l (l!/2^l) C(m,l) C(n,l) a†^(n−l) a^(m−l)`.

use num_bigint::BigInt;
use num_traits::One;

use crate::closed::WeylSpec;
use crate::combinat::{binomial, factorial};
use crate::normal::NormalPoly;
use crate::scalar::{Rational, Scalar};
use crate::word::quadrature_prefactor;

/// Normal-ordered form of the Weyl-symmetrized `a^m a†^n`.
pub fn cg_weyl_monomial(m: u32, n: u32) -> NormalPoly {
    NormalPoly::from_terms((0..=m.min(n)).map(|l| {
        let count = factorial(l) * binomial(m as i64, l as i64) * binomial(n as i64, l as i64);
        let c = Rational::new(count, BigInt::one() << l);
        ((n - l, m - l), Scalar::from_rational(c))
    }))
}

/// Coefficients `c_m` of `a^m a†^(j+k−m)` in the commuting expansion of
/// `(a + a†)^j (a† − a)^k`.
pub fn commuting_coefficients(spec: WeylSpec) -> Vec<BigInt> {
    let (j, k) = (spec.j as i64, spec.k as i64);
    (0..=j + k)
        .map(|m| {
            (0..=m)
                .map(|beta| {
                    let term = binomial(j, m - beta) * binomial(k, beta);
                    if beta % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect()
}

/// `S_jk` assembled from symmetrized monomials. Inside the Weyl bracket the
/// ladder operators commute, so `q^j p^k` is expanded as an ordinary
/// polynomial first.
pub fn weyl_via_cg(spec: WeylSpec) -> NormalPoly {
    let n = spec.degree();
    let body: NormalPoly = commuting_coefficients(spec)
        .into_iter()
        .enumerate()
        .map(|(m, c)| {
            let m = m as u32;
            cg_weyl_monomial(m, n - m).scale_rational(&Rational::from_integer(c))
        })
        .sum();
    body.scale(&quadrature_prefactor(n as usize, spec.k as usize))
}
