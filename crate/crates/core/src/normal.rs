//! Normal-ordered polynomials `Σ c_mn a†^m a^n` over [`Scalar`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::combinat::{binomial, factorial};
use crate::scalar::{Rational, Scalar};

/// Exponent pair `(m, n)` for the monomial `a†^m a^n`.
pub type Powers = (u32, u32);

/// Sparse normal-ordered polynomial. No stored coefficient is ever zero, so
/// derived equality is equality of operators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NormalPoly {
    terms: BTreeMap<Powers, Scalar>,
}

/// Output order: descending total degree, then descending creation power.
pub fn display_order(a: &Powers, b: &Powers) -> Ordering {
    (b.0 + b.1).cmp(&(a.0 + a.1)).then(b.0.cmp(&a.0))
}

impl NormalPoly {
    pub fn zero() -> Self {
        NormalPoly::default()
    }

    pub fn one() -> Self {
        NormalPoly::monomial(0, 0, Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        NormalPoly::monomial(0, 0, c)
    }

    /// `c · a†^m a^n`.
    pub fn monomial(m: u32, n: u32, c: Scalar) -> Self {
        let mut p = NormalPoly::zero();
        p.add_term(m, n, &c);
        p
    }

    pub fn creation() -> Self {
        NormalPoly::monomial(1, 0, Scalar::one())
    }

    pub fn annihilation() -> Self {
        NormalPoly::monomial(0, 1, Scalar::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Powers, Scalar)>>(terms: I) -> Self {
        let mut p = NormalPoly::zero();
        for ((m, n), c) in terms {
            p.add_term(m, n, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: u32, n: u32) -> Scalar {
        self.terms.get(&(m, n)).cloned().unwrap_or_default()
    }

    /// Terms in storage order (ascending `(m, n)`).
    pub fn iter(&self) -> impl Iterator<Item = (&Powers, &Scalar)> {
        self.terms.iter()
    }

    /// Terms in display order.
    pub fn sorted_terms(&self) -> Vec<(Powers, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().map(|(k, c)| (*k, c)).collect();
        v.sort_by(|a, b| display_order(&a.0, &b.0));
        v
    }

    pub fn add_term(&mut self, m: u32, n: u32, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((m, n)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(m, n));
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return NormalPoly::zero();
        }
        NormalPoly { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&Scalar::from_rational(r.clone()))
    }

    /// Hermitian adjoint: `c a†^m a^n ↦ conj(c) a†^n a^m`.
    pub fn adjoint(&self) -> Self {
        NormalPoly { terms: self.terms.iter().map(|(&(m, n), c)| ((n, m), c.conj())).collect() }
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.adjoint() == *self
    }

    /// Largest `m + n` among stored terms.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(m, n)| m + n).max()
    }

    pub fn add_poly(&self, other: &NormalPoly) -> NormalPoly {
        let mut out = self.clone();
        for (&(m, n), c) in &other.terms {
            out.add_term(m, n, c);
        }
        out
    }

    /// Normal-ordered product. The reordering `a^n a†^m` is replaced by
    /// `Σ_k k!·C(n,k)·C(m,k)·a†^(m−k) a^(n−k)`.
    pub fn mul_poly(&self, other: &NormalPoly) -> NormalPoly {
        let mut out = NormalPoly::zero();
        for (&(m1, n1), c1) in &self.terms {
            for (&(m2, n2), c2) in &other.terms {
                let c = c1 * c2;
                for k in 0..=n1.min(m2) {
                    let w = reorder_weight(n1, m2, k);
                    out.add_term(m1 + m2 - k, n1 + n2 - k, &c.scale(&Rational::from_integer(w)));
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> NormalPoly {
        (0..e).fold(NormalPoly::one(), |acc, _| acc.mul_poly(self))
    }
}

/// Number of ways `k` contractions pair `n` annihilators with `m` creators.
fn reorder_weight(n: u32, m: u32, k: u32) -> BigInt {
    factorial(k) * binomial(n as i64, k as i64) * binomial(m as i64, k as i64)
}

/// Plain text form, as printed by the CLI.
impl std::fmt::Display for NormalPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&crate::textio::render(self, crate::textio::Format::Plain))
    }
}

impl Add for &NormalPoly {
    type Output = NormalPoly;
    fn add(self, rhs: &NormalPoly) -> NormalPoly {
        self.add_poly(rhs)
    }
}

impl Add for NormalPoly {
    type Output = NormalPoly;
    fn add(self, rhs: NormalPoly) -> NormalPoly {
        self.add_poly(&rhs)
    }
}

impl Sub for &NormalPoly {
    type Output = NormalPoly;
    fn sub(self, rhs: &NormalPoly) -> NormalPoly {
        self.add_poly(&-rhs)
    }
}

impl Sub for NormalPoly {
    type Output = NormalPoly;
    fn sub(self, rhs: NormalPoly) -> NormalPoly {
        &self - &rhs
    }
}

impl Neg for &NormalPoly {
    type Output = NormalPoly;
    fn neg(self) -> NormalPoly {
        NormalPoly { terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect() }
    }
}

impl Neg for NormalPoly {
    type Output = NormalPoly;
    fn neg(self) -> NormalPoly {
        -&self
    }
}

impl Mul for &NormalPoly {
    type Output = NormalPoly;
    fn mul(self, rhs: &NormalPoly) -> NormalPoly {
        self.mul_poly(rhs)
    }
}

impl Mul for NormalPoly {
    type Output = NormalPoly;
    fn mul(self, rhs: NormalPoly) -> NormalPoly {
        self.mul_poly(&rhs)
    }
}

impl std::iter::Sum for NormalPoly {
    fn sum<I: Iterator<Item = NormalPoly>>(iter: I) -> Self {
        iter.fold(NormalPoly::zero(), |acc, p| acc.add_poly(&p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn int(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn half_i() -> Scalar {
        Scalar::i().scale(&ratio(1, 2))
    }

    #[test]
    fn add_cancels_to_zero() {
        let f = NormalPoly::monomial(1, 1, int(1));
        let g = NormalPoly::monomial(1, 1, int(-1));
        assert!((&f + &g).is_zero());
        assert_eq!(&f + &NormalPoly::zero(), f);
        let h = NormalPoly::monomial(2, 0, half_i()) + NormalPoly::monomial(0, 2, -half_i());
        assert_eq!(h.len(), 2);
    }

    #[test]
    fn mul_examples() {
        let a = NormalPoly::annihilation();
        let ad = NormalPoly::creation();
        assert_eq!(&a * &ad, NormalPoly::from_terms([((1, 1), int(1)), ((0, 0), int(1))]));
        assert_eq!(&ad * &a, NormalPoly::monomial(1, 1, int(1)));
        let a2 = NormalPoly::monomial(0, 2, int(1));
        let ad2 = NormalPoly::monomial(2, 0, int(1));
        assert_eq!(&a2 * &ad2, NormalPoly::from_terms([((2, 2), int(1)), ((1, 1), int(4)), ((0, 0), int(2))]));
    }

    #[test]
    fn adjoint_examples() {
        let f = NormalPoly::monomial(2, 0, half_i());
        assert_eq!(f.adjoint(), NormalPoly::monomial(0, 2, -half_i()));
        let g = NormalPoly::monomial(1, 1, int(1));
        assert_eq!(g.adjoint(), g);
        let h = f.clone() + NormalPoly::monomial(3, 1, Scalar::sqrt2() + Scalar::i());
        assert_eq!(h.adjoint().adjoint(), h);
    }

    #[test]
    fn display_order_is_degree_then_creation() {
        let p = NormalPoly::from_terms([
            ((0, 0), int(1)),
            ((0, 2), int(1)),
            ((1, 1), int(1)),
            ((2, 0), int(1)),
            ((1, 0), int(1)),
        ]);
        let keys: Vec<_> = p.sorted_terms().into_iter().map(|(k, _)| k).collect();
        assert_eq!(keys, vec![(2, 0), (1, 1), (0, 2), (1, 0), (0, 0)]);
    }
}
