//! Closed-form normal ordering of boson strings in block form.
//!
//! A string `a†^{r_M} a^{s_M} … a†^{r_1} a^{s_1}` is indexed from the right:
//! block 1 acts first. With excesses `d_l = Σ_{m≤l} (r_m − s_m)`,
//!
//! ```text
//! d_M ≥ 0:  X = Σ_{k=s_1}^{Σs} S_{r,s}(k) a†^(d_M+k) a^k
//! d_M < 0:  X = Σ_{k=r_M}^{Σr} S_{s̄,r̄}(k) a†^k a^(k−d_M)
//! S_{r,s}(k) = (1/k!) Σ_{j=0}^{k} C(k,j) (−1)^(k−j) ∏_m (d_{m−1} + j)_{s_m}
//! ```
//!
//! The second case is the adjoint of the first applied to the reversed,
//! role-swapped string.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::combinat::{binomial, factorial, falling_factorial};
use crate::normal::NormalPoly;
use crate::scalar::{Rational, Scalar};
use crate::word::{BosonWord, Ladder};

/// Block powers; `r[0], s[0]` is the rightmost block.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BosonString {
    r: Vec<u32>,
    s: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BosonStringError {
    #[error("block sequences differ in length: {r} creation blocks, {s} annihilation blocks")]
    LengthMismatch { r: usize, s: usize },
    #[error("a boson string needs at least one block")]
    Empty,
}

impl BosonString {
    pub fn new(r: Vec<u32>, s: Vec<u32>) -> Result<Self, BosonStringError> {
        if r.len() != s.len() {
            return Err(BosonStringError::LengthMismatch { r: r.len(), s: s.len() });
        }
        if r.is_empty() {
            return Err(BosonStringError::Empty);
        }
        Ok(BosonString { r, s })
    }

    pub fn r(&self) -> &[u32] {
        &self.r
    }

    pub fn s(&self) -> &[u32] {
        &self.s
    }

    pub fn blocks(&self) -> usize {
        self.r.len()
    }

    /// Splits a word into maximal `a†^r a^s` runs, reading left to right,
    /// then renumbers so the rightmost block comes first.
    pub fn blockify(word: &BosonWord) -> BosonString {
        let mut blocks: Vec<(u32, u32)> = Vec::new();
        let mut i = 0;
        let letters = &word.0;
        while i < letters.len() {
            let (mut r, mut s) = (0, 0);
            while i < letters.len() && letters[i] == Ladder::Create {
                r += 1;
                i += 1;
            }
            while i < letters.len() && letters[i] == Ladder::Annihilate {
                s += 1;
                i += 1;
            }
            blocks.push((r, s));
        }
        if blocks.is_empty() {
            blocks.push((0, 0));
        }
        blocks.reverse();
        BosonString { r: blocks.iter().map(|b| b.0).collect(), s: blocks.iter().map(|b| b.1).collect() }
    }

    pub fn to_word(&self) -> BosonWord {
        let mut letters = Vec::new();
        for (&r, &s) in self.r.iter().zip(&self.s).rev() {
            letters.extend(std::iter::repeat_n(Ladder::Create, r as usize));
            letters.extend(std::iter::repeat_n(Ladder::Annihilate, s as usize));
        }
        BosonWord(letters)
    }

    pub fn excess(&self) -> PrefixExcess {
        PrefixExcess::new(&self.r, &self.s)
    }

    /// Reversed string with the roles of `r` and `s` exchanged (`r' = s̄`,
    /// `s' = r̄`); this is the block form of the adjoint.
    pub fn adjoint(&self) -> BosonString {
        BosonString { r: self.s.iter().rev().copied().collect(), s: self.r.iter().rev().copied().collect() }
    }
}

impl fmt::Display for BosonString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={:?} s={:?}", self.r, self.s)
    }
}

/// Running excess `d_0 = 0, d_l = Σ_{m≤l} (r_m − s_m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixExcess(Vec<i64>);

impl PrefixExcess {
    pub fn new(r: &[u32], s: &[u32]) -> Self {
        let mut d = Vec::with_capacity(r.len() + 1);
        d.push(0i64);
        for (&rm, &sm) in r.iter().zip(s) {
            let last = *d.last().expect("d_0 is always present");
            d.push(last + rm as i64 - sm as i64);
        }
        PrefixExcess(d)
    }

    /// `d_l` for `0 ≤ l ≤ M`.
    pub fn get(&self, l: usize) -> i64 {
        self.0[l]
    }

    pub fn total(&self) -> i64 {
        *self.0.last().expect("d_0 is always present")
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

/// `S_{r,s}(k)`.
pub fn blasiak_coeff(r: &[u32], s: &[u32], k: u32) -> Rational {
    assert_eq!(r.len(), s.len(), "block sequences must have equal length");
    let d = PrefixExcess::new(r, s);
    let mut total = BigInt::zero();
    for j in 0..=k {
        let product = s
            .iter()
            .enumerate()
            .fold(binomial(k as i64, j as i64), |acc, (m, &sm)| acc * falling_factorial(d.get(m) + j as i64, sm));
        if (k - j).is_multiple_of(2) {
            total += product;
        } else {
            total -= product;
        }
    }
    Rational::new(total, factorial(k))
}

/// Normal-ordered equivalent of a boson string.
pub fn blasiak_normal_order(x: &BosonString) -> NormalPoly {
    let d_total = x.excess().total();
    if d_total >= 0 {
        let lo = x.s[0];
        let hi: u32 = x.s.iter().sum();
        NormalPoly::from_terms((lo..=hi).map(|k| {
            let c = Scalar::from_rational(blasiak_coeff(&x.r, &x.s, k));
            ((d_total as u32 + k, k), c)
        }))
    } else {
        let flipped = x.adjoint();
        let lo = *x.r.last().expect("at least one block");
        let hi: u32 = x.r.iter().sum();
        NormalPoly::from_terms((lo..=hi).map(|k| {
            let c = Scalar::from_rational(blasiak_coeff(&flipped.r, &flipped.s, k));
            ((k, (k as i64 - d_total) as u32), c)
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use crate::word::normal_order_word;
    use Ladder::{Annihilate as A, Create as C};

    fn int(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn coeff_examples() {
        assert_eq!(blasiak_coeff(&[1], &[1], 1), ratio(1, 1));
        // a·a†: block 1 = a†, block 2 = a
        assert_eq!(blasiak_coeff(&[1, 0], &[0, 1], 0), ratio(1, 1));
        assert_eq!(blasiak_coeff(&[1, 0], &[0, 1], 1), ratio(1, 1));
        for k in 0..5 {
            let expected = if k == 0 { ratio(1, 1) } else { ratio(0, 1) };
            assert_eq!(blasiak_coeff(&[3, 2], &[0, 0], k), expected);
        }
    }

    #[test]
    fn normal_order_examples() {
        let aad = BosonString::new(vec![1, 0], vec![0, 1]).unwrap();
        assert_eq!(aad.to_word(), BosonWord(vec![A, C]));
        assert_eq!(blasiak_normal_order(&aad), NormalPoly::from_terms([((1, 1), int(1)), ((0, 0), int(1))]));

        let ad_a2 = BosonString::new(vec![1], vec![2]).unwrap();
        assert_eq!(ad_a2.excess().total(), -1);
        assert_eq!(blasiak_normal_order(&ad_a2), NormalPoly::monomial(1, 2, int(1)));

        let a2ad2 = BosonString::new(vec![2, 0], vec![0, 2]).unwrap();
        assert_eq!(
            blasiak_normal_order(&a2ad2),
            NormalPoly::from_terms([((2, 2), int(1)), ((1, 1), int(4)), ((0, 0), int(2))])
        );
    }

    #[test]
    fn blockify_inserts_zero_blocks_only_where_needed() {
        let w = BosonWord(vec![A, A, C, A, C, C]);
        let b = BosonString::blockify(&w);
        assert_eq!(b.r(), &[2, 1, 0]);
        assert_eq!(b.s(), &[0, 1, 2]);
        assert_eq!(b.to_word(), w);
        let empty = BosonString::blockify(&BosonWord::default());
        assert_eq!((empty.r(), empty.s()), (&[0][..], &[0][..]));
    }

    #[test]
    fn excess_is_prefix_sum() {
        let b = BosonString::new(vec![2, 0, 3], vec![1, 4, 0]).unwrap();
        assert_eq!(b.excess().as_slice(), &[0, 1, -3, 0]);
    }

    #[test]
    fn rejects_malformed_strings() {
        assert_eq!(BosonString::new(vec![1], vec![]), Err(BosonStringError::LengthMismatch { r: 1, s: 0 }));
        assert_eq!(BosonString::new(vec![], vec![]), Err(BosonStringError::Empty));
    }

    #[test]
    fn agrees_with_rewriting_up_to_length_six() {
        for len in 0..=6 {
            for bits in 0..(1u64 << len) {
                let w = BosonWord::from_bits(bits, len);
                assert_eq!(blasiak_normal_order(&BosonString::blockify(&w)), normal_order_word(&w), "{w:?}");
            }
        }
    }
}
