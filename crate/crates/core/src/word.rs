//! Operator words and the commutator-rewriting oracle.
//!
//! `normal_order_word` is the ground truth every other route is checked
//! against: it knows nothing beyond `a a† → a† a + 1`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::normal::NormalPoly;
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ladder {
    Create,
    Annihilate,
}

/// Quadrature letter. `Q < P` fixes the enumeration order of orderings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quadrature {
    Q,
    P,
}

/// Product of ladder operators, leftmost letter first. Empty is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BosonWord(pub Vec<Ladder>);

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QPWord(pub Vec<Quadrature>);

impl BosonWord {
    pub fn new(letters: Vec<Ladder>) -> Self {
        BosonWord(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &BosonWord) -> BosonWord {
        BosonWord(self.0.iter().chain(&other.0).copied().collect())
    }

    /// True when every `Create` precedes every `Annihilate`.
    pub fn is_normal(&self) -> bool {
        first_inversion(&self.0).is_none()
    }

    /// Decodes the low `len` bits of `bits` (bit `i` set means letter `i` is `Create`).
    pub fn from_bits(bits: u64, len: usize) -> BosonWord {
        BosonWord((0..len).map(|i| if bits >> i & 1 == 1 { Ladder::Create } else { Ladder::Annihilate }).collect())
    }
}

impl QPWord {
    pub fn new(letters: Vec<Quadrature>) -> Self {
        QPWord(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> QPWord {
        QPWord(self.0.iter().rev().copied().collect())
    }

    pub fn count(&self, letter: Quadrature) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }
}

impl fmt::Display for QPWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Quadrature::Q => "Q",
                Quadrature::P => "P",
            })?;
        }
        Ok(())
    }
}

fn first_inversion(letters: &[Ladder]) -> Option<usize> {
    letters.windows(2).position(|w| w == [Ladder::Annihilate, Ladder::Create])
}

/// Normal-orders a word by exhaustive rewriting of the leftmost `a a†`.
///
/// Each rewrite removes one inversion, so the process terminates; words that
/// meet again are merged so the frontier never exceeds the number of
/// distinct words.
pub fn normal_order_word(word: &BosonWord) -> NormalPoly {
    let mut frontier: BTreeMap<Vec<Ladder>, BigInt> = BTreeMap::new();
    frontier.insert(word.0.clone(), BigInt::one());
    let mut done: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();

    while !frontier.is_empty() {
        let mut next: BTreeMap<Vec<Ladder>, BigInt> = BTreeMap::new();
        for (w, c) in frontier {
            match first_inversion(&w) {
                None => {
                    let m = w.iter().filter(|&&l| l == Ladder::Create).count() as u32;
                    let n = w.len() as u32 - m;
                    *done.entry((m, n)).or_default() += c;
                }
                Some(i) => {
                    let mut swapped = w.clone();
                    swapped.swap(i, i + 1);
                    *next.entry(swapped).or_default() += &c;
                    let mut contracted = w;
                    contracted.drain(i..i + 2);
                    *next.entry(contracted).or_default() += c;
                }
            }
        }
        frontier = next;
    }

    NormalPoly::from_terms(
        done.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, Scalar::from_rational(Rational::from_integer(c)))),
    )
}

/// `i^k 2^(-L/2)`, the scalar that turns `∏(a† ± a)` into a q/p product.
pub fn quadrature_prefactor(len: usize, p_count: usize) -> Scalar {
    Scalar::i_pow(p_count as u32) * Scalar::inv_sqrt2_pow(len as u32)
}

/// `a† + s·a` with `s = +1` for `q` and `s = −1` for `p`.
pub(crate) fn signed_factor(letter: Quadrature) -> NormalPoly {
    let s = match letter {
        Quadrature::Q => 1,
        Quadrature::P => -1,
    };
    NormalPoly::from_terms([((1, 0), Scalar::one()), ((0, 1), Scalar::from_int(s))])
}

/// Normal-ordered equivalent of a q/p word with `q = (a + a†)/√2` and
/// `p = i(a† − a)/√2` (ħ = 1).
pub fn expand_qp_word(word: &QPWord) -> NormalPoly {
    let product = word.0.iter().fold(NormalPoly::one(), |acc, &l| acc.mul_poly(&signed_factor(l)));
    product.scale(&quadrature_prefactor(word.len(), word.count(Quadrature::P)))
}

/// Same result as [`expand_qp_word`], but by expanding into all `2^L` boson
/// words and rewriting each one. Exponential; meant as an oracle.
pub fn expand_qp_word_by_rewriting(word: &QPWord) -> NormalPoly {
    let len = word.len();
    let mut total = NormalPoly::zero();
    for bits in 0..(1u64 << len) {
        let boson = BosonWord::from_bits(bits, len);
        let sign: i64 = word
            .0
            .iter()
            .zip(&boson.0)
            .map(|(q, b)| match (q, b) {
                (Quadrature::P, Ladder::Annihilate) => -1,
                _ => 1,
            })
            .product();
        total = total + normal_order_word(&boson).scale(&Scalar::from_int(sign));
    }
    total.scale(&quadrature_prefactor(len, word.count(Quadrature::P)))
}
