//! Brute-force Weyl orderings and the symbolic-sign oracle.
//!
//! Everything here works from the definition: average over orderings, expand
//! products of `a† ± a`, normal-order. Nothing in this module reads the
//! closed-form coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::closed::{lambda_factor, xi_factor, zeta_sum, WeylSpec};
use crate::combinat::{factorial, index_permutations, MultisetPermutations};
use crate::error::{Error, Result};
use crate::normal::{NormalPoly, Powers};
use crate::scalar::{Rational, Scalar};
use crate::word::{expand_qp_word, quadrature_prefactor, signed_factor, QPWord, Quadrature};

pub const DEFAULT_FORCED_CAP: u32 = 8;
pub const DEFAULT_ETA_CAP: u32 = 6;
pub const DEFAULT_SWEEP_CAP: u32 = 10;

/// Distinct orderings of `j` Q's and `k` P's, lexicographic with `Q < P`.
pub fn distinct_orderings(spec: WeylSpec) -> impl Iterator<Item = QPWord> {
    let mut letters = vec![Quadrature::Q; spec.j as usize];
    letters.extend(std::iter::repeat_n(Quadrature::P, spec.k as usize));
    MultisetPermutations::new(letters).map(QPWord)
}

/// `N_jk = (j+k)! / (j! k!)`.
pub fn ordering_count(spec: WeylSpec) -> BigInt {
    factorial(spec.degree()) / (factorial(spec.j) * factorial(spec.k))
}

/// Average of `expand_qp_word` over the distinct orderings.
pub fn weyl_bruteforce(spec: WeylSpec) -> NormalPoly {
    let total: NormalPoly = distinct_orderings(spec).map(|w| expand_qp_word(&w)).sum();
    total.scale_rational(&Rational::new(BigInt::one(), ordering_count(spec)))
}

/// Average over all `(j+k)!` forced orderings, i.e. permutations of the sign
/// multiset with identical signs treated as distinct.
///
/// Each distinct sign arrangement stands for `j!·k!` forced orderings and is
/// weighted accordingly instead of being materialized repeatedly.
pub fn weyl_forced(spec: WeylSpec, cap: u32) -> Result<NormalPoly> {
    let n = spec.degree();
    if n > cap {
        return Err(Error::CapExceeded { what: "forced-ordering enumeration", limit: cap, requested: n });
    }
    let multiplicity = factorial(spec.j) * factorial(spec.k);
    let mut total = NormalPoly::zero();
    for arrangement in distinct_orderings(spec) {
        let product = arrangement.0.iter().fold(NormalPoly::one(), |acc, &l| acc.mul_poly(&signed_factor(l)));
        total = total + product;
    }
    let weight = Rational::new(multiplicity, factorial(n));
    let prefactor = quadrature_prefactor(n as usize, spec.k as usize).scale(&weight);
    Ok(total.scale(&prefactor))
}

/// Signs `s_r` of one forced ordering: `+1` for a `q` factor, `−1` for `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignSequence(Vec<i8>);

impl SignSequence {
    /// `+1` for `r ≤ j`, `−1` afterwards.
    pub fn canonical(spec: WeylSpec) -> Self {
        let mut signs = vec![1i8; spec.j as usize];
        signs.extend(std::iter::repeat_n(-1i8, spec.k as usize));
        SignSequence(signs)
    }

    pub fn from_word(word: &QPWord) -> Self {
        SignSequence(
            word.0
                .iter()
                .map(|l| match l {
                    Quadrature::Q => 1,
                    Quadrature::P => -1,
                })
                .collect(),
        )
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Multilinear integer polynomial in symbolic signs `s_1 … s_n`, keyed by the
/// sorted 0-based index set of each monomial.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignPolynomial {
    terms: BTreeMap<Vec<usize>, BigInt>,
}

impl SignPolynomial {
    pub fn one() -> Self {
        let mut p = SignPolynomial::default();
        p.add_term(Vec::new(), BigInt::one());
        p
    }

    pub fn add_term(&mut self, mut subset: Vec<usize>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        subset.sort_unstable();
        let slot = self.terms.entry(subset.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&subset);
        }
    }

    pub fn add(&mut self, other: &SignPolynomial) {
        for (s, c) in &other.terms {
            self.add_term(s.clone(), c.clone());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, subset: &[usize]) -> BigInt {
        self.terms.get(subset).cloned().unwrap_or_default()
    }

    /// Sum of all coefficients (the polynomial's "weights").
    pub fn weight_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Relabels `s_r ↦ s_perm[r]`.
    pub fn permuted(&self, perm: &[usize]) -> SignPolynomial {
        let mut out = SignPolynomial::default();
        for (s, c) in &self.terms {
            out.add_term(s.iter().map(|&r| perm[r]).collect(), c.clone());
        }
        out
    }

    pub fn scaled(&self, c: &BigInt) -> SignPolynomial {
        let mut out = SignPolynomial::default();
        for (s, v) in &self.terms {
            out.add_term(s.clone(), v * c);
        }
        out
    }

    pub fn evaluate(&self, signs: &SignSequence) -> BigInt {
        self.terms
            .iter()
            .map(|(s, c)| {
                let sign: i64 = s.iter().map(|&r| signs.0[r] as i64).product();
                c * sign
            })
            .sum()
    }
}

impl fmt::Display for SignPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (subset, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            for r in subset {
                write!(f, "*s{}", r + 1)?;
            }
        }
        Ok(())
    }
}

/// Expands `∏_{r=1}^{n} (a† + s_r a)` in normal order with symbolic signs.
pub fn symbolic_expansion(n: usize) -> BTreeMap<Powers, SignPolynomial> {
    let mut acc: BTreeMap<Powers, SignPolynomial> = BTreeMap::new();
    acc.insert((0, 0), SignPolynomial::one());
    for r in 0..n {
        let mut next: BTreeMap<Powers, SignPolynomial> = BTreeMap::new();
        for (&(m, nn), poly) in &acc {
            // · a†: a†^m a^n a† = a†^(m+1) a^n + n a†^m a^(n−1)
            next.entry((m + 1, nn)).or_default().add(poly);
            if nn > 0 {
                next.entry((m, nn - 1)).or_default().add(&poly.scaled(&BigInt::from(nn)));
            }
            // · s_r a
            let mut with_sign = SignPolynomial::default();
            for (s, c) in poly.terms() {
                let mut s = s.clone();
                s.push(r);
                with_sign.add_term(s, c.clone());
            }
            next.entry((m, nn + 1)).or_default().add(&with_sign);
        }
        acc = next;
    }
    acc
}

/// Outcome of summing one slot's sign polynomial over all permutations.
#[derive(Clone, Debug)]
pub struct EtaReport {
    pub spec: WeylSpec,
    pub u: u32,
    pub v: u32,
    /// `η` for the identity permutation.
    pub eta: SignPolynomial,
    /// `Σ_σ η_σ`, still symbolic.
    pub permutation_sum: SignPolynomial,
    pub lambda: BigInt,
    pub xi: Rational,
    pub zeta: BigInt,
    /// Every `(u+v)`-subset carries the same coefficient `λ·ξ` in the sum.
    pub uniform: bool,
    /// `Σ_σ η_σ` evaluated at the canonical signs.
    pub total: BigInt,
    pub passed: bool,
}

/// Verifies `Σ_σ η_σ = λ·ξ·ζ` for one `(j, k, u, v)` by literal summation over
/// all `(j+k)!` permutations.
pub fn eta_decomposition_check(spec: WeylSpec, u: u32, v: u32, cap: u32) -> Result<EtaReport> {
    let n = spec.degree();
    if n > cap {
        return Err(Error::CapExceeded { what: "symbolic-sign oracle", limit: cap, requested: n });
    }
    if 2 * u + v > n {
        return Err(Error::SlotOutOfRange { u, v, degree: n });
    }
    let expansion = symbolic_expansion(n as usize);
    let eta = expansion.get(&(n - 2 * u - v, v)).cloned().unwrap_or_default();

    let mut permutation_sum = SignPolynomial::default();
    for perm in index_permutations(n as usize) {
        permutation_sum.add(&eta.permuted(&perm));
    }

    let lambda = lambda_factor(spec.j, spec.k, u, v);
    let xi = xi_factor(spec.j, spec.k, u, v);
    let zeta = zeta_sum(spec.j, spec.k, u + v);

    let per_subset = Rational::from_integer(lambda.clone()) * &xi;
    let t = (u + v) as usize;
    let uniform = MultisetPermutations::new(
        std::iter::repeat_n(false, n as usize - t).chain(std::iter::repeat_n(true, t)).collect(),
    )
    .all(|mask: Vec<bool>| {
        let subset: Vec<usize> = mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect();
        Rational::from_integer(permutation_sum.coeff(&subset)) == per_subset
    }) && permutation_sum.terms().all(|(s, _)| s.len() == t);

    let total = permutation_sum.evaluate(&SignSequence::canonical(spec));
    let expected = per_subset * Rational::from_integer(zeta.clone());
    let passed = uniform && Rational::from_integer(total.clone()) == expected;

    Ok(EtaReport { spec, u, v, eta, permutation_sum, lambda, xi, zeta, uniform, total, passed })
}

/// Scalar prefactor used by the forced-ordering route, exposed for tests.
pub fn forced_prefactor(spec: WeylSpec) -> Scalar {
    quadrature_prefactor(spec.degree() as usize, spec.k as usize)
        .scale(&Rational::new(BigInt::one(), factorial(spec.degree())))
}
