//! Closed-form normal-ordered equivalent of the Weyl ordering of `q^j p^k`.
//!
//! ```text
//! S_jk = Σ_{u=0}^{⌊(j+k)/2⌋} Σ_{v=0}^{j+k−2u} h_jkuv a†^(j+k−2u−v) a^v
//! h_jkuv = i^k 2^(−(j+k)/2) (u!/2^u) C(j+k−u−v, u) C(u+v, u) ζ_jk(u+v)
//! ```
//!
//! where `ζ_jk(t)` is the `x^t` coefficient of `(1+x)^j (1−x)^k`. The three
//! factors of the permutation-sum decomposition (λ, ξ, ζ) are exposed for the
//! enumeration oracle in [`crate::enumerate`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinat::{binomial, factorial};
use crate::normal::NormalPoly;
use crate::scalar::{Rational, Scalar};

/// The monomial `q^j p^k` whose Weyl ordering is being computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct WeylSpec {
    pub j: u32,
    pub k: u32,
}

impl WeylSpec {
    pub fn new(j: u32, k: u32) -> Self {
        WeylSpec { j, k }
    }

    /// Total degree `j + k`.
    pub fn degree(&self) -> u32 {
        self.j + self.k
    }

    /// Every `(u, v)` with `2u + v ≤ j + k`, in ascending order.
    pub fn slots(&self) -> impl Iterator<Item = (u32, u32)> {
        let n = self.degree();
        (0..=n / 2).flat_map(move |u| (0..=n - 2 * u).map(move |v| (u, v)))
    }

    /// All specs with `j + k = degree`, ordered by ascending `j`.
    pub fn of_degree(degree: u32) -> impl Iterator<Item = WeylSpec> {
        (0..=degree).map(move |j| WeylSpec::new(j, degree - j))
    }

    /// All specs with `j + k ≤ max_degree`.
    pub fn up_to_degree(max_degree: u32) -> impl Iterator<Item = WeylSpec> {
        (0..=max_degree).flat_map(WeylSpec::of_degree)
    }
}

impl fmt::Display for WeylSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(j={}, k={})", self.j, self.k)
    }
}

/// Binomial coefficient with the zero convention for `a < b` or `b < 0`.
pub fn binom(a: i64, b: i64) -> BigInt {
    binomial(a, b)
}

/// Number of times each sign product recurs in one normal-form slot when
/// summing over all permutations: `(j+k−u−v)!·(u+v)!`.
pub fn lambda_factor(j: u32, k: u32, u: u32, v: u32) -> BigInt {
    let n = j + k;
    assert!(u + v <= n, "lambda_factor requires u+v <= j+k");
    factorial(n - u - v) * factorial(u + v)
}

/// Sum of the weights of one slot's sign polynomial:
/// `(j+k)! / (2^u u! v! (j+k−2u−v)!)`.
pub fn xi_factor(j: u32, k: u32, u: u32, v: u32) -> Rational {
    let n = j + k;
    assert!(2 * u + v <= n, "xi_factor requires 2u+v <= j+k");
    let den = (BigInt::one() << u) * factorial(u) * factorial(v) * factorial(n - 2 * u - v);
    Rational::new(factorial(n), den)
}

/// Alternating Vandermonde sum `Σ_{m=0}^{t} (−1)^m C(j, t−m) C(k, m)`.
pub fn zeta_sum(j: u32, k: u32, t: u32) -> BigInt {
    (0..=t as i64)
        .map(|m| {
            let term = binom(j as i64, t as i64 - m) * binom(k as i64, m);
            if m % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// Coefficient of `x^t` in the expanded polynomial `(1+x)^j (1−x)^k`.
pub fn zeta_poly(j: u32, k: u32, t: u32) -> BigInt {
    let mut coeffs = vec![BigInt::one()];
    let mut times = |sign: i64| {
        let mut next = vec![BigInt::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i] += c;
            next[i + 1] += c * sign;
        }
        coeffs = next;
    };
    for _ in 0..j {
        times(1);
    }
    for _ in 0..k {
        times(-1);
    }
    coeffs.get(t as usize).cloned().unwrap_or_default()
}

/// `g(a, b)`: one when a partition interval can hold `b` indices out of `a`.
fn guard(a: u32, b: i64) -> bool {
    a as i64 >= b
}

/// The same sum written with explicit interval guards:
/// `Σ_m (−1)^m g(j, t−m) j!/((t−m)!(j−t+m)!) · g(k, m) k!/(m!(k−m)!)`.
///
/// Factorials are only evaluated behind the guards, so no negative
/// argument is ever formed.
pub fn zeta_guarded(j: u32, k: u32, t: u32) -> BigInt {
    let mut total = BigInt::zero();
    for m in 0..=t as i64 {
        let upper = t as i64 - m;
        if !(guard(j, upper) && guard(k, m)) {
            continue;
        }
        let from_j = factorial(j) / (factorial(upper as u32) * factorial(j - upper as u32));
        let from_k = factorial(k) / (factorial(m as u32) * factorial(k - m as u32));
        let term = from_j * from_k;
        total += if m % 2 == 0 { term } else { -term };
    }
    total
}

/// Restricts the sum to its nonzero range `max(0, t−j) ≤ m ≤ min(k, t)`.
pub fn zeta_nonzero_range(j: u32, k: u32, t: u32) -> BigInt {
    let lo = t.saturating_sub(j);
    let hi = k.min(t);
    (lo..=hi)
        .map(|m| {
            let term = binom(j as i64, (t - m) as i64) * binom(k as i64, m as i64);
            if m % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// Normal-form coefficient `h_jkuv` of `a†^(j+k−2u−v) a^v`.
pub fn h_coeff(j: u32, k: u32, u: u32, v: u32) -> Scalar {
    let n = j + k;
    assert!(2 * u + v <= n, "h_coeff requires 2u+v <= j+k");
    let t = u + v;
    let zeta = zeta_poly(j, k, t);
    debug_assert_eq!(zeta, zeta_sum(j, k, t), "ζ routes disagree at j={j} k={k} t={t}");
    if zeta.is_zero() {
        return Scalar::zero();
    }
    let count = factorial(u) * binom((n - t) as i64, u as i64) * binom(t as i64, u as i64) * zeta;
    let rational = Rational::new(count, BigInt::one() << u);
    (Scalar::i_pow(k) * Scalar::inv_sqrt2_pow(n)).scale(&rational)
}

/// All `h_jkuv` for one `(j, k)`; zero entries are kept so the table is dense
/// over its index range, but equality ignores them.
#[derive(Clone, Debug)]
pub struct HCoeffTable {
    spec: WeylSpec,
    entries: BTreeMap<(u32, u32), Scalar>,
}

impl HCoeffTable {
    pub fn new(spec: WeylSpec) -> Self {
        let entries = spec.slots().map(|(u, v)| ((u, v), h_coeff(spec.j, spec.k, u, v))).collect();
        HCoeffTable { spec, entries }
    }

    pub fn spec(&self) -> WeylSpec {
        self.spec
    }

    pub fn get(&self, u: u32, v: u32) -> Scalar {
        self.entries.get(&(u, v)).cloned().unwrap_or_default()
    }

    /// Overwrites one entry. Used to plant faults when exercising the
    /// verification harness.
    pub fn set(&mut self, u: u32, v: u32, value: Scalar) {
        self.entries.insert((u, v), value);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &Scalar)> {
        self.entries.iter()
    }

    pub fn to_normal_poly(&self) -> NormalPoly {
        let n = self.spec.degree();
        NormalPoly::from_terms(self.entries.iter().map(|(&(u, v), c)| ((n - 2 * u - v, v), c.clone())))
    }

    /// Checks `h_jkuv = (−1)^k h_jku(j+k−2u−v)` everywhere and, for odd `j`
    /// and odd `k`, that the middle coefficient of each `u` row vanishes.
    pub fn symmetry_report(&self) -> SymmetryReport {
        let WeylSpec { j, k } = self.spec;
        let n = j + k;
        let sign = if k % 2 == 0 { Scalar::one() } else { -Scalar::one() };

        let mut pair = SymmetryOutcome::default();
        for (u, v) in self.spec.slots() {
            pair.checked += 1;
            let partner = n - 2 * u - v;
            let left = self.get(u, v);
            let right = &sign * &self.get(u, partner);
            if left != right && pair.witness.is_none() {
                pair.witness = Some(SymmetryWitness { spec: self.spec, u, v, partner_v: partner, left, right });
            }
        }

        let middle = (j % 2 == 1 && k % 2 == 1).then(|| {
            let mut out = SymmetryOutcome::default();
            for u in 0..=n / 2 {
                let v = (n - 2 * u) / 2;
                out.checked += 1;
                let value = self.get(u, v);
                if !value.is_zero() && out.witness.is_none() {
                    out.witness = Some(SymmetryWitness {
                        spec: self.spec,
                        u,
                        v,
                        partner_v: v,
                        left: value,
                        right: Scalar::zero(),
                    });
                }
            }
            out
        });

        SymmetryReport { conjugate_pairs: pair, odd_middle_zero: middle }
    }
}

impl PartialEq for HCoeffTable {
    fn eq(&self, other: &Self) -> bool {
        let nonzero = |t: &HCoeffTable| -> BTreeMap<(u32, u32), Scalar> {
            t.entries.iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (*k, c.clone())).collect()
        };
        self.spec == other.spec && nonzero(self) == nonzero(other)
    }
}

/// Closed-form normal-ordered `S_jk`.
pub fn weyl_normal_form(spec: WeylSpec) -> NormalPoly {
    HCoeffTable::new(spec).to_normal_poly()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryWitness {
    pub spec: WeylSpec,
    pub u: u32,
    pub v: u32,
    pub partner_v: u32,
    pub left: Scalar,
    pub right: Scalar,
}

impl fmt::Display for SymmetryWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "j={} k={} u={} v={} (partner v={}): {} != {}",
            self.spec.j, self.spec.k, self.u, self.v, self.partner_v, self.left, self.right
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SymmetryOutcome {
    pub checked: usize,
    pub witness: Option<SymmetryWitness>,
}

impl SymmetryOutcome {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryReport {
    pub conjugate_pairs: SymmetryOutcome,
    /// `None` unless both `j` and `k` are odd.
    pub odd_middle_zero: Option<SymmetryOutcome>,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.conjugate_pairs.passed() && self.odd_middle_zero.as_ref().is_none_or(SymmetryOutcome::passed)
    }
}

pub fn symmetry_report(spec: WeylSpec) -> SymmetryReport {
    HCoeffTable::new(spec).symmetry_report()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_rational(ratio(n, d))
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_factor(2, 1, 1, 1), BigInt::from(2));
        assert_eq!(lambda_factor(3, 2, 0, 0), factorial(5));
        assert_eq!(lambda_factor(2, 2, 0, 2), BigInt::from(4));
    }

    #[test]
    fn lambda_matches_slot_count_form() {
        // (j+k)! / C(j+k, u+v)
        for n in 0..10u32 {
            for t in 0..=n {
                let expected = factorial(n) / binom(n as i64, t as i64);
                assert_eq!(lambda_factor(n, 0, t, 0), expected);
            }
        }
    }

    #[test]
    fn xi_examples() {
        assert_eq!(xi_factor(2, 1, 1, 1), ratio(3, 1));
        assert_eq!(xi_factor(4, 3, 0, 0), ratio(1, 1));
        assert_eq!(xi_factor(2, 0, 1, 0), ratio(1, 1));
    }

    #[test]
    fn zeta_examples() {
        for (j, k) in [(0, 0), (3, 5), (7, 1)] {
            assert_eq!(zeta_sum(j, k, 0), BigInt::one());
        }
        assert_eq!(zeta_sum(1, 1, 1), BigInt::zero());
        assert_eq!(zeta_sum(2, 1, 2), BigInt::from(-1));
        assert_eq!(zeta_poly(0, 0, 0), BigInt::one());
        assert_eq!(zeta_poly(2, 1, 2), BigInt::from(-1));
        assert_eq!(zeta_poly(3, 0, 2), BigInt::from(3));
        assert_eq!(zeta_poly(2, 1, 9), BigInt::zero());
        assert_eq!(zeta_sum(2, 1, 9), BigInt::zero());
    }

    #[test]
    fn zeta_pure_powers() {
        for a in 0..12u32 {
            for t in 0..=a + 2 {
                let b = binom(a as i64, t as i64);
                assert_eq!(zeta_poly(a, 0, t), b);
                let alt = if t % 2 == 0 { b } else { -b };
                assert_eq!(zeta_poly(0, a, t), alt);
            }
        }
    }

    #[test]
    fn zeta_four_forms_agree() {
        for j in 0..=12 {
            for k in 0..=12 {
                for t in 0..=j + k + 1 {
                    let s = zeta_sum(j, k, t);
                    assert_eq!(s, zeta_poly(j, k, t));
                    assert_eq!(s, zeta_guarded(j, k, t));
                    assert_eq!(s, zeta_nonzero_range(j, k, t));
                }
            }
        }
    }

    #[test]
    fn h_examples() {
        assert_eq!(h_coeff(0, 0, 0, 0), Scalar::one());
        assert_eq!(h_coeff(1, 1, 0, 0), Scalar::i().scale(&ratio(1, 2)));
        assert_eq!(h_coeff(2, 0, 1, 0), q(1, 2));
        // 2^(-3/2) lands in the √2 component
        assert_eq!(h_coeff(3, 0, 0, 0), Scalar::sqrt2().scale(&ratio(1, 4)));
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(weyl_normal_form(WeylSpec::new(0, 0)), NormalPoly::one());
        let hi = Scalar::i().scale(&ratio(1, 2));
        assert_eq!(
            weyl_normal_form(WeylSpec::new(1, 1)),
            NormalPoly::from_terms([((2, 0), hi.clone()), ((0, 2), -hi)])
        );
        assert_eq!(
            weyl_normal_form(WeylSpec::new(2, 0)),
            NormalPoly::from_terms([((2, 0), q(1, 2)), ((1, 1), q(1, 1)), ((0, 2), q(1, 2)), ((0, 0), q(1, 2))])
        );
    }

    #[test]
    fn symmetry_examples() {
        let r = symmetry_report(WeylSpec::new(1, 1));
        assert!(r.passed());
        assert_eq!(r.odd_middle_zero.as_ref().unwrap().checked, 2);
        assert!(h_coeff(1, 1, 0, 1).is_zero());
        assert_eq!(h_coeff(2, 0, 0, 0), h_coeff(2, 0, 0, 2));
        assert!(symmetry_report(WeylSpec::new(0, 0)).passed());
        assert!(symmetry_report(WeylSpec::new(2, 0)).odd_middle_zero.is_none());
    }

    #[test]
    fn symmetry_report_finds_planted_fault() {
        let mut table = HCoeffTable::new(WeylSpec::new(3, 1));
        table.set(0, 0, Scalar::from_int(7));
        let r = table.symmetry_report();
        assert!(!r.passed());
        let w = r.conjugate_pairs.witness.unwrap();
        assert_eq!((w.u, w.v, w.partner_v), (0, 0, 4));
    }

    #[test]
    fn table_equality_ignores_zero_entries() {
        let a = HCoeffTable::new(WeylSpec::new(1, 1));
        let mut b = a.clone();
        b.entries.retain(|_, c| !c.is_zero());
        assert_eq!(a, b);
    }

    #[test]
    fn terms_have_matching_parity() {
        for spec in WeylSpec::up_to_degree(9) {
            let n = spec.degree();
            for (&(m, nn), _) in weyl_normal_form(spec).iter() {
                assert!(m + nn <= n && (n - m - nn) % 2 == 0);
            }
        }
    }
}
