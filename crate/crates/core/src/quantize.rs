//! Weyl quantization of polynomial planar vector fields.
//!
//! Each classical monomial `c q^j p^k` is replaced by `c S_jk`, the
//! normal-ordered Weyl ordering of `q^j p^k`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::closed::{weyl_normal_form, WeylSpec};
use crate::normal::NormalPoly;
use crate::scalar::Rational;

/// Sparse real polynomial `Σ c_jk q^j p^k`.
pub type QpPoly = BTreeMap<(u32, u32), Rational>;

/// `q' = A(q, p)`, `p' = B(q, p)` with finite support.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolySystem {
    pub qdot: QpPoly,
    pub pdot: QpPoly,
}

impl PolySystem {
    pub fn new(qdot: QpPoly, pdot: QpPoly) -> Self {
        let mut sys = PolySystem { qdot, pdot };
        sys.qdot.retain(|_, c| !c.is_zero());
        sys.pdot.retain(|_, c| !c.is_zero());
        sys
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Qdot,
    Pdot,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Qdot => "qdot",
            Side::Pdot => "pdot",
        }
    }
}

/// The power of ħ a monomial would carry if ħ were kept symbolic:
/// `ħ^((j+k)/2)`, stored doubled to stay integral.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HbarNote {
    pub side: Side,
    pub j: u32,
    pub k: u32,
    pub hbar_exponent_times_2: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpectedDynamics {
    pub qdot_op: NormalPoly,
    pub pdot_op: NormalPoly,
    pub hbar_note: Vec<HbarNote>,
}

pub fn quantize_side(side: &QpPoly) -> NormalPoly {
    side.iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(&(j, k), c)| weyl_normal_form(WeylSpec::new(j, k)).scale_rational(c))
        .sum()
}

pub fn quantize_system(sys: &PolySystem) -> ExpectedDynamics {
    let notes = |side: Side, poly: &QpPoly| -> Vec<HbarNote> {
        poly.iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(&(j, k), _)| HbarNote { side, j, k, hbar_exponent_times_2: j + k })
            .collect()
    };
    let mut hbar_note = notes(Side::Qdot, &sys.qdot);
    hbar_note.extend(notes(Side::Pdot, &sys.pdot));
    ExpectedDynamics { qdot_op: quantize_side(&sys.qdot), pdot_op: quantize_side(&sys.pdot), hbar_note }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::weyl_bruteforce;
    use crate::scalar::{ratio, Scalar};

    type Entry = ((u32, u32), (i64, i64));

    fn side(entries: &[Entry]) -> QpPoly {
        entries.iter().map(|&(key, (n, d))| (key, ratio(n, d))).collect()
    }

    #[test]
    fn side_examples() {
        let ir2 = Scalar::i() * Scalar::sqrt2().scale(&ratio(1, 2));
        assert_eq!(
            quantize_side(&side(&[((0, 1), (1, 1))])),
            NormalPoly::from_terms([((1, 0), ir2.clone()), ((0, 1), -ir2)])
        );
        assert!(quantize_side(&QpPoly::new()).is_zero());
        assert_eq!(
            quantize_side(&side(&[((1, 1), (2, 1))])),
            NormalPoly::from_terms([((2, 0), Scalar::i()), ((0, 2), -Scalar::i())])
        );
    }

    #[test]
    fn harmonic_oscillator() {
        let sys = PolySystem::new(side(&[((0, 1), (1, 1))]), side(&[((1, 0), (-1, 1))]));
        let out = quantize_system(&sys);
        assert_eq!(out.qdot_op, weyl_normal_form(WeylSpec::new(0, 1)));
        assert_eq!(out.pdot_op, -weyl_normal_form(WeylSpec::new(1, 0)));
        assert_eq!(out.hbar_note.len(), 2);
        assert_eq!(out.hbar_note[1], HbarNote { side: Side::Pdot, j: 1, k: 0, hbar_exponent_times_2: 1 });
    }

    #[test]
    fn zero_system() {
        let out = quantize_system(&PolySystem::default());
        assert!(out.qdot_op.is_zero() && out.pdot_op.is_zero() && out.hbar_note.is_empty());
    }

    #[test]
    fn duffing_cross_checked_by_bruteforce() {
        let sys = PolySystem::new(side(&[((0, 1), (1, 1))]), side(&[((1, 0), (-1, 1)), ((3, 0), (-1, 1))]));
        let out = quantize_system(&sys);
        let expected = -weyl_bruteforce(WeylSpec::new(1, 0)) - weyl_bruteforce(WeylSpec::new(3, 0));
        assert_eq!(out.pdot_op, expected);
        assert!(out.pdot_op.is_self_adjoint());
    }
}
