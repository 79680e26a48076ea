//! Exact normal-ordered equivalents of Weyl-ordered `q^j p^k`.
//!
//! The closed form in [`closed`] is checked against three independent
//! routes: averaging over orderings ([`enumerate`]), symmetrized ladder
//! monomials ([`cahill_glauber`]) and the boson-string formula
//! ([`blasiak`]). All arithmetic is exact in Q(i, √2) with ħ = 1, so
//! `q = (a + a†)/√2` and `p = i(a† − a)/√2`.

pub mod blasiak;
pub mod cahill_glauber;
pub mod cli;
pub mod closed;
pub mod combinat;
pub mod enumerate;
pub mod error;
pub mod normal;
pub mod quantize;
pub mod scalar;
pub mod textio;
pub mod verify;
pub mod word;

pub use closed::{h_coeff, weyl_normal_form, HCoeffTable, WeylSpec};
pub use error::{Error, Result};
pub use normal::NormalPoly;
pub use scalar::{Rational, Scalar};
pub use word::{BosonWord, Ladder, QPWord, Quadrature};
