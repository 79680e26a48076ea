//! Exact arithmetic in the field Q(i, √2).
//!
//! A [`Scalar`] is stored as `(x_re + x_im·i) + (y_re + y_im·i)·√2` with four
//! arbitrary-precision rationals. `BigRational` keeps every component in
//! lowest terms with a positive denominator, so component-wise equality is
//! exact equality in the field.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Builds the rational `num/den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub x_re: Rational,
    pub x_im: Rational,
    pub y_re: Rational,
    pub y_im: Rational,
}

impl Scalar {
    pub fn new(x_re: Rational, x_im: Rational, y_re: Rational, y_im: Rational) -> Self {
        Scalar { x_re, x_im, y_re, y_im }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_rational(Rational::one())
    }

    pub fn i() -> Self {
        Scalar { x_im: Rational::one(), ..Scalar::default() }
    }

    pub fn sqrt2() -> Self {
        Scalar { y_re: Rational::one(), ..Scalar::default() }
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar { x_re: r, ..Scalar::default() }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Scalar::from_rational(Rational::from_integer(n.into()))
    }

    /// `i^k`.
    pub fn i_pow(k: u32) -> Self {
        match k % 4 {
            0 => Scalar::one(),
            1 => Scalar::i(),
            2 => -Scalar::one(),
            _ => -Scalar::i(),
        }
    }

    /// `2^(-n/2)`; odd `n` is carried in the √2 component, e.g. `2^(-3/2) = √2/4`.
    pub fn inv_sqrt2_pow(n: u32) -> Self {
        let half = n / 2;
        if n.is_multiple_of(2) {
            Scalar::from_rational(Rational::new(BigInt::one(), BigInt::one() << half))
        } else {
            let c = Rational::new(BigInt::one(), BigInt::one() << (half + 1));
            Scalar { y_re: c, ..Scalar::default() }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x_re.is_zero() && self.x_im.is_zero() && self.y_re.is_zero() && self.y_im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.x_re.is_one() && self.x_im.is_zero() && self.y_re.is_zero() && self.y_im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar { x_re: self.x_re.clone(), x_im: -&self.x_im, y_re: self.y_re.clone(), y_im: -&self.y_im }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Scalar { x_re: &self.x_re * r, x_im: &self.x_im * r, y_re: &self.y_re * r, y_im: &self.y_im * r }
    }

    /// True when the value lies in Q (no `i`, no `√2` part).
    pub fn is_rational(&self) -> bool {
        self.x_im.is_zero() && self.y_re.is_zero() && self.y_im.is_zero()
    }

    /// Components in storage order together with the unit each multiplies.
    pub fn components(&self) -> [(&Rational, Unit); 4] {
        [(&self.x_re, Unit::One), (&self.x_im, Unit::I), (&self.y_re, Unit::Sqrt2), (&self.y_im, Unit::ISqrt2)]
    }
}

/// Basis element of Q(i, √2) over Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unit {
    One,
    I,
    Sqrt2,
    ISqrt2,
}

fn gauss_mul(a: (&Rational, &Rational), b: (&Rational, &Rational)) -> (Rational, Rational) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            x_re: &self.x_re + &rhs.x_re,
            x_im: &self.x_im + &rhs.x_im,
            y_re: &self.y_re + &rhs.y_re,
            y_im: &self.y_im + &rhs.y_im,
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            x_re: &self.x_re - &rhs.x_re,
            x_im: &self.x_im - &rhs.x_im,
            y_re: &self.y_re - &rhs.y_re,
            y_im: &self.y_im - &rhs.y_im,
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        // (x1 + y1√2)(x2 + y2√2) = (x1x2 + 2y1y2) + (x1y2 + x2y1)√2
        let (xx_re, xx_im) = gauss_mul((&self.x_re, &self.x_im), (&rhs.x_re, &rhs.x_im));
        let (yy_re, yy_im) = gauss_mul((&self.y_re, &self.y_im), (&rhs.y_re, &rhs.y_im));
        let (xy_re, xy_im) = gauss_mul((&self.x_re, &self.x_im), (&rhs.y_re, &rhs.y_im));
        let (yx_re, yx_im) = gauss_mul((&self.y_re, &self.y_im), (&rhs.x_re, &rhs.x_im));
        let two = Rational::from_integer(BigInt::from(2));
        Scalar { x_re: xx_re + &two * yy_re, x_im: xx_im + &two * yy_im, y_re: xy_re + yx_re, y_im: xy_im + yx_im }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { x_re: -&self.x_re, x_im: -&self.x_im, y_re: -&self.y_re, y_im: -&self.y_im }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: &Scalar) -> Scalar {
                (&self).$f(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.x_re += &rhs.x_re;
        self.x_im += &rhs.x_im;
        self.y_re += &rhs.y_re;
        self.y_im += &rhs.y_im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.x_re -= &rhs.x_re;
        self.x_im -= &rhs.x_im;
        self.y_re -= &rhs.y_re;
        self.y_im -= &rhs.y_im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

/// Writes `|r|` times `unit` in ASCII: `3`, `i/2`, `3i/2`, `sqrt2/4`, `3i*sqrt2/4`.
pub(crate) fn write_magnitude(f: &mut impl fmt::Write, r: &Rational, unit: Unit) -> fmt::Result {
    let num = r.numer().abs();
    let den = r.denom();
    let unit_text = match unit {
        Unit::One => "",
        Unit::I => "i",
        Unit::Sqrt2 => "sqrt2",
        Unit::ISqrt2 => "i*sqrt2",
    };
    if unit == Unit::One {
        write!(f, "{num}")?;
    } else if num.is_one() {
        f.write_str(unit_text)?;
    } else if unit == Unit::I {
        write!(f, "{num}i")?;
    } else {
        write!(f, "{num}*{unit_text}")?;
    }
    if !den.is_one() {
        write!(f, "/{den}")?;
    }
    Ok(())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (r, unit) in self.components() {
            if r.is_zero() {
                continue;
            }
            if first {
                if r.is_negative() {
                    f.write_str("-")?;
                }
            } else if r.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            write_magnitude(f, r, unit)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
