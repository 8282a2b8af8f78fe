//! Exact arithmetic in Q(i, √2).
//!
//! A [`Scalar`] is stored as `a + b·i + c·√2 + d·i·√2` with rational
//! components. The representation is canonical, so structural equality is
//! field equality.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
}

/// Build a rational from a numerator/denominator pair of machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
}

impl Scalar {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Scalar { a, b, c, d }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_rational(Rational::one())
    }

    pub fn i() -> Self {
        Scalar::new(Rational::zero(), Rational::one(), Rational::zero(), Rational::zero())
    }

    pub fn sqrt2() -> Self {
        Scalar::new(Rational::zero(), Rational::zero(), Rational::one(), Rational::zero())
    }

    pub fn from_rational(q: Rational) -> Self {
        Scalar::new(q, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::from_rational(rat(num, den))
    }

    /// Components `(a, b, c, d)` of `a + b·i + c·√2 + d·i·√2`.
    pub fn components(&self) -> [&Rational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// True when the value lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.b.is_zero() && self.c.is_zero() && self.d.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Complex conjugation; fixes Q(√2) pointwise.
    pub fn conj(&self) -> Self {
        Scalar::new(self.a.clone(), -&self.b, self.c.clone(), -&self.d)
    }

    /// Multiplicative inverse.
    ///
    /// Writes `x = u + v√2` with `u, v ∈ Q(i)`; then
    /// `1/x = (u - v√2) / (u² - 2v²)` and the Q(i) denominator is inverted
    /// through its complex conjugate.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        // u = a + b i, v = c + d i
        let two = Rational::from_integer(BigInt::from(2));
        // u² = (a² - b²) + 2ab i
        let u2_re = &self.a * &self.a - &self.b * &self.b;
        let u2_im = &two * &self.a * &self.b;
        let v2_re = &self.c * &self.c - &self.d * &self.d;
        let v2_im = &two * &self.c * &self.d;
        let n_re = u2_re - &two * v2_re;
        let n_im = u2_im - &two * v2_im;
        let norm = &n_re * &n_re + &n_im * &n_im;
        // Q(√2)-norm of a nonzero element is nonzero since √2 is irrational.
        debug_assert!(!norm.is_zero());
        let inv_re = &n_re / &norm;
        let inv_im = -&n_im / &norm;
        let conj_factor = Scalar::new(self.a.clone(), self.b.clone(), -&self.c, -&self.d);
        let inv_n = Scalar::new(inv_re, inv_im, Rational::zero(), Rational::zero());
        Ok(conj_factor * inv_n)
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Scalar::new(&self.a * q, &self.b * q, &self.c * q, &self.d * q)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::from_rational(q)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.a + &rhs.a, &self.b + &rhs.b, &self.c + &rhs.c, &self.d + &rhs.d)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.a - &rhs.a, &self.b - &rhs.b, &self.c - &rhs.c, &self.d - &rhs.d)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, y: &Scalar) -> Scalar {
        let x = self;
        // basis 1, i, s = √2, is: i² = -1, s² = 2, (is)² = -2
        let a = &x.a * &y.a - &x.b * &y.b + (&x.c * &y.c - &x.d * &y.d) * BigInt::from(2);
        let b = &x.a * &y.b + &x.b * &y.a + (&x.c * &y.d + &x.d * &y.c) * BigInt::from(2);
        let c = &x.a * &y.c + &x.c * &y.a - &x.b * &y.d - &x.d * &y.b;
        let d = &x.a * &y.d + &x.d * &y.a + &x.b * &y.c + &x.c * &y.b;
        Scalar::new(a, b, c, d)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Panics on division by zero, like the rational division it wraps.
impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.a += &rhs.a;
        self.b += &rhs.b;
        self.c += &rhs.c;
        self.d += &rhs.d;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
        self.c -= &rhs.c;
        self.d -= &rhs.d;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

pub(crate) fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Canonical text: `3/4 - 1/2*i*sqrt2`, parseable by [`crate::parse::parse_scalar`].
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: [(&Rational, &str); 4] =
            [(&self.a, ""), (&self.b, "i"), (&self.c, "sqrt2"), (&self.d, "i*sqrt2")];
        let mut first = true;
        for (q, unit) in parts {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let mag = q.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if unit.is_empty() {
                write!(f, "{}", fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{unit}")?;
            } else {
                write!(f, "{}*{unit}", fmt_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(a: i64, b: i64, c: i64, d: i64) -> Scalar {
        Scalar::new(rat(a, 1), rat(b, 1), rat(c, 1), rat(d, 1))
    }

    #[test]
    fn unit_products() {
        let one_plus_i = &Scalar::one() + &Scalar::i();
        let one_minus_i = &Scalar::one() - &Scalar::i();
        assert_eq!(one_plus_i * one_minus_i, Scalar::from_int(2));
        assert_eq!(Scalar::sqrt2() * Scalar::sqrt2(), Scalar::from_int(2));
        assert_eq!(Scalar::i() * Scalar::i(), Scalar::from_int(-1));
        let isq = Scalar::i() * Scalar::sqrt2();
        assert_eq!(&isq * &isq, Scalar::from_int(-2));
    }

    #[test]
    fn inverse_of_inv_sqrt2() {
        // (a + c√2)(x + y√2) = 1 with a = 0, c = 1/2 gives x = 0, y = 1
        let half_sqrt2 = Scalar::sqrt2().scale(&rat(1, 2));
        assert_eq!(half_sqrt2.inv().unwrap(), Scalar::sqrt2());
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(Scalar::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn conjugation() {
        assert_eq!(Scalar::i().conj(), -Scalar::i());
        assert_eq!(Scalar::sqrt2().conj(), Scalar::sqrt2());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(s(0, 0, 0, -1).to_string(), "-i*sqrt2");
        let x = &Scalar::ratio(3, 4) - &(Scalar::i() * Scalar::sqrt2()).scale(&rat(1, 2));
        assert_eq!(x.to_string(), "3/4 - 1/2*i*sqrt2");
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-20i64..20, 1i64..7).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (arb_rational(), arb_rational(), arb_rational(), arb_rational())
            .prop_map(|(a, b, c, d)| Scalar::new(a, b, c, d))
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb_scalar(), y in arb_scalar(), z in arb_scalar()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inv().unwrap(), Scalar::one());
            }
        }

        #[test]
        fn conj_is_involutive_ring_hom(x in arb_scalar(), y in arb_scalar()) {
            prop_assert_eq!(x.conj().conj(), x.clone());
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
            prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
        }
    }
}
