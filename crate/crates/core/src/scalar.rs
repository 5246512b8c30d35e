//! Exact Gaussian rationals a + bi with a, b in Q.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Writes a rational as `n` or `n/d`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

pub type GR = GaussianRational;

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn int(n: i64) -> Self {
        Self::real(rat_int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::real(rat(n, d))
    }

    /// `a/b + (c/d) i`
    pub fn from_parts(a: (i64, i64), b: (i64, i64)) -> Self {
        GaussianRational { re: rat(a.0, a.1), im: rat(b.0, b.1) }
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn i() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(GaussianRational { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn scale(&self, q: &Rational) -> Self {
        GaussianRational { re: &self.re * q, im: &self.im * q }
    }

    /// Sign of a real value: -1, 0 or 1. None if the value is not real.
    pub fn real_sign(&self) -> Option<i32> {
        if !self.is_real() {
            return None;
        }
        Some(if self.re.is_zero() {
            0
        } else if self.re.is_positive() {
            1
        } else {
            -1
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Integer value if the number is a real integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.is_real() && self.re.is_integer() {
            Some(self.re.to_integer())
        } else {
            None
        }
    }

    /// Units of Z[i]: returns k with self = i^k, k in 0..4.
    pub fn unit_exponent(&self) -> Option<u32> {
        let one = Rational::one();
        let zero = Rational::zero();
        if self.im == zero {
            if self.re == one {
                return Some(0);
            }
            if self.re == -one.clone() {
                return Some(2);
            }
        } else if self.re == zero {
            if self.im == one {
                return Some(1);
            }
            if self.im == -one {
                return Some(3);
            }
        }
        None
    }

    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => Self::int(-1),
            _ => -Self::i(),
        }
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl From<Rational> for GaussianRational {
    fn from(q: Rational) -> Self {
        Self::real(q)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a, 'b> $tr<&'b GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: &'b GaussianRational) -> GaussianRational {
                let f: fn(&GaussianRational, &GaussianRational) -> GaussianRational = $body;
                f(self, o)
            }
        }
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational {
                (&self).$m(&o)
            }
        }
        impl<'b> $tr<&'b GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: &'b GaussianRational) -> GaussianRational {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational {
                self.$m(&o)
            }
        }
    };
}

binop!(Add, add, |a, b| GaussianRational { re: &a.re + &b.re, im: &a.im + &b.im });
binop!(Sub, sub, |a, b| GaussianRational { re: &a.re - &b.re, im: &a.im - &b.im });
binop!(Mul, mul, |a, b| GaussianRational {
    re: &a.re * &b.re - &a.im * &b.im,
    im: &a.re * &b.im + &a.im * &b.re,
});
binop!(Div, div, |a, b| a * &b.inv().expect("division by zero Gaussian rational"));

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl AddAssign for GaussianRational {
    fn add_assign(&mut self, o: GaussianRational) {
        *self += &o;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &GaussianRational) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, o: &GaussianRational) {
        *self = &*self * o;
    }
}

impl std::iter::Sum for GaussianRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        let mut acc = Self::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_rational(&self.re))?;
        if !self.im.is_zero() {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            write!(f, "{}{}i", sign, fmt_rational(&self.im.abs()))?;
        }
        Ok(())
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad Gaussian rational {text:?} at byte {pos}: {reason}")]
pub struct ParseScalarError {
    pub text: String,
    pub pos: usize,
    pub reason: &'static str,
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    // INT(/INT)?
    fn fraction(&mut self) -> Result<Rational, (usize, &'static str)> {
        let n = self.digits().ok_or((self.pos, "expected digits"))?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let d = self.digits().ok_or((self.pos, "expected denominator"))?;
            if d.is_zero() {
                return Err((self.pos, "zero denominator"));
            }
            return Ok(BigRational::new(n, d));
        }
        Ok(BigRational::from_integer(n))
    }
}

impl FromStr for GaussianRational {
    type Err = ParseScalarError;

    /// Grammar: `[+-]?INT(/INT)?([+-]INT(/INT)?i)?`
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |(pos, reason)| ParseScalarError { text: text.to_string(), pos, reason };
        let mut c = Cursor { s: text.as_bytes(), pos: 0 };
        let mut neg = false;
        if let Some(b) = c.peek() {
            if b == b'+' || b == b'-' {
                neg = b == b'-';
                c.pos += 1;
            }
        }
        let mut re = c.fraction().map_err(err)?;
        if neg {
            re = -re;
        }
        let mut im = Rational::zero();
        if let Some(b) = c.peek() {
            if b != b'+' && b != b'-' {
                return Err(err((c.pos, "unexpected character")));
            }
            c.pos += 1;
            im = c.fraction().map_err(err)?;
            if b == b'-' {
                im = -im;
            }
            if c.peek() != Some(b'i') {
                return Err(err((c.pos, "expected 'i'")));
            }
            c.pos += 1;
        }
        if c.pos != text.len() {
            return Err(err((c.pos, "trailing input")));
        }
        Ok(GaussianRational { re, im })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(s: &str) -> GR {
        s.parse().unwrap()
    }

    #[test]
    fn parses_grammar() {
        assert_eq!(g("1+1i"), GR::from_parts((1, 1), (1, 1)));
        assert_eq!(g("3/2"), GR::ratio(3, 2));
        assert_eq!(g("-5/2"), GR::ratio(-5, 2));
        assert_eq!(g("+0-3/4i"), GR::from_parts((0, 1), (-3, 4)));
        for bad in ["", "i", "2i", "1+i", "1/0", "1.5", "1+2", "--1", "1+2i "] {
            assert!(bad.parse::<GR>().is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn display_matches_grammar() {
        assert_eq!(GR::from_parts((1, 2), (-3, 4)).to_string(), "1/2-3/4i");
        assert_eq!(GR::i().to_string(), "0+1i");
        assert_eq!(GR::int(-7).to_string(), "-7");
    }

    #[test]
    fn field_ops() {
        let a = g("1+2i");
        let b = g("3-1i");
        assert_eq!(&a * &b, g("5+5i"));
        assert_eq!(&(&a / &b) * &b, a);
        assert_eq!(a.conj(), g("1-2i"));
        assert_eq!(GR::i_pow(-1), -GR::i());
        assert_eq!(g("0-1i").unit_exponent(), Some(3));
    }

    fn arb() -> impl Strategy<Value = GR> {
        (-50i64..50, 1i64..9, -50i64..50, 1i64..9).prop_map(|(a, b, c, d)| GR::from_parts((a, b), (c, d)))
    }

    proptest! {
        #[test]
        fn display_round_trips(x in arb()) {
            prop_assert_eq!(x.to_string().parse::<GR>().unwrap(), x);
        }

        #[test]
        fn conj_is_multiplicative(x in arb(), y in arb()) {
            prop_assert_eq!((&x * &y).conj(), x.conj() * y.conj());
        }
    }
}
