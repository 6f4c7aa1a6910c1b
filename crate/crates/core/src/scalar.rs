//! Scalars: a coefficient ring for truncated series, a real-number trait for
//! the numerics, an MPFR-backed float with explicit precision, and a few
//! complex elementary functions that `num-complex` only offers for `Float`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{Num, NumAssign, One, ToPrimitive, Zero};
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Working precision, in significant decimal digits.
///
/// `tail_scale` multiplies every truncation point chosen by a tail bound; the
/// default is 1, and 2 is used to check that results do not move when all
/// truncations are doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    pub digits: u32,
    pub tail_scale: u32,
}

impl Precision {
    pub const DEFAULT_DIGITS: u32 = 40;
    /// Largest precision the tail-bound machinery supports (bounds are f64).
    pub const MAX_DIGITS: u32 = 250;

    pub fn new(digits: u32) -> Self {
        Precision { digits, tail_scale: 1 }
    }

    pub fn bits(&self) -> u32 {
        (self.digits as f64 * LOG2_10).ceil() as u32 + 16
    }

    /// Stopping threshold for tail bounds: 10^-(digits+5).
    pub fn tol(&self) -> f64 {
        10f64.powi(-(self.digits as i32 + 5))
    }

    pub fn doubled(self) -> Self {
        Precision { tail_scale: self.tail_scale * 2, ..self }
    }

    pub fn check(&self) -> Result<()> {
        if self.digits == 0 || self.digits > Self::MAX_DIGITS {
            return Err(Error::Domain(format!(
                "precision must be 1..={} digits, got {}",
                Self::MAX_DIGITS,
                self.digits
            )));
        }
        Ok(())
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::new(Self::DEFAULT_DIGITS)
    }
}

/// Coefficient ring for truncated series.
///
/// Both `BigInt` and `BigFloat` qualify; the `*_like` constructors carry the
/// precision of an existing value so that float pipelines never fall back to a
/// default precision.
pub trait Coeff:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero_like(&self) -> Self;
    /// `v` in the same ring (and at the same precision) as `self`.
    #[allow(clippy::wrong_self_convention)]
    fn from_i64_like(&self, v: i64) -> Self;
    fn mul_i64(&self, k: i64) -> Self;
    /// `self += a * k`
    fn add_mul_i64(&mut self, a: &Self, k: i64) {
        if k != 0 && !a.is_zero() {
            let t = a.mul_i64(k);
            *self += &t;
        }
    }
    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        let t = a.clone() * b;
        *self += &t;
    }
}

impl Coeff for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn from_i64_like(&self, v: i64) -> Self {
        BigInt::from(v)
    }
    fn mul_i64(&self, k: i64) -> Self {
        self * k
    }
    fn add_mul_i64(&mut self, a: &Self, k: i64) {
        match k {
            0 => {}
            1 => *self += a,
            -1 => *self -= a,
            _ => *self += a * k,
        }
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

impl Coeff for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn from_i64_like(&self, v: i64) -> Self {
        v as f64
    }
    fn mul_i64(&self, k: i64) -> Self {
        self * k as f64
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

/// Multiprecision binary float.  Binary operations round to the larger of the
/// two operand precisions; `zero()` and `one()` are exact low-precision values
/// that adopt the precision of whatever they are combined with.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct BigFloat(pub Float);

const LITERAL_PREC: u32 = 64;

impl BigFloat {
    pub fn with_bits(bits: u32, v: f64) -> Self {
        BigFloat(Float::with_val(bits, v))
    }
    pub fn prec(&self) -> u32 {
        self.0.prec()
    }
    /// Same value rounded to `bits`.
    pub fn to_bits(&self, bits: u32) -> Self {
        BigFloat(Float::with_val(bits, &self.0))
    }
    fn promote(&mut self, bits: u32) {
        if self.0.prec() < bits {
            // increasing precision is exact
            self.0.set_prec(bits);
        }
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.prec() as f64 / LOG2_10).floor() as usize;
        f.write_str(&sci_to_plain(&self.0.to_string_radix(10, Some(digits.max(2)))))
    }
}

macro_rules! bf_binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident, $op:tt, $aop:tt) => {
        impl<'a> $tr<&'a BigFloat> for &'a BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: &'a BigFloat) -> BigFloat {
                let p = self.0.prec().max(rhs.0.prec());
                BigFloat(Float::with_val(p, &self.0 $op &rhs.0))
            }
        }
        impl<'a> $tr<&'a BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(mut self, rhs: &'a BigFloat) -> BigFloat {
                self.promote(rhs.0.prec());
                self.0 $aop &rhs.0;
                self
            }
        }
        impl $tr<BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: BigFloat) -> BigFloat {
                self $op &rhs
            }
        }
        impl<'a> $tr<BigFloat> for &'a BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: BigFloat) -> BigFloat {
                self $op &rhs
            }
        }
        impl<'a> $atr<&'a BigFloat> for BigFloat {
            fn $am(&mut self, rhs: &'a BigFloat) {
                self.promote(rhs.0.prec());
                self.0 $aop &rhs.0;
            }
        }
        impl $atr<BigFloat> for BigFloat {
            fn $am(&mut self, rhs: BigFloat) {
                *self $aop &rhs;
            }
        }
    };
}

bf_binop!(Add, add, AddAssign, add_assign, +, +=);
bf_binop!(Sub, sub, SubAssign, sub_assign, -, -=);
bf_binop!(Mul, mul, MulAssign, mul_assign, *, *=);
bf_binop!(Div, div, DivAssign, div_assign, /, /=);
bf_binop!(Rem, rem, RemAssign, rem_assign, %, %=);

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat(-self.0)
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat(Float::with_val(self.0.prec(), -&self.0))
    }
}

impl Zero for BigFloat {
    fn zero() -> Self {
        BigFloat(Float::new(LITERAL_PREC))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for BigFloat {
    fn one() -> Self {
        BigFloat(Float::with_val(LITERAL_PREC, 1))
    }
}

impl Num for BigFloat {
    type FromStrRadixErr = Error;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self> {
        if radix != 10 {
            return Err(Error::Usage("only decimal literals are supported".into()));
        }
        let bits = (s.len() as f64 * LOG2_10) as u32 + LITERAL_PREC;
        BigFloat::parse(s, bits)
    }
}

impl Coeff for BigFloat {
    fn zero_like(&self) -> Self {
        BigFloat(Float::new(self.0.prec()))
    }
    fn from_i64_like(&self, v: i64) -> Self {
        BigFloat(Float::with_val(self.0.prec(), v))
    }
    fn mul_i64(&self, k: i64) -> Self {
        BigFloat(Float::with_val(self.0.prec(), &self.0 * k))
    }
    fn add_mul_i64(&mut self, a: &Self, k: i64) {
        match k {
            0 => {}
            1 => *self += a,
            -1 => *self -= a,
            _ => {
                self.promote(a.0.prec());
                let t = Float::with_val(self.0.prec(), &a.0 * k);
                self.0 += &t;
            }
        }
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        self.promote(a.0.prec().max(b.0.prec()));
        let t = Float::with_val(self.0.prec(), &a.0 * &b.0);
        self.0 += &t;
    }
}

/// Complex coefficients, for series in an auxiliary variable with complex
/// q-dependent coefficients.
impl<R: Real> Coeff for Complex<R> {
    fn zero_like(&self) -> Self {
        Complex::new(self.re.zero_like(), self.re.zero_like())
    }
    fn from_i64_like(&self, v: i64) -> Self {
        Complex::new(self.re.from_i64_like(v), self.re.zero_like())
    }
    fn mul_i64(&self, k: i64) -> Self {
        Complex::new(self.re.mul_i64(k), self.im.mul_i64(k))
    }
}

/// Real scalar used by the numerical layer.  Constructors take an explicit
/// bit precision, ignored by `f64`.
pub trait Real:
    Coeff
    + Num
    + NumAssign
    + PartialOrd
    + fmt::Display
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + for<'a> MulAssign<&'a Self>
    + for<'a> DivAssign<&'a Self>
{
    fn bits(&self) -> u32;
    fn from_f64(v: f64, bits: u32) -> Self;
    fn from_ratio(p: i64, q: i64, bits: u32) -> Self;
    fn from_bigint(n: &BigInt, bits: u32) -> Self;
    fn parse(s: &str, bits: u32) -> Result<Self>;
    fn pi(bits: u32) -> Self;
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn sinh(&self) -> Self;
    fn cosh(&self) -> Self;
    fn atan2(&self, x: &Self) -> Self;
    fn powf(&self, e: &Self) -> Self;
    fn powi(&self, n: i32) -> Self;
    /// Exact multiplication by 2^e.
    fn mul_pow2(&self, e: i32) -> Self;
    /// Decimal rendering with `digits` significant digits, no exponent
    /// notation for moderate magnitudes.
    fn to_decimal(&self, digits: usize) -> String;

    fn lit(&self, v: f64) -> Self {
        Self::from_f64(v, self.bits())
    }
    fn ratio_like(&self, p: i64, q: i64) -> Self {
        Self::from_ratio(p, q, self.bits())
    }
    fn ln2(bits: u32) -> Self {
        Self::from_f64(2.0, bits).ln()
    }
}

impl Real for BigFloat {
    fn bits(&self) -> u32 {
        self.0.prec()
    }
    fn from_f64(v: f64, bits: u32) -> Self {
        BigFloat(Float::with_val(bits, v))
    }
    fn from_ratio(p: i64, q: i64, bits: u32) -> Self {
        let n = Float::with_val(bits, p);
        BigFloat(n / q)
    }
    fn from_bigint(n: &BigInt, bits: u32) -> Self {
        // via the limb representation: exact up to rounding at `bits`
        let (sign, digits) = n.to_u64_digits();
        let mut f = Float::with_val(bits, 0);
        for (i, d) in digits.iter().enumerate() {
            let limb = Float::with_val(bits, *d) << (64 * i as i32);
            f += limb;
        }
        if sign == num_bigint::Sign::Minus {
            f = -f;
        }
        BigFloat(f)
    }
    fn parse(s: &str, bits: u32) -> Result<Self> {
        let p = Float::parse(s.trim()).map_err(|e| Error::Usage(format!("bad number {s:?}: {e}")))?;
        Ok(BigFloat(Float::with_val(bits, p)))
    }
    fn pi(bits: u32) -> Self {
        BigFloat(Float::with_val(bits, Constant::Pi))
    }
    fn ln2(bits: u32) -> Self {
        BigFloat(Float::with_val(bits, Constant::Log2))
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn abs(&self) -> Self {
        BigFloat(self.0.clone().abs())
    }
    fn sqrt(&self) -> Self {
        BigFloat(self.0.clone().sqrt())
    }
    fn exp(&self) -> Self {
        BigFloat(self.0.clone().exp())
    }
    fn ln(&self) -> Self {
        BigFloat(self.0.clone().ln())
    }
    fn sin(&self) -> Self {
        BigFloat(self.0.clone().sin())
    }
    fn cos(&self) -> Self {
        BigFloat(self.0.clone().cos())
    }
    fn sinh(&self) -> Self {
        BigFloat(self.0.clone().sinh())
    }
    fn cosh(&self) -> Self {
        BigFloat(self.0.clone().cosh())
    }
    fn atan2(&self, x: &Self) -> Self {
        let p = self.0.prec().max(x.0.prec());
        BigFloat(Float::with_val(p, &self.0).atan2(&x.0))
    }
    fn powf(&self, e: &Self) -> Self {
        let p = self.0.prec().max(e.0.prec());
        BigFloat(Float::with_val(p, (&self.0).pow(&e.0)))
    }
    fn powi(&self, n: i32) -> Self {
        BigFloat(Float::with_val(self.0.prec(), (&self.0).pow(n)))
    }
    fn mul_pow2(&self, e: i32) -> Self {
        BigFloat(self.0.clone() << e)
    }
    fn to_decimal(&self, digits: usize) -> String {
        sci_to_plain(&self.0.to_string_radix(10, Some(digits.max(1))))
    }
}

impl Real for f64 {
    fn bits(&self) -> u32 {
        53
    }
    fn from_f64(v: f64, _: u32) -> Self {
        v
    }
    fn from_ratio(p: i64, q: i64, _: u32) -> Self {
        p as f64 / q as f64
    }
    fn from_bigint(n: &BigInt, _: u32) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }
    fn parse(s: &str, _: u32) -> Result<Self> {
        s.trim().parse().map_err(|e| Error::Usage(format!("bad number {s:?}: {e}")))
    }
    fn pi(_: u32) -> Self {
        std::f64::consts::PI
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn sinh(&self) -> Self {
        f64::sinh(*self)
    }
    fn cosh(&self) -> Self {
        f64::cosh(*self)
    }
    fn atan2(&self, x: &Self) -> Self {
        f64::atan2(*self, *x)
    }
    fn powf(&self, e: &Self) -> Self {
        f64::powf(*self, *e)
    }
    fn powi(&self, n: i32) -> Self {
        f64::powi(*self, n)
    }
    fn mul_pow2(&self, e: i32) -> Self {
        self * 2f64.powi(e)
    }
    fn to_decimal(&self, digits: usize) -> String {
        sci_to_plain(&format!("{:.*e}", digits.max(1) - 1, self))
    }
}

/// Turn `d.ddde±x` (MPFR or Rust style) into positional notation when the
/// exponent is moderate; otherwise keep scientific form with `e`.
fn sci_to_plain(s: &str) -> String {
    let (mant, exp) = match s.find(['e', '@']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().unwrap_or(0)),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant),
    };
    if mant.chars().any(|c| !(c.is_ascii_digit() || c == '.')) {
        return s.to_string(); // inf / nan
    }
    let (int, frac) = match mant.find('.') {
        Some(i) => (&mant[..i], &mant[i + 1..]),
        None => (mant, ""),
    };
    let digits: String = format!("{int}{frac}");
    let point = int.len() as i64 + exp;
    let sign = if neg { "-" } else { "" };
    if point < -20 || (point > 21 && point as usize > digits.len()) {
        let first = &digits[..1];
        let rest = &digits[1..];
        return format!("{sign}{first}.{rest}e{}", point - 1);
    }
    if point <= 0 {
        format!("{sign}0.{}{}", "0".repeat((-point) as usize), digits)
    } else if point as usize >= digits.len() {
        format!("{sign}{}{}", digits, "0".repeat(point as usize - digits.len()))
    } else {
        let (a, b) = digits.split_at(point as usize);
        format!("{sign}{a}.{b}")
    }
}

// ---------------------------------------------------------------------------
// complex helpers

pub fn cx<R: Real>(re: R, im: R) -> Complex<R> {
    Complex::new(re, im)
}

/// Embed a real value.
pub fn cre<R: Real>(re: R) -> Complex<R> {
    let im = re.zero_like();
    Complex::new(re, im)
}

pub fn cabs<R: Real>(z: &Complex<R>) -> R {
    (z.re.clone() * &z.re + z.im.clone() * &z.im).sqrt()
}

pub fn cabs_f64<R: Real>(z: &Complex<R>) -> f64 {
    z.re.to_f64().hypot(z.im.to_f64())
}

pub fn carg<R: Real>(z: &Complex<R>) -> R {
    z.im.atan2(&z.re)
}

pub fn cexp<R: Real>(z: &Complex<R>) -> Complex<R> {
    let m = z.re.exp();
    Complex::new(m.clone() * &z.im.cos(), m * &z.im.sin())
}

/// Principal logarithm.
pub fn cln<R: Real>(z: &Complex<R>) -> Complex<R> {
    Complex::new(cabs(z).ln(), carg(z))
}

pub fn csin<R: Real>(z: &Complex<R>) -> Complex<R> {
    Complex::new(z.re.sin() * &z.im.cosh(), z.re.cos() * &z.im.sinh())
}

pub fn ccos<R: Real>(z: &Complex<R>) -> Complex<R> {
    Complex::new(z.re.cos() * &z.im.cosh(), -(z.re.sin() * &z.im.sinh()))
}

/// Principal power z^w.
pub fn cpow<R: Real>(z: &Complex<R>, w: &Complex<R>) -> Complex<R> {
    if z.re.is_zero() && z.im.is_zero() {
        return z.clone();
    }
    cexp(&(cln(z) * w.clone()))
}

/// Integer power by repeated squaring.
pub fn cpowi<R: Real>(z: &Complex<R>, n: i64) -> Complex<R> {
    let one = cre(z.re.from_i64_like(1));
    if n < 0 {
        return one / cpowi(z, -n);
    }
    let mut acc = one;
    let mut base = z.clone();
    let mut e = n as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base.clone();
        }
        e >>= 1;
        if e > 0 {
            base = base.clone() * base;
        }
    }
    acc
}

/// Compare two reals that may be NaN; NaN sorts last.
pub fn total_cmp<R: Real>(a: &R, b: &R) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Greater)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ops_take_max_precision() {
        let a = BigFloat::with_bits(200, 1.0);
        let b = BigFloat::one();
        let s = &b + &a;
        assert_eq!(s.prec(), 200);
        let mut z = BigFloat::zero();
        z += &a;
        assert_eq!(z.prec(), 200);
    }

    #[test]
    fn third_to_sixty_digits() {
        let bits = Precision::new(60).bits();
        let x = BigFloat::from_ratio(1, 3, bits);
        let s = x.to_decimal(60);
        assert!(s.starts_with("0.333333333333333333333333333333333333333333333333333333333"), "{s}");
    }

    #[test]
    fn bigint_round_trip() {
        let n: BigInt = "123456789012345678901234567890123456789".parse().unwrap();
        let f = BigFloat::from_bigint(&n, 256);
        assert_eq!(f.to_decimal(39), "123456789012345678901234567890123456789");
        let m = BigFloat::from_bigint(&-n, 256);
        assert_eq!(m.to_decimal(5), "-1.2346e38");
    }

    #[test]
    fn plain_rendering() {
        assert_eq!(sci_to_plain("1.25e-3"), "0.00125");
        assert_eq!(sci_to_plain("-1.25e2"), "-125");
        assert_eq!(sci_to_plain("1.5e0"), "1.5");
        assert_eq!(0.1f64.to_decimal(3), "0.100");
    }

    #[test]
    fn complex_elementary() {
        let bits = 200;
        let z = cx(BigFloat::from_f64(0.3, bits), BigFloat::from_f64(-1.7, bits));
        let back = cexp(&cln(&z));
        assert!(cabs_f64(&(back - z.clone())) < 1e-55);
        // sin^2 + cos^2 = 1
        let s = csin(&z);
        let c = ccos(&z);
        let one = s.clone() * s + c.clone() * c;
        assert!((one.re.to_f64() - 1.0).abs() < 1e-50 && one.im.to_f64().abs() < 1e-50);
        let p = cpowi(&z, 5);
        let q = cpow(&z, &cre(BigFloat::from_f64(5.0, bits)));
        assert!(cabs_f64(&(p - q)) < 1e-50);
    }
}
