//! Arbitrary-precision reals with an explicit decimal precision.
//!
//! [`HpReal`] wraps an `astro_float::BigFloat` together with the
//! [`Precision`] it was computed at. Every constructor takes the precision
//! explicitly; binary operations run at the smaller of the two operand
//! precisions. The only thread-local state is the constant cache used by
//! `astro-float` for `exp`, `ln` and `pi`, which never influences results.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

const RM: RoundingMode = RoundingMode::ToEven;
const LOG2_10: f64 = std::f64::consts::LOG2_10;

thread_local! {
    static CONSTS: RefCell<Consts> =
        RefCell::new(Consts::new().expect("failed to allocate astro-float constant cache"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Working precision measured in decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u32);

impl Precision {
    /// Guard digits added on top of a reported precision for internal work.
    pub const GUARD_DIGITS: u32 = 15;

    pub const fn digits(d: u32) -> Self {
        Precision(d)
    }

    pub const fn get(self) -> u32 {
        self.0
    }

    /// Mantissa size in bits, with a few spare bits beyond `digits * log2(10)`.
    pub fn bits(self) -> usize {
        (f64::from(self.0) * LOG2_10).ceil() as usize + 16
    }

    /// The precision used for internal computations when `self` is the target.
    pub const fn with_guard(self) -> Self {
        Precision(self.0 + Self::GUARD_DIGITS)
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} digits", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{0}` as a decimal real")]
pub struct ParseHpRealError(pub String);

/// An arbitrary-precision real number.
#[derive(Clone)]
pub struct HpReal {
    value: BigFloat,
    precision: Precision,
}

/// Rounded decimal rendering of a value `d1.d2...dk * 10^exp10`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecimalDigits {
    pub negative: bool,
    pub digits: String,
    pub exp10: i64,
}

impl HpReal {
    fn wrap(value: BigFloat, precision: Precision) -> Self {
        HpReal { value, precision }
    }

    pub fn zero(p: Precision) -> Self {
        Self::wrap(BigFloat::from_word(0, p.bits()), p)
    }

    pub fn one(p: Precision) -> Self {
        Self::from_i64(1, p)
    }

    pub fn from_i64(v: i64, p: Precision) -> Self {
        Self::wrap(BigFloat::from_i64(v, p.bits()), p)
    }

    pub fn from_f64(v: f64, p: Precision) -> Self {
        Self::wrap(BigFloat::from_f64(v, p.bits()), p)
    }

    pub fn from_bigint(v: &BigInt, p: Precision) -> Self {
        if let Ok(small) = i64::try_from(v) {
            return Self::from_i64(small, p);
        }
        Self::parse_unchecked(&v.to_string(), p)
    }

    pub fn from_rational(v: &BigRational, p: Precision) -> Self {
        let num = Self::from_bigint(v.numer(), p);
        if v.denom() == &BigInt::from(1) {
            return num;
        }
        num / Self::from_bigint(v.denom(), p)
    }

    fn parse_unchecked(s: &str, p: Precision) -> Self {
        let value = with_consts(|cc| BigFloat::parse(s, Radix::Dec, p.bits(), RM, cc));
        Self::wrap(value, p)
    }

    /// Parses a decimal literal such as `-1.25e-3` or `0.338`.
    pub fn parse(s: &str, p: Precision) -> Result<Self, ParseHpRealError> {
        let trimmed = s.trim();
        let valid = {
            let body = trimmed.strip_prefix(['-', '+']).unwrap_or(trimmed);
            let (mantissa, exponent) = match body.find(['e', 'E']) {
                Some(idx) => (&body[..idx], Some(&body[idx + 1..])),
                None => (body, None),
            };
            let mantissa_ok = !mantissa.is_empty()
                && mantissa.chars().filter(|c| *c == '.').count() <= 1
                && mantissa.chars().any(|c| c.is_ascii_digit())
                && mantissa.chars().all(|c| c.is_ascii_digit() || c == '.');
            let exponent_ok = exponent.is_none_or(|e| {
                let e = e.strip_prefix(['-', '+']).unwrap_or(e);
                !e.is_empty() && e.chars().all(|c| c.is_ascii_digit())
            });
            mantissa_ok && exponent_ok
        };
        if !valid {
            return Err(ParseHpRealError(s.to_string()));
        }
        let parsed = Self::parse_unchecked(trimmed, p);
        if parsed.value.is_nan() {
            return Err(ParseHpRealError(s.to_string()));
        }
        Ok(parsed)
    }

    pub fn pi(p: Precision) -> Self {
        Self::wrap(with_consts(|cc| cc.pi(p.bits(), RM)), p)
    }

    /// Euler's number `e`.
    pub fn e(p: Precision) -> Self {
        Self::wrap(with_consts(|cc| cc.e(p.bits(), RM)), p)
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    /// Re-rounds to another precision.
    pub fn with_precision(&self, p: Precision) -> Self {
        let mut value = self.value.clone();
        // set_precision only fails on allocation failure.
        value.set_precision(p.bits(), RM).expect("astro-float precision change");
        Self::wrap(value, p)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.value.is_nan() && !self.value.is_inf()
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.value.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.value.is_positive()
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn exp(&self) -> Self {
        let p = self.precision;
        Self::wrap(with_consts(|cc| self.value.exp(p.bits(), RM, cc)), p)
    }

    /// Natural logarithm; NaN for non-positive input.
    pub fn ln(&self) -> Self {
        let p = self.precision;
        Self::wrap(with_consts(|cc| self.value.ln(p.bits(), RM, cc)), p)
    }

    /// Square root; NaN for negative input.
    pub fn sqrt(&self) -> Self {
        let p = self.precision;
        Self::wrap(self.value.sqrt(p.bits(), RM), p)
    }

    pub fn powi(&self, n: i64) -> Self {
        let p = self.precision;
        if n == 0 {
            return Self::one(p);
        }
        let magnitude = usize::try_from(n.unsigned_abs()).expect("exponent fits in usize");
        let pos = Self::wrap(self.value.powi(magnitude, p.bits(), RM), p);
        if n < 0 {
            Self::one(p) / pos
        } else {
            pos
        }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        self * &Self::from_i64(k, self.precision)
    }

    pub fn div_i64(&self, k: i64) -> Self {
        self / &Self::from_i64(k, self.precision)
    }

    /// Lossy conversion, for diagnostics and tolerances.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        if !self.is_finite() {
            return if self.value.is_nan() {
                f64::NAN
            } else if self.value.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            };
        }
        let d = self.decimal_digits(20);
        format!("{}{}.{}e{}", if d.negative { "-" } else { "" }, &d.digits[..1], &d.digits[1..], d.exp10)
            .parse()
            .unwrap_or(f64::NAN)
    }

    /// Rounds to `sig` significant decimal digits (half away from zero).
    pub fn decimal_digits(&self, sig: usize) -> DecimalDigits {
        let sig = sig.max(1);
        if self.is_zero() {
            return DecimalDigits { negative: false, digits: "0".repeat(sig), exp10: 0 };
        }
        let raw = with_consts(|cc| self.value.format(Radix::Dec, RM, cc))
            .expect("astro-float decimal formatting");
        let (negative, body) = match raw.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, raw.as_str()),
        };
        let (mantissa, exp_part) = body.split_once('e').unwrap_or((body, "0"));
        let mut exp10: i64 = exp_part.parse().expect("astro-float exponent");
        let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        // Normalize to d.ddd form.
        let mut all: String = format!("{int_part}{frac_part}");
        exp10 += int_part.len() as i64 - 1;
        let leading_zeros = all.chars().take_while(|c| *c == '0').count();
        all.drain(..leading_zeros);
        exp10 -= leading_zeros as i64;
        let mut digits: Vec<u8> = all.bytes().map(|b| b - b'0').collect();
        if digits.len() < sig {
            digits.resize(sig, 0);
        } else if digits.len() > sig {
            let round_up = digits[sig] >= 5;
            digits.truncate(sig);
            if round_up {
                let mut i = sig;
                loop {
                    if i == 0 {
                        digits.insert(0, 1);
                        digits.truncate(sig);
                        exp10 += 1;
                        break;
                    }
                    i -= 1;
                    if digits[i] == 9 {
                        digits[i] = 0;
                    } else {
                        digits[i] += 1;
                        break;
                    }
                }
            }
        }
        DecimalDigits {
            negative,
            digits: digits.iter().map(|d| char::from(b'0' + d)).collect(),
            exp10,
        }
    }

    /// Scientific notation with `sig` significant digits, e.g. `-1.5594900e0`.
    pub fn to_sci_string(&self, sig: usize) -> String {
        let d = self.decimal_digits(sig);
        let sign = if d.negative { "-" } else { "" };
        if d.digits.len() == 1 {
            format!("{sign}{}e{}", d.digits, d.exp10)
        } else {
            format!("{sign}{}.{}e{}", &d.digits[..1], &d.digits[1..], d.exp10)
        }
    }

    /// Positional notation for moderate magnitudes, scientific from `1e6` on.
    /// This mirrors the layout of published coefficient tables.
    pub fn to_table_string(&self, sig: usize) -> String {
        let d = self.decimal_digits(sig);
        if d.exp10 >= 6 {
            return self.to_sci_string(sig);
        }
        let sign = if d.negative { "-" } else { "" };
        if d.exp10 < 0 {
            let zeros = "0".repeat((-d.exp10 - 1) as usize);
            format!("{sign}0.{zeros}{}", d.digits)
        } else {
            let split = (d.exp10 + 1) as usize;
            if split >= d.digits.len() {
                format!("{sign}{}{}", d.digits, "0".repeat(split - d.digits.len()))
            } else {
                format!("{sign}{}.{}", &d.digits[..split], &d.digits[split..])
            }
        }
    }

    /// Number of leading decimal digits on which `self` and `other` agree,
    /// measured as `-log10(|a - b| / max(|a|, |b|))`, capped at the precision.
    pub fn agreement_digits(&self, other: &HpReal) -> u32 {
        let cap = self.precision.get().min(other.precision.get());
        let diff = (self - other).abs();
        if diff.is_zero() {
            return cap;
        }
        let scale = if self.abs() > other.abs() { self.abs() } else { other.abs() };
        if scale.is_zero() {
            return 0;
        }
        let rel = (&diff / &scale).to_f64();
        if rel >= 1.0 || rel.is_nan() {
            return 0;
        }
        let digits = (-rel.log10()).floor();
        if digits.is_finite() {
            (digits as u32).min(cap)
        } else {
            cap
        }
    }

    fn binary(&self, other: &HpReal, op: impl FnOnce(&BigFloat, &BigFloat, usize) -> BigFloat) -> HpReal {
        let p = self.precision.min(other.precision);
        Self::wrap(op(&self.value, &other.value, p.bits()), p)
    }
}

impl fmt::Debug for HpReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HpReal({}, {})", self.to_sci_string(25), self.precision)
    }
}

impl fmt::Display for HpReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or(self.precision.get() as usize);
        f.write_str(&self.to_sci_string(sig))
    }
}

impl PartialEq for HpReal {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for HpReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.cmp(&other.value).map(|c| c.cmp(&0))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait<&HpReal> for &HpReal {
            type Output = HpReal;
            fn $method(self, rhs: &HpReal) -> HpReal {
                self.binary(rhs, |a, b, p| a.$inner(b, p, RM))
            }
        }
        impl $trait<HpReal> for HpReal {
            type Output = HpReal;
            fn $method(self, rhs: HpReal) -> HpReal {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&HpReal> for HpReal {
            type Output = HpReal;
            fn $method(self, rhs: &HpReal) -> HpReal {
                (&self).$method(rhs)
            }
        }
        impl $trait<HpReal> for &HpReal {
            type Output = HpReal;
            fn $method(self, rhs: HpReal) -> HpReal {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);
forward_binop!(Div, div, div);

impl Neg for &HpReal {
    type Output = HpReal;
    fn neg(self) -> HpReal {
        HpReal::wrap(self.value.clone().neg(), self.precision)
    }
}

impl Neg for HpReal {
    type Output = HpReal;
    fn neg(self) -> HpReal {
        -&self
    }
}

/// Parses at the default 50-digit precision; prefer [`HpReal::parse`].
impl FromStr for HpReal {
    type Err = ParseHpRealError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        HpReal::parse(s, Precision::digits(50))
    }
}

/// Exact rational to `HpReal`, used by callers that keep series exact until evaluation.
pub fn rational_to_hp(r: &BigRational, p: Precision) -> HpReal {
    if r.is_zero() {
        return HpReal::zero(p);
    }
    let magnitude = HpReal::from_rational(&r.abs(), p);
    if r.is_negative() {
        -magnitude
    } else {
        magnitude
    }
}
