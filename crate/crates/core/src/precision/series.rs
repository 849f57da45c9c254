//! Truncated power series over exact rationals or [`HpReal`]s.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::hpreal::{rational_to_hp, HpReal, Precision};

/// Coefficient ring for [`PowerSeries`].
///
/// Constants are produced "like" an existing value so that `HpReal`
/// coefficients inherit the precision of the series they belong to.
pub trait Scalar: Clone + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn int_like(&self, v: i64) -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn div_int(&self, k: i64) -> Self;
    fn is_zero_value(&self) -> bool;
    /// `exp(self)` when it is representable in this ring.
    fn try_exp(&self) -> Option<Self>;
    fn to_hp(&self, p: Precision) -> HpReal;

    fn mul_int(&self, k: i64) -> Self {
        self.mul_ref(&self.int_like(k))
    }
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn int_like(&self, v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn div_int(&self, k: i64) -> Self {
        self / BigRational::from_integer(BigInt::from(k))
    }
    fn mul_int(&self, k: i64) -> Self {
        self * BigRational::from_integer(BigInt::from(k))
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn try_exp(&self) -> Option<Self> {
        self.is_zero().then(BigRational::one)
    }
    fn to_hp(&self, p: Precision) -> HpReal {
        rational_to_hp(self, p)
    }
}

impl Scalar for HpReal {
    fn zero_like(&self) -> Self {
        HpReal::zero(self.precision())
    }
    fn int_like(&self, v: i64) -> Self {
        HpReal::from_i64(v, self.precision())
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn div_int(&self, k: i64) -> Self {
        self.div_i64(k)
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn try_exp(&self) -> Option<Self> {
        Some(self.exp())
    }
    fn to_hp(&self, p: Precision) -> HpReal {
        if self.precision() == p {
            self.clone()
        } else {
            self.with_precision(p)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("exp of constant term {0} is not representable in the coefficient ring")]
    ConstantNotExponentiable(String),
    #[error("derivative order {order} exceeds truncation order {truncation}")]
    DerivativeOrderTooHigh { order: usize, truncation: usize },
}

/// A power series `c_0 + c_1 z + ... + c_N z^N + O(z^{N+1})`.
///
/// The truncation order `N` is `coeffs.len() - 1`; nothing beyond it is
/// ever read or produced.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Scalar> PowerSeries<C> {
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a power series needs at least a constant term");
        PowerSeries { coeffs }
    }

    /// The constant series `c` truncated at `order`.
    pub fn constant(c: C, order: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); order + 1];
        coeffs[0] = c;
        PowerSeries { coeffs }
    }

    /// `z` truncated at `order`, with coefficients shaped like `like`.
    pub fn variable(like: &C, order: usize) -> Self {
        let mut coeffs = vec![like.zero_like(); order + 1];
        if order >= 1 {
            coeffs[1] = like.int_like(1);
        }
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<&C> {
        self.coeffs.get(n)
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order());
        PowerSeries { coeffs: self.coeffs[..=keep].to_vec() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|n| self.coeffs[n].add_ref(&other.coeffs[n])).collect();
        PowerSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|n| self.coeffs[n].sub_ref(&other.coeffs[n])).collect();
        PowerSeries { coeffs }
    }

    pub fn scale(&self, k: &C) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|c| c.mul_ref(k)).collect() }
    }

    /// Cauchy product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n).fold(self.coeffs[0].zero_like(), |acc, k| {
                    acc.add_ref(&self.coeffs[k].mul_ref(&other.coeffs[n - k]))
                })
            })
            .collect();
        PowerSeries { coeffs }
    }

    /// Multiplies by `z^shift`, keeping the truncation order.
    pub fn shift_up(&self, shift: usize) -> Self {
        let order = self.order();
        let zero = self.coeffs[0].zero_like();
        let coeffs = (0..=order)
            .map(|n| if n < shift { zero.clone() } else { self.coeffs[n - shift].clone() })
            .collect();
        PowerSeries { coeffs }
    }

    /// Formal exponential, via `E_n = (1/n) sum_{k=1}^n k g_k E_{n-k}`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        let head = self.coeffs[0]
            .try_exp()
            .ok_or_else(|| SeriesError::ConstantNotExponentiable(format!("{:?}", self.coeffs[0])))?;
        let order = self.order();
        let mut out: Vec<C> = Vec::with_capacity(order + 1);
        out.push(head);
        for n in 1..=order {
            let mut acc = self.coeffs[0].zero_like();
            for k in 1..=n {
                if self.coeffs[k].is_zero_value() {
                    continue;
                }
                acc = acc.add_ref(&self.coeffs[k].mul_int(k as i64).mul_ref(&out[n - k]));
            }
            out.push(acc.div_int(n as i64));
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// `f(z^i)`, truncated at the original order.
    ///
    /// # Panics
    /// If `i == 0`.
    pub fn substitute_power(&self, i: usize) -> Self {
        assert!(i >= 1, "substitution power must be positive");
        let order = self.order();
        let mut coeffs = vec![self.coeffs[0].zero_like(); order + 1];
        for (n, c) in self.coeffs.iter().enumerate() {
            let target = n * i;
            if target > order {
                break;
            }
            coeffs[target] = c.clone();
        }
        PowerSeries { coeffs }
    }

    /// Formal derivative; the order drops by one (a constant stays a constant 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return PowerSeries { coeffs: vec![self.coeffs[0].zero_like()] };
        }
        let coeffs = (1..=self.order()).map(|n| self.coeffs[n].mul_int(n as i64)).collect();
        PowerSeries { coeffs }
    }

    pub fn to_hp(&self, p: Precision) -> PowerSeries<HpReal> {
        PowerSeries { coeffs: self.coeffs.iter().map(|c| c.to_hp(p)).collect() }
    }

    /// Evaluates the `r`-th derivative of the truncated series at `x`:
    /// `sum_{n=r}^{N} f_n n!/(n-r)! x^{n-r}`, at the precision of `x`.
    ///
    /// The series is evaluated as the polynomial it is; callers are
    /// responsible for staying inside the radius of the underlying function.
    /// `tail` is the sum of the absolute values of the last five terms.
    pub fn eval_deriv(&self, x: &HpReal, r: usize) -> Result<DerivativeEval, SeriesError> {
        let order = self.order();
        if r > order {
            return Err(SeriesError::DerivativeOrderTooHigh { order: r, truncation: order });
        }
        let p = x.precision();
        // falling = n!/(n-r)!, power = x^{n-r}
        let mut falling = HpReal::one(p);
        for k in 1..=r {
            falling = falling.mul_i64(k as i64);
        }
        let mut power = HpReal::one(p);
        let mut total = HpReal::zero(p);
        let mut terms: Vec<HpReal> = Vec::with_capacity(order - r + 1);
        for n in r..=order {
            if n > r {
                falling = falling.mul_i64(n as i64).div_i64((n - r) as i64);
                power = &power * x;
            }
            let term = &(&self.coeffs[n].to_hp(p) * &falling) * &power;
            total = &total + &term;
            terms.push(term);
        }
        let tail = terms
            .iter()
            .rev()
            .take(DerivativeEval::TAIL_TERMS)
            .fold(HpReal::zero(p), |acc, t| &acc + &t.abs());
        Ok(DerivativeEval { value: total, tail })
    }
}

/// Value of a truncated-series derivative with a crude truncation indicator.
#[derive(Clone, Debug)]
pub struct DerivativeEval {
    pub value: HpReal,
    /// Combined magnitude of the last [`Self::TAIL_TERMS`] accumulated terms.
    pub tail: HpReal,
}

impl DerivativeEval {
    pub const TAIL_TERMS: usize = 5;

    /// False when the tail, relative to the value, exceeds `10^-(digits-10)`:
    /// the truncation order is too small for the requested precision.
    pub fn is_truncation_adequate(&self, target: Precision) -> bool {
        let exponent = i64::from(target.get()) - 10;
        let bound = HpReal::from_i64(10, self.value.precision()).powi(-exponent);
        let scale = if self.value.is_zero() { HpReal::one(self.value.precision()) } else { self.value.abs() };
        self.tail <= &bound * &scale
    }
}

/// Free-function forms of the series operations.
pub fn series_mul<C: Scalar>(f: &PowerSeries<C>, g: &PowerSeries<C>) -> PowerSeries<C> {
    f.mul(g)
}

pub fn series_exp<C: Scalar>(g: &PowerSeries<C>) -> Result<PowerSeries<C>, SeriesError> {
    g.exp()
}

pub fn series_substitute_power<C: Scalar>(f: &PowerSeries<C>, i: usize) -> PowerSeries<C> {
    f.substitute_power(i)
}

pub fn series_eval_deriv<C: Scalar>(
    f: &PowerSeries<C>,
    x: &HpReal,
    r: usize,
) -> Result<DerivativeEval, SeriesError> {
    f.eval_deriv(x, r)
}
