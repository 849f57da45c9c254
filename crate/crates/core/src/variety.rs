//! The disturbance `zeta` of each variety, with `T(z) = zeta(z) exp(T(z))`.
//!
//! `zeta(z) = c z^a exp(sigma (1 - z)/2 + sum_{i=2}^{N} eps_i T(z^i)/i)`.
//! The exponent is assembled from exact counts and only the exponential is
//! taken in floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::counts::{CountSequence, Variety};
use crate::precision::{HpReal, PowerSeries, Precision, SeriesError};

/// Sign attached to `T(z^i)/i` in the exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignRule {
    /// `eps_i = +1`
    Positive,
    /// `eps_i = (-1)^(i-1)`
    Alternating,
}

impl SignRule {
    pub fn sign(self, i: usize) -> i64 {
        match self {
            SignRule::Positive => 1,
            SignRule::Alternating if i % 2 == 0 => -1,
            SignRule::Alternating => 1,
        }
    }
}

/// Data describing one variety's `zeta`.
#[derive(Clone, Debug, PartialEq)]
pub struct VarietySpec {
    pub name: String,
    /// Which count sequence feeds `T` inside the exponent.
    pub variety: Variety,
    pub c: BigRational,
    /// Power of `z` in front (0 or 1).
    pub a: usize,
    /// Coefficient of `(1 - z)/2` in the exponent.
    pub sigma: i64,
    pub signs: SignRule,
    /// `Some(s)` when the equation holds for `T~ = T - s (1 - z)` rather
    /// than for `T`; the expansion of `T` is recovered by adding
    /// `s (1 - rho)` to `t_0` and `s rho` to `t_2`.
    pub post_shift: Option<BigRational>,
}

impl VarietySpec {
    pub fn polya() -> Self {
        VarietySpec {
            name: "polya".into(),
            variety: Variety::Polya,
            c: BigRational::one(),
            a: 1,
            sigma: 0,
            signs: SignRule::Positive,
            post_shift: None,
        }
    }

    pub fn identity() -> Self {
        VarietySpec {
            name: "identity".into(),
            variety: Variety::Identity,
            signs: SignRule::Alternating,
            ..VarietySpec::polya()
        }
    }

    /// `T~ = T + (1 - z)/2`, `zeta = exp(-(1 - z)/2 + sum_{i>=2} T(z^i)/i)/2`.
    pub fn hierarchy() -> Self {
        VarietySpec {
            name: "hierarchy".into(),
            variety: Variety::Hierarchy,
            c: BigRational::new(BigInt::one(), BigInt::from(2)),
            a: 0,
            sigma: -1,
            signs: SignRule::Positive,
            post_shift: Some(BigRational::new(BigInt::from(-1), BigInt::from(2))),
        }
    }

    /// The opposite sign convention, `T~ = T - (1 - z)/2` with `sigma = +1`.
    /// It does not satisfy the hierarchy equation; kept for comparison only.
    pub fn hierarchy_as_printed() -> Self {
        VarietySpec {
            name: "hierarchy-as-printed".into(),
            sigma: 1,
            post_shift: Some(BigRational::new(BigInt::one(), BigInt::from(2))),
            ..VarietySpec::hierarchy()
        }
    }

    pub fn for_variety(variety: Variety) -> Self {
        match variety {
            Variety::Polya => VarietySpec::polya(),
            Variety::Identity => VarietySpec::identity(),
            Variety::Hierarchy => VarietySpec::hierarchy(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VarietyError {
    #[error("counts cover indices 0..={available}, truncation order {needed} needs more")]
    InsufficientCounts { needed: usize, available: usize },
    #[error("evaluation point must lie in (0, 1), got {0}")]
    PointOutOfRange(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

fn check_counts(counts: &CountSequence, n: usize) -> Result<(), VarietyError> {
    if counts.is_empty() || counts.n_max() < n {
        return Err(VarietyError::InsufficientCounts {
            needed: n,
            available: if counts.is_empty() { 0 } else { counts.n_max() },
        });
    }
    Ok(())
}

/// The non-constant part of the exponent, exactly:
/// `-sigma z/2 + sum_{i=2}^{N} eps_i T(z^i)/i`, truncated at order `n`.
pub fn zeta_exponent_series(
    spec: &VarietySpec,
    counts: &CountSequence,
    n: usize,
) -> Result<PowerSeries<BigRational>, VarietyError> {
    check_counts(counts, n)?;
    let mut coeffs = vec![BigRational::zero(); n + 1];
    if n >= 1 && spec.sigma != 0 {
        coeffs[1] = BigRational::new(BigInt::from(-spec.sigma), BigInt::from(2));
    }
    for i in 2..=n {
        let eps = spec.signs.sign(i);
        for (m, t) in counts.values().iter().enumerate().take(n / i + 1).skip(1) {
            if t.is_zero() {
                continue;
            }
            coeffs[m * i] += BigRational::new(t * eps, BigInt::from(i));
        }
    }
    Ok(PowerSeries::new(coeffs))
}

/// `zeta` truncated at order `n`, with coefficients at precision `p`.
pub fn zeta_series(
    spec: &VarietySpec,
    counts: &CountSequence,
    n: usize,
    p: Precision,
) -> Result<PowerSeries<HpReal>, VarietyError> {
    let exponent = zeta_exponent_series(spec, counts, n)?;
    let mut coeffs = exponent.to_hp(p).into_coeffs();
    coeffs[0] = HpReal::from_rational(&BigRational::new(BigInt::from(spec.sigma), BigInt::from(2)), p);
    let expd = PowerSeries::new(coeffs).exp()?;
    let scaled = expd.scale(&HpReal::from_rational(&spec.c, p));
    Ok(scaled.shift_up(spec.a))
}

/// A built `zeta` series together with its half-order shadow.
#[derive(Clone, Debug)]
pub struct ZetaFunction {
    spec: VarietySpec,
    series: PowerSeries<HpReal>,
    target: Precision,
}

impl ZetaFunction {
    /// Builds `zeta` to order `n` at `digits + GUARD_DIGITS` working digits.
    pub fn new(spec: &VarietySpec, counts: &CountSequence, n: usize, digits: Precision) -> Result<Self, VarietyError> {
        let series = zeta_series(spec, counts, n, digits.with_guard())?;
        Ok(ZetaFunction { spec: spec.clone(), series, target: digits })
    }

    pub fn spec(&self) -> &VarietySpec {
        &self.spec
    }

    pub fn series(&self) -> &PowerSeries<HpReal> {
        &self.series
    }

    pub fn n_used(&self) -> usize {
        self.series.order()
    }

    pub fn target(&self) -> Precision {
        self.target
    }

    pub fn working(&self) -> Precision {
        self.target.with_guard()
    }

    /// The same function truncated at `floor(N/2)`.
    pub fn shadow(&self) -> ZetaFunction {
        ZetaFunction { spec: self.spec.clone(), series: self.series.truncate(self.n_used() / 2), target: self.target }
    }

    pub fn eval(&self, x: &HpReal, r: usize) -> Result<HpReal, VarietyError> {
        Ok(self.series.eval_deriv(&x.with_precision(self.working()), r)?.value)
    }

    /// `zeta^(0)(x) ..= zeta^(r_max)(x)`, each also computed from the shadow.
    pub fn derivatives(&self, x: &HpReal, r_max: usize) -> Result<ZetaDerivatives, VarietyError> {
        self.derivatives_at(x, x, r_max)
    }

    /// As [`Self::derivatives`], with the shadow evaluated at its own point
    /// (typically the shadow's own root).
    pub fn derivatives_at(&self, x: &HpReal, x_shadow: &HpReal, r_max: usize) -> Result<ZetaDerivatives, VarietyError> {
        for point in [x, x_shadow] {
            if !(point.is_positive() && point.to_f64() < 1.0) {
                return Err(VarietyError::PointOutOfRange(point.to_sci_string(10)));
            }
        }
        let shadow = self.shadow();
        let x = x.with_precision(self.working());
        let x_shadow = x_shadow.with_precision(self.working());
        let mut values = Vec::with_capacity(r_max + 1);
        let mut shadow_values = Vec::with_capacity(r_max + 1);
        let mut certified_digits = Vec::with_capacity(r_max + 1);
        let mut truncation_adequate = Vec::with_capacity(r_max + 1);
        for r in 0..=r_max {
            let full = self.series.eval_deriv(&x, r)?;
            let half = shadow.series.eval_deriv(&x_shadow, r)?;
            let ok = full.is_truncation_adequate(self.target);
            if !ok {
                log::warn!("zeta^({r}) tail {} exceeds the target precision", full.tail.to_sci_string(3));
            }
            certified_digits.push(full.value.agreement_digits(&half.value).min(self.target.get()));
            truncation_adequate.push(ok);
            values.push(full.value);
            shadow_values.push(half.value);
        }
        Ok(ZetaDerivatives { values, shadow: shadow_values, certified_digits, truncation_adequate, n_used: self.n_used() })
    }
}

/// Derivatives of `zeta` at one point.
#[derive(Clone, Debug)]
pub struct ZetaDerivatives {
    /// `values[r] = zeta^(r)(x)` from the order-`N` series.
    pub values: Vec<HpReal>,
    /// The same from the order-`floor(N/2)` series.
    pub shadow: Vec<HpReal>,
    pub certified_digits: Vec<u32>,
    pub truncation_adequate: Vec<bool>,
    pub n_used: usize,
}

impl ZetaDerivatives {
    pub fn r_max(&self) -> usize {
        self.values.len() - 1
    }
}

/// `zeta^(0)(x) ..= zeta^(r_max)(x)` from a fresh order-`n` series.
pub fn zeta_derivatives(
    spec: &VarietySpec,
    counts: &CountSequence,
    x: &HpReal,
    r_max: usize,
    n: usize,
    digits: Precision,
) -> Result<ZetaDerivatives, VarietyError> {
    ZetaFunction::new(spec, counts, n, digits)?.derivatives(x, r_max)
}
