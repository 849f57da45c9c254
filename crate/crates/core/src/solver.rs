//! Dominant singularity: the root of `zeta(rho) = 1/e`.
//!
//! Bisection on a sign change brings the root to about ten digits, Newton
//! steps with `zeta'` finish it. The whole solve is repeated on the
//! half-order shadow series and the agreement gives the certified digits.

use crate::counts::CountSequence;
use crate::precision::{HpReal, Precision};
use crate::variety::{VarietyError, VarietySpec, ZetaFunction};

/// Smallest truncation order accepted by [`solve_rho`].
pub const MIN_TERMS: usize = 50;

#[derive(Clone, Debug)]
pub struct SolverOptions {
    pub bracket: (f64, f64),
    /// Digits reached by bisection before switching to Newton.
    pub bisection_digits: u32,
    pub max_newton_steps: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { bracket: (0.05, 0.6), bisection_digits: 10, max_newton_steps: 60 }
    }
}

#[derive(Clone, Debug)]
pub struct RhoResult {
    /// At working precision; digits past `certified_digits` are not meaningful.
    pub rho: HpReal,
    /// Root of the half-order shadow series.
    pub shadow_rho: HpReal,
    pub certified_digits: u32,
    pub n_used: usize,
    /// Bisection plus Newton steps of the order-`N` solve.
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SolverError {
    #[error("no sign change of zeta - 1/e on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoBracket { lo: f64, hi: f64, f_lo: String, f_hi: String },
    #[error("Newton iteration stalled after {iterations} steps (last step {last_step}, f = {residual})")]
    Stalled { iterations: usize, last_step: String, residual: String },
    #[error("truncation order {0} is below the minimum {MIN_TERMS}")]
    TooFewTerms(usize),
    #[error(transparent)]
    Variety(#[from] VarietyError),
}

/// Solves `zeta(rho) = 1/e` with `zeta` truncated at order `n`, aiming for `digits`.
pub fn solve_rho(
    spec: &VarietySpec,
    counts: &CountSequence,
    n: usize,
    digits: Precision,
) -> Result<RhoResult, SolverError> {
    if n < MIN_TERMS {
        return Err(SolverError::TooFewTerms(n));
    }
    let zeta = ZetaFunction::new(spec, counts, n, digits)?;
    solve_rho_for(&zeta, &SolverOptions::default())
}

/// Solves on an already built `zeta` and on its shadow.
pub fn solve_rho_for(zeta: &ZetaFunction, options: &SolverOptions) -> Result<RhoResult, SolverError> {
    let (rho, iterations) = find_root(zeta, options)?;
    let (shadow_rho, _) = find_root(&zeta.shadow(), options)?;
    let certified_digits = rho.agreement_digits(&shadow_rho).min(zeta.target().get());
    Ok(RhoResult { rho, shadow_rho, certified_digits, n_used: zeta.n_used(), iterations })
}

fn find_root(zeta: &ZetaFunction, options: &SolverOptions) -> Result<(HpReal, usize), SolverError> {
    let p = zeta.working();
    let inv_e = HpReal::one(p) / HpReal::e(p);
    let f = |x: &HpReal| -> Result<HpReal, SolverError> { Ok(zeta.eval(x, 0)? - &inv_e) };

    let mut lo = HpReal::from_f64(options.bracket.0, p);
    let mut hi = HpReal::from_f64(options.bracket.1, p);
    let f_lo = f(&lo)?;
    let f_hi = f(&hi)?;
    if f_lo.is_negative() == f_hi.is_negative() || f_lo.is_zero() || f_hi.is_zero() {
        return Err(SolverError::NoBracket {
            lo: options.bracket.0,
            hi: options.bracket.1,
            f_lo: f_lo.to_sci_string(6),
            f_hi: f_hi.to_sci_string(6),
        });
    }
    let lo_negative = f_lo.is_negative();
    let width_target = HpReal::from_i64(10, p).powi(-i64::from(options.bisection_digits));
    let mut iterations = 0;
    while (&hi - &lo) > width_target {
        let mid = (&lo + &hi).div_i64(2);
        if f(&mid)?.is_negative() == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }

    let tolerance = HpReal::from_i64(10, p).powi(-(i64::from(zeta.target().get()) + 5));
    let mut x = (&lo + &hi).div_i64(2);
    let mut previous_step: Option<HpReal> = None;
    for _ in 0..options.max_newton_steps {
        let value = f(&x)?;
        let slope = zeta.eval(&x, 1)?;
        let step = &value / &slope;
        x = &x - &step;
        iterations += 1;
        let size = step.abs();
        if size < tolerance || value.is_zero() {
            return Ok((x, iterations));
        }
        // Past its first few steps Newton must contract; a growing step means
        // the truncated series no longer behaves like zeta near the root.
        if let Some(prev) = &previous_step {
            if iterations > 3 && size > *prev {
                return Err(stalled(iterations, &size, &f(&x)?));
            }
        }
        previous_step = Some(size);
    }
    let residual = f(&x)?;
    Err(stalled(iterations, previous_step.as_ref().unwrap_or(&residual), &residual))
}

fn stalled(iterations: usize, step: &HpReal, residual: &HpReal) -> SolverError {
    SolverError::Stalled { iterations, last_step: step.to_sci_string(6), residual: residual.to_sci_string(6) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counts::{counts, Variety};

    fn solve(variety: Variety, n: usize, d: u32) -> RhoResult {
        solve_rho(&VarietySpec::for_variety(variety), &counts(variety, n), n, Precision::digits(d)).unwrap()
    }

    #[test]
    fn polya_rho_leading_digits() {
        let r = solve(Variety::Polya, 100, 30);
        assert!((r.rho.to_f64() - 0.338_321_856_899_207_7).abs() < 1e-15);
        assert!(r.certified_digits >= 10);
        assert_eq!(r.n_used, 100);
    }

    #[test]
    fn ordering_of_singularities() {
        let h = solve(Variety::Hierarchy, 80, 30).rho.to_f64();
        let p = solve(Variety::Polya, 80, 30).rho.to_f64();
        let i = solve(Variety::Identity, 80, 30).rho.to_f64();
        assert!(h < p && p < i);
        assert!(p <= (-1.0f64).exp());
    }

    #[test]
    fn too_few_terms() {
        let err = solve_rho(&VarietySpec::polya(), &counts(Variety::Polya, 40), 40, Precision::digits(30)).unwrap_err();
        assert_eq!(err, SolverError::TooFewTerms(40));
    }

    #[test]
    fn as_printed_hierarchy_has_no_bracket() {
        let err = solve_rho(
            &VarietySpec::hierarchy_as_printed(),
            &counts(Variety::Hierarchy, 60),
            60,
            Precision::digits(30),
        )
        .unwrap_err();
        assert!(matches!(err, SolverError::NoBracket { .. }), "{err}");
    }
}
