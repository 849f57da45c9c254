//! Puiseux coefficients `t_n` of `T` at `rho`, the coefficients `tau_l` of
//! the asymptotic expansion of `T_n`, and order-`k` estimates of the counts.
//!
//! With `A = 2 e rho zeta'(rho)`, `t_0 = 1`, `t_1 = -sqrt(A)` and for `n >= 2`
//!
//! ```text
//! t_n = -B(n)/n! A^{n/2}
//!       - sum_{l < n, l = n mod 2} (-1)^s rho^{n/2} B(l)/l! (2 e zeta')^{l/2}
//!             sum_{r=1}^{s} binom(l/2, r) zeta'^{-r} S(s, r),      s = (n - l)/2,
//! ```
//!
//! where `S(s, r)` sums `prod_j zeta^(i_j + 1)/(i_j + 1)!` over compositions
//! `(i_1..i_r)` of `s`. Everything is also computed from the half-order
//! shadow of `zeta` and the agreement is reported as certified digits.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::combinatorics::{b_seq, gen_binom, tau_symbolic};
use crate::counts::{counts, CountSequence, Variety};
use crate::precision::{rational_to_hp, HpReal, Precision};
use crate::solver::{solve_rho_for, RhoResult, SolverError, SolverOptions};
use crate::variety::{VarietyError, VarietySpec, ZetaDerivatives, ZetaFunction};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExpansionError {
    #[error("t_{order} needs zeta derivatives up to order {needed}, only {available} available")]
    InsufficientDerivatives { order: usize, needed: usize, available: usize },
    #[error("tau_{order} needs Puiseux coefficients up to t_{needed}, only t_{available} available")]
    InsufficientCoefficients { order: usize, needed: usize, available: usize },
    #[error("order {order} requested, the expansion stops at {available}")]
    OrderTooHigh { order: usize, available: usize },
    #[error("size {size} is beyond the exact counts (up to {available})")]
    SizeBeyondCounts { size: usize, available: usize },
    #[error("sizes must be positive")]
    ZeroSize,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
}

/// Highest `zeta` derivative that `t_k` depends on.
pub fn derivative_order_for(k: usize) -> usize {
    if k <= 1 {
        1
    } else {
        (k - 1) / 2 + 1
    }
}

/// Provenance of a coefficient sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionMeta {
    pub n_used: usize,
    pub digits: u32,
    pub rho_certified_digits: u32,
    /// Agreement with the half-order shadow, per coefficient.
    pub certified_digits: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct PuiseuxExpansion {
    pub variety: String,
    pub rho: HpReal,
    pub t: Vec<HpReal>,
    pub shadow: Vec<HpReal>,
    pub meta: ExpansionMeta,
}

impl PuiseuxExpansion {
    pub fn order(&self) -> usize {
        self.t.len() - 1
    }
}

#[derive(Clone, Debug)]
pub struct AsymptoticExpansion {
    pub variety: String,
    pub rho: HpReal,
    pub tau: Vec<HpReal>,
    pub shadow: Vec<HpReal>,
    pub meta: ExpansionMeta,
}

impl AsymptoticExpansion {
    pub fn order(&self) -> usize {
        self.tau.len() - 1
    }
}

fn factorial_hp(n: usize, p: Precision) -> HpReal {
    (1..=n).fold(HpReal::one(p), |acc, k| acc.mul_i64(k as i64))
}

/// Pre-transform `t_0..=t_k` from `rho` and `zd[r] = zeta^(r)(rho)`.
pub fn puiseux_from_derivatives(rho: &HpReal, zd: &[HpReal], k: usize) -> Vec<HpReal> {
    let p = rho.precision();
    let e = HpReal::e(p);
    let z1 = &zd[1];
    let sqrt_a = (&(&e * rho) * z1).mul_i64(2).sqrt();
    let sqrt_rho = rho.sqrt();
    let sqrt_b = (&e * z1).mul_i64(2).sqrt();
    let inv_z1 = HpReal::one(p) / z1;

    let s_max = k.saturating_sub(1) / 2;
    // w[i] = zeta^(i+1)/(i+1)!
    let w: Vec<HpReal> = (0..=s_max)
        .map(|i| if i == 0 { HpReal::zero(p) } else { &zd[i + 1] / &factorial_hp(i + 1, p) })
        .collect();
    // comp[s][r] = sum over compositions of s into r parts of prod w
    let mut comp = vec![vec![HpReal::zero(p); s_max + 1]; s_max + 1];
    comp[0][0] = HpReal::one(p);
    for s in 1..=s_max {
        for r in 1..=s {
            let mut acc = HpReal::zero(p);
            for first in 1..=(s - r + 1) {
                acc = acc + &w[first] * &comp[s - first][r - 1];
            }
            comp[s][r] = acc;
        }
    }

    let b_over_fact = |l: usize| -> HpReal {
        let f: BigInt = (1..=l).map(BigInt::from).product();
        rational_to_hp(&(b_seq(l) / BigRational::from_integer(f)), p)
    };

    let mut t = Vec::with_capacity(k + 1);
    t.push(HpReal::one(p));
    if k >= 1 {
        t.push(-sqrt_a.clone());
    }
    for n in 2..=k {
        let mut value = -(b_over_fact(n) * sqrt_a.powi(n as i64));
        let rho_half_n = sqrt_rho.powi(n as i64);
        for l in (1..n).filter(|l| l % 2 == n % 2) {
            let s = (n - l) / 2;
            let half_l = BigRational::new(BigInt::from(l), BigInt::from(2));
            let mut inner = HpReal::zero(p);
            for r in 1..=s {
                let binom = rational_to_hp(&gen_binom(&half_l, r), p);
                inner = inner + &(&binom * &inv_z1.powi(r as i64)) * &comp[s][r];
            }
            let mut term = &(&rho_half_n * &b_over_fact(l)) * &(&sqrt_b.powi(l as i64) * &inner);
            if s % 2 == 1 {
                term = -term;
            }
            value = value - term;
        }
        t.push(value);
    }
    t
}

fn apply_post_shift(spec: &VarietySpec, rho: &HpReal, t: &mut [HpReal]) {
    if let Some(shift) = &spec.post_shift {
        let p = rho.precision();
        let s = rational_to_hp(shift, p);
        t[0] = &t[0] + &(&s * &(HpReal::one(p) - rho));
        if t.len() > 2 {
            t[2] = &t[2] + &(&s * rho);
        }
    }
}

fn certify(a: &[HpReal], b: &[HpReal], cap: u32) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x.agreement_digits(y).min(cap)).collect()
}

/// `t_0..=t_k` for `spec`, with the affine correction applied when the
/// variety carries one (only `t_0` and `t_2` change).
///
/// `derivs` must hold the order-`N` derivatives at `rho.rho` and the shadow
/// derivatives at `rho.shadow_rho`.
pub fn puiseux_coeffs(
    spec: &VarietySpec,
    rho: &RhoResult,
    derivs: &ZetaDerivatives,
    k: usize,
    digits: Precision,
) -> Result<PuiseuxExpansion, ExpansionError> {
    let needed = derivative_order_for(k);
    if derivs.r_max() < needed {
        return Err(ExpansionError::InsufficientDerivatives { order: k, needed, available: derivs.r_max() });
    }
    let mut t = puiseux_from_derivatives(&rho.rho, &derivs.values, k);
    let mut shadow = puiseux_from_derivatives(&rho.shadow_rho, &derivs.shadow, k);
    apply_post_shift(spec, &rho.rho, &mut t);
    apply_post_shift(spec, &rho.shadow_rho, &mut shadow);
    let meta = ExpansionMeta {
        n_used: derivs.n_used,
        digits: digits.get(),
        rho_certified_digits: rho.certified_digits,
        certified_digits: certify(&t, &shadow, digits.get()),
    };
    Ok(PuiseuxExpansion { variety: spec.name.clone(), rho: rho.rho.clone(), t, shadow, meta })
}

/// `tau_0..=tau_l` from the odd Puiseux coefficients.
pub fn tau_coeffs(puiseux: &PuiseuxExpansion, l: usize) -> Result<AsymptoticExpansion, ExpansionError> {
    let needed = 2 * l + 1;
    if puiseux.order() < needed {
        return Err(ExpansionError::InsufficientCoefficients { order: l, needed, available: puiseux.order() });
    }
    let forms: Vec<_> = (0..=l).map(tau_symbolic).collect();
    let tau: Vec<HpReal> = forms.iter().map(|f| f.evaluate(&puiseux.t)).collect();
    let shadow: Vec<HpReal> = forms.iter().map(|f| f.evaluate(&puiseux.shadow)).collect();
    let meta = ExpansionMeta {
        certified_digits: certify(&tau, &shadow, puiseux.meta.digits),
        ..puiseux.meta.clone()
    };
    Ok(AsymptoticExpansion { variety: puiseux.variety.clone(), rho: puiseux.rho.clone(), tau, shadow, meta })
}

/// `rho^{-n} / sqrt(pi n^3) * sum_{i=0}^{k} tau_i / n^i`.
pub fn estimate_count(asym: &AsymptoticExpansion, n: usize, k: usize) -> Result<HpReal, ExpansionError> {
    if k > asym.order() {
        return Err(ExpansionError::OrderTooHigh { order: k, available: asym.order() });
    }
    if n == 0 {
        return Err(ExpansionError::ZeroSize);
    }
    let p = asym.rho.precision();
    let nn = HpReal::from_i64(n as i64, p);
    let inv_n = HpReal::one(p) / &nn;
    let mut sum = HpReal::zero(p);
    let mut power = HpReal::one(p);
    for tau in &asym.tau[..=k] {
        sum = sum + tau * &power;
        power = &power * &inv_n;
    }
    let prefactor = asym.rho.powi(-(n as i64)) / (HpReal::pi(p) * nn.powi(3)).sqrt();
    Ok(prefactor * sum)
}

/// Relative errors `|estimate - exact| / exact` and ratios `estimate / exact`.
#[derive(Clone, Debug)]
pub struct ErrorTable {
    pub variety: String,
    pub sizes: Vec<usize>,
    pub orders: Vec<usize>,
    /// `relative[i][j]` for `sizes[i]`, `orders[j]`.
    pub relative: Vec<Vec<HpReal>>,
    pub ratio: Vec<Vec<HpReal>>,
}

impl ErrorTable {
    pub fn cell(&self, size: usize, order: usize) -> Option<&HpReal> {
        let i = self.sizes.iter().position(|&s| s == size)?;
        let j = self.orders.iter().position(|&o| o == order)?;
        Some(&self.relative[i][j])
    }
}

pub fn error_table(
    asym: &AsymptoticExpansion,
    exact: &CountSequence,
    sizes: &[usize],
    orders: &[usize],
) -> Result<ErrorTable, ExpansionError> {
    let p = asym.rho.precision();
    let mut relative = Vec::with_capacity(sizes.len());
    let mut ratio = Vec::with_capacity(sizes.len());
    for &size in sizes {
        let value = exact
            .get(size)
            .ok_or(ExpansionError::SizeBeyondCounts { size, available: exact.n_max() })?;
        let exact_hp = HpReal::from_bigint(value, p);
        let mut rel_row = Vec::with_capacity(orders.len());
        let mut ratio_row = Vec::with_capacity(orders.len());
        for &k in orders {
            let est = estimate_count(asym, size, k)?;
            rel_row.push((&est - &exact_hp).abs() / &exact_hp);
            ratio_row.push(est / &exact_hp);
        }
        relative.push(rel_row);
        ratio.push(ratio_row);
    }
    Ok(ErrorTable { variety: asym.variety.clone(), sizes: sizes.to_vec(), orders: orders.to_vec(), relative, ratio })
}

/// Parameters of a full run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisConfig {
    /// Truncation order `N` of `zeta`.
    pub terms: usize,
    pub digits: u32,
    /// Last Puiseux coefficient `K` to report.
    pub puiseux_order: usize,
    /// Last `tau` to report.
    pub tau_order: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig { terms: 200, digits: 30, puiseux_order: 18, tau_order: 18 }
    }
}

/// Counts, `zeta`, `rho` and both expansions for one variety.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub spec: VarietySpec,
    pub config: AnalysisConfig,
    pub counts: CountSequence,
    pub zeta: ZetaFunction,
    pub rho: RhoResult,
    pub derivatives: ZetaDerivatives,
    /// Holds `t_0..=t_K'` with `K' = max(K, 2L + 1)`.
    pub puiseux: PuiseuxExpansion,
    pub asymptotic: AsymptoticExpansion,
}

impl Analysis {
    pub fn run(spec: &VarietySpec, config: &AnalysisConfig) -> Result<Analysis, Error> {
        let counts = counts(spec.variety, config.terms);
        Analysis::run_with_counts(spec, config, counts)
    }

    pub fn for_variety(variety: Variety, config: &AnalysisConfig) -> Result<Analysis, Error> {
        Analysis::run(&VarietySpec::for_variety(variety), config)
    }

    pub fn run_with_counts(spec: &VarietySpec, config: &AnalysisConfig, counts: CountSequence) -> Result<Analysis, Error> {
        let digits = Precision::digits(config.digits);
        if config.terms < crate::solver::MIN_TERMS {
            return Err(SolverError::TooFewTerms(config.terms).into());
        }
        let zeta = ZetaFunction::new(spec, &counts, config.terms, digits)?;
        let rho = solve_rho_for(&zeta, &SolverOptions::default())?;
        let k = config.puiseux_order.max(2 * config.tau_order + 1);
        let derivatives = zeta.derivatives_at(&rho.rho, &rho.shadow_rho, derivative_order_for(k))?;
        let puiseux = puiseux_coeffs(spec, &rho, &derivatives, k, digits)?;
        let asymptotic = tau_coeffs(&puiseux, config.tau_order)?;
        Ok(Analysis { spec: spec.clone(), config: config.clone(), counts, zeta, rho, derivatives, puiseux, asymptotic })
    }

    /// `t_0..=t_K` as configured.
    pub fn t(&self) -> &[HpReal] {
        &self.puiseux.t[..=self.config.puiseux_order]
    }

    pub fn tau(&self) -> &[HpReal] {
        &self.asymptotic.tau
    }

    pub fn estimate(&self, n: usize, k: usize) -> Result<HpReal, ExpansionError> {
        estimate_count(&self.asymptotic, n, k)
    }

    /// Error table against exact counts, extending them if the sizes need it.
    pub fn error_table(&self, sizes: &[usize], orders: &[usize]) -> Result<ErrorTable, ExpansionError> {
        let max = sizes.iter().copied().max().unwrap_or(0);
        if max > self.counts.n_max() {
            let exact = counts(self.spec.variety, max);
            return error_table(&self.asymptotic, &exact, sizes, orders);
        }
        error_table(&self.asymptotic, &self.counts, sizes, orders)
    }
}

/// `sum_{n<=k} t_n u^{n/2}` at a given `u`.
pub fn puiseux_partial_sum(t: &[HpReal], u: &HpReal) -> HpReal {
    let root = u.sqrt();
    let mut power = HpReal::one(u.precision());
    let mut sum = HpReal::zero(u.precision());
    for c in t {
        sum = sum + c * &power;
        power = &power * &root;
    }
    sum
}

/// `|zeta(rho (1 - u)) exp(T_K(u)) - T_K(u)|` for the pre-transform partial sum `T_K`.
pub fn functional_residual(zeta: &ZetaFunction, rho: &HpReal, t_pre: &[HpReal], u: &HpReal) -> Result<HpReal, VarietyError> {
    let p = rho.precision();
    let x = rho * &(HpReal::one(p) - u);
    let tk = puiseux_partial_sum(t_pre, u);
    Ok((zeta.eval(&x, 0)? * tk.exp() - tk).abs())
}

/// Undoes the affine correction, giving coefficients of `T~` for hierarchies.
pub fn pre_transform(spec: &VarietySpec, rho: &HpReal, t: &[HpReal]) -> Vec<HpReal> {
    let mut out = t.to_vec();
    if let Some(shift) = &spec.post_shift {
        let neg = VarietySpec { post_shift: Some(-shift.clone()), ..spec.clone() };
        apply_post_shift(&neg, rho, &mut out);
    }
    out
}

/// `-t_1 / 2`, the leading coefficient.
pub fn leading_tau(t1: &HpReal) -> HpReal {
    -(t1 * &rational_to_hp(&BigRational::new(BigInt::one(), BigInt::from(2)), t1.precision()))
}
