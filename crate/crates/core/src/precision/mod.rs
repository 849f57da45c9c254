//! Arbitrary-precision reals and truncated power series.

mod hpreal;
mod series;

pub use hpreal::{rational_to_hp, DecimalDigits, HpReal, ParseHpRealError, Precision};
pub use series::{
    series_eval_deriv, series_exp, series_mul, series_substitute_power, DerivativeEval, PowerSeries, Scalar,
    SeriesError,
};
