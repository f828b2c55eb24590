//! Error-tracked numerics and Monte Carlo verification.
//!
//! [`TrackedReal`] carries an exact rational midpoint together with a
//! rigorous absolute-error bound; every operation propagates the bound
//! conservatively, so the true mathematical value always lies inside
//! `[value - abs_error, value + abs_error]`. Series are truncated with
//! explicit majorant tail bounds rather than heuristics.

mod mc;
mod series;
mod tracked;

pub use mc::{haar_sample, mc_integral_g, mc_integral_k, CMatrix, MCEstimate, UnitaryMatrix};
pub use series::{series_g, series_k, theorem2_rhs, NumericError};
pub use tracked::{bessel_i, det_tracked, exp_rational, TrackedReal};
