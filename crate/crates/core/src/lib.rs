//! Exact-arithmetic and numerical toolkit for a family of power-series
//! identities attached to Bessel-type integrals over unitary groups, their
//! Schur-function form, and the random-partition measures they induce.
//!
//! The crate is organized by subject:
//!
//! - [`exact`]: arbitrary-precision rationals, univariate polynomials and
//!   rational functions in the formal variable `s`, gamma-factor ratios,
//!   exact determinants.
//! - [`partitions`]: partitions, hooks, shifted parts, rectangle addition,
//!   conjugation, joined shapes, enumeration, Vandermonde products.
//! - [`schur`]: Schur polynomial evaluation, principal-specialization
//!   dimensions, Littlewood-Richardson coefficients, branching tables.
//! - [`identity`]: coefficient-level verification of the two-block power
//!   series identity (integer and symbolic `s`), the equivalent Schur-weight
//!   identity, and the supporting determinant/integration lemmas.
//! - [`measures`]: the partition measures `P` and `Q`, their normalization
//!   constant as a truncated sum and as a Bessel determinant, exact samplers,
//!   Poissonized Plancherel sampling, hook-ratio limits and convergence
//!   tables.
//! - [`numeric`]: error-tracked arbitrary-precision evaluation (modified
//!   Bessel functions, series, determinant formulas) and Monte Carlo
//!   verification over Haar-random unitary matrices.
//! - [`stats`]: chi-square goodness-of-fit helpers for sampler statistics.
//!
//! All exact operations are pure values and safe to share across threads.

pub mod exact;
pub mod identity;
pub mod measures;
pub mod numeric;
pub mod partitions;
pub mod schur;
pub mod stats;

pub use exact::{gamma_ratio, ratfun_equal, reciprocal_gamma_int, PolyS, RatFunS};
pub use identity::{
    andreief_battery, andreief_check, bf94_battery, cauchy_determinant_check, lhs_coefficient,
    rhs_coefficient, verify_corollary, verify_theorem1, weight_a, weight_b, CoefficientValue,
    SParam, VerificationReport,
};
pub use measures::{
    hook_ratio_52, hook_ratio_53, limit_52, limit_53, limit_check_54, limit_parameters,
    normalization_z_bessel, normalization_z_truncated, sample_p, sample_poissonized_plancherel,
    sample_q_branching, weight_p, weight_q, ConvergenceTable, Draw, SampleRecord,
};
pub use numeric::{
    bessel_i, haar_sample, mc_integral_g, mc_integral_k, series_g, series_k, theorem2_rhs,
    CMatrix, MCEstimate, TrackedReal, UnitaryMatrix,
};
pub use partitions::{
    add_rectangle, conjugate, enumerate_partitions, hook_product, join_shape, shifted_parts,
    union_append, vandermonde, ExponentVector, Partition,
};
pub use schur::{branching_table, lr_coefficient, schur_dimension, schur_evaluate, LrTableau};
