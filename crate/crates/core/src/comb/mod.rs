//! Exact combinatorics behind the power-substitution estimates: the
//! coefficients `c_{k,n}`, `a_i`, `b_j`, diagonal derivatives of
//! `alpha_k(X, x) = (X^{1/p} - x^{1/p})^k / k!`, the Stirling-type inequality
//! and the composite-derivative formula.

mod calculus;
mod lemmas;
mod series;

pub use calculus::{composite_derivative, taylor_remainder_reconstruct};
pub use lemmas::{
    alpha_b_bound_check, alpha_b_coefficients, alpha_diag_derivative, alpha_diag_enclose,
    composition_sum_oracle, lemma1_check, lemma2_check, log_power_coefficients, log_series,
    root_coefficient_magnitude, root_series_coefficients, stirling_ineq_check, stirling_sweep,
    COMPOSITION_GUARD,
};
pub use series::TruncatedPowerSeries;

pub(crate) use lemmas::Sweep;
