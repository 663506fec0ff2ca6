//! Extremal functions: Bang's cosine series, its `C_p` variant, the germ
//! induced through `F(xi) = f(xi^p)`, and sampled class norms.

mod cp;
mod function;
mod norm;

pub use cp::{cp_bound_check, cp_derivative, cp_eval, cp_period_check, uniform_grid};
pub use function::{
    bang_envelope_check, bang_lower_bound_certify, induced_f_derivative, theorem1_bound, BangFunction,
    Oscillator,
};
pub use norm::{class_norm, GrowthEnvelope, Model, NormEstimate};
