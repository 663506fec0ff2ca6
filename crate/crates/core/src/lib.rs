//! Certified tools for Denjoy–Carleman weight sequences: transforms,
//! quasianalyticity criteria, the combinatorics behind power substitution and
//! Bang-type extremal functions.

pub mod error;
pub mod exact;
pub mod scalar;
pub mod seq;
pub mod transforms;
pub mod criteria;
pub mod comb;
pub mod bang;

use num_rational::BigRational;

pub use error::{Error, Result};
pub use scalar::{Field, Interval, Mode, Real, Scalar};
pub use seq::{Family, Outcome, Scope, Verdict, WeightSequence, Which, Witness};

pub type Rational = BigRational;
pub type ExactSeries = comb::TruncatedPowerSeries<Rational>;
pub type FloatSeries = comb::TruncatedPowerSeries<f64>;
