//! Scalar abstractions.
//!
//! Algorithms are written against [`Field`] (exact arithmetic suffices) or
//! [`Real`] (needs transcendental functions). `BigRational` is a `Field`;
//! `f32`, `f64` and the certified [`Interval`] are `Real`s. The run-time
//! [`Scalar`] value carries the three user-facing modes.

pub mod decimal;
pub(crate) mod fixed;
pub mod interval;

use std::fmt::{self, Debug};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub use interval::{Interval, DEFAULT_PRECISION};

use crate::error::{Error, Result};

pub trait Field:
    Clone
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Converts a rational; `prec` is ignored by types with fixed precision.
    fn from_rational(q: &BigRational, prec: u32) -> Self;

    fn from_i64(n: i64, prec: u32) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()), prec)
    }

    fn powu(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base.clone();
            }
            n >>= 1;
            if n > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn powi(&self, e: i64) -> Self {
        let p = self.powu(e.unsigned_abs() as u32);
        if e < 0 {
            Self::one() / p
        } else {
            p
        }
    }
}

pub trait Real: Field {
    fn exp(&self) -> Self;
    /// Natural logarithm; the argument must be positive.
    fn ln(&self) -> Self;
    fn sin_cos(&self) -> (Self, Self);
    /// Principal `p`-th root of a nonnegative value.
    fn root(&self, p: u32) -> Self;
    fn abs(&self) -> Self;
    /// Upper envelope of the two values.
    fn max_of(&self, other: &Self) -> Self;
    fn pi(prec: u32) -> Self;
    fn to_f64(&self) -> f64;

    fn e(prec: u32) -> Self {
        Self::from_i64(1, prec).exp()
    }
}

impl Field for BigRational {
    fn from_rational(q: &BigRational, _prec: u32) -> Self {
        q.clone()
    }
}

impl Field for Interval {
    fn from_rational(q: &BigRational, prec: u32) -> Self {
        Interval::point(q, prec)
    }

    fn powu(&self, n: u32) -> Self {
        self.pow(n)
    }
}

impl Real for Interval {
    fn exp(&self) -> Self {
        Interval::exp(self)
    }
    fn ln(&self) -> Self {
        self.try_ln().expect("ln of a nonpositive interval")
    }
    fn sin_cos(&self) -> (Self, Self) {
        Interval::sin_cos(self)
    }
    fn root(&self, p: u32) -> Self {
        self.try_root(p).expect("root of a negative interval")
    }
    fn abs(&self) -> Self {
        Interval::abs(self)
    }
    fn max_of(&self, other: &Self) -> Self {
        Interval::max_of(self, other)
    }
    fn pi(prec: u32) -> Self {
        Interval::pi(prec)
    }
    fn to_f64(&self) -> f64 {
        Interval::to_f64(self)
    }
    fn e(prec: u32) -> Self {
        Interval::e(prec)
    }
}

macro_rules! float_impls {
    ($t:ty, $consts:ident) => {
        impl Field for $t {
            fn from_rational(q: &BigRational, _prec: u32) -> Self {
                q.to_f64().unwrap_or(f64::NAN) as $t
            }
        }

        impl Real for $t {
            fn exp(&self) -> Self {
                <$t>::exp(*self)
            }
            fn ln(&self) -> Self {
                <$t>::ln(*self)
            }
            fn sin_cos(&self) -> (Self, Self) {
                <$t>::sin_cos(*self)
            }
            fn root(&self, p: u32) -> Self {
                self.powf(1.0 / p as $t)
            }
            fn abs(&self) -> Self {
                <$t>::abs(*self)
            }
            fn max_of(&self, other: &Self) -> Self {
                self.max(*other)
            }
            fn pi(_prec: u32) -> Self {
                std::$consts::consts::PI
            }
            fn to_f64(&self) -> f64 {
                *self as f64
            }
        }
    };
}

float_impls!(f32, f32);
float_impls!(f64, f64);

/// Largest binary exponent a float-mode value may carry.
pub const FLOAT_MAX_EXPONENT: i64 = 16383;

/// Requested representation for a sequence value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    /// Rounded to nearest with the given mantissa bits; not certified.
    Float { bits: u32 },
    /// Outward-rounded enclosure with endpoints of the given mantissa bits.
    Interval { bits: u32 },
}

impl Mode {
    /// Working precision used for intermediate enclosures.
    pub fn working_bits(&self) -> u32 {
        match *self {
            Mode::Exact => DEFAULT_PRECISION,
            Mode::Float { bits } => 2 * bits + 64,
            Mode::Interval { bits } => bits + 32,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Float { bits: u32, value: BigRational },
    Interval(Interval),
}

impl Scalar {
    /// Renders an enclosure (or exact value) into the requested mode.
    pub fn from_enclosure(x: &Interval, mode: Mode) -> Result<Scalar> {
        match mode {
            Mode::Exact => {
                if x.is_point() {
                    Ok(Scalar::Exact(x.lo().clone()))
                } else {
                    Err(Error::NotExact(format!("enclosure {x}")))
                }
            }
            Mode::Float { bits } => Self::float(&x.mid(), bits),
            Mode::Interval { bits } => Ok(Scalar::Interval(x.rounded(bits))),
        }
    }

    pub fn from_exact(q: BigRational, mode: Mode) -> Result<Scalar> {
        match mode {
            Mode::Exact => Ok(Scalar::Exact(q)),
            Mode::Float { bits } => Self::float(&q, bits),
            Mode::Interval { bits } => Ok(Scalar::Interval(Interval::point(&q, bits).rounded(bits))),
        }
    }

    fn float(q: &BigRational, bits: u32) -> Result<Scalar> {
        let v = interval::round_nearest(q, bits);
        if !v.is_zero() && interval::log2_estimate(&v).abs() > FLOAT_MAX_EXPONENT {
            return Err(Error::Range(format!(
                "binary exponent of about {} exceeds the float range",
                interval::log2_estimate(&v)
            )));
        }
        Ok(Scalar::Float { bits, value: v })
    }

    pub fn lower(&self) -> &BigRational {
        match self {
            Scalar::Exact(q) | Scalar::Float { value: q, .. } => q,
            Scalar::Interval(i) => i.lo(),
        }
    }

    pub fn upper(&self) -> &BigRational {
        match self {
            Scalar::Exact(q) | Scalar::Float { value: q, .. } => q,
            Scalar::Interval(i) => i.hi(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) | Scalar::Float { value: q, .. } => q.to_f64().unwrap_or(f64::NAN),
            Scalar::Interval(i) => i.to_f64(),
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_interval(&self) -> Option<&Interval> {
        match self {
            Scalar::Interval(i) => Some(i),
            _ => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => write!(f, "{q}"),
            Scalar::Float { value, .. } => write!(f, "{}", decimal::to_scientific(value, 20, true)),
            Scalar::Interval(i) => write!(f, "{i}"),
        }
    }
}
