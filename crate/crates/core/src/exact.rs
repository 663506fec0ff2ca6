//! Small exact-arithmetic helpers shared across modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::scalar::Real;

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `n! / (n-k)!`, the falling factorial.
pub fn falling(n: u64, k: u64) -> BigInt {
    assert!(k <= n);
    ((n - k + 1)..=n).fold(BigInt::one(), |acc, j| acc * j)
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Natural log of a positive rational in any [`Real`], scaled by a power of
/// two first so huge integers never overflow a float type.
pub fn ln_of<T: Real>(q: &BigRational, prec: u32) -> T {
    let e = q.numer().bits() as i64 - q.denom().bits() as i64;
    if e.abs() < 64 {
        return T::from_rational(q, prec).ln();
    }
    let scaled = q * crate::scalar::interval::pow2_rational(-e);
    T::from_rational(&scaled, prec).ln() + T::from_i64(e, prec) * T::from_i64(2, prec).ln()
}
