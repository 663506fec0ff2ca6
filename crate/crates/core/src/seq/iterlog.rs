use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::exact::int;
use crate::scalar::{Interval, Real};

use super::predicates::PRECISION_CAP;

/// `ln` applied `k` times to the integer `c`.
pub(crate) fn iter_ln<T: Real>(c: u64, k: u32, prec: u32) -> T {
    let mut x = T::from_rational(&int(c), prec);
    for _ in 0..k {
        x = x.ln();
    }
    x
}

/// Smallest integer strictly greater than the tower `e^e^...^e` of height
/// `k`, decided from certified enclosures.
pub fn tower_threshold(k: u32) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidArgument("tower height must be >= 1".into()));
    }
    if k >= 4 {
        return Err(Error::Range(format!(
            "the height-{k} exponential tower has millions of digits; pass an explicit offset"
        )));
    }
    let mut prec = 128;
    while prec <= PRECISION_CAP {
        let mut t = Interval::from_int(1, prec);
        for _ in 0..k {
            t = t.exp();
        }
        let lo = t.lo().floor().to_integer();
        let hi = t.hi().floor().to_integer();
        // the tower is irrational, so it never equals its floor
        if lo == hi {
            return (lo + num_bigint::BigInt::from(1))
                .to_u64()
                .ok_or_else(|| Error::Range("tower threshold exceeds u64".into()));
        }
        prec *= 2;
    }
    Err(Error::Unresolved {
        what: format!("floor of the height-{k} tower"),
        bits: PRECISION_CAP,
    })
}

/// Requires every iterate `log^j(offset)`, `1 <= j <= k`, to be certified
/// positive so the sequence is defined from index 0 on.
pub(crate) fn validate_offset(k: u32, offset: u64) -> Result<()> {
    if offset == 0 {
        return Err(Error::InvalidArgument("offset 0 makes log undefined".into()));
    }
    let mut prec = 128;
    'refine: while prec <= PRECISION_CAP {
        let mut x = Interval::from_int(offset as i64, prec);
        for j in 1..=k {
            x = x.try_ln()?;
            if x.hi().is_negative() || x.hi() == &BigRational::from_integer(0.into()) {
                return Err(Error::InvalidArgument(format!(
                    "log^{j}({offset}) <= 0, so the iterated log is undefined at the window start"
                )));
            }
            if !x.lo().is_positive() {
                prec *= 2;
                continue 'refine;
            }
        }
        return Ok(());
    }
    Err(Error::Unresolved {
        what: format!("sign of log^{k}({offset})"),
        bits: PRECISION_CAP,
    })
}
