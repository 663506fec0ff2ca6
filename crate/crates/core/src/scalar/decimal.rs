//! Directed decimal rendering of rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), e as usize)
}

fn pow10_rational(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(pow10(e as u32))
    } else {
        BigRational::new(BigInt::from(1), pow10((-e) as u32))
    }
}

/// Scientific notation with `digits` significant digits, rounded toward
/// +infinity when `up` is set and toward -infinity otherwise.
pub fn to_scientific(q: &BigRational, digits: u32, up: bool) -> String {
    assert!(digits >= 1);
    if q.is_zero() {
        return "0".to_string();
    }
    let neg = q.is_negative();
    let a = q.abs();
    // magnitude rounded away from zero iff the direction points away from zero
    let away = up != neg;
    let bits = a.numer().bits() as f64 - a.denom().bits() as f64;
    let mut e10 = (bits * std::f64::consts::LOG10_2).floor() as i64;
    while a < pow10_rational(e10) {
        e10 -= 1;
    }
    while a >= pow10_rational(e10 + 1) {
        e10 += 1;
    }
    let scaled = &a * pow10_rational(digits as i64 - 1 - e10);
    let (n, d) = (scaled.numer(), scaled.denom());
    let mut m = if away { n.div_ceil(d) } else { n.div_floor(d) };
    if m == pow10(digits) {
        m = pow10(digits - 1);
        e10 += 1;
    }
    let s = m.to_string();
    let (head, tail) = s.split_at(1);
    let tail = tail.trim_end_matches('0');
    let sign = if neg { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{e10}")
    } else {
        format!("{sign}{head}.{tail}e{e10}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn directed_thirds() {
        assert_eq!(to_scientific(&q(1, 3), 4, false), "3.333e-1");
        assert_eq!(to_scientific(&q(1, 3), 4, true), "3.334e-1");
        assert_eq!(to_scientific(&q(-1, 3), 4, false), "-3.334e-1");
        assert_eq!(to_scientific(&q(-1, 3), 4, true), "-3.333e-1");
    }

    #[test]
    fn exact_and_carry() {
        assert_eq!(to_scientific(&q(120, 1), 5, true), "1.2e2");
        assert_eq!(to_scientific(&q(9999, 1000), 3, true), "1e1");
        assert_eq!(to_scientific(&q(1, 1), 3, false), "1e0");
    }
}
