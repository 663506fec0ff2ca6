use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::comb::Sweep;
use crate::error::{Error, Result};
use crate::exact::factorial;
use crate::scalar::{interval::pow2_rational, Interval};
use crate::seq::{Outcome, Verdict};

fn check_unit(x: &Interval) -> Result<()> {
    if x.mag() > BigRational::one() {
        return Err(Error::Precondition(format!(
            "C_p is evaluated on [-1, 1], got {x}"
        )));
    }
    Ok(())
}

/// `C_p^{(n)}(x) = sum_{jp >= n} x^{jp-n} / (jp-n)!` for `x` in `[-1, 1]`.
pub fn cp_derivative(p: u32, n: usize, x: &Interval) -> Result<Interval> {
    if p == 0 {
        return Err(Error::InvalidArgument("C_p needs p >= 1".into()));
    }
    check_unit(x)?;
    let p = p as usize;
    let prec = x.prec().max(64);
    // sum_{m >= m0} 1/m! <= 2/m0! for m0 >= 1
    let tol = pow2_rational(-(prec as i64 + 8));
    let mut acc = Interval::from_int(0, prec);
    let mut j = n.div_ceil(p);
    loop {
        let m = j * p - n;
        let fact = BigRational::from_integer(factorial(m as u64));
        let bound = BigRational::from_integer(BigInt::from(2)) / &fact;
        if m > 0 && bound < tol {
            return Ok(acc.widen(&bound));
        }
        acc = acc + x.pow(m as u32).mul_rational(&fact.recip());
        j += 1;
    }
}

/// `C_p(x) = sum_j x^{jp} / (jp)!`.
pub fn cp_eval(p: u32, x: &Interval) -> Result<Interval> {
    cp_derivative(p, 0, x)
}

/// `|C_p^{(n)}(x)| <= e` for `p in p_set`, `n <= n_max(p)`, `x in grid`.
///
/// For `p = 1` the function is `e^x` itself and the bound is an equality at
/// `x = 1`; it is decided from the closed form `e^x <= e <=> x <= 1`.
pub fn cp_bound_check(
    p_set: &[u32],
    n_max: impl Fn(u32) -> usize,
    grid: &[BigRational],
    prec: u32,
) -> Result<Verdict> {
    let e = Interval::e(prec);
    let mut sweep = Sweep::new(None);
    for &p in p_set {
        for n in 0..=n_max(p) {
            for (i, x) in grid.iter().enumerate() {
                let at = [p as i64, n as i64, i as i64];
                let xi = Interval::point(x, prec);
                if p == 1 {
                    check_unit(&xi)?;
                    let o = if x <= &BigRational::one() { Outcome::Holds } else { Outcome::Fails };
                    sweep.record(o, &at, xi.exp(), e.clone(), || format!("e^{x} > e"));
                    continue;
                }
                let v = cp_derivative(p, n, &xi)?.abs();
                let o = if v.hi() < e.lo() {
                    Outcome::Holds
                } else if v.lo() > e.hi() {
                    Outcome::Fails
                } else {
                    Outcome::Inconclusive
                };
                sweep.record(o, &at, v, e.clone(), || {
                    format!("|C_{p}^({n})({x})| exceeds e")
                });
            }
        }
    }
    Ok(sweep.finish())
}

/// `C_p^{(p)}(x)` and `C_p(x)` overlap and both enclosures are narrower
/// than `2^-width_bits`, for every grid point.
pub fn cp_period_check(p_set: &[u32], grid: &[BigRational], width_bits: u32, prec: u32) -> Result<Verdict> {
    let max_width = pow2_rational(-(width_bits as i64));
    let mut sweep = Sweep::new(None);
    for &p in p_set {
        for (i, x) in grid.iter().enumerate() {
            let xi = Interval::point(x, prec);
            let a = cp_derivative(p, p as usize, &xi)?;
            let b = cp_eval(p, &xi)?;
            let narrow = a.width() <= max_width && b.width() <= max_width;
            let o = if a.overlaps(&b) && narrow {
                Outcome::Holds
            } else if !a.overlaps(&b) {
                Outcome::Fails
            } else {
                Outcome::Inconclusive
            };
            sweep.record(o, &[p as i64, i as i64], a, b, || {
                format!("C_{p}^({p})({x}) and C_{p}({x}) disagree")
            });
        }
    }
    Ok(sweep.finish())
}

/// `m + 1` equally spaced rationals from `a` to `b`.
pub fn uniform_grid(a: &BigRational, b: &BigRational, m: usize) -> Vec<BigRational> {
    if m == 0 {
        return vec![a.clone()];
    }
    let step = (b - a) / BigRational::from_integer(BigInt::from(m));
    (0..=m)
        .map(|i| a + &step * BigRational::from_integer(BigInt::from(i)))
        .collect()
}
