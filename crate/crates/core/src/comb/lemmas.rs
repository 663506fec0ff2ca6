use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, int, rational};
use crate::scalar::{Interval, Mode, Scalar};
use crate::seq::{Outcome, Verdict, Witness, PRECISION_CAP};

use super::TruncatedPowerSeries;

type Series = TruncatedPowerSeries<BigRational>;

/// Largest `n` accepted by [`composition_sum_oracle`].
pub const COMPOSITION_GUARD: usize = 25;

/// `sum_{i>=1} x^i / i` truncated at `order`.
pub fn log_series(order: usize) -> Series {
    Series::from_fn(1, order, |i| rational(1, i as i64))
}

/// `c_{k,n}` for `n <= order`: coefficients of `(sum x^i / i)^k`.
pub fn log_power_coefficients(k: usize, order: usize) -> Result<Series> {
    if k == 0 || k > order {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= k <= N, got k = {k}, N = {order}"
        )));
    }
    Ok(log_series(order).pow(k as u32))
}

/// `sum over compositions i_1 + ... + i_k = n of 1/(i_1 ... i_k)`, by
/// enumeration.
pub fn composition_sum_oracle(k: usize, n: usize) -> Result<BigRational> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    if n > COMPOSITION_GUARD {
        return Err(Error::CostGuard(format!(
            "enumerating compositions of {n} exceeds the guard n <= {COMPOSITION_GUARD}"
        )));
    }
    fn walk(parts: usize, rest: usize, prod: &BigInt, acc: &mut BigRational) {
        if parts == 1 {
            *acc += BigRational::new(BigInt::one(), prod * rest);
            return;
        }
        for i in 1..=(rest - parts + 1) {
            walk(parts - 1, rest - i, &(prod * i), acc);
        }
    }
    let mut acc = BigRational::zero();
    walk(k, n, &BigInt::one(), &mut acc);
    Ok(acc)
}

/// Certified `lhs <= rhs(prec)` with exact `lhs`: compares against the lower
/// end of `rhs`, re-checks a failure against its upper end and doubles the
/// precision in between.
pub(crate) fn certify_le(
    lhs: &BigRational,
    rhs: impl Fn(u32) -> Interval,
    prec: u32,
) -> (Outcome, Interval) {
    let mut p = prec;
    loop {
        let r = rhs(p);
        if lhs <= r.lo() {
            return (Outcome::Holds, r);
        }
        if lhs > r.hi() {
            return (Outcome::Fails, r);
        }
        if p >= PRECISION_CAP {
            return (Outcome::Inconclusive, r);
        }
        p = (p * 2).min(PRECISION_CAP);
    }
}

/// Sweep bookkeeping: first failure wins, unresolved points are listed.
pub(crate) struct Sweep {
    window: Option<(i64, i64)>,
    checked: usize,
    failure: Option<Witness>,
    unresolved: Vec<i64>,
}

impl Sweep {
    pub fn new(window: Option<(i64, i64)>) -> Self {
        Sweep {
            window,
            checked: 0,
            failure: None,
            unresolved: Vec::new(),
        }
    }

    pub fn failed(&self) -> bool {
        self.failure.is_some()
    }

    pub fn record(&mut self, outcome: Outcome, at: &[i64], lhs: Interval, rhs: Interval, note: impl Fn() -> String) {
        self.checked += 1;
        match outcome {
            Outcome::Holds => {}
            Outcome::Fails => {
                if self.failure.is_none() {
                    self.failure = Some(Witness {
                        at: at.to_vec(),
                        lhs: Some(lhs),
                        rhs: Some(rhs),
                        note: note(),
                    });
                }
            }
            Outcome::Inconclusive => self.unresolved.extend_from_slice(at),
        }
    }

    pub fn finish(self) -> Verdict {
        if let Some(w) = self.failure {
            return Verdict::fails(self.window, w, self.checked);
        }
        if !self.unresolved.is_empty() {
            let mut v = Verdict::inconclusive(self.window, None, self.checked);
            v.witness = Some(Witness {
                at: self.unresolved,
                lhs: None,
                rhs: None,
                note: format!("unresolved at {PRECISION_CAP} bits"),
            });
            return v;
        }
        Verdict::holds(self.window, self.checked)
    }
}

fn e_pow(n: u64, prec: u32) -> Interval {
    Interval::from_int(n as i64, prec).exp()
}

/// `c_{k,n} <= (2e)^n k! / n^k` for `1 <= k <= k_max`, `k <= n <= n_max`,
/// together with the two steps behind it: `c_{k,n} <= 2^n` and
/// `n^k / k! < e^n`.
pub fn lemma1_check(k_max: usize, n_max: usize, prec: u32) -> Result<Verdict> {
    if k_max == 0 || n_max == 0 {
        return Err(Error::InvalidArgument("sweep bounds must be >= 1".into()));
    }
    let base = log_series(n_max);
    let mut power = Series::one(n_max);
    let mut sweep = Sweep::new(Some((1, n_max as i64)));
    for k in 1..=k_max.min(n_max) {
        power = &power * &base;
        let kf = int(factorial(k as u64));
        for n in k..=n_max {
            let c = power.coeff(n);
            let at = [k as i64, n as i64];
            let nk = int(num_traits::pow(BigInt::from(n), k));
            let (o, r) = certify_le(
                &c,
                |p| e_pow(n as u64, p).scale_pow2(n as i64).mul_rational(&(&kf / &nk)),
                prec,
            );
            sweep.record(o, &at, Interval::point(&c, prec), r, || {
                format!("c_{{{k},{n}}} exceeds (2e)^n k!/n^k")
            });
            let two_n = int(BigInt::one() << n);
            let o = if c <= two_n { Outcome::Holds } else { Outcome::Fails };
            sweep.record(o, &at, Interval::point(&c, prec), Interval::point(&two_n, prec), || {
                format!("c_{{{k},{n}}} exceeds 2^n")
            });
            let q = &nk / &kf;
            let (o, r) = certify_le(&q, |p| e_pow(n as u64, p), prec);
            // the comparison is strict, so equality at the lower end is not enough
            let o = if o == Outcome::Holds && &q == r.lo() { Outcome::Inconclusive } else { o };
            sweep.record(o, &at, Interval::point(&q, prec), r, || {
                format!("n^k/k! >= e^n at k = {k}, n = {n}")
            });
            if sweep.failed() {
                return Ok(sweep.finish());
            }
        }
    }
    Ok(sweep.finish())
}

/// `a_i = binom(1/p, i)`, the coefficients of `(1+u)^{1/p} - 1`. Allows `p = 1`
/// internally (the series is then `u`).
pub(crate) fn binomial_root_series(p: u32, order: usize) -> Series {
    let inv = rational(1, p as i64);
    let mut coeffs = Vec::with_capacity(order);
    let mut a = BigRational::one();
    for i in 1..=order {
        a = a * (&inv - int(i as i64 - 1)) / int(i as i64);
        coeffs.push(a.clone());
    }
    Series::from_coeffs(1, coeffs, order)
}

/// Signed `a_i`, `1 <= i <= order`, from the binomial series of `(1+u)^{1/p}`.
pub fn root_series_coefficients(p: u32, order: usize) -> Result<Series> {
    if p < 2 {
        return Err(Error::InvalidArgument(format!("p must be >= 2, got {p}")));
    }
    Ok(binomial_root_series(p, order))
}

/// `|a_i|` from the product `(p-1)(2p-1)...((i-1)p-1) / (i! p^i)`.
pub fn root_coefficient_magnitude(p: u32, i: usize) -> BigRational {
    let p = p as i64;
    let num = (1..i as i64).fold(BigInt::one(), |acc, j| acc * (j * p - 1));
    let den = int(factorial(i as u64)) * int(num_traits::pow(BigInt::from(p), i));
    int(num) / den
}

pub(crate) fn b_series(p: u32, k: usize, order: usize) -> Series {
    binomial_root_series(p, order)
        .pow(k as u32)
        .scale(&int(factorial(k as u64)).recip())
}

/// `b_j = (1/k!) sum_{i_1+...+i_k=j} a_{i_1} ... a_{i_k}` for `j <= order`.
pub fn alpha_b_coefficients(p: u32, k: usize, order: usize) -> Result<Series> {
    if p < 2 || k == 0 {
        return Err(Error::InvalidArgument(format!(
            "need p >= 2 and k >= 1, got p = {p}, k = {k}"
        )));
    }
    Ok(b_series(p, k, order))
}

/// `|b_n| <= (2e)^n / n^k` for `1 <= k <= n <= n_max`.
pub fn alpha_b_bound_check(p: u32, n_max: usize, prec: u32) -> Result<Verdict> {
    let mut sweep = Sweep::new(Some((1, n_max as i64)));
    for k in 1..=n_max {
        let b = alpha_b_coefficients(p, k, n_max)?;
        for n in k..=n_max {
            let lhs = b.coeff(n).abs();
            let nk = int(num_traits::pow(BigInt::from(n), k));
            let (o, r) = certify_le(&lhs, |q| e_pow(n as u64, q).scale_pow2(n as i64).mul_rational(&nk.recip()), prec);
            sweep.record(o, &[p as i64, k as i64, n as i64], Interval::point(&lhs, prec), r, || {
                format!("|b_{n}| exceeds (2e)^n/n^k for p = {p}, k = {k}")
            });
        }
    }
    Ok(sweep.finish())
}

/// `x^{-(pn-k)/p}` as an enclosure; exact when `x` is a perfect `p`-th power.
fn x_power(x: &BigRational, p: u32, n: usize, k: usize, prec: u32) -> Result<Interval> {
    let root = Interval::point(x, prec).try_root(p)?;
    root.powi(-(p as i64 * n as i64 - k as i64))
}

/// `alpha_k^{(n)}(x, x) = n! b_n x^{-(pn-k)/p}` as an enclosure.
pub fn alpha_diag_enclose(p: u32, k: usize, n: usize, x: &BigRational, prec: u32) -> Result<Interval> {
    if !x.is_positive() {
        return Err(Error::InvalidArgument(format!("x = {x} must be positive")));
    }
    if n < k {
        return Ok(Interval::from_int(0, prec));
    }
    let b = alpha_b_coefficients(p, k, n)?.coeff(n) * int(factorial(n as u64));
    Ok(x_power(x, p, n, k, prec)?.mul_rational(&b))
}

/// `alpha_k^{(n)}(x, x)` in the requested mode; exact whenever `x^{1/p}` is
/// rational.
pub fn alpha_diag_derivative(p: u32, k: usize, n: usize, x: &BigRational, mode: Mode) -> Result<Scalar> {
    let v = alpha_diag_enclose(p, k, n, x, mode.working_bits())?;
    if v.is_point() {
        return Scalar::from_exact(v.lo().clone(), mode);
    }
    if mode == Mode::Exact {
        return Err(Error::NotExact(format!("{x}^(1/{p}) is irrational")));
    }
    Scalar::from_enclosure(&v, mode)
}

/// `|alpha_k^{(n)}(x,x)| <= (2e)^n n^{n-k} x^{-(pn-k)/p}` over
/// `p in p_set`, `1 <= k <= n <= n_max`, `x in x_grid`.
pub fn lemma2_check(p_set: &[u32], n_max: usize, x_grid: &[BigRational], prec: u32) -> Result<Verdict> {
    if let Some(x) = x_grid.iter().find(|x| !x.is_positive()) {
        return Err(Error::InvalidArgument(format!("grid point {x} is not positive")));
    }
    if let Some(p) = p_set.iter().find(|&&p| p < 2) {
        return Err(Error::InvalidArgument(format!("p = {p} must be >= 2")));
    }
    let mut sweep = Sweep::new(Some((1, n_max as i64)));
    for &p in p_set {
        for k in 1..=n_max {
            let b = b_series(p, k, n_max);
            for n in k..=n_max {
                let c = (b.coeff(n) * int(factorial(n as u64))).abs();
                let nn = int(num_traits::pow(BigInt::from(n), n - k));
                for (xi, x) in x_grid.iter().enumerate() {
                    let at = [p as i64, k as i64, n as i64, xi as i64];
                    let mut wp = prec;
                    loop {
                        let xp = x_power(x, p, n, k, wp)?;
                        let lhs = xp.mul_rational(&c);
                        let rhs = e_pow(n as u64, wp).scale_pow2(n as i64).mul_rational(&nn) * xp;
                        let o = if lhs.hi() <= rhs.lo() {
                            Outcome::Holds
                        } else if lhs.lo() > rhs.hi() {
                            Outcome::Fails
                        } else if wp >= PRECISION_CAP {
                            Outcome::Inconclusive
                        } else {
                            wp = (wp * 2).min(PRECISION_CAP);
                            continue;
                        };
                        sweep.record(o, &at, lhs, rhs, || {
                            format!("Lemma bound fails at p = {p}, k = {k}, n = {n}, x = {x}")
                        });
                        break;
                    }
                }
            }
        }
    }
    Ok(sweep.finish())
}

/// `1/(pn-k)! <= e^{pn} / n^{pn-k}`, checked as `n^{pn-k} <= (pn-k)! e^{pn}`.
pub fn stirling_ineq_check(p: u32, n: usize, k: usize, prec: u32) -> Result<Verdict> {
    let pn = p as usize * n;
    if p < 1 || n == 0 || k >= pn {
        return Err(Error::InvalidArgument(format!(
            "need n >= 1 and 0 <= k < pn, got p = {p}, n = {n}, k = {k}"
        )));
    }
    let mut sweep = Sweep::new(Some((n as i64, n as i64)));
    stirling_one(&mut sweep, p, n, k, prec);
    Ok(sweep.finish())
}

fn stirling_one(sweep: &mut Sweep, p: u32, n: usize, k: usize, prec: u32) {
    let pn = p as usize * n;
    let m = pn - k;
    let lhs = int(num_traits::pow(BigInt::from(n), m));
    let mf = int(factorial(m as u64));
    let (o, r) = certify_le(&lhs, |q| e_pow(pn as u64, q).mul_rational(&mf), prec);
    sweep.record(o, &[p as i64, n as i64, k as i64], Interval::point(&lhs, prec), r, || {
        format!("1/(pn-k)! > e^(pn)/n^(pn-k) at p = {p}, n = {n}, k = {k}")
    });
}

/// [`stirling_ineq_check`] over `p in p_set`, `1 <= n <= n_max`, `0 <= k < pn`.
pub fn stirling_sweep(p_set: &[u32], n_max: usize, prec: u32) -> Result<Verdict> {
    let mut sweep = Sweep::new(Some((1, n_max as i64)));
    for &p in p_set {
        if p == 0 {
            return Err(Error::InvalidArgument("p must be >= 1".into()));
        }
        for n in 1..=n_max {
            for k in 0..p as usize * n {
                stirling_one(&mut sweep, p, n, k, prec);
            }
        }
    }
    Ok(sweep.finish())
}
