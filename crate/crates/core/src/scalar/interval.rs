//! Outward-rounded intervals with rational endpoints.
//!
//! Endpoints are exact `BigRational`s. After every operation an endpoint that
//! has grown large is rounded (down for the lower end, up for the upper end)
//! to a dyadic rational carrying `prec` significant bits, so every result
//! encloses the exact value of the operation applied to any points of the
//! operands.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

use super::fixed::{self, Fx};

/// Mantissa bits used when an interval carries no precision of its own.
pub const DEFAULT_PRECISION: u32 = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
    prec: u32,
}

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

fn dyadic(m: BigInt, shift: i64) -> BigRational {
    if shift >= 0 {
        BigRational::new(m, pow2(shift as u64))
    } else {
        BigRational::from_integer(m << (-shift) as u64)
    }
}

fn is_pow2(d: &BigInt) -> bool {
    d.trailing_zeros() == Some(d.bits() - 1)
}

fn significant_bits(n: &BigInt) -> u64 {
    if n.is_zero() {
        0
    } else {
        n.bits() - n.trailing_zeros().unwrap_or(0)
    }
}

/// Rough binary exponent: `2^(e-1) <= |q| < 2^(e+1)`.
pub(crate) fn log2_estimate(q: &BigRational) -> i64 {
    q.numer().bits() as i64 - q.denom().bits() as i64
}

fn round_dir(q: &BigRational, prec: u32, up: bool, force: bool) -> BigRational {
    if q.is_zero() {
        return q.clone();
    }
    let prec = if prec == 0 { DEFAULT_PRECISION } else { prec };
    let (n, d) = (q.numer(), q.denom());
    if is_pow2(d) && significant_bits(n) <= prec as u64 + 2 {
        return q.clone();
    }
    if !force && n.bits() + d.bits() <= 2 * prec as u64 + 64 {
        return q.clone();
    }
    let shift = prec as i64 + 2 - log2_estimate(q);
    let scaled = if shift >= 0 {
        let num = n << shift as u64;
        if up {
            num.div_ceil(d)
        } else {
            num.div_floor(d)
        }
    } else {
        let den = d << (-shift) as u64;
        if up {
            n.div_ceil(&den)
        } else {
            n.div_floor(&den)
        }
    };
    dyadic(scaled, shift)
}

pub(crate) fn round_down(q: &BigRational, prec: u32) -> BigRational {
    round_dir(q, prec, false, false)
}

pub(crate) fn round_up(q: &BigRational, prec: u32) -> BigRational {
    round_dir(q, prec, true, false)
}

/// Nearest dyadic with `bits` significant bits (ties away from zero).
pub(crate) fn round_nearest(q: &BigRational, bits: u32) -> BigRational {
    if q.is_zero() {
        return q.clone();
    }
    let (n, d) = (q.numer(), q.denom());
    if is_pow2(d) && significant_bits(n) <= bits as u64 {
        return q.clone();
    }
    // exact binary exponent so the result carries exactly `bits` bits
    let mut e = log2_estimate(q);
    let abs = q.abs();
    while abs < pow2_rational(e - 1) {
        e -= 1;
    }
    while abs >= pow2_rational(e) {
        e += 1;
    }
    let shift = bits as i64 - e;
    let scaled = &abs * pow2_rational(shift);
    let floor = scaled.floor().to_integer();
    let frac = scaled - BigRational::from_integer(floor.clone());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let m = if frac >= half { floor + 1 } else { floor };
    let r = dyadic(m, shift);
    if q.is_negative() {
        -r
    } else {
        r
    }
}

pub(crate) fn pow2_rational(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(pow2(e as u64))
    } else {
        BigRational::new(BigInt::one(), pow2((-e) as u64))
    }
}

/// `q^n` for `q >= 0`, rounded in one direction after every product.
fn pow_directed(q: &BigRational, mut n: u32, prec: u32, up: bool) -> BigRational {
    let round = |x: &BigRational| round_dir(x, prec, up, false);
    let mut base = q.clone();
    let mut acc = BigRational::one();
    while n > 0 {
        if n & 1 == 1 {
            acc = round(&(&acc * &base));
        }
        n >>= 1;
        if n > 0 {
            base = round(&(&base * &base));
        }
    }
    acc
}

impl Interval {
    /// Interval `[lo, hi]`; panics if `lo > hi`.
    pub fn new(lo: BigRational, hi: BigRational, prec: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval {
            lo: round_down(&lo, prec),
            hi: round_up(&hi, prec),
            prec,
        }
    }

    pub fn point(q: &BigRational, prec: u32) -> Self {
        Interval {
            lo: round_down(q, prec),
            hi: round_up(q, prec),
            prec,
        }
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        Self::point(&BigRational::from_integer(n.into()), prec)
    }

    pub fn from_bigint(n: &BigInt, prec: u32) -> Self {
        Self::point(&BigRational::from_integer(n.clone()), prec)
    }

    pub fn ratio(num: i64, den: i64, prec: u32) -> Self {
        Self::point(&BigRational::new(num.into(), den.into()), prec)
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    fn working_prec(&self) -> u32 {
        if self.prec == 0 {
            DEFAULT_PRECISION
        } else {
            self.prec
        }
    }

    pub fn with_prec(mut self, prec: u32) -> Self {
        self.prec = prec;
        self
    }

    /// Forces both endpoints onto dyadics with `prec` significant bits.
    pub fn rounded(&self, prec: u32) -> Self {
        Interval {
            lo: round_dir(&self.lo, prec, false, true),
            hi: round_dir(&self.hi, prec, true, true),
            prec,
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    /// Largest absolute value in the interval.
    pub fn mag(&self) -> BigRational {
        let a = self.lo.abs();
        let b = self.hi.abs();
        if a > b {
            a
        } else {
            b
        }
    }

    /// Smallest absolute value in the interval.
    pub fn mig(&self) -> BigRational {
        if self.lo.is_positive() {
            self.lo.clone()
        } else if self.hi.is_negative() {
            -self.hi.clone()
        } else {
            BigRational::zero()
        }
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn encloses(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    /// `Some(ord)` when every point of `self` compares to every point of
    /// `other` the same way; equal points compare `Equal`.
    pub fn certain_cmp(&self, other: &Interval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.is_point() && other.is_point() && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Certified `self <= other`: `Some(true)` proven, `Some(false)` refuted.
    pub fn certainly_le(&self, other: &Interval) -> Option<bool> {
        if self.hi <= other.lo {
            Some(true)
        } else if self.lo > other.hi {
            Some(false)
        } else {
            None
        }
    }

    pub fn abs(&self) -> Interval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            -self.clone()
        } else {
            Interval {
                lo: BigRational::zero(),
                hi: self.mag(),
                prec: self.prec,
            }
        }
    }

    /// Enclosure of `max(x, y)` over both intervals.
    pub fn max_of(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            prec: self.prec.max(other.prec),
        }
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            prec: self.prec.max(other.prec),
        }
    }

    /// Widens symmetrically by `r >= 0`.
    pub fn widen(&self, r: &BigRational) -> Interval {
        Interval {
            lo: round_down(&(&self.lo - r), self.prec),
            hi: round_up(&(&self.hi + r), self.prec),
            prec: self.prec,
        }
    }

    pub fn clamp_unit(self) -> Interval {
        let one = BigRational::one();
        let lo = self.lo.max(-one.clone()).min(one.clone());
        let hi = self.hi.min(one.clone()).max(-one);
        Interval { lo, hi, prec: self.prec }
    }

    pub fn recip(&self) -> Result<Interval> {
        if self.contains_zero() {
            return Err(Error::InvalidArgument(
                "reciprocal of an interval containing zero".into(),
            ));
        }
        let p = self.prec;
        Ok(Interval {
            lo: round_down(&self.hi.recip(), p),
            hi: round_up(&self.lo.recip(), p),
            prec: p,
        })
    }

    pub fn checked_div(&self, other: &Interval) -> Result<Interval> {
        if other.contains_zero() {
            return Err(Error::InvalidArgument(
                "division by an interval containing zero".into(),
            ));
        }
        let p = self.prec.max(other.prec);
        if self.is_point() && other.is_point() {
            let q = &self.lo / &other.lo;
            return Ok(Interval::point(&q, p));
        }
        let c = [
            &self.lo / &other.lo,
            &self.lo / &other.hi,
            &self.hi / &other.lo,
            &self.hi / &other.hi,
        ];
        Ok(Self::from_candidates(&c, p))
    }

    fn from_candidates(c: &[BigRational], prec: u32) -> Interval {
        let mut lo = &c[0];
        let mut hi = &c[0];
        for x in &c[1..] {
            if x < lo {
                lo = x;
            }
            if x > hi {
                hi = x;
            }
        }
        Interval {
            lo: round_down(lo, prec),
            hi: round_up(hi, prec),
            prec,
        }
    }

    pub fn square(&self) -> Interval {
        self.pow(2)
    }

    pub fn pow(&self, n: u32) -> Interval {
        let p = self.working_prec();
        if n == 0 {
            return Interval::from_int(1, self.prec);
        }
        if !self.lo.is_negative() {
            Interval {
                lo: pow_directed(&self.lo, n, p, false),
                hi: pow_directed(&self.hi, n, p, true),
                prec: self.prec,
            }
        } else if !self.hi.is_positive() {
            let r = (-self.clone()).pow(n);
            if n.is_multiple_of(2) {
                r
            } else {
                -r
            }
        } else if n.is_multiple_of(2) {
            Interval {
                lo: BigRational::zero(),
                hi: pow_directed(&self.mag(), n, p, true),
                prec: self.prec,
            }
        } else {
            Interval {
                lo: -pow_directed(&(-self.lo.clone()), n, p, true),
                hi: pow_directed(&self.hi, n, p, true),
                prec: self.prec,
            }
        }
    }

    /// Integer power, negative exponents through the reciprocal.
    pub fn powi(&self, e: i64) -> Result<Interval> {
        let n = u32::try_from(e.unsigned_abs())
            .map_err(|_| Error::InvalidArgument(format!("exponent {e} too large")))?;
        if e >= 0 {
            Ok(self.pow(n))
        } else {
            self.pow(n).recip()
        }
    }

    pub fn mul_rational(&self, q: &BigRational) -> Interval {
        let (a, b) = if q.is_negative() { (&self.hi, &self.lo) } else { (&self.lo, &self.hi) };
        Interval {
            lo: round_down(&(a * q), self.prec),
            hi: round_up(&(b * q), self.prec),
            prec: self.prec,
        }
    }

    pub fn mul_int(&self, n: i64) -> Interval {
        self.mul_rational(&BigRational::from_integer(n.into()))
    }

    /// `self * 2^e`, exact.
    pub fn scale_pow2(&self, e: i64) -> Interval {
        let f = pow2_rational(e);
        Interval {
            lo: &self.lo * &f,
            hi: &self.hi * &f,
            prec: self.prec,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64().unwrap_or(f64::NAN)
    }

    /// `exp` over the interval; monotone so endpoints suffice.
    pub fn exp(&self) -> Interval {
        let p = self.working_prec();
        if self.is_point() {
            return exp_rational(&self.lo, p).with_prec(self.prec);
        }
        let lo = exp_rational(&self.lo, p);
        let hi = exp_rational(&self.hi, p);
        Interval {
            lo: lo.lo,
            hi: hi.hi,
            prec: self.prec,
        }
    }

    pub fn try_ln(&self) -> Result<Interval> {
        if !self.lo.is_positive() {
            return Err(Error::InvalidArgument(
                "logarithm of an interval not bounded away from zero".into(),
            ));
        }
        let p = self.working_prec();
        if self.is_point() {
            return Ok(ln_rational(&self.lo, p).with_prec(self.prec));
        }
        let lo = ln_rational(&self.lo, p);
        let hi = ln_rational(&self.hi, p);
        Ok(Interval {
            lo: lo.lo,
            hi: hi.hi,
            prec: self.prec,
        })
    }

    /// Principal `p`-th root of a nonnegative interval.
    pub fn try_root(&self, p: u32) -> Result<Interval> {
        if p == 0 {
            return Err(Error::InvalidArgument("zeroth root".into()));
        }
        if self.lo.is_negative() {
            return Err(Error::InvalidArgument("root of a negative interval".into()));
        }
        if p == 1 {
            return Ok(self.clone());
        }
        let wp = self.working_prec();
        let (lo, _) = root_rational(&round_dir(&self.lo, wp, false, true), p, wp);
        let (_, hi) = root_rational(&round_dir(&self.hi, wp, true, true), p, wp);
        Ok(Interval {
            lo: round_down(&lo, wp),
            hi: round_up(&hi, wp),
            prec: self.prec,
        })
    }

    pub fn sin_cos(&self) -> (Interval, Interval) {
        let p = self.working_prec();
        if self.width() >= BigRational::from_integer(2.into()) {
            let unit = Interval::new(-BigRational::one(), BigRational::one(), self.prec);
            return (unit.clone(), unit);
        }
        if self.is_point() && self.lo.is_zero() {
            return (Interval::from_int(0, self.prec), Interval::from_int(1, self.prec));
        }
        let (s, c) = sin_cos_narrow(self, p);
        (
            s.clamp_unit().with_prec(self.prec),
            c.clamp_unit().with_prec(self.prec),
        )
    }

    pub fn pi(prec: u32) -> Interval {
        cached(&PI_CACHE, prec, pi_enclosure).with_prec(prec)
    }

    pub fn ln2(prec: u32) -> Interval {
        cached(&LN2_CACHE, prec, ln2_enclosure).with_prec(prec)
    }

    pub fn e(prec: u32) -> Interval {
        Interval::from_int(1, prec).exp()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = crate::scalar::decimal::to_scientific(&self.lo, 20, false);
        let hi = crate::scalar::decimal::to_scientific(&self.hi, 20, true);
        write!(f, "[{lo}, {hi}]")
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        let p = self.prec.max(rhs.prec);
        Interval {
            lo: round_down(&(self.lo + rhs.lo), p),
            hi: round_up(&(self.hi + rhs.hi), p),
            prec: p,
        }
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        let p = self.prec.max(rhs.prec);
        Interval {
            lo: round_down(&(self.lo - rhs.hi), p),
            hi: round_up(&(self.hi - rhs.lo), p),
            prec: p,
        }
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
            prec: self.prec,
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        let p = self.prec.max(rhs.prec);
        if self.is_point() && rhs.is_point() {
            return Interval::point(&(&self.lo * &rhs.lo), p);
        }
        if self.is_point() {
            return rhs.with_prec(p).mul_rational(&self.lo);
        }
        if rhs.is_point() {
            return self.with_prec(p).mul_rational(&rhs.lo);
        }
        if !self.hi.is_positive() {
            return -((-self) * rhs);
        }
        if !rhs.hi.is_positive() {
            return -(self * (-rhs));
        }
        // both upper ends are positive from here on
        let (lo, hi) = match (self.lo.is_negative(), rhs.lo.is_negative()) {
            (false, false) => (&self.lo * &rhs.lo, &self.hi * &rhs.hi),
            (true, false) => (&self.lo * &rhs.hi, &self.hi * &rhs.hi),
            (false, true) => (&self.hi * &rhs.lo, &self.hi * &rhs.hi),
            (true, true) => {
                let (a, b) = (&self.lo * &rhs.hi, &self.hi * &rhs.lo);
                let (c, d) = (&self.lo * &rhs.lo, &self.hi * &rhs.hi);
                (a.min(b), c.max(d))
            }
        };
        Interval {
            lo: round_down(&lo, p),
            hi: round_up(&hi, p),
            prec: p,
        }
    }
}

impl Div for Interval {
    type Output = Interval;
    /// Panics when the divisor contains zero; see [`Interval::checked_div`].
    fn div(self, rhs: Interval) -> Interval {
        self.checked_div(&rhs).expect("interval division by zero")
    }
}

impl Zero for Interval {
    fn zero() -> Self {
        Interval {
            lo: BigRational::zero(),
            hi: BigRational::zero(),
            prec: 0,
        }
    }
    fn is_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }
}

impl One for Interval {
    fn one() -> Self {
        Interval {
            lo: BigRational::one(),
            hi: BigRational::one(),
            prec: 0,
        }
    }
}

type ConstCache = OnceLock<Mutex<HashMap<u32, Interval>>>;

static PI_CACHE: ConstCache = OnceLock::new();
static LN2_CACHE: ConstCache = OnceLock::new();

fn cached(cache: &ConstCache, prec: u32, compute: fn(u32) -> Interval) -> Interval {
    let key = prec.max(64).div_ceil(64) * 64;
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().unwrap().get(&key) {
        return v.clone();
    }
    let v = compute(key);
    map.lock().unwrap().insert(key, v.clone());
    v
}

fn from_fx(x: &Fx, prec: u32) -> Interval {
    let (lo, hi) = x.to_bounds();
    Interval { lo, hi, prec }.rounded(prec)
}

fn pi_enclosure(prec: u32) -> Interval {
    let wp = prec + 32;
    let a = fixed::atan_inv(5, wp).mul_int(16);
    let b = fixed::atan_inv(239, wp).mul_int(4);
    from_fx(&a.sub(&b), prec + 16)
}

fn ln2_enclosure(prec: u32) -> Interval {
    let wp = prec + 32;
    let third = BigRational::new(1.into(), 3.into());
    from_fx(&fixed::atanh_small(&third, wp).mul_int(2), prec + 16)
}

/// Certified enclosure of `exp(x)` for rational `x`.
pub(crate) fn exp_rational(x: &BigRational, prec: u32) -> Interval {
    if x.is_zero() {
        return Interval::from_int(1, prec);
    }
    if x.is_negative() {
        let p = exp_rational(&-x, prec + 8);
        return p.recip().expect("exp is positive").rounded(prec + 8).with_prec(prec);
    }
    let e = log2_estimate(x).max(0) as u32;
    let s = e + 8;
    let wp = prec + s + 32;
    let mut y = fixed::exp_small(&(x * pow2_rational(-(s as i64))), wp);
    for _ in 0..s {
        y = y.square();
    }
    from_fx(&y, prec + 8).with_prec(prec)
}

/// Certified enclosure of `ln(x)` for rational `x > 0`.
pub(crate) fn ln_rational(x: &BigRational, prec: u32) -> Interval {
    assert!(x.is_positive(), "ln of a nonpositive rational");
    if x.is_one() {
        return Interval::from_int(0, prec);
    }
    let mut e = log2_estimate(x);
    let mut y = x * pow2_rational(-e);
    // bring y into [2/3, 4/3] so |z| <= 1/5
    if y > BigRational::new(4.into(), 3.into()) {
        y /= BigRational::from_integer(2.into());
        e += 1;
    } else if y < BigRational::new(2.into(), 3.into()) {
        y *= BigRational::from_integer(2.into());
        e -= 1;
    }
    let wp = prec + 32 + (64 - e.unsigned_abs().leading_zeros());
    let one = BigRational::one();
    let z = (&y - &one) / (&y + &one);
    let mut t = fixed::atanh_small(&z.abs(), wp).mul_int(2);
    if z.is_negative() {
        t = t.neg();
    }
    if e != 0 {
        let l = Interval::ln2(wp);
        t = t.add(&Fx::from_bounds(&l.lo, &l.hi, wp).mul_int(e));
    }
    from_fx(&t, prec + 8).with_prec(prec)
}

/// Floor and ceiling of `q^(1/p)` as dyadics with about `prec` bits.
fn root_rational(q: &BigRational, p: u32, prec: u32) -> (BigRational, BigRational) {
    if q.is_zero() {
        return (q.clone(), q.clone());
    }
    // q = m * 2^-t with t >= 0 since q is dyadic or an integer
    let (m, t) = {
        let d = q.denom();
        debug_assert!(is_pow2(d));
        (q.numer().clone(), d.bits() as i64 - 1)
    };
    let target = prec as i64 + 8;
    let mbits = m.bits() as i64;
    // N = m * 2^(p*s - t); root = N^(1/p) / 2^s
    let mut s = (target - mbits / p as i64).max(0);
    while p as i64 * s < t {
        s += 1;
    }
    let n = m << (p as i64 * s - t) as u64;
    let r = n.nth_root(p);
    let exact = r.pow(p) == n;
    let lo = dyadic(r.clone(), s);
    let hi = if exact { lo.clone() } else { dyadic(r + 1, s) };
    (lo, hi)
}

fn sin_cos_narrow(x: &Interval, prec: u32) -> (Interval, Interval) {
    let mid = x.mid();
    // quadrant index k = round(mid / (pi/2)), chosen from a coarse enclosure
    let coarse = Interval::pi(64).scale_pow2(-1);
    let k: BigInt = (mid / coarse.mid()).round().to_integer();
    let kbits = k.bits() as u32;
    let halvings: u32 = 8;
    let wp = prec + kbits + halvings + 32;
    let x = x.clone().with_prec(wp);
    let r = if k.is_zero() {
        x
    } else {
        let half_pi = Interval::pi(wp + kbits).scale_pow2(-1).with_prec(wp);
        x - half_pi * Interval::from_bigint(&k, wp)
    };
    let t = r.scale_pow2(-(halvings as i64));
    let t = Fx::from_bounds(&t.lo, &t.hi, wp);
    let (mut s, mut c) = fixed::sin_cos_small(&t);
    let one = Fx::from_int(1, wp);
    for _ in 0..halvings {
        let s2 = s.mul(&c).mul_int(2);
        let c2 = one.sub(&s.square().mul_int(2));
        s = s2.clamp_unit();
        c = c2.clamp_unit();
    }
    let (s, c) = match k.mod_floor(&BigInt::from(4)).to_u8().unwrap_or(0) {
        0 => (s, c),
        1 => (c, s.neg()),
        2 => (s.neg(), c.neg()),
        _ => (c.neg(), s),
    };
    (from_fx(&s, prec + 4), from_fx(&c, prec + 4))
}
