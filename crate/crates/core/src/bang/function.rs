use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{factorial, int};
use crate::scalar::interval::{pow2_rational, round_up};
use crate::scalar::fixed::Fx;
use crate::scalar::Interval;
use crate::seq::{is_log_convex, Outcome, Scope, Verdict, WeightSequence, Which, Witness};
use crate::transforms::derived_power_enclose;

/// Profile `g` in `F(xi) = sum_k M'_k / (2 m_k)^k g(2 m_k xi)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Oscillator {
    Cosine,
    /// `C_p`; derivatives are available at `xi = 0` only.
    Cp(u32),
}

impl Oscillator {
    /// Power `p` in `F(xi) = f(xi^p)`.
    pub fn p(&self) -> u32 {
        match *self {
            Oscillator::Cosine => 2,
            Oscillator::Cp(p) => p,
        }
    }
}

/// Truncated extremal function
/// `F(xi) = sum_{k <= K} M'_k / (2 m_k)^k g(2 m_k xi)` with `m_k = M'_{k+1}/M'_k`.
///
/// When `M'` is log-convex, every term of `F^{(n)}` with `k >= n` is at most
/// `2^{n-k} M'_n`, so the omitted terms add at most `M'_n 2^{n-K}`.
#[derive(Clone, Debug)]
pub struct BangFunction {
    seq: WeightSequence,
    oscillator: Oscillator,
    truncation: usize,
    prec: u32,
    /// `M'_k` for `k <= K`.
    derived: Vec<Interval>,
    /// `2 m_k` for `k <= K`.
    freq: Vec<Interval>,
    /// `M'_k / (2 m_k)^k`.
    coef: Vec<Interval>,
    /// Per-order cache of [`BangFunction::scaled_terms`].
    scaled: Vec<OnceLock<Vec<Fx>>>,
    tail_scope: Scope,
}

impl BangFunction {
    /// Truncation `K = max_order + tail_bits`, so that the relative tail of
    /// every derivative up to `max_order` is at most `2^-tail_bits`.
    pub fn new(
        seq: &WeightSequence,
        oscillator: Oscillator,
        max_order: usize,
        tail_bits: u32,
        prec: u32,
    ) -> Result<Self> {
        Self::with_truncation(seq, oscillator, max_order + tail_bits as usize, prec)
    }

    /// Builds the truncation at `K`, after certifying `m_0 <= ... <= m_K`.
    pub fn with_truncation(seq: &WeightSequence, oscillator: Oscillator, k: usize, prec: u32) -> Result<Self> {
        if oscillator.p() == 0 {
            return Err(Error::InvalidArgument("C_p needs p >= 1".into()));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("truncation must be >= 1".into()));
        }
        seq.check_index(k + 1)?;
        let gate = is_log_convex(seq, 1..=k, Which::Derived, prec)?;
        if !gate.is_holds() {
            let detail = gate
                .witness
                .as_ref()
                .map(|w| format!(" ({} at {:?})", w.note, w.at))
                .unwrap_or_default();
            return Err(Error::Precondition(format!(
                "M' of {} is not certified log-convex on [0, {k}]: {}{detail}",
                seq.family().tag(),
                gate.outcome
            )));
        }
        let tail_scope = gate.scope.clone();
        let mut derived = Vec::with_capacity(k + 1);
        let mut freq = Vec::with_capacity(k + 1);
        let mut coef = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let d = seq.derived_enclose(i, prec)?;
            let f = seq.ratio_enclose(i, prec)?.scale_pow2(1);
            coef.push(d.clone().checked_div(&f.pow(i as u32))?);
            derived.push(d);
            freq.push(f);
        }
        Ok(BangFunction {
            seq: seq.clone(),
            oscillator,
            truncation: k,
            prec,
            derived,
            freq,
            coef,
            scaled: (0..=k).map(|_| OnceLock::new()).collect(),
            tail_scope,
        })
    }

    pub fn seq(&self) -> &WeightSequence {
        &self.seq
    }

    pub fn oscillator(&self) -> Oscillator {
        self.oscillator
    }

    pub fn p(&self) -> u32 {
        self.oscillator.p()
    }

    /// Truncation index `K`.
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// `Global` when log-convexity of `M'` is known beyond `K`; otherwise the
    /// tail bound rests on the certified window only.
    pub fn tail_scope(&self) -> &Scope {
        &self.tail_scope
    }

    /// `M'_n` as used by the construction.
    pub fn derived(&self, n: usize) -> Result<&Interval> {
        self.derived.get(n).ok_or(Error::OutOfRange {
            index: n,
            last: self.truncation,
        })
    }

    /// `2^{n-K}`, the tail relative to `M'_n`.
    pub fn relative_tail(&self, n: usize) -> BigRational {
        pow2_rational(n as i64 - self.truncation as i64)
    }

    /// Upper bound `M'_n 2^{n-K}` for the omitted terms of `F^{(n)}`, rounded
    /// up to the working precision.
    pub fn tail_bound(&self, n: usize) -> Result<BigRational> {
        Ok(round_up(&(self.derived(n)?.hi() * self.relative_tail(n)), self.prec))
    }

    fn check_order(&self, n: usize) -> Result<()> {
        if n > self.truncation {
            return Err(Error::InvalidArgument(format!(
                "derivative order {n} exceeds truncation {}",
                self.truncation
            )));
        }
        Ok(())
    }

    fn check_point(&self, xi: &Interval) -> Result<()> {
        match self.oscillator {
            Oscillator::Cosine => {
                if xi.mag() > BigRational::from_integer(1.into()) {
                    return Err(Error::InvalidArgument(format!("xi = {xi} is outside [-1, 1]")));
                }
            }
            Oscillator::Cp(p) => {
                if !(xi.is_point() && xi.lo().is_zero()) {
                    return Err(Error::Precondition(format!(
                        "C_{p} variant derivatives are certified at xi = 0 only, got {xi}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Sum of the first `K + 1` terms of `F^{(n)}(xi)`, without the tail.
    pub fn partial_derivative(&self, n: usize, xi: &Interval) -> Result<Interval> {
        Ok(self.partial_derivatives(&[n], xi)?.remove(0))
    }

    /// Enclosure of `F^{(n)}(xi)`, including the tail.
    pub fn derivative(&self, n: usize, xi: &Interval) -> Result<Interval> {
        Ok(self.derivatives(&[n], xi)?.remove(0))
    }

    /// Enclosures of `F^{(n)}(xi)` for each order, sharing the oscillator values.
    pub fn derivatives(&self, orders: &[usize], xi: &Interval) -> Result<Vec<Interval>> {
        let partial = self.partial_derivatives(orders, xi)?;
        orders
            .iter()
            .zip(partial)
            .map(|(&n, s)| Ok(s.widen(&self.tail_bound(n)?)))
            .collect()
    }

    /// `M'_k (2 m_k)^{n-k} / M'_n` for `k <= K`, bounded by `2^n` under the gate.
    fn scaled_terms(&self, n: usize) -> Result<&[Fx]> {
        if let Some(v) = self.scaled[n].get() {
            return Ok(v);
        }
        let wp = self.prec + 16;
        let inv = self.derived[n].recip()?;
        let terms = (0..=self.truncation)
            .map(|k| {
                let t = self.coef[k].clone() * self.freq[k].pow(n as u32) * inv.clone();
                Fx::from_bounds(t.lo(), t.hi(), wp)
            })
            .collect();
        Ok(self.scaled[n].get_or_init(|| terms))
    }

    fn partial_derivatives(&self, orders: &[usize], xi: &Interval) -> Result<Vec<Interval>> {
        for &n in orders {
            self.check_order(n)?;
        }
        self.check_point(xi)?;
        let wp = self.prec + 16;
        let tables = orders
            .iter()
            .map(|&n| self.scaled_terms(n))
            .collect::<Result<Vec<_>>>()?;
        let mut sums = vec![Fx::from_int(0, wp); orders.len()];
        for k in 0..=self.truncation {
            // n-th derivative of g(a xi) is a^n g^{(n)}(a xi)
            let quarter = match self.oscillator {
                Oscillator::Cosine => {
                    let (s, c) = (self.freq[k].clone() * xi.clone()).sin_cos();
                    let s = Fx::from_bounds(s.lo(), s.hi(), wp);
                    let c = Fx::from_bounds(c.lo(), c.hi(), wp);
                    Some([c.clone(), s.neg(), c.neg(), s])
                }
                Oscillator::Cp(_) => None,
            };
            for ((sum, &n), table) in sums.iter_mut().zip(orders).zip(&tables) {
                let term = &table[k];
                *sum = match &quarter {
                    Some(q) => sum.add(&term.mul(&q[n % 4])),
                    None if n % self.p() as usize == 0 => sum.add(term),
                    None => continue,
                };
            }
        }
        orders
            .iter()
            .zip(sums)
            .map(|(&n, sum)| {
                let (lo, hi) = sum.to_bounds();
                Ok(Interval::new(lo, hi, self.prec) * self.derived[n].clone())
            })
            .collect()
    }
}

fn at_zero(prec: u32) -> Interval {
    Interval::from_int(0, prec)
}

/// Certifies `|F^{(pn)}(0)| >= M'_{pn}`.
///
/// All terms of `F^{(pn)}(0)` share one sign, so the truncated sum is a lower
/// bound for the modulus on its own; the tail only enters a failure.
pub fn bang_lower_bound_certify(b: &BangFunction, n: usize) -> Result<Verdict> {
    let pn = b.p() as usize * n;
    let partial = b.partial_derivative(pn, &at_zero(b.prec))?.abs();
    let target = b.derived(pn)?.clone();
    let window = Some((n as i64, n as i64));
    if partial.lo() >= target.hi() {
        return Ok(Verdict::holds(window, 1));
    }
    let upper = partial.hi() + b.tail_bound(pn)?;
    let w = Witness {
        at: vec![n as i64],
        lhs: Some(partial.clone()),
        rhs: Some(target.clone()),
        note: format!("|F^({pn})(0)| below M'_{pn}"),
    };
    if &upper < target.lo() {
        return Ok(Verdict::fails(window, w, 1));
    }
    let mut v = Verdict::inconclusive(window, None, 1);
    v.witness = Some(w);
    Ok(v)
}

/// `f^{(n)}(0) = n!/(pn)! F^{(pn)}(0)` for `F(xi) = f(xi^p)`, with the
/// certified comparison `|f^{(n)}(0)| >= n! M'_{pn} / (pn)!`.
pub fn induced_f_derivative(b: &BangFunction, n: usize) -> Result<(Interval, Verdict)> {
    let pn = b.p() as usize * n;
    let scale = int(factorial(n as u64)) / int(factorial(pn as u64));
    let value = b.derivative(pn, &at_zero(b.prec))?.mul_rational(&scale);
    // the factor n!/(pn)! is positive and exact, so the comparison is unchanged
    let mut verdict = bang_lower_bound_certify(b, n)?;
    if let Some(w) = verdict.witness.as_mut() {
        w.lhs = w.lhs.take().map(|x| x.mul_rational(&scale));
        w.rhs = w.rhs.take().map(|x| x.mul_rational(&scale));
        w.note = format!("|f^({n})(0)| below {n}! M'_{pn} / ({pn})!");
    }
    Ok((value, verdict))
}

/// `|F^{(n)}(xi)| <= 2^{n+1} M'_n` for `n` in `orders` and `xi` in `grid`.
pub fn bang_envelope_check(b: &BangFunction, orders: &[usize], grid: &[BigRational]) -> Result<Verdict> {
    let mut sweep = crate::comb::Sweep::new(None);
    for (i, x) in grid.iter().enumerate() {
        let xi = Interval::point(x, b.prec);
        let values = b.derivatives(orders, &xi)?;
        for (&n, v) in orders.iter().zip(values) {
            let v = v.abs();
            let bound = b.derived(n)?.scale_pow2(n as i64 + 1);
            let o = if v.hi() <= bound.lo() {
                Outcome::Holds
            } else if v.lo() > bound.hi() {
                Outcome::Fails
            } else {
                Outcome::Inconclusive
            };
            sweep.record(o, &[n as i64, i as i64], v, bound, || {
                format!("|F^({n})({x})| exceeds 2^{} M'_{n}", n + 1)
            });
        }
    }
    Ok(sweep.finish())
}

/// `n (2e)^n (eA)^{pn} M'_{pn} / n^{(p-1)n}`.
pub fn theorem1_bound(seq: &WeightSequence, a: &BigRational, p: u32, n: usize, prec: u32) -> Result<Interval> {
    if a <= &BigRational::zero() {
        return Err(Error::InvalidArgument(format!("A must be positive, got {a}")));
    }
    if p < 2 || n == 0 {
        return Err(Error::InvalidArgument(format!("need p >= 2 and n >= 1, got p = {p}, n = {n}")));
    }
    let pn = p as usize * n;
    let e = Interval::e(prec);
    let a_pow = num_traits::pow(a.clone(), pn);
    Ok(e.pow((n + pn) as u32)
        .mul_rational(&(a_pow * int(BigInt::from(n)) * int(BigInt::from(1) << n)))
        * derived_power_enclose(seq, p, n, prec)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    const P: u32 = 128;

    fn il2() -> WeightSequence {
        WeightSequence::iterated_log(2, None).unwrap()
    }

    #[test]
    fn odd_derivatives_vanish_at_zero() {
        let b = BangFunction::new(&il2(), Oscillator::Cosine, 9, 64, P).unwrap();
        for n in [1, 3, 5, 9] {
            let v = b.derivative(n, &at_zero(P)).unwrap();
            assert!(v.contains(&BigRational::zero()));
            assert!(v.width() <= b.tail_bound(n).unwrap() * int(2));
        }
    }

    #[test]
    fn second_derivative_is_negative_sum() {
        let seq = il2();
        let b = BangFunction::new(&seq, Oscillator::Cosine, 2, 40, P).unwrap();
        let v = b.partial_derivative(2, &at_zero(P)).unwrap();
        // term-wise oracle in f64
        let mut want = 0.0;
        for k in 0..=b.truncation() {
            let d = seq.derived_enclose(k, P).unwrap().to_f64();
            let m = seq.ratio_enclose(k, P).unwrap().to_f64();
            want -= d * (2.0 * m).powi(2 - k as i32);
        }
        assert!((v.to_f64() - want).abs() < 1e-12 * want.abs(), "{v} vs {want}");
        assert!(v.hi() < &BigRational::zero());
    }

    #[test]
    fn lower_bounds_and_induced_germ() {
        let seq = il2();
        let b = BangFunction::new(&seq, Oscillator::Cosine, 12, 64, P).unwrap();
        for n in 0..=6 {
            assert!(bang_lower_bound_certify(&b, n).unwrap().is_holds(), "n = {n}");
        }
        let f0 = b.derivative(0, &at_zero(P)).unwrap();
        let (g0, v) = induced_f_derivative(&b, 0).unwrap();
        assert_eq!(g0, f0);
        assert!(v.is_holds());
        let c = BangFunction::new(&seq, Oscillator::Cp(3), 24, 64, P).unwrap();
        for n in 0..=8 {
            assert!(bang_lower_bound_certify(&c, n).unwrap().is_holds(), "n = {n}");
        }
        let e = BangFunction::new(&seq, Oscillator::Cp(1), 5, 64, P).unwrap();
        let (f3, _) = induced_f_derivative(&e, 3).unwrap();
        assert_eq!(f3, e.derivative(3, &at_zero(P)).unwrap());
        assert!(c.derivative(1, &Interval::ratio(1, 2, P)).is_err());
    }

    #[test]
    fn gate_rejects_non_log_convex() {
        let bad = WeightSequence::custom_table(vec![int(1), int(10), int(1), int(1), int(1)]).unwrap();
        let r = BangFunction::with_truncation(&bad, Oscillator::Cosine, 3, P);
        assert!(matches!(r, Err(Error::Precondition(_))));
        assert!(BangFunction::with_truncation(&bad, Oscillator::Cosine, 9, P).is_err());
    }

    #[test]
    fn envelope_on_small_grid() {
        let b = BangFunction::new(&il2(), Oscillator::Cosine, 6, 64, P).unwrap();
        let grid = super::super::uniform_grid(&int(-1), &int(1), 8);
        let orders: Vec<usize> = (0..=6).collect();
        assert!(bang_envelope_check(&b, &orders, &grid).unwrap().is_holds());
    }

    #[test]
    fn theorem1_examples() {
        let g = WeightSequence::gevrey(int(1)).unwrap();
        let e = std::f64::consts::E;
        let v = theorem1_bound(&g, &int(1), 2, 2, P).unwrap();
        let want = 2.0 * (2.0 * e).powi(2) * e.powi(4) * 24.0 * 24.0 / 4.0;
        assert!((v.to_f64() - want).abs() < 1e-10 * want);
        let v1 = theorem1_bound(&g, &rational(1, 2), 3, 1, P).unwrap();
        let want1 = 2.0 * e * (e / 2.0).powi(3) * 36.0;
        assert!((v1.to_f64() - want1).abs() < 1e-10 * want1);
        let big = theorem1_bound(&g, &int(2), 3, 1, P).unwrap();
        assert!(big.lo() > v1.hi());
        assert!(theorem1_bound(&g, &int(0), 2, 1, P).is_err());
        assert!(theorem1_bound(&g, &int(1), 1, 1, P).is_err());
    }
}
