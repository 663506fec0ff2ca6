//! Class-level tests: the Denjoy-Carleman series, closure under derivation,
//! and inclusion between classes.

use std::ops::RangeInclusive;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Interval, Mode, Real, Scalar};
use crate::seq::{monotone_oracle, Family, Outcome, Trend, Verdict, WeightSequence};

/// Window maximum of a root-type quantity together with its verdict.
#[derive(Clone, Debug)]
pub struct Estimate {
    /// Enclosure of the window maximum.
    pub value: Interval,
    /// Index at which the maximum is attained.
    pub at: usize,
    pub verdict: Verdict,
}

/// `M_n / ((n+1) M_{n+1}) = 1 / m_n` in any [`Real`] type.
pub fn dc_term<T: Real>(seq: &WeightSequence, n: usize, prec: u32) -> Result<T> {
    if let Some(m) = seq.ratio_exact(n)? {
        return Ok(T::from_rational(&m.recip(), prec));
    }
    let d: T = seq.eval_log::<T>(n, prec)? - seq.eval_log::<T>(n + 1, prec)?;
    Ok(d.exp() / T::from_i64(n as i64 + 1, prec))
}

fn dc_term_enclose(seq: &WeightSequence, n: usize, prec: u32) -> Result<Interval> {
    if let Some(m) = seq.ratio_exact(n)? {
        return Ok(Interval::point(&m.recip(), prec));
    }
    let d = seq.log_enclose(n, prec)? - seq.log_enclose(n + 1, prec)?;
    Ok(d.exp().mul_rational(&BigRational::new(1.into(), (n as i64 + 1).into())))
}

/// Partial sums `S_0, ..., S_N` of `sum M_n / ((n+1) M_{n+1})` in any [`Real`] type.
pub fn dc_partial_sums<T: Real>(seq: &WeightSequence, big_n: usize, prec: u32) -> Result<Vec<T>> {
    seq.check_index(big_n + 1)?;
    let mut acc = T::zero();
    let mut out = Vec::with_capacity(big_n + 1);
    for n in 0..=big_n {
        acc = acc + dc_term::<T>(seq, n, prec)?;
        out.push(acc.clone());
    }
    Ok(out)
}

/// Certified enclosure of `S_N`.
pub fn dc_partial_sum_enclose(seq: &WeightSequence, big_n: usize, prec: u32) -> Result<Interval> {
    seq.check_index(big_n + 1)?;
    let mut acc = Interval::zero().with_prec(prec);
    for n in 0..=big_n {
        acc = acc + dc_term_enclose(seq, n, prec)?;
    }
    Ok(acc)
}

/// `S_N = sum_{n=0}^{N} M_n / ((n+1) M_{n+1})` in the requested mode.
pub fn dc_partial_sum(seq: &WeightSequence, big_n: usize, mode: Mode) -> Result<Scalar> {
    seq.check_index(big_n + 1)?;
    let mut exact = Some(BigRational::zero());
    for n in 0..=big_n {
        match (exact.as_mut(), seq.ratio_exact(n)?) {
            (Some(acc), Some(m)) => *acc += m.recip(),
            _ => {
                exact = None;
                break;
            }
        }
    }
    match exact {
        Some(q) => Scalar::from_exact(q, mode),
        None if mode == Mode::Exact => Err(Error::NotExact(format!(
            "Denjoy-Carleman sum of {}",
            seq.family().tag()
        ))),
        None => Scalar::from_enclosure(&dc_partial_sum_enclose(seq, big_n, mode.working_bits())?, mode),
    }
}

/// Last terms and the local slope of `S_N` against `ln N` over the second
/// half of `[1, N]`.
pub fn dc_trend(seq: &WeightSequence, big_n: usize) -> Result<Trend> {
    let sums = dc_partial_sums::<f64>(seq, big_n, 53)?;
    let terms: Vec<f64> = (0..=big_n)
        .map(|n| if n == 0 { sums[0] } else { sums[n] - sums[n - 1] })
        .collect();
    let half = (big_n / 2).max(1);
    let slope = if big_n > half {
        (sums[big_n] - sums[half]) / ((big_n as f64).ln() - (half as f64).ln())
    } else {
        f64::NAN
    };
    Ok(Trend {
        last_values: terms[terms.len().saturating_sub(5)..].to_vec(),
        growth: slope,
        note: "slope of partial sums against ln N".into(),
    })
}

fn gevrey_qa(s: &BigRational, provenance: &str) -> (Outcome, String) {
    if s.is_positive() {
        (
            Outcome::Fails,
            format!("{provenance}: terms decay like a p-series with exponent > 1"),
        )
    } else {
        (Outcome::Holds, format!("{provenance}: harmonic series diverges"))
    }
}

/// Family-level quasianalyticity, with nested substitutions flattened.
fn qa_oracle(seq: &WeightSequence, p: u32) -> Option<(Outcome, String)> {
    match seq.family() {
        Family::Analytic => Some((Outcome::Holds, "analytic class: harmonic series diverges".into())),
        Family::Gevrey(s) if p == 1 => Some(gevrey_qa(s, "Gevrey class")),
        Family::Gevrey(s) => Some(gevrey_qa(s, "power-substituted Gevrey class")),
        Family::IteratedLog { k, .. } if p == 1 => Some((
            Outcome::Holds,
            format!("iterated-log sequence (k = {k}) is quasianalytic"),
        )),
        Family::IteratedLog { k, .. } => {
            if *k > 1 {
                Some((
                    Outcome::Holds,
                    format!("power substitution of the k = {k} iterated-log sequence is quasianalytic when k > 1"),
                ))
            } else {
                Some((
                    Outcome::Fails,
                    "power substitution of the k = 1 iterated-log sequence is not quasianalytic (Cauchy condensation)".into(),
                ))
            }
        }
        Family::PowerSub { base, p: q } => qa_oracle(base, p * q),
        Family::Regularized(_) | Family::Custom(_) => None,
    }
}

/// Quasianalyticity of the class of `seq`. Only family oracles decide it;
/// other sequences get trend data over `[0, window_end]`.
pub fn quasianalytic_verdict_on(seq: &WeightSequence, window_end: usize) -> Result<Verdict> {
    if let Some((outcome, provenance)) = qa_oracle(seq, 1) {
        return Ok(Verdict::oracle(outcome, provenance));
    }
    let end = match seq.domain_end() {
        Some(last) => window_end.min(last.saturating_sub(1)),
        None => window_end,
    };
    let trend = dc_trend(seq, end)?;
    Ok(Verdict::inconclusive(Some((0, end as i64)), Some(trend), end + 1))
}

pub fn quasianalytic_verdict(seq: &WeightSequence) -> Result<Verdict> {
    quasianalytic_verdict_on(seq, *crate::seq::DEFAULT_WINDOW.end())
}

fn root_trend(values: &[Interval]) -> Trend {
    let tail: Vec<f64> = values[values.len().saturating_sub(5)..]
        .iter()
        .map(Interval::to_f64)
        .collect();
    let growth = match tail.as_slice() {
        [.., a, b] if *a > 0.0 => b / a,
        _ => 1.0,
    };
    let note = if growth > 1.0 + 1e-12 {
        "increasing"
    } else {
        "flat or decreasing"
    };
    Trend {
        last_values: tail,
        growth,
        note: format!("ratio of the last two values ({note})"),
    }
}

fn window_max(values: &[Interval], start: usize) -> (Interval, usize) {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if v.mid() > values[best].mid() {
            best = i;
        }
    }
    let lo = values.iter().map(|v| v.lo().clone()).max().unwrap();
    let hi = values.iter().map(|v| v.hi().clone()).max().unwrap();
    let prec = values[0].prec();
    (Interval::new(lo, hi, prec), start + best)
}

/// `x^{1/n}` for a positive enclosure.
fn nth_root(x: &Interval, n: usize) -> Result<Interval> {
    if n == 1 {
        return Ok(x.clone());
    }
    if x.is_point() {
        return x.try_root(n as u32);
    }
    let l = x.try_ln()?.mul_rational(&BigRational::new(1.into(), (n as i64).into()));
    Ok(l.exp())
}

fn checked_window(window: &RangeInclusive<usize>) -> Result<(usize, usize)> {
    if *window.start() == 0 || window.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "window [{}, {}] must be nonempty and start at n >= 1",
            window.start(),
            window.end()
        )));
    }
    Ok((*window.start(), *window.end()))
}

fn closure_oracle(seq: &WeightSequence) -> Option<String> {
    match seq.family() {
        Family::Analytic => Some("all ratios equal 1".into()),
        Family::Gevrey(_) => Some("(n+1)^(s/n) is bounded".into()),
        Family::IteratedLog { .. } => {
            Some("ratios grow like a power of log^k n, whose n-th root is bounded".into())
        }
        Family::PowerSub { base, .. } => closure_oracle(base)
            .map(|p| format!("p consecutive ratios of a closed sequence ({p})")),
        _ => None,
    }
}

fn finish_estimate(
    values: Vec<Interval>,
    start: usize,
    oracle: Option<String>,
) -> Estimate {
    let end = start + values.len() - 1;
    let span = Some((start as i64, end as i64));
    let (value, at) = window_max(&values, start);
    let verdict = match oracle {
        Some(provenance) => Verdict::holds(span, values.len())
            .with_scope(crate::seq::Scope::Global { provenance }),
        None => Verdict::inconclusive(span, Some(root_trend(&values)), values.len()),
    };
    Estimate { value, at, verdict }
}

/// Window maximum of `(M_{n+1} / M_n)^{1/n}`.
pub fn derivation_closure_estimate(
    seq: &WeightSequence,
    window: RangeInclusive<usize>,
    prec: u32,
) -> Result<Estimate> {
    let (start, mut end) = checked_window(&window)?;
    if let Some(last) = seq.domain_end() {
        end = end.min(last.saturating_sub(1));
    }
    if start > end {
        return Err(Error::InvalidArgument("window is empty on the sequence's domain".into()));
    }
    let mut values = Vec::with_capacity(end - start + 1);
    for n in start..=end {
        let q = match (seq.exact(n)?, seq.exact(n + 1)?) {
            (Some(a), Some(b)) => Interval::point(&(b / a), prec),
            _ => (seq.log_enclose(n + 1, prec)? - seq.log_enclose(n, prec)?).exp(),
        };
        values.push(nth_root(&q, n)?);
    }
    Ok(finish_estimate(values, start, closure_oracle(seq)))
}

fn same_sequence(a: &WeightSequence, b: &WeightSequence) -> bool {
    if a.ptr_eq(b) {
        return true;
    }
    match (a.family(), b.family()) {
        (Family::Analytic, Family::Analytic) => true,
        (Family::Gevrey(s), Family::Gevrey(t)) => s == t,
        (
            Family::IteratedLog { k, offset, .. },
            Family::IteratedLog { k: k2, offset: o2, .. },
        ) => k == k2 && offset == o2,
        (Family::PowerSub { base, p }, Family::PowerSub { base: b2, p: p2 }) => {
            p == p2 && same_sequence(base, b2)
        }
        _ => false,
    }
}

fn inclusion_oracle(m: &WeightSequence, n: &WeightSequence) -> Option<String> {
    if same_sequence(m, n) {
        return Some("identical sequences".into());
    }
    match (m.family(), n.family()) {
        (Family::Analytic, _) => {
            monotone_oracle(n).map(|p| format!("M = 1 and N is nondecreasing ({p})"))
        }
        (Family::Gevrey(s), Family::Gevrey(t)) if s <= t => {
            Some("(n!)^s <= (n!)^t for s <= t".into())
        }
        _ => None,
    }
}

/// Window maximum of `(M_n / N_n)^{1/n}`.
pub fn inclusion_estimate(
    m: &WeightSequence,
    big_n: &WeightSequence,
    window: RangeInclusive<usize>,
    prec: u32,
) -> Result<Estimate> {
    let (start, mut end) = checked_window(&window)?;
    for s in [m, big_n] {
        if let Some(last) = s.domain_end() {
            end = end.min(last);
        }
    }
    if start > end {
        return Err(Error::InvalidArgument("window is empty on the sequences' domain".into()));
    }
    let identical = same_sequence(m, big_n);
    let mut values = Vec::with_capacity(end - start + 1);
    for n in start..=end {
        let v = if identical {
            Interval::from_int(1, prec)
        } else {
            match (m.exact(n)?, big_n.exact(n)?) {
                (Some(a), Some(b)) => nth_root(&Interval::point(&(a / b), prec), n)?,
                _ => {
                    let d = m.log_enclose(n, prec)? - big_n.log_enclose(n, prec)?;
                    d.mul_rational(&BigRational::new(1.into(), (n as i64).into())).exp()
                }
            }
        };
        values.push(v);
    }
    Ok(finish_estimate(values, start, inclusion_oracle(m, big_n)))
}

/// Plain-float curve `(N, S_N)` for external plotting.
pub fn dc_curve(seq: &WeightSequence, big_n: usize) -> Result<Vec<(usize, f64)>> {
    Ok(dc_partial_sums::<f64>(seq, big_n, 53)?
        .into_iter()
        .enumerate()
        .collect())
}
