use std::cmp::Ordering;
use std::ops::RangeInclusive;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, int};
use crate::scalar::Interval;

use super::{Family, LogForm, Verdict, WeightSequence, Witness};

/// Index window used by predicates when the caller has no preference.
pub const DEFAULT_WINDOW: RangeInclusive<usize> = 1..=64;

/// Certified comparisons double their precision up to this many bits.
pub const PRECISION_CAP: u32 = 4096;

/// Selects `M` or the derived sequence `M'_n = n! M_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Base,
    Derived,
}

fn log_term(seq: &WeightSequence, n: usize, which: Which, prec: u32) -> Result<Interval> {
    match which {
        Which::Base => seq.log_enclose(n, prec),
        Which::Derived => seq.derived_log_enclose(n, prec),
    }
}

fn log_form_term(seq: &WeightSequence, n: usize, which: Which) -> Result<Option<LogForm>> {
    let f = seq.log_form(n)?;
    Ok(match which {
        Which::Base => f,
        Which::Derived => f.map(|f| f.add(&LogForm::ln(int(factorial(n as u64))))),
    })
}

fn interval_sign(x: &Interval) -> Option<Ordering> {
    if x.lo().is_positive() {
        Some(Ordering::Greater)
    } else if x.hi().is_negative() {
        Some(Ordering::Less)
    } else if x.is_zero() {
        Some(Ordering::Equal)
    } else {
        None
    }
}

/// Certified sign of `sum c_i ln M_{n_i}` (or of `M'`): interval arithmetic
/// first, exact log forms for ties, then precision doubling up to the cap.
pub(crate) fn log_combo_sign(
    seq: &WeightSequence,
    terms: &[(i64, usize)],
    which: Which,
    prec: u32,
) -> Result<Option<Ordering>> {
    let at = |p: u32| -> Result<Option<Ordering>> {
        let mut sum = Interval::zero().with_prec(p);
        for &(c, n) in terms {
            sum = sum + log_term(seq, n, which, p)?.mul_int(c);
        }
        Ok(interval_sign(&sum))
    };
    if let Some(o) = at(prec)? {
        return Ok(Some(o));
    }
    let mut forms = Vec::with_capacity(terms.len());
    for &(c, n) in terms {
        match log_form_term(seq, n, which)? {
            Some(f) => forms.push((c, f)),
            None => break,
        }
    }
    if forms.len() == terms.len() {
        let parts: Vec<(i64, &LogForm)> = forms.iter().map(|(c, f)| (*c, f)).collect();
        if let Some(o) = LogForm::combine(&parts).signum() {
            return Ok(Some(o));
        }
    }
    let mut p = prec.saturating_mul(2);
    while p <= PRECISION_CAP {
        if let Some(o) = at(p)? {
            return Ok(Some(o));
        }
        p *= 2;
    }
    Ok(None)
}

/// Clips `window` so that every index up to `last + reach` is defined.
fn clip(seq: &WeightSequence, window: &RangeInclusive<usize>, reach: usize) -> Result<(usize, usize)> {
    let (start, mut end) = (*window.start(), *window.end());
    if let Some(last) = seq.domain_end() {
        end = end.min(last.saturating_sub(reach));
    }
    if window.is_empty() || start > end {
        return Err(Error::InvalidArgument(format!(
            "window [{}, {}] is empty on the sequence's domain",
            window.start(),
            window.end()
        )));
    }
    Ok((start, end))
}

pub(crate) fn monotone_oracle(seq: &WeightSequence) -> Option<String> {
    match seq.family() {
        Family::Analytic => Some("constant sequence".into()),
        Family::Gevrey(_) => Some("(n!)^s with s >= 0 is nondecreasing".into()),
        Family::IteratedLog { canonical: true, .. } => {
            Some("iterated-log base exceeds 1 beyond the tower threshold".into())
        }
        Family::PowerSub { base, .. } => {
            monotone_oracle(base).map(|p| format!("subsequence of a nondecreasing sequence ({p})"))
        }
        _ => None,
    }
}

pub(crate) fn log_convex_oracle(seq: &WeightSequence, which: Which) -> Option<String> {
    let base = match seq.family() {
        Family::Analytic => Some("log M is constant".to_string()),
        Family::Gevrey(_) => Some("s * ln n! is convex in n".to_string()),
        Family::IteratedLog { canonical: true, .. } => {
            Some("(log^k n)^n is log-convex beyond the tower threshold".to_string())
        }
        Family::PowerSub { base, .. } => log_convex_oracle(base, Which::Base)
            .map(|p| format!("restriction of a convex sequence to n -> p n ({p})")),
        _ => None,
    };
    match which {
        Which::Base => base,
        Which::Derived => base.map(|p| format!("{p}; n! is log-convex")),
    }
}

/// Certifies `M_n <= M_{n+1}` for every `n` in the window.
pub fn is_increasing(
    seq: &WeightSequence,
    window: RangeInclusive<usize>,
    prec: u32,
) -> Result<Verdict> {
    let (start, end) = clip(seq, &window, 1)?;
    let span = Some((start as i64, end as i64));
    let mut unresolved = Vec::new();
    for n in start..=end {
        match log_combo_sign(seq, &[(1, n + 1), (-1, n)], Which::Base, prec)? {
            Some(Ordering::Less) => {
                let w = Witness {
                    at: vec![n as i64],
                    lhs: Some(seq.enclose(n, prec)?),
                    rhs: Some(seq.enclose(n + 1, prec)?),
                    note: format!("M_{n} > M_{}", n + 1),
                };
                return Ok(Verdict::fails(span, w, n - start + 1));
            }
            None => unresolved.push(n),
            _ => {}
        }
    }
    finish(span, end - start + 1, unresolved, monotone_oracle(seq))
}

/// Certifies `M_n^2 <= M_{n-1} M_{n+1}` (or the same for `M'`) on the window.
pub fn is_log_convex(
    seq: &WeightSequence,
    window: RangeInclusive<usize>,
    which: Which,
    prec: u32,
) -> Result<Verdict> {
    if *window.start() == 0 {
        return Err(Error::InvalidArgument(
            "log-convexity window must start at n >= 1".into(),
        ));
    }
    let (start, end) = clip(seq, &window, 1)?;
    let span = Some((start as i64, end as i64));
    let mut unresolved = Vec::new();
    for n in start..=end {
        match log_combo_sign(seq, &[(1, n - 1), (1, n + 1), (-2, n)], which, prec)? {
            Some(Ordering::Less) => {
                let value = |i: usize| match which {
                    Which::Base => seq.enclose(i, prec),
                    Which::Derived => seq.derived_enclose(i, prec),
                };
                let w = Witness {
                    at: vec![n as i64],
                    lhs: Some(value(n)?.square()),
                    rhs: Some(value(n - 1)? * value(n + 1)?),
                    note: format!("square at {n} exceeds the neighbour product"),
                };
                return Ok(Verdict::fails(span, w, n - start + 1));
            }
            None => unresolved.push(n),
            _ => {}
        }
    }
    finish(span, end - start + 1, unresolved, log_convex_oracle(seq, which))
}

fn finish(
    span: Option<(i64, i64)>,
    checked: usize,
    unresolved: Vec<usize>,
    oracle: Option<String>,
) -> Result<Verdict> {
    if !unresolved.is_empty() {
        let mut v = Verdict::inconclusive(span, None, checked);
        v.witness = Some(Witness {
            at: unresolved.iter().map(|&n| n as i64).collect(),
            lhs: None,
            rhs: None,
            note: format!("comparisons unresolved at {PRECISION_CAP} bits"),
        });
        return Ok(v);
    }
    let v = Verdict::holds(span, checked);
    Ok(match oracle {
        Some(provenance) => v.with_scope(super::Scope::Global { provenance }),
        None => v,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;
    use crate::seq::Outcome;

    const P: u32 = 192;

    #[test]
    fn increasing_examples() {
        let a = WeightSequence::analytic();
        let v = is_increasing(&a, DEFAULT_WINDOW, P).unwrap();
        assert!(v.is_holds() && v.is_global());

        let il = WeightSequence::iterated_log(1, None).unwrap();
        assert!(is_increasing(&il, DEFAULT_WINDOW, P).unwrap().is_holds());

        let c = WeightSequence::custom_table(vec![int(1), int(2), rational(3, 2)]).unwrap();
        let v = is_increasing(&c, 0..=64, P).unwrap();
        assert_eq!(v.outcome, Outcome::Fails);
        assert_eq!(v.witness.unwrap().at, vec![1]);
        assert_eq!(v.window, Some((0, 1)));
    }

    #[test]
    fn log_convex_examples() {
        let g = WeightSequence::gevrey(int(1)).unwrap();
        let v = is_log_convex(&g, DEFAULT_WINDOW, Which::Base, P).unwrap();
        assert!(v.is_holds());
        assert_eq!(v.checked, 64);

        // M_n = n + 1: 2^2 > 1 * 3 at n = 1
        let c = WeightSequence::custom_rule("n+1", |n| int(n as i64 + 1)).unwrap();
        let v = is_log_convex(&c, DEFAULT_WINDOW, Which::Base, P).unwrap();
        assert_eq!(v.outcome, Outcome::Fails);
        let w = v.witness.unwrap();
        assert_eq!(w.at, vec![1]);
        assert_eq!(w.lhs.unwrap().lo(), &int(4));
        assert_eq!(w.rhs.unwrap().lo(), &int(3));

        for k in [1, 2] {
            let s = WeightSequence::iterated_log(k, None).unwrap();
            let v = is_log_convex(&s, DEFAULT_WINDOW, Which::Base, P).unwrap();
            assert!(v.is_holds() && v.is_global(), "k = {k}");
        }
    }

    #[test]
    fn exact_ties_hold() {
        // geometric sequence: every log-convexity comparison is an equality
        let geo = WeightSequence::custom_rule("2^n", |n| int(num_bigint::BigInt::from(1) << n)).unwrap();
        let v = is_log_convex(&geo, 1..=20, Which::Base, 64).unwrap();
        assert!(v.is_holds());
        assert!(!v.is_global());
    }

    #[test]
    fn window_must_start_at_one() {
        let a = WeightSequence::analytic();
        assert!(is_log_convex(&a, 0..=5, Which::Base, P).is_err());
    }

    #[test]
    fn base_log_convexity_implies_derived() {
        let seqs = [
            WeightSequence::analytic(),
            WeightSequence::gevrey(rational(1, 2)).unwrap(),
            WeightSequence::iterated_log(2, None).unwrap(),
            WeightSequence::custom_rule("2^(n^2)", |n| int(num_bigint::BigInt::from(1) << (n * n))).unwrap(),
        ];
        for s in &seqs {
            let b = is_log_convex(s, 1..=24, Which::Base, P).unwrap();
            let d = is_log_convex(s, 1..=24, Which::Derived, P).unwrap();
            assert!(b.is_holds(), "{s:?}");
            assert!(d.is_holds(), "{s:?}");
        }
    }
}
