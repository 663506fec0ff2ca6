//! Power substitution `n -> M_{pn}` and greatest log-convex minorants.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::int;
use crate::scalar::{Interval, Mode, Scalar};
use crate::seq::{log_combo_sign, Family, Regularization, WeightSequence, Which};

/// `M^{(p)}_n = M_{pn}`. Nested substitutions collapse into one.
pub fn power_substitution(seq: &WeightSequence, p: u32) -> Result<WeightSequence> {
    if p == 0 {
        return Err(Error::InvalidArgument("power p must be >= 1".into()));
    }
    let family = match seq.family() {
        Family::PowerSub { base, p: q } => {
            let pq = q.checked_mul(p).ok_or_else(|| {
                Error::InvalidArgument(format!("power {q} * {p} overflows"))
            })?;
            Family::PowerSub { base: base.clone(), p: pq }
        }
        _ => Family::PowerSub { base: seq.clone(), p },
    };
    Ok(WeightSequence::from_family(family))
}

fn power_denominator(p: u32, n: usize) -> BigInt {
    num_traits::pow(BigInt::from(n), (p as usize - 1) * n)
}

/// `M'_{pn} / n^{(p-1)n}`, with the value 1 at `n = 0`.
pub fn derived_power_substitution(
    seq: &WeightSequence,
    p: u32,
    n: usize,
    mode: Mode,
) -> Result<Scalar> {
    if p == 0 {
        return Err(Error::InvalidArgument("power p must be >= 1".into()));
    }
    if n == 0 {
        return Scalar::from_exact(BigRational::one(), mode);
    }
    let pn = p as usize * n;
    let den = power_denominator(p, n);
    if let Some(q) = seq.derived_exact(pn)? {
        return Scalar::from_exact(q / int(den), mode);
    }
    if mode == Mode::Exact {
        return Err(Error::NotExact(format!(
            "{} at index {pn}",
            seq.family().tag()
        )));
    }
    let bits = mode.working_bits();
    let v = derived_power_enclose(seq, p, n, bits)?;
    Scalar::from_enclosure(&v, mode)
}

/// Enclosure of `M'_{pn} / n^{(p-1)n}`.
pub fn derived_power_enclose(seq: &WeightSequence, p: u32, n: usize, prec: u32) -> Result<Interval> {
    if n == 0 {
        return Ok(Interval::from_int(1, prec));
    }
    let pn = p as usize * n;
    let den = BigRational::from_integer(power_denominator(p, n)).recip();
    Ok(seq.derived_enclose(pn, prec)?.mul_rational(&den))
}

/// Greatest log-convex minorant of `M` on `[0, end]`: the exponential of the
/// lower convex hull of the points `(n, ln M_n)`. Collinear points stay on
/// the hull.
pub fn log_convex_regularization(seq: &WeightSequence, end: usize, prec: u32) -> Result<WeightSequence> {
    if end < 2 {
        return Err(Error::InvalidArgument(format!(
            "regularization window [0, {end}] needs end >= 2"
        )));
    }
    seq.check_index(end)?;
    if let Family::Regularized(r) = seq.family() {
        if r.end() == end {
            return Ok(seq.clone());
        }
    }
    let mut hull: Vec<usize> = Vec::with_capacity(end + 1);
    for c in 0..=end {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // b lies strictly above the chord a-c iff this combination is positive
            let terms = [
                ((c - a) as i64, b),
                (-((c - b) as i64), a),
                (-((b - a) as i64), c),
            ];
            match log_combo_sign(seq, &terms, Which::Base, prec)? {
                Some(Ordering::Greater) => {
                    hull.pop();
                }
                Some(_) => break,
                None => {
                    return Err(Error::Unresolved {
                        what: format!("hull membership of index {b} between {a} and {c}"),
                        bits: crate::seq::PRECISION_CAP,
                    })
                }
            }
        }
        hull.push(c);
    }
    Ok(WeightSequence::from_family(Family::Regularized(Regularization {
        base: seq.clone(),
        end,
        vertices: hull,
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    const P: u32 = 128;

    #[test]
    fn power_substitution_examples() {
        let g = WeightSequence::gevrey(int(1)).unwrap();
        let s = power_substitution(&g, 2).unwrap();
        assert_eq!(s.value(3, Mode::Exact).unwrap(), Scalar::Exact(int(720)));
        assert_eq!(s.value(0, Mode::Exact).unwrap(), Scalar::Exact(int(1)));
        assert!(power_substitution(&g, 0).is_err());
        assert!(matches!(s.family(), Family::PowerSub { p: 2, .. }));
        let t = power_substitution(&s, 3).unwrap();
        assert!(matches!(t.family(), Family::PowerSub { p: 6, .. }));
    }

    #[test]
    fn derived_power_examples() {
        let g = WeightSequence::gevrey(int(1)).unwrap();
        let m = |n: usize| g.derived_exact(n).unwrap().unwrap();
        // brute-force exponentiation of n^{(p-1)n} for p = 2, n = 2
        let (p, n) = (2, 2);
        let mut den = 1i64;
        for _ in 0..(p - 1) * n {
            den *= n;
        }
        assert_eq!(den, 4);
        let got = derived_power_substitution(&g, 2, 2, Mode::Exact).unwrap();
        assert_eq!(got, Scalar::Exact(m(4) / int(den)));
        for n in 0..6 {
            let got = derived_power_substitution(&g, 1, n, Mode::Exact).unwrap();
            assert_eq!(got, Scalar::Exact(m(n)));
        }
        for p in 1..5 {
            let got = derived_power_substitution(&g, p, 1, Mode::Exact).unwrap();
            assert_eq!(got, Scalar::Exact(m(p as usize)));
        }
        let il = WeightSequence::iterated_log(2, None).unwrap();
        let v = derived_power_substitution(&il, 3, 4, Mode::Interval { bits: 128 }).unwrap();
        let direct = il.derived_enclose(12, 160).unwrap().to_f64() / 4f64.powi(8);
        assert!((v.to_f64() - direct).abs() < 1e-12 * direct);
    }

    /// Greatest log-convex minorant by brute force over every vertex subset.
    fn brute_minorant(logs: &[f64]) -> Vec<f64> {
        let n = logs.len();
        let mut best = vec![f64::NEG_INFINITY; n];
        for mask in 0u32..(1 << n) {
            if mask & 1 == 0 || mask & (1 << (n - 1)) == 0 {
                continue;
            }
            let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let mut f = vec![0.0; n];
            for w in idx.windows(2) {
                let (a, b) = (w[0], w[1]);
                for (i, fi) in f.iter_mut().enumerate().take(b + 1).skip(a) {
                    *fi = logs[a] + (logs[b] - logs[a]) * (i - a) as f64 / (b - a) as f64;
                }
            }
            let minorant = (0..n).all(|i| f[i] <= logs[i] + 1e-12);
            let convex = (1..n - 1).all(|i| 2.0 * f[i] <= f[i - 1] + f[i + 1] + 1e-12);
            if minorant && convex {
                for i in 0..n {
                    best[i] = best[i].max(f[i]);
                }
            }
        }
        best
    }

    #[test]
    fn regularization_matches_brute_force() {
        let c = WeightSequence::custom_table(vec![int(1), int(8), int(2), int(64)]).unwrap();
        let r = log_convex_regularization(&c, 3, P).unwrap();
        let logs: Vec<f64> = [1.0f64, 8.0, 2.0, 64.0].iter().map(|v| v.ln()).collect();
        let want = brute_minorant(&logs);
        for (n, w) in want.iter().enumerate() {
            let got = r.enclose(n, P).unwrap().to_f64();
            assert!((got - w.exp()).abs() < 1e-12, "{n}: {got} vs {}", w.exp());
        }
        assert_eq!(r.exact(2).unwrap(), Some(int(2)));
        assert!(r.exact(1).unwrap().is_none());
        assert!((r.enclose(1, P).unwrap().to_f64() - 2f64.sqrt()).abs() < 1e-15);
        assert!(r.enclose(4, P).is_err());
    }

    #[test]
    fn regularization_fixed_point_and_idempotence() {
        let g = WeightSequence::gevrey(rational(3, 2)).unwrap();
        let r = log_convex_regularization(&g, 20, P).unwrap();
        if let Family::Regularized(reg) = r.family() {
            assert_eq!(reg.vertices(), (0..=20).collect::<Vec<_>>().as_slice());
        } else {
            panic!("expected a regularized sequence");
        }
        let rr = log_convex_regularization(&r, 20, P).unwrap();
        assert!(rr.ptr_eq(&r));
        let a = WeightSequence::analytic();
        let ra = log_convex_regularization(&a, 10, P).unwrap();
        assert_eq!(ra.exact(5).unwrap(), Some(int(1)));
    }

    #[test]
    fn regularization_rejects_short_windows() {
        let a = WeightSequence::analytic();
        assert!(log_convex_regularization(&a, 1, P).is_err());
    }
}
