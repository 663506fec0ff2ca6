//! Acceptance criteria, one line each. Runs without the libtest harness so the
//! lines are always printed; the process exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use carleman::bang::{
    bang_envelope_check, bang_lower_bound_certify, cp_bound_check, cp_period_check, induced_f_derivative,
    uniform_grid, BangFunction, Oscillator,
};
use carleman::comb::{
    composition_sum_oracle, lemma1_check, lemma2_check, log_power_coefficients, stirling_sweep,
    taylor_remainder_reconstruct,
};
use carleman::criteria::quasianalytic_verdict;
use carleman::exact::{falling, int, rational};
use carleman::seq::is_log_convex;
use carleman::transforms::{log_convex_regularization, power_substitution};
use carleman::{Outcome, Rational, Verdict, WeightSequence, Which};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PREC: u32 = 128;
const SEED: u64 = 0x00c0_ffee;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn holds(v: &Verdict, what: &str) -> Check {
    if v.is_holds() {
        Ok(format!("{what}: Holds on {} comparisons", v.checked))
    } else {
        let at = v.witness.as_ref().map(|w| format!(" at {:?} ({})", w.at, w.note)).unwrap_or_default();
        Err(format!("{what}: {}{at}", v.outcome))
    }
}

fn c1_corollary() -> Check {
    let start = Instant::now();
    let mut pairs = 0;
    for k in 1..=6 {
        let series = log_power_coefficients(k, 18).map_err(|e| e.to_string())?;
        for n in k..=18 {
            let oracle = composition_sum_oracle(k, n).map_err(|e| e.to_string())?;
            if series.coeff(n) != oracle {
                return Err(format!("c_{{{k},{n}}} = {} but enumeration gives {oracle}", series.coeff(n)));
            }
            pairs += 1;
        }
    }
    let took = start.elapsed();
    if took >= Duration::from_secs(60) {
        return Err(format!("{pairs} pairs equal but took {took:.1?}"));
    }
    Ok(format!("{pairs} pairs equal exactly in {took:.2?}"))
}

fn c2_lemma1() -> Check {
    let v = lemma1_check(40, 40, PREC).map_err(|e| e.to_string())?;
    holds(&v, "1 <= k <= n <= 40")
}

fn c3_lemma2() -> Check {
    let grid = [rational(1, 4), rational(1, 2), int(1), int(2)];
    let v = lemma2_check(&[2, 3, 5], 25, &grid, PREC).map_err(|e| e.to_string())?;
    holds(&v, "p in {2,3,5}, n <= 25, 4 points")
}

fn c4_stirling() -> Check {
    let v = stirling_sweep(&[2, 3, 5], 60, PREC).map_err(|e| e.to_string())?;
    holds(&v, "p in {2,3,5}, n <= 60, 0 <= k < pn")
}

fn il2() -> WeightSequence {
    WeightSequence::iterated_log(2, None).unwrap()
}

fn c5_bang_lower() -> Check {
    let seq = il2();
    let tail = rational(1, 1) / int(num_bigint::BigInt::from(1) << 64);
    let mut checked = 0;
    for (osc, n_max) in [(Oscillator::Cosine, 10), (Oscillator::Cp(3), 6)] {
        let p = osc.p() as usize;
        let b = BangFunction::new(&seq, osc, p * n_max, 64, PREC).map_err(|e| e.to_string())?;
        for n in 0..=n_max {
            let v = bang_lower_bound_certify(&b, n).map_err(|e| e.to_string())?;
            if !v.is_holds() {
                return Err(format!("{osc:?}: |F^({})(0)| >= M'_{} is {}", p * n, p * n, v.outcome));
            }
            if b.relative_tail(p * n) > tail {
                return Err(format!("{osc:?}: relative tail at order {} exceeds 2^-64", p * n));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} lower bounds Holds, relative tails <= 2^-64"))
}

fn c6_envelope() -> Check {
    let b = BangFunction::new(&il2(), Oscillator::Cosine, 12, 64, PREC).map_err(|e| e.to_string())?;
    let grid = uniform_grid(&int(-1), &int(1), 100);
    let orders: Vec<usize> = (0..=12).collect();
    let v = bang_envelope_check(&b, &orders, &grid).map_err(|e| e.to_string())?;
    holds(&v, "|F^(n)| <= 2^(n+1) M'_n, n <= 12, 101 points")
}

fn c7_cp() -> Check {
    let grid = uniform_grid(&int(-1), &int(1), 50);
    let p_set = [1, 2, 3, 4, 5];
    let a = cp_bound_check(&p_set, |p| 4 * p as usize, &grid, PREC).map_err(|e| e.to_string())?;
    let b = cp_period_check(&p_set, &grid, 64, PREC).map_err(|e| e.to_string())?;
    let merged = Verdict::merge([a, b]);
    holds(&merged, "|C_p^(n)| <= e and C_p^(p) = C_p, p <= 5, 51 points")
}

fn deriv(c: &[Rational], m: usize, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for (d, a) in c.iter().enumerate().skip(m).rev() {
        acc = acc * x + a * int(falling(d as u64, m as u64));
    }
    acc
}

fn c8_remainder() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for case in 0..200 {
        let deg = rng.gen_range(0..=8);
        let f: Vec<Rational> = (0..=deg)
            .map(|_| rational(rng.gen_range(-50..=50), rng.gen_range(1..=12)))
            .collect();
        let p = if rng.gen_bool(0.5) { 2 } else { 3 };
        let den = rng.gen_range(2..=40);
        let xi = rational(rng.gen_range(1..den), den);
        let n = rng.gen_range(1..=8);
        let x = num_traits::pow(xi.clone(), p);
        let mut big_f = vec![Rational::zero(); p * deg + 1];
        for (d, a) in f.iter().enumerate() {
            big_f[p * d] = a.clone();
        }
        let f0: Vec<Rational> = (0..n).map(|j| deriv(&f, j, &Rational::zero())).collect();
        let jet: Vec<Rational> = (0..=n).map(|k| deriv(&big_f, k, &xi)).collect();
        let got = taylor_remainder_reconstruct(&f0, &jet, p as u32, &x, &xi).map_err(|e| e.to_string())?;
        let want = deriv(&f, n, &x);
        if got != want {
            return Err(format!("case {case}: p = {p}, n = {n}, xi = {xi}: {got} != {want}"));
        }
    }
    Ok("200 seeded cases reproduced exactly".into())
}

fn c9_families() -> Check {
    // the canonical offset for k = 4 is a tower with millions of digits
    let il = |k| WeightSequence::iterated_log(k, (k == 4).then_some(10_000_000)).unwrap();
    let ps = |s: &WeightSequence, p| power_substitution(s, p).unwrap();
    let mut cases = vec![
        ("Analytic".to_string(), WeightSequence::analytic(), Outcome::Holds),
        ("Gevrey(1)".to_string(), WeightSequence::gevrey(int(1)).unwrap(), Outcome::Fails),
    ];
    for k in 1..=4 {
        cases.push((format!("IteratedLog({k})"), il(k), Outcome::Holds));
    }
    for p in 2..=5 {
        cases.push((format!("PowerSub(IteratedLog(1), {p})"), ps(&il(1), p), Outcome::Fails));
        for k in 2..=4 {
            cases.push((format!("PowerSub(IteratedLog({k}), {p})"), ps(&il(k), p), Outcome::Holds));
        }
    }
    for (name, seq, want) in &cases {
        let v = quasianalytic_verdict(seq).map_err(|e| e.to_string())?;
        if v.outcome != *want || !v.is_global() {
            return Err(format!("{name}: got {} ({:?}), expected {want}", v.outcome, v.scope));
        }
    }
    Ok(format!("{} family verdicts match", cases.len()))
}

fn c10_transforms() -> Check {
    const END: usize = 32;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 10);
    for case in 0..1000 {
        let values: Vec<Rational> = (0..=END)
            .map(|_| rational(rng.gen_range(1..=1_000_000), rng.gen_range(1..=1000)))
            .collect();
        let seq = WeightSequence::custom_table(values).map_err(|e| e.to_string())?;
        let fail = |what: &str| Err(format!("case {case}: {what}"));
        let id = power_substitution(&seq, 1).map_err(|e| e.to_string())?;
        let (p, q) = (rng.gen_range(1..=3u32), rng.gen_range(1..=3u32));
        let nested = power_substitution(&power_substitution(&seq, p).unwrap(), q).unwrap();
        for n in 0..=END {
            if id.exact(n).unwrap() != seq.exact(n).unwrap() {
                return fail(&format!("PowerSub(s, 1) differs at {n}"));
            }
            let pq = (p * q) as usize * n;
            if pq <= END && nested.exact(n).unwrap() != seq.exact(pq).unwrap() {
                return fail(&format!("PowerSub composition {p}*{q} differs at {n}"));
            }
        }
        let reg = log_convex_regularization(&seq, END, PREC).map_err(|e| e.to_string())?;
        for n in 0..=END {
            let base = seq.exact(n).unwrap().unwrap();
            let below = match reg.exact(n).unwrap() {
                Some(v) => v <= base,
                None => reg.enclose(n, PREC).unwrap().hi() <= &base,
            };
            if !below {
                return fail(&format!("minorant exceeds the input at {n}"));
            }
        }
        let lc = is_log_convex(&reg, 1..=END - 1, Which::Base, PREC).map_err(|e| e.to_string())?;
        if !lc.is_holds() {
            return fail(&format!("regularization log-convexity is {}", lc.outcome));
        }
        // PowerSub(., 1) hides the tag, so the hull is recomputed from scratch
        let again = log_convex_regularization(&power_substitution(&reg, 1).unwrap(), END, PREC)
            .map_err(|e| e.to_string())?;
        for n in 0..=END {
            let same = match (again.exact(n).unwrap(), reg.exact(n).unwrap()) {
                (Some(a), Some(b)) => a == b,
                _ => again.enclose(n, PREC).unwrap().overlaps(&reg.enclose(n, PREC).unwrap()),
            };
            if !same {
                return fail(&format!("regularization is not idempotent at {n}"));
            }
        }
    }
    Ok("1000 seeded sequences on [0, 32]".into())
}

fn c11_induced() -> Check {
    let seq = il2();
    let mut checked = 0;
    for osc in [Oscillator::Cosine, Oscillator::Cp(3)] {
        let p = osc.p() as usize;
        let b = BangFunction::new(&seq, osc, 8 * p, 64, PREC).map_err(|e| e.to_string())?;
        for n in 0..=8 {
            let (_, v) = induced_f_derivative(&b, n).map_err(|e| e.to_string())?;
            if !v.is_holds() {
                return Err(format!("p = {p}, n = {n}: {}", v.outcome));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} lower bounds Holds for p in {{2, 3}}, n <= 8"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("corollary equality", c1_corollary),
        ("c_{k,n} bound", c2_lemma1),
        ("alpha_k diagonal bound", c3_lemma2),
        ("stirling-type inequality", c4_stirling),
        ("bang lower bound", c5_bang_lower),
        ("bang envelope", c6_envelope),
        ("C_p properties", c7_cp),
        ("remainder identity", c8_remainder),
        ("family verdicts", c9_families),
        ("transform laws", c10_transforms),
        ("induced germ lower bound", c11_induced),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        match result {
            Ok(detail) => println!("PASS  {:>2} {name}: {detail} [{took:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {:>2} {name}: {detail} [{took:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
