//! The verification suite: every inequality and identity the toolkit certifies,
//! one record each, fanned out over a thread pool.

use std::sync::Arc;
use std::time::Instant;

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
use carleman::transforms::power_substitution;
use carleman::{Interval, Outcome, Rational, Scope, WeightSequence, Which};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::report::{Metadata, Record, Report, Status};

pub mod anchor {
    pub const COROLLARY: &str = "sum_{i_1+...+i_k=n} 1/i_1 ... 1/i_k = c_{k,n}";
    pub const LEMMA1: &str = "c_{k,n} <= (2e)^n * k!/n^k";
    pub const LEMMA2: &str = "|alpha_k^(n)(x,x)| <= (2e)^n * n^(n-k)";
    pub const STIRLING: &str = "1/(pn-k)! <= e^(pn)/n^(pn-k)";
    pub const REMAINDER: &str = "P_n^(pn) == 0";
    pub const GATE: &str = "(1/m_k)^(k-j) <= M'_j/M'_k";
    pub const LOWER_COS: &str = "|F^(2n)(0)| >= M'_(2n)";
    pub const LOWER_CP: &str = "C_p(x) := sum x^(jp)/(jp)!; |F^(pn)(0)| >= M'_(pn)";
    pub const ENVELOPE: &str = "F(xi) in Q(R,M)";
    pub const INDUCED: &str = "f^(n)(0) = n!/(2n)! F^(2n)(0)";
    pub const INDUCED_CP: &str = "C_p(x) := sum x^(jp)/(jp)!; f^(n)(0) = n!/(pn)! F^(pn)(0)";
    pub const CP: &str = "C_p(x) := sum x^(jp)/(jp)!";
    pub const LOG_CONVEX: &str = "(log^(k) n)^n ... is log-convex";
    pub const QUASIANALYTIC: &str = "quasianalytic when k>1";
    pub const DENJOY_CARLEMAN: &str = "the Denjoy--Carleman theorem";
}

type Run = Box<dyn FnOnce() -> Record + Send>;

struct Job {
    id: String,
    run: Run,
}

fn job(id: impl Into<String>, run: impl FnOnce(String) -> Record + Send + 'static) -> Job {
    let id = id.into();
    let own = id.clone();
    Job {
        id,
        run: Box::new(move || run(own)),
    }
}

fn verdict_record(id: String, anchor: &str, v: carleman::Result<carleman::Verdict>, digits: u32) -> Record {
    match v {
        Ok(v) => Record::from_verdict(id, anchor, &v, digits),
        Err(e) => Record::error(id, anchor, e),
    }
}

/// 2 selects the cosine series, any other `p` the `C_p` variant.
pub fn osc_for(p: u32) -> Oscillator {
    if p == 2 {
        Oscillator::Cosine
    } else {
        Oscillator::Cp(p)
    }
}

fn deriv(c: &[Rational], m: usize, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for (d, a) in c.iter().enumerate().skip(m).rev() {
        acc = acc * x + a * int(falling(d as u64, m as u64));
    }
    acc
}

fn corollary(cfg: &RunConfig, id: String) -> Record {
    let k_max = cfg.capped(cfg.corollary_k_max);
    let n_max = cfg.capped(cfg.corollary_n_max);
    let mut pairs = 0;
    for k in 1..=k_max {
        let series = match log_power_coefficients(k, n_max) {
            Ok(s) => s,
            Err(e) => return Record::error(id, anchor::COROLLARY, e),
        };
        for n in k..=n_max {
            match composition_sum_oracle(k, n) {
                Ok(c) if c == series.coeff(n) => pairs += 1,
                Ok(c) => {
                    let w = format!("c_{{{k},{n}}} = {} but the composition sum is {c}", series.coeff(n));
                    return Record::new(id, anchor::COROLLARY, Status::Fails, w);
                }
                Err(e) => return Record::error(id, anchor::COROLLARY, e),
            }
        }
    }
    let w = format!("{pairs} pairs equal exactly for k <= {k_max}, n <= {n_max}");
    Record::new(id, anchor::COROLLARY, Status::Holds, w)
}

fn remainder(cfg: &RunConfig, id: String) -> Record {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n_top = cfg.capped(8);
    for case in 0..cfg.remainder_cases {
        let deg = rng.gen_range(0..=8usize);
        let f: Vec<Rational> = (0..=deg)
            .map(|_| rational(rng.gen_range(-50..=50), rng.gen_range(1..=12)))
            .collect();
        let p = cfg.p_set[rng.gen_range(0..cfg.p_set.len())] as usize;
        let den = rng.gen_range(2..=40);
        let xi = rational(rng.gen_range(1..den), den);
        let n = rng.gen_range(1..=n_top);
        let x = num_traits::pow(xi.clone(), p);
        let mut big_f = vec![Rational::zero(); p * deg + 1];
        for (d, a) in f.iter().enumerate() {
            big_f[p * d] = a.clone();
        }
        let f0: Vec<Rational> = (0..n).map(|j| deriv(&f, j, &Rational::zero())).collect();
        let jet: Vec<Rational> = (0..=n).map(|k| deriv(&big_f, k, &xi)).collect();
        match taylor_remainder_reconstruct(&f0, &jet, p as u32, &x, &xi) {
            Ok(got) if got == deriv(&f, n, &x) => {}
            Ok(got) => {
                let w = format!("case {case}: p = {p}, n = {n}, xi = {xi}: reconstructed {got}");
                return Record::new(id, anchor::REMAINDER, Status::Fails, w);
            }
            Err(e) => return Record::error(id, anchor::REMAINDER, e),
        }
    }
    let w = format!("{} seeded cases reproduced exactly (seed {})", cfg.remainder_cases, cfg.seed);
    Record::new(id, anchor::REMAINDER, Status::Holds, w)
}

/// Family verdicts with the outcome stated in the source.
fn family_jobs(cfg: &RunConfig, jobs: &mut Vec<Job>) {
    let prec = cfg.precision;
    let digits = cfg.digits;
    let il = |k: u32| WeightSequence::iterated_log(k, None);
    let mut cases: Vec<(String, &'static str, carleman::Result<WeightSequence>, Outcome)> = vec![
        ("family.qa.analytic".into(), anchor::DENJOY_CARLEMAN, Ok(WeightSequence::analytic()), Outcome::Holds),
        ("family.qa.gevrey1".into(), anchor::DENJOY_CARLEMAN, WeightSequence::gevrey(int(1)), Outcome::Fails),
    ];
    for k in 1..=3 {
        cases.push((format!("family.qa.iterlog{k}"), anchor::QUASIANALYTIC, il(k), Outcome::Holds));
    }
    for &p in cfg.p_set.iter().filter(|&&p| p >= 2) {
        for k in 1..=3 {
            let want = if k == 1 { Outcome::Fails } else { Outcome::Holds };
            let seq = il(k).and_then(|s| power_substitution(&s, p));
            cases.push((format!("family.qa.powersub{p:02}.iterlog{k}"), anchor::QUASIANALYTIC, seq, want));
        }
    }
    for (id, anchor, seq, want) in cases {
        jobs.push(job(id, move |id| {
            let v = match seq.and_then(|s| quasianalytic_verdict(&s)) {
                Ok(v) => v,
                Err(e) => return Record::error(id, anchor, e),
            };
            let ok = v.outcome == want && v.is_global();
            let status = if ok { Status::Holds } else { Status::Fails };
            let scope = match &v.scope {
                Scope::Global { provenance } => format!("global: {provenance}"),
                Scope::Window => "window only".into(),
            };
            Record::new(id, anchor, status, format!("quasianalytic: {} (expected {want}); {scope}", v.outcome))
        }));
    }
    let end = cfg.window.1.max(2);
    for k in 1..=3 {
        jobs.push(job(format!("family.logconvex.iterlog{k}"), move |id| {
            let v = il(k).and_then(|s| is_log_convex(&s, 1..=end, Which::Base, prec));
            verdict_record(id, anchor::LOG_CONVEX, v, digits)
        }));
    }
}

fn bang_jobs(cfg: &RunConfig, records: &mut Vec<Record>, jobs: &mut Vec<Job>) {
    let prec = cfg.precision;
    let digits = cfg.digits;
    let w0 = cfg.window.0;
    let lower_top = cfg.capped(cfg.bang_n_max);
    let induced_top = cfg.capped(cfg.induced_n_max);
    let envelope_top = cfg.capped(cfg.envelope_n_max);
    let seq = match cfg.sequence.build(prec) {
        Ok(s) => s,
        Err(e) => {
            records.push(Record::error("bang.gate", anchor::GATE, format!("sequence `{}`: {e}", cfg.sequence)));
            return;
        }
    };
    for &p in &cfg.bang_p_set {
        let osc = osc_for(p);
        let mut top = p as usize * lower_top.max(induced_top);
        if osc == Oscillator::Cosine {
            top = top.max(envelope_top);
        }
        let gate_id = format!("bang.gate.p{p:02}");
        let t = Instant::now();
        let b = match BangFunction::new(&seq, osc, top, cfg.tail_bits, prec) {
            Ok(b) => Arc::new(b),
            Err(e) => {
                records.push(Record::error(gate_id, anchor::GATE, format!("sequence `{}`: {e}", cfg.sequence)));
                continue;
            }
        };
        let scope = match b.tail_scope() {
            Scope::Window => "window".to_string(),
            Scope::Global { provenance } => format!("global: {provenance}"),
        };
        let mut gate = Record::new(
            gate_id,
            anchor::GATE,
            Status::Holds,
            format!("m_k nondecreasing for k <= {}; tail scope {scope}", b.truncation()),
        );
        if cfg.timings {
            gate.seconds = Some(t.elapsed().as_secs_f64());
        }
        records.push(gate);

        let (lower_anchor, induced_anchor) = if osc == Oscillator::Cosine {
            (anchor::LOWER_COS, anchor::INDUCED)
        } else {
            (anchor::LOWER_CP, anchor::INDUCED_CP)
        };
        for n in w0..=lower_top {
            let b = Arc::clone(&b);
            jobs.push(job(format!("bang.lower.p{p:02}.n{n:02}"), move |id| {
                let pn = p as usize * n;
                let v = match bang_lower_bound_certify(&b, n) {
                    Ok(v) => v,
                    Err(e) => return Record::error(id, lower_anchor, e),
                };
                let mut r = Record::from_verdict(id, lower_anchor, &v, digits);
                if r.lower.is_none() {
                    if let Ok(x) = b.derivative(pn, &Interval::from_int(0, prec)) {
                        r = r.with_enclosure(&x.abs(), digits);
                    }
                }
                r.witness = format!("{}; relative tail 2^{}", r.witness, pn as i64 - b.truncation() as i64);
                r
            }));
        }
        for n in w0..=induced_top {
            let b = Arc::clone(&b);
            jobs.push(job(format!("bang.induced.p{p:02}.n{n:02}"), move |id| match induced_f_derivative(&b, n) {
                Ok((value, v)) => {
                    let r = Record::from_verdict(id, induced_anchor, &v, digits);
                    if r.lower.is_none() {
                        r.with_enclosure(&value, digits)
                    } else {
                        r
                    }
                }
                Err(e) => Record::error(id, induced_anchor, e),
            }));
        }
        if osc == Oscillator::Cosine {
            let points = cfg.envelope_grid;
            let b = Arc::clone(&b);
            jobs.push(job("bang.envelope", move |id| {
                let grid = uniform_grid(&int(-1), &int(1), points - 1);
                let orders: Vec<usize> = (0..=envelope_top).collect();
                let mut r = verdict_record(id, anchor::ENVELOPE, bang_envelope_check(&b, &orders, &grid), digits);
                r.witness = format!(
                    "|F^(n)| <= 2^(n+1) M'_n (derived constant), n <= {envelope_top}, {points} points; {}",
                    r.witness
                );
                r
            }));
        }
    }
}

fn cp_jobs(cfg: &RunConfig, jobs: &mut Vec<Job>) {
    let prec = cfg.precision;
    let digits = cfg.digits;
    let points = cfg.cp_grid;
    let p_set: Vec<u32> = (1..=cfg.cp_p_max).collect();
    let w1 = cfg.window.1;
    let grid = move || uniform_grid(&int(-1), &int(1), points - 1);
    let ps = p_set.clone();
    jobs.push(job("cp.bound", move |id| {
        let v = cp_bound_check(&ps, |p| (4 * p as usize).min(w1), &grid(), prec);
        let mut r = verdict_record(id, anchor::CP, v, digits);
        r.witness = format!("|C_p^(n)| <= e, n <= 4p, {points} points; {}", r.witness);
        r
    }));
    jobs.push(job("cp.period", move |id| {
        let v = cp_period_check(&p_set, &grid(), 64, prec);
        let mut r = verdict_record(id, anchor::CP, v, digits);
        r.witness = format!("C_p^(p) = C_p within 2^-64, {points} points; {}", r.witness);
        r
    }));
}

/// Runs every check; records come back sorted by id.
pub fn run_verify_suite(cfg: &RunConfig) -> Report {
    run_selected(cfg, &[])
}

/// Runs the checks whose id starts with one of `prefixes`, or all of them when
/// `prefixes` is empty.
pub fn run_selected(cfg: &RunConfig, prefixes: &[&str]) -> Report {
    let select = |id: &str| prefixes.is_empty() || prefixes.iter().any(|p| id.starts_with(p));
    let start = Instant::now();
    let prec = cfg.precision;
    let digits = cfg.digits;
    let mut records = Vec::new();
    let mut jobs = Vec::new();

    let c = cfg.clone();
    jobs.push(job("comb.corollary", move |id| corollary(&c, id)));
    let (k_max, n_max) = (cfg.capped(cfg.k_max), cfg.capped(cfg.n_max));
    jobs.push(job("comb.lemma1", move |id| {
        verdict_record(id, anchor::LEMMA1, lemma1_check(k_max, n_max, prec), digits)
    }));
    let (p_set, x_grid, n2) = (cfg.p_set.clone(), cfg.x_grid.clone(), cfg.capped(cfg.lemma2_n_max));
    jobs.push(job("comb.lemma2", move |id| {
        verdict_record(id, anchor::LEMMA2, lemma2_check(&p_set, n2, &x_grid, prec), digits)
    }));
    let (p_set, ns) = (cfg.p_set.clone(), cfg.capped(cfg.stirling_n_max));
    jobs.push(job("comb.stirling", move |id| {
        verdict_record(id, anchor::STIRLING, stirling_sweep(&p_set, ns, prec), digits)
    }));
    let c = cfg.clone();
    jobs.push(job("comb.remainder", move |id| remainder(&c, id)));

    // building the Bang sums is the costly part; skip it when no `bang.` id is wanted
    if prefixes.is_empty() || prefixes.iter().any(|p| p.starts_with("bang")) {
        bang_jobs(cfg, &mut records, &mut jobs);
    }
    cp_jobs(cfg, &mut jobs);
    family_jobs(cfg, &mut jobs);
    records.retain(|r| select(&r.id));
    jobs.retain(|j| select(&j.id));

    let timed: Vec<(Record, f64)> = jobs
        .into_par_iter()
        .map(|j| {
            let t = Instant::now();
            let mut r = (j.run)();
            debug_assert_eq!(r.id, j.id);
            let secs = t.elapsed().as_secs_f64();
            if cfg.timings {
                r.seconds = Some(secs);
            }
            (r, secs)
        })
        .collect();
    let mut metadata = Metadata::default();
    for (r, s) in timed {
        metadata.seconds.insert(r.id.clone(), s);
        records.push(r);
    }
    let mut report = Report::new(cfg.echo(), records);
    metadata.wall_seconds = start.elapsed().as_secs_f64();
    report.metadata = metadata;
    report
}
