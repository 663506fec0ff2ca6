//! Subcommand bodies. Each returns either a report of checks or a data table.

use carleman::bang::{class_norm, BangFunction, Model, Oscillator};
use carleman::comb::log_power_coefficients;
use carleman::criteria::{dc_curve, derivation_closure_estimate, inclusion_estimate, quasianalytic_verdict};
use carleman::exact::int;
use carleman::scalar::decimal::to_scientific;
use carleman::seq::{is_increasing, is_log_convex};
use carleman::transforms::{log_convex_regularization, power_substitution};
use carleman::{Interval, Rational, WeightSequence, Which};

use crate::config::{Format, RunConfig};
use crate::error::CliError;
use crate::report::{Record, Report, Status, Table};
use crate::seqspec::SeqSpec;
use crate::suite::{anchor, osc_for, run_selected};

pub enum Output {
    Report(Report),
    Table(Table),
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match self {
            Output::Report(r) => r.render(format),
            Output::Table(t) => t.render(format),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Output::Report(r) => r.exit_code(),
            Output::Table(_) => 0,
        }
    }
}

const M_INCREASING: &str = "M_n <= M_(n+1)";
const M_LOG_CONVEX: &str = "M_n^2 <= M_(n-1) M_(n+1)";
const CLOSURE: &str = "sup_n (M_(n+1)/M_n)^(1/n) < inf";
const INCLUSION: &str = "M_n <= C^n N_n for all n";
const NORM: &str = "||f||_(M,I,r) := sup";

fn bounds(x: &Interval, digits: u32) -> [String; 2] {
    [to_scientific(x.lo(), digits, false), to_scientific(x.hi(), digits, true)]
}

/// `n, M_n, M'_n, m_n` enclosures for `n <= n_max`, clipped to the domain.
pub fn sequence_table(seq: &WeightSequence, n_max: usize, cfg: &RunConfig) -> Result<Table, CliError> {
    let (prec, digits) = (cfg.precision, cfg.digits);
    let top = seq.domain_end().map_or(n_max, |e| e.min(n_max));
    let mut t = Table::new(&["n", "M_lower", "M_upper", "Mprime_lower", "Mprime_upper", "m_lower", "m_upper"]);
    for n in 0..=top {
        let [a, b] = bounds(&seq.enclose(n, prec)?, digits);
        let [c, d] = bounds(&seq.derived_enclose(n, prec)?, digits);
        let [e, f] = match seq.ratio_enclose(n, prec) {
            Ok(r) => bounds(&r, digits),
            Err(_) => [String::new(), String::new()],
        };
        t.push(vec![n.to_string(), a, b, c, d, e, f]);
    }
    Ok(t)
}

fn sequence(cfg: &RunConfig) -> Result<WeightSequence, CliError> {
    Ok(cfg.sequence.build(cfg.precision)?)
}

pub fn seq_show(cfg: &RunConfig, n_max: Option<usize>) -> Result<Output, CliError> {
    let seq = sequence(cfg)?;
    Ok(Output::Table(sequence_table(&seq, n_max.unwrap_or(cfg.window.1), cfg)?))
}

fn report(cfg: &RunConfig, records: Vec<Record>) -> Output {
    Output::Report(Report::new(cfg.echo(), records))
}

fn record(id: &str, anchor: &str, v: carleman::Result<carleman::Verdict>, digits: u32) -> Record {
    match v {
        Ok(v) => Record::from_verdict(id, anchor, &v, digits),
        Err(e) => Record::error(id, anchor, e),
    }
}

pub fn seq_test(cfg: &RunConfig) -> Result<Output, CliError> {
    let seq = sequence(cfg)?;
    let (a, b) = cfg.window;
    let (prec, d) = (cfg.precision, cfg.digits);
    Ok(report(cfg, vec![
        record("seq.increasing", M_INCREASING, is_increasing(&seq, a..=b, prec), d),
        record("seq.logconvex", M_LOG_CONVEX, is_log_convex(&seq, a..=b, Which::Base, prec), d),
        record("seq.logconvex.derived", M_LOG_CONVEX, is_log_convex(&seq, a..=b, Which::Derived, prec), d),
        record("seq.quasianalytic", anchor::DENJOY_CARLEMAN, quasianalytic_verdict(&seq), d),
    ]))
}

pub fn transform_powersub(cfg: &RunConfig, p: u32, n_max: Option<usize>) -> Result<Output, CliError> {
    let seq = power_substitution(&sequence(cfg)?, p)?;
    Ok(Output::Table(sequence_table(&seq, n_max.unwrap_or(cfg.window.1), cfg)?))
}

/// The minorant on `[0, end]`, with a column marking hull vertices.
pub fn transform_regularize(cfg: &RunConfig, end: usize) -> Result<Output, CliError> {
    let seq = log_convex_regularization(&sequence(cfg)?, end, cfg.precision)?;
    let vertices: Vec<usize> = match seq.family() {
        carleman::Family::Regularized(r) => r.vertices().to_vec(),
        _ => Vec::new(),
    };
    let mut t = sequence_table(&seq, end, cfg)?;
    t.columns.push("vertex".into());
    for row in &mut t.rows {
        let n: usize = row[0].parse().expect("index column");
        row.push(vertices.binary_search(&n).is_ok().to_string());
    }
    Ok(Output::Table(t))
}

/// Partial sums `sum_{n<N} M_n / ((n+1) M_{n+1})` as a plotting curve.
pub fn criteria_dc(cfg: &RunConfig, big_n: usize) -> Result<Output, CliError> {
    let curve = dc_curve(&sequence(cfg)?, big_n)?;
    let mut t = Table::new(&["N", "partial_sum"]);
    for (n, s) in curve {
        t.push(vec![n.to_string(), format!("{s:e}")]);
    }
    Ok(Output::Table(t))
}

pub fn criteria_closure(cfg: &RunConfig) -> Result<Output, CliError> {
    let seq = sequence(cfg)?;
    let (a, b) = cfg.window;
    let r = match derivation_closure_estimate(&seq, a..=b, cfg.precision) {
        Ok(e) => Record::from_verdict("criteria.closure", CLOSURE, &e.verdict, cfg.digits)
            .with_enclosure(&e.value, cfg.digits),
        Err(e) => Record::error("criteria.closure", CLOSURE, e),
    };
    Ok(report(cfg, vec![r]))
}

pub fn criteria_inclusion(cfg: &RunConfig, other: &SeqSpec) -> Result<Output, CliError> {
    let (m, n) = (sequence(cfg)?, other.build(cfg.precision)?);
    let (a, b) = cfg.window;
    let r = match inclusion_estimate(&m, &n, a..=b, cfg.precision) {
        Ok(e) => Record::from_verdict("criteria.inclusion", INCLUSION, &e.verdict, cfg.digits)
            .with_enclosure(&e.value, cfg.digits),
        Err(e) => Record::error("criteria.inclusion", INCLUSION, e),
    };
    Ok(report(cfg, vec![r]))
}

pub fn criteria_qa(cfg: &RunConfig) -> Result<Output, CliError> {
    let seq = sequence(cfg)?;
    Ok(report(cfg, vec![record(
        "criteria.quasianalytic",
        anchor::DENJOY_CARLEMAN,
        quasianalytic_verdict(&seq),
        cfg.digits,
    )]))
}

/// Exact `c_{k,n}` for `n <= order`.
pub fn comb_coefficients(k: usize, order: usize) -> Result<Output, CliError> {
    let s = log_power_coefficients(k, order)?;
    let mut t = Table::new(&["n", "c"]);
    for n in 0..=order {
        t.push(vec![n.to_string(), s.coeff(n).to_string()]);
    }
    Ok(Output::Table(t))
}

pub fn comb_lemmas(cfg: &RunConfig) -> Output {
    Output::Report(run_selected(cfg, &["comb."]))
}

pub fn bang_build(cfg: &RunConfig) -> Output {
    Output::Report(run_selected(cfg, &["bang.gate"]))
}

pub fn bang_bounds(cfg: &RunConfig) -> Output {
    Output::Report(run_selected(cfg, &["bang.", "cp."]))
}

pub fn bang_eval(cfg: &RunConfig, p: u32, orders: &[usize], xi: &Rational) -> Result<Output, CliError> {
    let top = orders.iter().copied().max().unwrap_or(0);
    let b = BangFunction::new(&sequence(cfg)?, osc_for(p), top, cfg.tail_bits, cfg.precision)?;
    let values = b.derivatives(orders, &Interval::point(xi, cfg.precision))?;
    let mut t = Table::new(&["order", "xi", "lower", "upper"]);
    for (n, v) in orders.iter().zip(&values) {
        let [lo, hi] = bounds(v, cfg.digits);
        t.push(vec![n.to_string(), xi.to_string(), lo, hi]);
    }
    Ok(Output::Table(t))
}

/// Sampled class norm of the cosine Bang function on `[-1, 1]`, compared with
/// the bound `2 max(1, (2/r)^n_max)` that follows from the derived envelope.
pub fn bang_norm(cfg: &RunConfig, r: &Rational, n_max: usize, grid: usize) -> Result<Output, CliError> {
    if r <= &Rational::from_integer(0.into()) {
        return Err(CliError::Usage(format!("radius must be positive, got {r}")));
    }
    let seq = sequence(cfg)?;
    let b = BangFunction::new(&seq, Oscillator::Cosine, n_max, cfg.tail_bits, cfg.precision)?;
    let id = "bang.norm";
    let est = match class_norm(&Model::Bang(b), &seq, (&int(-1), &int(1)), r, n_max, grid.max(1) - 1, cfg.precision) {
        Ok(e) => e,
        Err(e) => return Ok(report(cfg, vec![Record::error(id, NORM, e)])),
    };
    let two_over_r = int(2) / r;
    let bound = int(2) * num_traits::pow(two_over_r, n_max).max(int(1));
    let status = if est.value.hi() <= &bound { Status::Holds } else { Status::Fails };
    let w = format!(
        "sample maximum at n = {}, x = {} over {} points, n <= {n_max}; envelope bound {}",
        est.at.0,
        est.at.1,
        est.grid_points,
        to_scientific(&bound, cfg.digits, true)
    );
    let rec = Record::new(id, NORM, status, w).with_enclosure(&est.value, cfg.digits);
    Ok(report(cfg, vec![rec]))
}

pub fn verify(cfg: &RunConfig) -> Output {
    Output::Report(crate::suite::run_verify_suite(cfg))
}
