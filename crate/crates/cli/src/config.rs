//! Flat `key = value` run configuration.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use carleman::Rational;

use crate::error::CliError;
use crate::seqspec::{parse_rational, SeqSpec};

pub const PRECISION_ENV: &str = "CARLEMAN_PRECISION";
pub const MIN_PRECISION: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format `{other}` (json | csv)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    /// Mantissa bits of interval endpoints.
    pub precision: u32,
    /// Inclusive index window; sweeps stop at its upper end.
    pub window: (usize, usize),
    pub k_max: usize,
    pub n_max: usize,
    pub lemma2_n_max: usize,
    pub stirling_n_max: usize,
    pub p_set: Vec<u32>,
    pub x_grid: Vec<Rational>,
    /// Bang variants: 2 is the cosine series, any other `p` the `C_p` one.
    pub bang_p_set: Vec<u32>,
    /// Largest `n` of the `|F^(pn)(0)| >= M'_pn` records.
    pub bang_n_max: usize,
    /// Largest `n` of the induced-germ records.
    pub induced_n_max: usize,
    pub envelope_n_max: usize,
    pub envelope_grid: usize,
    pub cp_p_max: u32,
    /// Points of the `[-1, 1]` grids.
    pub cp_grid: usize,
    /// Relative truncation target `2^-tail_bits`.
    pub tail_bits: u32,
    /// Sequence for the Bang records.
    pub sequence: SeqSpec,
    pub corollary_k_max: usize,
    pub corollary_n_max: usize,
    pub remainder_cases: usize,
    pub seed: u64,
    pub format: Format,
    /// Significant digits of emitted enclosure endpoints.
    pub digits: u32,
    /// Fill the `seconds` column; off by default so reports are reproducible.
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        let precision = std::env::var(PRECISION_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(256);
        RunConfig {
            precision,
            window: (1, 64),
            k_max: 40,
            n_max: 40,
            lemma2_n_max: 25,
            stirling_n_max: 60,
            p_set: vec![2, 3, 5],
            x_grid: ["1/4", "1/2", "1", "2"].iter().map(|s| parse_rational(s).unwrap()).collect(),
            bang_p_set: vec![2, 3],
            bang_n_max: 10,
            induced_n_max: 8,
            envelope_n_max: 12,
            envelope_grid: 101,
            cp_p_max: 5,
            cp_grid: 51,
            tail_bits: 64,
            sequence: SeqSpec::IterLog { k: 2, offset: None },
            corollary_k_max: 6,
            corollary_n_max: 18,
            remainder_cases: 200,
            seed: 0x00c0_ffee,
            format: Format::Json,
            digits: 20,
            timings: false,
        }
    }
}

fn field_err(key: &str, line: Option<usize>, msg: impl Into<String>) -> CliError {
    CliError::Config {
        line,
        field: key.to_string(),
        message: msg.into(),
    }
}

fn parse_window(v: &str) -> Result<(usize, usize), String> {
    let (a, b) = v
        .split_once("..")
        .or_else(|| v.split_once(','))
        .ok_or_else(|| format!("expected `start..end`, got `{v}`"))?;
    let a: usize = a.trim().trim_start_matches('[').trim().parse().map_err(|e| format!("{e}"))?;
    let b: usize = b.trim().trim_start_matches('=').trim_end_matches(']').trim().parse().map_err(|e| format!("{e}"))?;
    Ok((a, b))
}

fn parse_list<T: FromStr>(v: &str) -> Result<Vec<T>, String>
where
    T::Err: fmt::Display,
{
    v.split(',')
        .map(|s| s.trim().parse::<T>().map_err(|e| format!("`{}`: {e}", s.trim())))
        .collect()
}

fn parse_bool(v: &str) -> Result<bool, String> {
    match v.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        other => Err(format!("expected a boolean, got `{other}`")),
    }
}

fn num<T: FromStr>(v: &str) -> Result<T, String>
where
    T::Err: fmt::Display,
{
    v.parse::<T>().map_err(|e| format!("`{v}`: {e}"))
}

impl RunConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str, line: Option<usize>) -> Result<(), CliError> {
        let v = value.trim();
        let err = |m: String| field_err(key, line, m);
        match key {
            "precision" => self.precision = num(v).map_err(err)?,
            "window" => self.window = parse_window(v).map_err(err)?,
            "k_max" => self.k_max = num(v).map_err(err)?,
            "n_max" => self.n_max = num(v).map_err(err)?,
            "lemma2_n_max" => self.lemma2_n_max = num(v).map_err(err)?,
            "stirling_n_max" => self.stirling_n_max = num(v).map_err(err)?,
            "p_set" => self.p_set = parse_list(v).map_err(err)?,
            "x_grid" => {
                self.x_grid = v
                    .split(',')
                    .map(|s| parse_rational(s.trim()))
                    .collect::<Result<_, _>>()
                    .map_err(err)?
            }
            "bang_p_set" => self.bang_p_set = parse_list(v).map_err(err)?,
            "cp_p_max" => self.cp_p_max = num(v).map_err(err)?,
            "bang_n_max" => self.bang_n_max = num(v).map_err(err)?,
            "induced_n_max" => self.induced_n_max = num(v).map_err(err)?,
            "envelope_n_max" => self.envelope_n_max = num(v).map_err(err)?,
            "envelope_grid" => self.envelope_grid = num(v).map_err(err)?,
            "cp_grid" => self.cp_grid = num(v).map_err(err)?,
            "tail_bits" => self.tail_bits = num(v).map_err(err)?,
            "sequence" => self.sequence = v.parse().map_err(err)?,
            "corollary_k_max" => self.corollary_k_max = num(v).map_err(err)?,
            "corollary_n_max" => self.corollary_n_max = num(v).map_err(err)?,
            "remainder_cases" => self.remainder_cases = num(v).map_err(err)?,
            "seed" => self.seed = num(v).map_err(err)?,
            "format" => self.format = v.parse().map_err(err)?,
            "digits" => self.digits = num(v).map_err(err)?,
            "timings" => self.timings = parse_bool(v).map_err(err)?,
            _ => return Err(field_err(key, line, "unknown key")),
        }
        Ok(())
    }

    /// Parses a config file body on top of the defaults. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| CliError::Config {
                line: Some(i + 1),
                field: line.to_string(),
                message: "expected `key = value`".into(),
            })?;
            cfg.set(k.trim(), v, Some(i + 1))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        RunConfig::parse(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let fail = |k: &str, m: String| Err(field_err(k, None, m));
        if self.precision < MIN_PRECISION {
            return fail("precision", format!("must be >= {MIN_PRECISION}, got {}", self.precision));
        }
        if self.window.0 > self.window.1 || self.window.0 == 0 {
            return fail("window", format!("must be a nonempty range starting at >= 1, got {:?}", self.window));
        }
        if self.p_set.is_empty() || self.p_set.contains(&0) {
            return fail("p_set", "needs positive powers".into());
        }
        if self.bang_p_set.contains(&0) {
            return fail("bang_p_set", "needs positive powers".into());
        }
        if self.x_grid.is_empty() || self.x_grid.iter().any(|x| x <= &Rational::from_integer(0.into())) {
            return fail("x_grid", "values must be positive".into());
        }
        for (k, v) in [("envelope_grid", self.envelope_grid), ("cp_grid", self.cp_grid)] {
            if v == 0 {
                return fail(k, "grids need at least one point".into());
            }
        }
        if self.digits == 0 {
            return fail("digits", "must be >= 1".into());
        }
        Ok(())
    }

    /// `n_max` capped by the window's upper end.
    pub fn capped(&self, n: usize) -> usize {
        n.min(self.window.1)
    }

    /// Settings echoed into reports, in key order.
    pub fn echo(&self) -> BTreeMap<String, String> {
        let list = |v: &[String]| v.join(",");
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: String| {
            m.insert(k.to_string(), v);
        };
        put("precision", self.precision.to_string());
        put("window", format!("{}..{}", self.window.0, self.window.1));
        put("k_max", self.k_max.to_string());
        put("n_max", self.n_max.to_string());
        put("lemma2_n_max", self.lemma2_n_max.to_string());
        put("stirling_n_max", self.stirling_n_max.to_string());
        put("p_set", list(&self.p_set.iter().map(|p| p.to_string()).collect::<Vec<_>>()));
        put("x_grid", list(&self.x_grid.iter().map(|x| x.to_string()).collect::<Vec<_>>()));
        put("bang_p_set", list(&self.bang_p_set.iter().map(|p| p.to_string()).collect::<Vec<_>>()));
        put("cp_p_max", self.cp_p_max.to_string());
        put("bang_n_max", self.bang_n_max.to_string());
        put("induced_n_max", self.induced_n_max.to_string());
        put("envelope_n_max", self.envelope_n_max.to_string());
        put("envelope_grid", self.envelope_grid.to_string());
        put("cp_grid", self.cp_grid.to_string());
        put("tail_bits", self.tail_bits.to_string());
        put("sequence", self.sequence.to_string());
        put("corollary_k_max", self.corollary_k_max.to_string());
        put("corollary_n_max", self.corollary_n_max.to_string());
        put("remainder_cases", self.remainder_cases.to_string());
        put("seed", self.seed.to_string());
        put("format", self.format.to_string());
        put("digits", self.digits.to_string());
        put("timings", self.timings.to_string());
        m
    }
}
