//! Text form of a weight sequence:
//!
//! ```text
//! analytic | gevrey:s | iterlog:k[:offset] | custom:v0,v1,...
//!          | powersub:p:<spec> | regularize:N:<spec>
//! ```

use std::fmt;
use std::str::FromStr;

use carleman::transforms::{log_convex_regularization, power_substitution};
use carleman::{Rational, WeightSequence};
use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq)]
pub enum SeqSpec {
    Analytic,
    Gevrey(Rational),
    IterLog { k: u32, offset: Option<u64> },
    Custom(Vec<Rational>),
    PowerSub { p: u32, base: Box<SeqSpec> },
    Regularize { end: usize, base: Box<SeqSpec> },
}

/// Parses `n`, `a/b` or a decimal such as `-0.25`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let bad = || format!("`{s}` is not a rational number");
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| bad())?;
        let b: BigInt = b.trim().parse().map_err(|_| bad())?;
        if b.is_zero() {
            return Err(format!("`{s}` has a zero denominator"));
        }
        return Ok(Rational::new(a, b));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let int: BigInt = match int.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            d => d.parse().map_err(|_| bad())?,
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let v = Rational::new(int * &scale + frac, scale);
        return Ok(if neg { -v } else { v });
    }
    s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad())
}

fn num<T: FromStr>(s: &str, what: &str) -> Result<T, String> {
    s.trim().parse().map_err(|_| format!("`{s}` is not a valid {what}"))
}

impl FromStr for SeqSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let (head, rest) = match s.split_once(':') {
            Some((h, r)) => (h, Some(r)),
            None => (s, None),
        };
        let need = || rest.ok_or_else(|| format!("`{head}` needs arguments"));
        match head.to_ascii_lowercase().as_str() {
            "analytic" if rest.is_none() => Ok(SeqSpec::Analytic),
            "gevrey" => Ok(SeqSpec::Gevrey(parse_rational(need()?)?)),
            "iterlog" => {
                let r = need()?;
                let (k, offset) = match r.split_once(':') {
                    Some((k, o)) => (k, Some(num(o, "offset")?)),
                    None => (r, None),
                };
                Ok(SeqSpec::IterLog { k: num(k, "depth")?, offset })
            }
            "custom" => Ok(SeqSpec::Custom(
                need()?.split(',').map(parse_rational).collect::<Result<_, _>>()?,
            )),
            "powersub" => {
                let (p, base) = need()?.split_once(':').ok_or("expected `powersub:p:<spec>`")?;
                Ok(SeqSpec::PowerSub {
                    p: num(p, "power")?,
                    base: Box::new(base.parse()?),
                })
            }
            "regularize" => {
                let (end, base) = need()?.split_once(':').ok_or("expected `regularize:N:<spec>`")?;
                Ok(SeqSpec::Regularize {
                    end: num(end, "window end")?,
                    base: Box::new(base.parse()?),
                })
            }
            _ => Err(format!(
                "unknown sequence `{s}` (analytic | gevrey:s | iterlog:k[:offset] | custom:v,... | powersub:p:SPEC | regularize:N:SPEC)"
            )),
        }
    }
}

impl fmt::Display for SeqSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqSpec::Analytic => f.write_str("analytic"),
            SeqSpec::Gevrey(s) => write!(f, "gevrey:{s}"),
            SeqSpec::IterLog { k, offset: None } => write!(f, "iterlog:{k}"),
            SeqSpec::IterLog { k, offset: Some(c) } => write!(f, "iterlog:{k}:{c}"),
            SeqSpec::Custom(v) => {
                f.write_str("custom:")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            SeqSpec::PowerSub { p, base } => write!(f, "powersub:{p}:{base}"),
            SeqSpec::Regularize { end, base } => write!(f, "regularize:{end}:{base}"),
        }
    }
}

impl SeqSpec {
    pub fn build(&self, prec: u32) -> carleman::Result<WeightSequence> {
        match self {
            SeqSpec::Analytic => Ok(WeightSequence::analytic()),
            SeqSpec::Gevrey(s) => WeightSequence::gevrey(s.clone()),
            SeqSpec::IterLog { k, offset } => WeightSequence::iterated_log(*k, *offset),
            SeqSpec::Custom(v) => WeightSequence::custom_table(v.clone()),
            SeqSpec::PowerSub { p, base } => power_substitution(&base.build(prec)?, *p),
            SeqSpec::Regularize { end, base } => log_convex_regularization(&base.build(prec)?, *end, prec),
        }
    }
}
