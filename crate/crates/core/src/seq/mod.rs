//! Weight sequences `M_n` with `M_0 = 1`, their derived sequence
//! `M'_n = n! M_n`, the ratios `m_k = M'_{k+1} / M'_k`, and the pointwise
//! predicates (monotonicity, log-convexity) that every other module relies on.

mod iterlog;
pub mod logform;
mod predicates;
pub mod verdict;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exact::{factorial, int, ln_of};
use crate::scalar::{Interval, Mode, Real, Scalar};

pub use iterlog::tower_threshold;
pub use logform::LogForm;
pub use predicates::{is_increasing, is_log_convex, Which, DEFAULT_WINDOW, PRECISION_CAP};
pub use verdict::{Outcome, Scope, Trend, Verdict, Witness};

pub(crate) use predicates::{log_combo_sign, monotone_oracle};

/// Generator for a custom sequence; must return positive rationals.
pub type Rule = Arc<dyn Fn(usize) -> BigRational + Send + Sync>;

#[derive(Clone)]
pub enum Custom {
    /// `M_n = values[n] / values[0]`, defined for `n < values.len()`.
    Table(Vec<BigRational>),
    /// `M_n = rule(n) / rule(0)`.
    Rule { name: String, rule: Rule },
}

impl fmt::Debug for Custom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Custom::Table(v) => f.debug_tuple("Table").field(&v.len()).finish(),
            Custom::Rule { name, .. } => f.debug_struct("Rule").field("name", name).finish(),
        }
    }
}

/// Greatest log-convex minorant on `[0, end]`, described by its hull vertices.
#[derive(Clone, Debug)]
pub struct Regularization {
    pub(crate) base: WeightSequence,
    pub(crate) end: usize,
    pub(crate) vertices: Vec<usize>,
}

impl Regularization {
    pub fn base(&self) -> &WeightSequence {
        &self.base
    }

    pub fn end(&self) -> usize {
        self.end
    }

    /// Indices where the minorant touches the base sequence.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Bracketing vertices `(i, j)` with `i < n < j`, or `None` at a vertex.
    fn bracket(&self, n: usize) -> Option<(usize, usize)> {
        match self.vertices.binary_search(&n) {
            Ok(_) => None,
            Err(pos) => Some((self.vertices[pos - 1], self.vertices[pos])),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Family {
    /// `M_n = 1`.
    Analytic,
    /// `M_n = (n!)^s`.
    Gevrey(BigRational),
    /// `M_n = (log^k (c+n))^(c+n) / (log^k c)^c` with shift `c = offset`.
    IteratedLog {
        k: u32,
        offset: u64,
        /// Offset is at least the canonical threshold, so the family's
        /// monotonicity and log-convexity hold for every index.
        canonical: bool,
    },
    /// `M_n = base_{p n}`.
    PowerSub { base: WeightSequence, p: u32 },
    Regularized(Regularization),
    Custom(Custom),
}

impl Family {
    pub fn tag(&self) -> String {
        match self {
            Family::Analytic => "analytic".into(),
            Family::Gevrey(s) => format!("gevrey({s})"),
            Family::IteratedLog { k, offset, .. } => format!("iterlog({k},{offset})"),
            Family::PowerSub { base, p } => format!("powersub({},{p})", base.family().tag()),
            Family::Regularized(r) => format!("regularized({},{})", r.base.family().tag(), r.end),
            Family::Custom(Custom::Table(v)) => format!("custom(table,{})", v.len()),
            Family::Custom(Custom::Rule { name, .. }) => format!("custom({name})"),
        }
    }
}

type Cache = Mutex<HashMap<(usize, u32), Interval>>;

struct Inner {
    family: Family,
    values: Cache,
    logs: Cache,
}

/// A lazily evaluated, memoized weight sequence. Cloning shares the cache.
#[derive(Clone)]
pub struct WeightSequence {
    inner: Arc<Inner>,
}

impl fmt::Debug for WeightSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightSequence({})", self.family().tag())
    }
}

impl WeightSequence {
    pub(crate) fn from_family(family: Family) -> Self {
        WeightSequence {
            inner: Arc::new(Inner {
                family,
                values: Mutex::new(HashMap::new()),
                logs: Mutex::new(HashMap::new()),
            }),
        }
    }

    pub fn analytic() -> Self {
        Self::from_family(Family::Analytic)
    }

    pub fn gevrey(s: BigRational) -> Result<Self> {
        if s.is_negative() {
            return Err(Error::InvalidArgument(format!("Gevrey order {s} is negative")));
        }
        Ok(Self::from_family(Family::Gevrey(s)))
    }

    /// Shifted, normalized iterated-log sequence. Without an explicit offset
    /// the shift is the smallest integer exceeding the `k`-fold exponential
    /// tower `e^e^...^e`.
    pub fn iterated_log(k: u32, offset: Option<u64>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("iterated-log depth k must be >= 1".into()));
        }
        let threshold = iterlog::tower_threshold(k).ok();
        let offset = match offset {
            Some(c) => c,
            None => iterlog::tower_threshold(k)?,
        };
        iterlog::validate_offset(k, offset)?;
        let canonical = threshold.is_some_and(|t| offset >= t);
        Ok(Self::from_family(Family::IteratedLog {
            k,
            offset,
            canonical,
        }))
    }

    /// Finite table; values are normalized by the first entry.
    pub fn custom_table(values: Vec<BigRational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("empty custom table".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_positive()) {
            return Err(Error::InvalidArgument(format!(
                "custom value at index {i} is not positive"
            )));
        }
        let v0 = values[0].clone();
        let values = values.into_iter().map(|v| v / &v0).collect();
        Ok(Self::from_family(Family::Custom(Custom::Table(values))))
    }

    pub fn custom_rule(
        name: impl Into<String>,
        rule: impl Fn(usize) -> BigRational + Send + Sync + 'static,
    ) -> Result<Self> {
        let rule: Rule = Arc::new(rule);
        if !rule(0).is_positive() {
            return Err(Error::InvalidArgument("custom rule has nonpositive M_0".into()));
        }
        Ok(Self::from_family(Family::Custom(Custom::Rule {
            name: name.into(),
            rule,
        })))
    }

    pub fn family(&self) -> &Family {
        &self.inner.family
    }

    pub fn ptr_eq(&self, other: &WeightSequence) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    /// Last index at which the sequence is defined, if finite.
    pub fn domain_end(&self) -> Option<usize> {
        match self.family() {
            Family::Custom(Custom::Table(v)) => Some(v.len() - 1),
            Family::Regularized(r) => Some(r.end),
            Family::PowerSub { base, p } => base.domain_end().map(|e| e / *p as usize),
            _ => None,
        }
    }

    pub fn check_index(&self, n: usize) -> Result<()> {
        match self.domain_end() {
            Some(last) if n > last => Err(Error::OutOfRange { index: n, last }),
            _ => Ok(()),
        }
    }

    fn custom_value(&self, c: &Custom, n: usize) -> Result<BigRational> {
        match c {
            Custom::Table(v) => Ok(v[n].clone()),
            Custom::Rule { rule, name } => {
                let v = rule(n) / rule(0);
                if !v.is_positive() {
                    return Err(Error::InvalidArgument(format!(
                        "custom rule {name} is not positive at {n}"
                    )));
                }
                Ok(v)
            }
        }
    }

    /// `M_n` as an exact rational when the family makes it one.
    pub fn exact(&self, n: usize) -> Result<Option<BigRational>> {
        self.check_index(n)?;
        if n == 0 {
            return Ok(Some(BigRational::one()));
        }
        Ok(match self.family() {
            Family::Analytic => Some(BigRational::one()),
            Family::Gevrey(s) if s.is_integer() => {
                let e: u32 = s.to_integer().try_into().map_err(|_| {
                    Error::InvalidArgument(format!("Gevrey order {s} too large"))
                })?;
                Some(BigRational::from_integer(num_traits::pow(factorial(n as u64), e as usize)))
            }
            Family::Gevrey(_) | Family::IteratedLog { .. } => None,
            Family::PowerSub { base, p } => base.exact(*p as usize * n)?,
            Family::Regularized(r) => match r.bracket(n) {
                None => r.base.exact(n)?,
                Some(_) => None,
            },
            Family::Custom(c) => Some(self.custom_value(c, n)?),
        })
    }

    /// Exact symbolic `ln M_n`, when the family admits one.
    pub fn log_form(&self, n: usize) -> Result<Option<LogForm>> {
        self.check_index(n)?;
        if n == 0 {
            return Ok(Some(LogForm::zero()));
        }
        Ok(match self.family() {
            Family::Analytic => Some(LogForm::zero()),
            Family::Gevrey(s) => Some(LogForm::ln(int(factorial(n as u64))).scale(s)),
            Family::IteratedLog { .. } => None,
            Family::PowerSub { base, p } => base.log_form(*p as usize * n)?,
            Family::Regularized(r) => match r.bracket(n) {
                None => r.base.log_form(n)?,
                Some((i, j)) => {
                    let (Some(fi), Some(fj)) = (r.base.log_form(i)?, r.base.log_form(j)?) else {
                        return Ok(None);
                    };
                    let len = int((j - i) as i64);
                    let wi = int((j - n) as i64) / &len;
                    let wj = int((n - i) as i64) / &len;
                    Some(fi.scale(&wi).add(&fj.scale(&wj)))
                }
            },
            Family::Custom(c) => Some(LogForm::ln(self.custom_value(c, n)?)),
        })
    }

    /// `ln M_n` evaluated in any [`Real`] type.
    pub fn eval_log<T: Real>(&self, n: usize, prec: u32) -> Result<T> {
        self.check_index(n)?;
        if n == 0 {
            return Ok(T::zero());
        }
        Ok(match self.family() {
            Family::Analytic => T::zero(),
            Family::Gevrey(s) => {
                if n < 2 {
                    T::zero()
                } else {
                    T::from_rational(s, prec) * ln_of::<T>(&int(factorial(n as u64)), prec)
                }
            }
            Family::IteratedLog { k, offset, .. } => {
                let a = offset + n as u64;
                let term = |c: u64| {
                    let inner = iterlog::iter_ln::<T>(c, *k, prec);
                    T::from_rational(&int(c), prec) * inner.ln()
                };
                term(a) - term(*offset)
            }
            Family::PowerSub { base, p } => base.eval_log(*p as usize * n, prec)?,
            Family::Regularized(r) => match r.bracket(n) {
                None => r.base.eval_log(n, prec)?,
                Some((i, j)) => {
                    let li: T = r.base.eval_log(i, prec)?;
                    let lj: T = r.base.eval_log(j, prec)?;
                    let wi = T::from_i64((j - n) as i64, prec);
                    let wj = T::from_i64((n - i) as i64, prec);
                    (wi * li + wj * lj) / T::from_i64((j - i) as i64, prec)
                }
            },
            Family::Custom(c) => ln_of::<T>(&self.custom_value(c, n)?, prec),
        })
    }

    /// `M_n` evaluated in any [`Real`] type.
    pub fn eval<T: Real>(&self, n: usize, prec: u32) -> Result<T> {
        self.check_index(n)?;
        match self.family() {
            Family::PowerSub { base, p } => return base.eval(*p as usize * n, prec),
            Family::Regularized(r) if r.bracket(n).is_none() => return r.base.eval(n, prec),
            _ => {}
        }
        if let Some(q) = self.exact(n)? {
            return Ok(T::from_rational(&q, prec));
        }
        Ok(self.eval_log::<T>(n, prec)?.exp())
    }

    /// Certified enclosure of `M_n`, memoized per precision.
    pub fn enclose(&self, n: usize, prec: u32) -> Result<Interval> {
        if let Some(v) = self.inner.values.lock().unwrap().get(&(n, prec)) {
            return Ok(v.clone());
        }
        self.check_index(n)?;
        let v: Interval = match self.family() {
            Family::Regularized(r) if r.bracket(n).is_some() => self.log_enclose(n, prec)?.exp(),
            _ => self.eval(n, prec)?,
        };
        self.inner.values.lock().unwrap().insert((n, prec), v.clone());
        Ok(v)
    }

    /// Certified enclosure of `ln M_n`, memoized per precision.
    pub fn log_enclose(&self, n: usize, prec: u32) -> Result<Interval> {
        if let Some(v) = self.inner.logs.lock().unwrap().get(&(n, prec)) {
            return Ok(v.clone());
        }
        self.check_index(n)?;
        let v: Interval = match self.family() {
            // interpolate from the base's memoized logs
            Family::Regularized(r) if n > 0 => match r.bracket(n) {
                Some((i, j)) => {
                    let len = int((j - i) as i64);
                    let li = r.base.log_enclose(i, prec)?.mul_rational(&(int((j - n) as i64) / &len));
                    let lj = r.base.log_enclose(j, prec)?.mul_rational(&(int((n - i) as i64) / &len));
                    li + lj
                }
                None => r.base.log_enclose(n, prec)?,
            },
            Family::PowerSub { base, p } => base.log_enclose(*p as usize * n, prec)?,
            _ => self.eval_log(n, prec)?,
        };
        self.inner.logs.lock().unwrap().insert((n, prec), v.clone());
        Ok(v)
    }

    pub fn derived_exact(&self, n: usize) -> Result<Option<BigRational>> {
        Ok(self.exact(n)?.map(|v| v * int(factorial(n as u64))))
    }

    /// Enclosure of `M'_n = n! M_n`.
    pub fn derived_enclose(&self, n: usize, prec: u32) -> Result<Interval> {
        if let Some(q) = self.derived_exact(n)? {
            return Ok(Interval::point(&q, prec));
        }
        Ok(self.enclose(n, prec)? * Interval::from_bigint(&factorial(n as u64), prec))
    }

    /// Enclosure of `ln M'_n`.
    pub fn derived_log_enclose(&self, n: usize, prec: u32) -> Result<Interval> {
        let lf: Interval = ln_of(&int(factorial(n as u64)), prec);
        Ok(self.log_enclose(n, prec)? + lf)
    }

    pub fn ratio_exact(&self, k: usize) -> Result<Option<BigRational>> {
        Ok(match (self.exact(k)?, self.exact(k + 1)?) {
            (Some(a), Some(b)) => Some(b / a * int((k + 1) as i64)),
            _ => None,
        })
    }

    /// Enclosure of `m_k = M'_{k+1} / M'_k = (k+1) M_{k+1} / M_k`.
    pub fn ratio_enclose(&self, k: usize, prec: u32) -> Result<Interval> {
        if let Some(q) = self.ratio_exact(k)? {
            return Ok(Interval::point(&q, prec));
        }
        let d = self.log_enclose(k + 1, prec)? - self.log_enclose(k, prec)?;
        Ok(d.exp().mul_int(k as i64 + 1))
    }

    /// `M_n` in the requested mode.
    pub fn value(&self, n: usize, mode: Mode) -> Result<Scalar> {
        match self.exact(n)? {
            Some(q) => Scalar::from_exact(q, mode),
            None => self.inexact(n, mode, |s, n, p| s.enclose(n, p)),
        }
    }

    /// `M'_n = n! M_n` in the requested mode.
    pub fn derived_value(&self, n: usize, mode: Mode) -> Result<Scalar> {
        match self.derived_exact(n)? {
            Some(q) => Scalar::from_exact(q, mode),
            None => self.inexact(n, mode, |s, n, p| s.derived_enclose(n, p)),
        }
    }

    /// `m_k` in the requested mode.
    pub fn ratio(&self, k: usize, mode: Mode) -> Result<Scalar> {
        match self.ratio_exact(k)? {
            Some(q) => Scalar::from_exact(q, mode),
            None => self.inexact(k, mode, |s, n, p| s.ratio_enclose(n, p)),
        }
    }

    fn inexact(
        &self,
        n: usize,
        mode: Mode,
        f: impl Fn(&Self, usize, u32) -> Result<Interval>,
    ) -> Result<Scalar> {
        if mode == Mode::Exact {
            return Err(Error::NotExact(format!(
                "{} at index {n}",
                self.family().tag()
            )));
        }
        Scalar::from_enclosure(&f(self, n, mode.working_bits())?, mode)
    }

    /// Plain `f64` value of `ln M_n`, for exploratory output.
    pub fn log_f64(&self, n: usize) -> Result<f64> {
        self.eval_log::<f64>(n, 53)
    }
}
