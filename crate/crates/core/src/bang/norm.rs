use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::comb::{composite_derivative, Sweep};
use crate::error::{Error, Result};
use crate::exact::{factorial, falling, int};
use crate::scalar::Interval;
use crate::seq::{Outcome, Verdict, WeightSequence};

use super::cp::{cp_derivative, uniform_grid};
use super::function::BangFunction;

/// A function with certified derivatives.
#[derive(Clone, Debug)]
pub enum Model {
    /// Coefficients, lowest degree first.
    Polynomial(Vec<BigRational>),
    /// `C_p`, on `[-1, 1]`.
    Cp(u32),
    Bang(BangFunction),
    /// `x -> inner(x^p)`.
    PowerComposite { inner: Box<Model>, p: u32 },
}

impl Model {
    /// Enclosure of the `n`-th derivative at `x`.
    pub fn derivative(&self, n: usize, x: &BigRational, prec: u32) -> Result<Interval> {
        match self {
            Model::Polynomial(c) => {
                let mut acc = BigRational::zero();
                for (d, a) in c.iter().enumerate().skip(n).rev() {
                    acc = acc * x + a * int(falling(d as u64, n as u64));
                }
                Ok(Interval::point(&acc, prec))
            }
            Model::Cp(p) => cp_derivative(*p, n, &Interval::point(x, prec)),
            Model::Bang(b) => b.derivative(n, &Interval::point(x, b.prec())),
            Model::PowerComposite { inner, p } => {
                if *p == 0 {
                    return Err(Error::InvalidArgument("power p must be >= 1".into()));
                }
                let y = num_traits::pow(x.clone(), *p as usize);
                if n == 0 {
                    return inner.derivative(0, &y, prec);
                }
                let outer = (0..=n)
                    .map(|k| inner.derivative(k, &y, prec))
                    .collect::<Result<Vec<_>>>()?;
                let jet: Vec<Interval> = (0..=n)
                    .map(|j| {
                        let pj = *p as usize;
                        let v = if j > pj {
                            BigRational::zero()
                        } else {
                            int(falling(pj as u64, j as u64)) * num_traits::pow(x.clone(), pj - j)
                        };
                        Interval::point(&v, prec)
                    })
                    .collect();
                composite_derivative(&outer, &jet, n, prec)
            }
        }
    }
}

/// Sampled value of `sup_{n, x} |f^{(n)}(x)| / (r^n n! M_n)`.
///
/// A lower bound for the norm over the sample, never a proof that the norm is
/// finite.
#[derive(Clone, Debug)]
pub struct NormEstimate {
    /// Enclosure of the sample maximum.
    pub value: Interval,
    /// Order and grid point attaining the maximum (by upper endpoint).
    pub at: (usize, BigRational),
    pub n_max: usize,
    pub grid_points: usize,
}

fn check_interval(a: &BigRational, b: &BigRational) -> Result<()> {
    if a > b {
        return Err(Error::InvalidArgument(format!("empty interval [{a}, {b}]")));
    }
    Ok(())
}

/// Class norm over `n <= n_max` and `grid + 1` equally spaced points of `[a, b]`.
pub fn class_norm(
    model: &Model,
    seq: &WeightSequence,
    interval: (&BigRational, &BigRational),
    r: &BigRational,
    n_max: usize,
    grid: usize,
    prec: u32,
) -> Result<NormEstimate> {
    check_interval(interval.0, interval.1)?;
    if !r.is_positive() {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {r}")));
    }
    let points = uniform_grid(interval.0, interval.1, grid);
    let mut best: Option<(Interval, (usize, BigRational))> = None;
    for n in 0..=n_max {
        let scale = (seq.enclose(n, prec)? * Interval::from_bigint(&factorial(n as u64), prec))
            .mul_rational(&num_traits::pow(r.clone(), n));
        for x in &points {
            let v = model.derivative(n, x, prec)?.abs().checked_div(&scale)?;
            best = Some(match best {
                None => (v, (n, x.clone())),
                Some((m, at)) => {
                    let at = if v.hi() > m.hi() { (n, x.clone()) } else { at };
                    (m.max_of(&v), at)
                }
            });
        }
    }
    let (value, at) = best.expect("grid is nonempty");
    Ok(NormEstimate {
        value,
        at,
        n_max,
        grid_points: points.len(),
    })
}

/// Growth condition `|f^{(n)}(x)| <= C R^n n! M_n` on `I`, checked on a sample.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthEnvelope {
    pub c: BigRational,
    pub growth: BigRational,
    /// Norm radius `r`.
    pub r: BigRational,
    pub interval: (BigRational, BigRational),
}

impl GrowthEnvelope {
    pub fn new(
        c: BigRational,
        growth: BigRational,
        r: BigRational,
        interval: (BigRational, BigRational),
    ) -> Result<Self> {
        for (name, v) in [("C", &c), ("R", &growth), ("r", &r)] {
            if !v.is_positive() {
                return Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")));
            }
        }
        check_interval(&interval.0, &interval.1)?;
        Ok(GrowthEnvelope { c, growth, r, interval })
    }

    /// Certifies the growth condition for `n <= n_max` on `grid + 1` points.
    pub fn check(&self, model: &Model, seq: &WeightSequence, n_max: usize, grid: usize, prec: u32) -> Result<Verdict> {
        let points = uniform_grid(&self.interval.0, &self.interval.1, grid);
        let mut sweep = Sweep::new(Some((0, n_max as i64)));
        for n in 0..=n_max {
            let factor = &self.c * num_traits::pow(self.growth.clone(), n) * int(factorial(n as u64));
            let bound = seq.enclose(n, prec)?.mul_rational(&factor);
            for (i, x) in points.iter().enumerate() {
                let v = model.derivative(n, x, prec)?.abs();
                let o = if v.hi() <= bound.lo() {
                    Outcome::Holds
                } else if v.lo() > bound.hi() {
                    Outcome::Fails
                } else {
                    Outcome::Inconclusive
                };
                sweep.record(o, &[n as i64, i as i64], v, bound.clone(), || {
                    format!("|f^({n})({x})| exceeds C R^{n} {n}! M_{n}")
                });
            }
        }
        Ok(sweep.finish())
    }

    /// Sup-norm bound implied by the envelope at radius `r >= R`: `C`.
    pub fn norm_bound(&self) -> Option<BigRational> {
        (self.r >= self.growth).then(|| self.c.clone())
    }
}
