//! Exact symbolic logarithms `sum c_i * ln(b_i)` with rational `c_i, b_i`.
//!
//! Log-domain comparisons that interval arithmetic cannot split (ties such
//! as collinear hull points) are decided exactly by raising both sides to a
//! common integer power.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

/// Bits of the largest power we are willing to form during a comparison.
const BIT_BUDGET: u64 = 1 << 24;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LogForm {
    terms: BTreeMap<BigRational, BigRational>,
}

impl LogForm {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `ln(q)` for a positive rational.
    pub fn ln(q: BigRational) -> Self {
        assert!(q.is_positive());
        let mut f = Self::zero();
        f.push(q, BigRational::one());
        f
    }

    fn push(&mut self, base: BigRational, coeff: BigRational) {
        if base.is_one() || coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(base.clone()).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&base);
        }
    }

    pub fn add(&self, other: &LogForm) -> LogForm {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.push(b.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> LogForm {
        let mut out = LogForm::zero();
        for (b, k) in &self.terms {
            out.push(b.clone(), k * c);
        }
        out
    }

    /// Integer linear combination of forms.
    pub fn combine(parts: &[(i64, &LogForm)]) -> LogForm {
        parts.iter().fold(LogForm::zero(), |acc, (c, f)| {
            acc.add(&f.scale(&BigRational::from_integer((*c).into())))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sign of the represented real number, or `None` when the exact powers
    /// would exceed the bit budget.
    pub fn signum(&self) -> Option<Ordering> {
        if self.terms.is_empty() {
            return Some(Ordering::Equal);
        }
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut cost: u64 = 0;
        let mut exps = Vec::with_capacity(self.terms.len());
        for (b, c) in &self.terms {
            let e = (c * BigRational::from_integer(lcm.clone())).to_integer();
            let bits = b.numer().bits() + b.denom().bits();
            let mag: u64 = e.abs().try_into().ok()?;
            cost = cost.saturating_add(mag.saturating_mul(bits));
            exps.push((b, e));
        }
        if cost > BIT_BUDGET {
            return None;
        }
        // prod b^e >= 1 compared as prod_{e>0} b^e vs prod_{e<0} b^-e
        let mut lhs = BigRational::one();
        let mut rhs = BigRational::one();
        for (b, e) in exps {
            let m: u64 = e.abs().try_into().ok()?;
            let p: BigRational = Pow::pow(b, m);
            if e.is_positive() {
                lhs *= p;
            } else {
                rhs *= p;
            }
        }
        Some(lhs.cmp(&rhs))
    }
}
