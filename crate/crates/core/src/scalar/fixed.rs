//! Fixed-point interval kernels for the transcendental series.
//!
//! Values are integers scaled by `2^wp`; every operation rounds `lo` down and
//! `hi` up, so no gcd reductions happen inside the series loops.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug)]
pub(crate) struct Fx {
    pub lo: BigInt,
    pub hi: BigInt,
    pub wp: u32,
}

fn ceil_shr(x: &BigInt, s: u32) -> BigInt {
    -((-x) >> s)
}

impl Fx {
    pub fn from_int(n: i64, wp: u32) -> Fx {
        let v = BigInt::from(n) << wp;
        Fx {
            lo: v.clone(),
            hi: v,
            wp,
        }
    }

    pub fn from_bounds(lo: &BigRational, hi: &BigRational, wp: u32) -> Fx {
        let lo = (lo.numer() << wp).div_floor(lo.denom());
        let hi = (hi.numer() << wp).div_ceil(hi.denom());
        Fx { lo, hi, wp }
    }

    pub fn from_rational(q: &BigRational, wp: u32) -> Fx {
        Fx::from_bounds(q, q, wp)
    }

    pub fn to_bounds(&self) -> (BigRational, BigRational) {
        let d = BigInt::one() << self.wp;
        (
            BigRational::new(self.lo.clone(), d.clone()),
            BigRational::new(self.hi.clone(), d),
        )
    }

    pub fn add(&self, o: &Fx) -> Fx {
        Fx {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
            wp: self.wp,
        }
    }

    pub fn sub(&self, o: &Fx) -> Fx {
        Fx {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
            wp: self.wp,
        }
    }

    pub fn neg(&self) -> Fx {
        Fx {
            lo: -&self.hi,
            hi: -&self.lo,
            wp: self.wp,
        }
    }

    pub fn mul(&self, o: &Fx) -> Fx {
        let ps = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let min = ps.iter().min().unwrap();
        let max = ps.iter().max().unwrap();
        Fx {
            lo: min >> self.wp,
            hi: ceil_shr(max, self.wp),
            wp: self.wp,
        }
    }

    pub fn square(&self) -> Fx {
        if self.lo.is_negative() && self.hi.is_positive() {
            let m = self.mag();
            return Fx {
                lo: BigInt::zero(),
                hi: ceil_shr(&(&m * &m), self.wp),
                wp: self.wp,
            };
        }
        self.mul(self)
    }

    pub fn mul_int(&self, n: i64) -> Fx {
        let (a, b) = (&self.lo * n, &self.hi * n);
        if n >= 0 {
            Fx { lo: a, hi: b, wp: self.wp }
        } else {
            Fx { lo: b, hi: a, wp: self.wp }
        }
    }

    pub fn div_int(&self, n: i64) -> Fx {
        debug_assert!(n > 0);
        let n = BigInt::from(n);
        Fx {
            lo: self.lo.div_floor(&n),
            hi: self.hi.div_ceil(&n),
            wp: self.wp,
        }
    }

    /// Widens both ends by `ulps` units in the last place.
    pub fn widen(&self, ulps: &BigInt) -> Fx {
        Fx {
            lo: &self.lo - ulps,
            hi: &self.hi + ulps,
            wp: self.wp,
        }
    }

    pub fn mag(&self) -> BigInt {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn clamp_unit(&self) -> Fx {
        let one = BigInt::one() << self.wp;
        Fx {
            lo: self.lo.clone().max(-one.clone()).min(one.clone()),
            hi: self.hi.clone().min(one.clone()).max(-one),
            wp: self.wp,
        }
    }
}

/// `exp(r)` for `0 <= r <= 2^-8`.
pub(crate) fn exp_small(r: &BigRational, wp: u32) -> Fx {
    let x = Fx::from_rational(r, wp);
    let mut sum = Fx::from_int(1, wp);
    let mut term = Fx::from_int(1, wp);
    let mut j = 1;
    loop {
        term = term.mul(&x).div_int(j);
        sum = sum.add(&term);
        if term.hi <= BigInt::one() {
            // the remaining terms shrink by at least half each step
            return sum.widen(&BigInt::one());
        }
        j += 1;
    }
}

/// `atanh(z)` for `0 <= z <= 1/3`.
pub(crate) fn atanh_small(z: &BigRational, wp: u32) -> Fx {
    let z = Fx::from_rational(z, wp);
    let z2 = z.square();
    let mut pw = z;
    let mut sum = Fx::from_int(0, wp);
    let mut j = 0;
    loop {
        sum = sum.add(&pw.div_int(2 * j + 1));
        pw = pw.mul(&z2);
        if pw.hi <= BigInt::one() {
            // geometric tail: sum_{i>j} z^(2i+1)/(2i+1) <= pw / (1 - z^2)
            return sum.widen(&BigInt::from(2));
        }
        j += 1;
    }
}

/// `atan(1/m)` by its alternating series.
pub(crate) fn atan_inv(m: i64, wp: u32) -> Fx {
    let mut pw = Fx::from_rational(&BigRational::new(1.into(), m.into()), wp);
    let mut sum = Fx::from_int(0, wp);
    let mut j = 0;
    loop {
        let term = pw.div_int(2 * j + 1);
        if term.hi <= BigInt::one() {
            return sum.widen(&BigInt::from(2));
        }
        sum = if j % 2 == 0 { sum.add(&term) } else { sum.sub(&term) };
        pw = pw.div_int(m * m);
        j += 1;
    }
}

/// `(sin t, cos t)` for `|t| <= 2^-6` by Taylor series with Lagrange remainder.
pub(crate) fn sin_cos_small(t: &Fx) -> (Fx, Fx) {
    let wp = t.wp;
    let tmag = t.mag();
    let mut s = Fx::from_int(0, wp);
    let mut c = Fx::from_int(1, wp);
    let mut term = Fx::from_int(1, wp);
    let mut bound = BigInt::one() << wp;
    let mut j = 1;
    loop {
        term = term.mul(t).div_int(j);
        bound = ceil_shr(&(&bound * &tmag), wp).div_ceil(&BigInt::from(j));
        match j % 4 {
            1 => s = s.add(&term),
            2 => c = c.sub(&term),
            3 => s = s.sub(&term),
            _ => c = c.add(&term),
        }
        if bound <= BigInt::one() {
            let r = BigInt::one();
            return (s.widen(&r), c.widen(&r));
        }
        j += 1;
    }
}
