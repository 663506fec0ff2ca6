use std::ops::{Add, Mul};

use crate::scalar::Field;

/// Power series truncated at order `N`, storing coefficients
/// `valuation..=N`. A series with `valuation = N + 1` stores nothing and is
/// zero to the working order.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedPowerSeries<T> {
    valuation: usize,
    coeffs: Vec<T>,
    order: usize,
}

impl<T: Field> TruncatedPowerSeries<T> {
    pub fn zero(order: usize) -> Self {
        TruncatedPowerSeries {
            valuation: order + 1,
            coeffs: Vec::new(),
            order,
        }
    }

    pub fn one(order: usize) -> Self {
        Self::from_coeffs(0, vec![T::one()], order)
    }

    /// Coefficients of `x^valuation, x^(valuation+1), ...`; entries beyond
    /// `order` are dropped and missing ones padded with zeros.
    pub fn from_coeffs(valuation: usize, mut coeffs: Vec<T>, order: usize) -> Self {
        if valuation > order {
            return Self::zero(order);
        }
        coeffs.resize(order - valuation + 1, T::zero());
        TruncatedPowerSeries {
            valuation,
            coeffs,
            order,
        }
    }

    /// Builds the series from a coefficient rule on `valuation..=order`.
    pub fn from_fn(valuation: usize, order: usize, f: impl Fn(usize) -> T) -> Self {
        Self::from_coeffs(valuation, (valuation..=order).map(f).collect(), order)
    }

    pub fn valuation(&self) -> usize {
        self.valuation
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Stored coefficients, starting at the valuation.
    pub fn coefficients(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `x^n`, zero outside the stored range.
    pub fn coeff(&self, n: usize) -> T {
        if n < self.valuation || n > self.order {
            T::zero()
        } else {
            self.coeffs[n - self.valuation].clone()
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        TruncatedPowerSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
            order: self.order,
        }
    }

    fn add_ref(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let v = self.valuation.min(other.valuation);
        Self::from_fn(v, order, |n| self.coeff(n) + other.coeff(n))
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let v = self.valuation + other.valuation;
        if v > order {
            return Self::zero(order);
        }
        Self::from_fn(v, order, |n| {
            let mut acc = T::zero();
            for i in self.valuation..=(n - other.valuation) {
                let a = &self.coeffs[i - self.valuation];
                if a.is_zero() {
                    continue;
                }
                acc = acc + a.clone() * other.coeffs[n - i - other.valuation].clone();
            }
            acc
        })
    }

    /// `k`-th power by repeated truncated convolution.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order);
        for _ in 0..k {
            acc = acc.mul_ref(self);
        }
        acc
    }
}

impl<T: Field> Add for &TruncatedPowerSeries<T> {
    type Output = TruncatedPowerSeries<T>;
    fn add(self, rhs: Self) -> Self::Output {
        self.add_ref(rhs)
    }
}

impl<T: Field> Mul for &TruncatedPowerSeries<T> {
    type Output = TruncatedPowerSeries<T>;
    fn mul(self, rhs: Self) -> Self::Output {
        self.mul_ref(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rational};
    use num_rational::BigRational;

    type S = TruncatedPowerSeries<BigRational>;

    #[test]
    fn length_invariant() {
        let s = S::from_fn(2, 7, |n| int(n as i64));
        assert_eq!(s.coefficients().len(), 7 - 2 + 1);
        let p = &s * &s;
        assert_eq!(p.valuation(), 4);
        assert_eq!(p.coefficients().len(), 7 - 4 + 1);
        let z = &p * &p;
        assert_eq!(z.valuation(), 8);
        assert!(z.coefficients().is_empty());
        assert_eq!(z.coeff(7), int(0));
    }

    #[test]
    fn geometric_series_squared() {
        // (1 - x)^-2 = sum (n+1) x^n
        let g = S::from_fn(0, 10, |_| int(1));
        let sq = g.pow(2);
        for n in 0..=10 {
            assert_eq!(sq.coeff(n), int(n as i64 + 1));
        }
        let sum = &g + &g.scale(&rational(-1, 2));
        assert_eq!(sum.coeff(3), rational(1, 2));
    }

    #[test]
    fn float_series() {
        let g = TruncatedPowerSeries::<f64>::from_fn(0, 5, |_| 1.0);
        assert_eq!(g.pow(3).coeff(2), 6.0);
    }
}
