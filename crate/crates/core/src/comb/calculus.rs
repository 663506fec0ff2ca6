use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, falling, int};
use crate::scalar::Field;

use super::lemmas::b_series;
use super::TruncatedPowerSeries;

fn need(jet: usize, needed: usize) -> Result<()> {
    if jet < needed {
        return Err(Error::JetTooShort { needed, got: jet });
    }
    Ok(())
}

/// `(f o g)^{(n)}(x) = sum_{k=1}^{n} f^{(k)}(g(x)) / k! * [d^n/dX^n (g(X) - g(x))^k]_{X=x}`.
///
/// `outer[k] = f^{(k)}(g(x))` and `inner[j] = g^{(j)}(x)`; both need `n + 1`
/// entries.
pub fn composite_derivative<T: Field>(outer: &[T], inner: &[T], n: usize, prec: u32) -> Result<T> {
    if n == 0 {
        return Err(Error::InvalidArgument("derivative order must be >= 1".into()));
    }
    need(outer.len(), n + 1)?;
    need(inner.len(), n + 1)?;
    // g(X) - g(x) = sum_{j>=1} g^{(j)}(x) (X-x)^j / j!
    let shifted = TruncatedPowerSeries::from_fn(1, n, |j| {
        inner[j].clone() / T::from_rational(&int(factorial(j as u64)), prec)
    });
    let n_fact = T::from_rational(&int(factorial(n as u64)), prec);
    let mut power = TruncatedPowerSeries::one(n);
    let mut acc = T::zero();
    for (k, fk) in outer.iter().enumerate().take(n + 1).skip(1) {
        power = &power * &shifted;
        let bracket = power.coeff(n) * n_fact.clone();
        let k_fact = T::from_rational(&int(factorial(k as u64)), prec);
        acc = acc + fk.clone() * bracket / k_fact;
    }
    Ok(acc)
}

/// Reconstructs `f^{(n)}(x)` from the Taylor data of `f` at 0 and the
/// derivatives of `F(xi) = f(xi^p)` at `xi = x^{1/p}`:
///
/// `f^{(n)}(x) = sum_{k=1}^{n} R_n^{(k)}(xi) * alpha_k^{(n)}(x, x)` with
/// `R_n = F - P_n`, `P_n(xi) = sum_{j<n} f^{(j)}(0) xi^{pj} / j!`.
///
/// `f_jet_at_0[j] = f^{(j)}(0)` for `j < n` (its length is `n`) and
/// `big_f_jet[k] = F^{(k)}(xi)` for `k <= n`.
pub fn taylor_remainder_reconstruct(
    f_jet_at_0: &[BigRational],
    big_f_jet: &[BigRational],
    p: u32,
    x: &BigRational,
    xi: &BigRational,
) -> Result<BigRational> {
    let n = f_jet_at_0.len();
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one Taylor coefficient".into()));
    }
    if p == 0 {
        return Err(Error::InvalidArgument("power p must be >= 1".into()));
    }
    need(big_f_jet.len(), n + 1)?;
    if !xi.is_positive() || num_traits::pow(xi.clone(), p as usize) != *x {
        return Err(Error::Inconsistent(format!("{xi}^{p} != {x}")));
    }
    let p = p as usize;
    let mut acc = BigRational::zero();
    for (k, fk) in big_f_jet.iter().enumerate().take(n + 1).skip(1) {
        // P_n^{(k)}(xi)
        let mut pk = BigRational::zero();
        for (j, fj) in f_jet_at_0.iter().enumerate() {
            let deg = p * j;
            if deg < k || fj.is_zero() {
                continue;
            }
            let coeff = fj / int(factorial(j as u64)) * int(falling(deg as u64, k as u64));
            pk += coeff * num_traits::pow(xi.clone(), deg - k);
        }
        let r = fk - pk;
        if r.is_zero() {
            continue;
        }
        // alpha_k^{(n)}(x, x) = n! b_n xi^{-(pn-k)}
        let b = b_series(p as u32, k, n).coeff(n);
        if b.is_zero() {
            continue;
        }
        let alpha = b * int(factorial(n as u64)) / num_traits::pow(xi.clone(), p * n - k);
        acc += r * alpha;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    /// Exact polynomial with rational coefficients, lowest degree first.
    fn eval_deriv(c: &[BigRational], m: usize, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (d, a) in c.iter().enumerate() {
            if d >= m {
                acc += a * int(falling(d as u64, m as u64)) * num_traits::pow(x.clone(), d - m);
            }
        }
        acc
    }

    fn compose(f: &[BigRational], g: &[BigRational]) -> Vec<BigRational> {
        let mul = |a: &[BigRational], b: &[BigRational]| {
            let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            out
        };
        let mut out = vec![BigRational::zero()];
        let mut pw = vec![int(1)];
        for a in f {
            let term: Vec<BigRational> = pw.iter().map(|c| c * a).collect();
            if term.len() > out.len() {
                out.resize(term.len(), BigRational::zero());
            }
            for (i, t) in term.into_iter().enumerate() {
                out[i] += t;
            }
            pw = mul(&pw, g);
        }
        out
    }

    #[test]
    fn identity_and_chain_rule() {
        let f = [int(3), rational(1, 2), int(-2), int(5), int(7)];
        let id = [rational(1, 3), int(1), int(0), int(0), int(0)];
        for n in 1..=4 {
            assert_eq!(composite_derivative(&f, &id, n, 0).unwrap(), f[n]);
        }
        let g = [int(1), int(4), int(9)];
        assert_eq!(composite_derivative(&f[..2], &g[..2], 1, 0).unwrap(), &f[1] * &g[1]);
        assert!(matches!(
            composite_derivative(&f[..2], &g, 2, 0),
            Err(Error::JetTooShort { needed: 3, got: 2 })
        ));
    }

    #[test]
    fn cubic_composition_matches_expansion() {
        let f = [int(1), int(-2), rational(3, 2), int(4)];
        let g = [rational(1, 3), int(2), int(-1), rational(1, 5)];
        let x = rational(1, 2);
        let gx = eval_deriv(&g, 0, &x);
        let h = compose(&f, &g);
        for n in 1..=6 {
            let outer: Vec<_> = (0..=n).map(|k| eval_deriv(&f, k, &gx)).collect();
            let inner: Vec<_> = (0..=n).map(|j| eval_deriv(&g, j, &x)).collect();
            let got = composite_derivative(&outer, &inner, n, 0).unwrap();
            assert_eq!(got, eval_deriv(&h, n, &x), "n = {n}");
        }
    }

    fn reconstruct_case(f: &[BigRational], p: usize, xi: &BigRational, n: usize) -> (BigRational, BigRational) {
        let x = num_traits::pow(xi.clone(), p);
        // F(xi) = f(xi^p)
        let mut big_f = vec![BigRational::zero(); p * (f.len() - 1) + 1];
        for (d, a) in f.iter().enumerate() {
            big_f[p * d] = a.clone();
        }
        let f0: Vec<_> = (0..n).map(|j| eval_deriv(f, j, &BigRational::zero())).collect();
        let fj: Vec<_> = (0..=n).map(|k| eval_deriv(&big_f, k, xi)).collect();
        let got = taylor_remainder_reconstruct(&f0, &fj, p as u32, &x, xi).unwrap();
        (got, eval_deriv(f, n, &x))
    }

    #[test]
    fn reconstruction_examples() {
        // degree < n gives zero
        let f = [int(2), int(-1), int(3)];
        let (got, want) = reconstruct_case(&f, 2, &rational(1, 3), 4);
        assert_eq!(got, int(0));
        assert_eq!(want, int(0));
        // f = x^n, p = 2, x = 1/4
        for n in 1..=6 {
            let mut f = vec![BigRational::zero(); n + 1];
            f[n] = int(1);
            let (got, _) = reconstruct_case(&f, 2, &rational(1, 2), n);
            assert_eq!(got, int(factorial(n as u64)));
        }
        let cubic = [rational(1, 7), int(-3), rational(2, 5), int(6)];
        for n in 1..=5 {
            let (got, want) = reconstruct_case(&cubic, 3, &rational(2, 3), n);
            assert_eq!(got, want, "n = {n}");
        }
    }

    #[test]
    fn inconsistent_root_is_rejected() {
        let f0 = [int(1)];
        let fj = [int(1), int(0)];
        let r = taylor_remainder_reconstruct(&f0, &fj, 2, &rational(1, 3), &rational(1, 2));
        assert!(matches!(r, Err(Error::Inconsistent(_))));
    }
}
