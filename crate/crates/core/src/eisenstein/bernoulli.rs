//! Bernoulli numbers and polynomials, with `B_1 = -1/2`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactla::{binomial, Rational};

/// `B_0, ..., B_n` from `sum_{k=0}^{n} C(n+1, k) B_k = 0`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for j in 1..=n {
        let s = (0..j).fold(Rational::zero(), |acc, k| {
            acc + Rational::from_integer(binomial(j as u64 + 1, k as u64)) * &b[k]
        });
        b.push(-s / Rational::from_integer(BigInt::from(j + 1)));
    }
    b
}

pub fn bernoulli_number(n: usize) -> Rational {
    bernoulli_numbers(n).pop().expect("nonempty")
}

/// The fractional part: the unique `r` in `[0, 1)` with `q - r` an integer.
pub fn frac(q: &Rational) -> Rational {
    q - Rational::from_integer(q.numer().div_floor(q.denom()))
}

/// `B_n(X) = sum_k C(n, k) B_k X^{n-k}` as a coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernPoly {
    /// `coeffs[i]` is the coefficient of `X^i`.
    coeffs: Vec<Rational>,
}

impl BernPoly {
    pub fn new(n: usize) -> Self {
        let b = bernoulli_numbers(n);
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (k, bk) in b.iter().enumerate() {
            coeffs[n - k] = Rational::from_integer(binomial(n as u64, k as u64)) * bk;
        }
        BernPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Coefficients of `B_n(1 - X)`.
    pub fn reflected(&self) -> Vec<Rational> {
        // (1 - X)^i expanded and accumulated.
        let n = self.degree();
        let mut out = vec![Rational::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            for (j, slot) in out.iter_mut().enumerate().take(i + 1) {
                let mut term = c * Rational::from_integer(binomial(i as u64, j as u64));
                if j % 2 == 1 {
                    term = -term;
                }
                *slot += term;
            }
        }
        out
    }
}

pub fn bernoulli_poly_eval(n: usize, x: &Rational) -> Rational {
    BernPoly::new(n).eval(x)
}

/// Checks `sum_{a=0}^{m-1} B_n(x + a/m) = m^{1-n} B_n(m x)` exactly.
pub fn distribution_check(n: usize, m: u64, x: &Rational) -> bool {
    assert!(m >= 1, "distribution relation needs m >= 1");
    let p = BernPoly::new(n);
    let mq = Rational::from_integer(BigInt::from(m));
    let lhs = (0..m).fold(Rational::zero(), |acc, a| {
        acc + p.eval(&(x + Rational::new(BigInt::from(a), BigInt::from(m))))
    });
    let scale = Rational::one() / mq.pow(n as i32 - 1);
    lhs == scale * p.eval(&(mq * x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rat, ratio};

    #[test]
    fn numbers() {
        assert_eq!(bernoulli_number(0), rat(1));
        assert_eq!(bernoulli_number(1), ratio(-1, 2));
        assert_eq!(bernoulli_number(3), rat(0));
        assert_eq!(bernoulli_number(12), ratio(-691, 2730));
    }

    #[test]
    fn polynomial_values() {
        for n in 0..=20 {
            assert_eq!(bernoulli_poly_eval(n, &rat(0)), bernoulli_number(n));
        }
        assert_eq!(bernoulli_poly_eval(2, &rat(0)), ratio(1, 6));
        assert_eq!(BernPoly::new(2).coeffs(), &[ratio(1, 6), rat(-1), rat(1)]);
        let third = ratio(1, 3);
        assert_eq!(
            bernoulli_poly_eval(4, &(rat(1) - &third)),
            bernoulli_poly_eval(4, &third)
        );
    }

    #[test]
    fn reflection_identity() {
        for n in 0..=12 {
            let p = BernPoly::new(n);
            let sign = if n % 2 == 0 { rat(1) } else { rat(-1) };
            let expected: Vec<Rational> = p.coeffs().iter().map(|c| c * &sign).collect();
            assert_eq!(p.reflected(), expected, "n = {n}");
        }
    }

    #[test]
    fn fractional_parts() {
        assert_eq!(frac(&ratio(7, 5)), ratio(2, 5));
        assert_eq!(frac(&ratio(-1, 5)), ratio(4, 5));
        assert_eq!(frac(&rat(0)), rat(0));
        assert_eq!(frac(&rat(-3)), rat(0));
    }

    #[test]
    fn distribution_samples() {
        assert!(distribution_check(5, 1, &ratio(2, 7)));
        assert!(distribution_check(4, 5, &rat(0)));
        assert!(distribution_check(2, 3, &ratio(1, 2)));
        // sum_a B_4(a/5) = 5^{-3} B_4, summed directly.
        let p = BernPoly::new(4);
        let direct = (0..5).fold(rat(0), |acc, a| acc + p.eval(&ratio(a, 5)));
        assert_eq!(direct, bernoulli_number(4) / rat(125));
    }
}
