//! Truncated q-expansions of level-1 modular forms and the Hecke operators
//! `T_p` acting on them.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::bernoulli::bernoulli_number;
use crate::error::{Error, Result};
use crate::exactla::{serde_rational, serde_rational_vec, Rational};
use crate::primes::is_prime;

/// `a_0 + a_1 q + ... + a_{prec-1} q^{prec-1} + O(q^prec)` of a given weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QExpansion {
    pub weight: u32,
    pub prec: usize,
    #[serde(with = "serde_rational_vec")]
    coeffs: Vec<Rational>,
}

impl QExpansion {
    pub fn new(weight: u32, coeffs: Vec<Rational>) -> Self {
        QExpansion {
            weight,
            prec: coeffs.len(),
            coeffs,
        }
    }

    pub fn zero(weight: u32, prec: usize) -> Self {
        Self::new(weight, vec![Rational::zero(); prec])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `a_n`; panics when `n >= prec`.
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drops coefficients of index `>= prec`.
    pub fn truncate(&self, prec: usize) -> QExpansion {
        QExpansion::new(self.weight, self.coeffs[..prec.min(self.prec)].to_vec())
    }

    pub fn scale(&self, s: &Rational) -> QExpansion {
        QExpansion::new(self.weight, self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Sum at the common precision. Weights must agree.
    pub fn add(&self, other: &QExpansion) -> QExpansion {
        assert_eq!(
            self.weight, other.weight,
            "adding forms of different weight"
        );
        let prec = self.prec.min(other.prec);
        QExpansion::new(
            self.weight,
            (0..prec)
                .map(|n| &self.coeffs[n] + &other.coeffs[n])
                .collect(),
        )
    }

    /// Product at the common precision; weights add.
    pub fn mul(&self, other: &QExpansion) -> QExpansion {
        let prec = self.prec.min(other.prec);
        QExpansion::new(
            self.weight + other.weight,
            truncated_product(&self.coeffs, &other.coeffs, prec),
        )
    }
}

fn truncated_product(a: &[Rational], b: &[Rational], prec: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); prec];
    for (i, x) in a.iter().enumerate().take(prec) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(prec - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `sigma_k(n) = sum_{d | n} d^k`, for `n >= 1`.
pub fn divisor_sigma(k: u32, n: u64) -> BigInt {
    assert!(n >= 1);
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| BigInt::from(d).pow(k))
        .sum()
}

/// Eisenstein series of weight `w`: `a_0 = -B_w / w`, `a_n = sigma_{w-1}(n)`.
pub fn eisenstein_qexp(weight: u32, prec: usize) -> Result<QExpansion> {
    if weight < 4 || !weight.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "Eisenstein series need even weight >= 4, got {weight}"
        )));
    }
    let mut coeffs = Vec::with_capacity(prec);
    if prec > 0 {
        coeffs.push(-bernoulli_number(weight as usize) / Rational::from_integer(weight.into()));
    }
    coeffs.extend((1..prec as u64).map(|n| Rational::from_integer(divisor_sigma(weight - 1, n))));
    Ok(QExpansion::new(weight, coeffs))
}

/// `Delta = q prod_{n >= 1} (1 - q^n)^24`, weight 12.
pub fn delta_qexp(prec: usize) -> Result<QExpansion> {
    if prec < 2 {
        return Err(Error::InvalidArgument(
            "Delta needs precision at least 2".into(),
        ));
    }
    // prod (1 - q^n) up to q^{prec-2}, then raise to the 24th power.
    let inner = prec - 1;
    let mut eta = vec![Rational::zero(); inner];
    eta[0] = Rational::one();
    for n in 1..inner {
        for i in (n..inner).rev() {
            let lower = eta[i - n].clone();
            eta[i] -= lower;
        }
    }
    let mut power = vec![Rational::zero(); inner];
    power[0] = Rational::one();
    let mut base = eta;
    let mut e = 24u32;
    while e > 0 {
        if e & 1 == 1 {
            power = truncated_product(&power, &base, inner);
        }
        base = truncated_product(&base, &base, inner);
        e >>= 1;
    }
    let mut coeffs = Vec::with_capacity(prec);
    coeffs.push(Rational::zero());
    coeffs.extend(power);
    Ok(QExpansion::new(12, coeffs))
}

/// `a_n(T_p f) = a_{np}(f) + p^{w-1} a_{n/p}(f)` (second term when `p | n`),
/// for `n < floor(prec / p)`.
pub fn hecke_tp(f: &QExpansion, p: u64) -> Result<QExpansion> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let p_us = p as usize;
    let out_prec = f.prec / p_us;
    if out_prec < 2 {
        return Err(Error::InsufficientPrecision {
            p,
            prec: f.prec,
            needed: 2 * p_us,
        });
    }
    let twist = Rational::from_integer(BigInt::from(p).pow(f.weight.saturating_sub(1)));
    let coeffs = (0..out_prec)
        .map(|n| {
            let mut c = f.coeffs[n * p_us].clone();
            if n % p_us == 0 {
                c += &twist * &f.coeffs[n / p_us];
            }
            c
        })
        .collect();
    Ok(QExpansion::new(f.weight, coeffs))
}

/// For a normalized form (`a_1 = 1`), checks `T_p f = a_p f` on every
/// computable coefficient and returns `a_p`.
pub fn hecke_eigenvalue(f: &QExpansion, p: u64) -> Result<Rational> {
    let image = hecke_tp(f, p)?;
    if !f.coeffs[1].is_one() {
        return Err(Error::InvalidArgument(
            "eigenvalue test needs a normalized form (a_1 = 1)".into(),
        ));
    }
    let lambda = f.coeffs[p as usize].clone();
    for (n, c) in image.coeffs.iter().enumerate() {
        if *c != &lambda * &f.coeffs[n] {
            return Err(Error::NotEigenform { p, index: n });
        }
    }
    Ok(lambda)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Cusp,
    Eisenstein,
}

/// The scalar by which `1 - T_p + p^{2m+1}` acts on an eigenform.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeckeFactor {
    pub p: u64,
    pub m: u32,
    #[serde(with = "serde_rational")]
    pub eigenvalue: Rational,
    #[serde(with = "serde_rational")]
    pub factor: Rational,
    /// `a_p^2 < 4 p^{2m+1}`; only evaluated for cusp forms.
    pub weil_bound: Option<bool>,
}

impl HeckeFactor {
    pub fn nonzero(&self) -> bool {
        !self.factor.is_zero()
    }
}

/// `1 - a_p + p^{2m+1}` for a `T_p`-eigenform of weight `2m + 2`.
///
/// Cusp forms must have `a_0 = 0`; an Eisenstein series is only accepted
/// with `FormKind::Eisenstein`, in which case the Weil bound is not checked.
pub fn hecke_factor(f: &QExpansion, p: u64, m: u32, kind: FormKind) -> Result<HeckeFactor> {
    if f.weight != 2 * m + 2 {
        return Err(Error::InvalidArgument(format!(
            "form has weight {}, but m = {m} needs weight {}",
            f.weight,
            2 * m + 2
        )));
    }
    if kind == FormKind::Cusp && !f.coeffs.first().is_none_or(Zero::is_zero) {
        return Err(Error::InvalidArgument(
            "form has nonzero constant term; pass the Eisenstein kind".into(),
        ));
    }
    let ap = hecke_eigenvalue(f, p)?;
    let top = BigInt::from(p).pow(2 * m + 1);
    let factor = Rational::one() - &ap + Rational::from_integer(top.clone());
    let weil_bound = match kind {
        FormKind::Cusp => {
            // a_p is an integer for the forms in play; compare squares exactly.
            let sq = &ap * &ap;
            Some(sq < Rational::from_integer(top * 4))
        }
        FormKind::Eisenstein => None,
    };
    Ok(HeckeFactor {
        p,
        m,
        eigenvalue: ap,
        factor,
        weil_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rat, ratio};

    #[test]
    fn eisenstein_coefficients() {
        let e12 = eisenstein_qexp(12, 10).unwrap();
        assert_eq!(e12.coeff(0), &ratio(691, 32760));
        assert_eq!(e12.coeff(1), &rat(1));
        assert_eq!(e12.coeff(2), &rat(2049));
        assert!(eisenstein_qexp(2, 10).is_err());
        assert!(eisenstein_qexp(7, 10).is_err());
    }

    #[test]
    fn delta_coefficients() {
        let d = delta_qexp(10).unwrap();
        let expected = [0, 1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643];
        assert_eq!(d.coeffs(), expected.map(rat).as_slice());
        assert!(delta_qexp(1).is_err());
    }

    #[test]
    fn hecke_eigenforms() {
        let e12 = eisenstein_qexp(12, 60).unwrap();
        let t = hecke_tp(&e12, 2).unwrap();
        assert_eq!(t.prec, 30);
        assert_eq!(t, e12.truncate(30).scale(&rat(2049)));

        let d = delta_qexp(60).unwrap();
        assert_eq!(hecke_tp(&d, 2).unwrap(), d.truncate(30).scale(&rat(-24)));

        let z = QExpansion::zero(12, 20);
        assert!(hecke_tp(&z, 3).unwrap().is_zero());
    }

    #[test]
    fn hecke_precision_and_primality() {
        let d = delta_qexp(5).unwrap();
        assert!(matches!(
            hecke_tp(&d, 3),
            Err(Error::InsufficientPrecision { .. })
        ));
        assert!(hecke_tp(&d, 4).is_err());
        assert_eq!(hecke_tp(&d, 2).unwrap().prec, 2);
    }

    #[test]
    fn non_eigenform_detected() {
        let f = delta_qexp(40)
            .unwrap()
            .add(&eisenstein_qexp(12, 40).unwrap());
        let f = f.scale(&ratio(1, 2));
        assert!(matches!(
            hecke_eigenvalue(&f, 2),
            Err(Error::NotEigenform { .. })
        ));
    }

    #[test]
    fn factors() {
        let d = delta_qexp(60).unwrap();
        let h = hecke_factor(&d, 2, 5, FormKind::Cusp).unwrap();
        assert_eq!(h.factor, rat(2073));
        assert_eq!(h.weil_bound, Some(true));
        let h = hecke_factor(&d, 3, 5, FormKind::Cusp).unwrap();
        assert_eq!(h.factor, rat(176896));

        let e12 = eisenstein_qexp(12, 60).unwrap();
        assert!(hecke_factor(&e12, 2, 5, FormKind::Cusp).is_err());
        let h = hecke_factor(&e12, 2, 5, FormKind::Eisenstein).unwrap();
        assert_eq!(h.eigenvalue, rat(2049));
        assert_eq!(h.weil_bound, None);
        assert!(hecke_factor(&d, 2, 4, FormKind::Cusp).is_err());
    }

    #[test]
    fn sigma_values() {
        assert_eq!(divisor_sigma(11, 2), BigInt::from(2049));
        assert_eq!(divisor_sigma(1, 12), BigInt::from(28));
        assert_eq!(divisor_sigma(0, 12), BigInt::from(6));
    }

    #[test]
    fn json_shape() {
        let d = delta_qexp(4).unwrap();
        assert_eq!(
            serde_json::to_string(&d).unwrap(),
            r#"{"weight":12,"prec":4,"coeffs":["0","1","-24","252"]}"#
        );
    }
}
