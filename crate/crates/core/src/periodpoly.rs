//! Restricted even period polynomials.
//!
//! A homogeneous `f(x, y)` of degree `2m` is a restricted even period
//! polynomial when `f(x, 0) = 0`, `f(+-x, +-y) = f(x, y)`,
//! `f(x, y) + f(y, x) = 0` and `f(x, y) + f(x - y, x) + f(-y, x - y) = 0`.
//! Their rational span in degree `2m` is denoted `S_{2m+2}` (indexed by
//! weight). The first three conditions cut the candidates down to
//! `x^{2i} y^{2j} - x^{2j} y^{2i}` with `1 <= i < j`, `i + j = m`; only the
//! three-term relation is solved as a linear system.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{binomial, format_rational, QMatrix, Rational};

/// Homogeneous polynomial in `x, y` of fixed degree. Coefficients are keyed by
/// the exponent of `x`; the `y` exponent is `degree - key`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BivarPoly {
    degree: u32,
    coeffs: BTreeMap<u32, Rational>,
}

impl BivarPoly {
    pub fn zero(degree: u32) -> Self {
        BivarPoly {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// `coeff * x^a y^b`.
    pub fn monomial(a: u32, b: u32, coeff: Rational) -> Self {
        let mut p = Self::zero(a + b);
        p.add_term(a, coeff);
        p
    }

    /// From a dense coefficient list indexed by the `x` exponent.
    pub fn from_dense(degree: u32, dense: &[Rational]) -> Self {
        assert_eq!(dense.len(), degree as usize + 1);
        let mut p = Self::zero(degree);
        for (a, c) in dense.iter().enumerate() {
            p.add_term(a as u32, c.clone());
        }
        p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^a y^{degree - a}`.
    pub fn coeff(&self, a: u32) -> Rational {
        self.coeffs.get(&a).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms as `(x exponent, y exponent, coefficient)`, highest `x`
    /// power first.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.coeffs
            .iter()
            .rev()
            .map(move |(&a, c)| (a, self.degree - a, c))
    }

    /// Coefficients in monomial order `x^d, x^{d-1} y, ..., y^d`.
    pub fn dense_graded(&self) -> Vec<Rational> {
        (0..=self.degree).rev().map(|a| self.coeff(a)).collect()
    }

    pub fn add_term(&mut self, a: u32, coeff: Rational) {
        assert!(a <= self.degree, "x exponent exceeds degree");
        if coeff.is_zero() {
            return;
        }
        let sum = self.coeff(a) + coeff;
        if sum.is_zero() {
            self.coeffs.remove(&a);
        } else {
            self.coeffs.insert(a, sum);
        }
    }

    pub fn add(&self, other: &BivarPoly) -> BivarPoly {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (&a, c) in &other.coeffs {
            out.add_term(a, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> BivarPoly {
        let mut out = BivarPoly::zero(self.degree);
        for (&a, c) in &self.coeffs {
            out.add_term(a, c * s);
        }
        out
    }

    /// `f(p.0 x + p.1 y, q.0 x + q.1 y)` by binomial expansion.
    pub fn substitute(&self, p: (i64, i64), q: (i64, i64)) -> BivarPoly {
        let d = self.degree;
        let mut dense = vec![Rational::zero(); d as usize + 1];
        for (&a, c) in &self.coeffs {
            let pa = linear_power(p, a);
            let qb = linear_power(q, d - a);
            for (i, u) in pa.iter().enumerate() {
                if u.is_zero() {
                    continue;
                }
                for (j, v) in qb.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    dense[i + j] += c * Rational::from_integer(u * v);
                }
            }
        }
        BivarPoly::from_dense(d, &dense)
    }

    /// The image of `f` under the three-term operator
    /// `f(x, y) + f(x - y, x) + f(-y, x - y)`.
    pub fn period_relation(&self) -> BivarPoly {
        self.add(&self.substitute((1, -1), (1, 0)))
            .add(&self.substitute((0, -1), (1, -1)))
    }
}

/// Coefficients (indexed by `x` exponent) of `(s x + t y)^n`.
fn linear_power((s, t): (i64, i64), n: u32) -> Vec<BigInt> {
    let s = BigInt::from(s);
    let t = BigInt::from(t);
    (0..=n)
        .map(|k| binomial(n as u64, k as u64) * s.pow(k) * t.pow(n - k))
        .collect()
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivarPoly[{}]({})", self.degree, self)
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (a, b, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})*x^{a}*y^{b}", format_rational(c))?;
        }
        Ok(())
    }
}

impl Serialize for BivarPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.coeffs.len()))?;
        for (a, b, c) in self.terms() {
            map.serialize_entry(&format!("x^{a}*y^{b}"), &format_rational(c))?;
        }
        map.end()
    }
}

/// The defining conditions, in the order they are checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PeriodCondition {
    /// `f(x, 0) = 0`
    VanishesOnXAxis,
    /// `f(+-x, +-y) = f(x, y)`
    Even,
    /// `f(x, y) + f(y, x) = 0`
    Antisymmetric,
    /// `f(x, y) + f(x - y, x) + f(-y, x - y) = 0`
    ThreeTerm,
}

impl fmt::Display for PeriodCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PeriodCondition::VanishesOnXAxis => "f(x,0)=0",
            PeriodCondition::Even => "f(±x,±y)=f(x,y)",
            PeriodCondition::Antisymmetric => "f(x,y)+f(y,x)=0",
            PeriodCondition::ThreeTerm => "f(x,y)+f(x-y,x)+f(-y,x-y)=0",
        })
    }
}

/// Checks the four defining identities exactly; on failure reports the first
/// violated one.
pub fn check_period_poly(f: &BivarPoly) -> std::result::Result<(), PeriodCondition> {
    if !f.coeff(f.degree).is_zero() {
        return Err(PeriodCondition::VanishesOnXAxis);
    }
    if f.substitute((-1, 0), (0, 1)) != *f || f.substitute((1, 0), (0, -1)) != *f {
        return Err(PeriodCondition::Even);
    }
    if !f.add(&f.substitute((0, 1), (1, 0))).is_zero() {
        return Err(PeriodCondition::Antisymmetric);
    }
    if !f.period_relation().is_zero() {
        return Err(PeriodCondition::ThreeTerm);
    }
    Ok(())
}

pub fn is_period_poly(f: &BivarPoly) -> bool {
    check_period_poly(f).is_ok()
}

/// Coefficients `a_{i,j}` indexed by pairs `1 <= i < j` with `i + j = m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCoefficients {
    m: u32,
    coeffs: BTreeMap<(u32, u32), Rational>,
}

impl PairCoefficients {
    pub fn new(m: u32) -> Self {
        PairCoefficients {
            m,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = ((u32, u32), Rational)>>(
        m: u32,
        pairs: I,
    ) -> Result<Self> {
        let mut c = Self::new(m);
        for ((i, j), a) in pairs {
            c.set(i, j, a)?;
        }
        Ok(c)
    }

    pub fn set(&mut self, i: u32, j: u32, a: Rational) -> Result<()> {
        if i < 1 || i >= j || i + j != self.m {
            return Err(Error::InvalidArgument(format!(
                "pair ({i},{j}) is not of the form 1 <= i < j, i + j = {}",
                self.m
            )));
        }
        if a.is_zero() {
            self.coeffs.remove(&(i, j));
        } else {
            self.coeffs.insert((i, j), a);
        }
        Ok(())
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn get(&self, i: u32, j: u32) -> Rational {
        self.coeffs
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.coeffs.iter()
    }
}

/// All admissible pairs `(i, j)`, `1 <= i < j`, `i + j = m`, in lexicographic
/// order.
pub fn admissible_pairs(m: u32) -> Vec<(u32, u32)> {
    (1..m).map(|i| (i, m - i)).filter(|&(i, j)| i < j).collect()
}

/// `x^{2i} y^{2j} - y^{2i} x^{2j}`.
pub fn pair_basis_poly(i: u32, j: u32) -> BivarPoly {
    let mut p = BivarPoly::monomial(2 * i, 2 * j, Rational::one());
    p.add_term(2 * j, -Rational::one());
    p
}

/// `sum a_{i,j} (x^{2i} y^{2j} - y^{2i} x^{2j})`.
pub fn pair_to_poly(c: &PairCoefficients) -> BivarPoly {
    c.iter()
        .fold(BivarPoly::zero(2 * c.m), |acc, (&(i, j), a)| {
            acc.add(&pair_basis_poly(i, j).scale(a))
        })
}

/// Rational basis of `S_weight`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodSpace {
    pub weight: u32,
    pub dim: usize,
    pub basis: Vec<BivarPoly>,
}

/// Solves for `S_weight`, `weight = 2m + 2`. The basis is the reduced row
/// echelon basis in the monomial order `x^{2m}, x^{2m-1} y, ...`, so each
/// element has leading coefficient 1.
pub fn period_space(weight: u32) -> Result<PeriodSpace> {
    if weight < 4 || !weight.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "period polynomial weight must be even and at least 4, got {weight}"
        )));
    }
    let m = (weight - 2) / 2;
    let pairs = admissible_pairs(m);
    let columns: Vec<Vec<Rational>> = pairs
        .iter()
        .map(|&(i, j)| pair_basis_poly(i, j).period_relation().dense_graded())
        .collect();
    let system = QMatrix::from_columns(2 * m as usize + 1, &columns)?;
    let solutions: Vec<BivarPoly> = system
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let c = PairCoefficients::from_pairs(m, pairs.iter().copied().zip(v))
                .expect("admissible pairs");
            pair_to_poly(&c)
        })
        .collect();
    let basis = canonical_basis(2 * m, &solutions);
    Ok(PeriodSpace {
        weight,
        dim: basis.len(),
        basis,
    })
}

/// RREF basis of the span of `polys`, all of the given degree.
fn canonical_basis(degree: u32, polys: &[BivarPoly]) -> Vec<BivarPoly> {
    if polys.is_empty() {
        return Vec::new();
    }
    let rows: Vec<Vec<Rational>> = polys.iter().map(BivarPoly::dense_graded).collect();
    let (r, pivots) = QMatrix::from_rows(rows).expect("equal degrees").rref();
    (0..pivots.len())
        .map(|i| {
            let mut dense = r.row(i).to_vec();
            dense.reverse();
            BivarPoly::from_dense(degree, &dense)
        })
        .collect()
}

/// Whether two families span the same rational subspace. All polynomials in
/// both lists must share one degree.
pub fn subspace_equal(a: &[BivarPoly], b: &[BivarPoly]) -> Result<bool> {
    let mut degrees = a.iter().chain(b).map(BivarPoly::degree);
    let Some(degree) = degrees.next() else {
        return Ok(true);
    };
    if let Some(found) = degrees.find(|&d| d != degree) {
        return Err(Error::DegreeMismatch {
            expected: degree,
            found,
        });
    }
    Ok(canonical_basis(degree, a) == canonical_basis(degree, b))
}
