//! Characters of `GL2` on the diagonal torus `diag(t1, t2)`.
//!
//! `Sym^u(V)(v)` denotes `Sym^u(V) ⊗ det^{-v}`, so its character is
//! `(t1^u + t1^{u-1} t2 + ... + t2^u) (t1 t2)^{-v}`. With this convention
//! Clebsch-Gordan reads
//! `Sym^k ⊗ Sym^l = Sym^{k+l} ⊕ Sym^{k+l-2}(-1) ⊕ ... ⊕ Sym^{k-l}(-l)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};

/// The irreducible `Sym^u(V)(v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IrrepLabel {
    pub u: u32,
    pub v: i64,
}

impl IrrepLabel {
    pub fn new(u: u32, v: i64) -> Self {
        IrrepLabel { u, v }
    }

    pub fn dim(self) -> u64 {
        self.u as u64 + 1
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sym{}({})", self.u, self.v)
    }
}

impl FromStr for IrrepLabel {
    type Err = Error;

    /// Parses `Sym{u}({v})`, e.g. `Sym4(-2)`; a bare `Sym{u}` means twist 0.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedLabel(s.to_string());
        let rest = s.trim().strip_prefix("Sym").ok_or_else(bad)?;
        let (u, v) = match rest.split_once('(') {
            Some((u, tail)) => (u, tail.strip_suffix(')').ok_or_else(bad)?),
            None => (rest, "0"),
        };
        Ok(IrrepLabel {
            u: u.parse().map_err(|_| bad())?,
            v: v.parse().map_err(|_| bad())?,
        })
    }
}

impl Serialize for IrrepLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Laurent polynomial in `t1, t2` with integer coefficients, keyed by the
/// exponent pair `(a, b)` of `t1^a t2^b`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Character {
    coeffs: BTreeMap<(i64, i64), i64>,
}

impl Character {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    pub fn monomial(a: i64, b: i64, c: i64) -> Self {
        let mut ch = Self::zero();
        ch.add_term(a, b, c);
        ch
    }

    pub fn add_term(&mut self, a: i64, b: i64, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.coeffs.entry((a, b)).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.coeffs.remove(&(a, b));
        }
    }

    pub fn coeff(&self, a: i64, b: i64) -> i64 {
        self.coeffs.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), i64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Sum of coefficients (the dimension, for a genuine character).
    pub fn degree(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn add(&self, other: &Character) -> Character {
        let mut out = self.clone();
        for (&(a, b), &c) in &other.coeffs {
            out.add_term(a, b, c);
        }
        out
    }

    pub fn scale(&self, s: i64) -> Character {
        let mut out = Character::zero();
        for (&(a, b), &c) in &self.coeffs {
            out.add_term(a, b, c * s);
        }
        out
    }

    pub fn mul(&self, other: &Character) -> Character {
        let mut out = Character::zero();
        for (&(a, b), &c) in &self.coeffs {
            for (&(x, y), &d) in &other.coeffs {
                out.add_term(a + x, b + y, c * d);
            }
        }
        out
    }

    /// Multiplies by `(t1 t2)^e`.
    pub fn shift(&self, e: i64) -> Character {
        Character {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(a, b), &c)| ((a + e, b + e), c))
                .collect(),
        }
    }
}

/// Character of `Sym^u(V)(v)`.
pub fn irrep_char(l: IrrepLabel) -> Character {
    let u = l.u as i64;
    let mut ch = Character::zero();
    for i in 0..=u {
        ch.add_term(u - i, i, 1);
    }
    ch.shift(-l.v)
}

/// Multiset of irreducibles, keyed by label.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Decomposition(BTreeMap<IrrepLabel, u64>);

impl Decomposition {
    pub fn multiplicity(&self, l: IrrepLabel) -> u64 {
        self.0.get(&l).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (IrrepLabel, u64)> + '_ {
        self.0.iter().map(|(&l, &m)| (l, m))
    }

    pub fn labels(&self) -> impl Iterator<Item = IrrepLabel> + '_ {
        self.0.keys().copied()
    }

    /// Total number of irreducible summands, with multiplicity.
    pub fn count(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn character(&self) -> Character {
        self.iter().fold(Character::zero(), |acc, (l, m)| {
            acc.add(&irrep_char(l).scale(m as i64))
        })
    }

    pub fn from_labels<I: IntoIterator<Item = IrrepLabel>>(labels: I) -> Self {
        let mut map = BTreeMap::new();
        for l in labels {
            *map.entry(l).or_insert(0) += 1;
        }
        Decomposition(map)
    }
}

impl Serialize for Decomposition {
    /// JSON object `label -> multiplicity`, largest symmetric power first.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (l, m) in self.0.iter().rev() {
            map.serialize_entry(&l.to_string(), m)?;
        }
        map.end()
    }
}

/// Splits a character into irreducibles by repeatedly removing the
/// irreducible whose highest weight is the lexicographically largest
/// exponent pair still present.
pub fn decompose_character(c: &Character) -> Result<Decomposition> {
    let mut rest = c.clone();
    let mut out = BTreeMap::new();
    while let Some((&(a, b), &mult)) = rest.coeffs.iter().next_back() {
        if mult < 0 || a < b {
            return Err(Error::NotACharacter(format!(
                "leading term t1^{a} t2^{b} has coefficient {mult}"
            )));
        }
        let label = IrrepLabel::new((a - b) as u32, -b);
        rest = rest.add(&irrep_char(label).scale(-mult));
        *out.entry(label).or_insert(0) += mult as u64;
    }
    Ok(Decomposition(out))
}

/// Decomposes the tensor product of the listed irreducibles.
pub fn tensor_decompose(labels: &[IrrepLabel]) -> Result<Decomposition> {
    if labels.is_empty() {
        return Err(Error::InvalidArgument(
            "tensor product of an empty list".into(),
        ));
    }
    let product = labels
        .iter()
        .fold(Character::one(), |acc, &l| acc.mul(&irrep_char(l)));
    decompose_character(&product)
}

/// `Sym^k ⊗ Sym^l` by the closed formula, twists added.
pub fn clebsch_gordan(a: IrrepLabel, b: IrrepLabel) -> Decomposition {
    let (hi, lo) = if a.u >= b.u { (a, b) } else { (b, a) };
    Decomposition::from_labels(
        (0..=lo.u).map(|i| IrrepLabel::new(hi.u + lo.u - 2 * i, a.v + b.v - i as i64)),
    )
}

/// Outcome of the component-shape test on a tensor product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma17Check {
    pub n: u32,
    pub factors: Vec<IrrepLabel>,
    pub components: Decomposition,
    /// `Sym^{2n}(V)(2n+1)` does not occur.
    pub target_absent: bool,
    /// Every component is `Sym^u(V)(u + 1 + w)` with `w >= 1`.
    pub all_shifted: bool,
}

impl Lemma17Check {
    pub fn holds(&self) -> bool {
        self.target_absent && self.all_shifted
    }
}

/// For factors `Sym^{n_i}(V)(n_i + 1 + r_i)` with `n_i, r_i >= 0`, decomposes
/// their tensor product and checks that `Sym^{2n}(V)(2n+1)` is absent and
/// that every component has the form `Sym^u(V)(u + 1 + w)`, `w >= 1`.
pub fn check_lemma17(n: u32, factors: &[IrrepLabel]) -> Result<Lemma17Check> {
    if factors.len() < 2 {
        return Err(Error::InvalidArgument(
            "the component-shape check needs at least two factors".into(),
        ));
    }
    if let Some(bad) = factors.iter().find(|l| l.v < l.u as i64 + 1) {
        return Err(Error::MalformedLabel(format!(
            "{bad} is not of the form Sym^n(V)(n+1+r) with r >= 0"
        )));
    }
    let components = tensor_decompose(factors)?;
    let target = IrrepLabel::new(2 * n, 2 * n as i64 + 1);
    let target_absent = components.multiplicity(target) == 0;
    let all_shifted = components.labels().all(|l| l.v - (l.u as i64 + 1) >= 1);
    Ok(Lemma17Check {
        n,
        factors: factors.to_vec(),
        components,
        target_absent,
        all_shifted,
    })
}

/// Relabels `t1^a t2^b` as the bigrade `(2m, n)` with `m = b`, `n = a + b`.
pub fn bigraded_dims(c: &Character) -> Result<BTreeMap<(i64, i64), u64>> {
    c.terms()
        .map(|((a, b), k)| {
            if k < 0 {
                Err(Error::NotACharacter(format!(
                    "t1^{a} t2^{b} has coefficient {k}"
                )))
            } else {
                Ok(((2 * b, a + b), k as u64))
            }
        })
        .collect()
}

/// Inverse of [`bigraded_dims`].
pub fn character_from_bigraded(dims: &BTreeMap<(i64, i64), u64>) -> Result<Character> {
    let mut c = Character::zero();
    for (&(two_m, n), &k) in dims {
        if two_m % 2 != 0 {
            return Err(Error::InvalidArgument(format!("odd first bigrade {two_m}")));
        }
        let m = two_m / 2;
        c.add_term(n - m, m, k as i64);
    }
    Ok(c)
}
