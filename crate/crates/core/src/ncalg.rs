//! Noncommutative polynomials in the letters `e0`, `e1`, truncated by depth.
//!
//! Lie elements live here through their expansion in the word basis of the
//! tensor algebra. The depth of a word is its number of `e1` letters; words
//! deeper than a polynomial's [`DepthCap`] are dropped as soon as they are
//! produced. Since depth is additive under concatenation, the deep words span
//! a two-sided ideal and every algebraic identity survives truncation exactly.
//!
//! The derivation `a(X)` is determined by `a(X)(e0) = [e0, X]` and
//! `a(X)(e1) = 0`, and the Ihara bracket is
//! `{X, Y} = a(X)(Y) - a(Y)(X) + [X, Y]`, the bracket making `X -> a(X)` a
//! Lie algebra homomorphism into derivations.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{format_rational, parse_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    E0,
    E1,
}

/// A monomial of the free associative algebra. Ordered lexicographically with
/// `E0 < E1` (a proper prefix sorts first).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.len()
    }

    pub fn depth(&self) -> usize {
        self.0.iter().filter(|&&l| l == Letter::E1).count()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `e0^a e1 e0^b e1 e0^c ...` from the run lengths of `e0` between the
    /// `e1` letters.
    pub fn from_e0_runs(runs: &[usize]) -> Word {
        let mut v = Vec::new();
        for (i, &r) in runs.iter().enumerate() {
            if i > 0 {
                v.push(Letter::E1);
            }
            v.extend(std::iter::repeat_n(Letter::E0, r));
        }
        Word(v)
    }

    /// Parses a string over `{'0', '1'}`.
    pub fn parse(s: &str) -> Result<Word> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(Letter::E0),
                '1' => Ok(Letter::E1),
                _ => Err(Error::InvalidArgument(format!(
                    "bad letter {c:?} in word {s:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    /// Bit-string form, e.g. `"00101"`.
    pub fn to_bits(&self) -> String {
        self.0
            .iter()
            .map(|l| match l {
                Letter::E0 => '0',
                Letter::E1 => '1',
            })
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            f.write_str(match l {
                Letter::E0 => "e0",
                Letter::E1 => "e1",
            })?;
        }
        Ok(())
    }
}

/// Upper bound on the depth of retained words; `None` means unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct DepthCap(Option<usize>);

impl DepthCap {
    pub const UNBOUNDED: DepthCap = DepthCap(None);

    pub fn at_most(cap: usize) -> Self {
        DepthCap(Some(cap))
    }

    pub fn value(self) -> Option<usize> {
        self.0
    }

    pub fn admits(self, depth: usize) -> bool {
        self.0.is_none_or(|c| depth <= c)
    }

    pub fn min(self, other: DepthCap) -> DepthCap {
        match (self.0, other.0) {
            (None, x) | (x, None) => DepthCap(x),
            (Some(a), Some(b)) => DepthCap(Some(a.min(b))),
        }
    }
}

/// Depth-truncated element of `Q<e0, e1>`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NCPoly {
    terms: BTreeMap<Word, Rational>,
    cap: DepthCap,
}

impl NCPoly {
    pub fn zero(cap: DepthCap) -> Self {
        NCPoly {
            terms: BTreeMap::new(),
            cap,
        }
    }

    pub fn monomial(word: Word, coeff: Rational, cap: DepthCap) -> Self {
        let mut p = Self::zero(cap);
        p.add_term(word, coeff);
        p
    }

    pub fn letter(l: Letter, cap: DepthCap) -> Self {
        Self::monomial(Word(vec![l]), Rational::one(), cap)
    }

    pub fn e0(cap: DepthCap) -> Self {
        Self::letter(Letter::E0, cap)
    }

    pub fn e1(cap: DepthCap) -> Self {
        Self::letter(Letter::E1, cap)
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Rational)>>(terms: I, cap: DepthCap) -> Self {
        let mut p = Self::zero(cap);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn cap(&self) -> DepthCap {
        self.cap
    }

    /// Same terms under a (possibly tighter) cap.
    pub fn with_cap(&self, cap: DepthCap) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), c.clone())), cap)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `coeff * word`, dropping it if the word is too deep.
    pub fn add_term(&mut self, word: Word, coeff: Rational) {
        if coeff.is_zero() || !self.cap.admits(word.depth()) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, s: &Rational) -> NCPoly {
        if s.is_zero() {
            return NCPoly::zero(self.cap);
        }
        NCPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect(),
            cap: self.cap,
        }
    }

    /// Terms of depth exactly `d`.
    pub fn depth_component(&self, d: usize) -> NCPoly {
        self.filter(|w| w.depth() == d)
    }

    /// Terms of weight (length) exactly `n`.
    pub fn weight_component(&self, n: usize) -> NCPoly {
        self.filter(|w| w.weight() == n)
    }

    fn filter(&self, keep: impl Fn(&Word) -> bool) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
            cap: self.cap,
        }
    }

    /// The common weight of all terms, if there is exactly one.
    pub fn homogeneous_weight(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Word::weight);
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// The common depth of all terms, if there is exactly one.
    pub fn homogeneous_depth(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Word::depth);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Least depth among the terms (`None` for zero).
    pub fn min_depth(&self) -> Option<usize> {
        self.terms.keys().map(Word::depth).min()
    }

    /// Concatenation product; the result has the tighter of the two caps.
    pub fn nc_mul(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero(self.cap.min(other.cap));
        for (u, a) in &self.terms {
            let du = u.depth();
            for (v, b) in &other.terms {
                if out.cap.admits(du + v.depth()) {
                    out.add_term(u.concat(v), a * b);
                }
            }
        }
        out
    }

    fn add_assign_ref(&mut self, other: &NCPoly) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPoly({self})")
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{}*", format_rational(&mag))?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.with_cap(self.cap.min(rhs.cap));
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        self + &(-rhs)
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), -c.clone()))
                .collect(),
            cap: self.cap,
        }
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        self.nc_mul(rhs)
    }
}

impl Serialize for NCPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, String> = self
            .terms
            .iter()
            .map(|(w, c)| (w.to_bits(), format_rational(c)))
            .collect();
        map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NCPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let map = BTreeMap::<String, String>::deserialize(d)?;
        let mut p = NCPoly::zero(DepthCap::UNBOUNDED);
        for (w, c) in map {
            let w = Word::parse(&w).map_err(de::Error::custom)?;
            let c = parse_rational(&c).map_err(de::Error::custom)?;
            p.add_term(w, c);
        }
        Ok(p)
    }
}

/// Commutator `pq - qp`.
pub fn lie_bracket(p: &NCPoly, q: &NCPoly) -> NCPoly {
    &p.nc_mul(q) - &q.nc_mul(p)
}

/// `ad(x)^n (y)`, with `ad(x)^0 = id`.
pub fn ad_pow(x: &NCPoly, n: usize, y: &NCPoly) -> NCPoly {
    (0..n).fold(y.clone(), |acc, _| lie_bracket(x, &acc))
}

/// `a(X)(Y)` for the derivation with `a(X)(e0) = [e0, X]`, `a(X)(e1) = 0`.
///
/// On a word, each occurrence of `e0` is replaced in turn by `[e0, X]`
/// (Leibniz rule); the results are summed.
pub fn derivation_apply(x: &NCPoly, y: &NCPoly) -> NCPoly {
    let cap = x.cap.min(y.cap);
    let image = lie_bracket(&NCPoly::e0(cap), x);
    let mut out = NCPoly::zero(cap);
    for (w, c) in &y.terms {
        let base_depth = w.depth();
        let letters = w.letters();
        for (i, &l) in letters.iter().enumerate() {
            if l != Letter::E0 {
                continue;
            }
            for (u, b) in &image.terms {
                if !cap.admits(base_depth + u.depth()) {
                    continue;
                }
                let mut v = Vec::with_capacity(letters.len() + u.weight() - 1);
                v.extend_from_slice(&letters[..i]);
                v.extend_from_slice(u.letters());
                v.extend_from_slice(&letters[i + 1..]);
                out.add_term(Word(v), c * b);
            }
        }
    }
    out
}

/// Ihara bracket `{X, Y} = a(X)(Y) - a(Y)(X) + [X, Y]`.
pub fn ihara_bracket(x: &NCPoly, y: &NCPoly) -> NCPoly {
    let mut out = derivation_apply(x, y);
    out.add_assign_ref(&-&derivation_apply(y, x));
    out.add_assign_ref(&lie_bracket(x, y));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;

    const INF: DepthCap = DepthCap::UNBOUNDED;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn poly(terms: &[(&str, i64)]) -> NCPoly {
        NCPoly::from_terms(terms.iter().map(|&(s, c)| (w(s), rat(c))), INF)
    }

    #[test]
    fn multiplication() {
        let e0 = NCPoly::e0(INF);
        let e1 = NCPoly::e1(INF);
        assert_eq!(&e0 * &e1, poly(&[("01", 1)]));
        assert_eq!(&(&e0 + &e1) * &e1, poly(&[("01", 1), ("11", 1)]));
        let capped = NCPoly::e1(DepthCap::at_most(1));
        assert!((&capped * &capped).is_zero());
    }

    #[test]
    fn mixed_caps_take_minimum() {
        let a = NCPoly::e1(DepthCap::at_most(1));
        let b = NCPoly::e1(INF);
        let prod = &a * &b;
        assert_eq!(prod.cap(), DepthCap::at_most(1));
        assert!(prod.is_zero());
    }

    #[test]
    fn brackets() {
        let e0 = NCPoly::e0(INF);
        let e1 = NCPoly::e1(INF);
        assert!(lie_bracket(&e0, &e0).is_zero());
        assert_eq!(lie_bracket(&e0, &e1), poly(&[("01", 1), ("10", -1)]));
        let nested = lie_bracket(&lie_bracket(&e0, &e1), &e1);
        assert_eq!(nested, poly(&[("011", 1), ("101", -2), ("110", 1)]));
    }

    #[test]
    fn ad_powers() {
        let e0 = NCPoly::e0(INF);
        let e1 = NCPoly::e1(INF);
        assert_eq!(ad_pow(&e0, 0, &e1), e1);
        assert_eq!(ad_pow(&e0, 1, &e1), poly(&[("01", 1), ("10", -1)]));
        assert_eq!(
            ad_pow(&e0, 2, &e1),
            poly(&[("001", 1), ("010", -2), ("100", 1)])
        );
    }

    #[test]
    fn derivation_on_generators() {
        let e0 = NCPoly::e0(INF);
        let e1 = NCPoly::e1(INF);
        assert!(derivation_apply(&e1, &e1).is_zero());
        assert_eq!(derivation_apply(&e1, &e0), poly(&[("01", 1), ("10", -1)]));
        let c = lie_bracket(&e0, &e1);
        let expected = &(&c * &e0) + &(&e0 * &c);
        assert_eq!(derivation_apply(&e1, &(&e0 * &e0)), expected);
    }

    #[test]
    fn ihara_trivial_cases() {
        let e0 = NCPoly::e0(INF);
        let e1 = NCPoly::e1(INF);
        let f3 = ad_pow(&e0, 2, &e1);
        assert!(ihara_bracket(&f3, &f3).is_zero());
        assert!(ihara_bracket(&e1, &e1).is_zero());
    }

    #[test]
    fn depth_components() {
        let c = poly(&[("01", 1), ("10", -1)]);
        assert_eq!(c.depth_component(1), c);
        let e0 = NCPoly::e0(INF);
        let f3 = ad_pow(&e0, 2, &NCPoly::e1(INF));
        assert!(f3.depth_component(2).is_zero());
        assert_eq!(
            poly(&[("01", 1), ("11", 1)]).depth_component(2),
            poly(&[("11", 1)])
        );
    }

    #[test]
    fn word_order_matches_bit_strings() {
        let mut words = [w("10"), w("0"), w("011"), w("01"), w("1")];
        words.sort();
        let bits: Vec<String> = words.iter().map(Word::to_bits).collect();
        let mut sorted = bits.clone();
        sorted.sort();
        assert_eq!(bits, sorted);
    }

    #[test]
    fn json_round_trip() {
        let p = poly(&[("001", 1), ("010", -2), ("100", 1)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"001":"1","010":"-2","100":"1"}"#);
        let back: NCPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn display_form() {
        let p = poly(&[("001", 1), ("010", -2), ("100", 1)]);
        assert_eq!(p.to_string(), "e0e0e1 - 2*e0e1e0 + e1e0e0");
    }
}
