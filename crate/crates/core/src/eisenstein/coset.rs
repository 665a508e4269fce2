//! Functions on `GL2(Z/nZ)` that are invariant under the left action of
//! `+-P`, where `P` is the mirabolic subgroup of matrices `(u v; 0 1)`.
//!
//! The two families here are
//!
//! ```text
//! phi_1(a b; c d) = n^{k+1}/(k+2) * B_{k+2}(<c/n>)
//! phi_2(a b; c d) = n^{k+1}/(k+2) * B_{k+2}(<d/n>)
//! ```
//!
//! together with the averaged element
//! `phi~(g) = -p^{k+1}/(k+2) * sum_{alpha in F_p} B_{k+2}(<alpha c / p>)`, and
//! the Bernoulli-sum identity relating them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::bernoulli::BernPoly;
use crate::error::{Error, Result};
use crate::exactla::{format_rational, Rational};
use crate::primes::is_prime;

/// A 2x2 matrix with entries reduced modulo `modulus`, stored row-major as
/// `[a, b, c, d]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModMatrix {
    entries: [u64; 4],
    modulus: u64,
}

impl ModMatrix {
    pub fn new(entries: [i64; 4], modulus: u64) -> Self {
        assert!(modulus >= 1);
        let n = modulus as i64;
        ModMatrix {
            entries: entries.map(|e| e.rem_euclid(n) as u64),
            modulus,
        }
    }

    pub fn entries(&self) -> [u64; 4] {
        self.entries
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn c(&self) -> u64 {
        self.entries[2]
    }

    pub fn d(&self) -> u64 {
        self.entries[3]
    }

    pub fn det(&self) -> u64 {
        let [a, b, c, d] = self.entries;
        let n = self.modulus;
        (a * d % n + n - b * c % n) % n
    }

    pub fn is_invertible(&self) -> bool {
        self.det().gcd(&self.modulus) == 1
    }

    pub fn mul(&self, rhs: &ModMatrix) -> ModMatrix {
        assert_eq!(self.modulus, rhs.modulus);
        let [a, b, c, d] = self.entries;
        let [e, f, g, h] = rhs.entries;
        let n = self.modulus;
        ModMatrix {
            entries: [
                (a * e + b * g) % n,
                (a * f + b * h) % n,
                (c * e + d * g) % n,
                (c * f + d * h) % n,
            ],
            modulus: n,
        }
    }

    pub fn neg(&self) -> ModMatrix {
        let n = self.modulus;
        ModMatrix {
            entries: self.entries.map(|e| (n - e) % n),
            modulus: n,
        }
    }

    fn require_invertible(&self) -> Result<()> {
        if self.is_invertible() {
            Ok(())
        } else {
            Err(Error::NotInvertible(self.entries, self.modulus))
        }
    }
}

/// All of `GL2(Z/nZ)`, in lexicographic order of entries.
pub fn gl2(n: u64) -> Vec<ModMatrix> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let g = ModMatrix {
                        entries: [a, b, c, d],
                        modulus: n,
                    };
                    if g.is_invertible() {
                        out.push(g);
                    }
                }
            }
        }
    }
    out
}

/// The group `+-P(Z/nZ)`: `+-(u v; 0 1)` with `u` a unit.
pub fn signed_mirabolic(n: u64) -> Vec<ModMatrix> {
    let mut out = Vec::new();
    for u in (0..n).filter(|u| u.gcd(&n) == 1) {
        for v in 0..n {
            let m = ModMatrix {
                entries: [u, v, 0, 1 % n],
                modulus: n,
            };
            out.push(m);
            out.push(m.neg());
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Which bottom-row entry a coset function reads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Entry {
    C,
    D,
}

impl Entry {
    fn read(self, g: &ModMatrix) -> u64 {
        match self {
            Entry::C => g.c(),
            Entry::D => g.d(),
        }
    }
}

fn check_weight(k: u32) -> Result<()> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "coset functions need even k >= 2, got {k}"
        )));
    }
    Ok(())
}

/// `n^{k+1} / (k+2)`.
fn prefactor(k: u32, n: u64) -> Rational {
    Rational::new(BigInt::from(n).pow(k + 1), BigInt::from(k + 2))
}

/// `B_{k+2}(j / n)` for `j = 0, ..., n-1`.
fn bernoulli_table(k: u32, n: u64) -> Vec<Rational> {
    let b = BernPoly::new(k as usize + 2);
    (0..n)
        .map(|j| b.eval(&Rational::new(BigInt::from(j), BigInt::from(n))))
        .collect()
}

/// `phi_1` (reads `c`) or `phi_2` (reads `d`) at `g`.
pub fn phi(k: u32, n: u64, which: Entry, g: &ModMatrix) -> Result<Rational> {
    check_weight(k)?;
    if g.modulus() != n {
        return Err(Error::InvalidArgument(format!(
            "matrix is taken modulo {}, level is {n}",
            g.modulus()
        )));
    }
    g.require_invertible()?;
    let x = Rational::new(BigInt::from(which.read(g)), BigInt::from(n));
    Ok(prefactor(k, n) * BernPoly::new(k as usize + 2).eval(&x))
}

/// A function on `GL2(Z/nZ)` stored as its full value table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetFn {
    pub k: u32,
    pub n: u64,
    values: BTreeMap<ModMatrix, Rational>,
}

impl CosetFn {
    pub fn from_fn(k: u32, n: u64, f: impl Fn(&ModMatrix) -> Rational) -> Self {
        CosetFn {
            k,
            n,
            values: gl2(n).into_iter().map(|g| (g, f(&g))).collect(),
        }
    }

    pub fn value(&self, g: &ModMatrix) -> Option<&Rational> {
        self.values.get(g)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// First pair `(h, g)` with `h` in `+-P` and `f(h g) != f(g)`, if any.
    pub fn invariance_violation(&self) -> Option<(ModMatrix, ModMatrix)> {
        let group = signed_mirabolic(self.n);
        for (g, v) in &self.values {
            for h in &group {
                if self.values.get(&h.mul(g)) != Some(v) {
                    return Some((*h, *g));
                }
            }
        }
        None
    }

    pub fn is_invariant(&self) -> bool {
        self.invariance_violation().is_none()
    }
}

#[derive(Serialize)]
struct CosetValue {
    matrix: [u64; 4],
    value: String,
}

#[derive(Serialize)]
struct CosetFnJson {
    k: u32,
    n: u64,
    values: Vec<CosetValue>,
}

impl Serialize for CosetFn {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CosetFnJson {
            k: self.k,
            n: self.n,
            values: self
                .values
                .iter()
                .map(|(g, v)| CosetValue {
                    matrix: g.entries(),
                    value: format_rational(v),
                })
                .collect(),
        }
        .serialize(s)
    }
}

/// Value table of `phi_1` or `phi_2` on all of `GL2(Z/nZ)`.
pub fn phi_table(k: u32, n: u64, which: Entry) -> Result<CosetFn> {
    check_weight(k)?;
    let table = bernoulli_table(k, n);
    let pre = prefactor(k, n);
    Ok(CosetFn::from_fn(k, n, |g| {
        &pre * &table[which.read(g) as usize]
    }))
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    Ok(())
}

/// `-p^{k+1}/(k+2) * sum_{alpha in F_p} B_{k+2}(<alpha e / p>)` where `e` is
/// the chosen bottom-row entry.
pub fn tilde_phi_with(k: u32, p: u64, entry: Entry, g: &ModMatrix) -> Result<Rational> {
    check_weight(k)?;
    check_prime(p)?;
    g.require_invertible()?;
    let table = bernoulli_table(k, p);
    Ok(-prefactor(k, p) * alpha_sum(&table, entry.read(g), p))
}

/// The averaged element, reading entry `c`.
pub fn tilde_phi(k: u32, p: u64, g: &ModMatrix) -> Result<Rational> {
    tilde_phi_with(k, p, Entry::C, g)
}

/// `sum_{alpha in F_p} table[alpha * e mod p]`.
fn alpha_sum(table: &[Rational], e: u64, p: u64) -> Rational {
    (0..p).fold(Rational::zero(), |acc, alpha| {
        acc + &table[(alpha * e % p) as usize]
    })
}

/// Result of checking the Bernoulli-sum chain over all of `GL2(F_p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prop49Check {
    pub k: u32,
    pub p: u64,
    /// Entry feeding the averaged element on the right-hand side.
    pub entry: Entry,
    pub matrices_checked: usize,
    /// First matrix where the chain breaks.
    pub first_failure: Option<[u64; 4]>,
}

impl Prop49Check {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Verifies, for every `g = (a b; c d)` in `GL2(F_p)`,
///
/// ```text
/// p^{k+1}/(k+2) * sum_{alpha in F_p^x, beta in F_p} B_{k+2}(<(alpha c + beta d)/p>)
///   = p^{k+1}/(k+2) * (sum_{alpha, beta in F_p} ... - sum_{beta in F_p} B_{k+2}(<beta d/p>))
///   = p B_{k+2}/(k+2) + phi~(g)
/// ```
///
/// where `phi~` reads the bottom-row entry `entry`. With `Entry::D` the
/// chain holds identically; with `Entry::C` it fails as soon as exactly one
/// of `c`, `d` vanishes.
pub fn check_prop49_with(k: u32, p: u64, entry: Entry) -> Result<Prop49Check> {
    check_weight(k)?;
    check_prime(p)?;
    if p == 2 {
        return Err(Error::InvalidArgument(
            "the Bernoulli-sum chain needs an odd prime".into(),
        ));
    }
    let table = bernoulli_table(k, p);
    let pre = prefactor(k, p);
    let head = Rational::new(BigInt::from(p), BigInt::from(k + 2)) * &table[0];
    let group = gl2(p);
    let mut first_failure = None;
    for g in &group {
        let (c, d) = (g.c(), g.d());
        let mut units_sum = Rational::zero();
        let mut full_sum = Rational::zero();
        for alpha in 0..p {
            for beta in 0..p {
                let v = &table[((alpha * c + beta * d) % p) as usize];
                full_sum += v;
                if alpha != 0 {
                    units_sum += v;
                }
            }
        }
        let beta_sum = alpha_sum(&table, d, p);
        let lhs = &pre * &units_sum;
        let middle = &pre * (full_sum - beta_sum);
        let rhs = &head - &pre * alpha_sum(&table, entry.read(g), p);
        if lhs != middle || middle != rhs {
            first_failure = Some(g.entries());
            break;
        }
    }
    Ok(Prop49Check {
        k,
        p,
        entry,
        matrices_checked: group.len(),
        first_failure,
    })
}

/// The chain with the variant that holds, `phi~` fed by entry `d`.
pub fn check_prop49_identity(k: u32, p: u64) -> Result<Prop49Check> {
    check_prop49_with(k, p, Entry::D)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::bernoulli::{bernoulli_number, bernoulli_poly_eval};
    use crate::exactla::{rat, ratio};

    #[test]
    fn group_orders() {
        assert_eq!(gl2(3).len(), 48);
        assert_eq!(gl2(5).len(), 480);
        assert_eq!(gl2(4).len(), 96);
        // 2 * phi(n) * n elements.
        assert_eq!(signed_mirabolic(5).len(), 40);
        assert_eq!(signed_mirabolic(3).len(), 12);
    }

    #[test]
    fn phi_values() {
        let g = ModMatrix::new([1, 0, 0, 1], 5);
        assert_eq!(phi(2, 5, Entry::C, &g).unwrap(), ratio(-25, 24));
        let expected = ratio(125, 4) * bernoulli_poly_eval(4, &ratio(1, 5));
        assert_eq!(phi(2, 5, Entry::D, &g).unwrap(), expected);
        let t = ModMatrix::new([1, 1, 0, 1], 5);
        for g in gl2(5) {
            assert_eq!(
                phi(2, 5, Entry::C, &t.mul(&g)).unwrap(),
                phi(2, 5, Entry::C, &g).unwrap()
            );
        }
    }

    #[test]
    fn phi_rejects_bad_input() {
        let singular = ModMatrix::new([1, 2, 2, 4], 5);
        assert!(matches!(
            phi(2, 5, Entry::C, &singular),
            Err(Error::NotInvertible(..))
        ));
        let g = ModMatrix::new([1, 0, 0, 1], 5);
        assert!(phi(3, 5, Entry::C, &g).is_err());
        assert!(phi(2, 7, Entry::C, &g).is_err());
    }

    #[test]
    fn tables_are_invariant() {
        for n in [3, 5, 7] {
            for k in [2, 4] {
                assert!(phi_table(k, n, Entry::C).unwrap().is_invariant());
                assert!(phi_table(k, n, Entry::D).unwrap().is_invariant());
            }
        }
    }

    #[test]
    fn non_invariant_table_is_caught() {
        let f = CosetFn::from_fn(2, 3, |g| rat(g.entries()[0] as i64));
        assert!(f.invariance_violation().is_some());
    }

    #[test]
    fn tilde_phi_values() {
        let p = 5;
        let k = 2;
        let g = ModMatrix::new([1, 0, 0, 1], p);
        let expected = -ratio(125, 4) * rat(p as i64) * bernoulli_number(4);
        assert_eq!(tilde_phi(k, p, &g).unwrap(), expected);

        let g = ModMatrix::new([0, 1, 1, 0], 3);
        let b4 = BernPoly::new(4);
        let s = b4.eval(&rat(0)) + b4.eval(&ratio(1, 3)) + b4.eval(&ratio(2, 3));
        assert_eq!(tilde_phi(2, 3, &g).unwrap(), -ratio(27, 4) * s);
    }

    #[test]
    fn tilde_phi_depends_only_on_vanishing_of_c() {
        for p in [3u64, 5, 7] {
            let group = gl2(p);
            let zero_c = tilde_phi(2, p, &ModMatrix::new([1, 0, 0, 1], p)).unwrap();
            let unit_c = tilde_phi(2, p, &ModMatrix::new([0, 1, 1, 0], p)).unwrap();
            assert_ne!(zero_c, unit_c);
            for g in &group {
                let v = tilde_phi(2, p, g).unwrap();
                assert_eq!(
                    v,
                    if g.c() == 0 {
                        zero_c.clone()
                    } else {
                        unit_c.clone()
                    }
                );
            }
        }
    }

    #[test]
    fn chain_holds_with_d_and_not_with_c() {
        for (k, p) in [(2, 3), (2, 5), (4, 3)] {
            let d = check_prop49_identity(k, p).unwrap();
            assert!(d.holds(), "{d:?}");
            let c = check_prop49_with(k, p, Entry::C).unwrap();
            assert!(!c.holds());
        }
        assert_eq!(check_prop49_identity(2, 3).unwrap().matrices_checked, 48);
        assert_eq!(check_prop49_identity(2, 5).unwrap().matrices_checked, 480);
    }

    #[test]
    fn chain_rejects_bad_parameters() {
        assert!(check_prop49_identity(2, 9).is_err());
        assert!(check_prop49_identity(2, 2).is_err());
        assert!(check_prop49_identity(3, 5).is_err());
    }
}
