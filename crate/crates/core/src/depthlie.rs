//! Depth-2 relations among the canonical generators.
//!
//! The generator of weight `2m + 1` is represented by its depth-1 leading
//! term `f_{2m+1} = ad(e0)^{2m}(e1)`. For `i + j = m` the depth-2 part of the
//! Ihara bracket `{f_{2i+1}, f_{2j+1}}` is a vector on the words
//! `e0^a e1 e0^b e1 e0^c`, `a + b + c = 2m`. Linear relations among those
//! brackets are the kernel of the matrix with one such column per pair
//! `i < j`; each relation is expected to correspond to a restricted even period
//! polynomial of weight `2m + 2`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{QMatrix, Rational};
use crate::ncalg::{ad_pow, ihara_bracket, DepthCap, NCPoly, Word};
use crate::periodpoly::{self, admissible_pairs, pair_to_poly, PairCoefficients};

/// Index `m >= 1` of the canonical generator of weight `2m + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorIndex(u32);

impl GeneratorIndex {
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument(
                "generator index must be at least 1 (weights start at 3)".into(),
            ));
        }
        Ok(GeneratorIndex(m))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn weight(self) -> u32 {
        2 * self.0 + 1
    }
}

/// `ad(e0)^{2m}(e1)`, the depth-1 leading term of the generator of weight
/// `2m + 1`.
pub fn sigma_leading(m: u32) -> Result<NCPoly> {
    let m = GeneratorIndex::new(m)?;
    let cap = DepthCap::UNBOUNDED;
    Ok(ad_pow(
        &NCPoly::e0(cap),
        2 * m.get() as usize,
        &NCPoly::e1(cap),
    ))
}

/// The depth-2 words of the given weight, in lexicographic order.
pub fn depth2_basis(weight: usize) -> Vec<Word> {
    assert!(weight >= 2);
    let n = weight - 2;
    let mut words: Vec<Word> = (0..=n)
        .flat_map(|a| (0..=n - a).map(move |b| Word::from_e0_runs(&[a, b, n - a - b])))
        .collect();
    words.sort();
    words
}

/// The bracket matrix together with its row and column labels.
#[derive(Clone, Debug)]
pub struct BracketSystem {
    pub m: u32,
    pub pairs: Vec<(u32, u32)>,
    pub rows: Vec<Word>,
    pub matrix: QMatrix,
}

/// Depth-2 component of `{f_{2i+1}, f_{2j+1}}` on the depth-2 word basis.
pub fn bracket_column(i: u32, j: u32, rows: &[Word]) -> Result<Vec<Rational>> {
    let cap = DepthCap::at_most(2);
    let a = sigma_leading(i)?.with_cap(cap);
    let b = sigma_leading(j)?.with_cap(cap);
    let bracket = ihara_bracket(&a, &b).depth_component(2);
    Ok(rows.iter().map(|w| bracket.coeff(w)).collect())
}

pub fn bracket_system(m: u32) -> Result<BracketSystem> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "bracket matrix needs m >= 2, got {m}"
        )));
    }
    let pairs = admissible_pairs(m);
    let rows = depth2_basis(2 * m as usize + 2);
    let columns = pairs
        .iter()
        .map(|&(i, j)| bracket_column(i, j, &rows))
        .collect::<Result<Vec<_>>>()?;
    let matrix = QMatrix::from_columns(rows.len(), &columns)?;
    Ok(BracketSystem {
        m,
        pairs,
        rows,
        matrix,
    })
}

/// Columns indexed by the pairs `i < j`, `i + j = m`; rows by
/// [`depth2_basis`] of weight `2m + 2`.
pub fn bracket_matrix(m: u32) -> Result<QMatrix> {
    bracket_system(m).map(|s| s.matrix)
}

/// Canonical basis of the relations `sum a_{i,j} {f_{2i+1}, f_{2j+1}} = 0`
/// in depth 2.
pub fn relation_kernel(m: u32) -> Result<Vec<PairCoefficients>> {
    let system = bracket_system(m)?;
    Ok(system
        .matrix
        .kernel_basis()
        .into_iter()
        .map(|v| {
            PairCoefficients::from_pairs(m, system.pairs.iter().copied().zip(v))
                .expect("admissible pairs")
        })
        .collect())
}

/// Outcome of comparing bracket relations with period polynomials in one
/// weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrownReport {
    pub weight: u32,
    pub pairs: Vec<[u32; 2]>,
    pub kernel_dim: usize,
    pub period_dim: usize,
    /// Every relation maps into `S_weight`.
    pub in_space: bool,
    /// The images of the relations span `S_weight`.
    pub spans: bool,
}

impl BrownReport {
    pub fn holds(&self) -> bool {
        self.in_space && self.spans && self.kernel_dim == self.period_dim
    }
}

/// Pushes the relation kernel in weight `2m + 2` through
/// [`pair_to_poly`] and compares with the independently solved period space.
pub fn verify_brown_criterion(m: u32) -> Result<BrownReport> {
    let relations = relation_kernel(m)?;
    let weight = 2 * m + 2;
    let space = periodpoly::period_space(weight)?;
    let images: Vec<_> = relations.iter().map(pair_to_poly).collect();
    let in_space = images.iter().all(periodpoly::is_period_poly);
    let spans = periodpoly::subspace_equal(&images, &space.basis)?;
    Ok(BrownReport {
        weight,
        pairs: admissible_pairs(m)
            .into_iter()
            .map(|(i, j)| [i, j])
            .collect(),
        kernel_dim: relations.len(),
        period_dim: space.dim,
        in_space,
        spans,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;

    #[test]
    fn generator_index_rejects_zero() {
        assert!(GeneratorIndex::new(0).is_err());
        assert!(sigma_leading(0).is_err());
        assert_eq!(GeneratorIndex::new(5).unwrap().weight(), 11);
    }

    #[test]
    fn leading_term_shapes() {
        for m in 1..=6 {
            let f = sigma_leading(m).unwrap();
            assert_eq!(f.len(), 2 * m as usize + 1);
            assert_eq!(f.homogeneous_weight(), Some(2 * m as usize + 1));
            assert_eq!(f.homogeneous_depth(), Some(1));
        }
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(depth2_basis(12).len(), 66);
        assert_eq!(depth2_basis(8).len(), 28);
        assert!(depth2_basis(8)
            .iter()
            .all(|w| w.depth() == 2 && w.weight() == 8));
    }

    #[test]
    fn matrix_shapes() {
        let s = bracket_system(5).unwrap();
        assert_eq!(s.pairs, vec![(1, 4), (2, 3)]);
        assert_eq!(s.matrix.cols(), 2);
        assert_eq!(s.matrix.rows(), 66);
        assert_eq!(bracket_matrix(2).unwrap().cols(), 0);
        assert!(bracket_matrix(1).is_err());
    }

    #[test]
    fn kernel_dimensions() {
        assert_eq!(relation_kernel(5).unwrap().len(), 1);
        assert_eq!(relation_kernel(6).unwrap().len(), 0);
        assert_eq!(relation_kernel(11).unwrap().len(), 2);
    }

    #[test]
    fn weight12_relation_is_classical() {
        // {f3, f9} - 3 {f5, f7} = 0, up to scale.
        let k = relation_kernel(5).unwrap();
        let r = &k[0];
        assert_eq!(r.get(1, 4) * rat(-3), r.get(2, 3));
    }

    #[test]
    fn brown_reports() {
        for (m, dim) in [(5, 1), (6, 0), (11, 2)] {
            let r = verify_brown_criterion(m).unwrap();
            assert!(r.holds(), "{r:?}");
            assert_eq!(r.kernel_dim, dim);
        }
    }
}
