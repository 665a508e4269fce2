//! Random inputs shared by the property and acceptance suites.

#![allow(dead_code)]

use depthforge::exactla::rat;
use depthforge::ncalg::{lie_bracket, DepthCap, NCPoly};
use rand::seq::SliceRandom;
use rand::Rng;

/// A random bracket monomial of the given weight and depth (`depth <= weight`).
pub fn lie_monomial<R: Rng>(rng: &mut R, weight: usize, depth: usize, cap: DepthCap) -> NCPoly {
    assert!(weight >= 1 && depth <= weight);
    if weight == 1 {
        return if depth == 0 {
            NCPoly::e0(cap)
        } else {
            NCPoly::e1(cap)
        };
    }
    let w1 = rng.gen_range(1..weight);
    let w2 = weight - w1;
    let lo = depth.saturating_sub(w2);
    let hi = depth.min(w1);
    let d1 = rng.gen_range(lo..=hi);
    let left = lie_monomial(rng, w1, d1, cap);
    let right = lie_monomial(rng, w2, depth - d1, cap);
    lie_bracket(&left, &right)
}

/// A small nonzero-coefficient combination of bracket monomials, homogeneous in weight
/// and depth.
pub fn lie_element<R: Rng>(rng: &mut R, weight: usize, depth: usize, cap: DepthCap) -> NCPoly {
    let terms = rng.gen_range(1..=3);
    (0..terms).fold(NCPoly::zero(cap), |acc, _| {
        let c = rat(*[-3, -2, -1, 1, 2, 3].choose(rng).unwrap());
        let mut m = lie_monomial(rng, weight, depth, cap);
        for _ in 0..20 {
            if !m.is_zero() {
                break;
            }
            m = lie_monomial(rng, weight, depth, cap);
        }
        &acc + &m.scale(&c)
    })
}

/// Random (weight, depth) with `1 <= weight <= max_weight` for which the
/// Lie algebra is nonzero: weight 1, or `1 <= depth <= min(weight - 1, max_depth)`.
pub fn shape<R: Rng>(rng: &mut R, max_weight: usize, max_depth: usize) -> (usize, usize) {
    let w = rng.gen_range(1..=max_weight);
    if w == 1 {
        return (1, rng.gen_range(0..=1));
    }
    let d = rng.gen_range(1..=(w - 1).min(max_depth.max(1)));
    (w, d)
}
