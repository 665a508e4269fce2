//! Bernoulli combinatorics, coset functions on `GL2(Z/nZ)`, level-1
//! q-expansions and Hecke eigenvalues.

pub mod bernoulli;
pub mod coset;
pub mod qexp;

pub use bernoulli::{
    bernoulli_number, bernoulli_numbers, bernoulli_poly_eval, distribution_check, frac, BernPoly,
};
pub use coset::{
    check_prop49_identity, check_prop49_with, phi, phi_table, tilde_phi, tilde_phi_with, CosetFn,
    Entry, ModMatrix, Prop49Check,
};
pub use qexp::{
    delta_qexp, divisor_sigma, eisenstein_qexp, hecke_eigenvalue, hecke_factor, hecke_tp, FormKind,
    HeckeFactor, QExpansion,
};
