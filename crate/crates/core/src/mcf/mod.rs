//! Continued-fraction engines.
//!
//! The Jacobi-Perron step used throughout takes a state `theta` of length
//! `n - 1`, emits the digit `d_j = floor(theta_j)` and moves to
//!
//! ```text
//! theta'_{n-1} = 1 / (theta_1 - d_1)
//! theta'_{j-1} = (theta_j - d_j) / (theta_1 - d_1),   j = 2..n-1
//! ```
//!
//! so that `(1, theta)` is a positive multiple of `B(d) (1, theta')`, where
//! `B(d)` has first row `(0, ..., 0, 1)`, an identity block below it and
//! `d` in the last column. Products of these blocks are the convergent
//! matrices; a non-negative unimodular matrix is peeled back into blocks by
//! [`bauer_factorize`].

mod bauer;
mod euclid;
mod jpa;
mod satz12;

pub use bauer::bauer_factorize;
pub use euclid::{euclid_gcd, regular_cf};
pub use jpa::{
    block_matrix, convergent_matrix, jpa_expand, jpa_step, verify_step, JpaDigit, JpaExpansion,
    JpaState, StepOutcome, DEFAULT_MAX_STEPS,
};
pub use satz12::{matches_up_to_rotation, periodicity_roundtrip, satz12_eigenvector, PeriodicPoint};
