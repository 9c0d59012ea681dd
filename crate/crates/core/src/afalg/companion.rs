use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::lattice::{integer_kernel, lll_reduce};
use crate::exactnum::matrix::{char_poly, det, is_square, mul, rat_rank, to_rat};
use crate::exactnum::IntMatrix;

/// Coefficient bound in the search for an integer conjugator.
pub const CONJUGATOR_BOUND: i64 = 10;

/// Outcome of comparing two stationary period matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum CompanionVerdict {
    /// Same characteristic polynomial, not similar over Q.
    Companion,
    /// Similar over Z; the conjugator `X` satisfies `B1 X = X B2`.
    SimilarOverQ { conjugator: Vec<Vec<String>> },
    DistinctCharPoly,
    /// Similar over Q, but no unimodular conjugator within the search bound.
    UndeterminedZSimilarity,
}

impl CompanionVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            CompanionVerdict::Companion => "companion",
            CompanionVerdict::SimilarOverQ { .. } => "similar_over_q",
            CompanionVerdict::DistinctCharPoly => "distinct_char_poly",
            CompanionVerdict::UndeterminedZSimilarity => "undetermined_z_similarity",
        }
    }
}

/// Matrix of `X -> A X - X B` on row-major vectorized `X`, as rows acting
/// on the right: `vec(X) * M = vec(A X - X B)`.
fn intertwiner_map(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let mut m = vec![vec![BigInt::zero(); n * n]; n * n];
    // (A X)_{ij} = sum_k A_ik X_kj, (X B)_{ij} = sum_k X_ik B_kj.
    for i in 0..n {
        for j in 0..n {
            let col = i * n + j;
            for k in 0..n {
                m[k * n + j][col] += &a[i][k];
                m[i * n + k][col] -= &b[k][j];
            }
        }
    }
    m
}

fn intertwiner_dim(a: &IntMatrix, b: &IntMatrix) -> usize {
    let n = a.len();
    n * n - rat_rank(&to_rat(&intertwiner_map(a, b)))
}

/// Similarity over Q by the dimension criterion: `A ~ B` iff the spaces of
/// solutions of `AX = XA`, `AX = XB` and `BX = XB` have equal dimension.
pub fn q_similar(a: &IntMatrix, b: &IntMatrix) -> bool {
    let d = intertwiner_dim(a, b);
    d == intertwiner_dim(a, a) && d == intertwiner_dim(b, b)
}

fn unimodular_conjugator(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    let n = a.len();
    let kernel = lll_reduce(&integer_kernel(&intertwiner_map(a, b)));
    let d = kernel.len();
    if d == 0 {
        return None;
    }
    // Keep the search finite for larger kernels.
    let bound = match d {
        1..=3 => CONJUGATOR_BOUND,
        4 => 4,
        _ => 1,
    };
    let width = (2 * bound + 1) as u64;
    let total = width.checked_pow(d as u32)?;
    let mut order: Vec<i64> = vec![0];
    for c in 1..=bound {
        order.push(c);
        order.push(-c);
    }
    for idx in 0..total {
        let mut r = idx;
        let coeffs: Vec<i64> = (0..d)
            .map(|_| {
                let c = order[(r % width) as usize];
                r /= width;
                c
            })
            .collect();
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let mut v = vec![BigInt::zero(); n * n];
        for (c, row) in coeffs.iter().zip(&kernel) {
            if *c != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x += y * c;
                }
            }
        }
        let x: IntMatrix = v.chunks(n).map(|c| c.to_vec()).collect();
        if det(&x).abs().is_one() {
            return Some(x);
        }
    }
    None
}

/// Compares two period matrices: characteristic polynomials first, then
/// similarity over Q, then a bounded search for a conjugator in GL_n(Z).
pub fn companion_check(b1: &IntMatrix, b2: &IntMatrix) -> Result<CompanionVerdict> {
    if !is_square(b1) || !is_square(b2) || b1.len() != b2.len() || b1.is_empty() {
        return Err(Error::ShapeMismatch("expected square matrices of equal size".into()));
    }
    if char_poly(b1) != char_poly(b2) {
        return Ok(CompanionVerdict::DistinctCharPoly);
    }
    if !q_similar(b1, b2) {
        return Ok(CompanionVerdict::Companion);
    }
    match unimodular_conjugator(b1, b2) {
        Some(x) => {
            debug_assert_eq!(mul(b1, &x), mul(&x, b2));
            Ok(CompanionVerdict::SimilarOverQ {
                conjugator: x.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
            })
        }
        None => Ok(CompanionVerdict::UndeterminedZSimilarity),
    }
}
