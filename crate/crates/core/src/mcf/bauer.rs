use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::jpa::JpaDigit;
use crate::error::{Error, Result};
use crate::exactnum::matrix::{det, is_identity, is_nonnegative, is_square};
use crate::exactnum::IntMatrix;

const MAX_BLOCKS: usize = 100_000;

/// Peels a non-negative unimodular matrix into Jacobi-Perron blocks,
/// `A = B(b_1) ... B(b_k)`.
///
/// Each step writes `A = B(b) A2`: the last row of `A2` is the first row of
/// `A`, and row `i - 1` of `A2` is `row_i(A) - b_i row_1(A)` with `b_i` the
/// largest value keeping the row non-negative.
pub fn bauer_factorize(a: &IntMatrix) -> Result<Vec<JpaDigit>> {
    let n = a.len();
    if n < 2 || !is_square(a) {
        return Err(Error::ShapeMismatch("expected a square matrix of size at least 2".into()));
    }
    if !is_nonnegative(a) {
        return Err(Error::Degenerate("matrix has negative entries".into()));
    }
    if det(a).abs() != BigInt::from(1) {
        return Err(Error::Degenerate("matrix is not unimodular".into()));
    }
    if is_identity(a) {
        return Err(Error::Degenerate("the identity has no block factorization".into()));
    }
    let mut cur = a.clone();
    let mut digits = Vec::new();
    let mut seen: HashSet<IntMatrix> = HashSet::new();
    while !is_identity(&cur) {
        if digits.len() >= MAX_BLOCKS || !seen.insert(cur.clone()) {
            return Err(Error::NotFactorizable { partial: digits });
        }
        let top = &cur[0];
        if top.iter().all(Zero::is_zero) {
            return Err(Error::NotFactorizable { partial: digits });
        }
        let mut b = Vec::with_capacity(n - 1);
        let mut next: IntMatrix = Vec::with_capacity(n);
        for row in &cur[1..] {
            let bi = row
                .iter()
                .zip(top)
                .filter(|(_, t)| t.is_positive())
                .map(|(r, t)| r / t)
                .min()
                .expect("first row has a positive entry");
            next.push(row.iter().zip(top).map(|(r, t)| r - &bi * t).collect());
            b.push(bi);
        }
        next.push(top.clone());
        digits.push(JpaDigit(b));
        cur = next;
    }
    Ok(digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::matrix::from_i64;
    use crate::mcf::convergent_matrix;

    #[test]
    fn examples() {
        assert_eq!(
            bauer_factorize(&from_i64(&[vec![0, 1], vec![1, 1]])).unwrap(),
            vec![JpaDigit::from_i64(&[1])]
        );
        assert_eq!(
            bauer_factorize(&from_i64(&[vec![2, 5], vec![5, 12]])).unwrap(),
            vec![JpaDigit::from_i64(&[2]); 3]
        );
        assert!(bauer_factorize(&from_i64(&[vec![1, 0], vec![0, 1]])).is_err());
    }

    #[test]
    fn three_by_three_product() {
        let d = vec![JpaDigit::from_i64(&[1, 1]), JpaDigit::from_i64(&[1, 2])];
        let a = convergent_matrix(3, &d);
        assert_eq!(bauer_factorize(&a).unwrap(), d);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(bauer_factorize(&from_i64(&[vec![2, 1], vec![1, 2]])).is_err());
        assert!(bauer_factorize(&from_i64(&[vec![1, -1], vec![0, 1]])).is_err());
    }
}
