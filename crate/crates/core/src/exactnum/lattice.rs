//! Integer lattices: Hermite normal form, integer kernels and LLL reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::poly::{int_rat, rat, Rat};

/// Row Hermite normal form. Zero rows are dropped; pivots are positive and
/// entries above each pivot are reduced into `[0, pivot)`.
pub fn hnf_rows(rows: &IntMatrix) -> IntMatrix {
    let mut m: IntMatrix = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        loop {
            // Row with the smallest non-zero entry in column c becomes the pivot.
            let Some(p) = (r..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()))
            else {
                break;
            };
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[r][c]);
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                if !m[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < m.len() && !m[r][c].is_zero() {
            if m[r][c].is_negative() {
                for x in m[r].iter_mut() {
                    *x = -&*x;
                }
            }
            let pivot_row = m[r].clone();
            for i in 0..r {
                let q = m[i][c].div_floor(&pivot_row[c]);
                if !q.is_zero() {
                    for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                        *x -= &q * y;
                    }
                }
            }
            r += 1;
        }
    }
    m.truncate(r);
    m
}

/// Basis of the integer left kernel `{x : x C = 0}` of an `m x k` matrix.
pub fn integer_kernel(c: &IntMatrix) -> IntMatrix {
    let m = c.len();
    let k = c.first().map_or(0, Vec::len);
    let aug: IntMatrix = c
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    hnf_rows(&aug)
        .into_iter()
        .filter(|r| r[..k].iter().all(Zero::is_zero))
        .map(|r| r[k..].to_vec())
        .collect()
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Exact LLL reduction (delta = 3/4) of linearly independent integer rows.
pub fn lll_reduce(basis: &IntMatrix) -> IntMatrix {
    let mut b: IntMatrix = basis.clone();
    let n = b.len();
    if n <= 1 {
        return b;
    }
    let delta = Rat::new(BigInt::from(3), BigInt::from(4));
    let gso = |b: &IntMatrix| -> (Vec<Vec<Rat>>, Vec<Vec<Rat>>, Vec<Rat>) {
        let mut bs: Vec<Vec<Rat>> = Vec::with_capacity(b.len());
        let mut mu = vec![vec![Rat::zero(); b.len()]; b.len()];
        let mut norms = Vec::with_capacity(b.len());
        for i in 0..b.len() {
            let bi: Vec<Rat> = b[i].iter().map(int_rat).collect();
            let mut v = bi.clone();
            for j in 0..i {
                mu[i][j] = dot(&bi, &bs[j]) / &norms[j];
                for (x, y) in v.iter_mut().zip(&bs[j]) {
                    *x -= &mu[i][j] * y;
                }
            }
            norms.push(dot(&v, &v));
            bs.push(v);
        }
        (bs, mu, norms)
    };
    let (_, mut mu, mut norms) = gso(&b);
    let mut k = 1;
    let half = rat(1) / rat(2);
    while k < n {
        for j in (0..k).rev() {
            if mu[k][j].abs() > half {
                let q = mu[k][j].round().to_integer();
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= &q * y;
                }
                let qr = int_rat(&q);
                for l in 0..j {
                    let v = &qr * &mu[j][l];
                    mu[k][l] -= v;
                }
                mu[k][j] -= &qr;
            }
        }
        let lhs = &norms[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if lhs >= &rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            let (_, m2, n2) = gso(&b);
            mu = m2;
            norms = n2;
            k = k.max(2) - 1;
        }
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::matrix::{det, from_i64, mul};

    #[test]
    fn hnf_of_redundant_generators() {
        let rows = from_i64(&[vec![2, 0], vec![1, 1], vec![0, 2]]);
        let h = hnf_rows(&rows);
        assert_eq!(h, from_i64(&[vec![1, 1], vec![0, 2]]));
    }

    #[test]
    fn hnf_is_invariant_under_unimodular_change() {
        let rows = from_i64(&[vec![4, 7, 1], vec![2, -3, 5], vec![0, 1, 9]]);
        let u = from_i64(&[vec![1, 2, 0], vec![0, 1, 0], vec![3, 7, 1]]);
        assert_eq!(det(&u), BigInt::one());
        assert_eq!(hnf_rows(&rows), hnf_rows(&mul(&u, &rows)));
    }

    #[test]
    fn kernel_is_annihilated() {
        let c = from_i64(&[vec![1, 2], vec![2, 4], vec![3, 6]]);
        let k = integer_kernel(&c);
        assert_eq!(k.len(), 2);
        for row in &k {
            let prod = mul(&vec![row.clone()], &c);
            assert!(prod[0].iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn lll_shortens() {
        let b = from_i64(&[vec![1, 0, 0], vec![100, 1, 0], vec![57, 33, 1]]);
        let r = lll_reduce(&b);
        assert_eq!(det(&r).abs(), BigInt::one());
        for row in &r {
            assert!(row.iter().all(|x| x.abs() <= BigInt::from(1)));
        }
    }
}
