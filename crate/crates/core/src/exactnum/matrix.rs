//! Small dense integer and rational matrices stored as row vectors.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::{int_rat, IntPolynomial, Rat, RatPolynomial};

/// Integer matrix, row-major.
pub type IntMatrix = Vec<Vec<BigInt>>;
/// Rational matrix, row-major.
pub type RatMatrix = Vec<Vec<Rat>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn from_i64(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn is_square(a: &IntMatrix) -> bool {
    a.iter().all(|r| r.len() == a.len())
}

pub fn is_identity(a: &IntMatrix) -> bool {
    is_square(a) && *a == identity(a.len())
}

pub fn is_nonnegative(a: &IntMatrix) -> bool {
    a.iter().flatten().all(|x| !x.is_negative())
}

pub fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = BigInt::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc += &row[k] * &b[k][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn pow(a: &IntMatrix, mut e: u32) -> IntMatrix {
    let mut base = a.clone();
    let mut acc = identity(a.len());
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        base = mul(&base, &base);
        e >>= 1;
    }
    acc
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| a.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn to_rat(a: &IntMatrix) -> RatMatrix {
    a.iter().map(|r| r.iter().map(int_rat).collect()).collect()
}

/// Converts back when every entry is integral.
pub fn to_int(a: &RatMatrix) -> Option<IntMatrix> {
    a.iter()
        .map(|r| {
            r.iter()
                .map(|x| x.is_integer().then(|| x.to_integer()))
                .collect::<Option<Vec<_>>>()
        })
        .collect()
}

pub fn rat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = Rat::zero();
                    for (k, x) in row.iter().enumerate() {
                        if !x.is_zero() && !b[k][j].is_zero() {
                            acc += x * &b[k][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn rat_vec_mul(v: &[Rat], a: &RatMatrix) -> Vec<Rat> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| {
            let mut acc = Rat::zero();
            for (k, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    acc += x * &a[k][j];
                }
            }
            acc
        })
        .collect()
}

/// Determinant by fraction-free Bareiss elimination.
pub fn det(a: &IntMatrix) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Determinant with machine integers, falling back to big integers on overflow.
pub fn det_i128(a: &[Vec<i128>]) -> BigInt {
    fn bareiss(a: &[Vec<i128>]) -> Option<i128> {
        let n = a.len();
        if n == 0 {
            return Some(1);
        }
        let mut m = a.to_vec();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[k][k] == 0 {
                match (k + 1..n).find(|&i| m[i][k] != 0) {
                    Some(i) => {
                        m.swap(i, k);
                        sign = -sign;
                    }
                    None => return Some(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let x = m[i][j].checked_mul(m[k][k])?;
                    let y = m[i][k].checked_mul(m[k][j])?;
                    m[i][j] = x.checked_sub(y)? / prev;
                }
            }
            prev = m[k][k];
        }
        Some(sign * m[n - 1][n - 1])
    }
    match bareiss(a) {
        Some(d) => BigInt::from(d),
        None => det(&a
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()),
    }
}

pub fn rat_det(a: &RatMatrix) -> Rat {
    let n = a.len();
    let mut m = a.clone();
    let mut d = Rat::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Rat::zero();
        };
        if p != k {
            m.swap(p, k);
            d = -d;
        }
        let pivot = m[k][k].clone();
        d *= &pivot;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &pivot;
            for j in k..n {
                let v = &f * &m[k][j];
                m[i][j] -= v;
            }
        }
    }
    d
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut RatMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let inv = m[r][c].recip();
        for j in c..cols {
            let v = &m[r][j] * &inv;
            m[r][j] = v;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let v = &f * &m[r][j];
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rat_rank(a: &RatMatrix) -> usize {
    let mut m = a.clone();
    rref(&mut m).len()
}

pub fn rat_inverse(a: &RatMatrix) -> Option<RatMatrix> {
    let n = a.len();
    let mut aug: RatMatrix = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Inverse of an integer matrix with determinant ±1.
pub fn unimodular_inverse(a: &IntMatrix) -> Option<IntMatrix> {
    if !det(a).abs().is_one() {
        return None;
    }
    to_int(&rat_inverse(&to_rat(a))?)
}

/// Basis of the right null space `{v : a v = 0}`.
pub fn nullspace(a: &RatMatrix) -> Vec<Vec<Rat>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); cols];
            v[f] = Rat::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(xI - A)` by the Faddeev-LeVerrier recursion.
pub fn char_poly_rat(a: &RatMatrix) -> RatPolynomial {
    let n = a.len();
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let mut m: RatMatrix = vec![vec![Rat::zero(); n]; n];
    for k in 1..=n {
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = rat_mul(a, &m);
        let trace: Rat = (0..n).map(|i| m[i][i].clone()).sum();
        coeffs[n - k] = -trace / Rat::from_integer(BigInt::from(k));
    }
    RatPolynomial::new(coeffs)
}

pub fn char_poly(a: &IntMatrix) -> IntPolynomial {
    char_poly_rat(&to_rat(a))
        .to_integer()
        .expect("characteristic polynomial of an integer matrix is integral")
}

/// Resultant via the Sylvester determinant.
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> BigInt {
    let (m, n) = (f.degree(), g.degree());
    if f.is_zero() || g.is_zero() {
        return BigInt::zero();
    }
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut s = vec![vec![BigInt::zero(); size]; size];
    let fc: Vec<&BigInt> = f.coeffs().iter().rev().collect();
    let gc: Vec<&BigInt> = g.coeffs().iter().rev().collect();
    for i in 0..n {
        for (j, c) in fc.iter().enumerate() {
            s[i][i + j] = (*c).clone();
        }
    }
    for i in 0..m {
        for (j, c) in gc.iter().enumerate() {
            s[n + i][i + j] = (*c).clone();
        }
    }
    det(&s)
}

/// Renders a matrix as nested JSON-like arrays of integers.
pub fn format_matrix(a: &IntMatrix) -> String {
    let rows: Vec<String> = a
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants_agree() {
        let a = from_i64(&[vec![2, 5, 1], vec![5, 12, 0], vec![3, 1, 7]]);
        let small: Vec<Vec<i128>> = vec![vec![2, 5, 1], vec![5, 12, 0], vec![3, 1, 7]];
        assert_eq!(det(&a), det_i128(&small));
        assert_eq!(rat_det(&to_rat(&a)), int_rat(&det(&a)));
        let zero_pivot = from_i64(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(det(&zero_pivot), BigInt::from(-1));
    }

    #[test]
    fn char_poly_of_fibonacci_matrix() {
        let a = from_i64(&[vec![0, 1], vec![1, 1]]);
        assert_eq!(char_poly(&a), IntPolynomial::from_i64(&[-1, -1, 1]));
        let b = from_i64(&[vec![0, 1], vec![1, 2]]);
        assert_eq!(char_poly(&b), IntPolynomial::from_i64(&[-1, -2, 1]));
    }

    #[test]
    fn inverse_and_nullspace() {
        let a = from_i64(&[vec![2, 5], vec![5, 12]]);
        let inv = unimodular_inverse(&a).unwrap();
        assert_eq!(mul(&a, &inv), identity(2));
        let s = to_rat(&from_i64(&[vec![1, 2, 3], vec![2, 4, 6]]));
        let ns = nullspace(&s);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(rat_vec_mul(&v, &transpose(&s)).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn resultant_of_coprime_linear_factors() {
        let f = IntPolynomial::from_i64(&[-2, 1]);
        let g = IntPolynomial::from_i64(&[-3, 1]);
        assert_eq!(resultant(&f, &g).abs(), BigInt::from(1));
    }
}
