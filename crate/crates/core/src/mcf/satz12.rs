use num_traits::Signed;

use super::bauer::bauer_factorize;
use super::jpa::{jpa_expand, JpaDigit, JpaExpansion, DEFAULT_MAX_STEPS};
use crate::error::{Error, Result};
use crate::exactnum::matrix::{char_poly, det, is_identity, is_nonnegative, is_square};
use crate::exactnum::{make_field, Embedding, FieldElement, IntMatrix, NumberField, Rat};

/// Perron eigen-data of a non-negative unimodular matrix with irreducible
/// characteristic polynomial: `A lambda = u lambda` with `lambda_1 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicPoint {
    /// The class of `x` in `Q[x]/(char A)`.
    pub u: FieldElement,
    pub lambda: Vec<FieldElement>,
    /// Embedding at the largest real root, where `u` is the spectral radius.
    pub embedding: Embedding,
}

impl PeriodicPoint {
    pub fn field(&self) -> &NumberField {
        self.u.field()
    }

    /// `theta_i = lambda_{i+1} / lambda_1`.
    pub fn theta(&self) -> Vec<FieldElement> {
        self.lambda[1..].to_vec()
    }
}

/// Solves `m v = 0` with `v_0 = 1` by elimination over the field.
fn eigenvector_with_unit_head(m: &[Vec<FieldElement>]) -> Option<Vec<FieldElement>> {
    let n = m.len();
    let field = m[0][0].field().clone();
    // Unknowns v_1..v_{n-1}; right-hand side -m[i][0].
    let mut rows: Vec<Vec<FieldElement>> = m
        .iter()
        .map(|r| {
            let mut row: Vec<FieldElement> = r[1..].to_vec();
            row.push(-&r[0]);
            row
        })
        .collect();
    let unknowns = n - 1;
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..unknowns {
        let Some(p) = (r..n).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let inv = rows[r][c].inverse().ok()?;
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    if pivot_cols.len() != unknowns || rows[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    let mut v = vec![field.one()];
    v.extend((0..unknowns).map(|i| rows[i][unknowns].clone()));
    Some(v)
}

/// Exact Perron eigenvector of a non-negative unimodular matrix.
pub fn satz12_eigenvector(a: &IntMatrix) -> Result<PeriodicPoint> {
    let n = a.len();
    if n < 2 || !is_square(a) {
        return Err(Error::ShapeMismatch("expected a square matrix of size at least 2".into()));
    }
    if is_identity(a) {
        return Err(Error::Degenerate("the identity has no expanding eigenvalue".into()));
    }
    if !is_nonnegative(a) || det(a).abs() != num_bigint::BigInt::from(1) {
        return Err(Error::Degenerate("matrix must be non-negative and unimodular".into()));
    }
    let cp = char_poly(a);
    let field = match make_field(cp.clone()) {
        Ok(f) => f,
        Err(Error::ReduciblePolynomial(s)) => return Err(Error::ReducibleCharPoly(s)),
        Err(e) => return Err(e),
    };
    let embedding = field.default_embedding().map_err(|_| {
        Error::Degenerate(format!("characteristic polynomial {cp} has no real root"))
    })?;
    let u = field.generator();
    let m: Vec<Vec<FieldElement>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, x)| {
                    let entry = field.from_rational(Rat::from_integer(x.clone()));
                    if i == j {
                        entry - &u
                    } else {
                        entry
                    }
                })
                .collect()
        })
        .collect();
    let lambda = eigenvector_with_unit_head(&m)
        .ok_or_else(|| Error::Degenerate("eigenvector has a vanishing first entry".into()))?;
    if lambda.iter().any(|l| !embedding.is_positive(l)) {
        return Err(Error::Degenerate("Perron eigenvector is not positive".into()));
    }
    // A lambda = u lambda, checked exactly.
    for (row, li) in a.iter().zip(&lambda) {
        let lhs = row
            .iter()
            .zip(&lambda)
            .fold(field.zero(), |acc, (c, l)| acc + l.scale(&Rat::from_integer(c.clone())));
        if lhs != &u * li {
            return Err(Error::RoundTripMismatch("eigenvector equation failed".into()));
        }
    }
    Ok(PeriodicPoint { u, lambda, embedding })
}

/// True when `digits` is a cyclic rotation of `period` repeated a whole
/// number of times.
pub fn matches_up_to_rotation(digits: &[JpaDigit], period: &[JpaDigit]) -> bool {
    let p = period.len();
    if p == 0 || digits.len() % p != 0 {
        return false;
    }
    (0..p).any(|shift| {
        digits
            .iter()
            .enumerate()
            .all(|(i, d)| d == &period[(i + shift) % p])
    })
}

/// Expands the Perron eigenvector ratios of `A` and checks that the period
/// found agrees with the block factorization of `A`.
pub fn periodicity_roundtrip(a: &IntMatrix) -> Result<JpaExpansion> {
    let digits = bauer_factorize(a)?;
    let point = satz12_eigenvector(a)?;
    let expansion = jpa_expand(&point.theta(), &point.embedding, DEFAULT_MAX_STEPS)?;
    if !expansion.is_periodic() {
        return Err(Error::RoundTripMismatch(format!(
            "no period found within {} steps",
            expansion.steps
        )));
    }
    if !matches_up_to_rotation(&digits, &expansion.period) {
        let show = |d: &[JpaDigit]| d.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        return Err(Error::RoundTripMismatch(format!(
            "block digits [{}] vs period [{}]",
            show(&digits),
            show(&expansion.period)
        )));
    }
    Ok(expansion)
}
