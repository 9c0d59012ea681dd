use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{Embedding, FieldElement, Rat};

/// The ordered group `(Z^n, G+, u)` with
/// `G+ = { x : theta_1 x_1 + ... + theta_{n-1} x_{n-1} + x_n >= 0 }`
/// evaluated at a real embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionGroup {
    pub theta: Vec<FieldElement>,
    pub embedding: Embedding,
    /// Always `(0, ..., 0, 1)`, whose functional value is 1.
    pub order_unit: Vec<BigInt>,
}

impl DimensionGroup {
    pub fn rank(&self) -> usize {
        self.theta.len() + 1
    }

    /// The functional `theta . (x_1..x_{n-1}) + x_n` as a field element.
    pub fn functional(&self, x: &[BigInt]) -> Result<FieldElement> {
        if x.len() != self.rank() {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} for a group of rank {}",
                x.len(),
                self.rank()
            )));
        }
        let field = self.embedding.field();
        let last = field.from_rational(Rat::from_integer(x[x.len() - 1].clone()));
        Ok(self
            .theta
            .iter()
            .zip(x)
            .fold(last, |acc, (t, xi)| acc + t.scale(&Rat::from_integer(xi.clone()))))
    }
}

/// The dimension group of the direction `(theta_1, ..., theta_{n-1}, 1)`.
pub fn dimension_group(theta: &[FieldElement], e: &Embedding) -> Result<DimensionGroup> {
    if theta.iter().any(|t| t.field() != e.field()) {
        return Err(Error::FieldMismatch);
    }
    if theta.iter().any(|t| !e.is_positive(t)) {
        return Err(Error::Degenerate("theta entries must be positive".into()));
    }
    let mut order_unit = vec![BigInt::zero(); theta.len()];
    order_unit.push(BigInt::one());
    Ok(DimensionGroup {
        theta: theta.to_vec(),
        embedding: e.clone(),
        order_unit,
    })
}

/// Exact cone membership: zero is tested symbolically, other values by a
/// certified sign.
pub fn cone_contains(g: &DimensionGroup, x: &[BigInt]) -> Result<bool> {
    let v = g.functional(x)?;
    Ok(v.is_zero() || g.embedding.sign(&v) == Ordering::Greater)
}
