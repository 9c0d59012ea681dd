//! Shared inputs for the benchmarks.

use heckeaf::{
    convergent_matrix, load_newform, make_field, Embedding, FieldElement, IntMatrix, IntPolynomial, JpaDigit,
    NewformData, NumberField,
};

pub const NEWFORM_23: &str = include_str!("../../../fixtures/newform_23.json");
pub const NEWFORM_97: &str = include_str!("../../../fixtures/newform_97.json");

pub fn newform(text: &str) -> NewformData {
    load_newform(text).expect("bundled fixture loads")
}

/// The cubic field `x^3 - x - 1` at its real root with the JPA input
/// `(t^2, t)` for the generator `t`.
pub fn cubic_theta() -> (NumberField, Embedding, Vec<FieldElement>) {
    let field = make_field(IntPolynomial::from_i64(&[-1, -1, 0, 1])).unwrap();
    let e = field.embedding(0).unwrap();
    let theta = vec![field.from_i64(&[0, 0, 1]), field.from_i64(&[0, 1, 0])];
    (field, e, theta)
}

/// Product of `len` admissible 3x3 block matrices with a fixed digit pattern.
pub fn block_product(len: usize) -> (IntMatrix, Vec<JpaDigit>) {
    let pattern = [[0, 1], [1, 2], [2, 3], [0, 4], [0, 2]];
    let digits: Vec<JpaDigit> = (0..len).map(|i| JpaDigit::from_i64(&pattern[i % pattern.len()])).collect();
    (convergent_matrix(3, &digits), digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_product_factors_back() {
        let (m, digits) = block_product(12);
        assert_eq!(heckeaf::bauer_factorize(&m).unwrap(), digits);
    }
}
