use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::jpa::{jpa_expand, JpaExpansion};
use crate::error::{Error, Result};
use crate::exactnum::{Embedding, FieldElement};

/// Euclidean algorithm returning the gcd and the quotient ladder.
pub fn euclid_gcd(a1: &BigInt, a2: &BigInt) -> Result<(BigInt, Vec<BigInt>)> {
    if a2 < &BigInt::one() || a1 < a2 {
        return Err(Error::Degenerate("euclid_gcd expects a1 >= a2 >= 1".into()));
    }
    let (mut a, mut b) = (a1.clone(), a2.clone());
    let mut quotients = Vec::new();
    while !b.is_zero() {
        let (q, r) = a.div_rem(&b);
        quotients.push(q);
        a = b;
        b = r;
    }
    Ok((a, quotients))
}

/// Regular continued fraction of a positive element: the Jacobi-Perron
/// expansion in dimension two. Rationals live in [`crate::NumberField::rationals`].
pub fn regular_cf(x: &FieldElement, e: &Embedding, max_terms: usize) -> Result<JpaExpansion> {
    jpa_expand(std::slice::from_ref(x), e, max_terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{make_field, parse_rational, IntPolynomial, NumberField};
    use crate::mcf::JpaDigit;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn euclid_examples() {
        let g = |a: i64, b: i64| euclid_gcd(&BigInt::from(a), &BigInt::from(b)).unwrap();
        assert_eq!(g(48, 18), (BigInt::from(6), ints(&[2, 1, 2])));
        assert_eq!(g(7, 7), (BigInt::from(7), ints(&[1])));
        assert_eq!(g(355, 113), (BigInt::from(1), ints(&[3, 7, 16])));
        assert!(euclid_gcd(&BigInt::from(3), &BigInt::from(5)).is_err());
    }

    #[test]
    fn regular_cf_examples() {
        let q = NumberField::rationals();
        let e = q.embedding(0).unwrap();
        let x = q.from_rational(parse_rational("355/113").unwrap());
        let cf = regular_cf(&x, &e, 100).unwrap();
        assert!(cf.terminated);
        assert_eq!(cf.preperiod, [3, 7, 16].map(|d| JpaDigit::from_i64(&[d])));

        let k = make_field(IntPolynomial::from_i64(&[-2, 0, 1])).unwrap();
        let cf = regular_cf(&k.generator(), &k.default_embedding().unwrap(), 100).unwrap();
        assert_eq!(cf.preperiod, vec![JpaDigit::from_i64(&[1])]);
        assert_eq!(cf.period, vec![JpaDigit::from_i64(&[2])]);

        let k = make_field(IntPolynomial::from_i64(&[-1, -1, 1])).unwrap();
        let cf = regular_cf(&k.generator(), &k.default_embedding().unwrap(), 100).unwrap();
        assert!(cf.preperiod.is_empty());
        assert_eq!(cf.period, vec![JpaDigit::from_i64(&[1])]);
    }
}
