use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::newform::{primes_up_to, NewformData};
use crate::error::{Error, Result};
use crate::exactnum::{FieldElement, Rat};

/// The table of `T_n f` for `m = 1..floor(M / n)`:
/// `gamma(m) = sum over a | gcd(m, n), gcd(a, N) = 1 of a c(mn / a^2)`.
pub fn hecke_apply(n: usize, coeffs: &[FieldElement], level: u64) -> Result<Vec<FieldElement>> {
    if n == 0 {
        return Err(Error::Degenerate("Hecke operators are indexed from 1".into()));
    }
    let len = coeffs.len() / n;
    if len == 0 {
        return Err(Error::InsufficientCoefficients {
            required: n,
            available: coeffs.len(),
        });
    }
    let field = coeffs[0].field();
    Ok((1..=len)
        .map(|m| {
            let g = m.gcd(&n);
            (1..=g)
                .filter(|a| g % a == 0 && level.gcd(&(*a as u64)) == 1)
                .fold(field.zero(), |acc, a| {
                    acc + coeffs[m * n / (a * a) - 1].scale(&Rat::from_integer(BigInt::from(a)))
                })
        })
        .collect())
}

/// Outcome of the eigenvector test for one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCheck {
    pub p: usize,
    /// Number of indices compared, `floor(M / p)`.
    pub compared: usize,
    /// Smallest `m` with `gamma(m) != c(p) c(m)`.
    pub first_failure: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenformReport {
    pub checks: Vec<PrimeCheck>,
}

impl EigenformReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.first_failure.is_none())
    }

    /// The first failing `(p, m)`.
    pub fn first_failure(&self) -> Option<(usize, usize)> {
        self.checks.iter().find_map(|c| c.first_failure.map(|m| (c.p, m)))
    }
}

/// Checks `T_p f = c(p) f` for every prime `p <= max_prime` over the
/// indices the table allows. Needs at least `max_prime^2` coefficients.
pub fn verify_eigenform(f: &NewformData, max_prime: usize) -> Result<EigenformReport> {
    if f.len() < max_prime * max_prime {
        return Err(Error::InsufficientCoefficients {
            required: max_prime * max_prime,
            available: f.len(),
        });
    }
    let mut checks = Vec::new();
    for p in primes_up_to(max_prime) {
        let gamma = hecke_apply(p, &f.coeffs, f.level)?;
        let cp = f.c(p);
        let first_failure = gamma
            .iter()
            .enumerate()
            .find(|(i, g)| **g != cp * f.c(i + 1))
            .map(|(i, _)| i + 1);
        checks.push(PrimeCheck {
            p,
            compared: gamma.len(),
            first_failure,
        });
    }
    Ok(EigenformReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::NumberField;

    const LEVEL11: [i64; 25] = [
        1, -2, -1, 2, 1, 2, -2, 0, -2, -2, 1, -2, 4, 4, -1, -4, -2, 4, 0, 2, 2, -2, -1, 0, -4,
    ];

    fn level11() -> NewformData {
        let q = NumberField::rationals();
        NewformData {
            label: "11.2.a.a".into(),
            level: 11,
            weight: 2,
            coeffs: LEVEL11.iter().map(|&c| q.from_i64(&[c])).collect(),
            field: q,
            module: None,
            embedding_index: None,
        }
    }

    #[test]
    fn t1_is_identity() {
        let f = level11();
        assert_eq!(hecke_apply(1, &f.coeffs, 11).unwrap(), f.coeffs);
    }

    #[test]
    fn t2_scales_by_c2() {
        let f = level11();
        let g = hecke_apply(2, &f.coeffs, 11).unwrap();
        assert_eq!(g.len(), 12);
        for (m, x) in g.iter().enumerate() {
            assert_eq!(x, &f.c(m + 1).scale(&Rat::from_integer(BigInt::from(-2))));
        }
    }

    #[test]
    fn gamma_one_is_c_n() {
        let f = level11();
        for n in 1..=25 {
            assert_eq!(&hecke_apply(n, &f.coeffs, 11).unwrap()[0], f.c(n));
        }
        assert!(matches!(
            hecke_apply(26, &f.coeffs, 11),
            Err(Error::InsufficientCoefficients { required: 26, available: 25 })
        ));
    }

    #[test]
    fn verification() {
        let mut f = level11();
        let r = verify_eigenform(&f, 5).unwrap();
        assert!(r.passed());
        assert_eq!(r.checks.iter().map(|c| c.p).collect::<Vec<_>>(), vec![2, 3, 5]);
        f.coeffs[6] = f.field.from_i64(&[5]); // c(7)
        let r = verify_eigenform(&f, 5).unwrap();
        // T_2: gamma(7) = c(14) = 4, but c(2) c(7) = -10.
        assert_eq!(r.first_failure(), Some((2, 7)));
        assert!(verify_eigenform(&f, 7).is_err());
    }
}
