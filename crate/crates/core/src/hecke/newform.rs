use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{make_field, parse_rational, FieldElement, IntPolynomial, NumberField, Rat};

/// Shortest coefficient table accepted.
pub const MIN_COEFFICIENTS: usize = 20;

/// An integer given as a JSON number or a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntLike {
    Number(i64),
    Text(String),
}

impl IntLike {
    pub fn to_bigint(&self) -> Result<BigInt> {
        match self {
            IntLike::Number(n) => Ok(BigInt::from(*n)),
            IntLike::Text(s) => s.trim().parse().map_err(|_| Error::Schema(format!("bad integer {s:?}"))),
        }
    }

    fn to_usize(&self, what: &str) -> Result<usize> {
        let v = self.to_bigint()?;
        usize::try_from(v).map_err(|_| Error::Schema(format!("{what} must be a non-negative integer")))
    }
}

/// The on-disk newform fixture. Coefficients are listed from `c(1)`, each as
/// rational coordinates in the power basis of the field polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NewformFixture {
    pub label: String,
    pub level: IntLike,
    pub weight: IntLike,
    pub field_poly: Vec<IntLike>,
    pub an: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding_index: Option<IntLike>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<serde_json::Value>,
}

/// A verified weight-2 newform with coefficients in its coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewformData {
    pub label: String,
    pub level: u64,
    pub weight: u32,
    pub field: NumberField,
    /// `coeffs[m - 1] = c(m)`.
    pub coeffs: Vec<FieldElement>,
    /// Explicit module generators overriding the default module.
    pub module: Option<Vec<FieldElement>>,
    pub embedding_index: Option<usize>,
}

impl NewformData {
    /// `c(m)` for `1 <= m <= len`.
    pub fn c(&self, m: usize) -> &FieldElement {
        &self.coeffs[m - 1]
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }
}

fn parse_element(field: &NumberField, coords: &[String], what: &str) -> Result<FieldElement> {
    if coords.len() != field.degree() {
        return Err(Error::Schema(format!(
            "{what} has {} coordinates, field degree is {}",
            coords.len(),
            field.degree()
        )));
    }
    let v: Vec<Rat> = coords
        .iter()
        .map(|s| parse_rational(s).map_err(|_| Error::Schema(format!("{what}: bad rational {s:?}"))))
        .collect::<Result<_>>()?;
    field.element(v)
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Smallest prime factor and its exponent when `k` is a prime power.
fn prime_power(k: usize) -> Option<(usize, u32)> {
    let p = (2..=k).find(|d| k % d == 0)?;
    let mut r = 0;
    let mut x = k;
    while x % p == 0 {
        x /= p;
        r += 1;
    }
    (x == 1).then_some((p, r))
}

/// Checks multiplicativity and the prime-power recursions, scanning indices
/// in increasing order so the first violation found is the smallest.
pub fn check_hecke_relations(coeffs: &[FieldElement], level: u64) -> Result<()> {
    let m_max = coeffs.len();
    let c = |m: usize| &coeffs[m - 1];
    if m_max == 0 || !c(1).is_one() {
        return Err(Error::NotNormalized);
    }
    for k in 2..=m_max {
        if let Some((p, r)) = prime_power(k) {
            if r >= 2 {
                // c(p^r) = c(p) c(p^{r-1}) - p c(p^{r-2}) at good primes,
                // c(p^r) = c(p) c(p^{r-1}) at primes dividing the level.
                let prev = k / p;
                let mut expected = c(p) * c(prev);
                if level % p as u64 != 0 {
                    expected = expected - c(prev / p).scale(&Rat::from_integer(BigInt::from(p)));
                }
                if &expected != c(k) {
                    return Err(Error::HeckeRelationViolated { m: p, n: prev });
                }
            }
            continue;
        }
        for m in 2..k {
            if m * m >= k {
                break;
            }
            if k % m == 0 && m.gcd(&(k / m)) == 1 && &(c(m) * c(k / m)) != c(k) {
                return Err(Error::HeckeRelationViolated { m, n: k / m });
            }
        }
    }
    Ok(())
}

impl NewformFixture {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    /// Validates the fixture and builds the newform data.
    pub fn into_data(self) -> Result<NewformData> {
        let level = self.level.to_bigint()?;
        let level = u64::try_from(level).ok().filter(|&n| n >= 1).ok_or_else(|| Error::Schema("level must be a positive integer".into()))?;
        let weight = self.weight.to_bigint()?;
        if weight != BigInt::from(2) {
            return Err(Error::Schema(format!("weight {weight} is not supported; only weight 2")));
        }
        let poly: Vec<BigInt> = self.field_poly.iter().map(IntLike::to_bigint).collect::<Result<_>>()?;
        let field = make_field(IntPolynomial::new(poly))?;
        if self.an.len() < MIN_COEFFICIENTS {
            return Err(Error::InsufficientCoefficients {
                required: MIN_COEFFICIENTS,
                available: self.an.len(),
            });
        }
        let coeffs: Vec<FieldElement> = self
            .an
            .iter()
            .enumerate()
            .map(|(i, c)| parse_element(&field, c, &format!("c({})", i + 1)))
            .collect::<Result<_>>()?;
        if !coeffs[0].is_one() {
            return Err(Error::NotNormalized);
        }
        check_hecke_relations(&coeffs, level)?;
        let module = self
            .module
            .map(|gens| {
                gens.iter()
                    .enumerate()
                    .map(|(i, g)| parse_element(&field, g, &format!("module generator {i}")))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        let embedding_index = self.embedding_index.map(|e| e.to_usize("embedding_index")).transpose()?;
        if let Some(index) = embedding_index {
            field.embedding(index)?;
        }
        Ok(NewformData {
            label: self.label,
            level,
            weight: 2,
            field,
            coeffs,
            module,
            embedding_index,
        })
    }
}

/// Parses and verifies a newform fixture.
pub fn load_newform(text: &str) -> Result<NewformData> {
    NewformFixture::from_json(text)?.into_data()
}

pub(crate) fn primes_up_to(p: usize) -> Vec<usize> {
    (2..=p).filter(|&q| is_prime(q)).collect()
}
