use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::matrix::{identity, mul};
use crate::exactnum::{Embedding, FieldElement, IntMatrix, Rat};

/// Step budget used when callers do not supply one.
pub const DEFAULT_MAX_STEPS: usize = 10_000;

/// One Jacobi-Perron digit vector `(b_1, ..., b_{n-1})`, entries non-negative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JpaDigit(pub Vec<BigInt>);

impl JpaDigit {
    pub fn from_i64(b: &[i64]) -> Self {
        JpaDigit(b.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Size `n` of the block matrix this digit belongs to.
    pub fn dimension(&self) -> usize {
        self.0.len() + 1
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }
}

impl fmt::Display for JpaDigit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for JpaDigit {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for JpaDigit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        v.iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(JpaDigit)
    }
}

/// The block `B(b)`: first row `(0, ..., 0, 1)`, identity below it on the
/// left, `b` down the rest of the last column.
pub fn block_matrix(d: &JpaDigit) -> IntMatrix {
    let n = d.dimension();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    m[0][n - 1] = BigInt::one();
    for i in 1..n {
        m[i][i - 1] = BigInt::one();
        m[i][n - 1] += &d.0[i - 1];
    }
    m
}

/// Product `B(b_1) ... B(b_k)`; the identity of size `n` for an empty list.
pub fn convergent_matrix(n: usize, digits: &[JpaDigit]) -> IntMatrix {
    digits
        .iter()
        .fold(identity(n), |acc, d| mul(&acc, &block_matrix(d)))
}

/// Current point `theta = (theta_1, ..., theta_{n-1})` of an expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JpaState {
    pub theta: Vec<FieldElement>,
    pub embedding: Embedding,
}

impl JpaState {
    pub fn new(theta: Vec<FieldElement>, embedding: Embedding) -> Result<Self> {
        if theta.is_empty() {
            return Err(Error::Degenerate("theta must have at least one entry".into()));
        }
        if theta.iter().any(|t| t.field() != embedding.field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(JpaState { theta, embedding })
    }

    pub fn dimension(&self) -> usize {
        self.theta.len() + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Continue { digit: JpaDigit, next: JpaState },
    /// `theta_1` was an integer; the digit is the last one.
    Terminated { digit: JpaDigit },
}

/// One Jacobi-Perron step.
pub fn jpa_step(s: &JpaState) -> Result<StepOutcome> {
    let e = &s.embedding;
    let floors: Vec<BigInt> = s.theta.iter().map(|t| e.floor(t)).collect();
    if floors.iter().any(Signed::is_negative) {
        return Err(Error::Degenerate("Jacobi-Perron digits must be non-negative".into()));
    }
    let field = e.field();
    let frac: Vec<FieldElement> = s
        .theta
        .iter()
        .zip(&floors)
        .map(|(t, d)| t - &field.from_rational(Rat::from_integer(d.clone())))
        .collect();
    let digit = JpaDigit(floors);
    if frac[0].is_zero() {
        return Ok(StepOutcome::Terminated { digit });
    }
    let inv = frac[0].inverse()?;
    let mut theta: Vec<FieldElement> = frac[1..].iter().map(|f| f * &inv).collect();
    theta.push(inv);
    Ok(StepOutcome::Continue {
        digit,
        next: JpaState {
            theta,
            embedding: e.clone(),
        },
    })
}

/// Checks `(1, theta) = c * B(d) (1, theta')` with `c > 0`, exactly.
pub fn verify_step(before: &JpaState, digit: &JpaDigit, after: &JpaState) -> bool {
    let field = before.embedding.field();
    let n = before.dimension();
    if digit.dimension() != n || after.dimension() != n {
        return false;
    }
    let mut v_after = vec![field.one()];
    v_after.extend(after.theta.iter().cloned());
    let b = block_matrix(digit);
    let image: Vec<FieldElement> = b
        .iter()
        .map(|row| {
            row.iter().zip(&v_after).fold(field.zero(), |acc, (c, x)| {
                acc + x.scale(&Rat::from_integer(c.clone()))
            })
        })
        .collect();
    if !before.embedding.is_positive(&image[0]) {
        return false;
    }
    let c = &image[0];
    let mut v_before = vec![field.one()];
    v_before.extend(before.theta.iter().cloned());
    v_before.iter().zip(&image).all(|(x, y)| &(x * c) == y)
}

/// Outcome of [`jpa_expand`].
///
/// `period` is empty both for terminating expansions and when the step
/// budget ran out; `terminated` distinguishes the two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JpaExpansion {
    pub dimension: usize,
    pub preperiod: Vec<JpaDigit>,
    pub period: Vec<JpaDigit>,
    pub terminated: bool,
    pub steps: usize,
    /// State at the start of the period.
    #[serde(skip)]
    pub period_start: Option<Vec<FieldElement>>,
    /// State whose first entry was an integer, for terminating expansions.
    #[serde(skip)]
    pub terminal_state: Option<Vec<FieldElement>>,
}

impl JpaExpansion {
    pub fn is_periodic(&self) -> bool {
        !self.period.is_empty()
    }

    /// True when neither a period nor termination was reached.
    pub fn is_exhausted(&self) -> bool {
        !self.terminated && self.period.is_empty()
    }

    pub fn digits(&self) -> Vec<JpaDigit> {
        self.preperiod.iter().chain(&self.period).cloned().collect()
    }
}

/// Iterates [`jpa_step`] with exact cycle detection on the states.
pub fn jpa_expand(theta: &[FieldElement], e: &Embedding, max_steps: usize) -> Result<JpaExpansion> {
    let mut state = JpaState::new(theta.to_vec(), e.clone())?;
    if state.theta.iter().any(|t| !e.is_positive(t)) {
        return Err(Error::Degenerate("theta entries must be positive at the embedding".into()));
    }
    let dimension = state.dimension();
    let mut seen: HashMap<Vec<FieldElement>, usize> = HashMap::new();
    let mut digits = Vec::new();
    loop {
        if let Some(&start) = seen.get(&state.theta) {
            let period = digits.split_off(start);
            return Ok(JpaExpansion {
                dimension,
                preperiod: digits,
                period,
                terminated: false,
                steps: seen.len(),
                period_start: Some(state.theta),
                terminal_state: None,
            });
        }
        if digits.len() >= max_steps {
            return Ok(JpaExpansion {
                dimension,
                preperiod: digits,
                period: Vec::new(),
                terminated: false,
                steps: max_steps,
                period_start: None,
                terminal_state: None,
            });
        }
        seen.insert(state.theta.clone(), digits.len());
        match jpa_step(&state)? {
            StepOutcome::Continue { digit, next } => {
                digits.push(digit);
                state = next;
            }
            StepOutcome::Terminated { digit } => {
                digits.push(digit);
                return Ok(JpaExpansion {
                    dimension,
                    steps: digits.len(),
                    preperiod: digits,
                    period: Vec::new(),
                    terminated: true,
                    period_start: None,
                    terminal_state: Some(state.theta),
                });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{make_field, IntPolynomial, NumberField};

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        crate::exactnum::matrix::from_i64(rows)
    }

    #[test]
    fn convergent_examples() {
        assert_eq!(convergent_matrix(2, &[]), identity(2));
        assert_eq!(convergent_matrix(2, &[JpaDigit::from_i64(&[1])]), m(&[vec![0, 1], vec![1, 1]]));
        let d = vec![JpaDigit::from_i64(&[2]); 3];
        assert_eq!(convergent_matrix(2, &d), m(&[vec![2, 5], vec![5, 12]]));
    }

    #[test]
    fn step_examples() {
        let k = make_field(IntPolynomial::from_i64(&[-2, 0, 1])).unwrap();
        let e = k.default_embedding().unwrap();
        let s = JpaState::new(vec![k.generator()], e.clone()).unwrap();
        match jpa_step(&s).unwrap() {
            StepOutcome::Continue { digit, next } => {
                assert_eq!(digit, JpaDigit::from_i64(&[1]));
                assert_eq!(next.theta, vec![k.from_i64(&[1, 1])]);
                assert!(verify_step(&s, &digit, &next));
            }
            other => panic!("unexpected {other:?}"),
        }
        let q = NumberField::rationals();
        let s = JpaState::new(vec![q.from_i64(&[2])], q.embedding(0).unwrap()).unwrap();
        assert_eq!(
            jpa_step(&s).unwrap(),
            StepOutcome::Terminated {
                digit: JpaDigit::from_i64(&[2])
            }
        );
    }

    #[test]
    fn cubic_step() {
        let k = make_field(IntPolynomial::from_i64(&[-1, -1, 0, 1])).unwrap();
        let e = k.default_embedding().unwrap();
        let t = k.generator();
        let s = JpaState::new(vec![t.clone(), &t * &t], e).unwrap();
        let StepOutcome::Continue { digit, next } = jpa_step(&s).unwrap() else {
            panic!("expected continuation");
        };
        assert_eq!(digit, JpaDigit::from_i64(&[1, 1]));
        assert!(verify_step(&s, &digit, &next));
    }

    #[test]
    fn golden_ratio_is_purely_periodic() {
        let k = make_field(IntPolynomial::from_i64(&[-1, -1, 1])).unwrap();
        let e = k.default_embedding().unwrap();
        let x = jpa_expand(&[k.generator()], &e, 100).unwrap();
        assert!(x.preperiod.is_empty());
        assert_eq!(x.period, vec![JpaDigit::from_i64(&[1])]);
    }

    #[test]
    fn budget_exhaustion_is_not_an_error() {
        let k = make_field(IntPolynomial::from_i64(&[-10, 0, 0, 1])).unwrap();
        let e = k.default_embedding().unwrap();
        let t = k.generator();
        let x = jpa_expand(&[t.clone(), &t * &t], &e, 3).unwrap();
        assert!(x.is_exhausted());
        assert_eq!(x.preperiod.len(), 3);
    }

    #[test]
    fn digit_serialization() {
        let d = JpaDigit::from_i64(&[1, 12]);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"["1","12"]"#);
        assert_eq!(serde_json::from_str::<JpaDigit>(&s).unwrap(), d);
    }
}
