#![allow(dead_code)]

pub mod shadow;

use heckeaf::exactnum::IntPolynomial;
use heckeaf::hecke::{load_newform, NewformData};
use heckeaf::mcf::JpaDigit;
use rand::Rng;

pub const FIXTURE_LEVELS: [u32; 4] = [11, 23, 29, 97];

pub fn fixture_text(level: u32) -> String {
    let path = format!("{}/../../fixtures/newform_{level}.json", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn fixture(level: u32) -> NewformData {
    load_newform(&fixture_text(level)).expect("bundled fixture loads")
}

pub fn poly(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64(c)
}

/// A digit vector the block peel can recover: last entry in `1..=5`, the
/// others strictly below it.
pub fn admissible_digit<R: Rng>(rng: &mut R, n: usize) -> JpaDigit {
    let last = rng.gen_range(1..=5i64);
    let mut d: Vec<i64> = (0..n - 2).map(|_| rng.gen_range(0..last)).collect();
    d.push(last);
    JpaDigit::from_i64(&d)
}

pub fn admissible_digits<R: Rng>(rng: &mut R, n: usize, len: usize) -> Vec<JpaDigit> {
    (0..len).map(|_| admissible_digit(rng, n)).collect()
}
