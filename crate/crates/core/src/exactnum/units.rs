//! Units of orders, multiplication matrices and non-negative forms.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::field::{Embedding, FieldElement};
use super::lattice::{hnf_rows, lll_reduce};
use super::matrix::{self, det_i128, IntMatrix};
use super::module::{OrderRing, ZModule};
use super::poly::{int_rat, Rat};
use crate::error::{Error, Result};
use crate::mcf::{bauer_factorize, convergent_matrix, jpa_expand, jpa_step, JpaDigit, JpaState, StepOutcome};

/// A unit of an order, with its norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitElement {
    element: FieldElement,
    norm: i8,
}

impl UnitElement {
    /// Checks that `element` and its inverse lie in `order` and records the norm.
    pub fn new(element: FieldElement, order: &OrderRing) -> Result<Self> {
        let norm = element.norm();
        let sign = if norm == Rat::one() {
            1
        } else if norm == -Rat::one() {
            -1
        } else {
            return Err(Error::UnitNotFound(format!("{element} has norm {norm}")));
        };
        if !order.contains(&element) || !order.contains(&element.inverse()?) {
            return Err(Error::UnitNotFound(format!("{element} is not a unit of the order")));
        }
        Ok(UnitElement { element, norm: sign })
    }

    pub fn element(&self) -> &FieldElement {
        &self.element
    }

    pub fn norm(&self) -> i8 {
        self.norm
    }

    pub fn pow(&self, k: i64) -> UnitElement {
        let norm = if k % 2 == 0 { 1 } else { self.norm };
        UnitElement {
            element: self.element.pow(k).expect("units are invertible"),
            norm,
        }
    }
}

/// Unimodular integer matrix whose first row is the primitive vector `c`.
pub(crate) fn complete_to_unimodular(c: &[BigInt]) -> IntMatrix {
    let n = c.len();
    // Row-reduce [c^T | I]: the transform U satisfies U c^T = (1, 0, ..., 0)^T.
    let aug: IntMatrix = (0..n)
        .map(|i| {
            let mut r = vec![c[i].clone()];
            r.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let h = hnf_rows(&aug);
    debug_assert!(h[0][0].is_one(), "vector must be primitive");
    let u: IntMatrix = h.iter().map(|r| r[1..].to_vec()).collect();
    let inv = matrix::unimodular_inverse(&u).expect("row reduction is unimodular");
    matrix::transpose(&inv)
}

/// Multiplication by `u` on `m`: row `i` holds the coordinates of `u b_i`,
/// so that `A lambda = u lambda` for the basis column `lambda`.
pub fn multiplication_matrix(u: &FieldElement, m: &ZModule) -> Result<IntMatrix> {
    m.basis()
        .iter()
        .map(|b| m.coordinates(&(u * b)).ok_or(Error::NotEndomorphism))
        .collect()
}

fn to_i128_matrix(a: &IntMatrix) -> Option<Vec<Vec<i128>>> {
    a.iter()
        .map(|r| r.iter().map(|x| x.to_i128()).collect::<Option<Vec<_>>>())
        .collect()
}

/// Floating conjugates of an element, indexed like the field's complex roots.
fn conjugates(a: &FieldElement) -> Vec<num_complex::Complex64> {
    let coords: Vec<f64> = a.coords().iter().map(super::interval::rat_to_f64).collect();
    a.field()
        .complex_roots()
        .iter()
        .map(|&z| {
            coords
                .iter()
                .rev()
                .fold(num_complex::Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
        })
        .collect()
}

/// True when the value at `e` strictly dominates every other conjugate in
/// absolute value (floating heuristic; later steps certify exactly).
fn is_dominant(a: &FieldElement, e: &Embedding) -> bool {
    let root = e.root().approx();
    let roots = a.field().complex_roots();
    let own = roots
        .iter()
        .enumerate()
        .min_by(|x, y| {
            let dx = (x.1 - root).norm();
            let dy = (y.1 - root).norm();
            dx.partial_cmp(&dy).unwrap_or(Ordering::Equal)
        })
        .map(|(i, _)| i)
        .unwrap_or(0);
    let conj = conjugates(a);
    let lead = conj[own].norm();
    conj.iter()
        .enumerate()
        .all(|(i, c)| i == own || c.norm() * (1.0 + 1e-9) < lead)
}

/// Unit by the periodic continued fraction of a generator of a quadratic order.
fn quadratic_unit(o: &OrderRing, e: &Embedding) -> Result<UnitElement> {
    let basis = o.basis_with_one();
    let omega = &basis[1];
    let field = o.field();
    let shift = e.floor(omega) - BigInt::one();
    let xi = omega - &field.from_rational(int_rat(&shift));
    let mut states = vec![xi];
    let limit = 100_000;
    for _ in 0..limit {
        let cur = states.last().expect("non-empty");
        let d = e.floor(cur);
        let next = (cur - &field.from_rational(int_rat(&d))).inverse()?;
        if let Some(start) = states.iter().position(|s| s == &next) {
            let eps = states[start..]
                .iter()
                .skip(1)
                .chain(std::iter::once(&next))
                .fold(field.one(), |acc, s| acc * s);
            return UnitElement::new(eps, o);
        }
        states.push(next);
    }
    Err(Error::UnitNotFound("continued fraction did not become periodic".into()))
}

const SEARCH_BOUNDS: [i64; 9] = [1, 2, 4, 8, 16, 32, 64, 128, 256];

/// Enumerates order elements with bounded coordinates and keeps those of norm ±1.
fn bounded_units(o: &OrderRing, bound: i64, inner: i64) -> Vec<FieldElement> {
    let basis = o.basis();
    let n = basis.len();
    let m = o.module();
    let mats: Vec<Vec<Vec<i128>>> = basis
        .iter()
        .map(|b| {
            let a = multiplication_matrix(b, m).expect("order basis elements are endomorphisms");
            to_i128_matrix(&a).expect("small order")
        })
        .collect();
    let mut out = Vec::new();
    let mut v = vec![-bound; n];
    loop {
        let max = v.iter().map(|x| x.abs()).max().unwrap_or(0);
        let first_nonzero_positive = v.iter().find(|x| **x != 0).is_some_and(|x| *x > 0);
        if max > inner && first_nonzero_positive {
            let mut acc = vec![vec![0i128; n]; n];
            for (k, mk) in mats.iter().enumerate() {
                if v[k] == 0 {
                    continue;
                }
                for i in 0..n {
                    for j in 0..n {
                        acc[i][j] += v[k] as i128 * mk[i][j];
                    }
                }
            }
            if det_i128(&acc).abs().is_one() {
                let el = basis
                    .iter()
                    .zip(&v)
                    .fold(o.field().zero(), |s, (b, &c)| s + b.scale(&Rat::from_integer(c.into())));
                out.push(el);
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            v[i] += 1;
            if v[i] <= bound {
                break;
            }
            v[i] = -bound;
            i += 1;
        }
    }
}

/// Among `cands`, the unit with smallest value above 1 at `e` that dominates its conjugates.
fn best_expanding(cands: &[FieldElement], e: &Embedding) -> Option<FieldElement> {
    let one = e.field().one();
    let mut best: Option<FieldElement> = None;
    for v in cands {
        if v.is_rational() {
            continue;
        }
        let inv = v.inverse().ok()?;
        for w in [v.clone(), -v, inv.clone(), -&inv] {
            if e.cmp(&w, &one) != Ordering::Greater || !is_dominant(&w, e) {
                continue;
            }
            let better = match &best {
                None => true,
                Some(b) => e.cmp(&w, b) == Ordering::Less,
            };
            if better {
                best = Some(w);
            }
        }
    }
    best
}

/// A non-torsion unit `u` of the order with `u > 1` at `e`.
///
/// Quadratic orders use the periodic continued fraction of a generator.
/// Higher degrees enumerate elements with coordinates in the order basis
/// bounded by 1, 2, 4, ..., 256 and keep units whose value at `e` exceeds 1
/// and dominates all conjugates; the smallest such value wins.
pub fn find_unit(o: &OrderRing, e: &Embedding) -> Result<UnitElement> {
    let n = o.field().degree();
    if n == 1 {
        return Err(Error::UnitNotFound("the units of Z are torsion".into()));
    }
    if e.field() != o.field() {
        return Err(Error::FieldMismatch);
    }
    if n == 2 {
        return quadratic_unit(o, e);
    }
    let mut found: Vec<FieldElement> = Vec::new();
    let mut inner = 0;
    for &bound in &SEARCH_BOUNDS {
        let units = bounded_units(o, bound, inner);
        inner = bound;
        if let Some(u) = best_expanding(&units, e) {
            return UnitElement::new(u, o);
        }
        found.extend(units.into_iter().filter(|u| !u.is_rational()));
        // Products of small units can be dominant when no single one is.
        if found.len() >= 2 {
            let mut prods = Vec::new();
            for (i, a) in found.iter().enumerate().take(8) {
                for b in found.iter().skip(i + 1).take(8) {
                    for p in -4i64..=4 {
                        for q in -4i64..=4 {
                            if p == 0 && q == 0 {
                                continue;
                            }
                            prods.push(a.pow(p)? * b.pow(q)?);
                        }
                    }
                }
            }
            if let Some(u) = best_expanding(&prods, e) {
                return UnitElement::new(u, o);
            }
        }
    }
    Err(Error::UnitNotFound(format!(
        "no dominant unit with coordinates bounded by {}",
        SEARCH_BOUNDS[SEARCH_BOUNDS.len() - 1]
    )))
}

/// Result of [`make_nonnegative`]: `matrix = T^{-1} A^k T` is non-negative,
/// and `basis = T^{-1} lambda` is a positive basis of the module on which
/// `u^k` acts by `matrix`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonnegativeForm {
    pub k: u32,
    pub transform: IntMatrix,
    pub matrix: IntMatrix,
    pub digits: Vec<JpaDigit>,
    pub basis: Vec<FieldElement>,
}

/// Serializable summary of a [`NonnegativeForm`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonnegativeSummary {
    pub k: String,
    pub transform: Vec<Vec<String>>,
    pub matrix: Vec<Vec<String>>,
}

fn apply_rows(t: &IntMatrix, v: &[FieldElement]) -> Vec<FieldElement> {
    let field = v[0].field();
    t.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(field.zero(), |acc, (c, x)| acc + x.scale(&int_rat(c)))
        })
        .collect()
}

fn sign_flips(n: usize) -> Vec<IntMatrix> {
    (0u32..(1 << n))
        .map(|mask| {
            let mut d = matrix::identity(n);
            for (i, row) in d.iter_mut().enumerate() {
                if mask & (1 << i) != 0 {
                    row[i] = -BigInt::one();
                }
            }
            d
        })
        .collect()
}

/// Accepts `T` when `T^{-1} A^k T` is a non-negative block product whose
/// digits are exactly the expansion of the new basis.
fn try_transform(ak: &IntMatrix, t: &IntMatrix, lambda: &[FieldElement], e: &Embedding) -> Option<(IntMatrix, Vec<JpaDigit>, Vec<FieldElement>)> {
    let tinv = matrix::unimodular_inverse(t)?;
    let a2 = matrix::mul(&matrix::mul(&tinv, ak), t);
    if !matrix::is_nonnegative(&a2) || matrix::is_identity(&a2) {
        return None;
    }
    let mu = apply_rows(&tinv, lambda);
    if mu.iter().any(|m| !e.is_positive(m)) {
        return None;
    }
    let digits = bauer_factorize(&a2).ok()?;
    let inv0 = mu[0].inverse().ok()?;
    let theta: Vec<FieldElement> = mu[1..].iter().map(|m| m * &inv0).collect();
    let mut state = JpaState::new(theta, e.clone()).ok()?;
    for d in &digits {
        match jpa_step(&state).ok()? {
            StepOutcome::Continue { digit, next } if &digit == d => state = next,
            _ => return None,
        }
    }
    Some((a2, digits, mu))
}

const MAX_POWER: u32 = 12;

/// Finds `k` and `T` in GL_n(Z) with `T^{-1} A^k T` non-negative.
///
/// Candidates, in order: for each `k = 1..12` the identity and diagonal sign
/// changes; then an LLL-reduced basis of the module with sign changes; then
/// bases read off the Jacobi-Perron convergents of the positive ratio vector
/// of the module basis. A candidate is accepted only if the new basis is
/// positive at `e` (so the matrix has spectral radius `u^k` at `e`) and its
/// block factorization coincides with the expansion of that basis.
pub fn make_nonnegative(a: &IntMatrix, u: &UnitElement, m: &ZModule, e: &Embedding) -> Result<NonnegativeForm> {
    make_nonnegative_with(a, u, m, e, &[])
}

/// As [`make_nonnegative`], trying each `(k, T)` in `hints` first.
pub fn make_nonnegative_with(
    a: &IntMatrix,
    u: &UnitElement,
    m: &ZModule,
    e: &Embedding,
    hints: &[(u32, IntMatrix)],
) -> Result<NonnegativeForm> {
    let field = m.field();
    let n = field.degree();
    if multiplication_matrix(u.element(), m)? != *a {
        return Err(Error::Degenerate("matrix is not the action of the unit on the module".into()));
    }
    if e.cmp(u.element(), &field.one()) != Ordering::Greater {
        return Err(Error::NonnegativeFormNotFound(
            "unit is not expanding at the working embedding".into(),
        ));
    }
    let lambda = m.basis();
    let mut powers: Vec<u32> = hints.iter().map(|h| h.0).collect();
    powers.extend(1..=MAX_POWER);
    let mut seen = std::collections::HashSet::new();
    powers.retain(|k| seen.insert(*k));
    let flips = sign_flips(n);
    let accept = |k: u32, t: IntMatrix| -> Option<NonnegativeForm> {
        let ak = matrix::pow(a, k);
        try_transform(&ak, &t, &lambda, e).map(|(matrix, digits, basis)| NonnegativeForm {
            k,
            transform: t,
            matrix,
            digits,
            basis,
        })
    };

    for (k, t) in hints {
        if t.len() == n && matrix::unimodular_inverse(t).is_some() {
            if let Some(f) = accept(*k, t.clone()) {
                return Ok(f);
            }
        }
    }
    for &k in &powers {
        for d in &flips {
            if let Some(f) = accept(k, d.clone()) {
                return Ok(f);
            }
        }
    }

    // LLL-reduced basis U lambda, so T = U^{-1}.
    if let Some(t0) = lll_frame(m).and_then(|u| matrix::unimodular_inverse(&u)) {
        for &k in &powers {
            for d in &flips {
                if let Some(f) = accept(k, matrix::mul(&t0, d)) {
                    return Ok(f);
                }
            }
        }
    }

    // Convergent bases of the positive ratio vector, for each ordering of
    // the reduced and the canonical basis.
    for (w, theta) in ordered_ratios(m, e)? {
        // An accepted basis is fixed by its period product, so its ratio
        // vector is purely periodic: only periodic expansions can help, and
        // only from the end of the preperiod on.
        let expansion = jpa_expand(&theta, e, ORDERING_STEPS)?;
        if !expansion.is_periodic() {
            continue;
        }
        let digits = expansion.digits();
        let winv = matrix::unimodular_inverse(&w).expect("frames are unimodular");
        for j in expansion.preperiod.len()..=digits.len() {
            let t = matrix::mul(&winv, &convergent_matrix(n, &digits[..j]));
            for &k in &powers {
                if let Some(f) = accept(k, t.clone()) {
                    return Ok(f);
                }
            }
        }
    }
    Err(Error::NonnegativeFormNotFound(format!(
        "no admissible basis for powers up to {MAX_POWER}"
    )))
}

/// Step budget for each basis ordering when looking for a periodic
/// expansion. Without a period the entries grow and steps get slower.
pub const ORDERING_STEPS: usize = 120;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in (0..n).rev() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// `U` with `U lambda` an LLL-reduced basis of `m`, where `lambda` is the
/// canonical basis.
fn lll_frame(m: &ZModule) -> Option<IntMatrix> {
    let reduced = lll_reduce(m.hnf());
    let hinv = matrix::rat_inverse(&matrix::to_rat(m.hnf()))?;
    matrix::to_int(&matrix::rat_mul(&matrix::to_rat(&reduced), &hinv))
}

/// Unimodular `W` with `W lambda` positive at `e`, and the ratios of
/// `W lambda` to its first entry: every ordering of the LLL-reduced basis,
/// then every ordering of the canonical basis. Reduced bases turn periodic
/// much sooner in practice.
fn ordered_ratios(m: &ZModule, e: &Embedding) -> Result<Vec<(IntMatrix, Vec<FieldElement>)>> {
    let lambda = m.basis();
    let n = lambda.len();
    let mut frames = Vec::new();
    if let Some(u) = lll_frame(m) {
        frames.push(u);
    }
    if !frames.iter().any(|f| matrix::is_identity(f)) {
        frames.push(matrix::identity(n));
    }
    let mut out = Vec::new();
    for u in frames {
        let basis = apply_rows(&u, &lambda);
        for p in permutations(n) {
            let s: IntMatrix = p
                .iter()
                .map(|&src| {
                    let sign = if e.sign(&basis[src]) == Ordering::Less { -BigInt::one() } else { BigInt::one() };
                    (0..n).map(|j| if j == src { sign.clone() } else { BigInt::zero() }).collect()
                })
                .collect();
            let w = matrix::mul(&s, &u);
            let pos = apply_rows(&w, &lambda);
            let inv0 = pos[0].inverse()?;
            let theta = pos[1..].iter().map(|x| x * &inv0).collect();
            out.push((w, theta));
        }
    }
    Ok(out)
}

/// The unit read off a periodic Jacobi-Perron expansion of the module basis.
///
/// Each ordering of the reduced, then the canonical, positive basis is
/// expanded for up to `max_steps` steps. If the ratio vector
/// `v = (1, theta)` of an ordering is periodic,
/// the period product `P` satisfies `P v = eps v` with `eps > 1` at `e`, so
/// `eps` is a unit of the endomorphism order whose action is non-negative in
/// a convergent basis. In unit rank 2 and higher this need not be a power of
/// the unit picked by [`find_unit`].
pub fn periodic_unit(o: &OrderRing, m: &ZModule, e: &Embedding, max_steps: usize) -> Result<UnitElement> {
    let n = m.field().degree();
    if n < 2 {
        return Err(Error::UnitNotFound("the units of Z are torsion".into()));
    }
    let field = m.field();
    for (_, theta) in ordered_ratios(m, e)? {
        let x = jpa_expand(&theta, e, max_steps)?;
        let (Some(state), false) = (x.period_start.as_ref(), x.period.is_empty()) else {
            continue;
        };
        let p = convergent_matrix(n, &x.period);
        let mut v = vec![field.one()];
        v.extend(state.iter().cloned());
        let eps = p[0]
            .iter()
            .zip(&v)
            .fold(field.zero(), |acc, (c, x)| acc + x.scale(&int_rat(c)));
        return UnitElement::new(eps, o);
    }
    Err(Error::UnitNotFound(format!(
        "no basis ordering has a periodic expansion within {max_steps} steps"
    )))
}

impl NonnegativeForm {
    pub fn summary(&self) -> NonnegativeSummary {
        let s = |m: &IntMatrix| m.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        NonnegativeSummary {
            k: self.k.to_string(),
            transform: s(&self.transform),
            matrix: s(&self.matrix),
        }
    }
}
