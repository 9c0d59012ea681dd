//! Automorphisms of totally real fields, found numerically and certified exactly.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::field::{FieldElement, NumberField};
use super::poly::Rat;

/// A field automorphism `tau`, determined by the image of the generator.
///
/// `perm[k] = m` records `sigma_k(tau(a)) = sigma_m(a)` for every element `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    image: FieldElement,
    perm: Vec<usize>,
}

impl Automorphism {
    pub fn image_of_generator(&self) -> &FieldElement {
        &self.image
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn apply(&self, a: &FieldElement) -> FieldElement {
        self.image.eval_poly(&a.as_poly())
    }
}

fn solve_f64(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[p][c].abs() < 1e-300 {
            return None;
        }
        a.swap(p, c);
        b.swap(p, c);
        for i in c + 1..n {
            let f = a[i][c] / a[c][c];
            for j in c..n {
                a[i][j] -= f * a[c][j];
            }
            b[i] -= f * b[c];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    Some(x)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Index of the real root equal to `sigma_k(beta)`, given that `beta` is a
/// root of the minimal polynomial.
fn locate_root(field: &NumberField, k: usize, beta: &FieldElement) -> Option<usize> {
    let e = field.embedding(k).ok()?;
    let roots = field.real_roots();
    let mut eps = roots.iter().map(|r| r.width()).min()?;
    for _ in 0..64 {
        let iv = e.eval(beta, &eps);
        let hits: Vec<usize> = roots
            .iter()
            .enumerate()
            .filter(|(_, r)| !(iv.hi < r.lo || iv.lo > r.hi))
            .map(|(i, _)| i)
            .collect();
        if hits.len() == 1 {
            let r = &roots[hits[0]];
            if r.lo < iv.lo && iv.hi < r.hi {
                return Some(hits[0]);
            }
        }
        eps = eps / Rat::from_integer(BigInt::from(1 << 16));
    }
    None
}

/// All automorphisms of a totally real field of degree at most 6, the
/// identity first. Other fields report only the identity.
pub fn automorphisms(field: &NumberField) -> Vec<Automorphism> {
    let n = field.degree();
    let identity = Automorphism {
        image: field.generator(),
        perm: (0..field.real_embedding_count()).collect(),
    };
    if n == 1 || n > 6 || !field.is_totally_real() {
        return vec![identity];
    }
    let roots: Vec<f64> = field.real_roots().iter().map(|r| r.approx()).collect();
    let vander: Vec<Vec<f64>> = roots
        .iter()
        .map(|r| (0..n).map(|i| r.powi(i as i32)).collect())
        .collect();
    let disc = field.discriminant().abs();
    let disc_f = disc.to_f64().unwrap_or(f64::INFINITY);
    let minpoly = field.minpoly().to_rational();
    let mut out = vec![identity];
    for perm in permutations(n) {
        if perm.iter().enumerate().all(|(i, &p)| i == p) {
            continue;
        }
        let rhs: Vec<f64> = perm.iter().map(|&p| roots[p]).collect();
        let Some(c) = solve_f64(vander.clone(), rhs) else {
            continue;
        };
        let mut coords = Vec::with_capacity(n);
        let mut ok = true;
        for ci in c {
            let scaled = ci * disc_f;
            let rounded = scaled.round();
            if !scaled.is_finite() || (scaled - rounded).abs() > 1e-6 * disc_f.max(1.0) {
                ok = false;
                break;
            }
            coords.push(Rat::new(BigInt::from(rounded as i64), disc.clone()));
        }
        if !ok {
            continue;
        }
        let beta = field.element(coords).expect("degree-length coordinates");
        if !beta.eval_poly(&minpoly).is_zero() {
            continue;
        }
        let located: Option<Vec<usize>> = (0..n).map(|k| locate_root(field, k, &beta)).collect();
        if let Some(p) = located {
            let aut = Automorphism { image: beta, perm: p };
            if !out.contains(&aut) {
                out.push(aut);
            }
        }
    }
    out
}
