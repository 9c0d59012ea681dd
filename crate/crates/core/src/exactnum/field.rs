//! Number fields, their elements and certified real embeddings.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::interval::{isolate_real_roots, rat_to_f64, RatInterval, RealRootInterval};
use super::irreducible::is_irreducible;
use super::matrix::{char_poly_rat, rat_det, RatMatrix};
use super::poly::{format_rational, int_rat, rat, IntPolynomial, Rat, RatPolynomial};
use crate::error::{Error, Result};

struct FieldInner {
    minpoly: IntPolynomial,
    minpoly_rat: RatPolynomial,
    /// `x^(n+k) mod minpoly` for `k = 0..n-1`, as integer coordinates.
    reductions: Vec<Vec<BigInt>>,
    roots: Vec<RealRootInterval>,
    refined: Mutex<Vec<RealRootInterval>>,
    complex_roots: OnceLock<Vec<Complex64>>,
}

/// A number field `Q[x]/(minpoly)` with its isolated real roots.
///
/// Cloning is cheap; clones share refinement caches.
#[derive(Clone)]
pub struct NumberField(Arc<FieldInner>);

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.0.minpoly)
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.minpoly == other.0.minpoly
    }
}

impl Eq for NumberField {}

/// Builds a field from a monic irreducible integer polynomial.
pub fn make_field(minpoly: IntPolynomial) -> Result<NumberField> {
    NumberField::new(minpoly)
}

impl NumberField {
    pub fn new(minpoly: IntPolynomial) -> Result<Self> {
        if minpoly.is_zero() || minpoly.degree() == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if !minpoly.is_monic() {
            return Err(Error::NotMonic);
        }
        if !is_irreducible(&minpoly) {
            return Err(Error::ReduciblePolynomial(minpoly.to_string()));
        }
        Ok(Self::new_unchecked(minpoly))
    }

    fn new_unchecked(minpoly: IntPolynomial) -> Self {
        let n = minpoly.degree();
        let roots = isolate_real_roots(&minpoly).expect("irreducible polynomials are squarefree");
        let mut reductions: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        // x^n = -(a_0 + ... + a_{n-1} x^{n-1})
        let mut cur: Vec<BigInt> = minpoly.coeffs()[..n].iter().map(|c| -c).collect();
        for _ in 0..n {
            reductions.push(cur.clone());
            // multiply by x
            let top = cur[n - 1].clone();
            let mut next = vec![BigInt::zero(); n];
            for i in (1..n).rev() {
                next[i] = cur[i - 1].clone();
            }
            for i in 0..n {
                next[i] += &top * &reductions[0][i];
            }
            cur = next;
        }
        NumberField(Arc::new(FieldInner {
            minpoly_rat: minpoly.to_rational(),
            minpoly,
            reductions,
            refined: Mutex::new(roots.clone()),
            roots,
            complex_roots: OnceLock::new(),
        }))
    }

    /// The field of rationals, presented as `Q[x]/(x)`.
    pub fn rationals() -> Self {
        Self::new_unchecked(IntPolynomial::from_i64(&[0, 1]))
    }

    pub fn degree(&self) -> usize {
        self.0.minpoly.degree()
    }

    pub fn minpoly(&self) -> &IntPolynomial {
        &self.0.minpoly
    }

    pub fn discriminant(&self) -> BigInt {
        self.0.minpoly.discriminant()
    }

    /// Initial isolating intervals of the real roots, ascending.
    pub fn real_roots(&self) -> &[RealRootInterval] {
        &self.0.roots
    }

    pub fn real_embedding_count(&self) -> usize {
        self.0.roots.len()
    }

    pub fn is_totally_real(&self) -> bool {
        self.0.roots.len() == self.degree()
    }

    pub fn embedding(&self, index: usize) -> Result<Embedding> {
        if index >= self.0.roots.len() {
            return Err(Error::NoSuchEmbedding {
                index,
                count: self.0.roots.len(),
            });
        }
        Ok(Embedding {
            field: self.clone(),
            index,
        })
    }

    pub fn embeddings(&self) -> Vec<Embedding> {
        (0..self.0.roots.len())
            .map(|index| Embedding {
                field: self.clone(),
                index,
            })
            .collect()
    }

    /// Embedding at the largest real root.
    pub fn default_embedding(&self) -> Result<Embedding> {
        match self.0.roots.len() {
            0 => Err(Error::NoSuchEmbedding { index: 0, count: 0 }),
            k => self.embedding(k - 1),
        }
    }

    /// Root interval of width below `width`, refined through the shared cache.
    pub(crate) fn root_interval(&self, index: usize, width: &Rat) -> RealRootInterval {
        let mut cache = self.0.refined.lock().unwrap_or_else(|e| e.into_inner());
        let cur = &cache[index];
        if &cur.width() < width {
            return cur.clone();
        }
        let r = cur.refine(width);
        cache[index] = r.clone();
        r
    }

    /// All complex roots in floating point (heuristic use only).
    pub fn complex_roots(&self) -> &[Complex64] {
        self.0
            .complex_roots
            .get_or_init(|| complex_roots(&self.0.minpoly))
    }

    pub fn element(&self, coords: Vec<Rat>) -> Result<FieldElement> {
        if coords.len() != self.degree() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} coordinates, got {}",
                self.degree(),
                coords.len()
            )));
        }
        Ok(FieldElement {
            field: self.clone(),
            coords,
        })
    }

    pub fn from_ints(&self, coords: &[BigInt]) -> Result<FieldElement> {
        self.element(coords.iter().map(int_rat).collect())
    }

    pub fn from_i64(&self, coords: &[i64]) -> FieldElement {
        let mut c: Vec<Rat> = coords.iter().map(|&x| rat(x)).collect();
        c.resize(self.degree(), Rat::zero());
        FieldElement {
            field: self.clone(),
            coords: c,
        }
    }

    pub fn from_rational(&self, r: Rat) -> FieldElement {
        let mut coords = vec![Rat::zero(); self.degree()];
        coords[0] = r;
        FieldElement {
            field: self.clone(),
            coords,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_rational(Rat::zero())
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(Rat::one())
    }

    /// The class of `x`; for degree one this is the rational root of the minpoly.
    pub fn generator(&self) -> FieldElement {
        if self.degree() == 1 {
            return self.from_rational(-int_rat(&self.0.minpoly.coeffs()[0]));
        }
        let mut coords = vec![Rat::zero(); self.degree()];
        coords[1] = Rat::one();
        FieldElement {
            field: self.clone(),
            coords,
        }
    }

    /// Reduces a polynomial in `x` into the field.
    pub fn from_poly(&self, p: &RatPolynomial) -> FieldElement {
        let r = p.rem(&self.0.minpoly_rat);
        let mut coords: Vec<Rat> = r.coeffs().to_vec();
        coords.resize(self.degree(), Rat::zero());
        FieldElement {
            field: self.clone(),
            coords,
        }
    }
}

fn complex_roots(p: &IntPolynomial) -> Vec<Complex64> {
    let n = p.degree();
    let c: Vec<f64> = p.coeffs().iter().map(|x| rat_to_f64(&int_rat(x))).collect();
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a);
    let deval = |z: Complex64| {
        c.iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (i, &a)| acc * z + a * i as f64)
    };
    let bound = 1.0 + c[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * (bound / 2.0)).collect();
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let d = deval(*zi);
            if d.norm() > 0.0 {
                *zi -= eval(*zi) / d;
            }
        }
    }
    z
}

/// A real embedding: evaluation at one isolated real root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    field: NumberField,
    index: usize,
}

impl Embedding {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn root(&self) -> RealRootInterval {
        self.field.0.roots[self.index].clone()
    }

    /// Interval of width below `eps` certified to contain the embedded value.
    pub fn eval(&self, a: &FieldElement, eps: &Rat) -> RatInterval {
        assert!(a.field == self.field, "element from another field");
        if a.is_rational() {
            return RatInterval::point(a.coords[0].clone());
        }
        let mut w = eps.clone();
        loop {
            let root = self.field.root_interval(self.index, &w);
            let iv = root.interval().eval_poly(&a.coords);
            if &iv.width() < eps {
                return iv;
            }
            w = w / rat(1 << 16);
        }
    }

    pub fn sign(&self, a: &FieldElement) -> Ordering {
        if a.is_zero() {
            return Ordering::Equal;
        }
        let mut eps = rat(1);
        loop {
            if let Some(s) = self.eval(a, &eps).sign() {
                return s;
            }
            eps = eps / rat(1 << 20);
        }
    }

    pub fn is_positive(&self, a: &FieldElement) -> bool {
        self.sign(a) == Ordering::Greater
    }

    pub fn cmp(&self, a: &FieldElement, b: &FieldElement) -> Ordering {
        self.sign(&(a - b))
    }

    /// The exact floor of the embedded value.
    pub fn floor(&self, a: &FieldElement) -> BigInt {
        if a.is_rational() {
            return a.coords[0].floor().to_integer();
        }
        let mut eps = rat(1);
        loop {
            let iv = self.eval(a, &eps);
            let lo = iv.lo.floor().to_integer();
            let hi = iv.hi.floor().to_integer();
            if lo == hi {
                return lo;
            }
            eps = eps / rat(1 << 20);
        }
    }

    pub fn approx(&self, a: &FieldElement) -> f64 {
        let eps = Rat::new(BigInt::one(), BigInt::one() << 64u32);
        let iv = self.eval(a, &eps);
        if iv.width().is_zero() {
            return rat_to_f64(&iv.lo);
        }
        // Relative precision for very small values.
        let mag = iv.lo.abs().max(iv.hi.abs());
        if !mag.is_zero() && mag < Rat::new(BigInt::one(), BigInt::from(1u64 << 20)) {
            let fine = &eps * &mag;
            return self.eval(a, &fine).to_f64();
        }
        iv.to_f64()
    }
}

/// Element of a number field in power-basis coordinates.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: NumberField,
    coords: Vec<Rat>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl FieldElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.is_rational() && self.coords[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.coords[0].is_integer()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        self.is_rational().then(|| &self.coords[0])
    }

    pub fn as_poly(&self) -> RatPolynomial {
        RatPolynomial::new(self.coords.clone())
    }

    fn check_field(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn scale(&self, c: &Rat) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    fn mul_impl(&self, other: &FieldElement) -> FieldElement {
        let n = self.field.degree();
        let mut prod = vec![Rat::zero(); 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut coords: Vec<Rat> = prod[..n].to_vec();
        for (k, c) in prod[n..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, r) in self.field.0.reductions[k].iter().enumerate() {
                if !r.is_zero() {
                    coords[i] += c * int_rat(r);
                }
            }
        }
        FieldElement {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_field(other)?;
        Ok(self.mul_impl(other))
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = self.as_poly().xgcd(&self.field.0.minpoly_rat);
        debug_assert_eq!(g, RatPolynomial::one());
        Ok(self.field.from_poly(&s))
    }

    pub fn try_div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_field(other)?;
        Ok(self.mul_impl(&other.inverse()?))
    }

    /// Integer power; negative exponents require a non-zero element.
    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&base);
            }
            base = base.mul_impl(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Matrix of multiplication by `self`: row `i` holds the coordinates of `self * x^i`.
    pub fn mult_matrix(&self) -> RatMatrix {
        let n = self.field.degree();
        let mut rows = Vec::with_capacity(n);
        let mut cur = self.clone();
        let x = self.field.generator();
        for i in 0..n {
            rows.push(cur.coords.clone());
            if i + 1 < n {
                cur = cur.mul_impl(&x);
            }
        }
        rows
    }

    pub fn norm(&self) -> Rat {
        rat_det(&self.mult_matrix())
    }

    pub fn trace(&self) -> Rat {
        let m = self.mult_matrix();
        (0..m.len()).map(|i| m[i][i].clone()).sum()
    }

    /// Field (characteristic) polynomial of the element.
    pub fn char_poly(&self) -> RatPolynomial {
        char_poly_rat(&self.mult_matrix())
    }

    /// Minimal polynomial over Q (monic).
    pub fn min_poly(&self) -> RatPolynomial {
        let cp = self.char_poly();
        let g = cp.gcd(&cp.derivative());
        cp.div_rem(&g).0.monic()
    }

    /// True when the element generates the field.
    pub fn is_primitive(&self) -> bool {
        self.min_poly().degree() == self.field.degree()
    }

    pub fn is_algebraic_integer(&self) -> bool {
        self.char_poly().coeffs().iter().all(|c| c.is_integer())
    }

    /// Evaluates a polynomial at this element.
    pub fn eval_poly(&self, p: &RatPolynomial) -> FieldElement {
        let mut acc = self.field.zero();
        for c in p.coeffs().iter().rev() {
            acc = acc.mul_impl(self);
            acc.coords[0] += c;
        }
        acc
    }

    pub fn coord_strings(&self) -> Vec<String> {
        self.coords.iter().map(format_rational).collect()
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = format_rational(&c.abs());
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !c.abs().is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "a")?;
                    } else {
                        write!(f, "a^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                assert!(self.field == rhs.field, "elements from different fields");
                $body(self, rhs)
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a: &FieldElement, b: &FieldElement| FieldElement {
    field: a.field.clone(),
    coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
});
binop!(Sub, sub, |a: &FieldElement, b: &FieldElement| FieldElement {
    field: a.field.clone(),
    coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect(),
});
binop!(Mul, mul, |a: &FieldElement, b: &FieldElement| a.mul_impl(b));

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|x| -x).collect(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
