//! Rational interval arithmetic and isolation of real roots.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::{format_rational, rat, sign_changes, sturm_sequence, IntPolynomial, Rat, RatPolynomial};
use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn point(x: Rat) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / rat(2)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &RatInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// `Some(sign)` when the interval excludes zero or is the point zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn add(&self, o: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn mul(&self, o: &RatInterval) -> RatInterval {
        let cands = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = cands.iter().min().cloned().unwrap();
        let hi = cands.iter().max().cloned().unwrap();
        RatInterval::new(lo, hi)
    }

    pub fn scale(&self, c: &Rat) -> RatInterval {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if a <= b {
            RatInterval::new(a, b)
        } else {
            RatInterval::new(b, a)
        }
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.midpoint())
    }

    /// Horner evaluation of a rational polynomial over the interval.
    pub fn eval_poly(&self, coeffs: &[Rat]) -> RatInterval {
        let mut acc = RatInterval::point(Rat::zero());
        for c in coeffs.iter().rev() {
            acc = acc.mul(self).add(&RatInterval::point(c.clone()));
        }
        acc
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", format_rational(&self.lo), format_rational(&self.hi))
    }
}

pub(crate) fn rat_to_f64(x: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        // Very large numerators: scale down by a power of two first.
        let shift = x.numer().bits().max(x.denom().bits()).saturating_sub(1000);
        let n = (x.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (x.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Open interval `(lo, hi)` containing exactly one real root of `poly`,
/// with `poly(lo)` and `poly(hi)` non-zero and of opposite sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealRootInterval {
    poly: IntPolynomial,
    pub lo: Rat,
    pub hi: Rat,
}

impl RealRootInterval {
    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn interval(&self) -> RatInterval {
        RatInterval::new(self.lo.clone(), self.hi.clone())
    }

    fn sign_at(&self, x: &Rat) -> i8 {
        let v = self.poly.eval(x);
        if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        }
    }

    /// Returns a narrower interval for the same root with width below `width`.
    pub fn refine(&self, width: &Rat) -> RealRootInterval {
        let mut lo = self.lo.clone();
        let mut hi = self.hi.clone();
        let s_lo = self.sign_at(&lo);
        while &(&hi - &lo) >= width {
            let mid = (&lo + &hi) / rat(2);
            let s = self.sign_at(&mid);
            if s == 0 {
                // Rational root: straddle it symmetrically.
                let q = (&hi - &lo) / rat(8);
                lo = &mid - &q;
                hi = &mid + &q;
            } else if s == s_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        RealRootInterval {
            poly: self.poly.clone(),
            lo,
            hi,
        }
    }

    pub fn approx(&self) -> f64 {
        self.refine(&Rat::new(BigInt::one(), BigInt::one() << 60u32)).interval().to_f64()
    }
}

impl fmt::Display for RealRootInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.lo), format_rational(&self.hi))
    }
}

fn cauchy_bound(p: &IntPolynomial) -> Rat {
    let lead = p.leading().abs();
    let max = p.coeffs()[..p.degree()]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    Rat::one() + Rat::new(max, lead)
}

/// Isolates every real root of a squarefree polynomial; intervals are sorted
/// ascending and pairwise disjoint.
pub fn isolate_real_roots(p: &IntPolynomial) -> Result<Vec<RealRootInterval>> {
    if p.is_zero() {
        return Err(Error::Degenerate("zero polynomial".into()));
    }
    if p.degree() == 0 {
        return Ok(Vec::new());
    }
    let pr: RatPolynomial = p.to_rational();
    if !pr.is_squarefree() {
        return Err(Error::NotSquarefree(p.to_string()));
    }
    let seq = sturm_sequence(&pr);
    let nonroot = |x: Rat, step: &Rat| -> Rat {
        let mut x = x;
        let mut k = 1i64;
        while pr.eval(&x).is_zero() {
            x = &x + step / rat(7 * k);
            k += 1;
        }
        x
    };
    let b = cauchy_bound(p);
    let lo = -&b;
    let hi = b;
    let mut out = Vec::new();
    let mut stack = vec![(lo, hi)];
    while let Some((a, c)) = stack.pop() {
        let count = sign_changes(&seq, &a) - sign_changes(&seq, &c);
        match count {
            0 => {}
            1 => out.push(RealRootInterval {
                poly: p.clone(),
                lo: a,
                hi: c,
            }),
            _ => {
                let w = (&c - &a) / rat(2);
                let mid = nonroot(&a + &w, &(&w / rat(2)));
                stack.push((mid.clone(), c));
                stack.push((a, mid));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}
