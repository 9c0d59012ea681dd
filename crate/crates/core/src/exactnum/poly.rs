//! Dense univariate polynomials over Z and Q, lowest degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub(crate) fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub(crate) fn int_rat(n: &BigInt) -> Rat {
    Rat::from_integer(n.clone())
}

/// Parses `"p/q"` or an integer string.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("invalid rational {s:?}")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(parse_int(p)?, q))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

/// Formats a rational as `"p/q"`, or `"p"` when integral.
pub fn format_rational(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + int_rat(c);
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> IntPolynomial {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn to_rational(&self) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.iter().map(int_rat).collect())
    }

    /// Discriminant, computed from the resultant with the derivative.
    pub fn discriminant(&self) -> BigInt {
        let n = self.degree();
        if n == 0 {
            return BigInt::zero();
        }
        let res = super::matrix::resultant(self, &self.derivative());
        let sign = if (n * (n - 1) / 2) % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        sign * res / self.leading()
    }

    /// Parses expressions such as `x^2-5`, `x^3 - x - 1` or `2*x + 3`.
    pub fn parse(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bad = || Error::Parse(format!("cannot parse polynomial {text:?}"));
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (negative, body) = match rest.as_bytes()[0] {
                b'+' => (false, &rest[1..]),
                b'-' => (true, &rest[1..]),
                _ => (false, rest),
            };
            let end = body[1.min(body.len())..]
                .find(['+', '-'])
                .map(|i| i + 1)
                .unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            if term.is_empty() {
                return Err(bad());
            }
            let (coef, power) = match term.find('x') {
                None => (term.parse::<BigInt>().map_err(|_| bad())?, 0usize),
                Some(pos) => {
                    let c = term[..pos].trim_end_matches('*');
                    let c = if c.is_empty() {
                        BigInt::one()
                    } else {
                        c.parse::<BigInt>().map_err(|_| bad())?
                    };
                    let tail = &term[pos + 1..];
                    let p = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse::<usize>()
                            .map_err(|_| bad())?
                    };
                    (c, p)
                }
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigInt::zero());
            }
            coeffs[power] += if negative { -coef } else { coef };
        }
        Ok(IntPolynomial::new(coeffs))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coef = !mag.is_one() || i == 0;
            if show_coef {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPolynomial {
    coeffs: Vec<Rat>,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RatPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPolynomial::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear(r: Rat) -> Self {
        Self::new(vec![-r, Rat::one()])
    }

    pub fn monomial(c: Rat, power: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); power + 1];
        coeffs[power] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        let lc_inv = d.leading().recip();
        if rem.len() < d.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Converts back to integer coefficients when all are integral.
    pub fn to_integer(&self) -> Option<IntPolynomial> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntPolynomial::new)
    }

    /// Primitive integer polynomial proportional to `self` with positive leading coefficient.
    pub fn primitive_part(&self) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::new(vec![]);
        }
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * int_rat(&l)).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if self.leading().is_negative() { -1 } else { 1 };
        IntPolynomial::new(ints.into_iter().map(|c| c / &g * sign).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl Add for &RatPolynomial {
    type Output = RatPolynomial;
    fn add(self, rhs: &RatPolynomial) -> RatPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPolynomial {
    type Output = RatPolynomial;
    fn sub(self, rhs: &RatPolynomial) -> RatPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &RatPolynomial {
    type Output = RatPolynomial;
    fn neg(self) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &RatPolynomial {
    type Output = RatPolynomial;
    fn mul(self, rhs: &RatPolynomial) -> RatPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RatPolynomial::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPolynomial::new(out)
    }
}

impl fmt::Display for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format_rational(c),
                1 => format!("({})*x", format_rational(c)),
                _ => format!("({})*x^{i}", format_rational(c)),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Sturm sequence of a squarefree polynomial.
pub(crate) fn sturm_sequence(p: &RatPolynomial) -> Vec<RatPolynomial> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

pub(crate) fn sign_changes(seq: &[RatPolynomial], x: &Rat) -> usize {
    let mut changes = 0;
    let mut last = 0i8;
    for p in seq {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let p = IntPolynomial::parse("x^2-5").unwrap();
        assert_eq!(p, IntPolynomial::from_i64(&[-5, 0, 1]));
        assert_eq!(p.to_string(), "x^2 - 5");
        let q = IntPolynomial::parse("x^3 - x - 1").unwrap();
        assert_eq!(q, IntPolynomial::from_i64(&[-1, -1, 0, 1]));
        let r = IntPolynomial::parse("-2*x^2+3x+7").unwrap();
        assert_eq!(r, IntPolynomial::from_i64(&[7, 3, -2]));
        assert_eq!(IntPolynomial::parse("x").unwrap(), IntPolynomial::from_i64(&[0, 1]));
        assert!(IntPolynomial::parse("x^").is_err());
        assert!(IntPolynomial::parse("").is_err());
    }

    #[test]
    fn division_and_gcd() {
        let a = IntPolynomial::from_i64(&[-4, 0, 1]).to_rational();
        let b = IntPolynomial::from_i64(&[-2, 1]).to_rational();
        let (q, r) = a.div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(q, IntPolynomial::from_i64(&[2, 1]).to_rational());
        let g = a.gcd(&IntPolynomial::from_i64(&[2, -3, 1]).to_rational());
        assert_eq!(g, b);
    }

    #[test]
    fn xgcd_identity() {
        let a = IntPolynomial::from_i64(&[1, 1]).to_rational();
        let m = IntPolynomial::from_i64(&[-5, 0, 1]).to_rational();
        let (g, s, t) = a.xgcd(&m);
        assert_eq!(g, RatPolynomial::one());
        assert_eq!(&(&s * &a) + &(&t * &m), RatPolynomial::one());
    }

    #[test]
    fn discriminants() {
        assert_eq!(IntPolynomial::from_i64(&[-1, 1, 1]).discriminant(), BigInt::from(5));
        assert_eq!(IntPolynomial::from_i64(&[-5, 0, 1]).discriminant(), BigInt::from(20));
        assert_eq!(IntPolynomial::from_i64(&[1, -2, -1, 1]).discriminant(), BigInt::from(49));
    }

    #[test]
    fn rationals_round_trip() {
        let r = parse_rational("-6/4").unwrap();
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(format_rational(&parse_rational("7").unwrap()), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }
}
