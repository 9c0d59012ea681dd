//! Irreducibility over Q: rational roots, factor-degree patterns modulo
//! small primes, and Kronecker's method when the patterns are inconclusive.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::interval::isolate_real_roots;
use super::poly::{int_rat, IntPolynomial, Rat, RatPolynomial};

/// Polynomials over F_p, lowest degree first, no trailing zeros.
type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    r
}

fn fp_rem(a: &Fp, m: &Fp, p: u64) -> Fp {
    let mut r = a.clone();
    let dm = m.len() - 1;
    let inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = mulmod(r[top], inv, p);
        if c != 0 {
            for (j, &mc) in m.iter().enumerate() {
                let idx = top - dm + j;
                r[idx] = (r[idx] + p - mulmod(c, mc, p)) % p;
            }
        }
        r.pop();
        r = trim(r);
    }
    trim(r)
}

fn fp_div(a: &Fp, m: &Fp, p: u64) -> Fp {
    let mut r = a.clone();
    let dm = m.len() - 1;
    if r.len() <= dm {
        return Vec::new();
    }
    let inv = inv_mod(m[dm], p);
    let mut q = vec![0u64; r.len() - dm];
    for top in (dm..r.len()).rev() {
        let c = mulmod(r[top], inv, p);
        q[top - dm] = c;
        if c != 0 {
            for (j, &mc) in m.iter().enumerate() {
                let idx = top - dm + j;
                r[idx] = (r[idx] + p - mulmod(c, mc, p)) % p;
            }
        }
    }
    trim(q)
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&l) = a.last() {
        let inv = inv_mod(l, p);
        a = a.iter().map(|&c| mulmod(c, inv, p)).collect();
    }
    a
}

fn fp_powmod(base: &Fp, mut e: u64, m: &Fp, p: u64) -> Fp {
    let mut acc: Fp = vec![1];
    let mut b = fp_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_rem(&fp_mul(&acc, &b, p), m, p);
        }
        b = fp_rem(&fp_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

fn fp_derivative(a: &Fp, p: u64) -> Fp {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, i as u64 % p, p))
            .collect(),
    )
}

fn reduce(f: &IntPolynomial, p: u64) -> Fp {
    let pb = BigInt::from(p);
    trim(
        f.coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}

/// Degrees of the irreducible factors of a squarefree polynomial mod p.
fn factor_degrees(f: &Fp, p: u64) -> Vec<usize> {
    let x: Fp = vec![0, 1];
    let mut f = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while f.len() - 1 >= 2 * d {
        h = fp_powmod(&h, p, &f, p);
        let mut hx = h.clone();
        hx.resize(hx.len().max(2), 0);
        hx[1] = (hx[1] + p - 1) % p;
        let g = fp_gcd(&f, &trim(hx), p);
        let gd = g.len() - 1;
        if gd > 0 {
            out.extend(std::iter::repeat(d).take(gd / d));
            f = fp_div(&f, &g, p);
            h = fp_rem(&h, &f, p);
        }
        d += 1;
    }
    if f.len() > 1 {
        out.push(f.len() - 1);
    }
    out
}

fn subset_sums(degrees: &[usize]) -> BTreeSet<usize> {
    let mut sums = BTreeSet::from([0usize]);
    for &d in degrees {
        let next: Vec<usize> = sums.iter().map(|s| s + d).collect();
        sums.extend(next);
    }
    sums
}

fn small_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut n = 3u64;
    while out.len() < count {
        if (2..).take_while(|d| d * d <= n).all(|d| n % d != 0) {
            out.push(n);
        }
        n += 2;
    }
    out
}

fn has_rational_root(f: &IntPolynomial) -> bool {
    let Ok(roots) = isolate_real_roots(f) else {
        return true;
    };
    let lead = f.leading().abs();
    let width = Rat::new(BigInt::one(), &lead * BigInt::from(2));
    roots.iter().any(|r| {
        let r = r.refine(&width);
        let lo = (&r.lo * int_rat(&lead)).floor().to_integer();
        let hi = (&r.hi * int_rat(&lead)).ceil().to_integer();
        num_iter(lo, hi).any(|k| f.eval(&Rat::new(k, lead.clone())).is_zero())
    })
}

fn num_iter(lo: BigInt, hi: BigInt) -> impl Iterator<Item = BigInt> {
    let mut cur = lo;
    std::iter::from_fn(move || {
        if cur > hi {
            None
        } else {
            let out = cur.clone();
            cur += 1;
            Some(out)
        }
    })
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

fn lagrange(points: &[(BigInt, BigInt)]) -> RatPolynomial {
    let mut acc = RatPolynomial::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut term = RatPolynomial::constant(int_rat(yi));
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                let denom = int_rat(&(xi - xj)).recip();
                term = &term * &RatPolynomial::linear(int_rat(xj)).scale(&denom);
            }
        }
        acc = &acc + &term;
    }
    acc
}

/// Kronecker search for an integer factor of degree `d`. `None` when the
/// evaluation values are too large to enumerate divisors.
fn kronecker_factor(f: &IntPolynomial, d: usize) -> Option<bool> {
    let fr = f.to_rational();
    let mut points: Vec<(BigInt, Vec<BigInt>)> = Vec::new();
    let mut k = 0i64;
    while points.len() < d + 1 {
        let x = BigInt::from(k);
        let v = f.eval_int(&x);
        if v.is_zero() {
            return Some(true);
        }
        points.push((x, divisors(&v)?));
        k = if k > 0 { -k } else { -k + 1 };
    }
    let mut choice = vec![0usize; points.len()];
    let signed_len = |i: usize| points[i].1.len() * if i == 0 { 1 } else { 2 };
    loop {
        let sample: Vec<(BigInt, BigInt)> = points
            .iter()
            .enumerate()
            .map(|(i, (x, divs))| {
                let c = choice[i];
                let v = divs[c % divs.len()].clone();
                (x.clone(), if c >= divs.len() { -v } else { v })
            })
            .collect();
        let g = lagrange(&sample);
        if g.degree() == d && g.coeffs().iter().all(|c| c.is_integer()) {
            let (_, r) = fr.div_rem(&g);
            if r.is_zero() {
                return Some(true);
            }
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return Some(false);
            }
            choice[i] += 1;
            if choice[i] < signed_len(i) {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Decides irreducibility over Q of a non-constant integer polynomial.
pub fn is_irreducible(f: &IntPolynomial) -> bool {
    let n = f.degree();
    if f.is_zero() || n == 0 {
        return false;
    }
    let content = f.coeffs().iter().fold(BigInt::zero(), |a, c| a.gcd(c));
    if n == 1 {
        return true;
    }
    if !content.is_one() {
        // A non-unit content is a constant factor, which is a unit over Q.
        let g = IntPolynomial::new(f.coeffs().iter().map(|c| c / &content).collect());
        return is_irreducible(&g);
    }
    if !f.to_rational().is_squarefree() || has_rational_root(f) {
        return false;
    }
    if n <= 3 {
        return true;
    }
    let disc = f.discriminant();
    let lead = f.leading();
    let mut possible: BTreeSet<usize> = (0..=n).collect();
    for p in small_primes(40) {
        let pb = BigInt::from(p);
        if (&disc % &pb).is_zero() || (&lead % &pb).is_zero() {
            continue;
        }
        let fp = reduce(f, p);
        if fp_gcd(&fp, &fp_derivative(&fp, p), p).len() > 1 {
            continue;
        }
        let sums = subset_sums(&factor_degrees(&fp, p));
        possible = possible.intersection(&sums).copied().collect();
        if possible.len() == 2 {
            return true;
        }
    }
    let mut undecided = false;
    for d in possible.into_iter().filter(|&d| d >= 2 && 2 * d <= n) {
        match kronecker_factor(f, d) {
            Some(true) => return false,
            Some(false) => {}
            None => undecided = true,
        }
    }
    // Values too large to enumerate: the mod-p patterns did not exclude a
    // factor, so treat as reducible rather than accept a wrong field.
    !undecided
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn small_cases() {
        assert!(is_irreducible(&p(&[-5, 0, 1])));
        assert!(!is_irreducible(&p(&[-4, 0, 1])));
        assert!(!is_irreducible(&p(&[-1, 0, 1])));
        assert!(is_irreducible(&p(&[-1, 1])));
        assert!(is_irreducible(&p(&[-1, -1, 0, 1])));
        assert!(is_irreducible(&p(&[-1, 3, 4, 1])));
        assert!(!is_irreducible(&p(&[0, 0, 1])));
    }

    #[test]
    fn needs_kronecker() {
        // x^4 + 1 splits modulo every prime but is irreducible over Q.
        assert!(is_irreducible(&p(&[1, 0, 0, 0, 1])));
        // (x^2 + 1)(x^2 + 3) has no rational roots.
        assert!(!is_irreducible(&p(&[3, 0, 4, 0, 1])));
        // (x^2 - 2)(x^2 - 3)
        assert!(!is_irreducible(&p(&[6, 0, -5, 0, 1])));
        // (x^3 - 2)(x^3 - 3)
        assert!(!is_irreducible(&p(&[6, 0, 0, -5, 0, 0, 1])));
    }

    #[test]
    fn factor_degree_pattern() {
        // x^2 + 1 splits mod 5 and stays irreducible mod 3.
        assert_eq!(factor_degrees(&vec![1, 0, 1], 5), vec![1, 1]);
        assert_eq!(factor_degrees(&vec![1, 0, 1], 3), vec![2]);
    }
}
