//! Decimal fixed-point reals with 60 fractional digits, used as an
//! independent check on exact expansions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub const DIGITS: u32 = 60;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fixed(pub BigInt);

fn scale() -> BigInt {
    BigInt::from(10).pow(DIGITS)
}

impl Fixed {
    pub fn int(n: i64) -> Self {
        Fixed(BigInt::from(n) * scale())
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Fixed((BigInt::from(p) * scale()).div_floor(&BigInt::from(q)))
    }

    pub fn add(&self, o: &Fixed) -> Fixed {
        Fixed(&self.0 + &o.0)
    }

    pub fn sub(&self, o: &Fixed) -> Fixed {
        Fixed(&self.0 - &o.0)
    }

    pub fn mul(&self, o: &Fixed) -> Fixed {
        Fixed((&self.0 * &o.0).div_floor(&scale()))
    }

    pub fn div(&self, o: &Fixed) -> Fixed {
        Fixed((&self.0 * scale()).div_floor(&o.0))
    }

    pub fn floor(&self) -> BigInt {
        self.0.div_floor(&scale())
    }

    pub fn sqrt(n: i64) -> Fixed {
        Fixed((BigInt::from(n) * scale() * scale()).sqrt())
    }

    /// Within `10^-digits` of the other value.
    pub fn close(&self, o: &Fixed, digits: u32) -> bool {
        (&self.0 - &o.0).abs() <= BigInt::from(10).pow(DIGITS - digits)
    }

    pub fn is_tiny(&self, digits: u32) -> bool {
        self.0.abs() <= BigInt::from(10).pow(DIGITS - digits)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_string().parse::<f64>().unwrap() / 10f64.powi(DIGITS as i32)
    }
}

/// Root of the integer polynomial (low-to-high coefficients) in `[lo, hi]`
/// by bisection, assuming a sign change.
pub fn root(coeffs: &[i64], lo: Fixed, hi: Fixed) -> Fixed {
    let eval = |x: &Fixed| {
        coeffs
            .iter()
            .rev()
            .fold(Fixed(BigInt::zero()), |acc, &c| acc.mul(x).add(&Fixed::int(c)))
    };
    let (mut lo, mut hi) = (lo, hi);
    let lo_neg = eval(&lo).0.is_negative();
    while &hi.0 - &lo.0 > BigInt::one() {
        let mid = Fixed((&lo.0 + &hi.0) / 2);
        if eval(&mid).0.is_negative() == lo_neg {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Regular continued fraction digits, stopping at `max` terms or when the
/// fractional part vanishes to within `10^-40`. Values within `10^-40`
/// below an integer are rounded up, so truncated rationals end correctly.
pub fn continued_fraction(x: &Fixed, max: usize) -> Vec<BigInt> {
    let mut x = x.clone();
    let mut out = Vec::new();
    for _ in 0..max {
        let mut a = x.floor();
        if Fixed((&a + 1) * scale()).sub(&x).is_tiny(40) {
            a += 1;
        }
        out.push(a.clone());
        let frac = x.sub(&Fixed(a * scale()));
        if frac.is_tiny(40) {
            break;
        }
        x = Fixed::int(1).div(&frac);
    }
    out
}
