//! Fixed-precision decimal arithmetic on big-integer mantissas.
//!
//! A value is mantissa / 10^digits.  Every operand in an expression carries
//! the same scale; the transcendental helpers (pi, exp, cos/sin) work by
//! argument halving plus Taylor series, all in integer arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::isqrt;

fn ten_pow(digits: u32) -> BigInt {
    BigInt::from(10u32).pow(digits)
}

/// Nearest-integer division.
fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_rem(d);
    if BigInt::from(2) * r.abs() >= d.abs() {
        if (n.is_negative()) == (d.is_negative()) {
            q + 1u32
        } else {
            q - 1u32
        }
    } else {
        q
    }
}

/// Fixed-point decimal real number: mantissa / 10^digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedReal {
    pub mantissa: BigInt,
    pub digits: u32,
}

impl FixedReal {
    pub fn zero(digits: u32) -> Self {
        FixedReal { mantissa: BigInt::zero(), digits }
    }

    pub fn from_int(n: &BigInt, digits: u32) -> Self {
        FixedReal { mantissa: n * ten_pow(digits), digits }
    }

    pub fn from_ratio(num: &BigInt, den: &BigInt, digits: u32) -> Self {
        FixedReal { mantissa: div_round(&(num * ten_pow(digits)), den), digits }
    }

    fn check(&self, other: &FixedReal) {
        assert_eq!(self.digits, other.digits, "mixed fixed-point scales");
    }

    pub fn add(&self, other: &FixedReal) -> FixedReal {
        self.check(other);
        FixedReal { mantissa: &self.mantissa + &other.mantissa, digits: self.digits }
    }

    pub fn sub(&self, other: &FixedReal) -> FixedReal {
        self.check(other);
        FixedReal { mantissa: &self.mantissa - &other.mantissa, digits: self.digits }
    }

    pub fn neg(&self) -> FixedReal {
        FixedReal { mantissa: -&self.mantissa, digits: self.digits }
    }

    pub fn mul(&self, other: &FixedReal) -> FixedReal {
        self.check(other);
        FixedReal {
            mantissa: div_round(&(&self.mantissa * &other.mantissa), &ten_pow(self.digits)),
            digits: self.digits,
        }
    }

    pub fn div(&self, other: &FixedReal) -> FixedReal {
        self.check(other);
        FixedReal {
            mantissa: div_round(&(&self.mantissa * ten_pow(self.digits)), &other.mantissa),
            digits: self.digits,
        }
    }

    /// Square root of a non-negative value.
    pub fn sqrt(&self) -> FixedReal {
        assert!(!self.mantissa.is_negative());
        FixedReal { mantissa: isqrt(&(&self.mantissa * ten_pow(self.digits))), digits: self.digits }
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn abs(&self) -> FixedReal {
        FixedReal { mantissa: self.mantissa.abs(), digits: self.digits }
    }

    /// Nearest integer and whether the fractional part is below a quarter.
    pub fn round_with_check(&self) -> (BigInt, bool) {
        let scale = ten_pow(self.digits);
        let r = div_round(&self.mantissa, &scale);
        let residual = (&self.mantissa - &r * &scale).abs();
        (r, BigInt::from(4) * residual < scale)
    }

    /// Drop precision to fewer digits.
    pub fn truncate_to(&self, digits: u32) -> FixedReal {
        assert!(digits <= self.digits);
        FixedReal {
            mantissa: div_round(&self.mantissa, &ten_pow(self.digits - digits)),
            digits,
        }
    }
}

impl fmt::Display for FixedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scale = ten_pow(self.digits);
        let sign = if self.mantissa.is_negative() { "-" } else { "" };
        let abs = self.mantissa.abs();
        let (int, frac) = abs.div_rem(&scale);
        write!(f, "{sign}{int}.{:0width$}", frac, width = self.digits as usize)
    }
}

/// Complex value on a shared fixed-point scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedComplex {
    pub re: FixedReal,
    pub im: FixedReal,
}

impl FixedComplex {
    pub fn zero(digits: u32) -> Self {
        FixedComplex { re: FixedReal::zero(digits), im: FixedReal::zero(digits) }
    }

    pub fn from_real(re: FixedReal) -> Self {
        let digits = re.digits;
        FixedComplex { re, im: FixedReal::zero(digits) }
    }

    pub fn add(&self, other: &FixedComplex) -> FixedComplex {
        FixedComplex { re: self.re.add(&other.re), im: self.im.add(&other.im) }
    }

    pub fn sub(&self, other: &FixedComplex) -> FixedComplex {
        FixedComplex { re: self.re.sub(&other.re), im: self.im.sub(&other.im) }
    }

    pub fn mul(&self, other: &FixedComplex) -> FixedComplex {
        FixedComplex {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    pub fn mul_real(&self, k: &FixedReal) -> FixedComplex {
        FixedComplex { re: self.re.mul(k), im: self.im.mul(k) }
    }

    pub fn inv(&self) -> FixedComplex {
        let norm = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        FixedComplex { re: self.re.div(&norm), im: self.im.neg().div(&norm) }
    }

    pub fn div(&self, other: &FixedComplex) -> FixedComplex {
        self.mul(&other.inv())
    }

    /// Max of |re|, |im| in mantissa units.
    fn magnitude_mantissa(&self) -> BigInt {
        self.re.mantissa.abs().max(self.im.mantissa.abs())
    }
}

/// pi at the given scale, by Machin's formula.
pub fn pi(digits: u32) -> FixedReal {
    let guard = digits + 10;
    let scale = ten_pow(guard);
    let atan_inv = |k: u32| -> BigInt {
        let kk = BigInt::from(k) * BigInt::from(k);
        let mut term = &scale / BigInt::from(k);
        let mut total = BigInt::zero();
        let mut i = 0u32;
        while !term.is_zero() {
            let chunk = &term / BigInt::from(2 * i + 1);
            if i % 2 == 0 {
                total += chunk;
            } else {
                total -= chunk;
            }
            term = term / &kk;
            i += 1;
        }
        total
    };
    let pi_guard = BigInt::from(16) * atan_inv(5) - BigInt::from(4) * atan_inv(239);
    FixedReal { mantissa: div_round(&pi_guard, &ten_pow(10)), digits }
}

/// exp(z) by halving until the argument is small, then Taylor series and
/// repeated squaring.
pub fn exp_complex(z: &FixedComplex) -> FixedComplex {
    let digits = z.re.digits;
    let scale = ten_pow(digits);
    // Halve until |z| < 1/16.
    let mut halvings = 0u32;
    let mut cur = z.clone();
    let threshold = &scale / 16u32;
    while cur.magnitude_mantissa() > threshold {
        cur = FixedComplex {
            re: FixedReal { mantissa: &cur.re.mantissa / 2u32, digits },
            im: FixedReal { mantissa: &cur.im.mantissa / 2u32, digits },
        };
        halvings += 1;
        assert!(halvings < 128, "exp argument too large for the working scale");
    }
    // Taylor sum.
    let one = FixedComplex::from_real(FixedReal::from_int(&BigInt::one(), digits));
    let mut sum = one.clone();
    let mut term = one;
    let mut n = 1u32;
    loop {
        term = term.mul(&cur);
        term = FixedComplex {
            re: FixedReal { mantissa: div_round(&term.re.mantissa, &BigInt::from(n)), digits },
            im: FixedReal { mantissa: div_round(&term.im.mantissa, &BigInt::from(n)), digits },
        };
        if term.magnitude_mantissa().is_zero() {
            break;
        }
        sum = sum.add(&term);
        n += 1;
    }
    for _ in 0..halvings {
        sum = sum.mul(&sum);
    }
    sum
}
