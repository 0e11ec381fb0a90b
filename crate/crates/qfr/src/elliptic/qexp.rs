//! The modular j-function from its q-expansion.
//!
//! The integer coefficients are generated from E4^3 / Delta as formal power
//! series over Z, so no table of expansion coefficients is hardcoded.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::bigfloat::{exp_complex, pi, FixedComplex, FixedReal};
use crate::error::{Error, Result};
use crate::forms::{Discriminant, QuadraticForm};

/// Complex value with a stated decimal precision.
pub type ComplexApprox = FixedComplex;

fn series_mul(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n];
    for (i, ai) in a.iter().enumerate().take(n) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn series_inverse(a: &[BigInt], n: usize) -> Vec<BigInt> {
    assert!(a[0].is_one());
    let mut inv = vec![BigInt::zero(); n];
    inv[0] = BigInt::one();
    for k in 1..n {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            if i < a.len() {
                acc += &a[i] * &inv[k - i];
            }
        }
        inv[k] = -acc;
    }
    inv
}

/// Coefficients c_0..c_{terms-1} with j(q) = 1/q + sum c_k q^k, so
/// c_0 = 744, c_1 = 196884, ...
pub fn j_coefficients(terms: usize) -> Vec<BigInt> {
    let n = terms + 1;
    // E4 = 1 + 240 sum sigma_3(m) q^m
    let mut e4 = vec![BigInt::zero(); n];
    e4[0] = BigInt::one();
    for m in 1..n {
        let mut s3 = BigInt::zero();
        for d in 1..=m {
            if m % d == 0 {
                s3 += BigInt::from(d).pow(3u32);
            }
        }
        e4[m] = BigInt::from(240) * s3;
    }
    let e4_3 = series_mul(&series_mul(&e4, &e4, n), &e4, n);
    // Delta / q = prod (1 - q^m)^24
    let mut eta = vec![BigInt::zero(); n];
    eta[0] = BigInt::one();
    for m in 1..n {
        // multiply by (1 - q^m)
        for k in (m..n).rev() {
            let t = eta[k - m].clone();
            eta[k] -= t;
        }
    }
    let mut disc_q = vec![BigInt::zero(); n];
    disc_q[0] = BigInt::one();
    for _ in 0..24 {
        disc_q = series_mul(&disc_q, &eta, n);
    }
    // j*q = E4^3 * (Delta/q)^{-1}
    let jq = series_mul(&e4_3, &series_inverse(&disc_q, n), n);
    debug_assert!(jq[0].is_one());
    jq[1..].to_vec()
}

/// j(tau) for tau = (-b + sqrt(delta)) / (2a) from a reduced positive
/// definite form, to the requested number of decimal digits.
pub fn j_from_qexp(
    d: &Discriminant,
    form: &QuadraticForm,
    precision_digits: u32,
) -> Result<ComplexApprox> {
    if !d.delta().is_negative() {
        return Err(Error::InvalidArgument("j evaluation needs a negative discriminant".into()));
    }
    if precision_digits < 16 {
        return Err(Error::InvalidArgument(format!(
            "precision of {precision_digits} digits is below the minimum of 16"
        )));
    }
    if form.delta() != *d.delta() {
        return Err(Error::Mismatch("form discriminant differs".into()));
    }
    if !form.is_reduced() {
        return Err(Error::InvalidArgument(format!("{form} is not reduced")));
    }
    let w = precision_digits + 12;
    Ok(j_at_form(d, form, w)?.0.truncate_complex(precision_digits))
}

trait TruncateComplex {
    fn truncate_complex(&self, digits: u32) -> FixedComplex;
}

impl TruncateComplex for FixedComplex {
    fn truncate_complex(&self, digits: u32) -> FixedComplex {
        FixedComplex { re: self.re.truncate_to(digits), im: self.im.truncate_to(digits) }
    }
}

/// j at the root of the form, at full working scale.  Also returns the term
/// count used, which the class polynomial driver feeds back into precision
/// escalation.
pub(crate) fn j_at_form(
    d: &Discriminant,
    form: &QuadraticForm,
    working_digits: u32,
) -> Result<(FixedComplex, usize)> {
    let digits = working_digits;
    let two_a = BigInt::from(2) * form.a();
    // tau = (-b + i sqrt(|delta|)) / (2a)
    let re_tau = FixedReal::from_ratio(&-form.b(), &two_a, digits);
    let im_tau = FixedReal::from_int(&d.delta().abs(), digits)
        .sqrt()
        .div(&FixedReal::from_int(&two_a, digits));
    // q = exp(2 pi i tau)
    let two_pi = {
        let p = pi(digits);
        p.add(&p)
    };
    // 1/q = exp(-2 pi i tau) is the large quantity; computing it directly
    // and inverting keeps full precision (inverting the tiny q would lose
    // half the working digits to the squared modulus).
    let z_inv = FixedComplex {
        re: two_pi.mul(&im_tau),
        im: two_pi.mul(&re_tau).neg(),
    };
    let q_inv = exp_complex(&z_inv);
    let q = q_inv.inv();

    // Series: j = 1/q + sum c_k q^k.  The term count comes from the decay
    // estimate ln(c_k q^k) <= 4 pi sqrt(k) + k ln|q|, with ln|q| bounded
    // through bit lengths; the sum is then evaluated in Horner form from
    // the top so that no huge coefficient ever multiplies the rounding
    // error of a tiny power.
    let mag = q.re.mantissa.abs().max(q.im.mantissa.abs());
    if mag.is_zero() {
        return Err(Error::PrecisionExceeded);
    }
    // ln|q| <= (bits(sqrt(2) * mag) - bits(scale) + 1) ln 2
    let ln_q_hi = ((mag.bits() as f64) - (digits as f64) * std::f64::consts::LOG2_10 + 2.0)
        * std::f64::consts::LN_2;
    if ln_q_hi >= -0.5 {
        return Err(Error::PrecisionExceeded);
    }
    let target = -((digits as f64) + 2.0) * std::f64::consts::LN_10;
    let four_pi = 4.0 * std::f64::consts::PI;
    let mut kmax = 5usize;
    while four_pi * (kmax as f64).sqrt() + ln_q_hi * (kmax as f64) > target {
        kmax += 1;
        if kmax > 100_000 {
            return Err(Error::PrecisionExceeded);
        }
    }
    let coeffs = j_coefficients(kmax + 1);
    let mut sum = FixedComplex::from_real(FixedReal::from_int(&coeffs[kmax], digits));
    for k in (0..kmax).rev() {
        sum = sum.mul(&q);
        sum.re = sum.re.add(&FixedReal::from_int(&coeffs[k], digits));
    }
    Ok((q_inv.add(&sum), kmax))
}
