//! Dense polynomial arithmetic over F_p (p an odd prime, arbitrary size).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{mod_inv, IntPolynomial};

/// Polynomial over F_p, coefficients ascending in [0, p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyModP {
    pub coeffs: Vec<BigInt>,
    pub p: BigInt,
}

impl PolyModP {
    pub fn new(coeffs: Vec<BigInt>, p: &BigInt) -> Self {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().map(|c| c.mod_floor(p)).collect();
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        PolyModP { coeffs, p: p.clone() }
    }

    pub fn from_int_poly(f: &IntPolynomial, p: &BigInt) -> Self {
        Self::new(f.coeffs().to_vec(), p)
    }

    pub fn zero(p: &BigInt) -> Self {
        PolyModP { coeffs: vec![], p: p.clone() }
    }

    pub fn x(p: &BigInt) -> Self {
        Self::new(vec![BigInt::zero(), BigInt::one()], p)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = (acc * x + c).mod_floor(&self.p);
        }
        acc
    }

    pub fn add(&self, other: &PolyModP) -> PolyModP {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        PolyModP::new(coeffs, &self.p)
    }

    pub fn sub(&self, other: &PolyModP) -> PolyModP {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        PolyModP::new(coeffs, &self.p)
    }

    pub fn mul(&self, other: &PolyModP) -> PolyModP {
        if self.is_zero() || other.is_zero() {
            return PolyModP::zero(&self.p);
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        PolyModP::new(coeffs, &self.p)
    }

    /// Remainder of self modulo div (div nonzero).
    pub fn rem(&self, div: &PolyModP) -> PolyModP {
        let dd = div.degree().expect("division by zero polynomial");
        let lead_inv = mod_inv(div.coeffs.last().unwrap(), &self.p)
            .expect("leading coefficient invertible mod prime");
        let mut rem = self.coeffs.clone();
        let mut dr = rem.len();
        while dr > dd {
            let coef = (&rem[dr - 1] * &lead_inv).mod_floor(&self.p);
            if !coef.is_zero() {
                let off = dr - 1 - dd;
                for j in 0..=dd {
                    let t = (&coef * &div.coeffs[j]).mod_floor(&self.p);
                    rem[off + j] = (&rem[off + j] - t).mod_floor(&self.p);
                }
            }
            rem.pop();
            dr -= 1;
        }
        PolyModP::new(rem, &self.p)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &PolyModP) -> PolyModP {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> PolyModP {
        match self.coeffs.last() {
            None => self.clone(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => {
                let inv = mod_inv(l, &self.p).expect("invertible lead");
                let coeffs = self.coeffs.iter().map(|c| c * &inv).collect();
                PolyModP::new(coeffs, &self.p)
            }
        }
    }

    /// Exact quotient by a divisor known to divide self.
    pub fn div_exact(&self, div: &PolyModP) -> PolyModP {
        let dd = div.degree().expect("division by zero polynomial");
        let dn = match self.degree() {
            None => return PolyModP::zero(&self.p),
            Some(d) => d,
        };
        assert!(dn >= dd);
        let lead_inv = mod_inv(div.coeffs.last().unwrap(), &self.p).unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); dn - dd + 1];
        for i in (dd..=dn).rev() {
            let coef = (&rem[i] * &lead_inv).mod_floor(&self.p);
            quot[i - dd] = coef.clone();
            if coef.is_zero() {
                continue;
            }
            for j in 0..=dd {
                let t = (&coef * &div.coeffs[j]).mod_floor(&self.p);
                rem[i - dd + j] = (&rem[i - dd + j] - t).mod_floor(&self.p);
            }
        }
        debug_assert!(rem.iter().all(|c| c.is_zero()));
        PolyModP::new(quot, &self.p)
    }

    pub fn derivative(&self) -> PolyModP {
        if self.coeffs.len() <= 1 {
            return PolyModP::zero(&self.p);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        PolyModP::new(coeffs, &self.p)
    }

    /// self^e mod modulus, by square and multiply.
    pub fn pow_mod(&self, e: &BigInt, modulus: &PolyModP) -> PolyModP {
        let mut result = PolyModP::new(vec![BigInt::one()], &self.p);
        let mut base = self.rem(modulus);
        let mut e = e.clone();
        while e > BigInt::zero() {
            if e.is_odd() {
                result = result.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(coeffs: &[i64], p: i64) -> PolyModP {
        PolyModP::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), &BigInt::from(p))
    }

    #[test]
    fn rem_and_gcd() {
        // x^2 - 1 and x - 1 over F_7
        let f = pm(&[-1, 0, 1], 7);
        let g = pm(&[-1, 1], 7);
        assert_eq!(f.rem(&g), PolyModP::zero(&BigInt::from(7)));
        assert_eq!(f.gcd(&g), g.monic());
    }

    #[test]
    fn frobenius_power() {
        // x^7 mod (x^2 - 3) over F_7 equals 3^3 * x = 27x = 6x.
        let p = BigInt::from(7);
        let modulus = pm(&[-3, 0, 1], 7);
        let xp = PolyModP::x(&p).pow_mod(&p, &modulus);
        assert_eq!(xp, pm(&[0, 6], 7));
    }
}
