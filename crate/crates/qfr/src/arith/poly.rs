//! Dense univariate polynomials over Z, coefficients ascending by degree.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Integer polynomial, dense ascending coefficients.  The zero polynomial
/// has an empty coefficient vector; otherwise the leading coefficient is
/// nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// x - r
    pub fn linear_root(r: &BigInt) -> Self {
        Self::new(vec![-r, BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> IntPolynomial {
        if self.coeffs.len() <= 1 {
            return IntPolynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        IntPolynomial::new(coeffs)
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        IntPolynomial::new(coeffs)
    }

    pub fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        IntPolynomial::new(coeffs)
    }

    pub fn neg(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
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
        IntPolynomial::new(coeffs)
    }

    pub fn scale(&self, k: &BigInt) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: usize) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    /// Exact division; None when the remainder is nonzero or a coefficient
    /// division fails over Z.
    pub fn exact_div(&self, div: &IntPolynomial) -> Option<IntPolynomial> {
        if div.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPolynomial::zero());
        }
        let dd = div.degree().unwrap();
        let dn = self.degree()?;
        if dn < dd {
            return None;
        }
        let lead = div.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); dn - dd + 1];
        for i in (dd..=dn).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let (q, r) = rem[i].div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            quot[i - dd] = q.clone();
            for j in 0..=dd {
                let t = &q * &div.coeffs[j];
                rem[i - dd + j] -= t;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPolynomial::new(quot))
    }

    /// gcd of all coefficients (non-negative; 0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    pub fn primitive_part(&self) -> IntPolynomial {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPolynomial::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Pseudo-remainder of self by div (div nonzero).
    fn pseudo_rem(&self, div: &IntPolynomial) -> IntPolynomial {
        let dd = div.degree().unwrap();
        let lead = div.leading().unwrap().clone();
        let mut rem = self.clone();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let coef = rem.leading().unwrap().clone();
            rem = rem.scale(&lead).sub(&div.shift(dr - dd).scale(&coef));
            debug_assert!(rem.degree().map_or(true, |d| d < dr));
        }
        rem
    }

    /// Primitive gcd over Z (positive leading coefficient).
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() {
            return other.normalize_sign();
        }
        if other.is_zero() {
            return self.normalize_sign();
        }
        let ca = self.content();
        let cb = other.content();
        let cg = ca.gcd(&cb);
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.normalize_sign().scale(&cg)
    }

    fn normalize_sign(&self) -> IntPolynomial {
        match self.leading() {
            Some(l) if l.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    /// Squarefree part: self / gcd(self, self'), as a primitive polynomial.
    pub fn squarefree_part(&self) -> IntPolynomial {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.primitive_part().normalize_sign();
        }
        self.exact_div(&g)
            .map(|q| q.primitive_part().normalize_sign())
            .unwrap_or_else(|| {
                // The content of self need not divide out cleanly; retry on
                // the primitive part.
                let pp = self.primitive_part();
                let g = pp.gcd(&pp.derivative());
                pp.exact_div(&g).unwrap().primitive_part().normalize_sign()
            })
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
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                1 => {
                    if a.is_one() {
                        write!(f, "x")?
                    } else {
                        write!(f, "{a}*x")?
                    }
                }
                _ => {
                    if a.is_one() {
                        write!(f, "x^{i}")?
                    } else {
                        write!(f, "{a}*x^{i}")?
                    }
                }
            }
        }
        Ok(())
    }
}

/// Determinant of a square matrix of integer polynomials by fraction-free
/// (Bareiss) elimination.  All intermediate divisions are exact.
pub fn poly_matrix_det(mat: &mut Vec<Vec<IntPolynomial>>) -> IntPolynomial {
    let n = mat.len();
    if n == 0 {
        return IntPolynomial::constant(BigInt::one());
    }
    let mut sign = 1i32;
    let mut prev = IntPolynomial::constant(BigInt::one());
    for k in 0..n - 1 {
        if mat[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !mat[i][k].is_zero());
            match swap {
                Some(i) => {
                    mat.swap(k, i);
                    sign = -sign;
                }
                None => return IntPolynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = mat[i][j].mul(&mat[k][k]).sub(&mat[i][k].mul(&mat[k][j]));
                mat[i][j] = t
                    .exact_div(&prev)
                    .expect("Bareiss division is exact");
            }
            mat[i][k] = IntPolynomial::zero();
        }
        prev = mat[k][k].clone();
    }
    let det = mat[n - 1][n - 1].clone();
    if sign < 0 {
        det.neg()
    } else {
        det
    }
}

/// Resultant with respect to y of two bivariate polynomials given as
/// polynomials in y whose coefficients are polynomials in x
/// (index i holds the coefficient of y^i).
pub fn resultant_y(a: &[IntPolynomial], b: &[IntPolynomial]) -> IntPolynomial {
    let trim = |v: &[IntPolynomial]| {
        let mut n = v.len();
        while n > 0 && v[n - 1].is_zero() {
            n -= 1;
        }
        v[..n].to_vec()
    };
    let a = trim(a);
    let b = trim(b);
    if a.is_empty() || b.is_empty() {
        return IntPolynomial::zero();
    }
    let m = a.len() - 1;
    let n = b.len() - 1;
    if m == 0 && n == 0 {
        return IntPolynomial::constant(BigInt::one());
    }
    // Sylvester matrix: n rows of a-coefficients, m rows of b-coefficients.
    let size = m + n;
    let mut mat = vec![vec![IntPolynomial::zero(); size]; size];
    for row in 0..n {
        for (j, c) in a.iter().rev().enumerate() {
            mat[row][row + j] = c.clone();
        }
    }
    for row in 0..m {
        for (j, c) in b.iter().rev().enumerate() {
            mat[n + row][row + j] = c.clone();
        }
    }
    poly_matrix_det(&mut mat)
}
