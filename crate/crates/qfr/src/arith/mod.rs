//! Arbitrary-precision modular and polynomial arithmetic kernel.
//!
//! Everything here is exact: Jacobi symbols, modular square roots
//! (Tonelli-Shanks and a randomized polynomial-splitting backend), Hensel
//! lifting to prime powers, integer roots of polynomials, and distinct-degree
//! factor patterns over F_p.

mod poly;
mod polymod;

pub use poly::{poly_matrix_det, resultant_y, IntPolynomial};
pub use polymod::PolyModP;

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// An odd prime power p^k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePower {
    p: BigInt,
    k: u32,
}

impl PrimePower {
    pub fn new(p: BigInt, k: u32) -> Result<Self> {
        if p < BigInt::from(3) || p.is_even() {
            return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
        }
        if !is_probable_prime(&p) {
            return Err(Error::InvalidArgument(format!("{p} fails the primality check")));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("exponent must be positive".into()));
        }
        Ok(PrimePower { p, k })
    }

    pub fn prime(&self) -> &BigInt {
        &self.p
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn value(&self) -> BigInt {
        self.p.pow(self.k)
    }
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let tmp = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, tmp);
        let tmp = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, tmp);
        let tmp = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, tmp);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of a modulo m, when gcd(a, m) = 1.
pub fn mod_inv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let (g, x, _) = ext_gcd(&a.mod_floor(m), m);
    if g.is_one() {
        Some(x.mod_floor(m))
    } else {
        None
    }
}

/// base^exp mod m for exp >= 0.
pub fn mod_pow(base: &BigInt, exp: &BigInt, m: &BigInt) -> BigInt {
    base.modpow(exp, m)
}

/// Floor of the square root of a non-negative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    n.sqrt()
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Miller-Rabin with the standard deterministic base set; a probabilistic
/// check for inputs beyond its proven range, which is all this crate needs.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    for small in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let s = BigInt::from(small);
        if *n == s {
            return true;
        }
        if n.is_multiple_of(&s) {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Jacobi symbol (a | n) for odd positive n.
pub fn jacobi_symbol(a: &BigInt, n: &BigInt) -> Result<i32> {
    if !n.is_positive() || n.is_even() {
        return Err(Error::InvalidArgument(format!(
            "Jacobi symbol needs an odd positive denominator, got {n}"
        )));
    }
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut result = 1i32;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let n_mod_8 = (&n % 8u32).to_u64_digits().1.first().copied().unwrap_or(0);
            if n_mod_8 == 3 || n_mod_8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32) == BigInt::from(3) && (&n % 4u32) == BigInt::from(3) {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        Ok(result)
    } else {
        Ok(0)
    }
}

fn check_odd_prime(p: &BigInt) -> Result<()> {
    if p.is_even() || *p < BigInt::from(3) {
        return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
    }
    if !is_probable_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} fails the primality check")));
    }
    Ok(())
}

/// Canonical square root of d modulo an odd prime: the even representative
/// in [0, p-1].  Deterministic given a nonresidue (Tonelli-Shanks), with the
/// p = 3 mod 4 shortcut.
pub fn sqrt_mod_prime(d: &BigInt, p: &BigInt) -> Result<BigInt> {
    check_odd_prime(p)?;
    let d = d.mod_floor(p);
    if d.is_zero() {
        return Ok(BigInt::zero());
    }
    if jacobi_symbol(&d, p)? == -1 {
        return Err(Error::NonResidue);
    }
    let r = if (p % 4u32) == BigInt::from(3) {
        d.modpow(&((p + 1u32) >> 2), p)
    } else {
        tonelli_shanks(&d, p)
    };
    Ok(canonical_even(r, p))
}

fn canonical_even(r: BigInt, p: &BigInt) -> BigInt {
    if r.is_odd() {
        p - r
    } else {
        r
    }
}

fn tonelli_shanks(d: &BigInt, p: &BigInt) -> BigInt {
    let p_minus_1 = p - 1u32;
    let s = p_minus_1.trailing_zeros().unwrap();
    let q = &p_minus_1 >> s;
    // Sequential search for a nonresidue.
    let mut z = BigInt::from(2);
    while jacobi_symbol(&z, p).unwrap() != -1 {
        z += 1u32;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = d.modpow(&q, p);
    let mut r = d.modpow(&((&q + 1u32) >> 1), p);
    while !t.is_one() {
        let mut i = 0u64;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2) % p;
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = (&b * &b) % p;
        }
        m = i;
        c = (&b * &b) % p;
        t = (&t * &c) % p;
        r = (&r * &b) % p;
    }
    r
}

/// Randomized square root backend: splits x^2 - d over F_p with random
/// gcd probes, the polynomial-factoring route.  Agrees with
/// [`sqrt_mod_prime`] up to sign; the canonical even root is returned.
pub fn sqrt_mod_prime_rand(d: &BigInt, p: &BigInt, seed: u64) -> Result<BigInt> {
    check_odd_prime(p)?;
    let d = d.mod_floor(p);
    if d.is_zero() {
        return Ok(BigInt::zero());
    }
    if jacobi_symbol(&d, p)? == -1 {
        return Err(Error::NonResidue);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = PolyModP::new(vec![-&d, BigInt::zero(), BigInt::one()], p);
    let e = (p - 1u32) >> 1;
    loop {
        let a = rng.gen_bigint_range(&BigInt::zero(), p);
        // gcd((x + a)^((p-1)/2) - 1, x^2 - d)
        let base = PolyModP::new(vec![a, BigInt::one()], p);
        let pw = base.pow_mod(&e, &target);
        let one = PolyModP::new(vec![BigInt::one()], p);
        let g = pw.sub(&one).gcd(&target);
        if g.degree() == Some(1) {
            let root = (-(g.coeff(0)) * mod_inv(&g.coeff(1), p).unwrap()).mod_floor(p);
            return Ok(canonical_even(root, p));
        }
    }
}

/// Lift a square root of d modulo p to a root modulo p^k.
pub fn hensel_lift_sqrt(r: &BigInt, d: &BigInt, pk: &PrimePower) -> Result<BigInt> {
    let p = pk.prime();
    let r = r.mod_floor(p);
    if ((&r * &r) - d).mod_floor(p) != BigInt::zero() {
        return Err(Error::InvalidArgument(format!("{r} is not a root of d mod {p}")));
    }
    if r.is_zero() {
        return Err(Error::InvalidArgument("root shares a factor with the modulus".into()));
    }
    let mut s = r;
    let mut modulus = p.clone();
    for _ in 1..pk.exponent() {
        let prev = modulus.clone();
        modulus *= p;
        // (s + t*prev)^2 = d (mod prev*p)  =>  t = (d - s^2)/prev * (2s)^-1 (mod p)
        let delta = (d - &s * &s) / &prev;
        let inv = mod_inv(&(BigInt::from(2) * &s), p).expect("2s invertible");
        let t = (delta * inv).mod_floor(p);
        s = (s + t * prev).mod_floor(&modulus);
    }
    Ok(s)
}

/// All integer roots of f, with multiplicity, in ascending order.
///
/// Roots of the squarefree part are found modulo an auxiliary prime and
/// Hensel-lifted past the Cauchy root bound, then verified exactly over Z;
/// multiplicities come from repeated exact division.
pub fn integer_roots(f: &IntPolynomial) -> Result<Vec<BigInt>> {
    if f.is_zero() {
        return Err(Error::InvalidArgument("zero polynomial".into()));
    }
    // Strip powers of x: they contribute roots at 0.
    let mut low = 0usize;
    while f.coeff(low).is_zero() {
        low += 1;
    }
    let stripped = IntPolynomial::new(f.coeffs()[low..].to_vec());
    let mut roots: Vec<BigInt> = std::iter::repeat(BigInt::zero()).take(low).collect();
    if stripped.degree() == Some(0) {
        roots.sort();
        return Ok(roots);
    }

    let sf = stripped.squarefree_part();
    let lead = sf.leading().unwrap().clone();
    let bound: BigInt = sf
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap()
        .div_ceil(&lead.abs())
        + 1u32;

    // Auxiliary prime: keeps the lead unit and the reduction squarefree.
    let mut pcand = 10007u64;
    let (p, mod_roots) = loop {
        let p = BigInt::from(pcand);
        if is_probable_prime(&p) && !lead.is_multiple_of(&p) {
            let fp = PolyModP::from_int_poly(&sf, &p);
            let fpd = fp.derivative();
            if !fpd.is_zero() && fp.gcd(&fpd).degree() == Some(0) {
                let mut rs = Vec::new();
                let small: Vec<u64> = fp
                    .coeffs
                    .iter()
                    .map(|c| c.to_u64_digits().1.first().copied().unwrap_or(0))
                    .collect();
                for x in 0..pcand {
                    let mut acc: u64 = 0;
                    for c in small.iter().rev() {
                        acc = ((acc as u128 * x as u128 + *c as u128) % pcand as u128) as u64;
                    }
                    if acc == 0 {
                        rs.push(BigInt::from(x));
                    }
                }
                break (p, rs);
            }
        }
        pcand += 2;
    };

    let deriv = sf.derivative();
    let target = BigInt::from(2) * &bound + 1u32;
    for r in mod_roots {
        // Newton lifting of a simple root until the modulus clears 2B+1.
        let mut modulus = p.clone();
        let mut z = r;
        while modulus < target {
            modulus = &modulus * &modulus;
            let fz = sf.eval(&z).mod_floor(&modulus);
            let dz = deriv.eval(&z).mod_floor(&modulus);
            let inv = match mod_inv(&dz, &modulus) {
                Some(i) => i,
                None => break,
            };
            z = (&z - fz * inv).mod_floor(&modulus);
        }
        let half = &modulus >> 1;
        let cand = if z > half { &z - &modulus } else { z.clone() };
        if sf.eval(&cand).is_zero() {
            // Multiplicity from the unstripped polynomial.
            let lin = IntPolynomial::linear_root(&cand);
            let mut rest = stripped.clone();
            while let Some(q) = rest.exact_div(&lin) {
                roots.push(cand.clone());
                rest = q;
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// Degrees of the irreducible factors of f modulo p (sorted multiset), by
/// distinct-degree splitting with gcd(f, x^(p^d) - x).
pub fn factor_degree_pattern_mod_p(f: &IntPolynomial, p: &BigInt) -> Result<Vec<usize>> {
    check_odd_prime(p)?;
    let fp = PolyModP::from_int_poly(f, p);
    if fp.is_zero() {
        return Err(Error::InvalidArgument("polynomial vanishes mod p".into()));
    }
    if fp.degree() == Some(0) {
        return Ok(vec![]);
    }
    let fpd = fp.derivative();
    if fpd.is_zero() || fp.gcd(&fpd).degree() != Some(0) {
        return Err(Error::NonSquarefreeModP);
    }
    let mut cur = fp.monic();
    let mut pattern = Vec::new();
    let mut h = PolyModP::x(p);
    let mut d = 0usize;
    while let Some(deg) = cur.degree() {
        if deg == 0 {
            break;
        }
        d += 1;
        if 2 * d > deg {
            pattern.push(deg);
            break;
        }
        h = h.pow_mod(p, &cur);
        let g = h.sub(&PolyModP::x(p)).gcd(&cur);
        if let Some(gd) = g.degree() {
            if gd > 0 {
                for _ in 0..gd / d {
                    pattern.push(d);
                }
                cur = cur.div_exact(&g);
                h = h.rem(&cur);
            }
        }
    }
    pattern.sort();
    Ok(pattern)
}

/// Distinct roots of f modulo p: gcd with x^p - x, then random splitting
/// of the linear part.
pub fn roots_mod_p(f: &IntPolynomial, p: &BigInt, seed: u64) -> Result<Vec<BigInt>> {
    check_odd_prime(p)?;
    let fp = PolyModP::from_int_poly(f, p);
    if fp.is_zero() {
        return Err(Error::InvalidArgument("polynomial vanishes mod p".into()));
    }
    let x = PolyModP::x(p);
    let xp = x.pow_mod(p, &fp);
    let lin = xp.sub(&x).gcd(&fp);
    let mut roots = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    split_linear(&lin, p, &mut rng, &mut roots);
    roots.sort();
    Ok(roots)
}

fn split_linear(g: &PolyModP, p: &BigInt, rng: &mut ChaCha8Rng, out: &mut Vec<BigInt>) {
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            let root = (-(g.coeff(0)) * mod_inv(&g.coeff(1), p).unwrap()).mod_floor(p);
            out.push(root);
        }
        Some(_) => loop {
            let a = rng.gen_bigint_range(&BigInt::zero(), p);
            let probe = PolyModP::new(vec![a, BigInt::one()], p);
            let w = probe.pow_mod(&((p - 1u32) >> 1), g);
            let one = PolyModP::new(vec![BigInt::one()], p);
            let t = w.sub(&one).gcd(g);
            if let Some(dt) = t.degree() {
                if dt > 0 && dt < g.degree().unwrap() {
                    split_linear(&t, p, rng, out);
                    split_linear(&g.div_exact(&t), p, rng, out);
                    return;
                }
            }
        },
    }
}

/// One monic irreducible factor of the requested degree of f mod p, when
/// one exists, by distinct-degree then equal-degree splitting.  The factor
/// is returned with coefficients lifted to [0, p).
pub fn extract_factor_deg(
    f: &IntPolynomial,
    p: &BigInt,
    want: usize,
    seed: u64,
) -> Result<Option<IntPolynomial>> {
    check_odd_prime(p)?;
    let fp = PolyModP::from_int_poly(f, p);
    if fp.is_zero() {
        return Err(Error::InvalidArgument("polynomial vanishes mod p".into()));
    }
    let fpd = fp.derivative();
    if fpd.is_zero() || fp.gcd(&fpd).degree() != Some(0) {
        return Err(Error::NonSquarefreeModP);
    }
    let mut cur = fp.monic();
    let mut h = PolyModP::x(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for d in 1..=want {
        if 2 * d > cur.degree().unwrap_or(0) {
            break;
        }
        h = h.pow_mod(p, &cur);
        let g = h.sub(&PolyModP::x(p)).gcd(&cur);
        if let Some(gd) = g.degree() {
            if gd > 0 {
                if d == want {
                    return Ok(Some(to_int_poly(&equal_degree_one(&g, d, p, &mut rng))));
                }
                cur = cur.div_exact(&g);
                h = h.rem(&cur);
            }
        }
    }
    if cur.degree() == Some(want) {
        return Ok(Some(to_int_poly(&cur)));
    }
    Ok(None)
}

fn equal_degree_one(g: &PolyModP, d: usize, p: &BigInt, rng: &mut ChaCha8Rng) -> PolyModP {
    if g.degree() == Some(d) {
        return g.monic();
    }
    // Cantor-Zassenhaus probe with exponent (p^d - 1)/2.
    let e = (p.pow(d as u32) - 1u32) >> 1;
    loop {
        let deg = g.degree().unwrap();
        let coeffs: Vec<BigInt> = (0..deg).map(|_| rng.gen_bigint_range(&BigInt::zero(), p)).collect();
        let probe = PolyModP::new(coeffs, p);
        if probe.is_zero() {
            continue;
        }
        let w = probe.pow_mod(&e, g);
        let one = PolyModP::new(vec![BigInt::one()], p);
        let t = w.sub(&one).gcd(g);
        if let Some(dt) = t.degree() {
            if dt > 0 && dt < deg {
                let (t1, t2) = (t.clone(), g.div_exact(&t));
                return if t1.degree().unwrap() % d == 0 && t1.degree().unwrap() <= t2.degree().unwrap() {
                    equal_degree_one(&t1, d, p, rng)
                } else {
                    equal_degree_one(&t2, d, p, rng)
                };
            }
        }
    }
}

fn to_int_poly(f: &PolyModP) -> IntPolynomial {
    IntPolynomial::new(f.coeffs.clone())
}

/// Prime-power factorization by trial division then Brent's rho.
pub fn factor_integer(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    if !n.is_positive() {
        return Err(Error::InvalidArgument("factor_integer needs n >= 1".into()));
    }
    let mut n = n.clone();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let push = |p: BigInt, factors: &mut Vec<(BigInt, u32)>| {
        for (q, e) in factors.iter_mut() {
            if *q == p {
                *e += 1;
                return;
            }
        }
        factors.push((p, 1));
    };
    for d in std::iter::once(2u64).chain((3..10_000u64).step_by(2)) {
        let bd = BigInt::from(d);
        if &bd * &bd > n {
            break;
        }
        while n.is_multiple_of(&bd) {
            n /= &bd;
            push(bd.clone(), &mut factors);
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            push(m, &mut factors);
            continue;
        }
        let d = pollard_rho(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    factors.sort();
    Ok(factors)
}

fn pollard_rho(n: &BigInt) -> BigInt {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    loop {
        let c = rng.gen_bigint_range(&BigInt::one(), n);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut x = BigInt::from(2);
        let mut y = BigInt::from(2);
        let mut d = BigInt::one();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if d != *n {
            return d;
        }
    }
}

/// Small primes below the bound, by sieve.
pub fn primes_below(bound: u64) -> Vec<u64> {
    if bound < 3 {
        return vec![];
    }
    let mut sieve = vec![true; bound as usize];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2usize;
    while p * p < bound as usize {
        if sieve[p] {
            let mut q = p * p;
            while q < bound as usize {
                sieve[q] = false;
                q += p;
            }
        }
        p += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| if b { Some(i as u64) } else { None })
        .collect()
}


#[cfg(test)]
mod splitting_tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn roots_of_class_poly() {
        // x^2 - 1264000x - 681472000 mod 29 has two roots.
        let h = IntPolynomial::new(vec![b(-681472000), b(-1264000), b(1)]);
        let roots = roots_mod_p(&h, &b(29), 7).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!(h.eval(r).mod_floor(&b(29)).is_zero());
        }
        assert!(roots_mod_p(&h, &b(7), 7).unwrap().is_empty());
    }

    #[test]
    fn quadratic_factor_extraction() {
        let h = IntPolynomial::new(vec![b(-681472000), b(-1264000), b(1)]);
        let f = extract_factor_deg(&h, &b(7), 2, 7).unwrap().unwrap();
        assert_eq!(f.degree(), Some(2));
        // The factor divides h mod 7.
        let hp = PolyModP::from_int_poly(&h, &b(7));
        let fp = PolyModP::from_int_poly(&f, &b(7));
        assert!(hp.rem(&fp).is_zero());
        // No quadratic factor mod 29 (it fully splits).
        assert!(extract_factor_deg(&h, &b(29), 2, 7).unwrap().is_none());
    }
}
