//! Elliptic curves over prime fields: curves from j-invariants, point
//! counting at desk scale, the Deuring-trace route to square roots of
//! discriminants, and high-precision j-values from the q-expansion.

mod bigfloat;
mod count;
mod qexp;

pub use bigfloat::{FixedComplex, FixedReal};
pub use count::{count_exhaustive, count_fp2, Fp2, Fp2Ctx};
pub use qexp::{j_coefficients, j_from_qexp, ComplexApprox};
pub(crate) use qexp::j_at_form;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{self, is_perfect_square, isqrt, mod_inv, sqrt_mod_prime, IntPolynomial, PolyModP};
use crate::error::{Error, Result};
use crate::forms::Discriminant;

/// Monic short-Weierstrass curve y^2 = x^3 + Ax + B over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveFp {
    p: BigInt,
    a: BigInt,
    b: BigInt,
}

/// Point count and Frobenius trace of a counted curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceData {
    pub q: BigInt,
    pub n: BigInt,
    pub a_q: BigInt,
}

impl TraceData {
    pub fn new(q: BigInt, n: BigInt) -> Result<Self> {
        let a_q = &q + 1u32 - &n;
        // Hasse: a_q^2 <= 4q
        if &a_q * &a_q > BigInt::from(4) * &q {
            return Err(Error::CurveInconsistency(format!(
                "trace {a_q} violates the Hasse bound for q = {q}"
            )));
        }
        Ok(TraceData { q, n, a_q })
    }
}

impl CurveFp {
    pub fn new(p: BigInt, a: BigInt, b: BigInt) -> Result<Self> {
        if p.is_even() || p < BigInt::from(3) || !arith::is_probable_prime(&p) {
            return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
        }
        let a = a.mod_floor(&p);
        let b = b.mod_floor(&p);
        let disc = (BigInt::from(4) * &a * &a * &a + BigInt::from(27) * &b * &b).mod_floor(&p);
        if disc.is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(CurveFp { p, a, b })
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    /// j = 1728 * 4A^3 / (4A^3 + 27B^2) mod p.
    pub fn j_invariant(&self) -> BigInt {
        let four_a3 = BigInt::from(4) * &self.a * &self.a * &self.a;
        let den = (&four_a3 + BigInt::from(27) * &self.b * &self.b).mod_floor(&self.p);
        let inv = mod_inv(&den, &self.p).expect("nonsingular");
        (BigInt::from(1728) * four_a3 * inv).mod_floor(&self.p)
    }
}

/// The curve y^2 = x^3 + 3kx + 2k with k = j/(1728 - j), specialized at
/// j = 0 and j = 1728.
pub fn curve_from_j(j: &BigInt, p: &BigInt) -> Result<CurveFp> {
    if *p < BigInt::from(5) {
        return Err(Error::InvalidArgument("curve_from_j needs p >= 5".into()));
    }
    let j = j.mod_floor(p);
    if j.is_zero() {
        return CurveFp::new(p.clone(), BigInt::zero(), BigInt::one());
    }
    if j == BigInt::from(1728).mod_floor(p) {
        return CurveFp::new(p.clone(), BigInt::one(), BigInt::zero());
    }
    let den = (BigInt::from(1728) - &j).mod_floor(p);
    let k = (&j * mod_inv(&den, p).expect("j != 1728")).mod_floor(p);
    let curve = CurveFp::new(p.clone(), (BigInt::from(3) * &k).mod_floor(p), (BigInt::from(2) * &k).mod_floor(p))?;
    debug_assert_eq!(curve.j_invariant(), j);
    Ok(curve)
}

/// Exact rational (A, B) for y^2 = x^3 + Ax + B with the given j over Q.
pub fn curve_from_j_rational(j: &BigRational) -> Result<(BigRational, BigRational)> {
    let b1728 = BigRational::from_integer(BigInt::from(1728));
    if j.is_zero() {
        return Ok((BigRational::zero(), BigRational::one()));
    }
    if *j == b1728 {
        return Ok((BigRational::one(), BigRational::zero()));
    }
    let k = j / (b1728 - j);
    Ok((BigRational::from_integer(BigInt::from(3)) * &k, BigRational::from_integer(BigInt::from(2)) * k))
}

/// #E(F_p) and the trace, exhaustively below 1e5 and by BSGS up to 1e12.
pub fn count_points(curve: &CurveFp) -> Result<TraceData> {
    let p = curve
        .p
        .to_u64()
        .ok_or_else(|| Error::Unsupported("point counting needs p <= 1e12".into()))?;
    let a = curve.a.to_u64().unwrap();
    let b = curve.b.to_u64().unwrap();
    let n = if p < count::EXHAUSTIVE_LIMIT {
        count::count_exhaustive(p, a, b)
    } else if p <= count::BSGS_LIMIT {
        count::count_bsgs(p, a, b)?
    } else {
        return Err(Error::Unsupported("point counting needs p <= 1e12".into()));
    };
    TraceData::new(curve.p.clone(), BigInt::from(n))
}

/// sqrt(delta) mod p from the Frobenius trace of the curve with the given
/// j-invariant: 4p - a^2 = |delta| b^2 and sqrt(delta) = a/b.  This is the
/// route for split primes whose ideal above p is principal.
pub fn sqrt_disc_via_curve(d: &Discriminant, p: &BigInt, j_mod_p: &BigInt) -> Result<BigInt> {
    if !d.delta().is_negative() {
        return Err(Error::InvalidArgument("the curve route needs delta < 0".into()));
    }
    if arith::jacobi_symbol(&d.delta().mod_floor(p), p)? != 1 {
        return Err(Error::NonResidue);
    }
    let curve = curve_from_j(j_mod_p, p)?;
    let trace = count_points(&curve)?;
    trace_to_sqrt(d, p, &trace.q, &trace.a_q)
}

fn trace_to_sqrt(d: &Discriminant, p: &BigInt, q: &BigInt, a_q: &BigInt) -> Result<BigInt> {
    let num = BigInt::from(4) * q - a_q * a_q;
    let abs_delta = d.delta().abs();
    let (quot, rem) = num.div_rem(&abs_delta);
    if !rem.is_zero() || !is_perfect_square(&quot) {
        return Err(Error::CurveInconsistency(format!(
            "4q - a^2 = {num} is not |delta| times a square; wrong j or ell_p > 1"
        )));
    }
    let b = isqrt(&quot);
    let b_inv = mod_inv(&b.mod_floor(p), p)
        .ok_or_else(|| Error::CurveInconsistency("b = 0: supersingular trace".into()))?;
    let root = (a_q * b_inv).mod_floor(p);
    let root = if root.is_odd() { p - root } else { root };
    debug_assert_eq!(
        (&root * &root).mod_floor(p),
        d.delta().mod_floor(p),
        "trace route must return a root of delta"
    );
    Ok(root)
}

/// Degree-2 branch: j is a root of an irreducible quadratic factor of the
/// class polynomial mod p, the curve lives over F_{p^2}, and the count there
/// yields sqrt(delta) mod p.  Exhaustive, so p is capped near 4000.
pub fn sqrt_disc_via_curve_deg2(d: &Discriminant, p: &BigInt, factor: &IntPolynomial) -> Result<BigInt> {
    if !d.delta().is_negative() {
        return Err(Error::InvalidArgument("the curve route needs delta < 0".into()));
    }
    let fp = PolyModP::from_int_poly(factor, p);
    if fp.degree() != Some(2) {
        return Err(Error::InvalidArgument("expected a quadratic factor".into()));
    }
    let pu = p.to_u64().ok_or_else(|| Error::Unsupported("p too large for the F_p^2 count".into()))?;
    // Normalize to monic t^2 + Bt + C.
    let monic = fp.monic();
    let bcoef = monic.coeff(1).to_u64().unwrap();
    let ccoef = monic.coeff(0).to_u64().unwrap();
    let ctx = Fp2Ctx::new(pu, bcoef, ccoef);
    // j is the class of t.
    let j = Fp2 { c0: 0, c1: 1 };
    let k1728 = ctx.from_u64(1728 % pu);
    let den = ctx.sub(k1728, j);
    if ctx.is_zero(den) || ctx.is_zero(j) {
        return Err(Error::Unsupported("singular j in the degree-2 branch".into()));
    }
    let k = ctx.mul(j, ctx.inv(den));
    let a = ctx.mul(ctx.from_u64(3), k);
    let b = ctx.mul(ctx.from_u64(2), k);
    let n = count_fp2(&ctx, a, b)?;
    let q = BigInt::from(pu) * BigInt::from(pu);
    let trace = TraceData::new(q.clone(), BigInt::from(n))?;
    trace_to_sqrt(d, p, &q, &trace.a_q)
}

/// p = x^2 + y^2 for p = 1 mod 4, by Cornacchia descent from a root of -1.
pub fn cornacchia_two_squares(p: &BigInt) -> Result<(BigInt, BigInt)> {
    if p.mod_floor(&BigInt::from(4)) != BigInt::one() {
        return Err(Error::InvalidArgument("two-squares decomposition needs p = 1 mod 4".into()));
    }
    let mut r = sqrt_mod_prime(&BigInt::from(-1), p)?;
    if &r * 2u32 < *p {
        r = p - r;
    }
    let mut a = p.clone();
    let mut b = r;
    while &b * &b > *p {
        let t = a.mod_floor(&b);
        a = std::mem::replace(&mut b, t);
    }
    let y2 = p - &b * &b;
    let y = isqrt(&y2);
    if &y * &y != y2 {
        return Err(Error::CurveInconsistency("descent failed to split p".into()));
    }
    Ok((b, y))
}

/// sqrt(delta) mod p for positive delta and p = 1 mod 4, via
/// sqrt(delta) = (x0/y0) * sqrt(-delta) with p = x0^2 + y0^2.
pub fn sqrt_pos_disc(d: &Discriminant, p: &BigInt) -> Result<BigInt> {
    if !d.delta().is_positive() {
        return Err(Error::InvalidArgument("sqrt_pos_disc needs delta > 0".into()));
    }
    if p.mod_floor(&BigInt::from(4)) != BigInt::one() {
        return Err(Error::Unsupported(
            "p = 3 mod 4: take sqrt_mod_prime directly instead".into(),
        ));
    }
    if arith::jacobi_symbol(&d.delta().mod_floor(p), p)? != 1 {
        return Err(Error::NonResidue);
    }
    let (x0, y0) = cornacchia_two_squares(p)?;
    let minus = (-d.delta()).mod_floor(p);
    let s = sqrt_mod_prime(&minus, p)?;
    let root = (x0 * mod_inv(&y0, p).expect("y0 < p") * s).mod_floor(p);
    let root = if root.is_odd() { p - root } else { root };
    debug_assert_eq!((&root * &root).mod_floor(p), d.delta().mod_floor(p));
    Ok(root)
}
