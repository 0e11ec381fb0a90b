//! Continued fractions of quadratic irrationals: periods, convergents, the
//! S-sequence of norm-form values, fundamental units, and the cycle-period
//! and principal-form tests for indefinite forms.
//!
//! All expansions run on exact (P, Q) integer state pairs for (P + sqrt(N))/Q;
//! the period is detected by state repetition, never by floating point.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_perfect_square, isqrt};
use crate::error::{Error, Result};
use crate::forms::{Discriminant, QuadraticForm};

/// Eventually periodic continued fraction of a quadratic irrational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CFExpansion {
    /// Pre-periodic quotients (the anti-period); length 1 for sqrt(N).
    pub head: Vec<BigInt>,
    /// The repeating quotient block; nonempty.
    pub period: Vec<BigInt>,
}

impl CFExpansion {
    /// First partial quotient.
    pub fn d0(&self) -> &BigInt {
        self.head.first().unwrap_or(&self.period[0])
    }

    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    /// Quotient at position i, unrolling the period.
    pub fn quotient(&self, i: usize) -> &BigInt {
        if i < self.head.len() {
            &self.head[i]
        } else {
            &self.period[(i - self.head.len()) % self.period.len()]
        }
    }
}

/// Norm-form values along the convergents of the principal root, over one
/// full period; sign-extended to 2T entries when the fundamental unit has
/// norm -1 (the values then satisfy v_{i+T} = -v_i).
#[derive(Debug, Clone)]
pub struct SSequence {
    pub values: Vec<BigInt>,
    pub period: usize,
    pub unit_norm: i32,
}

impl SSequence {
    pub fn contains(&self, t: &BigInt) -> bool {
        self.values.iter().any(|v| v == t)
    }
}

fn floor_surd(p: &BigInt, q: &BigInt, sqrt_n: &BigInt) -> BigInt {
    // floor((p + sqrt(N))/q) using floor(sqrt(N)) = sqrt_n; exact because
    // sqrt(N) is irrational here.
    if q.is_positive() {
        (p + sqrt_n).div_floor(q)
    } else {
        (p + sqrt_n + 1u32).div_floor(q)
    }
}

struct SurdIter {
    n: BigInt,
    sqrt_n: BigInt,
    p: BigInt,
    q: BigInt,
}

impl SurdIter {
    fn next_quotient(&mut self) -> BigInt {
        let d = floor_surd(&self.p, &self.q, &self.sqrt_n);
        let p_next = &d * &self.q - &self.p;
        let q_next = (&self.n - &p_next * &p_next) / &self.q;
        self.p = p_next;
        self.q = q_next;
        d
    }
}

/// Expansion of (p + sqrt(n))/q with n > 0 nonsquare and q != 0.  The state
/// is normalized so that q divides n - p^2, scaling the radicand if needed.
pub fn cf_sqrt_quadratic(p: &BigInt, q: &BigInt, n: &BigInt) -> Result<CFExpansion> {
    if q.is_zero() {
        return Err(Error::InvalidArgument("zero denominator".into()));
    }
    if !n.is_positive() || is_perfect_square(n) {
        return Err(Error::InvalidArgument(format!("radicand {n} must be positive and nonsquare")));
    }
    let (p, q, n) = if (n - p * p).is_multiple_of(q) {
        (p.clone(), q.clone(), n.clone())
    } else {
        let scale = q.abs();
        (p * &scale, q * &scale, n * &scale * &scale)
    };
    let mut iter = SurdIter { sqrt_n: isqrt(&n), n, p, q };
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut quotients: Vec<BigInt> = Vec::new();
    loop {
        let state = (iter.p.clone(), iter.q.clone());
        if let Some(&start) = seen.get(&state) {
            let head = quotients[..start].to_vec();
            let period = quotients[start..].to_vec();
            return Ok(CFExpansion { head, period });
        }
        seen.insert(state, quotients.len());
        quotients.push(iter.next_quotient());
    }
}

/// Sign of x + y*sqrt(delta) for positive nonsquare delta.
fn sign_with_sqrt(x: &BigInt, y: &BigInt, delta: &BigInt) -> i32 {
    if y.is_zero() {
        return if x.is_positive() {
            1
        } else if x.is_negative() {
            -1
        } else {
            0
        };
    }
    if !x.is_negative() && !y.is_negative() {
        return 1;
    }
    if !x.is_positive() && !y.is_positive() {
        return -1;
    }
    let cmp = y * y * delta - x * x; // sign decides which term dominates
    let dom = if cmp.is_positive() { y } else { x };
    if dom.is_positive() {
        1
    } else {
        -1
    }
}

/// Period of the continued fraction of the positive root of a t^2 + b t + c.
pub fn class_cycle_period(f: &QuadraticForm) -> Result<usize> {
    let delta = f.delta();
    if !delta.is_positive() {
        return Err(Error::InvalidArgument("cycle periods need a positive discriminant".into()));
    }
    // Roots (-b +- sqrt(delta))/(2a); take the positive one.
    let two_a = BigInt::from(2) * f.a();
    let exp = if sign_with_sqrt(&-f.b(), &BigInt::one(), &delta)
        == (if f.a().is_positive() { 1 } else { -1 })
    {
        cf_sqrt_quadratic(&-f.b(), &two_a, &delta)?
    } else {
        cf_sqrt_quadratic(f.b(), &(-&two_a), &delta)?
    };
    Ok(exp.period_len())
}

/// Principal root of the discriminant: the expanded surd for the S-sequence,
/// (-t + sqrt(delta))/2 where t is the trace of omega.  For delta = 4D this
/// is sqrt(D).
fn principal_surd(d: &Discriminant) -> (BigInt, BigInt, BigInt) {
    (-d.omega_trace(), BigInt::from(2), d.delta().clone())
}

struct PrincipalExpansion {
    expansion: CFExpansion,
    /// Convergent numerators/denominators p_i, q_i for i = 0..head+period.
    convergents: Vec<(BigInt, BigInt)>,
}

fn expand_principal(d: &Discriminant) -> Result<PrincipalExpansion> {
    let (p0, q0, n) = principal_surd(d);
    let expansion = cf_sqrt_quadratic(&p0, &q0, &n)?;
    if expansion.head.len() != 1 {
        return Err(Error::Unsupported(format!(
            "principal surd of {} has anti-period length {}",
            d.delta(),
            expansion.head.len()
        )));
    }
    let total = expansion.head.len() + expansion.period_len();
    let mut convergents = Vec::with_capacity(total);
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    let (mut p_cur, mut q_cur) = (expansion.quotient(0).clone(), BigInt::one());
    convergents.push((p_cur.clone(), q_cur.clone()));
    for i in 1..total {
        let d_i = expansion.quotient(i);
        let p_next = d_i * &p_cur + &p_prev;
        let q_next = d_i * &q_cur + &q_prev;
        p_prev = std::mem::replace(&mut p_cur, p_next);
        q_prev = std::mem::replace(&mut q_cur, q_next);
        convergents.push((p_cur.clone(), q_cur.clone()));
    }
    Ok(PrincipalExpansion { expansion, convergents })
}

/// The S-sequence of the discriminant: norm-form values at the convergents
/// of the principal root over one full period.
pub fn s_sequence(d: &Discriminant) -> Result<SSequence> {
    let delta = d.delta();
    if !delta.is_positive() {
        return Err(Error::InvalidArgument("S-sequences need a positive discriminant".into()));
    }
    let pe = expand_principal(d)?;
    let t = pe.expansion.period_len();
    let norm_form = d.norm_form();
    let mut values = Vec::with_capacity(t);
    for (p, q) in pe.convergents.iter().take(t) {
        let v = norm_form.evaluate(p, q);
        // |v| < 2 sqrt(delta)
        debug_assert!(&v * &v < BigInt::from(4) * delta);
        values.push(v);
    }
    let last = values.last().unwrap();
    let unit_norm = if last.is_one() {
        1
    } else if (-last).is_one() {
        -1
    } else {
        return Err(Error::Unsupported(format!(
            "period-end value {last} is not a unit norm for delta = {delta}"
        )));
    };
    if unit_norm == -1 {
        let flipped: Vec<BigInt> = values.iter().map(|v| -v).collect();
        values.extend(flipped);
    }
    Ok(SSequence { values, period: t, unit_norm })
}

/// Fundamental unit u + v*omega (> 1), with its norm.  For delta = 4D the
/// coordinates are with respect to omega = sqrt(D).
pub fn fundamental_unit(d: &Discriminant) -> Result<(BigInt, BigInt, i32)> {
    let delta = d.delta();
    if !delta.is_positive() {
        return Err(Error::InvalidArgument("units need a positive discriminant".into()));
    }
    let pe = expand_principal(d)?;
    let t_len = pe.expansion.period_len();
    let (p, q) = &pe.convergents[t_len - 1];
    // The norm form evaluates to +-1 at the period-end convergent, so
    // p + q*omega is a unit.
    let tr = d.omega_trace();
    let mut u = p.clone();
    let mut v = q.clone();
    let norm_form = d.norm_form();
    let nval = norm_form.evaluate(p, q);
    let unit_norm = if nval.is_one() { 1 } else { -1 };
    debug_assert!(nval.abs().is_one());
    // Normalize to the generator > 1 among +-x, +-x^-1.
    // x^-1 = sign * conj(x), conj(u + v*omega) = (u + t*v) - v*omega.
    let gt_one = |u: &BigInt, v: &BigInt| -> bool {
        // u + v*omega > 1 with omega = (t + sqrt(delta))/2:
        // equivalent to (2(u-1) + v t) + v sqrt(delta) > 0.
        let x = BigInt::from(2) * (u - 1u32) + v * &tr;
        sign_with_sqrt(&x, v, &delta) > 0
    };
    if !gt_one(&u, &v) {
        let candidates = [
            (-&u, -&v),
            (&u + &tr * &v, -&v),
            (-(&u + &tr * &v), v.clone()),
        ];
        let mut found = false;
        for (cu, cv) in candidates {
            if gt_one(&cu, &cv) {
                u = cu;
                v = cv;
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::Unsupported("no unit representative above 1".into()));
        }
    }
    Ok((u, v, unit_norm))
}

/// Principality test from the S-sequence: true iff some form in the cycle of
/// f has a leading or trailing coefficient occurring in the (sign-extended)
/// S period.
pub fn is_principal_cf(f: &QuadraticForm) -> Result<bool> {
    let delta = f.delta();
    if !delta.is_positive() {
        return Err(Error::InvalidArgument("the CF principal test needs delta > 0".into()));
    }
    let d = Discriminant::new(delta)?;
    let s = s_sequence(&d)?;
    let (reduced, _) = f.reduce()?;
    for g in reduced.cycle()? {
        if s.contains(g.a()) || s.contains(g.c()) {
            return Ok(true);
        }
    }
    Ok(false)
}
