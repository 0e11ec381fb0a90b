//! Binary quadratic forms: discriminants, reduction with transformation
//! tracking, proper equivalence, Gauss composition with the bilinear output
//! map, and class enumeration.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, ext_gcd, isqrt};
use crate::error::{Error, Result};

/// Primitive binary quadratic form a*x^2 + b*x*y + c*y^2 of nonsquare
/// discriminant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadraticForm {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

/// Discriminant b^2 - 4ac together with the field part D (= delta when
/// delta is odd, delta/4 otherwise).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discriminant {
    delta: BigInt,
    d: BigInt,
}

/// Row-major 2x2 integer matrix (p q / r s) of determinant +-1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnimodularMap {
    pub p: BigInt,
    pub q: BigInt,
    pub r: BigInt,
    pub s: BigInt,
}

/// A witnessed value of a form: form(x, y) = value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub form: QuadraticForm,
    pub x: BigInt,
    pub y: BigInt,
    pub value: BigInt,
}

impl Representation {
    pub fn new(form: QuadraticForm, x: BigInt, y: BigInt) -> Self {
        let value = form.evaluate(&x, &y);
        Representation { form, x, y, value }
    }
}

impl UnimodularMap {
    pub fn new(p: BigInt, q: BigInt, r: BigInt, s: BigInt) -> Result<Self> {
        let m = UnimodularMap { p, q, r, s };
        let det = m.det();
        if det.abs().is_one() {
            Ok(m)
        } else {
            Err(Error::InvalidArgument(format!("matrix determinant {det} is not +-1")))
        }
    }

    pub fn identity() -> Self {
        UnimodularMap {
            p: BigInt::one(),
            q: BigInt::zero(),
            r: BigInt::zero(),
            s: BigInt::one(),
        }
    }

    /// x -> x, y -> -y; the improper reflection.
    pub fn mirror() -> Self {
        UnimodularMap {
            p: BigInt::one(),
            q: BigInt::zero(),
            r: BigInt::zero(),
            s: -BigInt::one(),
        }
    }

    pub fn det(&self) -> BigInt {
        &self.p * &self.s - &self.q * &self.r
    }

    pub fn is_proper(&self) -> bool {
        self.det().is_one()
    }

    pub fn mul(&self, other: &UnimodularMap) -> UnimodularMap {
        UnimodularMap {
            p: &self.p * &other.p + &self.q * &other.r,
            q: &self.p * &other.q + &self.q * &other.s,
            r: &self.r * &other.p + &self.s * &other.r,
            s: &self.r * &other.q + &self.s * &other.s,
        }
    }

    /// Exact inverse; integral because the determinant is a unit.
    pub fn inverse(&self) -> UnimodularMap {
        let det = self.det();
        if det.is_one() {
            UnimodularMap {
                p: self.s.clone(),
                q: -&self.q,
                r: -&self.r,
                s: self.p.clone(),
            }
        } else {
            UnimodularMap {
                p: -&self.s,
                q: self.q.clone(),
                r: self.r.clone(),
                s: -&self.p,
            }
        }
    }

    pub fn apply(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        (&self.p * x + &self.q * y, &self.r * x + &self.s * y)
    }

    fn translation(k: &BigInt) -> UnimodularMap {
        UnimodularMap {
            p: BigInt::one(),
            q: k.clone(),
            r: BigInt::zero(),
            s: BigInt::one(),
        }
    }

    /// The rho-step matrix (0 -1 / 1 k).
    fn rho(k: &BigInt) -> UnimodularMap {
        UnimodularMap {
            p: BigInt::zero(),
            q: -BigInt::one(),
            r: BigInt::one(),
            s: k.clone(),
        }
    }
}

impl Discriminant {
    pub fn new(delta: BigInt) -> Result<Self> {
        let rem = delta.mod_floor(&BigInt::from(4));
        if !(rem.is_zero() || rem.is_one()) {
            return Err(Error::UnsupportedDiscriminant(format!("{delta} is not 0 or 1 mod 4")));
        }
        if delta.is_positive() && arith::is_perfect_square(&delta) || delta.is_zero() {
            return Err(Error::UnsupportedDiscriminant(format!("{delta} is a perfect square")));
        }
        let d = if rem.is_one() { delta.clone() } else { &delta / 4 };
        if !is_squarefree(&d) {
            return Err(Error::NonFundamental(format!("D = {d} is not square-free")));
        }
        Ok(Discriminant { delta, d })
    }

    pub fn delta(&self) -> &BigInt {
        &self.delta
    }

    /// D: delta itself when odd, delta/4 otherwise.
    pub fn d_field(&self) -> &BigInt {
        &self.d
    }

    pub fn is_negative(&self) -> bool {
        self.delta.is_negative()
    }

    /// delta = 1 mod 4, or delta = 4D with D = 2,3 mod 4.
    pub fn is_fundamental(&self) -> bool {
        if self.delta.is_odd() {
            return true;
        }
        let m = self.d.mod_floor(&BigInt::from(4));
        m == BigInt::from(2) || m == BigInt::from(3)
    }

    /// Trace of omega: 1 when delta is odd, 0 otherwise.
    pub fn omega_trace(&self) -> BigInt {
        if self.delta.is_odd() {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    }

    /// Norm of omega: (t^2 - delta)/4.
    pub fn omega_norm(&self) -> BigInt {
        let t = self.omega_trace();
        (&t * &t - &self.delta) / 4
    }

    /// The norm form x^2 + t*x*y + n*y^2 of value N(x + y*omega).
    pub fn norm_form(&self) -> QuadraticForm {
        QuadraticForm::new(BigInt::one(), self.omega_trace(), self.omega_norm()).unwrap()
    }
}

fn is_squarefree(n: &BigInt) -> bool {
    let n = n.abs();
    if n.is_zero() {
        return false;
    }
    let mut m = n;
    let mut d = BigInt::from(2);
    while &d * &d <= m {
        if m.is_multiple_of(&d) {
            m /= &d;
            if m.is_multiple_of(&d) {
                return false;
            }
        }
        d += 1u32;
    }
    true
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

impl QuadraticForm {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Result<Self> {
        if a.gcd(&b).gcd(&c) != BigInt::one() {
            return Err(Error::InvalidArgument(format!("({a},{b},{c}) is not primitive")));
        }
        let delta = &b * &b - BigInt::from(4) * &a * &c;
        if !delta.is_negative() && arith::is_perfect_square(&delta) {
            return Err(Error::UnsupportedDiscriminant(format!(
                "({a},{b},{c}) has square discriminant {delta}"
            )));
        }
        Ok(QuadraticForm { a, b, c })
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(BigInt::from(a), BigInt::from(b), BigInt::from(c))
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn delta(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn discriminant(&self) -> Result<Discriminant> {
        Discriminant::new(self.delta())
    }

    pub fn evaluate(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    /// The improperly equivalent opposite (a, -b, c); inverse class.
    pub fn opposite(&self) -> QuadraticForm {
        QuadraticForm {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
        }
    }

    /// Substitute (x, y) <- m(x, y).  Preserves discriminant and primitivity.
    pub fn apply_map(&self, m: &UnimodularMap) -> QuadraticForm {
        let a = self.evaluate(&m.p, &m.r);
        let c = self.evaluate(&m.q, &m.s);
        let b = BigInt::from(2) * (&self.a * &m.p * &m.q + &self.c * &m.r * &m.s)
            + &self.b * (&m.p * &m.s + &m.q * &m.r);
        QuadraticForm { a, b, c }
    }

    pub fn is_reduced(&self) -> bool {
        let delta = self.delta();
        if delta.is_negative() {
            // |b| <= a <= c, with b >= 0 in the two boundary cases.
            let ok = self.b.abs() <= self.a && self.a <= self.c;
            if !ok {
                return false;
            }
            if (self.a == self.c || self.b.abs() == self.a) && self.b.is_negative() {
                return false;
            }
            true
        } else {
            // 0 < b < sqrt(delta) and sqrt(delta) - b < 2|a| < sqrt(delta) + b,
            // decided by exact integer comparisons.
            if !self.b.is_positive() || &self.b * &self.b >= delta {
                return false;
            }
            let two_abs_a = BigInt::from(2) * self.a.abs();
            let hi = &two_abs_a + &self.b;
            if &hi * &hi <= delta {
                return false;
            }
            let lo = &two_abs_a - &self.b;
            lo.is_negative() || lo.is_zero() || &lo * &lo < delta
        }
    }

    /// Gauss reduction.  Returns (g, m) with self o m = g, where o is
    /// substitution; m is proper (determinant +1).
    pub fn reduce(&self) -> Result<(QuadraticForm, UnimodularMap)> {
        let delta = self.delta();
        if delta.is_negative() {
            self.reduce_definite()
        } else {
            Ok(self.reduce_indefinite(&delta))
        }
    }

    fn reduce_definite(&self) -> Result<(QuadraticForm, UnimodularMap)> {
        if self.a.is_negative() {
            return Err(Error::InvalidArgument(format!(
                "{self} is negative definite; only positive definite forms are handled"
            )));
        }
        let mut f = self.clone();
        let mut m = UnimodularMap::identity();
        loop {
            // Normalize: -a < b <= a.
            let two_a = BigInt::from(2) * &f.a;
            let k = (&f.a - &f.b).div_floor(&two_a);
            if !k.is_zero() {
                let t = UnimodularMap::translation(&k);
                f = f.apply_map(&t);
                m = m.mul(&t);
            }
            if f.a > f.c {
                let s = UnimodularMap::rho(&BigInt::zero());
                f = f.apply_map(&s);
                m = m.mul(&s);
            } else {
                break;
            }
        }
        // Boundary normalization: non-negative center coefficient when
        // a = c or |b| = a.
        if f.b.is_negative() {
            if f.a == f.c {
                let s = UnimodularMap::rho(&BigInt::zero());
                f = f.apply_map(&s);
                m = m.mul(&s);
            } else if -&f.b == f.a {
                let t = UnimodularMap::translation(&BigInt::one());
                f = f.apply_map(&t);
                m = m.mul(&t);
            }
        }
        debug_assert!(f.is_reduced());
        Ok((f, m))
    }

    fn reduce_indefinite(&self, delta: &BigInt) -> (QuadraticForm, UnimodularMap) {
        let mut f = self.clone();
        let mut m = UnimodularMap::identity();
        while !f.is_reduced() {
            let (g, step) = f.rho_step(delta);
            f = g;
            m = m.mul(&step);
        }
        (f, m)
    }

    /// One step of the reduction chain for indefinite forms:
    /// (a, b, c) -> (c, b', (b'^2 - delta)/(4c)) with b' = -b mod 2c picked
    /// in the standard window.
    pub(crate) fn rho_step(&self, delta: &BigInt) -> (QuadraticForm, UnimodularMap) {
        let s = isqrt(delta);
        let c_abs = self.c.abs();
        let two_c = BigInt::from(2) * &c_abs;
        // b' = -b (mod 2|c|), shifted into the target window.
        let base = (-&self.b).mod_floor(&two_c);
        let b_new = if c_abs > s {
            // window (-|c|, |c|]
            if base > c_abs {
                base - &two_c
            } else {
                base
            }
        } else {
            // window (sqrt(delta) - 2|c|, sqrt(delta))
            let lo = &s + 1u32 - &two_c;
            let shift = (&lo - &base).div_ceil(&two_c);
            base + shift * &two_c
        };
        let k = (&b_new + &self.b).div_floor(&(BigInt::from(2) * &self.c));
        let step = UnimodularMap::rho(&k);
        let g = self.apply_map(&step);
        debug_assert_eq!(g.b, b_new);
        (g, step)
    }

    /// The rho-cycle of a reduced indefinite form, starting at self.
    pub fn cycle(&self) -> Result<Vec<QuadraticForm>> {
        let delta = self.delta();
        if delta.is_negative() {
            return Err(Error::InvalidArgument("cycles are defined for positive discriminant".into()));
        }
        if !self.is_reduced() {
            return Err(Error::InvalidArgument(format!("{self} is not reduced")));
        }
        let mut out = vec![self.clone()];
        let mut f = self.rho_step(&delta).0;
        while f != *self {
            out.push(f.clone());
            f = f.rho_step(&delta).0;
        }
        Ok(out)
    }
}

/// Gauss composition output: the composed form plus the 2x4 bilinear map
/// sending (x1*x2, x1*y2, y1*x2, y1*y2) to (x3, y3).
#[derive(Debug, Clone)]
pub struct Composition {
    pub form: QuadraticForm,
    pub matrix: [[BigInt; 4]; 2],
}

impl Composition {
    pub fn apply(&self, x1: &BigInt, y1: &BigInt, x2: &BigInt, y2: &BigInt) -> (BigInt, BigInt) {
        let prods = [x1 * x2, x1 * y2, y1 * x2, y1 * y2];
        let dot = |row: &[BigInt; 4]| -> BigInt {
            row.iter().zip(prods.iter()).map(|(a, b)| a * b).sum()
        };
        (dot(&self.matrix[0]), dot(&self.matrix[1]))
    }
}

/// Arndt composition of two forms of equal discriminant.
pub fn compose(f1: &QuadraticForm, f2: &QuadraticForm) -> Result<Composition> {
    let delta = f1.delta();
    if delta != f2.delta() {
        return Err(Error::Mismatch(format!(
            "discriminants differ: {} vs {}",
            delta,
            f2.delta()
        )));
    }
    let (a1, b1) = (&f1.a, &f1.b);
    let (a2, b2) = (&f2.a, &f2.b);
    let beta = (b1 + b2) / 2;
    // n = gcd(a1, a2, beta) with Bezout coefficients from two chained
    // extended-gcd steps: n = t*a1 + u*a2 + v*beta.
    let (g1, t0, u0) = ext_gcd(a1, a2);
    let (n, w, v) = ext_gcd(&g1, &beta);
    let t = &w * t0;
    let u = &w * u0;
    let b_num = a1 * b2 * &t + &u * a2 * b1 + &v * ((b1 * b2 + &delta) / 2);
    let b_raw = exact_div(&b_num, &n, "composition B")?;
    let a3 = exact_div(&(a1 * a2), &(&n * &n), "composition a3")?;
    // Translate B into (-a3, a3] to keep the output small; the bilinear
    // matrix below is computed from the translated B so the identity holds.
    let two_a3 = BigInt::from(2) * &a3;
    let mut b3 = b_raw.mod_floor(&two_a3);
    if b3 > a3 {
        b3 -= &two_a3;
    }
    let c3 = exact_div(&(&b3 * &b3 - &delta), &(BigInt::from(4) * &a3), "composition c3")?;
    let form = QuadraticForm::new(a3.clone(), b3.clone(), c3)?;

    let m00 = n.clone();
    let m01 = exact_div(&((b2 - &b3) * &n), &(BigInt::from(2) * a2), "output map m01")?;
    let m02 = exact_div(&((b1 - &b3) * &n), &(BigInt::from(2) * a1), "output map m02")?;
    let m03 = exact_div(
        &((b1 * b2 + &delta - &b3 * (b1 + b2)) * &n),
        &(BigInt::from(4) * a1 * a2),
        "output map m03",
    )?;
    let m10 = BigInt::zero();
    let m11 = exact_div(a1, &n, "output map m11")?;
    let m12 = exact_div(a2, &n, "output map m12")?;
    let m13 = exact_div(&(b1 + b2), &(BigInt::from(2) * &n), "output map m13")?;
    Ok(Composition {
        form,
        matrix: [[m00, m01, m02, m03], [m10, m11, m12, m13]],
    })
}

fn exact_div(num: &BigInt, den: &BigInt, what: &str) -> Result<BigInt> {
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::InvalidArgument(format!("{what}: {num} not divisible by {den}")))
    }
}

/// All reduced class representatives, principal class first.  For negative
/// discriminants these are the unique reduced forms; for positive ones, one
/// representative per rho-cycle.
pub fn enumerate_classes(d: &Discriminant) -> Vec<QuadraticForm> {
    let delta = d.delta();
    if delta.is_negative() {
        enumerate_definite(delta)
    } else {
        enumerate_indefinite(d)
    }
}

fn enumerate_definite(delta: &BigInt) -> Vec<QuadraticForm> {
    let mut out = Vec::new();
    let bmax = isqrt(&(delta.abs() / 3u32));
    let mut b = if delta.is_odd() { BigInt::one() } else { BigInt::zero() };
    while b <= bmax {
        let m4 = (&b * &b - delta) / 4u32;
        // a runs over divisors of (b^2 - delta)/4 with b <= a <= c.
        let mut a = if b.is_zero() { BigInt::one() } else { b.clone() };
        while &a * &a <= m4 {
            if m4.is_multiple_of(&a) {
                let c = &m4 / &a;
                if a.gcd(&b).gcd(&c).is_one() {
                    let f = QuadraticForm { a: a.clone(), b: b.clone(), c: c.clone() };
                    // b > 0 contributes the opposite form too, except in the
                    // boundary cases where both are the same class.
                    if b.is_positive() && b < a && a < c {
                        out.push(f.opposite());
                    }
                    out.push(f);
                }
            }
            a += 1u32;
        }
        b += 2u32;
    }
    sort_principal_first(&mut out);
    out
}

fn sort_principal_first(forms: &mut Vec<QuadraticForm>) {
    forms.sort_by_key(|f| (f.a.clone(), f.b.clone(), f.c.clone()));
    if let Some(pos) = forms.iter().position(|f| f.a.is_one()) {
        let principal = forms.remove(pos);
        forms.insert(0, principal);
    }
}

fn enumerate_indefinite(d: &Discriminant) -> Vec<QuadraticForm> {
    let delta = d.delta();
    let s = isqrt(delta);
    let mut reduced = Vec::new();
    let mut b = if delta.is_odd() { BigInt::one() } else { BigInt::from(2) };
    while b <= s {
        let m4 = (delta - &b * &b) / 4u32; // = -a*c > 0
        let mut a = BigInt::one();
        while &a * &a <= m4 {
            if m4.is_multiple_of(&a) {
                let c = -(&m4 / &a);
                for (aa, cc) in [(a.clone(), c.clone()), (-&c, -&a)] {
                    for sign in [1i64, -1] {
                        let cand = QuadraticForm {
                            a: &aa * BigInt::from(sign),
                            b: b.clone(),
                            c: &cc * BigInt::from(sign),
                        };
                        if cand.a.gcd(&cand.b).gcd(&cand.c).is_one() && cand.is_reduced() {
                            reduced.push(cand);
                        }
                    }
                }
            }
            a += 1u32;
        }
        b += 2u32;
    }
    reduced.sort_by_key(|f| (f.a.clone(), f.b.clone(), f.c.clone()));
    reduced.dedup();

    // Partition into rho-cycles; one representative each.
    let mut reps: Vec<QuadraticForm> = Vec::new();
    let mut seen: std::collections::HashSet<QuadraticForm> = std::collections::HashSet::new();
    for f in &reduced {
        if seen.contains(f) {
            continue;
        }
        let cycle = f.cycle().expect("reduced form has a cycle");
        for g in &cycle {
            seen.insert(g.clone());
        }
        reps.push(f.clone());
    }
    // Principal cycle first: the one reached by reducing the norm form.
    let principal = d.norm_form().reduce().unwrap().0;
    let mut ordered = Vec::with_capacity(reps.len());
    let mut rest = Vec::new();
    for rep in reps {
        let cyc = rep.cycle().unwrap();
        if cyc.contains(&principal) {
            ordered.push(rep);
        } else {
            rest.push(rep);
        }
    }
    ordered.extend(rest);
    ordered
}

/// A map transporting f to g (f o map = g) when the forms are equivalent,
/// together with a properness flag.  Proper maps are preferred.
pub fn equivalence_map(
    f: &QuadraticForm,
    g: &QuadraticForm,
) -> Result<Option<(UnimodularMap, bool)>> {
    let delta = f.delta();
    if delta != g.delta() {
        return Err(Error::Mismatch("discriminants differ".into()));
    }
    if let Some(m) = proper_map(f, g, &delta)? {
        return Ok(Some((m, true)));
    }
    // Improper: compare the mirror image f(x, -y) with g.
    let mirror = UnimodularMap::mirror();
    let fm = f.apply_map(&mirror);
    if let Some(m) = proper_map(&fm, g, &delta)? {
        return Ok(Some((mirror.mul(&m), false)));
    }
    Ok(None)
}

fn proper_map(f: &QuadraticForm, g: &QuadraticForm, delta: &BigInt) -> Result<Option<UnimodularMap>> {
    let (rf, mf) = f.reduce()?;
    let (rg, mg) = g.reduce()?;
    if delta.is_negative() {
        if rf == rg {
            return Ok(Some(mf.mul(&mg.inverse())));
        }
        return Ok(None);
    }
    // Walk g's cycle from rg looking for rf.
    let mut cur = rg.clone();
    let mut walk = UnimodularMap::identity();
    loop {
        if cur == rf {
            // f o mf = rf = rg o walk = g o (mg * walk)
            // => f o (mf * walk^-1 * mg^-1) = g
            return Ok(Some(mf.mul(&walk.inverse()).mul(&mg.inverse())));
        }
        let (next, step) = cur.rho_step(delta);
        walk = walk.mul(&step);
        cur = next;
        if cur == rg {
            return Ok(None);
        }
    }
}
