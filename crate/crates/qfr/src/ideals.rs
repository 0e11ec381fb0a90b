//! Ideal arithmetic in the maximal order of Q(sqrt(D)) and the two-way
//! dictionary between ideal classes and form classes.
//!
//! Ideals are kept in the canonical shape <e><f, g + omega> with 0 <= g < f,
//! computed by Hermite reduction of the Z-module spanned by the generators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::ext_gcd;
use crate::error::{Error, Result};
use crate::forms::{equivalence_map, Discriminant, QuadraticForm};

/// u + v*omega in the maximal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadInt {
    pub u: BigInt,
    pub v: BigInt,
}

impl QuadInt {
    pub fn new(u: impl Into<BigInt>, v: impl Into<BigInt>) -> Self {
        QuadInt { u: u.into(), v: v.into() }
    }

    pub fn zero() -> Self {
        QuadInt::new(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn add(&self, other: &QuadInt) -> QuadInt {
        QuadInt { u: &self.u + &other.u, v: &self.v + &other.v }
    }

    pub fn mul(&self, other: &QuadInt, d: &Discriminant) -> QuadInt {
        // omega^2 = t*omega - n
        let t = d.omega_trace();
        let n = d.omega_norm();
        let cross = &self.u * &other.v + &self.v * &other.u;
        QuadInt {
            u: &self.u * &other.u - &n * &self.v * &other.v,
            v: cross + &t * &self.v * &other.v,
        }
    }

    pub fn conj(&self, d: &Discriminant) -> QuadInt {
        QuadInt {
            u: &self.u + d.omega_trace() * &self.v,
            v: -&self.v,
        }
    }

    pub fn norm(&self, d: &Discriminant) -> BigInt {
        &self.u * &self.u + d.omega_trace() * &self.u * &self.v + d.omega_norm() * &self.v * &self.v
    }

    pub fn scale(&self, k: &BigInt) -> QuadInt {
        QuadInt { u: &self.u * k, v: &self.v * k }
    }

    pub fn pow(&self, e: u32, d: &Discriminant) -> QuadInt {
        let mut acc = QuadInt::new(1, 0);
        for _ in 0..e {
            acc = acc.mul(self, d);
        }
        acc
    }
}

impl std::fmt::Display for QuadInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.v.is_zero() {
            return write!(f, "{}", self.u);
        }
        if !self.u.is_zero() {
            write!(f, "{}", self.u)?;
            if !self.v.is_negative() {
                write!(f, "+")?;
            }
        }
        if self.v == BigInt::one() {
            write!(f, "w")
        } else if self.v == -BigInt::one() {
            write!(f, "-w")
        } else {
            write!(f, "{}w", self.v)
        }
    }
}

/// Canonical ideal <e><f, g + omega> of the maximal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadIdeal {
    disc: Discriminant,
    e: BigInt,
    f: BigInt,
    g: BigInt,
}

/// Generator of a principal ideal power, with its norm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalGenerator {
    pub pi: QuadInt,
    pub norm: BigInt,
}

impl std::fmt::Display for QuadIdeal {
    fn fmt(&self, fmt: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fmt, "{};{};{}", self.e, self.f, self.g)
    }
}

impl QuadIdeal {
    pub fn discriminant(&self) -> &Discriminant {
        &self.disc
    }

    pub fn e(&self) -> &BigInt {
        &self.e
    }

    pub fn f(&self) -> &BigInt {
        &self.f
    }

    pub fn g(&self) -> &BigInt {
        &self.g
    }

    /// The unit ideal <1><1, omega>.
    pub fn unit(d: &Discriminant) -> Result<QuadIdeal> {
        canonicalize(d, &QuadInt::new(1, 0), &QuadInt::new(0, 1))
    }

    /// Z-basis (e*f, e*g + e*omega).
    pub fn basis(&self) -> (QuadInt, QuadInt) {
        (
            QuadInt { u: &self.e * &self.f, v: BigInt::zero() },
            QuadInt { u: &self.e * &self.g, v: self.e.clone() },
        )
    }

    /// Lattice index norm e^2 * f.  The |e|f convention would break norm
    /// multiplicativity for e != 1; the squared scale is the one kept
    /// integral by the form correspondence.
    pub fn norm(&self) -> BigInt {
        &self.e * &self.e * &self.f
    }

    pub fn multiply(&self, other: &QuadIdeal) -> Result<QuadIdeal> {
        if self.disc != other.disc {
            return Err(Error::Mismatch("ideals live in different fields".into()));
        }
        let (a1, b1) = self.basis();
        let (a2, b2) = other.basis();
        let d = &self.disc;
        canonicalize_gens(
            d,
            &[a1.mul(&a2, d), a1.mul(&b2, d), b1.mul(&a2, d), b1.mul(&b2, d)],
        )
    }

    pub fn pow(&self, l: u32) -> Result<QuadIdeal> {
        let mut acc = QuadIdeal::unit(&self.disc)?;
        for _ in 0..l {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    pub fn conjugate(&self) -> Result<QuadIdeal> {
        let (a, b) = self.basis();
        canonicalize(&self.disc, &a.conj(&self.disc), &b.conj(&self.disc))
    }
}

/// Canonicalize the ideal generated by two elements.
pub fn canonicalize(d: &Discriminant, a: &QuadInt, b: &QuadInt) -> Result<QuadIdeal> {
    canonicalize_gens(d, &[a.clone(), b.clone()])
}

/// Canonical form of the O-module generated by the given elements: Hermite
/// reduction of the span of {g_i, omega*g_i}.
pub fn canonicalize_gens(d: &Discriminant, gens: &[QuadInt]) -> Result<QuadIdeal> {
    if !d.is_fundamental() {
        return Err(Error::NonFundamental(format!(
            "ideal arithmetic needs a fundamental discriminant, got {}",
            d.delta()
        )));
    }
    let omega = QuadInt::new(0, 1);
    let mut vecs: Vec<QuadInt> = Vec::with_capacity(2 * gens.len());
    for g in gens {
        if !g.is_zero() {
            vecs.push(g.clone());
            vecs.push(g.mul(&omega, d));
        }
    }
    if vecs.is_empty() {
        return Err(Error::InvalidArgument("zero ideal".into()));
    }
    // Accumulate a single vector w carrying the gcd of the omega-coordinates.
    let mut w = QuadInt::zero();
    for vec in &vecs {
        if vec.v.is_zero() {
            continue;
        }
        if w.v.is_zero() {
            w = vec.clone();
            continue;
        }
        let (_, x, y) = ext_gcd(&w.v, &vec.v);
        w = QuadInt {
            u: &x * &w.u + &y * &vec.u,
            v: &x * &w.v + &y * &vec.v,
        };
    }
    if w.v.is_zero() {
        return Err(Error::InvalidArgument("zero ideal".into()));
    }
    if w.v.is_negative() {
        w = w.scale(&-BigInt::one());
    }
    let e = w.v.clone();
    // Eliminate the omega-coordinate from every generator; the rational
    // residues span f~ * Z.
    let mut f_rat = BigInt::zero();
    for vec in &vecs {
        let k = &vec.v / &e;
        let x = &vec.u - &k * &w.u;
        f_rat = f_rat.gcd(&x);
    }
    if f_rat.is_zero() {
        return Err(Error::InvalidArgument("rank-1 module is not an ideal".into()));
    }
    // Module closure guarantees these divisions are exact.
    let f = exact(&f_rat, &e, "f")?.abs();
    let g0 = exact(&w.u, &e, "g")?;
    let g = g0.mod_floor(&f);
    let check = (&g * &g + d.omega_trace() * &g + d.omega_norm()).mod_floor(&f);
    if !check.is_zero() {
        return Err(Error::InvalidArgument("module is not an ideal of the order".into()));
    }
    Ok(QuadIdeal { disc: d.clone(), e, f, g })
}

fn exact(num: &BigInt, den: &BigInt, what: &str) -> Result<BigInt> {
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::InvalidArgument(format!("canonicalize: {what} division not exact")))
    }
}

/// The primitive form attached to an ideal: the norm of a generic element
/// over the ideal norm.  The scale e drops out.
pub fn form_from_ideal(ideal: &QuadIdeal) -> Result<QuadraticForm> {
    let d = &ideal.disc;
    let b = BigInt::from(2) * &ideal.g + d.omega_trace();
    let ng = &ideal.g * &ideal.g + d.omega_trace() * &ideal.g + d.omega_norm();
    let c = &ng / &ideal.f;
    QuadraticForm::new(ideal.f.clone(), b, c)
}

/// The ideal <a, beta + omega> attached to a form with positive leading
/// coefficient, where b = 2*beta + t.
pub fn ideal_from_form(form: &QuadraticForm) -> Result<QuadIdeal> {
    if !form.a().is_positive() {
        return Err(Error::InvalidArgument(format!(
            "ideal_from_form needs a positive leading coefficient, got {form}"
        )));
    }
    let d = form.discriminant()?;
    let beta = (form.b() - d.omega_trace()) / 2;
    canonicalize(
        &d,
        &QuadInt { u: form.a().clone(), v: BigInt::zero() },
        &QuadInt { u: beta, v: BigInt::one() },
    )
}

/// Generator of I^l when that power is principal: N(pi) = norm(I)^l and
/// <pi> = I^l, returned up to unit multiple and conjugation.
pub fn ideal_power_principal_gen(ideal: &QuadIdeal, l: u32) -> Result<PrincipalGenerator> {
    let power = ideal.pow(l)?;
    principal_generator(&power)
}

/// Generator of a principal ideal, found by transporting the representation
/// of 1 through the reduction of the attached form.
pub fn principal_generator(ideal: &QuadIdeal) -> Result<PrincipalGenerator> {
    let d = &ideal.disc;
    let q = form_from_ideal(ideal)?;
    let norm_form = d.norm_form();
    let map = match equivalence_map(&q, &norm_form)? {
        Some((map, true)) => map,
        _ => return Err(Error::NotPrincipal),
    };
    // q o map = norm form, and the norm form takes 1 at (1, 0).
    let (x, y) = map.apply(&BigInt::one(), &BigInt::zero());
    debug_assert!(q.evaluate(&x, &y).is_one());
    let (b1, b2) = ideal.basis();
    let pi = QuadInt {
        u: &b1.u * &x + &b2.u * &y,
        v: &b2.v * &y,
    };
    let norm = pi.norm(d);
    debug_assert_eq!(norm, ideal.norm());
    Ok(PrincipalGenerator { pi, norm })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{compose, enumerate_classes};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn disc(delta: i64) -> Discriminant {
        Discriminant::new(b(delta)).unwrap()
    }

    fn qi(u: i64, v: i64) -> QuadInt {
        QuadInt::new(u, v)
    }

    #[test]
    fn canonicalize_examples() {
        let d = disc(-20);
        let unit = canonicalize(&d, &qi(1, 0), &qi(0, 1)).unwrap();
        assert_eq!((unit.e(), unit.f(), unit.g()), (&b(1), &b(1), &b(0)));

        // <2, sqrt(-6)> in Q(sqrt(-6))
        let d6 = disc(-24);
        let i = canonicalize(&d6, &qi(2, 0), &qi(0, 1)).unwrap();
        assert_eq!((i.e(), i.f(), i.g()), (&b(1), &b(2), &b(0)));
        assert_eq!(i.norm(), b(2));

        // <8081, 2737 + sqrt(82)>
        let d82 = disc(328);
        let i = canonicalize(&d82, &qi(8081, 0), &qi(2737, 1)).unwrap();
        assert_eq!((i.e(), i.f(), i.g()), (&b(1), &b(8081), &b(2737)));

        assert!(canonicalize(&d, &QuadInt::zero(), &QuadInt::zero()).is_err());
        assert!(canonicalize(&disc(30260), &qi(1, 0), &qi(0, 1)).is_err());
    }

    #[test]
    fn norms() {
        let d51 = disc(-51);
        let i = canonicalize(&d51, &qi(3, 0), &qi(1, 1)).unwrap();
        assert_eq!(i.norm(), b(3));
        // <2> has e = 2: norm 4, consistent with <2,w>^2 in D = -6.
        let d6 = disc(-24);
        let p2 = canonicalize(&d6, &qi(2, 0), &qi(0, 1)).unwrap();
        let sq = p2.multiply(&p2).unwrap();
        assert_eq!((sq.e(), sq.f(), sq.g()), (&b(2), &b(1), &b(0)));
        assert_eq!(sq.norm(), b(4));
    }

    #[test]
    fn multiply_examples() {
        let d6 = disc(-24);
        let p2 = canonicalize(&d6, &qi(2, 0), &qi(0, 1)).unwrap();
        // <2, sqrt(-6)>^2 = <2>: principal with generator 2.
        let gen = ideal_power_principal_gen(&p2, 2).unwrap();
        assert_eq!(gen.norm, b(4));
        assert!(gen.pi == qi(2, 0) || gen.pi == qi(-2, 0));

        // Unit ideal is the identity.
        let i = canonicalize(&d6, &qi(5, 0), &qi(1, 1)).unwrap();
        assert_eq!(i.multiply(&QuadIdeal::unit(&d6).unwrap()).unwrap(), i);

        // <2, w>^3 for D = -23 is principal with generator 2 - w.
        let d23 = disc(-23);
        let p = canonicalize(&d23, &qi(2, 0), &qi(0, 1)).unwrap();
        let gen = ideal_power_principal_gen(&p, 3).unwrap();
        assert_eq!(gen.norm, b(8));
        assert!(gen.pi == qi(2, -1) || gen.pi == qi(-2, 1), "got {:?}", gen.pi);

        // <5, 2+w>^2 for D = -115 is principal of norm 25, generator 5 up
        // to units.
        let d115 = disc(-115);
        let p5 = canonicalize(&d115, &qi(5, 0), &qi(2, 1)).unwrap();
        let gen = ideal_power_principal_gen(&p5, 2).unwrap();
        assert_eq!(gen.norm, b(25));
        assert!(gen.pi == qi(5, 0) || gen.pi == qi(-5, 0));

        // Trivial power of the unit ideal.
        let unit = QuadIdeal::unit(&d23).unwrap();
        let gen = ideal_power_principal_gen(&unit, 1).unwrap();
        assert_eq!(gen.norm, b(1));

        // Non-principal power errors.
        assert!(ideal_power_principal_gen(&p, 2).is_err());
    }

    #[test]
    fn form_ideal_examples() {
        let d5 = disc(-20);
        let unit = QuadIdeal::unit(&d5).unwrap();
        assert_eq!(form_from_ideal(&unit).unwrap(), QuadraticForm::from_i64(1, 0, 5).unwrap());

        let d6 = disc(-24);
        let p2 = canonicalize(&d6, &qi(2, 0), &qi(0, 1)).unwrap();
        assert_eq!(form_from_ideal(&p2).unwrap(), QuadraticForm::from_i64(2, 0, 3).unwrap());

        let d51 = disc(-51);
        let p3 = canonicalize(&d51, &qi(3, 0), &qi(1, 1)).unwrap();
        assert_eq!(form_from_ideal(&p3).unwrap(), QuadraticForm::from_i64(3, 3, 5).unwrap());

        assert_eq!(
            ideal_from_form(&QuadraticForm::from_i64(1, 0, 5).unwrap()).unwrap(),
            QuadIdeal::unit(&d5).unwrap()
        );
        let i = ideal_from_form(&QuadraticForm::from_i64(2, 2, 3).unwrap()).unwrap();
        assert_eq!((i.f(), i.g()), (&b(2), &b(1)));
        let i = ideal_from_form(&QuadraticForm::from_i64(2, 1, 3).unwrap()).unwrap();
        assert_eq!((i.f(), i.g()), (&b(2), &b(0)));
    }

    #[test]
    fn round_trip_all_tabled_classes() {
        for delta in [-4i64, -8, -3, -7, -11, -19, -43, -67, -163, -20, -24, -40, -52, -15, -88,
                      -35, -148, -51, -232, -91, -115, -123, -187, -235, -267, -403, -427, -23,
                      -31, -59, -83, -107, -139, -211, -283] {
            let d = disc(delta);
            for f in enumerate_classes(&d) {
                let i = ideal_from_form(&f).unwrap();
                let g = form_from_ideal(&i).unwrap();
                let m = equivalence_map(&g, &f).unwrap();
                assert!(matches!(m, Some((_, true))), "round trip failed for {f} at {delta}");
            }
        }
    }

    fn random_ideal(d: &Discriminant, rng: &mut ChaCha8Rng) -> QuadIdeal {
        loop {
            let a = qi(rng.gen_range(-30..=30), rng.gen_range(-30..=30));
            let bq = qi(rng.gen_range(-30..=30), rng.gen_range(-30..=30));
            if let Ok(i) = canonicalize(d, &a, &bq) {
                return i;
            }
        }
    }

    #[test]
    fn norm_multiplicativity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for delta in [-20i64, -24, -23, 328] {
            let d = disc(delta);
            for _ in 0..200 {
                let i = random_ideal(&d, &mut rng);
                let j = random_ideal(&d, &mut rng);
                let p = i.multiply(&j).unwrap();
                assert_eq!(p.norm(), i.norm() * j.norm());
            }
        }
    }

    #[test]
    fn principal_multiplication_preserves_class() {
        // Multiplying by a principal ideal leaves the form class unchanged.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for delta in [-20i64, -24, -23] {
            let d = disc(delta);
            for _ in 0..40 {
                let i = random_ideal(&d, &mut rng);
                let lam = loop {
                    let l = qi(rng.gen_range(-9..=9), rng.gen_range(-9..=9));
                    if !l.is_zero() {
                        break l;
                    }
                };
                let li = canonicalize(&d, &lam, &lam.mul(&qi(0, 1), &d)).unwrap();
                let prod = i.multiply(&li).unwrap();
                let f1 = form_from_ideal(&i).unwrap();
                let f2 = form_from_ideal(&prod).unwrap();
                assert!(matches!(equivalence_map(&f1, &f2).unwrap(), Some((_, true))));
            }
        }
    }

    #[test]
    fn product_matches_composition() {
        // reduce(compose(F(I), F(J))) = reduce(F(I*J))
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for delta in [-20i64, -24, -23] {
            let d = disc(delta);
            for _ in 0..60 {
                let i = random_ideal(&d, &mut rng);
                let j = random_ideal(&d, &mut rng);
                let lhs = compose(&form_from_ideal(&i).unwrap(), &form_from_ideal(&j).unwrap())
                    .unwrap()
                    .form
                    .reduce()
                    .unwrap()
                    .0;
                let rhs = form_from_ideal(&i.multiply(&j).unwrap()).unwrap().reduce().unwrap().0;
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn generator_norm_is_exact_power() {
        let d23 = disc(-23);
        let p = canonicalize(&d23, &qi(2, 0), &qi(0, 1)).unwrap();
        let gen = ideal_power_principal_gen(&p, 3).unwrap();
        assert_eq!(gen.norm, p.norm().pow(3u32));
        assert_eq!(gen.pi.norm(&d23), gen.norm);
    }
}
