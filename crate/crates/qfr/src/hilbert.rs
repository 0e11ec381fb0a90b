//! Class polynomial data and computation: the embedded regression tables,
//! numeric class polynomials from the j-function, splitting tests modulo p,
//! and the classification of primes into form classes.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Deserialize;

use crate::arith::{self, factor_degree_pattern_mod_p, IntPolynomial, PolyModP};
use crate::elliptic::j_at_form;
use crate::error::{Error, Result};
use crate::forms::{enumerate_classes, equivalence_map, Discriminant, QuadraticForm};
use crate::genus::{class_signature, signature_of_int, GenusSignature};
use crate::ideals::{canonicalize, QuadIdeal, QuadInt};

/// One embedded table row: discriminant, class data, class polynomial,
/// principal-power generator and Diophantine system when tabulated.
#[derive(Debug, Clone)]
pub struct HilbertPolyRecord {
    pub disc: Discriminant,
    pub h: u32,
    pub forms: Vec<QuadraticForm>,
    pub ideals: Vec<QuadIdeal>,
    /// Over Z: degree h for imaginary fields, 2h for the real record
    /// (the product of the conjugate factors over K).
    pub hilbert: IntPolynomial,
    /// Coefficients s + t*omega of the degree-h factor over K (real case).
    pub hilbert_over_k: Option<Vec<QuadInt>>,
    pub pi_a: Option<QuadInt>,
    pub system: Option<SystemSpec>,
}

/// Tabulated Diophantine system data: ell, the ideal <a, beta + omega> it
/// was built from, and the two homogeneous degree-ell coefficient lists
/// (entry i is the coefficient of x^(ell-i) y^i).
#[derive(Debug, Clone)]
pub struct SystemSpec {
    pub ell: u32,
    pub a: BigInt,
    pub beta: BigInt,
    pub u: Vec<BigInt>,
    pub v: Vec<BigInt>,
}

#[derive(Deserialize)]
struct RawTables {
    records: Vec<RawRecord>,
}

#[derive(Deserialize)]
struct RawRecord {
    #[allow(dead_code)]
    d: String,
    delta: String,
    h: u32,
    forms: Vec<[i64; 3]>,
    ideals: Vec<RawIdeal>,
    hilbert: Option<Vec<String>>,
    hilbert_over_k: Option<Vec<[String; 2]>>,
    pi: Option<[String; 2]>,
    system: Option<RawSystem>,
}

#[derive(Deserialize)]
struct RawIdeal {
    f: String,
    g: String,
}

#[derive(Deserialize)]
struct RawSystem {
    ell: u32,
    a: String,
    beta: String,
    u: Vec<String>,
    v: Vec<String>,
}

fn parse_big(s: &str) -> BigInt {
    s.parse().expect("integer literal in table data")
}

fn build_record(raw: RawRecord) -> HilbertPolyRecord {
    let disc = Discriminant::new(parse_big(&raw.delta)).expect("table discriminant");
    let forms: Vec<QuadraticForm> = raw
        .forms
        .iter()
        .map(|[a, b, c]| QuadraticForm::from_i64(*a, *b, *c).expect("table form"))
        .collect();
    let ideals: Vec<QuadIdeal> = raw
        .ideals
        .iter()
        .map(|ri| {
            canonicalize(
                &disc,
                &QuadInt { u: parse_big(&ri.f), v: BigInt::zero() },
                &QuadInt { u: parse_big(&ri.g), v: BigInt::one() },
            )
            .expect("table ideal")
        })
        .collect();
    let hilbert_over_k: Option<Vec<QuadInt>> = raw.hilbert_over_k.as_ref().map(|coeffs| {
        coeffs
            .iter()
            .map(|[s, t]| QuadInt { u: parse_big(s), v: parse_big(t) })
            .collect()
    });
    let hilbert = match (&raw.hilbert, &hilbert_over_k) {
        (Some(coeffs), _) => IntPolynomial::new(coeffs.iter().map(|s| parse_big(s)).collect()),
        (None, Some(hk)) => {
            // H = A^2 - D B^2 where the factor over K is A + B*omega.
            let a = IntPolynomial::new(hk.iter().map(|c| c.u.clone()).collect());
            let b = IntPolynomial::new(hk.iter().map(|c| c.v.clone()).collect());
            a.mul(&a).sub(&b.mul(&b).scale(disc.d_field()))
        }
        (None, None) => panic!("record without a class polynomial"),
    };
    let pi_a = raw.pi.as_ref().map(|[u, v]| QuadInt { u: parse_big(u), v: parse_big(v) });
    let system = raw.system.map(|rs| SystemSpec {
        ell: rs.ell,
        a: parse_big(&rs.a),
        beta: parse_big(&rs.beta),
        u: rs.u.iter().map(|s| parse_big(s)).collect(),
        v: rs.v.iter().map(|s| parse_big(s)).collect(),
    });
    HilbertPolyRecord { disc, h: raw.h, forms, ideals, hilbert, hilbert_over_k, pi_a, system }
}

/// The embedded dataset, or the file named by QFR_DATA when set.
pub fn dataset() -> &'static [HilbertPolyRecord] {
    static DATA: OnceLock<Vec<HilbertPolyRecord>> = OnceLock::new();
    DATA.get_or_init(|| {
        let text = match std::env::var("QFR_DATA") {
            Ok(path) => std::fs::read_to_string(&path)
                .unwrap_or_else(|e| panic!("QFR_DATA={path}: {e}")),
            Err(_) => include_str!("../data/tables.json").to_string(),
        };
        let raw: RawTables = serde_json::from_str(&text).expect("table data parses");
        raw.records.into_iter().map(build_record).collect()
    })
}

/// The embedded record for a discriminant.
pub fn lookup_table(d: &Discriminant) -> Result<&'static HilbertPolyRecord> {
    dataset()
        .iter()
        .find(|r| r.disc == *d)
        .ok_or_else(|| Error::NotInTable(d.delta().to_string()))
}

/// Monic integer class polynomial prod (x - j(tau_i)) over the reduced
/// forms, computed from the q-expansion at high precision and rounded with
/// a verified residual.  precision_digits = 0 picks the height heuristic.
pub fn compute_class_poly(d: &Discriminant, precision_digits: u32) -> Result<IntPolynomial> {
    if !d.delta().is_negative() {
        return Err(Error::InvalidArgument(
            "class polynomials are computed for negative discriminants".into(),
        ));
    }
    let abs = d.delta().abs();
    if abs > BigInt::from(1000) {
        return Err(Error::Unsupported(format!(
            "|delta| = {abs} beyond the desk-scale cap of 1000"
        )));
    }
    let forms = enumerate_classes(d);
    // Height heuristic: pi sqrt(|delta|) / ln 10 digits for the largest
    // j-value, plus headroom.
    let abs_f = abs.to_string().parse::<f64>().unwrap();
    let heuristic =
        10 + (std::f64::consts::PI * abs_f.sqrt() / std::f64::consts::LN_10).ceil() as u32;
    let mut digits = heuristic.max(precision_digits).max(16);
    for _ in 0..4 {
        match class_poly_at(d, &forms, digits) {
            Some(p) => return Ok(p),
            None => digits *= 2,
        }
    }
    Err(Error::PrecisionExceeded)
}

fn class_poly_at(d: &Discriminant, forms: &[QuadraticForm], digits: u32) -> Option<IntPolynomial> {
    use crate::elliptic::{FixedComplex, FixedReal};
    let one = FixedComplex::from_real(FixedReal::from_int(&BigInt::one(), digits));
    let mut coeffs: Vec<FixedComplex> = vec![one];
    for form in forms {
        let (j, _) = j_at_form(d, form, digits).ok()?;
        // Multiply the accumulated polynomial by (x - j).
        let mut next = vec![FixedComplex::zero(digits); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&c.mul(&j));
        }
        coeffs = next;
    }
    let mut out = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        let (re, re_ok) = c.re.round_with_check();
        let (im, im_ok) = c.im.round_with_check();
        if !re_ok || !im_ok || !im.is_zero() {
            return None;
        }
        out.push(re);
    }
    Some(IntPolynomial::new(out))
}

/// Result of testing a class polynomial modulo p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitTest {
    Pattern { fully_splits: bool, degrees: Vec<usize> },
    /// p divides the discriminant of the polynomial.
    Ramified,
}

/// Factor-degree pattern of h modulo p, with the full-split flag.
pub fn hilbert_split_test(h: &IntPolynomial, p: &BigInt) -> Result<SplitTest> {
    match factor_degree_pattern_mod_p(h, p) {
        Ok(degrees) => {
            let fully_splits =
                degrees.len() == h.degree().unwrap_or(0) && degrees.iter().all(|&d| d == 1);
            Ok(SplitTest::Pattern { fully_splits, degrees })
        }
        Err(Error::NonSquarefreeModP) => Ok(SplitTest::Ramified),
        Err(e) => Err(e),
    }
}

/// How far the classification machinery pins a prime down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassLabel {
    Principal,
    /// The unique self-reciprocal non-principal class of a cyclic group,
    /// detected by the all-quadratic splitting pattern.
    SelfReciprocalNonPrincipal,
    /// One of two mutually reciprocal classes in the genus with this
    /// signature; they represent the same primes and cannot be separated.
    ReciprocalPair(GenusSignature),
    /// The unique class of the genus with this signature.
    GenusOnly(GenusSignature),
}

/// The class polynomial over Z for classification: the embedded record when
/// present, otherwise computed (negative discriminants only).
pub fn class_poly_for(d: &Discriminant) -> Result<IntPolynomial> {
    match lookup_table(d) {
        Ok(rec) => Ok(rec.hilbert.clone()),
        Err(_) if d.delta().is_negative() => compute_class_poly(d, 0),
        Err(e) => Err(e),
    }
}


/// Reduce the degree-h factor over K modulo a split prime: omega maps to
/// (t + r)/2 where r is a square root of delta mod p.  Both conjugate
/// primes are tried; the one giving a squarefree reduction is used (the
/// reductions can degenerate at index divisors of the defining polynomial,
/// and the two Frobenius elements have the same cycle pattern).
fn k_factor_mod_p(hk: &[QuadInt], d: &Discriminant, p: &BigInt) -> Result<IntPolynomial> {
    let r = arith::sqrt_mod_prime(&d.delta().mod_floor(p), p)?;
    let inv2 = arith::mod_inv(&BigInt::from(2), p).expect("p odd");
    let mut first = None;
    for root in [r.clone(), p - &r] {
        let omega = ((d.omega_trace() + root) * &inv2).mod_floor(p);
        let poly = IntPolynomial::new(
            hk.iter().map(|c| (&c.u + &c.v * &omega).mod_floor(p)).collect(),
        );
        let fp = PolyModP::from_int_poly(&poly, p);
        let fpd = fp.derivative();
        if !fpd.is_zero() && fp.gcd(&fpd).degree() == Some(0) {
            return Ok(poly);
        }
        first.get_or_insert(poly);
    }
    Ok(first.expect("two candidate roots"))
}

fn is_self_inverse(f: &QuadraticForm) -> Result<bool> {
    Ok(matches!(equivalence_map(f, &f.opposite())?, Some((_, true))))
}

/// Classify which form class represents p, to the resolution the class
/// number allows (h in {1, 2, 3, 4, 6}).
pub fn classify_prime(p: &BigInt, d: &Discriminant) -> Result<ClassLabel> {
    if p.is_even() || !arith::is_probable_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
    }
    match arith::jacobi_symbol(&d.delta().mod_floor(p), p)? {
        -1 => return Err(Error::NotRepresentable),
        0 => {
            return Err(Error::InvalidArgument(format!(
                "{p} is ramified: classification needs p coprime to 2*delta"
            )))
        }
        _ => {}
    }
    let classes = enumerate_classes(d);
    let h = classes.len();
    if h == 1 {
        return Ok(ClassLabel::Principal);
    }
    let sig = signature_of_int(p, d)?;
    let principal_sig = class_signature(&classes[0], d)?;
    // The degree-h splitting pattern that drives the finer separation.  For
    // an imaginary field this is the class polynomial over Z; for the real
    // record it is the degree-h factor over K reduced modulo a prime above
    // p (omega goes to a root of delta mod p), which avoids the repeated
    // factors that h * conj(h) over Q picks up at primes where the two
    // conjugate factors collide.
    let split_pattern = || -> Result<Vec<usize>> {
        let poly = match lookup_table(d) {
            Ok(rec) => match &rec.hilbert_over_k {
                Some(hk) => k_factor_mod_p(hk, d, p)?,
                None => rec.hilbert.clone(),
            },
            Err(_) => class_poly_for(d)?,
        };
        match hilbert_split_test(&poly, p)? {
            SplitTest::Pattern { degrees, .. } => Ok(degrees),
            SplitTest::Ramified => Err(Error::InvalidArgument(format!(
                "{p} is ramified in the class polynomial"
            ))),
        }
    };
    match h {
        2 => {
            if sig == principal_sig {
                Ok(ClassLabel::Principal)
            } else {
                Ok(ClassLabel::GenusOnly(sig))
            }
        }
        3 => {
            let degrees = split_pattern()?;
            if degrees.iter().all(|&k| k == 1) {
                Ok(ClassLabel::Principal)
            } else {
                Ok(ClassLabel::ReciprocalPair(sig))
            }
        }
        4 => {
            let ambiguous = classes
                .iter()
                .map(is_self_inverse)
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .filter(|&b| b)
                .count();
            if ambiguous == 4 {
                // Vierergruppe: four genera, one class each.
                if sig == principal_sig {
                    Ok(ClassLabel::Principal)
                } else {
                    Ok(ClassLabel::GenusOnly(sig))
                }
            } else {
                // Cyclic: the splitting pattern decides.
                let degrees = split_pattern()?;
                if degrees.iter().all(|&k| k == 1) {
                    Ok(ClassLabel::Principal)
                } else if degrees.iter().all(|&k| k == 2) {
                    Ok(ClassLabel::SelfReciprocalNonPrincipal)
                } else if degrees.iter().all(|&k| k == 4) {
                    Ok(ClassLabel::ReciprocalPair(sig))
                } else {
                    Err(Error::CurveInconsistency(format!(
                        "unexpected splitting pattern {degrees:?} for p = {p}"
                    )))
                }
            }
        }
        6 => {
            let degrees = split_pattern()?;
            if sig == principal_sig {
                if degrees.iter().all(|&k| k == 1) {
                    Ok(ClassLabel::Principal)
                } else {
                    Ok(ClassLabel::ReciprocalPair(sig))
                }
            } else if degrees.iter().all(|&k| k == 2) {
                Ok(ClassLabel::SelfReciprocalNonPrincipal)
            } else {
                Ok(ClassLabel::ReciprocalPair(sig))
            }
        }
        _ => Err(Error::Unsupported(format!(
            "classification resolves h in {{1,2,3,4,6}}, got h = {h}"
        ))),
    }
}

/// Sufficient principality test for indefinite forms: true when the class
/// polynomial over Q fully splits modulo every prime factor of lcm(a, c).
/// One-sided: false only means not proven principal.
pub fn is_principal_via_hilbert(f: &QuadraticForm, factor_budget: u64) -> Result<bool> {
    let delta = f.delta();
    if !delta.is_positive() {
        return Err(Error::InvalidArgument("this test is for positive discriminants".into()));
    }
    if f.a().abs().is_one() || f.c().abs().is_one() {
        return Ok(true);
    }
    let d = Discriminant::new(delta)?;
    let record = lookup_table(&d)?;
    let target = f.a().abs().lcm(&f.c().abs());
    let primes = factor_with_budget(&target, factor_budget)?;
    for q in &primes {
        if *q == BigInt::from(2) {
            if !fully_splits_mod_2(&record.hilbert) {
                return Ok(false);
            }
            continue;
        }
        match hilbert_split_test(&record.hilbert, q)? {
            SplitTest::Pattern { fully_splits: true, .. } => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

fn fully_splits_mod_2(h: &IntPolynomial) -> bool {
    let two = BigInt::from(2);
    let hm = PolyModP::from_int_poly(h, &two);
    let deg = match hm.degree() {
        Some(d) => d,
        None => return false,
    };
    if deg != h.degree().unwrap_or(0) || deg > 2 {
        // Only x and x + 1 exist as distinct linear factors over F_2.
        return false;
    }
    match deg {
        1 => true,
        2 => {
            // must be exactly x(x + 1) = x^2 + x
            hm.coeff(0).is_zero() && hm.coeff(1).is_one()
        }
        _ => false,
    }
}

fn factor_with_budget(n: &BigInt, budget: u64) -> Result<Vec<BigInt>> {
    let mut n = n.clone();
    let mut primes = Vec::new();
    let push = |p: BigInt, primes: &mut Vec<BigInt>| {
        if !primes.contains(&p) {
            primes.push(p);
        }
    };
    for d in std::iter::once(2u64).chain((3..budget.max(3)).step_by(2)) {
        let bd = BigInt::from(d);
        if &bd * &bd > n {
            break;
        }
        while n.is_multiple_of(&bd) {
            n /= &bd;
            push(bd.clone(), &mut primes);
        }
    }
    if n.is_one() {
        return Ok(primes);
    }
    if arith::is_probable_prime(&n) {
        push(n, &mut primes);
        return Ok(primes);
    }
    Err(Error::FactorBudgetExceeded)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::ideal_from_form;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn disc(delta: i64) -> Discriminant {
        Discriminant::new(b(delta)).unwrap()
    }

    #[test]
    fn dataset_loads_and_is_consistent() {
        let data = dataset();
        assert_eq!(data.len(), 9 + 18 + 16 + 1);
        for rec in data {
            // Degree of the polynomial over Z: h for imaginary, 2h for real.
            let expect = if rec.disc.delta().is_negative() {
                rec.h as usize
            } else {
                2 * rec.h as usize
            };
            assert_eq!(rec.hilbert.degree(), Some(expect), "delta = {}", rec.disc.delta());
            // Forms match their tabulated ideals through the dictionary,
            // up to conjugate orientation (the tables list one member of
            // each reciprocal pair, not always the same one).
            for (form, ideal) in rec.forms.iter().zip(rec.ideals.iter()) {
                let from_form = ideal_from_form(form).unwrap();
                let ok = &from_form == ideal || from_form.conjugate().unwrap() == *ideal;
                assert!(ok, "delta = {}: {form} vs {ideal}", rec.disc.delta());
            }
            // Tabulated pi has norm +-a^ell.
            if let (Some(pi), Some(sys)) = (&rec.pi_a, &rec.system) {
                let n = pi.norm(&rec.disc);
                let a_ell = sys.a.pow(sys.ell);
                assert!(n == a_ell || n == -&a_ell, "delta = {}", rec.disc.delta());
            }
        }
    }

    #[test]
    fn lookup_examples() {
        let rec = lookup_table(&disc(-20)).unwrap();
        assert_eq!(rec.h, 2);
        assert_eq!(rec.hilbert, IntPolynomial::new(vec![b(-681472000), b(-1264000), b(1)]));
        let rec = lookup_table(&disc(-23)).unwrap();
        assert_eq!(rec.h, 3);
        assert_eq!(rec.hilbert.coeff(2), b(3491750));
        let rec = lookup_table(&disc(328)).unwrap();
        assert_eq!(rec.h, 4);
        assert_eq!(rec.hilbert.degree(), Some(8));
        assert!(lookup_table(&disc(-47)).is_err());
    }

    #[test]
    fn compute_small_class_polys() {
        let p = compute_class_poly(&disc(-4), 0).unwrap();
        assert_eq!(p, IntPolynomial::new(vec![b(-1728), b(1)]));
        let p = compute_class_poly(&disc(-20), 0).unwrap();
        assert_eq!(p, lookup_table(&disc(-20)).unwrap().hilbert);
        let p = compute_class_poly(&disc(-15), 0).unwrap();
        assert_eq!(p, IntPolynomial::new(vec![b(-121287375), b(191025), b(1)]));
        assert!(compute_class_poly(&disc(328), 0).is_err());
    }

    #[test]
    fn split_tests() {
        let h23 = lookup_table(&disc(-23)).unwrap().hilbert.clone();
        // 59 = 5^2 + 5*2 + 6*4 is principal: fully splits.
        match hilbert_split_test(&h23, &b(59)).unwrap() {
            SplitTest::Pattern { fully_splits, degrees } => {
                assert!(fully_splits);
                assert_eq!(degrees, vec![1, 1, 1]);
            }
            _ => panic!("unexpected ramification"),
        }
        // 13 is represented by the non-principal pair: irreducible.
        match hilbert_split_test(&h23, &b(13)).unwrap() {
            SplitTest::Pattern { fully_splits, degrees } => {
                assert!(!fully_splits);
                assert_eq!(degrees, vec![3]);
            }
            _ => panic!("unexpected ramification"),
        }
        // Linear polynomials always split fully.
        let lin = IntPolynomial::new(vec![b(-1728), b(1)]);
        match hilbert_split_test(&lin, &b(101)).unwrap() {
            SplitTest::Pattern { fully_splits, .. } => assert!(fully_splits),
            _ => panic!(),
        }
        // 23 ramifies in the delta = -23 polynomial.
        assert_eq!(hilbert_split_test(&h23, &b(23)).unwrap(), SplitTest::Ramified);
    }

    #[test]
    fn classify_examples() {
        let d = disc(328);
        assert_eq!(classify_prime(&b(73), &d).unwrap(), ClassLabel::Principal);
        assert_eq!(classify_prime(&b(23), &d).unwrap(), ClassLabel::SelfReciprocalNonPrincipal);
        assert_eq!(classify_prime(&b(3), &d).unwrap(), ClassLabel::ReciprocalPair(vec![-1, -1]));
        // Inert prime.
        assert!(matches!(classify_prime(&b(7), &d), Err(Error::NotRepresentable)));
        // h = 2 via signature.
        let d20 = disc(-20);
        assert_eq!(classify_prime(&b(29), &d20).unwrap(), ClassLabel::Principal);
        assert_eq!(classify_prime(&b(7), &d20).unwrap(), ClassLabel::GenusOnly(vec![-1, -1]));
        // h = 3 via splitting.
        let d23 = disc(-23);
        assert_eq!(classify_prime(&b(59), &d23).unwrap(), ClassLabel::Principal);
        assert_eq!(classify_prime(&b(13), &d23).unwrap(), ClassLabel::ReciprocalPair(vec![1]));
        // h = 5 refused.
        assert!(matches!(classify_prime(&b(3), &disc(-47)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn principal_via_hilbert_examples() {
        assert!(is_principal_via_hilbert(&QuadraticForm::from_i64(1, 0, -82).unwrap(), 10_000)
            .unwrap());
        assert!(!is_principal_via_hilbert(&QuadraticForm::from_i64(2, 0, -41).unwrap(), 10_000)
            .unwrap());
        assert!(!is_principal_via_hilbert(&QuadraticForm::from_i64(3, 14, -11).unwrap(), 10_000)
            .unwrap());
        // Cross-check against the continued-fraction test.
        for f in [
            QuadraticForm::from_i64(2, 0, -41).unwrap(),
            QuadraticForm::from_i64(3, 2, -27).unwrap(),
        ] {
            assert!(!crate::contfrac::is_principal_cf(&f).unwrap());
        }
    }

    #[test]
    fn split_iff_principal_representation() {
        // For tabulated negative discriminants with h in {1, 2, 3}, a split
        // prime is represented by the principal form exactly when the class
        // polynomial fully splits mod p.
        let primes = crate::arith::primes_below(500);
        for rec in dataset() {
            if !rec.disc.delta().is_negative() || rec.h > 3 {
                continue;
            }
            let principal = &rec.forms[0];
            let (pa, pb, pc) = (
                i64::try_from(principal.a()).unwrap(),
                i64::try_from(principal.b()).unwrap(),
                i64::try_from(principal.c()).unwrap(),
            );
            let mut represented = std::collections::HashSet::new();
            for x in -1000i64..=1000 {
                for y in -40i64..=40 {
                    let v = pa * x * x + pb * x * y + pc * y * y;
                    if v > 0 && v < 500 {
                        represented.insert(v);
                    }
                }
            }
            let mut tested = 0;
            for &p in &primes {
                if tested >= 25 {
                    break;
                }
                if p == 2 {
                    continue;
                }
                let bp = b(p as i64);
                if crate::arith::jacobi_symbol(&rec.disc.delta().mod_floor(&bp), &bp).unwrap() != 1
                {
                    continue;
                }
                let fully = match hilbert_split_test(&rec.hilbert, &bp).unwrap() {
                    SplitTest::Pattern { fully_splits, .. } => fully_splits,
                    SplitTest::Ramified => continue,
                };
                assert_eq!(
                    fully,
                    represented.contains(&(p as i64)),
                    "delta = {}, p = {p}",
                    rec.disc.delta()
                );
                tested += 1;
            }
            assert!(tested >= 10, "too few split primes under 500 for delta = {}", rec.disc.delta());
        }
    }
}