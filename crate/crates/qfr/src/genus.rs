//! Genus theory: Jacobi character systems, signatures of integers and of
//! form classes, and the equal partition of classes into genera.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::jacobi_symbol;
use crate::error::{Error, Result};
use crate::forms::{enumerate_classes, Discriminant, QuadraticForm};

/// The extra character assigned when D = 2, 3 mod 4, keyed by 4D mod 16/32.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChiOne {
    /// (-1 | |m|) * sgn(m), for 4D = 12 mod 16
    MinusOneSgn,
    /// (2 | |m|), for 4D = 8 mod 32
    Two,
    /// (-2 | |m|) * sgn(m), for 4D = 24 mod 32
    MinusTwoSgn,
}

/// The Jacobi characters of a fundamental discriminant: chi_1 first when
/// present, then one character per odd prime divisor of D, ascending.
#[derive(Debug, Clone)]
pub struct CharacterSystem {
    disc: Discriminant,
    chi1: Option<ChiOne>,
    odd_primes: Vec<BigInt>,
}

impl CharacterSystem {
    pub fn chi1(&self) -> Option<ChiOne> {
        self.chi1
    }

    pub fn odd_primes(&self) -> &[BigInt] {
        &self.odd_primes
    }

    pub fn len(&self) -> usize {
        self.odd_primes.len() + usize::from(self.chi1.is_some())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Vector of +-1 character values.
pub type GenusSignature = Vec<i32>;

pub fn signature_string(sig: &GenusSignature) -> String {
    sig.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
}

/// Assemble the character system of a fundamental discriminant.
pub fn character_system(d: &Discriminant) -> Result<CharacterSystem> {
    if !d.is_fundamental() {
        return Err(Error::NonFundamental(format!(
            "character systems need a fundamental discriminant, got {}",
            d.delta()
        )));
    }
    let dd = d.d_field();
    let chi1 = if d.delta().is_odd() {
        None
    } else {
        let four_d = BigInt::from(4) * dd;
        let m16 = four_d.mod_floor(&BigInt::from(16));
        let m32 = four_d.mod_floor(&BigInt::from(32));
        if m16 == BigInt::from(12) {
            Some(ChiOne::MinusOneSgn)
        } else if m32 == BigInt::from(8) {
            Some(ChiOne::Two)
        } else if m32 == BigInt::from(24) {
            Some(ChiOne::MinusTwoSgn)
        } else {
            return Err(Error::Unsupported(format!("no chi_1 rule for 4D = {four_d}")));
        }
    };
    let mut odd_primes = Vec::new();
    let mut m = dd.abs();
    while m.is_even() {
        m /= 2u32;
    }
    let mut p = BigInt::from(3);
    while &p * &p <= m {
        if m.is_multiple_of(&p) {
            odd_primes.push(p.clone());
            while m.is_multiple_of(&p) {
                m /= &p;
            }
        }
        p += 2u32;
    }
    if m > BigInt::from(2) {
        odd_primes.push(m);
    }
    odd_primes.sort();
    Ok(CharacterSystem { disc: d.clone(), chi1, odd_primes })
}

fn eval_chi1(rule: ChiOne, m: &BigInt) -> Result<i32> {
    let abs = m.abs();
    let sgn = if m.is_negative() { -1 } else { 1 };
    Ok(match rule {
        ChiOne::MinusOneSgn => jacobi_symbol(&-BigInt::one(), &abs)? * sgn,
        ChiOne::Two => jacobi_symbol(&BigInt::from(2), &abs)?,
        ChiOne::MinusTwoSgn => jacobi_symbol(&BigInt::from(-2), &abs)? * sgn,
    })
}

/// Character values of an integer coprime to 2D (m > 0 when D < 0).
pub fn signature_of_int(m: &BigInt, d: &Discriminant) -> Result<GenusSignature> {
    let system = character_system(d)?;
    signature_with_system(m, &system)
}

pub fn signature_with_system(m: &BigInt, system: &CharacterSystem) -> Result<GenusSignature> {
    let d = &system.disc;
    let two_d = BigInt::from(2) * d.d_field();
    if !m.gcd(&two_d).is_one() {
        return Err(Error::InvalidArgument(format!("{m} is not coprime to 2D")));
    }
    if d.delta().is_negative() && !m.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "negative values are not admitted for negative discriminants: {m}"
        )));
    }
    let mut sig = Vec::with_capacity(system.len());
    if let Some(rule) = system.chi1 {
        sig.push(eval_chi1(rule, m)?);
    }
    for q in &system.odd_primes {
        sig.push(jacobi_symbol(m, q)?);
    }
    Ok(sig)
}

/// Signature of a form class, from a represented value coprime to 2D.
/// Primitive forms represent such values in a small box.
pub fn class_signature(f: &QuadraticForm, d: &Discriminant) -> Result<GenusSignature> {
    let system = character_system(d)?;
    let two_d = BigInt::from(2) * d.d_field();
    for radius in 1i64..=40 {
        for x in -radius..=radius {
            for y in -radius..=radius {
                if x.abs().max(y.abs()) != radius {
                    continue;
                }
                let m = f.evaluate(&BigInt::from(x), &BigInt::from(y));
                if m.is_zero() || !m.gcd(&two_d).is_one() {
                    continue;
                }
                if d.delta().is_negative() && !m.is_positive() {
                    continue;
                }
                return signature_with_system(&m, &system);
            }
        }
    }
    Err(Error::InvalidArgument(format!(
        "no represented value coprime to 2D found for {f} within the search box"
    )))
}

/// Classes grouped by genus signature.  The groups are equal-sized and
/// exactly half of all sign patterns occur.
pub fn genus_partition(d: &Discriminant) -> Result<Vec<(GenusSignature, Vec<QuadraticForm>)>> {
    let classes = enumerate_classes(d);
    let mut groups: Vec<(GenusSignature, Vec<QuadraticForm>)> = Vec::new();
    for f in classes {
        let sig = class_signature(&f, d)?;
        match groups.iter_mut().find(|(s, _)| *s == sig) {
            Some((_, v)) => v.push(f),
            None => groups.push((sig, vec![f])),
        }
    }
    Ok(groups)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn disc(delta: i64) -> Discriminant {
        Discriminant::new(b(delta)).unwrap()
    }

    #[test]
    fn systems() {
        // D = -5: 4D = -20 = 12 mod 16
        let s = character_system(&disc(-20)).unwrap();
        assert_eq!(s.chi1(), Some(ChiOne::MinusOneSgn));
        assert_eq!(s.odd_primes(), &[b(5)]);

        // D = 82: 4D = 328 = 8 mod 32
        let s = character_system(&disc(328)).unwrap();
        assert_eq!(s.chi1(), Some(ChiOne::Two));
        assert_eq!(s.odd_primes(), &[b(41)]);

        // D = -23 = 1 mod 4: no chi_1
        let s = character_system(&disc(-23)).unwrap();
        assert_eq!(s.chi1(), None);
        assert_eq!(s.odd_primes(), &[b(23)]);

        // D = -10: 4D = -40 = 24 mod 32
        let s = character_system(&disc(-40)).unwrap();
        assert_eq!(s.chi1(), Some(ChiOne::MinusTwoSgn));

        assert!(character_system(&disc(30260)).is_err());
    }

    #[test]
    fn signatures_of_integers() {
        assert_eq!(signature_of_int(&b(73), &disc(328)).unwrap(), vec![1, 1]);
        assert_eq!(signature_of_int(&b(3), &disc(328)).unwrap(), vec![-1, -1]);
        assert_eq!(signature_of_int(&b(29), &disc(-20)).unwrap(), vec![1, 1]);
        assert_eq!(signature_of_int(&b(7), &disc(-20)).unwrap(), vec![-1, -1]);
        assert!(signature_of_int(&b(10), &disc(-20)).is_err());
        assert!(signature_of_int(&b(-7), &disc(-20)).is_err());
    }

    #[test]
    fn partition_examples() {
        let groups = genus_partition(&disc(-20)).unwrap();
        assert_eq!(groups.len(), 2);
        let principal = groups
            .iter()
            .find(|(_, v)| v.contains(&QuadraticForm::from_i64(1, 0, 5).unwrap()))
            .unwrap();
        assert_eq!(principal.0, vec![1, 1]);
        let other = groups
            .iter()
            .find(|(_, v)| v.contains(&QuadraticForm::from_i64(2, 2, 3).unwrap()))
            .unwrap();
        assert_eq!(other.0, vec![-1, -1]);

        let groups = genus_partition(&disc(328)).unwrap();
        assert_eq!(groups.len(), 2);
        for (sig, forms) in &groups {
            assert_eq!(forms.len(), 2, "each genus of 328 has two classes");
            assert!(sig == &vec![1, 1] || sig == &vec![-1, -1]);
        }

        let groups = genus_partition(&disc(-23)).unwrap();
        assert_eq!(groups.len(), 1);
        assert_eq!(groups[0].1.len(), 3);
    }

    #[test]
    fn equal_split_realized_half() {
        // Equal genus sizes, and the realized signatures are half of all
        // sign patterns.
        for delta in [-20i64, -24, -40, -52, -15, -88, -35, -148, -51, -23, -31, -4, -8, -3, 328] {
            let d = disc(delta);
            let groups = genus_partition(&d).unwrap();
            let sizes: Vec<usize> = groups.iter().map(|(_, v)| v.len()).collect();
            assert!(sizes.windows(2).all(|w| w[0] == w[1]), "unequal genera at {delta}");
            let nchars = character_system(&d).unwrap().len();
            let all_patterns = 1usize << nchars;
            assert_eq!(groups.len() * 2, all_patterns.max(2), "delta = {delta}");
        }
    }

    #[test]
    fn signature_well_defined_on_classes() {
        // 20 distinct represented coprime integers give identical signatures.
        for delta in [-20i64, -23, -15, 328] {
            let d = disc(delta);
            let system = character_system(&d).unwrap();
            let two_d = BigInt::from(2) * d.d_field();
            for f in enumerate_classes(&d) {
                let expect = class_signature(&f, &d).unwrap();
                let mut seen = std::collections::HashSet::new();
                'outer: for x in -25i64..=25 {
                    for y in -25i64..=25 {
                        let m = f.evaluate(&b(x), &b(y));
                        if m.is_zero() || !m.gcd(&two_d).is_one() {
                            continue;
                        }
                        if d.delta().is_negative() && !m.is_positive() {
                            continue;
                        }
                        if seen.insert(m.clone()) {
                            assert_eq!(signature_with_system(&m, &system).unwrap(), expect);
                            if seen.len() >= 20 {
                                break 'outer;
                            }
                        }
                    }
                }
                assert!(seen.len() >= 20);
            }
        }
    }

    #[test]
    fn represented_primes_carry_class_signature() {
        // Primes below 2000 found by brute-force representation carry the
        // signature of the representing class.
        let sieve = crate::arith::primes_below(2000);
        for delta in [-20i64, -23, -15] {
            let d = disc(delta);
            let system = character_system(&d).unwrap();
            let two_d = BigInt::from(2) * d.d_field();
            for f in enumerate_classes(&d) {
                let sig = class_signature(&f, &d).unwrap();
                let mut values = std::collections::HashSet::new();
                for x in -60i64..=60 {
                    for y in -60i64..=60 {
                        values.insert(f.evaluate(&b(x), &b(y)));
                    }
                }
                for &p in &sieve {
                    let bp = b(p as i64);
                    if bp.gcd(&two_d).is_one() && values.contains(&bp) {
                        assert_eq!(
                            signature_with_system(&bp, &system).unwrap(),
                            sig,
                            "p = {p}, delta = {delta}"
                        );
                    }
                }
            }
        }
    }
}
