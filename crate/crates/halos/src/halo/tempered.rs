//! Tempered growth: a positive halo is tempered when every element whose
//! powers are bounded by some polynomial in n is at most 1.
//!
//! The bricks are all tempered. Tropical halos are immediate: repeated
//! max-addition keeps every natural image at 1, so a polynomial bound means
//! x^n <= 1 for all n. The rationals and surds are archimedean: x > 1 makes
//! x^n outgrow any polynomial. Lexicographic products split by their first
//! factor: a tropical or trivial first factor passes the question through to
//! the second factor, while a first factor with archimedean units breaks
//! temperedness outright, because (1, a) has all its powers below (n+2, n+2)
//! on the strictly dominant first coordinate while (1, a) itself exceeds 1.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{
    halo_cmp, halo_mul, nat_to_halo, HaloDescriptor, HaloValue, Payload, UnitPayload,
};
use crate::ring::{rat, Rat};
use crate::{Error, Result};
use std::cmp::Ordering;

/// A polynomial with natural coefficients, ascending. Bounds in the tempered
/// growth condition are of this form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatPoly(Vec<u64>);

impl NatPoly {
    pub fn new(coeffs: Vec<u64>) -> Self {
        let mut c = coeffs;
        while c.last() == Some(&0) {
            c.pop();
        }
        NatPoly(c)
    }

    /// n + 2, the bound from the standard non-tempered witness.
    pub fn n_plus_two() -> Self {
        NatPoly::new(vec![2, 1])
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn eval(&self, n: u64) -> BigUint {
        let n = BigUint::from(n);
        let mut acc = BigUint::zero();
        for c in self.0.iter().rev() {
            acc = acc * &n + BigUint::from(*c);
        }
        acc
    }
}

impl fmt::Display for NatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if *c == 1 => write!(f, "n")?,
                1 => write!(f, "{c}n")?,
                _ if *c == 1 => write!(f, "n^{i}")?,
                _ => write!(f, "{c}n^{i}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TemperedVerdict {
    Tempered,
    /// witness > 1 although witness^n <= bound(n) for every n >= 1.
    NotTempered {
        witness: HaloValue,
        bound: NatPoly,
    },
    Unknown,
}

/// Structural classification of the catalog halos.
pub fn tempered_class(h: &HaloDescriptor) -> TemperedVerdict {
    match h {
        HaloDescriptor::Trivial
        | HaloDescriptor::TropicalOf(_)
        | HaloDescriptor::NonnegRationals
        | HaloDescriptor::NonnegSurds => TemperedVerdict::Tempered,
        HaloDescriptor::LexProduct(first, second) => match first.as_ref() {
            HaloDescriptor::Trivial | HaloDescriptor::TropicalOf(_) => {
                match tempered_class(second) {
                    TemperedVerdict::Tempered => TemperedVerdict::Tempered,
                    TemperedVerdict::NotTempered { witness, bound } => {
                        let lifted = HaloValue::lex_pair(HaloValue::one(first), witness)
                            .expect("component witness is nonzero");
                        TemperedVerdict::NotTempered {
                            witness: lifted,
                            bound,
                        }
                    }
                    TemperedVerdict::Unknown => TemperedVerdict::Unknown,
                }
            }
            HaloDescriptor::NonnegRationals | HaloDescriptor::NonnegSurds => {
                match unit_above_one(second) {
                    Some(u) => {
                        let witness = HaloValue::new(
                            h,
                            Payload::Unit(UnitPayload::Lex(
                                Box::new(super::one_unit(first)),
                                Box::new(u),
                            )),
                        )
                        .expect("constructed unit is valid");
                        TemperedVerdict::NotTempered {
                            witness,
                            bound: NatPoly::n_plus_two(),
                        }
                    }
                    // second factor is trivial-like: pairs (r, 1) behave as r
                    None => tempered_class(first),
                }
            }
            HaloDescriptor::LexProduct(_, _) => TemperedVerdict::Unknown,
        },
    }
}

/// Some unit strictly above 1, if the halo has one.
fn unit_above_one(h: &HaloDescriptor) -> Option<UnitPayload> {
    match h {
        HaloDescriptor::Trivial => None,
        HaloDescriptor::TropicalOf(g) => {
            if g.rank() == 0 {
                return None;
            }
            let mut exps = vec![Rat::zero(); g.rank()];
            exps[0] = Rat::one();
            Some(UnitPayload::Group(exps))
        }
        HaloDescriptor::NonnegRationals => Some(UnitPayload::Rational(rat(2, 1))),
        HaloDescriptor::NonnegSurds => Some(UnitPayload::Surd(
            super::surd::Surd::from_rat(rat(2, 1)).expect("2 >= 0"),
        )),
        HaloDescriptor::LexProduct(a, b) => match unit_above_one(a) {
            Some(u) => Some(UnitPayload::Lex(
                Box::new(u),
                Box::new(super::one_unit(b)),
            )),
            None => unit_above_one(b).map(|u| {
                UnitPayload::Lex(Box::new(super::one_unit(a)), Box::new(u))
            }),
        },
    }
}

/// Checks x^n <= bound(n) * 1 for every 1 <= n <= n_max.
pub fn tempered_witness_check(x: &HaloValue, bound: &NatPoly, n_max: u64) -> Result<bool> {
    if n_max == 0 {
        return Err(Error::RangeError("witness check needs n_max >= 1".into()));
    }
    let mut acc = x.clone();
    for n in 1..=n_max {
        let cap = nat_to_halo(&x.halo, &bound.eval(n));
        if halo_cmp(&acc, &cap)? == Ordering::Greater {
            return Ok(false);
        }
        if n < n_max {
            acc = halo_mul(&acc, x)?;
        }
    }
    Ok(true)
}
