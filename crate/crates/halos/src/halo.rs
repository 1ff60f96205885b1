//! Value halos: positive totally ordered semirings the seminorm catalog maps
//! into, with exact arithmetic and decidable comparison.
//!
//! Four bricks and one combinator:
//! - the trivial halo {0, 1};
//! - tropical halos over lexicographic rational groups (addition is max);
//! - nonnegative rationals;
//! - nonnegative surd sums;
//! - lexicographic products, whose carrier is {0} together with pairs of
//!   nonzero components. Addition acts componentwise on nonzero pairs and
//!   returns the other argument when one side is zero; comparison is
//!   lexicographic with the first factor dominant.
//!
//! Every brick satisfies the semiring laws, has 0 strictly least, and is
//! totally ordered. Order compatibility of addition fails for lexicographic
//! products whose first factor is tropical: max-addition can lift a smaller
//! first coordinate into a tie that the second coordinates then decide the
//! wrong way. See `lex_tropical_addition_is_not_monotone` below for the
//! two-line counterexample; the `order_compat` check suite reports the same
//! fact on random samples.

pub mod surd;
pub mod tempered;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

use crate::group::OrderedGroupDescriptor;
use crate::ring::{fmt_rat, Rat};
use crate::{Error, Result};
use surd::Surd;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HaloDescriptor {
    Trivial,
    TropicalOf(OrderedGroupDescriptor),
    NonnegRationals,
    NonnegSurds,
    LexProduct(Box<HaloDescriptor>, Box<HaloDescriptor>),
}

impl HaloDescriptor {
    pub fn lex(first: HaloDescriptor, second: HaloDescriptor) -> HaloDescriptor {
        HaloDescriptor::LexProduct(Box::new(first), Box::new(second))
    }
}

impl fmt::Display for HaloDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HaloDescriptor::Trivial => write!(f, "trivial"),
            HaloDescriptor::TropicalOf(g) => write!(f, "trop({g})"),
            HaloDescriptor::NonnegRationals => write!(f, "Q>=0"),
            HaloDescriptor::NonnegSurds => write!(f, "surds"),
            HaloDescriptor::LexProduct(a, b) => write!(f, "lex({a}, {b})"),
        }
    }
}

/// Data of a nonzero value. The shape must match the descriptor; every
/// constructor validates, so the arithmetic below can treat a mismatch as a
/// bug rather than an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnitPayload {
    One,
    /// Exponent vector of a tropical group element, most significant first.
    Group(Vec<Rat>),
    /// A strictly positive rational.
    Rational(Rat),
    /// A nonzero nonnegative surd sum.
    Surd(Surd),
    /// Both components nonzero; mixed pairs are outside the carrier.
    Lex(Box<UnitPayload>, Box<UnitPayload>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Zero,
    Unit(UnitPayload),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HaloValue {
    pub halo: HaloDescriptor,
    pub payload: Payload,
}

impl HaloValue {
    pub fn zero(h: &HaloDescriptor) -> HaloValue {
        HaloValue {
            halo: h.clone(),
            payload: Payload::Zero,
        }
    }

    pub fn one(h: &HaloDescriptor) -> HaloValue {
        HaloValue {
            halo: h.clone(),
            payload: Payload::Unit(one_unit(h)),
        }
    }

    pub fn new(h: &HaloDescriptor, payload: Payload) -> Result<HaloValue> {
        if let Payload::Unit(u) = &payload {
            validate_unit(h, u)?;
        }
        Ok(HaloValue {
            halo: h.clone(),
            payload,
        })
    }

    /// A nonnegative rational in the nonnegative-rationals halo.
    pub fn rational(q: Rat) -> Result<HaloValue> {
        if q.is_negative() {
            return Err(Error::RangeError(format!(
                "{} is negative",
                fmt_rat(&q)
            )));
        }
        let payload = if q.is_zero() {
            Payload::Zero
        } else {
            Payload::Unit(UnitPayload::Rational(q))
        };
        Ok(HaloValue {
            halo: HaloDescriptor::NonnegRationals,
            payload,
        })
    }

    pub fn surd_value(s: Surd) -> HaloValue {
        let payload = if s.is_zero() {
            Payload::Zero
        } else {
            Payload::Unit(UnitPayload::Surd(s))
        };
        HaloValue {
            halo: HaloDescriptor::NonnegSurds,
            payload,
        }
    }

    /// A tropical group element, given by its exponent vector.
    pub fn tropical(group: &OrderedGroupDescriptor, exponents: Vec<Rat>) -> Result<HaloValue> {
        let h = HaloDescriptor::TropicalOf(group.clone());
        HaloValue::new(&h, Payload::Unit(UnitPayload::Group(exponents)))
    }

    /// Builds a lexicographic-product value from component values. The
    /// carrier admits only the zero pair and pairs of nonzero components.
    pub fn lex_pair(first: HaloValue, second: HaloValue) -> Result<HaloValue> {
        let halo = HaloDescriptor::lex(first.halo.clone(), second.halo.clone());
        match (first.payload, second.payload) {
            (Payload::Zero, Payload::Zero) => Ok(HaloValue {
                halo,
                payload: Payload::Zero,
            }),
            (Payload::Unit(a), Payload::Unit(b)) => Ok(HaloValue {
                halo,
                payload: Payload::Unit(UnitPayload::Lex(Box::new(a), Box::new(b))),
            }),
            _ => Err(Error::RangeError(
                "a lexicographic product value is zero or has both components nonzero".into(),
            )),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.payload, Payload::Zero)
    }

    pub fn is_one(&self) -> bool {
        match &self.payload {
            Payload::Zero => false,
            Payload::Unit(u) => *u == one_unit(&self.halo),
        }
    }
}

fn one_unit(h: &HaloDescriptor) -> UnitPayload {
    match h {
        HaloDescriptor::Trivial => UnitPayload::One,
        HaloDescriptor::TropicalOf(g) => UnitPayload::Group(vec![Rat::zero(); g.rank()]),
        HaloDescriptor::NonnegRationals => UnitPayload::Rational(Rat::one()),
        HaloDescriptor::NonnegSurds => UnitPayload::Surd(Surd::one()),
        HaloDescriptor::LexProduct(a, b) => {
            UnitPayload::Lex(Box::new(one_unit(a)), Box::new(one_unit(b)))
        }
    }
}

fn validate_unit(h: &HaloDescriptor, u: &UnitPayload) -> Result<()> {
    match (h, u) {
        (HaloDescriptor::Trivial, UnitPayload::One) => Ok(()),
        (HaloDescriptor::TropicalOf(g), UnitPayload::Group(e)) => {
            if e.len() == g.rank() {
                Ok(())
            } else {
                Err(Error::InvalidDescriptor(format!(
                    "exponent vector of length {} in a rank {} group",
                    e.len(),
                    g.rank()
                )))
            }
        }
        (HaloDescriptor::NonnegRationals, UnitPayload::Rational(q)) => {
            if q.is_positive() {
                Ok(())
            } else {
                Err(Error::InvalidDescriptor(
                    "nonpositive rational unit; zero is the Zero payload".into(),
                ))
            }
        }
        (HaloDescriptor::NonnegSurds, UnitPayload::Surd(s)) => {
            if s.is_zero() {
                Err(Error::InvalidDescriptor(
                    "zero surd unit; zero is the Zero payload".into(),
                ))
            } else {
                Ok(())
            }
        }
        (HaloDescriptor::LexProduct(a, b), UnitPayload::Lex(x, y)) => {
            validate_unit(a, x)?;
            validate_unit(b, y)
        }
        _ => Err(Error::InvalidDescriptor(format!(
            "payload shape does not match halo {h}"
        ))),
    }
}

fn same_halo(x: &HaloValue, y: &HaloValue) -> Result<()> {
    if x.halo == y.halo {
        Ok(())
    } else {
        Err(Error::MixedHalos(format!("{} vs {}", x.halo, y.halo)))
    }
}

pub fn halo_add(x: &HaloValue, y: &HaloValue) -> Result<HaloValue> {
    same_halo(x, y)?;
    let payload = match (&x.payload, &y.payload) {
        (Payload::Zero, p) | (p, Payload::Zero) => p.clone(),
        (Payload::Unit(a), Payload::Unit(b)) => Payload::Unit(add_units(&x.halo, a, b)),
    };
    Ok(HaloValue {
        halo: x.halo.clone(),
        payload,
    })
}

pub fn halo_mul(x: &HaloValue, y: &HaloValue) -> Result<HaloValue> {
    same_halo(x, y)?;
    let payload = match (&x.payload, &y.payload) {
        (Payload::Zero, _) | (_, Payload::Zero) => Payload::Zero,
        (Payload::Unit(a), Payload::Unit(b)) => Payload::Unit(mul_units(&x.halo, a, b)),
    };
    Ok(HaloValue {
        halo: x.halo.clone(),
        payload,
    })
}

pub fn halo_cmp(x: &HaloValue, y: &HaloValue) -> Result<Ordering> {
    same_halo(x, y)?;
    Ok(match (&x.payload, &y.payload) {
        (Payload::Zero, Payload::Zero) => Ordering::Equal,
        (Payload::Zero, Payload::Unit(_)) => Ordering::Less,
        (Payload::Unit(_), Payload::Zero) => Ordering::Greater,
        (Payload::Unit(a), Payload::Unit(b)) => cmp_units(&x.halo, a, b),
    })
}

/// x^n with x^0 = 1.
pub fn halo_pow(x: &HaloValue, n: u64) -> HaloValue {
    let mut acc = HaloValue::one(&x.halo);
    let mut base = x.clone();
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            acc = halo_mul(&acc, &base).expect("same halo");
        }
        base = halo_mul(&base, &base).expect("same halo");
        n >>= 1;
    }
    acc
}

/// The image of a natural number under the unique semiring map from N.
pub fn nat_to_halo(h: &HaloDescriptor, n: &BigUint) -> HaloValue {
    if n.is_zero() {
        return HaloValue::zero(h);
    }
    let one = HaloValue::one(h);
    let mut acc = HaloValue::zero(h);
    for i in (0..n.bits()).rev() {
        acc = halo_add(&acc, &acc).expect("same halo");
        if n.bit(i) {
            acc = halo_add(&acc, &one).expect("same halo");
        }
    }
    acc
}

/// Compares num1/den1 with num2/den2 by cross-multiplying, the comparison
/// used on localizations at multiplicative places.
pub fn localized_cmp(
    num1: &HaloValue,
    den1: &HaloValue,
    num2: &HaloValue,
    den2: &HaloValue,
) -> Result<Ordering> {
    if den1.is_zero() || den2.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    halo_cmp(&halo_mul(num1, den2)?, &halo_mul(num2, den1)?)
}

/// Representative instances of every halo constructor, used by the check
/// suites and the axiom tests. Covers each base shape, both generator ranks,
/// and lex products in both factor orders (the order matters: a tropical
/// first factor breaks additive order compatibility, see the order suite).
pub fn catalog_halos() -> Vec<HaloDescriptor> {
    let rank1 = OrderedGroupDescriptor::rank1("q");
    let rank2 = OrderedGroupDescriptor::rank2("arch", "q");
    vec![
        HaloDescriptor::Trivial,
        HaloDescriptor::NonnegRationals,
        HaloDescriptor::NonnegSurds,
        HaloDescriptor::TropicalOf(rank1.clone()),
        HaloDescriptor::TropicalOf(rank2),
        HaloDescriptor::lex(
            HaloDescriptor::NonnegRationals,
            HaloDescriptor::TropicalOf(rank1.clone()),
        ),
        HaloDescriptor::lex(HaloDescriptor::NonnegRationals, HaloDescriptor::NonnegRationals),
        HaloDescriptor::lex(
            HaloDescriptor::TropicalOf(rank1),
            HaloDescriptor::NonnegRationals,
        ),
    ]
}

fn add_units(h: &HaloDescriptor, a: &UnitPayload, b: &UnitPayload) -> UnitPayload {
    match (h, a, b) {
        (HaloDescriptor::Trivial, UnitPayload::One, UnitPayload::One) => UnitPayload::One,
        (HaloDescriptor::TropicalOf(_), UnitPayload::Group(e), UnitPayload::Group(f)) => {
            if cmp_exponents(e, f) == Ordering::Less {
                UnitPayload::Group(f.clone())
            } else {
                UnitPayload::Group(e.clone())
            }
        }
        (HaloDescriptor::NonnegRationals, UnitPayload::Rational(p), UnitPayload::Rational(q)) => {
            UnitPayload::Rational(p + q)
        }
        (HaloDescriptor::NonnegSurds, UnitPayload::Surd(s), UnitPayload::Surd(t)) => {
            UnitPayload::Surd(s.add(t))
        }
        (HaloDescriptor::LexProduct(h1, h2), UnitPayload::Lex(a1, a2), UnitPayload::Lex(b1, b2)) => {
            UnitPayload::Lex(
                Box::new(add_units(h1, a1, b1)),
                Box::new(add_units(h2, a2, b2)),
            )
        }
        _ => unreachable!("validated payloads match their halo"),
    }
}

fn mul_units(h: &HaloDescriptor, a: &UnitPayload, b: &UnitPayload) -> UnitPayload {
    match (h, a, b) {
        (HaloDescriptor::Trivial, UnitPayload::One, UnitPayload::One) => UnitPayload::One,
        (HaloDescriptor::TropicalOf(_), UnitPayload::Group(e), UnitPayload::Group(f)) => {
            UnitPayload::Group(e.iter().zip(f).map(|(x, y)| x + y).collect())
        }
        (HaloDescriptor::NonnegRationals, UnitPayload::Rational(p), UnitPayload::Rational(q)) => {
            UnitPayload::Rational(p * q)
        }
        (HaloDescriptor::NonnegSurds, UnitPayload::Surd(s), UnitPayload::Surd(t)) => {
            UnitPayload::Surd(s.mul(t))
        }
        (HaloDescriptor::LexProduct(h1, h2), UnitPayload::Lex(a1, a2), UnitPayload::Lex(b1, b2)) => {
            UnitPayload::Lex(
                Box::new(mul_units(h1, a1, b1)),
                Box::new(mul_units(h2, a2, b2)),
            )
        }
        _ => unreachable!("validated payloads match their halo"),
    }
}

fn cmp_units(h: &HaloDescriptor, a: &UnitPayload, b: &UnitPayload) -> Ordering {
    match (h, a, b) {
        (HaloDescriptor::Trivial, UnitPayload::One, UnitPayload::One) => Ordering::Equal,
        (HaloDescriptor::TropicalOf(_), UnitPayload::Group(e), UnitPayload::Group(f)) => {
            cmp_exponents(e, f)
        }
        (HaloDescriptor::NonnegRationals, UnitPayload::Rational(p), UnitPayload::Rational(q)) => {
            p.cmp(q)
        }
        (HaloDescriptor::NonnegSurds, UnitPayload::Surd(s), UnitPayload::Surd(t)) => s.cmp_surd(t),
        (HaloDescriptor::LexProduct(h1, h2), UnitPayload::Lex(a1, a2), UnitPayload::Lex(b1, b2)) => {
            cmp_units(h1, a1, b1).then_with(|| cmp_units(h2, a2, b2))
        }
        _ => unreachable!("validated payloads match their halo"),
    }
}

fn cmp_exponents(e: &[Rat], f: &[Rat]) -> Ordering {
    debug_assert_eq!(e.len(), f.len());
    for (x, y) in e.iter().zip(f) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

impl fmt::Display for HaloValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.payload {
            Payload::Zero => write!(f, "0"),
            Payload::Unit(u) => fmt_unit(&self.halo, u, f),
        }
    }
}

fn fmt_unit(h: &HaloDescriptor, u: &UnitPayload, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match (h, u) {
        (HaloDescriptor::Trivial, UnitPayload::One) => write!(f, "1"),
        (HaloDescriptor::TropicalOf(g), UnitPayload::Group(e)) => {
            if e.iter().all(|x| x.is_zero()) {
                return write!(f, "1");
            }
            let mut first = true;
            for (label, exp) in g.labels().iter().zip(e) {
                if exp.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{label}^{}", fmt_rat(exp))?;
            }
            Ok(())
        }
        (HaloDescriptor::NonnegRationals, UnitPayload::Rational(q)) => write!(f, "{}", fmt_rat(q)),
        (HaloDescriptor::NonnegSurds, UnitPayload::Surd(s)) => write!(f, "{s}"),
        (HaloDescriptor::LexProduct(h1, h2), UnitPayload::Lex(a, b)) => {
            write!(f, "(")?;
            fmt_unit(h1, a, f)?;
            write!(f, "; ")?;
            fmt_unit(h2, b, f)?;
            write!(f, ")")
        }
        _ => unreachable!("validated payloads match their halo"),
    }
}
