//! Exact nonnegative reals of the form sum c_d sqrt(d) with rational c_d > 0
//! and squarefree d. Closed under addition and multiplication, with decidable
//! total order.
//!
//! Equality is canonical-form equality: square roots of distinct squarefree
//! integers are linearly independent over Q, so distinct term maps denote
//! distinct reals. Strict comparison evaluates the difference in shrinking
//! dyadic intervals; linear independence guarantees the loop exits.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::squarefree_decompose;
use crate::ring::{fmt_rat, Rat};
use crate::{Error, Result};

/// Refinement cap; far beyond anything the test corpus can need, present so a
/// logic bug cannot spin forever.
const MAX_REFINE_BITS: u32 = 4096;

/// terms: squarefree d mapped to coefficient c_d > 0; empty map is zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Surd {
    terms: BTreeMap<BigUint, Rat>,
}

impl Surd {
    pub fn zero() -> Self {
        Surd::default()
    }

    pub fn one() -> Self {
        Surd::from_rat(Rat::one()).expect("1 is nonnegative")
    }

    /// Embeds a nonnegative rational as the d = 1 term.
    pub fn from_rat(c: Rat) -> Result<Self> {
        if c.is_negative() {
            return Err(Error::RangeError(format!(
                "negative value {} in a nonnegative surd",
                fmt_rat(&c)
            )));
        }
        let mut s = Surd::zero();
        s.accumulate(BigUint::one(), c);
        Ok(s)
    }

    /// c * sqrt(d) for c >= 0 and any d >= 1; d is reduced to its squarefree
    /// part (sqrt(8) becomes 2 sqrt(2)).
    pub fn term(c: Rat, d: &BigUint) -> Result<Self> {
        if c.is_negative() {
            return Err(Error::RangeError(format!(
                "negative coefficient {} in a nonnegative surd",
                fmt_rat(&c)
            )));
        }
        if d.is_zero() {
            return Err(Error::RangeError("sqrt(0) term; use the zero surd".into()));
        }
        let (s, d0) = squarefree_decompose(d)?;
        let mut out = Surd::zero();
        out.accumulate(d0, c * Rat::from_integer(BigInt::from(s)));
        Ok(out)
    }

    /// sqrt of a nonnegative rational, as an exact one-term surd:
    /// sqrt(n/m) = sqrt(n m)/m.
    pub fn sqrt_of_rat(q: &Rat) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::RangeError(format!(
                "square root of negative rational {}",
                fmt_rat(q)
            )));
        }
        if q.is_zero() {
            return Ok(Surd::zero());
        }
        let num = q.numer().magnitude().clone();
        let den = q.denom().magnitude().clone();
        let (s, d) = squarefree_decompose(&(&num * &den))?;
        let coeff = Rat::new(BigInt::from(s), BigInt::from(den));
        let mut out = Surd::zero();
        out.accumulate(d, coeff);
        Ok(out)
    }

    fn accumulate(&mut self, d: BigUint, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert!(c.is_positive(), "surd coefficients stay positive");
        let entry = self.terms.entry(d).or_insert_with(Rat::zero);
        *entry = &*entry + &c;
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&BigUint::one())
                .is_some_and(|c| c.is_one())
    }

    /// The exact rational it denotes, if it is rational.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&BigUint::one()) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &Rat)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Surd) -> Surd {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.accumulate(d.clone(), c.clone());
        }
        out
    }

    /// Products of one-term surds never need integer factoring:
    /// sqrt(d) sqrt(e) = g sqrt((d/g)(e/g)) with g = gcd(d, e), and the two
    /// cofactors are coprime squarefree, so their product is squarefree.
    pub fn mul(&self, other: &Surd) -> Surd {
        let mut out = Surd::zero();
        for (d, c) in &self.terms {
            for (e, c2) in &other.terms {
                let g = d.gcd(e);
                let key = (d / &g) * (e / &g);
                out.accumulate(key, c * c2 * Rat::from_integer(BigInt::from(g)));
            }
        }
        out
    }

    pub fn pow(&self, n: u64) -> Surd {
        let mut acc = Surd::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// Division by a one-term surd c sqrt(d): multiply by sqrt(d)/(c d).
    /// Multi-term divisors would need conjugation out of the nonnegative cone.
    pub fn div(&self, other: &Surd) -> Result<Surd> {
        if other.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if other.terms.len() != 1 {
            return Err(Error::NotRepresentable(
                "surd division by a multi-term denominator leaves the nonnegative cone".into(),
            ));
        }
        let (d, c) = other.terms.iter().next().expect("one term");
        let inv_coeff = Rat::new(BigInt::one(), c.numer() * BigInt::from(d.clone()))
            * Rat::from_integer(c.denom().clone());
        let mut inv = Surd::zero();
        inv.accumulate(d.clone(), inv_coeff);
        Ok(self.mul(&inv))
    }

    pub fn cmp_surd(&self, other: &Surd) -> Ordering {
        if self.terms == other.terms {
            return Ordering::Equal;
        }
        // collect the nonzero coefficients of self - other
        let mut diff: BTreeMap<BigUint, Rat> = BTreeMap::new();
        for (d, c) in &self.terms {
            diff.insert(d.clone(), c.clone());
        }
        for (d, c) in &other.terms {
            let entry = diff.entry(d.clone()).or_insert_with(Rat::zero);
            *entry = &*entry - c;
            if entry.is_zero() {
                diff.remove(d);
            }
        }
        sign_of_combination(&diff)
    }

    /// Double-precision estimate, for sanity cross-checks only.
    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(d, c)| c.to_f64().unwrap_or(f64::NAN) * d.to_f64().unwrap_or(f64::NAN).sqrt())
            .sum()
    }
}

/// Sign of sum e_d sqrt(d) with all e_d nonzero; the input denotes a nonzero
/// real by linear independence, so interval refinement separates it from 0.
fn sign_of_combination(diff: &BTreeMap<BigUint, Rat>) -> Ordering {
    debug_assert!(!diff.is_empty());
    let mut bits: u32 = 32;
    loop {
        assert!(
            bits <= MAX_REFINE_BITS,
            "dyadic refinement failed to separate surd values"
        );
        let scale = BigInt::from(1u8) << bits;
        let mut lo = Rat::zero();
        let mut hi = Rat::zero();
        for (d, c) in diff {
            // l <= sqrt(d) 2^bits <= l + 1
            let l = BigInt::from((d << (2 * bits as usize)).sqrt());
            let low = Rat::new(l.clone(), scale.clone());
            let high = Rat::new(l + 1, scale.clone());
            if c.is_positive() {
                lo += c * &low;
                hi += c * &high;
            } else {
                lo += c * &high;
                hi += c * &low;
            }
        }
        if lo.is_positive() {
            return Ordering::Greater;
        }
        if hi.is_negative() {
            return Ordering::Less;
        }
        bits *= 2;
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if d.is_one() {
                write!(f, "{}", fmt_rat(c))?;
            } else if c.is_one() {
                write!(f, "sqrt({d})")?;
            } else {
                write!(f, "{}*sqrt({d})", fmt_rat(c))?;
            }
        }
        Ok(())
    }
}
