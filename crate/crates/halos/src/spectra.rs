//! Spectra of rings of integers and polynomials as point sets with the
//! rational-domain topology: membership, basis intersections, the
//! valuation-subspectrum test, and the classical-spectrum comparison map.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{is_prime, positive_divisors, primes_up_to, radical};
use crate::halo::halo_cmp;
use crate::place::classify::equivalent_oracle;
use crate::place::{evaluate, is_nonarchimedean, PlaceDescriptor};
use crate::ring::{fmt_rat, Rat, RingElement, RingId};
use crate::{Error, Result};

/// A point of a multiplicative spectrum: an equivalence class of places,
/// held by a chosen representative. Point identity is multiplicative
/// equivalence, not descriptor equality, so this type deliberately does not
/// implement PartialEq; compare through same_point.
#[derive(Debug, Clone)]
pub struct SpehPoint {
    pub canonical_place: PlaceDescriptor,
}

impl SpehPoint {
    pub fn new(place: PlaceDescriptor) -> Result<Self> {
        place.validate()?;
        Ok(SpehPoint {
            canonical_place: place,
        })
    }

    pub fn same_point(&self, other: &SpehPoint) -> Result<bool> {
        equivalent_oracle(&self.canonical_place, &other.canonical_place)
    }
}

impl fmt::Display for SpehPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.canonical_place)
    }
}

/// The finite sample of the point set of the spectrum of Z: the trivial
/// point, the archimedean point, and the p-adic and residual points for
/// every prime up to the bound.
pub fn speh_points_of_z(prime_bound: u64) -> Result<Vec<SpehPoint>> {
    if prime_bound < 2 {
        return Err(Error::RangeError(format!(
            "the enumeration needs a prime bound of at least 2, got {prime_bound}"
        )));
    }
    let mut points = vec![
        SpehPoint::new(PlaceDescriptor::TrivialOn(RingId::Z))?,
        SpehPoint::new(PlaceDescriptor::ArchimedeanZ)?,
    ];
    for p in primes_up_to(prime_bound) {
        points.push(SpehPoint::new(PlaceDescriptor::PAdicReal(p))?);
        points.push(SpehPoint::new(PlaceDescriptor::Residual(p))?);
    }
    Ok(points)
}

/// A basis open of the rational-domain topology: the points where every
/// numerator is dominated by the denominator and every divisor of the
/// denominator is multiplicative. With no numerators the domain is cut out
/// by the nonvanishing of the denominator alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalDomain {
    pub ring: RingId,
    pub numerators: Vec<RingElement>,
    pub denominator: RingElement,
    /// Strict demands |a_i| < |b|; the closed variant |a_i| <= |b| != 0.
    pub strict: bool,
}

impl RationalDomain {
    pub fn new(
        ring: RingId,
        numerators: Vec<RingElement>,
        denominator: RingElement,
        strict: bool,
    ) -> Result<Self> {
        if !matches!(ring, RingId::Z | RingId::ZX) {
            return Err(Error::InvalidDescriptor(format!(
                "rational domains are carried over Z or Z[X], not {ring}"
            )));
        }
        if denominator.is_zero() {
            return Err(Error::InvalidDescriptor(
                "zero denominator in a rational domain".into(),
            ));
        }
        for elem in numerators.iter().chain(std::iter::once(&denominator)) {
            if elem.ring_id() != ring {
                return Err(Error::MixedRings(format!(
                    "{} element in a domain over {ring}",
                    elem.ring_id()
                )));
            }
        }
        Ok(RationalDomain {
            ring,
            numerators,
            denominator,
            strict,
        })
    }

    /// The whole spectrum: no numerators, denominator 1.
    pub fn full(ring: RingId) -> Result<Self> {
        RationalDomain::new(ring, vec![], RingElement::one(ring)?, true)
    }
}

impl fmt::Display for RationalDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.strict { "<" } else { "<=" };
        if self.numerators.is_empty() {
            return write!(f, "{{0 < |{}|}}", self.denominator);
        }
        let nums: Vec<String> = self.numerators.iter().map(|a| a.to_string()).collect();
        write!(
            f,
            "{{|{}| {op} |{}|}}",
            nums.join("|, |"),
            self.denominator
        )
    }
}

fn placewise_ring_matches(place: &PlaceDescriptor, ring: RingId) -> bool {
    match ring {
        RingId::Z => place.domain() == RingId::Z,
        RingId::ZX => place.domain() != RingId::Z,
        _ => false,
    }
}

fn enumerate_divisors(n: &BigInt) -> Result<Vec<u64>> {
    positive_divisors(n).map_err(|_| {
        Error::FactorizationRequired(format!("divisor enumeration of {n} is out of range"))
    })
}

/// Every positive divisor d of b for which the place fails |de| = |d||e|
/// somewhere disqualifies the point. Multiplicative places pass vacuously;
/// for the composite-modulus places the failing divisors are characterized
/// exactly, so no sampling is involved.
fn divisors_multiplicative(place: &PlaceDescriptor, b: &RingElement) -> Result<bool> {
    if place.is_multiplicative() {
        return Ok(true);
    }
    let RingElement::Int(n) = b else {
        return Err(Error::FactorizationRequired(format!(
            "no divisor enumeration for a polynomial denominator at {place}"
        )));
    };
    match place {
        PlaceDescriptor::CompositeAdic(m) => {
            // d is multiplicative iff d = +-m^k u with u coprime to every
            // prime of m: then the m-order of de splits as k + ord(e)
            let rad = radical(*m)?;
            for d in enumerate_divisors(n)? {
                let mut u = d;
                while u % m == 0 {
                    u /= m;
                }
                if u.gcd(&rad) != 1 {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        PlaceDescriptor::CompositeResidual(m) => {
            // d sharing only part of m's factors sends some nonvanishing e
            // to a vanishing product
            for d in enumerate_divisors(n)? {
                if d % m != 0 && d.gcd(m) != 1 {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        other => Err(Error::UnsupportedPlace(format!(
            "no divisor characterization for {other}"
        ))),
    }
}

/// Whether the point lies in the rational domain.
pub fn domain_membership(x: &SpehPoint, domain: &RationalDomain) -> Result<bool> {
    let place = &x.canonical_place;
    place.validate()?;
    if !placewise_ring_matches(place, domain.ring) {
        return Err(Error::DomainMismatch(format!(
            "{place} against a domain over {}",
            domain.ring
        )));
    }
    let vb = evaluate(place, &domain.denominator)?;
    if vb.is_zero() {
        return Ok(false);
    }
    for a in &domain.numerators {
        let va = evaluate(place, a)?;
        let cmp = halo_cmp(&va, &vb)?;
        let ok = if domain.strict {
            cmp == std::cmp::Ordering::Less
        } else {
            cmp != std::cmp::Ordering::Greater
        };
        if !ok {
            return Ok(false);
        }
    }
    divisors_multiplicative(place, &domain.denominator)
}

/// The intersection of two basis domains is again one: cross-multiply each
/// numerator list by the other denominator and take the product
/// denominator.
pub fn domain_intersection(
    r1: &RationalDomain,
    r2: &RationalDomain,
) -> Result<RationalDomain> {
    if r1.ring != r2.ring {
        return Err(Error::MixedRings(format!(
            "{} vs {}",
            r1.ring, r2.ring
        )));
    }
    if r1.strict != r2.strict {
        return Err(Error::InvalidDescriptor(
            "intersection of domains with different strictness".into(),
        ));
    }
    let mut numerators = Vec::new();
    for f in &r1.numerators {
        numerators.push(f.mul(&r2.denominator)?);
    }
    for g in &r2.numerators {
        numerators.push(g.mul(&r1.denominator)?);
    }
    let denominator = r1.denominator.mul(&r2.denominator)?;
    RationalDomain::new(r1.ring, numerators, denominator, r1.strict)
}

/// Whether the point lies in the valuation subspectrum: |2| <= 1.
pub fn spev_subset_check(x: &SpehPoint) -> Result<bool> {
    is_nonarchimedean(&x.canonical_place)
}

/// A point of the classical seminorm spectrum of Z: a power of a p-adic or
/// archimedean absolute value, or a residual point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BerkovichPointSpecZ {
    /// |.|_p^t with t >= 0; t = 0 is the trivial seminorm.
    PPower { p: u64, t: Rat },
    /// |.|_oo^t with 0 <= t <= 1.
    ArchPower { t: Rat },
    ResidualPt { p: u64 },
}

impl BerkovichPointSpecZ {
    pub fn validate(&self) -> Result<()> {
        match self {
            BerkovichPointSpecZ::PPower { p, t } => {
                if !is_prime(*p) {
                    return Err(Error::InvalidDescriptor(format!("{p} is not prime")));
                }
                if t.is_negative() {
                    return Err(Error::RangeError(format!(
                        "p-adic powers take t >= 0, got {}",
                        fmt_rat(t)
                    )));
                }
                Ok(())
            }
            BerkovichPointSpecZ::ArchPower { t } => {
                if t.is_negative() || *t > Rat::from_integer(BigInt::from(1)) {
                    return Err(Error::RangeError(format!(
                        "archimedean powers take t in [0, 1], got {}",
                        fmt_rat(t)
                    )));
                }
                Ok(())
            }
            BerkovichPointSpecZ::ResidualPt { p } => {
                if is_prime(*p) {
                    Ok(())
                } else {
                    Err(Error::InvalidDescriptor(format!("{p} is not prime")))
                }
            }
        }
    }
}

impl fmt::Display for BerkovichPointSpecZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BerkovichPointSpecZ::PPower { p, t } => write!(f, "|.|_{p}^{}", fmt_rat(t)),
            BerkovichPointSpecZ::ArchPower { t } => write!(f, "|.|_oo^{}", fmt_rat(t)),
            BerkovichPointSpecZ::ResidualPt { p } => write!(f, "|.|_({p},0)"),
        }
    }
}

/// Collapse of the classical spectrum onto the multiplicative one: raising
/// a seminorm to a positive power does not move its equivalence class, so
/// the rays of powers contract to single points and only the trivial
/// seminorm, one point per prime pair, and the archimedean point remain.
pub fn berkovich_to_speh(b: &BerkovichPointSpecZ) -> Result<SpehPoint> {
    b.validate()?;
    let place = match b {
        BerkovichPointSpecZ::PPower { t, .. } if t.is_zero() => {
            PlaceDescriptor::TrivialOn(RingId::Z)
        }
        BerkovichPointSpecZ::PPower { p, .. } => PlaceDescriptor::PAdicReal(*p),
        BerkovichPointSpecZ::ArchPower { t } if t.is_zero() => {
            PlaceDescriptor::TrivialOn(RingId::Z)
        }
        BerkovichPointSpecZ::ArchPower { .. } => PlaceDescriptor::ArchimedeanZ,
        BerkovichPointSpecZ::ResidualPt { p } => PlaceDescriptor::Residual(*p),
    };
    SpehPoint::new(place)
}
