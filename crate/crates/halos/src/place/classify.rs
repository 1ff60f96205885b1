//! Classification of places on Z by sampling, the equivalence oracle on
//! catalog descriptors, and restriction of line places to the integers.

use std::cmp::Ordering;

use num_traits::Zero;

use crate::arith::{ord_p_rat, primes_up_to};
use crate::halo::{halo_cmp, halo_mul, HaloValue};
use crate::place::{evaluate, MajorSubset, PlaceDescriptor};
use crate::ring::{Qi, Rat, RingElement, RingId};
use crate::{Error, Result};

/// What a multiplicative place on Z can look like, up to equivalence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZClassification {
    Trivial,
    Archimedean,
    PAdic(u64),
    ResidualAt(u64),
    /// The samples did not pin the place down: a non-multiplicative map, or
    /// a kernel or contracting prime beyond the search bound.
    Inconclusive(String),
}

fn cmp_to_one(v: &HaloValue) -> Result<Ordering> {
    halo_cmp(v, &HaloValue::one(&v.halo))
}

/// Sampling classification of a place on Z. Evaluates the place at small
/// primes and their products; a multiplicativity failure on the samples
/// reports Inconclusive rather than a wrong bucket, and a kernel or
/// contraction beyond `prime_bound` is also Inconclusive.
pub fn classify_on_z(place: &PlaceDescriptor, prime_bound: u64) -> Result<ZClassification> {
    if place.domain() != RingId::Z {
        return Err(Error::DomainMismatch(format!(
            "classification on Z applied to a place on {}",
            place.domain()
        )));
    }
    let eval_int = |n: i64| evaluate(place, &RingElement::int(n));

    // multiplicativity guard on small prime pairs
    for &(a, b) in &[(2i64, 3i64), (2, 5), (3, 5), (2, 2), (3, 3), (6, 5)] {
        let lhs = eval_int(a * b)?;
        let rhs = halo_mul(&eval_int(a)?, &eval_int(b)?)?;
        if halo_cmp(&lhs, &rhs)? != Ordering::Equal {
            return Ok(ZClassification::Inconclusive(format!(
                "not multiplicative at ({a}, {b})"
            )));
        }
    }

    let primes = primes_up_to(prime_bound);
    for &p in &primes {
        if eval_int(p as i64)?.is_zero() {
            return Ok(ZClassification::ResidualAt(p));
        }
    }
    if cmp_to_one(&eval_int(2)?)? == Ordering::Greater {
        return Ok(ZClassification::Archimedean);
    }
    for &p in &primes {
        if cmp_to_one(&eval_int(p as i64)?)? == Ordering::Less {
            return Ok(ZClassification::PAdic(p));
        }
    }
    // every prime up to the bound has value exactly 1
    if matches!(place, PlaceDescriptor::TrivialOn(RingId::Z)) {
        return Ok(ZClassification::Trivial);
    }
    Ok(ZClassification::Inconclusive(format!(
        "no prime below {prime_bound} moves; the place may be trivial"
    )))
}

fn same_padic_disc(p: u64, a: &Rat, a2: &Rat, radius_exp: &Rat) -> bool {
    let step = a - a2;
    step.is_zero() || Rat::from_integer((-ord_p_rat(&step, p)).into()) <= *radius_exp
}

fn conjugate_points(a: &Qi, b: &Qi) -> bool {
    a == b || *a == b.conj()
}

/// Whether two catalog descriptors present the same point: equal topologies
/// and proportional valuations. Places on different rings do not compare.
pub fn equivalent_oracle(x: &PlaceDescriptor, y: &PlaceDescriptor) -> Result<bool> {
    use PlaceDescriptor::*;
    x.validate()?;
    y.validate()?;
    if x.domain() != y.domain() {
        return Err(Error::DomainMismatch(format!(
            "{} vs {}",
            x.domain(),
            y.domain()
        )));
    }
    Ok(match (x, y) {
        (TrivialOn(r), TrivialOn(s)) => r == s,
        // the tropical and rational presentations of |.|_p agree
        (PAdicTrop(p) | PAdicReal(p), PAdicTrop(q) | PAdicReal(q)) => p == q,
        (ArchimedeanZ, ArchimedeanZ) => true,
        (Residual(p), Residual(q)) => p == q,
        (CompositeAdic(m), CompositeAdic(n)) => m == n,
        (CompositeResidual(m), CompositeResidual(n)) => m == n,
        (
            FpResidual { p, modulus },
            FpResidual {
                p: p2,
                modulus: m2,
            },
        )
        | (
            FpPAdic { p, modulus },
            FpPAdic {
                p: p2,
                modulus: m2,
            },
        ) => p == p2 && modulus.monic() == m2.monic(),
        (
            GaussPoint {
                p,
                center,
                radius_exp,
            },
            GaussPoint {
                p: p2,
                center: c2,
                radius_exp: r2,
            },
        ) => p == p2 && radius_exp == r2 && same_padic_disc(*p, center, c2, radius_exp),
        (
            HKCase4 { p, center, major },
            HKCase4 {
                p: p2,
                center: c2,
                major: m2,
            },
        ) => {
            p == p2
                && match (major, m2) {
                    // beyond every value the center is irrelevant: the
                    // whole affine line is one infinitesimal neighborhood
                    (MajorSubset::Empty, MajorSubset::Empty) => true,
                    (MajorSubset::All, MajorSubset::All) => center == c2,
                    (MajorSubset::CutAt(b), MajorSubset::CutAt(b2)) => {
                        ord_p_rat(b, *p) == ord_p_rat(b2, *p)
                            && same_padic_disc(
                                *p,
                                center,
                                c2,
                                &Rat::from_integer((-ord_p_rat(b, *p)).into()),
                            )
                    }
                    _ => false,
                }
        }
        (HKImmediate { p, discs }, HKImmediate { p: p2, discs: d2 }) => {
            if p == p2 && discs == d2 {
                true
            } else {
                // distinct finite prefixes cannot decide whether two chains
                // are cofinal
                return Err(Error::UnsupportedPair(
                    "disc chains compare only by literal equality".into(),
                ));
            }
        }
        (ArchEval(a), ArchEval(b)) => conjugate_points(a, b),
        (ArchInfinitesimal(a), ArchInfinitesimal(b)) => conjugate_points(a, b),
        (ArchInfinity, ArchInfinity) => true,
        _ => false,
    })
}

/// The place induced on Z by restricting a place on a polynomial ring to
/// the constants, named up to equivalence.
pub fn restrict_to_z(place: &PlaceDescriptor) -> PlaceDescriptor {
    use PlaceDescriptor::*;
    match place {
        TrivialOn(_) => TrivialOn(RingId::Z),
        GaussPoint { p, .. } | HKImmediate { p, .. } | HKCase4 { p, .. } => PAdicReal(*p),
        FpResidual { p, .. } | FpPAdic { p, .. } => Residual(*p),
        ArchEval(_) | ArchInfinitesimal(_) | ArchInfinity => ArchimedeanZ,
        other => other.clone(),
    }
}
