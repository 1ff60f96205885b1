//! Point taxonomy of the affine line: the disc-filter classification of
//! points over p-adic data, the archimedean trichotomy by boundedness, the
//! analyticity predicate, and disc membership.
//!
//! A point of the line is a multiplicative seminorm on the polynomial ring.
//! Over p-adic data every point is one of four filter cases: principal at a
//! rational point, a closed-disc (Gauss) filter, a strictly decreasing chain
//! with empty intersection, or a cut of the value group by a major subset.
//! Over archimedean data the trichotomy is by upper and lower boundedness:
//! bounded both ways is evaluation, upper-only is the infinitesimal
//! neighborhood of a point, lower-only the neighborhood of infinity.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{is_prime, ord_p_rat};
use crate::halo::surd::Surd;
use crate::halo::{halo_cmp, HaloDescriptor, HaloValue, Payload, UnitPayload};
use crate::place::{
    evaluate, kernel, Disc, DiscKind, IdealDescriptor, MajorSubset, PlaceDescriptor,
};
use crate::ring::{fmt_rat, rat_int, FpPoly, QPoly, Qi, Rat, RingElement, RingId};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffinePointDescriptor {
    /// The trivial seminorm on the polynomial ring.
    TrivialPoint,
    /// Reduction modulo an irreducible polynomial over F_p.
    FpResidualPoint { p: u64, modulus: FpPoly },
    /// The modulus-adic valuation over F_p.
    FpPAdicPoint { p: u64, modulus: FpPoly },
    /// Case 1: evaluation at a rational point, f to |f(a)|_p.
    HKType1 { p: u64, point: Rat },
    /// Case 2: sup over a closed disc of radius p^radius_exp around center.
    HKType2Gauss {
        p: u64,
        center: Rat,
        radius_exp: Rat,
    },
    /// Case 3: a strictly decreasing chain of closed discs with empty
    /// intersection, stored as a finite prefix.
    HKType3Immediate { p: u64, discs: Vec<Disc> },
    /// Case 4: |X - center| cut in by a major subset of the value group.
    HKType4 {
        p: u64,
        center: Rat,
        major: MajorSubset,
    },
    /// Evaluation at a point of Q(i), with the complex absolute value.
    ArchEvalPoint(Qi),
    /// The infinitesimal neighborhood of a point of Q(i).
    ArchInfPoint(Qi),
    /// The infinitesimal neighborhood of infinity.
    ArchInfinityPoint,
}

use AffinePointDescriptor::*;

impl AffinePointDescriptor {
    pub fn validate(&self) -> Result<()> {
        match self {
            TrivialPoint | ArchEvalPoint(_) | ArchInfPoint(_) | ArchInfinityPoint => Ok(()),
            HKType1 { p, .. } | HKType2Gauss { p, .. } => {
                if is_prime(*p) {
                    Ok(())
                } else {
                    Err(Error::InvalidDescriptor(format!("{p} is not prime")))
                }
            }
            // chain and cut invariants match the corresponding places
            HKType3Immediate { p, discs } => PlaceDescriptor::HKImmediate {
                p: *p,
                discs: discs.clone(),
            }
            .validate(),
            HKType4 { p, center, major } => PlaceDescriptor::HKCase4 {
                p: *p,
                center: center.clone(),
                major: major.clone(),
            }
            .validate(),
            FpResidualPoint { p, modulus } => PlaceDescriptor::FpResidual {
                p: *p,
                modulus: modulus.clone(),
            }
            .validate(),
            FpPAdicPoint { p, modulus } => PlaceDescriptor::FpPAdic {
                p: *p,
                modulus: modulus.clone(),
            }
            .validate(),
        }
    }
}

impl fmt::Display for AffinePointDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrivialPoint => write!(f, "trivial point"),
            FpResidualPoint { p, modulus } => {
                write!(f, "residual point at ({modulus}) over F{p}")
            }
            FpPAdicPoint { p, modulus } => write!(f, "({modulus})-adic point over F{p}"),
            HKType1 { p, point } => write!(f, "evaluation at {} over Q_{p}", fmt_rat(point)),
            HKType2Gauss {
                p,
                center,
                radius_exp,
            } => write!(
                f,
                "gauss point |X - {}| = {p}^{}",
                fmt_rat(center),
                fmt_rat(radius_exp)
            ),
            HKType3Immediate { p, discs } => {
                write!(f, "immediate point over Q_{p}, chain depth {}", discs.len())
            }
            HKType4 { p, center, major } => {
                let m = match major {
                    MajorSubset::Empty => "past every value".to_string(),
                    MajorSubset::All => "below every value".to_string(),
                    MajorSubset::CutAt(b) => format!("just above |{}|", fmt_rat(b)),
                };
                write!(f, "cut point |X - {}| {m} over Q_{p}", fmt_rat(center))
            }
            ArchEvalPoint(a) => write!(f, "evaluation at {a}"),
            ArchInfPoint(a) => write!(f, "infinitesimal neighborhood of {a}"),
            ArchInfinityPoint => write!(f, "infinitesimal neighborhood of infinity"),
        }
    }
}

/// The filter of discs a non-archimedean point realizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FilterData {
    /// All discs around the point: the principal ultrafilter.
    Principal { p: u64, point: Rat },
    /// The discs containing one fixed closed disc.
    ClosedDiscs { p: u64, disc: Disc },
    /// A decreasing chain with empty intersection; only a prefix is known.
    EmptyIntersection { p: u64, discs: Vec<Disc> },
    /// The filter cut out by a major subset of the value group.
    MajorCut {
        p: u64,
        center: Rat,
        major: MajorSubset,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterCaseReport {
    pub case_number: u8,
    pub filter: FilterData,
}

impl FilterCaseReport {
    /// "1" through "4(c)"; the letter orders the major subset as empty,
    /// all, cut.
    pub fn case_label(&self) -> String {
        match &self.filter {
            FilterData::Principal { .. } => "1".into(),
            FilterData::ClosedDiscs { .. } => "2".into(),
            FilterData::EmptyIntersection { .. } => "3".into(),
            FilterData::MajorCut { major, .. } => match major {
                MajorSubset::Empty => "4(a)".into(),
                MajorSubset::All => "4(b)".into(),
                MajorSubset::CutAt(_) => "4(c)".into(),
            },
        }
    }
}

/// Which disc-filter case a non-archimedean point over p-adic data
/// realizes. Archimedean points have no ultrametric filter; the trivial and
/// finite-field points carry no p-adic disc data.
pub fn hk_classify(point: &AffinePointDescriptor) -> Result<FilterCaseReport> {
    point.validate()?;
    let (case_number, filter) = match point {
        HKType1 { p, point } => (
            1,
            FilterData::Principal {
                p: *p,
                point: point.clone(),
            },
        ),
        HKType2Gauss {
            p,
            center,
            radius_exp,
        } => (
            2,
            FilterData::ClosedDiscs {
                p: *p,
                disc: Disc::closed(center.clone(), radius_exp.clone()),
            },
        ),
        HKType3Immediate { p, discs } => (
            3,
            FilterData::EmptyIntersection {
                p: *p,
                discs: discs.clone(),
            },
        ),
        HKType4 { p, center, major } => (
            4,
            FilterData::MajorCut {
                p: *p,
                center: center.clone(),
                major: major.clone(),
            },
        ),
        ArchEvalPoint(_) | ArchInfPoint(_) | ArchInfinityPoint => {
            return Err(Error::NotNonArchimedean(format!(
                "{point} carries no ultrametric disc filter"
            )))
        }
        TrivialPoint | FpResidualPoint { .. } | FpPAdicPoint { .. } => {
            return Err(Error::UnsupportedPlace(format!(
                "{point} carries no p-adic disc data"
            )))
        }
    };
    Ok(FilterCaseReport {
        case_number,
        filter,
    })
}

/// The catalog place presenting the point. Evaluation points over Q_p have
/// no catalog entry; evaluate them through hk_evaluate.
pub fn point_to_place(point: &AffinePointDescriptor) -> Result<PlaceDescriptor> {
    point.validate()?;
    Ok(match point {
        TrivialPoint => PlaceDescriptor::TrivialOn(RingId::ZX),
        FpResidualPoint { p, modulus } => PlaceDescriptor::FpResidual {
            p: *p,
            modulus: modulus.clone(),
        },
        FpPAdicPoint { p, modulus } => PlaceDescriptor::FpPAdic {
            p: *p,
            modulus: modulus.clone(),
        },
        HKType1 { .. } => {
            return Err(Error::UnsupportedPlace(format!(
                "{point} has no catalog entry"
            )))
        }
        HKType2Gauss {
            p,
            center,
            radius_exp,
        } => PlaceDescriptor::GaussPoint {
            p: *p,
            center: center.clone(),
            radius_exp: radius_exp.clone(),
        },
        HKType3Immediate { p, discs } => PlaceDescriptor::HKImmediate {
            p: *p,
            discs: discs.clone(),
        },
        HKType4 { p, center, major } => PlaceDescriptor::HKCase4 {
            p: *p,
            center: center.clone(),
            major: major.clone(),
        },
        ArchEvalPoint(a) => PlaceDescriptor::ArchEval(a.clone()),
        ArchInfPoint(a) => PlaceDescriptor::ArchInfinitesimal(a.clone()),
        ArchInfinityPoint => PlaceDescriptor::ArchInfinity,
    })
}

/// The taxonomy tag of a catalog place on a polynomial ring, decided by
/// restriction to the constants and a per-branch test: the kernel over a
/// finite field, the disc data over Q_p, boundedness over the archimedean
/// base.
pub fn classify_affine_point(place: &PlaceDescriptor) -> Result<AffinePointDescriptor> {
    place.validate()?;
    if place.domain() == RingId::Z {
        return Err(Error::DomainMismatch(format!(
            "{place} lives on Z, not on a polynomial ring"
        )));
    }
    let base = crate::place::classify::restrict_to_z(place);
    Ok(match base {
        PlaceDescriptor::TrivialOn(_) => TrivialPoint,
        PlaceDescriptor::Residual(_) => {
            // finite-field branch: the kernel separates reduction from the
            // modulus-adic valuation
            return fp_line_classify(place);
        }
        PlaceDescriptor::PAdicReal(_) => match place {
            PlaceDescriptor::GaussPoint {
                p,
                center,
                radius_exp,
            } => HKType2Gauss {
                p: *p,
                center: center.clone(),
                radius_exp: radius_exp.clone(),
            },
            PlaceDescriptor::HKImmediate { p, discs } => HKType3Immediate {
                p: *p,
                discs: discs.clone(),
            },
            PlaceDescriptor::HKCase4 { p, center, major } => HKType4 {
                p: *p,
                center: center.clone(),
                major: major.clone(),
            },
            _ => unreachable!("every p-adic line place carries disc data"),
        },
        PlaceDescriptor::ArchimedeanZ => {
            let point_of = |place: &PlaceDescriptor| match place {
                PlaceDescriptor::ArchEval(a) | PlaceDescriptor::ArchInfinitesimal(a) => {
                    a.clone()
                }
                _ => Qi::zero(),
            };
            match boundedness_oracle(place)? {
                (true, true) => ArchEvalPoint(point_of(place)),
                (true, false) => ArchInfPoint(point_of(place)),
                (false, true) => ArchInfinityPoint,
                (false, false) => {
                    return Err(Error::Inconclusive(
                        "a multiplicative point is upper or lower bounded".into(),
                    ))
                }
            }
        }
        other => {
            return Err(Error::Inconclusive(format!(
                "restriction {other} matches no taxonomy branch"
            )))
        }
    })
}

/// Exact evaluation at a point of the line.
pub fn hk_evaluate(point: &AffinePointDescriptor, f: &RingElement) -> Result<HaloValue> {
    point.validate()?;
    match point {
        TrivialPoint => {
            let (num, _) = f.as_poly_fraction()?;
            Ok(if num.is_zero() {
                HaloValue::zero(&HaloDescriptor::Trivial)
            } else {
                HaloValue::one(&HaloDescriptor::Trivial)
            })
        }
        HKType1 { p, point: a } => {
            let (num, den) = f.as_poly_fraction()?;
            let dv = den.eval(a);
            if dv.is_zero() {
                return Err(Error::NotRepresentable(format!(
                    "denominator vanishes at {}; cancel the common factor first",
                    fmt_rat(a)
                )));
            }
            let halo = HaloDescriptor::TropicalOf(crate::group::OrderedGroupDescriptor::new(
                vec![p.to_string()],
            ));
            let nv = num.eval(a);
            if nv.is_zero() {
                return Ok(HaloValue::zero(&halo));
            }
            let e = rat_int(ord_p_rat(&dv, *p) - ord_p_rat(&nv, *p));
            HaloValue::new(&halo, Payload::Unit(UnitPayload::Group(vec![e])))
        }
        _ => evaluate(&point_to_place(point)?, f),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalyticityReason {
    Analytic,
    InfinitesimalNbhdOfAlgebraicPoint,
    InfinitesimalNbhdOfInfinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalyticityVerdict {
    pub analytic: bool,
    pub reason: AnalyticityReason,
}

/// Whether the point survives to the analytic spectrum. The excluded points
/// are exactly the infinitesimal neighborhoods: of an algebraic point (the
/// cut below every value, and the archimedean infinitesimal disc) and of
/// infinity (the cut past every value, and its archimedean counterpart).
pub fn is_analytic(point: &AffinePointDescriptor) -> AnalyticityVerdict {
    let reason = match point {
        HKType4 {
            major: MajorSubset::Empty,
            ..
        }
        | ArchInfinityPoint => AnalyticityReason::InfinitesimalNbhdOfInfinity,
        HKType4 {
            major: MajorSubset::All,
            ..
        }
        | ArchInfPoint(_) => AnalyticityReason::InfinitesimalNbhdOfAlgebraicPoint,
        _ => AnalyticityReason::Analytic,
    };
    AnalyticityVerdict {
        analytic: reason == AnalyticityReason::Analytic,
        reason,
    }
}

/// p^radius_exp as a value of the point's codomain halo.
fn embed_radius(point: &AffinePointDescriptor, radius_exp: &Rat) -> Result<HaloValue> {
    let exps = match point {
        HKType1 { .. } | HKType2Gauss { .. } | HKType3Immediate { .. } => {
            vec![radius_exp.clone()]
        }
        HKType4 { major, .. } => match major {
            // group values have no infinitesimal component
            MajorSubset::Empty | MajorSubset::All => vec![Rat::zero(), radius_exp.clone()],
            MajorSubset::CutAt(_) => vec![radius_exp.clone(), Rat::zero()],
        },
        _ => unreachable!("radius embedding is called on p-adic points only"),
    };
    let probe = hk_evaluate(point, &RingElement::one(RingId::QX)?)?;
    HaloValue::new(&probe.halo, Payload::Unit(UnitPayload::Group(exps)))
}

/// Whether the point lies in the disc: |X - center| compared with
/// p^radius_exp at the point. Defined for points over p-adic data; the
/// p-power radius does not embed in an archimedean or trivial value halo.
pub fn disc_membership(point: &AffinePointDescriptor, disc: &Disc) -> Result<bool> {
    point.validate()?;
    match point {
        HKType1 { .. } | HKType2Gauss { .. } | HKType3Immediate { .. } | HKType4 { .. } => {}
        _ => {
            return Err(Error::UnsupportedPlace(format!(
                "p-power disc radii do not embed in the value halo of {point}"
            )))
        }
    }
    let shifted = RingElement::QX(QPoly::new(vec![-disc.center.clone(), Rat::one()]));
    let v = hk_evaluate(point, &shifted)?;
    let radius = embed_radius(point, &disc.radius_exp)?;
    let cmp = halo_cmp(&v, &radius)?;
    Ok(match disc.kind {
        DiscKind::Closed => cmp != std::cmp::Ordering::Greater,
        DiscKind::Open => cmp == std::cmp::Ordering::Less,
    })
}

/// Splits a place on F_p[X] by its kernel: a nonzero kernel is reduction
/// modulo the generator, a zero kernel the generator-adic valuation.
pub fn fp_line_classify(place: &PlaceDescriptor) -> Result<AffinePointDescriptor> {
    place.validate()?;
    match place {
        PlaceDescriptor::FpResidual { p, modulus }
        | PlaceDescriptor::FpPAdic { p, modulus } => {
            Ok(match kernel(place) {
                IdealDescriptor::PrincipalPoly(m) => FpResidualPoint { p: *p, modulus: m },
                IdealDescriptor::Zero => FpPAdicPoint {
                    p: *p,
                    modulus: modulus.clone(),
                },
                other => unreachable!("finite-field kernels are principal or zero: {other:?}"),
            })
        }
        other => Err(Error::DomainMismatch(format!(
            "{other} does not live on a finite-field polynomial ring"
        ))),
    }
}

/// Upper and lower boundedness of an archimedean point: whether every
/// nonzero polynomial admits a rational bound above, and a nonzero rational
/// bound below. Polynomials in the kernel of an evaluation point are
/// excluded from the lower bound; the kernel is classified separately.
pub fn boundedness_oracle(place: &PlaceDescriptor) -> Result<(bool, bool)> {
    place.validate()?;
    match place {
        PlaceDescriptor::ArchEval(_) => Ok((true, true)),
        PlaceDescriptor::ArchInfinitesimal(_) => Ok((true, false)),
        PlaceDescriptor::ArchInfinity => Ok((false, true)),
        other => Err(Error::UnsupportedPlace(format!(
            "boundedness concerns archimedean line places, not {other}"
        ))),
    }
}

/// The real magnitude of an archimedean line value, together with the sign
/// of its infinitesimal exponent: positive means infinitesimally small,
/// negative infinitely large.
fn arch_magnitude(v: &HaloValue) -> Result<(i8, Surd)> {
    let unit = match &v.payload {
        Payload::Zero => return Ok((0, Surd::zero())),
        Payload::Unit(u) => u,
    };
    match unit {
        UnitPayload::Surd(s) => Ok((0, s.clone())),
        UnitPayload::Lex(first, second) => {
            let (UnitPayload::Group(exps), UnitPayload::Surd(s)) = (&**first, &**second)
            else {
                return Err(Error::MixedHalos("not an archimedean line value".into()));
            };
            // the stored exponent orders the value against the reals
            // directly: negative sits below every positive real, positive
            // above every real, whatever the generator is called
            let e = &exps[0];
            let sign = if e.is_zero() {
                0
            } else if *e < Rat::zero() {
                1
            } else {
                -1
            };
            Ok((sign, s.clone()))
        }
        _ => Err(Error::MixedHalos("not an archimedean line value".into())),
    }
}

/// A rational lambda with |f| <= |lambda| at the place, as a power of two,
/// when one exists.
pub fn upper_bound_witness(
    place: &PlaceDescriptor,
    f: &RingElement,
) -> Result<Option<BigInt>> {
    boundedness_oracle(place)?;
    let (sign, s) = arch_magnitude(&evaluate(place, f)?)?;
    match sign {
        1 => Ok(Some(BigInt::one())),
        -1 => Ok(None),
        _ => {
            let mut k: u32 = 0;
            loop {
                let lambda = BigInt::one() << k;
                let bound = Surd::from_rat(Rat::from_integer(lambda.clone()))?;
                if s.cmp_surd(&bound) != std::cmp::Ordering::Greater {
                    return Ok(Some(lambda));
                }
                k = if k == 0 { 1 } else { k * 2 };
            }
        }
    }
}

/// A nonzero rational mu with |mu| <= |f| at the place, as an inverse power
/// of two, when one exists. Zero values have no lower bound.
pub fn lower_bound_witness(place: &PlaceDescriptor, f: &RingElement) -> Result<Option<Rat>> {
    boundedness_oracle(place)?;
    let v = evaluate(place, f)?;
    if v.is_zero() {
        return Ok(None);
    }
    let (sign, s) = arch_magnitude(&v)?;
    match sign {
        1 => Ok(None),
        -1 => Ok(Some(Rat::one())),
        _ => {
            let mut k: u32 = 0;
            loop {
                let mu = Rat::new(BigInt::one(), BigInt::one() << k);
                if Surd::from_rat(mu.clone())?.cmp_surd(&s) != std::cmp::Ordering::Greater {
                    return Ok(Some(mu));
                }
                k = if k == 0 { 1 } else { k * 2 };
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn all_points() -> Vec<AffinePointDescriptor> {
        vec![
            TrivialPoint,
            FpResidualPoint {
                p: 2,
                modulus: FpPoly::new(2, vec![1, 1, 1]).unwrap(),
            },
            FpPAdicPoint {
                p: 3,
                modulus: FpPoly::x(3),
            },
            HKType1 {
                p: 5,
                point: rat_int(2),
            },
            HKType2Gauss {
                p: 5,
                center: Rat::zero(),
                radius_exp: Rat::zero(),
            },
            HKType3Immediate {
                p: 3,
                discs: vec![
                    Disc::closed(Rat::zero(), rat_int(-1)),
                    Disc::closed(rat_int(3), rat_int(-2)),
                ],
            },
            HKType4 {
                p: 2,
                center: Rat::zero(),
                major: MajorSubset::Empty,
            },
            HKType4 {
                p: 2,
                center: Rat::zero(),
                major: MajorSubset::All,
            },
            HKType4 {
                p: 2,
                center: Rat::zero(),
                major: MajorSubset::CutAt(rat_int(4)),
            },
            ArchEvalPoint(Qi::new(Rat::zero(), Rat::one())),
            ArchInfPoint(Qi::zero()),
            ArchInfinityPoint,
        ]
    }

    #[test]
    fn filter_cases() {
        let labels: Vec<String> = all_points()
            .iter()
            .filter_map(|pt| hk_classify(pt).ok().map(|r| r.case_label()))
            .collect();
        assert_eq!(labels, ["1", "2", "3", "4(a)", "4(b)", "4(c)"]);
        assert!(matches!(
            hk_classify(&ArchInfinityPoint),
            Err(Error::NotNonArchimedean(_))
        ));
        assert!(matches!(
            hk_classify(&TrivialPoint),
            Err(Error::UnsupportedPlace(_))
        ));
        let report = hk_classify(&HKType2Gauss {
            p: 5,
            center: rat_int(1),
            radius_exp: rat_int(-2),
        })
        .unwrap();
        assert_eq!(report.case_number, 2);
        assert_eq!(
            report.filter,
            FilterData::ClosedDiscs {
                p: 5,
                disc: Disc::closed(rat_int(1), rat_int(-2)),
            }
        );
    }

    #[test]
    fn place_point_round_trip() {
        for pt in all_points() {
            let Ok(place) = point_to_place(&pt) else {
                assert!(matches!(pt, HKType1 { .. }));
                continue;
            };
            assert_eq!(classify_affine_point(&place).unwrap(), pt, "{pt}");
        }
        // places on Z have no line taxonomy
        assert!(matches!(
            classify_affine_point(&PlaceDescriptor::PAdicReal(5)),
            Err(Error::DomainMismatch(_))
        ));
    }

    #[test]
    fn evaluation_at_a_rational_point() {
        let pt = HKType1 {
            p: 5,
            point: rat_int(2),
        };
        // (X - 2)(X + 2) vanishes at 2
        assert!(hk_evaluate(&pt, &RingElement::zx(&[-4, 0, 1]))
            .unwrap()
            .is_zero());
        // X + 3 evaluates to 5
        let v = hk_evaluate(&pt, &RingElement::zx(&[3, 1])).unwrap();
        match &v.payload {
            Payload::Unit(UnitPayload::Group(e)) => assert_eq!(e, &vec![rat_int(-1)]),
            other => panic!("unexpected payload {other:?}"),
        }
        // a pole at the point is rejected
        let pole = RingElement::qx_frac(
            QPoly::constant(Rat::one()),
            QPoly::new(vec![rat_int(-2), Rat::one()]),
        )
        .unwrap();
        assert!(matches!(
            hk_evaluate(&pt, &pole),
            Err(Error::NotRepresentable(_))
        ));
        // the trivial point sees only vanishing
        assert!(hk_evaluate(&TrivialPoint, &RingElement::zx(&[3, 1]))
            .unwrap()
            .is_one());
    }

    #[test]
    fn analyticity_exclusion_list() {
        for pt in all_points() {
            let verdict = is_analytic(&pt);
            let expected_reason = match &pt {
                HKType4 {
                    major: MajorSubset::Empty,
                    ..
                }
                | ArchInfinityPoint => AnalyticityReason::InfinitesimalNbhdOfInfinity,
                HKType4 {
                    major: MajorSubset::All,
                    ..
                }
                | ArchInfPoint(_) => AnalyticityReason::InfinitesimalNbhdOfAlgebraicPoint,
                _ => AnalyticityReason::Analytic,
            };
            assert_eq!(verdict.reason, expected_reason, "{pt}");
            assert_eq!(
                verdict.analytic,
                expected_reason == AnalyticityReason::Analytic,
                "{pt}"
            );
        }
    }

    #[test]
    fn disc_membership_table() {
        let at_two = HKType1 {
            p: 5,
            point: rat_int(2),
        };
        // the point lies in every disc around itself
        for r in [-3i64, 0, 4] {
            assert!(disc_membership(&at_two, &Disc::closed(rat_int(2), rat_int(r))).unwrap());
            assert!(disc_membership(
                &at_two,
                &Disc {
                    center: rat_int(2),
                    radius_exp: rat_int(r),
                    kind: DiscKind::Open,
                }
            )
            .unwrap());
        }
        // |2 - 0| = 1 at p = 5: inside closed radius 1, outside radius 1/5
        assert!(disc_membership(&at_two, &Disc::closed(Rat::zero(), Rat::zero())).unwrap());
        assert!(!disc_membership(&at_two, &Disc::closed(Rat::zero(), rat_int(-1))).unwrap());

        // the gauss point of radius p^r sits on the rim of its own disc
        let gauss = HKType2Gauss {
            p: 5,
            center: Rat::zero(),
            radius_exp: rat_int(-1),
        };
        assert!(disc_membership(&gauss, &Disc::closed(Rat::zero(), rat_int(-1))).unwrap());
        assert!(!disc_membership(
            &gauss,
            &Disc {
                center: Rat::zero(),
                radius_exp: rat_int(-1),
                kind: DiscKind::Open,
            }
        )
        .unwrap());

        // below every value: inside every open disc around the center
        let all = HKType4 {
            p: 2,
            center: rat_int(1),
            major: MajorSubset::All,
        };
        for r in [-5i64, 0, 7] {
            assert!(disc_membership(
                &all,
                &Disc {
                    center: rat_int(1),
                    radius_exp: rat_int(r),
                    kind: DiscKind::Open,
                }
            )
            .unwrap());
        }
        // past every value: outside every disc
        let empty = HKType4 {
            p: 2,
            center: rat_int(1),
            major: MajorSubset::Empty,
        };
        for r in [-5i64, 0, 7] {
            assert!(!disc_membership(&empty, &Disc::closed(rat_int(1), rat_int(r))).unwrap());
        }

        // monotone in the radius
        let imm = HKType3Immediate {
            p: 3,
            discs: vec![
                Disc::closed(Rat::zero(), rat_int(-1)),
                Disc::closed(rat_int(3), rat_int(-2)),
            ],
        };
        let mut last = false;
        for r in [-3i64, -2, -1, 0, 2] {
            let now = disc_membership(&imm, &Disc::closed(Rat::zero(), rat_int(r))).unwrap();
            assert!(now || !last, "membership must be monotone in the radius");
            last = now;
        }
        assert!(last);

        assert!(matches!(
            disc_membership(&ArchInfinityPoint, &Disc::closed(Rat::zero(), Rat::zero())),
            Err(Error::UnsupportedPlace(_))
        ));
    }

    #[test]
    fn finite_field_split() {
        let modulus = FpPoly::new(2, vec![1, 1, 1]).unwrap();
        let residual = PlaceDescriptor::FpResidual {
            p: 2,
            modulus: modulus.clone(),
        };
        let adic = PlaceDescriptor::FpPAdic {
            p: 2,
            modulus: modulus.clone(),
        };
        assert_eq!(
            fp_line_classify(&residual).unwrap(),
            FpResidualPoint {
                p: 2,
                modulus: modulus.clone()
            }
        );
        assert_eq!(
            fp_line_classify(&adic).unwrap(),
            FpPAdicPoint { p: 2, modulus }
        );
        let reducible = FpPoly::new(2, vec![1, 0, 1]).unwrap();
        assert!(matches!(
            fp_line_classify(&PlaceDescriptor::FpResidual {
                p: 2,
                modulus: reducible
            }),
            Err(Error::ReducibleModulus(_))
        ));
        assert!(matches!(
            fp_line_classify(&PlaceDescriptor::PAdicReal(3)),
            Err(Error::DomainMismatch(_))
        ));
    }

    #[test]
    fn boundedness_table_and_witnesses() {
        let i = Qi::new(Rat::zero(), Rat::one());
        let eval = PlaceDescriptor::ArchEval(i.clone());
        let inf = PlaceDescriptor::ArchInfinitesimal(Qi::zero());
        let infinity = PlaceDescriptor::ArchInfinity;
        assert_eq!(boundedness_oracle(&eval).unwrap(), (true, true));
        assert_eq!(boundedness_oracle(&inf).unwrap(), (true, false));
        assert_eq!(boundedness_oracle(&infinity).unwrap(), (false, true));
        assert!(boundedness_oracle(&PlaceDescriptor::GaussPoint {
            p: 5,
            center: Rat::zero(),
            radius_exp: Rat::zero()
        })
        .is_err());

        // |X + 2| = sqrt(5) at i: witnesses on both sides
        let f = RingElement::zx(&[2, 1]);
        let lambda = upper_bound_witness(&eval, &f).unwrap().unwrap();
        assert_eq!(lambda, BigInt::from(4));
        let mu = lower_bound_witness(&eval, &f).unwrap().unwrap();
        assert_eq!(mu, rat(1, 1));

        // X is infinitesimally small near 0: upper bounded, never lower
        let x = RingElement::zx(&[0, 1]);
        assert_eq!(upper_bound_witness(&inf, &x).unwrap(), Some(BigInt::one()));
        assert_eq!(lower_bound_witness(&inf, &x).unwrap(), None);
        // and 1/X is infinitely large there
        let inv_x = RingElement::qx_frac(
            QPoly::constant(Rat::one()),
            QPoly::new(vec![Rat::zero(), Rat::one()]),
        )
        .unwrap();
        assert_eq!(upper_bound_witness(&inf, &inv_x).unwrap(), None);
        assert_eq!(
            lower_bound_witness(&inf, &inv_x).unwrap(),
            Some(Rat::one())
        );

        // at infinity the roles flip
        assert_eq!(upper_bound_witness(&infinity, &x).unwrap(), None);
        assert_eq!(
            lower_bound_witness(&infinity, &x).unwrap(),
            Some(Rat::one())
        );
        assert_eq!(
            upper_bound_witness(&infinity, &inv_x).unwrap(),
            Some(BigInt::one())
        );
        assert_eq!(lower_bound_witness(&infinity, &inv_x).unwrap(), None);

        // 3/2 at the constant polynomial: dyadic witnesses straddle it
        let c = RingElement::Rat(rat(3, 2));
        assert_eq!(
            upper_bound_witness(&eval, &c).unwrap(),
            Some(BigInt::from(2))
        );
        assert_eq!(lower_bound_witness(&eval, &c).unwrap(), Some(rat(1, 1)));
        // zero has an upper witness but no lower one
        let z = RingElement::int(0);
        assert_eq!(upper_bound_witness(&eval, &z).unwrap(), Some(BigInt::one()));
        assert_eq!(lower_bound_witness(&eval, &z).unwrap(), None);
    }
}
