//! End-to-end flows through the public surface: catalog evaluation, Z
//! classification, point equivalence, sections and germs, and the spectrum
//! enumeration. These pin the behavior a front end relies on.

use num_traits::{One, Zero};

use halos::halo::tempered::{tempered_class, TemperedVerdict};
use halos::halo::{catalog_halos, HaloDescriptor};
use halos::place::classify::{classify_on_z, ZClassification};
use halos::place::retract::huber_retract;
use halos::place::{
    catalog_places, codomain_halo, evaluate, is_nonarchimedean, PlaceDescriptor,
};
use halos::ring::{rat, Qi, Rat, RingElement, RingId};
use halos::sheaf::{germ_at, sections_on_domain, tiny_ball_report, RingDescriptor};
use halos::spectra::{speh_points_of_z, RationalDomain, SpehPoint};
use halos::Error;

#[test]
fn every_catalog_value_lands_in_the_declared_halo() {
    for place in catalog_places() {
        let ring = place.domain();
        let expected = codomain_halo(&place);
        for n in -6..=6 {
            let elem = RingElement::from_small_int(ring, n).unwrap();
            match evaluate(&place, &elem) {
                Ok(v) => assert_eq!(v.halo, expected, "halo mismatch at {place} on {elem}"),
                Err(Error::InsufficientFilterDepth) => {
                    assert!(
                        matches!(place, PlaceDescriptor::HKImmediate { .. }),
                        "only disc chains may run out of depth, {place} did"
                    );
                }
                Err(e) => panic!("{place} failed on {elem}: {e}"),
            }
        }
        let zero = RingElement::zero(ring).unwrap();
        let one = RingElement::one(ring).unwrap();
        assert!(evaluate(&place, &zero).unwrap().is_zero(), "|0| at {place}");
        assert!(evaluate(&place, &one).unwrap().is_one(), "|1| at {place}");
    }
}

#[test]
fn classification_tags_match_the_construction() {
    use ZClassification::*;
    let rows: Vec<(PlaceDescriptor, ZClassification)> = vec![
        (PlaceDescriptor::TrivialOn(RingId::Z), Trivial),
        (PlaceDescriptor::PAdicTrop(2), PAdic(2)),
        (PlaceDescriptor::PAdicTrop(5), PAdic(5)),
        (PlaceDescriptor::PAdicReal(2), PAdic(2)),
        (PlaceDescriptor::PAdicReal(7), PAdic(7)),
        (PlaceDescriptor::ArchimedeanZ, Archimedean),
        (PlaceDescriptor::Residual(2), ResidualAt(2)),
        (PlaceDescriptor::Residual(5), ResidualAt(5)),
    ];
    for (place, expected) in rows {
        assert_eq!(classify_on_z(&place, 100).unwrap(), expected, "{place}");
    }

    // composite moduli are caught by the multiplicativity guard
    for place in [
        PlaceDescriptor::CompositeAdic(6),
        PlaceDescriptor::CompositeResidual(6),
    ] {
        match classify_on_z(&place, 100).unwrap() {
            Inconclusive(reason) => assert!(
                reason.contains("not multiplicative"),
                "unexpected reason {reason:?}"
            ),
            other => panic!("{place} classified as {other:?}"),
        }
    }

    // classification is a question about Z
    assert!(classify_on_z(&PlaceDescriptor::TrivialOn(RingId::ZX), 100).is_err());

    // a bound below the relevant prime is honest about not knowing
    match classify_on_z(&PlaceDescriptor::PAdicReal(13), 7).unwrap() {
        Inconclusive(_) => {}
        other => panic!("bound 7 cannot see p = 13, got {other:?}"),
    }
}

#[test]
fn point_identity_is_multiplicative_equivalence() {
    let point = |p: PlaceDescriptor| SpehPoint::new(p).unwrap();
    let trop2 = point(PlaceDescriptor::PAdicTrop(2));
    let real2 = point(PlaceDescriptor::PAdicReal(2));
    let real7 = point(PlaceDescriptor::PAdicReal(7));
    assert!(trop2.same_point(&real2).unwrap());
    assert!(!trop2.same_point(&real7).unwrap());

    // conjugate archimedean centers evaluate identically
    let i = Qi::new(Rat::zero(), Rat::one());
    let minus_i = Qi::new(Rat::zero(), -Rat::one());
    let eval_i = point(PlaceDescriptor::ArchEval(i));
    let eval_minus_i = point(PlaceDescriptor::ArchEval(minus_i));
    assert!(eval_i.same_point(&eval_minus_i).unwrap());

    let arch = point(PlaceDescriptor::ArchimedeanZ);
    assert!(!arch.same_point(&real2).unwrap());
    assert!(!arch.same_point(&point(PlaceDescriptor::TrivialOn(RingId::Z))).unwrap());
}

#[test]
fn sections_and_germs_follow_the_localization_table() {
    let dom = |nums: &[i64], den: i64| {
        RationalDomain::new(
            RingId::Z,
            nums.iter().map(|&n| RingElement::int(n)).collect(),
            RingElement::int(den),
            true,
        )
        .unwrap()
    };
    assert_eq!(
        sections_on_domain(&RationalDomain::full(RingId::Z).unwrap()).unwrap(),
        RingDescriptor::LocalizedIntegers(1)
    );
    assert_eq!(
        sections_on_domain(&dom(&[], 6)).unwrap(),
        RingDescriptor::LocalizedIntegers(6)
    );
    assert_eq!(
        sections_on_domain(&dom(&[2], 1)).unwrap(),
        RingDescriptor::PAdicIntegers(2)
    );
    assert_eq!(
        sections_on_domain(&dom(&[0, 25], 5)).unwrap(),
        RingDescriptor::PAdicField(5)
    );
    assert_eq!(
        sections_on_domain(&dom(&[1], 2)).unwrap(),
        RingDescriptor::RealField
    );

    let germ = |p: PlaceDescriptor| germ_at(&SpehPoint::new(p).unwrap());
    assert_eq!(
        germ(PlaceDescriptor::Residual(3)).unwrap(),
        RingDescriptor::PAdicIntegers(3)
    );
    assert_eq!(
        germ(PlaceDescriptor::PAdicTrop(5)).unwrap(),
        RingDescriptor::PAdicField(5)
    );
    assert_eq!(
        germ(PlaceDescriptor::ArchimedeanZ).unwrap(),
        RingDescriptor::RealField
    );
    assert_eq!(
        germ(PlaceDescriptor::TrivialOn(RingId::Z)).unwrap(),
        RingDescriptor::RationalField
    );
    assert!(germ(PlaceDescriptor::GaussPoint {
        p: 5,
        center: Rat::zero(),
        radius_exp: Rat::zero(),
    })
    .is_err());
}

#[test]
fn the_spectrum_enumerates_distinct_points() {
    let points = speh_points_of_z(10).unwrap();
    // trivial + archimedean + (p-adic, residual) for p in {2, 3, 5, 7}
    assert_eq!(points.len(), 10);
    for (i, x) in points.iter().enumerate() {
        for y in &points[i + 1..] {
            assert!(
                !x.same_point(y).unwrap(),
                "{x} and {y} collide in the enumeration"
            );
        }
    }
}

#[test]
fn retraction_fixes_the_nonarchimedean_catalog() {
    for place in catalog_places() {
        if is_nonarchimedean(&place).unwrap() {
            assert_eq!(huber_retract(&place), place, "{place} moved");
        }
    }
    let retracted = huber_retract(&PlaceDescriptor::ArchInfinitesimal(Qi::from_rat(rat(1, 2))));
    assert_eq!(
        retracted,
        PlaceDescriptor::ArchEval(Qi::from_rat(rat(1, 2)))
    );
}

#[test]
fn tempered_verdicts_follow_the_constructor_matrix() {
    let expected = [true, true, true, true, true, false, false, true];
    let catalog = catalog_halos();
    assert_eq!(catalog.len(), expected.len());
    for (h, want_tempered) in catalog.iter().zip(expected) {
        match tempered_class(h) {
            TemperedVerdict::Tempered => assert!(want_tempered, "{h:?} is not tempered"),
            TemperedVerdict::NotTempered { .. } => {
                assert!(!want_tempered, "{h:?} is tempered")
            }
            TemperedVerdict::Unknown => panic!("catalog halo {h:?} left unclassified"),
        }
    }
    // nested first factors are outside the classified shapes
    let nested = HaloDescriptor::lex(
        HaloDescriptor::lex(HaloDescriptor::NonnegRationals, HaloDescriptor::NonnegRationals),
        HaloDescriptor::NonnegRationals,
    );
    assert_eq!(tempered_class(&nested), TemperedVerdict::Unknown);
}

#[test]
fn tiny_balls_verify_one_of_the_two_disjuncts() {
    use halos::sheaf::TinyBallDisjunct;
    let report = tiny_ball_report(&PlaceDescriptor::PAdicReal(5)).unwrap();
    assert!(matches!(report.disjunct, TinyBallDisjunct::BigUnit { .. }));
    assert!(report.induces_ring_topology);
    let report = tiny_ball_report(&PlaceDescriptor::Residual(5)).unwrap();
    assert!(matches!(report.disjunct, TinyBallDisjunct::DiscreteBalls));
    assert!(report.induces_ring_topology);
    let report = tiny_ball_report(&PlaceDescriptor::TrivialOn(RingId::Z)).unwrap();
    assert!(matches!(report.disjunct, TinyBallDisjunct::DiscreteBalls));
    // the criterion presumes multiplicativity, composite moduli get no verdict
    assert!(tiny_ball_report(&PlaceDescriptor::CompositeAdic(6)).is_err());
}
