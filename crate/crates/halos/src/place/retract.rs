//! Retraction of catalog places onto their analytic cores, and the
//! compatibility subgroup computation that drives it.
//!
//! Each place determines an ordered value group together with the convex
//! subgroup of values compatible with the topology (computed from the value
//! of 2). Quotienting by that subgroup collapses infinitesimal coordinates.
//! The only catalog place whose collapse lands on a different catalog entry
//! is the infinitesimal neighborhood of an algebraic point: its quotient is
//! evaluation at the point. The neighborhood of infinity stays fixed; there
//! is no evaluation to collapse to, and the would-be leading-coefficient map
//! is not even subadditive (see the unit tests).

use crate::group::{huber_delta, ConvexSubgroup, GroupElement, OrderedGroupDescriptor};
use crate::halo::{HaloDescriptor, HaloValue, Payload, UnitPayload};
use crate::place::PlaceDescriptor;
use crate::ring::{rat_int, Rat};
use crate::{Error, Result};

/// The value group of the place in model coordinates, dominant axis first,
/// and the value of 2 in those coordinates. For archimedean places the real
/// multiplicative group embeds as a single "arch" axis with |2| at exponent
/// 1; the compatibility computation only uses the coordinate signs, which
/// the embedding preserves.
pub fn model_presentation(place: &PlaceDescriptor) -> (OrderedGroupDescriptor, GroupElement) {
    use PlaceDescriptor::*;
    let (labels, two): (Vec<String>, Vec<i64>) = match place {
        TrivialOn(_) | Residual(_) | CompositeResidual(_) | FpResidual { .. } => {
            (vec![], vec![])
        }
        PAdicTrop(p) | PAdicReal(p) | GaussPoint { p, .. } | HKImmediate { p, .. } => {
            (vec![p.to_string()], vec![if *p == 2 { -1 } else { 0 }])
        }
        // m >= 4 never divides 2, so |2| is 1 at every composite place
        CompositeAdic(m) => (vec![m.to_string()], vec![0]),
        FpPAdic { modulus, .. } => (vec![modulus.to_string()], vec![0]),
        HKCase4 { p, major, .. } => {
            let two_p = if *p == 2 { -1 } else { 0 };
            use crate::place::MajorSubset::*;
            match major {
                Empty => (vec!["q".into(), p.to_string()], vec![0, two_p]),
                All => (vec!["q^-1".into(), p.to_string()], vec![0, two_p]),
                CutAt(_) => (vec![p.to_string(), "q".into()], vec![two_p, 0]),
            }
        }
        ArchimedeanZ | ArchEval(_) => (vec!["arch".into()], vec![1]),
        ArchInfinitesimal(_) | ArchInfinity => {
            (vec!["arch".into(), "q".into()], vec![1, 0])
        }
    };
    let group = OrderedGroupDescriptor::new(labels);
    let exps: Vec<Rat> = two.into_iter().map(rat_int).collect();
    let two = GroupElement::new(&group, exps).expect("rank matches");
    (group, two)
}

/// The convex subgroup of infinitesimal value coordinates at the place.
pub fn compatibility_delta(place: &PlaceDescriptor) -> ConvexSubgroup {
    let (_, two) = model_presentation(place);
    huber_delta(&two)
}

/// Collapse onto the catalog entry presenting the quotient by the
/// compatibility subgroup. Identity except on infinitesimal neighborhoods
/// of algebraic points, which retract onto evaluation.
pub fn huber_retract(place: &PlaceDescriptor) -> PlaceDescriptor {
    match place {
        PlaceDescriptor::ArchInfinitesimal(a) => PlaceDescriptor::ArchEval(a.clone()),
        other => other.clone(),
    }
}

/// The image of a lexicographic-product value under forgetting its dominant
/// infinitesimal coordinate.
pub fn collapse_infinitesimal(v: &HaloValue) -> Result<HaloValue> {
    let HaloDescriptor::LexProduct(_, second) = &v.halo else {
        return Err(Error::MixedHalos(format!(
            "collapse of a value in {}, which has no infinitesimal factor",
            v.halo
        )));
    };
    match &v.payload {
        Payload::Zero => Ok(HaloValue::zero(second)),
        Payload::Unit(UnitPayload::Lex(_, b)) => HaloValue::new(
            second,
            Payload::Unit((**b).clone()),
        ),
        Payload::Unit(_) => unreachable!("validated lex value carries a lex payload"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::halo::halo_add;
    use crate::place::{catalog_places, evaluate};
    use crate::ring::{QPoly, Qi, RingElement};
    use num_traits::{One, Signed, Zero};
    use std::cmp::Ordering;

    #[test]
    fn retraction_table() {
        let a = Qi::new(Rat::one(), Rat::one());
        assert_eq!(
            huber_retract(&PlaceDescriptor::ArchInfinitesimal(a.clone())),
            PlaceDescriptor::ArchEval(a)
        );
        for place in catalog_places() {
            let once = huber_retract(&place);
            assert_eq!(huber_retract(&once), once, "{place}");
            if !matches!(place, PlaceDescriptor::ArchInfinitesimal(_)) {
                assert_eq!(once, place, "{place}");
            }
        }
    }

    #[test]
    fn deltas() {
        let d = compatibility_delta(&PlaceDescriptor::ArchInfinitesimal(Qi::zero()));
        assert_eq!(d.cut_index, 1);
        assert_eq!(d.group.rank(), 2);
        assert!(!d.is_trivial());
        let (g, two) = model_presentation(&PlaceDescriptor::ArchInfinity);
        assert_eq!(two.exponents, vec![rat_int(1), rat_int(0)]);
        assert_eq!(g.labels(), ["arch".to_string(), "q".to_string()]);
        // every other catalog family has trivial compatibility subgroup
        for place in catalog_places() {
            let expect_nontrivial = matches!(
                place,
                PlaceDescriptor::ArchInfinitesimal(_) | PlaceDescriptor::ArchInfinity
            );
            assert_eq!(
                !compatibility_delta(&place).is_trivial(),
                expect_nontrivial,
                "{place}"
            );
        }
    }

    #[test]
    fn collapse_agrees_with_evaluation_off_the_zero_set() {
        let a = Qi::new(Rat::one(), Rat::zero());
        let inf = PlaceDescriptor::ArchInfinitesimal(a.clone());
        let ev = PlaceDescriptor::ArchEval(a);
        for coeffs in [&[2i64, 3][..], &[5, 0, 1], &[-7, 2, 0, 4]] {
            let f = RingElement::zx(coeffs);
            let collapsed = collapse_infinitesimal(&evaluate(&inf, &f).unwrap()).unwrap();
            assert_eq!(collapsed, evaluate(&ev, &f).unwrap());
        }
        // on the zero set the collapse keeps the lowest Taylor coefficient
        // while evaluation vanishes
        let vanishing = RingElement::zx(&[1, -2, 1]); // (X - 1)^2
        let collapsed =
            collapse_infinitesimal(&evaluate(&inf, &vanishing).unwrap()).unwrap();
        assert!(!collapsed.is_zero());
        assert!(evaluate(&ev, &vanishing).unwrap().is_zero());
    }

    #[test]
    fn infinity_has_no_evaluation_collapse() {
        // the candidate collapse target sends f to |lead f|, but that map
        // is not subadditive, so it is not a place: the neighborhood of
        // infinity retracts onto itself
        let lead_abs = |f: &QPoly| f.coeff(f.degree().unwrap()).abs();
        let p = QPoly::new(vec![Rat::zero(), rat_int(100), Rat::one()]);
        let q = QPoly::new(vec![Rat::zero(), Rat::zero(), -Rat::one()]);
        let sum = p.add(&q);
        let lhs = HaloValue::rational(lead_abs(&sum)).unwrap();
        let bound = halo_add(
            &HaloValue::rational(lead_abs(&p)).unwrap(),
            &HaloValue::rational(lead_abs(&q)).unwrap(),
        )
        .unwrap();
        assert_eq!(
            crate::halo::halo_cmp(&lhs, &bound).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn collapse_rejects_rank_one_values() {
        let v = evaluate(&PlaceDescriptor::PAdicReal(3), &RingElement::int(6)).unwrap();
        assert!(collapse_infinitesimal(&v).is_err());
    }
}
