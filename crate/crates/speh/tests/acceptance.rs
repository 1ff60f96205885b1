//! Acceptance gate: one test per shipping criterion, named in order. Each
//! prints a single `criterion N: PASS` line on success; a failure panics
//! with a `criterion N: FAIL` message carrying the counterexample.
//!
//! Criterion 1 is expected to fail until lexicographic products with a
//! tropical first factor satisfy additive order compatibility; the order
//! suite carries the standing counterexample.

use std::cmp::Ordering;
use std::process::Command;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use halos::arith::primes_up_to;
use halos::halo::surd::Surd;
use halos::halo::tempered::{tempered_class, tempered_witness_check, NatPoly, TemperedVerdict};
use halos::halo::{halo_cmp, halo_mul, HaloDescriptor, HaloValue, Payload, UnitPayload};
use halos::json::{
    domain_from_json, domain_to_json, place_from_json, place_to_json, ring_element_from_json,
    ring_element_to_json,
};
use halos::line::{
    boundedness_oracle, hk_evaluate, lower_bound_witness, upper_bound_witness,
    AffinePointDescriptor,
};
use halos::place::checks::{
    check_multiplicative_on, check_power_multiplicative_on, check_prearchimedean_on,
    check_ultrametric_on, mult_bounded_by, CheckOutcome,
};
use halos::place::classify::{classify_on_z, ZClassification};
use halos::place::retract::{collapse_infinitesimal, huber_retract};
use halos::place::{
    catalog_places, evaluate, is_nonarchimedean, MajorSubset, PlaceDescriptor,
};
use halos::ring::{rat, rat_int, FpPoly, QPoly, Qi, Rat, RingElement, RingId};
use halos::sheaf::{completion_map, CompletedPayload, RingDescriptor};
use halos::spectra::{
    domain_intersection, domain_membership, spev_subset_check, speh_points_of_z, RationalDomain,
};
use halos::suites::{run_suite, SuiteConfig};

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x00acce97 ^ tag)
}

fn nonzero_in(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let n = rng.gen_range(-bound..=bound);
        if n != 0 {
            return n;
        }
    }
}

fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-40..=40), rng.gen_range(1..=12))
}

fn random_qpoly(rng: &mut ChaCha8Rng, max_deg: usize) -> QPoly {
    let deg = rng.gen_range(0..=max_deg);
    QPoly::new((0..=deg).map(|_| small_rat(rng)).collect())
}

fn random_in_ring(rng: &mut ChaCha8Rng, ring: RingId) -> RingElement {
    match ring {
        RingId::Z => RingElement::int(rng.gen_range(-9999..=9999)),
        RingId::Q => RingElement::Rat(small_rat(rng)),
        RingId::ZX => {
            let deg = rng.gen_range(0..=3usize);
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-9..=9)).collect();
            RingElement::zx(&coeffs)
        }
        RingId::QX => RingElement::QX(random_qpoly(rng, 3)),
        RingId::FpX(p) => {
            let deg = rng.gen_range(0..=3usize);
            let coeffs: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..p)).collect();
            RingElement::FpX(FpPoly::new(p, coeffs).unwrap())
        }
        RingId::QXFrac => {
            let num = random_qpoly(rng, 3);
            let mut den = random_qpoly(rng, 2);
            if den.is_zero() {
                den = QPoly::constant(Rat::one());
            }
            RingElement::qx_frac(num, den).unwrap()
        }
    }
}

/// Coefficients of f(X + a) over the rationals, from the binomial theorem.
fn binomial_shift(coeffs: &[Rat], a: &Rat) -> Vec<Rat> {
    let n = coeffs.len();
    if n == 0 {
        return vec![];
    }
    let mut binom = vec![vec![Rat::one()]];
    for i in 1..n {
        let prev = &binom[i - 1];
        let mut row = vec![Rat::one()];
        for j in 1..i {
            row.push(&prev[j - 1] + &prev[j]);
        }
        row.push(Rat::one());
        binom.push(row);
    }
    (0..n)
        .map(|j| {
            let mut acc = Rat::zero();
            let mut a_pow = Rat::one();
            for i in j..n {
                acc += &coeffs[i] * &binom[i][j] * &a_pow;
                a_pow *= a;
            }
            acc
        })
        .collect()
}

/// The same shift over Q(i), with complex arithmetic done on plain pairs.
fn binomial_shift_qi(coeffs: &[(Rat, Rat)], a: &(Rat, Rat)) -> Vec<(Rat, Rat)> {
    let mul = |x: &(Rat, Rat), y: &(Rat, Rat)| {
        (&x.0 * &y.0 - &x.1 * &y.1, &x.0 * &y.1 + &x.1 * &y.0)
    };
    let n = coeffs.len();
    if n == 0 {
        return vec![];
    }
    let mut binom = vec![vec![Rat::one()]];
    for i in 1..n {
        let prev = &binom[i - 1];
        let mut row = vec![Rat::one()];
        for j in 1..i {
            row.push(&prev[j - 1] + &prev[j]);
        }
        row.push(Rat::one());
        binom.push(row);
    }
    (0..n)
        .map(|j| {
            let mut acc = (Rat::zero(), Rat::zero());
            let mut a_pow = (Rat::one(), Rat::zero());
            for i in j..n {
                let term = mul(&coeffs[i], &a_pow);
                acc.0 += &term.0 * &binom[i][j];
                acc.1 += &term.1 * &binom[i][j];
                a_pow = mul(&a_pow, a);
            }
            acc
        })
        .collect()
}

fn ord_of_rat(q: &Rat, p: u64) -> i64 {
    let ord_int = |n: &num_bigint::BigInt| -> i64 {
        let mut n = n.clone();
        let p = num_bigint::BigInt::from(p);
        let mut k = 0;
        loop {
            let (d, r) = num_integer::Integer::div_rem(&n, &p);
            if !r.is_zero() {
                return k;
            }
            n = d;
            k += 1;
        }
    };
    ord_int(q.numer()) - ord_int(q.denom())
}

fn trop_exps(v: &HaloValue) -> Vec<Rat> {
    match &v.payload {
        Payload::Unit(UnitPayload::Group(es)) => es.clone(),
        other => panic!("expected a tropical value, got {other:?}"),
    }
}

fn lex_pieces(v: &HaloValue) -> (Vec<Rat>, Surd) {
    match &v.payload {
        Payload::Unit(UnitPayload::Lex(a, b)) => match (&**a, &**b) {
            (UnitPayload::Group(es), UnitPayload::Surd(s)) => (es.clone(), s.clone()),
            other => panic!("expected a tropical/surd pair, got {other:?}"),
        },
        other => panic!("expected a lex value, got {other:?}"),
    }
}

#[test]
fn criterion_01_halo_axioms_and_order_compatibility() {
    let config = SuiteConfig {
        seed: 42,
        trials: 1000,
        prime_bound: 100,
    };
    let axioms = run_suite("halo_axioms", &config).unwrap();
    assert!(
        axioms.passed,
        "criterion 1: FAIL - semiring axioms: {:?}",
        axioms.first_counterexample
    );
    let order = run_suite("order_compat", &config).unwrap();
    assert!(
        order.passed,
        "criterion 1: FAIL - order compatibility: {:?}",
        order.first_counterexample
    );
    println!("criterion 1: PASS - 1000 randomized semiring and order checks per catalog halo");
}

#[test]
fn criterion_02_z_classification_and_point_equivalence() {
    // the advertised tag for every presentation with p <= 100
    for p in primes_up_to(100) {
        for (place, expected) in [
            (PlaceDescriptor::PAdicReal(p), ZClassification::PAdic(p)),
            (PlaceDescriptor::PAdicTrop(p), ZClassification::PAdic(p)),
            (PlaceDescriptor::Residual(p), ZClassification::ResidualAt(p)),
        ] {
            let got = classify_on_z(&place, 1000).unwrap_or_else(|e| {
                panic!("criterion 2: FAIL - classification error at {place}: {e}")
            });
            assert_eq!(got, expected, "criterion 2: FAIL - wrong tag at {place}");
        }
    }
    assert_eq!(
        classify_on_z(&PlaceDescriptor::ArchimedeanZ, 1000).unwrap(),
        ZClassification::Archimedean,
        "criterion 2: FAIL - archimedean tag"
    );
    assert_eq!(
        classify_on_z(&PlaceDescriptor::TrivialOn(RingId::Z), 1000).unwrap(),
        ZClassification::Trivial,
        "criterion 2: FAIL - trivial tag"
    );

    // enumerated points are pairwise inequivalent
    let points = speh_points_of_z(100).unwrap();
    assert_eq!(points.len(), 52, "criterion 2: FAIL - enumeration size");
    for (i, x) in points.iter().enumerate() {
        for y in &points[i + 1..] {
            assert!(
                !x.same_point(y).unwrap(),
                "criterion 2: FAIL - {x} and {y} compare equivalent"
            );
        }
    }

    // the two p-adic presentations bound each other's divisibility order
    let mut rng = rng(2);
    for p in [2u64, 3, 5] {
        let trop = PlaceDescriptor::PAdicTrop(p);
        let real = PlaceDescriptor::PAdicReal(p);
        let triples: Vec<(RingElement, RingElement, RingElement)> = (0..10_000)
            .map(|_| {
                (
                    RingElement::int(nonzero_in(&mut rng, 10_000)),
                    RingElement::int(nonzero_in(&mut rng, 10_000)),
                    RingElement::int(nonzero_in(&mut rng, 10_000)),
                )
            })
            .collect();
        for (x, y) in [(&trop, &real), (&real, &trop)] {
            match mult_bounded_by(x, y, &triples).unwrap() {
                CheckOutcome::Passed => {}
                CheckOutcome::Counterexample(t) => panic!(
                    "criterion 2: FAIL - divisibility transfer {x} against {y} at {t:?}"
                ),
            }
        }
    }
    println!(
        "criterion 2: PASS - tags for 77 presentations, 52 pairwise distinct points, \
         divisibility transfer on 10000 triples per prime and direction"
    );
}

#[test]
fn criterion_03_archimedean_prearchimedean_and_increasing() {
    let place = PlaceDescriptor::ArchimedeanZ;
    let mut rng = rng(3);
    let pairs: Vec<(RingElement, RingElement)> = (0..10_000)
        .map(|_| {
            (
                RingElement::int(rng.gen_range(-1_000_000..=1_000_000)),
                RingElement::int(rng.gen_range(-1_000_000..=1_000_000)),
            )
        })
        .collect();
    match check_prearchimedean_on(&place, &pairs).unwrap() {
        CheckOutcome::Passed => {}
        CheckOutcome::Counterexample((a, b)) => {
            panic!("criterion 3: FAIL - |a+b| > 2 max(|a|,|b|) at ({a}, {b})")
        }
    }
    let mut prev = evaluate(&place, &RingElement::int(0)).unwrap();
    for n in 1..=10_000i64 {
        let next = evaluate(&place, &RingElement::int(n)).unwrap();
        assert_eq!(
            halo_cmp(&prev, &next).unwrap(),
            Ordering::Less,
            "criterion 3: FAIL - |{}| is not below |{n}|",
            n - 1
        );
        prev = next;
    }
    println!(
        "criterion 3: PASS - prearchimedean bound on 10000 pairs, strictly increasing on 0..=10000"
    );
}

#[test]
fn criterion_04_nonarchimedean_iff_ultrametric() {
    let mut rng = rng(4);
    for place in catalog_places() {
        let ring = place.domain();
        let one = RingElement::one(ring).unwrap();
        // (1, 1) witnesses |2| > 1 deterministically on archimedean places
        let mut pairs = vec![(one.clone(), one)];
        while pairs.len() < 500 {
            pairs.push((random_in_ring(&mut rng, ring), random_in_ring(&mut rng, ring)));
        }
        let sampled = check_ultrametric_on(&place, &pairs).unwrap();
        let declared = is_nonarchimedean(&place).unwrap();
        match (&sampled, declared) {
            (CheckOutcome::Passed, true) | (CheckOutcome::Counterexample(_), false) => {}
            (CheckOutcome::Passed, false) => panic!(
                "criterion 4: FAIL - {place} declares archimedean but 500 pairs satisfy the ultrametric bound"
            ),
            (CheckOutcome::Counterexample((a, b)), true) => panic!(
                "criterion 4: FAIL - {place} declares non-archimedean but |{a} + {b}| exceeds the max"
            ),
        }
    }
    println!("criterion 4: PASS - ultrametric sampling agrees with is_nonarchimedean on the catalog");
}

#[test]
fn criterion_05_composite_six() {
    let place = PlaceDescriptor::CompositeAdic(6);

    // |6| = 1/6 exactly
    let v6 = evaluate(&place, &RingElement::int(6)).unwrap();
    match &v6.payload {
        Payload::Unit(UnitPayload::Rational(q)) if *q == rat(1, 6) => {}
        other => panic!("criterion 5: FAIL - |6| came out as {other:?}"),
    }

    // first multiplicativity failure under sorted search is exactly (2, 3)
    let mut pairs = Vec::new();
    for a in 1..=20i64 {
        for b in a..=20 {
            pairs.push((RingElement::int(a), RingElement::int(b)));
        }
    }
    match check_multiplicative_on(&place, &pairs).unwrap() {
        CheckOutcome::Counterexample((a, b)) => {
            assert_eq!(
                (a, b),
                (RingElement::int(2), RingElement::int(3)),
                "criterion 5: FAIL - wrong first counterexample"
            );
        }
        CheckOutcome::Passed => {
            panic!("criterion 5: FAIL - |.|_6 passed a multiplicativity sweep")
        }
    }

    // power-multiplicative on every integer of magnitude <= 10^4, N <= 6
    let samples: Vec<RingElement> = (-10_000..=10_000i64).map(RingElement::int).collect();
    match check_power_multiplicative_on(&place, &samples, &[1, 2, 3, 4, 5, 6]).unwrap() {
        CheckOutcome::Passed => {}
        CheckOutcome::Counterexample((a, n)) => {
            panic!("criterion 5: FAIL - |a^n| != |a|^n at a = {a}, n = {n}")
        }
    }
    println!("criterion 5: PASS - |6|_6 = 1/6, counterexample (2,3) first, power-multiplicative to N=6");
}

#[test]
fn criterion_06_tempered_growth() {
    let suite = run_suite("tempered_witnesses", &SuiteConfig::default()).unwrap();
    assert!(
        suite.passed,
        "criterion 6: FAIL - constructor matrix: {:?}",
        suite.first_counterexample
    );

    // the standing witness: (1, 2) exceeds 1 yet stays under n + 2
    let witness = HaloValue::lex_pair(
        HaloValue::rational(Rat::one()).unwrap(),
        HaloValue::rational(rat_int(2)).unwrap(),
    )
    .unwrap();
    let one = HaloValue::one(&witness.halo);
    assert_eq!(
        halo_cmp(&witness, &one).unwrap(),
        Ordering::Greater,
        "criterion 6: FAIL - the witness does not exceed 1"
    );
    assert!(
        tempered_witness_check(&witness, &NatPoly::n_plus_two(), 1000).unwrap(),
        "criterion 6: FAIL - (1,2)^n escaped n + 2 below N = 1000"
    );

    // and the classifier reports that exact situation for the square product
    let h = HaloDescriptor::lex(
        HaloDescriptor::NonnegRationals,
        HaloDescriptor::NonnegRationals,
    );
    match tempered_class(&h) {
        TemperedVerdict::NotTempered { witness, bound } => {
            assert_eq!(
                halo_cmp(&witness, &HaloValue::one(&witness.halo)).unwrap(),
                Ordering::Greater
            );
            assert!(tempered_witness_check(&witness, &bound, 1000).unwrap());
        }
        other => panic!("criterion 6: FAIL - expected a witness, got {other:?}"),
    }

    // a plain rational above 1 is not polynomially bounded
    assert!(
        !tempered_witness_check(
            &HaloValue::rational(rat_int(2)).unwrap(),
            &NatPoly::n_plus_two(),
            1000
        )
        .unwrap(),
        "criterion 6: FAIL - 2^n stayed under n + 2"
    );
    println!("criterion 6: PASS - constructor matrix and the (1,2) witness at N = 1000");
}

#[test]
fn criterion_07_hk_valuations_multiplicative_and_gauss_oracle() {
    let points = [
        AffinePointDescriptor::HKType1 {
            p: 5,
            point: rat(2, 3),
        },
        AffinePointDescriptor::HKType2Gauss {
            p: 3,
            center: rat(1, 2),
            radius_exp: rat_int(-2),
        },
        AffinePointDescriptor::HKType4 {
            p: 2,
            center: Rat::zero(),
            major: MajorSubset::Empty,
        },
        AffinePointDescriptor::HKType4 {
            p: 2,
            center: Rat::zero(),
            major: MajorSubset::All,
        },
        AffinePointDescriptor::HKType4 {
            p: 2,
            center: Rat::zero(),
            major: MajorSubset::CutAt(rat_int(4)),
        },
    ];
    let mut rng = rng(7);
    for point in &points {
        for _ in 0..500 {
            let f = RingElement::QX(random_qpoly(&mut rng, 8));
            let g = RingElement::QX(random_qpoly(&mut rng, 8));
            let vf = hk_evaluate(point, &f).unwrap();
            let vg = hk_evaluate(point, &g).unwrap();
            let vfg = hk_evaluate(point, &f.mul(&g).unwrap()).unwrap();
            assert_eq!(
                halo_cmp(&vfg, &halo_mul(&vf, &vg).unwrap()).unwrap(),
                Ordering::Equal,
                "criterion 7: FAIL - |fg| != |f||g| at {point:?} for f = {f}, g = {g}"
            );
        }
    }

    // the unit disc around 0 takes the coefficient-wise maximum
    for trial in 0..500u64 {
        let p = [2u64, 3, 5][(trial % 3) as usize];
        let point = AffinePointDescriptor::HKType2Gauss {
            p,
            center: Rat::zero(),
            radius_exp: Rat::zero(),
        };
        let deg = rng.gen_range(0..=8usize);
        let coeffs: Vec<i64> = (0..=deg)
            .map(|_| rng.gen_range(-1_000_000..=1_000_000))
            .collect();
        let f = RingElement::zx(&coeffs);
        let v = hk_evaluate(&point, &f).unwrap();
        let expected = coeffs
            .iter()
            .filter(|c| **c != 0)
            .map(|&c| -ord_of_rat(&rat_int(c), p))
            .max();
        match expected {
            None => assert!(v.is_zero(), "criterion 7: FAIL - |0| at the unit disc"),
            Some(e) => assert_eq!(
                trop_exps(&v),
                vec![rat_int(e)],
                "criterion 7: FAIL - sup norm of {coeffs:?} at p = {p}"
            ),
        }
    }
    println!("criterion 7: PASS - multiplicative on 500 pairs per case, unit-disc sup norm matches the oracle");
}

#[test]
fn criterion_08_archimedean_line_values_and_boundedness() {
    let mut rng = rng(8);
    let rational_centers = [Rat::zero(), rat_int(1), rat_int(-2), rat(1, 2)];
    let gaussian_centers = [
        Qi::new(Rat::zero(), Rat::one()),
        Qi::new(Rat::one(), Rat::one()),
    ];

    for trial in 0..500u64 {
        let f = random_qpoly(&mut rng, 6);
        let coeffs = f.coeffs().to_vec();
        let elem = RingElement::QX(f.clone());

        if trial % 3 < 2 {
            // rational center: compare against the rational binomial shift
            let a = &rational_centers[(trial as usize) % rational_centers.len()];
            let place = PlaceDescriptor::ArchInfinitesimal(Qi::from_rat(a.clone()));
            let v = evaluate(&place, &elem).unwrap();
            let shifted = binomial_shift(&coeffs, a);
            match shifted.iter().position(|c| !c.is_zero()) {
                None => assert!(v.is_zero(), "criterion 8: FAIL - |0| near {a}"),
                Some(j) => {
                    let (exps, s) = lex_pieces(&v);
                    assert_eq!(
                        exps,
                        vec![rat_int(-(j as i64))],
                        "criterion 8: FAIL - wrong vanishing order of {f:?} at {a}"
                    );
                    let c = &shifted[j];
                    assert_eq!(
                        s.mul(&s).as_rational(),
                        Some(c * c),
                        "criterion 8: FAIL - wrong magnitude of coefficient {j} of {f:?} at {a}"
                    );
                }
            }
        } else {
            // Gaussian center: the magnitude squares to the complex norm
            let a = &gaussian_centers[(trial as usize) % gaussian_centers.len()];
            let place = PlaceDescriptor::ArchInfinitesimal(a.clone());
            let v = evaluate(&place, &elem).unwrap();
            let pairs: Vec<(Rat, Rat)> =
                coeffs.iter().map(|c| (c.clone(), Rat::zero())).collect();
            let shifted = binomial_shift_qi(&pairs, &(a.re.clone(), a.im.clone()));
            match shifted.iter().position(|(x, y)| !x.is_zero() || !y.is_zero()) {
                None => assert!(v.is_zero()),
                Some(j) => {
                    let (exps, s) = lex_pieces(&v);
                    assert_eq!(exps, vec![rat_int(-(j as i64))]);
                    let (x, y) = &shifted[j];
                    assert_eq!(
                        s.mul(&s).as_rational(),
                        Some(x * x + y * y),
                        "criterion 8: FAIL - wrong magnitude of coefficient {j} of {f:?} at {a}"
                    );
                }
            }
        }

        // the neighborhood of infinity reads off degree and leading magnitude
        if !f.is_zero() {
            let v = evaluate(&PlaceDescriptor::ArchInfinity, &elem).unwrap();
            let (exps, s) = lex_pieces(&v);
            let d = f.degree().unwrap();
            let lead = f.coeff(d);
            assert_eq!(
                exps,
                vec![rat_int(d as i64)],
                "criterion 8: FAIL - wrong degree exponent for {f:?}"
            );
            assert_eq!(
                s.mul(&s).as_rational(),
                Some(&lead * &lead),
                "criterion 8: FAIL - wrong leading magnitude for {f:?}"
            );
        }
    }

    // boundedness table, validated through the witness constructors
    let i = Qi::new(Rat::zero(), Rat::one());
    let eval_place = PlaceDescriptor::ArchEval(i.clone());
    let inf_place = PlaceDescriptor::ArchInfinitesimal(Qi::zero());
    assert_eq!(boundedness_oracle(&eval_place).unwrap(), (true, true));
    assert_eq!(boundedness_oracle(&inf_place).unwrap(), (true, false));
    assert_eq!(
        boundedness_oracle(&PlaceDescriptor::ArchInfinity).unwrap(),
        (false, true)
    );

    let x = RingElement::QX(QPoly::x());
    let x2_plus_1 = RingElement::QX(QPoly::new(vec![Rat::one(), Rat::zero(), Rat::one()]));
    let const7 = RingElement::QX(QPoly::constant(rat_int(7)));
    // evaluation point: bounded both ways away from the kernel
    assert!(upper_bound_witness(&eval_place, &x).unwrap().is_some());
    assert!(lower_bound_witness(&eval_place, &x).unwrap().is_some());
    assert!(lower_bound_witness(&eval_place, &x2_plus_1).unwrap().is_none()); // kernel
    // infinitesimal neighborhood: bounded above, X has no lower bound
    assert!(upper_bound_witness(&inf_place, &x).unwrap().is_some());
    assert!(lower_bound_witness(&inf_place, &x).unwrap().is_none());
    assert!(lower_bound_witness(&inf_place, &const7).unwrap().is_some());
    // neighborhood of infinity: X has no upper bound, everything nonzero has a lower one
    assert!(upper_bound_witness(&PlaceDescriptor::ArchInfinity, &x).unwrap().is_none());
    assert!(upper_bound_witness(&PlaceDescriptor::ArchInfinity, &const7).unwrap().is_some());
    assert!(lower_bound_witness(&PlaceDescriptor::ArchInfinity, &x).unwrap().is_some());

    println!("criterion 8: PASS - Taylor oracle on 500 polynomials, boundedness table witnessed");
}

#[test]
fn criterion_09_huber_retraction() {
    let mut rng = rng(9);
    for a in [rat_int(0), rat_int(1), rat_int(-2), rat(1, 2)] {
        let center = Qi::from_rat(a.clone());
        let inf_place = PlaceDescriptor::ArchInfinitesimal(center.clone());
        let retracted = huber_retract(&inf_place);
        assert_eq!(
            retracted,
            PlaceDescriptor::ArchEval(center),
            "criterion 9: FAIL - retraction moved the infinitesimal neighborhood of {a} elsewhere"
        );
        let mut checked = 0;
        while checked < 100 {
            let deg = rng.gen_range(0..=5usize);
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-30..=30)).collect();
            let f = QPoly::new(coeffs.iter().map(|&c| rat_int(c)).collect());
            if f.eval(&a).is_zero() {
                continue; // the collapse is compared away from the kernel
            }
            checked += 1;
            let elem = RingElement::QX(f);
            let through_retract = evaluate(&retracted, &elem).unwrap();
            let collapsed =
                collapse_infinitesimal(&evaluate(&inf_place, &elem).unwrap()).unwrap();
            assert_eq!(
                collapsed, through_retract,
                "criterion 9: FAIL - collapse disagrees with evaluation at {a}"
            );
        }
    }

    for place in catalog_places() {
        if is_nonarchimedean(&place).unwrap() {
            assert_eq!(
                huber_retract(&place),
                place,
                "criterion 9: FAIL - retraction moved the non-archimedean place {place}"
            );
        }
        let once = huber_retract(&place);
        assert_eq!(
            huber_retract(&once),
            once,
            "criterion 9: FAIL - retraction is not idempotent at {place}"
        );
    }
    println!("criterion 9: PASS - retract agrees with evaluation, fixes the non-archimedean catalog, idempotent");
}

#[test]
fn criterion_10_domain_intersection_and_spev() {
    let points = speh_points_of_z(50).unwrap();
    assert_eq!(points.len(), 32);
    let mut rng = rng(10);
    let random_domain = |rng: &mut ChaCha8Rng, strict: bool| -> RationalDomain {
        let count = rng.gen_range(0..=2usize);
        let numerators = (0..count)
            .map(|_| RingElement::int(rng.gen_range(-60..=60)))
            .collect();
        RationalDomain::new(
            RingId::Z,
            numerators,
            RingElement::int(nonzero_in(rng, 60)),
            strict,
        )
        .unwrap()
    };
    for _ in 0..200 {
        let strict = rng.gen_bool(0.5);
        let d1 = random_domain(&mut rng, strict);
        let d2 = random_domain(&mut rng, strict);
        let both = domain_intersection(&d1, &d2).unwrap();
        for x in &points {
            let lhs = domain_membership(x, &both).unwrap();
            let rhs = domain_membership(x, &d1).unwrap() && domain_membership(x, &d2).unwrap();
            assert_eq!(
                lhs, rhs,
                "criterion 10: FAIL - {x} disagrees on {d1} meet {d2}"
            );
        }
    }

    for x in &points {
        let declared = is_nonarchimedean(&x.canonical_place).unwrap();
        assert_eq!(
            spev_subset_check(x).unwrap(),
            declared,
            "criterion 10: FAIL - valuation subspectrum test at {x}"
        );
        // and the declaration matches a direct |2| <= 1 measurement
        let two = evaluate(&x.canonical_place, &RingElement::int(2)).unwrap();
        let one = HaloValue::one(&two.halo);
        assert_eq!(
            halo_cmp(&two, &one).unwrap() != Ordering::Greater,
            declared,
            "criterion 10: FAIL - |2| measurement contradicts the declaration at {x}"
        );
    }
    println!("criterion 10: PASS - membership-equivalent intersections on 200 pairs over 32 points");
}

#[test]
fn criterion_11_sheaf_table_and_completion_homomorphism() {
    let table = run_suite("sheaf_table", &SuiteConfig::default()).unwrap();
    assert!(
        table.passed,
        "criterion 11: FAIL - sections/germ table: {:?}",
        table.first_counterexample
    );
    let hom = run_suite(
        "completion_hom",
        &SuiteConfig {
            seed: 42,
            trials: 500,
            prime_bound: 100,
        },
    )
    .unwrap();
    assert!(
        hom.passed,
        "criterion 11: FAIL - completion homomorphism: {:?}",
        hom.first_counterexample
    );

    // frozen anchor: 1/3 in Z_2 at 4 digits is 11 mod 16, because 3 * 11 = 33 = 1 + 2 * 16
    let x = completion_map(&rat(1, 3), &RingDescriptor::PAdicIntegers(2), 4).unwrap();
    match x.payload {
        CompletedPayload::PAdic { ref residue, k: 4 } => {
            assert_eq!(residue, &num_bigint::BigInt::from(11))
        }
        other => panic!("criterion 11: FAIL - 1/3 in Z_2 came out as {other:?}"),
    }
    println!("criterion 11: PASS - golden table rows and 500 homomorphism pairs per prime at k = 8");
}

fn speh_run(args: &[&str]) -> (Option<i32>, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_speh"))
        .args(args)
        .env_remove("SPEH_PRIME_BOUND")
        .output()
        .expect("spawn speh");
    (
        out.status.code(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn random_place_spec(rng: &mut ChaCha8Rng) -> PlaceDescriptor {
    let primes = [2u64, 3, 5, 7, 11, 13];
    let p = primes[rng.gen_range(0..primes.len())];
    match rng.gen_range(0..12) {
        0 => PlaceDescriptor::TrivialOn(RingId::Z),
        1 => PlaceDescriptor::TrivialOn(RingId::ZX),
        2 => PlaceDescriptor::PAdicTrop(p),
        3 => PlaceDescriptor::PAdicReal(p),
        4 => PlaceDescriptor::ArchimedeanZ,
        5 => PlaceDescriptor::Residual(p),
        6 => PlaceDescriptor::CompositeAdic([4u64, 6, 10, 12][rng.gen_range(0..4)]),
        7 => PlaceDescriptor::GaussPoint {
            p,
            center: small_rat(rng),
            radius_exp: small_rat(rng),
        },
        8 => {
            let major = match rng.gen_range(0..3) {
                0 => MajorSubset::Empty,
                1 => MajorSubset::All,
                _ => MajorSubset::CutAt(rat_int(nonzero_in(rng, 9))),
            };
            PlaceDescriptor::HKCase4 {
                p,
                center: small_rat(rng),
                major,
            }
        }
        9 => PlaceDescriptor::ArchEval(Qi::new(small_rat(rng), small_rat(rng))),
        10 => PlaceDescriptor::ArchInfinitesimal(Qi::new(small_rat(rng), small_rat(rng))),
        _ => PlaceDescriptor::ArchInfinity,
    }
}

#[test]
fn criterion_12_cli_contract() {
    // byte-identical reruns under a fixed seed
    for args in [
        vec!["check", "--suite", "surd_float_cross", "--trials", "200", "--seed", "7"],
        vec!["check", "--suite", "all", "--trials", "40", "--seed", "3"],
        vec!["spectrum", "--prime-bound", "30"],
        vec!["classify", "--place", r#"{"place":"padic_real","p":7}"#],
        vec!["adele", "--elem", r#"{"ring":"Q","q":"5/6"}"#, "--precision", "4"],
    ] {
        let first = speh_run(&args);
        let second = speh_run(&args);
        assert_eq!(first.0, Some(0), "criterion 12: FAIL - {args:?} exited {:?}: {}", first.0, first.2);
        assert_eq!(
            first.1, second.1,
            "criterion 12: FAIL - {args:?} is not deterministic"
        );
        assert!(
            serde_json::from_str::<serde_json::Value>(&first.1).is_ok(),
            "criterion 12: FAIL - {args:?} printed non-JSON"
        );
    }

    // schema round-trip identity on 100 random specs, each also accepted by the CLI
    let mut rng = rng(12);
    for spec in 0..100usize {
        if spec % 10 < 4 {
            let place = random_place_spec(&mut rng);
            let doc = place_to_json(&place);
            assert_eq!(
                place_from_json(&doc).unwrap(),
                place,
                "criterion 12: FAIL - place round-trip"
            );
            let s = serde_json::to_string(&doc).unwrap();
            let ring = place.domain();
            let (code, out, err) = if ring == RingId::Z {
                speh_run(&["classify", "--place", &s])
            } else {
                let one = serde_json::to_string(&ring_element_to_json(
                    &RingElement::one(ring).unwrap(),
                ))
                .unwrap();
                speh_run(&["eval", "--place", &s, "--elem", &one])
            };
            assert_eq!(code, Some(0), "criterion 12: FAIL - CLI rejected {s}: {err}");
            assert!(serde_json::from_str::<serde_json::Value>(&out).is_ok());
        } else if spec % 10 < 7 {
            let elem = random_in_ring(
                &mut rng,
                [
                    RingId::Z,
                    RingId::Q,
                    RingId::ZX,
                    RingId::QX,
                    RingId::FpX(3),
                    RingId::QXFrac,
                ][spec % 6],
            );
            let doc = ring_element_to_json(&elem);
            assert_eq!(
                ring_element_from_json(&doc).unwrap(),
                elem,
                "criterion 12: FAIL - element round-trip"
            );
            let host_place = match elem.ring_id() {
                RingId::Z => PlaceDescriptor::TrivialOn(RingId::Z),
                RingId::Q => PlaceDescriptor::TrivialOn(RingId::Q),
                RingId::ZX => PlaceDescriptor::TrivialOn(RingId::ZX),
                RingId::QX | RingId::QXFrac => PlaceDescriptor::GaussPoint {
                    p: 5,
                    center: Rat::zero(),
                    radius_exp: Rat::zero(),
                },
                RingId::FpX(p) => PlaceDescriptor::FpPAdic {
                    p,
                    modulus: FpPoly::x(p),
                },
            };
            let place_s = serde_json::to_string(&place_to_json(&host_place)).unwrap();
            let elem_s = serde_json::to_string(&doc).unwrap();
            let (code, out, err) =
                speh_run(&["eval", "--place", &place_s, "--elem", &elem_s]);
            assert_eq!(code, Some(0), "criterion 12: FAIL - eval rejected {elem_s}: {err}");
            assert!(serde_json::from_str::<serde_json::Value>(&out).is_ok());
        } else {
            let count = rng.gen_range(0..=2usize);
            let numerators = (0..count)
                .map(|_| RingElement::int(rng.gen_range(-60..=60)))
                .collect();
            let domain = RationalDomain::new(
                RingId::Z,
                numerators,
                RingElement::int(nonzero_in(&mut rng, 60)),
                rng.gen_bool(0.5),
            )
            .unwrap();
            let doc = domain_to_json(&domain);
            assert_eq!(
                domain_from_json(&doc).unwrap(),
                domain,
                "criterion 12: FAIL - domain round-trip"
            );
            let s = serde_json::to_string(&doc).unwrap();
            let (code, out, err) = speh_run(&[
                "domain",
                "--domain",
                &s,
                "--point",
                r#"{"place":"archimedean"}"#,
            ]);
            assert_eq!(code, Some(0), "criterion 12: FAIL - domain query failed on {s}: {err}");
            let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
            assert!(parsed.get("member").is_some());
        }
    }

    // exit-code contract: 1 malformed, 2 domain error, 0 success
    let (code, _, err) = speh_run(&["classify", "--place", "{not json"]);
    assert_eq!(code, Some(1), "criterion 12: FAIL - malformed JSON must exit 1");
    let parsed: serde_json::Value = serde_json::from_str(&err).unwrap();
    assert_eq!(parsed["error"]["kind"], "parse");

    let (code, _, _) = speh_run(&["classify", "--place", r#"{"place":"unheard_of"}"#]);
    assert_eq!(code, Some(1), "criterion 12: FAIL - unknown place tag must exit 1");

    let (code, _, _) = speh_run(&["check", "--suite", "no_such_suite"]);
    assert_eq!(code, Some(1), "criterion 12: FAIL - unknown suite must exit 1");

    let gauss = r#"{"place":"gauss","p":5,"center":"0","radiusExp":"0"}"#;
    let gauss_doc = serde_json::to_string(&place_to_json(&PlaceDescriptor::GaussPoint {
        p: 5,
        center: Rat::zero(),
        radius_exp: Rat::zero(),
    }))
    .unwrap();
    let _ = gauss; // the canonical spelling comes from the serializer
    let (code, _, err) = speh_run(&["germ", "--point", &gauss_doc]);
    assert_eq!(code, Some(2), "criterion 12: FAIL - germ outside the table must exit 2");
    let parsed: serde_json::Value = serde_json::from_str(&err).unwrap();
    assert_eq!(parsed["error"]["kind"], "domain");

    let (code, _, _) = speh_run(&["--help"]);
    assert_eq!(code, Some(0), "criterion 12: FAIL - --help must exit 0");
    let (code, _, _) = speh_run(&["classify", "--no-such-flag"]);
    assert_eq!(code, Some(1), "criterion 12: FAIL - usage errors must exit 1");

    println!("criterion 12: PASS - deterministic output, 100 spec round-trips, exit codes 0/1/2");
}
