//! Seeded property suites. Each suite draws its randomness from a ChaCha
//! stream seeded by the caller, so a fixed seed reproduces the identical
//! report, counterexample included. The `check` subcommand runs these.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::group::{
    convex_subgroup_generated, group_cmp, huber_delta, quotient_by_convex, ConvexSubgroup,
    GroupElement, OrderedGroupDescriptor,
};
use crate::halo::surd::Surd;
use crate::halo::tempered::{tempered_class, tempered_witness_check, NatPoly, TemperedVerdict};
use crate::halo::{
    catalog_halos, halo_add, halo_cmp, halo_mul, HaloDescriptor, HaloValue, Payload, UnitPayload,
};
use crate::json;
use crate::line::{hk_evaluate, AffinePointDescriptor};
use crate::place::checks::{
    check_multiplicative_on, check_negation_symmetric, check_power_multiplicative_on,
    check_subadditive_on, check_submultiplicative_on, check_ultrametric_on, check_unit_zero_on,
    mult_bounded_by, CheckOutcome,
};
use crate::place::classify::equivalent_oracle;
use crate::place::retract::huber_retract;
use crate::place::{
    catalog_places, evaluate, is_nonarchimedean, MajorSubset, PlaceDescriptor,
};
use crate::ring::{rat, rat_int, FpPoly, QPoly, Rat, RingElement, RingId};
use crate::sheaf::{
    adele_add, adele_diagonal, adele_mul, completed_add, completed_mul, completion_map, germ_at,
    sections_on_domain, CompletedPayload, RingDescriptor,
};
use crate::spectra::{
    berkovich_to_speh, domain_intersection, domain_membership, speh_points_of_z,
    spev_subset_check, BerkovichPointSpecZ, RationalDomain, SpehPoint,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: u64,
    pub prime_bound: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 42,
            trials: 1000,
            prime_bound: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub trials_run: u64,
    pub first_counterexample: Option<String>,
}

impl SuiteReport {
    fn new(name: &str, trials_run: u64, first_counterexample: Option<String>) -> Self {
        SuiteReport {
            name: name.into(),
            passed: first_counterexample.is_none(),
            trials_run,
            first_counterexample,
        }
    }
}

// ---- seeded generators ----

struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    fn rational(&mut self) -> Rat {
        rat(self.int_in(-30, 30), self.int_in(1, 12))
    }

    fn pos_rational(&mut self) -> Rat {
        rat(self.int_in(1, 30), self.int_in(1, 12))
    }

    fn surd(&mut self) -> Surd {
        const RADICANDS: [u32; 6] = [1, 2, 3, 5, 6, 10];
        let mut s = Surd::zero();
        for _ in 0..self.int_in(1, 2) {
            let d = RADICANDS[self.int_in(0, 5) as usize];
            let term = Surd::term(self.pos_rational(), &BigUint::from(d)).expect("positive term");
            s = s.add(&term);
        }
        s
    }

    fn unit(&mut self, h: &HaloDescriptor) -> UnitPayload {
        match h {
            HaloDescriptor::Trivial => UnitPayload::One,
            HaloDescriptor::NonnegRationals => UnitPayload::Rational(self.pos_rational()),
            HaloDescriptor::NonnegSurds => UnitPayload::Surd(self.surd()),
            HaloDescriptor::TropicalOf(g) => {
                let exps = (0..g.rank())
                    .map(|_| rat(self.int_in(-6, 6), self.int_in(1, 3)))
                    .collect();
                UnitPayload::Group(exps)
            }
            HaloDescriptor::LexProduct(a, b) => {
                UnitPayload::Lex(Box::new(self.unit(a)), Box::new(self.unit(b)))
            }
        }
    }

    fn value(&mut self, h: &HaloDescriptor) -> HaloValue {
        if self.int_in(0, 7) == 0 {
            return HaloValue::zero(h);
        }
        HaloValue::new(h, Payload::Unit(self.unit(h))).expect("generated payload fits")
    }

    fn qpoly(&mut self, max_deg: i64) -> QPoly {
        let deg = self.int_in(0, max_deg);
        QPoly::new((0..=deg).map(|_| self.rational()).collect())
    }

    fn element(&mut self, ring: RingId) -> RingElement {
        match ring {
            RingId::Z => RingElement::int(self.int_in(-9999, 9999)),
            RingId::Q => RingElement::Rat(self.rational()),
            RingId::ZX => {
                let deg = self.int_in(0, 4);
                let coeffs: Vec<i64> = (0..=deg).map(|_| self.int_in(-20, 20)).collect();
                RingElement::zx(&coeffs)
            }
            RingId::QX => RingElement::QX(self.qpoly(4)),
            RingId::FpX(p) => {
                let deg = self.int_in(0, 4);
                let coeffs: Vec<u64> = (0..=deg)
                    .map(|_| self.int_in(0, p as i64 - 1) as u64)
                    .collect();
                RingElement::FpX(FpPoly::new(p, coeffs).expect("reduced coefficients"))
            }
            RingId::QXFrac => {
                let num = self.qpoly(3);
                let den = loop {
                    let d = self.qpoly(2);
                    if !d.coeffs().is_empty() {
                        break d;
                    }
                };
                RingElement::qx_frac(num, den).expect("nonzero denominator")
            }
        }
    }

    fn pairs(&mut self, ring: RingId, n: u64) -> Vec<(RingElement, RingElement)> {
        (0..n)
            .map(|_| (self.element(ring), self.element(ring)))
            .collect()
    }

    fn triples(&mut self, ring: RingId, n: u64) -> Vec<(RingElement, RingElement, RingElement)> {
        (0..n)
            .map(|_| (self.element(ring), self.element(ring), self.element(ring)))
            .collect()
    }

    fn group_element(&mut self, g: &OrderedGroupDescriptor) -> GroupElement {
        let exps = (0..g.rank())
            .map(|_| rat(self.int_in(-6, 6), self.int_in(1, 3)))
            .collect();
        GroupElement::new(g, exps).expect("rank matches")
    }

    fn domain_over_z(&mut self, strict: bool) -> RationalDomain {
        let n = self.int_in(0, 3);
        let numerators = (0..n)
            .map(|_| RingElement::int(self.int_in(-60, 60)))
            .collect();
        let den = loop {
            let d = self.int_in(-60, 60);
            if d != 0 {
                break d;
            }
        };
        RationalDomain::new(RingId::Z, numerators, RingElement::int(den), strict)
            .expect("nonzero denominator")
    }
}

fn show_value(v: &HaloValue) -> String {
    json::halo_value_to_json(v).to_string()
}

fn show_elem(e: &RingElement) -> String {
    json::ring_element_to_json(e).to_string()
}

// ---- the suites ----

fn halo_axioms(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut gen = Gen::new(config.seed);
    let mut trials = 0;
    for h in catalog_halos() {
        let zero = HaloValue::zero(&h);
        let one = HaloValue::one(&h);
        if halo_cmp(&zero, &one)? != Ordering::Less {
            return Ok(SuiteReport::new(
                "halo_axioms",
                trials,
                Some(format!("0 < 1 fails in {h}")),
            ));
        }
        for _ in 0..config.trials {
            trials += 1;
            let x = gen.value(&h);
            let y = gen.value(&h);
            let z = gen.value(&h);
            let ce = |law: &str| {
                Some(format!(
                    "{h}: {law} on x={} y={} z={}",
                    show_value(&x),
                    show_value(&y),
                    show_value(&z)
                ))
            };
            let fail = if halo_add(&halo_add(&x, &y)?, &z)? != halo_add(&x, &halo_add(&y, &z)?)? {
                ce("additive associativity")
            } else if halo_add(&x, &y)? != halo_add(&y, &x)? {
                ce("additive commutativity")
            } else if halo_mul(&halo_mul(&x, &y)?, &z)? != halo_mul(&x, &halo_mul(&y, &z)?)? {
                ce("multiplicative associativity")
            } else if halo_mul(&x, &y)? != halo_mul(&y, &x)? {
                ce("multiplicative commutativity")
            } else if halo_mul(&x, &halo_add(&y, &z)?)?
                != halo_add(&halo_mul(&x, &y)?, &halo_mul(&x, &z)?)?
            {
                ce("distributivity")
            } else if !halo_mul(&x, &zero)?.is_zero() {
                ce("zero absorbs")
            } else if halo_add(&x, &zero)? != x {
                ce("additive identity")
            } else if halo_mul(&x, &one)? != x {
                ce("multiplicative identity")
            } else {
                // transitivity of the total order on the sampled triple
                let xy = halo_cmp(&x, &y)?;
                let yz = halo_cmp(&y, &z)?;
                let xz = halo_cmp(&x, &z)?;
                if xy != Ordering::Greater && yz != Ordering::Greater && xz == Ordering::Greater {
                    ce("order transitivity")
                } else {
                    None
                }
            };
            if fail.is_some() {
                return Ok(SuiteReport::new("halo_axioms", trials, fail));
            }
        }
    }
    Ok(SuiteReport::new("halo_axioms", trials, None))
}

/// x <= z and y <= t must give x+y <= z+t and xy <= zt. Multiplication
/// passes everywhere; addition genuinely fails on lex products whose first
/// factor is tropical (max-addition in the dominant coordinate hides a
/// strict second-coordinate reversal), so this suite reports that defect.
fn order_compat(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut gen = Gen::new(config.seed ^ 0x6f72646572);
    let mut trials = 0;
    for h in catalog_halos() {
        for _ in 0..config.trials {
            trials += 1;
            let (a, b) = (gen.value(&h), gen.value(&h));
            let (x, z) = if halo_cmp(&a, &b)? == Ordering::Greater {
                (b, a)
            } else {
                (a, b)
            };
            let (c, d) = (gen.value(&h), gen.value(&h));
            let (y, t) = if halo_cmp(&c, &d)? == Ordering::Greater {
                (d, c)
            } else {
                (c, d)
            };
            let ce = |op: &str| {
                Some(format!(
                    "{h}: {op} not monotone at x={} z={} y={} t={}",
                    show_value(&x),
                    show_value(&z),
                    show_value(&y),
                    show_value(&t)
                ))
            };
            if halo_cmp(&halo_mul(&x, &y)?, &halo_mul(&z, &t)?)? == Ordering::Greater {
                return Ok(SuiteReport::new("order_compat", trials, ce("multiplication")));
            }
            if halo_cmp(&halo_add(&x, &y)?, &halo_add(&z, &t)?)? == Ordering::Greater {
                return Ok(SuiteReport::new("order_compat", trials, ce("addition")));
            }
        }
    }
    Ok(SuiteReport::new("order_compat", trials, None))
}

fn surd_to_f64(s: &Surd) -> f64 {
    s.terms()
        .map(|(d, c)| c.to_f64().unwrap_or(f64::NAN) * d.to_f64().unwrap_or(f64::NAN).sqrt())
        .sum()
}

fn surd_float_cross(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut gen = Gen::new(config.seed ^ 0x73757264);
    let mut trials = 0;
    for _ in 0..config.trials {
        trials += 1;
        let a = gen.surd();
        let b = gen.surd();
        let fa = surd_to_f64(&a);
        let fb = surd_to_f64(&b);
        if !fa.is_finite() || !fb.is_finite() || (fa - fb).abs() <= 1e-6 {
            continue;
        }
        let expected = if fa < fb {
            Ordering::Less
        } else {
            Ordering::Greater
        };
        if a.cmp_surd(&b) != expected {
            return Ok(SuiteReport::new(
                "surd_float_cross",
                trials,
                Some(format!("cmp disagrees with floats near {fa} vs {fb}")),
            ));
        }
    }
    Ok(SuiteReport::new("surd_float_cross", trials, None))
}

fn tempered_witnesses(_config: &SuiteConfig) -> Result<SuiteReport> {
    let rank1 = || HaloDescriptor::TropicalOf(OrderedGroupDescriptor::rank1("q"));
    let expect_tempered = [
        HaloDescriptor::Trivial,
        HaloDescriptor::NonnegRationals,
        HaloDescriptor::NonnegSurds,
        rank1(),
        HaloDescriptor::TropicalOf(OrderedGroupDescriptor::rank2("arch", "q")),
        HaloDescriptor::lex(rank1(), HaloDescriptor::NonnegRationals),
        HaloDescriptor::lex(rank1(), rank1()),
    ];
    let mut trials = 0;
    for h in &expect_tempered {
        trials += 1;
        if tempered_class(h) != TemperedVerdict::Tempered {
            return Ok(SuiteReport::new(
                "tempered_witnesses",
                trials,
                Some(format!("{h} should classify as tempered")),
            ));
        }
    }
    // a trivial second factor contributes nothing: pairs (r, 1) behave as r
    trials += 1;
    let collapsed = HaloDescriptor::lex(HaloDescriptor::NonnegSurds, HaloDescriptor::Trivial);
    if tempered_class(&collapsed) != TemperedVerdict::Tempered {
        return Ok(SuiteReport::new(
            "tempered_witnesses",
            trials,
            Some(format!("{collapsed} should collapse to its first factor")),
        ));
    }
    // nested lex products on the left are outside the classified shapes
    trials += 1;
    let nested = HaloDescriptor::lex(
        HaloDescriptor::lex(
            HaloDescriptor::NonnegRationals,
            HaloDescriptor::NonnegRationals,
        ),
        rank1(),
    );
    if tempered_class(&nested) != TemperedVerdict::Unknown {
        return Ok(SuiteReport::new(
            "tempered_witnesses",
            trials,
            Some(format!("{nested} is outside the classified shapes")),
        ));
    }
    // an archimedean first factor squeezes any second-factor unit above 1
    let squeezed = [
        HaloDescriptor::lex(
            HaloDescriptor::NonnegRationals,
            HaloDescriptor::NonnegRationals,
        ),
        HaloDescriptor::lex(HaloDescriptor::NonnegRationals, rank1()),
    ];
    for h in &squeezed {
        trials += 1;
        match tempered_class(h) {
            TemperedVerdict::NotTempered { witness, bound } => {
                let one = HaloValue::one(h);
                if halo_cmp(&witness, &one)? != Ordering::Greater {
                    return Ok(SuiteReport::new(
                        "tempered_witnesses",
                        trials,
                        Some("witness must exceed 1".into()),
                    ));
                }
                if !tempered_witness_check(&witness, &bound, 1000)? {
                    return Ok(SuiteReport::new(
                        "tempered_witnesses",
                        trials,
                        Some(format!(
                            "witness {} escapes its bound polynomial",
                            show_value(&witness)
                        )),
                    ));
                }
            }
            other => {
                return Ok(SuiteReport::new(
                    "tempered_witnesses",
                    trials,
                    Some(format!("expected a non-tempered verdict, got {other:?}")),
                ));
            }
        }
    }
    // a genuinely archimedean witness must fail: 2^4 = 16 > 6 = P(4)
    trials += 1;
    let two = HaloValue::rational(rat_int(2))?;
    if tempered_witness_check(&two, &NatPoly::n_plus_two(), 4)? {
        return Ok(SuiteReport::new(
            "tempered_witnesses",
            trials,
            Some("2 in the rationals cannot be squeezed by n+2".into()),
        ));
    }
    Ok(SuiteReport::new("tempered_witnesses", trials, None))
}

fn group_convexity(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut gen = Gen::new(config.seed ^ 0x67727670);
    let groups = [
        OrderedGroupDescriptor::rank1("q"),
        OrderedGroupDescriptor::rank2("arch", "q"),
        OrderedGroupDescriptor::new(vec!["a".into(), "b".into(), "c".into()]),
    ];
    let mut trials = 0;
    for g in &groups {
        for _ in 0..config.trials {
            trials += 1;
            let seed_elem = loop {
                let e = gen.group_element(g);
                if !e.is_identity() {
                    break e;
                }
            };
            let sub = convex_subgroup_generated(&seed_elem)?;
            if !sub.contains(&seed_elem)? {
                return Ok(SuiteReport::new(
                    "group_convexity",
                    trials,
                    Some(format!("generated subgroup misses its generator in {g:?}")),
                ));
            }
            // convexity on a sampled triple
            let lo = gen.group_element(g);
            let mid = gen.group_element(g);
            let hi = gen.group_element(g);
            if sub.contains(&lo)?
                && sub.contains(&hi)?
                && group_cmp(&lo, &mid)? != Ordering::Greater
                && group_cmp(&mid, &hi)? != Ordering::Greater
                && !sub.contains(&mid)?
            {
                return Ok(SuiteReport::new(
                    "group_convexity",
                    trials,
                    Some(format!("convexity fails at cut {}", sub.cut_index)),
                ));
            }
            // the quotient projection is a monoid map and order-preserving
            let quot = quotient_by_convex(&sub);
            let a = gen.group_element(g);
            let b = gen.group_element(g);
            let pa = quot.project(&a)?;
            let pb = quot.project(&b)?;
            if quot.project(&a.op(&b)?)? != pa.op(&pb)? {
                return Ok(SuiteReport::new(
                    "group_convexity",
                    trials,
                    Some("projection is not multiplicative".into()),
                ));
            }
            if group_cmp(&a, &b)? != Ordering::Greater
                && group_cmp(&pa, &pb)? == Ordering::Greater
            {
                return Ok(SuiteReport::new(
                    "group_convexity",
                    trials,
                    Some("projection reverses an inequality".into()),
                ));
            }
            // huber_delta: excludes a two-value above 1, maximally so
            let two = gen.group_element(g);
            if group_cmp(&two, &GroupElement::identity(g))? == Ordering::Greater {
                let delta = huber_delta(&two);
                if delta.contains(&two)? {
                    return Ok(SuiteReport::new(
                        "group_convexity",
                        trials,
                        Some("delta contains the two-value".into()),
                    ));
                }
                if delta.cut_index > 0 {
                    let larger = ConvexSubgroup {
                        group: g.clone(),
                        cut_index: delta.cut_index - 1,
                    };
                    if !larger.contains(&two)? {
                        return Ok(SuiteReport::new(
                            "group_convexity",
                            trials,
                            Some("delta is not the maximal block below the two-value".into()),
                        ));
                    }
                }
            }
        }
    }
    Ok(SuiteReport::new("group_convexity", trials, None))
}

fn retract_idempotent(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut gen = Gen::new(config.seed ^ 0x72657472);
    let mut trials = 0;
    let samples_per_place = config.trials.min(100);
    for place in catalog_places() {
        let once = huber_retract(&place);
        let twice = huber_retract(&once);
        trials += 1;
        if once != twice {
            return Ok(SuiteReport::new(
                "retract_idempotent",
                trials,
                Some(format!("{place} retracts to {once}, then moves to {twice}")),
            ));
        }
        for _ in 0..samples_per_place {
            trials += 1;
            let e = gen.element(once.domain());
            let (a, b) = match (evaluate(&once, &e), evaluate(&twice, &e)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(Error::InsufficientFilterDepth), Err(Error::InsufficientFilterDepth)) => {
                    continue;
                }
                _ => {
                    return Ok(SuiteReport::new(
                        "retract_idempotent",
                        trials,
                        Some(format!("evaluations diverge at {}", show_elem(&e))),
                    ));
                }
            };
            if halo_cmp(&a, &b)? != Ordering::Equal {
                return Ok(SuiteReport::new(
                    "retract_idempotent",
                    trials,
                    Some(format!("retract values differ at {}", show_elem(&e))),
                ));
            }
        }
    }
    Ok(SuiteReport::new("retract_idempotent", trials, None))
}

fn place_suite<F>(name: &'static str, config: &SuiteConfig, check: F) -> Result<SuiteReport>
where
    F: Fn(&PlaceDescriptor, &[(RingElement, RingElement)]) -> Result<Option<String>>,
{
    let mut gen = Gen::new(config.seed ^ name.len() as u64);
    let mut trials = 0;
    for place in catalog_places() {
        let pairs = gen.pairs(place.domain(), config.trials);
        trials += pairs.len() as u64;
        if let Some(ce) = check(&place, &pairs)? {
            return Ok(SuiteReport::new(name, trials, Some(ce)));
        }
    }
    Ok(SuiteReport::new(name, trials, None))
}

fn place_subadditive(config: &SuiteConfig) -> Result<SuiteReport> {
    place_suite("place_subadditive", config, |place, pairs| {
        if let CheckOutcome::Counterexample((a, b)) = check_subadditive_on(place, pairs)? {
            return Ok(Some(format!(
                "{place} breaks |a+b| <= |a|+|b| at a={} b={}",
                show_elem(&a),
                show_elem(&b)
            )));
        }
        if let CheckOutcome::Counterexample((a, b)) = check_submultiplicative_on(place, pairs)? {
            return Ok(Some(format!(
                "{place} breaks |ab| <= |a||b| at a={} b={}",
                show_elem(&a),
                show_elem(&b)
            )));
        }
        Ok(None)
    })
}

fn place_unit_zero(_config: &SuiteConfig) -> Result<SuiteReport> {
    let mut trials = 0;
    for place in catalog_places() {
        trials += 1;
        if let CheckOutcome::Counterexample(e) = check_unit_zero_on(&place)? {
            return Ok(SuiteReport::new(
                "place_unit_zero",
                trials,
                Some(format!("{place} misvalues {}", show_elem(&e))),
            ));
        }
    }
    Ok(SuiteReport::new("place_unit_zero", trials, None))
}

fn nonarch_iff_two(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut gen = Gen::new(config.seed ^ 0x756c7472);
    let mut trials = 0;
    for place in catalog_places() {
        trials += 1;
        let na = is_nonarchimedean(&place)?;
        let two = RingElement::from_small_int(place.domain(), 2)?;
        let v2 = evaluate(&place, &two)?;
        let small_two = halo_cmp(&v2, &HaloValue::one(&v2.halo))? != Ordering::Greater;
        if na != small_two {
            return Ok(SuiteReport::new(
                "nonarch_iff_two",
                trials,
                Some(format!("{place}: |2| <= 1 is {small_two} but tagged {na}")),
            ));
        }
        let pairs = gen.pairs(place.domain(), config.trials);
        trials += pairs.len() as u64;
        let outcome = check_ultrametric_on(&place, &pairs)?;
        match (na, outcome) {
            (true, CheckOutcome::Counterexample((a, b))) => {
                return Ok(SuiteReport::new(
                    "nonarch_iff_two",
                    trials,
                    Some(format!(
                        "{place} tagged ultrametric but fails at a={} b={}",
                        show_elem(&a),
                        show_elem(&b)
                    )),
                ));
            }
            (false, CheckOutcome::Counterexample(_)) => {
                // a genuine violation forces |2| > 1, checked above
            }
            _ => {}
        }
    }
    Ok(SuiteReport::new("nonarch_iff_two", trials, None))
}

fn gauss_multiplicative(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut gen = Gen::new(config.seed ^ 0x67617573);
    let mut trials = 0;
    // the exactly multiplicative catalog places on the line
    for place in catalog_places() {
        let exact = matches!(
            place,
            PlaceDescriptor::GaussPoint { .. } | PlaceDescriptor::HKCase4 { .. }
        );
        if !exact {
            continue;
        }
        let pairs = gen.pairs(place.domain(), config.trials);
        trials += pairs.len() as u64;
        if let CheckOutcome::Counterexample((a, b)) = check_multiplicative_on(&place, &pairs)? {
            return Ok(SuiteReport::new(
                "gauss_multiplicative",
                trials,
                Some(format!(
                    "{place} not multiplicative at a={} b={}",
                    show_elem(&a),
                    show_elem(&b)
                )),
            ));
        }
    }
    // the affine-line evaluation map, across filter cases 1, 2, 4(a)-(c)
    let points = [
        AffinePointDescriptor::HKType1 {
            p: 5,
            point: rat(2, 1),
        },
        AffinePointDescriptor::HKType2Gauss {
            p: 3,
            center: rat(0, 1),
            radius_exp: rat(-1, 1),
        },
        AffinePointDescriptor::HKType4 {
            p: 2,
            center: rat(0, 1),
            major: MajorSubset::Empty,
        },
        AffinePointDescriptor::HKType4 {
            p: 2,
            center: rat(0, 1),
            major: MajorSubset::All,
        },
        AffinePointDescriptor::HKType4 {
            p: 5,
            center: rat(1, 1),
            major: MajorSubset::CutAt(rat(25, 1)),
        },
    ];
    for point in &points {
        for _ in 0..config.trials {
            trials += 1;
            let a = RingElement::QX(gen.qpoly(8));
            let b = RingElement::QX(gen.qpoly(8));
            let va = hk_evaluate(point, &a)?;
            let vb = hk_evaluate(point, &b)?;
            let vab = hk_evaluate(point, &a.mul(&b)?)?;
            if halo_cmp(&vab, &halo_mul(&va, &vb)?)? != Ordering::Equal {
                return Ok(SuiteReport::new(
                    "gauss_multiplicative",
                    trials,
                    Some(format!(
                        "case {} not multiplicative at a={} b={}",
                        crate::line::hk_classify(point)?.case_label(),
                        show_elem(&a),
                        show_elem(&b)
                    )),
                ));
            }
        }
    }
    Ok(SuiteReport::new("gauss_multiplicative", trials, None))
}

fn composite_six(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut gen = Gen::new(config.seed ^ 0x736978);
    let mut trials = 0;
    let places = [
        PlaceDescriptor::CompositeAdic(6),
        PlaceDescriptor::CompositeResidual(6),
    ];
    // sorted search: the first multiplicativity failure must be (2,3)
    let mut sorted_pairs = Vec::new();
    for a in 1i64..=20 {
        for b in a..=20 {
            sorted_pairs.push((RingElement::int(a), RingElement::int(b)));
        }
    }
    for place in &places {
        trials += sorted_pairs.len() as u64;
        match check_multiplicative_on(place, &sorted_pairs)? {
            CheckOutcome::Counterexample((a, b))
                if a == RingElement::int(2) && b == RingElement::int(3) => {}
            CheckOutcome::Counterexample((a, b)) => {
                return Ok(SuiteReport::new(
                    "composite_six",
                    trials,
                    Some(format!(
                        "{place}: first failure at a={} b={}, expected (2,3)",
                        show_elem(&a),
                        show_elem(&b)
                    )),
                ));
            }
            CheckOutcome::Passed => {
                return Ok(SuiteReport::new(
                    "composite_six",
                    trials,
                    Some(format!("{place} passed multiplicativity, expected (2,3)")),
                ));
            }
        }
        // power-multiplicative up to the sixth power on elements <= 10^4
        let mut samples: Vec<RingElement> = (1..=64).map(RingElement::int).collect();
        for _ in 0..config.trials {
            samples.push(RingElement::int(gen.int_in(1, 10_000)));
        }
        trials += samples.len() as u64;
        let exponents = [1, 2, 3, 4, 5, 6];
        if let CheckOutcome::Counterexample((e, n)) =
            check_power_multiplicative_on(place, &samples, &exponents)?
        {
            return Ok(SuiteReport::new(
                "composite_six",
                trials,
                Some(format!(
                    "{place}: |a^n| != |a|^n at a={} n={n}",
                    show_elem(&e)
                )),
            ));
        }
    }
    trials += 1;
    let v6 = evaluate(&places[0], &RingElement::int(6))?;
    if halo_cmp(&v6, &HaloValue::rational(rat(1, 6))?)? != Ordering::Equal {
        return Ok(SuiteReport::new(
            "composite_six",
            trials,
            Some(format!("|6| evaluates to {}", show_value(&v6))),
        ));
    }
    Ok(SuiteReport::new("composite_six", trials, None))
}

fn negation_symmetry(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut gen = Gen::new(config.seed ^ 0x6e656761);
    let mut trials = 0;
    for place in catalog_places() {
        let samples: Vec<RingElement> = (0..config.trials)
            .map(|_| gen.element(place.domain()))
            .collect();
        trials += samples.len() as u64;
        let outcome = crate::place::checks::check_negation_symmetric_on(&place, &samples)?;
        if let CheckOutcome::Counterexample(e) = outcome {
            return Ok(SuiteReport::new(
                "negation_symmetry",
                trials,
                Some(format!("{place}: |-a| != |a| at a={}", show_elem(&e))),
            ));
        }
    }
    // self-test: the harness must catch a deliberately asymmetric map
    trials += 1;
    let samples: Vec<RingElement> = (-3..=3).map(RingElement::int).collect();
    let broken = broken_negation_place();
    if check_negation_symmetric(&broken, &samples)?.passed() {
        return Ok(SuiteReport::new(
            "negation_symmetry",
            trials,
            Some("self-test: an asymmetric map slipped through".into()),
        ));
    }
    Ok(SuiteReport::new("negation_symmetry", trials, None))
}

/// A deliberately defective seminorm on Z: sign-dependent, so |-1| != |1|.
/// Exists only to prove the negation suite can fail.
pub fn broken_negation_place() -> impl Fn(&RingElement) -> Result<HaloValue> {
    |e: &RingElement| {
        let RingElement::Int(n) = e else {
            return Err(Error::DomainMismatch("integers expected".into()));
        };
        if n.is_zero() {
            return Ok(HaloValue::zero(&HaloDescriptor::NonnegRationals));
        }
        HaloValue::rational(if n.is_negative() {
            rat_int(2)
        } else {
            rat_int(1)
        })
    }
}

fn equiv_implies_bounded(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut gen = Gen::new(config.seed ^ 0x65717576);
    let mut trials = 0;
    let mut pairs: Vec<(PlaceDescriptor, PlaceDescriptor)> = [2u64, 3, 5]
        .iter()
        .map(|&p| (PlaceDescriptor::PAdicTrop(p), PlaceDescriptor::PAdicReal(p)))
        .collect();
    let catalog = catalog_places();
    for (i, x) in catalog.iter().enumerate() {
        for y in &catalog[i + 1..] {
            if x.domain() == RingId::Z && y.domain() == RingId::Z && equivalent_oracle(x, y)? {
                pairs.push((x.clone(), y.clone()));
            }
        }
    }
    for (x, y) in &pairs {
        let triples = gen.triples(RingId::Z, config.trials);
        trials += 2 * triples.len() as u64;
        for (from, to) in [(x, y), (y, x)] {
            if let CheckOutcome::Counterexample((a, b, c)) = mult_bounded_by(from, to, &triples)? {
                return Ok(SuiteReport::new(
                    "equiv_implies_bounded",
                    trials,
                    Some(format!(
                        "{from} not bounded by {to} at a={} b={} c={}",
                        show_elem(&a),
                        show_elem(&b),
                        show_elem(&c)
                    )),
                ));
            }
        }
    }
    Ok(SuiteReport::new("equiv_implies_bounded", trials, None))
}

fn topology_intersection(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut gen = Gen::new(config.seed ^ 0x746f706f);
    let points = speh_points_of_z(50)?;
    let n_pairs = config.trials.clamp(1, 200);
    let mut trials = 0;
    for i in 0..n_pairs {
        let strict = i % 4 != 3;
        let r1 = gen.domain_over_z(strict);
        let r2 = gen.domain_over_z(strict);
        let meet = domain_intersection(&r1, &r2)?;
        for x in &points {
            trials += 1;
            let joint = domain_membership(x, &meet)?;
            let separate = domain_membership(x, &r1)? && domain_membership(x, &r2)?;
            if joint != separate {
                return Ok(SuiteReport::new(
                    "topology_intersection",
                    trials,
                    Some(format!(
                        "intersection of {r1} and {r2} misclassifies {x}",
                    )),
                ));
            }
        }
    }
    Ok(SuiteReport::new("topology_intersection", trials, None))
}

fn berkovich_surjective(config: &SuiteConfig) -> Result<SuiteReport> {
    let bound = config.prime_bound.max(2);
    let points = speh_points_of_z(bound)?;
    let mut trials = 0;
    for x in &points {
        trials += 1;
        let preimage = match &x.canonical_place {
            PlaceDescriptor::TrivialOn(_) => BerkovichPointSpecZ::PPower {
                p: 2,
                t: rat(0, 1),
            },
            PlaceDescriptor::ArchimedeanZ => BerkovichPointSpecZ::ArchPower { t: rat(1, 1) },
            PlaceDescriptor::PAdicReal(p) => BerkovichPointSpecZ::PPower {
                p: *p,
                t: rat(1, 1),
            },
            PlaceDescriptor::Residual(p) => BerkovichPointSpecZ::ResidualPt { p: *p },
            other => {
                return Ok(SuiteReport::new(
                    "berkovich_surjective",
                    trials,
                    Some(format!("unexpected enumerated place {other}")),
                ));
            }
        };
        let image = berkovich_to_speh(&preimage)?;
        if !image.same_point(x)? {
            return Ok(SuiteReport::new(
                "berkovich_surjective",
                trials,
                Some(format!("{x} is not hit by its expected preimage")),
            ));
        }
        trials += 1;
        if spev_subset_check(x)? != is_nonarchimedean(&x.canonical_place)? {
            return Ok(SuiteReport::new(
                "berkovich_surjective",
                trials,
                Some(format!("valuation-subspectrum tag wrong at {x}")),
            ));
        }
    }
    Ok(SuiteReport::new("berkovich_surjective", trials, None))
}

fn sheaf_table(_config: &SuiteConfig) -> Result<SuiteReport> {
    let dom = |nums: &[i64], den: i64, strict: bool| -> Result<RationalDomain> {
        RationalDomain::new(
            RingId::Z,
            nums.iter().map(|&n| RingElement::int(n)).collect(),
            RingElement::int(den),
            strict,
        )
    };
    let section_rows: [(RationalDomain, RingDescriptor); 4] = [
        (dom(&[], 6, true)?, RingDescriptor::LocalizedIntegers(6)),
        (dom(&[2], 1, true)?, RingDescriptor::PAdicIntegers(2)),
        (dom(&[0, 25], 5, true)?, RingDescriptor::PAdicField(5)),
        (dom(&[1], 2, true)?, RingDescriptor::RealField),
    ];
    let mut trials = 0;
    for (domain, expected) in &section_rows {
        trials += 1;
        let got = sections_on_domain(domain)?;
        if got != *expected {
            return Ok(SuiteReport::new(
                "sheaf_table",
                trials,
                Some(format!("sections on {domain} came out as {got:?}")),
            ));
        }
    }
    let germ_rows: [(PlaceDescriptor, RingDescriptor); 5] = [
        (PlaceDescriptor::Residual(3), RingDescriptor::PAdicIntegers(3)),
        (PlaceDescriptor::PAdicReal(5), RingDescriptor::PAdicField(5)),
        (PlaceDescriptor::PAdicTrop(5), RingDescriptor::PAdicField(5)),
        (PlaceDescriptor::ArchimedeanZ, RingDescriptor::RealField),
        (
            PlaceDescriptor::TrivialOn(RingId::Z),
            RingDescriptor::RationalField,
        ),
    ];
    for (place, expected) in &germ_rows {
        trials += 1;
        let got = germ_at(&SpehPoint::new(place.clone())?)?;
        if got != *expected {
            return Ok(SuiteReport::new(
                "sheaf_table",
                trials,
                Some(format!("germ at {place} came out as {got:?}")),
            ));
        }
    }
    Ok(SuiteReport::new("sheaf_table", trials, None))
}

fn padic_ord(q: &Rat, p: u64) -> i64 {
    crate::arith::ord_p_rat(q, p)
}

/// ord_p(exact - claimed) >= val + k, i.e. the payload correctly describes
/// the exact rational through its retained digits.
fn payload_matches(p: u64, payload: &CompletedPayload, exact: &Rat) -> bool {
    let (val, unit, k) = match payload {
        CompletedPayload::PAdic { residue, k } => (0i64, residue.clone(), *k),
        CompletedPayload::PAdicFloat { val, unit, k } => (*val, unit.clone(), *k),
        _ => return false,
    };
    if unit.is_zero() {
        return exact.is_zero() || padic_ord(exact, p) >= val + k as i64;
    }
    let claimed = Rat::new(unit, 1.into()) * crate::arith::p_pow_rat(p, val);
    let diff = exact - claimed;
    diff.is_zero() || padic_ord(&diff, p) >= val + k as i64
}

fn completion_hom(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut gen = Gen::new(config.seed ^ 0x636f6d70);
    let mut trials = 0;
    let n = config.trials.min(500);
    for p in [2u64, 3, 5] {
        let int_ring = RingDescriptor::PAdicIntegers(p);
        let field_ring = RingDescriptor::PAdicField(p);
        for _ in 0..n {
            trials += 1;
            // p-integral inputs for Z_p, arbitrary small rationals for Q_p
            let a = loop {
                let q = gen.rational();
                if q.is_zero() || padic_ord(&q, p) >= 0 {
                    break q;
                }
            };
            let b = loop {
                let q = gen.rational();
                if q.is_zero() || padic_ord(&q, p) >= 0 {
                    break q;
                }
            };
            let k = 8;
            let ma = completion_map(&a, &int_ring, k)?;
            let mb = completion_map(&b, &int_ring, k)?;
            let sum = completed_add(&ma, &mb)?;
            let prod = completed_mul(&ma, &mb)?;
            if !payload_matches(p, &sum.payload, &(&a + &b))
                || !payload_matches(p, &prod.payload, &(&a * &b))
            {
                return Ok(SuiteReport::new(
                    "completion_hom",
                    trials,
                    Some(format!("Z_{p} map breaks on {} and {}", a, b)),
                ));
            }
            trials += 1;
            let x = gen.rational();
            let y = gen.rational();
            if x.is_zero() || y.is_zero() {
                continue;
            }
            let mx = completion_map(&x, &field_ring, k)?;
            let my = completion_map(&y, &field_ring, k)?;
            let fsum = completed_add(&mx, &my)?;
            let fprod = completed_mul(&mx, &my)?;
            if !payload_matches(p, &fsum.payload, &(&x + &y))
                || !payload_matches(p, &fprod.payload, &(&x * &y))
            {
                return Ok(SuiteReport::new(
                    "completion_hom",
                    trials,
                    Some(format!("Q_{p} map breaks on {} and {}", x, y)),
                ));
            }
        }
    }
    // dyadic interval arithmetic is conservative
    let real = RingDescriptor::RealField;
    for _ in 0..n {
        trials += 1;
        let x = gen.rational();
        let y = gen.rational();
        let k = 12;
        let sum = completed_add(&completion_map(&x, &real, k)?, &completion_map(&y, &real, k)?)?;
        let prod = completed_mul(&completion_map(&x, &real, k)?, &completion_map(&y, &real, k)?)?;
        for (elem, exact) in [(&sum, &x + &y), (&prod, &x * &y)] {
            let CompletedPayload::Dyadic { lo, hi } = &elem.payload else {
                return Ok(SuiteReport::new(
                    "completion_hom",
                    trials,
                    Some("real arithmetic left the interval form".into()),
                ));
            };
            if exact < *lo || exact > *hi {
                return Ok(SuiteReport::new(
                    "completion_hom",
                    trials,
                    Some(format!("interval [{lo}, {hi}] misses {exact}")),
                ));
            }
        }
    }
    Ok(SuiteReport::new("completion_hom", trials, None))
}

fn adele_diagonal_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut gen = Gen::new(config.seed ^ 0x6164656c);
    let mut trials = 0;
    let support: Vec<u64> = vec![2, 3, 5, 7];
    let n = config.trials.min(300);
    let small_rat = |gen: &mut Gen| {
        let num = gen.int_in(-40, 40);
        let den = [1i64, 2, 3, 5, 6, 7, 10, 30][gen.int_in(0, 7) as usize];
        rat(num, den)
    };
    for _ in 0..n {
        trials += 1;
        let q1 = small_rat(&mut gen);
        let q2 = small_rat(&mut gen);
        let k = 6;
        let d1 = adele_diagonal(&q1, k, &support)?;
        let d2 = adele_diagonal(&q2, k, &support)?;
        // diagonal components agree with the completion at every listed prime
        for (p, component) in &d1.exceptional {
            if !payload_matches(*p, &component.payload, &q1) {
                return Ok(SuiteReport::new(
                    "adele_diagonal",
                    trials,
                    Some(format!("diagonal of {q1} wrong at p={p}")),
                ));
            }
        }
        let sum = adele_add(&d1, &d2)?;
        let prod = adele_mul(&d1, &d2)?;
        for (result, exact) in [(&sum, &q1 + &q2), (&prod, &q1 * &q2)] {
            for (p, component) in &result.exceptional {
                if !payload_matches(*p, &component.payload, &exact) {
                    return Ok(SuiteReport::new(
                        "adele_diagonal",
                        trials,
                        Some(format!(
                            "combination of {q1} and {q2} wrong at p={p}"
                        )),
                    ));
                }
            }
            // primes that dropped to the tail must be integral there
            for p in &support {
                if !result.exceptional.contains_key(p) && !exact.is_zero()
                    && padic_ord(&exact, *p) < 0 {
                        return Ok(SuiteReport::new(
                            "adele_diagonal",
                            trials,
                            Some(format!(
                                "p={p} dropped to the tail but {exact} is not integral there"
                            )),
                        ));
                    }
            }
            let CompletedPayload::Dyadic { lo, hi } = &result.real.payload else {
                return Ok(SuiteReport::new(
                    "adele_diagonal",
                    trials,
                    Some("real component lost its interval".into()),
                ));
            };
            if &exact < lo || &exact > hi {
                return Ok(SuiteReport::new(
                    "adele_diagonal",
                    trials,
                    Some(format!("real interval misses {exact}")),
                ));
            }
        }
    }
    Ok(SuiteReport::new("adele_diagonal", trials, None))
}

// ---- dispatch ----

pub const SUITE_NAMES: [&str; 18] = [
    "halo_axioms",
    "order_compat",
    "surd_float_cross",
    "tempered_witnesses",
    "group_convexity",
    "retract_idempotent",
    "place_subadditive",
    "place_unit_zero",
    "nonarch_iff_two",
    "gauss_multiplicative",
    "composite_six",
    "negation_symmetry",
    "equiv_implies_bounded",
    "topology_intersection",
    "berkovich_surjective",
    "sheaf_table",
    "completion_hom",
    "adele_diagonal",
];

pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<SuiteReport> {
    match name {
        "halo_axioms" => halo_axioms(config),
        "order_compat" => order_compat(config),
        "surd_float_cross" => surd_float_cross(config),
        "tempered_witnesses" => tempered_witnesses(config),
        "group_convexity" => group_convexity(config),
        "retract_idempotent" => retract_idempotent(config),
        "place_subadditive" => place_subadditive(config),
        "place_unit_zero" => place_unit_zero(config),
        "nonarch_iff_two" => nonarch_iff_two(config),
        "gauss_multiplicative" => gauss_multiplicative(config),
        "composite_six" => composite_six(config),
        "negation_symmetry" => negation_symmetry(config),
        "equiv_implies_bounded" => equiv_implies_bounded(config),
        "topology_intersection" => topology_intersection(config),
        "berkovich_surjective" => berkovich_surjective(config),
        "sheaf_table" => sheaf_table(config),
        "completion_hom" => completion_hom(config),
        "adele_diagonal" => adele_diagonal_suite(config),
        other => Err(Error::ParseError(format!("unknown suite \"{other}\""))),
    }
}

pub fn run_all_suites(config: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    SUITE_NAMES
        .iter()
        .map(|name| run_suite(name, config))
        .collect()
}
