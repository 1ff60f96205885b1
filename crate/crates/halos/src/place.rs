//! The seminorm catalog: places on Z, on Fp[X], and on the affine line over
//! a p-adic or archimedean base, with exact evaluation into value halos.
//!
//! A place here is a generalized seminorm: subadditive, power-multiplicative,
//! 0 at 0 and 1 at 1, into a positive totally ordered halo. Most catalog
//! entries are multiplicative; the composite-modulus families on Z are the
//! deliberate exceptions and the reason several oracles carry a
//! multiplicativity guard.
//!
//! Evaluation is exact everywhere: p-adic orders of rationals, Taylor
//! expansions over Q and Q(i), Newton-polygon zero location for disc chains,
//! and surd square roots for archimedean absolute values on Q(i).

pub mod checks;
pub mod classify;
pub mod retract;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_prime, ord_m, ord_p_rat, p_pow_rat};
use crate::group::OrderedGroupDescriptor;
use crate::halo::surd::Surd;
use crate::halo::{halo_cmp, HaloDescriptor, HaloValue, Payload, UnitPayload};
use crate::ring::{fmt_rat, rat_int, FpPoly, QPoly, Qi, Rat, RingElement, RingId};
use crate::{Error, Result};

/// A p-adic disc, radius p^radius_exp around a rational center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disc {
    pub center: Rat,
    pub radius_exp: Rat,
    pub kind: DiscKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscKind {
    Closed,
    Open,
}

impl Disc {
    pub fn closed(center: Rat, radius_exp: Rat) -> Self {
        Disc {
            center,
            radius_exp,
            kind: DiscKind::Closed,
        }
    }
}

impl fmt::Display for Disc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.kind {
            DiscKind::Closed => "<=",
            DiscKind::Open => "<",
        };
        write!(
            f,
            "|X - {}| {} p^{}",
            fmt_rat(&self.center),
            op,
            fmt_rat(&self.radius_exp)
        )
    }
}

/// Major subsets of the p-adic value group: downward closed sets of values,
/// determining where |X - center| sits relative to the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MajorSubset {
    /// Nothing below: |X - center| is larger than every group value.
    Empty,
    /// Everything below: |X - center| is an infinitesimal above zero.
    All,
    /// The values up to |b|: |X - center| sits just above |b|.
    CutAt(Rat),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlaceDescriptor {
    /// 0 at 0, 1 elsewhere, on the named ring.
    TrivialOn(RingId),
    /// The p-adic absolute value with values written tropically, as powers
    /// of the formal generator named after p.
    PAdicTrop(u64),
    /// The p-adic absolute value with values in the nonnegative rationals.
    PAdicReal(u64),
    /// The usual absolute value on Z (and Q).
    ArchimedeanZ,
    /// 0 on multiples of p, 1 elsewhere.
    Residual(u64),
    /// m^(-k) where m^k exactly divides the argument, for composite m.
    /// Power-multiplicative but not multiplicative.
    CompositeAdic(u64),
    /// 0 on multiples of composite m, 1 elsewhere. Not multiplicative.
    CompositeResidual(u64),
    /// 0 on multiples of the irreducible modulus in Fp[X], 1 elsewhere.
    FpResidual { p: u64, modulus: FpPoly },
    /// modulus-adic valuation on Fp[X], written tropically.
    FpPAdic { p: u64, modulus: FpPoly },
    /// sup norm on the closed disc of radius p^radius_exp around center:
    /// max over i of |c_i| p^(radius_exp * i) on Taylor coefficients.
    GaussPoint { p: u64, center: Rat, radius_exp: Rat },
    /// The valuation carried by a strictly decreasing chain of closed discs
    /// whose intersection is empty in Q_p. Only a finite prefix is stored;
    /// queries that outrun it fail rather than guess.
    HKImmediate { p: u64, discs: Vec<Disc> },
    /// |X - center| cut into the value group by a major subset; values in a
    /// rank-2 tropical group.
    HKCase4 {
        p: u64,
        center: Rat,
        major: MajorSubset,
    },
    /// f maps to the complex absolute value of f(a), a in Q(i).
    ArchEval(Qi),
    /// The infinitesimal neighborhood of a in Q(i): |f| = |c| q^i on the
    /// lowest nonvanishing Taylor term c (X-a)^i, q an infinitesimal.
    ArchInfinitesimal(Qi),
    /// The infinitesimal neighborhood of infinity: |f| = |lead f| q^deg f,
    /// q larger than every real.
    ArchInfinity,
}

use PlaceDescriptor::*;

impl PlaceDescriptor {
    /// Construction-time invariants. JSON parsing and evaluation both call
    /// this, so an invalid descriptor cannot reach a formula.
    pub fn validate(&self) -> Result<()> {
        let prime = |p: u64| -> Result<()> {
            if is_prime(p) {
                Ok(())
            } else {
                Err(Error::InvalidDescriptor(format!("{p} is not prime")))
            }
        };
        match self {
            TrivialOn(ring) => match ring {
                RingId::QXFrac => Err(Error::InvalidDescriptor(
                    "the trivial place lives on a domain, not its fraction field".into(),
                )),
                RingId::FpX(p) => prime(*p),
                _ => Ok(()),
            },
            PAdicTrop(p) | PAdicReal(p) | Residual(p) => prime(*p),
            ArchimedeanZ | ArchInfinity => Ok(()),
            CompositeAdic(m) | CompositeResidual(m) => {
                if *m >= 2 && !is_prime(*m) {
                    Ok(())
                } else {
                    Err(Error::InvalidDescriptor(format!(
                        "composite modulus required, got {m}"
                    )))
                }
            }
            FpResidual { p, modulus } | FpPAdic { p, modulus } => {
                prime(*p)?;
                if modulus.p != *p {
                    return Err(Error::MixedRings(format!(
                        "modulus over F{} used at p = {p}",
                        modulus.p
                    )));
                }
                if modulus.is_irreducible() {
                    Ok(())
                } else {
                    Err(Error::ReducibleModulus(format!(
                        "{modulus} factors over F{p}"
                    )))
                }
            }
            GaussPoint { p, .. } => prime(*p),
            HKImmediate { p, discs } => {
                prime(*p)?;
                if discs.is_empty() {
                    return Err(Error::InvalidDescriptor(
                        "empty disc chain".into(),
                    ));
                }
                for pair in discs.windows(2) {
                    let (outer, inner) = (&pair[0], &pair[1]);
                    if inner.radius_exp >= outer.radius_exp {
                        return Err(Error::InvalidDescriptor(
                            "disc radii must strictly decrease".into(),
                        ));
                    }
                    let step = &inner.center - &outer.center;
                    if !step.is_zero()
                        && Rat::from_integer(BigInt::from(-ord_p_rat(&step, *p)))
                            > outer.radius_exp
                    {
                        return Err(Error::InvalidDescriptor(format!(
                            "disc {inner} is not inside {outer}"
                        )));
                    }
                }
                if discs.iter().any(|d| d.kind != DiscKind::Closed) {
                    return Err(Error::InvalidDescriptor(
                        "disc chains consist of closed discs".into(),
                    ));
                }
                Ok(())
            }
            HKCase4 { p, major, .. } => {
                prime(*p)?;
                if let MajorSubset::CutAt(b) = major {
                    if b.is_zero() {
                        return Err(Error::InvalidDescriptor(
                            "cut value must be a nonzero rational".into(),
                        ));
                    }
                }
                Ok(())
            }
            ArchEval(_) | ArchInfinitesimal(_) => Ok(()),
        }
    }

    /// The ring the place primarily lives on. Multiplicative places on Z
    /// also evaluate rationals; line places evaluate everything that embeds
    /// into Q(X).
    pub fn domain(&self) -> RingId {
        match self {
            TrivialOn(ring) => *ring,
            PAdicTrop(_) | PAdicReal(_) | ArchimedeanZ | Residual(_) | CompositeAdic(_)
            | CompositeResidual(_) => RingId::Z,
            FpResidual { p, .. } | FpPAdic { p, .. } => RingId::FpX(*p),
            GaussPoint { .. } | HKImmediate { .. } | HKCase4 { .. } | ArchEval(_)
            | ArchInfinitesimal(_) | ArchInfinity => RingId::QX,
        }
    }

    /// Structural multiplicativity: |ab| = |a||b| identically.
    pub fn is_multiplicative(&self) -> bool {
        !matches!(self, CompositeAdic(_) | CompositeResidual(_))
    }
}

impl fmt::Display for PlaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrivialOn(r) => write!(f, "trivial on {r}"),
            PAdicTrop(p) => write!(f, "|.|_{p} (tropical)"),
            PAdicReal(p) => write!(f, "|.|_{p}"),
            ArchimedeanZ => write!(f, "|.|_oo"),
            Residual(p) => write!(f, "|.|_({p},0)"),
            CompositeAdic(m) => write!(f, "|.|_{m} (composite)"),
            CompositeResidual(m) => write!(f, "|.|_({m},0) (composite)"),
            FpResidual { p, modulus } => write!(f, "residual at ({modulus}) over F{p}"),
            FpPAdic { p, modulus } => write!(f, "({modulus})-adic over F{p}"),
            GaussPoint {
                p,
                center,
                radius_exp,
            } => write!(
                f,
                "gauss point |X - {}| = {p}^{}",
                fmt_rat(center),
                fmt_rat(radius_exp)
            ),
            HKImmediate { p, discs } => {
                write!(f, "disc chain over Q_{p} of depth {}", discs.len())
            }
            HKCase4 { p, center, major } => {
                let m = match major {
                    MajorSubset::Empty => "past every value".to_string(),
                    MajorSubset::All => "below every value".to_string(),
                    MajorSubset::CutAt(b) => format!("just above |{}|", fmt_rat(b)),
                };
                write!(f, "cut point |X - {}| {m} of |Q_{p}*|", fmt_rat(center))
            }
            ArchEval(a) => write!(f, "evaluation |f({a})|"),
            ArchInfinitesimal(a) => write!(f, "infinitesimal neighborhood of {a}"),
            ArchInfinity => write!(f, "infinitesimal neighborhood of infinity"),
        }
    }
}

fn trop1_halo(label: String) -> HaloDescriptor {
    HaloDescriptor::TropicalOf(OrderedGroupDescriptor::new(vec![label]))
}

fn trop2_halo(first: String, second: String) -> HaloDescriptor {
    HaloDescriptor::TropicalOf(OrderedGroupDescriptor::new(vec![first, second]))
}

/// The value halo the place maps into.
pub fn codomain_halo(place: &PlaceDescriptor) -> HaloDescriptor {
    match place {
        TrivialOn(_) | Residual(_) | CompositeResidual(_) | FpResidual { .. } => {
            HaloDescriptor::Trivial
        }
        PAdicTrop(p) => trop1_halo(p.to_string()),
        PAdicReal(_) | ArchimedeanZ | CompositeAdic(_) => HaloDescriptor::NonnegRationals,
        FpPAdic { modulus, .. } => trop1_halo(modulus.to_string()),
        GaussPoint { p, .. } | HKImmediate { p, .. } => trop1_halo(p.to_string()),
        HKCase4 { p, major, .. } => match major {
            MajorSubset::Empty => trop2_halo("q".into(), p.to_string()),
            MajorSubset::All => trop2_halo("q^-1".into(), p.to_string()),
            MajorSubset::CutAt(_) => trop2_halo(p.to_string(), "q".into()),
        },
        ArchEval(_) => HaloDescriptor::NonnegSurds,
        ArchInfinitesimal(_) => HaloDescriptor::lex(
            trop1_halo("q^-1".into()),
            HaloDescriptor::NonnegSurds,
        ),
        ArchInfinity => {
            HaloDescriptor::lex(trop1_halo("q".into()), HaloDescriptor::NonnegSurds)
        }
    }
}

fn trop_value(halo: &HaloDescriptor, exps: Vec<Rat>) -> HaloValue {
    HaloValue::new(halo, Payload::Unit(UnitPayload::Group(exps))).expect("rank matches")
}

fn int_arg(elem: &RingElement) -> Result<&BigInt> {
    match elem {
        RingElement::Int(n) => Ok(n),
        _ => Err(Error::DomainMismatch(format!(
            "{} element at a place on Z",
            elem.ring_id()
        ))),
    }
}

/// Exact evaluation of the place at a ring element.
pub fn evaluate(place: &PlaceDescriptor, elem: &RingElement) -> Result<HaloValue> {
    place.validate()?;
    let codomain = codomain_halo(place);
    match place {
        TrivialOn(ring) => {
            if elem.ring_id() != *ring {
                return Err(Error::DomainMismatch(format!(
                    "{} element at the trivial place on {ring}",
                    elem.ring_id()
                )));
            }
            Ok(if elem.is_zero() {
                HaloValue::zero(&codomain)
            } else {
                HaloValue::one(&codomain)
            })
        }
        PAdicTrop(p) => {
            let q = elem.as_rational()?;
            Ok(if q.is_zero() {
                HaloValue::zero(&codomain)
            } else {
                trop_value(&codomain, vec![rat_int(-ord_p_rat(&q, *p))])
            })
        }
        PAdicReal(p) => {
            let q = elem.as_rational()?;
            Ok(if q.is_zero() {
                HaloValue::rational(Rat::zero())?
            } else {
                HaloValue::rational(p_pow_rat(*p, -ord_p_rat(&q, *p)))?
            })
        }
        ArchimedeanZ => {
            let q = elem.as_rational()?;
            HaloValue::rational(q.abs())
        }
        Residual(p) => {
            let n = int_arg(elem)?;
            Ok(if n.is_multiple_of(&BigInt::from(*p)) {
                HaloValue::zero(&codomain)
            } else {
                HaloValue::one(&codomain)
            })
        }
        CompositeAdic(m) => {
            let n = int_arg(elem)?;
            if n.is_zero() {
                return HaloValue::rational(Rat::zero());
            }
            let k = ord_m(n, *m);
            HaloValue::rational(Rat::new(
                BigInt::one(),
                BigInt::from(*m).pow(k as u32),
            ))
        }
        CompositeResidual(m) => {
            let n = int_arg(elem)?;
            Ok(if n.is_multiple_of(&BigInt::from(*m)) {
                HaloValue::zero(&codomain)
            } else {
                HaloValue::one(&codomain)
            })
        }
        FpResidual { p, modulus } => {
            let f = elem.as_fp_poly(*p)?;
            Ok(if f.rem(modulus).is_zero() {
                HaloValue::zero(&codomain)
            } else {
                HaloValue::one(&codomain)
            })
        }
        FpPAdic { p, modulus } => {
            let f = elem.as_fp_poly(*p)?;
            Ok(if f.is_zero() {
                HaloValue::zero(&codomain)
            } else {
                let k = modulus.ord_in(&f);
                trop_value(&codomain, vec![-rat_int(k as i64)])
            })
        }
        GaussPoint {
            p,
            center,
            radius_exp,
        } => {
            let (num, den) = elem.as_poly_fraction()?;
            if num.is_zero() {
                return Ok(HaloValue::zero(&codomain));
            }
            let e_num = gauss_exponent(&num.taylor_at(center), *p, radius_exp);
            let e_den = gauss_exponent(&den.taylor_at(center), *p, radius_exp);
            Ok(trop_value(&codomain, vec![e_num - e_den]))
        }
        HKImmediate { p, discs } => {
            let (num, den) = elem.as_poly_fraction()?;
            if num.is_zero() {
                return Ok(HaloValue::zero(&codomain));
            }
            let product = num.mul(&den);
            let center = separating_center(&product, *p, discs)?;
            let e = Rat::from_integer(BigInt::from(
                ord_p_rat(&den.eval(&center), *p) - ord_p_rat(&num.eval(&center), *p),
            ));
            Ok(trop_value(&codomain, vec![e]))
        }
        HKCase4 { p, center, major } => {
            let (num, den) = elem.as_poly_fraction()?;
            if num.is_zero() {
                return Ok(HaloValue::zero(&codomain));
            }
            let v_num = case4_vector(&num.taylor_at(center), *p, major);
            let v_den = case4_vector(&den.taylor_at(center), *p, major);
            Ok(trop_value(
                &codomain,
                vec![v_num.0 - v_den.0, v_num.1 - v_den.1],
            ))
        }
        ArchEval(a) => {
            let (num, den) = elem.as_poly_fraction()?;
            let dv = den.eval_qi(a);
            if dv.is_zero() {
                return Err(Error::NotRepresentable(format!(
                    "denominator vanishes at {a}; cancel the common factor first"
                )));
            }
            let nv = num.eval_qi(a);
            if nv.is_zero() {
                return Ok(HaloValue::zero(&codomain));
            }
            let s = Surd::sqrt_of_rat(&(nv.norm_sq() / dv.norm_sq()))?;
            Ok(HaloValue::surd_value(s))
        }
        ArchInfinitesimal(a) => {
            let (num, den) = elem.as_poly_fraction()?;
            if num.is_zero() {
                return Ok(HaloValue::zero(&codomain));
            }
            let (i_num, c_num) = lowest_term(&num.taylor_at_qi(a));
            let (i_den, c_den) = lowest_term(&den.taylor_at_qi(a));
            // generator is q^-1, so the stored exponent is the negated
            // q-degree; larger values of the infinitesimal order sit lower
            let q_exp = rat_int(i_den as i64 - i_num as i64);
            let s = Surd::sqrt_of_rat(&(c_num.norm_sq() / c_den.norm_sq()))?;
            lex_value(&codomain, vec![q_exp], s)
        }
        ArchInfinity => {
            let (num, den) = elem.as_poly_fraction()?;
            if num.is_zero() {
                return Ok(HaloValue::zero(&codomain));
            }
            let dn = num.degree().expect("nonzero");
            let dd = den.degree().expect("nonzero denominator");
            let q_exp = rat_int(dn as i64 - dd as i64);
            let lead = (num.coeff(dn) / den.coeff(dd)).abs();
            lex_value(&codomain, vec![q_exp], Surd::from_rat(lead)?)
        }
    }
}

fn lex_value(codomain: &HaloDescriptor, exps: Vec<Rat>, s: Surd) -> Result<HaloValue> {
    let HaloDescriptor::LexProduct(first, _) = codomain else {
        unreachable!("archimedean line codomains are lex products");
    };
    HaloValue::lex_pair(trop_value(first, exps), HaloValue::surd_value(s))
}

/// max over nonzero Taylor coefficients of radius_exp * i - ord_p(c_i).
/// The coefficient list must have a nonzero entry.
fn gauss_exponent(coeffs: &[Rat], p: u64, radius_exp: &Rat) -> Rat {
    let mut best: Option<Rat> = None;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = radius_exp * rat_int(i as i64) - rat_int(ord_p_rat(c, p));
        if best.as_ref().is_none_or(|b| e > *b) {
            best = Some(e);
        }
    }
    best.expect("a nonzero coefficient")
}

/// Center of the first disc in the chain that avoids every zero of `poly`
/// (over the algebraic closure). The closed disc of radius p^r around a
/// avoids the zeros of sum c_i (X-a)^i exactly when
/// |c_0| > |c_i| p^(r i) for every i >= 1: the Newton polygon of the shifted
/// polynomial then has all roots strictly larger than p^r.
fn separating_center(poly: &QPoly, p: u64, discs: &[Disc]) -> Result<Rat> {
    for disc in discs {
        let coeffs = poly.taylor_at(&disc.center);
        if coeffs[0].is_zero() {
            continue;
        }
        let c0_exp = -rat_int(ord_p_rat(&coeffs[0], p));
        let avoided = coeffs.iter().enumerate().skip(1).all(|(i, c)| {
            c.is_zero() || {
                let e = -rat_int(ord_p_rat(c, p)) + &disc.radius_exp * rat_int(i as i64);
                c0_exp > e
            }
        });
        if avoided {
            return Ok(disc.center.clone());
        }
    }
    Err(Error::InsufficientFilterDepth)
}

/// Lexicographic maximum of the per-term value vectors. Empty: q dominant,
/// exponent grows with the term degree. All: q^-1 dominant, the lowest term
/// wins. CutAt(b): the p-part of c_i b^i dominates, the infinitesimal excess
/// over |b| breaks ties upward in i.
fn case4_vector(coeffs: &[Rat], p: u64, major: &MajorSubset) -> (Rat, Rat) {
    let mut best: Option<(Rat, Rat)> = None;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let i_rat = rat_int(i as i64);
        let c_exp = -rat_int(ord_p_rat(c, p));
        let vec = match major {
            MajorSubset::Empty => (i_rat, c_exp),
            MajorSubset::All => (-i_rat, c_exp),
            MajorSubset::CutAt(b) => {
                (c_exp - rat_int(ord_p_rat(b, p)) * &i_rat, i_rat)
            }
        };
        let better = best
            .as_ref()
            .is_none_or(|b| (&vec.0, &vec.1) > (&b.0, &b.1));
        if better {
            best = Some(vec);
        }
    }
    best.expect("a nonzero coefficient")
}

/// Index and coefficient of the lowest nonvanishing Taylor term.
fn lowest_term(coeffs: &[Qi]) -> (usize, Qi) {
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            return (i, c.clone());
        }
    }
    unreachable!("nonzero polynomial has a nonzero coefficient")
}

/// The kernel ideal, in the place's primary domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealDescriptor {
    Zero,
    /// (n) in Z. The generator of a residual kernel is prime; composite
    /// residual places contribute the composite generator, consistent with
    /// their failure of multiplicativity.
    PrincipalInt(u64),
    /// (modulus) in Fp[X].
    PrincipalPoly(FpPoly),
    /// Polynomials vanishing at a: the minimal polynomial of a over Q.
    PrincipalLinear(Qi),
}

impl IdealDescriptor {
    /// Monic generator over Q for the vanishing ideal of a Q(i) point.
    pub fn generator_poly(&self) -> Option<QPoly> {
        match self {
            IdealDescriptor::PrincipalLinear(a) => Some(if a.is_rational() {
                QPoly::new(vec![-a.re.clone(), Rat::one()])
            } else {
                // (X - a)(X - conj a) = X^2 - 2 re(a) X + |a|^2
                QPoly::new(vec![a.norm_sq(), -rat_int(2) * &a.re, Rat::one()])
            }),
            _ => None,
        }
    }
}

pub fn kernel(place: &PlaceDescriptor) -> IdealDescriptor {
    match place {
        TrivialOn(_) | PAdicTrop(_) | PAdicReal(_) | ArchimedeanZ | CompositeAdic(_)
        | GaussPoint { .. } | HKImmediate { .. } | HKCase4 { .. } | ArchInfinitesimal(_)
        | ArchInfinity | FpPAdic { .. } => IdealDescriptor::Zero,
        Residual(p) => IdealDescriptor::PrincipalInt(*p),
        CompositeResidual(m) => IdealDescriptor::PrincipalInt(*m),
        FpResidual { modulus, .. } => IdealDescriptor::PrincipalPoly(modulus.clone()),
        ArchEval(a) => IdealDescriptor::PrincipalLinear(a.clone()),
    }
}

/// |2| <= 1 in the codomain. The ultrametric inequality on a place is
/// equivalent to this single comparison.
pub fn is_nonarchimedean(place: &PlaceDescriptor) -> Result<bool> {
    let domain = place.domain();
    let two = RingElement::from_small_int(domain, 2)?;
    let v = evaluate(place, &two)?;
    let one = HaloValue::one(&v.halo);
    Ok(halo_cmp(&v, &one)? != std::cmp::Ordering::Greater)
}

/// Representative instances of every catalog family, used by the check
/// suites and the acceptance tests.
pub fn catalog_places() -> Vec<PlaceDescriptor> {
    let x2x1_f2 = FpPoly::new(2, vec![1, 1, 1]).expect("prime 2");
    let x_f3 = FpPoly::x(3);
    vec![
        TrivialOn(RingId::Z),
        TrivialOn(RingId::ZX),
        PAdicTrop(2),
        PAdicTrop(5),
        PAdicReal(2),
        PAdicReal(7),
        ArchimedeanZ,
        Residual(2),
        Residual(5),
        CompositeAdic(6),
        CompositeResidual(6),
        FpResidual {
            p: 2,
            modulus: x2x1_f2.clone(),
        },
        FpPAdic { p: 3, modulus: x_f3 },
        GaussPoint {
            p: 5,
            center: Rat::zero(),
            radius_exp: Rat::zero(),
        },
        GaussPoint {
            p: 3,
            center: crate::ring::rat(1, 2),
            radius_exp: rat_int(-2),
        },
        HKImmediate {
            p: 3,
            discs: vec![
                Disc::closed(Rat::zero(), rat_int(-1)),
                Disc::closed(rat_int(3), rat_int(-2)),
            ],
        },
        HKCase4 {
            p: 2,
            center: Rat::zero(),
            major: MajorSubset::Empty,
        },
        HKCase4 {
            p: 2,
            center: Rat::zero(),
            major: MajorSubset::All,
        },
        HKCase4 {
            p: 2,
            center: Rat::zero(),
            major: MajorSubset::CutAt(rat_int(4)),
        },
        ArchEval(Qi::new(Rat::zero(), Rat::one())),
        ArchEval(Qi::from_rat(crate::ring::rat(1, 2))),
        ArchInfinitesimal(Qi::zero()),
        ArchInfinitesimal(Qi::new(Rat::zero(), Rat::one())),
        ArchInfinity,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;
    use std::cmp::Ordering;

    fn exp_of(v: &HaloValue) -> Vec<Rat> {
        match &v.payload {
            Payload::Unit(UnitPayload::Group(e)) => e.clone(),
            other => panic!("expected a tropical unit, got {other:?}"),
        }
    }

    fn rational_of(v: &HaloValue) -> Rat {
        match &v.payload {
            Payload::Zero => Rat::zero(),
            Payload::Unit(UnitPayload::Rational(q)) => q.clone(),
            other => panic!("expected a rational value, got {other:?}"),
        }
    }

    #[test]
    fn descriptor_validation() {
        assert!(CompositeAdic(7).validate().is_err());
        assert!(CompositeAdic(1).validate().is_err());
        assert!(CompositeAdic(6).validate().is_ok());
        assert!(PAdicReal(9).validate().is_err());
        let reducible = FpPoly::new(2, vec![1, 0, 1]).unwrap(); // (X+1)^2 over F2
        assert!(matches!(
            (FpResidual {
                p: 2,
                modulus: reducible
            })
            .validate(),
            Err(Error::ReducibleModulus(_))
        ));
        let bad_chain = HKImmediate {
            p: 3,
            discs: vec![
                Disc::closed(Rat::zero(), rat_int(-2)),
                // outside the first disc: |10 - 0|_3 = 1 > 3^-2
                Disc::closed(rat_int(10), rat_int(-3)),
            ],
        };
        assert!(bad_chain.validate().is_err());
    }

    #[test]
    fn padic_values() {
        let twelve = RingElement::int(12);
        let real = evaluate(&PAdicReal(2), &twelve).unwrap();
        assert_eq!(rational_of(&real), rat(1, 4));
        let trop = evaluate(&PAdicTrop(2), &twelve).unwrap();
        assert_eq!(exp_of(&trop), vec![rat_int(-2)]);
        // extends to rationals
        let half = RingElement::Rat(rat(1, 2));
        assert_eq!(
            rational_of(&evaluate(&PAdicReal(2), &half).unwrap()),
            rat_int(2)
        );
        assert!(evaluate(&PAdicReal(2), &RingElement::int(0))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn composite_and_residual_values() {
        assert_eq!(
            rational_of(&evaluate(&CompositeAdic(6), &RingElement::int(6)).unwrap()),
            rat(1, 6)
        );
        assert_eq!(
            rational_of(&evaluate(&CompositeAdic(6), &RingElement::int(2)).unwrap()),
            rat_int(1)
        );
        assert_eq!(
            rational_of(&evaluate(&CompositeAdic(6), &RingElement::int(72)).unwrap()),
            rat(1, 36)
        );
        assert!(evaluate(&Residual(5), &RingElement::int(10))
            .unwrap()
            .is_zero());
        assert!(evaluate(&Residual(5), &RingElement::int(7))
            .unwrap()
            .is_one());
        assert!(evaluate(&CompositeResidual(6), &RingElement::int(6))
            .unwrap()
            .is_zero());
        assert!(evaluate(&CompositeResidual(6), &RingElement::int(2))
            .unwrap()
            .is_one());
    }

    #[test]
    fn fp_values() {
        let place = FpPAdic {
            p: 3,
            modulus: FpPoly::x(3),
        };
        // X^2 (X + 1): ord 2 at (X)
        let f = RingElement::zx(&[0, 0, 1, 1]);
        assert_eq!(exp_of(&evaluate(&place, &f).unwrap()), vec![rat_int(-2)]);
        // 3 reduces to 0 mod 3
        assert!(evaluate(&place, &RingElement::int(3)).unwrap().is_zero());
        assert!(evaluate(&place, &RingElement::int(2)).unwrap().is_one());
    }

    #[test]
    fn gauss_values() {
        let place = GaussPoint {
            p: 5,
            center: Rat::zero(),
            radius_exp: Rat::zero(),
        };
        // X^2 + 5X + 25 on the unit disc: max(1, 1/5, 1/25) = 1
        let f = RingElement::zx(&[25, 5, 1]);
        assert_eq!(exp_of(&evaluate(&place, &f).unwrap()), vec![rat_int(0)]);
        // fractions divide exponents
        let g = RingElement::qx_frac(
            QPoly::new(vec![rat_int(5)]),
            QPoly::new(vec![rat_int(0), rat_int(1)]),
        )
        .unwrap();
        assert_eq!(exp_of(&evaluate(&place, &g).unwrap()), vec![rat_int(-1)]);
    }

    #[test]
    fn disc_chain_values() {
        let place = HKImmediate {
            p: 3,
            discs: vec![
                Disc::closed(Rat::zero(), rat_int(-1)),
                Disc::closed(rat_int(3), rat_int(-2)),
            ],
        };
        // X vanishes at 0, inside the first disc; the second separates
        let x = RingElement::zx(&[0, 1]);
        assert_eq!(exp_of(&evaluate(&place, &x).unwrap()), vec![rat_int(-1)]);
        // X^2 - 3 has roots of size 3^(-1/2), outside the first disc already
        let f = RingElement::zx(&[-3, 0, 1]);
        assert_eq!(exp_of(&evaluate(&place, &f).unwrap()), vec![rat_int(-1)]);
        // X(X - 3) vanishes in both stored discs
        let g = RingElement::zx(&[0, -3, 1]);
        assert!(matches!(
            evaluate(&place, &g),
            Err(Error::InsufficientFilterDepth)
        ));
    }

    #[test]
    fn case4_values() {
        let center = Rat::zero();
        let empty = HKCase4 {
            p: 2,
            center: center.clone(),
            major: MajorSubset::Empty,
        };
        let all = HKCase4 {
            p: 2,
            center: center.clone(),
            major: MajorSubset::All,
        };
        let cut = HKCase4 {
            p: 2,
            center,
            major: MajorSubset::CutAt(rat_int(4)),
        };
        let f = RingElement::zx(&[2, 1]); // X + 2
        // past every value: the leading term wins, |f| = q^1
        assert_eq!(
            exp_of(&evaluate(&empty, &f).unwrap()),
            vec![rat_int(1), rat_int(0)]
        );
        // below every value: the constant term wins, |f| = |2|_2
        assert_eq!(
            exp_of(&evaluate(&all, &f).unwrap()),
            vec![rat_int(0), rat_int(-1)]
        );
        // just above |4|: |X| = (1/4) delta with delta infinitesimal above
        // 1, so |2| = 1/2 still dominates
        assert_eq!(
            exp_of(&evaluate(&cut, &f).unwrap()),
            vec![rat_int(-1), rat_int(0)]
        );
        // ties in the p-part break upward on the delta exponent:
        // |X + 4| = max(|X|, |4|) = (1/4) delta since delta > 1
        let g = RingElement::zx(&[4, 1]);
        assert_eq!(
            exp_of(&evaluate(&cut, &g).unwrap()),
            vec![rat_int(-2), rat_int(1)]
        );
    }

    #[test]
    fn archimedean_values() {
        let i = Qi::new(Rat::zero(), Rat::one());
        // X^2 + 1 vanishes at i
        let f = RingElement::zx(&[1, 0, 1]);
        assert!(evaluate(&ArchEval(i.clone()), &f).unwrap().is_zero());
        // |i + 2| = sqrt(5)
        let g = RingElement::zx(&[2, 1]);
        let v = evaluate(&ArchEval(i.clone()), &g).unwrap();
        assert_eq!(
            v,
            HaloValue::surd_value(Surd::sqrt_of_rat(&rat_int(5)).unwrap())
        );

        // 3X^2 + 5X^3 near 0: lowest term 3X^2
        let h = RingElement::zx(&[0, 0, 3, 5]);
        let inf = evaluate(&ArchInfinitesimal(Qi::zero()), &h).unwrap();
        let expected = HaloValue::lex_pair(
            trop_value(&trop1_halo("q^-1".into()), vec![rat_int(-2)]),
            HaloValue::surd_value(Surd::from_rat(rat_int(3)).unwrap()),
        )
        .unwrap();
        assert_eq!(inf, expected);

        // at infinity the leading term wins
        let at_inf = evaluate(&ArchInfinity, &h).unwrap();
        let expected_inf = HaloValue::lex_pair(
            trop_value(&trop1_halo("q".into()), vec![rat_int(3)]),
            HaloValue::surd_value(Surd::from_rat(rat_int(5)).unwrap()),
        )
        .unwrap();
        assert_eq!(at_inf, expected_inf);
    }

    #[test]
    fn archimedean_pole_is_rejected() {
        let i = Qi::new(Rat::zero(), Rat::one());
        let frac = RingElement::qx_frac(
            QPoly::constant(Rat::one()),
            QPoly::new(vec![Rat::one(), Rat::zero(), Rat::one()]),
        )
        .unwrap();
        assert!(matches!(
            evaluate(&ArchEval(i), &frac),
            Err(Error::NotRepresentable(_))
        ));
    }

    #[test]
    fn units_and_zeros_across_the_catalog() {
        for place in catalog_places() {
            let domain = place.domain();
            let zero = RingElement::zero(domain).unwrap();
            let one = RingElement::one(domain).unwrap();
            assert!(
                evaluate(&place, &zero).unwrap().is_zero(),
                "|0| = 0 at {place}"
            );
            assert!(
                evaluate(&place, &one).unwrap().is_one(),
                "|1| = 1 at {place}"
            );
        }
    }

    #[test]
    fn nonarchimedean_table() {
        for place in catalog_places() {
            let expected = !matches!(
                place,
                ArchimedeanZ | ArchEval(_) | ArchInfinitesimal(_) | ArchInfinity
            );
            assert_eq!(
                is_nonarchimedean(&place).unwrap(),
                expected,
                "at {place}"
            );
        }
    }

    #[test]
    fn kernels() {
        assert_eq!(kernel(&PAdicReal(5)), IdealDescriptor::Zero);
        assert_eq!(kernel(&Residual(5)), IdealDescriptor::PrincipalInt(5));
        assert_eq!(
            kernel(&CompositeResidual(6)),
            IdealDescriptor::PrincipalInt(6)
        );
        let a = Qi::new(rat(1, 2), Rat::one());
        let gen = kernel(&ArchEval(a.clone())).generator_poly().unwrap();
        // X^2 - X + 5/4 vanishes at 1/2 + i
        assert!(gen.eval_qi(&a).is_zero());
        assert_eq!(gen.coeff(2), Rat::one());
        let real = kernel(&ArchEval(Qi::from_rat(rat(1, 2))))
            .generator_poly()
            .unwrap();
        assert!(real.eval(&rat(1, 2)).is_zero());
        assert_eq!(real.degree(), Some(1));
    }

    #[test]
    fn evaluation_is_multiplicative_where_claimed() {
        let samples = [
            RingElement::int(-12),
            RingElement::int(7),
            RingElement::int(90),
        ];
        for place in catalog_places() {
            if place.domain() != RingId::Z || !place.is_multiplicative() {
                continue;
            }
            for a in &samples {
                for b in &samples {
                    let ab = a.mul(b).unwrap();
                    let lhs = evaluate(&place, &ab).unwrap();
                    let rhs = crate::halo::halo_mul(
                        &evaluate(&place, a).unwrap(),
                        &evaluate(&place, b).unwrap(),
                    )
                    .unwrap();
                    assert_eq!(halo_cmp(&lhs, &rhs).unwrap(), Ordering::Equal);
                }
            }
        }
    }
}
