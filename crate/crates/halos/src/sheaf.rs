//! Section and germ rings of the structure sheaf on the spectrum of Z,
//! finite-precision elements of the named completions, adele germs at the
//! trivial point, and the tiny-ball topology criterion.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{factorize, is_prime, ord_p, primes_up_to};
use crate::halo::{halo_cmp, halo_mul, nat_to_halo};
use crate::place::{codomain_halo, evaluate, PlaceDescriptor};
use crate::ring::{rat_int, FpPoly, QPoly, Rat, RingElement, RingId};
use crate::spectra::{domain_membership, RationalDomain, SpehPoint};
use crate::{Error, Result};

/// A completion of a section ring, named rather than constructed: the
/// localization of Z away from m with no further completion, a p-adic
/// integer or field completion, the reals, the rationals with their
/// colimit (discrete) topology, a residue field, or a finite product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingDescriptor {
    LocalizedIntegers(u64),
    PAdicIntegers(u64),
    PAdicField(u64),
    RealField,
    RationalField,
    FiniteField(u64),
    ProductOf(Vec<RingDescriptor>),
}

impl RingDescriptor {
    pub fn validate(&self) -> Result<()> {
        match self {
            RingDescriptor::LocalizedIntegers(m) => {
                if *m == 0 {
                    Err(Error::InvalidDescriptor(
                        "localization away from 0".into(),
                    ))
                } else {
                    Ok(())
                }
            }
            RingDescriptor::PAdicIntegers(p)
            | RingDescriptor::PAdicField(p)
            | RingDescriptor::FiniteField(p) => {
                if is_prime(*p) {
                    Ok(())
                } else {
                    Err(Error::InvalidDescriptor(format!("{p} is not prime")))
                }
            }
            RingDescriptor::RealField | RingDescriptor::RationalField => Ok(()),
            RingDescriptor::ProductOf(factors) => {
                if factors.len() < 2 {
                    return Err(Error::InvalidDescriptor(
                        "products need at least two factors".into(),
                    ));
                }
                for f in factors {
                    if matches!(f, RingDescriptor::ProductOf(_)) {
                        return Err(Error::InvalidDescriptor(
                            "nested product of rings".into(),
                        ));
                    }
                    f.validate()?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::LocalizedIntegers(m) => write!(f, "Z[1/{m}]"),
            RingDescriptor::PAdicIntegers(p) => write!(f, "Z_{p}"),
            RingDescriptor::PAdicField(p) => write!(f, "Q_{p}"),
            RingDescriptor::RealField => write!(f, "R"),
            RingDescriptor::RationalField => write!(f, "Q"),
            RingDescriptor::FiniteField(p) => write!(f, "F_{p}"),
            RingDescriptor::ProductOf(factors) => {
                let parts: Vec<String> = factors.iter().map(|r| r.to_string()).collect();
                write!(f, "{}", parts.join(" x "))
            }
        }
    }
}

/// The ring of sections over a rational domain of the spectrum of Z,
/// recognized by probing membership of the sample points: the trivial and
/// archimedean points, the p-adic and residual points at every prime of
/// the domain's support, and one generic prime as a control.
pub fn sections_on_domain(domain: &RationalDomain) -> Result<RingDescriptor> {
    if domain.ring != RingId::Z {
        return Err(Error::UnrecognizedDomainShape(format!(
            "sections are computed over Z, not {}",
            domain.ring
        )));
    }
    let support = domain_support(domain)?;
    let generic = smallest_prime_outside(&support);
    let member = |place: PlaceDescriptor| -> Result<bool> {
        domain_membership(&SpehPoint::new(place)?, domain)
    };
    let trivial_in = member(PlaceDescriptor::TrivialOn(RingId::Z))?;
    let arch_in = member(PlaceDescriptor::ArchimedeanZ)?;

    if trivial_in {
        // only the nonvanishing loci contain the trivial point, and those
        // contain every point except the residual ones at the support
        if !arch_in {
            return Err(Error::UnrecognizedDomainShape(format!(
                "{domain} contains the trivial point but not the archimedean one"
            )));
        }
        let mut excluded = Vec::new();
        for &p in support.iter().chain(std::iter::once(&generic)) {
            if !member(PlaceDescriptor::PAdicReal(p))? {
                return Err(Error::UnrecognizedDomainShape(format!(
                    "{domain} contains the trivial point but drops |.|_{p}"
                )));
            }
            if !member(PlaceDescriptor::Residual(p))? {
                if p == generic {
                    return Err(Error::UnrecognizedDomainShape(format!(
                        "{domain} drops the residual point of the generic prime {p}"
                    )));
                }
                excluded.push(p);
            }
        }
        let m = excluded.iter().product::<u64>().max(1);
        return Ok(RingDescriptor::LocalizedIntegers(m));
    }

    let mut blocks = Vec::new();
    for &p in &support {
        let real_in = member(PlaceDescriptor::PAdicReal(p))?;
        let residual_in = member(PlaceDescriptor::Residual(p))?;
        match (real_in, residual_in) {
            (true, true) => blocks.push(RingDescriptor::PAdicIntegers(p)),
            (true, false) => blocks.push(RingDescriptor::PAdicField(p)),
            (false, true) => {
                return Err(Error::UnrecognizedDomainShape(format!(
                    "{domain} keeps the residual point at {p} but not |.|_{p}"
                )))
            }
            (false, false) => {}
        }
    }
    if member(PlaceDescriptor::PAdicReal(generic))?
        || member(PlaceDescriptor::Residual(generic))?
    {
        return Err(Error::UnrecognizedDomainShape(format!(
            "{domain} contains points at the generic prime {generic} without the trivial point"
        )));
    }
    if arch_in {
        blocks.push(RingDescriptor::RealField);
    }
    match blocks.len() {
        0 => Err(Error::UnrecognizedDomainShape(format!(
            "{domain} contains none of the sample points"
        ))),
        1 => Ok(blocks.pop().unwrap()),
        _ => Ok(RingDescriptor::ProductOf(blocks)),
    }
}

fn domain_support(domain: &RationalDomain) -> Result<Vec<u64>> {
    let mut primes = Vec::new();
    for elem in domain
        .numerators
        .iter()
        .chain(std::iter::once(&domain.denominator))
    {
        let RingElement::Int(n) = elem else {
            return Err(Error::UnrecognizedDomainShape(
                "non-integer generator in a domain over Z".into(),
            ));
        };
        if n.is_zero() {
            continue;
        }
        let small: u64 = n.abs().to_u64().ok_or_else(|| {
            Error::UnrecognizedDomainShape(format!("support of {n} is out of range"))
        })?;
        for (p, _) in factorize(small)? {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    primes.sort_unstable();
    Ok(primes)
}

fn smallest_prime_outside(support: &[u64]) -> u64 {
    let bound = support.iter().copied().max().unwrap_or(1) + 2;
    primes_up_to(bound * 2 + 3)
        .into_iter()
        .find(|p| !support.contains(p))
        .expect("a prime outside any finite set")
}

/// The stalk of the structure sheaf at a sample point of the spectrum.
/// Residual points carry the full p-adic integers even though their
/// residue field is F_p; the trivial point carries the rationals as the
/// colimit of the section rings over the shrinking nonvanishing loci,
/// with the discrete colimit topology.
pub fn germ_at(x: &SpehPoint) -> Result<RingDescriptor> {
    match &x.canonical_place {
        PlaceDescriptor::Residual(p) => Ok(RingDescriptor::PAdicIntegers(*p)),
        PlaceDescriptor::PAdicReal(p) | PlaceDescriptor::PAdicTrop(p) => {
            Ok(RingDescriptor::PAdicField(*p))
        }
        PlaceDescriptor::ArchimedeanZ => Ok(RingDescriptor::RealField),
        PlaceDescriptor::TrivialOn(RingId::Z) => Ok(RingDescriptor::RationalField),
        other => Err(Error::UnsupportedPlace(format!(
            "no germ table entry for {other}"
        ))),
    }
}

/// An element of a completion, carried to finite precision. Exact rings
/// store a rational outright. The p-adic integers store a residue mod
/// p^k. The p-adic field stores a floating form p^val * unit with the
/// unit's digits known mod p^k; unit = 0 with k > 0 is an exact zero at
/// that precision, and unit = 0 with k = 0 records only the valuation
/// bound (no digits known). The reals store a dyadic interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompletedPayload {
    Exact(Rat),
    PAdic { residue: BigInt, k: u32 },
    PAdicFloat { val: i64, unit: BigInt, k: u32 },
    Dyadic { lo: Rat, hi: Rat },
    Residue(u64),
    Tuple(Vec<CompletedPayload>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletedElement {
    pub ring: RingDescriptor,
    pub payload: CompletedPayload,
}

fn pow_big(p: u64, k: u32) -> BigInt {
    BigInt::from(p).pow(k)
}

fn is_dyadic(q: &Rat) -> bool {
    let mut d = q.denom().abs();
    let two = BigInt::from(2);
    while d.is_even() {
        d /= &two;
    }
    d.is_one()
}

impl CompletedElement {
    pub fn validate(&self) -> Result<()> {
        self.ring.validate()?;
        fn check(ring: &RingDescriptor, payload: &CompletedPayload) -> Result<()> {
            match (ring, payload) {
                (RingDescriptor::LocalizedIntegers(m), CompletedPayload::Exact(q)) => {
                    let mut d = q.denom().abs();
                    // strip the primes of m; anything left is not invertible
                    for (p, _) in factorize(*m)? {
                        let p = BigInt::from(p);
                        while (&d % &p).is_zero() {
                            d /= &p;
                        }
                    }
                    if d.is_one() {
                        Ok(())
                    } else {
                        Err(Error::NotIntegral(format!(
                            "{q} does not lie in Z[1/{m}]"
                        )))
                    }
                }
                (RingDescriptor::RationalField, CompletedPayload::Exact(_)) => Ok(()),
                (RingDescriptor::PAdicIntegers(p), CompletedPayload::PAdic { residue, k }) => {
                    if residue.is_negative() || *residue >= pow_big(*p, *k) {
                        Err(Error::InvalidDescriptor(format!(
                            "residue {residue} out of range mod {p}^{k}"
                        )))
                    } else {
                        Ok(())
                    }
                }
                (
                    RingDescriptor::PAdicField(p),
                    CompletedPayload::PAdicFloat { unit, k, .. },
                ) => {
                    if unit.is_negative() || *unit >= pow_big(*p, *k) {
                        return Err(Error::InvalidDescriptor(format!(
                            "unit digits {unit} out of range mod {p}^{k}"
                        )));
                    }
                    if !unit.is_zero() && (unit % BigInt::from(*p)).is_zero() {
                        return Err(Error::InvalidDescriptor(
                            "unit part divisible by p".into(),
                        ));
                    }
                    Ok(())
                }
                (RingDescriptor::RealField, CompletedPayload::Dyadic { lo, hi }) => {
                    if lo > hi {
                        return Err(Error::InvalidDescriptor(format!(
                            "inverted interval [{lo}, {hi}]"
                        )));
                    }
                    if !is_dyadic(lo) || !is_dyadic(hi) {
                        return Err(Error::InvalidDescriptor(
                            "interval endpoints must be dyadic".into(),
                        ));
                    }
                    Ok(())
                }
                (RingDescriptor::FiniteField(p), CompletedPayload::Residue(r)) => {
                    if r < p {
                        Ok(())
                    } else {
                        Err(Error::InvalidDescriptor(format!(
                            "residue {r} out of range mod {p}"
                        )))
                    }
                }
                (RingDescriptor::ProductOf(factors), CompletedPayload::Tuple(parts)) => {
                    if factors.len() != parts.len() {
                        return Err(Error::InvalidDescriptor(
                            "tuple length does not match the product".into(),
                        ));
                    }
                    for (f, part) in factors.iter().zip(parts) {
                        check(f, part)?;
                    }
                    Ok(())
                }
                (ring, _) => Err(Error::InvalidDescriptor(format!(
                    "payload shape does not match {ring}"
                ))),
            }
        }
        check(&self.ring, &self.payload)
    }
}

impl fmt::Display for CompletedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn payload(pl: &CompletedPayload, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match pl {
                CompletedPayload::Exact(q) => write!(f, "{q}"),
                CompletedPayload::PAdic { residue, k } => {
                    write!(f, "{residue} (mod ^{k})")
                }
                CompletedPayload::PAdicFloat { val, unit, k } => {
                    write!(f, "p^{val} * {unit} (unit mod ^{k})")
                }
                CompletedPayload::Dyadic { lo, hi } => write!(f, "[{lo}, {hi}]"),
                CompletedPayload::Residue(r) => write!(f, "{r}"),
                CompletedPayload::Tuple(parts) => {
                    write!(f, "(")?;
                    for (i, part) in parts.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        payload(part, f)?;
                    }
                    write!(f, ")")
                }
            }
        }
        payload(&self.payload, f)?;
        write!(f, " in {}", self.ring)
    }
}

fn mod_inverse(a: &BigInt, modulus: &BigInt) -> Result<BigInt> {
    let gcd = a.extended_gcd(modulus);
    if !gcd.gcd.is_one() {
        return Err(Error::NotIntegral(format!(
            "{a} is not invertible mod {modulus}"
        )));
    }
    Ok(gcd.x.mod_floor(modulus))
}

/// Image of a rational under the natural map to the named completion,
/// truncated to precision k. Exact targets ignore k; the reals return the
/// dyadic interval of width 2^-k containing the argument.
pub fn completion_map(q: &Rat, target: &RingDescriptor, k: u32) -> Result<CompletedElement> {
    target.validate()?;
    let payload = match target {
        RingDescriptor::LocalizedIntegers(_) | RingDescriptor::RationalField => {
            let elem = CompletedElement {
                ring: target.clone(),
                payload: CompletedPayload::Exact(q.clone()),
            };
            elem.validate()?;
            return Ok(elem);
        }
        RingDescriptor::PAdicIntegers(p) => {
            let modulus = pow_big(*p, k);
            if (q.denom() % BigInt::from(*p)).is_zero() {
                return Err(Error::NotIntegral(format!(
                    "{q} has a {p}-adic pole, not an integer of Z_{p}"
                )));
            }
            let residue =
                (q.numer().mod_floor(&modulus) * mod_inverse(q.denom(), &modulus)?).mod_floor(&modulus);
            CompletedPayload::PAdic { residue, k }
        }
        RingDescriptor::PAdicField(p) => {
            if q.is_zero() {
                CompletedPayload::PAdicFloat {
                    val: 0,
                    unit: BigInt::zero(),
                    k,
                }
            } else {
                let vn = ord_p(q.numer(), *p) as i64;
                let vd = ord_p(q.denom(), *p) as i64;
                let val = vn - vd;
                let pk = pow_big(*p, vn as u32);
                let dk = pow_big(*p, vd as u32);
                let n = q.numer() / pk;
                let d = q.denom() / dk;
                let modulus = pow_big(*p, k);
                let unit =
                    (n.mod_floor(&modulus) * mod_inverse(&d, &modulus)?).mod_floor(&modulus);
                CompletedPayload::PAdicFloat { val, unit, k }
            }
        }
        RingDescriptor::RealField => {
            let scale = Rat::from_integer(pow_big(2, k));
            let lo = (q * &scale).floor() / &scale;
            let hi = &lo + rat_int(1) / &scale;
            CompletedPayload::Dyadic { lo, hi }
        }
        RingDescriptor::FiniteField(_) => {
            return Err(Error::InvalidDescriptor(
                "finite fields are residue rings, not completion targets".into(),
            ))
        }
        RingDescriptor::ProductOf(factors) => {
            let mut parts = Vec::with_capacity(factors.len());
            for f in factors {
                parts.push(completion_map(q, f, k)?.payload);
            }
            CompletedPayload::Tuple(parts)
        }
    };
    let elem = CompletedElement {
        ring: target.clone(),
        payload,
    };
    elem.validate()?;
    Ok(elem)
}

fn truncate_unit(unit: &BigInt, p: u64, k: u32) -> BigInt {
    unit.mod_floor(&pow_big(p, k))
}

enum PairOp {
    Add,
    Mul,
}

fn combine(ring: &RingDescriptor, x: &CompletedPayload, y: &CompletedPayload, op: &PairOp) -> Result<CompletedPayload> {
    match (ring, x, y) {
        (
            RingDescriptor::LocalizedIntegers(_) | RingDescriptor::RationalField,
            CompletedPayload::Exact(a),
            CompletedPayload::Exact(b),
        ) => Ok(CompletedPayload::Exact(match op {
            PairOp::Add => a + b,
            PairOp::Mul => a * b,
        })),
        (
            RingDescriptor::PAdicIntegers(p),
            CompletedPayload::PAdic { residue: rx, k: kx },
            CompletedPayload::PAdic { residue: ry, k: ky },
        ) => {
            let k = (*kx).min(*ky);
            let modulus = pow_big(*p, k);
            let combined = match op {
                PairOp::Add => rx + ry,
                PairOp::Mul => rx * ry,
            };
            Ok(CompletedPayload::PAdic {
                residue: combined.mod_floor(&modulus),
                k,
            })
        }
        (
            RingDescriptor::PAdicField(p),
            CompletedPayload::PAdicFloat { val: vx, unit: ux, k: kx },
            CompletedPayload::PAdicFloat { val: vy, unit: uy, k: ky },
        ) => Ok(padic_float_combine(*p, (*vx, ux, *kx), (*vy, uy, *ky), op)),
        (
            RingDescriptor::RealField,
            CompletedPayload::Dyadic { lo: lx, hi: hx },
            CompletedPayload::Dyadic { lo: ly, hi: hy },
        ) => Ok(match op {
            PairOp::Add => CompletedPayload::Dyadic {
                lo: lx + ly,
                hi: hx + hy,
            },
            PairOp::Mul => {
                let corners = [lx * ly, lx * hy, hx * ly, hx * hy];
                CompletedPayload::Dyadic {
                    lo: corners.iter().min().unwrap().clone(),
                    hi: corners.iter().max().unwrap().clone(),
                }
            }
        }),
        (
            RingDescriptor::FiniteField(p),
            CompletedPayload::Residue(rx),
            CompletedPayload::Residue(ry),
        ) => Ok(CompletedPayload::Residue(match op {
            PairOp::Add => (rx + ry) % p,
            PairOp::Mul => (rx * ry) % p,
        })),
        (
            RingDescriptor::ProductOf(factors),
            CompletedPayload::Tuple(xs),
            CompletedPayload::Tuple(ys),
        ) => {
            let mut parts = Vec::with_capacity(factors.len());
            for ((f, a), b) in factors.iter().zip(xs).zip(ys) {
                parts.push(combine(f, a, b, op)?);
            }
            Ok(CompletedPayload::Tuple(parts))
        }
        _ => Err(Error::InvalidDescriptor(
            "payload shape does not match the ring".into(),
        )),
    }
}

/// Floating p-adic arithmetic. Addition aligns the operands at the lower
/// valuation and renormalizes: cancellation raises the valuation and the
/// surviving digits are only known to the precision the operands shared
/// in absolute terms, so the result precision can drop below the minimum
/// rule. Multiplication adds valuations and multiplies units.
fn padic_float_combine(
    p: u64,
    (vx, ux, kx): (i64, &BigInt, u32),
    (vy, uy, ky): (i64, &BigInt, u32),
    op: &PairOp,
) -> CompletedPayload {
    let k = kx.min(ky);
    let x_zero = ux.is_zero() && kx > 0;
    let y_zero = uy.is_zero() && ky > 0;
    let x_unknown = kx == 0;
    let y_unknown = ky == 0;
    match op {
        PairOp::Mul => {
            if x_zero || y_zero {
                return CompletedPayload::PAdicFloat {
                    val: 0,
                    unit: BigInt::zero(),
                    k: 1.max(k),
                };
            }
            if x_unknown || y_unknown {
                return CompletedPayload::PAdicFloat {
                    val: vx + vy,
                    unit: BigInt::zero(),
                    k: 0,
                };
            }
            CompletedPayload::PAdicFloat {
                val: vx + vy,
                unit: truncate_unit(&(ux * uy), p, k),
                k,
            }
        }
        PairOp::Add => {
            if x_zero {
                return CompletedPayload::PAdicFloat {
                    val: vy,
                    unit: truncate_unit(uy, p, k),
                    k,
                };
            }
            if y_zero {
                return CompletedPayload::PAdicFloat {
                    val: vx,
                    unit: truncate_unit(ux, p, k),
                    k,
                };
            }
            if x_unknown || y_unknown {
                return CompletedPayload::PAdicFloat {
                    val: vx.min(vy),
                    unit: BigInt::zero(),
                    k: 0,
                };
            }
            let v = vx.min(vy);
            // digits of the sum are valid up to the lower absolute cutoff
            let abs_room = (vx + kx as i64).min(vy + ky as i64) - v;
            let room = abs_room as u32;
            let modulus = pow_big(p, room);
            let shifted = ux * pow_big(p, (vx - v) as u32) + uy * pow_big(p, (vy - v) as u32);
            let digits = shifted.mod_floor(&modulus);
            if digits.is_zero() {
                // all shared digits canceled: the sum is 0 mod p^(v + room),
                // which degrades to a bare valuation bound when that
                // absolute cutoff is not positive
                let abs = v + room as i64;
                if abs > 0 {
                    return CompletedPayload::PAdicFloat {
                        val: 0,
                        unit: BigInt::zero(),
                        k: abs as u32,
                    };
                }
                return CompletedPayload::PAdicFloat {
                    val: abs,
                    unit: BigInt::zero(),
                    k: 0,
                };
            }
            let w = ord_p(&digits, p) as u32;
            let k_res = (room - w).min(k);
            CompletedPayload::PAdicFloat {
                val: v + w as i64,
                unit: truncate_unit(&(digits / pow_big(p, w)), p, k_res),
                k: k_res,
            }
        }
    }
}

fn completed_combine(
    x: &CompletedElement,
    y: &CompletedElement,
    op: PairOp,
) -> Result<CompletedElement> {
    if x.ring != y.ring {
        return Err(Error::MixedRings(format!("{} vs {}", x.ring, y.ring)));
    }
    let elem = CompletedElement {
        ring: x.ring.clone(),
        payload: combine(&x.ring, &x.payload, &y.payload, &op)?,
    };
    elem.validate()?;
    Ok(elem)
}

pub fn completed_add(x: &CompletedElement, y: &CompletedElement) -> Result<CompletedElement> {
    completed_combine(x, y, PairOp::Add)
}

pub fn completed_mul(x: &CompletedElement, y: &CompletedElement) -> Result<CompletedElement> {
    completed_combine(x, y, PairOp::Mul)
}

/// A germ of the adele sheaf at the trivial point: explicit p-adic field
/// components at finitely many exceptional primes, a real component, and
/// an implicit tail of p-adic integers at every other prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdeleElement {
    pub exceptional: BTreeMap<u64, CompletedElement>,
    pub real: CompletedElement,
}

impl AdeleElement {
    pub fn validate(&self) -> Result<()> {
        for (p, component) in &self.exceptional {
            if component.ring != RingDescriptor::PAdicField(*p) {
                return Err(Error::MixedRings(format!(
                    "component at {p} lives in {}",
                    component.ring
                )));
            }
            component.validate()?;
        }
        if self.real.ring != RingDescriptor::RealField {
            return Err(Error::MixedRings(format!(
                "real component lives in {}",
                self.real.ring
            )));
        }
        self.real.validate()
    }
}

impl fmt::Display for AdeleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (p, component) in &self.exceptional {
            write!(f, "{p}: {component}, ")?;
        }
        write!(f, "oo: {}, integral elsewhere)", self.real)
    }
}

pub fn adele_assemble(
    exceptional: BTreeMap<u64, CompletedElement>,
    real: CompletedElement,
) -> Result<AdeleElement> {
    let adele = AdeleElement { exceptional, real };
    adele.validate()?;
    Ok(adele)
}

/// Diagonal image of a rational: explicit components at the primes of the
/// denominator and at any extra requested primes, the dyadic image at the
/// real place, and the integral tail elsewhere.
pub fn adele_diagonal(q: &Rat, k: u32, extra_support: &[u64]) -> Result<AdeleElement> {
    let mut support: Vec<u64> = extra_support.to_vec();
    let den: u64 = q.denom().abs().to_u64().ok_or_else(|| {
        Error::FactorizationRequired(format!("denominator of {q} is out of range"))
    })?;
    for (p, _) in factorize(den)? {
        support.push(p);
    }
    support.sort_unstable();
    support.dedup();
    let mut exceptional = BTreeMap::new();
    for p in support {
        if !is_prime(p) {
            return Err(Error::InvalidDescriptor(format!("{p} is not prime")));
        }
        exceptional.insert(p, completion_map(q, &RingDescriptor::PAdicField(p), k)?);
    }
    let real = completion_map(q, &RingDescriptor::RealField, k)?;
    adele_assemble(exceptional, real)
}

/// Componentwise ring ops. At a prime listed by only one operand the other
/// component is an unspecified p-adic integer: for sums the fractional
/// digits of the listed component survive to their own precision, for
/// products only the valuation bound is retained, and components that
/// stay integral drop back into the tail.
fn adele_combine(x: &AdeleElement, y: &AdeleElement, op: PairOp) -> Result<AdeleElement> {
    let real = match op {
        PairOp::Add => completed_add(&x.real, &y.real)?,
        PairOp::Mul => completed_mul(&x.real, &y.real)?,
    };
    let mut exceptional = BTreeMap::new();
    let primes: Vec<u64> = x
        .exceptional
        .keys()
        .chain(y.exceptional.keys())
        .copied()
        .collect();
    for p in primes {
        let combined = match (x.exceptional.get(&p), y.exceptional.get(&p)) {
            (Some(a), Some(b)) => match op {
                PairOp::Add => completed_add(a, b)?,
                PairOp::Mul => completed_mul(a, b)?,
            },
            (Some(a), None) | (None, Some(a)) => {
                let CompletedPayload::PAdicFloat { val, unit, k } = &a.payload else {
                    return Err(Error::InvalidDescriptor(
                        "adele component is not a p-adic field element".into(),
                    ));
                };
                let payload = one_sided(p, *val, unit, *k, &op);
                match payload {
                    None => continue,
                    Some(payload) => CompletedElement {
                        ring: a.ring.clone(),
                        payload,
                    },
                }
            }
            (None, None) => unreachable!(),
        };
        if component_is_integral(&combined.payload) {
            continue;
        }
        exceptional.insert(p, combined);
    }
    adele_assemble(exceptional, real)
}

fn component_is_integral(payload: &CompletedPayload) -> bool {
    match payload {
        CompletedPayload::PAdicFloat { val, unit, k } => {
            (unit.is_zero() && *k > 0) || *val >= 0
        }
        _ => false,
    }
}

fn one_sided(p: u64, val: i64, unit: &BigInt, k: u32, op: &PairOp) -> Option<CompletedPayload> {
    let zero = unit.is_zero() && k > 0;
    if zero || val >= 0 {
        // integral (or exactly zero) against an integral tail stays integral
        return None;
    }
    match op {
        PairOp::Add => {
            if k == 0 {
                return Some(CompletedPayload::PAdicFloat {
                    val: val.min(0),
                    unit: BigInt::zero(),
                    k: 0,
                });
            }
            // only the digits below the integer part are still certain
            let known = k.min((-val) as u32);
            Some(CompletedPayload::PAdicFloat {
                val,
                unit: truncate_unit(unit, p, known),
                k: known,
            })
        }
        PairOp::Mul => Some(CompletedPayload::PAdicFloat {
            val,
            unit: BigInt::zero(),
            k: 0,
        }),
    }
}

pub fn adele_add(x: &AdeleElement, y: &AdeleElement) -> Result<AdeleElement> {
    adele_combine(x, y, PairOp::Add)
}

pub fn adele_mul(x: &AdeleElement, y: &AdeleElement) -> Result<AdeleElement> {
    adele_combine(x, y, PairOp::Mul)
}

/// Which disjunct of the tiny-ball criterion a place satisfies: either
/// a fraction u with |u| exceeding 1 + 1 of the codomain halo, or balls
/// so sparse that every value below 1 is already 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TinyBallDisjunct {
    BigUnit {
        numerator: RingElement,
        denominator: RingElement,
    },
    DiscreteBalls,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TinyBallReport {
    pub place: PlaceDescriptor,
    pub disjunct: TinyBallDisjunct,
    pub induces_ring_topology: bool,
}

fn padic_witness_denominator(p: u64) -> u64 {
    // smallest power of p that beats 2 in the real-valued case; in the
    // tropical halos any positive power works
    if p == 2 {
        4
    } else {
        p
    }
}

/// Locates the disjunct and verifies it on the spot: for a big unit,
/// |num| > (1+1) * |den| in the codomain halo; for discrete balls, every
/// probe value is 0 or at least 1. Composite places are genuinely neither
/// multiplicative nor a fraction field factorization, so no verdict.
pub fn tiny_ball_report(place: &PlaceDescriptor) -> Result<TinyBallReport> {
    place.validate()?;
    if !place.is_multiplicative() {
        return Err(Error::Inconclusive(format!(
            "{place} is not multiplicative, the criterion does not apply"
        )));
    }
    let domain = place.domain();
    let witness: Option<(RingElement, RingElement)> = match place {
        PlaceDescriptor::TrivialOn(_)
        | PlaceDescriptor::Residual(_)
        | PlaceDescriptor::FpResidual { .. } => None,
        PlaceDescriptor::PAdicTrop(p) | PlaceDescriptor::PAdicReal(p) => Some((
            RingElement::int(1),
            RingElement::int(padic_witness_denominator(*p) as i64),
        )),
        PlaceDescriptor::ArchimedeanZ => Some((RingElement::int(3), RingElement::int(1))),
        PlaceDescriptor::FpPAdic { p, modulus } => Some((
            RingElement::FpX(FpPoly::one(*p)),
            RingElement::FpX(modulus.clone()),
        )),
        PlaceDescriptor::GaussPoint { p, .. }
        | PlaceDescriptor::HKImmediate { p, .. }
        | PlaceDescriptor::HKCase4 { p, .. } => Some((
            RingElement::QX(QPoly::constant(rat_int(1))),
            RingElement::QX(QPoly::constant(rat_int(padic_witness_denominator(*p) as i64))),
        )),
        PlaceDescriptor::ArchEval(_)
        | PlaceDescriptor::ArchInfinitesimal(_)
        | PlaceDescriptor::ArchInfinity => Some((
            RingElement::QX(QPoly::constant(rat_int(3))),
            RingElement::QX(QPoly::constant(rat_int(1))),
        )),
        PlaceDescriptor::CompositeAdic(_) | PlaceDescriptor::CompositeResidual(_) => {
            unreachable!("screened above")
        }
    };
    let disjunct = match witness {
        Some((num, den)) => {
            let v_num = evaluate(place, &num)?;
            let v_den = evaluate(place, &den)?;
            let two = nat_to_halo(&codomain_halo(place), &BigUint::from(2u32));
            let bound = halo_mul(&two, &v_den)?;
            if halo_cmp(&v_num, &bound)? != std::cmp::Ordering::Greater {
                return Err(Error::Inconclusive(format!(
                    "witness |{num}|/|{den}| fails to exceed 2 at {place}"
                )));
            }
            TinyBallDisjunct::BigUnit {
                numerator: num,
                denominator: den,
            }
        }
        None => {
            let one = crate::halo::HaloValue::one(&codomain_halo(place));
            for n in 2..40i64 {
                let v = evaluate(place, &RingElement::from_small_int(domain, n)?)?;
                if !v.is_zero() && halo_cmp(&v, &one)? == std::cmp::Ordering::Less {
                    return Err(Error::Inconclusive(format!(
                        "a value strictly between 0 and 1 at {place}"
                    )));
                }
            }
            TinyBallDisjunct::DiscreteBalls
        }
    };
    Ok(TinyBallReport {
        place: place.clone(),
        disjunct,
        induces_ring_topology: true,
    })
}
