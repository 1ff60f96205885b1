//! JSON encoding of every public descriptor and value, and the reverse
//! parsers. Serialization is total; parsing validates and returns the same
//! errors the constructors do. serde_json maps are BTree-backed, so
//! emitted objects have sorted keys and byte-identical reserialization.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use serde_json::{json, Map, Value};

use crate::group::{ConvexSubgroup, GroupElement, OrderedGroupDescriptor};
use crate::halo::surd::Surd;
use crate::halo::{HaloDescriptor, HaloValue, Payload, UnitPayload};
use crate::line::{
    AffinePointDescriptor, AnalyticityReason, AnalyticityVerdict, FilterCaseReport, FilterData,
};
use crate::place::classify::ZClassification;
use crate::place::{Disc, DiscKind, IdealDescriptor, MajorSubset, PlaceDescriptor};
use crate::ring::{fmt_rat, parse_rat, FpPoly, QPoly, Qi, Rat, RingElement, RingId};
use crate::sheaf::{
    AdeleElement, CompletedElement, CompletedPayload, RingDescriptor, TinyBallDisjunct,
    TinyBallReport,
};
use crate::spectra::{BerkovichPointSpecZ, RationalDomain, SpehPoint};
use crate::{Error, Result};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::ParseError(msg.into())
}

fn obj(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| parse_err(format!("expected an object, got {v}")))
}

fn field<'a>(m: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    m.get(key)
        .ok_or_else(|| parse_err(format!("missing field \"{key}\"")))
}

fn str_field<'a>(m: &'a Map<String, Value>, key: &str) -> Result<&'a str> {
    field(m, key)?
        .as_str()
        .ok_or_else(|| parse_err(format!("field \"{key}\" is not a string")))
}

fn u64_field(m: &Map<String, Value>, key: &str) -> Result<u64> {
    field(m, key)?
        .as_u64()
        .ok_or_else(|| parse_err(format!("field \"{key}\" is not an unsigned integer")))
}

fn arr(v: &Value) -> Result<&Vec<Value>> {
    v.as_array()
        .ok_or_else(|| parse_err(format!("expected an array, got {v}")))
}

// ---- rationals and integers ----

pub fn rational_to_json(q: &Rat) -> Value {
    Value::String(fmt_rat(q))
}

pub fn rational_from_json(v: &Value) -> Result<Rat> {
    let s = v
        .as_str()
        .ok_or_else(|| parse_err(format!("expected a rational string, got {v}")))?;
    parse_rat(s)
}

fn rat_field(m: &Map<String, Value>, key: &str) -> Result<Rat> {
    rational_from_json(field(m, key)?)
}

fn bigint_from_json(v: &Value) -> Result<BigInt> {
    let s = v
        .as_str()
        .ok_or_else(|| parse_err(format!("expected an integer string, got {v}")))?;
    BigInt::from_str(s).map_err(|_| parse_err(format!("\"{s}\" is not an integer")))
}

fn rat_list(v: &Value) -> Result<Vec<Rat>> {
    arr(v)?.iter().map(rational_from_json).collect()
}

fn rat_list_json(qs: &[Rat]) -> Value {
    Value::Array(qs.iter().map(rational_to_json).collect())
}

// ---- rings and their elements ----

pub fn ring_id_to_json(ring: RingId) -> Value {
    match ring {
        RingId::Z => json!("Z"),
        RingId::Q => json!("Q"),
        RingId::ZX => json!("ZX"),
        RingId::QX => json!("QX"),
        RingId::QXFrac => json!("QXFrac"),
        RingId::FpX(p) => json!({ "FpX": p }),
    }
}

pub fn ring_id_from_json(v: &Value) -> Result<RingId> {
    if let Some(s) = v.as_str() {
        return match s {
            "Z" => Ok(RingId::Z),
            "Q" => Ok(RingId::Q),
            "ZX" => Ok(RingId::ZX),
            "QX" => Ok(RingId::QX),
            "QXFrac" => Ok(RingId::QXFrac),
            other => Err(parse_err(format!("unknown ring \"{other}\""))),
        };
    }
    let m = obj(v)?;
    Ok(RingId::FpX(u64_field(m, "FpX")?))
}

pub fn ring_element_to_json(elem: &RingElement) -> Value {
    match elem {
        RingElement::Int(n) => json!({ "ring": "Z", "n": n.to_string() }),
        RingElement::Rat(q) => json!({ "ring": "Q", "q": fmt_rat(q) }),
        RingElement::ZX(coeffs) => json!({
            "ring": "ZX",
            "coeffs": coeffs.iter().map(|c| Value::String(c.to_string())).collect::<Vec<_>>(),
        }),
        RingElement::QX(p) => json!({ "ring": "QX", "coeffs": rat_list_json(p.coeffs()) }),
        RingElement::FpX(p) => json!({
            "ring": "FpX",
            "p": p.p,
            "coeffs": p.coeffs().iter().map(|c| Value::String(c.to_string())).collect::<Vec<_>>(),
        }),
        RingElement::QXFrac { num, den } => json!({
            "ring": "QXFrac",
            "num": rat_list_json(num.coeffs()),
            "den": rat_list_json(den.coeffs()),
        }),
    }
}

fn u64_coeff_list(v: &Value) -> Result<Vec<u64>> {
    arr(v)?
        .iter()
        .map(|c| {
            c.as_str()
                .and_then(|s| s.parse::<u64>().ok())
                .or_else(|| c.as_u64())
                .ok_or_else(|| parse_err(format!("bad coefficient {c}")))
        })
        .collect()
}

pub fn ring_element_from_json(v: &Value) -> Result<RingElement> {
    let m = obj(v)?;
    match str_field(m, "ring")? {
        "Z" => Ok(RingElement::Int(bigint_from_json(field(m, "n")?)?)),
        "Q" => Ok(RingElement::Rat(rat_field(m, "q")?)),
        "ZX" => {
            let coeffs: Result<Vec<BigInt>> =
                arr(field(m, "coeffs")?)?.iter().map(bigint_from_json).collect();
            Ok(RingElement::zx_big(coeffs?))
        }
        "QX" => Ok(RingElement::QX(QPoly::new(rat_list(field(m, "coeffs")?)?))),
        "FpX" => {
            let p = u64_field(m, "p")?;
            let coeffs = u64_coeff_list(field(m, "coeffs")?)?;
            Ok(RingElement::FpX(FpPoly::new(p, coeffs)?))
        }
        "QXFrac" => {
            let num = QPoly::new(rat_list(field(m, "num")?)?);
            let den = QPoly::new(rat_list(field(m, "den")?)?);
            RingElement::qx_frac(num, den)
        }
        other => Err(parse_err(format!("unknown element ring \"{other}\""))),
    }
}

// ---- ordered groups ----

pub fn group_to_json(g: &OrderedGroupDescriptor) -> Value {
    json!({ "rank": g.rank(), "labels": g.labels() })
}

pub fn group_from_json(v: &Value) -> Result<OrderedGroupDescriptor> {
    let m = obj(v)?;
    let labels: Vec<String> = arr(field(m, "labels")?)?
        .iter()
        .map(|l| {
            l.as_str()
                .map(str::to_owned)
                .ok_or_else(|| parse_err("labels must be strings"))
        })
        .collect::<Result<_>>()?;
    let rank = u64_field(m, "rank")? as usize;
    if rank != labels.len() {
        return Err(parse_err(format!(
            "rank {rank} with {} labels",
            labels.len()
        )));
    }
    Ok(OrderedGroupDescriptor::new(labels))
}

pub fn group_element_to_json(e: &GroupElement) -> Value {
    rat_list_json(&e.exponents)
}

pub fn group_element_from_json(
    group: &OrderedGroupDescriptor,
    v: &Value,
) -> Result<GroupElement> {
    GroupElement::new(group, rat_list(v)?)
}

pub fn subgroup_to_json(s: &ConvexSubgroup) -> Value {
    json!({ "group": group_to_json(&s.group), "cutIndex": s.cut_index })
}

pub fn subgroup_from_json(v: &Value) -> Result<ConvexSubgroup> {
    let m = obj(v)?;
    let group = group_from_json(field(m, "group")?)?;
    let cut_index = u64_field(m, "cutIndex")? as usize;
    if cut_index > group.rank() {
        return Err(parse_err(format!(
            "cut index {cut_index} in a rank {} group",
            group.rank()
        )));
    }
    Ok(ConvexSubgroup { group, cut_index })
}

// ---- halos and their values ----

pub fn halo_to_json(h: &HaloDescriptor) -> Value {
    match h {
        HaloDescriptor::Trivial => json!("trivial"),
        HaloDescriptor::NonnegRationals => json!("nonneg_rationals"),
        HaloDescriptor::NonnegSurds => json!("nonneg_surds"),
        HaloDescriptor::TropicalOf(g) => json!({ "tropical": group_to_json(g) }),
        HaloDescriptor::LexProduct(a, b) => {
            json!({ "lex_product": [halo_to_json(a), halo_to_json(b)] })
        }
    }
}

pub fn halo_from_json(v: &Value) -> Result<HaloDescriptor> {
    if let Some(s) = v.as_str() {
        return match s {
            "trivial" => Ok(HaloDescriptor::Trivial),
            "nonneg_rationals" => Ok(HaloDescriptor::NonnegRationals),
            "nonneg_surds" => Ok(HaloDescriptor::NonnegSurds),
            other => Err(parse_err(format!("unknown halo \"{other}\""))),
        };
    }
    let m = obj(v)?;
    if let Some(g) = m.get("tropical") {
        return Ok(HaloDescriptor::TropicalOf(group_from_json(g)?));
    }
    if let Some(pair) = m.get("lex_product") {
        let parts = arr(pair)?;
        if parts.len() != 2 {
            return Err(parse_err("lex_product takes exactly two halos"));
        }
        return Ok(HaloDescriptor::lex(
            halo_from_json(&parts[0])?,
            halo_from_json(&parts[1])?,
        ));
    }
    Err(parse_err(format!("unknown halo shape {v}")))
}

fn surd_to_json(s: &Surd) -> Value {
    Value::Array(
        s.terms()
            .map(|(d, c)| json!([fmt_rat(c), d.to_string()]))
            .collect(),
    )
}

fn surd_from_json(v: &Value) -> Result<Surd> {
    let mut total = Surd::zero();
    for term in arr(v)? {
        let pair = arr(term)?;
        if pair.len() != 2 {
            return Err(parse_err("surd terms are [coefficient, radicand] pairs"));
        }
        let c = rational_from_json(&pair[0])?;
        let d = pair[1]
            .as_str()
            .and_then(|s| BigUint::from_str(s).ok())
            .ok_or_else(|| parse_err(format!("bad radicand {}", pair[1])))?;
        total = total.add(&Surd::term(c, &d)?);
    }
    Ok(total)
}

fn unit_to_json(u: &UnitPayload) -> Value {
    match u {
        UnitPayload::One => json!("1"),
        UnitPayload::Group(exps) => rat_list_json(exps),
        UnitPayload::Rational(q) => rational_to_json(q),
        UnitPayload::Surd(s) => surd_to_json(s),
        UnitPayload::Lex(a, b) => json!({ "lex": [unit_to_json(a), unit_to_json(b)] }),
    }
}

fn unit_from_json(h: &HaloDescriptor, v: &Value) -> Result<UnitPayload> {
    match h {
        HaloDescriptor::Trivial => {
            if v.as_str() == Some("1") {
                Ok(UnitPayload::One)
            } else {
                Err(parse_err(format!("the trivial halo has one unit, got {v}")))
            }
        }
        HaloDescriptor::NonnegRationals => Ok(UnitPayload::Rational(rational_from_json(v)?)),
        HaloDescriptor::NonnegSurds => Ok(UnitPayload::Surd(surd_from_json(v)?)),
        HaloDescriptor::TropicalOf(_) => Ok(UnitPayload::Group(rat_list(v)?)),
        HaloDescriptor::LexProduct(a, b) => {
            let m = obj(v)?;
            let parts = arr(field(m, "lex")?)?;
            if parts.len() != 2 {
                return Err(parse_err("lex units take exactly two components"));
            }
            Ok(UnitPayload::Lex(
                Box::new(unit_from_json(a, &parts[0])?),
                Box::new(unit_from_json(b, &parts[1])?),
            ))
        }
    }
}

pub fn halo_value_to_json(v: &HaloValue) -> Value {
    let value = match &v.payload {
        Payload::Zero => json!("zero"),
        Payload::Unit(u) => json!({ "unit": unit_to_json(u) }),
    };
    json!({ "halo": halo_to_json(&v.halo), "value": value })
}

/// The bare payload half of a halo value: "zero", or the unit encoding
/// alone. The command-line evaluator reports values this way; the halo is
/// implied by the place that produced them.
pub fn halo_value_payload_json(v: &HaloValue) -> Value {
    match &v.payload {
        Payload::Zero => json!("zero"),
        Payload::Unit(u) => unit_to_json(u),
    }
}

pub fn halo_value_from_json(v: &Value) -> Result<HaloValue> {
    let m = obj(v)?;
    let halo = halo_from_json(field(m, "halo")?)?;
    let value = field(m, "value")?;
    if value.as_str() == Some("zero") {
        return Ok(HaloValue::zero(&halo));
    }
    let unit = unit_from_json(&halo, field(obj(value)?, "unit")?)?;
    HaloValue::new(&halo, Payload::Unit(unit))
}

// ---- places ----

fn qi_fields(a: &Qi) -> (Value, Value) {
    (rational_to_json(&a.re), rational_to_json(&a.im))
}

fn qi_from(m: &Map<String, Value>) -> Result<Qi> {
    Ok(Qi::new(rat_field(m, "re")?, rat_field(m, "im")?))
}

fn disc_to_json(d: &Disc) -> Value {
    json!({
        "center": fmt_rat(&d.center),
        "radiusExp": fmt_rat(&d.radius_exp),
        "kind": match d.kind { DiscKind::Closed => "closed", DiscKind::Open => "open" },
    })
}

fn disc_from_json(v: &Value) -> Result<Disc> {
    let m = obj(v)?;
    let kind = match str_field(m, "kind")? {
        "closed" => DiscKind::Closed,
        "open" => DiscKind::Open,
        other => return Err(parse_err(format!("unknown disc kind \"{other}\""))),
    };
    Ok(Disc {
        center: rat_field(m, "center")?,
        radius_exp: rat_field(m, "radiusExp")?,
        kind,
    })
}

fn major_to_json(major: &MajorSubset) -> Value {
    match major {
        MajorSubset::Empty => json!("empty"),
        MajorSubset::All => json!("all"),
        MajorSubset::CutAt(b) => json!({ "cutAt": fmt_rat(b) }),
    }
}

fn major_from_json(v: &Value) -> Result<MajorSubset> {
    match v.as_str() {
        Some("empty") => Ok(MajorSubset::Empty),
        Some("all") => Ok(MajorSubset::All),
        Some(other) => Err(parse_err(format!("unknown major subset \"{other}\""))),
        None => Ok(MajorSubset::CutAt(rat_field(obj(v)?, "cutAt")?)),
    }
}

fn poly_modulus_json(p: &FpPoly) -> Value {
    Value::Array(
        p.coeffs()
            .iter()
            .map(|c| Value::String(c.to_string()))
            .collect(),
    )
}

pub fn place_to_json(place: &PlaceDescriptor) -> Value {
    match place {
        PlaceDescriptor::TrivialOn(ring) => {
            json!({ "place": "trivial", "ring": ring_id_to_json(*ring) })
        }
        PlaceDescriptor::PAdicTrop(p) => json!({ "place": "padic_trop", "p": p }),
        PlaceDescriptor::PAdicReal(p) => json!({ "place": "padic_real", "p": p }),
        PlaceDescriptor::ArchimedeanZ => json!({ "place": "archimedean" }),
        PlaceDescriptor::Residual(p) => json!({ "place": "residual", "p": p }),
        PlaceDescriptor::CompositeAdic(m) => json!({ "place": "composite_adic", "m": m }),
        PlaceDescriptor::CompositeResidual(m) => {
            json!({ "place": "composite_residual", "m": m })
        }
        PlaceDescriptor::FpResidual { p, modulus } => json!({
            "place": "fp_residual", "p": p, "modulus": poly_modulus_json(modulus),
        }),
        PlaceDescriptor::FpPAdic { p, modulus } => json!({
            "place": "fp_padic", "p": p, "modulus": poly_modulus_json(modulus),
        }),
        PlaceDescriptor::GaussPoint { p, center, radius_exp } => json!({
            "place": "gauss_point", "p": p,
            "center": fmt_rat(center), "radiusExp": fmt_rat(radius_exp),
        }),
        PlaceDescriptor::HKImmediate { p, discs } => json!({
            "place": "hk_immediate", "p": p,
            "discs": discs.iter().map(disc_to_json).collect::<Vec<_>>(),
        }),
        PlaceDescriptor::HKCase4 { p, center, major } => json!({
            "place": "hk_case4", "p": p,
            "center": fmt_rat(center), "major": major_to_json(major),
        }),
        PlaceDescriptor::ArchEval(a) => {
            let (re, im) = qi_fields(a);
            json!({ "place": "arch_eval", "re": re, "im": im })
        }
        PlaceDescriptor::ArchInfinitesimal(a) => {
            let (re, im) = qi_fields(a);
            json!({ "place": "arch_infinitesimal", "re": re, "im": im })
        }
        PlaceDescriptor::ArchInfinity => json!({ "place": "arch_infinity" }),
    }
}

pub fn place_from_json(v: &Value) -> Result<PlaceDescriptor> {
    let m = obj(v)?;
    let place = match str_field(m, "place")? {
        "trivial" => PlaceDescriptor::TrivialOn(ring_id_from_json(field(m, "ring")?)?),
        "padic_trop" => PlaceDescriptor::PAdicTrop(u64_field(m, "p")?),
        "padic_real" => PlaceDescriptor::PAdicReal(u64_field(m, "p")?),
        "archimedean" => PlaceDescriptor::ArchimedeanZ,
        "residual" => PlaceDescriptor::Residual(u64_field(m, "p")?),
        "composite_adic" => PlaceDescriptor::CompositeAdic(u64_field(m, "m")?),
        "composite_residual" => PlaceDescriptor::CompositeResidual(u64_field(m, "m")?),
        "fp_residual" => PlaceDescriptor::FpResidual {
            p: u64_field(m, "p")?,
            modulus: FpPoly::new(u64_field(m, "p")?, u64_coeff_list(field(m, "modulus")?)?)?,
        },
        "fp_padic" => PlaceDescriptor::FpPAdic {
            p: u64_field(m, "p")?,
            modulus: FpPoly::new(u64_field(m, "p")?, u64_coeff_list(field(m, "modulus")?)?)?,
        },
        "gauss_point" => PlaceDescriptor::GaussPoint {
            p: u64_field(m, "p")?,
            center: rat_field(m, "center")?,
            radius_exp: rat_field(m, "radiusExp")?,
        },
        "hk_immediate" => PlaceDescriptor::HKImmediate {
            p: u64_field(m, "p")?,
            discs: arr(field(m, "discs")?)?
                .iter()
                .map(disc_from_json)
                .collect::<Result<_>>()?,
        },
        "hk_case4" => PlaceDescriptor::HKCase4 {
            p: u64_field(m, "p")?,
            center: rat_field(m, "center")?,
            major: major_from_json(field(m, "major")?)?,
        },
        "arch_eval" => PlaceDescriptor::ArchEval(qi_from(m)?),
        "arch_infinitesimal" => PlaceDescriptor::ArchInfinitesimal(qi_from(m)?),
        "arch_infinity" => PlaceDescriptor::ArchInfinity,
        other => return Err(parse_err(format!("unknown place \"{other}\""))),
    };
    place.validate()?;
    Ok(place)
}

pub fn ideal_to_json(ideal: &IdealDescriptor) -> Value {
    match ideal {
        IdealDescriptor::Zero => json!({ "ideal": "zero" }),
        IdealDescriptor::PrincipalInt(n) => {
            json!({ "ideal": "principal_int", "generator": n.to_string() })
        }
        IdealDescriptor::PrincipalPoly(p) => json!({
            "ideal": "principal_poly", "p": p.p, "generator": poly_modulus_json(p),
        }),
        IdealDescriptor::PrincipalLinear(a) => {
            let (re, im) = qi_fields(a);
            json!({ "ideal": "principal_linear", "re": re, "im": im })
        }
    }
}

// ---- affine points and filters ----

pub fn affine_point_to_json(point: &AffinePointDescriptor) -> Value {
    match point {
        AffinePointDescriptor::TrivialPoint => json!({ "point": "trivial" }),
        AffinePointDescriptor::FpResidualPoint { p, modulus } => json!({
            "point": "fp_residual", "p": p, "modulus": poly_modulus_json(modulus),
        }),
        AffinePointDescriptor::FpPAdicPoint { p, modulus } => json!({
            "point": "fp_padic", "p": p, "modulus": poly_modulus_json(modulus),
        }),
        AffinePointDescriptor::HKType1 { p, point } => json!({
            "point": "hk_type1", "p": p, "at": fmt_rat(point),
        }),
        AffinePointDescriptor::HKType2Gauss { p, center, radius_exp } => json!({
            "point": "hk_type2_gauss", "p": p,
            "center": fmt_rat(center), "radiusExp": fmt_rat(radius_exp),
        }),
        AffinePointDescriptor::HKType3Immediate { p, discs } => json!({
            "point": "hk_type3_immediate", "p": p,
            "discs": discs.iter().map(disc_to_json).collect::<Vec<_>>(),
        }),
        AffinePointDescriptor::HKType4 { p, center, major } => json!({
            "point": "hk_type4", "p": p,
            "center": fmt_rat(center), "major": major_to_json(major),
        }),
        AffinePointDescriptor::ArchEvalPoint(a) => {
            let (re, im) = qi_fields(a);
            json!({ "point": "arch_eval", "re": re, "im": im })
        }
        AffinePointDescriptor::ArchInfPoint(a) => {
            let (re, im) = qi_fields(a);
            json!({ "point": "arch_infinitesimal", "re": re, "im": im })
        }
        AffinePointDescriptor::ArchInfinityPoint => json!({ "point": "arch_infinity" }),
    }
}

pub fn affine_point_from_json(v: &Value) -> Result<AffinePointDescriptor> {
    let m = obj(v)?;
    let point = match str_field(m, "point")? {
        "trivial" => AffinePointDescriptor::TrivialPoint,
        "fp_residual" => AffinePointDescriptor::FpResidualPoint {
            p: u64_field(m, "p")?,
            modulus: FpPoly::new(u64_field(m, "p")?, u64_coeff_list(field(m, "modulus")?)?)?,
        },
        "fp_padic" => AffinePointDescriptor::FpPAdicPoint {
            p: u64_field(m, "p")?,
            modulus: FpPoly::new(u64_field(m, "p")?, u64_coeff_list(field(m, "modulus")?)?)?,
        },
        "hk_type1" => AffinePointDescriptor::HKType1 {
            p: u64_field(m, "p")?,
            point: rat_field(m, "at")?,
        },
        "hk_type2_gauss" => AffinePointDescriptor::HKType2Gauss {
            p: u64_field(m, "p")?,
            center: rat_field(m, "center")?,
            radius_exp: rat_field(m, "radiusExp")?,
        },
        "hk_type3_immediate" => AffinePointDescriptor::HKType3Immediate {
            p: u64_field(m, "p")?,
            discs: arr(field(m, "discs")?)?
                .iter()
                .map(disc_from_json)
                .collect::<Result<_>>()?,
        },
        "hk_type4" => AffinePointDescriptor::HKType4 {
            p: u64_field(m, "p")?,
            center: rat_field(m, "center")?,
            major: major_from_json(field(m, "major")?)?,
        },
        "arch_eval" => AffinePointDescriptor::ArchEvalPoint(qi_from(m)?),
        "arch_infinitesimal" => AffinePointDescriptor::ArchInfPoint(qi_from(m)?),
        "arch_infinity" => AffinePointDescriptor::ArchInfinityPoint,
        other => return Err(parse_err(format!("unknown point \"{other}\""))),
    };
    point.validate()?;
    Ok(point)
}

pub fn filter_case_to_json(report: &FilterCaseReport) -> Value {
    let filter = match &report.filter {
        FilterData::Principal { p, point } => json!({
            "filter": "principal", "p": p, "at": fmt_rat(point),
        }),
        FilterData::ClosedDiscs { p, disc } => json!({
            "filter": "closed_discs", "p": p, "disc": disc_to_json(disc),
        }),
        FilterData::EmptyIntersection { p, discs } => json!({
            "filter": "empty_intersection", "p": p,
            "discs": discs.iter().map(disc_to_json).collect::<Vec<_>>(),
        }),
        FilterData::MajorCut { p, center, major } => json!({
            "filter": "major_cut", "p": p,
            "center": fmt_rat(center), "major": major_to_json(major),
        }),
    };
    json!({ "case": report.case_label(), "data": filter })
}

pub fn analyticity_to_json(verdict: &AnalyticityVerdict) -> Value {
    let reason = match verdict.reason {
        AnalyticityReason::Analytic => "analytic",
        AnalyticityReason::InfinitesimalNbhdOfAlgebraicPoint => {
            "infinitesimal_neighborhood_of_algebraic_point"
        }
        AnalyticityReason::InfinitesimalNbhdOfInfinity => {
            "infinitesimal_neighborhood_of_infinity"
        }
    };
    json!({ "analytic": verdict.analytic, "reason": reason })
}

pub fn classification_to_json(c: &ZClassification) -> Value {
    match c {
        ZClassification::Trivial => json!({ "on_Z": "trivial" }),
        ZClassification::Archimedean => json!({ "on_Z": "archimedean" }),
        ZClassification::PAdic(p) => json!({ "on_Z": "padic", "p": p }),
        ZClassification::ResidualAt(p) => json!({ "on_Z": "residual", "p": p }),
        ZClassification::Inconclusive(reason) => {
            json!({ "on_Z": "inconclusive", "reason": reason })
        }
    }
}

// ---- spectra ----

pub fn speh_point_to_json(x: &SpehPoint) -> Value {
    place_to_json(&x.canonical_place)
}

pub fn speh_point_from_json(v: &Value) -> Result<SpehPoint> {
    SpehPoint::new(place_from_json(v)?)
}

fn domain_element_to_json(elem: &RingElement) -> Value {
    match elem {
        RingElement::Int(n) => Value::String(n.to_string()),
        RingElement::ZX(coeffs) => Value::Array(
            coeffs
                .iter()
                .map(|c| Value::String(c.to_string()))
                .collect(),
        ),
        other => ring_element_to_json(other),
    }
}

fn domain_element_from_json(ring: RingId, v: &Value) -> Result<RingElement> {
    match ring {
        RingId::Z => Ok(RingElement::Int(bigint_from_json(v)?)),
        RingId::ZX => {
            let coeffs: Result<Vec<BigInt>> = arr(v)?.iter().map(bigint_from_json).collect();
            Ok(RingElement::zx_big(coeffs?))
        }
        other => Err(parse_err(format!("domains over {other} are not supported"))),
    }
}

pub fn domain_to_json(d: &RationalDomain) -> Value {
    json!({
        "ring": ring_id_to_json(d.ring),
        "num": d.numerators.iter().map(domain_element_to_json).collect::<Vec<_>>(),
        "den": domain_element_to_json(&d.denominator),
        "strict": d.strict,
    })
}

pub fn domain_from_json(v: &Value) -> Result<RationalDomain> {
    let m = obj(v)?;
    let ring = ring_id_from_json(field(m, "ring")?)?;
    let numerators: Result<Vec<RingElement>> = arr(field(m, "num")?)?
        .iter()
        .map(|e| domain_element_from_json(ring, e))
        .collect();
    let denominator = domain_element_from_json(ring, field(m, "den")?)?;
    let strict = field(m, "strict")?
        .as_bool()
        .ok_or_else(|| parse_err("\"strict\" must be a boolean"))?;
    RationalDomain::new(ring, numerators?, denominator, strict)
}

pub fn berkovich_point_to_json(b: &BerkovichPointSpecZ) -> Value {
    match b {
        BerkovichPointSpecZ::PPower { p, t } => {
            json!({ "berkovich": "p_power", "p": p, "t": fmt_rat(t) })
        }
        BerkovichPointSpecZ::ArchPower { t } => {
            json!({ "berkovich": "arch_power", "t": fmt_rat(t) })
        }
        BerkovichPointSpecZ::ResidualPt { p } => json!({ "berkovich": "residual", "p": p }),
    }
}

pub fn berkovich_point_from_json(v: &Value) -> Result<BerkovichPointSpecZ> {
    let m = obj(v)?;
    let point = match str_field(m, "berkovich")? {
        "p_power" => BerkovichPointSpecZ::PPower {
            p: u64_field(m, "p")?,
            t: rat_field(m, "t")?,
        },
        "arch_power" => BerkovichPointSpecZ::ArchPower {
            t: rat_field(m, "t")?,
        },
        "residual" => BerkovichPointSpecZ::ResidualPt {
            p: u64_field(m, "p")?,
        },
        other => return Err(parse_err(format!("unknown spectrum point \"{other}\""))),
    };
    point.validate()?;
    Ok(point)
}

// ---- sheaf ----

pub fn ring_descriptor_to_json(r: &RingDescriptor) -> Value {
    match r {
        RingDescriptor::LocalizedIntegers(m) => {
            json!({ "ring": "localized_integers", "m": m })
        }
        RingDescriptor::PAdicIntegers(p) => json!({ "ring": "padic_integers", "p": p }),
        RingDescriptor::PAdicField(p) => json!({ "ring": "padic_field", "p": p }),
        RingDescriptor::RealField => json!({ "ring": "real_field" }),
        RingDescriptor::RationalField => json!({ "ring": "rational_field" }),
        RingDescriptor::FiniteField(p) => json!({ "ring": "finite_field", "p": p }),
        RingDescriptor::ProductOf(factors) => json!({
            "ring": "product_of",
            "factors": factors.iter().map(ring_descriptor_to_json).collect::<Vec<_>>(),
        }),
    }
}

pub fn ring_descriptor_from_json(v: &Value) -> Result<RingDescriptor> {
    let m = obj(v)?;
    let ring = match str_field(m, "ring")? {
        "localized_integers" => RingDescriptor::LocalizedIntegers(u64_field(m, "m")?),
        "padic_integers" => RingDescriptor::PAdicIntegers(u64_field(m, "p")?),
        "padic_field" => RingDescriptor::PAdicField(u64_field(m, "p")?),
        "real_field" => RingDescriptor::RealField,
        "rational_field" => RingDescriptor::RationalField,
        "finite_field" => RingDescriptor::FiniteField(u64_field(m, "p")?),
        "product_of" => RingDescriptor::ProductOf(
            arr(field(m, "factors")?)?
                .iter()
                .map(ring_descriptor_from_json)
                .collect::<Result<_>>()?,
        ),
        other => return Err(parse_err(format!("unknown ring descriptor \"{other}\""))),
    };
    ring.validate()?;
    Ok(ring)
}

fn completed_payload_to_json(ring: &RingDescriptor, payload: &CompletedPayload) -> Value {
    match (ring, payload) {
        (_, CompletedPayload::Exact(q)) => rational_to_json(q),
        (RingDescriptor::PAdicIntegers(p), CompletedPayload::PAdic { residue, k }) => json!({
            "p": p, "k": k, "residue": residue.to_string(), "val": 0,
        }),
        (RingDescriptor::PAdicField(p), CompletedPayload::PAdicFloat { val, unit, k }) => {
            json!({ "p": p, "k": k, "residue": unit.to_string(), "val": val })
        }
        (_, CompletedPayload::Dyadic { lo, hi }) => {
            json!([fmt_rat(lo), fmt_rat(hi)])
        }
        (RingDescriptor::FiniteField(p), CompletedPayload::Residue(r)) => {
            json!({ "p": p, "residue": r.to_string() })
        }
        (RingDescriptor::ProductOf(factors), CompletedPayload::Tuple(parts)) => Value::Array(
            factors
                .iter()
                .zip(parts)
                .map(|(f, part)| completed_payload_to_json(f, part))
                .collect(),
        ),
        // validated elements never reach this arm
        _ => Value::Null,
    }
}

pub fn completed_to_json(x: &CompletedElement) -> Value {
    json!({
        "ring": ring_descriptor_to_json(&x.ring),
        "payload": completed_payload_to_json(&x.ring, &x.payload),
    })
}

fn completed_payload_from_json(ring: &RingDescriptor, v: &Value) -> Result<CompletedPayload> {
    match ring {
        RingDescriptor::LocalizedIntegers(_) | RingDescriptor::RationalField => {
            Ok(CompletedPayload::Exact(rational_from_json(v)?))
        }
        RingDescriptor::PAdicIntegers(p) => {
            let m = obj(v)?;
            if u64_field(m, "p")? != *p {
                return Err(parse_err("payload prime does not match the ring"));
            }
            Ok(CompletedPayload::PAdic {
                residue: bigint_from_json(field(m, "residue")?)?,
                k: u64_field(m, "k")? as u32,
            })
        }
        RingDescriptor::PAdicField(p) => {
            let m = obj(v)?;
            if u64_field(m, "p")? != *p {
                return Err(parse_err("payload prime does not match the ring"));
            }
            let val = field(m, "val")?
                .as_i64()
                .ok_or_else(|| parse_err("\"val\" must be an integer"))?;
            Ok(CompletedPayload::PAdicFloat {
                val,
                unit: bigint_from_json(field(m, "residue")?)?,
                k: u64_field(m, "k")? as u32,
            })
        }
        RingDescriptor::RealField => {
            let pair = arr(v)?;
            if pair.len() != 2 {
                return Err(parse_err("real payloads are [lo, hi] intervals"));
            }
            Ok(CompletedPayload::Dyadic {
                lo: rational_from_json(&pair[0])?,
                hi: rational_from_json(&pair[1])?,
            })
        }
        RingDescriptor::FiniteField(_) => {
            let m = obj(v)?;
            let r = str_field(m, "residue")?
                .parse::<u64>()
                .map_err(|_| parse_err("bad residue"))?;
            Ok(CompletedPayload::Residue(r))
        }
        RingDescriptor::ProductOf(factors) => {
            let parts = arr(v)?;
            if parts.len() != factors.len() {
                return Err(parse_err("tuple length does not match the product"));
            }
            Ok(CompletedPayload::Tuple(
                factors
                    .iter()
                    .zip(parts)
                    .map(|(f, part)| completed_payload_from_json(f, part))
                    .collect::<Result<_>>()?,
            ))
        }
    }
}

pub fn completed_from_json(v: &Value) -> Result<CompletedElement> {
    let m = obj(v)?;
    let ring = ring_descriptor_from_json(field(m, "ring")?)?;
    let payload = completed_payload_from_json(&ring, field(m, "payload")?)?;
    let elem = CompletedElement { ring, payload };
    elem.validate()?;
    Ok(elem)
}

pub fn adele_to_json(a: &AdeleElement) -> Value {
    let mut exceptional = Map::new();
    for (p, component) in &a.exceptional {
        exceptional.insert(
            p.to_string(),
            completed_payload_to_json(&component.ring, &component.payload),
        );
    }
    let real = completed_payload_to_json(&a.real.ring, &a.real.payload);
    json!({ "exceptional": exceptional, "real": real, "tail": "integral" })
}

pub fn adele_from_json(v: &Value) -> Result<AdeleElement> {
    let m = obj(v)?;
    if str_field(m, "tail")? != "integral" {
        return Err(parse_err("the only supported tail tag is \"integral\""));
    }
    let mut exceptional = BTreeMap::new();
    for (key, payload) in obj(field(m, "exceptional")?)? {
        let p: u64 = key
            .parse()
            .map_err(|_| parse_err(format!("bad exceptional prime \"{key}\"")))?;
        let ring = RingDescriptor::PAdicField(p);
        let payload = completed_payload_from_json(&ring, payload)?;
        exceptional.insert(p, CompletedElement { ring, payload });
    }
    let real_ring = RingDescriptor::RealField;
    let real = CompletedElement {
        ring: real_ring.clone(),
        payload: completed_payload_from_json(&real_ring, field(m, "real")?)?,
    };
    crate::sheaf::adele_assemble(exceptional, real)
}

pub fn suite_report_to_json(report: &crate::suites::SuiteReport) -> Value {
    json!({
        "name": report.name,
        "passed": report.passed,
        "trials_run": report.trials_run,
        "first_counterexample": report.first_counterexample,
    })
}

pub fn tiny_ball_to_json(report: &TinyBallReport) -> Value {
    let disjunct = match &report.disjunct {
        TinyBallDisjunct::BigUnit {
            numerator,
            denominator,
        } => json!({
            "disjunct": "big_unit",
            "numerator": ring_element_to_json(numerator),
            "denominator": ring_element_to_json(denominator),
        }),
        TinyBallDisjunct::DiscreteBalls => json!({ "disjunct": "discrete_balls" }),
    };
    json!({
        "place": place_to_json(&report.place),
        "report": disjunct,
        "induces_ring_topology": report.induces_ring_topology,
    })
}
