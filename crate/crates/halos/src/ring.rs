//! Coefficient rings the catalog evaluates on: Z, Q, Fp[X], Z[X], Q[X] and
//! fractions of Q[X], plus Gaussian rationals for archimedean centers.
//!
//! Polynomials are stored ascending (index i holds the X^i coefficient) with
//! trailing zeros trimmed, so the leading coefficient is the last entry.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::is_prime;
use crate::{Error, Result};

pub type Rat = BigRational;
pub type Int = BigInt;

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Shorthand for n/d.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Parses "n" or "n/d" with optional sign into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::ParseError(format!("bad rational literal {s:?}"));
    let mut parts = s.splitn(2, '/');
    let num: Int = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    match parts.next() {
        None => Ok(Rat::from_integer(num)),
        Some(d) => {
            let den: Int = d.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(num, den))
        }
    }
}

/// Renders a rational as "n" or "n/d", the inverse of [`parse_rat`].
pub fn fmt_rat(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A Gaussian rational re + im*i.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Qi {
    pub re: Rat,
    pub im: Rat,
}

impl Qi {
    pub fn new(re: Rat, im: Rat) -> Self {
        Qi { re, im }
    }

    pub fn from_rat(re: Rat) -> Self {
        Qi { re, im: Rat::zero() }
    }

    pub fn zero() -> Self {
        Qi::from_rat(Rat::zero())
    }

    pub fn one() -> Self {
        Qi::from_rat(Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Qi { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn add(&self, other: &Qi) -> Qi {
        Qi { re: &self.re + &other.re, im: &self.im + &other.im }
    }

    pub fn sub(&self, other: &Qi) -> Qi {
        Qi { re: &self.re - &other.re, im: &self.im - &other.im }
    }

    pub fn mul(&self, other: &Qi) -> Qi {
        Qi {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    /// |z|^2 = re^2 + im^2, an exact nonnegative rational.
    pub fn norm_sq(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Display for Qi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", fmt_rat(&self.re))
        } else {
            write!(f, "{}+{}i", fmt_rat(&self.re), fmt_rat(&self.im))
        }
    }
}

/// Dense polynomial over Q, ascending coefficients, trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly(Vec<Rat>);

impl QPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly(coeffs)
    }

    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn constant(c: Rat) -> Self {
        QPoly::new(vec![c])
    }

    pub fn x() -> Self {
        QPoly::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.0.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        QPoly::new(out)
    }

    pub fn neg(&self) -> QPoly {
        QPoly(self.0.iter().map(|c| -c.clone()).collect())
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        QPoly::new(out)
    }

    pub fn eval(&self, a: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = acc * a + c;
        }
        acc
    }

    pub fn eval_qi(&self, a: &Qi) -> Qi {
        let mut acc = Qi::zero();
        for c in self.0.iter().rev() {
            acc = acc.mul(a).add(&Qi::from_rat(c.clone()));
        }
        acc
    }

    /// Coefficients c_i with self = sum c_i (X - a)^i, by iterated synthetic
    /// division. Exact, length = len of the coefficient vector.
    pub fn taylor_at(&self, a: &Rat) -> Vec<Rat> {
        let mut c = self.0.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = a * &c[j + 1];
                c[j] = &c[j] + &t;
            }
        }
        c
    }

    /// Taylor coefficients at a Gaussian-rational center.
    pub fn taylor_at_qi(&self, a: &Qi) -> Vec<Qi> {
        let mut c: Vec<Qi> = self.0.iter().map(|q| Qi::from_rat(q.clone())).collect();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = a.mul(&c[j + 1]);
                c[j] = c[j].add(&t);
            }
        }
        c
    }
}

/// Dense polynomial over the field with p elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    pub p: u64,
    coeffs: Vec<u64>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // extended Euclid on i128; p prime, a not divisible by p
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "inverse of non-unit");
    (s0.rem_euclid(p as i128)) as u64
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidDescriptor(format!("{p} is not prime")));
        }
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Ok(FpPoly { p, coeffs })
    }

    pub fn from_int_coeffs(p: u64, coeffs: &[Int]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidDescriptor(format!("{p} is not prime")));
        }
        let pb = Int::from(p);
        let reduced = coeffs
            .iter()
            .map(|c| {
                let r = c.mod_floor(&pb);
                u64::try_from(r).expect("mod_floor below u64 prime")
            })
            .collect();
        FpPoly::new(p, reduced)
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        FpPoly { p, coeffs: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        FpPoly { p, coeffs: vec![0, 1] }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn same_field(&self, other: &FpPoly) {
        assert_eq!(self.p, other.p, "mixed prime fields");
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        self.same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            out.push((a + b) % self.p);
        }
        FpPoly::new(self.p, out).expect("p already validated")
    }

    pub fn neg(&self) -> FpPoly {
        let out = self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect();
        FpPoly { p: self.p, coeffs: out }
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        self.same_field(other);
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let acc = (a as u128 * b as u128 + out[i + j] as u128) % self.p as u128;
                out[i + j] = acc as u64;
            }
        }
        FpPoly::new(self.p, out).expect("p already validated")
    }

    /// Division with remainder by a nonzero divisor.
    pub fn divmod(&self, div: &FpPoly) -> (FpPoly, FpPoly) {
        self.same_field(div);
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.degree().unwrap();
        let lead_inv = inv_mod(*div.coeffs.last().unwrap(), self.p);
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0u64; self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = (*rem.last().unwrap() as u128 * lead_inv as u128 % self.p as u128) as u64;
            if c != 0 {
                quo[k] = c;
                for (i, &dc) in div.coeffs.iter().enumerate() {
                    let sub = c as u128 * dc as u128 % self.p as u128;
                    let cur = rem[k + i] as u128;
                    rem[k + i] = ((cur + self.p as u128 * self.p as u128 - sub) % self.p as u128) as u64;
                }
            }
            rem.pop();
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        (
            FpPoly::new(self.p, quo).expect("p already validated"),
            FpPoly { p: self.p, coeffs: rem },
        )
    }

    pub fn rem(&self, div: &FpPoly) -> FpPoly {
        self.divmod(div).1
    }

    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> FpPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lead) => {
                let inv = inv_mod(lead, self.p);
                let out = self
                    .coeffs
                    .iter()
                    .map(|&c| (c as u128 * inv as u128 % self.p as u128) as u64)
                    .collect();
                FpPoly { p: self.p, coeffs: out }
            }
        }
    }

    /// self^e mod m by square and multiply.
    pub fn pow_mod(&self, e: u64, m: &FpPoly) -> FpPoly {
        let mut base = self.rem(m);
        let mut acc = FpPoly::one(self.p);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Irreducibility over F_p: a proper factorization has a factor of degree
    /// at most deg/2, and X^(p^d) - X is the product of all irreducibles of
    /// degree dividing d, so it suffices that gcd(X^(p^d) - X, self) = 1 for
    /// every d up to deg/2.
    pub fn is_irreducible(&self) -> bool {
        let deg = match self.degree() {
            None | Some(0) => return false,
            Some(d) => d,
        };
        if deg == 1 {
            return true;
        }
        let x = FpPoly::x(self.p);
        let mut frob = x.clone(); // X^(p^d) mod self, starting at d = 0
        for _ in 1..=(deg / 2) {
            frob = frob.pow_mod(self.p, self);
            let g = frob.sub(&x).gcd(self);
            if g.degree() != Some(0) {
                return false;
            }
        }
        true
    }

    /// Exact order of `self` in `q`: the largest k with self^k | q.
    /// `q` must be nonzero and `self` of degree >= 1.
    pub fn ord_in(&self, q: &FpPoly) -> u64 {
        assert!(!q.is_zero(), "order in the zero polynomial");
        assert!(self.degree().is_some_and(|d| d >= 1));
        let mut q = q.clone();
        let mut ord = 0;
        loop {
            let (quo, rem) = q.divmod(self);
            if rem.is_zero() {
                ord += 1;
                q = quo;
            } else {
                return ord;
            }
        }
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "X")?,
                1 => write!(f, "{c}*X")?,
                _ if c == 1 => write!(f, "X^{i}")?,
                _ => write!(f, "{c}*X^{i}")?,
            }
        }
        Ok(())
    }
}

/// Identifier of a supported coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingId {
    /// The integers.
    Z,
    /// The rationals.
    Q,
    /// Polynomials over the field with p elements.
    FpX(u64),
    /// Polynomials with integer coefficients.
    ZX,
    /// Polynomials with rational coefficients.
    QX,
    /// Fractions of rational polynomials with nonzero denominator.
    QXFrac,
}

impl fmt::Display for RingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingId::Z => write!(f, "Z"),
            RingId::Q => write!(f, "Q"),
            RingId::FpX(p) => write!(f, "F{p}[X]"),
            RingId::ZX => write!(f, "Z[X]"),
            RingId::QX => write!(f, "Q[X]"),
            RingId::QXFrac => write!(f, "Q(X)"),
        }
    }
}

/// An element of one of the supported rings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingElement {
    Int(Int),
    Rat(Rat),
    FpX(FpPoly),
    /// Ascending integer coefficients, trimmed.
    ZX(Vec<Int>),
    QX(QPoly),
    /// num/den with nonzero den.
    QXFrac { num: QPoly, den: QPoly },
}

impl RingElement {
    pub fn int(n: i64) -> Self {
        RingElement::Int(Int::from(n))
    }

    pub fn zx(coeffs: &[i64]) -> Self {
        let mut v: Vec<Int> = coeffs.iter().map(|&c| Int::from(c)).collect();
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        RingElement::ZX(v)
    }

    pub fn zx_big(mut coeffs: Vec<Int>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RingElement::ZX(coeffs)
    }

    pub fn qx_frac(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidDescriptor("zero denominator in Q(X) fraction".into()));
        }
        Ok(RingElement::QXFrac { num, den })
    }

    pub fn ring_id(&self) -> RingId {
        match self {
            RingElement::Int(_) => RingId::Z,
            RingElement::Rat(_) => RingId::Q,
            RingElement::FpX(f) => RingId::FpX(f.p),
            RingElement::ZX(_) => RingId::ZX,
            RingElement::QX(_) => RingId::QX,
            RingElement::QXFrac { .. } => RingId::QXFrac,
        }
    }

    pub fn zero(ring: RingId) -> Result<Self> {
        Self::from_small_int(ring, 0)
    }

    pub fn one(ring: RingId) -> Result<Self> {
        Self::from_small_int(ring, 1)
    }

    /// The image of a small integer under the canonical map into `ring`.
    pub fn from_small_int(ring: RingId, n: i64) -> Result<Self> {
        let n = Int::from(n);
        Ok(match ring {
            RingId::Z => RingElement::Int(n),
            RingId::Q => RingElement::Rat(Rat::from_integer(n)),
            RingId::FpX(p) => RingElement::FpX(FpPoly::from_int_coeffs(p, &[n])?),
            RingId::ZX => RingElement::zx_big(vec![n]),
            RingId::QX => RingElement::QX(QPoly::constant(Rat::from_integer(n))),
            RingId::QXFrac => RingElement::QXFrac {
                num: QPoly::constant(Rat::from_integer(n)),
                den: QPoly::constant(Rat::one()),
            },
        })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElement::Int(n) => n.is_zero(),
            RingElement::Rat(q) => q.is_zero(),
            RingElement::FpX(f) => f.is_zero(),
            RingElement::ZX(c) => c.is_empty(),
            RingElement::QX(p) => p.is_zero(),
            RingElement::QXFrac { num, .. } => num.is_zero(),
        }
    }

    pub fn neg(&self) -> RingElement {
        match self {
            RingElement::Int(n) => RingElement::Int(-n),
            RingElement::Rat(q) => RingElement::Rat(-q),
            RingElement::FpX(f) => RingElement::FpX(f.neg()),
            RingElement::ZX(c) => RingElement::ZX(c.iter().map(|x| -x).collect()),
            RingElement::QX(p) => RingElement::QX(p.neg()),
            RingElement::QXFrac { num, den } => {
                RingElement::QXFrac { num: num.neg(), den: den.clone() }
            }
        }
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.binop(other, true)
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        self.binop(other, false)
    }

    fn binop(&self, other: &RingElement, additive: bool) -> Result<RingElement> {
        use RingElement::*;
        Ok(match (self, other) {
            (Int(a), Int(b)) => Int(if additive { a + b } else { a * b }),
            (Rat(a), Rat(b)) => Rat(if additive { a + b } else { a * b }),
            (FpX(a), FpX(b)) if a.p == b.p => FpX(if additive { a.add(b) } else { a.mul(b) }),
            (ZX(a), ZX(b)) => {
                if additive {
                    let n = a.len().max(b.len());
                    let mut out = Vec::with_capacity(n);
                    for i in 0..n {
                        let x = a.get(i).cloned().unwrap_or_else(Zero::zero);
                        let y = b.get(i).cloned().unwrap_or_else(Zero::zero);
                        out.push(x + y);
                    }
                    RingElement::zx_big(out)
                } else if a.is_empty() || b.is_empty() {
                    RingElement::zx_big(Vec::new())
                } else {
                    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
                    for (i, x) in a.iter().enumerate() {
                        for (j, y) in b.iter().enumerate() {
                            out[i + j] += x * y;
                        }
                    }
                    RingElement::zx_big(out)
                }
            }
            (QX(a), QX(b)) => QX(if additive { a.add(b) } else { a.mul(b) }),
            (QXFrac { num: n1, den: d1 }, QXFrac { num: n2, den: d2 }) => {
                if additive {
                    QXFrac {
                        num: n1.mul(d2).add(&n2.mul(d1)),
                        den: d1.mul(d2),
                    }
                } else {
                    QXFrac { num: n1.mul(n2), den: d1.mul(d2) }
                }
            }
            _ => {
                return Err(Error::MixedRings(format!(
                    "{} vs {}",
                    self.ring_id(),
                    other.ring_id()
                )))
            }
        })
    }

    /// View as a fraction of rational polynomials, for places on Q[X]-like
    /// domains. Integer and rational scalars embed as constants.
    pub fn as_poly_fraction(&self) -> Result<(QPoly, QPoly)> {
        let one = QPoly::constant(Rat::one());
        Ok(match self {
            RingElement::Int(n) => (QPoly::constant(Rat::from_integer(n.clone())), one),
            RingElement::Rat(q) => (QPoly::constant(q.clone()), one),
            RingElement::ZX(c) => (
                QPoly::new(c.iter().map(|x| Rat::from_integer(x.clone())).collect()),
                one,
            ),
            RingElement::QX(p) => (p.clone(), one),
            RingElement::QXFrac { num, den } => (num.clone(), den.clone()),
            RingElement::FpX(f) => {
                return Err(Error::DomainMismatch(format!(
                    "F{}[X] element where a characteristic-zero polynomial is needed",
                    f.p
                )))
            }
        })
    }

    /// View as an exact rational, for places on Z or Q.
    pub fn as_rational(&self) -> Result<Rat> {
        match self {
            RingElement::Int(n) => Ok(Rat::from_integer(n.clone())),
            RingElement::Rat(q) => Ok(q.clone()),
            _ => Err(Error::DomainMismatch(format!(
                "{} element where a scalar is needed",
                self.ring_id()
            ))),
        }
    }

    /// Reduction to F_p[X]; integers and integer polynomials reduce
    /// coefficientwise.
    pub fn as_fp_poly(&self, p: u64) -> Result<FpPoly> {
        match self {
            RingElement::FpX(f) if f.p == p => Ok(f.clone()),
            RingElement::FpX(f) => Err(Error::MixedRings(format!("F{}[X] vs F{}[X]", f.p, p))),
            RingElement::Int(n) => FpPoly::from_int_coeffs(p, std::slice::from_ref(n)),
            RingElement::ZX(c) => FpPoly::from_int_coeffs(p, c),
            _ => Err(Error::DomainMismatch(format!(
                "{} element cannot be reduced mod {p}",
                self.ring_id()
            ))),
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElement::Int(n) => write!(f, "{n}"),
            RingElement::Rat(q) => write!(f, "{}", fmt_rat(q)),
            RingElement::FpX(p) => write!(f, "{p}"),
            RingElement::ZX(c) => write!(f, "{}", poly_string(&c.iter().map(|x| x.to_string()).collect::<Vec<_>>())),
            RingElement::QX(p) => write!(f, "{}", poly_string(&p.coeffs().iter().map(fmt_rat).collect::<Vec<_>>())),
            RingElement::QXFrac { num, den } => write!(
                f,
                "({}) / ({})",
                poly_string(&num.coeffs().iter().map(fmt_rat).collect::<Vec<_>>()),
                poly_string(&den.coeffs().iter().map(fmt_rat).collect::<Vec<_>>())
            ),
        }
    }
}

fn poly_string(coeffs: &[String]) -> String {
    if coeffs.is_empty() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c == "0" {
            continue;
        }
        let part = match i {
            0 => c.clone(),
            1 => format!("({c})*X"),
            _ => format!("({c})*X^{i}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parse_roundtrip() {
        for s in ["0", "5", "-3", "1/2", "-7/3"] {
            assert_eq!(fmt_rat(&parse_rat(s).unwrap()), s);
        }
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        // non-canonical input parses to the reduced form
        assert_eq!(fmt_rat(&parse_rat("2/4").unwrap()), "1/2");
    }

    #[test]
    fn taylor_shift_matches_binomial_expansion() {
        // P = 1 + 2X + 3X^2 at a = 5: c_i = sum_j binom(j, i) a_j 5^(j-i)
        let p = QPoly::new(vec![rat_int(1), rat_int(2), rat_int(3)]);
        let c = p.taylor_at(&rat_int(5));
        assert_eq!(c, vec![rat_int(1 + 10 + 75), rat_int(2 + 30), rat_int(3)]);
        // reassembling sum c_i (X-a)^i returns P
        let xa = QPoly::new(vec![rat_int(-5), rat_int(1)]);
        let mut acc = QPoly::zero();
        let mut pow = QPoly::constant(Rat::one());
        for ci in &c {
            acc = acc.add(&QPoly::constant(ci.clone()).mul(&pow));
            pow = pow.mul(&xa);
        }
        assert_eq!(acc, p);
    }

    #[test]
    fn qi_taylor_and_norm() {
        let i = Qi::new(rat_int(0), rat_int(1));
        // X^2 + 1 at i: value 0, so the Taylor expansion starts at index 1
        let p = QPoly::new(vec![rat_int(1), rat_int(0), rat_int(1)]);
        let c = p.taylor_at_qi(&i);
        assert!(c[0].is_zero());
        assert_eq!(c[1], Qi::new(rat_int(0), rat_int(2)));
        assert_eq!(c[1].norm_sq(), rat_int(4));
    }

    #[test]
    fn fp_poly_division_and_gcd() {
        let p = FpPoly::new(5, vec![1, 0, 1]).unwrap(); // 1 + X^2
        let q = FpPoly::new(5, vec![0, 1]).unwrap(); // X
        let (quo, rem) = p.divmod(&q);
        assert_eq!(quo, FpPoly::new(5, vec![0, 1]).unwrap());
        assert_eq!(rem, FpPoly::new(5, vec![1]).unwrap());
        let g = p.mul(&q).gcd(&q);
        assert_eq!(g, q.monic());
    }

    #[test]
    fn irreducibility_over_f2() {
        // X^2 + X + 1 is irreducible over F_2, X^2 + 1 = (X+1)^2 is not
        assert!(FpPoly::new(2, vec![1, 1, 1]).unwrap().is_irreducible());
        assert!(!FpPoly::new(2, vec![1, 0, 1]).unwrap().is_irreducible());
        assert!(FpPoly::new(3, vec![0, 1]).unwrap().is_irreducible());
        assert!(!FpPoly::new(3, vec![2]).unwrap().is_irreducible());
        // X^2 + 1 over F_5 factors as (X+2)(X+3)
        assert!(!FpPoly::new(5, vec![1, 0, 1]).unwrap().is_irreducible());
        // X^2 + 1 over F_3 is irreducible
        assert!(FpPoly::new(3, vec![1, 0, 1]).unwrap().is_irreducible());
    }

    #[test]
    fn fp_ord() {
        let p = FpPoly::new(3, vec![0, 1]).unwrap(); // X
        let q = FpPoly::new(3, vec![0, 0, 1, 1]).unwrap(); // X^2 (X + 1)
        assert_eq!(p.ord_in(&q), 2);
        let r = FpPoly::new(3, vec![1, 1]).unwrap();
        assert_eq!(r.ord_in(&q), 1);
    }

    #[test]
    fn ring_element_arithmetic_and_errors() {
        let a = RingElement::zx(&[1, 2]);
        let b = RingElement::zx(&[0, 0, 1]);
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod, RingElement::zx(&[0, 0, 1, 2]));
        assert!(a.add(&RingElement::int(1)).is_err());
        // trailing zeros trim away
        assert_eq!(RingElement::zx(&[3, 0, 0]), RingElement::zx(&[3]));
    }
}
