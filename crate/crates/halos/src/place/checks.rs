//! Sampled law checks for generalized seminorms.
//!
//! Each check takes an evaluation map as a closure, so the randomized suites
//! can aim them at deliberately broken doubles as well as at catalog places.
//! The `_on` variants wrap a catalog place.
//!
//! A place backed by a finite disc chain is a partial function: samples it
//! cannot answer (insufficient chain depth) are skipped, since no law can be
//! witnessed or violated there. Every other evaluation error propagates.

use std::cmp::Ordering;

use crate::halo::{halo_add, halo_cmp, halo_mul, halo_pow, HaloValue};
use crate::place::{evaluate, PlaceDescriptor};
use crate::ring::RingElement;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome<T> {
    Passed,
    Counterexample(T),
}

impl<T> CheckOutcome<T> {
    pub fn passed(&self) -> bool {
        matches!(self, CheckOutcome::Passed)
    }
}

pub type EvalFn<'a> = dyn Fn(&RingElement) -> Result<HaloValue> + 'a;

fn eval_opt(eval: &EvalFn, x: &RingElement) -> Result<Option<HaloValue>> {
    match eval(x) {
        Ok(v) => Ok(Some(v)),
        Err(Error::InsufficientFilterDepth) => Ok(None),
        Err(e) => Err(e),
    }
}

macro_rules! need {
    ($e:expr) => {
        match $e? {
            Some(v) => v,
            None => continue,
        }
    };
}

/// |ab| = |a| |b| on every sample pair.
pub fn check_multiplicative(
    eval: &EvalFn,
    pairs: &[(RingElement, RingElement)],
) -> Result<CheckOutcome<(RingElement, RingElement)>> {
    for (a, b) in pairs {
        let ab = a.mul(b)?;
        let lhs = need!(eval_opt(eval, &ab));
        let va = need!(eval_opt(eval, a));
        let vb = need!(eval_opt(eval, b));
        let rhs = halo_mul(&va, &vb)?;
        if halo_cmp(&lhs, &rhs)? != Ordering::Equal {
            return Ok(CheckOutcome::Counterexample((a.clone(), b.clone())));
        }
    }
    Ok(CheckOutcome::Passed)
}

/// |a^n| = |a|^n for the given exponents.
pub fn check_power_multiplicative(
    eval: &EvalFn,
    samples: &[RingElement],
    exponents: &[u64],
) -> Result<CheckOutcome<(RingElement, u64)>> {
    for a in samples {
        for &n in exponents {
            let mut power = RingElement::one(a.ring_id())?;
            for _ in 0..n {
                power = power.mul(a)?;
            }
            let lhs = need!(eval_opt(eval, &power));
            let va = need!(eval_opt(eval, a));
            let rhs = halo_pow(&va, n);
            if halo_cmp(&lhs, &rhs)? != Ordering::Equal {
                return Ok(CheckOutcome::Counterexample((a.clone(), n)));
            }
        }
    }
    Ok(CheckOutcome::Passed)
}

/// |a + b| <= max(|a|, |b|).
pub fn check_ultrametric(
    eval: &EvalFn,
    pairs: &[(RingElement, RingElement)],
) -> Result<CheckOutcome<(RingElement, RingElement)>> {
    for (a, b) in pairs {
        let sum = a.add(b)?;
        let lhs = need!(eval_opt(eval, &sum));
        let va = need!(eval_opt(eval, a));
        let vb = need!(eval_opt(eval, b));
        let bound = if halo_cmp(&va, &vb)? == Ordering::Less { vb } else { va };
        if halo_cmp(&lhs, &bound)? == Ordering::Greater {
            return Ok(CheckOutcome::Counterexample((a.clone(), b.clone())));
        }
    }
    Ok(CheckOutcome::Passed)
}

/// |a + b| <= |a| + |b|, the sum taken in the codomain halo.
pub fn check_subadditive(
    eval: &EvalFn,
    pairs: &[(RingElement, RingElement)],
) -> Result<CheckOutcome<(RingElement, RingElement)>> {
    for (a, b) in pairs {
        let sum = a.add(b)?;
        let lhs = need!(eval_opt(eval, &sum));
        let va = need!(eval_opt(eval, a));
        let vb = need!(eval_opt(eval, b));
        let bound = halo_add(&va, &vb)?;
        if halo_cmp(&lhs, &bound)? == Ordering::Greater {
            return Ok(CheckOutcome::Counterexample((a.clone(), b.clone())));
        }
    }
    Ok(CheckOutcome::Passed)
}

/// |a + b| <= 2_h max(|a|, |b|), where 2_h = 1 + 1 in the codomain halo.
/// Equivalent to subadditivity for power-multiplicative maps, and the form
/// in which the archimedean bound is usually checked.
pub fn check_prearchimedean(
    eval: &EvalFn,
    pairs: &[(RingElement, RingElement)],
) -> Result<CheckOutcome<(RingElement, RingElement)>> {
    for (a, b) in pairs {
        let sum = a.add(b)?;
        let lhs = need!(eval_opt(eval, &sum));
        let va = need!(eval_opt(eval, a));
        let vb = need!(eval_opt(eval, b));
        let max = if halo_cmp(&va, &vb)? == Ordering::Less { vb } else { va };
        let one = HaloValue::one(&max.halo);
        let two = halo_add(&one, &one)?;
        let bound = halo_mul(&two, &max)?;
        if halo_cmp(&lhs, &bound)? == Ordering::Greater {
            return Ok(CheckOutcome::Counterexample((a.clone(), b.clone())));
        }
    }
    Ok(CheckOutcome::Passed)
}

/// |ab| <= |a| |b|.
pub fn check_submultiplicative(
    eval: &EvalFn,
    pairs: &[(RingElement, RingElement)],
) -> Result<CheckOutcome<(RingElement, RingElement)>> {
    for (a, b) in pairs {
        let ab = a.mul(b)?;
        let lhs = need!(eval_opt(eval, &ab));
        let va = need!(eval_opt(eval, a));
        let vb = need!(eval_opt(eval, b));
        let bound = halo_mul(&va, &vb)?;
        if halo_cmp(&lhs, &bound)? == Ordering::Greater {
            return Ok(CheckOutcome::Counterexample((a.clone(), b.clone())));
        }
    }
    Ok(CheckOutcome::Passed)
}

/// |-a| = |a|.
pub fn check_negation_symmetric(
    eval: &EvalFn,
    samples: &[RingElement],
) -> Result<CheckOutcome<RingElement>> {
    for a in samples {
        let lhs = need!(eval_opt(eval, &a.neg()));
        let rhs = need!(eval_opt(eval, a));
        if halo_cmp(&lhs, &rhs)? != Ordering::Equal {
            return Ok(CheckOutcome::Counterexample(a.clone()));
        }
    }
    Ok(CheckOutcome::Passed)
}

/// |0| = 0 and |1| = 1.
pub fn check_unit_zero(
    eval: &EvalFn,
    zero: &RingElement,
    one: &RingElement,
) -> Result<CheckOutcome<RingElement>> {
    if !eval(zero)?.is_zero() {
        return Ok(CheckOutcome::Counterexample(zero.clone()));
    }
    if !eval(one)?.is_one() {
        return Ok(CheckOutcome::Counterexample(one.clone()));
    }
    Ok(CheckOutcome::Passed)
}

macro_rules! on_variant {
    ($on:ident, $with:ident, $ce:ty) => {
        pub fn $on(
            place: &PlaceDescriptor,
            pairs: &[(RingElement, RingElement)],
        ) -> Result<CheckOutcome<$ce>> {
            $with(&|x| evaluate(place, x), pairs)
        }
    };
}

on_variant!(
    check_multiplicative_on,
    check_multiplicative,
    (RingElement, RingElement)
);
on_variant!(
    check_ultrametric_on,
    check_ultrametric,
    (RingElement, RingElement)
);
on_variant!(
    check_subadditive_on,
    check_subadditive,
    (RingElement, RingElement)
);
on_variant!(
    check_prearchimedean_on,
    check_prearchimedean,
    (RingElement, RingElement)
);
on_variant!(
    check_submultiplicative_on,
    check_submultiplicative,
    (RingElement, RingElement)
);

pub fn check_power_multiplicative_on(
    place: &PlaceDescriptor,
    samples: &[RingElement],
    exponents: &[u64],
) -> Result<CheckOutcome<(RingElement, u64)>> {
    check_power_multiplicative(&|x| evaluate(place, x), samples, exponents)
}

pub fn check_negation_symmetric_on(
    place: &PlaceDescriptor,
    samples: &[RingElement],
) -> Result<CheckOutcome<RingElement>> {
    check_negation_symmetric(&|x| evaluate(place, x), samples)
}

pub fn check_unit_zero_on(place: &PlaceDescriptor) -> Result<CheckOutcome<RingElement>> {
    let ring = place.domain();
    check_unit_zero(
        &|x| evaluate(place, x),
        &RingElement::zero(ring)?,
        &RingElement::one(ring)?,
    )
}

/// Divisibility transfer between places: whenever |a|_y |c|_y <= |b|_y, the
/// same inequality must hold at x. Failures witness that x does not factor
/// through the divisibility preorder of y.
pub fn mult_bounded_by(
    x: &PlaceDescriptor,
    y: &PlaceDescriptor,
    triples: &[(RingElement, RingElement, RingElement)],
) -> Result<CheckOutcome<(RingElement, RingElement, RingElement)>> {
    for (a, b, c) in triples {
        let holds_at = |place: &PlaceDescriptor| -> Result<Option<bool>> {
            let va = match eval_opt(&|e| evaluate(place, e), a)? {
                Some(v) => v,
                None => return Ok(None),
            };
            let vb = match eval_opt(&|e| evaluate(place, e), b)? {
                Some(v) => v,
                None => return Ok(None),
            };
            let vc = match eval_opt(&|e| evaluate(place, e), c)? {
                Some(v) => v,
                None => return Ok(None),
            };
            let lhs = halo_mul(&va, &vc)?;
            Ok(Some(halo_cmp(&lhs, &vb)? != Ordering::Greater))
        };
        match (holds_at(y)?, holds_at(x)?) {
            (Some(true), Some(false)) => {
                return Ok(CheckOutcome::Counterexample((
                    a.clone(),
                    b.clone(),
                    c.clone(),
                )))
            }
            _ => continue,
        }
    }
    Ok(CheckOutcome::Passed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::place::PlaceDescriptor::*;
    use crate::ring::RingId;
    use num_traits::Signed;

    fn int_pairs() -> Vec<(RingElement, RingElement)> {
        let vals = [-9i64, -4, -1, 0, 1, 2, 3, 5, 6, 12, 35];
        let mut out = Vec::new();
        for &a in &vals {
            for &b in &vals {
                out.push((RingElement::int(a), RingElement::int(b)));
            }
        }
        out
    }

    #[test]
    fn catalog_places_satisfy_their_laws() {
        let pairs = int_pairs();
        let samples: Vec<RingElement> =
            [-7i64, -2, 0, 1, 4, 9].iter().map(|&n| RingElement::int(n)).collect();
        for place in crate::place::catalog_places() {
            if place.domain() != RingId::Z {
                continue;
            }
            assert!(check_unit_zero_on(&place).unwrap().passed(), "{place}");
            assert!(
                check_subadditive_on(&place, &pairs).unwrap().passed(),
                "{place}"
            );
            assert!(
                check_power_multiplicative_on(&place, &samples, &[0, 1, 2, 3, 5])
                    .unwrap()
                    .passed(),
                "{place}"
            );
            assert!(
                check_negation_symmetric_on(&place, &samples).unwrap().passed(),
                "{place}"
            );
            if place.is_multiplicative() {
                assert!(
                    check_multiplicative_on(&place, &pairs).unwrap().passed(),
                    "{place}"
                );
            }
            if crate::place::is_nonarchimedean(&place).unwrap() {
                assert!(
                    check_ultrametric_on(&place, &pairs).unwrap().passed(),
                    "{place}"
                );
            }
        }
    }

    #[test]
    fn composite_multiplicativity_fails_at_two_three() {
        let pairs = int_pairs();
        let outcome = check_multiplicative_on(&CompositeAdic(6), &pairs).unwrap();
        match outcome {
            CheckOutcome::Counterexample((a, b)) => {
                // |6|_6 = 1/6 but |2|_6 |3|_6 = 1
                let prod = a.mul(&b).unwrap();
                assert!(matches!(prod, RingElement::Int(ref n)
                    if num_integer::Integer::is_multiple_of(n, &num_bigint::BigInt::from(6))));
            }
            CheckOutcome::Passed => panic!("composite place passed multiplicativity"),
        }
    }

    #[test]
    fn archimedean_is_not_ultrametric() {
        let pairs = int_pairs();
        assert!(!check_ultrametric_on(&ArchimedeanZ, &pairs).unwrap().passed());
        assert!(check_prearchimedean_on(&ArchimedeanZ, &pairs).unwrap().passed());
    }

    #[test]
    fn broken_double_is_caught() {
        // drops the negation symmetry by keeping the sign
        let broken = |x: &RingElement| -> Result<HaloValue> {
            let q = x.as_rational()?;
            if q.is_negative() {
                HaloValue::rational(q * crate::ring::rat(1, 2) * crate::ring::rat(-1, 1))
            } else {
                HaloValue::rational(q)
            }
        };
        let samples = [RingElement::int(-3), RingElement::int(3)];
        assert!(!check_negation_symmetric(&broken, &samples).unwrap().passed());
    }

    #[test]
    fn divisibility_transfer() {
        let triples: Vec<_> = {
            let vals = [1i64, 2, 3, 4, 6, 8, 9];
            let mut out = Vec::new();
            for &a in &vals {
                for &b in &vals {
                    for &c in &vals {
                        out.push((
                            RingElement::int(a),
                            RingElement::int(b),
                            RingElement::int(c),
                        ));
                    }
                }
            }
            out
        };
        // 2-adic and 3-adic divisibility are incomparable: (3, 2, 1) has
        // |3| <= |2| at p = 3 but not at p = 2
        let out = mult_bounded_by(&PAdicReal(2), &PAdicReal(3), &triples).unwrap();
        assert!(matches!(out, CheckOutcome::Counterexample(_)));
        // every place transfers from the trivial place on Z, whose only
        // inequalities are |a| <= |b| with a arbitrary, b nonzero... not so:
        // trivial has |a c| <= |b| iff b != 0 or ac = 0. The archimedean
        // place does not transfer: (2, 1, 1).
        let out = mult_bounded_by(&ArchimedeanZ, &TrivialOn(RingId::Z), &triples).unwrap();
        assert!(matches!(out, CheckOutcome::Counterexample(_)));
        // a place transfers from itself
        let out = mult_bounded_by(&PAdicReal(2), &PAdicReal(2), &triples).unwrap();
        assert!(out.passed());
    }
}
