//! Integer utilities: primality, p-adic orders, squarefree decomposition.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Trial-division bound for squarefree extraction. Cofactors below
/// `BOUND^3` that survive trial division are 1, prime, a semiprime, or a
/// prime square, so the decomposition below is exact for inputs < 10^18.
const SQUAREFREE_TRIAL_BOUND: u64 = 1_000_000;

/// Deterministic primality by trial division; fine at catalog scale.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes up to and including `bound`, ascending.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2usize;
    while p * p <= n {
        if sieve[p] {
            let mut q = p * p;
            while q <= n {
                sieve[q] = false;
                q += p;
            }
        }
        p += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| if b { Some(i as u64) } else { None })
        .collect()
}

/// Exponent of the largest power of `p` dividing `n`. `n` must be nonzero.
pub fn ord_p(n: &BigInt, p: u64) -> u64 {
    assert!(!n.is_zero(), "ord_p of zero");
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut ord = 0u64;
    loop {
        let (q, r) = n.div_rem(&p);
        if r.is_zero() {
            ord += 1;
            n = q;
        } else {
            return ord;
        }
    }
}

/// p-adic order of a nonzero rational: ord of the numerator minus ord of the
/// denominator.
pub fn ord_p_rat(q: &num_rational::BigRational, p: u64) -> i64 {
    assert!(!q.is_zero(), "ord_p of zero");
    ord_p(q.numer(), p) as i64 - ord_p(q.denom(), p) as i64
}

/// p^e as an exact rational, for e of either sign.
pub fn p_pow_rat(p: u64, e: i64) -> num_rational::BigRational {
    let mag = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        num_rational::BigRational::from_integer(mag)
    } else {
        num_rational::BigRational::new(BigInt::one(), mag)
    }
}

/// Product of the distinct prime factors.
pub fn radical(n: u64) -> Result<u64> {
    Ok(factorize(n)?.iter().map(|(p, _)| p).product())
}

/// Largest k with m^k | n, for composite moduli. `n` must be nonzero.
pub fn ord_m(n: &BigInt, m: u64) -> u64 {
    assert!(!n.is_zero(), "ord_m of zero");
    assert!(m >= 2);
    let m = BigInt::from(m);
    let mut n = n.abs();
    let mut ord = 0u64;
    loop {
        let (q, r) = n.div_rem(&m);
        if r.is_zero() {
            ord += 1;
            n = q;
        } else {
            return ord;
        }
    }
}

/// Prime factorization by trial division. Errors when a cofactor
/// resists the trial bound, which does not happen at catalog scale.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::RangeError("factorize(0)".into()));
    }
    let mut n = n;
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0u32;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    Ok(out)
}

/// Positive divisors of |n|, ascending. `n` must be nonzero.
pub fn positive_divisors(n: &BigInt) -> Result<Vec<u64>> {
    let n = n.abs();
    let small: u64 = (&n)
        .try_into()
        .map_err(|_| Error::RangeError(format!("divisor enumeration needs |n| <= u64, got {n}")))?;
    let mut divs = vec![1u64];
    for (p, e) in factorize(small)? {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = 1u64;
            for _ in 0..=e {
                next.push(d * pk);
                pk = pk.saturating_mul(p);
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    divs.dedup();
    Ok(divs)
}

/// Writes `n = s^2 * d` with `d` squarefree. Exact for all `n < 10^18`;
/// larger inputs whose rough cofactor cannot be certified squarefree are
/// rejected rather than guessed at.
pub fn squarefree_decompose(n: &BigUint) -> Result<(BigUint, BigUint)> {
    if n.is_zero() {
        return Err(Error::RangeError("squarefree part of zero".into()));
    }
    let mut rest = n.clone();
    let mut square = BigUint::one();
    let mut free = BigUint::one();
    let mut p = 2u64;
    while p <= SQUAREFREE_TRIAL_BOUND {
        let pb = BigUint::from(p);
        if (&pb * &pb) > rest {
            break;
        }
        if (&rest % &pb).is_zero() {
            let mut e = 0u32;
            while (&rest % &pb).is_zero() {
                rest /= &pb;
                e += 1;
            }
            for _ in 0..(e / 2) {
                square *= &pb;
            }
            if e % 2 == 1 {
                free *= &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        // No prime factor of `rest` is <= the trial bound. A perfect square
        // must be p^2; otherwise a cofactor below bound^3 is p or pq, both
        // squarefree.
        let root = rest.sqrt();
        if &root * &root == rest {
            square *= root;
        } else {
            let bound = BigUint::from(SQUAREFREE_TRIAL_BOUND);
            if rest < &bound * &bound * &bound {
                free *= &rest;
            } else {
                return Err(Error::NotRepresentable(format!(
                    "cannot certify squarefree part of {n}"
                )));
            }
        }
    }
    Ok((square, free))
}
