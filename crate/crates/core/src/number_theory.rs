//! Exact integer helpers used by the AKS steps: perfect powers, gcd,
//! multiplicative order, Euler's totient, square roots and bit lengths.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Natural, Result};

/// `base^exponent` equal to the tested number, with the largest possible exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectPowerWitness {
    pub base: Natural,
    pub exponent: u64,
}

/// Finds `a >= 2, b >= 2` with `a^b == n`, returning the representation with
/// maximal `b` (so 1024 is `2^10`, not `32^2`).
pub fn is_perfect_power(n: &Natural) -> Result<Option<PerfectPowerWitness>> {
    if *n < BigUint::from(2u8) {
        return Err(Error::domain("perfect-power check needs n >= 2"));
    }
    let bits = n.bits();
    for exponent in (2..=bits).rev() {
        let root = n.nth_root(exponent as u32);
        if root < BigUint::from(2u8) {
            continue;
        }
        if root.pow(exponent as u32) == *n {
            return Ok(Some(PerfectPowerWitness {
                base: root,
                exponent,
            }));
        }
    }
    Ok(None)
}

pub fn gcd(a: &Natural, b: &Natural) -> Result<Natural> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::domain("gcd(0, 0) is undefined"));
    }
    Ok(a.gcd(b))
}

/// Least `k >= 1` with `n^k == 1 (mod r)`, or `None` when `gcd(n, r) > 1`.
///
/// Iterates powers of `n` modulo `r` directly; the order is bounded by
/// `phi(r) < r`, so this takes at most `r` multiplications.
pub fn multiplicative_order(n: &Natural, r: &Natural) -> Result<Option<Natural>> {
    if *r < BigUint::from(2u8) {
        return Err(Error::domain("multiplicative order needs r >= 2"));
    }
    if !n.gcd(r).is_one() {
        return Ok(None);
    }
    if let Some(modulus) = r.to_u64() {
        let step = (n % r).to_u64().expect("residue below a u64 modulus");
        return Ok(Some(Natural::from(order_u64(step, modulus))));
    }
    let step = n % r;
    let mut acc = step.clone();
    let mut k = Natural::one();
    while !acc.is_one() {
        acc = (&acc * &step) % r;
        k += 1u8;
    }
    Ok(Some(k))
}

fn order_u64(step: u64, modulus: u64) -> u64 {
    let mut acc = step;
    let mut k = 1;
    while acc != 1 {
        acc = ((acc as u128 * step as u128) % modulus as u128) as u64;
        k += 1;
    }
    k
}

/// Euler's totient by trial-division factorisation of `r`.
pub fn euler_phi(r: &Natural) -> Result<Natural> {
    if r.is_zero() {
        return Err(Error::domain("euler_phi(0) is undefined"));
    }
    if let Some(small) = r.to_u64() {
        return Ok(Natural::from(phi_u64(small)));
    }
    let mut rest = r.clone();
    let mut phi = r.clone();
    let mut p = BigUint::from(2u8);
    while &p * &p <= rest {
        if (&rest % &p).is_zero() {
            while (&rest % &p).is_zero() {
                rest /= &p;
            }
            phi = &phi / &p * (&p - 1u8);
        }
        p += 1u8;
    }
    if rest > BigUint::one() {
        phi = &phi / &rest * (&rest - 1u8);
    }
    Ok(phi)
}

fn phi_u64(mut rest: u64) -> u64 {
    let mut phi = rest;
    let mut p = 2u64;
    while p <= rest / p {
        if rest.is_multiple_of(p) {
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            phi = phi / p * (p - 1);
        }
        p += 1;
    }
    if rest > 1 {
        phi = phi / rest * (rest - 1);
    }
    phi
}

/// Number of binary digits, `floor(log2 n) + 1`.
pub fn bit_length(n: &Natural) -> Result<u64> {
    if n.is_zero() {
        return Err(Error::domain("bit length of 0 is undefined"));
    }
    Ok(n.bits())
}

/// `floor(sqrt(n))`, exact.
pub fn integer_sqrt(n: &Natural) -> Natural {
    n.sqrt()
}

/// Upper limit of the congruence loop: `(isqrt(phi(r)) + 1) * bit_length(n)`.
///
/// Never smaller than `floor(sqrt(phi(r)) * log2(n))`, because
/// `sqrt(phi) < isqrt(phi) + 1` and `log2(n) < bit_length(n)`.
pub fn witness_bound(r: &Natural, n: &Natural) -> Result<Natural> {
    if *r < BigUint::from(2u8) || *n < BigUint::from(2u8) {
        return Err(Error::domain("witness bound needs r >= 2 and n >= 2"));
    }
    let root = integer_sqrt(&euler_phi(r)?) + 1u8;
    Ok(root * bit_length(n)?)
}
