//! Miller-Rabin strong-probable-prime test.
//!
//! With [`DEFAULT_BASES`] (the first twelve primes) the answer is exact for
//! every `n < 3.3 * 10^14`, which covers every `n` the AKS engine can
//! finish on in practice. Callers wanting the randomised test pass their own bases,
//! e.g. from [`random_bases`].

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use crate::{Error, Natural, Result};

pub const DEFAULT_BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MrOutcome {
    ProbablyPrime,
    Composite,
}

/// `n - 1 = 2^s * t` with `t` odd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MrDecomposition {
    pub s: u64,
    pub t: Natural,
}

fn check_odd(n: &Natural) -> Result<()> {
    if *n < BigUint::from(3u8) || n.is_even() {
        return Err(Error::domain("Miller-Rabin needs an odd n >= 3"));
    }
    Ok(())
}

pub fn decompose(n: &Natural) -> Result<MrDecomposition> {
    check_odd(n)?;
    let m = n - 1u8;
    let s = m.trailing_zeros().expect("n - 1 is nonzero");
    Ok(MrDecomposition { s, t: m >> s })
}

/// One strong-pseudoprime round: `base^t`, then up to `s - 1` squarings
/// looking for `n - 1`.
pub fn mr_round(n: &Natural, base: &Natural) -> Result<MrOutcome> {
    let MrDecomposition { s, t } = decompose(n)?;
    let minus_one = n - 1u8;
    if *base < BigUint::from(2u8) || *base > &minus_one - 1u8 {
        return Err(Error::domain(format!("base {base} outside [2, n - 2]")));
    }
    if let (Some(m), Some(b), Some(t)) = (n.to_u64(), base.to_u64(), t.to_u64()) {
        return Ok(round_u64(m, b, s, t));
    }
    let mut x = base.modpow(&t, n);
    if x.is_one() || x == minus_one {
        return Ok(MrOutcome::ProbablyPrime);
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == minus_one {
            return Ok(MrOutcome::ProbablyPrime);
        }
        if x.is_one() {
            // nontrivial square root of 1
            return Ok(MrOutcome::Composite);
        }
    }
    Ok(MrOutcome::Composite)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn round_u64(n: u64, base: u64, s: u64, t: u64) -> MrOutcome {
    let mut x = 1;
    let mut sq = base;
    let mut e = t;
    while e > 0 {
        if e & 1 == 1 {
            x = mul_mod(x, sq, n);
        }
        sq = mul_mod(sq, sq, n);
        e >>= 1;
    }
    if x == 1 || x == n - 1 {
        return MrOutcome::ProbablyPrime;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return MrOutcome::ProbablyPrime;
        }
        if x == 1 {
            return MrOutcome::Composite;
        }
    }
    MrOutcome::Composite
}

/// Composite iff some base in `[2, n - 2]` is a witness. Bases outside that
/// range carry no information for this `n` and are skipped.
pub fn mr_test(n: &Natural, bases: &[Natural]) -> Result<MrOutcome> {
    if *n < BigUint::from(2u8) {
        return Err(Error::domain("n must exceed 1"));
    }
    if *n == BigUint::from(2u8) {
        return Ok(MrOutcome::ProbablyPrime);
    }
    if n.is_even() {
        return Ok(MrOutcome::Composite);
    }
    if bases.is_empty() {
        return Err(Error::domain("Miller-Rabin needs at least one base"));
    }
    let upper = n - 2u8;
    for base in bases
        .iter()
        .filter(|b| **b >= BigUint::from(2u8) && **b <= upper)
    {
        if mr_round(n, base)? == MrOutcome::Composite {
            return Ok(MrOutcome::Composite);
        }
    }
    Ok(MrOutcome::ProbablyPrime)
}

pub fn default_bases() -> Vec<Natural> {
    DEFAULT_BASES.iter().map(|&b| Natural::from(b)).collect()
}

/// `count` bases drawn uniformly from `[2, n - 2]`. Empty when that range is empty.
pub fn random_bases<R: Rng + ?Sized>(n: &Natural, count: usize, rng: &mut R) -> Vec<Natural> {
    if *n < BigUint::from(5u8) {
        return Vec::new();
    }
    let low = BigUint::from(2u8);
    let high = n - 1u8;
    (0..count)
        .map(|_| rng.gen_biguint_range(&low, &high))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    fn is_prime_trial(n: u64) -> bool {
        n >= 2
            && (2..)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    fn modpow_oracle(b: u64, mut e: u64, m: u64) -> u64 {
        let mut acc = 1u128;
        let m = m as u128;
        let mut base = b as u128 % m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        acc as u64
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(
            decompose(&nat(13)).unwrap(),
            MrDecomposition { s: 2, t: nat(3) }
        );
        assert_eq!(
            decompose(&nat(561)).unwrap(),
            MrDecomposition { s: 4, t: nat(35) }
        );
        assert_eq!(
            decompose(&nat(3)).unwrap(),
            MrDecomposition { s: 1, t: nat(1) }
        );
        assert!(decompose(&nat(10)).is_err());
        assert!(decompose(&nat(1)).is_err());
    }

    #[test]
    fn decompose_reconstructs() {
        for n in (3..100_000u64).step_by(2) {
            let d = decompose(&nat(n)).unwrap();
            assert!(d.t.is_odd());
            assert_eq!((d.t << d.s) + 1u8, nat(n));
        }
    }

    #[test]
    fn round_examples() {
        // independent chain for 561 = 3 * 11 * 17: 2^35, then squarings
        let chain: Vec<u64> = (0..4).map(|i| modpow_oracle(2, 35 << i, 561)).collect();
        assert!(!chain.contains(&560));
        assert_eq!(mr_round(&nat(561), &nat(2)).unwrap(), MrOutcome::Composite);
        assert_eq!(
            mr_round(&nat(13), &nat(2)).unwrap(),
            MrOutcome::ProbablyPrime
        );
        assert_eq!(mr_round(&nat(9), &nat(2)).unwrap(), MrOutcome::Composite);
        assert!(mr_round(&nat(13), &nat(12)).is_err());
        assert!(mr_round(&nat(13), &nat(1)).is_err());
        assert!(mr_round(&nat(12), &nat(2)).is_err());
    }

    #[test]
    fn no_false_composites_below_10k() {
        for p in (3..=10_000u64).filter(|&p| is_prime_trial(p)) {
            for base in 2..=p - 2 {
                assert_eq!(
                    mr_round(&nat(p), &nat(base)).unwrap(),
                    MrOutcome::ProbablyPrime,
                    "p={p} base={base}"
                );
            }
        }
    }

    #[test]
    fn test_examples() {
        let bases = default_bases();
        assert_eq!(mr_test(&nat(2), &bases).unwrap(), MrOutcome::ProbablyPrime);
        assert_eq!(
            mr_test(&nat(100000000000031), &bases).unwrap(),
            MrOutcome::ProbablyPrime
        );
        assert_eq!(mr_test(&nat(561), &bases).unwrap(), MrOutcome::Composite);
        assert_eq!(mr_test(&nat(3), &bases).unwrap(), MrOutcome::ProbablyPrime);
        assert_eq!(mr_test(&nat(4), &bases).unwrap(), MrOutcome::Composite);
        assert!(mr_test(&nat(9), &[]).is_err());
        assert_eq!(mr_test(&nat(2), &[]).unwrap(), MrOutcome::ProbablyPrime);
        assert!(mr_test(&nat(1), &bases).is_err());
    }

    #[test]
    fn default_bases_match_trial_division() {
        let bases = default_bases();
        for n in 2..=200_000u64 {
            let want = if is_prime_trial(n) {
                MrOutcome::ProbablyPrime
            } else {
                MrOutcome::Composite
            };
            assert_eq!(mr_test(&nat(n), &bases).unwrap(), want, "n = {n}");
        }
    }

    #[test]
    fn word_and_big_rounds_agree() {
        // 2^89 - 1 is prime; times 2^89 + 1 gives a composite beyond u64
        let p = (Natural::one() << 89usize) - 1u8;
        let c = &p * ((Natural::one() << 89usize) + 1u8);
        for base in [2u64, 3, 5, 1234567] {
            assert_eq!(mr_round(&p, &nat(base)).unwrap(), MrOutcome::ProbablyPrime);
            assert_eq!(mr_round(&c, &nat(base)).unwrap(), MrOutcome::Composite);
        }
        // near the top of the word path
        let q = nat(18446744073709551557); // largest prime below 2^64
        for base in [2u64, 3, 5, 7, 11] {
            assert_eq!(mr_round(&q, &nat(base)).unwrap(), MrOutcome::ProbablyPrime);
        }
    }

    #[test]
    fn strong_pseudoprime_to_first_bases() {
        // 3215031751 is a strong pseudoprime to bases 2, 3, 5, 7
        let n = nat(3215031751);
        assert_eq!(
            mr_test(&n, &default_bases()[..4]).unwrap(),
            MrOutcome::ProbablyPrime
        );
        assert_eq!(mr_test(&n, &default_bases()).unwrap(), MrOutcome::Composite);
    }

    #[test]
    fn random_bases_in_range() {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let n = nat(1_000_003);
        let bases = random_bases(&n, 50, &mut rng);
        assert_eq!(bases.len(), 50);
        assert!(bases.iter().all(|b| *b >= nat(2) && *b <= nat(1_000_001)));
        assert!(random_bases(&nat(3), 5, &mut rng).is_empty());
        assert_eq!(mr_test(&n, &bases).unwrap(), MrOutcome::ProbablyPrime);
    }
}
