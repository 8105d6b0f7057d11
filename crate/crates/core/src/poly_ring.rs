//! Arithmetic in the quotient ring `Z_n[X] / (X^r - 1)`.
//!
//! An element is a dense vector of exactly `r` coefficients, entry `i`
//! holding the coefficient of `X^i`, each reduced into `[0, n)`. Products
//! are folded into slot `(i + j) mod r` as they are accumulated, so the
//! `2r - 1` coefficient intermediate of the unreduced product never exists
//! in memory. [`peak_intermediate_coefficients`] reports its size for the
//! storage model in [`crate::estimator`].
//!
//! Moduli that fit in a `u64` use machine words with `u128` accumulators;
//! anything larger falls back to `BigUint` coefficients.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Natural, Result};

#[derive(Clone, PartialEq, Eq)]
enum Coeffs {
    Word(Vec<u64>),
    Big(Vec<BigUint>),
}

#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    modulus: Natural,
    coeffs: Coeffs,
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingElement")
            .field("n", &self.modulus.to_string())
            .field("r", &self.degree())
            .field(
                "coefficients",
                &self
                    .coefficients()
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

fn check_ring(n: &Natural, r: usize) -> Result<()> {
    if *n < BigUint::from(2u8) {
        return Err(Error::domain("ring modulus n must be >= 2"));
    }
    if r < 1 {
        return Err(Error::domain("ring degree r must be >= 1"));
    }
    Ok(())
}

impl RingElement {
    /// Builds an element from `r` coefficients, reducing each modulo `n`.
    pub fn from_coefficients(coefficients: &[Natural], n: &Natural, r: usize) -> Result<Self> {
        check_ring(n, r)?;
        if coefficients.len() != r {
            return Err(Error::domain(format!(
                "expected {r} coefficients, got {}",
                coefficients.len()
            )));
        }
        let coeffs = match n.to_u64() {
            Some(m) => Coeffs::Word(
                coefficients
                    .iter()
                    .map(|c| (c % m).to_u64().expect("reduced below u64 modulus"))
                    .collect(),
            ),
            None => Coeffs::Big(coefficients.iter().map(|c| c % n).collect()),
        };
        Ok(RingElement {
            modulus: n.clone(),
            coeffs,
        })
    }

    fn zero(n: &Natural, r: usize) -> Self {
        let coeffs = if n.to_u64().is_some() {
            Coeffs::Word(vec![0; r])
        } else {
            Coeffs::Big(vec![BigUint::zero(); r])
        };
        RingElement {
            modulus: n.clone(),
            coeffs,
        }
    }

    /// Adds `value` (reduced mod n) to the coefficient of `X^index`.
    fn bump(&mut self, index: usize, value: &Natural) {
        match &mut self.coeffs {
            Coeffs::Word(c) => {
                let m = self.modulus.to_u64().unwrap();
                let v = (value % m).to_u64().unwrap();
                c[index] = ((c[index] as u128 + v as u128) % m as u128) as u64;
            }
            Coeffs::Big(c) => {
                c[index] = (&c[index] + value) % &self.modulus;
            }
        }
    }

    pub fn constant(value: &Natural, n: &Natural, r: usize) -> Result<Self> {
        check_ring(n, r)?;
        let mut e = Self::zero(n, r);
        e.bump(0, value);
        Ok(e)
    }

    pub fn one(n: &Natural, r: usize) -> Result<Self> {
        Self::constant(&Natural::one(), n, r)
    }

    /// `X + a`. In the degenerate ring `r = 1`, `X == 1` and this is the constant `1 + a`.
    pub fn linear(a: &Natural, n: &Natural, r: usize) -> Result<Self> {
        check_ring(n, r)?;
        let mut e = Self::zero(n, r);
        e.bump(0, a);
        e.bump(1 % r, &Natural::one());
        Ok(e)
    }

    /// `X^n + a` reduced modulo `X^r - 1` and `n`.
    pub fn rhs_reference(a: &Natural, n: &Natural, r: usize) -> Result<Self> {
        if r < 2 {
            return Err(Error::domain("rhs_reference needs r >= 2"));
        }
        check_ring(n, r)?;
        let mut e = Self::zero(n, r);
        let shift = (n % r).to_usize().expect("residue below r");
        e.bump(shift, &Natural::one());
        e.bump(0, a);
        Ok(e)
    }

    pub fn modulus(&self) -> &Natural {
        &self.modulus
    }

    /// The ring degree `r`, which is also the coefficient count.
    pub fn degree(&self) -> usize {
        match &self.coeffs {
            Coeffs::Word(c) => c.len(),
            Coeffs::Big(c) => c.len(),
        }
    }

    pub fn coefficients(&self) -> Vec<Natural> {
        match &self.coeffs {
            Coeffs::Word(c) => c.iter().map(|&v| Natural::from(v)).collect(),
            Coeffs::Big(c) => c.clone(),
        }
    }

    pub fn coefficient(&self, index: usize) -> Natural {
        match &self.coeffs {
            Coeffs::Word(c) => Natural::from(c[index]),
            Coeffs::Big(c) => c[index].clone(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.coeffs {
            Coeffs::Word(c) => c[0] == 1 && c[1..].iter().all(|&v| v == 0),
            Coeffs::Big(c) => c[0].is_one() && c[1..].iter().all(Zero::is_zero),
        }
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus || self.degree() != other.degree() {
            return Err(Error::RingMismatch {
                left_n: self.modulus.to_string(),
                left_r: self.degree(),
                right_n: other.modulus.to_string(),
                right_r: other.degree(),
            });
        }
        Ok(())
    }

    /// Coefficient-wise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let coeffs = match (&self.coeffs, &other.coeffs) {
            (Coeffs::Word(p), Coeffs::Word(q)) => {
                let m = self.modulus.to_u64().unwrap() as u128;
                Coeffs::Word(
                    p.iter()
                        .zip(q)
                        .map(|(&x, &y)| ((x as u128 + y as u128) % m) as u64)
                        .collect(),
                )
            }
            (Coeffs::Big(p), Coeffs::Big(q)) => Coeffs::Big(
                p.iter()
                    .zip(q)
                    .map(|(x, y)| (x + y) % &self.modulus)
                    .collect(),
            ),
            _ => unreachable!("equal moduli share a representation"),
        };
        Ok(RingElement {
            modulus: self.modulus.clone(),
            coeffs,
        })
    }

    /// Product in the ring, folding exponents modulo `r`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.mul_same_ring(other))
    }

    fn mul_same_ring(&self, other: &Self) -> Self {
        let coeffs = match (&self.coeffs, &other.coeffs) {
            (Coeffs::Word(p), Coeffs::Word(q)) => {
                Coeffs::Word(mul_words(p, q, self.modulus.to_u64().unwrap()))
            }
            (Coeffs::Big(p), Coeffs::Big(q)) => Coeffs::Big(mul_big(p, q, &self.modulus)),
            _ => unreachable!("equal moduli share a representation"),
        };
        RingElement {
            modulus: self.modulus.clone(),
            coeffs,
        }
    }

    /// `self * self`, using the symmetry of the product to halve the work.
    pub fn square(&self) -> Self {
        let coeffs = match &self.coeffs {
            Coeffs::Word(p) => Coeffs::Word(square_words(p, self.modulus.to_u64().unwrap())),
            Coeffs::Big(p) => Coeffs::Big(mul_big(p, p, &self.modulus)),
        };
        RingElement {
            modulus: self.modulus.clone(),
            coeffs,
        }
    }

    /// Left-to-right binary exponentiation: one squaring per exponent bit,
    /// plus one multiplication by `self` for each set bit.
    pub fn power(&self, exponent: &Natural) -> Self {
        if exponent.is_zero() {
            return Self::one(&self.modulus, self.degree()).expect("ring already validated");
        }
        let mut acc = self.clone();
        for bit in (0..exponent.bits() - 1).rev() {
            acc = acc.square();
            if exponent.bit(bit) {
                acc = acc.mul_same_ring(self);
            }
        }
        acc
    }
}

/// Whether `sum((n-1)^2)` over `r` terms fits in a `u128` without reduction.
fn lazy_reduction_ok(m: u64, r: usize) -> bool {
    let max = (m as u128 - 1) * (m as u128 - 1);
    max.checked_mul(r as u128).is_some()
}

fn nonzero_count(c: &[u64]) -> usize {
    c.iter().filter(|&&v| v != 0).count()
}

fn mul_words(p: &[u64], q: &[u64], m: u64) -> Vec<u64> {
    let r = p.len();
    // iterate over the sparser operand; (X + a) has two nonzero terms
    let (outer, inner) = if nonzero_count(p) <= nonzero_count(q) {
        (p, q)
    } else {
        (q, p)
    };
    let mut acc = vec![0u128; r];
    let lazy = lazy_reduction_ok(m, r);
    let m128 = m as u128;
    for (i, &x) in outer.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let x = x as u128;
        let (head, tail) = inner.split_at(r - i);
        let (low, high) = acc.split_at_mut(i);
        if lazy {
            for (slot, &y) in high.iter_mut().zip(head) {
                *slot += x * y as u128;
            }
            for (slot, &y) in low.iter_mut().zip(tail) {
                *slot += x * y as u128;
            }
        } else {
            for (slot, &y) in high.iter_mut().zip(head) {
                *slot += x * y as u128 % m128;
            }
            for (slot, &y) in low.iter_mut().zip(tail) {
                *slot += x * y as u128 % m128;
            }
        }
    }
    acc.into_iter().map(|v| (v % m128) as u64).collect()
}

fn square_words(p: &[u64], m: u64) -> Vec<u64> {
    let r = p.len();
    let lazy = lazy_reduction_ok(m, r);
    let m128 = m as u128;
    // cross terms p_i p_j with j > i, doubled at the end
    let mut acc = vec![0u128; r];
    for (i, &x) in p.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let x = x as u128;
        // j in (i, split) lands on i + j < r, j in [split, r) wraps
        let split = (r - i).max(i + 1);
        if split > i + 1 {
            let slots = &mut acc[2 * i + 1..i + split];
            if lazy {
                for (slot, &y) in slots.iter_mut().zip(&p[i + 1..split]) {
                    *slot += x * y as u128;
                }
            } else {
                for (slot, &y) in slots.iter_mut().zip(&p[i + 1..split]) {
                    *slot += x * y as u128 % m128;
                }
            }
        }
        let slots = &mut acc[i + split - r..i];
        if lazy {
            for (slot, &y) in slots.iter_mut().zip(&p[split..]) {
                *slot += x * y as u128;
            }
        } else {
            for (slot, &y) in slots.iter_mut().zip(&p[split..]) {
                *slot += x * y as u128 % m128;
            }
        }
    }
    for v in acc.iter_mut() {
        *v = 2 * if lazy { *v } else { *v % m128 };
    }
    for (i, &x) in p.iter().enumerate() {
        let sq = x as u128 * x as u128;
        acc[(2 * i) % r] += if lazy { sq } else { sq % m128 };
    }
    acc.into_iter().map(|v| (v % m128) as u64).collect()
}

fn mul_big(p: &[BigUint], q: &[BigUint], m: &BigUint) -> Vec<BigUint> {
    let r = p.len();
    let mut acc = vec![BigUint::zero(); r];
    for (i, x) in p.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in q.iter().enumerate() {
            if !y.is_zero() {
                acc[(i + j) % r] += x * y;
            }
        }
    }
    acc.into_iter().map(|v| v % m).collect()
}

/// Checks `(X + a)^n == X^n + a` in `Z_n[X] / (X^r - 1)`.
pub fn congruence_holds(a: &Natural, n: &Natural, r: usize) -> Result<bool> {
    if r < 2 {
        return Err(Error::domain("congruence check needs r >= 2"));
    }
    let lhs = RingElement::linear(a, n, r)?.power(n);
    let rhs = RingElement::rhs_reference(a, n, r)?;
    Ok(lhs == rhs)
}

/// Coefficient count of the unreduced square of a degree `r - 1` polynomial: `2r - 1`.
pub fn peak_intermediate_coefficients(r: &Natural) -> Result<Natural> {
    if r.is_zero() {
        return Err(Error::domain("ring degree r must be >= 1"));
    }
    Ok(r * 2u8 - 1u8)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    fn el(coeffs: &[u64], n: u64, r: usize) -> RingElement {
        let c: Vec<Natural> = coeffs.iter().map(|&v| nat(v)).collect();
        RingElement::from_coefficients(&c, &nat(n), r).unwrap()
    }

    fn words(e: &RingElement) -> Vec<u64> {
        e.coefficients()
            .iter()
            .map(|c| c.to_u64().unwrap())
            .collect()
    }

    #[test]
    fn linear_examples() {
        assert_eq!(
            words(&RingElement::linear(&nat(1), &nat(3), 2).unwrap()),
            [1, 1]
        );
        assert_eq!(
            words(&RingElement::linear(&nat(5), &nat(3), 4).unwrap()),
            [2, 1, 0, 0]
        );
        assert_eq!(
            words(&RingElement::linear(&nat(0), &nat(7), 3).unwrap()),
            [0, 1, 0]
        );
        // r = 1: X == 1
        assert_eq!(
            words(&RingElement::linear(&nat(4), &nat(7), 1).unwrap()),
            [5]
        );
        assert!(RingElement::linear(&nat(1), &nat(1), 3).is_err());
        assert!(RingElement::linear(&nat(1), &nat(5), 0).is_err());
    }

    #[test]
    fn multiply_examples() {
        let x1 = el(&[1, 1], 3, 2);
        assert_eq!(words(&x1.multiply(&el(&[1, 0], 3, 2)).unwrap()), [1, 1]);
        assert_eq!(words(&x1.multiply(&x1).unwrap()), [2, 2]);
        let x = el(&[0, 1], 5, 2);
        assert_eq!(words(&x.multiply(&x).unwrap()), [1, 0]);
    }

    #[test]
    fn multiply_rejects_mismatched_rings() {
        let a = el(&[1, 1], 3, 2);
        assert!(matches!(
            a.multiply(&el(&[1, 1], 5, 2)),
            Err(Error::RingMismatch { .. })
        ));
        assert!(matches!(
            a.multiply(&el(&[1, 1, 0], 3, 3)),
            Err(Error::RingMismatch { .. })
        ));
        assert!(a.add(&el(&[1, 1, 0], 3, 3)).is_err());
    }

    #[test]
    fn power_examples() {
        let x1 = el(&[1, 1], 3, 2);
        assert!(x1.power(&nat(0)).is_one());
        assert_eq!(words(&x1.power(&nat(3))), [1, 1]);
        assert_eq!(words(&el(&[1, 1, 0], 4, 3).power(&nat(4))), [1, 1, 2]);
    }

    #[test]
    fn rhs_examples() {
        assert_eq!(
            words(&RingElement::rhs_reference(&nat(1), &nat(3), 2).unwrap()),
            [1, 1]
        );
        assert_eq!(
            words(&RingElement::rhs_reference(&nat(1), &nat(4), 3).unwrap()),
            [1, 1, 0]
        );
        assert_eq!(
            words(&RingElement::rhs_reference(&nat(2), &nat(6), 3).unwrap()),
            [3, 0, 0]
        );
        assert!(RingElement::rhs_reference(&nat(2), &nat(6), 1).is_err());
    }

    #[test]
    fn congruence_examples() {
        assert!(congruence_holds(&nat(1), &nat(3), 2).unwrap());
        assert!(!congruence_holds(&nat(1), &nat(4), 3).unwrap());
        assert!(congruence_holds(&nat(1), &nat(7), 3).unwrap());
        assert!(congruence_holds(&nat(1), &nat(7), 1).is_err());
    }

    #[test]
    fn peak_coefficients() {
        assert_eq!(peak_intermediate_coefficients(&nat(1)).unwrap(), nat(1));
        assert_eq!(
            peak_intermediate_coefficients(&nat(1024)).unwrap(),
            nat(2047)
        );
        let r = nat(1024).pow(5);
        assert_eq!(peak_intermediate_coefficients(&r).unwrap(), r * 2u8 - 1u8);
        assert!(peak_intermediate_coefficients(&nat(0)).is_err());
    }

    #[test]
    fn non_lazy_word_path_matches_big_path() {
        // m close to 2^64 forces per-product reduction
        let m = u64::MAX - 58; // 2^64 - 59, prime
        let r = 5;
        let a = el(&[m - 1, m - 2, 3, m - 4, 5], m, r);
        let b = el(&[7, m - 8, m - 9, 10, m - 11], m, r);
        let got = a.multiply(&b).unwrap();
        let big = mul_big(&a.coefficients(), &b.coefficients(), &nat(m));
        assert_eq!(got.coefficients(), big);
        assert_eq!(
            a.square().coefficients(),
            mul_big(&a.coefficients(), &a.coefficients(), &nat(m))
        );
    }

    #[test]
    fn big_modulus_freshmans_dream() {
        // 2^89 - 1 is a Mersenne prime
        let p = (Natural::one() << 89usize) - 1u8;
        for r in [2usize, 3, 7] {
            assert!(congruence_holds(&nat(5), &p, r).unwrap());
        }
        // composite with a big modulus: (2^89 - 1) * 3
        let c = &p * 3u8;
        assert!(!congruence_holds(&nat(1), &c, 5).unwrap());
    }
}
