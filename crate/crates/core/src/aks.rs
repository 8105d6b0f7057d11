//! The six-step AKS primality test.
//!
//! 1. `n = a^b` with `b > 1` → composite.
//! 2. Find the least `r` with `ord_r(n) > log^2 n`.
//! 3. `1 < gcd(a, n) < n` for some `a <= r` → composite.
//! 4. `n <= r` → prime.
//! 5. For `a = 1 ..= floor(sqrt(phi(r)) log n)`, `(X + a)^n != X^n + a (mod X^r - 1, n)` → composite.
//! 6. Prime.
//!
//! `log n` is taken as `bit_length(n)`, so the step-2 threshold is
//! `bit_length(n)^2` and the step-5 limit is [`witness_bound`]. Both
//! over-approximate the real-valued quantities, which only makes the test
//! check more.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::number_theory::{
    bit_length, is_perfect_power, multiplicative_order, witness_bound, PerfectPowerWitness,
};
use crate::poly_ring::congruence_holds;
use crate::{Error, Natural, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Prime,
    Composite,
}

/// Evidence attached to a composite verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompositeWitness {
    /// Step 1: `n == base^exponent`.
    PerfectPower(PerfectPowerWitness),
    /// Step 3: `1 < gcd(a, n) < n`; holds the `a` that was found.
    SharedFactor(Natural),
    /// Step 5: the congruence fails for this `a`.
    Congruence(Natural),
}

impl CompositeWitness {
    fn step(&self) -> u8 {
        match self {
            CompositeWitness::PerfectPower(_) => 1,
            CompositeWitness::SharedFactor(_) => 3,
            CompositeWitness::Congruence(_) => 5,
        }
    }
}

/// Outcome of [`aks_test`], tagged with the step that decided it.
///
/// Composite verdicts always carry a witness; prime verdicts never do.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    outcome: Outcome,
    deciding_step: u8,
    detail: Option<CompositeWitness>,
}

impl Verdict {
    fn composite(witness: CompositeWitness) -> Self {
        Verdict {
            outcome: Outcome::Composite,
            deciding_step: witness.step(),
            detail: Some(witness),
        }
    }

    fn prime(step: u8) -> Self {
        debug_assert!(step == 4 || step == 6);
        Verdict {
            outcome: Outcome::Prime,
            deciding_step: step,
            detail: None,
        }
    }

    pub fn outcome(&self) -> Outcome {
        self.outcome
    }

    pub fn is_prime(&self) -> bool {
        self.outcome == Outcome::Prime
    }

    /// Which of steps 1 to 6 produced the outcome.
    pub fn deciding_step(&self) -> u8 {
        self.deciding_step
    }

    pub fn detail(&self) -> Option<&CompositeWitness> {
        self.detail.as_ref()
    }
}

/// Bookkeeping from a run. `chosen_r` and `witness_count` are `None` when
/// step 1 decides before they are computed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AksTrace {
    pub chosen_r: Option<Natural>,
    /// Upper limit of the step-5 loop, `None` if step 5 was never reached.
    pub witness_count: Option<Natural>,
    pub witnesses_checked: Natural,
}

/// Emitted once per step-5 witness by [`aks_test_verbose`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgressEvent {
    pub step: u8,
    pub a: Natural,
    pub total: Natural,
}

fn check_input(n: &Natural) -> Result<()> {
    if *n < BigUint::from(2u8) {
        return Err(Error::domain("n must exceed 1"));
    }
    Ok(())
}

/// Least `r >= 2` with `gcd(n, r) == 1` and `ord_r(n) > bit_length(n)^2`.
pub fn find_r(n: &Natural) -> Result<Natural> {
    check_input(n)?;
    let bits = bit_length(n)?;
    let threshold = Natural::from(bits) * bits;
    let mut r = BigUint::from(2u8);
    loop {
        if let Some(order) = multiplicative_order(n, &r)? {
            if order > threshold {
                return Ok(r);
            }
        }
        r += 1u8;
    }
}

/// Runs the test, deciding `n`.
pub fn aks_test(n: &Natural) -> Result<(Verdict, AksTrace)> {
    run(n, |_| Ok(()))
}

/// As [`aks_test`], calling `sink` before each step-5 congruence check.
/// An error from `sink` stops the run and comes back as [`Error::Aborted`].
pub fn aks_test_verbose<F>(n: &Natural, sink: F) -> Result<(Verdict, AksTrace)>
where
    F: FnMut(&ProgressEvent) -> std::result::Result<(), Box<dyn std::error::Error + Send + Sync>>,
{
    run(n, sink)
}

fn run<F>(n: &Natural, mut sink: F) -> Result<(Verdict, AksTrace)>
where
    F: FnMut(&ProgressEvent) -> std::result::Result<(), Box<dyn std::error::Error + Send + Sync>>,
{
    check_input(n)?;
    let mut trace = AksTrace::default();

    // step 1
    if let Some(witness) = is_perfect_power(n)? {
        return Ok((
            Verdict::composite(CompositeWitness::PerfectPower(witness)),
            trace,
        ));
    }

    // step 2
    let r = find_r(n)?;
    trace.chosen_r = Some(r.clone());

    // step 3
    let mut a = BigUint::from(2u8);
    while a <= r {
        let g = num_integer::Integer::gcd(&a, n);
        if !g.is_one() && g < *n {
            return Ok((Verdict::composite(CompositeWitness::SharedFactor(a)), trace));
        }
        a += 1u8;
    }

    // step 4
    if *n <= r {
        return Ok((Verdict::prime(4), trace));
    }

    // step 5
    let ring_degree = r
        .to_usize()
        .ok_or_else(|| Error::domain(format!("r = {r} does not fit in memory")))?;
    let bound = witness_bound(&r, n)?;
    trace.witness_count = Some(bound.clone());
    let mut a = BigUint::one();
    while a <= bound {
        sink(&ProgressEvent {
            step: 5,
            a: a.clone(),
            total: bound.clone(),
        })
        .map_err(Error::Aborted)?;
        trace.witnesses_checked = a.clone();
        if !congruence_holds(&a, n, ring_degree)? {
            return Ok((Verdict::composite(CompositeWitness::Congruence(a)), trace));
        }
        a += 1u8;
    }

    // step 6
    Ok((Verdict::prime(6), trace))
}
