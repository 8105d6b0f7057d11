//! Audits a chosen `(n, r)` pair against the order condition
//! `ord_r(n) > bit_length(n)^2` that `r` must meet before the congruence
//! step can be trusted.

use num_bigint::BigUint;
use num_integer::Integer;

use crate::number_theory::{bit_length, multiplicative_order};
use crate::parse::parse_natural;
use crate::{Error, Natural, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub n: Natural,
    pub r: Natural,
    pub n_bit_length: u64,
    /// `ord_r(n)`, absent when `gcd(n, r) > 1`.
    pub order: Option<Natural>,
    /// `n_bit_length^2`.
    pub required_threshold: Natural,
    pub valid: bool,
    pub reason: String,
}

/// Builds the report for one pair. An unsuitable `r` is a finding, not an error.
pub fn validate(n: &Natural, r: &Natural) -> Result<ValidationReport> {
    let two = BigUint::from(2u8);
    if *n < two || *r < two {
        return Err(Error::domain("validate needs n >= 2 and r >= 2"));
    }
    let bits = bit_length(n)?;
    let threshold = Natural::from(bits) * bits;
    let order = multiplicative_order(n, r)?;
    let (valid, reason) = match &order {
        Some(k) if *k > threshold => (true, format!("ord={k} > {threshold}")),
        Some(k) => (false, format!("ord={k} ≤ {threshold}")),
        None => {
            let shared = n.gcd(r);
            (
                false,
                format!("gcd(n, r)={shared}: shared factor, order undefined"),
            )
        }
    };
    Ok(ValidationReport {
        n: n.clone(),
        r: r.clone(),
        n_bit_length: bits,
        order,
        required_threshold: threshold,
        valid,
        reason,
    })
}

/// One report per pair, in input order. Stops at the first pair outside
/// the domain, reporting its zero-based index.
pub fn audit_batch(pairs: &[(Natural, Natural)]) -> Result<Vec<ValidationReport>> {
    pairs
        .iter()
        .enumerate()
        .map(|(index, (n, r))| {
            validate(n, r).map_err(|e| Error::BatchPair {
                index,
                source: Box::new(e),
            })
        })
        .collect()
}

/// Parses the batch format: one `n r` pair per line, blank lines and
/// `#` comments ignored. Numbers accept the same syntax as [`parse_natural`].
pub fn parse_pairs(text: &str) -> Result<Vec<(Natural, Natural)>> {
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::BatchLine {
                line,
                reason: format!(
                    "expected two numbers \"n r\", found {} fields",
                    fields.len()
                ),
            });
        }
        let parse = |s: &str| {
            parse_natural(s).map_err(|e| Error::BatchLine {
                line,
                reason: e.to_string(),
            })
        };
        pairs.push((parse(fields[0])?, parse(fields[1])?));
    }
    Ok(pairs)
}
