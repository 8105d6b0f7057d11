//! Storage model for the polynomial congruence step.
//!
//! Repeated squaring of a degree `r - 1` polynomial produces a degree
//! `2r - 2` intermediate, i.e. `2r - 1` coefficients, each as wide as the
//! input. The model charges the full intermediate at full width:
//!
//! ```text
//! bits = (2r - 1) * input_bits
//! ```
//!
//! with `r = input_bits^5 * k` for the proven bound on `r`, and
//! `r = input_bits^2 * k` for the regime conjectured under Artin's
//! conjecture. Miller-Rabin is charged a fixed number of working residues.
//! Everything up to `storage_bytes` is exact integer arithmetic; floats
//! appear only in the human-readable rendering.

use std::fmt;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::poly_ring::peak_intermediate_coefficients;
use crate::{Error, Natural, Result};

/// Residues held live by one Miller-Rabin run (base, accumulator, modulus, `t`, scratch).
pub const MR_WORKING_RESIDUES: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioKind {
    AksUnconditional,
    AksArtin,
    MillerRabin,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 3] = [
        ScenarioKind::AksUnconditional,
        ScenarioKind::AksArtin,
        ScenarioKind::MillerRabin,
    ];

    /// Exponent `e` in `r = input_bits^e * k`; `None` for Miller-Rabin.
    pub fn r_exponent(self) -> Option<u32> {
        match self {
            ScenarioKind::AksUnconditional => Some(5),
            ScenarioKind::AksArtin => Some(2),
            ScenarioKind::MillerRabin => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::AksUnconditional => "AKS_UNCONDITIONAL",
            ScenarioKind::AksArtin => "AKS_ARTIN",
            ScenarioKind::MillerRabin => "MILLER_RABIN",
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub kind: ScenarioKind,
    /// Multiplier on `r`; ignored for Miller-Rabin.
    pub k: Natural,
}

impl Scenario {
    pub fn new(kind: ScenarioKind, k: Natural) -> Self {
        Scenario { kind, k }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResourceEstimate {
    pub scenario: ScenarioKind,
    pub input_bits: Natural,
    pub r_value: Option<Natural>,
    pub storage_bits: Natural,
    /// `ceil(storage_bits / 8)`.
    pub storage_bytes: Natural,
    pub human_readable: String,
}

/// `(2r - 1) * input_bits`.
pub fn aks_storage_bits(input_bits: &Natural, r: &Natural) -> Result<Natural> {
    if input_bits.is_zero() {
        return Err(Error::domain("input_bits must be >= 1"));
    }
    Ok(peak_intermediate_coefficients(r)? * input_bits)
}

pub fn estimate(scenario: &Scenario, input_bits: &Natural) -> Result<ResourceEstimate> {
    if input_bits.is_zero() {
        return Err(Error::domain("input_bits must be >= 1"));
    }
    let (r_value, storage_bits) = match scenario.kind.r_exponent() {
        Some(exp) => {
            if scenario.k.is_zero() {
                return Err(Error::domain("k must be >= 1"));
            }
            let r = input_bits.pow(exp) * &scenario.k;
            let bits = aks_storage_bits(input_bits, &r)?;
            (Some(r), bits)
        }
        None => (None, input_bits * MR_WORKING_RESIDUES),
    };
    let storage_bytes = storage_bits.div_ceil(&Natural::from(8u8));
    let human_readable = format_bytes(&storage_bytes);
    Ok(ResourceEstimate {
        scenario: scenario.kind,
        input_bits: input_bits.clone(),
        r_value,
        storage_bits,
        storage_bytes,
        human_readable,
    })
}

/// All three scenarios for one input size, in [`ScenarioKind::ALL`] order.
pub fn compare_table(input_bits: &Natural, k: &Natural) -> Result<Vec<ResourceEstimate>> {
    ScenarioKind::ALL
        .iter()
        .map(|&kind| estimate(&Scenario::new(kind, k.clone()), input_bits))
        .collect()
}

const BINARY_UNITS: [&str; 9] = ["B", "KiB", "MiB", "GiB", "TiB", "PiB", "EiB", "ZiB", "YiB"];

/// Renders a byte count as `"<binary figure> (<decimal GB figure> GB)"`,
/// e.g. `"256.00 MiB (2.684e-1 GB)"`.
pub fn format_bytes(bytes: &Natural) -> String {
    let gb = bytes.to_f64().unwrap_or(f64::INFINITY) / 1e9;
    format!("{} ({:.3e} GB)", format_binary(bytes), gb)
}

fn format_binary(bytes: &Natural) -> String {
    if let Some(small) = bytes.to_u64().filter(|&b| b < 1024) {
        return format!("{small} B");
    }
    let mut value = bytes.to_f64().unwrap_or(f64::INFINITY);
    let mut unit = 0;
    while value >= 1024.0 && unit + 1 < BINARY_UNITS.len() {
        value /= 1024.0;
        unit += 1;
    }
    format!("{value:.2} {}", BINARY_UNITS[unit])
}

/// Reads back the binary figure of a [`format_bytes`] string, in bytes.
pub fn parse_binary_figure(text: &str) -> Option<f64> {
    let mut parts = text.split_whitespace();
    let value: f64 = parts.next()?.parse().ok()?;
    let unit = parts.next()?;
    let power = BINARY_UNITS.iter().position(|u| *u == unit)?;
    Some(value * 1024f64.powi(power as i32))
}

/// Reads back the decimal-GB figure of a [`format_bytes`] string.
pub fn parse_decimal_gb(text: &str) -> Option<f64> {
    let open = text.find('(')?;
    let inner = text[open + 1..].strip_suffix(" GB)")?;
    inner.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    fn one() -> Natural {
        nat(1)
    }

    #[test]
    fn storage_bits_examples() {
        let r = nat(1024).pow(5);
        let want = nat(2) * nat(1024).pow(6) - 1024u32;
        assert_eq!(aks_storage_bits(&nat(1024), &r).unwrap(), want);
        let r = nat(1024).pow(2);
        assert_eq!(
            aks_storage_bits(&nat(1024), &r).unwrap(),
            (nat(2) * &r - 1u8) * 1024u32
        );
        assert_eq!(aks_storage_bits(&one(), &one()).unwrap(), one());
        assert!(aks_storage_bits(&nat(0), &one()).is_err());
        assert!(aks_storage_bits(&one(), &nat(0)).is_err());
    }

    #[test]
    fn unconditional_1024() {
        let e = estimate(
            &Scenario::new(ScenarioKind::AksUnconditional, one()),
            &nat(1024),
        )
        .unwrap();
        assert_eq!(e.r_value, Some(nat(1024).pow(5)));
        assert_eq!(e.storage_bytes, (one() << 58usize) - 128u32);
        let gb = parse_decimal_gb(&e.human_readable).unwrap();
        assert!((1e8..=1e9).contains(&gb), "{}", e.human_readable);
    }

    #[test]
    fn artin_1024() {
        let e = estimate(&Scenario::new(ScenarioKind::AksArtin, one()), &nat(1024)).unwrap();
        assert_eq!(e.storage_bytes, (one() << 28usize) - 128u32);
        assert!(
            e.human_readable.starts_with("256.00 MiB"),
            "{}",
            e.human_readable
        );
    }

    #[test]
    fn miller_rabin_1024() {
        let e = estimate(&Scenario::new(ScenarioKind::MillerRabin, one()), &nat(1024)).unwrap();
        assert_eq!(e.r_value, None);
        assert_eq!(e.storage_bits, nat(8192));
        assert_eq!(e.storage_bytes, nat(1024));
        assert!(e.human_readable.starts_with("1.00 KiB"));
    }

    #[test]
    fn degenerate_table() {
        let rows = compare_table(&one(), &one()).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].storage_bits, one());
        assert_eq!(rows[0].storage_bytes, one());
        assert_eq!(rows[0].human_readable, "1 B (1.000e-9 GB)");
        assert_eq!(rows[2].storage_bits, nat(8));
        assert!(compare_table(&nat(0), &one()).is_err());
        assert!(compare_table(&one(), &nat(0)).is_err());
    }

    #[test]
    fn table_for_47_bits() {
        let rows = compare_table(&nat(47), &one()).unwrap();
        let kinds: Vec<_> = rows.iter().map(|e| e.scenario).collect();
        assert_eq!(kinds, ScenarioKind::ALL);
        assert_eq!(rows[0].storage_bits, (nat(2) * nat(47).pow(5) - 1u8) * 47u8);
        assert_eq!(rows[1].storage_bits, (nat(2) * nat(47).pow(2) - 1u8) * 47u8);
        assert_eq!(rows[2].storage_bits, nat(8 * 47));
    }

    #[test]
    fn monotone_in_bits_and_k() {
        for kind in ScenarioKind::ALL {
            let mut prev = None;
            for bits in 1..=300u64 {
                let e = estimate(&Scenario::new(kind, one()), &nat(bits)).unwrap();
                if let Some(p) = prev {
                    assert!(e.storage_bits > p);
                }
                prev = Some(e.storage_bits);
            }
        }
        for kind in [ScenarioKind::AksUnconditional, ScenarioKind::AksArtin] {
            let bits = nat(64);
            let a = estimate(&Scenario::new(kind, nat(3)), &bits).unwrap();
            let b = estimate(&Scenario::new(kind, nat(4)), &bits).unwrap();
            assert!(b.storage_bits > a.storage_bits);
        }
    }

    #[test]
    fn binary_figure_round_trips_within_one_percent() {
        let mut v = nat(1);
        for _ in 0..200 {
            let text = format_bytes(&v);
            let back = parse_binary_figure(&text).unwrap();
            let exact = v.to_f64().unwrap();
            assert!((back - exact).abs() <= exact * 0.01, "{text} vs {exact}");
            v = v * 7u8 / 3u8 + 1u8;
        }
    }
}
