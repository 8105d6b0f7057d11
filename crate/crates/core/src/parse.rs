use num_traits::Num;

use crate::{Error, Natural, Result};

/// Parses a decimal number, or hexadecimal with a `0x`/`0X` prefix.
/// Underscores are allowed between digits (`1_000_003`, `0xff_ff`).
pub fn parse_natural(text: &str) -> Result<Natural> {
    let err = |reason: &str| Error::Parse {
        input: text.to_string(),
        reason: reason.to_string(),
    };
    let trimmed = text.trim();
    let (digits, radix) = match trimmed
        .strip_prefix("0x")
        .or_else(|| trimmed.strip_prefix("0X"))
    {
        Some(hex) => (hex, 16),
        None => (trimmed, 10),
    };
    if digits.is_empty() {
        return Err(err("no digits"));
    }
    if digits.starts_with('_') || digits.ends_with('_') || digits.contains("__") {
        return Err(err("misplaced digit separator"));
    }
    let cleaned: String = digits.chars().filter(|&c| c != '_').collect();
    if !cleaned.chars().all(|c| c.is_digit(radix)) {
        return Err(err(if radix == 16 {
            "invalid hex digit"
        } else {
            "invalid decimal digit"
        }));
    }
    Natural::from_str_radix(&cleaned, radix).map_err(|e| err(&e.to_string()))
}
