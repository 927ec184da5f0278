//! Phase literals: plain radians (`1.5`, `-2e-3`) or exact rational
//! multiples of π (`pi`, `0.5pi`, `-3/4pi`, `3pi/4`, `pi/2`).

use std::f64::consts::PI;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PhaseParseError {
    #[error("empty phase")]
    Empty,
    #[error("malformed phase {0:?}: expected radians or a multiple of pi such as 0.5pi or 3pi/4")]
    Malformed(String),
    #[error("phase {0:?} has too many digits for an exact multiple of pi")]
    Overflow(String),
    #[error("phase {0:?} divides by zero")]
    ZeroDenominator(String),
    #[error("phase {0:?} is not finite")]
    NotFinite(String),
}

/// Exact rational n/d with d > 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Ratio {
    num: i64,
    den: i64,
}

impl Ratio {
    fn new(num: i64, den: i64) -> Self {
        let g = num.gcd(&den).max(1);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    fn div(self, rhs: i64) -> Option<Self> {
        Some(Ratio::new(self.num, self.den.checked_mul(rhs)?))
    }

    fn times_pi(self) -> f64 {
        PI * self.num as f64 / self.den as f64
    }
}

const MAX_DIGITS: usize = 15;

fn parse_unsigned_decimal(text: &str, original: &str) -> Result<Ratio, PhaseParseError> {
    let malformed = || PhaseParseError::Malformed(original.to_string());
    let (int_part, frac_part) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(malformed());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(malformed());
    }
    let digits = format!("{int_part}{frac_part}");
    let significant = digits.trim_start_matches('0');
    if significant.len() > MAX_DIGITS || frac_part.len() > MAX_DIGITS {
        return Err(PhaseParseError::Overflow(original.to_string()));
    }
    let num: i64 = if significant.is_empty() {
        0
    } else {
        significant.parse().map_err(|_| malformed())?
    };
    Ok(Ratio::new(num, 10i64.pow(frac_part.len() as u32)))
}

fn parse_unsigned_integer(text: &str, original: &str) -> Result<i64, PhaseParseError> {
    if text.is_empty() || !text.chars().all(|c| c.is_ascii_digit()) {
        return Err(PhaseParseError::Malformed(original.to_string()));
    }
    if text.trim_start_matches('0').len() > MAX_DIGITS {
        return Err(PhaseParseError::Overflow(original.to_string()));
    }
    text.parse().map_err(|_| PhaseParseError::Malformed(original.to_string()))
}

/// Coefficient before `pi`: empty, a decimal, or `n/d`.
fn parse_coefficient(text: &str, original: &str) -> Result<Ratio, PhaseParseError> {
    if text.is_empty() {
        return Ok(Ratio::new(1, 1));
    }
    match text.split_once('/') {
        Some((n, d)) => {
            let n = parse_unsigned_decimal(n, original)?;
            let d = parse_unsigned_integer(d, original)?;
            if d == 0 {
                return Err(PhaseParseError::ZeroDenominator(original.to_string()));
            }
            n.div(d).ok_or_else(|| PhaseParseError::Overflow(original.to_string()))
        }
        None => parse_unsigned_decimal(text, original),
    }
}

/// Parses a phase in radians.
pub fn parse_phase(input: &str) -> Result<f64, PhaseParseError> {
    let trimmed = input.trim();
    if trimmed.is_empty() {
        return Err(PhaseParseError::Empty);
    }
    let lower = trimmed.to_ascii_lowercase().replace('π', "pi");
    let Some(pos) = lower.find("pi") else {
        // plain radians; reject words like "inf" and "nan" that f64 accepts
        if !lower.chars().all(|c| c.is_ascii_digit() || "+-.e".contains(c)) {
            return Err(PhaseParseError::Malformed(input.to_string()));
        }
        let value: f64 = lower
            .parse()
            .map_err(|_| PhaseParseError::Malformed(input.to_string()))?;
        return if value.is_finite() {
            Ok(value)
        } else {
            Err(PhaseParseError::NotFinite(input.to_string()))
        };
    };

    let (head, tail) = (&lower[..pos], &lower[pos + 2..]);
    let (negative, coefficient) = match head.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, head.strip_prefix('+').unwrap_or(head)),
    };
    let mut ratio = parse_coefficient(coefficient, input)?;
    if !tail.is_empty() {
        let den = tail
            .strip_prefix('/')
            .ok_or_else(|| PhaseParseError::Malformed(input.to_string()))?;
        let den = parse_unsigned_integer(den, input)?;
        if den == 0 {
            return Err(PhaseParseError::ZeroDenominator(input.to_string()));
        }
        ratio = ratio
            .div(den)
            .ok_or_else(|| PhaseParseError::Overflow(input.to_string()))?;
    }
    let value = ratio.times_pi();
    Ok(if negative { -value } else { value })
}
