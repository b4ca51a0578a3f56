//! Line-oriented network documents.
//!
//! Each non-empty line is `tail head weight`, separated by whitespace. `#`
//! starts a comment. Weights are decimals (`0.25`, `2.5e-1`) or fractions
//! (`1/4`). The position of an arc line among all arc lines is its index.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;
use suptree_core::{BigRational, NetworkError, PhyloNetwork, RawNetwork};

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: '{literal}' is not a decimal or p/q weight")]
    Weight { line: usize, literal: String },
    #[error(transparent)]
    Invalid(#[from] NetworkError),
}

impl ParseError {
    /// True for malformed text, false when the text parsed but does not
    /// describe a valid network.
    pub fn is_syntax(&self) -> bool {
        !matches!(self, ParseError::Invalid(_))
    }
}

/// Parses a weight literal. Range is not checked here.
pub fn parse_weight(literal: &str) -> Option<BigRational> {
    if let Some((p, q)) = literal.split_once('/') {
        let p = parse_integer(p)?;
        let q = parse_integer(q)?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    parse_decimal(literal)
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let scale = exponent.checked_sub(i32::try_from(frac.len()).ok()?)?;
    if scale.unsigned_abs() > 10_000 {
        return None;
    }
    let ten = BigInt::from(10u32);
    let pow = num_traits::pow(ten, scale.unsigned_abs() as usize);
    let mut value = if scale >= 0 {
        BigRational::from_integer(digits * pow)
    } else {
        BigRational::new(digits, pow)
    };
    if negative {
        value = -value;
    }
    Some(value)
}

/// Parses the arc list without checking network structure.
pub fn parse_raw(text: &str) -> Result<RawNetwork, ParseError> {
    let mut raw = RawNetwork::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = line.split_once('#').map_or(line, |(c, _)| c);
        let fields: Vec<&str> = content.split_whitespace().collect();
        match fields.as_slice() {
            [] => continue,
            [tail, head, weight] => {
                let w = parse_weight(weight).ok_or_else(|| ParseError::Weight {
                    line: line_no,
                    literal: weight.to_string(),
                })?;
                raw.add_arc(tail, head, w);
            }
            _ => {
                return Err(ParseError::Syntax {
                    line: line_no,
                    message: format!(
                        "expected 'tail head weight', found {} field(s)",
                        fields.len()
                    ),
                })
            }
        }
    }
    Ok(raw)
}

pub fn parse_network(text: &str) -> Result<PhyloNetwork, ParseError> {
    Ok(PhyloNetwork::try_from(parse_raw(text)?)?)
}

/// Arcs in index order with exact fractional weights.
pub fn serialize_network(network: &PhyloNetwork) -> String {
    let mut out = String::new();
    for arc in network.arcs() {
        let _ = writeln!(
            out,
            "{} {} {}",
            network.label(arc.tail),
            network.label(arc.head),
            arc.weight
        );
    }
    out
}
