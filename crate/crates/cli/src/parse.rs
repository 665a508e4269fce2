//! Parsers for polynomial, label and rational arguments.

use depthforge::exactla::{parse_rational, Rational};
use depthforge::periodpoly::BivarPoly;
use depthforge::repcalc::IrrepLabel;
use num_traits::One;

/// Parses a sum of terms `c*x^a*y^b`. The coefficient may be omitted or
/// parenthesized, and `x`, `y` alone mean exponent 1. All terms must share
/// one total degree.
pub fn parse_poly(s: &str) -> Result<BivarPoly, String> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty polynomial".into());
    }
    if compact == "0" {
        return Err("the zero polynomial has no degree; pass a nonzero polynomial".into());
    }
    let mut terms = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in compact.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1).ok_or("unbalanced parentheses")?,
            '+' | '-' if depth == 0 && i > start && !compact[..i].ends_with(['*', '^']) => {
                terms.push(&compact[start..i]);
                start = i;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err("unbalanced parentheses".into());
    }
    terms.push(&compact[start..]);

    let mut parsed = Vec::new();
    for t in terms {
        parsed.push(parse_term(t)?);
    }
    let degree = parsed[0].0 + parsed[0].1;
    let mut f = BivarPoly::zero(degree);
    for (a, b, c) in parsed {
        if a + b != degree {
            return Err(format!("term x^{a}*y^{b} is not of degree {degree}"));
        }
        f.add_term(a, c);
    }
    Ok(f)
}

fn parse_term(t: &str) -> Result<(u32, u32, Rational), String> {
    let bad = || format!("cannot parse term '{t}'");
    let (negative, body) = match t.as_bytes().first() {
        Some(b'+') => (false, &t[1..]),
        Some(b'-') => (true, &t[1..]),
        _ => (false, t),
    };
    let (mut a, mut b, mut c) = (0u32, 0u32, Rational::one());
    for factor in body.split('*') {
        let exponent = |e: Option<&str>| -> Result<u32, String> {
            e.map_or(Ok(1), |e| e.parse().map_err(|_| bad()))
        };
        if let Some(rest) = factor.strip_prefix('x') {
            a += exponent(rest.strip_prefix('^').or((!rest.is_empty()).then_some("?")))?;
        } else if let Some(rest) = factor.strip_prefix('y') {
            b += exponent(rest.strip_prefix('^').or((!rest.is_empty()).then_some("?")))?;
        } else {
            let inner = factor
                .strip_prefix('(')
                .and_then(|f| f.strip_suffix(')'))
                .unwrap_or(factor);
            c *= parse_rational(inner).map_err(|_| bad())?;
        }
    }
    if negative {
        c = -c;
    }
    Ok((a, b, c))
}

pub fn parse_labels(items: &[String]) -> Result<Vec<IrrepLabel>, String> {
    items
        .iter()
        .map(|s| s.parse::<IrrepLabel>().map_err(|e| e.to_string()))
        .collect()
}

pub fn parse_rationals(items: &[String]) -> Result<Vec<Rational>, String> {
    items
        .iter()
        .map(|s| parse_rational(s).map_err(|e| e.to_string()))
        .collect()
}
