//! Parsers for command-line values: p-adic integers, named units, `k`
//! ranges and bivariate polynomial laws.

use super::CliError;
use crate::arith::{generator_g, PadicInt, PadicUnit};
use crate::imj::q_value;
use crate::ring::Ring;
use crate::series::BiSeries;

/// An integer such as `-7`, or a little-endian digit list such as `[2,3]`.
pub fn padic(text: &str, p: u64, precision: u32) -> Result<PadicInt, CliError> {
    let t = text.trim();
    let bad = || CliError::Value {
        flag: "p-adic",
        value: text.to_string(),
    };
    if let Some(inner) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
        let mut digits = inner
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        if digits.iter().any(|&d| d >= p) {
            return Err(bad());
        }
        if digits.iter().skip(precision as usize).any(|&d| d != 0) {
            return Err(bad());
        }
        digits.resize(precision as usize, 0);
        return Ok(PadicInt::from_digits(p, &digits)?);
    }
    let value: i128 = t.parse().map_err(|_| bad())?;
    Ok(PadicInt::new(p, precision, value)?)
}

/// A unit given as a p-adic value or one of the names `g`, `zeta`, `q`.
pub fn unit(text: &str, flag: &'static str, p: u64, precision: u32) -> Result<PadicUnit, CliError> {
    let u = match text.trim() {
        "g" => generator_g(p, precision)?,
        "zeta" => crate::arith::zeta(p, precision)?,
        "q" => q_value(p, precision)?,
        other => {
            let a = padic(other, p, precision).map_err(|_| CliError::Value {
                flag,
                value: text.to_string(),
            })?;
            PadicUnit::new(a).map_err(|_| CliError::NotUnit {
                flag,
                value: text.to_string(),
            })?
        }
    };
    Ok(u)
}

/// A single nonzero `k` or an inclusive range `a..b`.
pub fn k_values(text: &str) -> Result<(Vec<i64>, bool), CliError> {
    let bad = || CliError::Value {
        flag: "--k",
        value: text.to_string(),
    };
    let t = text.trim();
    if let Some((a, b)) = t.split_once("..") {
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim_start_matches('=').trim().parse().map_err(|_| bad())?;
        if b < a || b - a > 100_000 {
            return Err(bad());
        }
        return Ok(((a..=b).collect(), true));
    }
    Ok((vec![t.parse().map_err(|_| bad())?], false))
}

/// A bivariate polynomial in `x`, `y` with integer coefficients, such as
/// `x + y + 2xy - x^2y`.
pub fn law<R: Ring>(text: &str, proto: &R, cap: u32) -> Result<BiSeries<R>, CliError> {
    let bad = || CliError::Value {
        flag: "--law",
        value: text.to_string(),
    };
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad());
    }
    let mut terms = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'+' => (1i64, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ if terms.is_empty() => (1, rest),
            _ => return Err(bad()),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let (term, tail) = body.split_at(end);
        terms.push((sign, term));
        rest = tail;
    }
    let mut out = Vec::new();
    for (sign, term) in terms {
        let digits_end = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
        let coeff: i64 = if digits_end == 0 {
            1
        } else {
            term[..digits_end].parse().map_err(|_| bad())?
        };
        let mut exps = [0u32; 2];
        let mut chars = term[digits_end..].chars().peekable();
        if digits_end == 0 && chars.peek().is_none() {
            return Err(bad());
        }
        while let Some(c) = chars.next() {
            let var = match c {
                'x' => 0,
                'y' => 1,
                _ => return Err(bad()),
            };
            let mut e = 1;
            if chars.peek() == Some(&'^') {
                chars.next();
                let mut num = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    num.push(*d);
                    chars.next();
                }
                e = num.parse().map_err(|_| bad())?;
            }
            exps[var] += e;
        }
        out.push((exps, proto.from_int_like(sign * coeff)));
    }
    Ok(BiSeries::from_terms(proto, out, cap))
}
