//! Shared polynomial JSON format: `{"var": .., "coeffs": [..]}`, ascending degree.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::intpoly::{qx, zx, IntPoly, RatPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntPolyJson {
    pub var: String,
    pub coeffs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatPolyJson {
    pub var: String,
    pub coeffs: Vec<RationalJson>,
}

pub fn parse_bigint(s: &str) -> Result<BigInt> {
    BigInt::from_str(s.trim()).map_err(|_| Error::InvalidInput(format!("not an integer: {s:?}")))
}

impl IntPolyJson {
    pub fn from_poly(p: &IntPoly, var: &str) -> Self {
        IntPolyJson { var: var.into(), coeffs: p.coeffs().iter().map(|c| c.to_string()).collect() }
    }

    pub fn to_poly(&self) -> Result<IntPoly> {
        let v = self.coeffs.iter().map(|s| parse_bigint(s)).collect::<Result<Vec<_>>>()?;
        Ok(zx().from_coeffs(v))
    }
}

impl RationalJson {
    pub fn from_rational(q: &BigRational) -> Self {
        RationalJson { num: q.numer().to_string(), den: q.denom().to_string() }
    }

    pub fn to_rational(&self) -> Result<BigRational> {
        let num = parse_bigint(&self.num)?;
        let den = parse_bigint(&self.den)?;
        if !den.is_positive() {
            return Err(Error::InvalidInput(format!("denominator must be positive: {}", self.den)));
        }
        Ok(BigRational::new(num, den))
    }
}

impl RatPolyJson {
    pub fn from_poly(p: &RatPoly, var: &str) -> Self {
        RatPolyJson { var: var.into(), coeffs: p.coeffs().iter().map(RationalJson::from_rational).collect() }
    }

    pub fn to_poly(&self) -> Result<RatPoly> {
        let v = self.coeffs.iter().map(|c| c.to_rational()).collect::<Result<Vec<_>>>()?;
        Ok(qx().from_coeffs(v))
    }
}

/// Parse a rational literal `a` or `a/b`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_bigint(d)?;
            if d.is_zero() {
                return Err(Error::InvalidInput("zero denominator".into()));
            }
            Ok(BigRational::new(parse_bigint(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse_bigint(s)?)),
    }
}

/// Parse a polynomial literal in one variable such as `c^2 - 3/2*c + 1` or `4`.
pub fn parse_rat_poly(s: &str, var: char) -> Result<RatPoly> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::InvalidInput("empty polynomial literal".into()));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes: Vec<char> = compact.chars().collect();
    for i in 1..bytes.len() {
        if (bytes[i] == '+' || bytes[i] == '-') && bytes[i - 1] != '^' && bytes[i - 1] != '*' && bytes[i - 1] != '/' {
            terms.push(bytes[start..i].iter().collect::<String>());
            start = i;
        }
    }
    terms.push(bytes[start..].iter().collect::<String>());

    let mut coeffs: Vec<BigRational> = Vec::new();
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest.to_string()),
            None => (1, term.trim_start_matches('+').to_string()),
        };
        if body.is_empty() {
            return Err(Error::InvalidInput(format!("malformed term in {s:?}")));
        }
        let (coef, exp) = match body.find(var) {
            None => (parse_rational(&body)?, 0usize),
            Some(pos) => {
                let head = body[..pos].trim_end_matches('*');
                let coef = if head.is_empty() { BigRational::from_integer(1.into()) } else { parse_rational(head)? };
                let tail = &body[pos + var.len_utf8()..];
                let exp = if tail.is_empty() {
                    1
                } else {
                    tail.strip_prefix('^')
                        .and_then(|e| e.parse::<usize>().ok())
                        .ok_or_else(|| Error::InvalidInput(format!("bad exponent in {term:?}")))?
                };
                (coef, exp)
            }
        };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigRational::zero());
        }
        coeffs[exp] += coef * BigRational::from_integer(sign.into());
    }
    Ok(qx().from_coeffs(coeffs))
}
