//! Parser for root coordinates given on the command line.
//!
//! A coordinate vector is comma-separated, one entry per vertex in graph
//! order. Each entry is a sum of terms `q`, `q*th`, or `q*th^k` (the `*` is
//! optional) with rational q, where `th` is the field generator 2cos(π/L),
//! e.g. `1, -1/2+th, 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use vartin_core::error::{EngineError, Result};
use vartin_core::{FieldElement, FieldSpec, GroupContext, Root};

fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || EngineError::Parse(format!("bad rational {text:?}"));
    if let Some((num, den)) = text.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = text.parse().map_err(|_| bad())?;
        Ok(BigRational::from(n))
    }
}

/// One entry: `1`, `-1/2`, `th`, `2*th`, `1+th^2`, ...
fn parse_entry(spec: &std::sync::Arc<FieldSpec>, text: &str) -> Result<FieldElement> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(EngineError::Parse("empty coordinate".into()));
    }
    // Split into signed terms.
    let mut terms: Vec<String> = Vec::new();
    let mut current = String::new();
    for (i, c) in compact.chars().enumerate() {
        if (c == '+' || c == '-') && i > 0 {
            terms.push(std::mem::take(&mut current));
        }
        if !(c == '+' && current.is_empty() && i == 0) {
            current.push(c);
        }
    }
    terms.push(current);

    let mut acc = FieldElement::zero(spec);
    for term in terms {
        let term = term.trim_start_matches('+');
        let (coef_text, power) = match term.find("th") {
            Some(pos) => {
                let coef = &term[..pos];
                let rest = &term[pos + 2..];
                let power: usize = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .and_then(|p| p.parse().ok())
                        .ok_or_else(|| EngineError::Parse(format!("bad term {term:?}")))?
                };
                (coef.trim_end_matches('*'), power)
            }
            None => (term, 0),
        };
        let coef = match coef_text {
            "" => BigRational::from(BigInt::from(1)),
            "-" => BigRational::from(BigInt::from(-1)),
            other => parse_rational(other)?,
        };
        let mut value = FieldElement::from_rational(spec, coef);
        let theta = FieldElement::theta(spec);
        for _ in 0..power {
            value = &value * &theta;
        }
        acc = &acc + &value;
    }
    Ok(acc)
}

pub fn parse_root(ctx: &GroupContext, text: &str) -> Result<Root> {
    let entries: Vec<&str> = text.split(',').collect();
    if entries.len() != ctx.rank() {
        return Err(EngineError::Parse(format!(
            "expected {} coordinates, got {}",
            ctx.rank(),
            entries.len()
        )));
    }
    let coords = entries
        .iter()
        .map(|e| parse_entry(ctx.field(), e))
        .collect::<Result<Vec<_>>>()?;
    Ok(Root::new(coords))
}
