//! Plain-text serialization for operator polynomials.
//!
//! Grammar (whitespace-separated tokens):
//!
//! ```text
//! poly   := term (('+' | '-') term)*
//! term   := rational? factor*
//! factor := symbol ('^' integer)?
//! symbol := 'a' | 'ad' | 'b' | 'bd' | 'c' | 'cd' | 'f' | 'fd'
//! ```
//!
//! A term's factors are multiplied left to right through the engine, so any
//! token sequence denotes a well-defined operator and parsing normal-orders
//! as it goes. [`OperatorPoly`]'s `Display` emits canonical order, making the
//! round trip lossless.

use super::{OperatorPoly, Symbol};
use num::{BigInt, BigRational, Zero};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unknown token `{0}`")]
    UnknownToken(String),
    #[error("malformed number `{0}`")]
    BadNumber(String),
    #[error("malformed exponent in `{0}`")]
    BadExponent(String),
    #[error("empty term at position {0}")]
    EmptyTerm(usize),
    #[error("empty input")]
    Empty,
}

fn parse_rational(text: &str) -> Result<BigRational, ParseError> {
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let n: BigInt = numer.parse().map_err(|_| ParseError::BadNumber(text.to_string()))?;
    let d: BigInt = denom.parse().map_err(|_| ParseError::BadNumber(text.to_string()))?;
    if d.is_zero() {
        return Err(ParseError::BadNumber(text.to_string()));
    }
    Ok(BigRational::new(n, d))
}

fn is_number_start(tok: &str) -> bool {
    let mut chars = tok.chars();
    match chars.next() {
        Some(c) if c.is_ascii_digit() => true,
        Some('+') | Some('-') => chars.next().is_some_and(|c| c.is_ascii_digit()),
        _ => false,
    }
}

fn parse_factor(tok: &str) -> Result<OperatorPoly, ParseError> {
    let (name, exp) = match tok.split_once('^') {
        Some((n, e)) => {
            let exp: u32 = e.parse().map_err(|_| ParseError::BadExponent(tok.to_string()))?;
            (n, exp)
        }
        None => (tok, 1),
    };
    let sym = Symbol::from_token(name).ok_or_else(|| ParseError::UnknownToken(tok.to_string()))?;
    let mut p = OperatorPoly::one();
    let s = OperatorPoly::symbol(sym);
    for _ in 0..exp {
        p = p.multiply(&s);
    }
    Ok(p)
}

pub fn parse(input: &str) -> Result<OperatorPoly, ParseError> {
    let tokens: Vec<&str> = input.split_whitespace().collect();
    if tokens.is_empty() {
        return Err(ParseError::Empty);
    }

    let mut total = OperatorPoly::zero();
    let mut term: Option<OperatorPoly> = None;
    let mut sign = BigRational::from_integer(BigInt::from(1));
    let mut term_pos = 0usize;

    let flush = |total: &mut OperatorPoly,
                 term: &mut Option<OperatorPoly>,
                 sign: &BigRational,
                 pos: usize|
     -> Result<(), ParseError> {
        match term.take() {
            Some(t) => {
                *total = total.add(&t.scale(sign));
                Ok(())
            }
            None => Err(ParseError::EmptyTerm(pos)),
        }
    };

    for (i, tok) in tokens.iter().enumerate() {
        match *tok {
            "+" | "-" => {
                flush(&mut total, &mut term, &sign, term_pos)?;
                sign = if *tok == "-" {
                    BigRational::from_integer(BigInt::from(-1))
                } else {
                    BigRational::from_integer(BigInt::from(1))
                };
                term_pos = i + 1;
            }
            t if is_number_start(t) => {
                let c = parse_rational(t)?;
                let acc = term.take().unwrap_or_else(OperatorPoly::one);
                term = Some(acc.scale(&c));
            }
            t => {
                let factor = parse_factor(t)?;
                let acc = term.take().unwrap_or_else(OperatorPoly::one);
                term = Some(acc.multiply(&factor));
            }
        }
    }
    flush(&mut total, &mut term, &sign, term_pos)?;
    Ok(total)
}
