//! Parsing of polynomial expressions.
//!
//! The accepted grammar is a sum of monomial terms:
//!
//! ```text
//! expression := [sign] term { sign term }
//! term       := factor { "*" factor }
//! factor     := number | variable
//! number     := digits [ "/" digits ]
//! variable   := ("x1" | "x2") [ "^" digits ]
//! ```
//!
//! Whitespace is ignored everywhere.  Coefficients must be integers or
//! ratios like `2/3`; decimal and scientific literals are rejected with a
//! dedicated error rather than rounded, because the whole pipeline works
//! in exact arithmetic.  Duplicate monomials are summed.

use crate::poly::{Polynomial, Rational};
use num::{BigInt, One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("parse error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error(
        "non-rational coefficient `{literal}` at byte {offset}: \
         write an exact ratio like 3/10 instead"
    )]
    NonRationalCoefficient { offset: usize, literal: String },
}

impl ParseError {
    /// Byte position the error points at.
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } => *offset,
            ParseError::NonRationalCoefficient { offset, .. } => *offset,
        }
    }

    fn shifted(self, delta: usize) -> ParseError {
        match self {
            ParseError::Syntax { offset, message } => {
                ParseError::Syntax { offset: offset + delta, message }
            }
            ParseError::NonRationalCoefficient { offset, literal } => {
                ParseError::NonRationalCoefficient { offset: offset + delta, literal }
            }
        }
    }
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner { bytes: text.as_bytes(), pos: 0 }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a [u8]> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.bytes[start..self.pos])
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { offset: self.pos, message: message.into() }
    }
}

/// Parses an expression in the monomial-sum grammar into an exact
/// polynomial.  Duplicate monomials are summed, so `x1 - x1` is the zero
/// polynomial.
pub fn parse_polynomial(text: &str) -> Result<Polynomial, ParseError> {
    let mut sc = Scanner::new(text);
    let mut acc = Polynomial::zero();
    sc.skip_ws();
    if sc.peek().is_none() {
        return Err(sc.err("empty expression"));
    }
    let mut negative = if sc.eat(b'-') {
        true
    } else {
        let _ = sc.eat(b'+');
        false
    };
    loop {
        let (coeff, a1, a2) = term(&mut sc)?;
        acc.add_term(a1, a2, if negative { -coeff } else { coeff });
        sc.skip_ws();
        match sc.peek() {
            None => break,
            Some(b'+') => {
                sc.pos += 1;
                negative = false;
            }
            Some(b'-') => {
                sc.pos += 1;
                negative = true;
            }
            Some(_) => return Err(sc.err("expected `+` or `-` between terms")),
        }
    }
    Ok(acc)
}

fn term(sc: &mut Scanner) -> Result<(Rational, u32, u32), ParseError> {
    let mut coeff = Rational::one();
    let (mut a1, mut a2) = (0u32, 0u32);
    loop {
        sc.skip_ws();
        match sc.peek() {
            Some(b) if b.is_ascii_digit() => coeff *= number(sc)?,
            Some(b'x') => {
                let (var, exp) = variable(sc)?;
                let slot = if var == 1 { &mut a1 } else { &mut a2 };
                *slot = slot
                    .checked_add(exp)
                    .ok_or_else(|| sc.err("exponent overflow"))?;
            }
            _ => return Err(sc.err("expected a coefficient or a variable")),
        }
        sc.skip_ws();
        if !sc.eat(b'*') {
            break;
        }
    }
    Ok((coeff, a1, a2))
}

fn number(sc: &mut Scanner) -> Result<Rational, ParseError> {
    let start = sc.pos;
    let numer = sc.digits().expect("caller saw a leading digit");
    if matches!(sc.peek(), Some(b'.') | Some(b'e') | Some(b'E')) {
        return Err(non_rational(sc, start));
    }
    let numer = big(numer);
    let mark = sc.pos;
    sc.skip_ws();
    if sc.eat(b'/') {
        sc.skip_ws();
        let dstart = sc.pos;
        let denom = big(sc
            .digits()
            .ok_or_else(|| sc.err("expected digits after `/`"))?);
        if denom.is_zero() {
            return Err(ParseError::Syntax {
                offset: dstart,
                message: "zero denominator".into(),
            });
        }
        Ok(Rational::new(numer, denom))
    } else {
        sc.pos = mark;
        Ok(Rational::from(numer))
    }
}

/// Scans the rest of a decimal or scientific literal, only to quote it in
/// the error message.
fn non_rational(sc: &mut Scanner, start: usize) -> ParseError {
    let mut end = sc.pos;
    let mut seen_exponent = false;
    while let Some(&b) = sc.bytes.get(end) {
        if b.is_ascii_digit() || b == b'.' {
            end += 1;
        } else if (b == b'e' || b == b'E') && !seen_exponent {
            seen_exponent = true;
            end += 1;
            if matches!(sc.bytes.get(end), Some(b'+') | Some(b'-')) {
                end += 1;
            }
        } else {
            break;
        }
    }
    let literal = String::from_utf8_lossy(&sc.bytes[start..end]).into_owned();
    ParseError::NonRationalCoefficient { offset: start, literal }
}

fn variable(sc: &mut Scanner) -> Result<(u8, u32), ParseError> {
    sc.pos += 1; // the caller saw `x`
    let var = match sc.peek() {
        Some(b'1') => 1,
        Some(b'2') => 2,
        _ => return Err(sc.err("expected `x1` or `x2`")),
    };
    sc.pos += 1;
    if matches!(sc.peek(), Some(b) if b.is_ascii_digit() || b.is_ascii_alphabetic()) {
        return Err(sc.err("the variables are `x1` and `x2`"));
    }
    sc.skip_ws();
    if !sc.eat(b'^') {
        return Ok((var, 1));
    }
    sc.skip_ws();
    let dstart = sc.pos;
    let digits = sc.digits().ok_or_else(|| sc.err("expected an exponent after `^`"))?;
    let exp = std::str::from_utf8(digits)
        .expect("digits are ASCII")
        .parse::<u32>()
        .map_err(|_| ParseError::Syntax {
            offset: dstart,
            message: "exponent does not fit in 32 bits".into(),
        })?;
    Ok((var, exp))
}

fn big(digits: &[u8]) -> BigInt {
    BigInt::parse_bytes(digits, 10).expect("scanner only passes ASCII digits")
}

/// Parses a single signed rational like `-3/4` or `12`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let mut sc = Scanner::new(text);
    sc.skip_ws();
    let negative = if sc.eat(b'-') {
        true
    } else {
        let _ = sc.eat(b'+');
        false
    };
    sc.skip_ws();
    if !matches!(sc.peek(), Some(b) if b.is_ascii_digit()) {
        return Err(sc.err("expected digits"));
    }
    let value = number(&mut sc)?;
    sc.skip_ws();
    if sc.peek().is_some() {
        return Err(sc.err("trailing input after the number"));
    }
    Ok(if negative { -value } else { value })
}

/// Parses a point `x1,x2` with rational coordinates.
pub fn parse_point(text: &str) -> Result<(Rational, Rational), ParseError> {
    let comma = text.find(',').ok_or(ParseError::Syntax {
        offset: text.len(),
        message: "expected `,` between the coordinates".into(),
    })?;
    let x1 = parse_rational(&text[..comma])?;
    let x2 = parse_rational(&text[comma + 1..]).map_err(|e| e.shifted(comma + 1))?;
    Ok((x1, x2))
}
