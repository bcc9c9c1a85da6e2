//! Text form for operators and polynomials.
//!
//! A term prints as `c x[1]^a1 ... d[i]^(bi) ...` with 1-based variable
//! indices; terms are joined by ` + `.  A unit coefficient is omitted when
//! factors follow it, single exponents are omitted, and the printer and
//! parser round-trip exactly.

use super::action::Polynomial;
use super::element::WeylElement;
use super::field::{FieldSpec, Scalar};
use super::WeylError;
use num::bigint::BigInt;
use std::fmt;

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (a, b, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write_term(f, a, b, c)?;
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let empty: Vec<u32> = vec![0; self.n_vars()];
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write_term(f, e, &empty, c)?;
        }
        Ok(())
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, a: &[u32], b: &[u32], c: &Scalar) -> fmt::Result {
    let has_factors = a.iter().any(|&e| e > 0) || b.iter().any(|&e| e > 0);
    let mut lead = true;
    if !has_factors || !c.is_one() {
        write!(f, "{c}")?;
        lead = false;
    }
    for (i, &e) in a.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !lead {
            write!(f, " ")?;
        }
        lead = false;
        if e == 1 {
            write!(f, "x[{}]", i + 1)?;
        } else {
            write!(f, "x[{}]^{}", i + 1, e)?;
        }
    }
    for (i, &e) in b.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !lead {
            write!(f, " ")?;
        }
        lead = false;
        if e == 1 {
            write!(f, "d[{}]", i + 1)?;
        } else {
            write!(f, "d[{}]^({})", i + 1, e)?;
        }
    }
    Ok(())
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Cursor<'a> {
        Cursor {
            s: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&'a str, WeylError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(WeylError::Parse("expected digits".into()));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits"))
    }
}

/// Parse the text form of an operator over the given field in `n` variables.
///
/// Grammar: terms joined by `+`; a term is an optional coefficient
/// (`-3`, `5/2`, ...) followed by factors `x[i]`, `x[i]^e`, `d[i]`,
/// `d[i]^(e)` or `d[i]^e`, separated by whitespace or `*`.  Indices are
/// 1-based; repeated factors multiply.
pub fn parse_element(input: &str, n: usize, field: FieldSpec) -> Result<WeylElement, WeylError> {
    let mut out = WeylElement::zero(n, field);
    for piece in input.split('+') {
        let (coeff, a, b) = parse_term(piece, n, field)?;
        let term = WeylElement::term(n, field, &a, &b, coeff);
        out = out.add(&term).expect("terms share field and ambient");
    }
    Ok(out)
}

fn parse_term(
    piece: &str,
    n: usize,
    field: FieldSpec,
) -> Result<(Scalar, Vec<u32>, Vec<u32>), WeylError> {
    let mut cur = Cursor::new(piece);
    cur.skip_ws();
    let mut coeff: Option<Scalar> = None;
    if matches!(cur.peek(), Some(c) if c == b'-' || c.is_ascii_digit()) {
        coeff = Some(parse_number(&mut cur, field)?);
    }
    let mut a = vec![0u32; n];
    let mut b = vec![0u32; n];
    let mut any_factor = false;
    loop {
        cur.skip_ws();
        if cur.eat(b'*') {
            continue;
        }
        match cur.peek() {
            Some(b'x') => {
                parse_factor(&mut cur, n, &mut a)?;
                any_factor = true;
            }
            Some(b'd') => {
                parse_factor(&mut cur, n, &mut b)?;
                any_factor = true;
            }
            None => break,
            Some(other) => {
                return Err(WeylError::Parse(format!(
                    "unexpected character '{}'",
                    other as char
                )));
            }
        }
    }
    if coeff.is_none() && !any_factor {
        return Err(WeylError::Parse("empty term".into()));
    }
    Ok((coeff.unwrap_or_else(|| field.one()), a, b))
}

fn parse_number(cur: &mut Cursor<'_>, field: FieldSpec) -> Result<Scalar, WeylError> {
    let neg = cur.eat(b'-');
    cur.skip_ws();
    let mut num: BigInt = cur.digits()?.parse().expect("digit string");
    if neg {
        num = -num;
    }
    let mut val = field.from_bigint(&num);
    if cur.eat(b'/') {
        let den: BigInt = cur.digits()?.parse().expect("digit string");
        let inv = field.from_bigint(&den).inverse().ok_or_else(|| {
            WeylError::Parse("denominator is zero in the coefficient field".into())
        })?;
        val = val.mul(&inv);
    }
    Ok(val)
}

fn parse_factor(cur: &mut Cursor<'_>, n: usize, target: &mut [u32]) -> Result<(), WeylError> {
    cur.pos += 1; // the 'x' or 'd' the caller peeked
    if !cur.eat(b'[') {
        return Err(WeylError::Parse("expected '[' after variable name".into()));
    }
    let idx: usize = cur
        .digits()?
        .parse()
        .map_err(|_| WeylError::Parse("variable index too large".into()))?;
    if !cur.eat(b']') {
        return Err(WeylError::Parse("expected ']' after variable index".into()));
    }
    if idx < 1 || idx > n {
        return Err(WeylError::Parse(format!(
            "variable index {idx} out of range 1..={n}"
        )));
    }
    let mut exp: u32 = 1;
    if cur.eat(b'^') {
        let wrapped = cur.eat(b'(');
        exp = cur
            .digits()?
            .parse()
            .map_err(|_| WeylError::Parse("exponent too large".into()))?;
        if wrapped && !cur.eat(b')') {
            return Err(WeylError::Parse("expected ')' after exponent".into()));
        }
    }
    target[idx - 1] = target[idx - 1]
        .checked_add(exp)
        .ok_or_else(|| WeylError::Parse("exponent too large".into()))?;
    Ok(())
}
