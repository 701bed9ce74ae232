//! Text grammar for polynomials.
//!
//! Integer (or `p/q` rational) literals, variable names matching
//! `[a-zA-Z][a-zA-Z0-9]*`, operators `+ - * ^`, parentheses. Implicit
//! multiplication is not accepted: `4z` is an error, `4*z` is not.
//! `^` takes nonnegative integer exponents. The canonical printer emits
//! text this grammar accepts, so print/parse round-trips exactly.

use super::{MultiPoly, PolyError};
use crate::rat::BigRat;
use num::bigint::BigInt;
use num::Zero;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRat),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>, PolyError> {
    let mut toks = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                toks.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                toks.push(Tok::Star);
                i += 1;
            }
            '^' => {
                toks.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                toks.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                toks.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let num: BigInt = chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| PolyError::Parse("bad integer".into()))?;
                // optional rational literal p/q
                if i < chars.len() && chars[i] == '/' {
                    i += 1;
                    let dstart = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if dstart == i {
                        return Err(PolyError::Parse("expected denominator after `/`".into()));
                    }
                    let den: BigInt = chars[dstart..i]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|_| PolyError::Parse("bad integer".into()))?;
                    if den.is_zero() {
                        return Err(PolyError::Parse("zero denominator".into()));
                    }
                    toks.push(Tok::Num(BigRat::new(num, den)));
                } else {
                    toks.push(Tok::Num(BigRat::from_integer(num)));
                }
                // implicit multiplication like `4z` is rejected
                if i < chars.len() && (chars[i].is_ascii_alphabetic() || chars[i] == '(') {
                    return Err(PolyError::Parse(format!(
                        "implicit multiplication before `{}`; write `*`",
                        chars[i]
                    )));
                }
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                toks.push(Tok::Name(chars[start..i].iter().collect()));
                if i < chars.len() && chars[i] == '(' {
                    return Err(PolyError::Parse(
                        "implicit multiplication before `(`; write `*`".into(),
                    ));
                }
            }
            other => {
                return Err(PolyError::Parse(format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    // expr := ['-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = if matches!(self.peek(), Some(Tok::Minus)) {
            self.next();
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // term := power ('*' power)*
    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.power()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.next();
            let p = self.power()?;
            acc = acc.mul(&p);
        }
        Ok(acc)
    }

    // power := atom ['^' uint]
    fn power(&mut self) -> Result<MultiPoly, PolyError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.next();
            match self.next() {
                Some(Tok::Num(n))
                    if n.denom() == &BigInt::from(1) && n.numer() >= &BigInt::zero() =>
                {
                    use num::ToPrimitive;
                    let e = n
                        .numer()
                        .to_u32()
                        .ok_or_else(|| PolyError::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(PolyError::Parse(
                    "`^` requires a nonnegative integer exponent".into(),
                )),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly, PolyError> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(MultiPoly::constant(n)),
            Some(Tok::Name(v)) => Ok(MultiPoly::var(&v)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(PolyError::Parse("missing `)`".into())),
                }
            }
            Some(Tok::Minus) => Ok(self.atom()?.neg()),
            other => Err(PolyError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse_poly(s: &str) -> Result<MultiPoly, PolyError> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(PolyError::Parse("empty input".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(PolyError::Parse("trailing input".into()));
    }
    Ok(e)
}
