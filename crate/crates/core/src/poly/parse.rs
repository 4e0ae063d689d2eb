//! Plain-text grammar for polynomials and rational functions:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Division is only accepted by [`parse_ratfn`]; [`parse_poly`] accepts it
//! when the divisor is a nonzero constant (so `1/2*a` is a polynomial).

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{MultiPoly, RationalFn};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        if ch.is_ascii_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = src[start..i].parse().expect("digits");
            out.push((start, Tok::Int(n)));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else if "+-*/^()".contains(ch) {
            out.push((i, Tok::Op(ch)));
            i += 1;
        } else {
            return Err(Error::Parse { pos: i, msg: format!("unexpected character `{ch}`") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.offset(), msg: msg.to_string() })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalFn> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFn> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let at = self.offset();
                let rhs = self.unary()?;
                acc = acc
                    .checked_div(&rhs)
                    .map_err(|_| Error::Parse { pos: at, msg: "division by zero".into() })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFn> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFn> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(e)) => {
                    self.pos += 1;
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| Error::Parse { pos: self.offset(), msg: "exponent too large".into() })?;
                    return Ok(base.pow(e));
                }
                _ => return self.err("expected a nonnegative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalFn> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(RationalFn::from_poly(MultiPoly::constant(BigRational::from_integer(n))))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(RationalFn::from_poly(MultiPoly::var(&name)))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(_) => self.err("expected a number, variable or `(`"),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_ratfn(src: &str) -> Result<RationalFn> {
    let toks = tokenize(src)?;
    let mut parser = Parser { toks, pos: 0, end: src.len() };
    let out = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return parser.err("trailing input");
    }
    Ok(out)
}

pub fn parse_poly(src: &str) -> Result<MultiPoly> {
    let f = parse_ratfn(src)?;
    f.to_poly().ok_or_else(|| Error::Parse {
        pos: 0,
        msg: "expected a polynomial, found a non-constant denominator".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        assert_eq!(parse_poly("1 + 2*a^2").unwrap(), parse_poly("(2*(a^2)) + 1").unwrap());
        assert_eq!(parse_poly("-a^2").unwrap(), -&parse_poly("a*a").unwrap());
        assert_eq!(parse_poly("1/2*a").unwrap(), parse_poly("a/2").unwrap());
    }

    #[test]
    fn rational_functions() {
        let f = parse_ratfn("(m^2 - k^2)/(m - k)").unwrap();
        let g = parse_ratfn("m + k").unwrap();
        assert!(f.equals(&g));
        assert!(parse_poly("1/a").is_err());
    }

    #[test]
    fn errors_report_position() {
        match parse_poly("a + $") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_poly("(a + b"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("a^b"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("a b"), Err(Error::Parse { .. })));
        assert!(matches!(parse_ratfn("a/0"), Err(Error::Parse { .. })));
    }
}
