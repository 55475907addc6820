//! Parser for the scalar text form: integer/rational literals, the symbol
//! `p`, operators `+ - * / ^`, parentheses. E.g. `(1/2) + (7/3)*p`.

use super::scalar::Scalar;
use crate::error::{Error, Result};
use num::BigInt;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

pub(crate) fn tokenize(input: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let n = digits
                    .parse::<BigInt>()
                    .map_err(|e| Error::Parse(format!("bad integer {digits}: {e}")))?;
                toks.push(Tok::Int(n));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Ident(name));
            }
            '+' => {
                toks.push(Tok::Plus);
                chars.next();
            }
            '-' | '\u{2212}' => {
                toks.push(Tok::Minus);
                chars.next();
            }
            '*' | '\u{00b7}' => {
                toks.push(Tok::Star);
                chars.next();
            }
            '/' => {
                toks.push(Tok::Slash);
                chars.next();
            }
            '^' => {
                toks.push(Tok::Caret);
                chars.next();
            }
            '(' => {
                toks.push(Tok::LParen);
                chars.next();
            }
            ')' => {
                toks.push(Tok::RParen);
                chars.next();
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        while let Some(tok) = self.peek() {
            match tok {
                Tok::Plus => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.factor()?;
        while let Some(tok) = self.peek() {
            match tok {
                Tok::Star => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Tok::Slash => {
                    self.pos += 1;
                    let d = self.factor()?;
                    if d.is_zero() {
                        return Err(Error::Parse("division by zero".into()));
                    }
                    acc = &acc / &d;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Scalar> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            let mut neg = false;
            if matches!(self.peek(), Some(Tok::Minus)) {
                self.pos += 1;
                neg = true;
            }
            let Some(Tok::Int(e)) = self.next() else {
                return Err(Error::Parse("expected integer exponent after ^".into()));
            };
            let e: i64 = e
                .try_into()
                .map_err(|_| Error::Parse("exponent too large".into()))?;
            let e = if neg { -e } else { e };
            return base
                .powi(e)
                .map_err(|_| Error::Parse("zero raised to negative power".into()));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.next().cloned() {
            Some(Tok::Int(n)) => Ok(Scalar::from_rational(num::BigRational::from_integer(n))),
            Some(Tok::Ident(name)) if name == "p" => Ok(Scalar::p()),
            Some(Tok::Ident(name)) => Err(Error::Parse(format!("unknown symbol `{name}`"))),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::Parse("expected `)`".into())),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parse the scalar text form used by config files and CLI output.
pub fn parse_scalar(input: &str) -> Result<Scalar> {
    let toks = tokenize(input)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
    };
    let v = p.expr()?;
    if p.pos != toks.len() {
        return Err(Error::Parse(format!(
            "trailing input at token {} in `{input}`",
            p.pos
        )));
    }
    Ok(v)
}
