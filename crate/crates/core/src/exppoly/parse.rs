//! Parser for the exp-polynomial text form used in config files, e.g.
//! `3*n1^2*2^n1 + (1+p)*n2`. Variables are `n1..nr`, exponential factors are
//! `base^nJ` with a nonzero rational base, and every other factor is a scalar
//! expression.

use super::{normalize, ExpPoly, TermKey};
use crate::error::{Error, Result};
use crate::exactnum::{parse_scalar, Scalar};
use num::{BigRational, One};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(input: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Num(s));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Ident(s));
            }
            '+' | '*' | '/' | '^' | '(' | ')' => {
                toks.push(Tok::Op(c));
                chars.next();
            }
            '-' | '\u{2212}' => {
                toks.push(Tok::Op('-'));
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
    arity: usize,
}

/// Accumulator for one product of factors.
struct Term {
    coeff: Scalar,
    powers: Vec<u32>,
    bases: Vec<BigRational>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1)
    }

    fn var_index(&self, name: &str) -> Result<usize> {
        let idx: usize = name
            .strip_prefix('n')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse(format!("unknown symbol `{name}`")))?;
        if idx == 0 || idx > self.arity {
            return Err(Error::Arity(format!(
                "variable n{idx} out of range for arity {}",
                self.arity
            )));
        }
        Ok(idx - 1)
    }

    fn expr(&mut self) -> Result<ExpPoly> {
        let mut acc = ExpPoly::zero(self.arity);
        let mut negate = false;
        if let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            negate = *c == '-';
            self.pos += 1;
        }
        loop {
            let t = self.product()?;
            let t = if negate { t.neg() } else { t };
            acc = acc.add(&t)?;
            match self.peek() {
                Some(Tok::Op('+')) => {
                    negate = false;
                    self.pos += 1;
                }
                Some(Tok::Op('-')) => {
                    negate = true;
                    self.pos += 1;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<ExpPoly> {
        let mut term = Term {
            coeff: Scalar::one(),
            powers: vec![0; self.arity],
            bases: vec![BigRational::one(); self.arity],
        };
        self.factor(&mut term, false)?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek() {
            let divide = *c == '/';
            self.pos += 1;
            self.factor(&mut term, divide)?;
        }
        normalize(
            self.arity,
            vec![(
                TermKey {
                    powers: term.powers,
                    bases: term.bases,
                },
                term.coeff,
            )],
        )
    }

    /// Parse one factor into the running term. `divide` only makes sense for
    /// scalar-valued factors.
    fn factor(&mut self, term: &mut Term, divide: bool) -> Result<()> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) if name != "p" => {
                if divide {
                    return Err(Error::Parse("cannot divide by a variable".into()));
                }
                let v = self.var_index(&name)?;
                self.pos += 1;
                let mut power: u32 = 1;
                if let Some(Tok::Op('^')) = self.peek() {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Num(e)) => {
                            power = e
                                .parse()
                                .map_err(|_| Error::Parse("exponent too large".into()))?;
                            self.pos += 1;
                        }
                        _ => return Err(Error::Parse("expected exponent after ^".into())),
                    }
                }
                term.powers[v] += power;
                Ok(())
            }
            _ => {
                // scalar atom, possibly the base of an exponential
                let sc = self.scalar_atom()?;
                if let (Some(Tok::Op('^')), Some(Tok::Ident(name))) = (self.peek(), self.peek2()) {
                    if name != "p" {
                        let name = name.clone();
                        if divide {
                            return Err(Error::Parse("cannot divide by an exponential".into()));
                        }
                        let v = self.var_index(&name)?;
                        self.pos += 2;
                        let base = sc.as_rational().ok_or_else(|| {
                            Error::InvalidBase("exponential base must be rational".into())
                        })?;
                        if num::Zero::is_zero(&base) {
                            return Err(Error::InvalidBase("zero exponential base".into()));
                        }
                        term.bases[v] *= base;
                        return Ok(());
                    }
                }
                let sc = if let Some(Tok::Op('^')) = self.peek() {
                    self.pos += 1;
                    let mut neg = false;
                    if let Some(Tok::Op('-')) = self.peek() {
                        neg = true;
                        self.pos += 1;
                    }
                    match self.peek().cloned() {
                        Some(Tok::Num(e)) => {
                            self.pos += 1;
                            let e: i64 = e
                                .parse()
                                .map_err(|_| Error::Parse("exponent too large".into()))?;
                            sc.powi(if neg { -e } else { e })
                                .map_err(|_| Error::Parse("zero to negative power".into()))?
                        }
                        _ => return Err(Error::Parse("expected exponent after ^".into())),
                    }
                } else {
                    sc
                };
                if divide {
                    if sc.is_zero() {
                        return Err(Error::Parse("division by zero".into()));
                    }
                    term.coeff = &term.coeff / &sc;
                } else {
                    term.coeff = &term.coeff * &sc;
                }
                Ok(())
            }
        }
    }

    /// A scalar literal: number, `p`, or a parenthesized scalar expression.
    fn scalar_atom(&mut self) -> Result<Scalar> {
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.pos += 1;
                parse_scalar(&s)
            }
            Some(Tok::Ident(name)) if name == "p" => {
                self.pos += 1;
                Ok(Scalar::p())
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-&self.scalar_atom()?)
            }
            Some(Tok::Op('(')) => {
                // capture the balanced group and defer to the scalar parser
                let start = self.pos;
                let mut depth = 0usize;
                loop {
                    match self.toks.get(self.pos) {
                        Some(Tok::Op('(')) => depth += 1,
                        Some(Tok::Op(')')) => {
                            depth -= 1;
                            if depth == 0 {
                                self.pos += 1;
                                break;
                            }
                        }
                        None => return Err(Error::Parse("unbalanced parentheses".into())),
                        _ => {}
                    }
                    self.pos += 1;
                }
                let inner: String = self.toks[start + 1..self.pos - 1]
                    .iter()
                    .map(|t| match t {
                        Tok::Num(s) => s.clone(),
                        Tok::Ident(s) => s.clone(),
                        Tok::Op(c) => c.to_string(),
                    })
                    .collect::<Vec<_>>()
                    .join(" ");
                parse_scalar(&inner)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parse the exp-polynomial text form at a declared arity.
pub fn parse_exppoly(input: &str, arity: usize) -> Result<ExpPoly> {
    let toks = tokenize(input)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty exp-polynomial".into()));
    }
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        arity,
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_spec_example() {
        let f = parse_exppoly("3*n1^2*2^n1 + (1+p)*n2", 2).unwrap();
        assert_eq!(f.num_terms(), 2);
        // evaluate at (3, 1): 3*9*8 + (1+p) = 216 + 1 + p
        let v = f.evaluate(&[3, 1]).unwrap();
        assert_eq!(v, &Scalar::from_int(217) + &Scalar::p());
    }

    #[test]
    fn roundtrips_display() {
        for (text, arity) in [
            ("3*n1^2*2^n1 + (1+p)*n2", 2),
            ("n1 - n2 + 1", 2),
            ("(1/2)^n1", 1),
            ("(-2)^n1*n1", 1),
            ("0", 1),
            ("5 - 2*n1", 1),
        ] {
            let f = parse_exppoly(text, arity).unwrap();
            let again = parse_exppoly(&f.to_string(), arity).unwrap();
            assert_eq!(f, again, "failed on {text}");
        }
    }

    #[test]
    fn scalar_powers_and_division() {
        let f = parse_exppoly("p^2*n1/2", 1).unwrap();
        let v = f.evaluate(&[1]).unwrap();
        let p2 = Scalar::p().powi(2).unwrap();
        assert_eq!(v, &p2 * &Scalar::rational(1, 2));
    }

    #[test]
    fn merged_exponentials_multiply_bases() {
        // 2^n1 * 3^n1 = 6^n1
        let f = parse_exppoly("2^n1*3^n1", 1).unwrap();
        let g = parse_exppoly("6^n1", 1).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_exppoly("n3", 2).is_err());
        assert!(parse_exppoly("p^n1", 1).is_err());
        assert!(parse_exppoly("0^n1", 1).is_err());
        assert!(parse_exppoly("2^", 1).is_err());
        assert!(parse_exppoly("n1 n2", 2).is_err());
    }
}
