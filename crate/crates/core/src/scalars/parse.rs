//! Recursive descent parser for scalar expressions such as `(87-6*cL)/cM^2`.

use num_bigint::BigInt;

use super::poly::Var;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(Var),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn perr(input: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let b = s.as_bytes();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            '0'..='9' => {
                let st = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Tok::Int(s[st..i].parse().expect("digits")));
            }
            _ if c.is_ascii_alphabetic() => {
                let st = i;
                while i < b.len() && b[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let name = &s[st..i];
                let v = Var::from_name(name)
                    .ok_or_else(|| perr(s, format!("unknown symbol `{name}`")))?;
                out.push(Tok::Var(v));
            }
            _ => return Err(perr(s, format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -self.term()?
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.power()?;
                    acc = acc.checked_div(&d)?;
                }
                // implicit multiplication: `2cM`, `cL hL`, `3(cM+1)`
                Some(Tok::Int(_)) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| perr(self.src, "exponent out of range"))?;
                    Ok(base.pow(e))
                }
                _ => Err(perr(self.src, "exponent must be a nonnegative integer")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(Scalar::from_bigint(n)),
            Some(Tok::Var(v)) => Ok(Scalar::var(v)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(perr(self.src, "missing `)`")),
                }
            }
            Some(Tok::Minus) => Ok(-self.power()?),
            Some(t) => Err(perr(self.src, format!("unexpected token {t:?}"))),
            None => Err(perr(self.src, "unexpected end of input")),
        }
    }
}

/// Parses a scalar expression over integers and `cL`, `cM`, `hL`, `hM`.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(perr(s, "empty expression"));
    }
    let mut p = Parser {
        src: s,
        toks,
        pos: 0,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(perr(s, "trailing input"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn implicit_multiplication() {
        assert_eq!(parse_scalar("2cM").unwrap(), parse_scalar("2*cM").unwrap());
        assert_eq!(
            parse_scalar("3(cM+1)hL").unwrap(),
            parse_scalar("3*hL*cM+3*hL").unwrap()
        );
    }

    #[test]
    fn precedence() {
        assert_eq!(parse_scalar("1+2*3^2").unwrap(), Scalar::from_int(19));
        assert_eq!(parse_scalar("-2^2").unwrap(), Scalar::from_int(-4));
        assert_eq!(parse_scalar("12/6/2").unwrap(), Scalar::from_int(1));
    }

    #[test]
    fn errors() {
        assert!(parse_scalar("").is_err());
        assert!(parse_scalar("(cM").is_err());
        assert!(parse_scalar("x+1").is_err());
        assert!(parse_scalar("cM^cL").is_err());
    }
}
