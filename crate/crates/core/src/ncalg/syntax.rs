//! Text syntax for disc elements.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := power ('*' power)*
//! power  := atom ['^' ['-'] INT]
//! atom   := INT ['/' INT] | 'z' | 'zs' | 'q' | 'i' | '(' expr ')'
//! ```
//!
//! `zs` is `z*`. Products are taken in the disc algebra, so any word is
//! accepted and normalized. Negative powers are allowed only on invertible
//! scalars (`c·q^k`, `c ≠ 0`). Printing emits the canonical form, e.g.
//! `(1-q^2)*z^2*zs`, and parsing it back yields the same element.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::DiscElement;
use crate::error::ParseError;
use crate::scalar::{write_signed_term, GaussRational, QLaurent};

impl fmt::Display for DiscElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let first = idx == 0;
            match c.as_monomial() {
                Some((g, e)) => write_signed_term(f, g, e, &m.factors(), first)?,
                None => {
                    if !first {
                        f.write_str("+")?;
                    }
                    write!(f, "({c})")?;
                    for factor in m.factors() {
                        write!(f, "*{factor}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
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

fn tokenize(input: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = input.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => {
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let end = chars.get(i).map_or(input.len(), |&(p, _)| p);
                let digits = &input[chars[start].0..end];
                out.push((pos, Token::Int(digits.parse().expect("ascii digits"))));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_alphanumeric() {
                    i += 1;
                }
                let end = chars.get(i).map_or(input.len(), |&(p, _)| p);
                out.push((pos, Token::Ident(input[chars[start].0..end].to_string())));
            }
            _ => {
                let tok = match c {
                    '+' => Token::Plus,
                    '-' => Token::Minus,
                    '*' => Token::Star,
                    '/' => Token::Slash,
                    '^' => Token::Caret,
                    '(' => Token::LParen,
                    ')' => Token::RParen,
                    other => {
                        return Err(ParseError::new(
                            input,
                            pos,
                            format!("unexpected character `{other}`"),
                        ))
                    }
                };
                out.push((pos, tok));
                i += 1;
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    input: &'a str,
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map_or(self.input.len(), |&(o, _)| o)
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.input, self.offset(), msg)
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<DiscElement, ParseError> {
        let mut negate = false;
        if self.eat(&Token::Minus) {
            negate = true;
        } else {
            self.eat(&Token::Plus);
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat(&Token::Plus) {
                acc += &self.term()?;
            } else if self.eat(&Token::Minus) {
                acc -= &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<DiscElement, ParseError> {
        let mut acc = self.power()?;
        while self.eat(&Token::Star) {
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<DiscElement, ParseError> {
        let base = self.atom()?;
        if !self.eat(&Token::Caret) {
            return Ok(base);
        }
        let negative = self.eat(&Token::Minus);
        let exp = match self.peek() {
            Some(Token::Int(n)) => {
                let n = u32::try_from(n.clone()).map_err(|_| self.error("exponent too large"))?;
                self.pos += 1;
                n
            }
            _ => return Err(self.error("expected integer exponent")),
        };
        if !negative {
            return Ok(base.pow(exp));
        }
        let inverse = base
            .as_scalar()
            .and_then(|c| c.monomial_inverse())
            .ok_or_else(|| self.error("negative powers need an invertible scalar base"))?;
        Ok(DiscElement::scalar(inverse).pow(exp))
    }

    fn atom(&mut self) -> Result<DiscElement, ParseError> {
        let offset = self.offset();
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| self.error("unexpected end of input"))?;
        self.pos += 1;
        match tok {
            Token::Int(num) => {
                let mut value = BigRational::from_integer(num);
                if self.eat(&Token::Slash) {
                    match self.peek().cloned() {
                        Some(Token::Int(den)) if !den.is_zero() => {
                            self.pos += 1;
                            value /= BigRational::from_integer(den);
                        }
                        _ => return Err(self.error("expected nonzero denominator")),
                    }
                }
                let c = GaussRational::new(value, BigRational::zero());
                Ok(DiscElement::scalar(QLaurent::constant(c)))
            }
            Token::Ident(name) => match name.as_str() {
                "z" => Ok(DiscElement::z()),
                "zs" => Ok(DiscElement::zs()),
                "q" => Ok(DiscElement::scalar(QLaurent::q_pow(1))),
                "i" => Ok(DiscElement::scalar(QLaurent::constant(GaussRational::i()))),
                other => Err(ParseError::new(
                    self.input,
                    offset,
                    format!("unknown symbol `{other}`"),
                )),
            },
            Token::LParen => {
                let inner = self.expr()?;
                if !self.eat(&Token::RParen) {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            _ => Err(ParseError::new(
                self.input,
                offset,
                "expected a number, symbol, or `(`",
            )),
        }
    }
}

impl FromStr for DiscElement {
    type Err = ParseError;

    fn from_str(input: &str) -> Result<Self, ParseError> {
        let tokens = tokenize(input)?;
        if tokens.is_empty() {
            return Err(ParseError::new(input, 0, "empty element"));
        }
        let mut parser = Parser {
            input,
            tokens,
            pos: 0,
        };
        let value = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(value)
    }
}

/// Parses a Laurent polynomial in `q` using the element grammar.
impl FromStr for QLaurent {
    type Err = ParseError;

    fn from_str(input: &str) -> Result<Self, ParseError> {
        let p: DiscElement = input.parse()?;
        p.as_scalar()
            .ok_or_else(|| ParseError::new(input, 0, "expected a scalar (no z or zs)"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::DiscMonomial;
    use num_traits::One;

    fn q(k: i64) -> QLaurent {
        QLaurent::q_pow(k)
    }

    #[test]
    fn parses_documented_example() {
        let p: DiscElement = "(1-q^2)*z^2*zs^1".parse().unwrap();
        let want = DiscElement::term(DiscMonomial::new(2, 1), &QLaurent::one() - &q(2));
        assert_eq!(p, want);
        assert_eq!(p.to_string(), "(1-q^2)*z^2*zs");
    }

    #[test]
    fn parse_normalizes_words() {
        let p: DiscElement = "zs*z".parse().unwrap();
        assert_eq!(p.to_string(), "(1-q^2)+q^2*z*zs");
        let back: DiscElement = p.to_string().parse().unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn scalars_and_signs() {
        let p: DiscElement = "-i*q^-1*zs + 1/2".parse().unwrap();
        assert_eq!(p.to_string(), "1/2-i*q^-1*zs");
        let c: DiscElement = "(1+2*i)*q*z".parse().unwrap();
        assert_eq!(c.to_string(), "(1+2*i)*q*z");
        assert_eq!("0".parse::<DiscElement>().unwrap(), DiscElement::zero());
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["", "z^-1", "w", "(z", "z +", "1/0", "z z"] {
            assert!(bad.parse::<DiscElement>().is_err(), "{bad}");
        }
    }

    #[test]
    fn laurent_from_str() {
        let p: QLaurent = "1-q^2".parse().unwrap();
        assert_eq!(p, &QLaurent::one() - &q(2));
        assert!("z".parse::<QLaurent>().is_err());
    }
}
