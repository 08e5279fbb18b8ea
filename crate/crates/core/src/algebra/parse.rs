//! Text syntax for polynomials: sums of products of rationals, generator
//! names and parenthesised expressions, with `^` for non-negative integer
//! powers. `3/2 * p_4^2 - chi` is a typical input.

use std::sync::Arc;

use num_traits::Zero;

use super::generators::GeneratorTable;
use super::poly::GradedPolynomial;
use super::rational::{parse_rational, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Token::Plus)),
            '-' => out.push((start, Token::Minus)),
            '*' => out.push((start, Token::Star)),
            '/' => out.push((start, Token::Slash)),
            '^' => out.push((start, Token::Caret)),
            '(' => out.push((start, Token::Open)),
            ')' => out.push((start, Token::Close)),
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Token::Number(text[start..i].to_string())));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'')
                {
                    i += 1;
                }
                out.push((start, Token::Ident(text[start..i].to_string())));
                continue;
            }
            other => {
                return Err(Error::Parse {
                    position: start,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a, F> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    table: &'a Arc<GeneratorTable>,
    resolve: F,
}

impl<F> Parser<'_, F>
where
    F: FnMut(&str) -> Option<GradedPolynomial>,
{
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.position(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<GradedPolynomial> {
        let mut acc = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                -self.term()?
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<GradedPolynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let divisor = self.power()?;
                    let value = match divisor.homogeneous_degree() {
                        Some(0) => divisor.constant_term(),
                        _ => return self.error("can only divide by a non-zero constant"),
                    };
                    if value.is_zero() {
                        return self.error("division by zero");
                    }
                    acc = acc.scale(&(Rational::from_integer(1.into()) / value));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<GradedPolynomial> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Token::Number(n)) => {
                    self.pos += 1;
                    let e: u32 = match n.parse() {
                        Ok(e) => e,
                        Err(_) => return self.error("exponent too large"),
                    };
                    Ok(base.pow(e))
                }
                _ => self.error("expected an integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<GradedPolynomial> {
        match self.peek().cloned() {
            Some(Token::Number(n)) => {
                self.pos += 1;
                let value = parse_rational(&n).expect("digits parse");
                Ok(GradedPolynomial::constant(self.table, value))
            }
            Some(Token::Ident(name)) => {
                let found = (self.resolve)(&name);
                match found {
                    Some(p) => {
                        self.pos += 1;
                        Ok(p)
                    }
                    None => self.error(format!("unknown name `{name}`")),
                }
            }
            Some(Token::Open) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Token::Close) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => self.error("expected `)`"),
                }
            }
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            _ => self.error("expected a number, name or `(`"),
        }
    }
}

/// Parses with a custom name resolver (generator names are tried first).
pub fn parse_with(
    text: &str,
    table: &Arc<GeneratorTable>,
    mut resolve: impl FnMut(&str) -> Option<GradedPolynomial>,
) -> Result<GradedPolynomial> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
        table,
        resolve: |name: &str| match table.position(name) {
            Some(i) => Some(GradedPolynomial::generator(table, i)),
            None => resolve(name),
        },
    };
    if parser.tokens.is_empty() {
        return parser.error("empty expression");
    }
    let result = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return parser.error("unexpected trailing input");
    }
    Ok(result)
}

pub fn parse_polynomial(text: &str, table: &Arc<GeneratorTable>) -> Result<GradedPolynomial> {
    parse_with(text, table, |_| None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Arc<GeneratorTable> {
        Arc::new(
            GeneratorTable::from_pairs([("chi", 4), ("p_4", 4), ("p_8", 8), ("p_4'", 4)]).unwrap(),
        )
    }

    #[test]
    fn parses_printed_form() {
        let t = table();
        for text in ["-1/45 * p_4^2 + 7/45 * p_8", "3/2", "0", "chi * p_4 - p_4'"] {
            let p = parse_polynomial(text, &t).unwrap();
            assert_eq!(p.to_string(), text);
        }
    }

    #[test]
    fn parentheses_and_division() {
        let t = table();
        let p = parse_polynomial("(p_4 - chi)^2 / 2", &t).unwrap();
        let q = parse_polynomial("1/2*p_4^2 - chi*p_4 + 1/2*chi^2", &t).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn errors_carry_position() {
        let t = table();
        match parse_polynomial("p_4 + q_7", &t) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_polynomial("p_4 +", &t).is_err());
        assert!(parse_polynomial("p_4 / p_8", &t).is_err());
        assert!(parse_polynomial("", &t).is_err());
        assert!(parse_polynomial("p_4 $", &t).is_err());
    }

    #[test]
    fn custom_names() {
        let t = table();
        let p = parse_with("2 * L", &t, |name| {
            (name == "L").then(|| GradedPolynomial::named(&t, "p_4").unwrap())
        })
        .unwrap();
        assert_eq!(p.to_string(), "2 * p_4");
    }
}
