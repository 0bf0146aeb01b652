//! Recursive-descent parser for polynomial expressions over named variables.
//!
//! Grammar: sums of products with `+ - * ^`, parentheses, integer or decimal
//! literals, the imaginary unit `i`, and division by nonzero constants.

use super::poly::Poly;
use super::scalar::Scalar;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Num, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Op(char),
}

struct Lexer<'a> {
    src: &'a str,
    line: usize,
    col0: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(&self) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut out = Vec::new();
        let chars: Vec<char> = self.src.chars().collect();
        let mut k = 0;
        while k < chars.len() {
            let c = chars[k];
            let col = self.col0 + k;
            if c.is_whitespace() {
                k += 1;
            } else if c.is_ascii_digit() || c == '.' {
                let start = k;
                while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                    k += 1;
                }
                let s: String = chars[start..k].iter().collect();
                out.push((Tok::Num(parse_decimal(&s).ok_or_else(|| self.err(col, format!("bad number '{}'", s)))?), col));
            } else if c.is_alphabetic() || c == '_' {
                let start = k;
                while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                    k += 1;
                }
                out.push((Tok::Ident(chars[start..k].iter().collect()), col));
            } else if "+-*/^()".contains(c) {
                out.push((Tok::Op(c), col));
                k += 1;
            } else {
                return Err(self.err(col, format!("unexpected character '{}'", c)));
            }
        }
        Ok(out)
    }

    fn err(&self, col: usize, message: String) -> ParseError {
        ParseError { line: self.line, column: col + 1, message }
    }
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let mut parts = s.split('.');
    let int = parts.next()?;
    let frac = parts.next().unwrap_or("");
    if parts.next().is_some() || (int.is_empty() && frac.is_empty()) {
        return None;
    }
    let digits = format!("{}{}", int, frac);
    let n = BigInt::from_str_radix(&digits, 10).ok()?;
    let d = BigInt::from(10u32).pow(frac.len() as u32);
    Some(BigRational::new(n, d))
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    names: &'a [String],
    lex: &'a Lexer<'a>,
    end_col: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end_col)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        self.lex.err(self.col(), msg.into())
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                -self.term()?
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(Tok::Op(c)) = self.peek() {
            let c = *c;
            if c != '+' && c != '-' {
                break;
            }
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.power()?;
        while let Some(Tok::Op(c)) = self.peek() {
            let c = *c;
            if c != '*' && c != '/' {
                break;
            }
            self.pos += 1;
            let col = self.col();
            let f = self.power()?;
            if c == '*' {
                acc = &acc * &f;
            } else {
                if !f.is_constant() || f.is_zero() {
                    return Err(self.lex.err(col, "division only by nonzero constants".into()));
                }
                acc = acc.scale(&f.constant_term().inv().unwrap());
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) if n.is_integer() && n >= BigRational::zero() => {
                    self.pos += 1;
                    let e: u32 = n.to_integer().try_into().map_err(|_| self.err("exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.err("expected nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Poly::constant(self.nvars(), Scalar::real(n)))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                if let Some(k) = self.names.iter().position(|n| *n == s) {
                    Ok(Poly::var(self.nvars(), k))
                } else if s == "i" || s == "I" {
                    Ok(Poly::constant(self.nvars(), Scalar::i()))
                } else {
                    self.pos -= 1;
                    Err(self.err(format!("unknown variable '{}'", s)))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(self.err("expected ')'")),
                }
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(Tok::Op(c)) => Err(self.err(format!("unexpected '{}'", c))),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

/// Parses `src` as a polynomial in the given variables.
pub fn parse_poly(src: &str, names: &[String]) -> Result<Poly, ParseError> {
    parse_poly_at(src, names, 1, 0)
}

/// As [`parse_poly`], reporting positions relative to `line` and column offset `col0`.
pub fn parse_poly_at(src: &str, names: &[String], line: usize, col0: usize) -> Result<Poly, ParseError> {
    let lex = Lexer { src, line, col0 };
    let toks = lex.tokens()?;
    let end_col = col0 + src.chars().count();
    let mut p = Parser { toks, pos: 0, names, lex: &lex, end_col };
    if p.peek().is_none() {
        return Err(p.err("empty expression"));
    }
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

/// Parses a scalar literal expression (no variables).
pub fn parse_scalar(src: &str) -> Result<Scalar, ParseError> {
    let p = parse_poly(src, &[])?;
    Ok(p.constant_term())
}
