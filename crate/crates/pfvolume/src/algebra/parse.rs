//! Text grammar for polynomials.
//!
//! Grammar: variables are identifiers (`x`, `y`, `x0`..`x9`, ...); literals
//! are integers or rationals `a/b`; operators `+ - * ^` with parentheses.
//! Multiplication is explicit. Printing is canonical (terms in descending
//! graded-lex order), and `parse(print(f)) == f` holds bit-exactly.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::poly::{Monomial, SparsePolynomial, VarSet};
use super::Rat;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("unexpected character `{0}` at byte {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected token at byte {0}")]
    UnexpectedToken(usize),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("exponent out of range")]
    BadExponent,
    #[error("division is only supported in rational literals")]
    BadDivision,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((Tok::Plus, i));
                i += 1;
            }
            '-' => {
                out.push((Tok::Minus, i));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, i));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, i));
                i += 1;
            }
            '/' => {
                out.push((Tok::Slash, i));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().unwrap();
                out.push((Tok::Num(n), start));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
            }
            c => return Err(ParseError::UnexpectedChar(c, i)),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a VarSet,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<SparsePolynomial, ParseError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.next();
                self.term()?.neg()
            }
            Some(Tok::Plus) => {
                self.next();
                self.term()?
            }
            _ => self.term()?,
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
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SparsePolynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some(Tok::Slash) => {
                    // only constant/constant divisions are allowed
                    self.next();
                    let f = self.factor()?;
                    let c = f.as_constant().ok_or(ParseError::BadDivision)?;
                    if c.is_zero() {
                        return Err(ParseError::BadDivision);
                    }
                    acc = acc.mul_scalar(&c.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<SparsePolynomial, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.next();
            match self.next() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n.try_into().map_err(|_| ParseError::BadExponent)?;
                    Ok(base.pow(e))
                }
                Some(_) => Err(ParseError::UnexpectedToken(self.pos - 1)),
                None => Err(ParseError::UnexpectedEnd),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<SparsePolynomial, ParseError> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(SparsePolynomial::constant(
                self.vars.clone(),
                Rat::from_integer(n),
            )),
            Some(Tok::Ident(name)) => {
                if self.vars.index_of(&name).is_none() {
                    return Err(ParseError::UnknownVariable(name));
                }
                Ok(SparsePolynomial::var(self.vars.clone(), &name))
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    Some(_) => Err(ParseError::UnexpectedToken(self.pos - 1)),
                    None => Err(ParseError::UnexpectedEnd),
                }
            }
            Some(Tok::Minus) => Ok(self.atom()?.neg()),
            Some(_) => Err(ParseError::UnexpectedToken(self.pos - 1)),
            None => Err(ParseError::UnexpectedEnd),
        }
    }
}

/// Parse a polynomial over the given variable set.
pub fn parse_polynomial(src: &str, vars: &VarSet) -> Result<SparsePolynomial, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        vars,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ParseError::UnexpectedToken(p.pos));
    }
    Ok(e)
}

/// Canonical printing: descending graded-lex term order.
pub fn print_polynomial(p: &SparsePolynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let names = p.vars().names();
    let mut out = String::new();
    let terms: Vec<(&Monomial, &Rat)> = p.terms().collect();
    for (k, (m, c)) in terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -(*c).clone() } else { (*c).clone() };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mut parts: Vec<String> = Vec::new();
        if !abs.is_one() || m.is_one() {
            if abs.denom().is_one() {
                parts.push(abs.numer().to_string());
            } else {
                parts.push(format!("{}/{}", abs.numer(), abs.denom()));
            }
        }
        for (i, &e) in m.0.iter().enumerate() {
            if e == 1 {
                parts.push(names[i].clone());
            } else if e > 1 {
                parts.push(format!("{}^{}", names[i], e));
            }
        }
        out.push_str(&parts.join("*"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(vars: &[&str]) -> VarSet {
        VarSet::new(vars.iter().map(|s| s.to_string()).collect())
    }

    #[test]
    fn parse_basics() {
        let vars = vs(&["x", "y"]);
        let f = parse_polynomial("1 - 4*x^2 - (y - 1/2)^2", &vars).unwrap();
        assert_eq!(f.degree_in("x"), 2);
        assert_eq!(f.degree_in("y"), 2);
        let g = parse_polynomial("3/4 - x^2 - y^2", &vars).unwrap();
        assert_eq!(g.num_terms(), 3);
    }

    #[test]
    fn print_parse_roundtrip() {
        let vars = vs(&["t", "x", "y"]);
        for src in [
            "1 - x^4 - y^4",
            "(1-x^4-y^4)*(1-(x-1/2)^4-(y-1/3)^4) - t",
            "-x + 7/3*y - 1/2",
            "0",
            "x*y*t",
        ] {
            let f = parse_polynomial(src, &vars).unwrap();
            let printed = print_polynomial(&f);
            let g = parse_polynomial(&printed, &vars).unwrap();
            assert_eq!(f, g, "round trip failed for {src} -> {printed}");
        }
    }

    #[test]
    fn parse_errors() {
        let vars = vs(&["x"]);
        assert!(parse_polynomial("x + z", &vars).is_err());
        assert!(parse_polynomial("x +", &vars).is_err());
        assert!(parse_polynomial("x ^ y", &vars).is_err());
        assert!(parse_polynomial("1/(x)", &vars).is_err());
    }
}
