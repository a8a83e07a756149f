//! Recursive-descent parser for sums of monomials:
//!
//! ```text
//! poly   := term (("+"|"-") term)* | "0"
//! term   := [sign] [coeff ["*"]] factor ("*" factor)*  |  [sign] coeff
//! coeff  := integer | integer "/" integer
//! factor := var ["^" integer]
//! ```
//!
//! Whitespace is insignificant. The variable set is supplied by the caller.

use num_bigint::BigInt;
use num_traits::Zero;

use super::Rat;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        position,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("ascii digits");
                out.push(Token {
                    tok: Tok::Int(n),
                    pos: start,
                });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(text[start..i].to_string()),
                    pos: start,
                });
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character '{ch}'")));
            }
        };
        out.push(Token { tok, pos: start });
        i += 1;
    }
    Ok(out)
}

/// One parsed term: exponent vector, coefficient and the byte offset where
/// the term starts.
#[derive(Debug, Clone)]
pub(crate) struct ParsedTerm {
    pub exps: Vec<u32>,
    pub coeff: Rat,
}

struct Parser<'a> {
    toks: Vec<Token>,
    idx: usize,
    end: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|t| &t.tok)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map_or(self.end, |t| t.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.toks.get(self.idx).cloned();
        self.idx += 1;
        t
    }

    fn expect_int(&mut self, what: &str) -> Result<BigInt> {
        let pos = self.pos();
        match self.bump() {
            Some(Token {
                tok: Tok::Int(n), ..
            }) => Ok(n),
            _ => Err(syntax(pos, format!("expected {what}"))),
        }
    }

    fn poly(&mut self) -> Result<Vec<ParsedTerm>> {
        if self.toks.is_empty() {
            return Err(syntax(0, "empty polynomial"));
        }
        let mut terms = vec![self.term(true)?];
        while let Some(tok) = self.peek() {
            match tok {
                Tok::Plus | Tok::Minus => terms.push(self.term(false)?),
                _ => return Err(syntax(self.pos(), "expected '+' or '-'")),
            }
        }
        Ok(terms)
    }

    fn term(&mut self, first: bool) -> Result<ParsedTerm> {
        let pos = self.pos();
        let mut negative = false;
        match self.peek() {
            Some(Tok::Plus) => {
                self.bump();
            }
            Some(Tok::Minus) => {
                negative = true;
                self.bump();
            }
            _ if !first => return Err(syntax(pos, "expected '+' or '-'")),
            _ => {}
        }
        let mut coeff = Rat::from_integer(BigInt::from(1));
        let mut exps = vec![0u32; self.vars.len()];
        let mut have_coeff = false;
        if let Some(Tok::Int(_)) = self.peek() {
            let num = self.expect_int("integer")?;
            let den = if self.peek() == Some(&Tok::Slash) {
                self.bump();
                let dpos = self.pos();
                let d = self.expect_int("denominator")?;
                if d.is_zero() {
                    return Err(syntax(dpos, "zero denominator"));
                }
                d
            } else {
                BigInt::from(1)
            };
            coeff = Rat::new(num, den);
            have_coeff = true;
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    self.factor(&mut exps)?;
                }
                Some(Tok::Ident(_)) => self.factor(&mut exps)?,
                _ => {}
            }
        } else {
            self.factor(&mut exps)?;
        }
        // Remaining "* factor" chain; a bare coefficient ends the term.
        if !have_coeff || exps.iter().any(|&e| e > 0) {
            while self.peek() == Some(&Tok::Star) {
                self.bump();
                self.factor(&mut exps)?;
            }
        }
        if negative {
            coeff = -coeff;
        }
        Ok(ParsedTerm { exps, coeff })
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<()> {
        let pos = self.pos();
        let name = match self.bump() {
            Some(Token {
                tok: Tok::Ident(name),
                ..
            }) => name,
            _ => return Err(syntax(pos, "expected variable")),
        };
        let var = self
            .vars
            .iter()
            .position(|v| *v == name)
            .ok_or_else(|| syntax(pos, format!("unknown variable '{name}'")))?;
        let mut power = 1u32;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let epos = self.pos();
            let e = self.expect_int("exponent")?;
            power = u32::try_from(e).map_err(|_| syntax(epos, "exponent too large"))?;
        }
        exps[var] += power;
        Ok(())
    }
}

pub(crate) fn parse_terms(text: &str, vars: &[&str]) -> Result<Vec<ParsedTerm>> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        idx: 0,
        end: text.len(),
        vars,
    };
    p.poly()
}

#[cfg(test)]
mod tests {
    use super::*;

    const VARS: [&str; 4] = ["s", "u", "t", "v"];

    #[test]
    fn terms_and_coefficients() {
        let t = parse_terms("3/2*s^2*t - u*v + 4", &VARS).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0].exps, vec![2, 0, 1, 0]);
        assert_eq!(t[0].coeff, Rat::new(3.into(), 2.into()));
        assert_eq!(t[1].coeff, Rat::from_integer((-1).into()));
        assert_eq!(t[2].exps, vec![0, 0, 0, 0]);
    }

    #[test]
    fn coefficient_without_star() {
        let t = parse_terms("-2s*t", &VARS).unwrap();
        assert_eq!(t[0].exps, vec![1, 0, 1, 0]);
        assert_eq!(t[0].coeff, Rat::from_integer((-2).into()));
    }

    #[test]
    fn repeated_factor_accumulates() {
        let t = parse_terms("u*u*u^2", &VARS).unwrap();
        assert_eq!(t[0].exps, vec![0, 4, 0, 0]);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_terms("s*t + *u", &VARS) {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 6),
            other => panic!("{other:?}"),
        }
        match parse_terms("s*w", &VARS) {
            Err(Error::Syntax { position, message }) => {
                assert_eq!(position, 2);
                assert!(message.contains("'w'"));
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_terms("", &VARS).is_err());
        assert!(parse_terms("s t", &VARS).is_err());
        assert!(parse_terms("1/0*s", &VARS).is_err());
        assert!(parse_terms("s^", &VARS).is_err());
        assert!(parse_terms("s $ t", &VARS).is_err());
    }
}
