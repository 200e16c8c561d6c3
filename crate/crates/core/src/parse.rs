//! Recursive-descent parser for polynomial text.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'i' | variable | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants, which is how rational
//! literals such as `3/2` are written.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = pos;
            while let Some(&(p, d)) = it.peek() {
                if d.is_ascii_digit() {
                    end = p + d.len_utf8();
                    it.next();
                } else {
                    break;
                }
            }
            let n: BigInt = src[pos..end].parse().expect("digits");
            out.push((pos, Tok::Int(n)));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut end = pos;
            while let Some(&(p, d)) = it.peek() {
                if d.is_alphanumeric() || d == '_' {
                    end = p + d.len_utf8();
                    it.next();
                } else {
                    break;
                }
            }
            out.push((pos, Tok::Ident(src[pos..end].to_string())));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                return Err(Error::Syntax { offset: pos, message: format!("unexpected character `{c}`") })
            }
        };
        out.push((pos, tok));
        it.next();
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.offset();
                    let d = self.unary()?;
                    let c = d.constant_value().filter(|c| !c.is_zero()).ok_or_else(|| Error::Syntax {
                        offset: at,
                        message: "division only by a nonzero constant".into(),
                    })?;
                    acc = acc.scale(&c.inv().unwrap());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let (at, tok) = self.bump();
        match tok {
            Tok::Int(n) => {
                let e: u32 = n.try_into().map_err(|_| Error::Syntax {
                    offset: at,
                    message: "exponent too large".into(),
                })?;
                Ok(base.pow(e))
            }
            Tok::Minus => Err(Error::NegativeExponent { offset: at }),
            _ => Err(Error::Syntax { offset: at, message: "expected integer exponent".into() }),
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let (at, tok) = self.bump();
        match tok {
            Tok::Int(n) => {
                Ok(Polynomial::constant(self.nvars(), Scalar::from_rational(BigRational::from_integer(n))))
            }
            Tok::Ident(name) => {
                if let Some(k) = self.vars.iter().position(|v| *v == name) {
                    Ok(Polynomial::var(self.nvars(), k))
                } else if name == "i" {
                    Ok(Polynomial::constant(self.nvars(), Scalar::i()))
                } else {
                    Err(Error::UndeclaredVariable { name, offset: at })
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                let (at, close) = self.bump();
                if close != Tok::RParen {
                    return Err(Error::Syntax { offset: at, message: "expected `)`".into() });
                }
                Ok(inner)
            }
            Tok::End => Err(Error::Syntax { offset: at, message: "unexpected end of input".into() }),
            other => Err(Error::Syntax { offset: at, message: format!("unexpected token {other:?}") }),
        }
    }
}

/// Parse `src` as a polynomial in the given variables. The name `i` denotes
/// the imaginary unit unless it is declared as a variable.
pub fn parse_polynomial<S: AsRef<str>>(src: &str, variables: &[S]) -> Result<Polynomial> {
    let vars: Vec<String> = variables.iter().map(|s| s.as_ref().to_string()).collect();
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, vars: &vars };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(Error::Syntax { offset: p.offset(), message: "trailing input".into() });
    }
    Ok(out)
}
