//! Recursive-descent parser for the polynomial input grammar:
//!
//! ```text
//! poly   := term (('+' | '-') term)*
//! term   := [coeff '*'] factor ('*' factor)* | coeff
//! factor := var ['^' uint]
//! coeff  := ['-'] uint ['/' uint]
//! ```
//!
//! Whitespace is ignored. Offsets in errors are byte offsets into the input.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Monomial, Polynomial, VarSystem};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok<'a> {
    Ident(&'a str),
    UInt(&'a str),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next_token(&mut self) -> Result<(usize, Tok<'a>)> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&b) = bytes.get(start) else {
            return Ok((start, Tok::End));
        };
        let single = match b {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            _ => None,
        };
        if let Some(tok) = single {
            self.pos += 1;
            return Ok((start, tok));
        }
        if b.is_ascii_digit() {
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            return Ok((start, Tok::UInt(&self.src[start..self.pos])));
        }
        if b.is_ascii_alphabetic() || b == b'_' {
            while self.pos < bytes.len()
                && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_')
            {
                self.pos += 1;
            }
            return Ok((start, Tok::Ident(&self.src[start..self.pos])));
        }
        let ch = self.src[start..].chars().next().unwrap_or('?');
        Err(Error::Syntax {
            offset: start,
            message: format!("unexpected character `{ch}`"),
        })
    }
}

struct Parser<'a, 'v> {
    tokens: Vec<(usize, Tok<'a>)>,
    cursor: usize,
    vars: &'v VarSystem,
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        offset,
        message: message.into(),
    }
}

impl<'a> Parser<'a, '_> {
    fn peek(&self) -> &(usize, Tok<'a>) {
        &self.tokens[self.cursor]
    }

    fn bump(&mut self) -> (usize, Tok<'a>) {
        let t = self.tokens[self.cursor].clone();
        if t.1 != Tok::End {
            self.cursor += 1;
        }
        t
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.vars.len());
        let (m, c) = self.term()?;
        out.add_term(m, c);
        loop {
            let negate = match self.peek().1 {
                Tok::Plus => false,
                Tok::Minus => true,
                Tok::End => break,
                _ => {
                    let (off, _) = *self.peek();
                    return Err(syntax(off, "expected `+`, `-` or end of input"));
                }
            };
            self.bump();
            let (m, c) = self.term()?;
            out.add_term(m, if negate { -c } else { c });
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Monomial, BigRational)> {
        let mut monomial = Monomial::one(self.vars.len());
        let coeff = match self.peek().1 {
            Tok::Minus | Tok::UInt(_) => {
                let c = self.coeff()?;
                if self.peek().1 != Tok::Star {
                    return Ok((monomial, c));
                }
                self.bump();
                c
            }
            _ => BigRational::one(),
        };
        self.factor(&mut monomial)?;
        while self.peek().1 == Tok::Star {
            self.bump();
            self.factor(&mut monomial)?;
        }
        Ok((monomial, coeff))
    }

    fn uint(&mut self, what: &str) -> Result<(usize, &'a str)> {
        match self.bump() {
            (off, Tok::UInt(digits)) => Ok((off, digits)),
            (off, _) => Err(syntax(off, format!("expected {what}"))),
        }
    }

    fn coeff(&mut self) -> Result<BigRational> {
        let negative = if self.peek().1 == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let (_, num) = self.uint("an unsigned integer")?;
        let num: BigInt = num.parse().expect("digits");
        let value = if self.peek().1 == Tok::Slash {
            self.bump();
            let (off, den) = self.uint("a denominator")?;
            let den: BigInt = den.parse().expect("digits");
            if den.is_zero() {
                return Err(Error::ZeroDenominator { offset: off });
            }
            BigRational::new(num, den)
        } else {
            BigRational::from_integer(num)
        };
        Ok(if negative { -value } else { value })
    }

    fn factor(&mut self, monomial: &mut Monomial) -> Result<()> {
        let (off, name) = match self.bump() {
            (off, Tok::Ident(name)) => (off, name),
            (off, _) => return Err(syntax(off, "expected a variable")),
        };
        let idx = self.vars.index_of(name).ok_or_else(|| Error::UnknownVariable {
            name: name.to_string(),
            offset: off,
        })?;
        let exp = if self.peek().1 == Tok::Caret {
            self.bump();
            let (eoff, digits) = self.uint("an exponent")?;
            digits
                .parse::<u32>()
                .map_err(|_| syntax(eoff, "exponent out of range"))?
        } else {
            1
        };
        monomial.0[idx] = monomial.0[idx]
            .checked_add(exp)
            .ok_or_else(|| syntax(off, "exponent out of range"))?;
        Ok(())
    }
}

/// Parses `text` as a polynomial in `vars`, combining like terms.
pub fn parse_poly(text: &str, vars: &VarSystem) -> Result<Polynomial> {
    let mut lexer = Lexer { src: text, pos: 0 };
    let mut tokens = Vec::new();
    loop {
        let tok = lexer.next_token()?;
        let end = tok.1 == Tok::End;
        tokens.push(tok);
        if end {
            break;
        }
    }
    let mut parser = Parser {
        tokens,
        cursor: 0,
        vars,
    };
    parser.poly()
}
