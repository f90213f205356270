//! Parser for the element-expression grammar.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' '-'? integer)?
//! atom  := integer | identifier | '(' expr ')' | '(' expr '|' expr ')'
//! ```
//!
//! Division and negative exponents go through `invert`, so `1/3*x^-2` is read
//! in any ring where `3` and `x` are units. Matrices are written
//! `[[a, b], [c, d]]`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ring::ExprRing;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str, offset: usize) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((
                offset + start,
                Tok::Int(src[start..i].parse().expect("digits")),
            ));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((offset + start, Tok::Ident(src[start..i].to_string())));
        } else if "+-*/^()|".contains(c) {
            out.push((offset + i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse {
                pos: offset + i,
                msg: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn expr<R: ExprRing>(&mut self, ring: &R) -> Result<R::Elem> {
        let mut acc = self.term(ring)?;
        loop {
            if self.eat('+') {
                acc = ring.add(&acc, &self.term(ring)?);
            } else if self.eat('-') {
                acc = ring.sub(&acc, &self.term(ring)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<R: ExprRing>(&mut self, ring: &R) -> Result<R::Elem> {
        let mut acc = self.unary(ring)?;
        loop {
            if self.eat('*') {
                acc = ring.mul(&acc, &self.unary(ring)?);
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let at = self.here();
                self.pos += 1;
                let d = self.unary(ring)?;
                let inv = ring.try_invert(&d).map_err(|e| Error::Parse {
                    pos: at,
                    msg: format!("cannot divide: {e}"),
                })?;
                acc = ring.mul(&acc, &inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary<R: ExprRing>(&mut self, ring: &R) -> Result<R::Elem> {
        if self.eat('-') {
            Ok(ring.neg(&self.unary(ring)?))
        } else {
            self.power(ring)
        }
    }

    fn power<R: ExprRing>(&mut self, ring: &R) -> Result<R::Elem> {
        let at = self.here();
        let base = self.atom(ring)?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let e: u64 = match self.peek() {
            Some(Tok::Int(n)) => match u64::try_from(n) {
                Ok(e) => e,
                Err(_) => return self.err("exponent too large"),
            },
            _ => return self.err("expected an integer exponent"),
        };
        self.pos += 1;
        let b = if negative {
            ring.try_invert(&base).map_err(|e| Error::Parse {
                pos: at,
                msg: format!("negative power: {e}"),
            })?
        } else {
            base
        };
        Ok(ring.pow(&b, e))
    }

    fn atom<R: ExprRing>(&mut self, ring: &R) -> Result<R::Elem> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                ring.from_rational(&BigRational::from_integer(n))
                    .map_err(|e| Error::Parse {
                        pos: at,
                        msg: e.to_string(),
                    })
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match ring.generator(&name) {
                    Some(g) => Ok(g),
                    None => Err(Error::Parse {
                        pos: at,
                        msg: format!("unknown identifier {name:?}"),
                    }),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                if let Some((left, right)) = ring.factors() {
                    let save = self.pos;
                    if let Ok(a) = self.expr(&left) {
                        if self.eat('|') {
                            let b = self.expr(&right)?;
                            self.expect(')')?;
                            return match ring.pair(&a, &b) {
                                Some(p) => Ok(p),
                                None => Err(Error::Parse {
                                    pos: at,
                                    msg: "invalid product element".into(),
                                }),
                            };
                        }
                    }
                    self.pos = save;
                }
                let a = self.expr(ring)?;
                if self.peek() == Some(&Tok::Sym('|')) {
                    return self.err("'|' is only valid in product rings");
                }
                self.expect(')')?;
                Ok(a)
            }
            Some(_) => self.err("unexpected token"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_at<R: ExprRing>(ring: &R, src: &str, offset: usize) -> Result<R::Elem> {
    let toks = tokenize(src, offset)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        end: offset + src.len(),
    };
    let v = p.expr(ring)?;
    if p.pos != toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

/// Parse one element.
pub fn parse_element<R: ExprRing>(ring: &R, src: &str) -> Result<R::Elem> {
    parse_at(ring, src, 0)
}

/// Parse `[[a, b, ...], ...]` into a matrix; rows must have equal length.
pub fn parse_matrix<R: ExprRing>(ring: &R, src: &str) -> Result<Matrix<R::Elem>> {
    let bytes = src.as_bytes();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    let expect = |i: &mut usize, c: u8| -> Result<()> {
        if *i < bytes.len() && bytes[*i] == c {
            *i += 1;
            Ok(())
        } else {
            Err(Error::Parse {
                pos: *i,
                msg: format!("expected '{}'", c as char),
            })
        }
    };
    skip_ws(&mut i);
    expect(&mut i, b'[')?;
    let mut rows = Vec::new();
    loop {
        skip_ws(&mut i);
        expect(&mut i, b'[')?;
        let mut row = Vec::new();
        loop {
            let start = i;
            let mut depth = 0i32;
            while i < bytes.len() {
                match bytes[i] {
                    b'(' => depth += 1,
                    b')' => depth -= 1,
                    b',' | b']' if depth == 0 => break,
                    b'[' => {
                        return Err(Error::Parse {
                            pos: i,
                            msg: "unexpected '['".into(),
                        })
                    }
                    _ => {}
                }
                i += 1;
            }
            if i == bytes.len() {
                return Err(Error::Parse {
                    pos: i,
                    msg: "unterminated row".into(),
                });
            }
            row.push(parse_at(ring, &src[start..i], start)?);
            if bytes[i] == b',' {
                i += 1;
            } else {
                i += 1;
                break;
            }
        }
        rows.push(row);
        skip_ws(&mut i);
        if i < bytes.len() && bytes[i] == b',' {
            i += 1;
            continue;
        }
        expect(&mut i, b']')?;
        break;
    }
    skip_ws(&mut i);
    if i != bytes.len() {
        return Err(Error::Parse {
            pos: i,
            msg: "trailing input".into(),
        });
    }
    let n = rows[0].len();
    if let Some(k) = rows.iter().position(|r| r.len() != n) {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("row {k} has {} entries, expected {n}", rows[k].len()),
        });
    }
    Matrix::from_rows(rows)
}
