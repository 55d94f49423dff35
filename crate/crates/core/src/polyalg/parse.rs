//! Text format for homogeneous polynomials.
//!
//! Terms are joined by `+`/`-`; each term is `[coef*]x<i>[^e]*...` with
//! 1-based variable indices and rational coefficients written as `p/q` or
//! integers, e.g. `3/2*x1^2*x2 - x3^3`. Parse errors carry the byte position.

use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

use super::{HomogeneousPolynomial, Monomial};

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a digit"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| self.err("integer too large"))
    }

    /// `p` or `p/q`, unsigned (signs are handled at the term level).
    fn rational(&mut self) -> Result<Rational> {
        let n = self.integer()?;
        if self.peek() == Some(b'/') {
            self.bump();
            let dpos = self.pos;
            let d = self.integer()?;
            if d == 0 {
                return Err(Error::Parse {
                    position: dpos,
                    message: "zero denominator".into(),
                });
            }
            Ok(Rational::new(n.into(), d.into()))
        } else {
            Ok(Rational::from_integer(n.into()))
        }
    }

    /// `x<i>[^e]`, returning the 0-based variable index and the exponent.
    fn var_factor(&mut self, dim: usize) -> Result<(usize, u32)> {
        let xpos = self.pos;
        if self.bump() != Some(b'x') {
            return Err(Error::Parse {
                position: xpos,
                message: "expected a variable like x1".into(),
            });
        }
        let ipos = self.pos;
        let i = self.integer()?;
        if i == 0 || i as usize > dim {
            return Err(Error::Parse {
                position: ipos,
                message: format!("variable index {i} out of range 1..={dim}"),
            });
        }
        let e = if self.peek() == Some(b'^') {
            self.bump();
            self.integer()? as u32
        } else {
            1
        };
        Ok((i as usize - 1, e))
    }

    /// One term: optional coefficient, then `*`-joined variable factors.
    fn term(&mut self, dim: usize) -> Result<(Monomial, Rational)> {
        let mut coef = Rational::one();
        let mut exps = vec![0u32; dim];

        if matches!(self.peek(), Some(b'0'..=b'9')) {
            coef = self.rational()?;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.bump();
                self.skip_ws();
            } else if self.peek() == Some(b'x') {
                return Err(self.err("missing '*' between coefficient and variable"));
            } else {
                // constant term
                return Ok((Monomial::constant(dim), coef));
            }
        }

        loop {
            let (i, e) = self.var_factor(dim)?;
            exps[i] += e;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.bump();
                self.skip_ws();
            } else {
                break;
            }
        }
        Ok((Monomial::new(exps), coef))
    }
}

impl HomogeneousPolynomial {
    /// Parses the text format in ambient dimension `dim`. All terms must
    /// share the same total degree.
    pub fn parse(dim: usize, input: &str) -> Result<Self> {
        let mut cur = Cursor::new(input);
        cur.skip_ws();
        if cur.peek().is_none() {
            return Err(cur.err("empty polynomial"));
        }

        let mut terms: Vec<(usize, Monomial, Rational)> = Vec::new();
        let mut negative = false;
        if cur.peek() == Some(b'-') {
            cur.bump();
            negative = true;
            cur.skip_ws();
        } else if cur.peek() == Some(b'+') {
            cur.bump();
            cur.skip_ws();
        }

        loop {
            let term_pos = cur.pos;
            let (m, mut c) = cur.term(dim)?;
            if negative {
                c = -c;
            }
            terms.push((term_pos, m, c));
            cur.skip_ws();
            match cur.peek() {
                None => break,
                Some(b'+') => {
                    cur.bump();
                    negative = false;
                }
                Some(b'-') => {
                    cur.bump();
                    negative = true;
                }
                Some(_) => return Err(cur.err("expected '+', '-', or end of input")),
            }
            cur.skip_ws();
        }

        let degree = terms[0].1.degree() as usize;
        for (pos, m, _) in &terms {
            if m.degree() as usize != degree {
                return Err(Error::Parse {
                    position: *pos,
                    message: format!(
                        "not homogeneous: term of degree {} after degree {}",
                        m.degree(),
                        degree
                    ),
                });
            }
        }
        HomogeneousPolynomial::from_terms(dim, degree, terms.into_iter().map(|(_, m, c)| (m, c)))
    }
}

fn format_monomial(m: &Monomial, out: &mut String) {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push('x');
        out.push_str(&(i + 1).to_string());
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

pub(super) fn format_polynomial(
    p: &HomogeneousPolynomial,
    f: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    let mut s = String::new();
    // descending graded-lex: leading term first
    for (idx, (m, c)) in p.iter().rev().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if idx == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let constant = m.degree() == 0;
        if constant {
            s.push_str(&format_rational(&abs));
        } else {
            if !abs.is_one() {
                s.push_str(&format_rational(&abs));
                s.push('*');
            }
            format_monomial(m, &mut s);
        }
    }
    f.write_str(&s)
}
