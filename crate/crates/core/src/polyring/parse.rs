use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Poly, PolyRing};
use crate::error::{Error, Result};
use crate::scalars::{CycRat, Scalar};

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = it.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                it.next();
            }
            out.push((pos, Tok::Num(s.parse().unwrap())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, d)) = it.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                it.next();
            }
            out.push((pos, Tok::Ident(s)));
        } else if "+-*/^()".contains(c) || c == '\u{2212}' {
            out.push((pos, Tok::Op(if c == '\u{2212}' { '-' } else { c })));
            it.next();
        } else {
            return Err(Error::Parse {
                pos,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a PolyRing,
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let pos = self.pos();
                let d = self.unary()?;
                let inv = self.invert(&d, pos)?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn invert(&self, p: &Poly, pos: usize) -> Result<Scalar> {
        let c = p.as_constant().filter(Scalar::is_numeric).ok_or(Error::Parse {
            pos,
            msg: "can only divide by a nonzero numeric constant".into(),
        })?;
        c.inv().map_err(|_| Error::Parse {
            pos,
            msg: "division by zero".into(),
        })
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let pos = self.pos();
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let Some(Tok::Num(n)) = self.peek().cloned() else {
            return self.err("expected an integer exponent");
        };
        self.at += 1;
        let e: u32 = n.try_into().or_else(|_| self.err("exponent too large"))?;
        if negative {
            let inv = self.invert(&base, pos)?;
            Ok(self.ring.constant(inv.pow(e)))
        } else {
            Ok(base.pow(e, self.ring.field()))
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                let q = BigRational::from_integer(n);
                Ok(self.ring.constant(Scalar::from_rational(self.ring.field(), q)))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if let Some(i) = self.ring.var_index(&name) {
                    Ok(self.ring.var(i))
                } else if self.ring.params().contains(&name) {
                    Ok(self.ring.constant(Scalar::symbol(self.ring.field(), &name)))
                } else if name == "z" {
                    let z = CycRat::zeta_pow(self.ring.field(), 1);
                    Ok(self.ring.constant(Scalar::num(z)))
                } else {
                    Err(Error::UnknownSymbol(name))
                }
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

pub(crate) fn parse_poly(ring: &PolyRing, text: &str) -> Result<Poly> {
    let toks = lex(text)?;
    let mut p = Parser {
        ring,
        toks,
        at: 0,
        end: text.len(),
    };
    let out = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::CyclotomicField;

    fn ring(order: u32) -> PolyRing {
        PolyRing::new(
            CyclotomicField::new(order).unwrap(),
            vec!["u1".into(), "u2".into(), "u3".into()],
            vec!["c".into()],
        )
        .unwrap()
    }

    #[test]
    fn commutativity_cancels() {
        assert!(ring(1).parse("u1*u2 - u2*u1").unwrap().is_zero());
    }

    #[test]
    fn parameters_and_rationals() {
        let r = ring(1);
        let p = r.parse("c*u2*u3").unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(r.format(&p), "c*u2*u3");
        assert_eq!(r.parse("u1^2+1").unwrap().len(), 2);
        assert_eq!(r.format(&r.parse("(3/2)*u1 - u2/4").unwrap()), "3/2*u1 - 1/4*u2");
    }

    #[test]
    fn root_of_unity_symbol() {
        let r = ring(4);
        assert_eq!(r.parse("z^2").unwrap(), r.parse("-1").unwrap());
        assert_eq!(r.parse("z^-1").unwrap(), r.parse("-z").unwrap());
        let p = r.parse("(1+z)*u1 - z*u2").unwrap();
        assert_eq!(r.format(&p), "(1 + z)*u1 - z*u2");
        assert_eq!(r.parse(&r.format(&p)).unwrap(), p);
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring(1);
        assert_eq!(r.parse("u4").unwrap_err(), Error::UnknownSymbol("u4".into()));
        assert!(matches!(r.parse("u1 +"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(r.parse("u1/u2"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(r.parse("(u1"), Err(Error::Parse { .. })));
    }
}
