//! Recursive-descent parser for polynomial strings such as `x^2*y - 3*z + 1/2`.
//!
//! Grammar: `expr := ['+'|'-'] term (('+'|'-') term)*`, `term := factor ('*' factor)*`,
//! `factor := atom ['^' int]`, `atom := int ['/' int] | ident | '(' expr ')'`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::vector::{ModuleOrder, Term, Vector};

pub struct PolyParser<'a, F: Field> {
    pub field: &'a F,
    pub names: &'a [String],
    pub weights: &'a [u32],
    pub order: &'a ModuleOrder,
}

struct Cursor<'s> {
    src: &'s str,
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        let before = &self.src[..self.pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Parse {
            line,
            column,
            message: msg.into(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&str> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn ident(&mut self) -> Option<&str> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.pos += 1,
            _ => return None,
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Some(&self.src[start..self.pos])
    }
}

type Poly<F> = Vector<<F as Field>::Elem>;

impl<F: Field> PolyParser<'_, F> {
    pub fn parse(&self, src: &str) -> Result<Poly<F>> {
        let mut c = Cursor { src, pos: 0 };
        c.skip_ws();
        if c.peek().is_none() {
            return Err(c.error("empty polynomial"));
        }
        let p = self.expr(&mut c)?;
        c.skip_ws();
        if let Some(ch) = c.peek() {
            return Err(c.error(format!("unexpected character `{ch}`")));
        }
        Ok(p)
    }

    fn constant(&self, e: F::Elem) -> Poly<F> {
        if self.field.is_zero(&e) {
            return Vector::zero();
        }
        Vector::term(Monomial::one(self.names.len()), 0, e)
    }

    fn expr(&self, c: &mut Cursor) -> Result<Poly<F>> {
        let f = self.field;
        let mut neg = false;
        if c.eat('-') {
            neg = true;
        } else {
            c.eat('+');
        }
        let mut acc = self.term(c)?;
        if neg {
            acc = acc.neg(f);
        }
        loop {
            if c.eat('+') {
                let t = self.term(c)?;
                acc = acc.add(&t, f, self.order);
            } else if c.eat('-') {
                let t = self.term(c)?;
                acc = acc.sub(&t, f, self.order);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&self, c: &mut Cursor) -> Result<Poly<F>> {
        let mut acc = self.factor(c)?;
        while c.eat('*') {
            let g = self.factor(c)?;
            acc = acc.mul_poly(&g, self.field, self.order);
        }
        Ok(acc)
    }

    fn factor(&self, c: &mut Cursor) -> Result<Poly<F>> {
        let base = self.atom(c)?;
        if c.eat('^') {
            let Some(d) = c.digits() else {
                return Err(c.error("expected exponent after `^`"));
            };
            let e: u32 = d.parse().map_err(|_| c.error("exponent too large"))?;
            if e > 4096 {
                return Err(c.error("exponent too large"));
            }
            let mut acc = self.constant(self.field.one());
            for _ in 0..e {
                acc = acc.mul_poly(&base, self.field, self.order);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&self, c: &mut Cursor) -> Result<Poly<F>> {
        c.skip_ws();
        let start = c.pos;
        if c.eat('(') {
            let p = self.expr(c)?;
            if !c.eat(')') {
                return Err(c.error("expected `)`"));
            }
            return Ok(p);
        }
        if let Some(num) = c.digits() {
            let n: BigInt = num.parse().expect("digit string");
            let save = c.pos;
            if c.eat('/') {
                let Some(den) = c.digits() else {
                    c.pos = save;
                    return Err(c.error("expected denominator after `/`"));
                };
                let d: BigInt = den.parse().expect("digit string");
                let v = self.field.from_ratio(&n, &d).map_err(|e| {
                    c.pos = start;
                    c.error(e.to_string())
                })?;
                return Ok(self.constant(v));
            }
            return Ok(self.constant(self.field.from_bigint(&n)));
        }
        if let Some(id) = c.ident() {
            let id = id.to_string();
            let Some(i) = self.names.iter().position(|n| *n == id) else {
                c.pos = start;
                return Err(c.error(format!("unknown variable `{id}`")));
            };
            return Ok(Vector::term(
                Monomial::var(i, self.weights),
                0,
                self.field.one(),
            ));
        }
        match c.peek() {
            Some(ch) => Err(c.error(format!("unexpected character `{ch}`"))),
            None => Err(c.error("unexpected end of input")),
        }
    }
}

/// Text form of a polynomial that [`PolyParser`] reads back to the same value.
pub fn format_poly<F: Field>(f: &F, names: &[String], p: &Poly<F>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, t) in p.terms().iter().enumerate() {
        push_term(&mut out, f, names, t, k == 0);
    }
    out
}

fn push_term<F: Field>(out: &mut String, f: &F, names: &[String], t: &Term<F::Elem>, first: bool) {
    let neg = f.is_negative(&t.coeff);
    let abs = if neg { f.neg(&t.coeff) } else { t.coeff.clone() };
    if neg {
        out.push('-');
    } else if !first {
        out.push('+');
    }
    let mono: Vec<String> = t
        .mono
        .exps()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                names[i].clone()
            } else {
                format!("{}^{}", names[i], e)
            }
        })
        .collect();
    let unit = f.is_one(&abs);
    if mono.is_empty() {
        out.push_str(&f.format(&abs));
    } else {
        if !unit {
            out.push_str(&f.format(&abs));
            out.push('*');
        }
        out.push_str(&mono.join("*"));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::monomial::MonomialOrder;

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into(), "z".into()]
    }

    #[test]
    fn roundtrip() {
        let n = names();
        let w = [1, 1, 1];
        let ord = ModuleOrder::new(MonomialOrder::Grevlex, vec![0]);
        let p = PolyParser {
            field: &Rationals,
            names: &n,
            weights: &w,
            order: &ord,
        };
        let a = p.parse("(x+y)^2 - 2*x*y - 1/2*z^3").unwrap();
        let s = format_poly(&Rationals, &n, &a);
        assert_eq!(s, "-1/2*z^3+x^2+y^2");
        assert_eq!(p.parse(&s).unwrap(), a);
    }

    #[test]
    fn errors_carry_position() {
        let n = names();
        let w = [1, 1, 1];
        let ord = ModuleOrder::new(MonomialOrder::Grevlex, vec![0]);
        let f = PrimeField::new(7).unwrap();
        let p = PolyParser {
            field: &f,
            names: &n,
            weights: &w,
            order: &ord,
        };
        match p.parse("x*y +\n  w") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(p.parse("x^").is_err());
        assert!(p.parse("").is_err());
        assert!(p.parse("x/7").is_err());
        assert!(p.parse("1/7").is_err());
    }
}
