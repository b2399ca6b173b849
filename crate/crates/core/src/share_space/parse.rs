//! Text form of elements of S: `"y^2 - y/2"`, `"e_2 + (1/2)e_1 + c^2/3"`.
//!
//! In the `x`/`y` bases the input is a polynomial in that variable and `c`.
//! In the `p`/`e` bases it is a linear combination of the symbols `p_n`
//! (or `e_n`) with coefficients in `c`; a bare coefficient means `p_0`.

use super::{Basis, SElem};
use crate::error::{Error, Result};
use crate::exactalg::{PolyC, PolyCY, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    C,
    Var,
    Sym(usize),
    Op(char),
}

fn tokenize(text: &str, basis: Basis) -> Result<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Tok::Num(digits.parse()?));
        } else if "+-*/^()".contains(ch) {
            out.push(Tok::Op(ch));
            i += 1;
        } else if ch == 'c' {
            out.push(Tok::C);
            i += 1;
        } else if ch.to_string() == basis.letter() {
            i += 1;
            if matches!(basis, Basis::P | Basis::E) {
                if chars.get(i) == Some(&'_') {
                    i += 1;
                }
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let n = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("{ch} needs an index, as in {ch}_2")))?;
                out.push(Tok::Sym(n));
            } else {
                out.push(Tok::Var);
            }
        } else {
            return Err(Error::Parse(format!(
                "unexpected {ch:?} in an element written in the {} basis",
                basis.letter()
            )));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    linear: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<PolyCY> {
        let mut acc = if self.eat('-') { -&self.term()? } else { self.term()? };
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

    fn term(&mut self) -> Result<PolyCY> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                let rhs = self.power_after_op()?;
                acc = self.mul(acc, rhs)?;
            } else if self.eat('/') {
                let d = self.power_after_op()?;
                let r = d
                    .as_constant()
                    .and_then(|p| p.as_constant())
                    .filter(|r| !r.is_zero())
                    .ok_or_else(|| Error::Parse("can only divide by a nonzero number".into()))?;
                acc = acc.scale_rational(&r.recip());
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::C | Tok::Var | Tok::Sym(_) | Tok::Op('('))) {
                let rhs = self.power()?;
                acc = self.mul(acc, rhs)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power_after_op(&mut self) -> Result<PolyCY> {
        if self.eat('-') {
            Ok(-&self.power()?)
        } else {
            self.power()
        }
    }

    fn mul(&self, a: PolyCY, b: PolyCY) -> Result<PolyCY> {
        if self.linear && a.degree().unwrap_or(0) > 0 && b.degree().unwrap_or(0) > 0 {
            return Err(Error::Parse("basis symbols cannot be multiplied together".into()));
        }
        Ok(&a * &b)
    }

    fn power(&mut self) -> Result<PolyCY> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let exp = match self.toks.get(self.pos) {
            Some(Tok::Num(r)) if r.is_integer() => r.to_string().parse::<u32>().ok(),
            _ => None,
        }
        .ok_or_else(|| Error::Parse("exponent must be a nonnegative integer".into()))?;
        self.pos += 1;
        let mut out = PolyCY::one();
        for _ in 0..exp {
            out = self.mul(out, base.clone())?;
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<PolyCY> {
        let tok = self.peek().cloned().ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        Ok(match tok {
            Tok::Num(r) => PolyCY::constant(PolyC::constant(r)),
            Tok::C => PolyCY::constant(PolyC::c()),
            Tok::Var => PolyCY::var(),
            Tok::Sym(n) => PolyCY::var_pow(n),
            Tok::Op('(') => {
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                inner
            }
            Tok::Op(op) => return Err(Error::Parse(format!("unexpected {op:?}"))),
        })
    }
}

pub(super) fn parse(text: &str, basis: Basis) -> Result<SElem> {
    let toks = tokenize(text, basis)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, linear: matches!(basis, Basis::P | Basis::E) };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos + 1)));
    }
    Ok(SElem::from_poly(basis, poly))
}

pub(super) fn parse_c_poly(text: &str) -> Result<PolyC> {
    let v = parse(text, Basis::Y)?;
    if v.degree().unwrap_or(0) > 0 {
        return Err(Error::Parse(format!("{text:?} is not a polynomial in c alone")));
    }
    Ok(v.coeff(0))
}
