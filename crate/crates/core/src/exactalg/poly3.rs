use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{fmt_power, fmt_terms, PolyC, PolyCY, Rational};
use crate::error::{Error, Result};

/// Exponent triple `(a, b, n)` of the monomial `c1^a c2^b x^n`.
pub type Monomial3 = (u32, u32, u32);

/// Sparse polynomial in `c1`, `c2`, `x` over the rationals: the value ring of
/// the weight system on shares before the `c1 = c2 = c` quotient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyC1C2X {
    terms: BTreeMap<Monomial3, Rational>,
}

impl PolyC1C2X {
    pub fn zero() -> Self {
        PolyC1C2X::default()
    }

    pub fn one() -> Self {
        PolyC1C2X::monomial(Rational::one(), (0, 0, 0))
    }

    pub fn monomial(coeff: Rational, exps: Monomial3) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        PolyC1C2X { terms }
    }

    pub fn c1() -> Self {
        PolyC1C2X::monomial(Rational::one(), (1, 0, 0))
    }

    pub fn c2() -> Self {
        PolyC1C2X::monomial(Rational::one(), (0, 1, 0))
    }

    pub fn x() -> Self {
        PolyC1C2X::monomial(Rational::one(), (0, 0, 1))
    }

    pub fn constant(r: Rational) -> Self {
        PolyC1C2X::monomial(r, (0, 0, 0))
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial3, Rational)>) -> Self {
        let mut p = PolyC1C2X::zero();
        for (m, q) in iter {
            p.add_term(m, &q);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial3, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial3) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial3, q: &Rational) {
        if q.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// `self += factor * other`, the accumulation step of the rewrite engine.
    pub fn add_scaled(&mut self, factor: &PolyC1C2X, other: &PolyC1C2X) {
        for (&(a1, b1, n1), q1) in &factor.terms {
            for (&(a2, b2, n2), q2) in &other.terms {
                self.add_term((a1 + a2, b1 + b2, n1 + n2), &(q1 * q2));
            }
        }
    }

    pub fn scale(&self, r: &Rational) -> PolyC1C2X {
        if r.is_zero() {
            return PolyC1C2X::zero();
        }
        PolyC1C2X { terms: self.terms.iter().map(|(m, q)| (*m, q * r)).collect() }
    }

    pub fn pow(&self, exp: u32) -> PolyC1C2X {
        let mut acc = PolyC1C2X::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Maximum exponents of `c1`, `c2`, `x` that occur.
    pub fn degree_bounds(&self) -> Monomial3 {
        self.terms.keys().fold((0, 0, 0), |(a, b, n), &(a2, b2, n2)| {
            (a.max(a2), b.max(b2), n.max(n2))
        })
    }

    /// Maximum of `a + b + n` over the support, `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b, n)| a + b + n).max()
    }

    /// Exchange the roles of the two strands.
    pub fn swap_strands(&self) -> PolyC1C2X {
        PolyC1C2X { terms: self.terms.iter().map(|(&(a, b, n), q)| ((b, a, n), q.clone())).collect() }
    }

    /// The quotient map `c1 = c2 = c`, landing in `Q[c][x]`.
    pub fn identify_casimirs(&self) -> PolyCY {
        let mut by_x: BTreeMap<u32, Vec<Rational>> = BTreeMap::new();
        for (&(a, b, n), q) in &self.terms {
            let deg = (a + b) as usize;
            let v = by_x.entry(n).or_default();
            if v.len() <= deg {
                v.resize(deg + 1, Rational::zero());
            }
            v[deg] += q;
        }
        let top = by_x.keys().next_back().map_or(0, |&n| n as usize + 1);
        let mut coeffs = vec![PolyC::zero(); top];
        for (n, v) in by_x {
            coeffs[n as usize] = PolyC::from_coeffs(v);
        }
        PolyCY::from_coeffs(coeffs)
    }

    /// Substitute `c1 = c2 = c` when `x` does not occur; `None` otherwise.
    pub fn to_poly_c(&self) -> Option<PolyC> {
        let p = self.identify_casimirs();
        p.as_constant()
    }

    pub fn eval(&self, c1: &Rational, c2: &Rational, x: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(&(a, b, n), q)| q * &c1.pow(a) * c2.pow(b) * x.pow(n))
            .sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(&(a, b, n), q)| serde_json::json!({"c1": a, "c2": b, "x": n, "q": q.to_wire()}))
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<PolyC1C2X> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("expected a monomial list".into()))?;
        let mut p = PolyC1C2X::zero();
        for item in arr {
            let exp = |k: &str| {
                item.get(k)
                    .and_then(|x| x.as_u64())
                    .map(|x| x as u32)
                    .ok_or_else(|| Error::Parse(format!("monomial without exponent {k}")))
            };
            let q: Rational = item
                .get("q")
                .and_then(|x| x.as_str())
                .ok_or_else(|| Error::Parse("monomial without q".into()))?
                .parse()?;
            p.add_term((exp("c1")?, exp("c2")?, exp("x")?), &q);
        }
        Ok(p)
    }
}

impl From<&PolyC> for PolyC1C2X {
    /// Embeds a polynomial in `c` as a polynomial in `c1`.
    fn from(p: &PolyC) -> Self {
        PolyC1C2X::from_terms(
            p.coeffs().iter().enumerate().map(|(i, q)| ((i as u32, 0, 0), q.clone())),
        )
    }
}

impl Add for &PolyC1C2X {
    type Output = PolyC1C2X;
    fn add(self, rhs: &PolyC1C2X) -> PolyC1C2X {
        let mut out = self.clone();
        for (m, q) in &rhs.terms {
            out.add_term(*m, q);
        }
        out
    }
}

impl Sub for &PolyC1C2X {
    type Output = PolyC1C2X;
    fn sub(self, rhs: &PolyC1C2X) -> PolyC1C2X {
        let mut out = self.clone();
        for (m, q) in &rhs.terms {
            out.add_term(*m, &-q);
        }
        out
    }
}

impl Mul for &PolyC1C2X {
    type Output = PolyC1C2X;
    fn mul(self, rhs: &PolyC1C2X) -> PolyC1C2X {
        let mut out = PolyC1C2X::zero();
        out.add_scaled(self, rhs);
        out
    }
}

impl Add for PolyC1C2X {
    type Output = PolyC1C2X;
    fn add(self, rhs: PolyC1C2X) -> PolyC1C2X {
        &self + &rhs
    }
}

impl Sub for PolyC1C2X {
    type Output = PolyC1C2X;
    fn sub(self, rhs: PolyC1C2X) -> PolyC1C2X {
        &self - &rhs
    }
}

impl Mul for PolyC1C2X {
    type Output = PolyC1C2X;
    fn mul(self, rhs: PolyC1C2X) -> PolyC1C2X {
        &self * &rhs
    }
}

impl Neg for &PolyC1C2X {
    type Output = PolyC1C2X;
    fn neg(self) -> PolyC1C2X {
        self.scale(&Rational::from_int(-1))
    }
}

impl fmt::Display for PolyC1C2X {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().rev().map(|(&(a, b, n), q)| {
            let parts: Vec<String> = [
                fmt_power("c1", a as usize),
                fmt_power("c2", b as usize),
                fmt_power("x", n as usize),
            ]
            .into_iter()
            .filter(|s| !s.is_empty())
            .collect();
            (q.clone(), parts.join(" "))
        });
        f.write_str(&fmt_terms(terms))
    }
}

impl fmt::Debug for PolyC1C2X {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyC1C2X({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_map() {
        let p = &(&PolyC1C2X::c1() * &PolyC1C2X::c2()) * &PolyC1C2X::x();
        let q = p.identify_casimirs();
        assert_eq!(q, PolyCY::monomial(PolyC::from_ints(&[0, 0, 1]), 1));
    }

    #[test]
    fn cancellation_removes_entries() {
        let p = &PolyC1C2X::x() - &PolyC1C2X::x();
        assert!(p.is_zero());
        assert_eq!(p.to_json().to_string(), "[]");
    }

    #[test]
    fn json_roundtrip() {
        let p = &(&PolyC1C2X::c1() * &PolyC1C2X::c1()) - &PolyC1C2X::c1();
        let v = p.to_json();
        assert_eq!(PolyC1C2X::from_json(&v).unwrap(), p);
        assert_eq!(
            v.to_string(),
            r#"[{"c1":1,"c2":0,"x":0,"q":"-1/1"},{"c1":2,"c2":0,"x":0,"q":"1/1"}]"#
        );
    }
}
