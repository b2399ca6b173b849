use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::fmt_terms;
use super::Rational;
use crate::error::{Error, Result};

/// Univariate polynomial in the Casimir variable `c`, dense, ascending powers.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyC {
    coeffs: Vec<Rational>,
}

impl PolyC {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        PolyC { coeffs }
    }

    /// Convenience constructor from integer coefficients, ascending.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        PolyC::from_coeffs(coeffs.iter().map(|&n| Rational::from_int(n)).collect())
    }

    pub fn zero() -> Self {
        PolyC { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyC::constant(Rational::one())
    }

    pub fn constant(r: Rational) -> Self {
        PolyC::from_coeffs(vec![r])
    }

    /// The variable `c`.
    pub fn c() -> Self {
        PolyC::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// `c - r`
    pub fn c_minus(r: Rational) -> Self {
        PolyC::from_coeffs(vec![-r, Rational::one()])
    }

    pub fn monomial(coeff: Rational, deg: usize) -> Self {
        let mut v = vec![Rational::zero(); deg + 1];
        v[deg] = coeff;
        PolyC::from_coeffs(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Rational::is_one)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, r: &Rational) -> PolyC {
        if r.is_zero() {
            return PolyC::zero();
        }
        PolyC { coeffs: self.coeffs.iter().map(|a| a * r).collect() }
    }

    pub fn pow(&self, exp: u32) -> PolyC {
        let mut acc = PolyC::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc * at + a;
        }
        acc
    }

    /// Composition `self(inner(c))`.
    pub fn compose(&self, inner: &PolyC) -> PolyC {
        let mut acc = PolyC::zero();
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &PolyC::constant(a.clone());
        }
        acc
    }

    /// Euclidean division over the rationals.
    pub fn div_rem(&self, divisor: &PolyC) -> Result<(PolyC, PolyC)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::InvalidInput("division by the zero polynomial".into()));
        };
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let q = &rem[top] / &lead;
            if !q.is_zero() {
                for (i, b) in divisor.coeffs.iter().enumerate() {
                    let t = &q * b;
                    rem[top - dd + i] -= &t;
                }
            }
            quot[top - dd] = q;
            rem.pop();
        }
        Ok((PolyC::from_coeffs(quot), PolyC::from_coeffs(rem)))
    }

    /// Exact quotient; fails when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &PolyC) -> Result<PolyC> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible(format!("{self} by {divisor}")))
        }
    }

    /// Lagrange interpolation through points with distinct abscissae.
    pub fn interpolate(points: &[(Rational, Rational)]) -> PolyC {
        let mut acc = PolyC::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = PolyC::constant(yi.clone());
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    let denom = (xi - xj).recip();
                    basis = (&basis * &PolyC::c_minus(xj.clone())).scale(&denom);
                }
            }
            acc = &acc + &basis;
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "var": "c",
            "coeffs": self.coeffs.iter().map(Rational::to_wire).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<PolyC> {
        let var = v.get("var").and_then(|x| x.as_str());
        if var != Some("c") {
            return Err(Error::Parse(format!("expected a PolyC in c, got var {var:?}")));
        }
        let coeffs = v
            .get("coeffs")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Parse("PolyC without coeffs".into()))?;
        let coeffs = coeffs
            .iter()
            .map(|x| {
                x.as_str()
                    .ok_or_else(|| Error::Parse("coefficient must be a \"num/den\" string".into()))
                    .and_then(str::parse)
            })
            .collect::<Result<Vec<Rational>>>()?;
        Ok(PolyC::from_coeffs(coeffs))
    }
}

impl From<Rational> for PolyC {
    fn from(r: Rational) -> Self {
        PolyC::constant(r)
    }
}

impl From<i64> for PolyC {
    fn from(n: i64) -> Self {
        PolyC::constant(Rational::from_int(n))
    }
}

impl Add for &PolyC {
    type Output = PolyC;
    fn add(self, rhs: &PolyC) -> PolyC {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        PolyC::from_coeffs(v)
    }
}

impl Sub for &PolyC {
    type Output = PolyC;
    fn sub(self, rhs: &PolyC) -> PolyC {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        PolyC::from_coeffs(v)
    }
}

impl Mul for &PolyC {
    type Output = PolyC;
    fn mul(self, rhs: &PolyC) -> PolyC {
        if self.is_zero() || rhs.is_zero() {
            return PolyC::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += &(a * b);
            }
        }
        PolyC::from_coeffs(v)
    }
}

impl Add for PolyC {
    type Output = PolyC;
    fn add(self, rhs: PolyC) -> PolyC {
        &self + &rhs
    }
}

impl Sub for PolyC {
    type Output = PolyC;
    fn sub(self, rhs: PolyC) -> PolyC {
        &self - &rhs
    }
}

impl Mul for PolyC {
    type Output = PolyC;
    fn mul(self, rhs: PolyC) -> PolyC {
        &self * &rhs
    }
}

impl Neg for &PolyC {
    type Output = PolyC;
    fn neg(self) -> PolyC {
        PolyC { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Neg for PolyC {
    type Output = PolyC;
    fn neg(self) -> PolyC {
        -&self
    }
}

impl fmt::Display for PolyC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| (a.clone(), fmt_power("c", i)));
        f.write_str(&fmt_terms(terms))
    }
}

impl fmt::Debug for PolyC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyC({self})")
    }
}

pub(crate) fn fmt_power(var: &str, exp: usize) -> String {
    match exp {
        0 => String::new(),
        1 => var.to_string(),
        e => format!("{var}^{e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn difference_of_squares() {
        let p = &PolyC::from_ints(&[1, 1]) * &PolyC::from_ints(&[-1, 1]);
        assert_eq!(p, PolyC::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn evaluate() {
        let p = PolyC::from_ints(&[0, -1, 1]);
        assert_eq!(p.eval(&Rational::from_int(3)), Rational::from_int(6));
    }

    #[test]
    fn zero_degree_is_none() {
        assert_eq!(PolyC::zero().degree(), None);
        assert_eq!(PolyC::from_ints(&[0, 0]).degree(), None);
        assert_eq!(PolyC::c().degree(), Some(1));
    }

    #[test]
    fn exact_division() {
        let a = PolyC::from_ints(&[0, 2, -3, 1]);
        let b = PolyC::from_ints(&[-1, 1]);
        assert_eq!(a.div_exact(&b).unwrap(), PolyC::from_ints(&[0, -2, 1]));
        assert!(a.div_exact(&PolyC::from_ints(&[3, 1])).is_err());
    }

    #[test]
    fn json_shape() {
        let v = PolyC::c().to_json();
        assert_eq!(v.to_string(), r#"{"var":"c","coeffs":["0/1","1/1"]}"#);
        assert_eq!(PolyC::from_json(&v).unwrap(), PolyC::c());
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let p = PolyC::from_ints(&[0, 2, -3, 1]);
        let pts: Vec<_> = (1..=4).map(|k| (Rational::from_int(k), p.eval(&Rational::from_int(k)))).collect();
        assert_eq!(PolyC::interpolate(&pts), p);
    }

    #[test]
    fn display() {
        assert_eq!(PolyC::from_ints(&[0, 2, -3, 1]).to_string(), "c^3 - 3c^2 + 2c");
        assert_eq!(PolyC::zero().to_string(), "0");
        let p = PolyC::from_coeffs(vec![Rational::new(-1, 2), Rational::new(2, 3)]);
        assert_eq!(p.to_string(), "(2/3)c - 1/2");
    }
}
