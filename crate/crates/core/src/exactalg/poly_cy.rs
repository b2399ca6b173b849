use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{fmt_power, PolyC, Rational};
use crate::error::{Error, Result};

/// Polynomial in a second variable (`y` or `x`, fixed by context) with
/// coefficients in `Q[c]`. Dense, ascending, no trailing zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyCY {
    coeffs: Vec<PolyC>,
}

impl PolyCY {
    pub fn from_coeffs(mut coeffs: Vec<PolyC>) -> Self {
        while coeffs.last().is_some_and(PolyC::is_zero) {
            coeffs.pop();
        }
        PolyCY { coeffs }
    }

    pub fn zero() -> Self {
        PolyCY { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyCY::constant(PolyC::one())
    }

    pub fn constant(p: PolyC) -> Self {
        PolyCY::from_coeffs(vec![p])
    }

    /// The second variable itself.
    pub fn var() -> Self {
        PolyCY::from_coeffs(vec![PolyC::zero(), PolyC::one()])
    }

    pub fn var_pow(m: usize) -> Self {
        PolyCY::monomial(PolyC::one(), m)
    }

    pub fn monomial(coeff: PolyC, m: usize) -> Self {
        let mut v = vec![PolyC::zero(); m + 1];
        v[m] = coeff;
        PolyCY::from_coeffs(v)
    }

    pub fn coeffs(&self) -> &[PolyC] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<PolyC> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> PolyC {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient is the constant polynomial 1.
    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|p| *p == PolyC::one())
    }

    pub fn as_constant(&self) -> Option<PolyC> {
        match self.coeffs.len() {
            0 => Some(PolyC::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, p: &PolyC) -> PolyCY {
        PolyCY::from_coeffs(self.coeffs.iter().map(|a| a * p).collect())
    }

    pub fn scale_rational(&self, r: &Rational) -> PolyCY {
        PolyCY::from_coeffs(self.coeffs.iter().map(|a| a.scale(r)).collect())
    }

    /// Multiply by the second variable `k` times.
    pub fn shift(&self, k: usize) -> PolyCY {
        if self.is_zero() {
            return PolyCY::zero();
        }
        let mut v = vec![PolyC::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        PolyCY { coeffs: v }
    }

    /// Substitute the second variable by a polynomial in `c`.
    pub fn eval_var(&self, at: &PolyC) -> PolyC {
        let mut acc = PolyC::zero();
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * at) + a;
        }
        acc
    }

    /// Map every coefficient through `f`.
    pub fn map_coeffs(&self, f: impl Fn(&PolyC) -> PolyC) -> PolyCY {
        PolyCY::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn to_json(&self, var: &str) -> serde_json::Value {
        serde_json::json!({
            "var": var,
            "coeffs": self.coeffs.iter().map(PolyC::to_json).collect::<Vec<_>>(),
        })
    }

    /// Decodes a nested encoding, returning the variable tag too.
    pub fn from_json(v: &serde_json::Value) -> Result<(String, PolyCY)> {
        let var = v
            .get("var")
            .and_then(|x| x.as_str())
            .ok_or_else(|| Error::Parse("missing var".into()))?
            .to_string();
        let coeffs = v
            .get("coeffs")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Parse("missing coeffs".into()))?
            .iter()
            .map(PolyC::from_json)
            .collect::<Result<Vec<_>>>()?;
        Ok((var, PolyCY::from_coeffs(coeffs)))
    }

    pub fn display_with(&self, var: &str) -> String {
        self.display_terms(|i| fmt_power(var, i))
    }

    /// Like [`display_with`](Self::display_with) with a caller-chosen name
    /// for the `i`-th monomial; an empty name marks a bare constant.
    pub fn display_terms(&self, mono_of: impl Fn(usize) -> String) -> String {
        let mut out = String::new();
        for (i, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let mono = mono_of(i);
            let (neg, body) = match a.as_constant() {
                Some(r) => {
                    let mag = r.abs();
                    let body = if mono.is_empty() {
                        mag.to_string()
                    } else if mag.is_one() {
                        mono.clone()
                    } else if mag.is_integer() {
                        format!("{mag}{mono}")
                    } else {
                        format!("({mag}){mono}")
                    };
                    (r.is_negative(), body)
                }
                None if mono.is_empty() => (false, format!("({a})")),
                None => (false, format!("({a}){mono}")),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl Add for &PolyCY {
    type Output = PolyCY;
    fn add(self, rhs: &PolyCY) -> PolyCY {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyCY::from_coeffs((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub for &PolyCY {
    type Output = PolyCY;
    fn sub(self, rhs: &PolyCY) -> PolyCY {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyCY::from_coeffs((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Mul for &PolyCY {
    type Output = PolyCY;
    fn mul(self, rhs: &PolyCY) -> PolyCY {
        if self.is_zero() || rhs.is_zero() {
            return PolyCY::zero();
        }
        let mut v = vec![PolyC::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        PolyCY::from_coeffs(v)
    }
}

impl Add for PolyCY {
    type Output = PolyCY;
    fn add(self, rhs: PolyCY) -> PolyCY {
        &self + &rhs
    }
}

impl Sub for PolyCY {
    type Output = PolyCY;
    fn sub(self, rhs: PolyCY) -> PolyCY {
        &self - &rhs
    }
}

impl Mul for PolyCY {
    type Output = PolyCY;
    fn mul(self, rhs: PolyCY) -> PolyCY {
        &self * &rhs
    }
}

impl Neg for &PolyCY {
    type Output = PolyCY;
    fn neg(self) -> PolyCY {
        PolyCY { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl fmt::Display for PolyCY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("y"))
    }
}

impl fmt::Debug for PolyCY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyCY({self})")
    }
}
