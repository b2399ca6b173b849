//! Exact scalars and the polynomial rings the weight system lives in:
//! `Q[c]`, `Q[c][y]` (or `Q[c][x]`), `Q[c1, c2, x]`, plus truncated expansion
//! of rational functions in an auxiliary variable `t`.

mod poly3;
mod poly_c;
mod poly_cy;
mod rational;
mod series;

pub use poly3::PolyC1C2X;
pub use poly_c::PolyC;
pub use poly_cy::PolyCY;
pub use rational::Rational;
pub use series::{expand_rational_series, SeriesCoeffs};

pub(crate) use poly_c::fmt_power;

/// Renders `coeff * monomial` terms, highest first, as `c^3 - 3c^2 + 2c`.
pub(crate) fn fmt_terms(terms: impl Iterator<Item = (Rational, String)>) -> String {
    let mut out = String::new();
    for (coeff, mono) in terms {
        let negative = coeff.is_negative();
        let mag = coeff.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let body = if mono.is_empty() {
            mag.to_string()
        } else if mag.is_one() {
            mono
        } else if mag.is_integer() {
            format!("{mag}{mono}")
        } else {
            format!("({mag}){mono}")
        };
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
