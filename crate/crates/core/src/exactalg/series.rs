use super::PolyCY;
use crate::error::{Error, Result};

/// Coefficients of `t^0 ..= t^order` of a power series over `Q[c][y]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesCoeffs {
    coeffs: Vec<PolyCY>,
}

impl SeriesCoeffs {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &PolyCY {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[PolyCY] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> SeriesCoeffs {
        SeriesCoeffs { coeffs: self.coeffs[..=order.min(self.order())].to_vec() }
    }
}

/// Expands `numerator(t) / denominator(t)` to order `order` in `t`.
///
/// Both arguments are polynomials in `t` given by their coefficient lists.
/// The constant term of the denominator must be a nonzero rational, which
/// makes the recurrence `q_k = (n_k - sum_{j>=1} d_j q_{k-j}) / d_0` exact.
pub fn expand_rational_series(
    numerator: &[PolyCY],
    denominator: &[PolyCY],
    order: usize,
) -> Result<SeriesCoeffs> {
    let d0 = denominator
        .first()
        .and_then(PolyCY::as_constant)
        .and_then(|p| p.as_constant())
        .filter(|r| !r.is_zero())
        .ok_or(Error::SingularSeries)?;
    let inv = d0.recip();
    let mut out: Vec<PolyCY> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = numerator.get(k).cloned().unwrap_or_default();
        for j in 1..=k.min(denominator.len().saturating_sub(1)) {
            acc = &acc - &(&denominator[j] * &out[k - j]);
        }
        out.push(if inv.is_one() { acc } else { acc.scale_rational(&inv) });
    }
    Ok(SeriesCoeffs { coeffs: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{PolyC, Rational};

    fn konst(n: i64) -> PolyCY {
        PolyCY::constant(PolyC::from(n))
    }

    #[test]
    fn geometric_series() {
        // 1 / (1 - y t) = sum y^k t^k
        let s = expand_rational_series(&[konst(1)], &[konst(1), -&PolyCY::var()], 4).unwrap();
        for k in 0..=4 {
            assert_eq!(s.coeff(k), &PolyCY::var_pow(k));
        }
    }

    #[test]
    fn singular_denominator() {
        let err = expand_rational_series(&[konst(1)], &[PolyCY::var()], 2).unwrap_err();
        assert_eq!(err, Error::SingularSeries);
    }

    #[test]
    fn non_unit_constant() {
        // 1 / (2 - 2t) = 1/2 (1 + t + ...)
        let s = expand_rational_series(&[konst(1)], &[konst(2), konst(-2)], 2).unwrap();
        let half = PolyCY::constant(PolyC::constant(Rational::new(1, 2)));
        assert_eq!(s.coeff(2), &half);
    }
}
