//! Generating functions of join sequences.
//!
//! For a share `I`, `G_I(t) = sum_n <I, y^n> t^n` is a sum of simple
//! fractions `r_k / (1 - u_k t)` with the poles `u_k = c - k(k+1)/2` known in
//! advance. An [`RSeries`] keeps only the residues `r_k`.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::exactalg::{PolyC, Rational};
use crate::share_space::{e_at_c, eigenvalue, u_column, Basis, SElem};

/// Residues `r_k` of a generating function, zero entries omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RSeries {
    terms: BTreeMap<usize, PolyC>,
}

impl RSeries {
    pub fn new() -> Self {
        RSeries::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, PolyC)>) -> Self {
        let mut r = RSeries::new();
        for (k, p) in terms {
            r.add_term(k, &p);
        }
        r
    }

    pub fn add_term(&mut self, k: usize, p: &PolyC) {
        let sum = &self.get(k) + p;
        if sum.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, sum);
        }
    }

    pub fn get(&self, k: usize) -> PolyC {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &PolyC)> {
        self.terms.iter().map(|(k, p)| (*k, p))
    }

    pub fn max_k(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `sum_k r_k u_k^n`, the `n`-th coefficient of the generating function.
    pub fn value(&self, n: u32) -> PolyC {
        self.terms
            .iter()
            .fold(PolyC::zero(), |acc, (k, r)| &acc + &(r * &eigenvalue(*k).pow(n)))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> =
            self.terms.iter().map(|(k, r)| serde_json::json!({"k": k, "r": r.to_json()})).collect();
        serde_json::json!({ "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let terms = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| Error::Parse("series JSON needs \"terms\"".into()))?;
        let mut out = RSeries::new();
        for t in terms {
            let k = t
                .get("k")
                .and_then(|k| k.as_u64())
                .ok_or_else(|| Error::Parse(format!("term without k: {t}")))?;
            let r = PolyC::from_json(t.get("r").unwrap_or(&serde_json::Value::Null))?;
            out.add_term(k as usize, &r);
        }
        Ok(out)
    }
}

impl std::fmt::Display for RSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, r)| format!("r_{k} = {r}")).collect();
        f.write_str(&parts.join("\n"))
    }
}

/// Residues of `G_v`: with `v = sum a_k e_k`, `r_k = a_k e_k(c)`.
pub fn gen_series(v: &SElem) -> RSeries {
    let e = v.to_basis(Basis::E);
    RSeries::from_terms(e.coeffs().iter().enumerate().map(|(k, a)| (k, a * &e_at_c(k))))
}

/// `<v, y^n>` read off the residues.
pub fn series_values(v: &SElem, n: u32) -> PolyC {
    gen_series(v).value(n)
}

/// `r_k -> (-1)^(vcount - k) r_k`: the series of the complement graph.
pub fn dual_rseries(r: &RSeries, vcount: usize) -> Result<RSeries> {
    if r.max_k().is_some_and(|k| k > vcount) {
        return Err(Error::InvalidInput(format!("series has terms beyond k = {vcount}")));
    }
    Ok(RSeries::from_terms(
        r.terms().map(|(k, p)| (k, if (vcount - k).is_multiple_of(2) { p.clone() } else { -p })),
    ))
}

/// `1/(u_j - u_m) = 2/(m(m+1) - j(j+1))`.
fn pole_gap_inverse(j: usize, m: usize) -> Rational {
    let (j, m) = (j as i64, m as i64);
    Rational::new(2, m * (m + 1) - j * (j + 1))
}

/// Unrolls `F_m = (lead + t sum_{i<m} w_i F_i) / (1 - u_m t)` using
/// `t/((1 - u_j t)(1 - u_m t)) = (1/(1 - u_j t) - 1/(1 - u_m t)) / (u_j - u_m)`.
fn unroll(m: usize, lead: &PolyC, weights: &[PolyC], earlier: &[RSeries]) -> RSeries {
    let mut out = RSeries::new();
    out.add_term(m, lead);
    for (i, w) in weights.iter().enumerate().take(m) {
        if w.is_zero() {
            continue;
        }
        for (j, r) in earlier[i].terms() {
            let part = (w * r).scale(&pole_gap_inverse(j, m));
            out.add_term(j, &part);
            out.add_term(m, &-&part);
        }
    }
    out
}

fn cached(table: &'static OnceLock<Mutex<Vec<RSeries>>>, m: usize, next: impl Fn(usize, &[RSeries]) -> RSeries) -> RSeries {
    let mut t = table.get_or_init(Default::default).lock().unwrap_or_else(|e| e.into_inner());
    while t.len() <= m {
        let k = t.len();
        let s = next(k, &t);
        t.push(s);
    }
    t[m].clone()
}

/// Series of the complete bipartite graphs `K_{m,n}`, `n = 0, 1, ...`.
pub fn cb_series(m: usize) -> RSeries {
    static TABLE: OnceLock<Mutex<Vec<RSeries>>> = OnceLock::new();
    cached(&TABLE, m, |k, earlier| unroll(k, &PolyC::c().pow(k as u32), &u_column(k), earlier))
}

/// Series of the complete split graphs `(K_m, n)`.
pub fn split_series(m: usize) -> RSeries {
    static TABLE: OnceLock<Mutex<Vec<RSeries>>> = OnceLock::new();
    cached(&TABLE, m, |k, earlier| {
        let signed: Vec<PolyC> =
            u_column(k).iter().enumerate().map(|(i, u)| if (k - i) % 2 == 0 { u.clone() } else { -u }).collect();
        unroll(k, &k_complete(k), &signed, earlier)
    })
}

/// `w(K_m)` from the bipartite residues:
/// `c^m - 2 sum_{i<m} sum_{j<=i, m-j odd} u_{i,m} r_i^(j) / (u_j - u_m)`.
pub fn k_complete(m: usize) -> PolyC {
    let col = u_column(m);
    let mut out = PolyC::c().pow(m as u32);
    for (i, u) in col.iter().enumerate().take(m) {
        if u.is_zero() {
            continue;
        }
        let cb = cb_series(i);
        for j in (0..=i).filter(|j| (m - j) % 2 == 1) {
            let r = cb.get(j);
            let term = (u * &r).scale(&(pole_gap_inverse(j, m) * Rational::from(-2)));
            out = &out + &term;
        }
    }
    out
}

/// Inverts [`gen_series`]: `sum (r_k / e_k(c)) e_k`, in the `y` basis.
/// Fails when some `r_k` is not a multiple of `e_k(c)`, which means the
/// series cannot come from an element of S.
pub fn reconstruct_selem(r: &RSeries) -> Result<SElem> {
    let len = r.max_k().map_or(0, |k| k + 1);
    let mut coeffs = vec![PolyC::zero(); len];
    for (k, rk) in r.terms() {
        coeffs[k] = rk.div_exact(&e_at_c(k)).map_err(|_| {
            Error::NotDivisible(format!("r_{k} = {rk} is not a multiple of e_{k}(c) = {}", e_at_c(k)))
        })?;
    }
    Ok(SElem::new(Basis::E, coeffs).to_basis(Basis::Y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(text: &str) -> PolyC {
        SElem::parse(text, Basis::Y).unwrap().coeff(0)
    }

    fn y(text: &str) -> SElem {
        SElem::parse(text, Basis::Y).unwrap()
    }

    fn k3n() -> RSeries {
        RSeries::from_terms([
            (0, poly("c^2/6")),
            (1, poly("c(3c^2 - 2c + 2)/5")),
            (2, poly("c(4c - 3)/3")),
            (3, poly("c(4c^2 - 11c + 6)/10")),
        ])
    }

    #[test]
    fn basic_series() {
        assert_eq!(gen_series(&SElem::basis_element(Basis::E, 1)), RSeries::from_terms([(1, PolyC::c())]));
        assert_eq!(gen_series(&SElem::one(Basis::Y)), RSeries::from_terms([(0, PolyC::one())]));
        assert_eq!(gen_series(&y("y^3")), k3n());
        assert_eq!(series_values(&y("y"), 0), PolyC::c());
        assert_eq!(series_values(&y("y"), 3), &PolyC::c() * &PolyC::from_ints(&[-1, 1]).pow(3));
        assert_eq!(series_values(&y("y^3"), 0), PolyC::c().pow(3));
    }

    #[test]
    fn duals() {
        let split = dual_rseries(&k3n(), 3).unwrap();
        assert_eq!(split.get(0), -&k3n().get(0));
        assert_eq!(split.get(1), k3n().get(1));
        assert_eq!(split, split_series(3));
        let one = RSeries::from_terms([(0, PolyC::one())]);
        assert_eq!(dual_rseries(&one, 0).unwrap(), one);
        assert!(dual_rseries(&k3n(), 2).is_err());
    }

    #[test]
    fn recurrences() {
        assert_eq!(cb_series(0), RSeries::from_terms([(0, PolyC::one())]));
        assert_eq!(cb_series(3), k3n());
        assert_eq!(k_complete(1), PolyC::c());
        assert_eq!(k_complete(2), PolyC::from_ints(&[0, -1, 1]));
        assert_eq!(k_complete(3), PolyC::from_ints(&[0, 2, -3, 1]));
    }

    #[test]
    fn reconstruction() {
        assert_eq!(reconstruct_selem(&RSeries::from_terms([(1, PolyC::c())])).unwrap(), y("y"));
        assert_eq!(reconstruct_selem(&k3n()).unwrap(), y("y^3"));
        assert!(matches!(
            reconstruct_selem(&RSeries::from_terms([(1, PolyC::one())])),
            Err(Error::NotDivisible(_))
        ));
    }

    #[test]
    fn pentagon_join_series() {
        let r = RSeries::from_terms([
            (1, poly("c(270c^4 - 540c^3 - 999c^2 + 576c + 324)/630")),
            (3, poly("c(280c^4 - 1610c^3 + 3234c^2 - 2646c + 756)/630")),
            (5, poly("c(80c^4 - 1000c^3 + 4065c^2 - 6120c + 2700)/630")),
        ]);
        let want = y("y^5 - 10y^4 + 29y^3 + (5c^2 - 6c - 26)y^2 + (-14c^2 + 8c + 6)y + c^3 + 5c^2");
        assert_eq!(reconstruct_selem(&r).unwrap(), want);
    }

    #[test]
    fn json_roundtrip() {
        let r = k3n();
        assert_eq!(RSeries::from_json(&r.to_json()).unwrap(), r);
        assert!(r.to_json().to_string().starts_with(r#"{"terms":[{"k":0,"r":"#));
    }
}
