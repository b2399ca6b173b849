//! The share algebra S as a free `Q[c]`-module.
//!
//! Four bases are supported: powers `x^n` of the bridge under the dot
//! product, powers `y^n` under the cross product, the orthogonal basis
//! `p_n = (y - u_0)...(y - u_{n-1})`, and the eigenbasis `e_n` of `U`.
//! Every element is stored in one basis and converted through the `y`
//! basis on demand.
//!
//! Only three facts are taken as input: the generating function for the
//! columns of `U` in the `y` basis, the three-term action of `X` and `Y` on
//! `p_n`, and the recurrence defining `e_n`. The `x`/`y` transition comes
//! from the rewrite engine. Everything else (operator matrices in other
//! bases, the pairing, the involution) is derived from these.

mod parse;

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;
use std::sync::{Mutex, MutexGuard, OnceLock};

use crate::diagrams::Share;
use crate::error::{Error, Result};
use crate::exactalg::{expand_rational_series, PolyC, PolyCY, Rational};
use crate::rewrite;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    X,
    Y,
    P,
    E,
}

impl Basis {
    pub const ALL: [Basis; 4] = [Basis::X, Basis::Y, Basis::P, Basis::E];

    pub fn letter(self) -> &'static str {
        match self {
            Basis::X => "x",
            Basis::Y => "y",
            Basis::P => "p",
            Basis::E => "e",
        }
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "x" => Ok(Basis::X),
            "y" => Ok(Basis::Y),
            "p" => Ok(Basis::P),
            "e" => Ok(Basis::E),
            _ => Err(Error::Parse(format!("unknown basis {s:?}; expected x, y, p or e"))),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter())
    }
}

/// The chord-adding operators on S.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    /// Adds an arch whose ends sit at the two ends of the first strand.
    U,
    /// Dot product with a bridge.
    X,
    /// Cross product with a bridge.
    Y,
}

impl FromStr for Op {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "U" => Ok(Op::U),
            "X" => Ok(Op::X),
            "Y" => Ok(Op::Y),
            _ => Err(Error::Parse(format!("unknown operator {s:?}; expected U, X or Y"))),
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Op::U => "U",
            Op::X => "X",
            Op::Y => "Y",
        })
    }
}

/// An element of S: coordinates in one basis. Coordinate `n` multiplies the
/// `n`-th basis element; trailing zeros are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SElem {
    basis: Basis,
    coords: PolyCY,
}

impl SElem {
    pub fn new(basis: Basis, coeffs: Vec<PolyC>) -> Self {
        SElem { basis, coords: PolyCY::from_coeffs(coeffs) }
    }

    /// Reads the coefficients of `poly` as coordinates in `basis`.
    pub fn from_poly(basis: Basis, poly: PolyCY) -> Self {
        SElem { basis, coords: poly }
    }

    pub fn zero(basis: Basis) -> Self {
        SElem::from_poly(basis, PolyCY::zero())
    }

    /// The unit; it is the zeroth element of every basis.
    pub fn one(basis: Basis) -> Self {
        SElem::basis_element(basis, 0)
    }

    pub fn basis_element(basis: Basis, n: usize) -> Self {
        SElem::from_poly(basis, PolyCY::var_pow(n))
    }

    /// Parses the text form, e.g. `"y^2 - y/2"` or `"e_2 + c e_0"`.
    pub fn parse(text: &str, basis: Basis) -> Result<Self> {
        parse::parse(text, basis)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &[PolyC] {
        self.coords.coeffs()
    }

    pub fn coeff(&self, n: usize) -> PolyC {
        self.coords.coeff(n)
    }

    /// The coordinates packed as a polynomial; in the `y` basis this is the
    /// element itself as a polynomial in `y`.
    pub fn as_poly(&self) -> &PolyCY {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    /// Index of the highest nonzero coordinate.
    pub fn degree(&self) -> Option<usize> {
        self.coords.degree()
    }

    pub fn scale(&self, p: &PolyC) -> SElem {
        SElem::from_poly(self.basis, self.coords.scale(p))
    }

    pub fn to_basis(&self, target: Basis) -> SElem {
        basis_convert(self, target)
    }

    /// Membership in the span of shares with at most `m` chords.
    pub fn in_filtration(&self, m: usize) -> bool {
        self.to_basis(Basis::Y).degree().is_none_or(|d| d <= m)
    }

    /// `Some(n)` when the element is a multiple of the single eigenvector `e_n`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let e = self.to_basis(Basis::E);
        let mut support = e.coeffs().iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(i, _)| i);
        let n = support.next()?;
        support.next().is_none().then_some(n)
    }

    pub fn to_json(&self) -> serde_json::Value {
        self.coords.to_json(self.basis.letter())
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let (var, poly) = PolyCY::from_json(v)?;
        Ok(SElem::from_poly(var.parse()?, poly))
    }
}

impl fmt::Display for SElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.basis {
            Basis::X | Basis::Y => self.coords.display_with(self.basis.letter()),
            Basis::P | Basis::E => self.coords.display_terms(|i| format!("{}_{i}", self.basis.letter())),
        };
        f.write_str(&s)
    }
}

impl fmt::Debug for SElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SElem[{}]({self})", self.basis)
    }
}

impl Add for &SElem {
    type Output = SElem;
    /// The sum is expressed in the basis of the left operand.
    fn add(self, rhs: &SElem) -> SElem {
        let rhs = rhs.to_basis(self.basis);
        SElem::from_poly(self.basis, &self.coords + &rhs.coords)
    }
}

impl Sub for &SElem {
    type Output = SElem;
    fn sub(self, rhs: &SElem) -> SElem {
        let rhs = rhs.to_basis(self.basis);
        SElem::from_poly(self.basis, &self.coords - &rhs.coords)
    }
}

impl Neg for &SElem {
    type Output = SElem;
    fn neg(self) -> SElem {
        SElem::from_poly(self.basis, -&self.coords)
    }
}

/// Parses a polynomial in `c` alone, e.g. `"c(4c^2 - 11c + 6)/10"`.
pub fn parse_c_poly(text: &str) -> Result<PolyC> {
    parse::parse_c_poly(text)
}

/// Eigenvalue `u_n = c - n(n+1)/2` of `U` on `e_n`.
pub fn eigenvalue(n: usize) -> PolyC {
    PolyC::c_minus(Rational::from((n * (n + 1) / 2) as i64))
}

/// `c - (n^2 - 1)/4`, the factor that recurs in the norms and recurrences.
fn norm_factor(n: usize) -> PolyC {
    let n = n as i64;
    PolyC::c_minus(Rational::new(n * n - 1, 4))
}

#[derive(Default)]
struct Tables {
    /// `y^m` in the `x` basis, from the rewrite engine.
    y_in_x: Vec<PolyCY>,
    /// `x^m` as a polynomial in `y`.
    x_in_y: Vec<PolyCY>,
    p: Vec<PolyCY>,
    e: Vec<PolyCY>,
    /// Column `m` holds `U(y^m)` as a polynomial in `y`.
    u: Vec<PolyCY>,
}

fn tables() -> MutexGuard<'static, Tables> {
    static TABLES: OnceLock<Mutex<Tables>> = OnceLock::new();
    TABLES.get_or_init(Default::default).lock().unwrap_or_else(|e| e.into_inner())
}

impl Tables {
    fn ensure_x(&mut self, n: usize) {
        while self.x_in_y.len() <= n {
            let m = self.x_in_y.len();
            let ym = rewrite::wsl2_share_x(&Share::y_pow(m));
            debug_assert!(ym.is_monic() && ym.degree() == Some(m));
            // x^m = y^m - sum_{i<m} [x^i] y^m * x^i
            let mut xm = PolyCY::var_pow(m);
            for i in 0..m {
                xm = &xm - &self.x_in_y[i].scale(&ym.coeff(i));
            }
            self.y_in_x.push(ym);
            self.x_in_y.push(xm);
        }
    }

    fn ensure_p(&mut self, n: usize) {
        if self.p.is_empty() {
            self.p.push(PolyCY::one());
        }
        while self.p.len() <= n {
            let m = self.p.len() - 1;
            let factor = PolyCY::from_coeffs(vec![-&eigenvalue(m), PolyC::one()]);
            let next = &self.p[m] * &factor;
            self.p.push(next);
        }
    }

    fn ensure_e(&mut self, n: usize) {
        if self.e.is_empty() {
            self.e.extend([PolyCY::one(), PolyCY::var()]);
        }
        while self.e.len() <= n {
            let k = self.e.len() - 1;
            let ki = k as i64;
            let shift = PolyCY::from_coeffs(vec![PolyC::constant(Rational::new(-ki * (ki + 1), 4)), PolyC::one()]);
            let f = norm_factor(k);
            let tail = (&f * &f).scale(&Rational::new(ki * ki, 4 * ki * ki - 1));
            let next = &(&self.e[k] * &shift) - &self.e[k - 1].scale(&tail);
            self.e.push(next);
        }
    }

    fn ensure_u(&mut self, m: usize) {
        if self.u.len() > m {
            return;
        }
        let order = m.max(2 * self.u.len()).max(8);
        let c = PolyC::c();
        let k = |p: PolyC| PolyCY::constant(p);
        let y = PolyCY::var();
        let one = PolyCY::one();
        // quadratic factor 1 - (2y - 1)t - (2c - y^2 - y)t^2
        let q1 = &one - &(&y + &y);
        let q2 = &(&(&y * &y) + &y) - &k(c.scale(&Rational::from(2)));
        let num = vec![
            k(c.clone()),
            &q1.scale(&c) - &y,
            &q2.scale(&c) + &k(&c * &c),
        ];
        let den = vec![one.clone(), &q1 - &y, &q2 - &(&y * &q1), -&(&y * &q2)];
        let series = expand_rational_series(&num, &den, order).expect("constant term is 1");
        self.u = series.coeffs().to_vec();
    }

    /// The `n`-th element of `basis` as a polynomial in `y`.
    fn element(&mut self, basis: Basis, n: usize) -> PolyCY {
        match basis {
            Basis::Y => PolyCY::var_pow(n),
            Basis::X => {
                self.ensure_x(n);
                self.x_in_y[n].clone()
            }
            Basis::P => {
                self.ensure_p(n);
                self.p[n].clone()
            }
            Basis::E => {
                self.ensure_e(n);
                self.e[n].clone()
            }
        }
    }

    fn y_coords(&mut self, v: &SElem) -> PolyCY {
        if v.basis == Basis::Y {
            return v.coords.clone();
        }
        let mut out = PolyCY::zero();
        for (n, a) in v.coeffs().iter().enumerate() {
            if !a.is_zero() {
                out = &out + &self.element(v.basis, n).scale(a);
            }
        }
        out
    }

    /// Triangular elimination against the monic family of `target`.
    fn in_basis_from_y(&mut self, poly: &PolyCY, target: Basis) -> SElem {
        if target == Basis::Y {
            return SElem::from_poly(Basis::Y, poly.clone());
        }
        let Some(d) = poly.degree() else {
            return SElem::zero(target);
        };
        let mut rest = poly.clone();
        let mut out = vec![PolyC::zero(); d + 1];
        for n in (0..=d).rev() {
            let a = rest.coeff(n);
            if a.is_zero() {
                continue;
            }
            rest = &rest - &self.element(target, n).scale(&a);
            out[n] = a;
        }
        debug_assert!(rest.is_zero());
        SElem::new(target, out)
    }
}

/// `u_{0,m}, ..., u_{m,m}`: the coordinates of `U(y^m)` in the `y` basis.
pub fn u_column(m: usize) -> Vec<PolyC> {
    let mut t = tables();
    t.ensure_u(m);
    let mut col = t.u[m].coeffs().to_vec();
    col.resize(m + 1, PolyC::zero());
    col
}

/// `y^m` in the `x` basis, computed by the rewrite engine on the all-crossing share.
pub fn y_pow_in_x(m: usize) -> PolyCY {
    let mut t = tables();
    t.ensure_x(m);
    t.y_in_x[m].clone()
}

pub fn basis_convert(v: &SElem, target: Basis) -> SElem {
    if v.basis == target {
        return v.clone();
    }
    let mut t = tables();
    let y = t.y_coords(v);
    t.in_basis_from_y(&y, target)
}

/// `e_n` as a polynomial in `y`.
pub fn e_poly(n: usize) -> SElem {
    SElem::from_poly(Basis::Y, tables().element(Basis::E, n))
}

/// `p_n` as a polynomial in `y`.
pub fn p_poly(n: usize) -> SElem {
    SElem::from_poly(Basis::Y, tables().element(Basis::P, n))
}

/// `e_n(c)`: the eigenvector `e_n` with `y` set to `c`, which is its pairing
/// with the unit.
pub fn e_at_c(n: usize) -> PolyC {
    e_poly(n).as_poly().eval_var(&PolyC::c())
}

/// `<p_n, p_n>`.
pub fn p_norm(n: usize) -> PolyC {
    let p = SElem::basis_element(Basis::P, n);
    pairing(&p, &p)
}

fn apply_u(v: &SElem) -> SElem {
    let mut t = tables();
    let y = t.y_coords(v);
    t.ensure_u(y.degree().unwrap_or(0));
    let mut out = PolyCY::zero();
    for (m, a) in y.coeffs().iter().enumerate() {
        out = &out + &t.u[m].scale(a);
    }
    t.in_basis_from_y(&out, v.basis)
}

/// `X` and `Y` on `p_n`:
/// `X p_n = p_{n+1} + (c - n(n+1)) p_n - n^2 (c - (n^2-1)/4) p_{n-1}` and
/// `Y p_n = p_{n+1} + u_n p_n`.
fn apply_xy(op: Op, v: &SElem) -> SElem {
    let mut t = tables();
    let y = t.y_coords(v);
    let p = t.in_basis_from_y(&y, Basis::P);
    let len = p.coeffs().len();
    let mut out = vec![PolyC::zero(); len + 1];
    for (n, a) in p.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        out[n + 1] = &out[n + 1] + a;
        let diag = match op {
            Op::X => PolyC::c_minus(Rational::from((n * (n + 1)) as i64)),
            _ => eigenvalue(n),
        };
        out[n] = &out[n] + &(a * &diag);
        if op == Op::X && n > 0 {
            let sub = norm_factor(n).scale(&Rational::from((n * n) as i64));
            out[n - 1] = &out[n - 1] - &(a * &sub);
        }
    }
    let y = t.y_coords(&SElem::new(Basis::P, out));
    t.in_basis_from_y(&y, v.basis)
}

/// Applies an operator; the result stays in the basis of `v`.
pub fn apply_op(op: Op, v: &SElem) -> SElem {
    match op {
        Op::U => apply_u(v),
        Op::X | Op::Y => apply_xy(op, v),
    }
}

/// The involution: `sigma(x^m) = (-1)^m y^m`, and so `sigma(y^m) = (-1)^m x^m`.
pub fn sigma(v: &SElem) -> SElem {
    let x = basis_convert(v, Basis::X);
    let flipped: Vec<PolyC> = x
        .coeffs()
        .iter()
        .enumerate()
        .map(|(m, a)| if m % 2 == 1 { -a } else { a.clone() })
        .collect();
    basis_convert(&SElem::new(Basis::Y, flipped), v.basis)
}

/// The bilinear form, `w` of the join of two shares. With `b = sum b_n e_n`
/// it equals `sum b_n a(u_n) e_n(c)`.
pub fn pairing(a: &SElem, b: &SElem) -> PolyC {
    let ay = basis_convert(a, Basis::Y);
    let be = basis_convert(b, Basis::E);
    let mut out = PolyC::zero();
    for (n, bn) in be.coeffs().iter().enumerate() {
        if !bn.is_zero() {
            out = &out + &(&(bn * &ay.as_poly().eval_var(&eigenvalue(n))) * &e_at_c(n));
        }
    }
    out
}

/// Dense square matrix over `Q[c]`, stored by columns.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    size: usize,
    cols: Vec<Vec<PolyC>>,
}

impl Matrix {
    pub fn zero(size: usize) -> Self {
        Matrix { size, cols: vec![vec![PolyC::zero(); size]; size] }
    }

    pub fn identity(size: usize) -> Self {
        Matrix::scalar(size, &PolyC::one())
    }

    pub fn scalar(size: usize, p: &PolyC) -> Self {
        let mut m = Matrix::zero(size);
        for i in 0..size {
            m.cols[i][i] = p.clone();
        }
        m
    }

    /// Builds a matrix whose column `j` holds the first `size` coordinates of `col(j)`.
    pub fn from_columns(size: usize, col: impl Fn(usize) -> SElem) -> Self {
        let cols = (0..size).map(|j| (0..size).map(|i| col(j).coeff(i)).collect()).collect();
        Matrix { size, cols }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> &PolyC {
        &self.cols[col][row]
    }

    pub fn column(&self, col: usize) -> &[PolyC] {
        &self.cols[col]
    }

    /// Leading `size x size` block.
    pub fn truncate(&self, size: usize) -> Matrix {
        let size = size.min(self.size);
        Matrix { size, cols: self.cols[..size].iter().map(|c| c[..size].to_vec()).collect() }
    }

    pub fn scale(&self, p: &PolyC) -> Matrix {
        Matrix { size: self.size, cols: self.cols.iter().map(|c| c.iter().map(|a| a * p).collect()).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zero(self.size);
        for i in 0..self.size {
            for j in 0..self.size {
                m.cols[i][j] = self.cols[j][i].clone();
            }
        }
        m
    }

    fn zip(&self, rhs: &Matrix, f: impl Fn(&PolyC, &PolyC) -> PolyC) -> Matrix {
        assert_eq!(self.size, rhs.size, "matrix sizes differ");
        let cols = self.cols.iter().zip(&rhs.cols).map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect());
        Matrix { size: self.size, cols: cols.collect() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let cols: Vec<Vec<serde_json::Value>> =
            self.cols.iter().map(|c| c.iter().map(PolyC::to_json).collect()).collect();
        serde_json::json!(cols)
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.zip(rhs, |a, b| a - b)
    }
}

impl std::ops::Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.size, rhs.size, "matrix sizes differ");
        let n = self.size;
        let mut out = Matrix::zero(n);
        for j in 0..n {
            for k in 0..n {
                let b = &rhs.cols[j][k];
                if b.is_zero() {
                    continue;
                }
                for i in 0..n {
                    let a = &self.cols[k][i];
                    if !a.is_zero() {
                        out.cols[j][i] = &out.cols[j][i] + &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            (0..self.size).map(|i| (0..self.size).map(|j| self.get(i, j).to_string()).collect()).collect();
        let width: Vec<usize> =
            (0..self.size).map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(1)).collect();
        for row in &cells {
            let padded: Vec<String> = row.iter().zip(&width).map(|(s, w)| format!("{s:>w$}")).collect();
            writeln!(f, "[ {} ]", padded.join("  "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{}\n{self}", self.size, self.size)
    }
}

/// An operator written in a basis, truncated to the first `size` elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorMatrix {
    pub op: Op,
    pub basis: Basis,
    pub matrix: Matrix,
}

impl OperatorMatrix {
    pub fn size(&self) -> usize {
        self.matrix.size()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "op": self.op.to_string(),
            "basis": self.basis.letter(),
            "size": self.size(),
            "columns": self.matrix.to_json(),
        })
    }
}

/// Column `m` is the image of the `m`-th basis element. `X` and `Y` raise the
/// degree by one, so the last row of a truncated product is only exact when
/// the factors were built with one extra row per factor.
pub fn operator_matrix(op: Op, basis: Basis, size: usize) -> OperatorMatrix {
    let matrix = Matrix::from_columns(size, |m| apply_op(op, &SElem::basis_element(basis, m)));
    OperatorMatrix { op, basis, matrix }
}

/// `sigma` in `basis`, truncated to `size`.
pub fn sigma_matrix(basis: Basis, size: usize) -> Matrix {
    Matrix::from_columns(size, |m| sigma(&SElem::basis_element(basis, m)))
}

/// Gram matrix of the pairing in the `y` basis.
pub fn gram(size: usize) -> Matrix {
    let mut g = Matrix::zero(size);
    for i in 0..size {
        for j in i..size {
            let v = pairing(&SElem::basis_element(Basis::Y, i), &SElem::basis_element(Basis::Y, j));
            g.cols[j][i] = v.clone();
            g.cols[i][j] = v;
        }
    }
    g
}
