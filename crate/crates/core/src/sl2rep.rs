//! An independent evaluation of the weight system through the irreducible
//! representations `V_k` of sl2, used to check the rewrite engine.
//!
//! With the form `<u, v> = 2 tr(uv)` the dual pairs are `(e, f/2)`,
//! `(f, e/2)`, `(h, h/4)`, so a chord stands for `e (x) f/2 + f (x) e/2 +
//! h (x) h/4` and the Casimir `(ef + fe)/2 + h^2/4` acts on `V_k` as
//! `k(k+2)/4`. Every generator maps a weight vector to a multiple of one
//! weight vector, so a product of generators applied to a basis vector is
//! tracked as a single `(index, integer)` pair. The dual-pair weights are
//! scaled by 4 to stay in integers and divided out at the end.

use crate::diagrams::{ChordDiagram, Label, Share};
use crate::error::{Error, Result};
use crate::exactalg::{PolyC, PolyC1C2X, Rational};

/// Largest chord count accepted when no budget is configured.
pub const DEFAULT_ORACLE_BUDGET: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Gen {
    E,
    F,
    H,
}

/// `(generator at one end, generator at the other, 4 * weight)`.
const PAIRS: [(Gen, Gen, i128); 3] = [(Gen::E, Gen::F, 2), (Gen::F, Gen::E, 2), (Gen::H, Gen::H, 1)];

/// `g v_i = coeff v_j` on `V_k`, `None` when the image is zero.
fn act(g: Gen, k: usize, i: usize) -> Option<(usize, i128)> {
    match g {
        Gen::E => (i > 0).then(|| (i - 1, (k - i + 1) as i128)),
        Gen::F => (i < k).then(|| (i + 1, (i + 1) as i128)),
        Gen::H => {
            let w = k as i128 - 2 * i as i128;
            (w != 0).then_some((i, w))
        }
    }
}

/// Casimir eigenvalue `k(k+2)/4` on `V_k`.
pub fn casimir_value(k: u32) -> Rational {
    Rational::new((k * (k + 2)) as i64, 4)
}

/// Dense matrices of `e`, `f`, `h` on `V_k`; column `j` is the image of `v_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrepTriple {
    pub k: u32,
    pub mat_e: Vec<Vec<Rational>>,
    pub mat_f: Vec<Vec<Rational>>,
    pub mat_h: Vec<Vec<Rational>>,
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n)
        .map(|r| (0..n).map(|c| (0..n).map(|t| &a[r][t] * &b[t][c]).sum()).collect())
        .collect()
}

fn mat_lin(terms: &[(Rational, &Vec<Vec<Rational>>)]) -> Vec<Vec<Rational>> {
    let n = terms[0].1.len();
    (0..n)
        .map(|r| (0..n).map(|c| terms.iter().map(|(q, m)| q * &m[r][c]).sum()).collect())
        .collect()
}

impl IrrepTriple {
    pub fn new(k: u32) -> Self {
        let d = k as usize + 1;
        let build = |g: Gen| {
            let mut m = vec![vec![Rational::zero(); d]; d];
            for j in 0..d {
                if let Some((i, q)) = act(g, k as usize, j) {
                    m[i][j] = Rational::from_int(q as i64);
                }
            }
            m
        };
        IrrepTriple { k, mat_e: build(Gen::E), mat_f: build(Gen::F), mat_h: build(Gen::H) }
    }

    /// `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f`.
    pub fn satisfies_relations(&self) -> bool {
        let one = Rational::one();
        let comm = |a, b| {
            let ab = mat_mul(a, b);
            let ba = mat_mul(b, a);
            mat_lin(&[(one.clone(), &ab), (-one.clone(), &ba)])
        };
        let two = Rational::from_int(2);
        comm(&self.mat_e, &self.mat_f) == self.mat_h
            && comm(&self.mat_h, &self.mat_e) == mat_lin(&[(two.clone(), &self.mat_e)])
            && comm(&self.mat_h, &self.mat_f) == mat_lin(&[(-two, &self.mat_f)])
    }

    /// `sum_a x_a x_a^*` over the dual pairs.
    pub fn casimir_matrix(&self) -> Vec<Vec<Rational>> {
        let ef = mat_mul(&self.mat_e, &self.mat_f);
        let fe = mat_mul(&self.mat_f, &self.mat_e);
        let hh = mat_mul(&self.mat_h, &self.mat_h);
        let half = Rational::new(1, 2);
        mat_lin(&[(half.clone(), &ef), (half, &fe), (Rational::new(1, 4), &hh)])
    }
}

/// Sum over chord colourings of products of generators, as an integer matrix
/// on `V_{k1} (x) V_{k2}` scaled by `4^n`.
struct Walk {
    /// `(strand, label)` in the order the operators are applied.
    steps: Vec<(usize, Label)>,
    dims: [usize; 2],
    n: usize,
}

impl Walk {
    fn new(s1: &[Label], s2: &[Label], k1: usize, k2: usize) -> Self {
        let steps = s2.iter().rev().map(|&l| (1, l)).chain(s1.iter().rev().map(|&l| (0, l))).collect();
        Walk { steps, dims: [k1, k2], n: (s1.len() + s2.len()) / 2 }
    }

    fn dim(&self) -> usize {
        (self.dims[0] + 1) * (self.dims[1] + 1)
    }

    fn flat(&self, idx: [usize; 2]) -> usize {
        idx[0] * (self.dims[1] + 1) + idx[1]
    }

    fn run(&self) -> Vec<Vec<i128>> {
        let d = self.dim();
        let mut m = vec![vec![0i128; d]; d];
        let mut assign = vec![u8::MAX; self.n];
        for i in 0..=self.dims[0] {
            for j in 0..=self.dims[1] {
                let col = self.flat([i, j]);
                self.dfs(0, [i, j], 1, &mut assign, &mut |idx, q| {
                    m[idx][col] = m[idx][col].checked_add(q).expect("oracle integer overflow");
                });
            }
        }
        m
    }

    fn dfs(&self, pos: usize, idx: [usize; 2], coeff: i128, assign: &mut [u8], out: &mut impl FnMut(usize, i128)) {
        if pos == self.steps.len() {
            out(self.flat(idx), coeff);
            return;
        }
        let (strand, label) = self.steps[pos];
        let l = label as usize;
        let mut apply = |g: Gen, w: i128, assign: &mut [u8]| {
            if let Some((to, q)) = act(g, self.dims[strand], idx[strand]) {
                let mut next = idx;
                next[strand] = to;
                let c = coeff.checked_mul(q * w).expect("oracle integer overflow");
                self.dfs(pos + 1, next, c, assign, out);
            }
        };
        if assign[l] == u8::MAX {
            for (a, &(g, _, w)) in PAIRS.iter().enumerate() {
                assign[l] = a as u8;
                apply(g, w, assign);
            }
            assign[l] = u8::MAX;
        } else {
            apply(PAIRS[assign[l] as usize].1, 1, assign);
        }
    }
}

fn to_rational(m: Vec<Vec<i128>>, n: usize) -> Vec<Vec<Rational>> {
    let scale = Rational::from_int(4).pow(n as u32).recip();
    m.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|q| Rational::from_bigint(q.into()) * &scale)
                .collect()
        })
        .collect()
}

fn check_budget(n: usize, budget: usize) -> Result<()> {
    if n > budget {
        return Err(Error::Budget(format!("{n} chords exceeds oracle budget {budget}")));
    }
    Ok(())
}

/// Scalar by which the diagram acts on `V_k`.
pub fn diagram_scalar(d: &ChordDiagram, k: u32) -> Result<Rational> {
    let m = to_rational(Walk::new(d.word(), &[], k as usize, 0).run(), d.n_chords());
    let s = m[0][0].clone();
    for (r, row) in m.iter().enumerate() {
        for (c, q) in row.iter().enumerate() {
            if (r == c && *q != s) || (r != c && !q.is_zero()) {
                return Err(Error::NonScalar(format!("{d} on V_{k}")));
            }
        }
    }
    Ok(s)
}

/// Interpolates the scalars on `V_k`, `k` in `nodes`, into a polynomial in `c`.
pub fn oracle_wsl2_diagram_at(d: &ChordDiagram, nodes: &[u32]) -> Result<PolyC> {
    let points = nodes
        .iter()
        .map(|&k| Ok((casimir_value(k), diagram_scalar(d, k)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyC::interpolate(&points))
}

/// Value of the weight system from `V_1 .. V_{n+1}`.
pub fn oracle_wsl2_diagram(d: &ChordDiagram, budget: usize) -> Result<PolyC> {
    check_budget(d.n_chords(), budget)?;
    let nodes: Vec<u32> = (1..=d.n_chords() as u32 + 1).collect();
    oracle_wsl2_diagram_at(d, &nodes)
}

/// Matrix of a share on `V_{k1} (x) V_{k2}`, basis `v_i (x) v_j` at
/// `i * (k2 + 1) + j`.
pub fn share_matrix(s: &Share, k1: u32, k2: u32) -> Vec<Vec<Rational>> {
    to_rational(Walk::new(s.strand1(), s.strand2(), k1 as usize, k2 as usize).run(), s.n_chords())
}

/// Matrix of a polynomial in `c1, c2, x` on `V_{k1} (x) V_{k2}`.
pub fn nf_matrix(nf: &PolyC1C2X, k1: u32, k2: u32) -> Vec<Vec<Rational>> {
    let x = share_matrix(&Share::x_pow(1), k1, k2);
    let d = x.len();
    // x has at most three nonzero entries per column
    let sparse: Vec<Vec<(usize, Rational)>> = (0..d)
        .map(|t| (0..d).filter(|&r| !x[r][t].is_zero()).map(|r| (r, x[r][t].clone())).collect())
        .collect();
    let top = nf.degree_bounds().2 as usize;
    let (c1, c2) = (casimir_value(k1), casimir_value(k2));
    let mut out = vec![vec![Rational::zero(); d]; d];
    for col in 0..d {
        let mut powers = vec![(0..d).map(|r| Rational::from_int((r == col) as i64)).collect::<Vec<_>>()];
        for _ in 0..top {
            let prev = powers.last().unwrap();
            let mut next = vec![Rational::zero(); d];
            for (t, q) in prev.iter().enumerate().filter(|(_, q)| !q.is_zero()) {
                for (r, v) in &sparse[t] {
                    next[*r] += &(q * v);
                }
            }
            powers.push(next);
        }
        for (&(a, b, n), q) in nf.terms() {
            let f = q * &c1.pow(a) * c2.pow(b);
            for r in 0..d {
                if !powers[n as usize][r].is_zero() {
                    out[r][col] += &(&f * &powers[n as usize][r]);
                }
            }
        }
    }
    out
}

/// True iff the share and `nf` act identically on every listed `V_{k1} (x) V_{k2}`.
pub fn oracle_check_nf(s: &Share, nf: &PolyC1C2X, reps: &[(u32, u32)], budget: usize) -> Result<bool> {
    check_budget(s.n_chords(), budget)?;
    Ok(reps.iter().all(|&(k1, k2)| share_matrix(s, k1, k2) == nf_matrix(nf, k1, k2)))
}

/// Exact rank by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        let pivot: Vec<Rational> = rows[r].iter().map(|q| q * &inv).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (q, p) in row.iter_mut().zip(&pivot) {
                    *q -= &(&f * p);
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

/// Smallest square grid `1..=K` of representation pairs on which monomials
/// `c1^a c2^b x^n`, `a + b + n <= degree`, are linearly independent. On
/// `V_{k1} (x) V_{k2}` the operator `x` acts on the summand `V_j` as
/// `(c(j) - c(k1) - c(k2)) / 2`, so independence is a rank condition on
/// the point evaluations.
pub fn separating_reps(degree: u32) -> Vec<(u32, u32)> {
    let monomials: Vec<(u32, u32, u32)> = (0..=degree)
        .flat_map(|a| (0..=degree - a).flat_map(move |b| (0..=degree - a - b).map(move |n| (a, b, n))))
        .collect();
    for big_k in 1.. {
        let reps: Vec<(u32, u32)> = (1..=big_k).flat_map(|a| (1..=big_k).map(move |b| (a, b))).collect();
        let mut rows = Vec::new();
        for &(k1, k2) in &reps {
            let (c1, c2) = (casimir_value(k1), casimir_value(k2));
            for j in (k1.abs_diff(k2)..=k1 + k2).step_by(2) {
                let x = (casimir_value(j) - &c1 - &c2) * Rational::new(1, 2);
                rows.push(monomials.iter().map(|&(a, b, n)| c1.pow(a) * c2.pow(b) * x.pow(n)).collect());
            }
        }
        if rank(rows) == monomials.len() {
            return reps;
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreps_are_representations() {
        for k in 0..6 {
            let t = IrrepTriple::new(k);
            assert!(t.satisfies_relations(), "V_{k}");
            let c = t.casimir_matrix();
            for (r, row) in c.iter().enumerate() {
                for (col, q) in row.iter().enumerate() {
                    let want = if r == col { casimir_value(k) } else { Rational::zero() };
                    assert_eq!(*q, want);
                }
            }
        }
    }

    #[test]
    fn one_chord_is_the_casimir() {
        let d: ChordDiagram = "1 1".parse().unwrap();
        assert_eq!(oracle_wsl2_diagram(&d, 6).unwrap(), PolyC::c());
    }

    #[test]
    fn small_diagrams() {
        let d: ChordDiagram = "1 2 1 2".parse().unwrap();
        assert_eq!(oracle_wsl2_diagram(&d, 6).unwrap(), PolyC::from_ints(&[0, -1, 1]));
        let d: ChordDiagram = "1 2 3 1 2 3".parse().unwrap();
        assert_eq!(oracle_wsl2_diagram(&d, 6).unwrap(), PolyC::from_ints(&[0, 2, -3, 1]));
        let empty = ChordDiagram::empty();
        assert_eq!(oracle_wsl2_diagram(&empty, 6).unwrap(), PolyC::one());
    }

    #[test]
    fn interpolation_nodes_do_not_matter() {
        let d: ChordDiagram = "1 2 3 1 4 2 4 3".parse().unwrap();
        let low = oracle_wsl2_diagram_at(&d, &[1, 2, 3, 4, 5]).unwrap();
        let high = oracle_wsl2_diagram_at(&d, &[2, 3, 4, 5, 6]).unwrap();
        assert_eq!(low, high);
    }

    #[test]
    fn budget_is_enforced() {
        let d = ChordDiagram::all_crossing(4);
        assert!(matches!(oracle_wsl2_diagram(&d, 3), Err(Error::Budget(_))));
    }

    #[test]
    fn share_checks() {
        let bridge: Share = "1 | 1".parse().unwrap();
        assert!(oracle_check_nf(&bridge, &PolyC1C2X::x(), &[(1, 1), (1, 2), (2, 2)], 6).unwrap());
        let arch: Share = "1 1 |".parse().unwrap();
        assert!(oracle_check_nf(&arch, &PolyC1C2X::c1(), &[(1, 1), (2, 1)], 6).unwrap());
        assert!(!oracle_check_nf(&arch, &PolyC1C2X::c2(), &[(2, 1)], 6).unwrap());
    }

    #[test]
    fn crossing_bridges_give_x_squared_plus_x() {
        let y2 = Share::y_pow(2);
        let x = PolyC1C2X::x();
        let plus = &x.pow(2) + &x;
        let minus = &x.pow(2) - &x;
        let reps = [(1, 1), (2, 1), (2, 2), (3, 2)];
        assert!(oracle_check_nf(&y2, &plus, &reps, 6).unwrap());
        assert!(!oracle_check_nf(&y2, &minus, &reps, 6).unwrap());
    }

    #[test]
    fn separation_grid_has_full_rank() {
        let reps = separating_reps(3);
        assert!(reps.len() >= 16);
        assert!(separating_reps(0) == vec![(1, 1)]);
    }
}
