//! The acceptance suite: thirteen exact checks, each reported as one line.
//! Shared by the `sweep` command and the `acceptance` test target.

use std::collections::HashMap;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::config::Config;
use crate::diagrams::{enumerate_diagrams, enumerate_shares, ChordDiagram, SimpleGraph};
use crate::error::Error;
use crate::exactalg::{PolyC, PolyC1C2X, Rational};
use crate::genfun::{cb_series, k_complete, reconstruct_selem, split_series, RSeries};
use crate::graphs::{
    bouchet_obstructions, canonical_form, graph_rseries, permutation_graphs, realize_circle, realize_permutation,
    verify_duality,
};
use crate::rewrite::{four_term_terms, normal_form, wsl2_diagram};
use crate::share_space::{
    e_at_c, eigenvalue, gram, operator_matrix, p_norm, pairing, parse_c_poly, u_column, Basis, Matrix, Op, SElem,
};
use crate::sl2rep::{oracle_wsl2_diagram, DEFAULT_ORACLE_BUDGET};

type Check = fn(&Config) -> Result<String, String>;

pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    check: Check,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:02} {} ({:.1}s): {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.detail
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"id": self.id, "name": self.name, "pass": self.pass, "detail": self.detail})
    }
}

pub fn criteria() -> Vec<Criterion> {
    let c = |id, name, check| Criterion { id, name, check };
    vec![
        c(1, "base values", base_values),
        c(2, "tree formula", tree_formula),
        c(3, "oracle equivalence", oracle_equivalence),
        c(4, "values depend only on the intersection graph", graph_dependence),
        c(5, "four-term vanishing", four_term),
        c(6, "operator identities", operator_identities),
        c(7, "eigen data", eigen_data),
        c(8, "orthogonality and adjointness", orthogonality),
        c(9, "complete bipartite and split series", bipartite_series),
        c(10, "duality theorem", duality),
        c(11, "complete graph values", complete_graphs),
        c(12, "pentagon reconstruction", pentagon),
        c(13, "realizability", realizability),
    ]
}

pub fn run_criterion(c: &Criterion, cfg: &Config) -> Outcome {
    let start = Instant::now();
    let result = (c.check)(cfg);
    let seconds = start.elapsed().as_secs_f64();
    let (pass, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Outcome { id: c.id, name: c.name, pass, detail, seconds }
}

pub fn run_all(cfg: &Config) -> Vec<Outcome> {
    criteria().iter().map(|c| run_criterion(c, cfg)).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn c_poly(text: &str) -> PolyC {
    parse_c_poly(text).expect("well-formed constant")
}

fn base_values(_: &Config) -> Result<String, String> {
    let empty = wsl2_diagram(&ChordDiagram::empty());
    let one: ChordDiagram = "1 1".parse().map_err(err)?;
    let one = wsl2_diagram(&one);
    ensure(empty == PolyC::one(), || format!("empty diagram gave {empty}"))?;
    ensure(one == PolyC::c(), || format!("one chord gave {one}"))?;
    Ok("w(empty) = 1, w(one chord) = c".into())
}

fn tree_formula(_: &Config) -> Result<String, String> {
    let mut count = 0;
    for n in 1..=6 {
        let want = &PolyC::c() * &PolyC::from_ints(&[-1, 1]).pow(n as u32 - 1);
        for d in enumerate_diagrams(n, 8).map_err(err)? {
            if d.intersection_graph().is_tree() {
                count += 1;
                let got = wsl2_diagram(&d);
                ensure(got == want, || format!("{d}: {got}"))?;
            }
        }
    }
    Ok(format!("{count} tree diagrams with at most 6 chords give c(c-1)^(n-1)"))
}

fn oracle_equivalence(cfg: &Config) -> Result<String, String> {
    let mut classes = 0;
    let mut raw = 0;
    for n in 0..=cfg.max_chords_oracle {
        let diagrams = enumerate_diagrams(n, 8).map_err(err)?;
        classes += diagrams.len();
        raw += (1..=n).map(|k| 2 * k - 1).product::<usize>();
        diagrams.par_iter().try_for_each(|d| {
            let oracle = oracle_wsl2_diagram(d, DEFAULT_ORACLE_BUDGET.max(n + 1)).map_err(err)?;
            let engine = wsl2_diagram(d);
            ensure(engine == oracle, || format!("{d}: engine {engine}, oracle {oracle}"))
        })?;
    }
    Ok(format!(
        "{classes} diagrams up to rotation ({raw} pairings) with at most {} chords agree",
        cfg.max_chords_oracle
    ))
}

fn graph_dependence(_: &Config) -> Result<String, String> {
    let mut groups = 0;
    let mut diagrams = 0;
    for n in 0..=6 {
        let all = enumerate_diagrams(n, 8).map_err(err)?;
        diagrams += all.len();
        let valued: Vec<_> = all.par_iter().map(|d| (canonical_form(&d.intersection_graph()), wsl2_diagram(d), d)).collect();
        let mut seen: HashMap<_, (PolyC, &ChordDiagram)> = HashMap::new();
        for (g, v, d) in valued {
            if let Some((w, e)) = seen.get(&g) {
                ensure(*w == v, || format!("{d} and {e} share a graph but give {v} and {w}"))?;
            } else {
                seen.insert(g, (v, d));
            }
        }
        groups += seen.len();
    }
    Ok(format!("{diagrams} diagrams with at most 6 chords fall into {groups} graph classes"))
}

fn four_term(_: &Config) -> Result<String, String> {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let pools: Vec<_> = (1..=4).map(|n| enumerate_shares(n, 8)).collect::<Result<_, _>>().map_err(err)?;
    for trial in 0..200 {
        let pool = &pools[rng.gen_range(0..pools.len())];
        let s = &pool[rng.gen_range(0..pool.len())];
        let b = rng.gen_range(0..s.n_chords()) as crate::diagrams::Label;
        let strand = rng.gen_range(0..2);
        let len = if strand == 0 { s.strand1().len() } else { s.strand2().len() };
        let slot = (strand, rng.gen_range(0..=len));
        let mut acc = PolyC1C2X::zero();
        for (k, t) in four_term_terms(s, b, slot) {
            acc = &acc + &normal_form(&t).scale(&Rational::from_int(k));
        }
        ensure(acc.is_zero(), || format!("trial {trial}: {s}, chord {}, slot {slot:?} left {acc}", b + 1))?;
    }
    Ok("200 random four-term combinations on shares with at most 5 chords vanish".into())
}

/// Builds `size + pad` matrices so that products of up to `pad + 1`
/// factors are exact on the leading `size x size` block.
fn ops(basis: Basis, size: usize) -> (Matrix, Matrix, Matrix) {
    let m = |o| operator_matrix(o, basis, size).matrix;
    (m(Op::U), m(Op::X), m(Op::Y))
}

fn operator_identities(_: &Config) -> Result<String, String> {
    let n = 8;
    let c = PolyC::c();
    for b in [Basis::Y, Basis::P, Basis::E] {
        let (u, x, y) = ops(b, n + 2);
        let one = Matrix::identity(n + 2);
        let cm = Matrix::scalar(n + 2, &c);
        let first = (&x - &y).truncate(n);
        ensure(first == (&u - &cm).truncate(n), || format!("X - Y != U - c in the {b} basis"))?;
        let ux = (&(&u * &x) - &(&x * &u)).truncate(n);
        let xy = (&(&x * &y) - &(&y * &x)).truncate(n);
        let uy = (&(&u * &y) - &(&y * &u)).truncate(n);
        ensure(ux == xy && xy == uy, || format!("commutators differ in the {b} basis"))?;
        let two = PolyC::from_ints(&[2]);
        let lhs = &(&u * &y) * &y;
        let t1 = &(&(&y.scale(&two) - &one) * &u) * &y;
        let t2 = &(&(&cm.scale(&two) - &y) - &(&y * &y)) * &u;
        let ymc = &y - &cm;
        let rhs = &(&t1 + &t2) - &(&ymc * &ymc);
        ensure(lhs.truncate(n) == rhs.truncate(n), || format!("UY^2 relation fails in the {b} basis"))?;
    }
    Ok("X - Y = U - c, [U,X] = [X,Y] = [U,Y] and the UY^2 relation hold at N = 8 in the y, p, e bases".into())
}

fn norm_factor(m: i64) -> PolyC {
    PolyC::c_minus(Rational::new(m * m - 1, 4))
}

fn eigen_data(_: &Config) -> Result<String, String> {
    for m in 0..=12 {
        let u = &u_column(m)[m];
        ensure(*u == eigenvalue(m), || format!("u_{m} = {u}"))?;
    }
    for n in 0..=8i64 {
        let prod = (1..=n).fold(PolyC::one(), |acc, m| &acc * &norm_factor(m));
        let fact: i64 = (1..=n).product();
        let double_fact: i64 = (1..=n).map(|m| 2 * m - 1).product();
        let e = e_at_c(n as usize);
        ensure(e == prod.scale(&Rational::new(fact, double_fact)), || format!("e_{n}(c) = {e}"))?;
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let p = p_norm(n as usize);
        ensure(p == prod.scale(&Rational::from_int(sign * fact * fact)), || format!("<p_{n}, p_{n}> = {p}"))?;
    }
    Ok("u_m for m <= 12, e_n(c) and <p_n, p_n> for n <= 8 match the closed forms".into())
}

fn orthogonality(_: &Config) -> Result<String, String> {
    let p = |n| SElem::basis_element(Basis::P, n);
    for i in 0..=8 {
        for j in 0..i {
            let v = pairing(&p(i), &p(j));
            ensure(v.is_zero(), || format!("<p_{i}, p_{j}> = {v}"))?;
        }
    }
    let n = 8;
    let g = gram(n + 1);
    let (u, x, y) = ops(Basis::Y, n + 1);
    ensure((&y.transpose() * &g).truncate(n) == (&g * &u).truncate(n), || "Y is not adjoint to U".into())?;
    ensure((&x.transpose() * &g).truncate(n) == (&g * &x).truncate(n), || "X is not self-adjoint".into())?;
    Ok("p_0..p_8 are orthogonal; Y is adjoint to U and X to itself at N = 8".into())
}

fn k3_residues(sign_even: i64) -> RSeries {
    let s = |k: usize, text: &str| {
        let p = c_poly(text);
        (k, if k.is_multiple_of(2) && sign_even < 0 { -&p } else { p })
    };
    RSeries::from_terms([
        s(0, "c(5c)/30"),
        s(1, "c(6(3c^2 - 2c + 2))/30"),
        s(2, "c(10(4c - 3))/30"),
        s(3, "c(3(4c^2 - 11c + 6))/30"),
    ])
}

fn bipartite_series(cfg: &Config) -> Result<String, String> {
    let discrete = graph_rseries(&SimpleGraph::empty(3), cfg.max_vertices).map_err(err)?;
    ensure(discrete == k3_residues(1), || format!("discrete graph series:\n{discrete}"))?;
    let complete = graph_rseries(&SimpleGraph::complete(3), cfg.max_vertices).map_err(err)?;
    ensure(complete == k3_residues(-1), || format!("triangle series:\n{complete}"))?;
    ensure(cb_series(3) == discrete && split_series(3) == complete, || "recurrences disagree".into())?;
    Ok("series of K_(3,n) and (K_3, n) match both displays and both recurrences".into())
}

fn duality(cfg: &Config) -> Result<String, String> {
    let mut total = 0;
    for n in 1..=6 {
        let graphs = permutation_graphs(n);
        total += graphs.len();
        graphs.par_iter().try_for_each(|g| {
            let report = verify_duality(g, cfg.max_vertices).map_err(err)?;
            ensure(report.pass, || format!("duality fails for {g}"))
        })?;
    }
    let bull: SimpleGraph = "5: 1-2,1-3,2-3,2-4,3-5".parse().map_err(err)?;
    let want = RSeries::from_terms([
        (1, c_poly("(30c^5 - 60c^4 - 13c^3 + 22c^2 + 8c)/70")),
        (3, c_poly("(20c^5 - 115c^4 + 123c^3 + 108c^2 - 108c)/45")),
        (5, c_poly("(16c^5 - 200c^4 + 813c^3 - 1224c^2 + 540c)/126")),
    ]);
    let got = graph_rseries(&bull, cfg.max_vertices).map_err(err)?;
    ensure(got == want, || format!("bull series:\n{got}"))?;
    Ok(format!("{total} permutation graphs on at most 6 vertices; bull residues match"))
}

fn complete_graphs(_: &Config) -> Result<String, String> {
    for m in 0..=6 {
        let want = wsl2_diagram(&ChordDiagram::all_crossing(m));
        let got = k_complete(m);
        ensure(got == want, || format!("m = {m}: {got} vs {want}"))?;
    }
    Ok("the residue formula gives w(K_m) for m <= 6".into())
}

fn pentagon(_: &Config) -> Result<String, String> {
    let r = RSeries::from_terms([
        (1, c_poly("c(270c^4 - 540c^3 - 999c^2 + 576c + 324)/630")),
        (3, c_poly("c(280c^4 - 1610c^3 + 3234c^2 - 2646c + 756)/630")),
        (5, c_poly("c(80c^4 - 1000c^3 + 4065c^2 - 6120c + 2700)/630")),
    ]);
    let want = SElem::parse("y^5 - 10y^4 + 29y^3 + (5c^2 - 6c - 26)y^2 + (-14c^2 + 8c + 6)y + c^3 + 5c^2", Basis::Y)
        .map_err(err)?;
    let got = reconstruct_selem(&r).map_err(err)?;
    ensure(got == want, || format!("got {got}"))?;
    Ok(format!("reconstructed {got}"))
}

fn realizability(cfg: &Config) -> Result<String, String> {
    for (name, g) in bouchet_obstructions() {
        let found = realize_circle(&g, cfg.max_vertices).map_err(err)?;
        ensure(found.is_none(), || format!("{name} realized as {}", found.unwrap()))?;
    }
    let c5 = SimpleGraph::cycle(5);
    ensure(realize_permutation(&c5, cfg.max_vertices).map_err(err)?.is_none(), || "C5 realized".into())?;
    ensure(
        matches!(graph_rseries(&c5, cfg.max_vertices), Err(Error::NotRealizable(_))),
        || "C5 series did not report a non-realizable graph".into(),
    )?;
    Ok("W5, W7, BW3 are not circle graphs; C5 is not a permutation graph".into())
}
