//! Graph-side operations: complements, joins, canonical forms, realization
//! by shares and chord diagrams, local complementation, and the pipeline
//! from a graph to the residues of its join series.

use std::collections::{HashSet, VecDeque};

use crate::diagrams::{ChordDiagram, Label, Share, SimpleGraph};
use crate::error::{Error, Result};
use crate::exactalg::PolyC;
use crate::genfun::{gen_series, RSeries};
use crate::rewrite;
use crate::share_space::{Basis, SElem};

/// Vertex limit for searches that run over all orderings.
pub const DEFAULT_MAX_VERTICES: usize = 8;

pub fn complement(g: &SimpleGraph) -> SimpleGraph {
    let mut h = SimpleGraph::complete(g.n());
    for (u, v) in g.edges() {
        h.remove_edge(u, v);
    }
    h
}

/// Disjoint union plus every edge between the two parts; `g1` keeps its
/// vertex numbers and `g2` is shifted after it.
pub fn join_graphs(g1: &SimpleGraph, g2: &SimpleGraph) -> SimpleGraph {
    let n1 = g1.n();
    let mut h = SimpleGraph::empty(n1 + g2.n());
    for (u, v) in g1.edges() {
        h.add_edge(u, v);
    }
    for (u, v) in g2.edges() {
        h.add_edge(n1 + u, n1 + v);
    }
    for u in 0..n1 {
        for v in 0..g2.n() {
            h.add_edge(u, n1 + v);
        }
    }
    h
}

/// `(g, n)`: the join with the discrete graph on `n` vertices.
pub fn join_discrete(g: &SimpleGraph, n: usize) -> SimpleGraph {
    join_graphs(g, &SimpleGraph::empty(n))
}

/// Complements the subgraph induced on the neighbourhood of `v`.
pub fn local_complement(g: &SimpleGraph, v: usize) -> SimpleGraph {
    let mut h = g.clone();
    let nbrs: Vec<usize> = (0..g.n()).filter(|&u| g.has_edge(u, v)).collect();
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            h.toggle_edge(a, b);
        }
    }
    h
}

/// Isomorphism-invariant form: the least upper-triangle adjacency string
/// over all relabellings, packed into bits.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphCanon {
    pub n: usize,
    pub bits: Vec<u64>,
}

impl GraphCanon {
    /// The canonical representative itself.
    pub fn graph(&self) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.n);
        let mut idx = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.bits[idx / 64] >> (63 - idx % 64) & 1 == 1 {
                    g.add_edge(u, v);
                }
                idx += 1;
            }
        }
        g
    }
}

fn pack(g: &SimpleGraph, order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let mut bits = vec![0u64; (n * n.saturating_sub(1) / 2).div_ceil(64).max(1)];
    let mut idx = 0;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(order[i], order[j]) {
                bits[idx / 64] |= 1 << (63 - idx % 64);
            }
            idx += 1;
        }
    }
    bits
}

/// Vertices grouped into cells by degree and the sorted degrees of their
/// neighbours; cells are ordered by that invariant.
fn invariant_cells(g: &SimpleGraph) -> Vec<Vec<usize>> {
    let mut keyed: Vec<((usize, Vec<usize>), usize)> = (0..g.n())
        .map(|v| {
            let mut nd: Vec<usize> = (0..g.n()).filter(|&u| g.has_edge(u, v)).map(|u| g.degree(u)).collect();
            nd.sort_unstable();
            ((g.degree(v), nd), v)
        })
        .collect();
    keyed.sort();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (i, (key, v)) in keyed.iter().enumerate() {
        if i > 0 && keyed[i - 1].0 == *key {
            cells.last_mut().unwrap().push(*v);
        } else {
            cells.push(vec![*v]);
        }
    }
    cells
}

fn permutations_of(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations_of(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Brute-force canonical form; exponential, meant for graphs with a handful of vertices.
pub fn canonical_form(g: &SimpleGraph) -> GraphCanon {
    let cells = invariant_cells(g);
    let cell_perms: Vec<Vec<Vec<usize>>> = cells.iter().map(|c| permutations_of(c)).collect();
    let mut best: Option<Vec<u64>> = None;
    let mut choice = vec![0usize; cells.len()];
    loop {
        let order: Vec<usize> = choice.iter().enumerate().flat_map(|(i, &k)| cell_perms[i][k].iter().copied()).collect();
        let bits = pack(g, &order);
        if best.as_ref().is_none_or(|b| bits < *b) {
            best = Some(bits);
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return GraphCanon { n: g.n(), bits: best.unwrap() };
            }
            choice[i] += 1;
            if choice[i] < cell_perms[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

pub fn isomorphic(a: &SimpleGraph, b: &SimpleGraph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

fn check_size(g: &SimpleGraph, max_vertices: usize) -> Result<()> {
    if g.n() > max_vertices {
        return Err(Error::Budget(format!("{} vertices, limit is {max_vertices}", g.n())));
    }
    Ok(())
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// An arch-free share whose bridges cross exactly along the edges of `g`,
/// with vertex `v` drawn as chord `v + 1`, or `None` when `g` is not a
/// permutation graph.
pub fn realize_permutation(g: &SimpleGraph, max_vertices: usize) -> Result<Option<Share>> {
    check_size(g, max_vertices)?;
    let n = g.n();
    let mut first: Vec<usize> = (0..n).collect();
    loop {
        let mut pos = vec![0; n];
        for (i, &v) in first.iter().enumerate() {
            pos[v] = i;
        }
        // on the second strand u precedes v iff the first-strand order and adjacency disagree
        let before = |u: usize, v: usize| (pos[u] < pos[v]) != g.has_edge(u, v);
        let mut second: Vec<usize> = (0..n).collect();
        second.sort_by_key(|&v| (0..n).filter(|&u| u != v && before(u, v)).count());
        let consistent = (0..n).all(|i| (i + 1..n).all(|j| before(second[i], second[j])));
        if consistent {
            let label = |v: &usize| (*v + 1) as Label;
            let s1: Vec<Label> = first.iter().map(label).collect();
            let s2: Vec<Label> = second.iter().map(label).collect();
            return Ok(Some(Share::new(&s1, &s2)?));
        }
        if !next_permutation(&mut first) {
            return Ok(None);
        }
    }
}

/// A chord diagram whose intersection graph is `g` (chord `v + 1` for
/// vertex `v`), or `None` when `g` is not a circle graph.
pub fn realize_circle(g: &SimpleGraph, max_vertices: usize) -> Result<Option<ChordDiagram>> {
    check_size(g, max_vertices)?;
    let n = g.n();
    if n == 0 {
        return Ok(Some(ChordDiagram::empty()));
    }
    struct Search<'a> {
        g: &'a SimpleGraph,
        word: Vec<usize>,
        opened: Vec<Option<usize>>,
        closed: Vec<Option<usize>>,
    }
    impl Search<'_> {
        fn can_close(&self, v: usize) -> bool {
            let at = self.opened[v].unwrap();
            (0..self.g.n()).filter(|&u| u != v).all(|u| {
                let crosses = match (self.opened[u], self.closed[u]) {
                    (None, _) => false,
                    (Some(o), None) => o > at,
                    (Some(o), Some(c)) => (o < at) && (c > at),
                };
                crosses == self.g.has_edge(u, v)
            })
        }

        fn run(&mut self) -> bool {
            let n = self.g.n();
            if self.word.len() == 2 * n {
                return true;
            }
            let pos = self.word.len();
            for v in 0..n {
                let step = match (self.opened[v], self.closed[v]) {
                    (None, _) => {
                        // rotation lets vertex 0 open first
                        if pos == 0 && v != 0 {
                            continue;
                        }
                        self.opened[v] = Some(pos);
                        true
                    }
                    (Some(_), None) if self.can_close(v) => {
                        self.closed[v] = Some(pos);
                        false
                    }
                    _ => continue,
                };
                self.word.push(v);
                if self.run() {
                    return true;
                }
                self.word.pop();
                if step {
                    self.opened[v] = None;
                } else {
                    self.closed[v] = None;
                }
            }
            false
        }
    }
    let mut s = Search { g, word: Vec::new(), opened: vec![None; n], closed: vec![None; n] };
    if !s.run() {
        return Ok(None);
    }
    let word: Vec<Label> = s.word.iter().map(|&v| (v + 1) as Label).collect();
    Ok(Some(ChordDiagram::from_word(&word)?))
}

/// The three graphs that obstruct circle graphs up to local equivalence:
/// the wheels on five and seven rim vertices, and the three-spoke wheel
/// with every rim edge subdivided.
pub fn bouchet_obstructions() -> Vec<(&'static str, SimpleGraph)> {
    let wheel = |k: usize| join_discrete(&SimpleGraph::cycle(k), 1);
    let bw3: SimpleGraph = "7: 1-2,1-3,1-4,2-5,5-3,3-6,6-4,4-7,7-2".parse().unwrap();
    vec![("W5", wheel(5)), ("W7", wheel(7)), ("BW3", bw3)]
}

/// Whether `host` contains `pattern` on some vertex subset, either as an
/// induced subgraph or merely as a subgraph.
pub fn contains_pattern(host: &SimpleGraph, pattern: &SimpleGraph, induced: bool) -> bool {
    fn extend(host: &SimpleGraph, pat: &SimpleGraph, induced: bool, map: &mut Vec<usize>, used: u32) -> bool {
        let k = map.len();
        if k == pat.n() {
            return true;
        }
        for h in 0..host.n() {
            if used >> h & 1 == 1 || host.degree(h) < pat.degree(k) {
                continue;
            }
            let fits = (0..k).all(|i| {
                let want = pat.has_edge(i, k);
                let have = host.has_edge(map[i], h);
                if induced {
                    want == have
                } else {
                    !want || have
                }
            });
            if fits {
                map.push(h);
                if extend(host, pat, induced, map, used | 1 << h) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    pattern.n() <= host.n() && extend(host, pattern, induced, &mut Vec::new(), 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Some graph in the orbit contains an obstruction.
    Obstructed,
    /// The whole orbit was explored and none contains one.
    Clear,
    /// The exploration budget ran out first.
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct BouchetReport {
    /// Verdict when containment means induced subgraph.
    pub induced: Verdict,
    /// Verdict when any subgraph counts.
    pub subgraph: Verdict,
    /// First orbit member and obstruction found under each reading.
    pub induced_witness: Option<(SimpleGraph, &'static str)>,
    pub subgraph_witness: Option<(SimpleGraph, &'static str)>,
    /// Number of isomorphism classes visited.
    pub explored: usize,
}

impl BouchetReport {
    pub fn to_json(&self) -> serde_json::Value {
        let verdict = |v: Verdict| format!("{v:?}").to_uppercase();
        let witness = |w: &Option<(SimpleGraph, &str)>| match w {
            Some((g, name)) => serde_json::json!({"graph": g.to_string(), "obstruction": name}),
            None => serde_json::Value::Null,
        };
        serde_json::json!({
            "induced": verdict(self.induced),
            "subgraph": verdict(self.subgraph),
            "induced_witness": witness(&self.induced_witness),
            "subgraph_witness": witness(&self.subgraph_witness),
            "explored": self.explored,
        })
    }
}

/// Breadth-first walk over the local-equivalence class of `g` (up to
/// isomorphism), visiting at most `budget` classes, looking for the
/// obstructions of [`bouchet_obstructions`].
pub fn bouchet_scan(g: &SimpleGraph, budget: usize) -> BouchetReport {
    let obstructions = bouchet_obstructions();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(canonical_form(g));
    queue.push_back(g.clone());
    let mut report = BouchetReport {
        induced: Verdict::Clear,
        subgraph: Verdict::Clear,
        induced_witness: None,
        subgraph_witness: None,
        explored: 0,
    };
    while report.explored < budget {
        let Some(h) = queue.pop_front() else { break };
        report.explored += 1;
        for (name, o) in &obstructions {
            if report.induced_witness.is_none() && contains_pattern(&h, o, true) {
                report.induced_witness = Some((h.clone(), name));
            }
            if report.subgraph_witness.is_none() && contains_pattern(&h, o, false) {
                report.subgraph_witness = Some((h.clone(), name));
            }
        }
        if report.induced_witness.is_some() && report.subgraph_witness.is_some() {
            break;
        }
        for v in 0..h.n() {
            let next = local_complement(&h, v);
            if seen.insert(canonical_form(&next)) {
                queue.push_back(next);
            }
        }
    }
    let unfinished = !queue.is_empty();
    let verdict = |hit: bool| match (hit, unfinished) {
        (true, _) => Verdict::Obstructed,
        (false, true) => Verdict::Inconclusive,
        (false, false) => Verdict::Clear,
    };
    report.induced = verdict(report.induced_witness.is_some());
    report.subgraph = verdict(report.subgraph_witness.is_some());
    report
}

/// The share whose joins `(share, y^n)` have intersection graph `(g, n)`.
///
/// Closing a share up with another one reverses its first strand, so the
/// realized share is flipped before use.
pub fn join_share(g: &SimpleGraph, max_vertices: usize) -> Result<Share> {
    realize_permutation(g, max_vertices)?
        .map(|s| s.reverse_strand())
        .ok_or_else(|| Error::NotRealizable(format!("{g} is not a permutation graph")))
}

fn share_series(s: &Share) -> RSeries {
    gen_series(&SElem::from_poly(Basis::X, rewrite::wsl2_share_x(s)))
}

/// Residues of `sum_n w((g, n)) t^n`.
pub fn graph_rseries(g: &SimpleGraph, max_vertices: usize) -> Result<RSeries> {
    Ok(share_series(&join_share(g, max_vertices)?))
}

#[derive(Clone, Debug)]
pub struct DualityRow {
    pub k: usize,
    pub r: PolyC,
    pub r_complement: PolyC,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub graph: SimpleGraph,
    pub rows: Vec<DualityRow>,
    pub pass: bool,
}

impl DualityReport {
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                serde_json::json!({
                    "k": r.k,
                    "r": r.r.to_json(),
                    "r_complement": r.r_complement.to_json(),
                    "pass": r.pass,
                })
            })
            .collect();
        serde_json::json!({"graph": self.graph.to_string(), "pass": self.pass, "rows": rows})
    }
}

/// Computes the series of `g` and of its complement from two separate
/// shares and checks `r_k(complement) = (-1)^(n-k) r_k(g)` for every `k`.
///
/// The complement is drawn by the realized share itself: reversing one
/// strand of an arch-free share toggles every bridge crossing.
pub fn verify_duality(g: &SimpleGraph, max_vertices: usize) -> Result<DualityReport> {
    let flipped = join_share(g, max_vertices)?;
    let plain = flipped.reverse_strand();
    let r = share_series(&flipped);
    let rc = share_series(&plain);
    let n = g.n();
    let rows: Vec<DualityRow> = (0..=n)
        .map(|k| {
            let (a, b) = (r.get(k), rc.get(k));
            let pass = if (n - k).is_multiple_of(2) { b == a } else { b == -&a };
            DualityRow { k, r: a, r_complement: b, pass }
        })
        .collect();
    let pass = rows.iter().all(|row| row.pass) && r.max_k().is_none_or(|k| k <= n);
    Ok(DualityReport { graph: g.clone(), rows, pass })
}

/// Canonical forms of every permutation graph on `n` vertices.
pub fn permutation_graphs(n: usize) -> Vec<SimpleGraph> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        let mut g = SimpleGraph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                if p[i] > p[j] {
                    g.add_edge(i, j);
                }
            }
        }
        let canon = canonical_form(&g);
        if seen.insert(canon.clone()) {
            out.push(canon.graph());
        }
        if !next_permutation(&mut p) {
            break;
        }
    }
    out.sort_by_key(canonical_form);
    out
}
