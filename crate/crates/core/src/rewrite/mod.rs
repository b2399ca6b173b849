//! Reduction of shares to their normal form in `Q[c1, c2, x]`.
//!
//! The engine repeatedly picks the first applicable rule:
//!
//! 1. the share splits as a dot product of two smaller shares: evaluate the
//!    factors and multiply;
//! 2. the share has an arch: contract the shortest one (ties go to strand 1,
//!    then to the leftmost arch). For an arch on strand `s` whose interior
//!    word is `W = w_1 .. w_L`,
//!    `arch(W) = (c_s - L) W - sum_{i<j} swap_ij(W) + sum_{i<j} join_ij(W)`,
//!    where `swap_ij` exchanges the ends at interior positions `i`, `j`, and
//!    `join_ij` reconnects them: the chord `b = w_i` runs between the two
//!    interior positions and the chord `d = w_j` runs between the far ends
//!    of `b` and `d`. With `L = 0` this is the factor `c_s`, with `L = 1`
//!    the leaf relation;
//! 3. no arches but two bridges cross: at the leftmost adjacent inversion
//!    `b d` on strand 1 apply the four-term relation
//!    `D = D(.. d b ..) + D_a - D_b`, where `D_a`, `D_b` merge the two
//!    strand-1 ends into one end of `b` and write `d b` (resp. `b d`) at the
//!    strand-2 end of `b`;
//! 4. otherwise the share is `x^n`.
//!
//! Every produced share is strictly simpler than its parent (fewer chords;
//! or gaining an arch; or a shorter minimal arch; or fewer crossings), which
//! is checked in debug builds.

mod memo;

pub use memo::{read_cache, write_cache, LocalMemo, MemoStore, SharedMemo, CACHE_FORMAT};

use crate::diagrams::{ChordDiagram, Label, Share};
use crate::exactalg::{PolyC, PolyC1C2X, PolyCY, Rational};

/// One step of the reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// Arch-free and crossing-free: the value is `x^n`.
    Normal(PolyC1C2X),
    /// `value = value(left) * value(right)`.
    Product(Share, Share),
    /// `value = sum coeff * value(share)`.
    Combination(Vec<(PolyC1C2X, Share)>),
}

type Strands = [Vec<Label>; 2];

fn strands(s: &Share) -> Strands {
    [s.strand1().to_vec(), s.strand2().to_vec()]
}

fn share_of(st: Strands) -> Share {
    let [a, b] = st;
    Share::from_raw(a, b)
}

/// `(strand, index)` of both ends of each chord, indexed by label. Labels
/// may have gaps; missing ones keep a `usize::MAX` strand.
fn chord_ends(st: &Strands) -> Vec<[(usize, usize); 2]> {
    let n = st.iter().flatten().map(|&l| l as usize + 1).max().unwrap_or(0);
    let mut ends = vec![[(usize::MAX, 0); 2]; n];
    for (s, word) in st.iter().enumerate() {
        for (i, &l) in word.iter().enumerate() {
            let e = &mut ends[l as usize];
            if e[0].0 == usize::MAX {
                e[0] = (s, i);
            } else {
                e[1] = (s, i);
            }
        }
    }
    ends
}

/// Shortest arch as `(length, strand, left end, right end)`.
fn shortest_arch(st: &Strands) -> Option<(usize, usize, usize, usize)> {
    chord_ends(st)
        .into_iter()
        .filter(|e| e[0].0 != usize::MAX && e[0].0 == e[1].0)
        .map(|e| (e[1].1 - e[0].1 - 1, e[0].0, e[0].1, e[1].1))
        .min()
}

/// Ordering key of the termination argument; smaller means simpler.
fn complexity(s: &Share) -> (usize, u8, usize) {
    let st = strands(s);
    match shortest_arch(&st) {
        Some((len, ..)) => (s.n_chords(), 0, len),
        None => (s.n_chords(), 1, s.crossing_count()),
    }
}

fn simpler(a: &Share, b: &Share) -> bool {
    complexity(a) < complexity(b)
}

/// First proper prefix cut `(i, j)` such that `strand1[..i]` and
/// `strand2[..j]` together hold both ends of every chord they touch.
fn dot_split(st: &Strands) -> Option<(Share, Share)> {
    let n = (st[0].len() + st[1].len()) / 2;
    if n < 2 {
        return None;
    }
    let (l1, l2) = (st[0].len(), st[1].len());
    let mut count = vec![0u8; n];
    for i in 0..=l1 {
        if i > 0 {
            count[st[0][i - 1] as usize] += 1;
        }
        let mut c2 = count.clone();
        for j in 0..=l2 {
            if j > 0 {
                c2[st[1][j - 1] as usize] += 1;
            }
            if (i, j) == (0, 0) || (i, j) == (l1, l2) {
                continue;
            }
            if c2.iter().all(|&k| k != 1) {
                let left = Share::from_raw(st[0][..i].to_vec(), st[1][..j].to_vec());
                let right = Share::from_raw(st[0][i..].to_vec(), st[1][j..].to_vec());
                return Some((left, right));
            }
        }
    }
    None
}

fn casimir(strand: usize) -> PolyC1C2X {
    if strand == 0 {
        PolyC1C2X::c1()
    } else {
        PolyC1C2X::c2()
    }
}

fn constant(k: i64) -> PolyC1C2X {
    PolyC1C2X::constant(Rational::from_int(k))
}

fn contract_arch(st: &Strands, s: usize, lo: usize, hi: usize) -> Vec<(PolyC1C2X, Share)> {
    let len = hi - lo - 1;
    let mut base = st.clone();
    base[s].remove(hi);
    base[s].remove(lo);
    let ends = chord_ends(&base);
    // interior ends now sit at lo..lo+len of strand s
    let far_end = |label: Label, p: usize| {
        let e = ends[label as usize];
        if e[0] == (s, p) {
            e[1]
        } else {
            e[0]
        }
    };
    let mut out = vec![(&casimir(s) - &constant(len as i64), share_of(base.clone()))];
    for i in lo..lo + len {
        for j in i + 1..lo + len {
            let mut w = base.clone();
            w[s].swap(i, j);
            out.push((constant(-1), share_of(w)));

            let (b, d) = (base[s][i], base[s][j]);
            let rb = far_end(b, i);
            let mut w = base.clone();
            w[s][j] = b;
            w[rb.0][rb.1] = d;
            out.push((constant(1), share_of(w)));
        }
    }
    out
}

fn four_term(st: &Strands) -> Option<Vec<(PolyC1C2X, Share)>> {
    let mut pos2 = vec![0usize; st[1].len()];
    for (q, &l) in st[1].iter().enumerate() {
        pos2[l as usize] = q;
    }
    let p = (0..st[0].len().saturating_sub(1))
        .find(|&p| pos2[st[0][p + 1] as usize] < pos2[st[0][p] as usize])?;
    let (b, d) = (st[0][p], st[0][p + 1]);
    let qb = pos2[b as usize];

    let mut swapped = st.clone();
    swapped[0].swap(p, p + 1);

    let merged = |pair: [Label; 2]| {
        let mut w = st.clone();
        w[0].remove(p + 1);
        w[1].splice(qb..=qb, pair);
        share_of(w)
    };
    Some(vec![
        (constant(1), share_of(swapped)),
        (constant(1), merged([d, b])),
        (constant(-1), merged([b, d])),
    ])
}

/// One reduction step, without recursion.
pub fn rewrite_step(s: &Share, factorize: bool) -> Step {
    let st = strands(s);
    if factorize {
        if let Some((a, b)) = dot_split(&st) {
            return Step::Product(a, b);
        }
    }
    if let Some((_, strand, lo, hi)) = shortest_arch(&st) {
        return Step::Combination(contract_arch(&st, strand, lo, hi));
    }
    match four_term(&st) {
        Some(terms) => Step::Combination(terms),
        None => Step::Normal(PolyC1C2X::x().pow(s.n_chords() as u32)),
    }
}

/// Memo key. Reversing every strand preserves the value (the antipode
/// applied to both ends of each chord), and swapping the strands swaps `c1`
/// and `c2`; one-strand shares are also closed diagrams, so rotations are
/// identified. The flag says whether the key has its strands swapped.
pub fn canonical_key(s: &Share) -> (Share, bool) {
    let one_strand = |t: &Share| {
        let d = t.closure();
        let r: ChordDiagram = t.reversed().closure();
        d.canonical().min(r.canonical()).as_share()
    };
    if s.strand2().is_empty() {
        return (one_strand(s), false);
    }
    if s.strand1().is_empty() {
        return (one_strand(&s.swap_strands()), true);
    }
    let r = s.reversed();
    [(s.clone(), false), (r.clone(), false), (s.swap_strands(), true), (r.swap_strands(), true)]
        .into_iter()
        .min()
        .unwrap()
}

/// The rewrite engine with its memo table.
pub struct Engine<M: MemoStore = LocalMemo> {
    memo: M,
    factorize: bool,
}

impl<M: MemoStore> Default for Engine<M> {
    fn default() -> Self {
        Engine { memo: M::default(), factorize: true }
    }
}

impl<M: MemoStore> Engine<M> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Engine that never splits dot products; slower, used to cross-check.
    pub fn without_factorization() -> Self {
        Engine { memo: M::default(), factorize: false }
    }

    pub fn memo(&self) -> &M {
        &self.memo
    }

    /// Seeds the memo table, e.g. from an on-disk cache.
    pub fn preload(&self, entries: impl IntoIterator<Item = (Share, PolyC1C2X)>) {
        for (s, v) in entries {
            let (key, swapped) = canonical_key(&s);
            self.memo.insert(key, if swapped { v.swap_strands() } else { v });
        }
    }

    pub fn normal_form(&self, s: &Share) -> PolyC1C2X {
        let (key, swapped) = canonical_key(s);
        let value = match self.memo.get(&key) {
            Some(v) => v,
            None => {
                let v = self.reduce(&key);
                self.memo.insert(key, v.clone());
                v
            }
        };
        if swapped {
            value.swap_strands()
        } else {
            value
        }
    }

    fn reduce(&self, s: &Share) -> PolyC1C2X {
        if s.n_chords() == 0 {
            return PolyC1C2X::one();
        }
        match rewrite_step(s, self.factorize) {
            Step::Normal(v) => v,
            Step::Product(a, b) => &self.normal_form(&a) * &self.normal_form(&b),
            Step::Combination(terms) => {
                let mut acc = PolyC1C2X::zero();
                for (coeff, t) in terms {
                    debug_assert!(simpler(&t, s), "{t} is not simpler than {s}");
                    acc.add_scaled(&coeff, &self.normal_form(&t));
                }
                acc
            }
        }
    }

    /// Value on a chord diagram, a polynomial in `c`.
    pub fn wsl2_diagram(&self, d: &ChordDiagram) -> PolyC {
        self.normal_form(&d.as_share())
            .to_poly_c()
            .expect("one-strand shares have no bridges")
    }

    /// The share as an element of `S`, in powers of `x`.
    pub fn wsl2_share_x(&self, s: &Share) -> PolyCY {
        self.normal_form(s).identify_casimirs()
    }
}

thread_local! {
    static ENGINE: Engine<LocalMemo> = Engine::new();
}

/// Runs `f` with this thread's default engine.
pub fn with_engine<T>(f: impl FnOnce(&Engine<LocalMemo>) -> T) -> T {
    ENGINE.with(|e| f(e))
}

pub fn normal_form(s: &Share) -> PolyC1C2X {
    with_engine(|e| e.normal_form(s))
}

pub fn wsl2_diagram(d: &ChordDiagram) -> PolyC {
    with_engine(|e| e.wsl2_diagram(d))
}

pub fn wsl2_share_x(s: &Share) -> PolyCY {
    with_engine(|e| e.wsl2_share_x(s))
}

/// The four shares of a four-term relation, with signs; their weighted sum
/// has value zero.
///
/// A new chord gets one end at `slot` (an insertion point `(strand, index)`
/// in `s`), and its other end is placed right before and right after each
/// end of chord `b`: `before_1 - after_1 + before_2 - after_2`.
pub fn four_term_terms(s: &Share, b: Label, slot: (usize, usize)) -> [(i64, Share); 4] {
    let mut st = strands(s);
    let a = s.n_chords() as Label;
    st[slot.0].insert(slot.1, a);
    let ends = chord_ends(&st);
    let place = |end: (usize, usize), after: bool| {
        let mut w = st.clone();
        w[end.0].insert(end.1 + after as usize, a);
        share_of(w)
    };
    let e = ends[b as usize];
    [
        (1, place(e[0], false)),
        (-1, place(e[0], true)),
        (1, place(e[1], false)),
        (-1, place(e[1], true)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(s: &str) -> PolyC1C2X {
        normal_form(&s.parse().unwrap())
    }

    fn cd(s: &str) -> PolyC {
        wsl2_diagram(&s.parse().unwrap())
    }

    fn x_poly(c: &[&[i64]]) -> PolyCY {
        PolyCY::from_coeffs(c.iter().map(|k| PolyC::from_ints(k)).collect())
    }

    #[test]
    fn base_values() {
        assert_eq!(nf(""), PolyC1C2X::one());
        assert_eq!(nf("1 | 1"), PolyC1C2X::x());
        assert_eq!(nf("1 1 |"), PolyC1C2X::c1());
        assert_eq!(nf("| 1 1"), PolyC1C2X::c2());
        assert_eq!(cd("1 1"), PolyC::c());
    }

    #[test]
    fn small_diagrams() {
        assert_eq!(cd("1 2 1 2"), PolyC::from_ints(&[0, -1, 1]));
        assert_eq!(cd("1 2 1 3 2 3"), PolyC::from_ints(&[0, 1, -2, 1]));
        assert_eq!(cd("1 2 3 1 2 3"), PolyC::from_ints(&[0, 2, -3, 1]));
        let c1 = PolyC1C2X::c1();
        assert_eq!(nf("1 2 1 2 |"), &(&c1 * &c1) - &c1);
    }

    #[test]
    fn crossing_bridges() {
        // y^2 = x^2 + x
        assert_eq!(wsl2_share_x(&Share::y_pow(2)), x_poly(&[&[], &[1], &[1]]));
        assert_eq!(wsl2_share_x(&Share::x_pow(2)), x_poly(&[&[], &[], &[1]]));
    }

    #[test]
    fn enclosing_arch_column() {
        // U(y^2) = (c - 3) y^2 + y + c^2 with y^2 = x^2 + x, y = x
        let u = wsl2_share_x(&Share::y_pow(2).add_enclosing_arch());
        let want = x_poly(&[&[0, 0, 1], &[-2, 1], &[-3, 1]]);
        assert_eq!(u, want);
    }

    #[test]
    fn factorization_does_not_change_values() {
        let plain = Engine::<LocalMemo>::without_factorization();
        for s in ["1 2 1 3 | 3 2", "1 2 | 3 1 3 2", "1 2 3 | 3 2 1", "1 1 2 | 3 2 3"] {
            let s: Share = s.parse().unwrap();
            assert_eq!(plain.normal_form(&s), normal_form(&s), "{s}");
        }
    }

    #[test]
    fn memo_agrees_with_fresh_engine() {
        let warm = Engine::<SharedMemo>::new();
        let s: Share = "1 2 3 | 3 1 2".parse().unwrap();
        let first = warm.normal_form(&s);
        assert!(!warm.memo().is_empty());
        assert_eq!(warm.normal_form(&s), first);
        assert_eq!(Engine::<LocalMemo>::new().normal_form(&s), first);
    }

    #[test]
    fn reversal_symmetry() {
        for s in ["1 2 3 | 3 1 2", "1 2 1 3 | 2 3", "1 | 2 1 2"] {
            let s: Share = s.parse().unwrap();
            let plain = Engine::<LocalMemo>::new();
            assert_eq!(plain.normal_form(&s.reversed()), plain.normal_form(&s));
        }
    }

    #[test]
    fn strand_swap_symmetry() {
        let s: Share = "1 2 2 | 1 3 3".parse().unwrap();
        assert_eq!(normal_form(&s.swap_strands()), normal_form(&s).swap_strands());
    }

    #[test]
    fn four_term_relation_vanishes() {
        let s: Share = "1 2 | 2 1".parse().unwrap();
        for slot in [(0, 0), (0, 2), (1, 1)] {
            let mut acc = PolyC1C2X::zero();
            for (k, t) in four_term_terms(&s, 0, slot) {
                acc = &acc + &normal_form(&t).scale(&Rational::from_int(k));
            }
            assert!(acc.is_zero(), "slot {slot:?}: {acc}");
        }
    }
}
