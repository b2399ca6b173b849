//! Chord diagrams on one circle and shares (chord diagrams on two oriented
//! strands), their intersection graphs, products, strand reversal, canonical
//! forms and enumeration.
//!
//! Labels are 0-based internally and printed 1-based. Every constructor
//! normalizes labels by first appearance, so two values with the same
//! combinatorics compare equal.

mod graph;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

pub use graph::{Color, SimpleGraph, TwoColoredGraph, MAX_VERTICES};

use crate::error::{Error, Result};

pub type Label = u16;

/// Largest chord count `enumerate_diagrams` accepts without an explicit budget.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 8;

fn relabel(words: &mut [&mut Vec<Label>]) {
    let mut map: Vec<Option<Label>> = Vec::new();
    let mut next = 0;
    for w in words.iter_mut() {
        for l in w.iter_mut() {
            let i = *l as usize;
            if i >= map.len() {
                map.resize(i + 1, None);
            }
            *l = *map[i].get_or_insert_with(|| {
                next += 1;
                next - 1
            });
        }
    }
}

fn parse_word(text: &str) -> Result<Vec<u64>> {
    text.split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|_| Error::Parse(format!("bad chord label {t:?}"))))
        .collect()
}

/// Checks that each label occurs exactly twice and maps labels to `0..n`.
fn validate_labels(words: &[Vec<u64>]) -> Result<Vec<Vec<Label>>> {
    let mut seen: std::collections::BTreeMap<u64, usize> = Default::default();
    for w in words {
        for &l in w {
            *seen.entry(l).or_default() += 1;
        }
    }
    if let Some((l, k)) = seen.iter().find(|(_, &k)| k != 2) {
        return Err(Error::Parse(format!("label {l} occurs {k} times, expected 2")));
    }
    let index: std::collections::BTreeMap<u64, Label> =
        seen.keys().enumerate().map(|(i, &l)| (l, i as Label)).collect();
    Ok(words.iter().map(|w| w.iter().map(|l| index[l]).collect()).collect())
}

fn fmt_word(w: &[Label]) -> String {
    w.iter().map(|l| (l + 1).to_string()).collect::<Vec<_>>().join(" ")
}

/// A chord diagram: a double-occurrence word read counterclockwise.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChordDiagram {
    word: Vec<Label>,
}

impl ChordDiagram {
    /// Builds from a double-occurrence word; labels are renormalized.
    pub fn from_word(word: &[Label]) -> Result<Self> {
        let w = validate_labels(&[word.iter().map(|&l| l as u64).collect()])?;
        let mut word = w.into_iter().next().unwrap();
        relabel(&mut [&mut word]);
        Ok(ChordDiagram { word })
    }

    fn from_normalized(word: Vec<Label>) -> Self {
        ChordDiagram { word }
    }

    pub fn empty() -> Self {
        ChordDiagram { word: Vec::new() }
    }

    /// The diagram whose `m` chords pairwise cross: `1 2 .. m 1 2 .. m`.
    pub fn all_crossing(m: usize) -> Self {
        let half: Vec<Label> = (0..m as Label).collect();
        ChordDiagram { word: [half.clone(), half].concat() }
    }

    pub fn word(&self) -> &[Label] {
        &self.word
    }

    pub fn n_chords(&self) -> usize {
        self.word.len() / 2
    }

    /// Positions of both ends of every chord.
    pub fn ends(&self) -> Vec<(usize, usize)> {
        let mut ends = vec![(usize::MAX, usize::MAX); self.n_chords()];
        for (p, &l) in self.word.iter().enumerate() {
            let e = &mut ends[l as usize];
            if e.0 == usize::MAX {
                e.0 = p;
            } else {
                e.1 = p;
            }
        }
        ends
    }

    pub fn intersection_graph(&self) -> SimpleGraph {
        let ends = self.ends();
        let mut g = SimpleGraph::empty(ends.len());
        for i in 0..ends.len() {
            for j in i + 1..ends.len() {
                let (a, b) = ends[i];
                let inside = |p: usize| a < p && p < b;
                if inside(ends[j].0) != inside(ends[j].1) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Rotate by `r` positions and renormalize.
    pub fn rotated(&self, r: usize) -> ChordDiagram {
        let len = self.word.len();
        if len == 0 {
            return self.clone();
        }
        let mut w: Vec<Label> = (0..len).map(|i| self.word[(i + r) % len]).collect();
        relabel(&mut [&mut w]);
        ChordDiagram { word: w }
    }

    /// Lexicographically least relabelled rotation.
    pub fn canonical(&self) -> ChordDiagram {
        (0..self.word.len().max(1)).map(|r| self.rotated(r)).min().unwrap()
    }

    /// Product of diagrams: cut both circles and glue the arcs end to end.
    pub fn product(&self, other: &ChordDiagram) -> ChordDiagram {
        let shift = self.n_chords() as Label;
        let mut w = self.word.clone();
        w.extend(other.word.iter().map(|l| l + shift));
        ChordDiagram { word: w }
    }

    /// The diagram as a share with everything on strand 1.
    pub fn as_share(&self) -> Share {
        Share { s1: self.word.clone(), s2: Vec::new() }
    }
}

impl FromStr for ChordDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.contains('|') {
            return Err(Error::Parse("a chord diagram has a single word; use a share for '|'".into()));
        }
        let w = validate_labels(&[parse_word(s)?])?;
        let mut word = w.into_iter().next().unwrap();
        relabel(&mut [&mut word]);
        Ok(ChordDiagram { word })
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_word(&self.word))
    }
}

impl fmt::Debug for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChordDiagram({self})")
    }
}

/// A chord diagram on two oriented strands. Both words are read along the
/// strand orientation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Share {
    s1: Vec<Label>,
    s2: Vec<Label>,
}

impl Share {
    /// Builds from two words; labels are validated and renormalized.
    pub fn new(s1: &[Label], s2: &[Label]) -> Result<Self> {
        let w = validate_labels(&[
            s1.iter().map(|&l| l as u64).collect(),
            s2.iter().map(|&l| l as u64).collect(),
        ])?;
        let mut it = w.into_iter();
        let (mut a, mut b) = (it.next().unwrap(), it.next().unwrap());
        relabel(&mut [&mut a, &mut b]);
        Ok(Share { s1: a, s2: b })
    }

    /// Renormalizes words that are already known to be a valid share.
    pub(crate) fn from_raw(mut s1: Vec<Label>, mut s2: Vec<Label>) -> Self {
        relabel(&mut [&mut s1, &mut s2]);
        Share { s1, s2 }
    }

    pub fn empty() -> Self {
        Share { s1: Vec::new(), s2: Vec::new() }
    }

    /// `m` bridges in the same order on both strands.
    pub fn x_pow(m: usize) -> Self {
        let w: Vec<Label> = (0..m as Label).collect();
        Share { s1: w.clone(), s2: w }
    }

    /// `m` bridges in opposite orders: they pairwise cross.
    pub fn y_pow(m: usize) -> Self {
        let w: Vec<Label> = (0..m as Label).collect();
        Share { s1: w.clone(), s2: w.into_iter().rev().collect() }
    }

    pub fn strand1(&self) -> &[Label] {
        &self.s1
    }

    pub fn strand2(&self) -> &[Label] {
        &self.s2
    }

    pub fn n_chords(&self) -> usize {
        (self.s1.len() + self.s2.len()) / 2
    }

    /// Per chord: the strand of each end (0 or 1) and the index on it,
    /// first end first in reading order (strand 1 before strand 2).
    pub fn ends(&self) -> Vec<[(u8, usize); 2]> {
        let mut ends = vec![[(u8::MAX, 0); 2]; self.n_chords()];
        let all = self.s1.iter().map(|&l| (0u8, l)).enumerate().chain(
            self.s2.iter().map(|&l| (1u8, l)).enumerate(),
        );
        for (i, (s, l)) in all {
            let e = &mut ends[l as usize];
            if e[0].0 == u8::MAX {
                e[0] = (s, i);
            } else {
                e[1] = (s, i);
            }
        }
        ends
    }

    pub fn is_bridge(&self, label: Label) -> bool {
        let e = self.ends()[label as usize];
        e[0].0 != e[1].0
    }

    pub fn bridge_count(&self) -> usize {
        self.ends().iter().filter(|e| e[0].0 != e[1].0).count()
    }

    pub fn is_arch_free(&self) -> bool {
        self.ends().iter().all(|e| e[0].0 != e[1].0)
    }

    pub fn two_colored_graph(&self) -> TwoColoredGraph {
        let ends = self.ends();
        let n = ends.len();
        let mut g = SimpleGraph::empty(n);
        let colors: Vec<Color> = ends
            .iter()
            .map(|e| if e[0].0 == e[1].0 { Color::White } else { Color::Black })
            .collect();
        for i in 0..n {
            for j in i + 1..n {
                if chords_cross(&ends[i], &ends[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        TwoColoredGraph { graph: g, colors }
    }

    /// Number of intersecting pairs of chords.
    pub fn crossing_count(&self) -> usize {
        self.two_colored_graph().graph.edge_count()
    }

    /// Glue the end of strand 1 to the start of strand 2 and vice versa.
    pub fn closure(&self) -> ChordDiagram {
        ChordDiagram::from_normalized([self.s1.clone(), self.s2.clone()].concat())
    }

    fn shifted(&self, by: Label) -> (Vec<Label>, Vec<Label>) {
        (self.s1.iter().map(|l| l + by).collect(), self.s2.iter().map(|l| l + by).collect())
    }

    /// Each strand of `self` followed by the same strand of `other`.
    pub fn dot(&self, other: &Share) -> Share {
        let (h1, h2) = other.shifted(self.n_chords() as Label);
        Share::from_raw([self.s1.clone(), h1].concat(), [self.s2.clone(), h2].concat())
    }

    /// Strand 1 as for `dot`; on strand 2 the factor order is reversed.
    pub fn cross(&self, other: &Share) -> Share {
        let (h1, h2) = other.shifted(self.n_chords() as Label);
        Share::from_raw([self.s1.clone(), h1].concat(), [h2, self.s2.clone()].concat())
    }

    /// The chord diagram `(self, other)`: closure of the dot product.
    pub fn join(&self, other: &Share) -> ChordDiagram {
        self.dot(other).closure()
    }

    /// Reverse the word of strand 1 (no sign).
    pub fn reverse_strand(&self) -> Share {
        Share::from_raw(self.s1.iter().rev().copied().collect(), self.s2.clone())
    }

    pub fn reverse_strand2(&self) -> Share {
        Share::from_raw(self.s1.clone(), self.s2.iter().rev().copied().collect())
    }

    /// Reverse both strand words at once.
    pub fn reversed(&self) -> Share {
        Share::from_raw(self.s1.iter().rev().copied().collect(), self.s2.iter().rev().copied().collect())
    }

    pub fn swap_strands(&self) -> Share {
        Share::from_raw(self.s2.clone(), self.s1.clone())
    }

    /// Add an arch on strand 1 enclosing the whole strand.
    pub fn add_enclosing_arch(&self) -> Share {
        let k = self.n_chords() as Label;
        let mut s1 = vec![k];
        s1.extend_from_slice(&self.s1);
        s1.push(k);
        Share::from_raw(s1, self.s2.clone())
    }
}

/// Intersection of two chords of a share given by their ends.
fn chords_cross(a: &[(u8, usize); 2], b: &[(u8, usize); 2]) -> bool {
    let bridge = |e: &[(u8, usize); 2]| e[0].0 != e[1].0;
    let inside = |arch: &[(u8, usize); 2], p: (u8, usize)| {
        p.0 == arch[0].0 && arch[0].1 < p.1 && p.1 < arch[1].1
    };
    match (bridge(a), bridge(b)) {
        (true, true) => (a[0].1 < b[0].1) != (a[1].1 < b[1].1),
        (false, true) => inside(a, b[0]) || inside(a, b[1]),
        (true, false) => inside(b, a[0]) || inside(b, a[1]),
        (false, false) => inside(a, b[0]) != inside(a, b[1]),
    }
}

impl FromStr for Share {
    type Err = Error;

    /// `"1 2 | 2 1"`; either side may be empty. Without `|` the whole word
    /// sits on strand 1.
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s.split_once('|').unwrap_or((s, ""));
        if b.contains('|') {
            return Err(Error::Parse("a share has exactly two strands".into()));
        }
        let w = validate_labels(&[parse_word(a)?, parse_word(b)?])?;
        let mut it = w.into_iter();
        Ok(Share::from_raw(it.next().unwrap(), it.next().unwrap()))
    }
}

impl fmt::Display for Share {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = format!("{} | {}", fmt_word(&self.s1), fmt_word(&self.s2));
        f.write_str(text.trim())
    }
}

impl fmt::Debug for Share {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Share({self})")
    }
}

/// Every perfect matching of `2n` points, as normalized words.
/// There are `(2n-1)!!` of them.
pub fn enumerate_pairings(n: usize) -> Vec<Vec<Label>> {
    fn rec(word: &mut Vec<Option<Label>>, next: Label, out: &mut Vec<Vec<Label>>) {
        let Some(first) = word.iter().position(Option::is_none) else {
            out.push(word.iter().map(|l| l.unwrap()).collect());
            return;
        };
        word[first] = Some(next);
        for j in first + 1..word.len() {
            if word[j].is_none() {
                word[j] = Some(next);
                rec(word, next + 1, out);
                word[j] = None;
            }
        }
        word[first] = None;
    }
    let mut out = Vec::new();
    rec(&mut vec![None; 2 * n], 0, &mut out);
    out
}

/// One representative per rotation class of `n`-chord diagrams, sorted.
pub fn enumerate_diagrams(n: usize, limit: usize) -> Result<Vec<ChordDiagram>> {
    if n > limit {
        return Err(Error::Budget(format!("enumeration of {n} chords exceeds limit {limit}")));
    }
    let set: BTreeSet<ChordDiagram> = enumerate_pairings(n)
        .into_iter()
        .map(|w| ChordDiagram::from_normalized(w).canonical())
        .collect();
    Ok(set.into_iter().collect())
}

/// Every share with `n` chords (all splits of all pairings), deduplicated.
pub fn enumerate_shares(n: usize, limit: usize) -> Result<Vec<Share>> {
    if n > limit {
        return Err(Error::Budget(format!("enumeration of {n} chords exceeds limit {limit}")));
    }
    let mut set = BTreeSet::new();
    for w in enumerate_pairings(n) {
        for cut in 0..=w.len() {
            set.insert(Share::from_raw(w[..cut].to_vec(), w[cut..].to_vec()));
        }
    }
    Ok(set.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn share(s: &str) -> Share {
        s.parse().unwrap()
    }

    fn diagram(s: &str) -> ChordDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn parsing() {
        assert_eq!(diagram("1 2 1 2").n_chords(), 2);
        assert_eq!(diagram("7 3 7 3").to_string(), "1 2 1 2");
        let s = share("1 2 3 | 2 3 1");
        assert!(s.is_arch_free());
        assert_eq!(s.n_chords(), 3);
        let s = share("1 1 2 | 2");
        assert_eq!(s.bridge_count(), 1);
        assert_eq!(share("1 2 1 2 |").to_string(), "1 2 1 2 |");
        assert_eq!(share("| 1 1").to_string(), "| 1 1");
        assert!("1 2 1".parse::<ChordDiagram>().is_err());
        assert!("1 2 | 2 | 1".parse::<Share>().is_err());
        assert!("1 x 1 x".parse::<ChordDiagram>().is_err());
    }

    #[test]
    fn intersection_graphs() {
        let g = diagram("1 2 1 3 2 3").intersection_graph();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(diagram("1 2 3 1 2 3").intersection_graph(), SimpleGraph::complete(3));
        let t = share("1 2 3 | 2 3 1").two_colored_graph();
        assert_eq!(t.graph.edges(), vec![(0, 1), (0, 2)]);
        assert!(t.colors.iter().all(|&c| c == Color::Black));
    }

    #[test]
    fn share_rules() {
        // arch around one bridge end
        let t = share("1 2 1 | 2").two_colored_graph();
        assert_eq!(t.colors, vec![Color::White, Color::Black]);
        assert_eq!(t.graph.edge_count(), 1);
        // alternating arches on strand 2
        assert_eq!(share("| 1 2 1 2").crossing_count(), 1);
        // nested arches
        assert_eq!(share("1 2 2 1 |").crossing_count(), 0);
    }

    #[test]
    fn products_and_closure() {
        let x = Share::x_pow(1);
        assert_eq!(x.dot(&x), Share::x_pow(2));
        assert_eq!(x.cross(&x), Share::y_pow(2));
        assert_eq!(x.join(&x).to_string(), "1 2 1 2");
        assert_eq!(share("1 2 | 2 1").closure().to_string(), "1 2 2 1");
        assert_eq!(share("1 2 | 1 2").reverse_strand(), share("1 2 | 2 1"));
    }

    #[test]
    fn closure_graph_is_reversed_share_graph() {
        for s in ["1 2 | 2 1", "1 2 3 | 2 3 1", "1 2 1 3 | 3 4 4 2", "1 2 | 3 1 2 3"] {
            let s = share(s);
            // keep labels in place so the two graphs share vertex names
            let rev = Share { s1: s.s1.iter().rev().copied().collect(), s2: s.s2.clone() };
            assert_eq!(s.closure().intersection_graph(), rev.two_colored_graph().graph);
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_pairings(3).len(), 15);
        let counts: Vec<usize> = (0..=5).map(|n| enumerate_diagrams(n, 8).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 18, 105]);
        assert!(matches!(enumerate_diagrams(9, 8), Err(Error::Budget(_))));
        // one chord: arch on either strand or a bridge
        assert_eq!(enumerate_shares(1, 8).unwrap().len(), 3);
    }

    #[test]
    fn canonical_is_rotation_invariant() {
        let d = diagram("1 2 1 3 2 3");
        for r in 0..6 {
            assert_eq!(d.rotated(r).canonical(), d.canonical());
        }
    }
}
