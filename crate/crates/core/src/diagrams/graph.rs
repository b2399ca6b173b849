use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest vertex count a [`SimpleGraph`] can hold (one `u32` row per vertex).
pub const MAX_VERTICES: usize = 32;

/// Simple undirected graph on vertices `0..n`, adjacency stored as bit rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<u32>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices");
        SimpleGraph { n, adj: vec![0; n] }
    }

    /// Builds a graph from 0-based edges. Loops are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidInput(format!("at most {MAX_VERTICES} vertices")));
        }
        let mut g = SimpleGraph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!("edge {}-{} out of range", u + 1, v + 1)));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("loop at vertex {}", u + 1)));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = SimpleGraph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = SimpleGraph::empty(n);
        for u in 0..n {
            g.add_edge(u, (u + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = SimpleGraph::empty(n);
        for u in 1..n {
            g.add_edge(u - 1, u);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    pub fn toggle_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u] ^= 1 << v;
        self.adj[v] ^= 1 << u;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Neighbourhood of `v` as a bit set.
    pub fn row(&self, v: usize) -> u32 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let full = if self.n == 32 { u32::MAX } else { (1u32 << self.n) - 1 };
        let mut seen = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == full
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.edge_count() == self.n - 1 && self.is_connected()
    }

    /// Relabel: vertex `v` of `self` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Subgraph induced on `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> SimpleGraph {
        let mut g = SimpleGraph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn to_json(&self) -> serde_json::Value {
        let edges: Vec<[usize; 2]> = self.edges().into_iter().map(|(u, v)| [u + 1, v + 1]).collect();
        serde_json::json!({"n": self.n, "edges": edges})
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let n = v
            .get("n")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::Parse("graph JSON needs \"n\"".into()))? as usize;
        let mut edges = Vec::new();
        for e in v.get("edges").and_then(|x| x.as_array()).into_iter().flatten() {
            let pair = e
                .as_array()
                .filter(|a| a.len() == 2)
                .and_then(|a| Some((a[0].as_u64()?, a[1].as_u64()?)))
                .ok_or_else(|| Error::Parse(format!("bad edge {e}")))?;
            if pair.0 == 0 || pair.1 == 0 {
                return Err(Error::Parse("vertices are 1-based".into()));
            }
            edges.push((pair.0 as usize - 1, pair.1 as usize - 1));
        }
        SimpleGraph::from_edges(n, &edges)
    }

    /// Accepts either the `"n: u-v,..."` text form or the JSON mirror.
    pub fn parse_any(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('{') {
            let v: serde_json::Value =
                serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
            SimpleGraph::from_json(&v)
        } else {
            t.parse()
        }
    }
}

impl FromStr for SimpleGraph {
    type Err = Error;

    /// `"5: 1-2,1-3,2-3"`, vertices 1-based.
    fn from_str(s: &str) -> Result<Self> {
        let (n, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("graph text needs \"n: edges\", got {s:?}")))?;
        let n: usize = n.trim().parse().map_err(|_| Error::Parse(format!("bad vertex count {n:?}")))?;
        let mut edges = Vec::new();
        for tok in rest.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (u, v) = tok
                .split_once('-')
                .ok_or_else(|| Error::Parse(format!("bad edge {tok:?}")))?;
            let parse = |x: &str| -> Result<usize> {
                let k: usize = x.trim().parse().map_err(|_| Error::Parse(format!("bad vertex {x:?}")))?;
                if k == 0 {
                    return Err(Error::Parse("vertices are 1-based".into()));
                }
                Ok(k - 1)
            };
            edges.push((parse(u)?, parse(v)?));
        }
        SimpleGraph::from_edges(n, &edges)
    }
}

impl fmt::Display for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().iter().map(|(u, v)| format!("{}-{}", u + 1, v + 1)).collect();
        write!(f, "{}: {}", self.n, edges.join(","))
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph({self})")
    }
}

/// Vertex colour of a share's intersection graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    /// An arch: both ends on one strand.
    White,
    /// A bridge: one end on each strand.
    Black,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoColoredGraph {
    pub graph: SimpleGraph,
    pub colors: Vec<Color>,
}

impl TwoColoredGraph {
    pub fn black_vertices(&self) -> Vec<usize> {
        (0..self.graph.n()).filter(|&v| self.colors[v] == Color::Black).collect()
    }

    pub fn forget_colors(&self) -> SimpleGraph {
        self.graph.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_agree() {
        let g: SimpleGraph = "5: 1-2,1-3,2-3,2-4,3-5".parse().unwrap();
        assert_eq!(g.edge_count(), 5);
        let j = g.to_json();
        assert_eq!(j.to_string(), r#"{"n":5,"edges":[[1,2],[1,3],[2,3],[2,4],[3,5]]}"#);
        assert_eq!(SimpleGraph::parse_any(&j.to_string()).unwrap(), g);
        assert_eq!(g.to_string(), "5: 1-2,1-3,2-3,2-4,3-5");
    }

    #[test]
    fn rejects_bad_input() {
        assert!("3: 1-1".parse::<SimpleGraph>().is_err());
        assert!("3: 1-4".parse::<SimpleGraph>().is_err());
        assert!("3: 0-1".parse::<SimpleGraph>().is_err());
        assert!("1-2".parse::<SimpleGraph>().is_err());
    }

    #[test]
    fn trees_and_connectivity() {
        assert!(SimpleGraph::path(4).is_tree());
        assert!(!SimpleGraph::cycle(4).is_tree());
        assert!(!SimpleGraph::empty(2).is_connected());
        assert!(SimpleGraph::empty(1).is_tree());
    }
}
