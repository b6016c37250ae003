//! Simple undirected graphs with a canonical edge order, and sign vectors
//! over that order.
//!
//! Edges are stored as `(u, v)` with `u < v`, sorted lexicographically. Edge
//! `i` of the canonical order is oriented by `signs[i]`: `+1` means the arc
//! runs from the smaller endpoint to the larger one.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Self> {
        Graph::new(r.n, r.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.n,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl Graph {
    /// Builds a graph, normalizing each edge to `(min, max)` and sorting.
    /// Self-loops, duplicates and out-of-range endpoints are rejected; the
    /// reported "line" is the 1-based position of the offending edge.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (idx, (a, b)) in edges.into_iter().enumerate() {
            let line = idx + 1;
            if a == b {
                return Err(Error::SelfLoop { line, vertex: a });
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if !seen.insert((u, v)) {
                return Err(Error::DuplicateEdge { line, u, v });
            }
        }
        let edges: Vec<(usize, usize)> = seen.into_iter().collect();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges,
            adjacency,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Position of edge `uv` in the canonical order.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&key).ok()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adjacency[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.m() + 1 == self.n
    }

    /// Breadth-first distances from `source`; unreachable vertices get `None`.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Largest finite distance between two vertices (per-component for
    /// disconnected graphs).
    pub fn diameter(&self) -> usize {
        (0..self.n)
            .flat_map(|s| self.distances_from(s).into_iter().flatten())
            .max()
            .unwrap_or(0)
    }

    /// Subgraph induced by `vertices`, relabelled `0..vertices.len()` in the
    /// given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        let mut relabel = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
            relabel[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| relabel[u] != usize::MAX && relabel[v] != usize::MAX)
            .map(|&(u, v)| (relabel[u], relabel[v]));
        Graph::new(vertices.len(), edges)
    }

    /// Renders the edge-list text format; `parse_edge_list` inverts it.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// Parses whitespace-separated `u v` lines. Lines whose first non-blank
/// character is `#` are comments; an optional `n <count>` line raises the
/// vertex count above `1 + max index`.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut header_n: Option<usize> = None;
    let mut pairs = Vec::new();
    let mut lines_of = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens[0] == "n" {
            if tokens.len() != 2 {
                return Err(Error::Parse {
                    line,
                    message: "header must be `n <count>`".into(),
                });
            }
            if header_n.is_some() {
                return Err(Error::Parse {
                    line,
                    message: "repeated `n` header".into(),
                });
            }
            header_n = Some(parse_index(tokens[1], line)?);
            continue;
        }
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected two vertex indices, found {} tokens", tokens.len()),
            });
        }
        let u = parse_index(tokens[0], line)?;
        let v = parse_index(tokens[1], line)?;
        pairs.push((u, v));
        lines_of.push(line);
    }

    let implied = pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let n = match header_n {
        Some(h) if h < implied => {
            return Err(Error::Parse {
                line: 0,
                message: format!("header declares n={h} but vertex {} appears", implied - 1),
            })
        }
        Some(h) => h,
        None => implied,
    };
    if n == 0 {
        return Err(Error::Parse {
            line: 0,
            message: "graph has no vertices".into(),
        });
    }

    // Map positional errors from Graph::new back to source lines.
    Graph::new(n, pairs).map_err(|e| match e {
        Error::SelfLoop { line, vertex } => Error::SelfLoop {
            line: lines_of[line - 1],
            vertex,
        },
        Error::DuplicateEdge { line, u, v } => Error::DuplicateEdge {
            line: lines_of[line - 1],
            u,
            v,
        },
        other => other,
    })
}

fn parse_index(token: &str, line: usize) -> Result<usize> {
    token.parse::<usize>().map_err(|_| Error::Parse {
        line,
        message: format!("`{token}` is not a non-negative integer"),
    })
}

fn check_sign(s: i8) -> Result<i8> {
    match s {
        1 | -1 => Ok(s),
        other => Err(Error::InvalidSign(other as i64)),
    }
}

/// One sign per canonical edge; `signs[i] = sigma(u_i, v_i)` with `u_i < v_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Orientation {
    signs: Vec<i8>,
}

impl Orientation {
    pub fn new(g: &Graph, signs: Vec<i8>) -> Result<Self> {
        if signs.len() != g.m() {
            return Err(Error::SignLength {
                expected: g.m(),
                got: signs.len(),
            });
        }
        for &s in &signs {
            check_sign(s)?;
        }
        Ok(Orientation { signs })
    }

    pub fn all_positive(g: &Graph) -> Self {
        Orientation {
            signs: vec![1; g.m()],
        }
    }

    /// Orientation number `index` in the enumeration of all `2^m`: bit `i`
    /// set means edge `i` gets sign `-1`.
    pub fn from_index(g: &Graph, index: u64) -> Self {
        let signs = (0..g.m())
            .map(|i| if index >> i & 1 == 1 { -1 } else { 1 })
            .collect();
        Orientation { signs }
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// Every arc reversed.
    pub fn reversed(&self) -> Self {
        Orientation {
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }

    /// The skew-symmetric map: `+-1` on edges, `0` elsewhere.
    pub fn sigma(&self, g: &Graph, u: usize, v: usize) -> i8 {
        match g.edge_index(u, v) {
            Some(i) if u < v => self.signs[i],
            Some(i) => -self.signs[i],
            None => 0,
        }
    }

    /// Validates that this orientation fits `g` (deserialized values have
    /// not been checked yet).
    pub fn check(&self, g: &Graph) -> Result<()> {
        if self.signs.len() != g.m() {
            return Err(Error::SignLength {
                expected: g.m(),
                got: self.signs.len(),
            });
        }
        self.signs
            .iter()
            .try_for_each(|&s| check_sign(s).map(|_| ()))
    }
}

impl From<Orientation> for PartialAssignment {
    fn from(o: Orientation) -> Self {
        PartialAssignment { prefix: o.signs }
    }
}

/// Signs of the first `k` canonical edges; the rest are undecided.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartialAssignment {
    prefix: Vec<i8>,
}

impl PartialAssignment {
    pub fn empty() -> Self {
        PartialAssignment { prefix: Vec::new() }
    }

    pub fn new(g: &Graph, prefix: Vec<i8>) -> Result<Self> {
        if prefix.len() > g.m() {
            return Err(Error::SignLength {
                expected: g.m(),
                got: prefix.len(),
            });
        }
        for &s in &prefix {
            check_sign(s)?;
        }
        Ok(PartialAssignment { prefix })
    }

    pub fn prefix(&self) -> &[i8] {
        &self.prefix
    }

    pub fn depth(&self) -> usize {
        self.prefix.len()
    }

    /// A copy extended by one more sign.
    pub fn child(&self, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        let mut prefix = self.prefix.clone();
        prefix.push(sign);
        PartialAssignment { prefix }
    }

    pub fn check(&self, g: &Graph) -> Result<()> {
        if self.prefix.len() > g.m() {
            return Err(Error::SignLength {
                expected: g.m(),
                got: self.prefix.len(),
            });
        }
        self.prefix
            .iter()
            .try_for_each(|&s| check_sign(s).map(|_| ()))
    }

    /// Converts a full-length assignment into an orientation.
    pub fn into_orientation(self, g: &Graph) -> Result<Orientation> {
        Orientation::new(g, self.prefix)
    }
}

/// Flips the sign of every edge with exactly one endpoint in `set`.
pub fn switch(g: &Graph, o: &Orientation, set: &[usize]) -> Result<Orientation> {
    o.check(g)?;
    let mut inside = vec![false; g.n()];
    for &v in set {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: g.n(),
            });
        }
        inside[v] = true;
    }
    let signs = g
        .edges()
        .iter()
        .zip(o.signs())
        .map(|(&(u, v), &s)| if inside[u] != inside[v] { -s } else { s })
        .collect();
    Ok(Orientation { signs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_sorts_edges() {
        let g = parse_edge_list("0 1\n1 2\n0 2").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn parse_single_edge() {
        let g = parse_edge_list("0 1").unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
    }

    #[test]
    fn parse_rejects_self_loop_with_line() {
        assert_eq!(
            parse_edge_list("# c\n0 1\n0 0").unwrap_err(),
            Error::SelfLoop { line: 3, vertex: 0 }
        );
    }

    #[test]
    fn parse_rejects_duplicate_either_direction() {
        let err = parse_edge_list("0 1\n1 0").unwrap_err();
        assert_eq!(
            err,
            Error::DuplicateEdge {
                line: 2,
                u: 0,
                v: 1
            }
        );
    }

    #[test]
    fn parse_rejects_bad_tokens() {
        assert!(matches!(
            parse_edge_list("0 x"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(parse_edge_list("0 -1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("0 1 2"), Err(Error::Parse { .. })));
    }

    #[test]
    fn header_raises_vertex_count() {
        let g = parse_edge_list("n 5\n0 1\n").unwrap();
        assert_eq!(g.n(), 5);
        let g = parse_edge_list("n 3\n").unwrap();
        assert_eq!((g.n(), g.m()), (3, 0));
        assert!(parse_edge_list("n 1\n0 1").is_err());
    }

    #[test]
    fn components_examples() {
        let k3 = parse_edge_list("0 1\n1 2\n0 2").unwrap();
        assert_eq!(k3.components(), vec![vec![0, 1, 2]]);
        let two = parse_edge_list("0 1\n2 3").unwrap();
        assert_eq!(two.components(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(Graph::empty(1).components(), vec![vec![0]]);
    }

    #[test]
    fn switch_examples() {
        let k3 = parse_edge_list("0 1\n1 2\n0 2").unwrap();
        let o = Orientation::new(&k3, vec![1, 1, -1]).unwrap();
        let s = switch(&k3, &o, &[0]).unwrap();
        assert_eq!(s.signs(), &[-1, -1, -1]);
        assert_eq!(switch(&k3, &o, &[]).unwrap(), o);
        assert_eq!(switch(&k3, &o, &[0, 1, 2]).unwrap(), o);
        assert!(matches!(
            switch(&k3, &o, &[3]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn sigma_is_skew_symmetric() {
        let k3 = parse_edge_list("0 1\n1 2\n0 2").unwrap();
        let o = Orientation::new(&k3, vec![1, -1, 1]).unwrap();
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(o.sigma(&k3, u, v), -o.sigma(&k3, v, u));
            }
            assert_eq!(o.sigma(&k3, u, u), 0);
        }
        assert_eq!(o.sigma(&k3, 0, 2), -1);
        assert_eq!(o.sigma(&k3, 2, 0), 1);
    }

    #[test]
    fn orientation_rejects_bad_input() {
        let k2 = parse_edge_list("0 1").unwrap();
        assert!(Orientation::new(&k2, vec![1, 1]).is_err());
        assert_eq!(Orientation::new(&k2, vec![0]), Err(Error::InvalidSign(0)));
        assert!(PartialAssignment::new(&k2, vec![1, -1]).is_err());
    }

    #[test]
    fn json_shapes() {
        let g = parse_edge_list("1 0\n1 2").unwrap();
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
        let back: Graph = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[1,1]]}"#).is_err());
        let o = Orientation::new(&g, vec![1, -1]).unwrap();
        assert_eq!(serde_json::to_string(&o).unwrap(), r#"{"signs":[1,-1]}"#);
    }

    #[test]
    fn tree_and_diameter() {
        let p4 = parse_edge_list("0 1\n1 2\n2 3").unwrap();
        assert!(p4.is_tree());
        assert_eq!(p4.diameter(), 3);
        let c4 = parse_edge_list("0 1\n1 2\n2 3\n0 3").unwrap();
        assert!(!c4.is_tree());
        assert_eq!(c4.diameter(), 2);
    }
}
