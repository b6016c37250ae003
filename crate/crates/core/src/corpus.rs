//! Small graphs up to isomorphism, for exhaustive checks.
//!
//! Connected graphs are grown one vertex at a time: every connected graph
//! on `n` vertices has a vertex whose removal leaves it connected, so
//! attaching a new vertex to every nonempty subset of every connected graph
//! on `n - 1` vertices reaches all of them. Trees are grown by attaching
//! leaves. Duplicates are removed through a canonical form.

use std::collections::BTreeSet;

use crate::graph::Graph;

/// Largest `n` supported by the canonical form (upper triangle fits `u64`).
pub const MAX_CANONICAL_VERTICES: usize = 11;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusGraph {
    pub name: String,
    pub graph: Graph,
}

type Adj = Vec<u16>;

fn adjacency(g: &Graph) -> Adj {
    let mut adj = vec![0u16; g.n()];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

fn code_under(adj: &Adj, perm: &[usize]) -> u64 {
    // perm[new] = old
    let n = perm.len();
    let mut code = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            code = code << 1 | u64::from(adj[perm[i]] >> perm[j] & 1);
        }
    }
    code
}

/// Vertex classes refined by degree, then repeatedly by the multiset of
/// neighbouring classes. Any isomorphism maps classes onto classes.
fn refined_classes(adj: &Adj) -> Vec<usize> {
    let n = adj.len();
    let mut class: Vec<usize> = adj.iter().map(|a| a.count_ones() as usize).collect();
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n)
                    .filter(|&u| adj[v] >> u & 1 == 1)
                    .map(|u| class[u])
                    .collect();
                nb.sort_unstable();
                (class[v], nb)
            })
            .collect();
        let distinct: BTreeSet<&(usize, Vec<usize>)> = signatures.iter().collect();
        let ranked: Vec<&(usize, Vec<usize>)> = distinct.into_iter().collect();
        let next: Vec<usize> = signatures
            .iter()
            .map(|s| ranked.binary_search(&s).expect("present"))
            .collect();
        let before = class.iter().collect::<BTreeSet<_>>().len();
        if ranked.len() == before {
            return next;
        }
        class = next;
    }
}

/// Largest adjacency code over all relabellings that list the refined
/// classes in increasing order.
fn canonical_code(adj: &Adj) -> u64 {
    let n = adj.len();
    let class = refined_classes(adj);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| class[v]);
    for v in order {
        match cells.last_mut() {
            Some(c) if class[c[0]] == class[v] => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best = 0u64;
    let mut perm = Vec::with_capacity(n);
    search(adj, &cells, 0, &mut perm, &mut vec![false; n], &mut best);
    best
}

fn search(
    adj: &Adj,
    cells: &[Vec<usize>],
    cell: usize,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
    best: &mut u64,
) {
    if cell == cells.len() {
        *best = (*best).max(code_under(adj, perm));
        return;
    }
    let members = &cells[cell];
    let remaining: Vec<usize> = members.iter().copied().filter(|&v| !used[v]).collect();
    if remaining.is_empty() {
        search(adj, cells, cell + 1, perm, used, best);
        return;
    }
    for v in remaining {
        used[v] = true;
        perm.push(v);
        search(adj, cells, cell, perm, used, best);
        perm.pop();
        used[v] = false;
    }
}

fn from_adj(adj: &Adj) -> Graph {
    let n = adj.len();
    let edges = (0..n).flat_map(|u| {
        (u + 1..n)
            .filter(move |&v| adj[u] >> v & 1 == 1)
            .map(move |v| (u, v))
    });
    Graph::new(n, edges).expect("adjacency is simple")
}

/// Canonical form of `g` as a graph (`n <= 11`).
pub fn canonical_graph(g: &Graph) -> Graph {
    let n = g.n();
    assert!(n <= MAX_CANONICAL_VERTICES, "canonical form needs n <= 11");
    let code = canonical_code(&adjacency(g));
    let mut adj = vec![0u16; n];
    let mut bit = n * n.saturating_sub(1) / 2;
    for i in 0..n {
        for j in i + 1..n {
            bit -= 1;
            if code >> bit & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    from_adj(&adj)
}

/// Whether `g` and `h` are isomorphic (`n <= 11`).
pub fn isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n()
        && g.m() == h.m()
        && canonical_code(&adjacency(g)) == canonical_code(&adjacency(h))
}

fn grow(seeds: &[Adj], subsets: impl Fn(usize) -> Vec<u16>) -> Vec<Adj> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for adj in seeds {
        let n = adj.len();
        for s in subsets(n) {
            let mut next = adj.clone();
            next.push(s);
            for (v, a) in next.iter_mut().enumerate().take(n) {
                if s >> v & 1 == 1 {
                    *a |= 1 << n;
                }
            }
            if seen.insert(canonical_code(&next)) {
                out.push(next);
            }
        }
    }
    out.sort_by_key(|a| {
        (
            a.iter().map(|x| x.count_ones()).sum::<u32>(),
            canonical_code(a),
        )
    });
    out
}

/// Connected graphs on exactly `n` vertices up to isomorphism, ordered by
/// edge count.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=MAX_CANONICAL_VERTICES).contains(&n));
    let mut level: Vec<Adj> = vec![vec![0]];
    for _ in 1..n {
        level = grow(&level, |k| (1..1u16 << k).collect());
    }
    level.iter().map(from_adj).collect()
}

/// Trees on exactly `n` vertices up to isomorphism.
pub fn trees(n: usize) -> Vec<Graph> {
    assert!((1..=MAX_CANONICAL_VERTICES).contains(&n));
    let mut level: Vec<Adj> = vec![vec![0]];
    for _ in 1..n {
        level = grow(&level, |k| (0..k).map(|v| 1u16 << v).collect());
    }
    level.iter().map(from_adj).collect()
}

fn named(name: &str, n: usize, edges: &[(usize, usize)]) -> CorpusGraph {
    CorpusGraph {
        name: name.to_string(),
        graph: Graph::new(n, edges.iter().copied()).expect("valid named graph"),
    }
}

fn cycle(n: usize) -> Vec<(usize, usize)> {
    (0..n).map(|i| (i, (i + 1) % n)).collect()
}

pub fn petersen() -> Graph {
    let mut edges = cycle(5);
    edges.extend((0..5).map(|i| (i, i + 5)));
    edges.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
    Graph::new(10, edges).expect("valid Petersen graph")
}

/// `K_3, C_4, C_5, C_6, K_4, K_{3,3}` and the Petersen graph.
pub fn named_graphs() -> Vec<CorpusGraph> {
    let k4: Vec<_> = (0..4)
        .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
        .collect();
    let k33: Vec<_> = (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect();
    vec![
        named("K3", 3, &cycle(3)),
        named("C4", 4, &cycle(4)),
        named("C5", 5, &cycle(5)),
        named("C6", 6, &cycle(6)),
        named("K4", 4, &k4),
        named("K3,3", 6, &k33),
        CorpusGraph {
            name: "Petersen".into(),
            graph: petersen(),
        },
    ]
}

/// The named graphs, every connected graph with at most `max_connected`
/// vertices and every tree with at most `max_tree` vertices, each
/// isomorphism class once. Named graphs keep their names and labelling.
pub fn corpus(max_connected: usize, max_tree: usize) -> Vec<CorpusGraph> {
    let mut out = named_graphs();
    let mut seen: BTreeSet<(usize, u64)> = out
        .iter()
        .filter(|c| c.graph.n() <= max_connected.max(max_tree))
        .map(|c| (c.graph.n(), canonical_code(&adjacency(&c.graph))))
        .collect();
    let mut push = |prefix: &str, n: usize, i: usize, g: Graph, out: &mut Vec<CorpusGraph>| {
        if seen.insert((n, canonical_code(&adjacency(&g)))) {
            out.push(CorpusGraph {
                name: format!("{prefix}{n}-{i}"),
                graph: g,
            });
        }
    };
    for n in 1..=max_connected {
        for (i, g) in connected_graphs(n).into_iter().enumerate() {
            push("conn", n, i, g, &mut out);
        }
    }
    for n in 1..=max_tree {
        for (i, g) in trees(n).into_iter().enumerate() {
            push("tree", n, i, g, &mut out);
        }
    }
    out
}

/// The corpus used by the acceptance checks: connected graphs to 7
/// vertices, trees to 9, and the named graphs.
pub fn standard_corpus() -> Vec<CorpusGraph> {
    corpus(7, 9)
}
