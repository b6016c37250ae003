//! Matching counts and the matching polynomial
//! `mu_G(x) = sum_j (-1)^j m_j x^(n - 2j)`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::{largest_root, max_abs_root, Polynomial};

/// Vertex subsets are `u128` bitmasks.
pub const MAX_VERTICES: usize = 128;

pub(crate) type VertexMask = u128;

pub(crate) fn check_vertex_count(g: &Graph) -> Result<()> {
    if g.n() > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n: g.n(),
            max: MAX_VERTICES,
        });
    }
    Ok(())
}

pub(crate) fn neighbor_masks(g: &Graph) -> Vec<VertexMask> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0, |m, &u| m | 1 << u))
        .collect()
}

/// `m_0, m_1, ...`: the number of `l`-matchings for each `l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingProfile {
    counts: Vec<u64>,
}

impl MatchingProfile {
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Size of a maximum matching.
    pub fn max_size(&self) -> usize {
        self.counts.len() - 1
    }
}

/// Exact matching counts by deletion recursion on induced subgraphs.
///
/// At each step the vertex `v` of highest degree in the residual subgraph
/// is eliminated by deleting its edges one at a time: a matching either
/// avoids all of them (`G - v`) or uses exactly one, `vu` (`G - v - u`).
/// Residual subgraphs are memoized by vertex set.
pub fn matching_counts(g: &Graph) -> Result<MatchingProfile> {
    check_vertex_count(g)?;
    let adj = neighbor_masks(g);
    let full: VertexMask = if g.n() == MAX_VERTICES {
        VertexMask::MAX
    } else {
        (1 << g.n()) - 1
    };
    let mut memo = HashMap::new();
    let counts = counts_on(full, &adj, &mut memo)?;
    Ok(MatchingProfile { counts })
}

fn counts_on(
    set: VertexMask,
    adj: &[VertexMask],
    memo: &mut HashMap<VertexMask, Vec<u64>>,
) -> Result<Vec<u64>> {
    if let Some(hit) = memo.get(&set) {
        return Ok(hit.clone());
    }
    let mut best: Option<(u32, usize)> = None;
    let mut rest = set;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let deg = (adj[v] & set).count_ones();
        if deg > 0 && best.is_none_or(|(d, _)| deg > d) {
            best = Some((deg, v));
        }
    }
    let Some((_, v)) = best else {
        return Ok(vec![1]);
    };
    let without_v = set & !(1 << v);
    let mut counts = counts_on(without_v, adj, memo)?;
    let mut nbrs = adj[v] & set;
    while nbrs != 0 {
        let u = nbrs.trailing_zeros() as usize;
        nbrs &= nbrs - 1;
        let sub = counts_on(without_v & !(1 << u), adj, memo)?;
        if counts.len() < sub.len() + 1 {
            counts.resize(sub.len() + 1, 0);
        }
        for (l, c) in sub.iter().enumerate() {
            counts[l + 1] = counts[l + 1]
                .checked_add(*c)
                .ok_or(Error::Overflow("matching counts"))?;
        }
    }
    memo.insert(set, counts.clone());
    Ok(counts)
}

/// `mu_G` as an exact integer polynomial of degree `n`.
pub fn matching_polynomial(g: &Graph) -> Result<Polynomial> {
    let profile = matching_counts(g)?;
    let n = g.n();
    let mut coeffs = vec![BigInt::from(0); n + 1];
    for (j, &m) in profile.counts().iter().enumerate() {
        let c = BigInt::from(m);
        coeffs[n - 2 * j] = if j % 2 == 0 { c } else { -c };
    }
    Ok(Polynomial::new(coeffs))
}

/// `rho(mu_G)`. The roots of `mu_G` are symmetric about 0, so the largest
/// root and the largest absolute root must coincide.
pub fn matching_radius(g: &Graph, tol: f64) -> Result<f64> {
    let mu = matching_polynomial(g)?;
    let by_abs = max_abs_root(&mu, tol)?;
    let top = largest_root(&mu, tol)?;
    if (by_abs - top).abs() > tol {
        return Err(Error::Invariant(format!(
            "matching polynomial roots not symmetric: rho {by_abs} vs largest {top}"
        )));
    }
    Ok(top)
}

/// For the matchings `M` of the given edge set, the signed count
/// `sum (-1)^|M|` grouped by covered vertex set. The empty matching
/// contributes `(0, 1)`. Ordered by mask.
pub(crate) fn signed_cover_weights(edges: &[(usize, usize)]) -> Result<Vec<(VertexMask, i64)>> {
    let mut table: BTreeMap<VertexMask, i64> = BTreeMap::from([(0, 1)]);
    for &(u, v) in edges {
        let uv: VertexMask = 1 << u | 1 << v;
        let additions: Vec<(VertexMask, i64)> = table
            .iter()
            .filter(|(mask, _)| *mask & uv == 0)
            .map(|(mask, c)| (mask | uv, -c))
            .collect();
        for (mask, c) in additions {
            let slot = table.entry(mask).or_insert(0);
            *slot = slot
                .checked_add(c)
                .ok_or(Error::Overflow("matching cover weights"))?;
        }
    }
    Ok(table.into_iter().filter(|&(_, c)| c != 0).collect())
}
