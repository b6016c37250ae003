//! Finite truncations of the universal cover and lower bounds on its
//! spectral radius.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::matching_radius;

/// Largest truncation built before giving up.
pub const NODE_CAP: usize = 2_000_000;

/// Tree of non-backtracking walks from `root` of length at most `depth`.
/// Node 0 is the empty walk; every other node stores the last vertex of its
/// walk and the index of the walk one step shorter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverTree {
    root: usize,
    depth: usize,
    vertex: Vec<usize>,
    parent: Vec<usize>,
}

impl CoverTree {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.vertex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex.is_empty()
    }

    /// The vertex of `G` a node projects to.
    pub fn vertex(&self, node: usize) -> usize {
        self.vertex[node]
    }

    /// `None` for the root.
    pub fn parent(&self, node: usize) -> Option<usize> {
        (node > 0).then(|| self.parent[node])
    }

    /// The truncation as a graph on its nodes.
    pub fn to_graph(&self) -> Result<Graph> {
        Graph::new(self.len(), (1..self.len()).map(|v| (self.parent[v], v)))
    }

    /// `||A x|| / ||x||` for the tree adjacency `A`, iterated from the
    /// all-ones vector. Each estimate is a lower bound on the spectral
    /// radius (it is the square root of a Rayleigh quotient of `A^2`), and
    /// the sequence is non-decreasing.
    fn power_radius(&self, tol: f64, max_iter: usize) -> f64 {
        let len = self.len();
        if len < 2 {
            return 0.0;
        }
        let mut x = vec![1.0 / (len as f64).sqrt(); len];
        let mut y = vec![0.0; len];
        let mut est: f64 = 0.0;
        for _ in 0..max_iter.max(1) {
            y.iter_mut().for_each(|v| *v = 0.0);
            for v in 1..len {
                let p = self.parent[v];
                y[v] += x[p];
                y[p] += x[v];
            }
            let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
            let prev = est;
            est = est.max(norm);
            for (xi, yi) in x.iter_mut().zip(&y) {
                *xi = yi / norm;
            }
            if (est - prev).abs() <= tol / 10.0 * est.max(1.0) {
                break;
            }
        }
        est
    }
}

pub fn truncated_cover(g: &Graph, root: usize, depth: usize) -> Result<CoverTree> {
    if root >= g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: root,
            n: g.n(),
        });
    }
    let mut vertex = vec![root];
    let mut parent = vec![0];
    let mut level_start = 0;
    for _ in 0..depth {
        let level_end = vertex.len();
        for node in level_start..level_end {
            let here = vertex[node];
            let back = (node > 0).then(|| vertex[parent[node]]);
            for &w in g.neighbors(here) {
                if Some(w) == back {
                    continue;
                }
                if vertex.len() >= NODE_CAP {
                    return Err(Error::NodeCap { cap: NODE_CAP });
                }
                vertex.push(w);
                parent.push(node);
            }
        }
        if vertex.len() == level_end {
            break;
        }
        level_start = level_end;
    }
    Ok(CoverTree {
        root,
        depth,
        vertex,
        parent,
    })
}

/// Largest radius estimate over all roots at exactly this depth.
fn radius_at_depth(g: &Graph, depth: usize, tol: f64) -> Result<f64> {
    let max_iter = 10 * depth.max(1) * g.n();
    let per_root: Vec<f64> = (0..g.n())
        .into_par_iter()
        .map(|root| Ok(truncated_cover(g, root, depth)?.power_radius(tol, max_iter)))
        .collect::<Result<_>>()?;
    Ok(per_root.into_iter().fold(0.0, f64::max))
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

/// Lower bounds on `rho(U_G)` for depths `0..=max_depth`. Each entry is the
/// running maximum of the per-depth estimates, so the list is
/// non-decreasing; every entry is still a lower bound because the
/// truncation at depth `d` is a subtree of the one at `d + 1`.
pub fn cover_radius_profile(g: &Graph, max_depth: usize, tol: f64) -> Result<Vec<f64>> {
    check_tol(tol)?;
    let mut out: Vec<f64> = Vec::with_capacity(max_depth + 1);
    for d in 0..=max_depth {
        let raw = radius_at_depth(g, d, tol)?;
        out.push(out.last().map_or(raw, |&best| best.max(raw)));
    }
    Ok(out)
}

/// `max` over roots of the spectral radius of the depth-`depth` truncation.
pub fn cover_radius_lower(g: &Graph, depth: usize, tol: f64) -> Result<f64> {
    Ok(*cover_radius_profile(g, depth, tol)?
        .last()
        .expect("profile has depth + 1 entries"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GapStatus {
    Equality,
    Strict,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapCertificate {
    pub status: GapStatus,
    /// Depth at which `value` was obtained.
    pub depth: usize,
    /// Cover lower bound at `depth`.
    pub value: f64,
    pub rho_mu: f64,
}

/// For a forest, the cover is the graph itself and the bound is evaluated
/// at the diameter. Otherwise searches for the smallest depth whose cover
/// bound exceeds `rho(mu_G) + tol`.
pub fn certify_gap(g: &Graph, tol: f64, max_depth: usize) -> Result<GapCertificate> {
    check_tol(tol)?;
    let rho_mu = matching_radius(g, tol)?;
    let acyclic = g.m() + g.components().len() == g.n();
    if acyclic {
        let depth = g.diameter();
        let value = cover_radius_lower(g, depth, tol)?;
        let status = if (value - rho_mu).abs() <= tol {
            GapStatus::Equality
        } else {
            GapStatus::Inconclusive
        };
        return Ok(GapCertificate {
            status,
            depth,
            value,
            rho_mu,
        });
    }
    let mut best: f64 = 0.0;
    for d in 0..=max_depth {
        best = best.max(radius_at_depth(g, d, tol)?);
        if best > rho_mu + tol {
            return Ok(GapCertificate {
                status: GapStatus::Strict,
                depth: d,
                value: best,
                rho_mu,
            });
        }
    }
    Ok(GapCertificate {
        status: GapStatus::Inconclusive,
        depth: max_depth,
        value: best,
        rho_mu,
    })
}
