//! Conditional expectations of `det(xI - H)` over the completions of a
//! partial assignment.
//!
//! Two independent routes: [`expected_charpoly_brute`] averages every
//! completion, while [`expected_charpoly_fast`] uses the mixed expansion
//!
//! ```text
//! E det(xI - H) = sum_M (-1)^|M| det(xI - H_dec[V \ V(M)])
//! ```
//!
//! over matchings `M` of undecided edges, with `H_dec` carrying only the
//! decided edges. Undecided entries have mean zero, so a permutation term
//! survives only if it uses each undecided edge as a transposition.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, PartialAssignment};
use crate::matching::{check_vertex_count, signed_cover_weights, VertexMask};
use crate::poly::Polynomial;
use crate::spectral::{berkowitz, GaussianInt, GaussianMatrix};

/// Default cap on undecided edges for exhaustive enumeration.
pub const DEFAULT_BRUTE_CAP: usize = 20;

/// Coefficients (constant first) as `i128`, for cheap exact accumulation.
pub(crate) type Coeffs = Vec<i128>;

const SUM_OVERFLOW: Error = Error::Overflow("polynomial accumulation");

pub(crate) fn add_scaled(acc: &mut Coeffs, p: &[i128], scale: i128) -> Result<()> {
    if acc.len() < p.len() {
        acc.resize(p.len(), 0);
    }
    for (a, c) in acc.iter_mut().zip(p) {
        let term = c.checked_mul(scale).ok_or(SUM_OVERFLOW)?;
        *a = a.checked_add(term).ok_or(SUM_OVERFLOW)?;
    }
    Ok(())
}

pub(crate) fn to_polynomial(c: &[i128]) -> Polynomial {
    Polynomial::new(c.iter().map(|&x| BigInt::from(x)).collect())
}

/// Exact division of every coefficient by `2^shift`.
pub(crate) fn div_pow2(c: &[i128], shift: usize) -> Result<Coeffs> {
    let mask = (1i128 << shift) - 1;
    c.iter()
        .map(|&x| {
            if x & mask != 0 {
                Err(Error::Invariant(format!(
                    "coefficient {x} is not divisible by 2^{shift}"
                )))
            } else {
                Ok(x >> shift)
            }
        })
        .collect()
}

/// Real coefficients of `det(xI - M)`, constant first.
pub(crate) fn real_char_coeffs(m: &[GaussianInt], n: usize) -> Result<Coeffs> {
    let high_first = berkowitz(m, n)?;
    high_first
        .iter()
        .rev()
        .enumerate()
        .map(|(k, z)| {
            if z.im != 0 {
                Err(Error::Invariant(format!(
                    "coefficient of x^{k} has imaginary part {}",
                    z.im
                )))
            } else {
                Ok(z.re)
            }
        })
        .collect()
}

/// Row-major Hermitian matrix of the first `signs.len()` canonical edges.
fn decided_matrix(g: &Graph, signs: &[i8]) -> Vec<GaussianInt> {
    let n = g.n();
    let mut m = vec![GaussianInt::ZERO; n * n];
    for (&(u, v), &s) in g.edges().iter().zip(signs) {
        let s = s as i128;
        m[u * n + v] = GaussianInt::new(0, s);
        m[v * n + u] = GaussianInt::new(0, -s);
    }
    m
}

/// Exact characteristic polynomial of the orientation with these signs.
pub(crate) fn char_coeffs_of_signs(g: &Graph, signs: &[i8]) -> Result<Coeffs> {
    real_char_coeffs(&decided_matrix(g, signs), g.n())
}

/// Average of `det(xI - H)` over all completions of `pa`.
pub fn expected_charpoly_brute(g: &Graph, pa: &PartialAssignment) -> Result<Polynomial> {
    expected_charpoly_brute_capped(g, pa, DEFAULT_BRUTE_CAP)
}

pub fn expected_charpoly_brute_capped(
    g: &Graph,
    pa: &PartialAssignment,
    cap: usize,
) -> Result<Polynomial> {
    pa.check(g)?;
    let k = pa.depth();
    let free = g.m() - k;
    if free > cap || free >= 63 {
        return Err(Error::BruteForceCap { edges: free, cap });
    }
    let total = (0u64..1 << free)
        .into_par_iter()
        .map(|bits| {
            let mut signs = pa.prefix().to_vec();
            signs.extend((0..free).map(|i| if bits >> i & 1 == 1 { -1i8 } else { 1 }));
            char_coeffs_of_signs(g, &signs)
        })
        .try_reduce(Vec::new, |mut a, b| {
            add_scaled(&mut a, &b, 1)?;
            Ok(a)
        })?;
    Ok(to_polynomial(&div_pow2(&total, free)?))
}

/// Mixed-expansion evaluator. The signed matching weights depend only on
/// which edges are undecided, so they are computed once per depth and
/// shared by every assignment of that depth.
pub(crate) struct MixedExpansion<'g> {
    graph: &'g Graph,
    depth: usize,
    weights: Vec<(VertexMask, i64)>,
}

impl<'g> MixedExpansion<'g> {
    pub(crate) fn new(graph: &'g Graph, depth: usize) -> Result<Self> {
        check_vertex_count(graph)?;
        let weights = signed_cover_weights(&graph.edges()[depth..])?;
        Ok(MixedExpansion {
            graph,
            depth,
            weights,
        })
    }

    /// Conditional expectation for a prefix of length `depth`.
    pub(crate) fn evaluate(&self, prefix: &[i8]) -> Result<Coeffs> {
        debug_assert_eq!(prefix.len(), self.depth);
        let n = self.graph.n();
        let full = decided_matrix(self.graph, prefix);
        let mut acc: Coeffs = Vec::new();
        let mut sub = Vec::with_capacity(n * n);
        for &(covered, weight) in &self.weights {
            let keep: Vec<usize> = (0..n).filter(|&v| covered >> v & 1 == 0).collect();
            sub.clear();
            for &i in &keep {
                sub.extend(keep.iter().map(|&j| full[i * n + j]));
            }
            let det = real_char_coeffs(&sub, keep.len())?;
            add_scaled(&mut acc, &det, weight as i128)?;
        }
        Ok(acc)
    }
}

/// Average of `det(xI - H)` over all completions of `pa`, by the mixed
/// expansion. Validated against [`expected_charpoly_brute`] in the tests.
pub fn expected_charpoly_fast(g: &Graph, pa: &PartialAssignment) -> Result<Polynomial> {
    pa.check(g)?;
    let coeffs = MixedExpansion::new(g, pa.depth())?.evaluate(pa.prefix())?;
    Ok(to_polynomial(&coeffs))
}

/// `det(xI - H)` for a matrix given as a [`GaussianMatrix`]; shared by the
/// witness check.
pub(crate) fn gaussian_char_coeffs(m: &GaussianMatrix) -> Result<Coeffs> {
    real_char_coeffs(m.entries(), m.n())
}
