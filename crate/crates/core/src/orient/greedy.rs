//! Greedy walks down the assignment tree.

use serde::{Deserialize, Serialize};

use super::expect::{to_polynomial, MixedExpansion};
use crate::error::{Error, Result};
use crate::graph::{Graph, Orientation};
use crate::poly::{largest_root, Polynomial};
use crate::spectral::{eigenvalues, hermitian_matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Min,
    Max,
}

/// One decision: the largest roots of both children and the sign taken.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GreedyStep {
    pub root_plus: f64,
    pub root_minus: f64,
    pub chosen: i8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GreedyOutcome {
    pub mode: Mode,
    pub orientation: Orientation,
    /// `lambda_1` for [`Mode::Min`], `rho` for [`Mode::Max`], from the
    /// eigensolver on the final orientation.
    pub value: f64,
    /// Largest root of the node polynomial at depths `0..=m`.
    pub path_roots: Vec<f64>,
    pub steps: Vec<GreedyStep>,
}

fn node_root(p: &Polynomial, tol: f64, prefix: &[i8]) -> Result<f64> {
    largest_root(p, tol).map_err(|e| match e {
        Error::NotRealRooted { real_roots, degree } => Error::Invariant(format!(
            "node polynomial {p} at prefix {prefix:?} has only {real_roots} real roots of {degree}"
        )),
        other => other,
    })
}

/// Walk choosing, at each depth, the child whose conditional polynomial has
/// the smaller (`Min`) or larger (`Max`) largest root. Children whose roots
/// agree within `tol` resolve to `+1`.
pub fn greedy_orient(g: &Graph, mode: Mode, tol: f64) -> Result<GreedyOutcome> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidTolerance(tol));
    }
    let m = g.m();
    let root_poly = to_polynomial(&MixedExpansion::new(g, 0)?.evaluate(&[])?);
    let mut path_roots = vec![node_root(&root_poly, tol, &[])?];
    let mut steps = Vec::with_capacity(m);
    let mut prefix: Vec<i8> = Vec::with_capacity(m);
    for k in 0..m {
        let expansion = MixedExpansion::new(g, k + 1)?;
        let mut child = |s: i8| -> Result<f64> {
            prefix.push(s);
            let p = to_polynomial(&expansion.evaluate(&prefix)?);
            let r = node_root(&p, tol, &prefix);
            prefix.pop();
            r
        };
        let root_plus = child(1)?;
        let root_minus = child(-1)?;
        let take_minus = match mode {
            Mode::Min => root_minus < root_plus - tol,
            Mode::Max => root_minus > root_plus + tol,
        };
        let chosen = if take_minus { -1 } else { 1 };
        prefix.push(chosen);
        path_roots.push(if take_minus { root_minus } else { root_plus });
        steps.push(GreedyStep {
            root_plus,
            root_minus,
            chosen,
        });
    }
    let orientation = Orientation::new(g, prefix)?;
    let spectrum = eigenvalues(&hermitian_matrix(g, &orientation)?, tol)?;
    let value = match mode {
        Mode::Min => spectrum.lambda1(),
        Mode::Max => spectrum.radius(),
    };
    Ok(GreedyOutcome {
        mode,
        orientation,
        value,
        path_roots,
        steps,
    })
}

/// Orientation with `lambda_1(H) <= rho(mu_G)`, and the achieved `lambda_1`.
pub fn greedy_orient_min(g: &Graph, tol: f64) -> Result<(Orientation, f64)> {
    let out = greedy_orient(g, Mode::Min, tol)?;
    Ok((out.orientation, out.value))
}

/// Orientation with `rho(H) >= rho(mu_G)`, and the achieved `rho`.
pub fn greedy_orient_max(g: &Graph, tol: f64) -> Result<(Orientation, f64)> {
    let out = greedy_orient(g, Mode::Max, tol)?;
    Ok((out.orientation, out.value))
}
