//! Exhaustive search over all `2^m` orientations.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::expect::DEFAULT_BRUTE_CAP;
use crate::error::{Error, Result};
use crate::graph::{Graph, Orientation};
use crate::spectral::{eigenvalues, hermitian_matrix};

/// Spectral radii equal within `tol` of their neighbours in sorted order
/// share a bucket; `value` is the smallest radius in it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusBucket {
    pub value: f64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Extremes {
    pub min_orientation: Orientation,
    pub min_lambda1: f64,
    pub max_orientation: Orientation,
    pub max_rho: f64,
    pub histogram: Vec<RadiusBucket>,
}

pub fn brute_force_extremes(g: &Graph, tol: f64) -> Result<Extremes> {
    brute_force_extremes_capped(g, tol, DEFAULT_BRUTE_CAP)
}

/// Ties go to the lowest orientation index (see
/// [`Orientation::from_index`]), so the answer does not depend on how the
/// work was split between threads.
pub fn brute_force_extremes_capped(g: &Graph, tol: f64, cap: usize) -> Result<Extremes> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidTolerance(tol));
    }
    let m = g.m();
    if m > cap || m >= 63 {
        return Err(Error::BruteForceCap { edges: m, cap });
    }
    let spectra: Vec<(f64, f64)> = (0u64..1 << m)
        .into_par_iter()
        .map(|idx| {
            let o = Orientation::from_index(g, idx);
            let s = eigenvalues(&hermitian_matrix(g, &o)?, tol)?;
            Ok((s.lambda1(), s.radius()))
        })
        .collect::<Result<_>>()?;

    let mut min_idx = 0;
    let mut max_idx = 0;
    for (i, &(l1, rho)) in spectra.iter().enumerate() {
        if l1 < spectra[min_idx].0 {
            min_idx = i;
        }
        if rho > spectra[max_idx].1 {
            max_idx = i;
        }
    }

    let mut radii: Vec<f64> = spectra.iter().map(|&(_, r)| r).collect();
    radii.sort_by(f64::total_cmp);
    let mut histogram: Vec<RadiusBucket> = Vec::new();
    let mut prev = f64::NEG_INFINITY;
    for r in radii {
        match histogram.last_mut() {
            Some(b) if r - prev <= tol => b.count += 1,
            _ => histogram.push(RadiusBucket { value: r, count: 1 }),
        }
        prev = r;
    }

    Ok(Extremes {
        min_orientation: Orientation::from_index(g, min_idx as u64),
        min_lambda1: spectra[min_idx].0,
        max_orientation: Orientation::from_index(g, max_idx as u64),
        max_rho: spectra[max_idx].1,
        histogram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;

    #[test]
    fn examples() {
        let k3 = parse_edge_list("0 1\n1 2\n0 2").unwrap();
        let e = brute_force_extremes(&k3, 1e-10).unwrap();
        assert!((e.min_lambda1 - 3f64.sqrt()).abs() < 1e-9);
        assert!((e.max_rho - 3f64.sqrt()).abs() < 1e-9);
        assert_eq!(e.histogram.len(), 1);
        assert_eq!(e.histogram[0].count, 8);

        let c4 = parse_edge_list("0 1\n1 2\n2 3\n0 3").unwrap();
        let e = brute_force_extremes(&c4, 1e-10).unwrap();
        assert!((e.min_lambda1 - 2f64.sqrt()).abs() < 1e-9);
        assert!((e.max_rho - 2.0).abs() < 1e-9);
        let counts: Vec<u64> = e.histogram.iter().map(|b| b.count).collect();
        assert_eq!(counts, vec![8, 8]);

        let k2 = parse_edge_list("0 1").unwrap();
        let e = brute_force_extremes(&k2, 1e-10).unwrap();
        assert!((e.min_lambda1 - 1.0).abs() < 1e-12 && (e.max_rho - 1.0).abs() < 1e-12);
        assert_eq!(e.min_orientation.signs(), &[1]);
    }

    #[test]
    fn cap() {
        let c4 = parse_edge_list("0 1\n1 2\n2 3\n0 3").unwrap();
        assert_eq!(
            brute_force_extremes_capped(&c4, 1e-10, 3).unwrap_err(),
            Error::BruteForceCap { edges: 4, cap: 3 }
        );
    }
}
