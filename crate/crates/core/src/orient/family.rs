//! Full-tree check that the orientation polynomials form an interlacing
//! family.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::expect::{add_scaled, char_coeffs_of_signs, div_pow2, to_polynomial, Coeffs};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::matching_polynomial;
use crate::poly::{common_interlacing_detail, is_real_rooted, Polynomial};

/// Default cap on `m` for the full tree (`2^(m+1) - 1` nodes).
pub const DEFAULT_TREE_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    NotRealRooted,
    NoCommonInterlacing,
    RootNotMatchingPolynomial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyFailure {
    pub prefix: Vec<i8>,
    pub kind: FailureKind,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub nodes: usize,
    pub internal_nodes: usize,
    /// Internal nodes whose children passed the common-interlacing check.
    pub internal_passed: usize,
    pub distinct_polynomials: usize,
    pub root: Polynomial,
    pub failures: Vec<FamilyFailure>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Node at depth `k` with code `c`: bit `k - 1 - j` of `c` set means
/// `s_{j+1} = -1`.
fn prefix_of(depth: usize, code: usize) -> Vec<i8> {
    (0..depth)
        .map(|j| {
            if code >> (depth - 1 - j) & 1 == 1 {
                -1
            } else {
                1
            }
        })
        .collect()
}

pub fn verify_interlacing_family(g: &Graph, tol: f64) -> Result<FamilyReport> {
    verify_interlacing_family_capped(g, tol, DEFAULT_TREE_CAP)
}

/// Builds every node polynomial bottom-up (leaves are characteristic
/// polynomials, parents the exact average of their two children), then
/// checks real-rootedness of each node and a common interlacing for every
/// sibling pair. Verdicts are memoized per distinct polynomial and pair.
pub fn verify_interlacing_family_capped(g: &Graph, tol: f64, cap: usize) -> Result<FamilyReport> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    let m = g.m();
    if m > cap || m >= 30 {
        return Err(Error::BruteForceCap { edges: m, cap });
    }
    let leaves: Vec<Coeffs> = (0..1usize << m)
        .into_par_iter()
        .map(|code| char_coeffs_of_signs(g, &prefix_of(m, code)))
        .collect::<Result<_>>()?;
    let mut levels = vec![leaves];
    for _ in 0..m {
        let below = levels.last().expect("at least the leaf level");
        let above = below
            .chunks_exact(2)
            .map(|pair| {
                let mut sum = pair[0].clone();
                add_scaled(&mut sum, &pair[1], 1)?;
                div_pow2(&sum, 1)
            })
            .collect::<Result<Vec<_>>>()?;
        levels.push(above);
    }
    levels.reverse();

    let mut distinct: BTreeMap<&Coeffs, bool> = BTreeMap::new();
    let mut pairs: BTreeMap<(&Coeffs, &Coeffs), Option<String>> = BTreeMap::new();
    for (k, level) in levels.iter().enumerate() {
        for (c, p) in level.iter().enumerate() {
            distinct.insert(p, false);
            if k < m {
                let (a, b) = (&levels[k + 1][2 * c], &levels[k + 1][2 * c + 1]);
                pairs.insert(if a <= b { (a, b) } else { (b, a) }, None);
            }
        }
    }
    let rooted: Vec<bool> = distinct
        .keys()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|p| is_real_rooted(&to_polynomial(p)))
        .collect();
    for (slot, ok) in distinct.values_mut().zip(rooted) {
        *slot = ok;
    }
    let verdicts: Vec<Option<String>> = pairs
        .keys()
        .collect::<Vec<_>>()
        .par_iter()
        .map(
            |(a, b)| match common_interlacing_detail(&to_polynomial(a), &to_polynomial(b), tol) {
                Ok(d) if d.holds() => None,
                Ok(d) => Some(format!(
                    "interval criterion {}, failed weights {:?}",
                    d.interval_criterion, d.failed_weights
                )),
                Err(e) => Some(e.to_string()),
            },
        )
        .collect();
    for (slot, v) in pairs.values_mut().zip(verdicts) {
        *slot = v;
    }

    let mut failures = Vec::new();
    let mut internal_passed = 0;
    for (k, level) in levels.iter().enumerate() {
        for (c, p) in level.iter().enumerate() {
            if !distinct[p] {
                failures.push(FamilyFailure {
                    prefix: prefix_of(k, c),
                    kind: FailureKind::NotRealRooted,
                    detail: to_polynomial(p).to_string(),
                });
            }
            if k < m {
                let (a, b) = (&levels[k + 1][2 * c], &levels[k + 1][2 * c + 1]);
                match &pairs[&if a <= b { (a, b) } else { (b, a) }] {
                    None => internal_passed += 1,
                    Some(detail) => failures.push(FamilyFailure {
                        prefix: prefix_of(k, c),
                        kind: FailureKind::NoCommonInterlacing,
                        detail: detail.clone(),
                    }),
                }
            }
        }
    }
    let root = to_polynomial(&levels[0][0]);
    let mu = matching_polynomial(g)?;
    if root != mu {
        failures.push(FamilyFailure {
            prefix: Vec::new(),
            kind: FailureKind::RootNotMatchingPolynomial,
            detail: format!("root {root}, matching polynomial {mu}"),
        });
    }
    Ok(FamilyReport {
        nodes: (1 << (m + 1)) - 1,
        internal_nodes: (1 << m) - 1,
        internal_passed,
        distinct_polynomials: distinct.len(),
        root,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;

    #[test]
    fn small_families_pass() {
        for (text, internal) in [("0 1", 1), ("0 1\n1 2\n0 2", 7), ("0 1\n1 2\n2 3\n0 3", 15)] {
            let g = parse_edge_list(text).unwrap();
            let r = verify_interlacing_family(&g, 1e-10).unwrap();
            assert!(r.passed(), "{:?}", r.failures);
            assert_eq!(r.internal_nodes, internal);
            assert_eq!(r.internal_passed, internal);
            assert_eq!(r.nodes, 2 * internal + 1);
        }
    }

    #[test]
    fn k2_has_one_distinct_polynomial() {
        let g = parse_edge_list("0 1").unwrap();
        let r = verify_interlacing_family(&g, 1e-10).unwrap();
        assert_eq!(r.distinct_polynomials, 1);
        assert_eq!(r.root, Polynomial::from_i64s(&[-1, 0, 1]));
    }

    #[test]
    fn prefix_codes() {
        assert_eq!(prefix_of(3, 0b011), vec![1, -1, -1]);
        assert_eq!(prefix_of(0, 0), Vec::<i8>::new());
    }

    #[test]
    fn cap() {
        let g = parse_edge_list("0 1\n1 2\n0 2").unwrap();
        assert!(matches!(
            verify_interlacing_family_capped(&g, 1e-10, 2),
            Err(Error::BruteForceCap { edges: 3, cap: 2 })
        ));
    }
}
