//! The rank-one decomposition showing that
//! `q = lambda f_{s,+1} + (1 - lambda) f_{s,-1}` is real-rooted, checked
//! term by term.
//!
//! With `p_j`, `a_j = e_u - i e_v`, `b_j = e_u + i e_v` and the degree
//! matrix `D`, the sum `q` (children taken as sums over completions) is
//! recomputed as
//!
//! ```text
//! 2^(m-k-1) sum_S prod_{j in S} p_j prod_{j not in S} (1 - p_j)
//!     det(xI - D + sum_{j in S} a_j a_j^* + sum_{j not in S} b_j b_j^*)
//! ```
//!
//! Only sets `S` with nonzero weight are visited: `S` must contain every
//! decided `+1` edge and no decided `-1` edge.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::expect::{gaussian_char_coeffs, to_polynomial, MixedExpansion, DEFAULT_BRUTE_CAP};
use crate::error::{Error, Result};
use crate::graph::{Graph, Orientation, PartialAssignment};
use crate::poly::{is_real_rooted, FloatPolynomial, Polynomial};
use crate::spectral::{hermitian_matrix, GaussianInt, GaussianMatrix};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MssWitness {
    pub p: Vec<f64>,
    pub a: Vec<Vec<GaussianInt>>,
    pub b: Vec<Vec<GaussianInt>>,
    pub degrees: Vec<usize>,
    pub delta: usize,
    pub lambda: f64,
}

fn edge_vectors(g: &Graph) -> (Vec<Vec<GaussianInt>>, Vec<Vec<GaussianInt>>) {
    let n = g.n();
    g.edges()
        .iter()
        .map(|&(u, v)| {
            let mut a = vec![GaussianInt::ZERO; n];
            let mut b = vec![GaussianInt::ZERO; n];
            a[u] = GaussianInt::ONE;
            b[u] = GaussianInt::ONE;
            a[v] = GaussianInt::new(0, -1);
            b[v] = GaussianInt::I;
            (a, b)
        })
        .unzip()
}

impl MssWitness {
    pub fn new(g: &Graph, pa: &PartialAssignment, lambda: f64) -> Result<Self> {
        pa.check(g)?;
        let k = pa.depth();
        if k >= g.m() {
            return Err(Error::CompleteAssignment);
        }
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidWeight(lambda));
        }
        let mut p: Vec<f64> = pa
            .prefix()
            .iter()
            .map(|&s| (s as f64 + 1.0) / 2.0)
            .collect();
        p.push(lambda);
        p.resize(g.m(), 0.5);
        let (a, b) = edge_vectors(g);
        Ok(MssWitness {
            p,
            a,
            b,
            degrees: g.degrees(),
            delta: g.max_degree(),
            lambda,
        })
    }

    /// `prod_{j in S} p_j prod_{j not in S} (1 - p_j)`
    pub fn weight(&self, in_s: &[bool]) -> f64 {
        self.p
            .iter()
            .zip(in_s)
            .map(|(&p, &inside)| if inside { p } else { 1.0 - p })
            .product()
    }

    /// `sum_{j in S} a_j a_j^* + sum_{j not in S} b_j b_j^*`
    pub fn outer_sum(&self, in_s: &[bool]) -> Result<GaussianMatrix> {
        let mut m = GaussianMatrix::zeros(self.degrees.len());
        for (j, &inside) in in_s.iter().enumerate() {
            m.add_outer(if inside { &self.a[j] } else { &self.b[j] })?;
        }
        Ok(m)
    }

    /// `D - shift * I`
    fn shifted_degrees(&self, shift: usize) -> GaussianMatrix {
        let n = self.degrees.len();
        let mut d = GaussianMatrix::zeros(n);
        for (v, &deg) in self.degrees.iter().enumerate() {
            d.set(v, v, GaussianInt::new(deg as i128 - shift as i128, 0));
        }
        d
    }

    /// `Delta I - D` is diagonal, so positive semidefinite iff every
    /// diagonal entry is non-negative.
    pub fn shift_is_psd(&self) -> bool {
        self.degrees.iter().all(|&d| d <= self.delta)
    }
}

/// The sum of outer products for the set `S = {j : s_j = +1}` of a full
/// orientation.
pub fn orientation_outer_sum(g: &Graph, o: &Orientation) -> Result<GaussianMatrix> {
    o.check(g)?;
    let (a, b) = edge_vectors(g);
    let mut m = GaussianMatrix::zeros(g.n());
    for (j, &s) in o.signs().iter().enumerate() {
        m.add_outer(if s == 1 { &a[j] } else { &b[j] })?;
    }
    Ok(m)
}

/// Entrywise comparison of the outer-product sum with `D - H` and `D + H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OuterSumIdentity {
    /// Sum equals `-H(G^sigma) + D`.
    pub minus_h: bool,
    /// Sum equals `H(G^sigma) + D`, that is `-H` of the reversed
    /// orientation plus `D`.
    pub plus_h: bool,
}

pub fn check_outer_sum_identity(g: &Graph, o: &Orientation) -> Result<OuterSumIdentity> {
    let sum = orientation_outer_sum(g, o)?;
    let h = hermitian_matrix(g, o)?;
    let mut d = GaussianMatrix::zeros(g.n());
    for v in 0..g.n() {
        d.set(v, v, GaussianInt::new(g.degree(v) as i128, 0));
    }
    Ok(OuterSumIdentity {
        minus_h: sum == d.checked_sub(h.as_gaussian())?,
        plus_h: sum == d.checked_add(h.as_gaussian())?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    pub depth: usize,
    pub lambda: f64,
    pub delta: usize,
    pub terms: usize,
    pub psd: bool,
    /// Every visited weight equals the case value
    /// `2^-(m-k-1) lambda` or `2^-(m-k-1) (1 - lambda)`.
    pub weight_table_agrees: bool,
    /// `lambda f_{s,+1} + (1 - lambda) f_{s,-1}`, children as sums.
    pub q: FloatPolynomial,
    /// Largest relative coefficient gap between `q` and the weighted sum,
    /// both evaluated in floating point.
    pub coefficient_diff: f64,
    /// The same identity in exact arithmetic (`lambda` is dyadic).
    pub exact_agreement: bool,
    /// `q(x) = 2^(m-k-1) r(x - Delta)`, exactly.
    pub shift_identity: bool,
    pub q_real_rooted: bool,
    pub r_real_rooted: bool,
}

impl WitnessReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.psd
            && self.weight_table_agrees
            && self.coefficient_diff <= tol
            && self.exact_agreement
            && self.shift_identity
            && self.q_real_rooted
            && self.r_real_rooted
    }
}

pub fn mss_witness_check(
    g: &Graph,
    pa: &PartialAssignment,
    lambda: f64,
    tol: f64,
) -> Result<WitnessReport> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    let witness = MssWitness::new(g, pa, lambda)?;
    let m = g.m();
    let k = pa.depth();
    let free = m - k;
    if free > DEFAULT_BRUTE_CAP {
        return Err(Error::BruteForceCap {
            edges: free,
            cap: DEFAULT_BRUTE_CAP,
        });
    }
    // lambda = num / 2^e exactly
    let (lam, e) = FloatPolynomial::new(vec![lambda]).to_scaled_exact()?;
    let num = lam.coeff(0);
    let den = BigInt::one() << e;

    // Left side, children as sums over completions.
    let to_sum = BigInt::one() << (free - 1);
    let expansion = MixedExpansion::new(g, k + 1)?;
    let child = |s: i8| -> Result<Polynomial> {
        let mut prefix = pa.prefix().to_vec();
        prefix.push(s);
        Ok(to_polynomial(&expansion.evaluate(&prefix)?).scale(&to_sum))
    };
    let f_plus = child(1)?;
    let f_minus = child(-1)?;
    let q = FloatPolynomial::combine(lambda, &f_plus, 1.0 - lambda, &f_minus);
    let q_scaled = &f_plus.scale(&num) + &f_minus.scale(&(&den - &num));

    // Right side.
    let mut in_s: Vec<bool> = pa.prefix().iter().map(|&s| s == 1).collect();
    in_s.resize(m, false);
    let a_base = witness.shifted_degrees(0);
    let r_base = witness.shifted_degrees(witness.delta);
    let case_scale = 0.5f64.powi((free - 1) as i32);
    let mut weight_table_agrees = true;
    let mut rhs = vec![0.0; g.n() + 1];
    let mut rhs_scaled = Polynomial::zero();
    let mut r_scaled = Polynomial::zero();
    for bits in 0u64..1 << free {
        for (i, slot) in in_s[k..].iter_mut().enumerate() {
            *slot = bits >> i & 1 == 1;
        }
        let w = witness.weight(&in_s);
        let table = case_scale * if in_s[k] { lambda } else { 1.0 - lambda };
        if (w - table).abs() > f64::EPSILON * table.abs() {
            weight_table_agrees = false;
        }
        let outer = witness.outer_sum(&in_s)?;
        let det = gaussian_char_coeffs(&a_base.checked_sub(&outer)?)?;
        let det_r = gaussian_char_coeffs(&r_base.checked_sub(&outer)?)?;
        for (acc, &c) in rhs.iter_mut().zip(&det) {
            *acc += w * c as f64;
        }
        let c_s = if in_s[k] { num.clone() } else { &den - &num };
        rhs_scaled = &rhs_scaled + &to_polynomial(&det).scale(&c_s);
        r_scaled = &r_scaled + &to_polynomial(&det_r).scale(&c_s);
    }
    let scale = (1u64 << (free - 1)) as f64;
    let rhs = FloatPolynomial::new(rhs.into_iter().map(|c| c * scale).collect());
    let shifted_back = r_scaled.shift(&-BigInt::from(witness.delta));

    Ok(WitnessReport {
        depth: k,
        lambda,
        delta: witness.delta,
        terms: 1 << free,
        psd: witness.shift_is_psd(),
        weight_table_agrees,
        coefficient_diff: q.max_relative_diff(&rhs),
        exact_agreement: q_scaled == rhs_scaled,
        shift_identity: shifted_back == q_scaled,
        q_real_rooted: !q_scaled.is_zero() && is_real_rooted(&q_scaled),
        r_real_rooted: !r_scaled.is_zero() && is_real_rooted(&r_scaled),
        q,
    })
}
