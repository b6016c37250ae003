//! Hermitian adjacency matrices of oriented graphs: construction,
//! eigenvalues and exact characteristic polynomials.
//!
//! Eigenvalues come from the real symmetric embedding
//! `[[Re H, -Im H], [Im H, Re H]]` of size `2n`, whose spectrum is that of
//! `H` with every multiplicity doubled.

mod eigen;
mod gaussian;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Orientation};
use crate::poly::Polynomial;

pub use eigen::{jacobi_eigenvalues, symmetric_eigenvalues};
pub use gaussian::{berkowitz, GaussianInt, GaussianMatrix};

/// `H(G^sigma)`: zero diagonal, `H[u][v] = i * sigma(u, v)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GaussianMatrix", into = "GaussianMatrix")]
pub struct HermitianMatrix(GaussianMatrix);

impl TryFrom<GaussianMatrix> for HermitianMatrix {
    type Error = Error;

    fn try_from(m: GaussianMatrix) -> Result<Self> {
        if !m.is_hermitian() {
            return Err(Error::Invariant("matrix is not Hermitian".into()));
        }
        Ok(HermitianMatrix(m))
    }
}

impl From<HermitianMatrix> for GaussianMatrix {
    fn from(h: HermitianMatrix) -> Self {
        h.0
    }
}

impl HermitianMatrix {
    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn entry(&self, u: usize, v: usize) -> GaussianInt {
        self.0.get(u, v)
    }

    pub fn as_gaussian(&self) -> &GaussianMatrix {
        &self.0
    }

    /// The `2n x 2n` real symmetric embedding, row-major.
    pub fn real_embedding(&self) -> Vec<f64> {
        let n = self.n();
        let size = 2 * n;
        let mut out = vec![0.0; size * size];
        for u in 0..n {
            for v in 0..n {
                let z = self.entry(u, v);
                let (re, im) = (z.re as f64, z.im as f64);
                out[u * size + v] = re;
                out[u * size + n + v] = -im;
                out[(n + u) * size + v] = im;
                out[(n + u) * size + n + v] = re;
            }
        }
        out
    }
}

/// Builds `H(G^sigma)` for the orientation `o` of `g`.
pub fn hermitian_matrix(g: &Graph, o: &Orientation) -> Result<HermitianMatrix> {
    o.check(g)?;
    Ok(HermitianMatrix(signed_edges_matrix(
        g.n(),
        g.edges().iter().copied().zip(o.signs().iter().copied()),
    )))
}

/// Hermitian matrix carrying only the listed edges, each with its sign.
pub(crate) fn signed_edges_matrix(
    n: usize,
    edges: impl Iterator<Item = ((usize, usize), i8)>,
) -> GaussianMatrix {
    let mut m = GaussianMatrix::zeros(n);
    for ((u, v), s) in edges {
        let s = s as i128;
        m.set(u, v, GaussianInt::new(0, s));
        m.set(v, u, GaussianInt::new(0, -s));
    }
    m
}

/// Eigenvalues in non-increasing order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn lambda1(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn lambda_min(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// `max(lambda_1, |lambda_n|)`
    pub fn radius(&self) -> f64 {
        self.lambda1().max(self.lambda_min().abs())
    }

    /// Largest `|lambda_k + lambda_{n+1-k}|`; zero for a spectrum that is
    /// symmetric about the origin.
    pub fn asymmetry(&self) -> f64 {
        let n = self.eigenvalues.len();
        (0..n)
            .map(|k| (self.eigenvalues[k] + self.eigenvalues[n - 1 - k]).abs())
            .fold(0.0, f64::max)
    }
}

/// Spectrum of `h` via the doubled real embedding. Every embedding
/// eigenvalue must pair up with its twin to within `tol`.
pub fn eigenvalues(h: &HermitianMatrix, tol: f64) -> Result<Spectrum> {
    let n = h.n();
    let mut doubled = symmetric_eigenvalues(&h.real_embedding(), 2 * n)?;
    doubled.reverse();
    let mut eigenvalues = Vec::with_capacity(n);
    for pair in doubled.chunks_exact(2) {
        if (pair[0] - pair[1]).abs() > tol {
            return Err(Error::Invariant(format!(
                "embedding eigenvalues {} and {} do not pair up",
                pair[0], pair[1]
            )));
        }
        eigenvalues.push(0.5 * (pair[0] + pair[1]));
    }
    Ok(Spectrum { eigenvalues })
}

/// `max(lambda_1, |lambda_n|)`, checked against `lambda_1` (the spectrum
/// of an oriented graph is symmetric, so the two must agree).
pub fn spectral_radius(h: &HermitianMatrix, tol: f64) -> Result<f64> {
    let s = eigenvalues(h, tol)?;
    if (s.radius() - s.lambda1()).abs() > tol {
        return Err(Error::Invariant(format!(
            "spectral radius {} differs from lambda_1 {}",
            s.radius(),
            s.lambda1()
        )));
    }
    Ok(s.radius())
}

/// `det(xI - A)` as an integer polynomial; any nonzero imaginary part in a
/// coefficient is an invariant breach.
pub fn char_poly_real(m: &GaussianMatrix) -> Result<Polynomial> {
    let high_first = m.char_poly()?;
    let mut coeffs = Vec::with_capacity(high_first.len());
    for (k, z) in high_first.iter().rev().enumerate() {
        if z.im != 0 {
            return Err(Error::Invariant(format!(
                "coefficient of x^{k} has imaginary part {}",
                z.im
            )));
        }
        coeffs.push(BigInt::from(z.re));
    }
    Ok(Polynomial::new(coeffs))
}

/// Exact `det(xI - H)` by division-free expansion over the Gaussian integers.
pub fn char_poly_exact(h: &HermitianMatrix) -> Result<Polynomial> {
    char_poly_real(&h.0)
}

/// Characteristic polynomial of the ordinary (symmetric 0/1) adjacency matrix.
pub fn adjacency_char_poly(g: &Graph) -> Result<Polynomial> {
    let mut m = GaussianMatrix::zeros(g.n());
    for &(u, v) in g.edges() {
        m.set(u, v, GaussianInt::ONE);
        m.set(v, u, GaussianInt::ONE);
    }
    char_poly_real(&m)
}

/// Spectral radius of the ordinary adjacency matrix, `rho(G)`.
pub fn adjacency_spectral_radius(g: &Graph) -> Result<f64> {
    let n = g.n();
    let mut a = vec![0.0; n * n];
    for &(u, v) in g.edges() {
        a[u * n + v] = 1.0;
        a[v * n + u] = 1.0;
    }
    let ev = symmetric_eigenvalues(&a, n)?;
    Ok(ev.iter().fold(0.0, |acc: f64, x| acc.max(x.abs())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;

    fn k3() -> Graph {
        parse_edge_list("0 1\n1 2\n0 2").unwrap()
    }

    fn c4() -> Graph {
        parse_edge_list("0 1\n1 2\n2 3\n0 3").unwrap()
    }

    #[test]
    fn k2_matrix() {
        let g = parse_edge_list("0 1").unwrap();
        let h = hermitian_matrix(&g, &Orientation::new(&g, vec![1]).unwrap()).unwrap();
        assert_eq!(h.entry(0, 1), GaussianInt::I);
        assert_eq!(h.entry(1, 0), GaussianInt::new(0, -1));
        assert_eq!(h.entry(0, 0), GaussianInt::ZERO);
        let json = serde_json::to_string(&h).unwrap();
        assert_eq!(json, r#"{"n":2,"entries":[[0,0],[0,1],[0,-1],[0,0]]}"#);
        assert_eq!(serde_json::from_str::<HermitianMatrix>(&json).unwrap(), h);
        assert!(serde_json::from_str::<HermitianMatrix>(
            r#"{"n":2,"entries":[[0,0],[0,1],[0,1],[0,0]]}"#
        )
        .is_err());
    }

    #[test]
    fn k3_cyclic_entries() {
        // arcs 0->1, 1->2, 2->0: edges (0,1)=+1, (0,2)=-1, (1,2)=+1
        let g = k3();
        let o = Orientation::new(&g, vec![1, -1, 1]).unwrap();
        let h = hermitian_matrix(&g, &o).unwrap();
        assert_eq!(h.entry(0, 1), GaussianInt::new(0, 1));
        assert_eq!(h.entry(0, 2), GaussianInt::new(0, -1));
        assert_eq!(h.entry(1, 2), GaussianInt::new(0, 1));
        assert_eq!(h.entry(2, 0), GaussianInt::new(0, 1));
        assert!(h.as_gaussian().is_hermitian());
    }

    #[test]
    fn flipping_one_sign_negates_one_edge() {
        let g = c4();
        let a = hermitian_matrix(&g, &Orientation::new(&g, vec![1, 1, 1, 1]).unwrap()).unwrap();
        let b = hermitian_matrix(&g, &Orientation::new(&g, vec![1, 1, -1, 1]).unwrap()).unwrap();
        let (u, v) = g.edges()[2];
        for i in 0..4 {
            for j in 0..4 {
                let flipped = (i, j) == (u, v) || (i, j) == (v, u);
                let want = if flipped {
                    GaussianInt::ZERO.checked_sub(a.entry(i, j)).unwrap()
                } else {
                    a.entry(i, j)
                };
                assert_eq!(b.entry(i, j), want);
            }
        }
    }

    #[test]
    fn length_mismatch_rejected() {
        let g = k3();
        let o = Orientation::new(&c4(), vec![1; 4]).unwrap();
        assert!(matches!(
            hermitian_matrix(&g, &o),
            Err(Error::SignLength {
                expected: 3,
                got: 4
            })
        ));
    }

    #[test]
    fn char_poly_examples() {
        let g = parse_edge_list("0 1").unwrap();
        let h = hermitian_matrix(&g, &Orientation::all_positive(&g)).unwrap();
        assert_eq!(
            char_poly_exact(&h).unwrap(),
            Polynomial::from_i64s(&[-1, 0, 1])
        );

        let g = k3();
        for idx in 0..8 {
            let h = hermitian_matrix(&g, &Orientation::from_index(&g, idx)).unwrap();
            assert_eq!(
                char_poly_exact(&h).unwrap(),
                Polynomial::from_i64s(&[0, -3, 0, 1])
            );
        }

        // C_4, canonical edges (0,1),(0,3),(1,2),(2,3). All signs +1 gives
        // sigma(0,1) sigma(1,2) sigma(2,3) sigma(3,0) = -1 around the cycle.
        let g = c4();
        let o = Orientation::new(&g, vec![1, 1, 1, 1]).unwrap();
        let h = hermitian_matrix(&g, &o).unwrap();
        assert_eq!(
            char_poly_exact(&h).unwrap(),
            Polynomial::from_i64s(&[4, 0, -4, 0, 1])
        );
        // Reversing edge (0,3) makes the directed 4-cycle: product +1.
        let o = Orientation::new(&g, vec![1, -1, 1, 1]).unwrap();
        let h = hermitian_matrix(&g, &o).unwrap();
        assert_eq!(
            char_poly_exact(&h).unwrap(),
            Polynomial::from_i64s(&[0, 0, -4, 0, 1])
        );
    }

    #[test]
    fn spectra_of_small_examples() {
        let g = parse_edge_list("0 1").unwrap();
        for idx in 0..2 {
            let h = hermitian_matrix(&g, &Orientation::from_index(&g, idx)).unwrap();
            let s = eigenvalues(&h, 1e-10).unwrap();
            assert!((s.eigenvalues()[0] - 1.0).abs() < 1e-12);
            assert!((s.eigenvalues()[1] + 1.0).abs() < 1e-12);
            assert!((spectral_radius(&h, 1e-10).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn real_imaginary_check_fires() {
        // A non-Hermitian matrix whose char poly has complex coefficients.
        let m = GaussianMatrix::from_entries(1, vec![GaussianInt::I]).unwrap();
        assert!(matches!(char_poly_real(&m), Err(Error::Invariant(_))));
    }

    #[test]
    fn adjacency_of_path() {
        let p3 = parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!(
            adjacency_char_poly(&p3).unwrap(),
            Polynomial::from_i64s(&[0, -2, 0, 1])
        );
        assert!((adjacency_spectral_radius(&p3).unwrap() - 2f64.sqrt()).abs() < 1e-12);
    }
}
