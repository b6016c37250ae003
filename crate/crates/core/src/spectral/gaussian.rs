//! Gaussian integers with overflow-checked arithmetic, and a division-free
//! characteristic polynomial over them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[i128; 2]", into = "[i128; 2]")]
pub struct GaussianInt {
    pub re: i128,
    pub im: i128,
}

impl From<[i128; 2]> for GaussianInt {
    fn from([re, im]: [i128; 2]) -> Self {
        GaussianInt { re, im }
    }
}

impl From<GaussianInt> for [i128; 2] {
    fn from(z: GaussianInt) -> Self {
        [z.re, z.im]
    }
}

const OVERFLOW: Error = Error::Overflow("Gaussian integer arithmetic");

impl GaussianInt {
    pub const ZERO: GaussianInt = GaussianInt { re: 0, im: 0 };
    pub const ONE: GaussianInt = GaussianInt { re: 1, im: 0 };
    pub const I: GaussianInt = GaussianInt { re: 0, im: 1 };

    pub const fn new(re: i128, im: i128) -> Self {
        GaussianInt { re, im }
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn conj(self) -> Self {
        GaussianInt {
            re: self.re,
            im: -self.im,
        }
    }

    pub fn checked_add(self, o: Self) -> Result<Self> {
        Ok(GaussianInt {
            re: self.re.checked_add(o.re).ok_or(OVERFLOW)?,
            im: self.im.checked_add(o.im).ok_or(OVERFLOW)?,
        })
    }

    pub fn checked_sub(self, o: Self) -> Result<Self> {
        Ok(GaussianInt {
            re: self.re.checked_sub(o.re).ok_or(OVERFLOW)?,
            im: self.im.checked_sub(o.im).ok_or(OVERFLOW)?,
        })
    }

    pub fn checked_neg(self) -> Result<Self> {
        GaussianInt::ZERO.checked_sub(self)
    }

    pub fn checked_mul(self, o: Self) -> Result<Self> {
        let mul = |a: i128, b: i128| a.checked_mul(b).ok_or(OVERFLOW);
        let re = mul(self.re, o.re)?
            .checked_sub(mul(self.im, o.im)?)
            .ok_or(OVERFLOW)?;
        let im = mul(self.re, o.im)?
            .checked_add(mul(self.im, o.re)?)
            .ok_or(OVERFLOW)?;
        Ok(GaussianInt { re, im })
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, im) => write!(f, "{im}i"),
            (re, im) if im < 0 => write!(f, "{re}-{}i", -im),
            (re, im) => write!(f, "{re}+{im}i"),
        }
    }
}

/// Dense square matrix over the Gaussian integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussianMatrix {
    n: usize,
    entries: Vec<GaussianInt>,
}

impl GaussianMatrix {
    pub fn zeros(n: usize) -> Self {
        GaussianMatrix {
            n,
            entries: vec![GaussianInt::ZERO; n * n],
        }
    }

    pub fn from_entries(n: usize, entries: Vec<GaussianInt>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Invariant(format!(
                "{} entries for a {n}x{n} matrix",
                entries.len()
            )));
        }
        Ok(GaussianMatrix { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[GaussianInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> GaussianInt {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, z: GaussianInt) {
        self.entries[i * self.n + j] = z;
    }

    pub fn checked_add(&self, other: &GaussianMatrix) -> Result<GaussianMatrix> {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Result<_>>()?;
        Ok(GaussianMatrix { n: self.n, entries })
    }

    pub fn checked_sub(&self, other: &GaussianMatrix) -> Result<GaussianMatrix> {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Result<_>>()?;
        Ok(GaussianMatrix { n: self.n, entries })
    }

    /// Adds `v v^*` in place.
    pub fn add_outer(&mut self, v: &[GaussianInt]) -> Result<()> {
        for i in 0..self.n {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..self.n {
                if v[j].is_zero() {
                    continue;
                }
                let k = i * self.n + j;
                self.entries[k] = self.entries[k].checked_add(v[i].checked_mul(v[j].conj())?)?;
            }
        }
        Ok(())
    }

    pub fn is_hermitian(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == self.get(j, i).conj()))
    }

    /// `det(xI - A)` coefficients, highest degree first.
    pub fn char_poly(&self) -> Result<Vec<GaussianInt>> {
        berkowitz(&self.entries, self.n)
    }
}

/// Coefficients of `det(xI - A)`, highest degree first, for a square
/// row-major matrix of dimension `n`, via Berkowitz's algorithm (no
/// divisions, so exact over any commutative ring).
pub fn berkowitz(a: &[GaussianInt], n: usize) -> Result<Vec<GaussianInt>> {
    debug_assert_eq!(a.len(), n * n);
    let at = |i: usize, j: usize| a[i * n + j];
    let mut poly = vec![GaussianInt::ONE];
    let mut v = Vec::with_capacity(n);
    let mut w = Vec::with_capacity(n);
    let mut q = Vec::with_capacity(n + 1);
    for r in 0..n {
        // Toeplitz column: 1, -a_rr, -R C, -R M C, ..., -R M^{r-1} C
        q.clear();
        q.push(GaussianInt::ONE);
        q.push(at(r, r).checked_neg()?);
        v.clear();
        v.extend((0..r).map(|i| at(i, r)));
        for k in 0..r {
            let mut dot = GaussianInt::ZERO;
            for (j, vj) in v.iter().enumerate() {
                let rj = at(r, j);
                if !rj.is_zero() && !vj.is_zero() {
                    dot = dot.checked_add(rj.checked_mul(*vj)?)?;
                }
            }
            q.push(dot.checked_neg()?);
            if k + 1 < r {
                w.clear();
                for i in 0..r {
                    let mut acc = GaussianInt::ZERO;
                    for (j, vj) in v.iter().enumerate() {
                        let mij = at(i, j);
                        if !mij.is_zero() && !vj.is_zero() {
                            acc = acc.checked_add(mij.checked_mul(*vj)?)?;
                        }
                    }
                    w.push(acc);
                }
                std::mem::swap(&mut v, &mut w);
            }
        }
        let mut next = vec![GaussianInt::ZERO; r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            let lo = i.saturating_sub(r + 1);
            for j in lo..=i.min(r) {
                let term = q[i - j];
                if !term.is_zero() && !poly[j].is_zero() {
                    *slot = slot.checked_add(term.checked_mul(poly[j])?)?;
                }
            }
        }
        poly = next;
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i128) -> GaussianInt {
        GaussianInt::new(re, 0)
    }

    /// Cofactor expansion, independent of Berkowitz; evaluates det(tI - A).
    fn det_at(a: &[GaussianInt], n: usize, t: i128) -> GaussianInt {
        let m: Vec<GaussianInt> = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                let d = if i == j { g(t) } else { GaussianInt::ZERO };
                d.checked_sub(a[k]).unwrap()
            })
            .collect();
        fn det(m: &[GaussianInt], n: usize) -> GaussianInt {
            if n == 0 {
                return GaussianInt::ONE;
            }
            let mut acc = GaussianInt::ZERO;
            for c in 0..n {
                let minor: Vec<GaussianInt> = (1..n)
                    .flat_map(|i| (0..n).filter(move |&j| j != c).map(move |j| (i, j)))
                    .map(|(i, j)| m[i * n + j])
                    .collect();
                let term = m[c].checked_mul(det(&minor, n - 1)).unwrap();
                acc = if c % 2 == 0 {
                    acc.checked_add(term).unwrap()
                } else {
                    acc.checked_sub(term).unwrap()
                };
            }
            acc
        }
        det(&m, n)
    }

    fn eval(coeffs_high_first: &[GaussianInt], t: i128) -> GaussianInt {
        coeffs_high_first.iter().fold(GaussianInt::ZERO, |acc, c| {
            acc.checked_mul(g(t)).unwrap().checked_add(*c).unwrap()
        })
    }

    #[test]
    fn matches_cofactor_expansion() {
        let a: Vec<GaussianInt> = [
            (1, 0),
            (0, 1),
            (2, -1),
            (0, 0),
            (0, -1),
            (3, 0),
            (0, 0),
            (1, 1),
            (2, 1),
            (0, 0),
            (-1, 0),
            (0, 2),
            (0, 0),
            (1, -1),
            (0, -2),
            (0, 0),
        ]
        .iter()
        .map(|&(r, i)| GaussianInt::new(r, i))
        .collect();
        let p = berkowitz(&a, 4).unwrap();
        assert_eq!(p.len(), 5);
        for t in -3..=3 {
            assert_eq!(eval(&p, t), det_at(&a, 4, t));
        }
    }

    #[test]
    fn empty_matrix() {
        assert_eq!(berkowitz(&[], 0).unwrap(), vec![GaussianInt::ONE]);
    }

    #[test]
    fn overflow_is_reported() {
        let big = GaussianInt::new(i128::MAX / 2, 0);
        assert!(big.checked_mul(big).is_err());
        let a = vec![big; 4];
        assert_eq!(
            berkowitz(&a, 2),
            Err(Error::Overflow("Gaussian integer arithmetic"))
        );
    }
}
