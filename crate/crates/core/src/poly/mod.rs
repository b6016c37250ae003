//! Univariate polynomials.
//!
//! [`Polynomial`] carries exact integer coefficients and is used for every
//! characteristic and matching polynomial. [`FloatPolynomial`] only appears
//! where a real convex weight enters; its root questions are answered by
//! converting each `f64` coefficient to the dyadic rational it exactly is.

mod interlace;
mod roots;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use interlace::{
    common_interlacing, common_interlacing_detail, convex_weights, interlaces, CommonInterlacing,
    SAMPLED_WEIGHTS_SEED,
};
pub use roots::{
    is_real_rooted, largest_root, max_abs_root, real_root_count, real_roots, square_free_factors,
    RootList, DEFAULT_REFINE_TOL, DEFAULT_TOL,
};

/// Exact polynomial over the integers, constant term first. The zero
/// polynomial has no coefficients; otherwise the last one is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// Monic polynomial with the given integer roots.
    pub fn from_roots(roots: &[i64]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, &r| &acc * &Self::from_i64s(&[-r, 1]))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0 (check `is_zero` first).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides every coefficient by `d`, failing unless all divide evenly.
    pub fn div_exact(&self, d: &BigInt) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::Invariant("division of a polynomial by zero".into()));
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::Invariant(format!(
                    "coefficient {c} not divisible by {d}"
                )));
            }
            out.push(q);
        }
        Ok(Self::new(out))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Gcd of the coefficients (zero for the zero polynomial), always >= 0.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// `self / content`, sign preserved.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// `p(x + shift)`, by repeated synthetic division.
    pub fn shift(&self, shift: &BigInt) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * shift;
                c[j] += t;
            }
        }
        Self::new(c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn to_float(&self) -> FloatPolynomial {
        FloatPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| c.to_f64().unwrap_or(f64::NAN))
                .collect(),
        )
    }

    /// True when every nonzero term has exponent of the same parity, i.e.
    /// `p(x) = s(x^2)` or `p(x) = x s(x^2)`.
    pub fn has_single_parity(&self) -> bool {
        let d = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| c.is_zero() || (d - k).is_multiple_of(2))
    }

    /// Coefficients as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(
            (0..len)
                .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => BigInt::zero(),
                })
                .collect(),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(bool, String, usize)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (c.is_negative(), c.abs().to_string(), k))
            .collect();
        write_terms(f, &terms)
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(bool, String, usize)]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (negative, mag, k)) in terms.iter().enumerate() {
        match (i, negative) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        let unit = mag == "1";
        match k {
            0 => write!(f, "{mag}")?,
            1 if unit => write!(f, "x")?,
            1 => write!(f, "{mag}x")?,
            _ if unit => write!(f, "x^{k}")?,
            _ => write!(f, "{mag}x^{k}")?,
        }
    }
    Ok(())
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|c| match c.to_i64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(c.to_string()),
            })
            .collect();
        let mut s = serializer.serialize_struct("Polynomial", 2)?;
        s.serialize_field("coeffs", &coeffs)?;
        s.serialize_field("exact", &true)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coeff {
            Int(i64),
            Text(String),
        }
        #[derive(Deserialize)]
        struct Repr {
            coeffs: Vec<Coeff>,
            exact: bool,
        }
        let r = Repr::deserialize(deserializer)?;
        if !r.exact {
            return Err(de::Error::custom("expected an exact polynomial"));
        }
        let coeffs = r
            .coeffs
            .into_iter()
            .map(|c| match c {
                Coeff::Int(v) => Ok(BigInt::from(v)),
                Coeff::Text(s) => s
                    .parse::<BigInt>()
                    .map_err(|_| de::Error::custom(format!("bad integer coefficient `{s}`"))),
            })
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        Ok(Polynomial::new(coeffs))
    }
}

/// Polynomial with `f64` coefficients, constant term first.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatPolynomial {
    coeffs: Vec<f64>,
}

impl FloatPolynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        FloatPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `a * p + b * q`
    pub fn combine(a: f64, p: &Polynomial, b: f64, q: &Polynomial) -> Self {
        let len = p.coeffs().len().max(q.coeffs().len());
        Self::new(
            (0..len)
                .map(|k| {
                    a * p.coeff(k).to_f64().unwrap_or(f64::NAN)
                        + b * q.coeff(k).to_f64().unwrap_or(f64::NAN)
                })
                .collect(),
        )
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// The exact integer polynomial `2^e * self` for the smallest `e >= 0`
    /// that clears every dyadic denominator, together with `e`. Fails on
    /// non-finite coefficients.
    pub fn to_scaled_exact(&self) -> Result<(Polynomial, u32)> {
        let parts: Vec<(BigInt, i32)> = self
            .coeffs
            .iter()
            .map(|&c| dyadic(c))
            .collect::<Result<_>>()?;
        let e = parts.iter().map(|&(_, ex)| (-ex).max(0)).max().unwrap_or(0);
        let coeffs = parts
            .into_iter()
            .map(|(mant, ex)| mant << ((ex + e) as usize))
            .collect();
        Ok((Polynomial::new(coeffs), e as u32))
    }

    /// Largest `|a_k - b_k| / max(1, |b_k|)` over all coefficients.
    pub fn max_relative_diff(&self, other: &FloatPolynomial) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len)
            .map(|k| {
                let a = self.coeffs.get(k).copied().unwrap_or(0.0);
                let b = other.coeffs.get(k).copied().unwrap_or(0.0);
                (a - b).abs() / b.abs().max(1.0)
            })
            .fold(0.0, f64::max)
    }
}

/// Exact decomposition `x = mantissa * 2^exponent`.
fn dyadic(x: f64) -> Result<(BigInt, i32)> {
    if !x.is_finite() {
        return Err(Error::Invariant(format!("non-finite coefficient {x}")));
    }
    if x == 0.0 {
        return Ok((BigInt::zero(), 0));
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
    let raw_exp = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, exp) = if raw_exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), raw_exp - 1075)
    };
    let tz = mant.trailing_zeros() as i32;
    Ok((BigInt::from(sign) * BigInt::from(mant >> tz), exp + tz))
}

impl fmt::Display for FloatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(bool, String, usize)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| **c != 0.0)
            .map(|(k, c)| (*c < 0.0, format!("{}", c.abs()), k))
            .collect();
        write_terms(f, &terms)
    }
}

impl Serialize for FloatPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("FloatPolynomial", 2)?;
        s.serialize_field("coeffs", &self.coeffs)?;
        s.serialize_field("exact", &false)?;
        s.end()
    }
}
