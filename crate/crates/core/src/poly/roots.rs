//! Exact real-root counting and isolation for integer polynomials.
//!
//! A polynomial is split into the chain `h_1, h_2, ...` where `h_i` is the
//! square-free product of the distinct roots of multiplicity at least `i`.
//! Each `h_i` gets a Sturm sequence (built from sign-preserving pseudo
//! remainders, so everything stays in `Z[x]`); root intervals are isolated
//! by bisection at dyadic points and refined by sign changes.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{FloatPolynomial, Polynomial};
use crate::error::{Error, Result};

/// Slack used for root comparisons.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Width to which isolated roots are refined.
pub const DEFAULT_REFINE_TOL: f64 = 1e-12;

/// Real roots in non-decreasing order, repeated by multiplicity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootList {
    roots: Vec<f64>,
}

impl RootList {
    pub fn as_slice(&self) -> &[f64] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn max(&self) -> Option<f64> {
        self.roots.last().copied()
    }

    pub fn min(&self) -> Option<f64> {
        self.roots.first().copied()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.roots
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

/// Remainder of `a` by `b`, multiplied by some positive integer and reduced
/// to its primitive part.
fn pseudo_rem(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let db = b.degree();
    let lc = b.leading().expect("divisor must be nonzero").clone();
    let lc_abs = lc.abs();
    let lc_sign = lc.signum();
    let mut r: Vec<BigInt> = a.coeffs().to_vec();
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let lead = r.last().cloned().unwrap_or_default();
        let factor = &lc_sign * &lead;
        for c in r.iter_mut() {
            *c *= &lc_abs;
        }
        for (j, bc) in b.coeffs().iter().enumerate() {
            r[j + shift] -= &factor * bc;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    Polynomial::new(r).primitive_part()
}

/// Primitive gcd with positive leading coefficient.
fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let (mut x, mut y) = (a.primitive_part(), b.primitive_part());
    if x.degree() < y.degree() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = r;
    }
    if x.leading().is_some_and(Signed::is_negative) {
        x = -&x;
    }
    x
}

/// Exact quotient `a / b` in `Z[x]`; errors if the division leaves a
/// remainder or a non-integral coefficient.
fn div_exact_poly(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    let db = b.degree();
    let lc = b
        .leading()
        .ok_or_else(|| Error::Invariant("polynomial division by zero".into()))?;
    let mut r: Vec<BigInt> = a.coeffs().to_vec();
    if r.len() <= db {
        return if r.is_empty() {
            Ok(Polynomial::zero())
        } else {
            Err(Error::Invariant("inexact polynomial division".into()))
        };
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let (coef, rem) = r[k + db].div_rem(lc);
        if !rem.is_zero() {
            return Err(Error::Invariant("inexact polynomial division".into()));
        }
        for (j, bc) in b.coeffs().iter().enumerate() {
            r[k + j] -= &coef * bc;
        }
        q[k] = coef;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return Err(Error::Invariant("inexact polynomial division".into()));
    }
    Ok(Polynomial::new(q))
}

/// `h_1, h_2, ...`: `h_i` is the square-free, primitive polynomial whose
/// roots are exactly the roots of `p` of multiplicity at least `i`.
pub fn square_free_factors(p: &Polynomial) -> Result<Vec<Polynomial>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    // g_0 = p, g_{i+1} = gcd(g_i, g_i'), h_{i+1} = g_i / g_{i+1}
    let mut out = Vec::new();
    let mut g = p.primitive_part();
    while g.degree() > 0 {
        let next = gcd(&g, &g.derivative());
        out.push(div_exact_poly(&g, &next)?);
        g = next;
    }
    Ok(out)
}

/// Sturm sequence of a square-free polynomial.
fn sturm_chain(h: &Polynomial) -> Vec<Polynomial> {
    let mut chain = vec![h.clone(), h.derivative().primitive_part()];
    loop {
        let len = chain.len();
        if chain[len - 1].degree() == 0 {
            break;
        }
        let r = -&pseudo_rem(&chain[len - 2], &chain[len - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(r);
    }
    chain
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign_of(b: &BigInt) -> i8 {
    match b.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// Distinct real roots of a square-free polynomial.
fn distinct_real_count(chain: &[Polynomial]) -> usize {
    let at_pos = chain.iter().map(|q| sign_of(q.leading().unwrap()));
    let at_neg = chain.iter().map(|q| {
        let s = sign_of(q.leading().unwrap());
        if q.degree() % 2 == 1 {
            -s
        } else {
            s
        }
    });
    sign_changes(at_neg) - sign_changes(at_pos)
}

/// Number of real roots of `p`, counted with multiplicity. Exact.
pub fn real_root_count(p: &Polynomial) -> Result<usize> {
    Ok(square_free_factors(p)?
        .iter()
        .map(|h| distinct_real_count(&sturm_chain(h)))
        .sum())
}

/// Exact verdict: every root of `p` is real. The zero polynomial is not
/// real-rooted; nonzero constants are (vacuously).
pub fn is_real_rooted(p: &Polynomial) -> bool {
    match real_root_count(p) {
        Ok(count) => count == p.degree(),
        Err(_) => false,
    }
}

/// A dyadic rational `num / 2^exp`.
#[derive(Debug, Clone)]
struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    fn int(v: BigInt) -> Self {
        Dyadic { num: v, exp: 0 }
    }

    fn with_exp(&self, exp: u32) -> BigInt {
        &self.num << (exp - self.exp) as usize
    }

    fn midpoint(a: &Dyadic, b: &Dyadic) -> Dyadic {
        let exp = a.exp.max(b.exp);
        Dyadic {
            num: a.with_exp(exp) + b.with_exp(exp),
            exp: exp + 1,
        }
    }

    /// `a + (b - a) * t / 2^k`
    fn lerp(a: &Dyadic, b: &Dyadic, t: u64, k: u32) -> Dyadic {
        let exp = a.exp.max(b.exp) + k;
        let an = a.with_exp(exp);
        let bn = b.with_exp(exp);
        let diff = &bn - &an;
        Dyadic {
            num: an + ((diff * BigInt::from(t)) >> k as usize),
            exp,
        }
    }

    fn to_f64(&self) -> f64 {
        // Exact enough for refined endpoints; values are O(1e6) at most.
        let shift = self.num.bits().saturating_sub(60);
        let top = (&self.num >> shift as usize).to_f64().unwrap_or(f64::NAN);
        top * 2f64.powi(shift as i32 - self.exp as i32)
    }

    fn width(a: &Dyadic, b: &Dyadic) -> f64 {
        let exp = a.exp.max(b.exp);
        Dyadic {
            num: b.with_exp(exp) - a.with_exp(exp),
            exp,
        }
        .to_f64()
    }
}

/// Sign of `p` at a dyadic point (homogenized Horner, exact).
fn sign_at(p: &Polynomial, x: &Dyadic) -> i8 {
    let coeffs = p.coeffs();
    let Some(lead) = coeffs.last() else {
        return 0;
    };
    let d = coeffs.len() - 1;
    let mut acc = lead.clone();
    for k in (0..d).rev() {
        acc = acc * &x.num + (&coeffs[k] << (x.exp as usize * (d - k)));
    }
    sign_of(&acc)
}

fn variations_at(chain: &[Polynomial], x: &Dyadic) -> usize {
    sign_changes(chain.iter().map(|q| sign_at(q, x)))
}

/// Power of two strictly above every root's absolute value (Cauchy bound).
fn root_bound(p: &Polynomial) -> Dyadic {
    let lead_bits = p.leading().unwrap().bits();
    let max_bits = p.coeffs().iter().map(|c| c.bits()).max().unwrap_or(0);
    let b = (max_bits.saturating_sub(lead_bits) + 2) as usize;
    Dyadic::int(BigInt::one() << b)
}

/// Roots of a square-free polynomial, each refined to an interval narrower
/// than `tol` and reported as its midpoint.
fn square_free_roots(h: &Polynomial, tol: f64) -> Vec<f64> {
    let chain = sturm_chain(h);
    let total = distinct_real_count(&chain);
    if total == 0 {
        return Vec::new();
    }
    let bound = root_bound(h);
    let lo = Dyadic {
        num: -bound.num.clone(),
        exp: 0,
    };
    let mut out = Vec::with_capacity(total);
    // Invariant: endpoints are never roots of h.
    let mut stack = vec![(lo, bound, total)];
    while let Some((a, b, count)) = stack.pop() {
        match count {
            0 => {}
            1 => out.push(refine(h, a, b, tol)),
            _ => {
                let mut mid = Dyadic::midpoint(&a, &b);
                let mut k = 3;
                while sign_at(h, &mid) == 0 {
                    // Nudge off an exact dyadic root; only finitely many exist.
                    mid = Dyadic::lerp(&a, &b, (1 << (k - 1)) + 1, k);
                    k += 1;
                }
                let va = variations_at(&chain, &a);
                let vm = variations_at(&chain, &mid);
                let vb = variations_at(&chain, &b);
                stack.push((mid.clone(), b, vm - vb));
                stack.push((a, mid, va - vm));
            }
        }
    }
    out
}

/// Bisection on a sign change; `h` has exactly one simple root in `(a, b)`.
fn refine(h: &Polynomial, mut a: Dyadic, mut b: Dyadic, tol: f64) -> f64 {
    let sa = sign_at(h, &a);
    while Dyadic::width(&a, &b) > tol {
        let mid = Dyadic::midpoint(&a, &b);
        match sign_at(h, &mid) {
            0 => return mid.to_f64(),
            s if s == sa => a = mid,
            _ => b = mid,
        }
    }
    Dyadic::midpoint(&a, &b).to_f64()
}

/// All real roots of `p` with multiplicity, each within `tol` of the true
/// value. Non-real roots are simply absent, so the list is shorter than
/// the degree exactly when `p` is not real-rooted.
pub fn real_roots(p: &Polynomial, tol: f64) -> Result<RootList> {
    check_tol(tol)?;
    let mut roots: Vec<f64> = square_free_factors(p)?
        .iter()
        .flat_map(|h| square_free_roots(h, tol))
        .collect();
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap_or(Ordering::Equal));
    Ok(RootList { roots })
}

fn real_rooted_roots(p: &Polynomial, tol: f64) -> Result<RootList> {
    check_tol(tol)?;
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == 0 {
        return Err(Error::DegreeMismatch("a constant has no roots".into()));
    }
    let roots = real_roots(p, tol.min(DEFAULT_REFINE_TOL))?;
    if roots.len() < p.degree() {
        return Err(Error::NotRealRooted {
            real_roots: roots.len(),
            degree: p.degree(),
        });
    }
    Ok(roots)
}

/// Largest root of a real-rooted polynomial.
pub fn largest_root(p: &Polynomial, tol: f64) -> Result<f64> {
    Ok(real_rooted_roots(p, tol)?.max().unwrap_or(0.0))
}

/// Largest absolute value of a root of a real-rooted polynomial.
pub fn max_abs_root(p: &Polynomial, tol: f64) -> Result<f64> {
    let roots = real_rooted_roots(p, tol)?;
    Ok(roots
        .as_slice()
        .iter()
        .fold(0.0, |acc: f64, r| acc.max(r.abs())))
}

impl FloatPolynomial {
    /// Real-rootedness of the exact dyadic value of the coefficients.
    pub fn is_real_rooted(&self) -> bool {
        match self.to_scaled_exact() {
            Ok((p, _)) => is_real_rooted(&p),
            Err(_) => false,
        }
    }

    pub fn real_roots(&self, tol: f64) -> Result<RootList> {
        real_roots(&self.to_scaled_exact()?.0, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    /// Independent oracle: bisection on sign changes over a fine grid.
    fn grid_bisection_roots(q: &Polynomial, lo: f64, hi: f64) -> Vec<f64> {
        let steps = 20000;
        let h = (hi - lo) / steps as f64;
        let mut out = Vec::new();
        for i in 0..steps {
            let (mut a, mut b) = (lo + i as f64 * h, lo + (i + 1) as f64 * h);
            let (fa, fb) = (q.eval_f64(a), q.eval_f64(b));
            if fa == 0.0 {
                out.push(a);
                continue;
            }
            if fa * fb < 0.0 {
                for _ in 0..200 {
                    let m = 0.5 * (a + b);
                    if q.eval_f64(m) * q.eval_f64(a) <= 0.0 {
                        b = m;
                    } else {
                        a = m;
                    }
                }
                out.push(0.5 * (a + b));
            }
        }
        out
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn roots_of_x2_minus_1() {
        let r = real_roots(&p(&[-1, 0, 1]), 1e-12).unwrap();
        assert!(close(r.as_slice(), &[-1.0, 1.0], 1e-12));
    }

    #[test]
    fn roots_of_x3_minus_3x() {
        let q = p(&[0, -3, 0, 1]);
        let r = real_roots(&q, 1e-12).unwrap();
        let oracle = grid_bisection_roots(&q, -3.1, 3.1);
        assert_eq!(oracle.len(), 3);
        assert!(close(r.as_slice(), &oracle, 1e-11));
        assert!(close(
            r.as_slice(),
            &[-1.7320508075688772, 0.0, 1.7320508075688772],
            1e-11
        ));
    }

    #[test]
    fn roots_of_quartic() {
        // x^4 - 4x^2 + 2: x^2 = 2 +- sqrt 2
        let q = p(&[2, 0, -4, 0, 1]);
        let r = real_roots(&q, 1e-12).unwrap();
        let big = (2.0 + 2f64.sqrt()).sqrt();
        let small = (2.0 - 2f64.sqrt()).sqrt();
        assert!(close(r.as_slice(), &[-big, -small, small, big], 1e-11));
        assert!((largest_root(&q, 1e-10).unwrap() - 1.8477590650225735).abs() < 1e-10);
    }

    #[test]
    fn repeated_roots_are_listed_with_multiplicity() {
        // (x - 1)^2 (x + 2)^3 x
        let q = Polynomial::from_roots(&[1, 1, -2, -2, -2, 0]);
        let r = real_roots(&q, 1e-12).unwrap();
        assert!(close(
            r.as_slice(),
            &[-2.0, -2.0, -2.0, 0.0, 1.0, 1.0],
            1e-11
        ));
        assert_eq!(real_root_count(&q).unwrap(), 6);
        assert!(is_real_rooted(&q));
    }

    #[test]
    fn square_free_chain_structure() {
        let q = Polynomial::from_roots(&[1, 1, 1, 2]);
        let h = square_free_factors(&q).unwrap();
        assert_eq!(h.len(), 3);
        assert_eq!(h[0], Polynomial::from_roots(&[1, 2]));
        assert_eq!(h[1], Polynomial::from_roots(&[1]));
        assert_eq!(h[2], Polynomial::from_roots(&[1]));
    }

    #[test]
    fn real_rootedness_verdicts() {
        assert!(!is_real_rooted(&p(&[1, 0, 1])));
        assert!(is_real_rooted(&p(&[0, -3, 0, 1])));
        assert!(is_real_rooted(&p(&[1, -2, 1])));
        assert!(!is_real_rooted(&Polynomial::zero()));
        // (x^2 + 1)^2 (x - 3): one real root out of five
        let q = &(&p(&[1, 0, 1]) * &p(&[1, 0, 1])) * &p(&[-3, 1]);
        assert_eq!(real_root_count(&q).unwrap(), 1);
    }

    #[test]
    fn largest_and_abs_examples() {
        assert!((largest_root(&p(&[-5, 1]), 1e-10).unwrap() - 5.0).abs() < 1e-12);
        assert!((max_abs_root(&p(&[-1, 0, 1]), 1e-10).unwrap() - 1.0).abs() < 1e-12);
        assert!((max_abs_root(&p(&[-2, 1, 1]), 1e-10).unwrap() - 2.0).abs() < 1e-12);
        assert!((max_abs_root(&p(&[0, -3, 0, 1]), 1e-10).unwrap() - 3f64.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn errors() {
        assert_eq!(
            real_roots(&p(&[-1, 0, 1]), 0.0).unwrap_err(),
            Error::InvalidTolerance(0.0)
        );
        assert_eq!(
            real_roots(&Polynomial::zero(), 1e-9).unwrap_err(),
            Error::ZeroPolynomial
        );
        assert!(real_roots(&p(&[7]), 1e-9).unwrap().is_empty());
        assert_eq!(
            largest_root(&p(&[1, 0, 1]), 1e-9).unwrap_err(),
            Error::NotRealRooted {
                real_roots: 0,
                degree: 2
            }
        );
    }

    #[test]
    fn dyadic_roots_hit_exactly() {
        // Roots 0, 1/2, -3/4 sit on bisection points.
        let q = &(&p(&[0, 1]) * &p(&[-1, 2])) * &p(&[3, 4]);
        let r = real_roots(&q, 1e-12).unwrap();
        assert!(close(r.as_slice(), &[-0.75, 0.0, 0.5], 1e-12));
    }

    #[test]
    fn float_polynomial_real_rootedness() {
        let f = FloatPolynomial::new(vec![-0.5, 0.0, 2.0]);
        assert!(f.is_real_rooted());
        let r = f.real_roots(1e-12).unwrap();
        assert!(close(r.as_slice(), &[-0.5, 0.5], 1e-12));
        assert!(!FloatPolynomial::new(vec![0.5, 0.0, 2.0]).is_real_rooted());
    }
}
