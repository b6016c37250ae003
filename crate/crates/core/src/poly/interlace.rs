//! Interlacing predicates.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::roots::{is_real_rooted, real_roots, DEFAULT_REFINE_TOL};
use super::Polynomial;
use crate::error::{Error, Result};

/// Seed for the pseudo-random convex weights appended to the fixed grid.
pub const SAMPLED_WEIGHTS_SEED: u64 = 0x1e7a_c1f0;

const RANDOM_WEIGHTS: usize = 5;
const RANDOM_WEIGHT_BITS: u32 = 20;

/// Convex weights `num / den` sampled when cross-checking a common
/// interlacing: the grid `0, 0.1, ..., 1` and a few seeded dyadic values.
fn weight_fractions() -> Vec<(u64, u64)> {
    let mut out: Vec<(u64, u64)> = (0..=10).map(|j| (j, 10)).collect();
    let den = 1u64 << RANDOM_WEIGHT_BITS;
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLED_WEIGHTS_SEED);
    out.extend((0..RANDOM_WEIGHTS).map(|_| (rng.random_range(1..den), den)));
    out
}

/// The sampled convex weights as floats, in sampling order.
pub fn convex_weights() -> Vec<f64> {
    weight_fractions()
        .into_iter()
        .map(|(num, den)| num as f64 / den as f64)
        .collect()
}

fn roots_of_real_rooted(p: &Polynomial) -> Result<Vec<f64>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let roots = real_roots(p, DEFAULT_REFINE_TOL)?;
    if roots.len() < p.degree() {
        return Err(Error::NotRealRooted {
            real_roots: roots.len(),
            degree: p.degree(),
        });
    }
    Ok(roots.into_vec())
}

/// Whether `g` (degree `n - 1`) interlaces `f` (degree `n`): the sorted
/// roots alternate `f, g, f, ..., g, f`, each comparison allowing `tol`.
pub fn interlaces(g: &Polynomial, f: &Polynomial, tol: f64) -> Result<bool> {
    if g.is_zero() || f.is_zero() || g.degree() + 1 != f.degree() {
        return Err(Error::DegreeMismatch(format!(
            "interlacer must have degree {} - 1, got {}",
            f.degree(),
            g.degree()
        )));
    }
    let beta = roots_of_real_rooted(f)?;
    let alpha = roots_of_real_rooted(g)?;
    Ok(alpha
        .iter()
        .enumerate()
        .all(|(i, a)| beta[i] <= a + tol && *a <= beta[i + 1] + tol))
}

/// Both halves of the common-interlacing decision.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommonInterlacing {
    /// `max(a_i, b_i) <= min(a_{i+1}, b_{i+1}) + tol` for consecutive roots.
    pub interval_criterion: bool,
    /// Every sampled convex combination is real-rooted (exact check).
    pub combinations_real_rooted: bool,
    /// Weights whose combination failed, if any.
    pub failed_weights: Vec<f64>,
}

impl CommonInterlacing {
    pub fn holds(&self) -> bool {
        self.interval_criterion && self.combinations_real_rooted
    }
}

/// Runs both the root-interval criterion and the convex-combination cross
/// check on two real-rooted polynomials of equal degree with positive
/// leading coefficients.
pub fn common_interlacing_detail(
    f1: &Polynomial,
    f2: &Polynomial,
    tol: f64,
) -> Result<CommonInterlacing> {
    if f1.is_zero() || f2.is_zero() || f1.degree() != f2.degree() {
        return Err(Error::DegreeMismatch(format!(
            "common interlacing needs equal degrees, got {} and {}",
            f1.degree(),
            f2.degree()
        )));
    }
    for f in [f1, f2] {
        if f.leading()
            .is_some_and(|c| c.sign() != num_bigint::Sign::Plus)
        {
            return Err(Error::DegreeMismatch(
                "common interlacing needs positive leading coefficients".into(),
            ));
        }
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    let a = roots_of_real_rooted(f1)?;
    let b = roots_of_real_rooted(f2)?;
    let interval_criterion =
        (0..a.len().saturating_sub(1)).all(|i| a[i].max(b[i]) <= a[i + 1].min(b[i + 1]) + tol);

    let mut failed_weights = Vec::new();
    if f1 != f2 {
        for (num, den) in weight_fractions() {
            // den * (w f1 + (1 - w) f2) with w = num / den, exactly
            let combo = &f1.scale(&BigInt::from(num)) + &f2.scale(&BigInt::from(den - num));
            if !is_real_rooted(&combo) {
                failed_weights.push(num as f64 / den as f64);
            }
        }
    }
    Ok(CommonInterlacing {
        interval_criterion,
        combinations_real_rooted: failed_weights.is_empty(),
        failed_weights,
    })
}

/// True iff `f1` and `f2` have a common interlacing: the interval criterion
/// holds and every sampled convex combination is real-rooted.
pub fn common_interlacing(f1: &Polynomial, f2: &Polynomial, tol: f64) -> Result<bool> {
    Ok(common_interlacing_detail(f1, f2, tol)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    #[test]
    fn interlaces_examples() {
        assert!(interlaces(&p(&[0, 1]), &p(&[-1, 0, 1]), 1e-10).unwrap());
        assert!(!interlaces(&p(&[-2, 1]), &p(&[-1, 0, 1]), 1e-10).unwrap());
        assert!(interlaces(&p(&[-2, 0, 1]), &p(&[0, -3, 0, 1]), 1e-10).unwrap());
    }

    #[test]
    fn interlaces_rejects_degree_mismatch() {
        assert!(matches!(
            interlaces(&p(&[-1, 0, 1]), &p(&[-1, 0, 1]), 1e-10),
            Err(Error::DegreeMismatch(_))
        ));
        assert!(matches!(
            interlaces(&p(&[0, 1]), &p(&[1, 0, 1]), 1e-10),
            Err(Error::NotRealRooted { .. })
        ));
    }

    #[test]
    fn derivative_interlaces() {
        let f = Polynomial::from_roots(&[-3, -1, 0, 0, 2, 5]);
        assert!(interlaces(&f.derivative(), &f, 1e-10).unwrap());
    }

    #[test]
    fn common_interlacing_examples() {
        let f = p(&[-1, 0, 1]);
        assert!(common_interlacing(&f, &f, 1e-10).unwrap());

        // The two C_4 characteristic polynomials: x^2 (x^2 - 4) and (x^2 - 2)^2.
        let f1 = p(&[0, 0, -4, 0, 1]);
        let f2 = p(&[4, 0, -4, 0, 1]);
        let d = common_interlacing_detail(&f1, &f2, 1e-10).unwrap();
        assert!(d.interval_criterion);
        assert!(d.combinations_real_rooted);

        // (x^2 - 1) x^2 against (x^2 - 2)^2 fails: in y = x^2 the combination
        // y^2 - (4 - 3w) y + 4 (1 - w) has discriminant 9w^2 - 8w < 0 on (0, 8/9).
        let f1 = p(&[0, 0, -1, 0, 1]);
        let d = common_interlacing_detail(&f1, &f2, 1e-10).unwrap();
        assert!(!d.interval_criterion);
        assert!(d.failed_weights.contains(&0.5));
        assert!(!d.failed_weights.contains(&0.0) && !d.failed_weights.contains(&0.9));

        let g1 = Polynomial::from_roots(&[1, 2]);
        let g2 = Polynomial::from_roots(&[4, 5]);
        let d = common_interlacing_detail(&g1, &g2, 1e-10).unwrap();
        assert!(!d.interval_criterion);
        assert!(d.failed_weights.contains(&0.5));
        assert!(!common_interlacing(&g1, &g2, 1e-10).unwrap());
    }

    #[test]
    fn half_combination_of_disjoint_pair_has_no_real_roots() {
        // (x-1)(x-2)/2 + (x-4)(x-5)/2 = x^2 - 6x + 11
        let g1 = Polynomial::from_roots(&[1, 2]);
        let g2 = Polynomial::from_roots(&[4, 5]);
        let half = &g1 + &g2;
        assert_eq!(half, p(&[22, -12, 2]));
        assert!(!is_real_rooted(&half));
    }

    #[test]
    fn common_interlacing_rejects_bad_input() {
        assert!(common_interlacing(&p(&[-1, 0, 1]), &p(&[0, 1]), 1e-10).is_err());
        assert!(common_interlacing(&p(&[1, 0, -1]), &p(&[-1, 0, 1]), 1e-10).is_err());
        assert!(common_interlacing(&p(&[1, 0, 1]), &p(&[-1, 0, 1]), 1e-10).is_err());
    }

    #[test]
    fn weights_are_deterministic() {
        let w = convex_weights();
        assert_eq!(w.len(), 16);
        assert_eq!(w, convex_weights());
        assert!(w.iter().all(|x| (0.0..=1.0).contains(x)));
    }
}
