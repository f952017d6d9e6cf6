//! Dyadic rescaling along a principal weight.
//!
//! For a weight `kappa` supporting the phase on a compact edge, the
//! scaling `2^k phi(2^{-k kappa_1} x_1, 2^{-k kappa_2} x_2)` fixes the
//! principal part and multiplies every remainder term by
//! `2^{-k (kappa . alpha - 1)}`.  The positive excesses
//! `kappa . alpha - 1` quantify how fast the remainder dies; the check
//! below measures this numerically on an annulus and compares the
//! fitted rate with the exact minimum excess.

use super::OscError;
use crate::newton::{kappa_degree_split, Weight};
use crate::poly::{rational_to_f64, Polynomial, Rational};
use num::{One, ToPrimitive};

/// A remainder monomial with its scaling excess `kappa . alpha - 1 > 0`.
#[derive(Debug, Clone)]
pub struct RemainderTerm {
    pub alpha: (u32, u32),
    pub coeff: Rational,
    pub excess: Rational,
}

/// The phase split induced by a principal weight.
#[derive(Debug, Clone)]
pub struct RescaleSplit {
    pub kappa: Weight,
    pub principal: Polynomial,
    pub remainder: Vec<RemainderTerm>,
}

impl RescaleSplit {
    /// Value of the rescaled remainder `2^k phi_r(delta_{2^-k} x)` at `x`.
    pub fn remainder_eval(&self, k: u32, x1: f64, x2: f64) -> f64 {
        let mut acc = 0.0;
        for term in &self.remainder {
            let excess = rational_to_f64(&term.excess);
            let scale = 2f64.powf(-(k as f64) * excess);
            acc += rational_to_f64(&term.coeff)
                * scale
                * x1.powi(term.alpha.0 as i32)
                * x2.powi(term.alpha.1 as i32);
        }
        acc
    }

    /// Exact decay rate: the smallest excess, or `None` for a pure
    /// principal-part phase.
    pub fn exact_epsilon(&self) -> Option<Rational> {
        self.remainder.iter().map(|t| t.excess.clone()).min()
    }
}

/// Splits `phi` into its `kappa`-principal part and the scaling
/// remainder.  Fails with [`OscError::PrincipalFaceNotEdge`] unless the
/// weight supports the whole phase with at least two monomials on the
/// weight-one line (a compact edge of the Newton polyhedron).
pub fn rescale_phase(phi: &Polynomial, kappa: &Weight) -> Result<RescaleSplit, OscError> {
    let one = Rational::one();
    let mut principal = Polynomial::zero();
    let mut remainder = Vec::new();
    for (degree, part) in kappa_degree_split(phi, kappa) {
        if degree < one {
            return Err(OscError::PrincipalFaceNotEdge);
        }
        if degree == one {
            principal = part;
        } else {
            let excess = &degree - &one;
            for (&alpha, coeff) in part.terms() {
                remainder.push(RemainderTerm {
                    alpha,
                    coeff: coeff.clone(),
                    excess: excess.clone(),
                });
            }
        }
    }
    if principal.num_terms() < 2 {
        return Err(OscError::PrincipalFaceNotEdge);
    }
    Ok(RescaleSplit { kappa: kappa.clone(), principal, remainder })
}

/// Numerical audit of one rescaling split.
#[derive(Debug, Clone)]
pub struct RescaleCheck {
    pub kappa: Weight,
    pub k_grid: Vec<u32>,
    /// Sup of the rescaled remainder over the annulus `1 <= |x| <= 2`,
    /// one entry per `k`.
    pub sup_norms: Vec<f64>,
    /// Negated slope of `log2 sup` against `k`; `None` when the
    /// remainder vanishes identically.
    pub fitted_eps: Option<f64>,
    pub exact_eps: Option<Rational>,
}

/// Runs [`rescale_phase`] and measures the remainder sup-norms for
/// `k = 0 ..= k_max` on a fixed polar sampling of the annulus.
pub fn rescale_check(
    phi: &Polynomial,
    kappa: &Weight,
    k_max: u32,
) -> Result<RescaleCheck, OscError> {
    let split = rescale_phase(phi, kappa)?;
    let k_grid: Vec<u32> = (0..=k_max).collect();
    let radii = 48;
    let angles = 96;
    let sup_norms: Vec<f64> = k_grid
        .iter()
        .map(|&k| {
            let mut sup = 0.0f64;
            for i in 0..=radii {
                let r = 1.0 + i as f64 / radii as f64;
                for j in 0..angles {
                    let th = 2.0 * std::f64::consts::PI * j as f64 / angles as f64;
                    let v = split.remainder_eval(k, r * th.cos(), r * th.sin());
                    sup = sup.max(v.abs());
                }
            }
            sup
        })
        .collect();

    // least-squares slope of log2(sup) against k over the positive entries
    let points: Vec<(f64, f64)> = k_grid
        .iter()
        .zip(&sup_norms)
        .filter(|(_, &s)| s > 0.0)
        .map(|(&k, &s)| (k as f64, s.log2()))
        .collect();
    let fitted_eps = if points.len() >= 2 {
        let n = points.len() as f64;
        let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
        let my = points.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        Some(-sxy / sxx)
    } else {
        None
    };

    Ok(RescaleCheck {
        kappa: split.kappa.clone(),
        k_grid,
        sup_norms,
        fitted_eps,
        exact_eps: split.exact_epsilon(),
    })
}

/// Exact excesses as floats, handy for reports.
pub fn excess_to_f64(e: &Rational) -> f64 {
    e.numer().to_f64().unwrap_or(f64::NAN) / e.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rint};

    fn weight(n1: i64, d1: i64, n2: i64, d2: i64) -> Weight {
        Weight { k1: rat(n1, d1), k2: rat(n2, d2) }
    }

    #[test]
    fn the_reference_phase_scales_at_rate_four_thirds() {
        // x1 x2^2 + x1^3 + x1^7 under kappa = (1/3, 1/3)
        let phi = Polynomial::from_terms([
            ((1, 2), rint(1)),
            ((3, 0), rint(1)),
            ((7, 0), rint(1)),
        ]);
        let check = rescale_check(&phi, &weight(1, 3, 1, 3), 20).unwrap();
        assert_eq!(check.exact_eps, Some(rat(4, 3)));
        let fitted = check.fitted_eps.unwrap();
        assert!(
            (fitted - 4.0 / 3.0).abs() < 4.0 / 30.0,
            "fitted {fitted} not within 10% of 4/3"
        );
        // single remainder term: the fit is essentially exact
        assert!((fitted - 4.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn pure_principal_part_has_zero_remainder() {
        let phi = Polynomial::from_terms([((1, 2), rint(1)), ((3, 0), rint(1))]);
        let check = rescale_check(&phi, &weight(1, 3, 1, 3), 20).unwrap();
        assert!(check.sup_norms.iter().all(|&s| s == 0.0));
        assert_eq!(check.fitted_eps, None);
        assert_eq!(check.exact_eps, None);
    }

    #[test]
    fn mixed_remainders_decay_at_the_smallest_excess() {
        // x2^2 + x1^3 edge, kappa = (1/3, 1/2); remainders x1^4 (excess
        // 1/3) and x1^2 x2^2 (excess 2/3)
        let phi = Polynomial::from_terms([
            ((0, 2), rint(1)),
            ((3, 0), rint(1)),
            ((4, 0), rint(1)),
            ((2, 2), rint(1)),
        ]);
        let check = rescale_check(&phi, &weight(1, 3, 1, 2), 20).unwrap();
        assert_eq!(check.exact_eps, Some(rat(1, 3)));
        for k in 5..20 {
            assert!(
                check.sup_norms[k + 1] < check.sup_norms[k],
                "sup norms must decrease beyond the transient"
            );
        }
    }

    #[test]
    fn non_supporting_weights_are_rejected() {
        // kappa = (1/3, 1/3) undercuts x2^2
        let phi = Polynomial::from_terms([((0, 2), rint(1)), ((3, 0), rint(1))]);
        assert!(matches!(
            rescale_phase(&phi, &weight(1, 3, 1, 3)),
            Err(OscError::PrincipalFaceNotEdge)
        ));
        // single-monomial principal part: a vertex, not an edge
        let vertex = Polynomial::from_terms([((2, 2), rint(1)), ((4, 4), rint(1))]);
        assert!(matches!(
            rescale_phase(&vertex, &weight(1, 4, 1, 4)),
            Err(OscError::PrincipalFaceNotEdge)
        ));
    }
}
