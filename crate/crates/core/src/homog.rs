//! Weighted-homogeneous polynomials: factorisation into branches, maximal
//! vanishing order on the unit circle, height, and the adaptedness test.
//!
//! A polynomial is `k`-homogeneous when every term satisfies `k . a = 1`.
//! Such a polynomial factors as `c * x1^v1 * x2^v2 * prod H_l^{m_l}` where
//! each branch factor `H_l` comes from an irreducible factor of a univariate
//! polynomial read off the lattice points of the supporting edge.  The
//! maximal multiplicity among the *real* branches drives the height and the
//! adaptedness criterion.

use crate::newton::{NewtonData, PrincipalFace, Weight};
use crate::poly::{
    real_root_multiplicities, rint, FactorError, Polynomial, Rational, UniPoly,
};
use num::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomogError {
    #[error("expected a nonzero polynomial")]
    ZeroPolynomial,
    #[error("term x1^{0}*x2^{1} is not of weighted degree one")]
    NotHomogeneous(u32, u32),
    #[error("weight components must be positive")]
    NonPositiveWeight,
    #[error("the polynomial vanishes identically on a probe line")]
    VanishesOnLine,
    #[error(transparent)]
    Factor(#[from] FactorError),
}

/// One branch factor `H_l(x1, x2)` of a weighted-homogeneous polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogFactor {
    /// The bivariate factor, irreducible over Q after dehomogenisation.
    pub form: Polynomial,
    /// Its univariate shadow `f_l(u)` under `u = x2^q / x1^p`.
    pub uni: UniPoly,
    pub multiplicity: u32,
    /// Number of distinct real roots of `f_l`, i.e. real branches.
    pub real_branches: usize,
}

/// Factorisation of a `k`-homogeneous polynomial over Q.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredForm {
    pub unit: Rational,
    /// Multiplicity of the `x1 = 0` axis.
    pub nu1: u32,
    /// Multiplicity of the `x2 = 0` axis.
    pub nu2: u32,
    /// `(p, q)` with `k2 / k1 = p / q` in lowest terms; branches look like
    /// `x2^q = c * x1^p`.
    pub step: (u32, u32),
    pub factors: Vec<HomogFactor>,
}

impl FactoredForm {
    /// Re-expands the factorisation; used to validate it.
    pub fn expand(&self) -> Polynomial {
        let mut acc = Polynomial::monomial(self.nu1, self.nu2, self.unit.clone());
        for f in &self.factors {
            for _ in 0..f.multiplicity {
                acc = acc.mul(&f.form);
            }
        }
        acc
    }

    /// Distinct real projective roots, axes included.  (Meaningful as a
    /// projective count when `p = q = 1`, the classically homogeneous case.)
    pub fn distinct_real_roots(&self) -> usize {
        let axes = (self.nu1 > 0) as usize + (self.nu2 > 0) as usize;
        axes + self.factors.iter().map(|f| f.real_branches).sum::<usize>()
    }

    /// The largest multiplicity among real branches, axes included.
    pub fn max_real_multiplicity(&self) -> u32 {
        let mut n = self.nu1.max(self.nu2);
        for f in &self.factors {
            if f.real_branches > 0 {
                n = n.max(f.multiplicity);
            }
        }
        n
    }
}

/// Factors a `k`-homogeneous polynomial into branch factors over Q.
pub fn factor_homogeneous(p: &Polynomial, k: &Weight) -> Result<FactoredForm, HomogError> {
    if p.is_zero() {
        return Err(HomogError::ZeroPolynomial);
    }
    if !k.k1.is_positive() || !k.k2.is_positive() {
        return Err(HomogError::NonPositiveWeight);
    }
    for (&(a, b), _) in p.terms() {
        if k.dot((a, b)) != Rational::one() {
            return Err(HomogError::NotHomogeneous(a, b));
        }
    }
    // k2/k1 = p/q in lowest terms.
    let ratio = &k.k2 / &k.k1;
    let (pp, qq) = (ratio.numer().clone(), ratio.denom().clone());
    use num::ToPrimitive;
    let pstep = pp.to_u32().expect("step fits in u32");
    let qstep = qq.to_u32().expect("step fits in u32");

    let support = p.support();
    let nu1 = support.iter().map(|&(a, _)| a).min().unwrap();
    let nu2 = support.iter().map(|&(_, b)| b).min().unwrap();
    let top = support.iter().map(|&(_, b)| b).max().unwrap();
    let span = top - nu2;
    if span % qstep != 0 {
        // cannot happen for a genuinely homogeneous polynomial
        return Err(HomogError::NotHomogeneous(nu1, top));
    }
    let m = span / qstep;

    // b(u): coefficient of u^i is the term at (nu1 + p(m-i), nu2 + q i).
    let mut coeffs = Vec::with_capacity(m as usize + 1);
    for i in 0..=m {
        coeffs.push(p.coeff(nu1 + pstep * (m - i), nu2 + qstep * i));
    }
    let b = UniPoly::new(coeffs);
    debug_assert_eq!(b.degree(), Some(m as usize));
    debug_assert!(!b.coeff(0).is_zero());

    let (unit, uni_factors) = crate::poly::factor_rational(&b)?;
    let mut factors = Vec::with_capacity(uni_factors.len());
    for (f, mult) in uni_factors {
        let d = f.degree().unwrap() as u32;
        let mut form = Polynomial::zero();
        for (i, c) in f.coeffs().iter().enumerate() {
            form.add_term(pstep * (d - i as u32), qstep * (i as u32), c.clone());
        }
        let real_branches = if d == 1 {
            1
        } else {
            real_root_multiplicities(&f)?.len()
        };
        factors.push(HomogFactor { form, uni: f, multiplicity: mult, real_branches });
    }
    let out = FactoredForm { unit, nu1, nu2, step: (pstep, qstep), factors };
    debug_assert_eq!(out.expand(), *p);
    Ok(out)
}

/// The maximal order of vanishing of `p` on the unit circle, computed on
/// the four charts `x1 = 1`, `x1 = -1` (root multiplicities) and `x2 = 1`,
/// `x2 = -1` (vanishing order at `t = 0`, the only direction the first two
/// charts miss).  Correct whenever `p` is weighted homogeneous.
pub fn max_root_multiplicity(p: &Polynomial) -> Result<u32, HomogError> {
    if p.is_zero() {
        return Err(HomogError::ZeroPolynomial);
    }
    let mut n = 0u32;
    for sign in [1i64, -1] {
        let chart = p.restrict_x1(&rint(sign));
        if chart.is_zero() {
            return Err(HomogError::VanishesOnLine);
        }
        for root in real_root_multiplicities(&chart)? {
            n = n.max(root.multiplicity);
        }
        let axis = p.restrict_x2(&rint(sign));
        match axis.valuation() {
            None => return Err(HomogError::VanishesOnLine),
            Some(v) => n = n.max(v as u32),
        }
    }
    Ok(n)
}

/// Height data of a weighted-homogeneous polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightData {
    /// Maximal vanishing order on the circle.
    pub n: u32,
    /// The weighted distance `1 / (k1 + k2)`.
    pub dh: Rational,
    /// `h = max(n, dh)`.
    pub h: Rational,
}

/// Computes `max(n(p), 1/|k|)` for a `k`-homogeneous `p`.
pub fn height_of_homogeneous(p: &Polynomial, k: &Weight) -> Result<HeightData, HomogError> {
    let n = max_root_multiplicity(p)?;
    let dh = k.distance();
    let h = if rint(n as i64) > dh { rint(n as i64) } else { dh.clone() };
    Ok(HeightData { n, dh, h })
}

/// Outcome of the adaptedness test for a coordinate frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptedReport {
    /// Whether the coordinates are adapted: the Newton distance already
    /// equals the height.
    pub adapted: bool,
    /// `n` of the principal part when the principal face is a compact edge.
    pub principal_n: Option<u32>,
    /// True when adaptedness followed from `k2/k1` not being an integer
    /// (which forces `n < d` without any root computation).  Recorded for
    /// cross-checking; the decision itself always uses `n <= d`.
    pub ratio_shortcut: bool,
}

/// Tests whether the coordinates producing `nd` are adapted.
///
/// A vertex or unbounded principal face is always adapted; a compact-edge
/// face is adapted exactly when the maximal real branch multiplicity `n` of
/// the principal part satisfies `n <= d`.
pub fn adaptedness(nd: &NewtonData) -> Result<AdaptedReport, HomogError> {
    match nd.principal_face() {
        PrincipalFace::Vertex(_)
        | PrincipalFace::VerticalRay
        | PrincipalFace::HorizontalRay => Ok(AdaptedReport {
            adapted: true,
            principal_n: None,
            ratio_shortcut: false,
        }),
        PrincipalFace::Edge(_) => {
            let w = nd
                .principal_weight()
                .expect("compact edges always carry a weight");
            let (wn, _) = w.normalized();
            let ratio = &wn.k2 / &wn.k1;
            let shortcut = !ratio.is_integer();
            let n = max_root_multiplicity(nd.principal_part())?;
            let adapted = rint(n as i64) <= *nd.distance();
            if shortcut {
                debug_assert!(adapted, "a non-integer ratio must imply n < d");
            }
            Ok(AdaptedReport { adapted, principal_n: Some(n), ratio_shortcut: shortcut })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::newton_polyhedron;
    use crate::poly::rat;

    fn poly(terms: &[(i64, u32, u32)]) -> Polynomial {
        Polynomial::from_terms(terms.iter().map(|&(c, a, b)| ((a, b), rint(c))))
    }

    #[test]
    fn factors_cusp_principal_part() {
        let p = poly(&[(1, 0, 2), (1, 3, 0)]);
        let k = Weight::new(rat(1, 3), rat(1, 2));
        let f = factor_homogeneous(&p, &k).unwrap();
        assert_eq!((f.nu1, f.nu2), (0, 0));
        assert_eq!(f.step, (3, 2));
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].multiplicity, 1);
        assert_eq!(f.factors[0].form, p);
        assert_eq!(f.factors[0].real_branches, 1); // u + 1 has root u = -1
        assert_eq!(f.expand(), p);
    }

    #[test]
    fn factors_degenerate_square_with_axis() {
        // x1 (x2 - x1^2)^2 with k = (1/5, 2/5)
        let shear = poly(&[(1, 0, 1), (-1, 2, 0)]);
        let p = poly(&[(1, 1, 0)]).mul(&shear.mul(&shear));
        let k = Weight::new(rat(1, 5), rat(2, 5));
        let f = factor_homogeneous(&p, &k).unwrap();
        assert_eq!((f.nu1, f.nu2), (1, 0));
        assert_eq!(f.step, (2, 1));
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].multiplicity, 2);
        assert_eq!(f.factors[0].form, shear);
        assert_eq!(f.expand(), p);
        assert_eq!(f.max_real_multiplicity(), 2);
    }

    #[test]
    fn cubic_with_three_real_lines() {
        // x1 x2^2 - x1^3 = x1 (x2 - x1)(x2 + x1)
        let p = poly(&[(1, 1, 2), (-1, 3, 0)]);
        let k = Weight::new(rat(1, 3), rat(1, 3));
        let f = factor_homogeneous(&p, &k).unwrap();
        assert_eq!((f.nu1, f.nu2), (1, 0));
        assert_eq!(f.distinct_real_roots(), 3);
        assert_eq!(f.max_real_multiplicity(), 1);
    }

    #[test]
    fn cubic_with_one_real_line() {
        // x1 x2^2 + x1^3 = x1 (x2^2 + x1^2)
        let p = poly(&[(1, 1, 2), (1, 3, 0)]);
        let k = Weight::new(rat(1, 3), rat(1, 3));
        let f = factor_homogeneous(&p, &k).unwrap();
        assert_eq!(f.distinct_real_roots(), 1);
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].real_branches, 0);
        assert_eq!(f.expand(), p);
    }

    #[test]
    fn rejects_inhomogeneous_input() {
        let p = poly(&[(1, 0, 2), (1, 3, 0), (1, 4, 0)]);
        let k = Weight::new(rat(1, 3), rat(1, 2));
        assert_eq!(
            factor_homogeneous(&p, &k),
            Err(HomogError::NotHomogeneous(4, 0))
        );
    }

    #[test]
    fn vanishing_order_of_cusp_part() {
        let p = poly(&[(1, 0, 2), (1, 3, 0)]);
        assert_eq!(max_root_multiplicity(&p).unwrap(), 1);
    }

    #[test]
    fn vanishing_order_sees_negative_chart() {
        // x2^2 - x1^4 = (x2 - x1^2)(x2 + x1^2): simple roots in both charts
        let p = poly(&[(1, 0, 2), (-1, 4, 0)]);
        assert_eq!(max_root_multiplicity(&p).unwrap(), 1);
        // (x2 - x1^2)^2 keeps a double root
        let shear = poly(&[(1, 0, 1), (-1, 2, 0)]);
        assert_eq!(max_root_multiplicity(&shear.mul(&shear)).unwrap(), 2);
    }

    #[test]
    fn vanishing_order_counts_axes() {
        // x1^3 x2^2: order 3 at (0, +-1), order 2 at (+-1, 0)
        let p = poly(&[(1, 3, 2)]);
        assert_eq!(max_root_multiplicity(&p).unwrap(), 3);
    }

    #[test]
    fn height_of_cusp() {
        let p = poly(&[(1, 0, 2), (1, 3, 0)]);
        let k = Weight::new(rat(1, 3), rat(1, 2));
        let h = height_of_homogeneous(&p, &k).unwrap();
        assert_eq!(h.n, 1);
        assert_eq!(h.dh, rat(6, 5));
        assert_eq!(h.h, rat(6, 5));
    }

    #[test]
    fn height_dominated_by_root_order() {
        // (x2 - x1^2)^2 with k = (1/4, 1/2): n = 2 beats dh = 4/3
        let shear = poly(&[(1, 0, 1), (-1, 2, 0)]);
        let p = shear.mul(&shear);
        let k = Weight::new(rat(1, 4), rat(1, 2));
        let h = height_of_homogeneous(&p, &k).unwrap();
        assert_eq!(h.n, 2);
        assert_eq!(h.dh, rat(4, 3));
        assert_eq!(h.h, rint(2));
    }

    #[test]
    fn adapted_cusp_and_nonadapted_shear() {
        let cusp = poly(&[(1, 0, 2), (1, 3, 0)]);
        let nd = newton_polyhedron(&cusp).unwrap();
        let rep = adaptedness(&nd).unwrap();
        assert!(rep.adapted);
        assert_eq!(rep.principal_n, Some(1));
        assert!(rep.ratio_shortcut); // 3/2 is not an integer

        // (x2 - x1^2)^2 + x1^5: principal n = 2 > d = 4/3
        let shear = poly(&[(1, 0, 1), (-1, 2, 0)]);
        let p = shear.mul(&shear).add(&poly(&[(1, 5, 0)]));
        let nd = newton_polyhedron(&p).unwrap();
        let rep = adaptedness(&nd).unwrap();
        assert!(!rep.adapted);
        assert_eq!(rep.principal_n, Some(2));
        assert!(!rep.ratio_shortcut); // ratio (1/2)/(1/4) = 2 is an integer
    }

    #[test]
    fn vertex_face_is_adapted() {
        let p = poly(&[(1, 2, 2), (1, 5, 1), (1, 1, 6)]);
        let nd = newton_polyhedron(&p).unwrap();
        let rep = adaptedness(&nd).unwrap();
        assert!(rep.adapted);
        assert_eq!(rep.principal_n, None);
    }

    #[test]
    fn d5_is_adapted_with_n_one() {
        // x1 x2^2 + x1^4, d = 8/5
        let p = poly(&[(1, 1, 2), (1, 4, 0)]);
        let nd = newton_polyhedron(&p).unwrap();
        assert_eq!(nd.distance(), &rat(8, 5));
        let rep = adaptedness(&nd).unwrap();
        assert!(rep.adapted);
        assert_eq!(rep.principal_n, Some(1));
        let w = nd.principal_weight().unwrap();
        assert_eq!((w.k1, w.k2), (rat(1, 4), rat(3, 8)));
    }
}
