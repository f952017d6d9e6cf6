//! Membership in the root-jet region decomposition.
//!
//! Near a non-adapted degenerate point the plane splits into a narrow horn
//! around the principal root jet, an exterior region, and a transition zone
//! between them.  With `v = x2 - psi(x1)`, the horn is `|v| <= N |x1|^a`
//! and the exterior is `|v| >= eps |x1|^m`, where `m` is the contact order
//! of the root jet and `a` is the ratio of the adapted weights.  All
//! comparisons are exact: a rational exponent `a = p/q` is cleared by
//! raising both sides to the `q`-th power.

use super::SingularityReport;
use crate::poly::{rat, Jet, Rational};
use num::{Signed, ToPrimitive, Zero};

/// Where a point sits relative to the decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// Inside the horn around the root jet: `|v| <= N |x1|^a`.
    Dpr,
    /// Away from the root jet: `|v| >= eps |x1|^m`.
    Dext,
    /// Strictly between the two bounds.
    Transition,
    /// Exactly on either bounding curve.
    BoundaryTie,
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Region::Dpr => write!(f, "Dpr"),
            Region::Dext => write!(f, "Dext"),
            Region::Transition => write!(f, "transition"),
            Region::BoundaryTie => write!(f, "boundary-tie"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum RegionError {
    #[error("region membership is undefined on the axis x1 = 0")]
    UndefinedAtAxis,
}

/// Parameters of the decomposition.  The bounds hold for every
/// sufficiently small `eps` and large `cap`; the defaults `1/10` and `10`
/// are a practical choice, not a derived one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionParams {
    /// Small constant bounding the exterior region from below.
    pub epsilon: Rational,
    /// Large constant bounding the horn from above (the `N` of the bound).
    pub cap: Rational,
    /// Contact order of the root jet.
    pub m: u32,
    /// Horn exponent: ratio `k2 / k1` of the adapted weight.
    pub a: Rational,
}

impl RegionParams {
    pub fn new(epsilon: Rational, cap: Rational, m: u32, a: Rational) -> Self {
        RegionParams { epsilon, cap, m, a }
    }

    /// Default constants `eps = 1/10`, `cap = 10`.
    pub fn defaults(m: u32, a: Rational) -> Self {
        RegionParams::new(rat(1, 10), rat(10, 1), m, a)
    }

    /// Extracts the decomposition data from a classification report.
    /// `None` when the class carries no root jet or the jet vanishes to
    /// the full order (infinite contact leaves nothing to decompose).
    pub fn from_report(
        report: &SingularityReport,
        epsilon: Rational,
        cap: Rational,
    ) -> Option<Self> {
        let m = report.contact_order?;
        let a = &report.adapted_weight.k2 / &report.adapted_weight.k1;
        Some(RegionParams::new(epsilon, cap, m, a))
    }
}

/// Decides which region the point `(x1, x2)` belongs to, exactly.  Ties on
/// either bounding curve win over the open regions; the horn wins over the
/// exterior where the two overlap (possible once `|x1|` is large).
pub fn region_membership(
    x1: &Rational,
    x2: &Rational,
    psi: &Jet,
    params: &RegionParams,
) -> Result<Region, RegionError> {
    if x1.is_zero() {
        return Err(RegionError::UndefinedAtAxis);
    }
    let v = (x2 - psi.poly().eval(x1, &Rational::zero())).abs();
    let exterior_bound = &params.epsilon * num::pow(x1.abs(), params.m as usize);

    let q = params
        .a
        .denom()
        .to_usize()
        .expect("horn exponent denominator fits a machine word");
    let p = params
        .a
        .numer()
        .to_usize()
        .expect("horn exponent is positive and small");
    let horn_lhs = num::pow(v.clone(), q);
    let horn_rhs = num::pow(params.cap.clone(), q) * num::pow(x1.abs(), p);

    if v == exterior_bound || horn_lhs == horn_rhs {
        Ok(Region::BoundaryTie)
    } else if horn_lhs < horn_rhs {
        Ok(Region::Dpr)
    } else if v > exterior_bound {
        Ok(Region::Dext)
    } else {
        Ok(Region::Transition)
    }
}
