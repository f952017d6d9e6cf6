//! Truncated jets and the series operations built on them.
//!
//! A [`Jet`] is a polynomial together with a total-degree truncation order
//! and a flag recording whether anything beyond that order was ever
//! discarded.  The flag is sticky: once a tail is dropped, every result
//! derived from the jet reports `truncated = true`, so callers can tell an
//! exact polynomial identity from one that only holds to the working order.

use super::{rint, Polynomial, PolyError, Rational, UniPoly};
use num::Zero;

/// A polynomial truncated at a total-degree bound.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Jet {
    poly: Polynomial,
    order: u32,
    truncated: bool,
}

impl Jet {
    /// Wraps a polynomial, dropping terms above `order`.
    pub fn new(mut poly: Polynomial, order: u32) -> Jet {
        let dropped = poly.truncate_total_degree(order);
        Jet { poly, order, truncated: dropped }
    }

    /// A jet known to be exact to its order (used for exact inputs).
    pub fn exact(poly: Polynomial, order: u32) -> Jet {
        Jet::new(poly, order)
    }

    pub fn zero(order: u32) -> Jet {
        Jet { poly: Polynomial::zero(), order, truncated: false }
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn into_poly(self) -> Polynomial {
        self.poly
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn with_truncated(mut self, t: bool) -> Jet {
        self.truncated = self.truncated || t;
        self
    }

    /// Lowers the order, marking truncation if terms are lost.
    pub fn truncate_to(&self, order: u32) -> Jet {
        let mut p = self.poly.clone();
        let dropped = p.truncate_total_degree(order);
        Jet { poly: p, order, truncated: self.truncated || dropped }
    }

    pub fn add(&self, other: &Jet) -> Jet {
        let order = self.order.min(other.order);
        Jet::new(self.poly.add(&other.poly), order)
            .with_truncated(self.truncated || other.truncated)
    }

    pub fn sub(&self, other: &Jet) -> Jet {
        let order = self.order.min(other.order);
        Jet::new(self.poly.sub(&other.poly), order)
            .with_truncated(self.truncated || other.truncated)
    }

    pub fn mul(&self, other: &Jet) -> Jet {
        let order = self.order.min(other.order);
        let mut prod = self.poly.mul(&other.poly);
        let dropped = prod.truncate_total_degree(order);
        Jet {
            poly: prod,
            order,
            truncated: self.truncated || other.truncated || dropped,
        }
    }

    pub fn scale(&self, c: &Rational) -> Jet {
        Jet { poly: self.poly.scale(c), order: self.order, truncated: self.truncated }
    }

    /// Valuation (minimal total degree), `None` if zero to this order.
    pub fn valuation(&self) -> Option<u32> {
        self.poly.order_at_origin()
    }

    /// The jet as a univariate polynomial in `x1`; `None` if `x2` occurs.
    pub fn as_univariate_x1(&self) -> Option<UniPoly> {
        self.poly.as_univariate_x1()
    }

    /// Evaluates the underlying polynomial exactly.
    pub fn eval(&self, x1: &Rational, x2: &Rational) -> Rational {
        self.poly.eval(x1, x2)
    }
}

/// Substitutes `x2 -> j` in `p`, truncating at the order of `j`.
///
/// The substituted jet may involve both variables (shears such as
/// `x2 + x1^2` are the common case) or `x1` alone (root jets).
pub fn substitute_series(p: &Polynomial, j: &Jet) -> Jet {
    let order = j.order();
    let mut acc = Jet::zero(order);
    // Group p by x2-degree: p = sum_k q_k(x1) x2^k, then Horner in j.
    let d2 = p.degree_x2().unwrap_or(0);
    for k in (0..=d2).rev() {
        acc = acc.mul(j);
        let mut slice = Polynomial::zero();
        for (&(a1, a2), c) in p.terms() {
            if a2 == k {
                slice.add_term(a1, 0, c.clone());
            }
        }
        acc = acc.add(&Jet::new(slice, order));
    }
    acc.with_truncated(j.truncated())
}

/// Solves `(d p / d x2)(x1, psi(x1)) = 0` for a jet `psi` with `psi(0) = 0`,
/// to the requested order.
///
/// Requires `p_{x2}(0,0) = 0` and `p_{x2 x2}(0,0) != 0` (the critical-point
/// equation is then regular and the solution is the unique root jet).  The
/// degenerate variant used for D-type phases, where `p_{x2 x2}` vanishes at
/// the origin but has `x1`-valuation one, is [`solve_root_jet`].
pub fn solve_critical_series(p: &Polynomial, order: u32) -> Result<Jet, PolyError> {
    let dp = p.partial(2);
    if !dp.coeff(0, 0).is_zero() {
        return Err(PolyError::PreconditionViolated(
            "p_{x2}(0,0) must vanish".into(),
        ));
    }
    if p.partial(2).partial(2).coeff(0, 0).is_zero() {
        return Err(PolyError::PreconditionViolated(
            "p_{x2 x2}(0,0) must be nonzero".into(),
        ));
    }
    solve_root_jet(p, order)
}

/// Root-jet solver shared by the regular (A-type) and degenerate (D-type)
/// cases.
///
/// Finds the unique formal series `psi(x1)` with `psi(0) = 0` solving
/// `p_{x2}(x1, psi) = 0 mod x1^{order+1}`, by successive coefficient
/// corrections: if the residual has valuation `v` and the linearisation
/// `p_{x2 x2}(x1, psi)` has valuation `w` (0 in the regular case, 1 in the
/// D-type case), the next correction is `-r_v / l_w * x1^{v-w}`.  Each step
/// raises the residual valuation, so at most `order` steps are needed.
pub fn solve_root_jet(p: &Polynomial, order: u32) -> Result<Jet, PolyError> {
    let dp = p.partial(2);
    let ddp = dp.partial(2);
    if !dp.coeff(0, 0).is_zero() {
        return Err(PolyError::PreconditionViolated(
            "p_{x2}(0,0) must vanish".into(),
        ));
    }
    // Work one order beyond the target so valuation-1 linearisations still
    // determine the coefficient at `order`.
    let work = order + 1;
    let mut psi = Jet::zero(work);
    for _ in 0..=work {
        let residual = substitute_series(&dp, &psi);
        let Some(v) = residual.valuation() else {
            break; // solved exactly to the working order
        };
        if v > work {
            break;
        }
        let lin = substitute_series(&ddp, &psi);
        let w = lin.valuation().ok_or_else(|| {
            PolyError::PreconditionViolated("p_{x2 x2} vanishes along the root jet".into())
        })?;
        if w > 1 {
            return Err(PolyError::PreconditionViolated(
                "linearisation degenerate beyond x1-valuation one".into(),
            ));
        }
        if v <= w {
            return Err(PolyError::PreconditionViolated(
                "no root jet with psi(0) = 0 exists".into(),
            ));
        }
        let r_v = residual.poly().coeff(v, 0);
        let l_w = lin.poly().coeff(w as u32, 0);
        if !residual.poly().homogeneous_part(v).sub(&Polynomial::monomial(v, 0, r_v.clone())).is_zero() {
            return Err(PolyError::PreconditionViolated(
                "residual is not univariate in x1".into(),
            ));
        }
        let delta = -r_v / l_w;
        let k = v - w as u32;
        psi = psi.add(&Jet::new(Polynomial::monomial(k, 0, delta), work));
    }
    // Check the residual really is gone to the working order.
    let residual = substitute_series(&dp, &psi);
    if let Some(v) = residual.valuation() {
        if v <= order {
            return Err(PolyError::PreconditionViolated(
                "root-jet iteration failed to converge".into(),
            ));
        }
    }
    Ok(psi.truncate_to(order))
}

/// Result of the Taylor division of `p` along a root jet.
#[derive(Clone, Debug)]
pub struct TaylorSplit {
    /// Quotient: `b` in `p = b (x2 - psi)^2 + c1 (x2 - psi) + b0`.
    pub b: Jet,
    /// Restriction `b0(x1) = p(x1, psi(x1))`.
    pub b0: Jet,
    /// Linear coefficient `c1(x1) = p_{x2}(x1, psi(x1))`; zero mod the
    /// working order whenever `psi` is a root jet of `p_{x2}`.
    pub c1: Jet,
}

/// Divides `p` by powers of `(x2 - psi)`:
///
/// `p = b * (x2 - psi)^2 + c1 * (x2 - psi) + b0`, all to the order of `psi`.
///
/// The division is carried out in sheared coordinates `u = x2 - psi(x1)`:
/// there the split is just a regrouping of `u`-powers, and shearing back is
/// another series substitution.  The identity above holds modulo total
/// degree `order` and is exact when nothing was truncated.
pub fn taylor_divide(p: &Polynomial, psi: &Jet, order: u32) -> Result<TaylorSplit, PolyError> {
    if psi.order() < order {
        return Err(PolyError::TruncationInsufficient { have: psi.order(), need: order });
    }
    let psi = psi.truncate_to(order);
    // x2 -> u + psi(x1): P~(x1, u) = p(x1, u + psi)
    let shear_in = Jet::new(
        psi.poly().add(&Polynomial::monomial(0, 1, rint(1))),
        order,
    )
    .with_truncated(psi.truncated());
    let p_tilde = substitute_series(p, &shear_in);
    let trunc = p_tilde.truncated();

    let mut b0_poly = Polynomial::zero();
    let mut c1_poly = Polynomial::zero();
    let mut b_tilde = Polynomial::zero();
    for (&(a1, a2), c) in p_tilde.poly().terms() {
        match a2 {
            0 => b0_poly.add_term(a1, 0, c.clone()),
            1 => c1_poly.add_term(a1, 0, c.clone()),
            _ => b_tilde.add_term(a1, a2 - 2, c.clone()),
        }
    }

    // Shear back: u -> x2 - psi(x1).
    let shear_out = Jet::new(
        Polynomial::monomial(0, 1, rint(1)).sub(psi.poly()),
        order,
    )
    .with_truncated(psi.truncated());
    let b = substitute_series(&b_tilde, &shear_out).with_truncated(trunc);
    Ok(TaylorSplit {
        b,
        b0: Jet::new(b0_poly, order).with_truncated(trunc),
        c1: Jet::new(c1_poly, order).with_truncated(trunc),
    })
}
