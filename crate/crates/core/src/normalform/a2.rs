//! The A2 normal form with a recovered base-point shift.
//!
//! A phase family member close to a cusp germ is brought to the shape
//!
//! ```text
//! b(x1, u) u^2  +  x1^3 beta(x1) + beta1 x1 + beta0,    u = x2 - x1^m omega(x1)
//! ```
//!
//! by three steps: solve the critical equation `p_{x2} = 0` for the branch
//! `psi`, divide the phase along it, then translate `x1` to the point where
//! the quadratic coefficient of the branch value `b0` dies (the root of
//! `b0''`, found by Newton iteration with an exact bisection fallback).
//! The translation is a numeric rational; everything downstream of it is an
//! exact polynomial operation, so when the root itself is rational — in
//! particular whenever `b0''` is linear, and always for an untranslated
//! germ — the whole output is exact and the residuals are exactly zero.

use crate::poly::{
    rat, solve_critical_series, taylor_divide, Jet, PolyError, Polynomial, Rational, UniPoly,
};
use num::{One, Signed, Zero};

#[derive(Debug, thiserror::Error)]
pub enum A2Error {
    #[error("the phase is not an A2 germ family member (needs x2^2 and x1^3 terms, no bare x2 term)")]
    NotA2Germ,
    #[error("the second derivative of the branch value has no root in [-1/2, 1/2]")]
    ShiftNotFound,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The decomposition after the shift.  `quad_residual` is the leftover
/// quadratic coefficient of the branch value: exactly zero when the shift
/// is an exact root, and of the order of the Newton tolerance otherwise.
#[derive(Debug, Clone)]
pub struct A2NormalForm {
    /// Quotient factor `b(x1, u)` with `b(0,0) != 0`; the second variable
    /// of the underlying polynomial is `u`.
    pub b: Jet,
    /// Branch graph in the shifted frame, vanishing at the origin.
    pub psi: Jet,
    /// Unit series of the branch value: `beta(0) != 0`.
    pub beta: Jet,
    pub beta1: Rational,
    pub beta0: Rational,
    pub quad_residual: Rational,
    /// Contact order of the shifted branch (`0` with `omega = 0` when the
    /// branch vanishes identically).
    pub m: u32,
    /// Unit part of the branch: `psi = x1^m omega`.
    pub omega: Jet,
    /// The recovered base-point translation in `x1`.
    pub shift: Rational,
}

impl A2NormalForm {
    /// Reassembles `b (x2 - x1^m omega)^2 + x1^3 beta + beta1 x1 + beta0`
    /// (plus the tracked quadratic residual).  Equals the input translated
    /// by `(shift, psi_value_at_shift)`, up to truncation, the numeric
    /// quality of the shift, and the dropped `c1` cross term.
    pub fn reconstruct(&self) -> Jet {
        let u = Polynomial::monomial(0, 1, Rational::one()).sub(self.psi.poly());
        let mut acc = self.b.poly().mul(&u).mul(&u);
        let mut tail = Polynomial::monomial(3, 0, Rational::one()).mul(self.beta.poly());
        tail.add_term(1, 0, self.beta1.clone());
        tail.add_term(0, 0, self.beta0.clone());
        tail.add_term(2, 0, self.quad_residual.clone());
        acc = acc.add(&tail);
        Jet::new(acc, self.b.order())
            .with_truncated(self.b.truncated() || self.psi.truncated())
    }
}

/// Runs the three normalisation steps on a fixed family member.
pub fn a2_normal_form(p: &Polynomial, order: u32) -> Result<A2NormalForm, A2Error> {
    if p.coeff(0, 2).is_zero() || p.coeff(3, 0).is_zero() || !p.coeff(0, 1).is_zero() {
        return Err(A2Error::NotA2Germ);
    }
    let psi = solve_critical_series(p, order)?;
    let split = taylor_divide(p, &psi, order)?;
    let b0 = split
        .b0
        .poly()
        .as_univariate_x1()
        .expect("branch value is univariate");

    // The shift kills b0'' — the quadratic part of the branch value.
    let g = b0.derivative().derivative();
    let shift = solve_shift(&g)?;

    // Everything from here on is an exact translation by the rational shift.
    let b0_shifted = translate_x1(split.b0.poly(), &shift)
        .as_univariate_x1()
        .expect("translation preserves univariateness");
    let psi_at_shift = psi.poly().eval(&shift, &Rational::zero());
    let psi_shifted_poly =
        translate_x1(psi.poly(), &shift).sub(&Polynomial::monomial(0, 0, psi_at_shift.clone()));
    let m = psi_shifted_poly.order_at_origin().unwrap_or(0);
    let omega_poly = shift_down_x1(&psi_shifted_poly, m);
    let psi_shifted = Jet::new(psi_shifted_poly, psi.order()).with_truncated(psi.truncated());
    let omega = Jet::new(omega_poly, psi.order().saturating_sub(m)).with_truncated(psi.truncated());

    // Quotient b, recentred at the shifted base point on the branch.
    let id = [
        [Rational::one(), Rational::zero()],
        [Rational::zero(), Rational::one()],
    ];
    let quotient = split
        .b
        .poly()
        .substitute_linear(&id, &[shift.clone(), psi_at_shift.clone()])
        .expect("identity matrix is invertible");
    if quotient.coeff(0, 0).is_zero() {
        return Err(A2Error::NotA2Germ);
    }
    let b = Jet::new(quotient, split.b.order()).with_truncated(split.b.truncated());

    let beta0 = b0_shifted.coeff(0);
    let beta1 = b0_shifted.coeff(1);
    let quad_residual = b0_shifted.coeff(2);
    let mut beta_poly = Polynomial::zero();
    for (k, c) in b0_shifted.coeffs().iter().enumerate() {
        if k >= 3 {
            beta_poly.add_term(k as u32 - 3, 0, c.clone());
        }
    }
    if beta_poly.coeff(0, 0).is_zero() {
        return Err(A2Error::NotA2Germ);
    }
    let beta = Jet::new(beta_poly, order.saturating_sub(3)).with_truncated(split.b0.truncated());

    Ok(A2NormalForm {
        b,
        psi: psi_shifted,
        beta,
        beta1,
        beta0,
        quad_residual,
        m,
        omega,
        shift,
    })
}

/// Root of `g` near zero, confined to `[-1/2, 1/2]`: an exact-zero check,
/// then float Newton polished by one exact rational step, then exact
/// bisection.  The polish makes the shift exact whenever Newton lands in
/// the basin of a rational root of a linear `g`.
fn solve_shift(g: &UniPoly) -> Result<Rational, A2Error> {
    if g.eval(&Rational::zero()).is_zero() {
        return Ok(Rational::zero());
    }
    let half = rat(1, 2);
    if let Some(t) = newton_f64(g) {
        if let Some(mut s) = Rational::from_float(t) {
            // One exact Newton step; for a linear g this lands on the root.
            let gp = g.derivative();
            let d = gp.eval(&s);
            if !d.is_zero() {
                s = &s - &(g.eval(&s) / d);
            }
            if s.abs() <= half {
                return Ok(s);
            }
        }
    }
    bisect(g, -half.clone(), half)
}

fn newton_f64(g: &UniPoly) -> Option<f64> {
    let gp = g.derivative();
    let mut t = 0.0_f64;
    for _ in 0..100 {
        let d = gp.eval_f64(t);
        if d.abs() < 1e-280 {
            return None;
        }
        let next = t - g.eval_f64(t) / d;
        if !next.is_finite() {
            return None;
        }
        if (next - t).abs() <= 1e-15 * (1.0 + next.abs()) {
            return Some(next);
        }
        t = next;
    }
    None
}

fn bisect(g: &UniPoly, mut lo: Rational, mut hi: Rational) -> Result<Rational, A2Error> {
    let sign = |r: &Rational| -> i8 {
        if r.is_zero() {
            0
        } else if r.is_positive() {
            1
        } else {
            -1
        }
    };
    let slo = sign(&g.eval(&lo));
    if slo == 0 {
        return Ok(lo);
    }
    if sign(&g.eval(&hi)) == 0 {
        return Ok(hi);
    }
    if slo == sign(&g.eval(&hi)) {
        return Err(A2Error::ShiftNotFound);
    }
    for _ in 0..160 {
        let mid = (&lo + &hi) / rat(2, 1);
        let sm = sign(&g.eval(&mid));
        if sm == 0 {
            return Ok(mid);
        }
        if sm == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((&lo + &hi) / rat(2, 1))
}

fn translate_x1(p: &Polynomial, s: &Rational) -> Polynomial {
    let id = [
        [Rational::one(), Rational::zero()],
        [Rational::zero(), Rational::one()],
    ];
    p.substitute_linear(&id, &[s.clone(), Rational::zero()])
        .expect("identity matrix is invertible")
}

fn shift_down_x1(p: &Polynomial, m: u32) -> Polynomial {
    Polynomial::from_terms(p.terms().map(|(&(a, b), c)| ((a - m, b), c.clone())))
}
