//! Exact polynomial arithmetic over the rationals.
//!
//! Two polynomial representations are used throughout the crate:
//!
//! * [`Polynomial`] — a sparse bivariate polynomial, stored as a sorted map
//!   from exponent pairs `(a1, a2)` (for `x1^a1 * x2^a2`) to nonzero
//!   `BigRational` coefficients.  This is the working type for phases.
//! * [`UniPoly`] — a dense univariate polynomial, used for restrictions to
//!   lines and circles, Sturm chains and factorisation.
//!
//! Design notes:
//!
//! * Coefficients are `num::BigRational`; every operation is exact and the
//!   zero coefficient is never stored, so `==` is structural equality.
//! * Exponents are `u32`; nothing in the problem domain needs negative or
//!   large exponents, and keeping them small makes the convex-hull arithmetic
//!   in `newton` fit comfortably in `i64`.

mod factor;
mod jet;
mod roots;

pub use factor::{factor_rational, FactorError};
pub use jet::{
    solve_critical_series, solve_root_jet, substitute_series, taylor_divide, Jet, TaylorSplit,
};
pub use roots::{real_root_multiplicities, MultiplicityList, RootLocation, RootRecord};

use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exact scalar type used everywhere in the classification pipeline.
pub type Rational = BigRational;

/// Errors from the exact-arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    /// A linear substitution was requested with a singular matrix.
    #[error("substitution matrix is singular")]
    SingularMatrix,
    /// A series operation needed more orders than the input jet carries.
    #[error("jet order {have} is insufficient, need at least {need}")]
    TruncationInsufficient { have: u32, need: u32 },
    /// An operation's precondition on the input polynomial does not hold.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

/// Convenience constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Convenience constructor for integers as rationals.
pub fn rint(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// A sparse bivariate polynomial with exact rational coefficients.
///
/// ```
/// use phasetype::poly::{Polynomial, rint};
/// let p = Polynomial::from_terms([((0u32, 2u32), rint(1)), ((3, 0), rint(1))]);
/// assert_eq!(p.coeff(0, 2), rint(1));
/// assert_eq!(p.total_degree(), Some(3));
/// ```
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(0, 0, c);
        p
    }

    /// The monomial `c * x1^a1 * x2^a2`.
    pub fn monomial(a1: u32, a2: u32, c: Rational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(a1, a2, c);
        p
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), Rational)>,
    {
        let mut p = Polynomial::zero();
        for ((a1, a2), c) in terms {
            p.add_term(a1, a2, c);
        }
        p
    }

    /// Adds `c * x1^a1 * x2^a2` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, a1: u32, a2: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((a1, a2)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(a1, a2));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a1: u32, a2: u32) -> Rational {
        self.terms.get(&(a1, a2)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Iterates over `((a1, a2), coefficient)` in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    /// The set of exponent pairs with nonzero coefficient.
    pub fn support(&self) -> Vec<(u32, u32)> {
        self.terms.keys().cloned().collect()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    pub fn degree_x1(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, _)| a).max()
    }

    pub fn degree_x2(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, b)| b).max()
    }

    /// Keeps only terms of total degree `<= bound`; reports whether any term
    /// was dropped.
    pub fn truncate_total_degree(&mut self, bound: u32) -> bool {
        let before = self.terms.len();
        self.terms.retain(|&(a, b), _| a + b <= bound);
        self.terms.len() != before
    }

    /// The homogeneous part of total degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(&(a, b), _)| a + b == k)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
        }
    }

    /// Lowest total degree among the terms (the vanishing order at 0).
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).min()
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (&(a1, a2), c) in &other.terms {
            out.add_term(a1, a2, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (&(a1, a2), c) in &other.terms {
            out.add_term(a1, a2, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (&(a1, a2), c) in &self.terms {
            for (&(b1, b2), d) in &other.terms {
                out.add_term(a1 + b1, a2 + b2, c.clone() * d.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(&e, v)| (e, v.clone() * c.clone())).collect(),
        }
    }

    /// Multiplies by the monomial `x1^a1 * x2^a2`.
    pub fn mul_monomial(&self, a1: u32, a2: u32) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(&(b1, b2), c)| ((b1 + a1, b2 + a2), c.clone()))
                .collect(),
        }
    }

    /// Partial derivative with respect to `x1` (var = 1) or `x2` (var = 2).
    pub fn partial(&self, var: u8) -> Polynomial {
        let mut out = Polynomial::zero();
        for (&(a1, a2), c) in &self.terms {
            match var {
                1 if a1 > 0 => out.add_term(a1 - 1, a2, c.clone() * rint(a1 as i64)),
                2 if a2 > 0 => out.add_term(a1, a2 - 1, c.clone() * rint(a2 as i64)),
                _ => {}
            }
        }
        out
    }

    pub fn eval(&self, x1: &Rational, x2: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let mut pow1: Vec<Rational> = vec![Rational::one()];
        let mut pow2: Vec<Rational> = vec![Rational::one()];
        for (&(a1, a2), c) in &self.terms {
            while pow1.len() <= a1 as usize {
                let last = pow1.last().unwrap().clone();
                pow1.push(last * x1.clone());
            }
            while pow2.len() <= a2 as usize {
                let last = pow2.last().unwrap().clone();
                pow2.push(last * x2.clone());
            }
            acc += c.clone() * pow1[a1 as usize].clone() * pow2[a2 as usize].clone();
        }
        acc
    }

    pub fn eval_f64(&self, x1: f64, x2: f64) -> f64 {
        let mut acc = 0.0;
        for (&(a1, a2), c) in &self.terms {
            acc += rational_to_f64(c) * x1.powi(a1 as i32) * x2.powi(a2 as i32);
        }
        acc
    }

    /// Substitutes `x = M * y + shift`, returning `p(M y + shift)` as a
    /// polynomial in `y`.  Fails if `M` is singular.
    pub fn substitute_linear(
        &self,
        m: &[[Rational; 2]; 2],
        shift: &[Rational; 2],
    ) -> Result<Polynomial, PolyError> {
        let det = m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone();
        if det.is_zero() {
            return Err(PolyError::SingularMatrix);
        }
        let lin1 = Polynomial::from_terms([
            ((1, 0), m[0][0].clone()),
            ((0, 1), m[0][1].clone()),
            ((0, 0), shift[0].clone()),
        ]);
        let lin2 = Polynomial::from_terms([
            ((1, 0), m[1][0].clone()),
            ((0, 1), m[1][1].clone()),
            ((0, 0), shift[1].clone()),
        ]);
        let d1 = self.degree_x1().unwrap_or(0) as usize;
        let d2 = self.degree_x2().unwrap_or(0) as usize;
        let pow1 = cached_powers(&lin1, d1);
        let pow2 = cached_powers(&lin2, d2);
        let mut out = Polynomial::zero();
        for (&(a1, a2), c) in &self.terms {
            let term = pow1[a1 as usize].mul(&pow2[a2 as usize]).scale(c);
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Restricts to the line `x1 = c`, producing a univariate polynomial in `x2`.
    pub fn restrict_x1(&self, c: &Rational) -> UniPoly {
        let mut coeffs = vec![Rational::zero(); self.degree_x2().map_or(0, |d| d as usize + 1)];
        let mut powc: Vec<Rational> = vec![Rational::one()];
        for (&(a1, a2), v) in &self.terms {
            while powc.len() <= a1 as usize {
                let last = powc.last().unwrap().clone();
                powc.push(last * c.clone());
            }
            coeffs[a2 as usize] += v.clone() * powc[a1 as usize].clone();
        }
        UniPoly::new(coeffs)
    }

    /// Restricts to the line `x2 = c`, producing a univariate polynomial in `x1`.
    pub fn restrict_x2(&self, c: &Rational) -> UniPoly {
        self.swap_vars().restrict_x1(c)
    }

    /// Exchanges the roles of `x1` and `x2`.
    pub fn swap_vars(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect(),
        }
    }

    /// Interprets a polynomial in `x1` alone as a univariate polynomial.
    /// Returns `None` when `x2` occurs.
    pub fn as_univariate_x1(&self) -> Option<UniPoly> {
        if self.terms.keys().any(|&(_, b)| b > 0) {
            return None;
        }
        let mut coeffs = vec![Rational::zero(); self.degree_x1().map_or(0, |d| d as usize + 1)];
        for (&(a, _), c) in &self.terms {
            coeffs[a as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    /// Gradient at the origin: `(p_{x1}(0,0), p_{x2}(0,0))`.
    pub fn gradient_at_origin(&self) -> (Rational, Rational) {
        (self.coeff(1, 0), self.coeff(0, 1))
    }
}

fn cached_powers(p: &Polynomial, up_to: usize) -> Vec<Polynomial> {
    let mut pows = Vec::with_capacity(up_to + 1);
    pows.push(Polynomial::constant(Rational::one()));
    for _ in 0..up_to {
        let next = pows.last().unwrap().mul(p);
        pows.push(next);
    }
    pows
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Polynomial {
    /// Renders in the same syntax the CLI parser accepts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Sort by total degree, then lexicographically, for readable output.
        let mut keys: Vec<_> = self.terms.keys().cloned().collect();
        keys.sort_by_key(|&(a, b)| (a + b, a));
        for (i, &(a1, a2)) in keys.iter().enumerate() {
            let c = &self.terms[&(a1, a2)];
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            let mut wrote = false;
            if !abs.is_one() || (a1 == 0 && a2 == 0) {
                write!(f, "{}", abs)?;
                wrote = true;
            }
            for (var, e) in [("x1", a1), ("x2", a2)] {
                if e > 0 {
                    if wrote {
                        write!(f, "*")?;
                    }
                    write!(f, "{}", var)?;
                    if e > 1 {
                        write!(f, "^{}", e)?;
                    }
                    wrote = true;
                }
            }
        }
        Ok(())
    }
}

/// Converts a `BigRational` to `f64`, stable even when numerator and
/// denominator are individually too large for `f64`.
pub fn rational_to_f64(r: &Rational) -> f64 {
    use num::ToPrimitive;
    let n = r.numer();
    let d = r.denom();
    let (nb, db) = (n.bits(), d.bits());
    if nb <= 900 && db <= 900 {
        return r.to_f64().unwrap_or(0.0);
    }
    // Shift both parts into a safe range and restore the scale afterwards.
    let sn = nb.saturating_sub(512);
    let sd = db.saturating_sub(512);
    let fq = (n >> sn).to_f64().unwrap_or(0.0) / (d >> sd).to_f64().unwrap_or(1.0);
    fq * 2f64.powi(sn as i32 - sd as i32)
}

/// A dense univariate polynomial over the rationals.
///
/// Invariant: `coeffs` carries no trailing zeros, so `deg` is the length
/// minus one and the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| rint(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Order of vanishing at `t = 0` (index of the first nonzero coefficient).
    /// `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t.clone() + c.clone();
        }
        acc
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * t + rational_to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * rint(k as i64))
                .collect(),
        )
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k] += c.clone();
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            out[k] += c.clone();
        }
        UniPoly::new(out)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a.clone() * b.clone();
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|v| v.clone() * c.clone()).collect())
    }

    /// Euclidean division: returns `(q, r)` with `self = q * div + r` and
    /// `deg r < deg div`.  Panics on division by zero.
    pub fn div_rem(&self, div: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!div.is_zero(), "univariate division by zero");
        let dd = div.degree().unwrap();
        let lead = div.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k].clone() / lead.clone();
            if !c.is_zero() {
                quot[k - dd] = c.clone();
                for j in 0..=dd {
                    let sub = c.clone() * div.coeffs[j].clone();
                    rem[k - dd + j] -= sub;
                }
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Scales the argument: returns `p(c * t)`.
    pub fn compose_scale(&self, c: &Rational) -> UniPoly {
        let mut pow = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for v in &self.coeffs {
            out.push(v.clone() * pow.clone());
            pow *= c.clone();
        }
        UniPoly::new(out)
    }

    /// Monic multiple of `self` (unit normalisation over Q).
    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }

    /// Greatest common divisor, returned monic.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic(); // keep coefficient growth bounded
        }
        a.monic()
    }

    /// The square-free part `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        q.monic()
    }

    /// Converts to a polynomial in `x1`.
    pub fn to_poly_x1(&self) -> Polynomial {
        Polynomial::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| ((k as u32, 0u32), c.clone())),
        )
    }

    /// Converts to a polynomial in `x2`.
    pub fn to_poly_x2(&self) -> Polynomial {
        Polynomial::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| ((0u32, k as u32), c.clone())),
        )
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{}", c)?;
            if k > 0 {
                write!(f, "*t^{}", k)?;
            }
            first = false;
        }
        Ok(())
    }
}
