//! Real roots of univariate rational polynomials, with exact multiplicities.
//!
//! Multiplicities come from the factorisation over Q: linear factors give
//! exact rational roots, irreducible factors of higher degree give isolating
//! intervals from a Sturm chain.  Because an irreducible factor has no
//! rational roots, every rational interval endpoint is safely a non-root and
//! sign-variation counts are unambiguous.

use super::{factor_rational, rat, FactorError, Rational, UniPoly};
use num::{One, Signed, Zero};

/// Where a real root lives.
#[derive(Debug, Clone, PartialEq)]
pub enum RootLocation {
    /// A rational root, known exactly.
    Exact(Rational),
    /// An irrational root, isolated in the open interval `(lo, hi)`;
    /// the interval contains exactly this one root of the polynomial.
    Isolated { lo: Rational, hi: Rational },
}

impl RootLocation {
    /// A floating-point approximation (interval midpoint for isolated roots).
    pub fn approx(&self) -> f64 {
        match self {
            RootLocation::Exact(v) => crate::poly::rational_to_f64(v),
            RootLocation::Isolated { lo, hi } => {
                let mid = (lo + hi) * rat(1, 2);
                crate::poly::rational_to_f64(&mid)
            }
        }
    }

    fn lower(&self) -> Rational {
        match self {
            RootLocation::Exact(v) => v.clone(),
            RootLocation::Isolated { lo, .. } => lo.clone(),
        }
    }
}

/// One real root together with its multiplicity in the original polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct RootRecord {
    pub location: RootLocation,
    pub multiplicity: u32,
}

/// All real roots, sorted in increasing order.
pub type MultiplicityList = Vec<RootRecord>;

/// Computes the real roots of `p` with multiplicities, sorted increasingly.
/// Isolating intervals of distinct roots are pairwise disjoint and never
/// contain a rational root of `p`.
pub fn real_root_multiplicities(p: &UniPoly) -> Result<MultiplicityList, FactorError> {
    let (_, factors) = factor_rational(p)?;
    let mut exact: Vec<(Rational, u32)> = Vec::new();
    let mut isolated: Vec<(UniPoly, Rational, Rational, u32)> = Vec::new();
    for (f, mult) in &factors {
        match f.degree() {
            Some(1) => {
                let root = -f.coeff(0) / f.coeff(1);
                exact.push((root, *mult));
            }
            Some(d) if d >= 2 => {
                for (lo, hi) in isolate_irreducible(f) {
                    isolated.push((f.clone(), lo, hi, *mult));
                }
            }
            _ => {}
        }
    }

    // Shrink intervals until they are pairwise disjoint and avoid every
    // exact root.  Distinct roots have positive separation, so this ends.
    loop {
        let mut changed = false;
        for i in 0..isolated.len() {
            let clash_exact = exact
                .iter()
                .any(|(v, _)| *v >= isolated[i].1 && *v <= isolated[i].2);
            let clash_other = (0..isolated.len()).any(|j| {
                j != i
                    && !(isolated[i].2 < isolated[j].1 || isolated[j].2 < isolated[i].1)
            });
            if clash_exact || clash_other {
                let (f, lo, hi, _) = &mut isolated[i];
                let (nlo, nhi) = halve(f, lo, hi);
                *lo = nlo;
                *hi = nhi;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    // Tighten to a small width so midpoint approximations are usable.
    let width_cap = rat(1, 1 << 20);
    for (f, lo, hi, _) in isolated.iter_mut() {
        while (&*hi - &*lo) > width_cap {
            let (nlo, nhi) = halve(f, lo, hi);
            *lo = nlo;
            *hi = nhi;
        }
    }

    let mut out: Vec<RootRecord> = Vec::new();
    for (v, m) in exact {
        out.push(RootRecord { location: RootLocation::Exact(v), multiplicity: m });
    }
    for (_, lo, hi, m) in isolated {
        out.push(RootRecord {
            location: RootLocation::Isolated { lo, hi },
            multiplicity: m,
        });
    }
    out.sort_by(|a, b| {
        a.location
            .lower()
            .cmp(&b.location.lower())
            .then_with(|| {
                let rank = |l: &RootLocation| matches!(l, RootLocation::Isolated { .. }) as u8;
                rank(&a.location).cmp(&rank(&b.location))
            })
    });
    Ok(out)
}

/// One bisection step on an interval with a sign change at its endpoints.
fn halve(f: &UniPoly, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    let mid = (lo + hi) * rat(1, 2);
    let flo = f.eval(lo);
    let fmid = f.eval(&mid);
    debug_assert!(!fmid.is_zero(), "irreducible factor cannot vanish at a rational");
    if flo.is_positive() != fmid.is_positive() {
        (lo.clone(), mid)
    } else {
        (mid, hi.clone())
    }
}

/// Isolating intervals for the real roots of an irreducible (hence
/// square-free, rational-root-free) polynomial of degree at least two.
fn isolate_irreducible(f: &UniPoly) -> Vec<(Rational, Rational)> {
    let chain = sturm_chain(f);
    let bound = cauchy_bound(f);
    let mut stack = vec![(-bound.clone(), bound.clone())];
    let mut found = Vec::new();
    while let Some((lo, hi)) = stack.pop() {
        let count = variations_at(&chain, &lo) as i64 - variations_at(&chain, &hi) as i64;
        match count {
            n if n <= 0 => {}
            1 => {
                // Tighten so that the endpoints certainly show a sign change.
                let (mut a, mut b) = (lo, hi);
                while !(f.eval(&a).is_positive() != f.eval(&b).is_positive()) {
                    let mid = (&a + &b) * rat(1, 2);
                    let va = variations_at(&chain, &a) as i64;
                    let vm = variations_at(&chain, &mid) as i64;
                    if va - vm == 1 {
                        b = mid;
                    } else {
                        a = mid;
                    }
                }
                found.push((a, b));
            }
            _ => {
                let mid = (&lo + &hi) * rat(1, 2);
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    found
}

/// Sturm chain `f, f', -rem(...), ...` down to a constant.
fn sturm_chain(f: &UniPoly) -> Vec<UniPoly> {
    let mut chain = vec![f.clone(), f.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() || chain[n - 1].degree() == Some(0) {
            break;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(r.neg());
    }
    chain
}

/// Number of sign changes of the chain at `x`, zeros skipped.
fn variations_at(chain: &[UniPoly], x: &Rational) -> usize {
    let mut signs = Vec::with_capacity(chain.len());
    for q in chain {
        let v = q.eval(x);
        if !v.is_zero() {
            signs.push(v.is_positive());
        }
    }
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// `1 + max |c_k| / |c_n|`: every real root has absolute value below this.
fn cauchy_bound(f: &UniPoly) -> Rational {
    let lead = f.leading().expect("nonzero polynomial").abs();
    let mut m = Rational::zero();
    let n = f.coeffs().len() - 1;
    for c in &f.coeffs()[..n] {
        let a = c.abs() / lead.clone();
        if a > m {
            m = a;
        }
    }
    m + Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rint;

    fn up(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_i64(coeffs)
    }

    #[test]
    fn rational_roots_with_multiplicities() {
        // (u - 1)^2 (u + 2)
        let p = up(&[-1, 1]).mul(&up(&[-1, 1])).mul(&up(&[2, 1]));
        let roots = real_root_multiplicities(&p).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].location, RootLocation::Exact(rint(-2)));
        assert_eq!(roots[0].multiplicity, 1);
        assert_eq!(roots[1].location, RootLocation::Exact(rint(1)));
        assert_eq!(roots[1].multiplicity, 2);
    }

    #[test]
    fn no_real_roots_for_positive_definite() {
        let p = up(&[1, 0, 1]); // u^2 + 1
        assert!(real_root_multiplicities(&p).unwrap().is_empty());
    }

    #[test]
    fn isolates_sqrt_two() {
        let p = up(&[-2, 0, 1]); // u^2 - 2
        let roots = real_root_multiplicities(&p).unwrap();
        assert_eq!(roots.len(), 2);
        let a = roots[0].location.approx();
        let b = roots[1].location.approx();
        assert!((a + 2f64.sqrt()).abs() < 1e-5);
        assert!((b - 2f64.sqrt()).abs() < 1e-5);
        for r in &roots {
            assert_eq!(r.multiplicity, 1);
            match &r.location {
                RootLocation::Isolated { lo, hi } => assert!(lo < hi),
                other => panic!("expected isolated root, got {other:?}"),
            }
        }
    }

    #[test]
    fn mixes_exact_and_isolated_in_order() {
        // u (u^2 - 2) (u - 1)^3: roots -sqrt2 < 0 < 1 < sqrt2
        let p = up(&[0, 1])
            .mul(&up(&[-2, 0, 1]))
            .mul(&up(&[-1, 1]))
            .mul(&up(&[-1, 1]))
            .mul(&up(&[-1, 1]));
        let roots = real_root_multiplicities(&p).unwrap();
        let approx: Vec<f64> = roots.iter().map(|r| r.location.approx()).collect();
        assert_eq!(roots.len(), 4);
        assert!(approx.windows(2).all(|w| w[0] < w[1]));
        let mults: Vec<u32> = roots.iter().map(|r| r.multiplicity).collect();
        assert_eq!(mults, vec![1, 1, 3, 1]);
        // intervals avoid the exact roots 0 and 1
        for r in &roots {
            if let RootLocation::Isolated { lo, hi } = &r.location {
                for v in [rint(0), rint(1)] {
                    assert!(v < *lo || v > *hi);
                }
            }
        }
    }

    #[test]
    fn quintic_with_one_real_root() {
        // u^5 - u - 1: irreducible, exactly one real root near 1.1673
        let p = up(&[-1, -1, 0, 0, 0, 1]);
        let roots = real_root_multiplicities(&p).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0].location.approx() - 1.167_304).abs() < 1e-5);
    }

    #[test]
    fn high_multiplicity_at_zero() {
        // u^4 (u^2 + u + 1)
        let p = up(&[0, 0, 0, 0, 1, 1, 1]);
        let roots = real_root_multiplicities(&p).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].location, RootLocation::Exact(rint(0)));
        assert_eq!(roots[0].multiplicity, 4);
    }
}
