//! Classification of degenerate critical points of bivariate phases.
//!
//! [`classify`] takes a polynomial phase with a critical point at the origin
//! and decides its singularity class (A, D or E series within the scope of
//! the height-below-two theory, or nondegenerate), together with the exact
//! invariants: input-frame Newton distance and principal weight, height,
//! series index, the root jet of the degenerate branch, the adapted weight,
//! and — when the Hessian rank is zero — the critical integrability
//! exponent, which equals the height.
//!
//! The decision tree follows the Hessian rank.  Rank two is Morse.  Rank
//! one reduces the quadratic part to `c x2^2`, computes the branch of
//! critical points tangent to the kernel, and reads the series index off
//! the phase restricted to that branch.  Rank zero branches on the maximal
//! real-root multiplicity of the cubic part: one gives the two `D4` forms,
//! two gives the higher `D` series via the same branch construction, three
//! gives the `E` ladder after the cubic is straightened to `c x2^3`.

mod a2;
mod regions;

pub use a2::{a2_normal_form, A2Error, A2NormalForm};
pub use regions::{region_membership, Region, RegionParams};

use crate::homog::{factor_homogeneous, FactoredForm, HomogError};
use crate::newton::{newton_polyhedron, NewtonData, NewtonError, Weight};
use crate::poly::{
    rat, rint, solve_root_jet, substitute_series, taylor_divide, Jet, PolyError, Polynomial,
    Rational,
};
use num::{One, Zero};

/// The singularity classes the pipeline can recognise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularityClass {
    /// Morse point: full Hessian rank.
    Nondegenerate,
    /// `A_k`, `k >= 2`: rank one with series index `n = k + 1`.
    A(u32),
    /// `D_k`, `k >= 5`: rank zero, cubic with a double line, `n = k - 1`.
    D(u32),
    /// Rank zero, cubic with three distinct real lines.
    D4Minus,
    /// Rank zero, cubic with one real and two complex lines.
    D4Plus,
    E6,
    E7,
    E8,
}

impl std::fmt::Display for SingularityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SingularityClass::Nondegenerate => write!(f, "nondegenerate"),
            SingularityClass::A(k) => write!(f, "A{k}"),
            SingularityClass::D(k) => write!(f, "D{k}"),
            SingularityClass::D4Minus => write!(f, "D4-"),
            SingularityClass::D4Plus => write!(f, "D4+"),
            SingularityClass::E6 => write!(f, "E6"),
            SingularityClass::E7 => write!(f, "E7"),
            SingularityClass::E8 => write!(f, "E8"),
        }
    }
}

/// The linear change of variables `y = M x` taking the input frame to the
/// frame in which the normal-form data is expressed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreTransform {
    pub matrix: [[Rational; 2]; 2],
    pub inverse: [[Rational; 2]; 2],
}

impl PreTransform {
    pub fn identity() -> Self {
        let id = || {
            [
                [Rational::one(), Rational::zero()],
                [Rational::zero(), Rational::one()],
            ]
        };
        PreTransform { matrix: id(), inverse: id() }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == Self::identity().matrix
    }

    fn new(matrix: [[Rational; 2]; 2]) -> Self {
        let inverse = invert2(&matrix).expect("normalisation matrices are invertible");
        PreTransform { matrix, inverse }
    }
}

/// Whether and how a critical integrability exponent is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentStatus {
    /// Hessian rank zero and height below two: the exponent is the height.
    Applicable,
    /// Morse point: the classical exponent `3/2`.
    Classical,
    /// Hessian rank one: outside the scope of the sharp bound, no exponent
    /// is claimed.
    Deferred,
}

/// Everything the classifier knows about a phase.
#[derive(Debug, Clone)]
pub struct SingularityReport {
    pub class: SingularityClass,
    pub hessian_rank: u8,
    /// Newton polyhedron of the phase in the input coordinates.
    pub newton: NewtonData,
    /// Input-frame Newton distance (copied out of `newton`).
    pub distance: Rational,
    /// Input-frame principal weight, when the principal face carries one.
    pub principal_weight: Option<Weight>,
    /// Whether the input coordinates are adapted, i.e. the distance above
    /// already equals the height.
    pub adapted: bool,
    /// The height: the supremum of Newton distances over all coordinates.
    pub height: Rational,
    /// The series index `n` (A: `phi ~ x2^2 + x1^n`; D: `x1 x2^2 + x1^n`;
    /// `3` for the two `D4` forms, `2` at a Morse point, absent for E).
    pub series_index: Option<u32>,
    /// The branch of critical points `x2 = psi(x1)` in the normalised
    /// frame, for the A and D series.
    pub root_jet: Option<Jet>,
    /// Valuation of the root jet (`None` when the jet vanishes or the class
    /// has no root jet).
    pub contact_order: Option<u32>,
    /// Weight of an adapted coordinate frame, components sorted increasingly.
    pub adapted_weight: Weight,
    /// Newton distance in adapted coordinates; always equals the height.
    pub adapted_distance: Rational,
    pub pre_transform: PreTransform,
    /// The critical integrability exponent `p_c`, when one is claimed.
    pub critical_exponent: Option<Rational>,
    pub exponent_status: ExponentStatus,
    /// Jet order used for the series computations.
    pub jet_order: u32,
    /// True if any series was truncated at the jet order (the discrete
    /// invariants are still exact; only the reported jets are cut off).
    pub truncated: bool,
}

/// Why a phase falls outside the classified range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutOfScopeKind {
    /// Rank zero with vanishing cubic part: the height is at least two.
    CubicTermVanishes,
    /// The phase vanishes identically along a curve of critical points.
    FlatCriticalCurve,
    /// The E-ladder coefficients all vanish: the height is at least two.
    HeightAtLeastTwo,
}

impl std::fmt::Display for OutOfScopeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OutOfScopeKind::CubicTermVanishes => {
                write!(f, "the third-order part vanishes, so the height is at least two")
            }
            OutOfScopeKind::FlatCriticalCurve => {
                write!(f, "the phase vanishes identically along a critical curve")
            }
            OutOfScopeKind::HeightAtLeastTwo => {
                write!(f, "all fourth- and fifth-order normal-form coefficients vanish, so the height is at least two")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClassifyError {
    #[error("the zero phase has no singularity type")]
    ZeroPhase,
    #[error("the phase does not vanish at the origin")]
    NonzeroValueAtOrigin,
    #[error("the origin is not a critical point of the phase")]
    NonzeroGradientAtOrigin,
    #[error(
        "the phase involves x{variable} only, so the origin is not an isolated \
         critical point (the whole line through it is critical)"
    )]
    UnivariatePhase { variable: u8 },
    #[error("out of scope: {0}")]
    OutOfScope(OutOfScopeKind),
    #[error("jet order {order} is too small to resolve the branch data")]
    JetOrderInsufficient { order: u32 },
    #[error("this singularity class carries no root jet")]
    TypeHasNoRootJet,
    #[error(transparent)]
    Newton(#[from] NewtonError),
    #[error(transparent)]
    Homog(#[from] HomogError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Rank of the Hessian of `p` at the origin.
pub fn hessian_rank(p: &Polynomial) -> u8 {
    let a20 = p.coeff(2, 0);
    let a11 = p.coeff(1, 1);
    let a02 = p.coeff(0, 2);
    let det = rint(4) * &a20 * &a02 - &a11 * &a11;
    if !det.is_zero() {
        2
    } else if a20.is_zero() && a11.is_zero() && a02.is_zero() {
        0
    } else {
        1
    }
}

/// Default jet order: generous for every phase degree seen in practice.
pub fn default_jet_order(phi: &Polynomial) -> u32 {
    2 * phi.total_degree().unwrap_or(0) + 4
}

/// Classifies `phi`, retrying with larger jet orders when the branch data
/// does not resolve.  Beyond `2 deg^2 + 8` an unresolved branch value must
/// be identically zero (its vanishing order is bounded by the degree of the
/// resultant of the phase with its `x2`-derivative), so the phase is then
/// reported as flat.
pub fn classify(phi: &Polynomial) -> Result<SingularityReport, ClassifyError> {
    let deg = phi.total_degree().unwrap_or(0);
    let cap = 2 * deg * deg + 8;
    let mut order = default_jet_order(phi);
    loop {
        match classify_with_order(phi, order) {
            Err(ClassifyError::JetOrderInsufficient { .. }) => {
                if order >= cap {
                    return Err(ClassifyError::OutOfScope(OutOfScopeKind::FlatCriticalCurve));
                }
                order = (2 * order).min(cap);
            }
            other => return other,
        }
    }
}

/// Classifies `phi` with a fixed jet order for the series computations.
pub fn classify_with_order(
    phi: &Polynomial,
    jet_order: u32,
) -> Result<SingularityReport, ClassifyError> {
    if phi.is_zero() {
        return Err(ClassifyError::ZeroPhase);
    }
    if !phi.coeff(0, 0).is_zero() {
        return Err(ClassifyError::NonzeroValueAtOrigin);
    }
    let (g1, g2) = phi.gradient_at_origin();
    if !g1.is_zero() || !g2.is_zero() {
        return Err(ClassifyError::NonzeroGradientAtOrigin);
    }
    let support = phi.support();
    if support.iter().all(|&(_, a2)| a2 == 0) {
        return Err(ClassifyError::UnivariatePhase { variable: 1 });
    }
    if support.iter().all(|&(a1, _)| a1 == 0) {
        return Err(ClassifyError::UnivariatePhase { variable: 2 });
    }
    let nd = newton_polyhedron(phi)?;
    match hessian_rank(phi) {
        2 => nondegenerate_report(nd, jet_order),
        1 => rank_one(phi, nd, jet_order),
        _ => rank_zero(phi, nd, jet_order),
    }
}

fn nondegenerate_report(
    nd: NewtonData,
    jet_order: u32,
) -> Result<SingularityReport, ClassifyError> {
    let distance = nd.distance().clone();
    debug_assert_eq!(distance, Rational::one());
    let principal_weight = nd.principal_weight().ok();
    Ok(SingularityReport {
        class: SingularityClass::Nondegenerate,
        hessian_rank: 2,
        newton: nd,
        distance,
        principal_weight,
        adapted: true,
        height: Rational::one(),
        series_index: Some(2),
        root_jet: None,
        contact_order: None,
        adapted_weight: Weight::new(rat(1, 2), rat(1, 2)),
        adapted_distance: Rational::one(),
        pre_transform: PreTransform::identity(),
        critical_exponent: Some(rat(3, 2)),
        exponent_status: ExponentStatus::Classical,
        jet_order,
        truncated: false,
    })
}

fn rank_one(
    phi: &Polynomial,
    nd: NewtonData,
    jet_order: u32,
) -> Result<SingularityReport, ClassifyError> {
    let a20 = phi.coeff(2, 0);
    let a11 = phi.coeff(1, 1);
    let a02 = phi.coeff(0, 2);
    let pre = if !a02.is_zero() {
        // y2 = x2 + lambda x1 kills the cross and x1^2 terms.
        let lambda = &a11 / (rint(2) * &a02);
        PreTransform::new([
            [Rational::one(), Rational::zero()],
            [lambda, Rational::one()],
        ])
    } else {
        // a02 = 0 forces a11 = 0 at rank one; a plain swap suffices.
        debug_assert!(a11.is_zero() && !a20.is_zero());
        PreTransform::new([
            [Rational::zero(), Rational::one()],
            [Rational::one(), Rational::zero()],
        ])
    };
    let p = phi.substitute_linear(&pre.inverse, &zero_shift())?;
    debug_assert!(p.coeff(2, 0).is_zero() && p.coeff(1, 1).is_zero());
    let branch = resolve_branch(&p, jet_order)?;
    let n = branch.n;
    debug_assert!(n >= 3, "rank one forces a series index of at least three");

    let m_inp = input_contact_order(&branch, &pre);
    let adapted = m_inp.map_or(true, |m| n <= 2 * m);
    let height = rat(2 * n as i64, n as i64 + 2);
    let report = SingularityReport {
        class: SingularityClass::A(n - 1),
        hessian_rank: 1,
        distance: nd.distance().clone(),
        principal_weight: nd.principal_weight().ok(),
        newton: nd,
        adapted,
        height: height.clone(),
        series_index: Some(n),
        contact_order: branch.psi.valuation(),
        root_jet: Some(branch.psi),
        adapted_weight: Weight::new(rat(1, n as i64), rat(1, 2)),
        adapted_distance: height,
        pre_transform: pre,
        critical_exponent: None,
        exponent_status: ExponentStatus::Deferred,
        jet_order,
        truncated: branch.truncated,
    };
    cross_check_adapted(&report);
    Ok(report)
}

fn rank_zero(
    phi: &Polynomial,
    nd: NewtonData,
    jet_order: u32,
) -> Result<SingularityReport, ClassifyError> {
    let p3 = phi.homogeneous_part(3);
    if p3.is_zero() {
        return Err(ClassifyError::OutOfScope(OutOfScopeKind::CubicTermVanishes));
    }
    let third = Weight::new(rat(1, 3), rat(1, 3));
    let ff = factor_homogeneous(&p3, &third)?;
    match ff.max_real_multiplicity() {
        1 => d4_report(nd, &ff, jet_order),
        2 => d_series(phi, nd, &ff, jet_order),
        _ => e_series(phi, nd, &ff, jet_order),
    }
}

fn d4_report(
    nd: NewtonData,
    ff: &FactoredForm,
    jet_order: u32,
) -> Result<SingularityReport, ClassifyError> {
    let roots = ff.distinct_real_roots();
    debug_assert!(roots == 1 || roots == 3);
    let class = if roots == 3 {
        SingularityClass::D4Minus
    } else {
        SingularityClass::D4Plus
    };
    let height = rat(3, 2);
    debug_assert_eq!(nd.distance(), &height);
    Ok(SingularityReport {
        class,
        hessian_rank: 0,
        distance: nd.distance().clone(),
        principal_weight: nd.principal_weight().ok(),
        newton: nd,
        adapted: true,
        height: height.clone(),
        series_index: Some(3),
        root_jet: None,
        contact_order: None,
        adapted_weight: Weight::new(rat(1, 3), rat(1, 3)),
        adapted_distance: height.clone(),
        pre_transform: PreTransform::identity(),
        critical_exponent: Some(height),
        exponent_status: ExponentStatus::Applicable,
        jet_order,
        truncated: false,
    })
}

fn d_series(
    phi: &Polynomial,
    nd: NewtonData,
    ff: &FactoredForm,
    jet_order: u32,
) -> Result<SingularityReport, ClassifyError> {
    // The cubic is L^2 * L' with L the unique real double line.  Use L' and
    // L as the new coordinates so the cubic becomes exactly y1 y2^2.
    let (l, rest) = split_double_line(ff);
    let mat = [
        [rest.coeff(1, 0), rest.coeff(0, 1)],
        [l.coeff(1, 0), l.coeff(0, 1)],
    ];
    let pre = PreTransform::new(mat);
    let p = phi.substitute_linear(&pre.inverse, &zero_shift())?;
    debug_assert_eq!(
        p.homogeneous_part(3),
        Polynomial::monomial(1, 2, Rational::one())
    );
    let branch = resolve_branch(&p, jet_order)?;
    let n = branch.n;
    debug_assert!(n >= 4, "a distinct simple line forces n of at least four");

    let m_inp = input_contact_order(&branch, &pre);
    let adapted = m_inp.map_or(true, |m| n <= 2 * m + 1);
    let height = rat(2 * n as i64, n as i64 + 1);
    let report = SingularityReport {
        class: SingularityClass::D(n + 1),
        hessian_rank: 0,
        distance: nd.distance().clone(),
        principal_weight: nd.principal_weight().ok(),
        newton: nd,
        adapted,
        height: height.clone(),
        series_index: Some(n),
        contact_order: branch.psi.valuation(),
        root_jet: Some(branch.psi),
        adapted_weight: Weight::new(rat(1, n as i64), rat(n as i64 - 1, 2 * n as i64)),
        adapted_distance: height.clone(),
        pre_transform: pre,
        critical_exponent: Some(height),
        exponent_status: ExponentStatus::Applicable,
        jet_order,
        truncated: branch.truncated,
    };
    cross_check_adapted(&report);
    Ok(report)
}

fn e_series(
    phi: &Polynomial,
    nd: NewtonData,
    ff: &FactoredForm,
    jet_order: u32,
) -> Result<SingularityReport, ClassifyError> {
    // Cubic is c L^3: send L to the second coordinate, keep any
    // independent direction as the first.
    let l = triple_line(ff);
    let (alpha, beta) = (l.coeff(1, 0), l.coeff(0, 1));
    let first = if !beta.is_zero() {
        [Rational::one(), Rational::zero()]
    } else {
        [Rational::zero(), Rational::one()]
    };
    let pre = PreTransform::new([first, [alpha, beta]]);
    let p = phi.substitute_linear(&pre.inverse, &zero_shift())?;
    debug_assert_eq!(
        p.homogeneous_part(3),
        Polynomial::monomial(0, 3, ff.unit.clone())
    );
    let (class, height, adapted_weight) = if !p.coeff(4, 0).is_zero() {
        (SingularityClass::E6, rat(12, 7), Weight::new(rat(1, 4), rat(1, 3)))
    } else if !p.coeff(3, 1).is_zero() {
        (SingularityClass::E7, rat(9, 5), Weight::new(rat(2, 9), rat(1, 3)))
    } else if !p.coeff(5, 0).is_zero() {
        (SingularityClass::E8, rat(15, 8), Weight::new(rat(1, 5), rat(1, 3)))
    } else {
        return Err(ClassifyError::OutOfScope(OutOfScopeKind::HeightAtLeastTwo));
    };
    let adapted = nd.distance() == &height;
    let report = SingularityReport {
        class,
        hessian_rank: 0,
        distance: nd.distance().clone(),
        principal_weight: nd.principal_weight().ok(),
        newton: nd,
        adapted,
        height: height.clone(),
        series_index: None,
        root_jet: None,
        contact_order: None,
        adapted_weight,
        adapted_distance: height.clone(),
        pre_transform: pre,
        critical_exponent: Some(height),
        exponent_status: ExponentStatus::Applicable,
        jet_order,
        truncated: false,
    };
    cross_check_adapted(&report);
    Ok(report)
}

/// Re-expresses the phase in adapted coordinates: after the linear
/// normalisation, the root jet is sheared off (`y2 = x2 - psi(x1)`), and
/// the Newton polyhedron of the result realises the height as its
/// distance.  That equality is checked here and enforced.
///
/// Truncation of the root jet cannot disturb the check: a dropped term has
/// total degree above the jet order, hence lies strictly above the adapted
/// supporting line, and so never touches the principal face.
///
/// Only the A and D series carry a root jet; other classes return
/// [`ClassifyError::TypeHasNoRootJet`].
pub fn adapted_shear(
    report: &SingularityReport,
    phi: &Polynomial,
) -> Result<(Jet, NewtonData), ClassifyError> {
    let psi = report
        .root_jet
        .as_ref()
        .ok_or(ClassifyError::TypeHasNoRootJet)?;
    let p = phi.substitute_linear(&report.pre_transform.inverse, &zero_shift())?;
    let shear = Jet::new(
        psi.poly().add(&Polynomial::monomial(0, 1, Rational::one())),
        report.jet_order,
    )
    .with_truncated(psi.truncated());
    let phi_a = substitute_series(&p, &shear);
    let nd = newton_polyhedron(phi_a.poly())?;
    assert_eq!(
        nd.distance(),
        &report.height,
        "the adapted frame must realise the height as its Newton distance"
    );
    Ok((phi_a, nd))
}

/// Branch data shared by the A and D paths: the root jet of the critical
/// branch, the valuation `n` of the phase restricted to it, and whether any
/// series was cut off.
struct BranchData {
    psi: Jet,
    n: u32,
    truncated: bool,
}

fn resolve_branch(p: &Polynomial, jet_order: u32) -> Result<BranchData, ClassifyError> {
    let psi = solve_root_jet(p, jet_order)?;
    let split = taylor_divide(p, &psi, jet_order)?;
    let truncated = psi.truncated() || split.b0.truncated() || split.b.truncated();
    let b0 = split
        .b0
        .poly()
        .as_univariate_x1()
        .expect("the branch value is univariate by construction");
    match b0.valuation() {
        Some(v) => Ok(BranchData { psi, n: v as u32, truncated }),
        None => {
            if split.b0.truncated() {
                Err(ClassifyError::JetOrderInsufficient { order: jet_order })
            } else {
                Err(ClassifyError::OutOfScope(OutOfScopeKind::FlatCriticalCurve))
            }
        }
    }
}

/// Valuation of the root jet seen from the input frame.  The branch keeps
/// its contact order when its input tangent lies along a coordinate axis
/// (a swap at most); a slanted tangent always means contact order one.
/// `None` encodes an identically vanishing jet, i.e. infinite contact.
fn input_contact_order(branch: &BranchData, pre: &PreTransform) -> Option<u32> {
    let tangent = (&pre.inverse[0][0], &pre.inverse[1][0]);
    let axis_aligned = tangent.0.is_zero() || tangent.1.is_zero();
    if axis_aligned {
        branch.psi.valuation()
    } else {
        Some(1)
    }
}

/// The double line of a cubic with maximal real multiplicity two, plus the
/// complementary simple factor (unit absorbed, so cubic = rest * line^2).
fn split_double_line(ff: &FactoredForm) -> (Polynomial, Polynomial) {
    let x1 = Polynomial::monomial(1, 0, Rational::one());
    let x2 = Polynomial::monomial(0, 1, Rational::one());
    let mut line: Option<Polynomial> = None;
    let (mut nu1, mut nu2) = (ff.nu1, ff.nu2);
    if ff.nu1 == 2 {
        line = Some(x1.clone());
        nu1 = 0;
    } else if ff.nu2 == 2 {
        line = Some(x2.clone());
        nu2 = 0;
    }
    let mut rest = Polynomial::monomial(nu1, nu2, ff.unit.clone());
    for f in &ff.factors {
        let mut mult = f.multiplicity;
        if line.is_none() && f.multiplicity == 2 {
            line = Some(f.form.clone());
            mult = 0;
        }
        for _ in 0..mult {
            rest = rest.mul(&f.form);
        }
    }
    let line = line.expect("max_real_multiplicity == 2 guarantees a double line");
    debug_assert_eq!(rest.total_degree(), Some(1));
    (line, rest)
}

/// The triple line of a cubic with maximal real multiplicity three.
fn triple_line(ff: &FactoredForm) -> Polynomial {
    if ff.nu1 == 3 {
        return Polynomial::monomial(1, 0, Rational::one());
    }
    if ff.nu2 == 3 {
        return Polynomial::monomial(0, 1, Rational::one());
    }
    for f in &ff.factors {
        if f.multiplicity == 3 {
            return f.form.clone();
        }
    }
    unreachable!("max_real_multiplicity == 3 guarantees a triple line")
}

/// In debug builds, check the reported adaptedness against the direct
/// Newton-diagram criterion on the input polyhedron.
fn cross_check_adapted(report: &SingularityReport) {
    #[cfg(debug_assertions)]
    {
        if let Ok(direct) = crate::homog::adaptedness(&report.newton) {
            debug_assert_eq!(
                direct.adapted, report.adapted,
                "normal-form adaptedness disagrees with the diagram criterion"
            );
        }
    }
    #[cfg(not(debug_assertions))]
    let _ = report;
}

fn zero_shift() -> [Rational; 2] {
    [Rational::zero(), Rational::zero()]
}

fn invert2(m: &[[Rational; 2]; 2]) -> Option<[[Rational; 2]; 2]> {
    let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
    if det.is_zero() {
        return None;
    }
    Some([
        [&m[1][1] / &det, -&m[0][1] / &det],
        [-&m[1][0] / &det, &m[0][0] / &det],
    ])
}
