//! Compactly supported cutoff amplitudes.
//!
//! All profiles are built from a single quintic smoothstep, so every
//! amplitude is C^2 with uniformly bounded third derivatives away from
//! finitely many points.  The fitted decay exponents in the configured
//! frequency window are governed by stationary points of the phase, not
//! by this limited smoothness; the C^2 choice keeps the profile exactly
//! polynomial piecewise, which the panel quadrature resolves without
//! special casing.

use super::OscError;
use crate::poly::{rational_to_f64, Jet};

/// `0 -> 0, 1 -> 1`, C^2 ramp.
fn smoothstep(t: f64) -> f64 {
    t * t * t * (10.0 - 15.0 * t + 6.0 * t * t)
}

/// Window equal to one on `[lo, hi]`, zero outside `[lo - w, hi + w]`,
/// with smoothstep shoulders on the outer bands.
pub fn plateau_window(u: f64, lo: f64, hi: f64, w: f64) -> f64 {
    if !(u > lo - w) || !(u < hi + w) {
        0.0
    } else if u >= lo && u <= hi {
        1.0
    } else if u < lo {
        smoothstep((u - (lo - w)) / w)
    } else {
        smoothstep(((hi + w) - u) / w)
    }
}

/// How a quadrature panel meets the amplitude: wholly outside the
/// support, wholly inside the plateau (where the amplitude is exactly
/// one), or possibly crossing a shoulder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PanelClass {
    Zero,
    Plateau,
    Mixed,
}

/// Which side of a root-jet collar the amplitude selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CollarSide {
    /// Inside `|x_2 - psi(x_1)| <= eps |x_1|^m`.
    Interior,
    /// The complement of the collar.
    Exterior,
}

/// Supported cutoff shapes.
#[derive(Debug, Clone)]
pub enum AmplitudeKind {
    /// Radial plateau on `inner <= |x| <= outer`.
    Annulus { inner: f64, outer: f64 },
    /// Square plateau `|x_i - center_i| <= radius`.
    Box { center: [f64; 2], radius: f64 },
    /// Radial annulus window multiplied by a profile in the collar
    /// coordinate `tau = (x_2 - psi(x_1)) / (eps |x_1|^m)`: the interior
    /// side keeps `|tau| <= 1`, the exterior side its complement.  The
    /// radii bound `|x|`.
    RootJetCollar {
        /// Root jet as (coefficient, power of `x_1`) pairs.
        psi: Vec<(f64, u32)>,
        eps: f64,
        m: u32,
        inner: f64,
        outer: f64,
        side: CollarSide,
    },
}

/// A cutoff amplitude: a shape plus the shoulder width of its smoothstep
/// transitions.  Shoulders live outside the stated plateau, so the
/// amplitude is identically one on the nominal region.
#[derive(Debug, Clone)]
pub struct AmplitudeSpec {
    kind: AmplitudeKind,
    smoothing: f64,
}

impl AmplitudeSpec {
    pub fn new(kind: AmplitudeKind, smoothing: f64) -> Result<Self, OscError> {
        if !(smoothing > 0.0) {
            return Err(OscError::InvalidAmplitude(
                "smoothing width must be positive".into(),
            ));
        }
        match &kind {
            AmplitudeKind::Annulus { inner, outer } => {
                if !(*inner >= 0.0 && inner < outer) {
                    return Err(OscError::InvalidAmplitude(
                        "annulus needs 0 <= inner < outer".into(),
                    ));
                }
                if smoothing >= (outer - inner) / 4.0 {
                    return Err(OscError::InvalidAmplitude(
                        "smoothing must stay below a quarter of the annulus width".into(),
                    ));
                }
                if *inner > 0.0 && smoothing >= *inner {
                    return Err(OscError::InvalidAmplitude(
                        "smoothing must not reach the origin".into(),
                    ));
                }
            }
            AmplitudeKind::Box { radius, .. } => {
                if !(*radius > 0.0) {
                    return Err(OscError::InvalidAmplitude(
                        "box radius must be positive".into(),
                    ));
                }
                if smoothing >= radius / 2.0 {
                    return Err(OscError::InvalidAmplitude(
                        "smoothing must stay below half the box radius".into(),
                    ));
                }
            }
            AmplitudeKind::RootJetCollar { eps, inner, outer, .. } => {
                if !(*eps > 0.0) {
                    return Err(OscError::InvalidAmplitude(
                        "collar aperture eps must be positive".into(),
                    ));
                }
                if !(*inner > 0.0 && inner < outer) {
                    return Err(OscError::InvalidAmplitude(
                        "collar needs 0 < inner < outer".into(),
                    ));
                }
                if smoothing >= (outer - inner) / 4.0 {
                    return Err(OscError::InvalidAmplitude(
                        "smoothing must stay below a quarter of the radial width".into(),
                    ));
                }
                if smoothing >= *inner {
                    return Err(OscError::InvalidAmplitude(
                        "smoothing must not reach the origin".into(),
                    ));
                }
            }
        }
        Ok(AmplitudeSpec { kind, smoothing })
    }

    /// Annulus helper with the default shoulder width `1/8`.
    pub fn annulus(inner: f64, outer: f64) -> Result<Self, OscError> {
        AmplitudeSpec::new(AmplitudeKind::Annulus { inner, outer }, 0.125)
    }

    /// Box helper with the default shoulder width `radius / 4`.
    pub fn centered_box(center: [f64; 2], radius: f64) -> Result<Self, OscError> {
        AmplitudeSpec::new(AmplitudeKind::Box { center, radius }, radius / 4.0)
    }

    /// Collar around the graph of an exact root jet.
    pub fn root_jet_collar(
        psi: &Jet,
        eps: f64,
        m: u32,
        inner: f64,
        outer: f64,
        side: CollarSide,
        smoothing: f64,
    ) -> Result<Self, OscError> {
        let psi_f64 = psi
            .poly()
            .terms()
            .map(|(&(a1, a2), c)| {
                if a2 != 0 {
                    Err(OscError::InvalidAmplitude(
                        "root jet must be a series in x1 alone".into(),
                    ))
                } else {
                    Ok((rational_to_f64(c), a1))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        AmplitudeSpec::new(
            AmplitudeKind::RootJetCollar { psi: psi_f64, eps, m, inner, outer, side },
            smoothing,
        )
    }

    pub fn kind(&self) -> &AmplitudeKind {
        &self.kind
    }

    pub fn smoothing(&self) -> f64 {
        self.smoothing
    }

    pub fn eval(&self, x1: f64, x2: f64) -> f64 {
        let w = self.smoothing;
        match &self.kind {
            AmplitudeKind::Annulus { inner, outer } => {
                plateau_window(x1.hypot(x2), *inner, *outer, w)
            }
            AmplitudeKind::Box { center, radius } => {
                plateau_window(x1, center[0] - radius, center[0] + radius, w)
                    * plateau_window(x2, center[1] - radius, center[1] + radius, w)
            }
            AmplitudeKind::RootJetCollar { psi, eps, m, inner, outer, side } => {
                let radial = plateau_window(x1.hypot(x2), *inner, *outer, w);
                if radial == 0.0 {
                    return 0.0;
                }
                // |x| >= inner - w > 0 here, so tau is finite or +-inf,
                // never NaN: on the x2 axis the numerator cannot vanish.
                let mut value = 0.0;
                for &(c, p) in psi {
                    value += c * x1.powi(p as i32);
                }
                let tau = (x2 - value) / (eps * x1.abs().powi(*m as i32));
                let profile = plateau_window(tau, -1.0, 1.0, 0.25);
                match side {
                    CollarSide::Interior => radial * profile,
                    CollarSide::Exterior => radial * (1.0 - profile),
                }
            }
        }
    }

    /// Axis-aligned bounding box of the support.
    pub fn support_box(&self) -> [[f64; 2]; 2] {
        let w = self.smoothing;
        match &self.kind {
            AmplitudeKind::Annulus { outer, .. }
            | AmplitudeKind::RootJetCollar { outer, .. } => {
                let r = outer + w;
                [[-r, r], [-r, r]]
            }
            AmplitudeKind::Box { center, radius } => {
                let r = radius + w;
                [
                    [center[0] - r, center[0] + r],
                    [center[1] - r, center[1] + r],
                ]
            }
        }
    }

    /// Largest panel half-width the quadrature may use on panels that
    /// straddle a smoothstep shoulder.  Panels wholly inside the plateau
    /// or the zero set carry no amplitude error at any size, so only the
    /// shoulder bands need this resolution.
    pub fn mixed_panel_halfwidth(&self) -> f64 {
        let base = self.smoothing / 16.0;
        match &self.kind {
            AmplitudeKind::RootJetCollar { eps, m, inner, .. } => {
                // The collar profile varies on the transverse scale
                // eps |x_1|^m / 4; resolve it at the inner radius.
                let transverse = 0.25 * eps * inner.min(1.0).powi(*m as i32);
                base.min(transverse / 4.0)
            }
            _ => base,
        }
    }

    /// Conservative classification of an axis-aligned panel against the
    /// support structure of the amplitude.
    pub fn classify_panel(&self, c: [f64; 2], h: [f64; 2]) -> PanelClass {
        let w = self.smoothing;
        match &self.kind {
            AmplitudeKind::Annulus { inner, outer } => {
                let dx = (c[0].abs() - h[0]).max(0.0);
                let dy = (c[1].abs() - h[1]).max(0.0);
                let rmin = dx.hypot(dy);
                let rmax = (c[0].abs() + h[0]).hypot(c[1].abs() + h[1]);
                if rmax <= inner - w || rmin >= outer + w {
                    PanelClass::Zero
                } else if rmin >= *inner && rmax <= *outer {
                    PanelClass::Plateau
                } else {
                    PanelClass::Mixed
                }
            }
            AmplitudeKind::Box { center, radius } => {
                let mut all_plateau = true;
                for axis in 0..2 {
                    let lo = center[axis] - radius;
                    let hi = center[axis] + radius;
                    let a = c[axis] - h[axis];
                    let b = c[axis] + h[axis];
                    if b <= lo - w || a >= hi + w {
                        return PanelClass::Zero;
                    }
                    if !(a >= lo && b <= hi) {
                        all_plateau = false;
                    }
                }
                if all_plateau {
                    PanelClass::Plateau
                } else {
                    PanelClass::Mixed
                }
            }
            AmplitudeKind::RootJetCollar { inner, outer, .. } => {
                let dx = (c[0].abs() - h[0]).max(0.0);
                let dy = (c[1].abs() - h[1]).max(0.0);
                let rmin = dx.hypot(dy);
                let rmax = (c[0].abs() + h[0]).hypot(c[1].abs() + h[1]);
                if rmax <= inner - w || rmin >= outer + w {
                    PanelClass::Zero
                } else {
                    // the collar profile cuts through the annulus, so
                    // never report a plateau
                    PanelClass::Mixed
                }
            }
        }
    }
}
