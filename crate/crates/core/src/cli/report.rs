//! Report documents: everything a run knows, serialized as JSON.
//!
//! Every rational is serialized as a `p/q` string (plain `p` when the
//! denominator is one) — the invariants are exact and floats would quietly
//! destroy that.  Only fitted quantities (decay slopes, correlation) are
//! floats.  Struct fields serialize in declaration order, so a document is
//! byte-identical across runs, and deserializing a document reproduces it
//! exactly.

use serde::{Deserialize, Serialize};

use crate::newton::{NewtonData, PrincipalFace};
use crate::normalform::{
    adapted_shear, ClassifyError, ExponentStatus, SingularityClass, SingularityReport,
};
use crate::oscint::{gamma_condition_report, DecayFit};
use crate::poly::{rat, rint, Jet, Polynomial, Rational};
use num::One;

use super::parse::ParseError;

/// Version stamp carried by every document this crate emits.
pub const SCHEMA_VERSION: u32 = 1;

/// Canonical string form of a rational: `p/q`, or `p` for integers.
pub fn rational_str(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serializes any document with a trailing newline.
pub fn to_json_string<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents are tree-shaped");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: u32,
    pub input: InputEcho,
    pub classification: ClassificationDoc,
    pub newton: NewtonDoc,
    /// Newton data of the adapted frame; identical to `newton` when the
    /// input coordinates are already adapted.
    pub adapted_newton: NewtonDoc,
    pub height: HeightDoc,
    pub gamma: GammaDoc,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputEcho {
    pub expression: String,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub exponents: [u32; 2],
    pub coefficient: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationDoc {
    pub label: String,
    pub hessian_rank: u8,
    pub series_index: Option<u32>,
    pub contact_order: Option<u32>,
    pub adapted: bool,
    pub root_jet: Option<JetDoc>,
    /// Rational matrix of the normalizing change of variables, present
    /// only when it is not the identity.
    pub pre_transform: Option<[[String; 2]; 2]>,
    pub jet_order: u32,
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JetDoc {
    pub order: u32,
    pub truncated: bool,
    pub terms: Vec<UniTermDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniTermDoc {
    pub exponent: u32,
    pub coefficient: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NewtonDoc {
    pub distance: String,
    pub weight: Option<[String; 2]>,
    pub vertices: Vec<[u32; 2]>,
    pub principal_face: FaceDoc,
    pub principal_part: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaceDoc {
    pub kind: String,
    pub vertices: Vec<[u32; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeightDoc {
    pub value: String,
    pub adapted_distance: String,
    pub adapted_weight: [String; 2],
    pub critical_exponent: Option<String>,
    pub exponent_status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaDoc {
    /// Decay exponent the classified type predicts for the scaled
    /// oscillatory integral, when the table covers it.
    pub predicted: Option<String>,
    /// Exact comparison of the distance against `1 + 1/(2 gamma)`.
    pub condition: Option<ConditionDoc>,
    /// Fitted exponents; populated by the decay suite, empty after plain
    /// classification.
    pub fits: Vec<FitDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionDoc {
    pub gamma: String,
    pub bound: String,
    pub margin: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitDoc {
    pub direction: [f64; 2],
    pub gamma_hat: f64,
    pub r_squared: f64,
    pub gamma_predicted: Option<String>,
    pub pass: Option<bool>,
    pub budget_exceeded: bool,
}

impl FitDoc {
    pub fn from_fit(fit: &DecayFit) -> FitDoc {
        FitDoc {
            direction: fit.direction,
            gamma_hat: fit.gamma_hat,
            r_squared: fit.r_squared,
            gamma_predicted: fit.gamma_predicted.as_ref().map(rational_str),
            pass: fit.pass,
            budget_exceeded: fit.budget_exceeded,
        }
    }
}

/// Error document emitted when a run cannot produce a report; `module`
/// names the layer the error came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorDocument {
    pub schema: u32,
    pub input: String,
    pub error: ErrorBody,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub module: String,
    pub kind: String,
    pub message: String,
}

/// Predicted decay exponent of the scaled oscillatory integral by type:
/// `1/2 + 1/n` for the A series, `1` at `D4` with three real lines, `5/6`
/// for every other D form, `3/4`, `5/6`, `7/10` along the E ladder, and
/// `1` at a nondegenerate point.
pub fn predicted_gamma(class: SingularityClass, series_index: Option<u32>) -> Option<Rational> {
    match class {
        SingularityClass::Nondegenerate | SingularityClass::D4Minus => Some(rint(1)),
        SingularityClass::A(_) => {
            let n = series_index?;
            Some(rat(1, 2) + rat(1, n as i64))
        }
        SingularityClass::D4Plus | SingularityClass::D(_) => Some(rat(5, 6)),
        SingularityClass::E6 => Some(rat(3, 4)),
        SingularityClass::E7 => Some(rat(5, 6)),
        SingularityClass::E8 => Some(rat(7, 10)),
    }
}

pub fn newton_doc(nd: &NewtonData) -> NewtonDoc {
    let verts = nd.vertices();
    let pt = |i: usize| [verts[i].0, verts[i].1];
    let principal_face = match nd.principal_face() {
        PrincipalFace::Vertex(i) => FaceDoc { kind: "vertex".into(), vertices: vec![pt(i)] },
        PrincipalFace::Edge(i) => {
            FaceDoc { kind: "edge".into(), vertices: vec![pt(i), pt(i + 1)] }
        }
        PrincipalFace::VerticalRay => {
            FaceDoc { kind: "vertical-ray".into(), vertices: vec![pt(0)] }
        }
        PrincipalFace::HorizontalRay => {
            FaceDoc { kind: "horizontal-ray".into(), vertices: vec![pt(verts.len() - 1)] }
        }
    };
    NewtonDoc {
        distance: rational_str(nd.distance()),
        weight: nd
            .principal_weight()
            .ok()
            .map(|w| [rational_str(&w.k1), rational_str(&w.k2)]),
        vertices: verts.iter().map(|&(a, b)| [a, b]).collect(),
        principal_face,
        principal_part: poly_terms(nd.principal_part()),
    }
}

pub fn poly_terms(p: &Polynomial) -> Vec<TermDoc> {
    p.terms()
        .map(|(&(a, b), c)| TermDoc { exponents: [a, b], coefficient: rational_str(c) })
        .collect()
}

fn jet_doc(j: &Jet) -> JetDoc {
    // root jets live on the first axis, so the second exponent is zero
    let terms = j
        .poly()
        .terms()
        .map(|(&(a1, _), c)| UniTermDoc { exponent: a1, coefficient: rational_str(c) })
        .collect();
    JetDoc { order: j.order(), truncated: j.truncated(), terms }
}

fn status_str(s: ExponentStatus) -> &'static str {
    match s {
        ExponentStatus::Applicable => "applicable",
        ExponentStatus::Classical => "classical",
        ExponentStatus::Deferred => "deferred",
    }
}

/// Assembles the full document for a classified phase.
pub fn build_report(
    expression: &str,
    phi: &Polynomial,
    report: &SingularityReport,
) -> ReportDocument {
    let raw_newton = newton_doc(&report.newton);
    let adapted_newton = if report.adapted || report.root_jet.is_none() {
        raw_newton.clone()
    } else {
        match adapted_shear(report, phi) {
            Ok((_, nd)) => newton_doc(&nd),
            Err(_) => raw_newton.clone(),
        }
    };

    let predicted = predicted_gamma(report.class, report.series_index);
    let condition = predicted.as_ref().map(|g| {
        let c = gamma_condition_report(report, g);
        let bound = rint(1) + Rational::one() / (rint(2) * g);
        ConditionDoc {
            gamma: rational_str(g),
            bound: rational_str(&bound),
            margin: rational_str(&c.margin),
            holds: c.holds,
        }
    });

    let mut warnings = Vec::new();
    if report.truncated {
        warnings.push(format!(
            "series data truncated at jet order {}; the discrete invariants are exact",
            report.jet_order
        ));
    }
    if !report.pre_transform.is_identity() {
        warnings.push(
            "the input frame was renormalized by a rational linear change of variables; \
             jets and adapted data refer to the normalized frame"
                .into(),
        );
    }
    if !report.newton.principal_face().is_compact() {
        warnings.push("the principal face is unbounded; height data uses the distance".into());
    }

    ReportDocument {
        schema: SCHEMA_VERSION,
        input: InputEcho { expression: expression.to_string(), terms: poly_terms(phi) },
        classification: ClassificationDoc {
            label: report.class.to_string(),
            hessian_rank: report.hessian_rank,
            series_index: report.series_index,
            contact_order: report.contact_order,
            adapted: report.adapted,
            root_jet: report.root_jet.as_ref().map(jet_doc),
            pre_transform: (!report.pre_transform.is_identity()).then(|| {
                let m = &report.pre_transform.matrix;
                [
                    [rational_str(&m[0][0]), rational_str(&m[0][1])],
                    [rational_str(&m[1][0]), rational_str(&m[1][1])],
                ]
            }),
            jet_order: report.jet_order,
            truncated: report.truncated,
        },
        newton: raw_newton,
        adapted_newton,
        height: HeightDoc {
            value: rational_str(&report.height),
            adapted_distance: rational_str(&report.adapted_distance),
            adapted_weight: [
                rational_str(&report.adapted_weight.k1),
                rational_str(&report.adapted_weight.k2),
            ],
            critical_exponent: report.critical_exponent.as_ref().map(rational_str),
            exponent_status: status_str(report.exponent_status).into(),
        },
        gamma: GammaDoc {
            predicted: predicted.as_ref().map(rational_str),
            condition,
            fits: Vec::new(),
        },
        warnings,
    }
}

/// Document and exit code for a failed classification.  Out-of-scope
/// phases exit with 2; precondition and resolution failures with 1.
pub fn classify_error_document(expression: &str, e: &ClassifyError) -> (ErrorDocument, i32) {
    let (module, kind, code) = match e {
        ClassifyError::OutOfScope(_) => ("normalform", "out-of-scope", 2),
        ClassifyError::ZeroPhase
        | ClassifyError::NonzeroValueAtOrigin
        | ClassifyError::NonzeroGradientAtOrigin
        | ClassifyError::UnivariatePhase { .. } => ("normalform", "precondition", 1),
        ClassifyError::JetOrderInsufficient { .. } => ("normalform", "jet-order", 1),
        ClassifyError::TypeHasNoRootJet => ("normalform", "not-applicable", 1),
        ClassifyError::Newton(_) => ("newton", "precondition", 1),
        ClassifyError::Homog(_) => ("homog", "internal", 1),
        ClassifyError::Poly(_) => ("poly", "internal", 1),
    };
    let doc = ErrorDocument {
        schema: SCHEMA_VERSION,
        input: expression.to_string(),
        error: ErrorBody {
            module: module.into(),
            kind: kind.into(),
            message: e.to_string(),
        },
    };
    (doc, code)
}

pub fn parse_error_document(expression: &str, e: &ParseError) -> ErrorDocument {
    ErrorDocument {
        schema: SCHEMA_VERSION,
        input: expression.to_string(),
        error: ErrorBody { module: "cli".into(), kind: "parse".into(), message: e.to_string() },
    }
}

pub fn io_error_document(context: &str, message: &str) -> ErrorDocument {
    ErrorDocument {
        schema: SCHEMA_VERSION,
        input: context.to_string(),
        error: ErrorBody { module: "cli".into(), kind: "io".into(), message: message.into() },
    }
}
