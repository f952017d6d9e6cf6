//! Command-line front end: expression parsing, report assembly, the decay
//! suite and the region query.
//!
//! Everything here is a pure function from inputs to strings plus an exit
//! code; the binary in `main.rs` only shuffles files and streams.  Exit
//! codes follow one contract everywhere: `0` for a completed run, `2` when
//! the phase is recognized but falls outside the classified range, `1` for
//! every other failure (bad input, unmet preconditions, unresolved jets).

pub mod config;
pub mod corpus;
pub mod parse;
pub mod report;
pub mod svg;

pub use config::{ConfigError, RunConfig};
pub use corpus::{parse_corpus, CorpusEntry, CorpusError, BUNDLED};
pub use parse::{parse_point, parse_polynomial, parse_rational, ParseError};
pub use report::{
    build_report, predicted_gamma, rational_str, to_json_string, ErrorBody, ErrorDocument,
    ReportDocument, SCHEMA_VERSION,
};
pub use svg::newton_svg;

use crate::normalform::{classify, classify_with_order, region_membership, RegionParams};
use crate::oscint::{default_s_grid, dyadic_lambdas, worst_case_decay, QuadOptions};
use crate::poly::rational_to_f64;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Output of the `classify` subcommand.
pub struct ClassifyRun {
    pub json: String,
    /// Newton diagram, present only when classification succeeded.
    pub svg: Option<String>,
    pub exit_code: i32,
}

/// Parses and classifies one expression, producing the JSON document, the
/// diagram and the exit code.
pub fn classify_command(expression: &str, cfg: &RunConfig) -> ClassifyRun {
    let expression = expression.trim();
    let phi = match parse_polynomial(expression) {
        Ok(p) => p,
        Err(e) => {
            return ClassifyRun {
                json: to_json_string(&report::parse_error_document(expression, &e)),
                svg: None,
                exit_code: 1,
            }
        }
    };
    let result = match cfg.jet_order {
        Some(order) => classify_with_order(&phi, order),
        None => classify(&phi),
    };
    match result {
        Ok(rep) => ClassifyRun {
            json: to_json_string(&build_report(expression, &phi, &rep)),
            svg: Some(newton_svg(&rep.newton)),
            exit_code: 0,
        },
        Err(e) => {
            let (doc, exit_code) = report::classify_error_document(expression, &e);
            ClassifyRun { json: to_json_string(&doc), svg: None, exit_code }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionDocument {
    pub schema: u32,
    pub input: String,
    pub label: String,
    pub point: [String; 2],
    pub contact_order: u32,
    pub horn_exponent: String,
    pub epsilon: String,
    pub cap: String,
    pub region: String,
}

/// Locates a rational point in the root-jet region decomposition of a
/// classified phase.
pub fn regions_command(expression: &str, point_text: &str, cfg: &RunConfig) -> (String, i32) {
    let expression = expression.trim();
    let phi = match parse_polynomial(expression) {
        Ok(p) => p,
        Err(e) => return (to_json_string(&report::parse_error_document(expression, &e)), 1),
    };
    let (x1, x2) = match parse_point(point_text.trim()) {
        Ok(p) => p,
        Err(e) => return (to_json_string(&report::parse_error_document(point_text, &e)), 1),
    };
    let rep = match cfg.jet_order {
        Some(order) => classify_with_order(&phi, order),
        None => classify(&phi),
    };
    let rep = match rep {
        Ok(r) => r,
        Err(e) => {
            let (doc, code) = report::classify_error_document(expression, &e);
            return (to_json_string(&doc), code);
        }
    };
    let Some(params) =
        RegionParams::from_report(&rep, cfg.region_epsilon.clone(), cfg.region_cap.clone())
    else {
        let doc = ErrorDocument {
            schema: SCHEMA_VERSION,
            input: expression.into(),
            error: ErrorBody {
                module: "normalform".into(),
                kind: "not-applicable".into(),
                message: format!(
                    "type {} carries no root-jet region decomposition",
                    rep.class
                ),
            },
        };
        return (to_json_string(&doc), 1);
    };
    let psi = rep.root_jet.as_ref().expect("a contact order implies a root jet");
    match region_membership(&x1, &x2, psi, &params) {
        Ok(region) => {
            let doc = RegionDocument {
                schema: SCHEMA_VERSION,
                input: expression.into(),
                label: rep.class.to_string(),
                point: [rational_str(&x1), rational_str(&x2)],
                contact_order: params.m,
                horn_exponent: rational_str(&params.a),
                epsilon: rational_str(&params.epsilon),
                cap: rational_str(&params.cap),
                region: region.to_string(),
            };
            (to_json_string(&doc), 0)
        }
        Err(e) => {
            let doc = ErrorDocument {
                schema: SCHEMA_VERSION,
                input: expression.into(),
                error: ErrorBody {
                    module: "normalform".into(),
                    kind: "precondition".into(),
                    message: e.to_string(),
                },
            };
            (to_json_string(&doc), 1)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteDocument {
    pub schema: u32,
    pub lambda_exponents: [u32; 2],
    pub tolerance: f64,
    pub passed: bool,
    pub entries: Vec<SuiteEntryDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteEntryDoc {
    pub name: String,
    pub phase: String,
    pub gamma_predicted: String,
    pub sharp: bool,
    /// `pass`, `fail`, `super-polynomial` (vacuous pass) or `error`.
    pub status: String,
    pub passed: bool,
    pub worst_direction: Option<[f64; 2]>,
    pub gamma_hat: Option<f64>,
    pub r_squared: Option<f64>,
    pub budget_exceeded: bool,
    pub detail: Option<String>,
}

/// Output of the `decay` subcommand.
pub struct SuiteRun {
    pub document: SuiteDocument,
    pub json: String,
    pub table: String,
    pub passed: bool,
}

/// Runs the decay suite over a corpus.  Entries never abort the suite: a
/// blown panel budget is flagged on the row, engine errors fail the row.
/// An entry passes when no scanned direction decays slower than predicted
/// beyond the tolerance; `sharp` entries additionally require the worst
/// fit to match the prediction from above.
pub fn run_decay_suite(entries: &[CorpusEntry], cfg: &RunConfig) -> SuiteRun {
    let rows: Vec<SuiteEntryDoc> = entries.iter().map(|e| run_entry(e, cfg)).collect();
    let passed = rows.iter().all(|r| r.passed);
    let document = SuiteDocument {
        schema: SCHEMA_VERSION,
        lambda_exponents: [cfg.lambda_min, cfg.lambda_max],
        tolerance: cfg.tolerance_gamma,
        passed,
        entries: rows,
    };
    let table = format_table(&document);
    SuiteRun { json: to_json_string(&document), table, passed, document }
}

fn run_entry(entry: &CorpusEntry, cfg: &RunConfig) -> SuiteEntryDoc {
    let (res, half) = entry.grid.unwrap_or((cfg.s_grid_resolution, 4.0));
    let mut s_grid = if res == 0 { Vec::new() } else { default_s_grid(res as usize, half) };
    s_grid.extend(entry.seeds.iter().copied());
    let (lmin, lmax) = entry.lambda.unwrap_or((cfg.lambda_min, cfg.lambda_max));
    let lambdas = dyadic_lambdas(lmin, lmax, 1);
    let opts = QuadOptions { panel_budget: cfg.panel_budget, ..QuadOptions::default() };

    let base = SuiteEntryDoc {
        name: entry.name.clone(),
        phase: entry.phase_text.clone(),
        gamma_predicted: rational_str(&entry.gamma),
        sharp: entry.sharp,
        status: String::new(),
        passed: false,
        worst_direction: None,
        gamma_hat: None,
        r_squared: None,
        budget_exceeded: false,
        detail: None,
    };
    match worst_case_decay(
        &entry.phase,
        &entry.amplitude,
        &s_grid,
        &lambdas,
        Some(entry.gamma.clone()),
        cfg.tolerance_gamma,
        &opts,
    ) {
        Ok(Some((s, fit))) => {
            let pred = rational_to_f64(&entry.gamma);
            let lower = fit.gamma_hat >= pred - cfg.tolerance_gamma;
            let pass = if entry.sharp {
                lower && fit.gamma_hat <= pred + cfg.tolerance_gamma
            } else {
                lower
            };
            SuiteEntryDoc {
                status: if pass { "pass" } else { "fail" }.into(),
                passed: pass,
                worst_direction: Some(s),
                gamma_hat: Some(fit.gamma_hat),
                r_squared: Some(fit.r_squared),
                budget_exceeded: fit.budget_exceeded,
                ..base
            }
        }
        Ok(None) => SuiteEntryDoc {
            status: "super-polynomial".into(),
            passed: true,
            detail: Some(
                "no direction produced a resolvable power law; the bound holds vacuously".into(),
            ),
            ..base
        },
        Err(e) => SuiteEntryDoc { status: "error".into(), detail: Some(e.to_string()), ..base },
    }
}

fn format_table(doc: &SuiteDocument) -> String {
    let mut t = String::new();
    let _ = writeln!(
        t,
        "{:<14} {:<34} {:>6} {:>8} {:>8}  {:<16} {}",
        "name", "phase", "gamma", "fitted", "r^2", "worst s", "status"
    );
    for e in &doc.entries {
        let fitted = e.gamma_hat.map_or_else(|| "-".into(), |g| format!("{g:.4}"));
        let r2 = e.r_squared.map_or_else(|| "-".into(), |r| format!("{r:.4}"));
        let s = e
            .worst_direction
            .map_or_else(|| "-".into(), |[a, b]| format!("({a:.2}, {b:.2})"));
        let mut status = e.status.clone();
        if e.budget_exceeded {
            status.push_str(" [budget]");
        }
        let _ = writeln!(
            t,
            "{:<14} {:<34} {:>6} {:>8} {:>8}  {:<16} {}",
            e.name, e.phase, e.gamma_predicted, fitted, r2, s, status
        );
    }
    let _ = writeln!(t, "overall: {}", if doc.passed { "pass" } else { "FAIL" });
    t
}
