//! Decay-verification corpora.
//!
//! A corpus is flat INI-style text: one `[name]` section per entry.
//! Required keys: `phase` (monomial-sum expression), `amplitude`
//! (`annulus INNER OUTER [WIDTH]` or `box CX CY RADIUS [WIDTH]`) and
//! `gamma` (predicted decay exponent, rational).  Optional keys: `sharp`
//! (assert the fit matches the prediction on both sides, not just from
//! below), `grid = RESOLUTION,HALF` (direction-scan override; resolution
//! zero restricts the scan to the seeded directions), `seeds = a,b; c,d`
//! (directions appended to the scan) and `lambda = MIN,MAX` (dyadic
//! exponent override).

use super::parse::{parse_polynomial, parse_rational};
use crate::oscint::AmplitudeSpec;
use crate::poly::{Polynomial, Rational};

/// The built-in corpus: the twelve model phases of the classification
/// table.
pub const BUNDLED: &str = include_str!("../../corpus/bundled.corpus");

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub phase_text: String,
    pub phase: Polynomial,
    pub amplitude: AmplitudeSpec,
    /// Predicted decay exponent of the scaled oscillatory integral.
    pub gamma: Rational,
    /// Assert sharpness, not only the one-sided bound.
    pub sharp: bool,
    /// Direction-scan override `(resolution, half-extent)`.
    pub grid: Option<(u32, f64)>,
    /// Directions appended to the scan.
    pub seeds: Vec<[f64; 2]>,
    /// Dyadic frequency-exponent override.
    pub lambda: Option<(u32, u32)>,
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("corpus line {line}: {message}")]
    Invalid { line: usize, message: String },
}

fn invalid(line: usize, message: impl Into<String>) -> CorpusError {
    CorpusError::Invalid { line, message: message.into() }
}

#[derive(Default)]
struct Builder {
    name: String,
    line: usize,
    phase: Option<(String, Polynomial)>,
    amplitude: Option<AmplitudeSpec>,
    gamma: Option<Rational>,
    sharp: bool,
    grid: Option<(u32, f64)>,
    seeds: Vec<[f64; 2]>,
    lambda: Option<(u32, u32)>,
}

impl Builder {
    fn finish(self) -> Result<CorpusEntry, CorpusError> {
        let missing = |key: &str| invalid(self.line, format!("[{}] is missing `{key}`", self.name));
        let (phase_text, phase) = self.phase.ok_or_else(|| missing("phase"))?;
        let amplitude = self.amplitude.ok_or_else(|| missing("amplitude"))?;
        let gamma = self.gamma.ok_or_else(|| missing("gamma"))?;
        Ok(CorpusEntry {
            name: self.name,
            phase_text,
            phase,
            amplitude,
            gamma,
            sharp: self.sharp,
            grid: self.grid,
            seeds: self.seeds,
            lambda: self.lambda,
        })
    }
}

fn parse_f64(line: usize, text: &str) -> Result<f64, CorpusError> {
    text.parse()
        .map_err(|_| invalid(line, format!("`{text}` is not a valid number")))
}

fn parse_u32(line: usize, text: &str) -> Result<u32, CorpusError> {
    text.parse()
        .map_err(|_| invalid(line, format!("`{text}` is not a valid integer")))
}

fn parse_pair(line: usize, text: &str) -> Result<(&str, &str), CorpusError> {
    text.split_once(',')
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| invalid(line, format!("expected `a,b`, got `{text}`")))
}

fn parse_amplitude(line: usize, value: &str) -> Result<AmplitudeSpec, CorpusError> {
    let words: Vec<&str> = value.split_whitespace().collect();
    let spec = match words.as_slice() {
        ["annulus", inner, outer] => {
            AmplitudeSpec::annulus(parse_f64(line, inner)?, parse_f64(line, outer)?)
        }
        ["annulus", inner, outer, width] => AmplitudeSpec::new(
            crate::oscint::AmplitudeKind::Annulus {
                inner: parse_f64(line, inner)?,
                outer: parse_f64(line, outer)?,
            },
            parse_f64(line, width)?,
        ),
        ["box", cx, cy, radius] => AmplitudeSpec::centered_box(
            [parse_f64(line, cx)?, parse_f64(line, cy)?],
            parse_f64(line, radius)?,
        ),
        ["box", cx, cy, radius, width] => AmplitudeSpec::new(
            crate::oscint::AmplitudeKind::Box {
                center: [parse_f64(line, cx)?, parse_f64(line, cy)?],
                radius: parse_f64(line, radius)?,
            },
            parse_f64(line, width)?,
        ),
        _ => {
            return Err(invalid(
                line,
                format!("expected `annulus INNER OUTER` or `box CX CY RADIUS`, got `{value}`"),
            ))
        }
    };
    spec.map_err(|e| invalid(line, e.to_string()))
}

/// Parses a corpus file into its entries, preserving order.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    let mut entries = Vec::new();
    let mut current: Option<Builder> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') || t.starts_with(';') {
            continue;
        }
        if let Some(name) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            if let Some(b) = current.take() {
                entries.push(b.finish()?);
            }
            current = Some(Builder { name: name.trim().to_string(), line, ..Builder::default() });
            continue;
        }
        let Some(b) = current.as_mut() else {
            return Err(invalid(line, "keys must follow a `[name]` section header"));
        };
        let (key, value) = t
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| invalid(line, format!("expected `key = value`, got `{t}`")))?;
        match key {
            "phase" => {
                let p = parse_polynomial(value)
                    .map_err(|e| invalid(line, e.to_string()))?;
                b.phase = Some((value.to_string(), p));
            }
            "amplitude" => b.amplitude = Some(parse_amplitude(line, value)?),
            "gamma" => {
                b.gamma =
                    Some(parse_rational(value).map_err(|e| invalid(line, e.to_string()))?)
            }
            "sharp" => {
                b.sharp = match value {
                    "true" => true,
                    "false" => false,
                    _ => return Err(invalid(line, "`sharp` must be true or false")),
                }
            }
            "grid" => {
                let (res, half) = parse_pair(line, value)?;
                b.grid = Some((parse_u32(line, res)?, parse_f64(line, half)?));
            }
            "seeds" => {
                for part in value.split(';') {
                    let (a, bb) = parse_pair(line, part.trim())?;
                    b.seeds.push([parse_f64(line, a)?, parse_f64(line, bb)?]);
                }
            }
            "lambda" => {
                let (lo, hi) = parse_pair(line, value)?;
                b.lambda = Some((parse_u32(line, lo)?, parse_u32(line, hi)?));
            }
            _ => return Err(invalid(line, format!("unknown key `{key}`"))),
        }
    }
    if let Some(b) = current.take() {
        entries.push(b.finish()?);
    }
    Ok(entries)
}
