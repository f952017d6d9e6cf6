//! Newton-diagram rendering.
//!
//! The picture is plain SVG 1.1 with the view box normalized to the
//! exponent bounding box plus one lattice step: a light lattice grid, the
//! shaded polyhedron, every support point as a dot, the compact boundary
//! edges, the unbounded rays dashed, the principal face highlighted, the
//! bisectrix, and a labeled marker at `(d, d)`.  Element classes make the
//! structure testable (`principal-edge`, `principal-vertex`,
//! `distance-marker`), and the marker carries its exact coordinates as
//! `data-x`/`data-y` attributes.  All geometry derives from exact data
//! through the same arithmetic every run, so the output is byte-stable.

use super::report::rational_str;
use crate::newton::{NewtonData, PrincipalFace};
use crate::poly::rational_to_f64;
use std::fmt::Write as _;

/// Padding around the exponent box, in lattice units.
const PAD: f64 = 0.8;
/// Pixels per lattice unit in the width/height hints.
const SCALE: f64 = 40.0;

const STYLE: &str = "\
    .grid { stroke: #e3e3e3; stroke-width: 0.02; }\n\
    .axis { stroke: #8a8a8a; stroke-width: 0.04; }\n\
    .region { fill: #cfe2f3; fill-opacity: 0.55; stroke: none; }\n\
    .support { fill: #1f4e79; }\n\
    .edge { stroke: #1f4e79; stroke-width: 0.06; }\n\
    .ray { stroke: #1f4e79; stroke-width: 0.06; stroke-dasharray: 0.15 0.1; }\n\
    .principal-edge { stroke: #d0342c; stroke-width: 0.1; }\n\
    .principal-vertex { fill: #d0342c; }\n\
    .principal-ray { stroke: #d0342c; stroke-width: 0.1; stroke-dasharray: 0.15 0.1; }\n\
    .bisectrix { stroke: #3a7d44; stroke-width: 0.04; stroke-dasharray: 0.22 0.14; }\n\
    .distance-marker { fill: #3a7d44; stroke: #ffffff; stroke-width: 0.03; }\n\
    .distance-label { font-family: monospace; font-size: 0.32px; fill: #1a1a1a; }\n";

/// Compact decimal form with three places, trailing zeros trimmed.
fn num(x: f64) -> String {
    let mut s = format!("{x:.3}");
    while s.ends_with('0') {
        s.pop();
    }
    if s.ends_with('.') {
        s.pop();
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

/// Renders the diagram; the y axis is flipped so exponents grow upward.
pub fn newton_svg(nd: &NewtonData) -> String {
    let verts = nd.vertices();
    let support = nd.support();
    let bx = support.iter().map(|p| p.0).max().unwrap_or(0) as f64 + 1.0;
    let by = support.iter().map(|p| p.1).max().unwrap_or(0) as f64 + 1.0;
    let x = |u: f64| u;
    let y = |v: f64| by - v;

    let mut out = String::new();
    let w = num((bx + 2.0 * PAD) * SCALE);
    let h = num((by + 2.0 * PAD) * SCALE);
    let vb = format!(
        "{} {} {} {}",
        num(-PAD),
        num(-PAD),
        num(bx + 2.0 * PAD),
        num(by + 2.0 * PAD)
    );
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{vb}" width="{w}" height="{h}">"#
    );
    let _ = writeln!(out, "<title>Newton polyhedron</title>");
    let _ = writeln!(out, "<style>\n{STYLE}</style>");

    // lattice grid, axes darker
    for i in 0..=(bx as u32) {
        let class = if i == 0 { "axis" } else { "grid" };
        let _ = writeln!(
            out,
            r#"<line class="{class}" x1="{0}" y1="{1}" x2="{0}" y2="{2}"/>"#,
            num(x(i as f64)),
            num(y(-PAD)),
            num(y(by + PAD))
        );
    }
    for j in 0..=(by as u32) {
        let class = if j == 0 { "axis" } else { "grid" };
        let _ = writeln!(
            out,
            r#"<line class="{class}" x1="{1}" y1="{0}" x2="{2}" y2="{0}"/>"#,
            num(y(j as f64)),
            num(x(-PAD)),
            num(x(bx + PAD))
        );
    }

    // shaded polyhedron, clipped by the view box: enter along the vertical
    // ray, walk the compact boundary, leave along the horizontal ray
    let first = verts[0];
    let last = verts[verts.len() - 1];
    let mut path = format!("M {} {}", num(x(first.0 as f64)), num(y(by + PAD)));
    for &(a, b) in verts {
        let _ = write!(path, " L {} {}", num(x(a as f64)), num(y(b as f64)));
    }
    let _ = write!(path, " L {} {}", num(x(bx + PAD)), num(y(last.1 as f64)));
    let _ = write!(path, " L {} {}", num(x(bx + PAD)), num(y(by + PAD)));
    let _ = writeln!(out, r#"<path class="region" d="{path} Z"/>"#);

    // boundary: compact edges solid, unbounded rays dashed
    for ((a1, b1), (a2, b2)) in nd.edges() {
        let _ = writeln!(
            out,
            r#"<line class="edge" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            num(x(a1 as f64)),
            num(y(b1 as f64)),
            num(x(a2 as f64)),
            num(y(b2 as f64))
        );
    }
    let _ = writeln!(
        out,
        r#"<line class="ray" x1="{0}" y1="{1}" x2="{0}" y2="{2}"/>"#,
        num(x(first.0 as f64)),
        num(y(first.1 as f64)),
        num(y(by + PAD))
    );
    let _ = writeln!(
        out,
        r#"<line class="ray" x1="{}" y1="{1}" x2="{2}" y2="{1}"/>"#,
        num(x(last.0 as f64)),
        num(y(last.1 as f64)),
        num(x(bx + PAD))
    );

    // support points
    for &(a, b) in support {
        let _ = writeln!(
            out,
            r#"<circle class="support" cx="{}" cy="{}" r="0.07"/>"#,
            num(x(a as f64)),
            num(y(b as f64))
        );
    }

    // principal face highlight
    match nd.principal_face() {
        PrincipalFace::Vertex(i) => {
            let (a, b) = verts[i];
            let _ = writeln!(
                out,
                r#"<circle class="principal-vertex" cx="{}" cy="{}" r="0.13"/>"#,
                num(x(a as f64)),
                num(y(b as f64))
            );
        }
        PrincipalFace::Edge(i) => {
            let (a1, b1) = verts[i];
            let (a2, b2) = verts[i + 1];
            let _ = writeln!(
                out,
                r#"<line class="principal-edge" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                num(x(a1 as f64)),
                num(y(b1 as f64)),
                num(x(a2 as f64)),
                num(y(b2 as f64))
            );
        }
        PrincipalFace::VerticalRay => {
            let _ = writeln!(
                out,
                r#"<line class="principal-ray" x1="{0}" y1="{1}" x2="{0}" y2="{2}"/>"#,
                num(x(first.0 as f64)),
                num(y(first.1 as f64)),
                num(y(by + PAD))
            );
        }
        PrincipalFace::HorizontalRay => {
            let _ = writeln!(
                out,
                r#"<line class="principal-ray" x1="{}" y1="{1}" x2="{2}" y2="{1}"/>"#,
                num(x(last.0 as f64)),
                num(y(last.1 as f64)),
                num(x(bx + PAD))
            );
        }
    }

    // bisectrix and the distance marker on it
    let t = bx.min(by) + PAD;
    let _ = writeln!(
        out,
        r#"<line class="bisectrix" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
        num(x(0.0)),
        num(y(0.0)),
        num(x(t)),
        num(y(t))
    );
    let d = rational_to_f64(nd.distance());
    let ds = rational_str(nd.distance());
    let _ = writeln!(
        out,
        r#"<circle class="distance-marker" data-x="{ds}" data-y="{ds}" cx="{}" cy="{}" r="0.11"/>"#,
        num(x(d)),
        num(y(d))
    );
    let _ = writeln!(
        out,
        r#"<text class="distance-label" x="{}" y="{}">({ds}, {ds})</text>"#,
        num(x(d + 0.18)),
        num(y(d + 0.22))
    );

    out.push_str("</svg>\n");
    out
}
