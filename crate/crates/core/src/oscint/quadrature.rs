//! Oscillatory quadrature for phases with moderate frequencies.
//!
//! Panels are integrated by a Filon-type rule: the phase is linearised
//! at the panel centre, the slowly varying factor (amplitude times the
//! exponential of the nonlinear residual) is sampled on a 6x6 grid of
//! Gauss-Legendre nodes and expanded in Legendre polynomials, and the
//! products with the linear-phase exponential are integrated exactly
//! via the moments `int P_k(t) e^{iat} dt = 2 i^k j_k(a)`.  Panels are
//! split (quadtree) until the nonlinear residual stays below the angle
//! threshold, so the sampled factor never oscillates; the linear part
//! may oscillate arbitrarily fast at no extra cost.
//!
//! Two precision details matter at high frequencies.  The Taylor
//! coefficients of the phase at each panel centre are computed by an
//! exact binomial shift, so the residual is evaluated without the
//! catastrophic cancellation of `phase(x) - phase(c) - grad . u`, and
//! the subdivision test uses the rigorous tail bound
//! `sum |t_ij| h1^i h2^j`.  The centre phase itself is accumulated in
//! double-double arithmetic and split as `e^{i hi} (1 + i lo)`, which
//! keeps panels mutually coherent even when the phase reaches `1e8`
//! radians.

use super::amplitude::AmplitudeSpec;
use crate::poly::{rational_to_f64, Polynomial, UniPoly};
use num::complex::Complex64;

/// Engine knobs.  The defaults match the documented configuration:
/// panel budget one million, residual threshold `pi/4`.
#[derive(Debug, Clone)]
pub struct QuadOptions {
    pub panel_budget: u64,
    /// Maximal allowed nonlinear phase residual per panel, in radians.
    pub theta: f64,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { panel_budget: 1_000_000, theta: std::f64::consts::FRAC_PI_4 }
    }
}

/// Value of one oscillatory integral together with the work bookkeeping.
#[derive(Debug, Clone, Copy)]
pub struct OscResult {
    pub value: Complex64,
    pub panels: u64,
    /// The budget stopped refinement early; the value is still a best
    /// effort over the coarser panels.
    pub budget_exceeded: bool,
}

/// Gauss-Legendre nodes and weights of order six on `[-1, 1]`.  Six
/// nodes carry a degree-five Legendre expansion, which represents the
/// quintic smoothstep shoulders exactly and keeps the panel error of
/// the residual exponential near `1e-5` at the `pi/4` threshold.
const ORDER: usize = 6;
const NODES: [f64; ORDER] = [
    -0.932_469_514_203_152,
    -0.661_209_386_466_264_5,
    -0.238_619_186_083_196_9,
    0.238_619_186_083_196_9,
    0.661_209_386_466_264_5,
    0.932_469_514_203_152,
];
const WEIGHTS: [f64; ORDER] = [
    0.171_324_492_379_170_36,
    0.360_761_573_048_138_6,
    0.467_913_934_572_691_04,
    0.467_913_934_572_691_04,
    0.360_761_573_048_138_6,
    0.171_324_492_379_170_36,
];

fn legendre(k: usize, t: f64) -> f64 {
    let t2 = t * t;
    match k {
        0 => 1.0,
        1 => t,
        2 => 0.5 * (3.0 * t2 - 1.0),
        3 => 0.5 * t * (5.0 * t2 - 3.0),
        4 => 0.125 * (35.0 * t2 * t2 - 30.0 * t2 + 3.0),
        _ => 0.125 * t * (63.0 * t2 * t2 - 70.0 * t2 + 15.0),
    }
}

/// `(2k+1)!!` for `k = 0 .. 5`.
const DOUBLE_FACT: [f64; ORDER] = [1.0, 3.0, 15.0, 105.0, 945.0, 10395.0];

/// Spherical Bessel functions `j_0 .. j_5`, with a series branch near
/// the origin where the closed forms cancel catastrophically.
fn spherical_bessel(k: usize, a: f64) -> f64 {
    let abs = a.abs();
    if abs < 2.0 {
        // j_k(a) = a^k / (2k+1)!! * sum_j (-u)^j / (j! (2k+3)(2k+5)..)
        // with u = a^2 / 2.
        let u = 0.5 * a * a;
        let dk = (2 * k + 3) as f64;
        let mut term = 1.0;
        let mut sum = 1.0;
        for j in 0..40 {
            let denom = (j as f64 + 1.0) * (dk + 2.0 * j as f64);
            term *= -u / denom;
            sum += term;
            if term.abs() < 1e-17 * sum.abs().max(1e-30) {
                break;
            }
        }
        a.powi(k as i32) / DOUBLE_FACT[k] * sum
    } else {
        let (s, c) = a.sin_cos();
        let inv = 1.0 / a;
        let i2 = inv * inv;
        match k {
            0 => s * inv,
            1 => s * i2 - c * inv,
            2 => (3.0 * i2 - 1.0) * s * inv - 3.0 * c * i2,
            3 => (15.0 * i2 - 6.0) * s * i2 - (15.0 * i2 - 1.0) * c * inv,
            4 => {
                (105.0 * i2 * i2 - 45.0 * i2 + 1.0) * s * inv
                    - (105.0 * i2 - 10.0) * c * i2
            }
            _ => {
                (945.0 * i2 * i2 - 420.0 * i2 + 15.0) * s * i2
                    - (945.0 * i2 * i2 - 105.0 * i2 + 1.0) * c * inv
            }
        }
    }
}

/// `int_{-1}^{1} P_k(t) e^{i a t} dt = 2 i^k j_k(a)`.
fn legendre_moment(k: usize, a: f64) -> Complex64 {
    let j = 2.0 * spherical_bessel(k, a);
    match k % 4 {
        0 => Complex64::new(j, 0.0),
        1 => Complex64::new(0.0, j),
        2 => Complex64::new(-j, 0.0),
        _ => Complex64::new(0.0, -j),
    }
}

/// Compensated (Kahan) accumulator for complex panel sums.
#[derive(Debug, Clone, Copy, Default)]
struct Kahan {
    sum: Complex64,
    carry: Complex64,
}

impl Kahan {
    fn add(&mut self, x: Complex64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

/// Double-double accumulator for large phases.
#[derive(Debug, Clone, Copy, Default)]
struct DdPhase {
    hi: f64,
    lo: f64,
}

impl DdPhase {
    fn add_product(&mut self, a: f64, b: f64) {
        let (p, e) = two_prod(a, b);
        let (s, e2) = two_sum(self.hi, p);
        self.hi = s;
        self.lo += e + e2;
    }

    /// `e^{i phase}` with the low part applied as a first-order rotation.
    fn cis(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.hi) * Complex64::new(1.0, self.lo)
    }
}

/// Taylor expansion of the phase polynomial at one panel centre.
struct Shifted {
    value: f64,
    grad: [f64; 2],
    /// Nonzero coefficients of total order at least two, as
    /// `(coefficient, i, j)` for the monomial `u1^i u2^j`.
    tail: Vec<(f64, i32, i32)>,
}

impl Shifted {
    /// Rigorous bound for `|sum tail u^alpha|` over `|u_k| <= h_k`.
    fn tail_bound(&self, h: [f64; 2]) -> f64 {
        let mut acc = 0.0;
        for &(t, i, j) in &self.tail {
            acc += t.abs() * h[0].powi(i) * h[1].powi(j);
        }
        acc
    }

    fn tail_eval(&self, u1: f64, u2: f64) -> f64 {
        let mut acc = 0.0;
        for &(t, i, j) in &self.tail {
            acc += t * u1.powi(i) * u2.powi(j);
        }
        acc
    }
}

struct Engine<'a> {
    terms: Vec<(f64, usize, usize)>,
    deg1: usize,
    deg2: usize,
    /// Pascal's triangle up to the larger partial degree.
    pascal: Vec<Vec<f64>>,
    amp: &'a AmplitudeSpec,
    xi: [f64; 3],
}

impl<'a> Engine<'a> {
    fn new(phi: &Polynomial, amp: &'a AmplitudeSpec, xi: [f64; 3]) -> Self {
        let terms: Vec<(f64, usize, usize)> = phi
            .terms()
            .map(|(&(a1, a2), c)| (rational_to_f64(c), a1 as usize, a2 as usize))
            .collect();
        let deg1 = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let deg2 = terms.iter().map(|t| t.2).max().unwrap_or(0);
        let n = deg1.max(deg2) + 1;
        let mut pascal: Vec<Vec<f64>> = Vec::with_capacity(n);
        for row in 0..n {
            let mut r = vec![1.0; row + 1];
            for k in 1..row {
                r[k] = pascal[row - 1][k - 1] + pascal[row - 1][k];
            }
            pascal.push(r);
        }
        Engine { terms, deg1, deg2, pascal, amp, xi }
    }

    /// Binomial shift `phi(c + u)` collected by powers of `u`.
    fn shift(&self, c: [f64; 2]) -> Shifted {
        let stride = self.deg2 + 1;
        let mut grid = vec![0.0f64; (self.deg1 + 1) * stride];
        let mut pow1 = vec![1.0f64; self.deg1 + 1];
        for k in 1..=self.deg1 {
            pow1[k] = pow1[k - 1] * c[0];
        }
        let mut pow2 = vec![1.0f64; self.deg2 + 1];
        for k in 1..=self.deg2 {
            pow2[k] = pow2[k - 1] * c[1];
        }
        for &(coef, a1, a2) in &self.terms {
            for i in 0..=a1 {
                let f1 = self.pascal[a1][i] * pow1[a1 - i];
                for j in 0..=a2 {
                    grid[i * stride + j] += coef * f1 * self.pascal[a2][j] * pow2[a2 - j];
                }
            }
        }
        let mut tail = Vec::new();
        for i in 0..=self.deg1 {
            for j in 0..=self.deg2 {
                let t = grid[i * stride + j];
                if i + j >= 2 && t != 0.0 {
                    tail.push((t, i as i32, j as i32));
                }
            }
        }
        Shifted {
            value: grid[0],
            grad: [
                if self.deg1 >= 1 { grid[stride] } else { 0.0 },
                if self.deg2 >= 1 { grid[1] } else { 0.0 },
            ],
            tail,
        }
    }

    /// Filon value of one panel, given the centre expansion.
    fn panel(&self, sh: &Shifted, c: [f64; 2], h: [f64; 2]) -> Complex64 {
        let mut phase_c = DdPhase::default();
        phase_c.add_product(self.xi[0], c[0]);
        phase_c.add_product(self.xi[1], c[1]);
        phase_c.add_product(self.xi[2], sh.value);
        let a1 = (self.xi[0] + self.xi[2] * sh.grad[0]) * h[0];
        let a2 = (self.xi[1] + self.xi[2] * sh.grad[1]) * h[1];

        // Sample the slow factor on the tensor Gauss grid.
        let mut slow = [[Complex64::new(0.0, 0.0); ORDER]; ORDER];
        let mut all_zero = true;
        for (p, &tp) in NODES.iter().enumerate() {
            for (q, &tq) in NODES.iter().enumerate() {
                let u1 = h[0] * tp;
                let u2 = h[1] * tq;
                let eta = self.amp.eval(c[0] + u1, c[1] + u2);
                if eta == 0.0 {
                    continue;
                }
                all_zero = false;
                let resid = self.xi[2] * sh.tail_eval(u1, u2);
                slow[p][q] = Complex64::from_polar(eta, resid);
            }
        }
        if all_zero {
            return Complex64::new(0.0, 0.0);
        }

        // Legendre coefficients (degree five per direction) and moments.
        let mut value = Complex64::new(0.0, 0.0);
        for j in 0..ORDER {
            let mj = legendre_moment(j, a1);
            for k in 0..ORDER {
                let mut coeff = Complex64::new(0.0, 0.0);
                for p in 0..ORDER {
                    for q in 0..ORDER {
                        coeff += WEIGHTS[p]
                            * WEIGHTS[q]
                            * legendre(j, NODES[p])
                            * legendre(k, NODES[q])
                            * slow[p][q];
                    }
                }
                coeff *= (2.0 * j as f64 + 1.0) / 2.0 * ((2.0 * k as f64 + 1.0) / 2.0);
                value += coeff * mj * legendre_moment(k, a2);
            }
        }
        value * phase_c.cis() * (h[0] * h[1])
    }
}

/// `J(xi) = int e^{i (xi_1 x_1 + xi_2 x_2 + xi_3 phi(x))} amp(x) dx`.
///
/// Deterministic for fixed inputs and options.  If the panel budget is
/// exhausted, the remaining panels are integrated at their current size
/// and the result is flagged.
pub fn osc_integral(
    phi: &Polynomial,
    amp: &AmplitudeSpec,
    xi: [f64; 3],
    opts: &QuadOptions,
) -> OscResult {
    let engine = Engine::new(phi, amp, xi);
    let [[lo1, hi1], [lo2, hi2]] = amp.support_box();
    let h_mixed = amp.mixed_panel_halfwidth();
    let mut acc = Kahan::default();
    let mut stack: Vec<([f64; 2], [f64; 2])> = vec![(
        [0.5 * (lo1 + hi1), 0.5 * (lo2 + hi2)],
        [0.5 * (hi1 - lo1), 0.5 * (hi2 - lo2)],
    )];
    let mut panels: u64 = 0;
    let mut budget_exceeded = false;

    while let Some((c, h)) = stack.pop() {
        // Panels clear of the shoulders carry the amplitude exactly at
        // any size; only shoulder-straddling panels cap their width.
        let class = match amp.classify_panel(c, h) {
            super::amplitude::PanelClass::Zero => continue,
            class => class,
        };
        let sh = engine.shift(c);
        let too_wide = class == super::amplitude::PanelClass::Mixed
            && (h[0] > h_mixed || h[1] > h_mixed);
        let needs_split =
            too_wide || engine.xi[2].abs() * sh.tail_bound(h) > opts.theta;
        let over_budget = panels + stack.len() as u64 + 1 >= opts.panel_budget;
        if needs_split && !over_budget {
            let hh = [0.5 * h[0], 0.5 * h[1]];
            for sx in [-1.0, 1.0] {
                for sy in [-1.0, 1.0] {
                    stack.push(([c[0] + sx * hh[0], c[1] + sy * hh[1]], hh));
                }
            }
            continue;
        }
        budget_exceeded = budget_exceeded || needs_split;
        acc.add(engine.panel(&sh, c, h));
        panels += 1;
    }

    OscResult { value: acc.sum, panels, budget_exceeded }
}

/// One-dimensional sibling of [`osc_integral`] for the van der Corput
/// reference integrals `int e^{i lambda g(t)} chi(t) dt`, with `chi` a
/// plateau window equal to one on `[-3/4, 3/4]` and supported in
/// `[-1, 1]`.
pub fn osc_integral_1d(g: &UniPoly, lambda: f64, opts: &QuadOptions) -> OscResult {
    let coeffs: Vec<f64> = g.coeffs().iter().map(rational_to_f64).collect();
    let deg = coeffs.len().saturating_sub(1);
    let mut pascal: Vec<Vec<f64>> = Vec::with_capacity(deg + 1);
    for row in 0..=deg {
        let mut r = vec![1.0; row + 1];
        for k in 1..row {
            r[k] = pascal[row - 1][k - 1] + pascal[row - 1][k];
        }
        pascal.push(r);
    }
    // shifted coefficients of g(c + u) by powers of u
    let shift = |c: f64| -> Vec<f64> {
        let mut out = vec![0.0f64; deg + 1];
        let mut pow = vec![1.0f64; deg + 1];
        for k in 1..=deg {
            pow[k] = pow[k - 1] * c;
        }
        for (m, &coef) in coeffs.iter().enumerate() {
            for k in 0..=m {
                out[k] += coef * pascal[m][k] * pow[m - k];
            }
        }
        out
    };
    // The window joints sit at -1, -3/4, 3/4, 1: dyadic points, so once
    // panels are aligned at width 1/4 each panel sees a single quintic
    // piece and the degree-5 expansion carries it exactly.
    let window = |t: f64| super::amplitude::plateau_window(t, -0.75, 0.75, 0.25);

    let mut acc = Kahan::default();
    let mut stack: Vec<(f64, f64)> = vec![(0.0, 1.0)];
    let mut panels: u64 = 0;
    let mut budget_exceeded = false;
    let h_max = 0.125;
    while let Some((c, h)) = stack.pop() {
        let sh = shift(c);
        let tail_bound: f64 = sh
            .iter()
            .enumerate()
            .skip(2)
            .map(|(k, t)| t.abs() * h.powi(k as i32))
            .sum();
        let needs_split = h > h_max || lambda.abs() * tail_bound > opts.theta;
        let over_budget = panels + stack.len() as u64 + 1 >= opts.panel_budget;
        if needs_split && !over_budget {
            let hh = 0.5 * h;
            stack.push((c - hh, hh));
            stack.push((c + hh, hh));
            continue;
        }
        budget_exceeded = budget_exceeded || needs_split;

        let mut phase_c = DdPhase::default();
        phase_c.add_product(lambda, sh[0]);
        let a = lambda * sh.get(1).copied().unwrap_or(0.0) * h;
        let mut samples = [Complex64::new(0.0, 0.0); ORDER];
        for (p, &tp) in NODES.iter().enumerate() {
            let u = h * tp;
            let eta = window(c + u);
            if eta == 0.0 {
                continue;
            }
            let mut resid = 0.0;
            for (k, &t) in sh.iter().enumerate().skip(2) {
                resid += t * u.powi(k as i32);
            }
            samples[p] = Complex64::from_polar(eta, lambda * resid);
        }
        let mut value = Complex64::new(0.0, 0.0);
        for k in 0..ORDER {
            let mut coeff = Complex64::new(0.0, 0.0);
            for p in 0..ORDER {
                coeff += WEIGHTS[p] * legendre(k, NODES[p]) * samples[p];
            }
            coeff *= (2.0 * k as f64 + 1.0) / 2.0;
            value += coeff * legendre_moment(k, a);
        }
        acc.add(value * phase_c.cis() * h);
        panels += 1;
    }
    OscResult { value: acc.sum, panels, budget_exceeded }
}
