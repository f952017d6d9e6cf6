//! Randomised cross-checks shared between the property suite and the
//! acceptance gate.  Each driver panics with case context on the first
//! disagreement, so a bare call doubles as an assertion.

use std::collections::BTreeMap;

use phasetype::cli::corpus::{parse_corpus, BUNDLED};
use phasetype::homog::{adaptedness, factor_homogeneous};
use phasetype::newton::{newton_polyhedron, NewtonData, PrincipalFace, Weight};
use phasetype::normalform::{classify, SingularityReport};
use phasetype::poly::{
    rat, rational_to_f64, real_root_multiplicities, rint, Polynomial, Rational, RootLocation,
    UniPoly,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const COORD_MAX: u32 = 12;
/// Functional grid bound for the vertex oracle.  Supports live in
/// `[0, 12]^2`, so edge normals have entries at most 12.  The cone of
/// functionals picking out a hull vertex always contains either the mediant
/// of the two adjacent edge normals (entries at most 24) or, at the extreme
/// vertices, a functional like `(1, 13)`; a grid up to 25 therefore
/// witnesses every vertex.
const GRID: i64 = 2 * COORD_MAX as i64 + 1;

fn dot(w: (i64, i64), a: (u32, u32)) -> i64 {
    w.0 * a.0 as i64 + w.1 * a.1 as i64
}

/// Is `v` a vertex of `conv(support) + R_{>=0}^2`?  Brute force: search for
/// a strictly positive integer functional uniquely minimised at `v`.
fn is_hull_vertex(v: (u32, u32), support: &[(u32, u32)]) -> bool {
    for i in 1..=GRID {
        for j in 1..=GRID {
            let val = dot((i, j), v);
            if support.iter().all(|&u| u == v || dot((i, j), u) > val) {
                return true;
            }
        }
    }
    false
}

/// Newton distance by linear-programming duality: the bisectrix crossing is
/// `max_w min_u (w . u) / (w1 + w2)` over nonnegative `w`, and the maximum
/// is attained at an edge normal or an axis direction, all of which lie on
/// the integer grid.  Returns the value as a reduced fraction.
fn distance_oracle(support: &[(u32, u32)]) -> Rational {
    let mut best = (0i64, 1i64);
    for i in 0..=GRID {
        for j in 0..=GRID {
            if i == 0 && j == 0 {
                continue;
            }
            let m = support.iter().map(|&u| dot((i, j), u)).min().unwrap();
            if m * best.1 > best.0 * (i + j) {
                best = (m, i + j);
            }
        }
    }
    rat(best.0, best.1)
}

/// The support points lying on the principal face, by direct geometry.
fn face_support(nd: &NewtonData, support: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let vs = nd.vertices();
    match nd.principal_face() {
        PrincipalFace::Vertex(i) => vec![vs[i]],
        PrincipalFace::Edge(i) => {
            let (p, q) = (vs[i], vs[i + 1]);
            let along = |u: (u32, u32)| {
                let cross = (q.0 as i64 - p.0 as i64) * (u.1 as i64 - p.1 as i64)
                    - (q.1 as i64 - p.1 as i64) * (u.0 as i64 - p.0 as i64);
                cross == 0 && p.0 <= u.0 && u.0 <= q.0
            };
            support.iter().copied().filter(|&u| along(u)).collect()
        }
        PrincipalFace::VerticalRay => {
            let m1 = support.iter().map(|u| u.0).min().unwrap();
            support.iter().copied().filter(|u| u.0 == m1).collect()
        }
        PrincipalFace::HorizontalRay => {
            let m2 = support.iter().map(|u| u.1).min().unwrap();
            support.iter().copied().filter(|u| u.1 == m2).collect()
        }
    }
}

fn check_one_hull(phi: &Polynomial, case: usize) {
    let support = phi.support();
    let nd = newton_polyhedron(phi)
        .unwrap_or_else(|e| panic!("case {case}: {e} for support {support:?}"));

    let mut expected: Vec<(u32, u32)> = support
        .iter()
        .copied()
        .filter(|&v| is_hull_vertex(v, &support))
        .collect();
    expected.sort_unstable();
    let mut got = nd.vertices().to_vec();
    got.sort_unstable();
    assert_eq!(got, expected, "case {case}: vertices for {support:?}");

    // Edges are exactly the consecutive vertex pairs.
    let vs = nd.vertices();
    let edges: Vec<_> = nd.edges().collect();
    assert_eq!(edges.len(), vs.len().saturating_sub(1), "case {case}");
    for (i, e) in edges.iter().enumerate() {
        assert_eq!(*e, (vs[i], vs[i + 1]), "case {case}");
    }

    let d = nd.distance().clone();
    assert_eq!(d, distance_oracle(&support), "case {case}: distance for {support:?}");

    // The principal face really is the face the bisectrix meets, and has
    // minimal dimension.
    match nd.principal_face() {
        PrincipalFace::Vertex(i) => {
            let v = vs[i];
            assert_eq!(rint(v.0 as i64), d, "case {case}");
            assert_eq!(rint(v.1 as i64), d, "case {case}");
        }
        PrincipalFace::Edge(i) => {
            let (p, q) = (vs[i], vs[i + 1]);
            let collinear = (rint(q.0 as i64) - rint(p.0 as i64))
                * (d.clone() - rint(p.1 as i64))
                == (rint(q.1 as i64) - rint(p.1 as i64)) * (d.clone() - rint(p.0 as i64));
            assert!(collinear, "case {case}: ({d}, {d}) off the edge {p:?}-{q:?}");
            assert!(
                rint(p.0 as i64) < d && d < rint(q.0 as i64),
                "case {case}: bisectrix meets an endpoint of {p:?}-{q:?}"
            );
        }
        PrincipalFace::VerticalRay => {
            let top = vs[0];
            assert_eq!(d, rint(top.0 as i64), "case {case}");
            assert!(d > rint(top.1 as i64), "case {case}");
        }
        PrincipalFace::HorizontalRay => {
            let bottom = vs[vs.len() - 1];
            assert_eq!(d, rint(bottom.1 as i64), "case {case}");
            assert!(d > rint(bottom.0 as i64), "case {case}");
        }
    }

    // The principal part carries the original coefficients on the face
    // support, and nothing else.
    let pp = nd.principal_part();
    assert_eq!(pp.support(), face_support(&nd, &support), "case {case}");
    for (&(a1, a2), c) in pp.terms() {
        assert_eq!(*c, phi.coeff(a1, a2), "case {case}");
    }

    // A compact-edge weight reproduces the distance and supports the hull.
    if let PrincipalFace::Edge(_) = nd.principal_face() {
        let w = nd.principal_weight().expect("compact edge carries a weight");
        assert_eq!(w.distance(), d, "case {case}");
        for &u in &support {
            let level = w.dot(u);
            if pp.support().contains(&u) {
                assert_eq!(level, rint(1), "case {case}: {u:?} not on the weight line");
            } else {
                assert!(level > rint(1), "case {case}: {u:?} below the weight line");
            }
        }
    }
}

/// Random supports against the supporting-functional oracle.
pub fn check_random_hulls(cases: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut run = 0;
    while run < cases {
        let n = rng.gen_range(1..=10);
        let mut phi = Polynomial::zero();
        for _ in 0..n {
            let a1 = rng.gen_range(0..=COORD_MAX);
            let a2 = rng.gen_range(0..=COORD_MAX);
            if (a1, a2) != (0, 0) {
                phi.add_term(a1, a2, rint(rng.gen_range(1..=3)));
            }
        }
        if phi.is_zero() {
            continue;
        }
        check_one_hull(&phi, run);
        run += 1;
    }
}

/// Random products with known branch structure round-trip through the
/// weighted-homogeneous factoriser.
pub fn check_factorisation_round_trip(cases: usize, seed: u64) {
    let steps: [(u32, u32); 6] = [(1, 1), (1, 2), (2, 1), (1, 3), (3, 2), (2, 3)];
    let roots: [(i64, i64); 10] = [
        (1, 1),
        (-1, 1),
        (2, 1),
        (-2, 1),
        (1, 2),
        (-1, 2),
        (3, 1),
        (5, 3),
        (-3, 2),
        (7, 2),
    ];
    let units: [(i64, i64); 4] = [(1, 1), (-1, 1), (2, 1), (1, 3)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut run = 0;
    while run < cases {
        let (p, q) = steps[rng.gen_range(0..steps.len())];
        let nu1 = rng.gen_range(0..=2u32);
        let nu2 = rng.gen_range(0..=2u32);
        let n_lin = rng.gen_range(0..=3usize);
        let m_c = rng.gen_range(0..=2u32);
        if nu1 + nu2 == 0 && n_lin == 0 && m_c == 0 {
            continue;
        }

        let (un, ud) = units[rng.gen_range(0..units.len())];
        let mut phi = Polynomial::monomial(nu1, nu2, rat(un, ud));
        let mut pool = roots.to_vec();
        pool.shuffle(&mut rng);
        let mut mults = Vec::new();
        for &(cn, cd) in pool.iter().take(n_lin) {
            // One real branch x2^q = c x1^p of multiplicity m.
            let m = rng.gen_range(1..=3u32);
            mults.push(m);
            let factor =
                Polynomial::from_terms([((0, q), rint(1)), ((p, 0), -rat(cn, cd))]);
            for _ in 0..m {
                phi = phi.mul(&factor);
            }
        }
        // A branch-free block: the shadow of x2^{2q} + x1^{2p} is u^2 + 1.
        let block = Polynomial::from_terms([((0, 2 * q), rint(1)), ((2 * p, 0), rint(1))]);
        for _ in 0..m_c {
            phi = phi.mul(&block);
        }

        // Normalise the weight so the support sits on the level-one line.
        let total: u32 = q * nu1
            + p * nu2
            + p * q * mults.iter().sum::<u32>()
            + 2 * p * q * m_c;
        let k = Weight::new(rat(q as i64, total as i64), rat(p as i64, total as i64));
        let f = factor_homogeneous(&phi, &k)
            .unwrap_or_else(|e| panic!("case {run}: {e} for {phi:?}"));
        assert_eq!(f.expand(), phi, "case {run}: expansion differs");
        assert_eq!((f.nu1, f.nu2), (nu1, nu2), "case {run}: axis multiplicities");
        assert_eq!(f.step, (p, q), "case {run}: step");
        let expected_roots = n_lin + usize::from(nu1 > 0) + usize::from(nu2 > 0);
        assert_eq!(f.distinct_real_roots(), expected_roots, "case {run}");
        let expected_max = mults.iter().copied().max().unwrap_or(0).max(nu1).max(nu2);
        assert_eq!(f.max_real_multiplicity(), expected_max, "case {run}");
        run += 1;
    }
}

/// Random products with known real roots are recovered exactly, rational
/// roots as exact values and irrational ones inside isolating intervals.
pub fn check_root_recovery(cases: usize, seed: u64) {
    let rationals: [(i64, i64); 12] = [
        (0, 1),
        (1, 1),
        (-1, 1),
        (2, 1),
        (-2, 1),
        (1, 2),
        (-1, 2),
        (3, 2),
        (-3, 2),
        (1, 3),
        (5, 1),
        (-7, 2),
    ];
    // Quadratic blocks: coefficients (c0, c1, c2) and their real roots.
    let blocks: [([i64; 3], Option<f64>); 5] = [
        ([1, 0, 1], None),
        ([1, 1, 1], None),
        ([3, 0, 2], None),
        ([-2, 0, 1], Some(std::f64::consts::SQRT_2)),
        ([-3, 0, 1], Some(1.732_050_807_568_877_2)),
    ];
    let scales: [(i64, i64); 4] = [(1, 1), (-1, 1), (3, 1), (-1, 2)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        let (sn, sd) = scales[rng.gen_range(0..scales.len())];
        let mut poly = UniPoly::constant(rat(sn, sd));
        let mut budget = 8u32;
        // key -> (approximate position, exact value if rational, multiplicity)
        let mut expected: BTreeMap<String, (f64, Option<Rational>, u32)> = BTreeMap::new();
        let mut pool = rationals.to_vec();
        pool.shuffle(&mut rng);
        let mut pool = pool.into_iter();

        while budget > 0 {
            if rng.gen_bool(0.55) {
                let Some((rn, rd)) = pool.next() else { break };
                let m = rng.gen_range(1..=budget.min(3));
                budget -= m;
                let r = rat(rn, rd);
                let factor = UniPoly::new(vec![-r.clone(), rint(1)]);
                for _ in 0..m {
                    poly = poly.mul(&factor);
                }
                let e = expected
                    .entry(format!("q {rn}/{rd}"))
                    .or_insert((rational_to_f64(&r), Some(r), 0));
                e.2 += m;
            } else if budget >= 2 {
                let (coeffs, root) = blocks[rng.gen_range(0..blocks.len())];
                let m = rng.gen_range(1..=(budget / 2).min(2));
                budget -= 2 * m;
                let factor = UniPoly::from_i64(&coeffs);
                for _ in 0..m {
                    poly = poly.mul(&factor);
                }
                if let Some(s) = root {
                    for signed in [-s, s] {
                        let e = expected
                            .entry(format!("i {signed}"))
                            .or_insert((signed, None, 0));
                        e.2 += m;
                    }
                }
            } else {
                break;
            }
            if rng.gen_bool(0.3) {
                break;
            }
        }

        let got = real_root_multiplicities(&poly)
            .unwrap_or_else(|e| panic!("case {case}: {e} for {poly:?}"));
        let mut exp: Vec<(f64, Option<Rational>, u32)> = expected.into_values().collect();
        exp.sort_by(|a, b| a.0.total_cmp(&b.0));
        assert_eq!(got.len(), exp.len(), "case {case}: root count for {poly:?}");
        let mut last = f64::NEG_INFINITY;
        for (rec, (approx, exact, m)) in got.iter().zip(&exp) {
            assert_eq!(rec.multiplicity, *m, "case {case}: multiplicity near {approx}");
            let here = rec.location.approx();
            assert!(here > last, "case {case}: roots out of order");
            last = here;
            match (&rec.location, exact) {
                (RootLocation::Exact(r), Some(er)) => {
                    assert_eq!(r, er, "case {case}");
                }
                (RootLocation::Isolated { lo, hi }, None) => {
                    let (lo, hi) = (rational_to_f64(lo), rational_to_f64(hi));
                    assert!(
                        lo < *approx && *approx < hi,
                        "case {case}: {approx} outside ({lo}, {hi})"
                    );
                }
                (loc, exact) => {
                    panic!("case {case}: location {loc:?} against expected {exact:?}")
                }
            }
        }
    }
}

/// Applies `x2 -> x2 + c x1^k`.
pub fn shear_x2(p: &Polynomial, c: &Rational, k: u32) -> Polynomial {
    let sub = Polynomial::from_terms([((0, 1), rint(1)), ((k, 0), c.clone())]);
    let d2 = p.degree_x2().unwrap_or(0) as usize;
    let mut pows = Vec::with_capacity(d2 + 1);
    pows.push(Polynomial::constant(rint(1)));
    for i in 1..=d2 {
        let next = pows[i - 1].mul(&sub);
        pows.push(next);
    }
    let mut out = Polynomial::zero();
    for (&(a1, a2), coef) in p.terms() {
        out = out.add(&pows[a2 as usize].mul_monomial(a1, 0).scale(coef));
    }
    out
}

/// Applies `x1 -> x1 + c x2`.
pub fn shear_x1(p: &Polynomial, c: &Rational) -> Polynomial {
    p.substitute_linear(
        &[
            [rint(1), c.clone()],
            [rint(0), rint(1)],
        ],
        &[rint(0), rint(0)],
    )
    .expect("shear matrices are invertible")
}

/// The classifier's adaptedness verdict agrees with the direct principal-part
/// criterion on every corpus phase and `variants` random shears of them; the
/// class, height, and series index are shear invariants.  Returns the number
/// of phases checked.
pub fn check_adaptedness_equivalence(variants: usize, seed: u64) -> usize {
    let entries = parse_corpus(BUNDLED).expect("bundled corpus parses");
    let mut base: Vec<(String, Polynomial, SingularityReport)> = Vec::new();
    let mut checked = 0;
    for e in &entries {
        let rep = classify(&e.phase).unwrap_or_else(|err| panic!("{}: {err}", e.name));
        let nd = newton_polyhedron(&e.phase).unwrap();
        let hom = adaptedness(&nd).unwrap();
        assert_eq!(rep.adapted, hom.adapted, "corpus {}", e.name);
        assert_eq!(rep.distance, *nd.distance(), "corpus {}", e.name);
        checked += 1;
        base.push((e.name.clone(), e.phase.clone(), rep));
    }

    let shear_pool: [(i64, i64); 8] = [
        (1, 1),
        (-1, 1),
        (2, 1),
        (-2, 1),
        (1, 2),
        (-1, 2),
        (3, 2),
        (1, 3),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..variants {
        let (name, phi0, rep0) = &base[i % base.len()];
        let (cn, cd) = shear_pool[rng.gen_range(0..shear_pool.len())];
        let c = rat(cn, cd);
        let variant = match i % 3 {
            0 => shear_x2(phi0, &c, rng.gen_range(1..=3)),
            1 => shear_x1(phi0, &c),
            _ => shear_x1(&shear_x2(phi0, &c, rng.gen_range(1..=2)), &c),
        };
        let rep = classify(&variant)
            .unwrap_or_else(|err| panic!("variant {i} of {name}: {err}"));
        let nd = newton_polyhedron(&variant).unwrap();
        let hom = adaptedness(&nd).unwrap();
        assert_eq!(rep.adapted, hom.adapted, "variant {i} of {name}");
        assert_eq!(rep.distance, *nd.distance(), "variant {i} of {name}");
        assert_eq!(rep.class, rep0.class, "variant {i} of {name}");
        assert_eq!(rep.height, rep0.height, "variant {i} of {name}");
        assert_eq!(rep.series_index, rep0.series_index, "variant {i} of {name}");
        checked += 1;
    }
    checked
}
