//! Newton polyhedron of a bivariate polynomial.
//!
//! The polyhedron of `sum c_a x^a` is the convex hull of the union of the
//! quadrants `a + R^2_+` over the support.  The module computes its vertex
//! chain, the Newton distance (where the bisectrix `t1 = t2` meets the
//! boundary), the principal face containing that point, and the associated
//! weight `k = (k1, k2)` with `k . a = 1` on the face.  All of it in exact
//! rational arithmetic.

use crate::poly::{rint, Polynomial, Rational};
use num::{One, Zero};

/// Errors from Newton-polyhedron queries.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NewtonError {
    #[error("the zero polynomial has no Newton polyhedron")]
    ZeroPolynomial,
    #[error("the principal face touches a coordinate axis; no finite weight exists")]
    DegenerateWeight,
    #[error("the weighted line is not supporting: term x1^{0}*x2^{1} lies below it")]
    NotSupportingLine(u32, u32),
}

/// A weight vector `k = (k1, k2)` defining the line `k1 t1 + k2 t2 = 1`.
///
/// Components are stored in the orientation of the input variables; use
/// [`Weight::normalized`] for the convention `k1 <= k2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight {
    pub k1: Rational,
    pub k2: Rational,
}

impl Weight {
    pub fn new(k1: Rational, k2: Rational) -> Self {
        Weight { k1, k2 }
    }

    /// `|k| = k1 + k2`.
    pub fn sum(&self) -> Rational {
        &self.k1 + &self.k2
    }

    /// The distance `1 / (k1 + k2)` at which the line meets the bisectrix.
    pub fn distance(&self) -> Rational {
        Rational::one() / self.sum()
    }

    /// `k . a` for a lattice point.
    pub fn dot(&self, a: (u32, u32)) -> Rational {
        &self.k1 * rint(a.0 as i64) + &self.k2 * rint(a.1 as i64)
    }

    /// The same weight with `k1 <= k2`, plus whether a swap was needed.
    pub fn normalized(&self) -> (Weight, bool) {
        if self.k1 <= self.k2 {
            (self.clone(), false)
        } else {
            (Weight { k1: self.k2.clone(), k2: self.k1.clone() }, true)
        }
    }
}

/// The face of the Newton polyhedron met by the bisectrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrincipalFace {
    /// The vertex with the given index in the vertex chain.
    Vertex(usize),
    /// The compact edge joining vertices `i` and `i + 1`.
    Edge(usize),
    /// The unbounded edge going up from the first vertex.
    VerticalRay,
    /// The unbounded edge going right from the last vertex.
    HorizontalRay,
}

impl PrincipalFace {
    /// Compact faces are vertices and bounded edges.
    pub fn is_compact(&self) -> bool {
        matches!(self, PrincipalFace::Vertex(_) | PrincipalFace::Edge(_))
    }
}

/// Newton polyhedron data of a nonzero polynomial.
#[derive(Debug, Clone)]
pub struct NewtonData {
    support: Vec<(u32, u32)>,
    vertices: Vec<(u32, u32)>,
    distance: Rational,
    face: PrincipalFace,
    principal_part: Polynomial,
}

impl NewtonData {
    /// The support of the polynomial, sorted lexicographically.
    pub fn support(&self) -> &[(u32, u32)] {
        &self.support
    }

    /// Hull vertices in order of increasing first coordinate.
    pub fn vertices(&self) -> &[(u32, u32)] {
        &self.vertices
    }

    /// Endpoint pairs of the compact edges, in boundary order.
    pub fn edges(&self) -> impl Iterator<Item = ((u32, u32), (u32, u32))> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    /// The Newton distance `d`.
    pub fn distance(&self) -> &Rational {
        &self.distance
    }

    pub fn principal_face(&self) -> PrincipalFace {
        self.face
    }

    /// The principal part: the sum of the terms lying on the principal face.
    pub fn principal_part(&self) -> &Polynomial {
        &self.principal_part
    }

    /// The weight supporting the principal face.  For a vertex `(d, d)` the
    /// symmetric choice `(1/(2d), 1/(2d))` is made; unbounded faces along a
    /// coordinate direction have no finite weight and yield an error.
    pub fn principal_weight(&self) -> Result<Weight, NewtonError> {
        match self.face {
            PrincipalFace::Vertex(_) => {
                if self.distance.is_zero() {
                    return Err(NewtonError::DegenerateWeight);
                }
                let k = Rational::one() / (rint(2) * &self.distance);
                Ok(Weight::new(k.clone(), k))
            }
            PrincipalFace::Edge(i) => {
                let (a1, b1) = self.vertices[i];
                let (a2, b2) = self.vertices[i + 1];
                let det = rint(a1 as i64 * b2 as i64 - b1 as i64 * a2 as i64);
                let k1 = rint(b2 as i64 - b1 as i64) / &det;
                let k2 = rint(a1 as i64 - a2 as i64) / &det;
                Ok(Weight::new(k1, k2))
            }
            PrincipalFace::VerticalRay | PrincipalFace::HorizontalRay => {
                Err(NewtonError::DegenerateWeight)
            }
        }
    }
}

/// Computes the Newton polyhedron of `p`, its distance and principal face.
pub fn newton_polyhedron(p: &Polynomial) -> Result<NewtonData, NewtonError> {
    if p.is_zero() {
        return Err(NewtonError::ZeroPolynomial);
    }
    let mut support: Vec<(u32, u32)> = p.support();
    support.sort_unstable();

    // Pareto-minimal points: nothing else dominates them from below-left.
    let minimal: Vec<(u32, u32)> = support
        .iter()
        .copied()
        .filter(|&(a, b)| {
            !support
                .iter()
                .any(|&(c, d)| (c, d) != (a, b) && c <= a && d <= b)
        })
        .collect();

    // Lower-left hull by a monotone chain.  After the Pareto filter the
    // first coordinates are strictly increasing and the second strictly
    // decreasing, which is exactly the precondition for the walk.
    let mut chain: Vec<(u32, u32)> = Vec::with_capacity(minimal.len());
    for &pt in &minimal {
        while chain.len() >= 2 {
            let a = chain[chain.len() - 2];
            let b = chain[chain.len() - 1];
            if cross(a, b, pt) <= 0 {
                chain.pop();
            } else {
                break;
            }
        }
        chain.push(pt);
    }

    let (distance, face) = locate_bisectrix(&chain);
    let mut principal_part = Polynomial::zero();
    match face {
        // A vertex face is the lattice point itself, nothing else.
        PrincipalFace::Vertex(i) => {
            let v = chain[i];
            for ((a, b), c) in p.terms() {
                if (*a, *b) == v {
                    principal_part.add_term(*a, *b, c.clone());
                }
            }
        }
        PrincipalFace::Edge(i) => {
            let (a1, b1) = chain[i];
            let (a2, b2) = chain[i + 1];
            let det = rint(a1 as i64 * b2 as i64 - b1 as i64 * a2 as i64);
            let k1 = rint(b2 as i64 - b1 as i64) / &det;
            let k2 = rint(a1 as i64 - a2 as i64) / &det;
            let w = Weight::new(k1, k2);
            for ((a, b), c) in p.terms() {
                if w.dot((*a, *b)) == Rational::one() {
                    principal_part.add_term(*a, *b, c.clone());
                }
            }
        }
        PrincipalFace::VerticalRay => {
            let a0 = chain[0].0;
            for ((a, b), c) in p.terms() {
                if *a == a0 {
                    principal_part.add_term(*a, *b, c.clone());
                }
            }
        }
        PrincipalFace::HorizontalRay => {
            let b0 = chain[chain.len() - 1].1;
            for ((a, b), c) in p.terms() {
                if *b == b0 {
                    principal_part.add_term(*a, *b, c.clone());
                }
            }
        }
    }

    Ok(NewtonData { support, vertices: chain, distance, face, principal_part })
}

/// Where the bisectrix `t1 = t2` meets the boundary chain.
fn locate_bisectrix(chain: &[(u32, u32)]) -> (Rational, PrincipalFace) {
    let (a0, b0) = chain[0];
    if a0 >= b0 {
        // The bisectrix meets the vertical ray above the first vertex
        // (or the vertex itself when it sits on the bisectrix).
        return if a0 == b0 {
            (rint(a0 as i64), PrincipalFace::Vertex(0))
        } else {
            (rint(a0 as i64), PrincipalFace::VerticalRay)
        };
    }
    for i in 0..chain.len() {
        let (a, b) = chain[i];
        if a == b {
            return (rint(a as i64), PrincipalFace::Vertex(i));
        }
        if i + 1 < chain.len() {
            let (a2, b2) = chain[i + 1];
            // Crossing happens strictly inside the edge when the endpoints
            // sit on opposite sides of the bisectrix.
            if b > a && a2 > b2 {
                let num = rint(a as i64 * (b2 as i64 - b as i64)
                    - b as i64 * (a2 as i64 - a as i64));
                let den = rint((b2 as i64 - b as i64) - (a2 as i64 - a as i64));
                return (num / den, PrincipalFace::Edge(i));
            }
        }
    }
    // Every vertex lies above the bisectrix: it exits through the
    // horizontal ray at the last vertex.
    let (_, bl) = chain[chain.len() - 1];
    (rint(bl as i64), PrincipalFace::HorizontalRay)
}

fn cross(a: (u32, u32), b: (u32, u32), c: (u32, u32)) -> i64 {
    let (ux, uy) = (b.0 as i64 - a.0 as i64, b.1 as i64 - a.1 as i64);
    let (vx, vy) = (c.0 as i64 - b.0 as i64, c.1 as i64 - b.1 as i64);
    ux * vy - uy * vx
}

/// The part of `p` of weighted degree one: all terms with `k . a = 1`.
/// Fails with [`NewtonError::NotSupportingLine`] if some term lies strictly
/// below the line, i.e. the line does not support the Newton polyhedron.
pub fn kappa_principal_part(p: &Polynomial, k: &Weight) -> Result<Polynomial, NewtonError> {
    let mut out = Polynomial::zero();
    for ((a, b), c) in p.terms() {
        let deg = k.dot((*a, *b));
        match deg.cmp(&Rational::one()) {
            std::cmp::Ordering::Less => return Err(NewtonError::NotSupportingLine(*a, *b)),
            std::cmp::Ordering::Equal => out.add_term(*a, *b, c.clone()),
            std::cmp::Ordering::Greater => {}
        }
    }
    Ok(out)
}

/// Splits `p` by weighted degree: returns `(k . a, part)` pairs with the
/// parts summing back to `p`, sorted by increasing weighted degree.
pub fn kappa_degree_split(p: &Polynomial, k: &Weight) -> Vec<(Rational, Polynomial)> {
    let mut groups: std::collections::BTreeMap<Rational, Polynomial> =
        std::collections::BTreeMap::new();
    for ((a, b), c) in p.terms() {
        let deg = k.dot((*a, *b));
        groups
            .entry(deg)
            .or_insert_with(Polynomial::zero)
            .add_term(*a, *b, c.clone());
    }
    groups.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn poly(terms: &[(i64, u32, u32)]) -> Polynomial {
        Polynomial::from_terms(terms.iter().map(|&(c, a, b)| ((a, b), rint(c))))
    }

    #[test]
    fn cusp_has_single_edge() {
        // x2^2 + x1^3
        let p = poly(&[(1, 0, 2), (1, 3, 0)]);
        let n = newton_polyhedron(&p).unwrap();
        assert_eq!(n.vertices(), &[(0, 2), (3, 0)]);
        assert_eq!(n.distance(), &rat(6, 5));
        assert_eq!(n.principal_face(), PrincipalFace::Edge(0));
        let w = n.principal_weight().unwrap();
        assert_eq!((w.k1, w.k2), (rat(1, 3), rat(1, 2)));
        assert_eq!(n.principal_part(), &p);
    }

    #[test]
    fn weight_orientation_follows_input() {
        // x1^2 + x2^3: steeper in x2
        let p = poly(&[(1, 2, 0), (1, 0, 3)]);
        let n = newton_polyhedron(&p).unwrap();
        let w = n.principal_weight().unwrap();
        assert_eq!((w.k1.clone(), w.k2.clone()), (rat(1, 2), rat(1, 3)));
        let (nw, swapped) = w.normalized();
        assert!(swapped);
        assert_eq!((nw.k1, nw.k2), (rat(1, 3), rat(1, 2)));
    }

    #[test]
    fn pareto_and_collinear_points_are_pruned() {
        // x2^4 + x1^2 x2^2 + x1^4 + x1^5: (2,2) is collinear, (5,0) dominated
        let p = poly(&[(1, 0, 4), (1, 2, 2), (1, 4, 0), (1, 5, 0)]);
        let n = newton_polyhedron(&p).unwrap();
        assert_eq!(n.vertices(), &[(0, 4), (4, 0)]);
        assert_eq!(n.distance(), &rint(2));
        assert_eq!(n.principal_face(), PrincipalFace::Edge(0));
        let w = n.principal_weight().unwrap();
        assert_eq!((w.k1, w.k2), (rat(1, 4), rat(1, 4)));
        // the collinear interior point still belongs to the principal part
        assert_eq!(n.principal_part().num_terms(), 3);
    }

    #[test]
    fn vertex_on_bisectrix() {
        // x1^2 x2^2 (+ higher terms off the face)
        let p = poly(&[(1, 2, 2), (1, 5, 1), (1, 1, 6)]);
        let n = newton_polyhedron(&p).unwrap();
        let idx = match n.principal_face() {
            PrincipalFace::Vertex(i) => i,
            f => panic!("expected vertex, got {f:?}"),
        };
        assert_eq!(n.vertices()[idx], (2, 2));
        assert_eq!(n.distance(), &rint(2));
        let w = n.principal_weight().unwrap();
        assert_eq!((w.k1, w.k2), (rat(1, 4), rat(1, 4)));
        assert_eq!(n.principal_part(), &poly(&[(1, 2, 2)]));
    }

    #[test]
    fn edge_crossing_strictly_inside() {
        // x1 x2^3 + x1^3 x2: crossing at (2,2) inside the edge
        let p = poly(&[(1, 1, 3), (1, 3, 1)]);
        let n = newton_polyhedron(&p).unwrap();
        assert_eq!(n.distance(), &rint(2));
        assert_eq!(n.principal_face(), PrincipalFace::Edge(0));
        let w = n.principal_weight().unwrap();
        assert_eq!((w.k1, w.k2), (rat(1, 4), rat(1, 4)));
    }

    #[test]
    fn unbounded_vertical_face() {
        // x1^2 + x1^5: polyhedron is the quadrant right of t1 = 2
        let p = poly(&[(1, 2, 0), (1, 5, 0)]);
        let n = newton_polyhedron(&p).unwrap();
        assert_eq!(n.vertices(), &[(2, 0)]);
        assert_eq!(n.distance(), &rint(2));
        assert_eq!(n.principal_face(), PrincipalFace::VerticalRay);
        assert!(n.principal_weight().is_err());
        // x1^5 sits on the boundary ray's supporting line's far side, not on the face
        assert_eq!(n.principal_part(), &poly(&[(1, 2, 0)]));
    }

    #[test]
    fn unbounded_horizontal_face() {
        // x2^3 + x1 x2^3: everything above t2 = 3
        let p = poly(&[(1, 0, 3), (1, 1, 3)]);
        let n = newton_polyhedron(&p).unwrap();
        assert_eq!(n.vertices(), &[(0, 3)]);
        assert_eq!(n.distance(), &rint(3));
        assert_eq!(n.principal_face(), PrincipalFace::HorizontalRay);
        assert!(n.principal_weight().is_err());
        assert_eq!(n.principal_part(), &p);
    }

    #[test]
    fn sheared_cusp_keeps_principal_square() {
        // (x2 - x1^2)^2 + x1^5 expanded
        let shear = poly(&[(1, 0, 1), (-1, 2, 0)]);
        let p = shear.mul(&shear).add(&poly(&[(1, 5, 0)]));
        let n = newton_polyhedron(&p).unwrap();
        assert_eq!(n.vertices(), &[(0, 2), (4, 0)]);
        assert_eq!(n.distance(), &rat(4, 3));
        let w = n.principal_weight().unwrap();
        assert_eq!((w.k1.clone(), w.k2.clone()), (rat(1, 4), rat(1, 2)));
        // principal part is exactly the square, x1^5 lies above the line
        assert_eq!(n.principal_part(), &shear.mul(&shear));
        assert_eq!(kappa_principal_part(&p, &w).unwrap(), shear.mul(&shear));
    }

    #[test]
    fn supporting_line_check_rejects_low_terms() {
        let p = poly(&[(1, 0, 2), (1, 3, 0), (1, 1, 0)]);
        let w = Weight::new(rat(1, 3), rat(1, 2));
        assert_eq!(
            kappa_principal_part(&p, &w),
            Err(NewtonError::NotSupportingLine(1, 0))
        );
    }

    #[test]
    fn degree_split_orders_by_weighted_degree() {
        // x1 x2^2 + x1^3 + x1^7 with k = (1/3, 1/3)
        let p = poly(&[(1, 1, 2), (1, 3, 0), (1, 7, 0)]);
        let w = Weight::new(rat(1, 3), rat(1, 3));
        let split = kappa_degree_split(&p, &w);
        assert_eq!(split.len(), 2);
        assert_eq!(split[0].0, rint(1));
        assert_eq!(split[0].1.num_terms(), 2);
        assert_eq!(split[1].0, rat(7, 3));
        assert_eq!(split[1].1, poly(&[(1, 7, 0)]));
        let total = split.iter().fold(Polynomial::zero(), |acc, (_, q)| acc.add(q));
        assert_eq!(total, p);
    }

    #[test]
    fn distance_never_below_one_for_second_order_jets() {
        // full quadratic: (1,1) is collinear with (0,2)-(2,0), so the
        // bisectrix meets the interior of a single edge at distance 1
        let p = poly(&[(1, 1, 1), (1, 0, 2), (1, 2, 0)]);
        let n = newton_polyhedron(&p).unwrap();
        assert_eq!(n.distance(), &rint(1));
        assert_eq!(n.vertices(), &[(0, 2), (2, 0)]);
        assert_eq!(n.principal_face(), PrincipalFace::Edge(0));
        assert_eq!(n.principal_part().num_terms(), 3);
    }
}
