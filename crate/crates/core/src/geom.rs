//! Planar kernel: vectors, oriented directions, positive-dilation affine maps,
//! 2x2 matrices and exact ray/convex-polygon predicates.

use crate::real::{Real, EPS};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaneVec {
    pub x: Real,
    pub y: Real,
}

impl PlaneVec {
    pub fn new(x: Real, y: Real) -> Self {
        PlaneVec { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        PlaneVec::new(Real::from_int(x), Real::from_int(y))
    }

    pub fn from_ratios(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        PlaneVec::new(Real::ratio(xn, xd), Real::ratio(yn, yd))
    }

    pub fn zero() -> Self {
        PlaneVec::new(Real::zero(), Real::zero())
    }

    pub fn dot(&self, other: &PlaneVec) -> Real {
        &(&self.x * &other.x) + &(&self.y * &other.y)
    }

    pub fn cross(&self, other: &PlaneVec) -> Real {
        &(&self.x * &other.y) - &(&self.y * &other.x)
    }

    pub fn norm2(&self) -> Real {
        self.dot(self)
    }

    pub fn norm_f64(&self) -> f64 {
        self.norm2().to_f64().sqrt()
    }

    pub fn scale(&self, s: &Real) -> PlaneVec {
        PlaneVec::new(&self.x * s, &self.y * s)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_exact(&self) -> bool {
        self.x.is_exact() && self.y.is_exact()
    }

    pub fn close_to(&self, other: &PlaneVec, eps: f64) -> bool {
        self.x.close_to(&other.x, eps) && self.y.close_to(&other.y, eps)
    }

    pub fn angle_f64(&self) -> f64 {
        self.y.to_f64().atan2(self.x.to_f64())
    }
}

impl Add for &PlaneVec {
    type Output = PlaneVec;
    fn add(self, rhs: &PlaneVec) -> PlaneVec {
        PlaneVec::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub for &PlaneVec {
    type Output = PlaneVec;
    fn sub(self, rhs: &PlaneVec) -> PlaneVec {
        PlaneVec::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Neg for &PlaneVec {
    type Output = PlaneVec;
    fn neg(self) -> PlaneVec {
        PlaneVec::new(-&self.x, -&self.y)
    }
}

impl fmt::Display for PlaneVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// An oriented direction. Two directions are equal iff one is a strictly
/// positive multiple of the other; the foliations are oriented, so (1,0)
/// and (-1,0) are different directions.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DirectionVec(PlaneVec);

impl DirectionVec {
    pub fn new(v: PlaneVec) -> Option<Self> {
        if v.is_zero() {
            None
        } else {
            Some(DirectionVec(v))
        }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        DirectionVec::new(PlaneVec::from_ints(x, y)).expect("nonzero direction")
    }

    pub fn vec(&self) -> &PlaneVec {
        &self.0
    }

    pub fn reversed(&self) -> DirectionVec {
        DirectionVec(-&self.0)
    }

    pub fn same_direction(&self, other: &DirectionVec) -> bool {
        self.0.cross(&other.0).is_zero() && self.0.dot(&other.0).is_positive()
    }

    pub fn angle_f64(&self) -> f64 {
        self.0.angle_f64()
    }
}

impl PartialEq for DirectionVec {
    fn eq(&self, other: &Self) -> bool {
        self.same_direction(other)
    }
}

impl fmt::Display for DirectionVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dir{}", self.0)
    }
}

/// z ↦ a·z + b with a a positive real: the structure group of a dilation
/// surface acting on a chart.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PosAffineMap {
    pub a: Real,
    pub b: PlaneVec,
}

impl PosAffineMap {
    pub fn new(a: Real, b: PlaneVec) -> Option<Self> {
        if a.is_positive() {
            Some(PosAffineMap { a, b })
        } else {
            None
        }
    }

    pub fn identity() -> Self {
        PosAffineMap {
            a: Real::one(),
            b: PlaneVec::zero(),
        }
    }

    pub fn apply(&self, v: &PlaneVec) -> PlaneVec {
        &v.scale(&self.a) + &self.b
    }

    /// self ∘ g: applies g first, then self. Linear part multiplies.
    pub fn compose(&self, g: &PosAffineMap) -> PosAffineMap {
        PosAffineMap {
            a: &self.a * &g.a,
            b: &g.b.scale(&self.a) + &self.b,
        }
    }

    pub fn invert(&self) -> PosAffineMap {
        let inv = self.a.recip();
        PosAffineMap {
            b: (-&self.b).scale(&inv),
            a: inv,
        }
    }

    /// The unique fixed point, defined iff the dilation part is not 1.
    pub fn fixed_point(&self) -> Option<PlaneVec> {
        let one_minus = &Real::one() - &self.a;
        if one_minus.is_zero() {
            None
        } else {
            Some(self.b.scale(&one_minus.recip()))
        }
    }

    /// Affine map with a > 0 sending segment (p0,p1) onto (q0,q1).
    /// Requires p1 - p0 and q1 - q0 to be positively parallel.
    pub fn mapping_segment(p0: &PlaneVec, p1: &PlaneVec, q0: &PlaneVec, q1: &PlaneVec) -> Option<PosAffineMap> {
        let u = p1 - p0;
        let v = q1 - q0;
        if !u.cross(&v).is_zero() {
            return None;
        }
        let (num, den) = if !u.x.is_zero() { (&v.x, &u.x) } else { (&v.y, &u.y) };
        if den.is_zero() {
            return None;
        }
        let a = num / den;
        if !a.is_positive() {
            return None;
        }
        let b = q0 - &p0.scale(&a);
        Some(PosAffineMap { a, b })
    }
}

impl fmt::Display for PosAffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z ↦ {}·z + {}", self.a, self.b)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mat2 {
    pub m11: Real,
    pub m12: Real,
    pub m21: Real,
    pub m22: Real,
}

impl Mat2 {
    pub fn new(m11: Real, m12: Real, m21: Real, m22: Real) -> Self {
        Mat2 { m11, m12, m21, m22 }
    }

    pub fn from_ints(m11: i64, m12: i64, m21: i64, m22: i64) -> Self {
        Mat2::new(
            Real::from_int(m11),
            Real::from_int(m12),
            Real::from_int(m21),
            Real::from_int(m22),
        )
    }

    pub fn identity() -> Self {
        Mat2::from_ints(1, 0, 0, 1)
    }

    pub fn det(&self) -> Real {
        &(&self.m11 * &self.m22) - &(&self.m12 * &self.m21)
    }

    pub fn apply(&self, v: &PlaneVec) -> PlaneVec {
        PlaneVec::new(
            &(&self.m11 * &v.x) + &(&self.m12 * &v.y),
            &(&self.m21 * &v.x) + &(&self.m22 * &v.y),
        )
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        Mat2 {
            m11: &(&self.m11 * &other.m11) + &(&self.m12 * &other.m21),
            m12: &(&self.m11 * &other.m12) + &(&self.m12 * &other.m22),
            m21: &(&self.m21 * &other.m11) + &(&self.m22 * &other.m21),
            m22: &(&self.m21 * &other.m12) + &(&self.m22 * &other.m22),
        }
    }

    pub fn scale(&self, s: &Real) -> Mat2 {
        Mat2 {
            m11: &self.m11 * s,
            m12: &self.m12 * s,
            m21: &self.m21 * s,
            m22: &self.m22 * s,
        }
    }

    /// Rescales to determinant 1. Exact when det is the square of a rational;
    /// falls back to floats otherwise. The surface action factors through
    /// SL2, so this never changes the surface up to isomorphism.
    pub fn normalize_det1(&self) -> Option<Mat2> {
        let d = self.det();
        if !d.is_positive() {
            return None;
        }
        let s = match &d {
            Real::Rat(r) => match sqrt_exact(r) {
                Some(root) => Real::Rat(root).recip(),
                None => Real::from_f64(1.0 / d.to_f64().sqrt()),
            },
            Real::F64(x) => Real::from_f64(1.0 / x.sqrt()),
        };
        Some(self.scale(&s))
    }

    /// Parses "a,b;c,d" (row-major) with rational entries.
    pub fn parse(s: &str) -> Option<Mat2> {
        let (row1, row2) = s.split_once(';')?;
        let mut entries = Vec::new();
        for part in row1.split(',').chain(row2.split(',')) {
            entries.push(Real::parse(part)?);
        }
        if entries.len() != 4 {
            return None;
        }
        let m22 = entries.pop()?;
        let m21 = entries.pop()?;
        let m12 = entries.pop()?;
        let m11 = entries.pop()?;
        Some(Mat2 { m11, m12, m21, m22 })
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: &Mat2) -> Mat2 {
        Mat2::mul(self, rhs)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{};{},{}]", self.m11, self.m12, self.m21, self.m22)
    }
}

/// Exact square root of a non-negative rational, when it exists.
pub fn sqrt_exact(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer().sqrt();
    let den = r.denom().sqrt();
    if &(&num * &num) == r.numer() && &(&den * &den) == r.denom() {
        Some(BigRational::new(num, den))
    } else {
        None
    }
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

#[derive(Debug, Error, PartialEq)]
pub enum GeomError {
    #[error("degenerate polygon")]
    DegeneratePolygon,
    #[error("polygon is not convex and counterclockwise")]
    NotConvexCcw,
    #[error("ray does not exit the polygon")]
    NoExit,
}

/// Where a ray leaves a convex polygon.
#[derive(Clone, Debug)]
pub enum RayHit {
    /// Exit through the interior of edge `edge` at edge parameter `t ∈ (0,1)`.
    Edge {
        edge: usize,
        t: Real,
        point: PlaneVec,
        ray_t: Real,
    },
    /// Exit through (or within tolerance of) vertex `vertex`.
    Vertex {
        vertex: usize,
        point: PlaneVec,
        ray_t: Real,
    },
}

impl RayHit {
    pub fn ray_t(&self) -> &Real {
        match self {
            RayHit::Edge { ray_t, .. } | RayHit::Vertex { ray_t, .. } => ray_t,
        }
    }

    pub fn point(&self) -> &PlaneVec {
        match self {
            RayHit::Edge { point, .. } | RayHit::Vertex { point, .. } => point,
        }
    }
}

/// Classification of a point against a convex polygon.
#[derive(Clone, Debug, PartialEq)]
pub enum Location {
    Interior,
    OnEdge { edge: usize, t: Real },
    OnVertex(usize),
    Outside,
}

/// Checks the vertex list is a counterclockwise weakly-convex polygon
/// (collinear boundary vertices are allowed, reflex ones are not).
pub fn check_convex_ccw(verts: &[PlaneVec]) -> Result<(), GeomError> {
    if verts.len() < 3 {
        return Err(GeomError::DegeneratePolygon);
    }
    let n = verts.len();
    let mut area2 = Real::zero();
    for i in 0..n {
        let a = &verts[i];
        let b = &verts[(i + 1) % n];
        let e = b - a;
        if e.is_zero() {
            return Err(GeomError::DegeneratePolygon);
        }
        area2 = &area2 + &a.cross(b);
        let c = &verts[(i + 2) % n];
        let e2 = c - b;
        if e.cross(&e2).is_negative() {
            return Err(GeomError::NotConvexCcw);
        }
        // A straight vertex is fine; a 180° reversal is not.
        if e.cross(&e2).is_zero() && e.dot(&e2).is_negative() {
            return Err(GeomError::NotConvexCcw);
        }
    }
    if !area2.is_positive() {
        return Err(GeomError::NotConvexCcw);
    }
    Ok(())
}

/// Twice the signed area.
pub fn area2(verts: &[PlaneVec]) -> Real {
    let n = verts.len();
    let mut s = Real::zero();
    for i in 0..n {
        s = &s + &verts[i].cross(&verts[(i + 1) % n]);
    }
    s
}

pub fn locate_point(verts: &[PlaneVec], p: &PlaneVec) -> Location {
    let n = verts.len();
    let mut on_edge: Option<(usize, Real)> = None;
    for i in 0..n {
        let a = &verts[i];
        let b = &verts[(i + 1) % n];
        let e = b - a;
        let rel = p - a;
        let cr = e.cross(&rel);
        match cr.sign() {
            Ordering::Less => return Location::Outside,
            Ordering::Equal => {
                let len2 = e.norm2();
                let t = &rel.dot(&e) / &len2;
                if t.is_zero() {
                    return Location::OnVertex(i);
                }
                if t == Real::one() {
                    return Location::OnVertex((i + 1) % n);
                }
                if t.is_positive() && t < Real::one() {
                    on_edge = Some((i, t));
                }
                // Collinear but off the segment: keep scanning; another edge
                // will classify the point as outside.
            }
            Ordering::Greater => {}
        }
    }
    match on_edge {
        Some((edge, t)) => Location::OnEdge { edge, t },
        None => Location::Interior,
    }
}

/// Exit of the ray p + t·d (t > 0) from a convex ccw polygon.
///
/// `p` must be inside the polygon or on its boundary with `d` not pointing
/// outward. Exits within vertex tolerance are reported as `Vertex`: exactly
/// in rational mode, within [`EPS`] of the vertex in float mode.
pub fn ray_exit(verts: &[PlaneVec], p: &PlaneVec, d: &DirectionVec) -> Result<RayHit, GeomError> {
    check_convex_ccw(verts)?;
    let n = verts.len();
    let dv = d.vec();
    let mut best: Option<RayHit> = None;

    let mut consider = |cand: RayHit| {
        let better = match &best {
            None => true,
            Some(b) => cand.ray_t() < b.ray_t(),
        };
        if better {
            best = Some(cand);
        }
    };

    for i in 0..n {
        let a = &verts[i];
        let b = &verts[(i + 1) % n];
        let e = b - a;
        let denom = dv.cross(&e);
        let rel = a - p;
        if denom.is_zero() {
            // Ray parallel to this edge; if collinear, the far endpoints are
            // vertex candidates.
            if rel.cross(dv).is_zero() {
                let dd = dv.norm2();
                for (vi, v) in [(i, a), ((i + 1) % n, b)] {
                    let t = &(v - p).dot(dv) / &dd;
                    if t.is_positive() {
                        consider(RayHit::Vertex {
                            vertex: vi,
                            point: v.clone(),
                            ray_t: t,
                        });
                    }
                }
            }
            continue;
        }
        let t_ray = &rel.cross(&e) / &denom;
        let s = &rel.cross(dv) / &denom;
        if !t_ray.is_positive() {
            continue;
        }
        if s.is_negative() || s > Real::one() {
            continue;
        }
        let point = p + &dv.scale(&t_ray);
        // Vertex snapping: exact in rational mode, EPS in float mode.
        let hit_tail = if s.is_exact() && point.is_exact() {
            s.is_zero()
        } else {
            point.close_to(a, EPS)
        };
        let hit_head = if s.is_exact() && point.is_exact() {
            s == Real::one()
        } else {
            point.close_to(b, EPS)
        };
        if hit_tail {
            consider(RayHit::Vertex {
                vertex: i,
                point: a.clone(),
                ray_t: t_ray,
            });
        } else if hit_head {
            consider(RayHit::Vertex {
                vertex: (i + 1) % n,
                point: b.clone(),
                ray_t: t_ray,
            });
        } else {
            consider(RayHit::Edge {
                edge: i,
                t: s,
                point,
                ray_t: t_ray,
            });
        }
    }
    best.ok_or(GeomError::NoExit)
}

/// Complex number (dot, cross) whose argument is the interior angle at a
/// corner with outgoing edge direction `out` and reversed incoming direction
/// `rev_in`. For corners of a ccw weakly-convex polygon the argument lies in
/// (0, π].
pub fn corner_complex(out: &PlaneVec, rev_in: &PlaneVec) -> (Real, Real) {
    (out.dot(rev_in), out.cross(rev_in))
}

fn octant(re: &Real, im: &Real) -> Option<u8> {
    Some(match (re.sign(), im.sign()) {
        (Ordering::Greater, Ordering::Equal) => 0,
        (Ordering::Greater, Ordering::Greater) => 1,
        (Ordering::Equal, Ordering::Greater) => 2,
        (Ordering::Less, Ordering::Greater) => 3,
        (Ordering::Less, Ordering::Equal) => 4,
        (Ordering::Less, Ordering::Less) => 5,
        (Ordering::Equal, Ordering::Less) => 6,
        (Ordering::Greater, Ordering::Less) => 7,
        (Ordering::Equal, Ordering::Equal) => return None,
    })
}

/// Sums a sequence of corner angles, each in (0, π], given as (dot, cross)
/// pairs, and decides exactly whether the total is a multiple of 2π.
///
/// Returns `Some(k)` when the total equals 2πk. Exact for rational inputs:
/// the running product of the corner complexes is tracked together with a
/// winding count; the total is 2πk iff the final product lies on the
/// positive real axis.
pub fn turning_multiple_of_2pi(corners: &[(Real, Real)]) -> Option<i64> {
    let all_exact = corners.iter().all(|(r, i)| r.is_exact() && i.is_exact());
    if !all_exact {
        let mut total = 0.0;
        for (re, im) in corners {
            let a = im.to_f64().atan2(re.to_f64());
            let a = if a <= 0.0 { a + std::f64::consts::TAU } else { a };
            total += a;
        }
        let k = (total / std::f64::consts::TAU).round();
        if (total - k * std::f64::consts::TAU).abs() < 1e-7 {
            return Some(k as i64);
        }
        return None;
    }

    let mut re = Real::one();
    let mut im = Real::zero();
    let mut pos: u8 = 0;
    let mut winding: i64 = 0;
    for (zre, zim) in corners {
        // Corner must have angle in (0, π]: im ≥ 0 and not the positive axis.
        if zim.is_negative() || (zim.is_zero() && !zre.is_negative()) {
            return None;
        }
        let nre = &(&re * zre) - &(&im * zim);
        let nim = &(&re * zim) + &(&im * zre);
        re = nre;
        im = nim;
        let npos = octant(&re, &im)?;
        if npos < pos {
            winding += 1;
        }
        pos = npos;
        // Renormalize to keep coefficients small; positive scaling preserves
        // the argument.
        let m = re.abs().max(im.abs());
        if !m.is_zero() {
            re = &re / &m;
            im = &im / &m;
        }
    }
    if pos == 0 {
        Some(winding)
    } else {
        None
    }
}

/// Interior angle in radians (float), for reports.
pub fn corner_angle_f64(out: &PlaneVec, rev_in: &PlaneVec) -> f64 {
    let (re, im) = corner_complex(out, rev_in);
    let a = im.to_f64().atan2(re.to_f64());
    if a <= 0.0 {
        a + std::f64::consts::TAU
    } else {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> Vec<PlaneVec> {
        vec![
            PlaneVec::from_ints(0, 0),
            PlaneVec::from_ints(1, 0),
            PlaneVec::from_ints(1, 1),
            PlaneVec::from_ints(0, 1),
        ]
    }

    #[test]
    fn compose_identity_and_arithmetic() {
        let id = PosAffineMap::identity();
        let g = PosAffineMap::new(Real::from_int(3), PlaneVec::from_ints(1, 0)).unwrap();
        assert_eq!(id.compose(&g), g);
        let f = PosAffineMap::new(Real::from_int(2), PlaneVec::zero()).unwrap();
        let fg = f.compose(&g);
        assert_eq!(fg.a, Real::from_int(6));
        assert_eq!(fg.b, PlaneVec::from_ints(2, 0));
    }

    #[test]
    fn fixed_point_of_dilation_is_origin() {
        let f = PosAffineMap::new(Real::from_int(5), PlaneVec::zero()).unwrap();
        let p = f.fixed_point().unwrap();
        assert_eq!(p, PlaneVec::zero());
        assert_eq!(f.apply(&p), p);
        assert!(PosAffineMap::identity().fixed_point().is_none());
    }

    #[test]
    fn invert_compose_is_identity() {
        let f = PosAffineMap::new(Real::ratio(3, 7), PlaneVec::from_ratios(1, 2, -4, 3)).unwrap();
        let i = f.invert().compose(&f);
        assert_eq!(i, PosAffineMap::identity());
    }

    #[test]
    fn ray_exit_square_right_edge() {
        let sq = unit_square();
        let p = PlaneVec::from_ratios(1, 2, 1, 2);
        let hit = ray_exit(&sq, &p, &DirectionVec::from_ints(1, 0)).unwrap();
        match hit {
            RayHit::Edge { edge, t, point, .. } => {
                assert_eq!(edge, 1);
                assert_eq!(t, Real::ratio(1, 2));
                assert_eq!(point, PlaneVec::from_ratios(1, 1, 1, 2));
            }
            other => panic!("expected edge exit, got {other:?}"),
        }
    }

    #[test]
    fn ray_exit_square_corner() {
        let sq = unit_square();
        let p = PlaneVec::from_ratios(1, 2, 1, 2);
        let hit = ray_exit(&sq, &p, &DirectionVec::from_ints(1, 1)).unwrap();
        match hit {
            RayHit::Vertex { vertex, point, .. } => {
                assert_eq!(vertex, 2);
                assert_eq!(point, PlaneVec::from_ints(1, 1));
            }
            other => panic!("expected vertex exit, got {other:?}"),
        }
    }

    #[test]
    fn ray_exit_triangle_hypotenuse() {
        // Hand oracle: from (1,1) in direction (1,0) the line y=1 meets the
        // hypotenuse x+y=4 at (3,1).
        let tri = vec![
            PlaneVec::from_ints(0, 0),
            PlaneVec::from_ints(4, 0),
            PlaneVec::from_ints(0, 4),
        ];
        let p = PlaneVec::from_ints(1, 1);
        let hit = ray_exit(&tri, &p, &DirectionVec::from_ints(1, 0)).unwrap();
        match hit {
            RayHit::Edge { edge, point, .. } => {
                assert_eq!(edge, 1);
                assert_eq!(point, PlaneVec::from_ints(3, 1));
            }
            other => panic!("expected edge exit, got {other:?}"),
        }
    }

    #[test]
    fn ray_exit_reenter_returns_to_start() {
        let sq = unit_square();
        let p = PlaneVec::from_ratios(1, 3, 2, 7);
        let d = DirectionVec::from_ints(3, 1);
        let hit = ray_exit(&sq, &p, &d).unwrap();
        let back = ray_exit(&sq, hit.point(), &d.reversed()).unwrap();
        // The return ray passes back through p; with p interior it must exit
        // on the far side, so check collinearity through p instead.
        let seg = hit.point() - &p;
        let seg2 = back.point() - &p;
        assert!(seg.cross(&seg2).is_zero());
    }

    #[test]
    fn turning_detects_full_circle() {
        // Four right angles sum to 2π.
        let quarter = (Real::zero(), Real::one());
        let quarters: Vec<_> = std::iter::repeat_n(quarter, 4).collect();
        assert_eq!(turning_multiple_of_2pi(&quarters), Some(1));
        assert_eq!(turning_multiple_of_2pi(&quarters[..3]), None);
        // Straight angles: π + π = 2π.
        let straight = (-&Real::one(), Real::zero());
        assert_eq!(turning_multiple_of_2pi(&[straight.clone(), straight.clone()]), Some(1));
        // 6 straight angles: 6π = 2π·3.
        let six = vec![straight; 6];
        assert_eq!(turning_multiple_of_2pi(&six), Some(3));
    }

    #[test]
    fn locate_point_cases() {
        let sq = unit_square();
        assert_eq!(locate_point(&sq, &PlaneVec::from_ratios(1, 2, 1, 3)), Location::Interior);
        assert_eq!(
            locate_point(&sq, &PlaneVec::from_ratios(1, 1, 1, 2)),
            Location::OnEdge {
                edge: 1,
                t: Real::ratio(1, 2)
            }
        );
        assert_eq!(locate_point(&sq, &PlaneVec::from_ints(0, 0)), Location::OnVertex(0));
        assert_eq!(locate_point(&sq, &PlaneVec::from_ints(2, 0)), Location::Outside);
    }

    #[test]
    fn sqrt_exact_works() {
        use num_rational::BigRational;
        let r = BigRational::new(big(9), big(4));
        assert_eq!(sqrt_exact(&r).unwrap(), BigRational::new(big(3), big(2)));
        assert!(sqrt_exact(&BigRational::new(big(2), big(1))).is_none());
    }
}
