//! The dilation-surface model: convex polygons glued along parallel edges by
//! positive dilations, with validation of the cone-angle and holonomy
//! conditions and the discrete Gauss-Bonnet identity.

use crate::geom::{
    self, check_convex_ccw, corner_complex, turning_multiple_of_2pi, DirectionVec, Location, Mat2,
    PlaneVec, PosAffineMap,
};
use crate::real::{Real, EPS};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};
use std::fmt;
use thiserror::Error;

/// Edge `edge` of polygon `poly`; edge i joins vertex i to vertex i+1 in
/// counterclockwise order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeRef {
    pub poly: usize,
    pub edge: usize,
}

impl EdgeRef {
    pub fn new(poly: usize, edge: usize) -> Self {
        EdgeRef { poly, edge }
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.poly, self.edge)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polygon {
    pub verts: Vec<PlaneVec>,
}

impl Polygon {
    pub fn new(verts: Vec<PlaneVec>) -> Self {
        Polygon { verts }
    }

    pub fn n(&self) -> usize {
        self.verts.len()
    }

    pub fn tail(&self, edge: usize) -> &PlaneVec {
        &self.verts[edge]
    }

    pub fn head(&self, edge: usize) -> &PlaneVec {
        &self.verts[(edge + 1) % self.n()]
    }

    pub fn edge_vec(&self, edge: usize) -> PlaneVec {
        self.head(edge) - self.tail(edge)
    }

    pub fn edge_point(&self, edge: usize, t: &Real) -> PlaneVec {
        self.tail(edge) + &self.edge_vec(edge).scale(t)
    }

    pub fn prev_edge(&self, vertex: usize) -> usize {
        (vertex + self.n() - 1) % self.n()
    }

    pub fn locate(&self, p: &PlaneVec) -> Location {
        geom::locate_point(&self.verts, p)
    }

    pub fn area2(&self) -> Real {
        geom::area2(&self.verts)
    }

    /// An interior point (the vertex centroid; convexity makes it interior).
    pub fn centroid(&self) -> PlaneVec {
        let mut s = PlaneVec::zero();
        for v in &self.verts {
            s = &s + v;
        }
        s.scale(&Real::from_int(self.n() as i64).recip())
    }
}

/// One side of a glued edge pair.
#[derive(Clone, Debug)]
pub struct PairData {
    pub partner: EdgeRef,
    /// Chart transition: maps this polygon's coordinates to the partner's,
    /// carrying this edge onto the partner edge (tail ↦ head, head ↦ tail).
    pub map: PosAffineMap,
    /// Linear part of `map`.
    pub dilation: Real,
}

/// A vertex class of the glued complex together with its cone data.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VertexClass {
    /// Corners (poly, vertex) in the order the walk around the point visits
    /// them.
    pub corners: Vec<(usize, usize)>,
    /// Cone angle is 2πk.
    pub k: i64,
    /// Dilation holonomy around the point; 1 for a Euclidean cone.
    pub holonomy: Real,
}

impl VertexClass {
    pub fn is_singular(&self) -> bool {
        self.k >= 2
    }

    pub fn cone_angle(&self) -> f64 {
        self.k as f64 * std::f64::consts::TAU
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValidationReport {
    pub genus: i64,
    pub euler: i64,
    pub num_polygons: usize,
    pub num_edge_pairs: usize,
    pub vertex_classes: Vec<VertexClass>,
}

impl ValidationReport {
    pub fn singular(&self) -> impl Iterator<Item = &VertexClass> {
        self.vertex_classes.iter().filter(|c| c.is_singular())
    }

    pub fn singular_ks(&self) -> Vec<i64> {
        let mut ks: Vec<i64> = self.singular().map(|c| c.k).collect();
        ks.sort();
        ks
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "genus {} (χ = {}), {} polygons, {} edge pairs",
            self.genus, self.euler, self.num_polygons, self.num_edge_pairs
        )?;
        for (i, c) in self.vertex_classes.iter().enumerate() {
            writeln!(
                f,
                "  vertex class {i}: k = {} (angle {}π), holonomy {}, {} corners{}",
                c.k,
                2 * c.k,
                c.holonomy,
                c.corners.len(),
                if c.is_singular() { "  [singular]" } else { "" }
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error("polygon {0} is degenerate")]
    DegeneratePolygon(usize),
    #[error("polygon {0} is not convex counterclockwise")]
    NotConvexCcw(usize),
    #[error("edge {0} out of range")]
    BadEdgeRef(EdgeRef),
    #[error("edge {0} is not paired")]
    UnpairedEdge(EdgeRef),
    #[error("edge {0} appears in more than one pair")]
    DoublyPairedEdge(EdgeRef),
    #[error("edge {0} is paired with itself")]
    SelfPairedEdge(EdgeRef),
    #[error("edges {0} and {1} are not anti-parallel")]
    NonParallelPair(EdgeRef, EdgeRef),
    #[error("edges {0} and {1} glue with a non-positive dilation")]
    NegativeDilation(EdgeRef, EdgeRef),
    #[error("cone angle at corner ({0}, {1}) is not a multiple of 2π")]
    InvalidConeAngle(usize, usize),
    #[error("non-Euclidean cone at corner ({0}, {1}): dilation holonomy {2}")]
    NonEuclideanCone(usize, usize, Real),
    #[error("Gauss-Bonnet mismatch: Σ(1-k) = {sum} but V-E+F = {euler}")]
    GaussBonnetMismatch { sum: i64, euler: i64 },
    #[error("surface is not connected")]
    Disconnected,
    #[error("matrix has non-positive determinant")]
    SingularMatrix,
    #[error("crossing {0} does not start in the current polygon")]
    DisconnectedCrossing(usize),
    #[error("json error: {0}")]
    Json(String),
}

/// A point on the surface: a polygon id plus coordinates inside (or on the
/// boundary of) that polygon's chart.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfacePoint {
    pub poly: usize,
    pub pos: PlaneVec,
}

impl SurfacePoint {
    pub fn new(poly: usize, pos: PlaneVec) -> Self {
        SurfacePoint { poly, pos }
    }
}

/// Interchange form: just the polygons and the pairing combinatorics.
#[derive(Serialize, Deserialize)]
struct SurfaceFile {
    polygons: Vec<Vec<[Real; 2]>>,
    pairings: Vec<[[usize; 2]; 2]>,
}

#[derive(Clone, Debug)]
pub struct DilationSurface {
    polygons: Vec<Polygon>,
    pairs: Vec<(EdgeRef, EdgeRef)>,
    pair_data: Vec<Vec<PairData>>,
    classes: Vec<VertexClass>,
    class_of_corner: HashMap<(usize, usize), usize>,
    genus: i64,
    euler: i64,
    tree_to_root: Vec<PosAffineMap>,
}

impl PartialEq for DilationSurface {
    fn eq(&self, other: &Self) -> bool {
        self.polygons == other.polygons && self.pairs == other.pairs
    }
}

impl DilationSurface {
    /// Builds and fully validates a surface. All invariants of the model are
    /// checked here; a constructed surface is immutable and always valid.
    pub fn new(
        polygons: Vec<Polygon>,
        mut pairs: Vec<(EdgeRef, EdgeRef)>,
    ) -> Result<DilationSurface, SurfaceError> {
        for (i, p) in polygons.iter().enumerate() {
            check_convex_ccw(&p.verts).map_err(|e| match e {
                geom::GeomError::DegeneratePolygon => SurfaceError::DegeneratePolygon(i),
                _ => SurfaceError::NotConvexCcw(i),
            })?;
        }

        // Normalize pair order for deterministic serialization.
        for (a, b) in pairs.iter_mut() {
            if *b < *a {
                std::mem::swap(a, b);
            }
        }
        pairs.sort();

        let edge_count: usize = polygons.iter().map(|p| p.n()).sum();
        let mut seen: HashMap<EdgeRef, ()> = HashMap::new();
        let mut pair_data: Vec<Vec<Option<PairData>>> =
            polygons.iter().map(|p| vec![None; p.n()]).collect();

        for &(a, b) in &pairs {
            for e in [a, b] {
                if e.poly >= polygons.len() || e.edge >= polygons[e.poly].n() {
                    return Err(SurfaceError::BadEdgeRef(e));
                }
                if seen.insert(e, ()).is_some() {
                    return Err(SurfaceError::DoublyPairedEdge(e));
                }
            }
            if a == b {
                return Err(SurfaceError::SelfPairedEdge(a));
            }
            let va = polygons[a.poly].edge_vec(a.edge);
            let vb = polygons[b.poly].edge_vec(b.edge);
            if !va.cross(&vb).is_zero() {
                return Err(SurfaceError::NonParallelPair(a, b));
            }
            if !va.dot(&vb).is_negative() {
                return Err(SurfaceError::NegativeDilation(a, b));
            }
            let map_ab = PosAffineMap::mapping_segment(
                polygons[a.poly].tail(a.edge),
                polygons[a.poly].head(a.edge),
                polygons[b.poly].head(b.edge),
                polygons[b.poly].tail(b.edge),
            )
            .ok_or(SurfaceError::NegativeDilation(a, b))?;
            let map_ba = map_ab.invert();
            pair_data[a.poly][a.edge] = Some(PairData {
                partner: b,
                dilation: map_ab.a.clone(),
                map: map_ab,
            });
            pair_data[b.poly][b.edge] = Some(PairData {
                partner: a,
                dilation: map_ba.a.clone(),
                map: map_ba,
            });
        }
        if seen.len() != edge_count {
            for (pi, p) in polygons.iter().enumerate() {
                for e in 0..p.n() {
                    let er = EdgeRef::new(pi, e);
                    if !seen.contains_key(&er) {
                        return Err(SurfaceError::UnpairedEdge(er));
                    }
                }
            }
        }
        let pair_data: Vec<Vec<PairData>> = pair_data
            .into_iter()
            .map(|v| v.into_iter().map(|d| d.unwrap()).collect())
            .collect();

        // Connectivity over the gluing graph.
        if !polygons.is_empty() {
            let mut reached = vec![false; polygons.len()];
            let mut queue = VecDeque::from([0usize]);
            reached[0] = true;
            while let Some(p) = queue.pop_front() {
                for d in &pair_data[p] {
                    if !reached[d.partner.poly] {
                        reached[d.partner.poly] = true;
                        queue.push_back(d.partner.poly);
                    }
                }
            }
            if reached.iter().any(|r| !r) {
                return Err(SurfaceError::Disconnected);
            }
        }

        // Vertex classes by walking corners around each identified point.
        let mut classes: Vec<VertexClass> = Vec::new();
        let mut class_of_corner: HashMap<(usize, usize), usize> = HashMap::new();
        for pi in 0..polygons.len() {
            for vi in 0..polygons[pi].n() {
                if class_of_corner.contains_key(&(pi, vi)) {
                    continue;
                }
                let mut corners = Vec::new();
                let mut angles = Vec::new();
                let mut holonomy = Real::one();
                let (mut cp, mut cv) = (pi, vi);
                loop {
                    corners.push((cp, cv));
                    class_of_corner.insert((cp, cv), classes.len());
                    let poly = &polygons[cp];
                    let out = poly.edge_vec(cv);
                    let in_edge = poly.prev_edge(cv);
                    let rev_in = -&poly.edge_vec(in_edge);
                    angles.push(corner_complex(&out, &rev_in));
                    // Cross the incoming edge to the next corner around the
                    // point: head of the incoming edge maps to the tail of
                    // its partner.
                    let d = &pair_data[cp][in_edge];
                    holonomy = &holonomy * &d.dilation;
                    (cp, cv) = (d.partner.poly, d.partner.edge);
                    if (cp, cv) == (pi, vi) {
                        break;
                    }
                }
                let k = turning_multiple_of_2pi(&angles)
                    .ok_or(SurfaceError::InvalidConeAngle(pi, vi))?;
                if k < 1 {
                    return Err(SurfaceError::InvalidConeAngle(pi, vi));
                }
                if !holonomy.close_to(&Real::one(), EPS) {
                    return Err(SurfaceError::NonEuclideanCone(pi, vi, holonomy));
                }
                classes.push(VertexClass { corners, k, holonomy });
            }
        }

        let v = classes.len() as i64;
        let e = (edge_count / 2) as i64;
        let f = polygons.len() as i64;
        let euler = v - e + f;
        let sum: i64 = classes.iter().map(|c| 1 - c.k).sum();
        if sum != euler || euler % 2 != 0 || euler > 2 {
            return Err(SurfaceError::GaussBonnetMismatch { sum, euler });
        }
        let genus = (2 - euler) / 2;

        // Developing maps along a BFS spanning tree of the gluing graph,
        // rooted at polygon 0: the fixed normalization for holonomy vectors.
        let mut tree_to_root: Vec<Option<PosAffineMap>> = vec![None; polygons.len()];
        if !polygons.is_empty() {
            tree_to_root[0] = Some(PosAffineMap::identity());
            let mut queue = VecDeque::from([0usize]);
            while let Some(p) = queue.pop_front() {
                for d in &pair_data[p] {
                    let q = d.partner.poly;
                    if tree_to_root[q].is_none() {
                        // map chart_q -> chart_p is the inverse of this side's map.
                        let back = pair_data[q][d.partner.edge].map.clone();
                        tree_to_root[q] =
                            Some(tree_to_root[p].as_ref().unwrap().compose(&back));
                        queue.push_back(q);
                    }
                }
            }
        }
        let tree_to_root = tree_to_root.into_iter().map(|m| m.unwrap()).collect();

        Ok(DilationSurface {
            polygons,
            pairs,
            pair_data,
            classes,
            class_of_corner,
            genus,
            euler,
            tree_to_root,
        })
    }

    pub fn polygons(&self) -> &[Polygon] {
        &self.polygons
    }

    pub fn polygon(&self, i: usize) -> &Polygon {
        &self.polygons[i]
    }

    pub fn pairs(&self) -> &[(EdgeRef, EdgeRef)] {
        &self.pairs
    }

    pub fn pair_data(&self, e: EdgeRef) -> &PairData {
        &self.pair_data[e.poly][e.edge]
    }

    pub fn partner(&self, e: EdgeRef) -> EdgeRef {
        self.pair_data(e).partner
    }

    /// Dilation factor picked up when crossing edge `e` out of its polygon.
    pub fn crossing_factor(&self, e: EdgeRef) -> &Real {
        &self.pair_data(e).dilation
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn euler(&self) -> i64 {
        self.euler
    }

    pub fn vertex_classes(&self) -> &[VertexClass] {
        &self.classes
    }

    pub fn class_id_of_corner(&self, poly: usize, vertex: usize) -> usize {
        self.class_of_corner[&(poly, vertex)]
    }

    pub fn class_of_corner(&self, poly: usize, vertex: usize) -> &VertexClass {
        &self.classes[self.class_id_of_corner(poly, vertex)]
    }

    pub fn singular_class_ids(&self) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&i| self.classes[i].is_singular())
            .collect()
    }

    /// Developing map from chart `poly` to the chart of polygon 0 along the
    /// BFS spanning tree: the fixed normalization of the artifact.
    pub fn tree_to_root(&self, poly: usize) -> &PosAffineMap {
        &self.tree_to_root[poly]
    }

    pub fn validation_report(&self) -> ValidationReport {
        ValidationReport {
            genus: self.genus,
            euler: self.euler,
            num_polygons: self.polygons.len(),
            num_edge_pairs: self.pairs.len(),
            vertex_classes: self.classes.clone(),
        }
    }

    /// Develops along a sequence of edge crossings starting from `start`.
    /// Returns the accumulated transition map (start chart to final chart)
    /// and the image of the start position under it.
    pub fn develop(
        &self,
        start: &SurfacePoint,
        crossings: &[EdgeRef],
    ) -> Result<(PosAffineMap, PlaneVec), SurfaceError> {
        let mut h = PosAffineMap::identity();
        let mut cur = start.poly;
        for (i, &e) in crossings.iter().enumerate() {
            if e.poly != cur {
                return Err(SurfaceError::DisconnectedCrossing(i));
            }
            let d = self.pair_data(e);
            h = d.map.compose(&h);
            cur = d.partner.poly;
        }
        let img = h.apply(&start.pos);
        Ok((h, img))
    }

    /// The new surface obtained by transforming every chart by `M`; same
    /// gluing pattern. Requires det M > 0.
    pub fn gl2_act(&self, m: &Mat2) -> Result<DilationSurface, SurfaceError> {
        if !m.det().is_positive() {
            return Err(SurfaceError::SingularMatrix);
        }
        let polys = self
            .polygons
            .iter()
            .map(|p| Polygon::new(p.verts.iter().map(|v| m.apply(v)).collect()))
            .collect();
        DilationSurface::new(polys, self.pairs.clone())
    }

    /// Canonical representative of a surface point: boundary points are
    /// normalized to the lexicographically least (polygon, edge, parameter)
    /// in their pairing orbit, vertex points to the least corner of their
    /// class.
    pub fn canonicalize(&self, p: &SurfacePoint) -> SurfacePoint {
        match self.polygons[p.poly].locate(&p.pos) {
            Location::Interior => p.clone(),
            Location::Outside => p.clone(),
            Location::OnVertex(v) => {
                let class = self.class_of_corner(p.poly, v);
                let &(cp, cv) = class.corners.iter().min().unwrap();
                SurfacePoint::new(cp, self.polygons[cp].verts[cv].clone())
            }
            Location::OnEdge { edge, t } => {
                let here = EdgeRef::new(p.poly, edge);
                let d = self.pair_data(here);
                if d.partner < here {
                    SurfacePoint::new(d.partner.poly, d.map.apply(&p.pos))
                } else {
                    let _ = t;
                    p.clone()
                }
            }
        }
    }

    /// Σ of chart areas. Chart-dependent, but exact and useful as a
    /// consistency budget for complexes carried in the same charts.
    pub fn total_area2(&self) -> Real {
        let mut s = Real::zero();
        for p in &self.polygons {
            s = &s + &p.area2();
        }
        s
    }

    pub fn is_exact(&self) -> bool {
        self.polygons
            .iter()
            .all(|p| p.verts.iter().all(|v| v.is_exact()))
    }

    /// Linear dilation parts of the holonomy generators (one per non-tree
    /// edge pair), canonicalized to be ≥ 1 and sorted. Flat surfaces give an
    /// empty list.
    pub fn holonomy_dilations(&self) -> Vec<Real> {
        let mut out = Vec::new();
        for &(a, _) in &self.pairs {
            let d = self.pair_data(a);
            // λ of the loop: root -> a.poly -> partner.poly -> root.
            let lam = &(&self.tree_to_root[d.partner.poly].a * &d.dilation)
                / &self.tree_to_root[a.poly].a;
            let lam = if lam < Real::one() { lam.recip() } else { lam };
            if !lam.close_to(&Real::one(), EPS) {
                out.push(lam);
            }
        }
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out.dedup();
        out
    }

    pub fn to_json(&self) -> String {
        let file = SurfaceFile {
            polygons: self
                .polygons
                .iter()
                .map(|p| p.verts.iter().map(|v| [v.x.clone(), v.y.clone()]).collect())
                .collect(),
            pairings: self
                .pairs
                .iter()
                .map(|(a, b)| [[a.poly, a.edge], [b.poly, b.edge]])
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("surface serialization")
    }

    pub fn from_json(text: &str) -> Result<DilationSurface, SurfaceError> {
        let file: SurfaceFile =
            serde_json::from_str(text).map_err(|e| SurfaceError::Json(e.to_string()))?;
        let polygons = file
            .polygons
            .into_iter()
            .map(|verts| Polygon::new(verts.into_iter().map(|[x, y]| PlaneVec::new(x, y)).collect()))
            .collect();
        let pairs = file
            .pairings
            .into_iter()
            .map(|[[p0, e0], [p1, e1]]| (EdgeRef::new(p0, e0), EdgeRef::new(p1, e1)))
            .collect();
        DilationSurface::new(polygons, pairs)
    }

    /// Prong directions of `d` at the corner (poly, vertex): true iff the
    /// oriented direction points into the (half-open) corner wedge
    /// [out-edge, reversed in-edge).
    pub fn direction_in_corner(&self, poly: usize, vertex: usize, d: &DirectionVec) -> bool {
        let p = &self.polygons[poly];
        let out = p.edge_vec(vertex);
        let rev_in = -&p.edge_vec(p.prev_edge(vertex));
        let dv = d.vec();
        // Wedge from `out` counterclockwise to `rev_in`, angle in (0, π].
        // Inside iff cross(out, d) > 0 and cross(d, rev_in) > 0; the boundary
        // ray along `out` is included, the one along `rev_in` is not.
        let c1 = out.cross(dv);
        let c2 = dv.cross(&rev_in);
        if c1.is_positive() && c2.is_positive() {
            return true;
        }
        // d along the out-edge.
        c1.is_zero() && out.dot(dv).is_positive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::PlaneVec;

    /// Unit square torus: opposite sides glued by translation.
    pub fn square_torus() -> DilationSurface {
        let p = Polygon::new(vec![
            PlaneVec::from_ints(0, 0),
            PlaneVec::from_ints(1, 0),
            PlaneVec::from_ints(1, 1),
            PlaneVec::from_ints(0, 1),
        ]);
        DilationSurface::new(
            vec![p],
            vec![
                (EdgeRef::new(0, 0), EdgeRef::new(0, 2)),
                (EdgeRef::new(0, 1), EdgeRef::new(0, 3)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn square_torus_validates_genus_one() {
        let s = square_torus();
        assert_eq!(s.genus(), 1);
        assert_eq!(s.euler(), 0);
        assert_eq!(s.vertex_classes().len(), 1);
        assert_eq!(s.vertex_classes()[0].k, 1);
        assert!(s.singular_class_ids().is_empty());
    }

    #[test]
    fn develop_empty_is_identity() {
        let s = square_torus();
        let start = SurfacePoint::new(0, PlaneVec::from_ratios(1, 2, 1, 2));
        let (h, img) = s.develop(&start, &[]).unwrap();
        assert_eq!(h, PosAffineMap::identity());
        assert_eq!(img, start.pos);
    }

    #[test]
    fn develop_single_crossing_has_pair_dilation() {
        let s = square_torus();
        let start = SurfacePoint::new(0, PlaneVec::from_ratios(1, 2, 1, 2));
        let (h, _) = s.develop(&start, &[EdgeRef::new(0, 1)]).unwrap();
        assert_eq!(h.a, Real::one());
        // Right side maps onto left side: x drops by 1.
        assert_eq!(h.b, PlaneVec::from_ints(-1, 0));
    }

    #[test]
    fn gl2_scaling_square_torus() {
        let s = square_torus();
        let m = Mat2::new(Real::from_int(2), Real::zero(), Real::zero(), Real::ratio(1, 2));
        let t = s.gl2_act(&m).unwrap();
        assert_eq!(t.genus(), 1);
        assert_eq!(
            t.polygon(0).verts[2],
            PlaneVec::new(Real::from_int(2), Real::ratio(1, 2))
        );
        let id = s.gl2_act(&Mat2::identity()).unwrap();
        assert_eq!(id, s);
    }

    #[test]
    fn gl2_action_is_multiplicative_on_polygons() {
        let s = square_torus();
        let m1 = Mat2::from_ints(1, 1, 0, 1);
        let m2 = Mat2::from_ints(2, 0, 1, 1);
        let a = s.gl2_act(&m2).unwrap().gl2_act(&m1).unwrap();
        let b = s.gl2_act(&m1.mul(&m2)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn unpaired_edge_is_rejected() {
        let p = Polygon::new(vec![
            PlaneVec::from_ints(0, 0),
            PlaneVec::from_ints(1, 0),
            PlaneVec::from_ints(1, 1),
            PlaneVec::from_ints(0, 1),
        ]);
        let err = DilationSurface::new(vec![p], vec![(EdgeRef::new(0, 0), EdgeRef::new(0, 2))]);
        assert!(matches!(err, Err(SurfaceError::UnpairedEdge(_))));
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let s = square_torus();
        let j1 = s.to_json();
        let t = DilationSurface::from_json(&j1).unwrap();
        assert_eq!(t, s);
        assert_eq!(t.to_json(), j1);
    }
}
