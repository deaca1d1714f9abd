//! Constructors for the named surfaces: Hopf tori and their covers, affine
//! tori, slit gluings, the two-chamber surface, the disco family, AIET
//! suspensions and ribbon-graph Hopf surfaces.

use crate::aiet::Aiet;
use crate::geom::{ray_exit, DirectionVec, PlaneVec, PosAffineMap, RayHit};
use crate::real::Real;
use crate::surface::{DilationSurface, EdgeRef, Polygon, SurfaceError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BuilderError {
    #[error("affine factor must differ from 1")]
    FactorOne,
    #[error("requested torus is flat (dilation part 1)")]
    FlatTorusRequested,
    #[error("parameter must be positive")]
    NonPositiveParameter,
    #[error("invalid AIET")]
    InvalidAiet,
    #[error("slit segments are not parallel with matching orientation")]
    SegmentsNotParallel,
    #[error("slit segment is not embedded")]
    SegmentNotEmbedded,
    #[error("cylinder factors violate the vertex constraint: {0}")]
    FactorConstraintViolated(String),
    #[error("surface construction failed: {0}")]
    Surface(#[from] SurfaceError),
}

/// The two-chamber surface: two unit-square chambers, each a vertical flat
/// cylinder of modulus 1, glued along their walls through three doors with
/// dilation factors 2, 1 and 1/2.
///
/// Chamber A (polygon 0) has the lower half of its right wall glued back
/// onto A's own left wall doubled and shifted by half a turn of the vertical
/// circle; the upper half passes to chamber B at scale 1. Chamber B
/// (polygon 1) feeds its whole right wall into the lower half of its own
/// left wall, halving. The half-turn offset in the doubling door is what
/// makes the rotation by π an affine symmetry of the surface.
pub fn two_chamber() -> DilationSurface {
    let half = Real::ratio(1, 2);
    let quarter = Real::ratio(1, 4);
    let a = Polygon::new(vec![
        PlaneVec::from_ints(0, 0),
        PlaneVec::from_ints(1, 0),
        PlaneVec::new(Real::one(), quarter),
        PlaneVec::new(Real::one(), half.clone()),
        PlaneVec::from_ints(1, 1),
        PlaneVec::from_ints(0, 1),
        PlaneVec::new(Real::zero(), half.clone()),
    ]);
    let b = Polygon::new(vec![
        PlaneVec::from_ints(0, 0),
        PlaneVec::from_ints(1, 0),
        PlaneVec::from_ints(1, 1),
        PlaneVec::from_ints(0, 1),
        PlaneVec::new(Real::zero(), half),
    ]);
    // A: 0 bottom, 1 right[0,1/4], 2 right[1/4,1/2], 3 right[1/2,1], 4 top,
    //    5 left[1/2,1], 6 left[0,1/2].
    // B: 0 bottom, 1 right, 2 top, 3 left-upper, 4 left-lower.
    DilationSurface::new(
        vec![a, b],
        vec![
            (EdgeRef::new(0, 0), EdgeRef::new(0, 4)),
            (EdgeRef::new(1, 0), EdgeRef::new(1, 2)),
            (EdgeRef::new(0, 1), EdgeRef::new(0, 5)),
            (EdgeRef::new(0, 2), EdgeRef::new(0, 6)),
            (EdgeRef::new(0, 3), EdgeRef::new(1, 3)),
            (EdgeRef::new(1, 1), EdgeRef::new(1, 4)),
        ],
    )
    .expect("two-chamber surface is valid")
}

/// Suspension of an AIET over a rectangle of height h: vertical sides glued
/// by translation, the top side glued onto the bottom according to T.
pub fn suspension(t: &Aiet, h: &Real) -> Result<DilationSurface, BuilderError> {
    if !t.is_valid() {
        return Err(BuilderError::InvalidAiet);
    }
    if !h.is_positive() {
        return Err(BuilderError::NonPositiveParameter);
    }
    let n = t.branches();
    let tcuts = t.top_cuts();
    let bcuts = t.bottom_cuts();
    let length = t.length();
    let mut verts = Vec::new();
    for c in bcuts.iter().take(n) {
        verts.push(PlaneVec::new(c.clone(), Real::zero()));
    }
    verts.push(PlaneVec::new(length.clone(), Real::zero()));
    verts.push(PlaneVec::new(length, h.clone()));
    // Top cuts right-to-left, skipping both ends.
    for c in tcuts.iter().rev().skip(1).take(n - 1) {
        verts.push(PlaneVec::new(c.clone(), h.clone()));
    }
    verts.push(PlaneVec::new(Real::zero(), h.clone()));
    let poly = Polygon::new(verts);
    // Edges: 0..n-1 bottom slots, n right, n+1..2n top (branch i at 2n-i),
    // 2n+1 left.
    let mut pairs = vec![(EdgeRef::new(0, n), EdgeRef::new(0, 2 * n + 1))];
    for (i, &slot) in t.permutation().iter().enumerate() {
        pairs.push((EdgeRef::new(0, 2 * n - i), EdgeRef::new(0, slot)));
    }
    Ok(DilationSurface::new(vec![poly], pairs)?)
}

/// The disco surface D_{a,b}: suspension of the (1,2)(3,4) exchange with
/// lengths a,b,b,a over a rectangle of height 1.
pub fn disco(a: &Real, b: &Real) -> Result<DilationSurface, BuilderError> {
    if !a.is_positive() || !b.is_positive() {
        return Err(BuilderError::NonPositiveParameter);
    }
    suspension(&Aiet::disco(a, b), &Real::one())
}

/// A flat genus-2 translation surface: a convex rational octagon with
/// opposite sides glued by translation. Single vertex class of angle 6π and
/// no dilation anywhere.
pub fn flat_octagon() -> DilationSurface {
    let poly = Polygon::new(vec![
        PlaneVec::from_ints(0, 0),
        PlaneVec::from_ints(2, 0),
        PlaneVec::from_ints(3, 1),
        PlaneVec::from_ints(3, 3),
        PlaneVec::from_ints(2, 4),
        PlaneVec::from_ints(0, 4),
        PlaneVec::from_ints(-1, 3),
        PlaneVec::from_ints(-1, 1),
    ]);
    let pairs = (0..4)
        .map(|i| (EdgeRef::new(0, i), EdgeRef::new(0, i + 4)))
        .collect();
    DilationSurface::new(vec![poly], pairs).expect("octagon is valid")
}

/// Quarter-turn direction grid, counterclockwise from the positive x-axis.
fn quarter(i: i64) -> PlaneVec {
    match i.rem_euclid(4) {
        0 => PlaneVec::from_ints(1, 0),
        1 => PlaneVec::from_ints(0, 1),
        2 => PlaneVec::from_ints(-1, 0),
        _ => PlaneVec::from_ints(0, -1),
    }
}

fn normalize_above_one(x: &Real) -> Real {
    if *x < Real::one() {
        x.recip()
    } else {
        x.clone()
    }
}

/// Annular cover model shared by the torus builders: 4k quarter-turn
/// trapezoid sectors between radii ρ_j and λa·ρ_j, chained radially, each
/// glued outer-to-inner with dilation λa. The radial wrap picks up dilation
/// λb (1 for the plain covers).
fn annulus_model(lambda_a: &Real, lambda_b: &Real, k: usize) -> Result<DilationSurface, BuilderError> {
    let n = 4 * k;
    // Radii interpolate 1 → λb linearly; the wrap dilation only sees the
    // overall ratio.
    let step = &(lambda_b - &Real::one()) / &Real::from_int(n as i64);
    let rho = |j: usize| -> Real { &Real::one() + &(&step * &Real::from_int(j as i64)) };
    let mut polys = Vec::new();
    let mut pairs = Vec::new();
    for j in 0..n {
        let uj = quarter(j as i64);
        let uj1 = quarter(j as i64 + 1);
        let (rj, rj1) = (rho(j), rho(j + 1));
        let quad = Polygon::new(vec![
            uj.scale(&rj),
            uj.scale(&(&rj * lambda_a)),
            uj1.scale(&(&rj1 * lambda_a)),
            uj1.scale(&rj1),
        ]);
        polys.push(quad);
        // Edge 0: radial out; 1: outer; 2: radial in; 3: inner.
        pairs.push((EdgeRef::new(j, 1), EdgeRef::new(j, 3)));
        pairs.push((EdgeRef::new(j, 2), EdgeRef::new((j + 1) % n, 0)));
    }
    Ok(DilationSurface::new(polys, pairs)?)
}

/// The Hopf torus C*/(z ∼ λz) as an annulus of four trapezoid sectors. Each
/// directional foliation has exactly two closed leaves, the images of the
/// two rays in that direction, one attracting and one repelling.
pub fn hopf_torus(lambda: &Real) -> Result<DilationSurface, BuilderError> {
    if !lambda.is_positive() {
        return Err(BuilderError::NonPositiveParameter);
    }
    if *lambda == Real::one() {
        return Err(BuilderError::FactorOne);
    }
    // λ and 1/λ generate the same group, hence the same quotient.
    annulus_model(&normalize_above_one(lambda), &Real::one(), 1)
}

/// k-fold cover of the Hopf torus around the puncture: the same annulus
/// swept k turns.
pub fn k_hopf_torus(lambda: &Real, k: usize) -> Result<DilationSurface, BuilderError> {
    if k == 0 || !lambda.is_positive() {
        return Err(BuilderError::NonPositiveParameter);
    }
    if *lambda == Real::one() {
        return Err(BuilderError::FactorOne);
    }
    annulus_model(&normalize_above_one(lambda), &Real::one(), k)
}

/// The affine torus exp(C / (αZ ⊕ (β + 2ikπ)Z)), parameterized by the
/// dilation parts of its two holonomy generators: `alpha_factor` = e^α and
/// `beta_factor` = e^β. Taking the exponentiated values as inputs keeps the
/// construction rational; the flat-torus log parameters are recovered as
/// α = log(alpha_factor), β = log(beta_factor).
pub fn affine_torus(
    alpha_factor: &Real,
    beta_factor: &Real,
    k: usize,
) -> Result<DilationSurface, BuilderError> {
    if k == 0 || !alpha_factor.is_positive() || !beta_factor.is_positive() {
        return Err(BuilderError::NonPositiveParameter);
    }
    if *alpha_factor == Real::one() {
        return Err(BuilderError::FactorOne);
    }
    if *beta_factor == Real::one() {
        return Err(BuilderError::FlatTorusRequested);
    }
    annulus_model(
        &normalize_above_one(alpha_factor),
        &normalize_above_one(beta_factor),
        k,
    )
}

/// A geodesic segment strictly inside one polygon of a surface.
#[derive(Clone, Debug)]
pub struct Slit {
    pub poly: usize,
    pub from: PlaneVec,
    pub to: PlaneVec,
}

impl Slit {
    pub fn new(poly: usize, from: PlaneVec, to: PlaneVec) -> Self {
        Slit { poly, from, to }
    }

    fn direction(&self) -> Option<DirectionVec> {
        DirectionVec::new(&self.to - &self.from)
    }
}

/// Mutable polygon/pairing data used by the surgery constructors.
struct RawSurface {
    polys: Vec<Vec<PlaneVec>>,
    pairs: Vec<(EdgeRef, EdgeRef)>,
}

impl RawSurface {
    fn from_surface(s: &DilationSurface) -> RawSurface {
        RawSurface {
            polys: s.polygons().iter().map(|p| p.verts.clone()).collect(),
            pairs: s.pairs().to_vec(),
        }
    }

    fn append(&mut self, other: RawSurface) -> usize {
        let shift = self.polys.len();
        self.polys.extend(other.polys);
        self.pairs.extend(other.pairs.iter().map(|&(a, b)| {
            (
                EdgeRef::new(a.poly + shift, a.edge),
                EdgeRef::new(b.poly + shift, b.edge),
            )
        }));
        shift
    }

    fn vertex(&self, poly: usize, i: usize) -> &PlaneVec {
        let v = &self.polys[poly];
        &v[i % v.len()]
    }

    fn partner(&self, e: EdgeRef) -> EdgeRef {
        for &(a, b) in &self.pairs {
            if a == e {
                return b;
            }
            if b == e {
                return a;
            }
        }
        panic!("edge {e} is unpaired");
    }

    /// Inserts a vertex on edge `e`, shifting edge indices behind it.
    fn insert_vertex(&mut self, e: EdgeRef, point: PlaneVec) {
        self.polys[e.poly].insert(e.edge + 1, point);
        for (a, b) in self.pairs.iter_mut() {
            for r in [a, b] {
                if r.poly == e.poly && r.edge > e.edge {
                    r.edge += 1;
                }
            }
        }
    }

    /// Splits the glued edge pair containing `e` at the given point on `e`,
    /// re-pairing the two halves with the matching halves of the partner.
    fn split_pair_at(&mut self, e: EdgeRef, point: PlaneVec) {
        let mut partner = self.partner(e);
        let map = PosAffineMap::mapping_segment(
            &self.vertex(e.poly, e.edge).clone(),
            &self.vertex(e.poly, e.edge + 1).clone(),
            &self.vertex(partner.poly, partner.edge + 1).clone(),
            &self.vertex(partner.poly, partner.edge).clone(),
        )
        .expect("paired edges are anti-parallel");
        let point2 = map.apply(&point);
        let mut e = e;
        self.pairs.retain(|&(a, b)| a != e && b != e);
        self.insert_vertex(e, point);
        if partner.poly == e.poly && partner.edge > e.edge {
            partner.edge += 1;
        }
        self.insert_vertex(partner, point2);
        if e.poly == partner.poly && e.edge > partner.edge {
            e.edge += 1;
        }
        let e_lo = e;
        let e_hi = EdgeRef::new(e.poly, e.edge + 1);
        let p_lo = partner;
        let p_hi = EdgeRef::new(partner.poly, partner.edge + 1);
        self.pairs.push((e_lo, p_hi));
        self.pairs.push((e_hi, p_lo));
    }

    /// Cuts polygon `poly` along the slit [from, to]: the chord through the
    /// slit is extended to the boundary, the polygon is replaced by its two
    /// halves, the chord is resewn outside the slit, and the two slit banks
    /// are returned as (upper, lower), upper traversed in the slit direction.
    fn open_slit(&mut self, slit: &Slit) -> Result<(EdgeRef, EdgeRef), BuilderError> {
        let d = slit.direction().ok_or(BuilderError::SegmentNotEmbedded)?;
        let poly_id = slit.poly;
        let back = ray_exit(&self.polys[poly_id], &slit.from, &d.reversed())
            .map_err(|_| BuilderError::SegmentNotEmbedded)?;
        let x_point = back.point().clone();
        let fwd = ray_exit(&self.polys[poly_id], &slit.to, &d)
            .map_err(|_| BuilderError::SegmentNotEmbedded)?;
        let y_point = fwd.point().clone();
        // Make the chord endpoints vertices.
        for hit in [back, fwd] {
            if let RayHit::Edge { edge, point, .. } = hit {
                self.split_pair_at(EdgeRef::new(poly_id, edge), point);
            }
        }
        let verts = self.polys[poly_id].clone();
        let n = verts.len();
        let ix = verts
            .iter()
            .position(|v| *v == x_point)
            .ok_or(BuilderError::SegmentNotEmbedded)?;
        let iy = verts
            .iter()
            .position(|v| *v == y_point)
            .ok_or(BuilderError::SegmentNotEmbedded)?;
        if ix == iy {
            return Err(BuilderError::SegmentNotEmbedded);
        }

        // Lower half: boundary arc x→y plus chord y → to → from → x.
        let mut lower = Vec::new();
        let mut lower_src = Vec::new();
        let mut i = ix;
        while i != iy {
            lower.push(verts[i].clone());
            lower_src.push(Some(i));
            i = (i + 1) % n;
        }
        lower.push(verts[iy].clone());
        lower_src.push(None); // y → to
        lower.push(slit.to.clone());
        lower_src.push(None); // to → from: the lower bank
        lower.push(slit.from.clone());
        lower_src.push(None); // from → x

        // Upper half: boundary arc y→x plus chord x → from → to → y.
        let mut upper = Vec::new();
        let mut upper_src = Vec::new();
        let mut i = iy;
        while i != ix {
            upper.push(verts[i].clone());
            upper_src.push(Some(i));
            i = (i + 1) % n;
        }
        upper.push(verts[ix].clone());
        upper_src.push(None); // x → from
        upper.push(slit.from.clone());
        upper_src.push(None); // from → to: the upper bank
        upper.push(slit.to.clone());
        upper_src.push(None); // to → y

        let lower_id = poly_id;
        let upper_id = self.polys.len();
        self.polys[lower_id] = lower;
        self.polys.push(upper);

        let map_edge = |old_edge: usize| -> EdgeRef {
            if let Some(pos) = lower_src.iter().position(|&s| s == Some(old_edge)) {
                return EdgeRef::new(lower_id, pos);
            }
            if let Some(pos) = upper_src.iter().position(|&s| s == Some(old_edge)) {
                return EdgeRef::new(upper_id, pos);
            }
            unreachable!("edge lost in slit surgery");
        };
        for (a, b) in self.pairs.iter_mut() {
            for r in [a, b] {
                if r.poly == poly_id {
                    *r = map_edge(r.edge);
                }
            }
        }
        // Resew the chord outside the slit.
        let ln = lower_src.len();
        let un = upper_src.len();
        self.pairs
            .push((EdgeRef::new(lower_id, ln - 3), EdgeRef::new(upper_id, un - 1)));
        self.pairs
            .push((EdgeRef::new(lower_id, ln - 1), EdgeRef::new(upper_id, un - 3)));
        Ok((EdgeRef::new(upper_id, un - 2), EdgeRef::new(lower_id, ln - 2)))
    }
}

/// Slit construction: cuts each surface along its slit and glues the upper
/// bank of each to the lower bank of the other. The genus adds; new singular
/// points of angle 4π appear at the slit endpoint classes.
pub fn slit_glue(
    s1: &DilationSurface,
    slit1: &Slit,
    s2: &DilationSurface,
    slit2: &Slit,
) -> Result<DilationSurface, BuilderError> {
    let d1 = slit1.direction().ok_or(BuilderError::SegmentNotEmbedded)?;
    let d2 = slit2.direction().ok_or(BuilderError::SegmentNotEmbedded)?;
    if !d1.same_direction(&d2) {
        return Err(BuilderError::SegmentsNotParallel);
    }
    for (s, slit) in [(s1, slit1), (s2, slit2)] {
        if slit.poly >= s.polygons().len() {
            return Err(BuilderError::SegmentNotEmbedded);
        }
        let p = s.polygon(slit.poly);
        use crate::geom::Location::Interior;
        if p.locate(&slit.from) != Interior || p.locate(&slit.to) != Interior {
            return Err(BuilderError::SegmentNotEmbedded);
        }
    }
    // Slitting a surface against itself along the very same segment asks
    // for a self-identification of the slit: degenerate. Distinct copies of
    // equal surfaces are fine (that is the double construction).
    if std::ptr::eq(s1, s2)
        && slit1.poly == slit2.poly
        && slit1.from == slit2.from
        && slit1.to == slit2.to
    {
        return Err(BuilderError::SegmentNotEmbedded);
    }
    let mut raw = RawSurface::from_surface(s1);
    let shift = raw.append(RawSurface::from_surface(s2));
    let (upper1, lower1) = raw.open_slit(slit1)?;
    let slit2_shifted = Slit::new(slit2.poly + shift, slit2.from.clone(), slit2.to.clone());
    let (upper2, lower2) = raw.open_slit(&slit2_shifted)?;
    raw.pairs.push((upper1, lower2));
    raw.pairs.push((upper2, lower1));
    let polys = raw.polys.into_iter().map(Polygon::new).collect();
    Ok(DilationSurface::new(polys, raw.pairs)?)
}

/// The double Hopf torus: two Hopf tori slit along parallel horizontal
/// segments and cross-glued; the standard obstruction to geodesic
/// triangulation.
pub fn double_hopf_torus(l1: &Real, l2: &Real) -> Result<DilationSurface, BuilderError> {
    let t1 = hopf_torus(l1)?;
    let t2 = hopf_torus(l2)?;
    // A horizontal segment inside sector 0 (the quad between the rays (1,0)
    // and (0,1)).
    let slit = || {
        Slit::new(
            0,
            PlaneVec::from_ratios(1, 4, 1, 1),
            PlaneVec::from_ratios(3, 4, 1, 1),
        )
    };
    slit_glue(&t1, &slit(), &t2, &slit())
}

/// A finite graph with a cyclic ordering of its half-edges at every vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct RibbonGraph {
    /// Vertex id of each half-edge.
    pub vertex_of: Vec<usize>,
    /// Fixed-point-free involution pairing half-edges into edges.
    pub pairing: Vec<usize>,
    /// Cyclic order of half-edges at each vertex.
    pub cyclic: Vec<Vec<usize>>,
}

impl RibbonGraph {
    pub fn is_valid(&self) -> bool {
        let n = self.vertex_of.len();
        if self.pairing.len() != n {
            return false;
        }
        for h in 0..n {
            let p = self.pairing[h];
            if p >= n || p == h || self.pairing[p] != h {
                return false;
            }
        }
        let mut seen = vec![false; n];
        for (v, cyc) in self.cyclic.iter().enumerate() {
            for &h in cyc {
                if h >= n || seen[h] || self.vertex_of[h] != v {
                    return false;
                }
                seen[h] = true;
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn num_edges(&self) -> usize {
        self.vertex_of.len() / 2
    }

    /// Boundary components of the thickened graph, each a cyclic half-edge
    /// word: next = cyclic successor of the partner at its vertex.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_of.len();
        let mut next_at_vertex = vec![0usize; n];
        for cyc in &self.cyclic {
            for (i, &h) in cyc.iter().enumerate() {
                next_at_vertex[h] = cyc[(i + 1) % cyc.len()];
            }
        }
        let mut seen = vec![false; n];
        let mut faces = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut h = start;
            loop {
                seen[h] = true;
                face.push(h);
                h = next_at_vertex[self.pairing[h]];
                if h == start {
                    break;
                }
            }
            faces.push(face);
        }
        faces
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CylEnd {
    Start,
    Finish,
}

/// One affine cylinder of a Hopf-surface specification: angle
/// `half_turns`·π and dilation `factor`, realized as a chain of quarter-turn
/// sectors. Up-cylinders sweep counterclockwise from the positive x-axis,
/// down-cylinders clockwise, so their free boundary edges face each other
/// with opposite orientations along the horizontal axis.
#[derive(Clone, Debug)]
pub struct HopfCylinderSpec {
    pub half_turns: usize,
    pub factor: Real,
    pub up: bool,
    pub scale: Real,
    /// Subdivision parameters in (0,1) along the two free boundary edges.
    pub start_splits: Vec<Real>,
    pub finish_splits: Vec<Real>,
}

/// Reference to one boundary arc of one cylinder.
pub type ArcRef = (usize, CylEnd, usize);

/// Concrete Hopf-surface data: cylinders of angle kπ plus the pairing of
/// their boundary arcs. The vertex factor constraint — the oriented product
/// of factors around every singular point is 1 — is exactly the
/// Euclidean-cone gate of surface validation and is checked on build.
#[derive(Clone, Debug)]
pub struct HopfSurfaceSpec {
    pub cylinders: Vec<HopfCylinderSpec>,
    pub gluing: Vec<(ArcRef, ArcRef)>,
}

impl HopfSurfaceSpec {
    /// The genus-2 example: three cylinders of angles 2π, π, π with factors
    /// λ1, λ2, λ3 glued along a two-vertex spine. Both cone points see the
    /// three cylinders with oriented factor product λ2·λ3/λ1, so the build
    /// succeeds exactly when λ1 = λ2·λ3.
    pub fn genus2_three_cylinders(l1: &Real, l2: &Real, l3: &Real) -> HopfSurfaceSpec {
        HopfSurfaceSpec {
            cylinders: vec![
                HopfCylinderSpec {
                    half_turns: 2,
                    factor: l1.clone(),
                    up: true,
                    scale: Real::one(),
                    start_splits: vec![],
                    finish_splits: vec![],
                },
                HopfCylinderSpec {
                    half_turns: 1,
                    factor: l2.clone(),
                    up: true,
                    scale: Real::one(),
                    start_splits: vec![Real::ratio(1, 2)],
                    finish_splits: vec![],
                },
                HopfCylinderSpec {
                    half_turns: 1,
                    factor: l3.clone(),
                    up: false,
                    scale: Real::one(),
                    start_splits: vec![Real::ratio(1, 2)],
                    finish_splits: vec![],
                },
            ],
            gluing: vec![
                ((0, CylEnd::Start, 0), (2, CylEnd::Start, 0)),
                ((1, CylEnd::Finish, 0), (2, CylEnd::Start, 1)),
                ((1, CylEnd::Start, 0), (0, CylEnd::Finish, 0)),
                ((1, CylEnd::Start, 1), (2, CylEnd::Finish, 0)),
            ],
        }
    }

    /// Single cylinder of angle 2π closed onto itself: a one-loop spine,
    /// giving a Hopf-torus-like genus-1 surface.
    pub fn single_loop(lambda: &Real) -> HopfSurfaceSpec {
        HopfSurfaceSpec {
            cylinders: vec![HopfCylinderSpec {
                half_turns: 2,
                factor: lambda.clone(),
                up: true,
                scale: Real::one(),
                start_splits: vec![],
                finish_splits: vec![],
            }],
            gluing: vec![((0, CylEnd::Start, 0), (0, CylEnd::Finish, 0))],
        }
    }
}

/// A built Hopf surface together with its construction certificate.
#[derive(Clone, Debug)]
pub struct HopfSurface {
    pub surface: DilationSurface,
    /// Spine graph derived from the arc gluing: vertices are the singular
    /// classes, edges the glued boundary arcs.
    pub ribbon: RibbonGraph,
    /// (half_turns, factor) per cylinder.
    pub cylinders: Vec<(usize, Real)>,
    /// The single direction containing all saddle connections.
    pub spine_direction: DirectionVec,
}

struct BuiltCylinder {
    start_arcs: Vec<EdgeRef>,
    finish_arcs: Vec<EdgeRef>,
}

/// Realizes one cylinder as sector polygons, returning its free arcs.
fn build_cylinder(
    spec: &HopfCylinderSpec,
    polys: &mut Vec<Polygon>,
    pairs: &mut Vec<(EdgeRef, EdgeRef)>,
) -> Result<BuiltCylinder, BuilderError> {
    if spec.half_turns == 0 || !spec.factor.is_positive() || !spec.scale.is_positive() {
        return Err(BuilderError::NonPositiveParameter);
    }
    if spec.factor == Real::one() {
        return Err(BuilderError::FactorOne);
    }
    let m = 2 * spec.half_turns; // quarter-turn sectors
    let base = polys.len();
    let lam = &spec.factor;
    let rho = &spec.scale;
    let dir = |j: usize| -> PlaneVec {
        let idx = if spec.up { j as i64 } else { -(j as i64) };
        quarter(idx)
    };
    let split_points = |from: &PlaneVec, to: &PlaneVec, params: &[Real]| -> Vec<PlaneVec> {
        let mut sorted = params.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        sorted
            .iter()
            .map(|t| from + &(to - from).scale(t))
            .collect()
    };

    let mut start_arcs = Vec::new();
    let mut finish_arcs = Vec::new();
    let mut radial_out = Vec::new(); // per sector: the chain-facing edges
    let mut radial_in = Vec::new();

    for j in 0..m {
        let (inner_a, inner_b) = (dir(j).scale(rho), dir(j + 1).scale(rho));
        let (outer_a, outer_b) = (inner_a.scale(lam), inner_b.scale(lam));
        let mut verts: Vec<PlaneVec> = Vec::new();
        let mut edge_labels: Vec<&str> = Vec::new();
        if spec.up {
            // ccw: inner_a, [start splits], outer_a, outer_b, inner_b.
            verts.push(inner_a.clone());
            edge_labels.push("out");
            if j == 0 {
                for p in split_points(&inner_a, &outer_a, &spec.start_splits) {
                    verts.push(p);
                    edge_labels.push("out");
                }
            }
            verts.push(outer_a.clone());
            edge_labels.push("outer");
            verts.push(outer_b.clone());
            edge_labels.push("in");
            if j == m - 1 {
                for p in split_points(&outer_b, &inner_b, &spec.finish_splits) {
                    verts.push(p);
                    edge_labels.push("in");
                }
            }
            verts.push(inner_b.clone());
            edge_labels.push("inner");
        } else {
            // Down sector, ccw: inner_a, inner_b, outer_b, [splits], outer_a.
            verts.push(inner_a.clone());
            edge_labels.push("inner");
            verts.push(inner_b.clone());
            edge_labels.push("out");
            verts.push(outer_b.clone());
            edge_labels.push("outer");
            verts.push(outer_a.clone());
            edge_labels.push("in");
            if j == 0 {
                let pts = split_points(&outer_a, &inner_a, &spec.start_splits);
                for (w, p) in pts.into_iter().enumerate() {
                    verts.insert(4 + w, p);
                    edge_labels.push("in");
                }
            }
            if j == m - 1 {
                // Finish edge is the "out" edge of the last sector.
                let pts = split_points(&inner_b, &outer_b, &spec.finish_splits);
                for (w, p) in pts.into_iter().enumerate() {
                    verts.insert(2 + w, p);
                    edge_labels.insert(2, "out");
                    let _ = w;
                }
            }
        }

        // Edge index of each label occurrence.
        let find_all = |label: &str, labels: &[&str]| -> Vec<usize> {
            labels
                .iter()
                .enumerate()
                .filter(|(_, l)| **l == label)
                .map(|(i, _)| i)
                .collect()
        };
        let pid = base + j;
        let outs = find_all("out", &edge_labels);
        let ins = find_all("in", &edge_labels);
        let outers = find_all("outer", &edge_labels);
        let inners = find_all("inner", &edge_labels);
        polys.push(Polygon::new(verts));
        pairs.push((
            EdgeRef::new(pid, outers[0]),
            EdgeRef::new(pid, inners[0]),
        ));
        if spec.up {
            if j == 0 {
                start_arcs = outs.iter().map(|&e| EdgeRef::new(pid, e)).collect();
                radial_out.push(None);
            } else {
                radial_out.push(Some(EdgeRef::new(pid, outs[0])));
            }
            if j == m - 1 {
                finish_arcs = ins.iter().map(|&e| EdgeRef::new(pid, e)).collect();
                radial_in.push(None);
            } else {
                radial_in.push(Some(EdgeRef::new(pid, ins[0])));
            }
        } else {
            if j == 0 {
                start_arcs = ins.iter().map(|&e| EdgeRef::new(pid, e)).collect();
                radial_in.push(None);
            } else {
                radial_in.push(Some(EdgeRef::new(pid, ins[0])));
            }
            if j == m - 1 {
                finish_arcs = outs.iter().map(|&e| EdgeRef::new(pid, e)).collect();
                radial_out.push(None);
            } else {
                radial_out.push(Some(EdgeRef::new(pid, outs[0])));
            }
        }
    }
    // Chain the sectors radially.
    for j in 0..m - 1 {
        let (a, b) = if spec.up {
            (radial_in[j], radial_out[j + 1])
        } else {
            (radial_out[j], radial_in[j + 1])
        };
        pairs.push((a.expect("interior radial edge"), b.expect("interior radial edge")));
    }
    Ok(BuiltCylinder { start_arcs, finish_arcs })
}

/// Builds the dilation surface described by a Hopf-surface specification,
/// checking the per-vertex factor constraint, and derives the spine ribbon
/// graph certificate.
pub fn hopf_surface(spec: &HopfSurfaceSpec) -> Result<HopfSurface, BuilderError> {
    let mut polys = Vec::new();
    let mut pairs = Vec::new();
    let mut built = Vec::new();
    for cyl in &spec.cylinders {
        built.push(build_cylinder(cyl, &mut polys, &mut pairs)?);
    }
    let arc = |r: &ArcRef| -> Result<EdgeRef, BuilderError> {
        let (c, end, idx) = r;
        let arcs = match end {
            CylEnd::Start => &built[*c].start_arcs,
            CylEnd::Finish => &built[*c].finish_arcs,
        };
        arcs.get(*idx).copied().ok_or(BuilderError::FactorConstraintViolated(
            "arc reference out of range".into(),
        ))
    };
    let mut spine_pairs = Vec::new();
    for (a, b) in &spec.gluing {
        let pair = (arc(a)?, arc(b)?);
        spine_pairs.push(pair);
        pairs.push(pair);
    }
    let surface = DilationSurface::new(polys, pairs).map_err(|e| match e {
        SurfaceError::NonEuclideanCone(p, v, h) => BuilderError::FactorConstraintViolated(format!(
            "oriented factor product {h} ≠ 1 at corner ({p}, {v})"
        )),
        other => BuilderError::Surface(other),
    })?;

    // Derive the spine ribbon graph: one edge per glued arc pair, half-edge
    // ends at the singular classes of the arc endpoints, cyclic orders from
    // the corner walks around each class.
    let singular = surface.singular_class_ids();
    let vertex_index: std::collections::HashMap<usize, usize> =
        singular.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut vertex_of = vec![usize::MAX; 2 * spine_pairs.len()];
    let mut cyclic: Vec<Vec<usize>> = vec![Vec::new(); singular.len()];
    for (vi, &class_id) in singular.iter().enumerate() {
        let class = &surface.vertex_classes()[class_id];
        for &(p, v) in &class.corners {
            // The walk at corner (p, v) crosses the incoming edge of v.
            let in_edge = EdgeRef::new(p, surface.polygon(p).prev_edge(v));
            for (ei, &(a, b)) in spine_pairs.iter().enumerate() {
                let h = if in_edge == a {
                    2 * ei + 1
                } else if in_edge == b {
                    2 * ei
                } else {
                    continue;
                };
                vertex_of[h] = vi;
                cyclic[vi].push(h);
            }
        }
    }
    let mut pairing = vec![0usize; vertex_of.len()];
    for ei in 0..spine_pairs.len() {
        pairing[2 * ei] = 2 * ei + 1;
        pairing[2 * ei + 1] = 2 * ei;
    }
    let ribbon = RibbonGraph {
        vertex_of,
        pairing,
        cyclic,
    };
    Ok(HopfSurface {
        surface,
        ribbon,
        cylinders: spec
            .cylinders
            .iter()
            .map(|c| (c.half_turns, c.factor.clone()))
            .collect(),
        spine_direction: DirectionVec::from_ints(1, 0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_chamber_is_genus_two_with_one_6pi_point() {
        let s = two_chamber();
        let rep = s.validation_report();
        assert_eq!(rep.genus, 2);
        assert_eq!(rep.singular_ks(), vec![3]);
        assert_eq!(rep.vertex_classes.len(), 1);
        assert_eq!(rep.vertex_classes[0].corners.len(), 10);
    }

    #[test]
    fn disco_is_genus_two_with_two_4pi_points() {
        let s = disco(&Real::from_int(1), &Real::from_int(2)).unwrap();
        let rep = s.validation_report();
        assert_eq!(rep.genus, 2);
        assert_eq!(rep.singular_ks(), vec![2, 2]);
    }

    #[test]
    fn identity_suspension_is_square_torus() {
        let t = Aiet::identity(Real::one());
        let s = suspension(&t, &Real::one()).unwrap();
        assert_eq!(s.genus(), 1);
        assert!(s.singular_class_ids().is_empty());
        assert_eq!(s.polygons().len(), 1);
        assert_eq!(s.polygon(0).n(), 4);
    }

    #[test]
    fn two_interval_exchange_suspension_genus() {
        // A 2-interval translation exchange suspends to a genus-1 surface
        // (Euler count of the suspension complex).
        let t = Aiet::new(
            vec![Real::one(), Real::from_int(2)],
            vec![Real::from_int(2), Real::one()],
            vec![1, 0],
        )
        .unwrap();
        let s = suspension(&t, &Real::one()).unwrap();
        assert_eq!(s.genus(), 1);
    }

    #[test]
    fn unbalanced_dilation_suspension_is_rejected() {
        // Exchanging [0,1] and [1,3] with slopes 2 and 1/2 forces vertical
        // holonomy 1/4 around one suspension vertex: the Euclidean-cone
        // condition fails, so the suspension is not a dilation surface.
        let t = Aiet::new(
            vec![Real::one(), Real::from_int(2)],
            vec![Real::one(), Real::from_int(2)],
            vec![1, 0],
        )
        .unwrap();
        assert!(matches!(
            suspension(&t, &Real::one()),
            Err(BuilderError::Surface(SurfaceError::NonEuclideanCone(..)))
        ));
    }

    #[test]
    fn hopf_torus_validates_genus_one() {
        let s = hopf_torus(&Real::from_int(2)).unwrap();
        assert_eq!(s.genus(), 1);
        assert!(s.singular_class_ids().is_empty());
        assert!(matches!(hopf_torus(&Real::one()), Err(BuilderError::FactorOne)));
    }

    #[test]
    fn k_hopf_covers_validate() {
        for k in 1..=3 {
            let s = k_hopf_torus(&Real::from_int(2), k).unwrap();
            assert_eq!(s.genus(), 1, "k = {k}");
            assert!(s.singular_class_ids().is_empty());
            assert_eq!(s.polygons().len(), 4 * k);
        }
        assert_eq!(
            k_hopf_torus(&Real::from_int(2), 1).unwrap(),
            hopf_torus(&Real::from_int(2)).unwrap()
        );
    }

    #[test]
    fn affine_torus_validates_and_rejects_flat() {
        // alpha_factor = 2 (α = log 2), beta_factor = 3 (β = log 3).
        let s = affine_torus(&Real::from_int(2), &Real::from_int(3), 1).unwrap();
        assert_eq!(s.genus(), 1);
        assert!(s.singular_class_ids().is_empty());
        assert!(matches!(
            affine_torus(&Real::from_int(2), &Real::one(), 1),
            Err(BuilderError::FlatTorusRequested)
        ));
        // k turns: 4k sectors.
        let s3 = affine_torus(&Real::from_int(2), &Real::from_int(3), 3).unwrap();
        assert_eq!(s3.polygons().len(), 12);
        assert_eq!(s3.genus(), 1);
    }

    #[test]
    fn flat_octagon_validates() {
        let s = flat_octagon();
        let rep = s.validation_report();
        assert_eq!(rep.genus, 2);
        assert_eq!(rep.singular_ks(), vec![3]);
        assert!(s.holonomy_dilations().is_empty());
    }

    #[test]
    fn double_hopf_torus_is_genus_two() {
        let s = double_hopf_torus(&Real::from_int(2), &Real::from_int(2)).unwrap();
        let rep = s.validation_report();
        assert_eq!(rep.genus, 2);
        // Two new cone points of angle 4π, forced by Gauss-Bonnet.
        assert_eq!(rep.singular_ks(), vec![2, 2]);
    }

    #[test]
    fn self_slit_same_segment_rejected() {
        let t = hopf_torus(&Real::from_int(2)).unwrap();
        let slit = Slit::new(
            0,
            PlaneVec::from_ratios(1, 4, 1, 1),
            PlaneVec::from_ratios(3, 4, 1, 1),
        );
        assert!(matches!(
            slit_glue(&t, &slit, &t, &slit),
            Err(BuilderError::SegmentNotEmbedded)
        ));
    }

    #[test]
    fn slit_segments_must_be_parallel() {
        let t1 = hopf_torus(&Real::from_int(2)).unwrap();
        let t2 = hopf_torus(&Real::from_int(2)).unwrap();
        let s1 = Slit::new(
            0,
            PlaneVec::from_ratios(1, 4, 1, 1),
            PlaneVec::from_ratios(3, 4, 1, 1),
        );
        let s2 = Slit::new(
            0,
            PlaneVec::from_ratios(3, 4, 1, 1),
            PlaneVec::from_ratios(1, 4, 1, 1),
        );
        assert!(matches!(
            slit_glue(&t1, &s1, &t2, &s2),
            Err(BuilderError::SegmentsNotParallel)
        ));
    }

    #[test]
    fn hopf_surface_genus2_builds_with_constraint() {
        let spec = HopfSurfaceSpec::genus2_three_cylinders(
            &Real::from_int(6),
            &Real::from_int(2),
            &Real::from_int(3),
        );
        let hs = hopf_surface(&spec).unwrap();
        assert_eq!(hs.surface.genus(), 2);
        assert_eq!(hs.surface.validation_report().singular_ks(), vec![2, 2]);
        assert!(hs.ribbon.is_valid());
        assert_eq!(hs.ribbon.num_edges(), 4);
    }

    #[test]
    fn hopf_surface_rejects_bad_factors() {
        let spec = HopfSurfaceSpec::genus2_three_cylinders(
            &Real::from_int(2),
            &Real::from_int(2),
            &Real::from_int(3),
        );
        assert!(matches!(
            hopf_surface(&spec),
            Err(BuilderError::FactorConstraintViolated(_))
        ));
    }

    #[test]
    fn hopf_surface_single_loop_is_genus_one() {
        let hs = hopf_surface(&HopfSurfaceSpec::single_loop(&Real::from_int(2))).unwrap();
        assert_eq!(hs.surface.genus(), 1);
        assert!(hs.surface.singular_class_ids().is_empty());
    }
}
