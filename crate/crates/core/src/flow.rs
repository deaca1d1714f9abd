//! Directional geodesic tracing: leaves of the oriented foliations, their
//! closed and limit behaviour, separatrices and saddle connections.
//!
//! Crossing an edge multiplies lengths by the pairing's dilation factor but
//! never changes directions, so a leaf is traced by straight segments in the
//! successive charts with one ray-exit computation per crossing.

use crate::geom::{ray_exit, DirectionVec, GeomError, Location, PlaneVec, PosAffineMap, RayHit};
use crate::real::{Real, RealKey, EPS};
use crate::surface::{DilationSurface, EdgeRef, SurfacePoint};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FlowError {
    #[error("trace starts at a singular point")]
    StartsAtSingularity,
    #[error("start point is not on the surface")]
    StartOutsidePolygon,
    #[error("surface has no singular points")]
    NoSingularities,
    #[error("geometry error: {0}")]
    Geom(#[from] GeomError),
}

/// One edge crossing of a trace: the edge the leaf exited through, the edge
/// parameter of the exit point and the dilation factor picked up.
#[derive(Clone, Debug)]
pub struct Crossing {
    pub edge: EdgeRef,
    pub t: Real,
    pub factor: Real,
}

#[derive(Clone, Debug)]
pub enum TraceVerdict {
    /// The leaf ran into a vertex of the complex. `singular` distinguishes
    /// honest cone points from regular (k = 1) vertices of the presentation;
    /// both stop the trace.
    HitSingularity {
        class: usize,
        developed: PlaneVec,
        singular: bool,
    },
    /// Returned to the exact start point with total factor 1.
    ClosedFlat { period: usize },
    /// Returned to the exact start point with total factor ≠ 1.
    ClosedHyperbolic { period: usize },
    /// The crossing sequence became eventually periodic with per-period
    /// factor < 1: the leaf spirals onto a closed geodesic.
    LimitCycle {
        cycle: Vec<EdgeRef>,
        factor: Real,
        /// Edge parameter of the limit cycle on the first cycle edge;
        /// 0 or 1 means the cycle passes through a vertex.
        fixed_t: Real,
        hits_vertex: bool,
        /// The closed leaf itself, re-traced, when it avoids vertices.
        core: Option<Box<GeodesicTrace>>,
    },
    BudgetExceeded,
}

#[derive(Clone, Debug)]
pub struct GeodesicTrace {
    pub start: SurfacePoint,
    pub direction: DirectionVec,
    pub crossings: Vec<Crossing>,
    /// Product of the crossing factors.
    pub factor: Real,
    pub verdict: TraceVerdict,
    /// Straight segments (poly, from, to), one per chart visited.
    pub segments: Vec<(usize, PlaneVec, PlaneVec)>,
}

impl GeodesicTrace {
    pub fn is_closed(&self) -> bool {
        matches!(
            self.verdict,
            TraceVerdict::ClosedFlat { .. } | TraceVerdict::ClosedHyperbolic { .. }
        )
    }
}

#[derive(Clone, Copy, Debug)]
pub struct TraceBudget {
    pub max_crossings: usize,
}

impl Default for TraceBudget {
    fn default() -> Self {
        TraceBudget { max_crossings: 100_000 }
    }
}

impl TraceBudget {
    pub fn new(max_crossings: usize) -> Self {
        TraceBudget { max_crossings }
    }
}

/// Traces the leaf of the direction-`d` foliation through `p`.
pub fn trace(
    s: &DilationSurface,
    p: &SurfacePoint,
    d: &DirectionVec,
    budget: TraceBudget,
) -> Result<GeodesicTrace, FlowError> {
    match s.polygon(p.poly).locate(&p.pos) {
        Location::Interior | Location::OnEdge { .. } => {}
        Location::OnVertex(_) => return Err(FlowError::StartsAtSingularity),
        Location::Outside => return Err(FlowError::StartOutsidePolygon),
    }
    Ok(trace_raw(s, p, d, budget, false))
}

/// Tracing entry point that also accepts vertex starts (separatrices).
pub(crate) fn trace_raw(
    s: &DilationSurface,
    start: &SurfacePoint,
    d: &DirectionVec,
    budget: TraceBudget,
    start_is_vertex: bool,
) -> GeodesicTrace {
    trace_inner(s, start, d, budget, start_is_vertex, true)
}

fn trace_inner(
    s: &DilationSurface,
    start: &SurfacePoint,
    d: &DirectionVec,
    budget: TraceBudget,
    start_is_vertex: bool,
    detect_cycles: bool,
) -> GeodesicTrace {
    let mut crossings: Vec<Crossing> = Vec::new();
    let mut segments: Vec<(usize, PlaneVec, PlaneVec)> = Vec::new();
    let mut factor = Real::one();
    // Maps current chart coordinates back to the start chart.
    let mut dev = PosAffineMap::identity();
    let mut poly = start.poly;
    let mut cur = start.pos.clone();
    let start_canon = if start_is_vertex {
        start.clone()
    } else {
        s.canonicalize(start)
    };
    // Visit indices per exit edge, for limit-cycle detection.
    let mut visit_log: HashMap<EdgeRef, Vec<usize>> = HashMap::new();

    let finish = |crossings: Vec<Crossing>, segments, factor, verdict| GeodesicTrace {
        start: start.clone(),
        direction: d.clone(),
        crossings,
        factor,
        verdict,
        segments,
    };

    loop {
        if crossings.len() >= budget.max_crossings {
            return finish(crossings, segments, factor, TraceVerdict::BudgetExceeded);
        }
        let hit = match ray_exit(&s.polygon(poly).verts, &cur, d) {
            Ok(h) => h,
            Err(_) => {
                // Degenerate launch (outward boundary start); report as budget
                // exhaustion rather than guessing.
                return finish(crossings, segments, factor, TraceVerdict::BudgetExceeded);
            }
        };
        // Does this segment pass back through the start point?
        if poly == start_canon.poly && !crossings.is_empty() && !start_is_vertex {
            let rel = &start_canon.pos - &cur;
            let dv = d.vec();
            if rel.cross(dv).is_zero() && rel.dot(dv).is_positive() {
                let there = rel.norm2();
                let span = (hit.point() - &cur).norm2();
                if there < span {
                    let period = crossings.len();
                    let verdict = if factor.close_to(&Real::one(), EPS) {
                        TraceVerdict::ClosedFlat { period }
                    } else {
                        TraceVerdict::ClosedHyperbolic { period }
                    };
                    segments.push((poly, cur.clone(), start_canon.pos.clone()));
                    return finish(crossings, segments, factor, verdict);
                }
            }
        }
        segments.push((poly, cur.clone(), hit.point().clone()));
        match hit {
            RayHit::Vertex { vertex, point, .. } => {
                let class = s.class_id_of_corner(poly, vertex);
                let developed = &dev.apply(&point) - &start.pos;
                let singular = s.vertex_classes()[class].is_singular();
                return finish(
                    crossings,
                    segments,
                    factor,
                    TraceVerdict::HitSingularity { class, developed, singular },
                );
            }
            RayHit::Edge { edge, t, point, .. } => {
                let e = EdgeRef::new(poly, edge);
                let data = s.pair_data(e);
                factor = &factor * &data.dilation;
                crossings.push(Crossing {
                    edge: e,
                    t: t.clone(),
                    factor: data.dilation.clone(),
                });
                dev = dev.compose(&data.map.invert());
                cur = data.map.apply(&point);
                poly = data.partner.poly;

                // Exact return to an on-edge start.
                if !start_is_vertex {
                    let landed = s.canonicalize(&SurfacePoint::new(poly, cur.clone()));
                    if landed == start_canon {
                        let period = crossings.len();
                        let verdict = if factor.close_to(&Real::one(), EPS) {
                            TraceVerdict::ClosedFlat { period }
                        } else {
                            TraceVerdict::ClosedHyperbolic { period }
                        };
                        return finish(crossings, segments, factor, verdict);
                    }
                }

                // Limit-cycle check: three visits to the same edge with equal
                // spacing, identical crossing pattern, equal contracting
                // factor ratios and a consistent affine parameter law.
                let log = visit_log.entry(e).or_default();
                log.push(crossings.len() - 1);
                if !detect_cycles {
                    continue;
                }
                if let Some((cycle_start, period, f)) = detect_cycle(&crossings, log) {
                    let cyc: Vec<EdgeRef> = crossings[cycle_start..cycle_start + period]
                        .iter()
                        .map(|c| c.edge)
                        .collect();
                    let (t_i, t_j) = (
                        crossings[cycle_start].t.clone(),
                        crossings[cycle_start + period].t.clone(),
                    );
                    let c = &t_j - &(&f * &t_i);
                    let fixed_t = &c / &(&Real::one() - &f);
                    let hits_vertex = fixed_t.close_to(&Real::zero(), EPS)
                        || fixed_t.close_to(&Real::one(), EPS)
                        || fixed_t.is_negative()
                        || fixed_t > Real::one();
                    let core = if hits_vertex {
                        None
                    } else {
                        let e0 = crossings[cycle_start].edge;
                        let d0 = s.pair_data(e0);
                        let pt = s.polygon(e0.poly).edge_point(e0.edge, &fixed_t);
                        let core_start = SurfacePoint::new(d0.partner.poly, d0.map.apply(&pt));
                        let core_budget = TraceBudget::new(2 * period + 4);
                        // Closure check only: a core candidate must not spawn
                        // its own limit-cycle detection.
                        let core_trace = trace_inner(s, &core_start, d, core_budget, false, false);
                        if core_trace.is_closed() {
                            Some(Box::new(core_trace))
                        } else {
                            None
                        }
                    };
                    return finish(
                        crossings,
                        segments,
                        factor,
                        TraceVerdict::LimitCycle { cycle: cyc, factor: f, fixed_t, hits_vertex, core },
                    );
                }
            }
        }
    }
}

/// Looks for indices i < j < k = last, equally spaced visits of one edge,
/// with matching edge patterns and a consistent contracting affine return.
/// Returns (j, period, factor).
fn detect_cycle(crossings: &[Crossing], visits: &[usize]) -> Option<(usize, usize, Real)> {
    let m = visits.len();
    if m < 3 {
        return None;
    }
    let k = visits[m - 1];
    for jj in (1..m - 1).rev() {
        let j = visits[jj];
        let period = k - j;
        let i = match visits[..jj].iter().rev().find(|&&i| j - i == period) {
            Some(&i) => i,
            None => continue,
        };
        if crossings[i..j]
            .iter()
            .zip(crossings[j..k].iter())
            .any(|(a, b)| a.edge != b.edge)
        {
            continue;
        }
        // Per-period factor from the recorded crossing factors.
        let f1 = product(&crossings[i..j]);
        let f2 = product(&crossings[j..k]);
        if !f1.close_to(&f2, EPS) {
            continue;
        }
        if f1 >= Real::one() {
            continue;
        }
        // Affine law t_{n+1} = f t_n + c must hold across the three visits.
        let (t_i, t_j, t_k) = (&crossings[i].t, &crossings[j].t, &crossings[k].t);
        let c = t_j - &(&f1 * t_i);
        let predicted = &(&f1 * t_j) + &c;
        if !predicted.close_to(t_k, EPS) {
            continue;
        }
        return Some((j, period, f1));
    }
    None
}

fn product(cs: &[Crossing]) -> Real {
    let mut p = Real::one();
    for c in cs {
        p = &p * &c.factor;
    }
    p
}

/// One trace per outgoing prong of each singular point in direction `d`.
/// A cone point of angle 2πk emits exactly k prongs in each direction.
pub fn separatrices(s: &DilationSurface, d: &DirectionVec, budget: TraceBudget) -> Vec<GeodesicTrace> {
    let mut out = Vec::new();
    for class_id in s.singular_class_ids() {
        for &(p, v) in &s.vertex_classes()[class_id].corners {
            if s.direction_in_corner(p, v, d) {
                let start = SurfacePoint::new(p, s.polygon(p).verts[v].clone());
                out.push(trace_raw(s, &start, d, budget, true));
            }
        }
    }
    out
}

/// Number of prongs `separatrices` will emit for one singular class.
pub fn prong_count(s: &DilationSurface, class_id: usize, d: &DirectionVec) -> usize {
    s.vertex_classes()[class_id]
        .corners
        .iter()
        .filter(|&&(p, v)| s.direction_in_corner(p, v, d))
        .count()
}

/// An oriented geodesic segment joining two singular points.
#[derive(Clone, Debug)]
pub struct SaddleConnection {
    pub from_class: usize,
    pub to_class: usize,
    pub from_corner: (usize, usize),
    pub crossings: Vec<EdgeRef>,
    /// Direction in the source chart (equals the trace direction).
    pub direction: DirectionVec,
    /// Displacement developed in the source chart.
    pub displacement: PlaneVec,
    /// Displacement normalized to the root chart along the spanning tree.
    pub holonomy: PlaneVec,
}

#[derive(Clone, Copy, Debug)]
pub struct ConnectionBudget {
    pub max_crossings: usize,
    /// Bound on |displacement|² in the source chart.
    pub max_length2: i64,
}

impl Default for ConnectionBudget {
    fn default() -> Self {
        ConnectionBudget { max_crossings: 64, max_length2: 400 }
    }
}

/// Enumerates saddle connections by unfolding visibility cones from every
/// singular corner. Exact: windows are bounded by rational direction vectors
/// and every candidate segment is certified by the cone clipping itself.
///
/// Connections running exactly through a regular vertex of the presentation
/// are not enumerated; on the corpus every such geodesic is itself a chain of
/// edge connections.
pub fn saddle_connections(
    s: &DilationSurface,
    budget: ConnectionBudget,
) -> Result<Vec<SaddleConnection>, FlowError> {
    if s.singular_class_ids().is_empty() {
        return Err(FlowError::NoSingularities);
    }
    let max_len2 = Real::from_int(budget.max_length2);
    let mut out = Vec::new();
    for class_id in s.singular_class_ids() {
        for &(p, v) in &s.vertex_classes()[class_id].corners.clone() {
            let poly = s.polygon(p);
            let apex = poly.verts[v].clone();
            let lo = poly.edge_vec(v);
            let hi = -&poly.edge_vec(poly.prev_edge(v));
            let mut stack = vec![ConeFrame {
                poly: p,
                dev: PosAffineMap::identity(),
                lo,
                hi,
                crossings: Vec::new(),
            }];
            while let Some(frame) = stack.pop() {
                expand_cone(
                    s,
                    class_id,
                    (p, v),
                    &apex,
                    &frame,
                    &max_len2,
                    budget,
                    &mut out,
                    &mut stack,
                );
            }
        }
    }
    Ok(out)
}

struct ConeFrame {
    poly: usize,
    /// Maps the current chart into the apex chart.
    dev: PosAffineMap,
    /// Window directions (apex chart), counterclockwise from lo to hi,
    /// subtending an angle in (0, π].
    lo: PlaneVec,
    hi: PlaneVec,
    crossings: Vec<EdgeRef>,
}

fn in_window(lo: &PlaneVec, hi: &PlaneVec, v: &PlaneVec) -> bool {
    if v.is_zero() {
        return false;
    }
    // Window angle is ≤ π, so membership is two half-plane tests. The lo
    // boundary ray is included, the hi ray excluded (half-open tiling of the
    // cone around the vertex).
    let c_lo = lo.cross(v);
    if c_lo.is_negative() {
        return false;
    }
    if c_lo.is_zero() && !lo.dot(v).is_positive() {
        return false;
    }
    v.cross(hi).is_positive()
}

#[allow(clippy::too_many_arguments)]
fn expand_cone(
    s: &DilationSurface,
    from_class: usize,
    from_corner: (usize, usize),
    apex: &PlaneVec,
    frame: &ConeFrame,
    max_len2: &Real,
    budget: ConnectionBudget,
    out: &mut Vec<SaddleConnection>,
    stack: &mut Vec<ConeFrame>,
) {
    let poly = s.polygon(frame.poly);
    let n = poly.n();
    // Vertex targets inside the window.
    for vi in 0..n {
        let w = frame.dev.apply(&poly.verts[vi]);
        let vec = &w - apex;
        if !in_window(&frame.lo, &frame.hi, &vec) {
            continue;
        }
        if vec.norm2() > *max_len2 {
            continue;
        }
        let to_class = s.class_id_of_corner(frame.poly, vi);
        if !s.vertex_classes()[to_class].is_singular() {
            continue;
        }
        let dir = DirectionVec::new(vec.clone()).unwrap();
        let tree = s.tree_to_root(from_corner.0);
        out.push(SaddleConnection {
            from_class,
            to_class,
            from_corner,
            crossings: frame.crossings.clone(),
            direction: dir,
            holonomy: vec.scale(&tree.a),
            displacement: vec,
        });
    }
    if frame.crossings.len() >= budget.max_crossings {
        return;
    }
    // Recurse through the visible part of each edge.
    'edges: for ei in 0..n {
        let a = frame.dev.apply(poly.tail(ei));
        let b = frame.dev.apply(poly.head(ei));
        let va = &a - apex;
        let vb = &b - apex;
        // Skip edges through the apex or seen edge-on; the visible side has
        // the apex on the edge's interior side (cross(va, vb) > 0).
        if va.is_zero() || vb.is_zero() || !va.cross(&vb).is_positive() {
            continue;
        }
        // Clip the direction interval [va, vb] to the window [lo, hi].
        let mut s_lo = Real::zero();
        let mut s_hi = Real::one();
        let e = &vb - &va;
        for (nvec, keep_pos) in [(&frame.lo, true), (&frame.hi, false)] {
            // keep_pos: cross(nvec, va + s e) ≥ 0; else cross(va + s e, nvec) > 0.
            let c0 = if keep_pos { nvec.cross(&va) } else { va.cross(nvec) };
            let c1 = if keep_pos { nvec.cross(&e) } else { e.cross(nvec) };
            if c1.is_zero() {
                if c0.is_negative() {
                    continue 'edges;
                }
                continue;
            }
            let root = &(-&c0) / &c1;
            if c1.is_positive() {
                if root > s_lo {
                    s_lo = root;
                }
            } else if root < s_hi {
                s_hi = root;
            }
        }
        if s_lo >= s_hi {
            continue;
        }
        // Prune when even the nearest clipped point is beyond the length cap.
        let pa = &va + &e.scale(&s_lo);
        let pb = &va + &e.scale(&s_hi);
        if seg_min_dist2(&pa, &pb) > *max_len2 {
            continue;
        }
        let er = EdgeRef::new(frame.poly, ei);
        let data = s.pair_data(er);
        let mut crossings = frame.crossings.clone();
        crossings.push(er);
        stack.push(ConeFrame {
            poly: data.partner.poly,
            dev: frame.dev.compose(&data.map.invert()),
            lo: pa,
            hi: pb,
            crossings,
        });
    }
}

/// Minimal |·|² from the origin to the segment [a, b].
fn seg_min_dist2(a: &PlaneVec, b: &PlaneVec) -> Real {
    let e = b - a;
    let len2 = e.norm2();
    if len2.is_zero() {
        return a.norm2();
    }
    let t = &(-&a.dot(&e)) / &len2;
    let t = if t.is_negative() {
        Real::zero()
    } else if t > Real::one() {
        Real::one()
    } else {
        t
    };
    (a + &e.scale(&t)).norm2()
}

/// Classification of one oriented foliation direction.
#[derive(Clone, Debug)]
pub enum DirectionClass {
    /// Every sampled leaf is closed flat and every separatrix is a saddle
    /// connection.
    Periodic,
    /// Sampled leaves converge to closed hyperbolic geodesics away from the
    /// singular points.
    Hyperbolic { attractors: Vec<GeodesicTrace> },
    /// The attracting cycle passes through a singular vertex.
    SaddleAccumulation,
    Unresolved,
}

impl DirectionClass {
    pub fn label(&self) -> &'static str {
        match self {
            DirectionClass::Periodic => "periodic",
            DirectionClass::Hyperbolic { .. } => "hyperbolic",
            DirectionClass::SaddleAccumulation => "saddle",
            DirectionClass::Unresolved => "unresolved",
        }
    }

    /// Factor of the attracting cycle, when one exists.
    pub fn factor(&self) -> Option<Real> {
        match self {
            DirectionClass::Hyperbolic { attractors } => {
                attractors.first().map(|t| t.factor.clone())
            }
            _ => None,
        }
    }
}

/// Classifies the direction-`d` foliation by tracing a deterministic set of
/// interior sample points plus all separatrices.
pub fn classify_direction(
    s: &DilationSurface,
    d: &DirectionVec,
    budget: TraceBudget,
) -> DirectionClass {
    let mut hyperbolic: Vec<GeodesicTrace> = Vec::new();
    let mut saddle = false;
    let mut unresolved = false;
    let mut all_flat = true;
    let mut seen_cycles: Vec<Vec<EdgeRef>> = Vec::new();

    for pi in 0..s.polygons().len() {
        let mut sampled = false;
        for candidate in sample_points(s, pi) {
            let tr = trace_raw(s, &SurfacePoint::new(pi, candidate), d, budget, false);
            match &tr.verdict {
                TraceVerdict::HitSingularity { .. } => continue, // singular leaf; resample
                TraceVerdict::ClosedFlat { .. } => {
                    sampled = true;
                }
                TraceVerdict::ClosedHyperbolic { .. } => {
                    all_flat = false;
                    sampled = true;
                    push_cycle(&mut hyperbolic, &mut seen_cycles, tr.clone());
                }
                TraceVerdict::LimitCycle { hits_vertex, core, .. } => {
                    all_flat = false;
                    sampled = true;
                    if *hits_vertex {
                        saddle = true;
                    } else if let Some(core) = core {
                        push_cycle(&mut hyperbolic, &mut seen_cycles, (**core).clone());
                    } else {
                        saddle = true;
                    }
                }
                TraceVerdict::BudgetExceeded => {
                    all_flat = false;
                    sampled = true;
                    unresolved = true;
                }
            }
            if sampled {
                break;
            }
        }
        if !sampled {
            unresolved = true;
        }
    }

    if !hyperbolic.is_empty() {
        return DirectionClass::Hyperbolic { attractors: hyperbolic };
    }
    if saddle {
        return DirectionClass::SaddleAccumulation;
    }
    if unresolved || !all_flat {
        return DirectionClass::Unresolved;
    }
    // All samples flat; confirm the separatrices connect singular points.
    let seps = separatrices(s, d, budget);
    if seps
        .iter()
        .all(|t| matches!(t.verdict, TraceVerdict::HitSingularity { .. }))
    {
        DirectionClass::Periodic
    } else {
        DirectionClass::Unresolved
    }
}

fn push_cycle(acc: &mut Vec<GeodesicTrace>, seen: &mut Vec<Vec<EdgeRef>>, tr: GeodesicTrace) {
    let key = cycle_key(&tr.crossings.iter().map(|c| c.edge).collect::<Vec<_>>());
    if !seen.contains(&key) {
        seen.push(key);
        acc.push(tr);
    }
}

/// Canonical form of a crossing cycle: least rotation of the sequence or its
/// reversal.
pub fn cycle_key(edges: &[EdgeRef]) -> Vec<EdgeRef> {
    if edges.is_empty() {
        return Vec::new();
    }
    let mut best: Option<Vec<EdgeRef>> = None;
    let n = edges.len();
    for r in 0..n {
        let rot: Vec<EdgeRef> = (0..n).map(|i| edges[(r + i) % n]).collect();
        let mut rev = rot.clone();
        rev.reverse();
        for candidate in [rot, rev] {
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate);
            }
        }
    }
    best.unwrap()
}

/// Deterministic interior sample points for a polygon.
fn sample_points(s: &DilationSurface, pi: usize) -> Vec<PlaneVec> {
    let poly = s.polygon(pi);
    let c = poly.centroid();
    let mut pts = vec![c.clone()];
    let fractions = [
        Real::ratio(3, 7),
        Real::ratio(5, 11),
        Real::ratio(2, 9),
        Real::ratio(7, 13),
    ];
    for (i, f) in fractions.iter().enumerate() {
        let v = &poly.verts[i % poly.n()];
        pts.push(&c + &(v - &c).scale(f));
    }
    pts
}

/// Quantized parameter key used by scan consumers for deduplication.
pub fn t_key(t: &Real) -> RealKey {
    t.key()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;
    use crate::geom::PlaneVec;
    use crate::surface::{DilationSurface, EdgeRef, Polygon};

    fn square_torus() -> DilationSurface {
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
    fn horizontal_leaf_on_square_torus_closes_flat() {
        let s = square_torus();
        let p = SurfacePoint::new(0, PlaneVec::from_ratios(1, 2, 1, 2));
        let tr = trace(&s, &p, &DirectionVec::from_ints(1, 0), TraceBudget::default()).unwrap();
        match tr.verdict {
            TraceVerdict::ClosedFlat { period } => assert_eq!(period, 1),
            other => panic!("expected flat closure, got {other:?}"),
        }
        assert_eq!(tr.factor, Real::one());
    }

    #[test]
    fn slope_two_thirds_closes_after_five_crossings() {
        let s = square_torus();
        let p = SurfacePoint::new(0, PlaneVec::from_ratios(1, 3, 1, 5));
        let tr = trace(&s, &p, &DirectionVec::from_ints(3, 2), TraceBudget::default()).unwrap();
        match tr.verdict {
            TraceVerdict::ClosedFlat { period } => assert_eq!(period, 5),
            other => panic!("expected flat closure, got {other:?}"),
        }
    }

    #[test]
    fn diagonal_from_center_hits_corner() {
        let s = square_torus();
        let p = SurfacePoint::new(0, PlaneVec::from_ratios(1, 2, 1, 2));
        let tr = trace(&s, &p, &DirectionVec::from_ints(1, 1), TraceBudget::default()).unwrap();
        match tr.verdict {
            TraceVerdict::HitSingularity { singular, .. } => assert!(!singular),
            other => panic!("expected vertex hit, got {other:?}"),
        }
    }

    #[test]
    fn square_torus_has_no_saddle_connections() {
        let s = square_torus();
        assert!(matches!(
            saddle_connections(&s, ConnectionBudget::default()),
            Err(FlowError::NoSingularities)
        ));
    }

    #[test]
    fn reverse_trace_inverts_factors() {
        let s = builders::two_chamber();
        let p = SurfacePoint::new(0, PlaneVec::from_ratios(2, 7, 3, 7));
        let d = DirectionVec::from_ints(4, 1);
        let fwd = trace(&s, &p, &d, TraceBudget::new(12)).unwrap();
        assert!(!fwd.crossings.is_empty());
        // Trace backwards from a point on the last segment and check the
        // factors invert crossing by crossing.
        let (poly, a, b) = fwd.segments.last().unwrap().clone();
        let mid = &a + &(&b - &a).scale(&Real::ratio(1, 2));
        let back = trace(
            &s,
            &SurfacePoint::new(poly, mid),
            &d.reversed(),
            TraceBudget::new(fwd.crossings.len()),
        )
        .unwrap();
        // The backward trace starts on the segment after the last forward
        // crossing, so it first re-crosses the next-to-last one.
        for (f, bk) in fwd.crossings.iter().rev().skip(1).zip(back.crossings.iter()) {
            let e_expect = s.partner(f.edge);
            assert_eq!(bk.edge, e_expect);
            assert_eq!(&bk.factor * &f.factor, Real::one());
        }
    }
}
