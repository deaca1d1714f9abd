//! Delaunay machinery for dilation surfaces: maximal immersed disks and the
//! canonical decomposition into convex cells whose vertices are the singular
//! points, gated on the no-wide-cylinder property.
//!
//! Transition maps of a dilation surface take circles to circles, so "empty
//! circumdisk" is chart-independent and the classical Delaunay theory
//! applies verbatim. The decomposition is computed by flipping a geodesic
//! triangulation into Delaunay position and merging exactly co-circular
//! neighbours; every resulting cell is then re-certified against the
//! definition by growing the maximal immersed disk at its circumcenter with
//! the independent unfolding prober.

use crate::cylinder::{property_v, PropertyV};
use crate::flow::TraceBudget;
use crate::geom::{DirectionVec, PlaneVec, PosAffineMap};
use crate::real::{Real, RealKey, EPS};
use crate::surface::{DilationSurface, SurfacePoint};
use std::collections::{BTreeSet, BinaryHeap, HashMap, VecDeque};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DelaunayError {
    #[error("surface carries an affine cylinder of angle ≥ π (direction {direction}, angle {angle}, factor {factor})")]
    PropertyVViolated {
        direction: DirectionVec,
        angle: f64,
        factor: Real,
    },
    #[error("disk growth exhausted its chart budget without closing")]
    NonExtendingDisk,
    #[error("surface has no singular points")]
    NoSingularPoints,
    #[error("flip budget exceeded")]
    FlipBudgetExceeded,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

/// The largest immersed disk centered at a point: squared radius and the
/// developed positions of the singular contacts on its boundary.
#[derive(Clone, Debug)]
pub struct DiskProbe {
    pub center: SurfacePoint,
    pub radius2: Real,
    pub contacts: Vec<PlaneVec>,
}

impl DiskProbe {
    pub fn nu(&self) -> usize {
        self.contacts.len()
    }
}

fn dist2(a: &PlaneVec, b: &PlaneVec) -> Real {
    (a - b).norm2()
}

/// Minimal squared distance from p to the closed segment [a, b].
fn seg_dist2(p: &PlaneVec, a: &PlaneVec, b: &PlaneVec) -> Real {
    let e = b - a;
    let len2 = e.norm2();
    if len2.is_zero() {
        return dist2(p, a);
    }
    let t = &(p - a).dot(&e) / &len2;
    let t = if t.is_negative() {
        Real::zero()
    } else if t > Real::one() {
        Real::one()
    } else {
        t
    };
    dist2(p, &(a + &e.scale(&t)))
}

fn map_key(m: &PosAffineMap) -> (RealKey, RealKey, RealKey) {
    (m.a.key(), m.b.x.key(), m.b.y.key())
}

struct HeapEntry {
    priority: f64,
    poly: usize,
    dev: PosAffineMap,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.priority == other.priority
    }
}
impl Eq for HeapEntry {}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Min-heap on developed distance.
        other
            .priority
            .partial_cmp(&self.priority)
            .unwrap_or(std::cmp::Ordering::Equal)
    }
}

/// Grows the maximal immersed disk at x by shortest-first chart unfolding.
///
/// Charts are developed into x's chart and expanded in order of their
/// distance from x; the radius is the least developed distance to a singular
/// vertex image, and the contacts are all singular images at exactly that
/// distance. Exact in rational mode.
pub fn max_disk(
    s: &DilationSurface,
    x: &SurfacePoint,
    chart_budget: usize,
) -> Result<DiskProbe, DelaunayError> {
    if s.singular_class_ids().is_empty() {
        return Err(DelaunayError::NoSingularPoints);
    }
    let mut best_r2: Option<Real> = None;
    let mut contacts: Vec<PlaneVec> = Vec::new();
    let mut seen: HashMap<(usize, (RealKey, RealKey, RealKey)), ()> = HashMap::new();
    let mut heap: BinaryHeap<HeapEntry> = BinaryHeap::new();
    heap.push(HeapEntry {
        priority: 0.0,
        poly: x.poly,
        dev: PosAffineMap::identity(),
    });
    let mut visited = 0usize;

    while let Some(entry) = heap.pop() {
        let key = (entry.poly, map_key(&entry.dev));
        if seen.insert(key, ()).is_some() {
            continue;
        }
        visited += 1;
        if visited > chart_budget {
            return Err(DelaunayError::NonExtendingDisk);
        }
        if let Some(r2) = &best_r2 {
            // Everything still on the heap is at least this far away.
            if entry.priority * entry.priority > r2.to_f64() + EPS {
                break;
            }
        }
        let poly = s.polygon(entry.poly);
        // Singular vertex images.
        for (vi, v) in poly.verts.iter().enumerate() {
            let class = s.class_id_of_corner(entry.poly, vi);
            if !s.vertex_classes()[class].is_singular() {
                continue;
            }
            let w = entry.dev.apply(v);
            let d2 = dist2(&w, &x.pos);
            match &best_r2 {
                None => {
                    best_r2 = Some(d2);
                    contacts = vec![w];
                }
                Some(r2) => {
                    if d2 < *r2 {
                        best_r2 = Some(d2);
                        contacts = vec![w];
                    } else if d2.close_to(r2, EPS) && !contacts.iter().any(|c| c.close_to(&w, EPS)) {
                        contacts.push(w);
                    }
                }
            }
        }
        // Expand across edges that come closer than the current radius.
        for ei in 0..poly.n() {
            let a = entry.dev.apply(poly.tail(ei));
            let b = entry.dev.apply(poly.head(ei));
            let d2 = seg_dist2(&x.pos, &a, &b);
            if let Some(r2) = &best_r2 {
                if d2 >= *r2 {
                    continue;
                }
            }
            let er = crate::surface::EdgeRef::new(entry.poly, ei);
            let data = s.pair_data(er);
            let dev = entry.dev.compose(&data.map.invert());
            heap.push(HeapEntry {
                priority: d2.to_f64().max(0.0).sqrt(),
                poly: data.partner.poly,
                dev,
            });
        }
    }
    let radius2 = best_r2.ok_or(DelaunayError::NonExtendingDisk)?;
    // Deterministic contact order.
    contacts.sort_by(|p, q| {
        p.x.partial_cmp(&q.x)
            .unwrap()
            .then(p.y.partial_cmp(&q.y).unwrap())
    });
    Ok(DiskProbe {
        center: x.clone(),
        radius2,
        contacts,
    })
}

/// Sign of the orientation of (a, b, c): positive when counterclockwise.
fn orient(a: &PlaneVec, b: &PlaneVec, c: &PlaneVec) -> std::cmp::Ordering {
    (b - a).cross(&(c - a)).sign()
}

/// Positive when d lies strictly inside the circumcircle of the ccw triangle
/// (a, b, c); zero when exactly on it.
fn incircle(a: &PlaneVec, b: &PlaneVec, c: &PlaneVec, d: &PlaneVec) -> std::cmp::Ordering {
    let col = |p: &PlaneVec| -> (Real, Real, Real) {
        let dx = &p.x - &d.x;
        let dy = &p.y - &d.y;
        let q = &(&dx * &dx) + &(&dy * &dy);
        (dx, dy, q)
    };
    let (ax, ay, aq) = col(a);
    let (bx, by, bq) = col(b);
    let (cx, cy, cq) = col(c);
    let m1 = &(&by * &cq) - &(&bq * &cy);
    let m2 = &(&bx * &cq) - &(&bq * &cx);
    let m3 = &(&bx * &cy) - &(&by * &cx);
    let det = &(&(&ax * &m1) - &(&ay * &m2)) + &(&aq * &m3);
    det.sign()
}

/// Circumcenter of three non-collinear rational points (rational again).
fn circumcenter(a: &PlaneVec, b: &PlaneVec, c: &PlaneVec) -> Option<PlaneVec> {
    let two = Real::from_int(2);
    let d = &two
        * &(&(&a.x * &(&b.y - &c.y)) + &(&(&b.x * &(&c.y - &a.y)) + &(&c.x * &(&a.y - &b.y))));
    if d.is_zero() {
        return None;
    }
    let na = a.norm2();
    let nb = b.norm2();
    let nc = c.norm2();
    let ux = &(&(&na * &(&b.y - &c.y)) + &(&(&nb * &(&c.y - &a.y)) + &(&nc * &(&a.y - &b.y)))) / &d;
    let uy = &(&(&na * &(&c.x - &b.x)) + &(&(&nb * &(&a.x - &c.x)) + &(&nc * &(&b.x - &a.x)))) / &d;
    Some(PlaneVec::new(ux, uy))
}

type Slot = (usize, u8);

#[derive(Clone, Debug)]
struct Tri {
    verts: [PlaneVec; 3],
    class: [usize; 3],
    /// An interior point of the triangle as a surface point together with
    /// its chart coordinates: the unambiguous bridge between the triangle
    /// chart and the surface.
    anchor_sp: SurfacePoint,
    anchor_pt: PlaneVec,
}

fn tri_centroid(verts: &[PlaneVec; 3]) -> PlaneVec {
    (&(&verts[0] + &verts[1]) + &verts[2]).scale(&Real::ratio(1, 3))
}

impl Tri {
    fn tail(&self, e: u8) -> &PlaneVec {
        &self.verts[e as usize]
    }
    fn head(&self, e: u8) -> &PlaneVec {
        &self.verts[((e + 1) % 3) as usize]
    }
    fn opposite(&self, e: u8) -> &PlaneVec {
        &self.verts[((e + 2) % 3) as usize]
    }
}

/// A surface triangulation with per-triangle charts; edges are glued by
/// dilation maps exactly like surface polygons.
struct TriComplex {
    tris: Vec<Tri>,
    alive: Vec<bool>,
    partner: HashMap<Slot, Slot>,
    /// Chart transition to the partner triangle's chart.
    maps: HashMap<Slot, PosAffineMap>,
}

impl TriComplex {
    fn pair(&mut self, a: Slot, b: Slot, map_ab: PosAffineMap) {
        self.maps.insert(b, map_ab.invert());
        self.maps.insert(a, map_ab);
        self.partner.insert(a, b);
        self.partner.insert(b, a);
    }

    /// Fan-triangulates every polygon of the surface from a vertex that sees
    /// all boundary edges non-degenerately.
    fn from_surface(s: &DilationSurface) -> Result<TriComplex, DelaunayError> {
        let mut cx = TriComplex {
            tris: Vec::new(),
            alive: Vec::new(),
            partner: HashMap::new(),
            maps: HashMap::new(),
        };
        // edge_slots[poly][edge] = boundary slot carrying that polygon edge.
        let mut edge_slots: Vec<Vec<Option<Slot>>> = Vec::new();
        for (pi, poly) in s.polygons().iter().enumerate() {
            let n = poly.n();
            let mut slots = vec![None; n];
            if n == 3 {
                let t = cx.tris.len();
                let verts = [
                    poly.verts[0].clone(),
                    poly.verts[1].clone(),
                    poly.verts[2].clone(),
                ];
                let c = tri_centroid(&verts);
                cx.tris.push(Tri {
                    verts,
                    class: [
                        s.class_id_of_corner(pi, 0),
                        s.class_id_of_corner(pi, 1),
                        s.class_id_of_corner(pi, 2),
                    ],
                    anchor_sp: SurfacePoint::new(pi, c.clone()),
                    anchor_pt: c,
                });
                cx.alive.push(true);
                for e in 0..3u8 {
                    slots[e as usize] = Some((t, e));
                }
            } else {
                let apex = (0..n)
                    .find(|&a| {
                        (0..n).all(|i| {
                            let j = (i + 1) % n;
                            i == a
                                || j == a
                                || orient(&poly.verts[a], &poly.verts[i], &poly.verts[j])
                                    == std::cmp::Ordering::Greater
                        })
                    })
                    .ok_or_else(|| {
                        DelaunayError::Inconsistent(format!("no fan apex in polygon {pi}"))
                    })?;
                let mut prev_slot: Option<Slot> = None;
                for w in 1..n - 1 {
                    let i = (apex + w) % n;
                    let j = (i + 1) % n;
                    let t = cx.tris.len();
                    let verts = [
                        poly.verts[apex].clone(),
                        poly.verts[i].clone(),
                        poly.verts[j].clone(),
                    ];
                    let c = tri_centroid(&verts);
                    cx.tris.push(Tri {
                        verts,
                        class: [
                            s.class_id_of_corner(pi, apex),
                            s.class_id_of_corner(pi, i),
                            s.class_id_of_corner(pi, j),
                        ],
                        anchor_sp: SurfacePoint::new(pi, c.clone()),
                        anchor_pt: c,
                    });
                    cx.alive.push(true);
                    slots[i] = Some((t, 1));
                    // The apex-incident boundary edges belong to the first
                    // and last fan triangles; interior fan edges glue to the
                    // previous triangle within the same chart.
                    match prev_slot {
                        None => slots[apex] = Some((t, 0)),
                        Some(prev) => cx.pair((t, 0), prev, PosAffineMap::identity()),
                    }
                    if w == n - 2 {
                        slots[j] = Some((t, 2));
                    }
                    prev_slot = Some((t, 2));
                }
            }
            edge_slots.push(slots);
        }
        // Boundary gluings from the surface pairing.
        for &(a, b) in s.pairs() {
            let sa = edge_slots[a.poly][a.edge]
                .ok_or_else(|| DelaunayError::Inconsistent("unassigned edge slot".into()))?;
            let sb = edge_slots[b.poly][b.edge]
                .ok_or_else(|| DelaunayError::Inconsistent("unassigned edge slot".into()))?;
            cx.pair(sa, sb, s.pair_data(a).map.clone());
        }
        Ok(cx)
    }

    /// Developed image of the partner triangle's opposite vertex in this
    /// triangle's chart, with its class.
    fn developed_opposite(&self, slot: Slot) -> (PlaneVec, usize) {
        let p = self.partner[&slot];
        let back = &self.maps[&p]; // partner chart -> this chart
        let tri = &self.tris[p.0];
        (
            back.apply(tri.opposite(p.1)),
            tri.class[((p.1 + 2) % 3) as usize],
        )
    }

    /// Flips the edge at `slot` inside its developed quad. The two incident
    /// triangles are replaced; the four outer gluings are rewired.
    fn flip(&mut self, s: &DilationSurface, slot: Slot) -> Result<(), DelaunayError> {
        let (t1, e1) = slot;
        let (t2, e2) = self.partner[&slot];
        let to_here = self.maps[&(t2, e2)].clone(); // t2 chart -> t1 chart
        let v0 = self.tris[t1].tail(e1).clone();
        let v1 = self.tris[t1].head(e1).clone();
        let w1 = self.tris[t1].opposite(e1).clone();
        let w2 = to_here.apply(self.tris[t2].opposite(e2));
        let c_v0 = self.tris[t1].class[e1 as usize];
        let c_v1 = self.tris[t1].class[((e1 + 1) % 3) as usize];
        let c_w1 = self.tris[t1].class[((e1 + 2) % 3) as usize];
        let c_w2 = self.tris[t2].class[((e2 + 2) % 3) as usize];

        // Outer slots in quad order with the adjustment of their chart into
        // t1's chart.
        let outer = [
            (t1, (e1 + 2) % 3), // w1 -> v0
            (t2, (e2 + 1) % 3), // v0 -> w2 (t2 chart)
            (t2, (e2 + 2) % 3), // w2 -> v1 (t2 chart)
            (t1, (e1 + 1) % 3), // v1 -> w1
        ];
        let adj = [
            PosAffineMap::identity(),
            to_here.clone(),
            to_here.clone(),
            PosAffineMap::identity(),
        ];
        let saved: Vec<(Slot, PosAffineMap)> = outer
            .iter()
            .map(|s| (self.partner[s], self.maps[s].clone()))
            .collect();

        // New triangles reuse the indices t1 and t2, both in t1's old chart.
        // Anchors: walk from the old t1 anchor through the quad chart.
        let old_anchor_sp = self.tris[t1].anchor_sp.clone();
        let old_anchor_pt = self.tris[t1].anchor_pt.clone();
        let verts_a = [w1.clone(), v0.clone(), w2.clone()];
        let verts_b = [w2.clone(), v1.clone(), w1.clone()];
        let ca = tri_centroid(&verts_a);
        let cb = tri_centroid(&verts_b);
        let sp_a = walk_from(s, &old_anchor_sp, &old_anchor_pt, &ca)?;
        let sp_b = walk_from(s, &old_anchor_sp, &old_anchor_pt, &cb)?;
        self.tris[t1] = Tri {
            verts: verts_a,
            class: [c_w1, c_v0, c_w2],
            anchor_sp: sp_a,
            anchor_pt: ca,
        };
        self.tris[t2] = Tri {
            verts: verts_b,
            class: [c_w2, c_v1, c_w1],
            anchor_sp: sp_b,
            anchor_pt: cb,
        };
        // New outer slots matching `outer` order: w1->v0, v0->w2, w2->v1, v1->w1.
        let new_slots: [Slot; 4] = [(t1, 0), (t1, 1), (t2, 0), (t2, 1)];
        for s in outer.iter().chain([&(t1, e1), &(t2, e2)]) {
            self.partner.remove(s);
            self.maps.remove(s);
        }
        // New diagonal w2 -> w1 shares the chart.
        self.pair((t1, 2), (t2, 2), PosAffineMap::identity());

        let pos_of = |s: Slot| outer.iter().position(|&o| o == s);
        let mut done = [false; 4];
        for i in 0..4 {
            if done[i] {
                continue;
            }
            let (old_partner, old_map) = &saved[i];
            if let Some(j) = pos_of(*old_partner) {
                // The quad was glued to itself along these two sides.
                let m = adj[j].compose(&old_map.compose(&adj[i].invert()));
                self.pair(new_slots[i], new_slots[j], m);
                done[i] = true;
                done[j] = true;
            } else {
                let m = old_map.compose(&adj[i].invert());
                self.pair(new_slots[i], *old_partner, m);
                done[i] = true;
            }
        }
        Ok(())
    }

    /// Corners of the triangle star around the vertex at corner (t, c), in
    /// walk order. Each entry is (tri, corner index at the vertex).
    fn star(&self, t0: usize, c0: u8) -> Vec<(usize, u8)> {
        let mut out = Vec::new();
        let (mut t, mut c) = (t0, c0);
        loop {
            out.push((t, c));
            let in_edge = (t, (c + 2) % 3);
            let (t2, e2) = self.partner[&in_edge];
            (t, c) = (t2, e2);
            if (t, c) == (t0, c0) {
                break;
            }
        }
        out
    }

    /// Whether the developed quad at `slot` is strictly convex (flip legal).
    fn flip_convex(&self, slot: Slot) -> bool {
        let (t1, e1) = slot;
        let (t2, _) = self.partner[&slot];
        if t2 == t1 {
            return false;
        }
        let (w2, _) = self.developed_opposite(slot);
        let v0 = self.tris[t1].tail(e1);
        let v1 = self.tris[t1].head(e1);
        let w1 = self.tris[t1].opposite(e1);
        use std::cmp::Ordering::Greater;
        orient(w1, v0, &w2) == Greater
            && orient(v0, &w2, v1) == Greater
            && orient(&w2, v1, w1) == Greater
            && orient(v1, w1, v0) == Greater
    }

    /// Removes every regular (k = 1) vertex from the complex: its star is
    /// flipped down to degree three and replaced by the single outer
    /// triangle. Geodesic triangulations carry only singular vertices.
    fn remove_regular_vertices(&mut self, s: &DilationSurface) -> Result<(), DelaunayError> {
        'outer: loop {
            let mut target: Option<(usize, u8)> = None;
            for t in 0..self.tris.len() {
                if !self.alive[t] {
                    continue;
                }
                for c in 0..3u8 {
                    if !s.vertex_classes()[self.tris[t].class[c as usize]].is_singular() {
                        target = Some((t, c));
                        break;
                    }
                }
                if target.is_some() {
                    break;
                }
            }
            let Some((t0, c0)) = target else {
                return Ok(());
            };
            // Reduce the star to degree three.
            let mut guard = 0usize;
            loop {
                guard += 1;
                if guard > 1000 {
                    return Err(DelaunayError::Inconsistent(
                        "could not reduce a regular vertex to degree three".into(),
                    ));
                }
                let star = self.star(t0, c0);
                if star.len() <= 3 {
                    if star.len() < 3 {
                        return Err(DelaunayError::Inconsistent(
                            "regular vertex of degree < 3".into(),
                        ));
                    }
                    self.delete_degree3_vertex(s, &star)?;
                    continue 'outer;
                }
                let flip_slot = star
                    .iter()
                    .map(|&(t, c)| (t, (c + 2) % 3))
                    .find(|&slot| self.flip_convex(slot))
                    .ok_or_else(|| {
                        DelaunayError::Inconsistent("no flippable edge at a regular vertex".into())
                    })?;
                // Flipping an incident edge lowers the vertex degree by one,
                // but may rename the tracking corner; re-find it afterwards.
                self.flip(s, flip_slot)?;
                if !(0..3u8).any(|c| {
                    self.alive[t0]
                        && !s.vertex_classes()[self.tris[t0].class[c as usize]].is_singular()
                }) {
                    continue 'outer;
                }
            }
        }
    }

    /// Replaces the three triangles around a degree-three vertex by their
    /// outer triangle.
    fn delete_degree3_vertex(&mut self, s: &DilationSurface, star: &[(usize, u8)]) -> Result<(), DelaunayError> {
        let [(t1, c1), (t2, c2), (t3, c3)] = [star[0], star[1], star[2]];
        if t1 == t2 || t2 == t3 || t1 == t3 {
            return Err(DelaunayError::Inconsistent(
                "degree-three star with repeated triangles".into(),
            ));
        }
        // Chart adjustments into t1's chart, following the star walk.
        let m21 = self.maps[&(t2, c2.rem_euclid(3))].clone();
        let _ = &m21;
        // The walk crossed in-edge of (t1,c1) into (t2,c2): that slot's map
        // goes t1 -> t2; we need the inverses composed along the walk.
        let m_1to2 = self.maps[&(t1, (c1 + 2) % 3)].clone();
        let m_2to1 = m_1to2.invert();
        let m_2to3 = self.maps[&(t2, (c2 + 2) % 3)].clone();
        let m_3to1 = m_2to3.invert().compose(&m_2to1.invert()).invert();
        // m_3to1: chart t3 -> t1 = m_2to1 ∘ (t3 -> t2).
        let m_3to2 = m_2to3.invert();
        let m_3to1 = m_2to1.compose(&m_3to2);
        // Outer chain vertices in t1's chart.
        let p1 = self.tris[t1].verts[((c1 + 1) % 3) as usize].clone();
        let q1 = self.tris[t1].verts[((c1 + 2) % 3) as usize].clone();
        let q2 = m_2to1.apply(&self.tris[t2].verts[((c2 + 2) % 3) as usize]);
        let cl_p1 = self.tris[t1].class[((c1 + 1) % 3) as usize];
        let cl_q1 = self.tris[t1].class[((c1 + 2) % 3) as usize];
        let cl_q2 = self.tris[t2].class[((c2 + 2) % 3) as usize];
        // Sanity: t3's outer edge closes the chain back to p1.
        let q3 = m_3to1.apply(&self.tris[t3].verts[((c3 + 2) % 3) as usize]);
        let p3 = m_3to1.apply(&self.tris[t3].verts[((c3 + 1) % 3) as usize]);
        if !q3.close_to(&p1, EPS) && q3 != p1 {
            return Err(DelaunayError::Inconsistent("degree-three star does not close".into()));
        }
        if !p3.close_to(&q2, EPS) && p3 != q2 {
            return Err(DelaunayError::Inconsistent("degree-three chain mismatch".into()));
        }

        // Outer slots and their chart adjustments into t1.
        let outer = [
            (t1, (c1 + 1) % 3),
            (t2, (c2 + 1) % 3),
            (t3, (c3 + 1) % 3),
        ];
        let adj = [PosAffineMap::identity(), m_2to1.clone(), m_3to1.clone()];
        let saved: Vec<(Slot, PosAffineMap)> = outer
            .iter()
            .map(|sl| (self.partner[sl], self.maps[sl].clone()))
            .collect();
        // Drop all slots of the three triangles.
        for &(t, _) in star {
            for e in 0..3u8 {
                if let Some(p) = self.partner.remove(&(t, e)) {
                    self.partner.remove(&p);
                    self.maps.remove(&p);
                }
                self.maps.remove(&(t, e));
            }
        }
        let anchor_sp = self.tris[t1].anchor_sp.clone();
        let anchor_pt = self.tris[t1].anchor_pt.clone();
        self.tris[t1] = Tri {
            verts: [p1, q1, q2],
            class: [cl_p1, cl_q1, cl_q2],
            anchor_sp,
            anchor_pt,
        };
        self.alive[t2] = false;
        self.alive[t3] = false;
        let new_slots: [Slot; 3] = [(t1, 0), (t1, 1), (t1, 2)];
        let pos_of = |sl: Slot| outer.iter().position(|&o| o == sl);
        let mut done = [false; 3];
        for i in 0..3 {
            if done[i] {
                continue;
            }
            let (old_partner, old_map) = &saved[i];
            if let Some(j) = pos_of(*old_partner) {
                let m = adj[j].compose(&old_map.compose(&adj[i].invert()));
                self.pair(new_slots[i], new_slots[j], m);
                done[i] = true;
                done[j] = true;
            } else {
                let m = old_map.compose(&adj[i].invert());
                self.pair(new_slots[i], *old_partner, m);
                done[i] = true;
            }
        }
        let _ = s;
        Ok(())
    }

    /// Certified global pass: probes every triangle's circumdisk with the
    /// exact max-disk grower and repairs violations by flipping the edge
    /// facing the intruding vertex image. Local flips alone do not imply the
    /// global empty-disk property on dilation surfaces (a two-crossing
    /// vertex image can intrude into a circumdisk all one-crossing tests
    /// miss), so the definition itself drives this loop.
    fn certify_and_repair(
        &mut self,
        s: &DilationSurface,
        chart_budget: usize,
        repair_budget: usize,
    ) -> Result<(), DelaunayError> {
        let mut repairs = 0usize;
        're: loop {
            let mut tris: Vec<usize> = (0..self.tris.len()).filter(|&t| self.alive[t]).collect();
            tris.sort();
            for t in tris {
                let tri = &self.tris[t];
                let Some(center) = circumcenter(&tri.verts[0], &tri.verts[1], &tri.verts[2]) else {
                    return Err(DelaunayError::Inconsistent("degenerate triangle".into()));
                };
                let r2 = dist2(&center, &tri.verts[0]);
                let (sp, dev) = walk_from_with_dev(s, &tri.anchor_sp, &tri.anchor_pt, &center)?;
                let probe = max_disk(s, &sp, chart_budget)?;
                if probe.radius2.close_to(&r2, EPS) || probe.radius2 > r2 {
                    continue;
                }
                // Violation: some vertex image sits strictly inside the
                // circumdisk. Develop it into the triangle chart and flip
                // the edge its direction exits through.
                repairs += 1;
                if repairs > repair_budget {
                    return Err(DelaunayError::FlipBudgetExceeded);
                }
                let back = dev.invert();
                let w = back.apply(&probe.contacts[0]);
                let centroid = tri_centroid(&self.tris[t].verts);
                let toward = &w - &centroid;
                let Some(dirv) = DirectionVec::new(toward) else {
                    return Err(DelaunayError::Inconsistent("violation at centroid".into()));
                };
                let verts: Vec<PlaneVec> = self.tris[t].verts.to_vec();
                let exit = crate::geom::ray_exit(&verts, &centroid, &dirv)
                    .map_err(|_| DelaunayError::Inconsistent("no exit edge for repair".into()))?;
                let prefer = match exit {
                    crate::geom::RayHit::Edge { edge, .. } => edge as u8,
                    crate::geom::RayHit::Vertex { vertex, .. } => vertex as u8,
                };
                let order = [prefer, (prefer + 1) % 3, (prefer + 2) % 3];
                let slot = order
                    .iter()
                    .map(|&e| (t, e))
                    .find(|&sl| self.partner.contains_key(&sl) && self.flip_convex(sl))
                    .ok_or_else(|| {
                        DelaunayError::Inconsistent("no convex flip available for repair".into())
                    })?;
                self.flip(s, slot)?;
                // Re-establish local Delaunay before the next global pass.
                self.make_delaunay(s, 10_000)?;
                continue 're;
            }
            return Ok(());
        }
    }

    /// Flips until every edge satisfies the empty-circumdisk test.
    fn make_delaunay(&mut self, s: &DilationSurface, flip_budget: usize) -> Result<usize, DelaunayError> {
        let mut queue: BTreeSet<Slot> = self.partner.keys().copied().collect();
        let mut flips = 0usize;
        while let Some(slot) = queue.pop_first() {
            if !self.partner.contains_key(&slot) {
                continue;
            }
            let (t1, e1) = slot;
            if !self.alive[t1] {
                continue;
            }
            let (w2, _) = self.developed_opposite(slot);
            let a = self.tris[t1].tail(e1);
            let b = self.tris[t1].head(e1);
            let c = self.tris[t1].opposite(e1);
            if incircle(a, b, c, &w2) != std::cmp::Ordering::Greater {
                continue;
            }
            flips += 1;
            if flips > flip_budget {
                return Err(DelaunayError::FlipBudgetExceeded);
            }
            let t2 = self.partner[&slot].0;
            self.flip(s, slot)?;
            for t in [t1, t2] {
                for e in 0..3u8 {
                    queue.insert((t, e));
                    if let Some(p) = self.partner.get(&(t, e)) {
                        queue.insert(*p);
                    }
                }
            }
        }
        Ok(flips)
    }
}

/// One convex Delaunay cell: the convex hull of the singular contacts of a
/// maximal immersed disk with ν ≥ 3, in the chart of its anchor triangle.
#[derive(Clone, Debug)]
pub struct DelaunayCell {
    pub verts: Vec<PlaneVec>,
    pub classes: Vec<usize>,
    pub center: PlaneVec,
    pub radius2: Real,
    /// Interior surface point of the cell with its chart coordinates.
    pub anchor_sp: SurfacePoint,
    pub anchor_pt: PlaneVec,
}

impl DelaunayCell {
    pub fn nu(&self) -> usize {
        self.verts.len()
    }

    pub fn side(&self, i: usize) -> (&PlaneVec, &PlaneVec) {
        (&self.verts[i], &self.verts[(i + 1) % self.verts.len()])
    }
}

/// The canonical cell decomposition together with the cell adjacency: side
/// (cell, i) is glued to side (cell', i') by the stored chart transition.
#[derive(Clone, Debug)]
pub struct DelaunayDecomposition {
    pub cells: Vec<DelaunayCell>,
    pub adjacency: HashMap<(usize, usize), ((usize, usize), PosAffineMap)>,
    pub flips_used: usize,
}

impl DelaunayDecomposition {
    pub fn num_edges(&self) -> usize {
        self.adjacency.len() / 2
    }

    /// V - E + F of the cell complex.
    pub fn euler(&self, s: &DilationSurface) -> i64 {
        let v = s.singular_class_ids().len() as i64;
        v - self.num_edges() as i64 + self.cells.len() as i64
    }
}

/// Budgets for the decomposition pipeline.
#[derive(Clone, Copy, Debug)]
pub struct DelaunayBudget {
    pub farey_bound: i64,
    pub trace: TraceBudget,
    pub chart_budget: usize,
    pub flip_budget: usize,
}

impl Default for DelaunayBudget {
    fn default() -> Self {
        DelaunayBudget {
            farey_bound: 6,
            trace: TraceBudget::new(600),
            chart_budget: 40_000,
            flip_budget: 20_000,
        }
    }
}

/// Checks the property-𝒱 gate. Surfaces with trivial dilation holonomy have
/// no affine cylinders at all, so the gate is immediate for them; otherwise
/// the cylinder search runs.
pub fn property_v_gate(
    s: &DilationSurface,
    budget: &DelaunayBudget,
) -> Result<PropertyV, DelaunayError> {
    if s.holonomy_dilations().is_empty() {
        return Ok(PropertyV {
            witness: None,
            directions_checked: 0,
        });
    }
    let pv = property_v(s, budget.farey_bound, budget.trace);
    if let Some(w) = pv.witness {
        return Err(DelaunayError::PropertyVViolated {
            angle: w.angle().unwrap_or(f64::NAN),
            factor: w.factor(),
            direction: w.direction,
        });
    }
    Ok(pv)
}

pub fn delaunay_decomposition(s: &DilationSurface) -> Result<DelaunayDecomposition, DelaunayError> {
    delaunay_decomposition_with(s, &DelaunayBudget::default())
}

pub fn delaunay_decomposition_with(
    s: &DilationSurface,
    budget: &DelaunayBudget,
) -> Result<DelaunayDecomposition, DelaunayError> {
    if s.singular_class_ids().is_empty() {
        return Err(DelaunayError::NoSingularPoints);
    }
    property_v_gate(s, budget)?;
    let mut cx = TriComplex::from_surface(s)?;
    // Regular vertices of the presentation are flipped away first: the
    // decomposition's vertex set is exactly the singular set.
    cx.remove_regular_vertices(s)?;
    let flips_used = cx.make_delaunay(s, budget.flip_budget)?;
    cx.certify_and_repair(s, budget.chart_budget, budget.flip_budget)?;

    // Merge exactly co-circular neighbours.
    let n = cx.tris.len();
    let live: Vec<usize> = (0..n).filter(|&t| cx.alive[t]).collect();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    let mut merged_slots: Vec<Slot> = Vec::new();
    let mut all_slots: Vec<Slot> = cx.partner.keys().copied().collect();
    all_slots.sort();
    for &slot in &all_slots {
        let p = cx.partner[&slot];
        if p < slot {
            continue;
        }
        let (t1, e1) = slot;
        let (w2, _) = cx.developed_opposite(slot);
        let a = cx.tris[t1].tail(e1);
        let b = cx.tris[t1].head(e1);
        let c = cx.tris[t1].opposite(e1);
        if incircle(a, b, c, &w2) == std::cmp::Ordering::Equal {
            let (r1, r2) = (find(&mut parent, t1), find(&mut parent, p.0));
            if r1 != r2 {
                parent[r1.max(r2)] = r1.min(r2);
            }
            merged_slots.push(slot);
            merged_slots.push(p);
        }
    }

    // Assemble cells: develop each union into its anchor chart.
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for &t in &live {
        let r = find(&mut parent, t);
        groups.entry(r).or_default().push(t);
    }
    let mut anchors: Vec<usize> = groups.keys().copied().collect();
    anchors.sort();
    let mut dev_of_tri: HashMap<usize, PosAffineMap> = HashMap::new();
    let mut cells: Vec<(DelaunayCell, Vec<Slot>)> = Vec::new();
    for &anchor in anchors.iter() {
        let members = &groups[&anchor];
        dev_of_tri.insert(anchor, PosAffineMap::identity());
        let mut queue = VecDeque::from([anchor]);
        while let Some(t) = queue.pop_front() {
            for e in 0..3u8 {
                let slot = (t, e);
                if !merged_slots.contains(&slot) {
                    continue;
                }
                let p = cx.partner[&slot];
                if dev_of_tri.contains_key(&p.0) {
                    continue;
                }
                let back = cx.maps[&p].clone(); // partner chart -> t chart
                let dev = dev_of_tri[&t].compose(&back);
                dev_of_tri.insert(p.0, dev);
                queue.push_back(p.0);
            }
        }
        // Boundary chain in the anchor chart.
        let mut boundary: Vec<(Slot, PlaneVec, PlaneVec, usize)> = Vec::new();
        for &t in members {
            let dev = dev_of_tri[&t].clone();
            for e in 0..3u8 {
                if merged_slots.contains(&(t, e)) {
                    continue;
                }
                boundary.push((
                    (t, e),
                    dev.apply(cx.tris[t].tail(e)),
                    dev.apply(cx.tris[t].head(e)),
                    cx.tris[t].class[e as usize],
                ));
            }
        }
        if boundary.is_empty() {
            return Err(DelaunayError::Inconsistent("cell without boundary".into()));
        }
        let mut chain = vec![boundary[0].clone()];
        while chain.len() < boundary.len() {
            let head = chain.last().unwrap().2.clone();
            let next = boundary
                .iter()
                .find(|(slot, tail, _, _)| *tail == head && !chain.iter().any(|(s2, ..)| s2 == slot))
                .cloned()
                .ok_or_else(|| DelaunayError::Inconsistent("broken cell boundary".into()))?;
            chain.push(next);
        }
        if chain.last().unwrap().2 != chain[0].1 {
            return Err(DelaunayError::Inconsistent("cell boundary does not close".into()));
        }
        let verts: Vec<PlaneVec> = chain.iter().map(|(_, tail, _, _)| tail.clone()).collect();
        let classes: Vec<usize> = chain.iter().map(|(_, _, _, c)| *c).collect();
        crate::geom::check_convex_ccw(&verts)
            .map_err(|_| DelaunayError::Inconsistent("cell is not convex".into()))?;
        let center = circumcenter(&verts[0], &verts[1], &verts[2])
            .ok_or_else(|| DelaunayError::Inconsistent("degenerate cell".into()))?;
        let radius2 = dist2(&center, &verts[0]);
        for v in &verts {
            if !dist2(&center, v).close_to(&radius2, EPS) {
                return Err(DelaunayError::Inconsistent(
                    "cell vertices not co-circular".into(),
                ));
            }
        }
        cells.push((
            DelaunayCell {
                verts,
                classes,
                center,
                radius2,
                anchor_sp: cx.tris[anchor].anchor_sp.clone(),
                anchor_pt: cx.tris[anchor].anchor_pt.clone(),
            },
            chain.into_iter().map(|(slot, ..)| slot).collect(),
        ));
    }

    // Cell adjacency along the unmerged sides.
    let slot_position: HashMap<Slot, (usize, usize)> = cells
        .iter()
        .enumerate()
        .flat_map(|(ci, (_, chain))| {
            chain
                .iter()
                .enumerate()
                .map(move |(si, slot)| (*slot, (ci, si)))
        })
        .collect();
    let mut adjacency = HashMap::new();
    for (&slot, &(ci, si)) in &slot_position {
        let p = cx.partner[&slot];
        let (cj, sj) = slot_position[&p];
        // anchor_i chart -> tri chart -> partner tri chart -> anchor_j chart.
        let m = dev_of_tri[&p.0]
            .compose(&cx.maps[&slot])
            .compose(&dev_of_tri[&slot.0].invert());
        adjacency.insert((ci, si), ((cj, sj), m));
    }

    let decomposition = DelaunayDecomposition {
        cells: cells.into_iter().map(|(c, _)| c).collect(),
        adjacency,
        flips_used,
    };
    // Independent certification: every cell's circumdisk must be the maximal
    // immersed disk at its circumcenter, with ν matching the cell size.
    certify_cells(s, &decomposition, budget.chart_budget)?;
    Ok(decomposition)
}

/// Re-derives each cell's defining probe with the unfolding prober and
/// checks it matches the cell.
fn certify_cells(
    s: &DilationSurface,
    d: &DelaunayDecomposition,
    chart_budget: usize,
) -> Result<(), DelaunayError> {
    for (ci, cell) in d.cells.iter().enumerate() {
        let inside = surface_point_at(s, cell, &cell.center)?;
        let probe = max_disk(s, &inside, chart_budget)?;
        if !probe.radius2.close_to(&cell.radius2, EPS) {
            return Err(DelaunayError::Inconsistent(format!(
                "cell {ci}: probe radius² {} ≠ cell radius² {} (center {} verts {:?} contacts {:?})",
                probe.radius2,
                cell.radius2,
                cell.center,
                cell.verts.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                probe.contacts.iter().map(|v| v.to_string()).collect::<Vec<_>>()
            )));
        }
        if probe.nu() != cell.nu() {
            return Err(DelaunayError::Inconsistent(format!(
                "cell {ci}: probe ν = {} but the cell has {} vertices",
                probe.nu(),
                cell.nu()
            )));
        }
    }
    Ok(())
}

/// Locates a chart point of a cell on the surface by walking the straight
/// segment from the cell's interior anchor.
fn surface_point_at(
    s: &DilationSurface,
    cell: &DelaunayCell,
    target: &PlaneVec,
) -> Result<SurfacePoint, DelaunayError> {
    walk_from(s, &cell.anchor_sp, &cell.anchor_pt, target)
}

/// Walks the straight chart segment from a known surface point `sp` (at
/// chart coordinates `from`) to the chart point `to`, crossing edges as
/// needed. The chart immerses along the segment, so the walk is exact and
/// unambiguous.
fn walk_from(
    s: &DilationSurface,
    sp: &SurfacePoint,
    from: &PlaneVec,
    to: &PlaneVec,
) -> Result<SurfacePoint, DelaunayError> {
    walk_from_with_dev(s, sp, from, to).map(|(p, _)| p)
}

/// Like [`walk_from`], additionally returning the accumulated transition
/// from the start chart to the end chart.
fn walk_from_with_dev(
    s: &DilationSurface,
    sp: &SurfacePoint,
    from: &PlaneVec,
    to: &PlaneVec,
) -> Result<(SurfacePoint, PosAffineMap), DelaunayError> {
    let delta = to - from;
    let Some(dir) = DirectionVec::new(delta.clone()) else {
        return Ok((sp.clone(), PosAffineMap::identity()));
    };
    let mut poly = sp.poly;
    let mut cur = sp.pos.clone();
    let mut remaining = delta;
    // dev: start chart -> current chart.
    let mut dev = PosAffineMap::identity();
    for _ in 0..10_000 {
        let hit = crate::geom::ray_exit(&s.polygon(poly).verts, &cur, &dir)
            .map_err(|_| DelaunayError::Inconsistent("chart walk left the surface".into()))?;
        let step = hit.point() - &cur;
        if remaining.norm2() <= step.norm2() {
            return Ok((SurfacePoint::new(poly, &cur + &remaining), dev));
        }
        match hit {
            crate::geom::RayHit::Vertex { .. } => {
                return Err(DelaunayError::Inconsistent(
                    "chart walk runs through a vertex".into(),
                ));
            }
            crate::geom::RayHit::Edge { edge, point, .. } => {
                let er = crate::surface::EdgeRef::new(poly, edge);
                let data = s.pair_data(er);
                cur = data.map.apply(&point);
                remaining = (&remaining - &step).scale(&data.dilation);
                dev = data.map.compose(&dev);
                poly = data.partner.poly;
            }
        }
    }
    Err(DelaunayError::Inconsistent("chart walk did not terminate".into()))
}

/// A geodesic triangulation obtained by fanning every Delaunay cell from its
/// least vertex.
#[derive(Clone, Debug)]
pub struct GeodesicTriangulation {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

pub fn geodesic_triangulation(s: &DilationSurface) -> Result<GeodesicTriangulation, DelaunayError> {
    geodesic_triangulation_with(s, &DelaunayBudget::default())
}

pub fn geodesic_triangulation_with(
    s: &DilationSurface,
    budget: &DelaunayBudget,
) -> Result<GeodesicTriangulation, DelaunayError> {
    let d = delaunay_decomposition_with(s, budget)?;
    let mut faces = 0usize;
    let mut extra_edges = 0usize;
    for cell in &d.cells {
        let k = cell.verts.len();
        faces += k - 2;
        extra_edges += k - 3;
    }
    let edges = d.num_edges() + extra_edges;
    let vertices = s.singular_class_ids().len();
    let expected = 2 - 2 * s.genus();
    let got = vertices as i64 - edges as i64 + faces as i64;
    if got != expected {
        return Err(DelaunayError::Inconsistent(format!(
            "triangulation Euler count {got} ≠ χ = {expected}"
        )));
    }
    Ok(GeodesicTriangulation {
        vertices,
        edges,
        faces,
    })
}

/// Certification report for a decomposition: convexity and embeddedness of
/// cells, structural coverage and disjointness, shared sides, the vertex
/// set, and the ν-strata probed with the independent max-disk grower.
#[derive(Clone, Debug)]
pub struct BulletReport {
    pub cells_convex_embedded: bool,
    pub covers_surface: bool,
    pub interiors_disjoint: bool,
    pub sides_shared: bool,
    pub vertex_set_is_singular_set: bool,
    pub interiors_are_nu1: bool,
    pub side_interiors_are_nu2: bool,
}

impl BulletReport {
    pub fn all_pass(&self) -> bool {
        self.cells_convex_embedded
            && self.covers_surface
            && self.interiors_disjoint
            && self.sides_shared
            && self.vertex_set_is_singular_set
            && self.interiors_are_nu1
            && self.side_interiors_are_nu2
    }
}

pub fn check_bullets(
    s: &DilationSurface,
    d: &DelaunayDecomposition,
) -> Result<BulletReport, DelaunayError> {
    let cells_convex_embedded = d
        .cells
        .iter()
        .all(|c| crate::geom::check_convex_ccw(&c.verts).is_ok());
    // Structural coverage and disjointness: the cells partition the flip
    // complex, which stays a triangulation of the surface; the Euler count
    // ties it to the surface itself.
    let covers_surface = d.euler(s) == s.euler();
    let interiors_disjoint = covers_surface;
    let sides_shared = d
        .adjacency
        .iter()
        .all(|(k, (k2, _))| d.adjacency.get(k2).map(|(k3, _)| k3 == k).unwrap_or(false));
    let mut seen_classes: Vec<usize> = d.cells.iter().flat_map(|c| c.classes.clone()).collect();
    seen_classes.sort();
    seen_classes.dedup();
    let vertex_set_is_singular_set = seen_classes == s.singular_class_ids()
        && d.cells
            .iter()
            .all(|c| c.classes.iter().all(|&cl| s.vertex_classes()[cl].is_singular()));

    let mut interiors_are_nu1 = true;
    for cell in &d.cells {
        let probe_pt = interior_point(cell);
        let sp = surface_point_at(s, cell, &probe_pt)?;
        let probe = max_disk(s, &sp, 40_000)?;
        if probe.nu() != 1 {
            interiors_are_nu1 = false;
        }
    }
    let mut side_interiors_are_nu2 = true;
    for cell in &d.cells {
        for i in 0..cell.verts.len() {
            let (a, b) = cell.side(i);
            let mid = (a + b).scale(&Real::ratio(1, 2));
            let sp = surface_point_at(s, cell, &mid)?;
            let probe = max_disk(s, &sp, 40_000)?;
            if probe.nu() != 2 {
                side_interiors_are_nu2 = false;
            }
        }
    }
    Ok(BulletReport {
        cells_convex_embedded,
        covers_surface,
        interiors_disjoint,
        sides_shared,
        vertex_set_is_singular_set,
        interiors_are_nu1,
        side_interiors_are_nu2,
    })
}

/// A deterministic interior point of a convex cell, skewed off symmetric
/// loci.
fn interior_point(cell: &DelaunayCell) -> PlaneVec {
    let mut sum = PlaneVec::zero();
    for v in &cell.verts {
        sum = &sum + v;
    }
    let centroid = sum.scale(&Real::from_int(cell.verts.len() as i64).recip());
    &centroid + &(&cell.verts[0] - &centroid).scale(&Real::ratio(1, 17))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;

    #[test]
    fn octagon_center_probe_matches_brute_force() {
        let s = builders::flat_octagon();
        let x = SurfacePoint::new(0, PlaneVec::from_ints(1, 2));
        let probe = max_disk(&s, &x, 20_000).unwrap();
        let brute = brute_force_disk(&s, &x, 4);
        assert_eq!(probe.radius2, brute.0);
        assert_eq!(probe.nu(), brute.1);
    }

    #[test]
    fn octagon_decomposition_euler_and_bullets() {
        let s = builders::flat_octagon();
        let d = delaunay_decomposition(&s).unwrap();
        assert_eq!(d.euler(&s), -2);
        let bullets = check_bullets(&s, &d).unwrap();
        assert!(bullets.all_pass(), "{bullets:?}");
        // Determinism: the complex is identical on a second run.
        let d2 = delaunay_decomposition(&s).unwrap();
        assert_eq!(d.cells.len(), d2.cells.len());
        for (c1, c2) in d.cells.iter().zip(d2.cells.iter()) {
            assert_eq!(c1.verts, c2.verts);
        }
    }

    #[test]
    fn octagon_triangulation_counts() {
        let s = builders::flat_octagon();
        let t = geodesic_triangulation(&s).unwrap();
        assert_eq!(t.vertices, 1);
        assert_eq!(t.edges, 9);
        assert_eq!(t.faces, 6);
    }

    #[test]
    fn two_chamber_is_triangulable() {
        let s = builders::two_chamber();
        let t = geodesic_triangulation(&s).unwrap();
        assert_eq!(t.vertices, 1);
        assert_eq!(t.edges, 9);
        assert_eq!(t.faces, 6);
    }

    #[test]
    fn double_hopf_torus_violates_property_v() {
        let s = builders::double_hopf_torus(&Real::from_int(2), &Real::from_int(2)).unwrap();
        match delaunay_decomposition(&s) {
            Err(DelaunayError::PropertyVViolated { angle, .. }) => {
                assert!(angle >= std::f64::consts::PI - 1e-5, "angle {angle}");
            }
            other => panic!("expected PropertyVViolated, got {other:?}"),
        }
    }

    #[test]
    fn probe_on_delaunay_edge_has_nu_two() {
        let s = builders::flat_octagon();
        let d = delaunay_decomposition(&s).unwrap();
        let cell = &d.cells[0];
        let (a, b) = cell.side(0);
        let mid = (a + b).scale(&Real::ratio(1, 2));
        let sp = surface_point_at(&s, cell, &mid).unwrap();
        let probe = max_disk(&s, &sp, 20_000).unwrap();
        assert_eq!(probe.nu(), 2);
    }

    /// Test-only oracle, independent of the Dijkstra prober: start with the
    /// minimum singular distance in the home chart, then repeatedly rebuild
    /// the full set of charts reachable through edges strictly closer than
    /// the current radius (plain breadth-first, no ordering) and shrink the
    /// radius to the minimum over that set, until the radius is stable.
    fn brute_force_disk(s: &DilationSurface, x: &SurfacePoint, rounds: usize) -> (Real, usize) {
        let singular_min = |poly: usize, dev: &PosAffineMap, r: &mut Option<Real>, contacts: &mut Vec<PlaneVec>| {
            for (vi, v) in s.polygon(poly).verts.iter().enumerate() {
                if !s.class_of_corner(poly, vi).is_singular() {
                    continue;
                }
                let w = dev.apply(v);
                let d2 = dist2(&w, &x.pos);
                match r {
                    None => {
                        *r = Some(d2);
                        *contacts = vec![w];
                    }
                    Some(rr) => {
                        if d2 < *rr {
                            *r = Some(d2);
                            *contacts = vec![w];
                        } else if d2 == *rr && !contacts.contains(&w) {
                            contacts.push(w);
                        }
                    }
                }
            }
        };
        let mut radius: Option<Real> = None;
        let mut contacts = Vec::new();
        singular_min(x.poly, &PosAffineMap::identity(), &mut radius, &mut contacts);
        for _ in 0..rounds {
            let r = radius.clone().unwrap();
            let mut seen: Vec<(usize, (RealKey, RealKey, RealKey))> = Vec::new();
            let mut frontier = vec![(x.poly, PosAffineMap::identity())];
            radius = None;
            contacts.clear();
            while let Some((poly, dev)) = frontier.pop() {
                let key = (poly, map_key(&dev));
                if seen.contains(&key) {
                    continue;
                }
                seen.push(key);
                singular_min(poly, &dev, &mut radius, &mut contacts);
                for ei in 0..s.polygon(poly).n() {
                    let a = dev.apply(s.polygon(poly).tail(ei));
                    let b = dev.apply(s.polygon(poly).head(ei));
                    if seg_dist2(&x.pos, &a, &b) >= r {
                        continue;
                    }
                    let er = crate::surface::EdgeRef::new(poly, ei);
                    let data = s.pair_data(er);
                    frontier.push((data.partner.poly, dev.compose(&data.map.invert())));
                }
            }
            if radius.as_ref() == Some(&r) {
                break;
            }
        }
        contacts.sort_by(|p, q| {
            p.x.partial_cmp(&q.x)
                .unwrap()
                .then(p.y.partial_cmp(&q.y).unwrap())
        });
        (radius.unwrap(), contacts.len())
    }
}
