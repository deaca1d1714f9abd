//! Affine interval exchange transformations and first-return maps of
//! directional flows on boundary transversals.

use crate::geom::{ray_exit, sqrt_exact, DirectionVec, PlaneVec, RayHit};
use crate::real::{Real, EPS};
use crate::surface::{DilationSurface, EdgeRef};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum AietError {
    #[error("partition lengths must be positive")]
    NonPositiveLength,
    #[error("top and bottom partitions have different total length")]
    LengthMismatch,
    #[error("permutation is not a bijection")]
    BadPermutation,
    #[error("point outside the domain")]
    OutOfDomain,
    #[error("transversal edges are not a consecutive collinear chain")]
    BadTransversal,
    #[error("transversal is parallel to the flow direction")]
    TransversalParallelToDirection,
    #[error("cannot parse AIET: {0}")]
    Parse(String),
}

/// A piecewise affine increasing bijection of [0, L): the top partition is
/// mapped interval-by-interval onto the bottom partition, top interval i
/// landing on bottom slot `perm[i]` with slope bottom[perm[i]]/top[i].
#[derive(Clone, Debug, PartialEq)]
pub struct Aiet {
    top: Vec<Real>,
    bottom: Vec<Real>,
    perm: Vec<usize>,
}

impl Aiet {
    pub fn new(top: Vec<Real>, bottom: Vec<Real>, perm: Vec<usize>) -> Result<Aiet, AietError> {
        let t = Aiet { top, bottom, perm };
        t.check()?;
        Ok(t)
    }

    pub fn identity(length: Real) -> Aiet {
        Aiet {
            top: vec![length.clone()],
            bottom: vec![length],
            perm: vec![0],
        }
    }

    /// The disco exchange: permutation (1,2)(3,4) with lengths a,b,b,a on
    /// both sides.
    pub fn disco(a: &Real, b: &Real) -> Aiet {
        let lengths = vec![a.clone(), b.clone(), b.clone(), a.clone()];
        Aiet {
            top: lengths.clone(),
            bottom: lengths,
            perm: vec![1, 0, 3, 2],
        }
    }

    fn check(&self) -> Result<(), AietError> {
        if self.top.is_empty() || self.top.len() != self.perm.len() || self.bottom.len() != self.perm.len()
        {
            return Err(AietError::BadPermutation);
        }
        if self.top.iter().chain(self.bottom.iter()).any(|l| !l.is_positive()) {
            return Err(AietError::NonPositiveLength);
        }
        let mut seen = vec![false; self.perm.len()];
        for &j in &self.perm {
            if j >= seen.len() || seen[j] {
                return Err(AietError::BadPermutation);
            }
            seen[j] = true;
        }
        if !self.length().close_to(&sum(&self.bottom), EPS) {
            return Err(AietError::LengthMismatch);
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    pub fn branches(&self) -> usize {
        self.perm.len()
    }

    pub fn top_lengths(&self) -> &[Real] {
        &self.top
    }

    pub fn bottom_lengths(&self) -> &[Real] {
        &self.bottom
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn length(&self) -> Real {
        sum(&self.top)
    }

    pub fn top_cuts(&self) -> Vec<Real> {
        cuts(&self.top)
    }

    pub fn bottom_cuts(&self) -> Vec<Real> {
        cuts(&self.bottom)
    }

    pub fn slope(&self, branch: usize) -> Real {
        &self.bottom[self.perm[branch]] / &self.top[branch]
    }

    /// Index of the branch containing x; branch endpoints belong to the
    /// branch on their right.
    pub fn branch_of(&self, x: &Real) -> Result<usize, AietError> {
        if x.is_negative() || *x >= self.length() {
            return Err(AietError::OutOfDomain);
        }
        let cuts = self.top_cuts();
        for i in 0..self.branches() {
            if *x >= cuts[i] && *x < cuts[i + 1] {
                return Ok(i);
            }
        }
        Err(AietError::OutOfDomain)
    }

    pub fn evaluate(&self, x: &Real) -> Result<Real, AietError> {
        let i = self.branch_of(x)?;
        let tcuts = self.top_cuts();
        let bcuts = self.bottom_cuts();
        Ok(&bcuts[self.perm[i]] + &(&self.slope(i) * &(x - &tcuts[i])))
    }

    /// Rescales the domain to [0, 1].
    pub fn normalized(&self) -> Aiet {
        let inv = self.length().recip();
        Aiet {
            top: self.top.iter().map(|l| l * &inv).collect(),
            bottom: self.bottom.iter().map(|l| l * &inv).collect(),
            perm: self.perm.clone(),
        }
    }

    /// Text form `L; top; bottom; cycles`, e.g. `6; 1,2,2,1; 1,2,2,1; (1,2)(3,4)`.
    pub fn to_text(&self) -> String {
        format!(
            "{}; {}; {}; {}",
            self.length(),
            join(&self.top),
            join(&self.bottom),
            cycles_to_string(&self.perm)
        )
    }

    pub fn parse(text: &str) -> Result<Aiet, AietError> {
        let parts: Vec<&str> = text.split(';').map(str::trim).collect();
        let (top_s, bottom_s, perm_s) = match parts.len() {
            4 => (parts[1], parts[2], parts[3]),
            3 => (parts[0], parts[1], parts[2]),
            _ => return Err(AietError::Parse("expected `L; top; bottom; perm`".into())),
        };
        let parse_list = |s: &str| -> Result<Vec<Real>, AietError> {
            s.split(',')
                .map(|x| Real::parse(x.trim()).ok_or_else(|| AietError::Parse(format!("bad length {x}"))))
                .collect()
        };
        let top = parse_list(top_s)?;
        let bottom = parse_list(bottom_s)?;
        let perm = parse_cycles(perm_s, top.len())?;
        Aiet::new(top, bottom, perm)
    }
}

fn sum(v: &[Real]) -> Real {
    let mut s = Real::zero();
    for x in v {
        s = &s + x;
    }
    s
}

fn cuts(v: &[Real]) -> Vec<Real> {
    let mut out = vec![Real::zero()];
    let mut acc = Real::zero();
    for x in v {
        acc = &acc + x;
        out.push(acc.clone());
    }
    out
}

fn join(v: &[Real]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Renders a permutation in cycle notation with 1-based entries; identity is
/// "id".
pub fn cycles_to_string(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            seen[start] = true;
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut j = perm[start];
        while j != start {
            seen[j] = true;
            cycle.push(j);
            j = perm[j];
        }
        out.push('(');
        out.push_str(
            &cycle
                .iter()
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(","),
        );
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("id");
    }
    out
}

pub fn parse_cycles(s: &str, n: usize) -> Result<Vec<usize>, AietError> {
    let mut perm: Vec<usize> = (0..n).collect();
    let s = s.trim();
    if s == "id" || s.is_empty() {
        return Ok(perm);
    }
    for cyc in s.split(')') {
        let cyc = cyc.trim().trim_start_matches('(').trim();
        if cyc.is_empty() {
            continue;
        }
        let entries: Result<Vec<usize>, _> = cyc.split(',').map(|x| x.trim().parse::<usize>()).collect();
        let entries = entries.map_err(|e| AietError::Parse(e.to_string()))?;
        if entries.iter().any(|&i| i == 0 || i > n) {
            return Err(AietError::Parse(format!("cycle entry out of range in ({cyc})")));
        }
        for w in 0..entries.len() {
            let from = entries[w] - 1;
            let to = entries[(w + 1) % entries.len()] - 1;
            perm[from] = to;
        }
    }
    // Must be a bijection.
    let mut seen = vec![false; n];
    for &j in &perm {
        if seen[j] {
            return Err(AietError::BadPermutation);
        }
        seen[j] = true;
    }
    Ok(perm)
}

#[derive(Clone, Debug)]
pub enum OrbitClass {
    /// Exactly periodic orbit through the start point.
    Periodic { period: usize, multiplier: Real },
    /// The branch itinerary became periodic with contracting multiplier; the
    /// orbit converges to the cycle through `limit` (possibly a breakpoint).
    AttractedToPeriodic {
        period: usize,
        multiplier: Real,
        limit: Real,
    },
    Unresolved,
}

/// Classifies the forward orbit of x under T within an iteration budget.
pub fn orbit_classify(t: &Aiet, x: &Real, budget: usize) -> Result<OrbitClass, AietError> {
    let mut cur = x.clone();
    t.branch_of(&cur)?;
    let mut seen: HashMap<crate::real::RealKey, (usize, Real)> = HashMap::new();
    let mut mult = Real::one();
    let mut itinerary: Vec<(usize, Real, Real)> = Vec::new(); // (branch, x, mult-so-far)
    for step in 0..budget {
        if let Some((_, m0)) = seen.get(&cur.key()) {
            let period = step - seen[&cur.key()].0;
            return Ok(OrbitClass::Periodic {
                period,
                multiplier: &mult / m0,
            });
        }
        seen.insert(cur.key(), (step, mult.clone()));
        let b = t.branch_of(&cur)?;
        itinerary.push((b, cur.clone(), mult.clone()));
        // Contracting branch-cycle detection: three equally spaced visits to
        // the same branch with matching itinerary and multiplier < 1.
        if let Some((period, m, limit)) = detect_attraction(&itinerary) {
            return Ok(OrbitClass::AttractedToPeriodic {
                period,
                multiplier: m,
                limit,
            });
        }
        mult = &mult * &t.slope(b);
        cur = t.evaluate(&cur)?;
    }
    Ok(OrbitClass::Unresolved)
}

fn detect_attraction(itin: &[(usize, Real, Real)]) -> Option<(usize, Real, Real)> {
    let k = itin.len() - 1;
    let (bk, xk, mk) = &itin[k];
    for period in 1..=(k / 2) {
        let j = k - period;
        let i = k - 2 * period;
        let (bj, xj, mj) = &itin[j];
        let (bi, xi, mi) = &itin[i];
        if bj != bk || bi != bk {
            continue;
        }
        if (i..j).any(|w| itin[w].0 != itin[w + period].0) {
            continue;
        }
        let f1 = mj / mi;
        let f2 = mk / mj;
        if !f1.close_to(&f2, EPS) || f1 >= Real::one() {
            continue;
        }
        let c = xj - &(&f1 * xi);
        if !(&(&f1 * xj) + &c).close_to(xk, EPS) {
            continue;
        }
        let limit = &c / &(&Real::one() - &f1);
        return Some((period, f1, limit));
    }
    None
}

/// A transversal made of consecutive collinear edges of one polygon,
/// parameterized by arc length from the chain's start.
#[derive(Clone, Debug)]
pub struct SideTransversal {
    pub chain: Vec<EdgeRef>,
    offsets: Vec<Real>,
}

impl SideTransversal {
    pub fn new(s: &DilationSurface, chain: Vec<EdgeRef>) -> Result<SideTransversal, AietError> {
        if chain.is_empty() {
            return Err(AietError::BadTransversal);
        }
        let poly = chain[0].poly;
        let p = s.polygon(poly);
        let dir = p.edge_vec(chain[0].edge);
        for (i, e) in chain.iter().enumerate() {
            if e.poly != poly || e.edge >= p.n() {
                return Err(AietError::BadTransversal);
            }
            let ev = p.edge_vec(e.edge);
            if !ev.cross(&dir).is_zero() || !ev.dot(&dir).is_positive() {
                return Err(AietError::BadTransversal);
            }
            if i > 0 && chain[i - 1].edge + 1 != e.edge {
                return Err(AietError::BadTransversal);
            }
        }
        let mut offsets = vec![Real::zero()];
        let mut acc = Real::zero();
        for e in &chain {
            acc = &acc + &edge_length(s, *e);
            offsets.push(acc.clone());
        }
        Ok(SideTransversal { chain, offsets })
    }

    pub fn length(&self) -> Real {
        self.offsets.last().unwrap().clone()
    }

    pub fn param_of(&self, idx: usize, edge_t: &Real) -> Real {
        let w = &self.offsets[idx + 1] - &self.offsets[idx];
        &self.offsets[idx] + &(edge_t * &w)
    }
}

/// Arc length of an edge; exact when |e|² is a perfect rational square
/// (axis-aligned edges always are), floating otherwise.
pub fn edge_length(s: &DilationSurface, e: EdgeRef) -> Real {
    let v = s.polygon(e.poly).edge_vec(e.edge);
    let n2 = v.norm2();
    match &n2 {
        Real::Rat(r) => match sqrt_exact(r) {
            Some(root) => Real::Rat(root),
            None => Real::from_f64(n2.to_f64().sqrt()),
        },
        Real::F64(x) => Real::from_f64(x.sqrt()),
    }
}

/// One affine branch of a first-return map: `dom` on the transversal maps
/// onto `img` with slope equal to the accumulated dilation factor.
#[derive(Clone, Debug)]
pub struct ReturnBranch {
    pub dom: (Real, Real),
    pub img: (Real, Real),
    pub slope: Real,
    pub crossings: usize,
}

/// First-return data; `unresolved` lists subintervals whose leaves exceeded
/// the budget, marked explicitly rather than guessed.
#[derive(Clone, Debug)]
pub struct ReturnMap {
    pub transversal_length: Real,
    pub branches: Vec<ReturnBranch>,
    pub unresolved: Vec<(Real, Real)>,
}

impl ReturnMap {
    pub fn is_complete(&self) -> bool {
        self.unresolved.is_empty()
    }

    /// Converts a complete return map into an AIET over [0, L].
    pub fn as_aiet(&self) -> Option<Aiet> {
        if !self.is_complete() || self.branches.is_empty() {
            return None;
        }
        let mut bs = self.branches.clone();
        bs.sort_by(|a, b| a.dom.0.partial_cmp(&b.dom.0).unwrap());
        // Domain must tile [0, L].
        let mut edge = Real::zero();
        for b in &bs {
            if !b.dom.0.close_to(&edge, EPS) {
                return None;
            }
            edge = b.dom.1.clone();
        }
        if !edge.close_to(&self.transversal_length, EPS) {
            return None;
        }
        let mut order: Vec<usize> = (0..bs.len()).collect();
        order.sort_by(|&i, &j| bs[i].img.0.partial_cmp(&bs[j].img.0).unwrap());
        let mut perm = vec![0usize; bs.len()];
        let mut bottom = vec![Real::zero(); bs.len()];
        for (slot, &i) in order.iter().enumerate() {
            perm[i] = slot;
            bottom[slot] = &bs[i].img.1 - &bs[i].img.0;
        }
        let top: Vec<Real> = bs.iter().map(|b| &b.dom.1 - &b.dom.0).collect();
        Aiet::new(top, bottom, perm).ok()
    }
}

struct IntervalState {
    ulo: Real,
    uhi: Real,
    poly: usize,
    a: PlaneVec,
    b: PlaneVec,
    factor: Real,
    crossings: usize,
}

/// First-return map of the direction-`d` flow to a boundary transversal.
///
/// Every subinterval is propagated exactly: the interval is split at the
/// pull-backs of polygon vertices, each piece crosses a single edge, and a
/// piece returns when it lands on the transversal from either side.
pub fn first_return(
    s: &DilationSurface,
    transversal: &SideTransversal,
    d: &DirectionVec,
    max_crossings: usize,
) -> Result<ReturnMap, AietError> {
    let mut covered: HashMap<EdgeRef, usize> = HashMap::new();
    for (i, &e) in transversal.chain.iter().enumerate() {
        covered.insert(e, i);
    }

    let mut queue: Vec<IntervalState> = Vec::new();
    for (i, &e) in transversal.chain.iter().enumerate() {
        let p = s.polygon(e.poly);
        let evec = p.edge_vec(e.edge);
        let side = evec.cross(d.vec());
        let (ulo, uhi) = (
            transversal.param_of(i, &Real::zero()),
            transversal.param_of(i, &Real::one()),
        );
        if side.is_positive() {
            // d points into the edge's own polygon.
            queue.push(IntervalState {
                ulo,
                uhi,
                poly: e.poly,
                a: p.tail(e.edge).clone(),
                b: p.head(e.edge).clone(),
                factor: Real::one(),
                crossings: 0,
            });
        } else if side.is_negative() {
            // d points into the partner polygon; start there.
            let data = s.pair_data(e);
            queue.push(IntervalState {
                ulo,
                uhi,
                poly: data.partner.poly,
                a: data.map.apply(p.tail(e.edge)),
                b: data.map.apply(p.head(e.edge)),
                factor: data.dilation.clone(),
                crossings: 0,
            });
        } else {
            return Err(AietError::TransversalParallelToDirection);
        }
    }

    let mut branches = Vec::new();
    let mut unresolved = Vec::new();
    let mut guard = 0usize;
    while let Some(st) = queue.pop() {
        guard += 1;
        if guard > 200_000 || st.crossings >= max_crossings {
            unresolved.push((st.ulo.clone(), st.uhi.clone()));
            continue;
        }
        step_interval(s, &covered, transversal, d, st, &mut queue, &mut branches, &mut unresolved);
    }
    branches.sort_by(|x, y| x.dom.0.partial_cmp(&y.dom.0).unwrap());
    unresolved.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    Ok(ReturnMap {
        transversal_length: transversal.length(),
        branches,
        unresolved,
    })
}

#[allow(clippy::too_many_arguments)]
fn step_interval(
    s: &DilationSurface,
    covered: &HashMap<EdgeRef, usize>,
    transversal: &SideTransversal,
    d: &DirectionVec,
    st: IntervalState,
    queue: &mut Vec<IntervalState>,
    branches: &mut Vec<ReturnBranch>,
    unresolved: &mut Vec<(Real, Real)>,
) {
    let poly = s.polygon(st.poly);
    let u = &st.b - &st.a;
    let dv = d.vec();
    let cu = u.cross(dv);
    if cu.is_zero() {
        // Interval image collapsed against the flow direction; give up on
        // this piece honestly.
        unresolved.push((st.ulo, st.uhi));
        return;
    }
    // Split at pull-backs of polygon vertices onto the open interval.
    let mut breaks: Vec<Real> = Vec::new();
    for v in &poly.verts {
        let rel = v - &st.a;
        let x = &rel.cross(dv) / &cu;
        if !x.is_positive() || x >= Real::one() {
            continue;
        }
        // Forward distance of the vertex from the interval.
        let t = &u.cross(&rel) / &cu;
        if t.is_positive() {
            breaks.push(x);
        }
    }
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    breaks.dedup();
    let mut cut_params = vec![Real::zero()];
    cut_params.extend(breaks);
    cut_params.push(Real::one());

    let span = &st.uhi - &st.ulo;
    for w in 0..cut_params.len() - 1 {
        let (x0, x1) = (&cut_params[w], &cut_params[w + 1]);
        let pa = &st.a + &u.scale(x0);
        let pb = &st.a + &u.scale(x1);
        let ulo = &st.ulo + &(&span * x0);
        let uhi = &st.ulo + &(&span * x1);
        // Pieces exit through a single edge; classify by the midpoint.
        let mid = (&pa + &pb).scale(&Real::ratio(1, 2));
        let hit = match ray_exit(&poly.verts, &mid, d) {
            Ok(h) => h,
            Err(_) => {
                unresolved.push((ulo, uhi));
                continue;
            }
        };
        let edge = match hit {
            RayHit::Edge { edge, .. } => edge,
            RayHit::Vertex { .. } => {
                // Should not happen after splitting; mark honestly.
                unresolved.push((ulo, uhi));
                continue;
            }
        };
        let exit_a = project_to_edge(poly, edge, &pa, dv);
        let exit_b = project_to_edge(poly, edge, &pb, dv);
        let (exit_a, exit_b) = match (exit_a, exit_b) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                unresolved.push((ulo, uhi));
                continue;
            }
        };
        let er = EdgeRef::new(st.poly, edge);
        let data = s.pair_data(er);
        let factor = &st.factor * &data.dilation;

        // Landing on the transversal?
        let landing = if let Some(&i) = covered.get(&er) {
            // Crossing the transversal from this side.
            Some((i, exit_a.clone(), exit_b.clone(), st.poly))
        } else {
            covered
                .get(&data.partner)
                .map(|&i| (i, data.map.apply(&exit_a), data.map.apply(&exit_b), data.partner.poly))
        };
        if let Some((idx, la, lb, lpoly)) = landing {
            let e = transversal.chain[idx];
            let p = s.polygon(lpoly);
            let evec = p.edge_vec(e.edge);
            let t_of = |pt: &PlaneVec| -> Real { &(pt - p.tail(e.edge)).dot(&evec) / &evec.norm2() };
            let (mut ia, mut ib) = (
                transversal.param_of(idx, &t_of(&la)),
                transversal.param_of(idx, &t_of(&lb)),
            );
            if ia > ib {
                std::mem::swap(&mut ia, &mut ib);
            }
            let slope = &(&ib - &ia) / &(&uhi - &ulo);
            branches.push(ReturnBranch {
                dom: (ulo, uhi),
                img: (ia, ib),
                slope,
                crossings: st.crossings + 1,
            });
            continue;
        }
        queue.push(IntervalState {
            ulo,
            uhi,
            poly: data.partner.poly,
            a: data.map.apply(&exit_a),
            b: data.map.apply(&exit_b),
            factor,
            crossings: st.crossings + 1,
        });
    }
}

/// Intersection of the ray p + t·d with the line of edge `edge`.
fn project_to_edge(
    poly: &crate::surface::Polygon,
    edge: usize,
    p: &PlaneVec,
    d: &PlaneVec,
) -> Option<PlaneVec> {
    let a = poly.tail(edge);
    let e = poly.edge_vec(edge);
    let denom = d.cross(&e);
    if denom.is_zero() {
        return None;
    }
    let t = &(a - p).cross(&e) / &denom;
    if t.is_negative() {
        return None;
    }
    Some(p + &d.scale(&t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_evaluates_to_itself() {
        let t = Aiet::identity(Real::from_int(1));
        let x = Real::ratio(2, 7);
        assert_eq!(t.evaluate(&x).unwrap(), x);
        assert!(t.is_valid());
        assert_eq!(t.evaluate(&Real::one()), Err(AietError::OutOfDomain));
    }

    #[test]
    fn disco_slopes_and_validity() {
        let t = Aiet::disco(&Real::from_int(1), &Real::from_int(2));
        assert!(t.is_valid());
        // Branch 1 maps [0,1) onto bottom slot 2 with slope 2.
        assert_eq!(t.slope(0), Real::from_int(2));
        assert_eq!(t.evaluate(&Real::zero()).unwrap(), Real::one());
        assert_eq!(t.slope(1), Real::ratio(1, 2));
        assert_eq!(t.slope(2), Real::ratio(1, 2));
        assert_eq!(t.slope(3), Real::from_int(2));
    }

    #[test]
    fn mismatched_sums_are_invalid() {
        let t = Aiet {
            top: vec![Real::one(), Real::one()],
            bottom: vec![Real::one(), Real::from_int(2)],
            perm: vec![1, 0],
        };
        assert!(!t.is_valid());
    }

    #[test]
    fn identity_orbit_is_periodic() {
        let t = Aiet::identity(Real::one());
        match orbit_classify(&t, &Real::ratio(1, 3), 10).unwrap() {
            OrbitClass::Periodic { period, multiplier } => {
                assert_eq!(period, 1);
                assert_eq!(multiplier, Real::one());
            }
            other => panic!("expected periodic, got {other:?}"),
        }
    }

    #[test]
    fn zero_budget_is_unresolved() {
        let t = Aiet::identity(Real::one());
        assert!(matches!(
            orbit_classify(&t, &Real::ratio(1, 3), 0).unwrap(),
            OrbitClass::Unresolved
        ));
    }

    #[test]
    fn contraction_toward_endpoint_fixed_point() {
        // Two branches with slopes 2 and 1/2 on [0,3): x ↦ 2x on [0,1),
        // x ↦ 2 + (x-1)/2 on [1,3). Solving the contracting branch equation
        // x = 2 + (x-1)/2 by hand gives the fixed point x = 3 ≡ 0, reached
        // with one-sided derivative 1/2.
        let t = Aiet::new(
            vec![Real::one(), Real::from_int(2)],
            vec![Real::from_int(2), Real::one()],
            vec![0, 1],
        )
        .unwrap();
        match orbit_classify(&t, &Real::ratio(1, 5), 64).unwrap() {
            OrbitClass::AttractedToPeriodic { period, multiplier, limit } => {
                assert_eq!(period, 1);
                assert_eq!(multiplier, Real::ratio(1, 2));
                assert_eq!(limit, Real::from_int(3));
            }
            other => panic!("expected attraction, got {other:?}"),
        }
    }

    #[test]
    fn cycle_notation_round_trip() {
        let perm = vec![1, 0, 3, 2];
        let s = cycles_to_string(&perm);
        assert_eq!(s, "(1,2)(3,4)");
        assert_eq!(parse_cycles(&s, 4).unwrap(), perm);
        assert_eq!(parse_cycles("id", 3).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn aiet_text_round_trip() {
        let t = Aiet::disco(&Real::from_int(1), &Real::from_int(2));
        let text = t.to_text();
        assert_eq!(Aiet::parse(&text).unwrap(), t);
    }
}
