use dsurf::builders::two_chamber;
use dsurf::delaunay::*;
use dsurf::geom::{Mat2, PosAffineMap};
use dsurf::real::EPS;
use std::collections::VecDeque;

fn cell_norm(a: &DelaunayCell, b: &DelaunayCell, rot: usize) -> Option<PosAffineMap> {
    let k = a.nu();
    if b.nu() != k { return None; }
    let map = PosAffineMap::mapping_segment(&b.verts[rot % k], &b.verts[(rot + 1) % k], &a.verts[0], &a.verts[1])?;
    for i in 0..k {
        let img = map.apply(&b.verts[(i + rot) % k]);
        if img != a.verts[i] && !img.close_to(&a.verts[i], EPS) { return None; }
    }
    Some(map)
}

fn main() {
    let s = two_chamber();
    let m = Mat2::from_ints(-1, 0, 0, -1);
    let si = s.gl2_act(&m).unwrap();
    let d1 = delaunay_decomposition(&si).unwrap(); // image
    let d2 = delaunay_decomposition(&s).unwrap();  // original
    let n = d1.cells.len();
    // try anchor (0 <- c2=3, rot 0) as hand-derived
    for anchor2 in 0..n {
        for rot0 in 0..d2.cells[anchor2].nu() {
            let Some(m0) = cell_norm(&d1.cells[0], &d2.cells[anchor2], rot0) else { continue };
            println!("anchor ok: d1[0] <- d2[{anchor2}], rot {rot0}, eta a={} b={}", m0.a, m0.b);
            // propagate once by hand
            let mut assignment: Vec<Option<(usize, usize, PosAffineMap)>> = vec![None; n];
            assignment[0] = Some((anchor2, rot0, m0));
            let mut used2 = vec![false; n];
            used2[anchor2] = true;
            let mut q = VecDeque::from([0usize]);
            let mut ok = true;
            'outer: while let Some(c1) = q.pop_front() {
                let (c2, rot, eta) = assignment[c1].clone().unwrap();
                let k = d1.cells[c1].nu();
                for side in 0..k {
                    let ((n1, j1), m1) = &d1.adjacency[&(c1, side)];
                    let side2 = (side + rot) % k;
                    let ((n2, j2), m2) = &d2.adjacency[&(c2, side2)];
                    let eta_n = m1.compose(&eta).compose(&m2.invert());
                    let kn = d1.cells[*n1].nu();
                    let rot_n = (j2 + kn - (j1 % kn)) % kn;
                    match &assignment[*n1] {
                        Some((c2x, rotx, etax)) => {
                            if *c2x != *n2 || *rotx != rot_n || !(etax.a.close_to(&eta_n.a, EPS) && etax.b.close_to(&eta_n.b, EPS)) {
                                println!("  conflict at d1[{c1}] side {side}: n1={n1} existing {:?} vs ({n2},{rot_n}) eta_n a={} b={}", (c2x, rotx), eta_n.a, eta_n.b);
                                ok = false; break 'outer;
                            }
                        }
                        None => {
                            let bad = (0..kn).find(|&i| {
                                let img = eta_n.apply(&d2.cells[*n2].verts[(i + rot_n) % kn]);
                                img != d1.cells[*n1].verts[i] && !img.close_to(&d1.cells[*n1].verts[i], EPS)
                            });
                            if used2[*n2] || bad.is_some() {
                                println!("  fail at d1[{c1}] side {side} -> n1={n1}: candidate d2[{n2}] rot {rot_n}, used2 {} bad-vertex {:?} (j1={j1} j2={j2})", used2[*n2], bad);
                                ok = false; break 'outer;
                            }
                            assignment[*n1] = Some((*n2, rot_n, eta_n));
                            used2[*n2] = true;
                            q.push_back(*n1);
                        }
                    }
                }
            }
            println!("  result: {}", ok && assignment.iter().all(|a| a.is_some()));
        }
    }
}
