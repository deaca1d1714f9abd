use dsurf::builders::two_chamber;
use dsurf::delaunay::*;
use dsurf::geom::Mat2;

fn main() {
    let s = two_chamber();
    let m = Mat2::from_ints(-1, 0, 0, -1);
    let si = s.gl2_act(&m).unwrap();
    for (name, surf) in [("orig", &s), ("neg", &si)] {
        let d = delaunay_decomposition(surf).unwrap();
        println!("== {name}: {} cells, {} edges, {} flips", d.cells.len(), d.num_edges(), d.flips_used);
        for (i, c) in d.cells.iter().enumerate() {
            println!("  cell {i}: verts {:?} r2 {}", c.verts.iter().map(|v| v.to_string()).collect::<Vec<_>>(), c.radius2);
        }
        let mut adj: Vec<_> = d.adjacency.iter().collect();
        adj.sort_by_key(|(k, _)| **k);
        for (k, (k2, m)) in adj {
            println!("  side {:?} -> {:?} via a={}", k, k2, m.a);
        }
    }
}
