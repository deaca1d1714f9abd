use dsurf::builders::two_chamber;
use dsurf::delaunay::*;
use dsurf::surface::SurfacePoint;

fn main() {
    let s = two_chamber();
    match delaunay_decomposition(&s) {
        Ok(d) => println!("cells {}", d.cells.len()),
        Err(e) => println!("err {e}"),
    }
    // Probe near the bad cell: reproduce its claimed circumcenter region.
    // Print the probe at a few points to understand.
    for (px, py, poly) in [(5, 8, 1usize), (3, 8, 1)] {
        let x = SurfacePoint::new(poly, dsurf::geom::PlaneVec::from_ratios(px, 16, py, 16));
        match max_disk(&s, &x, 40_000) {
            Ok(p) => println!("probe poly{poly} ({px}/16,{py}/16): r2 {} nu {} contacts {:?}", p.radius2, p.nu(),
                p.contacts.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
            Err(e) => println!("probe err {e}"),
        }
    }
}
