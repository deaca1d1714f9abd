use dsurf::builders::two_chamber;
use dsurf::delaunay::*;
fn main() {
    let s = two_chamber();
    println!("gate...");
    let b = DelaunayBudget::default();
    match property_v_gate(&s, &b) {
        Ok(pv) => println!("gate ok, dirs {}", pv.directions_checked),
        Err(e) => println!("gate err: {e}"),
    }
    println!("decomp...");
    match delaunay_decomposition(&s) {
        Ok(d) => println!("cells {} edges {}", d.cells.len(), d.num_edges()),
        Err(e) => println!("err {e}"),
    }
}
