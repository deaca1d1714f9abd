use dsurf::builders::two_chamber;
use dsurf::flow::*;
use dsurf::geom::{DirectionVec, Mat2};
use dsurf::veech::*;

fn main() {
    let s = two_chamber();
    let rep = s.validation_report();
    println!("genus {} ks {:?} classes {}", rep.genus, rep.singular_ks(), rep.vertex_classes.len());
    let budget = TraceBudget::new(400);
    for (dx, dy) in [(0i64,1i64),(1,0),(1,1),(2,1),(4,1),(5,2),(3,7),(2,3),(1,3),(2,7)] {
        let d = DirectionVec::from_ints(dx, dy);
        let c = classify_direction(&s, &d, budget);
        println!("({dx},{dy}): {} {:?}", c.label(), c.factor().map(|f| f.to_string()));
    }
    println!("-Id: {:?}", veech_contains(&s, &Mat2::from_ints(-1,0,0,-1)));
    println!("L:   {:?}", veech_contains(&s, &Mat2::from_ints(1,0,1,1)));
}
