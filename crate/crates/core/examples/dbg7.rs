use dsurf::builders::*;
use dsurf::cylinder::*;
use dsurf::flow::*;
use dsurf::geom::DirectionVec;
use dsurf::real::Real;

fn main() {
    let s = double_hopf_torus(&Real::from_int(2), &Real::from_int(2)).unwrap();
    println!("genus {} ks {:?}", s.genus(), s.validation_report().singular_ks());
    let budget = TraceBudget::new(600);
    for (dx, dy) in [(1i64,0i64),(0,1),(1,1),(2,1),(1,2),(-1,1),(3,1)] {
        let d = DirectionVec::from_ints(dx, dy);
        let cls = classify_direction(&s, &d, budget);
        print!("({dx},{dy}): {}", cls.label());
        let cores = direction_cores(&s, &d, budget);
        print!(" cores {}", cores.len());
        for c in &cores {
            match angular_extent(&s, c, budget) {
                Ok((th, lam)) => print!(" [ext {:.4} rad, λ {}]", th, lam),
                Err(e) => print!(" [ext err {e}]"),
            }
        }
        println!();
    }
    let pv = property_v(&s, 6, budget);
    println!("property_v holds: {} after {} dirs", pv.holds(), pv.directions_checked);
}
