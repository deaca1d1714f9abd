use dsurf::builders::*;
use dsurf::cylinder::*;
use dsurf::flow::*;
use dsurf::geom::*;
use dsurf::real::Real;
use dsurf::surface::*;
use dsurf::aiet::{SideTransversal, first_return};

fn main() {
    let s = disco(&Real::from_int(1), &Real::from_int(2)).unwrap();
    let budget = TraceBudget::new(300);
    let d = DirectionVec::from_ints(0, 1);
    println!("classify vertical: {:?}", classify_direction(&s, &d, budget).label());
    for &(e, _) in s.pairs() {
        let evec = s.polygon(e.poly).edge_vec(e.edge);
        if evec.cross(d.vec()).is_zero() { println!("{e}: parallel"); continue; }
        let tv = SideTransversal::new(&s, vec![e]).unwrap();
        match first_return(&s, &tv, &d, 300) {
            Ok(ret) => {
                println!("{e}: len {} branches {:?} unresolved {}", tv.length(),
                    ret.branches.iter().map(|b| format!("[{},{}]->[{},{}] s={}", b.dom.0,b.dom.1,b.img.0,b.img.1,b.slope)).collect::<Vec<_>>(), ret.unresolved.len());
            }
            Err(e2) => println!("{e}: err {e2}"),
        }
    }
    // two-chamber slope 1/4 core
    let tc = two_chamber();
    let d41 = DirectionVec::from_ints(4, 1);
    let cores = direction_cores(&tc, &d41, budget);
    println!("tc cores: {}", cores.len());
    for c in &cores {
        println!("  core: factor {} crossings {:?} verdict {:?}", c.factor,
            c.crossings.iter().map(|x| format!("{} t={}", x.edge, x.t)).collect::<Vec<_>>(), c.verdict);
    }
}
