use dsurf::builders::*;
use dsurf::geom::*;
use dsurf::real::Real;
use dsurf::surface::*;
use dsurf::flow::*;

fn main() {
    // Where does the double-hopf slit fail?
    let t1 = hopf_torus(&Real::from_int(2)).unwrap();
    let slit = Slit::new(0, PlaneVec::from_ratios(1,4,1,1), PlaneVec::from_ratios(3,4,1,1));
    let p = t1.polygon(0);
    println!("sector0 verts: {:?}", p.verts.iter().map(|v| v.to_string()).collect::<Vec<_>>());
    println!("locate from: {:?}", p.locate(&slit.from));
    println!("locate to: {:?}", p.locate(&slit.to));
    let d = DirectionVec::from_ints(1,0);
    println!("back exit: {:?}", ray_exit(&p.verts, &slit.from, &d.reversed()));
    println!("fwd exit: {:?}", ray_exit(&p.verts, &slit.to, &d));

    // Reverse trace on two-chamber
    let s = two_chamber();
    let start = SurfacePoint::new(0, PlaneVec::from_ratios(2,7,3,7));
    let dd = DirectionVec::from_ints(4,1);
    let fwd = trace(&s, &start, &dd, TraceBudget::new(12)).unwrap();
    println!("fwd crossings: {:?}", fwd.crossings.iter().map(|c| format!("{} t={} f={}", c.edge, c.t, c.factor)).collect::<Vec<_>>());
    let (poly, a, b) = fwd.segments.last().unwrap().clone();
    let mid = &a + &(&b - &a).scale(&Real::ratio(1,2));
    println!("back start: poly {} {}", poly, mid);
    let back = trace(&s, &SurfacePoint::new(poly, mid), &dd.reversed(), TraceBudget::new(fwd.crossings.len())).unwrap();
    println!("back crossings: {:?}", back.crossings.iter().map(|c| format!("{} t={} f={}", c.edge, c.t, c.factor)).collect::<Vec<_>>());
}
