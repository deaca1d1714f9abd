use dsurf::builders::*;
use dsurf::real::Real;
use dsurf::geom::PlaneVec;

fn main() {
    let t1 = hopf_torus(&Real::from_int(2)).unwrap();
    let t2 = hopf_torus(&Real::from_int(2)).unwrap();
    let slit = || Slit::new(0, PlaneVec::from_ratios(1,4,1,1), PlaneVec::from_ratios(3,4,1,1));
    match slit_glue(&t1, &slit(), &t2, &slit()) {
        Ok(s) => println!("ok genus {}", s.genus()),
        Err(e) => println!("err: {e}"),
    }
}
