use dsurf::builders::*;
use dsurf::cylinder::*;
use dsurf::flow::*;
use dsurf::geom::DirectionVec;
use dsurf::real::Real;

fn main() {
    let s = double_hopf_torus(&Real::from_int(2), &Real::from_int(2)).unwrap();
    let budget = TraceBudget::new(600);
    let d = DirectionVec::from_ints(2, 1);
    let cores = direction_cores(&s, &d, budget);
    let core = &cores[0];
    println!("core crossings: {:?} factor {}", core.crossings.iter().map(|c| c.edge.to_string()).collect::<Vec<_>>(), core.factor);
    let theta0 = core.direction.angle_f64();
    for off in [0.1f64, 0.3, 0.392, 0.41, 0.5, 0.8, 1.2] {
        let scale = 1_000_000.0;
        let phi = DirectionVec::from_ints(((theta0+off).cos()*scale) as i64, ((theta0+off).sin()*scale) as i64);
        let e0 = core.crossings[0].edge;
        let p = launch_point(&s, e0, &core.crossings[0].t, &phi);
        let tr = trace(&s, &p, &phi, budget).unwrap();
        match &tr.verdict {
            TraceVerdict::LimitCycle { cycle, factor, hits_vertex, .. } =>
                println!("off {off}: limitcycle f={factor} hv={hits_vertex} cycle={:?} crossings={}", cycle.iter().map(|e| e.to_string()).collect::<Vec<_>>(), tr.crossings.len()),
            other => println!("off {off}: {:?} crossings={}", discr(other), tr.crossings.len()),
        }
    }
}
fn discr(v: &TraceVerdict) -> String {
    match v {
        TraceVerdict::HitSingularity { singular, .. } => format!("HitSingularity(singular={singular})"),
        TraceVerdict::ClosedFlat { period } => format!("ClosedFlat({period})"),
        TraceVerdict::ClosedHyperbolic { period } => format!("ClosedHyperbolic({period})"),
        TraceVerdict::BudgetExceeded => "BudgetExceeded".into(),
        TraceVerdict::LimitCycle { .. } => "LimitCycle".into(),
    }
}
