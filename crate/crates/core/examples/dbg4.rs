use dsurf::builders::two_chamber;
use dsurf::flow::*;
use dsurf::geom::DirectionVec;

fn main() {
    let s = two_chamber();
    let budget = TraceBudget::new(400);
    for (dx, dy) in [(0i64,1i64),(0,-1),(1,0),(1,1),(2,1),(1,2),(3,1),(2,3),(3,2),(7,2),(4,1),(5,2),(3,7),(1,4),(2,5),(8,3),(1,3),(2,7)] {
        let d = DirectionVec::from_ints(dx, dy);
        let c = classify_direction(&s, &d, budget);
        println!("({dx},{dy}): {} factor {:?}", c.label(), c.factor().map(|f| f.to_string()));
    }
}
