//! Slide one point across the plane and watch circles trade signatures at
//! every line and circle it crosses while the census stays put.

use splitcircle::deformation::{check_exchange_law, run_with_jitter, Boundary};
use splitcircle::generators::generate_random_general_position;
use splitcircle::Point;

fn main() -> splitcircle::Result<()> {
    let set = generate_random_general_position(7, 5, 1000)?;
    let target = Point::from_integers(-950, 900);
    let (path, log) = run_with_jitter(&set, 0, &target, 5, 16)?;
    println!("moving point 0 from {} to {}", path.start(), path.end());
    for e in &log.events {
        let law = check_exchange_law(e)?;
        let (lo, hi) = (&e.root_interval.lo, &e.root_interval.hi);
        let arc = match (e.boundary, e.arc_label) {
            (Boundary::Circle(_), Some([i, j])) => format!(" via arc {i}-{j}"),
            _ => String::new(),
        };
        println!("t in [{lo}, {hi}] {} {:?}{arc}: {law:?}", e.boundary, e.direction);
        for c in &e.affected {
            let (b, a) = (c.before, c.after);
            println!("    {:?} ({}, {}) -> ({}, {})", c.triple, b.inside, b.outside, a.inside, a.outside);
        }
    }
    let counts: Vec<_> = log.checkpoints.iter().map(|c| c.point_splitting).collect();
    println!("point-splitting count at each checkpoint: {counts:?}");
    println!("census constant: {}", log.censuses_constant());
    Ok(())
}
