//! Seven points with four of them on the unit circle. Whether the common
//! circle counts depends on what lies inside it, giving 8 or 9.

use splitcircle::census::{count_point_splitting, degenerate_census};
use splitcircle::generators::{construct_degenerate_quad, nudge_into_general_position};
use splitcircle::geometry::ratio;

fn main() -> splitcircle::Result<()> {
    for interior in [1, 0] {
        let config = construct_degenerate_quad(interior, 11)?;
        print!("{}", config.set.to_text());
        let d = degenerate_census(&config.set)?;
        for c in d.concyclic() {
            println!("circle through {:?}: {} inside, {} outside, counted {}", c.on_circle, c.inside, c.outside, c.qualifies);
        }
        println!("{} distinct point-splitting circles", d.point_splitting());
        let moved = nudge_into_general_position(&config.set, 0, &ratio(1, 1_000_000))?;
        println!("after nudging point 0: {}\n", count_point_splitting(&moved)?);
    }
    Ok(())
}
