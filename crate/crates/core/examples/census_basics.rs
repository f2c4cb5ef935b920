//! Census of a random set: every circle through three points, grouped by how
//! many points it has inside and outside.

use splitcircle::census::build_census;
use splitcircle::generators::generate_random_general_position;

fn main() -> splitcircle::Result<()> {
    for count in [3, 5, 7, 9, 11] {
        let set = generate_random_general_position(count, 42, 1000)?;
        let census = build_census(&set)?;
        let summary = census.summary();
        println!("{count} points: {} point-splitting circles", census.point_splitting());
        print!("{}", summary.to_csv());
        println!();
    }
    Ok(())
}
