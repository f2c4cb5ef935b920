//! Point-splitting circles through each pair of points. Every pair has an
//! odd number of them, so at least one.

use splitcircle::census::build_census;
use splitcircle::generators::generate_random_general_position;

fn main() -> splitcircle::Result<()> {
    let set = generate_random_general_position(9, 3, 1000)?;
    let census = build_census(&set)?;
    for ((i, j), count) in census.pair_counts() {
        let through: Vec<_> = census.through_pair(i, j).iter().map(|r| r.triple).collect();
        println!("({i},{j}) {count}: {through:?}");
    }
    println!("all odd: {}", census.pairs_all_odd());
    Ok(())
}
