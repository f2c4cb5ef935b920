//! Exact orientation and in-circle tests, including inputs where floating
//! point would have to guess.

use splitcircle::geometry::{in_circle, orientation, ratio, validate_general_position, Circle};
use splitcircle::{Point, PointSet};

fn main() -> splitcircle::Result<()> {
    let a = Point::from_integers(0, 0);
    let b = Point::from_integers(4, 0);
    let c = Point::from_integers(0, 4);
    println!("orientation(a, b, c) = {}", orientation(&a, &b, &c));
    println!("orientation(a, c, b) = {}", orientation(&a, &c, &b));

    // (4, 4) is exactly on the circle; the second point misses it by 10^-9
    let on = Point::from_integers(4, 4);
    let near = Point::new(ratio(4_000_000_001, 1_000_000_000), ratio(4, 1));
    println!("(4, 4) vs circle abc: {}", in_circle(&a, &b, &c, &on)?);
    println!("{near} vs circle abc: {}", in_circle(&a, &b, &c, &near)?);

    let circle = Circle::through(&a, &b, &c)?;
    println!("center {} radius^2 {}", circle.center, circle.radius_sq);

    let square = [a, b, c, on];
    println!("square: {}", validate_general_position(&square)?);

    let set = PointSet::from_text("# a kite\n0 0\n1/2 3\n-1/2 3\n0 -7/3\n")?;
    print!("{}", set.to_text());
    println!("kite: {}", set.gp_status());
    Ok(())
}
