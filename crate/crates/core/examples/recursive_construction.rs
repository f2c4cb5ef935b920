//! A perturbed regular polygon around a center point with one far point on
//! the x-axis. The point-splitting circles split cleanly into those avoiding
//! the two extra points and those through both.

use splitcircle::census::build_census;
use splitcircle::generators::{construct_recursive, verify_recursions};

fn main() -> splitcircle::Result<()> {
    for n in 2..=5 {
        let config = construct_recursive(n, 7)?;
        let census = build_census(&config.set)?;
        let forms = config.form_counts(&census, n - 1, n - 1);
        println!(
            "n={n} epsilon={} far point at x={}: {} point-splitting ({} polygon-only, {} through center and far point)",
            config.epsilon,
            config.q_distance,
            census.point_splitting(),
            forms.polygon,
            forms.center_far,
        );
        println!("  checks {:?}", config.check());
    }
    for check in verify_recursions(5, 7)?.checks {
        println!("{:<26} n={} {} = {} {}", check.identity, check.n, check.lhs, check.rhs, if check.pass { "ok" } else { "MISMATCH" });
    }
    Ok(())
}
