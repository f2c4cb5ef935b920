//! End-to-end acceptance checks. Every count is compared exactly. Prints one
//! PASS/FAIL line per criterion and exits nonzero if any fails.

mod common;

use std::process::Command;
use std::time::Instant;

use rand::Rng;
use splitcircle::census::{binomial, build_census, count_point_splitting, degenerate_census, predicted_count};
use splitcircle::deformation::{check_exchange_law, run_with_jitter};
use splitcircle::generators::{
    construct_degenerate_quad, construct_recursive, generate_random_general_position, nudge_into_general_position,
    rng_for, verify_recursions,
};
use splitcircle::geometry::{int, ratio};
use splitcircle::{Point, PointSet};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus() -> Vec<(usize, u64, PointSet)> {
    common::corpus(8, 25)
}

fn point_splitting_is_n_squared(corpus: &[(usize, u64, PointSet)]) -> Outcome {
    for (n, seed, set) in corpus {
        let got = count_point_splitting(set).map_err(|e| e.to_string())?;
        ensure(got == n * n, || format!("n={n} seed={seed}: {got} != {}", n * n))?;
    }
    Ok(format!("{} sets, n = 1..8", corpus.len()))
}

fn classes_match(corpus: &[(usize, u64, PointSet)]) -> Outcome {
    let mut classes = 0;
    for (n, seed, set) in corpus {
        let census = build_census(set).map_err(|e| e.to_string())?;
        for a in 0..*n {
            let b = 2 * n - 2 - a;
            if a < b {
                let (got, want) = (census.count_unordered(a, b), 2 * (a + 1) * (b + 1));
                ensure(got == want, || format!("n={n} seed={seed} {{{a},{b}}}: {got} != {want}"))?;
                ensure(want == predicted_count(*n, a, b), || "prediction table disagrees".into())?;
                classes += 1;
            }
        }
        let total: usize = census.by_signature.values().sum();
        ensure(total == binomial(2 * n + 1, 3), || format!("n={n} seed={seed}: total {total}"))?;
    }
    Ok(format!("{classes} classes, closure on {} sets", corpus.len()))
}

fn pairs_odd(corpus: &[(usize, u64, PointSet)]) -> Outcome {
    let mut pairs = 0;
    for (n, seed, set) in corpus {
        let census = build_census(set).map_err(|e| e.to_string())?;
        let counts = census.pair_counts();
        ensure(counts.len() == binomial(2 * n + 1, 2), || "missing pairs".into())?;
        for (&(i, j), &c) in &counts {
            ensure(c % 2 == 1, || format!("n={n} seed={seed} pair ({i},{j}): {c}"))?;
        }
        let sum: usize = counts.values().sum();
        ensure(sum == 3 * n * n, || format!("n={n} seed={seed}: pair sum {sum}"))?;
        pairs += counts.len();
    }
    Ok(format!("{pairs} pairs"))
}

fn recursive_construction() -> Outcome {
    for n in 2..=6 {
        let config = construct_recursive(n, 1).map_err(|e| e.to_string())?;
        let checks = config.check();
        ensure(checks.all(), || format!("n={n}: {checks:?}"))?;
    }
    let report = verify_recursions(6, 1).map_err(|e| e.to_string())?;
    if let Some(bad) = report.checks.iter().find(|c| !c.pass) {
        return Err(format!("n={} {}: {} != {}", bad.n, bad.identity, bad.lhs, bad.rhs));
    }
    Ok(format!("n = 2..6, {} identities", report.checks.len()))
}

fn degenerate_quads() -> Outcome {
    let mut perturbed = 0;
    for seed in 0..20 {
        for (interior, want) in [(1, 8), (0, 9)] {
            let config = construct_degenerate_quad(interior, seed).map_err(|e| e.to_string())?;
            let d = degenerate_census(&config.set).map_err(|e| e.to_string())?;
            let got = d.point_splitting();
            ensure(got == want, || format!("interior={interior} seed={seed}: {got} != {want}"))?;
            for &p in &config.circle_points {
                let moved = nudge_into_general_position(&config.set, p, &ratio(1, 1_000_000))
                    .map_err(|e| e.to_string())?;
                let after = count_point_splitting(&moved).map_err(|e| e.to_string())?;
                ensure(after == 9, || format!("seed={seed} moving {p}: {after}"))?;
                perturbed += 1;
            }
        }
    }
    Ok(format!("40 sets, {perturbed} perturbations"))
}

/// The fixed deformation corpus: 7, 9 or 11 points, one point sent to a
/// seeded random target.
fn deformation_instances() -> Vec<(u64, PointSet, usize, Point)> {
    (0..50u64)
        .map(|seed| {
            let count = 7 + 2 * (seed % 3) as usize;
            let set = generate_random_general_position(count, 9_000 + seed, 1000).unwrap();
            let mut rng = rng_for(seed);
            let target = Point::from_integers(rng.gen_range(-1000..=1000), rng.gen_range(-1000..=1000));
            (seed, set, seed as usize % count, target)
        })
        .collect()
}

fn deformation_invariance(small_sets: &mut Vec<PointSet>) -> Outcome {
    let (mut rich, mut events) = (0, 0);
    for (seed, set, moving, target) in deformation_instances() {
        let (path, log) = run_with_jitter(&set, moving, &target, seed, 32).map_err(|e| format!("seed={seed}: {e}"))?;
        ensure(log.censuses_constant(), || format!("seed={seed}: census changed"))?;
        for e in &log.events {
            check_exchange_law(e).map_err(|err| format!("seed={seed}: {err}"))?;
        }
        if log.circle_event_count() >= 3 {
            rich += 1;
        }
        events += log.events.len();
        if set.len() <= 9 {
            small_sets.push(PointSet::new(path.points_at(&int(0))).unwrap());
            small_sets.push(PointSet::new(path.points_at(&int(1))).unwrap());
        }
    }
    ensure(rich >= 10, || format!("only {rich} instances with 3 or more circle events"))?;
    Ok(format!("50 paths, {events} events, {rich} with 3+ circle events"))
}

fn oracle_equivalence(corpus: &[(usize, u64, PointSet)], extra: &[PointSet]) -> Outcome {
    let mut sets: Vec<&PointSet> = corpus.iter().filter(|(n, _, _)| *n <= 4).map(|(_, _, s)| s).collect();
    let recursive: Vec<PointSet> = (2..=4).map(|n| construct_recursive(n, 1).unwrap().set).collect();
    sets.extend(&recursive);
    sets.extend(extra);
    for set in &sets {
        let census = build_census(set).map_err(|e| e.to_string())?;
        let oracle = common::oracle_census(set.points());
        ensure(census.by_signature == oracle.classes, || format!("class mismatch on\n{}", set.to_text()))?;
        for r in &census.records {
            let want = oracle.signatures[&r.triple];
            ensure((r.signature.inside, r.signature.outside) == want, || {
                format!("triple {:?} mismatch on\n{}", r.triple, set.to_text())
            })?;
        }
    }
    let mut degenerate = 0;
    for seed in 0..20 {
        for interior in [0, 1] {
            let config = construct_degenerate_quad(interior, seed).unwrap();
            let got = degenerate_census(&config.set).map_err(|e| e.to_string())?.point_splitting();
            let want = common::oracle_degenerate_count(config.set.points());
            ensure(got == want, || format!("degenerate seed={seed}: {got} != {want}"))?;
            degenerate += 1;
        }
    }
    Ok(format!("{} censuses, {degenerate} degenerate counts", sets.len()))
}

fn cli_reproducible() -> Outcome {
    let args = ["verify", "--n-max", "4", "--trials", "10", "--seed", "7", "--reproducible"];
    let run = || Command::new(env!("CARGO_BIN_EXE_splitcircle")).args(args).output().map_err(|e| e.to_string());
    let (first, second) = (run()?, run()?);
    ensure(first.status.code() == Some(0), || format!("exit {:?}", first.status.code()))?;
    ensure(second.status.code() == Some(0), || format!("exit {:?}", second.status.code()))?;
    ensure(!first.stdout.is_empty() && first.stdout == second.stdout, || "outputs differ".into())?;
    Ok(format!("{} identical bytes", first.stdout.len()))
}

fn main() {
    let corpus = corpus();
    let mut small_sets = Vec::new();
    let mut failed = 0;
    let mut report = |id: usize, name: &str, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {id} {name} ({detail}; {secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL {id} {name}: {why}");
            }
        }
    };
    report(1, "point-splitting count is n^2", &mut || point_splitting_is_n_squared(&corpus));
    report(2, "unordered classes 2(a+1)(b+1)", &mut || classes_match(&corpus));
    report(3, "odd counts through every pair", &mut || pairs_odd(&corpus));
    report(4, "recursive construction and recurrences", &mut recursive_construction);
    report(5, "concyclic quadruple counts 8 and 9", &mut degenerate_quads);
    report(6, "deformation invariance and exchange laws", &mut || deformation_invariance(&mut small_sets));
    report(7, "independent oracle equivalence", &mut || oracle_equivalence(&corpus, &small_sets));
    report(8, "CLI reproducibility", &mut cli_reproducible);
    if failed > 0 {
        println!("{failed} of 8 criteria failed");
        std::process::exit(1);
    }
    println!("all 8 criteria passed");
}
