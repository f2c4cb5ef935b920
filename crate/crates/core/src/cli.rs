//! Command implementations behind the `splitcircle` binary. Each command
//! yields a [`RunReport`] whose status drives the process exit code.

use std::collections::BTreeMap;
use std::path::Path;

use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::census::{build_census, degenerate_census};
use crate::deformation::{run_with_jitter, ExchangeLaw};
use crate::error::{Error, Result};
use crate::generators::{
    construct_degenerate_quad, construct_recursive, generate_random_general_position, rng_for, verify_recursions,
};
use crate::geometry::{Point, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    fn from_pass(pass: bool) -> Status {
        if pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommandInfo {
    pub name: String,
    pub args: BTreeMap<String, String>,
}

impl CommandInfo {
    pub fn new(name: &str) -> Self {
        CommandInfo { name: name.to_string(), args: BTreeMap::new() }
    }

    pub fn arg(mut self, key: &str, value: impl ToString) -> Self {
        self.args.insert(key.to_string(), value.to_string());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: CommandInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    pub status: Status,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl RunReport {
    pub fn new(command: CommandInfo, input_digest: Option<String>, outcome: Result<(Status, Value)>) -> Self {
        let (status, result) = match outcome {
            Ok(done) => done,
            Err(e) => (Status::Error, json!({ "error": e.to_string() })),
        };
        RunReport { command, input_digest, status, result, timestamp: None }
    }

    pub fn with_timestamp(mut self, reproducible: bool) -> Self {
        if !reproducible {
            self.timestamp = std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .ok()
                .map(|d| d.as_secs());
        }
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Reads a point file, returning the set and the SHA-256 of its bytes.
pub fn read_point_file(path: &Path) -> Result<(PointSet, String)> {
    let bytes = std::fs::read(path)?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|e| Error::Parse { line: 0, message: format!("not UTF-8: {e}") })?;
    Ok((PointSet::from_text(&text)?, sha256_hex(&bytes)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    Random { count: usize, bound: i64 },
    Recursive { n: usize },
    Degenerate { interior: usize },
}

/// Generates a point set and its JSON sidecar.
pub fn generate(kind: GenKind, seed: u64) -> Result<(PointSet, Value)> {
    match kind {
        GenKind::Random { count, bound } => {
            let set = generate_random_general_position(count, seed, bound)?;
            let sidecar = json!({ "kind": "random", "count": count, "seed": seed, "bound": bound });
            Ok((set, sidecar))
        }
        GenKind::Recursive { n } => {
            let config = construct_recursive(n, seed)?;
            let sidecar = config.sidecar();
            Ok((config.set, sidecar))
        }
        GenKind::Degenerate { interior } => {
            let config = construct_degenerate_quad(interior, seed)?;
            let sidecar = config.sidecar();
            Ok((config.set, sidecar))
        }
    }
}

pub fn census_result(set: &PointSet) -> Result<(Status, Value)> {
    let census = build_census(set)?;
    let report = census.report();
    let summary = census.summary();
    let pass = summary.all_match() && report.pairs_odd && report.point_splitting == census.n * census.n;
    Ok((Status::from_pass(pass), serde_json::to_value(report).unwrap()))
}

pub fn census_csv(set: &PointSet) -> Result<(Status, String)> {
    let census = build_census(set)?;
    let summary = census.summary();
    Ok((Status::from_pass(summary.all_match()), summary.to_csv()))
}

pub fn pairs_result(set: &PointSet) -> Result<(Status, Value)> {
    let census = build_census(set)?;
    let counts = census.pair_counts();
    let n = census.n;
    let sum: usize = counts.values().sum();
    let all_odd = counts.values().all(|c| c % 2 == 1);
    let pairs: Vec<Value> = counts
        .iter()
        .map(|(&(i, j), &count)| json!({ "i": i, "j": j, "count": count }))
        .collect();
    let pass = all_odd && sum == 3 * n * n;
    Ok((
        Status::from_pass(pass),
        json!({ "n": n, "pairs": pairs, "all_odd": all_odd, "sum": sum, "expected_sum": 3 * n * n }),
    ))
}

pub fn verify_result(n_max: usize, trials: usize, seed: u64) -> Result<(Status, Value)> {
    if n_max < 1 || trials < 1 {
        return Err(Error::InvalidArgument("--n-max and --trials must be at least 1".into()));
    }
    let mut master = rng_for(seed);
    let (mut censuses, mut checks) = (0usize, 0usize);
    let mut failures = Vec::new();
    let mut per_n = Vec::new();
    for n in 1..=n_max {
        let count = 2 * n + 1;
        let mut observed = BTreeMap::new();
        for trial in 0..trials {
            let trial_seed: u64 = master.gen();
            let set = generate_random_general_position(count, trial_seed, 1000.max(count as i64))?;
            let census = build_census(&set)?;
            censuses += 1;
            let summary = census.summary();
            let mut problems = Vec::new();
            checks += 1;
            if census.point_splitting() != n * n {
                problems.push(format!("point-splitting count {} != {}", census.point_splitting(), n * n));
            }
            for row in &summary.rows {
                checks += 1;
                if !row.matches {
                    problems.push(format!("class {{{},{}}}: {} != {}", row.a, row.b, row.count, row.predicted));
                }
            }
            checks += 1;
            if summary.total != summary.expected_total {
                problems.push(format!("total {} != {}", summary.total, summary.expected_total));
            }
            let pair_counts = census.pair_counts();
            checks += pair_counts.len();
            let even: Vec<_> = pair_counts.iter().filter(|(_, c)| *c % 2 == 0).map(|(k, _)| *k).collect();
            if !even.is_empty() {
                problems.push(format!("pairs with an even count: {even:?}"));
            }
            *observed.entry(census.point_splitting()).or_insert(0usize) += 1;
            if !problems.is_empty() {
                failures.push(json!({
                    "n": n,
                    "trial": trial,
                    "seed": trial_seed,
                    "problems": problems,
                    "points": set.to_text(),
                }));
            }
        }
        per_n.push(json!({ "n": n, "expected": n * n, "observed": observed }));
    }
    let recursions = if n_max >= 2 {
        let report = verify_recursions(n_max, seed)?;
        checks += report.checks.len();
        for c in report.checks.iter().filter(|c| !c.pass) {
            failures.push(json!({ "recursion": c }));
        }
        serde_json::to_value(report).unwrap()
    } else {
        Value::Null
    };
    let status = Status::from_pass(failures.is_empty());
    Ok((
        status,
        json!({
            "n_max": n_max,
            "trials": trials,
            "seed": seed,
            "censuses_checked": censuses,
            "checks_run": checks,
            "per_n": per_n,
            "recursions": recursions,
            "failures": failures,
        }),
    ))
}

pub fn degenerate_result(set: &PointSet) -> Result<(Status, Value)> {
    if set.is_general_position() {
        let census = build_census(set)?;
        let count = census.point_splitting();
        return Ok((
            Status::from_pass(count == census.n * census.n),
            json!({
                "notice": "input is in general position; the standard census was used",
                "n": census.n,
                "point_splitting": count,
                "concyclic": Vec::<Value>::new(),
            }),
        ));
    }
    let d = degenerate_census(set)?;
    let concyclic: Vec<Value> = d
        .concyclic()
        .map(|c| json!({ "points": c.on_circle, "inside": c.inside, "outside": c.outside, "counted": c.qualifies }))
        .collect();
    let count = d.point_splitting();
    let one_quad = set.len() == 7 && d.concyclic().count() == 1 && d.concyclic().all(|c| c.on_circle.len() == 4);
    let status = if one_quad { Status::from_pass(count == 8 || count == 9) } else { Status::Pass };
    Ok((
        status,
        json!({
            "n": d.n,
            "point_splitting": count,
            "distinct_circles": d.circles.len(),
            "concyclic": concyclic,
        }),
    ))
}

/// Runs a deformation of `moving_index` towards `target`. With `jitter`, the
/// target is perturbed by seeded offsets until the path is generic.
pub fn deform_result(set: &PointSet, moving_index: usize, target: &Point, jitter: Option<u64>) -> Result<(Status, Value)> {
    let attempts = if jitter.is_some() { 64 } else { 1 };
    let (path, log) = match run_with_jitter(set, moving_index, target, jitter.unwrap_or(0), attempts) {
        Ok(done) => done,
        Err(e @ (Error::SimultaneousCrossing { .. } | Error::TangentContact { .. })) if jitter.is_none() => {
            return Ok((
                Status::Error,
                json!({ "error": e.to_string(), "hint": "rerun with --jitter to perturb the target" }),
            ));
        }
        Err(e) => return Err(e),
    };
    let laws: Vec<Value> = log
        .law_results()
        .into_iter()
        .map(|r| match r {
            Ok(ExchangeLaw::LineSwap) => json!("line_swap"),
            Ok(ExchangeLaw::CircleTrade) => json!("circle_trade"),
            Ok(ExchangeLaw::Conservation) => json!("conservation"),
            Err(e) => json!({ "violation": e.to_string() }),
        })
        .collect();
    let constant = log.censuses_constant();
    let pass = constant && log.all_laws_hold();
    Ok((
        Status::from_pass(pass),
        json!({
            "end_used": path.end(),
            "censuses_constant": constant,
            "line_events": log.line_event_count(),
            "circle_events": log.circle_event_count(),
            "laws": laws,
            "log": log,
        }),
    ))
}
