use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use splitcircle::generators::generate_random_general_position;
use splitcircle::PointSet;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_splitcircle"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("splitcircle-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_set(name: &str, set: &PointSet) -> String {
    let path = scratch(name);
    std::fs::write(&path, set.to_text()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn gen_random_round_trips() {
    let out_path = scratch("random7.txt");
    let out = run(&["gen", "random", "--count", "7", "--seed", "1", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(text.lines().count(), 7);
    let set = PointSet::from_text(&text).unwrap();
    assert!(set.is_general_position());
    assert_eq!(set, generate_random_general_position(7, 1, 1000).unwrap());

    // without --out the points go to standard output
    let out = run(&["gen", "random", "--count", "7", "--seed", "1"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), text);
}

#[test]
fn gen_recursive_and_degenerate_sidecars() {
    let out_path = scratch("rec3.txt");
    let out = run(&["gen", "section3", "--n", "3", "--seed", "1", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["o_index"], 0);
    assert_eq!(v["result"]["q_index"], 6);
    assert_eq!(std::fs::read_to_string(&out_path).unwrap().lines().count(), 7);

    let out_path = scratch("deg1.txt");
    let out = run(&["gen", "degenerate", "--interior", "1", "--seed", "1", "--out", out_path.to_str().unwrap()]);
    let v = json(&out);
    assert_eq!(v["result"]["circle_points"].as_array().unwrap().len(), 4);
    assert_eq!(std::fs::read_to_string(&out_path).unwrap().lines().count(), 7);

    let out = run(&["gen", "degenerate", "--interior", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn census_json_and_csv() {
    let five = write_set("five.txt", &generate_random_general_position(5, 2, 1000).unwrap());
    let out = run(&["census", &five]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "PASS");
    assert_eq!(v["result"]["point_splitting"], 4);
    let rows = v["result"]["signatures"].as_array().unwrap();
    assert_eq!((rows[0]["a"].clone(), rows[0]["count"].clone(), rows[0]["predicted"].clone()), (0.into(), 6.into(), 6.into()));
    assert_eq!((rows[1]["a"].clone(), rows[1]["count"].clone(), rows[1]["predicted"].clone()), (1.into(), 4.into(), 4.into()));
    assert_eq!(v["input_digest"].as_str().unwrap().len(), 64);

    let out = run(&["--format", "csv", "census", &five]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "a,b,count,predicted,match\n0,2,6,6,true\n1,1,4,4,true\ntotal,,10,10,true\n"
    );

    let nine = write_set("nine.txt", &generate_random_general_position(9, 4, 1000).unwrap());
    let v = json(&run(&["census", &nine]));
    assert_eq!((v["status"].clone(), v["result"]["point_splitting"].clone()), ("PASS".into(), 16.into()));
}

#[test]
fn census_errors() {
    let collinear = scratch("collinear.txt");
    std::fs::write(&collinear, "0 0\n1 1\n2 2\n5 0\n0 7\n3 -4\n9 1\n").unwrap();
    let out = run(&["census", collinear.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["status"], "ERROR");
    assert!(v["result"]["error"].as_str().unwrap().contains("COLLINEAR_TRIPLE(0,1,2)"));

    let bad = scratch("bad.txt");
    std::fs::write(&bad, "# header\n0 0\n1 x\n").unwrap();
    let v = json(&run(&["census", bad.to_str().unwrap()]));
    assert!(v["result"]["error"].as_str().unwrap().contains("line 3"), "{v}");
}

#[test]
fn pairs_counts_are_odd() {
    let seven = write_set("seven.txt", &generate_random_general_position(7, 8, 1000).unwrap());
    let out = run(&["pairs", &seven]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let pairs = v["result"]["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 21);
    assert!(pairs.iter().all(|p| p["count"].as_u64().unwrap() % 2 == 1));
    assert_eq!(v["result"]["sum"], 27);
}

#[test]
fn verify_reports() {
    let out = run(&["verify", "--n-max", "4", "--trials", "20", "--seed", "7", "--reproducible"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["result"]["censuses_checked"].as_u64().unwrap() >= 80);
    assert!(v.get("timestamp").is_none());

    let v = json(&run(&["verify", "--n-max", "1", "--trials", "1"]));
    assert_eq!(v["status"], "PASS");
    assert_eq!(v["result"]["per_n"][0]["observed"]["1"], 1);

    let v = json(&run(&["verify", "--n-max", "0"]));
    assert_eq!(v["status"], "ERROR");

    let stamped = json(&run(&["verify", "--n-max", "1", "--trials", "1"]));
    assert!(stamped["timestamp"].is_u64());
}

#[test]
fn degenerate_reports() {
    for (interior, count) in [("1", 8), ("0", 9)] {
        let path = scratch(&format!("deg{interior}.txt"));
        run(&["gen", "degenerate", "--interior", interior, "--seed", "4", "--out", path.to_str().unwrap()]);
        let out = run(&["degenerate", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        let v = json(&out);
        assert_eq!(v["result"]["point_splitting"], count);
        assert_eq!(v["result"]["concyclic"][0]["points"], serde_json::json!([0, 1, 2, 3]));
    }
    let gp = write_set("gp7.txt", &generate_random_general_position(7, 3, 1000).unwrap());
    let v = json(&run(&["degenerate", &gp]));
    assert_eq!(v["result"]["point_splitting"], 9);
    assert!(v["result"]["notice"].is_string());
}

#[test]
fn deform_reports() {
    let line = scratch("line.txt");
    std::fs::write(&line, "0 1\n-100 0\n100 0\n7 300\n-50 -400\n60 -350\n-80 310\n").unwrap();
    let line = line.to_str().unwrap();
    let out = run(&["deform", line, "--moving", "0", "--target-x", "0", "--target-y", "-1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["result"]["log"]["events"].as_array().unwrap().len(), 1);
    assert_eq!(v["result"]["log"]["events"][0]["boundary"]["kind"], "LINE");
    assert_eq!(v["result"]["censuses_constant"], true);

    let seven = write_set("walk.txt", &generate_random_general_position(7, 1, 1000).unwrap());
    let out = run(&["deform", &seven, "--moving", "2", "--target-x", "-900", "--target-y", "850", "--jitter", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["result"]["circle_events"].as_u64().unwrap() >= 1);

    let v = json(&run(&["deform", line, "--moving", "0", "--target-x", "200", "--target-y", "1/2"]));
    assert_eq!(v["status"], "PASS");

    // endpoint on the line through points 1 and 2
    let out = run(&["deform", line, "--moving", "0", "--target-x", "3", "--target-y", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out)["result"]["error"].as_str().unwrap().contains("endpoint"));

    let through = scratch("through.txt");
    std::fs::write(&through, "-10 1\n5 0\n0 5\n-5 -1\n40 -37\n").unwrap();
    let through = through.to_str().unwrap();
    let out = run(&["deform", through, "--moving", "0", "--target-x", "20", "--target-y", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert!(v["result"]["hint"].as_str().unwrap().contains("--jitter"));
    let out = run(&["deform", through, "--moving", "0", "--target-x", "20", "--target-y", "-1", "--jitter"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn out_flag_writes_report() {
    let five = write_set("five-out.txt", &generate_random_general_position(5, 2, 1000).unwrap());
    let report = scratch("report.json");
    let out = run(&["census", &five, "--out", report.to_str().unwrap(), "--reproducible"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["command"]["name"], "census");
}

#[test]
fn thread_cap_does_not_change_output() {
    let nine = write_set("nine-threads.txt", &generate_random_general_position(9, 6, 1000).unwrap());
    let one = bin().env("SPLITCIRCLE_THREADS", "1").args(["census", &nine, "--reproducible"]).output().unwrap();
    let auto = bin().env("SPLITCIRCLE_THREADS", "0").args(["census", &nine, "--reproducible"]).output().unwrap();
    assert_eq!(one.stdout, auto.stdout);
}
