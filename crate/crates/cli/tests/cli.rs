use std::process::{Command, Output};

use dyckperm::{generate_class, PatternBasis};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dyckperm")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn documented_examples() {
    let map = stdout(&["map", "2 4 1 3 7 5 9 6 8"]);
    assert!(map.lines().any(|l| l == "path: UUDUUDDDUUUDDUUD"), "{map}");
    assert_eq!(stdout(&["invert", "--class", "t1", "UUUDDUUD"]), "3 1 5 2 4\n");
    assert_eq!(stdout(&["enumerate", "--n", "4", "--basis", "t1", "--count"]), "20\n");
    assert_eq!(stdout(&["enumerate", "--n", "5", "--basis", "t1t2", "--count"]), "40\n");
}

#[test]
fn map_json_fields() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["map", "--format", "json", "3 1 2"])).unwrap();
    assert_eq!(v["path"], "UUUD");
    assert_eq!(v["t1"], true);
    assert_eq!(v["t2"], true);
    assert_eq!(v["kind"], "floating");
    assert_eq!(v["stats"]["asc"], 1);
    let outside: serde_json::Value = serde_json::from_str(&stdout(&["map", "--format", "json", "4 3 1 2 5"])).unwrap();
    assert_eq!(outside["path"], serde_json::Value::Null);
}

#[test]
fn enumerate_lists_in_order() {
    let out = stdout(&["enumerate", "--n", "3", "--basis", "custom:321"]);
    assert_eq!(out, "1 2 3\n1 3 2\n2 1 3\n2 3 1\n3 1 2\n");
}

#[test]
fn dist_formats() {
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["dist", "--n", "4", "--basis", "t1", "--stats", "head"])).unwrap();
    assert_eq!(json["n"], 4);
    assert_eq!(json["basis"], "t1");
    let counts: Vec<&str> = json["entries"].as_array().unwrap().iter().map(|e| e["count"].as_str().unwrap()).collect();
    assert_eq!(counts, ["6", "6", "4", "4"]);
    let csv = stdout(&["dist", "--n", "2", "--basis", "t2", "--stats", "asc", "--format", "csv"]);
    assert_eq!(csv, "asc,count\n0,1\n1,1\n");
}

#[test]
fn series_dump() {
    let out = stdout(&["series", "--name", "N", "--trunc", "3"]);
    let x3: Vec<&str> = out.lines().filter(|l| l.starts_with("x^3")).collect();
    assert_eq!(x3, ["x^3 z^1 : 1/1", "x^3 z^2 : 3/1", "x^3 z^3 : 1/1"]);
    assert!(out.starts_with("x^0 z^0 : 1/1\n"));
}

#[test]
fn verify_passes() {
    let out = stdout(&["verify", "--max-n", "5"]);
    assert!(out.contains("PASS intersection-size [n=2..5]"), "{out}");
    assert!(out.contains("ascent tables first differ at n=4"));
}

#[test]
fn exit_codes() {
    for args in [
        vec!["map", "1 1 2"],
        vec!["map", "0 1"],
        vec!["invert", "--class", "t3", "UD"],
        vec!["invert", "--class", "t1", "UDD"],
        vec!["invert", "--class", "t1", "UUU"],
        vec!["dist", "--n", "3", "--basis", "t1", "--stats", "bogus"],
        vec!["series", "--name", "Q"],
        vec!["enumerate", "--n", "3"],
        vec!["verify", "--max-n", "2"],
        vec![],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["dist", "--n", "6", "--basis", "t2", "--stats", "asc,lmax,pos_max"],
        vec!["series", "--name", "J", "--trunc", "6"],
        vec!["enumerate", "--n", "5", "--basis", "t1"],
        vec!["verify", "--max-n", "4", "--format", "json"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout, "{args:?}");
    }
}

/// `map` then `invert` on every member of both classes up to size 8.
#[test]
fn map_invert_round_trip() {
    let mut jobs = Vec::new();
    for (class, basis) in [("t1", PatternBasis::t1()), ("t2", PatternBasis::t2())] {
        for n in 1..=8 {
            jobs.extend(generate_class(n, &basis).map(|s| (class, s.to_string())));
        }
    }
    let workers = std::thread::available_parallelism().map_or(4, |n| n.get());
    let chunk = jobs.len().div_ceil(workers);
    std::thread::scope(|scope| {
        for part in jobs.chunks(chunk) {
            scope.spawn(move || {
                for (class, perm) in part {
                    let v: serde_json::Value =
                        serde_json::from_str(&stdout(&["map", "--format", "json", perm])).unwrap();
                    let path = v["path"].as_str().unwrap();
                    let back = stdout(&["invert", "--class", class, path]);
                    assert_eq!(back.trim_end(), perm, "{class} {perm} -> {path}");
                }
            });
        }
    });
}
