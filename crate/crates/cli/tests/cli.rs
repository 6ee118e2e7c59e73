use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lorenz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lorenz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = lorenz(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn build(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let path = path.to_str().unwrap();
    let mut all = vec!["atlas", "build", "--out", path];
    all.extend(args);
    let out = lorenz(&all);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    path.to_string()
}

#[test]
fn word_info_and_link_info() {
    let v = json(&["word", "info", "LRLRRRLRRR"]);
    assert_eq!(v["genus"], 5);
    assert_eq!(v["trip"], serde_json::json!([[5, 1], [7, 2]]));
    let link = json(&["word", "info", "LR", "LLR"]);
    assert_eq!(link["components"], 2);
    assert_eq!(link["genus"], Value::Null);
    assert!(link["linking"].is_array());
}

#[test]
fn conversions() {
    let b = json(&["convert", "LRLRL", "--to", "braid"]);
    assert_eq!(b["targets"], serde_json::json!([3, 4, 5, 1, 2]));
    let t = json(&["convert", "LRLRL", "--to", "tlink"]);
    assert_eq!(t["tlink"], serde_json::json!([[2, 3]]));
    let w = json(&["convert", "2,3", "--to", "word"]);
    assert_eq!(w["words"], serde_json::json!(["LLRLR"]));
    let profile = json(&["convert", "[[2,4],[3,2],[6,1],[8,2]]", "--to", "braid"]);
    assert_eq!(profile["n"], 17);
}

#[test]
fn jones_and_modular() {
    assert_eq!(
        json(&["jones", "3,4"])["jones"]["polynomial"],
        "t^3 + t^5 - t^8"
    );
    assert_eq!(
        json(&["modular", "encode", "LR"])["matrix"],
        serde_json::json!([[2, 1], [1, 1]])
    );
    assert_eq!(json(&["modular", "decode", "-3,-1,-2,-1"])["word"], "LRR");
    assert_eq!(json(&["modular", "rademacher", "LLR"])["rademacher"], 1);
}

#[test]
fn flow_itinerary_writes_trajectory() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("traj.csv");
    let v = json(&[
        "flow",
        "itinerary",
        "--seed-state",
        "10,10,27",
        "--skip",
        "0",
        "--steps",
        "3000",
        "--trajectory",
        csv.to_str().unwrap(),
    ]);
    assert!(v["itinerary"].as_str().unwrap().starts_with("RRR"));
    let text = std::fs::read_to_string(csv).unwrap();
    assert!(text.starts_with("t,x,y,z\n0,10,10,27\n"));
    assert_eq!(text.lines().count(), 3002);
}

#[test]
fn exit_codes() {
    assert_eq!(lorenz(&["word", "info", "LRLR"]).status.code(), Some(2));
    assert_eq!(lorenz(&["word", "info", "LXR"]).status.code(), Some(2));
    assert_eq!(
        lorenz(&["modular", "decode", "1,1,0,1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        lorenz(&["atlas", "build", "--max-len", "19"]).status.code(),
        Some(3)
    );
    assert_eq!(
        lorenz(&["jones", "LRLRRRLRRR", "--max-crossings", "12"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        lorenz(&["atlas", "query", "/nonexistent/atlas.jsonl"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        lorenz(&["flow", "itinerary", "--dt", "0.5"]).status.code(),
        Some(2)
    );
    let out = lorenz(&["word", "info", "LRLR"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("periodic"));
}

#[test]
fn atlas_build_and_query() {
    let dir = tempfile::tempdir().unwrap();
    let five = build(dir.path(), "five.jsonl", &["--max-len", "5"]);
    let all = lines(&lorenz(&["atlas", "query", &five]));
    assert_eq!(all.len(), 14);

    let one = build(dir.path(), "one.jsonl", &["--max-len", "1"]);
    let records = lines(&lorenz(&["atlas", "query", &one]));
    let words: Vec<&str> = records
        .iter()
        .map(|r| r["word"].as_str().unwrap())
        .collect();
    assert_eq!(words, ["L", "R"]);
    assert!(records
        .iter()
        .all(|r| r["unknot"] == true && r["genus"] == 0));

    let twelve = build(dir.path(), "twelve.jsonl", &["--max-len", "12"]);
    for r in lines(&lorenz(&["atlas", "query", &twelve, "torus!=null"])) {
        let (p, q) = (
            r["torus"][0].as_i64().unwrap(),
            r["torus"][1].as_i64().unwrap(),
        );
        assert_eq!(r["genus"].as_i64().unwrap(), (p - 1) * (q - 1) / 2, "{r}");
    }
    let hits = lines(&lorenz(&[
        "atlas",
        "query",
        &twelve,
        "torus=null",
        "length<=10",
    ]));
    assert!(hits.iter().any(|r| r["word"] == "LRLRRRLRRR"));
    assert!(hits
        .iter()
        .all(|r| r["torus"].is_null() && r["length"].as_i64().unwrap() <= 10));
}

#[test]
fn crossing_number_three_is_only_the_trefoil() {
    let dir = tempfile::tempdir().unwrap();
    let eight = build(
        dir.path(),
        "eight.jsonl",
        &["--max-len", "8", "--jones-max-crossings", "16"],
    );
    let hits = lines(&lorenz(&["atlas", "query", &eight, "c_min<=3"]));
    let trefoil = serde_json::json!([[4, 1], [12, 1], [16, -1]]);
    assert!(hits.iter().any(|r| r["c_min"] == 3));
    for r in hits {
        if r["unknot"] == true {
            assert_eq!(r["jones"], serde_json::json!([[0, 1]]));
        } else {
            assert_eq!(
                (r["c_min"].clone(), r["genus"].clone(), r["jones"].clone()),
                (3.into(), 1.into(), trefoil.clone())
            );
        }
    }
}

#[test]
fn query_formats_and_bad_filters() {
    let dir = tempfile::tempdir().unwrap();
    let four = build(dir.path(), "four.jsonl", &["--max-len", "4"]);
    let csv = lorenz(&["atlas", "query", &four, "ears.rr>=1", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    let mut rows = text.lines();
    assert!(rows
        .next()
        .unwrap()
        .starts_with("word,length,components,n,c,trip,ears.ll,ears.lr,ears.rl,ears.rr,genus"));
    assert_eq!(rows.count(), 4);
    assert_eq!(
        lorenz(&["atlas", "query", &four, "colour=red"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        lorenz(&["atlas", "query", &four, "genus"]).status.code(),
        Some(2)
    );

    let corrupt = dir.path().join("corrupt.jsonl");
    let text = std::fs::read_to_string(&four)
        .unwrap()
        .replacen("\"c\":0", "\"c\":7", 1);
    std::fs::write(&corrupt, text).unwrap();
    assert_eq!(
        lorenz(&["atlas", "query", corrupt.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn rebuild_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = build(
        dir.path(),
        "a.jsonl",
        &["--max-len", "14", "--jones-max-crossings", "12"],
    );
    let b = build(
        dir.path(),
        "b.jsonl",
        &["--max-len", "14", "--jones-max-crossings", "12"],
    );
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}
