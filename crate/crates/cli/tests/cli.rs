use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn geobound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geobound")).args(args).env_remove("GEOBOUND_JOBS").output().expect("binary runs")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).expect("json line")).collect()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("geobound-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn verify_reports_in_genus_order() {
    let out = geobound(&["verify", "--family", "am", "--genus", "2..4", "--jobs", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let reports = lines(&out);
    let genera: Vec<_> = reports.iter().map(|r| r["genus"].as_u64().unwrap()).collect();
    assert_eq!(genera, [2, 3, 4]);
    for r in &reports {
        assert_eq!(r["schema"], 1);
        assert_eq!(r["status"], "pass");
        assert!(r["checks"][0].get("wall_time_ms").is_none());
    }
}

#[test]
fn wiman_genus_two_names_the_free_element() {
    let out = geobound(&["verify", "--family", "wiman", "--genus", "2..2", "--timings"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &lines(&out)[0];
    let check = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "c_g fixed-point-free").unwrap();
    assert_eq!(check["result"], "pass");
    assert!(check["wall_time_ms"].is_u64());
}

#[test]
fn kulkarni_range_is_filtered() {
    assert_eq!(geobound(&["verify", "--family", "kulkarni", "--genus", "4..4"]).status.code(), Some(2));
    let out = geobound(&["verify", "--family", "kulkarni", "--genus", "3..8"]);
    assert_eq!(out.status.code(), Some(0));
    let genera: Vec<_> = lines(&out).iter().map(|r| r["genus"].as_u64().unwrap()).collect();
    assert_eq!(genera, [3, 7]);
}

#[test]
fn bad_verify_input_exits_2() {
    for genus in ["9..3", "x", "2..101", "1"] {
        assert_eq!(geobound(&["verify", "--family", "am", "--genus", genus]).status.code(), Some(2), "{genus}");
    }
    assert_eq!(geobound(&["verify", "--family", "loebell-am", "--genus", "3"]).status.code(), Some(2));
}

#[test]
fn jobs_env_overrides_flag() {
    let out = Command::new(env!("CARGO_BIN_EXE_geobound"))
        .args(["verify", "--family", "am", "--genus", "2", "--jobs", "1"])
        .env("GEOBOUND_JOBS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_examples() {
    let w3 = geobound(&["search", "--family", "wiman", "--genus", "3", "--orientation", "rev", "--modulo", "c"]);
    assert_eq!(w3.status.code(), Some(0));
    assert!(!lines(&w3).is_empty());
    let w4 = geobound(&["search", "--family", "wiman", "--genus", "4", "--orientation", "rev", "--modulo", "c"]);
    assert!(lines(&w4).is_empty());
    let k7 = geobound(&["search", "--family", "kulkarni", "--genus", "7", "--orientation", "rev", "--modulo", "d"]);
    assert_eq!(k7.status.code(), Some(0));
    assert!(lines(&k7).is_empty());
    let wrong = geobound(&["search", "--family", "am", "--genus", "3", "--modulo", "c"]);
    assert_eq!(wrong.status.code(), Some(2));
}

#[test]
fn build_polygon_surface() {
    let dir = scratch("polygon");
    let out = geobound(&["build", "--polytope", "polygon:6", "--colouring", "am:2", "--out", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let summary = &lines(&out)[0];
    assert_eq!(summary["analysis"]["euler"], -2);
    let complex: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("complex.json")).unwrap()).unwrap();
    // V - E + F read back from the written cells
    let mut counts = [0i64; 3];
    for cell in complex["cells"].as_array().unwrap() {
        counts[cell["dim"].as_u64().unwrap() as usize] += 1;
    }
    assert_eq!(counts[0] - counts[1] + counts[2], -2);

    // the written colouring reads back as a file argument
    let again = scratch("polygon-again");
    let colouring = dir.join("colouring.json");
    let out = geobound(&["build", "--polytope", "polygon:6", "--colouring", colouring.to_str().unwrap(), "--out", again.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(dir.join("complex.json")).unwrap(), std::fs::read(again.join("complex.json")).unwrap());
}

#[test]
fn build_loebell_manifold() {
    let dir = scratch("loebell");
    let out = geobound(&["build", "--polytope", "loebell:8", "--colouring", "loebell-am:3", "--out", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let summary = &lines(&out)[0];
    assert_eq!(summary["analysis"]["euler"], 0);
    assert_eq!(summary["cells"][3], 8);
}

#[test]
fn build_input_errors_exit_2() {
    let dir = scratch("errors");
    let d = dir.to_str().unwrap();
    let cases: [&[&str]; 4] = [
        &["build", "--polytope", "polygon:6", "--colouring", "/nonexistent/colouring.json", "--out", d],
        &["build", "--polytope", "polygon:8", "--colouring", "am:2", "--out", d],
        &["build", "--polytope", "prism:6", "--colouring", "am:2", "--out", d],
        &["build", "--polytope", "loebell:8", "--colouring", "am:3", "--out", d],
    ];
    for args in cases {
        assert_eq!(geobound(args).status.code(), Some(2), "{args:?}");
    }
}
