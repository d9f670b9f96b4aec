use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn kit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multalg-kit")).args(args).output().expect("binary runs")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::write(&p, contents).unwrap();
    p
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn algebra_of_three_squares() {
    let net = scratch("squares.json", r#"{"vars":["x","y","z"],"quadrics":["x^2","y^2","z^2"]}"#);
    let out = kit(&["algebra", "--in", net.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["schema"], "multalg/1");
    assert_eq!(r["status"], "ok");
    assert_eq!(r["results"]["dim"], 8);
    assert_eq!(r["results"]["hilbert"], serde_json::json!([1, 3, 3, 1]));
    assert_eq!(r["results"]["very_stable"], true);
}

#[test]
fn gram_input_gives_the_same_report() {
    let quads = scratch("squares_q.json", r#"{"vars":["x","y","z"],"quadrics":["x^2","y^2","z^2"]}"#);
    let grams = scratch(
        "squares_g.json",
        r#"{"n":3,"vars":["x","y","z"],"grams":[["1","0","0","0","0","0","0","0","0"],["0","0","0","0","1","0","0","0","0"],["0","0","0","0","0","0","0","0","1"]]}"#,
    );
    let a = report(&kit(&["algebra", "--in", quads.to_str().unwrap()]));
    let b = report(&kit(&["algebra", "--in", grams.to_str().unwrap()]));
    assert_eq!(a["results"], b["results"]);
    assert_eq!(a["input_digest"], b["input_digest"]);
}

#[test]
fn special_case_with_base_point() {
    let out = kit(&["g3-special", "--a", "1/3,1/3,1/3", "--b", "1/3,1/3,1/3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["very_stable"], false);
    assert_eq!(r["results"]["surd_base_point"], true);
}

#[test]
fn reports_are_byte_identical() {
    let args = ["g2-lorenzen", "--rst", "2,3,5", "--u", "1/2,1/3,1/5"];
    let (a, b) = (kit(&args), kit(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r = report(&a);
    assert_eq!(r["results"]["very_stable"], true);
    assert_eq!(r["results"]["dim"], 8);
}

#[test]
fn malformed_input_exits_one() {
    let bad = scratch("bad.json", "{not json");
    let out = kit(&["algebra", "--in", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["status"], "error");
    let out = kit(&["g3-special", "--a", "1/0,1,1", "--b", "1,1,1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = kit(&["g2-odd", "--branch", "0,1,2,3,4,5", "--a", "-1,6,6"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn odd_net_triangle() {
    let out = kit(&["g2-odd", "--branch", "0,1,2,3,4,5", "--a", "-1,6,7"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["triangle"]["holds"], true);
    assert_eq!(r["results"]["relations_are_squares"], true);
}

#[test]
fn output_file() {
    let out_path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("symmetroid.json");
    let out = kit(&["symmetroid", "--a", "2", "--b", "3", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(r["command"], "symmetroid");
}

#[test]
fn lorenzen_sweep_csv() {
    let grid = scratch("u.json", r#"[["1/2","1/3","1/5"],["1/3","1/5","1/7"]]"#);
    let out = kit(&["sweep", "g2-lorenzen", "--rst", "2,3,5", "--grid", grid.to_str().unwrap(), "--workers", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["u0", "u1", "u2", "very_stable", "dim", "smooth", "j_num", "j_den"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0].iter().take(3).collect::<Vec<_>>(), ["1/3", "1/5", "1/7"]);
    assert!(rows.iter().all(|r| &r[3] == "true" && &r[4] == "8" && &r[5] == "true"));
    assert!(rows.iter().all(|r| !r[6].is_empty() && !r[7].is_empty()));
    assert_ne!((&rows[0][6], &rows[0][7]), (&rows[1][6], &rows[1][7]));
}

#[test]
fn degenerate_sweep_row_has_no_j() {
    let grid = scratch("u_degenerate.json", r#"[["1","1","0"]]"#);
    let out = kit(&["sweep", "g2-lorenzen", "--rst", "3/2,3,2", "--grid", grid.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let row = text.lines().nth(1).unwrap();
    assert!(row.starts_with("1,1,0,false,,") && row.ends_with(",,"), "{row}");
}

#[test]
fn sweep_is_independent_of_worker_count() {
    let grid = scratch("ab.json", r#"[["3","2"],["2","3"]]"#);
    let run = |w: &str| kit(&["sweep", "g3-pair", "--grid", grid.to_str().unwrap(), "--workers", w]);
    let (one, two) = (run("1"), run("2"));
    assert_eq!(one.status.code(), Some(0), "{}", String::from_utf8_lossy(&one.stderr));
    assert_eq!(one.stdout, two.stdout);
    let text = String::from_utf8(one.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "a,b,mat2,section,loci,web_dim");
    assert!(lines[1].starts_with("2,3,true,true,"));
}
