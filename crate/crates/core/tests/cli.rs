use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

use hpcolor::engine::{classify_coverage, Coverage};
use hpcolor::io::{parse_coloring, parse_instance};
use hpcolor::model::{validate, Color};

const I3: &str = r#"{"halfplanes":[{"a":"1","b":"0","side":"upper"},{"a":"-1","b":"2","side":"upper"},{"a":"0","b":"0","side":"lower"}]}"#;
const I_TRI2: &str = r#"{"halfplanes":[{"a":"0","b":"0","side":"upper"},{"a":"3/2","b":"0","side":"lower"},{"a":"-3/2","b":"6","side":"lower"}]}"#;

fn hpcolor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hpcolor")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn put(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn color_i3() {
    let dir = TempDir::new().unwrap();
    let inp = put(&dir, "i3.json", I3);
    let out = dir.path().join("c.json");
    let o = hpcolor(&["color", s(&inp), "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let c = parse_coloring(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(c.len(), 3);
    assert!(c.colors.contains(&Color::Red) && c.colors.contains(&Color::Blue));
    assert_eq!(code(&hpcolor(&["verify", s(&inp), s(&out)])), 0);
}

#[test]
fn invalid_input_is_exit_3() {
    let dir = TempDir::new().unwrap();
    let bad = put(&dir, "bad.json", "{\"halfplanes\": [");
    let o = hpcolor(&["color", s(&bad)]);
    assert_eq!(code(&o), 3);
    assert!(!o.stderr.is_empty());
    let inp = put(&dir, "i3.json", I3);
    assert_eq!(code(&hpcolor(&["color", s(&inp), "--threshold", "2"])), 3);
    assert_eq!(code(&hpcolor(&["color", "/nonexistent/x.json"])), 3);
    assert_eq!(code(&hpcolor(&["frobnicate"])), 3);
    assert_eq!(code(&hpcolor(&["--help"])), 0);
    assert_eq!(code(&hpcolor(&["--version"])), 0);
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let inp = put(&dir, "i3.json", I3);
    let good = put(&dir, "good.json", r#"{"colors":["blue","red","red"]}"#);
    let blue = put(&dir, "blue.json", r#"{"colors":["blue","blue","blue"]}"#);
    let short = put(&dir, "short.json", r#"{"colors":["blue"]}"#);
    let o = hpcolor(&["verify", s(&inp), s(&good)]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "Ok"));
    let o = hpcolor(&["verify", s(&inp), s(&blue)]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("\"witness\"") && stdout(&o).contains("\"color\":\"blue\""));
    assert_eq!(code(&hpcolor(&["verify", s(&inp), s(&short)])), 3);

    let tri = put(&dir, "tri2.json", I_TRI2);
    for bits in 0..8u8 {
        let names: Vec<&str> = (0..3).map(|i| if bits >> i & 1 == 1 { "\"red\"" } else { "\"blue\"" }).collect();
        let c = put(&dir, "c.json", &format!("{{\"colors\":[{}]}}", names.join(",")));
        assert_eq!(code(&hpcolor(&["verify", s(&tri), s(&c), "--threshold", "2"])), 2);
    }
}

#[test]
fn oracle_exit_codes() {
    let dir = TempDir::new().unwrap();
    let tri = put(&dir, "tri2.json", I_TRI2);
    assert_eq!(code(&hpcolor(&["oracle", s(&tri), "-k", "2"])), 4);
    assert_eq!(code(&hpcolor(&["oracle", s(&tri), "-k", "3"])), 0);
    let i3 = put(&dir, "i3.json", I3);
    let o = hpcolor(&["oracle", s(&i3), "--all"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 6);
    let big = dir.path().join("big.json");
    assert_eq!(code(&hpcolor(&["gen", "--n", "21", "--out", s(&big)])), 0);
    assert_eq!(code(&hpcolor(&["oracle", s(&big)])), 3);
}

#[test]
fn gen_postconditions_and_determinism() {
    let dir = TempDir::new().unwrap();
    let (a, b, d) = (dir.path().join("a.json"), dir.path().join("b.json"), dir.path().join("d.json"));
    assert_eq!(code(&hpcolor(&["gen", "--n", "3", "--mode", "covered", "--seed", "1", "--out", s(&a)])), 0);
    assert_eq!(code(&hpcolor(&["gen", "--n", "3", "--mode", "covered", "--seed", "1", "--out", s(&b)])), 0);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let inst = parse_instance(&fs::read_to_string(&a).unwrap()).unwrap();
    assert!(matches!(classify_coverage(&inst), Ok(Coverage::Covered { .. })));
    assert_eq!(code(&hpcolor(&["gen", "--n", "8", "--mode", "degenerate", "--seed", "2", "--out", s(&d)])), 0);
    let inst = parse_instance(&fs::read_to_string(&d).unwrap()).unwrap();
    assert!(!validate(&inst).is_clean());
    assert_eq!(code(&hpcolor(&["gen", "--n", "3", "--mode", "sideways"])), 3);
}

#[test]
fn render_outputs() {
    let dir = TempDir::new().unwrap();
    let inp = put(&dir, "i3.json", I3);
    let col = put(&dir, "c.json", r#"{"colors":["blue","red","red"]}"#);
    let o = hpcolor(&["render", s(&inp), "--coloring", s(&col), "--window=-5,-5,5,5"]);
    assert_eq!(code(&o), 0);
    let svg = stdout(&o);
    assert_eq!(svg.matches("<line").count(), 3);
    assert_eq!(svg.matches("<polygon").count(), 1);
    assert_eq!(svg, stdout(&hpcolor(&["render", s(&inp), "--coloring", s(&col), "--window=-5,-5,5,5"])));
    assert_eq!(code(&hpcolor(&["render", s(&inp), "--window=1,1,1,2"])), 3);
    let empty = put(&dir, "e.json", r#"{"halfplanes":[]}"#);
    let o = hpcolor(&["render", s(&empty)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("</svg>"));
}

#[test]
fn bench_rows() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("b.csv");
    let o = hpcolor(&["bench", "--sizes", "64,128", "--runs", "1", "--seed", "4", "--csv", s(&csv)]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&csv).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0], "n,seconds,case_path");
    let again = stdout(&hpcolor(&["bench", "--sizes", "64,128", "--runs", "1", "--seed", "4"]));
    let paths = |t: &str| t.lines().map(|l| l.rsplit(',').next().unwrap().to_string()).collect::<Vec<_>>();
    assert_eq!(paths(&text), paths(&again));
    assert_eq!(code(&hpcolor(&["bench", "--sizes", "128,64"])), 3);
}
