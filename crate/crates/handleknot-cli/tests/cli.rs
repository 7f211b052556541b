use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use handleknot::ideals::AlexanderReport;
use handleknot::obstructions::KnottingReport;
use handleknot_cli::CliError;
use tempfile::TempDir;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_handleknot")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(dir: &TempDir, name: &str, param: Option<&str>) -> PathBuf {
    let path = dir.path().join(format!("{name}.txt"));
    let mut args = vec!["fixtures", name];
    args.extend(param);
    args.extend(["--format", "text", "--out", path.to_str().unwrap()]);
    stdout(&bin(&args));
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn report_on_gamma1() {
    let dir = TempDir::new().unwrap();
    let g = fixture(&dir, "Gamma1", Some("3"));
    let out = stdout(&bin(&["report", p(&g), "--primes", "3,5"]));
    let r: KnottingReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.quandle[0].p, 3);
    assert_eq!(r.quandle[0].phi.to_string(), "3+t");
    assert!(r.knotted(handleknot::obstructions::Level::S3));
}

#[test]
fn alexander_on_kinoshita() {
    let dir = TempDir::new().unwrap();
    let k = fixture(&dir, "kinoshita", None);
    let out = stdout(&bin(&["alexander", p(&k)]));
    let r: AlexanderReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.principal, handleknot::ideals::Principal::No(2));
}

#[test]
fn pattern_on_cochran_orr() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("p.txt");
    std::fs::write(&f, "w1 = t1 t2 t1^-1 t2^-1 t1\nw2 = t2\n").unwrap();
    let out = stdout(&bin(&["pattern", p(&f), "--format", "text"]));
    assert!(out.contains("rigid: Obstructed"), "{out}");
}

#[test]
fn json_round_trip_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let g = fixture(&dir, "lambert", Some("3"));
    let pat = fixture(&dir, "cochran-orr", None);
    let out = stdout(&bin(&["report", p(&g), "--primes", "3,5", "--pattern", p(&pat)]));
    let r: KnottingReport = serde_json::from_str(&out).unwrap();
    let again = serde_json::to_string_pretty(&r).unwrap() + "\n";
    assert_eq!(again, out);
    let out = stdout(&bin(&["alexander", p(&g)]));
    let a: AlexanderReport = serde_json::from_str(&out).unwrap();
    assert_eq!(serde_json::to_string_pretty(&a).unwrap() + "\n", out);
}

#[test]
fn color_lists_primes_in_order() {
    let dir = TempDir::new().unwrap();
    let g = fixture(&dir, "Gamma1", Some("5"));
    let out = stdout(&bin(&["color", p(&g), "--primes", "7,5,3", "--format", "text"]));
    assert_eq!(out, "Phi_3 = 4\nPhi_5 = 3+t\nPhi_7 = 4\n");
}

#[test]
fn out_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let g = fixture(&dir, "Gamma1", Some("3"));
    let target = dir.path().join("r.json");
    let o = bin(&["color", p(&g), "--out", p(&target)]);
    assert!(stdout(&o).is_empty());
    assert!(std::fs::read_to_string(target).unwrap().contains("\"p\": 3"));
}

#[test]
fn input_errors_exit_one_with_location() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "kind handcuff\narc a K1\nbogus line\n").unwrap();
    let o = bin(&["report", p(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.txt") && err.contains("line 3"), "{err}");

    let pat = dir.path().join("pat.txt");
    std::fs::write(&pat, "w1: t1\nw2: t3\n").unwrap();
    let o = bin(&["pattern", p(&pat)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    assert_eq!(bin(&["color", "/nonexistent/file"]).status.code(), Some(1));
    assert_eq!(bin(&["color", p(&bad), "--primes", "9"]).status.code(), Some(1));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(bin(&["fixtures", "nope"]).status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(CliError::Input(String::new()).exit_code(), 1);
    assert_eq!(CliError::Invariant(String::new()).exit_code(), 2);
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
}

#[test]
fn fixture_listing() {
    let out = stdout(&bin(&["fixtures"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 11);
}
