use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn qchoice(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qchoice"))
        .args(args)
        .env_remove("QCHOICE_THREADS")
        .output()
        .expect("run qchoice")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Writes fixture `name` (and its families) into `dir`.
fn fixture(dir: &TempDir, name: &str, families: bool) -> PathBuf {
    let file = dir.path().join(format!("{name}.qc"));
    let mut args = vec!["gen", "fixture", name, "-o", path(&file)];
    if families {
        args.push("--with-families");
    }
    let out = qchoice(&args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    file
}

#[test]
fn check_nonliberal_reports_alpha_witness() {
    let dir = TempDir::new().unwrap();
    let file = fixture(&dir, "nonliberal", false);
    let out = qchoice(&["check", path(&file)]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("alpha: FAILED"), "{text}");
    for needle in ["item z", "{x,z}", "{x,y,z}"] {
        assert!(text.contains(needle), "missing {needle} in {text}");
    }
}

#[test]
fn check_watson() {
    let dir = TempDir::new().unwrap();
    let file = fixture(&dir, "watson", false);
    let out = qchoice(&["check", path(&file)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("alpha: OK, gamma: OK, freely rationalizable"));
}

#[test]
fn unknown_item_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("bad.qc");
    std::fs::write(&file, "qc v1\nn = 3\nitems = x y z\nx y -> w\n").unwrap();
    let out = qchoice(&["check", path(&file)]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.qc:4"), "{err}");
}

#[test]
fn missing_file_is_a_usage_error() {
    let out = qchoice(&["check", "/nonexistent/choice.qc"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn numbers_of_fixtures() {
    let dir = TempDir::new().unwrap();
    let file = fixture(&dir, "ex-lib2-dem3", false);
    let out = qchoice(&["numbers", path(&file), "--oracle"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("lib = 2, dem = 3"), "{text}");
    assert!(text.contains("agrees"), "{text}");

    let file = fixture(&dir, "nonliberal", false);
    let out = qchoice(&["numbers", path(&file)]);
    assert!(stdout(&out).contains("lib = ∞, dem = ∞"));

    let file = fixture(&dir, "ex-dem-eq-lib", false);
    let out = qchoice(&["numbers", path(&file)]);
    assert!(stdout(&out).starts_with("lib = 3, dem = "));
}

#[test]
fn numbers_beyond_dem_cap_reports_upper_bound() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("c.qc");
    let out = qchoice(&["gen", "cnk", "--n", "5", "--k", "3", "-o", path(&file)]);
    assert_eq!(code(&out), 0);
    let out = qchoice(&["--json", "numbers", path(&file)]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["lib"]["value"], 10);
    assert_eq!(v["dem"]["kind"], "not_computed");
    assert_eq!(v["dem"]["upper"], 20);
}

#[test]
fn synth_liberal_pair() {
    let dir = TempDir::new().unwrap();
    let file = fixture(&dir, "ex-lib2-dem3", false);
    let ballots = dir.path().join("out.ballots");
    let out = qchoice(&["synth", path(&file), "--share", "0", "-o", path(&ballots)]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&ballots).unwrap();
    assert_eq!(text.lines().filter(|l| l.trim() == "end").count(), 2);
    let out = qchoice(&[
        "verify",
        path(&file),
        "--ballots",
        path(&ballots),
        "--share",
        "0",
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn synth_refuses_nonliberal() {
    let dir = TempDir::new().unwrap();
    let file = fixture(&dir, "nonliberal", false);
    let out = qchoice(&["synth", path(&file), "--share", "1/2"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("alpha"));
}

#[test]
fn bad_share_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let file = fixture(&dir, "watson", false);
    for share in ["1", "3/2", "x"] {
        let out = qchoice(&["synth", path(&file), "--share", share]);
        assert_eq!(code(&out), 2, "share {share}");
    }
}

#[test]
fn verify_families_at_half() {
    let dir = TempDir::new().unwrap();
    let file = fixture(&dir, "ex-lib2-dem3", true);
    let dem = dir.path().join("ex-lib2-dem3.democratic.ballots");
    let lib = dir.path().join("ex-lib2-dem3.liberal.ballots");
    let out = qchoice(&[
        "verify",
        path(&file),
        "--ballots",
        path(&dem),
        "--share",
        "1/2",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("Verified"));
    let out = qchoice(&[
        "verify",
        path(&file),
        "--ballots",
        path(&lib),
        "--share",
        "1/2",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("endorsed by 1 of 2 ballots"));
}

#[test]
fn gen_cnk_with_families() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("c32.qc");
    let out = qchoice(&[
        "gen",
        "cnk",
        "--n",
        "3",
        "--k",
        "2",
        "--with-families",
        "-o",
        path(&file),
    ]);
    assert_eq!(code(&out), 0);
    let lib = dir.path().join("c32.liberal.ballots");
    let dem = dir.path().join("c32.democratic.ballots");
    let text = std::fs::read_to_string(&lib).unwrap();
    assert_eq!(text.lines().filter(|l| l.trim() == "end").count(), 3);
    let out = qchoice(&[
        "verify",
        path(&file),
        "--ballots",
        path(&lib),
        "--share",
        "0",
    ]);
    assert_eq!(code(&out), 0);
    let out = qchoice(&[
        "verify",
        path(&file),
        "--ballots",
        path(&dem),
        "--share",
        "1/2",
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn gen_fixture_watson_table() {
    let out = qchoice(&["gen", "fixture", "watson"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for line in ["x y z -> x y", "x y -> x y", "x z -> x z", "y z -> y"] {
        assert!(
            text.lines().any(|l| l == line),
            "missing {line:?} in {text}"
        );
    }
}

#[test]
fn gen_random_is_stable_and_satisfies_alpha() {
    let a = qchoice(&["gen", "random", "--n", "4", "--seed", "7"]);
    let b = qchoice(&["--threads", "3", "gen", "random", "--n", "4", "--seed", "7"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("r.qc");
    std::fs::write(&file, &a.stdout).unwrap();
    assert_eq!(code(&qchoice(&["check", path(&file)])), 0);
}

#[test]
fn json_reports_are_versioned() {
    let dir = TempDir::new().unwrap();
    let file = fixture(&dir, "ex-lib2-dem3", false);
    let out = qchoice(&["--json", "numbers", path(&file)]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "qchoice-report/1");
    assert_eq!(v["command"], "numbers");
    assert_eq!(v["lib"]["value"], 2);
    assert_eq!(v["dem"]["value"], 3);

    let out = qchoice(&["--json", "check", "/nonexistent.qc"]);
    assert_eq!(code(&out), 2);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "input");
}

#[test]
fn bounds_by_size() {
    let out = qchoice(&["--json", "bounds", "--n", "10"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // C(9, 4)
    assert_eq!(v["sperner_bound"], "126");
}
