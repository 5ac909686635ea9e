use std::fs;
use std::process::Command;

use drfaber::cli::{run, Outcome};

fn drfaber(args: &[&str]) -> Outcome {
    let mut argv = vec!["drfaber"];
    argv.extend_from_slice(args);
    run(argv)
}

fn evaluations(stderr: &str) -> u64 {
    stderr
        .lines()
        .find_map(|l| l.strip_prefix("bracket evaluations: "))
        .expect("stats line")
        .trim()
        .parse()
        .expect("integer count")
}

#[test]
fn bracket_value() {
    let out = drfaber(&["bracket", "--genus", "1", "--parts", "1:1,1:0"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "5\n");
}

#[test]
fn integral_all_methods_agree() {
    let out = drfaber(&["integral", "--genus", "2", "--psi", "2,1", "--method", "all"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout, "4\n4\n4\n");
}

#[test]
fn integral_original_form_and_custom_spec() {
    let out = drfaber(&[
        "integral", "--genus", "3", "--psi", "2,1", "--form", "original", "--method", "all",
    ]);
    assert_eq!(out.stdout, "15/2\n15/2\n15/2\n");
    let out = drfaber(&[
        "integral", "--genus", "2", "--psi", "2,1", "--a", "2,5", "--b", "3,1", "--mode", "exact",
    ]);
    assert_eq!(out.stdout, "4\n");
}

#[test]
fn dimension_error_is_a_usage_error() {
    let out = drfaber(&["bracket", "--genus", "1", "--parts", "1:2,1:0"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.is_empty());
    assert_eq!(out.stderr, "dimension: sum of psi-powers must be n-1\n");
}

#[test]
fn malformed_input_exits_2_with_one_line() {
    for args in [
        vec!["bracket", "--genus", "1", "--parts", "1-1"],
        vec!["integral", "--genus", "2", "--psi", "2,2"],
        vec!["integral", "--genus", "2", "--psi", "2,1", "--b", "1"],
        vec!["frobnicate"],
        vec!["coeff", "--genus", "1", "--parts", "0:0,2:1"],
        vec!["verify", "--gmin", "3", "--gmax", "2"],
    ] {
        let out = drfaber(&args);
        assert_eq!(out.code, 2, "{args:?}");
        assert_eq!(out.stderr.lines().count(), 1, "{args:?}: {}", out.stderr);
    }
}

#[test]
fn help_exits_0() {
    let out = drfaber(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("selftest"));
}

#[test]
fn poly_and_coeff_outputs() {
    let out = drfaber(&["poly", "--genus", "1", "--psi", "1,0"]);
    assert_eq!(out.stdout, "1*a1^2 + 2*a1^1*a2^1 + 2*a2^2\n");
    let out = drfaber(&["coeff", "--genus", "2", "--parts", "2:1,2:0"]);
    assert_eq!(out.stdout, "4/3\n");
}

#[test]
fn faber_table_and_single_value() {
    let out = drfaber(&["faber", "--genus", "2", "--psi", "2,0"]);
    assert_eq!(out.stdout, "1\n");
    let out = drfaber(&["faber", "--genus", "3", "--method", "all"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "2\t3/2\t3/2\t3/2\n2,1\t15/2\t15/2\t15/2\n2,1,1\t45\t45\t45\n");
}

#[test]
fn verify_json_is_deterministic() {
    let args = ["verify", "--gmin", "1", "--gmax", "3", "--nmax", "3", "--json"];
    let first = drfaber(&args);
    assert_eq!(first.code, 0);
    for threads in ["1", "3"] {
        let mut with = args.to_vec();
        with.extend(["--threads", threads]);
        assert_eq!(drfaber(&with).stdout, first.stdout);
    }
    let v: serde_json::Value = serde_json::from_str(&first.stdout).unwrap();
    assert_eq!(v["units"], "C_g=1");
    assert_eq!(v["pass"], true);
    let q = &v["queries"][0];
    for key in ["g", "d", "form", "binomial", "coeff", "closed", "pass"] {
        assert!(q.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn cache_round_trip_saves_work() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("brackets.txt");
    let cache = cache.to_str().unwrap();
    let args = [
        "integral", "--genus", "3", "--psi", "3,1", "--method", "binomial", "--stats", "--cache",
        cache,
    ];
    let cold = drfaber(&args);
    let warm = drfaber(&args);
    assert_eq!(cold.code, 0);
    assert_eq!(cold.stdout, "9\n");
    assert_eq!(cold.stdout, warm.stdout);
    assert!(evaluations(&warm.stderr) < evaluations(&cold.stderr));
    let text = fs::read_to_string(cache).unwrap();
    assert!(text.lines().all(|l| l.starts_with("v1\tg=3\tmode=S\tparts=")));
}

#[test]
fn unknown_cache_version_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("brackets.txt");
    fs::write(&cache, "v9\tg=1\tmode=S\tparts=1:0\tvalue=1\n").unwrap();
    let out = drfaber(&["bracket", "--genus", "1", "--parts", "1:0", "--cache", cache.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("unsupported cache version"));
}

#[test]
fn selftest_quick_passes() {
    let out = drfaber(&["selftest", "--quick"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.ends_with("selftest: pass\n"));
}

#[test]
fn selftest_detects_a_corrupted_memo_value() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("brackets.txt");
    // the true value is 5
    fs::write(&cache, "v1\tg=1\tmode=S\tparts=1:1,1:0\tvalue=6\n").unwrap();
    let out = drfaber(&["selftest", "--quick", "--cache", cache.to_str().unwrap()]);
    assert_eq!(out.code, 1, "{}", out.stdout);
    assert!(out.stdout.contains("selftest: FAIL"));
}

#[test]
fn selftest_json_lists_suites() {
    let out = drfaber(&["selftest", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let names: Vec<&str> = v["suites"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["numbase", "mpoly", "drbracket", "lattice", "faber"]);
}

#[test]
fn binary_runs() {
    let out = Command::new(env!("CARGO_BIN_EXE_drfaber"))
        .args(["bracket", "--genus", "2", "--parts", "3:0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "81\n");
    let out = Command::new(env!("CARGO_BIN_EXE_drfaber"))
        .args(["bracket", "--genus", "1", "--parts", "1:2,1:0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
