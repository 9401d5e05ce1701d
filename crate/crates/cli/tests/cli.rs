//! End-to-end behavior of the `puregaps` binary.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn puregaps(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_puregaps")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn tsv_points(text: &str) -> Vec<(i64, i64)> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("period"))
        .map(|l| {
            let (a, b) = l.split_once('\t').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect()
}

fn json_points(v: &Value) -> Vec<(i64, i64)> {
    v.as_array().unwrap().iter().map(|p| (p[0].as_i64().unwrap(), p[1].as_i64().unwrap())).collect()
}

fn summary_field(text: &str, key: &str) -> String {
    text.lines().find_map(|l| l.strip_prefix(&format!("{key}\t"))).unwrap_or_else(|| panic!("no {key}")).to_string()
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn gk_summary_reports_q2_values() {
    let o = puregaps(&["gk", "--q", "2", "--emit", "summary"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for (k, v) in [("genus", "10"), ("period", "9"), ("pure_gaps", "35"), ("upper_bound", "47"), ("homma_kim_bound", "45")] {
        assert_eq!(summary_field(&s, k), v, "{k}");
    }
    assert!(s.lines().filter(|l| l.ends_with("\tfail")).count() == 0);
}

#[test]
fn kummer_outputs() {
    let o = puregaps(&["kummer", "--m", "4", "--r", "3", "--emit", "puregaps"]);
    assert_eq!(stdout(&o), "1\t1\n1\t2\n2\t1\n");
    let o = puregaps(&["kummer", "--m", "4", "--r", "7"]);
    assert_eq!(summary_field(&stdout(&o), "pure_gaps"), "29");
}

#[test]
fn every_emit_mode_is_deterministic() {
    for base in [vec!["gk", "--q", "3"], vec!["kummer", "--m", "7", "--r", "5"]] {
        for emit in ["summary", "gamma", "puregaps"] {
            for format in ["tsv", "json"] {
                let mut args = base.clone();
                args.extend(["--emit", emit, "--format", format]);
                let first = puregaps(&args);
                let second = puregaps(&args);
                assert_eq!(first.status.code(), Some(0), "{args:?}");
                assert_eq!(first.stdout, second.stdout, "{args:?}");
            }
        }
    }
}

#[test]
fn tsv_and_json_carry_the_same_points() {
    for base in [vec!["gk", "--q", "3"], vec!["kummer", "--m", "9", "--r", "7"]] {
        let mut tsv_args = base.clone();
        tsv_args.extend(["--emit", "puregaps", "--format", "tsv"]);
        let mut json_args = base.clone();
        json_args.extend(["--emit", "puregaps", "--format", "json"]);
        let mut tsv = tsv_points(&stdout(&puregaps(&tsv_args)));
        let mut json = json_points(&serde_json::from_str(&stdout(&puregaps(&json_args))).unwrap());
        tsv.sort_unstable();
        json.sort_unstable();
        assert!(!tsv.is_empty());
        assert_eq!(tsv, json);

        let mut tsv_args = base.clone();
        tsv_args.extend(["--emit", "gamma"]);
        let mut json_args = base.clone();
        json_args.extend(["--emit", "gamma", "--format", "json"]);
        let gamma: Value = serde_json::from_str(&stdout(&puregaps(&json_args))).unwrap();
        assert_eq!(tsv_points(&stdout(&puregaps(&tsv_args))), json_points(&gamma["points"]));
    }
}

#[test]
fn summary_json_mirrors_tsv() {
    let tsv = stdout(&puregaps(&["gk", "--q", "2"]));
    let json: Value = serde_json::from_str(&stdout(&puregaps(&["gk", "--q", "2", "--format", "json"]))).unwrap();
    assert_eq!(json["pure_gaps"].to_string(), summary_field(&tsv, "pure_gaps"));
    assert_eq!(json["verdicts"]["engine_vs_oracle"], "pass");
    assert_eq!(json["gamma_k0"], serde_json::json!([3, 2, 1]));
    assert!(json.get("timings").is_none());
}

#[test]
fn timings_are_opt_in() {
    let s = stdout(&puregaps(&["gk", "--q", "2", "--timings"]));
    let ms: f64 = summary_field(&s, "engine_ms").parse().unwrap();
    assert!(ms >= 0.0);
    let s = stdout(&puregaps(&["gk", "--q", "2", "--skip-oracle"]));
    assert_eq!(summary_field(&s, "engine_vs_oracle"), "skipped");
}

#[test]
fn generic_file_matches_family_command() {
    let gamma = stdout(&puregaps(&["gk", "--q", "2", "--emit", "gamma"]));
    let file = temp_file(&gamma);
    let path = file.path().to_str().unwrap();
    for emit in ["gamma", "puregaps"] {
        for format in ["tsv", "json"] {
            let generic = puregaps(&["generic", path, "--emit", emit, "--format", format]);
            let family = puregaps(&["gk", "--q", "2", "--emit", emit, "--format", format]);
            assert_eq!(generic.status.code(), Some(0));
            assert_eq!(generic.stdout, family.stdout, "{emit} {format}");
        }
    }
    let generic = stdout(&puregaps(&["generic", path]));
    let family = stdout(&puregaps(&["gk", "--q", "2"]));
    for key in ["genus", "period", "gamma_k0", "pure_gaps", "lower_bound", "upper_bound", "homma_kim_bound", "engine_vs_oracle"] {
        assert_eq!(summary_field(&generic, key), summary_field(&family, key), "{key}");
    }
    assert_eq!(summary_field(&generic, "closed_form_vs_enumeration"), "skipped");
}

#[test]
fn generic_empty_set() {
    let file = temp_file("# nothing here\nperiod 1\n");
    let o = puregaps(&["generic", file.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(summary_field(&stdout(&o), "pure_gaps"), "0");
}

#[test]
fn generic_reports_line_numbers() {
    let file = temp_file("# GK q = 2, tampered\nperiod 9\n1\t19\n2\t11\n2\t3\n");
    let o = puregaps(&["generic", file.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("DuplicateFirstCoordinate at line 5"), "{}", stderr(&o));

    let file = temp_file("period 9\n3\tx\n");
    let o = puregaps(&["generic", file.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"));

    let o = puregaps(&["generic", "/nonexistent/gamma.txt"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["gk", "--q", "1"],
        vec!["kummer", "--m", "4", "--r", "6"],
        vec!["kummer", "--m", "1", "--r", "3"],
        vec!["gk"],
        vec!["gk", "--q", "2", "--emit", "nothing"],
        vec!["frobnicate"],
        vec!["bench", "--family", "gk"],
        vec!["bench", "--family", "kummer", "--m", "5"],
        vec!["verify", "--family", "gk", "--q-max", "50"],
        vec!["verify", "--family", "gk", "--special", "ur1"],
    ] {
        let o = puregaps(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn non_prime_power_warns() {
    let o = puregaps(&["gk", "--q", "6", "--emit", "gamma"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("not a prime power"));
}

#[test]
fn verify_grids_pass() {
    let o = puregaps(&["verify", "--family", "gk", "--q-max", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 3);
    assert!(out.lines().all(|l| l.ends_with("\tPASS")));

    let o = puregaps(&["verify", "--family", "kummer", "--max", "15", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let coprime = (2..=15i64).flat_map(|m| (2..=15i64).map(move |r| (m, r))).filter(|&(m, r)| puregaps::arith::gcd(m, r) == 1).count();
    assert_eq!(lines.len(), coprime);
    assert!(lines.iter().all(|l| l["verdicts"]["engine_vs_oracle"] == "pass"));

    for special in ["ur1", "qn"] {
        let o = puregaps(&["verify", "--family", "kummer", "--special", special]);
        assert_eq!(o.status.code(), Some(0), "{special}");
    }
}

#[test]
fn verify_output_is_in_parameter_order() {
    let first = puregaps(&["verify", "--family", "all", "--q-max", "3", "--max", "8"]);
    let second = puregaps(&["verify", "--family", "all", "--q-max", "3", "--max", "8"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert!(stdout(&first).starts_with("gk\tq=2\t"));
}

#[test]
fn bench_checks_equality_before_timing() {
    let o = puregaps(&["bench", "--family", "kummer", "--m", "31", "--r", "30"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(summary_field(&s, "genus"), "435");
    assert_eq!(summary_field(&s, "outputs_equal"), "true");
    assert!(summary_field(&s, "decomposition").parse::<f64>().unwrap() >= 0.0);
    assert!(summary_field(&s, "direct").parse::<f64>().unwrap() >= 0.0);

    let o = puregaps(&["bench", "--family", "gk", "--q", "5", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["genus"], 1450);
    assert_eq!(v["outputs_equal"], true);
}

#[test]
fn thread_count_from_environment() {
    let run = |value: &str| {
        Command::new(env!("CARGO_BIN_EXE_puregaps"))
            .args(["gk", "--q", "3", "--emit", "puregaps"])
            .env("PUREGAPS_THREADS", value)
            .output()
            .unwrap()
    };
    let one = run("1");
    let two = run("2");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);
    assert_eq!(run("zero").status.code(), Some(2));
    assert_eq!(run("0").status.code(), Some(2));
}

#[test]
fn in_process_run_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = puregaps_cli::run(["puregaps", "gk", "--q", "2", "--emit", "puregaps"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(out, puregaps(&["gk", "--q", "2", "--emit", "puregaps"]).stdout);

    let mut out = Vec::new();
    let code = puregaps_cli::run(["puregaps", "--help"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert!(String::from_utf8(out).unwrap().contains("verify"));
}
