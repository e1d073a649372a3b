use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn quiver(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../quivers").join(name)
}

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringel-hall"))
        .args(args)
        .env("RINGEL_HALL_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn a2() -> String {
    quiver("a2.json").display().to_string()
}

#[test]
fn jacobi_on_a2_exits_zero_with_no_violations() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["run", "--quiver", &a2(), "--q", "3", "jacobi"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["summary"]["violations"], 0);
    assert!(v["records"].as_array().unwrap().len() >= 512);
    assert_eq!(v["provenance"]["command"], "jacobi");
}

#[test]
fn q_six_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["--quiver", &a2(), "--q", "6", "jacobi"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("prime power"));
}

#[test]
fn cyclic_and_missing_quivers_are_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cyc = dir.path().join("cyc.json");
    fs::write(
        &cyc,
        r#"{"name":"C2","vertices":["1","2"],"arrows":[{"id":"a","src":"1","tgt":"2"},{"id":"b","src":"2","tgt":"1"}]}"#,
    )
    .unwrap();
    let out = run(dir.path(), &["--quiver", cyc.to_str().unwrap(), "indec"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(dir.path(), &["--quiver", "/nonexistent/q.json", "indec"]);
    assert_eq!(out.status.code(), Some(2));
    let k = quiver("kronecker.json");
    let out = run(dir.path(), &["--quiver", k.to_str().unwrap(), "indec"]);
    assert_eq!(out.status.code(), Some(2), "non-Dynkin quivers need a bound");
}

#[test]
fn budget_exceedance_has_its_own_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let k = quiver("kronecker.json");
    let out = run(dir.path(), &["--quiver", k.to_str().unwrap(), "--bound", "2,2", "--budget", "100", "indec"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn warm_cache_gives_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--quiver", &a2(), "--q", "3", "assoc"];
    let cold = run(dir.path(), &args);
    assert_eq!(cold.status.code(), Some(0));
    let files: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let text = fs::read_to_string(&files[0]).unwrap();
    assert!(text.starts_with("#ringel-hall-cache;kind=hall;digest="));
    assert!(text.lines().nth(1) == Some("X;Y;L;F"));
    let warm = run(dir.path(), &args);
    assert_eq!(warm.status.code(), Some(0));
    assert_eq!(cold.stdout, warm.stdout);
    // the cache is rewritten bit-identically
    assert_eq!(fs::read_to_string(&files[0]).unwrap(), text);
}

#[test]
fn corrupt_or_foreign_caches_are_ignored_with_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--quiver", &a2(), "--q", "3", "comm"];
    let reference = run(dir.path(), &args);
    let path = fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let text = fs::read_to_string(&path).unwrap();

    // truncated: drop the end marker and the last rows
    let cut: Vec<&str> = text.lines().collect();
    fs::write(&path, cut[..cut.len() - 2].join("\n")).unwrap();
    let out = run(dir.path(), &args);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning: ignoring cache"));
    assert_eq!(out.stdout, reference.stdout);

    // header from another quiver digest
    let foreign = text.replacen("digest=", "digest=ff", 1);
    fs::write(&path, foreign).unwrap();
    let out = run(dir.path(), &args);
    assert!(String::from_utf8_lossy(&out.stderr).contains("header mismatch"));
    assert_eq!(out.stdout, reference.stdout);
}

#[test]
fn triangle_cache_has_five_columns() {
    let dir = tempfile::tempdir().unwrap();
    let a1 = quiver("a1.json");
    let out = run(dir.path(), &["--quiver", a1.to_str().unwrap(), "--q", "3", "tri"]);
    assert_eq!(out.status.code(), Some(0));
    let path = fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let text = fs::read_to_string(path).unwrap();
    assert!(text.contains(";q=3;bound="));
    assert_eq!(text.lines().nth(1), Some("X;Y;L;W;F"));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // W_{k, Tk}^0 has a single orbit
    let rows = v["data"].as_array().unwrap();
    assert!(rows.iter().any(|r| r["l"] == "0" && r["f"] == "1"));
}

#[test]
fn structure_report_matches_a2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["--quiver", &a2(), "--q", "4", "--no-cache", "report"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["cartan_matrix"], serde_json::json!([[2, -1], [-1, 2]]));
    assert_eq!(v["modulus"], 3);
    assert_eq!(v["total_rank"], 8);
    assert_eq!(v["jacobi"]["triples_checked"], 512);
    assert_eq!(v["jacobi"]["violations"], 0);
    assert_eq!(v["invariant_form"]["violations"], 0);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0, "--no-cache writes nothing");
}

#[test]
fn lemma_reports_name_the_lemma() {
    let dir = tempfile::tempdir().unwrap();
    let a1 = quiver("a1.json");
    let out = run(dir.path(), &["--quiver", a1.to_str().unwrap(), "--q", "3", "lemmas4"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let recs = v["records"].as_array().unwrap();
    assert!(!recs.is_empty());
    assert!(recs.iter().all(|r| r.get("lemma").is_some() && r.get("check").is_none()));
}

#[test]
fn q_two_flags_vacuous_congruences() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["--quiver", &a2(), "--q", "2", "--no-cache", "form"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["summary"]["vacuous"].as_u64().unwrap() > 0);
}

#[test]
fn seeded_prop2_samples_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--quiver", &a2(), "--q", "3", "--samples", "20", "--seed", "7", "prop2"];
    let a = run(dir.path(), &args);
    let b = run(dir.path(), &args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
