use std::process::Command;

fn mutcalc(args: &[&str]) -> (Option<i32>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mutcalc")).args(args).output().expect("run binary");
    (out.status.code(), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn bbw_subcommand() {
    let (code, out) = mutcalc(&["bbw", "Gr24", "S2U(-g)"]);
    assert_eq!(code, Some(0));
    assert_eq!(out.trim(), "degree 2: dim 1");
}

#[test]
fn replay_exit_codes() {
    let dir = std::env::temp_dir().join(format!("mutcalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let empty = dir.join("empty.scn");
    std::fs::write(&empty, "scenario empty\n").unwrap();
    let (code, out) = mutcalc(&["replay", empty.to_str().unwrap()]);
    assert_eq!(code, Some(0));
    assert!(out.contains("verdict PASS"));

    assert_eq!(mutcalc(&["replay", "B-fail"]).0, Some(1));

    let bad = dir.join("bad.scn");
    std::fs::write(&bad, "scenario bad\nstep x frobnicate\n").unwrap();
    assert_eq!(mutcalc(&["replay", bad.to_str().unwrap()]).0, Some(2));
    assert_eq!(mutcalc(&["bbw", "Gr99", "O"]).0, Some(2));
}

#[test]
fn json_transcripts_are_deterministic() {
    let a = mutcalc(&["--json", "replay", "A"]);
    let b = mutcalc(&["--json", "replay", "A"]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(v["verdict"], "PASS");
}

#[test]
fn strict_mode_and_catalog_override() {
    let dir = std::env::temp_dir().join(format!("mutcalc-cat-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cat = dir.join("catalog.json");
    std::fs::write(&cat, r#"{"nodes": 3}"#).unwrap();
    let (code, out) = mutcalc(&["--catalog", cat.to_str().unwrap(), "--strict", "replay", "A"]);
    assert_eq!(code, Some(0));
    assert!(out.contains("N = 3"));
    std::fs::write(&cat, r#"{"planes": 3}"#).unwrap();
    assert_eq!(mutcalc(&["--catalog", cat.to_str().unwrap(), "catalog"]).0, Some(2));
}
