use std::fs;

use gavt::cli::execute;

fn run(args: &[&str]) -> (u8, String, String) {
    let mut argv = vec!["gavt"];
    argv.extend_from_slice(args);
    execute(argv)
}

#[test]
fn amitsur_embed() {
    let (code, out, _) = run(&["amitsur", "embed", "14", "13"]);
    assert_eq!(code, 0);
    assert_eq!(out, "embeddable: true (Dic28)\n");
    let (_, out, _) = run(&["amitsur", "embed", "4", "-1"]);
    assert_eq!(out, "embeddable: true (Q8)\n");
}

#[test]
fn weil_check() {
    let (code, out, _) = run(&["weil", "check", "t^4+16", "--q", "4"]);
    assert_eq!(code, 0);
    assert_eq!(out, "weil: true; End: commutative, e=4\n");
    let (_, out, _) = run(&["weil", "check", "t^2-3", "--q", "3"]);
    assert_eq!(out, "weil: true; End: division algebra, e=2, d=2\n");
    let (_, out, _) = run(&["weil", "check", "t^2+5t+3", "--q", "3"]);
    assert_eq!(out, "weil: false\n");
}

#[test]
fn classify_supersingular_cube() {
    let (code, out, _) = run(&["classify", "--shape", "supersingular-cube", "--p", "7", "--a", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("±L2(7).2"));
    let (code, out, _) = run(&["--json", "classify", "--shape", "supersingular-cube", "--p", "7", "--a", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["shape"], "supersingular-cube");
    assert!(v["groups"].as_array().unwrap().iter().any(|g| g == "±L2(7).2"));
    assert!(!v["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn classify_audit() {
    let (code, out, _) = run(&["classify", "--shape", "surface-elliptic", "--audit"]);
    assert_eq!(code, 0);
    assert!(out.contains("32 groups; matches stored list: true"));
    assert!(out.contains("audit: 45 combinations, 13 excluded"));
    assert!(out.contains("Dic24×Dic12 (parity-clash)"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["weil", "check", "t^2"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["classify", "--shape", "simple3", "--p", "2"]).0, 2);
}

#[test]
fn computation_errors_exit_1() {
    let (code, _, err) = run(&["weil", "check", "t^2+1", "--q", "6"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: NotPrimePower"));
    let (code, _, err) = run(&["group", "info", "Nope"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: UnknownLabel"));
    let (code, _, err) = run(&["classify", "--shape", "hexagon"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: Invalid"));
    let (code, _, err) = run(&["--json", "amitsur", "embed", "6", "3"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&err).unwrap();
    assert_eq!(v["error"], "NotCoprime");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["classify", "--shape", "e1sq-e2", "--p", "5", "--a", "1"][..],
        &["--json", "classify", "--shape", "ordinary-cube"][..],
        &["--json", "weil", "end", "t^4-9t^2+81", "--q", "9"][..],
        &["quat", "maximal", "3"][..],
        &["gl3", "maximal", "5"][..],
    ] {
        assert_eq!(run(args), run(args), "{args:?}");
    }
}

#[test]
fn group_commands() {
    assert_eq!(run(&["group", "info", "SL2(F3)"]).1, "T*: order 24\n");
    assert_eq!(run(&["group", "embeds", "Q8", "SL2F3"]).1, "embeds: true (Q8 in T*)\n");
    assert_eq!(run(&["group", "iso", "D6", "Sym3×C2"]).1, "isomorphic: true (D6, Sym3×C2)\n");
}

#[test]
fn gl3_and_quat() {
    assert_eq!(run(&["gl3", "exponents", "5"]).1, "allowed exponents: 3, 4, 5, 6, 10\n");
    assert!(run(&["gl3", "maximal", "5"]).1.contains("Alt5×C2"));
    assert_eq!(run(&["quat", "units", "7"]).1, "C4\n");
    let (code, out, _) = run(&["quat", "containments"]);
    assert_eq!(code, 0);
    assert!(out.contains("Dic28 ≰ ±L2(7).2: ok"));
}

#[test]
fn data_directory_override() {
    let dir = std::env::temp_dir().join(format!("gavt-data-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let facts = gavt_core::classify::FACTS_JSON.replace("\"group\": \"C18\"", "\"group\": \"C9\"");
    fs::write(dir.join("facts.json"), facts).unwrap();
    let d = dir.to_str().unwrap();
    let (code, out, _) = run(&["--data", d, "classify", "--shape", "simple3"]);
    assert_eq!(code, 1);
    assert!(out.contains("C9") && out.contains("matches stored list: false"));
    fs::write(dir.join("facts.json"), "not json").unwrap();
    let (code, _, err) = run(&["--data", d, "classify", "--shape", "simple3"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: Parse"));
    let (code, _, _) = run(&["--data", d, "weil", "check", "t^4+16", "--q", "4"]);
    assert_eq!(code, 0);
    fs::remove_dir_all(&dir).unwrap();
}
