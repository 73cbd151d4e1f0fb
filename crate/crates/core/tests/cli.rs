use std::path::PathBuf;
use std::process::{Command, Output};

use nsgames::io::{behavior_from_json, certificate_from_json, game_from_json};
use nsgames::nspoly::validate_behavior;

fn nsgames(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nsgames"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nsgames-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn field(out: &Output, key: &str) -> Option<String> {
    let text = String::from_utf8_lossy(&out.stdout);
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")).map(str::to_string))
}

fn emit(name: &str, extra: &[&str], file: &str) -> PathBuf {
    let path = scratch(file);
    let mut args = vec!["games", "emit", name];
    args.extend_from_slice(extra);
    args.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let out = nsgames(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn list_names_every_constructor() {
    let out = nsgames(&["games", "list"]);
    assert!(out.status.success());
    for name in ["chsh", "chsh3", "oddcycle"] {
        assert!(field(&out, name).is_some(), "missing {name}");
    }
}

#[test]
fn emitted_games_parse_back() {
    let path = emit("chsh", &[], "chsh.json");
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let pi = v["pi"].as_array().unwrap();
    assert_eq!(pi.len(), 4);
    assert!(pi.iter().all(|e| e["p"] == "1/4"));
    assert_eq!(game_from_json(&text).unwrap(), nsgames::game::make_chsh());

    let path = emit("oddcycle", &["--n", "3", "--extend", "1"], "oc3.json");
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["players"], 3);
    let pi = v["pi"].as_array().unwrap();
    assert_eq!(pi.len(), 6);
    assert!(pi.iter().all(|e| e["p"] == "1/6"));
}

#[test]
fn bad_parameters_are_usage_errors() {
    assert_eq!(nsgames(&["games", "emit", "oddcycle", "--n", "4"]).status.code(), Some(2));
    assert_eq!(nsgames(&["games", "emit", "oddcycle"]).status.code(), Some(2));
    assert_eq!(nsgames(&["games", "emit", "chsh3", "--extend", "1"]).status.code(), Some(2));
    assert_eq!(nsgames(&["games", "emit", "nope"]).status.code(), Some(2));
    assert_eq!(nsgames(&["frontier", "--weights", "0,0"]).status.code(), Some(2));
    assert_eq!(nsgames(&["frontier", "--weights", "1"]).status.code(), Some(2));
    assert_eq!(nsgames(&["oddcycle", "--n", "6", "--mode", "reduced"]).status.code(), Some(2));
}

#[test]
fn solve_reports_exact_values() {
    let chsh = emit("chsh", &[], "solve-chsh.json");
    let behavior = scratch("chsh-behavior.json");
    let dual = scratch("chsh-dual.json");
    let out = nsgames(&[
        "solve",
        chsh.to_str().unwrap(),
        "--value",
        "ns",
        "--behavior",
        behavior.to_str().unwrap(),
        "--dual",
        dual.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(field(&out, "value").as_deref(), Some("1"));
    assert_eq!(field(&out, "kind").as_deref(), Some("no-signaling"));
    let b = behavior_from_json(&std::fs::read_to_string(&behavior).unwrap()).unwrap();
    assert_eq!(validate_behavior(&b), Ok(()));
    let d: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&dual).unwrap()).unwrap();
    assert!(d.as_object().unwrap().contains_key("norm(0,0)"));

    let chsh3 = emit("chsh3", &[], "solve-chsh3.json");
    let out = nsgames(&["solve", chsh3.to_str().unwrap(), "--value", "ns"]);
    assert_eq!(field(&out, "value").as_deref(), Some("3/4"));

    let oc = emit("oddcycle", &["--n", "3", "--extend", "1"], "solve-oc.json");
    let out = nsgames(&["solve", oc.to_str().unwrap(), "--value", "classical"]);
    assert_eq!(field(&out, "value").as_deref(), Some("5/6"));
    assert_eq!(field(&out, "kind").as_deref(), Some("classical"));
}

#[test]
fn solve_exit_codes() {
    let missing = nsgames(&["solve", "/nonexistent/game.json", "--value", "ns"]);
    assert_eq!(missing.status.code(), Some(2));

    let bad = scratch("bad.json");
    std::fs::write(
        &bad,
        r#"{"name":"x","players":1,"questions":[2],"answers":[2],"pi":[{"q":[0],"p":"1/3"}],"V":[]}"#,
    )
    .unwrap();
    assert_eq!(nsgames(&["solve", bad.to_str().unwrap(), "--value", "ns"]).status.code(), Some(2));

    let oc = emit("oddcycle", &["--n", "7"], "budget-oc.json");
    let out = nsgames(&[
        "solve",
        oc.to_str().unwrap(),
        "--value",
        "classical",
        "--strategy-budget",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = nsgames(&["solve", oc.to_str().unwrap(), "--value", "ns", "--cell-budget", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn oddcycle_modes() {
    let out = nsgames(&["oddcycle", "--n", "5", "--mode", "reduced"]);
    assert_eq!(field(&out, "value").as_deref(), Some("9/10"));
    let full = nsgames(&["oddcycle", "--n", "3", "--mode", "full"]);
    let reduced = nsgames(&["oddcycle", "--n", "3", "--mode", "reduced"]);
    assert_eq!(field(&full, "value").as_deref(), Some("5/6"));
    assert_eq!(field(&full, "value"), field(&reduced, "value"));

    let cert = scratch("c9.json");
    let out = nsgames(&["oddcycle", "--n", "9", "--mode", "certificate", "--cert-out", cert.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(field(&out, "value").as_deref(), Some("17/18"));
    assert_eq!(field(&out, "verification").as_deref(), Some("PASS"));
    assert_eq!(field(&out, "kind").as_deref(), Some("certificate-bound"));
    certificate_from_json(&std::fs::read_to_string(&cert).unwrap()).unwrap();

    let out = nsgames(&["oddcycle", "--n", "9", "--mode", "certificate", "--cert-in", cert.to_str().unwrap()]);
    assert_eq!(field(&out, "verification").as_deref(), Some("PASS"));
    assert_eq!(field(&out, "source").as_deref(), Some("file"));

    let out = nsgames(&["oddcycle", "--n", "7", "--mode", "certificate", "--cert-in", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tampered_certificate_exits_four() {
    let cert = scratch("c5.json");
    nsgames(&["oddcycle", "--n", "5", "--mode", "certificate", "--cert-out", cert.to_str().unwrap()]);
    let text = std::fs::read_to_string(&cert).unwrap();
    let tampered = text.replacen("\"v\": \"9\"", "\"v\": \"8\"", 1);
    assert_ne!(text, tampered, "n(0,0) = 9 should be present");
    std::fs::write(&cert, tampered).unwrap();
    let out = nsgames(&["oddcycle", "--n", "5", "--mode", "certificate", "--cert-in", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(field(&out, "verification").as_deref(), Some("FAIL"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mu(0,0|0,0)"));
}

#[test]
fn frontier_csv_and_json() {
    let csv = scratch("frontier.csv");
    let out = nsgames(&["frontier", "--weights", "1,1;0,1", "--weights", "2,1", "--out", csv.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(
        std::fs::read_to_string(&csv).unwrap(),
        "alpha,beta,value\n1,1,4\n0,1,4\n2,1,8\n"
    );

    let out = nsgames(&["--json", "frontier", "--weights", "-1/2,1"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["table"][0]["value"], "4");
    assert_eq!(v["command"], "frontier");
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let run = || {
        let out = nsgames(&["--json", "oddcycle", "--n", "3", "--mode", "reduced"]);
        let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        v.as_object_mut().unwrap().remove("wall_time_ms");
        v
    };
    assert_eq!(run(), run());
}
