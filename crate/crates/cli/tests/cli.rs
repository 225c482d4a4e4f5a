use std::process::Command;

fn wildquot(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_wildquot"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn verify_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let (code, stdout, _) = wildquot(&["verify", "--q", "2", "--json", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}");
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["q"], 2);
    assert_eq!(v["overall"], true);
    let claims = v["claims"].as_array().unwrap();
    assert!(claims.iter().all(|c| c["status"] == "pass"));
    for id in [
        "prop-order",
        "prop-special-p-group",
        "prop-higher-ramification",
        "cor-wild-conductor",
        "thm-cohomology-representation",
        "cor-invariant-cohomology",
        "prop-singular-fiber",
        "thm-two-nodes",
        "thm-chern-invariants",
        "thm-characteristic-polynomial",
        "prop-irreducible-representations",
    ] {
        let c = claims.iter().find(|c| c["id"] == id).unwrap_or_else(|| panic!("{id} missing"));
        for key in ["anchor", "observed", "expected"] {
            assert!(c[key].is_string(), "{id}.{key}");
        }
    }
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let (code, _, _) = wildquot(&["verify", "--q", "2,3", "--json", p.to_str().unwrap()]);
        assert_eq!(code, 0);
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: serde_json::Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn verify_several() {
    let (code, stdout, _) = wildquot(&["verify", "--q", "2,3,4,5"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.matches("overall: pass").count(), 4);
}

#[test]
fn invalid_q_is_usage_error() {
    let (code, _, stderr) = wildquot(&["verify", "--q", "6"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("not a prime power"));
    let (code, _, _) = wildquot(&["group", "--q", "16"]);
    assert_eq!(code, 2);
    let (code, _, _) = wildquot(&["verify"]);
    assert_eq!(code, 2);
}

#[test]
fn fiber_dot_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f3.dot");
    let (code, _, _) = wildquot(&["fiber", "--q", "3", "--dot", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let dot = std::fs::read_to_string(&path).unwrap();
    assert_eq!(dot.matches("[label=").count(), 13);
    assert!(dot.contains("F4 [m=3, s=-3]"));
    let (code, stdout, _) = wildquot(&["fiber", "--q", "2"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("q = 2: 8 vertices, 2 nodes"));
    assert!(stdout.contains("F4 [m=2, s=-2]"));
}

#[test]
fn hj_subcommand() {
    let (code, stdout, _) = wildquot(&["hj", "7", "3", "--p", "7"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("[3, 2, 2]"));
    assert!(stdout.contains("7/5"));
    assert!(stdout.contains("Z/7"));
    assert!(stdout.contains("local pi_1 order     1"));
    let (code, stdout, _) = wildquot(&["hj", "4", "3", "--p", "2"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("[2, 2, 2]"));
    assert!(stdout.contains("local pi_1 order     1"));
    let (code, _, stderr) = wildquot(&["hj", "4", "2"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("not coprime"));
}

#[test]
fn other_subcommands() {
    let (code, stdout, _) = wildquot(&["invariants", "--q", "2,3"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("e                12"));
    assert!(stdout.contains("K^2              -6"));
    let (code, stdout, _) = wildquot(&["curve", "--q", "2", "--threads", "2"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("f = 3: #C = 81, predicted 81"));
    let (code, stdout, _) = wildquot(&["ramify", "--q", "2"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("Swan conductor of H^1: 3"));
    let (code, stdout, _) = wildquot(&["reps", "--q", "3"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("NoMuP: 6 irreducibles (6 class orbits)"));
    let (code, stdout, _) = wildquot(&["group", "--q", "3"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("conjugacy classes    11"));
}
