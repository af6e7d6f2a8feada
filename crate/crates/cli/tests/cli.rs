use std::process::{Command, Output};

use serde_json::Value;

fn insep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_insep")).args(args).env_remove("INSEP_DEPTH_LIMIT").output().expect("binary runs")
}

fn cert(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON certificate")
}

fn all_verified(v: &Value) -> bool {
    v["verification"].as_array().unwrap().iter().all(|c| c["result"] == true)
}

#[test]
fn atom_sentence_is_not_provable() {
    let out = insep(&["janiczak", "decide", "--sentence", "A 5"]);
    assert_eq!(out.status.code(), Some(0));
    let c = cert(&out);
    assert_eq!(c["outputs"]["verdict"]["result"], "NotProvable");
    assert!(all_verified(&c));
}

#[test]
fn depth_zero_gives_the_origin() {
    let out = insep(&["construct", "build-x", "--depth", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(cert(&out)["outputs"]["F_prefix"], serde_json::json!([0]));
}

#[test]
fn certificates_have_the_documented_fields() {
    let c = cert(&insep(&["logic", "parse", "--sentence", "A 2 | ~A 3"]));
    for key in ["command", "inputs", "outputs", "verification", "tool_version", "enumeration_order"] {
        assert!(c.get(key).is_some(), "missing {key}");
    }
    assert_eq!(c["inputs"]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn malformed_input_exits_2() {
    assert_eq!(insep(&["janiczak", "decide", "--sentence", "A 5 &"]).status.code(), Some(2));
    assert_eq!(insep(&["janiczak", "decide", "--bogus"]).status.code(), Some(2));
    assert_eq!(insep(&["pairs", "witness", "--wi", "odd", "--wj", "empty"]).status.code(), Some(2));
    assert_eq!(insep(&["recfun", "run", "--index", "3", "--args", "1,2"]).status.code(), Some(2));
}

#[test]
fn depth_cap_exits_3() {
    let out = Command::new(env!("CARGO_BIN_EXE_insep"))
        .args(["construct", "build-x", "--depth", "2"])
        .env("INSEP_DEPTH_LIMIT", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn runs_are_byte_identical() {
    for args in [
        &["construct", "build-x", "--depth", "2"][..],
        &["recfun", "smn", "--index", "5", "--fixed", "3", "--seed", "7"][..],
        &["pairs", "witness", "--wi", "mod 2: 0", "--wj", "mod 2: 1"][..],
    ] {
        let (a, b) = (insep(args), insep(args));
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn out_flag_writes_the_same_certificate() {
    let dir = std::env::temp_dir().join(format!("insep-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c.json");
    let to_file = insep(&["janiczak", "profiles", "--bound", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(to_file.status.code(), Some(0));
    let to_stdout = insep(&["janiczak", "profiles", "--bound", "3"]);
    assert_eq!(std::fs::read(&path).unwrap(), to_stdout.stdout);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn recfun_commands_verify() {
    let dir = std::env::temp_dir().join(format!("insep-prog-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let prog = dir.join("add.json");
    std::fs::write(&prog, r#"{"index": "5"}"#).unwrap();
    let run = insep(&["recfun", "run", "--program", prog.to_str().unwrap(), "--args", "2,3"]);
    assert_eq!(run.status.code(), Some(0));
    assert!(cert(&run)["outputs"]["outcome"].to_string().contains('5'));
    let fix = insep(&["recfun", "fix", "--index", "0"]);
    assert_eq!(fix.status.code(), Some(0));
    assert!(all_verified(&cert(&fix)));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn witness_lands_outside_both_sets() {
    let out = insep(&["pairs", "witness", "--wi", "finite: 1,2", "--wj", "empty", "--double"]);
    assert_eq!(out.status.code(), Some(0));
    let c = cert(&out);
    for key in ["pair", "i", "j", "witness_value"] {
        assert!(c["outputs"].get(key).is_some(), "missing {key}");
    }
}

#[test]
fn oplus_of_disjoint_signatures() {
    let out = insep(&["logic", "oplus", "--left", "U", "--right", "J'"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(all_verified(&cert(&out)));
    assert_eq!(insep(&["logic", "oplus", "--left", "J", "--right", "U"]).status.code(), Some(2));
}
