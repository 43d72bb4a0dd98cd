use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn rpqres(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rpqres"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(s) = stdin {
            pipe.write_all(s.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rpqres-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, content).unwrap();
    p
}

#[test]
fn classify_examples() {
    let o = rpqres(&["classify", "ax*b"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("PTIME (local)"));
    let o = rpqres(&["classify", "aa"], None);
    assert!(stdout(&o).starts_with("NP-hard (repeated letter)"));
    let o = rpqres(&["classify", "abc|bcd"], None);
    assert!(stdout(&o).starts_with("UNKNOWN"));
}

#[test]
fn classify_json_and_words_file() {
    let words = tmp("words.txt", "ab\nbc\n");
    let o = rpqres(
        &["--format", "json", "classify", "--words", words.to_str().unwrap()],
        None,
    );
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "PTIME");
    assert_eq!(v["method"], "bcl");
}

#[test]
fn resilience_examples() {
    let chain = "1 a 2 2\n2 x 3\n3 b 4 3\n";
    let o = rpqres(&["resilience", "ax*b", "-"], Some(chain));
    assert_eq!(stdout(&o).trim(), "1 (local)");
    let o = rpqres(
        &["resilience", "--solver", "exact", "--witness", "ax*b", "-"],
        Some(chain),
    );
    assert_eq!(stdout(&o), "1 (exact)\n  2 x 3 1\n");
    let o = rpqres(&["resilience", "a*", "-"], Some(chain));
    assert_eq!(stdout(&o).trim(), "inf (local)");
    let o = rpqres(&["resilience", "cd", "-"], Some(chain));
    assert!(stdout(&o).starts_with("0 "));
    let o = rpqres(&["resilience", "--set", "ab", "-"], Some("1 a 2 5\n2 b 3 7\n"));
    assert!(stdout(&o).starts_with("1 "));
}

#[test]
fn validate_and_encode_pipeline() {
    let o = rpqres(&["validate-gadget", "aa", "aa"], None);
    assert_eq!(stdout(&o).trim(), "VALID, odd path length 5");
    let gadget = tmp(
        "aa.gadget",
        r#"{"facts": [["t_in","a","t1"],["t1","a","t2"],["t2","a","t3"],["t_out","a","t2"]],
            "t_in": "t_in", "t_out": "t_out", "label": "a", "expected_odd_length": 5}"#,
    );
    let o = rpqres(&["validate-gadget", gadget.to_str().unwrap(), "aa"], None);
    assert_eq!(stdout(&o).trim(), "VALID, odd path length 5");
    let graph = tmp("triangle.graph", "1 2\n2 3\n3 1\n");
    let enc = rpqres(&["encode", graph.to_str().unwrap(), gadget.to_str().unwrap()], None);
    assert_eq!(enc.status.code(), Some(0));
    assert_eq!(stdout(&enc).lines().count(), 15);
    let o = rpqres(&["resilience", "aa", "-"], Some(&stdout(&enc)));
    assert!(stdout(&o).starts_with("8 "));
}

#[test]
fn automaton_and_matches() {
    let o = rpqres(&["automaton", "--is-local", "ab|bc"], None);
    assert_eq!(stdout(&o).trim(), "false");
    let o = rpqres(&["automaton", "--is-local", "ax*b"], None);
    assert_eq!(stdout(&o).trim(), "true");
    let o = rpqres(&["automaton", "--reduce", "a|ab"], None);
    assert!(stdout(&o).starts_with("states"));
    let o = rpqres(&["matches", "aa", "-"], Some("1 a 2\n2 a 3\n3 a 4\n"));
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn deterministic_output() {
    let a = rpqres(&["--format", "json", "validate-gadget", "aa", "aaa"], None);
    let b = rpqres(&["--format", "json", "validate-gadget", "aa", "aaa"], None);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(rpqres(&["classify", "a(b"], None).status.code(), Some(2));
    assert_eq!(rpqres(&["resilience", "ab", "-"], Some("1 a\n")).status.code(), Some(2));
    let big: String = (0..30).map(|i| format!("{i} a {}\n", i + 1)).collect();
    assert_eq!(rpqres(&["resilience", "aa", "-"], Some(&big)).status.code(), Some(3));
    let o = rpqres(&["resilience", "--solver", "bcl", "abc|be", "-"], Some("1 a 2\n"));
    assert_eq!(o.status.code(), Some(4));
}
