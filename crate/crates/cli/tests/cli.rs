use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toricnef"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn fan_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

const P2: &str = r#"{"dim":2,"rays":[[1,0],[0,1],[-1,-1]],"max_cones":[[0,1],[1,2],[0,2]]}"#;

#[test]
fn documented_examples() {
    let o = run(&["nef-trivial", "catalog:example1"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("true\n", 0));
    let o = run(&["nef-check", "catalog:lemma-b", "-d", "-K"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("true\n", 0));
    let o = run(&["picard", "catalog:example1-extended", "--param", "k=2"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("7\n", 0));
    let o = run(&["nef-check", "catalog:example1", "-d", "-K"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("false\n", 0));
}

#[test]
fn assert_turns_false_into_exit_2() {
    let o = run(&["nef-check", "catalog:example1", "-d", "-K", "--assert"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("false\n", 2));
    let o = run(&["projective", "catalog:example1", "--assert"]);
    assert_eq!(code(&o), 2);
    let o = run(&[
        "projective",
        "catalog:lemma-a",
        "--param",
        "a=1",
        "--assert",
    ]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("true\n", 0));
}

#[test]
fn predicates_on_catalog_fans() {
    for (args, want) in [
        (&["smooth", "catalog:example1"][..], "true"),
        (&["smooth", "catalog:example1-sigma"], "false"),
        (&["complete", "catalog:p1122"], "true"),
        (&["nef-trivial", "catalog:lemma-b"], "false"),
        (&["projective", "catalog:lemma-b"], "false"),
        (
            &["nef-check", "catalog:8-5p", "-d", "1,1,1,0,1,1,1,0"],
            "true",
        ),
        (
            &["refines", "catalog:example1", "catalog:example1-sigma"],
            "true",
        ),
        (&["refines", "catalog:8-8", "catalog:p1122"], "true"),
        (&["refines", "catalog:p3", "catalog:example1"], "false"),
        (
            &[
                "map-check",
                "-m",
                "[[1,0,0]]",
                "catalog:example1",
                "catalog:p1",
            ],
            "false",
        ),
        (
            &[
                "map-check",
                "-m",
                "[[1,0,0],[0,1,0]]",
                "catalog:8-14p",
                "catalog:p2",
                "--param",
                "a=0",
            ],
            "true",
        ),
    ] {
        let o = run(args);
        assert_eq!(code(&o), 0, "{args:?}: {}", stderr(&o));
        assert_eq!(stdout(&o).trim(), want, "{args:?}");
    }
}

#[test]
fn file_sources() {
    let f = fan_file(P2);
    let path = f.path().to_str().unwrap();
    let o = run(&["validate", path]);
    assert_eq!(stdout(&o), "true\n");
    let o = run(&["picard", path]);
    assert_eq!(stdout(&o), "1\n");
    let o = run(&["nef-check", path, "-d", "1/2,0,0"]);
    assert_eq!(stdout(&o), "true\n");
    let o = run(&["refines", path, "catalog:p2"]);
    assert_eq!(stdout(&o), "true\n");
    let o = run(&["picard", path, "--param", "a=1"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("--param"), "{}", stderr(&o));
}

#[test]
fn invalid_fans_are_reported() {
    let bad = fan_file(r#"{"dim":2,"rays":[[2,0],[0,1],[-1,-1]],"max_cones":[[0,1],[1,2],[0,2]]}"#);
    let path = bad.path().to_str().unwrap();
    let o = run(&["validate", path]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("false\n"));
    assert!(stdout(&o).contains("ray 0 not primitive"));
    assert_eq!(code(&run(&["validate", path, "--assert"])), 2);
    let o = run(&["smooth", path]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("ray 0 not primitive"));
}

#[test]
fn malformed_input_names_the_field() {
    for (text, field) in [
        (
            r#"{"dim":2,"rays":[[1,0],[0,"x"]],"max_cones":[[0,1]]}"#,
            "rays[1][1]",
        ),
        (r#"{"dim":2,"rays":[[1,0],[0,1]],"cones":[[0,1]]}"#, "cones"),
        (r#"{"rays":[[1,0],[0,1]],"max_cones":[[0,1]]}"#, "dim"),
        (
            r#"{"dim":2,"rays":[[1,0],[0,1]],"max_cones":[[0,1.5]]}"#,
            "max_cones[0][1]",
        ),
    ] {
        let f = fan_file(text);
        let o = run(&["validate", f.path().to_str().unwrap()]);
        assert_eq!(code(&o), 1, "{text}");
        assert!(stderr(&o).contains(field), "{text}: {}", stderr(&o));
    }
    for (args, field) in [
        (&["nef-check", "catalog:example1", "-d", "1,2"][..], "-d"),
        (
            &["nef-check", "catalog:example1", "-d", "1,x,0,0,0,0,0,0"],
            "-d",
        ),
        (&["subdivide", "catalog:p3", "-w", "1,y,1"], "-w"),
        (
            &["map-check", "-m", "[[1,0],[0]]", "catalog:p2", "catalog:p2"],
            "-m",
        ),
        (&["picard", "catalog:example2", "--param", "a"], "--param"),
        (&["picard", "catalog:example2", "--sweep", "a=1"], "--sweep"),
        (&["picard", "catalog:nonesuch"], "nonesuch"),
        (&["picard", "catalog:example2"], "`a`"),
        (
            &["picard", "/nonexistent/fan.json"],
            "/nonexistent/fan.json",
        ),
        (
            &[
                "refines",
                "catalog:p2",
                "catalog:example2",
                "--dst-param",
                "b=1",
            ],
            "`b`",
        ),
    ] {
        let o = run(args);
        assert_eq!(code(&o), 1, "{args:?}");
        assert!(stderr(&o).contains(field), "{args:?}: {}", stderr(&o));
    }
    assert_eq!(code(&run(&["no-such-command"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn json_output_carries_schema_version() {
    for args in [
        &["--json", "picard", "catalog:example1"][..],
        &["--json", "nef-check", "catalog:lemma-b", "-d", "-K"],
        &["--json", "walls", "catalog:p2"],
        &["--json", "nef-cone", "catalog:lemma-b"],
        &["--json", "polytope", "catalog:example1", "-d", "-K"],
        &["--json", "subdivide", "catalog:p3", "-w", "1,1,1"],
        &[
            "--json",
            "refines",
            "catalog:example1",
            "catalog:example1-sigma",
        ],
        &["--json", "catalog", "list"],
        &[
            "--json", "catalog", "get", "example3", "--param", "a=2", "--param", "b=1",
        ],
        &[
            "--json",
            "projective",
            "catalog:example2",
            "--sweep",
            "a=-1..1",
        ],
    ] {
        let o = run(args);
        assert_eq!(code(&o), 0, "{args:?}: {}", stderr(&o));
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["schema_version"], Value::from(1), "{args:?}");
        assert!(v["command"].is_string(), "{args:?}");
    }
    let o = run(&["--json", "nef-check", "catalog:lemma-b", "-d", "-K"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"], Value::Bool(true));
    assert_eq!(v["source"], Value::from("catalog:lemma-b"));

    let o = run(&["--json", "polytope", "catalog:example1", "-d", "-K"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["vertices"].as_array().unwrap().len(), 8);
    assert!(v["result"]["vertices"].to_string().contains("\"-1/2\""));
}

#[test]
fn sweeps_are_ordered_and_deterministic() {
    let args = [
        "nef-trivial",
        "catalog:example3",
        "--sweep",
        "a=-2..2",
        "--sweep",
        "b=-1..1",
    ];
    let first = run(&args);
    assert_eq!(code(&first), 0);
    let lines: Vec<String> = stdout(&first).lines().map(String::from).collect();
    assert_eq!(lines.len(), 15);
    assert_eq!(lines[0], "a=-2 b=-1: true");
    assert_eq!(lines[7], "a=0 b=0: false");
    assert_eq!(lines[14], "a=2 b=1: true");
    for _ in 0..3 {
        assert_eq!(run(&args).stdout, first.stdout);
    }
    let o = run(&[
        "nef-trivial",
        "catalog:example2",
        "--sweep",
        "a=-2..2",
        "--assert",
    ]);
    assert_eq!(code(&o), 2);
    let o = run(&[
        "nef-trivial",
        "catalog:example2",
        "--sweep",
        "a=1..3",
        "--assert",
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn subdivide_output_is_a_fan_file() {
    let o = run(&["subdivide", "catalog:example1-sigma", "-w", "-1,-1,-1"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let f = fan_file(&stdout(&o));
    let path = f.path().to_str().unwrap();
    let o = run(&["subdivide", path, "-w", "-2,-1,-1"]);
    let g = fan_file(&stdout(&o));
    let delta = g.path().to_str().unwrap();
    assert_eq!(stdout(&run(&["smooth", delta])), "true\n");
    assert_eq!(stdout(&run(&["picard", delta])), "5\n");
    assert_eq!(stdout(&run(&["nef-trivial", delta])), "true\n");
    let o = run(&["subdivide", "catalog:p3", "-w", "2,2,2"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn catalog_get_round_trips() {
    let o = run(&["catalog", "get", "example1"]);
    let f = fan_file(&stdout(&o));
    let path = f.path().to_str().unwrap();
    assert_eq!(stdout(&run(&["validate", path])), "true\n");
    assert_eq!(stdout(&run(&["nef-trivial", path])), "true\n");
    let list = stdout(&run(&["catalog", "list"]));
    for name in ["example1", "example2", "lemma-b", "8-14pp", "p1122"] {
        assert!(list.lines().any(|l| l.starts_with(name)), "{name}");
    }
}

#[test]
fn pullback_along_projection() {
    let o = run(&[
        "pullback",
        "-m",
        "[[1,0,0],[0,1,0]]",
        "catalog:8-14p",
        "catalog:p2",
        "--param",
        "a=1",
        "-d",
        "-K",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("multiple 1\ndivisor "));
    let d = text.lines().nth(1).unwrap().trim_start_matches("divisor ");
    let o = run(&["nef-check", "catalog:8-14p", "--param", "a=1", "-d", d]);
    assert_eq!(stdout(&o), "true\n");
    let o = run(&["nef-trivial", "catalog:8-14p", "--param", "a=1"]);
    assert_eq!(stdout(&o), "false\n");
    let o = run(&[
        "pullback",
        "-m",
        "[[1,0,0]]",
        "catalog:example1",
        "catalog:p1",
        "-d",
        "1,0",
    ]);
    assert_eq!(code(&o), 1);
}

#[test]
fn report_command_passes() {
    let o = run(&["report", "paper"]);
    let text = stdout(&o);
    assert_eq!(code(&o), 0, "{text}");
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10);
    for (i, line) in lines[..9].iter().enumerate() {
        assert!(
            line.starts_with(&format!("criterion {} [PASS]", i + 1)),
            "{line}"
        );
    }
    assert_eq!(lines[9], "report: 9 passed, 0 failed");
}
