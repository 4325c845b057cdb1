//! End-to-end tests that drive the installed binary the way a shell
//! user would: real argv, real exit codes, stdout compared against the
//! documented formats.

use std::collections::BTreeSet;
use std::process::{Command, Output};

fn mfib(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mfib"))
        .args(args)
        .output()
        .expect("binary must run")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout must be utf-8")
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("process must exit normally")
}

#[test]
fn alpha_prints_exact_values() {
    let out = mfib(&["alpha", "--k", "4", "--r", "1"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "6\n");

    let out = mfib(&["alpha", "--k", "2", "--r", "2"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "34/3\n");
}

#[test]
fn sequence_commands_print_single_numbers() {
    let out = mfib(&["fib", "--k", "4", "--n", "9"]);
    assert_eq!(stdout_of(&out), "98209\n");
    let out = mfib(&["lucas", "--k", "1", "--n", "6"]);
    assert_eq!(stdout_of(&out), "18\n");
}

#[test]
fn markoff_form_evaluates() {
    let out = mfib(&["markoff", "--triple", "4,6,72"]);
    assert_eq!(stdout_of(&out), "52\n");
    let out = mfib(&["markoff", "--triple", "1,1,1"]);
    assert_eq!(stdout_of(&out), "0\n");
}

#[test]
fn vieta_moves_compose_and_invert() {
    let out = mfib(&["vieta", "--triple", "4,6,72", "--move", "v1"]);
    assert_eq!(stdout_of(&out), "(6,72,1292)\n");

    let out = mfib(&["vieta", "--triple", "(6,72,1292)", "--move", "v3"]);
    assert_eq!(stdout_of(&out), "(4,6,72)\n");

    // (4,6,72) sits on the 3ab = c boundary, so the descending move
    // has no positive result and the invocation is rejected.
    let out = mfib(&["vieta", "--triple", "4,6,72", "--move", "v3"]);
    assert_eq!(code_of(&out), 2);
}

#[test]
fn tree_dot_reproduces_first_figure() {
    let out = mfib(&[
        "tree",
        "--root",
        "4,6,72",
        "--depth",
        "3",
        "--max-component",
        "1000000000000",
        "--format",
        "dot",
        "--bold",
        "4,1,2",
    ]);
    assert_eq!(code_of(&out), 0);
    let dot = stdout_of(&out);

    for t in [
        "(4,6,72)",
        "(4,72,858)",
        "(6,72,1292)",
        "(6,1292,23184)",
        "(6,23184,416020)",
    ] {
        assert!(dot.contains(&format!("[label=\"{t}\"")), "missing {t}");
    }

    let bold_nodes: Vec<&str> = dot
        .lines()
        .filter(|l| l.contains("style=bold") && !l.contains("->"))
        .collect();
    assert_eq!(bold_nodes.len(), 3, "exactly the branch chain is bold");
    for t in ["(6,72,1292)", "(6,1292,23184)", "(6,23184,416020)"] {
        assert!(bold_nodes.iter().any(|l| l.contains(t)), "{t} must be bold");
    }
    assert!(
        dot.contains("n0 [label=\"(4,6,72)\"];"),
        "the root is not part of the bold chain"
    );

    let bold_edges = dot
        .lines()
        .filter(|l| l.contains("->") && l.contains("style=bold"))
        .count();
    assert_eq!(bold_edges, 2, "two edges join the three bold nodes");
}

#[test]
fn tree_dot_without_bold_still_lists_the_figure_triples() {
    let out = mfib(&[
        "tree", "--root", "4,6,72", "--depth", "3", "--format", "dot",
    ]);
    assert_eq!(code_of(&out), 0);
    let dot = stdout_of(&out);
    for t in [
        "(4,6,72)",
        "(6,72,1292)",
        "(6,1292,23184)",
        "(6,23184,416020)",
    ] {
        assert!(dot.contains(&format!("[label=\"{t}\"")), "missing {t}");
    }
    assert!(!dot.contains("style=bold"));
}

#[test]
fn tree_dot_bolds_the_third_figure_chain() {
    let out = mfib(&[
        "tree", "--root", "1,6,21", "--depth", "3", "--format", "dot", "--bold", "1,3,2",
    ]);
    assert_eq!(code_of(&out), 0);
    let dot = stdout_of(&out);
    let bold_nodes: Vec<&str> = dot
        .lines()
        .filter(|l| l.contains("style=bold") && !l.contains("->"))
        .collect();
    assert_eq!(bold_nodes.len(), 3);
    for t in ["(6,21,377)", "(6,377,6765)", "(6,6765,121393)"] {
        assert!(bold_nodes.iter().any(|l| l.contains(t)), "{t} must be bold");
    }
}

#[test]
fn tree_dot_depth_zero_is_a_single_node() {
    let out = mfib(&[
        "tree", "--root", "4,6,72", "--depth", "0", "--format", "dot",
    ]);
    assert_eq!(code_of(&out), 0);
    let dot = stdout_of(&out);
    assert!(dot.contains("n0 [label=\"(4,6,72)\"];"));
    assert!(!dot.contains("->"), "no edges at depth zero");
}

#[test]
fn tree_json_handles_the_coincident_child() {
    let out = mfib(&[
        "tree", "--root", "1,1,6", "--depth", "1", "--format", "json",
    ]);
    assert_eq!(code_of(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid json");
    let nodes = v["nodes"].as_array().expect("nodes array");
    assert_eq!(nodes.len(), 2, "both moves from (1,1,6) coincide");
    assert_eq!(nodes[1]["move"], "v1=v2(dedup)");
    assert_eq!(nodes[1]["parent"], 0);
    assert_eq!(nodes[1]["triple"], serde_json::json!(["1", "6", "17"]));
}

#[test]
fn tree_json_round_trips_for_every_figure_root() {
    for root in ["4,6,72", "1,1,6", "1,6,21", "3,6,55", "6,8,144"] {
        let out = mfib(&[
            "tree",
            "--root",
            root,
            "--depth",
            "3",
            "--max-component",
            "1000000000000",
            "--format",
            "json",
        ]);
        assert_eq!(code_of(&out), 0, "root {root}");
        let raw = stdout_of(&out);
        let v: serde_json::Value = serde_json::from_str(&raw).expect("valid json");
        let again = serde_json::to_string_pretty(&v).expect("serialize") + "\n";
        assert_eq!(raw, again, "parse then print must reproduce {root}");
        assert!(raw.ends_with('\n'), "output ends with a newline");
    }
}

#[test]
fn verify_t11_is_clean_for_excluded_k() {
    let out = mfib(&[
        "verify-t11",
        "--k",
        "3",
        "--m-max",
        "100",
        "--bound",
        "10000",
    ]);
    assert_eq!(code_of(&out), 0);
    assert!(stdout_of(&out).contains("clean"));

    let out = mfib(&[
        "verify-t11",
        "--k",
        "3",
        "--m-max",
        "100",
        "--bound",
        "10000",
        "--format",
        "json",
    ]);
    assert_eq!(code_of(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid json");
    assert_eq!(v["mismatches"], serde_json::json!([]));
}

#[test]
fn verify_t11_fault_injection_flips_the_exit_code() {
    let args = [
        "verify-t11",
        "--k",
        "4",
        "--m-max",
        "200",
        "--bound",
        "10000",
    ];
    let clean = mfib(&args);
    assert_eq!(code_of(&clean), 0);
    assert!(stdout_of(&clean).contains("clean"));

    let mut faulted_args = args.to_vec();
    faulted_args.extend(["--perturb-alpha", "1"]);
    let faulted = mfib(&faulted_args);
    assert_eq!(code_of(&faulted), 1, "a shifted family must be caught");
    assert!(stdout_of(&faulted).contains("mismatch"));
}

#[test]
fn verify_t12_passes_and_flags_a_short_budget() {
    let out = mfib(&[
        "verify-t12",
        "--k",
        "4",
        "--r",
        "1",
        "--ell-max",
        "8",
        "--depth",
        "8",
    ]);
    assert_eq!(code_of(&out), 0);
    assert!(stdout_of(&out).contains("clean"));

    let out = mfib(&[
        "verify-t12",
        "--k",
        "4",
        "--r",
        "1",
        "--ell-max",
        "6",
        "--depth",
        "0",
    ]);
    assert_eq!(code_of(&out), 1);
    assert!(stdout_of(&out).contains("reachable within 0 forward steps"));
}

#[test]
fn verify_t13_min_len_one_surfaces_the_stub_path() {
    let out = mfib(&[
        "verify-t13",
        "--k",
        "1",
        "--m",
        "6",
        "--bound",
        "100",
        "--min-len",
        "1",
    ]);
    assert_eq!(code_of(&out), 1);
    assert!(stdout_of(&out).contains("(1,1,4)"));

    let out = mfib(&["verify-t13", "--k", "1", "--m", "6", "--bound", "100"]);
    assert_eq!(code_of(&out), 0, "default length filter keeps it clean");
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &[],
        &["bogus"],
        &["fib", "--k", "4", "--n", "9", "--format", "dot"],
        &["fib", "--k", "4"],
        &["fib", "--k", "0", "--n", "3"],
        &["verify-t13", "--k", "1", "--m", "0", "--bound", "100"],
        &["tree", "--root", "4,6,72", "--depth", "99"],
        &[
            "tree", "--root", "4,6,72", "--depth", "1", "--bold", "4,1,9",
        ],
        &["markoff", "--triple", "4,6"],
        &["--workers", "0", "fib", "--k", "1", "--n", "1"],
        &[
            "identities",
            "--name",
            "vajda",
            "--k",
            "5",
            "--params",
            "7,2",
        ],
        &["identities", "--name", "nope", "--k", "5", "--params", "1"],
    ];
    for args in cases {
        let out = mfib(args);
        assert_eq!(code_of(&out), 2, "args {args:?} must be a usage error");
    }
}

#[test]
fn help_and_version_exit_zero() {
    for args in [&["--help"][..], &["--version"][..], &["tree", "--help"][..]] {
        let out = mfib(args);
        assert_eq!(code_of(&out), 0, "args {args:?}");
    }
}

#[test]
fn output_flag_writes_the_file_and_keeps_stdout_quiet() {
    let dir = std::env::temp_dir().join("mfib-cli-test");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join("alpha.txt");
    let out = mfib(&[
        "alpha",
        "--k",
        "4",
        "--r",
        "1",
        "--output",
        path.to_str().expect("utf-8 path"),
    ]);
    assert_eq!(code_of(&out), 0);
    assert!(stdout_of(&out).is_empty());
    assert_eq!(std::fs::read_to_string(&path).expect("file written"), "6\n");
}

#[test]
fn enumerate_lists_the_m52_triples_and_classifies_them() {
    let out = mfib(&["enumerate", "--m", "52", "--bound", "2000"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    let lines: BTreeSet<&str> = text.lines().collect();
    for t in ["(4,6,72)", "(4,72,858)", "(6,72,1292)"] {
        assert!(text.lines().any(|l| l == t), "missing {t}");
    }
    assert_eq!(lines.len(), text.lines().count(), "no duplicates");

    let out = mfib(&["enumerate", "--m", "52", "--bound", "2000", "--k", "4"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(!text.is_empty());
    for line in text.lines() {
        assert!(line.contains("m=52"), "classified line {line}");
    }
    assert!(text.contains("(4,6,72) m=52 minimal=yes"));
}

#[test]
fn roots_lists_the_three_branches_of_the_k1_r3_family() {
    let out = mfib(&["roots", "--k", "1", "--r", "3"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("minimal root (1,6,21), branch start (6,21,377)"));
    assert!(text.contains("minimal root (3,6,55), branch start (6,55,987)"));
    assert!(text.contains("minimal root (6,8,144), branch start (6,144,2584)"));
}

#[test]
fn branch_walk_matches_the_figure_chain() {
    let out = mfib(&[
        "branch", "--k", "4", "--r", "1", "--ell0", "4", "--count", "2",
    ]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(
        stdout_of(&out),
        "(6,72,1292)\n(6,1292,23184)\n(6,23184,416020)\n"
    );
}

#[test]
fn classify_reports_all_fields_for_a_family_member() {
    let out = mfib(&["classify", "--k", "4", "--r", "1", "--n", "5"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    for line in ["alpha 6", "b 72", "c 1292", "m 52", "integer_entries true"] {
        assert!(text.lines().any(|l| l == line), "missing line {line}");
    }
}

#[test]
fn identities_list_and_evaluate() {
    let out = mfib(&["identities", "--list"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out).lines().count(), 6);

    let out = mfib(&[
        "identities",
        "--name",
        "vajda",
        "--k",
        "5",
        "--params",
        "7,2,3",
    ]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "0\n");
}

#[test]
fn workers_flag_is_accepted() {
    let out = mfib(&[
        "--workers",
        "2",
        "verify-t11",
        "--k",
        "3",
        "--m-max",
        "50",
        "--bound",
        "5000",
    ]);
    assert_eq!(code_of(&out), 0);
}
