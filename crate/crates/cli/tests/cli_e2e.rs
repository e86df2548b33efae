//! End-to-end checks of the binary: exit codes, file round trips,
//! machine-readable output determinism, and the mutation flag.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mepvcb"))
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin()
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const YES_INSTANCE: &str = "problem mepvcb\nleft 1\nright 2\nedge 0 0 3\nedge 0 1 4\nk1 1\nk2 7\nk3 4\n";
const NO_INSTANCE: &str = "problem mepvcb\nleft 1\nright 2\nedge 0 0 3\nedge 0 1 4\nk1 1\nk2 8\nk3 4\n";

#[test]
fn solve_reports_yes_with_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "yes.txt", YES_INSTANCE);
    let out = run(
        &["solve", input.to_str().unwrap(), "--json-out", "report.json"],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("verdict: yes"), "{text}");
    assert!(text.contains("method:"), "{text}");
    assert!(text.contains("chosen (1): L0"), "{text}");

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert_eq!(report["format_version"], 1);
    assert_eq!(report["verdict"], "yes");
    assert_eq!(report["certificate"]["covered_weight"], 7);
    assert_eq!(report["certificate"]["matching_weight"], 4);
}

#[test]
fn solve_reports_no_with_method_and_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "no.txt", NO_INSTANCE);
    let out = run(&["solve", input.to_str().unwrap()], dir.path());
    assert!(out.status.success(), "a no verdict is still a success");
    let text = stdout(&out);
    assert!(text.contains("verdict: no"), "{text}");
    assert!(text.contains("method:"), "{text}");
}

#[test]
fn solve_rejects_malformed_file_with_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "bad.txt", "problem mepvcb\nleft 1\nright 1\nk1 0\nk2 1\nk3 1\n");
    let out = run(&["solve", input.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("k1"), "{err}");
}

#[test]
fn solve_missing_file_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["solve", "nope.txt"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_oracle_cap_exceeded_is_exit_three() {
    // 2-regular graph on 24 vertices surviving all preprocessing rules.
    let mut text = String::from("problem mepvcb\nleft 12\nright 12\n");
    for i in 0..12 {
        text.push_str(&format!("edge {i} {i} 3\n"));
        text.push_str(&format!("edge {i} {} 3\n", (i + 1) % 12));
    }
    text.push_str("k1 1\nk2 4\nk3 3\n");
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "big.txt", &text);
    let out = run(
        &[
            "solve",
            input.to_str().unwrap(),
            "--strategy",
            "oracle-only",
            "--oracle-cap",
            "10",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3));
    // The default strategy solves it fine.
    let out = run(&["solve", input.to_str().unwrap()], dir.path());
    assert!(out.status.success());
}

#[test]
fn solve_json_output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "yes.txt", YES_INSTANCE);
    for name in ["a.json", "b.json"] {
        let out = run(
            &["solve", input.to_str().unwrap(), "--seed", "42", "--json-out", name],
            dir.path(),
        );
        assert!(out.status.success());
    }
    let a = std::fs::read(dir.path().join("a.json")).unwrap();
    let b = std::fs::read(dir.path().join("b.json")).unwrap();
    assert_eq!(a, b, "machine-readable output is deterministic");
}

#[test]
fn reduce_writes_target_and_report_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "src.txt", YES_INSTANCE);
    let out = run(
        &["reduce", "embed-regular", input.to_str().unwrap(), "image.txt"],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let image = std::fs::read_to_string(dir.path().join("image.txt")).unwrap();
    assert!(image.starts_with("problem mepvcb"));
    let report: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("image.report.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(report["reduction"], "embed-regular");
    assert_eq!(report["params"]["c"], "9");
    assert_eq!(report["source_budget"], report["target_budget"]);
}

#[test]
fn reduce_rejects_violated_preconditions_by_name() {
    // Two 2-paths whose light weights sum past the minimum heavy weight.
    let gapless = "problem mepvcb\nleft 2\nright 4\nedge 0 0 3\nedge 0 1 5\nedge 1 2 3\nedge 1 3 11\nk1 1\nk2 8\nk3 5\n";
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "src.txt", gapless);
    let out = run(
        &["reduce", "identify-into-tree", input.to_str().unwrap(), "image.txt"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("identify-into-tree"), "{err}");
    assert!(err.contains("gap condition"), "{err}");
}

#[test]
fn reduce_chain_runs_all_stages() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "ss.txt",
        "problem subset-sum\nvalue 1\nvalue 2\nvalue 3\ntarget 5\nsize 2\n",
    );
    let out = run(
        &[
            "reduce",
            "chain-subsetsum-to-2paths",
            input.to_str().unwrap(),
            "image.txt",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let image = std::fs::read_to_string(dir.path().join("image.txt")).unwrap();
    assert!(image.starts_with("problem mepvcb"), "{image}");
    let report: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("image.report.json")).unwrap(),
    )
    .unwrap();
    for key in ["signed.b", "positive.q1", "ordered.q", "2paths.k1"] {
        assert!(report["params"][key].is_string(), "missing {key}: {report}");
    }
}

#[test]
fn verify_default_corpora_pass_for_all_reductions() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["verify", "all", "--count", "10", "--workers", "2", "--json-out", "verify.json"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("embed-regular:"), "{text}");
    assert!(!text.contains(" 1 mismatch"), "{text}");
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("verify.json")).unwrap())
            .unwrap();
    assert_eq!(summary["format_version"], 1);
    assert!(summary["kinds"].as_array().unwrap().len() >= 13);
}

#[test]
fn verify_mutated_reductions_fail_with_witness_files() {
    for kind in [
        "subsetsum-to-bkp",
        "bkp-shift-positive",
        "bkp-enforce-ordering",
        "bkp-enforce-gap",
        "bkp-to-2paths",
        "embed-regular",
        "embed-complete",
        "identify-into-tree",
        "link-into-path",
        "link-into-cycle",
        "add-apex",
        "embed-complete-bipartition",
    ] {
        let dir = tempfile::tempdir().unwrap();
        let out = run(
            &["verify", kind, "--count", "10", "--mutate", "--witness-out", "w.txt"],
            dir.path(),
        );
        assert_eq!(out.status.code(), Some(1), "{kind}: {}", stdout(&out));
        let witness = std::fs::read_to_string(dir.path().join("w.txt")).unwrap();
        assert!(witness.starts_with("problem "), "{kind}: {witness}");
    }
}

#[test]
fn verify_unknown_reduction_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["verify", "nope"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_oversized_corpus_counts_unverified_with_neutral_exit() {
    // A tiny oracle cap makes the embedding targets unverifiable; entries
    // land in the unverified column and the exit stays successful.
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["verify", "embed-regular", "--count", "5", "--oracle-cap", "2"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("unverified"), "{text}");
    assert!(!text.contains(" 0 unverified"), "{text}");
}

#[test]
fn generate_is_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.txt", "b.txt"] {
        let out = run(
            &[
                "generate", "two-paths", name, "--paths", "5", "--seed", "7",
                "--min-weight", "1", "--max-weight", "9",
            ],
            dir.path(),
        );
        assert!(out.status.success());
    }
    let a = std::fs::read(dir.path().join("a.txt")).unwrap();
    let b = std::fs::read(dir.path().join("b.txt")).unwrap();
    assert_eq!(a, b);
    let other = run(
        &[
            "generate", "two-paths", "c.txt", "--paths", "5", "--seed", "8",
            "--min-weight", "1", "--max-weight", "9",
        ],
        dir.path(),
    );
    assert!(other.status.success());
    let c = std::fs::read(dir.path().join("c.txt")).unwrap();
    assert_ne!(a, c);
}

#[test]
fn generate_seed_env_override_matches_flag() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["generate", "two-paths", "env.txt", "--paths", "4"])
        .env("MEPVCB_SEED", "7")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = run(
        &["generate", "two-paths", "flag.txt", "--paths", "4", "--seed", "7"],
        dir.path(),
    );
    assert!(out.status.success());
    assert_eq!(
        std::fs::read(dir.path().join("env.txt")).unwrap(),
        std::fs::read(dir.path().join("flag.txt")).unwrap()
    );
}

#[test]
fn generated_regular_instances_are_regular() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["generate", "regular", "reg.txt", "--side", "5", "--degree", "3", "--seed", "3"],
        dir.path(),
    );
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.path().join("reg.txt")).unwrap();
    let inst: mepvcb::Instance = mepvcb::format::parse_mepvcb(&text).unwrap();
    assert!(inst.graph.vertices().all(|v| inst.graph.degree(v) == 3));
}

#[test]
fn generated_gapped_bkp_satisfies_the_gap() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["generate", "bkp", "bkp.txt", "--items", "6", "--gap", "--seed", "5"],
        dir.path(),
    );
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.path().join("bkp.txt")).unwrap();
    let inst: mepvcb::Bkp = mepvcb::format::parse_bkp(&text).unwrap();
    assert!(inst.satisfies_gap());
}

#[test]
fn stats_prints_profile_and_flags() {
    let k22 = "problem mepvcb\nleft 2\nright 2\nedge 0 0 1\nedge 0 1 1\nedge 1 0 1\nedge 1 1 1\nk1 1\nk2 2\nk3 1\n";
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "k22.txt", k22);
    let out = run(&["stats", input.to_str().unwrap()], dir.path());
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("tau 2 nu 2 alpha 2"), "{text}");
    assert!(text.contains("nu_ind: 1"), "{text}");
    assert!(text.contains("radius 2 diameter 2 disconnected false"), "{text}");
    assert!(text.contains("k2 >= k3 * max_degree: true"), "{text}");
}

#[test]
fn stats_flags_disconnected_forests() {
    let forest = "problem mepvcb\nleft 2\nright 4\nedge 0 0 1\nedge 0 1 1\nedge 1 2 1\nedge 1 3 1\nk1 1\nk2 1\nk3 1\n";
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "forest.txt", forest);
    let out = run(&["stats", input.to_str().unwrap()], dir.path());
    assert!(out.status.success());
    assert!(stdout(&out).contains("disconnected true"));
}

#[test]
fn solve_strategies_agree_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let gen = run(
        &[
            "generate", "random-bipartite", "inst.txt", "--left", "4", "--right", "4",
            "--edges", "9", "--seed", "11",
        ],
        dir.path(),
    );
    assert!(gen.status.success());
    let input = dir.path().join("inst.txt");
    let mut verdicts = Vec::new();
    for strategy in ["auto", "oracle-only", "fpt-vge2", "complement-budget"] {
        let out = run(
            &["solve", input.to_str().unwrap(), "--strategy", strategy],
            dir.path(),
        );
        assert!(out.status.success(), "{strategy}");
        let text = stdout(&out);
        let verdict = text.lines().next().unwrap().to_string();
        verdicts.push(verdict);
    }
    assert!(verdicts.windows(2).all(|w| w[0] == w[1]), "{verdicts:?}");
}
