use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn toroid(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toroid")).current_dir(dir).args(args).output().expect("binary runs")
}

fn json(dir: &Path, args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = toroid(dir, &all);
    let code = out.status.code().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let value = if text.trim().is_empty() { Value::Null } else { serde_json::from_str(&text).unwrap() };
    (code, value)
}

#[test]
fn generated_witnesses_verify_and_certify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let cases: [(&[&str], &str); 6] = [
        (&["generate", "pyramid", "--n", "6"], "pyramid-6"),
        (&["generate", "pyramid", "--n", "6", "--space-base"], "pyramid-space-base-6"),
        (&["generate", "bipyramid", "--n", "7"], "bipyramid-7"),
        (&["generate", "csaszar"], "csaszar"),
        (&["generate", "toroid-p9"], "toroid-p9"),
        (&["generate", "chain", "--p", "3"], "chain-csaszar-3"),
    ];
    for (args, label) in cases {
        assert_eq!(json(d, args).0, 0, "{args:?}");
        let (mesh, tets) = (format!("{label}.off"), format!("{label}.witness.json"));
        let (code, report) = json(d, &["verify", &mesh, &tets]);
        assert_eq!(code, 0, "{label}");
        assert_eq!(report["result"]["valid"], true);
        let (code, report) = json(d, &["certify", &mesh, &tets]);
        assert_eq!(code, 0, "{label}");
        let expected = if label == "bipyramid-7" { "valid-but-unproven" } else { "proven-minimal" };
        assert_eq!(report["result"]["verdict"], expected, "{label}");
    }
}

#[test]
fn chain_with_attachment() {
    let dir = tempfile::tempdir().unwrap();
    let (code, report) = json(dir.path(), &["generate", "chain+attach", "--p", "2", "--k", "5"]);
    assert_eq!(code, 0);
    let r = &report["result"];
    assert_eq!((r["vertices"].as_u64(), r["witness_size"].as_u64()), (Some(13), Some(16)));
    assert_eq!(r["lower_bound"], 16);
}

#[test]
fn twisted_prism_exits_negative() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let (code, report) = json(d, &["generate", "schoenhardt"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["witness_size"], Value::Null);
    let (code, report) = json(d, &["triangulate", "schoenhardt.off"]);
    assert_eq!(code, 2);
    assert_eq!(report["result"]["status"], "not-triangulable");
    assert_eq!(report["result"]["candidates"], 0);
}

#[test]
fn bipyramid_search_and_budget() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    json(d, &["generate", "bipyramid", "--n", "7"]);
    let (code, report) = json(d, &["triangulate", "bipyramid-7.off", "--mode", "exhaustive"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["t_min"], 5);
    assert!(report["result"]["t_max"].as_u64().unwrap() >= 6);
    let (code, report) = json(d, &["triangulate", "bipyramid-7.off", "--mode", "exhaustive", "--budget", "2"]);
    assert_eq!(code, 3);
    assert_eq!(report["result"]["status"], "budget-exceeded");
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    json(d, &["generate", "chain", "--p", "2"]);
    let run = || toroid(d, &["triangulate", "chain-csaszar-2.off", "--mode", "exhaustive", "--json"]).stdout;
    let first = run();
    assert!(!first.is_empty());
    assert_eq!(first, run());
    let (_, report) = json(d, &["inspect", "chain-csaszar-2.off"]);
    let digest = report["inputs"][0]["sha256"].as_str().unwrap();
    assert_eq!(digest.len(), 64);
}

#[test]
fn inspect_reports_topology() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    json(d, &["generate", "csaszar"]);
    let (code, report) = json(d, &["inspect", "csaszar.off", "--seed", "11"]);
    assert_eq!(code, 0);
    let s = &report["result"]["surface"];
    assert_eq!((s["genus"].as_i64(), s["edges"].as_u64()), (Some(1), Some(21)));
    assert_eq!(report["result"]["complete_edge_graph"], true);
    assert_eq!(report["result"]["relabel_check"]["consistent"], true);

    let octahedron = "OFF\n6 8 12\n1 0 0\n0 1 0\n-1 0 0\n0 -1 0\n0 0 1\n0 0 -1\n\
        3 0 1 4\n3 1 2 4\n3 2 3 4\n3 3 0 4\n3 1 0 5\n3 2 1 5\n3 3 2 5\n3 0 3 5\n";
    std::fs::write(d.join("octahedron.off"), octahedron).unwrap();
    let (code, report) = json(d, &["inspect", "octahedron.off"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["surface"]["genus"], 0);
    assert_eq!(report["result"]["surface"]["volume6"], "8");

    json(d, &["generate", "chain-shared-tet", "--p", "2"]);
    let (code, report) = json(d, &["inspect", "chain-shared-tet-2.off"]);
    assert_eq!(code, 0);
    let s = &report["result"]["surface"];
    assert_eq!((s["vertices"].as_u64(), s["genus"].as_i64()), (Some(10), Some(2)));
    assert_eq!(s["embedded"], Value::Null);
    let (code, _) = json(d, &["triangulate", "chain-shared-tet-2.off"]);
    assert_eq!(code, 1);
}

#[test]
fn bound_and_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = toroid(d, &["bound", "--n", "10", "--p", "2"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "13");
    json(d, &["generate", "toroid-p9"]);
    let (code, report) =
        json(d, &["congraph", "toroid-p9.decomposition.json", "--mesh", "toroid-p9.off", "--check-m"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["stats"]["single_cycle"], true);
    assert_eq!(report["result"]["m_division"]["verdict"], "m-division");
    let (code, report) = json(d, &["generate", "cycle-closure", "--p", "3"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["claimed_tmin"], 18);
    assert_eq!(report["result"]["graph"]["cycle_rank"], 4);
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(toroid(d, &["frobnicate"]).status.code(), Some(1));
    assert_eq!(toroid(d, &["generate", "chain"]).status.code(), Some(1));
    assert_eq!(toroid(d, &["generate", "pyramid", "--n", "3"]).status.code(), Some(1));
    assert_eq!(toroid(d, &["inspect", "missing.off"]).status.code(), Some(1));
    assert_eq!(toroid(d, &["congraph", "x.json", "--check-m"]).status.code(), Some(1));
    assert_eq!(toroid(d, &["--help"]).status.code(), Some(0));
}
