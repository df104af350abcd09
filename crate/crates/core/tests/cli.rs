use std::path::Path;
use std::process::{Command, Output};

use berge_ramsey::cli::format::{read_certificate, read_coloring, read_forbidden, read_hypergraph, write_coloring, write_forbidden, write_hypergraph};
use berge_ramsey::cli::RunReport;
use berge_ramsey::hedgehog::build_hedgehog;

fn berge(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_berge"))
        .args(args)
        .current_dir(dir)
        .env_remove("BERGE_BUDGET")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> RunReport {
    RunReport::from_json(std::str::from_utf8(&out.stdout).unwrap()).expect("stdout is a report")
}

#[test]
fn bound_command() {
    let dir = tempfile::tempdir().unwrap();
    let out = berge(dir.path(), &["bound", "--r", "3", "--n", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = report(&out);
    assert_eq!(rep.command, "bound");
    assert_eq!(rep.outcome["c"], 4);
    assert_eq!(rep.outcome["threshold_n"], 12);
    assert_eq!(rep.outcome["sufficiency_ok"], true);
    assert!(String::from_utf8_lossy(&out.stderr).contains("threshold N"));

    let out = berge(dir.path(), &["bound", "--r", "2", "--n", "8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("r >= 3"));

    let rep = report(&berge(dir.path(), &["bound", "--r", "3", "--n", "1"]));
    assert_eq!(rep.outcome["theorem_bound"]["exact"], "1/1");
}

#[test]
fn derandomized_construction_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = berge(dir.path(), &["construct", "--N", "12", "--n", "8", "--r", "3", "--c", "4", "--derandomize", "--verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rep = report(&out);
    assert_eq!(rep.outcome["certificate"]["compatible_count"], "0");
    assert_eq!(rep.outcome["certificate"]["verified"], true);
    assert_eq!(rep.outcome["rule_violations"], 0);
    assert!(rep.outcome["witness"].is_null());

    let cert = read_certificate(&std::fs::read_to_string(dir.path().join("certificate.txt")).unwrap()).unwrap();
    assert!(cert.verify() && cert.is_certifying());
    let forbidden = read_forbidden(&std::fs::read_to_string(dir.path().join("forbidden.txt")).unwrap()).unwrap();
    assert_eq!(forbidden, cert.forbidden);

    let out = berge(dir.path(), &["verify", "--coloring", "coloring.txt", "--n", "8"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn single_color_construction_has_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = berge(dir.path(), &["construct", "--N", "5", "--n", "3", "--r", "3", "--c", "1", "--seed", "7", "--verify"]);
    assert_eq!(out.status.code(), Some(3));
    let rep = report(&out);
    assert_eq!(rep.seed, Some(7));
    assert_eq!(rep.outcome["rule_violations"], 10);
    let w = &rep.outcome["witness"];
    assert_eq!(w["color"], 0);
    assert_eq!(w["assignment"].as_array().unwrap().len(), 3);
    let col = read_coloring(&std::fs::read_to_string(dir.path().join("coloring.txt")).unwrap()).unwrap();
    assert_eq!(col.class_size(0), 10);
}

#[test]
fn files_round_trip_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let out = berge(dir.path(), &["construct", "--N", "9", "--n", "5", "--r", "3", "--c", "4", "--seed", "3", "--policy", "random"]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("coloring.txt")).unwrap();
    assert_eq!(write_coloring(&read_coloring(&text).unwrap()), text);
    let text = std::fs::read_to_string(dir.path().join("forbidden.txt")).unwrap();
    assert_eq!(write_forbidden(&read_forbidden(&text).unwrap()), text);

    let out = berge(dir.path(), &["hedgehog", "--n", "5", "--out", "h.txt"]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("h.txt")).unwrap();
    let h = read_hypergraph(&text).unwrap();
    assert_eq!(&h, build_hedgehog(5).unwrap().hypergraph());
    assert_eq!(write_hypergraph(&h), text);
}

#[test]
fn reports_reproduce() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["montecarlo", "--N", "7", "--n", "6", "--r", "3", "--c", "4", "--trials", "60", "--seed", "5", "--report", "run.json"];
    let first = report(&berge(dir.path(), &args));
    let saved = RunReport::from_json(&std::fs::read_to_string(dir.path().join("run.json")).unwrap()).unwrap();
    assert_eq!(saved, first);
    let argv: Vec<&str> = saved.argv[1..].iter().map(String::as_str).collect();
    let again = report(&berge(dir.path(), &argv));
    assert_eq!(again.outcome, first.outcome);
    assert_eq!(again.parameters, first.parameters);

    let mut parallel: Vec<&str> = argv.clone();
    parallel.extend(["--workers", "3"]);
    assert_eq!(report(&berge(dir.path(), &parallel)).outcome, first.outcome);

    let out = berge(dir.path(), &["construct", "--N", "8", "--n", "5", "--r", "3", "--c", "4", "--seed", "21", "--verify"]);
    let again = berge(dir.path(), &["construct", "--N", "8", "--n", "5", "--r", "3", "--c", "4", "--seed", "21", "--verify"]);
    assert_eq!(report(&out).outcome, report(&again).outcome);
}

#[test]
fn search_hedgehog_montecarlo() {
    let dir = tempfile::tempdir().unwrap();
    let out = berge(dir.path(), &["search", "--r", "3", "--c", "2", "--n", "3", "--nmax", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = report(&out);
    assert_eq!(rep.outcome["value"]["kind"], "found");
    assert_eq!(rep.outcome["value"]["value"], 5);

    let out = berge(dir.path(), &["search", "--r", "5", "--c", "2", "--n", "9", "--N", "9"]);
    assert_eq!(out.status.code(), Some(4));

    let out = Command::new(env!("CARGO_BIN_EXE_berge"))
        .args(["search", "--r", "3", "--c", "2", "--n", "3", "--N", "5"])
        .env("BERGE_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    let out = Command::new(env!("CARGO_BIN_EXE_berge"))
        .args(["search", "--r", "3", "--c", "2", "--n", "3", "--N", "5"])
        .env("BERGE_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let rep = report(&berge(dir.path(), &["hedgehog", "--n", "4"]));
    assert_eq!(rep.outcome["vertices"], 10);
    assert_eq!(rep.outcome["edges"], 6);
    assert_eq!(rep.outcome["berge_clique"], true);

    let out = berge(dir.path(), &["montecarlo", "--N", "7", "--n", "6", "--r", "3", "--c", "4", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(berge(dir.path(), &[]).status.code(), Some(2));
    assert_eq!(berge(dir.path(), &["bound", "--r", "3"]).status.code(), Some(2));
    assert_eq!(berge(dir.path(), &["construct", "--N", "70", "--n", "3", "--r", "3", "--c", "4"]).status.code(), Some(2));
    assert_eq!(berge(dir.path(), &["construct", "--N", "6", "--n", "3", "--r", "3", "--c", "3", "--policy", "pref:0,0,1"]).status.code(), Some(2));
    assert_eq!(berge(dir.path(), &["hedgehog", "--n", "11"]).status.code(), Some(2));
    std::fs::write(dir.path().join("bad.txt"), "berge-coloring v1 N=4 r=3 c=2\n0 0\n").unwrap();
    assert_eq!(berge(dir.path(), &["verify", "--coloring", "bad.txt", "--n", "3"]).status.code(), Some(2));
    assert_eq!(berge(dir.path(), &["verify", "--coloring", "missing.txt", "--n", "3"]).status.code(), Some(1));
    assert_eq!(berge(dir.path(), &["--version"]).status.code(), Some(0));
}
