use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use proptest::prelude::*;
use qadpa::netlist_text::{parse_netlist, write_netlist};
use qadpa::touchstone::read_touchstone;
use qadpa::CliError;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_qadpa"));
    c.env_remove("QADPA_SEED");
    c
}

fn repo(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn qadpa")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn backoff_both_ways() {
    assert_eq!(stdout(&run(&["backoff", "--delta", "1"])), "-3.0103 dB\n");
    assert_eq!(stdout(&run(&["backoff", "--obo", "7.5"])), "delta = 2.1502\n");
}

#[test]
fn wilkinson_netlist_analyses_to_an_even_split() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("w.net");
    let s3p = dir.path().join("w.s3p");
    let summary = stdout(&run(&["synth-wilkinson", "--ratio", "1", "--f0", "8GHz", "--out-netlist", net.to_str().unwrap()]));
    assert!(summary.contains("bridge = 100.000 ohm"), "{summary}");
    stdout(&run(&[
        "analyze",
        net.to_str().unwrap(),
        "--fstart",
        "7.6GHz",
        "--fstop",
        "8.4GHz",
        "--points",
        "81",
        "--out",
        s3p.to_str().unwrap(),
    ]));
    let block = read_touchstone(&std::fs::read_to_string(&s3p).unwrap(), Some(3)).unwrap();
    assert_eq!(block.len(), 81);
    let s = &block.matrices()[40];
    assert!((block.freqs()[40].hz() - 8e9).abs() < 1.0);
    assert!((s[(1, 0)].norm_sqr() - 0.5).abs() < 1e-6);
    assert!(s[(0, 0)].norm() < 1e-6 && s[(1, 2)].norm() < 1e-6);
}

#[test]
fn usage_and_input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.net");
    std::fs::write(&bad, "NODE a\nR R1 a b 50\nPORT 1 a 50\n").unwrap();
    for args in [
        vec!["backoff"],
        vec!["backoff", "--delta", "-1"],
        vec!["synth-wilkinson", "--ratio", "0", "--f0", "8e9"],
        vec!["analyze", bad.to_str().unwrap(), "--fstart", "1e9", "--fstop", "2e9"],
        vec!["analyze", "does/not/exist.net", "--fstart", "1e9", "--fstop", "2e9"],
        vec!["harmonics", "--stages", "2:x"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        if args.len() > 1 {
            assert!(String::from_utf8_lossy(&o.stderr).starts_with("qadpa: "), "{args:?}");
        }
    }
    let o = run(&["analyze", bad.to_str().unwrap(), "--fstart", "1e9", "--fstop", "2e9"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.net:2:"));
}

#[test]
fn seed_variable_overrides_flag() {
    let base = ["synth-match", "--generations", "20", "--population", "40"];
    let with_flag = |s: &str| {
        let mut a = base.to_vec();
        a.extend(["--seed", s]);
        stdout(&run(&a))
    };
    let env = bin().args(base).args(["--seed", "9"]).env("QADPA_SEED", "4").output().unwrap();
    assert_eq!(stdout(&env), with_flag("4"));
    assert_ne!(with_flag("4"), with_flag("9"));
}

#[test]
fn shipped_netlists_round_trip() {
    for name in ["input_divider.net", "asymmetric_combiner.net", "main_omn.net"] {
        let text = std::fs::read_to_string(repo("data/netlists").join(name)).unwrap();
        let a = parse_netlist(&text).unwrap();
        let b = parse_netlist(&write_netlist(&a, "round trip")).unwrap();
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn golden_curves_cover_the_configured_sweep() {
    let csv = stdout(&run(&["doherty-curves", "--config", repo("data/golden.cfg").to_str().unwrap()]));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("pin_dbm,pout_dbm,gain_db"));
    assert_eq!(lines.count(), 301);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dropping_a_node_declaration_names_the_line(skip in 0usize..3) {
        let text = std::fs::read_to_string(repo("data/netlists/asymmetric_combiner.net")).unwrap();
        let node_lines: Vec<usize> = text
            .lines()
            .enumerate()
            .filter(|(_, l)| l.trim_start().to_ascii_uppercase().starts_with("NODE"))
            .map(|(i, _)| i)
            .collect();
        let drop = node_lines[skip % node_lines.len()];
        let mutated: String = text
            .lines()
            .enumerate()
            .filter(|&(i, _)| i != drop)
            .map(|(_, l)| format!("{l}\n"))
            .collect();
        match parse_netlist(&mutated) {
            Err(CliError::Parse { line, .. }) => prop_assert!(line >= 1 && line <= mutated.lines().count()),
            other => prop_assert!(false, "expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn resistor_values_survive_serialisation(r in 1e-3f64..1e6, l in 1e-12f64..1e-6, c in 1e-16f64..1e-9) {
        let text = format!("NODE a\nNODE b\nR R1 a b {r:e}\nL L1 b 0 {l:e}\nC C1 a 0 {c:e}\nPORT 1 a 50\nPORT 2 b 50\n");
        let a = parse_netlist(&text).unwrap();
        let b = parse_netlist(&write_netlist(&a, "")).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn mixed_port_references_need_a_common_zref() {
    let net = repo("data/netlists/main_omn.net");
    let net = net.to_str().unwrap();
    let base = ["analyze", net, "--fstart", "8GHz", "--fstop", "8GHz", "--points", "1"];
    let o = run(&base);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--zref"));
    let mut args = base.to_vec();
    args.extend(["--zref", "50"]);
    let text = stdout(&run(&args));
    assert!(text.contains("# GHz S RI R 50"), "{text}");
}
