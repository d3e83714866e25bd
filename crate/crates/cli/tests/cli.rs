use std::path::PathBuf;
use std::process::Command;

fn dlmq() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dlmq"))
}

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("dlmq_test_{}_{name}", std::process::id()))
}

#[test]
fn same_seed_gives_identical_files() {
    let (a, b) = (tmp("h1.csv"), tmp("h2.csv"));
    for path in [&a, &b] {
        let status = dlmq()
            .args(["hadamard", "--p0", "1", "--seed", "7", "--events", "1000", "--points", "4"])
            .arg("--out")
            .arg(path)
            .status()
            .unwrap();
        assert!(status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let _ = std::fs::remove_file(a);
    let _ = std::fs::remove_file(b);
}

#[test]
fn seed_flag_beats_environment() {
    let out_env = tmp("env.csv");
    let out_flag = tmp("flag.csv");
    let args = ["mzi", "--step", "90", "--events", "500"];
    let status = dlmq()
        .args(args)
        .env("DLMQ_SEED", "99")
        .arg("--out")
        .arg(&out_env)
        .status()
        .unwrap();
    assert!(status.success());
    let status = dlmq()
        .args(args)
        .env("DLMQ_SEED", "1234")
        .args(["--seed", "99"])
        .arg("--out")
        .arg(&out_flag)
        .status()
        .unwrap();
    assert!(status.success());
    assert_eq!(
        std::fs::read(&out_env).unwrap(),
        std::fs::read(&out_flag).unwrap()
    );
    let _ = std::fs::remove_file(out_env);
    let _ = std::fs::remove_file(out_flag);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["definitely-not-a-subcommand"][..],
        &["mzi", "--alpha", "1.5"],
        &["shor", "--a", "9"],
        &["hadamard", "--p0", "2"],
    ] {
        let status = dlmq().args(args).status().unwrap();
        assert_eq!(status.code(), Some(1), "args {args:?}");
    }
}

#[test]
fn runtime_errors_exit_two() {
    let status = dlmq()
        .args(["oracle", "/nonexistent/circuit.qc"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn oracle_prints_probabilities_and_expectations() {
    let path = tmp("bell.qc");
    std::fs::write(&path, "QUBITS 2\nH 1\nCNOT 1 2\n").unwrap();
    let out = dlmq().arg("oracle").arg(&path).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("p[0] = 0.500000"));
    assert!(text.contains("p[3] = 0.500000"));
    assert!(text.contains("<Q1> = 0.500000"));
    assert!(text.contains("<Q2> = 0.500000"));
    let _ = std::fs::remove_file(path);
}

#[test]
fn run_circuit_sweep_tracks_oracle() {
    let path = tmp("mzi.qc");
    let out = tmp("sweep.csv");
    std::fs::write(&path, "QUBITS 1\nX 1\nPHASESHIFT 1 0\nX 1\n").unwrap();
    let status = dlmq()
        .arg("run-circuit")
        .arg(&path)
        .args(["--sweep", "PHASESHIFT:0:360:30", "--events", "2000"])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "phase_deg,f0,f1,p0,p1");
    let mut rows = 0;
    for line in lines {
        let v: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert!((v[1] - v[3]).abs() <= 0.05, "{line}");
        rows += 1;
    }
    assert_eq!(rows, 13);
    let _ = std::fs::remove_file(path);
    let _ = std::fs::remove_file(out);
}
