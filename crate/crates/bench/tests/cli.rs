use spm_core::matrix::market::write_matrix_market;
use spm_core::problems::build_example1;
use std::process::{Command, Output};

fn bench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spm-bench"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn single_run_csv_and_history() {
    let dir = tempfile::tempdir().unwrap();
    let hist = dir.path().join("h.csv");
    let out = bench(&[
        "--example", "1", "--n", "1000", "--method", "mdspm", "--m", "3", "--format", "csv",
        "--history", hist.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "problem,method,params,sweeps,converged,final_res_2,final_dx_inf,wall_ms");
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(&fields[..3], ["example1(n=1000)", "mdspm", "m=3"]);
    assert_eq!(fields[4], "true");
    let sweeps: usize = fields[3].parse().unwrap();
    assert!((3..=5).contains(&sweeps));

    let history = std::fs::read_to_string(&hist).unwrap();
    let mut rows = history.lines();
    assert_eq!(rows.next(), Some("sweep,dx_inf,res_2"));
    assert_eq!(rows.count(), sweeps);
}

#[test]
fn matrix_file_input_and_export() {
    let dir = tempfile::tempdir().unwrap();
    let mtx = dir.path().join("a.mtx");
    write_matrix_market(&*build_example1(30).unwrap().operator, &mtx).unwrap();
    let from_file = bench(&["--matrix", mtx.to_str().unwrap(), "--method", "gap2d", "--ij-gap", "15", "--format", "csv"]);
    assert_eq!(from_file.status.code(), Some(0));
    let generated = bench(&["--example", "1", "--n", "30", "--method", "gap2d", "--ij-gap", "15", "--format", "csv"]);
    let sweeps = |o: &Output| stdout(o).lines().nth(1).unwrap().split(',').nth(3).unwrap().to_string();
    assert_eq!(sweeps(&from_file), sweeps(&generated));

    let exported = dir.path().join("ex.mtx");
    let out = bench(&["--example", "1", "--n", "30", "--method", "gs", "--export", exported.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&exported).unwrap(), std::fs::read(&mtx).unwrap());
}

#[test]
fn reproduce_table1_markdown() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t1.md");
    let out = bench(&["--reproduce", "table1", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let md = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = md.lines().collect();
    assert_eq!(
        lines[0],
        "| problem | gap2d(ij_gap=2) | gap2d(ij_gap=500) | mdspm(m=2) | mdspm(m=3) | mdspm(m=4) | mdspm(m=5) |"
    );
    assert!(lines[2].starts_with("| example1(n=1000) |"));
}

#[test]
fn exit_codes() {
    assert_eq!(bench(&["--help"]).status.code(), Some(0));
    assert_eq!(bench(&["--example", "1", "--method", "mdspm"]).status.code(), Some(1));
    assert_eq!(bench(&["--example", "7", "--method", "gs"]).status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.mtx");
    std::fs::write(&bad, "%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n1 2 1.0\n").unwrap();
    let out = bench(&["--matrix", bad.to_str().unwrap(), "--method", "gs", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).lines().nth(1).unwrap().contains(",error,"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}
