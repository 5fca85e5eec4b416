use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use redoff::bench::{render_csv, run_bench, CSV_HEADER};
use redoff::commands::{minimize_source, MinimizeOptions};
use redoff::Source;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn redoff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_redoff"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn primes_lists_sorted_cubes() {
    let five = data("five_var.pla");
    let o = redoff(&["primes", path_str(&five), "--minterm", "11010"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "11x10\n1x0x0\n");

    let three = data("three_var.pla");
    let o = redoff(&["primes", path_str(&three), "--minterm", "001"]);
    assert_eq!(stdout(&o), "0x1\nx01\n");
}

#[test]
fn primes_trace_matches_golden() {
    let o = redoff(&[
        "primes",
        path_str(&data("five_var.pla")),
        "--minterm",
        "11010",
        "--trace",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let golden = fs::read_to_string(data("trace_11010.txt")).unwrap();
    assert_eq!(stdout(&o), golden);
}

#[test]
fn primes_on_off_minterm_is_inconsistent() {
    let o = redoff(&[
        "primes",
        path_str(&data("five_var.pla")),
        "--minterm",
        "11011",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("11011"));
}

#[test]
fn primes_width_mismatch_is_input_error() {
    let o = redoff(&[
        "primes",
        path_str(&data("five_var.pla")),
        "--minterm",
        "110",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_file_is_input_error() {
    let o = redoff(&["minimize", "/nonexistent/file.pla"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/nonexistent/file.pla"));
}

#[test]
fn inconsistent_pla_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.pla");
    fs::write(&f, ".i 2\n.o 1\n.type fr\n1- 1\n11 0\n.e\n").unwrap();
    let o = redoff(&["minimize", path_str(&f)]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn minimize_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let input = data("five_var.pla");
    let cover = dir.path().join("cover.pla");
    let o = redoff(&["minimize", path_str(&input), "--out", path_str(&cover)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("cover verified"));

    let o = redoff(&["verify", path_str(&input), path_str(&cover)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report = stdout(&o);
    assert!(report.contains("covers ON-set: ok"));
    assert!(report.contains("exhaustive equivalence: ok"));
}

#[test]
fn verify_itemizes_failures() {
    let dir = tempfile::tempdir().unwrap();
    let input = data("five_var.pla");

    let touching = dir.path().join("touch.pla");
    fs::write(&touching, ".i 5\n.o 1\n.type fr\n11-1- 1\n.e\n").unwrap();
    let o = redoff(&["verify", path_str(&input), path_str(&touching)]);
    assert_eq!(o.status.code(), Some(1));
    let report = stdout(&o);
    assert!(report.contains("disjoint from OFF-set: FAIL"));
    assert!(report.contains("meets OFF-cube"));

    let empty = dir.path().join("empty.pla");
    fs::write(&empty, ".i 5\n.o 1\n.p 0\n.type fr\n.e\n").unwrap();
    let o = redoff(&["verify", path_str(&input), path_str(&empty)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("covers ON-set: FAIL"));
}

#[test]
fn multi_output_table() {
    let o = redoff(&["minimize", path_str(&data("table_d1.pla")), "--multi"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('.')).collect();
    lines.sort();
    assert_eq!(
        lines,
        ["-00 001", "-10 110", "0-1 010", "00- 100", "1-1 101"]
    );
    assert!(text.contains(".p 5\n"));
}

#[test]
fn separate_outputs_without_multi() {
    let src = Source::load(&data("table_d1.pla")).unwrap();
    let res = minimize_source(&src, &MinimizeOptions::default()).unwrap();
    assert!(res.problems.is_empty(), "{:?}", res.problems);
    assert!(res.cover.iter().all(|tc| tc.tag.count_ones() == 1));
}

#[test]
fn minterm_list_input() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("list.txt");
    fs::write(&f, "# small example\n001 1\n000 0\n100 0\n111 0\n").unwrap();
    let o = redoff(&["primes", path_str(&f), "--minterm", "001"]);
    assert_eq!(stdout(&o), "0x1\nx01\n");
}

#[test]
fn max_expand_refusal_and_override() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("wide.pla");
    fs::write(&f, ".i 17\n.o 1\n1---------------- 1\n.e\n").unwrap();
    let o = redoff(&["minimize", path_str(&f)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--max-expand"), "{}", stderr(&o));
    let o = redoff(&["minimize", path_str(&f), "--max-expand", "17"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("1---------------- 1"));
}

#[test]
fn bench_csv_rows_sorted_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(data("five_var.pla"), dir.path().join("b_five.pla")).unwrap();
    fs::copy(data("three_var.pla"), dir.path().join("a_three.pla")).unwrap();
    fs::write(dir.path().join("c_broken.pla"), ".i 2\n.o 1\n1 1\n").unwrap();
    fs::write(dir.path().join("notes.txt"), "ignored").unwrap();

    let csv = dir.path().join("out.csv");
    let o = redoff(&[
        "bench",
        "--dir",
        path_str(dir.path()),
        "--csv",
        path_str(&csv),
        "--jobs",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines.len(), 4);
    let fields = |l: &str| l.split(',').take(5).map(String::from).collect::<Vec<_>>();
    assert_eq!(fields(lines[1]), ["a_three", "3", "1", "3", "1"]);
    assert_eq!(fields(lines[2]), ["b_five", "5", "13", "16", "5"]);
    assert!(
        lines[3].starts_with("c_broken,,,,,\"error:"),
        "{}",
        lines[3]
    );

    let again = run_bench(dir.path(), Some(1), &MinimizeOptions::default()).unwrap();
    let strip = |s: &str| -> Vec<String> {
        s.lines()
            .map(|l| l.rsplit_once(',').map_or(l, |(a, _)| a).to_string())
            .collect()
    };
    assert_eq!(strip(&render_csv(&again)), strip(&text));
}

#[test]
fn bench_empty_dir_is_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let o = redoff(&["bench", "--dir", path_str(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), format!("{CSV_HEADER}\n"));
}

#[test]
fn minimize_is_deterministic() {
    let input = data("five_var.pla");
    let a = redoff(&["minimize", path_str(&input), "--seed", "1"]);
    let b = redoff(&["minimize", path_str(&input), "--seed", "2"]);
    assert_eq!(stdout(&a), stdout(&b));
}
