use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const FIXTURE: &str = "\
mesh2d v1
nodes 9
1 0 0
2 0 1
3 0 2
4 1 0
5 1 1
6 1 2
7 2 0
8 2 1
9 2 2
elements 4
1 quad4 1 4 5 2
2 quad4 2 5 6 3
3 quad4 4 7 8 5
4 quad4 5 8 9 6
end
";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edgefem")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn gen_file(dir: &TempDir, name: &str, args: &[&str]) -> String {
    let p = dir.path().join(name);
    let path = p.to_str().unwrap();
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", path]);
    let o = run(&full);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    path.to_string()
}

fn element_count(path: &str) -> usize {
    let text = fs::read_to_string(path).unwrap();
    let line = text.lines().find(|l| l.starts_with("elements")).unwrap();
    line.split_whitespace().nth(1).unwrap().parse().unwrap()
}

#[test]
fn gen_writes_requested_sizes() {
    let dir = TempDir::new().unwrap();
    let q4 = gen_file(&dir, "q4.m2d", &["square", "--n", "16", "--element", "q4"]);
    assert_eq!(element_count(&q4), 256);
    let t3 = gen_file(&dir, "t3.m2d", &["square", "--n", "1", "--element", "t3"]);
    assert_eq!(element_count(&t3), 2);
    let disk = gen_file(&dir, "disk.m2d", &["disk", "--preset", "ci-disk", "--element", "mixed1"]);
    assert_eq!(element_count(&disk), 440);
}

#[test]
fn gen_rejects_family_outside_preset() {
    let o = run(&["gen", "disk", "--preset", "paper-disk", "--element", "q4"]);
    assert_eq!(o.status.code(), Some(9));
    let o = run(&["gen", "square", "--preset", "paper-disk", "--element", "mixed1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn convert_fixture_to_directory() {
    let dir = TempDir::new().unwrap();
    let mesh = write(&dir, "fixture.m2d", FIXTURE);
    let out = dir.path().join("tables");
    let o = run(&["convert", &mesh, "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let read = |name: &str| fs::read_to_string(out.join(format!("{name}.txt"))).unwrap();
    assert_eq!(read("edgecon"), "1 2 3 4\n2 5 6 7\n8 9 4 10\n9 11 7 12\n");
    assert_eq!(read("edgenode").lines().count(), 12);
    assert_eq!(read("edgenode").lines().next(), Some("1 4"));
    assert_eq!(read("nodeedgenum"), "2\n3\n2\n3\n4\n3\n2\n3\n2\n");
    assert_eq!(read("nodeedge").lines().nth(4), Some("-2 2 -4 4 7 6 9 8"));
    assert_eq!(read("ndexn"), "");
    assert_eq!(read("nodeedgeexn"), "");
}

#[test]
fn convert_reports_overflow_rows() {
    let dir = TempDir::new().unwrap();
    let mut text = String::from("mesh2d v1\nnodes 9\n1 0 0\n");
    for k in 0..8 {
        let a = std::f64::consts::TAU * k as f64 / 8.0;
        text += &format!("{} {} {}\n", k + 2, a.cos(), a.sin());
    }
    text += "elements 8\n";
    for k in 0..8 {
        text += &format!("{} tri3 1 {} {}\n", k + 1, k + 2, (k + 1) % 8 + 2);
    }
    text += "end\n";
    let mesh = write(&dir, "fan.m2d", &text);
    let o = run(&["convert", &mesh]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s = stdout(&o);
    let section = |name: &str| {
        let start = s.find(&format!("# {name}\n")).unwrap() + name.len() + 3;
        let rest = &s[start..];
        rest[..rest.find("# ").unwrap_or(rest.len())].to_string()
    };
    assert_eq!(section("ndexn"), "1\n");
    assert_eq!(section("nodeedgeexn"), "-9 6 -11 7 -13 8 -15 9 0 0 0 0 0 0 0 0\n");
}

#[test]
fn malformed_mesh_names_the_line() {
    let dir = TempDir::new().unwrap();
    let mesh = write(&dir, "bad.m2d", "mesh2d v1\nnodes 1\n1 0 x\nelements 0\nend\n");
    let o = run(&["convert", &mesh]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn missing_file_is_an_io_error() {
    let o = run(&["eigen", "/nonexistent/mesh.m2d"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn eigen_on_small_square() {
    let dir = TempDir::new().unwrap();
    let mesh = gen_file(&dir, "sq.m2d", &["square", "--n", "2", "--element", "q4"]);
    let o = run(&["eigen", &mesh]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.contains("free 4"), "{s}");
    assert!(s.starts_with("nodes 9 elements 4 edges 12 free 4\nzeros 1 "), "{s}");
}

#[test]
fn eigen_without_free_edges_fails() {
    let dir = TempDir::new().unwrap();
    let mesh = gen_file(&dir, "one.m2d", &["square", "--n", "1", "--element", "q4"]);
    let o = run(&["eigen", &mesh]);
    assert_eq!(o.status.code(), Some(7));
}

#[test]
fn eigen_csv_and_matrix_dump() {
    let dir = TempDir::new().unwrap();
    let mesh = gen_file(&dir, "sq.m2d", &["square", "--n", "4", "--element", "t3"]);
    let mats = dir.path().join("mats");
    let o = run(&["eigen", &mesh, "--csv", "--num", "5", "--dump-matrices", mats.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("rank,k0_squared,multiplicity"));
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    assert_eq!(rows.len(), 5);
    let values: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(values.windows(2).all(|w| w[0] <= w[1]));
    assert!((values[0] - 1.0).abs() < 0.2, "{values:?}");
    for name in ["K.mtx", "M.mtx"] {
        let text = fs::read_to_string(mats.join(name)).unwrap();
        let mut it = text.lines();
        assert_eq!(it.next(), Some("%%MatrixMarket matrix coordinate real symmetric"));
        let header: Vec<usize> = it.next().unwrap().split_whitespace().map(|v| v.parse().unwrap()).collect();
        assert_eq!(header[0], header[1]);
        assert_eq!(it.count(), header[2]);
    }
}

#[test]
fn eigen_output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let mesh = gen_file(&dir, "disk.m2d", &["disk", "--n", "2", "--element", "mixed2"]);
    let a = run(&["eigen", &mesh, "--csv"]);
    let b = run(&["eigen", &mesh, "--csv"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bench_exit_codes() {
    let o = run(&["bench", "curved-l", "--element", "q12"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS"));
    assert!(stderr(&o).contains("elapsed"));
    // A coarse override misses the tolerance.
    let o = run(&["bench", "curved-l", "--element", "q4", "--n", "2"]);
    assert_eq!(o.status.code(), Some(10));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn bench_csv_output_to_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report.csv");
    let o = run(&["bench", "disk", "--preset", "ci-disk", "--element", "mixed1", "--csv", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(Path::new(&out).exists());
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.lines().count() > 4);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["eigen"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "square", "--element", "t7"]).status.code(), Some(2));
    let o = run(&["gen", "disk", "--element", "mixed1", "--diagonal", "uniform"]);
    assert_eq!(o.status.code(), Some(2));
}
