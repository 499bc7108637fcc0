use std::path::Path;
use std::process::{Command, Output};

fn fswap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fswap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

const LATTICE_3X3: [&str; 6] = ["--model", "spinless", "--rows", "3", "--cols", "3"];

fn synth_3x3(dir: &Path) -> std::path::PathBuf {
    let file = dir.join("net.json");
    let mut args = vec!["synth"];
    args.extend(LATTICE_3X3);
    args.extend(["--out", p(&file)]);
    let o = fswap(&args);
    assert_eq!(o.status.code(), Some(0));
    assert!(file.exists());
    file
}

#[test]
fn synth_then_verify_against_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let file = synth_3x3(dir.path());
    let mut args = vec!["verify", p(&file)];
    args.extend(LATTICE_3X3);
    args.push("--against-bounds");
    let o = fswap(&args);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("swap_depth=2 optimal"), "{}", stdout(&o));
}

#[test]
fn oracle_min_swap_depth() {
    let o = fswap(&["oracle", "min-swap-depth", "--dims", "2,3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn unknown_flag_prints_usage_to_stderr() {
    let o = fswap(&["synth", "--model", "spinless", "--rows", "2", "--cols", "2", "--colour"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn export_text_and_unknown_format() {
    let dir = tempfile::tempdir().unwrap();
    let file = synth_3x3(dir.path());
    let o = fswap(&["export", p(&file), "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 6);
    assert_eq!(text.lines().filter(|l| l.starts_with("swap")).count(), 2);
    let o = fswap(&["export", p(&file), "--format", "svg"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn export_dot_labels_covered_edges() {
    let dir = tempfile::tempdir().unwrap();
    let file = synth_3x3(dir.path());
    let mut args = vec!["export", p(&file), "--format", "dot"];
    args.extend(LATTICE_3X3);
    let o = fswap(&args);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("label=\"L").count(), 12);
}

#[test]
fn json_export_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("spin.json");
    let o = fswap(&["synth", "--model", "spin", "--rows", "1", "--cols", "3", "--out", p(&file)]);
    assert_eq!(o.status.code(), Some(0));
    let o = fswap(&["export", p(&file)]);
    assert_eq!(stdout(&o), std::fs::read_to_string(&file).unwrap());
}

#[test]
fn incomplete_network_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("empty.json");
    std::fs::write(
        &file,
        "{\"version\":1,\"num_positions\":4,\"initial_order\":[[0,0],[1,0],[0,1],[1,1]],\"layers\":[]}\n",
    )
    .unwrap();
    let o = fswap(&["verify", p(&file), "--model", "spinless", "--rows", "2", "--cols", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("missing"));
}

#[test]
fn suboptimal_depth_fails_against_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("spin.json");
    let spin = ["--model", "spin", "--rows", "3", "--cols", "3"];
    let mut args = vec!["synth"];
    args.extend(spin);
    args.extend(["--out", p(&file)]);
    assert_eq!(fswap(&args).status.code(), Some(0));
    // swap depth meets its bound; interaction depth is only reported
    let mut args = vec!["verify", p(&file)];
    args.extend(spin);
    args.push("--against-bounds");
    let o = fswap(&args);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("interaction_depth=6 above lower bound 5"));

    let dense = dir.path().join("dense.json");
    let o = fswap(&["synth", "--model", "dense", "--n", "6", "--mode", "interaction-optimal", "--out", p(&dense)]);
    assert_eq!(o.status.code(), Some(0));
    let o = fswap(&["verify", p(&dense), "--model", "dense", "--n", "6", "--against-bounds"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn malformed_file_and_missing_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(&file, "{\"version\":1}").unwrap();
    let args = |f: &Path| -> Vec<String> {
        ["verify", p(f), "--model", "spinless", "--rows", "2", "--cols", "2"]
            .map(String::from)
            .to_vec()
    };
    let o = Command::new(env!("CARGO_BIN_EXE_fswap")).args(args(&file)).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_fswap"))
        .args(args(&dir.path().join("absent.json")))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_size_cap_is_usage_error() {
    let o = fswap(&["oracle", "bandwidth", "--dims", "4,4", "--max-size", "30"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_fermionic_reports_json() {
    let o = fswap(&["check-fermionic", "--model", "spinless", "--rows", "2", "--cols", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["permutation"], true);
    let r = v["ratio"].as_f64().unwrap();
    assert!((3.2..=4.8).contains(&r));
}
