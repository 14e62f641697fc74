//! End-to-end checks of the `cm` binary: exit-code contract, file outputs,
//! and diagnostics.

use std::path::Path;
use std::process::{Command, Output};

const EXAMPLE1_CONFIG: &str = "\
# 1D two-class test
grid.axis0 = 0 100 1

class.0.prior = 0.8
class.0.component.0.mu = 30
class.0.component.0.sigma = 15

class.1.prior = 0.2
class.1.component.0.mu = 70
class.1.component.0.sigma = 10

init.kind = threshold1d
init.z_prime = 50
";

const SMALL_2D_CONFIG: &str = "\
grid.axis0 = 0 30 1
grid.axis1 = 0 20 1
class.0.prior = 0.5
class.0.component.0.mu_m = 8
class.0.component.0.mu_n = 10
class.0.component.0.cov_mm = 9
class.0.component.0.cov_nn = 9
class.0.component.0.cov_mn = 0
class.1.prior = 0.5
class.1.component.0.mu_m = 22
class.1.component.0.mu_n = 10
class.1.component.0.cov_mm = 9
class.1.component.0.cov_nn = 9
class.1.component.0.cov_mn = 0
init.kind = vertical
";

fn run_cm_bin(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cm"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    name.to_string()
}

#[test]
fn run_valid_config_exits_zero_with_short_trace() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "ex1.cfg", EXAMPLE1_CONFIG);
    let out = run_cm_bin(&["run", &cfg, "--out-dir", "out"], dir.path());
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let trace = std::fs::read_to_string(dir.path().join("out/trace.csv")).unwrap();
    let mut lines = trace.lines();
    assert_eq!(
        lines.next(),
        Some("iter,shannon_mi_bits,semantic_mi_bits,cells_changed")
    );
    let rows: Vec<&str> = lines.collect();
    assert!(
        rows.len() <= 4,
        "expected at most 4 iteration rows, got {}",
        rows.len()
    );
    for (k, _) in rows.iter().enumerate() {
        assert!(
            dir.path()
                .join(format!("out/partition_iter_{}.csv", k + 1))
                .exists(),
            "missing partition for iteration {}",
            k + 1
        );
    }
}

#[test]
fn nonpositive_sigma_exits_one_and_names_the_component() {
    let dir = tempfile::tempdir().unwrap();
    let bad = EXAMPLE1_CONFIG.replace(
        "class.1.component.0.sigma = 10",
        "class.1.component.0.sigma = 0",
    );
    let cfg = write_config(dir.path(), "bad.cfg", &bad);
    let out = run_cm_bin(&["run", &cfg], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("class.1.component.0.sigma"),
        "stderr: {stderr}"
    );
}

#[test]
fn missing_config_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_cm_bin(&["run", "nope.cfg"], dir.path());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn max_iters_one_on_example2_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_cm_bin(
        &[
            "example2",
            "--init",
            "vertical",
            "--max-iters",
            "1",
            "--out-dir",
            "out",
        ],
        dir.path(),
    );
    assert_eq!(
        out.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn unknown_init_kind_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_cm_bin(&["example2", "--init", "diagonal"], dir.path());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn example1_summary_reports_threshold() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_cm_bin(&["example1", "--out-dir", "out"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("z* ="), "stdout: {stdout}");
    assert!(stdout.contains("converged"), "stdout: {stdout}");
}

#[test]
fn compare_1d_writes_thresholds() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "ex1.cfg", EXAMPLE1_CONFIG);
    let out = run_cm_bin(&["compare", &cfg, "--out-dir", "out"], dir.path());
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let csv = std::fs::read_to_string(dir.path().join("out/compare.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("classifier,shannon_mi_bits,error_rate,threshold,partitions_equivalent")
    );
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 5);
        assert!(
            !fields[3].is_empty(),
            "1D comparison should report a threshold: {line}"
        );
    }
}

#[test]
fn compare_2d_leaves_threshold_column_empty() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "flat.cfg", SMALL_2D_CONFIG);
    let out = run_cm_bin(&["compare", &cfg, "--out-dir", "out"], dir.path());
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let csv = std::fs::read_to_string(dir.path().join("out/compare.csv")).unwrap();
    for line in csv.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert!(
            fields[3].is_empty(),
            "2D comparison has no threshold: {line}"
        );
        assert!(!fields[1].is_empty() && !fields[2].is_empty());
    }
}

#[test]
fn render_flag_emits_ppm_per_iteration_on_2d() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "flat.cfg", SMALL_2D_CONFIG);
    let out = run_cm_bin(&["run", &cfg, "--out-dir", "out", "--render"], dir.path());
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let ppm = std::fs::read(dir.path().join("out/partition_iter_1.ppm")).unwrap();
    assert!(ppm.starts_with(b"P6\n31 21\n255\n"));
}

#[test]
fn render_flag_on_1d_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_cm_bin(&["example1", "--out-dir", "out", "--render"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("unsupported dimension"), "stderr: {stderr}");
}

#[test]
fn out_dir_flag_overrides_config_output_dir() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_text = format!("{EXAMPLE1_CONFIG}output.dir = ignored\n");
    let cfg = write_config(dir.path(), "ex1.cfg", &cfg_text);
    let out = run_cm_bin(&["run", &cfg, "--out-dir", "chosen"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("chosen/trace.csv").exists());
    assert!(!dir.path().join("ignored").exists());
}

#[test]
fn file_init_round_trips_through_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "ex1.cfg", EXAMPLE1_CONFIG);
    let out = run_cm_bin(&["run", &cfg, "--out-dir", "first"], dir.path());
    assert_eq!(out.status.code(), Some(0));

    // restart from the converged partition: must converge again immediately
    let restart = EXAMPLE1_CONFIG
        .replace("init.kind = threshold1d", "init.kind = file")
        .replace(
            "init.z_prime = 50",
            "init.path = first/partition_iter_4.csv",
        );
    let candidates = ["first/partition_iter_4.csv", "first/partition_iter_3.csv"];
    let last = candidates
        .iter()
        .find(|p| dir.path().join(p).exists())
        .unwrap();
    let restart = restart.replace("first/partition_iter_4.csv", last);
    let cfg2 = write_config(dir.path(), "restart.cfg", &restart);
    let out = run_cm_bin(&["run", &cfg2, "--out-dir", "second"], dir.path());
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let trace = std::fs::read_to_string(dir.path().join("second/trace.csv")).unwrap();
    assert_eq!(
        trace.lines().count(),
        2,
        "restart should converge in one iteration:\n{trace}"
    );
}
