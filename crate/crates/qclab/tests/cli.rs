//! End-to-end checks of the binary: exit codes, file outputs, and the
//! config-echo reproduction contract.

use std::path::Path;
use std::process::Command;

fn qclab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qclab"))
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

const SWEEP_CONFIG: &str = "\
schema = qclab/1

[experiment]
kind = sweep
id = or-classical
seed = 9
trials = 200

[algorithm]
name = classical-or-sampler

[function]
kind = or

[distribution]
kind = or-alpha
alpha = 0.4

[sweep]
sizes = 64,128,256,512
";

#[test]
fn sweep_run_and_report_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.conf");
    write(&cfg, SWEEP_CONFIG);
    let out = qclab()
        .args(["run", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("or-classical.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5); // header + 4 sizes

    let rep = qclab().arg("report").arg(dir.path()).output().unwrap();
    assert_eq!(rep.status.code(), Some(0));
    let slopes = std::fs::read_to_string(dir.path().join("report_slopes.csv")).unwrap();
    assert!(slopes.lines().count() >= 2);
    let slope: f64 = slopes
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!(slope > 0.2 && slope < 0.6, "slope {slope}");
}

#[test]
fn bad_alpha_exits_2_and_cites_the_constraint() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    write(&cfg, &SWEEP_CONFIG.replace("alpha = 0.4", "alpha = 0.7"));
    let out = qclab()
        .args(["run", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("(0, 1/2)"), "stderr: {stderr}");
}

#[test]
fn missing_config_exits_2() {
    let out = qclab()
        .args(["run", "--config", "/nonexistent/qclab.conf"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_suite_exits_2() {
    let out = qclab().args(["verify", "--suite", "nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parity_suite_verifies_clean() {
    let out = qclab()
        .args(["verify", "--suite", "parity", "--seed", "77"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("criterion 07"));
    assert!(stdout.contains("PASS"));
}

#[test]
fn config_echo_reproduces_byte_identical_results() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    let config = "\
schema = qclab/1
[experiment]
kind = run
id = echo-check
seed = 33
trials = 150
[algorithm]
name = grover-or
[function]
kind = or
n_bits = 256
[distribution]
kind = or-alpha
alpha = 0.4
";
    write(&cfg, config);
    let first_out = dir.path().join("first");
    let status = qclab()
        .args(["run", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&first_out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));

    // Extract the echo from the summary and run it as a fresh config.
    let summary = std::fs::read_to_string(first_out.join("echo-check_summary.txt")).unwrap();
    let echo = summary.split("[config-echo]").nth(1).unwrap().trim_start();
    let echo_cfg = dir.path().join("echo.conf");
    write(&echo_cfg, echo);
    let second_out = dir.path().join("second");
    let status = qclab()
        .args(["run", "--config"])
        .arg(&echo_cfg)
        .arg("--out")
        .arg(&second_out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));

    let a = std::fs::read(first_out.join("echo-check.csv")).unwrap();
    let b = std::fs::read(second_out.join("echo-check.csv")).unwrap();
    assert_eq!(a, b, "echoed config did not reproduce the run");
    // Single runs over an exchangeable distribution also export its
    // weight pmf for plotting.
    assert!(first_out.join("echo-check_pmf.csv").exists());
}

#[test]
fn shipped_configs_validate_and_the_cheap_ones_run() {
    let configs = Path::new(env!("CARGO_MANIFEST_DIR"))
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .join("configs");
    let mut names: Vec<_> = std::fs::read_dir(&configs)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    names.sort();
    assert!(names.len() >= 7);
    for path in &names {
        let text = std::fs::read_to_string(path).unwrap();
        qclab::cli::parse_config(&text)
            .unwrap_or_else(|e| panic!("{} does not validate: {e}", path.display()));
    }
    // Execute a couple of fast ones end to end.
    for name in ["majority-bounds.conf", "hardness-distinguish.conf"] {
        let dir = tempfile::tempdir().unwrap();
        let out = qclab()
            .args(["run", "--config"])
            .arg(configs.join(name))
            .arg("--out")
            .arg(dir.path())
            .output()
            .unwrap();
        assert_eq!(
            out.status.code(),
            Some(0),
            "{name}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn worker_count_never_changes_results() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("jobs.conf");
    write(
        &cfg,
        "\
schema = qclab/1
[experiment]
kind = run
id = jobs-check
seed = 77
trials = 600
[algorithm]
name = parity-third-wrapper
[function]
kind = parity
n_bits = 8
[distribution]
kind = uniform
",
    );
    let mut outputs = Vec::new();
    for jobs in ["1", "2"] {
        let out_dir = dir.path().join(format!("jobs{jobs}"));
        let status = qclab()
            .args(["run", "--jobs", jobs, "--config"])
            .arg(&cfg)
            .arg("--out")
            .arg(&out_dir)
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
        outputs.push(std::fs::read(out_dir.join("jobs-check.csv")).unwrap());
    }
    assert_eq!(outputs[0], outputs[1], "worker count changed the results");
}

#[test]
fn distinguish_and_verify_bounds_kinds_produce_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("dist.conf");
    write(
        &cfg,
        "\
schema = qclab/1
[experiment]
kind = distinguish
id = hardness
seed = 3
trials = 400
[distinguish]
n = 6
m = 4
",
    );
    let out = qclab()
        .args(["run", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = std::fs::read_to_string(dir.path().join("hardness.csv")).unwrap();
    assert!(rows.contains("acceptance_gap"));
    assert!(rows.contains("pair_hit_d2"));

    let cfg2 = dir.path().join("bounds.conf");
    write(
        &cfg2,
        "\
schema = qclab/1
[experiment]
kind = verify-bounds
id = maj-bounds
seed = 3
[function]
kind = maj
n_bits = 8
[distribution]
kind = uniform
",
    );
    let out2 = qclab()
        .args(["run", "--config"])
        .arg(&cfg2)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out2.status.code(), Some(0), "{}", String::from_utf8_lossy(&out2.stderr));
    let rows2 = std::fs::read_to_string(dir.path().join("maj-bounds.csv")).unwrap();
    assert!(rows2.contains("expected_bs_linear"));
    assert!(rows2.contains("optimal_avg_dtree"));
    assert!(dir.path().join("maj-bounds_tree.txt").exists());
}
