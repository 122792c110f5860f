//! End-to-end tests of the binary: spawn it, read the files it writes.

use std::path::Path;
use std::process::{Command, Output};

fn atombs() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_atombs"));
    // Tests control the environment contract explicitly.
    c.env_remove("ATOMBS_OUT_DIR");
    c.env_remove("ATOMBS_WORKERS");
    c
}

fn run_ok(cmd: &mut Command) -> Output {
    let out = cmd.output().expect("binary spawns");
    assert!(
        out.status.success(),
        "exit {:?}\nstdout: {}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn run_err(cmd: &mut Command) -> String {
    let out = cmd.output().expect("binary spawns");
    assert!(!out.status.success(), "expected failure, got success");
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = std::fs::read_to_string(path).expect("csv readable");
    let mut lines = text.lines();
    let header: Vec<String> = lines.next().expect("header").split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|f| f.parse::<f64>().expect("numeric field")).collect())
        .collect();
    (header, rows)
}

fn sidecar(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).expect("sidecar readable")).expect("json")
}

#[test]
fn identical_configs_give_byte_identical_data() {
    let dir = tempfile::tempdir().unwrap();
    for sub in ["a", "b"] {
        run_ok(atombs()
            .args(["excitation", "--bandwidths", "1.25", "--output", "trace"])
            .env("ATOMBS_OUT_DIR", dir.path().join(sub).to_str().unwrap()));
    }
    let a = std::fs::read(dir.path().join("a/trace.csv")).unwrap();
    let b = std::fs::read(dir.path().join("b/trace.csv")).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b, "data files must be byte-identical across runs");

    // Sidecars agree on everything except the measured runtime.
    let mut ma = sidecar(&dir.path().join("a/trace.meta.json"));
    let mut mb = sidecar(&dir.path().join("b/trace.meta.json"));
    for m in [&mut ma, &mut mb] {
        assert!(m["runtime_seconds"].is_number());
        assert_eq!(m["config"]["command"], "excitation");
        assert_eq!(m["engine_versions"]["atombs"], env!("CARGO_PKG_VERSION"));
        m.as_object_mut().unwrap().remove("runtime_seconds");
    }
    assert_eq!(ma, mb);

    let (header, rows) = read_csv(&dir.path().join("a/trace.csv"));
    assert_eq!(header, ["t", "pe_1.25"]);
    assert_eq!(rows.len(), 1001);
    assert_eq!(rows[0][1], 0.0, "excitation starts in the ground state");
    let peak = rows.iter().map(|r| r[1]).fold(0.0f64, f64::max);
    assert!((peak - 0.3405).abs() < 2e-3, "peak excitation {peak}");
}

#[test]
fn coincidence_table_carries_oracle_when_covered() {
    let dir = tempfile::tempdir().unwrap();
    let on = dir.path().join("on.csv");
    run_ok(atombs().args([
        "coincidence",
        "--sweep",
        "bandwidth",
        "--sweep-lo",
        "1",
        "--sweep-hi",
        "2",
        "--sweep-points",
        "3",
        "--sweep-log",
        "false",
        "--output",
        on.to_str().unwrap(),
    ]));
    let (header, rows) = read_csv(&on);
    assert_eq!(header, ["x", "c_atomic", "c_linear", "c_oracle"]);
    assert_eq!(rows.len(), 3);
    assert_eq!((rows[0][0], rows[1][0], rows[2][0]), (1.0, 1.5, 2.0));
    for r in &rows {
        assert!((r[1] - r[3]).abs() <= 1e-3, "engine vs closed form at Ω={}: {r:?}", r[0]);
        assert!(r[1] < r[2], "the atom must beat the linear floor at Ω={}", r[0]);
        assert!(r[2] >= 0.5 - 1e-6);
    }

    // Off the closed forms' domain the oracle column disappears.
    let off = dir.path().join("off.csv");
    run_ok(atombs().args([
        "coincidence",
        "--sweep",
        "bandwidth",
        "--sweep-lo",
        "1",
        "--sweep-hi",
        "2",
        "--sweep-points",
        "2",
        "--sweep-log",
        "false",
        "--detuning",
        "0.3",
        "--output",
        off.to_str().unwrap(),
    ]));
    let (header, _) = read_csv(&off);
    assert_eq!(header, ["x", "c_atomic", "c_linear"]);
}

#[test]
fn invalid_requests_are_rejected() {
    // Frequency-domain density at a finite interaction time is undefined.
    let stderr = run_err(atombs().args([
        "joint",
        "--domain",
        "frequency",
        "--time",
        "1",
        "--bandwidth",
        "10",
    ]));
    assert!(stderr.contains("frequency"), "{stderr}");

    // Unknown sweep variable (clap-level rejection).
    let stderr = run_err(atombs().args(["coincidence", "--sweep", "volume"]));
    assert!(stderr.contains("volume"), "{stderr}");

    // Unknown recipe names the known ones.
    let stderr = run_err(atombs().args(["--recipe", "fig99"]));
    assert!(stderr.contains("fig4"), "{stderr}");

    // Recipe/subcommand mismatch.
    let stderr = run_err(atombs().args(["--recipe", "fig5", "coincidence"]));
    assert!(stderr.contains("excitation"), "{stderr}");

    // No subcommand and no config.
    let stderr = run_err(&mut atombs());
    assert!(stderr.contains("subcommand"), "{stderr}");
}

#[test]
fn frozen_density_at_time_zero_is_the_free_product() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.csv");
    run_ok(atombs()
        .args(["--recipe", "fig8", "--output", path.to_str().unwrap()])
        .args(["joint", "--time", "0", "--grid-points", "45"]));
    let (header, rows) = read_csv(&path);
    assert_eq!(header, ["x", "y", "value"]);
    assert_eq!(rows.len(), 45 * 45);

    // Before any interaction the pair density is the product of the squared
    // envelopes: (Ω/2)² = 0.390625 while both times sit inside the pulse,
    // zero once either is past it.
    let value_at = |x: f64, y: f64| -> f64 {
        rows.iter()
            .find(|r| (r[0] - x).abs() < 1e-9 && (r[1] - y).abs() < 1e-9)
            .unwrap_or_else(|| panic!("node ({x}, {y}) missing"))[2]
    };
    assert!((value_at(0.5, 0.5) - 0.390625).abs() < 1e-12);
    assert!((value_at(0.5, 1.5) - 0.390625).abs() < 1e-12);
    assert_eq!(value_at(3.0, 3.0), 0.0);
    assert_eq!(value_at(0.5, 3.0), 0.0);

    let meta = sidecar(&dir.path().join("f.meta.json"));
    assert_eq!(meta["grid"]["domain"], "time");
    assert_eq!(meta["grid"]["x"]["points"], 45);
    assert_eq!(meta["config"]["time"], 0.0);
}

#[test]
fn config_file_dump_and_out_dir_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");

    // Resolve recipe + flags into a config file without computing.
    run_ok(atombs()
        .args(["--recipe", "fig5", "--dump-config", conf.to_str().unwrap()])
        .args(["excitation", "--bandwidths", "1.25"]));
    let text = std::fs::read_to_string(&conf).unwrap();
    assert!(text.contains("command = excitation"), "{text}");
    assert!(text.contains("bandwidths = 1.25"), "{text}");

    // Run from that file; relative outputs land in ATOMBS_OUT_DIR.
    let out_dir = dir.path().join("runs");
    run_ok(atombs()
        .args(["--config", conf.to_str().unwrap(), "--output", "trace"])
        .env("ATOMBS_OUT_DIR", out_dir.to_str().unwrap()));
    let (header, _) = read_csv(&out_dir.join("trace.csv"));
    assert_eq!(header, ["t", "pe_1.25"]);
    let meta = sidecar(&out_dir.join("trace.meta.json"));
    assert_eq!(meta["config"]["bandwidths"], serde_json::json!([1.25]));
}

#[test]
fn marginal_weight_matches_the_coincidence() {
    // The window starts one step block before the pulse front so that both
    // envelope jumps (τ = 0 and τ = 2/Ω = 1.6) land on interior even-index
    // nodes of the h = 0.1 axis; that keeps the quadrature second order.
    let grid = ["--grid-lo", "-0.4", "--grid-hi", "12", "--grid-points", "125"];
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.csv");
    run_ok(atombs()
        .args(["marginal", "--bandwidth", "1.25"])
        .args(grid)
        .args(["--output", path.to_str().unwrap()]));
    let meta = sidecar(&dir.path().join("m.meta.json"));
    let weight = meta["normalization"].as_f64().unwrap();
    assert!(
        (weight - 0.23399812942009499).abs() < 2e-3,
        "unconditioned weight {weight} should be the coincidence probability"
    );

    // The reported density is normalized to unit mass over the grid.
    let (header, rows) = read_csv(&path);
    assert_eq!(header, ["tau", "density"]);
    let h = rows[1][0] - rows[0][0];
    let mass: f64 = rows.iter().map(|r| r[1] * h).sum::<f64>()
        - 0.5 * h * (rows[0][1] + rows.last().unwrap()[1]);
    assert!((mass - 1.0).abs() < 0.01, "marginal mass {mass}");

    // Without grid flags the axis is auto-fitted to the pulse, which aligns
    // the jumps by construction; the weight must land on the same value.
    let auto = dir.path().join("auto.csv");
    run_ok(atombs()
        .args(["marginal", "--bandwidth", "1.25"])
        .args(["--output", auto.to_str().unwrap()]));
    let meta = sidecar(&dir.path().join("auto.meta.json"));
    let w_auto = meta["normalization"].as_f64().unwrap();
    assert!(
        (w_auto - 0.23399812942009499).abs() < 2e-3,
        "auto-fitted weight {w_auto}"
    );

    let json_path = dir.path().join("m.json");
    run_ok(atombs()
        .args(["marginal", "--bandwidth", "1.25"])
        .args(grid)
        .args(["--format", "json", "--output", json_path.to_str().unwrap()]));
    let doc = sidecar(&json_path);
    assert_eq!(doc["columns"], serde_json::json!(["tau", "density"]));
    assert_eq!(doc["rows"].as_array().unwrap().len(), 125);
    assert_eq!(doc["normalization"].as_f64().unwrap(), weight);
}
