use std::process::{Command, Output};

use franson::cli::{read_sweep_csv, TIMESTAMP_PREFIX};

fn franson_sim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_franson-sim"))
        .args(args)
        .env_remove("FRANSON_SEED")
        .output()
        .expect("binary runs")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn malformed_phase_exits_2_and_names_the_key() {
    let out = franson_sim(&["analytic", "--phi", "abc"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("phi"), "{}", stderr(&out));
}

#[test]
fn unknown_flag_exits_2() {
    let out = franson_sim(&["montecarlo", "--colour", "red"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_config_file_exits_4() {
    let out = franson_sim(&["analytic", "--config", "/nonexistent/run.cfg"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn analytic_to_stdout_round_trips() {
    let out = franson_sim(&["analytic", "--sweep", "psi", "--phi", "pi/2", "--steps", "5"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let parsed = read_sweep_csv(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(parsed.swept_name, "psi");
    assert_eq!(parsed.rows.len(), 5);
    for row in parsed.rows {
        let (psi, value) = (row.swept_value, row.value);
        let expected = 0.5 * (1.0 + (std::f64::consts::FRAC_PI_2 - psi).cos());
        assert!((value - expected).abs() < 1e-13);
    }
}

#[test]
fn figure2_panel_g_writes_four_curves_and_one_plot() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("g.csv");
    let out = franson_sim(&["figure2", "--panel", "g", "--format", "both", "--out", base.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    for k in 1..=4 {
        let text = std::fs::read_to_string(dir.path().join(format!("g_{k}.csv"))).unwrap();
        assert_eq!(read_sweep_csv(&text).unwrap().rows.len(), 721);
    }
    let svg = std::fs::read_to_string(dir.path().join("g.svg")).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 4);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# coarse R_AB sweep\nobservable = R_AB\nsteps = 3\nphi = pi\n").unwrap();
    let out = franson_sim(&["analytic", "--config", cfg.to_str().unwrap(), "--steps", "4", "--sweep", "psi"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let parsed = read_sweep_csv(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(parsed.rows.len(), 4);
    // φ = π from the file: R_AB(ψ = 0) = 0.
    assert!(parsed.rows[0].value.abs() < 1e-15);
}

#[test]
fn seed_env_is_the_fallback() {
    let run = |seed_flag: Option<&str>, env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_franson-sim"));
        cmd.args(["montecarlo", "--steps", "3", "--trials", "200000", "--phi", "pi/2"]);
        if let Some(s) = seed_flag {
            cmd.args(["--seed", s]);
        }
        match env {
            Some(v) => cmd.env("FRANSON_SEED", v),
            None => cmd.env_remove("FRANSON_SEED"),
        };
        let out = cmd.output().unwrap();
        assert!(out.status.success(), "{}", stderr(&out));
        String::from_utf8(out.stdout)
            .unwrap()
            .lines()
            .filter(|l| !l.starts_with(TIMESTAMP_PREFIX))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(run(None, Some("99")), run(Some("99"), None));
    assert_ne!(run(None, Some("99")), run(None, Some("100")));
    assert_eq!(run(Some("5"), Some("99")), run(Some("5"), None));
}

#[test]
fn validate_passes() {
    let out = franson_sim(&["validate", "--grid", "9"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(String::from_utf8(out.stdout).unwrap().contains("validation passed"));
}
