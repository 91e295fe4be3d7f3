use std::path::Path;
use std::process::Command;

use nlw_cli::config::{DataFamily, HyperbolicSection, ScatterSection};
use nlw_cli::manifest::Status;
use nlw_cli::sweep::parse_value;
use nlw_cli::{diagnostics, parse_config, parse_config_with, post, run, sweep, CliError, Scenario};

const SMALL: &str = r#"
name = "small"
[data]
amplitude = 1.0
[grid]
r_max = 20.0
n = 511
[solver]
dt = 4e-3
t_end = 2.0
output_stride = 5
"#;

fn small() -> Scenario {
    parse_config(SMALL).unwrap()
}

fn read(path: &Path) -> Vec<u8> {
    std::fs::read(path).unwrap()
}

#[test]
fn minimal_config_gets_defaults() {
    let sc = parse_config("name = \"m\"").unwrap();
    assert_eq!(sc.data.family, DataFamily::Gaussian);
    assert_eq!(sc.data.amplitude, 1.0);
    assert_eq!(sc.grid.r_max, 40.0);
    assert_eq!(sc.grid.n, 4095);
    assert_eq!(sc.solver.dt, 1e-3);
    assert_eq!(sc.solver.t_end, 10.0);
    assert!(sc.split.is_none() && sc.hyperbolic.is_none() && sc.scatter.is_none());
    assert_eq!(sc.monitors.c1, 0.01);
}

#[test]
fn unknown_key_is_named_with_position() {
    let text = "name = \"x\"\n[solver]\ndtt = 1e-3\n";
    match parse_config(text) {
        Err(CliError::UnknownKey { key, line, column }) => {
            assert_eq!(key, "solver.dtt");
            assert_eq!((line, column), (3, 1));
        }
        other => panic!("{other:?}"),
    }
    let (sc, ignored) = parse_config_with(text, false).unwrap();
    assert_eq!(ignored, vec!["solver.dtt".to_string()]);
    assert_eq!(sc.solver.dt, 1e-3);
}

#[test]
fn zero_nodes_is_a_grid_n_error() {
    let e = parse_config("name = \"x\"\n[grid]\nn = 0\n").unwrap_err();
    assert!(
        matches!(e, CliError::Validation { ref field, .. } if field == "grid.n"),
        "{e}"
    );
}

#[test]
fn syntax_errors_report_line_and_column() {
    let e = parse_config("name = \"x\"\n[grid]\nn = = 3\n").unwrap_err();
    match e {
        CliError::Parse { line, .. } => assert_eq!(line, 3),
        other => panic!("{other:?}"),
    }
}

#[test]
fn unsafe_names_are_rejected() {
    for name in ["", "../up", ".hidden", "a/b"] {
        let e = parse_config(&format!("name = {name:?}")).unwrap_err();
        assert!(
            matches!(e, CliError::Validation { ref field, .. } if field == "name"),
            "{name}"
        );
    }
}

#[test]
fn canonical_form_round_trips() {
    let sc = small();
    assert_eq!(parse_config(&sc.canonical()).unwrap(), sc);
}

#[test]
fn zero_amplitude_gives_zero_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let mut sc = small();
    sc.data.amplitude = 0.0;
    let a = run(&sc, dir.path()).unwrap();
    assert_eq!(a.manifest.status, Status::Ok);
    let (header, rows) = diagnostics::read_file(&a.dir.join("diagnostics.csv")).unwrap();
    assert_eq!(header.len(), 14);
    assert_eq!(rows.len(), 101);
    for row in &rows {
        for x in &row[1..12] {
            assert_eq!(*x, 0.0);
        }
    }
}

#[test]
fn reruns_are_bit_identical() {
    let dir = tempfile::tempdir().unwrap();
    let sc = small();
    let a = run(&sc, &dir.path().join("a")).unwrap();
    let b = run(&sc, &dir.path().join("b")).unwrap();
    assert!(a.ok() && b.ok());
    assert_eq!(
        read(&a.dir.join("diagnostics.csv")),
        read(&b.dir.join("diagnostics.csv"))
    );
    assert_eq!(
        read(&a.dir.join("config.toml")),
        read(&b.dir.join("config.toml"))
    );
    assert_eq!(
        read(&a.dir.join("checkpoints/u_000100.rnlw")),
        read(&b.dir.join("checkpoints/u_000100.rnlw"))
    );
    assert_eq!(a.manifest.config_hash, b.manifest.config_hash);
}

#[test]
fn manifest_lists_design_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let a = run(&small(), dir.path()).unwrap();
    let m: serde_json::Value = serde_json::from_slice(&read(&a.dir.join("manifest.json"))).unwrap();
    assert_eq!(m["status"], "ok");
    let hash = m["config_hash"].as_str().unwrap();
    assert_eq!(hash.len(), 64);
    assert!(hash.chars().all(|c| c.is_ascii_hexdigit()));
    assert_eq!(m["csv"]["schema_version"], 1);
    assert_eq!(m["checkpoints"]["magic"], "RNLW");
    for key in [
        "lp_bump",
        "kappa_fit",
        "chain_rule",
        "interpolation",
        "morawetz_cutoff",
        "coupled_kick",
        "split_rescaling",
        "origin_rule",
        "sup_radii",
        "exterior_cone",
        "scatter_tol_rel",
    ] {
        assert!(m["design"].get(key).is_some(), "{key}");
    }
    assert!(m["design"]["kappa_fit"].as_f64().is_some());
    let report: serde_json::Value =
        serde_json::from_slice(&read(&a.dir.join("report.json"))).unwrap();
    assert!(report["energy"]["max_rel_drift"].as_f64().unwrap() < 1e-4);
}

#[test]
fn solver_failures_land_in_the_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let mut sc = small();
    sc.solver.t_end = 19.0;
    let a = run(&sc, dir.path()).unwrap();
    assert_eq!(a.manifest.status, Status::Failed);
    let m: serde_json::Value = serde_json::from_slice(&read(&a.dir.join("manifest.json"))).unwrap();
    assert_eq!(m["status"], "failed");
    assert!(m["error"]["message"].as_str().unwrap().contains("r_max"));
}

#[test]
fn diagnose_reproduces_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let a = run(&small(), dir.path()).unwrap();
    let d = post::diagnose(&a.dir).unwrap();
    assert_eq!(d.records, 101);
    assert_eq!(d.max_abs_diff, 0.0);
}

#[test]
fn diagnose_handles_coupled_runs() {
    let dir = tempfile::tempdir().unwrap();
    let mut sc = small();
    sc.split = Some(Default::default());
    sc.output.checkpoint_every = 4;
    let a = run(&sc, dir.path()).unwrap();
    assert!(a.ok(), "{:?}", a.manifest.error);
    let d = post::diagnose(&a.dir).unwrap();
    assert_eq!(d.records, 26);
    assert_eq!(d.max_abs_diff, 0.0);
}

#[test]
fn hyperbolic_and_scatter_from_a_run_directory() {
    let dir = tempfile::tempdir().unwrap();
    let mut sc = small();
    sc.data.width = 0.25;
    sc.grid.n = 1023;
    sc.solver.dt = 2e-3;
    sc.solver.t_end = 4.0;
    sc.hyperbolic = Some(HyperbolicSection {
        s_max: 1.5,
        m: 255,
        tau_end: 0.2,
        output_stride: 4,
        t0: 2.0,
        t_data: 0.0,
        ..Default::default()
    });
    sc.scatter = Some(ScatterSection::default());
    let a = run(&sc, dir.path()).unwrap();
    assert!(a.ok(), "{:?}", a.manifest.error);
    let h = post::hyperbolic(&a.dir).unwrap();
    assert!(h.drift < 1e-5, "{}", h.drift);
    assert!(h.two_route_rel_l2 < 1e-4, "{}", h.two_route_rel_l2);
    assert!(a.dir.join("hyperbolic.json").exists());
    let s = post::scatter(&a.dir).unwrap();
    assert!(s.l4_tail.windows(2).all(|w| w[1] <= w[0]));
    assert!(a.dir.join("scatter.json").exists());
}

#[test]
fn sweep_over_dt_supports_an_order_fit() {
    let dir = tempfile::tempdir().unwrap();
    let mut sc = small();
    sc.solver.output_stride = 1;
    sc.solver.dt = 8e-3;
    sc.solver.t_end = 2.0;
    sc.output.checkpoints = false;
    let values: Vec<_> = ["8e-3", "4e-3", "2e-3"]
        .iter()
        .map(|v| parse_value(v))
        .collect();
    let res = sweep(&sc, "solver.dt", &values, dir.path()).unwrap();
    assert_eq!(res.rows.len(), 3);
    let drift: Vec<f64> = res.rows.iter().map(|r| r.energy_drift.unwrap()).collect();
    for w in drift.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!((order - 2.0).abs() < 0.2, "{drift:?}");
    }
    let text = std::fs::read_to_string(&res.summary).unwrap();
    assert!(text.starts_with("solver.dt,run,status"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn empty_sweep_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let res = sweep(&small(), "solver.dt", &[], dir.path()).unwrap();
    assert!(res.runs.is_empty());
    assert_eq!(
        std::fs::read_to_string(&res.summary)
            .unwrap()
            .lines()
            .count(),
        1
    );
}

#[test]
fn sweep_rejects_unknown_axes() {
    let dir = tempfile::tempdir().unwrap();
    let e = sweep(&small(), "solver.dtt", &[parse_value("1e-3")], dir.path()).unwrap_err();
    assert!(matches!(e, CliError::Axis(ref a) if a == "solver.dtt"));
    let e = sweep(&small(), "solver.dtt", &[], dir.path()).unwrap_err();
    assert!(matches!(e, CliError::Axis(_)));
}

#[test]
fn epsilon_sweep_reports_split_norms() {
    let dir = tempfile::tempdir().unwrap();
    let mut sc = small();
    sc.output.checkpoints = false;
    sc.solver.output_stride = 10;
    sc.solver.t_end = 10.0;
    let values: Vec<_> = ["0.2", "0.1", "0.05"]
        .iter()
        .map(|v| parse_value(v))
        .collect();
    let res = sweep(&sc, "split.epsilon_target", &values, dir.path()).unwrap();
    for (row, eps) in res.rows.iter().zip([0.2, 0.1, 0.05]) {
        assert_eq!(row.status, "ok");
        assert!((row.high_norm.unwrap() - eps).abs() < 1e-6);
        assert!(row.growth_exponent.is_some());
    }
}

#[test]
fn binary_runs_and_reports_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("s.toml");
    std::fs::write(&cfg, SMALL).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_nlw"))
        .env("NLW_OUTPUT_ROOT", dir.path().join("out"))
        .arg("run")
        .arg(&cfg)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(dir.path().join("out/small/manifest.json").exists());

    std::fs::write(&cfg, format!("{SMALL}dtt = 1\n")).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_nlw"))
        .env("NLW_OUTPUT_ROOT", dir.path().join("out"))
        .args(["run".as_ref(), cfg.as_os_str()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("solver.dtt"));

    let out = Command::new(env!("CARGO_BIN_EXE_nlw"))
        .env("NLW_OUTPUT_ROOT", dir.path().join("out"))
        .args(["--strict", "false", "run"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}
