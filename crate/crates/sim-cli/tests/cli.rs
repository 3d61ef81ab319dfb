//! End-to-end checks of the `neurosim` binary.

use std::fs;
use std::process::Command;

use sim_cli::trace::Trace;

fn neurosim() -> Command {
    Command::new(env!("CARGO_BIN_EXE_neurosim"))
}

#[test]
fn fig3d_run_writes_trace_summary_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let out = neurosim()
        .args([
            "--scenario",
            "fig3d",
            "--out",
            dir.path().to_str().unwrap(),
            "--plot",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let trace_text = fs::read_to_string(dir.path().join("trace.csv")).unwrap();
    let trace = Trace::parse_csv(trace_text.as_bytes()).unwrap();
    assert!(trace.rows.len() > 1000);

    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["counts"]["output_spikes"], 0);
    assert_eq!(summary["config"]["n_neurons"], 1);

    let svg = fs::read_to_string(dir.path().join("neuron_0.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
}

#[test]
fn identical_invocations_write_identical_files() {
    let run = || {
        let dir = tempfile::tempdir().unwrap();
        let out = neurosim()
            .args([
                "--scenario",
                "fig3a",
                "--seed",
                "7",
                "--out",
                dir.path().to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(out.status.success());
        fs::read(dir.path().join("trace.csv")).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn bench_mode_prints_a_report() {
    let out = neurosim()
        .args(["--scenario", "fig3a", "--bench"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("throughput"), "{text}");
    assert!(text.contains("events applied"), "{text}");
}

#[test]
fn custom_scenario_comes_from_a_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("scenario.toml");
    fs::write(
        &config,
        r#"
n_neurons = 2
duration = "5ms"

[controller.default]
mode = "tonic"
rst_duration = "24ns"

[[stimulus]]
neuron = 1
at = "1ms"
kind = "excitatory"
duration = "24ns"

[trace]
neurons = [1]
stride = "10us"
"#,
    )
    .unwrap();
    let out_dir = dir.path().join("out");
    let out = neurosim()
        .args([
            "--scenario",
            "custom",
            "--config",
            config.to_str().unwrap(),
            "--out",
            out_dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["config"]["n_neurons"], 2);
}

#[test]
fn duration_override_applies() {
    let dir = tempfile::tempdir().unwrap();
    let out = neurosim()
        .args([
            "--scenario",
            "fig3d",
            "--duration",
            "20ms",
            "--out",
            dir.path().to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["model_time_ps"], 20_000_000_000u64);
}

#[test]
fn bad_usage_is_rejected() {
    // custom without a config file
    let out = neurosim().args(["--scenario", "custom"]).output().unwrap();
    assert!(!out.status.success());

    // config with a built-in scenario
    let out = neurosim()
        .args(["--scenario", "fig3a", "--config", "/nonexistent.toml"])
        .output()
        .unwrap();
    assert!(!out.status.success());

    // unknown scenario name
    let out = neurosim().args(["--scenario", "fig9z"]).output().unwrap();
    assert!(!out.status.success());
}
