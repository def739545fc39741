use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_raman-slab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn header(path: &Path) -> String {
    fs::read_to_string(path).unwrap().lines().next().unwrap().to_string()
}

fn summary(dir: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap()
}

#[test]
fn run_preset_writes_all_artifacts_deterministically() {
    let tmp = tempfile::tempdir().unwrap();
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    for dir in [&a, &b] {
        let out = run(&["run", "fig7", "--out", dir.to_str().unwrap()]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(
        header(&a.join("spectra.csv")),
        "delta_p_over_gamma,re_chi,im_chi,re_n,im_n,reflectance,transmittance,tau_r_gamma,tau_t_gamma"
    );
    assert_eq!(
        header(&a.join("timeseries.csv")),
        "t_gamma,i_ref_norm,i_refl_norm,i_trans_norm"
    );
    for file in ["spectra.csv", "timeseries.csv", "summary.json"] {
        assert_eq!(
            fs::read(a.join(file)).unwrap(),
            fs::read(b.join(file)).unwrap(),
            "{file} differs"
        );
    }

    let s = summary(&a);
    let tau_r = s["phase_times"]["tau_r_gamma"].as_f64().unwrap();
    let tau_t = s["phase_times"]["tau_t_gamma"].as_f64().unwrap();
    let transit = s["derived"]["transit_time_gamma"].as_f64().unwrap();
    assert_eq!(s["superluminal"]["reflection"].as_bool().unwrap(), tau_r < 0.0);
    assert_eq!(s["superluminal"]["transmission"].as_bool().unwrap(), tau_t < transit);
    assert!((tau_r + 0.279).abs() < 0.014, "{tau_r}");
    let peak = s["wave_packet"]["peak_reflected_gamma"].as_f64().unwrap();
    assert!((peak + 0.28).abs() < 0.014, "{peak}");
}

#[test]
fn omega_c_flag_and_phase_times_only_config() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("c.json");
    fs::write(&cfg, r#"{"preset": "fig5", "outputs": ["phase_times"]}"#).unwrap();
    let out_dir = tmp.path().join("out");
    let out = run(&[
        "run",
        cfg.to_str().unwrap(),
        "--omega-c",
        "8",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(!out_dir.join("spectra.csv").exists());
    assert!(!out_dir.join("timeseries.csv").exists());
    let s = summary(&out_dir);
    let tau_r = s["phase_times"]["tau_r_gamma"].as_f64().unwrap();
    let tau_t = s["phase_times"]["tau_t_gamma"].as_f64().unwrap();
    assert!((tau_r + 2.828e-3).abs() < 0.05 * 2.828e-3, "{tau_r}");
    assert!((tau_t + 2.794e-3).abs() < 0.05 * 2.794e-3, "{tau_t}");
}

#[test]
fn invalid_config_reports_json_error() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("bad.json");
    fs::write(&cfg, r#"{"eps_b": -1}"#).unwrap();
    let out = run(&[
        "run",
        cfg.to_str().unwrap(),
        "--out",
        tmp.path().join("o").to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "ValidationError");
    assert!(err["message"].as_str().unwrap().contains("eps_b > 0"));
    assert!(!tmp.path().join("o").exists());

    fs::write(&cfg, "{\n  \"m\": 10,\n  \"eps_b\": ,\n}").unwrap();
    let out = run(&["validate", cfg.to_str().unwrap()]);
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "ParseError");
    assert!(err["message"].as_str().unwrap().contains("line 3"));

    let out = run(&["run", "no-such-preset"]);
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "UnknownPreset");
}

#[test]
fn validate_prints_resolved_scenario() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("c.json");
    fs::write(&cfg, r#"{"preset": "fig3", "omega_c_over_gamma": 6}"#).unwrap();
    let out = run(&["validate", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let s: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(s["atomic"]["omega_c"].as_f64(), Some(6.0));
    assert_eq!(s["slab"]["thickness"]["rule"], "anti-resonant");
}

#[test]
fn list_presets_names_all() {
    let out = run(&["list-presets"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["fig2", "fig3", "fig4", "fig5", "fig6", "fig7"] {
        assert!(text.contains(name), "{name} missing");
    }
}

#[test]
fn sweep_reports_transition() {
    let out = run(&["sweep", "--preset", "fig4", "--omega-c", "1.5,4,6,8", "--json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let table: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(table["rows"].as_array().unwrap().len(), 4);
    let transitions = table["transitions"].as_array().unwrap();
    assert_eq!(transitions.len(), 2);
    for t in transitions {
        assert_eq!(t["omega_c_from"].as_f64(), Some(4.0));
        assert_eq!(t["omega_c_to"].as_f64(), Some(6.0));
    }

    let out = run(&["sweep", "--preset", "fig5", "--omega-c", "6"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("superluminal"));
    assert!(!text.contains("becomes"));
}
