use std::process::{Command, Output};

fn flexcool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flexcool"))
        .args(args)
        .env_remove("FLEXCOOL_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn steady_defaults() {
    let o = flexcool(&["steady"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "delta_hz,omega_rabi_hz,m_ss,n_total_ss,gamma_eff_per_s,stable"
    );
    assert!(lines.next().unwrap().starts_with("36000000.0,10000000.0,"));
    assert!(o.stderr.is_empty(), "no overrides at the defaults");
}

#[test]
fn single_cell_sweep_matches_steady() {
    let steady = flexcool(&["steady"]);
    let sweep = flexcool(&[
        "sweep",
        "--set",
        "sweep.x=detuning, 36 MHz, 36 MHz, 1",
        "--set",
        "sweep.y=rabi, 10 MHz, 10 MHz, 1",
    ]);
    assert!(sweep.status.success());
    assert_eq!(steady.stdout, sweep.stdout);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = [
        "sweep",
        "--set",
        "sweep.x=detuning, 3.6 MHz, 360 MHz, 9, log",
        "--set",
        "sweep.y=g, -500 kHz, -5 kHz, 9, log",
    ];
    let a = flexcool(&args);
    let b = flexcool(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 82);
}

#[test]
fn exit_codes() {
    assert_eq!(
        flexcool(&["--set", "nonsense=1", "steady"]).status.code(),
        Some(2)
    );
    assert_eq!(
        flexcool(&["--set", "sheet.tension=-1 nN", "params"])
            .status
            .code(),
        Some(2)
    );
    let singular = flexcool(&["--set", "coupling.g=0", "steady"]);
    assert_eq!(singular.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&singular.stderr).contains("g = 0"));
    // sweeps report singular cells without failing
    let sweep = flexcool(&[
        "--set",
        "sweep.x=g, 0, 0, 1",
        "--set",
        "sweep.y=none",
        "sweep",
    ]);
    assert_eq!(sweep.status.code(), Some(0));
    assert_eq!(
        stdout(&sweep),
        "g_hz,m_ss,n_total_ss,gamma_eff_per_s,stable\n0.0,NaN,NaN,NaN,false\n"
    );
}

#[test]
fn config_file_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.cfg");
    std::fs::write(&path, "[drive]\ndetuning = 40 MHz\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_flexcool"))
        .arg("steady")
        .env("FLEXCOOL_CONFIG", &path)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(stdout(&o)
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("40000000.0,"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("override drive.detuning"));
}

#[test]
fn config_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cfg");
    std::fs::write(&path, "[drive]\nrabi = 10 MHz\nrabi = 12 MHz\n").unwrap();
    let o = flexcool(&["--config", path.to_str().unwrap(), "steady"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn show_config_round_trips() {
    let first = flexcool(&["--set", "drive.eta=0.2", "--show-config", "steady"]);
    assert!(first.status.success());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("resolved.cfg");
    std::fs::write(&path, &first.stdout).unwrap();
    let second = flexcool(&[
        "--config",
        path.to_str().unwrap(),
        "--show-config",
        "steady",
    ]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn output_file_records_configuration() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rate.csv");
    let o = flexcool(&[
        "rate",
        "--m0",
        "100",
        "-o",
        out.to_str().unwrap(),
        "--set",
        "drive.eta=0.2",
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("m0,amplitude_a,gamma_eff_per_s,"));
    assert!(csv.lines().nth(1).unwrap().starts_with("100.0,"));
    let meta = std::fs::read_to_string(dir.path().join("rate.csv.config")).unwrap();
    assert!(meta.contains("eta = 0.2\n"));
}

#[test]
fn help_documents_schemas() {
    let o = flexcool(&["--help"]);
    let text = stdout(&o);
    for schema in [
        "z_um,u_j,u_hz,c4_hz_um4",
        "delta_hz,omega_rabi_hz,m_ss,n_total_ss,gamma_eff_per_s,stable",
        "t_s,m_ode_T<T>K",
    ] {
        assert!(text.contains(schema), "{schema}");
    }
}

#[test]
fn evolve_flags_divergence() {
    let o = flexcool(&[
        "--set",
        "evolve.points=3",
        "--set",
        "evolve.temperatures=1 K",
        "evolve",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(
        text.lines().next().unwrap(),
        "t_s,m_ode_T1K,m_fit_T1K,diverged"
    );
    assert_eq!(text.lines().count(), 5);
    assert!(String::from_utf8_lossy(&o.stderr).contains("growing mode"));
}
