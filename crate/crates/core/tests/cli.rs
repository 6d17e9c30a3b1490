use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qnetsim::spectral::read_peaks_csv;

fn qnetsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qnetsim"))
        .args(args)
        .output()
        .unwrap()
}

fn small_run(dir: &Path) -> Vec<String> {
    vec![
        "--set".into(),
        "lattice.nx=2".into(),
        "--set".into(),
        "lattice.ny=2".into(),
        "--set".into(),
        "evolve.samples=256".into(),
        "-o".into(),
        dir.display().to_string(),
    ]
}

#[test]
fn spectrum_writes_all_artifacts_and_fft_reproduces_peaks() {
    let tmp = tempfile::tempdir().unwrap();
    let run = tmp.path().join("run");
    let mut args = vec!["spectrum".to_string()];
    args.extend(small_run(&run));
    let out = qnetsim(&args.iter().map(String::as_str).collect::<Vec<_>>());
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    for f in ["timeseries.csv", "spectrum.csv", "peaks.csv", "run.json"] {
        assert!(run.join(f).exists(), "{f}");
    }
    let header = fs::read_to_string(run.join("spectrum.csv")).unwrap();
    assert!(header.starts_with("omega,re,im,abs"));
    let meta: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(run.join("run.json")).unwrap()).unwrap();
    assert_eq!(meta["qubits"], 9);
    assert!(meta["wall_seconds"].as_f64().unwrap() >= 0.0);
    assert_eq!(meta["config"]["lattice"]["nx"], 2);

    let again = tmp.path().join("again");
    let out = qnetsim(&[
        "fft",
        run.join("timeseries.csv").to_str().unwrap(),
        "-o",
        again.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let a = read_peaks_csv(fs::File::open(run.join("peaks.csv")).unwrap()).unwrap();
    let b = read_peaks_csv(fs::File::open(again.join("peaks.csv")).unwrap()).unwrap();
    assert_eq!(a, b);
    assert_eq!(
        fs::read(run.join("spectrum.csv")).unwrap(),
        fs::read(again.join("spectrum.csv")).unwrap()
    );
}

#[test]
fn identical_config_gives_identical_files() {
    let tmp = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for name in ["a", "b"] {
        let dir = tmp.path().join(name);
        let mut args = vec![
            "spectrum".to_string(),
            "--set".into(),
            "measure.mode=sampled".into(),
        ];
        args.extend(small_run(&dir));
        let out = qnetsim(&args.iter().map(String::as_str).collect::<Vec<_>>());
        assert!(out.status.success());
        outputs.push(fs::read(dir.join("timeseries.csv")).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn malformed_series_names_the_line() {
    let tmp = tempfile::tempdir().unwrap();
    let input = tmp.path().join("bad.csv");
    fs::write(&input, "t,re,im\n0,1,0\n0.1,oops,0\n0.2,1,0\n0.3,1,0\n").unwrap();
    let out = qnetsim(&[
        "fft",
        input.to_str().unwrap(),
        "-o",
        tmp.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn single_mode_file_gives_one_refined_peak() {
    let tmp = tempfile::tempdir().unwrap();
    let input = tmp.path().join("mode.csv");
    let mut text = String::from("t,re,im\n");
    for j in 0..512 {
        let t = j as f64 * 0.05;
        let phase = -1.234 * t;
        text.push_str(&format!(
            "{t:.16e},{:.16e},{:.16e}\n",
            phase.cos(),
            phase.sin()
        ));
    }
    fs::write(&input, text).unwrap();
    let out = qnetsim(&[
        "fft",
        input.to_str().unwrap(),
        "-o",
        tmp.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let peaks = read_peaks_csv(fs::File::open(tmp.path().join("peaks.csv")).unwrap()).unwrap();
    assert_eq!(peaks.len(), 1);
    assert!(peaks[0].refined && (peaks[0].lambda - 1.234).abs() < 1e-3);
}

#[test]
fn config_errors_exit_with_two_and_name_the_field() {
    let out = qnetsim(&["spectrum", "--set", "evolve.samples=1000"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("evolve.samples"));
    let out = qnetsim(&["spectrum", "--set", "lattice.nx=3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qnetsim(&["spectrum", "--config", "/nonexistent/run.toml"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn oracle_and_prepare_check_from_a_config_file() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("run.toml");
    fs::write(
        &cfg,
        format!(
            "[lattice]\nnx = 2\nny = 2\n\n[prep]\ncheck = \"four-site\"\nsweep = [1, 10, 100]\n\n[output]\ndirectory = {:?}\n",
            tmp.path().join("o").display().to_string()
        ),
    )
    .unwrap();
    let out = qnetsim(&["oracle", "--config", cfg.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = fs::read_to_string(tmp.path().join("o/oracle.csv")).unwrap();
    assert!(text.starts_with("index,lambda,weight"));
    assert_eq!(text.lines().count(), 37);
    let out = qnetsim(&["prepare-check", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let rows: Vec<f64> = fs::read_to_string(tmp.path().join("o/overlap.csv"))
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert!(rows.windows(2).all(|w| w[1] > w[0]));
    assert!(rows[2] > 0.9999);
}
