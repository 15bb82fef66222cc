use std::path::Path;
use std::process::{Command, Output};

fn vatom(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vatom"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn rows(path: &Path) -> Vec<Vec<String>> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn fig2c_manifest_writes_full_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let out = vatom(&["manifest", "fig2c"], dir.path());
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let table = rows(&dir.path().join("fig2c.csv"));
    assert_eq!(table.len(), 802);
    assert_eq!(
        table[0].join(","),
        "delta,rho00,rho11,rho22,re_rho10,im_rho10,re_rho20,im_rho20,re_rho21,im_rho21,residual"
    );
    // Ground population near one half at the sweep edges.
    for row in [&table[1], &table[801]] {
        let rho00: f64 = row[1].parse().unwrap();
        assert!((rho00 - 0.5).abs() < 0.05, "{rho00}");
    }
}

#[test]
fn fig2d_shows_inversion() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        vatom(&["manifest", "fig2d"], dir.path()).status.code(),
        Some(0)
    );
    let table = rows(&dir.path().join("fig2d.csv"));
    let inverted = table[1..].iter().any(|r| {
        let p: Vec<f64> = r.iter().map(|x| x.parse().unwrap()).collect();
        p[3] > p[1]
    });
    assert!(inverted);
}

#[test]
fn single_point_sweep_has_one_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = vatom(
        &[
            "populations",
            "--set",
            "sweep_start=2*omega_r",
            "--set",
            "sweep_stop=2*omega_r",
            "--set",
            "sweep_count=1",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(rows(&dir.path().join("populations.csv")).len(), 2);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "spectrum",
        "--kind",
        "fluorescence",
        "--set",
        "delta=omega_r",
        "--set",
        "freq_start=-2*omega_r",
        "--set",
        "freq_stop=2*omega_r",
        "--set",
        "freq_count=301",
    ];
    let mut runs = Vec::new();
    for threads in ["1", "3"] {
        let mut a = args.to_vec();
        a.extend(["--threads", threads]);
        assert_eq!(vatom(&a, dir.path()).status.code(), Some(0));
        runs.push(std::fs::read(dir.path().join("fluorescence.csv")).unwrap());
    }
    assert_eq!(runs[0], runs[1]);
    assert!(!runs[0].contains(&b'\r'));
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(
        &cfg,
        "# fig 8 parameters\nomega21 = 200\nrabi = 100\nsweep_start = -omega_r\nsweep_stop = omega_r\nsweep_count = 5\n",
    )
    .unwrap();
    let out = vatom(
        &[
            "rates",
            "--config",
            cfg.to_str().unwrap(),
            "--set",
            "rabi=200",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let table = rows(&dir.path().join("rates.csv"));
    assert_eq!(table.len(), 6);
    let omega_r: f64 = table[1][1].parse().unwrap();
    assert_eq!(omega_r, 300.0);
    let first: f64 = table[1][0].parse().unwrap();
    assert_eq!(first, -300.0);
}

#[test]
fn secular_spectrum_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = vatom(
        &[
            "spectrum",
            "--kind",
            "fluorescence-secular",
            "--svg",
            "--set",
            "freq_start=-300",
            "--set",
            "freq_stop=300",
            "--set",
            "freq_count=101",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let table = rows(&dir.path().join("fluorescence-secular.csv"));
    assert_eq!(table[0].len(), 7);
    let svg = std::fs::read_to_string(dir.path().join("fluorescence-secular.svg")).unwrap();
    assert!(svg.contains("<polyline"));
}

#[test]
fn absorption_manifest_beats_reference() {
    let dir = tempfile::tempdir().unwrap();
    let out = vatom(&["manifest", "fig9c"], dir.path());
    let report = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{report}");
    assert!(report.contains("fig9c\texceeds_fig9a\t"));
    assert!(report
        .lines()
        .any(|l| l.contains("exceeds_fig9a") && l.ends_with("\tpass")));
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["populations", "--set", "bogus=1"],
        vec!["populations", "--set", "rabi=-3"],
        vec!["populations", "--config", "/nonexistent/run.cfg"],
        vec!["manifest", "fig99z"],
        vec!["spectrum", "--kind", "raman"],
    ] {
        assert_eq!(vatom(&args, dir.path()).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn solver_failures_exit_3_but_keep_data() {
    let dir = tempfile::tempdir().unwrap();
    // Ω_R = 0 at the first point: the dressed basis does not exist.
    let out = vatom(
        &[
            "dressed",
            "--set",
            "omega21=0",
            "--set",
            "sweep_var=rabi",
            "--set",
            "sweep_start=0",
            "--set",
            "sweep_stop=1",
            "--set",
            "sweep_count=2",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3));
    let table = rows(&dir.path().join("dressed.csv"));
    assert_eq!(table[1][1], "NaN");
}

#[test]
fn paper_exact_beta_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let out = vatom(&["validate", "--beta-variant", "paper-exact"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let report = String::from_utf8_lossy(&out.stdout);
    let line = report
        .lines()
        .find(|l| l.starts_with("beta_flat_cavity_limit"))
        .unwrap();
    let measured: f64 = line.split('\t').nth(1).unwrap().parse().unwrap();
    // The paper-exact β table leaves 8η² + ε in the flat-cavity limit instead of 1.
    assert!((measured - 1.14983).abs() < 1e-5, "{measured}");
}

#[test]
fn manifest_list_names_every_frame() {
    let dir = tempfile::tempdir().unwrap();
    let out = vatom(&["manifest", "list"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let ids: Vec<String> = String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| l.split('\t').next().unwrap().to_string())
        .collect();
    for fig in [2, 4] {
        for f in ['a', 'b', 'c', 'd', 'e', 'f'] {
            assert!(ids.contains(&format!("fig{fig}{f}")));
        }
    }
    assert!(ids.contains(&"fig10f".to_string()));
}
