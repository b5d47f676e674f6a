//! End-to-end runs of the `lipcheb` binary: outputs, exit codes and
//! reproducibility of reports.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lipcheb_cli::cloudfile::{parse_cloud, write_cloud};
use lipcheb_core::verify::CheckReport;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lipcheb"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn lipcheb")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// A scratch directory unique to one test.
fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lipcheb-golden-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn center_linf_document() {
    let dir = scratch("center");
    let f = write(&dir, "m.json", r#"{"dim":2,"points":[[0,0],[0,2]]}"#);
    let o = run(&["center", &f, "--norm", "linf"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "{\"norm\":\"linf\",\"radius\":1.0000000000000000e0,\"center_set\":\
         [[-1.0000000000000000e0,1.0000000000000000e0],[1.0000000000000000e0,1.0000000000000000e0]]}\n"
    );

    let o = run(&["center", &f, "--format", "rows"]);
    assert_eq!(
        stdout(&o),
        "radius,1.0000000000000000e0\n\
         -1.0000000000000000e0,1.0000000000000000e0\n\
         1.0000000000000000e0,1.0000000000000000e0\n"
    );

    let o = run(&["radius", &f]);
    assert_eq!(stdout(&o), "1.0000000000000000e0\n");
}

#[test]
fn center_l2_singleton_has_zero_radius() {
    let dir = scratch("singleton");
    let f = write(&dir, "p.txt", "3, 4\n");
    let o = run(&["center", &f, "--norm", "l2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "{\"norm\":\"l2\",\"radius\":0.0000000000000000e0,\"center\":[3.0000000000000000e0,4.0000000000000000e0]}\n"
    );
}

#[test]
fn bad_inputs_exit_2() {
    let dir = scratch("bad");
    let empty = write(&dir, "empty.json", r#"{"dim":2,"points":[]}"#);
    let o = run(&["center", &empty]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!stderr(&o).is_empty());

    let malformed = write(&dir, "bad.txt", "0 0\n1 2\n3 oops\n");
    let o = run(&["center", &malformed]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("row 2"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());

    let missing = dir.join("nope.txt");
    let o = run(&["radius", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["verify", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["verify", "theorem2", "--dim", "1:3"]);
    assert_eq!(o.status.code(), Some(2), "a plane check in dimension 1");
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn hausdorff_variants() {
    let dir = scratch("hausdorff");
    let a = write(&dir, "a.txt", "0\n1\n");
    let b = write(&dir, "b.txt", "0.5\n1.5\n");
    let c = write(&dir, "c.txt", "0\n0\n1\n");

    let o = run(&["hausdorff", &a, &b, "--variant", "alphahat"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "5.0000000000000000e-1\n");
    let o = run(&["nnet-dist", &a, &b, "--norm", "l2"]);
    assert_eq!(stdout(&o), "5.0000000000000000e-1\n");

    let o = run(&["hausdorff", &a, &c]);
    assert_eq!(stdout(&o), "0.0000000000000000e0\n");
    let o = run(&["hausdorff", &a, &c, "--variant", "alphahat"]);
    assert_eq!(o.status.code(), Some(2), "sizes differ");
    assert!(
        stderr(&o).contains('2') && stderr(&o).contains('3'),
        "{}",
        stderr(&o)
    );
}

#[test]
fn verify_exit_codes() {
    let o = run(&["verify", "theorem2", "--trials", "300"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(
        stdout(&o).starts_with("PASS theorem2: trials=300 violations=0"),
        "{}",
        stdout(&o)
    );

    // The analytic family attains ratio 2, so any smaller constant fails.
    let o = run(&["verify", "tightness", "--trials", "5", "--lipschitz", "1.9"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("FAIL tightness"), "{}", stdout(&o));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = scratch("repro");
    let (r1, r2) = (dir.join("r1.json"), dir.join("r2.json"));
    for out in [&r1, &r2] {
        let o = run(&[
            "verify",
            "all",
            "--trials",
            "60",
            "--seed",
            "7",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
    let (a, b) = (std::fs::read(&r1).unwrap(), std::fs::read(&r2).unwrap());
    assert!(!a.is_empty());
    assert_eq!(a, b);

    let reports: Vec<CheckReport> = serde_json::from_slice(&a).unwrap();
    assert_eq!(reports.len(), 8);
    assert!(reports.iter().all(|r| r.seed == 7 && r.passed()));

    let o = run(&[
        "verify",
        "all",
        "--trials",
        "60",
        "--seed",
        "8",
        "--out",
        r2.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_ne!(
        std::fs::read(&r2).unwrap(),
        a,
        "a different seed gives a different report"
    );
}

#[test]
fn tightness_report_carries_ratio_two_witnesses() {
    let dir = scratch("tight");
    let out = dir.join("t.json");
    let o = run(&[
        "verify",
        "tightness",
        "--trials",
        "4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report: CheckReport = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(report.exact_ratios.len(), 3);
    for e in &report.exact_ratios {
        assert!((e.ratio - 2.0).abs() <= 1e-12, "{e:?}");
    }
    let best = report.max_ratio.unwrap();
    assert!((best.value - 2.0).abs() <= 1e-12);

    // The witness clouds replay through the `center` subcommand.
    let m = write(&dir, "m.json", &write_cloud(&best.witness.m));
    let w = write(&dir, "w.json", &write_cloud(&best.witness.w));
    assert_eq!(
        parse_cloud(&std::fs::read_to_string(&m).unwrap()).unwrap(),
        best.witness.m
    );
    let radius = |f: &str| -> f64 {
        let o = run(&["radius", f]);
        stdout(&o).trim().parse().unwrap()
    };
    let d = run(&["hausdorff", &m, &w]);
    let alpha: f64 = stdout(&d).trim().parse().unwrap();
    assert!((alpha - best.input_metric).abs() <= 1e-12);
    assert!((radius(&m) - radius(&w)).abs() <= alpha + 1e-12);
}

#[test]
fn plot_data_rows() {
    let o = run(&["plot-data", "theorem2", "--trials", "100"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("check,trial,step,alpha_inputs,alpha_centers,ratio")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 100);
    for (i, row) in rows.iter().enumerate() {
        let f: Vec<&str> = row.split(',').collect();
        assert_eq!(f[0], "theorem2");
        assert_eq!(f[1].parse::<usize>().unwrap(), i);
        let ratio: f64 = f[5].parse().unwrap();
        assert!(ratio <= 2.0 + 1e-9);
    }

    let dir = scratch("plot");
    let out = dir.join("empty.csv");
    let o = run(&[
        "plot-data",
        "theorem2",
        "--trials",
        "0",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&out).unwrap(),
        "check,trial,step,alpha_inputs,alpha_centers,ratio\n"
    );

    let o = run(&["plot-data", "tightness", "--trials", "2"]);
    let text = stdout(&o);
    let analytic: Vec<f64> = text
        .lines()
        .skip(1)
        .take(3)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(analytic.len(), 3);
    assert!(
        analytic.iter().all(|r| (r - 2.0).abs() <= 1e-12),
        "{analytic:?}"
    );

    let o = run(&["plot-data", "lemma0", "--trials", "3", "--format", "doc"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc.as_array().unwrap().len(), 3);
    assert_eq!(doc[0]["check"], "lemma0");
}
