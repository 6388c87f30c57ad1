use std::f64::consts::PI;
use std::process::{Command, Output};

fn riesz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riesz")).args(args).output().expect("spawn riesz")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Header line and data rows, comments stripped.
fn table(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let head = lines.next().expect("column header").split(',').map(str::to_owned).collect();
    let rows = lines.map(|l| l.split(',').map(str::to_owned).collect()).collect();
    (head, rows)
}

fn column(head: &[String], row: &[String], name: &str) -> f64 {
    let i = head.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
    row[i].parse().unwrap()
}

#[test]
fn psi_of_unit_circle_at_its_diameter() {
    let o = riesz(&["psi", "--shape", "circle(r=1)", "--t-grid", "2:2:1"]);
    assert!(o.status.success());
    let (head, rows) = table(&stdout(&o));
    assert_eq!(head[..2], ["t".to_owned(), "psi".to_owned()]);
    assert_eq!(rows.len(), 1);
    assert!((column(&head, &rows[0], "psi") - 2.0 * PI).abs() < 1e-10);
}

#[test]
fn torus_residues_come_from_area_and_willmore_defect() {
    let o = riesz(&["residues", "--shape", "torus(R=2,r=0.5)"]);
    assert!(o.status.success());
    let (head, rows) = table(&stdout(&o));
    let ks: Vec<f64> = rows.iter().map(|r| column(&head, r, "k")).collect();
    assert_eq!(ks, [2.0, 4.0]);
    let area = 4.0 * PI * PI * 2.0 * 0.5;
    assert!((column(&head, &rows[0], "residue") - 2.0 * PI * area).abs() < 1e-8);
    // (π/8)∫(κ₁−κ₂)²; frozen from the log coefficient of a cutoff Laurent fit,
    // which reproduced it to 2e−7
    let r4 = column(&head, &rows[1], "residue");
    assert!((r4 / 64.046289712 - 1.0).abs() < 1e-6, "{r4}");
}

#[test]
fn sphere_energy_at_zero_is_area_squared() {
    let o = riesz(&["energy", "--shape", "sphere(r=1)", "--z", "0", "--no-cross-check"]);
    assert!(o.status.success());
    let (head, rows) = table(&stdout(&o));
    let want = (4.0 * PI).powi(2);
    assert!((column(&head, &rows[0], "value_re") / want - 1.0).abs() < 1e-9);
}

#[test]
fn circle_energy_reports_the_pole_residue() {
    let o = riesz(&["energy", "--shape", "circle(r=1)", "--z", "-1"]);
    assert!(o.status.success());
    let (head, rows) = table(&stdout(&o));
    assert!((column(&head, &rows[0], "residue_re") - 4.0 * PI).abs() < 1e-9);
}

#[test]
fn output_is_deterministic_and_config_is_hashed() {
    let args = ["energy", "--shape", "ellipse(a=2,b=1)", "--z-grid", "-0.5:0.5:3", "--no-cross-check"];
    let a = riesz(&args);
    let b = riesz(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("# riesz "));
    assert!(text.lines().any(|l| l.starts_with("# config-sha256: ")));
    let (head, rows) = table(&text);
    assert_eq!(head[0], "z_re");
    assert_eq!(rows.len(), 3);

    let other = riesz(&["energy", "--shape", "ellipse(a=2,b=1.5)", "--z-grid", "-0.5:0.5:3", "--no-cross-check"]);
    let hash = |t: &str| t.lines().find(|l| l.starts_with("# config-sha256")).unwrap().to_owned();
    assert_ne!(hash(&text), hash(&stdout(&other)));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("psi.csv");
    let o = riesz(&["psi", "--shape", "circle(r=1)", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let (_, rows) = table(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(rows.len(), 41);
}

#[test]
fn config_errors_exit_with_two() {
    for args in [
        &["energy", "--shape", "blob", "--z", "0"][..],
        &["energy", "--shape", "circle(r=-1)", "--z", "0"],
        &["energy", "--shape", "circle(r=1)", "--z", "nonsense"],
        &["energy", "--shape", "circle(r=1)"],
        &["beta-sweep", "--shape", "circle(r=1)", "--z-grid", "-3:-1:3"],
        &["validate", "--criterion", "13"],
        &["frobnicate"],
    ] {
        let o = riesz(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn beta_sweep_annotates_poles() {
    let o = riesz(&["beta-sweep", "--shape", "circle(r=1)", "--z-grid", "-3.5:-0.5:4", "--no-cross-check"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("# pole: z = -1")));
    let (head, rows) = table(&text);
    assert!(head.iter().any(|h| h == "nearest_pole"));
    assert_eq!(rows.len(), 4);
}

#[test]
fn validate_single_criterion() {
    let o = riesz(&["validate", "--criterion", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pass"));
}
