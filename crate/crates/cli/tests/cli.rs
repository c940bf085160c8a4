use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use povm_coherence::quantum::{random_density, random_povm};
use povm_coherence::{ComplexMatrix, DensityMatrix, Ensemble, Povm, PureState, C64};
use povm_coherence_cli::format::MatrixFile;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tempfile::TempDir;

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        Files {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn put(&self, name: &str, f: &MatrixFile) -> PathBuf {
        let p = self.dir.path().join(name);
        f.save(&p).unwrap();
        p
    }

    fn put_raw(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }
}

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_coherence"));
    c.env_remove("COH_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json_ok(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn json_err(out: &Output, code: i32) -> Value {
    assert_eq!(
        out.status.code(),
        Some(code),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(out.stdout.is_empty());
    serde_json::from_slice(&out.stderr).unwrap()
}

fn close(v: &Value, expected: f64, tol: f64) {
    let x = v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"));
    assert!((x - expected).abs() <= tol, "{x} vs {expected}");
}

fn plus() -> MatrixFile {
    let h = 0.5f64.sqrt();
    MatrixFile::from_pure(&PureState::new(vec![C64::new(h, 0.0), C64::new(h, 0.0)]).unwrap())
}

fn ket0() -> MatrixFile {
    MatrixFile::from_pure(&PureState::basis(2, 0))
}

fn z_basis(d: usize) -> MatrixFile {
    MatrixFile::from_povm(&Povm::computational(d))
}

fn x_basis() -> MatrixFile {
    let h = 0.5;
    let plus = ComplexMatrix::from_real(2, 2, &[h, h, h, h]).unwrap();
    let minus = ComplexMatrix::from_real(2, 2, &[h, -h, -h, h]).unwrap();
    MatrixFile::from_povm(&Povm::new(vec![plus, minus]).unwrap())
}

fn trine() -> MatrixFile {
    let elements = (0..3)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
            let v = [C64::new(t.cos(), 0.0), C64::new(t.sin(), 0.0)];
            ComplexMatrix::outer(&v).scale(2.0 / 3.0)
        })
        .collect();
    MatrixFile::from_povm(&Povm::new(elements).unwrap())
}

fn basis_state(d: usize, k: usize) -> DensityMatrix {
    PureState::basis(d, k).to_density()
}

/// `compute --state st --povm pv --measure ...`
fn compute(st: &Path, pv: &Path, rest: &[&str]) -> Output {
    let mut args = vec!["compute", "--state", s(st), "--povm", s(pv), "--measure"];
    args.extend_from_slice(rest);
    run(&args)
}

#[test]
fn compute_plus_state_in_z_basis() {
    let f = Files::new();
    let (st, pv) = (f.put("s.json", &plus()), f.put("p.json", &z_basis(2)));
    let v = json_ok(&compute(&st, &pv, &["r"]));
    close(&v["value"], 1.0, 1e-12);
    close(&v["incoherence_defect"], 0.5, 1e-12);
    assert_eq!(v["incoherent"], false);
    let v = json_ok(&compute(&st, &pv, &["l1"]));
    close(&v["value"], 1.0, 1e-12);
    let v = json_ok(&compute(&st, &pv, &["tsallis", "--alpha", "0.5"]));
    close(&v["value"], 1.0, 1e-12);
    close(&v["alpha"], 0.5, 0.0);
}

#[test]
fn compute_alpha_contract() {
    let f = Files::new();
    let (st, pv) = (f.put("s.json", &plus()), f.put("p.json", &z_basis(2)));
    let e = json_err(&compute(&st, &pv, &["tsallis"]), 2);
    assert_eq!(e["error"]["message"], "alpha required");
    let e = json_err(&compute(&st, &pv, &["tsallis", "--alpha", "1.0"]), 2);
    assert_eq!(e["error"]["kind"], "alpha_out_of_range");
    json_err(&compute(&st, &pv, &["tsallis", "--alpha", "-1"]), 2);
    json_err(&compute(&st, &pv, &["r", "--alpha", "0.5"]), 2);
}

#[test]
fn compute_input_errors() {
    let f = Files::new();
    let st = f.put("s.json", &plus());
    let p3 = f.put("p3.json", &z_basis(3));
    let e = json_err(&compute(&st, &p3, &["r"]), 3);
    assert_eq!(e["error"]["kind"], "dimension_mismatch");

    let bad = f.put_raw("bad.json", r#"{"kind":"state","dim":1,"matrix":[[[2,0]]]}"#);
    let p1 = f.put("p1.json", &z_basis(1));
    let e = json_err(&compute(&bad, &p1, &["r"]), 2);
    assert_eq!(e["error"]["kind"], "invalid");
    assert_eq!(e["error"]["violations"][0]["kind"], "trace");

    let junk = f.put_raw("junk.json", "{not json");
    let e = json_err(&compute(&junk, &p1, &["r"]), 2);
    assert_eq!(e["error"]["kind"], "parse");

    let e = json_err(&compute(Path::new("/nonexistent.json"), &p1, &["r"]), 2);
    assert_eq!(e["error"]["kind"], "io");

    let e = json_err(&compute(&p1, &p1, &["r"]), 2);
    assert_eq!(e["error"]["kind"], "usage");
}

#[test]
fn usage_errors_are_json_and_help_succeeds() {
    let e = json_err(&run(&["frobnicate"]), 2);
    assert_eq!(e["error"]["kind"], "usage");
    json_err(&run(&["compute", "--measure", "r"]), 2);
    assert!(run(&["--help"]).status.success());
    assert!(run(&["haar", "--help"]).status.success());
}

fn parse_csv(out: &Output) -> (Vec<String>, Vec<Vec<String>>) {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let mut r = csv::Reader::from_reader(&out.stdout[..]);
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn col(header: &[String], name: &str) -> usize {
    header
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("no column {name}"))
}

fn num(row: &[String], i: usize) -> f64 {
    row[i].parse().unwrap()
}

#[test]
fn first_figure_sweep() {
    let (h, rows) = parse_csv(&run(&["bounds", "--figure", "1", "--range", "0:0.8:0.01"]));
    assert_eq!(
        h,
        [
            "parameter",
            "c_l1",
            "thm1_p2_q2",
            "thm1_p3_q1.5",
            "thm1_p4_q1.3333333333333333",
            "thm2_ordered",
            "thm2_uniform",
            "b1",
            "b2",
            "b3"
        ]
    );
    assert_eq!(rows.len(), 81);
    let row = rows.iter().find(|r| r[0] == "0.5").unwrap();
    let (b1, b2, b3) = (
        num(row, col(&h, "b1")),
        num(row, col(&h, "b2")),
        num(row, col(&h, "b3")),
    );
    assert!(b2 > b1 && b1 > b3, "{b1} {b2} {b3}");
    assert!((b1 - 0.5f64.sqrt()).abs() < 1e-12);
    // same rows without --range
    let (_, default_rows) = parse_csv(&run(&["bounds", "--figure", "1"]));
    assert_eq!(default_rows, rows);
}

#[test]
fn second_figure_sweep() {
    let (h, rows) = parse_csv(&run(&["bounds", "--figure", "2"]));
    assert_eq!(rows.len(), 25);
    let row = rows.iter().find(|r| r[0] == "0.21").unwrap();
    let (b1, b2, b3) = (
        num(row, col(&h, "b1")),
        num(row, col(&h, "b2")),
        num(row, col(&h, "b3")),
    );
    assert!(b2 < b3 && b3 < b1, "{b1} {b2} {b3}");
    for row in &rows {
        let c = num(row, col(&h, "c_l1"));
        for name in ["thm2_ordered", "b1", "b2", "b3"] {
            assert!(
                num(row, col(&h, name)) >= c - 1e-10,
                "{name} at x = {}",
                row[0]
            );
        }
    }
}

#[test]
fn bounds_on_random_files_are_sound() {
    let f = Files::new();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..5 {
        let rho = random_density(3, &mut rng);
        let e = random_povm(3, 4, &mut rng).unwrap();
        let st = f.put(&format!("s{trial}.json"), &MatrixFile::from_density(&rho));
        let pv = f.put(&format!("p{trial}.json"), &MatrixFile::from_povm(&e));
        let (h, rows) = parse_csv(&run(&[
            "bounds",
            "--state",
            s(&st),
            "--povm",
            s(&pv),
            "--pq",
            "2,2",
            "--pq",
            "5,1.25",
        ]));
        assert_eq!(rows.len(), 1);
        let row = &rows[0];
        assert_eq!(row[0], "");
        let c = num(row, 1);
        for name in [
            "thm1_p2_q2",
            "thm1_p5_q1.25",
            "thm2_ordered",
            "thm2_uniform",
        ] {
            assert!(num(row, col(&h, name)) >= c - 1e-8, "{name}");
        }
        for name in ["b1", "b2", "b3"] {
            assert_eq!(row[col(&h, name)], "", "basis bounds need a basis POVM");
        }
    }
}

#[test]
fn bounds_rejects_bad_requests() {
    json_err(&run(&["bounds", "--figure", "1", "--range", "0:1:0"]), 2);
    json_err(
        &run(&["bounds", "--figure", "1", "--range", "0:0.9:0.1"]),
        2,
    );
    json_err(
        &run(&["bounds", "--figure", "2", "--range", "0:0.3:0.1"]),
        2,
    );
    json_err(&run(&["bounds", "--figure", "3"]), 2);
    let e = json_err(&run(&["bounds", "--figure", "1", "--pq", "2,3"]), 2);
    assert_eq!(e["error"]["kind"], "invalid_exponents");
    json_err(&run(&["bounds"]), 2);
    let f = Files::new();
    let st = f.put("s.json", &plus());
    json_err(&run(&["bounds", "--state", s(&st)]), 2);
}

#[test]
fn lsm_from_state_and_povm() {
    let f = Files::new();
    let (st, pv) = (f.put("s.json", &plus()), f.put("p.json", &z_basis(2)));
    let v = json_ok(&run(&["lsm", "--state", s(&st), "--povm", s(&pv)]));
    assert_eq!(v["mode"], "state_povm");
    assert!(v["identity"]["defect"].as_f64().unwrap() <= 1e-9);
    close(&v["identity"]["tsallis_half"], 1.0, 1e-12);
    close(&v["identity"]["twice_error"], 1.0, 1e-12);
    let ens = MatrixFile::parse(&v["ensemble"].to_string()).unwrap();
    assert_eq!(ens.to_ensemble().unwrap().len(), 2);
}

#[test]
fn lsm_orthogonal_ensemble_is_error_free() {
    let f = Files::new();
    let ens = Ensemble::new(vec![(basis_state(2, 0), 0.5), (basis_state(2, 1), 0.5)]).unwrap();
    let p = f.put("e.json", &MatrixFile::from_ensemble(&ens));
    let v = json_ok(&run(&["lsm", "--ensemble", s(&p)]));
    close(&v["error_probability"], 0.0, 1e-12);
    assert_eq!(v["restriction"], "full_rank");
    assert!(MatrixFile::parse(&v["povm"].to_string())
        .unwrap()
        .to_povm()
        .is_ok());
}

#[test]
fn lsm_rank_deficient_ensemble_is_flagged() {
    let f = Files::new();
    let ens = Ensemble::new(vec![(basis_state(3, 0), 0.3), (plus_in(3), 0.7)]).unwrap();
    let p = f.put("e.json", &MatrixFile::from_ensemble(&ens));
    let v = json_ok(&run(&["lsm", "--ensemble", s(&p)]));
    assert_eq!(v["support_restricted"], true);
    assert_eq!(v["restricted_dim"], 2);
    assert_eq!(v["support_rank"], 2);
    assert!(v["identity"]["defect"].as_f64().unwrap() <= 1e-9);
    assert_eq!(v["support_basis"].as_array().unwrap().len(), 3);
}

fn plus_in(d: usize) -> DensityMatrix {
    let h = 0.5f64.sqrt();
    let mut amps = vec![C64::new(0.0, 0.0); d];
    amps[0] = C64::new(h, 0.0);
    amps[1] = C64::new(h, 0.0);
    PureState::new(amps).unwrap().to_density()
}

#[test]
fn lsm_needs_exactly_one_mode() {
    let f = Files::new();
    let (st, pv) = (f.put("s.json", &plus()), f.put("p.json", &z_basis(2)));
    json_err(&run(&["lsm"]), 2);
    json_err(
        &run(&[
            "lsm",
            "--ensemble",
            s(&st),
            "--state",
            s(&st),
            "--povm",
            s(&pv),
        ]),
        2,
    );
    let e = json_err(&run(&["lsm", "--ensemble", s(&st)]), 2);
    assert_eq!(e["error"]["kind"], "usage");
}

fn uncertainty(st: &Path, e: &Path, f: &Path) -> Output {
    run(&[
        "uncertainty",
        "--state",
        s(st),
        "--povm",
        s(e),
        "--povm2",
        s(f),
    ])
}

#[test]
fn uncertainty_for_basis_state() {
    let f = Files::new();
    let (st, z, x) = (
        f.put("s.json", &ket0()),
        f.put("z.json", &z_basis(2)),
        f.put("x.json", &x_basis()),
    );
    let v = json_ok(&uncertainty(&st, &z, &x));
    close(&v["lhs"], 1.0, 1e-12);
    close(&v["c"], 0.5f64.sqrt(), 1e-12);
    close(&v["bound_c"], 1.0, 1e-12);
    close(&v["pure_state_bound"], 0.5, 1e-12);
    assert_eq!(v["holds"], true);
    assert_eq!(v["pure_state_bound_holds"], true);

    let v = json_ok(&uncertainty(&st, &x, &x));
    close(&v["c"], 1.0, 1e-12);

    let z3 = f.put("z3.json", &z_basis(3));
    json_err(&uncertainty(&st, &z, &z3), 3);
}

#[test]
fn uncertainty_random_triples() {
    let f = Files::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for t in 0..5 {
        let st = f.put(
            &format!("s{t}.json"),
            &MatrixFile::from_density(&random_density(3, &mut rng)),
        );
        let e = f.put(
            &format!("e{t}.json"),
            &MatrixFile::from_povm(&random_povm(3, 3, &mut rng).unwrap()),
        );
        let g = f.put(
            &format!("g{t}.json"),
            &MatrixFile::from_povm(&random_povm(3, 4, &mut rng).unwrap()),
        );
        let v = json_ok(&uncertainty(&st, &e, &g));
        let lhs = v["lhs"].as_f64().unwrap();
        assert!(lhs >= v["bound_c"].as_f64().unwrap() - 1e-8);
        assert!(lhs >= v["bound_c_prime"].as_f64().unwrap() - 1e-8);
        assert_eq!(v["pure"], false);
        assert!(v["pure_state_bound_holds"].is_null());
    }
}

#[test]
fn haar_projective_qubit() {
    let f = Files::new();
    let z = f.put("z.json", &z_basis(2));
    let v = json_ok(&run(&["haar", "--povm", s(&z), "--measure", "r"]));
    close(&v["analytic"], 0.5 / std::f64::consts::LN_2, 1e-12);
    assert!(v["mc"].is_null());
    let v = json_ok(&run(&[
        "haar",
        "--povm",
        s(&z),
        "--measure",
        "tsallis",
        "--alpha",
        "0.5",
    ]));
    close(&v["analytic"], 2.0 / 3.0, 1e-12);
    let v = json_ok(&run(&[
        "haar",
        "--povm",
        s(&z),
        "--measure",
        "l1bound",
        "--alpha",
        "0.7",
    ]));
    close(&v["analytic"], 1.0, 1e-12);
    close(&v["universal_bound"], 1.0, 0.0);
    json_err(&run(&["haar", "--povm", s(&z), "--measure", "tsallis"]), 2);
}

#[test]
fn haar_trine_monte_carlo() {
    let f = Files::new();
    let p = f.put("trine.json", &trine());
    let args = [
        "haar",
        "--povm",
        s(&p),
        "--measure",
        "tsallis",
        "--alpha",
        "0.5",
        "--mc",
        "100000",
        "--seed",
        "7",
    ];
    let v = json_ok(&run(&args));
    close(&v["analytic"], 10.0 / 9.0, 1e-12);
    let mc = &v["mc"];
    assert_eq!(mc["samples"], 100000);
    assert!(mc["sigma_distance"].as_f64().unwrap() <= 4.0);
    assert_eq!(mc["agrees"], true);
    assert_eq!(mc["pointwise_l1_within_n_minus_1"], true);
    // deterministic, and the environment seed is used only without --seed
    assert_eq!(json_ok(&run(&args)), v);
    let env = bin()
        .args(&args[..args.len() - 2])
        .env("COH_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(json_ok(&env), v);
    let other = bin().args(args).env("COH_SEED", "8").output().unwrap();
    assert_eq!(json_ok(&other), v);
}

#[test]
fn haar_l1_bound_monte_carlo() {
    let f = Files::new();
    let p = f.put("trine.json", &trine());
    let v = json_ok(&run(&[
        "haar",
        "--povm",
        s(&p),
        "--measure",
        "l1bound",
        "--mc",
        "20000",
    ]));
    assert_eq!(v["mc"]["seed"], 0);
    assert_eq!(v["mc"]["within_bound"], true);
    assert!(v["mc"]["max_l1"].as_f64().unwrap() <= 2.0);
}

#[test]
fn haar_rejects_bad_seeds_and_budgets() {
    let f = Files::new();
    let z = f.put("z.json", &z_basis(2));
    let bad_env = bin()
        .args(["haar", "--povm", s(&z), "--measure", "r", "--mc", "1000"])
        .env("COH_SEED", "abc")
        .output()
        .unwrap();
    json_err(&bad_env, 2);
    let e = json_err(
        &run(&["haar", "--povm", s(&z), "--measure", "r", "--mc", "10"]),
        2,
    );
    assert_eq!(e["error"]["kind"], "too_few_samples");
}
