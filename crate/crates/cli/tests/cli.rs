use std::path::Path;

use ck_steenrod::report::Report;
use ck_steenrod::table::Table;
use ck_steenrod::{format_correspondence, parse_correspondence, run};
use ck_steenrod_core::exactalg::F2;
use ck_steenrod_core::steenrod::Correspondence;
use ck_steenrod_core::varieties::{ChowClass, SplitVariety, Variety};

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ck-steenrod").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn diagonal_spec(d: usize) -> String {
    let q = Variety::shared(&SplitVariety::quadric(d)).unwrap();
    format_correspondence(&Correspondence::<F2>::diagonal(&q).unwrap())
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(cli(&[]).0, 2);
    assert_eq!(cli(&["frobnicate"]).0, 2);
    let (code, _, err) = cli(&["verify", "nope"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown suite"));
    assert_eq!(cli(&["table", "Q4", "psi", "--k", "2"]).0, 2);
    assert_eq!(cli(&["table", "X9", "sq1"]).0, 2);
    assert_eq!(cli(&["table", "P2", "bogus"]).0, 2);
    assert_eq!(cli(&["table", "P2", "theta", "--of", "O(1"]).0, 2);
    assert_eq!(cli(&["--help"]).0, 0);
}

#[test]
fn catalog_listing() {
    let (code, out, _) = cli(&["catalog", "--max-quadric", "2", "--max-dim", "3"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.starts_with("Q2 ")));
    assert!(!out.lines().any(|l| l.starts_with("Q3 ")));
    let (code, out, _) = cli(&["catalog", "--max-dim", "3", "--json"]);
    assert_eq!(code, 0);
    let entries: serde_json::Value = serde_json::from_str(&out).unwrap();
    let q3 = entries.as_array().unwrap().iter().find(|e| e["variety"] == "Q3").unwrap();
    assert_eq!(q3["chow_ranks"], serde_json::json!([1, 1, 1, 1]));
    assert_eq!(q3["k0_rank"], 4);
}

#[test]
fn tables() {
    let (code, out, _) = cli(&["table", "Q4", "sq1"]);
    assert_eq!(code, 0);
    assert!(out.contains("sq1(l_2) = 1·l_1"), "{out}");
    let (_, out, _) = cli(&["table", "P3", "chern"]);
    assert!(out.contains("c_1 = 4·h^1   (mod 2: 0)"), "{out}");
    let (_, out, _) = cli(&["table", "Q5", "sq1", "--csv"]);
    assert!(out.starts_with("basis,h^0,"), "{out}");
    for op in ["sq1-coh", "psi", "theta", "tau", "gr-sq1", "chern"] {
        assert_eq!(cli(&["table", "Q3xP1", op]).0, 0, "{op}");
    }
}

#[test]
fn json_tables_round_trip_byte_for_byte() {
    for (v, op) in [("Q3", "tau"), ("P2", "theta"), ("Q4", "sq1"), ("P1xP2", "psi"), ("Q2", "chern")] {
        let (code, out, _) = cli(&["table", v, op, "--json"]);
        assert_eq!(code, 0);
        assert_eq!(Table::from_json(&out).unwrap().to_json(), out);
    }
}

#[test]
fn verify_passes_and_writes_json() {
    let (code, out, _) = cli(&["verify", "descent", "--max-dim", "6"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("PASS descent"));
    let (code, out, _) = cli(&["verify", "adem"]);
    assert_eq!(code, 0);
    assert!(out.contains("identity: Sq1 ∘ Sq1 = 0"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cartan.json");
    let (code, out, _) = cli(&["verify", "cartan", "--json", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("PASS cartan"));
    let report: Report = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(report.passed() && report.summary.total > 0);
    assert_eq!(cli(&["verify", "cartan", "--out", "x.json"]).0, 2);
}

#[test]
fn injected_faults_are_reported() {
    let (code, out, _) = cli(&["verify", "all", "--inject-fault", "Q4:1:2", "--json"]);
    assert_eq!(code, 1);
    let report: Report = serde_json::from_str(&out).unwrap();
    let failure = report.failures().next().expect("a failed check");
    let x = failure.counterexample.as_ref().expect("counterexample");
    assert!(x.variety.contains("Q4"), "{x:?}");
    assert!(!x.basis.is_empty());
    assert_eq!(cli(&["verify", "cartan", "--inject-fault", "Q4:9:0"]).0, 2);
    assert_eq!(cli(&["verify", "cartan", "--inject-fault", "Q4-1-2"]).0, 2);
}

#[test]
fn seed_variable_is_validated() {
    let bin = env!("CARGO_BIN_EXE_ck-steenrod");
    let status = |seed: &str| {
        std::process::Command::new(bin)
            .args(["verify", "corr"])
            .env(ck_steenrod::SEED_VAR, seed)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(status("not-a-number"), Some(2));
    assert_eq!(status("12"), Some(0));
}

#[test]
fn torsion_decisions() {
    let dir = tempfile::tempdir().unwrap();
    let diag = write(dir.path(), "diag.txt", &diagonal_spec(3));
    let (code, out, _) = cli(&["torsion", "3", &diag]);
    assert_eq!(code, 0);
    assert_eq!(out, "multiplicity 1; closure hypothesis not asserted; no conclusion\n");
    let (code, out, _) = cli(&["torsion", "3", &diag, "--assert-closure-vanishing"]);
    assert_eq!(code, 0);
    assert!(out.contains("= 1 mod 2"), "{out}");
    assert!(out.contains("conclusion: CH_1(X) contains a nonzero cycle"));

    let empty = write(dir.path(), "zero.txt", "# nothing here\n\n");
    let (_, out, _) = cli(&["torsion", "3", &empty, "--assert-closure-vanishing"]);
    assert_eq!(out, "multiplicity 0; criterion not applicable\n");
    let doubled = write(dir.path(), "twice.txt", &format!("{0}{0}", diagonal_spec(4)));
    let (_, out, _) = cli(&["torsion", "4", &doubled, "--assert-closure-vanishing"]);
    assert_eq!(out, "multiplicity 0; criterion not applicable\n");

    let small = write(dir.path(), "q2.txt", &diagonal_spec(2));
    assert_eq!(cli(&["torsion", "2", &small]).0, 2);
}

#[test]
fn malformed_specs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for (i, text) in ["1 h^0\n", "x h^0 l_0\n", "1 h^0 l_9\n", "1 2 3 4\n", "1 l_0 l_0 # ok\n1 a b\n"].iter().enumerate() {
        let p = write(dir.path(), &format!("bad{i}.txt"), text);
        let (code, _, err) = cli(&["torsion", "3", &p]);
        assert_eq!(code, 2, "{text:?}");
        assert!(err.starts_with("error: "), "{err}");
    }
    let bin = dir.path().join("bin.txt");
    std::fs::write(&bin, [0xff, 0xfe, 0x00]).unwrap();
    assert_eq!(cli(&["torsion", "3", bin.to_str().unwrap()]).0, 2);
    assert_eq!(cli(&["torsion", "3", dir.path().join("missing").to_str().unwrap()]).0, 2);
}

#[test]
fn spec_format_round_trips() {
    let q = Variety::shared(&SplitVariety::quadric(3)).unwrap();
    let delta = Correspondence::<F2>::diagonal(&q).unwrap();
    let parsed = parse_correspondence(3, &format_correspondence(&delta)).unwrap();
    assert_eq!(parsed.carrier(), delta.carrier());
    let qq = delta.carrier().variety();
    let i = qq.index_of_name("l_0*h^0").unwrap();
    let one = parse_correspondence(3, "3 l_0 h^0\n").unwrap();
    assert_eq!(one.carrier(), &ChowClass::basis(qq, i));
}
