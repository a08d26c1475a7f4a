//! The acceptance criteria, one printed line each.
//!
//! Built without the libtest harness so the lines always show; exits nonzero
//! if any criterion fails.

use std::sync::Arc;

use ck_steenrod::report::Report;
use ck_steenrod::suites::{self, SuiteConfig};
use ck_steenrod_core::adams::chern_class;
use ck_steenrod_core::exactalg::{Integer, F2};
use ck_steenrod_core::steenrod::{half_degree, sq1, sq1_lift_h_power, torsion_decision, Correspondence, TorsionVerdict};
use ck_steenrod_core::varieties::{tangent_class, ChowClass, SplitVariety, Variety};

type Criterion = Box<dyn Fn() -> (bool, String)>;

fn quadric(d: usize) -> Arc<Variety> {
    Variety::shared(&SplitVariety::quadric(d)).unwrap()
}

/// Passes when the suite ran at least one check under `anchors` (all of its
/// checks, if empty) and none of them failed.
fn suite_ok(name: &str, max_dim: Option<usize>, anchors: &[&str]) -> (bool, String) {
    let report: Report = suites::run_suite(name, &SuiteConfig::new(max_dim, 0)).expect("known suite");
    let selected: Vec<_> =
        report.checks.iter().filter(|c| anchors.is_empty() || anchors.contains(&c.anchor.as_str())).collect();
    let failed = selected.iter().filter(|c| !c.passed).count();
    let ok = !selected.is_empty() && failed == 0;
    let mut detail = format!("{} checks, {failed} failed", selected.len());
    if let Some(c) = selected.iter().find(|c| !c.passed) {
        detail.push_str(&format!("; first failure {}: {:?}", c.id, c.counterexample));
    }
    (ok, detail)
}

fn criterion_1() -> (bool, String) {
    let mut bad = Vec::new();
    for d in 1..=8usize {
        let q = quadric(d);
        let lhs = sq1(&ChowClass::<Integer>::h_monomial(&q, &[d - 1]).reduce_mod2());
        let rhs = ChowClass::<Integer>::h_monomial(&q, &[d]).reduce_mod2();
        let half = sq1_lift_h_power(&q, d - 1).and_then(|l| half_degree(&l));
        if lhs != rhs || half.ok() != Some(F2(true)) {
            bad.push(d);
        }
    }
    (bad.is_empty(), format!("d = 1..8, failing d: {bad:?}"))
}

fn criterion_2() -> (bool, String) {
    let mut bad = Vec::new();
    for d in 1..=8usize {
        let q = quadric(d);
        let h = ChowClass::<Integer>::h_monomial(&q, &[1]);
        let c1 = chern_class(1, &tangent_class(&q)).unwrap();
        // (d+2)·h holds in Ch; the integral class is d·h
        let mod2 = c1.reduce_mod2() == h.scale(&Integer::from(d + 2)).reduce_mod2();
        let integral = c1 == h.scale(&Integer::from(d));
        if !(mod2 && integral) {
            bad.push(d);
        }
    }
    (bad.is_empty(), format!("d = 1..8 (mod 2 against (d+2)h, integrally d·h), failing d: {bad:?}"))
}

fn criterion_12() -> (bool, String) {
    let q3 = quadric(3);
    let delta = Correspondence::<F2>::diagonal(&q3).unwrap();
    let zero = Correspondence::new(ChowClass::zero(delta.carrier().variety())).unwrap();
    let not_asserted = torsion_decision(3, &delta, false).unwrap();
    let asserted = torsion_decision(3, &delta, true).unwrap();
    let trivial = torsion_decision(3, &zero, true).unwrap();
    let small = torsion_decision(2, &Correspondence::<F2>::diagonal(&quadric(2)).unwrap(), true);
    let ok = matches!(not_asserted, TorsionVerdict::HypothesisNotAsserted { multiplicity: F2(true) })
        && asserted == TorsionVerdict::Certified { multiplicity: F2(true), witness: F2(true) }
        && matches!(trivial, TorsionVerdict::NotApplicable { multiplicity: F2(false) })
        && small.is_err();
    (
        ok,
        "decision procedure only; the anisotropic conclusions are not reproduced here, \
         the closure-vanishing hypothesis is caller input"
            .to_string(),
    )
}

fn main() {
    let criteria: Vec<(&str, Criterion)> = vec![
        ("quadric degree: Sq1(h^{d-1}) = h^d, half degree 1", Box::new(criterion_1)),
        ("tangent Chern class of Q_d", Box::new(criterion_2)),
        ("Cartan formula", Box::new(|| suite_ok("cartan", None, &[]))),
        ("pullback formula, dim <= 6", Box::new(|| suite_ok("pullback", Some(6), &[]))),
        ("Adams operations", Box::new(|| suite_ok("adams", None, &[]))),
        ("Riemann-Roch conservation, dim <= 6", Box::new(|| suite_ok("riemann-roch", Some(6), &[]))),
        ("filtration drop of τ_{-1}, dim <= 8", Box::new(|| suite_ok("descent", Some(8), &["τ_{-1}(F_p) ⊆ F_{p-1}"]))),
        ("commutation defect, dim <= 8", Box::new(|| suite_ok("commutes", Some(8), &[]))),
        ("vanishing chain τ∘τ, 𝔖1∘𝔖1, Sq1∘Sq1", Box::new(|| suite_ok("adem", Some(8), &[]))),
        ("descent 𝔖1∘φ = φ∘Sq1, dim <= 8", Box::new(|| suite_ok("descent", Some(8), &["𝔖1(φ(x)) = φ(Sq1(x))"]))),
        ("correspondences on Q2xQ2, Q3xQ3", Box::new(|| suite_ok("corr", None, &[]))),
        ("torsion criterion as a decision procedure", Box::new(criterion_12)),
    ];
    let mut failed = Vec::new();
    for (n, (name, check)) in criteria.iter().enumerate() {
        let (ok, detail) = check();
        println!("criterion {}: {} - {name} ({detail})", n + 1, if ok { "PASS" } else { "FAIL" });
        if !ok {
            failed.push(n + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
