//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Every check is exact (the ground field is exact, so tolerances are zero);
//! the stated runtime budgets are asserted where given.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::{Duration, Instant};

use divfree::omega::Family;
use divfree::report::Report;
use divfree::sample::SuiteConfig;
use divfree::suites::run_suite;

fn acceptance_config(seed_salt: u64) -> SuiteConfig {
    SuiteConfig {
        n: 3,
        seed: 0xacce_5500 ^ seed_salt,
        box_bound: 4,
        degree_bound: 4,
        samples: 500,
        families: vec![Family::W, Family::Stilde, Family::Sbar],
        coeff_num_bound: 20,
        coeff_den_bound: 10,
        n_max: 6,
    }
}

fn run_timed(suite: &str, cfg: &SuiteConfig) -> (Report, Duration) {
    let start = Instant::now();
    let report = run_suite(suite, cfg).expect("suite runs");
    (report, start.elapsed())
}

fn verdict(criterion: &str, description: &str, pass: bool, elapsed: Duration) {
    let status = if pass { "PASS" } else { "FAIL" };
    println!(
        "criterion {criterion}: {status} — {description} ({:.2}s)",
        elapsed.as_secs_f64()
    );
}

fn failures(report: &Report) -> String {
    report
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{}: expected {}, got {}", c.name, c.expected, c.got))
        .collect::<Vec<_>>()
        .join("\n")
}

fn subset_pass(report: &Report, prefixes: &[&str]) -> bool {
    let mut seen = false;
    for c in &report.checks {
        if prefixes.iter().any(|p| c.name.starts_with(p)) {
            seen = true;
            if !c.pass {
                return false;
            }
        }
    }
    seen
}

#[test]
fn criterion_01_module_axioms() {
    // [u,v].f = u.(v.f) - v.(u.f) exactly: 500 random triples per family,
    // n in {2,3,4}, exponent box [-4,4]^n, deg f <= 4; under 60 s.
    let cfg = acceptance_config(1);
    let (report, elapsed) = run_timed("module-axioms", &cfg);
    let pass = report.all_passed() && elapsed < Duration::from_secs(60);
    verdict(
        "1",
        "module axioms, 500 exact triples per family",
        pass,
        elapsed,
    );
    assert!(report.all_passed(), "{}", failures(&report));
    assert!(
        elapsed < Duration::from_secs(60),
        "budget exceeded: {elapsed:?}"
    );
}

#[test]
fn criterion_02_d_basis_closed_form_reproduction() {
    // generator recursion equals the d-basis closed form on [-5,5]^2 minus
    // the origin, for 5 random parameter tuples; under 10 s.
    let cfg = acceptance_config(2);
    let (report, elapsed) = run_timed("closed-forms", &cfg);
    let pass = subset_pass(&report, &["closed-forms/d-basis-recursion"])
        && elapsed < Duration::from_secs(10);
    verdict(
        "2",
        "d-basis closed form == bracket recursion",
        pass,
        elapsed,
    );
    assert!(
        subset_pass(&report, &["closed-forms/d-basis-recursion"]),
        "{}",
        failures(&report)
    );
    assert!(
        elapsed < Duration::from_secs(10),
        "budget exceeded: {elapsed:?}"
    );
}

#[test]
fn criterion_03_l_basis_closed_form_reproduction() {
    // generator recursion equals the l-basis closed form on [-5,5]^2 minus
    // the excluded grades, 5 random tuples, with the six generator values
    // checked verbatim; under 10 s.
    let cfg = acceptance_config(3);
    let (report, elapsed) = run_timed("closed-forms", &cfg);
    let subset = [
        "closed-forms/l-basis-recursion",
        "closed-forms/l-basis-generators",
    ];
    let pass = subset_pass(&report, &subset) && elapsed < Duration::from_secs(10);
    verdict(
        "3",
        "l-basis closed form == bracket recursion + generators",
        pass,
        elapsed,
    );
    assert!(subset_pass(&report, &subset), "{}", failures(&report));
    assert!(
        elapsed < Duration::from_secs(10),
        "budget exceeded: {elapsed:?}"
    );
}

#[test]
fn criterion_04_embedding_homomorphisms() {
    // the embedding and the slice isomorphisms are Lie homomorphisms,
    // exhaustively on basis pairs with indices in [-4,4]; images land in the
    // divergence-zero algebra and its derived subalgebra by membership.
    let cfg = acceptance_config(4);
    let (report, elapsed) = run_timed("virasoro-like", &cfg);
    let subset = [
        "virasoro-like/phi-homomorphism-exhaustive",
        "virasoro-like/phi_ij-homomorphism",
        "virasoro-like/phi-image-in-divergence-zero",
        "virasoro-like/phi-prime-image-in-derived",
    ];
    let pass = subset_pass(&report, &subset);
    verdict(
        "4",
        "embedding homomorphism checks, exhaustive box 4",
        pass,
        elapsed,
    );
    assert!(pass, "{}", failures(&report));
}

#[test]
fn criterion_05_sigma_invariant_solver() {
    // the solution space of the twisted-shift equation at total degree <= d
    // has dimension d+1 and equals the span of powers of x_1 + x_2, d = 0..6.
    let cfg = acceptance_config(5);
    let (report, elapsed) = run_timed("sigma-solver", &cfg);
    let pass = report.all_passed();
    verdict(
        "5",
        "shift-invariant solution spaces, degrees 0..6",
        pass,
        elapsed,
    );
    assert!(pass, "{}", failures(&report));
}

#[test]
fn criterion_06_simple_submodule_reductions() {
    // 50 random nonzero starts (deg <= 4) per family: the reduction trace
    // terminates and replays exactly to the ideal generators; under 30 s.
    let cfg = acceptance_config(6);
    let (report, elapsed) = run_timed("reductions", &cfg);
    let pass = report.all_passed() && elapsed < Duration::from_secs(30);
    verdict(
        "6",
        "replayable submodule reductions, 50 per family",
        pass,
        elapsed,
    );
    assert!(report.all_passed(), "{}", failures(&report));
    assert!(
        elapsed < Duration::from_secs(30),
        "budget exceeded: {elapsed:?}"
    );
}

#[test]
fn criterion_07_restriction_theorems() {
    // the Witt-family restriction matches the divergence-zero action with
    // alpha = 0 independently of a, and the classical action with
    // kappa = -(a+1), on all basis elements in box [-4,4]^n applied to
    // monomials of degree <= 3, three random a values, n in {2,3}.
    let cfg = acceptance_config(7);
    let (report, elapsed) = run_timed("restrictions", &cfg);
    let pass = report.all_passed();
    verdict(
        "7",
        "restriction comparisons over the full box",
        pass,
        elapsed,
    );
    assert!(pass, "{}", failures(&report));
}

#[test]
fn criterion_08_isomorphism_invariants() {
    // parameter extraction round-trips on 200 random specs per family, and
    // flipping any single parameter breaks the isomorphism.
    let cfg = acceptance_config(8);
    let (report, elapsed) = run_timed("isomorphism", &cfg);
    let pass = report.all_passed();
    verdict(
        "8",
        "invariant tuples: round-trips and single flips",
        pass,
        elapsed,
    );
    assert!(pass, "{}", failures(&report));
}

#[test]
fn criterion_09_negative_controls() {
    // 50 perturbations of each family's generator assignment fail the
    // consistency check; 20 perturbed ideals per family fail closure.
    let cfg = acceptance_config(9);
    let (report, elapsed) = run_timed("negative-controls", &cfg);
    let pass = report.all_passed();
    verdict(
        "9",
        "perturbed assignments and ideals are rejected",
        pass,
        elapsed,
    );
    assert!(pass, "{}", failures(&report));
}

#[test]
fn criterion_10_generation_identities() {
    // the bracket identities generating the classical family hold exactly
    // for all applicable grades in [-3,3], n in {3,4}, including the corner
    // identity.
    let cfg = acceptance_config(10);
    let (report, elapsed) = run_timed("generation-identities", &cfg);
    let pass = report.all_passed();
    verdict(
        "10",
        "generation identities, exhaustive box 3",
        pass,
        elapsed,
    );
    assert!(pass, "{}", failures(&report));
}
