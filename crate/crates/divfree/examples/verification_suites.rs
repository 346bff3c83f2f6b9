//! Running the named verification suites programmatically and reading the
//! deterministic reports. The `divfree verify` subcommand fronts the same
//! registry.
//!
//! ```bash
//! cargo run -p divfree --example verification_suites
//! ```

use divfree::omega::Family;
use divfree::sample::SuiteConfig;
use divfree::suites::{run_suite, SUITE_NAMES};

fn main() -> divfree::Result<()> {
    println!("available suites: {}", SUITE_NAMES.join(", "));

    // a small config keeps this walkthrough quick; defaults reproduce the
    // standard sample counts
    let cfg = SuiteConfig {
        n: 2,
        seed: 12345,
        box_bound: 3,
        degree_bound: 3,
        samples: 50,
        families: vec![Family::Stilde, Family::Sbar],
        ..SuiteConfig::default()
    };

    let report = run_suite("sigma-solver", &cfg)?;
    print!("{}", report.render_text());

    let report = run_suite("divergence-sign-probe", &cfg)?;
    print!("{}", report.render_text());

    // reports are plain data: serialize, inspect, diff
    let report = run_suite("reductions", &cfg)?;
    println!(
        "reductions: {}/{} checks passed",
        report.passed,
        report.passed + report.failed
    );
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    println!(
        "first 300 bytes of the JSON report:\n{}",
        &json[..300.min(json.len())]
    );

    // determinism: the same config yields byte-identical reports
    let again = run_suite("reductions", &cfg)?;
    assert_eq!(
        serde_json::to_string(&report).unwrap(),
        serde_json::to_string(&again).unwrap()
    );
    println!("\nsame config, same seed: byte-identical report");
    Ok(())
}
