//! Run the ten-section suite from the library API at a reduced horizon
//! and print the per-section tallies. Three cases are pinned
//! counterexamples and report expected-violation by design.

use nward::config::SuiteConfig;
use nward::suite::run_suite;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = SuiteConfig {
        horizon: 2000,
        s_list: vec![1, 2, 3],
        extraction_horizon: 256,
        ..SuiteConfig::default()
    };
    let report = run_suite(&config)?;
    for section in &report.sections {
        println!(
            "{:<38} {} pass, {} expected-violation, {} unexpected-violation, {} skipped",
            section.id,
            section.pass,
            section.expected_violations,
            section.unexpected_violations,
            section.skipped
        );
        for case in &section.cases {
            println!("    {:<32} {:?}: {}", case.id, case.status, case.detail);
        }
    }
    println!(
        "total: {} cases, {} pass, {} expected-violation, {} unexpected-violation, {} skipped",
        report.summary.cases,
        report.summary.pass,
        report.summary.expected_violations,
        report.summary.unexpected_violations,
        report.summary.skipped
    );
    std::process::exit(if report.has_unexpected_violations() { 1 } else { 0 });
}
