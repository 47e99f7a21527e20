//! Classify every catalog sequence at a finite horizon: pair spread
//! (Cauchy-style), unit-shift differences, and shift-s differences, all
//! reduced over a witness set of direction tuples.

use nward::classify::classify;
use nward::config::SuiteConfig;
use nward::sequence::sequence_from_table;
use nward::space::{Exponent, SpaceConfig};
use nward::witness::WitnessSet;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SpaceConfig::new(2, 2, Exponent::Finite(2.0))?;
    let witnesses = WitnessSet::standard_basis(&cfg)?;
    let horizon = 10_000;
    let tau = 0.1;
    let shifts = [1usize, 2, 3];

    println!("horizon {horizon}, tolerance {tau}, witnesses: {}", witnesses.label());
    for table in &SuiteConfig::default().sequences {
        let seq = sequence_from_table(table, cfg.dimension, horizon)?;
        let report = classify(&seq, &cfg, &witnesses, &shifts, horizon, tau, None)?;
        print!("{:<28}", seq.name());
        for p in &report.properties {
            let label = match p.s {
                Some(s) => format!("shift-{s}"),
                None => p.property.clone(),
            };
            print!(" {label}:{:?}", p.verdict.status);
        }
        println!();
    }
    Ok(())
}
