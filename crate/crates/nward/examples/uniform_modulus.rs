//! Estimate a uniform continuity modulus on a box: for each input
//! distance delta, the largest observed image distance over sampled pairs.
//! A monotone table whose entries drop below a target epsilon certifies a
//! delta for that epsilon.

use nward::continuity::{estimate_uniform_modulus, FunctionSpec};
use nward::space::{Exponent, NVector, SpaceConfig};
use nward::witness::WitnessSet;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SpaceConfig::new(2, 2, Exponent::Finite(2.0))?;
    let witnesses = WitnessSet::standard_basis(&cfg)?;
    let lo = NVector::new(vec![-2.0, -2.0])?;
    let hi = NVector::new(vec![2.0, 2.0])?;

    let functions = vec![
        FunctionSpec::identity(),
        FunctionSpec::Scale { factor: -3.0 },
        FunctionSpec::LipschitzClip { bound: 1.5 },
        FunctionSpec::CoordinateSquare,
    ];
    for f in &functions {
        let table = estimate_uniform_modulus(f, &lo, &hi, 8, &cfg, &witnesses)?;
        println!("{}:", f.name());
        for row in &table.rows {
            println!("    delta {:>10.6}  sup image distance {:>12.6}", row.delta, row.sup_image_distance);
        }
        match table.delta_for(0.1) {
            Some(delta) => println!("    certified delta for eps 0.1: {delta}"),
            None => println!("    no sampled delta certifies eps 0.1"),
        }
        println!("    monotone: {}", table.is_monotone(1e-12));
    }
    Ok(())
}
