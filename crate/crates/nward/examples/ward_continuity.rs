//! Probe functions for difference preservation: does f map sequences
//! with vanishing shift-s differences to sequences with the same
//! property? Members whose source differences do not vanish are excluded
//! rather than counted against the function.

use nward::continuity::{test_s_ward, test_sequential_continuity, FunctionSpec};
use nward::sequence::{Family, SequenceSpec};
use nward::space::{Exponent, NVector, SpaceConfig};
use nward::witness::WitnessSet;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SpaceConfig::new(2, 2, Exponent::Finite(2.0))?;
    let witnesses = WitnessSet::standard_basis(&cfg)?;
    let horizon = 4000;

    let corpus = vec![
        SequenceSpec::from_family(Family::Alternating { amplitude: 1.0, axis: 0 }, 2, horizon)?,
        SequenceSpec::from_family(Family::SqrtRamp { scale: 1.0, axis: 0 }, 2, horizon)?,
        SequenceSpec::from_family(
            Family::Geometric { ratio: 0.5, amplitude: 1.0, axis: 0 },
            2,
            horizon,
        )?,
        SequenceSpec::from_family(
            Family::RandomWalkDamped { seed: 24301, scale: 1.0, damping: 1.5 },
            2,
            horizon,
        )?,
    ];
    let refs: Vec<&SequenceSpec> = corpus.iter().collect();

    let functions = vec![
        FunctionSpec::identity(),
        FunctionSpec::Scale { factor: 0.5 },
        FunctionSpec::LipschitzClip { bound: 1.5 },
        FunctionSpec::CoordinateSquare,
    ];

    for f in &functions {
        let rep = test_s_ward(&f.clone(), &refs, 2, &cfg, &witnesses, horizon, 0.1)?;
        println!("{:<20} shift-2 image differences: {:?}", f.name(), rep.verdict.status);
        for m in &rep.members {
            if let Some(reason) = &m.exclusion {
                println!("    {:<24} excluded ({reason})", m.member);
            } else if let Some(v) = &m.image_verdict {
                println!("    {:<24} {:?}, image tail max {:.3e}", m.member, v.status, v.tail_max);
            }
        }
    }

    // Pointwise probes along shrinking approach paths at a base point.
    let zeta = NVector::new(vec![1.0, 1.0])?;
    for f in &functions {
        let rep = test_sequential_continuity(f, &zeta, &cfg, &witnesses, horizon, 0.1)?;
        println!("{:<20} approach paths at (1,1): {:?}", f.name(), rep.verdict.status);
    }
    Ok(())
}
