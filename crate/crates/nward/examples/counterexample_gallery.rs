//! Three separations that keep the property hierarchy honest:
//!   1. alternating:  shift-2 differences vanish, unit-shift ones do not;
//!   2. sqrt ramp:    unit-shift differences vanish, pair spread does not;
//!   3. squaring the ramp: the source has vanishing shift differences at
//!      every s, yet the image differences sit at exactly s.

use nward::classify::classify;
use nward::continuity::{test_s_ward, FunctionSpec};
use nward::sequence::{Family, SequenceSpec};
use nward::space::{Exponent, SpaceConfig};
use nward::witness::WitnessSet;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SpaceConfig::new(2, 2, Exponent::Finite(2.0))?;
    let witnesses = WitnessSet::standard_basis(&cfg)?;

    let alternating = SequenceSpec::from_family(
        Family::Alternating { amplitude: 1.0, axis: 0 },
        2,
        1000,
    )?;
    let report = classify(&alternating, &cfg, &witnesses, &[2], 1000, 1e-3, None)?;
    let quasi = report.property("quasi-cauchy", None).unwrap();
    let two = report.property("s-quasi-cauchy", Some(2)).unwrap();
    println!(
        "alternating: unit-shift {:?} (tail max {}), shift-2 {:?} (tail max {})",
        quasi.verdict.status, quasi.verdict.tail_max, two.verdict.status, two.verdict.tail_max
    );

    let ramp = SequenceSpec::from_family(Family::SqrtRamp { scale: 1.0, axis: 0 }, 2, 10_000)?;
    let report = classify(&ramp, &cfg, &witnesses, &[1], 10_000, 1e-2, None)?;
    let cauchy = report.property("cauchy", None).unwrap();
    let quasi = report.property("quasi-cauchy", None).unwrap();
    println!(
        "sqrt ramp:   pair spread {:?} (tail max {:.4}), unit-shift {:?} (tail max {:.2e})",
        cauchy.verdict.status, cauchy.verdict.tail_max, quasi.verdict.status, quasi.verdict.tail_max
    );

    let ramp_small = SequenceSpec::from_family(Family::SqrtRamp { scale: 1.0, axis: 0 }, 2, 1000)?;
    for s in [1usize, 2, 3] {
        let rep = test_s_ward(
            &FunctionSpec::CoordinateSquare,
            &[&ramp_small],
            s,
            &cfg,
            &witnesses,
            1000,
            1e-2,
        )?;
        println!(
            "square on ramp, shift {s}: {:?}, image tail max {:.9}",
            rep.verdict.status, rep.verdict.tail_max
        );
    }
    Ok(())
}
