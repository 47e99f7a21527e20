//! Uniform limits preserve difference smallness: approximate a limit
//! function by a stage chain, test the limit's image differences on a
//! bounded corpus, and verify the three-term bound that justifies the
//! argument at the final stage.

use nward::continuity::{test_uniform_limit, FunctionSpec};
use nward::sequence::{Family, SequenceSpec};
use nward::space::{Exponent, SpaceConfig};
use nward::witness::WitnessSet;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SpaceConfig::new(2, 2, Exponent::Finite(2.0))?;
    let witnesses = WitnessSet::standard_basis(&cfg)?;
    let horizon = 4000;

    let corpus = vec![
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

    // Stage j clips then inflates by 1 + 1/j; the inflation dies off and
    // the chain converges uniformly to the bare clip.
    let stages: Vec<FunctionSpec> = (1..=8)
        .map(|j| FunctionSpec::Compose {
            stages: vec![
                FunctionSpec::LipschitzClip { bound: 1.5 },
                FunctionSpec::Scale { factor: 1.0 + 1.0 / j as f64 },
            ],
        })
        .collect();
    let limit = FunctionSpec::LipschitzClip { bound: 1.5 };

    let rep = test_uniform_limit(&stages, &limit, &refs, 1, &cfg, &witnesses, horizon, 0.1)?;
    println!("limit function: {}", limit.name());
    println!("verdict for the limit's image differences: {:?}", rep.verdict.status);
    for m in &rep.members {
        if let Some(split) = &m.epsilon_split {
            println!(
                "    {:<24} image diff {:.3e} <= {:.3e} + {:.3e} + {:.3e} (residual {:.1e})",
                m.member,
                split.image_difference,
                split.limit_gap_at_shift,
                split.approximant_difference,
                split.limit_gap_at_base,
                split.bound_residual
            );
        }
    }
    Ok(())
}
