//! Extract a subsequence with vanishing shift differences by nested
//! covering balls of shrinking radius, or report the exact stage where
//! no ball holds enough points. The returned envelope bounds the
//! shift-difference values along the extracted indices by 1/(r+1).

use nward::compactness::{extract_s_quasi_cauchy_subsequence, ExtractionOutcome};
use nward::sequence::{Family, SequenceSpec};
use nward::space::{Exponent, NVector, SpaceConfig};
use nward::witness::WitnessSet;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SpaceConfig::new(2, 2, Exponent::Finite(2.0))?;
    let witnesses = WitnessSet::standard_basis(&cfg)?;

    // A convergent damped walk concentrates, so every stage finds a rich
    // ball and the picks settle near the limit.
    let walk = SequenceSpec::from_family(
        Family::RandomWalkDamped { seed: 24301, scale: 1.0, damping: 1.5 },
        2,
        4096,
    )?;
    match extract_s_quasi_cauchy_subsequence(&walk, 1, &cfg, &witnesses, 4096)? {
        ExtractionOutcome::Extracted { indices, envelope, stages } => {
            println!("damped walk: extracted {} indices over {} stages", indices.len(), stages.len());
            println!("    indices: {indices:?}");
            for (r, value) in envelope.iter().enumerate() {
                println!("    envelope[{r}] = {value:.6} <= {:.6}", 1.0 / (r as f64 + 1.0));
            }
        }
        ExtractionOutcome::Failed { .. } => println!("damped walk: extraction failed unexpectedly"),
    }

    // A linear ramp never revisits any ball: the very first stage fails.
    let ramp_points: Vec<NVector> = (1..=512)
        .map(|k| NVector::new(vec![k as f64, 0.0]))
        .collect::<Result<_, _>>()?;
    let ramp = SequenceSpec::explicit(ramp_points)?;
    match extract_s_quasi_cauchy_subsequence(&ramp, 1, &cfg, &witnesses, 512)? {
        ExtractionOutcome::Extracted { .. } => println!("linear ramp: extracted unexpectedly"),
        ExtractionOutcome::Failed { stage, alpha, best_ball_size, needed, reason } => {
            println!(
                "linear ramp: failed at stage {stage} (alpha {alpha}): best ball holds \
                 {best_ball_size} of the {needed} needed points ({reason})"
            );
        }
    }
    Ok(())
}
