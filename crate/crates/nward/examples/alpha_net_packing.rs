//! Cover a point set with balls of radius alpha via greedy selection.
//! Clustered sets get small nets; a spreading set exhausts any ball
//! budget and yields a pairwise separated packing witness instead.

use nward::compactness::{
    ball_value, coverage_radius, greedy_alpha_net, AnchorPolicy, Ball, NetStatus,
};
use nward::sequence::{Family, SequenceSpec};
use nward::space::{Exponent, NVector, SpaceConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SpaceConfig::new(2, 2, Exponent::Finite(2.0))?;
    let policy = AnchorPolicy::CenterPlusBasis;
    let alpha = 0.25;
    let cap = 64;

    // Geometric decay clusters at the origin: a handful of balls suffice.
    let geometric = SequenceSpec::from_family(
        Family::Geometric { ratio: 0.5, amplitude: 1.0, axis: 0 },
        2,
        512,
    )?;
    let points = geometric.prefix(512)?;
    let net = greedy_alpha_net(&points, alpha, cap, policy, &cfg)?;
    println!(
        "geometric: {:?} with {} balls over {} points, coverage radius {:.4}",
        net.status,
        net.balls.len(),
        net.points,
        coverage_radius(&points, &net, &cfg)?
    );

    // A diagonal ramp keeps marching away: the budget runs out and the
    // selected centers certify the failure by pairwise separation.
    let diag: Vec<NVector> = (1..=100)
        .map(|k| NVector::new(vec![k as f64, k as f64]))
        .collect::<Result<_, _>>()?;
    let net = greedy_alpha_net(&diag, alpha, cap, policy, &cfg)?;
    println!(
        "diagonal ramp: {:?} with {} packing witnesses",
        net.status,
        net.packing_witness.len()
    );
    if net.status == NetStatus::PackingExceeded {
        let mut min_pair = f64::INFINITY;
        for (i, &a) in net.packing_witness.iter().enumerate() {
            let ball = Ball::with_policy(diag[a].clone(), alpha, policy, &cfg)?;
            for &b in net.packing_witness.iter().skip(i + 1) {
                min_pair = min_pair.min(ball_value(&ball, &diag[b], &cfg)?);
            }
        }
        println!("smallest pairwise witness value: {min_pair:.4} (alpha = {alpha})");
    }
    Ok(())
}
