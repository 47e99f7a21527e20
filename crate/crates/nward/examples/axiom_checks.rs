//! Check the four n-norm axioms (degeneracy, permutation invariance,
//! homogeneity, triangle subadditivity) on sampled tuples across a grid
//! of spaces and exponents, printing the worst residuals.

use nward::nnorm::{check_axioms, sample_tuples};
use nward::rng::Lcg;
use nward::space::{Exponent, SpaceConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = Lcg::new(7);
    println!(
        "{:<18} {:>12} {:>12} {:>12} {:>12}",
        "space", "permutation", "homogeneity", "triangle", "degeneracy"
    );
    for (d, n) in [(3usize, 2usize), (4, 3), (5, 2), (6, 4)] {
        for p in [Exponent::Finite(1.0), Exponent::Finite(2.0), Exponent::Infinity] {
            let cfg = SpaceConfig::new(d, n, p)?;
            // Entries in [-10, 10]: sample_tuples scales unit draws.
            let samples = sample_tuples(&cfg, 40, 10.0, &mut rng)?;
            let report = check_axioms(&samples, &cfg, 1e-9)?;
            println!(
                "d={d} n={n} p={p:<5}    {:>12.3e} {:>12.3e} {:>12.3e} {:>12.3e}  {}",
                report.permutation.worst_residual,
                report.homogeneity.worst_residual,
                report.triangle.worst_residual,
                report.degeneracy.worst_residual,
                if report.all_passed() { "ok" } else { "FAILED" }
            );
        }
    }
    Ok(())
}
