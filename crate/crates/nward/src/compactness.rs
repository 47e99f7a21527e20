//! Covering balls, greedy nets, packing witnesses, and extraction of
//! small-difference subsequences.
//!
//! A covering ball at center a with anchor points a_1, ..., a_{n-1} and
//! radius alpha contains x when the norm of the joint displacement tuple
//! (a - x, a_1 - x, ..., a_{n-1} - x) stays below alpha. When the anchors
//! sit at center + mu for fixed offsets mu, row subtraction shows the value
//! equals the norm of (a - x, mu_1, ..., mu_{n-1}) exactly, so these balls
//! behave like witness-reduced distance balls around the center.
//!
//! [`greedy_alpha_net`] covers a finite point set with such balls greedily
//! and, when a ball budget is exceeded, returns the selected centers as a
//! pairwise-separated packing witness. [`extract_s_quasi_cauchy_subsequence`]
//! runs a nested-ball refinement with shrinking radii 1/(2k) to extract a
//! subsequence whose shift differences obey the envelope 1/k by
//! construction, or reports the stage at which no ball is rich enough.

use rayon::prelude::*;
use serde::Serialize;

use crate::continuity::{transport_witnesses, FunctionSpec};
use crate::error::{Error, Result};
use crate::nnorm::{norm_core, nnorm_with_witness};
use crate::sequence::SequenceSpec;
use crate::space::{NVector, SpaceConfig, VectorTuple, MAX_ORDER};
use crate::witness::WitnessSet;

/// How anchor points are derived from a ball center.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnchorPolicy {
    /// Anchors at center + e_1, ..., center + e_{n-1}. By row subtraction
    /// the ball value reduces to the norm of (center - x, e_1, ...,
    /// e_{n-1}), independent of the center.
    CenterPlusBasis,
    /// Anchors fixed at e_1, ..., e_{n-1} regardless of center.
    FixedBasis,
}

/// A covering ball.
#[derive(Clone, Debug, Serialize)]
pub struct Ball {
    pub center: NVector,
    pub anchors: Vec<NVector>,
    pub radius: f64,
}

impl Ball {
    /// Builds a ball under the given anchor policy.
    pub fn with_policy(
        center: NVector,
        radius: f64,
        policy: AnchorPolicy,
        cfg: &SpaceConfig,
    ) -> Result<Self> {
        cfg.validate()?;
        cfg.check_vector(&center)?;
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "ball radius must be positive and finite, got {radius}"
            )));
        }
        let anchors: Result<Vec<NVector>> = (0..cfg.order - 1)
            .map(|axis| {
                let e = NVector::basis(cfg.dimension, axis)?;
                Ok(match policy {
                    AnchorPolicy::CenterPlusBasis => &center + &e,
                    AnchorPolicy::FixedBasis => e,
                })
            })
            .collect();
        Ok(Self {
            center,
            anchors: anchors?,
            radius,
        })
    }
}

/// Joint displacement value of a ball at x: the norm of
/// (center - x, anchor_1 - x, ..., anchor_{n-1} - x).
pub fn ball_value(ball: &Ball, x: &NVector, cfg: &SpaceConfig) -> Result<f64> {
    cfg.validate()?;
    cfg.check_vector(x)?;
    cfg.check_vector(&ball.center)?;
    if ball.anchors.len() != cfg.order - 1 {
        return Err(Error::TupleLength {
            expected: cfg.order - 1,
            got: ball.anchors.len(),
        });
    }
    let mut rows = Vec::with_capacity(cfg.order);
    rows.push(&ball.center - x);
    for a in &ball.anchors {
        rows.push(a - x);
    }
    crate::nnorm::nnorm(&VectorTuple::new(rows)?, cfg)
}

/// Strict membership test: ball value below the radius.
pub fn ball_contains(ball: &Ball, x: &NVector, cfg: &SpaceConfig) -> Result<bool> {
    Ok(ball_value(ball, x, cfg)? < ball.radius)
}

/// Reusable rows for the shifted tuple (center - x, anchor_i - x), so net
/// sweeps evaluate balls without allocating. Same arithmetic as
/// `ball_value`; validation is hoisted to the sweep entry points.
struct BallProbe {
    rows: Vec<NVector>,
}

impl BallProbe {
    fn new(cfg: &SpaceConfig) -> Self {
        Self {
            rows: vec![NVector::zeros(cfg.dimension); cfg.order],
        }
    }

    fn value(&mut self, ball: &Ball, x: &NVector, cfg: &SpaceConfig) -> f64 {
        NVector::sub_into(&ball.center, x, &mut self.rows[0]);
        for (row, a) in self.rows[1..].iter_mut().zip(&ball.anchors) {
            NVector::sub_into(a, x, row);
        }
        let mut refs: [&NVector; MAX_ORDER] = [&self.rows[0]; MAX_ORDER];
        for (slot, row) in refs[..cfg.order].iter_mut().zip(&self.rows) {
            *slot = row;
        }
        norm_core(&refs[..cfg.order], cfg)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NetStatus {
    NetFound,
    PackingExceeded,
}

/// One selected ball with the index of its center point.
#[derive(Clone, Debug, Serialize)]
pub struct NetBall {
    pub center_index: usize,
    pub covered: usize,
}

/// Outcome of a greedy covering attempt.
#[derive(Clone, Debug, Serialize)]
pub struct NetResult {
    pub status: NetStatus,
    pub alpha: f64,
    pub policy: AnchorPolicy,
    pub balls: Vec<NetBall>,
    pub points: usize,
    pub covered: usize,
    /// Selected center indices. On PackingExceeded these points are
    /// pairwise at ball value >= alpha from each other, so no smaller
    /// net at this radius was possible under the same policy.
    pub packing_witness: Vec<usize>,
}

impl NetResult {
    /// Reconstructs the ball for a selected center.
    pub fn ball_at(
        &self,
        points: &[NVector],
        which: usize,
        cfg: &SpaceConfig,
    ) -> Result<Ball> {
        let idx = self.balls[which].center_index;
        Ball::with_policy(points[idx].clone(), self.alpha, self.policy, cfg)
    }
}

/// Greedily covers `points` with balls of radius `alpha`: repeatedly center
/// a ball at the lowest-index uncovered point and mark everything it
/// contains. Stops early with [`NetStatus::PackingExceeded`] once more than
/// `cap` balls would be needed; the selected centers plus the next
/// uncovered point then form a separated packing witness.
pub fn greedy_alpha_net(
    points: &[NVector],
    alpha: f64,
    cap: usize,
    policy: AnchorPolicy,
    cfg: &SpaceConfig,
) -> Result<NetResult> {
    cfg.validate()?;
    if points.is_empty() {
        return Err(Error::InvalidParameter("empty point set".into()));
    }
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "alpha must be positive and finite, got {alpha}"
        )));
    }
    if cap == 0 {
        return Err(Error::InvalidParameter("ball budget must be positive".into()));
    }
    for p in points {
        cfg.check_vector(p)?;
    }
    let mut covered = vec![false; points.len()];
    let mut balls = Vec::new();
    let mut centers = Vec::new();
    let mut covered_count = 0usize;
    loop {
        let next = match covered.iter().position(|&c| !c) {
            None => {
                return Ok(NetResult {
                    status: NetStatus::NetFound,
                    alpha,
                    policy,
                    balls,
                    points: points.len(),
                    covered: covered_count,
                    packing_witness: centers,
                });
            }
            Some(i) => i,
        };
        if balls.len() == cap {
            centers.push(next);
            return Ok(NetResult {
                status: NetStatus::PackingExceeded,
                alpha,
                policy,
                balls,
                points: points.len(),
                covered: covered_count,
                packing_witness: centers,
            });
        }
        let ball = Ball::with_policy(points[next].clone(), alpha, policy, cfg)?;
        let members: Vec<usize> = (0..points.len())
            .into_par_iter()
            .filter(|&j| !covered[j])
            .map_init(
                || BallProbe::new(cfg),
                |probe, j| (j, probe.value(&ball, &points[j], cfg)),
            )
            .filter_map(|(j, v)| (v < ball.radius).then_some(j))
            .collect();
        debug_assert!(members.contains(&next), "a ball must cover its center");
        for &j in &members {
            covered[j] = true;
        }
        covered_count += members.len();
        balls.push(NetBall {
            center_index: next,
            covered: members.len(),
        });
        centers.push(next);
    }
}

/// Per-stage record of a nested-ball extraction.
#[derive(Clone, Debug, Serialize)]
pub struct ExtractionStage {
    pub stage: usize,
    pub alpha: f64,
    pub center_index: usize,
    pub ball_size: usize,
    pub picked_index: usize,
}

/// Result of a subsequence extraction attempt.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ExtractionOutcome {
    Extracted {
        /// Strictly increasing 1-based indices into the source sequence.
        indices: Vec<usize>,
        /// Shift-s reduced differences of the extracted subsequence; entry
        /// r is bounded by 1/r by construction.
        envelope: Vec<f64>,
        stages: Vec<ExtractionStage>,
    },
    Failed {
        stage: usize,
        alpha: f64,
        best_ball_size: usize,
        needed: usize,
        reason: String,
    },
}

impl ExtractionOutcome {
    pub fn succeeded(&self) -> bool {
        matches!(self, ExtractionOutcome::Extracted { .. })
    }
}

/// Membership value between two stored points: the maximum over witness
/// tuples of the reduced displacement norm. Using the full witness set
/// (rather than one anchor tuple) means containment constrains every
/// measured direction at once. The probe buffer is caller-provided so the
/// quadratic stage scans never allocate.
fn pair_value(
    a: &NVector,
    b: &NVector,
    witnesses: &WitnessSet,
    cfg: &SpaceConfig,
    probe: &mut NVector,
) -> Result<f64> {
    NVector::sub_into(a, b, probe);
    let mut best = 0.0f64;
    for tuple in witnesses.tuples() {
        best = best.max(nnorm_with_witness(probe, tuple, cfg)?);
    }
    Ok(best)
}

/// Extracts a subsequence whose shift-s differences shrink like 1/k.
///
/// Stage k (k = 1..=floor(log2 horizon)) scans the surviving index set for
/// the ball of radius 1/(2k) containing the most survivors, requires at
/// least s + 1 members, picks the smallest member index that extends the
/// chosen subsequence, and recurses into the ball. Nesting plus the
/// triangle inequality force every later pick within 1/k of a stage-k
/// pick, which is the returned envelope guarantee.
pub fn extract_s_quasi_cauchy_subsequence(
    seq: &SequenceSpec,
    s: usize,
    cfg: &SpaceConfig,
    witnesses: &WitnessSet,
    horizon: usize,
) -> Result<ExtractionOutcome> {
    cfg.validate()?;
    if s < 1 {
        return Err(Error::InvalidParameter("shift s must be at least 1".into()));
    }
    if seq.dimension() != cfg.dimension {
        return Err(Error::DimensionMismatch {
            expected: cfg.dimension,
            got: seq.dimension(),
        });
    }
    if horizon > seq.horizon() {
        return Err(Error::BeyondHorizon {
            index: horizon,
            horizon: seq.horizon(),
        });
    }
    if horizon < 16 {
        return Err(Error::Precondition(format!(
            "horizon {horizon} too short for staged extraction"
        )));
    }
    let stages_total = horizon.ilog2() as usize;
    if stages_total <= s {
        return Err(Error::Precondition(format!(
            "floor(log2 {horizon}) = {stages_total} stages cannot exhibit shift {s}"
        )));
    }
    let points = seq.prefix(horizon)?;
    extract_from_points(&points, s, cfg, witnesses, stages_total)
}

fn extract_from_points(
    points: &[NVector],
    s: usize,
    cfg: &SpaceConfig,
    witnesses: &WitnessSet,
    stages_total: usize,
) -> Result<ExtractionOutcome> {
    // Survivors are 0-based positions into `points`.
    let mut survivors: Vec<usize> = (0..points.len()).collect();
    let mut stages = Vec::with_capacity(stages_total);
    let mut indices: Vec<usize> = Vec::with_capacity(stages_total);
    let mut last_pick: Option<usize> = None;

    let dim = cfg.dimension;
    for stage in 1..=stages_total {
        let alpha = 1.0 / (2.0 * stage as f64);
        // Best ball: the survivor center containing the most survivors.
        // Ties prefer the lowest center index.
        let scored: Result<Vec<(usize, usize)>> = survivors
            .par_iter()
            .map_init(
                || NVector::zeros(dim),
                |probe, &c| {
                    let mut count = 0usize;
                    for &j in &survivors {
                        if pair_value(&points[c], &points[j], witnesses, cfg, probe)? < alpha {
                            count += 1;
                        }
                    }
                    Ok((c, count))
                },
            )
            .collect();
        let scored = scored?;
        let (center, best_size) = scored
            .iter()
            .copied()
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("survivor set is nonempty");
        if best_size < s + 1 {
            return Ok(ExtractionOutcome::Failed {
                stage,
                alpha,
                best_ball_size: best_size,
                needed: s + 1,
                reason: format!(
                    "largest radius-{alpha} neighborhood holds {best_size} survivors, \
                     fewer than s + 1 = {}",
                    s + 1
                ),
            });
        }
        let members: Result<Vec<usize>> = survivors
            .par_iter()
            .map_init(
                || NVector::zeros(dim),
                |probe, &j| {
                    Ok((
                        j,
                        pair_value(&points[center], &points[j], witnesses, cfg, probe)? < alpha,
                    ))
                },
            )
            .filter_map(|r: Result<(usize, bool)>| match r {
                Ok((j, true)) => Some(Ok(j)),
                Ok((_, false)) => None,
                Err(e) => Some(Err(e)),
            })
            .collect();
        let members = members?;
        let pick = members
            .iter()
            .copied()
            .find(|&j| last_pick.map_or(true, |p| j > p));
        let pick = match pick {
            Some(p) => p,
            None => {
                return Ok(ExtractionOutcome::Failed {
                    stage,
                    alpha,
                    best_ball_size: members.len(),
                    needed: s + 1,
                    reason: format!(
                        "no member of the stage-{stage} ball extends the index chain past {}",
                        last_pick.map_or(0, |p| p + 1)
                    ),
                });
            }
        };
        stages.push(ExtractionStage {
            stage,
            alpha,
            center_index: center + 1,
            ball_size: members.len(),
            picked_index: pick + 1,
        });
        indices.push(pick + 1);
        last_pick = Some(pick);
        survivors = members;
    }

    // Envelope: shift-s reduced differences of the extracted points.
    let mut envelope = Vec::new();
    for r in 0..indices.len().saturating_sub(s) {
        let a = &points[indices[r + s] - 1];
        let b = &points[indices[r] - 1];
        let mut best = 0.0f64;
        for tuple in witnesses.tuples() {
            best = best.max(nnorm_with_witness(&(a - b), tuple, cfg)?);
        }
        envelope.push(best);
    }
    Ok(ExtractionOutcome::Extracted {
        indices,
        envelope,
        stages,
    })
}

/// Joint report for extraction on a source sequence and on its image.
#[derive(Clone, Debug, Serialize)]
pub struct CompactImageReport {
    pub function: String,
    pub sequence: String,
    pub s: usize,
    #[serde(rename = "H")]
    pub horizon: usize,
    pub source: ExtractionOutcome,
    pub image: Option<ExtractionOutcome>,
    pub excluded_witness_tuples: Vec<usize>,
    pub passed: bool,
}

/// Probes preservation of extraction under a function: the source sequence
/// must admit a small-difference subsequence, and so must its image (with
/// transported witnesses). The image step is skipped when the source
/// already fails.
pub fn test_compact_image(
    f: &FunctionSpec,
    seq: &SequenceSpec,
    s: usize,
    cfg: &SpaceConfig,
    witnesses: &WitnessSet,
    horizon: usize,
) -> Result<CompactImageReport> {
    cfg.validate()?;
    f.validate(cfg.dimension)?;
    let source = extract_s_quasi_cauchy_subsequence(seq, s, cfg, witnesses, horizon)?;
    if !source.succeeded() {
        return Ok(CompactImageReport {
            function: f.name(),
            sequence: seq.name(),
            s,
            horizon,
            source,
            image: None,
            excluded_witness_tuples: Vec::new(),
            passed: false,
        });
    }
    let transported = transport_witnesses(f, witnesses, cfg)?;
    let points = seq.prefix(horizon)?;
    let images: Result<Vec<NVector>> = points.iter().map(|x| f.apply(x)).collect();
    let stages_total = horizon.ilog2() as usize;
    let image = extract_from_points(&images?, s, cfg, &transported.set, stages_total)?;
    let passed = image.succeeded();
    Ok(CompactImageReport {
        function: f.name(),
        sequence: seq.name(),
        s,
        horizon,
        source,
        image: Some(image),
        excluded_witness_tuples: transported.excluded,
        passed,
    })
}

/// Reduced distance from a point to the nearest selected net center;
/// exhaustive coverage means every point is within alpha of some center
/// under the ball's own value function.
pub fn coverage_radius(
    points: &[NVector],
    net: &NetResult,
    cfg: &SpaceConfig,
) -> Result<f64> {
    cfg.validate()?;
    for p in points {
        cfg.check_vector(p)?;
    }
    let balls: Result<Vec<Ball>> = net
        .balls
        .iter()
        .map(|b| Ball::with_policy(points[b.center_index].clone(), net.alpha, net.policy, cfg))
        .collect();
    let balls = balls?;
    let mut probe = BallProbe::new(cfg);
    let mut worst = 0.0f64;
    for x in points {
        let mut best = f64::INFINITY;
        for ball in &balls {
            best = best.min(probe.value(ball, x, cfg));
        }
        worst = worst.max(best);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::catalog_sequence;
    use crate::space::Exponent;

    fn cfg() -> SpaceConfig {
        SpaceConfig::new(2, 2, Exponent::Finite(2.0)).unwrap()
    }

    fn witnesses() -> WitnessSet {
        WitnessSet::standard_basis(&cfg()).unwrap()
    }

    fn v(a: f64, b: f64) -> NVector {
        NVector::new(vec![a, b]).unwrap()
    }

    #[test]
    fn ball_value_reduces_via_row_subtraction() {
        // Anchors at center + e_i: the joint value must equal the norm of
        // (center - x, e_i) exactly, for every x.
        let c = cfg();
        let center = v(3.0, -2.0);
        let ball = Ball::with_policy(center.clone(), 1.0, AnchorPolicy::CenterPlusBasis, &c)
            .unwrap();
        for x in [v(0.0, 0.0), v(2.5, -2.5), v(3.0, 4.0)] {
            let joint = ball_value(&ball, &x, &c).unwrap();
            let reduced = nnorm_with_witness(
                &(&center - &x),
                &[NVector::basis(2, 0).unwrap()],
                &c,
            )
            .unwrap();
            assert!((joint - reduced).abs() <= 1e-12 * (1.0 + reduced));
        }
    }

    #[test]
    fn ball_example_evaluates_to_unit_value() {
        let c = cfg();
        let ball = Ball {
            center: v(0.0, 0.0),
            anchors: vec![v(1.0, 0.0)],
            radius: 1.5,
        };
        let x = v(0.0, 1.0);
        // Tuple ((0,-1), (1,-1)) has determinant 1.
        assert!((ball_value(&ball, &x, &c).unwrap() - 1.0).abs() < 1e-12);
        assert!(ball_contains(&ball, &x, &c).unwrap());
    }

    #[test]
    fn clustered_points_get_a_small_net() {
        let c = cfg();
        let seq = catalog_sequence("geometric", &toml::Table::new(), 2, 200).unwrap();
        let points = seq.prefix(200).unwrap();
        let net = greedy_alpha_net(&points, 0.25, 16, AnchorPolicy::CenterPlusBasis, &c).unwrap();
        assert_eq!(net.status, NetStatus::NetFound);
        assert_eq!(net.covered, 200);
        assert!(net.balls.len() <= 4, "{} balls", net.balls.len());
    }

    #[test]
    fn diagonal_ramp_exceeds_any_small_budget() {
        let c = cfg();
        let points: Vec<NVector> = (1..=100).map(|k| v(k as f64, k as f64)).collect();
        let net = greedy_alpha_net(&points, 0.5, 64, AnchorPolicy::CenterPlusBasis, &c).unwrap();
        assert_eq!(net.status, NetStatus::PackingExceeded);
        assert_eq!(net.packing_witness.len(), 65);
        // Pairwise separation at the ball's own value function.
        for (i, &a) in net.packing_witness.iter().enumerate() {
            for &b in net.packing_witness.iter().skip(i + 1) {
                let ball =
                    Ball::with_policy(points[a].clone(), 0.5, AnchorPolicy::CenterPlusBasis, &c)
                        .unwrap();
                assert!(ball_value(&ball, &points[b], &c).unwrap() >= 0.5);
            }
        }
    }

    #[test]
    fn extraction_succeeds_on_the_damped_walk() {
        let c = cfg();
        let seq = catalog_sequence("random-walk-damped", &toml::Table::new(), 2, 4096).unwrap();
        let out = extract_s_quasi_cauchy_subsequence(&seq, 2, &c, &witnesses(), 4096).unwrap();
        match &out {
            ExtractionOutcome::Extracted {
                indices,
                envelope,
                stages,
            } => {
                assert_eq!(indices.len(), 12);
                assert!(indices.windows(2).all(|w| w[0] < w[1]));
                for (r, e) in envelope.iter().enumerate() {
                    let bound = 1.0 / (r + 1) as f64;
                    assert!(e <= &(bound + 1e-12), "stage {}: {e} > {bound}", r + 1);
                }
                assert_eq!(stages.len(), 12);
            }
            other => panic!("expected extraction, got {other:?}"),
        }
    }

    #[test]
    fn extraction_fails_on_the_linear_ramp() {
        let c = cfg();
        let points: Vec<NVector> = (1..=64).map(|k| v(k as f64, 0.0)).collect();
        let seq = SequenceSpec::explicit(points).unwrap();
        let out = extract_s_quasi_cauchy_subsequence(&seq, 1, &c, &witnesses(), 64).unwrap();
        match out {
            ExtractionOutcome::Failed {
                stage,
                best_ball_size,
                needed,
                ..
            } => {
                assert_eq!(stage, 1);
                assert_eq!(best_ball_size, 1);
                assert_eq!(needed, 2);
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn compact_image_passes_for_continuous_maps() {
        let c = cfg();
        let seq = catalog_sequence("random-walk-damped", &toml::Table::new(), 2, 2048).unwrap();
        let report = test_compact_image(
            &FunctionSpec::CoordinateSquare,
            &seq,
            1,
            &c,
            &witnesses(),
            2048,
        )
        .unwrap();
        assert!(report.passed, "{report:?}");
        assert!(report.source.succeeded());
        assert!(report.image.as_ref().unwrap().succeeded());
    }

    #[test]
    fn net_coverage_is_exhaustive() {
        let c = cfg();
        let seq = catalog_sequence("random-walk-damped", &toml::Table::new(), 2, 500).unwrap();
        let points = seq.prefix(500).unwrap();
        let net = greedy_alpha_net(&points, 0.3, 64, AnchorPolicy::CenterPlusBasis, &c).unwrap();
        assert_eq!(net.status, NetStatus::NetFound);
        let worst = coverage_radius(&points, &net, &c).unwrap();
        assert!(worst < 0.3, "worst uncovered distance {worst}");
    }
}
