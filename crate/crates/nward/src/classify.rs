//! Scalar profiles and finite-horizon property verdicts.
//!
//! A profile reduces a vector sequence to one nonnegative scalar per index
//! by taking the norm of a probe vector against every witness tuple and
//! keeping the maximum. Three probes are supported:
//!
//! - difference: x_{k+s} - x_k (shift-s forward difference),
//! - pair spread: x_k - x_m over a sparse set of lookahead partners,
//! - convergence: x_k - zeta for a fixed candidate limit.
//!
//! A [`Verdict`] then summarizes the tail of a profile at tolerance `tau`.
//! Finite horizons cannot certify limit statements, so verdicts are three
//! valued: a clean tail is `satisfied`, a tail with a substantial fraction
//! of large entries is `violated` (with the worst entry as witness), and
//! anything between is `inconclusive`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::nnorm::nnorm_with_witness;
use crate::sequence::SequenceSpec;
use crate::space::{NVector, SpaceConfig};
use crate::witness::WitnessSet;

/// Fraction of tail entries that must reach the violation threshold.
pub const VIOLATION_FRACTION: f64 = 0.25;

/// Multiple of tau that counts as a violating entry.
pub const VIOLATION_FACTOR: f64 = 10.0;

/// One profile entry: the reduced value at index k and the witness tuple
/// that attained it.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ProfilePoint {
    pub k: usize,
    pub value: f64,
    pub witness_tuple: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictStatus {
    Satisfied,
    Violated,
    Inconclusive,
}

/// Tail summary of one profile.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub witness_k: Option<usize>,
    pub witness_tuple_index: Option<usize>,
    pub witness_value: Option<f64>,
    pub tail_max: f64,
    pub tail_min: f64,
}

impl Verdict {
    pub fn is_satisfied(&self) -> bool {
        self.status == VerdictStatus::Satisfied
    }

    pub fn is_violated(&self) -> bool {
        self.status == VerdictStatus::Violated
    }
}

/// Reduces one probe vector over all witness tuples: maximum norm value and
/// the index of the attaining tuple (first on ties).
pub(crate) fn reduce_probe(
    probe: &NVector,
    witnesses: &WitnessSet,
    cfg: &SpaceConfig,
) -> Result<(f64, usize)> {
    let mut best = f64::NEG_INFINITY;
    let mut best_idx = 0;
    for (j, tuple) in witnesses.tuples().iter().enumerate() {
        let value = nnorm_with_witness(probe, tuple, cfg)?;
        if value > best {
            best = value;
            best_idx = j;
        }
    }
    Ok((best, best_idx))
}

fn validate_inputs(
    seq: &SequenceSpec,
    witnesses: &WitnessSet,
    cfg: &SpaceConfig,
    horizon: usize,
) -> Result<()> {
    cfg.validate()?;
    if seq.dimension() != cfg.dimension {
        return Err(Error::DimensionMismatch {
            expected: cfg.dimension,
            got: seq.dimension(),
        });
    }
    if horizon < 2 {
        return Err(Error::Precondition(format!(
            "analysis horizon must be at least 2, got {horizon}"
        )));
    }
    if horizon > seq.horizon() {
        return Err(Error::BeyondHorizon {
            index: horizon,
            horizon: seq.horizon(),
        });
    }
    if witnesses.is_empty() {
        return Err(Error::InvalidParameter("empty witness set".into()));
    }
    Ok(())
}

/// Shift-s difference profile d_k over k = 1..=horizon-s.
pub fn difference_profile(
    seq: &SequenceSpec,
    s: usize,
    witnesses: &WitnessSet,
    cfg: &SpaceConfig,
) -> Result<Vec<ProfilePoint>> {
    difference_profile_to(seq, s, witnesses, cfg, seq.horizon())
}

/// Same as [`difference_profile`] with an explicit analysis horizon.
pub fn difference_profile_to(
    seq: &SequenceSpec,
    s: usize,
    witnesses: &WitnessSet,
    cfg: &SpaceConfig,
    horizon: usize,
) -> Result<Vec<ProfilePoint>> {
    validate_inputs(seq, witnesses, cfg, horizon)?;
    if s < 1 {
        return Err(Error::InvalidParameter("shift s must be at least 1".into()));
    }
    if horizon <= s {
        return Err(Error::Precondition(format!(
            "horizon {horizon} leaves no index for shift {s}"
        )));
    }
    let points = seq.prefix(horizon)?;
    difference_profile_points(&points, s, witnesses, cfg)
}

pub(crate) fn difference_profile_points(
    points: &[NVector],
    s: usize,
    witnesses: &WitnessSet,
    cfg: &SpaceConfig,
) -> Result<Vec<ProfilePoint>> {
    let horizon = points.len();
    (1..=horizon - s)
        .into_par_iter()
        .map(|k| {
            let probe = &points[k + s - 1] - &points[k - 1];
            let (value, witness_tuple) = reduce_probe(&probe, witnesses, cfg)?;
            Ok(ProfilePoint {
                k,
                value,
                witness_tuple,
            })
        })
        .collect()
}

/// Lookahead partners used by the pair-spread profile at index k:
/// m in {k+1, k + ceil(k/2), 2k}, clipped to the horizon.
pub fn pair_partners(k: usize, horizon: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(3);
    for m in [k + 1, k + k.div_ceil(2), 2 * k] {
        if m > k && m <= horizon && !out.contains(&m) {
            out.push(m);
        }
    }
    out
}

/// Pair-spread profile over k = 1..=horizon-1: max over sparse partners m
/// and witness tuples of the reduced value of x_k - x_m.
pub fn pair_spread_profile(
    seq: &SequenceSpec,
    witnesses: &WitnessSet,
    cfg: &SpaceConfig,
    horizon: usize,
) -> Result<Vec<ProfilePoint>> {
    validate_inputs(seq, witnesses, cfg, horizon)?;
    let points = seq.prefix(horizon)?;
    pair_spread_profile_points(&points, witnesses, cfg)
}

pub(crate) fn pair_spread_profile_points(
    points: &[NVector],
    witnesses: &WitnessSet,
    cfg: &SpaceConfig,
) -> Result<Vec<ProfilePoint>> {
    let horizon = points.len();
    (1..=horizon - 1)
        .into_par_iter()
        .map(|k| {
            let mut best = f64::NEG_INFINITY;
            let mut best_idx = 0;
            for m in pair_partners(k, horizon) {
                let probe = &points[k - 1] - &points[m - 1];
                let (value, witness_tuple) = reduce_probe(&probe, witnesses, cfg)?;
                if value > best {
                    best = value;
                    best_idx = witness_tuple;
                }
            }
            Ok(ProfilePoint {
                k,
                value: best,
                witness_tuple: best_idx,
            })
        })
        .collect()
}

/// Convergence profile against a candidate limit over k = 1..=horizon.
pub fn convergence_profile(
    seq: &SequenceSpec,
    zeta: &NVector,
    witnesses: &WitnessSet,
    cfg: &SpaceConfig,
    horizon: usize,
) -> Result<Vec<ProfilePoint>> {
    validate_inputs(seq, witnesses, cfg, horizon)?;
    cfg.check_vector(zeta)?;
    let points = seq.prefix(horizon)?;
    convergence_profile_points(&points, zeta, witnesses, cfg)
}

pub(crate) fn convergence_profile_points(
    points: &[NVector],
    zeta: &NVector,
    witnesses: &WitnessSet,
    cfg: &SpaceConfig,
) -> Result<Vec<ProfilePoint>> {
    (1..=points.len())
        .into_par_iter()
        .map(|k| {
            let probe = &points[k - 1] - zeta;
            let (value, witness_tuple) = reduce_probe(&probe, witnesses, cfg)?;
            Ok(ProfilePoint {
                k,
                value,
                witness_tuple,
            })
        })
        .collect()
}

/// Tail verdict at tolerance `tau` over the window k >= ceil(horizon / 2).
///
/// satisfied: every tail entry is below tau. violated: at least
/// [`VIOLATION_FRACTION`] of tail entries reach [`VIOLATION_FACTOR`] * tau;
/// the largest entry (earliest on ties) is reported as witness. Anything
/// else is inconclusive.
pub fn verdict_for_profile(profile: &[ProfilePoint], horizon: usize, tau: f64) -> Result<Verdict> {
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "tolerance tau must be positive and finite, got {tau}"
        )));
    }
    let start = horizon.div_ceil(2);
    let tail: Vec<&ProfilePoint> = profile.iter().filter(|p| p.k >= start).collect();
    if tail.is_empty() {
        return Err(Error::Precondition(format!(
            "empty tail window: no profile indices at or beyond {start}"
        )));
    }
    let mut tail_max = f64::NEG_INFINITY;
    let mut tail_min = f64::INFINITY;
    let mut worst: &ProfilePoint = tail[0];
    let mut hot = 0usize;
    for p in &tail {
        tail_max = tail_max.max(p.value);
        tail_min = tail_min.min(p.value);
        if p.value > worst.value {
            worst = p;
        }
        if p.value >= VIOLATION_FACTOR * tau {
            hot += 1;
        }
    }
    let status = if tail_max < tau {
        VerdictStatus::Satisfied
    } else if hot as f64 >= VIOLATION_FRACTION * tail.len() as f64 {
        VerdictStatus::Violated
    } else {
        VerdictStatus::Inconclusive
    };
    let (witness_k, witness_tuple_index, witness_value) = if status == VerdictStatus::Violated {
        (Some(worst.k), Some(worst.witness_tuple), Some(worst.value))
    } else {
        (None, None, None)
    };
    Ok(Verdict {
        status,
        witness_k,
        witness_tuple_index,
        witness_value,
        tail_max,
        tail_min,
    })
}

/// One named property with its verdict.
#[derive(Clone, Debug, Serialize)]
pub struct PropertyVerdict {
    pub property: String,
    pub s: Option<usize>,
    #[serde(flatten)]
    pub verdict: Verdict,
}

/// Full classification of one sequence at one tolerance.
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub sequence: String,
    pub space: SpaceConfig,
    #[serde(rename = "H")]
    pub horizon: usize,
    pub tau: f64,
    pub witness_label: String,
    pub witness_count: usize,
    pub properties: Vec<PropertyVerdict>,
}

impl ClassificationReport {
    pub fn property(&self, name: &str, s: Option<usize>) -> Option<&PropertyVerdict> {
        self.properties
            .iter()
            .find(|p| p.property == name && p.s == s)
    }

    pub fn any_violated(&self) -> bool {
        self.properties.iter().any(|p| p.verdict.is_violated())
    }
}

/// Classifies a sequence: pair spread (Cauchy-style), unit-shift
/// difference, and shift-s difference for every requested s, plus
/// convergence to `zeta` when given.
///
/// Requires `horizon >= 4 * max(s_list)` so every tail window has room.
pub fn classify(
    seq: &SequenceSpec,
    cfg: &SpaceConfig,
    witnesses: &WitnessSet,
    s_list: &[usize],
    horizon: usize,
    tau: f64,
    zeta: Option<&NVector>,
) -> Result<ClassificationReport> {
    validate_inputs(seq, witnesses, cfg, horizon)?;
    if s_list.is_empty() {
        return Err(Error::InvalidParameter("empty shift list".into()));
    }
    let max_s = *s_list.iter().max().expect("nonempty shift list");
    if max_s < 1 {
        return Err(Error::InvalidParameter("shift s must be at least 1".into()));
    }
    if horizon < 4 * max_s {
        return Err(Error::Precondition(format!(
            "horizon {horizon} below 4 * max shift = {}",
            4 * max_s
        )));
    }

    let points = seq.prefix(horizon)?;
    let mut properties = Vec::new();

    if let Some(z) = zeta {
        cfg.check_vector(z)?;
        let profile = convergence_profile(seq, z, witnesses, cfg, horizon)?;
        properties.push(PropertyVerdict {
            property: "convergent".into(),
            s: None,
            verdict: verdict_for_profile(&profile, horizon, tau)?,
        });
    }

    let spread = pair_spread_profile_points(&points, witnesses, cfg)?;
    properties.push(PropertyVerdict {
        property: "cauchy".into(),
        s: None,
        verdict: verdict_for_profile(&spread, horizon, tau)?,
    });

    let unit = difference_profile_points(&points, 1, witnesses, cfg)?;
    properties.push(PropertyVerdict {
        property: "quasi-cauchy".into(),
        s: None,
        verdict: verdict_for_profile(&unit, horizon, tau)?,
    });

    for &s in s_list {
        let profile = if s == 1 {
            unit.clone()
        } else {
            difference_profile_points(&points, s, witnesses, cfg)?
        };
        properties.push(PropertyVerdict {
            property: "s-quasi-cauchy".into(),
            s: Some(s),
            verdict: verdict_for_profile(&profile, horizon, tau)?,
        });
    }

    Ok(ClassificationReport {
        sequence: seq.name(),
        space: *cfg,
        horizon,
        tau,
        witness_label: witnesses.label().to_string(),
        witness_count: witnesses.len(),
        properties,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::catalog_sequence;
    use crate::space::Exponent;

    fn cfg() -> SpaceConfig {
        SpaceConfig::new(2, 2, Exponent::Finite(2.0)).unwrap()
    }

    fn seq(name: &str, h: usize) -> SequenceSpec {
        catalog_sequence(name, &toml::Table::new(), 2, h).unwrap()
    }

    fn witnesses() -> WitnessSet {
        WitnessSet::standard_basis(&cfg()).unwrap()
    }

    #[test]
    fn alternating_unit_profile_is_exactly_two() {
        let s = seq("alternating", 1000);
        let profile = difference_profile(&s, 1, &witnesses(), &cfg()).unwrap();
        assert_eq!(profile.len(), 999);
        for p in &profile {
            assert!((p.value - 2.0).abs() < 1e-12, "k={}: {}", p.k, p.value);
        }
    }

    #[test]
    fn alternating_even_shift_profile_vanishes() {
        let s = seq("alternating", 1000);
        let profile = difference_profile(&s, 2, &witnesses(), &cfg()).unwrap();
        for p in &profile {
            assert_eq!(p.value, 0.0);
        }
    }

    #[test]
    fn classify_separates_alternating_shifts() {
        let s = seq("alternating", 1000);
        let report = classify(&s, &cfg(), &witnesses(), &[2], 1000, 1e-3, None).unwrap();
        let quasi = report.property("quasi-cauchy", None).unwrap();
        assert_eq!(quasi.verdict.status, VerdictStatus::Violated);
        assert_eq!(quasi.verdict.witness_k.is_some(), true);
        let two = report.property("s-quasi-cauchy", Some(2)).unwrap();
        assert_eq!(two.verdict.status, VerdictStatus::Satisfied);
        assert!(report.any_violated());
    }

    #[test]
    fn sqrt_ramp_is_quasi_cauchy_but_not_cauchy() {
        let s = seq("sqrt-ramp", 10_000);
        let report = classify(&s, &cfg(), &witnesses(), &[1], 10_000, 1e-2, None).unwrap();
        assert_eq!(
            report.property("quasi-cauchy", None).unwrap().verdict.status,
            VerdictStatus::Satisfied
        );
        assert_eq!(
            report.property("cauchy", None).unwrap().verdict.status,
            VerdictStatus::Violated
        );
    }

    #[test]
    fn constant_satisfies_everything_and_converges() {
        let s = seq("constant", 100);
        let zeta = NVector::new(vec![1.0, 0.0]).unwrap();
        let report =
            classify(&s, &cfg(), &witnesses(), &[1, 2, 3], 100, 1e-6, Some(&zeta)).unwrap();
        for p in &report.properties {
            assert_eq!(p.verdict.status, VerdictStatus::Satisfied, "{}", p.property);
        }
    }

    #[test]
    fn pair_partners_are_sparse_and_bounded() {
        assert_eq!(pair_partners(1, 100), vec![2]);
        assert_eq!(pair_partners(4, 100), vec![5, 6, 8]);
        assert_eq!(pair_partners(60, 100), vec![61, 90]);
        assert_eq!(pair_partners(99, 100), vec![100]);
    }

    #[test]
    fn verdict_requires_quarter_of_tail_hot() {
        // Profile over horizon 100: tail window starts at k = 50.
        let mut profile: Vec<ProfilePoint> = (1..=100)
            .map(|k| ProfilePoint {
                k,
                value: 0.0,
                witness_tuple: 0,
            })
            .collect();
        // 12 of 51 tail entries hot: below the quarter threshold.
        for p in profile.iter_mut().skip(49).take(12) {
            p.value = 1.0;
        }
        let v = verdict_for_profile(&profile, 100, 1e-2).unwrap();
        assert_eq!(v.status, VerdictStatus::Inconclusive);
        // 13 of 51 puts it at the quarter threshold.
        for p in profile.iter_mut().skip(49).take(13) {
            p.value = 1.0;
        }
        let v = verdict_for_profile(&profile, 100, 1e-2).unwrap();
        assert_eq!(v.status, VerdictStatus::Violated);
        assert_eq!(v.witness_k, Some(50));
    }

    #[test]
    fn horizon_preconditions_are_enforced() {
        let s = seq("alternating", 100);
        assert!(classify(&s, &cfg(), &witnesses(), &[30], 100, 1e-3, None).is_err());
        assert!(classify(&s, &cfg(), &witnesses(), &[1], 200, 1e-3, None).is_err());
        assert!(classify(&s, &cfg(), &witnesses(), &[1], 100, -1.0, None).is_err());
        assert!(classify(&s, &cfg(), &witnesses(), &[], 100, 1e-3, None).is_err());
    }
}
