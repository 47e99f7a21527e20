//! End-to-end suite: a fixed battery of ten sections exercising the norm,
//! classification, continuity, and compactness layers over a configurable
//! corpus, with a deterministic JSON report.
//!
//! Three cases are deliberate counterexamples: the alternating sequence
//! separates shift-2 smallness from unit-shift smallness, the square-root
//! ramp separates unit-shift smallness from the pair-spread property, and
//! the coordinate square on that ramp breaks difference preservation while
//! remaining continuous. These report `expected-violation` when they play
//! out exactly as predicted; any other deviation anywhere reports
//! `unexpected-violation` and fails the run.

use serde::Serialize;

use crate::classify::{classify, VerdictStatus};
use crate::compactness::{
    ball_value, coverage_radius, extract_s_quasi_cauchy_subsequence, greedy_alpha_net,
    test_compact_image, AnchorPolicy, Ball, ExtractionOutcome, NetStatus,
};
use crate::config::SuiteConfig;
use crate::continuity::{
    estimate_uniform_modulus, function_from_table, test_s_ward, test_sequential_continuity,
    test_uniform_limit, test_ward, ContinuityReport, FunctionSpec,
};
use crate::error::{Error, Result};
use crate::nnorm::{
    check_axioms, gram_nnorm_oracle, nnorm_p, nnorm_p_reference, sample_tuples,
};
use crate::rng::Lcg;
use crate::sequence::{
    catalog_sequence, sequence_from_table, telescoping_check, SequenceSpec,
};
use crate::space::{Exponent, NVector, SpaceConfig, VectorTuple};
use crate::witness::WitnessSet;

/// Section identifiers, in execution order.
pub const SECTION_IDS: [&str; 10] = [
    "norm-axioms",
    "cauchy-binet",
    "telescoping",
    "verdict-chain",
    "s-ward-implies-ward",
    "s-ward-implies-continuous",
    "uniform-implies-s-ward",
    "uniform-limit",
    "compact-image",
    "totally-bounded-iff-s-ward-compact",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseStatus {
    /// The asserted behavior held.
    Pass,
    /// A pinned counterexample played out exactly as predicted.
    ExpectedViolation,
    /// An assertion failed, or a pinned counterexample deviated from its
    /// prediction.
    UnexpectedViolation,
    /// The case's premise was not established, so nothing was asserted.
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub status: CaseStatus,
    pub detail: String,
    pub data: Option<serde_json::Value>,
}

impl CaseResult {
    fn new(id: impl Into<String>, status: CaseStatus, detail: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            status,
            detail: detail.into(),
            data: None,
        }
    }

    fn with_data<T: Serialize>(mut self, data: &T) -> Self {
        // Failure to encode auxiliary data must not change a verdict; the
        // payload is advisory.
        self.data = serde_json::to_value(data).ok();
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SectionResult {
    pub id: String,
    pub cases: Vec<CaseResult>,
    pub pass: usize,
    pub expected_violations: usize,
    pub unexpected_violations: usize,
    pub skipped: usize,
}

impl SectionResult {
    fn new(id: &str, cases: Vec<CaseResult>) -> Self {
        let mut pass = 0;
        let mut expected = 0;
        let mut unexpected = 0;
        let mut skipped = 0;
        for c in &cases {
            match c.status {
                CaseStatus::Pass => pass += 1,
                CaseStatus::ExpectedViolation => expected += 1,
                CaseStatus::UnexpectedViolation => unexpected += 1,
                CaseStatus::Skipped => skipped += 1,
            }
        }
        Self {
            id: id.into(),
            cases,
            pass,
            expected_violations: expected,
            unexpected_violations: unexpected,
            skipped,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteSummary {
    pub sections: usize,
    pub cases: usize,
    pub pass: usize,
    pub expected_violations: usize,
    pub unexpected_violations: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub tool: ToolInfo,
    pub config: SuiteConfig,
    pub sections: Vec<SectionResult>,
    pub summary: SuiteSummary,
}

impl SuiteReport {
    pub fn has_unexpected_violations(&self) -> bool {
        self.summary.unexpected_violations > 0
    }

    /// Single-line JSON with full-precision floats; byte-identical across
    /// runs with the same config.
    pub fn to_json(&self) -> Result<String> {
        crate::report::to_json_string(self)
    }
}

struct Resolved {
    space: SpaceConfig,
    witnesses: WitnessSet,
    corpus: Vec<SequenceSpec>,
    functions: Vec<FunctionSpec>,
}

fn resolve(config: &SuiteConfig) -> Result<Resolved> {
    config.validate()?;
    let space = config.space()?;
    let witnesses = match config.witness.as_str() {
        "standard-basis" => WitnessSet::standard_basis(&space)?,
        "leading-basis" => WitnessSet::leading_basis(&space)?,
        "explicit" => {
            let tuples: Result<Vec<Vec<NVector>>> = config
                .witness_tuples
                .iter()
                .map(|t| t.iter().map(|v| NVector::new(v.clone())).collect())
                .collect();
            WitnessSet::explicit(tuples?, &space)?
        }
        other => return Err(Error::Config(format!("unknown witness policy {other:?}"))),
    };
    let build_horizon = config.horizon.max(config.extraction_horizon);
    let corpus: Result<Vec<SequenceSpec>> = config
        .sequences
        .iter()
        .map(|t| sequence_from_table(t, config.dimension, build_horizon))
        .collect();
    let functions: Result<Vec<FunctionSpec>> = config
        .functions
        .iter()
        .map(|t| function_from_table(t, config.dimension))
        .collect();
    Ok(Resolved {
        space,
        witnesses,
        corpus: corpus?,
        functions: functions?,
    })
}

/// A function-corpus section under a config with no functions: one
/// skipped case so the section still appears in the report.
fn section_without_functions(id: &str) -> SectionResult {
    SectionResult::new(
        id,
        vec![CaseResult::new(
            "no-functions",
            CaseStatus::Skipped,
            "no functions configured",
        )],
    )
}

/// Repeats each term of `seq` `s` times, realized as stored points.
fn interleave_spec(seq: &SequenceSpec, s: usize, horizon: usize) -> Result<SequenceSpec> {
    let base_len = horizon.div_ceil(s);
    let base = seq.prefix(base_len)?;
    let points: Vec<NVector> = (1..=horizon)
        .map(|m| base[m.div_ceil(s) - 1].clone())
        .collect();
    SequenceSpec::explicit(points)
}

fn builtin(name: &str, dimension: usize, horizon: usize) -> Result<SequenceSpec> {
    catalog_sequence(name, &toml::Table::new(), dimension, horizon)
}

fn status_name(status: VerdictStatus) -> &'static str {
    match status {
        VerdictStatus::Satisfied => "satisfied",
        VerdictStatus::Violated => "violated",
        VerdictStatus::Inconclusive => "inconclusive",
    }
}

// --- section 1: norm axioms over a space grid ---

fn run_norm_axioms(config: &SuiteConfig, master: &Lcg) -> Result<SectionResult> {
    let grid = [(2usize, 2usize), (3, 2), (3, 3), (4, 3), (5, 2)];
    let exponents = [Exponent::Finite(1.0), Exponent::Finite(2.0), Exponent::Infinity];
    let mut cases = Vec::new();
    let _ = config;
    for (d, n) in grid {
        for exponent in exponents {
            let id = format!("axioms-d{d}-n{n}-p{exponent}");
            let cfg = SpaceConfig::new(d, n, exponent)?;
            let mut rng = master.fork(&id);
            let mut samples = sample_tuples(&cfg, 8, 2.0, &mut rng)?;
            // One deliberately dependent tuple keeps the degeneracy branch
            // honest in every space.
            let first = samples[0].vectors()[0].clone();
            let mut vs = samples[0].vectors().to_vec();
            vs[n - 1] = first.scale(-2.0);
            samples.push(VectorTuple::new(vs)?);
            let report = check_axioms(&samples, &cfg, 1e-9)?;
            let detail = format!(
                "permutation {:.2e}, homogeneity {:.2e}, triangle {:.2e}, degeneracy {:.2e}",
                report.permutation.worst_residual,
                report.homogeneity.worst_residual,
                report.triangle.worst_residual,
                report.degeneracy.worst_residual,
            );
            let status = if report.all_passed() {
                CaseStatus::Pass
            } else {
                CaseStatus::UnexpectedViolation
            };
            cases.push(CaseResult::new(id, status, detail).with_data(&report));
        }
    }
    Ok(SectionResult::new(SECTION_IDS[0], cases))
}

// --- section 2: Gram oracle and enumeration agreement ---

fn run_cauchy_binet(master: &Lcg) -> Result<SectionResult> {
    let mut cases = Vec::new();
    for (d, n) in [(2usize, 2usize), (3, 2), (4, 3), (6, 4)] {
        let id = format!("gram-d{d}-n{n}");
        let cfg = SpaceConfig::new(d, n, Exponent::Finite(2.0))?;
        let mut rng = master.fork(&id);
        let mut worst = 0.0f64;
        for t in sample_tuples(&cfg, 25, 3.0, &mut rng)? {
            let direct = nnorm_p(&t, &cfg)?;
            let oracle = gram_nnorm_oracle(&t)?;
            worst = worst.max((direct - oracle).abs() / (1.0 + direct.max(oracle)));
        }
        let status = if worst < 1e-9 {
            CaseStatus::Pass
        } else {
            CaseStatus::UnexpectedViolation
        };
        cases.push(CaseResult::new(
            id,
            status,
            format!("worst relative gap to Gram oracle {worst:.2e}"),
        ));
    }
    for (d, n) in [(2usize, 2usize), (3, 2), (4, 3)] {
        for p in [1.0, 2.0, 3.5] {
            let id = format!("enum-d{d}-n{n}-p{p}");
            let cfg = SpaceConfig::new(d, n, Exponent::Finite(p))?;
            let mut rng = master.fork(&id);
            let mut worst = 0.0f64;
            for t in sample_tuples(&cfg, 10, 2.0, &mut rng)? {
                let fast = nnorm_p(&t, &cfg)?;
                let slow = nnorm_p_reference(&t, &cfg)?;
                worst = worst.max((fast - slow).abs() / (1.0 + fast.max(slow)));
            }
            let status = if worst < 1e-12 {
                CaseStatus::Pass
            } else {
                CaseStatus::UnexpectedViolation
            };
            cases.push(CaseResult::new(
                id,
                status,
                format!("worst relative gap between enumerations {worst:.2e}"),
            ));
        }
    }
    Ok(SectionResult::new(SECTION_IDS[1], cases))
}

// --- section 3: telescoping identity on the corpus ---

fn run_telescoping(config: &SuiteConfig, resolved: &Resolved) -> Result<SectionResult> {
    let mut cases = Vec::new();
    let h = config.horizon;
    let max_s = *config.s_list.iter().max().expect("validated nonempty");
    for seq in &resolved.corpus {
        let mut worst = 0.0f64;
        let mut checks = 0usize;
        for &s in &config.s_list {
            for k in [1, h / 4, h / 2, h - max_s - 1] {
                if k >= 1 && k + s <= h {
                    let residual = telescoping_check(seq, s, k)?;
                    let scale = seq.eval(k + s)?.max_abs().max(1.0);
                    worst = worst.max(residual / scale);
                    checks += 1;
                }
            }
        }
        let status = if worst <= 1e-12 {
            CaseStatus::Pass
        } else {
            CaseStatus::UnexpectedViolation
        };
        cases.push(CaseResult::new(
            format!("telescoping-{}", seq.name()),
            status,
            format!("worst scaled residual {worst:.2e} over {checks} checks"),
        ));
    }
    Ok(SectionResult::new(SECTION_IDS[2], cases))
}

// --- section 4: verdict chain and pinned separations ---

fn run_verdict_chain(config: &SuiteConfig, resolved: &Resolved) -> Result<SectionResult> {
    let mut cases = Vec::new();
    for seq in &resolved.corpus {
        let report = classify(
            seq,
            &resolved.space,
            &resolved.witnesses,
            &config.s_list,
            config.horizon,
            config.tau,
            None,
        )?;
        let cauchy = report.property("cauchy", None).expect("always present");
        let quasi = report.property("quasi-cauchy", None).expect("always present");
        let mut broken = Vec::new();
        if cauchy.verdict.is_satisfied() && !quasi.verdict.is_satisfied() {
            broken.push("pair-spread satisfied but unit-shift not".to_string());
        }
        if quasi.verdict.is_satisfied() {
            for &s in &config.s_list {
                let v = report
                    .property("s-quasi-cauchy", Some(s))
                    .expect("requested shift present");
                if !v.verdict.is_satisfied() {
                    broken.push(format!("unit-shift satisfied but shift {s} not"));
                }
            }
        }
        let statuses: Vec<String> = report
            .properties
            .iter()
            .map(|p| match p.s {
                Some(s) => format!("{}[{}]={}", p.property, s, status_name(p.verdict.status)),
                None => format!("{}={}", p.property, status_name(p.verdict.status)),
            })
            .collect();
        let status = if broken.is_empty() {
            CaseStatus::Pass
        } else {
            CaseStatus::UnexpectedViolation
        };
        let detail = if broken.is_empty() {
            statuses.join(", ")
        } else {
            broken.join("; ")
        };
        cases.push(
            CaseResult::new(format!("chain-{}", seq.name()), status, detail).with_data(&report),
        );
    }

    // Pinned separation: the alternating sequence has unit-shift
    // differences of size 2 but vanishing shift-2 differences.
    {
        let seq = builtin("alternating", config.dimension, 1000)?;
        let report = classify(
            &seq,
            &resolved.space,
            &resolved.witnesses,
            &[2],
            1000,
            1e-3,
            None,
        )?;
        let quasi = report.property("quasi-cauchy", None).expect("present");
        let two = report.property("s-quasi-cauchy", Some(2)).expect("present");
        let as_predicted = quasi.verdict.is_violated()
            && two.verdict.is_satisfied()
            && (quasi.verdict.tail_max - 2.0).abs() < 1e-12
            && two.verdict.tail_max == 0.0;
        let status = if as_predicted {
            CaseStatus::ExpectedViolation
        } else {
            CaseStatus::UnexpectedViolation
        };
        cases.push(
            CaseResult::new(
                "separation-alternating",
                status,
                format!(
                    "unit-shift {} (tail max {:.3}), shift-2 {} (tail max {:.3})",
                    status_name(quasi.verdict.status),
                    quasi.verdict.tail_max,
                    status_name(two.verdict.status),
                    two.verdict.tail_max
                ),
            )
            .with_data(&report),
        );
    }

    // Pinned separation: the square-root ramp has shrinking unit-shift
    // differences but unbounded pair spread.
    {
        let seq = builtin("sqrt-ramp", config.dimension, 10_000)?;
        let report = classify(
            &seq,
            &resolved.space,
            &resolved.witnesses,
            &[1],
            10_000,
            1e-2,
            None,
        )?;
        let cauchy = report.property("cauchy", None).expect("present");
        let quasi = report.property("quasi-cauchy", None).expect("present");
        let as_predicted = cauchy.verdict.is_violated() && quasi.verdict.is_satisfied();
        let status = if as_predicted {
            CaseStatus::ExpectedViolation
        } else {
            CaseStatus::UnexpectedViolation
        };
        cases.push(
            CaseResult::new(
                "separation-sqrt-ramp",
                status,
                format!(
                    "pair-spread {} (tail max {:.3}), unit-shift {} (tail max {:.2e})",
                    status_name(cauchy.verdict.status),
                    cauchy.verdict.tail_max,
                    status_name(quasi.verdict.status),
                    quasi.verdict.tail_max
                ),
            )
            .with_data(&report),
        );
    }

    Ok(SectionResult::new(SECTION_IDS[3], cases))
}

// --- section 5: shift-s preservation implies unit-shift preservation ---

fn run_s_ward_implies_ward(config: &SuiteConfig, resolved: &Resolved) -> Result<SectionResult> {
    if resolved.functions.is_empty() {
        return Ok(section_without_functions(SECTION_IDS[4]));
    }
    let mut cases = Vec::new();
    let mut closure: Vec<SequenceSpec> = resolved.corpus.clone();
    for seq in &resolved.corpus {
        for s in [2usize, 3] {
            closure.push(interleave_spec(seq, s, config.horizon)?);
        }
    }
    let closure_refs: Vec<&SequenceSpec> = closure.iter().collect();
    let base_refs: Vec<&SequenceSpec> = resolved.corpus.iter().collect();

    for f in &resolved.functions {
        let id = format!("implication-{}", f.name());
        let mut premise = true;
        let mut premise_detail = Vec::new();
        for s in [2usize, 3] {
            let rep = test_s_ward(
                f,
                &closure_refs,
                s,
                &resolved.space,
                &resolved.witnesses,
                config.horizon,
                config.tau,
            )?;
            premise_detail.push(format!(
                "shift {s} over closure: {}",
                status_name(rep.verdict.status)
            ));
            if !rep.verdict.is_satisfied() {
                premise = false;
            }
        }
        if !premise {
            cases.push(CaseResult::new(
                id,
                CaseStatus::Skipped,
                format!("premise not established ({})", premise_detail.join("; ")),
            ));
            continue;
        }
        let ward = test_ward(
            f,
            &base_refs,
            &resolved.space,
            &resolved.witnesses,
            config.horizon,
            config.tau,
        )?;
        let status = if ward.verdict.is_violated() {
            CaseStatus::UnexpectedViolation
        } else {
            CaseStatus::Pass
        };
        cases.push(
            CaseResult::new(
                id,
                status,
                format!(
                    "{}; unit shift over base: {}",
                    premise_detail.join("; "),
                    status_name(ward.verdict.status)
                ),
            )
            .with_data(&ward),
        );
    }

    // Pinned counterexample: squaring is continuous everywhere but turns
    // the ramp's shrinking differences into constant-size ones; the image
    // tail sits at exactly the shift value.
    {
        let ramp = builtin("sqrt-ramp", config.dimension, 1000)?;
        let refs = [&ramp];
        let mut as_predicted = true;
        let mut details = Vec::new();
        let mut reports: Vec<ContinuityReport> = Vec::new();
        for s in [1usize, 2, 3] {
            let rep = test_s_ward(
                &FunctionSpec::CoordinateSquare,
                &refs,
                s,
                &resolved.space,
                &resolved.witnesses,
                1000,
                1e-2,
            )?;
            let tail = rep.verdict.tail_max;
            let expected = s as f64;
            let hit = rep.verdict.is_violated() && (tail - expected).abs() < 1e-9;
            if !hit {
                as_predicted = false;
            }
            details.push(format!(
                "shift {s}: {} with image tail {tail:.9}",
                status_name(rep.verdict.status)
            ));
            reports.push(rep);
        }
        let status = if as_predicted {
            CaseStatus::ExpectedViolation
        } else {
            CaseStatus::UnexpectedViolation
        };
        cases.push(
            CaseResult::new("separation-coordinate-square", status, details.join("; "))
                .with_data(&reports),
        );
    }

    Ok(SectionResult::new(SECTION_IDS[4], cases))
}

// --- section 6: shift preservation implies sequential continuity ---

fn run_s_ward_implies_continuous(
    config: &SuiteConfig,
    resolved: &Resolved,
) -> Result<SectionResult> {
    if resolved.functions.is_empty() {
        return Ok(section_without_functions(SECTION_IDS[5]));
    }
    let mut cases = Vec::new();
    let bounded: Vec<&SequenceSpec> = resolved
        .corpus
        .iter()
        .filter(|s| s.is_bounded())
        .collect();
    let path_horizon = config.horizon.min(4000);
    let zero = NVector::zeros(config.dimension);
    let e1 = NVector::basis(config.dimension, 0)?;

    for f in &resolved.functions {
        let id = format!("continuity-{}", f.name());
        if bounded.is_empty() {
            cases.push(CaseResult::new(
                id,
                CaseStatus::Skipped,
                "no bounded corpus members",
            ));
            continue;
        }
        let mut premise = true;
        let mut premise_detail = Vec::new();
        for s in [1usize, 2] {
            let rep = test_s_ward(
                f,
                &bounded,
                s,
                &resolved.space,
                &resolved.witnesses,
                config.horizon,
                config.tau,
            )?;
            premise_detail.push(format!(
                "shift {s} over bounded corpus: {}",
                status_name(rep.verdict.status)
            ));
            if !rep.verdict.is_satisfied() {
                premise = false;
            }
        }
        if !premise {
            cases.push(CaseResult::new(
                id,
                CaseStatus::Skipped,
                format!("premise not established ({})", premise_detail.join("; ")),
            ));
            continue;
        }
        let mut ok = true;
        let mut details = premise_detail;
        for (label, zeta) in [("origin", &zero), ("e1", &e1)] {
            let rep = test_sequential_continuity(
                f,
                zeta,
                &resolved.space,
                &resolved.witnesses,
                path_horizon,
                config.tau,
            )?;
            details.push(format!(
                "paths at {label}: {}",
                status_name(rep.verdict.status)
            ));
            if !rep.verdict.is_satisfied() {
                ok = false;
            }
        }
        let status = if ok {
            CaseStatus::Pass
        } else {
            CaseStatus::UnexpectedViolation
        };
        cases.push(CaseResult::new(id, status, details.join("; ")));
    }
    Ok(SectionResult::new(SECTION_IDS[5], cases))
}

// --- section 7: uniform modulus implies shift preservation ---

fn run_uniform_implies_s_ward(
    config: &SuiteConfig,
    resolved: &Resolved,
) -> Result<SectionResult> {
    if resolved.functions.is_empty() {
        return Ok(section_without_functions(SECTION_IDS[6]));
    }
    let mut cases = Vec::new();
    let hw = config.modulus_halfwidth;
    let lo = NVector::new(vec![-hw; config.dimension])?;
    let hi = NVector::new(vec![hw; config.dimension])?;
    let bounded: Vec<&SequenceSpec> = resolved
        .corpus
        .iter()
        .filter(|s| s.is_bounded())
        .collect();

    for f in &resolved.functions {
        let id = format!("modulus-{}", f.name());
        let table = estimate_uniform_modulus(
            f,
            &lo,
            &hi,
            config.modulus_grid,
            &resolved.space,
            &resolved.witnesses,
        )?;
        let monotone = table.is_monotone(1e-12);
        let delta = table.delta_for(config.tau);
        if !monotone || delta.is_none() || bounded.is_empty() {
            let reason = if !monotone {
                "modulus table not monotone".to_string()
            } else if delta.is_none() {
                format!("no sampled delta achieves image distance below {}", config.tau)
            } else {
                "no bounded corpus members".to_string()
            };
            cases.push(
                CaseResult::new(
                    id,
                    CaseStatus::Skipped,
                    format!("premise not established ({reason})"),
                )
                .with_data(&table),
            );
            continue;
        }
        let mut violated = Vec::new();
        for &s in &config.s_list {
            let rep = test_s_ward(
                f,
                &bounded,
                s,
                &resolved.space,
                &resolved.witnesses,
                config.horizon,
                config.tau,
            )?;
            if rep.verdict.is_violated() {
                violated.push(format!("shift {s}"));
            }
        }
        let status = if violated.is_empty() {
            CaseStatus::Pass
        } else {
            CaseStatus::UnexpectedViolation
        };
        let detail = if violated.is_empty() {
            format!(
                "modulus monotone, delta {} reaches {}; no shift violated over bounded corpus",
                delta.expect("checked above"),
                config.tau
            )
        } else {
            format!("violated at {}", violated.join(", "))
        };
        cases.push(CaseResult::new(id, status, detail).with_data(&table));
    }
    Ok(SectionResult::new(SECTION_IDS[6], cases))
}

// --- section 8: uniform limits preserve shift smallness ---

fn run_uniform_limit(config: &SuiteConfig, resolved: &Resolved) -> Result<SectionResult> {
    if resolved.functions.is_empty() {
        return Ok(section_without_functions(SECTION_IDS[7]));
    }
    let mut cases = Vec::new();
    let bounded: Vec<&SequenceSpec> = resolved
        .corpus
        .iter()
        .filter(|s| s.is_bounded())
        .collect();
    if bounded.is_empty() {
        return Ok(SectionResult::new(
            SECTION_IDS[7],
            vec![CaseResult::new(
                "uniform-limit",
                CaseStatus::Skipped,
                "no bounded corpus members",
            )],
        ));
    }
    let identity_matrix: Vec<Vec<f64>> = (0..config.dimension)
        .map(|i| {
            (0..config.dimension)
                .map(|j| if i == j { 1.0 } else { 0.0 })
                .collect()
        })
        .collect();
    let mut offset = vec![0.0; config.dimension];
    offset[0] = 1.0;
    if config.dimension > 1 {
        offset[1] = -1.0;
    }

    let chains: Vec<(&str, Vec<FunctionSpec>, FunctionSpec)> = vec![
        (
            "clip-scale",
            (1..=8)
                .map(|j| FunctionSpec::Compose {
                    stages: vec![
                        FunctionSpec::LipschitzClip { bound: 1.5 },
                        FunctionSpec::Scale {
                            factor: 1.0 + 1.0 / j as f64,
                        },
                    ],
                })
                .collect(),
            FunctionSpec::LipschitzClip { bound: 1.5 },
        ),
        (
            "affine-offset",
            (1..=8)
                .map(|j| FunctionSpec::Affine {
                    matrix: identity_matrix.clone(),
                    offset: offset.iter().map(|v| v / j as f64).collect(),
                })
                .collect(),
            FunctionSpec::identity(),
        ),
        (
            "square-scale",
            (1..=8)
                .map(|j| FunctionSpec::Compose {
                    stages: vec![
                        FunctionSpec::CoordinateSquare,
                        FunctionSpec::Scale {
                            factor: 1.0 + 1.0 / j as f64,
                        },
                    ],
                })
                .collect(),
            FunctionSpec::CoordinateSquare,
        ),
    ];

    for (label, stages, limit) in chains {
        let rep = test_uniform_limit(
            &stages,
            &limit,
            &bounded,
            1,
            &resolved.space,
            &resolved.witnesses,
            config.horizon,
            config.tau,
        )?;
        let worst_residual = rep
            .members
            .iter()
            .filter_map(|m| m.epsilon_split.as_ref())
            .map(|s| s.bound_residual)
            .fold(0.0f64, f64::max);
        let ok = !rep.verdict.is_violated() && worst_residual <= 1e-9;
        let status = if ok {
            CaseStatus::Pass
        } else {
            CaseStatus::UnexpectedViolation
        };
        cases.push(
            CaseResult::new(
                format!("limit-{label}"),
                status,
                format!(
                    "limit verdict {}, worst three-term bound residual {worst_residual:.2e}",
                    status_name(rep.verdict.status)
                ),
            )
            .with_data(&rep),
        );
    }
    Ok(SectionResult::new(SECTION_IDS[7], cases))
}

// --- section 9: extraction survives continuous images ---

fn run_compact_image(config: &SuiteConfig, resolved: &Resolved) -> Result<SectionResult> {
    if resolved.functions.is_empty() {
        return Ok(section_without_functions(SECTION_IDS[8]));
    }
    let mut cases = Vec::new();
    let walk = builtin(
        "random-walk-damped",
        config.dimension,
        config.extraction_horizon,
    )?;
    for f in &resolved.functions {
        let rep = test_compact_image(
            f,
            &walk,
            1,
            &resolved.space,
            &resolved.witnesses,
            config.extraction_horizon,
        )?;
        let status = if rep.passed {
            CaseStatus::Pass
        } else {
            CaseStatus::UnexpectedViolation
        };
        let detail = match (&rep.source, &rep.image) {
            (ExtractionOutcome::Extracted { indices, .. }, Some(ExtractionOutcome::Extracted { indices: img, .. })) => {
                format!(
                    "source extracted {} indices, image extracted {}",
                    indices.len(),
                    img.len()
                )
            }
            _ => "extraction failed".to_string(),
        };
        cases.push(
            CaseResult::new(format!("image-{}", f.name()), status, detail).with_data(&rep),
        );
    }
    Ok(SectionResult::new(SECTION_IDS[8], cases))
}

// --- section 10: covering nets and extraction agree ---

fn run_totally_bounded(config: &SuiteConfig, resolved: &Resolved) -> Result<SectionResult> {
    let mut cases = Vec::new();
    let cfg = &resolved.space;
    let policy = AnchorPolicy::CenterPlusBasis;

    // Positive instances: clustered sets get small nets and successful
    // extraction.
    for name in ["random-walk-damped", "geometric"] {
        let seq = builtin(name, config.dimension, config.extraction_horizon)?;
        let points = seq.prefix(config.extraction_horizon)?;
        let net = greedy_alpha_net(&points, config.net_alpha, config.net_cap, policy, cfg)?;
        let covered = net.status == NetStatus::NetFound;
        let radius_ok = covered && coverage_radius(&points, &net, cfg)? < config.net_alpha;
        let extraction = extract_s_quasi_cauchy_subsequence(
            &seq,
            1,
            cfg,
            &resolved.witnesses,
            config.extraction_horizon,
        )?;
        let ok = covered && radius_ok && extraction.succeeded();
        let status = if ok {
            CaseStatus::Pass
        } else {
            CaseStatus::UnexpectedViolation
        };
        cases.push(
            CaseResult::new(
                format!("bounded-{name}"),
                status,
                format!(
                    "net: {} balls covering {} points; extraction: {}",
                    net.balls.len(),
                    net.points,
                    if extraction.succeeded() { "succeeded" } else { "failed" }
                ),
            )
            .with_data(&net),
        );
    }

    // Negative instance: an arithmetic ramp exceeds any small ball budget,
    // with a pairwise separated packing witness, and extraction fails.
    {
        let count = config.net_cap + 36;
        let diag: Vec<NVector> = (1..=count)
            .map(|k| NVector::new(vec![k as f64; config.dimension]))
            .collect::<Result<_>>()?;
        let net = greedy_alpha_net(&diag, config.net_alpha, config.net_cap, policy, cfg)?;
        let mut separated = net.status == NetStatus::PackingExceeded;
        if separated {
            'outer: for (i, &a) in net.packing_witness.iter().enumerate() {
                let ball = Ball::with_policy(diag[a].clone(), config.net_alpha, policy, cfg)?;
                for &b in net.packing_witness.iter().skip(i + 1) {
                    if ball_value(&ball, &diag[b], cfg)? < config.net_alpha {
                        separated = false;
                        break 'outer;
                    }
                }
            }
        }
        let ramp_points: Vec<NVector> = (1..=config.extraction_horizon.min(512))
            .map(|k| {
                let mut coords = vec![0.0; config.dimension];
                coords[0] = k as f64;
                NVector::new(coords)
            })
            .collect::<Result<_>>()?;
        let ramp = SequenceSpec::explicit(ramp_points)?;
        let extraction = extract_s_quasi_cauchy_subsequence(
            &ramp,
            1,
            cfg,
            &resolved.witnesses,
            ramp.horizon(),
        )?;
        let ok = separated && !extraction.succeeded();
        let status = if ok {
            CaseStatus::Pass
        } else {
            CaseStatus::UnexpectedViolation
        };
        cases.push(
            CaseResult::new(
                "unbounded-ramp",
                status,
                format!(
                    "net status {:?} with {} separated witnesses; extraction {}",
                    net.status,
                    net.packing_witness.len(),
                    if extraction.succeeded() { "succeeded" } else { "failed" }
                ),
            )
            .with_data(&net),
        );
    }

    Ok(SectionResult::new(SECTION_IDS[9], cases))
}

/// Runs the full ten-section suite.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    let resolved = resolve(config)?;
    let master = Lcg::new(config.seed);

    let sections = vec![
        run_norm_axioms(config, &master)?,
        run_cauchy_binet(&master)?,
        run_telescoping(config, &resolved)?,
        run_verdict_chain(config, &resolved)?,
        run_s_ward_implies_ward(config, &resolved)?,
        run_s_ward_implies_continuous(config, &resolved)?,
        run_uniform_implies_s_ward(config, &resolved)?,
        run_uniform_limit(config, &resolved)?,
        run_compact_image(config, &resolved)?,
        run_totally_bounded(config, &resolved)?,
    ];
    debug_assert_eq!(sections.len(), SECTION_IDS.len());

    let summary = SuiteSummary {
        sections: sections.len(),
        cases: sections.iter().map(|s| s.cases.len()).sum(),
        pass: sections.iter().map(|s| s.pass).sum(),
        expected_violations: sections.iter().map(|s| s.expected_violations).sum(),
        unexpected_violations: sections.iter().map(|s| s.unexpected_violations).sum(),
        skipped: sections.iter().map(|s| s.skipped).sum(),
    };
    Ok(SuiteReport {
        tool: ToolInfo {
            name: "nward",
            version: env!("CARGO_PKG_VERSION"),
        },
        config: config.clone(),
        sections,
        summary,
    })
}
