//! Function probes: difference preservation, sequential continuity,
//! uniform-modulus estimation, and uniform limits.
//!
//! Functions map R^d to R^d and are built from a small closed grammar so
//! every probe input is reproducible from a structured config. The central
//! probe asks whether a function preserves small shift-s differences: for
//! each corpus sequence whose own shift-s profile is not violated, the
//! image sequence is classified at the same shift and tolerance. Witness
//! tuples are transported to the image side through the zero-based
//! difference map w -> f(w) - f(0); transported tuples that lose
//! independence are excluded and reported.

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{
    convergence_profile_points, difference_profile_points, verdict_for_profile, Verdict,
    VerdictStatus,
};
use crate::error::{Error, Result};
use crate::rng::Lcg;
use crate::sequence::SequenceSpec;
use crate::space::{NVector, SpaceConfig};
use crate::witness::{WitnessSet, WITNESS_INDEPENDENCE_TOL};

/// Function grammar: endomorphisms of R^d closed under composition.
#[derive(Clone, Debug)]
pub enum FunctionSpec {
    /// x -> M x with a row-major square matrix.
    Linear { matrix: Vec<Vec<f64>> },
    /// x -> M x + b.
    Affine {
        matrix: Vec<Vec<f64>>,
        offset: Vec<f64>,
    },
    /// Coordinatewise square: continuous everywhere, uniformly continuous
    /// only on bounded sets.
    CoordinateSquare,
    /// Coordinatewise clamp to [-bound, bound]; 1-Lipschitz.
    LipschitzClip { bound: f64 },
    /// x -> factor * x.
    Scale { factor: f64 },
    /// Stages applied first-to-last.
    Compose { stages: Vec<FunctionSpec> },
}

impl FunctionSpec {
    pub fn identity() -> Self {
        FunctionSpec::Scale { factor: 1.0 }
    }

    pub fn name(&self) -> String {
        match self {
            FunctionSpec::Linear { .. } => "linear".into(),
            FunctionSpec::Affine { .. } => "affine".into(),
            FunctionSpec::CoordinateSquare => "coordinate-square".into(),
            FunctionSpec::LipschitzClip { bound } => format!("lipschitz-clip({bound})"),
            FunctionSpec::Scale { factor } => format!("scale({factor})"),
            FunctionSpec::Compose { stages } => {
                let names: Vec<String> = stages.iter().map(|s| s.name()).collect();
                format!("compose({})", names.join(" -> "))
            }
        }
    }

    pub fn validate(&self, dimension: usize) -> Result<()> {
        let check_matrix = |matrix: &Vec<Vec<f64>>| -> Result<()> {
            if matrix.len() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    got: matrix.len(),
                });
            }
            for row in matrix {
                if row.len() != dimension {
                    return Err(Error::DimensionMismatch {
                        expected: dimension,
                        got: row.len(),
                    });
                }
                for &v in row {
                    if !v.is_finite() {
                        return Err(Error::InvalidParameter(
                            "matrix entries must be finite".into(),
                        ));
                    }
                }
            }
            Ok(())
        };
        match self {
            FunctionSpec::Linear { matrix } => check_matrix(matrix),
            FunctionSpec::Affine { matrix, offset } => {
                check_matrix(matrix)?;
                if offset.len() != dimension {
                    return Err(Error::DimensionMismatch {
                        expected: dimension,
                        got: offset.len(),
                    });
                }
                for &v in offset {
                    if !v.is_finite() {
                        return Err(Error::InvalidParameter(
                            "offset entries must be finite".into(),
                        ));
                    }
                }
                Ok(())
            }
            FunctionSpec::CoordinateSquare => Ok(()),
            FunctionSpec::LipschitzClip { bound } => {
                if !bound.is_finite() || *bound < 0.0 {
                    return Err(Error::InvalidParameter(
                        "clip bound must be finite and non-negative".into(),
                    ));
                }
                Ok(())
            }
            FunctionSpec::Scale { factor } => {
                if !factor.is_finite() {
                    return Err(Error::InvalidParameter("scale factor must be finite".into()));
                }
                Ok(())
            }
            FunctionSpec::Compose { stages } => {
                if stages.is_empty() {
                    return Err(Error::InvalidParameter("empty composition".into()));
                }
                for s in stages {
                    s.validate(dimension)?;
                }
                Ok(())
            }
        }
    }

    /// Applies the function; the input dimension fixes the shape.
    pub fn apply(&self, x: &NVector) -> Result<NVector> {
        let d = x.dim();
        let out = match self {
            FunctionSpec::Linear { matrix } => apply_matrix(matrix, x, d, None)?,
            FunctionSpec::Affine { matrix, offset } => apply_matrix(matrix, x, d, Some(offset))?,
            FunctionSpec::CoordinateSquare => {
                NVector::new(x.coords().iter().map(|&c| c * c).collect())?
            }
            FunctionSpec::LipschitzClip { bound } => NVector::new(
                x.coords()
                    .iter()
                    .map(|&c| c.clamp(-bound, *bound))
                    .collect(),
            )?,
            FunctionSpec::Scale { factor } => x.scale(*factor),
            FunctionSpec::Compose { stages } => {
                let mut current = x.clone();
                for stage in stages {
                    current = stage.apply(&current)?;
                }
                current
            }
        };
        if out.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: out.dim(),
            });
        }
        Ok(out)
    }

    /// Structured form accepted back by [`function_from_table`].
    pub fn to_table(&self) -> toml::Table {
        let mut t = toml::Table::new();
        let float_row =
            |row: &[f64]| toml::Value::Array(row.iter().map(|&v| toml::Value::Float(v)).collect());
        match self {
            FunctionSpec::Linear { matrix } => {
                t.insert("family".into(), "linear".into());
                t.insert(
                    "matrix".into(),
                    toml::Value::Array(matrix.iter().map(|r| float_row(r)).collect()),
                );
            }
            FunctionSpec::Affine { matrix, offset } => {
                t.insert("family".into(), "affine".into());
                t.insert(
                    "matrix".into(),
                    toml::Value::Array(matrix.iter().map(|r| float_row(r)).collect()),
                );
                t.insert("offset".into(), float_row(offset));
            }
            FunctionSpec::CoordinateSquare => {
                t.insert("family".into(), "coordinate-square".into());
            }
            FunctionSpec::LipschitzClip { bound } => {
                t.insert("family".into(), "lipschitz-clip".into());
                t.insert("bound".into(), toml::Value::Float(*bound));
            }
            FunctionSpec::Scale { factor } => {
                t.insert("family".into(), "scale".into());
                t.insert("factor".into(), toml::Value::Float(*factor));
            }
            FunctionSpec::Compose { stages } => {
                t.insert("family".into(), "compose".into());
                t.insert(
                    "stages".into(),
                    toml::Value::Array(
                        stages
                            .iter()
                            .map(|s| toml::Value::Table(s.to_table()))
                            .collect(),
                    ),
                );
            }
        }
        t
    }
}

fn apply_matrix(
    matrix: &[Vec<f64>],
    x: &NVector,
    d: usize,
    offset: Option<&Vec<f64>>,
) -> Result<NVector> {
    if matrix.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: matrix.len(),
        });
    }
    let mut out = Vec::with_capacity(d);
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: row.len(),
            });
        }
        let mut acc = 0.0;
        for (a, b) in row.iter().zip(x.coords()) {
            acc += a * b;
        }
        if let Some(off) = offset {
            acc += off[i];
        }
        out.push(acc);
    }
    NVector::new(out)
}

fn matrix_value(value: &toml::Value, context: &str) -> Result<Vec<Vec<f64>>> {
    let rows = value.as_array().ok_or_else(|| {
        Error::InvalidParameter(format!("{context} must be an array of rows"))
    })?;
    rows.iter().map(|row| row_value(row, context)).collect()
}

fn row_value(value: &toml::Value, context: &str) -> Result<Vec<f64>> {
    let arr = value
        .as_array()
        .ok_or_else(|| Error::InvalidParameter(format!("{context} row must be an array")))?;
    arr.iter()
        .map(|v| match v {
            toml::Value::Float(f) => Ok(*f),
            toml::Value::Integer(i) => Ok(*i as f64),
            other => Err(Error::InvalidParameter(format!(
                "{context} entries must be numbers, got {other}"
            ))),
        })
        .collect()
}

fn get_number(table: &toml::Table, key: &str) -> Result<Option<f64>> {
    match table.get(key) {
        None => Ok(None),
        Some(toml::Value::Float(f)) => Ok(Some(*f)),
        Some(toml::Value::Integer(i)) => Ok(Some(*i as f64)),
        Some(other) => Err(Error::InvalidParameter(format!(
            "{key} must be a number, got {other}"
        ))),
    }
}

/// Names accepted by [`function_from_table`].
pub fn function_names() -> &'static [&'static str] {
    &[
        "linear",
        "affine",
        "coordinate-square",
        "lipschitz-clip",
        "scale",
        "compose",
    ]
}

/// Builds a function from a structured table with a `family` tag.
pub fn function_from_table(table: &toml::Table, dimension: usize) -> Result<FunctionSpec> {
    let family = table
        .get("family")
        .and_then(|v| v.as_str())
        .ok_or_else(|| Error::InvalidParameter("function table needs a \"family\" string".into()))?;
    let allowed: &[&str] = match family {
        "linear" => &["matrix"],
        "affine" => &["matrix", "offset"],
        "coordinate-square" => &[],
        "lipschitz-clip" => &["bound"],
        "scale" => &["factor"],
        "compose" => &["stages"],
        other => {
            return Err(Error::UnknownCatalog(format!(
                "{other} (known: {})",
                function_names().join(", ")
            )))
        }
    };
    for key in table.keys() {
        if key != "family" && !allowed.contains(&key.as_str()) {
            return Err(Error::InvalidParameter(format!(
                "unknown parameter {key:?} for {family}"
            )));
        }
    }
    let spec = match family {
        "linear" => FunctionSpec::Linear {
            matrix: matrix_value(
                table
                    .get("matrix")
                    .ok_or_else(|| Error::InvalidParameter("linear needs \"matrix\"".into()))?,
                "linear.matrix",
            )?,
        },
        "affine" => FunctionSpec::Affine {
            matrix: matrix_value(
                table
                    .get("matrix")
                    .ok_or_else(|| Error::InvalidParameter("affine needs \"matrix\"".into()))?,
                "affine.matrix",
            )?,
            offset: row_value(
                table
                    .get("offset")
                    .ok_or_else(|| Error::InvalidParameter("affine needs \"offset\"".into()))?,
                "affine.offset",
            )?,
        },
        "coordinate-square" => FunctionSpec::CoordinateSquare,
        "lipschitz-clip" => FunctionSpec::LipschitzClip {
            bound: get_number(table, "bound")?.unwrap_or(1.0),
        },
        "scale" => FunctionSpec::Scale {
            factor: get_number(table, "factor")?
                .ok_or_else(|| Error::InvalidParameter("scale needs \"factor\"".into()))?,
        },
        "compose" => {
            let stages = table
                .get("stages")
                .and_then(|v| v.as_array())
                .ok_or_else(|| {
                    Error::InvalidParameter("compose needs a \"stages\" array".into())
                })?;
            let parsed: Result<Vec<FunctionSpec>> = stages
                .iter()
                .map(|v| {
                    let t = v.as_table().ok_or_else(|| {
                        Error::InvalidParameter("compose stages must be tables".into())
                    })?;
                    function_from_table(t, dimension)
                })
                .collect();
            FunctionSpec::Compose { stages: parsed? }
        }
        _ => unreachable!("family validated above"),
    };
    spec.validate(dimension)?;
    Ok(spec)
}

/// Applies a function pointwise over the full horizon, returning an
/// explicit stored sequence.
pub fn image_sequence(f: &FunctionSpec, seq: &SequenceSpec) -> Result<SequenceSpec> {
    f.validate(seq.dimension())?;
    let points = seq.prefix(seq.horizon())?;
    let images: Result<Vec<NVector>> = points.iter().map(|x| f.apply(x)).collect();
    SequenceSpec::explicit(images?)
}

/// Witness tuples transported through w -> f(w) - f(0), with tuples that
/// lose independence excluded.
pub struct TransportedWitnesses {
    pub set: WitnessSet,
    pub excluded: Vec<usize>,
}

/// Transports a witness set to the image side. Errors if every transported
/// tuple is degenerate, since no image measurement is possible.
pub fn transport_witnesses(
    f: &FunctionSpec,
    witnesses: &WitnessSet,
    cfg: &SpaceConfig,
) -> Result<TransportedWitnesses> {
    let origin = f.apply(&NVector::zeros(cfg.dimension))?;
    let mut kept = Vec::new();
    let mut excluded = Vec::new();
    for (index, tuple) in witnesses.tuples().iter().enumerate() {
        let image: Result<Vec<NVector>> = tuple.iter().map(|w| Ok(&f.apply(w)? - &origin)).collect();
        let image = image?;
        match crate::nnorm::singular_value_extremes(&image) {
            Ok((sigma_min, sigma_max))
                if sigma_max > 0.0 && sigma_min > WITNESS_INDEPENDENCE_TOL * sigma_max =>
            {
                kept.push(image);
            }
            _ => excluded.push(index),
        }
    }
    if kept.is_empty() {
        return Err(Error::Precondition(format!(
            "all {} witness tuples degenerate under {}",
            witnesses.len(),
            f.name()
        )));
    }
    Ok(TransportedWitnesses {
        set: WitnessSet::explicit(kept, cfg)?,
        excluded,
    })
}

/// Per-member outcome of a corpus probe.
#[derive(Clone, Debug, Serialize)]
pub struct MemberOutcome {
    pub member: String,
    pub tested: bool,
    pub exclusion: Option<String>,
    pub source_status: Option<VerdictStatus>,
    pub image_verdict: Option<Verdict>,
    pub epsilon_split: Option<EpsilonSplit>,
}

/// Three-term bound at the final approximation stage: the image difference
/// is bounded by closeness at the shifted index, the approximant's own
/// difference, and closeness at the base index.
#[derive(Clone, Debug, Serialize)]
pub struct EpsilonSplit {
    pub limit_gap_at_shift: f64,
    pub approximant_difference: f64,
    pub limit_gap_at_base: f64,
    pub image_difference: f64,
    pub bound_residual: f64,
}

/// Aggregate result of one function probe.
#[derive(Clone, Debug, Serialize)]
pub struct ContinuityReport {
    pub property: String,
    pub function: String,
    pub s: Option<usize>,
    #[serde(rename = "H")]
    pub horizon: usize,
    pub tau: f64,
    pub excluded_witness_tuples: Vec<usize>,
    pub degenerate_witnesses: bool,
    pub members: Vec<MemberOutcome>,
    pub verdict: Verdict,
}

fn aggregate_members(members: &[MemberOutcome]) -> Verdict {
    let mut tail_max = f64::NEG_INFINITY;
    let mut tail_min = f64::INFINITY;
    let mut tested = 0usize;
    let mut satisfied = 0usize;
    let mut violated: Option<&Verdict> = None;
    for m in members {
        if let Some(v) = &m.image_verdict {
            tested += 1;
            tail_max = tail_max.max(v.tail_max);
            tail_min = tail_min.min(v.tail_min);
            match v.status {
                VerdictStatus::Satisfied => satisfied += 1,
                VerdictStatus::Violated => {
                    if violated.map_or(true, |w| v.tail_max > w.tail_max) {
                        violated = Some(v);
                    }
                }
                VerdictStatus::Inconclusive => {}
            }
        }
    }
    if tested == 0 {
        return Verdict {
            status: VerdictStatus::Inconclusive,
            witness_k: None,
            witness_tuple_index: None,
            witness_value: None,
            tail_max: 0.0,
            tail_min: 0.0,
        };
    }
    if let Some(v) = violated {
        return v.clone();
    }
    Verdict {
        status: if satisfied == tested {
            VerdictStatus::Satisfied
        } else {
            VerdictStatus::Inconclusive
        },
        witness_k: None,
        witness_tuple_index: None,
        witness_value: None,
        tail_max,
        tail_min,
    }
}

fn check_probe_inputs(
    f: &FunctionSpec,
    corpus: &[&SequenceSpec],
    s: usize,
    cfg: &SpaceConfig,
    horizon: usize,
    tau: f64,
) -> Result<()> {
    cfg.validate()?;
    f.validate(cfg.dimension)?;
    if corpus.is_empty() {
        return Err(Error::InvalidParameter("empty corpus".into()));
    }
    if s < 1 {
        return Err(Error::InvalidParameter("shift s must be at least 1".into()));
    }
    if horizon < 4 * s {
        return Err(Error::Precondition(format!(
            "horizon {horizon} below 4 * shift = {}",
            4 * s
        )));
    }
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Error::InvalidParameter(
            "tolerance tau must be positive and finite".into(),
        ));
    }
    for seq in corpus {
        if seq.dimension() != cfg.dimension {
            return Err(Error::DimensionMismatch {
                expected: cfg.dimension,
                got: seq.dimension(),
            });
        }
        if seq.horizon() < horizon {
            return Err(Error::BeyondHorizon {
                index: horizon,
                horizon: seq.horizon(),
            });
        }
    }
    Ok(())
}

/// Tests whether `f` preserves shift-s smallness of differences across the
/// corpus. Members whose own shift-s profile is violated cannot witness
/// anything about `f` and are excluded from testing.
pub fn test_s_ward(
    f: &FunctionSpec,
    corpus: &[&SequenceSpec],
    s: usize,
    cfg: &SpaceConfig,
    witnesses: &WitnessSet,
    horizon: usize,
    tau: f64,
) -> Result<ContinuityReport> {
    check_probe_inputs(f, corpus, s, cfg, horizon, tau)?;
    let transported = transport_witnesses(f, witnesses, cfg)?;

    let members: Result<Vec<MemberOutcome>> = corpus
        .par_iter()
        .map(|seq| {
            let points = seq.prefix(horizon)?;
            let source = difference_profile_points(&points, s, witnesses, cfg)?;
            let source_verdict = verdict_for_profile(&source, horizon, tau)?;
            if source_verdict.is_violated() {
                return Ok(MemberOutcome {
                    member: seq.name(),
                    tested: false,
                    exclusion: Some("source-violated".into()),
                    source_status: Some(source_verdict.status),
                    image_verdict: None,
                    epsilon_split: None,
                });
            }
            let images: Result<Vec<NVector>> = points.iter().map(|x| f.apply(x)).collect();
            let profile = difference_profile_points(&images?, s, &transported.set, cfg)?;
            let image_verdict = verdict_for_profile(&profile, horizon, tau)?;
            Ok(MemberOutcome {
                member: seq.name(),
                tested: true,
                exclusion: None,
                source_status: Some(source_verdict.status),
                image_verdict: Some(image_verdict),
                epsilon_split: None,
            })
        })
        .collect();
    let members = members?;
    let verdict = aggregate_members(&members);
    Ok(ContinuityReport {
        property: if s == 1 { "ward".into() } else { "s-ward".into() },
        function: f.name(),
        s: Some(s),
        horizon,
        tau,
        degenerate_witnesses: !transported.excluded.is_empty(),
        excluded_witness_tuples: transported.excluded,
        members,
        verdict,
    })
}

/// Unit-shift specialization of [`test_s_ward`].
pub fn test_ward(
    f: &FunctionSpec,
    corpus: &[&SequenceSpec],
    cfg: &SpaceConfig,
    witnesses: &WitnessSet,
    horizon: usize,
    tau: f64,
) -> Result<ContinuityReport> {
    test_s_ward(f, corpus, 1, cfg, witnesses, horizon, tau)
}

/// Approach paths for sequential continuity at a point: one per basis
/// direction plus the diagonal, each x_k = zeta + u / k.
fn approach_paths(zeta: &NVector, d: usize, horizon: usize) -> Result<Vec<(String, Vec<NVector>)>> {
    let mut directions: Vec<(String, NVector)> = (0..d)
        .map(|axis| Ok((format!("path-e{}", axis + 1), NVector::basis(d, axis)?)))
        .collect::<Result<_>>()?;
    let diag = NVector::new(vec![1.0 / d as f64; d])?;
    directions.push(("path-diagonal".into(), diag));
    directions
        .into_iter()
        .map(|(name, u)| {
            let path: Vec<NVector> = (1..=horizon)
                .map(|k| zeta + &u.scale(1.0 / k as f64))
                .collect();
            Ok((name, path))
        })
        .collect()
}

/// Tests convergence of image sequences along built-in approach paths to
/// `zeta`: every image path must converge to f(zeta).
pub fn test_sequential_continuity(
    f: &FunctionSpec,
    zeta: &NVector,
    cfg: &SpaceConfig,
    witnesses: &WitnessSet,
    horizon: usize,
    tau: f64,
) -> Result<ContinuityReport> {
    cfg.validate()?;
    f.validate(cfg.dimension)?;
    cfg.check_vector(zeta)?;
    if horizon < 4 {
        return Err(Error::Precondition(format!(
            "horizon {horizon} too short for a tail window"
        )));
    }
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Error::InvalidParameter(
            "tolerance tau must be positive and finite".into(),
        ));
    }
    let transported = transport_witnesses(f, witnesses, cfg)?;
    let target = f.apply(zeta)?;
    let members: Result<Vec<MemberOutcome>> = approach_paths(zeta, cfg.dimension, horizon)?
        .into_par_iter()
        .map(|(name, path)| {
            let images: Result<Vec<NVector>> = path.iter().map(|x| f.apply(x)).collect();
            let profile = convergence_profile_points(&images?, &target, &transported.set, cfg)?;
            let verdict = verdict_for_profile(&profile, horizon, tau)?;
            Ok(MemberOutcome {
                member: name,
                tested: true,
                exclusion: None,
                source_status: None,
                image_verdict: Some(verdict),
                epsilon_split: None,
            })
        })
        .collect();
    let members = members?;
    let verdict = aggregate_members(&members);
    Ok(ContinuityReport {
        property: "sequential-continuity".into(),
        function: f.name(),
        s: None,
        horizon,
        tau,
        degenerate_witnesses: !transported.excluded.is_empty(),
        excluded_witness_tuples: transported.excluded,
        members,
        verdict,
    })
}

/// One row of a modulus table: the largest image distance observed over
/// sampled pairs at source distance at most `delta`.
#[derive(Clone, Debug, Serialize)]
pub struct ModulusRow {
    pub delta: f64,
    pub sup_image_distance: f64,
    pub pairs: usize,
}

/// Empirical modulus of continuity over a box.
#[derive(Clone, Debug, Serialize)]
pub struct ModulusTable {
    pub function: String,
    pub rows: Vec<ModulusRow>,
}

impl ModulusTable {
    /// Rows are built over nested pair sets, so the table must be
    /// nondecreasing in delta up to the given slack.
    pub fn is_monotone(&self, slack: f64) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[1].sup_image_distance >= w[0].sup_image_distance - slack)
    }

    /// Largest delta whose sup image distance stays below eps, if any.
    pub fn delta_for(&self, eps: f64) -> Option<f64> {
        self.rows
            .iter()
            .rev()
            .find(|r| r.sup_image_distance < eps)
            .map(|r| r.delta)
    }
}

/// Dyadic deltas used by [`estimate_uniform_modulus`], ascending.
pub fn modulus_deltas() -> Vec<f64> {
    (0..=6).rev().map(|j| 2f64.powi(-j)).collect()
}

const MODULUS_DIRECTIONS: usize = 64;
const MODULUS_MAX_BASE_POINTS: usize = 4096;
const MODULUS_SEED: u64 = 0x9e3779b97f4a7c15;

/// Estimates a modulus of continuity for `f` over the box [lo, hi]:
/// for each dyadic delta, samples pairs (x, x + delta * u) with u
/// normalized to unit witness-reduced length, and records the largest
/// image-side distance. Pair sets nest across deltas (the running maximum
/// is carried), so rows are nondecreasing by construction.
pub fn estimate_uniform_modulus(
    f: &FunctionSpec,
    lo: &NVector,
    hi: &NVector,
    grid: usize,
    cfg: &SpaceConfig,
    witnesses: &WitnessSet,
) -> Result<ModulusTable> {
    cfg.validate()?;
    f.validate(cfg.dimension)?;
    cfg.check_vector(lo)?;
    cfg.check_vector(hi)?;
    if grid < 2 {
        return Err(Error::InvalidParameter("grid must be at least 2".into()));
    }
    for (l, h) in lo.coords().iter().zip(hi.coords()) {
        if l >= h {
            return Err(Error::InvalidParameter(format!(
                "box is empty on some coordinate: [{l}, {h}]"
            )));
        }
    }
    let transported = transport_witnesses(f, witnesses, cfg)?;
    let d = cfg.dimension;
    let mut rng = Lcg::new(MODULUS_SEED);

    // Base points: the full lattice when small enough, otherwise uniform
    // draws from the box.
    let lattice_size = (grid as f64).powi(d as i32);
    let mut base_points: Vec<NVector> = Vec::new();
    if lattice_size <= MODULUS_MAX_BASE_POINTS as f64 {
        let mut idx = vec![0usize; d];
        loop {
            let coords: Vec<f64> = (0..d)
                .map(|i| {
                    let t = idx[i] as f64 / (grid - 1) as f64;
                    lo.coords()[i] + t * (hi.coords()[i] - lo.coords()[i])
                })
                .collect();
            base_points.push(NVector::new(coords)?);
            let mut i = d;
            let mut done = true;
            while i > 0 {
                i -= 1;
                if idx[i] + 1 < grid {
                    idx[i] += 1;
                    for j in idx.iter_mut().skip(i + 1) {
                        *j = 0;
                    }
                    done = false;
                    break;
                }
            }
            if done {
                break;
            }
        }
    } else {
        for _ in 0..MODULUS_MAX_BASE_POINTS {
            let coords: Vec<f64> = (0..d)
                .map(|i| {
                    lo.coords()[i] + rng.next_unit() * (hi.coords()[i] - lo.coords()[i])
                })
                .collect();
            base_points.push(NVector::new(coords)?);
        }
    }

    // Directions with unit reduced length against the source witnesses.
    let mut directions = Vec::with_capacity(MODULUS_DIRECTIONS);
    while directions.len() < MODULUS_DIRECTIONS {
        let raw = NVector::new((0..d).map(|_| rng.next_symmetric()).collect())?;
        let (len, _) = crate::classify::reduce_probe(&raw, witnesses, cfg)?;
        if len > 1e-6 {
            directions.push(raw.scale(1.0 / len));
        }
    }

    let mut rows = Vec::new();
    let mut running = 0.0f64;
    for delta in modulus_deltas() {
        let sup = base_points
            .par_iter()
            .map(|x| {
                let fx = f.apply(x)?;
                let mut best = 0.0f64;
                for u in &directions {
                    let y = x + &u.scale(delta);
                    let fy = f.apply(&y)?;
                    let diff = &fx - &fy;
                    let (value, _) =
                        crate::classify::reduce_probe(&diff, &transported.set, cfg)?;
                    best = best.max(value);
                }
                Ok(best)
            })
            .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))?;
        running = running.max(sup);
        rows.push(ModulusRow {
            delta,
            sup_image_distance: running,
            pairs: base_points.len() * MODULUS_DIRECTIONS,
        });
    }
    Ok(ModulusTable {
        function: f.name(),
        rows,
    })
}

/// Tests a uniform-limit configuration: every approximant and the limit are
/// probed for shift-s difference preservation over the corpus, and the
/// three-term bound at the final stage is checked numerically on each
/// tested member.
pub fn test_uniform_limit(
    f_stages: &[FunctionSpec],
    f_limit: &FunctionSpec,
    corpus: &[&SequenceSpec],
    s: usize,
    cfg: &SpaceConfig,
    witnesses: &WitnessSet,
    horizon: usize,
    tau: f64,
) -> Result<ContinuityReport> {
    check_probe_inputs(f_limit, corpus, s, cfg, horizon, tau)?;
    if f_stages.is_empty() {
        return Err(Error::InvalidParameter("empty approximant list".into()));
    }
    for stage in f_stages {
        stage.validate(cfg.dimension)?;
    }
    let transported = transport_witnesses(f_limit, witnesses, cfg)?;
    let last = f_stages.last().expect("nonempty approximant list");

    let members: Result<Vec<MemberOutcome>> = corpus
        .par_iter()
        .map(|seq| {
            let points = seq.prefix(horizon)?;
            let source = difference_profile_points(&points, s, witnesses, cfg)?;
            let source_verdict = verdict_for_profile(&source, horizon, tau)?;
            if source_verdict.is_violated() {
                return Ok(MemberOutcome {
                    member: seq.name(),
                    tested: false,
                    exclusion: Some("source-violated".into()),
                    source_status: Some(source_verdict.status),
                    image_verdict: None,
                    epsilon_split: None,
                });
            }
            let limit_images: Result<Vec<NVector>> = points.iter().map(|x| f_limit.apply(x)).collect();
            let limit_images = limit_images?;
            let last_images: Result<Vec<NVector>> = points.iter().map(|x| last.apply(x)).collect();
            let last_images = last_images?;

            let limit_profile =
                difference_profile_points(&limit_images, s, &transported.set, cfg)?;
            let image_verdict = verdict_for_profile(&limit_profile, horizon, tau)?;

            // Three-term split over the tail window, all reduced with the
            // limit's transported witnesses.
            let start = horizon.div_ceil(2);
            let mut gap_shift = 0.0f64;
            let mut gap_base = 0.0f64;
            let mut approx_diff = 0.0f64;
            let mut image_diff = 0.0f64;
            let mut residual = 0.0f64;
            for k in start..=horizon - s {
                let g_base = crate::classify::reduce_probe(
                    &(&last_images[k - 1] - &limit_images[k - 1]),
                    &transported.set,
                    cfg,
                )?
                .0;
                let g_shift = crate::classify::reduce_probe(
                    &(&last_images[k + s - 1] - &limit_images[k + s - 1]),
                    &transported.set,
                    cfg,
                )?
                .0;
                let a_diff = crate::classify::reduce_probe(
                    &(&last_images[k + s - 1] - &last_images[k - 1]),
                    &transported.set,
                    cfg,
                )?
                .0;
                let i_diff = crate::classify::reduce_probe(
                    &(&limit_images[k + s - 1] - &limit_images[k - 1]),
                    &transported.set,
                    cfg,
                )?
                .0;
                gap_base = gap_base.max(g_base);
                gap_shift = gap_shift.max(g_shift);
                approx_diff = approx_diff.max(a_diff);
                image_diff = image_diff.max(i_diff);
                // Per-index triangle bound; positive excess is a violation
                // beyond rounding.
                let excess = i_diff - (g_shift + a_diff + g_base);
                residual = residual.max(excess / (1.0 + i_diff));
            }
            Ok(MemberOutcome {
                member: seq.name(),
                tested: true,
                exclusion: None,
                source_status: Some(source_verdict.status),
                image_verdict: Some(image_verdict),
                epsilon_split: Some(EpsilonSplit {
                    limit_gap_at_shift: gap_shift,
                    approximant_difference: approx_diff,
                    limit_gap_at_base: gap_base,
                    image_difference: image_diff,
                    bound_residual: residual,
                }),
            })
        })
        .collect();
    let members = members?;
    let verdict = aggregate_members(&members);
    Ok(ContinuityReport {
        property: "uniform-limit".into(),
        function: f_limit.name(),
        s: Some(s),
        horizon,
        tau,
        degenerate_witnesses: !transported.excluded.is_empty(),
        excluded_witness_tuples: transported.excluded,
        members,
        verdict,
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

    fn rotation() -> FunctionSpec {
        let c = std::f64::consts::FRAC_1_SQRT_2;
        FunctionSpec::Linear {
            matrix: vec![vec![c, -c], vec![c, c]],
        }
    }

    #[test]
    fn grammar_applies_pointwise() {
        let x = NVector::new(vec![2.0, -3.0]).unwrap();
        assert_eq!(
            FunctionSpec::CoordinateSquare.apply(&x).unwrap().coords(),
            &[4.0, 9.0]
        );
        assert_eq!(
            FunctionSpec::LipschitzClip { bound: 1.5 }
                .apply(&x)
                .unwrap()
                .coords(),
            &[1.5, -1.5]
        );
        let composed = FunctionSpec::Compose {
            stages: vec![
                FunctionSpec::Scale { factor: 2.0 },
                FunctionSpec::LipschitzClip { bound: 3.0 },
            ],
        };
        assert_eq!(composed.apply(&x).unwrap().coords(), &[3.0, -3.0]);
    }

    #[test]
    fn function_tables_round_trip() {
        let f = FunctionSpec::Compose {
            stages: vec![
                rotation(),
                FunctionSpec::Affine {
                    matrix: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
                    offset: vec![0.5, -0.5],
                },
            ],
        };
        let back = function_from_table(&f.to_table(), 2).unwrap();
        let x = NVector::new(vec![1.0, 2.0]).unwrap();
        assert_eq!(back.apply(&x).unwrap(), f.apply(&x).unwrap());
        assert!(function_from_table(&toml::Table::new(), 2).is_err());
    }

    #[test]
    fn transport_keeps_independent_tuples() {
        let t = transport_witnesses(&rotation(), &witnesses(), &cfg()).unwrap();
        assert_eq!(t.set.len(), 2);
        assert!(t.excluded.is_empty());

        // Rank-one map collapses the second basis direction.
        let collapse = FunctionSpec::Linear {
            matrix: vec![vec![1.0, 0.0], vec![0.0, 0.0]],
        };
        let t = transport_witnesses(&collapse, &witnesses(), &cfg()).unwrap();
        assert_eq!(t.set.len(), 1);
        assert_eq!(t.excluded, vec![1]);

        // The zero map degenerates every tuple.
        let zero = FunctionSpec::Scale { factor: 0.0 };
        assert!(transport_witnesses(&zero, &witnesses(), &cfg()).is_err());
    }

    #[test]
    fn affine_transport_ignores_offset() {
        let shift = FunctionSpec::Affine {
            matrix: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            offset: vec![10.0, -4.0],
        };
        let t = transport_witnesses(&shift, &witnesses(), &cfg()).unwrap();
        assert_eq!(t.set.tuples(), witnesses().tuples());
    }

    #[test]
    fn linear_maps_preserve_small_differences() {
        let corpus = [seq("sqrt-ramp", 2000), seq("geometric", 2000)];
        let refs: Vec<&SequenceSpec> = corpus.iter().collect();
        let report =
            test_s_ward(&rotation(), &refs, 2, &cfg(), &witnesses(), 2000, 1e-1).unwrap();
        assert_eq!(report.verdict.status, VerdictStatus::Satisfied);
        assert!(report.members.iter().all(|m| m.tested));
    }

    #[test]
    fn coordinate_square_breaks_ward_on_the_ramp() {
        let corpus = [seq("sqrt-ramp", 1000)];
        let refs: Vec<&SequenceSpec> = corpus.iter().collect();
        let report = test_ward(
            &FunctionSpec::CoordinateSquare,
            &refs,
            &cfg(),
            &witnesses(),
            1000,
            1e-2,
        )
        .unwrap();
        assert_eq!(report.verdict.status, VerdictStatus::Violated);
        // The squared ramp has unit-shift image differences exactly 1.
        let member = &report.members[0];
        let v = member.image_verdict.as_ref().unwrap();
        assert!((v.tail_max - 1.0).abs() < 1e-9);
    }

    #[test]
    fn source_violated_members_are_excluded() {
        let corpus = [seq("alternating", 1000), seq("geometric", 1000)];
        let refs: Vec<&SequenceSpec> = corpus.iter().collect();
        let report = test_ward(
            &FunctionSpec::identity(),
            &refs,
            &cfg(),
            &witnesses(),
            1000,
            1e-3,
        )
        .unwrap();
        let alt = &report.members[0];
        assert!(!alt.tested);
        assert_eq!(alt.exclusion.as_deref(), Some("source-violated"));
        assert_eq!(report.verdict.status, VerdictStatus::Satisfied);
    }

    #[test]
    fn sequential_continuity_holds_for_smooth_maps_at_a_point() {
        let zeta = NVector::new(vec![1.0, 0.0]).unwrap();
        let report = test_sequential_continuity(
            &FunctionSpec::CoordinateSquare,
            &zeta,
            &cfg(),
            &witnesses(),
            4000,
            1e-2,
        )
        .unwrap();
        assert_eq!(report.verdict.status, VerdictStatus::Satisfied);
        assert_eq!(report.members.len(), 3);
    }

    #[test]
    fn modulus_scales_with_slot_homogeneity() {
        let lo = NVector::new(vec![-2.0, -2.0]).unwrap();
        let hi = NVector::new(vec![2.0, 2.0]).unwrap();
        let id = estimate_uniform_modulus(
            &FunctionSpec::identity(),
            &lo,
            &hi,
            4,
            &cfg(),
            &witnesses(),
        )
        .unwrap();
        assert!(id.is_monotone(0.0));
        // Identity: image distance equals source distance, so each row sits
        // at its delta exactly.
        for row in &id.rows {
            assert!((row.sup_image_distance - row.delta).abs() < 1e-9 * row.delta);
        }
        let scaled = estimate_uniform_modulus(
            &FunctionSpec::Scale { factor: -3.0 },
            &lo,
            &hi,
            4,
            &cfg(),
            &witnesses(),
        )
        .unwrap();
        // Both the difference and the transported witness scale by |c|, so
        // the reduced image distance scales by |c|^n = 9.
        for (a, b) in id.rows.iter().zip(&scaled.rows) {
            let ratio = b.sup_image_distance / a.sup_image_distance;
            assert!((ratio - 9.0).abs() < 1e-9, "ratio {ratio}");
        }
    }

    #[test]
    fn uniform_limit_bound_holds() {
        let corpus = [seq("geometric", 2000), seq("random-walk-damped", 2000)];
        let refs: Vec<&SequenceSpec> = corpus.iter().collect();
        let limit = FunctionSpec::LipschitzClip { bound: 1.5 };
        let stages: Vec<FunctionSpec> = (1..=8)
            .map(|j| FunctionSpec::Compose {
                stages: vec![
                    FunctionSpec::LipschitzClip { bound: 1.5 },
                    FunctionSpec::Scale {
                        factor: 1.0 + 1.0 / j as f64,
                    },
                ],
            })
            .collect();
        let report = test_uniform_limit(
            &stages,
            &limit,
            &refs,
            1,
            &cfg(),
            &witnesses(),
            2000,
            1e-1,
        )
        .unwrap();
        assert_eq!(report.verdict.status, VerdictStatus::Satisfied);
        for m in &report.members {
            let split = m.epsilon_split.as_ref().unwrap();
            assert!(split.bound_residual <= 1e-12, "{}", split.bound_residual);
        }
    }
}
