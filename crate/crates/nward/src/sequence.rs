//! Sequence generators, forward differences, and the named catalog.
//!
//! A [`SequenceSpec`] is a lazily evaluated sequence x_1, x_2, ... in R^d
//! with an explicit finite horizon. Generators are pure functions of the
//! index (plus a pinned seed for the random walk), so evaluation is
//! reproducible and `prefix` can realize x_1..x_h in O(h) work even for
//! stateful families.
//!
//! The shift-s forward difference of a sequence is
//! `forward_difference(seq, s, k) = x_{k+s} - x_k`, which telescopes as a
//! sum of s unit-shift differences; [`telescoping_check`] measures the
//! floating-point residual of that identity.

use crate::error::{Error, Result};
use crate::space::NVector;

/// Built-in generator families.
///
/// All families are driven by 1-based indices. `axis` selects the
/// coordinate carrying the action; remaining coordinates stay zero.
#[derive(Clone, Debug)]
pub enum Family {
    /// x_k = (-1)^k * amplitude * e_axis. Bounded, never quasi-Cauchy.
    Alternating { amplitude: f64, axis: usize },
    /// x_k = scale * sqrt(k) * e_axis. Unbounded, quasi-Cauchy, not Cauchy.
    SqrtRamp { scale: f64, axis: usize },
    /// x_k = amplitude * (1 + 1/2 + ... + 1/k) * e_axis. Unbounded, with
    /// unit-shift differences shrinking like 1/k.
    HarmonicPartialSums { amplitude: f64, axis: usize },
    /// x_k = amplitude * ratio^k * e_axis.
    Geometric {
        ratio: f64,
        amplitude: f64,
        axis: usize,
    },
    /// x_k = value for every k.
    Constant { value: Vec<f64> },
    /// x_1 = 0, x_{k+1} = x_k + scale * (k+1)^(-damping) * xi_k with xi_k
    /// drawn coordinatewise from [-1, 1) by the pinned generator. Converges
    /// when damping > 1.
    RandomWalkDamped {
        seed: u64,
        scale: f64,
        damping: f64,
    },
    /// t_m = base_{ceil(m / s)}: every base term repeated s times in a row.
    RepeatInterleave { base: Box<Family>, s: usize },
}

impl Family {
    pub fn name(&self) -> String {
        match self {
            Family::Alternating { .. } => "alternating".into(),
            Family::SqrtRamp { .. } => "sqrt-ramp".into(),
            Family::HarmonicPartialSums { .. } => "harmonic-partial-sums".into(),
            Family::Geometric { .. } => "geometric".into(),
            Family::Constant { .. } => "constant".into(),
            Family::RandomWalkDamped { .. } => "random-walk-damped".into(),
            Family::RepeatInterleave { base, s } => {
                format!("repeat-interleave({}, s={s})", base.name())
            }
        }
    }

    /// Whether the family stays inside a fixed ball for all horizons.
    pub fn is_bounded(&self) -> bool {
        match self {
            Family::Alternating { .. } | Family::Constant { .. } => true,
            Family::Geometric { ratio, .. } => ratio.abs() <= 1.0,
            Family::RandomWalkDamped { damping, .. } => *damping > 1.0,
            Family::SqrtRamp { .. } | Family::HarmonicPartialSums { .. } => false,
            Family::RepeatInterleave { base, .. } => base.is_bounded(),
        }
    }

    fn validate(&self, dimension: usize) -> Result<()> {
        let check_axis = |axis: usize| -> Result<()> {
            if axis >= dimension {
                return Err(Error::InvalidParameter(format!(
                    "axis {axis} outside dimension {dimension}"
                )));
            }
            Ok(())
        };
        let check_finite = |label: &str, v: f64| -> Result<()> {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{label} must be finite")));
            }
            Ok(())
        };
        match self {
            Family::Alternating { amplitude, axis } => {
                check_finite("amplitude", *amplitude)?;
                check_axis(*axis)
            }
            Family::SqrtRamp { scale, axis } => {
                check_finite("scale", *scale)?;
                check_axis(*axis)
            }
            Family::HarmonicPartialSums { amplitude, axis } => {
                check_finite("amplitude", *amplitude)?;
                check_axis(*axis)
            }
            Family::Geometric {
                ratio,
                amplitude,
                axis,
            } => {
                check_finite("ratio", *ratio)?;
                check_finite("amplitude", *amplitude)?;
                check_axis(*axis)
            }
            Family::Constant { value } => {
                if value.len() != dimension {
                    return Err(Error::DimensionMismatch {
                        expected: dimension,
                        got: value.len(),
                    });
                }
                for &v in value {
                    check_finite("value entry", v)?;
                }
                Ok(())
            }
            Family::RandomWalkDamped { scale, damping, .. } => {
                check_finite("scale", *scale)?;
                check_finite("damping", *damping)?;
                if *damping <= 0.0 {
                    return Err(Error::InvalidParameter(
                        "damping must be positive".into(),
                    ));
                }
                Ok(())
            }
            Family::RepeatInterleave { base, s } => {
                if *s < 1 {
                    return Err(Error::InvalidParameter(
                        "repeat count s must be at least 1".into(),
                    ));
                }
                base.validate(dimension)
            }
        }
    }

    /// Canonical structured form, the inverse of [`catalog_sequence`] params.
    pub fn to_table(&self) -> toml::Table {
        let mut t = toml::Table::new();
        let f = toml::Value::Float;
        let int = |v: usize| toml::Value::Integer(v as i64);
        match self {
            Family::Alternating { amplitude, axis } => {
                t.insert("name".into(), "alternating".into());
                t.insert("amplitude".into(), f(*amplitude));
                t.insert("axis".into(), int(*axis));
            }
            Family::SqrtRamp { scale, axis } => {
                t.insert("name".into(), "sqrt-ramp".into());
                t.insert("scale".into(), f(*scale));
                t.insert("axis".into(), int(*axis));
            }
            Family::HarmonicPartialSums { amplitude, axis } => {
                t.insert("name".into(), "harmonic-partial-sums".into());
                t.insert("amplitude".into(), f(*amplitude));
                t.insert("axis".into(), int(*axis));
            }
            Family::Geometric {
                ratio,
                amplitude,
                axis,
            } => {
                t.insert("name".into(), "geometric".into());
                t.insert("ratio".into(), f(*ratio));
                t.insert("amplitude".into(), f(*amplitude));
                t.insert("axis".into(), int(*axis));
            }
            Family::Constant { value } => {
                t.insert("name".into(), "constant".into());
                t.insert(
                    "value".into(),
                    toml::Value::Array(value.iter().map(|&v| f(v)).collect()),
                );
            }
            Family::RandomWalkDamped {
                seed,
                scale,
                damping,
            } => {
                t.insert("name".into(), "random-walk-damped".into());
                t.insert("seed".into(), toml::Value::Integer(*seed as i64));
                t.insert("scale".into(), f(*scale));
                t.insert("damping".into(), f(*damping));
            }
            Family::RepeatInterleave { base, s } => {
                t.insert("name".into(), "repeat-interleave".into());
                t.insert("base".into(), toml::Value::Table(base.to_table()));
                t.insert("s".into(), int(*s));
            }
        }
        t
    }
}

#[derive(Clone, Debug)]
enum Kind {
    Family(Family),
    Explicit(std::sync::Arc<Vec<NVector>>),
    Combination {
        a: f64,
        b: f64,
        lhs: Box<SequenceSpec>,
        rhs: Box<SequenceSpec>,
    },
}

/// A finite-horizon sequence in R^d.
#[derive(Clone, Debug)]
pub struct SequenceSpec {
    kind: Kind,
    dimension: usize,
    horizon: usize,
}

impl SequenceSpec {
    pub fn from_family(family: Family, dimension: usize, horizon: usize) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        if horizon == 0 {
            return Err(Error::InvalidParameter("horizon must be positive".into()));
        }
        family.validate(dimension)?;
        Ok(Self {
            kind: Kind::Family(family),
            dimension,
            horizon,
        })
    }

    /// Wraps a stored list of points; the horizon is the list length.
    pub fn explicit(points: Vec<NVector>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidParameter("empty point list".into()));
        }
        let dimension = points[0].dim();
        for p in &points {
            if p.dim() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    got: p.dim(),
                });
            }
        }
        let horizon = points.len();
        Ok(Self {
            kind: Kind::Explicit(std::sync::Arc::new(points)),
            dimension,
            horizon,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn name(&self) -> String {
        match &self.kind {
            Kind::Family(f) => f.name(),
            Kind::Explicit(_) => "explicit".into(),
            Kind::Combination { a, b, lhs, rhs } => {
                format!("{a}*{} + {b}*{}", lhs.name(), rhs.name())
            }
        }
    }

    pub fn family(&self) -> Option<&Family> {
        match &self.kind {
            Kind::Family(f) => Some(f),
            _ => None,
        }
    }

    /// Whether every term over the horizon lies in a data-independent ball.
    /// Explicit sequences are finite, hence bounded.
    pub fn is_bounded(&self) -> bool {
        match &self.kind {
            Kind::Family(f) => f.is_bounded(),
            Kind::Explicit(_) => true,
            Kind::Combination { lhs, rhs, .. } => lhs.is_bounded() && rhs.is_bounded(),
        }
    }

    /// Term x_k for 1-based k within the horizon. Stateful families replay
    /// from the start, so prefer [`SequenceSpec::prefix`] in loops.
    pub fn eval(&self, k: usize) -> Result<NVector> {
        if k < 1 || k > self.horizon {
            return Err(Error::BeyondHorizon {
                index: k,
                horizon: self.horizon,
            });
        }
        Ok(match &self.kind {
            Kind::Family(f) => eval_family(f, k, self.dimension),
            Kind::Explicit(points) => points[k - 1].clone(),
            Kind::Combination { a, b, lhs, rhs } => {
                let l = lhs.eval(k)?.scale(*a);
                let r = rhs.eval(k)?.scale(*b);
                &l + &r
            }
        })
    }

    /// Realizes x_1..x_h in O(h) total work.
    pub fn prefix(&self, h: usize) -> Result<Vec<NVector>> {
        if h < 1 || h > self.horizon {
            return Err(Error::BeyondHorizon {
                index: h,
                horizon: self.horizon,
            });
        }
        Ok(match &self.kind {
            Kind::Family(f) => prefix_family(f, h, self.dimension),
            Kind::Explicit(points) => points[..h].to_vec(),
            Kind::Combination { a, b, lhs, rhs } => {
                let left = lhs.prefix(h)?;
                let right = rhs.prefix(h)?;
                left.iter()
                    .zip(&right)
                    .map(|(l, r)| &l.scale(*a) + &r.scale(*b))
                    .collect()
            }
        })
    }

    /// Structured form accepted back by [`sequence_from_table`].
    pub fn to_table(&self) -> toml::Table {
        match &self.kind {
            Kind::Family(f) => f.to_table(),
            Kind::Explicit(points) => {
                let mut t = toml::Table::new();
                t.insert("name".into(), "explicit".into());
                let rows: Vec<toml::Value> = points
                    .iter()
                    .map(|p| {
                        toml::Value::Array(
                            p.coords().iter().map(|&c| toml::Value::Float(c)).collect(),
                        )
                    })
                    .collect();
                t.insert("points".into(), toml::Value::Array(rows));
                t
            }
            Kind::Combination { a, b, lhs, rhs } => {
                let mut t = toml::Table::new();
                t.insert("name".into(), "combination".into());
                t.insert("a".into(), toml::Value::Float(*a));
                t.insert("b".into(), toml::Value::Float(*b));
                t.insert("lhs".into(), toml::Value::Table(lhs.to_table()));
                t.insert("rhs".into(), toml::Value::Table(rhs.to_table()));
                t
            }
        }
    }
}

fn axis_vector(dimension: usize, axis: usize, value: f64) -> NVector {
    let mut coords = vec![0.0; dimension];
    coords[axis] = value;
    // Entries are validated finite by Family::validate and the generators
    // below only produce finite combinations of finite inputs.
    NVector::new(coords).expect("generator produced non-finite value")
}

fn sign(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn eval_family(family: &Family, k: usize, dimension: usize) -> NVector {
    match family {
        Family::Alternating { amplitude, axis } => {
            axis_vector(dimension, *axis, sign(k) * amplitude)
        }
        Family::SqrtRamp { scale, axis } => {
            axis_vector(dimension, *axis, scale * (k as f64).sqrt())
        }
        Family::HarmonicPartialSums { amplitude, axis } => {
            let h: f64 = (1..=k).map(|j| 1.0 / j as f64).sum();
            axis_vector(dimension, *axis, amplitude * h)
        }
        Family::Geometric {
            ratio,
            amplitude,
            axis,
        } => axis_vector(dimension, *axis, amplitude * ratio.powi(k as i32)),
        Family::Constant { value } => {
            NVector::new(value.clone()).expect("validated constant value")
        }
        Family::RandomWalkDamped { .. } => prefix_family(family, k, dimension)
            .pop()
            .expect("nonempty prefix"),
        Family::RepeatInterleave { base, s } => eval_family(base, k.div_ceil(*s), dimension),
    }
}

fn prefix_family(family: &Family, h: usize, dimension: usize) -> Vec<NVector> {
    match family {
        Family::HarmonicPartialSums { amplitude, axis } => {
            let mut out = Vec::with_capacity(h);
            let mut partial = 0.0;
            for k in 1..=h {
                partial += 1.0 / k as f64;
                out.push(axis_vector(dimension, *axis, amplitude * partial));
            }
            out
        }
        Family::RandomWalkDamped {
            seed,
            scale,
            damping,
        } => {
            let mut rng = crate::rng::Lcg::new(*seed);
            let mut current = vec![0.0f64; dimension];
            let mut out = Vec::with_capacity(h);
            out.push(NVector::new(current.clone()).expect("finite walk state"));
            for k in 1..h {
                let step = scale * ((k + 1) as f64).powf(-damping);
                for c in current.iter_mut() {
                    *c += step * rng.next_symmetric();
                }
                out.push(NVector::new(current.clone()).expect("finite walk state"));
            }
            out
        }
        Family::RepeatInterleave { base, s } => {
            let base_len = h.div_ceil(*s);
            let base_prefix = prefix_family(base, base_len, dimension);
            (1..=h)
                .map(|m| base_prefix[m.div_ceil(*s) - 1].clone())
                .collect()
        }
        _ => (1..=h).map(|k| eval_family(family, k, dimension)).collect(),
    }
}

/// Shift-s forward difference x_{k+s} - x_k.
pub fn forward_difference(seq: &SequenceSpec, s: usize, k: usize) -> Result<NVector> {
    if s < 1 {
        return Err(Error::InvalidParameter("shift s must be at least 1".into()));
    }
    let ahead = seq.eval(k + s)?;
    let here = seq.eval(k)?;
    Ok(&ahead - &here)
}

/// Largest-coordinate residual of the telescoping identity
/// x_{k+s} - x_k = sum_{j=0}^{s-1} (x_{k+j+1} - x_{k+j}),
/// with both sides evaluated through the same generator path.
pub fn telescoping_check(seq: &SequenceSpec, s: usize, k: usize) -> Result<f64> {
    let direct = forward_difference(seq, s, k)?;
    let mut summed = NVector::zeros(seq.dimension());
    for j in 0..s {
        let step = forward_difference(seq, 1, k + j)?;
        summed = &summed + &step;
    }
    Ok((&direct - &summed).max_abs())
}

/// Pointwise combination a * lhs + b * rhs over the shared horizon prefix.
pub fn linear_combination(
    lhs: &SequenceSpec,
    rhs: &SequenceSpec,
    a: f64,
    b: f64,
) -> Result<SequenceSpec> {
    if lhs.dimension() != rhs.dimension() {
        return Err(Error::DimensionMismatch {
            expected: lhs.dimension(),
            got: rhs.dimension(),
        });
    }
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidParameter(
            "combination coefficients must be finite".into(),
        ));
    }
    Ok(SequenceSpec {
        kind: Kind::Combination {
            a,
            b,
            lhs: Box::new(lhs.clone()),
            rhs: Box::new(rhs.clone()),
        },
        dimension: lhs.dimension(),
        horizon: lhs.horizon().min(rhs.horizon()),
    })
}

/// Names accepted by [`catalog_sequence`].
pub fn catalog_names() -> &'static [&'static str] {
    &[
        "alternating",
        "sqrt-ramp",
        "harmonic-partial-sums",
        "geometric",
        "constant",
        "random-walk-damped",
        "repeat-interleave",
        "explicit",
        "combination",
    ]
}

struct Params<'a> {
    table: &'a toml::Table,
    family: &'a str,
    allowed: &'static [&'static str],
}

impl<'a> Params<'a> {
    fn new(table: &'a toml::Table, family: &'a str, allowed: &'static [&'static str]) -> Result<Self> {
        for key in table.keys() {
            if key != "name" && !allowed.contains(&key.as_str()) {
                return Err(Error::InvalidParameter(format!(
                    "unknown parameter {key:?} for {family} (allowed: {})",
                    allowed.join(", ")
                )));
            }
        }
        Ok(Self {
            table,
            family,
            allowed,
        })
    }

    fn f64(&self, key: &str, default: f64) -> Result<f64> {
        debug_assert!(self.allowed.contains(&key));
        match self.table.get(key) {
            None => Ok(default),
            Some(toml::Value::Float(v)) => Ok(*v),
            Some(toml::Value::Integer(v)) => Ok(*v as f64),
            Some(other) => Err(Error::InvalidParameter(format!(
                "{}.{key} must be a number, got {other}",
                self.family
            ))),
        }
    }

    fn usize(&self, key: &str, default: usize) -> Result<usize> {
        debug_assert!(self.allowed.contains(&key));
        match self.table.get(key) {
            None => Ok(default),
            Some(toml::Value::Integer(v)) if *v >= 0 => Ok(*v as usize),
            Some(other) => Err(Error::InvalidParameter(format!(
                "{}.{key} must be a non-negative integer, got {other}",
                self.family
            ))),
        }
    }

    fn u64(&self, key: &str, default: u64) -> Result<u64> {
        debug_assert!(self.allowed.contains(&key));
        match self.table.get(key) {
            None => Ok(default),
            Some(toml::Value::Integer(v)) if *v >= 0 => Ok(*v as u64),
            Some(other) => Err(Error::InvalidParameter(format!(
                "{}.{key} must be a non-negative integer, got {other}",
                self.family
            ))),
        }
    }

    fn table(&self, key: &str) -> Result<Option<&'a toml::Table>> {
        debug_assert!(self.allowed.contains(&key));
        match self.table.get(key) {
            None => Ok(None),
            Some(toml::Value::Table(t)) => Ok(Some(t)),
            Some(other) => Err(Error::InvalidParameter(format!(
                "{}.{key} must be a table, got {other}",
                self.family
            ))),
        }
    }
}

fn number_list(value: &toml::Value, context: &str) -> Result<Vec<f64>> {
    let arr = value.as_array().ok_or_else(|| {
        Error::InvalidParameter(format!("{context} must be an array of numbers"))
    })?;
    arr.iter()
        .map(|v| match v {
            toml::Value::Float(f) => Ok(*f),
            toml::Value::Integer(i) => Ok(*i as f64),
            other => Err(Error::InvalidParameter(format!(
                "{context} must contain numbers, got {other}"
            ))),
        })
        .collect()
}

fn family_from_table(table: &toml::Table, dimension: usize) -> Result<Family> {
    let name = table
        .get("name")
        .and_then(|v| v.as_str())
        .ok_or_else(|| Error::InvalidParameter("sequence table needs a \"name\" string".into()))?;
    let family = match name {
        "alternating" => {
            let p = Params::new(table, name, &["amplitude", "axis"])?;
            Family::Alternating {
                amplitude: p.f64("amplitude", 1.0)?,
                axis: p.usize("axis", 0)?,
            }
        }
        "sqrt-ramp" => {
            let p = Params::new(table, name, &["scale", "axis"])?;
            Family::SqrtRamp {
                scale: p.f64("scale", 1.0)?,
                axis: p.usize("axis", 0)?,
            }
        }
        "harmonic-partial-sums" => {
            let p = Params::new(table, name, &["amplitude", "axis"])?;
            Family::HarmonicPartialSums {
                amplitude: p.f64("amplitude", 1.0)?,
                axis: p.usize("axis", 0)?,
            }
        }
        "geometric" => {
            let p = Params::new(table, name, &["ratio", "amplitude", "axis"])?;
            Family::Geometric {
                ratio: p.f64("ratio", 0.5)?,
                amplitude: p.f64("amplitude", 1.0)?,
                axis: p.usize("axis", 0)?,
            }
        }
        "constant" => {
            let p = Params::new(table, name, &["value"])?;
            let value = match p.table.get("value") {
                None => {
                    let mut v = vec![0.0; dimension];
                    v[0] = 1.0;
                    v
                }
                Some(raw) => number_list(raw, "constant.value")?,
            };
            Family::Constant { value }
        }
        "random-walk-damped" => {
            let p = Params::new(table, name, &["seed", "scale", "damping"])?;
            Family::RandomWalkDamped {
                seed: p.u64("seed", 24301)?,
                scale: p.f64("scale", 1.0)?,
                damping: p.f64("damping", 1.5)?,
            }
        }
        "repeat-interleave" => {
            let p = Params::new(table, name, &["base", "s"])?;
            let base_table = p.table("base")?.ok_or_else(|| {
                Error::InvalidParameter("repeat-interleave needs a \"base\" table".into())
            })?;
            let s = p.usize("s", 1)?;
            if s < 1 {
                return Err(Error::InvalidParameter(
                    "repeat count s must be at least 1".into(),
                ));
            }
            Family::RepeatInterleave {
                base: Box::new(family_from_table(base_table, dimension)?),
                s,
            }
        }
        other => {
            return Err(Error::UnknownCatalog(format!(
                "{other} (known: {})",
                catalog_names().join(", ")
            )))
        }
    };
    Ok(family)
}

/// Builds a sequence from a structured table: a catalog family, an
/// `explicit` point list, or a `combination` of two nested tables.
pub fn sequence_from_table(
    table: &toml::Table,
    dimension: usize,
    horizon: usize,
) -> Result<SequenceSpec> {
    let name = table
        .get("name")
        .and_then(|v| v.as_str())
        .ok_or_else(|| Error::InvalidParameter("sequence table needs a \"name\" string".into()))?;
    match name {
        "explicit" => {
            let p = Params::new(table, name, &["points"])?;
            let raw = p.table.get("points").ok_or_else(|| {
                Error::InvalidParameter("explicit sequence needs \"points\"".into())
            })?;
            let rows = raw.as_array().ok_or_else(|| {
                Error::InvalidParameter("explicit.points must be an array of arrays".into())
            })?;
            let points: Result<Vec<NVector>> = rows
                .iter()
                .map(|row| NVector::new(number_list(row, "explicit point")?))
                .collect();
            let seq = SequenceSpec::explicit(points?)?;
            if seq.dimension() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    got: seq.dimension(),
                });
            }
            Ok(seq)
        }
        "combination" => {
            let p = Params::new(table, name, &["a", "b", "lhs", "rhs"])?;
            let a = p.f64("a", 1.0)?;
            let b = p.f64("b", 1.0)?;
            let lhs_table = p
                .table("lhs")?
                .ok_or_else(|| Error::InvalidParameter("combination needs \"lhs\"".into()))?;
            let rhs_table = p
                .table("rhs")?
                .ok_or_else(|| Error::InvalidParameter("combination needs \"rhs\"".into()))?;
            let lhs = sequence_from_table(lhs_table, dimension, horizon)?;
            let rhs = sequence_from_table(rhs_table, dimension, horizon)?;
            linear_combination(&lhs, &rhs, a, b)
        }
        _ => {
            let family = family_from_table(table, dimension)?;
            SequenceSpec::from_family(family, dimension, horizon)
        }
    }
}

/// Builds a catalog sequence by name with parameter overrides.
pub fn catalog_sequence(
    name: &str,
    params: &toml::Table,
    dimension: usize,
    horizon: usize,
) -> Result<SequenceSpec> {
    let mut table = params.clone();
    table.insert("name".into(), toml::Value::String(name.to_string()));
    sequence_from_table(&table, dimension, horizon)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(name: &str, d: usize, h: usize) -> SequenceSpec {
        catalog_sequence(name, &toml::Table::new(), d, h).unwrap()
    }

    #[test]
    fn alternating_flips_sign_each_step() {
        let s = seq("alternating", 2, 10);
        assert_eq!(s.eval(1).unwrap().coords(), &[-1.0, 0.0]);
        assert_eq!(s.eval(2).unwrap().coords(), &[1.0, 0.0]);
        let d = forward_difference(&s, 1, 1).unwrap();
        assert_eq!(d.coords(), &[2.0, 0.0]);
        let d2 = forward_difference(&s, 2, 1).unwrap();
        assert_eq!(d2.coords(), &[0.0, 0.0]);
    }

    #[test]
    fn sqrt_ramp_difference_matches_closed_form() {
        let s = seq("sqrt-ramp", 2, 200);
        let d = forward_difference(&s, 1, 100).unwrap();
        let expected = 101f64.sqrt() - 100f64.sqrt();
        assert!((d.coords()[0] - expected).abs() < 1e-15);
        assert!((expected - 0.049875621120889946).abs() < 1e-15);
    }

    #[test]
    fn prefix_matches_pointwise_eval() {
        for name in [
            "alternating",
            "sqrt-ramp",
            "harmonic-partial-sums",
            "geometric",
            "constant",
            "random-walk-damped",
        ] {
            let s = seq(name, 3, 64);
            let prefix = s.prefix(64).unwrap();
            for k in [1usize, 2, 17, 64] {
                assert_eq!(prefix[k - 1], s.eval(k).unwrap(), "{name} at {k}");
            }
        }
    }

    #[test]
    fn interleave_repeats_each_base_term() {
        let mut params = toml::Table::new();
        params.insert(
            "base".into(),
            toml::Value::Table(
                catalog_sequence("sqrt-ramp", &toml::Table::new(), 2, 8)
                    .unwrap()
                    .to_table(),
            ),
        );
        params.insert("s".into(), toml::Value::Integer(3));
        let s = catalog_sequence("repeat-interleave", &params, 2, 24).unwrap();
        let base = seq("sqrt-ramp", 2, 8);
        for m in 1..=24 {
            assert_eq!(s.eval(m).unwrap(), base.eval(m.div_ceil(3)).unwrap());
        }
    }

    #[test]
    fn telescoping_residual_is_rounding_level() {
        for name in ["sqrt-ramp", "harmonic-partial-sums", "random-walk-damped"] {
            let s = seq(name, 2, 1000);
            for (sft, k) in [(2usize, 1usize), (3, 10), (5, 900)] {
                let r = telescoping_check(&s, sft, k).unwrap();
                let scale = s.eval(k + sft).unwrap().max_abs().max(1.0);
                assert!(r <= 1e-12 * scale, "{name} s={sft} k={k}: {r}");
            }
        }
    }

    #[test]
    fn combination_adds_pointwise() {
        let a = seq("sqrt-ramp", 2, 50);
        let b = seq("constant", 2, 80);
        let c = linear_combination(&a, &b, 2.0, -1.0).unwrap();
        assert_eq!(c.horizon(), 50);
        let got = c.eval(9).unwrap();
        assert_eq!(got.coords()[0], 2.0 * 3.0 - 1.0);
        assert!(!c.is_bounded());
    }

    #[test]
    fn beyond_horizon_is_rejected() {
        let s = seq("geometric", 2, 10);
        assert!(s.eval(0).is_err());
        assert!(s.eval(11).is_err());
        assert!(forward_difference(&s, 2, 9).is_err());
        assert!(s.prefix(11).is_err());
    }

    #[test]
    fn unknown_names_and_params_are_rejected() {
        let err = catalog_sequence("zigzag", &toml::Table::new(), 2, 10);
        assert!(matches!(err, Err(Error::UnknownCatalog(_))));
        let mut params = toml::Table::new();
        params.insert("amplitudeee".into(), toml::Value::Float(2.0));
        assert!(catalog_sequence("alternating", &params, 2, 10).is_err());
    }

    #[test]
    fn tables_round_trip() {
        let mut params = toml::Table::new();
        params.insert("ratio".into(), toml::Value::Float(0.25));
        let s = catalog_sequence("geometric", &params, 2, 30).unwrap();
        let back = sequence_from_table(&s.to_table(), 2, 30).unwrap();
        assert_eq!(back.eval(7).unwrap(), s.eval(7).unwrap());

        let combo = linear_combination(&s, &seq("constant", 2, 30), 1.5, 2.5).unwrap();
        let back = sequence_from_table(&combo.to_table(), 2, 30).unwrap();
        assert_eq!(back.eval(3).unwrap(), combo.eval(3).unwrap());
    }

    #[test]
    fn random_walk_is_seed_deterministic() {
        let s1 = seq("random-walk-damped", 2, 100);
        let s2 = seq("random-walk-damped", 2, 100);
        assert_eq!(s1.prefix(100).unwrap(), s2.prefix(100).unwrap());
        let mut params = toml::Table::new();
        params.insert("seed".into(), toml::Value::Integer(9));
        let s3 = catalog_sequence("random-walk-damped", &params, 2, 100).unwrap();
        assert_ne!(s1.eval(50).unwrap(), s3.eval(50).unwrap());
    }
}
