//! Core types: vectors with validated finite entries, the norm exponent,
//! and the ambient space configuration (dimension `d`, norm order `n`).
//!
//! Every construction validates eagerly so downstream numeric code can
//! assume finite entries and consistent dimensions.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported norm order. Minor enumeration is combinatorial in the
/// order, so the cap keeps worst-case work bounded.
pub const MAX_ORDER: usize = 8;

/// Largest supported ambient dimension.
pub const MAX_DIMENSION: usize = 32;

/// A point of R^d with all entries finite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NVector {
    coords: Vec<f64>,
}

impl NVector {
    /// Builds a vector, rejecting NaN and infinite entries.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        for (index, &value) in coords.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index, value });
            }
        }
        if coords.is_empty() {
            return Err(Error::InvalidParameter("empty coordinate list".into()));
        }
        Ok(Self { coords })
    }

    /// Zero vector of dimension `d`.
    pub fn zeros(d: usize) -> Self {
        Self {
            coords: vec![0.0; d],
        }
    }

    /// Standard basis vector `e_axis` of dimension `d` (0-based axis).
    pub fn basis(d: usize, axis: usize) -> Result<Self> {
        if axis >= d {
            return Err(Error::InvalidParameter(format!(
                "basis axis {axis} outside dimension {d}"
            )));
        }
        let mut coords = vec![0.0; d];
        coords[axis] = 1.0;
        Ok(Self { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            coords: self.coords.iter().map(|x| c * x).collect(),
        }
    }

    /// Largest absolute coordinate.
    pub fn max_abs(&self) -> f64 {
        self.coords.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Writes a - b into `out` without allocating. All three must share one
    /// dimension; differences of finite entries stay finite at our scales.
    pub(crate) fn sub_into(a: &Self, b: &Self, out: &mut Self) {
        debug_assert_eq!(a.dim(), b.dim());
        debug_assert_eq!(a.dim(), out.dim());
        for ((o, &x), &y) in out.coords.iter_mut().zip(&a.coords).zip(&b.coords) {
            *o = x - y;
        }
    }
}

impl Add for &NVector {
    type Output = NVector;
    fn add(self, rhs: &NVector) -> NVector {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &NVector {
    type Output = NVector;
    fn sub(self, rhs: &NVector) -> NVector {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl fmt::Display for NVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Norm exponent: a finite power `p >= 1` or the supremum norm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn validate(&self) -> Result<()> {
        match self {
            Exponent::Finite(p) if !p.is_finite() => Err(Error::InvalidParameter(format!(
                "exponent must be finite or \"inf\", got {p}"
            ))),
            Exponent::Finite(p) if *p < 1.0 => Err(Error::InvalidParameter(format!(
                "exponent must satisfy p >= 1, got {p}"
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.eq_ignore_ascii_case("inf") || trimmed.eq_ignore_ascii_case("infinity") {
            return Ok(Exponent::Infinity);
        }
        let p: f64 = trimmed
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("cannot parse exponent {trimmed:?}")))?;
        let exponent = Exponent::Finite(p);
        exponent.validate()?;
        Ok(exponent)
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(p) => serializer.serialize_f64(*p),
            Exponent::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        let exponent = match Raw::deserialize(deserializer)? {
            Raw::Number(p) => Exponent::Finite(p),
            Raw::Text(s) => Exponent::from_str(&s).map_err(D::Error::custom)?,
        };
        exponent.validate().map_err(D::Error::custom)?;
        Ok(exponent)
    }
}

/// Ambient space parameters: dimension `d`, norm order `n`, exponent `p`.
///
/// Requires `2 <= n <= d`, `n <= MAX_ORDER`, `d <= MAX_DIMENSION`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceConfig {
    pub dimension: usize,
    pub order: usize,
    pub exponent: Exponent,
}

impl SpaceConfig {
    pub fn new(dimension: usize, order: usize, exponent: Exponent) -> Result<Self> {
        let cfg = Self {
            dimension,
            order,
            exponent,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.order < 2 {
            return Err(Error::InvalidSpace(format!(
                "order must be at least 2, got {}",
                self.order
            )));
        }
        if self.order > self.dimension {
            return Err(Error::InvalidSpace(format!(
                "order {} exceeds dimension {}",
                self.order, self.dimension
            )));
        }
        if self.order > MAX_ORDER {
            return Err(Error::InvalidSpace(format!(
                "order {} exceeds supported maximum {MAX_ORDER}",
                self.order
            )));
        }
        if self.dimension > MAX_DIMENSION {
            return Err(Error::InvalidSpace(format!(
                "dimension {} exceeds supported maximum {MAX_DIMENSION}",
                self.dimension
            )));
        }
        self.exponent.validate()
    }

    /// Checks that a vector lives in this space.
    pub fn check_vector(&self, v: &NVector) -> Result<()> {
        if v.dim() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: v.dim(),
            });
        }
        Ok(())
    }
}

/// An ordered tuple of vectors, the argument of an n-norm.
///
/// Construction checks that all vectors share one dimension; length against
/// a particular space is checked at evaluation time.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VectorTuple {
    vectors: Vec<NVector>,
}

impl VectorTuple {
    pub fn new(vectors: Vec<NVector>) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::InvalidParameter("empty vector tuple".into()));
        }
        let d = vectors[0].dim();
        for v in &vectors {
            if v.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: v.dim(),
                });
            }
        }
        Ok(Self { vectors })
    }

    pub fn vectors(&self) -> &[NVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.vectors[0].dim()
    }

    /// Checks length and dimension against a space.
    pub fn check_against(&self, cfg: &SpaceConfig) -> Result<()> {
        if self.len() != cfg.order {
            return Err(Error::TupleLength {
                expected: cfg.order,
                got: self.len(),
            });
        }
        for v in &self.vectors {
            cfg.check_vector(v)?;
        }
        Ok(())
    }
}
