//! Suite configuration: a TOML-loadable description of the space, the
//! analysis parameters, and the sequence/function corpus.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{Exponent, SpaceConfig};

/// Full configuration for a suite run. Every field has a shipped default;
/// a config file may override any subset, and a few fields can be
/// overridden again from the command line.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SuiteConfig {
    /// Ambient dimension d.
    pub dimension: usize,
    /// Norm order n.
    pub order: usize,
    /// Norm exponent: a number >= 1 or "inf".
    pub exponent: Exponent,
    /// Analysis horizon for classification sections.
    pub horizon: usize,
    /// Verdict tolerance.
    pub tau: f64,
    /// Shifts tested by classification sections.
    pub s_list: Vec<usize>,
    /// Master seed for all sampled data.
    pub seed: u64,
    /// Witness policy: "standard-basis", "leading-basis", or "explicit".
    pub witness: String,
    /// Witness tuples used when `witness = "explicit"`: each entry lists
    /// order - 1 direction vectors of length `dimension`.
    pub witness_tuples: Vec<Vec<Vec<f64>>>,
    /// Default report path for suite runs; the command line can override.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    /// Horizon for extraction-based sections.
    pub extraction_horizon: usize,
    /// Covering radius for net cases.
    pub net_alpha: f64,
    /// Ball budget for net cases.
    pub net_cap: usize,
    /// Lattice resolution per axis for modulus estimation.
    pub modulus_grid: usize,
    /// Modulus box is [-halfwidth, halfwidth]^d.
    pub modulus_halfwidth: f64,
    /// Sequence corpus (structured tables accepted by the catalog).
    /// A file that omits this field inherits the shipped catalog.
    pub sequences: Vec<toml::Table>,
    /// Function corpus (structured tables with a `family` tag). A file
    /// that omits this field gets an empty corpus, and the suite marks
    /// its function sections skipped.
    #[serde(default = "Vec::new")]
    pub functions: Vec<toml::Table>,
}

fn table(entries: &[(&str, toml::Value)]) -> toml::Table {
    entries
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

impl Default for SuiteConfig {
    fn default() -> Self {
        use toml::Value;
        let sequences = vec![
            table(&[("name", Value::from("alternating"))]),
            table(&[("name", Value::from("sqrt-ramp"))]),
            table(&[("name", Value::from("harmonic-partial-sums"))]),
            table(&[("name", Value::from("geometric")), ("ratio", Value::from(0.5))]),
            table(&[("name", Value::from("constant"))]),
            table(&[("name", Value::from("random-walk-damped"))]),
            table(&[
                ("name", Value::from("repeat-interleave")),
                (
                    "base",
                    Value::Table(table(&[("name", Value::from("sqrt-ramp"))])),
                ),
                ("s", Value::from(2)),
            ]),
        ];
        let rot = std::f64::consts::FRAC_1_SQRT_2;
        let functions = vec![
            table(&[
                ("family", Value::from("linear")),
                (
                    "matrix",
                    Value::try_from(vec![vec![rot, -rot], vec![rot, rot]]).expect("matrix value"),
                ),
            ]),
            table(&[
                ("family", Value::from("affine")),
                (
                    "matrix",
                    Value::try_from(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).expect("matrix value"),
                ),
                ("offset", Value::try_from(vec![0.5, -0.5]).expect("offset value")),
            ]),
            table(&[("family", Value::from("coordinate-square"))]),
            table(&[
                ("family", Value::from("lipschitz-clip")),
                ("bound", Value::from(1.5)),
            ]),
            table(&[("family", Value::from("scale")), ("factor", Value::from(0.5))]),
            table(&[
                ("family", Value::from("compose")),
                (
                    "stages",
                    Value::Array(vec![
                        Value::Table(table(&[
                            ("family", Value::from("lipschitz-clip")),
                            ("bound", Value::from(1.5)),
                        ])),
                        Value::Table(table(&[
                            ("family", Value::from("scale")),
                            ("factor", Value::from(0.5)),
                        ])),
                    ]),
                ),
            ]),
        ];
        Self {
            dimension: 2,
            order: 2,
            exponent: Exponent::Finite(2.0),
            horizon: 10_000,
            tau: 0.1,
            s_list: vec![1, 2, 3, 4, 5],
            seed: 42,
            witness: "standard-basis".into(),
            witness_tuples: Vec::new(),
            output: None,
            // Stage scans are quadratic in this horizon; 1024 keeps the
            // default suite well under a minute on one core.
            extraction_horizon: 1024,
            net_alpha: 0.25,
            net_cap: 64,
            modulus_grid: 8,
            modulus_halfwidth: 2.0,
            sequences,
            functions,
        }
    }
}

impl SuiteConfig {
    pub fn space(&self) -> Result<SpaceConfig> {
        SpaceConfig::new(self.dimension, self.order, self.exponent)
    }

    pub fn validate(&self) -> Result<()> {
        self.space()?;
        if self.s_list.is_empty() {
            return Err(Error::Config("s_list must be nonempty".into()));
        }
        if self.s_list.iter().any(|&s| s < 1) {
            return Err(Error::Config("every shift must be at least 1".into()));
        }
        let max_s = *self.s_list.iter().max().expect("nonempty s_list");
        if self.horizon < 4 * max_s {
            return Err(Error::Config(format!(
                "horizon {} below 4 * max shift = {}",
                self.horizon,
                4 * max_s
            )));
        }
        if !(self.tau > 0.0) || !self.tau.is_finite() {
            return Err(Error::Config("tau must be positive and finite".into()));
        }
        match self.witness.as_str() {
            "standard-basis" | "leading-basis" => {}
            "explicit" => {
                if self.witness_tuples.is_empty() {
                    return Err(Error::Config(
                        "explicit witness policy requires witness_tuples".into(),
                    ));
                }
                for (i, tuple) in self.witness_tuples.iter().enumerate() {
                    if tuple.len() != self.order - 1 {
                        return Err(Error::Config(format!(
                            "witness tuple {i} has {} vectors, expected {}",
                            tuple.len(),
                            self.order - 1
                        )));
                    }
                    for v in tuple {
                        if v.len() != self.dimension {
                            return Err(Error::Config(format!(
                                "witness tuple {i} has a vector of length {}, expected {}",
                                v.len(),
                                self.dimension
                            )));
                        }
                    }
                }
            }
            other => {
                return Err(Error::Config(format!(
                    "unknown witness policy {other:?} (known: standard-basis, leading-basis, explicit)"
                )));
            }
        }
        if self.extraction_horizon < 16 {
            return Err(Error::Config("extraction_horizon must be at least 16".into()));
        }
        if !(self.net_alpha > 0.0) || !self.net_alpha.is_finite() {
            return Err(Error::Config("net_alpha must be positive and finite".into()));
        }
        if self.net_cap == 0 {
            return Err(Error::Config("net_cap must be positive".into()));
        }
        if self.modulus_grid < 2 {
            return Err(Error::Config("modulus_grid must be at least 2".into()));
        }
        if !(self.modulus_halfwidth > 0.0) || !self.modulus_halfwidth.is_finite() {
            return Err(Error::Config(
                "modulus_halfwidth must be positive and finite".into(),
            ));
        }
        if self.sequences.is_empty() {
            return Err(Error::Config("sequence corpus must be nonempty".into()));
        }
        Ok(())
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let config: SuiteConfig =
            toml::from_str(text).map_err(|e| Error::Config(format!("config parse: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string_pretty(self).map_err(|e| Error::Config(format!("config encode: {e}")))
    }

    /// Applies command-line overrides on top of file or default values.
    pub fn with_overrides(
        mut self,
        horizon: Option<usize>,
        tau: Option<f64>,
        seed: Option<u64>,
    ) -> Result<Self> {
        if let Some(h) = horizon {
            self.horizon = h;
        }
        if let Some(t) = tau {
            self.tau = t;
        }
        if let Some(s) = seed {
            self.seed = s;
        }
        self.validate()?;
        Ok(self)
    }
}
