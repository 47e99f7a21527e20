//! Witness direction sets.
//!
//! The scalar sequence attached to a vector sequence depends on n - 1
//! companion directions: the quantity tracked is the n-norm of a difference
//! vector together with a witness tuple. A [`WitnessSet`] fixes the tuples
//! used for that reduction, and classification takes the maximum over them.
//!
//! The default policy enumerates every (n-1)-subset of the standard basis,
//! which spans all coordinate behavior; callers with special geometry can
//! supply explicit tuples instead. Every tuple must be comfortably
//! independent so the reduction never collapses to a degenerate direction.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::nnorm::singular_value_extremes;
use crate::space::{NVector, SpaceConfig, VectorTuple};

/// Relative singular-value floor for an acceptable witness tuple.
pub const WITNESS_INDEPENDENCE_TOL: f64 = 1e-9;

/// A nonempty list of (n-1)-vector tuples used to reduce vector sequences
/// to scalar profiles.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessSet {
    label: String,
    tuples: Vec<Vec<NVector>>,
}

impl WitnessSet {
    /// Builds a set from explicit tuples, validating shape and independence.
    pub fn explicit(tuples: Vec<Vec<NVector>>, cfg: &SpaceConfig) -> Result<Self> {
        Self::build("explicit", tuples, cfg)
    }

    /// All (n-1)-subsets of the standard basis of R^d, in lexicographic
    /// order; C(d, n-1) tuples total.
    pub fn standard_basis(cfg: &SpaceConfig) -> Result<Self> {
        use itertools::Itertools;
        cfg.validate()?;
        let mut tuples = Vec::new();
        for combo in (0..cfg.dimension).combinations(cfg.order - 1) {
            let tuple: Result<Vec<NVector>> = combo
                .iter()
                .map(|&axis| NVector::basis(cfg.dimension, axis))
                .collect();
            tuples.push(tuple?);
        }
        Self::build("standard-basis", tuples, cfg)
    }

    /// A single-tuple set from the first n-1 basis vectors.
    pub fn leading_basis(cfg: &SpaceConfig) -> Result<Self> {
        cfg.validate()?;
        let tuple: Result<Vec<NVector>> = (0..cfg.order - 1)
            .map(|axis| NVector::basis(cfg.dimension, axis))
            .collect();
        Self::build("leading-basis", vec![tuple?], cfg)
    }

    fn build(label: &str, tuples: Vec<Vec<NVector>>, cfg: &SpaceConfig) -> Result<Self> {
        cfg.validate()?;
        if tuples.is_empty() {
            return Err(Error::InvalidParameter("empty witness set".into()));
        }
        for (index, tuple) in tuples.iter().enumerate() {
            if tuple.len() != cfg.order - 1 {
                return Err(Error::TupleLength {
                    expected: cfg.order - 1,
                    got: tuple.len(),
                });
            }
            for v in tuple {
                cfg.check_vector(v)?;
            }
            let (sigma_min, sigma_max) = singular_value_extremes(tuple)?;
            if sigma_max == 0.0 || sigma_min <= WITNESS_INDEPENDENCE_TOL * sigma_max {
                return Err(Error::DegenerateWitness {
                    index,
                    sigma_min,
                    threshold: WITNESS_INDEPENDENCE_TOL * sigma_max,
                });
            }
        }
        Ok(Self {
            label: label.to_string(),
            tuples,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn tuples(&self) -> &[Vec<NVector>] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    /// Full norm tuple (lead vector followed by witness tuple `index`).
    pub fn complete(&self, lead: &NVector, index: usize) -> Result<VectorTuple> {
        let tuple = &self.tuples[index];
        let mut vs = Vec::with_capacity(tuple.len() + 1);
        vs.push(lead.clone());
        vs.extend(tuple.iter().cloned());
        VectorTuple::new(vs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::Exponent;

    fn cfg(d: usize, n: usize) -> SpaceConfig {
        SpaceConfig::new(d, n, Exponent::Finite(2.0)).unwrap()
    }

    #[test]
    fn standard_basis_has_binomial_count() {
        let set = WitnessSet::standard_basis(&cfg(4, 3)).unwrap();
        assert_eq!(set.len(), 6); // C(4, 2)
        let flat = WitnessSet::standard_basis(&cfg(2, 2)).unwrap();
        assert_eq!(flat.len(), 2); // C(2, 1)
    }

    #[test]
    fn degenerate_tuples_are_rejected() {
        let c = cfg(3, 3);
        let a = NVector::new(vec![1.0, 2.0, 0.0]).unwrap();
        let b = NVector::new(vec![2.0, 4.0, 0.0]).unwrap();
        let err = WitnessSet::explicit(vec![vec![a, b]], &c);
        assert!(matches!(err, Err(Error::DegenerateWitness { .. })));
    }

    #[test]
    fn zero_tuple_is_rejected() {
        let c = cfg(2, 2);
        let z = NVector::zeros(2);
        assert!(WitnessSet::explicit(vec![vec![z]], &c).is_err());
    }

    #[test]
    fn complete_prepends_lead_vector() {
        let c = cfg(3, 2);
        let set = WitnessSet::standard_basis(&c).unwrap();
        let lead = NVector::new(vec![5.0, 6.0, 7.0]).unwrap();
        let full = set.complete(&lead, 1).unwrap();
        assert_eq!(full.len(), 2);
        assert_eq!(full.vectors()[0], lead);
        assert_eq!(full.vectors()[1], NVector::basis(3, 1).unwrap());
    }
}
