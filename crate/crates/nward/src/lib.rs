//! Numerical toolkit for finite-dimensional spaces equipped with
//! determinant-based n-norms.
//!
//! The crate measures tuples of vectors rather than single vectors: the
//! n-norm of (v_1, ..., v_n) in R^d aggregates all n-by-n coordinate
//! minors, vanishing exactly when the tuple is linearly dependent. On top
//! of that norm the crate builds:
//!
//! - [`nnorm`]: norm evaluation (optimized and reference enumerations, a
//!   Gram-determinant oracle for p = 2, axiom checking over samples),
//! - [`sequence`]: a catalog of sequence generators with forward
//!   differences and a telescoping identity check,
//! - [`classify`]: scalar profiles against witness direction sets and
//!   three-valued tail verdicts (satisfied / violated / inconclusive),
//! - [`continuity`]: function probes for shift-difference preservation,
//!   sequential continuity, uniform-modulus estimation, and uniform limits,
//! - [`compactness`]: greedy covering nets, packing witnesses, and
//!   small-difference subsequence extraction,
//! - [`suite`]: a deterministic end-to-end battery over a built-in corpus
//!   with a structured JSON report.
//!
//! Every numeric path is deterministic for a fixed seed: the only random
//! source is the pinned generator in [`rng`].
//!
//! # Example
//!
//! ```
//! use nward::space::{Exponent, NVector, SpaceConfig, VectorTuple};
//! use nward::nnorm::nnorm;
//!
//! let cfg = SpaceConfig::new(3, 2, Exponent::Finite(2.0))?;
//! let tuple = VectorTuple::new(vec![
//!     NVector::new(vec![1.0, 0.0, 0.0])?,
//!     NVector::new(vec![0.0, 1.0, 0.0])?,
//! ])?;
//! let area = nnorm(&tuple, &cfg)?;
//! assert!((area - 1.0).abs() < 1e-12);
//! # Ok::<(), nward::error::Error>(())
//! ```

pub mod classify;
pub mod compactness;
pub mod config;
pub mod continuity;
pub mod error;
pub mod nnorm;
pub mod report;
pub mod rng;
pub mod sequence;
pub mod space;
pub mod suite;
pub mod witness;

pub use error::{Error, Result};
