//! Curvature models of Weyl geometries: classification, decomposition and
//! realization by 2-jets of metrics, Weyl structures and torsion-free
//! connections.
//!
//! All computations are generic over [`Scalar`]: exact [`Rational`] arithmetic
//! by default, `f64` with a fixed tolerance when speed matters more than
//! exactness.

pub mod batch;
pub mod curvature;
pub mod document;
pub mod error;
pub mod generate;
pub mod poly;
pub mod realization;
pub mod scalar;
pub mod tensor;

pub use curvature::{ClassFlags, CurvatureClass, CurvatureModel, Equation, HigaParts, SymmetryReport};
pub use error::{Error, Result};
pub use realization::{ConnectionJet, GaugeFunction, MetricJet, OneFormJet, RealizationReport, WeylJet};
pub use scalar::{Rational, Scalar};
pub use tensor::{InnerProduct, Tensor2, Tensor3, Tensor4, TwoForm};
