//! Implicit equations of surfaces parametrized by four bihomogeneous
//! polynomials on `P^1 x P^1`, computed with moving planes and moving
//! quadrics in the presence of locally complete intersection base points.
//!
//! All arithmetic is exact over the rationals. The main entry points are
//! [`conditions::check_all`], which decides whether a parametrization
//! satisfies the base-point conditions the construction needs, and
//! [`implicitize::pipeline`], which builds the matrix `M` and returns its
//! determinant as the implicit equation.

pub mod conditions;
pub mod error;
pub mod implicitize;
pub mod linalg;
pub mod ring;
pub mod syzygy;

pub use conditions::{BasePointSummary, Condition, ConditionConfig, ConditionReport, Route};
pub use error::{Error, Result};
pub use implicitize::{pipeline, DetBackend, ImplicitResult, PipelineConfig, Verification};
pub use linalg::{KernelBasis, RatMatrix, Rref};
pub use ring::{monomial_basis, rat, BiDegree, BiMonomial, BihomPoly, Rat, XMonomial, XPoly};
pub use syzygy::{MovingSurface, Parametrization, SyzygyBasis};
