//! Emptiness formation probability of the six-vertex model with domain
//! wall boundary conditions at the free-fermion point.
//!
//! The probability `F_{r,s,q}(α)` is computed exactly as a polynomial in α
//! and cross-checked against lattice enumeration, a multiple contour
//! integral, the Painlevé VI σ-form, a Fredholm determinant and the
//! large-`s` asymptotic expansions in both the disordered and ordered
//! regimes.

pub mod bigfloat;
pub mod constants;
pub mod critical;
pub mod disordered;
pub mod efp;
pub mod error;
pub mod exact;
pub mod fredholm;
pub mod geometry;
pub mod hypergeometric;
pub mod ordered;
pub mod quadrature;
pub mod saddle;
pub mod scalar;
pub mod sigma;

pub use bigfloat::{with_precision, working_precision, BigFloat, DEFAULT_PRECISION};
pub use efp::EfpParams;
pub use error::{EfpError, Result};
pub use exact::{ExactRational, Polynomial, RationalFunction};
pub use scalar::Real;

/// Polynomial in α with exact rational coefficients.
pub type AlphaPolynomial = Polynomial<ExactRational>;
/// Ratio of two [`AlphaPolynomial`]s in canonical form.
pub type AlphaRationalFunction = RationalFunction;
/// Complex number at multiple precision.
pub type BigComplex = num_complex::Complex<BigFloat>;
/// Geometry of a point `(α, v)` at multiple precision.
pub type BigGeometry = geometry::GeometryParams<BigFloat>;
/// Asymptotic series with multiple-precision coefficients.
pub type BigAsymSeries = geometry::AsymSeries<BigFloat>;
/// Nyström contour with multiple-precision nodes.
pub type BigContourGrid = fredholm::ContourGrid<BigFloat>;
/// Nyström contour with double-precision nodes.
pub type ContourGridF64 = fredholm::ContourGrid<f64>;
/// Saddle-point data at multiple precision.
pub type BigSaddleData = saddle::SaddleData<BigFloat>;
