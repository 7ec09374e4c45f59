//! Numerical laboratory for Hermitian block band matrices with finite-rank
//! complex deformations.
//!
//! The crate cross-validates three routes to the determinant-ratio generating
//! function Z(κ, z₁, z₂) of a deformed band ensemble — direct matrix Monte
//! Carlo, an exact-Grassmann supersymmetric lattice integral, and a
//! transfer-operator representation — and extracts resonance-width statistics
//! from each.

pub mod error;
pub mod grassmann;
pub mod quadrature;
pub mod rngstream;
pub mod supermatrix;

pub use error::{CoreError, Result};
pub use grassmann::{gaussian_grassmann, GrassmannAlgebra, GrassmannElement, Parity};
pub use supermatrix::{Block2, SuperMatrix};

pub mod deform;
pub mod ensemble;
pub mod linalg;
pub mod mcz;
pub mod params;
pub mod saddle;

pub use deform::{deform_and_solve, resonance_widths, SolveMethod, SpectrumSample};
pub use ensemble::{sample_block_rbm, sample_gue, semicircle_density, BlockBandModel, Boundary, CovarianceLaw};
pub use mcz::{mc_generating_function, McZResult};
pub use params::{Deformation, SpectralParams};
pub use saddle::SaddleConstants;
