//! Numerical and symbolic tools for scattering on asymptotically hyperbolic spaces.
//!
//! - [`specialfn`]: complex Gamma, Gauss ₂F₁, the Green constant `c_ζ`.
//! - [`quad`]: adaptive Gauss–Kronrod quadrature.
//! - [`model`]: kernels and identities on the half-space model of hyperbolic space.
//! - [`indexcalc`]: exact index-set and index-family algebra.
//! - [`radial`]: mode-by-mode scattering matrices for rotationally symmetric surfaces.

pub mod error;
pub mod indexcalc;
pub mod model;
pub mod quad;
pub mod radial;
pub mod specialfn;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
pub use specialfn::SpectralParam;
