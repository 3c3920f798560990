//! Exact L² single-radius ball discrepancy on compact two-point homogeneous
//! spaces.
//!
//! The squared L² norm of the ball discrepancy of a weighted point set splits
//! into a series over Laplace–Beltrami eigenspaces,
//!
//! ```text
//!   ∫ |D_r(x)|² dμ(x) = Σ_{m≥1} q_m · φ_m(r)²
//! ```
//!
//! where `q_m` is the harmonic energy of the point set in eigenspace `m`
//! (evaluated through the addition theorem as a weighted sum of Jacobi
//! polynomials of pairwise cosine-distances) and `φ_m(r)` is the normalized
//! integral of the zonal function over a ball, which has a closed form in
//! terms of `P_{m-1}^{(a+1,b+1)}(cos r)`.
//!
//! Modules:
//!
//! | module | contents |
//! |--------|----------|
//! | [`spaces`] | the catalog of spaces, distances, sampling, ball volumes |
//! | [`specfun`] | Jacobi/Gegenbauer polynomials, Γ constants, incomplete beta |
//! | [`spectral`] | pair grams, harmonic energies, ball coefficients, the series |
//! | [`admissibility`] | exact rational radius admissibility tests |
//! | [`pointsets`] | point generators and the points file format |
//! | [`oracle`] | Monte Carlo and quadrature cross-checks |
//! | [`studies`] | rate fits and scans |

// `!(x > 0.0)` style checks are meant to reject NaN too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod admissibility;
pub mod error;
pub mod frozen;
pub mod oracle;
pub mod pointsets;
pub mod spaces;
pub mod specfun;
pub mod spectral;
pub mod studies;
mod sum;

pub use admissibility::{Frac, RadiusPQ};
pub use error::{Error, Result};
pub use pointsets::PointSet;
pub use spaces::{Point, Space, SpaceParams};
pub use spectral::{discrepancy_l2, DiscrepancyReport, PairGram, Radius};
