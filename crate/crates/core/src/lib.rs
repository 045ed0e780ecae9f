//! Numerical checks of consistency, stability and convergence for the
//! central second-difference discretization of `u'' = f` on `(0, L)` with
//! homogeneous Dirichlet data.
//!
//! * [`grid`]: registered problems, grids, restrictions and norms.
//! * [`tridiag`]: the tridiagonal operator, its solver and determinants.
//! * [`spectral`]: closed-form eigen system, orthogonality identities and
//!   the uniform bound on the inverse.
//! * [`taylor`]: Taylor-Lagrange remainder bounds and truncation orders.
//! * [`laxcheck`]: local/global errors, the `global <= K local` chain and
//!   refinement studies.
//! * [`cli`]: the `laxcheck` command-line front end.

pub mod cli;
pub mod dense;
pub mod error;
pub mod fit;
pub mod grid;
pub mod laxcheck;
pub mod spectral;
pub mod taylor;
pub mod tridiag;

pub use dense::DenseMatrix;
pub use error::{Error, Result};
pub use fit::Order;
pub use grid::{restrict_data, restrict_solution, BVProblem, Grid, GridFunction, GridNorm};
pub use laxcheck::{refinement_study, ChainCheck, ConvergenceReport, ConvergenceRow, MethodInstance};
pub use spectral::{stability_summary, EigenPair, SpectralSummary};
pub use taylor::{consistency_bound, ConsistencyBound, OrderFit, RemainderBound, Side};
pub use tridiag::{DeterminantSequence, TridiagonalOperator};
