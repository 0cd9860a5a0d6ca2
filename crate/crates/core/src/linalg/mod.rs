//! Fixed-size complex linear algebra for one and two qubits.

mod density;
mod eigen;
mod matrix;

pub use density::{DensityOperator, DENSITY_TOL, POSITIVITY_TOL};
pub use eigen::{hermitian_eig2, hermitian_eigenvalues, trace_norm, Eigen2, DEGENERACY_GAP, HERMITIAN_TOL};
pub use matrix::{block_diag, inner, norm, tensor, Ket, Mat2, Mat4, SquareMatrix, C64};

pub(crate) use matrix::{I, ONE, ZERO};
