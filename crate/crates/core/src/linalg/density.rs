use super::eigen::hermitian_eigenvalues;
use super::matrix::{tensor, Ket, SquareMatrix};
use crate::error::{Error, Result};

/// Tolerance on Hermiticity and unit trace.
pub const DENSITY_TOL: f64 = 1e-12;

/// Smallest eigenvalue accepted as "positive semidefinite".
pub const POSITIVITY_TOL: f64 = 1e-10;

/// Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityOperator<const N: usize> {
    matrix: SquareMatrix<N>,
}

impl<const N: usize> DensityOperator<N> {
    pub fn new(matrix: SquareMatrix<N>) -> Result<Self> {
        if !matrix.is_finite() {
            return Err(Error::invalid("density matrix has non-finite entries"));
        }
        let herm = matrix.hermiticity_error();
        if herm > DENSITY_TOL {
            return Err(Error::invalid(format!("density matrix not Hermitian ({herm:.3e})")));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
            return Err(Error::invalid(format!("density matrix trace {tr} ≠ 1")));
        }
        let min = hermitian_eigenvalues(&matrix)?[0];
        if min < -POSITIVITY_TOL {
            return Err(Error::invalid(format!(
                "density matrix not positive (smallest eigenvalue {min:.3e})"
            )));
        }
        Ok(Self { matrix })
    }

    /// Wraps a matrix that is a density operator by construction.
    pub(crate) fn new_unchecked(matrix: SquareMatrix<N>) -> Self {
        debug_assert!(matrix.hermiticity_error() <= 1e-10);
        Self { matrix }
    }

    /// `|ψ⟩⟨ψ|` for a normalized ket.
    pub fn pure(ket: &Ket<N>) -> Result<Self> {
        let n = super::matrix::norm(ket);
        if !n.is_finite() || (n - 1.0).abs() > DENSITY_TOL {
            return Err(Error::invalid(format!("state vector norm {n} ≠ 1")));
        }
        Ok(Self::new_unchecked(SquareMatrix::outer(ket)))
    }

    pub fn maximally_mixed() -> Self {
        Self::new_unchecked(SquareMatrix::identity().scale_re(1.0 / N as f64))
    }

    pub fn matrix(&self) -> &SquareMatrix<N> {
        &self.matrix
    }

    /// Ascending spectrum.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix).expect("density operator is Hermitian")
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        (self.matrix * self.matrix).trace().re
    }

    /// `U ρ U†`; `unitary` must be unitary.
    pub fn evolve(&self, unitary: &SquareMatrix<N>) -> Self {
        Self::new_unchecked(self.matrix.conjugate_by(unitary))
    }
}

impl DensityOperator<2> {
    /// `ρ_path ⊗ ρ_detector`.
    pub fn tensor(&self, detector: &DensityOperator<2>) -> DensityOperator<4> {
        DensityOperator::new_unchecked(tensor(&self.matrix, &detector.matrix))
    }
}

impl DensityOperator<4> {
    /// Reduced detector state: traces out the path qubit.
    pub fn partial_trace_path(&self) -> DensityOperator<2> {
        DensityOperator::new_unchecked(self.matrix.trace_out_first())
    }

    /// Reduced path state: traces out the detector qubit.
    pub fn partial_trace_detector(&self) -> DensityOperator<2> {
        DensityOperator::new_unchecked(self.matrix.trace_out_second())
    }
}

impl<const N: usize> AsRef<SquareMatrix<N>> for DensityOperator<N> {
    fn as_ref(&self) -> &SquareMatrix<N> {
        &self.matrix
    }
}
