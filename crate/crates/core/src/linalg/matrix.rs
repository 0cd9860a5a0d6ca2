use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

/// Column vector of length `N`.
pub type Ket<const N: usize> = [C64; N];

/// Dense `N×N` complex matrix stored row-major.
///
/// Only `N = 2` (a single qubit) and `N = 4` (path qubit ⊗ detector qubit) are
/// used by the crate; see [`Mat2`] and [`Mat4`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SquareMatrix<const N: usize> {
    entries: [[C64; N]; N],
}

pub type Mat2 = SquareMatrix<2>;
pub type Mat4 = SquareMatrix<4>;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

impl<const N: usize> SquareMatrix<N> {
    pub const fn from_rows(entries: [[C64; N]; N]) -> Self {
        Self { entries }
    }

    pub fn zeros() -> Self {
        Self { entries: [[ZERO; N]; N] }
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for k in 0..N {
            m.entries[k][k] = ONE;
        }
        m
    }

    /// Diagonal matrix with real entries.
    pub fn diag(values: [f64; N]) -> Self {
        let mut m = Self::zeros();
        for (k, v) in values.into_iter().enumerate() {
            m.entries[k][k] = C64::new(v, 0.0);
        }
        m
    }

    /// Projector `|v⟩⟨v|` (not normalized).
    pub fn outer(v: &Ket<N>) -> Self {
        Self::outer2(v, v)
    }

    /// Outer product `|u⟩⟨v|`.
    pub fn outer2(u: &Ket<N>, v: &Ket<N>) -> Self {
        Self { entries: std::array::from_fn(|i| std::array::from_fn(|j| u[i] * v[j].conj())) }
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[row][col]
    }

    pub fn entries(&self) -> &[[C64; N]; N] {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.entries[i][j] = self.entries[j][i].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|k| self.entries[k][k]).sum()
    }

    pub fn scale(&self, factor: C64) -> Self {
        let mut m = *self;
        m.entries
            .iter_mut()
            .flatten()
            .for_each(|z| *z *= factor);
        m
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(C64::new(factor, 0.0))
    }

    /// `U · self · U†`.
    pub fn conjugate_by(&self, unitary: &Self) -> Self {
        *unitary * *self * unitary.adjoint()
    }

    pub fn apply(&self, v: &Ket<N>) -> Ket<N> {
        let mut out = [ZERO; N];
        for (i, row) in self.entries.iter().enumerate() {
            out[i] = row.iter().zip(v).map(|(a, b)| a * b).sum();
        }
        out
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖self − self†‖_max`.
    pub fn hermiticity_error(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    /// `‖U†U − I‖_max`.
    pub fn unitarity_error(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Self::identity())
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().flatten().all(|z| z.is_finite())
    }
}

impl<const N: usize> Default for SquareMatrix<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> Mul for SquareMatrix<N> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.entries[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    m.entries[i][j] += a * rhs.entries[k][j];
                }
            }
        }
        m
    }
}

impl<const N: usize> Add for SquareMatrix<N> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (a, b) in self.entries.iter_mut().flatten().zip(rhs.entries.iter().flatten()) {
            *a += b;
        }
        self
    }
}

impl<const N: usize> Sub for SquareMatrix<N> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        for (a, b) in self.entries.iter_mut().flatten().zip(rhs.entries.iter().flatten()) {
            *a -= b;
        }
        self
    }
}

impl<const N: usize> Neg for SquareMatrix<N> {
    type Output = Self;

    fn neg(self) -> Self {
        self.scale_re(-1.0)
    }
}

impl Mat2 {
    pub fn pauli_x() -> Self {
        Self::from_rows([[ZERO, ONE], [ONE, ZERO]])
    }

    pub fn pauli_y() -> Self {
        Self::from_rows([[ZERO, -I], [I, ZERO]])
    }

    /// `σ_z = |b⟩⟨b| − |a⟩⟨a|` in the `(|b⟩, |a⟩)` ordering.
    pub fn pauli_z() -> Self {
        Self::diag([1.0, -1.0])
    }
}

/// Kronecker product `a ⊗ b`; the path factor goes first, the detector second.
///
/// Basis index of the product is `2·i + j` for path index `i`, detector index `j`.
pub fn tensor(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut m = Mat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m.entries[2 * i + k][2 * j + l] = a.entries[i][j] * b.entries[k][l];
                }
            }
        }
    }
    m
}

/// Block-diagonal `diag(upper, lower)`, i.e. `|b⟩⟨b| ⊗ upper + |a⟩⟨a| ⊗ lower`.
pub fn block_diag(upper: &Mat2, lower: &Mat2) -> Mat4 {
    let mut m = Mat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            m.entries[i][j] = upper.entries[i][j];
            m.entries[2 + i][2 + j] = lower.entries[i][j];
        }
    }
    m
}

impl Mat4 {
    /// Trace over the first (path) factor.
    pub fn trace_out_first(&self) -> Mat2 {
        let mut m = Mat2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                m.entries[i][j] = self.entries[i][j] + self.entries[2 + i][2 + j];
            }
        }
        m
    }

    /// Trace over the second (detector) factor.
    pub fn trace_out_second(&self) -> Mat2 {
        let mut m = Mat2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                m.entries[i][j] =
                    self.entries[2 * i][2 * j] + self.entries[2 * i + 1][2 * j + 1];
            }
        }
        m
    }
}

pub fn inner<const N: usize>(u: &Ket<N>, v: &Ket<N>) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm<const N: usize>(v: &Ket<N>) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
