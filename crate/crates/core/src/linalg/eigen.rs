use super::matrix::{Ket, Mat2, SquareMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// Hermiticity tolerance accepted by the eigen routines.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Eigenvalue gap below which a 2×2 spectrum is treated as degenerate.
pub const DEGENERACY_GAP: f64 = 1e-14;

/// Spectral decomposition of a 2×2 Hermitian matrix.
///
/// `values` are sorted descending and `vectors[k]` belongs to `values[k]`.
/// The first component of each eigenvector whose modulus exceeds `1e-14` is
/// real and positive, which fixes the global phase.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Eigen2 {
    pub values: [f64; 2],
    pub vectors: [Ket<2>; 2],
}

impl Eigen2 {
    pub fn gap(&self) -> f64 {
        self.values[0] - self.values[1]
    }

    /// `Σ λ_k |v_k⟩⟨v_k|`.
    pub fn reconstruct(&self) -> Mat2 {
        self.values
            .iter()
            .zip(&self.vectors)
            .fold(Mat2::zeros(), |acc, (&l, v)| acc + Mat2::outer(v).scale_re(l))
    }
}

fn check_hermitian<const N: usize>(h: &SquareMatrix<N>) -> Result<()> {
    if !h.is_finite() {
        return Err(Error::invalid("matrix has non-finite entries"));
    }
    let err = h.hermiticity_error();
    if err > HERMITIAN_TOL {
        return Err(Error::invalid(format!(
            "matrix is not Hermitian (‖h − h†‖ = {err:.3e})"
        )));
    }
    Ok(())
}

fn fix_phase(mut v: Ket<2>) -> Ket<2> {
    let n = super::matrix::norm(&v);
    for z in v.iter_mut() {
        *z /= n;
    }
    if let Some(lead) = v.iter().find(|z| z.norm() > 1e-14).copied() {
        let phase = lead.conj() / lead.norm();
        for z in v.iter_mut() {
            *z *= phase;
        }
    }
    v
}

/// Closed-form eigendecomposition of a 2×2 Hermitian matrix.
///
/// Works on the traceless part `[[z, b], [b*, −z]]`, whose eigenvalues are
/// `±√(z² + |b|²)`. The eigenvector of the upper eigenvalue is taken from
/// whichever row of `h − λ₊` is better conditioned, and the lower one is its
/// orthogonal complement, so orthonormality holds even for tiny gaps.
pub fn hermitian_eig2(h: &Mat2) -> Result<Eigen2> {
    check_hermitian(h)?;
    let a = h.get(0, 0).re;
    let d = h.get(1, 1).re;
    let b = 0.5 * (h.get(0, 1) + h.get(1, 0).conj());
    let mean = 0.5 * (a + d);
    let z = 0.5 * (a - d);
    let r = z.hypot(b.norm());

    if 2.0 * r < DEGENERACY_GAP {
        return Ok(Eigen2 {
            values: [mean + r, mean - r],
            vectors: [[ONE, ZERO], [ZERO, ONE]],
        });
    }

    let upper = if z >= 0.0 {
        [C64::new(z + r, 0.0), b.conj()]
    } else {
        [b, C64::new(r - z, 0.0)]
    };
    let upper = fix_phase(upper);
    let lower = fix_phase([-upper[1].conj(), upper[0].conj()]);
    Ok(Eigen2 {
        values: [mean + r, mean - r],
        vectors: [upper, lower],
    })
}

/// Trace norm `Σ|λ_k|` of a 2×2 Hermitian matrix.
pub fn trace_norm(h: &Mat2) -> Result<f64> {
    let eig = hermitian_eig2(h)?;
    Ok(eig.values.iter().map(|l| l.abs()).sum())
}

/// Ascending eigenvalues of an `N×N` Hermitian matrix (`N ≤ 4`).
///
/// Uses cyclic Jacobi sweeps on the real symmetric embedding
/// `[[Re h, −Im h], [Im h, Re h]]`, whose spectrum is that of `h` with every
/// eigenvalue doubled.
pub fn hermitian_eigenvalues<const N: usize>(h: &SquareMatrix<N>) -> Result<Vec<f64>> {
    const MAX: usize = 8;
    assert!(2 * N <= MAX, "hermitian_eigenvalues supports N <= 4");
    check_hermitian(h)?;

    let n = 2 * N;
    let mut m = [[0.0f64; MAX]; MAX];
    for i in 0..N {
        for j in 0..N {
            // Symmetrize so tiny anti-Hermitian noise does not stall the sweeps.
            let z = 0.5 * (h.get(i, j) + h.get(j, i).conj());
            m[i][j] = z.re;
            m[N + i][N + j] = z.re;
            m[i][N + j] = -z.im;
            m[N + i][j] = z.im;
        }
    }

    for _sweep in 0..64 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i][j] * m[i][j])
            .sum();
        let scale: f64 = (0..n).map(|i| m[i][i] * m[i][i]).sum::<f64>() + off;
        if off <= 1e-32 * scale.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                for row in m.iter_mut().take(n) {
                    let (rp, rq) = (row[p], row[q]);
                    row[p] = c * rp - s * rq;
                    row[q] = s * rp + c * rq;
                }
                let (head, tail) = m.split_at_mut(q);
                for (x, y) in head[p].iter_mut().zip(tail[0].iter_mut()).take(n) {
                    let (xp, yq) = (*x, *y);
                    *x = c * xp - s * yq;
                    *y = s * xp + c * yq;
                }
            }
        }
    }

    let mut doubled: Vec<f64> = (0..n).map(|i| m[i][i]).collect();
    doubled.sort_by(f64::total_cmp);
    // Pairs are equal up to rounding; average each pair.
    Ok(doubled.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect())
}
