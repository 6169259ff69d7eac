//! Dense linear algebra: matrix values, restrictor matrices, the mean
//! projector, eigensolvers and planar hulls.

mod eig;
mod hull;
mod matrix;
mod spectrum;

pub use eig::{eig_general, eig_hermitian, eig_symmetric, max_eig_hermitian};
pub use hull::{convex_hull, HullPolygon};
pub use matrix::{ComplexMatrix, RealMatrix};
pub use spectrum::Spectrum;

/// Restrictor matrix of order `n`: an `n x (n-1)` orthonormal matrix
/// whose columns span the orthogonal complement of the all-ones vector.
///
/// Built from the Householder reflector that sends `e/sqrt(n)` to the
/// last coordinate axis, dropping that last column. For `n = 1` the
/// result is the legal `1 x 0` empty matrix.
pub fn restrictor_matrix(n: usize) -> RealMatrix {
    assert!(n >= 1, "restrictor matrix needs order >= 1");
    if n == 1 {
        return RealMatrix::zeros(1, 0);
    }
    let inv_sqrt_n = 1.0 / (n as f64).sqrt();
    // v = e/sqrt(n) - e_n, reflector H = I - 2 v vᵀ / ‖v‖².
    let mut v = vec![inv_sqrt_n; n];
    v[n - 1] -= 1.0;
    let norm_sq: f64 = v.iter().map(|x| x * x).sum();
    RealMatrix::from_fn(n, n - 1, |i, j| {
        let id = if i == j { 1.0 } else { 0.0 };
        id - 2.0 * v[i] * v[j] / norm_sq
    })
}

/// Alternative restrictor built by Gram-Schmidt on the difference basis
/// `e_i - e_{i+1}`. Ships alongside [`restrictor_matrix`] so invariance
/// of range quantities under the choice of restrictor can be tested.
pub fn restrictor_matrix_gram_schmidt(n: usize) -> RealMatrix {
    assert!(n >= 1, "restrictor matrix needs order >= 1");
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n.saturating_sub(1) {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        v[i + 1] = -1.0;
        for u in &cols {
            let proj: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
            for (vk, uk) in v.iter_mut().zip(u) {
                *vk -= proj * uk;
            }
        }
        let nrm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        for vk in &mut v {
            *vk /= nrm;
        }
        cols.push(v);
    }
    RealMatrix::from_fn(n, n.saturating_sub(1), |i, j| cols[j][i])
}

/// The projector `P = Q Qᵀ = I - (1/n) e eᵀ` onto the orthogonal
/// complement of the all-ones vector.
pub fn mean_projector(n: usize) -> RealMatrix {
    assert!(n >= 1);
    let inv_n = 1.0 / n as f64;
    RealMatrix::from_fn(n, n, |i, j| {
        let id = if i == j { 1.0 } else { 0.0 };
        id - inv_n
    })
}
