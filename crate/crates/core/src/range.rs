//! Restricted numerical range geometry and the three-way classification
//! of polygonal digraphs.
//!
//! The range of a digraph of order `n >= 2` is the numerical range of
//! `B = QᵀLQ`, where `L` is the Laplacian and `Q` a restrictor matrix.
//! Class membership is decided by exact integer identities on the
//! adjacency matrix wherever possible:
//!
//! * normal — balanced plus a pairwise identity on adjacency rows and
//!   columns and out-degrees;
//! * restricted-normal — not balanced plus an imbalance product
//!   identity, cross-multiplied by `n` so every check stays integral.
//!
//! Floating point enters only through the supporting-line test that
//! separates pseudo-normal from non-polygonal digraphs: every edge of
//! the eigenvalue hull of `B` must be a supporting line of `W(B)`,
//! checked through the largest eigenvalue of the Hermitian part of the
//! rotated matrix.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::linalg::{
    convex_hull, eig_general, eig_hermitian, eig_symmetric, max_eig_hermitian, mean_projector,
    restrictor_matrix, ComplexMatrix, HullPolygon, RealMatrix, Spectrum,
};

/// Classification of a digraph by the shape of its restricted numerical
/// range and the normality of `L` and `QᵀLQ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassLabel {
    Normal,
    RestrictedNormal,
    PseudoNormal,
    NonPolygonal,
}

impl ClassLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassLabel::Normal => "normal",
            ClassLabel::RestrictedNormal => "restricted_normal",
            ClassLabel::PseudoNormal => "pseudo_normal",
            ClassLabel::NonPolygonal => "non_polygonal",
        }
    }

    pub fn is_polygonal(self) -> bool {
        self != ClassLabel::NonPolygonal
    }
}

impl std::fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Sampled boundary of the restricted numerical range.
#[derive(Clone, Debug)]
pub struct RnrResult {
    /// One point `x*Bx` per sampled angle, `x` a top eigenvector of the
    /// rotated Hermitian part.
    pub boundary_points: Vec<Complex64>,
    /// Support value `h(theta_k)` per sampled angle.
    pub support_values: Vec<f64>,
    /// Convex hull of the restricted spectrum.
    pub hull: HullPolygon,
    pub alpha: f64,
    pub beta: f64,
}

/// Default supporting-line slack for an integer Laplacian of order `n`.
pub fn default_eps(n: usize) -> f64 {
    1e-7 * (n as f64).max(1.0)
}

/// `B = QᵀLQ`, the compression of the Laplacian onto the complement of
/// the all-ones vector.
pub fn restricted_matrix(g: &Digraph) -> RealMatrix {
    restricted_matrix_with(g, &restrictor_matrix(g.order().max(1)))
}

/// Same as [`restricted_matrix`] with a caller-supplied restrictor, so
/// invariance under the choice of `Q` can be exercised.
pub fn restricted_matrix_with(g: &Digraph, q: &RealMatrix) -> RealMatrix {
    let lap = g.laplacian();
    q.transpose().matmul(&lap).matmul(q)
}

/// Eigenvalues of `L` with one zero removed: the spectrum of `QᵀLQ` as
/// a multiset. The removed value must be numerically zero — `L` always
/// annihilates the all-ones vector — otherwise the eigensolve is
/// reported as failed.
pub fn restricted_spectrum(g: &Digraph) -> Result<Spectrum> {
    let n = g.order();
    if n < 1 {
        return Err(Error::InvalidInput(
            "restricted spectrum needs order >= 1".into(),
        ));
    }
    let lap = g.laplacian();
    let spectrum = Spectrum::new(eig_general(&lap)?);
    let (removed, rest) = spectrum
        .remove_closest(Complex64::ZERO)
        .expect("order >= 1 gives a non-empty spectrum");
    let tol = 1e-7 * lap.frobenius_norm().max(1.0);
    if removed.norm() > tol {
        return Err(Error::Numerical(format!(
            "eigenvalue nearest zero has modulus {:.3e}, exceeding {:.3e}",
            removed.norm(),
            tol
        )));
    }
    Ok(rest)
}

/// Algebraic connectivity `alpha` and its maximum counterpart `beta`:
/// the extreme eigenvalues of the symmetric part of `QᵀLQ`.
pub fn alpha_beta(g: &Digraph) -> Result<(f64, f64)> {
    alpha_beta_with(g, &restrictor_matrix(g.order().max(1)))
}

pub fn alpha_beta_with(g: &Digraph, q: &RealMatrix) -> Result<(f64, f64)> {
    if g.order() < 2 {
        return Err(Error::EmptyRange(g.order()));
    }
    let b = restricted_matrix_with(g, q);
    let (vals, _) = eig_symmetric(&b.symmetric_part())?;
    Ok((vals[0], vals[vals.len() - 1]))
}

/// Unit complex number `e^{i 2 pi k / m}`, exact at quadrant multiples
/// so that rotations by 0, pi/2, pi and 3pi/2 of a real matrix keep the
/// Hermitian part exactly real or exactly imaginary.
fn unit_rotation(k: usize, m: usize) -> Complex64 {
    if (4 * k).is_multiple_of(m) {
        match (4 * k / m) % 4 {
            0 => return Complex64::new(1.0, 0.0),
            1 => return Complex64::new(0.0, 1.0),
            2 => return Complex64::new(-1.0, 0.0),
            _ => return Complex64::new(0.0, -1.0),
        }
    }
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / m as f64)
}

fn support_at(b: &ComplexMatrix, rot: Complex64) -> Result<(f64, Vec<Complex64>)> {
    max_eig_hermitian(&b.scale(rot).hermitian_part())
}

/// Samples the boundary of the restricted numerical range at `m`
/// equally spaced supporting angles.
pub fn boundary_sample(g: &Digraph, m: usize) -> Result<RnrResult> {
    if g.order() < 2 {
        return Err(Error::EmptyRange(g.order()));
    }
    if m < 3 {
        return Err(Error::InvalidInput(format!(
            "boundary sampling needs at least 3 angles, got {m}"
        )));
    }
    let b = restricted_matrix(g);
    let bc = b.to_complex();
    let spectrum = restricted_spectrum(g)?;
    let max_norm = spectrum
        .values()
        .iter()
        .fold(0.0f64, |acc, v| acc.max(v.norm()));
    let hull = convex_hull(spectrum.values(), 1e-8 * (1.0 + max_norm));
    let (alpha, beta) = alpha_beta(g)?;

    let mut boundary_points = Vec::with_capacity(m);
    let mut support_values = Vec::with_capacity(m);
    for k in 0..m {
        let rot = unit_rotation(k, m);
        let (support, x) = support_at(&bc, rot)?;
        support_values.push(support);
        boundary_points.push(bc.quadratic_form(&x));
    }
    Ok(RnrResult { boundary_points, support_values, hull, alpha, beta })
}

/// Supporting-line test: is the restricted numerical range equal to the
/// convex hull of the restricted spectrum?
///
/// With hull vertices `v_1..v_k` counter-clockwise, each edge direction
/// `d_j` is rotated onto a vertical supporting line via `i * conj(d_j)`;
/// the digraph is polygonal iff no rotated Hermitian top eigenvalue
/// exceeds the rotated vertex by more than `eps`. A single-vertex hull
/// degenerates to comparing the Hermitian spread against `eps`.
pub fn is_polygonal(g: &Digraph, eps: f64) -> Result<bool> {
    is_polygonal_with(g, eps, &restrictor_matrix(g.order().max(1)))
}

pub fn is_polygonal_with(g: &Digraph, eps: f64, q: &RealMatrix) -> Result<bool> {
    if g.order() < 2 {
        return Err(Error::EmptyRange(g.order()));
    }
    let b = restricted_matrix_with(g, q);
    let bc = b.to_complex();
    let eigenvalues = eig_general(&b)?;
    let merge_tol = 1e-7 * (1.0 + b.frobenius_norm());
    let hull = convex_hull(&eigenvalues, merge_tol);

    if hull.len() == 1 {
        let (vals, _) = eig_hermitian(&bc.hermitian_part())?;
        return Ok(vals[vals.len() - 1] <= vals[0] + eps);
    }
    for (vj, vj1) in hull.edges() {
        let d = (vj1 - vj) / (vj1 - vj).norm();
        let rot = Complex64::I * d.conj();
        let (support, _) = support_at(&bc, rot)?;
        if support > (rot * vj).re + eps {
            return Ok(false);
        }
    }
    Ok(true)
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Exact normality test: balanced, and for every vertex pair the
/// adjacency asymmetry times the out-degree difference matches the
/// common-neighbor balance. Integer arithmetic throughout.
pub fn is_normal_exact(g: &Digraph) -> bool {
    let n = g.order();
    let prof = g.degree_profile();
    if prof.imbalances.iter().any(|&x| x != 0) {
        return false;
    }
    let d: Vec<i64> = prof.out_degrees.iter().map(|&x| x as i64).collect();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = (g.adjacency(i, j) - g.adjacency(j, i)) * (d[j] - d[i]);
            let rhs: i64 = (0..n)
                .filter(|&k| k != i && k != j)
                .map(|k| {
                    g.adjacency(i, k) * g.adjacency(j, k) - g.adjacency(k, i) * g.adjacency(k, j)
                })
                .sum();
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Exact restricted-normality test: not balanced, and the imbalance
/// product identity holds against base vertex 0.
pub fn is_restricted_normal_exact(g: &Digraph) -> bool {
    !g.is_balanced() && restricted_normal_identity(g, 0)
}

/// The integer identity behind restricted normality, relative to an
/// arbitrary base vertex `base`: for all `i, j != base`,
/// `(imb(i) - imb(base)) * (imb(j) - imb(base)) = n * rhs(i, j)` where
/// `rhs` compares Gram products of Laplacian column and row differences.
/// Any base gives the same answer.
pub fn restricted_normal_identity(g: &Digraph, base: usize) -> bool {
    let n = g.order();
    assert!(base < n, "base vertex out of range");
    let lap = g.laplacian_integer();
    let imb = g.degree_profile().imbalances;
    let ni = n as i64;

    let col = |j: usize| -> Vec<i64> { (0..n).map(|i| lap[i][j]).collect() };
    let row = |i: usize| -> Vec<i64> { lap[i].clone() };
    let col_base = col(base);
    let row_base = row(base);

    let others: Vec<usize> = (0..n).filter(|&v| v != base).collect();
    let col_diffs: Vec<Vec<i64>> = others
        .iter()
        .map(|&i| col(i).iter().zip(&col_base).map(|(a, b)| a - b).collect())
        .collect();
    let row_diffs: Vec<Vec<i64>> = others
        .iter()
        .map(|&i| row(i).iter().zip(&row_base).map(|(a, b)| a - b).collect())
        .collect();

    for (a, &i) in others.iter().enumerate() {
        for (b, &j) in others.iter().enumerate().skip(a) {
            let lhs = (imb[i] - imb[base]) * (imb[j] - imb[base]);
            let rhs = dot(&col_diffs[a], &col_diffs[b]) - dot(&row_diffs[a], &row_diffs[b]);
            if lhs != ni * rhs {
                return false;
            }
        }
    }
    true
}

/// Classifies a digraph of order >= 2.
///
/// The two exact integer tests run first, so normal and
/// restricted-normal labels never depend on floating point; the
/// supporting-line test only separates pseudo-normal from
/// non-polygonal. `eps` defaults to [`default_eps`].
pub fn classify(g: &Digraph, eps: Option<f64>) -> Result<ClassLabel> {
    if g.order() < 2 {
        return Err(Error::EmptyRange(g.order()));
    }
    if is_normal_exact(g) {
        return Ok(ClassLabel::Normal);
    }
    if is_restricted_normal_exact(g) {
        return Ok(ClassLabel::RestrictedNormal);
    }
    let eps = eps.unwrap_or_else(|| default_eps(g.order()));
    if is_polygonal(g, eps)? {
        Ok(ClassLabel::PseudoNormal)
    } else {
        Ok(ClassLabel::NonPolygonal)
    }
}

/// For polygonal digraphs, zero algebraic connectivity is equivalent to
/// having at least two terminal strong components. Returns whether the
/// equivalence holds for `g`; meaningful as an oracle on polygonal
/// inputs, where it is always expected to be true.
pub fn alpha_zero_iff_multiple_terminal_scc(g: &Digraph) -> Result<bool> {
    let (alpha, _) = alpha_beta(g)?;
    let terminal = g.scc_decomposition().terminal_count();
    Ok((alpha.abs() <= 1e-7) == (terminal >= 2))
}

/// The three binary digraph operations whose effect on the range of
/// balanced operands is a plain hull identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JoinKind {
    DisjointUnion,
    DirectedJoin,
    BidirectionalJoin,
}

impl JoinKind {
    pub fn apply(self, g1: &Digraph, g2: &Digraph) -> Result<Digraph> {
        match self {
            JoinKind::DisjointUnion => g1.disjoint_union(g2),
            JoinKind::DirectedJoin => g1.directed_join(g2),
            JoinKind::BidirectionalJoin => g1.bidirectional_join(g2),
        }
    }
}

/// Checks the support-function identities for combining two balanced
/// digraphs: the combined support at each sampled angle must equal the
/// max of the operands' (shifted) supports and the shift point itself.
/// Returns the largest absolute discrepancy over `m` angles.
pub fn support_identity_discrepancy(
    g1: &Digraph,
    g2: &Digraph,
    op: JoinKind,
    m: usize,
) -> Result<f64> {
    if !g1.is_balanced() || !g2.is_balanced() {
        return Err(Error::InvalidInput(
            "support identities require balanced operands".into(),
        ));
    }
    let combined = op.apply(g1, g2)?;
    if combined.order() < 2 {
        return Err(Error::EmptyRange(combined.order()));
    }
    let (n1, n2) = (g1.order() as f64, g2.order() as f64);
    let b = restricted_matrix(&combined).to_complex();
    let b1 = (g1.order() >= 2).then(|| restricted_matrix(g1).to_complex());
    let b2 = (g2.order() >= 2).then(|| restricted_matrix(g2).to_complex());

    let mut worst = 0.0f64;
    for k in 0..m {
        let rot = unit_rotation(k, m);
        let (combined_support, _) = support_at(&b, rot)?;
        let h1 = match &b1 {
            Some(b1) => Some(support_at(b1, rot)?.0),
            None => None,
        };
        let h2 = match &b2 {
            Some(b2) => Some(support_at(b2, rot)?.0),
            None => None,
        };
        let cos = rot.re;
        let mut candidates: Vec<f64> = Vec::with_capacity(3);
        match op {
            JoinKind::DisjointUnion => {
                if let Some(h1) = h1 {
                    candidates.push(h1);
                }
                if let Some(h2) = h2 {
                    candidates.push(h2);
                }
                candidates.push(0.0);
            }
            JoinKind::DirectedJoin => {
                if let Some(h1) = h1 {
                    candidates.push(h1 + n2 * cos);
                }
                if let Some(h2) = h2 {
                    candidates.push(h2);
                }
                candidates.push(n2 * cos);
            }
            JoinKind::BidirectionalJoin => {
                if let Some(h1) = h1 {
                    candidates.push(h1 + n2 * cos);
                }
                if let Some(h2) = h2 {
                    candidates.push(h2 + n1 * cos);
                }
                candidates.push((n1 + n2) * cos);
            }
        }
        let expected = candidates.into_iter().fold(f64::NEG_INFINITY, f64::max);
        worst = worst.max((combined_support - expected).abs());
    }
    Ok(worst)
}

/// Cross-check between the floating and exact routes to restricted
/// normality: `QᵀLQ` is normal exactly when the projected Laplacian
/// `PL` is, which the exact tests decide as "normal or
/// restricted-normal". Returns whether the two routes agree on `g`.
pub fn projected_normality_agrees(g: &Digraph) -> Result<bool> {
    let n = g.order();
    if n < 1 {
        return Ok(true);
    }
    let pl = mean_projector(n).matmul(&g.laplacian());
    let plt = pl.transpose();
    let commutator = pl.matmul(&plt).sub(&plt.matmul(&pl));
    let float_normal = commutator.frobenius_norm() <= 1e-7;
    let exact_normal = is_restricted_normal_exact(g) || is_normal_exact(g);
    Ok(float_normal == exact_normal)
}
