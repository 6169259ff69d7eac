//! Dense eigensolvers sized for this crate's matrices (order <= 62 plus
//! their doubled real embeddings).
//!
//! * Real symmetric: cyclic Jacobi sweeps. Quadratically convergent,
//!   near machine-precision residuals, trivially deterministic.
//! * Complex Hermitian: solved through the real symmetric embedding
//!   `[[X, -Y], [Y, X]]` of `H = X + iY`, whose spectrum is that of `H`
//!   with every multiplicity doubled; eigenvectors are reassembled from
//!   the paired real vectors.
//! * General real: Householder reduction to Hessenberg form followed by
//!   the Francis double-shift QR iteration, eigenvalues only. Ported
//!   from the classic Algol/EISPACK lineage (`orthes`/`hqr`).
//!
//! Every solver reports non-convergence as an error; nothing is returned
//! silently truncated.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, RealMatrix};
use crate::error::{Error, Result};

const JACOBI_MAX_SWEEPS: usize = 64;
const QR_MAX_ITER_PER_ROOT: usize = 100;

fn off_diagonal_norm(m: &RealMatrix) -> f64 {
    let n = m.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)] * m[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Eigendecomposition of a real symmetric matrix by cyclic Jacobi.
///
/// Returns eigenvalues in ascending order and the matching orthonormal
/// eigenvector columns.
pub fn eig_symmetric(a: &RealMatrix) -> Result<(Vec<f64>, RealMatrix)> {
    assert!(a.is_square(), "eig_symmetric needs a square matrix");
    let n = a.rows();
    let mut m = a.clone();
    let mut v = RealMatrix::identity(n);
    if n <= 1 {
        let vals = (0..n).map(|i| m[(i, i)]).collect();
        return Ok((vals, v));
    }

    let scale = m.frobenius_norm().max(1.0);
    let target = 64.0 * f64::EPSILON * scale;
    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&m) <= target {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq.abs() <= f64::EPSILON * target {
                    continue;
                }
                let tau = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = tau.signum() / (tau.abs() + (tau * tau + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // m <- Jᵀ m J with the rotation in the (p, q) plane
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged && off_diagonal_norm(&m) > target {
        return Err(Error::NonConvergence("Jacobi sweep cap reached"));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].total_cmp(&m[(j, j)]));
    let vals = order.iter().map(|&i| m[(i, i)]).collect();
    let vecs = RealMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok((vals, vecs))
}

/// Eigendecomposition of a complex Hermitian matrix.
///
/// Returns real eigenvalues in ascending order and orthonormal complex
/// eigenvector columns.
pub fn eig_hermitian(h: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    assert!(h.is_square(), "eig_hermitian needs a square matrix");
    let m = h.rows();
    if m == 0 {
        return Ok((Vec::new(), ComplexMatrix::zeros(0, 0)));
    }
    let scale = h.frobenius_norm().max(1.0);
    if !h.is_hermitian(1e-10 * scale) {
        return Err(Error::InvalidInput("matrix is not Hermitian".into()));
    }

    // Real embedding: H = X + iY maps to [[X, -Y], [Y, X]].
    let embedded = RealMatrix::from_fn(2 * m, 2 * m, |i, j| {
        let v = h[(i % m, j % m)];
        match (i / m, j / m) {
            (0, 0) | (1, 1) => v.re,
            (0, 1) => -v.im,
            _ => v.im,
        }
    });
    let (vals2, vecs2) = eig_symmetric(&embedded)?;

    // The embedded spectrum carries every eigenvalue of H twice. Walk the
    // sorted values in even-sized clusters and pull one complex vector per
    // pair back out of each cluster's real eigenspace.
    let pair_tol = 1e-10 * scale;
    let mut vals = Vec::with_capacity(m);
    let mut vecs = ComplexMatrix::zeros(m, m);
    let mut col = 0;
    let mut start = 0;
    while start < 2 * m {
        let mut end = start + 1;
        while end < 2 * m && vals2[end] - vals2[end - 1] <= pair_tol {
            end += 1;
        }
        while !(end - start).is_multiple_of(2) && end < 2 * m {
            end += 1;
            while end < 2 * m && vals2[end] - vals2[end - 1] <= pair_tol {
                end += 1;
            }
        }
        if !(end - start).is_multiple_of(2) {
            return Err(Error::Numerical(
                "embedded Hermitian spectrum failed to pair".into(),
            ));
        }
        let k = (end - start) / 2;
        for t in 0..k {
            vals.push(0.5 * (vals2[start + 2 * t] + vals2[start + 2 * t + 1]));
        }

        // Complex Gram-Schmidt over the cluster's candidates; the real
        // 2k-dimensional eigenspace maps onto a k-dimensional complex one.
        let mut accepted: Vec<Vec<Complex64>> = Vec::with_capacity(k);
        for cand_idx in start..end {
            if accepted.len() == k {
                break;
            }
            let mut x: Vec<Complex64> = (0..m)
                .map(|i| Complex64::new(vecs2[(i, cand_idx)], vecs2[(m + i, cand_idx)]))
                .collect();
            for u in &accepted {
                let proj: Complex64 = u.iter().zip(&x).map(|(ui, xi)| ui.conj() * xi).sum();
                for (xi, ui) in x.iter_mut().zip(u) {
                    *xi -= proj * ui;
                }
            }
            let nrm = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            if nrm > 1e-6 {
                for v in &mut x {
                    *v /= nrm;
                }
                accepted.push(x);
            }
        }
        if accepted.len() != k {
            return Err(Error::Numerical(
                "failed to extract complex eigenvectors from the real embedding".into(),
            ));
        }
        for x in accepted {
            for (i, v) in x.into_iter().enumerate() {
                vecs[(i, col)] = v;
            }
            col += 1;
        }
        start = end;
    }
    Ok((vals, vecs))
}

/// Largest eigenvalue of a Hermitian matrix together with one unit
/// eigenvector for it.
pub fn max_eig_hermitian(h: &ComplexMatrix) -> Result<(f64, Vec<Complex64>)> {
    let (vals, vecs) = eig_hermitian(h)?;
    let last = vals.len().checked_sub(1).ok_or_else(|| {
        Error::InvalidInput("max_eig_hermitian needs a non-empty matrix".into())
    })?;
    Ok((vals[last], vecs.column(last)))
}

/// All eigenvalues of a general real square matrix, as a complex multiset.
///
/// Complex eigenvalues appear in conjugate pairs. Hessenberg reduction
/// followed by Francis double-shift QR, eigenvalues only.
pub fn eig_general(a: &RealMatrix) -> Result<Vec<Complex64>> {
    assert!(a.is_square(), "eig_general needs a square matrix");
    let nn = a.rows();
    if nn == 0 {
        return Ok(Vec::new());
    }
    let mut h = a.clone();
    hessenberg_in_place(&mut h);
    hqr_eigenvalues(&mut h)
}

/// Householder reduction to upper Hessenberg form, no transform
/// accumulation. Entries below the first subdiagonal are cleared.
fn hessenberg_in_place(h: &mut RealMatrix) {
    let n = h.rows();
    if n < 3 {
        return;
    }
    let low = 0;
    let high = n - 1;
    let mut ort = vec![0.0; n];

    for m in (low + 1)..high {
        let mut scale = 0.0;
        for i in m..=high {
            scale += h[(i, m - 1)].abs();
        }
        if scale == 0.0 {
            continue;
        }
        let mut hsum = 0.0;
        for i in (m..=high).rev() {
            ort[i] = h[(i, m - 1)] / scale;
            hsum += ort[i] * ort[i];
        }
        let mut g = hsum.sqrt();
        if ort[m] > 0.0 {
            g = -g;
        }
        hsum -= ort[m] * g;
        ort[m] -= g;

        // Similarity transform H <- (I - u uᵀ/hsum) H (I - u uᵀ/hsum)
        for j in m..n {
            let mut f = 0.0;
            for i in (m..=high).rev() {
                f += ort[i] * h[(i, j)];
            }
            f /= hsum;
            for i in m..=high {
                h[(i, j)] -= f * ort[i];
            }
        }
        for i in 0..=high {
            let mut f = 0.0;
            for j in (m..=high).rev() {
                f += ort[j] * h[(i, j)];
            }
            f /= hsum;
            for j in m..=high {
                h[(i, j)] -= f * ort[j];
            }
        }
        h[(m, m - 1)] = scale * g;
    }

    for i in 2..n {
        for j in 0..i - 1 {
            h[(i, j)] = 0.0;
        }
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix, eigenvalues
/// only. Exceptional shifts fire at iterations 10 and 30 of a stalled
/// root; past `QR_MAX_ITER_PER_ROOT` the solver gives up loudly.
fn hqr_eigenvalues(h: &mut RealMatrix) -> Result<Vec<Complex64>> {
    let nn = h.rows();
    let low = 0usize;
    let eps = f64::EPSILON;
    let mut d = vec![0.0; nn];
    let mut e = vec![0.0; nn];

    let mut norm = 0.0;
    for i in 0..nn {
        for j in i.saturating_sub(1)..nn {
            norm += h[(i, j)].abs();
        }
    }
    if norm == 0.0 {
        return Ok(vec![Complex64::ZERO; nn]);
    }

    let mut n = nn - 1;
    let mut exshift = 0.0;
    let mut iter = 0usize;
    #[allow(clippy::many_single_char_names)]
    loop {
        // Look for a single small subdiagonal element. A stalled
        // iteration (defective clusters make subdiagonals stagnate a few
        // hundred ulps above the strict threshold while the bulge chase
        // washes out the shifts) is broken up by deflating at relaxed
        // absolute thresholds, tightest first; the backward error this
        // introduces stays orders below the solver contract.
        let relaxed = match iter {
            0..=15 => 0.0,
            16..=31 => 64.0 * eps * norm,
            _ => 1e-12 * norm,
        };
        let mut l = n;
        while l > low {
            let sub = h[(l, l - 1)].abs();
            let mut s = h[(l - 1, l - 1)].abs() + h[(l, l)].abs();
            if s == 0.0 {
                s = norm;
            }
            if sub < eps * s {
                break;
            }
            if sub <= relaxed {
                h[(l, l - 1)] = 0.0;
                break;
            }
            l -= 1;
        }

        if l == n {
            // One root found.
            d[n] = h[(n, n)] + exshift;
            e[n] = 0.0;
            if n == low {
                break;
            }
            n -= 1;
            iter = 0;
        } else if l == n - 1 {
            // Two roots found.
            let w = h[(n, n - 1)] * h[(n - 1, n)];
            let p = (h[(n - 1, n - 1)] - h[(n, n)]) / 2.0;
            let q = p * p + w;
            let zq = q.abs().sqrt();
            let x = h[(n, n)] + exshift;
            if q >= 0.0 {
                let z = if p >= 0.0 { p + zq } else { p - zq };
                d[n - 1] = x + z;
                d[n] = if z != 0.0 { x - w / z } else { d[n - 1] };
                e[n - 1] = 0.0;
                e[n] = 0.0;
            } else {
                d[n - 1] = x + p;
                d[n] = x + p;
                e[n - 1] = zq;
                e[n] = -zq;
            }
            iter = 0;
            if n >= low + 2 {
                n -= 2;
            } else {
                break;
            }
        } else {
            // No convergence yet: form the shift.
            let mut x = h[(n, n)];
            let mut y = h[(n - 1, n - 1)];
            let mut w = h[(n, n - 1)] * h[(n - 1, n)];

            // Ad hoc exceptional shifts, re-fired periodically so that
            // defective eigenvalue pairs cannot stall the iteration.
            if iter > 0 && iter.is_multiple_of(10) && !iter.is_multiple_of(30) {
                // Wilkinson's ad hoc shift.
                exshift += x;
                for i in low..=n {
                    h[(i, i)] -= x;
                }
                let s = h[(n, n - 1)].abs() + h[(n - 1, n - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            if iter > 0 && iter.is_multiple_of(30) {
                let mut s = (y - x) / 2.0;
                s = s * s + w;
                if s > 0.0 {
                    s = s.sqrt();
                    if y < x {
                        s = -s;
                    }
                    s = x - w / ((y - x) / 2.0 + s);
                    for i in low..=n {
                        h[(i, i)] -= s;
                    }
                    exshift += s;
                    x = 0.964;
                    y = x;
                    w = x;
                }
            }
            iter += 1;
            if iter > QR_MAX_ITER_PER_ROOT {
                return Err(Error::NonConvergence("QR iteration cap reached"));
            }

            // Look for two consecutive small subdiagonal elements.
            let mut m = n - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = h[(m, m)];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / h[(m + 1, m)] + h[(m, m + 1)];
                q = h[(m + 1, m + 1)] - z - rr - ss;
                r = h[(m + 2, m + 1)];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                if h[(m, m - 1)].abs() * (q.abs() + r.abs())
                    < eps
                        * (p.abs()
                            * (h[(m - 1, m - 1)].abs() + z.abs() + h[(m + 1, m + 1)].abs()))
                {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2)..=n {
                h[(i, i - 2)] = 0.0;
                if i > m + 2 {
                    h[(i, i - 3)] = 0.0;
                }
            }

            // Double QR sweep on rows l..=n and columns m..=n.
            for k in m..n {
                let notlast = k != n - 1;
                if k != m {
                    p = h[(k, k - 1)];
                    q = h[(k + 1, k - 1)];
                    r = if notlast { h[(k + 2, k - 1)] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x == 0.0 {
                        continue;
                    }
                    p /= x;
                    q /= x;
                    r /= x;
                }
                let mut s = (p * p + q * q + r * r).sqrt();
                if p < 0.0 {
                    s = -s;
                }
                if s == 0.0 {
                    continue;
                }
                if k != m {
                    h[(k, k - 1)] = -s * x;
                } else if l != m {
                    h[(k, k - 1)] = -h[(k, k - 1)];
                }
                p += s;
                x = p / s;
                y = q / s;
                let z = r / s;
                q /= p;
                r /= p;

                for j in k..nn {
                    let mut pp = h[(k, j)] + q * h[(k + 1, j)];
                    if notlast {
                        pp += r * h[(k + 2, j)];
                        h[(k + 2, j)] -= pp * z;
                    }
                    h[(k, j)] -= pp * x;
                    h[(k + 1, j)] -= pp * y;
                }
                for i in 0..=n.min(k + 3) {
                    let mut pp = x * h[(i, k)] + y * h[(i, k + 1)];
                    if notlast {
                        pp += z * h[(i, k + 2)];
                        h[(i, k + 2)] -= pp * r;
                    }
                    h[(i, k)] -= pp;
                    h[(i, k + 1)] -= pp * q;
                }
            }
        }
    }

    Ok(d.into_iter()
        .zip(e)
        .map(|(re, im)| Complex64::new(re, im))
        .collect())
}
