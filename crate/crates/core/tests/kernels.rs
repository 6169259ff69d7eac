//! Cross-checks between independent numerical routes: the embedded
//! Hermitian solver against a direct complex Jacobi sweep, the general
//! QR solver against trace and conjugacy invariants, and the float
//! eigensolvers against exact integer characteristic-polynomial spectra.

mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rnr::linalg::{eig_general, eig_hermitian, ComplexMatrix, RealMatrix, Spectrum};
use rnr::range::restricted_matrix;
use rnr::Digraph;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Direct complex Hermitian Jacobi sweep, eigenvalues only. Each pivot
/// is phased real and then rotated away exactly as in the real case.
/// Independent of the production path, which goes through the doubled
/// real embedding.
fn complex_jacobi_eigenvalues(h: &ComplexMatrix) -> Vec<f64> {
    let m = h.rows();
    let mut a = h.clone();
    let scale = a.frobenius_norm().max(1.0);
    for _ in 0..100 {
        let mut off = 0.0;
        for p in 0..m {
            for q in 0..m {
                if p != q {
                    off += a[(p, q)].norm_sqr();
                }
            }
        }
        if off.sqrt() <= 1e-14 * scale {
            break;
        }
        for p in 0..m.saturating_sub(1) {
            for q in p + 1..m {
                let apq = a[(p, q)];
                if apq.norm() == 0.0 {
                    continue;
                }
                // Phase row/column q so the pivot becomes |a_pq|.
                let u = apq.conj() / apq.norm();
                for k in 0..m {
                    a[(k, q)] *= u;
                }
                for k in 0..m {
                    a[(q, k)] *= u.conj();
                }
                let b = a[(p, q)].re;
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * b);
                let t = tau.signum() / (tau.abs() + (tau * tau + 1.0).sqrt());
                let cth = 1.0 / (t * t + 1.0).sqrt();
                let sth = t * cth;
                for k in 0..m {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * cth - akq * sth;
                    a[(k, q)] = akp * sth + akq * cth;
                }
                for k in 0..m {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * cth - aqk * sth;
                    a[(q, k)] = apk * sth + aqk * cth;
                }
            }
        }
    }
    let mut vals: Vec<f64> = (0..m).map(|i| a[(i, i)].re).collect();
    vals.sort_by(f64::total_cmp);
    vals
}

fn random_hermitian(m: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(m, m);
    for i in 0..m {
        h[(i, i)] = c(rng.random_range(-1.0..1.0), 0.0);
        for j in i + 1..m {
            let v = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            h[(i, j)] = v;
            h[(j, i)] = v.conj();
        }
    }
    h
}

#[test]
fn embedded_solver_matches_complex_jacobi() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..300 {
        let m = rng.random_range(1..=4);
        let h = random_hermitian(m, &mut rng);
        let (vals, vecs) = eig_hermitian(&h).unwrap();
        let oracle = complex_jacobi_eigenvalues(&h);
        assert_eq!(vals.len(), m, "doubled multiplicities not restored");
        for (a, b) in vals.iter().zip(&oracle) {
            assert!((a - b).abs() <= 1e-9, "eigenvalue mismatch {a} vs {b}");
        }
        // Unitarity of the reassembled eigenvectors.
        let gram = vecs.conj_transpose().matmul(&vecs);
        for i in 0..m {
            for j in 0..m {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((gram[(i, j)] - c(want, 0.0)).norm() <= 1e-9);
            }
        }
        // Residual per pair.
        let norm = h.frobenius_norm().max(1.0);
        for (k, &val) in vals.iter().enumerate() {
            let x = vecs.column(k);
            let hx = h.mul_vec(&x);
            let res: f64 = hx
                .iter()
                .zip(&x)
                .map(|(a, b)| (a - val * b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(res <= 1e-9 * norm, "residual {res}");
        }
    }
}

/// Repeated eigenvalues double again in the embedding; the cluster
/// extraction must still restore the multiplicity structure.
#[test]
fn embedded_solver_handles_degenerate_spectra() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        // Orthonormal complex triple via Gram-Schmidt.
        let m = 4;
        let mut basis: Vec<Vec<Complex64>> = Vec::new();
        while basis.len() < 3 {
            let mut v: Vec<Complex64> = (0..m)
                .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            for u in &basis {
                let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vk, uk) in v.iter_mut().zip(u) {
                    *vk -= proj * uk;
                }
            }
            let nrm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            if nrm > 1e-3 {
                for x in &mut v {
                    *x /= nrm;
                }
                basis.push(v);
            }
        }
        // H = 2 x x* + 2 y y* - z z*: eigenvalues {2, 2, -1, 0}.
        let h = ComplexMatrix::from_fn(m, m, |i, j| {
            2.0 * basis[0][i] * basis[0][j].conj() + 2.0 * basis[1][i] * basis[1][j].conj()
                - basis[2][i] * basis[2][j].conj()
        });
        let h = h.hermitian_part();
        let (vals, _) = eig_hermitian(&h).unwrap();
        let expected = [-1.0, 0.0, 2.0, 2.0];
        for (a, b) in vals.iter().zip(expected) {
            assert!((a - b).abs() <= 1e-9, "got {vals:?}");
        }
        let oracle = complex_jacobi_eigenvalues(&h);
        for (a, b) in vals.iter().zip(&oracle) {
            assert!((a - b).abs() <= 1e-9);
        }
    }
}

#[test]
fn hermitian_matches_general_on_real_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let n = rng.random_range(1..=7);
        let mut s = RealMatrix::zeros(n, n);
        for i in 0..n {
            s[(i, i)] = rng.random_range(-3..4) as f64;
            for j in i + 1..n {
                let v = rng.random_range(-3..4) as f64;
                s[(i, j)] = v;
                s[(j, i)] = v;
            }
        }
        let (herm_vals, _) = eig_hermitian(&s.to_complex()).unwrap();
        let herm = Spectrum::new(herm_vals.iter().map(|&v| c(v, 0.0)).collect());
        let general = Spectrum::new(eig_general(&s).unwrap());
        assert!(herm.matches(&general, 1e-7), "mismatch on\n{s}");
    }
}

#[test]
fn exact_charpoly_sanity() {
    // Known 2x2: [[2, 1], [0, 2]] has (x - 2)^2 = x^2 - 4x + 4.
    let p = common::charpoly(&[vec![2, 1], vec![0, 2]]);
    assert_eq!(p, vec![4, -4, 1]);
    let roots = common::exact_integer_roots(&p);
    assert_eq!(roots.len(), 2);
    for r in roots {
        assert!((r - c(2.0, 0.0)).norm() <= 1e-10);
    }

    // Rotation block: x^2 + 1.
    let p = common::charpoly(&[vec![0, -1], vec![1, 0]]);
    assert_eq!(p, vec![1, 0, 1]);

    // A Jordan-3 nilpotent plus identity: (x - 1)^3.
    let p = common::charpoly(&[vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]]);
    assert_eq!(p, vec![-1, 3, -3, 1]);
    let roots = common::exact_integer_roots(&p);
    assert_eq!(roots.len(), 3);
    for r in roots {
        assert!(
            (r - c(1.0, 0.0)).norm() <= 1e-10,
            "triple root recovered inexactly: {r}"
        );
    }
}

/// The integer compression must agree with the float restricted matrix:
/// same spectrum up to the defect-limited accuracy of the float route.
#[test]
fn compression_route_matches_float_restricted_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..60 {
        let n = rng.random_range(2..=6);
        let mut g = Digraph::new(n).unwrap();
        for u in 0..n {
            for v in 0..n {
                if u != v && rng.random_bool(0.4) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        let exact: Vec<Complex64> = common::exact_integer_spectrum(&common::compression_times_order(&g))
            .into_iter()
            .map(|z| z / n as f64)
            .collect();
        let float = eig_general(&restricted_matrix(&g)).unwrap();
        // Jordan blocks of size up to 3 limit the float route to about
        // (eps * norm)^(1/3); 2e-5 covers that with headroom.
        assert!(
            Spectrum::new(exact).matches(&Spectrum::new(float), 2e-5),
            "routes disagree on {g:?}"
        );
    }
}

/// Float general solver against the exact integer spectra of Laplacians,
/// at the defect-aware tolerance.
#[test]
fn general_solver_tracks_exact_laplacian_spectra() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..60 {
        let n = rng.random_range(2..=6);
        let mut g = Digraph::new(n).unwrap();
        for u in 0..n {
            for v in 0..n {
                if u != v && rng.random_bool(0.5) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        let exact = Spectrum::new(common::exact_integer_spectrum(&common::laplacian_i128(&g)));
        let float = Spectrum::new(eig_general(&g.laplacian()).unwrap());
        assert!(exact.matches(&float, 2e-5), "solver strayed on {g:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Trace and conjugate-pair invariants of the general solver on
    /// random small integer matrices.
    #[test]
    fn general_eigenvalues_sum_to_trace(entries in prop::collection::vec(-4i64..5, 1..=25)) {
        let n = (entries.len() as f64).sqrt().floor() as usize;
        prop_assume!(n >= 1);
        let a = RealMatrix::from_fn(n, n, |i, j| entries[i * n + j] as f64);
        let vals = eig_general(&a).unwrap();
        let trace: f64 = (0..n).map(|i| a[(i, i)]).sum();
        let sum: Complex64 = vals.iter().sum();
        let tol = 1e-8 * a.frobenius_norm().max(1.0);
        prop_assert!((sum.re - trace).abs() <= tol, "trace {trace} vs {sum}");
        prop_assert!(sum.im.abs() <= tol);

        // Closure under conjugation.
        let spec = Spectrum::new(vals.clone());
        let conj = Spectrum::new(vals.into_iter().map(|v| v.conj()).collect());
        prop_assert!(spec.matches(&conj, 1e-8));
    }
}
