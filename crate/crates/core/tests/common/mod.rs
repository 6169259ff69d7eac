//! Shared oracle machinery for the integration suites.
//!
//! The spectrum-identity checks need eigenvalue multisets that stay
//! accurate in the presence of defective (Jordan-block) eigenvalues,
//! where any dense float eigensolver — ours or LAPACK's — is limited to
//! errors on the order of the machine epsilon to the power 1/k for a
//! block of size k. Integer matrices admit an exact route: compute the
//! characteristic polynomial in exact integer arithmetic, read the
//! multiplicity structure off the gcd chain p, gcd(p, p'),
//! gcd(gcd(p, p'), ...), and only ever root square-free factors, whose
//! simple roots the QR solver delivers to near machine precision.

use num_complex::Complex64;
use rnr::linalg::{eig_general, RealMatrix};
use rnr::Digraph;

/// Integer polynomials as ascending coefficient vectors: `p[i]` is the
/// coefficient of `x^i`. Invariant: no trailing zeros (except the zero
/// polynomial, which is the empty vector).
type Poly = Vec<i128>;

fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn degree(p: &Poly) -> usize {
    p.len().saturating_sub(1)
}

fn derivative(p: &Poly) -> Poly {
    if p.len() <= 1 {
        return Vec::new();
    }
    trim((1..p.len()).map(|i| p[i] * i as i128).collect())
}

fn content(p: &Poly) -> i128 {
    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    p.iter().fold(0, |acc, &c| gcd(acc, c))
}

fn primitive(p: Poly) -> Poly {
    let c = content(&p);
    let p = if c <= 1 {
        p
    } else {
        p.into_iter().map(|x| x / c).collect()
    };
    normalize_sign(p)
}

fn normalize_sign(mut p: Poly) -> Poly {
    if p.last().is_some_and(|&lc| lc < 0) {
        for c in &mut p {
            *c = -*c;
        }
    }
    p
}

/// Pseudo-remainder of `a` by `b` (integer-preserving division step).
fn pseudo_rem(a: &Poly, b: &Poly) -> Poly {
    assert!(!b.is_empty());
    let mut r = a.clone();
    let lb = *b.last().unwrap();
    while !r.is_empty() && degree(&r) >= degree(b) {
        let shift = degree(&r) - degree(b);
        let lr = *r.last().unwrap();
        for c in &mut r {
            *c *= lb;
        }
        for (i, &bc) in b.iter().enumerate() {
            r[i + shift] -= lr * bc;
        }
        r = trim(r);
    }
    r
}

/// Primitive polynomial gcd by pseudo-remainder Euclid.
fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let mut a = primitive(a.clone());
    let mut b = primitive(b.clone());
    while !b.is_empty() {
        let r = primitive(pseudo_rem(&a, &b));
        a = b;
        b = r;
    }
    a
}

/// Exact division `a / b`; panics when the division is not exact.
fn poly_div_exact(a: &Poly, b: &Poly) -> Poly {
    assert!(!b.is_empty());
    let mut r = a.clone();
    let lb = *b.last().unwrap();
    let mut q = vec![0i128; degree(a).saturating_sub(degree(b)) + 1];
    while !r.is_empty() && degree(&r) >= degree(b) {
        let shift = degree(&r) - degree(b);
        let lr = *r.last().unwrap();
        assert_eq!(lr % lb, 0, "inexact polynomial division");
        let qc = lr / lb;
        q[shift] = qc;
        for (i, &bc) in b.iter().enumerate() {
            r[i + shift] -= qc * bc;
        }
        r = trim(r);
    }
    assert!(r.is_empty(), "nonzero remainder in exact division");
    trim(q)
}

/// `p / gcd(p, p')`: same distinct roots, all simple.
fn squarefree_part(p: &Poly) -> Poly {
    let g = poly_gcd(p, &derivative(p));
    if degree(&g) == 0 {
        primitive(p.clone())
    } else {
        primitive(poly_div_exact(&primitive(p.clone()), &g))
    }
}

/// Roots of a square-free integer polynomial via its companion matrix.
fn roots_of_squarefree(p: &Poly) -> Vec<Complex64> {
    let d = degree(p);
    if d == 0 {
        return Vec::new();
    }
    let lead = *p.last().unwrap() as f64;
    let companion = RealMatrix::from_fn(d, d, |i, j| {
        if j + 1 == d {
            -(p[i] as f64) / lead
        } else {
            f64::from(i == j + 1)
        }
    });
    eig_general(&companion).expect("square-free companion eigensolve")
}

/// Monic characteristic polynomial of an integer matrix by the
/// Faddeev-LeVerrier recurrence; all divisions are exact.
pub fn charpoly(a: &[Vec<i128>]) -> Poly {
    let n = a.len();
    let matmul = |x: &Vec<Vec<i128>>, y: &[Vec<i128>]| -> Vec<Vec<i128>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum())
                    .collect()
            })
            .collect()
    };
    let trace = |x: &Vec<Vec<i128>>| -> i128 { (0..n).map(|i| x[i][i]).sum() };

    // coeffs[n - m] = c_m with p(x) = x^n + c_1 x^{n-1} + ... + c_n
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    let mut work: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut c_prev = 1i128;
    for m in 1..=n {
        if m > 1 {
            for (i, row) in work.iter_mut().enumerate() {
                row[i] += c_prev;
            }
        }
        work = matmul(&work, a);
        let c = -trace(&work) / m as i128;
        coeffs[n - m] = c;
        c_prev = c;
    }
    coeffs
}

/// Roots of an integer polynomial with multiplicity. Distinct roots come
/// from square-free factors (hence are computed accurately); the
/// multiplicity of each root is the number of gcd-chain levels it
/// survives, which is exact integer algebra.
pub fn exact_integer_roots(p: &Poly) -> Vec<Complex64> {
    let p = trim(p.clone());
    if p.len() <= 1 {
        return Vec::new();
    }

    // levels[k] holds the roots of multiplicity >= k + 1.
    let mut levels: Vec<Vec<Complex64>> = Vec::new();
    let mut cur = primitive(p.clone());
    while degree(&cur) > 0 {
        levels.push(roots_of_squarefree(&squarefree_part(&cur)));
        let g = poly_gcd(&cur, &derivative(&cur));
        if degree(&g) == 0 {
            break;
        }
        cur = g;
    }

    let distinct = levels[0].clone();
    let mut multiplicity = vec![1usize; distinct.len()];
    for level in levels.iter().skip(1) {
        for r in level {
            let (idx, dist) = distinct
                .iter()
                .enumerate()
                .map(|(i, d)| (i, (d - r).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("non-empty level under a non-empty root set");
            assert!(
                dist < 1e-8,
                "gcd-chain root {r} strayed {dist:e} from the distinct set of {p:?}"
            );
            multiplicity[idx] += 1;
        }
    }

    let mut roots = Vec::with_capacity(degree(&p));
    for (r, m) in distinct.into_iter().zip(multiplicity) {
        roots.extend(std::iter::repeat_n(r, m));
    }
    assert_eq!(
        roots.len(),
        degree(&p),
        "multiplicity bookkeeping lost roots of {p:?}"
    );
    roots
}

/// Eigenvalue multiset of an integer matrix, exact through defective
/// eigenvalues.
pub fn exact_integer_spectrum(a: &[Vec<i128>]) -> Vec<Complex64> {
    exact_integer_roots(&charpoly(a))
}

/// The integer matrix `n * M`, where `M` represents the compression of
/// the Laplacian onto the complement of the all-ones vector in the
/// difference basis `e_i - e_{i+1}`. `M` is similar to `QᵀLQ`, so
/// `spectrum(n * M) / n` equals the restricted spectrum exactly. This is
/// an independent route: no restrictor matrix and no floating point.
pub fn compression_times_order(g: &Digraph) -> Vec<Vec<i128>> {
    let n = g.order();
    assert!(n >= 1);
    let m = n - 1;
    let lap = g.laplacian_integer();
    // (DᵀLD)[i][j] with D columns e_i - e_{i+1}.
    let dtld: Vec<Vec<i128>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let v = lap[i][j] - lap[i][j + 1] - lap[i + 1][j] + lap[i + 1][j + 1];
                    i128::from(v)
                })
                .collect()
        })
        .collect();
    // n times the inverse of the difference-basis Gram matrix (the
    // tridiagonal 2/-1 matrix): entries (min+1) * (n-1-max), 0-based.
    let gram_adj = |i: usize, j: usize| -> i128 { ((i.min(j) + 1) * (n - 1 - i.max(j))) as i128 };
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| (0..m).map(|k| gram_adj(i, k) * dtld[k][j]).sum())
                .collect()
        })
        .collect()
}

#[allow(dead_code)]
pub fn laplacian_i128(g: &Digraph) -> Vec<Vec<i128>> {
    g.laplacian_integer()
        .into_iter()
        .map(|row| row.into_iter().map(i128::from).collect())
        .collect()
}
