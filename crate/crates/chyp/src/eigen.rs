//! Small dense eigen helpers for 3x3 and 4x4 complex matrices.
//!
//! Hermitian spectra go through nalgebra's symmetric eigendecomposition.
//! General spectra are taken as roots of the characteristic polynomial
//! (Faddeev-LeVerrier coefficients, Durand-Kerner iteration), which is
//! accurate for the tiny well-scaled matrices this crate produces. Multiple
//! eigenvalues of defective matrices scatter by roughly eps^(1/k) no matter
//! the algorithm; callers that care (the isometry classifier) detect those
//! cases algebraically instead of from the scattered values.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Vec<f64> {
    let sym = nalgebra::SymmetricEigen::new(m.clone());
    let mut v: Vec<f64> = sym.eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

/// Monic characteristic polynomial coefficients `[1, c1, ..., cn]` with
/// `p(x) = x^n + c1 x^(n-1) + ... + cn`, by the Faddeev-LeVerrier recursion.
pub fn char_poly(m: &DMatrix<C64>) -> Vec<C64> {
    let n = m.nrows();
    let id = DMatrix::identity(n, n);
    let mut coeffs = vec![C64::new(1.0, 0.0)];
    let mut mk = m.clone();
    for k in 1..=n {
        let ck = -mk.trace() / C64::new(k as f64, 0.0);
        coeffs.push(ck);
        if k < n {
            mk = m * (&mk + &id * ck);
        }
    }
    coeffs
}

/// All roots of a monic polynomial given by `char_poly`-style coefficients,
/// via Durand-Kerner iteration.
pub fn poly_roots(coeffs: &[C64]) -> Vec<C64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return vec![];
    }
    let eval = |z: C64| -> C64 {
        let mut acc = coeffs[0];
        for c in &coeffs[1..] {
            acc = acc * z + c;
        }
        acc
    };
    // Cauchy bound keeps the start circle outside all roots.
    let bound = 1.0 + coeffs[1..].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = C64::new(0.4, 0.9);
    let mut roots: Vec<C64> = (0..n).map(|k| seed.powu(k as u32 + 1) * bound).collect();
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut denom = C64::new(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() < 1e-300 {
                continue;
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * bound {
            break;
        }
    }
    roots
}

/// Eigenvalues of a general complex matrix.
pub fn eigenvalues(m: &DMatrix<C64>) -> Vec<C64> {
    poly_roots(&char_poly(m))
}

/// Orthonormal basis of the (numerical) nullspace of `m`, from the right
/// singular vectors whose singular values fall below `tol` relative to the
/// largest one.
pub fn nullspace(m: &DMatrix<C64>, tol: f64) -> Vec<DVector<C64>> {
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.expect("svd requested v_t");
    let smax = svd.singular_values.iter().copied().fold(0.0f64, f64::max);
    let mut basis = Vec::new();
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if s <= tol * smax.max(1.0) {
            basis.push(vt.row(i).adjoint());
        }
    }
    // Singular values below the floor of what svd reports can hide exact
    // nullspaces of rank-deficient input; m with fewer rows than columns is
    // not produced here.
    basis
}

/// Refines a clustered eigenvalue of multiplicity `mult` by Rayleigh-Ritz on
/// the `mult`-dimensional subspace spanned by the smallest right singular
/// directions of `m - mu id`, and reports the geometric multiplicity at the
/// refined value. Char-poly roots of multiplicity k are only determined to
/// eps^(1/k); for semisimple eigenvalues the matrix determines them to eps,
/// and the Ritz trace recovers that accuracy.
pub fn refine_cluster(m: &DMatrix<C64>, mu0: C64, mult: usize) -> (C64, usize) {
    let n = m.nrows();
    let id = DMatrix::<C64>::identity(n, n);
    let mut mu = mu0;
    for _ in 0..3 {
        let shifted = m - &id * mu;
        let svd = shifted.svd(false, true);
        let vt = svd.v_t.expect("svd requested v_t");
        // singular values sorted descending: the last `mult` rows of v_t
        // span the near-invariant subspace.
        let mut q = DMatrix::zeros(n, mult);
        for j in 0..mult {
            q.set_column(j, &vt.row(n - 1 - j).adjoint());
        }
        let ritz = q.adjoint() * m * &q;
        mu = ritz.trace() / C64::new(mult as f64, 0.0);
    }
    let shifted = m - &id * mu;
    let svd = shifted.svd(false, false);
    let smax = svd.singular_values.iter().copied().fold(0.0f64, f64::max).max(1e-300);
    let geometric = svd.singular_values.iter().filter(|&&s| s <= 1e-7 * smax).count();
    (mu, geometric)
}

/// Groups eigenvalues into clusters of radius `tol`, returning
/// `(mean, multiplicity)` pairs.
pub fn cluster_eigenvalues(eigs: &[C64], tol: f64) -> Vec<(C64, usize)> {
    let mut clusters: Vec<(C64, usize)> = Vec::new();
    let mut remaining: Vec<C64> = eigs.to_vec();
    remaining.sort_by(|a, b| {
        (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap()
    });
    for e in remaining {
        if let Some(last) = clusters
            .iter_mut()
            .find(|(mean, _)| (*mean - e).norm() < tol)
        {
            let (mean, count) = *last;
            let newcount = count + 1;
            last.0 = (mean * C64::new(count as f64, 0.0) + e) / C64::new(newcount as f64, 0.0);
            last.1 = newcount;
        } else {
            clusters.push((e, 1));
        }
    }
    clusters
}
