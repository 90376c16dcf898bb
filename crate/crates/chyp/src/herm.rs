//! Complex linear algebra over indefinite Hermitian forms.
//!
//! Everything downstream works with a form `H` of signature `(n,1)` on
//! `C^{n+1}` (default `diag(1,..,1,-1)`), with the inner product convention
//! `<z,w> = w* H z`. Points of hyperbolic space are negative vectors, polar
//! vectors of complex hyperplanes are positive vectors, and the cross
//! products below produce vectors orthogonal to their arguments, which is how
//! bisector intersections get parameterized.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::eigen;
use crate::error::{ChypError, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Hermiticity tolerance for form construction.
const HERMITIAN_TOL: f64 = 1e-12;

/// Eigenvalue sign counts of a Hermitian form.
///
/// Eigenvalues are classified against a zero threshold of `1e-9` times the
/// spectral radius; the only intended degeneracy in this family (the Gram
/// matrix at `theta = 5pi/6`) has an exact analytic zero there.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

impl Signature {
    pub fn dim(&self) -> usize {
        self.pos + self.neg + self.zero
    }

    pub fn is_lorentzian(&self) -> bool {
        self.neg == 1 && self.zero == 0
    }
}

/// A Hermitian form on `C^dim`, stored as its Gram matrix.
#[derive(Clone, Debug)]
pub struct HermForm {
    matrix: DMatrix<C64>,
}

impl HermForm {
    /// The standard form `diag(1,...,1,-1)` of signature `(dim-1, 1)`.
    pub fn standard(dim: usize) -> Arc<Self> {
        let mut m = DMatrix::from_diagonal_element(dim, dim, ONE);
        m[(dim - 1, dim - 1)] = -ONE;
        Arc::new(HermForm { matrix: m })
    }

    /// Wraps an arbitrary Hermitian matrix, rejecting non-Hermitian input.
    pub fn new(matrix: DMatrix<C64>) -> Result<Arc<Self>> {
        if !matrix.is_square() {
            return Err(ChypError::DimensionMismatch {
                expected: matrix.nrows(),
                got: matrix.ncols(),
            });
        }
        let residual = (&matrix - matrix.adjoint()).camax();
        let scale = matrix.camax().max(1.0);
        if residual > HERMITIAN_TOL * scale {
            return Err(ChypError::NotHermitian { residual });
        }
        Ok(Arc::new(HermForm { matrix }))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    /// Eigenvalue sign counts, with the zero threshold scaled by the
    /// spectral radius.
    pub fn signature(&self) -> Signature {
        let eigs = eigen::hermitian_eigenvalues(&self.matrix);
        let radius = eigs.iter().fold(0.0f64, |a, e| a.max(e.abs())).max(1e-300);
        let tol = 1e-9 * radius;
        let mut sig = Signature { pos: 0, neg: 0, zero: 0 };
        for e in eigs {
            if e > tol {
                sig.pos += 1;
            } else if e < -tol {
                sig.neg += 1;
            } else {
                sig.zero += 1;
            }
        }
        sig
    }

    /// `y* H x` for raw coordinate vectors.
    pub fn inner(&self, x: &DVector<C64>, y: &DVector<C64>) -> C64 {
        (y.adjoint() * &self.matrix * x)[(0, 0)]
    }

    fn same_as(&self, other: &HermForm) -> bool {
        self.matrix == other.matrix
    }
}

/// A coordinate vector carrying its ambient form.
#[derive(Clone, Debug)]
pub struct HVec {
    coords: DVector<C64>,
    form: Arc<HermForm>,
}

impl HVec {
    pub fn new(coords: DVector<C64>, form: Arc<HermForm>) -> Result<Self> {
        if coords.len() != form.dim() {
            return Err(ChypError::DimensionMismatch {
                expected: form.dim(),
                got: coords.len(),
            });
        }
        Ok(HVec { coords, form })
    }

    pub fn from_slice(entries: &[C64], form: Arc<HermForm>) -> Result<Self> {
        Self::new(DVector::from_column_slice(entries), form)
    }

    pub fn from_real(entries: &[f64], form: Arc<HermForm>) -> Result<Self> {
        let v: Vec<C64> = entries.iter().map(|&x| cr(x)).collect();
        Self::from_slice(&v, form)
    }

    pub fn coords(&self) -> &DVector<C64> {
        &self.coords
    }

    pub fn form(&self) -> &Arc<HermForm> {
        &self.form
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// `<self,self>`, asserted real.
    pub fn norm_h(&self) -> f64 {
        let v = self.form.inner(&self.coords, &self.coords);
        debug_assert!(
            v.im.abs() <= 1e-12 * (1.0 + v.re.abs()),
            "self inner product has imaginary part {:.3e}",
            v.im
        );
        v.re
    }

    /// Euclidean norm of the coordinate vector (no form involved).
    pub fn norm_euclid(&self) -> f64 {
        self.coords.norm()
    }

    pub fn scale(&self, s: C64) -> HVec {
        HVec { coords: &self.coords * s, form: self.form.clone() }
    }

    /// Applies a matrix in the ambient coordinates.
    pub fn apply(&self, m: &DMatrix<C64>) -> HVec {
        HVec { coords: m * &self.coords, form: self.form.clone() }
    }
}

/// `<x,y> = y* H x`. The argument order matters: the second argument is the
/// conjugated one.
pub fn herm_inner(x: &HVec, y: &HVec) -> Result<C64> {
    if x.dim() != y.dim() || !x.form.same_as(&y.form) {
        return Err(ChypError::DimensionMismatch { expected: x.dim(), got: y.dim() });
    }
    Ok(x.form.inner(&x.coords, &y.coords))
}

/// Hermitian cross product in ambient dimension 3: the result is
/// `H`-orthogonal to both arguments. Components are conjugated 2x2 minors.
pub fn cross2(p: &HVec, q: &HVec) -> Result<HVec> {
    if p.dim() != 3 || q.dim() != 3 {
        return Err(ChypError::DimensionMismatch { expected: 3, got: p.dim().max(q.dim()) });
    }
    let a = &p.coords;
    let b = &q.coords;
    let r = DVector::from_column_slice(&[
        (a[2] * b[1] - a[1] * b[2]).conj(),
        (a[0] * b[2] - a[2] * b[0]).conj(),
        (a[0] * b[1] - a[1] * b[0]).conj(),
    ]);
    if r.norm() <= 1e-12 * (a.norm() * b.norm()).max(1e-300) {
        return Err(ChypError::DependentVectors { det: None });
    }
    Ok(HVec { coords: r, form: p.form.clone() })
}

fn det3(m: [[C64; 3]; 3]) -> C64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Triple Hermitian cross product in ambient dimension 4. Components are
/// signed 3x3 minors of the conjugated column matrix `[a b c]`; the result is
/// `H`-orthogonal to all three arguments. Linearly dependent input yields the
/// zero vector (every minor has a repeated column).
pub fn cross3(a: &HVec, b: &HVec, c: &HVec) -> Result<HVec> {
    for v in [a, b, c] {
        if v.dim() != 4 {
            return Err(ChypError::DimensionMismatch { expected: 4, got: v.dim() });
        }
    }
    let ac: Vec<C64> = a.coords.iter().map(|z| z.conj()).collect();
    let bc: Vec<C64> = b.coords.iter().map(|z| z.conj()).collect();
    let cc: Vec<C64> = c.coords.iter().map(|z| z.conj()).collect();
    let minor = |rows: [usize; 3]| -> C64 {
        det3([
            [ac[rows[0]], bc[rows[0]], cc[rows[0]]],
            [ac[rows[1]], bc[rows[1]], cc[rows[1]]],
            [ac[rows[2]], bc[rows[2]], cc[rows[2]]],
        ])
    };
    let r = DVector::from_column_slice(&[
        minor([1, 2, 3]),
        -minor([0, 2, 3]),
        minor([0, 1, 3]),
        minor([0, 1, 2]),
    ]);
    Ok(HVec { coords: r, form: a.form.clone() })
}

/// Restriction of the ambient form to the span of three independent vectors:
/// `(H_L)_{ij} = e_i* H e_j`.
pub fn restricted_form(e1: &HVec, e2: &HVec, e3: &HVec) -> Result<Arc<HermForm>> {
    let basis = [e1, e2, e3];
    let dim = e1.dim();
    let mut cols = DMatrix::zeros(dim, 3);
    for (j, e) in basis.iter().enumerate() {
        if e.dim() != dim {
            return Err(ChypError::DimensionMismatch { expected: dim, got: e.dim() });
        }
        cols.set_column(j, e.coords());
    }
    let sv = cols.singular_values();
    let smin = sv[sv.len() - 1];
    if smin < 1e-9 * sv[0].max(1e-300) {
        return Err(ChypError::DependentVectors { det: None });
    }
    let mut m = DMatrix::zeros(3, 3);
    for i in 0..3 {
        for j in 0..3 {
            // e_i* H e_j = <e_j, e_i>
            m[(i, j)] = herm_inner(basis[j], basis[i])?;
        }
    }
    HermForm::new(m)
}

/// Cross product associated to a 3x3 restricted form `F`, in basis
/// coordinates: with `u = x*F` and `v = y*F` as row vectors,
/// `w = (u2 v3 - v2 u3, u3 v1 - v3 u1, u1 v2 - v1 u2)`.
/// The output satisfies `x*F w = y*F w = 0`.
pub fn restricted_cross(x: &DVector<C64>, y: &DVector<C64>, f: &HermForm) -> DVector<C64> {
    debug_assert_eq!(f.dim(), 3);
    let u = x.adjoint() * f.matrix();
    let v = y.adjoint() * f.matrix();
    DVector::from_column_slice(&[
        u[1] * v[2] - v[1] * u[2],
        u[2] * v[0] - v[2] * u[0],
        u[0] * v[1] - v[0] * u[1],
    ])
}

/// Whether `u = lambda v` for some complex scalar, decided by the relative
/// Euclidean residual of the projection of `u` onto `v`. The residual equals
/// the sine of the Hermitian angle, so the test is symmetric in its
/// arguments. The indefinite form plays no role here; it can vanish on null
/// vectors.
pub fn projective_equal(u: &HVec, v: &HVec, tol: f64) -> Result<bool> {
    let (nu, nv) = (u.coords.norm(), v.coords.norm());
    if nu == 0.0 || nv == 0.0 {
        return Err(ChypError::ZeroVector);
    }
    if u.dim() != v.dim() {
        return Err(ChypError::DimensionMismatch { expected: u.dim(), got: v.dim() });
    }
    let lambda = v.coords.dotc(&u.coords) / cr(nv * nv);
    let residual = (&u.coords - &v.coords * lambda).norm();
    Ok(residual < tol * nu)
}

/// Midpoint of the hyperbolic geodesic joining two interior points with
/// equal-norm lifts: the phase of the second lift is rotated so the inner
/// product with the first becomes negative real, then the lifts are summed.
pub fn geodesic_midpoint(p: &HVec, q: &HVec) -> Result<HVec> {
    let c = herm_inner(q, p)?;
    if c.norm() == 0.0 {
        return Err(ChypError::ZeroVector);
    }
    let lambda = -c.conj() / cr(c.norm());
    HVec::new(&p.coords + &q.coords * lambda, p.form.clone())
}
