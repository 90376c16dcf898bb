//! Torus parameterizations of bisector intersections.
//!
//! An intersection of co-equidistant bisectors is covered by a map
//! `V(z) = c0 + z1 c1 + ... + zk ck` with each `z` on the unit circle; the
//! coefficient vectors are Hermitian cross products of the defining lifts.
//! Points of hyperbolic space correspond to `<V,V> < 0` and `<V,V> = 0` is
//! the ideal boundary, so emptiness questions become sign questions for a
//! real-valued function on a torus.
//!
//! Three constructions are provided:
//! - [`giraud_chart`]: two phases in ambient dimension 3;
//! - [`triple_chart`]: three phases in ambient dimension 4 (fails exactly at
//!   `theta = 5pi/6`, where the four lifts are dependent);
//! - [`subspace_chart`]: two phases inside the span of three lifts in
//!   ambient dimension 4, via the restricted form `H_L` and its cross
//!   product.
//!
//! Charts precompute the Gram matrix of their coefficients, so evaluating
//! the norm at a grid point costs a handful of complex multiplies.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::error::{ChypError, Result};
use crate::herm::{
    cross2, cross3, herm_inner, restricted_cross, restricted_form, HVec, HermForm, C64, ONE, ZERO,
};

/// A bisector between two points given by equal-norm lifts.
#[derive(Clone, Debug)]
pub struct Bisector {
    a: HVec,
    b: HVec,
}

impl Bisector {
    pub fn new(a: HVec, b: HVec) -> Result<Bisector> {
        if (a.norm_h() - b.norm_h()).abs() > 1e-10 {
            return Err(ChypError::InvalidConfig("bisector lifts must have equal norms".into()));
        }
        Ok(Bisector { a, b })
    }

    pub fn near(&self) -> &HVec {
        &self.a
    }

    pub fn far(&self) -> &HVec {
        &self.b
    }

    /// Signed comparison `|<x,a>| - |<x,b>|`; negative on the half-space of
    /// the first point.
    pub fn side(&self, x: &HVec) -> Result<f64> {
        let da = herm_inner(x, &self.a)?.norm();
        let db = herm_inner(x, &self.b)?.norm();
        Ok(da - db)
    }
}

/// A linear functional `z -> <V(z), u>` on a chart, precomputed for fast
/// evaluation of `|<V,u>|^2` over grids.
#[derive(Clone, Debug)]
pub struct Functional {
    d: Vec<C64>,
}

impl Functional {
    pub fn eval(&self, angles: &[f64]) -> f64 {
        let mut acc = self.d[0];
        for (k, &x) in angles.iter().enumerate() {
            acc += self.d[k + 1] * C64::from_polar(1.0, x);
        }
        acc.norm_sqr()
    }

    pub fn coefficients(&self) -> &[C64] {
        &self.d
    }
}

/// Chart for a k-fold bisector intersection: `V(z) = c0 + sum z_m c_m`.
#[derive(Clone, Debug)]
pub struct Chart {
    coeffs: Vec<DVector<C64>>,
    form: Arc<HermForm>,
    gram: DMatrix<C64>,
    /// For subspace charts, the ambient lifts whose span carries the chart;
    /// `V`'s coordinates re-embed as `W = sum V_i basis_i`.
    basis: Option<Vec<HVec>>,
    /// The defining equal-norm lifts (center first).
    centers: Vec<HVec>,
}

impl Chart {
    /// Number of torus angles.
    pub fn arity(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn form(&self) -> &Arc<HermForm> {
        &self.form
    }

    pub fn gram(&self) -> &DMatrix<C64> {
        &self.gram
    }

    pub fn centers(&self) -> &[HVec] {
        &self.centers
    }

    pub fn coefficient(&self, m: usize) -> &DVector<C64> {
        &self.coeffs[m]
    }

    fn build(
        coeffs: Vec<DVector<C64>>,
        form: Arc<HermForm>,
        basis: Option<Vec<HVec>>,
        centers: Vec<HVec>,
    ) -> Chart {
        let k = coeffs.len();
        let mut gram = DMatrix::zeros(k, k);
        for a in 0..k {
            for b in 0..k {
                gram[(a, b)] = (coeffs[a].adjoint() * form.matrix() * &coeffs[b])[(0, 0)];
            }
        }
        Chart { coeffs, form, gram, basis, centers }
    }

    /// `<V(z), V(z)>`, real by conjugate symmetry of the Gram matrix.
    pub fn norm_at(&self, angles: &[f64]) -> f64 {
        debug_assert_eq!(angles.len(), self.arity());
        let k = self.coeffs.len();
        let mut z = [ONE; 4];
        for (m, &x) in angles.iter().enumerate() {
            z[m + 1] = C64::from_polar(1.0, x);
        }
        let mut val = 0.0;
        for a in 0..k {
            val += self.gram[(a, a)].re;
            for b in (a + 1)..k {
                let term = z[a].conj() * z[b] * self.gram[(a, b)];
                val += 2.0 * term.re;
            }
        }
        val
    }

    /// The chart point as an ambient vector: `V` itself for direct charts,
    /// the re-embedded `W = sum V_i e_i` for subspace charts.
    pub fn ambient_at(&self, angles: &[f64]) -> HVec {
        let mut v = self.coeffs[0].clone();
        for (m, &x) in angles.iter().enumerate() {
            v += &self.coeffs[m + 1] * C64::from_polar(1.0, x);
        }
        match &self.basis {
            None => HVec::new(v, self.form.clone()).expect("dimensions agree"),
            Some(basis) => {
                let mut w = basis[0].coords() * v[0];
                for i in 1..basis.len() {
                    w += basis[i].coords() * v[i];
                }
                HVec::new(w, basis[0].form().clone()).expect("dimensions agree")
            }
        }
    }

    /// Precomputes the functional `z -> <V(z), u>` for an ambient vector `u`.
    pub fn functional(&self, u: &HVec) -> Result<Functional> {
        let d = match &self.basis {
            None => self
                .coeffs
                .iter()
                .map(|c| {
                    let cv = HVec::new(c.clone(), self.form.clone())?;
                    herm_inner(&cv, u)
                })
                .collect::<Result<Vec<_>>>()?,
            Some(basis) => {
                let t: Vec<C64> =
                    basis.iter().map(|e| herm_inner(e, u)).collect::<Result<Vec<_>>>()?;
                self.coeffs
                    .iter()
                    .map(|c| Ok((0..t.len()).map(|i| c[i] * t[i]).sum()))
                    .collect::<Result<Vec<_>>>()?
            }
        };
        Ok(Functional { d })
    }

    /// `|<V(z), u>|^2` at one angle tuple.
    pub fn dist2_to(&self, angles: &[f64], u: &HVec) -> Result<f64> {
        Ok(self.functional(u)?.eval(angles))
    }

    /// Solves `<V,V> = 0` on the slice where every angle except `free` is
    /// held at the given value; the norm restricted to one phase is
    /// `A + a cos t + b sin t`, so there are 0, 1 or 2 roots.
    pub fn boundary_slice(&self, fixed: &[(usize, f64)], free: usize) -> Vec<f64> {
        let k = self.coeffs.len();
        debug_assert_eq!(fixed.len() + 1, self.arity());
        let mut z = [ONE; 4];
        for &(idx, x) in fixed {
            debug_assert_ne!(idx, free);
            z[idx + 1] = C64::from_polar(1.0, x);
        }
        let f = free + 1;
        let mut a_const = 0.0;
        let mut b_coef = ZERO;
        for m in 0..k {
            a_const += self.gram[(m, m)].re;
            if m == f {
                continue;
            }
            for n in (m + 1)..k {
                if n == f {
                    continue;
                }
                let term = z[m].conj() * z[n] * self.gram[(m, n)];
                a_const += 2.0 * term.re;
            }
            b_coef += z[m].conj() * self.gram[(m, f)];
        }
        let r = b_coef.norm();
        let scale = self.gram.camax().max(1.0);
        if r <= 1e-12 * scale {
            return Vec::new();
        }
        // A + 2 Re(B z_f) = A + 2|B| cos(t + arg B)
        let x = -a_const / (2.0 * r);
        if x.abs() > 1.0 + 1e-12 {
            return Vec::new();
        }
        let phi = b_coef.arg();
        let delta = x.clamp(-1.0, 1.0).acos();
        let wrap = |t: f64| -> f64 {
            let mut t = t;
            while t > std::f64::consts::PI {
                t -= 2.0 * std::f64::consts::PI;
            }
            while t <= -std::f64::consts::PI {
                t += 2.0 * std::f64::consts::PI;
            }
            t
        };
        let mut roots = vec![wrap(-phi + delta), wrap(-phi - delta)];
        roots.sort_by(|p, q| p.partial_cmp(q).unwrap());
        roots.dedup_by(|p, q| (*p - *q).abs() < 1e-14);
        roots
    }

    /// Sampled ideal-boundary points (`<V,V> = 0`): angle tuples plus the
    /// ambient coordinates, for CSV export and constrained extrema.
    pub fn zero_locus(&self, steps: usize) -> Vec<(Vec<f64>, HVec)> {
        let mut out = Vec::new();
        let grid = |n: usize| {
            (0..n).map(move |k| {
                -std::f64::consts::PI + 2.0 * std::f64::consts::PI * k as f64 / n as f64
            })
        };
        match self.arity() {
            2 => {
                for r in grid(steps) {
                    for s in self.boundary_slice(&[(0, r)], 1) {
                        out.push((vec![r, s], self.ambient_at(&[r, s])));
                    }
                }
            }
            3 => {
                for r in grid(steps) {
                    for s in grid(steps) {
                        for t in self.boundary_slice(&[(0, r), (1, s)], 2) {
                            out.push((vec![r, s, t], self.ambient_at(&[r, s, t])));
                        }
                    }
                }
            }
            _ => {}
        }
        out
    }
}

fn check_equal_norms(lifts: &[&HVec]) -> Result<()> {
    let n0 = lifts[0].norm_h();
    for l in lifts.iter().skip(1) {
        if (l.norm_h() - n0).abs() > 1e-10 {
            return Err(ChypError::InvalidConfig("chart lifts must have equal norms".into()));
        }
    }
    Ok(())
}

/// Giraud chart in ambient dimension 3 for the intersection
/// `B(p,q) cap B(p,r)`: `V(z1,z2) = q x r + z1 (r x p) + z2 (p x q)`.
/// At every angle pair `|<V,p>| = |<V,q>| = |<V,r>|`.
pub fn giraud_chart(p: &HVec, q: &HVec, r: &HVec) -> Result<Chart> {
    if p.dim() != 3 {
        return Err(ChypError::DimensionMismatch { expected: 3, got: p.dim() });
    }
    check_equal_norms(&[p, q, r])?;
    let mut cols = DMatrix::zeros(3, 3);
    cols.set_column(0, p.coords());
    cols.set_column(1, q.coords());
    cols.set_column(2, r.coords());
    let det = cols.determinant();
    let scale = p.norm_euclid() * q.norm_euclid() * r.norm_euclid();
    if det.norm() <= 1e-9 * scale.max(1e-300) {
        return Err(ChypError::DependentVectors { det: Some(det) });
    }
    let c0 = cross2(q, r)?;
    let c1 = cross2(r, p)?;
    let c2 = cross2(p, q)?;
    Ok(Chart::build(
        vec![c0.coords().clone(), c1.coords().clone(), c2.coords().clone()],
        p.form().clone(),
        None,
        vec![p.clone(), q.clone(), r.clone()],
    ))
}

/// Triple chart in ambient dimension 4 for
/// `B(q0,q1) cap B(q0,q2) cap B(q0,q3)`:
/// `V(z) = q1xq2xq3 + z1 q0xq2xq3 + z2 q0xq1xq3 + z3 q0xq1xq2`.
/// Errors when the four lifts are linearly dependent, carrying `det S` as a
/// diagnostic; in this family that happens exactly at `theta = 5pi/6`.
pub fn triple_chart(q0: &HVec, q1: &HVec, q2: &HVec, q3: &HVec) -> Result<Chart> {
    if q0.dim() != 4 {
        return Err(ChypError::DimensionMismatch { expected: 4, got: q0.dim() });
    }
    check_equal_norms(&[q0, q1, q2, q3])?;
    let mut s = DMatrix::zeros(4, 4);
    for (k, v) in [q0, q1, q2, q3].iter().enumerate() {
        s.set_column(k, v.coords());
    }
    let det = s.determinant();
    let scale: f64 = [q0, q1, q2, q3].iter().map(|v| v.norm_euclid()).product();
    if det.norm() <= 1e-9 * scale.max(1e-300) {
        return Err(ChypError::DependentVectors { det: Some(det) });
    }
    let c0 = cross3(q1, q2, q3)?;
    let c1 = cross3(q0, q2, q3)?;
    let c2 = cross3(q0, q1, q3)?;
    let c3 = cross3(q0, q1, q2)?;
    Ok(Chart::build(
        vec![c0.coords().clone(), c1.coords().clone(), c2.coords().clone(), c3.coords().clone()],
        q0.form().clone(),
        None,
        vec![q0.clone(), q1.clone(), q2.clone(), q3.clone()],
    ))
}

/// Chart for `B(p,q) cap B(p,r)` inside the totally geodesic subspace
/// spanned by the three lifts, in ambient dimension 4. The restricted form
/// `H_L` must have signature (2,1); the chart lives in basis coordinates
/// `V = E2 x_L E3 + z1 (E1 x_L E3) + z2 (E1 x_L E2)` and the ambient point
/// is `W = V1 p + V2 q + V3 r`.
pub fn subspace_chart(p: &HVec, q: &HVec, r: &HVec) -> Result<Chart> {
    if p.dim() != 4 {
        return Err(ChypError::DimensionMismatch { expected: 4, got: p.dim() });
    }
    check_equal_norms(&[p, q, r])?;
    let h_l = restricted_form(p, q, r)?;
    let sig = h_l.signature();
    if !(sig.pos == 2 && sig.neg == 1 && sig.zero == 0) {
        return Err(ChypError::DegenerateForm { pos: sig.pos, neg: sig.neg, zero: sig.zero });
    }
    let e1 = DVector::from_column_slice(&[ONE, ZERO, ZERO]);
    let e2 = DVector::from_column_slice(&[ZERO, ONE, ZERO]);
    let e3 = DVector::from_column_slice(&[ZERO, ZERO, ONE]);
    let c0 = restricted_cross(&e2, &e3, &h_l);
    let c1 = restricted_cross(&e1, &e3, &h_l);
    let c2 = restricted_cross(&e1, &e2, &h_l);
    Ok(Chart::build(
        vec![c0, c1, c2],
        h_l,
        Some(vec![p.clone(), q.clone(), r.clone()]),
        vec![p.clone(), q.clone(), r.clone()],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, theta_lo, Word};
    use crate::herm::{c, cr};
    use std::f64::consts::PI;

    fn sqrt3() -> f64 {
        3.0f64.sqrt()
    }

    fn reduced_group() -> crate::group::GroupData {
        build_group(theta_lo()).unwrap().reduce_to_pu21().unwrap()
    }

    fn chart2d(g: &crate::group::GroupData, a: Word, b: Word) -> Chart {
        giraud_chart(g.center(), g.lift(a), g.lift(b)).unwrap()
    }

    #[test]
    fn giraud_equidistance_everywhere() {
        let g = reduced_group();
        let ch = chart2d(&g, Word::A(1), Word::A(2));
        for k in 0..20 {
            let r = -PI + 0.37 * k as f64;
            let s = 1.3 - 0.61 * k as f64;
            let v = ch.ambient_at(&[r, s]);
            let d: Vec<f64> =
                ch.centers().iter().map(|p| herm_inner(&v, p).unwrap().norm()).collect();
            let scale = d[0].max(1e-300);
            assert!((d[1] - d[0]).abs() < 1e-8 * scale);
            assert!((d[2] - d[0]).abs() < 1e-8 * scale);
        }
    }

    #[test]
    fn giraud_rejects_dependent_lifts() {
        let g = reduced_group();
        let p13 = g.lift(Word::A1A2);
        let p24 = g.lift(Word::A2A3);
        // p0, p13, p24 lie in a common complex line.
        assert!(matches!(
            giraud_chart(g.center(), p13, p24),
            Err(ChypError::DependentVectors { .. })
        ));
    }

    #[test]
    fn norm_matches_brute_force_product() {
        let g = reduced_group();
        let ch = chart2d(&g, Word::A(1), Word::A(3));
        let h = ch.form().matrix().clone();
        for k in 0..30 {
            let r = -PI + 0.211 * k as f64;
            let s = 2.0 - 0.17 * k as f64;
            let mut v = ch.coefficient(0).clone();
            v += ch.coefficient(1) * C64::from_polar(1.0, r);
            v += ch.coefficient(2) * C64::from_polar(1.0, s);
            let brute = (v.adjoint() * &h * &v)[(0, 0)];
            assert!(brute.im.abs() < 1e-9 * brute.re.abs() + 1e-12);
            assert!((ch.norm_at(&[r, s]) - brute.re).abs() < 1e-9 * (1.0 + brute.re.abs()));
        }
    }

    /// The displayed objective for B12 cap B23 at theta = 5pi/6.
    fn display_b12_b23(r: f64, s: f64) -> f64 {
        let q3 = sqrt3();
        (8.0 * q3 + 4.0) * s.sin() - (8.0 * q3 + 20.0) * r.cos() - (8.0 * q3 + 16.0) * s.cos()
            + (2.0 * q3 + 2.0) * (r - s).sin()
            + 4.0 * (r - s).cos()
            - 8.0 * r.sin()
            + 16.0 * q3
            + 48.0
    }

    #[test]
    fn b12_b23_norm_matches_displayed_expansion() {
        let g = reduced_group();
        let ch = chart2d(&g, Word::A(1), Word::A(2));
        for k in 0..25 {
            let r = -PI + 0.251 * k as f64;
            let s = 3.0 - 0.241 * k as f64;
            let got = ch.norm_at(&[r, s]);
            let want = display_b12_b23(r, s);
            assert!(
                (got - want).abs() < 1e-9 * (1.0 + want.abs()),
                "at ({r},{s}): {got} vs {want}"
            );
        }
    }

    /// The displayed objective for B12 cap B32 at theta = 5pi/6.
    fn display_b12_b32(r: f64, s: f64) -> f64 {
        let q3 = sqrt3();
        -(10.0 * q3 + 12.0) * (r.cos() + s.cos()) + 2.0 * q3 * ((r - s).sin() + (r - s).cos())
            + 14.0 * q3
            - 6.0 * r.sin()
            + 6.0 * s.sin()
            + 36.0
    }

    #[test]
    fn b12_b32_norm_matches_displayed_expansion() {
        let g = reduced_group();
        let ch = chart2d(&g, Word::A(1), Word::AInv(2));
        for k in 0..25 {
            let r = -PI + 0.17 * k as f64;
            let s = -2.0 + 0.19 * k as f64;
            let got = ch.norm_at(&[r, s]);
            let want = display_b12_b32(r, s);
            assert!((got - want).abs() < 1e-9 * (1.0 + want.abs()));
        }
    }

    /// The displayed objective for B12 cap B34 at theta = 5pi/6.
    fn display_b12_b34(r: f64, s: f64) -> f64 {
        let q3 = sqrt3();
        -(8.0 * q3 + 12.0) * (r.cos() + s.cos())
            + (2.0 * q3 - 2.0) * (r - s).cos()
            + 4.0 * (r.sin() + s.sin())
            + 14.0 * q3
            + 26.0
    }

    #[test]
    fn b12_b34_sample_point_is_negative_and_center_distance_constant() {
        let g = reduced_group();
        let ch = chart2d(&g, Word::A(1), Word::A(3));
        for k in 0..25 {
            let r = -PI + 0.27 * k as f64;
            let s = 1.0 - 0.23 * k as f64;
            assert!((ch.norm_at(&[r, s]) - display_b12_b34(r, s)).abs() < 1e-9 * 100.0);
        }
        let sample = [0.0, -PI / 16.0];
        assert!(ch.norm_at(&sample) < 0.0, "paper sample point (0, -pi/16) lies inside");
        // |<V, p0>|^2 is constant 8 + 8 sqrt(3) over the whole torus.
        let expect = 8.0 + 8.0 * sqrt3();
        for k in 0..20 {
            let angles = [0.4 * k as f64, -0.9 + 0.31 * k as f64];
            let d = ch.dist2_to(&angles, g.center()).unwrap();
            assert!((d - expect).abs() < 1e-9);
        }
    }

    #[test]
    fn b12_b14_distance_locus_lines() {
        let g = reduced_group();
        let ch = chart2d(&g, Word::A(1), Word::AInv(4));
        // |<V,p0>|^2 is the constant 2 + 2 sqrt(3).
        let expect = 2.0 + 2.0 * sqrt3();
        let d0 = ch.dist2_to(&[0.3, -1.2], g.center()).unwrap();
        assert!((d0 - expect).abs() < 1e-9);
        // Nonempty at (0,0).
        assert!(ch.norm_at(&[0.0, 0.0]) < 0.0);
        // dist^2 to p13 equals the same constant exactly on
        // {s = -pi/2} U {r = pi/2} U {r = s}.
        let p13 = g.lift(Word::A1A2);
        let f = ch.functional(p13).unwrap();
        for k in 0..12 {
            let t = -PI + 0.5 * k as f64;
            for angles in [[t, -PI / 2.0], [PI / 2.0, t], [t, t]] {
                assert!(
                    (f.eval(&angles) - expect).abs() < 1e-8,
                    "angles {angles:?} give {}",
                    f.eval(&angles)
                );
            }
        }
        // And differs off those lines.
        assert!((f.eval(&[0.3, 1.9]) - expect).abs() > 1e-3);
    }

    #[test]
    fn boundary_slice_brackets_sample_point() {
        let g = reduced_group();
        let ch = chart2d(&g, Word::A(1), Word::A(3));
        let roots = ch.boundary_slice(&[(0, 0.0)], 1);
        assert_eq!(roots.len(), 2, "slice through a negative point crosses the locus twice");
        assert!(roots[0] < -PI / 16.0 && -PI / 16.0 < roots[1]);
        for t in roots {
            assert!(ch.norm_at(&[0.0, t]).abs() < 1e-7);
        }
        // Empty intersection: no roots on any slice.
        let ch = chart2d(&g, Word::A(1), Word::A(2));
        for k in 0..64 {
            let r = -PI + 2.0 * PI * k as f64 / 64.0;
            assert!(ch.boundary_slice(&[(0, r)], 1).is_empty());
        }
    }

    #[test]
    fn subspace_chart_matches_displayed_cross_products() {
        let theta: f64 = 0.92 * PI;
        let g = build_group(theta).unwrap();
        let ch = subspace_chart(g.center(), g.lift(Word::A(1)), g.lift(Word::AInv(2))).unwrap();
        let (s, co) = theta.sin_cos();
        let s2 = (2.0 * theta).sin();
        let e = |x: f64| C64::from_polar(1.0, x);
        // E1 x_L E2 from the displayed closed forms.
        let first = cr(1.0 + 2.0 * co)
            * (e(-theta) * cr(8.0 * co * co)
                + c(0.0, 3.0 * s2)
                + c(0.0, 3.0 * s)
                + cr(-14.0 * co * co + 5.0 * co));
        let second =
            cr(3.0 - 10.0 * co * co + 2.0 * co) + e(theta) * cr(8.0 * co.powi(3)) - c(0.0, s2);
        let third = cr(4.0 * co * (co - 1.0) * (1.0 + 2.0 * co));
        let got = ch.coefficient(2);
        assert!((got[0] - first).norm() < 1e-9, "{} vs {first}", got[0]);
        assert!((got[1] - second).norm() < 1e-9);
        assert!((got[2] - third).norm() < 1e-9);
    }

    #[test]
    fn restricted_form_determinants_match_closed_forms() {
        for theta in [0.87 * PI, 0.95 * PI, PI] {
            let g = build_group(theta).unwrap();
            let co = theta.cos();
            let cases: [(Word, f64); 4] = [
                (
                    Word::A(2), // p23
                    (-4.0 * (4.0 * theta).cos() - 22.0 * (2.0 * theta).cos() - 1.0
                        + 16.0 * (3.0 * theta).cos()
                        + 12.0 * co)
                        * (1.0 + 2.0 * co).powi(2),
                ),
                (
                    Word::AInv(2), // p32
                    -(4.0 * co - 3.0)
                        * (-1.0 + 2.0 * co)
                        * (4.0 * co * co - 2.0 * co - 3.0)
                        * (1.0 + 2.0 * co).powi(2),
                ),
                (
                    Word::AInv(3), // p43
                    -64.0 * co.powi(6) + 160.0 * co.powi(5) + 144.0 * co.powi(4)
                        - 168.0 * co.powi(3)
                        - 96.0 * co.powi(2)
                        + 40.0 * co
                        + 20.0,
                ),
                (
                    Word::A2A3, // p24
                    32.0 * co.powi(5) - 24.0 * co.powi(3) - 4.0 * co * co + 4.0 * co + 1.0,
                ),
            ];
            for (w, expect) in cases {
                let f = restricted_form(g.center(), g.lift(Word::A(1)), g.lift(w)).unwrap();
                let det = f.matrix().determinant();
                assert!(
                    (det - cr(expect)).norm() < 1e-9 * (1.0 + expect.abs()),
                    "{w} at theta={theta}: {det} vs {expect}"
                );
            }
            // (p0, p12, p34): the coplanar configuration's span.
            let f = restricted_form(g.center(), g.lift(Word::A(1)), g.lift(Word::A(3))).unwrap();
            let det = f.matrix().determinant();
            let expect = 128.0 * co.powi(5) - 96.0 * co.powi(3) - 16.0 * co * co + 16.0 * co + 4.0;
            assert!((det - cr(expect)).norm() < 1e-9 * (1.0 + expect.abs()));
        }
    }

    /// The complete displayed h-factor of the B12 cap B32 objective.
    fn display_h_b12_b32(r: f64, s: f64, t: f64) -> f64 {
        21.0 - 8.0 * (3.0 * t).cos() + 36.0 * (2.0 * t).cos() + 4.0 * (r - 2.0 * t).cos()
            + 10.0 * (r + 2.0 * t).cos()
            - 50.0 * t.cos()
            + 14.0 * r.cos()
            - 14.0 * s.cos()
            + 2.0 * (-2.0 * t + r - s).cos()
            + 2.0 * (t + r - s).cos()
            - 4.0 * (3.0 * t + r).cos()
            + 10.0 * (-t + s).cos()
            + 12.0 * (t + s).cos()
            - 10.0 * (s - 2.0 * t).cos()
            - 4.0 * (s + 2.0 * t).cos()
            - 2.0 * (-3.0 * t + r - s).cos()
            - 4.0 * (r - s).cos()
            - 12.0 * (-t + r).cos()
            - 10.0 * (t + r).cos()
            + 4.0 * (-3.0 * t + s).cos()
    }

    fn prefactor_b12_b32(t: f64) -> f64 {
        let co = t.cos();
        -256.0 * (0.5 + co).powi(3) * (co - 0.75) * (-0.5 + co) * (co * co - co / 2.0 - 0.75)
    }

    #[test]
    fn subspace_objective_factors_as_displayed() {
        for theta in [theta_lo(), 0.9 * PI, 0.97 * PI, PI] {
            let g = build_group(theta).unwrap();
            let ch =
                subspace_chart(g.center(), g.lift(Word::A(1)), g.lift(Word::AInv(2))).unwrap();
            for k in 0..15 {
                let r = -PI + 0.42 * k as f64;
                let s = 2.5 - 0.37 * k as f64;
                let got = ch.norm_at(&[r, s]);
                let want = prefactor_b12_b32(theta) * display_h_b12_b32(r, s, theta);
                assert!(
                    (got - want).abs() < 1e-8 * (1.0 + want.abs()),
                    "theta={theta} ({r},{s}): {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn subspace_chart_equidistance_and_reembedding() {
        let g = build_group(0.93 * PI).unwrap();
        let ch = subspace_chart(g.center(), g.lift(Word::A(1)), g.lift(Word::A(2))).unwrap();
        for k in 0..20 {
            let angles = [-PI + 0.31 * k as f64, 1.7 - 0.27 * k as f64];
            let w = ch.ambient_at(&angles);
            assert_eq!(w.dim(), 4);
            let d: Vec<f64> =
                ch.centers().iter().map(|p| herm_inner(&w, p).unwrap().norm()).collect();
            assert!((d[1] - d[0]).abs() < 1e-8 * d[0].max(1.0));
            assert!((d[2] - d[0]).abs() < 1e-8 * d[0].max(1.0));
            // W*HW equals the chart's restricted-form value.
            let wnorm = w.norm_h();
            assert!((wnorm - ch.norm_at(&angles)).abs() < 1e-8 * (1.0 + wnorm.abs()));
        }
    }

    #[test]
    fn subspace_chart_b12_b34_nonempty_at_left_endpoint() {
        let g = build_group(theta_lo()).unwrap();
        let ch = subspace_chart(g.center(), g.lift(Word::A(1)), g.lift(Word::A(3))).unwrap();
        let mut min = f64::INFINITY;
        let n = 360;
        for a in 0..n {
            for b in 0..n {
                let r = -PI + 2.0 * PI * a as f64 / n as f64;
                let s = -PI + 2.0 * PI * b as f64 / n as f64;
                min = min.min(ch.norm_at(&[r, s]));
            }
        }
        assert!(min < 0.0, "B12 cap B34 is nonempty at 5pi/6");
    }

    #[test]
    fn subspace_chart_rejects_degenerate_span() {
        let g = build_group(0.9 * PI).unwrap();
        // p0, p13, p24 span a 2-dimensional subspace.
        let err = subspace_chart(g.center(), g.lift(Word::A1A2), g.lift(Word::A2A3));
        assert!(matches!(err, Err(ChypError::DependentVectors { .. })));
    }

    #[test]
    fn triple_chart_orthogonality_and_degeneracy() {
        let g = build_group(0.95 * PI).unwrap();
        let ch = triple_chart(
            g.center(),
            g.lift(Word::A(1)),
            g.lift(Word::A1A2),
            g.lift(Word::AInv(4)),
        )
        .unwrap();
        assert_eq!(ch.arity(), 3);
        let v = ch.ambient_at(&[0.4, -1.1, 2.2]);
        for p in ch.centers() {
            let d = herm_inner(&v, p).unwrap().norm();
            let d0 = herm_inner(&v, &ch.centers()[0]).unwrap().norm();
            assert!((d - d0).abs() < 1e-8 * d0.max(1.0));
        }
        // At 5pi/6 the four lifts are dependent: hard error with a det
        // diagnostic.
        let g = build_group(theta_lo()).unwrap();
        let err = triple_chart(
            g.center(),
            g.lift(Word::A(1)),
            g.lift(Word::A1A2),
            g.lift(Word::AInv(4)),
        );
        match err {
            Err(ChypError::DependentVectors { det: Some(d) }) => {
                assert!(d.norm() < 1e-8);
            }
            other => panic!("expected dependence error, got {other:?}"),
        }
    }

    /// Displayed h for the triple intersection B12 cap B13 cap B14.
    fn display_h_triple(r: f64, s: f64, u: f64, t: f64) -> f64 {
        -2.0 + 2.0 * s.cos() + 4.0 * t.cos() + 2.0 * (r - u).cos()
            - (-t + r - u).cos()
            - (t + r - u).cos()
            - (-t + s).cos()
            - (t + s).cos()
            - (-2.0 * t - s + r).cos()
            + (2.0 * t - s + r).cos()
            - (-2.0 * t + s - u).cos()
            + (2.0 * t + s - u).cos()
            + (-2.0 * t + r).cos()
            - (2.0 * t + r).cos()
            - (-2.0 * t + u).cos()
            + (2.0 * t + u).cos()
            - 4.0 * (2.0 * t).cos()
            + (-s + r - t).cos()
            - (-s + r + t).cos()
            + (s - u - t).cos()
            - (s - u + t).cos()
            - (-t + r).cos()
            + (t + r).cos()
            + (-t + u).cos()
            - (t + u).cos()
            + (-s + r - 3.0 * t).cos()
            + (s - u - 3.0 * t).cos()
            + (r + 3.0 * t).cos()
            + (u - 3.0 * t).cos()
    }

    #[test]
    fn triple_chart_factorization_identity() {
        for theta in [0.87 * PI, 0.93 * PI, PI] {
            let g = build_group(theta).unwrap();
            let ch = triple_chart(
                g.center(),
                g.lift(Word::A(1)),
                g.lift(Word::A1A2),
                g.lift(Word::AInv(4)),
            )
            .unwrap();
            let co = theta.cos();
            let pref = 16.0 * co.powi(3) + 8.0 * co * co - 4.0 * co - 2.0;
            assert!(pref < 0.0);
            for k in 0..12 {
                let angles = [-PI + 0.52 * k as f64, 1.1 - 0.43 * k as f64, 0.8 * k as f64];
                let got = ch.norm_at(&angles);
                let want = pref * display_h_triple(angles[0], angles[1], angles[2], theta);
                assert!((got - want).abs() < 1e-8 * (1.0 + want.abs()));
            }
            // Witness at (-pi, 0, pi): h equals four times the paper's cubic
            // closed form (the displayed reduction dropped a factor 4), and
            // the chart norm is negative, certifying the triple ridge.
            let h = display_h_triple(-PI, 0.0, PI, theta);
            let closed = -4.0 * co.powi(3) - 2.0 * co * co + 3.0 * co + 1.5;
            assert!((h - 4.0 * closed).abs() < 1e-9 * (1.0 + h.abs()));
            let witness = ch.norm_at(&[-PI, 0.0, PI]);
            assert!((witness - pref * 4.0 * closed).abs() < 1e-8 * (1.0 + witness.abs()));
            assert!(witness < 0.0);
            if (theta - PI).abs() < 1e-12 {
                assert!((witness + 12.0).abs() < 1e-9, "at pi the witness value is -12");
            }
        }
    }

    #[test]
    fn triple_chart_boundary_slice_roots() {
        let g = build_group(0.9 * PI).unwrap();
        let ch = triple_chart(
            g.center(),
            g.lift(Word::A(1)),
            g.lift(Word::A1A2),
            g.lift(Word::AInv(4)),
        )
        .unwrap();
        // Slice through the negative witness: the third angle crosses zero.
        let roots = ch.boundary_slice(&[(0, -PI), (1, 0.0)], 2);
        assert!(!roots.is_empty());
        for t in roots {
            assert!(ch.norm_at(&[-PI, 0.0, t]).abs() < 1e-7);
        }
    }

    #[test]
    fn bisector_side_and_validation() {
        let g = reduced_group();
        let b = Bisector::new(g.center().clone(), g.lift(Word::A(1)).clone()).unwrap();
        assert!(b.side(g.center()).unwrap() < 0.0);
        assert!(b.side(g.lift(Word::A(1))).unwrap() > 0.0);
        let bad = Bisector::new(g.center().clone(), g.lift(Word::A(1)).scale(c(2.0, 0.0)));
        assert!(bad.is_err());
    }

    #[test]
    fn zero_locus_points_satisfy_equation() {
        let g = reduced_group();
        let ch = chart2d(&g, Word::A(1), Word::A(3));
        let pts = ch.zero_locus(128);
        assert!(!pts.is_empty());
        for (angles, v) in pts.iter().take(40) {
            assert!(ch.norm_at(angles).abs() < 1e-7);
            assert!(v.norm_h().abs() < 1e-7 * v.norm_euclid().powi(2).max(1.0));
        }
    }

    #[test]
    fn chart_isometry_equivariance() {
        // Applying a group isometry to all defining lifts produces a chart
        // whose norm function is pointwise equal.
        let g = build_group(0.91 * PI).unwrap();
        let m = g.word_matrix(Word::A(2));
        let ch = subspace_chart(g.center(), g.lift(Word::A(1)), g.lift(Word::AInv(2))).unwrap();
        let moved = subspace_chart(
            &g.center().apply(&m),
            &g.lift(Word::A(1)).apply(&m),
            &g.lift(Word::AInv(2)).apply(&m),
        )
        .unwrap();
        for k in 0..20 {
            let angles = [-PI + 0.3 * k as f64, 2.0 - 0.33 * k as f64];
            let a = ch.norm_at(&angles);
            let b = moved.norm_at(&angles);
            assert!((a - b).abs() < 1e-9 * (1.0 + a.abs()));
        }
    }
}
