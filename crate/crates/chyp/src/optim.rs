//! Global minimization of chart objectives over tori.
//!
//! The objectives are trigonometric polynomials with frequencies at most one
//! per phase (two after mixed differences), so a dense grid scan followed by
//! derivative-free pattern search resolves global minima to machine
//! precision. A certified mode bounds the function between grid points by a
//! Lipschitz constant computed from the exact trigonometric expansion,
//! turning a positive grid minimum into a positivity certificate.
//!
//! Everything here is pure; grid rows are evaluated in parallel and reduced
//! deterministically (min by value, ties by lexicographic angle order).

use std::collections::HashMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::chart::Chart;
use crate::error::{ChypError, Result};
use crate::herm::{cr, C64};

/// Resolutions and refinement tolerances; the defaults keep the full
/// verification suite in the minutes range.
#[derive(Clone, Debug)]
pub struct OptimConfig {
    /// Grid points per angle for 1- and 2-torus scans.
    pub grid_2d: usize,
    /// Grid points per angle for 3-torus scans.
    pub grid_3d: usize,
    /// Theta samples for sweeps over the moduli interval.
    pub theta_steps: usize,
    /// Pattern-search step threshold.
    pub refine_tol: f64,
}

impl Default for OptimConfig {
    fn default() -> Self {
        OptimConfig { grid_2d: 720, grid_3d: 256, theta_steps: 200, refine_tol: 1e-10 }
    }
}

impl OptimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_2d < 64 || self.grid_3d < 64 {
            return Err(ChypError::InvalidConfig("grid resolutions must be at least 64".into()));
        }
        if self.theta_steps < 2 {
            return Err(ChypError::InvalidConfig("theta sweep needs at least 2 steps".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinMode {
    Numeric,
    Certified,
}

/// Positivity certificate data: on a grid of step `h`, every point of the
/// torus is within `h sqrt(d) / 2` of a sample, so
/// `min f >= grid_min - L h sqrt(d) / 2`.
#[derive(Clone, Copy, Debug)]
pub struct Certificate {
    pub grid_step: f64,
    pub lipschitz: f64,
    pub lower_bound: f64,
}

/// Result of a global minimization, with the witness angles and, for sweeps,
/// the theta at which the minimum is attained.
#[derive(Clone, Debug)]
pub struct MinResult {
    pub value: f64,
    pub argmin: Vec<f64>,
    pub theta: Option<f64>,
    pub mode: MinMode,
    pub certificate: Option<Certificate>,
}

impl MinResult {
    pub fn certifies_positive(&self) -> bool {
        matches!(self.certificate, Some(c) if c.lower_bound > 0.0)
    }
}

/// A real trigonometric polynomial `f(x) = sum_k c_k e^(i k.x)` stored in
/// exponential form with `c_{-k} = conj(c_k)`.
#[derive(Clone, Debug)]
pub struct TrigPoly {
    dims: usize,
    terms: HashMap<Vec<i32>, C64>,
}

impl TrigPoly {
    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn terms(&self) -> &HashMap<Vec<i32>, C64> {
        &self.terms
    }

    fn insert(&mut self, freq: Vec<i32>, coeff: C64) {
        if coeff.norm() == 0.0 {
            return;
        }
        *self.terms.entry(freq).or_insert(C64::new(0.0, 0.0)) += coeff;
    }

    /// Adds `2 Re(coeff e^(i k.x))` (both exponential terms).
    fn insert_pair(&mut self, freq: Vec<i32>, coeff: C64) {
        let neg: Vec<i32> = freq.iter().map(|k| -k).collect();
        self.insert(freq, coeff);
        self.insert(neg, coeff.conj());
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dims);
        let mut acc = C64::new(0.0, 0.0);
        for (k, c) in &self.terms {
            let phase: f64 = k.iter().zip(x.iter()).map(|(&ki, &xi)| ki as f64 * xi).sum();
            acc += c * C64::from_polar(1.0, phase);
        }
        acc.re
    }

    /// Coefficient of `cos(k.x)` and `sin(k.x)` for a frequency vector.
    pub fn cos_sin_coeff(&self, freq: &[i32]) -> (f64, f64) {
        let k: Vec<i32> = freq.to_vec();
        let c = self.terms.get(&k).copied().unwrap_or(C64::new(0.0, 0.0));
        if freq.iter().all(|&x| x == 0) {
            return (c.re, 0.0);
        }
        (2.0 * c.re, -2.0 * c.im)
    }

    /// A Lipschitz bound for the Euclidean gradient:
    /// `|grad f| <= sum_k |c_k| |k|_2`.
    pub fn lipschitz(&self) -> f64 {
        self.terms
            .iter()
            .map(|(k, c)| {
                let knorm = (k.iter().map(|&x| (x as f64).powi(2)).sum::<f64>()).sqrt();
                c.norm() * knorm
            })
            .sum()
    }
}

/// Exact expansion of a chart's norm objective from its Gram matrix:
/// `<V,V> = sum G_mm + sum_{m<n} 2 Re(conj(z_m) z_n G_mn)`.
pub fn expand(chart: &Chart) -> TrigPoly {
    expand_gram(chart.gram(), chart.arity())
}

fn expand_gram(gram: &DMatrix<C64>, arity: usize) -> TrigPoly {
    let mut poly = TrigPoly { dims: arity, terms: HashMap::new() };
    let k = arity + 1;
    let constant: f64 = (0..k).map(|m| gram[(m, m)].re).sum();
    poly.insert(vec![0; arity], cr(constant));
    for m in 0..k {
        for n in (m + 1)..k {
            let mut freq = vec![0i32; arity];
            if m > 0 {
                freq[m - 1] = -1;
            }
            if n > 0 {
                freq[n - 1] = 1;
            }
            poly.insert_pair(freq, gram[(m, n)]);
        }
    }
    poly
}

/// Exact expansion of `|<V,u>|^2` from the functional coefficients `d_m`:
/// the Gram is replaced by `conj(d_m) d_n`.
pub fn expand_dist2(chart: &Chart, u: &crate::herm::HVec) -> Result<TrigPoly> {
    let f = chart.functional(u)?;
    let d = f.coefficients();
    let k = d.len();
    let mut gram = DMatrix::zeros(k, k);
    for a in 0..k {
        for b in 0..k {
            gram[(a, b)] = d[a].conj() * d[b];
        }
    }
    Ok(expand_gram(&gram, chart.arity()))
}

/// Fits a 1-dimensional trigonometric polynomial to samples of a function on
/// an interval, raising the degree until the residual drops below `tol`
/// relative to the data scale.
fn fit_fourier_1d<F: Fn(f64) -> C64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<Vec<(i32, C64)>> {
    let mut best: Option<(f64, Vec<(i32, C64)>)> = None;
    for degree in 2..=12usize {
        let m = 3 * (2 * degree + 1);
        let thetas: Vec<f64> =
            (0..m).map(|j| lo + (hi - lo) * j as f64 / (m - 1) as f64).collect();
        let vals: Vec<C64> = thetas.iter().map(|&t| f(t)).collect();
        let scale = vals.iter().map(|v| v.norm()).fold(1.0f64, f64::max);
        let cols = 2 * degree + 1;
        let mut a = DMatrix::zeros(m, cols);
        for (j, &t) in thetas.iter().enumerate() {
            for (col, k) in (-(degree as i32)..=degree as i32).enumerate() {
                a[(j, col)] = C64::from_polar(1.0, k as f64 * t);
            }
        }
        let b = nalgebra::DVector::from_column_slice(&vals);
        let svd = a.clone().svd(true, true);
        let x = match svd.solve(&b, 1e-13) {
            Ok(x) => x,
            Err(_) => continue,
        };
        let residual = (&a * &x - &b).camax();
        let coeffs: Vec<(i32, C64)> = (-(degree as i32)..=degree as i32)
            .enumerate()
            .map(|(col, k)| (k, x[col]))
            .collect();
        if residual < tol * scale {
            return Ok(coeffs);
        }
        if best.as_ref().is_none_or(|(r, _)| residual < *r) {
            best = Some((residual, coeffs));
        }
    }
    let (residual, _) = best.unwrap();
    Err(ChypError::FourierFit { residual, degree: 12 })
}

/// Expansion of a chart family's norm objective including the moduli angle:
/// each Gram entry is fitted as a trigonometric polynomial in theta on
/// `[lo, hi]`, then assembled into a poly in `(angles..., theta)`.
pub fn expand_with_theta<B>(builder: B, lo: f64, hi: f64) -> Result<TrigPoly>
where
    B: Fn(f64) -> Result<Chart>,
{
    let probe = builder(lo + 0.5 * (hi - lo))?;
    let arity = probe.arity();
    let k = arity + 1;
    let dims = arity + 1;
    let mut poly = TrigPoly { dims, terms: HashMap::new() };
    for m in 0..k {
        for n in m..k {
            let entry = |t: f64| -> C64 {
                match builder(t) {
                    Ok(ch) => ch.gram()[(m, n)],
                    Err(_) => C64::new(f64::NAN, f64::NAN),
                }
            };
            let coeffs = fit_fourier_1d(entry, lo, hi, 1e-9)?;
            for (kt, c) in coeffs {
                if c.norm() < 1e-11 {
                    continue;
                }
                let mut freq = vec![0i32; dims];
                freq[dims - 1] = kt;
                if m == n {
                    poly.insert(freq, c);
                } else {
                    if m > 0 {
                        freq[m - 1] = -1;
                    }
                    freq[n - 1] = 1;
                    // conj(z_m) z_n G_mn(theta) plus its conjugate
                    poly.insert(freq.clone(), c);
                    let neg: Vec<i32> = freq.iter().map(|x| -x).collect();
                    poly.insert(neg, c.conj());
                }
            }
        }
    }
    Ok(poly)
}

fn grid_points(n: usize) -> impl Iterator<Item = f64> + Clone {
    (0..n).map(move |k| -PI + 2.0 * PI * k as f64 / n as f64)
}

fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b.iter()) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

fn better(a: &(f64, Vec<f64>), b: &(f64, Vec<f64>)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && lex_less(&a.1, &b.1))
}

/// Dense grid scan over the d-torus; parallel over the first axis, reduced
/// deterministically.
fn grid_scan<F>(f: &F, dims: usize, n: usize) -> (f64, Vec<f64>)
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let firsts: Vec<f64> = grid_points(n).collect();
    let scan_row = |&r: &f64| -> (f64, Vec<f64>) {
        let mut best = (f64::INFINITY, vec![0.0; dims]);
        match dims {
            1 => {
                let v = f(&[r]);
                if v < best.0 {
                    best = (v, vec![r]);
                }
            }
            2 => {
                for s in grid_points(n) {
                    let v = f(&[r, s]);
                    if better(&(v, vec![r, s]), &best) {
                        best = (v, vec![r, s]);
                    }
                }
            }
            3 => {
                for s in grid_points(n) {
                    for t in grid_points(n) {
                        let v = f(&[r, s, t]);
                        if better(&(v, vec![r, s, t]), &best) {
                            best = (v, vec![r, s, t]);
                        }
                    }
                }
            }
            _ => unreachable!("torus dimension at most 3"),
        }
        best
    };
    firsts
        .par_iter()
        .map(scan_row)
        .reduce(|| (f64::INFINITY, vec![f64::INFINITY; dims]), |a, b| if better(&a, &b) { a } else { b })
}

/// Derivative-free pattern search from a starting point: tries one step in
/// each coordinate direction, halving the step on failure until it drops
/// below `tol`. Coordinates listed in `clamp` are kept inside their
/// interval; the rest are torus angles and move freely.
pub fn pattern_search<F>(
    f: &F,
    start: &[f64],
    mut step: f64,
    tol: f64,
    clamp: &[(usize, f64, f64)],
) -> (f64, Vec<f64>)
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    let mut x = start.to_vec();
    let mut val = f(&x);
    let clamp_coord = |i: usize, v: f64| -> f64 {
        for &(idx, lo, hi) in clamp {
            if idx == i {
                return v.clamp(lo, hi);
            }
        }
        v
    };
    while step > tol {
        let mut improved = false;
        for i in 0..x.len() {
            for dir in [1.0, -1.0] {
                let mut y = x.clone();
                y[i] = clamp_coord(i, y[i] + dir * step);
                let v = f(&y);
                if v < val {
                    val = v;
                    x = y;
                    improved = true;
                }
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    (val, x)
}

/// Global minimum of a smooth objective on the d-torus. Numeric mode scans a
/// dense grid and refines by pattern search; certified mode additionally
/// needs the exact trigonometric expansion and records a Lipschitz lower
/// bound over the whole torus.
pub fn global_min<F>(
    f: &F,
    dims: usize,
    mode: MinMode,
    poly: Option<&TrigPoly>,
    cfg: &OptimConfig,
) -> Result<MinResult>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    cfg.validate()?;
    if !(1..=3).contains(&dims) {
        return Err(ChypError::InvalidConfig(format!("unsupported torus dimension {dims}")));
    }
    let n = if dims <= 2 { cfg.grid_2d } else { cfg.grid_3d };
    let (grid_val, grid_arg) = grid_scan(f, dims, n);
    let step = 2.0 * PI / n as f64;
    let (value, argmin) = pattern_search(f, &grid_arg, step, cfg.refine_tol, &[]);
    debug_assert!(value <= grid_val + 1e-12);
    let certificate = match mode {
        MinMode::Numeric => None,
        MinMode::Certified => {
            let poly = poly.ok_or(ChypError::CertifiedNeedsPoly)?;
            let lipschitz = poly.lipschitz();
            let lower_bound = grid_val - lipschitz * step * (dims as f64).sqrt() / 2.0;
            Some(Certificate { grid_step: step, lipschitz, lower_bound })
        }
    };
    Ok(MinResult { value, argmin, theta: None, mode, certificate })
}

/// Per-theta minima of a family of torus objectives plus a joint refinement
/// over `(angles, theta)`; the overall result records the witness theta.
pub struct SweepResult {
    pub per_theta: Vec<(f64, MinResult)>,
    pub overall: MinResult,
}

pub fn sweep_min<B, F>(
    family: B,
    dims: usize,
    range: (f64, f64),
    steps: usize,
    cfg: &OptimConfig,
) -> Result<SweepResult>
where
    B: Fn(f64) -> Result<F> + Sync,
    F: Fn(&[f64]) -> f64 + Sync,
{
    cfg.validate()?;
    let (lo, hi) = range;
    let thetas: Vec<f64> =
        (0..steps).map(|k| lo + (hi - lo) * k as f64 / (steps - 1) as f64).collect();
    let per_theta: Vec<(f64, MinResult)> = thetas
        .par_iter()
        .map(|&t| {
            let obj = family(t)?;
            // Coarser grid per theta; the joint refinement recovers accuracy.
            let local = OptimConfig { grid_2d: cfg.grid_2d.min(256), ..cfg.clone() };
            let r = global_min(&obj, dims, MinMode::Numeric, None, &local)?;
            Ok((t, r))
        })
        .collect::<Result<Vec<_>>>()?;
    let best = per_theta
        .iter()
        .min_by(|a, b| {
            (a.1.value, a.0).partial_cmp(&(b.1.value, b.0)).expect("no NaN in sweep")
        })
        .expect("nonempty sweep");
    // Joint refinement in (angles, theta), theta clamped to the interval.
    let mut start = best.1.argmin.clone();
    start.push(best.0);
    let joint = |x: &[f64]| -> f64 {
        match family(x[dims]) {
            Ok(obj) => obj(&x[..dims]),
            Err(_) => f64::INFINITY,
        }
    };
    let step0 = (hi - lo) / (steps - 1) as f64;
    let (value, arg) =
        pattern_search(&joint, &start, step0.max(2.0 * PI / 256.0), cfg.refine_tol, &[(dims, lo, hi)]);
    let overall = MinResult {
        value,
        argmin: arg[..dims].to_vec(),
        theta: Some(arg[dims]),
        mode: MinMode::Numeric,
        certificate: None,
    };
    Ok(SweepResult { per_theta, overall })
}

/// Extrema of `g` over the zero locus of a 2-phase chart's norm, by slicing:
/// for each grid value of one angle the norm is solved exactly in the other,
/// `g` is evaluated at the roots, and the extremal slices are refined by
/// pattern search on the slice parameter. Both slicing orientations are
/// combined. Errors if the locus is empty.
pub fn constrained_extrema<G>(chart: &Chart, g: G, cfg: &OptimConfig) -> Result<(f64, f64)>
where
    G: Fn(&[f64]) -> f64 + Sync,
{
    cfg.validate()?;
    if chart.arity() != 2 {
        return Err(ChypError::InvalidConfig(
            "constrained extrema implemented for 2-phase charts".into(),
        ));
    }
    let norm = |x: &[f64]| chart.norm_at(x);
    let n = cfg.grid_2d;
    let (fmin, _) = grid_scan(&norm, 2, n.min(360));
    if fmin >= 0.0 {
        return Err(ChypError::EmptyLocus { min: fmin });
    }

    // orientation 0: fix angle 0 at x, solve angle 1; orientation 1: swap.
    let eval_slice = |orient: usize, x: f64, pick_max: bool| -> Option<(f64, f64)> {
        let (fixed, free) = if orient == 0 { (0usize, 1usize) } else { (1, 0) };
        let roots = chart.boundary_slice(&[(fixed, x)], free);
        let mut best: Option<(f64, f64)> = None;
        for t in roots {
            let angles = if orient == 0 { [x, t] } else { [t, x] };
            let v = g(&angles);
            let replace = match best {
                None => true,
                Some((bv, _)) => {
                    if pick_max {
                        v > bv
                    } else {
                        v < bv
                    }
                }
            };
            if replace {
                best = Some((v, t));
            }
        }
        best
    };

    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for orient in 0..2 {
        for pick_max in [false, true] {
            let grid: Vec<f64> = grid_points(n).collect();
            let best = grid
                .par_iter()
                .filter_map(|&x| eval_slice(orient, x, pick_max).map(|(v, _)| (v, x)))
                .reduce(
                    || (if pick_max { f64::NEG_INFINITY } else { f64::INFINITY }, f64::INFINITY),
                    |a, b| {
                        let take_a = if pick_max {
                            a.0 > b.0 || (a.0 == b.0 && a.1 < b.1)
                        } else {
                            a.0 < b.0 || (a.0 == b.0 && a.1 < b.1)
                        };
                        if take_a {
                            a
                        } else {
                            b
                        }
                    },
                );
            if !best.1.is_finite() {
                continue;
            }
            // Refine the slice parameter.
            let slice_obj = |x: &[f64]| -> f64 {
                match eval_slice(orient, x[0], pick_max) {
                    Some((v, _)) => {
                        if pick_max {
                            -v
                        } else {
                            v
                        }
                    }
                    None => f64::INFINITY,
                }
            };
            let (val, _) =
                pattern_search(&slice_obj, &[best.1], 2.0 * PI / n as f64, cfg.refine_tol, &[]);
            if pick_max {
                hi = hi.max(-val);
            } else {
                lo = lo.min(val);
            }
        }
    }
    Ok((lo, hi))
}

/// Constrained extrema swept over theta: per-theta extrema (skipping theta
/// where the locus is empty) plus local refinement of the extremal theta.
pub fn constrained_extrema_swept<B, G>(
    family: B,
    range: (f64, f64),
    steps: usize,
    cfg: &OptimConfig,
) -> Result<(f64, f64)>
where
    B: Fn(f64) -> Result<(Chart, G)> + Sync,
    G: Fn(&[f64]) -> f64 + Sync,
{
    let (lo, hi) = range;
    let thetas: Vec<f64> =
        (0..steps).map(|k| lo + (hi - lo) * k as f64 / (steps - 1) as f64).collect();
    let locals: Vec<(f64, Option<(f64, f64)>)> = thetas
        .par_iter()
        .map(|&t| {
            let per = family(t).and_then(|(chart, g)| {
                let local = OptimConfig { grid_2d: cfg.grid_2d.min(360), ..cfg.clone() };
                constrained_extrema(&chart, g, &local)
            });
            Ok((t, per.ok()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut best_min: Option<(f64, f64)> = None;
    let mut best_max: Option<(f64, f64)> = None;
    for (t, ext) in &locals {
        if let Some((l, h)) = ext {
            if best_min.is_none_or(|(v, _)| *l < v) {
                best_min = Some((*l, *t));
            }
            if best_max.is_none_or(|(v, _)| *h > v) {
                best_max = Some((*h, *t));
            }
        }
    }
    let (_, tmin) = best_min.ok_or(ChypError::EmptyLocus { min: f64::INFINITY })?;
    let (_, tmax) = best_max.expect("max exists when min does");
    let refine = |t0: f64, pick_max: bool| -> f64 {
        let obj = |x: &[f64]| -> f64 {
            let t = x[0].clamp(lo, hi);
            match family(t) {
                Ok((chart, g)) => {
                    let local = OptimConfig { grid_2d: 360, ..cfg.clone() };
                    match constrained_extrema(&chart, g, &local) {
                        Ok((l, h)) => {
                            if pick_max {
                                -h
                            } else {
                                l
                            }
                        }
                        Err(_) => f64::INFINITY,
                    }
                }
                Err(_) => f64::INFINITY,
            }
        };
        let step0 = (hi - lo) / (steps - 1) as f64;
        let (v, _) = pattern_search(&obj, &[t0], step0, 1e-6, &[(0, lo, hi)]);
        if pick_max {
            -v
        } else {
            v
        }
    };
    Ok((refine(tmin, false), refine(tmax, true)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::{giraud_chart, subspace_chart};
    use crate::group::{build_group, theta_lo, Word};

    fn reduced() -> crate::group::GroupData {
        build_group(theta_lo()).unwrap().reduce_to_pu21().unwrap()
    }

    fn cfg() -> OptimConfig {
        OptimConfig::default()
    }

    #[test]
    fn constant_function_min_is_exact() {
        let f = |_: &[f64]| 7.0;
        let r = global_min(&f, 2, MinMode::Numeric, None, &cfg()).unwrap();
        assert_eq!(r.value, 7.0);
    }

    #[test]
    fn min_result_value_matches_objective_at_argmin() {
        let f = |x: &[f64]| (x[0] - 0.7).cos() + 0.3 * (2.0 * x[1]).sin();
        let r = global_min(&f, 2, MinMode::Numeric, None, &cfg()).unwrap();
        assert!((f(&r.argmin) - r.value).abs() < 1e-12);
    }

    #[test]
    fn refinement_never_exceeds_grid_minimum() {
        let f = |x: &[f64]| x[0].cos() * 1.3 + (x[0] + x[1]).sin();
        let coarse = OptimConfig { grid_2d: 64, ..cfg() };
        let (grid_val, _) = grid_scan(&f, 2, 64);
        let r = global_min(&f, 2, MinMode::Numeric, None, &coarse).unwrap();
        assert!(r.value <= grid_val);
    }

    #[test]
    fn golden_minima_2d_match_reported_values() {
        let g = reduced();
        let cases = [
            (Word::A(2), 12.752),
            (Word::AInv(2), 4.78),
            (Word::AInv(3), 20.51),
            (Word::A2A3, 4.58),
        ];
        for (w, expect) in cases {
            let ch = giraud_chart(g.center(), g.lift(Word::A(1)), g.lift(w)).unwrap();
            let f = |x: &[f64]| ch.norm_at(x);
            let r = global_min(&f, 2, MinMode::Numeric, None, &cfg()).unwrap();
            assert!(
                (r.value - expect).abs() < 0.05,
                "B12 vs {w}: got {} expected {expect}",
                r.value
            );
        }
    }

    #[test]
    fn expansion_agrees_with_chart_evaluation() {
        let g = reduced();
        let ch = giraud_chart(g.center(), g.lift(Word::A(1)), g.lift(Word::A(2))).unwrap();
        let poly = expand(&ch);
        for k in 0..100 {
            let x = [-PI + 0.0628 * k as f64, (k as f64 * 0.7).sin() * PI];
            assert!((poly.eval(&x) - ch.norm_at(&x)).abs() < 1e-9 * (1.0 + ch.norm_at(&x).abs()));
        }
    }

    #[test]
    fn expansion_coefficients_match_displayed_forms() {
        let s3 = 3.0f64.sqrt();
        let g = reduced();
        // B12 cap B23: constant 16 sqrt3 + 48, cos(r) coefficient -(8 sqrt3 + 20),
        // sin(s) coefficient 8 sqrt3 + 4, mixed sin(r-s) coefficient 2 sqrt3 + 2.
        let ch = giraud_chart(g.center(), g.lift(Word::A(1)), g.lift(Word::A(2))).unwrap();
        let poly = expand(&ch);
        let (c0, _) = poly.cos_sin_coeff(&[0, 0]);
        assert!((c0 - (16.0 * s3 + 48.0)).abs() < 1e-9);
        let (cr_, sr) = poly.cos_sin_coeff(&[1, 0]);
        assert!((cr_ + (8.0 * s3 + 20.0)).abs() < 1e-9);
        assert!((sr + 8.0).abs() < 1e-9);
        let (cs, ss) = poly.cos_sin_coeff(&[0, 1]);
        assert!((cs + (8.0 * s3 + 16.0)).abs() < 1e-9);
        assert!((ss - (8.0 * s3 + 4.0)).abs() < 1e-9);
        // frequency (r - s) corresponds to k = (1, -1) with
        // cos(r-s) coeff 4 and sin(r-s) coeff 2 sqrt3 + 2.
        let (cm, sm) = poly.cos_sin_coeff(&[1, -1]);
        assert!((cm - 4.0).abs() < 1e-9);
        assert!((sm - (2.0 * s3 + 2.0)).abs() < 1e-9);

        // B12 cap B32: constant 14 sqrt3 + 36, cos(r-s) and sin(r-s)
        // coefficients both 2 sqrt3.
        let ch = giraud_chart(g.center(), g.lift(Word::A(1)), g.lift(Word::AInv(2))).unwrap();
        let poly = expand(&ch);
        let (c0, _) = poly.cos_sin_coeff(&[0, 0]);
        assert!((c0 - (14.0 * s3 + 36.0)).abs() < 1e-9);
        let (cm, sm) = poly.cos_sin_coeff(&[1, -1]);
        assert!((cm - 2.0 * s3).abs() < 1e-9);
        assert!((sm - 2.0 * s3).abs() < 1e-9);
    }

    #[test]
    fn certified_mode_requires_poly_and_certifies_positive_minima() {
        let g = reduced();
        let ch = giraud_chart(g.center(), g.lift(Word::A(1)), g.lift(Word::A(2))).unwrap();
        let f = |x: &[f64]| ch.norm_at(x);
        assert!(matches!(
            global_min(&f, 2, MinMode::Certified, None, &cfg()),
            Err(ChypError::CertifiedNeedsPoly)
        ));
        let poly = expand(&ch);
        let r = global_min(&f, 2, MinMode::Certified, Some(&poly), &cfg()).unwrap();
        assert!(r.certifies_positive(), "12.752 minimum should certify: {:?}", r.certificate);
        // Soundness: certificate implies the numeric minimum is positive.
        assert!(r.value > 0.0);
    }

    #[test]
    fn certified_mode_declines_negative_objectives() {
        let g = reduced();
        let ch = giraud_chart(g.center(), g.lift(Word::A(1)), g.lift(Word::A(3))).unwrap();
        let f = |x: &[f64]| ch.norm_at(x);
        let poly = expand(&ch);
        let r = global_min(&f, 2, MinMode::Certified, Some(&poly), &cfg()).unwrap();
        assert!(!r.certifies_positive());
        assert!(r.value < 0.0);
    }

    #[test]
    fn brute_force_oracle_agrees() {
        // Independent oracle: a plain dense double loop, no slicing, no
        // refinement, no shared code path beyond the objective itself.
        let g = reduced();
        let ch = giraud_chart(g.center(), g.lift(Word::A(1)), g.lift(Word::AInv(2))).unwrap();
        let f = |x: &[f64]| ch.norm_at(x);
        let mut brute = f64::INFINITY;
        let n = 2880;
        for a in 0..n {
            let r = -PI + 2.0 * PI * a as f64 / n as f64;
            for b in 0..n {
                let s = -PI + 2.0 * PI * b as f64 / n as f64;
                brute = brute.min(f(&[r, s]));
            }
        }
        let r = global_min(&f, 2, MinMode::Numeric, None, &cfg()).unwrap();
        assert!((r.value - brute).abs() < 1e-3);
        assert!(r.value <= brute + 1e-12);
    }

    #[test]
    fn j_related_charts_share_minima() {
        let g = build_group(0.9 * PI).unwrap();
        let a = subspace_chart(g.center(), g.lift(Word::A(1)), g.lift(Word::A(2))).unwrap();
        let b = subspace_chart(g.center(), g.lift(Word::A(2)), g.lift(Word::A(3))).unwrap();
        let fa = |x: &[f64]| a.norm_at(x);
        let fb = |x: &[f64]| b.norm_at(x);
        let ra = global_min(&fa, 2, MinMode::Numeric, None, &cfg()).unwrap();
        let rb = global_min(&fb, 2, MinMode::Numeric, None, &cfg()).unwrap();
        assert!((ra.value - rb.value).abs() < 1e-6 * (1.0 + ra.value.abs()));
    }

    #[test]
    fn sweep_constant_family() {
        let family = |_t: f64| -> Result<_> { Ok(move |_x: &[f64]| 3.5) };
        let r = sweep_min(family, 2, (theta_lo(), PI), 10, &cfg()).unwrap();
        for (_, m) in &r.per_theta {
            assert_eq!(m.value, 3.5);
        }
        assert_eq!(r.overall.value, 3.5);
        assert!(r.overall.theta.is_some());
    }

    #[test]
    fn constrained_extrema_of_constraint_itself_vanish() {
        let g = reduced();
        let ch = giraud_chart(g.center(), g.lift(Word::A(1)), g.lift(Word::A(3))).unwrap();
        let norm = |x: &[f64]| ch.norm_at(x);
        let (lo, hi) = constrained_extrema(&ch, norm, &cfg()).unwrap();
        assert!(lo.abs() < 1e-7 && hi.abs() < 1e-7);
    }

    #[test]
    fn constrained_extrema_match_reported_2d_values() {
        let g = reduced();
        let ch = giraud_chart(g.center(), g.lift(Word::A(1)), g.lift(Word::A(3))).unwrap();
        let f = ch.functional(g.lift(Word::A1A2)).unwrap();
        let (lo, hi) = constrained_extrema(&ch, move |x: &[f64]| f.eval(x), &cfg()).unwrap();
        assert!((lo - 5.85).abs() < 0.05, "min {lo}");
        assert!((hi - 14.23).abs() < 0.05, "max {hi}");
    }

    #[test]
    fn constrained_extrema_error_on_empty_locus() {
        let g = reduced();
        let ch = giraud_chart(g.center(), g.lift(Word::A(1)), g.lift(Word::A(2))).unwrap();
        let r = constrained_extrema(&ch, |x: &[f64]| ch.norm_at(x), &cfg());
        assert!(matches!(r, Err(ChypError::EmptyLocus { .. })));
    }

    #[test]
    fn theta_expansion_matches_family_evaluation() {
        let builder = |t: f64| -> Result<crate::chart::Chart> {
            let g = build_group(t)?;
            subspace_chart(g.center(), g.lift(Word::A(1)), g.lift(Word::AInv(2)))
        };
        let poly = expand_with_theta(builder, theta_lo(), PI).unwrap();
        assert_eq!(poly.dims(), 3);
        for k in 0..40 {
            let t = theta_lo() + (PI - theta_lo()) * (k as f64 + 0.37) / 40.0;
            let ch = builder(t).unwrap();
            let angles = [(k as f64 * 0.91).sin() * PI, (k as f64 * 0.53).cos() * PI];
            let got = poly.eval(&[angles[0], angles[1], t]);
            let want = ch.norm_at(&angles);
            assert!(
                (got - want).abs() < 1e-6 * (1.0 + want.abs()),
                "t={t} angles={angles:?}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn lipschitz_bound_dominates_finite_differences() {
        let g = reduced();
        let ch = giraud_chart(g.center(), g.lift(Word::A(1)), g.lift(Word::A(2))).unwrap();
        let poly = expand(&ch);
        let l = poly.lipschitz();
        let h = 1e-6;
        for k in 0..50 {
            let x = [(k as f64 * 0.37).sin() * PI, (k as f64 * 0.83).cos() * PI];
            let fx = poly.eval(&x);
            let fdx = (poly.eval(&[x[0] + h, x[1]]) - fx) / h;
            let fdy = (poly.eval(&[x[0], x[1] + h]) - fx) / h;
            assert!((fdx * fdx + fdy * fdy).sqrt() <= l * (1.0 + 1e-6) + 1e-6);
        }
    }

    #[test]
    fn config_validation() {
        let bad = OptimConfig { grid_2d: 32, ..OptimConfig::default() };
        assert!(bad.validate().is_err());
        let bad = OptimConfig { theta_steps: 1, ..OptimConfig::default() };
        assert!(bad.validate().is_err());
    }
}
