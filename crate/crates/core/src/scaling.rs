//! The scaling operator `(T_m f)(z) = f(φ(z))/(cz + d)` on truncated Taylor
//! coefficient sequences, and the scale transform of a time signal.
//!
//! Outputs are truncated where a Cauchy estimate on a circle `|z| = ρ` inside
//! the pole radius `|d/c|` certifies that the omitted coefficients have ℓ₂
//! norm below the requested tolerance.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{GroupIndex, ScaleGroup};
use crate::math::{abs2, ceil, exp, is_finite, ln, sqrt};
use crate::moebius::{apply_map, SuMatrix};
use crate::signal::ScaleTimeSignal;
use crate::Complex;

/// Default cap on the number of output coefficients.
pub const DEFAULT_MAX_LEN: usize = 1 << 16;

const RADIUS_SAMPLES: usize = 400;

/// Taylor coefficients `c_0 … c_N` with a certified bound on the ℓ₂ norm of
/// everything that was cut off.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSeq {
    coeffs: Vec<Complex>,
    tail_bound: f64,
}

impl CoeffSeq {
    pub fn new(coeffs: Vec<Complex>, tail_bound: f64) -> Result<Self> {
        if !coeffs.iter().all(|c| is_finite(*c)) {
            return Err(Error::NonFinite("coefficients"));
        }
        if !(tail_bound.is_finite() && tail_bound >= 0.0) {
            return Err(Error::InvalidParameter("tail bound must be finite and >= 0"));
        }
        Ok(Self { coeffs, tail_bound })
    }

    /// An exact polynomial (tail bound 0).
    pub fn polynomial(coeffs: Vec<Complex>) -> Result<Self> {
        Self::new(coeffs, 0.0)
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn l2_norm(&self) -> f64 {
        sqrt(self.coeffs.iter().map(|c| abs2(*c)).sum())
    }

    /// Coefficient `n`, zero past the stored length.
    pub fn get(&self, n: usize) -> Complex {
        self.coeffs.get(n).copied().unwrap_or(Complex::new(0.0, 0.0))
    }

    /// Largest coefficientwise difference, padding the shorter with zeros.
    pub fn max_abs_diff(&self, other: &CoeffSeq) -> f64 {
        (0..self.len().max(other.len()))
            .map(|n| (self.get(n) - other.get(n)).norm())
            .fold(0.0, f64::max)
    }

    /// Evaluates the truncated series at `z` by Horner's rule.
    pub fn eval(&self, z: Complex) -> Complex {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, c| acc * z + c)
    }
}

/// [`transform_coeffs_bounded`] with the default length cap.
pub fn transform_coeffs(m: &SuMatrix, f: &CoeffSeq, tol: f64) -> Result<CoeffSeq> {
    transform_coeffs_bounded(m, f, tol, DEFAULT_MAX_LEN)
}

/// Coefficients of `(1/(cz + d))·f((az + b)/(cz + d))`.
///
/// The returned tail bound is the certified truncation bound plus the tail
/// bound carried by `f` (the operator is unitary, so an input tail maps to an
/// output error of the same ℓ₂ size).
pub fn transform_coeffs_bounded(m: &SuMatrix, f: &CoeffSeq, tol: f64, max_len: usize) -> Result<CoeffSeq> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidParameter("tolerance must be positive"));
    }
    if max_len == 0 {
        return Err(Error::InvalidParameter("max_len must be positive"));
    }
    let (a, b, c, d) = (m.a(), m.b(), m.c(), m.d());
    let last_nonzero = f.coeffs.iter().rposition(|x| *x != Complex::new(0.0, 0.0));
    let Some(degree) = last_nonzero else {
        return Ok(CoeffSeq {
            coeffs: Vec::new(),
            tail_bound: f.tail_bound,
        });
    };
    let input_tail = f.tail_bound;
    let f = &f.coeffs[..=degree];

    if c == Complex::new(0.0, 0.0) {
        // Rotation: φ(z) = (a/d) z, prefactor 1/d.
        let rot = a / d;
        let mut power = d.inv();
        let mut out = Vec::with_capacity(f.len());
        for x in f {
            out.push(x * power);
            power *= rot;
        }
        return Ok(CoeffSeq {
            coeffs: out,
            tail_bound: input_tail,
        });
    }

    let (len, tail) = truncation_length(m, f, tol, max_len)?;
    let mut g = vec![Complex::new(0.0, 0.0); len];
    g[0] = f[degree];
    for n in (0..degree).rev() {
        divide_by_linear(&mut g, c, d);
        multiply_by_linear(&mut g, a, b);
        g[0] += f[n];
    }
    divide_by_linear(&mut g, c, d);
    Ok(CoeffSeq {
        coeffs: g,
        tail_bound: tail + input_tail,
    })
}

/// `x ← x/(cz + d)` as power series, truncated to `x.len()`.
fn divide_by_linear(x: &mut [Complex], c: Complex, d: Complex) {
    let dinv = d.inv();
    let mut prev = Complex::new(0.0, 0.0);
    for v in x.iter_mut() {
        let y = (*v - c * prev) * dinv;
        *v = y;
        prev = y;
    }
}

/// `x ← (az + b)·x`, truncated to `x.len()`.
fn multiply_by_linear(x: &mut [Complex], a: Complex, b: Complex) {
    for i in (0..x.len()).rev() {
        let lower = if i > 0 { x[i - 1] } else { Complex::new(0.0, 0.0) };
        x[i] = b * x[i] + a * lower;
    }
}

/// Smallest certified length and the matching tail bound.
///
/// For `1 < ρ < |d/c|` the output is analytic on `|z| ≤ ρ` with
/// `max |F| ≤ P(q)/(|d| − |c|ρ)`, where `q = max_{|z|=ρ} |φ(z)|` (computed
/// exactly from the image circle) and `P(q) = Σ |f_j| q^j`. Cauchy's estimate
/// then bounds the ℓ₂ tail past `N` by `max|F| · ρ^{-N} / √(1 − ρ^{-2})`.
fn truncation_length(m: &SuMatrix, f: &[Complex], tol: f64, max_len: usize) -> Result<(usize, f64)> {
    let (cn, dn) = (m.c().norm(), m.d().norm());
    let pole_radius = dn / cn;
    let log_tol = ln(tol);
    let mut best: Option<(usize, f64)> = None;
    let mut best_at_cap = f64::INFINITY;
    for i in 0..RADIUS_SAMPLES {
        // Log-spaced fractions of the gap between 1 and the pole radius.
        let frac = exp(ln(1e-9) * (1.0 - (i as f64 + 0.5) / RADIUS_SAMPLES as f64));
        let rho = 1.0 + frac * (pole_radius - 1.0) * (1.0 - 1e-9);
        if !(rho > 1.0 && rho < pole_radius) {
            continue;
        }
        let Some(log_max) = log_sup_on_circle(m, f, rho) else {
            continue;
        };
        let log_rho = ln(rho);
        let log_geom = -0.5 * ln(1.0 - 1.0 / (rho * rho));
        let log_tail = |n: usize| log_max + log_geom - n as f64 * log_rho;
        let needed = ceil((log_max + log_geom - log_tol) / log_rho).max(1.0);
        best_at_cap = best_at_cap.min(exp(log_tail(max_len)));
        if needed <= max_len as f64 {
            let n = needed as usize;
            let tail = exp(log_tail(n));
            if best.is_none_or(|(bn, _)| n < bn) {
                best = Some((n, tail));
            }
        }
    }
    best.ok_or(Error::TruncationNotConverged {
        achieved: best_at_cap,
        max_len,
    })
}

/// `log max_{|z|=ρ} |f(φ(z))/(cz + d)|` bounded from above.
fn log_sup_on_circle(m: &SuMatrix, f: &[Complex], rho: f64) -> Option<f64> {
    let (c, d) = (m.c(), m.d());
    let den_min = d.norm() - c.norm() * rho;
    if den_min <= 0.0 {
        return None;
    }
    // Points symmetric with respect to the circle map to points symmetric
    // with respect to the image circle; the pole's mirror lands on the centre.
    let mirror = -(c.conj() * rho * rho) / d.conj();
    let centre = apply_map(m, mirror).ok()?;
    let radius = (apply_map(m, Complex::new(rho, 0.0)).ok()? - centre).norm();
    let q = centre.norm() + radius;
    let log_q = ln(q);
    let terms = f
        .iter()
        .enumerate()
        .filter(|(_, x)| **x != Complex::new(0.0, 0.0))
        .map(|(j, x)| ln(x.norm()) + j as f64 * log_q);
    let peak = terms.clone().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = terms.map(|t| exp(t - peak)).sum();
    Some(peak + ln(sum) - ln(den_min))
}

/// Column `idx ↦ T_{element_at(idx)} x`, truncated or zero-padded to
/// `time_len` rows, for every index of the scale window.
pub fn scale_transform(
    group: &ScaleGroup,
    x: &CoeffSeq,
    scale_window: &[GroupIndex],
    time_len: usize,
    tol: f64,
) -> Result<ScaleTimeSignal> {
    if time_len == 0 {
        return Err(Error::InvalidParameter("time_len must be at least 1"));
    }
    let columns = scale_columns(group, x, scale_window, tol)?;
    let mut out = ScaleTimeSignal::zeros(group.arity(), time_len);
    for (idx, col) in &columns {
        for n in 0..time_len.min(col.len()) {
            out.slice_mut(n).expect("slice exists").set(idx.clone(), col.get(n))?;
        }
    }
    Ok(out)
}

/// The untruncated columns of [`scale_transform`], with their tail bounds.
pub fn scale_columns(
    group: &ScaleGroup,
    x: &CoeffSeq,
    scale_window: &[GroupIndex],
    tol: f64,
) -> Result<Vec<(GroupIndex, CoeffSeq)>> {
    if scale_window.is_empty() {
        return Err(Error::InvalidParameter("scale window is empty"));
    }
    scale_window
        .iter()
        .map(|idx| {
            let annotate = |e: Error| Error::Column {
                index: idx.as_slice().to_vec(),
                source: Box::new(e),
            };
            let m = group.element_at(idx).map_err(annotate)?;
            let col = transform_coeffs(&m, x, tol).map_err(annotate)?;
            Ok((idx.clone(), col))
        })
        .collect()
}
