//! Trigonometric moment sequences: Toeplitz positivity, the Herglotz
//! function `Φ(z) = t₀ + 2Σ tₙzⁿ` and Stieltjes inversion.
//!
//! Moments follow `t_n = ∫ e^{−inθ} dν(θ)`, so that `Re Φ(re^{iθ})` is the
//! Poisson integral of `ν`.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::linalg::hermitian_min_eigenvalue;
use crate::math::{cis, is_finite, root_of_unity};
use crate::Complex;

/// Slack on the interval length accepted by [`stieltjes_invert`].
const INTERVAL_SLACK: f64 = 1e-12;

/// Sub-intervals used to integrate each endpoint cell.
const ENDPOINT_PANELS: usize = 16;

/// `t₀ … t_N`, with `t_{−n} = t_n*` implied.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence {
    t: Vec<Complex>,
}

impl MomentSequence {
    /// Requires at least one moment and a real `t₀`. A negative `t₀` is
    /// accepted here so that [`toeplitz_psd_check`] can report it.
    pub fn new(t: Vec<Complex>) -> Result<Self> {
        let Some(t0) = t.first() else {
            return Err(Error::EmptyMoments);
        };
        if !t.iter().all(|v| is_finite(*v)) {
            return Err(Error::NonFinite("moments"));
        }
        if t0.im != 0.0 {
            return Err(Error::ComplexT0(t0.im));
        }
        Ok(Self { t })
    }

    /// Moments of the normalized Lebesgue measure: `(1, 0, …, 0)`.
    pub fn lebesgue(order: usize) -> Self {
        let mut t = alloc::vec![Complex::new(0.0, 0.0); order + 1];
        t[0] = Complex::new(1.0, 0.0);
        Self { t }
    }

    /// Moments of the unit point mass at `theta`.
    pub fn point_mass(theta: f64, order: usize) -> Self {
        Self {
            t: (0..=order).map(|n| cis(-(n as f64) * theta)).collect(),
        }
    }

    /// Moments of the density sampled at `θ_j = 2πj/L` (weight `1/L` each).
    pub fn from_density(samples: &[f64], order: usize) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidParameter("density needs at least one sample"));
        }
        let l = samples.len();
        let mut t: Vec<Complex> = (0..=order)
            .map(|n| {
                samples
                    .iter()
                    .enumerate()
                    .map(|(j, w)| root_of_unity(-((n * j) as i128), l) * *w)
                    .sum::<Complex>()
                    / l as f64
            })
            .collect();
        t[0].im = 0.0;
        Self::new(t)
    }

    pub fn t(&self) -> &[Complex] {
        &self.t
    }

    /// The largest index `N`.
    pub fn order(&self) -> usize {
        self.t.len() - 1
    }

    /// `t_n` for any `|n| ≤ N`.
    pub fn get(&self, n: i64) -> Complex {
        let v = self.t[n.unsigned_abs() as usize];
        if n < 0 {
            v.conj()
        } else {
            v
        }
    }
}

/// Outcome of [`toeplitz_psd_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdReport {
    pub is_psd: bool,
    pub min_eigenvalue: f64,
    /// Index `N` of the largest Toeplitz matrix examined.
    pub order: usize,
}

/// Smallest eigenvalue of `𝒯_N = (t_{n−m})_{n,m=0..N}`; PSD iff it is at
/// least `−tol`. A negative `t₀` is rejected at order 0.
pub fn toeplitz_psd_check(ms: &MomentSequence, tol: f64) -> Result<PsdReport> {
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::InvalidParameter("tolerance must be finite and >= 0"));
    }
    let t0 = ms.t[0].re;
    if t0 < 0.0 {
        return Ok(PsdReport {
            is_psd: false,
            min_eigenvalue: t0,
            order: 0,
        });
    }
    let n = ms.t.len();
    let min = hermitian_min_eigenvalue(n, |i, j| ms.get(i as i64 - j as i64));
    Ok(PsdReport {
        is_psd: min >= -tol,
        min_eigenvalue: min,
        order: n - 1,
    })
}

/// A truncated Herglotz value together with the number of terms used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HerglotzValue {
    pub value: Complex,
    pub order: usize,
}

/// `t₀ + 2Σ_{n=1}^{N} t_n zⁿ` for `|z| < 1`.
pub fn herglotz_eval(ms: &MomentSequence, z: Complex) -> Result<HerglotzValue> {
    if !is_finite(z) {
        return Err(Error::NonFinite("evaluation point"));
    }
    if z.norm() >= 1.0 {
        return Err(Error::OutsideDisc(z.norm()));
    }
    Ok(HerglotzValue {
        value: herglotz_unchecked(ms, z),
        order: ms.order(),
    })
}

fn herglotz_unchecked(ms: &MomentSequence, z: Complex) -> Complex {
    let tail = ms.t[1..]
        .iter()
        .rev()
        .fold(Complex::new(0.0, 0.0), |acc, t| (acc + t) * z);
    ms.t[0] + tail * 2.0
}

/// Interval mass recovered by [`stieltjes_invert`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StieltjesMass {
    /// `(1/2π)·∫_a^b Re Φ(re^{iθ}) dθ`.
    pub mass: f64,
    /// Poisson mass within one quadrature cell of either endpoint, the
    /// ambiguity between open and closed intervals.
    pub endpoint_uncertainty: f64,
}

/// `(1/2π)·∫_a^b Re Φ(re^{iθ}) dθ` by composite Simpson quadrature with at
/// least `quad_points` panels. Any `a < b` with `b − a ≤ 2π` is accepted, so
/// intervals may straddle `θ = 0`.
pub fn stieltjes_invert(ms: &MomentSequence, a: f64, b: f64, r: f64, quad_points: usize) -> Result<StieltjesMass> {
    if !(a.is_finite() && b.is_finite() && a < b && b - a <= TAU + INTERVAL_SLACK) {
        return Err(Error::InvalidParameter("interval must satisfy a < b and b - a <= 2*pi"));
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidParameter("radius must lie in (0, 1)"));
    }
    if quad_points < 16 {
        return Err(Error::InvalidParameter("at least 16 quadrature points are required"));
    }
    let f = |theta: f64| herglotz_unchecked(ms, cis(theta) * r).re;
    let panels = quad_points + quad_points % 2;
    let mass = simpson(&f, a, b, panels) / (2.0 * PI);
    let cell = (b - a) / panels as f64;
    let near = |x: f64| simpson(&|t| f(t).abs(), x - cell, x + cell, ENDPOINT_PANELS);
    let endpoint_uncertainty = (near(a) + near(b)) / (2.0 * PI);
    Ok(StieltjesMass {
        mass,
        endpoint_uncertainty,
    })
}

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut sum = f(a) + f(b);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn real(v: &[f64]) -> MomentSequence {
        MomentSequence::new(v.iter().map(|x| c(*x, 0.0)).collect()).unwrap()
    }

    #[test]
    fn psd_examples() {
        let r = toeplitz_psd_check(&real(&[1.0]), 1e-12).unwrap();
        assert!(r.is_psd && (r.min_eigenvalue - 1.0).abs() < 1e-15 && r.order == 0);
        let r = toeplitz_psd_check(&real(&[1.0, 0.5]), 1e-12).unwrap();
        assert!(r.is_psd && (r.min_eigenvalue - 0.5).abs() < 1e-12);
        let r = toeplitz_psd_check(&real(&[1.0, 0.8, 0.0]), 1e-12).unwrap();
        let expected = 1.0 - 1.6 * (PI / 4.0).cos();
        assert!(!r.is_psd && (r.min_eigenvalue - expected).abs() < 1e-12 && r.order == 2);
        let r = toeplitz_psd_check(&real(&[-1.0, 0.0]), 1e-12).unwrap();
        assert!(!r.is_psd && r.order == 0 && r.min_eigenvalue == -1.0);
    }

    #[test]
    fn constructor_rules() {
        assert_eq!(MomentSequence::new(vec![]), Err(Error::EmptyMoments));
        assert_eq!(MomentSequence::new(vec![c(1.0, 0.5)]), Err(Error::ComplexT0(0.5)));
        let ms = MomentSequence::new(vec![c(1.0, 0.0), c(0.2, 0.3)]).unwrap();
        assert_eq!(ms.get(-1), c(0.2, -0.3));
    }

    #[test]
    fn herglotz_examples() {
        let leb = MomentSequence::lebesgue(10);
        let v = herglotz_eval(&leb, c(0.3, -0.2)).unwrap();
        assert_eq!(v.value, c(1.0, 0.0));
        assert_eq!(v.order, 10);
        let point = real(&[1.0; 61]);
        let v = herglotz_eval(&point, c(0.5, 0.0)).unwrap();
        assert!((v.value.re - 3.0).abs() / 3.0 <= 1e-15 && v.value.im == 0.0);
        assert!(matches!(herglotz_eval(&point, c(1.0, 0.0)), Err(Error::OutsideDisc(_))));
    }

    #[test]
    fn herglotz_positive_real_part_for_psd_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let density: Vec<f64> = (0..64).map(|_| rng.random::<f64>().powi(2)).collect();
        let ms = MomentSequence::from_density(&density, 20).unwrap();
        assert!(toeplitz_psd_check(&ms, 1e-10).unwrap().is_psd);
        for _ in 0..500 {
            let z = cis(rng.random::<f64>() * TAU) * (0.95 * rng.random::<f64>().sqrt());
            assert!(herglotz_eval(&ms, z).unwrap().value.re >= -1e-10);
        }
    }

    #[test]
    fn stieltjes_examples() {
        let leb = MomentSequence::lebesgue(4);
        let m = stieltjes_invert(&leb, 1.0, 2.0, 0.5, 64).unwrap();
        assert!((m.mass - 1.0 / TAU).abs() <= 1e-12);

        let point = MomentSequence::point_mass(0.0, 40_000);
        let m = stieltjes_invert(&point, -0.1, 0.1, 0.999, 4000).unwrap();
        assert!((m.mass - 1.0).abs() <= 1e-2, "{}", m.mass);
        assert!(m.endpoint_uncertainty < 1e-2);
        let m = stieltjes_invert(&point, 1.0, 2.0, 0.999, 400).unwrap();
        assert!(m.mass.abs() <= 1e-3);
    }

    #[test]
    fn stieltjes_full_circle_and_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let density: Vec<f64> = (0..32).map(|_| rng.random::<f64>()).collect();
        let ms = MomentSequence::from_density(&density, 12).unwrap();
        let full = stieltjes_invert(&ms, 0.0, TAU, 0.9, 1024).unwrap();
        assert!((full.mass - ms.t()[0].re).abs() <= 1e-10);
        let inner = stieltjes_invert(&ms, 0.5, 1.5, 0.9, 256).unwrap();
        let outer = stieltjes_invert(&ms, 0.5, 2.5, 0.9, 256).unwrap();
        assert!(inner.mass <= outer.mass + 1e-12);
    }

    #[test]
    fn stieltjes_rejects_bad_parameters() {
        let ms = MomentSequence::lebesgue(2);
        assert!(stieltjes_invert(&ms, 1.0, 1.0, 0.5, 16).is_err());
        assert!(stieltjes_invert(&ms, 0.0, 7.0, 0.5, 16).is_err());
        assert!(stieltjes_invert(&ms, 0.0, 1.0, 1.0, 16).is_err());
        assert!(stieltjes_invert(&ms, 0.0, 1.0, 0.5, 15).is_err());
    }
}
