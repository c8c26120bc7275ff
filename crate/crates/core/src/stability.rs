//! Certified analyzers for BIBO stability, dissipativity and ℓ1-ℓ2 gain of
//! double convolution systems, plus Monte-Carlo verification.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::certify::{certified_sup, torus_value, SupCertificate, TorusPoly, DEFAULT_BUDGET};
use crate::convolution::{double_convolve, group_convolve, ScaleMode};
use crate::error::{Error, Result};
use crate::group::GroupIndex;
use crate::linalg::hermitian_min_eigenvalue;
use crate::math::{abs2, cis, sqrt};
use crate::signal::{norm, NormKind, ScaleSignal, ScaleTimeSignal};
use crate::spectral::{gtf_eval, symbol_at};
use crate::Complex;

/// Tolerance on `‖v‖₂ = 1` for [`adversarial_input`].
pub const UNIT_VECTOR_TOL: f64 = 1e-12;

/// Slack above 1 on observed/certified ratios before a pass verdict is
/// considered contradicted.
pub const EMPIRICAL_SLACK: f64 = 1e-9;

/// Largest number of points in a window used for lower-bound search.
const MAX_WINDOW_POINTS: usize = 4096;

/// Largest number of grid points used to locate a starting character.
const MAX_SEARCH_POINTS: usize = 4096;

/// Ascent iterations per window.
const ASCENT_ITERATIONS: usize = 200;

/// Largest number of entries in a violating input.
const MAX_VIOLATING_ENTRIES: usize = 1 << 16;

/// Radius of the disc from which Gram points are drawn.
const GRAM_RADIUS: f64 = 0.95;

/// `lower ≤ ‖M_h‖ ≤ upper`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorNormBracket {
    pub lower: f64,
    pub upper: f64,
    pub certified: bool,
    /// Angles where the symbol attains `lower`.
    pub argmax: Vec<f64>,
    pub evaluations: u64,
}

impl From<SupCertificate> for OperatorNormBracket {
    fn from(s: SupCertificate) -> Self {
        Self {
            lower: s.lower,
            upper: s.upper,
            certified: s.certified,
            argmax: s.argmax,
            evaluations: s.evaluations,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    Bibo,
    Dissipative,
    L1L2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

/// How a unit vector for the BIBO lower bound was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LowerBoundMethod {
    Delta,
    WindowedCharacter { window: usize },
    Ascent { window: usize, iterations: usize },
}

/// Evidence attached to a report.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// Angles maximizing a symbol norm.
    TorusArgmax { theta: Vec<f64>, value: f64 },
    /// Unit vector `v` with `Σ_m ‖M*_{h_{n−m}} v‖ = gain`.
    UnitVector {
        n: usize,
        v: ScaleSignal,
        gain: f64,
        method: LowerBoundMethod,
    },
    /// Point of the torus where `|𝓗(z, z⃗)| = modulus`.
    TorusPoint { z: Complex, zs: Vec<Complex>, modulus: f64 },
    /// Finite input whose output energy exceeds its own.
    ViolatingInput {
        input: ScaleTimeSignal,
        input_energy: f64,
        output_energy: f64,
    },
    /// Smallest Gram eigenvalue of the contractivity kernel over the
    /// sampled point sets.
    Gram {
        min_eigenvalue: f64,
        sets: usize,
        points_per_set: usize,
        seed: u64,
    },
    /// Output energy produced by the unit impulse.
    Impulse { output_energy: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    pub property: Property,
    pub verdict: Verdict,
    /// Every torus supremum reached the requested relative tolerance.
    pub certified: bool,
    pub sufficient_upper: Option<f64>,
    pub necessary_lower: Option<f64>,
    pub tol: f64,
    pub budget: u64,
    pub evaluations: u64,
    pub witnesses: Vec<Witness>,
}

/// Knobs shared by the analyzers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisOptions {
    /// Relative tolerance for certified suprema and verdict thresholds.
    pub tol: f64,
    /// Evaluation budget of each branch-and-bound run.
    pub budget: u64,
    /// Seed for the Gram sampling.
    pub seed: u64,
    pub gram_sets: usize,
    pub gram_points: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            budget: DEFAULT_BUDGET,
            seed: 0,
            gram_sets: 20,
            gram_points: 12,
        }
    }
}

fn symbol_poly(h: &ScaleSignal) -> TorusPoly {
    let terms = h.iter().map(|(k, v)| (k.as_slice().to_vec(), *v)).collect();
    TorusPoly::new(h.arity(), terms).expect("indices share the signal arity")
}

/// `sup_θ |ĥ(θ)|`, which is `‖M_h‖` on `ℓ₂(ℤ^p)` and, for cone-supported
/// `h`, also the norm of its compression to the cone.
pub fn mult_operator_norm(h: &ScaleSignal, cone: bool, tol: f64, budget: u64) -> Result<OperatorNormBracket> {
    if cone && !h.is_cone_supported() {
        return Err(Error::ImpulseNotScaleCausal);
    }
    Ok(certified_sup(&[symbol_poly(h)], h.arity(), tol, budget)?.into())
}

/// `M*_h v = h̃ ⋆ v` with `h̃(k) = h(−k)*`, projected to the cone if asked.
fn adjoint_apply(h: &ScaleSignal, v: &ScaleSignal, cone: bool) -> ScaleSignal {
    let reflected =
        ScaleSignal::from_entries(h.arity(), h.iter().map(|(k, a)| (-k, a.conj()))).expect("finite entries");
    let out = group_convolve(&reflected, v).expect("same arity");
    if cone {
        out.cone_projection()
    } else {
        out
    }
}

fn apply(h: &ScaleSignal, v: &ScaleSignal, cone: bool) -> ScaleSignal {
    let out = group_convolve(h, v).expect("same arity");
    if cone {
        out.cone_projection()
    } else {
        out
    }
}

/// `Σ_n ‖M*_{h_n} v‖`.
fn adjoint_gain(h: &ScaleTimeSignal, v: &ScaleSignal, cone: bool) -> f64 {
    h.slices().iter().map(|s| adjoint_apply(s, v, cone).l2_norm()).sum()
}

fn window_points(arity: usize, width: usize) -> Vec<GroupIndex> {
    let mut points = vec![Vec::new()];
    for _ in 0..arity {
        points = points
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (0..width as i64).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    points.into_iter().map(GroupIndex::new).collect()
}

fn windowed_character(arity: usize, width: usize, theta: &[f64]) -> ScaleSignal {
    let points = window_points(arity, width);
    let scale = 1.0 / sqrt(points.len() as f64);
    ScaleSignal::from_entries(
        arity,
        points.into_iter().map(|k| {
            let phase: f64 = k.as_slice().iter().zip(theta).map(|(&ki, &t)| ki as f64 * t).sum();
            (k, cis(phase) * scale)
        }),
    )
    .expect("finite entries")
}

fn restrict_to_window(v: &ScaleSignal, width: usize) -> ScaleSignal {
    ScaleSignal::from_entries(
        v.arity(),
        v.iter()
            .filter(|(k, _)| k.as_slice().iter().all(|&ki| ki >= 0 && ki < width as i64))
            .map(|(k, x)| (k.clone(), *x)),
    )
    .expect("finite entries")
}

/// Maximizes the convex function `v ↦ Σ_n ‖A_n v‖` over unit vectors in a
/// window by the monotone update `v ← P(∇)/‖P(∇)‖`.
fn ascend(h: &ScaleTimeSignal, start: ScaleSignal, width: usize, cone: bool) -> (ScaleSignal, f64, usize) {
    let mut v = start;
    let mut gain = adjoint_gain(h, &v, cone);
    for iteration in 0..ASCENT_ITERATIONS {
        let mut grad = ScaleSignal::new(h.arity());
        for s in h.slices() {
            let a = adjoint_apply(s, &v, cone);
            let n = a.l2_norm();
            if n > 0.0 {
                for (k, x) in apply(s, &a, cone).iter() {
                    grad.accumulate(k.clone(), x / n);
                }
            }
        }
        grad.drop_zeros();
        let grad = restrict_to_window(&grad, width);
        let n = grad.l2_norm();
        if n == 0.0 {
            return (v, gain, iteration);
        }
        let next = grad.scaled(Complex::new(1.0 / n, 0.0));
        let next_gain = adjoint_gain(h, &next, cone);
        if next_gain <= gain * (1.0 + 1e-13) {
            if next_gain > gain {
                return (next, next_gain, iteration + 1);
            }
            return (v, gain, iteration);
        }
        v = next;
        gain = next_gain;
    }
    (v, gain, ASCENT_ITERATIONS)
}

fn search_grid_size(arity: usize) -> usize {
    let mut g = 1;
    while (g + 1usize)
        .checked_pow(arity as u32)
        .is_some_and(|n| n <= MAX_SEARCH_POINTS)
        && g < 256
    {
        g += 1;
    }
    g
}

/// Grid argmax of `Σ_n |ĥ_n(θ)|`.
fn best_character(h: &ScaleTimeSignal) -> Vec<f64> {
    let arity = h.arity();
    let g = search_grid_size(arity);
    let total = g.pow(arity as u32);
    let mut best = (f64::NEG_INFINITY, vec![0.0; arity]);
    for flat in 0..total {
        let mut rest = flat;
        let theta: Vec<f64> = (0..arity)
            .map(|_| {
                let j = rest % g;
                rest /= g;
                core::f64::consts::TAU * j as f64 / g as f64
            })
            .collect();
        let value: f64 = h.slices().iter().map(|s| symbol_at(s, &theta).norm()).sum();
        if value > best.0 {
            best = (value, theta);
        }
    }
    best.1
}

/// Bracket for the BIBO gain `sup_v Σ_n ‖M*_{h_n} v‖` between a searched
/// unit vector and `Σ_n ‖M_{h_n}‖`.
pub fn bibo_analysis(h: &ScaleTimeSignal, cone: bool, opts: &AnalysisOptions) -> Result<StabilityReport> {
    if cone && !h.is_cone_supported() {
        return Err(Error::ImpulseNotScaleCausal);
    }
    let arity = h.arity();
    let mut upper = 0.0;
    let mut certified = true;
    let mut evaluations = 0;
    let mut witnesses = Vec::new();
    for s in h.slices() {
        let b = mult_operator_norm(s, cone, opts.tol, opts.budget)?;
        upper += b.upper;
        certified &= b.certified;
        evaluations += b.evaluations;
    }

    let n = h.len().saturating_sub(1);
    let delta = ScaleSignal::delta(GroupIndex::zero(arity));
    let mut best = (adjoint_gain(h, &delta, cone), delta, LowerBoundMethod::Delta);
    let theta = best_character(h);
    let mut width = 4usize;
    while width.checked_pow(arity as u32).is_some_and(|p| p <= MAX_WINDOW_POINTS) {
        let v = windowed_character(arity, width, &theta);
        let gain = adjoint_gain(h, &v, cone);
        if gain > best.0 {
            best = (gain, v.clone(), LowerBoundMethod::WindowedCharacter { window: width });
        }
        let (v, gain, iterations) = ascend(h, v, width, cone);
        if gain > best.0 {
            best = (
                gain,
                v,
                LowerBoundMethod::Ascent {
                    window: width,
                    iterations,
                },
            );
        }
        width *= 4;
    }
    let (gain, v, method) = best;
    let lower = gain.min(upper);
    witnesses.push(Witness::UnitVector { n, v, gain, method });
    Ok(StabilityReport {
        property: Property::Bibo,
        verdict: Verdict::Pass,
        certified,
        sufficient_upper: Some(upper),
        necessary_lower: Some(lower),
        tol: opts.tol,
        budget: opts.budget,
        evaluations,
        witnesses,
    })
}

/// Input whose response at time `n` satisfies
/// `⟨y_n, v⟩ = Σ_m ‖M*_{h_{n−m}} v‖`.
pub fn adversarial_input(h: &ScaleTimeSignal, n: usize, v: &ScaleSignal, cone: bool) -> Result<ScaleTimeSignal> {
    if v.arity() != h.arity() {
        return Err(Error::ArityMismatch {
            expected: h.arity(),
            found: v.arity(),
        });
    }
    let norm_v = v.l2_norm();
    if (norm_v - 1.0).abs() > UNIT_VECTOR_TOL {
        return Err(Error::NotUnitVector(norm_v));
    }
    let mut u = ScaleTimeSignal::zeros(h.arity(), n + 1);
    for m in 0..=n {
        let Some(hs) = h.slice(n - m) else {
            continue;
        };
        let a = adjoint_apply(hs, v, cone);
        let len = a.l2_norm();
        if len > 0.0 {
            *u.slice_mut(m).expect("slice exists") = a.scaled(Complex::new(1.0 / len, 0.0));
        }
    }
    Ok(u)
}

/// Exponents `(n, k)` of `𝓗` as a polynomial in `p + 1` angles.
fn gtf_poly(h: &ScaleTimeSignal) -> TorusPoly {
    let mut terms = Vec::new();
    for (n, k, v) in h.entries() {
        let mut e = Vec::with_capacity(h.arity() + 1);
        e.push(n as i64);
        e.extend_from_slice(k.as_slice());
        terms.push((e, *v));
    }
    TorusPoly::new(h.arity() + 1, terms).expect("consistent arity")
}

/// Input `u_m(j) = z^{−m}·z⃗^{−j}` on a `T × W^p` window: as the window
/// grows the energy ratio tends to `|𝓗(z, z⃗)|²`.
fn violating_input(h: &ScaleTimeSignal, z: Complex, zs: &[Complex]) -> Result<Option<Witness>> {
    let arity = h.arity();
    let mut width = 4usize;
    while width
        .checked_pow(arity as u32 + 1)
        .is_some_and(|n| n <= MAX_VIOLATING_ENTRIES)
    {
        let points = window_points(arity, width);
        let mut slices = Vec::with_capacity(width);
        for m in 0..width {
            let entries = points.iter().map(|k| {
                let mut value = crate::math::powi(z.conj(), m as i64);
                for (&ki, zi) in k.as_slice().iter().zip(zs) {
                    value *= crate::math::powi(zi.conj(), ki);
                }
                (k.clone(), value)
            });
            slices.push(ScaleSignal::from_entries(arity, entries)?);
        }
        let input = ScaleTimeSignal::from_slices(arity, slices)?;
        let y = double_convolve(h, &input, ScaleMode::Full)?;
        let input_energy = norm(&input, NormKind::Energy);
        let output_energy = norm(&y, NormKind::Energy);
        if output_energy > input_energy {
            return Ok(Some(Witness::ViolatingInput {
                input,
                input_energy,
                output_energy,
            }));
        }
        width *= 2;
    }
    Ok(None)
}

/// Smallest eigenvalue over `sets` Gram matrices of
/// `(1 − 𝓗(Z)𝓗(W)*)·Π_i 1/(1 − Z_i W_i*)` at random points of the polydisc.
pub fn gram_min_eigenvalue(h: &ScaleTimeSignal, sets: usize, points: usize, seed: u64) -> Result<f64> {
    if !h.is_cone_supported() {
        return Err(Error::ImpulseNotScaleCausal);
    }
    let dims = h.arity() + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min = f64::INFINITY;
    for _ in 0..sets {
        let zs: Vec<Vec<Complex>> = (0..points)
            .map(|_| {
                (0..dims)
                    .map(|_| {
                        let r = GRAM_RADIUS * sqrt(rng.random::<f64>());
                        cis(core::f64::consts::TAU * rng.random::<f64>()) * r
                    })
                    .collect()
            })
            .collect();
        let values: Vec<Complex> = zs.iter().map(|z| gtf_eval(h, z[0], &z[1..])).collect::<Result<_>>()?;
        let eig = hermitian_min_eigenvalue(points, |a, b| {
            let szego = zs[a].iter().zip(&zs[b]).fold(Complex::new(1.0, 0.0), |acc, (x, y)| {
                acc / (Complex::new(1.0, 0.0) - x * y.conj())
            });
            (Complex::new(1.0, 0.0) - values[a] * values[b].conj()) * szego
        });
        min = min.min(eig);
    }
    Ok(min)
}

/// Certified `sup |𝓗|` over the `(p+1)`-torus: pass when it is at most
/// `1 + tol`, fail with a torus point and an energy-increasing input when
/// the attained value exceeds `1 + tol`. Cone-supported systems also get
/// the Gram cross-check.
pub fn dissipativity_check(h: &ScaleTimeSignal, opts: &AnalysisOptions) -> Result<StabilityReport> {
    let poly = gtf_poly(h);
    let cert = certified_sup(core::slice::from_ref(&poly), h.arity() + 1, opts.tol, opts.budget)?;
    let threshold = 1.0 + opts.tol;
    let verdict = if cert.upper <= threshold {
        Verdict::Pass
    } else if cert.lower > threshold {
        Verdict::Fail
    } else {
        Verdict::Inconclusive
    };
    let z = cis(-cert.argmax[0]);
    let zs: Vec<Complex> = cert.argmax[1..].iter().map(|t| cis(-t)).collect();
    let mut witnesses = vec![Witness::TorusPoint {
        z,
        zs: zs.clone(),
        modulus: torus_value(core::slice::from_ref(&poly), &cert.argmax),
    }];
    if verdict == Verdict::Fail {
        if let Some(w) = violating_input(h, z, &zs)? {
            witnesses.push(w);
        }
    }
    if h.is_cone_supported() && opts.gram_sets > 0 && opts.gram_points > 0 {
        witnesses.push(Witness::Gram {
            min_eigenvalue: gram_min_eigenvalue(h, opts.gram_sets, opts.gram_points, opts.seed)?,
            sets: opts.gram_sets,
            points_per_set: opts.gram_points,
            seed: opts.seed,
        });
    }
    Ok(StabilityReport {
        property: Property::Dissipative,
        verdict,
        certified: cert.certified,
        sufficient_upper: Some(cert.upper),
        necessary_lower: Some(cert.lower),
        tol: opts.tol,
        budget: opts.budget,
        evaluations: cert.evaluations,
        witnesses,
    })
}

/// ℓ1-ℓ2 gain. The impulse response energy `Σ_n ‖h_n‖²` is attained and
/// gives the lower end; the certified `sup_θ (Σ_n |ĥ_n(θ)|²)^{1/2}` bounds
/// the output energy of any single-time input and, by the triangle
/// inequality, `‖y‖ ≤ M·Σ_m ‖u_m‖₂`.
pub fn l1l2_gain(h: &ScaleTimeSignal, opts: &AnalysisOptions) -> Result<StabilityReport> {
    let components: Vec<TorusPoly> = h.slices().iter().map(symbol_poly).collect();
    let cert = certified_sup(&components, h.arity(), opts.tol, opts.budget)?;
    let impulse = ScaleTimeSignal::impulse(h.arity());
    let output_energy = norm(&double_convolve(h, &impulse, ScaleMode::Full)?, NormKind::Energy);
    let lower = sqrt(output_energy).min(cert.upper);
    Ok(StabilityReport {
        property: Property::L1L2,
        verdict: Verdict::Pass,
        certified: cert.certified,
        sufficient_upper: Some(cert.upper),
        necessary_lower: Some(lower),
        tol: opts.tol,
        budget: opts.budget,
        evaluations: cert.evaluations,
        witnesses: vec![
            Witness::Impulse { output_energy },
            Witness::TorusArgmax {
                theta: cert.argmax,
                value: cert.lower,
            },
        ],
    })
}

/// Outcome of [`empirical_verify`].
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalReport {
    pub property: Property,
    pub trials: usize,
    pub seed: u64,
    /// The certified quantity the observed gains are compared with: the
    /// gain itself for BIBO and ℓ1-ℓ2, its square for energy ratios.
    pub bound: f64,
    pub max_gain: f64,
    pub max_ratio: f64,
    /// A pass verdict was contradicted by an observed ratio above `1 + 1e−9`.
    pub analyzer_bug: bool,
}

fn random_input(rng: &mut ChaCha8Rng, arity: usize) -> ScaleTimeSignal {
    let len = rng.random_range(1..=6);
    let points = window_points(arity, 3);
    let mut slices = Vec::with_capacity(len);
    for _ in 0..len {
        let mut entries = Vec::new();
        for k in &points {
            if rng.random::<f64>() < 0.7 {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                entries.push((k.clone(), Complex::new(re, im)));
            }
        }
        slices.push(ScaleSignal::from_entries(arity, entries).expect("finite entries"));
    }
    ScaleTimeSignal::from_slices(arity, slices).expect("consistent arity")
}

fn observed_gain(property: Property, h: &ScaleTimeSignal, u: &ScaleTimeSignal) -> Result<Option<f64>> {
    let y = double_convolve(h, u, ScaleMode::Full)?;
    let (num, den) = match property {
        Property::Bibo => (norm(&y, NormKind::SupL2), norm(u, NormKind::SupL2)),
        Property::Dissipative => (norm(&y, NormKind::Energy), norm(u, NormKind::Energy)),
        Property::L1L2 => (sqrt(norm(&y, NormKind::Energy)), norm(u, NormKind::L1L2)),
    };
    Ok((den > 0.0).then(|| num / den))
}

/// Feeds `trials` seeded complex Gaussian inputs through the system and
/// compares the observed gains with the report's certified upper bound.
pub fn empirical_verify(
    h: &ScaleTimeSignal,
    report: &StabilityReport,
    trials: usize,
    seed: u64,
) -> Result<EmpiricalReport> {
    if trials == 0 {
        return Err(Error::InvalidParameter("at least one trial is required"));
    }
    let upper = report
        .sufficient_upper
        .ok_or(Error::InvalidParameter("report carries no upper bound"))?;
    let bound = match report.property {
        Property::Dissipative => upper * upper,
        _ => upper,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_gain = 0.0f64;
    for _ in 0..trials {
        let u = random_input(&mut rng, h.arity());
        if let Some(g) = observed_gain(report.property, h, &u)? {
            max_gain = max_gain.max(g);
        }
    }
    let max_ratio = if bound > 0.0 {
        max_gain / bound
    } else if max_gain > 0.0 {
        f64::INFINITY
    } else {
        0.0
    };
    Ok(EmpiricalReport {
        property: report.property,
        trials,
        seed,
        bound,
        max_gain,
        max_ratio,
        analyzer_bug: report.verdict == Verdict::Pass && max_ratio > 1.0 + EMPIRICAL_SLACK,
    })
}

/// `Σ_n Σ_k |h_n(k)|²`.
pub fn impulse_energy(h: &ScaleTimeSignal) -> f64 {
    h.entries().map(|(_, _, v)| abs2(*v)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::SQRT_2;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn idx(k: &[i64]) -> GroupIndex {
        GroupIndex::new(k.to_vec())
    }

    fn sig(entries: &[(&[i64], f64)]) -> ScaleSignal {
        ScaleSignal::from_entries(entries[0].0.len(), entries.iter().map(|(k, v)| (idx(k), c(*v, 0.0)))).unwrap()
    }

    fn geometric(a: f64) -> ScaleTimeSignal {
        let mut h = ScaleTimeSignal::zeros(1, 0);
        let mut an = 1.0;
        while an >= 1e-16 {
            h.push(sig(&[(&[0], an)])).unwrap();
            an *= a;
        }
        h
    }

    fn opts() -> AnalysisOptions {
        AnalysisOptions::default()
    }

    #[test]
    fn operator_norm_examples() {
        let b = mult_operator_norm(&ScaleSignal::delta(idx(&[0])), false, 1e-12, DEFAULT_BUDGET).unwrap();
        assert!(b.certified && (b.lower - 1.0).abs() < 1e-15 && (b.upper - 1.0).abs() < 1e-14);
        let s = ScaleSignal::from_entries(2, [(idx(&[2, -1]), c(0.3, -0.4))]).unwrap();
        let b = mult_operator_norm(&s, false, 1e-12, DEFAULT_BUDGET).unwrap();
        assert!((b.upper - 0.5).abs() < 1e-14 && (b.lower - 0.5).abs() < 1e-14);
        let b = mult_operator_norm(&sig(&[(&[0], 1.0), (&[1], 1.0)]), true, 1e-10, DEFAULT_BUDGET).unwrap();
        assert!(b.certified && b.lower <= 2.0 + 1e-15 && b.upper >= 2.0 && b.upper <= 2.0 * (1.0 + 1e-10));
        assert_eq!(
            mult_operator_norm(&sig(&[(&[-1], 1.0)]), true, 1e-10, DEFAULT_BUDGET),
            Err(Error::ImpulseNotScaleCausal)
        );
    }

    #[test]
    fn bibo_geometric() {
        let h = geometric(0.5);
        let r = bibo_analysis(&h, false, &opts()).unwrap();
        let upper = r.sufficient_upper.unwrap();
        assert!((upper - 2.0).abs() <= 1e-10);
        assert!((r.necessary_lower.unwrap() - upper).abs() <= 1e-10);
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.certified);
    }

    #[test]
    fn bibo_scalar_reduces_to_l1() {
        let coeffs = [0.5, -0.25, 0.125, 0.3];
        let h = ScaleTimeSignal::from_slices(1, coeffs.iter().map(|x| sig(&[(&[0], *x)])).collect()).unwrap();
        let r = bibo_analysis(&h, true, &opts()).unwrap();
        let l1: f64 = coeffs.iter().map(|x| x.abs()).sum();
        assert!((r.sufficient_upper.unwrap() - l1).abs() <= 1e-12);
    }

    #[test]
    fn bibo_two_slice_bracket() {
        let h = ScaleTimeSignal::from_slices(
            1,
            vec![sig(&[(&[0], 1.0), (&[1], 1.0)]), sig(&[(&[0], 1.0), (&[1], -1.0)])],
        )
        .unwrap();
        let r = bibo_analysis(&h, false, &opts()).unwrap();
        let (lo, hi) = (r.necessary_lower.unwrap(), r.sufficient_upper.unwrap());
        assert!((hi - 4.0).abs() <= 4e-9);
        assert!(lo >= 2.0 * SQRT_2 - 1e-12 && lo <= hi);
        let Witness::UnitVector { n, v, gain, .. } = &r.witnesses[0] else {
            panic!("missing unit vector witness");
        };
        let u = adversarial_input(&h, *n, v, false).unwrap();
        let y = double_convolve(&h, &u, ScaleMode::Full).unwrap();
        let inner = y.slice(*n).unwrap().inner(v);
        assert!((inner.re - gain).abs() <= 1e-10 && inner.im.abs() <= 1e-10);
        assert!(y.slice(*n).unwrap().l2_norm() >= lo - 1e-8);
        assert!(norm(&y, NormKind::SupL2) <= hi * norm(&u, NormKind::SupL2) + 1e-9);
    }

    #[test]
    fn adversarial_scalar_case() {
        let coeffs = [0.5, -0.25, 0.0];
        let h = ScaleTimeSignal::from_slices(
            1,
            coeffs
                .iter()
                .map(|x| {
                    if *x == 0.0 {
                        ScaleSignal::new(1)
                    } else {
                        sig(&[(&[0], *x)])
                    }
                })
                .collect(),
        )
        .unwrap();
        let v = ScaleSignal::delta(idx(&[0]));
        let u = adversarial_input(&h, 2, &v, false).unwrap();
        assert!(u.slice(0).unwrap().is_empty());
        assert_eq!(u.get(1, &idx(&[0])), c(-1.0, 0.0));
        assert_eq!(u.get(2, &idx(&[0])), c(1.0, 0.0));
        let y = double_convolve(&h, &u, ScaleMode::Full).unwrap();
        assert!((y.get(2, &idx(&[0])).re - 0.75).abs() < 1e-15);
        let zero = ScaleTimeSignal::zeros(1, 3);
        assert!(adversarial_input(&zero, 2, &v, false)
            .unwrap()
            .entries()
            .next()
            .is_none());
        let not_unit = v.scaled(c(2.0, 0.0));
        assert!(matches!(
            adversarial_input(&h, 1, &not_unit, false),
            Err(Error::NotUnitVector(_))
        ));
    }

    #[test]
    fn dissipative_constant() {
        let h = ScaleTimeSignal::from_slices(1, vec![sig(&[(&[0], 0.9)])]).unwrap();
        let r = dissipativity_check(&h, &opts()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!((r.sufficient_upper.unwrap() - 0.9).abs() <= 1e-10);
        let gram = r.witnesses.iter().find_map(|w| match w {
            Witness::Gram { min_eigenvalue, .. } => Some(*min_eigenvalue),
            _ => None,
        });
        assert!(gram.unwrap() >= -1e-9);
        let e = empirical_verify(&h, &r, 20, 3).unwrap();
        assert!(e.max_gain <= 0.81 + 1e-9 && !e.analyzer_bug);
    }

    #[test]
    fn dissipative_fail_with_witness() {
        let h = ScaleTimeSignal::from_slices(1, vec![sig(&[(&[0], 1.0)]), sig(&[(&[0], 1.0)])]).unwrap();
        let r = dissipativity_check(&h, &opts()).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!((r.sufficient_upper.unwrap() - 2.0).abs() <= 1e-8);
        let Witness::TorusPoint { z, modulus, .. } = &r.witnesses[0] else {
            panic!("missing torus point");
        };
        assert!((z - c(1.0, 0.0)).norm() < 1e-4 && *modulus > 1.0);
        let violating = r.witnesses.iter().any(|w| {
            matches!(w,
            Witness::ViolatingInput { input_energy, output_energy, .. } if output_energy > input_energy)
        });
        assert!(violating);
    }

    #[test]
    fn dissipative_unimodular_product() {
        let h = ScaleTimeSignal::from_slices(1, vec![ScaleSignal::new(1), sig(&[(&[1], 1.0)])]).unwrap();
        let r = dissipativity_check(&h, &opts()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!((r.sufficient_upper.unwrap() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn dissipative_sup_is_homogeneous() {
        let h = ScaleTimeSignal::from_slices(1, vec![sig(&[(&[0], 0.4), (&[2], -0.3)]), sig(&[(&[1], 0.5)])]).unwrap();
        let base = dissipativity_check(&h, &opts()).unwrap();
        let scaled = dissipativity_check(&h.scaled(c(0.3, 0.0)), &opts()).unwrap();
        let (a, b) = (base.sufficient_upper.unwrap(), scaled.sufficient_upper.unwrap());
        assert!((b - 0.3 * a).abs() <= 1e-12);
    }

    #[test]
    fn l1l2_geometric() {
        let h = geometric(0.6);
        let r = l1l2_gain(&h, &opts()).unwrap();
        assert!((r.sufficient_upper.unwrap() - 1.25).abs() <= 1e-10);
        assert!((r.necessary_lower.unwrap() - 1.25).abs() <= 1e-10);
        let Witness::Impulse { output_energy } = r.witnesses[0] else {
            panic!("missing impulse witness");
        };
        assert!((output_energy - 1.5625).abs() <= 1e-10);
        let e = empirical_verify(&h, &r, 50, 9).unwrap();
        assert!(e.max_ratio <= 1.0 + 1e-9);
    }

    #[test]
    fn l1l2_impulse_only() {
        let r = l1l2_gain(&ScaleTimeSignal::impulse(2), &opts()).unwrap();
        assert!((r.sufficient_upper.unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(impulse_energy(&ScaleTimeSignal::impulse(2)), 1.0);
    }

    #[test]
    fn bibo_empirical_within_bound() {
        let h = geometric(0.5);
        let r = bibo_analysis(&h, false, &opts()).unwrap();
        let e = empirical_verify(&h, &r, 50, 1).unwrap();
        assert!(e.max_gain <= 2.0 + 1e-9 && !e.analyzer_bug);
    }
}
