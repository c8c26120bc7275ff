//! Fourier analysis on `ℤ^p` via uniform torus grids, transfer functions,
//! the Hermite transform and Haar moments.
//!
//! Conventions: `x̂(θ) = Σ_k x(k)·e^{−ik·θ}` on the grid `θ_j = 2πj/L`, and
//! the Hermite transform sends `δ_k` to `z^k` with no conjugation. Together
//! these give `I(x)(e^{iθ}) = x̂(−θ)` and `𝓗(z, e^{−iθ}) = H(z, θ)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{GroupIndex, ScaleGroup};
use crate::math::{abs2, is_finite, powi, root_of_unity};
use crate::signal::{ScaleSignal, ScaleTimeSignal};
use crate::Complex;

/// Slack allowed when deciding whether a point lies on the unit circle or
/// inside the closed disc.
pub const UNIT_TOL: f64 = 1e-12;

/// Samples of a function on the product grid `θ_j = 2π·j/L` of `𝕋^p`,
/// stored row-major (last axis fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumGrid {
    grid_sizes: Vec<usize>,
    values: Vec<Complex>,
}

impl SpectrumGrid {
    pub fn new(grid_sizes: Vec<usize>, values: Vec<Complex>) -> Result<Self> {
        let count = grid_count(&grid_sizes)?;
        if values.len() != count {
            return Err(Error::InvalidParameter(
                "value count must equal the product of grid sizes",
            ));
        }
        if !values.iter().all(|v| is_finite(*v)) {
            return Err(Error::NonFinite("spectrum values"));
        }
        Ok(Self { grid_sizes, values })
    }

    pub fn constant(grid_sizes: Vec<usize>, value: Complex) -> Result<Self> {
        let count = grid_count(&grid_sizes)?;
        Ok(Self {
            grid_sizes,
            values: vec![value; count],
        })
    }

    pub fn grid_sizes(&self) -> &[usize] {
        &self.grid_sizes
    }

    pub fn values(&self) -> &[Complex] {
        &self.values
    }

    pub fn arity(&self) -> usize {
        self.grid_sizes.len()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Grid multi-index of the flat position `flat`.
    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut j = vec![0; self.grid_sizes.len()];
        for (axis, &l) in self.grid_sizes.iter().enumerate().rev() {
            j[axis] = flat % l;
            flat /= l;
        }
        j
    }

    /// Flat position of the grid multi-index `j`.
    pub fn flat_index(&self, j: &[usize]) -> usize {
        j.iter()
            .zip(&self.grid_sizes)
            .fold(0, |acc, (&ji, &l)| acc * l + ji % l)
    }

    /// Angles `θ` of the flat position `flat`.
    pub fn theta(&self, flat: usize) -> Vec<f64> {
        self.multi_index(flat)
            .iter()
            .zip(&self.grid_sizes)
            .map(|(&j, &l)| core::f64::consts::TAU * j as f64 / l as f64)
            .collect()
    }

    pub fn get(&self, j: &[usize]) -> Complex {
        self.values[self.flat_index(j)]
    }

    /// Mean of `|value|²` over the grid (the discrete Haar integral).
    pub fn mean_abs2(&self) -> f64 {
        self.values.iter().map(|v| abs2(*v)).sum::<f64>() / self.values.len() as f64
    }

    /// Flat position and value of the largest modulus.
    pub fn max_abs(&self) -> (usize, f64) {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| (i, v.norm()))
            .fold(
                (0, f64::NEG_INFINITY),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            )
    }

    pub fn max_abs_diff(&self, other: &SpectrumGrid) -> f64 {
        if self.grid_sizes != other.grid_sizes {
            return f64::INFINITY;
        }
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Pointwise product with a grid of the same shape.
    pub fn mul(&self, other: &SpectrumGrid) -> Result<SpectrumGrid> {
        if self.grid_sizes != other.grid_sizes {
            return Err(Error::InvalidParameter("grid shapes differ"));
        }
        Ok(Self {
            grid_sizes: self.grid_sizes.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        })
    }
}

fn grid_count(sizes: &[usize]) -> Result<usize> {
    if sizes.contains(&0) {
        return Err(Error::InvalidParameter("grid sizes must be at least 1"));
    }
    sizes
        .iter()
        .try_fold(1usize, |acc, &l| acc.checked_mul(l))
        .ok_or(Error::InvalidParameter("grid too large"))
}

/// Applies along every axis `out[s] = Σ_t in[t]·w^{kin(t)·kout(s)}` with
/// `w = e^{sign·2πi/L}`; the offsets shift `kin` (forward) or `kout`
/// (inverse) so that sample `t` sits at integer position `offset + t`.
fn dft_all_axes(data: &mut [Complex], shape: &[usize], offsets: &[i64], sign: i128, inverse: bool) {
    let mut scratch_in = Vec::new();
    let mut scratch_out = Vec::new();
    for axis in 0..shape.len() {
        let l = shape[axis];
        if l == 1 {
            continue;
        }
        let table: Vec<Complex> = (0..l as i128).map(|t| root_of_unity(sign * t, l)).collect();
        let shifted: Vec<u64> = (0..l)
            .map(|t| (offsets[axis] as i128 + t as i128).rem_euclid(l as i128) as u64)
            .collect();
        let plain: Vec<u64> = (0..l as u64).collect();
        let (kin, kout) = if inverse {
            (&plain, &shifted)
        } else {
            (&shifted, &plain)
        };
        let stride: usize = shape[axis + 1..].iter().product();
        let outer: usize = shape[..axis].iter().product();
        scratch_in.resize(l, Complex::new(0.0, 0.0));
        scratch_out.resize(l, Complex::new(0.0, 0.0));
        for o in 0..outer {
            for r in 0..stride {
                let base = o * l * stride + r;
                for t in 0..l {
                    scratch_in[t] = data[base + t * stride];
                }
                for s in 0..l {
                    let mut acc = Complex::new(0.0, 0.0);
                    for t in 0..l {
                        acc += scratch_in[t] * table[((kin[t] * kout[s]) % l as u64) as usize];
                    }
                    scratch_out[s] = acc;
                }
                for s in 0..l {
                    data[base + s * stride] = scratch_out[s];
                }
            }
        }
    }
}

/// Forward transform of `x` whose support lies in the window
/// `[lo, lo + sizes)`; no checks.
pub(crate) fn forward_in_window(x: &ScaleSignal, lo: &[i64], sizes: &[usize]) -> SpectrumGrid {
    let count: usize = sizes.iter().product();
    let mut data = vec![Complex::new(0.0, 0.0); count];
    for (k, v) in x.iter() {
        let flat = k
            .as_slice()
            .iter()
            .zip(lo)
            .zip(sizes)
            .fold(0usize, |acc, ((&ki, &li), &l)| acc * l + (ki - li) as usize);
        data[flat] = *v;
    }
    dft_all_axes(&mut data, sizes, lo, -1, false);
    SpectrumGrid {
        grid_sizes: sizes.to_vec(),
        values: data,
    }
}

/// Quadrature inverse onto the window `[lo, lo + sizes)`, keeping every
/// nonzero sample.
pub(crate) fn inverse_in_window(grid: &SpectrumGrid, lo: &[i64]) -> ScaleSignal {
    let mut data = grid.values.clone();
    dft_all_axes(&mut data, &grid.grid_sizes, lo, 1, true);
    let scale = 1.0 / data.len() as f64;
    let mut out = ScaleSignal::new(grid.arity());
    for (flat, v) in data.into_iter().enumerate() {
        let k: Vec<i64> = grid
            .multi_index(flat)
            .iter()
            .zip(lo)
            .map(|(&j, &l)| l + j as i64)
            .collect();
        out.accumulate(GroupIndex::new(k), v * scale);
    }
    out.drop_zeros();
    out
}

fn check_window(arity: usize, grid_sizes: &[usize], bbox: Option<&(Vec<i64>, Vec<i64>)>) -> Result<Vec<i64>> {
    if grid_sizes.len() != arity {
        return Err(Error::ArityMismatch {
            expected: arity,
            found: grid_sizes.len(),
        });
    }
    grid_count(grid_sizes)?;
    match bbox {
        None => Ok(vec![0; arity]),
        Some((lo, hi)) => {
            for axis in 0..arity {
                let width = (hi[axis] - lo[axis]) as usize + 1;
                if width > grid_sizes[axis] {
                    return Err(Error::Aliasing {
                        axis,
                        width,
                        grid: grid_sizes[axis],
                    });
                }
            }
            Ok(lo.clone())
        }
    }
}

/// `x̂` on the grid. Each grid size must be at least the support width on
/// its axis.
pub fn gamma_fourier_forward(x: &ScaleSignal, grid_sizes: &[usize]) -> Result<SpectrumGrid> {
    let lo = check_window(x.arity(), grid_sizes, x.bounding_box().as_ref())?;
    Ok(forward_in_window(x, &lo, grid_sizes))
}

/// Recovers the signal supported in `[lo, lo + grid_sizes)` from its grid
/// samples, with quadrature weight `1/Π L_i`.
pub fn gamma_fourier_inverse(grid: &SpectrumGrid, lo: &[i64]) -> Result<ScaleSignal> {
    if lo.len() != grid.arity() {
        return Err(Error::ArityMismatch {
            expected: grid.arity(),
            found: lo.len(),
        });
    }
    Ok(inverse_in_window(grid, lo))
}

/// `x̂(θ)` at one arbitrary point of the torus.
pub fn symbol_at(x: &ScaleSignal, theta: &[f64]) -> Complex {
    x.iter()
        .map(|(k, v)| {
            let phase: f64 = k.as_slice().iter().zip(theta).map(|(&ki, &t)| ki as f64 * t).sum();
            v * crate::math::cis(-phase)
        })
        .sum()
}

/// `H(z, θ) = Σ_n zⁿ·ĥ_n(θ)` on the grid.
pub fn transfer_eval(h: &ScaleTimeSignal, z: Complex, grid_sizes: &[usize]) -> Result<SpectrumGrid> {
    check_closed_disc(z)?;
    let lo = check_window(h.arity(), grid_sizes, h.bounding_box().as_ref())?;
    let mut acc = SpectrumGrid::constant(grid_sizes.to_vec(), Complex::new(0.0, 0.0))?;
    for slice in h.slices().iter().rev() {
        let hat = forward_in_window(slice, &lo, grid_sizes);
        for (a, b) in acc.values.iter_mut().zip(&hat.values) {
            *a = *a * z + b;
        }
    }
    Ok(acc)
}

fn check_closed_disc(z: Complex) -> Result<()> {
    if !is_finite(z) {
        return Err(Error::NonFinite("evaluation point"));
    }
    if z.norm() > 1.0 + UNIT_TOL {
        return Err(Error::OutsideDisc(z.norm()));
    }
    Ok(())
}

/// A Laurent polynomial in `z_1 … z_p`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPoly {
    arity: usize,
    terms: BTreeMap<GroupIndex, Complex>,
}

impl LaurentPoly {
    pub fn new(arity: usize) -> Self {
        Self {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coeff(&self, k: &GroupIndex) -> Complex {
        self.terms.get(k).copied().unwrap_or(Complex::new(0.0, 0.0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupIndex, &Complex)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether some term has a negative exponent on `axis`.
    pub fn has_negative_exponent(&self, axis: usize) -> bool {
        self.terms.keys().any(|k| k.as_slice()[axis] < 0)
    }

    /// Evaluates at `(z_1 … z_p)`. Points must lie in the closed polydisc,
    /// and on the circle along every axis that carries negative exponents.
    pub fn eval(&self, zs: &[Complex]) -> Result<Complex> {
        if zs.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: zs.len(),
            });
        }
        for (axis, z) in zs.iter().enumerate() {
            check_closed_disc(*z)?;
            if self.has_negative_exponent(axis) && (z.norm() - 1.0).abs() > UNIT_TOL {
                return Err(Error::LaurentRequiresTorus);
            }
        }
        Ok(self.eval_unchecked(zs))
    }

    pub(crate) fn eval_unchecked(&self, zs: &[Complex]) -> Complex {
        self.terms
            .iter()
            .map(|(k, v)| k.as_slice().iter().zip(zs).fold(*v, |acc, (&e, z)| acc * powi(*z, e)))
            .sum()
    }

    /// Polynomial product.
    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        let mut terms = BTreeMap::new();
        for (j, a) in &self.terms {
            for (k, b) in &other.terms {
                *terms.entry(j + k).or_insert(Complex::new(0.0, 0.0)) += a * b;
            }
        }
        terms.retain(|_, v| *v != Complex::new(0.0, 0.0));
        Ok(Self {
            arity: self.arity,
            terms,
        })
    }

    /// Largest coefficientwise difference over the union of supports.
    pub fn max_abs_diff(&self, other: &LaurentPoly) -> f64 {
        let a = self.terms.iter().map(|(k, v)| (v - other.coeff(k)).norm());
        let b = other.terms.iter().map(|(k, v)| (v - self.coeff(k)).norm());
        a.chain(b).fold(0.0, f64::max)
    }
}

/// Reads the group coefficients of `x` as Laurent coefficients: `δ_k ↦ z^k`.
pub fn hermite_transform(x: &ScaleSignal) -> LaurentPoly {
    LaurentPoly {
        arity: x.arity(),
        terms: x.iter().map(|(k, v)| (k.clone(), *v)).collect(),
    }
}

/// `𝓗(z, z⃗) = Σ_n zⁿ·Σ_k h_n(k)·z⃗^k`.
pub fn gtf_eval(h: &ScaleTimeSignal, z: Complex, zs: &[Complex]) -> Result<Complex> {
    check_closed_disc(z)?;
    if zs.len() != h.arity() {
        return Err(Error::ArityMismatch {
            expected: h.arity(),
            found: zs.len(),
        });
    }
    let mut acc = Complex::new(0.0, 0.0);
    for slice in h.slices().iter().rev() {
        acc = acc * z + hermite_transform(slice).eval(zs)?;
    }
    Ok(acc)
}

/// `∫ σ(γ^idx) dμ̂` for the normalized Haar measure of the dual torus.
pub fn haar_moments(g: &ScaleGroup, idx: &GroupIndex) -> Result<Complex> {
    if idx.arity() != g.arity() {
        return Err(Error::ArityMismatch {
            expected: g.arity(),
            found: idx.arity(),
        });
    }
    Ok(if idx.is_zero() {
        Complex::new(1.0, 0.0)
    } else {
        Complex::new(0.0, 0.0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;
    use crate::math::cis;
    use crate::moebius::make_scale_shift;
    use core::f64::consts::TAU;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn idx(k: &[i64]) -> GroupIndex {
        GroupIndex::new(k.to_vec())
    }

    fn random_signal(rng: &mut ChaCha8Rng, arity: usize, span: i64, count: usize) -> ScaleSignal {
        let mut s = ScaleSignal::new(arity);
        for _ in 0..count {
            let k: Vec<i64> = (0..arity).map(|_| rng.random_range(-span..=span)).collect();
            s.set(
                GroupIndex::new(k),
                c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
            )
            .unwrap();
        }
        s
    }

    #[test]
    fn forward_examples() {
        let g = gamma_fourier_forward(&ScaleSignal::delta(idx(&[0, 0])), &[3, 4]).unwrap();
        assert!(g.values().iter().all(|v| (v - c(1.0, 0.0)).norm() < 1e-15));
        let g = gamma_fourier_forward(&ScaleSignal::delta(idx(&[1])), &[8]).unwrap();
        for j in 0..8 {
            let expected = cis(-TAU * j as f64 / 8.0);
            assert!((g.get(&[j]) - expected).norm() < 1e-15);
        }
    }

    #[test]
    fn aliasing_names_the_axis() {
        let s = ScaleSignal::from_entries(2, [(idx(&[0, 0]), c(1.0, 0.0)), (idx(&[0, 5]), c(1.0, 0.0))]).unwrap();
        assert_eq!(
            gamma_fourier_forward(&s, &[1, 4]),
            Err(Error::Aliasing {
                axis: 1,
                width: 6,
                grid: 4
            })
        );
        assert!(gamma_fourier_forward(&s, &[1, 6]).is_ok());
        assert!(gamma_fourier_forward(&s, &[6]).is_err());
    }

    #[test]
    fn forward_matches_pointwise_symbol() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = random_signal(&mut rng, 2, 4, 12);
        let g = gamma_fourier_forward(&x, &[9, 11]).unwrap();
        for flat in 0..g.len() {
            let direct = symbol_at(&x, &g.theta(flat));
            assert!((g.values()[flat] - direct).norm() < 1e-13);
        }
    }

    #[test]
    fn plancherel_and_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for arity in 1..=2 {
            for _ in 0..20 {
                let x = random_signal(&mut rng, arity, 6, 15);
                let sizes = vec![13; arity];
                let g = gamma_fourier_forward(&x, &sizes).unwrap();
                let energy = x.l2_norm().powi(2);
                assert!((g.mean_abs2() - energy).abs() <= 1e-12);
                let (lo, _) = x.bounding_box().unwrap();
                let back = gamma_fourier_inverse(&g, &lo).unwrap();
                assert!(back.max_abs_diff(&x) <= 1e-13);
            }
        }
    }

    #[test]
    fn transfer_examples() {
        let mut h = ScaleTimeSignal::zeros(1, 0);
        let mut an = 1.0;
        while an >= 1e-16 {
            h.push(ScaleSignal::from_entries(1, [(idx(&[0]), c(an, 0.0))]).unwrap())
                .unwrap();
            an *= 0.5;
        }
        let z = c(0.3, -0.4);
        let g = transfer_eval(&h, z, &[5]).unwrap();
        let expected = (c(1.0, 0.0) - z * 0.5).inv();
        assert!(g.values().iter().all(|v| (v - expected).norm() < 1e-12));

        let single = ScaleTimeSignal::from_slices(1, vec![ScaleSignal::delta(idx(&[1]))]).unwrap();
        let g = transfer_eval(&single, c(0.1, 0.0), &[6]).unwrap();
        for j in 0..6 {
            assert!((g.get(&[j]) - cis(-TAU * j as f64 / 6.0)).norm() < 1e-15);
        }
        assert!(matches!(
            transfer_eval(&single, c(1.5, 0.0), &[6]),
            Err(Error::OutsideDisc(_))
        ));
    }

    #[test]
    fn hermite_examples() {
        let one = hermite_transform(&ScaleSignal::delta(idx(&[0])));
        assert_eq!(one.eval(&[c(0.3, 0.2)]).unwrap(), c(1.0, 0.0));
        let mono = hermite_transform(&ScaleSignal::delta(idx(&[3])));
        let z = c(0.5, 0.5);
        assert!((mono.eval(&[z]).unwrap() - z * z * z).norm() < 1e-15);
        let laurent = hermite_transform(&ScaleSignal::delta(idx(&[-1])));
        assert_eq!(laurent.eval(&[c(0.5, 0.0)]), Err(Error::LaurentRequiresTorus));
        let w = cis(0.7);
        assert!((laurent.eval(&[w]).unwrap() - w.conj()).norm() < 1e-15);
        assert!(matches!(mono.eval(&[c(2.0, 0.0)]), Err(Error::OutsideDisc(_))));
    }

    #[test]
    fn torus_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let x = random_signal(&mut rng, 2, 3, 8);
            let theta = [rng.random::<f64>() * TAU, rng.random::<f64>() * TAU];
            let i = hermite_transform(&x).eval(&[cis(theta[0]), cis(theta[1])]).unwrap();
            let neg = symbol_at(&x, &[-theta[0], -theta[1]]);
            assert!((i - neg).norm() < 1e-13);
            let conj_signal = ScaleSignal::from_entries(2, x.iter().map(|(k, v)| (k.clone(), v.conj()))).unwrap();
            let ic = hermite_transform(&conj_signal)
                .eval(&[cis(theta[0]), cis(theta[1])])
                .unwrap();
            assert!((ic - symbol_at(&x, &theta).conj()).norm() < 1e-13);
        }
    }

    #[test]
    fn gtf_examples() {
        let trivial = ScaleTimeSignal::impulse(1);
        assert_eq!(gtf_eval(&trivial, c(0.5, 0.1), &[c(0.2, 0.0)]).unwrap(), c(1.0, 0.0));
        let two = ScaleTimeSignal::from_slices(1, vec![ScaleSignal::delta(idx(&[1])), ScaleSignal::delta(idx(&[0]))])
            .unwrap();
        let (z, z1) = (c(0.3, 0.1), c(-0.2, 0.6));
        assert!((gtf_eval(&two, z, &[z1]).unwrap() - (z1 + z)).norm() < 1e-15);
        assert!(gtf_eval(&two, z, &[z1, z1]).is_err());
    }

    #[test]
    fn gtf_matches_transfer_at_reflected_angles() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let slices: Vec<ScaleSignal> = (0..4).map(|_| random_signal(&mut rng, 2, 2, 6)).collect();
        let h = ScaleTimeSignal::from_slices(2, slices).unwrap();
        let z = c(0.4, 0.3);
        let grid = transfer_eval(&h, z, &[5, 7]).unwrap();
        for flat in 0..grid.len() {
            let th = grid.theta(flat);
            let g = gtf_eval(&h, z, &[cis(-th[0]), cis(-th[1])]).unwrap();
            assert!((g - grid.values()[flat]).norm() < 1e-12);
        }
    }

    #[test]
    fn haar_moment_examples() {
        let g = make_group(vec![make_scale_shift(0.5, 0.0).unwrap()]).unwrap();
        assert_eq!(haar_moments(&g, &idx(&[0])).unwrap(), c(1.0, 0.0));
        assert_eq!(haar_moments(&g, &idx(&[3])).unwrap(), c(0.0, 0.0));
        let quad: Complex = (0..64).map(|j| cis(3.0 * TAU * j as f64 / 64.0)).sum::<Complex>() / 64.0;
        assert!(quad.norm() < 1e-15);
        assert!(haar_moments(&g, &idx(&[0, 0])).is_err());
    }

    #[test]
    fn hermite_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let f = random_signal(&mut rng, 1, 5, 6);
        let g = random_signal(&mut rng, 1, 5, 6);
        let prod = hermite_transform(&f).mul(&hermite_transform(&g)).unwrap();
        let mut conv = ScaleSignal::new(1);
        for (j, a) in f.iter() {
            for (k, b) in g.iter() {
                conv.add(j + k, a * b).unwrap();
            }
        }
        assert!(prod.max_abs_diff(&hermite_transform(&conv)) <= 1e-13);
    }
}
