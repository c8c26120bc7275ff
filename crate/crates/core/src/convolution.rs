//! Convolution on `ℤ^p` and the time-causal double convolution
//! `y_n = Σ_{m=0}^{n} h_{n−m} ⋆ u_m`.
//!
//! Supports grow; nothing is ever wrapped circularly. Outputs have
//! `T_h + T_u − 1` slices, the full extent of the time convolution.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::GroupIndex;
use crate::signal::{ScaleSignal, ScaleTimeSignal};
use crate::spectral::{forward_in_window, inverse_in_window, SpectrumGrid};
use crate::Complex;

/// Work limit (number of multiply-adds) for the brute-force oracle.
pub const BRUTE_FORCE_WORK_GUARD: u128 = 100_000_000;

/// Whether the scale side of [`double_convolve`] is restricted to the cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleMode {
    Full,
    CausalCone,
}

/// `(h ⋆ u)(k) = Σ_j h(k − j)·u(j)`.
pub fn group_convolve(h: &ScaleSignal, u: &ScaleSignal) -> Result<ScaleSignal> {
    check_arity(h.arity(), u.arity())?;
    let mut out = ScaleSignal::new(h.arity());
    accumulate_product(&mut out, h, u);
    out.drop_zeros();
    Ok(out)
}

fn accumulate_product(out: &mut ScaleSignal, h: &ScaleSignal, u: &ScaleSignal) {
    for (j, a) in h.iter() {
        for (k, b) in u.iter() {
            out.accumulate(j + k, a * b);
        }
    }
}

fn check_arity(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::ArityMismatch { expected, found });
    }
    Ok(())
}

fn output_len(h: &ScaleTimeSignal, u: &ScaleTimeSignal) -> usize {
    if h.is_empty() || u.is_empty() {
        0
    } else {
        h.len() + u.len() - 1
    }
}

fn check_mode(h: &ScaleTimeSignal, u: &ScaleTimeSignal, mode: ScaleMode) -> Result<()> {
    check_arity(h.arity(), u.arity())?;
    if mode == ScaleMode::CausalCone {
        if !h.is_cone_supported() {
            return Err(Error::ImpulseNotScaleCausal);
        }
        if !u.is_cone_supported() {
            return Err(Error::InputNotScaleCausal);
        }
    }
    Ok(())
}

/// Reference double convolution by direct summation in lexicographic order.
pub fn double_convolve(h: &ScaleTimeSignal, u: &ScaleTimeSignal, mode: ScaleMode) -> Result<ScaleTimeSignal> {
    check_mode(h, u, mode)?;
    let len = output_len(h, u);
    let mut y = ScaleTimeSignal::zeros(h.arity(), len);
    for n in 0..len {
        let out = y.slice_mut(n).expect("slice exists");
        for m in n.saturating_sub(h.len() - 1)..=n.min(u.len() - 1) {
            accumulate_product(out, &h.slices()[n - m], &u.slices()[m]);
        }
        out.drop_zeros();
    }
    if mode == ScaleMode::CausalCone {
        assert!(y.is_cone_supported(), "orthant is closed under addition");
    }
    Ok(y)
}

/// Double convolution through torus-grid transforms: every slice is
/// transformed on a grid just large enough to hold the output support, the
/// time convolution runs pointwise on the grid, and the result is inverted.
/// Samples below the rounding floor are dropped.
pub fn double_convolve_fast(h: &ScaleTimeSignal, u: &ScaleTimeSignal, mode: ScaleMode) -> Result<ScaleTimeSignal> {
    check_mode(h, u, mode)?;
    let len = output_len(h, u);
    let arity = h.arity();
    let (Some((hlo, hhi)), Some((ulo, uhi))) = (h.bounding_box(), u.bounding_box()) else {
        return Ok(ScaleTimeSignal::zeros(arity, len));
    };
    let sizes: Vec<usize> = (0..arity)
        .map(|i| ((hhi[i] - hlo[i]) + (uhi[i] - ulo[i]) + 1) as usize)
        .collect();
    let ylo: Vec<i64> = hlo.iter().zip(&ulo).map(|(a, b)| a + b).collect();
    let hh: Vec<SpectrumGrid> = h.slices().iter().map(|s| forward_in_window(s, &hlo, &sizes)).collect();
    let uh: Vec<SpectrumGrid> = u.slices().iter().map(|s| forward_in_window(s, &ulo, &sizes)).collect();
    let floor = 64.0 * f64::EPSILON * l1(h) * l1(u);
    let count = hh[0].len();
    let mut slices = Vec::with_capacity(len);
    for n in 0..len {
        let mut acc = vec![Complex::new(0.0, 0.0); count];
        for m in n.saturating_sub(h.len() - 1)..=n.min(u.len() - 1) {
            for ((a, x), y) in acc.iter_mut().zip(hh[n - m].values()).zip(uh[m].values()) {
                *a += x * y;
            }
        }
        let grid = SpectrumGrid::new(sizes.clone(), acc)?;
        slices.push(inverse_in_window(&grid, &ylo).pruned(floor));
    }
    ScaleTimeSignal::from_slices(arity, slices)
}

fn l1(s: &ScaleTimeSignal) -> f64 {
    s.slices().iter().map(ScaleSignal::l1_norm).sum()
}

/// Transcription of the defining sum as a gather over every output index of
/// the bounding box: `y_n(k) = Σ_m Σ_j h_{n−m}(k − j)·u_m(j)`.
pub fn brute_force_double_convolve(h: &ScaleTimeSignal, u: &ScaleTimeSignal) -> Result<ScaleTimeSignal> {
    check_arity(h.arity(), u.arity())?;
    let len = output_len(h, u);
    let arity = h.arity();
    let (Some((hlo, hhi)), Some((ulo, uhi))) = (h.bounding_box(), u.bounding_box()) else {
        return Ok(ScaleTimeSignal::zeros(arity, len));
    };
    let ylo: Vec<i64> = hlo.iter().zip(&ulo).map(|(a, b)| a + b).collect();
    let yhi: Vec<i64> = hhi.iter().zip(&uhi).map(|(a, b)| a + b).collect();
    let ybox = box_points(&ylo, &yhi);
    let ubox = box_points(&ulo, &uhi);
    let work = (len as u128) * (u.len() as u128) * (ybox.len() as u128) * (ubox.len() as u128);
    if work > BRUTE_FORCE_WORK_GUARD {
        return Err(Error::WorkGuard { work });
    }
    let mut y = ScaleTimeSignal::zeros(arity, len);
    for n in 0..len {
        let out = y.slice_mut(n).expect("slice exists");
        for m in 0..=n {
            let (Some(hs), Some(us)) = (h.slice(n - m), u.slice(m)) else {
                continue;
            };
            for k in &ybox {
                for j in &ubox {
                    let a = hs.get(&(k - j));
                    let b = us.get(j);
                    out.accumulate(k.clone(), a * b);
                }
            }
        }
        out.drop_zeros();
    }
    Ok(y)
}

fn box_points(lo: &[i64], hi: &[i64]) -> Vec<GroupIndex> {
    let mut points = vec![Vec::new()];
    for axis in 0..lo.len() {
        points = points
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (lo[axis]..=hi[axis]).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    points.into_iter().map(GroupIndex::new).collect()
}

/// Two-sided-in-time wrapper: slice `i` of `h` sits at time `h_origin + i`
/// and likewise for `u`. Returns the output and the time of its slice 0.
pub fn double_convolve_two_sided(
    h: &ScaleTimeSignal,
    h_origin: i64,
    u: &ScaleTimeSignal,
    u_origin: i64,
    mode: ScaleMode,
) -> Result<(ScaleTimeSignal, i64)> {
    Ok((double_convolve(h, u, mode)?, h_origin + u_origin))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn idx(k: &[i64]) -> GroupIndex {
        GroupIndex::new(k.to_vec())
    }

    fn random_signal(rng: &mut ChaCha8Rng, arity: usize, lo: i64, hi: i64, count: usize) -> ScaleSignal {
        let mut s = ScaleSignal::new(arity);
        for _ in 0..count {
            let k: Vec<i64> = (0..arity).map(|_| rng.random_range(lo..=hi)).collect();
            s.set(
                GroupIndex::new(k),
                c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
            )
            .unwrap();
        }
        s
    }

    fn random_system(rng: &mut ChaCha8Rng, arity: usize, lo: i64, hi: i64) -> ScaleTimeSignal {
        let t = rng.random_range(1..=6);
        let slices = (0..t).map(|_| random_signal(rng, arity, lo, hi, 5)).collect();
        ScaleTimeSignal::from_slices(arity, slices).unwrap()
    }

    #[test]
    fn group_convolution_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = random_signal(&mut rng, 2, -3, 3, 10);
        assert_eq!(group_convolve(&ScaleSignal::delta(idx(&[0, 0])), &u).unwrap(), u);
        let prod = group_convolve(&ScaleSignal::delta(idx(&[2, -1])), &ScaleSignal::delta(idx(&[-5, 4]))).unwrap();
        assert_eq!(prod, ScaleSignal::delta(idx(&[-3, 3])));
        assert!(group_convolve(&ScaleSignal::delta(idx(&[0])), &u).is_err());
    }

    #[test]
    fn identity_and_delay() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let u = random_system(&mut rng, 1, -2, 4);
        let id = ScaleTimeSignal::impulse(1);
        assert_eq!(double_convolve(&id, &u, ScaleMode::Full).unwrap(), u);
        let delay = ScaleTimeSignal::from_slices(1, vec![ScaleSignal::new(1), ScaleSignal::delta(idx(&[0]))]).unwrap();
        let y = double_convolve(&delay, &u, ScaleMode::Full).unwrap();
        assert!(y.slice(0).unwrap().is_empty());
        for n in 0..u.len() {
            assert_eq!(y.slice(n + 1).unwrap(), u.slice(n).unwrap());
        }
    }

    #[test]
    fn causal_mode_rejects_off_cone_support() {
        let h = ScaleTimeSignal::from_slices(1, vec![ScaleSignal::delta(idx(&[-1]))]).unwrap();
        let u = ScaleTimeSignal::impulse(1);
        assert_eq!(
            double_convolve(&h, &u, ScaleMode::CausalCone),
            Err(Error::ImpulseNotScaleCausal)
        );
        assert_eq!(
            double_convolve(&u, &h, ScaleMode::CausalCone),
            Err(Error::InputNotScaleCausal)
        );
        assert!(double_convolve(&h, &u, ScaleMode::Full).is_ok());
    }

    #[test]
    fn agrees_with_oracle_and_fast_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for i in 0..30 {
            let arity = 1 + i % 2;
            let h = random_system(&mut rng, arity, -4, 4);
            let u = random_system(&mut rng, arity, -4, 4);
            let reference = double_convolve(&h, &u, ScaleMode::Full).unwrap();
            let oracle = brute_force_double_convolve(&h, &u).unwrap();
            assert!(reference.max_abs_diff(&oracle) <= 1e-12);
            let fast = double_convolve_fast(&h, &u, ScaleMode::Full).unwrap();
            assert!(reference.max_abs_diff(&fast) <= 1e-10);
            assert_eq!(reference.len(), h.len() + u.len() - 1);
        }
    }

    #[test]
    fn oracle_edge_cases() {
        let zero = ScaleTimeSignal::zeros(1, 3);
        let h = ScaleTimeSignal::impulse(1);
        assert!(brute_force_double_convolve(&h, &zero)
            .unwrap()
            .entries()
            .next()
            .is_none());
        let hs = ScaleTimeSignal::from_slices(1, vec![ScaleSignal::delta(idx(&[2]))]).unwrap();
        let us = ScaleTimeSignal::from_slices(1, vec![ScaleSignal::new(1), ScaleSignal::delta(idx(&[-7]))]).unwrap();
        let y = brute_force_double_convolve(&hs, &us).unwrap();
        let entries: Vec<_> = y.entries().map(|(n, k, v)| (n, k.clone(), *v)).collect();
        assert_eq!(entries, vec![(1, idx(&[-5]), c(1.0, 0.0))]);
        let wide = ScaleTimeSignal::from_slices(
            2,
            vec![ScaleSignal::from_entries(2, [(idx(&[0, 0]), c(1.0, 0.0)), (idx(&[200, 200]), c(1.0, 0.0))]).unwrap()],
        )
        .unwrap();
        assert!(matches!(
            brute_force_double_convolve(&wide, &wide),
            Err(Error::WorkGuard { .. })
        ));
    }

    #[test]
    fn time_causality_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let h = random_system(&mut rng, 2, 0, 3);
        let mut u = random_system(&mut rng, 2, 0, 3);
        while u.len() < 3 {
            u.push(random_signal(&mut rng, 2, 0, 3, 4)).unwrap();
        }
        let y = double_convolve(&h, &u, ScaleMode::CausalCone).unwrap();
        let mut perturbed = u.clone();
        perturbed.slice_mut(2).unwrap().add(idx(&[1, 1]), c(5.0, -3.0)).unwrap();
        let y2 = double_convolve(&h, &perturbed, ScaleMode::CausalCone).unwrap();
        for n in 0..2 {
            assert_eq!(y.slice(n), y2.slice(n));
        }
        assert!(y.is_cone_supported());
    }

    #[test]
    fn two_sided_shifts_origin() {
        let h = ScaleTimeSignal::impulse(1);
        let u = ScaleTimeSignal::impulse(1);
        let (y, origin) = double_convolve_two_sided(&h, -3, &u, 1, ScaleMode::Full).unwrap();
        assert_eq!(origin, -2);
        assert_eq!(y, ScaleTimeSignal::impulse(1));
    }
}
