//! Certified suprema over the torus of `√(Σ_c |P_c(θ)|²)` for trigonometric
//! polynomials `P_c(θ) = Σ_k a_{c,k}·e^{−ik·θ}`.
//!
//! Branch and bound on `g = Σ_c |P_c|²`. On a box with centre `c` and
//! half-widths `w`, Taylor's theorem gives
//! `g ≤ g(c) + Σ_i |∂_i g(c)|·w_i + ½·Σ_{ij} Q_ij·w_i·w_j`
//! where `Q_ij = Σ_d |A(d)|·|d_i|·|d_j|` and `A` is the autocorrelation of
//! the coefficients (`g = Σ_d A(d)·e^{−id·θ}`). Boxes are split along every
//! axis until the largest bound is within `(1 + tol)²` of the best value
//! seen, or the evaluation budget runs out.

use alloc::collections::{BTreeMap, BinaryHeap};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::math::{abs2, cis, sqrt};
use crate::Complex;

/// Default number of box evaluations.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Above this many coefficient pairs the Hessian constant falls back to a
/// bound linear in the number of coefficients.
const MAX_AUTOCORRELATION_PAIRS: usize = 4_000_000;

/// Boxes this small cannot be refined meaningfully in double precision.
const MAX_DEPTH: u32 = 52;

/// A trigonometric polynomial `Σ_k a_k·e^{−ik·θ}` in `dims` angles.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusPoly {
    dims: usize,
    terms: Vec<(Vec<i64>, Complex)>,
}

impl TorusPoly {
    pub fn new(dims: usize, terms: Vec<(Vec<i64>, Complex)>) -> Result<Self> {
        for (k, _) in &terms {
            if k.len() != dims {
                return Err(Error::ArityMismatch {
                    expected: dims,
                    found: k.len(),
                });
            }
        }
        Ok(Self { dims, terms })
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn terms(&self) -> &[(Vec<i64>, Complex)] {
        &self.terms
    }

    pub fn eval(&self, theta: &[f64]) -> Complex {
        self.terms.iter().map(|(k, a)| a * cis(-dot(k, theta))).sum()
    }

    fn l1(&self) -> f64 {
        self.terms.iter().map(|(_, a)| a.norm()).sum()
    }
}

fn dot(k: &[i64], theta: &[f64]) -> f64 {
    k.iter().zip(theta).map(|(&ki, &t)| ki as f64 * t).sum()
}

/// `√(Σ_c |P_c(θ)|²)`.
pub fn torus_value(components: &[TorusPoly], theta: &[f64]) -> f64 {
    sqrt(components.iter().map(|p| abs2(p.eval(theta))).sum())
}

/// Result of [`certified_sup`].
#[derive(Debug, Clone, PartialEq)]
pub struct SupCertificate {
    /// Value attained at `argmax`.
    pub lower: f64,
    /// Proven upper bound; valid whether or not `certified` is set.
    pub upper: f64,
    /// `upper ≤ lower·(1 + tol)` was reached within the budget.
    pub certified: bool,
    pub argmax: Vec<f64>,
    pub evaluations: u64,
}

struct Candidate {
    bound: f64,
    slot: usize,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bound
            .total_cmp(&other.bound)
            .then_with(|| other.slot.cmp(&self.slot))
    }
}

struct Objective<'a> {
    components: &'a [TorusPoly],
    dims: usize,
    hessian: Vec<f64>,
    slack: f64,
}

impl Objective<'_> {
    /// `g(c)` and the first-order bound term for half-widths `w`.
    fn value_and_slope(&self, centre: &[f64], w: &[f64]) -> (f64, f64) {
        let mut g = 0.0;
        let mut grad = vec![0.0; self.dims];
        for p in self.components {
            let mut value = Complex::new(0.0, 0.0);
            let mut deriv = vec![Complex::new(0.0, 0.0); self.dims];
            for (k, a) in &p.terms {
                let t = a * cis(-dot(k, centre));
                value += t;
                for (d, &ki) in deriv.iter_mut().zip(k) {
                    *d += t * Complex::new(0.0, -(ki as f64));
                }
            }
            g += abs2(value);
            for (gi, d) in grad.iter_mut().zip(&deriv) {
                *gi += 2.0 * (value.conj() * d).re;
            }
        }
        let slope = grad.iter().zip(w).map(|(gi, wi)| gi.abs() * wi).sum();
        (g, slope)
    }

    fn curvature(&self, w: &[f64]) -> f64 {
        let q = self.dims;
        let mut s = 0.0;
        for i in 0..q {
            for j in 0..q {
                s += self.hessian[i * q + j] * w[i] * w[j];
            }
        }
        0.5 * s
    }

    fn bound(&self, centre: &[f64], w: &[f64]) -> (f64, f64) {
        let (g, slope) = self.value_and_slope(centre, w);
        (g, g + slope + self.curvature(w) + self.slack)
    }
}

fn hessian_constant(components: &[TorusPoly], dims: usize) -> Vec<f64> {
    let pairs: usize = components.iter().map(|p| p.terms.len() * p.terms.len()).sum();
    let mut q = vec![0.0; dims * dims];
    if pairs <= MAX_AUTOCORRELATION_PAIRS {
        let mut auto: BTreeMap<Vec<i64>, Complex> = BTreeMap::new();
        for p in components {
            for (k, a) in &p.terms {
                for (l, b) in &p.terms {
                    let d: Vec<i64> = k.iter().zip(l).map(|(x, y)| x - y).collect();
                    *auto.entry(d).or_insert(Complex::new(0.0, 0.0)) += a * b.conj();
                }
            }
        }
        for (d, a) in &auto {
            let m = a.norm();
            for i in 0..dims {
                for j in 0..dims {
                    q[i * dims + j] += m * (d[i].unsigned_abs() as f64) * (d[j].unsigned_abs() as f64);
                }
            }
        }
    } else {
        // |∂_ij g| ≤ 2Σ_c (|P_c|·|∂_ij P_c| + |∂_i P_c|·|∂_j P_c|).
        for p in components {
            let l0 = p.l1();
            let li: Vec<f64> = (0..dims)
                .map(|i| p.terms.iter().map(|(k, a)| a.norm() * k[i].unsigned_abs() as f64).sum())
                .collect();
            for i in 0..dims {
                for j in 0..dims {
                    let lij: f64 = p
                        .terms
                        .iter()
                        .map(|(k, a)| a.norm() * (k[i].unsigned_abs() * k[j].unsigned_abs()) as f64)
                        .sum();
                    q[i * dims + j] += 2.0 * (l0 * lij + li[i] * li[j]);
                }
            }
        }
    }
    q
}

/// Certified bracket for `sup_θ √(Σ_c |P_c(θ)|²)` over `[0, 2π)^dims`.
pub fn certified_sup(components: &[TorusPoly], dims: usize, tol: f64, budget: u64) -> Result<SupCertificate> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidParameter("tolerance must be positive"));
    }
    if dims == 0 {
        return Err(Error::InvalidParameter("at least one angle is required"));
    }
    for p in components {
        if p.dims != dims {
            return Err(Error::ArityMismatch {
                expected: dims,
                found: p.dims,
            });
        }
    }
    let l0: f64 = components.iter().map(TorusPoly::l1).sum();
    let objective = Objective {
        components,
        dims,
        hessian: hessian_constant(components, dims),
        slack: 16.0 * f64::EPSILON * l0 * l0,
    };
    let factor = (1.0 + tol) * (1.0 + tol);

    let mut centres: Vec<f64> = vec![PI; dims];
    let mut depth: Vec<u32> = vec![0];
    let mut free: Vec<usize> = Vec::new();
    let root_w = vec![PI; dims];
    let (g0, b0) = objective.bound(&centres[..dims], &root_w);
    let mut best = g0;
    let mut argmax = centres[..dims].to_vec();
    let mut evaluations = 1u64;
    let mut heap = BinaryHeap::new();
    heap.push(Candidate { bound: b0, slot: 0 });
    let mut discarded = 0.0f64;
    let mut certified = false;

    let children = 1usize << dims;
    let mut child = vec![0.0; dims];
    loop {
        let Some(top) = heap.peek() else {
            certified = true;
            break;
        };
        if top.bound <= best * factor {
            certified = true;
            break;
        }
        if evaluations + children as u64 > budget || depth[top.slot] >= MAX_DEPTH {
            break;
        }
        let top = heap.pop().expect("peeked");
        let level = depth[top.slot] + 1;
        let parent: Vec<f64> = centres[top.slot * dims..(top.slot + 1) * dims].to_vec();
        free.push(top.slot);
        let w: Vec<f64> = vec![PI / (1u64 << level) as f64; dims];
        for mask in 0..children {
            for i in 0..dims {
                let sign = if mask >> i & 1 == 1 { 1.0 } else { -1.0 };
                child[i] = parent[i] + sign * w[i];
            }
            let (g, b) = objective.bound(&child, &w);
            evaluations += 1;
            if g > best {
                best = g;
                argmax.copy_from_slice(&child);
            }
            if b <= best * factor {
                discarded = discarded.max(b);
                continue;
            }
            let slot = match free.pop() {
                Some(s) => {
                    centres[s * dims..(s + 1) * dims].copy_from_slice(&child);
                    depth[s] = level;
                    s
                }
                None => {
                    centres.extend_from_slice(&child);
                    depth.push(level);
                    depth.len() - 1
                }
            };
            heap.push(Candidate { bound: b, slot });
        }
    }
    let open = heap.peek().map_or(0.0, |c| c.bound);
    let upper_g = open.max(discarded).max(best);
    Ok(SupCertificate {
        lower: sqrt(best),
        upper: sqrt(upper_g),
        certified,
        argmax: argmax.iter().map(|t| t.rem_euclid(2.0 * PI)).collect(),
        evaluations,
    })
}
