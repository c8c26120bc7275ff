//! Finitely generated Abelian groups of commuting hyperbolic maps indexed by ℤ^p.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::math::ln;
use crate::moebius::{
    classify, compose, fixed_points, inverse, multiplier, MapClass, SuMatrix, ALGEBRAIC_TOL, FIXED_POINT_TOL,
};

/// Largest admissible `|k_i|` in [`ScaleGroup::element_at`].
pub const EXPONENT_GUARD: i64 = 64;

/// Exponent vector `(k_1, …, k_p)` of a group element `γ_1^{k_1} ⋯ γ_p^{k_p}`.
///
/// Ordered lexicographically, which fixes iteration order everywhere.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupIndex(Vec<i64>);

impl GroupIndex {
    pub fn new(k: Vec<i64>) -> Self {
        Self(k)
    }

    pub fn zero(arity: usize) -> Self {
        Self(vec![0; arity])
    }

    /// The index `k·e_axis`.
    pub fn axis(arity: usize, axis: usize, k: i64) -> Self {
        let mut v = vec![0; arity];
        v[axis] = k;
        Self(v)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|k| *k == 0)
    }

    /// Membership in the scale-causal cone (the positive orthant ℕ₀^p).
    pub fn in_causal_cone(&self) -> bool {
        self.0.iter().all(|k| *k >= 0)
    }

    /// `Σ |k_i|`.
    pub fn l1(&self) -> u64 {
        self.0.iter().map(|k| k.unsigned_abs()).sum()
    }
}

impl fmt::Display for GroupIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for GroupIndex {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl Add for &GroupIndex {
    type Output = GroupIndex;

    fn add(self, rhs: &GroupIndex) -> GroupIndex {
        debug_assert_eq!(self.arity(), rhs.arity());
        GroupIndex(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &GroupIndex {
    type Output = GroupIndex;

    fn sub(self, rhs: &GroupIndex) -> GroupIndex {
        debug_assert_eq!(self.arity(), rhs.arity());
        GroupIndex(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &GroupIndex {
    type Output = GroupIndex;

    fn neg(self) -> GroupIndex {
        GroupIndex(self.0.iter().map(|k| -k).collect())
    }
}

/// `p` commuting hyperbolic generators, each stored with multiplier < 1 and a
/// common attracting fixed point.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleGroup {
    generators: Vec<SuMatrix>,
    log_multipliers: Vec<f64>,
    reoriented: Vec<bool>,
}

impl ScaleGroup {
    /// Validates and orients a list of generators.
    ///
    /// The first generator fixes the orientation: its attracting fixed point
    /// defines zooming. A later generator whose attracting point is the first
    /// one's repelling point is replaced by its inverse and flagged in
    /// [`ScaleGroup::reoriented`]. Multiplicative independence of the
    /// multipliers is the caller's obligation; only distinctness is checked.
    pub fn new(generators: Vec<SuMatrix>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyGroup);
        }
        for (index, g) in generators.iter().enumerate() {
            if classify(g) != MapClass::Hyperbolic {
                return Err(Error::GeneratorNotHyperbolic { index });
            }
        }
        for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                let norm =
                    compose(&generators[i], &generators[j]).max_entry_diff(&compose(&generators[j], &generators[i]));
                if norm > FIXED_POINT_TOL {
                    return Err(Error::NonCommuting { i, j, norm });
                }
            }
        }
        let reference = fixed_points(&generators[0])?;
        let mut oriented = Vec::with_capacity(generators.len());
        let mut reoriented = Vec::with_capacity(generators.len());
        for (j, g) in generators.iter().enumerate() {
            let fp = fixed_points(g)?;
            let same = (fp.xi1 - reference.xi1).norm() <= 1e-8;
            let swapped = (fp.xi1 - reference.xi2).norm() <= 1e-8;
            if same {
                oriented.push(*g);
                reoriented.push(false);
            } else if swapped {
                oriented.push(inverse(g));
                reoriented.push(true);
            } else {
                // Commuting hyperbolic maps share fixed points; reaching this
                // means the commutator test passed only marginally.
                return Err(Error::NonCommuting {
                    i: 0,
                    j,
                    norm: (fp.xi1 - reference.xi1).norm(),
                });
            }
        }
        let mut log_multipliers = Vec::with_capacity(oriented.len());
        for g in &oriented {
            log_multipliers.push(ln(multiplier(g)?));
        }
        for i in 0..oriented.len() {
            for j in i + 1..oriented.len() {
                if (log_multipliers[i] - log_multipliers[j]).abs() <= ALGEBRAIC_TOL {
                    return Err(Error::DuplicateMultiplier {
                        i,
                        j,
                        multiplier: crate::math::exp(log_multipliers[i]),
                    });
                }
            }
        }
        Ok(Self {
            generators: oriented,
            log_multipliers,
            reoriented,
        })
    }

    pub fn arity(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[SuMatrix] {
        &self.generators
    }

    /// `log α_i` for each stored generator, all negative.
    pub fn log_multipliers(&self) -> &[f64] {
        &self.log_multipliers
    }

    /// Which input generators were replaced by their inverse.
    pub fn reoriented(&self) -> &[bool] {
        &self.reoriented
    }

    fn check_arity(&self, idx: &GroupIndex) -> Result<()> {
        if idx.arity() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: idx.arity(),
            });
        }
        Ok(())
    }

    /// `Π γ_i^{k_i}` by binary exponentiation.
    pub fn element_at(&self, idx: &GroupIndex) -> Result<SuMatrix> {
        self.check_arity(idx)?;
        for (axis, &k) in idx.as_slice().iter().enumerate() {
            if k.abs() > EXPONENT_GUARD {
                return Err(Error::ExponentGuard {
                    axis,
                    value: k,
                    guard: EXPONENT_GUARD,
                });
            }
        }
        let mut acc = SuMatrix::identity();
        for (g, &k) in self.generators.iter().zip(idx.as_slice()) {
            let base = if k < 0 { inverse(g) } else { *g };
            acc = compose(&acc, &power(&base, k.unsigned_abs()));
        }
        Ok(acc)
    }

    /// Signed log-scale `Σ k_i log α_i`; negative means zooming.
    pub fn order_key(&self, idx: &GroupIndex) -> Result<f64> {
        self.check_arity(idx)?;
        Ok(idx
            .as_slice()
            .iter()
            .zip(&self.log_multipliers)
            .map(|(&k, l)| k as f64 * l)
            .sum())
    }

    /// `idx1 ⪯ idx2`: `idx2` zooms at least as much as `idx1`.
    pub fn precedes(&self, idx1: &GroupIndex, idx2: &GroupIndex) -> Result<bool> {
        self.check_arity(idx1)?;
        Ok(self.order_key(&(idx2 - idx1))? <= 0.0)
    }

    /// Identity or multiplier < 1 (the half-space form of the causal cone).
    pub fn in_contracting_half(&self, idx: &GroupIndex) -> Result<bool> {
        Ok(idx.is_zero() || self.order_key(idx)? < 0.0)
    }
}

pub fn make_group(generators: Vec<SuMatrix>) -> Result<ScaleGroup> {
    ScaleGroup::new(generators)
}

fn power(base: &SuMatrix, mut e: u64) -> SuMatrix {
    let mut result = SuMatrix::identity();
    let mut sq = *base;
    while e > 0 {
        if e & 1 == 1 {
            result = compose(&result, &sq);
        }
        e >>= 1;
        if e > 0 {
            sq = compose(&sq, &sq);
        }
    }
    result
}
