//! Time × scale signal containers and their norms.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::GroupIndex;
use crate::math::{abs2, is_finite, sqrt};
use crate::Complex;

/// A finitely supported map `GroupIndex → ℂ` (one time slice).
///
/// Exact zeros are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleSignal {
    arity: usize,
    entries: BTreeMap<GroupIndex, Complex>,
}

impl ScaleSignal {
    pub fn new(arity: usize) -> Self {
        Self {
            arity,
            entries: BTreeMap::new(),
        }
    }

    /// Unit impulse at `idx`.
    pub fn delta(idx: GroupIndex) -> Self {
        let mut s = Self::new(idx.arity());
        s.entries.insert(idx, Complex::new(1.0, 0.0));
        s
    }

    pub fn from_entries<I>(arity: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (GroupIndex, Complex)>,
    {
        let mut s = Self::new(arity);
        for (k, v) in entries {
            s.add(k, v)?;
        }
        Ok(s)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    fn check(&self, idx: &GroupIndex) -> Result<()> {
        if idx.arity() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: idx.arity(),
            });
        }
        Ok(())
    }

    /// Overwrites the value at `idx`.
    pub fn set(&mut self, idx: GroupIndex, value: Complex) -> Result<()> {
        self.check(&idx)?;
        if !is_finite(value) {
            return Err(Error::NonFinite("signal entry"));
        }
        if value == Complex::new(0.0, 0.0) {
            self.entries.remove(&idx);
        } else {
            self.entries.insert(idx, value);
        }
        Ok(())
    }

    /// Accumulates `value` at `idx`.
    pub fn add(&mut self, idx: GroupIndex, value: Complex) -> Result<()> {
        let current = self.get(&idx);
        self.set(idx, current + value)
    }

    pub(crate) fn accumulate(&mut self, idx: GroupIndex, value: Complex) {
        let slot = self.entries.entry(idx).or_insert(Complex::new(0.0, 0.0));
        *slot += value;
    }

    pub(crate) fn drop_zeros(&mut self) {
        self.entries.retain(|_, v| *v != Complex::new(0.0, 0.0));
    }

    pub fn get(&self, idx: &GroupIndex) -> Complex {
        self.entries.get(idx).copied().unwrap_or(Complex::new(0.0, 0.0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupIndex, &Complex)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn l2_norm(&self) -> f64 {
        sqrt(self.entries.values().map(|v| abs2(*v)).sum())
    }

    pub fn l1_norm(&self) -> f64 {
        self.entries.values().map(|v| v.norm()).sum()
    }

    pub fn scaled(&self, factor: Complex) -> Self {
        let mut out = Self::new(self.arity);
        for (k, v) in &self.entries {
            out.accumulate(k.clone(), v * factor);
        }
        out.drop_zeros();
        out
    }

    /// `⟨self, other⟩ = Σ self(k)·other(k)*`.
    pub fn inner(&self, other: &ScaleSignal) -> Complex {
        self.entries.iter().map(|(k, v)| v * other.get(k).conj()).sum()
    }

    /// Entries inside the positive orthant only.
    pub fn cone_projection(&self) -> Self {
        Self {
            arity: self.arity,
            entries: self
                .entries
                .iter()
                .filter(|(k, _)| k.in_causal_cone())
                .map(|(k, v)| (k.clone(), *v))
                .collect(),
        }
    }

    pub fn is_cone_supported(&self) -> bool {
        self.entries.keys().all(GroupIndex::in_causal_cone)
    }

    /// Per-axis `(min, max)` of the support; `None` for the zero signal.
    pub fn bounding_box(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let mut iter = self.entries.keys();
        let first = iter.next()?;
        let mut lo = first.as_slice().to_vec();
        let mut hi = lo.clone();
        for k in iter {
            for (axis, &v) in k.as_slice().iter().enumerate() {
                lo[axis] = lo[axis].min(v);
                hi[axis] = hi[axis].max(v);
            }
        }
        Some((lo, hi))
    }

    /// Removes entries with `|v| ≤ eps`.
    pub fn pruned(&self, eps: f64) -> Self {
        Self {
            arity: self.arity,
            entries: self
                .entries
                .iter()
                .filter(|(_, v)| v.norm() > eps)
                .map(|(k, v)| (k.clone(), *v))
                .collect(),
        }
    }

    /// Largest pointwise difference over the union of supports.
    pub fn max_abs_diff(&self, other: &ScaleSignal) -> f64 {
        let a = self.entries.iter().map(|(k, v)| (v - other.get(k)).norm());
        let b = other.entries.iter().map(|(k, v)| (v - self.get(k)).norm());
        a.chain(b).fold(0.0, f64::max)
    }
}

/// Which of the three signal norms to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    /// `sup_n ‖u_n‖₂`
    SupL2,
    /// `Σ_n ‖u_n‖₂²`
    Energy,
    /// `Σ_n ‖u_n‖₂`
    L1L2,
}

/// A time-indexed family of scale signals `u_0, …, u_{T−1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleTimeSignal {
    arity: usize,
    slices: Vec<ScaleSignal>,
}

impl ScaleTimeSignal {
    /// `len` zero slices.
    pub fn zeros(arity: usize, len: usize) -> Self {
        Self {
            arity,
            slices: (0..len).map(|_| ScaleSignal::new(arity)).collect(),
        }
    }

    pub fn from_slices(arity: usize, slices: Vec<ScaleSignal>) -> Result<Self> {
        for s in &slices {
            if s.arity() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: s.arity(),
                });
            }
        }
        Ok(Self { arity, slices })
    }

    /// Single impulse at time 0 and scale index 0.
    pub fn impulse(arity: usize) -> Self {
        Self {
            arity,
            slices: alloc::vec![ScaleSignal::delta(GroupIndex::zero(arity))],
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.slices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slices.is_empty()
    }

    pub fn slices(&self) -> &[ScaleSignal] {
        &self.slices
    }

    pub fn slice(&self, n: usize) -> Option<&ScaleSignal> {
        self.slices.get(n)
    }

    pub fn slice_mut(&mut self, n: usize) -> Option<&mut ScaleSignal> {
        self.slices.get_mut(n)
    }

    pub fn push(&mut self, slice: ScaleSignal) -> Result<()> {
        if slice.arity() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: slice.arity(),
            });
        }
        self.slices.push(slice);
        Ok(())
    }

    pub fn get(&self, n: usize, idx: &GroupIndex) -> Complex {
        self.slices.get(n).map_or(Complex::new(0.0, 0.0), |s| s.get(idx))
    }

    pub fn norm(&self, kind: NormKind) -> f64 {
        norm(self, kind)
    }

    pub fn is_cone_supported(&self) -> bool {
        self.slices.iter().all(ScaleSignal::is_cone_supported)
    }

    /// All `(n, k, value)` triples in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, &GroupIndex, &Complex)> {
        self.slices
            .iter()
            .enumerate()
            .flat_map(|(n, s)| s.iter().map(move |(k, v)| (n, k, v)))
    }

    pub fn scaled(&self, factor: Complex) -> Self {
        Self {
            arity: self.arity,
            slices: self.slices.iter().map(|s| s.scaled(factor)).collect(),
        }
    }

    /// Per-axis `(min, max)` over all slices.
    pub fn bounding_box(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let mut acc: Option<(Vec<i64>, Vec<i64>)> = None;
        for s in &self.slices {
            if let Some((lo, hi)) = s.bounding_box() {
                acc = Some(match acc {
                    None => (lo, hi),
                    Some((mut alo, mut ahi)) => {
                        for i in 0..lo.len() {
                            alo[i] = alo[i].min(lo[i]);
                            ahi[i] = ahi[i].max(hi[i]);
                        }
                        (alo, ahi)
                    }
                });
            }
        }
        acc
    }

    /// Largest pointwise difference, treating missing slices and entries as zero.
    pub fn max_abs_diff(&self, other: &ScaleTimeSignal) -> f64 {
        let empty = ScaleSignal::new(self.arity);
        (0..self.len().max(other.len()))
            .map(|n| {
                let a = self.slices.get(n).unwrap_or(&empty);
                let b = other.slices.get(n).unwrap_or(&empty);
                a.max_abs_diff(b)
            })
            .fold(0.0, f64::max)
    }
}

pub fn norm(s: &ScaleTimeSignal, kind: NormKind) -> f64 {
    let norms = s.slices.iter().map(ScaleSignal::l2_norm);
    match kind {
        NormKind::SupL2 => norms.fold(0.0, f64::max),
        NormKind::Energy => s
            .slices
            .iter()
            .map(|sl| sl.iter().map(|(_, v)| abs2(*v)).sum::<f64>())
            .sum(),
        NormKind::L1L2 => norms.sum(),
    }
}

/// Keeps exactly the entries whose index lies in the scale-causal cone.
pub fn scale_causal_projection(s: &ScaleTimeSignal) -> ScaleTimeSignal {
    ScaleTimeSignal {
        arity: s.arity,
        slices: s.slices.iter().map(ScaleSignal::cone_projection).collect(),
    }
}

/// Largest exponent in the support of a cyclic cone-supported signal.
///
/// Only the maximum is reported; no claim is made about the smallest index.
pub fn support_bound(u: &ScaleSignal) -> Result<Option<u64>> {
    if u.arity() != 1 || !u.is_cone_supported() {
        return Err(Error::SupportBoundUndefined);
    }
    Ok(u.entries.keys().map(|k| k.as_slice()[0] as u64).max())
}
