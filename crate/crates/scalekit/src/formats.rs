//! File schemas. Complex numbers are `[re, im]` pairs throughout.

use std::collections::BTreeMap;

use scalekit_core::moments::{MomentSequence, PsdReport, StieltjesMass};
use scalekit_core::stability::{EmpiricalReport, LowerBoundMethod, Witness};
use scalekit_core::{
    make_group, CoeffSeq, Complex, GroupIndex, Property, ScaleGroup, ScaleSignal, ScaleTimeSignal, SpectrumGrid,
    StabilityReport, SuMatrix, Verdict,
};
use serde::{Deserialize, Serialize};

use crate::error::{FormatError, Result};
use crate::json::format_float;

/// Largest dense tensor accepted on input.
pub const MAX_DENSE_LEN: usize = 1 << 24;

pub fn pair(z: Complex) -> [f64; 2] {
    [z.re, z.im]
}

fn complex(v: [f64; 2], origin: &str, field: impl FnOnce() -> String) -> Result<Complex> {
    if v[0].is_finite() && v[1].is_finite() {
        Ok(Complex::new(v[0], v[1]))
    } else {
        Err(FormatError::field(origin, field(), "non-finite value"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub a: [f64; 2],
    pub b: [f64; 2],
}

impl From<&SuMatrix> for MatrixJson {
    fn from(m: &SuMatrix) -> Self {
        Self {
            a: pair(m.a()),
            b: pair(m.b()),
        }
    }
}

impl MatrixJson {
    pub fn to_core(&self, origin: &str, field: &str) -> Result<SuMatrix> {
        let a = complex(self.a, origin, || format!("{field}.a"))?;
        let b = complex(self.b, origin, || format!("{field}.b"))?;
        SuMatrix::new(a, b).map_err(|e| FormatError::field(origin, field, e))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub p: usize,
    pub generators: Vec<MatrixJson>,
}

impl From<&ScaleGroup> for GroupJson {
    fn from(g: &ScaleGroup) -> Self {
        Self {
            p: g.arity(),
            generators: g.generators().iter().map(MatrixJson::from).collect(),
        }
    }
}

impl GroupJson {
    pub fn to_core(&self, origin: &str) -> Result<ScaleGroup> {
        if self.p != self.generators.len() {
            return Err(FormatError::field(
                origin,
                "p",
                format!("declares {} generators, found {}", self.p, self.generators.len()),
            ));
        }
        let gens = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, m)| m.to_core(origin, &format!("generators[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        make_group(gens).map_err(|e| FormatError::field(origin, "generators", e))
    }
}

/// Dense row-major tensor. For a scale-time signal `shape = [T, w₁…w_p]`
/// and `origin` holds the scale index of the first cell of each axis; for
/// a scale signal the time axis is absent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignalJson {
    pub shape: Vec<usize>,
    pub origin: Vec<i64>,
    pub data: Vec<[f64; 2]>,
}

fn box_of(arity: usize, bbox: Option<(Vec<i64>, Vec<i64>)>) -> (Vec<i64>, Vec<usize>) {
    match bbox {
        Some((lo, hi)) => {
            let widths = lo.iter().zip(&hi).map(|(l, h)| (h - l + 1) as usize).collect();
            (lo, widths)
        }
        None => (vec![0; arity], vec![0; arity]),
    }
}

fn fill_dense(data: &mut [[f64; 2]], lo: &[i64], widths: &[usize], offset: usize, s: &ScaleSignal) {
    for (k, v) in s.iter() {
        let mut flat = 0;
        for ((&ki, &l), &w) in k.as_slice().iter().zip(lo).zip(widths) {
            flat = flat * w + (ki - l) as usize;
        }
        data[offset + flat] = pair(*v);
    }
}

impl From<&ScaleTimeSignal> for SignalJson {
    fn from(s: &ScaleTimeSignal) -> Self {
        let (lo, widths) = box_of(s.arity(), s.bounding_box());
        let cells: usize = widths.iter().product();
        let mut data = vec![[0.0, 0.0]; cells * s.len()];
        for (n, slice) in s.slices().iter().enumerate() {
            fill_dense(&mut data, &lo, &widths, n * cells, slice);
        }
        let mut shape = vec![s.len()];
        shape.extend(widths);
        Self {
            shape,
            origin: lo,
            data,
        }
    }
}

impl From<&ScaleSignal> for SignalJson {
    fn from(s: &ScaleSignal) -> Self {
        let (lo, widths) = box_of(s.arity(), s.bounding_box());
        let mut data = vec![[0.0, 0.0]; widths.iter().product()];
        fill_dense(&mut data, &lo, &widths, 0, s);
        Self {
            shape: widths,
            origin: lo,
            data,
        }
    }
}

impl SignalJson {
    fn cells(&self, origin: &str, axes: &[usize]) -> Result<usize> {
        let len = axes
            .iter()
            .try_fold(1usize, |acc, &w| acc.checked_mul(w))
            .filter(|&n| n <= MAX_DENSE_LEN)
            .ok_or_else(|| FormatError::field(origin, "shape", format!("more than {MAX_DENSE_LEN} cells")))?;
        Ok(len)
    }

    fn decode_block(&self, origin: &str, widths: &[usize], offset: usize, cells: usize) -> Result<ScaleSignal> {
        let arity = widths.len();
        let mut entries = Vec::new();
        for flat in 0..cells {
            let v = complex(self.data[offset + flat], origin, || format!("data[{}]", offset + flat))?;
            if v == Complex::new(0.0, 0.0) {
                continue;
            }
            let mut k = vec![0i64; arity];
            let mut rest = flat;
            for axis in (0..arity).rev() {
                k[axis] = self.origin[axis] + (rest % widths[axis]) as i64;
                rest /= widths[axis];
            }
            entries.push((GroupIndex::new(k), v));
        }
        ScaleSignal::from_entries(arity, entries).map_err(|e| FormatError::field(origin, "data", e))
    }

    fn check_len(&self, origin: &str, expected: usize) -> Result<()> {
        if self.data.len() != expected {
            return Err(FormatError::field(
                origin,
                "data",
                format!(
                    "shape {:?} needs {expected} values, found {}",
                    self.shape,
                    self.data.len()
                ),
            ));
        }
        Ok(())
    }

    pub fn to_time_signal(&self, origin: &str) -> Result<ScaleTimeSignal> {
        let arity = self.origin.len();
        if arity == 0 || self.shape.len() != arity + 1 {
            return Err(FormatError::field(
                origin,
                "shape",
                format!("expected [T, w1..wp] with p = {arity} >= 1, found {:?}", self.shape),
            ));
        }
        let cells = self.cells(origin, &self.shape[1..])?;
        let total = cells
            .checked_mul(self.shape[0])
            .filter(|&n| n <= MAX_DENSE_LEN)
            .ok_or_else(|| FormatError::field(origin, "shape", format!("more than {MAX_DENSE_LEN} cells")))?;
        self.check_len(origin, total)?;
        let slices = (0..self.shape[0])
            .map(|n| self.decode_block(origin, &self.shape[1..], n * cells, cells))
            .collect::<Result<Vec<_>>>()?;
        ScaleTimeSignal::from_slices(arity, slices).map_err(|e| FormatError::field(origin, "data", e))
    }

    pub fn to_signal(&self, origin: &str) -> Result<ScaleSignal> {
        let arity = self.origin.len();
        if arity == 0 || self.shape.len() != arity {
            return Err(FormatError::field(
                origin,
                "shape",
                format!("expected [w1..wp] with p = {arity} >= 1, found {:?}", self.shape),
            ));
        }
        let cells = self.cells(origin, &self.shape)?;
        self.check_len(origin, cells)?;
        self.decode_block(origin, &self.shape, 0, cells)
    }
}

/// Reads the `n,k1..kp,re,im` schema. Absent entries are zero; the number
/// of slices is one past the largest `n`.
pub fn read_signal_csv(text: &str, origin: &str) -> Result<ScaleTimeSignal> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| FormatError::csv(origin, 1, e))?.clone();
    let cols: Vec<&str> = headers.iter().collect();
    let arity = cols.len().saturating_sub(3);
    let expected: Vec<String> = std::iter::once("n".to_owned())
        .chain((1..=arity).map(|i| format!("k{i}")))
        .chain(["re".to_owned(), "im".to_owned()])
        .collect();
    if arity == 0 || cols != expected {
        return Err(FormatError::csv(
            origin,
            1,
            format!("header must be n,k1..kp,re,im with p >= 1, found {}", cols.join(",")),
        ));
    }
    let mut entries: BTreeMap<(usize, Vec<i64>), Complex> = BTreeMap::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            FormatError::csv(origin, line, e)
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |i: usize| &record[i];
        let n: usize = field(0).parse().map_err(|_| {
            FormatError::csv(
                origin,
                line,
                format!("column n: expected a non-negative integer, found `{}`", field(0)),
            )
        })?;
        let k = (1..=arity)
            .map(|i| {
                field(i).parse::<i64>().map_err(|_| {
                    FormatError::csv(
                        origin,
                        line,
                        format!("column k{i}: expected an integer, found `{}`", field(i)),
                    )
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let part = |i: usize, name: &str| -> Result<f64> {
            field(i).parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| {
                FormatError::csv(
                    origin,
                    line,
                    format!("column {name}: expected a finite number, found `{}`", field(i)),
                )
            })
        };
        let v = Complex::new(part(arity + 1, "re")?, part(arity + 2, "im")?);
        if entries.insert((n, k), v).is_some() {
            return Err(FormatError::csv(origin, line, "duplicate (n, k) entry"));
        }
    }
    let len = entries.keys().map(|(n, _)| n + 1).max().unwrap_or(0);
    let mut out = ScaleTimeSignal::zeros(arity, len);
    for ((n, k), v) in entries {
        out.slice_mut(n)
            .expect("slice exists")
            .set(GroupIndex::new(k), v)
            .map_err(|e| FormatError::csv(origin, 0, e))?;
    }
    Ok(out)
}

/// Writes the `n,k1..kp,re,im` schema sorted by `(n, k)`.
pub fn write_signal_csv(s: &ScaleTimeSignal) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["n".to_owned()];
    header.extend((1..=s.arity()).map(|i| format!("k{i}")));
    header.extend(["re".to_owned(), "im".to_owned()]);
    w.write_record(&header).expect("in-memory write");
    for (n, k, v) in s.entries() {
        let mut row = vec![n.to_string()];
        row.extend(k.as_slice().iter().map(i64::to_string));
        row.push(format_float(v.re));
        row.push(format_float(v.im));
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv emits UTF-8")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffsJson {
    pub coeffs: Vec<[f64; 2]>,
    #[serde(default)]
    pub tail_bound: f64,
}

impl From<&CoeffSeq> for CoeffsJson {
    fn from(c: &CoeffSeq) -> Self {
        Self {
            coeffs: c.coeffs().iter().copied().map(pair).collect(),
            tail_bound: c.tail_bound(),
        }
    }
}

impl CoeffsJson {
    pub fn to_core(&self, origin: &str) -> Result<CoeffSeq> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &v)| complex(v, origin, || format!("coeffs[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        CoeffSeq::new(coeffs, self.tail_bound).map_err(|e| FormatError::field(origin, "tail_bound", e))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumJson {
    pub grid_sizes: Vec<usize>,
    pub values: Vec<[f64; 2]>,
}

impl From<&SpectrumGrid> for SpectrumJson {
    fn from(g: &SpectrumGrid) -> Self {
        Self {
            grid_sizes: g.grid_sizes().to_vec(),
            values: g.values().iter().copied().map(pair).collect(),
        }
    }
}

impl SpectrumJson {
    pub fn to_core(&self, origin: &str) -> Result<SpectrumGrid> {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| complex(v, origin, || format!("values[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        SpectrumGrid::new(self.grid_sizes.clone(), values).map_err(|e| FormatError::field(origin, "values", e))
    }
}

/// Writes the `j1..jp,re,im` schema in row-major order.
pub fn write_spectrum_csv(g: &SpectrumGrid) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = (1..=g.arity()).map(|i| format!("j{i}")).collect();
    header.extend(["re".to_owned(), "im".to_owned()]);
    w.write_record(&header).expect("in-memory write");
    for (flat, v) in g.values().iter().enumerate() {
        let mut row: Vec<String> = g.multi_index(flat).iter().map(usize::to_string).collect();
        row.push(format_float(v.re));
        row.push(format_float(v.im));
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv emits UTF-8")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MomentsJson {
    pub t: Vec<[f64; 2]>,
}

impl From<&MomentSequence> for MomentsJson {
    fn from(m: &MomentSequence) -> Self {
        Self {
            t: m.t().iter().copied().map(pair).collect(),
        }
    }
}

impl MomentsJson {
    pub fn to_core(&self, origin: &str) -> Result<MomentSequence> {
        let t = self
            .t
            .iter()
            .enumerate()
            .map(|(i, &v)| complex(v, origin, || format!("t[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        MomentSequence::new(t).map_err(|e| FormatError::field(origin, "t", e))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsdJson {
    pub is_psd: bool,
    pub min_eigenvalue: f64,
    pub order: usize,
}

impl From<&PsdReport> for PsdJson {
    fn from(r: &PsdReport) -> Self {
        Self {
            is_psd: r.is_psd,
            min_eigenvalue: r.min_eigenvalue,
            order: r.order,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StieltjesJson {
    pub a: f64,
    pub b: f64,
    pub r: f64,
    pub quad_points: usize,
    pub mass: f64,
    pub endpoint_uncertainty: f64,
}

impl StieltjesJson {
    pub fn new(a: f64, b: f64, r: f64, quad_points: usize, m: &StieltjesMass) -> Self {
        Self {
            a,
            b,
            r,
            quad_points,
            mass: m.mass,
            endpoint_uncertainty: m.endpoint_uncertainty,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PropertyJson {
    Bibo,
    Dissipative,
    L1l2,
}

impl From<Property> for PropertyJson {
    fn from(p: Property) -> Self {
        match p {
            Property::Bibo => Self::Bibo,
            Property::Dissipative => Self::Dissipative,
            Property::L1L2 => Self::L1l2,
        }
    }
}

impl From<PropertyJson> for Property {
    fn from(p: PropertyJson) -> Self {
        match p {
            PropertyJson::Bibo => Self::Bibo,
            PropertyJson::Dissipative => Self::Dissipative,
            PropertyJson::L1l2 => Self::L1L2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictJson {
    Pass,
    Fail,
    Inconclusive,
}

impl From<Verdict> for VerdictJson {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Pass => Self::Pass,
            Verdict::Fail => Self::Fail,
            Verdict::Inconclusive => Self::Inconclusive,
        }
    }
}

impl From<VerdictJson> for Verdict {
    fn from(v: VerdictJson) -> Self {
        match v {
            VerdictJson::Pass => Self::Pass,
            VerdictJson::Fail => Self::Fail,
            VerdictJson::Inconclusive => Self::Inconclusive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum MethodJson {
    Delta,
    WindowedCharacter { window: usize },
    Ascent { window: usize, iterations: usize },
}

impl From<LowerBoundMethod> for MethodJson {
    fn from(m: LowerBoundMethod) -> Self {
        match m {
            LowerBoundMethod::Delta => Self::Delta,
            LowerBoundMethod::WindowedCharacter { window } => Self::WindowedCharacter { window },
            LowerBoundMethod::Ascent { window, iterations } => Self::Ascent { window, iterations },
        }
    }
}

impl From<MethodJson> for LowerBoundMethod {
    fn from(m: MethodJson) -> Self {
        match m {
            MethodJson::Delta => Self::Delta,
            MethodJson::WindowedCharacter { window } => Self::WindowedCharacter { window },
            MethodJson::Ascent { window, iterations } => Self::Ascent { window, iterations },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum WitnessJson {
    TorusArgmax {
        theta: Vec<f64>,
        value: f64,
    },
    UnitVector {
        n: usize,
        v: SignalJson,
        gain: f64,
        method: MethodJson,
    },
    TorusPoint {
        z: [f64; 2],
        zs: Vec<[f64; 2]>,
        modulus: f64,
    },
    ViolatingInput {
        input: SignalJson,
        input_energy: f64,
        output_energy: f64,
    },
    Gram {
        min_eigenvalue: f64,
        sets: usize,
        points_per_set: usize,
        seed: u64,
    },
    Impulse {
        output_energy: f64,
    },
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        match w {
            Witness::TorusArgmax { theta, value } => Self::TorusArgmax {
                theta: theta.clone(),
                value: *value,
            },
            Witness::UnitVector { n, v, gain, method } => Self::UnitVector {
                n: *n,
                v: v.into(),
                gain: *gain,
                method: (*method).into(),
            },
            Witness::TorusPoint { z, zs, modulus } => Self::TorusPoint {
                z: pair(*z),
                zs: zs.iter().copied().map(pair).collect(),
                modulus: *modulus,
            },
            Witness::ViolatingInput {
                input,
                input_energy,
                output_energy,
            } => Self::ViolatingInput {
                input: input.into(),
                input_energy: *input_energy,
                output_energy: *output_energy,
            },
            Witness::Gram {
                min_eigenvalue,
                sets,
                points_per_set,
                seed,
            } => Self::Gram {
                min_eigenvalue: *min_eigenvalue,
                sets: *sets,
                points_per_set: *points_per_set,
                seed: *seed,
            },
            Witness::Impulse { output_energy } => Self::Impulse {
                output_energy: *output_energy,
            },
        }
    }
}

impl WitnessJson {
    pub fn to_core(&self, origin: &str, field: &str) -> Result<Witness> {
        Ok(match self {
            Self::TorusArgmax { theta, value } => Witness::TorusArgmax {
                theta: theta.clone(),
                value: *value,
            },
            Self::UnitVector { n, v, gain, method } => Witness::UnitVector {
                n: *n,
                v: v.to_signal(origin)?,
                gain: *gain,
                method: (*method).into(),
            },
            Self::TorusPoint { z, zs, modulus } => Witness::TorusPoint {
                z: complex(*z, origin, || format!("{field}.z"))?,
                zs: zs
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| complex(v, origin, || format!("{field}.zs[{i}]")))
                    .collect::<Result<Vec<_>>>()?,
                modulus: *modulus,
            },
            Self::ViolatingInput {
                input,
                input_energy,
                output_energy,
            } => Witness::ViolatingInput {
                input: input.to_time_signal(origin)?,
                input_energy: *input_energy,
                output_energy: *output_energy,
            },
            Self::Gram {
                min_eigenvalue,
                sets,
                points_per_set,
                seed,
            } => Witness::Gram {
                min_eigenvalue: *min_eigenvalue,
                sets: *sets,
                points_per_set: *points_per_set,
                seed: *seed,
            },
            Self::Impulse { output_energy } => Witness::Impulse {
                output_energy: *output_energy,
            },
        })
    }
}

/// A stability report together with the inputs needed to replay it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportJson {
    pub property: PropertyJson,
    pub verdict: VerdictJson,
    pub certified: bool,
    pub sufficient_upper: Option<f64>,
    pub necessary_lower: Option<f64>,
    pub tol: f64,
    pub budget: u64,
    pub seed: u64,
    pub cone: bool,
    pub gram_sets: usize,
    pub gram_points: usize,
    pub evaluations: u64,
    pub witnesses: Vec<WitnessJson>,
    pub system: SignalJson,
}

/// Settings recorded next to a report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReplayInfo {
    pub seed: u64,
    pub cone: bool,
    pub gram_sets: usize,
    pub gram_points: usize,
}

impl ReportJson {
    pub fn new(report: &StabilityReport, system: &ScaleTimeSignal, info: ReplayInfo) -> Self {
        Self {
            property: report.property.into(),
            verdict: report.verdict.into(),
            certified: report.certified,
            sufficient_upper: report.sufficient_upper,
            necessary_lower: report.necessary_lower,
            tol: report.tol,
            budget: report.budget,
            seed: info.seed,
            cone: info.cone,
            gram_sets: info.gram_sets,
            gram_points: info.gram_points,
            evaluations: report.evaluations,
            witnesses: report.witnesses.iter().map(WitnessJson::from).collect(),
            system: system.into(),
        }
    }

    pub fn to_core(&self, origin: &str) -> Result<(StabilityReport, ScaleTimeSignal)> {
        let witnesses = self
            .witnesses
            .iter()
            .enumerate()
            .map(|(i, w)| w.to_core(origin, &format!("witnesses[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let report = StabilityReport {
            property: self.property.into(),
            verdict: self.verdict.into(),
            certified: self.certified,
            sufficient_upper: self.sufficient_upper,
            necessary_lower: self.necessary_lower,
            tol: self.tol,
            budget: self.budget,
            evaluations: self.evaluations,
            witnesses,
        };
        Ok((report, self.system.to_time_signal(origin)?))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalJson {
    pub property: PropertyJson,
    pub trials: usize,
    pub seed: u64,
    pub bound: f64,
    pub max_gain: f64,
    pub max_ratio: f64,
    pub analyzer_bug: bool,
}

impl From<&EmpiricalReport> for EmpiricalJson {
    fn from(r: &EmpiricalReport) -> Self {
        Self {
            property: r.property.into(),
            trials: r.trials,
            seed: r.seed,
            bound: r.bound,
            max_gain: r.max_gain,
            max_ratio: r.max_ratio,
            analyzer_bug: r.analyzer_bug,
        }
    }
}
