//! `scalekit` command line. Exit codes: 0 success or pass, 1 property
//! fails, 2 usage or parse error, 3 inconclusive or budget exhausted.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use scalekit_core::moments::{stieltjes_invert, toeplitz_psd_check};
use scalekit_core::scaling::scale_columns;
use scalekit_core::{
    bibo_analysis, brute_force_double_convolve, dissipativity_check, double_convolve, double_convolve_fast,
    empirical_verify, gtf_eval, l1l2_gain, scale_transform, transfer_eval, AnalysisOptions, Complex, GroupIndex,
    Property, ScaleMode, ScaleTimeSignal, Verdict,
};
use serde::Serialize;
use thiserror::Error;

use crate::error::FormatError;
use crate::formats::{
    pair, read_signal_csv, write_signal_csv, write_spectrum_csv, CoeffsJson, EmpiricalJson, GroupJson, MomentsJson,
    PsdJson, ReplayInfo, ReportJson, SignalJson, SpectrumJson, StieltjesJson,
};
use crate::json::{parse, to_canonical_string};

/// Overrides the evaluation budget of every certified supremum.
pub const BUDGET_ENV: &str = "SCALEKIT_MAX_GRID";

/// Largest scale window accepted by `scale-transform`.
pub const MAX_WINDOW: usize = 4096;

#[derive(Debug, Parser)]
#[command(name = "scalekit", version, about = "Multi-scale linear systems toolkit")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Relative tolerance for analyzers and truncations.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PropertyArg {
    Bibo,
    Dissipative,
    L1l2,
}

impl From<PropertyArg> for Property {
    fn from(p: PropertyArg) -> Self {
        match p {
            PropertyArg::Bibo => Property::Bibo,
            PropertyArg::Dissipative => Property::Dissipative,
            PropertyArg::L1l2 => Property::L1L2,
        }
    }
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    /// Impulse response, as signal CSV or dense signal JSON.
    #[arg(long)]
    pub system: PathBuf,
    /// Compress the analysis to the scale-causal cone.
    #[arg(long)]
    pub cone: bool,
    #[arg(long, default_value_t = 20)]
    pub gram_sets: usize,
    #[arg(long, default_value_t = 12)]
    pub gram_points: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply the scaling operators of a group to a coefficient sequence.
    ScaleTransform {
        /// Group JSON `{"p", "generators"}`.
        #[arg(long)]
        group: PathBuf,
        /// Coefficient JSON `{"coeffs", "tail_bound"}`.
        #[arg(long)]
        input: PathBuf,
        /// Scale window `lo:hi`, applied on every axis.
        #[arg(long, default_value = "0:0", allow_hyphen_values = true)]
        window: String,
        /// Rows of the CSV output; defaults to the longest column.
        #[arg(long)]
        time_len: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Double convolution `y = h ⋆ u`.
    Filter {
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        u: PathBuf,
        /// Use the grid-transform path.
        #[arg(long)]
        fast: bool,
        /// Require scale-causal operands.
        #[arg(long)]
        causal: bool,
    },
    /// Brute-force double convolution.
    Oracle {
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        u: PathBuf,
    },
    /// Transfer function `H(z, θ)` sampled on a uniform torus grid.
    Spectrum {
        #[arg(long)]
        system: PathBuf,
        /// Time variable `re,im` inside the unit disc.
        #[arg(long, default_value = "0,0", value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex,
        /// Grid size per scale axis.
        #[arg(long, value_delimiter = ',', default_value = "64")]
        grid: Vec<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Evaluate the generalized transfer function at one point.
    GtfEval {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex,
        /// Scale variables `re,im;re,im;…`.
        #[arg(long, value_parser = parse_complex_list, allow_hyphen_values = true)]
        zs: ComplexList,
    },
    /// Toeplitz positivity of a moment sequence.
    MomentsCheck {
        /// Inline JSON `{"t": …}` or `@path`.
        #[arg(long)]
        moments: String,
    },
    /// Measure of an arc recovered from moments.
    Stieltjes {
        /// Inline JSON `{"t": …}` or `@path`.
        #[arg(long)]
        moments: String,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, default_value_t = 0.99)]
        r: f64,
        #[arg(long, default_value_t = 1024)]
        quad_points: usize,
    },
    /// Certified stability analysis.
    Analyze {
        #[arg(long, value_enum)]
        property: PropertyArg,
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Compare a report with seeded random inputs.
    Verify {
        /// Report written by `analyze`; replaces --property and --system.
        #[arg(long, conflicts_with_all = ["property", "system"])]
        report: Option<PathBuf>,
        #[arg(long, value_enum, requires = "system")]
        property: Option<PropertyArg>,
        #[arg(long, requires = "property")]
        system: Option<PathBuf>,
        #[arg(long)]
        cone: bool,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexList(pub Vec<Complex>);

fn parse_complex(s: &str) -> Result<Complex, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `re,im`, found `{s}`"))?;
    let part = |t: &str| {
        t.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| format!("expected a finite number, found `{t}`"))
    };
    Ok(Complex::new(part(re)?, part(im)?))
}

fn parse_complex_list(s: &str) -> Result<ComplexList, String> {
    s.split(';')
        .map(parse_complex)
        .collect::<Result<_, _>>()
        .map(ComplexList)
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Core(#[from] scalekit_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Core(scalekit_core::Error::WorkGuard { .. })
            | Self::Core(scalekit_core::Error::TruncationNotConverged { .. }) => 3,
            Self::Core(scalekit_core::Error::Column { source, .. })
                if matches!(**source, scalekit_core::Error::TruncationNotConverged { .. }) =>
            {
                3
            }
            _ => 2,
        }
    }
}

/// Text produced by a subcommand and the exit code it implies.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn json<T: Serialize>(value: &T, code: i32) -> Self {
        Self {
            text: to_canonical_string(value),
            code,
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| {
        FormatError::Io {
            path: path.to_owned(),
            source,
        }
        .into()
    })
}

fn origin(path: &Path) -> String {
    path.display().to_string()
}

/// Loads a scale-time signal, CSV by `.csv` extension and dense JSON otherwise.
pub fn load_signal(path: &Path) -> Result<ScaleTimeSignal, CliError> {
    let text = read_file(path)?;
    let origin = origin(path);
    let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    Ok(if is_csv {
        read_signal_csv(&text, &origin)?
    } else {
        parse::<SignalJson>(&text, &origin)?.to_time_signal(&origin)?
    })
}

fn load_moments(arg: &str) -> Result<scalekit_core::moments::MomentSequence, CliError> {
    let (text, origin) = match arg.strip_prefix('@') {
        Some(path) => (read_file(Path::new(path))?, path.to_owned()),
        None => (arg.to_owned(), "--moments".to_owned()),
    };
    Ok(parse::<MomentsJson>(&text, &origin)?.to_core(&origin)?)
}

fn budget_from_env() -> Result<u64, CliError> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .ok()
            .filter(|&b| b > 0)
            .ok_or_else(|| CliError::Usage(format!("{BUDGET_ENV}: expected a positive integer, found `{v}`"))),
        Err(_) => Ok(AnalysisOptions::default().budget),
    }
}

fn parse_window(s: &str, arity: usize) -> Result<Vec<GroupIndex>, CliError> {
    let bad = || CliError::Usage(format!("--window: expected `lo:hi` with lo <= hi, found `{s}`"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    let width = (hi - lo + 1) as usize;
    let count = (0..arity)
        .try_fold(1usize, |acc, _| acc.checked_mul(width))
        .filter(|&n| n <= MAX_WINDOW)
        .ok_or_else(|| CliError::Usage(format!("--window: more than {MAX_WINDOW} scale indices")))?;
    Ok((0..count)
        .map(|mut flat| {
            let mut k = vec![0i64; arity];
            for axis in (0..arity).rev() {
                k[axis] = lo + (flat % width) as i64;
                flat /= width;
            }
            GroupIndex::new(k)
        })
        .collect())
}

#[derive(Serialize)]
struct ColumnJson {
    k: Vec<i64>,
    tail_bound: f64,
    coeffs: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct ColumnsJson {
    tol: f64,
    columns: Vec<ColumnJson>,
}

#[derive(Serialize)]
struct GtfJson {
    z: [f64; 2],
    zs: Vec<[f64; 2]>,
    value: [f64; 2],
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Pass => 0,
        Verdict::Fail => 1,
        Verdict::Inconclusive => 3,
    }
}

fn analyze(
    property: Property,
    h: &ScaleTimeSignal,
    cone: bool,
    opts: &AnalysisOptions,
) -> Result<scalekit_core::StabilityReport, CliError> {
    Ok(match property {
        Property::Bibo => bibo_analysis(h, cone, opts)?,
        Property::Dissipative => dissipativity_check(h, opts)?,
        Property::L1L2 => l1l2_gain(h, opts)?,
    })
}

fn execute(cli: Cli) -> Result<Outcome, CliError> {
    let g = &cli.global;
    if !(g.tol.is_finite() && g.tol > 0.0) {
        return Err(CliError::Usage(format!(
            "--tol: expected a positive number, found {}",
            g.tol
        )));
    }
    match cli.command {
        Command::ScaleTransform {
            group,
            input,
            window,
            time_len,
            format,
        } => {
            let group = parse::<GroupJson>(&read_file(&group)?, &origin(&group))?.to_core(&origin(&group))?;
            let x = parse::<CoeffsJson>(&read_file(&input)?, &origin(&input))?.to_core(&origin(&input))?;
            let window = parse_window(&window, group.arity())?;
            match format {
                OutputFormat::Json => {
                    let columns = scale_columns(&group, &x, &window, g.tol)?
                        .into_iter()
                        .map(|(k, c)| {
                            let mut coeffs: Vec<[f64; 2]> = c.coeffs().iter().copied().map(pair).collect();
                            if let Some(t) = time_len {
                                coeffs.resize(t, [0.0, 0.0]);
                            }
                            ColumnJson {
                                k: k.into_vec(),
                                tail_bound: c.tail_bound(),
                                coeffs,
                            }
                        })
                        .collect();
                    Ok(Outcome::json(&ColumnsJson { tol: g.tol, columns }, 0))
                }
                OutputFormat::Csv => {
                    let rows = match time_len {
                        Some(t) => t,
                        None => scale_columns(&group, &x, &window, g.tol)?
                            .iter()
                            .map(|(_, c)| c.len())
                            .max()
                            .unwrap_or(1)
                            .max(1),
                    };
                    let s = scale_transform(&group, &x, &window, rows, g.tol)?;
                    Ok(Outcome {
                        text: write_signal_csv(&s),
                        code: 0,
                    })
                }
            }
        }
        Command::Filter { h, u, fast, causal } => {
            let (h, u) = (load_signal(&h)?, load_signal(&u)?);
            let mode = if causal { ScaleMode::CausalCone } else { ScaleMode::Full };
            let y = if fast {
                double_convolve_fast(&h, &u, mode)?
            } else {
                double_convolve(&h, &u, mode)?
            };
            Ok(Outcome {
                text: write_signal_csv(&y),
                code: 0,
            })
        }
        Command::Oracle { h, u } => {
            let y = brute_force_double_convolve(&load_signal(&h)?, &load_signal(&u)?)?;
            Ok(Outcome {
                text: write_signal_csv(&y),
                code: 0,
            })
        }
        Command::Spectrum {
            system,
            z,
            grid,
            format,
        } => {
            let h = load_signal(&system)?;
            let sizes = if grid.len() == 1 {
                vec![grid[0]; h.arity()]
            } else {
                grid
            };
            let s = transfer_eval(&h, z, &sizes)?;
            Ok(match format {
                OutputFormat::Json => Outcome::json(&SpectrumJson::from(&s), 0),
                OutputFormat::Csv => Outcome {
                    text: write_spectrum_csv(&s),
                    code: 0,
                },
            })
        }
        Command::GtfEval { system, z, zs } => {
            let h = load_signal(&system)?;
            let value = gtf_eval(&h, z, &zs.0)?;
            Ok(Outcome::json(
                &GtfJson {
                    z: pair(z),
                    zs: zs.0.iter().copied().map(pair).collect(),
                    value: pair(value),
                },
                0,
            ))
        }
        Command::MomentsCheck { moments } => {
            let r = toeplitz_psd_check(&load_moments(&moments)?, g.tol)?;
            Ok(Outcome::json(&PsdJson::from(&r), if r.is_psd { 0 } else { 1 }))
        }
        Command::Stieltjes {
            moments,
            a,
            b,
            r,
            quad_points,
        } => {
            let m = stieltjes_invert(&load_moments(&moments)?, a, b, r, quad_points)?;
            Ok(Outcome::json(&StieltjesJson::new(a, b, r, quad_points, &m), 0))
        }
        Command::Analyze { property, system } => {
            let h = load_signal(&system.system)?;
            let opts = AnalysisOptions {
                tol: g.tol,
                budget: budget_from_env()?,
                seed: g.seed,
                gram_sets: system.gram_sets,
                gram_points: system.gram_points,
            };
            let report = analyze(property.into(), &h, system.cone, &opts)?;
            let info = ReplayInfo {
                seed: g.seed,
                cone: system.cone,
                gram_sets: system.gram_sets,
                gram_points: system.gram_points,
            };
            Ok(Outcome::json(
                &ReportJson::new(&report, &h, info),
                verdict_code(report.verdict),
            ))
        }
        Command::Verify {
            report,
            property,
            system,
            cone,
            trials,
        } => {
            let (report, h) = match (report, property, system) {
                (Some(path), _, _) => {
                    let origin = origin(&path);
                    parse::<ReportJson>(&read_file(&path)?, &origin)?.to_core(&origin)?
                }
                (None, Some(property), Some(system)) => {
                    let h = load_signal(&system)?;
                    let opts = AnalysisOptions {
                        tol: g.tol,
                        budget: budget_from_env()?,
                        seed: g.seed,
                        ..AnalysisOptions::default()
                    };
                    (analyze(property.into(), &h, cone, &opts)?, h)
                }
                _ => {
                    return Err(CliError::Usage(
                        "verify needs --report or both --property and --system".into(),
                    ))
                }
            };
            let e = empirical_verify(&h, &report, trials, g.seed)?;
            Ok(Outcome::json(
                &EmpiricalJson::from(&e),
                if e.analyzer_bug { 1 } else { 0 },
            ))
        }
    }
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let out = cli.global.out.clone();
    match execute(cli) {
        Ok(outcome) => {
            let written = match &out {
                Some(path) => std::fs::write(path, &outcome.text).map_err(|source| FormatError::Io {
                    path: path.clone(),
                    source,
                }),
                None => stdout
                    .write_all(outcome.text.as_bytes())
                    .map_err(|source| FormatError::Io {
                        path: PathBuf::from("<stdout>"),
                        source,
                    }),
            };
            match written {
                Ok(()) => outcome.code,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    2
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
