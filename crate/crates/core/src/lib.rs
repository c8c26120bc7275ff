//! Scale-shift Möbius maps on the unit disc, the scaling operators they
//! induce on Hardy-space coefficient sequences, time × scale convolution,
//! spectral transforms, moment sequences and stability analysis of
//! scale-invariant filters.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod certify;
pub mod convolution;
pub mod error;
pub mod group;
mod linalg;
mod math;
pub mod moebius;
pub mod moments;
pub mod scaling;
pub mod signal;
pub mod spectral;
pub mod stability;

pub use num_complex::Complex64 as Complex;

pub use certify::{certified_sup, SupCertificate, TorusPoly};
pub use convolution::{brute_force_double_convolve, double_convolve, double_convolve_fast, group_convolve, ScaleMode};
pub use error::{Error, Result};
pub use group::{make_group, GroupIndex, ScaleGroup};
pub use moebius::{
    apply_map, classify, compose, compose_signed, fixed_points, inverse, make_scale_shift, multiplier, HyperbolicData,
    MapClass, SuMatrix,
};
pub use moments::{
    herglotz_eval, stieltjes_invert, toeplitz_psd_check, HerglotzValue, MomentSequence, PsdReport, StieltjesMass,
};
pub use scaling::{scale_transform, transform_coeffs, transform_coeffs_bounded, CoeffSeq};
pub use signal::{norm, scale_causal_projection, support_bound, NormKind, ScaleSignal, ScaleTimeSignal};
pub use spectral::{
    gamma_fourier_forward, gamma_fourier_inverse, gtf_eval, haar_moments, hermite_transform, transfer_eval,
    LaurentPoly, SpectrumGrid,
};
pub use stability::{
    adversarial_input, bibo_analysis, dissipativity_check, empirical_verify, l1l2_gain, mult_operator_norm,
    AnalysisOptions, EmpiricalReport, OperatorNormBracket, Property, StabilityReport, Verdict, Witness,
};
