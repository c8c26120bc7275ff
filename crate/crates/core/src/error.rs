use alloc::boxed::Box;
use alloc::vec::Vec;

/// Errors reported by the numerical core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("matrix is not in SU(1,1): |a|^2 - |b|^2 = {det}")]
    NotSu11 { det: f64 },
    #[error("scale factor must be positive, got {0}")]
    InvalidAlpha(f64),
    #[error("rotation angle must satisfy |theta| < pi/2, got {0}")]
    InvalidTheta(f64),
    #[error("{0} undefined for non-hyperbolic map")]
    NotHyperbolic(&'static str),
    #[error("evaluation at pole")]
    Pole,
    #[error("a scale group needs at least one generator")]
    EmptyGroup,
    #[error("generator {index} is not hyperbolic")]
    GeneratorNotHyperbolic { index: usize },
    #[error("generators {i} and {j} do not commute (commutator norm {norm:e})")]
    NonCommuting { i: usize, j: usize, norm: f64 },
    #[error("generators {i} and {j} share the multiplier {multiplier}")]
    DuplicateMultiplier { i: usize, j: usize, multiplier: f64 },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("exponent {value} on axis {axis} exceeds the guard of {guard}")]
    ExponentGuard { axis: usize, value: i64, guard: i64 },
    #[error("truncation not converged: achieved tail bound {achieved:e} with {max_len} coefficients")]
    TruncationNotConverged { achieved: f64, max_len: usize },
    #[error("scale index {index:?}: {source}")]
    Column { index: Vec<i64>, source: Box<Error> },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("impulse response not scale-causal")]
    ImpulseNotScaleCausal,
    #[error("input not scale-causal")]
    InputNotScaleCausal,
    #[error("support bound defined on ordered cyclic cone")]
    SupportBoundUndefined,
    #[error("work guard exceeded: {work} terms")]
    WorkGuard { work: u128 },
    #[error("aliasing on axis {axis}: support width {width} exceeds grid size {grid}")]
    Aliasing { axis: usize, width: usize, grid: usize },
    #[error("Laurent evaluation requires torus points")]
    LaurentRequiresTorus,
    #[error("point outside the admissible disc: |z| = {0}")]
    OutsideDisc(f64),
    #[error("moment sequence is empty")]
    EmptyMoments,
    #[error("t0 must be real, imaginary part is {0}")]
    ComplexT0(f64),
    #[error("expected a unit vector, norm is {0}")]
    NotUnitVector(f64),
}

pub type Result<T> = core::result::Result<T, Error>;
