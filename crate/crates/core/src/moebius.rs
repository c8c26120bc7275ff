//! Disc automorphisms represented by SU(1,1) matrices `[[a, b], [b*, a*]]`.
//!
//! Every matrix is stored sign-normalized (the `±I` quotient is resolved so
//! that `Re(a) > 0`, or `Re(a) = 0` and `Im(a) > 0`), which makes equality of
//! maps an entrywise comparison.

use core::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::math::{abs2, cis, cos, is_finite, sqrt};
use crate::Complex;

/// Tolerance for algebraic identities on SU(1,1) entries.
pub const ALGEBRAIC_TOL: f64 = 1e-12;
/// Tolerance for fixed-point residuals.
pub const FIXED_POINT_TOL: f64 = 1e-10;

/// An element of SU(1,1) acting on the unit disc by `z ↦ (az + b)/(b*z + a*)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuMatrix {
    a: Complex,
    b: Complex,
}

/// Conjugacy class of a disc automorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapClass {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// Closed-form data attached to a hyperbolic map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolicData {
    /// Multiplier in `(0, 1)`.
    pub multiplier: f64,
    /// `√(Re(a)² − 1) + i·Im(a)`.
    pub lambda: Complex,
    /// Attracting fixed point `λ/b*`.
    pub xi1: Complex,
    /// Repelling fixed point `−λ*/b*`.
    pub xi2: Complex,
    /// `λ/b`.
    pub rotation_phase: Complex,
    /// `λ/|λ|`.
    pub theta_phase: Complex,
}

impl SuMatrix {
    /// Validates `|a|² − |b|² = 1` and sign-normalizes.
    ///
    /// The determinant tolerance is relative to `|a|² + |b|²` so that products
    /// of many generators, whose entries are large, still validate.
    pub fn new(a: Complex, b: Complex) -> Result<Self> {
        if !is_finite(a) || !is_finite(b) {
            return Err(Error::NonFinite("SU(1,1) entries"));
        }
        let det = abs2(a) - abs2(b);
        let scale = (abs2(a) + abs2(b)).max(1.0);
        if (det - 1.0).abs() > ALGEBRAIC_TOL * scale {
            return Err(Error::NotSu11 { det });
        }
        Ok(Self::normalized(a, b))
    }

    pub fn identity() -> Self {
        Self {
            a: Complex::new(1.0, 0.0),
            b: Complex::new(0.0, 0.0),
        }
    }

    /// Rotation `z ↦ e^{2iψ} z`, i.e. `a = e^{iψ}`, `b = 0`.
    pub fn rotation(psi: f64) -> Result<Self> {
        if !psi.is_finite() {
            return Err(Error::NonFinite("rotation angle"));
        }
        Ok(Self::normalized(cis(psi), Complex::new(0.0, 0.0)))
    }

    fn normalized(a: Complex, b: Complex) -> Self {
        let keys = [a.re, a.im, b.re, b.im];
        let flip = keys.iter().find(|v| **v != 0.0).is_some_and(|v| *v < 0.0);
        if flip {
            Self { a: -a, b: -b }
        } else {
            Self { a, b }
        }
    }

    pub fn a(&self) -> Complex {
        self.a
    }

    pub fn b(&self) -> Complex {
        self.b
    }

    pub fn c(&self) -> Complex {
        self.b.conj()
    }

    pub fn d(&self) -> Complex {
        self.a.conj()
    }

    /// `|a|² − |b|²`, which is 1 up to rounding.
    pub fn determinant(&self) -> f64 {
        abs2(self.a) - abs2(self.b)
    }

    /// Largest entrywise distance to `other`.
    pub fn max_entry_diff(&self, other: &SuMatrix) -> f64 {
        (self.a - other.a).norm().max((self.b - other.b).norm())
    }
}

/// The scale shift `G_θ ∘ S_α ∘ G_θ⁻¹` written as an SU(1,1) element.
pub fn make_scale_shift(alpha: f64, theta: f64) -> Result<SuMatrix> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::InvalidAlpha(alpha));
    }
    if !(theta.is_finite() && theta.abs() < FRAC_PI_2) {
        return Err(Error::InvalidTheta(theta));
    }
    let norm = 2.0 * sqrt(alpha) * cos(theta);
    let a = (cis(theta) + cis(-theta) * alpha) / norm;
    let b = Complex::new((1.0 - alpha) / norm, 0.0);
    Ok(SuMatrix::normalized(a, b))
}

/// Matrix product `m1·m2`, so that `apply_map(compose(m1, m2), z) = m1(m2(z))`.
pub fn compose(m1: &SuMatrix, m2: &SuMatrix) -> SuMatrix {
    compose_signed(m1, m2).0
}

/// Like [`compose`], also returning the sign (`±1`) removed by normalization.
///
/// The scaling operator depends on the matrix and not only on the map, so
/// `T_{m1·m2} = sign · T_{compose(m1, m2)}`.
pub fn compose_signed(m1: &SuMatrix, m2: &SuMatrix) -> (SuMatrix, f64) {
    // [[a1, b1], [b1*, a1*]] · [[a2, b2], [b2*, a2*]]
    let a = m1.a * m2.a + m1.b * m2.b.conj();
    let b = m1.a * m2.b + m1.b * m2.a.conj();
    let n = SuMatrix::normalized(a, b);
    let sign = if n.a == a { 1.0 } else { -1.0 };
    (n, sign)
}

pub fn inverse(m: &SuMatrix) -> SuMatrix {
    SuMatrix::normalized(m.a.conj(), -m.b)
}

pub fn classify(m: &SuMatrix) -> MapClass {
    if (m.a - Complex::new(1.0, 0.0)).norm() <= ALGEBRAIC_TOL && m.b.norm() <= ALGEBRAIC_TOL {
        return MapClass::Identity;
    }
    let re = m.a.re.abs();
    if re > 1.0 + ALGEBRAIC_TOL {
        MapClass::Hyperbolic
    } else if (re - 1.0).abs() <= ALGEBRAIC_TOL {
        MapClass::Parabolic
    } else {
        MapClass::Elliptic
    }
}

/// `(Re a − √(Re²a − 1))/(Re a + √(Re²a − 1))`, evaluated as `1/(Re a + √·)²`.
pub fn multiplier(m: &SuMatrix) -> Result<f64> {
    if classify(m) != MapClass::Hyperbolic {
        return Err(Error::NotHyperbolic("multiplier"));
    }
    let re = m.a.re.abs();
    let s = sqrt(re * re - 1.0);
    let sum = re + s;
    Ok(1.0 / (sum * sum))
}

pub fn fixed_points(m: &SuMatrix) -> Result<HyperbolicData> {
    if classify(m) != MapClass::Hyperbolic {
        return Err(Error::NotHyperbolic("fixed points"));
    }
    let multiplier = multiplier(m)?;
    let re = m.a.re.abs();
    let lambda = Complex::new(sqrt(re * re - 1.0), m.a.im);
    let bc = m.b.conj();
    Ok(HyperbolicData {
        multiplier,
        lambda,
        xi1: lambda / bc,
        xi2: -lambda.conj() / bc,
        rotation_phase: lambda / m.b,
        theta_phase: lambda / lambda.norm(),
    })
}

pub fn apply_map(m: &SuMatrix, z: Complex) -> Result<Complex> {
    if !is_finite(z) {
        return Err(Error::NonFinite("map argument"));
    }
    let num = m.a * z + m.b;
    let den = m.c() * z + m.d();
    if den.norm() <= f64::EPSILON * (m.c().norm() * z.norm() + m.d().norm()) {
        return Err(Error::Pole);
    }
    Ok(num / den)
}
