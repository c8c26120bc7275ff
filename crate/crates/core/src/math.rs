//! Thin float helpers so the crate builds without `std`.

use crate::Complex;

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub(crate) fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

#[inline]
pub(crate) fn cis(theta: f64) -> Complex {
    let (s, c) = libm::sincos(theta);
    Complex::new(c, s)
}

#[inline]
pub(crate) fn abs2(z: Complex) -> f64 {
    z.re * z.re + z.im * z.im
}

#[inline]
pub(crate) fn is_finite(z: Complex) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// `z^k` for any integer `k` by binary powering.
pub(crate) fn powi(z: Complex, k: i64) -> Complex {
    let mut base = if k < 0 { z.inv() } else { z };
    let mut e = k.unsigned_abs();
    let mut acc = Complex::new(1.0, 0.0);
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

/// `e^{2πi·num/den}` with the numerator reduced modulo `den` first.
pub(crate) fn root_of_unity(num: i128, den: usize) -> Complex {
    let r = num.rem_euclid(den as i128) as f64;
    cis(core::f64::consts::TAU * r / den as f64)
}
