//! Long-time closed forms for the 1D reflected diffraction pattern.
//!
//! For `t` large and observation points deep in the backward region, the
//! stationary-phase evaluation of the exact packet integral gives an
//! incoming branch and a soft-reflected branch (reflection factor -1, the
//! `k -> 0` limit of the square-well amplitude):
//!
//! ```text
//! psi_in   =  sqrt(pi/beta) e^u,     u = i(m/2t)(x-x0)^2 - (m sigma/t)^2 (x - x0 - q0 t/m)^2
//! psi_refl = -sqrt(pi/beta) e^ut,   ut = i(m/2t)(x+x0)^2 - (m sigma/t)^2 (x + x0 + q0 t/m)^2
//! ```
//!
//! with `beta = sigma^2 + it/2m`. Their interference produces the traveling
//! pattern `|psi| = 2 sqrt(2 m pi / t) e^{-z} sqrt(sin^2(m x x0 / t) +
//! sinh^2(2 sigma^2 q0 m x / t))`, `z = sigma^2 (m^2 (x^2 + x0^2)/t^2 + q0^2)`,
//! whose zeros march outward with spacing `pi t / (m |x0|)`. All values here
//! use the raw normalization of the momentum integrals (multiply by
//! `stationary1d::packet_norm_factor` for unit-norm packets).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::PacketSpec1D;

/// Factor structure of the closed-form pattern at one `(x, t)`.
#[derive(Debug, Clone, Copy)]
pub struct AsymptoticPattern {
    /// `2 sqrt(2 m pi / t)`.
    pub amplitude_prefactor: f64,
    /// Gaussian exponent `sigma^2 (m^2 (x^2 + x0^2)/t^2 + q0^2)`; always `>= sigma^2 q0^2`.
    pub z: f64,
    /// Oscillating argument `m x x0 / t`.
    pub sin_arg_real: f64,
    /// Blurring argument `2 sigma^2 q0 m x / t`.
    pub sin_arg_imag: f64,
}

impl AsymptoticPattern {
    /// `|psi|` from the stored factors, overflow-safe: the exponent bound
    /// `|sin_arg_imag| <= z` (arithmetic-geometric mean) keeps the
    /// `e^{-z} sinh` product finite, so it is evaluated as `e^{b - z}`.
    pub fn amplitude(&self) -> f64 {
        let b = self.sin_arg_imag.abs();
        let sin_part = self.sin_arg_real.sin() * (-self.z).exp();
        let sinh_part = if b > 0.0 {
            (b - self.z).exp() * 0.5 * (1.0 - (-2.0 * b).exp())
        } else {
            0.0
        };
        self.amplitude_prefactor * sin_part.hypot(sinh_part)
    }
}

/// Closed-form value carrying its regime-of-validity flag. The flag is
/// informational: the long-distance breakdown is part of the physics being
/// reproduced, so out-of-regime evaluation is allowed.
#[derive(Debug, Clone, Copy)]
pub struct FlaggedValue {
    pub value: Complex64,
    /// True when `t >= 10 * 2 m sigma^2`, `|x| >= 10 |x0|` and `|x0| >= 10 w`.
    pub in_validity_regime: bool,
}

fn beta(packet: &PacketSpec1D, t: f64) -> Complex64 {
    Complex64::new(packet.sigma * packet.sigma, t / (2.0 * packet.mass))
}

/// Incoming branch of the long-time packet (raw normalization).
pub fn psi_in_asymptotic(packet: &PacketSpec1D, x: f64, t: f64) -> Complex64 {
    let m = packet.mass;
    let sig_m_t = m * packet.sigma / t;
    let dx = x - packet.x0;
    let drift = dx - packet.q0 * t / m;
    let u = Complex64::new(-(sig_m_t * drift) * (sig_m_t * drift), m / (2.0 * t) * dx * dx);
    (std::f64::consts::PI / beta(packet, t)).sqrt() * u.exp()
}

/// Soft-reflected branch (raw normalization). The `k -> 0` reflection factor
/// `F = -1` is folded in, hence the overall minus sign; with it,
/// `psi_in + psi_refl` has its node at `x = 0` as the mirror structure requires.
pub fn psi_refl_asymptotic(packet: &PacketSpec1D, well_width: f64, x: f64, t: f64) -> FlaggedValue {
    let m = packet.mass;
    let sig_m_t = m * packet.sigma / t;
    let sx = x + packet.x0;
    let drift = sx + packet.q0 * t / m;
    let ut = Complex64::new(-(sig_m_t * drift) * (sig_m_t * drift), m / (2.0 * t) * sx * sx);
    let value = -(std::f64::consts::PI / beta(packet, t)).sqrt() * ut.exp();
    let in_validity_regime = t >= 20.0 * m * packet.sigma * packet.sigma
        && x.abs() >= 10.0 * packet.x0.abs()
        && packet.x0.abs() >= 10.0 * well_width;
    FlaggedValue { value, in_validity_regime }
}

/// Factor structure of the closed-form pattern.
pub fn asymptotic_pattern(packet: &PacketSpec1D, x: f64, t: f64) -> AsymptoticPattern {
    let m = packet.mass;
    let s2 = packet.sigma * packet.sigma;
    AsymptoticPattern {
        amplitude_prefactor: 2.0 * (2.0 * m * std::f64::consts::PI / t).sqrt(),
        z: s2 * (m * m * (x * x + packet.x0 * packet.x0) / (t * t) + packet.q0 * packet.q0),
        sin_arg_real: m * x * packet.x0 / t,
        sin_arg_imag: 2.0 * s2 * packet.q0 * m * x / t,
    }
}

/// `|psi_in + psi_refl|` in closed form (raw normalization).
pub fn pattern_amplitude(packet: &PacketSpec1D, x: f64, t: f64) -> f64 {
    asymptotic_pattern(packet, x, t).amplitude()
}

/// Spacing `pi t / (m |x0|)` of the pattern zeros (and peaks).
pub fn predict_peak_spacing(packet: &PacketSpec1D, t: f64) -> Result<f64> {
    if packet.x0 == 0.0 {
        return Err(Error::InvalidInput(
            "pattern spacing diverges for a packet starting at the origin (x0 = 0)".into(),
        ));
    }
    if !(t > 0.0) {
        return Err(Error::InvalidInput(format!("spacing needs t > 0, got {t}")));
    }
    Ok(std::f64::consts::PI * t / (packet.mass * packet.x0.abs()))
}

/// Blurring factor `sinh(2 sigma^2 q0 k_max)` with the working estimate
/// `k_max = 1/(2w)`: above 1 the sinh term swamps the sin oscillation at the
/// edge of the pattern and the reflected wave merges into a single hump.
pub fn blur_factor(packet: &PacketSpec1D, well_width: f64) -> f64 {
    (packet.sigma * packet.sigma * packet.q0 / well_width).sinh()
}
