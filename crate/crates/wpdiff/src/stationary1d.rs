//! Stationary scattering solutions of the 1D square well and their
//! packet-weighted momentum integrals.
//!
//! The well occupies `[-w, w]` (total width `2w`, signed depth `v0 < 0`).
//! In the backward region `x < -w` the stationary Schrodinger solution at
//! momentum `k` is
//!
//! ```text
//! phi(k, x) = exp(ik(x - x0)) + F(k) exp(-ik(x + x0 + 2w))
//! ```
//!
//! with the reflection amplitude `F = E/A`,
//! `E = -2i(k^2 - k'^2) sin(2k'w)`, `A = (k+k')^2 e^{-2ik'w} - (k-k')^2 e^{2ik'w}`,
//! and interior momentum `k' = sqrt(k^2 - 2 m v0)`. The `x0`-dependent phase
//! referencing makes `phi` directly usable as the integrand of the exact
//! time-dependent packet
//!
//! ```text
//! psi(x, t) = INT phi(k, x) exp(-sigma^2 (k - q0)^2) exp(-i k^2 t / 2m) dk
//! ```
//!
//! which `packet_backward_quadrature` evaluates at any `t` by splitting the
//! integrand into the smooth reflection factor times the exact Gaussian
//! kernel (see `specfun::integrate_gauss_kernel`). The Dirac analogue uses
//! the square scalar well's two-component matching coefficients and a plain
//! composite quadrature (its phase `e^{-iEt}` is not a Gaussian kernel, so
//! the op is intended for moderate `t`; the long-time Dirac figures run
//! through the grid evolver instead).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::PacketSpec1D;
use crate::specfun::{gauss_legendre, integrate_gauss_kernel};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Stationary square-well amplitudes at one momentum.
///
/// `d` (the incident amplitude) is identically 1 in this normalization;
/// `f = e_num / a_den` is the reflection amplitude. For real `k > 0` and a
/// well, `|f| <= 1` and `|f|^2 + |transmission|^2 = 1`.
#[derive(Debug, Clone, Copy)]
pub struct SchrodingerCoeffs {
    pub k: f64,
    /// Interior momentum `sqrt(k^2 - 2 m v0)`; imaginary for tunneling
    /// through a barrier, real and positive for a well.
    pub kprime: Complex64,
    pub d: Complex64,
    pub e_num: Complex64,
    pub a_den: Complex64,
    pub f: Complex64,
}

/// Reflection amplitude `F(k)` of the square well/barrier, total function.
///
/// Evaluated in a form scaled by `u = exp(2ik'w)` so that strongly evanescent
/// barriers (`|u| << 1`) never overflow:
/// `F = -(k^2-k'^2)(u^2-1) / ((k+k')^2 - (k-k')^2 u^2)`.
/// `F` is an even function of `k'`, hence analytic across the barrier branch
/// point. The only true degeneracy is `k = 0` exactly at a zero-energy
/// resonance (`sin(2k'w) = 0`), where the limit direction matters; there the
/// momentum is nudged by 1e-9 to return the generic limit.
pub fn reflection_coefficient(k: f64, mass: f64, v0: f64, w: f64) -> Complex64 {
    let mut k = k;
    loop {
        let kc = Complex64::new(k, 0.0);
        let kprime = Complex64::new(k * k - 2.0 * mass * v0, 0.0).sqrt();
        let u = (2.0 * I * kprime * w).exp();
        let num = -(kc * kc - kprime * kprime) * (u * u - 1.0);
        let den = (kc + kprime).powi(2) - (kc - kprime).powi(2) * u * u;
        let scale = (kc + kprime).norm_sqr() + (kc - kprime).norm_sqr() * u.norm_sqr();
        if den.norm() > 1e-14 * scale.max(f64::MIN_POSITIVE) {
            return num / den;
        }
        k += 1e-9;
    }
}

/// Transmission amplitude of the same well/barrier (standard matching; not
/// part of the backward-region solution, used for flux conservation checks
/// and stationary transmission estimates). Scaled by `u` like
/// `reflection_coefficient`; underflows to exactly 0 for opaque barriers.
pub fn transmission_coefficient(k: f64, mass: f64, v0: f64, w: f64) -> Complex64 {
    let kc = Complex64::new(k, 0.0);
    let kprime = Complex64::new(k * k - 2.0 * mass * v0, 0.0).sqrt();
    let u = (2.0 * I * kprime * w).exp();
    // t = e^{-2ikw} u / ((u^2+1)/2 - (k^2+k'^2)/(4kk') (u^2-1))
    let den = (u * u + 1.0) * 0.5
        - (kc * kc + kprime * kprime) / (4.0 * kc * kprime) * (u * u - 1.0);
    (-2.0 * I * kc * w).exp() * u / den
}

/// Full coefficient set at one momentum for a square well (`v0 < 0`).
pub fn schrodinger_coeffs(k: f64, mass: f64, v0: f64, w: f64) -> Result<SchrodingerCoeffs> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::InvalidInput(format!("stationary momentum must be > 0, got {k}")));
    }
    if !(mass > 0.0) || !(w > 0.0) {
        return Err(Error::InvalidInput("mass and width must be > 0".into()));
    }
    let kc = Complex64::new(k, 0.0);
    let kprime = Complex64::new(k * k - 2.0 * mass * v0, 0.0).sqrt();
    let phase = (2.0 * I * kprime * w).exp();
    let e_num = -2.0 * I * (kc * kc - kprime * kprime) * (kprime * (2.0 * w)).sin();
    let a_den = (kc + kprime).powi(2) / phase - (kc - kprime).powi(2) * phase;
    let scale = (kc + kprime).norm_sqr() / phase.norm() + (kc - kprime).norm_sqr() * phase.norm();
    if a_den.norm() <= 1e-14 * scale.max(f64::MIN_POSITIVE) {
        // unreachable for real k > 0 against a well; defensive for extensions
        return Err(Error::InvalidInput(format!(
            "degenerate stationary system at k = {k} (|A| ~ 0)"
        )));
    }
    let f = reflection_coefficient(k, mass, v0, w);
    Ok(SchrodingerCoeffs { k, kprime, d: Complex64::new(1.0, 0.0), e_num, a_den, f })
}

/// Two-component square-scalar-well matching coefficients at one momentum.
///
/// `b` multiplies the reflected upper component, `f` the transmitted one,
/// `c`/`d` the interior right/left movers; the interior effective mass is
/// `mstar = mass + v0` and `kprime = sqrt(E^2 - mstar^2)`. The set carries a
/// global phase `exp(2ikw)` relative to face-by-face matching (it reproduces
/// free transmission as `F -> e^{2ikw}` when `v0 -> 0`); magnitudes and flux
/// balance `|B|^2 + |F|^2 = 1` are unaffected.
#[derive(Debug, Clone, Copy)]
pub struct DiracCoeffs {
    pub k: f64,
    pub energy: f64,
    pub mstar: f64,
    /// Interior momentum; imaginary when `E < |mstar|` (evanescent interior).
    pub kprime: Complex64,
    pub evanescent: bool,
    pub g: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    pub f: Complex64,
    pub delta: Complex64,
}

/// Matching coefficients at momentum `k`. Negative `k` is accepted: the
/// packet integrals run over a momentum window that may cross zero, and the
/// matching algebra is valid for any `k != 0` (it is the analytic
/// continuation of the physical `k > 0` solution).
pub fn dirac_coeffs(k: f64, mass: f64, v0: f64, w: f64) -> Result<DiracCoeffs> {
    if k == 0.0 || !k.is_finite() {
        return Err(Error::InvalidInput(format!("stationary momentum must be nonzero, got {k}")));
    }
    if !(mass > 0.0) || !(w > 0.0) {
        return Err(Error::InvalidInput("mass and width must be > 0".into()));
    }
    let energy = (k * k + mass * mass).sqrt();
    let mstar = mass + v0;
    let ksq = energy * energy - mstar * mstar;
    let evanescent = ksq < 0.0;
    let kprime = Complex64::new(ksq, 0.0).sqrt();
    let g = kprime * (energy + mass) / (k * (energy + mstar));
    let e1 = (I * k * w).exp();
    let e3 = (I * kprime * w).exp();
    let e4 = (-I * kprime * w).exp();
    let delta = e3 * e3 * (1.0 - g) * (1.0 - g) - e4 * e4 * (1.0 + g) * (1.0 + g);
    if delta.norm() <= 1e-14 * (e3.norm_sqr() * (1.0 - g).norm_sqr() + e4.norm_sqr() * (1.0 + g).norm_sqr()) {
        return Err(Error::InvalidInput(format!("degenerate two-component system at k = {k}")));
    }
    let b = (1.0 - g * g) * (e3 * e3 - e4 * e4) / delta;
    let c = -2.0 * e1 * e4 * (1.0 + g) / delta;
    let d = 2.0 * e1 * e3 * (1.0 - g) / delta;
    let f = Complex64::new(-4.0, 0.0) * g / delta;
    Ok(DiracCoeffs { k, energy, mstar, kprime, evanescent, g, b, c, d, f, delta })
}

/// Stationary two-component solution at momentum `k`, evaluated at `x`
/// (piecewise across the three regions). Returns `(phi1, phi2)`.
pub fn dirac_spinor_at(coeffs: &DiracCoeffs, mass: f64, w: f64, x: f64) -> (Complex64, Complex64) {
    let k = coeffs.k;
    let e = coeffs.energy;
    if x < -w {
        let fwd = (I * k * x).exp();
        let bwd = (-I * k * x).exp();
        let ratio = I * k / (e + mass);
        (fwd + coeffs.b * bwd, ratio * (fwd - coeffs.b * bwd))
    } else if x <= w {
        let fwd = (I * coeffs.kprime * x).exp();
        let bwd = (-I * coeffs.kprime * x).exp();
        let ratio = I * coeffs.kprime / (e + coeffs.mstar);
        (
            coeffs.c * fwd + coeffs.d * bwd,
            ratio * (coeffs.c * fwd - coeffs.d * bwd),
        )
    } else {
        let fwd = (I * k * x).exp();
        let ratio = I * k / (e + mass);
        (coeffs.f * fwd, ratio * coeffs.f * fwd)
    }
}

// ---------------------------------------------------------------------------
// Packet quadratures
// ---------------------------------------------------------------------------

/// Normalization constant turning the raw momentum integral into a
/// unit-norm packet: `psi_normalized = packet_norm_factor(sigma) * psi_raw`.
pub fn packet_norm_factor(sigma: f64) -> f64 {
    use std::f64::consts::PI;
    sigma.sqrt() / (PI.sqrt() * (2.0 * PI).powf(0.25))
}

/// Closed-form free Gaussian packet, unit norm: the exact evolution of
/// `(2 pi sigma^2)^{-1/4} exp(iq0(x-x0) - (x-x0)^2/(4 sigma^2))`.
pub fn free_packet_closed(packet: &PacketSpec1D, x: f64, t: f64) -> Complex64 {
    let sigma = packet.sigma;
    let beta = Complex64::new(sigma * sigma, t / (2.0 * packet.mass));
    let c = Complex64::new(-2.0 * sigma * sigma * packet.q0, -(x - packet.x0));
    let raw = (std::f64::consts::PI / beta).sqrt()
        * (c * c / (4.0 * beta) - sigma * sigma * packet.q0 * packet.q0).exp();
    packet_norm_factor(sigma) * raw
}

/// Exact time-dependent packet in the backward region of a square well,
/// raw normalization (the bare momentum integral, no packet prefactor).
///
/// The incident part integrates in closed form over the full line; the
/// reflected part is `INT F(k) exp(-beta k^2 - c k) dk` over the window
/// `q0 +- 6/sigma` (discarded weight < 1e-14 of the peak), integrated with
/// `ceil(nk/12)` Gaussian-kernel panels. Convergence is verified by doubling
/// the panel count; the finer result is returned.
pub fn packet_backward_quadrature(
    packet: &PacketSpec1D,
    v0: f64,
    w: f64,
    x: f64,
    t: f64,
    nk: usize,
) -> Result<Complex64> {
    if nk < 64 {
        return Err(Error::InvalidInput(format!("nk must be >= 64, got {nk}")));
    }
    if v0 > 0.0 {
        return Err(Error::InvalidInput(
            "backward-region packet quadrature covers wells (v0 <= 0)".into(),
        ));
    }
    if !(w > 0.0) {
        return Err(Error::InvalidInput(format!("width must be > 0, got {w}")));
    }
    if x > -w {
        return Err(Error::InvalidInput(format!(
            "backward-region form needs x <= -w, got x = {x}, w = {w}"
        )));
    }
    if t < 0.0 {
        return Err(Error::InvalidInput(format!("time must be >= 0, got {t}")));
    }
    let sigma = packet.sigma;
    let q0 = packet.q0;
    let mass = packet.mass;
    let beta = Complex64::new(sigma * sigma, t / (2.0 * mass));
    let prefactor = (-sigma * sigma * q0 * q0).exp();

    // incident term: full-line Gaussian, exact
    let c_in = Complex64::new(-2.0 * sigma * sigma * q0, -(x - packet.x0));
    let incident = (std::f64::consts::PI / beta).sqrt() * (c_in * c_in / (4.0 * beta)).exp();

    // reflected term: smooth F(k) against the Gaussian kernel
    let c_refl = Complex64::new(-2.0 * sigma * sigma * q0, x + packet.x0 + 2.0 * w);
    let a = q0 - 6.0 / sigma;
    let b = q0 + 6.0 / sigma;
    let smooth = |k: f64| reflection_coefficient(k, mass, v0, w);
    let panels = nk.div_ceil(12);
    let coarse = integrate_gauss_kernel(&smooth, a, b, beta, c_refl, panels)?;
    let fine = integrate_gauss_kernel(&smooth, a, b, beta, c_refl, 2 * panels)?;
    let scale = fine.norm().max(incident.norm()).max(f64::MIN_POSITIVE);
    let delta = (fine - coarse).norm() / scale;
    if delta > 1e-8 {
        return Err(Error::NonConvergence {
            delta,
            detail: "reflected-term panel doubling did not converge; raise nk".into(),
        });
    }
    Ok(prefactor * (incident + fine))
}

/// Relativistic minimal-uncertainty weight exponent
/// `2 sigma^2 (E(k) E0 - k q0 - m^2)`; zero at `k = q0`, positive elsewhere.
fn dirac_weight_exponent(k: f64, packet: &PacketSpec1D) -> f64 {
    let m = packet.mass;
    let e = (k * k + m * m).sqrt();
    let e0 = (packet.q0 * packet.q0 + m * m).sqrt();
    2.0 * packet.sigma * packet.sigma * (e * e0 - k * packet.q0 - m * m)
}

/// Momentum window `[k_lo, k_hi]` outside which the relativistic weight is
/// below `e^{-36}` of its peak. The weight has exponential (not Gaussian)
/// tails, so the edges are located by bisection rather than a fixed multiple
/// of `1/sigma`.
/// Momentum window outside which the relativistic weight drops below
/// e^{−36} of its peak. The tails are exponential with rates
/// 2σ²(E₀ ± q₀), so for σ·m ≲ 1 the window is far wider than a Gaussian
/// ±6/(2σ) estimate; quadrature node counts must scale with its span.
pub fn dirac_window(packet: &PacketSpec1D) -> (f64, f64) {
    let target = 36.0;
    let side = |dir: f64| -> f64 {
        let mut step = 1.0 / packet.sigma;
        let mut hi = packet.q0 + dir * step;
        while dirac_weight_exponent(hi, packet) < target {
            step *= 2.0;
            hi = packet.q0 + dir * step;
        }
        let mut lo = packet.q0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if dirac_weight_exponent(mid, packet) < target {
                lo = mid;
            } else {
                hi = mid;
            }
            if (hi - lo).abs() <= 1e-12 * (1.0 + hi.abs()) {
                break;
            }
        }
        hi
    };
    (side(-1.0), side(1.0))
}

fn dirac_integrand_free(
    packet: &PacketSpec1D,
    x: f64,
    t: f64,
    k: f64,
) -> (Complex64, Complex64) {
    let m = packet.mass;
    let e = (k * k + m * m).sqrt();
    let weight = (-dirac_weight_exponent(k, packet)).exp();
    let phase = (I * (k * (x - packet.x0) - e * t)).exp();
    let upper = weight * phase;
    (upper, I * k / (e + m) * upper)
}

/// Free two-component packet `(U, V)` by direct momentum quadrature, raw
/// normalization. Composite Gauss-Legendre over the bisected weight window
/// with `ceil(nk/12)` panels of 12 nodes, doubling convergence check.
/// Intended for moderate `t` (phase resolution grows with `t`; raise `nk`
/// accordingly or use the grid evolver).
pub fn dirac_free_quadrature(
    packet: &PacketSpec1D,
    x: f64,
    t: f64,
    nk: usize,
) -> Result<(Complex64, Complex64)> {
    dirac_quadrature_impl(packet, t, nk, |k| dirac_integrand_free(packet, x, t, k))
}

/// Two-component packet `(U, V)` scattering off the square scalar well,
/// raw normalization. The spinor is the piecewise stationary solution of
/// `dirac_coeffs`, so the value is exact in all three regions; the
/// backward region `x < -w` is the primary contract.
pub fn dirac_packet_quadrature(
    packet: &PacketSpec1D,
    v0: f64,
    w: f64,
    x: f64,
    t: f64,
    nk: usize,
) -> Result<(Complex64, Complex64)> {
    if !(w > 0.0) {
        return Err(Error::InvalidInput(format!("width must be > 0, got {w}")));
    }
    let m = packet.mass;
    dirac_quadrature_impl(packet, t, nk, |k| {
        let coeffs = match dirac_coeffs(k, m, v0, w) {
            Ok(c) => c,
            // nudge off the degenerate point; measure zero in the integral
            Err(_) => dirac_coeffs(k + 1e-9, m, v0, w).expect("nudged coefficients"),
        };
        let (phi1, phi2) = dirac_spinor_at(&coeffs, m, w, x);
        let e = coeffs.energy;
        let weight = (-dirac_weight_exponent(k, packet)).exp();
        let phase = (I * (-k * packet.x0 - e * t)).exp();
        (phi1 * weight * phase, phi2 * weight * phase)
    })
}

fn dirac_quadrature_impl<G>(
    packet: &PacketSpec1D,
    t: f64,
    nk: usize,
    integrand: G,
) -> Result<(Complex64, Complex64)>
where
    G: Fn(f64) -> (Complex64, Complex64),
{
    if nk < 64 {
        return Err(Error::InvalidInput(format!("nk must be >= 64, got {nk}")));
    }
    if t < 0.0 {
        return Err(Error::InvalidInput(format!("time must be >= 0, got {t}")));
    }
    let (lo, hi) = dirac_window(packet);
    let run = |panels: usize| -> (Complex64, Complex64, f64) {
        let rule = gauss_legendre(12);
        let (nodes, weights) = &*rule;
        let h = (hi - lo) / panels as f64;
        let mut u = Complex64::new(0.0, 0.0);
        let mut v = Complex64::new(0.0, 0.0);
        let mut wsum = 0.0;
        for p in 0..panels {
            let mid = lo + (p as f64 + 0.5) * h;
            for (s, wgt) in nodes.iter().zip(weights) {
                let k = mid + 0.5 * h * s;
                let (du, dv) = integrand(k);
                u += wgt * 0.5 * h * du;
                v += wgt * 0.5 * h * dv;
                wsum += wgt * 0.5 * h * (-dirac_weight_exponent(k, packet)).exp();
            }
        }
        (u, v, wsum)
    };
    let panels = nk.div_ceil(12);
    let (u1, v1, _) = run(panels);
    let (u2, v2, wsum) = run(2 * panels);
    // convergence is judged against the packet's natural amplitude scale
    // (the weight integral), not the local value: far in the spatial tails
    // the integral cancels to roundoff of that scale, which is convergence,
    // not failure
    let scale = u2.norm().max(v2.norm()).max(wsum).max(f64::MIN_POSITIVE);
    let delta = ((u2 - u1).norm().max((v2 - v1).norm())) / scale;
    if delta > 1e-8 {
        return Err(Error::NonConvergence {
            delta,
            detail: "two-component momentum quadrature did not converge; raise nk".into(),
        });
    }
    Ok((u2, v2))
}
