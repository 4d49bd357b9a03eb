//! Analytic scattering of a 3D Gaussian packet off a spherical square well.
//!
//! Everything here is closed-form: the incoming packet written through a
//! complex displacement and an erfc front factor, small-`k` square-well
//! phase shifts, the s-wave scattered wave, a backward-direction
//! interference pattern, and planar `|psi|` field maps built from the sum
//! `psi_in + psi_scatt`. Lengths `D` and `d` of complex vectors use the
//! non-conjugating square root `sqrt(sum_j v_j^2)` on the `Re >= 0` branch,
//! which reduces to the Euclidean norm for real vectors.
//!
//! ```text
//! beta      = sigma^2 + i t / 2m
//! D         = |r - r0 - 2i sigma^2 q0|
//! psi_in    = (pi/beta)^{3/2} e^{y1} erfc(-i D / sqrt(beta)),
//!             y1 = -D^2/(4 beta) - q0^2 sigma^2
//! psi_scatt = -(u0/d)(pi/beta)^{3/2} e^{-q0^2 sigma^2}
//!             [ (r+d)/(2r) e^{l1^2} erfc(-l1) - (r-d)/(2r) e^{l2^2} erfc(-l2) ],
//!             l1,2 = i (r +- d) / (2 sqrt(beta)),  d = |r0 + 2i sigma^2 q0|
//! ```
//!
//! Only the `L = 0` partial wave of the scattered sum is kept; higher waves
//! are suppressed by `(kw)^{2l+1}` at the small momenta treated here, and
//! the general angular-momentum expansion is out of scope. Each
//! `e^{l^2} erfc(-l)` pair is evaluated jointly through the Faddeeva
//! function, never as separate factors, so the forms stay finite wherever
//! the underlying integrals are.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{PacketSpec3D, PotentialKind, PotentialSpec};
use crate::specfun::bessel::logderiv_ratio;
use crate::specfun::faddeeva::{erfc, wofz};

/// Length of a complexified 3-vector via the non-conjugating square root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexDisplacement {
    /// `sqrt(sum_j v_j^2)` on the `Re >= 0` branch.
    pub value: Complex64,
    /// The squared sum landed on the negative real axis, where the
    /// `Re >= 0` branch is ambiguous up to sign; `value` is `+i sqrt(|s|)`.
    pub branch_ambiguous: bool,
}

/// `D = |r - r0 - 2i sigma^2 q0|` on the `Re >= 0` branch. With `q0 = 0`
/// this is the Euclidean distance `|r - r0|`.
pub fn complex_displacement(
    r: [f64; 3],
    r0: [f64; 3],
    sigma: f64,
    q0: [f64; 3],
) -> ComplexDisplacement {
    let shift = 2.0 * sigma * sigma;
    let mut s = Complex64::new(0.0, 0.0);
    for j in 0..3 {
        let c = Complex64::new(r[j] - r0[j], -shift * q0[j]);
        s += c * c;
    }
    // principal sqrt maps arg(s) in (-pi, pi] to (-pi/2, pi/2]: Re >= 0
    ComplexDisplacement {
        value: s.sqrt(),
        branch_ambiguous: s.im == 0.0 && s.re < 0.0,
    }
}

/// `d = |r0 + 2i sigma^2 q0|`: the packet center's complexified distance
/// from the well center (the square makes the overall sign of the vector
/// irrelevant).
pub fn packet_displacement(packet: &PacketSpec3D) -> ComplexDisplacement {
    complex_displacement([0.0; 3], packet.r0_vec, packet.sigma, packet.q0_vec)
}

fn beta3d(packet: &PacketSpec3D, t: f64) -> Complex64 {
    Complex64::new(
        packet.sigma * packet.sigma,
        t / (2.0 * packet.mass),
    )
}

fn prefactor(beta: Complex64) -> Complex64 {
    (Complex64::new(std::f64::consts::PI, 0.0) / beta).powf(1.5)
}

fn check_time(t: f64) -> Result<()> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidInput(format!(
            "time must be finite and >= 0, got {t}"
        )));
    }
    Ok(())
}

/// Squared displacement sum without the intermediate square root (used in
/// exponents, where it saves a spurious rounding).
fn displacement_sq(r: [f64; 3], r0: [f64; 3], sigma: f64, q0: [f64; 3]) -> Complex64 {
    let shift = 2.0 * sigma * sigma;
    let mut s = Complex64::new(0.0, 0.0);
    for j in 0..3 {
        let c = Complex64::new(r[j] - r0[j], -shift * q0[j]);
        s += c * c;
    }
    s
}

/// Free 3D Gaussian packet, raw normalization:
/// `(pi/beta)^{3/2} exp(-D^2/(4 beta) - q0^2 sigma^2)`.
///
/// This is the closed form of the full momentum integral; it carries no
/// erfc front factor (compare [`psi_in_3d`], which tends to twice this
/// value once the front has passed).
pub fn free_packet_3d(packet: &PacketSpec3D, r: [f64; 3], t: f64) -> Result<Complex64> {
    packet.validate()?;
    check_time(t)?;
    let beta = beta3d(packet, t);
    let q0n = packet.q0_norm();
    let d2 = displacement_sq(r, packet.r0_vec, packet.sigma, packet.q0_vec);
    let y1 = -d2 / (4.0 * beta) - q0n * q0n * packet.sigma * packet.sigma;
    if y1.re > 700.0 {
        return Err(Error::Overflow(y1.re));
    }
    Ok(prefactor(beta) * y1.exp())
}

/// Incoming packet in the radial (in/outgoing) decomposition:
/// `(pi/beta)^{3/2} e^{y1} erfc(-i D / sqrt(beta))`.
///
/// Behind the front `erfc -> 2` and this is twice [`free_packet_3d`];
/// ahead of it the erfc suppresses the wave. Deep in the ahead region at
/// small `t` the erfc factor grows faster than `e^{y1}` decays and the
/// evaluation reports [`Error::Overflow`] rather than a rounded result.
pub fn psi_in_3d(packet: &PacketSpec3D, r: [f64; 3], t: f64) -> Result<Complex64> {
    packet.validate()?;
    check_time(t)?;
    let beta = beta3d(packet, t);
    let q0n = packet.q0_norm();
    let sig2 = packet.sigma * packet.sigma;
    let disp = complex_displacement(r, packet.r0_vec, packet.sigma, packet.q0_vec);
    let d2 = displacement_sq(r, packet.r0_vec, packet.sigma, packet.q0_vec);
    let y1 = -d2 / (4.0 * beta) - q0n * q0n * sig2;
    let mu = Complex64::new(0.0, -1.0) * disp.value / beta.sqrt();
    let front = erfc(mu)?;
    let envelope = if y1.re > 700.0 {
        return Err(Error::Overflow(y1.re));
    } else {
        y1.exp()
    };
    Ok(prefactor(beta) * envelope * front)
}

/// Double factorial `n!!` with the empty-product conventions
/// `(-1)!! = 0!! = 1`.
fn double_factorial(n: i64) -> f64 {
    let mut acc = 1.0;
    let mut k = n;
    while k > 1 {
        acc *= k as f64;
        k -= 2;
    }
    acc
}

/// True when `k w <= 0.5`, the regime where the small-momentum phase-shift
/// expansion underlying [`phase_shift`] is trustworthy. Informational:
/// evaluation outside it is allowed.
pub fn small_k_regime(k: f64, w: f64) -> bool {
    k * w <= 0.5
}

/// Small-`k` phase shift of partial wave `l` for a spherical square well of
/// radius `w` whose depth enters through `|v0|`:
///
/// ```text
/// tan(delta_l) = -(kw)^{2l+1} / ((2l-1)!! (2l+1)!!) * (z_l - l)/(z_l + l + 1)
/// ```
///
/// with `z_l` the interior log-derivative at `x = w sqrt(k^2 + 2m|v0|)`.
/// Returns `delta_l` in `(-pi/2, pi/2)`; poles of the log-derivative ratio
/// propagate as errors.
pub fn phase_shift(l: u32, k: f64, mass: f64, v0: f64, w: f64) -> Result<f64> {
    if !(k >= 0.0) || !k.is_finite() {
        return Err(Error::InvalidInput(format!(
            "momentum must be finite and >= 0, got {k}"
        )));
    }
    if !(mass > 0.0) || !(w > 0.0) || !v0.is_finite() {
        return Err(Error::InvalidInput(format!(
            "need mass > 0, w > 0, finite v0; got mass={mass} v0={v0} w={w}"
        )));
    }
    let x = w * (k * k + 2.0 * mass * v0.abs()).sqrt();
    let ratio = logderiv_ratio(l, Complex64::new(x, 0.0))?.re;
    let li = l as i64;
    let suppress = (k * w).powi(2 * li as i32 + 1)
        / (double_factorial(2 * li - 1) * double_factorial(2 * li + 1));
    Ok((-suppress * ratio).atan())
}

/// Zero-energy scattering length of the spherical square well:
/// `u0 = w (1 - tan(kappa w)/(kappa w))`, `kappa = sqrt(2 m |v0|)`.
///
/// Errors near the tan poles `kappa w = pi/2 + n pi`, where a zero-energy
/// bound state sits at threshold and `u0` diverges.
pub fn scattering_length(mass: f64, v0: f64, w: f64) -> Result<f64> {
    if !(mass > 0.0) || !(w > 0.0) || !v0.is_finite() {
        return Err(Error::InvalidInput(format!(
            "need mass > 0, w > 0, finite v0; got mass={mass} v0={v0} w={w}"
        )));
    }
    let kw = (2.0 * mass * v0.abs()).sqrt() * w;
    if kw < 1e-8 {
        // Taylor limit; avoids 0/0 at a transparent (or absent) well
        return Ok(-w * kw * kw / 3.0);
    }
    // distance from the nearest tan pole kw = pi/2 + n pi
    let cycles = kw / std::f64::consts::PI - 0.5;
    let pole_gap = (cycles - cycles.round()).abs() * std::f64::consts::PI;
    if pole_gap < 1e-8 {
        return Err(Error::InvalidInput(format!(
            "kappa*w = {kw} sits at a zero-energy bound-state threshold (tan pole)"
        )));
    }
    Ok(w * (1.0 - kw.tan() / kw))
}

/// s-wave scattered amplitude at radius `r`, with the ingredients that
/// build it.
#[derive(Debug, Clone, Copy)]
pub struct SWaveResult {
    /// Scattering length of the well.
    pub u0: f64,
    /// Complexified source distance `|r0 + 2i sigma^2 q0|`.
    pub d: Complex64,
    /// `i (r + d) / (2 sqrt(beta))`.
    pub lambda1: Complex64,
    /// `i (r - d) / (2 sqrt(beta))`; vanishes at `r = d` when `d` is real.
    pub lambda2: Complex64,
    /// The scattered wave value (raw normalization, same convention as
    /// [`psi_in_3d`]).
    pub psi_scatt: Complex64,
    /// True when the predicted `l = 1` contribution at the packet's mean
    /// momentum is below 1% of the `l = 0` one (or the mean momentum is
    /// zero, where the suppression is total).
    pub swave_valid: bool,
}

fn require_square_well(well: &PotentialSpec) -> Result<()> {
    if well.kind != PotentialKind::Square {
        return Err(Error::InvalidInput(
            "3D scattering requires a spherical square well".into(),
        ));
    }
    Ok(())
}

/// Scattered `L = 0` wave of the packet off the well, radius `r > 0`:
///
/// ```text
/// psi_scatt = -(u0/d)(pi/beta)^{3/2} e^{-q0^2 sigma^2}
///             [ (r+d)/(2r) e^{l1^2} erfc(-l1) - (r-d)/(2r) e^{l2^2} erfc(-l2) ]
/// ```
///
/// Each `e^{l^2} erfc(-l)` is evaluated jointly as the Faddeeva value
/// `w(-il)`, which stays bounded where the product does.
pub fn psi_scatt_swave(
    packet: &PacketSpec3D,
    well: &PotentialSpec,
    r: f64,
    t: f64,
) -> Result<SWaveResult> {
    packet.validate()?;
    well.clone().validate()?;
    require_square_well(well)?;
    check_time(t)?;
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidInput(format!(
            "scattered wave needs radius r > 0, got {r}"
        )));
    }
    let u0 = scattering_length(packet.mass, well.v0, well.w)?;
    let beta = beta3d(packet, t);
    let sqb = beta.sqrt();
    let d = packet_displacement(packet).value;
    let lambda1 = Complex64::new(0.0, 1.0) * (r + d) / (2.0 * sqb);
    let lambda2 = Complex64::new(0.0, 1.0) * (r - d) / (2.0 * sqb);
    let q0n = packet.q0_norm();
    let sig2 = packet.sigma * packet.sigma;

    // l = 1 vs l = 0 size estimate at the mean momentum
    let swave_valid = if q0n == 0.0 {
        true
    } else {
        match (
            phase_shift(0, q0n, packet.mass, well.v0, well.w),
            phase_shift(1, q0n, packet.mass, well.v0, well.w),
        ) {
            (Ok(d0), Ok(d1)) => d1.tan().abs() <= 0.01 * d0.tan().abs().max(f64::MIN_POSITIVE),
            _ => false,
        }
    };

    if u0 == 0.0 || d.norm() == 0.0 {
        // transparent well: no scattered wave (d = 0 only reachable with
        // the packet centered on the well, where u0/d would be ill-posed;
        // keep the u0 = 0 short-circuit ahead of it)
        if u0 != 0.0 {
            return Err(Error::InvalidInput(
                "packet centered on the well: d = 0 is degenerate".into(),
            ));
        }
        return Ok(SWaveResult {
            u0,
            d,
            lambda1,
            lambda2,
            psi_scatt: Complex64::new(0.0, 0.0),
            swave_valid,
        });
    }

    let e1 = wofz(Complex64::new(0.0, -1.0) * lambda1)?;
    let e2 = wofz(Complex64::new(0.0, -1.0) * lambda2)?;
    let term = (r + d) / (2.0 * r) * e1 - (r - d) / (2.0 * r) * e2;
    let envelope = (-q0n * q0n * sig2).exp();
    let psi = -(u0 / d) * prefactor(beta) * envelope * term;
    Ok(SWaveResult {
        u0,
        d,
        lambda1,
        lambda2,
        psi_scatt: psi,
        swave_valid,
    })
}

/// Backward-direction interference pattern at radius `r`, long-time form.
///
/// Replacing both erfc factors of the scattered wave by 2 (and the erfc of
/// the incoming wave likewise) collapses `psi_in + psi_scatt` along the
/// back direction to
///
/// ```text
/// psi = (pi/beta)^{3/2} e^x [ c1 e^{-i phi} - c2 e^{i phi} ]
/// x   = -q0^2 sigma^2 - (r m sigma / t)^2 + i m r^2 / (2t)
/// phi = (m r / t) d,   c1 = (2d + u0)/d,   c2 = u0/d
/// ```
///
/// whose zeros march with spacing `pi t / (m Re d)` and whose fringe
/// amplitude obeys `sqrt(c1 c2) = sqrt(u0 (2d + u0)) / d`. Requires the
/// packet to aim at the well (zero impact parameter) and `t > 0`.
pub fn backward_pattern_3d(
    packet: &PacketSpec3D,
    well: &PotentialSpec,
    r: f64,
    t: f64,
) -> Result<Complex64> {
    packet.validate()?;
    well.clone().validate()?;
    require_square_well(well)?;
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::InvalidInput(format!(
            "backward pattern is a long-time form; need t > 0, got {t}"
        )));
    }
    if !r.is_finite() || r < 0.0 {
        return Err(Error::InvalidInput(format!(
            "backward pattern needs radius r >= 0, got {r}"
        )));
    }
    let q0n = packet.q0_norm();
    let r0n = packet.r0_vec.iter().map(|c| c * c).sum::<f64>().sqrt();
    if q0n > 0.0 && r0n > 0.0 {
        let cross = [
            packet.q0_vec[1] * packet.r0_vec[2] - packet.q0_vec[2] * packet.r0_vec[1],
            packet.q0_vec[2] * packet.r0_vec[0] - packet.q0_vec[0] * packet.r0_vec[2],
            packet.q0_vec[0] * packet.r0_vec[1] - packet.q0_vec[1] * packet.r0_vec[0],
        ];
        let cn = cross.iter().map(|c| c * c).sum::<f64>().sqrt();
        if cn > 1e-9 * q0n * r0n {
            return Err(Error::InvalidInput(
                "backward pattern assumes zero impact parameter (q0 parallel to r0)".into(),
            ));
        }
    }
    let d = packet_displacement(packet).value;
    if d.norm() == 0.0 {
        return Err(Error::InvalidInput(
            "packet centered on the well: d = 0 is degenerate".into(),
        ));
    }
    let u0 = scattering_length(packet.mass, well.v0, well.w)?;
    let m = packet.mass;
    let sig = packet.sigma;
    let beta = beta3d(packet, t);
    let x = Complex64::new(
        -q0n * q0n * sig * sig - (r * m * sig / t).powi(2),
        m * r * r / (2.0 * t),
    );
    let phi = (m * r / t) * d;
    let c1 = (2.0 * d + u0) / d;
    let c2 = u0 / d;
    let osc = c1 * (Complex64::new(0.0, -1.0) * phi).exp()
        - c2 * (Complex64::new(0.0, 1.0) * phi).exp();
    Ok(prefactor(beta) * x.exp() * osc)
}

/// Planar `|psi_in + psi_scatt|` map, rescaled by `|beta|^{3/2}` so the
/// overall `t^{-3/2}` spreading is divided out of the picture.
#[derive(Debug, Clone)]
pub struct FieldMap {
    /// Height of the sampled plane `z = const`.
    pub z: f64,
    /// Half-width of the square sample window in `x` and `y`.
    pub extent: f64,
    /// Samples per side.
    pub resolution: usize,
    /// Evaluation time.
    pub t: f64,
    /// Row-major `resolution x resolution` amplitudes; row = `y` index,
    /// column = `x` index, both running from `-extent` to `+extent`.
    pub values: Vec<f64>,
}

impl FieldMap {
    /// Coordinate of sample index `i` along either axis.
    pub fn coord(&self, i: usize) -> f64 {
        -self.extent + 2.0 * self.extent * i as f64 / (self.resolution - 1) as f64
    }

    /// Amplitude at (row, col).
    pub fn at(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.resolution + col]
    }
}

/// Sample `|psi_in + psi_scatt| * |beta|^{3/2}` on the plane `z = z_plane`
/// over `[-extent, extent]^2`. Rows are computed in parallel; the output
/// ordering is deterministic. Errors if a sample point lands exactly on
/// the well center, where the point-scatterer form diverges.
pub fn field_map(
    packet: &PacketSpec3D,
    well: &PotentialSpec,
    z_plane: f64,
    extent: f64,
    resolution: usize,
    t: f64,
) -> Result<FieldMap> {
    packet.validate()?;
    well.clone().validate()?;
    require_square_well(well)?;
    check_time(t)?;
    if resolution < 2 {
        return Err(Error::InvalidInput(format!(
            "field map needs at least 2 samples per side, got {resolution}"
        )));
    }
    if !(extent > 0.0) || !extent.is_finite() || !z_plane.is_finite() {
        return Err(Error::InvalidInput(format!(
            "field map needs finite extent > 0 and plane height, got {extent}, {z_plane}"
        )));
    }
    let beta = beta3d(packet, t);
    let rescale = beta.norm().powf(1.5);
    let coord =
        |i: usize| -> f64 { -extent + 2.0 * extent * i as f64 / (resolution - 1) as f64 };
    let transparent = scattering_length(packet.mass, well.v0, well.w)? == 0.0;
    let rows: Vec<Vec<f64>> = (0..resolution)
        .into_par_iter()
        .map(|row| -> Result<Vec<f64>> {
            let y = coord(row);
            let mut out = Vec::with_capacity(resolution);
            for col in 0..resolution {
                let x = coord(col);
                let point = [x, y, z_plane];
                let r = (x * x + y * y + z_plane * z_plane).sqrt();
                let mut psi = psi_in_3d(packet, point, t)?;
                if !transparent {
                    if r == 0.0 {
                        return Err(Error::InvalidInput(
                            "field map sample fell exactly on the well center".into(),
                        ));
                    }
                    psi += psi_scatt_swave(packet, well, r, t)?.psi_scatt;
                }
                out.push(psi.norm() * rescale);
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FieldMap {
        z: z_plane,
        extent,
        resolution,
        t,
        values: rows.into_iter().flatten().collect(),
    })
}
