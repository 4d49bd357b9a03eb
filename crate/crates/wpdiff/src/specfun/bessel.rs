//! Spherical Bessel functions j_l(z) of complex argument, l <= 10, and the
//! logarithmic derivative combination used by the hard-sphere-corrected
//! phase shifts.
//!
//! Strategy: trig closed forms (with small-|z| series) for l <= 2, upward
//! recurrence when |z| comfortably exceeds l, and Miller's downward
//! recurrence normalized against j_0 or j_1 otherwise.

use crate::error::{Error, Result};
use num_complex::Complex64;

pub const MAX_ORDER: u32 = 10;
/// |Im z| beyond which sin/cos overflow f64.
const IM_LIMIT: f64 = 705.0;

fn small(z: Complex64) -> bool {
    z.norm() < 0.5
}

/// j_{-1}(z) = cos(z)/z, needed by the log-derivative identity.
fn j_m1(z: Complex64) -> Complex64 {
    z.cos() / z
}

fn j0(z: Complex64) -> Complex64 {
    if small(z) {
        // sin z / z = 1 - z^2/6 + z^4/120 - z^6/5040 + ...
        let z2 = z * z;
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for n in 1..=8 {
            term *= -z2 / ((2 * n) as f64 * (2 * n + 1) as f64);
            sum += term;
        }
        sum
    } else {
        z.sin() / z
    }
}

fn j1(z: Complex64) -> Complex64 {
    if small(z) {
        // z/3 - z^3/30 + z^5/840 - ...  = sum (-1)^n z^(2n+1) * (n+1)/(2n+3)! * 2^? ;
        // use term ratio -z^2/(2n(2n+3)) starting from z/3
        let z2 = z * z;
        let mut term = z / 3.0;
        let mut sum = term;
        for n in 1..=8 {
            term *= -z2 / ((2 * n) as f64 * (2 * n + 3) as f64);
            sum += term;
        }
        sum
    } else {
        z.sin() / (z * z) - z.cos() / z
    }
}

fn j2(z: Complex64) -> Complex64 {
    if small(z) {
        // z^2/15 - z^4/210 + ...
        let z2 = z * z;
        let mut term = z2 / 15.0;
        let mut sum = term;
        for n in 1..=8 {
            term *= -z2 / ((2 * n) as f64 * (2 * n + 5) as f64);
            sum += term;
        }
        sum
    } else {
        let z2 = z * z;
        (3.0 / (z2 * z) - 1.0 / z) * z.sin() - 3.0 / z2 * z.cos()
    }
}

/// Spherical Bessel function j_l(z), l <= 10.
///
/// j_l(0) = delta_{l0}; errors with [`Error::Overflow`] when |Im z| is large
/// enough that the underlying trig functions overflow, and with
/// [`Error::InvalidInput`] for l > 10.
pub fn spherical_j(l: u32, z: Complex64) -> Result<Complex64> {
    if l > MAX_ORDER {
        return Err(Error::InvalidInput(format!(
            "spherical_j supports l <= {MAX_ORDER}, got {l}"
        )));
    }
    if z.im.abs() > IM_LIMIT {
        return Err(Error::Overflow(z.im.abs()));
    }
    if z.norm() == 0.0 {
        return Ok(if l == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        });
    }
    match l {
        0 => return Ok(j0(z)),
        1 => return Ok(j1(z)),
        2 => return Ok(j2(z)),
        _ => {}
    }
    if z.norm() > l as f64 + 2.0 {
        // upward recurrence: j_{n+1} = (2n+1)/z j_n - j_{n-1}, stable here
        let mut jm = j0(z);
        let mut jn = j1(z);
        for n in 1..l {
            let jp = (2 * n + 1) as f64 / z * jn - jm;
            jm = jn;
            jn = jp;
        }
        Ok(jn)
    } else {
        // Miller downward recurrence from a padded start order
        let start = l + 14 + (z.norm() as u32);
        let mut jp = Complex64::new(0.0, 0.0);
        let mut jn = Complex64::new(1e-30, 0.0);
        let mut jl_unnorm = Complex64::new(0.0, 0.0);
        let mut j1_unnorm = Complex64::new(0.0, 0.0);
        let mut j0_unnorm = Complex64::new(0.0, 0.0);
        for n in (0..=start).rev() {
            let jm = (2 * n + 3) as f64 / z * jn - jp;
            jp = jn;
            jn = jm;
            // rescale to dodge overflow of the growing solution
            if jn.norm() > 1e250 {
                jn *= 1e-250;
                jp *= 1e-250;
                jl_unnorm *= 1e-250;
                j1_unnorm *= 1e-250;
                j0_unnorm *= 1e-250;
            }
            if n == l {
                jl_unnorm = jn;
            }
            if n == 1 {
                j1_unnorm = jn;
            }
            if n == 0 {
                j0_unnorm = jn;
            }
        }
        // normalize against whichever of j0/j1 is farther from a zero
        let j0d = j0(z);
        let j1d = j1(z);
        let scale = if j0_unnorm.norm() >= j1_unnorm.norm() {
            j0d / j0_unnorm
        } else {
            j1d / j1_unnorm
        };
        Ok(jl_unnorm * scale)
    }
}

/// Logarithmic derivative z_l(x) = x j_l'(x) / j_l(x).
///
/// Errors with [`Error::InvalidInput`] when x sits on a zero of j_l.
pub fn spherical_j_logderiv(l: u32, z: Complex64) -> Result<Complex64> {
    let jl = spherical_j(l, z)?;
    if jl.norm() < 1e-300 {
        return Err(Error::InvalidInput(format!(
            "log-derivative pole: j_{l}({z}) ~ 0"
        )));
    }
    let jlm1 = if l == 0 { j_m1(z) } else { spherical_j(l - 1, z)? };
    Ok(z * jlm1 / jl - (l + 1) as f64)
}

/// The ratio (z_l - l) / (z_l + l + 1) rewritten as
/// (x j_{l-1} - (2l+1) j_l) / (x j_{l-1}), which stays finite across zeros
/// of j_l. Used by the phase-shift formula.
pub fn logderiv_ratio(l: u32, x: Complex64) -> Result<Complex64> {
    let jl = spherical_j(l, x)?;
    let jlm1 = if l == 0 { j_m1(x) } else { spherical_j(l - 1, x)? };
    let den = x * jlm1;
    if den.norm() < 1e-300 {
        return Err(Error::InvalidInput(format!(
            "phase-shift ratio pole: x j_{}({x}) ~ 0",
            l as i64 - 1
        )));
    }
    Ok((den - (2 * l + 1) as f64 * jl) / den)
}
