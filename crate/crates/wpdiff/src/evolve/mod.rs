//! Grid-based unitary time evolution in one dimension.
//!
//! Both equations are advanced with the Cayley (Crank–Nicolson) form
//! (1 + iH dt/2) psi_next = (1 − iH dt/2) psi, which conserves the discrete
//! norm exactly for Hermitian H and costs one (block-)tridiagonal solve per
//! step. Boundaries are hard walls: the edge samples are pinned to zero and
//! only interior points are unknowns. Callers are responsible for domains
//! large enough that nothing physical reaches the walls; the evolution trace
//! reports the worst norm fraction seen near the edges so that this can be
//! checked after the fact.

pub mod dirac;
pub mod schrodinger;

use crate::error::{Error, Result};
use crate::model::{GridSpec, PotentialKind, PotentialSpec};

/// Cells adjacent to each wall that count as the "edge band" when measuring
/// how much norm has leaked toward the boundaries.
pub const EDGE_BAND_CELLS: usize = 8;

/// One entry of a norm (or density) time series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceSample {
    pub t: f64,
    pub norm: f64,
}

/// Conventional time step for the Schrödinger stepper: mass · dx², the
/// unit Courant-like ratio of the scheme.
pub fn default_dt(mass: f64, dx: f64) -> f64 {
    mass * dx * dx
}

/// Potential samples on the grid. Square wells are cell-averaged (overlap
/// fraction of [x − dx/2, x + dx/2] with [−w, w]) so that the step edges
/// converge at second order regardless of grid alignment; smooth potentials
/// are sampled pointwise.
pub(crate) fn sample_potential(pot: &PotentialSpec, grid: &GridSpec) -> Vec<f64> {
    let nx = grid.nx;
    let dx = grid.dx();
    let half = 0.5 * dx;
    (0..nx)
        .map(|i| {
            let x = grid.x_at(i);
            match pot.kind {
                PotentialKind::Gaussian => pot.evaluate(x),
                PotentialKind::Square => {
                    let overlap = (pot.w.min(x + half) - (-pot.w).max(x - half)).max(0.0);
                    pot.v0 * overlap / dx
                }
            }
        })
        .collect()
}

/// Trapezoid rule over the full grid for a per-point density.
pub(crate) fn trapezoid(density: impl Fn(usize) -> f64, nx: usize, dx: f64) -> f64 {
    if nx < 2 {
        return 0.0;
    }
    let mut acc = 0.5 * (density(0) + density(nx - 1));
    for i in 1..nx - 1 {
        acc += density(i);
    }
    acc * dx
}

/// Trapezoid rule over [a, b] with the endpoints snapped to the nearest grid
/// points, so that adjacent windows tile exactly.
pub(crate) fn window_integral(
    density: impl Fn(usize) -> f64,
    grid: &GridSpec,
    a: f64,
    b: f64,
) -> Result<f64> {
    if !(a < b) {
        return Err(Error::InvalidInput(format!("window [{a}, {b}] is empty")));
    }
    let dx = grid.dx();
    let snap = |v: f64| (((v - grid.xmin) / dx).round() as i64).clamp(0, grid.nx as i64 - 1) as usize;
    let (ia, ib) = (snap(a), snap(b));
    if ia >= ib {
        return Err(Error::InvalidInput(format!(
            "window [{a}, {b}] collapses to a single grid point"
        )));
    }
    let mut acc = 0.5 * (density(ia) + density(ib));
    for i in ia + 1..ib {
        acc += density(i);
    }
    Ok(acc * dx)
}

/// Fraction of the norm sitting within [`EDGE_BAND_CELLS`] of either wall,
/// relative to a caller-supplied total (the run's initial norm); the
/// boundary-quality figure recorded by the evolution loops.
pub(crate) fn edge_fraction(density: impl Fn(usize) -> f64, nx: usize, dx: f64, total: f64) -> f64 {
    let band = EDGE_BAND_CELLS.min(nx / 2);
    let mut edge = 0.0;
    for i in 0..band {
        edge += density(i) + density(nx - 1 - i);
    }
    if total > 0.0 {
        edge * dx / total
    } else {
        0.0
    }
}

/// Map requested snapshot times to whole step indices (nearest completed
/// step), validating that they lie within the evolution interval.
pub(crate) fn snapshot_steps(t0: f64, dt: f64, n_steps: u64, times: &[f64]) -> Result<Vec<u64>> {
    let t_end = t0 + dt * n_steps as f64;
    let span = (t_end - t0).abs().max(dt.abs());
    times
        .iter()
        .map(|&s| {
            if s < t0 - 1e-9 * span || s > t_end + 1e-9 * span {
                return Err(Error::InvalidInput(format!(
                    "snapshot time {s} outside evolution interval [{t0}, {t_end}]"
                )));
            }
            Ok((((s - t0) / dt).round() as i64).clamp(0, n_steps as i64) as u64)
        })
        .collect()
}

/// Number of whole steps that lands closest to `until`.
pub(crate) fn step_count(t0: f64, dt: f64, until: f64) -> Result<u64> {
    if until < t0 - 1e-12 * t0.abs().max(1.0) {
        return Err(Error::InvalidInput(format!(
            "evolution target {until} precedes current time {t0}"
        )));
    }
    Ok(((until - t0) / dt).round().max(0.0) as u64)
}
