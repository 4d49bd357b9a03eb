//! Crank–Nicolson evolution of the 1D Dirac equation with a scalar
//! potential, i ∂Ψ/∂t = [−iα ∂_x + β(m + S(x))] Ψ, in the representation
//! α = σ_y, β = σ_z, so that
//!   H (U, V) = ( (m+S) U − ∂_x V,  ∂_x U − (m+S) V ).
//!
//! Centered first differences keep the discrete H Hermitian, giving exact
//! density conservation, at the price of a spurious high-momentum doubler
//! branch; initialization therefore enforces that the packet's momentum
//! content stays in the lower quarter of the Brillouin zone.

use num_complex::Complex64;

use super::{
    edge_fraction, sample_potential, snapshot_steps, step_count, trapezoid, window_integral,
    TraceSample,
};
use crate::error::{Error, Result};
use crate::model::{GridSpec, PacketSpec1D, PotentialSpec};
use crate::stationary1d::{dirac_free_quadrature, dirac_window};

/// A two-component spinor field sampled on a grid at time `t`.
#[derive(Debug, Clone)]
pub struct SpinorField1D {
    pub grid: GridSpec,
    pub u: Vec<Complex64>,
    pub v: Vec<Complex64>,
    pub t: f64,
    pub mass: f64,
}

/// Snapshots and bookkeeping from a Dirac evolution run.
#[derive(Debug, Clone)]
pub struct DiracTrace {
    pub snapshots: Vec<SpinorField1D>,
    pub norm_series: Vec<TraceSample>,
    pub max_edge_probability: f64,
    pub steps: u64,
}

/// Largest (m + max|S|)·dt the stepper accepts; beyond this the Cayley
/// rational function misrepresents the mass phase e^{−imt} too badly.
pub const MAX_MASS_PHASE_PER_STEP: f64 = 0.1;

/// Minimal-uncertainty relativistic packet sampled by momentum quadrature
/// and normalized to ρ = ∫(|U|² + |V|²)dx = 1.
///
/// Fails when the support x₀ ± 6σ leaves the grid or when the momentum
/// content would excite the lattice doubler branch:
/// q₀ + 3/σ must stay below (π/dx)/4.
pub fn init_dirac_gaussian(grid: &GridSpec, packet: &PacketSpec1D) -> Result<SpinorField1D> {
    grid.clone().validate()?;
    packet.validate()?;
    if packet.x0 - 6.0 * packet.sigma < grid.xmin || packet.x0 + 6.0 * packet.sigma > grid.xmax {
        return Err(Error::InvalidInput(format!(
            "packet support {} ± {} exceeds grid [{}, {}]",
            packet.x0,
            6.0 * packet.sigma,
            grid.xmin,
            grid.xmax
        )));
    }
    let dx = grid.dx();
    let band_limit = std::f64::consts::PI / dx / 4.0;
    let content = packet.q0 + 3.0 / packet.sigma;
    if content >= band_limit {
        return Err(Error::InvalidInput(format!(
            "momentum content q0 + 3/sigma = {content} reaches the doubler guard {band_limit}; \
             refine dx"
        )));
    }
    // Spatial reach of the packet: Gaussian-like core plus the e^{−m|x|}
    // tail set by the branch point of E(k); beyond it the value is below
    // 1e-15 of the peak and is clipped to zero instead of integrated.
    let clip = 16.0 * packet.sigma + 36.0 / packet.mass;
    // Quadrature resolution: the integrand oscillates as k·(x−x₀), so the
    // panel count scales with (momentum window span) × (spatial reach);
    // 6 rad of linear phase per 12-node panel is comfortably resolved.
    let (klo, khi) = dirac_window(packet);
    let reach = (grid.xmin - packet.x0)
        .abs()
        .max((grid.xmax - packet.x0).abs())
        .min(clip);
    let panels = (((khi - klo) * reach / 6.0).ceil() as usize).max(64);
    let nk = panels * 12;
    let mut u = Vec::with_capacity(grid.nx);
    let mut v = Vec::with_capacity(grid.nx);
    for i in 0..grid.nx {
        if (grid.x_at(i) - packet.x0).abs() > clip {
            u.push(Complex64::default());
            v.push(Complex64::default());
            continue;
        }
        let (ui, vi) = dirac_free_quadrature(packet, grid.x_at(i), 0.0, nk)?;
        u.push(ui);
        v.push(vi);
    }
    u[0] = Complex64::default();
    v[0] = Complex64::default();
    let last = grid.nx - 1;
    u[last] = Complex64::default();
    v[last] = Complex64::default();
    let mut field = SpinorField1D {
        grid: grid.clone(),
        u,
        v,
        t: 0.0,
        mass: packet.mass,
    };
    let rho = density(&field).sqrt();
    for z in field.u.iter_mut().chain(field.v.iter_mut()) {
        *z /= rho;
    }
    Ok(field)
}

/// Vector density ρ = ∫(|U|² + |V|²)dx (trapezoid).
pub fn density(field: &SpinorField1D) -> f64 {
    trapezoid(
        |i| field.u[i].norm_sqr() + field.v[i].norm_sqr(),
        field.grid.nx,
        field.grid.dx(),
    )
}

/// ∫_a^b (|U|² + |V|²)dx with endpoints snapped to the grid.
pub fn probability_in(field: &SpinorField1D, a: f64, b: f64) -> Result<f64> {
    window_integral(
        |i| field.u[i].norm_sqr() + field.v[i].norm_sqr(),
        &field.grid,
        a,
        b,
    )
}

/// Grid point where |U| is largest.
pub fn peak_position_upper(field: &SpinorField1D) -> f64 {
    let mut best = (0.0f64, field.grid.xmin);
    for i in 0..field.grid.nx {
        let a = field.u[i].norm_sqr();
        if a > best.0 {
            best = (a, field.grid.x_at(i));
        }
    }
    best.1
}

/// Complex 2×2 matrix in row-major order.
#[derive(Debug, Clone, Copy)]
struct Mat2 {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl Mat2 {
    fn apply(&self, u: Complex64, v: Complex64) -> (Complex64, Complex64) {
        (self.a * u + self.b * v, self.c * u + self.d * v)
    }

    fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    fn add(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: self.a + o.a,
            b: self.b + o.b,
            c: self.c + o.c,
            d: self.d + o.d,
        }
    }

    fn inv(&self, row: usize) -> Result<Mat2> {
        let det = self.a * self.d - self.b * self.c;
        let scale = self
            .a
            .norm()
            .max(self.b.norm())
            .max(self.c.norm())
            .max(self.d.norm());
        if det.norm() <= 1e-300 * scale.max(1.0) * scale.max(1.0) {
            return Err(Error::SingularPivot(det.norm(), row));
        }
        let inv_det = det.inv();
        Ok(Mat2 {
            a: self.d * inv_det,
            b: -self.b * inv_det,
            c: -self.c * inv_det,
            d: self.a * inv_det,
        })
    }
}

/// Precomputed Cayley step for one (grid, scalar potential, mass, dt)
/// combination: the block-tridiagonal factorization is reused every step.
pub struct DiracPropagator {
    nx: usize,
    dt: f64,
    /// dt/2 · (m + S_j) over interior points: the diagonal blocks of A are
    /// diag(1 + iθ_j, 1 − iθ_j).
    theta: Vec<f64>,
    /// Hopping amplitude dt/(4 dx) of the off-diagonal block
    /// [[0, −iγ], [iγ, 0]].
    gamma: f64,
    /// Inverses of the forward-eliminated diagonal blocks.
    cinv: Vec<Mat2>,
    /// Carry matrices U·C_{j−1}⁻¹ of the elimination (index 0 unused).
    carry: Vec<Mat2>,
}

impl DiracPropagator {
    pub fn new(grid: &GridSpec, pot: &PotentialSpec, mass: f64, dt: f64) -> Result<Self> {
        grid.clone().validate()?;
        pot.validate()?;
        if !(mass > 0.0) || !dt.is_finite() || dt == 0.0 {
            return Err(Error::InvalidInput(format!(
                "propagator needs mass > 0 and a nonzero finite dt (got mass={mass}, dt={dt})"
            )));
        }
        let s = sample_potential(pot, grid);
        let s_max = s.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
        let phase = (mass + s_max) * dt.abs();
        if phase > MAX_MASS_PHASE_PER_STEP * (1.0 + 1e-12) {
            return Err(Error::InvalidInput(format!(
                "(m + max|S|)·dt = {phase} exceeds {MAX_MASS_PHASE_PER_STEP}; shrink dt"
            )));
        }
        let gamma = dt / (4.0 * grid.dx());
        let upper = Mat2 {
            a: Complex64::default(),
            b: Complex64::new(0.0, -gamma),
            c: Complex64::new(0.0, gamma),
            d: Complex64::default(),
        };
        let n = grid.nx - 2;
        let mut theta = Vec::with_capacity(n);
        for j in 1..grid.nx - 1 {
            theta.push(0.5 * dt * (mass + s[j]));
        }
        let mut cinv = Vec::with_capacity(n);
        let mut carry = Vec::with_capacity(n);
        for j in 0..n {
            let diag = Mat2 {
                a: Complex64::new(1.0, theta[j]),
                b: Complex64::default(),
                c: Complex64::default(),
                d: Complex64::new(1.0, -theta[j]),
            };
            let eliminated = if j == 0 {
                carry.push(upper); // placeholder, never used
                diag
            } else {
                // lower block is −upper, so C_j = D_j + U C_{j−1}⁻¹ U
                let g = upper.mul(&cinv[j - 1]);
                carry.push(g);
                diag.add(&g.mul(&upper))
            };
            cinv.push(eliminated.inv(j)?);
        }
        Ok(Self {
            nx: grid.nx,
            dt,
            theta,
            gamma,
            cinv,
            carry,
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Advance the spinor field by one step of `dt`.
    pub fn step(&self, field: &mut SpinorField1D) -> Result<()> {
        if field.u.len() != self.nx || field.v.len() != self.nx {
            return Err(Error::InvalidInput(format!(
                "field has {} points, propagator was built for {}",
                field.u.len(),
                self.nx
            )));
        }
        let n = self.nx - 2;
        let ig = Complex64::new(0.0, self.gamma);
        // rhs = (I − i dt/2 H)Ψ, with the same hard-wall zeros outside
        let mut yu = vec![Complex64::default(); n];
        let mut yv = vec![Complex64::default(); n];
        for j in 0..n {
            let i = j + 1;
            let dc_u = Complex64::new(1.0, -self.theta[j]);
            let dc_v = Complex64::new(1.0, self.theta[j]);
            yu[j] = dc_u * field.u[i] + ig * (field.v[i + 1] - field.v[i - 1]);
            yv[j] = dc_v * field.v[i] - ig * (field.u[i + 1] - field.u[i - 1]);
        }
        // forward elimination: y_j += U C_{j−1}⁻¹ y_{j−1}
        for j in 1..n {
            let (gu, gv) = self.carry[j].apply(yu[j - 1], yv[j - 1]);
            yu[j] += gu;
            yv[j] += gv;
        }
        // back substitution: Ψ_j = C_j⁻¹ (y_j − U Ψ_{j+1})
        let (mut pu, mut pv) = self.cinv[n - 1].apply(yu[n - 1], yv[n - 1]);
        field.u[n] = pu;
        field.v[n] = pv;
        for j in (0..n - 1).rev() {
            let ru = yu[j] + ig * pv;
            let rv = yv[j] - ig * pu;
            let next = self.cinv[j].apply(ru, rv);
            pu = next.0;
            pv = next.1;
            field.u[j + 1] = pu;
            field.v[j + 1] = pv;
        }
        field.u[0] = Complex64::default();
        field.v[0] = Complex64::default();
        field.u[self.nx - 1] = Complex64::default();
        field.v[self.nx - 1] = Complex64::default();
        field.t += self.dt;
        Ok(())
    }
}

/// One Cayley step using the grid's own dt.
pub fn step(field: &mut SpinorField1D, pot: &PotentialSpec) -> Result<()> {
    DiracPropagator::new(&field.grid, pot, field.mass, field.grid.dt)?.step(field)
}

/// March the spinor field to `until`, collecting snapshots and the density
/// series exactly as the Schrödinger `evolve` does.
pub fn evolve(
    field: &mut SpinorField1D,
    pot: &PotentialSpec,
    until: f64,
    snapshot_times: &[f64],
) -> Result<DiracTrace> {
    let prop = DiracPropagator::new(&field.grid, pot, field.mass, field.grid.dt)?;
    let n_steps = step_count(field.t, prop.dt, until)?;
    let snap_at = snapshot_steps(field.t, prop.dt, n_steps, snapshot_times)?;

    let dx = field.grid.dx();
    let total = density(field);
    let dens = |f: &SpinorField1D, i: usize| f.u[i].norm_sqr() + f.v[i].norm_sqr();
    let mut trace = DiracTrace {
        snapshots: Vec::with_capacity(snapshot_times.len()),
        norm_series: vec![TraceSample {
            t: field.t,
            norm: total,
        }],
        max_edge_probability: edge_fraction(|i| dens(field, i), field.grid.nx, dx, total),
        steps: n_steps,
    };
    let take = |field: &SpinorField1D, step_idx: u64, trace: &mut DiracTrace| {
        for &s in &snap_at {
            if s == step_idx {
                trace.snapshots.push(field.clone());
                trace.norm_series.push(TraceSample {
                    t: field.t,
                    norm: density(field),
                });
            }
        }
    };
    take(field, 0, &mut trace);
    for idx in 1..=n_steps {
        prop.step(field)?;
        let frac = edge_fraction(|i| dens(field, i), field.grid.nx, dx, total);
        if frac > trace.max_edge_probability {
            trace.max_edge_probability = frac;
        }
        take(field, idx, &mut trace);
    }
    trace.norm_series.push(TraceSample {
        t: field.t,
        norm: density(field),
    });
    Ok(trace)
}
