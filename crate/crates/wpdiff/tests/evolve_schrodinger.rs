//! Scheme correctness for the Schrödinger stepper: unitarity, reversibility,
//! convergence order, and agreement with the closed-form and quadrature
//! references.

use wpdiff::evolve::schrodinger::{
    evolve, init_gaussian, mean_momentum, mean_position, norm, peak_position, probability_in,
    SchrodingerPropagator,
};
use wpdiff::model::{GridSpec, PacketSpec1D, PotentialKind, PotentialSpec};
use wpdiff::stationary1d::{free_packet_closed, packet_backward_quadrature, packet_norm_factor};

fn grid(xmin: f64, xmax: f64, nx: usize, dt: f64) -> GridSpec {
    GridSpec {
        xmin,
        xmax,
        nx,
        dt,
        t_final: 0.0,
        snapshot_times: Vec::new(),
    }
}

fn packet(sigma: f64, q0: f64, x0: f64, mass: f64) -> PacketSpec1D {
    PacketSpec1D { sigma, q0, x0, mass }
}

fn free_square() -> PotentialSpec {
    PotentialSpec {
        kind: PotentialKind::Square,
        v0: 0.0,
        w: 1.0,
    }
}

#[test]
fn init_normalizes_centers_and_rejects_tight_grids() {
    let g = grid(-30.0, 30.0, 1201, 0.0025);
    let p = packet(1.5, 0.7, -4.0, 1.0);
    let f = init_gaussian(&g, &p).unwrap();
    assert!((norm(&f) - 1.0).abs() < 1e-12);
    assert_eq!(f.t, 0.0);
    assert!((mean_position(&f) + 4.0).abs() < g.dx());
    assert!((mean_momentum(&f) - 0.7).abs() < 1e-3);

    let off = packet(1.5, 0.7, -22.0, 1.0);
    assert!(init_gaussian(&g, &off).is_err());
}

#[test]
fn free_evolution_matches_closed_form_after_200_steps() {
    let dx = 0.0125;
    let g = grid(-30.0, 30.0, 4801, 1.0 * dx * dx);
    let p = packet(2.0, 0.25, 0.0, 1.0);
    let mut f = init_gaussian(&g, &p).unwrap();
    let prop = SchrodingerPropagator::new(&g, &free_square(), p.mass, g.dt).unwrap();
    for _ in 0..200 {
        prop.step(&mut f).unwrap();
    }
    let mut worst = 0.0f64;
    for i in 0..g.nx {
        let exact = free_packet_closed(&p, g.x_at(i), f.t).norm();
        worst = worst.max((f.psi[i].norm() - exact).abs());
    }
    assert!(worst <= 1e-6, "free-evolution max-abs error {worst:e}");
}

#[test]
fn peak_travels_at_group_velocity() {
    let g = grid(-25.0, 25.0, 1001, 0.0025);
    let p = packet(1.0, 1.0, -10.0, 1.0);
    let mut f = init_gaussian(&g, &p).unwrap();
    let prop = SchrodingerPropagator::new(&g, &free_square(), p.mass, g.dt).unwrap();
    for _ in 0..4000 {
        prop.step(&mut f).unwrap();
    }
    let expected = p.x0 + p.q0 * f.t / p.mass;
    assert!((peak_position(&f) - expected).abs() <= g.dx() + 1e-12);
}

#[test]
fn halving_dx_and_dt_cuts_error_at_least_fourfold() {
    let p = packet(1.0, 1.0, -5.0, 1.0);
    let run = |dx: f64, dt: f64| -> f64 {
        let nx = ((50.0 / dx).round() as usize) + 1;
        let g = grid(-25.0, 25.0, nx, dt);
        let mut f = init_gaussian(&g, &p).unwrap();
        let prop = SchrodingerPropagator::new(&g, &free_square(), p.mass, dt).unwrap();
        let steps = (1.0 / dt).round() as usize;
        for _ in 0..steps {
            prop.step(&mut f).unwrap();
        }
        let mut worst = 0.0f64;
        for i in 0..g.nx {
            let exact = free_packet_closed(&p, g.x_at(i), f.t).norm();
            worst = worst.max((f.psi[i].norm() - exact).abs());
        }
        worst
    };
    // dt at the default m·dx² coupling, so halving dx also shrinks dt and
    // the whole error budget scales as dx²
    let coarse = run(0.1, 0.01);
    let fine = run(0.05, 0.0025);
    assert!(
        coarse / fine >= 4.0,
        "refinement ratio {} (coarse {coarse:e}, fine {fine:e})",
        coarse / fine
    );
}

#[test]
fn norm_conserved_per_step_and_over_long_runs() {
    let g = grid(-25.0, 25.0, 501, 0.01);
    let p = packet(1.0, 1.0, -8.0, 1.0);
    let well = PotentialSpec {
        kind: PotentialKind::Square,
        v0: -1.0,
        w: 1.0,
    };
    let mut f = init_gaussian(&g, &p).unwrap();
    let prop = SchrodingerPropagator::new(&g, &well, p.mass, g.dt).unwrap();
    let mut prev = norm(&f);
    for _ in 0..200 {
        prop.step(&mut f).unwrap();
        let n = norm(&f);
        assert!((n - prev).abs() <= 1e-12, "per-step drift {:e}", (n - prev).abs());
        prev = n;
    }
    for _ in 200..120_000 {
        prop.step(&mut f).unwrap();
    }
    assert!((norm(&f) - 1.0).abs() <= 1e-3);
}

#[test]
fn forward_then_backward_stepping_restores_initial_field() {
    let g = grid(-25.0, 25.0, 1001, 0.004);
    let p = packet(1.0, 1.2, -6.0, 1.0);
    let barrier = PotentialSpec {
        kind: PotentialKind::Gaussian,
        v0: 0.2,
        w: 1.0,
    };
    let f0 = init_gaussian(&g, &p).unwrap();
    let mut f = f0.clone();
    let fwd = SchrodingerPropagator::new(&g, &barrier, p.mass, g.dt).unwrap();
    let bwd = SchrodingerPropagator::new(&g, &barrier, p.mass, -g.dt).unwrap();
    for _ in 0..600 {
        fwd.step(&mut f).unwrap();
    }
    for _ in 0..600 {
        bwd.step(&mut f).unwrap();
    }
    let mut worst = 0.0f64;
    for i in 0..g.nx {
        worst = worst.max((f.psi[i] - f0.psi[i]).norm());
    }
    assert!(worst <= 1e-8, "reversal residual {worst:e}");
    assert!(f.t.abs() <= 1e-9);
}

#[test]
fn square_well_run_matches_momentum_quadrature_in_backward_region() {
    // moderate-time scattering off an attractive well: the grid solution
    // must agree with the independent momentum-space integral away from
    // the well mouth
    let p = packet(1.5, 2.5, -15.0, 1.0);
    let dx = 0.005;
    let g = grid(-30.0, 40.0, 14001, 5.0e-4);
    let well = PotentialSpec {
        kind: PotentialKind::Square,
        v0: -1.0,
        w: 1.0,
    };
    let mut f = init_gaussian(&g, &p).unwrap();
    let trace = evolve(&mut f, &well, 10.0, &[]).unwrap();
    assert!(trace.max_edge_probability < 1e-6);
    assert_eq!(trace.steps, 20_000);

    let scale = packet_norm_factor(p.sigma);
    let mut worst = 0.0f64;
    let mut x = -12.0;
    while x <= -1.2 + 1e-9 {
        let i = ((x - g.xmin) / dx).round() as usize;
        let reference = packet_backward_quadrature(&p, -1.0, 1.0, g.x_at(i), f.t, 512)
            .unwrap()
            .norm()
            * scale;
        worst = worst.max((f.psi[i].norm() - reference).abs());
        x += 0.2;
    }
    assert!(worst <= 1e-3, "PDE vs quadrature max-abs {worst:e}");
}

#[test]
fn probability_windows_tile_the_grid() {
    let g = grid(-20.0, 20.0, 801, 0.01);
    let p = packet(1.0, 0.5, -3.0, 1.0);
    let f = init_gaussian(&g, &p).unwrap();
    let whole = probability_in(&f, -20.0, 20.0).unwrap();
    assert!((whole - 1.0).abs() < 1e-12);
    let left = probability_in(&f, -20.0, 1.0).unwrap();
    let right = probability_in(&f, 1.0, 20.0).unwrap();
    assert!((left + right - whole).abs() < 1e-12);
    assert!(probability_in(&f, 3.0, 3.0).is_err());
    assert!(probability_in(&f, 3.0, 3.0 + 1e-9).is_err());
}

#[test]
fn snapshots_land_on_nearest_steps_and_zero_duration_is_identity() {
    let g = grid(-20.0, 20.0, 401, 0.25);
    let p = packet(1.0, 0.5, -3.0, 1.0);
    let mut f = init_gaussian(&g, &p).unwrap();
    let pot = free_square();

    let trace = evolve(&mut f, &pot, 0.0, &[0.0]).unwrap();
    assert_eq!(trace.steps, 0);
    assert_eq!(trace.snapshots.len(), 1);
    assert_eq!(trace.snapshots[0].t, 0.0);

    let trace = evolve(&mut f, &pot, 1.0, &[0.26, 0.9]).unwrap();
    assert_eq!(trace.steps, 4);
    assert_eq!(trace.snapshots.len(), 2);
    assert!((trace.snapshots[0].t - 0.25).abs() < 1e-12);
    assert!((trace.snapshots[1].t - 1.0).abs() < 1e-12);
    assert!(evolve(&mut f, &pot, 2.0, &[5.0]).is_err());
    assert!(evolve(&mut f, &pot, 0.5, &[]).is_err()); // target behind current t
}
