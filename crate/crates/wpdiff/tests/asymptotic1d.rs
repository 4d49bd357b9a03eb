//! Closed-form long-time pattern: branch forms, the interference identity,
//! structural predictors, and agreement with the exact quadrature.

use wpdiff::asymptotic1d::{
    asymptotic_pattern, blur_factor, pattern_amplitude, predict_peak_spacing, psi_in_asymptotic,
    psi_refl_asymptotic,
};
use wpdiff::model::{classify_narrowness, narrowness_ratio, Narrowness, PacketSpec1D, PotentialKind, PotentialSpec};
use wpdiff::stationary1d::{free_packet_closed, packet_backward_quadrature, packet_norm_factor};

fn packet(sigma: f64, q0: f64, x0: f64, mass: f64) -> PacketSpec1D {
    PacketSpec1D { sigma, q0, x0, mass }
}

fn fig1_packet() -> PacketSpec1D {
    packet(0.5, 0.4, -60.0, 40.0)
}

#[test]
fn incoming_branch_peaks_at_ballistic_center_and_decays_as_sqrt_t() {
    let p = packet(1.0, 1.5, -5.0, 2.0);
    let t = 400.0;
    let center = p.x0 + p.q0 * t / p.mass;
    let mut best = (f64::MIN, 0.0);
    let mut x = center - 50.0;
    while x <= center + 50.0 {
        let a = psi_in_asymptotic(&p, x, t).norm();
        if a > best.0 {
            best = (a, x);
        }
        x += 0.25;
    }
    assert!((best.1 - center).abs() <= 0.25 + 1e-9);

    let a1 = psi_in_asymptotic(&p, center, t).norm();
    let a4 = psi_in_asymptotic(&p, p.x0 + p.q0 * (4.0 * t) / p.mass, 4.0 * t).norm();
    assert!((a4 / a1 - 0.5).abs() < 1e-3);
}

#[test]
fn incoming_branch_matches_exact_free_packet_at_long_time() {
    // t = 1e4 * (2 m sigma^2): asymptotic corrections are O(1e-4)
    let p = packet(1.0, 1.0, -5.0, 1.0);
    let t = 2.0e4;
    let center = p.x0 + p.q0 * t / p.mass;
    let spread = t / (2.0 * p.mass * p.sigma);
    for frac in [-1.5, -0.7, 0.0, 0.7, 1.5] {
        let x = center + frac * spread;
        let asym = psi_in_asymptotic(&p, x, t);
        let exact = free_packet_closed(&p, x, t) / packet_norm_factor(p.sigma);
        assert!(
            (asym - exact).norm() <= 1e-3 * exact.norm(),
            "at x = {x}: {asym} vs {exact}"
        );
    }
}

#[test]
fn reflected_branch_recedes_and_carries_validity_flag() {
    let p = packet(1.0, 1.5, -30.0, 2.0);
    let t = 800.0;
    let center = -p.x0 - p.q0 * t / p.mass;
    let mut best = (f64::MIN, 0.0);
    let mut x = center - 50.0;
    while x <= center + 50.0 {
        let a = psi_refl_asymptotic(&p, 1.0, x, t).value.norm();
        if a > best.0 {
            best = (a, x);
        }
        x += 0.25;
    }
    assert!((best.1 - center).abs() <= 0.25 + 1e-9);

    // deep pattern regime: flagged valid
    let far = psi_refl_asymptotic(&fig1_packet(), 1.0, -7854.0, 1.2e7);
    assert!(far.in_validity_regime);
    // early time or close-in point: flagged out of regime
    assert!(!psi_refl_asymptotic(&fig1_packet(), 1.0, -7854.0, 10.0).in_validity_regime);
    assert!(!psi_refl_asymptotic(&fig1_packet(), 1.0, -100.0, 1.2e7).in_validity_regime);
    assert!(!psi_refl_asymptotic(&packet(0.5, 0.4, -2.0, 40.0), 1.0, -7854.0, 1.2e7).in_validity_regime);
}

#[test]
fn branch_sum_vanishes_at_origin() {
    let p = fig1_packet();
    for t in [1.0e5, 1.2e7, 3.3e9] {
        let sum = psi_in_asymptotic(&p, 0.0, t) + psi_refl_asymptotic(&p, 1.0, 0.0, t).value;
        let scale = psi_in_asymptotic(&p, 0.0, t).norm();
        assert!(sum.norm() <= 1e-14 * scale, "node violated at t = {t}");
    }
}

fn identity_gap_over_envelope(p: &PacketSpec1D, x: f64, t: f64) -> f64 {
    let lhs = (psi_in_asymptotic(p, x, t) + psi_refl_asymptotic(p, 1.0, x, t).value).norm();
    let rhs = pattern_amplitude(p, x, t);
    let pat = asymptotic_pattern(p, x, t);
    let envelope = pat.amplitude_prefactor * (-pat.z).exp();
    (lhs - rhs).abs() / envelope
}

#[test]
fn pattern_amplitude_equals_branch_interference_at_long_time() {
    // Algebraic identity: branch sum = pattern up to O(1/t) cross terms.
    // Verifying it in f64 needs the branch phase (m/2t)(x -+ x0)^2 small
    // enough that its rounding (~ulp * phase) stays below the tolerance.

    // (a) reference parameters, inner zone: phases < 1e3 rad, t large
    // enough that the cross terms sit below 1e-13
    let p = fig1_packet();
    for &x in &[-2.0e9, -8.0e8, 1.2e9] {
        let gap = identity_gap_over_envelope(&p, x, 1.0e17);
        assert!(gap <= 1e-12, "inner zone x = {x}: gap {gap:e}");
    }

    // (b) O(1) interference arguments: push x0 and t up together so the
    // sin factor is order unity while phases stay ~1e3 rad
    let far = packet(0.5, 0.4, -6.0e9, 40.0);
    let t = 4.8e23;
    let spacing = predict_peak_spacing(&far, t).unwrap();
    for frac in [0.2, 0.37, 0.5, 0.81] {
        let x = -frac * spacing;
        let gap = identity_gap_over_envelope(&far, x, t);
        assert!(gap <= 1e-12, "pattern zone frac = {frac}: gap {gap:e}");
    }

    // (c) reference parameters at actual pattern peaks: the branch phase is
    // ~5e11 rad, so plain f64 evaluation carries ~1e-4 rad of rounding; the
    // identity holds there to the corresponding noise floor, not to 1e-12
    let spacing1 = predict_peak_spacing(&p, 1.0e17).unwrap();
    for n in 1..=6 {
        let x = -(n as f64) * 0.37 * spacing1;
        let gap = identity_gap_over_envelope(&p, x, 1.0e17);
        assert!(gap <= 5e-4, "peak zone n = {n}: gap {gap:e}");
    }
}

#[test]
fn pattern_structure_fields_and_invariants() {
    let p = fig1_packet();
    let t = 1.2e7;
    for &x in &[-40_000.0, -7854.0, -1.0, 250.0] {
        let pat = asymptotic_pattern(&p, x, t);
        assert!(pat.z >= p.sigma * p.sigma * p.q0 * p.q0);
        assert!(pat.amplitude_prefactor > 0.0);
        // mirror: flipping both x and x0 leaves the amplitude unchanged
        let mut flipped = p;
        flipped.x0 = -p.x0;
        assert!((pattern_amplitude(&flipped, -x, t) - pattern_amplitude(&p, x, t)).abs() <= 1e-15);
    }
    assert_eq!(pattern_amplitude(&p, 0.0, t), 0.0);
}

#[test]
fn pattern_zeros_sit_on_the_predicted_lattice() {
    // with q0 tiny the sinh blur is absent and the zeros are clean
    let p = packet(0.5, 1e-30, -60.0, 40.0);
    let t = 1.2e7;
    let spacing = std::f64::consts::PI * t / (p.mass * p.x0.abs());
    for n in 1..=5 {
        let at_zero = pattern_amplitude(&p, -(n as f64) * spacing, t);
        let at_peak = pattern_amplitude(&p, -(n as f64 + 0.5) * spacing, t);
        assert!(at_zero <= 1e-12 * at_peak, "zero {n} not clean: {at_zero} vs {at_peak}");
    }
}

#[test]
fn peak_spacing_predictor() {
    let p = fig1_packet();
    let s = predict_peak_spacing(&p, 1.2e7).unwrap();
    assert!((s - 1.5707963267948966e4).abs() < 1e-9 * s);
    let s2 = predict_peak_spacing(&p, 2.4e7).unwrap();
    assert!((s2 - 2.0 * s).abs() < 1e-12 * s2);

    let far = packet(0.5, 0.4, -6.0e6, 40.0);
    assert!(predict_peak_spacing(&far, 1.2e7).unwrap() < 1.0);

    let origin = packet(0.5, 0.4, 0.0, 40.0);
    assert!(predict_peak_spacing(&origin, 1.2e7).is_err());
    assert!(predict_peak_spacing(&p, 0.0).is_err());
}

#[test]
fn blur_factor_is_consistent_with_narrowness_classification() {
    let widths = [0.5, 1.0, 2.0];
    let sigmas = [0.2, 0.5, 1.0, 2.0, 4.0];
    let q0s = [0.3, 1.0, 2.5];
    for &w in &widths {
        let pot = PotentialSpec { kind: PotentialKind::Square, v0: -1.0, w };
        for &sigma in &sigmas {
            for &q0 in &q0s {
                let p = packet(sigma, q0, -10.0, 1.0);
                let ratio = narrowness_ratio(&p, &pot).unwrap();
                let blur = blur_factor(&p, w);
                match classify_narrowness(ratio) {
                    Narrowness::Diffractive => assert!(blur < 1.0, "sigma={sigma} q0={q0} w={w}"),
                    Narrowness::SingleHump => assert!(blur > 1.0, "sigma={sigma} q0={q0} w={w}"),
                    Narrowness::Marginal => {}
                }
            }
        }
    }
}

#[test]
fn pattern_matches_quadrature_at_reference_peaks() {
    // three interference peaks of the long-time pattern; the exact integral
    // and the closed form agree well inside the validity window
    let p = fig1_packet();
    let t = 1.2e7;
    for &x in &[-7853.98, -23561.94, -39269.91] {
        let quad = packet_backward_quadrature(&p, -1.0, 1.0, x, t, 4800).unwrap();
        let asym = pattern_amplitude(&p, x, t);
        let rel = (quad.norm() - asym).abs() / quad.norm();
        assert!(rel <= 0.10, "peak at {x}: quad {} vs asym {asym} (rel {rel:.3})", quad.norm());
    }
}
