//! Canned scenario definitions for the reference figures.
//!
//! Every preset is a plain `ScenarioConfig` value, so two presets can be
//! diffed field by field through `config_echo` (fig9 differs from fig8 in
//! exactly one line: the well is 5% deeper). The grids are sized so the
//! evolved packets never reach the hard walls at the reported times, and
//! time steps keep the Dirac mass-phase limit and the Schrödinger accuracy
//! budget with margin.

use crate::error::{Error, Result};
use crate::model::{GridSpec, PacketSpec1D, PotentialKind, PotentialSpec};

use super::{experiment, run_scenario, Mode, RunRecord, ScenarioConfig};

/// Names accepted by `preset_config`/`run_preset`.
pub fn preset_names() -> &'static [&'static str] {
    &["fig1", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10"]
}

fn grid(xmin: f64, xmax: f64, nx: usize, dt: f64, t_final: f64, snaps: &[f64]) -> GridSpec {
    GridSpec { xmin, xmax, nx, dt, t_final, snapshot_times: snaps.to_vec() }
}

/// The configuration behind a preset name.
///
/// * `fig1` — narrow packet on a square well, closed-form pattern against
///   the quadrature oracle far downstream (no grid evolution).
/// * `fig4`/`fig5` — Schrödinger packets (σ = 0.5 / σ = 2) against a
///   Gaussian barrier: many reflected peaks vs one or two.
/// * `fig6`/`fig7` — the same dichotomy for Dirac packets on a scalar well.
/// * `fig8`/`fig9` — 3D neutron-scale field maps; fig9 deepens the well 5%.
/// * `fig10` — helium-drop counting experiment in laboratory units.
pub fn preset_config(name: &str) -> Result<ScenarioConfig> {
    let cfg = match name {
        "fig1" => ScenarioConfig {
            mode: Mode::Analytic1D,
            packet: PacketSpec1D { sigma: 0.5, q0: 0.4, x0: -60.0, mass: 40.0 },
            potential: PotentialSpec { kind: PotentialKind::Square, v0: -1.0, w: 1.0 },
            // profile from -50000 to -1000, 1000 apart; dt unused here
            grid: grid(-50000.0, -1000.0, 50, 1.0, 1.2e7, &[]),
            impact: 0.0,
            nk: Some(4800),
            preset_name: Some("fig1".into()),
            detector: None,
            particle_count: None,
            assumed_keys: Vec::new(),
        },
        "fig4" => ScenarioConfig {
            mode: Mode::Schrodinger1D,
            packet: PacketSpec1D { sigma: 0.5, q0: 1.0, x0: -10.0, mass: 1.0 },
            potential: PotentialSpec { kind: PotentialKind::Gaussian, v0: 0.2, w: 1.0 },
            grid: grid(-3400.0, 4000.0, 74001, 0.02, 800.0, &[200.0, 400.0, 600.0]),
            impact: 0.0,
            nk: None,
            preset_name: Some("fig4".into()),
            detector: None,
            particle_count: None,
            assumed_keys: vec!["packet.mass".into()],
        },
        "fig5" => ScenarioConfig {
            mode: Mode::Schrodinger1D,
            packet: PacketSpec1D { sigma: 2.0, q0: 1.0, x0: -10.0, mass: 1.0 },
            potential: PotentialSpec { kind: PotentialKind::Gaussian, v0: 0.2, w: 1.0 },
            grid: grid(-2400.0, 2800.0, 52001, 0.02, 1200.0, &[300.0, 600.0, 900.0]),
            impact: 0.0,
            nk: None,
            preset_name: Some("fig5".into()),
            detector: None,
            particle_count: None,
            assumed_keys: vec!["packet.mass".into()],
        },
        "fig6" => ScenarioConfig {
            mode: Mode::Dirac1D,
            packet: PacketSpec1D { sigma: 0.5, q0: 1.0, x0: -10.0, mass: 1.0 },
            potential: PotentialSpec { kind: PotentialKind::Square, v0: -1.0, w: 1.0 },
            grid: grid(-1700.0, 1300.0, 30001, 0.05, 800.0, &[200.0, 400.0, 600.0]),
            impact: 0.0,
            nk: None,
            preset_name: Some("fig6".into()),
            detector: None,
            particle_count: None,
            assumed_keys: vec!["packet.mass".into()],
        },
        "fig7" => ScenarioConfig {
            mode: Mode::Dirac1D,
            packet: PacketSpec1D { sigma: 2.0, q0: 1.0, x0: -10.0, mass: 1.0 },
            potential: PotentialSpec { kind: PotentialKind::Square, v0: -1.0, w: 1.0 },
            grid: grid(-1300.0, 1100.0, 24001, 0.05, 1200.0, &[300.0, 600.0, 900.0]),
            impact: 0.0,
            nk: None,
            preset_name: Some("fig7".into()),
            detector: None,
            particle_count: None,
            assumed_keys: vec!["packet.mass".into()],
        },
        "fig8" | "fig9" => {
            let depth = if name == "fig9" { NEUTRON_WELL_DEPTH * 1.05 } else { NEUTRON_WELL_DEPTH };
            ScenarioConfig {
                mode: Mode::Analytic3D,
                // axial fields: launch 20 fm upstream along z, 2 fm impact offset
                packet: PacketSpec1D { sigma: 1.0, q0: NEUTRON_Q0, x0: -20.0, mass: NEUTRON_MASS },
                potential: PotentialSpec { kind: PotentialKind::Square, v0: -depth, w: 10.0 },
                // map half-extent 3e13 fm, 400 samples/side, at t = 5e14 fm
                grid: grid(-3.0e13, 3.0e13, 400, 1.0, 5.0e14, &[]),
                impact: 2.0,
                nk: None,
                preset_name: Some(name.into()),
                detector: None,
                particle_count: None,
                assumed_keys: Vec::new(),
            }
        }
        "fig10" => experiment::helium_drop_config(),
        other => {
            return Err(Error::Config(format!(
                "unknown preset '{other}' (expected one of {})",
                preset_names().join(", ")
            )));
        }
    };
    Ok(cfg)
}

/// Neutron mass in natural units of 1/fm (939.56542052 MeV).
pub const NEUTRON_MASS: f64 = 4.761464542838563;
/// 40 MeV well depth in 1/fm.
pub const NEUTRON_WELL_DEPTH: f64 = 0.2027092287071758;
/// Neutron momentum for v = 0.02c, in 1/fm.
pub const NEUTRON_Q0: f64 = 0.09522929085677125;

/// Build and run a preset in one call.
pub fn run_preset(name: &str) -> Result<RunRecord> {
    run_scenario(&preset_config(name)?)
}
