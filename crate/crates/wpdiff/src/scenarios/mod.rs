//! End-to-end scenario runner: a declarative `ScenarioConfig` selects one of
//! the solver stacks (grid evolution, closed-form asymptotics, 3D field maps,
//! or the counting experiment) and every run produces the same `RunRecord`
//! shape — snapshots, a norm series, a peak census of the diffraction side,
//! detector counts and profile comparisons — so reports and assertions never
//! depend on which engine produced the numbers.
//!
//! Peak counting is the load-bearing metric (narrow packets diffract into
//! many reflected peaks, wide ones into one or two), so its three tuning
//! constants are frozen here and echoed into every report rather than left
//! as implementation details.

pub mod experiment;
pub mod presets;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::evolve::TraceSample;
use crate::model::{GridSpec, PacketSpec1D, PotentialSpec};

pub use experiment::{helium_drop_config, run_experiment_helium, TransmissionCheck};
pub use presets::{preset_config, preset_names, run_preset};

/// Minimum height of a counted peak, as a fraction of the profile maximum.
pub const PEAK_HEIGHT_FLOOR_FRAC: f64 = 0.05;
/// Two candidate maxima merge into one peak unless the valley between them
/// drops below this fraction of the lower candidate.
pub const PEAK_VALLEY_FRAC: f64 = 0.80;
/// A counted sample must strictly exceed this many neighbors on each side.
pub const PEAK_NEIGHBOR_SIDE: usize = 3;

/// Which solver stack a scenario runs through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Crank–Nicolson evolution of the Schrödinger equation.
    Schrodinger1D,
    /// Crank–Nicolson evolution of the Dirac equation with a scalar well.
    Dirac1D,
    /// Backward-region momentum quadrature vs the closed-form pattern.
    Analytic1D,
    /// Closed-form 3D field map on a transverse plane.
    Analytic3D,
    /// Laboratory-unit counting experiment (slow drops against a plate).
    Experiment,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Mode::Schrodinger1D => "schrodinger1d",
            Mode::Dirac1D => "dirac1d",
            Mode::Analytic1D => "analytic1d",
            Mode::Analytic3D => "analytic3d",
            Mode::Experiment => "experiment",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "schrodinger1d" => Ok(Mode::Schrodinger1D),
            "dirac1d" => Ok(Mode::Dirac1D),
            "analytic1d" => Ok(Mode::Analytic1D),
            "analytic3d" => Ok(Mode::Analytic3D),
            "experiment" => Ok(Mode::Experiment),
            other => Err(Error::Config(format!(
                "unknown mode '{other}' (expected schrodinger1d, dirac1d, analytic1d, \
                 analytic3d or experiment)"
            ))),
        }
    }
}

/// Point detector: counts within a slab of `width` around `position`,
/// sampled every `interval`. In `Experiment` mode the fields are laboratory
/// units (cm, cm, s); elsewhere natural units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorSpec {
    pub position: f64,
    pub width: f64,
    pub interval: f64,
}

impl DetectorSpec {
    pub fn validate(self) -> Result<Self> {
        if !self.position.is_finite() {
            return Err(Error::InvalidInput("detector position must be finite".into()));
        }
        if !(self.width > 0.0) || !self.width.is_finite() {
            return Err(Error::InvalidInput(format!(
                "detector width must be finite and > 0, got {}",
                self.width
            )));
        }
        if !(self.interval > 0.0) || !self.interval.is_finite() {
            return Err(Error::InvalidInput(format!(
                "detector interval must be finite and > 0, got {}",
                self.interval
            )));
        }
        Ok(self)
    }
}

/// Complete description of one run.
///
/// `Analytic3D` reuses the 1D fields for the axial geometry: `packet.q0` is
/// the beam momentum along +z, `packet.x0` the launch height `z0`, and
/// `impact` the transverse offset of the packet center; the map plane is
/// z = 0 with half-extent `grid.xmax`, `grid.nx` samples per side, evaluated
/// at `grid.t_final`. `Experiment` mode reads every length in cm, masses and
/// momenta in 1/cm, and detector times in seconds.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub mode: Mode,
    pub packet: PacketSpec1D,
    pub potential: PotentialSpec,
    pub grid: GridSpec,
    /// Transverse packet offset for `Analytic3D`; must be 0 elsewhere.
    pub impact: f64,
    /// Quadrature node floor for `Analytic1D` (default 4800).
    pub nk: Option<usize>,
    pub preset_name: Option<String>,
    pub detector: Option<DetectorSpec>,
    pub particle_count: Option<f64>,
    /// Keys of `config_echo` entries that are recorded assumptions rather
    /// than inputs fixed by the scenario being reproduced.
    pub assumed_keys: Vec<String>,
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        self.packet.validate()?;
        self.potential.validate()?;
        self.grid.clone().validate()?;
        if !self.impact.is_finite() {
            return Err(Error::InvalidInput("impact offset must be finite".into()));
        }
        if self.impact != 0.0 && self.mode != Mode::Analytic3D {
            return Err(Error::InvalidInput(
                "impact offset applies only to analytic3d scenarios".into(),
            ));
        }
        if let Some(nk) = self.nk {
            if nk < 64 {
                return Err(Error::InvalidInput(format!("nk must be >= 64, got {nk}")));
            }
        }
        if let Some(det) = self.detector {
            det.validate()?;
        }
        if let Some(n) = self.particle_count {
            if !(n > 0.0) || !n.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "particle count must be finite and > 0, got {n}"
                )));
            }
        }
        if self.mode == Mode::Experiment {
            if self.detector.is_none() {
                return Err(Error::Config("experiment mode needs a [detector] section".into()));
            }
            if self.particle_count.is_none() {
                return Err(Error::Config("experiment mode needs a particle count".into()));
            }
        }
        Ok(())
    }

    /// Stable `key = value` listing of every field, in a frozen order, with
    /// assumption markers. Two configs are interchangeable exactly when
    /// their echoes match line by line.
    pub fn config_echo(&self) -> Vec<EchoLine> {
        let mut lines = vec![
            EchoLine::new("mode", format!("{}", self.mode)),
            EchoLine::new("packet.sigma", format!("{}", self.packet.sigma)),
            EchoLine::new("packet.q0", format!("{}", self.packet.q0)),
            EchoLine::new("packet.x0", format!("{}", self.packet.x0)),
            EchoLine::new("packet.mass", format!("{}", self.packet.mass)),
            EchoLine::new("potential.kind", format!("{}", self.potential.kind)),
            EchoLine::new("potential.v0", format!("{}", self.potential.v0)),
            EchoLine::new("potential.w", format!("{}", self.potential.w)),
            EchoLine::new("grid.xmin", format!("{}", self.grid.xmin)),
            EchoLine::new("grid.xmax", format!("{}", self.grid.xmax)),
            EchoLine::new("grid.nx", format!("{}", self.grid.nx)),
            EchoLine::new("grid.dt", format!("{}", self.grid.dt)),
            EchoLine::new("grid.t_final", format!("{}", self.grid.t_final)),
        ];
        if self.impact != 0.0 {
            lines.push(EchoLine::new("impact", format!("{}", self.impact)));
        }
        if let Some(nk) = self.nk {
            lines.push(EchoLine::new("nk", format!("{nk}")));
        }
        if let Some(det) = self.detector {
            lines.push(EchoLine::new("detector.position", format!("{}", det.position)));
            lines.push(EchoLine::new("detector.width", format!("{}", det.width)));
            lines.push(EchoLine::new("detector.interval", format!("{}", det.interval)));
        }
        if let Some(n) = self.particle_count {
            lines.push(EchoLine::new("particle_count", format!("{n}")));
        }
        for line in &mut lines {
            if self.assumed_keys.iter().any(|k| k == &line.key) {
                line.assumed = true;
            }
        }
        lines
    }
}

/// One `key = value` line of a config echo.
#[derive(Debug, Clone, PartialEq)]
pub struct EchoLine {
    pub key: String,
    pub value: String,
    /// True for values this tool assumed (documented defaults) rather than
    /// values fixed by the scenario definition.
    pub assumed: bool,
}

impl EchoLine {
    fn new(key: &str, value: String) -> Self {
        EchoLine { key: key.to_string(), value, assumed: false }
    }
}

/// One recorded field, with enough geometry to rebuild its axis.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub t: f64,
    /// Coordinate of the first sample.
    pub x0: f64,
    /// Sample spacing.
    pub dx: f64,
    pub data: SnapshotData,
}

#[derive(Debug, Clone)]
pub enum SnapshotData {
    Scalar(Vec<Complex64>),
    Spinor { u: Vec<Complex64>, v: Vec<Complex64> },
    /// Square map on a z = const plane: `values[row * resolution + col]`,
    /// both axes running from −extent to +extent.
    Plane { extent: f64, resolution: usize, values: Vec<f64> },
}

impl Snapshot {
    /// |field| profile: |ψ| for scalars, |U| (upper component) for spinors,
    /// the stored magnitudes for planes.
    pub fn magnitude_profile(&self) -> Vec<f64> {
        match &self.data {
            SnapshotData::Scalar(psi) => psi.iter().map(|z| z.norm()).collect(),
            SnapshotData::Spinor { u, .. } => u.iter().map(|z| z.norm()).collect(),
            SnapshotData::Plane { values, .. } => values.clone(),
        }
    }
}

/// Census of the local maxima of a nonnegative profile.
#[derive(Debug, Clone, PartialEq)]
pub struct PeakReport {
    /// Always equals `positions.len()`.
    pub count: usize,
    /// Peak coordinates, strictly increasing.
    pub positions: Vec<f64>,
    pub heights: Vec<f64>,
    /// Successive position differences (`count - 1` entries).
    pub spacings: Vec<f64>,
    pub height_floor_frac: f64,
    pub valley_frac: f64,
    pub neighbor_side: usize,
}

/// Count the resolved peaks of a nonnegative profile sampled at spacing
/// `dx`, first sample at `x0`.
///
/// A sample qualifies when it strictly exceeds its `PEAK_NEIGHBOR_SIDE`
/// neighbors on each side and reaches `PEAK_HEIGHT_FLOOR_FRAC` of the global
/// maximum; two qualifying samples count separately only when the valley
/// between them falls to `PEAK_VALLEY_FRAC` of the lower one, otherwise the
/// taller absorbs the other. Needs at least 7 samples; an all-zero profile
/// has zero peaks.
pub fn count_peaks(profile: &[f64], x0: f64, dx: f64) -> Result<PeakReport> {
    let n = profile.len();
    let side = PEAK_NEIGHBOR_SIDE;
    if n < 2 * side + 1 {
        return Err(Error::InvalidInput(format!(
            "peak counting needs at least {} samples, got {n}",
            2 * side + 1
        )));
    }
    if !(dx > 0.0) || !dx.is_finite() || !x0.is_finite() {
        return Err(Error::InvalidInput(format!(
            "peak counting needs finite x0 and dx > 0, got x0 = {x0}, dx = {dx}"
        )));
    }
    let mut gmax = 0.0f64;
    for &v in profile {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::InvalidInput(format!(
                "peak counting needs a finite nonnegative profile, found {v}"
            )));
        }
        gmax = gmax.max(v);
    }
    let mut indices: Vec<usize> = Vec::new();
    if gmax > 0.0 {
        let floor = PEAK_HEIGHT_FLOOR_FRAC * gmax;
        'scan: for i in side..n - side {
            let h = profile[i];
            if h < floor {
                continue;
            }
            for k in 1..=side {
                if profile[i - k] >= h || profile[i + k] >= h {
                    continue 'scan;
                }
            }
            match indices.last().copied() {
                None => indices.push(i),
                Some(j) => {
                    let valley =
                        profile[j..=i].iter().copied().fold(f64::INFINITY, f64::min);
                    if valley <= PEAK_VALLEY_FRAC * profile[j].min(h) {
                        indices.push(i);
                    } else if h > profile[j] {
                        // same broad maximum; keep the taller sample
                        *indices.last_mut().expect("nonempty") = i;
                    }
                }
            }
        }
    }
    let positions: Vec<f64> = indices.iter().map(|&i| x0 + i as f64 * dx).collect();
    let heights: Vec<f64> = indices.iter().map(|&i| profile[i]).collect();
    let spacings: Vec<f64> = positions.windows(2).map(|p| p[1] - p[0]).collect();
    Ok(PeakReport {
        count: positions.len(),
        positions,
        heights,
        spacings,
        height_floor_frac: PEAK_HEIGHT_FLOOR_FRAC,
        valley_frac: PEAK_VALLEY_FRAC,
        neighbor_side: side,
    })
}

/// How two same-grid profiles differ.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonMetrics {
    /// max |a − b| over the grid.
    pub max_abs: f64,
    /// max |a|, the scale the absolute difference should be read against.
    pub scale: f64,
    /// Worst |Δheight| / height(a) over matched peak pairs (0 if none).
    pub peak_rel: f64,
    /// Matched peak position differences, b − a, one per peak of `a`.
    pub offsets: Vec<f64>,
    /// max |offset| (0 if none matched).
    pub max_offset: f64,
    /// Number of matched pairs (= peak count of `a` when both sides have
    /// peaks, else 0).
    pub matched: usize,
    /// Peaks of `b` never selected as a nearest partner.
    pub unmatched: usize,
}

/// Compare a candidate profile `b` against a reference `a` on the same grid
/// (first sample `x0`, spacing `dx`): pointwise worst difference plus a
/// peak-by-peak census where every peak of `a` is paired with the nearest
/// peak of `b`. Errors when the lengths differ (different grids) or either
/// profile is unusable for peak counting.
pub fn compare_profiles(a: &[f64], b: &[f64], x0: f64, dx: f64) -> Result<ComparisonMetrics> {
    if a.len() != b.len() {
        return Err(Error::InvalidInput(format!(
            "profiles live on different grids: {} vs {} samples",
            a.len(),
            b.len()
        )));
    }
    let peaks_a = count_peaks(a, x0, dx)?;
    let peaks_b = count_peaks(b, x0, dx)?;
    let mut max_abs = 0.0f64;
    let mut scale = 0.0f64;
    for (&va, &vb) in a.iter().zip(b) {
        max_abs = max_abs.max((va - vb).abs());
        scale = scale.max(va.abs());
    }
    let mut metrics = ComparisonMetrics {
        max_abs,
        scale,
        peak_rel: 0.0,
        offsets: Vec::new(),
        max_offset: 0.0,
        matched: 0,
        unmatched: peaks_a.count + peaks_b.count,
    };
    if peaks_a.count == 0 || peaks_b.count == 0 {
        return Ok(metrics);
    }
    let mut used = vec![false; peaks_b.count];
    for (pa, ha) in peaks_a.positions.iter().zip(&peaks_a.heights) {
        let (jb, pb) = peaks_b
            .positions
            .iter()
            .enumerate()
            .min_by(|(_, x), (_, y)| {
                (*x - pa).abs().partial_cmp(&(*y - pa).abs()).expect("finite positions")
            })
            .expect("nonempty");
        used[jb] = true;
        let offset = pb - pa;
        metrics.offsets.push(offset);
        metrics.max_offset = metrics.max_offset.max(offset.abs());
        metrics.peak_rel = metrics.peak_rel.max((ha - peaks_b.heights[jb]).abs() / ha);
    }
    metrics.matched = metrics.offsets.len();
    metrics.unmatched = used.iter().filter(|u| !**u).count();
    Ok(metrics)
}

/// Everything a finished run reports.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub preset: Option<String>,
    pub mode: Mode,
    pub config_echo: Vec<EchoLine>,
    pub snapshots: Vec<Snapshot>,
    /// (t, ∫density dx); time in seconds for `Experiment`, natural units
    /// otherwise. Empty for runs with no time marching.
    pub norm_series: Vec<TraceSample>,
    /// Worst norm fraction seen in the grid edge bands (0 when no marching).
    pub max_edge_probability: f64,
    /// Census of the final diffraction-side profile, when one is defined.
    pub peak_report: Option<PeakReport>,
    /// (t, counts) samples; experiment mode only.
    pub detector_series: Vec<(f64, f64)>,
    /// Quadrature-vs-closed-form metrics; analytic1d mode only.
    pub comparison: Option<ComparisonMetrics>,
    /// Transmitted-fraction cross-check; experiment mode only.
    pub transmission: Option<TransmissionCheck>,
    /// Free-form diagnostics worth echoing into reports.
    pub notes: Vec<String>,
}

impl RunRecord {
    fn empty(cfg: &ScenarioConfig) -> Self {
        RunRecord {
            preset: cfg.preset_name.clone(),
            mode: cfg.mode,
            config_echo: cfg.config_echo(),
            snapshots: Vec::new(),
            norm_series: Vec::new(),
            max_edge_probability: 0.0,
            peak_report: None,
            detector_series: Vec::new(),
            comparison: None,
            transmission: None,
            notes: Vec::new(),
        }
    }

    /// Worst |norm − 1| over the recorded series (0 when empty).
    pub fn norm_drift(&self) -> f64 {
        self.norm_series.iter().map(|s| (s.norm - 1.0).abs()).fold(0.0, f64::max)
    }
}

/// Run any scenario; dispatches on `cfg.mode`.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<RunRecord> {
    cfg.validate()?;
    match cfg.mode {
        Mode::Schrodinger1D => run_schrodinger(cfg),
        Mode::Dirac1D => run_dirac(cfg),
        Mode::Analytic1D => run_analytic1d(cfg),
        Mode::Analytic3D => run_analytic3d(cfg),
        Mode::Experiment => run_experiment_helium(cfg),
    }
}

/// Snapshot times for an evolution run: the configured list, with `t_final`
/// appended when absent, so the final profile is always recorded.
fn snapshot_plan(grid: &GridSpec) -> Vec<f64> {
    let mut times = grid.snapshot_times.clone();
    let t_final = grid.t_final;
    if times.last().map_or(true, |&last| last < t_final) {
        times.push(t_final);
    }
    times
}

/// Index of the last grid node at or left of the diffraction side boundary
/// x = −w, or `None` when the grid starts right of it.
fn diffraction_side_end(grid: &GridSpec, w: f64) -> Option<usize> {
    let dx = grid.dx();
    let i = ((-w - grid.xmin) / dx).floor();
    if i < 0.0 {
        None
    } else {
        Some((i as usize).min(grid.nx - 1))
    }
}

fn run_schrodinger(cfg: &ScenarioConfig) -> Result<RunRecord> {
    use crate::evolve::schrodinger as schr;
    let mut record = RunRecord::empty(cfg);
    let mut field = schr::init_gaussian(&cfg.grid, &cfg.packet)?;
    let snaps = snapshot_plan(&cfg.grid);
    let trace = schr::evolve(&mut field, &cfg.potential, cfg.grid.t_final, &snaps)?;
    record.norm_series = trace.norm_series.clone();
    record.max_edge_probability = trace.max_edge_probability;
    for snap in &trace.snapshots {
        record.snapshots.push(Snapshot {
            t: snap.t,
            x0: snap.grid.xmin,
            dx: snap.grid.dx(),
            data: SnapshotData::Scalar(snap.psi.clone()),
        });
    }
    if let Some(last) = record.snapshots.last() {
        if let Some(end) = diffraction_side_end(&cfg.grid, cfg.potential.w) {
            let profile = last.magnitude_profile();
            record.peak_report =
                Some(count_peaks(&profile[..=end], cfg.grid.xmin, cfg.grid.dx())?);
        }
    }
    record.notes.push(format!("steps = {}", trace.steps));
    Ok(record)
}

fn run_dirac(cfg: &ScenarioConfig) -> Result<RunRecord> {
    use crate::evolve::dirac;
    let mut record = RunRecord::empty(cfg);
    let mut field = dirac::init_dirac_gaussian(&cfg.grid, &cfg.packet)?;
    let snaps = snapshot_plan(&cfg.grid);
    let trace = dirac::evolve(&mut field, &cfg.potential, cfg.grid.t_final, &snaps)?;
    record.norm_series = trace.norm_series.clone();
    record.max_edge_probability = trace.max_edge_probability;
    for snap in &trace.snapshots {
        record.snapshots.push(Snapshot {
            t: snap.t,
            x0: snap.grid.xmin,
            dx: snap.grid.dx(),
            data: SnapshotData::Spinor { u: snap.u.clone(), v: snap.v.clone() },
        });
    }
    if let Some(last) = record.snapshots.last() {
        if let Some(end) = diffraction_side_end(&cfg.grid, cfg.potential.w) {
            let profile = last.magnitude_profile();
            record.peak_report =
                Some(count_peaks(&profile[..=end], cfg.grid.xmin, cfg.grid.dx())?);
        }
    }
    record.notes.push(format!("steps = {}", trace.steps));
    Ok(record)
}

/// Error budget (radians) for the far-region flag. The closed-form pattern
/// replaces the reflection factor by −1 *and* drops the 2w optical path of
/// the true reflection plane, so at the reflected branch's saddle momentum
/// k* it accumulates a phase slip 2w·k* + arg(−F(k*)) plus the amplitude
/// departure |F(k*) + 1|. The reflected branch carries about half the local
/// amplitude, so keeping slip + departure below 0.22 rad keeps the pointwise
/// closed-form error under roughly 10% of the pattern scale.
pub const FAR_PHASE_BUDGET: f64 = 0.22;

/// True when the point (x, t) is in the far region where the closed-form
/// pattern stops being trustworthy for this packet/well combination.
pub fn far_region(packet: &PacketSpec1D, pot: &PotentialSpec, x: f64, t: f64) -> bool {
    if t <= 0.0 {
        return true;
    }
    // the wave reaching x traveled |x0| in, 2w across the well, |x| back out
    let path = x.abs() + packet.x0.abs() + 2.0 * pot.w;
    let k_saddle = packet.mass * path / t;
    if k_saddle == 0.0 {
        return false;
    }
    let f = crate::stationary1d::reflection_coefficient(k_saddle, packet.mass, pot.v0, pot.w);
    let slip = 2.0 * pot.w * k_saddle + (-f).arg();
    slip.abs() + (f + 1.0).norm() > FAR_PHASE_BUDGET
}

fn run_analytic1d(cfg: &ScenarioConfig) -> Result<RunRecord> {
    use crate::asymptotic1d::{psi_in_asymptotic, psi_refl_asymptotic};
    use crate::model::PotentialKind;
    use crate::stationary1d::packet_backward_quadrature;

    let mut record = RunRecord::empty(cfg);
    if cfg.potential.kind != PotentialKind::Square {
        return Err(Error::InvalidInput(
            "analytic1d scenarios need a square well (closed-form reflection)".into(),
        ));
    }
    let grid = &cfg.grid;
    let (t, dx) = (grid.t_final, grid.dx());
    let nk = cfg.nk.unwrap_or(4800);
    let n = grid.nx;
    let mut quad = Vec::with_capacity(n);
    let mut asym = Vec::with_capacity(n);
    let mut flagged = 0usize;
    let mut out_of_regime = 0usize;
    let mut unflagged_start = n;
    for i in 0..n {
        let x = grid.x_at(i);
        quad.push(packet_backward_quadrature(
            &cfg.packet,
            cfg.potential.v0,
            cfg.potential.w,
            x,
            t,
            nk,
        )?);
        let refl = psi_refl_asymptotic(&cfg.packet, cfg.potential.w, x, t);
        if !refl.in_validity_regime {
            out_of_regime += 1;
        }
        asym.push(psi_in_asymptotic(&cfg.packet, x, t) + refl.value);
        if far_region(&cfg.packet, &cfg.potential, x, t) {
            flagged += 1;
        } else if unflagged_start == n {
            unflagged_start = i;
        }
    }
    // the saddle momentum shrinks with |x|, so the flagged far region is a
    // contiguous prefix of this ascending-x profile
    if flagged != unflagged_start {
        return Err(Error::InvalidInput(format!(
            "far region is not a contiguous prefix: {flagged} flagged points, \
             first clean index {unflagged_start}"
        )));
    }
    let quad_abs: Vec<f64> = quad.iter().map(|z| z.norm()).collect();
    let asym_abs: Vec<f64> = asym.iter().map(|z| z.norm()).collect();
    let x_clean = grid.x_at(unflagged_start);
    record.comparison = Some(compare_profiles(
        &quad_abs[unflagged_start..],
        &asym_abs[unflagged_start..],
        x_clean,
        dx,
    )?);
    // the census covers the whole quadrature profile, far region included:
    // the pattern is real out there, only the closed form degrades
    record.peak_report = Some(count_peaks(&quad_abs, grid.xmin, dx)?);
    record.snapshots.push(Snapshot {
        t,
        x0: grid.xmin,
        dx,
        data: SnapshotData::Scalar(quad),
    });
    record.snapshots.push(Snapshot {
        t,
        x0: grid.xmin,
        dx,
        data: SnapshotData::Scalar(asym),
    });
    record.notes.push(format!("nk = {nk}"));
    record.notes.push(format!("far_region_points = {flagged}"));
    record.notes.push(format!("outside_validity_regime_points = {out_of_regime}"));
    Ok(record)
}

fn run_analytic3d(cfg: &ScenarioConfig) -> Result<RunRecord> {
    use crate::model::PacketSpec3D;
    use crate::scatter3d::field_map;

    let mut record = RunRecord::empty(cfg);
    let packet = PacketSpec3D {
        sigma: cfg.packet.sigma,
        q0_vec: [0.0, 0.0, cfg.packet.q0],
        r0_vec: [cfg.impact, 0.0, cfg.packet.x0],
        mass: cfg.packet.mass,
    };
    let extent = cfg.grid.xmax;
    let resolution = cfg.grid.nx;
    let map = field_map(&packet, &cfg.potential, 0.0, extent, resolution, cfg.grid.t_final)?;
    // ring census along the +x half of the row nearest the map center
    let row = resolution / 2;
    let radial: Vec<f64> = (row..resolution).map(|col| map.at(row, col)).collect();
    let dx_map = 2.0 * extent / (resolution - 1) as f64;
    if radial.len() >= 2 * PEAK_NEIGHBOR_SIDE + 1 {
        record.peak_report = Some(count_peaks(&radial, map.coord(row), dx_map)?);
    }
    record.snapshots.push(Snapshot {
        t: map.t,
        x0: -extent,
        dx: dx_map,
        data: SnapshotData::Plane { extent, resolution, values: map.values },
    });
    Ok(record)
}
