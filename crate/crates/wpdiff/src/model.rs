//! Domain types shared by every solver: packet and potential specifications,
//! grid geometry, the narrowness classification that separates multi-peak
//! (diffractive) reflection from single-hump reflection, and conversions
//! between laboratory units and natural units (hbar = c = 1).
//!
//! All types are plain immutable values; `validate` checks the documented
//! invariants and returns the value unchanged so call sites can chain it.

use crate::error::{Error, Result};

/// One-dimensional Gaussian packet: `psi(x, 0) ~ exp(iq0(x - x0) - (x - x0)^2 / (4 sigma^2))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketSpec1D {
    /// Width parameter (length); the position variance at t = 0 is `sigma^2`.
    pub sigma: f64,
    /// Mean momentum.
    pub q0: f64,
    /// Initial center (length).
    pub x0: f64,
    /// Particle mass in natural units (inverse length).
    pub mass: f64,
}

impl PacketSpec1D {
    pub fn validate(self) -> Result<Self> {
        if !(self.sigma > 0.0) || !self.sigma.is_finite() {
            return Err(Error::InvalidInput(format!(
                "packet sigma must be finite and > 0, got {}",
                self.sigma
            )));
        }
        if !(self.mass > 0.0) || !self.mass.is_finite() {
            return Err(Error::InvalidInput(format!(
                "packet mass must be finite and > 0, got {}",
                self.mass
            )));
        }
        if !self.q0.is_finite() || !self.x0.is_finite() {
            return Err(Error::InvalidInput("packet q0/x0 must be finite".into()));
        }
        Ok(self)
    }

    /// Mean velocity `q0 / mass`; the nonrelativistic treatment is trusted
    /// only when this is small.
    pub fn velocity(&self) -> f64 {
        self.q0 / self.mass
    }

    /// True when `|q0| / mass < 0.1`, the regime where Schrodinger evolution
    /// is a faithful description (flag only; relativistic packets are still
    /// valid input for the Dirac solver).
    pub fn nonrelativistic(&self) -> bool {
        (self.q0 / self.mass).abs() < 0.1
    }
}

/// Three-dimensional Gaussian packet with vector mean momentum and center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketSpec3D {
    pub sigma: f64,
    pub q0_vec: [f64; 3],
    pub r0_vec: [f64; 3],
    pub mass: f64,
}

impl PacketSpec3D {
    pub fn validate(self) -> Result<Self> {
        if !(self.sigma > 0.0) || !self.sigma.is_finite() {
            return Err(Error::InvalidInput(format!(
                "packet sigma must be finite and > 0, got {}",
                self.sigma
            )));
        }
        if !(self.mass > 0.0) || !self.mass.is_finite() {
            return Err(Error::InvalidInput(format!(
                "packet mass must be finite and > 0, got {}",
                self.mass
            )));
        }
        if self.q0_vec.iter().chain(&self.r0_vec).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("packet q0/r0 vectors must be finite".into()));
        }
        Ok(self)
    }

    /// Euclidean norm of the mean momentum.
    pub fn q0_norm(&self) -> f64 {
        self.q0_vec.iter().map(|c| c * c).sum::<f64>().sqrt()
    }
}

/// Shape of the static potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialKind {
    /// `V(x) = v0` for `|x| <= w`, zero outside (total width `2w`).
    Square,
    /// `V(x) = v0 exp(-x^2 / w^2)`.
    Gaussian,
}

impl std::fmt::Display for PotentialKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PotentialKind::Square => write!(f, "square"),
            PotentialKind::Gaussian => write!(f, "gaussian"),
        }
    }
}

/// Static potential, signed: negative `v0` is a well, positive a barrier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSpec {
    pub kind: PotentialKind,
    pub v0: f64,
    /// Width parameter (length); half-width for `Square`, Gaussian scale otherwise.
    pub w: f64,
}

impl PotentialSpec {
    pub fn validate(self) -> Result<Self> {
        if !(self.w > 0.0) || !self.w.is_finite() {
            return Err(Error::InvalidInput(format!(
                "potential width must be finite and > 0, got {}",
                self.w
            )));
        }
        if !self.v0.is_finite() {
            return Err(Error::InvalidInput("potential strength must be finite".into()));
        }
        Ok(self)
    }

    /// Pointwise value `V(x)`.
    pub fn evaluate(&self, x: f64) -> f64 {
        match self.kind {
            PotentialKind::Square => {
                if x.abs() <= self.w {
                    self.v0
                } else {
                    0.0
                }
            }
            PotentialKind::Gaussian => self.v0 * (-(x / self.w).powi(2)).exp(),
        }
    }
}

/// Uniform 1D grid plus time-stepping parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub xmin: f64,
    pub xmax: f64,
    /// Number of nodes including both endpoints; spacing is `(xmax - xmin)/(nx - 1)`.
    pub nx: usize,
    pub dt: f64,
    pub t_final: f64,
    /// Times at which full fields are recorded; must be sorted and inside `[0, t_final]`.
    pub snapshot_times: Vec<f64>,
}

impl GridSpec {
    pub fn validate(self) -> Result<Self> {
        if !(self.xmin < self.xmax) {
            return Err(Error::InvalidInput(format!(
                "grid needs xmin < xmax, got [{}, {}]",
                self.xmin, self.xmax
            )));
        }
        if self.nx < 3 {
            return Err(Error::InvalidInput(format!("grid needs nx >= 3, got {}", self.nx)));
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::InvalidInput(format!("grid dt must be finite and > 0, got {}", self.dt)));
        }
        if !(self.t_final >= 0.0) || !self.t_final.is_finite() {
            return Err(Error::InvalidInput(format!(
                "grid t_final must be finite and >= 0, got {}",
                self.t_final
            )));
        }
        for pair in self.snapshot_times.windows(2) {
            if pair[0] > pair[1] {
                return Err(Error::InvalidInput("snapshot_times must be sorted ascending".into()));
            }
        }
        if let (Some(first), Some(last)) = (self.snapshot_times.first(), self.snapshot_times.last()) {
            if *first < 0.0 || *last > self.t_final {
                return Err(Error::InvalidInput(format!(
                    "snapshot_times must lie in [0, {}]",
                    self.t_final
                )));
            }
        }
        Ok(self)
    }

    /// Grid spacing.
    pub fn dx(&self) -> f64 {
        (self.xmax - self.xmin) / (self.nx - 1) as f64
    }

    /// Node coordinate `xmin + i dx`.
    pub fn x_at(&self, i: usize) -> f64 {
        self.xmin + i as f64 * self.dx()
    }
}

/// Reflected-wave morphology predicted from packet and obstacle scales alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Narrowness {
    /// Ratio <= 0.5: many interference peaks survive in the reflected wave.
    Diffractive,
    /// Between the two thresholds: no firm prediction.
    Marginal,
    /// Ratio >= 2: the peaks blur into a single hump.
    SingleHump,
}

impl std::fmt::Display for Narrowness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Narrowness::Diffractive => write!(f, "diffractive"),
            Narrowness::Marginal => write!(f, "marginal"),
            Narrowness::SingleHump => write!(f, "single-hump"),
        }
    }
}

/// Dimensionless packet-narrowness measure `sigma * sqrt(q0 / w)`.
///
/// Small values mean the packet is narrow compared to the scale set by its
/// momentum and the obstacle width, which is the condition for a persistent
/// multi-peak reflected pattern. Requires `q0 > 0` (a packet that is not
/// moving toward the obstacle has no meaningful classification).
pub fn narrowness_ratio(packet: &PacketSpec1D, pot: &PotentialSpec) -> Result<f64> {
    if packet.q0 <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "narrowness classification needs q0 > 0, got {}",
            packet.q0
        )));
    }
    Ok(packet.sigma * (packet.q0 / pot.w).sqrt())
}

/// Threshold classification of `narrowness_ratio`.
pub fn classify_narrowness(ratio: f64) -> Narrowness {
    if ratio <= 0.5 {
        Narrowness::Diffractive
    } else if ratio >= 2.0 {
        Narrowness::SingleHump
    } else {
        Narrowness::Marginal
    }
}

// ---------------------------------------------------------------------------
// Units
// ---------------------------------------------------------------------------

/// hbar * c in MeV * fm (CODATA).
pub const HBARC_MEV_FM: f64 = 197.326_980_4;
/// Speed of light in cm/s (exact).
pub const C_CM_PER_S: f64 = 2.997_924_58e10;
/// Atomic mass unit in MeV (CODATA).
pub const AMU_MEV: f64 = 931.494_102_42;
/// Neutron mass in MeV (CODATA).
pub const NEUTRON_MASS_MEV: f64 = 939.565_420_52;
/// Helium-4 nuclear mass in MeV (CODATA).
pub const HE4_MASS_MEV: f64 = 3_727.379_406_6;

/// Base length scale of the natural-unit system. Every quantity is expressed
/// as a power of this one unit: lengths and times in `base`, while momenta,
/// masses, energies and angular frequencies are in `1/base`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseLength {
    Femtometer,
    Centimeter,
}

/// Converter between laboratory unit tags and natural units.
///
/// Conversions are single multiplications by a frozen factor, so
/// `to_natural(from_natural(x, u), u)` round-trips to a couple of ulps.
#[derive(Debug, Clone, Copy)]
pub struct UnitSystem {
    base: BaseLength,
}

impl UnitSystem {
    pub fn new(base: BaseLength) -> Self {
        UnitSystem { base }
    }

    /// Factor such that `value_in_natural = value_in_unit * factor`.
    fn factor(&self, unit: &str) -> Result<f64> {
        // (factor for a femtometer base, true when the quantity carries
        // dimension 1/length rather than length)
        let fm_per_cm = 1e13;
        let (fm_factor, inverse_length) = match unit {
            "fm" => (1.0, false),
            "mm" => (1e12, false),
            "cm" => (fm_per_cm, false),
            "m" => (1e15, false),
            // time is a length once c = 1
            "s" => (C_CM_PER_S * fm_per_cm, false),
            // energies, masses and momenta are inverse lengths once hbar = c = 1
            "MeV" => (1.0 / HBARC_MEV_FM, true),
            "eV" => (1e-6 / HBARC_MEV_FM, true),
            "amu" => (AMU_MEV / HBARC_MEV_FM, true),
            // angular frequency omega = E / hbar
            "1/s" => (1.0 / (C_CM_PER_S * fm_per_cm), true),
            other => {
                return Err(Error::InvalidInput(format!("unknown unit tag '{other}'")));
            }
        };
        let base_scale = match self.base {
            BaseLength::Femtometer => 1.0,
            BaseLength::Centimeter => {
                if inverse_length {
                    fm_per_cm
                } else {
                    1.0 / fm_per_cm
                }
            }
        };
        Ok(fm_factor * base_scale)
    }

    /// Express a tagged laboratory value in natural units.
    pub fn to_natural(&self, value: f64, unit: &str) -> Result<f64> {
        Ok(value * self.factor(unit)?)
    }

    /// Express a natural-unit value in the tagged laboratory unit.
    pub fn from_natural(&self, value: f64, unit: &str) -> Result<f64> {
        Ok(value / self.factor(unit)?)
    }
}
