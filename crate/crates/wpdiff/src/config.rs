//! Text config files: a strict INI dialect mapping one-to-one onto
//! `ScenarioConfig`.
//!
//! Strictness is the point — every key is either consumed or rejected, so a
//! typo cannot silently fall back to a default, and every number round-trips
//! through the shortest-exact decimal form (`f64` Display/parse), so a
//! config regenerated from a parsed one reproduces the run bit for bit.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{GridSpec, PacketSpec1D, PotentialKind, PotentialSpec};
use crate::scenarios::{DetectorSpec, Mode, ScenarioConfig};

/// One swept parameter: a dotted numeric key and the raw values it takes.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub key: String,
    pub values: Vec<String>,
}

const SECTIONS: [&str; 6] = ["packet", "potential", "grid", "run", "detector", "sweep"];

/// Keys the sweep section may vary (dotted form). `potential.kind` and
/// `run.mode` are deliberately absent: changing them mid-sweep changes the
/// meaning of every other key.
pub const SWEEPABLE_KEYS: [&str; 17] = [
    "packet.sigma",
    "packet.q0",
    "packet.x0",
    "packet.mass",
    "potential.v0",
    "potential.w",
    "grid.xmin",
    "grid.xmax",
    "grid.nx",
    "grid.dt",
    "grid.t_final",
    "run.nk",
    "run.impact",
    "run.particle_count",
    "detector.position",
    "detector.width",
    "detector.interval",
];

fn parse_f64(section: &str, key: &str, raw: &str) -> Result<f64> {
    raw.trim().parse::<f64>().map_err(|_| {
        Error::Config(format!("[{section}] {key}: '{raw}' is not a number"))
    })
}

fn parse_usize(section: &str, key: &str, raw: &str) -> Result<usize> {
    raw.trim().parse::<usize>().map_err(|_| {
        Error::Config(format!("[{section}] {key}: '{raw}' is not a nonnegative integer"))
    })
}

fn parse_list(section: &str, key: &str, raw: &str) -> Result<Vec<f64>> {
    raw.split(',').map(|piece| parse_f64(section, key, piece)).collect()
}

/// Split INI text into (section, key, value) entries, enforcing known
/// sections, `key = value` shape and uniqueness. `#`/`;` lines are comments.
fn tokenize(text: &str) -> Result<Vec<(String, String, String)>> {
    let mut entries = Vec::new();
    let mut seen = BTreeMap::new();
    let mut section: Option<String> = None;
    for (ln, raw_line) in text.lines().enumerate() {
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| Error::Config(format!("line {}: unterminated section header", ln + 1)))?
                .trim()
                .to_string();
            if !SECTIONS.contains(&name.as_str()) {
                return Err(Error::Config(format!(
                    "line {}: unknown section [{name}] (expected {})",
                    ln + 1,
                    SECTIONS.join(", ")
                )));
            }
            section = Some(name);
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Config(format!("line {}: expected 'key = value', got '{line}'", ln + 1)));
        };
        let Some(section) = section.clone() else {
            return Err(Error::Config(format!("line {}: key before any [section]", ln + 1)));
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if key.is_empty() || value.is_empty() {
            return Err(Error::Config(format!("line {}: empty key or value", ln + 1)));
        }
        if seen.insert((section.clone(), key.clone()), ()).is_some() {
            return Err(Error::Config(format!("line {}: duplicate key {section}.{key}", ln + 1)));
        }
        entries.push((section, key, value));
    }
    Ok(entries)
}

struct Entries(BTreeMap<(String, String), String>);

impl Entries {
    fn take(&mut self, section: &str, key: &str) -> Option<String> {
        self.0.remove(&(section.to_string(), key.to_string()))
    }

    fn require(&mut self, section: &str, key: &str) -> Result<String> {
        self.take(section, key)
            .ok_or_else(|| Error::Config(format!("missing required key [{section}] {key}")))
    }

    fn require_f64(&mut self, section: &str, key: &str) -> Result<f64> {
        let raw = self.require(section, key)?;
        parse_f64(section, key, &raw)
    }
}

/// Parse a complete scenario config. A `[sweep]` section is rejected here;
/// use `parse_sweep_config` for sweep inputs.
pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    let (cfg, axes) = parse_config_inner(text, false)?;
    debug_assert!(axes.is_empty());
    Ok(cfg)
}

/// Parse a scenario config plus the `[sweep]` axes varying it.
pub fn parse_sweep_config(text: &str) -> Result<(ScenarioConfig, Vec<SweepAxis>)> {
    parse_config_inner(text, true)
}

fn parse_config_inner(text: &str, allow_sweep: bool) -> Result<(ScenarioConfig, Vec<SweepAxis>)> {
    let mut entries = Entries(
        tokenize(text)?
            .into_iter()
            .map(|(s, k, v)| ((s, k), v))
            .collect(),
    );

    let mode: Mode = entries.require("run", "mode")?.parse()?;

    let packet = PacketSpec1D {
        sigma: entries.require_f64("packet", "sigma")?,
        q0: entries.require_f64("packet", "q0")?,
        x0: entries.require_f64("packet", "x0")?,
        mass: entries.require_f64("packet", "mass")?,
    };

    let kind = match entries.require("potential", "kind")?.as_str() {
        "square" => PotentialKind::Square,
        "gaussian" => PotentialKind::Gaussian,
        other => {
            return Err(Error::Config(format!(
                "[potential] kind: '{other}' (expected square or gaussian)"
            )));
        }
    };
    let potential = PotentialSpec {
        kind,
        v0: entries.require_f64("potential", "v0")?,
        w: entries.require_f64("potential", "w")?,
    };

    let nx_raw = entries.require("grid", "nx")?;
    let snapshot_times = match entries.take("grid", "snapshot_times") {
        Some(raw) => parse_list("grid", "snapshot_times", &raw)?,
        None => Vec::new(),
    };
    let grid = GridSpec {
        xmin: entries.require_f64("grid", "xmin")?,
        xmax: entries.require_f64("grid", "xmax")?,
        nx: parse_usize("grid", "nx", &nx_raw)?,
        dt: entries.require_f64("grid", "dt")?,
        t_final: entries.require_f64("grid", "t_final")?,
        snapshot_times,
    };

    let nk = match entries.take("run", "nk") {
        Some(raw) => Some(parse_usize("run", "nk", &raw)?),
        None => None,
    };
    let impact = match entries.take("run", "impact") {
        Some(raw) => parse_f64("run", "impact", &raw)?,
        None => 0.0,
    };
    let particle_count = match entries.take("run", "particle_count") {
        Some(raw) => Some(parse_f64("run", "particle_count", &raw)?),
        None => None,
    };

    let has_detector = entries.0.keys().any(|(s, _)| s == "detector");
    let detector = if has_detector {
        Some(DetectorSpec {
            position: entries.require_f64("detector", "position")?,
            width: entries.require_f64("detector", "width")?,
            interval: entries.require_f64("detector", "interval")?,
        })
    } else {
        None
    };

    let mut axes = Vec::new();
    let sweep_keys: Vec<String> = entries
        .0
        .keys()
        .filter(|(s, _)| s == "sweep")
        .map(|(_, k)| k.clone())
        .collect();
    for key in sweep_keys {
        let raw = entries.take("sweep", &key).expect("listed above");
        if !allow_sweep {
            return Err(Error::Config(
                "[sweep] section is only valid for the sweep subcommand".into(),
            ));
        }
        if !SWEEPABLE_KEYS.contains(&key.as_str()) {
            return Err(Error::Config(format!(
                "[sweep] {key} is not sweepable (allowed: {})",
                SWEEPABLE_KEYS.join(", ")
            )));
        }
        let values: Vec<String> = raw.split(',').map(|v| v.trim().to_string()).collect();
        if values.is_empty() || values.iter().any(|v| v.is_empty()) {
            return Err(Error::Config(format!("[sweep] {key}: empty value list")));
        }
        axes.push(SweepAxis { key, values });
    }

    if let Some(((section, key), _)) = entries.0.iter().next() {
        return Err(Error::Config(format!("unknown key [{section}] {key}")));
    }

    let cfg = ScenarioConfig {
        mode,
        packet,
        potential,
        grid,
        impact,
        nk,
        preset_name: None,
        detector,
        particle_count,
        assumed_keys: Vec::new(),
    };
    cfg.validate()?;
    Ok((cfg, axes))
}

/// Overwrite one dotted key with a raw value (sweep machinery). Only keys in
/// `SWEEPABLE_KEYS` are accepted.
pub fn apply_override(cfg: &mut ScenarioConfig, key: &str, raw: &str) -> Result<()> {
    let (section, field) = key
        .split_once('.')
        .ok_or_else(|| Error::Config(format!("override key '{key}' is not dotted")))?;
    let num = || parse_f64(section, field, raw);
    match key {
        "packet.sigma" => cfg.packet.sigma = num()?,
        "packet.q0" => cfg.packet.q0 = num()?,
        "packet.x0" => cfg.packet.x0 = num()?,
        "packet.mass" => cfg.packet.mass = num()?,
        "potential.v0" => cfg.potential.v0 = num()?,
        "potential.w" => cfg.potential.w = num()?,
        "grid.xmin" => cfg.grid.xmin = num()?,
        "grid.xmax" => cfg.grid.xmax = num()?,
        "grid.nx" => cfg.grid.nx = parse_usize(section, field, raw)?,
        "grid.dt" => cfg.grid.dt = num()?,
        "grid.t_final" => cfg.grid.t_final = num()?,
        "run.nk" => cfg.nk = Some(parse_usize(section, field, raw)?),
        "run.impact" => cfg.impact = num()?,
        "run.particle_count" => cfg.particle_count = Some(num()?),
        "detector.position" | "detector.width" | "detector.interval" => {
            let det = cfg.detector.as_mut().ok_or_else(|| {
                Error::Config(format!("override '{key}' needs a [detector] section"))
            })?;
            match field {
                "position" => det.position = num()?,
                "width" => det.width = num()?,
                _ => det.interval = num()?,
            }
        }
        other => {
            return Err(Error::Config(format!("key '{other}' cannot be overridden")));
        }
    }
    Ok(())
}

/// Serialize a config back to the INI dialect `parse_config` reads. The
/// output is canonical: fixed section and key order, shortest-exact numbers,
/// LF endings. `preset_name` and `assumed_keys` are presentation data and are
/// not serialized.
pub fn to_ini(cfg: &ScenarioConfig) -> String {
    use std::fmt::Write;
    let mut s = String::new();
    let _ = writeln!(s, "[packet]");
    let _ = writeln!(s, "sigma = {}", cfg.packet.sigma);
    let _ = writeln!(s, "q0 = {}", cfg.packet.q0);
    let _ = writeln!(s, "x0 = {}", cfg.packet.x0);
    let _ = writeln!(s, "mass = {}", cfg.packet.mass);
    let _ = writeln!(s, "\n[potential]");
    let _ = writeln!(s, "kind = {}", cfg.potential.kind);
    let _ = writeln!(s, "v0 = {}", cfg.potential.v0);
    let _ = writeln!(s, "w = {}", cfg.potential.w);
    let _ = writeln!(s, "\n[grid]");
    let _ = writeln!(s, "xmin = {}", cfg.grid.xmin);
    let _ = writeln!(s, "xmax = {}", cfg.grid.xmax);
    let _ = writeln!(s, "nx = {}", cfg.grid.nx);
    let _ = writeln!(s, "dt = {}", cfg.grid.dt);
    let _ = writeln!(s, "t_final = {}", cfg.grid.t_final);
    if !cfg.grid.snapshot_times.is_empty() {
        let list: Vec<String> = cfg.grid.snapshot_times.iter().map(|t| format!("{t}")).collect();
        let _ = writeln!(s, "snapshot_times = {}", list.join(", "));
    }
    let _ = writeln!(s, "\n[run]");
    let _ = writeln!(s, "mode = {}", cfg.mode);
    if let Some(nk) = cfg.nk {
        let _ = writeln!(s, "nk = {nk}");
    }
    if cfg.impact != 0.0 {
        let _ = writeln!(s, "impact = {}", cfg.impact);
    }
    if let Some(n) = cfg.particle_count {
        let _ = writeln!(s, "particle_count = {n}");
    }
    if let Some(det) = cfg.detector {
        let _ = writeln!(s, "\n[detector]");
        let _ = writeln!(s, "position = {}", det.position);
        let _ = writeln!(s, "width = {}", det.width);
        let _ = writeln!(s, "interval = {}", det.interval);
    }
    s
}

/// FNV-1a 64-bit hash (stable across platforms and runs).
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Canonical 16-hex-digit tag of a config, used to namespace sweep outputs.
pub fn config_hash(cfg: &ScenarioConfig) -> String {
    format!("{:016x}", fnv1a64(to_ini(cfg).as_bytes()))
}

/// Expand sweep axes into the cartesian product of per-point configs, each
/// tagged with its overrides `(key, value)` in axis order. Axis order is the
/// config file order; the last axis varies fastest.
pub fn expand_sweep(
    base: &ScenarioConfig,
    axes: &[SweepAxis],
) -> Result<Vec<(ScenarioConfig, Vec<(String, String)>)>> {
    let mut points = vec![(base.clone(), Vec::new())];
    for axis in axes {
        let mut next = Vec::with_capacity(points.len() * axis.values.len());
        for (cfg, tags) in &points {
            for value in &axis.values {
                let mut cfg = cfg.clone();
                apply_override(&mut cfg, &axis.key, value)?;
                let mut tags = tags.clone();
                tags.push((axis.key.clone(), value.clone()));
                next.push((cfg, tags));
            }
        }
        points = next;
    }
    for (cfg, tags) in &points {
        cfg.validate().map_err(|e| {
            Error::Config(format!("sweep point {tags:?} is invalid: {e}"))
        })?;
    }
    Ok(points)
}
