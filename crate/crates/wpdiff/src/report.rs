//! Run artifacts: CSV profiles and a plain-text report.
//!
//! Every number is written in the shortest decimal form that parses back to
//! the same bits (`f64` Display), so a written file re-read is exact and two
//! runs of the same config are byte-identical. Lines end in LF. The report
//! is deterministic except for its closing wall-clock line; every
//! machine-readable hook uses grep-friendly `key=value` (no spaces).

use std::fs;
use std::io::{BufWriter, Write as IoWrite};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::scenarios::{Mode, RunRecord, Snapshot, SnapshotData};

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}

/// Filename-safe rendering of a time value: `.` → `p`, `-` → `m`.
fn time_tag(t: f64) -> String {
    format!("{t}").replace('.', "p").replace('-', "m")
}

fn join_f64(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|v| format!("{v}")).collect();
    parts.join(", ")
}

/// Write one snapshot as CSV. Headers by payload:
/// scalar `x,re,im,abs`; spinor `x,re_u,im_u,re_v,im_v,abs` with `abs` the
/// upper-component magnitude (the quantity every pattern census uses);
/// plane `x,y,abs` in row-major order (y outer, x inner), both ascending.
pub fn write_profile_csv(snap: &Snapshot, path: &Path) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| io_err(path, e))?;
    let mut out = BufWriter::new(file);
    let r: std::io::Result<()> = (|| {
        match &snap.data {
            SnapshotData::Scalar(psi) => {
                writeln!(out, "x,re,im,abs")?;
                for (k, z) in psi.iter().enumerate() {
                    let x = snap.x0 + k as f64 * snap.dx;
                    writeln!(out, "{x},{},{},{}", z.re, z.im, z.norm())?;
                }
            }
            SnapshotData::Spinor { u, v } => {
                writeln!(out, "x,re_u,im_u,re_v,im_v,abs")?;
                for (k, (zu, zv)) in u.iter().zip(v).enumerate() {
                    let x = snap.x0 + k as f64 * snap.dx;
                    writeln!(out, "{x},{},{},{},{},{}", zu.re, zu.im, zv.re, zv.im, zu.norm())?;
                }
            }
            SnapshotData::Plane { extent, resolution, values } => {
                writeln!(out, "x,y,abs")?;
                let res = *resolution;
                let coord = |i: usize| -> f64 {
                    if res < 2 {
                        0.0
                    } else {
                        -extent + 2.0 * extent * i as f64 / (res - 1) as f64
                    }
                };
                for row in 0..res {
                    let y = coord(row);
                    for col in 0..res {
                        writeln!(out, "{},{y},{}", coord(col), values[row * res + col])?;
                    }
                }
            }
        }
        out.flush()
    })();
    r.map_err(|e| io_err(path, e))
}

/// Write a detector series as `t,counts` CSV.
pub fn write_counts_csv(series: &[(f64, f64)], path: &Path) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| io_err(path, e))?;
    let mut out = BufWriter::new(file);
    let r: std::io::Result<()> = (|| {
        writeln!(out, "t,counts")?;
        for (t, counts) in series {
            writeln!(out, "{t},{counts}")?;
        }
        out.flush()
    })();
    r.map_err(|e| io_err(path, e))
}

/// A 1D curve read back from CSV: first sample coordinate, spacing, and the
/// final (`abs`/`counts`) column.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileColumn {
    pub x0: f64,
    pub dx: f64,
    pub values: Vec<f64>,
}

const PROFILE_HEADERS: [&str; 3] = ["x,re,im,abs", "x,re_u,im_u,re_v,im_v,abs", "t,counts"];

/// Read a 1D profile CSV (scalar, spinor or counts schema): the first column
/// is the coordinate, the last the magnitude. The coordinate grid must be
/// uniform to 1e-6 of its spacing. Field maps (`x,y,abs`) are not 1D curves
/// and are rejected.
pub fn read_profile_csv(path: &Path) -> Result<ProfileColumn> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Config(format!("{}: empty file", path.display())))?
        .trim();
    if !PROFILE_HEADERS.contains(&header) {
        return Err(Error::Config(format!(
            "{}: header '{header}' is not a 1D profile (expected one of: {})",
            path.display(),
            PROFILE_HEADERS.join(" | ")
        )));
    }
    let ncols = header.split(',').count();
    let mut coords = Vec::new();
    let mut values = Vec::new();
    for (ln, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != ncols {
            return Err(Error::Config(format!(
                "{}: line {}: {} fields, expected {ncols}",
                path.display(),
                ln + 2,
                fields.len()
            )));
        }
        let parse = |raw: &str| -> Result<f64> {
            raw.parse::<f64>().map_err(|_| {
                Error::Config(format!(
                    "{}: line {}: '{raw}' is not a number",
                    path.display(),
                    ln + 2
                ))
            })
        };
        coords.push(parse(fields[0])?);
        values.push(parse(fields[ncols - 1])?);
    }
    if coords.len() < 2 {
        return Err(Error::Config(format!(
            "{}: need at least 2 data rows, got {}",
            path.display(),
            coords.len()
        )));
    }
    let n = coords.len();
    let dx = (coords[n - 1] - coords[0]) / (n - 1) as f64;
    if !(dx > 0.0) || !dx.is_finite() {
        return Err(Error::Config(format!(
            "{}: coordinates must be strictly increasing",
            path.display()
        )));
    }
    for (k, &x) in coords.iter().enumerate() {
        let expect = coords[0] + k as f64 * dx;
        if (x - expect).abs() > 1e-6 * dx {
            return Err(Error::Config(format!(
                "{}: non-uniform grid at row {} (x = {x}, expected {expect})",
                path.display(),
                k + 1
            )));
        }
    }
    Ok(ProfileColumn { x0: coords[0], dx, values })
}

/// Render the plain-text report. Deterministic except the final
/// `wall_clock_ms=` line; hooks are `key=value` with defaulted inputs
/// carrying an `assumed=default` marker.
pub fn render_report(record: &RunRecord, stem: &str, wall_ms: u128) -> String {
    use std::fmt::Write;
    let mut s = String::new();
    let _ = writeln!(s, "# wave-packet diffraction run report");
    let _ = writeln!(s, "run={stem}");
    if let Some(preset) = &record.preset {
        let _ = writeln!(s, "preset={preset}");
    }
    let _ = writeln!(s, "\n[config]");
    for line in &record.config_echo {
        if line.assumed {
            let _ = writeln!(s, "{}={} assumed=default", line.key, line.value);
        } else {
            let _ = writeln!(s, "{}={}", line.key, line.value);
        }
    }
    let _ = writeln!(s, "\n[results]");
    let _ = writeln!(s, "snapshots={}", record.snapshots.len());
    for (k, snap) in record.snapshots.iter().enumerate() {
        let _ = writeln!(s, "snapshot.{k}.t={}", snap.t);
    }
    let _ = writeln!(s, "norm.samples={}", record.norm_series.len());
    if !record.norm_series.is_empty() {
        let first = &record.norm_series[0];
        let last = &record.norm_series[record.norm_series.len() - 1];
        let _ = writeln!(s, "norm.initial={}", first.norm);
        let _ = writeln!(s, "norm.final={}", last.norm);
        let _ = writeln!(s, "norm.drift={}", record.norm_drift());
        let _ = writeln!(s, "edge.max_probability={}", record.max_edge_probability);
    }
    if let Some(peaks) = &record.peak_report {
        let _ = writeln!(s, "peaks.count={}", peaks.count);
        let _ = writeln!(s, "peaks.positions={}", join_f64(&peaks.positions));
        let _ = writeln!(s, "peaks.heights={}", join_f64(&peaks.heights));
        let _ = writeln!(s, "peaks.spacings={}", join_f64(&peaks.spacings));
        let _ = writeln!(s, "peaks.height_floor_frac={}", peaks.height_floor_frac);
        let _ = writeln!(s, "peaks.valley_frac={}", peaks.valley_frac);
        let _ = writeln!(s, "peaks.neighbor_side={}", peaks.neighbor_side);
    }
    if let Some(cmp) = &record.comparison {
        let _ = writeln!(s, "compare.max_abs={}", cmp.max_abs);
        let _ = writeln!(s, "compare.scale={}", cmp.scale);
        let _ = writeln!(s, "compare.peak_rel={}", cmp.peak_rel);
        let _ = writeln!(s, "compare.offsets={}", join_f64(&cmp.offsets));
        let _ = writeln!(s, "compare.max_offset={}", cmp.max_offset);
        let _ = writeln!(s, "compare.matched={}", cmp.matched);
        let _ = writeln!(s, "compare.unmatched={}", cmp.unmatched);
    }
    if let Some(tc) = &record.transmission {
        let _ = writeln!(s, "transmission.evolved_fraction={}", tc.evolved_fraction);
        let _ = writeln!(s, "transmission.stationary_fraction={}", tc.stationary_fraction);
        let _ = writeln!(s, "transmission.floor={}", tc.floor);
        let _ = writeln!(s, "transmission.agrees={}", tc.agrees);
    }
    if !record.detector_series.is_empty() {
        let n = record.detector_series.len();
        let (last_t, _) = record.detector_series[n - 1];
        let (mut max_t, mut max_c) = record.detector_series[0];
        for &(t, c) in &record.detector_series {
            if c > max_c {
                max_c = c;
                max_t = t;
            }
        }
        let _ = writeln!(s, "detector.samples={n}");
        let _ = writeln!(s, "detector.last_t={last_t}");
        let _ = writeln!(s, "detector.max_counts={max_c}");
        let _ = writeln!(s, "detector.max_counts_t={max_t}");
    }
    for note in &record.notes {
        let _ = writeln!(s, "note={note}");
    }
    let _ = writeln!(s, "\nwall_clock_ms={wall_ms}");
    s
}

/// Write every artifact of a run into `out_dir`, named `<stem>_*`, and
/// return the paths in creation order. Always writes `<stem>_report.txt`;
/// curve/map/counts files depend on the mode:
///
/// - evolved 1D runs: `<stem>_snapshot_<k>_t<tag>.csv` per snapshot and
///   `<stem>_profile.csv` for the final state;
/// - analytic 1D: `<stem>_profile.csv` (quadrature) and
///   `<stem>_closed_form.csv`;
/// - analytic 3D: `<stem>_map.csv`;
/// - experiment: snapshots + profile as for evolved runs, plus
///   `<stem>_counts.csv`.
pub fn write_run_outputs(
    record: &RunRecord,
    out_dir: &Path,
    stem: &str,
    wall_ms: u128,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir).map_err(|e| io_err(out_dir, e))?;
    let mut written = Vec::new();
    let emit = |name: String| out_dir.join(name);

    match record.mode {
        Mode::Schrodinger1D | Mode::Dirac1D | Mode::Experiment => {
            for (k, snap) in record.snapshots.iter().enumerate() {
                let path = emit(format!("{stem}_snapshot_{k}_t{}.csv", time_tag(snap.t)));
                write_profile_csv(snap, &path)?;
                written.push(path);
            }
            if let Some(last) = record.snapshots.last() {
                let path = emit(format!("{stem}_profile.csv"));
                write_profile_csv(last, &path)?;
                written.push(path);
            }
            if !record.detector_series.is_empty() {
                let path = emit(format!("{stem}_counts.csv"));
                write_counts_csv(&record.detector_series, &path)?;
                written.push(path);
            }
        }
        Mode::Analytic1D => {
            if let Some(quad) = record.snapshots.first() {
                let path = emit(format!("{stem}_profile.csv"));
                write_profile_csv(quad, &path)?;
                written.push(path);
            }
            if let Some(closed) = record.snapshots.get(1) {
                let path = emit(format!("{stem}_closed_form.csv"));
                write_profile_csv(closed, &path)?;
                written.push(path);
            }
        }
        Mode::Analytic3D => {
            if let Some(map) = record.snapshots.first() {
                let path = emit(format!("{stem}_map.csv"));
                write_profile_csv(map, &path)?;
                written.push(path);
            }
        }
    }

    let report_path = out_dir.join(format!("{stem}_report.txt"));
    fs::write(&report_path, render_report(record, stem, wall_ms))
        .map_err(|e| io_err(&report_path, e))?;
    written.push(report_path);
    Ok(written)
}
