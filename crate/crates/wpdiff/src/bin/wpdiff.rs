//! Command-line front end.
//!
//! Exit codes: 0 success, 1 config/usage error, 2 runtime (numerical or I/O)
//! failure. A malformed config exits 1 before any output file is created:
//! parsing and validation complete first, and single runs compute their full
//! result before the first write.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::{Parser, Subcommand};

use wpdiff::config::{self, SweepAxis};
use wpdiff::error::Error;
use wpdiff::report;
use wpdiff::scenarios::{self, ComparisonMetrics, Mode, ScenarioConfig};

#[derive(Parser)]
#[command(
    name = "wpdiff",
    about = "Wave-packet diffraction in space and time: evolve, evaluate, compare",
    version
)]
struct Cli {
    /// Worker threads (default: WPDIFF_THREADS, then all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve a packet on a grid (schrodinger1d / dirac1d configs).
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Override the quadrature node floor from the config.
        #[arg(long)]
        nk: Option<usize>,
    },
    /// Evaluate closed-form patterns (analytic1d / analytic3d configs).
    Analytic {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long)]
        nk: Option<usize>,
    },
    /// Compare two 1D profile CSVs (peak census + pointwise metrics).
    Compare {
        /// Reference profile.
        a: PathBuf,
        /// Candidate profile.
        b: PathBuf,
        /// Also write compare_report.txt here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named preset (fig1, fig4, fig5, fig6, fig7, fig8, fig9, fig10).
    Preset {
        #[arg(value_name = "NAME", required_unless_present = "preset")]
        name: Option<String>,
        /// Alternative to the positional name.
        #[arg(long, conflicts_with = "name")]
        preset: Option<String>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long)]
        nk: Option<usize>,
    },
    /// Run the laboratory counting scenario (default: the built-in slow-drop
    /// configuration; --config accepts an experiment-mode file).
    Experiment {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Run the cartesian product of a base config and its [sweep] axes.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
}

/// Terminal failure: exit code plus message.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Config(_) | Error::InvalidInput(_) => 1,
            _ => 2,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version land here too and must exit 0.
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn resolve_threads(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    let n = match flag {
        Some(n) => Some(n),
        None => match std::env::var("WPDIFF_THREADS") {
            Ok(raw) => Some(raw.parse::<usize>().map_err(|_| Failure {
                code: 1,
                msg: format!("WPDIFF_THREADS='{raw}' is not a thread count"),
            })?),
            Err(_) => None,
        },
    };
    if n == Some(0) {
        return Err(Failure { code: 1, msg: "thread count must be >= 1".into() });
    }
    Ok(n)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let threads = resolve_threads(cli.threads)?;
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure { code: 2, msg: format!("thread pool: {e}") })?;
    }
    match cli.command {
        Command::Simulate { config, out, nk } => {
            let cfg = load_config(&config, nk)?;
            if !matches!(cfg.mode, Mode::Schrodinger1D | Mode::Dirac1D) {
                return Err(usage(format!(
                    "simulate runs schrodinger1d/dirac1d configs; '{}' belongs to another subcommand",
                    cfg.mode
                )));
            }
            run_and_write(&cfg, &out, "run")
        }
        Command::Analytic { config, out, nk } => {
            let cfg = load_config(&config, nk)?;
            if !matches!(cfg.mode, Mode::Analytic1D | Mode::Analytic3D) {
                return Err(usage(format!(
                    "analytic runs analytic1d/analytic3d configs; '{}' belongs to another subcommand",
                    cfg.mode
                )));
            }
            run_and_write(&cfg, &out, "run")
        }
        Command::Compare { a, b, out } => run_compare(&a, &b, out.as_deref()),
        Command::Preset { name, preset, out, nk } => {
            let name = name.or(preset).expect("clap enforces one");
            let mut cfg = scenarios::presets::preset_config(&name)?;
            if let Some(nk) = nk {
                cfg.nk = Some(nk);
                cfg.validate()?;
            }
            run_and_write(&cfg, &out, &name)
        }
        Command::Experiment { config, out } => {
            let cfg = match config {
                Some(path) => {
                    let cfg = load_config(&path, None)?;
                    if cfg.mode != Mode::Experiment {
                        return Err(usage(format!(
                            "experiment needs an experiment-mode config, got '{}'",
                            cfg.mode
                        )));
                    }
                    cfg
                }
                None => scenarios::experiment::helium_drop_config(),
            };
            run_and_write(&cfg, &out, "experiment")
        }
        Command::Sweep { config, out } => run_sweep(&config, &out, threads),
    }
}

fn usage(msg: String) -> Failure {
    Failure { code: 1, msg }
}

/// Read + parse + validate a config file; reading failures are config
/// errors (exit 1), not I/O failures.
fn load_config(path: &Path, nk: Option<usize>) -> Result<ScenarioConfig, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut cfg = config::parse_config(&text)?;
    if let Some(nk) = nk {
        cfg.nk = Some(nk);
        cfg.validate()?;
    }
    Ok(cfg)
}

fn run_and_write(cfg: &ScenarioConfig, out: &Path, stem: &str) -> Result<(), Failure> {
    let start = Instant::now();
    let record = scenarios::run_scenario(cfg)?;
    let files = report::write_run_outputs(&record, out, stem, start.elapsed().as_millis())?;
    for f in &files {
        println!("wrote {}", f.display());
    }
    if let Some(peaks) = &record.peak_report {
        println!("peaks.count={}", peaks.count);
    }
    if !record.norm_series.is_empty() {
        println!("norm.drift={}", record.norm_drift());
    }
    Ok(())
}

fn format_comparison(m: &ComparisonMetrics) -> String {
    let offsets: Vec<String> = m.offsets.iter().map(|v| format!("{v}")).collect();
    format!(
        "compare.max_abs={}\ncompare.scale={}\ncompare.peak_rel={}\ncompare.offsets={}\n\
         compare.max_offset={}\ncompare.matched={}\ncompare.unmatched={}\n",
        m.max_abs,
        m.scale,
        m.peak_rel,
        offsets.join(", "),
        m.max_offset,
        m.matched,
        m.unmatched
    )
}

fn run_compare(a: &Path, b: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let ref_profile = report::read_profile_csv(a)?;
    let cand_profile = report::read_profile_csv(b)?;
    if ref_profile.values.len() != cand_profile.values.len() {
        return Err(usage(format!(
            "profiles live on different grids: {} vs {} rows",
            ref_profile.values.len(),
            cand_profile.values.len()
        )));
    }
    let dx = ref_profile.dx;
    if (ref_profile.x0 - cand_profile.x0).abs() > 1e-9 * dx
        || (dx - cand_profile.dx).abs() > 1e-9 * dx
    {
        return Err(usage(format!(
            "profiles live on different grids: x0 {} vs {}, dx {} vs {}",
            ref_profile.x0, cand_profile.x0, ref_profile.dx, cand_profile.dx
        )));
    }
    let metrics = scenarios::compare_profiles(
        &ref_profile.values,
        &cand_profile.values,
        ref_profile.x0,
        dx,
    )?;
    let text = format_comparison(&metrics);
    print!("{text}");
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)
            .map_err(|e| Failure { code: 2, msg: format!("{}: {e}", dir.display()) })?;
        let path = dir.join("compare_report.txt");
        std::fs::write(&path, &text)
            .map_err(|e| Failure { code: 2, msg: format!("{}: {e}", path.display()) })?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn run_sweep(config_path: &Path, out: &Path, threads: Option<usize>) -> Result<(), Failure> {
    let text = std::fs::read_to_string(config_path)
        .map_err(|e| usage(format!("cannot read config {}: {e}", config_path.display())))?;
    let (base, axes): (ScenarioConfig, Vec<SweepAxis>) = config::parse_sweep_config(&text)?;
    if axes.is_empty() {
        return Err(usage("sweep needs a [sweep] section with at least one axis".into()));
    }
    let points = config::expand_sweep(&base, &axes)?;

    // Everything is validated; from here on filesystem work may begin.
    std::fs::create_dir_all(out)
        .map_err(|e| Failure { code: 2, msg: format!("{}: {e}", out.display()) })?;
    let mut index = String::new();
    let mut dirs = Vec::with_capacity(points.len());
    for (cfg, tags) in &points {
        let hash = config::config_hash(cfg);
        let tag_text: Vec<String> = tags.iter().map(|(k, v)| format!("{k}={v}")).collect();
        index.push_str(&format!("point_{hash}  {}\n", tag_text.join(" ")));
        dirs.push(out.join(format!("point_{hash}")));
    }
    let index_path = out.join("sweep_index.txt");
    std::fs::write(&index_path, index)
        .map_err(|e| Failure { code: 2, msg: format!("{}: {e}", index_path.display()) })?;
    println!("wrote {}", index_path.display());
    println!("sweep: {} points", points.len());

    let workers = threads
        .or_else(|| std::thread::available_parallelism().ok().map(|n| n.get()))
        .unwrap_or(1)
        .min(points.len());
    let next = AtomicUsize::new(0);
    let failures: Mutex<Vec<String>> = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= points.len() {
                    break;
                }
                let (cfg, tags) = &points[i];
                let dir = &dirs[i];
                match run_sweep_point(cfg, dir) {
                    Ok(()) => println!("done {}", dir.display()),
                    Err(e) => {
                        let tag_text: Vec<String> =
                            tags.iter().map(|(k, v)| format!("{k}={v}")).collect();
                        failures
                            .lock()
                            .expect("no panics hold this lock")
                            .push(format!("{} ({}): {}", dir.display(), tag_text.join(" "), e.msg));
                    }
                }
            });
        }
    });
    let failures = failures.into_inner().expect("scope joined");
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure {
            code: 2,
            msg: format!("{} sweep point(s) failed:\n  {}", failures.len(), failures.join("\n  ")),
        })
    }
}

fn run_sweep_point(cfg: &ScenarioConfig, dir: &Path) -> Result<(), Failure> {
    let start = Instant::now();
    let record = scenarios::run_scenario(cfg)?;
    std::fs::create_dir_all(dir)
        .map_err(|e| Failure { code: 2, msg: format!("{}: {e}", dir.display()) })?;
    let cfg_path = dir.join("run.cfg");
    std::fs::write(&cfg_path, config::to_ini(cfg))
        .map_err(|e| Failure { code: 2, msg: format!("{}: {e}", cfg_path.display()) })?;
    report::write_run_outputs(&record, dir, "run", start.elapsed().as_millis())?;
    Ok(())
}
