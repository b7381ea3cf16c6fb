//! Command-line front end.
//!
//! Exit codes: 0 ok, 2 invalid scene or input, 3 io / not found,
//! 4 simulation failure. Errors go to stderr as one JSON object.

use crate::analytics::{
    colorize_density, render_trajectory_plot, ResultBundle, PLOT_PIXELS_PER_METER,
};
use crate::engine::{SimError, Simulation, SimulationConfig};
use crate::scene::{
    parse_scene_with_warnings, serialize_scene, validate_scene, Issue, Scene, SceneLimits,
    Severity, ValidationReport,
};
use crate::service::{run_server, ServeOptions, DEFAULT_LEASE_S, DEFAULT_WORKERS};
use clap::{Parser, Subcommand};
use serde_json::json;
use std::ffi::OsString;
use std::fs;
use std::net::IpAddr;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_SIMULATION: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "crowdsim", version, about = "Marker-based crowd simulation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a scene file against the authoring limits.
    Validate {
        scene: PathBuf,
        /// JSON file overriding the scene limits.
        #[arg(long)]
        limits: Option<PathBuf>,
    },
    /// Simulate a scene and write result.json, trajectories.csv, density.json.
    Run {
        scene: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// JSON file with simulation config overrides.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Render density.ppm and trajectories.ppm from a run directory.
    Render { dir: PathBuf },
    /// Start the HTTP service with its workers.
    Serve {
        #[arg(long, env = "CROWDSIM_HOST", default_value = "127.0.0.1")]
        host: IpAddr,
        #[arg(long, env = "CROWDSIM_PORT", default_value_t = 8080)]
        port: u16,
        #[arg(long, env = "CROWDSIM_DATA_DIR", default_value = "data")]
        data_dir: PathBuf,
        #[arg(long, env = "CROWDSIM_WORKERS", default_value_t = DEFAULT_WORKERS)]
        workers: usize,
        /// Seconds before a running job may be reclaimed by another worker.
        #[arg(long, env = "CROWDSIM_LEASE_S", default_value_t = DEFAULT_LEASE_S)]
        lease_s: u64,
        #[arg(long, env = "CROWDSIM_LIMITS")]
        limits: Option<PathBuf>,
    },
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
    report: Option<ValidationReport>,
}

impl Failure {
    fn new(code: i32, kind: &'static str, message: impl Into<String>) -> Self {
        Self {
            code,
            kind,
            message: message.into(),
            report: None,
        }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Self::new(EXIT_IO, "IoError", format!("{}: {e}", path.display()))
    }
}

type CliResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

fn write(path: &Path, bytes: impl AsRef<[u8]>) -> CliResult {
    fs::write(path, bytes).map_err(|e| Failure::io(path, e))
}

fn load_scene(path: &Path) -> Result<(Scene, Vec<String>), Failure> {
    parse_scene_with_warnings(&read(path)?).map_err(|e| {
        let mut f = Failure::new(EXIT_INVALID, "ParseError", e.to_string());
        f.report = Some(ValidationReport {
            ok: false,
            issues: vec![Issue {
                severity: Severity::Error,
                object_id: "document".into(),
                message: e.to_string(),
            }],
        });
        f
    })
}

fn load_json<T: serde::de::DeserializeOwned>(
    path: &Path,
    kind: &'static str,
) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| Failure::new(EXIT_INVALID, kind, format!("{}: {e}", path.display())))
}

fn load_limits(path: Option<&Path>) -> Result<SceneLimits, Failure> {
    let limits = match path {
        Some(p) => load_json::<SceneLimits>(p, "LimitsError")?,
        None => SceneLimits::default(),
    };
    if !limits.is_valid() {
        return Err(Failure::new(
            EXIT_INVALID,
            "LimitsError",
            "limits are inconsistent",
        ));
    }
    Ok(limits)
}

/// Validation report including parse-time warnings (unknown fields).
fn full_report(
    scene: &Scene,
    parse_warnings: Vec<String>,
    limits: &SceneLimits,
) -> ValidationReport {
    let mut report = validate_scene(scene, limits);
    report
        .issues
        .extend(parse_warnings.into_iter().map(|message| Issue {
            severity: Severity::Warning,
            object_id: "document".into(),
            message,
        }));
    report
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn validate(scene: &Path, limits: Option<&Path>) -> CliResult {
    let limits = load_limits(limits)?;
    let (s, warnings) = load_scene(scene)?;
    let report = full_report(&s, warnings, &limits);
    print!("{}", pretty(&report));
    if report.is_runnable() {
        Ok(())
    } else {
        let mut f = Failure::new(
            EXIT_INVALID,
            "ValidationError",
            format!("{} error(s)", report.errors().count()),
        );
        f.report = Some(report);
        Err(f)
    }
}

fn run(scene_path: &Path, seed: Option<u64>, config: Option<&Path>, out: &Path) -> CliResult {
    let (scene, warnings) = load_scene(scene_path)?;
    let mut cfg = match config {
        Some(p) => load_json::<SimulationConfig>(p, "ConfigError")?,
        None => SimulationConfig::default(),
    };
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    let bad = cfg.invalid_fields();
    if !bad.is_empty() {
        return Err(Failure::new(
            EXIT_INVALID,
            "ConfigError",
            format!("invalid values for {}", bad.join(", ")),
        ));
    }
    let report = full_report(&scene, warnings, &SceneLimits::default());
    if !report.is_runnable() {
        let mut f = Failure::new(
            EXIT_INVALID,
            "ValidationError",
            format!("{} error(s)", report.errors().count()),
        );
        f.report = Some(report);
        return Err(f);
    }
    let result = Simulation::new(&scene, &cfg)
        .map_err(|e| match e {
            SimError::InvalidConfig(_) => Failure::new(EXIT_INVALID, "ConfigError", e.to_string()),
            _ => Failure::new(EXIT_SIMULATION, "SimulationError", e.to_string()),
        })?
        .run();
    let bundle = ResultBundle::from_result(result);
    fs::create_dir_all(out).map_err(|e| Failure::io(out, e))?;
    write(&out.join("result.json"), bundle.to_json())?;
    write(
        &out.join("trajectories.csv"),
        crate::analytics::export_trajectories(&bundle.result),
    )?;
    write(&out.join("density.json"), pretty(&bundle.density))?;
    write(&out.join("scene.json"), serialize_scene(&scene))?;
    print!("{}", pretty(&bundle.summary));
    Ok(())
}

fn render(dir: &Path) -> CliResult {
    let bundle: ResultBundle = load_json(&dir.join("result.json"), "ResultError")?;
    let (scene, _) = load_scene(&dir.join("scene.json"))?;
    write(
        &dir.join("density.ppm"),
        colorize_density(&bundle.density).to_ppm(),
    )?;
    let plot = render_trajectory_plot(&scene, &bundle.result, PLOT_PIXELS_PER_METER);
    write(&dir.join("trajectories.ppm"), plot.to_ppm())?;
    Ok(())
}

fn execute(cmd: Command) -> CliResult {
    match cmd {
        Command::Validate { scene, limits } => validate(&scene, limits.as_deref()),
        Command::Run {
            scene,
            seed,
            config,
            out,
        } => run(&scene, seed, config.as_deref(), &out),
        Command::Render { dir } => render(&dir),
        Command::Serve {
            host,
            port,
            data_dir,
            workers,
            lease_s,
            limits,
        } => {
            let opts = ServeOptions {
                addr: (host, port).into(),
                data_dir,
                workers,
                lease_s,
                limits: load_limits(limits.as_deref())?,
            };
            run_server(opts).map_err(|e| Failure::new(EXIT_IO, "ServeError", e.to_string()))
        }
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn dispatch<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
        }
    };
    match execute(cli.command) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let mut body = json!({ "error": f.kind, "message": f.message });
            if let Some(r) = f.report {
                body["report"] = serde_json::to_value(r).expect("serializable");
            }
            eprintln!("{body}");
            f.code
        }
    }
}
