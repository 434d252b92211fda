use std::io::Read;
use std::net::{IpAddr, Ipv4Addr, SocketAddr};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use studykin::api::{self, ApiError, ExportFormat, OptimizeRequest, SceneBody};
use studykin::http;
use studykin::store::Store;
use studykin_core::design::{FreeMask, SceneFile};
use studykin_core::DEFAULT_TOL;

/// Dual-quaternion kinematics toolkit.
///
/// Request files hold the same JSON bodies as the HTTP API; `-` reads stdin.
#[derive(Parser)]
#[command(name = "studykin", version)]
struct Cli {
    /// Override the default numerical tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Apply a pose to E3 (3 coords) or E4 (4 coords) points: {dq, points}.
    Act { input: PathBuf },
    /// Projection onto the Study quadric: {dq}.
    Psh { input: PathBuf },
    /// Top-view pose with its height label: {dq}.
    Project { input: PathBuf },
    /// Classify the motion of a line of P7: {a, b}.
    Classify { input: PathBuf },
    /// Sample a Karger Type-1 trajectory: {beta, gamma, nu, point, samples, circle_test}.
    Darboux { input: Option<PathBuf> },
    /// Linear complexes of displacements.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Rational motion design on scene files.
    #[command(subcommand)]
    Design(DesignCmd),
    /// Export a scene's motion as CSV trajectory or JSON poses.
    Export(ExportArgs),
    /// Run the HTTP service.
    Serve(ServeArgs),
}

#[derive(Subcommand)]
enum ComplexCmd {
    /// {pole, m}
    Contains { input: PathBuf },
    /// {pole}
    Axis { input: PathBuf },
    /// {pole, n, seed}
    Members { input: PathBuf },
    /// {pole, m}
    Relative { input: PathBuf },
}

#[derive(Subcommand)]
enum DesignCmd {
    /// Sample the motion curve, control heights and Farin poses.
    Eval {
        scene: PathBuf,
        #[arg(long, default_value_t = 33)]
        samples: usize,
    },
    /// Maximal |x0| excursion of the curve.
    Excursion {
        scene: PathBuf,
        #[arg(long, default_value_t = 257)]
        grid: usize,
    },
    /// Minimize the excursion over free heights and Farin parameters.
    Optimize(OptimizeArgs),
}

#[derive(Args)]
struct OptimizeArgs {
    scene: PathBuf,
    /// Interior control indices whose heights are free.
    #[arg(long, value_delimiter = ',')]
    heights: Vec<usize>,
    /// Farin parameter indices that are free.
    #[arg(long, value_delimiter = ',')]
    farin: Vec<usize>,
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long, default_value_t = api::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value = studykin_core::optimize::DEFAULT_MINIMIZER)]
    optimizer: String,
    /// Skip golden refinement between grid points.
    #[arg(long)]
    no_refine: bool,
    /// Write the improved scene here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct ExportArgs {
    scene: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long, default_value_t = 33)]
    samples: usize,
    /// Traced E4 point for CSV export.
    #[arg(long, value_delimiter = ',', num_args = 4, default_values_t = [0.0, 0.0, 0.0, 0.0])]
    point: Vec<f64>,
}

#[derive(Args)]
struct ServeArgs {
    /// Defaults to $STUDYKIN_PORT, then 8787.
    #[arg(long)]
    port: Option<u16>,
    /// Defaults to $STUDYKIN_DATA, then ./studykin-data.
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long, default_value_t = IpAddr::V4(Ipv4Addr::LOCALHOST))]
    bind: IpAddr,
}

enum Failure {
    Api(ApiError),
    Io(String),
}

impl From<ApiError> for Failure {
    fn from(e: ApiError) -> Self {
        Failure::Api(e)
    }
}

type CliResult<T> = Result<T, Failure>;

fn read_input(path: &Path) -> CliResult<Vec<u8>> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| Failure::Io(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read(path).map_err(|e| Failure::Io(format!("reading {}: {e}", path.display())))
    }
}

/// Parses a request, letting `--tol` replace its `tol` field.
fn request<T: for<'de> serde::Deserialize<'de>>(bytes: &[u8], tol: Option<f64>) -> CliResult<T> {
    let mut v: Value = api::parse(bytes)?;
    if let (Some(t), Value::Object(map)) = (tol, &mut v) {
        map.insert("tol".into(), Value::from(t));
    }
    Ok(serde_json::from_value(v)
        .map_err(|e| ApiError::bad_input(format!("invalid request body: {e}")))?)
}

fn read_request<T: for<'de> serde::Deserialize<'de>>(
    path: &Path,
    tol: Option<f64>,
) -> CliResult<T> {
    request(&read_input(path)?, tol)
}

/// Accepts a bare scene file or a stored scene record.
fn read_scene(path: &Path, tol: Option<f64>) -> CliResult<SceneFile> {
    let mut v: Value = api::parse(&read_input(path)?)?;
    if let Some(inner) = v.get_mut("scene").map(Value::take) {
        v = inner;
    }
    let body: SceneBody = serde_json::from_value(v)
        .map_err(|e| ApiError::bad_input(format!("invalid scene: {e}")))?;
    Ok(body.validate(tol.unwrap_or(DEFAULT_TOL))?)
}

fn emit<T: Serialize>(v: &T) -> CliResult<()> {
    println!("{}", api::to_json(v));
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    let tol = cli.tol;
    match cli.cmd {
        Cmd::Act { input } => emit(&api::act_op(&read_request(&input, tol)?)?),
        Cmd::Psh { input } => emit(&api::psh_op(&read_request(&input, tol)?)?),
        Cmd::Project { input } => emit(&api::project_op(&read_request(&input, tol)?)?),
        Cmd::Classify { input } => emit(&api::classify_op(&read_request(&input, tol)?)?),
        Cmd::Darboux { input } => {
            let req = match input {
                Some(p) => read_request(&p, tol)?,
                None => request(b"{}", tol)?,
            };
            emit(&api::darboux_op(&req)?)
        }
        Cmd::Complex(c) => match c {
            ComplexCmd::Contains { input } => {
                emit(&api::complex_contains_op(&read_request(&input, tol)?)?)
            }
            ComplexCmd::Axis { input } => {
                emit(&api::complex_axis_op(&read_request(&input, None)?)?)
            }
            ComplexCmd::Members { input } => {
                emit(&api::complex_members_op(&read_request(&input, None)?)?)
            }
            ComplexCmd::Relative { input } => {
                emit(&api::complex_relative_op(&read_request(&input, tol)?)?)
            }
        },
        Cmd::Design(d) => match d {
            DesignCmd::Eval { scene, samples } => {
                let s = read_scene(&scene, tol)?;
                emit(&api::evaluate_op(&s.cs, &api::EvaluateRequest { samples })?)
            }
            DesignCmd::Excursion { scene, grid } => {
                let s = read_scene(&scene, tol)?;
                emit(&api::excursion_op(&s.cs, &api::ExcursionRequest { grid })?)
            }
            DesignCmd::Optimize(a) => {
                let mut s = read_scene(&a.scene, None)?;
                let req = OptimizeRequest {
                    mask: FreeMask {
                        farin: a.farin,
                        heights: a.heights,
                    },
                    tol,
                    grid: a.grid,
                    refine: a.no_refine.then_some(false),
                    seed: a.seed,
                    optimizer: a.optimizer,
                    persist: false,
                };
                let outcome = api::optimize_op(&s.cs, &req)?;
                if let Some(out) = a.out {
                    s.cs = outcome.cs.clone();
                    let text = serde_json::to_string_pretty(&s).expect("scenes always serialize");
                    std::fs::write(&out, text)
                        .map_err(|e| Failure::Io(format!("writing {}: {e}", out.display())))?;
                }
                emit(&outcome)
            }
        },
        Cmd::Export(a) => {
            let s = read_scene(&a.scene, tol)?;
            let format = match a.format {
                Format::Csv => ExportFormat::Csv,
                Format::Json => ExportFormat::Json,
            };
            let point = [a.point[0], a.point[1], a.point[2], a.point[3]];
            let text = api::export_scene(&s.cs, a.samples, point, format)?;
            match format {
                ExportFormat::Csv => print!("{text}"),
                ExportFormat::Json => println!("{text}"),
            }
            Ok(())
        }
        Cmd::Serve(a) => {
            let port = match a.port {
                Some(p) => p,
                None => http::port_from_env().map_err(Failure::Io)?,
            };
            let store = match a.data {
                Some(d) => Store::open(d),
                None => Store::from_env(),
            }
            .map_err(|e| Failure::Io(e.to_string()))?;
            let addr = SocketAddr::new(a.bind, port);
            let rt = tokio::runtime::Runtime::new().map_err(|e| Failure::Io(e.to_string()))?;
            eprintln!(
                "studykin listening on http://{addr} (data: {})",
                store.dir().display()
            );
            rt.block_on(http::serve(store, addr))
                .map_err(|e| Failure::Io(e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Api(e)) => {
            eprintln!("{}", api::to_json(&e));
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
