use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::Vector2;
use orbiform::afunc::AFunction;
use orbiform::feasibility::{self, FeasibilityReport};
use orbiform::io::{self, fmt_sig, BodyConfig, ConfigError, RadiusSpec};
use orbiform::shadow::{self, PlanarBody};
use orbiform::shift;
use orbiform::surface::{Body, BodySurface, Curve2D};
use orbiform::verify::{self, VerifyOptions};
use orbiform::gallery;

#[derive(Parser)]
#[command(name = "orbiform", version, about = "Bodies of constant width from a shift function a(φ, θ)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct BodyArgs {
    /// JSON body configuration
    #[arg(long)]
    config: PathBuf,
    /// Radius; overrides the config value
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    nphi: Option<usize>,
    #[arg(long)]
    ntheta: Option<usize>,
    /// Grid used when the radius has to be solved for
    #[arg(long, default_value_t = 512)]
    r0_grid: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum CurveFormat {
    Csv,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Check the structural conditions on a(φ, θ)
    Validate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 256)]
        grid: usize,
    },
    /// Sup norms of a, a_θ and a_θθ
    Norms {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 1024)]
        grid: usize,
    },
    /// h, h_φ and h_θ on a grid over [0, 2π] × [0, π], as CSV
    HField {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 64)]
        nphi: usize,
        #[arg(long, default_value_t = 32)]
        ntheta: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimal feasible radius
    R0 {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 512)]
        grid: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Planar curve of constant width for the slice at angle θ
    Gen2d {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long, default_value_t = 512)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
        /// Defaults to the extension of --out
        #[arg(long, value_enum)]
        format: Option<CurveFormat>,
    },
    /// Sample the body and write a welded OBJ mesh
    Gen3d {
        #[command(flatten)]
        body: BodyArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run all checks and print a JSON report
    Verify {
        #[command(flatten)]
        body: BodyArgs,
        /// Also check the width of a previously exported mesh
        #[arg(long)]
        mesh: Option<PathBuf>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Radial shadow of a planar polygon
    Shadow2d {
        /// Vertices as "x,y; x,y; ..."
        #[arg(long, conflicts_with = "polygon_file", required_unless_present = "polygon_file")]
        polygon: Option<String>,
        #[arg(long)]
        polygon_file: Option<PathBuf>,
        #[arg(long, default_value_t = 360)]
        npsi: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Slice-wise shadow of a body about the vertical axis through its anchor
    Shadow3d {
        #[command(flatten)]
        body: BodyArgs,
        #[arg(long, default_value_t = 32)]
        slices: usize,
        #[arg(long, default_value_t = 256)]
        npsi: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rebuild the example bodies, write their meshes and an r₀ table
    Gallery {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 128)]
        grid: usize,
        #[arg(long, default_value_t = 512)]
        r0_grid: usize,
    },
}

/// Exit code and message.
struct Failure(u8, String);

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure(2, msg.into())
    }
    fn check(msg: impl Into<String>) -> Self {
        Failure(1, msg.into())
    }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CmdResult {
    std::fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> CmdResult {
    match out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_config(path: &Path) -> Result<BodyConfig, Failure> {
    io::parse_config(&read(path)?).map_err(|e| match e {
        ConfigError::InvalidTerm { .. } => Failure::check(format!("{}: {e}", path.display())),
        _ => Failure::usage(format!("{}: {e}", path.display())),
    })
}

fn solve(f: &AFunction, grid: usize, tol: f64) -> Result<FeasibilityReport, Failure> {
    feasibility::solve_r0(f, grid, tol).map_err(|e| Failure::check(e.to_string()))
}

/// Radius from the flag, then the config, solving when it says "auto".
/// Also returns the solved r₀ when one was computed.
fn radius(cfg: &BodyConfig, flag: Option<f64>, grid: usize) -> Result<(f64, Option<f64>), Failure> {
    match (flag, cfg.r) {
        (Some(r), _) if !(r.is_finite() && r >= 0.0) => Err(Failure::usage(format!("bad radius {r}"))),
        (Some(r), _) | (None, RadiusSpec::Fixed(r)) => Ok((r, None)),
        (None, RadiusSpec::Auto) => {
            let r0 = solve(&cfg.f, grid, 1e-6)?.r0;
            Ok((r0, Some(r0)))
        }
    }
}

fn build(args: &BodyArgs) -> Result<(BodySurface, Option<f64>), Failure> {
    let cfg = load_config(&args.config)?;
    let (r, r0) = radius(&cfg, args.r, args.r0_grid)?;
    let body = match cfg.x0 {
        Some(x0) => Body::with_anchor(cfg.f.clone(), r, x0),
        None => Body::new(cfg.f.clone(), r),
    };
    let (np, nt) = (args.nphi.unwrap_or(cfg.nphi), args.ntheta.unwrap_or(cfg.ntheta));
    let surface = body.sample_grid(np, nt).map_err(|e| match e {
        orbiform::surface::SurfaceError::InvalidGrid(_) => Failure::usage(e.to_string()),
        _ => Failure::check(e.to_string()),
    })?;
    Ok((surface, r0))
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Validate { config, grid } => {
            let cfg = load_config(&config)?;
            let rep = cfg.f.validation_report(grid);
            print!("{}", io::to_json(&rep));
            if rep.passed() {
                Ok(())
            } else {
                Err(Failure::check("validation failed"))
            }
        }
        Command::Norms { config, grid } => {
            let cfg = load_config(&config)?;
            print!("{}", io::to_json(&cfg.f.sup_norms(grid)));
            Ok(())
        }
        Command::HField { config, nphi, ntheta, out } => {
            if nphi == 0 || ntheta == 0 {
                return Err(Failure::usage("grid sizes must be positive"));
            }
            let f = load_config(&config)?.f;
            let mut s = String::from("phi,theta,h,h_phi,h_theta\n");
            for j in 0..=ntheta {
                let t = std::f64::consts::PI * j as f64 / ntheta as f64;
                for i in 0..=nphi {
                    let p = 2.0 * std::f64::consts::PI * i as f64 / nphi as f64;
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{}",
                        fmt_sig(p),
                        fmt_sig(t),
                        fmt_sig(shift::h_value(&f, p, t)),
                        fmt_sig(shift::h_phi(&f, p, t)),
                        fmt_sig(shift::h_theta(&f, p, t))
                    );
                }
            }
            emit(out.as_deref(), &s)
        }
        Command::R0 { config, grid, tol } => {
            let cfg = load_config(&config)?;
            let rep = solve(&cfg.f, grid, tol)?;
            print!("{}", io::to_json(&rep));
            Ok(())
        }
        Command::Gen2d { config, theta, r, samples, out, format } => {
            let cfg = load_config(&config)?;
            let r = match r {
                Some(r) => r,
                None => radius(&cfg, None, 512)?.0,
            };
            let format = match format {
                Some(f) => f,
                None => match out.extension().and_then(|e| e.to_str()) {
                    Some("svg") => CurveFormat::Svg,
                    Some("csv") => CurveFormat::Csv,
                    _ => return Err(Failure::usage("cannot infer format from --out; pass --format")),
                },
            };
            if samples < 3 {
                return Err(Failure::usage("need at least 3 samples"));
            }
            let curve = Curve2D::sample(&cfg.f.slice(theta), r, Vector2::zeros(), samples)
                .map_err(|e| Failure::check(e.to_string()))?;
            let text = match format {
                CurveFormat::Csv => io::curve_csv(&curve),
                CurveFormat::Svg => io::curve_svg(&curve),
            };
            write(&out, &text)?;
            eprintln!("wrote {} samples, closure gap {:.3e}", curve.samples.len(), curve.closure_gap());
            Ok(())
        }
        Command::Gen3d { body, out } => {
            let (surface, _) = build(&body)?;
            let summary = io::export_obj(&surface, &out).map_err(|e| Failure::usage(format!("{}: {e}", out.display())))?;
            eprintln!(
                "r = {}, {} vertices, {} faces -> {}",
                fmt_sig(surface.r()),
                summary.vertices,
                summary.faces,
                out.display()
            );
            Ok(())
        }
        Command::Verify { body, mesh, seed } => {
            let (surface, r0) = build(&body)?;
            let opts = VerifyOptions {
                seed,
                r0,
                ..VerifyOptions::default()
            };
            let mut rep = verify::verify_body(&surface, &opts);
            if let Some(path) = mesh {
                let m = io::parse_obj(&read(&path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
                let w = verify::width_check_points(&m.vertices, surface.r(), opts.width_directions);
                rep.insert("mesh_width", verify::CheckResult::new(w.max_dev, opts.width_tol));
            }
            print!("{}", io::to_json(&rep));
            if rep.passed() {
                Ok(())
            } else {
                Err(Failure::check("verification failed"))
            }
        }
        Command::Shadow2d { polygon, polygon_file, npsi, out } => {
            let text = match (polygon, polygon_file) {
                (Some(t), _) => t,
                (None, Some(p)) => read(&p)?,
                (None, None) => unreachable!("clap requires one of them"),
            };
            let pts = io::parse_polygon(&text).map_err(|e| Failure::usage(e.to_string()))?;
            let dom = shadow::shadow2d(&PlanarBody::polygon(pts), npsi).map_err(|e| Failure::check(e.to_string()))?;
            eprintln!("area {}, Lipschitz constant {}", fmt_sig(dom.area()), fmt_sig(dom.lipschitz));
            emit(out.as_deref(), &io::shadow_csv(&dom))
        }
        Command::Shadow3d { body, slices, npsi, out } => {
            let (surface, _) = build(&body)?;
            let dom = shadow::shadow3d(&surface, slices, npsi).map_err(|e| Failure::check(e.to_string()))?;
            for w in &dom.warnings {
                eprintln!("warning: {w}");
            }
            emit(out.as_deref(), &io::shadow3d_csv(&dom))
        }
        Command::Gallery { out, grid, r0_grid } => {
            std::fs::create_dir_all(&out).map_err(|e| Failure::usage(format!("{}: {e}", out.display())))?;
            let mut table = String::from("name,formula,r0,reference,difference\n");
            println!("{:<8} {:>10} {:>10} {:>10}  formula", "name", "r0", "reference", "diff");
            for e in gallery::ENTRIES.iter().filter(|e| e.name.starts_with('g')) {
                let cfg = e.config();
                let r0 = solve(&cfg.f, r0_grid, 1e-6)?.r0;
                let surface = Body::new(cfg.f.clone(), r0)
                    .sample_grid(grid, grid)
                    .map_err(|err| Failure::usage(err.to_string()))?;
                let path = out.join(format!("{}.obj", e.name));
                io::export_obj(&surface, &path).map_err(|err| Failure::usage(format!("{}: {err}", path.display())))?;
                let reference = e.reference_r0.unwrap_or(f64::NAN);
                let diff = r0 - reference;
                println!("{:<8} {:>10.6} {:>10} {:>+10.2e}  {}", e.name, r0, reference, diff, e.formula);
                let _ = writeln!(table, "{},{},{},{},{}", e.name, e.formula, fmt_sig(r0), fmt_sig(reference), fmt_sig(diff));
            }
            write(&out.join("r0_table.csv"), &table)
        }
    }
}

fn init_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("ORBIFORM_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::usage(format!("ORBIFORM_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match init_threads().and_then(|_| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
