//! `helico` — command-line front end for the value-m helicoidal surface
//! kernel.
//!
//! Subcommands: `eval` (points and jets), `curvature` (H/K grids),
//! `fidelity` (transcription sweep), `bour` (orthogonal trajectories and
//! the rotational correspondence), `mesh` (OBJ/PLY/CSV export) and
//! `minimal` (value-3 minimality residual and slice ODE).
//!
//! Every subcommand accepts `--json <file>` with the same field names as
//! its flags; explicitly passed flags override file values. All output is
//! deterministic. Exit codes: 0 success, 2 usage or domain error,
//! 1 internal error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use helico::bour::{self, RotationalHeight};
use helico::diffgeo;
use helico::meshio::{self, presets, GridSpec, MeshBuffer};
use helico::paperforms::{self, SweepGrid};
use helico::surfaces::{ProfileSpec, SurfaceSpec};
use helico::GeomError;
use serde::Deserialize;
use std::f64::consts::TAU;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "helico",
    version,
    about = "Numerical differential geometry of value-m helicoidal surfaces",
    after_help = "Profiles use the grammar poly:c0,c1,... | power:coeff,exponent | const:c.\n\
                  The only honored environment variable is HELICO_OUT_DIR (default output directory)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a surface point (or full second-order jet) at (r, theta)
    Eval(EvalArgs),
    /// Mean and Gaussian curvature over a parameter grid
    Curvature(CurvatureArgs),
    /// Run the transcription fidelity sweep and write CSV, summary and digest
    Fidelity(FidelityArgs),
    /// Trace orthogonal trajectories and tabulate the rotational correspondence
    Bour(BourArgs),
    /// Sample a surface into a triangle mesh and export OBJ/PLY/CSV
    Mesh(MeshArgs),
    /// Value-3 minimality relation: residual grids and the slice ODE
    Minimal(MinimalArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize, Debug)]
#[serde(rename_all = "kebab-case")]
enum FamilyArg {
    Helicoidal,
    Rotational,
    BourMinimal,
    Classical,
}

#[derive(Args, Deserialize, Default, Clone)]
#[serde(deny_unknown_fields)]
struct SurfaceArgs {
    /// Surface family
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    /// Value parameter m (required for helicoidal, rotational, bour-minimal)
    #[arg(long)]
    m: Option<f64>,
    /// Pitch a >= 0 (default 0)
    #[arg(long)]
    a: Option<f64>,
    /// Height profile, e.g. poly:0,1 (default poly:0)
    #[arg(long)]
    profile: Option<ProfileSpec>,
}

impl SurfaceArgs {
    fn merge(self, file: SurfaceArgs) -> SurfaceArgs {
        SurfaceArgs {
            family: self.family.or(file.family),
            m: self.m.or(file.m),
            a: self.a.or(file.a),
            profile: self.profile.or(file.profile),
        }
    }

    fn build(&self) -> Result<SurfaceSpec, CliError> {
        let family = self
            .family
            .ok_or_else(|| CliError::Usage("--family is required".to_string()))?;
        let a = self.a.unwrap_or(0.0);
        let profile = self.profile.clone().unwrap_or_else(ProfileSpec::zero);
        let family_name = match family {
            FamilyArg::Helicoidal => "helicoidal",
            FamilyArg::Rotational => "rotational",
            FamilyArg::BourMinimal => "bour-minimal",
            FamilyArg::Classical => "classical",
        };
        let need_m = || {
            self.m
                .ok_or_else(|| CliError::Usage(format!("--m is required for {family_name}")))
        };
        let spec = match family {
            FamilyArg::Helicoidal => SurfaceSpec::helicoidal(need_m()?, a, profile)?,
            FamilyArg::Rotational => SurfaceSpec::rotational(need_m()?, profile)?,
            FamilyArg::BourMinimal => {
                if self.profile.is_some() {
                    eprintln!("warning: the bour-minimal family has a built-in height; --profile is ignored");
                }
                SurfaceSpec::bour_minimal_pitched(need_m()?, a)?
            }
            FamilyArg::Classical => SurfaceSpec::classical_helicoid(a, profile)?,
        };
        Ok(spec)
    }
}

#[derive(Args, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct EvalArgs {
    #[command(flatten)]
    #[serde(flatten)]
    surface: SurfaceArgs,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
    /// Print the full second-order jet instead of just the point
    #[arg(long)]
    #[serde(default)]
    jet: bool,
    /// Also print the first fundamental form E, F, G
    #[arg(long)]
    #[serde(default)]
    forms: bool,
    /// JSON config file; flags override its values
    #[arg(long)]
    #[serde(skip)]
    json: Option<PathBuf>,
}

#[derive(Args, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct CurvatureArgs {
    #[command(flatten)]
    #[serde(flatten)]
    surface: SurfaceArgs,
    #[arg(long)]
    r0: Option<f64>,
    #[arg(long)]
    r1: Option<f64>,
    #[arg(long)]
    nr: Option<usize>,
    #[arg(long)]
    theta0: Option<f64>,
    #[arg(long)]
    theta1: Option<f64>,
    #[arg(long)]
    ntheta: Option<usize>,
    /// Jet source: analytic (default) or fd
    #[arg(long)]
    oracle: Option<String>,
    /// Step for the finite-difference oracle
    #[arg(long)]
    fd_step: Option<f64>,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    json: Option<PathBuf>,
}

#[derive(Args, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FidelityArgs {
    /// Output directory (default: HELICO_OUT_DIR or the working directory)
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// JSON sweep-grid description
    #[arg(long)]
    grid: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    json: Option<PathBuf>,
}

#[derive(Args, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct BourArgs {
    #[command(flatten)]
    #[serde(flatten)]
    surface: SurfaceArgs,
    #[arg(long)]
    r0: Option<f64>,
    #[arg(long)]
    theta0: Option<f64>,
    #[arg(long)]
    r1: Option<f64>,
    /// Integrator tolerance (default 1e-9)
    #[arg(long)]
    tol: Option<f64>,
    /// Explicit rotational height profile; when given, the rotational side
    /// traces its own trajectory from the same start
    #[arg(long)]
    rot_profile: Option<ProfileSpec>,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Summary JSON path (stderr when omitted)
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Emit a tolerance-convergence table instead of the trajectory CSV
    #[arg(long)]
    #[serde(default)]
    tol_sweep: bool,
    #[arg(long)]
    #[serde(skip)]
    json: Option<PathBuf>,
}

#[derive(Args, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct MeshArgs {
    /// Stock configuration: fig1 (pitched value-3 surface, a = 1) or
    /// fig2 (value-3 Bour minimal surface, a = 0)
    #[arg(long)]
    preset: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    surface: SurfaceArgs,
    #[arg(long)]
    r0: Option<f64>,
    #[arg(long)]
    r1: Option<f64>,
    #[arg(long)]
    nr: Option<usize>,
    #[arg(long)]
    theta0: Option<f64>,
    #[arg(long)]
    theta1: Option<f64>,
    #[arg(long)]
    ntheta: Option<usize>,
    /// Treat the theta range as a full period and wrap the faces
    #[arg(long)]
    wrap: Option<bool>,
    /// Comma-separated per-vertex fields (E,F,G,detI,L,M,N,H,K)
    #[arg(long)]
    fields: Option<String>,
    /// Compute per-vertex unit normals
    #[arg(long)]
    #[serde(default)]
    normals: bool,
    /// Wavefront OBJ output path
    #[arg(long)]
    obj: Option<PathBuf>,
    /// Binary little-endian PLY output path
    #[arg(long)]
    ply: Option<PathBuf>,
    /// Per-vertex field CSV output path
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    json: Option<PathBuf>,
}

#[derive(Args, Deserialize, Default)]
struct MinimalArgs {
    #[command(subcommand)]
    #[serde(skip)]
    mode: Option<MinimalMode>,
}

#[derive(Subcommand, Deserialize)]
enum MinimalMode {
    /// Evaluate the minimality residual over an (r, theta) grid at fixed
    /// phi' and phi''
    Residual(ResidualArgs),
    /// Integrate the minimality relation as an ODE for phi'(r) on a fixed
    /// theta slice
    Slice(SliceArgs),
}

#[derive(Args, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ResidualArgs {
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    phi_prime: Option<f64>,
    #[arg(long)]
    phi_second: Option<f64>,
    #[arg(long)]
    r0: Option<f64>,
    #[arg(long)]
    r1: Option<f64>,
    #[arg(long)]
    nr: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    json: Option<PathBuf>,
}

#[derive(Args, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct SliceArgs {
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    r0: Option<f64>,
    #[arg(long)]
    phi_prime0: Option<f64>,
    #[arg(long)]
    r1: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    json: Option<PathBuf>,
}

enum CliError {
    Usage(String),
    Domain(GeomError),
    Internal(String),
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::ToleranceNotMet { .. } => CliError::Internal(e.to_string()),
            other => CliError::Domain(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Internal(format!("io error: {e}"))
    }
}

fn load_json<T: for<'de> Deserialize<'de> + Default>(
    path: &Option<PathBuf>,
) -> Result<T, CliError> {
    match path {
        None => Ok(T::default()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("bad config {}: {e}", p.display())))
        }
    }
}

fn write_or_stdout(path: &Option<PathBuf>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => {
            fs::write(p, bytes)?;
        }
        None => {
            std::io::stdout().write_all(bytes)?;
        }
    }
    Ok(())
}

fn fmt_csv(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v}")
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Curvature(args) => cmd_curvature(args),
        Command::Fidelity(args) => cmd_fidelity(args),
        Command::Bour(args) => cmd_bour(args),
        Command::Mesh(args) => cmd_mesh(args),
        Command::Minimal(args) => cmd_minimal(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn vec3_json(v: helico::Vec3) -> serde_json::Value {
    serde_json::json!([v.x, v.y, v.z])
}

fn cmd_eval(args: EvalArgs) -> Result<(), CliError> {
    let file: EvalArgs = load_json(&args.json)?;
    let surface = args.surface.merge(file.surface);
    let r = args
        .r
        .or(file.r)
        .ok_or_else(|| CliError::Usage("--r is required".into()))?;
    let theta = args
        .theta
        .or(file.theta)
        .ok_or_else(|| CliError::Usage("--theta is required".into()))?;
    let jet = args.jet || file.jet;
    let forms = args.forms || file.forms;

    let spec = surface.build()?;
    let mut out = serde_json::Map::new();
    if jet {
        let j = spec.jet(r, theta)?;
        out.insert("point".into(), vec3_json(j.p));
        out.insert("p_r".into(), vec3_json(j.p_r));
        out.insert("p_theta".into(), vec3_json(j.p_theta));
        out.insert("p_rr".into(), vec3_json(j.p_rr));
        out.insert("p_r_theta".into(), vec3_json(j.p_r_theta));
        out.insert("p_theta_theta".into(), vec3_json(j.p_theta_theta));
    } else {
        out.insert("point".into(), vec3_json(spec.eval(r, theta)?));
    }
    if forms {
        let (e, f, g) = diffgeo::first_form_from_jet(&spec.jet(r, theta)?);
        out.insert("E".into(), e.into());
        out.insert("F".into(), f.into());
        out.insert("G".into(), g.into());
    }
    println!("{}", serde_json::Value::Object(out));
    Ok(())
}

fn cmd_curvature(args: CurvatureArgs) -> Result<(), CliError> {
    let file: CurvatureArgs = load_json(&args.json)?;
    let surface = args.surface.merge(file.surface);
    let spec = surface.build()?;
    let r0 = args.r0.or(file.r0).unwrap_or(0.5);
    let r1 = args.r1.or(file.r1).unwrap_or(1.5);
    let nr = args.nr.or(file.nr).unwrap_or(16).max(1);
    let theta0 = args.theta0.or(file.theta0).unwrap_or(0.0);
    let theta1 = args.theta1.or(file.theta1).unwrap_or(TAU);
    let ntheta = args.ntheta.or(file.ntheta).unwrap_or(32).max(1);
    let oracle = args
        .oracle
        .or(file.oracle)
        .unwrap_or_else(|| "analytic".to_string());
    let fd_step = args
        .fd_step
        .or(file.fd_step)
        .unwrap_or(diffgeo::FD_DEFAULT_H);
    if oracle != "analytic" && oracle != "fd" {
        return Err(CliError::Usage(format!(
            "--oracle must be 'analytic' or 'fd', got '{oracle}'"
        )));
    }

    let mut csv = String::from("r,theta,H,K\n");
    let mut max_h: f64 = 0.0;
    let mut max_k: f64 = 0.0;
    let mut degenerate_rows = 0usize;
    for i in 0..nr {
        let r = if nr == 1 {
            r0
        } else {
            r0 + (r1 - r0) * i as f64 / (nr - 1) as f64
        };
        for j in 0..ntheta {
            let theta = if ntheta == 1 {
                theta0
            } else {
                theta0 + (theta1 - theta0) * j as f64 / (ntheta - 1) as f64
            };
            let jet = if oracle == "fd" {
                diffgeo::fd_jet(&spec, r, theta, fd_step)?
            } else {
                spec.jet(r, theta)?
            };
            let hk = diffgeo::forms_from_jet(&jet).and_then(|f| diffgeo::curvatures(&f));
            let (h, k) = match hk {
                Ok(v) => v,
                Err(GeomError::DegenerateMetric { .. }) => {
                    degenerate_rows += 1;
                    (f64::NAN, f64::NAN)
                }
                Err(e) => return Err(e.into()),
            };
            if h.is_finite() {
                max_h = max_h.max(h.abs());
                max_k = max_k.max(k.abs());
            }
            csv.push_str(&format!(
                "{},{},{},{}\n",
                fmt_csv(r),
                fmt_csv(theta),
                fmt_csv(h),
                fmt_csv(k)
            ));
        }
    }
    write_or_stdout(&args.out.or(file.out), csv.as_bytes())?;
    eprintln!(
        "{}",
        serde_json::json!({
            "rows": nr * ntheta,
            "degenerate_rows": degenerate_rows,
            "max_abs_H": max_h,
            "max_abs_K": max_k,
            "oracle": oracle,
        })
    );
    Ok(())
}

fn default_out_dir() -> PathBuf {
    std::env::var_os("HELICO_OUT_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("."))
}

fn cmd_fidelity(args: FidelityArgs) -> Result<(), CliError> {
    let file: FidelityArgs = load_json(&args.json)?;
    let out_dir = args
        .out_dir
        .or(file.out_dir)
        .unwrap_or_else(default_out_dir);
    let grid = match args.grid.or(file.grid) {
        None => SweepGrid::default_grid(),
        Some(p) => {
            let text = fs::read_to_string(&p)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("bad grid {}: {e}", p.display())))?
        }
    };
    let report = paperforms::fidelity_sweep(&grid)?;
    fs::create_dir_all(&out_dir)?;
    let mut csv = Vec::new();
    report.write_csv(&mut csv)?;
    fs::write(out_dir.join("fidelity.csv"), &csv)?;
    fs::write(
        out_dir.join("summary.json"),
        serde_json::to_string_pretty(&report.summary_json()).expect("serializable") + "\n",
    )?;
    let digest = report.digest(paperforms::DIGEST_THRESHOLD);
    fs::write(out_dir.join("digest.txt"), &digest)?;
    print!("{digest}");
    Ok(())
}

fn cmd_bour(args: BourArgs) -> Result<(), CliError> {
    let file: BourArgs = load_json(&args.json)?;
    let mut surface = args.surface.merge(file.surface);
    if surface.family.is_none() {
        surface.family = Some(FamilyArg::Helicoidal);
    }
    if surface.m.is_none() {
        surface.m = Some(3.0);
    }
    let spec = surface.build()?;
    let r0 = args.r0.or(file.r0).unwrap_or(0.5);
    let theta0 = args.theta0.or(file.theta0).unwrap_or(0.0);
    let r1 = args.r1.or(file.r1).unwrap_or(0.9);
    let tol = args.tol.or(file.tol).unwrap_or(helico::rk45::DEFAULT_TOL);
    let rotational = match args.rot_profile.or(file.rot_profile) {
        Some(p) => RotationalHeight::Profile(p),
        None => RotationalHeight::ClosedForm,
    };

    if args.tol_sweep || file.tol_sweep {
        let mut csv = String::from("tol,rbar_end,delta_from_previous\n");
        let mut previous: Option<f64> = None;
        for k in 0..4 {
            let t = tol * 10f64.powi(-k);
            let samples = bour::trace_orthogonal(&spec, r0, theta0, r1, t)?;
            let rbar = samples.last().expect("at least the start sample").rbar;
            let delta = previous.map(|p| (rbar - p).abs());
            csv.push_str(&format!(
                "{},{},{}\n",
                t,
                fmt_csv(rbar),
                delta.map(fmt_csv).unwrap_or_default()
            ));
            previous = Some(rbar);
        }
        write_or_stdout(&args.out.or(file.out), csv.as_bytes())?;
        return Ok(());
    }

    let report = bour::isometry_report(&spec, r0, theta0, r1, tol, &rotational)?;
    let mut csv = Vec::new();
    report.write_csv(&mut csv)?;
    write_or_stdout(&args.out.or(file.out), &csv)?;
    let summary = serde_json::to_string_pretty(&report.summary_json()).expect("serializable");
    match args.summary.or(file.summary) {
        Some(p) => fs::write(p, summary + "\n")?,
        None => eprintln!("{summary}"),
    }
    Ok(())
}

fn parse_fields(spec: &Option<String>) -> Vec<&str> {
    match spec {
        None => Vec::new(),
        Some(s) => s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .collect(),
    }
}

fn cmd_mesh(args: MeshArgs) -> Result<(), CliError> {
    let file: MeshArgs = load_json(&args.json)?;
    let preset = args.preset.or(file.preset);
    let nr = args.nr.or(file.nr);
    let ntheta = args.ntheta.or(file.ntheta);

    let (spec, grid) = match preset.as_deref() {
        Some("fig1") => (
            presets::pitched_value3_surface()?,
            presets::figure_grid(nr.unwrap_or(64), ntheta.unwrap_or(128)),
        ),
        Some("fig2") => (
            presets::bour_minimal_value3()?,
            presets::figure_grid(nr.unwrap_or(64), ntheta.unwrap_or(128)),
        ),
        Some(other) => {
            return Err(CliError::Usage(format!(
                "unknown preset '{other}' (expected fig1 or fig2)"
            )))
        }
        None => {
            let surface = args.surface.merge(file.surface);
            let spec = surface.build()?;
            let grid = GridSpec {
                nr: nr.unwrap_or(64),
                ntheta: ntheta.unwrap_or(128),
                r_range: (
                    args.r0.or(file.r0).unwrap_or(0.2),
                    args.r1.or(file.r1).unwrap_or(1.5),
                ),
                theta_range: (
                    args.theta0.or(file.theta0).unwrap_or(0.0),
                    args.theta1.or(file.theta1).unwrap_or(TAU),
                ),
                wrap: args.wrap.or(file.wrap).unwrap_or(true),
            };
            (spec, grid)
        }
    };

    let obj = args.obj.or(file.obj);
    let ply = args.ply.or(file.ply);
    let csv = args.csv.or(file.csv);
    if obj.is_none() && ply.is_none() && csv.is_none() {
        return Err(CliError::Usage(
            "at least one of --obj, --ply, --csv is required".to_string(),
        ));
    }
    let fields_spec = args.fields.or(file.fields);
    let fields = parse_fields(&fields_spec);
    let normals = args.normals || file.normals;

    let mesh: MeshBuffer = meshio::sample_grid(&spec, grid, &fields, normals)?;
    if let Some(p) = obj {
        write_file(&p, |w| meshio::write_obj(&mesh, w))?;
    }
    if let Some(p) = ply {
        write_file(&p, |w| meshio::write_ply(&mesh, w))?;
    }
    if let Some(p) = csv {
        write_file(&p, |w| meshio::write_fields_csv(&mesh, w))?;
    }
    eprintln!(
        "{}",
        serde_json::json!({
            "vertices": mesh.vertices.len(),
            "faces": mesh.faces.len(),
            "degenerate_vertices": mesh.degenerate.iter().filter(|&&d| d).count(),
        })
    );
    Ok(())
}

fn write_file(
    path: &Path,
    f: impl FnOnce(&mut Vec<u8>) -> std::io::Result<()>,
) -> Result<(), CliError> {
    let mut buf = Vec::new();
    f(&mut buf)?;
    fs::write(path, buf)?;
    Ok(())
}

fn cmd_minimal(args: MinimalArgs) -> Result<(), CliError> {
    match args.mode {
        None => Err(CliError::Usage(
            "minimal needs a mode: 'residual' or 'slice'".to_string(),
        )),
        Some(MinimalMode::Residual(a)) => cmd_minimal_residual(a),
        Some(MinimalMode::Slice(a)) => cmd_minimal_slice(a),
    }
}

fn cmd_minimal_residual(args: ResidualArgs) -> Result<(), CliError> {
    let file: ResidualArgs = load_json(&args.json)?;
    let a = args.a.or(file.a).unwrap_or(0.0);
    let theta = args.theta.or(file.theta).unwrap_or(0.0);
    let phi_prime = args.phi_prime.or(file.phi_prime).unwrap_or(0.0);
    let phi_second = args.phi_second.or(file.phi_second).unwrap_or(0.0);
    let r0 = args.r0.or(file.r0).unwrap_or(0.5);
    let r1 = args.r1.or(file.r1).unwrap_or(1.5);
    let nr = args.nr.or(file.nr).unwrap_or(11).max(1);

    let mut csv = String::from("r,theta,residual\n");
    for i in 0..nr {
        let r = if nr == 1 {
            r0
        } else {
            r0 + (r1 - r0) * i as f64 / (nr - 1) as f64
        };
        let v = bour::minimality_residual(r, theta, a, phi_prime, phi_second);
        csv.push_str(&format!(
            "{},{},{}\n",
            fmt_csv(r),
            fmt_csv(theta),
            fmt_csv(v)
        ));
    }
    write_or_stdout(&args.out.or(file.out), csv.as_bytes())
}

fn cmd_minimal_slice(args: SliceArgs) -> Result<(), CliError> {
    let file: SliceArgs = load_json(&args.json)?;
    let theta = args.theta.or(file.theta).unwrap_or(0.0);
    let a = args.a.or(file.a).unwrap_or(0.0);
    let r0 = args.r0.or(file.r0).unwrap_or(0.5);
    let phi_prime0 = args.phi_prime0.or(file.phi_prime0).unwrap_or(0.0);
    let r1 = args.r1.or(file.r1).unwrap_or(0.9);
    let tol = args.tol.or(file.tol).unwrap_or(helico::rk45::DEFAULT_TOL);

    let sol = bour::solve_slice_ode(theta, a, r0, phi_prime0, r1, tol)?;
    let mut csv = String::from("r,phi_prime\n");
    for (r, p) in sol {
        csv.push_str(&format!("{},{}\n", fmt_csv(r), fmt_csv(p)));
    }
    write_or_stdout(&args.out.or(file.out), csv.as_bytes())
}
