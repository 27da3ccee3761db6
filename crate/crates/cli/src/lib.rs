//! Command-line front end: matrix files, map evaluation, monotonicity checks
//! and the seeded verification suites.

pub mod error;
pub mod matrix_file;
pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use ordiso::classify::{
    classify_a, effect_automorphism, fpq_automorphism, phi_mp, BlockMapSpec, EffectAutoSpec, FpqSpec,
};
use ordiso::halfplane::MobiusAutomorphism;
use ordiso::linalg::{CMatrix, Hermitian, Tolerances};
use ordiso::monotone::{is_matrix_monotone, MonotoneWitness, PickRepresentation, ScalarFunction};
use ordiso::par::Exec;
use ordiso::phimap::{phi_apply, theta_apply};
use ordiso::sample::Sampler;
use ordiso::verify::{run_suite, suite_description, suite_names, SuiteConfig};
use serde_json::json;

pub use error::CliError;
pub use report::RunReport;

/// Environment variable holding default tolerance overrides, e.g. `psd_tol=1e-9,inv_margin=1e-7`.
pub const TOL_ENV: &str = "ORDISO_TOL";

#[derive(Debug, Parser)]
#[command(name = "ordiso", version, about = "Order isomorphisms on Hermitian matrix domains")]
pub struct Cli {
    /// Tolerance overrides as key=value pairs (herm_tol, eig_tol, psd_tol, inv_margin).
    /// Applied after those in ORDISO_TOL.
    #[arg(long, global = true, value_name = "LIST")]
    pub tol: Option<String>,

    /// Run trials on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MapKind {
    Theta,
    Phi,
    PhiMp,
    Effect,
    Fpq,
    Mobius,
    Pick,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Hermitian,
    Psd,
    Effect,
    Halfplane,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the class (m, p) and inertia of a Hermitian matrix A.
    Classify { a: PathBuf },

    /// Apply a map to the matrix in X.
    Apply {
        #[arg(long, value_enum)]
        map: MapKind,
        /// Hermitian parameter A (theta, phi, mobius).
        #[arg(long = "a")]
        a: Option<PathBuf>,
        /// Mobius B (defaults to 0).
        #[arg(long = "b")]
        b: Option<PathBuf>,
        /// Mobius C (defaults to 0).
        #[arg(long = "c-matrix")]
        c_matrix: Option<PathBuf>,
        /// Invertible T (effect, fpq, mobius; defaults to I).
        #[arg(long = "t")]
        t: Option<PathBuf>,
        /// Transpose the argument first.
        #[arg(long)]
        transpose: bool,
        /// Block size m (phi-mp).
        #[arg(long)]
        m: Option<usize>,
        /// Positive part p (phi-mp, integer) or fpq parameter p.
        #[arg(long, allow_hyphen_values = true)]
        p: Option<f64>,
        /// fpq parameter q.
        #[arg(long, allow_hyphen_values = true)]
        q: Option<f64>,
        /// Pick constant term.
        #[arg(long = "pick-c", default_value_t = 0.0, allow_hyphen_values = true)]
        pick_c: f64,
        /// Pick linear coefficient.
        #[arg(long = "pick-d", default_value_t = 0.0)]
        pick_d: f64,
        /// Pick atom `y:w`, repeatable.
        #[arg(long = "atom", allow_hyphen_values = true)]
        atoms: Vec<String>,
        /// Pick interval endpoints.
        #[arg(long, default_value_t = f64::NEG_INFINITY, allow_hyphen_values = true)]
        lo: f64,
        #[arg(long, default_value_t = f64::INFINITY, allow_hyphen_values = true)]
        hi: f64,
        /// Write the result here instead of stdout.
        #[arg(long, short)]
        out: Option<PathBuf>,
        x: PathBuf,
    },

    /// Test order-n matrix monotonicity of a scalar function.
    CheckMonotone {
        /// Built-in name (sqrt, log, square, identity, neg-reciprocal, f_p:<p>, rational:<r>)
        /// or a file of `x y` lines.
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 1000)]
        tuples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },

    /// Run one verification suite, or all of them.
    Verify {
        suite: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        /// List suite names and exit.
        #[arg(long)]
        list: bool,
        /// Write the JSON report here instead of stdout.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },

    /// Draw a random matrix.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

/// Outcome of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    PropertyFailure,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::PropertyFailure => 1,
        }
    }
}

/// Tolerances from the environment variable, then the command line.
pub fn tolerances(env: Option<&str>, flag: Option<&str>) -> Result<Tolerances, CliError> {
    let mut tol = Tolerances::default();
    for spec in [env, flag].into_iter().flatten() {
        tol = tol.with_overrides(spec).map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(tol)
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<Status, CliError> {
    let env = std::env::var(TOL_ENV).ok();
    let tol = tolerances(env.as_deref(), cli.tol.as_deref())?;
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    match cli.command {
        Command::Classify { a } => classify(&a, &tol, stdout),
        Command::Apply { map, a, b, c_matrix, t, transpose, m, p, q, pick_c, pick_d, atoms, lo, hi, out, x } => {
            let params = MapParams { a, b, c_matrix, t, transpose, m, p, q, pick_c, pick_d, atoms, lo, hi };
            let y = apply(map, &params, &x, &tol)?;
            emit_matrix(&y, out.as_deref(), stdout)?;
            Ok(Status::Pass)
        }
        Command::CheckMonotone { function, order, tuples, seed } => {
            check_monotone(&function, order, tuples, seed, exec, &tol, stdout)
        }
        Command::Verify { suite, seed, trials, list, out } => {
            if list {
                for name in suite_names() {
                    writeln!(stdout, "{name:<22} {}", suite_description(name).unwrap_or("")).map_err(io)?;
                }
                return Ok(Status::Pass);
            }
            let cfg = SuiteConfig::new(seed, trials).with_exec(exec).with_tol(tol);
            let reports = verify(suite.as_deref(), &cfg)?;
            let text = if reports.len() == 1 {
                serde_json::to_string_pretty(&reports[0])
            } else {
                serde_json::to_string_pretty(&reports)
            }
            .map_err(|e| CliError::Io(e.to_string()))?;
            match out {
                Some(path) => std::fs::write(&path, text + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
                None => writeln!(stdout, "{text}").map_err(io)?,
            }
            Ok(if reports.iter().all(|r| r.passed) { Status::Pass } else { Status::PropertyFailure })
        }
        Command::Gen { kind, dim, seed, out } => {
            if dim == 0 {
                return Err(CliError::Usage("--dim must be at least 1".into()));
            }
            emit_matrix(&generate(kind, dim, seed), out.as_deref(), stdout)?;
            Ok(Status::Pass)
        }
    }
}

fn io(e: std::io::Error) -> CliError {
    CliError::Io(e.to_string())
}

fn emit_matrix(m: &CMatrix, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => matrix_file::write_matrix(path, m),
        None => stdout.write_all(matrix_file::to_string(m).as_bytes()).map_err(io),
    }
}

fn classify(path: &Path, tol: &Tolerances, stdout: &mut dyn Write) -> Result<Status, CliError> {
    let a = matrix_file::read_hermitian(path, tol)?;
    let c = classify_a(&a, tol);
    let v = json!({
        "n": a.dim(),
        "m": c.m,
        "p": c.p,
        "inertia": { "pos": c.inertia.pos, "zero": c.inertia.zero, "neg": c.inertia.neg },
        "signature": c.inertia.pos as i64 - c.inertia.neg as i64,
        "borderline": c.borderline,
    });
    writeln!(stdout, "{}", serde_json::to_string_pretty(&v).expect("plain JSON")).map_err(io)?;
    Ok(Status::Pass)
}

/// Parameters of `apply`; each map reads the ones it needs.
#[derive(Clone, Debug, Default)]
pub struct MapParams {
    pub a: Option<PathBuf>,
    pub b: Option<PathBuf>,
    pub c_matrix: Option<PathBuf>,
    pub t: Option<PathBuf>,
    pub transpose: bool,
    pub m: Option<usize>,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub pick_c: f64,
    pub pick_d: f64,
    pub atoms: Vec<String>,
    pub lo: f64,
    pub hi: f64,
}

fn required<'a, T>(v: &'a Option<T>, flag: &str, map: MapKind) -> Result<&'a T, CliError> {
    v.as_ref().ok_or_else(|| CliError::Usage(format!("--map {} needs {flag}", map_name(map))))
}

fn map_name(map: MapKind) -> String {
    map.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

fn t_or_identity(p: &MapParams, n: usize) -> Result<CMatrix, CliError> {
    let t = match &p.t {
        Some(path) => matrix_file::read_matrix(path)?,
        None => CMatrix::identity(n),
    };
    if t.rows() != n || t.cols() != n {
        return Err(CliError::Usage(format!("T must be {n}×{n}, found {}×{}", t.rows(), t.cols())));
    }
    Ok(t)
}

fn parse_atom(s: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::Usage(format!("--atom expects y:w, found `{s}`"));
    let (y, w) = s.split_once(':').ok_or_else(bad)?;
    Ok((y.trim().parse().map_err(|_| bad())?, w.trim().parse().map_err(|_| bad())?))
}

pub fn apply(map: MapKind, p: &MapParams, x_path: &Path, tol: &Tolerances) -> Result<CMatrix, CliError> {
    let x = matrix_file::read_matrix(x_path)?;
    let n = x.rows();
    let herm = |x: &CMatrix| Hermitian::new(x.clone(), tol).map_err(|e| CliError::Invalid(format!("{}: {e}", x_path.display())));
    let maybe_transpose = |x: CMatrix| if p.transpose { x.transpose() } else { x };
    Ok(match map {
        MapKind::Theta => {
            let a = matrix_file::read_hermitian(required(&p.a, "--a", map)?, tol)?;
            theta_apply(&a, &maybe_transpose(x), tol)?
        }
        MapKind::Phi => {
            let a = matrix_file::read_hermitian(required(&p.a, "--a", map)?, tol)?;
            phi_apply(&a, &herm(&maybe_transpose(x))?, tol)?.into_matrix()
        }
        MapKind::PhiMp => {
            let m = *required(&p.m, "--m", map)?;
            let pp = *required(&p.p, "--p", map)?;
            if pp < 0.0 || pp.fract() != 0.0 {
                return Err(CliError::Usage(format!("--p must be a non-negative integer for phi-mp, found {pp}")));
            }
            let spec = BlockMapSpec::new(n, m, pp as usize)?;
            phi_mp(&spec, &herm(&maybe_transpose(x))?, tol)?.into_matrix()
        }
        MapKind::Effect => {
            let spec = EffectAutoSpec::new(t_or_identity(p, n)?, p.transpose, tol)?;
            effect_automorphism(&spec, &herm(&x)?, tol)?.into_matrix()
        }
        MapKind::Fpq => {
            let spec = FpqSpec::new(*required(&p.p, "--p", map)?, *required(&p.q, "--q", map)?, t_or_identity(p, n)?, p.transpose, tol)?;
            fpq_automorphism(&spec, &herm(&x)?, tol)?.into_matrix()
        }
        MapKind::Mobius => {
            let read = |v: &Option<PathBuf>| match v {
                Some(path) => matrix_file::read_hermitian(path, tol),
                None => Ok(Hermitian::zeros(n)),
            };
            let f = MobiusAutomorphism::new(t_or_identity(p, n)?, read(&p.a)?, read(&p.b)?, read(&p.c_matrix)?, p.transpose, tol)?;
            f.apply(&x, tol)?
        }
        MapKind::Pick => {
            let atoms = p.atoms.iter().map(|s| parse_atom(s)).collect::<Result<Vec<_>, _>>()?;
            let rep = PickRepresentation::new(p.pick_c, p.pick_d, atoms, p.lo, p.hi)?;
            // Hermitian arguments use the functional calculus, anything else must lie in Π_n
            match Hermitian::new(x.clone(), tol) {
                Ok(h) => rep.hermitian(&h, tol)?.into_matrix(),
                Err(_) => rep.half_plane(&x, tol)?,
            }
        }
    })
}

/// A table of `x y` lines; `#` starts a comment.
fn read_table(path: &Path) -> Result<ScalarFunction, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
        let parse_err = |column: usize, message: String| CliError::Parse {
            origin: path.display().to_string(),
            line: i + 1,
            column,
            message,
        };
        if fields.len() != 2 {
            return Err(parse_err(1, format!("expected two numbers, found {}", fields.len())));
        }
        let num = |k: usize| fields[k].parse::<f64>().map_err(|e| parse_err(k + 1, format!("`{}`: {e}", fields[k])));
        xs.push(num(0)?);
        ys.push(num(1)?);
    }
    Ok(ScalarFunction::tabulated(xs, ys)?)
}

pub fn check_monotone(
    function: &str,
    order: usize,
    tuples: usize,
    seed: u64,
    exec: Exec,
    tol: &Tolerances,
    stdout: &mut dyn Write,
) -> Result<Status, CliError> {
    let path = Path::new(function);
    let f = if path.is_file() { read_table(path)? } else { ScalarFunction::builtin(function)? };
    if tuples == 0 {
        return Err(CliError::Usage("--tuples must be at least 1".into()));
    }
    let v = is_matrix_monotone(&f, order, tuples, seed, exec, tol)?;
    let witness = match &v.witness {
        None => serde_json::Value::Null,
        Some(MonotoneWitness::Nodes { nodes, min_eigenvalue }) => json!({ "nodes": nodes, "min_eigenvalue": min_eigenvalue }),
        Some(MonotoneWitness::Pair { x, y }) => json!({
            "x": matrix_file::MatrixFile::from_matrix(x),
            "y": matrix_file::MatrixFile::from_matrix(y),
        }),
    };
    let report = json!({
        "function": f.name,
        "order": v.order,
        "verdict": if v.pass { "PASS" } else { "FAIL" },
        "conclusive": !v.approximate,
        "tuples": v.tuples,
        "pairs": v.pairs,
        "min_relative_eigenvalue": v.min_relative_eigenvalue,
        "loewner_pass": v.loewner_pass,
        "pairs_pass": v.pairs_pass,
        "witness": witness,
    });
    writeln!(stdout, "{}", serde_json::to_string_pretty(&report).expect("plain JSON")).map_err(io)?;
    Ok(if v.pass { Status::Pass } else { Status::PropertyFailure })
}

/// Runs the named suite, or every suite when `suite` is `None`.
pub fn verify(suite: Option<&str>, cfg: &SuiteConfig) -> Result<Vec<RunReport>, CliError> {
    let names: Vec<&str> = match suite {
        Some(name) => vec![name],
        None => suite_names(),
    };
    names
        .into_iter()
        .map(|name| {
            let start = Instant::now();
            let out = run_suite(name, cfg).map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(RunReport::from_outcome(&out, start.elapsed()))
        })
        .collect()
}

pub fn generate(kind: GenKind, n: usize, seed: u64) -> CMatrix {
    let mut rng = Sampler::new(seed);
    match kind {
        GenKind::Hermitian => rng.hermitian(n).into_matrix(),
        GenKind::Psd => {
            let r = 1 + rng.index(n);
            rng.psd(n, r).into_matrix()
        }
        GenKind::Effect => rng.effect(n).into_matrix(),
        GenKind::Halfplane => rng.half_plane(n),
    }
}
