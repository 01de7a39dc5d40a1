//! `ring-spectra`: spectra and isospectrality of boundary conditions on a ring.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 malformed input, 3 non-unitary or
//! off-chart boundary condition, 4 numerical failure, 5 failed verification.

mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ring_spectra::iso::{orbit_all_equal, orbit_lambdas};
use ring_spectra::{
    classify, find_spectrum, orbit_spectra, parse_bc, verify, DiracKernel, Error, PhysicalConfig, SchrodKernel,
    SearchOptions, SpectralKernel, SpectrumSlice, Theory, UnitaryBc, Window,
};

use output::{Format, Units};

#[derive(Parser)]
#[command(name = "ring-spectra", version, about = "Spectra of Dirac and Schrodinger particles on a ring with a junction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues inside an energy window
    Spectrum(SpectrumArgs),
    /// Parity symmetry, invariants and conjugation orbit of a boundary condition
    Classify(ClassifyArgs),
    /// Spectra along the conjugation orbit U_λ = e^{iλσx} U e^{-iλσx}
    Orbit(OrbitArgs),
    /// Run the acceptance checks and print TAP lines
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoryArg {
    Dirac,
    Schrod,
}

impl From<TheoryArg> for Theory {
    fn from(t: TheoryArg) -> Self {
        match t {
            TheoryArg::Dirac => Theory::Dirac,
            TheoryArg::Schrod => Theory::Schrod,
        }
    }
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_enum)]
    theory: TheoryArg,

    /// robin:alpha=A | pp:alpha=A | qp:alpha=A | chiral:alpha=A | dpp:alpha=A |
    /// parity:eta=E,theta=T | u2:eta=E,m0=..,m1=..,m2=..,m3=.. | mat:<8 reals, row-major re/im>
    #[arg(long)]
    bc: String,

    /// Half-open energy window (MIN, MAX]
    #[arg(long, num_args = 2, value_names = ["MIN", "MAX"], allow_negative_numbers = true, required = true)]
    window: Vec<f64>,

    /// Dimensionless mass μ₀ = mcL/ħ (dirac, dimensionless units) [default: 1]
    #[arg(long, allow_negative_numbers = true)]
    mu0: Option<f64>,

    #[arg(long, value_enum, default_value_t = Units::Dimensionless)]
    units: Units,

    /// Ring length (physical units)
    #[arg(long = "L", default_value_t = 1.0)]
    length: f64,

    /// Particle mass (physical units)
    #[arg(long, default_value_t = 1.0)]
    mass: f64,

    /// Reduced Planck constant (physical units)
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,

    /// Speed of light (physical units)
    #[arg(long, default_value_t = 1.0)]
    c: f64,

    /// Grid intervals per 2π of window length (≥ 64)
    #[arg(long, default_value_t = 1024)]
    density: usize,

    /// Relative bisection tolerance
    #[arg(long, default_value_t = 1e-12)]
    tol_root: f64,

    /// Largest accepted |F_U| at a root
    #[arg(long, default_value_t = 1e-9)]
    tol_residual: f64,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Output file [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    bc: String,

    /// Number of orbit samples n; λ = 2πk/n for k = 1..n-1
    #[arg(long, default_value_t = ring_spectra::iso::ORBIT_SAMPLES)]
    samples: usize,

    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OrbitArgs {
    #[command(flatten)]
    search: SearchArgs,

    /// Number of orbit points n; λ = 2πk/n for k = 0..n-1
    #[arg(long, default_value_t = ring_spectra::iso::ORBIT_SAMPLES)]
    lambdas: usize,

    /// Root-by-root tolerance for `all_equal`
    #[arg(long, default_value_t = 1e-8)]
    compare_tol: f64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run a single check by number
    #[arg(long)]
    only: Option<u8>,
}

#[derive(Debug)]
enum CliError {
    Lib(Error),
    Usage(String),
    Numerical(String),
    Io(io::Error),
    Verification,
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Lib(e) => match e {
                Error::MalformedSpec { .. } | Error::UnknownFamily(_) => 2,
                Error::InvalidWindow { .. } | Error::InvalidOption(_) | Error::InvalidConfig(_) => 2,
                Error::NotUnitary { .. } | Error::ChartConstraint { .. } => 3,
                _ => 4,
            },
            CliError::Numerical(_) => 4,
            CliError::Verification => 5,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Usage(m) | CliError::Numerical(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::Verification => f.write_str("verification failed"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Everything a search needs, resolved to dimensionless quantities.
struct Search {
    theory: Theory,
    bc_spec: String,
    bc: UnitaryBc<f64>,
    units: Units,
    physical: Option<PhysicalConfig<f64>>,
    mu0: Option<f64>,
    window: Window<f64>,
    user_window: (f64, f64),
    opts: SearchOptions<f64>,
    kernel: Box<dyn SpectralKernel<f64>>,
}

impl Search {
    fn from_args(a: &SearchArgs) -> CliResult<Self> {
        let theory: Theory = a.theory.into();
        let bc = parse_bc::<f64>(&a.bc)?;
        let (wmin, wmax) = (a.window[0], a.window[1]);
        Window::new(wmin, wmax)?;
        let physical = match a.units {
            Units::Dimensionless => None,
            Units::Physical => Some(PhysicalConfig::new(a.length, a.mass, a.hbar, a.c)?),
        };
        let mu0 = match (theory, physical, a.mu0) {
            (Theory::Schrod, _, Some(_)) => return Err(CliError::Usage("--mu0 applies to --theory dirac only".into())),
            (Theory::Schrod, _, None) => None,
            (Theory::Dirac, Some(_), Some(_)) => {
                return Err(CliError::Usage("--mu0 is derived from --L, --mass, --hbar, --c in physical units".into()))
            }
            (Theory::Dirac, Some(p), None) => Some(p.mu0()),
            (Theory::Dirac, None, m) => Some(m.unwrap_or(1.0)),
        };
        let to_dimless = |x: f64| -> CliResult<f64> {
            Ok(match (physical, theory) {
                (None, _) => x,
                (Some(p), Theory::Dirac) => p.energy_to_mu(x),
                (Some(p), Theory::Schrod) => p.energy_to_e(x)?,
            })
        };
        let window = Window::new(to_dimless(wmin)?, to_dimless(wmax)?)?;
        let opts = SearchOptions {
            density: a.density,
            tol_root: a.tol_root,
            tol_residual: a.tol_residual,
            separation: a.tol_root * 1e4,
        };
        opts.validate()?;
        let kernel: Box<dyn SpectralKernel<f64>> = match theory {
            Theory::Dirac => Box::new(DiracKernel::new(mu0.unwrap_or(1.0))?),
            Theory::Schrod => Box::new(SchrodKernel),
        };
        Ok(Self {
            theory,
            bc_spec: a.bc.clone(),
            bc,
            units: a.units,
            physical,
            mu0,
            window,
            user_window: (wmin, wmax),
            opts,
            kernel,
        })
    }

    /// Dimensionless energy back to the user's units.
    fn to_user(&self, x: f64) -> f64 {
        match (self.physical, self.theory) {
            (None, _) => x,
            (Some(p), Theory::Dirac) => p.mu_to_energy(x),
            (Some(p), Theory::Schrod) => p.e_to_energy(x).unwrap_or(f64::NAN),
        }
    }

    fn run(&self, bc: &UnitaryBc<f64>) -> CliResult<SpectrumSlice<f64>> {
        let s = find_spectrum(self.kernel.as_ref(), bc, self.window, &self.opts)?;
        check_complete(&s, |x| self.to_user(x))?;
        Ok(s)
    }
}

fn check_complete(s: &SpectrumSlice<f64>, to_user: impl Fn(f64) -> f64) -> CliResult<()> {
    if s.is_complete() {
        return Ok(());
    }
    let mut msg = Vec::new();
    for (a, b) in &s.excluded {
        msg.push(format!("excluded interval ({}, {}): kernel could not be evaluated", to_user(*a), to_user(*b)));
    }
    for x in &s.unverified {
        msg.push(format!("crossing near {} failed the residual check", to_user(*x)));
    }
    Err(CliError::Numerical(msg.join("\n")))
}

fn open_out(path: &Option<PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn configure_threads() -> CliResult<()> {
    let Ok(v) = std::env::var("RING_SPECTRA_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("RING_SPECTRA_THREADS must be a non-negative integer, got `{v}`")))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn cmd_spectrum(a: &SpectrumArgs) -> CliResult<()> {
    let search = Search::from_args(&a.search)?;
    let s = search.run(&search.bc)?;
    let mut w = open_out(&a.search.out)?;
    match a.search.format {
        Format::Json => output::write_spectrum_json(&mut w, &search.describe(), &s, |x| search.to_user(x))?,
        Format::Csv => output::write_spectrum_csv(&mut w, &search.describe(), &s, |x| search.to_user(x))?,
    }
    w.flush()?;
    Ok(())
}

fn cmd_classify(a: &ClassifyArgs) -> CliResult<()> {
    let bc = parse_bc::<f64>(&a.bc)?;
    if a.samples < 2 {
        return Err(CliError::Usage("--samples must be at least 2".into()));
    }
    let c = ring_spectra::iso::classify_with(&bc, a.samples);
    debug_assert_eq!(c.parity_symmetric, classify(&bc).parity_symmetric);
    let mut w = open_out(&a.out)?;
    output::write_classification_json(&mut w, &a.bc, &bc, &c)?;
    w.flush()?;
    Ok(())
}

fn cmd_orbit(a: &OrbitArgs) -> CliResult<()> {
    let search = Search::from_args(&a.search)?;
    if a.lambdas == 0 {
        return Err(CliError::Usage("--lambdas must be positive".into()));
    }
    let mut lambdas = vec![0.0];
    lambdas.extend(orbit_lambdas::<f64>(a.lambdas));
    let pts = orbit_spectra(search.kernel.as_ref(), &search.bc, &lambdas, search.window, &search.opts)?;
    for p in &pts {
        check_complete(&p.spectrum, |x| search.to_user(x))?;
    }
    let all_equal = orbit_all_equal(&pts, a.compare_tol)?;
    let mut w = open_out(&a.search.out)?;
    match a.search.format {
        Format::Json => output::write_orbit_json(&mut w, &search.describe(), all_equal, &pts, |x| search.to_user(x))?,
        Format::Csv => output::write_orbit_csv(&mut w, &search.describe(), all_equal, &pts, |x| search.to_user(x))?,
    }
    w.flush()?;
    Ok(())
}

fn cmd_verify(a: &VerifyArgs) -> CliResult<()> {
    let checks = verify::checks();
    let selected: Vec<_> = checks.iter().filter(|c| a.only.map_or(true, |id| c.id == id)).collect();
    if selected.is_empty() {
        return Err(CliError::Usage(format!("no check numbered {}", a.only.unwrap_or(0))));
    }
    let mut out = io::stdout().lock();
    writeln!(out, "1..{}", selected.len())?;
    let mut failed = 0;
    for c in selected {
        let r = c.run();
        failed += usize::from(!r.passed);
        writeln!(out, "{}", r.tap_line())?;
        out.flush()?;
    }
    if failed > 0 {
        return Err(CliError::Verification);
    }
    Ok(())
}

impl Search {
    fn describe(&self) -> output::RunInfo {
        output::RunInfo {
            theory: self.theory,
            bc_spec: self.bc_spec.clone(),
            bc_chart: self.bc.to_spec_string(),
            units: self.units,
            window: self.user_window,
            mu0: self.mu0,
            physical: self.physical,
            opts: self.opts,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|_| match &cli.command {
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Orbit(a) => cmd_orbit(a),
        Command::Verify(a) => cmd_verify(a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::Verification) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.code())
        }
    }
}
