//! Command-line front end for the spectral toolkit.
//!
//! Subcommands wrap the library's eigenvalue search, Hecke and L-function
//! diagnostics, scattering evaluation, Eisenstein constant-term comparison,
//! trace-identity term evaluation, and counting-curve assembly. Durable
//! outputs go through the versioned CSV formats in `hs_core::io`, written
//! atomically, so re-running a command with the same inputs reproduces its
//! output files byte for byte.
//!
//! Exit codes: 0 on success, 1 on invalid arguments or failed validation
//! (including CSV schema mismatches), 2 when an eigenvalue search completes
//! but accepts no candidates.
//!
//! A `--config PATH` file supplies defaults as flat `key = value` lines
//! keyed by long flag names; explicit flags override file entries.

use anyhow::{anyhow, bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use hs_core::hecke::{
    euler_product, hecke_relation_residual, l_series, lambda_completed, RepresentationSpec,
};
use hs_core::hypgeom::HPoint;
use hs_core::io::{
    coefficient_sibling, read_coefficients, read_eigenvalues, read_lengths, write_counting_curve,
    write_eigenvalues, write_windings, EigenvalueRecord,
};
use hs_core::maass::{eigenvalue_search, expansion_eval, FourierCoefficients, SpectralPoint, Symmetry};
use hs_core::scattering::{eisenstein_eval, phi_at_half, phi_gamma1, winding_number};
use hs_core::traceform::{
    cusp_terms, geometric_side, make_bump_pair, make_gaussian_pair, modular_surface_area,
    plancherel_term, spectral_side, torsion_free_residual, weyl_counting_curve,
    LengthSpectrumEntry, TestFunctionPair,
};
use hs_core::Complex64;
use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "hs",
    version,
    about = "Spectral toolkit for the modular surface: cusp-form search, L-functions, scattering, trace-identity terms, and counting curves"
)]
struct Cli {
    /// Flat `key = value` defaults file; explicit flags override its entries.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cusp-form eigenvalue search and evaluation.
    #[command(subcommand)]
    Maass(MaassCmd),
    /// Hecke multiplicativity diagnostics for stored forms.
    #[command(subcommand)]
    Hecke(HeckeCmd),
    /// L-function evaluation from stored forms.
    #[command(subcommand)]
    Lfunc(LfuncCmd),
    /// Scattering determinant values and winding numbers.
    #[command(subcommand)]
    Scattering(ScatteringCmd),
    /// Eisenstein series diagnostics.
    #[command(subcommand)]
    Eisenstein(EisensteinCmd),
    /// Trace-identity term evaluation and closure checks.
    #[command(subcommand)]
    Trace(TraceCmd),
    /// Counting-curve assembly from eigenvalue and winding tables.
    #[command(subcommand)]
    Weyl(WeylCmd),
}

#[derive(Subcommand)]
enum MaassCmd {
    /// Scan a spectral-parameter interval and write accepted eigenvalues.
    Find(MaassFindArgs),
    /// Evaluate stored forms at a point of the upper half-plane.
    Eval(MaassEvalArgs),
}

#[derive(Args)]
struct MaassFindArgs {
    /// Symmetry class to search: even, odd, or both.
    #[arg(long, value_parser = parse_symmetry_choice)]
    symmetry: SymmetryChoice,
    /// Lower end of the spectral-parameter interval (must be > 0).
    #[arg(long)]
    r_min: f64,
    /// Upper end of the spectral-parameter interval.
    #[arg(long)]
    r_max: f64,
    /// Scan grid step (config key `step`; at most 0.05).
    #[arg(long)]
    step: Option<f64>,
    /// Output eigenvalue table (config key `out`); coefficients go to the
    /// sibling `<stem>.coeffs.csv`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MaassEvalArgs {
    /// Eigenvalue table written by `maass find`.
    #[arg(long)]
    eig: PathBuf,
    /// Real part of the evaluation point.
    #[arg(long)]
    x: f64,
    /// Imaginary part of the evaluation point (must be > 0).
    #[arg(long)]
    y: f64,
}

#[derive(Subcommand)]
enum HeckeCmd {
    /// Report the worst multiplicativity violation of stored coefficients.
    Check(HeckeCheckArgs),
}

#[derive(Args)]
struct HeckeCheckArgs {
    /// Eigenvalue table written by `maass find`.
    #[arg(long)]
    eig: PathBuf,
    /// Check all index pairs with m*n up to this bound (config key `mn-max`).
    #[arg(long)]
    mn_max: Option<usize>,
}

#[derive(Subcommand)]
enum LfuncCmd {
    /// Evaluate the L-function of a stored form.
    Eval(LfuncEvalArgs),
}

#[derive(Args)]
struct LfuncEvalArgs {
    /// Eigenvalue table written by `maass find`.
    #[arg(long)]
    eig: PathBuf,
    /// Evaluation point as `RE,IM` (`,IM` optional).
    #[arg(long, value_parser = parse_complex)]
    s: Complex64,
    /// Method: series (Dirichlet sum), euler (partial Euler product), or
    /// completed (archimedean-completed, entire continuation; even forms).
    #[arg(long, default_value = "series", value_parser = parse_method)]
    method: LfuncMethod,
    /// Euler-product prime cutoff (config key `prime-max`).
    #[arg(long)]
    prime_max: Option<u64>,
}

#[derive(Clone, Copy)]
enum LfuncMethod {
    Series,
    Euler,
    Completed,
}

#[derive(Subcommand)]
enum ScatteringCmd {
    /// Print the scattering determinant at one point.
    Phi(ScatteringPhiArgs),
    /// Tabulate winding numbers on a grid and write them as CSV.
    Winding(ScatteringWindingArgs),
}

#[derive(Args)]
struct ScatteringPhiArgs {
    /// Evaluation point as `RE,IM`; `0.5,0` takes the limit branch.
    #[arg(long, value_parser = parse_complex)]
    s: Complex64,
}

#[derive(Args)]
struct ScatteringWindingArgs {
    /// Largest grid value of lambda.
    #[arg(long)]
    lambda_max: f64,
    /// Smallest grid value of lambda (config key `lambda-min`).
    #[arg(long)]
    lambda_min: Option<f64>,
    /// Grid step (config key `step`).
    #[arg(long)]
    step: Option<f64>,
    /// Output winding table (config key `out`).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum EisensteinCmd {
    /// Compare the numerically integrated constant term with y^s + phi(s) y^{1-s}.
    ConstantTerm(EisensteinConstantTermArgs),
}

#[derive(Args)]
struct EisensteinConstantTermArgs {
    /// Height of the horocycle to integrate over (must be > 0).
    #[arg(long)]
    y: f64,
    /// Spectral point as `RE,IM` (Re s > 1 for lattice-sum convergence).
    #[arg(long, value_parser = parse_complex)]
    s: Complex64,
    /// Lattice-sum cutoff (config key `cutoff`).
    #[arg(long)]
    cutoff: Option<usize>,
    /// Number of midpoint nodes across the period (config key `nodes`).
    #[arg(long)]
    nodes: Option<usize>,
}

#[derive(Subcommand)]
enum TraceCmd {
    /// Evaluate the individual terms of the trace identity for a test pair.
    Terms(TraceTermsArgs),
    /// Close the compact-surface identity on synthetic data and report the residual.
    Check(TraceCheckArgs),
}

#[derive(Args)]
struct TraceTermsArgs {
    /// Test-function pair: bump (compact support) or gaussian.
    #[arg(long, value_parser = parse_pair_kind)]
    pair: PairKind,
    /// Support radius of the bump, or width of the Gaussian.
    #[arg(long)]
    width: f64,
    /// Eigenvalue table supplying the discrete spectrum (optional).
    #[arg(long)]
    eig: Option<PathBuf>,
    /// Length-spectrum table supplying the geometric side (optional).
    #[arg(long)]
    lengths: Option<PathBuf>,
    /// Number of cusps for the cusp-driven terms.
    #[arg(long, default_value_t = 1)]
    cusps: usize,
    /// Spectral shift t of the paired kernel h(t-r) + h(t+r).
    #[arg(long, default_value_t = 0.0)]
    shift: f64,
}

#[derive(Clone, Copy)]
enum PairKind {
    Bump,
    Gaussian,
}

#[derive(Args)]
struct TraceCheckArgs {
    /// Width of the Gaussian test pair (config key `width`).
    #[arg(long)]
    width: Option<f64>,
    /// Surface area of the synthetic compact surface (config key `area`).
    #[arg(long)]
    area: Option<f64>,
    /// Residual tolerance for the pass verdict (config key `tol`).
    #[arg(long)]
    tol: Option<f64>,
    /// Nudge the first synthetic length by this amount after closing,
    /// demonstrating the identity's sensitivity to its data.
    #[arg(long)]
    perturb: Option<f64>,
}

#[derive(Subcommand)]
enum WeylCmd {
    /// Assemble the counting curve from eigenvalue and winding tables.
    Curve(WeylCurveArgs),
}

#[derive(Args)]
struct WeylCurveArgs {
    /// Eigenvalue table (schema hs-eig); may contain zero rows.
    #[arg(long)]
    eig: PathBuf,
    /// Winding table (schema hs-wind) supplying the lambda grid.
    #[arg(long)]
    winding: PathBuf,
    /// Output counting-curve table (config key `out`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Count of eigenvalues below the tempered range (config key `n-small`;
    /// 1 for the modular surface's constant function).
    #[arg(long)]
    n_small: Option<usize>,
    /// Number of cusps entering the lambda log lambda correction.
    #[arg(long, default_value_t = 1)]
    cusps: usize,
}

#[derive(Clone, Copy)]
enum SymmetryChoice {
    One(Symmetry),
    Both,
}

fn parse_symmetry_choice(s: &str) -> std::result::Result<SymmetryChoice, String> {
    match s {
        "both" => Ok(SymmetryChoice::Both),
        other => Symmetry::from_str(other)
            .map(SymmetryChoice::One)
            .map_err(|e| e.to_string()),
    }
}

fn parse_pair_kind(s: &str) -> std::result::Result<PairKind, String> {
    match s {
        "bump" => Ok(PairKind::Bump),
        "gaussian" => Ok(PairKind::Gaussian),
        other => Err(format!("pair must be 'bump' or 'gaussian', got '{other}'")),
    }
}

fn parse_method(s: &str) -> std::result::Result<LfuncMethod, String> {
    match s {
        "series" => Ok(LfuncMethod::Series),
        "euler" => Ok(LfuncMethod::Euler),
        "completed" => Ok(LfuncMethod::Completed),
        other => Err(format!(
            "method must be 'series', 'euler', or 'completed', got '{other}'"
        )),
    }
}

fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let mut parts = s.splitn(2, ',');
    let re = parts
        .next()
        .unwrap_or("")
        .trim()
        .parse::<f64>()
        .map_err(|_| format!("not a number: {s:?}"))?;
    let im = match parts.next() {
        Some(t) => t
            .trim()
            .parse::<f64>()
            .map_err(|_| format!("not a number: {s:?}"))?,
        None => 0.0,
    };
    Ok(Complex64::new(re, im))
}

/// Flat `key = value` defaults, consulted only for flags the user omitted.
struct Config(HashMap<String, String>);

impl Config {
    fn load(path: Option<&Path>) -> Result<Self> {
        let mut map = HashMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read config {}", path.display()))?;
            for (idx, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) = line.split_once('=').ok_or_else(|| {
                    anyhow!(
                        "{}:{}: expected `key = value`, found {line:?}",
                        path.display(),
                        idx + 1
                    )
                })?;
                map.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        Ok(Config(map))
    }

    fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.0.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|_| anyhow!("config key {key}: cannot parse {raw:?}")),
        }
    }

    fn f64(&self, flag: Option<f64>, key: &str, default: f64) -> Result<f64> {
        Ok(flag.or(self.parsed(key)?).unwrap_or(default))
    }

    fn usize(&self, flag: Option<usize>, key: &str, default: usize) -> Result<usize> {
        Ok(flag.or(self.parsed(key)?).unwrap_or(default))
    }

    fn u64(&self, flag: Option<u64>, key: &str, default: u64) -> Result<u64> {
        Ok(flag.or(self.parsed(key)?).unwrap_or(default))
    }

    fn path(&self, flag: Option<PathBuf>, key: &str, default: &str) -> PathBuf {
        flag.or_else(|| self.0.get(key).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(default))
    }
}

fn format_complex(v: Complex64) -> String {
    if v.im == 0.0 {
        format!("{}", v.re)
    } else if v.im < 0.0 {
        format!("{} - {}i", v.re, -v.im)
    } else {
        format!("{} + {}i", v.re, v.im)
    }
}

/// A stored form rebuilt from the eigenvalue table and its coefficient
/// sibling: coefficient rows are matched to their eigenvalue row by the
/// printed value of r, which round-trips exactly.
fn load_forms(eig_path: &Path) -> Result<Vec<SpectralPoint>> {
    let records = read_eigenvalues(eig_path)
        .with_context(|| format!("cannot read eigenvalue table {}", eig_path.display()))?;
    let sibling = coefficient_sibling(eig_path)?;
    let rows = read_coefficients(&sibling)
        .with_context(|| format!("cannot read coefficient table {}", sibling.display()))?;
    let mut forms = Vec::with_capacity(records.len());
    for rec in &records {
        let mut a = vec![0.0f64; rec.truncation + 1];
        let mut seen = 0usize;
        for row in rows.iter().filter(|row| row.r == rec.r) {
            if row.n == 0 || row.n > rec.truncation {
                bail!(
                    "{}: coefficient index {} outside 1..={} for r = {}",
                    sibling.display(),
                    row.n,
                    rec.truncation,
                    rec.r
                );
            }
            a[row.n] = row.value;
            seen += 1;
        }
        if seen != rec.truncation {
            bail!(
                "{}: form r = {} has {} coefficient rows, expected {}",
                sibling.display(),
                rec.r,
                seen,
                rec.truncation
            );
        }
        forms.push(SpectralPoint {
            r: rec.r,
            lambda: rec.lambda,
            symmetry: rec.symmetry,
            coefficients: FourierCoefficients::new(rec.symmetry, rec.r, a)?,
            residual_two_height: rec.residual_two_height,
            residual_hecke: rec.residual_hecke,
        });
    }
    Ok(forms)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version are successful outcomes; genuine argument
            // errors print usage and exit 1.
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{err}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{err}");
                    ExitCode::from(1)
                }
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let cfg = Config::load(cli.config.as_deref())?;
    match cli.command {
        Command::Maass(MaassCmd::Find(args)) => maass_find(args, &cfg),
        Command::Maass(MaassCmd::Eval(args)) => maass_eval(args),
        Command::Hecke(HeckeCmd::Check(args)) => hecke_check(args, &cfg),
        Command::Lfunc(LfuncCmd::Eval(args)) => lfunc_eval(args, &cfg),
        Command::Scattering(ScatteringCmd::Phi(args)) => scattering_phi(args),
        Command::Scattering(ScatteringCmd::Winding(args)) => scattering_winding(args, &cfg),
        Command::Eisenstein(EisensteinCmd::ConstantTerm(args)) => constant_term(args, &cfg),
        Command::Trace(TraceCmd::Terms(args)) => trace_terms(args),
        Command::Trace(TraceCmd::Check(args)) => trace_check(args, &cfg),
        Command::Weyl(WeylCmd::Curve(args)) => weyl_curve(args, &cfg),
    }
}

fn maass_find(args: MaassFindArgs, cfg: &Config) -> Result<u8> {
    let step = cfg.f64(args.step, "step", 0.05)?;
    let out = cfg.path(args.out, "out", "eigenvalues.csv");
    let classes: &[Symmetry] = match args.symmetry {
        SymmetryChoice::One(sym) => &[sym][..],
        SymmetryChoice::Both => &[Symmetry::Even, Symmetry::Odd][..],
    };
    let mut points = Vec::new();
    for &sym in classes {
        points.extend(eigenvalue_search(args.r_min, args.r_max, sym, step)?);
    }
    points.sort_by(|a, b| a.r.total_cmp(&b.r));
    write_eigenvalues(&out, &points)?;
    for p in &points {
        println!(
            "r = {}, lambda = {}, symmetry = {}, residual_two_height = {:.2e}, residual_hecke = {:.2e}",
            p.r, p.lambda, p.symmetry, p.residual_two_height, p.residual_hecke
        );
    }
    println!(
        "accepted {} eigenvalue(s) in [{}, {}]; wrote {} and {}",
        points.len(),
        args.r_min,
        args.r_max,
        out.display(),
        coefficient_sibling(&out)?.display()
    );
    Ok(if points.is_empty() { 2 } else { 0 })
}

fn maass_eval(args: MaassEvalArgs) -> Result<u8> {
    let forms = load_forms(&args.eig)?;
    let z = HPoint::new(args.x, args.y);
    println!("# r,symmetry,value");
    for form in &forms {
        let value = expansion_eval(&form.coefficients, z)
            .with_context(|| format!("evaluating the form at r = {}", form.r))?;
        println!("{},{},{}", form.r, form.symmetry, value);
    }
    Ok(0)
}

fn hecke_check(args: HeckeCheckArgs, cfg: &Config) -> Result<u8> {
    let mn_max = cfg.usize(args.mn_max, "mn-max", 30)?;
    let forms = load_forms(&args.eig)?;
    println!("# r,mn_max,max_residual");
    for form in &forms {
        let bound = mn_max.min(form.coefficients.truncation());
        let mut worst = 0.0f64;
        for m in 2..=bound {
            for n in m..=bound {
                if m * n > bound {
                    break;
                }
                worst = worst.max(hecke_relation_residual(
                    &form.coefficients,
                    m as u64,
                    n as u64,
                )?);
            }
        }
        println!("{},{},{:e}", form.r, bound, worst);
    }
    Ok(0)
}

fn lfunc_eval(args: LfuncEvalArgs, cfg: &Config) -> Result<u8> {
    let prime_max = cfg.u64(args.prime_max, "prime-max", 1000)?;
    let forms = load_forms(&args.eig)?;
    if forms.is_empty() {
        bail!("{}: no stored forms", args.eig.display());
    }
    for form in &forms {
        match args.method {
            LfuncMethod::Series => {
                let v = l_series(args.s, &form.coefficients)?;
                println!(
                    "r = {}: L = {} (tail <= {:e})",
                    form.r,
                    format_complex(v.value),
                    v.tail_bound
                );
            }
            LfuncMethod::Euler => {
                let v = euler_product(
                    args.s,
                    &form.coefficients,
                    RepresentationSpec::Standard,
                    prime_max,
                )?;
                println!(
                    "r = {}: L = {} (Euler product over primes <= {})",
                    form.r,
                    format_complex(v),
                    prime_max
                );
            }
            LfuncMethod::Completed => {
                let v = lambda_completed(args.s, form)?;
                println!("r = {}: Lambda = {}", form.r, format_complex(v));
            }
        }
    }
    Ok(0)
}

fn scattering_phi(args: ScatteringPhiArgs) -> Result<u8> {
    // The point s = 1/2 is removable; dispatch to the closed-form limit.
    let phi = if (args.s - Complex64::new(0.5, 0.0)).norm() < 1e-12 {
        Complex64::new(phi_at_half(), 0.0)
    } else {
        phi_gamma1(args.s)?
    };
    println!("phi = {}", format_complex(phi));
    Ok(0)
}

fn scattering_winding(args: ScatteringWindingArgs, cfg: &Config) -> Result<u8> {
    let lambda_min = cfg.f64(args.lambda_min, "lambda-min", 0.0)?;
    let step = cfg.f64(args.step, "step", 1.0)?;
    let out = cfg.path(args.out, "out", "winding.csv");
    if !(lambda_min >= 0.0 && args.lambda_max >= lambda_min) {
        bail!(
            "need 0 <= lambda-min <= lambda-max, got [{lambda_min}, {}]",
            args.lambda_max
        );
    }
    if !(step > 0.0) {
        bail!("step must be positive, got {step}");
    }
    let mut records = Vec::new();
    let mut i = 0usize;
    loop {
        let lambda = lambda_min + i as f64 * step;
        if lambda > args.lambda_max + 1e-12 {
            break;
        }
        records.push(winding_number(lambda.min(args.lambda_max))?);
        i += 1;
    }
    write_windings(&out, &records)?;
    println!("wrote {} winding value(s) to {}", records.len(), out.display());
    Ok(0)
}

fn constant_term(args: EisensteinConstantTermArgs, cfg: &Config) -> Result<u8> {
    let cutoff = cfg.usize(args.cutoff, "cutoff", 260)?;
    let nodes = cfg.usize(args.nodes, "nodes", 32)?;
    if !(args.y > 0.0) {
        bail!("height must be positive, got {}", args.y);
    }
    if nodes == 0 {
        bail!("need at least one midpoint node");
    }
    // Midpoint rule across one period: the oscillating modes integrate to
    // zero exactly up to aliasing at frequency `nodes`, which is suppressed
    // by the Bessel decay of the mode coefficients.
    let mut measured = Complex64::new(0.0, 0.0);
    let mut tail = 0.0f64;
    for k in 0..nodes {
        let x = (k as f64 + 0.5) / nodes as f64 - 0.5;
        let e = eisenstein_eval(&HPoint::new(x, args.y), args.s, cutoff)?;
        measured += e.value / nodes as f64;
        tail = tail.max(e.tail_estimate);
    }
    let phi = if (args.s - Complex64::new(0.5, 0.0)).norm() < 1e-12 {
        Complex64::new(phi_at_half(), 0.0)
    } else {
        phi_gamma1(args.s)?
    };
    let ln_y = args.y.ln();
    let predicted = (args.s * ln_y).exp() + phi * ((Complex64::new(1.0, 0.0) - args.s) * ln_y).exp();
    let difference = (measured - predicted).norm();
    println!("measured   = {}", format_complex(measured));
    println!("predicted  = {}", format_complex(predicted));
    println!("difference = {:e}", difference);
    println!("budget     = {:e} (lattice tail at cutoff {cutoff})", tail);
    Ok(0)
}

fn make_pair(kind: PairKind, width: f64) -> Result<TestFunctionPair> {
    if !(width > 0.0 && width.is_finite()) {
        bail!("width must be positive, got {width}");
    }
    Ok(match kind {
        PairKind::Bump => make_bump_pair(width),
        PairKind::Gaussian => make_gaussian_pair(width),
    })
}

fn trace_terms(args: TraceTermsArgs) -> Result<u8> {
    let pair = make_pair(args.pair, args.width)?;
    let area = modular_surface_area();
    let rs: Vec<f64> = match &args.eig {
        Some(path) => read_eigenvalues(path)?.iter().map(|rec| rec.r).collect(),
        None => Vec::new(),
    };
    let entries: Vec<LengthSpectrumEntry> = match &args.lengths {
        Some(path) => read_lengths(path)?,
        None => Vec::new(),
    };
    let identity = plancherel_term(&pair, area);
    let spectral = spectral_side(&pair, &rs, false);
    let geometric = geometric_side(&pair, &entries);
    let cusp = cusp_terms(&pair, args.shift, args.cusps, phi_at_half())?;
    println!("area term      = {identity}");
    println!("spectral side  = {spectral} ({} eigenvalue(s))", rs.len());
    println!("geometric side = {geometric} ({} length(s))", entries.len());
    println!("cusp terms     = {cusp} ({} cusp(s), shift {})", args.cusps, args.shift);
    Ok(0)
}

fn trace_check(args: TraceCheckArgs, cfg: &Config) -> Result<u8> {
    let width = cfg.f64(args.width, "width", 1.0)?;
    let area = cfg.f64(args.area, "area", 4.0 * std::f64::consts::PI)?;
    let tol = cfg.f64(args.tol, "tol", 1e-8)?;
    if !(width > 0.0) || !(area > 0.0) || !(tol > 0.0) {
        bail!("width, area, and tol must all be positive");
    }
    let pair = make_gaussian_pair(width);

    // Synthetic compact-surface data: a short primitive length, its square,
    // and an unrelated longer primitive geodesic.
    let ell0 = 2.0 * 1.5f64.acosh();
    let mut entries = vec![
        LengthSpectrumEntry::new(ell0, ell0, 1)?,
        LengthSpectrumEntry::new(2.0 * ell0, ell0, 2)?,
        LengthSpectrumEntry::new(2.6, 2.6, 1)?,
    ];

    // Close the identity by solving for a final spectral parameter: the
    // target h-mass left over after two fixed eigenvalues must lie in (0, 1)
    // so that h(r) = exp(-(r/width)^2) can absorb it exactly.
    let target = plancherel_term(&pair, area) + geometric_side(&pair, &entries);
    let fixed = [0.8, 1.7];
    let partial: f64 = fixed.iter().map(|&r| (pair.h)(r)).sum();
    let gap = (target - partial) / (pair.h)(0.0);
    if !(gap > 0.0 && gap < 1.0) {
        bail!(
            "closure gap {gap} outside (0, 1); adjust width or area so the \
             remaining spectral mass fits a single eigenvalue"
        );
    }
    let r_last = (-gap.ln()).sqrt() * width;
    let rs = vec![fixed[0], fixed[1], r_last];

    if let Some(eps) = args.perturb {
        let bumped = entries[0].ell + eps;
        entries[0] = LengthSpectrumEntry::new(bumped, bumped, entries[0].mult)?;
    }
    let residual = torsion_free_residual(&pair, &rs, &entries, area)?;
    let verdict = if residual <= tol { "PASS" } else { "FAIL" };
    println!("closure residual = {residual:e} (tolerance {tol:e}): {verdict}");
    Ok(if residual <= tol { 0 } else { 1 })
}

fn weyl_curve(args: WeylCurveArgs, cfg: &Config) -> Result<u8> {
    let out = cfg.path(args.out, "out", "curve.csv");
    let n_small = cfg.usize(args.n_small, "n-small", 0)?;
    let records: Vec<EigenvalueRecord> = read_eigenvalues(&args.eig)?;
    let rs: Vec<f64> = records.iter().map(|rec| rec.r).collect();
    let windings = hs_core::io::read_windings(&args.winding)?;
    let grid: Vec<f64> = windings.iter().map(|w| w.lambda).collect();
    let ms: Vec<f64> = windings.iter().map(|w| w.m).collect();
    let curve = weyl_counting_curve(&rs, &grid, &ms, n_small, modular_surface_area(), args.cusps)?;
    write_counting_curve(&out, &curve)?;
    println!(
        "fit_c = {}, fit_residual = {}; wrote {} ({} grid point(s), {} eigenvalue(s))",
        curve.fit_c,
        curve.fit_residual,
        out.display(),
        curve.grid.len(),
        rs.len()
    );
    Ok(0)
}
