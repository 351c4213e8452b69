//! `symxform`: evaluate multivariate exponential functions, run series and
//! discrete transforms on files, and print verification reports.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on usage,
//! format or numerical errors.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use symxform_core::diffops::ScalarField;
use symxform_core::discrete_ft::DiscreteTransform;
use symxform_core::expfun::{self, EvalMethod};
use symxform_core::fourier_series::{self, dominant_integer_weights, TorusGrid};
use symxform_core::{Symmetry, C64};

pub mod bench;
pub mod formats;
pub mod report;
pub mod verify;

use formats::{CoefficientRecord, SampleTable};
use report::Value;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Core(#[from] symxform_core::Error),
}

#[derive(Debug, Parser)]
#[command(name = "symxform", version, about = "Symmetric and antisymmetric multivariate Fourier transforms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate E⁺_λ(x) or E⁻_λ(x).
    Eval(EvalArgs),
    /// Expansion coefficients of torus samples.
    Analyze(AnalyzeArgs),
    /// Evaluate a coefficient file at a point or on a torus grid.
    Synthesize(SynthesizeArgs),
    /// Discrete transform on the ordered grid of numerators k/N.
    Dft(DftArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Naive/fast timing ratios as JSON.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct SymmetryFlag {
    /// Symmetric class (E⁺).
    #[arg(long)]
    sym: bool,
    /// Antisymmetric class (E⁻).
    #[arg(long)]
    anti: bool,
}

impl SymmetryFlag {
    fn get(&self) -> Symmetry {
        if self.sym {
            Symmetry::Sym
        } else {
            Symmetry::Anti
        }
    }
}

#[derive(Debug, Args)]
#[group(required = false, multiple = false)]
struct OptionalSymmetry {
    #[arg(long)]
    sym: bool,
    #[arg(long)]
    anti: bool,
}

impl OptionalSymmetry {
    fn get(&self) -> Option<Symmetry> {
        match (self.sym, self.anti) {
            (true, _) => Some(Symmetry::Sym),
            (_, true) => Some(Symmetry::Anti),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Naive,
    Fast,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[command(flatten)]
    symmetry: SymmetryFlag,
    #[arg(long, required = true, value_delimiter = ',', allow_negative_numbers = true)]
    lambda: Vec<f64>,
    #[arg(long, required = true, value_delimiter = ',', allow_negative_numbers = true)]
    x: Vec<f64>,
    #[arg(long, value_enum, default_value = "fast")]
    method: Method,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    symmetry: SymmetryFlag,
    /// Points per axis of the torus grid (default 2K+2).
    #[arg(long = "M")]
    m: Option<usize>,
    /// Largest |m_i| in the spectrum (default (M−2)/2).
    #[arg(long)]
    max_frequency: Option<usize>,
    /// CSV samples at every node j/M of the torus grid.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long = "out")]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SynthesizeArgs {
    #[command(flatten)]
    symmetry: SymmetryFlag,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with = "m")]
    x: Option<Vec<f64>>,
    /// Write samples on the M-point torus grid instead of one value.
    #[arg(long = "M")]
    m: Option<usize>,
    #[arg(long = "out")]
    output: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct DirectionFlag {
    #[arg(long)]
    forward: bool,
    #[arg(long)]
    inverse: bool,
}

#[derive(Debug, Args)]
struct DftArgs {
    #[command(flatten)]
    symmetry: SymmetryFlag,
    #[command(flatten)]
    direction: DirectionFlag,
    #[arg(long = "N")]
    big_n: u32,
    #[arg(long)]
    n: usize,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long = "out")]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Orthogonality,
    Laplace,
    Hermite,
    Roundtrip,
    SpecialCases,
}

impl From<SuiteArg> for verify::Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Orthogonality => verify::Suite::Orthogonality,
            SuiteArg::Laplace => verify::Suite::Laplace,
            SuiteArg::Hermite => verify::Suite::Hermite,
            SuiteArg::Roundtrip => verify::Suite::Roundtrip,
            SuiteArg::SpecialCases => verify::Suite::SpecialCases,
        }
    }
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: SuiteArg,
    #[command(flatten)]
    symmetry: OptionalSymmetry,
    #[arg(long = "N", default_value_t = 4)]
    big_n: u32,
    #[arg(long)]
    n: Option<usize>,
    /// Quadrature points per axis for the hermite suite.
    #[arg(long = "M")]
    m: Option<usize>,
    /// Half-width of the truncation box for the hermite suite.
    #[arg(long = "L", default_value_t = symxform_core::hermite::TruncationBox::DEFAULT_HALF_WIDTH)]
    l: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Override the suite's tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Timed repetitions of each fast evaluation.
    #[arg(long, default_value_t = 101)]
    samples: usize,
    /// Accepted for symmetry with other commands; output is always JSON.
    #[arg(long)]
    json: bool,
}

pub fn run<O: Write, E: Write>(argv: &[String], out: &mut O, err: &mut E) -> u8 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                2
            } else {
                let _ = write!(out, "{}", e.render());
                0
            };
            return code;
        }
    };
    configure_threads();
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn configure_threads() {
    let Ok(v) = std::env::var("SYMXFORM_THREADS") else {
        return;
    };
    if let Ok(n) = v.trim().parse::<usize>() {
        if n > 0 {
            // a second call in the same process keeps the first pool
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn dispatch<O: Write>(command: Command, out: &mut O) -> Result<u8, CliError> {
    match command {
        Command::Eval(a) => cmd_eval(a, out),
        Command::Analyze(a) => cmd_analyze(a, out),
        Command::Synthesize(a) => cmd_synthesize(a, out),
        Command::Dft(a) => cmd_dft(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Bench(a) => {
            let table = bench::run(a.samples)?;
            serde_json::to_writer_pretty(&mut *out, &table).map_err(|e| CliError::Format(e.to_string()))?;
            writeln!(out)?;
            Ok(0)
        }
    }
}

fn write_value<O: Write>(out: &mut O, z: C64, json: bool) -> Result<(), CliError> {
    if json {
        serde_json::to_writer(&mut *out, &Value::from(z)).map_err(|e| CliError::Format(e.to_string()))?;
        writeln!(out)?;
    } else {
        writeln!(out, "{} {}", z.re, z.im)?;
    }
    Ok(())
}

fn cmd_eval<O: Write>(a: EvalArgs, out: &mut O) -> Result<u8, CliError> {
    if a.lambda.len() != a.x.len() {
        return Err(CliError::Usage(format!(
            "--lambda has {} entries but --x has {}",
            a.lambda.len(),
            a.x.len()
        )));
    }
    let method = match a.method {
        Method::Naive => EvalMethod::NaiveSum,
        Method::Fast => EvalMethod::Fast,
    };
    let z = expfun::eval(a.symmetry.get(), &a.lambda, &a.x, method)?;
    write_value(out, z, a.json)?;
    Ok(0)
}

fn open(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| CliError::Usage(format!("cannot open {}: {e}", path.display())))
}

/// Runs `f` on the output file, or on `out` when no path is given.
fn with_output<O: Write>(
    path: Option<&Path>,
    out: &mut O,
    f: impl FnOnce(&mut dyn Write) -> Result<(), CliError>,
) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            f(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => f(out),
    }
}

/// Torus samples looked up by node.
struct GridSamples {
    grid: TorusGrid,
    values: Vec<C64>,
}

impl GridSamples {
    fn from_table(table: &SampleTable, per_axis: usize) -> Result<Self, CliError> {
        let dim = table.dim().ok_or_else(|| CliError::Format("sample file has no rows".into()))?;
        let grid = TorusGrid::new(per_axis, dim)?;
        let mut values: Vec<Option<C64>> = vec![None; grid.len()];
        for (p, v) in table.points.iter().zip(&table.values) {
            let idx = node_of(p, per_axis)
                .ok_or_else(|| CliError::Format(format!("sample point {p:?} is not on the {per_axis}-point grid")))?;
            values[grid.index_of(&idx)] = Some(*v);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| CliError::Format(format!("missing sample at {:?}", grid.node(i)))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GridSamples { grid, values })
    }
}

fn node_of(p: &[f64], per_axis: usize) -> Option<Vec<i64>> {
    let m = per_axis as f64;
    p.iter()
        .map(|&c| {
            let k = (c * m).round();
            ((c * m - k).abs() < 1e-9).then_some(k as i64)
        })
        .collect()
}

impl ScalarField for GridSamples {
    fn dim(&self) -> usize {
        self.grid.dim()
    }

    fn eval(&self, x: &[f64]) -> C64 {
        match node_of(x, self.grid.per_axis()) {
            Some(idx) => self.values[self.grid.index_of(&idx)],
            None => C64::new(f64::NAN, f64::NAN),
        }
    }
}

fn cmd_analyze<O: Write>(a: AnalyzeArgs, out: &mut O) -> Result<u8, CliError> {
    let (per_axis, max_freq) = match (a.m, a.max_frequency) {
        (Some(m), Some(k)) => (m, k),
        (Some(m), None) => (m, m.saturating_sub(2) / 2),
        (None, Some(k)) => (2 * k + 2, k),
        (None, None) => return Err(CliError::Usage("analyze needs --M or --max-frequency".into())),
    };
    let table = formats::read_samples(open(&a.input)?)?;
    let samples = GridSamples::from_table(&table, per_axis)?;
    let symmetry = a.symmetry.get();
    let k = max_freq as i64;
    let spectrum = dominant_integer_weights(samples.dim(), -k, k, symmetry);
    let coeffs = fourier_series::analyze(&samples, symmetry, &spectrum, &samples.grid)?;
    let records = formats::records_from_map(&coeffs);
    with_output(a.output.as_deref(), out, |w| formats::write_coefficients(w, &records))?;
    Ok(0)
}

fn cmd_synthesize<O: Write>(a: SynthesizeArgs, out: &mut O) -> Result<u8, CliError> {
    let records = formats::read_coefficients(open(&a.input)?)?;
    let coeffs = formats::map_from_records(&records, a.symmetry.get())?;
    if let Some(x) = a.x {
        let z = fourier_series::synthesize(&coeffs, &x)?;
        write_value(out, z, a.json)?;
        return Ok(0);
    }
    let per_axis = a
        .m
        .ok_or_else(|| CliError::Usage("synthesize needs --x or --M".into()))?;
    let dim = coeffs
        .dim()
        .ok_or_else(|| CliError::Format("coefficient file is empty".into()))?;
    let grid = TorusGrid::new(per_axis, dim)?;
    let points: Vec<Vec<f64>> = grid.nodes().collect();
    let values = points
        .iter()
        .map(|x| fourier_series::synthesize(&coeffs, x))
        .collect::<Result<Vec<_>, _>>()?;
    let table = SampleTable { points, values };
    with_output(a.output.as_deref(), out, |w| formats::write_samples(w, &table))?;
    Ok(0)
}

fn cmd_dft<O: Write>(a: DftArgs, out: &mut O) -> Result<u8, CliError> {
    let t = DiscreteTransform::new(a.big_n, a.n, a.symmetry.get())?;
    if a.direction.forward {
        let table = formats::read_samples(open(&a.input)?)?;
        let grid = t.grid();
        let mut values: Vec<Option<C64>> = vec![None; grid.len()];
        for (p, v) in table.points.iter().zip(&table.values) {
            let k = formats::numerators(p)?;
            let pos = grid
                .position(&k)
                .ok_or_else(|| CliError::Format(format!("{k:?} is not a point of the ordered grid")))?;
            if values[pos].replace(*v).is_some() {
                return Err(CliError::Format(format!("grid point {k:?} appears twice")));
            }
        }
        let values = values
            .into_iter()
            .zip(grid.numerators())
            .map(|(v, k)| v.ok_or_else(|| CliError::Format(format!("missing sample at {k:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let coeffs = t.forward(&values)?;
        let records: Vec<CoefficientRecord> = formats::records_from_discrete(&coeffs);
        with_output(a.output.as_deref(), out, |w| formats::write_coefficients(w, &records))?;
    } else {
        let records = formats::read_coefficients(open(&a.input)?)?;
        let coeffs = formats::discrete_from_records(&records, t.spectrum())?;
        let values = t.inverse(&coeffs)?;
        let points = t
            .grid()
            .numerators()
            .iter()
            .map(|k| k.iter().map(|&v| v as f64).collect())
            .collect();
        let table = SampleTable { points, values };
        with_output(a.output.as_deref(), out, |w| formats::write_samples(w, &table))?;
    }
    Ok(0)
}

fn cmd_verify<O: Write>(a: VerifyArgs, out: &mut O) -> Result<u8, CliError> {
    let opts = verify::VerifyOptions {
        symmetry: a.symmetry.get(),
        big_n: a.big_n,
        n: a.n,
        points: a.m,
        half_width: a.l,
        seed: a.seed,
        tolerance: a.tol,
    };
    let report = verify::run_suite(a.suite.into(), &opts)?;
    report.write(out, a.json)?;
    Ok(if report.passed { 0 } else { 1 })
}
