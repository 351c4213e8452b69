//! Verification suites behind `symxform verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use symxform_core::diffops::{apply_sigma_k, sigma_k_eigenvalue, ScalarField, StencilConfig};
use symxform_core::discrete_ft::DiscreteTransform;
use symxform_core::expfun::{eval, eval_special, rho, rho_prime, EvalMethod, ExpFunction, SpecialKind};
use symxform_core::hermite::{
    calibrate_phase, eigen_check, hermite_eval, HermiteIndex, TruncationBox, CALIBRATION_LAMBDA,
};
use symxform_core::symgroup::stabilizer_order_int;
use symxform_core::{Symmetry, C64};

use crate::report::{Check, Report};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Orthogonality,
    Laplace,
    Hermite,
    Roundtrip,
    SpecialCases,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Orthogonality => "orthogonality",
            Suite::Laplace => "laplace",
            Suite::Hermite => "hermite",
            Suite::Roundtrip => "roundtrip",
            Suite::SpecialCases => "special-cases",
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub symmetry: Option<Symmetry>,
    pub big_n: u32,
    pub n: Option<usize>,
    pub points: Option<usize>,
    pub half_width: f64,
    pub seed: u64,
    pub tolerance: Option<f64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            symmetry: None,
            big_n: 4,
            n: None,
            points: None,
            half_width: TruncationBox::DEFAULT_HALF_WIDTH,
            seed: 0,
            tolerance: None,
        }
    }
}

impl VerifyOptions {
    fn classes(&self) -> Vec<Symmetry> {
        match self.symmetry {
            Some(s) => vec![s],
            None => vec![Symmetry::Anti, Symmetry::Sym],
        }
    }

    fn tol(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(stream);
        r
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<Report, CliError> {
    let checks = match suite {
        Suite::Orthogonality => orthogonality(opts)?,
        Suite::Laplace => laplace(opts)?,
        Suite::Hermite => hermite(opts)?,
        Suite::Roundtrip => roundtrip(opts)?,
        Suite::SpecialCases => special_cases(opts)?,
    };
    Ok(Report::new(suite.name(), checks))
}

fn class_name(s: Symmetry) -> &'static str {
    match s {
        Symmetry::Sym => "sym",
        Symmetry::Anti => "anti",
    }
}

/// Weighted Gram matrix of the discrete basis: `I` (anti) or `diag(|S_m|)`.
fn orthogonality(opts: &VerifyOptions) -> Result<Vec<Check>, CliError> {
    let n = opts.n.unwrap_or(2);
    let symmetry = opts.symmetry.unwrap_or(Symmetry::Anti);
    let tol = opts.tol(1e-12);
    let t = DiscreteTransform::new(opts.big_n, n, symmetry)?;
    let gram = t.gram();
    let weights = t.spectrum().weights();
    let mut checks = Vec::with_capacity(weights.len() * weights.len());
    for (i, a) in weights.iter().enumerate() {
        for (j, b) in weights.iter().enumerate() {
            let expected = match (i == j, symmetry) {
                (false, _) => 0.0,
                (true, Symmetry::Anti) => 1.0,
                (true, Symmetry::Sym) => stabilizer_order_int(a) as f64,
            };
            checks.push(Check::absolute(
                format!("{} gram N={} {a:?}·{b:?}", class_name(symmetry), opts.big_n),
                expected,
                gram[(i, j)],
                tol,
            ));
        }
    }
    Ok(checks)
}

fn laplace(opts: &VerifyOptions) -> Result<Vec<Check>, CliError> {
    let n = opts.n.unwrap_or(2);
    let tol = opts.tol(1e-3);
    let mut rng = opts.rng(2);
    let mut cases = Vec::new();
    for symmetry in opts.classes() {
        for k in 1..=n {
            let lambda: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
            cases.push((symmetry, k, lambda, x));
        }
    }
    let per_case: Vec<Result<Vec<Check>, CliError>> = cases
        .into_par_iter()
        .map(|(symmetry, k, lambda, x)| {
            let f = ExpFunction::new(symmetry, lambda.clone());
            let target = f.eval(&x) * sigma_k_eigenvalue(&lambda, k)?;
            let cfg = StencilConfig::default();
            let coarse = apply_sigma_k(&f, &x, k, cfg)?;
            let fine = apply_sigma_k(&f, &x, k, cfg.halved())?;
            let ratio = (coarse - target).norm() / (fine - target).norm();
            let label = format!("{} n={n} k={k} λ={lambda:.3?}", class_name(symmetry));
            Ok(vec![
                Check::relative(format!("{label} eigenvalue"), target, coarse, tol),
                Check::absolute(format!("{label} halving ratio"), 4.0, ratio, 0.5),
            ])
        })
        .collect();
    flatten(per_case)
}

fn hermite(opts: &VerifyOptions) -> Result<Vec<Check>, CliError> {
    let n = opts.n.unwrap_or(2);
    let points = opts.points.unwrap_or(TruncationBox::DEFAULT_POINTS_1D);
    let bx = TruncationBox::new(opts.half_width, points)?;
    let mut checks = Vec::new();
    let s = (2.0 * std::f64::consts::PI).sqrt();
    let lambda = CALIBRATION_LAMBDA;
    for m in 0..4 {
        let cal = calibrate_phase(m, bx)?;
        let reference = cal.phase * ((-std::f64::consts::PI * lambda * lambda).exp() * hermite_eval(m, s * lambda)?);
        let quadrature = reference + C64::new(cal.residual, 0.0);
        checks.push(Check::absolute(
            format!("phase({m}) = {} by quadrature", crate::report::Value::from(cal.phase)),
            reference,
            quadrature,
            opts.tol(1e-8),
        ));
    }
    let mut rng = opts.rng(3);
    let mut jobs = Vec::new();
    for symmetry in opts.classes() {
        for idx in HermiteIndex::all(n, 4, symmetry) {
            let sample: Vec<Vec<f64>> = (0..10)
                .map(|_| loop {
                    let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.5..1.5)).collect();
                    v.sort_by(|a, b| b.total_cmp(a));
                    if symmetry == Symmetry::Sym || v.windows(2).all(|p| p[0] > p[1]) {
                        break v;
                    }
                })
                .collect();
            jobs.push((idx, sample));
        }
    }
    let tol = opts.tol(1e-12);
    let eigen: Vec<Result<Vec<Check>, CliError>> = jobs
        .into_par_iter()
        .map(|(idx, sample)| {
            let dev = eigen_check(&idx, &sample)?;
            Ok(vec![Check::absolute(
                format!("{} eigenfunction m={:?}", class_name(idx.symmetry()), idx.entries()),
                0.0,
                dev,
                tol,
            )])
        })
        .collect();
    checks.extend(flatten(eigen)?);
    Ok(checks)
}

fn roundtrip(opts: &VerifyOptions) -> Result<Vec<Check>, CliError> {
    let n = opts.n.unwrap_or(2);
    let tol = opts.tol(1e-10);
    let mut checks = Vec::new();
    for symmetry in opts.classes() {
        let t = DiscreteTransform::new(opts.big_n, n, symmetry)?;
        let results: Vec<Result<Check, CliError>> = (0..20u64)
            .into_par_iter()
            .map(|trial| {
                let mut rng = opts.rng(100 + trial);
                let f: Vec<C64> = (0..t.grid().len())
                    .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect();
                let back = t.inverse(&t.forward(&f)?)?;
                let err = f.iter().zip(&back).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
                Ok(Check::absolute(
                    format!("{} N={} n={n} vector {trial}", class_name(symmetry), opts.big_n),
                    0.0,
                    err,
                    tol,
                ))
            })
            .collect();
        for r in results {
            checks.push(r?);
        }
    }
    Ok(checks)
}

fn special_cases(opts: &VerifyOptions) -> Result<Vec<Check>, CliError> {
    let dims: Vec<usize> = match opts.n {
        Some(n) => vec![n],
        None => (2..=5).collect(),
    };
    let tol = opts.tol(1e-12);
    let mut rng = opts.rng(5);
    let mut checks = Vec::new();
    for n in dims {
        let points: Vec<Vec<f64>> = (0..50).map(|_| (0..n).map(|_| rng.gen_range(0.0..1.0)).collect()).collect();
        for (kind, label) in [
            (SpecialKind::RhoMinus, "sine product"),
            (SpecialKind::RhoPlus, "cosine product"),
            (SpecialKind::RhoPrime, "vandermonde product"),
        ] {
            let (symmetry, weight) = match kind {
                SpecialKind::RhoMinus => (Symmetry::Anti, rho(n)),
                SpecialKind::RhoPlus => (Symmetry::Sym, rho(n)),
                SpecialKind::RhoPrime => (Symmetry::Anti, rho_prime(n)),
            };
            // report the worst of the 50 points
            let mut worst: Option<Check> = None;
            for x in &points {
                let reference = eval(symmetry, &weight, x, EvalMethod::Fast)?;
                let product = eval_special(x, kind)?;
                let check = Check::relative(format!("{label} n={n}"), reference, product, tol);
                if worst.as_ref().is_none_or(|w| check.deviation > w.deviation) {
                    worst = Some(check);
                }
            }
            checks.extend(worst);
        }
    }
    Ok(checks)
}

fn flatten(parts: Vec<Result<Vec<Check>, CliError>>) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}
