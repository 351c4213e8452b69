//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::hint::black_box;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symxform_core::diffops::{apply_sigma_k, sigma_k_eigenvalue, StencilConfig};
use symxform_core::discrete_ft::DiscreteTransform;
use symxform_core::expfun::{self, eval, eval_special, rho, rho_prime, EvalMethod, ExpFunction, SpecialKind};
use symxform_core::fourier_series::{dominant_integer_weights, inner_product_fundamental, FundamentalClass, TorusGrid};
use symxform_core::hermite::{
    calibrate_phase, eigen_check, phase, transform_hermite_analytic, transform_numeric, HermiteGaussian, HermiteIndex,
    TruncationBox,
};
use symxform_core::linalg::ComplexMatrix;
use symxform_core::symgroup::{stabilizer_order_int, Permutation};
use symxform_core::{Symmetry, C64};

const SEED: u64 = 0x5eed_2024;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: String) -> Self {
        Outcome { pass, detail }
    }
}

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(stream);
    r
}

fn uniform_vec(r: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| r.gen_range(lo..hi)).collect()
}

fn rel_err(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

fn scaled_err(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

fn oracle_equivalence() -> Outcome {
    let mut r = rng(1);
    let start = Instant::now();
    let mut worst = 0.0f64;
    for n in 2..=7 {
        for _ in 0..100 {
            let lambda = uniform_vec(&mut r, n, -3.0, 3.0);
            let x = uniform_vec(&mut r, n, 0.0, 1.0);
            for symmetry in [Symmetry::Anti, Symmetry::Sym] {
                let fast = eval(symmetry, &lambda, &x, EvalMethod::Fast).unwrap();
                let naive = eval(symmetry, &lambda, &x, EvalMethod::NaiveSum).unwrap();
                worst = worst.max(rel_err(fast, naive));
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        worst <= 1e-10 && elapsed < Duration::from_secs(5),
        format!("max rel err {worst:.2e} (tol 1e-10), {:.2}s (limit 5s)", elapsed.as_secs_f64()),
    )
}

fn diagonal(values: Vec<f64>) -> ComplexMatrix {
    let n = values.len();
    ComplexMatrix::from_fn(n, n, |i, j| if i == j { C64::new(values[i], 0.0) } else { C64::new(0.0, 0.0) })
}

fn antisymmetric_gram() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut largest = 0;
    for (big_n, n) in [(4, 2), (5, 2), (5, 3), (8, 3)] {
        let t = DiscreteTransform::new(big_n, n, Symmetry::Anti).unwrap();
        let g = t.gram();
        largest = largest.max(g.rows());
        worst = worst.max(g.max_abs_diff(&ComplexMatrix::identity(g.rows())));
    }
    let elapsed = start.elapsed();
    Outcome::new(
        worst <= 1e-12 && elapsed < Duration::from_secs(2),
        format!(
            "max |G − I| {worst:.2e} (tol 1e-12), largest {largest}×{largest}, {:.3}s (limit 2s)",
            elapsed.as_secs_f64()
        ),
    )
}

fn symmetric_gram() -> Outcome {
    let mut worst = 0.0f64;
    for (big_n, n) in [(3, 2), (4, 2), (4, 3)] {
        let t = DiscreteTransform::new(big_n, n, Symmetry::Sym).unwrap();
        let expected = diagonal(
            t.spectrum()
                .weights()
                .iter()
                .map(|m| stabilizer_order_int(m) as f64)
                .collect(),
        );
        worst = worst.max(t.gram().max_abs_diff(&expected));
    }
    Outcome::new(worst <= 1e-12, format!("max |G − diag(|S_m|)| {worst:.2e} (tol 1e-12)"))
}

fn discrete_round_trips() -> Outcome {
    let mut r = rng(4);
    let mut worst = 0.0f64;
    let cases = [
        (Symmetry::Anti, 4, 2),
        (Symmetry::Anti, 5, 2),
        (Symmetry::Anti, 5, 3),
        (Symmetry::Anti, 8, 3),
        (Symmetry::Sym, 3, 2),
        (Symmetry::Sym, 4, 2),
        (Symmetry::Sym, 4, 3),
    ];
    for (symmetry, big_n, n) in cases {
        let t = DiscreteTransform::new(big_n, n, symmetry).unwrap();
        for _ in 0..20 {
            let f: Vec<C64> = (0..t.grid().len())
                .map(|_| C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)))
                .collect();
            let back = t.inverse(&t.forward(&f).unwrap()).unwrap();
            for (a, b) in f.iter().zip(&back) {
                worst = worst.max((a - b).norm());
            }
        }
    }
    Outcome::new(worst <= 1e-10, format!("max round-trip err {worst:.2e} over 140 vectors (tol 1e-10)"))
}

fn continuous_orthogonality() -> Outcome {
    let mut worst_anti = 0.0f64;
    let mut worst_sym = 0.0f64;
    let mut worst_mixed = 0.0f64;
    let mut pairs = 0;
    for n in 2..=3 {
        let grid = TorusGrid::new(8, n).unwrap();
        let anti = dominant_integer_weights(n, 0, 3, Symmetry::Anti);
        let sym = dominant_integer_weights(n, 0, 3, Symmetry::Sym);
        for (weights, symmetry) in [(&anti, Symmetry::Anti), (&sym, Symmetry::Sym)] {
            let class = if symmetry == Symmetry::Anti { FundamentalClass::Anti } else { FundamentalClass::Sym };
            for m in weights.iter() {
                for mp in weights.iter() {
                    let f = ExpFunction::from_integers(symmetry, m);
                    let g = ExpFunction::from_integers(symmetry, mp);
                    let v = inner_product_fundamental(&f, &g, &grid, class).unwrap();
                    let expected = match (symmetry, m == mp) {
                        (_, false) => 0.0,
                        (Symmetry::Anti, true) => 1.0,
                        (Symmetry::Sym, true) => stabilizer_order_int(m) as f64,
                    };
                    let err = (v - C64::new(expected, 0.0)).norm();
                    match symmetry {
                        Symmetry::Anti => worst_anti = worst_anti.max(err),
                        Symmetry::Sym => worst_sym = worst_sym.max(err),
                    }
                    pairs += 1;
                }
            }
        }
        for m in &sym {
            for mp in &anti {
                let f = ExpFunction::from_integers(Symmetry::Sym, m);
                let g = ExpFunction::from_integers(Symmetry::Anti, mp);
                let v = inner_product_fundamental(&f, &g, &grid, FundamentalClass::Mixed).unwrap();
                worst_mixed = worst_mixed.max(v.norm());
                pairs += 1;
            }
        }
    }
    let worst = worst_anti.max(worst_sym).max(worst_mixed);
    Outcome::new(
        worst <= 1e-12,
        format!("{pairs} pairs; anti {worst_anti:.2e}, sym {worst_sym:.2e}, mixed {worst_mixed:.2e} (tol 1e-12)"),
    )
}

fn special_cases() -> Outcome {
    let mut r = rng(6);
    let mut parts = Vec::new();
    let mut pass = true;
    for (kind, label) in [
        (SpecialKind::RhoMinus, "sine"),
        (SpecialKind::RhoPlus, "cosine"),
        (SpecialKind::RhoPrime, "vandermonde"),
    ] {
        let mut failing = Vec::new();
        let mut worst = 0.0f64;
        for n in 2..=5 {
            let mut worst_n = 0.0f64;
            for _ in 0..50 {
                let x = uniform_vec(&mut r, n, 0.0, 1.0);
                let product = eval_special(&x, kind).unwrap();
                let reference = match kind {
                    SpecialKind::RhoMinus => expfun::eval_antisym(&rho(n), &x, EvalMethod::Fast),
                    SpecialKind::RhoPlus => expfun::eval_sym(&rho(n), &x, EvalMethod::Fast),
                    SpecialKind::RhoPrime => expfun::eval_antisym(&rho_prime(n), &x, EvalMethod::Fast),
                }
                .unwrap();
                worst_n = worst_n.max(scaled_err(product, reference));
            }
            if worst_n > 1e-12 {
                failing.push(n);
            }
            worst = worst.max(worst_n);
        }
        pass &= failing.is_empty();
        if failing.is_empty() {
            parts.push(format!("{label} ok ({worst:.1e})"));
        } else {
            parts.push(format!("{label} FAILS at n={failing:?} ({worst:.1e})"));
        }
    }
    Outcome::new(pass, format!("{} (tol 1e-12)", parts.join(", ")))
}

fn differential_eigenrelations() -> Outcome {
    let mut r = rng(7);
    let mut worst_err = 0.0f64;
    let mut ratio_range = (f64::INFINITY, f64::NEG_INFINITY);
    let mut pass = true;
    for n in 2..=3 {
        for k in 1..=n {
            for symmetry in [Symmetry::Anti, Symmetry::Sym] {
                for _ in 0..4 {
                    let lambda = uniform_vec(&mut r, n, -2.0, 2.0);
                    let x = uniform_vec(&mut r, n, 0.0, 1.0);
                    let f = ExpFunction::new(symmetry, lambda.clone());
                    let target = f.eval_at(&x) * sigma_k_eigenvalue(&lambda, k).unwrap();
                    let cfg = StencilConfig::default();
                    let e1 = rel_err(apply_sigma_k(&f, &x, k, cfg).unwrap(), target);
                    let e2 = rel_err(apply_sigma_k(&f, &x, k, cfg.halved()).unwrap(), target);
                    let ratio = e1 / e2;
                    worst_err = worst_err.max(e1);
                    ratio_range = (ratio_range.0.min(ratio), ratio_range.1.max(ratio));
                    pass &= e1 <= 1e-3 && (3.5..=4.5).contains(&ratio);
                }
            }
        }
    }
    Outcome::new(
        pass,
        format!(
            "max rel err {worst_err:.2e} (tol 1e-3), halving ratios in [{:.3}, {:.3}] (need [3.5, 4.5])",
            ratio_range.0, ratio_range.1
        ),
    )
}

trait EvalAt {
    fn eval_at(&self, x: &[f64]) -> C64;
}

impl EvalAt for ExpFunction {
    fn eval_at(&self, x: &[f64]) -> C64 {
        use symxform_core::diffops::ScalarField;
        self.eval(x)
    }
}

fn random_dominant(r: &mut ChaCha8Rng, n: usize, strict: bool) -> Vec<f64> {
    loop {
        let mut v = uniform_vec(r, n, -1.5, 1.5);
        v.sort_by(|a, b| b.total_cmp(a));
        if !strict || v.windows(2).all(|p| p[0] > p[1]) {
            return v;
        }
    }
}

fn hermite_eigenfunctions() -> Outcome {
    let mut r = rng(8);
    let mut pass = true;
    let mut residual = 0.0f64;
    for m in 0..4 {
        match calibrate_phase(m, TruncationBox::one_dimensional()) {
            Ok(cal) => {
                residual = residual.max(cal.residual);
                pass &= cal.residual <= 1e-8;
            }
            Err(_) => pass = false,
        }
    }
    let quartic = (0..=20).all(|k| {
        let p = phase(k);
        p * p * p * p == C64::new(1.0, 0.0)
    });
    pass &= quartic;

    let mut eigen = 0.0f64;
    let mut cross = 0.0f64;
    let bx = TruncationBox::two_dimensional();
    for symmetry in [Symmetry::Sym, Symmetry::Anti] {
        for idx in HermiteIndex::all(2, 4, symmetry) {
            let strict = symmetry == Symmetry::Anti;
            let sample: Vec<Vec<f64>> = (0..10).map(|_| random_dominant(&mut r, 2, strict)).collect();
            eigen = eigen.max(eigen_check(&idx, &sample).unwrap());

            let lambda = random_dominant(&mut r, 2, strict);
            let f = HermiteGaussian::Eigenfunction(idx.clone());
            let numeric = transform_numeric(&f, &lambda, symmetry, bx).unwrap();
            let analytic = transform_hermite_analytic(&idx, &lambda).unwrap();
            cross = cross.max((numeric - analytic).norm());
        }
    }
    pass &= eigen <= 1e-12 && cross <= 1e-6;
    Outcome::new(
        pass,
        format!(
            "phase residual {residual:.1e} (tol 1e-8), phase⁴=1 {}, eigen_check {eigen:.1e} (tol 1e-12), 2D quadrature {cross:.1e} (tol 1e-6)",
            if quartic { "exact" } else { "BROKEN" }
        ),
    )
}

fn symmetry_invariants() -> Outcome {
    let mut r = rng(9);
    let tol = 1e-10;
    let close = |a: C64, b: C64| (a - b).norm() <= tol * b.norm().max(1.0);
    let names = ["permutation", "translation", "shift", "scaling", "duality", "conjugation", "boundary"];
    let mut failures = [0usize; 7];
    let fast = EvalMethod::Fast;
    for trial in 0..1000 {
        let category = trial % 7;
        let n = r.gen_range(2..=5);
        let lambda = uniform_vec(&mut r, n, -3.0, 3.0);
        let x = uniform_vec(&mut r, n, 0.0, 1.0);
        let symmetry = if r.gen_bool(0.5) { Symmetry::Anti } else { Symmetry::Sym };
        let e = |l: &[f64], y: &[f64]| eval(symmetry, l, y, fast).unwrap();
        let ok = match category {
            0 => {
                let mut mapping: Vec<usize> = (0..n).collect();
                mapping.shuffle(&mut r);
                let w = Permutation::from_mapping(mapping).unwrap();
                let in_x = close(e(&lambda, &w.apply(&x)), e(&lambda, &x) * symmetry.character(w.sign()));
                let in_lambda = close(e(&w.apply(&lambda), &x), e(&lambda, &x) * symmetry.character(w.sign()));
                in_x && in_lambda
            }
            1 => {
                let a: f64 = r.gen_range(-1.0..1.0);
                let shifted: Vec<f64> = x.iter().map(|v| v + a).collect();
                let total: f64 = lambda.iter().sum();
                let factor = C64::from_polar(1.0, 2.0 * std::f64::consts::PI * total * a);
                close(e(&lambda, &shifted), e(&lambda, &x) * factor)
            }
            2 => {
                let mean = x.iter().sum::<f64>() / n as f64;
                let centred: Vec<f64> = x.iter().map(|v| v - mean).collect();
                let nu: f64 = r.gen_range(-2.0..2.0);
                let moved: Vec<f64> = lambda.iter().map(|l| l + nu).collect();
                close(e(&moved, &centred), e(&lambda, &centred))
            }
            3 => {
                let c: f64 = r.gen_range(-2.0..2.0);
                let scaled_l: Vec<f64> = lambda.iter().map(|l| c * l).collect();
                let scaled_x: Vec<f64> = x.iter().map(|v| c * v).collect();
                close(e(&scaled_l, &x), e(&lambda, &scaled_x))
            }
            4 => close(e(&lambda, &x), e(&x, &lambda)),
            5 => {
                let mirrored: Vec<f64> = lambda.iter().rev().map(|l| -l).collect();
                let sign = if n % 4 <= 1 { 1.0 } else { -1.0 };
                let lhs = expfun::eval_antisym(&lambda, &x, fast).unwrap();
                let rhs = expfun::eval_antisym(&mirrored, &x, fast).unwrap().conj() * sign;
                close(lhs, rhs)
            }
            _ => {
                let i = r.gen_range(0..n);
                let j = (i + r.gen_range(1..n)) % n;
                let mut wall = x.clone();
                wall[j] = wall[i];
                expfun::eval_antisym(&lambda, &wall, fast).unwrap().norm() <= tol
            }
        };
        if !ok {
            failures[category] += 1;
        }
    }
    let total: usize = failures.iter().sum();
    let detail = if total == 0 {
        format!("1000 assertions over {} families, 0 failures (tol 1e-10)", names.len())
    } else {
        let listed: Vec<String> = names
            .iter()
            .zip(failures)
            .filter(|(_, c)| *c > 0)
            .map(|(name, c)| format!("{name}:{c}"))
            .collect();
        format!("{total} failures ({}) (tol 1e-10)", listed.join(", "))
    };
    Outcome::new(total == 0, detail)
}

fn median(mut samples: Vec<Duration>) -> Duration {
    samples.sort();
    samples[samples.len() / 2]
}

fn performance() -> Outcome {
    let mut r = rng(10);
    let inputs: Vec<(Vec<f64>, Vec<f64>)> = (0..100)
        .map(|_| (uniform_vec(&mut r, 8, -3.0, 3.0), uniform_vec(&mut r, 8, 0.0, 1.0)))
        .collect();
    let time = |method: EvalMethod| {
        let samples: Vec<Duration> = inputs
            .iter()
            .map(|(l, x)| {
                let start = Instant::now();
                black_box(expfun::eval_antisym(black_box(l), black_box(x), method).unwrap());
                start.elapsed()
            })
            .collect();
        median(samples)
    };
    let naive = time(EvalMethod::NaiveSum);
    let fast = time(EvalMethod::Fast);
    let ratio = naive.as_secs_f64() / fast.as_secs_f64().max(1e-12);
    Outcome::new(
        ratio >= 100.0,
        format!("n=8 median naive {naive:?}, fast {fast:?}, speedup {ratio:.0}× (need ≥ 100×)"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("oracle equivalence", oracle_equivalence),
        ("discrete antisymmetric orthogonality", antisymmetric_gram),
        ("discrete symmetric orthogonality", symmetric_gram),
        ("AMDFT/SMDFT round trips", discrete_round_trips),
        ("continuous orthogonality", continuous_orthogonality),
        ("special cases", special_cases),
        ("differential eigenrelations", differential_eigenrelations),
        ("Hermite phase and eigenfunctions", hermite_eigenfunctions),
        ("symmetry invariants", symmetry_invariants),
        ("performance", performance),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict} {name}: {}", i + 1, outcome.detail);
        if !outcome.pass {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", criteria.len());
    } else {
        println!("acceptance: {} of {} criteria fail: {failed:?}", failed.len(), criteria.len());
        std::process::exit(1);
    }
}
