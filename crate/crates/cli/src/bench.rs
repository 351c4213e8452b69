//! Wall-time ratios of the naive permutation sum against the fast routes.

use std::hint::black_box;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use symxform_core::expfun::{eval, EvalMethod};
use symxform_core::Symmetry;

use crate::CliError;

pub const CASES: [(Symmetry, usize); 5] = [
    (Symmetry::Anti, 6),
    (Symmetry::Anti, 8),
    (Symmetry::Sym, 6),
    (Symmetry::Sym, 8),
    (Symmetry::Sym, 10),
];

#[derive(Debug, Clone, Serialize)]
pub struct BenchCase {
    pub function: &'static str,
    pub n: usize,
    pub naive_samples: usize,
    pub fast_samples: usize,
    pub naive_median_s: f64,
    pub fast_median_s: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchTable {
    pub cases: Vec<BenchCase>,
}

fn median(mut t: Vec<f64>) -> f64 {
    t.sort_by(f64::total_cmp);
    let k = t.len();
    if k % 2 == 1 {
        t[k / 2]
    } else {
        0.5 * (t[k / 2 - 1] + t[k / 2])
    }
}

fn time(samples: usize, mut f: impl FnMut() -> Result<(), CliError>) -> Result<f64, CliError> {
    let mut t = Vec::with_capacity(samples);
    for _ in 0..samples {
        let start = Instant::now();
        f()?;
        t.push(start.elapsed().as_secs_f64());
    }
    Ok(median(t))
}

/// The naive sum at `n = 10` takes seconds, so its repetitions are capped.
fn naive_budget(n: usize, samples: usize) -> usize {
    let cap = match n {
        0..=6 => samples,
        7..=8 => 5,
        _ => 1,
    };
    samples.clamp(1, cap.max(1))
}

pub fn run(samples: usize) -> Result<BenchTable, CliError> {
    if samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut cases = Vec::new();
    for (symmetry, n) in CASES {
        let lambda: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
        let naive_samples = naive_budget(n, samples);
        let naive = time(naive_samples, || {
            black_box(eval(symmetry, black_box(&lambda), black_box(&x), EvalMethod::NaiveSum)?);
            Ok(())
        })?;
        let fast = time(samples, || {
            black_box(eval(symmetry, black_box(&lambda), black_box(&x), EvalMethod::Fast)?);
            Ok(())
        })?;
        cases.push(BenchCase {
            function: match symmetry {
                Symmetry::Anti => "eval_antisym",
                Symmetry::Sym => "eval_sym",
            },
            n,
            naive_samples,
            fast_samples: samples,
            naive_median_s: naive,
            fast_median_s: fast,
            ratio: naive / fast,
        });
    }
    Ok(BenchTable { cases })
}
