//! Hermite polynomials, their (anti)symmetrized determinant forms and the
//! continuous (anti)symmetric Fourier transforms of Hermite–Gaussian
//! functions.
//!
//! The transform kernel is `e^{+2πi⟨λ,x⟩}`. Under it the one-dimensional
//! relation reads
//!
//! ```text
//! ∫ e^{2πiλx} e^{−πx²} H_m(√(2π)x) dx = phase(m) e^{−πλ²} H_m(√(2π)λ)
//! ```
//!
//! and `phase` is not taken on trust: [`calibrate_phase`] fixes it by
//! trapezoid quadrature, and [`phase`] caches the result. With this kernel the
//! calibrated value is `phase(m) = i^m`.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::sync::atomic::{AtomicU8, Ordering};

use crate::diffops::ScalarField;
use crate::expfun::{exponential_matrix, for_each_permutation};
use crate::linalg::{det_lu, permanent_ryser, ComplexMatrix};
use crate::symgroup::{factorial, Dominance, MAX_ENUMERATION};
use crate::{cis_turns, Error, Result, Symmetry, C64};

/// Largest degree accepted by [`hermite_eval`].
pub const MAX_DEGREE: usize = 60;

/// Boundary magnitude above which a truncated integral is rejected.
pub const TRUNCATION_THRESHOLD: f64 = 1e-14;

fn sqrt_2pi() -> f64 {
    libm::sqrt(2.0 * PI)
}

fn hermite_unchecked(m: usize, y: f64) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, 2.0 * y);
    for k in 1..m {
        let next = 2.0 * y * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn check_degree(m: usize) -> Result<()> {
    if m > MAX_DEGREE {
        Err(Error::Range {
            degree: m,
            max: MAX_DEGREE,
        })
    } else {
        Ok(())
    }
}

/// Physicists' Hermite polynomial `H_m(y)` by the three-term recurrence.
pub fn hermite_eval(m: usize, y: f64) -> Result<f64> {
    check_degree(m)?;
    Ok(hermite_unchecked(m, y))
}

/// Index `m` of a symmetric (`m_1 ≥ … ≥ m_n ≥ 0`) or antisymmetric
/// (`m_1 > … > m_n ≥ 0`) Hermite–Gaussian eigenfunction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HermiteIndex {
    m: Vec<usize>,
    symmetry: Symmetry,
}

impl HermiteIndex {
    pub fn new(m: Vec<usize>, symmetry: Symmetry) -> Result<Self> {
        if m.is_empty() {
            return Err(Error::Invalid("Hermite index must be non-empty"));
        }
        if let Some(&top) = m.iter().max() {
            check_degree(top)?;
        }
        let ok = match symmetry {
            Symmetry::Sym => m.windows(2).all(|p| p[0] >= p[1]),
            Symmetry::Anti => m.windows(2).all(|p| p[0] > p[1]),
        };
        if !ok {
            return Err(Error::Dominance);
        }
        Ok(HermiteIndex { m, symmetry })
    }

    pub fn entries(&self) -> &[usize] {
        &self.m
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    /// `|m| = Σ m_i`.
    pub fn degree(&self) -> usize {
        self.m.iter().sum()
    }

    /// All indices of the given class with `n` entries bounded by `max_entry`.
    pub fn all(n: usize, max_entry: usize, symmetry: Symmetry) -> Vec<HermiteIndex> {
        crate::fourier_series::dominant_integer_weights(n, 0, max_entry as i64, symmetry)
            .into_iter()
            .map(|m| HermiteIndex {
                m: m.into_iter().map(|v| v as usize).collect(),
                symmetry,
            })
            .collect()
    }
}

/// `det±(H_{m_i}(y_j))` for an arbitrary degree tuple.
pub fn hermite_det(m: &[usize], y: &[f64], symmetry: Symmetry) -> Result<f64> {
    if m.len() != y.len() {
        return Err(Error::Shape {
            expected: m.len(),
            found: y.len(),
        });
    }
    if let Some(&top) = m.iter().max() {
        check_degree(top)?;
    }
    let a = ComplexMatrix::from_fn(m.len(), m.len(), |i, j| {
        C64::new(hermite_unchecked(m[i], y[j]), 0.0)
    });
    let v = match symmetry {
        Symmetry::Anti => det_lu(&a)?,
        Symmetry::Sym => permanent_ryser(&a)?,
    };
    Ok(v.re)
}

/// `H^sym_m(λ) = det⁺(H_{m_i}(λ_j))` or `H^anti_m(λ) = det(H_{m_i}(λ_j))`.
pub fn hermite_det_eval(idx: &HermiteIndex, lambda: &[f64]) -> Result<f64> {
    hermite_det(&idx.m, lambda, idx.symmetry)
}

/// Nodes and weights of the `k`-point Gauss–Hermite rule for `∫ g(y) e^{−y²} dy`.
pub fn gauss_hermite(k: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if k == 0 || k > 200 {
        return Err(Error::SizeLimit {
            what: "Gauss-Hermite order",
            size: k,
            max: 200,
        });
    }
    let pim4 = libm::pow(PI, -0.25);
    let mut x = alloc::vec![0.0; k];
    let mut w = alloc::vec![0.0; k];
    let kf = k as f64;
    let mut z = 0.0;
    for i in 0..k.div_ceil(2) {
        z = match i {
            0 => libm::sqrt(2.0 * kf + 1.0) - 1.85575 * libm::pow(2.0 * kf + 1.0, -1.0 / 6.0),
            1 => z - 1.14 * libm::pow(kf, 0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..100 {
            // orthonormal recurrence
            let (mut p1, mut p2) = (pim4, 0.0);
            for j in 0..k {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * libm::sqrt(2.0 / (jf + 1.0)) * p2 - libm::sqrt(jf / (jf + 1.0)) * p3;
            }
            pp = libm::sqrt(2.0 * kf) * p2;
            let step = p1 / pp;
            z -= step;
            if step.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        x[i] = z;
        x[k - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[k - 1 - i] = w[i];
    }
    if k % 2 == 1 {
        x[k / 2] = 0.0;
    }
    Ok((x, w))
}

/// `⟨φ_a, φ_b⟩` over `ℝⁿ` for the Hermite–Gaussian products
/// `φ_m(x) = e^{−π|x|²} Π_j H_{m_j}(√(2π) x_j)`, by a tensor Gauss–Hermite
/// rule with `order` nodes per axis.
pub fn hermite_product_inner(a: &[usize], b: &[usize], order: usize) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Shape {
            expected: a.len(),
            found: b.len(),
        });
    }
    let (nodes, weights) = gauss_hermite(order)?;
    let mut total = 1.0;
    for (&ma, &mb) in a.iter().zip(b) {
        check_degree(ma.max(mb))?;
        // substitute y = √(2π) x
        let axis: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(&y, &w)| w * hermite_unchecked(ma, y) * hermite_unchecked(mb, y))
            .sum();
        total *= axis / sqrt_2pi();
    }
    Ok(total)
}

/// Symmetric tensor-product trapezoid box `[−L, L]ⁿ` with `M` nodes per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationBox {
    half_width: f64,
    points: usize,
}

impl TruncationBox {
    pub const DEFAULT_HALF_WIDTH: f64 = 6.0;
    pub const DEFAULT_POINTS_1D: usize = 2000;
    pub const DEFAULT_POINTS_2D: usize = 400;

    pub fn new(half_width: f64, points: usize) -> Result<Self> {
        if !(half_width > 0.0 && half_width.is_finite()) || points < 2 {
            return Err(Error::Invalid("truncation box needs L > 0 and M ≥ 2"));
        }
        Ok(TruncationBox { half_width, points })
    }

    pub fn one_dimensional() -> Self {
        TruncationBox {
            half_width: Self::DEFAULT_HALF_WIDTH,
            points: Self::DEFAULT_POINTS_1D,
        }
    }

    pub fn two_dimensional() -> Self {
        TruncationBox {
            half_width: Self::DEFAULT_HALF_WIDTH,
            points: Self::DEFAULT_POINTS_2D,
        }
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn points(&self) -> usize {
        self.points
    }

    fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.points - 1) as f64
    }

    fn node(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.spacing()
    }

    fn weight(&self, i: usize) -> f64 {
        if i == 0 || i == self.points - 1 {
            0.5 * self.spacing()
        } else {
            self.spacing()
        }
    }
}

/// `∫ e^{2πiλx} e^{−πx²} H_m(√(2π)x) dx` by the trapezoid rule on the box.
pub fn transform_1d_numeric(m: usize, lambda: f64, bx: TruncationBox) -> Result<C64> {
    check_degree(m)?;
    let s = sqrt_2pi();
    let mut total = C64::new(0.0, 0.0);
    for i in 0..bx.points {
        let x = bx.node(i);
        let f = libm::exp(-PI * x * x) * hermite_unchecked(m, s * x);
        total += cis_turns(lambda * x) * (f * bx.weight(i));
    }
    Ok(total)
}

/// Outcome of fixing `phase(m)` by quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseCalibration {
    pub degree: usize,
    pub phase: C64,
    /// `|quadrature − phase · e^{−πλ²} H_m(√(2π)λ)|`.
    pub residual: f64,
}

/// Probe frequency of the phase calibration.
pub const CALIBRATION_LAMBDA: f64 = 0.3;

const FOURTH_ROOTS: [(f64, f64); 4] = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)];

fn root(k: usize) -> C64 {
    let (re, im) = FOURTH_ROOTS[k % 4];
    C64::new(re, im)
}

/// Fixes `phase(m)` as the fourth root of unity closest to the ratio of the
/// quadrature value to `e^{−πλ²} H_m(√(2π)λ)` at `λ = 0.3`.
pub fn calibrate_phase(m: usize, bx: TruncationBox) -> Result<PhaseCalibration> {
    let lambda = CALIBRATION_LAMBDA;
    let numeric = transform_1d_numeric(m, lambda, bx)?;
    let reference = libm::exp(-PI * lambda * lambda) * hermite_unchecked(m, sqrt_2pi() * lambda);
    let (best, residual) = (0..4)
        .map(|k| (k, (numeric - root(k) * reference).norm()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("four candidates");
    if residual > 1e-6 * reference.abs().max(1.0) {
        return Err(Error::Invalid("quadrature is not a fourth root of unity times the reference"));
    }
    Ok(PhaseCalibration {
        degree: m,
        phase: root(best),
        residual,
    })
}

// 0 = not yet calibrated, otherwise 1 + exponent of i
static PHASE_CACHE: [AtomicU8; 4] = [AtomicU8::new(0), AtomicU8::new(0), AtomicU8::new(0), AtomicU8::new(0)];

/// The eigenvalue `phase(k)` of the one-dimensional transform on the `k`-th
/// Hermite–Gaussian, calibrated on first use and periodic with period 4.
pub fn phase(k: usize) -> C64 {
    let slot = &PHASE_CACHE[k % 4];
    let code = slot.load(Ordering::Acquire);
    if code != 0 {
        return root(usize::from(code - 1));
    }
    let cal = calibrate_phase(k % 4, TruncationBox::one_dimensional())
        .expect("default box calibrates every degree below 4");
    let exponent = (0..4).find(|&e| root(e) == cal.phase).unwrap_or(0);
    slot.store(exponent as u8 + 1, Ordering::Release);
    root(exponent)
}

/// Hermite–Gaussian functions on `ℝⁿ` as [`ScalarField`]s.
#[derive(Debug, Clone, PartialEq)]
pub enum HermiteGaussian {
    /// `e^{−π|x|²} Π_j H_{m_j}(√(2π) x_j)`.
    Product(Vec<usize>),
    /// `e^{−π|x|²} H^{sym/anti}_m(√(2π) x)`.
    Eigenfunction(HermiteIndex),
}

impl HermiteGaussian {
    pub fn product(m: Vec<usize>) -> Result<Self> {
        if let Some(&top) = m.iter().max() {
            check_degree(top)?;
        }
        Ok(HermiteGaussian::Product(m))
    }
}

impl ScalarField for HermiteGaussian {
    fn dim(&self) -> usize {
        match self {
            HermiteGaussian::Product(m) => m.len(),
            HermiteGaussian::Eigenfunction(idx) => idx.dim(),
        }
    }

    fn eval(&self, x: &[f64]) -> C64 {
        let s = sqrt_2pi();
        let gauss = libm::exp(-PI * x.iter().map(|v| v * v).sum::<f64>());
        let poly = match self {
            HermiteGaussian::Product(m) => m
                .iter()
                .zip(x)
                .map(|(&mj, &xj)| hermite_unchecked(mj, s * xj))
                .product(),
            HermiteGaussian::Eigenfunction(idx) => {
                let y: Vec<f64> = x.iter().map(|v| s * v).collect();
                hermite_det(&idx.m, &y, idx.symmetry).unwrap_or(f64::NAN)
            }
        };
        C64::new(gauss * poly, 0.0)
    }
}

/// `∫_{ℝⁿ} E±_λ(x) e^{−π|x|²} Π_j H_{m_j}(√(2π)x_j) dx` for any degree tuple,
/// by expanding `E±` over `S_n` and factorizing each term into 1D integrals.
pub fn transform_hermite_product(m: &[usize], lambda: &[f64], symmetry: Symmetry) -> Result<C64> {
    let n = m.len();
    if lambda.len() != n {
        return Err(Error::Shape {
            expected: n,
            found: lambda.len(),
        });
    }
    if n > MAX_ENUMERATION {
        return Err(Error::SizeLimit {
            what: "factorized Hermite transform",
            size: n,
            max: MAX_ENUMERATION,
        });
    }
    if let Some(&top) = m.iter().max() {
        check_degree(top)?;
    }
    let s = sqrt_2pi();
    // table[j][k] = H_{m_j}(√(2π) λ_k)
    let table: Vec<Vec<f64>> = m
        .iter()
        .map(|&mj| lambda.iter().map(|&l| hermite_unchecked(mj, s * l)).collect())
        .collect();
    let mut sum = 0.0;
    for_each_permutation(n, |w, sign| {
        let term: f64 = (0..n).map(|j| table[j][w[j]]).product();
        sum += symmetry.character(sign) * term;
    });
    let phases = m.iter().fold(C64::new(1.0, 0.0), |acc, &mj| acc * phase(mj));
    let gauss = libm::exp(-PI * lambda.iter().map(|l| l * l).sum::<f64>());
    Ok(phases * (gauss * sum))
}

/// The transform of the Hermite–Gaussian product indexed by `idx` against
/// `E±_λ`, where `±` is the class of `idx`.
pub fn transform_hermite_analytic(idx: &HermiteIndex, lambda: &[f64]) -> Result<C64> {
    transform_hermite_product(&idx.m, lambda, idx.symmetry)
}

/// `(1/|S_n|) ∫_{[−L,L]ⁿ} f(x) E±_λ(x) dx` by the tensor trapezoid rule.
/// Fails with [`Error::Truncation`] if `|f|` exceeds
/// [`TRUNCATION_THRESHOLD`] anywhere on the boundary of the box.
pub fn transform_numeric<F: ScalarField + ?Sized>(
    f: &F,
    lambda: &[f64],
    symmetry: Symmetry,
    bx: TruncationBox,
) -> Result<C64> {
    let n = f.dim();
    if lambda.len() != n {
        return Err(Error::Shape {
            expected: n,
            found: lambda.len(),
        });
    }
    let m = bx.points;
    let total_nodes = libm::pow(m as f64, n as f64);
    if total_nodes > 1e8 {
        return Err(Error::SizeLimit {
            what: "quadrature nodes",
            size: total_nodes as usize,
            max: 100_000_000,
        });
    }
    let mut idx = alloc::vec![0usize; n];
    let mut x = alloc::vec![0.0; n];
    let mut total = C64::new(0.0, 0.0);
    let mut boundary = 0.0f64;
    loop {
        let mut weight = 1.0;
        for (j, &i) in idx.iter().enumerate() {
            x[j] = bx.node(i);
            weight *= bx.weight(i);
        }
        let value = f.eval(&x);
        if idx.iter().any(|&i| i == 0 || i == m - 1) {
            boundary = boundary.max(value.norm());
        }
        let a = exponential_matrix(lambda, &x);
        let kernel = match symmetry {
            Symmetry::Anti => det_lu(&a)?,
            Symmetry::Sym => permanent_ryser(&a)?,
        };
        total += value * kernel * weight;
        let Some(axis) = (0..n).find(|&j| idx[j] + 1 < m) else {
            break;
        };
        idx[axis] += 1;
        for v in &mut idx[..axis] {
            *v = 0;
        }
    }
    if boundary > TRUNCATION_THRESHOLD {
        return Err(Error::Truncation {
            boundary_value: boundary,
            threshold: TRUNCATION_THRESHOLD,
        });
    }
    Ok(total / factorial(n) as f64)
}

/// Largest relative deviation, over the sample, between the transform of the
/// eigenfunction `e^{−π|x|²} H^±_m(√(2π)x)` and `phase(|m|) e^{−π|λ|²}
/// H^±_m(√(2π)λ)`.
///
/// The left side expands `H^±_m` over `S_n` and evaluates
/// `(1/|S_n|) Σ_σ s(σ) 𝔉[product_{m∘σ}]` through the factorized 1D integrals
/// with per-factor phases; the right side uses the determinant or permanent
/// of the Hermite matrix and the single phase `phase(|m|)`.
pub fn eigen_check(idx: &HermiteIndex, sample: &[Vec<f64>]) -> Result<f64> {
    let n = idx.dim();
    let strict = idx.symmetry == Symmetry::Anti;
    let s = sqrt_2pi();
    let mut worst = 0.0f64;
    for lambda in sample {
        if lambda.len() != n {
            return Err(Error::Shape {
                expected: n,
                found: lambda.len(),
            });
        }
        let class = Dominance::classify(lambda);
        if !(class == Dominance::Strict || (!strict && class == Dominance::Weak)) {
            return Err(Error::Dominance);
        }
        let mut lhs = C64::new(0.0, 0.0);
        let mut permuted = alloc::vec![0usize; n];
        let mut failure = None;
        for_each_permutation(n, |sigma, sign| {
            for (slot, &j) in permuted.iter_mut().zip(sigma) {
                *slot = idx.m[j];
            }
            match transform_hermite_product(&permuted, lambda, idx.symmetry) {
                Ok(v) => lhs += v * idx.symmetry.character(sign),
                Err(e) => failure = Some(e),
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        lhs /= factorial(n) as f64;
        let y: Vec<f64> = lambda.iter().map(|l| s * l).collect();
        let gauss = libm::exp(-PI * lambda.iter().map(|l| l * l).sum::<f64>());
        let rhs = phase(idx.degree()) * (gauss * hermite_det(&idx.m, &y, idx.symmetry)?);
        let dev = if rhs.norm() == 0.0 {
            lhs.norm()
        } else {
            (lhs - rhs).norm() / rhs.norm()
        };
        worst = worst.max(dev);
    }
    Ok(worst)
}
