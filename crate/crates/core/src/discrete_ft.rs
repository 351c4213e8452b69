//! Finite Fourier transforms: the unitary 1D transform on `{1, …, N}` and the
//! antisymmetric/symmetric multivariate transforms on ordered grids.
//!
//! Grid points `s ∈ F_N = {1/N, …, 1}` are handled by their integer
//! numerators `k = N·s`, so every phase `e^{2πi m k/N}` is an exact root of
//! unity reduced modulo `N`. The strict grid `F̂_N^n` (`s_1 > … > s_n`) and
//! the spectrum `D̂_N^n` (`N ≥ m_1 > … > m_n > 0`) are the same set of integer
//! tuples, as are the weak grid `F̆_N^n` and `D̆_N^n`; both are enumerated in
//! lexicographically descending order, which fixes the coefficient layout.
//!
//! Both multivariate bases use the normalisation `|S_n|^{−1/2} N^{−n/2}`,
//! under which the weighted Gram matrices are `I` (antisymmetric) and
//! `diag(|S_m|)` (symmetric).

use alloc::vec::Vec;

use crate::fourier_series::dominant_integer_weights;
use crate::linalg::{det_lu, permanent_ryser, ComplexMatrix};
use crate::symgroup::{factorial, stabilizer_order_int};
use crate::{cis_turns, Error, Result, Symmetry, C64};

/// Largest spectrum handled by the dense transforms.
pub const MAX_SPECTRUM: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Inverse,
}

/// `e^{2πi r/N}` for an integer `r`, reduced exactly.
fn root_of_unity(r: i64, n: i64) -> C64 {
    cis_turns(r.rem_euclid(n) as f64 / n as f64)
}

/// The unitary finite Fourier transform on `{1, …, N}`:
/// forward `f̃(m) = N^{−1/2} Σ_n f(n) e^{2πimn/N}`, inverse with the
/// conjugate kernel. Index `i` of the slices holds the value at `i + 1`.
pub fn ft1d(values: &[C64], direction: Direction) -> Vec<C64> {
    let n = values.len() as i64;
    if n == 0 {
        return Vec::new();
    }
    let sign = match direction {
        Direction::Forward => 1,
        Direction::Inverse => -1,
    };
    let norm = 1.0 / libm::sqrt(n as f64);
    (1..=n)
        .map(|m| {
            values
                .iter()
                .zip(1..=n)
                .map(|(f, k)| f * root_of_unity(sign * m * k, n))
                .sum::<C64>()
                * norm
        })
        .collect()
}

/// `e_m(s) = N^{−1/2} e^{2πims}` at `s = k/N`.
pub fn discrete_exponential(m: i64, k: i64, big_n: u32) -> C64 {
    let n = i64::from(big_n);
    root_of_unity(m * k, n) / libm::sqrt(n as f64)
}

/// Strict (`F̂_N^n`, `D̂_N^n`) or weak (`F̆_N^n`, `D̆_N^n`) ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GridKind {
    Strict,
    Weak,
}

impl GridKind {
    pub fn of(symmetry: Symmetry) -> GridKind {
        match symmetry {
            Symmetry::Anti => GridKind::Strict,
            Symmetry::Sym => GridKind::Weak,
        }
    }

    fn symmetry(self) -> Symmetry {
        match self {
            GridKind::Strict => Symmetry::Anti,
            GridKind::Weak => Symmetry::Sym,
        }
    }
}

/// Ordered grid points `s = k/N`, stored as numerator tuples `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedGrid {
    big_n: u32,
    n: usize,
    kind: GridKind,
    points: Vec<Vec<i64>>,
}

/// Spectrum set matching an [`OrderedGrid`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumSet {
    big_n: u32,
    n: usize,
    kind: GridKind,
    weights: Vec<Vec<i64>>,
}

impl OrderedGrid {
    pub fn big_n(&self) -> u32 {
        self.big_n
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Numerator tuples `k` with `s = k/N`.
    pub fn numerators(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn point(&self, index: usize) -> Vec<f64> {
        let n = f64::from(self.big_n);
        self.points[index].iter().map(|&k| k as f64 / n).collect()
    }

    pub fn position(&self, numerators: &[i64]) -> Option<usize> {
        self.points.iter().position(|p| p.as_slice() == numerators)
    }
}

impl SpectrumSet {
    pub fn big_n(&self) -> u32 {
        self.big_n
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn position(&self, m: &[i64]) -> Option<usize> {
        self.weights.iter().position(|w| w.as_slice() == m)
    }
}

/// Enumerates the ordered grid and its spectrum set.
pub fn enumerate_ordered(big_n: u32, n: usize, kind: GridKind) -> Result<(OrderedGrid, SpectrumSet)> {
    if big_n == 0 || n == 0 {
        return Err(Error::Invalid("ordered grid needs N ≥ 1 and n ≥ 1"));
    }
    if kind == GridKind::Strict && n > big_n as usize {
        return Err(Error::EmptyGrid {
            n,
            points: big_n as usize,
        });
    }
    let expected = cardinality(big_n, n, kind);
    if expected > 1e7 {
        return Err(Error::SizeLimit {
            what: "ordered grid",
            size: expected as usize,
            max: 10_000_000,
        });
    }
    let tuples = dominant_integer_weights(n, 1, i64::from(big_n), kind.symmetry());
    Ok((
        OrderedGrid {
            big_n,
            n,
            kind,
            points: tuples.clone(),
        },
        SpectrumSet {
            big_n,
            n,
            kind,
            weights: tuples,
        },
    ))
}

/// `C(N, n)` (strict) or `C(N+n−1, n)` (weak), as a float.
pub fn cardinality(big_n: u32, n: usize, kind: GridKind) -> f64 {
    let top = match kind {
        GridKind::Strict => f64::from(big_n),
        GridKind::Weak => f64::from(big_n) + n as f64 - 1.0,
    };
    libm::round((0..n).fold(1.0, |acc, i| acc * (top - i as f64) / (i as f64 + 1.0)))
}

/// `Ẽ±_m(s) = |S_n|^{−1/2} N^{−n/2} E±_m(s)` at `s = k/N`.
pub fn eval_discrete(big_n: u32, m: &[i64], k: &[i64], symmetry: Symmetry) -> Result<C64> {
    if m.len() != k.len() {
        return Err(Error::Shape {
            expected: m.len(),
            found: k.len(),
        });
    }
    let n = m.len();
    let modulus = i64::from(big_n);
    let a = ComplexMatrix::from_fn(n, n, |i, j| root_of_unity(m[i] * k[j], modulus));
    let e = match symmetry {
        Symmetry::Anti => det_lu(&a)?,
        Symmetry::Sym => permanent_ryser(&a)?,
    };
    let norm = 1.0 / libm::sqrt(factorial(n) as f64 * libm::pow(f64::from(big_n), n as f64));
    Ok(e * norm)
}

/// Transform coefficients `a_m`, laid out in spectrum order.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteCoefficients {
    spectrum: SpectrumSet,
    values: Vec<C64>,
}

impl DiscreteCoefficients {
    pub fn new(spectrum: SpectrumSet, values: Vec<C64>) -> Result<Self> {
        if values.len() != spectrum.len() {
            return Err(Error::Shape {
                expected: spectrum.len(),
                found: values.len(),
            });
        }
        Ok(DiscreteCoefficients { spectrum, values })
    }

    pub fn spectrum(&self) -> &SpectrumSet {
        &self.spectrum
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn get(&self, m: &[i64]) -> Option<C64> {
        self.spectrum.position(m).map(|i| self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[i64], C64)> + '_ {
        self.spectrum
            .weights
            .iter()
            .map(Vec::as_slice)
            .zip(self.values.iter().copied())
    }
}

/// A dense AMDFT/SMDFT: the basis matrix `Ẽ±_m(s)` (rows `m`, columns `s`)
/// with the quadrature weights of the forward map.
#[derive(Debug, Clone)]
pub struct DiscreteTransform {
    symmetry: Symmetry,
    grid: OrderedGrid,
    spectrum: SpectrumSet,
    basis: ComplexMatrix,
    /// `|S_n|` (anti) or `|S_n| |S_s|^{-1}` (sym), per grid point.
    point_weights: Vec<f64>,
    /// `1` (anti) or `|S_m|^{-1}` (sym), per spectrum entry.
    coefficient_weights: Vec<f64>,
}

impl DiscreteTransform {
    pub fn new(big_n: u32, n: usize, symmetry: Symmetry) -> Result<Self> {
        let (grid, spectrum) = enumerate_ordered(big_n, n, GridKind::of(symmetry))?;
        if spectrum.len() > MAX_SPECTRUM {
            return Err(Error::SizeLimit {
                what: "discrete transform spectrum",
                size: spectrum.len(),
                max: MAX_SPECTRUM,
            });
        }
        let mut basis = ComplexMatrix::zeros(spectrum.len(), grid.len());
        for (i, m) in spectrum.weights().iter().enumerate() {
            for (j, k) in grid.numerators().iter().enumerate() {
                basis[(i, j)] = eval_discrete(big_n, m, k, symmetry)?;
            }
        }
        let group_order = factorial(n) as f64;
        let (point_weights, coefficient_weights) = match symmetry {
            Symmetry::Anti => (
                alloc::vec![group_order; grid.len()],
                alloc::vec![1.0; spectrum.len()],
            ),
            Symmetry::Sym => (
                grid.numerators()
                    .iter()
                    .map(|k| group_order / stabilizer_order_int(k) as f64)
                    .collect(),
                spectrum
                    .weights()
                    .iter()
                    .map(|m| 1.0 / stabilizer_order_int(m) as f64)
                    .collect(),
            ),
        };
        Ok(DiscreteTransform {
            symmetry,
            grid,
            spectrum,
            basis,
            point_weights,
            coefficient_weights,
        })
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn grid(&self) -> &OrderedGrid {
        &self.grid
    }

    pub fn spectrum(&self) -> &SpectrumSet {
        &self.spectrum
    }

    /// `Ẽ±_m(s)` for the `i`-th spectrum entry and `j`-th grid point.
    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    /// Anti: `a_m = |S_n| Σ_s f(s) conj(Ẽ⁻_m(s))`.
    /// Sym: `a_m = |S_n| |S_m|⁻¹ Σ_s |S_s|⁻¹ f(s) conj(Ẽ⁺_m(s))`.
    pub fn forward(&self, values: &[C64]) -> Result<DiscreteCoefficients> {
        if values.len() != self.grid.len() {
            return Err(Error::Shape {
                expected: self.grid.len(),
                found: values.len(),
            });
        }
        let coeffs = (0..self.spectrum.len())
            .map(|i| {
                let row = self.basis.row(i);
                let sum: C64 = row
                    .iter()
                    .zip(values)
                    .zip(&self.point_weights)
                    .map(|((e, f), w)| f * e.conj() * *w)
                    .sum();
                sum * self.coefficient_weights[i]
            })
            .collect();
        DiscreteCoefficients::new(self.spectrum.clone(), coeffs)
    }

    /// `f(s) = Σ_m a_m Ẽ±_m(s)`.
    pub fn inverse(&self, coeffs: &DiscreteCoefficients) -> Result<Vec<C64>> {
        if coeffs.spectrum() != &self.spectrum {
            return Err(Error::Shape {
                expected: self.spectrum.len(),
                found: coeffs.spectrum().len(),
            });
        }
        Ok((0..self.grid.len())
            .map(|j| {
                (0..self.spectrum.len())
                    .map(|i| coeffs.values[i] * self.basis[(i, j)])
                    .sum()
            })
            .collect())
    }

    /// The weighted Gram matrix `Σ_s w_s Ẽ_m(s) conj(Ẽ_{m′}(s))`.
    pub fn gram(&self) -> ComplexMatrix {
        let size = self.spectrum.len();
        ComplexMatrix::from_fn(size, size, |a, b| {
            self.basis
                .row(a)
                .iter()
                .zip(self.basis.row(b))
                .zip(&self.point_weights)
                .map(|((x, y), w)| x * y.conj() * *w)
                .sum()
        })
    }
}

/// Antisymmetric multivariate DFT on `F̂_N^n`.
pub fn amdft_forward(big_n: u32, n: usize, values: &[C64]) -> Result<DiscreteCoefficients> {
    DiscreteTransform::new(big_n, n, Symmetry::Anti)?.forward(values)
}

pub fn amdft_inverse(coeffs: &DiscreteCoefficients) -> Result<Vec<C64>> {
    let s = coeffs.spectrum();
    if s.kind() != GridKind::Strict {
        return Err(Error::Invalid("AMDFT coefficients must be indexed by the strict spectrum"));
    }
    DiscreteTransform::new(s.big_n(), s.dim(), Symmetry::Anti)?.inverse(coeffs)
}

/// Symmetric multivariate DFT on `F̆_N^n`.
pub fn smdft_forward(big_n: u32, n: usize, values: &[C64]) -> Result<DiscreteCoefficients> {
    DiscreteTransform::new(big_n, n, Symmetry::Sym)?.forward(values)
}

pub fn smdft_inverse(coeffs: &DiscreteCoefficients) -> Result<Vec<C64>> {
    let s = coeffs.spectrum();
    if s.kind() != GridKind::Weak {
        return Err(Error::Invalid("SMDFT coefficients must be indexed by the weak spectrum"));
    }
    DiscreteTransform::new(s.big_n(), s.dim(), Symmetry::Sym)?.inverse(coeffs)
}

/// Weighted Gram matrix over the spectrum set: the identity for `Anti`,
/// `diag(|S_m|)` for `Sym`.
pub fn gram_matrix(big_n: u32, n: usize, symmetry: Symmetry) -> Result<ComplexMatrix> {
    Ok(DiscreteTransform::new(big_n, n, symmetry)?.gram())
}
