//! Fourier series in `E±_m`, `m ∈ ℤⁿ`, on the fundamental domain of the
//! affine symmetric group.
//!
//! Integrals over `F(S_n^aff)` are never meshed directly. The torus
//! `𝖳 = [0,1)ⁿ` (with `|𝖳| = 1`) is the union of `n!` images of the domain,
//! so for an `S_n`-invariant integrand `∫_F = |S_n|⁻¹ ∫_𝖳`, and the uniform
//! torus grid integrates trigonometric polynomials exactly once `M` exceeds
//! twice the largest frequency.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::diffops::ScalarField;
use crate::expfun::{self, EvalMethod};
use crate::symgroup::{factorial, sorting_permutation, stabilizer_order_int, Permutation};
use crate::{Error, Result, Symmetry, C64};

/// Uniform tensor grid `{0, 1/M, …, (M−1)/M}ⁿ` on the unit torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorusGrid {
    per_axis: usize,
    dim: usize,
}

impl TorusGrid {
    pub fn new(per_axis: usize, dim: usize) -> Result<Self> {
        if per_axis == 0 || dim == 0 {
            return Err(Error::Invalid("torus grid needs M ≥ 1 and n ≥ 1"));
        }
        if libm::pow(per_axis as f64, dim as f64) > 1e8 {
            return Err(Error::SizeLimit {
                what: "torus grid points",
                size: per_axis,
                max: libm::pow(1e8, 1.0 / dim as f64) as usize,
            });
        }
        Ok(TorusGrid { per_axis, dim })
    }

    /// The smallest grid used by default for functions whose frequencies
    /// are bounded by `max_frequency`: `M = 2·max_frequency + 2`.
    pub fn for_max_frequency(max_frequency: usize, dim: usize) -> Result<Self> {
        Self::new(2 * max_frequency + 2, dim)
    }

    pub fn per_axis(&self) -> usize {
        self.per_axis
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.per_axis.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Quadrature weight `M^{−n}` of every node.
    pub fn weight(&self) -> f64 {
        1.0 / self.len() as f64
    }

    /// Integer coordinates of the `index`-th node, first axis slowest.
    pub fn node_indices(&self, mut index: usize) -> Vec<usize> {
        let mut idx = alloc::vec![0; self.dim];
        for slot in idx.iter_mut().rev() {
            *slot = index % self.per_axis;
            index /= self.per_axis;
        }
        idx
    }

    pub fn node(&self, index: usize) -> Vec<f64> {
        let m = self.per_axis as f64;
        self.node_indices(index).into_iter().map(|k| k as f64 / m).collect()
    }

    pub fn nodes(&self) -> impl Iterator<Item = Vec<f64>> + '_ {
        (0..self.len()).map(move |i| self.node(i))
    }

    /// Position of the node with the given integer coordinates (taken mod M).
    pub fn index_of(&self, indices: &[i64]) -> usize {
        let m = self.per_axis as i64;
        indices
            .iter()
            .fold(0usize, |acc, &k| acc * self.per_axis + k.rem_euclid(m) as usize)
    }
}

/// `M^{−n} Σ f(x) conj(g(x))` over the grid; equals `∫_𝖳 f ḡ` exactly for
/// band-limited inputs.
pub fn inner_product_torus<F, G>(f: &F, g: &G, grid: &TorusGrid) -> Result<C64>
where
    F: ScalarField + ?Sized,
    G: ScalarField + ?Sized,
{
    check_dims(f.dim(), g.dim(), grid)?;
    let sum: C64 = grid.nodes().map(|x| f.eval(&x) * g.eval(&x).conj()).sum();
    Ok(sum * grid.weight())
}

fn check_dims(f: usize, g: usize, grid: &TorusGrid) -> Result<()> {
    for d in [f, g] {
        if d != grid.dim() {
            return Err(Error::Shape {
                expected: grid.dim(),
                found: d,
            });
        }
    }
    Ok(())
}

/// Symmetry declared for an inner product over a fundamental domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FundamentalClass {
    /// Both functions `S_n`-invariant; integrate over `F(S_n^aff)`.
    Sym,
    /// Both functions alternating; integrate over `F(S_n^aff)`.
    Anti,
    /// One invariant and one alternating function; integrate over
    /// `F^ext = F ∪ w_1 F`, with `w_1` swapping the first two coordinates.
    Mixed,
}

const PROBES: usize = 8;
const SYMMETRY_TOL: f64 = 1e-9;

/// Largest deviation of `f` from the declared symmetry under the adjacent
/// transpositions, at a few grid nodes.
pub fn symmetry_deviation<F: ScalarField + ?Sized>(f: &F, symmetry: Symmetry, grid: &TorusGrid) -> f64 {
    let n = f.dim();
    let stride = (grid.len() / PROBES).max(1);
    let mut worst: f64 = 0.0;
    for probe in (0..grid.len()).step_by(stride).take(PROBES) {
        let x = grid.node(probe);
        let value = f.eval(&x);
        for i in 0..n.saturating_sub(1) {
            let w = Permutation::transposition(n, i, i + 1);
            let swapped = f.eval(&w.apply(&x));
            let expected = value * symmetry.character(w.sign());
            let dev = (swapped - expected).norm() / (1.0 + value.norm());
            worst = worst.max(dev);
        }
    }
    worst
}

fn require_symmetry<F: ScalarField + ?Sized>(f: &F, symmetry: Symmetry, grid: &TorusGrid) -> Result<()> {
    let deviation = symmetry_deviation(f, symmetry, grid);
    if deviation > SYMMETRY_TOL {
        Err(Error::Symmetry { deviation })
    } else {
        Ok(())
    }
}

/// Inner product over the fundamental domain of `S_n^aff` (or over `F^ext`
/// for [`FundamentalClass::Mixed`]).
///
/// For `Sym`/`Anti` the integrand is `S_n`-invariant and the result is the
/// torus inner product divided by `|S_n|`. For `Mixed` the integrand is
/// alternating; every node is folded into the closed domain by sorting and
/// the integrand is summed at the folded node and at its `w_1` reflection,
/// which integrates over `F ∪ w_1 F`.
pub fn inner_product_fundamental<F, G>(
    f: &F,
    g: &G,
    grid: &TorusGrid,
    class: FundamentalClass,
) -> Result<C64>
where
    F: ScalarField + ?Sized,
    G: ScalarField + ?Sized,
{
    check_dims(f.dim(), g.dim(), grid)?;
    let n = grid.dim();
    let group_order = factorial(n) as f64;
    match class {
        FundamentalClass::Sym | FundamentalClass::Anti => {
            let symmetry = if class == FundamentalClass::Sym {
                Symmetry::Sym
            } else {
                Symmetry::Anti
            };
            require_symmetry(f, symmetry, grid)?;
            require_symmetry(g, symmetry, grid)?;
            Ok(inner_product_torus(f, g, grid)? / group_order)
        }
        FundamentalClass::Mixed => {
            if n < 2 {
                return Err(Error::Invalid("mixed inner product needs n ≥ 2"));
            }
            let sym_anti = symmetry_deviation(f, Symmetry::Sym, grid) <= SYMMETRY_TOL
                && symmetry_deviation(g, Symmetry::Anti, grid) <= SYMMETRY_TOL;
            let anti_sym = symmetry_deviation(f, Symmetry::Anti, grid) <= SYMMETRY_TOL
                && symmetry_deviation(g, Symmetry::Sym, grid) <= SYMMETRY_TOL;
            if !(sym_anti || anti_sym) {
                let deviation = symmetry_deviation(f, Symmetry::Sym, grid)
                    .min(symmetry_deviation(f, Symmetry::Anti, grid));
                return Err(Error::Symmetry { deviation });
            }
            let wall = Permutation::transposition(n, 0, 1);
            let integrand = |y: &[f64]| f.eval(y) * g.eval(y).conj();
            let sum: C64 = grid
                .nodes()
                .map(|x| {
                    let folded = sorting_permutation(&x).apply(&x);
                    integrand(&folded) + integrand(&wall.apply(&folded))
                })
                .sum();
            Ok(sum * grid.weight() / group_order)
        }
    }
}

/// Finite map from canonical integer weights to coefficients.
///
/// Keys are non-increasing (`Sym`) or strictly decreasing (`Anti`); anything
/// else is rejected rather than reordered.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientMap {
    symmetry: Symmetry,
    entries: BTreeMap<Vec<i64>, C64>,
}

/// Checks that `m` is a canonical key for the symmetry class.
pub fn check_canonical(m: &[i64], symmetry: Symmetry) -> Result<()> {
    if m.is_empty() {
        return Err(Error::Invalid("empty weight"));
    }
    let ok = m.windows(2).all(|p| match symmetry {
        Symmetry::Sym => p[0] >= p[1],
        Symmetry::Anti => p[0] > p[1],
    });
    if ok {
        Ok(())
    } else {
        Err(Error::Dominance)
    }
}

impl CoefficientMap {
    pub fn new(symmetry: Symmetry) -> Self {
        CoefficientMap {
            symmetry,
            entries: BTreeMap::new(),
        }
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    /// Inserts `c` at `m`, replacing any previous value.
    pub fn insert(&mut self, m: Vec<i64>, c: C64) -> Result<()> {
        check_canonical(&m, self.symmetry)?;
        if let Some(first) = self.entries.keys().next() {
            if first.len() != m.len() {
                return Err(Error::Shape {
                    expected: first.len(),
                    found: m.len(),
                });
            }
        }
        self.entries.insert(m, c);
        Ok(())
    }

    pub fn get(&self, m: &[i64]) -> Option<C64> {
        self.entries.get(m).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Dimension of the keys, if any are present.
    pub fn dim(&self) -> Option<usize> {
        self.entries.keys().next().map(Vec::len)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[i64], C64)> + '_ {
        self.entries.iter().map(|(k, v)| (k.as_slice(), *v))
    }

    /// Largest `|c_m − c′_m|` over the union of keys (missing keys count as 0).
    pub fn max_abs_diff(&self, other: &CoefficientMap) -> f64 {
        let zero = C64::new(0.0, 0.0);
        self.entries
            .keys()
            .chain(other.entries.keys())
            .map(|k| (self.get(k).unwrap_or(zero) - other.get(k).unwrap_or(zero)).norm())
            .fold(0.0, f64::max)
    }
}

/// All dominant integer weights of length `n` with entries in `lo..=hi`,
/// strictly decreasing for `Anti`, in lexicographically descending order.
pub fn dominant_integer_weights(n: usize, lo: i64, hi: i64, symmetry: Symmetry) -> Vec<Vec<i64>> {
    fn extend(prefix: &mut Vec<i64>, n: usize, lo: i64, hi: i64, strict: bool, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let top = match prefix.last() {
            Some(&last) if strict => last - 1,
            Some(&last) => last,
            None => hi,
        };
        let mut v = top;
        while v >= lo {
            prefix.push(v);
            extend(prefix, n, lo, hi, strict, out);
            prefix.pop();
            v -= 1;
        }
    }
    let mut out = Vec::new();
    if n > 0 && lo <= hi {
        extend(&mut Vec::with_capacity(n), n, lo, hi, symmetry == Symmetry::Anti, &mut out);
    }
    out
}

fn exp_value(symmetry: Symmetry, m: &[f64], x: &[f64]) -> C64 {
    expfun::eval(symmetry, m, x, EvalMethod::Fast).expect("weight and point share a dimension")
}

/// Expansion coefficients of `f` over `spectrum`:
/// `c_m = |S_m|⁻¹ ⟨f, E⁺_m⟩_F` (sym) or `c_m = ⟨f, E⁻_m⟩_F` (anti).
pub fn analyze<F: ScalarField + ?Sized>(
    f: &F,
    symmetry: Symmetry,
    spectrum: &[Vec<i64>],
    grid: &TorusGrid,
) -> Result<CoefficientMap> {
    if f.dim() != grid.dim() {
        return Err(Error::Shape {
            expected: grid.dim(),
            found: f.dim(),
        });
    }
    for m in spectrum {
        check_canonical(m, symmetry)?;
        if m.len() != grid.dim() {
            return Err(Error::Shape {
                expected: grid.dim(),
                found: m.len(),
            });
        }
    }
    require_symmetry(f, symmetry, grid)?;
    let nodes: Vec<Vec<f64>> = grid.nodes().collect();
    let samples: Vec<C64> = nodes.iter().map(|x| f.eval(x)).collect();
    let scale = grid.weight() / factorial(grid.dim()) as f64;
    let mut out = CoefficientMap::new(symmetry);
    for m in spectrum {
        let mf: Vec<f64> = m.iter().map(|&v| v as f64).collect();
        let inner: C64 = nodes
            .iter()
            .zip(&samples)
            .map(|(x, fx)| fx * exp_value(symmetry, &mf, x).conj())
            .sum::<C64>()
            * scale;
        let c = match symmetry {
            Symmetry::Sym => inner / stabilizer_order_int(m) as f64,
            Symmetry::Anti => inner,
        };
        out.insert(m.clone(), c)?;
    }
    Ok(out)
}

/// `Σ_m c_m E±_m(x)`.
pub fn synthesize(coeffs: &CoefficientMap, x: &[f64]) -> Result<C64> {
    let mut total = C64::new(0.0, 0.0);
    for (m, c) in coeffs.iter() {
        if m.len() != x.len() {
            return Err(Error::Shape {
                expected: m.len(),
                found: x.len(),
            });
        }
        let mf: Vec<f64> = m.iter().map(|&v| v as f64).collect();
        total += c * exp_value(coeffs.symmetry(), &mf, x);
    }
    Ok(total)
}

/// Sum of a symmetric and an antisymmetric series: the expansion on `F^ext`.
pub fn synthesize_mixed(sym: &CoefficientMap, anti: &CoefficientMap, x: &[f64]) -> Result<C64> {
    if sym.symmetry() != Symmetry::Sym || anti.symmetry() != Symmetry::Anti {
        return Err(Error::Invalid("mixed synthesis needs one symmetric and one antisymmetric map"));
    }
    Ok(synthesize(sym, x)? + synthesize(anti, x)?)
}

/// Both sides of the Plancherel identity on `F(S_n^aff)`:
/// `Σ |S_m| |c_m|²` (sym) or `Σ |c_m|²` (anti), against `∫_F |f|²`.
pub fn plancherel_check<F: ScalarField + ?Sized>(
    f: &F,
    coeffs: &CoefficientMap,
    grid: &TorusGrid,
) -> Result<(f64, f64)> {
    if f.dim() != grid.dim() {
        return Err(Error::Shape {
            expected: grid.dim(),
            found: f.dim(),
        });
    }
    let lhs: f64 = coeffs
        .iter()
        .map(|(m, c)| match coeffs.symmetry() {
            Symmetry::Sym => stabilizer_order_int(m) as f64 * c.norm_sqr(),
            Symmetry::Anti => c.norm_sqr(),
        })
        .sum();
    let integral: f64 = grid.nodes().map(|x| f.eval(&x).norm_sqr()).sum::<f64>() * grid.weight();
    Ok((lhs, integral / factorial(grid.dim()) as f64))
}
