//! Evaluation of `E⁺_λ(x)` and `E⁻_λ(x)`.
//!
//! Two routes are provided: the defining sum over `S_n` (`O(n!·n)`), kept as
//! an oracle, and the fast route through the exponential matrix
//! `A_{ij} = e^{2πi λ_i x_j}`: an LU determinant for `E⁻` and Ryser's
//! permanent for `E⁺`.
//!
//! Both routes work in double-double arithmetic from the exact phases
//! `λ_i x_j` and round once at the end. Near the walls `x_i = x_j` the `n!`
//! unit-modulus terms cancel down to values many orders of magnitude below
//! one, and an `f64` evaluation loses most of its relative accuracy there.

use alloc::vec::Vec;

use crate::ddouble::{ComplexDD, DoubleDouble};
use crate::diffops::ScalarField;
use crate::linalg::{det_lu_extended, permanent_ryser_extended, ComplexMatrix};
use crate::symgroup::MAX_ENUMERATION;
use crate::{cis_turns, Error, Result, Symmetry, C64};

/// How a multivariate exponential function is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EvalMethod {
    /// Sum over all `n!` permutations.
    NaiveSum,
    /// Determinant (`E⁻`) or Ryser permanent (`E⁺`) of the exponential matrix.
    #[default]
    Fast,
}

/// The special weights with closed product forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecialKind {
    /// `E⁻_ρ` as a product of sines.
    RhoMinus,
    /// `E⁺_ρ` as a product of cosines.
    RhoPlus,
    /// `E⁻_{ρ′}` as a Vandermonde product.
    RhoPrime,
}

fn check_shape(lambda: &[f64], x: &[f64]) -> Result<()> {
    if lambda.len() != x.len() {
        return Err(Error::Shape {
            expected: lambda.len(),
            found: x.len(),
        });
    }
    if lambda.is_empty() {
        return Err(Error::Invalid("empty weight"));
    }
    Ok(())
}

/// `(e^{2πi λ_i x_j})_{i,j}`.
pub fn exponential_matrix(lambda: &[f64], x: &[f64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(lambda.len(), x.len(), |i, j| cis_turns(lambda[i] * x[j]))
}

/// Visits every permutation of `0..n` by Heap's algorithm, one transposition
/// per step, passing the current arrangement and its sign.
pub(crate) fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize], i8)) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut counters = alloc::vec![0usize; n];
    let mut sign = 1i8;
    visit(&perm, sign);
    let mut i = 1;
    while i < n {
        if counters[i] < i {
            let j = if i % 2 == 0 { 0 } else { counters[i] };
            perm.swap(j, i);
            sign = -sign;
            visit(&perm, sign);
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
}

fn naive_sum(symmetry: Symmetry, lambda: &[f64], x: &[DoubleDouble]) -> Result<ComplexDD> {
    let n = lambda.len();
    if n > MAX_ENUMERATION {
        return Err(Error::SizeLimit {
            what: "naive permutation sum",
            size: n,
            max: MAX_ENUMERATION,
        });
    }
    let mut total = ComplexDD::ZERO;
    for_each_permutation(n, |w, sign| {
        let mut phase = DoubleDouble::ZERO;
        for (l, &j) in lambda.iter().zip(w) {
            phase = phase + x[j].mul_f64(*l);
        }
        let term = ComplexDD::cis_turns(phase);
        total = if symmetry == Symmetry::Anti && sign < 0 {
            total - term
        } else {
            total + term
        };
    });
    Ok(total)
}

fn matrix_route(symmetry: Symmetry, lambda: &[f64], x: &[DoubleDouble]) -> Result<ComplexDD> {
    let n = lambda.len();
    let mut entries = Vec::with_capacity(n * n);
    for &l in lambda {
        for xj in x {
            entries.push(ComplexDD::cis_turns(xj.mul_f64(l)));
        }
    }
    match symmetry {
        Symmetry::Anti => det_lu_extended(entries, n),
        Symmetry::Sym => permanent_ryser_extended(&entries, n),
    }
}

fn eval_extended(symmetry: Symmetry, lambda: &[f64], x: &[DoubleDouble], method: EvalMethod) -> Result<ComplexDD> {
    match method {
        EvalMethod::NaiveSum => naive_sum(symmetry, lambda, x),
        EvalMethod::Fast => matrix_route(symmetry, lambda, x),
    }
}

/// `E⁻_λ(x) = det(e^{2πi λ_i x_j})`.
pub fn eval_antisym(lambda: &[f64], x: &[f64], method: EvalMethod) -> Result<C64> {
    eval(Symmetry::Anti, lambda, x, method)
}

/// `E⁺_λ(x) = det⁺(e^{2πi λ_i x_j})`.
pub fn eval_sym(lambda: &[f64], x: &[f64], method: EvalMethod) -> Result<C64> {
    eval(Symmetry::Sym, lambda, x, method)
}

pub fn eval(symmetry: Symmetry, lambda: &[f64], x: &[f64], method: EvalMethod) -> Result<C64> {
    check_shape(lambda, x)?;
    let wide: Vec<DoubleDouble> = x.iter().map(|&v| DoubleDouble::from_f64(v)).collect();
    Ok(eval_extended(symmetry, lambda, &wide, method)?.to_c64())
}

/// `ρ = ½(n−1, n−3, …, −n+1)`.
pub fn rho(n: usize) -> Vec<f64> {
    (0..n).map(|i| 0.5 * (n as f64 - 1.0) - i as f64).collect()
}

/// `ρ′ = (n−1, …, 1, 0)`.
pub fn rho_prime(n: usize) -> Vec<f64> {
    (0..n).rev().map(|i| i as f64).collect()
}

/// Closed product forms for the special weights `ρ` and `ρ′`.
///
/// * `RhoMinus`: `(2i)^{n(n−1)/2} Π_{i<j} sin π(x_i − x_j)`
/// * `RhoPlus`: `2^{n(n−1)/2} Π_{i<j} cos π(x_i − x_j)`
/// * `RhoPrime`: `Π_{k<l} (e^{2πi x_k} − e^{2πi x_l})`
///
/// The sine and Vandermonde forms equal the corresponding determinants for
/// every `n`. The cosine form equals `E⁺_ρ` only for `n = 2`; for larger `n`
/// its expansion contains terms outside the `S_n` orbit of `ρ`.
///
/// The Vandermonde form is the factorisation of `det(e^{2πi(n−i)x_j})`;
/// a conjugated second factor `e^{−2πi x_l}` does not reproduce the
/// determinant.
pub fn eval_special(x: &[f64], kind: SpecialKind) -> Result<C64> {
    let n = x.len();
    if n == 0 {
        return Err(Error::Invalid("empty point"));
    }
    let mut acc = C64::new(1.0, 0.0);
    for i in 0..n {
        for j in i + 1..n {
            let d = core::f64::consts::PI * (x[i] - x[j]);
            acc *= match kind {
                SpecialKind::RhoMinus => C64::new(0.0, 2.0 * libm::sin(d)),
                SpecialKind::RhoPlus => C64::new(2.0 * libm::cos(d), 0.0),
                SpecialKind::RhoPrime => cis_turns(x[i]) - cis_turns(x[j]),
            };
        }
    }
    Ok(acc)
}

/// `E±_λ` as a field over `E_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpFunction {
    pub weight: Vec<f64>,
    pub symmetry: Symmetry,
    pub method: EvalMethod,
}

impl ExpFunction {
    pub fn new(symmetry: Symmetry, weight: Vec<f64>) -> Self {
        ExpFunction {
            weight,
            symmetry,
            method: EvalMethod::Fast,
        }
    }

    pub fn from_integers(symmetry: Symmetry, m: &[i64]) -> Self {
        Self::new(symmetry, m.iter().map(|&v| v as f64).collect())
    }
}

impl ScalarField for ExpFunction {
    fn dim(&self) -> usize {
        self.weight.len()
    }

    fn eval(&self, x: &[f64]) -> C64 {
        eval(self.symmetry, &self.weight, x, self.method).expect("point dimension matches weight")
    }

    /// The shifted point `x + h·offsets` is formed exactly in double-double.
    fn eval_shifted(&self, x: &[f64], step: f64, offsets: &[i32]) -> ComplexDD {
        let n = self.weight.len();
        assert_eq!(x.len(), n, "point dimension matches weight");
        assert_eq!(offsets.len(), n, "offset dimension matches weight");
        let y: Vec<DoubleDouble> = x
            .iter()
            .zip(offsets)
            .map(|(&xi, &o)| DoubleDouble::from_f64(xi) + DoubleDouble::product(f64::from(o), step))
            .collect();
        eval_extended(self.symmetry, &self.weight, &y, self.method).expect("point dimension matches weight")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symgroup::{enumerate_permutations, longest_element};

    const SQRT2: f64 = core::f64::consts::SQRT_2;

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
    }

    #[test]
    fn antisym_rho_example() {
        for method in [EvalMethod::NaiveSum, EvalMethod::Fast] {
            let v = eval_antisym(&[0.5, -0.5], &[0.25, 0.0], method).unwrap();
            assert!(close(v, C64::new(0.0, SQRT2), 1e-14), "{method:?}: {v}");
        }
    }

    #[test]
    fn repeated_weight_or_point_vanishes() {
        for method in [EvalMethod::NaiveSum, EvalMethod::Fast] {
            let v = eval_antisym(&[1.0, 1.0, 0.0], &[0.13, 0.71, 0.4], method).unwrap();
            assert!(v.norm() < 1e-13);
            let v = eval_antisym(&[2.3, -0.7, 1.1], &[0.3, 0.3, 0.9], method).unwrap();
            assert!(v.norm() < 1e-13);
        }
    }

    #[test]
    fn sym_examples() {
        let v = eval_sym(&[1.7], &[0.3], EvalMethod::Fast).unwrap();
        assert!(close(v, cis_turns(1.7 * 0.3), 1e-15));

        let x = [0.21, 0.64];
        let v = eval_sym(&[3.0, 3.0], &x, EvalMethod::NaiveSum).unwrap();
        assert!(close(v, cis_turns(3.0 * (x[0] + x[1])) * 2.0, 1e-14));

        let v = eval_sym(&[0.5, -0.5], &x, EvalMethod::Fast).unwrap();
        let expected = 2.0 * libm::cos(core::f64::consts::PI * (x[0] - x[1]));
        assert!(close(v, C64::new(expected, 0.0), 1e-14));
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(
            eval_antisym(&[1.0, 2.0], &[0.1], EvalMethod::Fast),
            Err(Error::Shape { .. })
        ));
        assert!(matches!(
            eval_sym(&[1.0; 11], &[0.1; 11], EvalMethod::NaiveSum),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn heap_enumeration_covers_group_with_signs() {
        for n in 1..=6 {
            let mut seen = Vec::new();
            for_each_permutation(n, |w, s| seen.push((w.to_vec(), s)));
            seen.sort();
            let mut reference: Vec<(Vec<usize>, i8)> = enumerate_permutations(n)
                .unwrap()
                .into_iter()
                .map(|w| (w.mapping().to_vec(), w.sign()))
                .collect();
            reference.sort();
            assert_eq!(seen, reference);
        }
    }

    #[test]
    fn special_forms_match_determinants() {
        let x = [0.83, 0.41, 0.27, 0.05];
        for n in 2..=4 {
            let x = &x[..n];
            let minus = eval_special(x, SpecialKind::RhoMinus).unwrap();
            let plus = eval_special(x, SpecialKind::RhoPlus).unwrap();
            let prime = eval_special(x, SpecialKind::RhoPrime).unwrap();
            assert!(close(minus, eval_antisym(&rho(n), x, EvalMethod::NaiveSum).unwrap(), 1e-13));
            let sym = eval_sym(&rho(n), x, EvalMethod::NaiveSum).unwrap();
            if n == 2 {
                assert!(close(plus, sym, 1e-13));
            } else {
                assert!((plus - sym).norm() > 1e-3, "cosine product is not E⁺_ρ for n={n}");
            }
            assert!(close(prime, eval_antisym(&rho_prime(n), x, EvalMethod::NaiveSum).unwrap(), 1e-13));
        }
    }

    #[test]
    fn cosine_product_misses_constant_terms_for_three_variables() {
        // 8 Π cos π(x_i − x_j) expands to the six terms of E⁺_ρ plus two
        // constant terms from sign patterns whose exponents cancel
        for x in [[0.0, 0.0, 0.0], [0.83, 0.41, 0.27], [0.1, 0.9, 0.5]] {
            let plus = eval_special(&x, SpecialKind::RhoPlus).unwrap();
            let sym = eval_sym(&rho(3), &x, EvalMethod::Fast).unwrap();
            assert!(close(plus, sym + 2.0, 1e-13));
        }
    }

    #[test]
    fn conjugated_vandermonde_factor_is_wrong() {
        let x = [0.83, 0.41, 0.27];
        let det = eval_antisym(&rho_prime(3), &x, EvalMethod::Fast).unwrap();
        let mut alt = C64::new(1.0, 0.0);
        for k in 0..3 {
            for l in k + 1..3 {
                alt *= cis_turns(x[k]) - cis_turns(-x[l]);
            }
        }
        assert!((alt - det).norm() > 1e-3);
    }

    #[test]
    fn rho_prime_is_a_translate_of_rho() {
        let x = [0.71, 0.52, 0.33, 0.12, 0.02];
        for n in 2..=5 {
            let x = &x[..n];
            let total: f64 = x.iter().sum();
            let lhs = eval_antisym(&rho_prime(n), x, EvalMethod::Fast).unwrap();
            let rhs = cis_turns(0.5 * total * (n as f64 - 1.0))
                * eval_antisym(&rho(n), x, EvalMethod::Fast).unwrap();
            assert!(close(lhs, rhs, 1e-13));
        }
    }

    #[test]
    fn special_weights() {
        assert_eq!(rho(3), alloc::vec![1.0, 0.0, -1.0]);
        assert_eq!(rho(2), alloc::vec![0.5, -0.5]);
        assert_eq!(rho_prime(3), alloc::vec![2.0, 1.0, 0.0]);
        let z = eval_special(&[0.4, 0.4, 0.1], SpecialKind::RhoMinus).unwrap();
        assert_eq!(z.norm(), 0.0);
    }

    #[test]
    fn self_conjugate_weight_parity() {
        // λ = −reverse(λ): E⁻ real for n ≡ 0,1 (mod 4), imaginary for n ≡ 2,3
        let x = [0.17, 0.58, 0.93, 0.26, 0.44];
        for n in 2..=5 {
            let lambda: Vec<f64> = (0..n).map(|i| 1.3 * (n as f64 - 1.0 - 2.0 * i as f64)).collect();
            let v = eval_antisym(&lambda, &x[..n], EvalMethod::NaiveSum).unwrap();
            if matches!(n % 4, 0 | 1) {
                assert!(v.im.abs() < 1e-12 * (1.0 + v.norm()), "n={n}");
            } else {
                assert!(v.re.abs() < 1e-12 * (1.0 + v.norm()), "n={n}");
            }
            let s = eval_sym(&lambda, &x[..n], EvalMethod::NaiveSum).unwrap();
            assert!(s.im.abs() < 1e-12 * (1.0 + s.norm()));
        }
        assert_eq!(longest_element(4).sign(), 1);
    }

    #[test]
    fn extended_precision_field_agrees_with_f64() {
        let f = ExpFunction::new(Symmetry::Anti, alloc::vec![1.9, 0.4, -1.3]);
        let x = [0.31, 0.77, 0.12];
        let a = f.eval_shifted(&x, 1e-3, &[1, 0, -1]).to_c64();
        let b = f.eval(&[x[0] + 1e-3, x[1], x[2] - 1e-3]);
        assert!((a - b).norm() < 1e-13);
    }
}
