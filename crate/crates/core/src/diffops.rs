//! Finite-difference application of `σ_k(∂²/∂x_1², …, ∂²/∂x_n²)`.
//!
//! The operator is applied term by term: for each `k`-subset of coordinates
//! the centred second difference is nested over the subset, giving a `3^k`
//! point stencil, and the subset contributions are summed. `k = 1` is the
//! Laplacian.

use alloc::vec::Vec;

use crate::ddouble::{ComplexDD, DoubleDouble};
use crate::{Error, Result, C64};

/// A complex-valued function on `E_n`.
pub trait ScalarField {
    fn dim(&self) -> usize;

    fn eval(&self, x: &[f64]) -> C64;

    /// The value at `x + step·offsets`, in extended precision where the field
    /// supports it. The default rounds the shifted point to `f64`.
    fn eval_shifted(&self, x: &[f64], step: f64, offsets: &[i32]) -> ComplexDD {
        let p: Vec<f64> = x
            .iter()
            .zip(offsets)
            .map(|(xi, &o)| xi + step * f64::from(o))
            .collect();
        self.eval(&p).into()
    }
}

impl<T: ScalarField + ?Sized> ScalarField for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn eval(&self, x: &[f64]) -> C64 {
        (**self).eval(x)
    }

    fn eval_shifted(&self, x: &[f64], step: f64, offsets: &[i32]) -> ComplexDD {
        (**self).eval_shifted(x, step, offsets)
    }
}

/// Wraps a closure as a [`ScalarField`].
#[derive(Clone, Copy)]
pub struct FnField<F> {
    dim: usize,
    f: F,
}

impl<F: Fn(&[f64]) -> C64> FnField<F> {
    pub fn new(dim: usize, f: F) -> Self {
        FnField { dim, f }
    }
}

impl<F: Fn(&[f64]) -> C64> ScalarField for FnField<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &[f64]) -> C64 {
        (self.f)(x)
    }
}

/// Step of the centred second-order stencil.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StencilConfig {
    h: f64,
}

impl StencilConfig {
    pub const DEFAULT_STEP: f64 = 1e-3;

    pub fn new(h: f64) -> Result<Self> {
        if h > 0.0 && h.is_finite() {
            Ok(StencilConfig { h })
        } else {
            Err(Error::Invalid("stencil step must be positive and finite"))
        }
    }

    pub fn step(&self) -> f64 {
        self.h
    }

    pub fn halved(&self) -> Self {
        StencilConfig { h: self.h / 2.0 }
    }
}

impl Default for StencilConfig {
    fn default() -> Self {
        StencilConfig {
            h: Self::DEFAULT_STEP,
        }
    }
}

/// Calls `visit` with every increasing `k`-subset of `0..n`.
fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx);
        let Some(pos) = (0..k).rev().find(|&p| idx[p] < n - k + p) else {
            return;
        };
        idx[pos] += 1;
        for p in pos + 1..k {
            idx[p] = idx[p - 1] + 1;
        }
    }
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        Err(Error::Index {
            index: k,
            min: 1,
            max: n,
        })
    } else {
        Ok(())
    }
}

/// `σ_k(∂²/∂x_1², …, ∂²/∂x_n²) f` at `x` by nested centred differences.
pub fn apply_sigma_k<F: ScalarField + ?Sized>(
    f: &F,
    x: &[f64],
    k: usize,
    cfg: StencilConfig,
) -> Result<C64> {
    let n = f.dim();
    if x.len() != n {
        return Err(Error::Shape {
            expected: n,
            found: x.len(),
        });
    }
    check_k(k, n)?;
    let h = cfg.step();
    let mut total = ComplexDD::ZERO;
    let mut offsets = alloc::vec![0i32; n];
    let stencil_size = 3usize.pow(k as u32);
    for_each_subset(n, k, |subset| {
        for code in 0..stencil_size {
            let mut c = code;
            let mut weight = 1.0;
            for &axis in subset {
                let o = (c % 3) as i32 - 1;
                c /= 3;
                offsets[axis] = o;
                if o == 0 {
                    weight *= -2.0;
                }
            }
            let value = f.eval_shifted(x, h, &offsets);
            total = total + value.scale(DoubleDouble::from_f64(weight));
        }
        for &axis in subset {
            offsets[axis] = 0;
        }
    });
    let denom = DoubleDouble::from_f64(h).powi(2 * k as u32);
    Ok(ComplexDD::new(total.re / denom, total.im / denom).to_c64())
}

/// The Laplacian, `σ_1` of the second derivatives.
pub fn laplacian<F: ScalarField + ?Sized>(f: &F, x: &[f64], cfg: StencilConfig) -> Result<C64> {
    apply_sigma_k(f, x, 1, cfg)
}

/// The `k`-th elementary symmetric polynomial.
pub fn elementary_symmetric(values: &[f64], k: usize) -> f64 {
    if k > values.len() {
        return 0.0;
    }
    let mut e = alloc::vec![0.0; k + 1];
    e[0] = 1.0;
    for &v in values {
        for j in (1..=k).rev() {
            e[j] += e[j - 1] * v;
        }
    }
    e[k]
}

/// Eigenvalue of the `σ_k` operator on `E±_λ`: `(−4π²)^k σ_k(λ_1², …, λ_n²)`.
pub fn sigma_k_eigenvalue(lambda: &[f64], k: usize) -> Result<f64> {
    check_k(k, lambda.len())?;
    let squares: Vec<f64> = lambda.iter().map(|l| l * l).collect();
    let four_pi2 = 4.0 * core::f64::consts::PI * core::f64::consts::PI;
    Ok(libm::pow(-four_pi2, k as f64) * elementary_symmetric(&squares, k))
}

/// Centred first difference of `f` at `x` along the unit vector `direction`.
pub fn directional_derivative<F: ScalarField + ?Sized>(
    f: &F,
    x: &[f64],
    direction: &[f64],
    h: f64,
) -> Result<C64> {
    if x.len() != f.dim() || direction.len() != f.dim() {
        return Err(Error::Shape {
            expected: f.dim(),
            found: if x.len() != f.dim() { x.len() } else { direction.len() },
        });
    }
    let plus: Vec<f64> = x.iter().zip(direction).map(|(a, d)| a + h * d).collect();
    let minus: Vec<f64> = x.iter().zip(direction).map(|(a, d)| a - h * d).collect();
    Ok((f.eval(&plus) - f.eval(&minus)) / (2.0 * h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expfun::ExpFunction;
    use crate::Symmetry;
    use core::f64::consts::PI;

    #[test]
    fn subsets_are_enumerated_once() {
        let mut count = 0;
        let mut last: Vec<usize> = Vec::new();
        for_each_subset(5, 3, |s| {
            assert!(s.windows(2).all(|p| p[0] < p[1]));
            assert!(last.as_slice() < s);
            last = s.to_vec();
            count += 1;
        });
        assert_eq!(count, 10);
    }

    #[test]
    fn constant_field_has_zero_laplacian() {
        let f = FnField::new(3, |_: &[f64]| C64::new(2.5, -1.0));
        let v = apply_sigma_k(&f, &[0.1, 0.2, 0.3], 1, StencilConfig::default()).unwrap();
        assert!(v.norm() < 1e-8);
    }

    #[test]
    fn laplacian_of_antisymmetric_function() {
        let f = ExpFunction::new(Symmetry::Anti, alloc::vec![2.0, 1.0, 0.0]);
        let x = [0.71, 0.38, 0.14];
        let lhs = laplacian(&f, &x, StencilConfig::default()).unwrap();
        let rhs = f.eval(&x) * (-4.0 * PI * PI * 5.0);
        assert!((lhs - rhs).norm() / rhs.norm() < 1e-4);
    }

    #[test]
    fn top_operator_on_symmetric_function() {
        let f = ExpFunction::new(Symmetry::Sym, alloc::vec![1.0, -1.0]);
        let x = [0.23, 0.61];
        let eig = sigma_k_eigenvalue(&[1.0, -1.0], 2).unwrap();
        assert!((eig - 16.0 * PI.powi(4)).abs() < 1e-9);
        let lhs = apply_sigma_k(&f, &x, 2, StencilConfig::default()).unwrap();
        let rhs = f.eval(&x) * eig;
        assert!((lhs - rhs).norm() / rhs.norm() < 1e-4);
    }

    #[test]
    fn eigenvalue_examples() {
        let four_pi2 = 4.0 * PI * PI;
        assert!((sigma_k_eigenvalue(&[1.0, 2.0], 1).unwrap() + four_pi2 * 5.0).abs() < 1e-9);
        assert!((sigma_k_eigenvalue(&[1.0, 2.0], 2).unwrap() - four_pi2 * four_pi2 * 4.0).abs() < 1e-7);
        assert_eq!(sigma_k_eigenvalue(&[1.0, 0.0, 0.0], 2).unwrap(), 0.0);
        assert_eq!(sigma_k_eigenvalue(&[1.0, 0.0, 0.0], 3).unwrap(), 0.0);
    }

    #[test]
    fn k_out_of_range() {
        let f = FnField::new(2, |_: &[f64]| C64::new(1.0, 0.0));
        let cfg = StencilConfig::default();
        assert!(matches!(apply_sigma_k(&f, &[0.0, 0.0], 0, cfg), Err(Error::Index { .. })));
        assert!(matches!(apply_sigma_k(&f, &[0.0, 0.0], 3, cfg), Err(Error::Index { .. })));
        assert!(matches!(sigma_k_eigenvalue(&[1.0], 2), Err(Error::Index { .. })));
        assert!(StencilConfig::new(0.0).is_err());
    }

    #[test]
    fn second_order_convergence_in_three_dimensions() {
        let lambda = [1.7, -0.6, 1.2];
        let x = [0.42, 0.19, 0.83];
        for symmetry in [Symmetry::Sym, Symmetry::Anti] {
            let f = ExpFunction::new(symmetry, lambda.to_vec());
            let base = f.eval(&x);
            for k in 1..=3 {
                let target = base * sigma_k_eigenvalue(&lambda, k).unwrap();
                let cfg = StencilConfig::default();
                let e1 = (apply_sigma_k(&f, &x, k, cfg).unwrap() - target).norm() / target.norm();
                let e2 = (apply_sigma_k(&f, &x, k, cfg.halved()).unwrap() - target).norm() / target.norm();
                let ratio = e1 / e2;
                assert!(e1 < 1e-3, "{symmetry:?} k={k}: {e1}");
                assert!((3.5..=4.5).contains(&ratio), "{symmetry:?} k={k}: ratio {ratio}");
            }
        }
    }
}
