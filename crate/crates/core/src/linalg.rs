//! Dense complex matrices with determinant and permanent evaluation.

use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use crate::ddouble::ComplexDD;
use crate::{Error, Result, C64};

/// Largest order accepted by [`permanent_ryser`] (`2^n` subsets).
pub const MAX_PERMANENT: usize = 24;

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: alloc::vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    /// `A x`.
    pub fn mul_vec(&self, x: &[C64]) -> Result<Vec<C64>> {
        if x.len() != self.cols {
            return Err(Error::Shape {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Shape {
                expected: self.rows,
                found: self.cols,
            })
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Determinant by LU factorisation with partial pivoting, `O(n³)`.
pub fn det_lu(a: &ComplexMatrix) -> Result<C64> {
    a.require_square()?;
    let n = a.rows;
    let mut lu = a.data.clone();
    let mut det = C64::new(1.0, 0.0);
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| lu[i * n + k].norm_sqr().total_cmp(&lu[j * n + k].norm_sqr()))
            .unwrap();
        let p = lu[pivot * n + k];
        if p.norm_sqr() == 0.0 {
            return Ok(C64::new(0.0, 0.0));
        }
        if pivot != k {
            for j in 0..n {
                lu.swap(k * n + j, pivot * n + j);
            }
            det = -det;
        }
        det *= p;
        let inv = p.inv();
        for i in k + 1..n {
            let factor = lu[i * n + k] * inv;
            if factor.norm_sqr() == 0.0 {
                continue;
            }
            for j in k + 1..n {
                let u = lu[k * n + j];
                lu[i * n + j] -= factor * u;
            }
        }
    }
    Ok(det)
}

/// Permanent by Ryser's inclusion–exclusion formula, visiting column
/// subsets in Gray-code order so each step updates the row sums in `O(n)`.
pub fn permanent_ryser(a: &ComplexMatrix) -> Result<C64> {
    a.require_square()?;
    let n = a.rows;
    if n > MAX_PERMANENT {
        return Err(Error::SizeLimit {
            what: "Ryser permanent",
            size: n,
            max: MAX_PERMANENT,
        });
    }
    if n == 0 {
        return Ok(C64::new(1.0, 0.0));
    }
    let mut row_sums = alloc::vec![C64::new(0.0, 0.0); n];
    let mut in_subset = alloc::vec![false; n];
    let mut total = C64::new(0.0, 0.0);
    let mut subset_size = 0usize;
    for step in 1u64..(1u64 << n) {
        let col = step.trailing_zeros() as usize;
        if in_subset[col] {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s -= a[(i, col)];
            }
            subset_size -= 1;
        } else {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s += a[(i, col)];
            }
            subset_size += 1;
        }
        in_subset[col] = !in_subset[col];
        let prod: C64 = row_sums.iter().product();
        if (n - subset_size).is_multiple_of(2) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    Ok(total)
}

/// [`det_lu`] in double-double arithmetic on a row-major `n × n` matrix.
pub fn det_lu_extended(mut lu: Vec<ComplexDD>, n: usize) -> Result<ComplexDD> {
    if lu.len() != n * n {
        return Err(Error::Shape {
            expected: n * n,
            found: lu.len(),
        });
    }
    let one = ComplexDD::from(C64::new(1.0, 0.0));
    let mut det = one;
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| {
                let a = lu[i * n + k].norm_sqr().to_f64();
                let b = lu[j * n + k].norm_sqr().to_f64();
                a.total_cmp(&b)
            })
            .unwrap();
        let p = lu[pivot * n + k];
        if p.is_zero() {
            return Ok(ComplexDD::ZERO);
        }
        if pivot != k {
            for j in 0..n {
                lu.swap(k * n + j, pivot * n + j);
            }
            det = -det;
        }
        det = det * p;
        let inv = p.inv();
        for i in k + 1..n {
            let factor = lu[i * n + k] * inv;
            if factor.is_zero() {
                continue;
            }
            for j in k + 1..n {
                let u = lu[k * n + j];
                lu[i * n + j] = lu[i * n + j] - factor * u;
            }
        }
    }
    Ok(det)
}

/// [`permanent_ryser`] in double-double arithmetic on a row-major `n × n`
/// matrix.
pub fn permanent_ryser_extended(a: &[ComplexDD], n: usize) -> Result<ComplexDD> {
    if a.len() != n * n {
        return Err(Error::Shape {
            expected: n * n,
            found: a.len(),
        });
    }
    if n > MAX_PERMANENT {
        return Err(Error::SizeLimit {
            what: "Ryser permanent",
            size: n,
            max: MAX_PERMANENT,
        });
    }
    if n == 0 {
        return Ok(ComplexDD::from(C64::new(1.0, 0.0)));
    }
    let mut row_sums = alloc::vec![ComplexDD::ZERO; n];
    let mut in_subset = alloc::vec![false; n];
    let mut total = ComplexDD::ZERO;
    let mut subset_size = 0usize;
    for step in 1u64..(1u64 << n) {
        let col = step.trailing_zeros() as usize;
        let adding = !in_subset[col];
        for (i, s) in row_sums.iter_mut().enumerate() {
            *s = if adding { *s + a[i * n + col] } else { *s - a[i * n + col] };
        }
        if adding {
            subset_size += 1;
        } else {
            subset_size -= 1;
        }
        in_subset[col] = adding;
        let prod = row_sums[1..].iter().fold(row_sums[0], |acc, &s| acc * s);
        total = if (n - subset_size).is_multiple_of(2) { total + prod } else { total - prod };
    }
    Ok(total)
}
