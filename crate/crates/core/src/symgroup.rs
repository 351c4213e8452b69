//! Combinatorics of the symmetric group `S_n` and its affine extension.
//!
//! Permutations are stored 0-based. A permutation `w` acts on a tuple `v` by
//! `(w·v)_i = v_{w(i)}`; with this convention `E⁻_λ(w·x) = sign(w) E⁻_λ(x)`.

use alloc::vec::Vec;
use core::ops::Deref;

use crate::{Error, Result};

/// Largest `n` for which `S_n` may be enumerated.
pub const MAX_ENUMERATION: usize = 10;

/// A permutation of `{0, …, n-1}` with its sign cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    mapping: Vec<usize>,
    sign: i8,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            mapping: (0..n).collect(),
            sign: 1,
        }
    }

    /// Builds a permutation from a 0-based mapping, rejecting non-bijections.
    pub fn from_mapping(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = alloc::vec![false; n];
        for &i in &mapping {
            if i >= n || seen[i] {
                return Err(Error::Invalid("mapping is not a bijection"));
            }
            seen[i] = true;
        }
        let sign = inversion_sign(&mapping);
        Ok(Permutation { mapping, sign })
    }

    /// Builds a permutation from the 1-based notation `(w(1), …, w(n))`.
    pub fn from_one_based(mapping: &[usize]) -> Result<Self> {
        let zero: Option<Vec<usize>> = mapping.iter().map(|&i| i.checked_sub(1)).collect();
        Self::from_mapping(zero.ok_or(Error::Invalid("mapping is not a bijection"))?)
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.mapping.iter().map(|i| i + 1).collect()
    }

    /// `det w`, i.e. `(-1)^{inversions}`.
    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "composing permutations of different degree");
        Permutation {
            mapping: other.mapping.iter().map(|&i| self.mapping[i]).collect(),
            sign: self.sign * other.sign,
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = alloc::vec![0; self.len()];
        for (i, &j) in self.mapping.iter().enumerate() {
            inv[j] = i;
        }
        Permutation {
            mapping: inv,
            sign: self.sign,
        }
    }

    /// Returns `w·v` with `(w·v)_i = v_{w(i)}`.
    pub fn apply<T: Copy>(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.len(), v.len(), "permutation degree differs from tuple length");
        self.mapping.iter().map(|&i| v[i]).collect()
    }

    /// The transposition of positions `i` and `j` in `S_n`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Permutation {
        let mut mapping: Vec<usize> = (0..n).collect();
        mapping.swap(i, j);
        Permutation {
            mapping,
            sign: if i == j { 1 } else { -1 },
        }
    }
}

fn inversion_sign(mapping: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..mapping.len() {
        for j in i + 1..mapping.len() {
            if mapping[i] > mapping[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All `n!` permutations of `S_n` in lexicographic order of their mappings.
pub fn enumerate_permutations(n: usize) -> Result<Vec<Permutation>> {
    if n == 0 || n > MAX_ENUMERATION {
        return Err(Error::SizeLimit {
            what: "permutation enumeration",
            size: n,
            max: MAX_ENUMERATION,
        });
    }
    let mut out = Vec::with_capacity(factorial(n) as usize);
    let mut current: Vec<usize> = (0..n).collect();
    let mut sign = 1i8;
    loop {
        out.push(Permutation {
            mapping: current.clone(),
            sign,
        });
        // next permutation in lexicographic order
        let Some(pivot) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1])
        else {
            break;
        };
        let successor = (pivot + 1..n).rev().find(|&j| current[j] > current[pivot]).unwrap();
        current.swap(pivot, successor);
        current[pivot + 1..].reverse();
        // one swap plus the reversal of a suffix of length L, which is L(L-1)/2 swaps
        let tail = n - pivot - 1;
        let swaps = 1 + tail * (tail.saturating_sub(1)) / 2;
        if swaps % 2 == 1 {
            sign = -sign;
        }
    }
    Ok(out)
}

/// The order-reversing permutation `w_0`.
pub fn longest_element(n: usize) -> Permutation {
    let mapping: Vec<usize> = (0..n).rev().collect();
    let pairs = n * n.saturating_sub(1) / 2;
    Permutation {
        mapping,
        sign: if pairs.is_multiple_of(2) { 1 } else { -1 },
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Dominance class of a weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dominance {
    /// `λ_1 > λ_2 > … > λ_n`.
    Strict,
    /// `λ_1 ≥ … ≥ λ_n` with at least one equality.
    Weak,
    /// Not sorted.
    None,
}

impl Dominance {
    pub fn classify(entries: &[f64]) -> Dominance {
        let mut strict = true;
        for pair in entries.windows(2) {
            if pair[0] < pair[1] || pair[0].is_nan() || pair[1].is_nan() {
                return Dominance::None;
            }
            if pair[0] == pair[1] {
                strict = false;
            }
        }
        if strict {
            Dominance::Strict
        } else {
            Dominance::Weak
        }
    }

    /// Strictly or weakly dominant.
    pub fn is_dominant(self) -> bool {
        self != Dominance::None
    }
}

/// A real `n`-tuple indexing an exponential function.
#[derive(Debug, Clone, PartialEq)]
pub struct Weight {
    entries: Vec<f64>,
    dominance: Dominance,
}

impl Weight {
    pub fn new(entries: Vec<f64>) -> Self {
        let dominance = Dominance::classify(&entries);
        Weight { entries, dominance }
    }

    pub fn from_integers(entries: &[i64]) -> Self {
        Weight::new(entries.iter().map(|&m| m as f64).collect())
    }

    pub fn dominance(&self) -> Dominance {
        self.dominance
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<f64> {
        self.entries
    }

    /// `|λ| = Σ λ_i`.
    pub fn total(&self) -> f64 {
        self.entries.iter().sum()
    }
}

impl Deref for Weight {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.entries
    }
}

/// A point of `E_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Point { coords }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    /// `|x| = Σ x_i`, the parameter of the hyperplane `H_b` through `x`.
    pub fn total(&self) -> f64 {
        self.coords.iter().sum()
    }

    /// True when two coordinates coincide exactly.
    pub fn on_wall(&self) -> bool {
        has_repeats(&self.coords)
    }
}

impl Deref for Point {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.coords
    }
}

fn has_repeats(v: &[f64]) -> bool {
    (0..v.len()).any(|i| (i + 1..v.len()).any(|j| v[i] == v[j]))
}

/// The permutation `w` with `w·v` sorted non-increasingly; ties keep their
/// original relative order.
pub fn sorting_permutation(v: &[f64]) -> Permutation {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| v[b].total_cmp(&v[a]));
    let sign = inversion_sign(&order);
    Permutation {
        mapping: order,
        sign,
    }
}

/// Sorts `v` into non-increasing order and returns the sign of the sorting
/// permutation. With `strict_required`, exactly repeated entries are an
/// error.
pub fn dominant_sort(v: &[f64], strict_required: bool) -> Result<(Weight, i8)> {
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::Invalid("weight entries must be finite"));
    }
    if strict_required && has_repeats(v) {
        return Err(Error::DegenerateWeight);
    }
    let w = sorting_permutation(v);
    Ok((Weight::new(w.apply(v)), w.sign()))
}

/// `|S_m|`: the number of permutations fixing `m`, i.e. the product of the
/// factorials of the entry multiplicities.
pub fn stabilizer_order(m: &[f64]) -> u64 {
    let mut sorted: Vec<f64> = m.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut order = 1u64;
    let mut run = 1usize;
    for i in 1..=sorted.len() {
        if i < sorted.len() && sorted[i] == sorted[i - 1] {
            run += 1;
        } else {
            order *= factorial(run);
            run = 1;
        }
    }
    order
}

/// Integer-keyed variant of [`stabilizer_order`].
pub fn stabilizer_order_int<T: Ord + Copy>(m: &[T]) -> u64 {
    let mut sorted: Vec<T> = m.to_vec();
    sorted.sort_unstable();
    let mut order = 1u64;
    let mut run = 1usize;
    for i in 1..=sorted.len() {
        if i < sorted.len() && sorted[i] == sorted[i - 1] {
            run += 1;
        } else {
            order *= factorial(run);
            run = 1;
        }
    }
    order
}

/// Maps `x` into the closure of the fundamental domain of `S_n^aff`:
/// coordinates are replaced by their fractional parts `x - ⌊x⌋` and sorted
/// non-increasingly. Returns the reduced point and the sorting permutation.
pub fn reduce_to_affine_fundamental(x: &[f64]) -> (Point, Permutation) {
    let frac: Vec<f64> = x
        .iter()
        .map(|&v| {
            let f = v - libm::floor(v);
            // v slightly below an integer can round up to exactly 1.0
            if f >= 1.0 {
                0.0
            } else {
                f
            }
        })
        .collect();
    let w = sorting_permutation(&frac);
    (Point::new(w.apply(&frac)), w)
}

/// True when `x` lies in `F(S_n^aff)`: `1 > x_1 > … > x_n > 0`.
pub fn in_affine_fundamental_domain(x: &[f64]) -> bool {
    match (x.first(), x.last()) {
        (Some(&first), Some(&last)) => {
            first < 1.0 && last > 0.0 && Dominance::classify(x) == Dominance::Strict
        }
        _ => false,
    }
}
