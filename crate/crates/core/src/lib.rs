//! Symmetric and antisymmetric multivariate exponential functions
//!
//! For a weight `λ = (λ_1, …, λ_n)` and a point `x = (x_1, …, x_n)` the
//! functions
//!
//! ```text
//! E⁺_λ(x) = perm(e^{2πi λ_i x_j}),    E⁻_λ(x) = det(e^{2πi λ_i x_j})
//! ```
//!
//! are invariant (resp. alternating) under the symmetric group `S_n`. This
//! crate evaluates them, and builds on them the three families of Fourier
//! transforms they define: series expansions on the fundamental domain of the
//! affine symmetric group ([`fourier_series`]), integral transforms with
//! Hermite-Gaussian eigenfunctions ([`hermite`]), and the finite transforms
//! on ordered grids ([`discrete_ft`]).
//!
//! The crate is `no_std` and needs only `alloc`. File formats, the command
//! line tool and the verification reports live in the `symxform` crate.

#![no_std]

extern crate alloc;

pub mod ddouble;
pub mod diffops;
pub mod discrete_ft;
mod error;
pub mod expfun;
pub mod fourier_series;
pub mod hermite;
pub mod linalg;
pub mod symgroup;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;

/// Symmetry class of an exponential function or of a transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symmetry {
    /// Invariant under permutations: `E⁺`.
    Sym,
    /// Alternating under permutations: `E⁻`.
    Anti,
}

impl Symmetry {
    /// `+1` for the symmetric class; the permutation sign for the
    /// antisymmetric class.
    #[inline]
    pub fn character(self, sign: i8) -> f64 {
        match self {
            Symmetry::Sym => 1.0,
            Symmetry::Anti => f64::from(sign),
        }
    }
}

/// `2π` in double precision.
pub(crate) const TAU: f64 = core::f64::consts::TAU;

/// `e^{2πi t}`.
#[inline]
pub(crate) fn cis_turns(t: f64) -> C64 {
    let (s, c) = libm::sincos(TAU * t);
    C64::new(c, s)
}
