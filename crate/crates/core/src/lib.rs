//! Formal symplectic realizations of polynomial Poisson structures on `R^d`.
//!
//! Given an antisymmetric polynomial bivector `π^{ij}(x)`, this crate computes
//! the source map
//!
//! ```text
//! s^i(x, p) = x^i + Σ_t ε^{|t|} (W_t / σ(t)) D_t^i V
//! ```
//!
//! as a truncated power series in `ε`, where `t` ranges over topological rooted
//! trees, `W_t` are tree weights obtained from a recursion on angle
//! polynomials, `σ(t)` is the order of the automorphism group of `t` and
//! `D_t^i V` is the elementary differential of the spray `V = π^{ij}(x) p_i ∂_j`.
//!
//! The same series is computed independently by solving the inversion
//! identity `φ_ε(α_ε(x, p), p) = x` order by order ([`karasev`]), and every
//! result can be checked exactly against the Poisson-map identity
//! `{s^i, s^j} = ε π^{ij}(s)` ([`realization::realization_residual`]).
//!
//! All arithmetic is exact over the rationals. The crate is `no_std` and only
//! needs `alloc`; file formats and the command-line tool live in the `symreal`
//! crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod bernoulli;
pub mod elemdiff;
mod error;
pub mod karasev;
pub mod poisson;
pub mod realization;
pub mod trees;
pub mod weights;

pub use arith::{
    format_rational, parse_rational, series_compose, FormalSeries, PhasePoly, Rational, UniPoly,
    Var,
};
pub use error::{Error, Result};
pub use poisson::{jacobi_check, spray, JacobiReport, PoissonStructure, SprayField, SpraySign};
pub use realization::{MapKind, RealizationSeries};
pub use trees::{enumerate_trees, RootedTree};
