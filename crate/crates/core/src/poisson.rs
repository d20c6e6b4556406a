//! Polynomial Poisson bivectors on `R^d` and their flat sprays.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::arith::{PhasePoly, Rational};
use crate::{Error, Result};

/// An antisymmetric bivector `π^{ij}(x)` with polynomial entries.
///
/// Only the strict upper triangle is stored; `π^{ji} = −π^{ij}` and
/// `π^{ii} = 0` hold by construction. Indices are zero-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonStructure {
    dim: usize,
    upper: BTreeMap<(usize, usize), PhasePoly>,
}

impl PoissonStructure {
    /// Builds a structure from upper-triangular entries `(i, j, π^{ij})` with
    /// `i < j`. Entries must not depend on momenta; zero entries may be
    /// omitted.
    pub fn new<I>(dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, PhasePoly)>,
    {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut upper = BTreeMap::new();
        for (i, j, poly) in entries {
            if i >= dim || j >= dim {
                return Err(Error::PoissonIndexOutOfRange {
                    i,
                    j,
                    dimension: dim,
                });
            }
            if i >= j {
                return Err(Error::NotUpperTriangular { i, j });
            }
            if poly.dimension() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: poly.dimension(),
                });
            }
            if poly.depends_on_p() {
                return Err(Error::MomentumInPoissonEntry { i, j });
            }
            if upper.contains_key(&(i, j)) {
                return Err(Error::DuplicatePoissonEntry { i, j });
            }
            if !poly.is_zero() {
                upper.insert((i, j), poly);
            }
        }
        Ok(PoissonStructure { dim, upper })
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    /// `π^{ij}` for any `i, j < d`.
    pub fn entry(&self, i: usize, j: usize) -> PhasePoly {
        match i.cmp(&j) {
            core::cmp::Ordering::Less => self
                .upper
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| PhasePoly::zero(self.dim)),
            core::cmp::Ordering::Greater => -&self.entry(j, i),
            core::cmp::Ordering::Equal => PhasePoly::zero(self.dim),
        }
    }

    /// The nonzero stored entries `(i, j, π^{ij})`, `i < j`.
    pub fn upper_entries(&self) -> impl Iterator<Item = (usize, usize, &PhasePoly)> {
        self.upper.iter().map(|(&(i, j), p)| (i, j, p))
    }

    /// Whether every entry is homogeneous of degree one in `x` (a Lie–Poisson
    /// structure).
    pub fn is_linear(&self) -> bool {
        self.check_linear().is_ok()
    }

    pub fn check_linear(&self) -> Result<()> {
        match self.upper.iter().find(|(_, p)| !p.is_x_homogeneous(1)) {
            Some((&(i, j), _)) => Err(Error::NotLinear { i, j }),
            None => Ok(()),
        }
    }
}

/// `Σ_l (π^{il}∂_l π^{jk} + π^{jl}∂_l π^{ki} + π^{kl}∂_l π^{ij})`.
pub fn jacobiator(pi: &PoissonStructure, i: usize, j: usize, k: usize) -> PhasePoly {
    let mut out = PhasePoly::zero(pi.dim);
    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
        let target = pi.entry(b, c);
        if target.is_zero() {
            continue;
        }
        for l in 0..pi.dim {
            let lead = pi.entry(a, l);
            if lead.is_zero() {
                continue;
            }
            out += &(&lead * &target.partial_x(l));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JacobiReport {
    Holds,
    /// First triple `i < j < k` with a nonzero Jacobiator.
    Fails {
        triple: (usize, usize, usize),
        residual: PhasePoly,
    },
}

impl JacobiReport {
    pub fn holds(&self) -> bool {
        matches!(self, JacobiReport::Holds)
    }
}

/// Checks the Jacobi identity symbolically on every triple `i < j < k`.
pub fn jacobi_check(pi: &PoissonStructure) -> JacobiReport {
    let d = pi.dim;
    for i in 0..d {
        for j in i + 1..d {
            for k in j + 1..d {
                let r = jacobiator(pi, i, j, k);
                if !r.is_zero() {
                    return JacobiReport::Fails {
                        triple: (i, j, k),
                        residual: r,
                    };
                }
            }
        }
    }
    JacobiReport::Holds
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpraySign {
    /// `V = π^{ij} p_i ∂_{x^j}`
    Forward,
    /// `V̄ = −π^{ij} p_i ∂_{x^j}`
    Reverse,
}

/// A vector field on `R^d` depending polynomially on the momenta, acting on
/// the `x` coordinates only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SprayField {
    components: Vec<PhasePoly>,
    sign: SpraySign,
}

impl SprayField {
    pub fn components(&self) -> &[PhasePoly] {
        &self.components
    }

    pub fn sign(&self) -> SpraySign {
        self.sign
    }

    pub fn dimension(&self) -> usize {
        self.components.len()
    }

    /// `Σ_j X^j ∂g/∂x^j`, momenta held fixed.
    pub fn lie_derivative(&self, g: &PhasePoly) -> PhasePoly {
        let mut out = PhasePoly::zero(g.dimension());
        for (j, xj) in self.components.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            let dg = g.partial_x(j);
            if !dg.is_zero() {
                out += &(xj * &dg);
            }
        }
        out
    }
}

/// The flat spray: component `j` is `sign · Σ_i π^{ij}(x) p_i`.
pub fn spray(pi: &PoissonStructure, sign: SpraySign) -> SprayField {
    let d = pi.dim;
    let s = match sign {
        SpraySign::Forward => Rational::from_integer(1.into()),
        SpraySign::Reverse => Rational::from_integer((-1).into()),
    };
    let components: Vec<PhasePoly> = (0..d)
        .map(|j| {
            let mut c = PhasePoly::zero(d);
            for i in 0..d {
                let e = pi.entry(i, j);
                if !e.is_zero() {
                    c += &(&e * &PhasePoly::p(d, i));
                }
            }
            c.scale(&s)
        })
        .collect();
    debug_assert!(components.iter().all(|c| c.is_p_homogeneous(1)));
    SprayField { components, sign }
}
