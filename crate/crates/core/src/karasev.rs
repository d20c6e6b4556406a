//! The realization obtained by inverting the averaged flow.
//!
//! With `V̄ = −π^{ij} p_i ∂_{x^j}` and `φ^i = Σ_n ε^n/(n+1)! L_{V̄}^n(x^i)`,
//! the series `α = x + ε α_(1) + ⋯` solving `φ(α(x, p), p) = x` is found
//! order by order:
//!
//! ```text
//! α_(N)^i = −L_{V̄}^N(x^i)/(N+1)!
//!           − Σ_{n=1}^{N−1} Σ_{m=1}^{N−n} 1/((n+1)! m!)
//!             Σ_{r₁+⋯+r_m = N−n, r_l ≥ 1} Σ_{i₁..i_m}
//!               α_(r₁)^{i₁} ⋯ α_(r_m)^{i_m} ∂^m(L_{V̄}^n x^i)/∂x^{i₁}⋯∂x^{i_m}
//! ```
//!
//! This route never touches trees or weights, which makes it an independent
//! check on the tree expansion in [`crate::realization`].

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::arith::{factorial, series_compose, FormalSeries, PhasePoly, Rational};
use crate::poisson::{spray, PoissonStructure, SpraySign};
use crate::realization::{MapKind, RealizationSeries};
use crate::{Error, Result};

/// `L_{V̄}^n(x^i)` for `0 ≤ n ≤ N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowIterates {
    table: Vec<Vec<PhasePoly>>,
}

impl FlowIterates {
    pub fn get(&self, n: usize, i: usize) -> &PhasePoly {
        &self.table[n][i]
    }

    pub fn max_order(&self) -> usize {
        self.table.len() - 1
    }
}

pub fn lie_iterates(pi: &PoissonStructure, order: usize) -> Result<FlowIterates> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    let d = pi.dimension();
    let vbar = spray(pi, SpraySign::Reverse);
    let mut table: Vec<Vec<PhasePoly>> = Vec::with_capacity(order + 1);
    table.push((0..d).map(|i| PhasePoly::x(d, i)).collect());
    for n in 1..=order {
        let next = table[n - 1]
            .iter()
            .map(|g| vbar.lie_derivative(g))
            .collect();
        table.push(next);
    }
    Ok(FlowIterates { table })
}

/// `φ^i = Σ_{n ≤ order} ε^n/(n+1)! L_{V̄}^n(x^i)`.
pub fn phi_series(pi: &PoissonStructure, order: usize) -> Result<FormalSeries> {
    let it = lie_iterates(pi, order)?;
    phi_from_iterates(&it, pi.dimension())
}

fn phi_from_iterates(it: &FlowIterates, d: usize) -> Result<FormalSeries> {
    let coeffs = it
        .table
        .iter()
        .enumerate()
        .map(|(n, row)| {
            let c = Rational::new(BigInt::from(1), factorial(n + 1));
            row.iter().map(|g| g.scale(&c)).collect()
        })
        .collect();
    FormalSeries::from_coeffs(d, coeffs)
}

/// Mixed `x`-partials of the flow iterates, keyed by `(n, i, sorted indices)`.
struct DerivativeCache<'a> {
    iterates: &'a FlowIterates,
    table: BTreeMap<(usize, usize, Vec<usize>), PhasePoly>,
}

impl DerivativeCache<'_> {
    fn get(&mut self, n: usize, i: usize, indices: &[usize]) -> PhasePoly {
        if indices.is_empty() {
            return self.iterates.get(n, i).clone();
        }
        let mut key = indices.to_vec();
        key.sort_unstable();
        if let Some(p) = self.table.get(&(n, i, key.clone())) {
            return p.clone();
        }
        let (last, rest) = key.split_last().expect("nonempty");
        let v = self.get(n, i, rest).partial_x(*last);
        self.table.insert((n, i, key), v.clone());
        v
    }
}

struct Recursion<'a> {
    dim: usize,
    alpha: &'a [Vec<PhasePoly>],
    derivs: DerivativeCache<'a>,
}

impl Recursion<'_> {
    /// Sum over ordered `(r_l, i_l)` for positions `pos..m`, with
    /// `Σ r_l = budget` over the remaining positions.
    #[allow(clippy::too_many_arguments)]
    fn tuples(
        &mut self,
        n: usize,
        i: usize,
        m: usize,
        indices: &mut Vec<usize>,
        budget: usize,
        prod: &PhasePoly,
        acc: &mut PhasePoly,
    ) {
        let pos = indices.len();
        if pos == m {
            if budget == 0 {
                let dv = self.derivs.get(n, i, indices);
                *acc += &(prod * &dv);
            }
            return;
        }
        let slots_after = m - pos - 1;
        if budget < slots_after + 1 {
            return;
        }
        for idx in 0..self.dim {
            indices.push(idx);
            if !self.derivs.get(n, i, indices).is_zero() {
                for r in 1..=budget - slots_after {
                    let a = &self.alpha[r][idx];
                    if a.is_zero() {
                        continue;
                    }
                    let next = prod * a;
                    self.tuples(n, i, m, indices, budget - r, &next, acc);
                }
            }
            indices.pop();
        }
    }
}

/// Solves for `α_(1) .. α_(order)` by the order-by-order recursion.
pub fn karasev_series(pi: &PoissonStructure, order: usize) -> Result<RealizationSeries> {
    let d = pi.dimension();
    let it = lie_iterates(pi, order)?;
    let mut alpha: Vec<Vec<PhasePoly>> = Vec::with_capacity(order + 1);
    alpha.push((0..d).map(|i| PhasePoly::x(d, i)).collect());

    for big_n in 1..=order {
        let mut row = Vec::with_capacity(d);
        let mut rec = Recursion {
            dim: d,
            alpha: &alpha,
            derivs: DerivativeCache {
                iterates: &it,
                table: BTreeMap::new(),
            },
        };
        for i in 0..d {
            let lead = Rational::new(BigInt::from(-1), factorial(big_n + 1));
            let mut value = it.get(big_n, i).scale(&lead);
            for n in 1..big_n {
                for m in 1..=big_n - n {
                    let mut acc = PhasePoly::zero(d);
                    let mut indices = Vec::with_capacity(m);
                    rec.tuples(
                        n,
                        i,
                        m,
                        &mut indices,
                        big_n - n,
                        &PhasePoly::one(d),
                        &mut acc,
                    );
                    if acc.is_zero() {
                        continue;
                    }
                    let c = Rational::new(BigInt::from(-1), factorial(n + 1) * factorial(m));
                    value += &acc.scale(&c);
                }
            }
            row.push(value);
        }
        alpha.push(row);
    }
    Ok(RealizationSeries {
        kind: MapKind::Karasev,
        series: FormalSeries::from_coeffs(d, alpha)?,
    })
}

/// Residuals of `φ(α(x, p), p) − x`, keyed by `(component, order)` for
/// orders `0..=order`.
pub fn h1_residual(
    pi: &PoissonStructure,
    alpha: &FormalSeries,
    order: usize,
) -> Result<BTreeMap<(usize, usize), PhasePoly>> {
    let d = pi.dimension();
    if alpha.dimension() != d {
        return Err(Error::DimensionMismatch {
            left: alpha.dimension(),
            right: d,
        });
    }
    if order > alpha.max_order() {
        return Err(Error::OrderExceedsSeries {
            requested: order,
            available: alpha.max_order(),
        });
    }
    let phi = phi_series(pi, order.max(1))?;
    let mut out = BTreeMap::new();
    for i in 0..d {
        let mut total: Vec<PhasePoly> = (0..=order).map(|_| PhasePoly::zero(d)).collect();
        for n in 0..=order {
            let f = phi.coeff(n, i);
            if f.is_zero() {
                continue;
            }
            let composed = series_compose(f, alpha, order - n)?;
            for (k, c) in composed.iter().enumerate() {
                total[n + k] += c;
            }
        }
        total[0] -= &PhasePoly::x(d, i);
        for (k, r) in total.into_iter().enumerate() {
            out.insert((i, k), r);
        }
    }
    Ok(out)
}

/// Builds `α` through `order` and returns its `φ(α) − x` residuals.
pub fn verify_h1(
    pi: &PoissonStructure,
    order: usize,
) -> Result<BTreeMap<(usize, usize), PhasePoly>> {
    let alpha = karasev_series(pi, order)?;
    h1_residual(pi, &alpha.series, order)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesComparison {
    Equal,
    /// First differing coefficient in (order, component) order; `difference`
    /// is `a − b`.
    Differs {
        order: usize,
        component: usize,
        difference: PhasePoly,
    },
}

impl SeriesComparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, SeriesComparison::Equal)
    }
}

/// Exact coefficient-wise comparison through `order`.
pub fn compare_series(
    a: &FormalSeries,
    b: &FormalSeries,
    order: usize,
) -> Result<SeriesComparison> {
    if a.dimension() != b.dimension() {
        return Err(Error::DimensionMismatch {
            left: a.dimension(),
            right: b.dimension(),
        });
    }
    let available = a.max_order().min(b.max_order());
    if order > available {
        return Err(Error::OrderExceedsSeries {
            requested: order,
            available,
        });
    }
    for n in 0..=order {
        for (component, (ca, cb)) in a.order(n).iter().zip(b.order(n)).enumerate() {
            if ca != cb {
                return Ok(SeriesComparison::Differs {
                    order: n,
                    component,
                    difference: ca - cb,
                });
            }
        }
    }
    Ok(SeriesComparison::Equal)
}
