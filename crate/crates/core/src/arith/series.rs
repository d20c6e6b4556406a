use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{PhasePoly, Rational};
use crate::{Error, Result};

/// A `d`-vector of power series in `ε`, truncated at `max_order`.
///
/// `coeffs[n][i]` is the `ε^n` coefficient of component `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSeries {
    dim: usize,
    coeffs: Vec<Vec<PhasePoly>>,
}

impl FormalSeries {
    /// The series `x + 0·ε + ⋯ + 0·ε^N`.
    pub fn identity(dim: usize, max_order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(max_order + 1);
        coeffs.push((0..dim).map(|i| PhasePoly::x(dim, i)).collect());
        for _ in 0..max_order {
            coeffs.push((0..dim).map(|_| PhasePoly::zero(dim)).collect());
        }
        FormalSeries { dim, coeffs }
    }

    /// Builds a series from per-order coefficient vectors; every vector must
    /// have `dim` entries of dimension `dim`.
    pub fn from_coeffs(dim: usize, coeffs: Vec<Vec<PhasePoly>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        for row in &coeffs {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: row.len(),
                });
            }
            if let Some(p) = row.iter().find(|p| p.dimension() != dim) {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: p.dimension(),
                });
            }
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroOrder);
        }
        Ok(FormalSeries { dim, coeffs })
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn max_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The `ε^n` coefficient vector. Panics if `n > max_order`.
    pub fn order(&self, n: usize) -> &[PhasePoly] {
        &self.coeffs[n]
    }

    pub fn coeff(&self, n: usize, component: usize) -> &PhasePoly {
        &self.coeffs[n][component]
    }

    pub fn coeff_mut(&mut self, n: usize, component: usize) -> &mut PhasePoly {
        &mut self.coeffs[n][component]
    }

    /// The scalar series `Σ_n ε^n s^i_(n)` of one component.
    pub fn component(&self, i: usize) -> Vec<PhasePoly> {
        self.coeffs.iter().map(|row| row[i].clone()).collect()
    }

    pub fn orders(&self) -> impl Iterator<Item = &[PhasePoly]> {
        self.coeffs.iter().map(Vec::as_slice)
    }

    /// Keeps orders `0..=n`.
    pub fn truncate(&mut self, n: usize) {
        self.coeffs.truncate(n + 1);
    }

    /// Checks that the order-0 coefficient is `(x¹, .., x^d)`.
    pub fn check_identity_at_zero(&self) -> Result<()> {
        for (i, c) in self.coeffs[0].iter().enumerate() {
            if *c != PhasePoly::x(self.dim, i) {
                return Err(Error::NotIdentityAtOrderZero { component: i });
            }
        }
        Ok(())
    }

    /// Applies `p ↦ −p` to every coefficient.
    pub fn flip_momenta(&self) -> FormalSeries {
        FormalSeries {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(PhasePoly::flip_momenta).collect())
                .collect(),
        }
    }
}

/// Product of two scalar `ε`-series, keeping orders `0..=n`. Missing orders
/// count as zero.
pub fn truncated_product(a: &[PhasePoly], b: &[PhasePoly], n: usize, dim: usize) -> Vec<PhasePoly> {
    let mut out: Vec<PhasePoly> = (0..=n).map(|_| PhasePoly::zero(dim)).collect();
    for (i, ai) in a.iter().enumerate().take(n + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n + 1 - i) {
            if !bj.is_zero() {
                out[i + j] += &(ai * bj);
            }
        }
    }
    out
}

/// Formal composition `f(s(x, p), p)` truncated at `ε^n`.
///
/// Writing `s = x + δ` with `δ = O(ε)`, this is the Taylor sum
/// `Σ_α (δ^α / α!) ∂^α_x f` over multi-indices `α`; the momenta in `f` are
/// parameters and are not differentiated. Returns one polynomial per order.
pub fn series_compose(f: &PhasePoly, s: &FormalSeries, n: usize) -> Result<Vec<PhasePoly>> {
    let dim = s.dimension();
    if f.dimension() != dim {
        return Err(Error::DimensionMismatch {
            left: f.dimension(),
            right: dim,
        });
    }
    if n > s.max_order() {
        return Err(Error::OrderExceedsSeries {
            requested: n,
            available: s.max_order(),
        });
    }
    s.check_identity_at_zero()?;

    let deltas: Vec<Vec<PhasePoly>> = (0..dim)
        .map(|j| {
            let mut c = s.component(j);
            c.truncate(n + 1);
            c[0] = PhasePoly::zero(dim);
            c
        })
        .collect();

    let mut acc: Vec<PhasePoly> = (0..=n).map(|_| PhasePoly::zero(dim)).collect();
    let mut unit: Vec<PhasePoly> = (0..=n).map(|_| PhasePoly::zero(dim)).collect();
    unit[0] = PhasePoly::one(dim);
    let mut ctx = ComposeCtx {
        deltas: &deltas,
        n,
        dim,
        acc: &mut acc,
    };
    ctx.walk(0, f.clone(), unit, n);
    Ok(acc)
}

struct ComposeCtx<'a> {
    deltas: &'a [Vec<PhasePoly>],
    n: usize,
    dim: usize,
    acc: &'a mut Vec<PhasePoly>,
}

impl ComposeCtx<'_> {
    /// Chooses the exponent of `δ^var` and recurses on the next variable.
    /// `deriv` is `∂^α f` and `weight` is `δ^α / α!` for the exponents fixed
    /// so far; `budget` bounds the remaining total exponent.
    fn walk(&mut self, var: usize, deriv: PhasePoly, weight: Vec<PhasePoly>, budget: usize) {
        if var == self.dim {
            for (k, w) in weight.iter().enumerate() {
                if !w.is_zero() {
                    self.acc[k] += &(&deriv * w);
                }
            }
            return;
        }
        let mut deriv = deriv;
        let mut weight = weight;
        let mut a = 0usize;
        loop {
            self.walk(var + 1, deriv.clone(), weight.clone(), budget - a);
            a += 1;
            if a > budget {
                break;
            }
            deriv = deriv.partial_x(var);
            if deriv.is_zero() {
                break;
            }
            let inv = Rational::new(BigInt::from(1), BigInt::from(a));
            weight = truncated_product(&weight, &self.deltas[var], self.n, self.dim)
                .iter()
                .map(|w| w.scale(&inv))
                .collect();
            if weight.iter().all(PhasePoly::is_zero) {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use alloc::vec;

    fn x(i: usize) -> PhasePoly {
        PhasePoly::x(2, i)
    }
    fn p(i: usize) -> PhasePoly {
        PhasePoly::p(2, i)
    }

    fn series_with(component: usize, order: usize, c: PhasePoly, max: usize) -> FormalSeries {
        let mut s = FormalSeries::identity(2, max);
        *s.coeff_mut(order, component) = c;
        s
    }

    #[test]
    fn coordinate_function_reproduces_component() {
        let mut s = FormalSeries::identity(2, 3);
        *s.coeff_mut(1, 0) = &x(1) * &p(0);
        *s.coeff_mut(3, 0) = p(1).pow(3);
        let got = series_compose(&x(0), &s, 3).unwrap();
        assert_eq!(got, s.component(0));
    }

    #[test]
    fn linear_shift() {
        let a = &x(1) * &p(1);
        let s = series_with(0, 1, a.clone(), 1);
        assert_eq!(series_compose(&x(0), &s, 1).unwrap(), vec![x(0), a]);
    }

    #[test]
    fn square_of_shifted_coordinate() {
        // (x¹ + εp₁)² = (x¹)² + 2εx¹p₁ + ε²p₁²
        let s = series_with(0, 1, p(0), 2);
        let got = series_compose(&x(0).pow(2), &s, 2).unwrap();
        assert_eq!(
            got,
            vec![x(0).pow(2), (&x(0) * &p(0)).scale(&rat(2, 1)), p(0).pow(2)]
        );
    }

    #[test]
    fn identity_series_leaves_f_alone() {
        let f = &(&x(0).pow(3) * &x(1)) + &p(0);
        let got = series_compose(&f, &FormalSeries::identity(2, 4), 4).unwrap();
        assert_eq!(got[0], f);
        assert!(got[1..].iter().all(PhasePoly::is_zero));
    }

    #[test]
    fn rejects_non_identity_base() {
        let s = series_with(1, 0, p(0), 2);
        assert_eq!(
            series_compose(&x(0), &s, 2),
            Err(Error::NotIdentityAtOrderZero { component: 1 })
        );
    }

    #[test]
    fn rejects_order_beyond_truncation() {
        let s = FormalSeries::identity(2, 2);
        assert!(matches!(
            series_compose(&x(0), &s, 3),
            Err(Error::OrderExceedsSeries { .. })
        ));
    }

    #[test]
    fn truncated_product_drops_high_orders() {
        let a = vec![PhasePoly::one(2), x(0)];
        let got = truncated_product(&a, &a, 1, 2);
        assert_eq!(got, vec![PhasePoly::one(2), x(0).scale(&rat(2, 1))]);
    }
}
