//! Source and target maps of the formal realization from the tree expansion,
//! together with the exact identities they must satisfy.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{factorial, series_compose, FormalSeries, PhasePoly, Rational};
use crate::bernoulli::bernoulli_numbers;
use crate::elemdiff::ElementaryDifferentials;
use crate::poisson::{spray, PoissonStructure, SpraySign};
use crate::trees::enumerate_trees;
use crate::weights::AngleMemo;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MapKind {
    Source,
    Target,
    Karasev,
}

impl MapKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MapKind::Source => "source",
            MapKind::Target => "target",
            MapKind::Karasev => "karasev",
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for MapKind {
    type Err = ();
    fn from_str(s: &str) -> core::result::Result<Self, ()> {
        match s {
            "source" => Ok(MapKind::Source),
            "target" => Ok(MapKind::Target),
            "karasev" => Ok(MapKind::Karasev),
            _ => Err(()),
        }
    }
}

/// A realization-type series `x + ε s_(1) + ε² s_(2) + ⋯` and how it was
/// produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationSeries {
    pub kind: MapKind,
    pub series: FormalSeries,
}

impl RealizationSeries {
    pub fn dimension(&self) -> usize {
        self.series.dimension()
    }

    pub fn max_order(&self) -> usize {
        self.series.max_order()
    }
}

fn tree_expansion(pi: &PoissonStructure, order: usize, alternate: bool) -> Result<FormalSeries> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    let d = pi.dimension();
    let v = spray(pi, SpraySign::Forward);
    let mut ed = ElementaryDifferentials::new(v.components());
    let mut angles = AngleMemo::new();
    let mut series = FormalSeries::identity(d, order);
    for t in enumerate_trees(order)? {
        let w = angles.weight(&t);
        if w.is_zero() {
            continue;
        }
        let sym = BigInt::from(t.symmetry_order());
        let mut c = w / Rational::from_integer(sym);
        let n = t.degree();
        if alternate && n % 2 == 1 {
            c = -c;
        }
        for i in 0..d {
            let dt = ed.get(&t, i)?;
            if !dt.is_zero() {
                *series.coeff_mut(n, i) += &dt.scale(&c);
            }
        }
    }
    Ok(series)
}

/// `s^i = x^i + Σ_t ε^{|t|} (W_t/σ(t)) D_t^i V` through order `order`, with
/// `V` the forward spray.
pub fn source_series(pi: &PoissonStructure, order: usize) -> Result<RealizationSeries> {
    Ok(RealizationSeries {
        kind: MapKind::Source,
        series: tree_expansion(pi, order, false)?,
    })
}

/// The target map: the source expansion with an extra `(−1)^{|t|}`.
pub fn target_series(pi: &PoissonStructure, order: usize) -> Result<RealizationSeries> {
    Ok(RealizationSeries {
        kind: MapKind::Target,
        series: tree_expansion(pi, order, true)?,
    })
}

/// `{f, g} = Σ_i (∂f/∂x^i ∂g/∂p_i − ∂f/∂p_i ∂g/∂x^i)`.
pub fn canonical_bracket(f: &PhasePoly, g: &PhasePoly) -> Result<PhasePoly> {
    if f.dimension() != g.dimension() {
        return Err(Error::DimensionMismatch {
            left: f.dimension(),
            right: g.dimension(),
        });
    }
    let d = f.dimension();
    let mut out = PhasePoly::zero(d);
    for i in 0..d {
        let fx = f.partial_x(i);
        let gp = g.partial_p(i);
        if !fx.is_zero() && !gp.is_zero() {
            out += &(&fx * &gp);
        }
        let fp = f.partial_p(i);
        let gx = g.partial_x(i);
        if !fp.is_zero() && !gx.is_zero() {
            out -= &(&fp * &gx);
        }
    }
    Ok(out)
}

/// Residuals keyed by `(i, j, order)` with `i < j`, zero-based components.
pub type BracketResiduals = BTreeMap<(usize, usize, usize), PhasePoly>;

/// For each `i < j` and `1 ≤ n ≤ order`: the `ε^n` part of `{s^i, s^j}` minus
/// the `ε^{n−1}` part of `π^{ij}(s)`. All zero exactly when `s` realizes
/// `επ` through order `order`.
pub fn realization_residual(
    series: &FormalSeries,
    pi: &PoissonStructure,
    order: usize,
) -> Result<BracketResiduals> {
    let d = pi.dimension();
    if series.dimension() != d {
        return Err(Error::DimensionMismatch {
            left: series.dimension(),
            right: d,
        });
    }
    if order > series.max_order() {
        return Err(Error::OrderExceedsSeries {
            requested: order,
            available: series.max_order(),
        });
    }
    let mut out = BTreeMap::new();
    for i in 0..d {
        for j in i + 1..d {
            let rhs = series_compose(&pi.entry(i, j), series, order.saturating_sub(1))?;
            for n in 1..=order {
                let mut lhs = PhasePoly::zero(d);
                for a in 0..=n {
                    let f = series.coeff(a, i);
                    let g = series.coeff(n - a, j);
                    if !f.is_zero() && !g.is_zero() {
                        lhs += &canonical_bracket(f, g)?;
                    }
                }
                out.insert((i, j, n), &lhs - &rhs[n - 1]);
            }
        }
    }
    Ok(out)
}

/// First entry with a nonzero polynomial, in key order.
pub fn first_nonzero<K: Copy + Ord>(map: &BTreeMap<K, PhasePoly>) -> Option<(K, &PhasePoly)> {
    map.iter().find(|(_, p)| !p.is_zero()).map(|(k, p)| (*k, p))
}

/// Closed form for linear `π`:
/// `s^i = x^i + Σ_n ε^n ((−1)^n B_n / n!) ad_p^n(x^i)`, where
/// `ad_p = Σ_{k,j} π^{kj} p_k ∂_{x^j}` is the forward spray.
pub fn linear_closed_form(pi: &PoissonStructure, order: usize) -> Result<RealizationSeries> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    pi.check_linear()?;
    let d = pi.dimension();
    let v = spray(pi, SpraySign::Forward);
    let b = bernoulli_numbers(order);
    let mut series = FormalSeries::identity(d, order);
    let mut iterates: Vec<PhasePoly> = (0..d).map(|i| PhasePoly::x(d, i)).collect();
    for (n, bn) in b.iter().enumerate().skip(1) {
        iterates = iterates.iter().map(|g| v.lie_derivative(g)).collect();
        let mut c = bn / Rational::from_integer(factorial(n));
        if n % 2 == 1 {
            c = -c;
        }
        for (i, g) in iterates.iter().enumerate() {
            *series.coeff_mut(n, i) = g.scale(&c);
        }
    }
    Ok(RealizationSeries {
        kind: MapKind::Source,
        series,
    })
}

/// First `(order, component)` whose coefficient is not momentum-homogeneous
/// of degree `order`.
pub fn homogeneity_violation(series: &FormalSeries) -> Option<(usize, usize)> {
    series.orders().enumerate().skip(1).find_map(|(n, row)| {
        row.iter()
            .position(|c| !c.is_p_homogeneous(n as u32))
            .map(|i| (n, i))
    })
}

/// `⟨s_(n), p⟩ = Σ_i s_(n)^i p_i`.
pub fn pairing(series: &FormalSeries, n: usize) -> PhasePoly {
    let d = series.dimension();
    let mut out = PhasePoly::zero(d);
    for (i, c) in series.order(n).iter().enumerate() {
        if !c.is_zero() {
            out += &(c * &PhasePoly::p(d, i));
        }
    }
    out
}

/// First order `n ≥ 1` with a nonzero pairing, and that pairing.
pub fn pairing_violation(series: &FormalSeries) -> Option<(usize, PhasePoly)> {
    (1..=series.max_order())
        .map(|n| (n, pairing(series, n)))
        .find(|(_, p)| !p.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use alloc::vec;

    fn x(d: usize, i: usize) -> PhasePoly {
        PhasePoly::x(d, i)
    }
    fn p(d: usize, i: usize) -> PhasePoly {
        PhasePoly::p(d, i)
    }

    fn constant() -> PoissonStructure {
        PoissonStructure::new(2, vec![(0, 1, PhasePoly::one(2))]).unwrap()
    }

    fn affine() -> PoissonStructure {
        PoissonStructure::new(2, vec![(0, 1, x(2, 0))]).unwrap()
    }

    fn so3() -> PoissonStructure {
        PoissonStructure::new(3, vec![(0, 1, x(3, 2)), (1, 2, x(3, 0)), (0, 2, -&x(3, 1))]).unwrap()
    }

    #[test]
    fn order_one_is_half_the_spray() {
        let pi = PoissonStructure::new(2, vec![(0, 1, &x(2, 0).pow(2) + &x(2, 1))]).unwrap();
        let s = source_series(&pi, 1).unwrap();
        for i in 0..2 {
            let mut want = PhasePoly::zero(2);
            for v in 0..2 {
                want += &(&pi.entry(v, i) * &p(2, v));
            }
            assert_eq!(*s.series.coeff(1, i), want.scale(&rat(1, 2)));
        }
    }

    #[test]
    fn zero_order_is_rejected() {
        assert_eq!(source_series(&constant(), 0), Err(Error::ZeroOrder));
        assert_eq!(target_series(&constant(), 0), Err(Error::ZeroOrder));
    }

    #[test]
    fn bracket_on_canonical_pairs() {
        assert_eq!(
            canonical_bracket(&x(2, 0), &p(2, 0)).unwrap(),
            PhasePoly::one(2)
        );
        assert!(canonical_bracket(&x(2, 0), &p(2, 1)).unwrap().is_zero());
        assert!(canonical_bracket(&x(2, 0), &x(2, 1)).unwrap().is_zero());
        assert!(canonical_bracket(&x(2, 0), &x(3, 1)).is_err());
    }

    #[test]
    fn bracket_with_first_order_term() {
        // {x¹, ½ π^{v2} p_v} = ½ π^{12} = x¹/2 for π¹² = x¹
        let pi = affine();
        let g = (&pi.entry(0, 1) * &p(2, 0)).scale(&rat(1, 2));
        assert_eq!(
            canonical_bracket(&x(2, 0), &g).unwrap(),
            x(2, 0).scale(&rat(1, 2))
        );
    }

    #[test]
    fn constant_structure_truncates_after_order_one() {
        let s = source_series(&constant(), 4).unwrap();
        for n in 2..=4 {
            assert!(s.series.order(n).iter().all(PhasePoly::is_zero));
        }
        let res = realization_residual(&s.series, &constant(), 3).unwrap();
        assert!(first_nonzero(&res).is_none());
    }

    #[test]
    fn so3_residual_vanishes() {
        let s = source_series(&so3(), 4).unwrap();
        let res = realization_residual(&s.series, &so3(), 4).unwrap();
        assert_eq!(res.len(), 3 * 4);
        assert!(first_nonzero(&res).is_none());
    }

    #[test]
    fn corrupted_coefficient_is_located() {
        let pi = affine();
        let mut s = source_series(&pi, 3).unwrap().series;
        *s.coeff_mut(2, 0) += &p(2, 1).pow(2);
        let res = realization_residual(&s, &pi, 3).unwrap();
        let ((i, j, n), _) = first_nonzero(&res).unwrap();
        assert_eq!((i, j, n), (0, 1, 2));
    }

    #[test]
    fn residual_order_is_bounded_by_series() {
        let s = source_series(&affine(), 2).unwrap();
        assert!(matches!(
            realization_residual(&s.series, &affine(), 3),
            Err(Error::OrderExceedsSeries { .. })
        ));
    }

    #[test]
    fn target_is_source_with_reversed_momenta() {
        let pi = PoissonStructure::new(2, vec![(0, 1, &x(2, 0).pow(2) + &x(2, 1))]).unwrap();
        let s = source_series(&pi, 4).unwrap();
        let t = target_series(&pi, 4).unwrap();
        assert_eq!(t.series, s.series.flip_momenta());
        assert_eq!(t.series.order(2), s.series.order(2));
        assert_eq!(t.series.coeff(1, 0), &-s.series.coeff(1, 0));
    }

    #[test]
    fn linear_closed_form_low_orders() {
        let pi = so3();
        let lin = linear_closed_form(&pi, 3).unwrap();
        let src = source_series(&pi, 3).unwrap();
        assert_eq!(lin.series.order(1), src.series.order(1));
        assert!(lin.series.order(3).iter().all(PhasePoly::is_zero));
        assert_eq!(lin.series, src.series);
    }

    #[test]
    fn linear_closed_form_needs_linear_structure() {
        assert_eq!(
            linear_closed_form(&constant(), 2),
            Err(Error::NotLinear { i: 0, j: 1 })
        );
    }

    #[test]
    fn structural_checks() {
        let s = source_series(&so3(), 4).unwrap();
        assert_eq!(homogeneity_violation(&s.series), None);
        assert_eq!(pairing_violation(&s.series), None);
        let mut bad = s.series.clone();
        *bad.coeff_mut(3, 1) += &x(3, 0);
        assert_eq!(homogeneity_violation(&bad), Some((3, 1)));
        assert_eq!(pairing_violation(&bad).unwrap().0, 3);
    }
}
