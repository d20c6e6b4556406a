//! Elementary differentials of a vector field along rooted trees.
//!
//! `D_•^u X = X^u` and, for `t = [t₁,…,t_m]`,
//! `D_t^u X = Σ_{i₁..i_m} ∂_{i₁}⋯∂_{i_m} X^u · D_{t₁}^{i₁}X ⋯ D_{t_m}^{i_m}X`.
//! Derivatives are taken in `x` only; momenta are parameters.

use alloc::collections::BTreeMap;
use alloc::string::String;

use crate::arith::PhasePoly;
use crate::trees::RootedTree;
use crate::{Error, Result};

/// Elementary differentials of one vector field, memoized by
/// `(canonical subtree, component)`.
#[derive(Debug)]
pub struct ElementaryDifferentials<'a> {
    field: &'a [PhasePoly],
    memo: BTreeMap<(String, usize), PhasePoly>,
}

impl<'a> ElementaryDifferentials<'a> {
    /// `field[u]` is the component `X^u`; all components share one
    /// dimension equal to `field.len()`.
    pub fn new(field: &'a [PhasePoly]) -> Self {
        ElementaryDifferentials {
            field,
            memo: BTreeMap::new(),
        }
    }

    pub fn get(&mut self, t: &RootedTree, u: usize) -> Result<PhasePoly> {
        let d = self.field.len();
        if u >= d {
            return Err(Error::ComponentOutOfRange {
                component: u,
                dimension: d,
            });
        }
        Ok(self.eval(t, u))
    }

    fn eval(&mut self, t: &RootedTree, u: usize) -> PhasePoly {
        let key = (String::from(t.canonical_string()), u);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let value = if t.children().is_empty() {
            self.field[u].clone()
        } else {
            let d = self.field.len();
            let mut acc = PhasePoly::zero(d);
            let base = self.field[u].clone();
            self.contract(t.children(), base, PhasePoly::one(d), &mut acc);
            acc
        };
        self.memo.insert(key, value.clone());
        value
    }

    /// Sums over the index of the first remaining child: `deriv` carries the
    /// partial derivatives of `X^u` taken so far, `prod` the product of the
    /// children's differentials.
    fn contract(
        &mut self,
        children: &[RootedTree],
        deriv: PhasePoly,
        prod: PhasePoly,
        acc: &mut PhasePoly,
    ) {
        let Some((first, rest)) = children.split_first() else {
            *acc += &(&deriv * &prod);
            return;
        };
        for i in 0..self.field.len() {
            let di = deriv.partial_x(i);
            if di.is_zero() {
                continue;
            }
            let child = self.eval(first, i);
            if child.is_zero() {
                continue;
            }
            self.contract(rest, di, &prod * &child, acc);
        }
    }
}

pub fn elementary_differential(t: &RootedTree, field: &[PhasePoly], u: usize) -> Result<PhasePoly> {
    ElementaryDifferentials::new(field).get(t, u)
}
