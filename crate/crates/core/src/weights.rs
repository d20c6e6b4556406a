//! Tree weights from the angle-polynomial recursion.
//!
//! For `t = [t₁,…,t_m]` the angle polynomial is
//! `I_t(θ) = ∫₀¹ dλ ∫_θ^λ I_{t₁}(u)⋯I_{t_m}(u) du` with `I_•(θ) = 1/2 − θ`,
//! and the weight of `t` is `W_t = I_t(0)`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::arith::{rat, Rational, UniPoly};
use crate::trees::{enumerate_trees, RootedTree};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEntry {
    pub tree: RootedTree,
    pub angle_poly: UniPoly,
    pub weight: Rational,
}

/// Memo table of angle polynomials keyed by canonical string.
///
/// Not shared between threads; give each thread its own table. Results do not
/// depend on the order in which trees are queried.
#[derive(Debug, Default, Clone)]
pub struct AngleMemo {
    table: BTreeMap<String, UniPoly>,
}

impl AngleMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn angle_polynomial(&mut self, t: &RootedTree) -> UniPoly {
        if let Some(p) = self.table.get(t.canonical_string()) {
            return p.clone();
        }
        let poly = if t.children().is_empty() {
            UniPoly::new(alloc::vec![rat(1, 2), rat(-1, 1)])
        } else {
            let mut integrand = UniPoly::constant(rat(1, 1));
            for c in t.children() {
                integrand = &integrand * &self.angle_polynomial(c);
            }
            integrand.nested_integral()
        };
        self.table
            .insert(String::from(t.canonical_string()), poly.clone());
        poly
    }

    pub fn weight(&mut self, t: &RootedTree) -> Rational {
        self.angle_polynomial(t).eval(&Rational::zero())
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

pub fn angle_polynomial(t: &RootedTree) -> UniPoly {
    AngleMemo::new().angle_polynomial(t)
}

pub fn weight(t: &RootedTree) -> Rational {
    AngleMemo::new().weight(t)
}

/// Weights of every tree with at most `max_degree` vertices, in enumeration
/// order.
pub fn weight_table(max_degree: usize) -> Result<Vec<WeightEntry>> {
    let mut memo = AngleMemo::new();
    Ok(enumerate_trees(max_degree)?
        .into_iter()
        .map(|tree| {
            let angle_poly = memo.angle_polynomial(&tree);
            let weight = angle_poly.eval(&Rational::zero());
            WeightEntry {
                tree,
                angle_poly,
                weight,
            }
        })
        .collect())
}
