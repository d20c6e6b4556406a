use alloc::collections::btree_map::{BTreeMap, Entry};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::{Error, Result};

/// A coordinate on phase space `T*R^d`, zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X(usize),
    P(usize),
}

impl Var {
    /// Position of the variable in an exponent vector: `x¹..x^d` come first,
    /// then `p₁..p_d`.
    pub fn slot(self, dim: usize) -> Result<usize> {
        match self {
            Var::X(i) if i < dim => Ok(i),
            Var::P(i) if i < dim => Ok(dim + i),
            _ => Err(Error::UnknownVariable {
                name: format!("{self}"),
                dimension: dim,
            }),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(i) => write!(f, "x{}", i + 1),
            Var::P(i) => write!(f, "p{}", i + 1),
        }
    }
}

/// Sparse polynomial in `x¹..x^d, p₁..p_d` with rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by the exponent vector (length `2d`,
/// ordered lexicographically in the variable order above) and zero
/// coefficients are never stored, so `==` is equality of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhasePoly {
    dim: usize,
    terms: BTreeMap<Vec<u16>, Rational>,
}

impl PhasePoly {
    pub fn zero(dim: usize) -> Self {
        PhasePoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        let mut out = PhasePoly::zero(dim);
        if !c.is_zero() {
            out.terms.insert(vec![0; 2 * dim], c);
        }
        out
    }

    pub fn one(dim: usize) -> Self {
        PhasePoly::constant(dim, Rational::one())
    }

    pub fn var(dim: usize, v: Var) -> Result<Self> {
        let slot = v.slot(dim)?;
        let mut exps = vec![0; 2 * dim];
        exps[slot] = 1;
        Ok(PhasePoly {
            dim,
            terms: BTreeMap::from([(exps, Rational::one())]),
        })
    }

    /// The coordinate function `x^{i+1}`. Panics if `i >= dim`.
    pub fn x(dim: usize, i: usize) -> Self {
        PhasePoly::var(dim, Var::X(i)).expect("x index out of range")
    }

    /// The momentum `p_{i+1}`. Panics if `i >= dim`.
    pub fn p(dim: usize, i: usize) -> Self {
        PhasePoly::var(dim, Var::P(i)).expect("p index out of range")
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; repeated
    /// exponent vectors are summed.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u16>, Rational)>,
    {
        let mut out = PhasePoly::zero(dim);
        for (exps, c) in terms {
            if exps.len() != 2 * dim {
                return Err(Error::ExponentLength {
                    expected: 2 * dim,
                    found: exps.len(),
                });
            }
            out.add_term(exps, c);
        }
        Ok(out)
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u16]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, exps: Vec<u16>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &PhasePoly) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            })
        }
    }

    pub fn try_add(&self, other: &PhasePoly) -> Result<PhasePoly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &PhasePoly) -> Result<PhasePoly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &PhasePoly) -> Result<PhasePoly> {
        self.check_dim(other)?;
        let mut acc: BTreeMap<Vec<u16>, Rational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u16> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let prod = ca * cb;
                match acc.entry(e) {
                    Entry::Vacant(v) => {
                        v.insert(prod);
                    }
                    Entry::Occupied(mut o) => *o.get_mut() += prod,
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(PhasePoly {
            dim: self.dim,
            terms: acc,
        })
    }

    pub fn scale(&self, c: &Rational) -> PhasePoly {
        if c.is_zero() {
            return PhasePoly::zero(self.dim);
        }
        PhasePoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> PhasePoly {
        let mut out = PhasePoly::one(self.dim);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Formal partial derivative with respect to `v`.
    pub fn partial(&self, v: Var) -> Result<PhasePoly> {
        let slot = v.slot(self.dim)?;
        Ok(self.partial_slot(slot))
    }

    /// `∂/∂x^{i+1}`. Panics if `i >= dim`.
    pub fn partial_x(&self, i: usize) -> PhasePoly {
        assert!(i < self.dim, "x index out of range");
        self.partial_slot(i)
    }

    /// `∂/∂p_{i+1}`. Panics if `i >= dim`.
    pub fn partial_p(&self, i: usize) -> PhasePoly {
        assert!(i < self.dim, "p index out of range");
        self.partial_slot(self.dim + i)
    }

    fn partial_slot(&self, slot: usize) -> PhasePoly {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e[slot];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[slot] = k - 1;
            terms.insert(e2, c * Rational::from_integer(BigInt::from(k)));
        }
        PhasePoly {
            dim: self.dim,
            terms,
        }
    }

    fn p_degree_of(&self, exps: &[u16]) -> u32 {
        exps[self.dim..].iter().map(|&k| u32::from(k)).sum()
    }

    fn x_degree_of(&self, exps: &[u16]) -> u32 {
        exps[..self.dim].iter().map(|&k| u32::from(k)).sum()
    }

    /// True when every monomial has total momentum degree `n`. The zero
    /// polynomial is homogeneous of every degree.
    pub fn is_p_homogeneous(&self, n: u32) -> bool {
        self.terms.keys().all(|e| self.p_degree_of(e) == n)
    }

    pub fn depends_on_p(&self) -> bool {
        self.terms.keys().any(|e| self.p_degree_of(e) > 0)
    }

    /// True when every monomial has total `x`-degree `n`.
    pub fn is_x_homogeneous(&self, n: u32) -> bool {
        self.terms.keys().all(|e| self.x_degree_of(e) == n)
    }

    /// The substitution `p ↦ −p`.
    pub fn flip_momenta(&self) -> PhasePoly {
        PhasePoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    if self.p_degree_of(e) % 2 == 1 {
                        (e.clone(), -c)
                    } else {
                        (e.clone(), c.clone())
                    }
                })
                .collect(),
        }
    }

    /// Evaluates at a point given as `2d` rationals in variable order.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != 2 * self.dim {
            return Err(Error::ExponentLength {
                expected: 2 * self.dim,
                found: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (v, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    m *= v;
                }
            }
            acc += m;
        }
        Ok(acc)
    }
}

impl Add for &PhasePoly {
    type Output = PhasePoly;
    fn add(self, rhs: &PhasePoly) -> PhasePoly {
        self.try_add(rhs).expect("PhasePoly addition")
    }
}

impl Sub for &PhasePoly {
    type Output = PhasePoly;
    fn sub(self, rhs: &PhasePoly) -> PhasePoly {
        self.try_sub(rhs).expect("PhasePoly subtraction")
    }
}

impl Mul for &PhasePoly {
    type Output = PhasePoly;
    fn mul(self, rhs: &PhasePoly) -> PhasePoly {
        self.try_mul(rhs).expect("PhasePoly multiplication")
    }
}

impl Neg for &PhasePoly {
    type Output = PhasePoly;
    fn neg(self) -> PhasePoly {
        PhasePoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl AddAssign<&PhasePoly> for PhasePoly {
    fn add_assign(&mut self, rhs: &PhasePoly) {
        self.check_dim(rhs).expect("PhasePoly addition");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl SubAssign<&PhasePoly> for PhasePoly {
    fn sub_assign(&mut self, rhs: &PhasePoly) {
        self.check_dim(rhs).expect("PhasePoly subtraction");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c);
        }
    }
}

/// Human-readable form, e.g. `1/2*x1*p2^2 - x3`.
impl fmt::Display for PhasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let mut first = true;
            if !a.is_one() || e.iter().all(|&k| k == 0) {
                write!(f, "{a}")?;
                first = false;
            }
            for (slot, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                let v = if slot < self.dim {
                    Var::X(slot)
                } else {
                    Var::P(slot - self.dim)
                };
                if k == 1 {
                    write!(f, "{v}")?;
                } else {
                    write!(f, "{v}^{k}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn x(i: usize) -> PhasePoly {
        PhasePoly::x(2, i)
    }
    fn p(i: usize) -> PhasePoly {
        PhasePoly::p(2, i)
    }

    #[test]
    fn monomial_product() {
        let a = &x(0) * &p(1);
        let got = &a * &p(0);
        let want = PhasePoly::from_terms(2, [(vec![1, 0, 1, 1], rat(1, 1))]).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn product_with_zero() {
        assert!((&(&x(0) + &p(1)) * &PhasePoly::zero(2)).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let got = &(&x(0) + &p(0)) * &(&x(0) - &p(0));
        assert_eq!(got, &x(0).pow(2) - &p(0).pow(2));
        assert_eq!(got.len(), 2);
    }

    #[test]
    fn mismatched_dimensions_are_rejected() {
        let a = PhasePoly::x(2, 0);
        let b = PhasePoly::x(3, 0);
        assert_eq!(
            a.try_mul(&b),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        );
        assert!(a.try_add(&b).is_err());
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!(
            x(0).pow(2).partial(Var::X(0)).unwrap(),
            x(0).scale(&rat(2, 1))
        );
        let f = &x(0) * &p(1).pow(2);
        assert_eq!(
            f.partial(Var::P(1)).unwrap(),
            (&x(0) * &p(1)).scale(&rat(2, 1))
        );
        assert!((&x(0) * &p(0)).partial(Var::X(1)).unwrap().is_zero());
    }

    #[test]
    fn unknown_variable() {
        assert!(matches!(
            x(0).partial(Var::P(2)),
            Err(Error::UnknownVariable { .. })
        ));
    }

    #[test]
    fn exponent_length_is_checked() {
        assert_eq!(
            PhasePoly::from_terms(2, [(vec![1, 0], rat(1, 1))]),
            Err(Error::ExponentLength {
                expected: 4,
                found: 2
            })
        );
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = &x(0) + &p(1);
        let b = &a - &p(1);
        assert_eq!(b, x(0));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn flip_momenta_signs() {
        let f = &(&x(0) * &p(0)) + &p(1).pow(2);
        let want = &p(1).pow(2) - &(&x(0) * &p(0));
        assert_eq!(f.flip_momenta(), want);
    }

    #[test]
    fn display() {
        let f = &(&x(0) * &p(1).pow(2)).scale(&rat(1, 2)) - &PhasePoly::x(2, 1);
        assert_eq!(f.to_string(), "-x2 + 1/2*x1*p2^2");
        assert_eq!(PhasePoly::zero(2).to_string(), "0");
        assert_eq!(PhasePoly::constant(2, rat(-3, 4)).to_string(), "-3/4");
    }

    fn small_poly() -> impl Strategy<Value = PhasePoly> {
        prop::collection::vec(
            (prop::collection::vec(0u16..3, 4), -5i64..=5, 1i64..=4),
            0..5,
        )
        .prop_map(|ts| {
            PhasePoly::from_terms(2, ts.into_iter().map(|(e, n, d)| (e, rat(n, d)))).unwrap()
        })
    }

    fn any_var() -> impl Strategy<Value = Var> {
        prop_oneof![(0usize..2).prop_map(Var::X), (0usize..2).prop_map(Var::P)]
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        }

        #[test]
        fn partials_commute(a in small_poly(), u in any_var(), v in any_var()) {
            let uv = a.partial(u).unwrap().partial(v).unwrap();
            let vu = a.partial(v).unwrap().partial(u).unwrap();
            prop_assert_eq!(uv, vu);
        }

        #[test]
        fn leibniz_rule(a in small_poly(), b in small_poly(), v in any_var()) {
            let lhs = (&a * &b).partial(v).unwrap();
            let rhs = &(&a.partial(v).unwrap() * &b) + &(&a * &b.partial(v).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
