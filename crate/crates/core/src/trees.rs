//! Topological rooted trees.
//!
//! A tree is stored as the multiset of its root's subtrees, sorted by
//! canonical string, so two trees compare equal exactly when they are
//! isomorphic. The canonical string of a leaf is `[]` and that of a node is
//! `[` followed by its children's strings in ascending order, then `]`.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct RootedTree {
    children: Vec<RootedTree>,
    degree: usize,
    canonical: String,
}

impl RootedTree {
    /// The single-vertex tree `•`.
    pub fn leaf() -> Self {
        RootedTree {
            children: Vec::new(),
            degree: 1,
            canonical: "[]".to_string(),
        }
    }

    /// Grafts the roots of `children` onto a new root. Child order is
    /// irrelevant.
    pub fn graft(mut children: Vec<RootedTree>) -> Self {
        children.sort_by(|a, b| a.canonical.cmp(&b.canonical));
        let degree = 1 + children.iter().map(|c| c.degree).sum::<usize>();
        let mut canonical = String::with_capacity(2 * degree);
        canonical.push('[');
        for c in &children {
            canonical.push_str(&c.canonical);
        }
        canonical.push(']');
        RootedTree {
            children,
            degree,
            canonical,
        }
    }

    /// The chain with `n ≥ 1` vertices, each with at most one child.
    pub fn chain(n: usize) -> Self {
        assert!(n >= 1, "a chain has at least one vertex");
        (1..n).fold(RootedTree::leaf(), |t, _| RootedTree::graft(vec![t]))
    }

    /// Parses a bracket string such as `[[][[]]]`. Children may appear in any
    /// order.
    pub fn parse(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        let (t, used) = parse_at(bytes, 0).ok_or_else(|| Error::ParseTree(s.to_string()))?;
        if used != bytes.len() {
            return Err(Error::ParseTree(s.to_string()));
        }
        Ok(t)
    }

    pub fn children(&self) -> &[RootedTree] {
        &self.children
    }

    /// Number of vertices.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn canonical_string(&self) -> &str {
        &self.canonical
    }

    pub fn is_chain(&self) -> bool {
        match self.children.as_slice() {
            [] => true,
            [c] => c.is_chain(),
            _ => false,
        }
    }

    /// Largest number of children of any vertex.
    pub fn max_branching(&self) -> usize {
        self.children
            .iter()
            .map(RootedTree::max_branching)
            .fold(self.children.len(), usize::max)
    }

    /// Order of the automorphism group: `Π_j m_j! σ(u_j)^{m_j}` over the
    /// distinct child classes `u_j` of multiplicity `m_j`.
    pub fn symmetry_order(&self) -> BigUint {
        let mut out = BigUint::one();
        let mut run = 0u32;
        for (k, c) in self.children.iter().enumerate() {
            out *= c.symmetry_order();
            run += 1;
            let last =
                k + 1 == self.children.len() || self.children[k + 1].canonical != c.canonical;
            if last {
                out *= (1..=run).fold(BigUint::one(), |acc, m| acc * m);
                run = 0;
            }
        }
        out
    }
}

fn parse_at(b: &[u8], mut pos: usize) -> Option<(RootedTree, usize)> {
    if b.get(pos) != Some(&b'[') {
        return None;
    }
    pos += 1;
    let mut children = Vec::new();
    while b.get(pos) == Some(&b'[') {
        let (c, next) = parse_at(b, pos)?;
        children.push(c);
        pos = next;
    }
    if b.get(pos) != Some(&b']') {
        return None;
    }
    Some((RootedTree::graft(children), pos + 1))
}

impl PartialEq for RootedTree {
    fn eq(&self, other: &Self) -> bool {
        self.canonical == other.canonical
    }
}

impl Eq for RootedTree {}

/// Orders by degree, then canonical string.
impl Ord for RootedTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.canonical.cmp(&other.canonical))
    }
}

impl PartialOrd for RootedTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl core::hash::Hash for RootedTree {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.canonical.hash(state);
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical)
    }
}

/// One representative per isomorphism class of rooted trees with at most
/// `max_degree` vertices, ordered by degree and then canonical string.
pub fn enumerate_trees(max_degree: usize) -> Result<Vec<RootedTree>> {
    if max_degree == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut all: Vec<RootedTree> = vec![RootedTree::leaf()];
    for n in 2..=max_degree {
        // Every tree built so far has degree < n.
        let pool = all.clone();
        let mut fresh = Vec::new();
        let mut chosen = Vec::new();
        forests(&pool, 0, n - 1, &mut chosen, &mut fresh);
        fresh.sort();
        all.extend(fresh);
    }
    Ok(all)
}

/// Emits a tree for every multiset of `pool` entries (indices non-decreasing
/// from `start`) whose degrees sum to `remaining`.
fn forests(
    pool: &[RootedTree],
    start: usize,
    remaining: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<RootedTree>,
) {
    if remaining == 0 {
        out.push(RootedTree::graft(
            chosen.iter().map(|&k| pool[k].clone()).collect(),
        ));
        return;
    }
    for k in start..pool.len() {
        let d = pool[k].degree;
        if d > remaining {
            continue;
        }
        chosen.push(k);
        forests(pool, k, remaining - d, chosen, out);
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> RootedTree {
        RootedTree::parse(s).unwrap()
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(RootedTree::leaf().canonical_string(), "[]");
        let cherry = RootedTree::graft(vec![RootedTree::leaf(), RootedTree::leaf()]);
        assert_eq!(cherry.canonical_string(), "[[][]]");
        assert_eq!(RootedTree::chain(3).canonical_string(), "[[[]]]");
    }

    #[test]
    fn child_order_is_irrelevant() {
        assert_eq!(t("[[][[]]]"), t("[[[]][]]"));
        assert_eq!(t("[[][[]]]").canonical_string(), "[[[]][]]");
    }

    #[test]
    fn parse_rejects_malformed() {
        for bad in ["", "[", "]", "[]]", "[][]", "[x]"] {
            assert!(RootedTree::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn first_trees() {
        let trees = enumerate_trees(3).unwrap();
        let names: Vec<&str> = trees.iter().map(|t| t.canonical_string()).collect();
        assert_eq!(names, ["[]", "[[]]", "[[[]]]", "[[][]]"]);
        assert_eq!(enumerate_trees(1).unwrap(), vec![RootedTree::leaf()]);
    }

    #[test]
    fn zero_degree_is_an_error() {
        assert_eq!(enumerate_trees(0), Err(Error::ZeroDegree));
    }

    #[test]
    fn counts_per_degree() {
        let trees = enumerate_trees(7).unwrap();
        let mut counts = [0usize; 8];
        for tr in &trees {
            counts[tr.degree()] += 1;
        }
        assert_eq!(&counts[1..], &[1, 1, 2, 4, 9, 20, 48]);
    }

    #[test]
    fn symmetry_orders() {
        assert_eq!(RootedTree::leaf().symmetry_order(), BigUint::from(1u32));
        assert_eq!(t("[[][]]").symmetry_order(), BigUint::from(2u32));
        assert_eq!(t("[[[]]]").symmetry_order(), BigUint::from(1u32));
        // three identical cherries hanging off the root: 3! · 2³
        assert_eq!(
            t("[[[][]][[][]][[][]]]").symmetry_order(),
            BigUint::from(48u32)
        );
    }

    #[test]
    fn degree_is_bracket_count() {
        for tr in enumerate_trees(6).unwrap() {
            let opens = tr.canonical_string().matches('[').count();
            assert_eq!(opens, tr.degree());
        }
    }

    #[test]
    fn chains_and_branching() {
        assert!(RootedTree::chain(5).is_chain());
        assert!(!t("[[][]]").is_chain());
        assert_eq!(t("[[[][][]]]").max_branching(), 3);
    }
}
