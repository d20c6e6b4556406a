//! Rooted-tree enumeration and symmetry orders checked against brute force
//! over labeled trees.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use symreal_core::trees::{enumerate_trees, RootedTree};

/// Every parent array `parent[v] < v` for `v = 1..n` (vertex 0 is the root).
/// Each rooted tree on `n` vertices has at least one such labeling.
fn parent_arrays(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for v in 1..n {
        out = out
            .into_iter()
            .flat_map(|pa| {
                (0..v).map(move |p| {
                    let mut q = pa.clone();
                    q.push(p);
                    q
                })
            })
            .collect();
    }
    out
}

/// Independent canonical form: sorted nested string built from child lists.
fn canon(parent: &[usize], n: usize, v: usize) -> String {
    let mut kids: Vec<String> = (1..n)
        .filter(|&c| parent[c - 1] == v)
        .map(|c| canon(parent, n, c))
        .collect();
    kids.sort();
    format!("[{}]", kids.concat())
}

fn brute_force_classes(n: usize) -> BTreeSet<String> {
    parent_arrays(n).iter().map(|pa| canon(pa, n, 0)).collect()
}

/// Labeled copy of a tree as a parent array, root at vertex 0.
fn to_parent_array(t: &RootedTree) -> Vec<Option<usize>> {
    fn walk(t: &RootedTree, parent: Option<usize>, out: &mut Vec<Option<usize>>) {
        let me = out.len();
        out.push(parent);
        for c in t.children() {
            walk(c, Some(me), out);
        }
    }
    let mut out = Vec::new();
    walk(t, None, &mut out);
    out
}

fn permutations(items: Vec<usize>) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.clone();
        let head = rest.remove(k);
        for mut p in permutations(rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

/// Root-fixing vertex permutations that map the edge set onto itself.
fn brute_force_automorphisms(t: &RootedTree) -> usize {
    let parent = to_parent_array(t);
    let n = parent.len();
    permutations((1..n).collect())
        .into_iter()
        .filter(|perm| {
            let sigma = |v: usize| if v == 0 { 0 } else { perm[v - 1] };
            (0..n).all(|v| parent[sigma(v)] == parent[v].map(sigma))
        })
        .count()
}

#[test]
fn counts_match_labeled_brute_force() {
    let trees = enumerate_trees(7).unwrap();
    let mut by_degree: BTreeMap<usize, BTreeSet<String>> = BTreeMap::new();
    for t in &trees {
        by_degree
            .entry(t.degree())
            .or_default()
            .insert(t.canonical_string().to_string());
    }
    let mut counts = Vec::new();
    for n in 1..=7 {
        let oracle = brute_force_classes(n);
        assert_eq!(by_degree[&n], oracle, "degree {n}");
        counts.push(oracle.len());
    }
    assert_eq!(counts, [1, 1, 2, 4, 9, 20, 48]);
}

#[test]
fn enumeration_has_no_duplicates_and_is_sorted() {
    let trees = enumerate_trees(8).unwrap();
    let names: BTreeSet<&str> = trees.iter().map(|t| t.canonical_string()).collect();
    assert_eq!(names.len(), trees.len());
    assert!(trees.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(enumerate_trees(8).unwrap(), trees);
}

#[test]
fn symmetry_order_matches_automorphism_count() {
    for t in enumerate_trees(6).unwrap() {
        let want = brute_force_automorphisms(&t);
        assert_eq!(t.symmetry_order(), BigUint::from(want), "{t}");
    }
}

#[test]
fn small_symmetry_examples() {
    let cherry = RootedTree::parse("[[][]]").unwrap();
    assert_eq!(brute_force_automorphisms(&cherry), 2);
    assert_eq!(brute_force_automorphisms(&RootedTree::chain(3)), 1);
}

#[test]
fn parse_round_trips_canonical_strings() {
    for t in enumerate_trees(6).unwrap() {
        assert_eq!(RootedTree::parse(t.canonical_string()).unwrap(), t);
    }
}
