#![allow(dead_code)]

use pathpoly_core::Tree;
use proptest::prelude::*;

/// Tree from a Prüfer sequence, with node `i` labeled `prefix` + `names[i]`.
pub fn from_pruefer(seq: &[usize], names: &[usize], prefix: &str) -> Tree {
    let n = seq.len() + 2;
    let mut degree = vec![1; n];
    for &s in seq {
        degree[s] += 1;
    }
    let label = |i: usize| format!("{prefix}{}", names[i]);
    let mut edges = Vec::new();
    for &s in seq {
        let leaf = (0..n).find(|&i| degree[i] == 1).unwrap();
        edges.push((label(leaf), label(s)));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&i| degree[i] == 1).collect();
    edges.push((label(rest[0]), label(rest[1])));
    Tree::from_edges(edges).unwrap()
}

/// Random labeled trees on `min..=max` nodes.
pub fn arb_tree(min: usize, max: usize, prefix: &'static str) -> impl Strategy<Value = Tree> {
    (min..=max)
        .prop_flat_map(|n| (prop::collection::vec(0..n, n - 2), Just((0..n).collect::<Vec<_>>()).prop_shuffle()))
        .prop_map(move |(seq, names)| from_pruefer(&seq, &names, prefix))
}

pub fn fig_c() -> Tree {
    Tree::parse_edge_list("1 2\n1 3\n1 5\n5 6\n5 7").unwrap()
}

pub fn star(n: usize) -> Tree {
    Tree::from_edges((2..=n + 1).map(|i| ("1".to_string(), i.to_string()))).unwrap()
}

pub fn main_theorem_applies(t: &Tree) -> bool {
    t.node_count() > 3 && t.degree_two_nodes().is_empty()
}
