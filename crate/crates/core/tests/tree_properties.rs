mod common;

use std::collections::BTreeSet;

use pathpoly_core::path_polytope::{path_vertex, vrep};
use pathpoly_core::tree::{contract_degree2, glue, refold, star_decomposition, trees_up_to_edges};
use pathpoly_core::{LeafEdge, Tree};
use proptest::prelude::*;

use common::arb_tree;

fn leaf_edge(t: &Tree, pick: usize) -> LeafEdge {
    let leaves = t.leaves();
    let leaf = &leaves[pick % leaves.len()];
    let attach = t.neighbors(leaf.as_str()).unwrap()[0].clone();
    LeafEdge { attach, leaf: leaf.clone() }
}

#[test]
fn contraction_maps_path_vectors_exhaustively() {
    for t in trees_up_to_edges(8) {
        let c = contract_degree2(&t);
        assert_eq!(c.tree.leaves(), t.leaves());
        for (i, j) in t.leaf_pairs() {
            let small = path_vertex(&c.tree, i.as_str(), j.as_str()).unwrap();
            let big = path_vertex(&t, i.as_str(), j.as_str()).unwrap();
            assert_eq!(c.embedding.apply(&small).unwrap(), big);
        }
    }
}

#[test]
fn star_decomposition_refolds_exhaustively() {
    for t in trees_up_to_edges(8) {
        if !t.degree_two_nodes().is_empty() || t.internal_nodes().is_empty() {
            continue;
        }
        let pieces = star_decomposition(&t).unwrap();
        assert_eq!(pieces.len(), t.internal_nodes().len());
        for p in &pieces {
            assert_eq!(p.star.internal_nodes(), vec![p.center.clone()]);
        }
        assert_eq!(refold(&pieces).unwrap(), t);
    }
}

proptest! {
    #[test]
    fn parsed_trees_are_connected_and_acyclic(t in arb_tree(2, 12, "v")) {
        prop_assert_eq!(t.edge_count() + 1, t.node_count());
        let nodes: Vec<_> = t.nodes().cloned().collect();
        for (k, i) in nodes.iter().enumerate() {
            for j in &nodes[k + 1..] {
                let p = t.path_edges(i.as_str(), j.as_str()).unwrap();
                prop_assert!(!p.is_empty());
            }
        }
        let reparsed = Tree::parse_edge_list(&t.to_edge_list()).unwrap();
        prop_assert_eq!(reparsed, t);
    }

    #[test]
    fn glue_preserves_leaf_counts(
        t1 in arb_tree(2, 8, "a"),
        t2 in arb_tree(2, 8, "b"),
        p1 in 0usize..8,
        p2 in 0usize..8,
    ) {
        let (e1, e2) = (leaf_edge(&t1, p1), leaf_edge(&t2, p2));
        let (g, origins) = glue(&t1, &e1, &t2, &e2).unwrap();
        prop_assert_eq!(g.leaves().len() + 2, t1.leaves().len() + t2.leaves().len());
        prop_assert_eq!(g.edge_count() + 1, t1.edge_count() + t2.edge_count());
        prop_assert_eq!(origins.len(), g.edge_count());
    }

    #[test]
    fn contraction_is_idempotent_and_keeps_leaves(t in arb_tree(2, 12, "v")) {
        let once = contract_degree2(&t);
        let twice = contract_degree2(&once.tree);
        prop_assert_eq!(&twice.tree, &once.tree);
        prop_assert_eq!(once.tree.leaves(), t.leaves());
        prop_assert!(once.tree.degree_two_nodes().is_empty());
        let image = once.embedding.apply_all(&vrep(&once.tree)).unwrap();
        let a: BTreeSet<_> = image.vertices().iter().collect();
        let b = vrep(&t);
        let b: BTreeSet<_> = b.vertices().iter().collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn star_decomposition_refolds(t in arb_tree(4, 14, "v")) {
        let t = contract_degree2(&t).tree;
        prop_assume!(!t.internal_nodes().is_empty());
        let pieces = star_decomposition(&t).unwrap();
        prop_assert_eq!(pieces.len(), t.internal_nodes().len());
        prop_assert_eq!(refold(&pieces).unwrap(), t);
    }
}
