mod common;

use std::collections::BTreeSet;

use num::{BigInt, Zero};
use pathpoly_core::oracle::{compare_hreps, minimal_hrep, redundant_inequalities, Comparison};
use pathpoly_core::path_polytope::{
    facet_descriptors, hrep_general, hrep_theorem_main, hypersimplex_hrep, hypersimplex_vrep, path_vertex, vrep,
};
use pathpoly_core::polytope::{affine_dimension, canonicalize, contains, is_facet, vertices_on_hyperplane};
use pathpoly_core::tree::trees_up_to_edges;
use pathpoly_core::{LinearConstraint, Tree};
use proptest::prelude::*;

use common::{arb_tree, fig_c, main_theorem_applies, star};

fn corpus() -> Vec<Tree> {
    trees_up_to_edges(8)
}

fn edge_ge_zero(t: &Tree, k: usize) -> LinearConstraint {
    let mut c = vec![0; t.edge_count()];
    c[k] = 1;
    LinearConstraint::ge(&c, 0).unwrap()
}

#[test]
fn vertex_count_and_leaf_sum() {
    for t in corpus() {
        let v = vrep(&t);
        let l = t.leaves().len();
        assert_eq!(v.len(), l * (l - 1) / 2);
        if t.edge_count() >= 2 {
            let leaf_edges = t.leaf_edge_indices();
            for p in v.vertices() {
                let s = leaf_edges.iter().fold(num::BigRational::zero(), |a, &k| a + &p.coords()[k]);
                assert_eq!(s, num::BigRational::from_integer(BigInt::from(2)));
            }
        }
    }
}

#[test]
fn dimension_law() {
    for t in corpus() {
        if t.node_count() <= 2 {
            continue;
        }
        let expected = t.edge_count() - t.degree_two_nodes().len() - 1;
        assert_eq!(affine_dimension(&vrep(&t)).unwrap(), expected, "{}", t.to_edge_list());
    }
}

#[test]
fn theorem_is_sound_and_minimal() {
    let mut checked = 0;
    for t in corpus().into_iter().filter(main_theorem_applies) {
        let h = hrep_theorem_main(&t).unwrap();
        let v = vrep(&t);
        for p in v.vertices() {
            assert!(contains(&h, p).unwrap());
        }
        let oracle = minimal_hrep(&v).unwrap();
        assert_eq!(canonicalize(&h).unwrap(), oracle.hrep(), "{}", t.to_edge_list());
        checked += 1;
    }
    // series-reduced trees on 4..=9 nodes
    assert_eq!(checked, 1 + 1 + 2 + 2 + 4 + 5);
}

#[test]
fn descriptors_match_tight_sets() {
    for t in corpus().into_iter().filter(main_theorem_applies) {
        let v = vrep(&t);
        for d in facet_descriptors(&t).unwrap() {
            let tight: BTreeSet<_> =
                vertices_on_hyperplane(&v, &d.constraint).unwrap().vertices().to_vec().into_iter().collect();
            let listed: BTreeSet<_> =
                d.incident.iter().map(|(i, j)| path_vertex(&t, i.as_str(), j.as_str()).unwrap()).collect();
            assert_eq!(tight, listed);
            assert!(is_facet(&v, &d.constraint).unwrap());
        }
    }
}

#[test]
fn degree_three_exclusion() {
    for t in corpus().into_iter().filter(main_theorem_applies) {
        let v = vrep(&t);
        for (k, e) in t.edges().iter().enumerate() {
            let touches_three = t.degree(e.a().as_str()).unwrap() == 3 || t.degree(e.b().as_str()).unwrap() == 3;
            let c = edge_ge_zero(&t, k);
            assert!(vertices_on_hyperplane(&v, &c).is_ok());
            assert_eq!(is_facet(&v, &c).unwrap(), !touches_three, "{} edge {e}", t.to_edge_list());
        }
    }
}

#[test]
fn general_form_on_degree_two_trees() {
    let mut redundancy_seen = false;
    for t in corpus() {
        if t.degree_two_nodes().is_empty() {
            continue;
        }
        let v = vrep(&t);
        let h = hrep_general(&t);
        let oracle = minimal_hrep(&v).unwrap();
        let cmp = compare_hreps(&h, &oracle.hrep()).unwrap();
        assert!(matches!(cmp, Comparison::Equal | Comparison::Equivalent), "{}", t.to_edge_list());
        for c in h.equalities() {
            for p in v.vertices() {
                assert!(c.is_satisfied_by(p));
            }
        }
        if !redundant_inequalities(&h, &v).unwrap().is_empty() {
            redundancy_seen = true;
            assert!(h.inequalities().len() > oracle.facets.len());
        }
    }
    assert!(redundancy_seen);
}

#[test]
fn subdivided_leaf_edge_of_s4_is_redundant() {
    // edges [{1,2},{1,3},{1,4},{1,m},{5,m}]
    let t = Tree::parse_edge_list("1 2\n1 3\n1 4\n1 m\nm 5").unwrap();
    let h = hrep_general(&t);
    let v = vrep(&t);
    assert_eq!(redundant_inequalities(&h, &v).unwrap().len(), 1);
    assert_eq!(h.inequalities().len(), 9);
    assert_eq!(minimal_hrep(&v).unwrap().facets.len(), 8);
}

#[test]
fn stars_are_second_hypersimplices() {
    for n in 3..=7 {
        assert!(vrep(&star(n)).same_vertex_set(&hypersimplex_vrep(n, 2).unwrap()));
        let facets = minimal_hrep(&vrep(&star(n))).unwrap().facets.len();
        assert_eq!(facets, if n == 3 { 3 } else { 2 * n });
    }
}

#[test]
fn hypersimplex_descriptions_agree() {
    for n in 2..=6 {
        for k in 1..n {
            let v = hypersimplex_vrep(n, k).unwrap();
            let h = hypersimplex_hrep(n, k).unwrap();
            let oracle = minimal_hrep(&v).unwrap().hrep();
            let cmp = compare_hreps(&h, &oracle).unwrap();
            assert!(matches!(cmp, Comparison::Equal | Comparison::Equivalent), "n={n} k={k}");
        }
    }
}

#[test]
fn glued_example_dimensions() {
    let t = fig_c();
    assert_eq!(affine_dimension(&vrep(&t)).unwrap(), 4);
    let r = minimal_hrep(&vrep(&t)).unwrap();
    assert_eq!((r.equalities.len(), r.facets.len()), (1, 6));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn theorem_holds_under_relabeling(t in arb_tree(4, 9, "n")) {
        let t = pathpoly_core::tree::contract_degree2(&t).tree;
        prop_assume!(main_theorem_applies(&t));
        let oracle = minimal_hrep(&vrep(&t)).unwrap();
        prop_assert_eq!(canonicalize(&hrep_theorem_main(&t).unwrap()).unwrap(), oracle.hrep());
    }

    #[test]
    fn general_form_contains_every_vertex(t in arb_tree(2, 10, "n")) {
        let h = hrep_general(&t);
        for p in vrep(&t).vertices() {
            prop_assert!(contains(&h, p).unwrap());
        }
    }
}
