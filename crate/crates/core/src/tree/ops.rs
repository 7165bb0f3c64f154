//! Structural surgery on trees: gluing along leaf edges, splitting along an
//! internal edge, suppressing degree-2 nodes and decomposing into stars.

use std::collections::{BTreeSet, VecDeque};

use num::{One, Zero};

use super::{Edge, LeafEdge, NodeId, Tree};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::polytope::AffineMap;

/// Where an edge of a glued tree comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeOrigin {
    Left(Edge),
    Right(Edge),
    /// The edge `{u1, u2}` that replaces both glued leaf edges.
    Merged {
        left: Edge,
        right: Edge,
    },
}

fn check_leaf_edge(t: &Tree, e: &LeafEdge) -> Result<()> {
    let idx = t.edge_between(e.attach.as_str(), e.leaf.as_str())?;
    if !t.is_leaf(e.leaf.as_str()) {
        let edge = &t.edges()[idx];
        return Err(Error::NotLeafEdge(edge.a().to_string(), edge.b().to_string()));
    }
    Ok(())
}

/// Glues `t1` and `t2` by identifying the leaf edges `e1` and `e2`.
///
/// The leaves `e1.leaf` and `e2.leaf` disappear and `e1.attach` is joined to
/// `e2.attach`. Returns the glued tree together with the origin of each of its
/// edges, indexed like [`Tree::edges`].
pub fn glue(t1: &Tree, e1: &LeafEdge, t2: &Tree, e2: &LeafEdge) -> Result<(Tree, Vec<EdgeOrigin>)> {
    check_leaf_edge(t1, e1)?;
    check_leaf_edge(t2, e2)?;
    if let Some(shared) = t1.nodes().find(|n| t2.contains_node(n.as_str())) {
        return Err(Error::LabelCollision(shared.to_string()));
    }
    let (g1, g2) = (e1.edge(), e2.edge());
    let pairs = t1
        .edges()
        .iter()
        .filter(|e| **e != g1)
        .chain(t2.edges().iter().filter(|e| **e != g2))
        .map(|e| (e.a().as_str(), e.b().as_str()))
        .chain(std::iter::once((e1.attach.as_str(), e2.attach.as_str())));
    let glued = Tree::from_edges(pairs)?;
    let merged = Edge::new(e1.attach.clone(), e2.attach.clone()).unwrap();
    let origins = glued
        .edges()
        .iter()
        .map(|e| {
            if *e == merged {
                EdgeOrigin::Merged { left: g1.clone(), right: g2.clone() }
            } else if t1.edge_index(e).is_some() {
                EdgeOrigin::Left(e.clone())
            } else {
                EdgeOrigin::Right(e.clone())
            }
        })
        .collect();
    Ok((glued, origins))
}

/// Result of suppressing every internal node of degree 2.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub tree: Tree,
    /// For each edge of the contracted tree, the indices of the original edges
    /// it replaces, ordered from its `a` endpoint to its `b` endpoint.
    pub chains: Vec<Vec<usize>>,
    /// Linear map from the contracted edge space into the original one: a
    /// merged edge goes to the sum of the edges it replaces.
    pub embedding: AffineMap,
}

impl Contraction {
    /// Index of the original edge that ends at `node` within the chain of
    /// contracted edge `f`.
    pub fn chain_edge_at(&self, f: usize, node: &str) -> usize {
        let chain = &self.chains[f];
        if self.tree.edges()[f].a() == node {
            chain[0]
        } else {
            *chain.last().unwrap()
        }
    }
}

pub fn contract_degree2(t: &Tree) -> Contraction {
    let kept: BTreeSet<&NodeId> = t.nodes().filter(|n| t.degree(n.as_str()).unwrap() != 2).collect();
    let mut found: Vec<(NodeId, NodeId, Vec<usize>)> = Vec::new();
    for &x in &kept {
        for y0 in t.neighbors(x.as_str()).unwrap() {
            let mut prev = x;
            let mut cur = y0;
            let mut chain = vec![t.edge_between(x.as_str(), y0.as_str()).unwrap()];
            while !kept.contains(cur) {
                let next = t.neighbors(cur.as_str()).unwrap().iter().find(|n| *n != prev).unwrap();
                chain.push(t.edge_between(cur.as_str(), next.as_str()).unwrap());
                prev = cur;
                cur = next;
            }
            if x < cur {
                found.push((x.clone(), cur.clone(), chain));
            }
        }
    }
    let tree = Tree::from_edges(found.iter().map(|(a, b, _)| (a.as_str(), b.as_str())))
        .expect("contraction of a tree is a tree");
    let chains: Vec<Vec<usize>> = tree
        .edges()
        .iter()
        .map(|e| found.iter().find(|(a, b, _)| a == e.a() && b == e.b()).map(|(_, _, c)| c.clone()).unwrap())
        .collect();
    let mut linear = vec![vec![Rational::zero(); tree.edge_count()]; t.edge_count()];
    for (f, chain) in chains.iter().enumerate() {
        for &e in chain {
            linear[e][f] = Rational::one();
        }
    }
    let embedding = AffineMap::linear(tree.basis(), t.basis(), linear);
    Contraction { tree, chains, embedding }
}

/// The two halves of a tree cut at an internal edge `{u1, u2}`. Each half gets
/// a fresh leaf named `u1#u2` (resp. `u2#u1`) attached where the cut edge was.
#[derive(Clone, Debug)]
pub struct EdgeSplit {
    pub left: Tree,
    pub left_edge: LeafEdge,
    pub right: Tree,
    pub right_edge: LeafEdge,
}

fn fresh_leaf(t: &Tree, center: &NodeId, toward: &NodeId) -> Result<NodeId> {
    let label = NodeId::new(format!("{center}#{toward}"))?;
    if t.contains_node(label.as_str()) {
        return Err(Error::LabelCollision(label.to_string()));
    }
    Ok(label)
}

/// Nodes reachable from `start` without crossing the edge `{start, avoid}`.
fn side(t: &Tree, start: &NodeId, avoid: &NodeId) -> BTreeSet<NodeId> {
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(v) = queue.pop_front() {
        for w in t.neighbors(v.as_str()).unwrap() {
            if (v == *start && w == avoid) || seen.contains(w) {
                continue;
            }
            seen.insert(w.clone());
            queue.push_back(w.clone());
        }
    }
    seen
}

fn half(t: &Tree, u: &NodeId, other: &NodeId) -> Result<(Tree, LeafEdge)> {
    let nodes = side(t, u, other);
    let fresh = fresh_leaf(t, u, other)?;
    let pairs: Vec<(String, String)> = t
        .edges()
        .iter()
        .filter(|e| nodes.contains(e.a()) && nodes.contains(e.b()))
        .map(|e| (e.a().to_string(), e.b().to_string()))
        .chain(std::iter::once((u.to_string(), fresh.to_string())))
        .collect();
    let tree = Tree::from_edges(pairs)?;
    Ok((tree, LeafEdge { attach: u.clone(), leaf: fresh }))
}

/// Cuts `t` at the internal edge `{x, y}`; gluing the halves along the
/// returned leaf edges gives back `t` exactly.
pub fn split_at_edge(t: &Tree, x: &str, y: &str) -> Result<EdgeSplit> {
    let idx = t.edge_between(x, y)?;
    let e = &t.edges()[idx];
    if t.is_leaf(e.a().as_str()) || t.is_leaf(e.b().as_str()) {
        return Err(Error::NotInternalEdge(e.a().to_string(), e.b().to_string()));
    }
    let (left, left_edge) = half(t, e.a(), e.b())?;
    let (right, right_edge) = half(t, e.b(), e.a())?;
    Ok(EdgeSplit { left, left_edge, right, right_edge })
}

/// How to attach a star to the tree assembled from the previous stars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingInstruction {
    pub assembled: LeafEdge,
    pub star: LeafEdge,
}

#[derive(Clone, Debug)]
pub struct StarPiece {
    pub center: NodeId,
    pub star: Tree,
    /// `None` for the first star.
    pub glue: Option<GluingInstruction>,
}

/// Writes `t` as a sequence of stars, one per internal node.
///
/// Star `u` keeps the leaves of `t` adjacent to `u` and gets a fresh leaf
/// `u#w` for every internal neighbour `w`. Stars are listed in breadth-first
/// order from the smallest internal label, so each star after the first is
/// attached to an already assembled neighbour. Folding [`glue`] over the list
/// (see [`refold`]) reproduces `t` with its original labels.
pub fn star_decomposition(t: &Tree) -> Result<Vec<StarPiece>> {
    let internal = t.internal_nodes();
    let Some(first) = internal.first() else {
        return Err(Error::NoInternalNode);
    };
    if let Some(u) = t.degree_two_nodes().first() {
        return Err(Error::HasDegreeTwoInternal(u.to_string()));
    }

    let star_of = |u: &NodeId| -> Result<Tree> {
        let mut pairs = Vec::new();
        for w in t.neighbors(u.as_str())? {
            let leaf = if t.is_leaf(w.as_str()) { w.clone() } else { fresh_leaf(t, u, w)? };
            pairs.push((u.to_string(), leaf.to_string()));
        }
        Tree::from_edges(pairs)
    };

    let mut pieces = vec![StarPiece { center: first.clone(), star: star_of(first)?, glue: None }];
    let mut visited = BTreeSet::from([first.clone()]);
    let mut queue = VecDeque::from([first.clone()]);
    while let Some(p) = queue.pop_front() {
        for c in t.neighbors(p.as_str())? {
            if t.is_leaf(c.as_str()) || visited.contains(c) {
                continue;
            }
            visited.insert(c.clone());
            queue.push_back(c.clone());
            let glue = GluingInstruction {
                assembled: LeafEdge { attach: p.clone(), leaf: fresh_leaf(t, &p, c)? },
                star: LeafEdge { attach: c.clone(), leaf: fresh_leaf(t, c, &p)? },
            };
            pieces.push(StarPiece { center: c.clone(), star: star_of(c)?, glue: Some(glue) });
        }
    }
    Ok(pieces)
}

/// Left fold of [`glue`] over a star decomposition.
pub fn refold(pieces: &[StarPiece]) -> Result<Tree> {
    let (head, rest) = pieces.split_first().ok_or(Error::NoInternalNode)?;
    let mut acc = head.star.clone();
    for piece in rest {
        let g = piece.glue.as_ref().ok_or_else(|| Error::InvalidSpec("missing gluing instruction".into()))?;
        acc = glue(&acc, &g.assembled, &piece.star, &g.star)?.0;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational;
    use crate::polytope::RationalVector;

    fn tree(text: &str) -> Tree {
        Tree::parse_edge_list(text).unwrap()
    }

    fn edges(t: &Tree) -> Vec<String> {
        t.edges().iter().map(Edge::to_string).collect()
    }

    #[test]
    fn glue_two_stars() {
        let t1 = tree("1 2\n1 3\n1 4");
        let t2 = tree("5 6\n5 7\n5 8");
        let (t, origins) = glue(&t1, &t1.leaf_edge("1", "4").unwrap(), &t2, &t2.leaf_edge("5", "8").unwrap()).unwrap();
        assert_eq!(edges(&t), ["{1,2}", "{1,3}", "{1,5}", "{5,6}", "{5,7}"]);
        assert!(matches!(origins[2], EdgeOrigin::Merged { .. }));
        assert!(matches!(origins[0], EdgeOrigin::Left(_)));
        assert!(matches!(origins[4], EdgeOrigin::Right(_)));
        assert_eq!(t.leaves().len(), t1.leaves().len() + t2.leaves().len() - 2);
    }

    #[test]
    fn glue_single_edges() {
        let t1 = tree("a k1");
        let t2 = tree("k2 b");
        let (t, _) = glue(&t1, &t1.leaf_edge("a", "k1").unwrap(), &t2, &t2.leaf_edge("b", "k2").unwrap()).unwrap();
        assert_eq!(edges(&t), ["{a,b}"]);
    }

    #[test]
    fn glue_rejects_internal_edge_and_collisions() {
        let t1 = tree("1 2\n1 3\n1 5\n5 6\n5 7");
        let t2 = tree("8 9\n8 10");
        let internal = LeafEdge { attach: NodeId::new("1").unwrap(), leaf: NodeId::new("5").unwrap() };
        assert!(matches!(glue(&t1, &internal, &t2, &t2.leaf_edge("8", "9").unwrap()), Err(Error::NotLeafEdge(..))));
        let t3 = tree("2 20\n2 21");
        assert_eq!(
            glue(&t1, &t1.leaf_edge("1", "3").unwrap(), &t3, &t3.leaf_edge("2", "20").unwrap()).unwrap_err(),
            Error::LabelCollision("2".into())
        );
    }

    #[test]
    fn contract_path_of_three() {
        let c = contract_degree2(&tree("a b\nb c"));
        assert_eq!(edges(&c.tree), ["{a,c}"]);
        assert_eq!(c.chains, vec![vec![0, 1]]);
        let image = c.embedding.apply(&RationalVector::from_integers(&[1])).unwrap();
        assert_eq!(image, RationalVector::from_integers(&[1, 1]));
    }

    #[test]
    fn contract_star_is_identity() {
        let s4 = tree("0 1\n0 2\n0 3\n0 4");
        let c = contract_degree2(&s4);
        assert_eq!(c.tree, s4);
        for (f, chain) in c.chains.iter().enumerate() {
            assert_eq!(chain, &vec![f]);
        }
    }

    #[test]
    fn contract_caterpillar_chain() {
        let c = contract_degree2(&tree("a b\nb c\nc d"));
        assert_eq!(edges(&c.tree), ["{a,d}"]);
        let image = c.embedding.apply(&RationalVector::new(vec![rational(1)])).unwrap();
        assert_eq!(image, RationalVector::from_integers(&[1, 1, 1]));
        // the chain runs from a to d
        assert_eq!(c.chains[0], vec![0, 1, 2]);
        assert_eq!(c.chain_edge_at(0, "d"), 2);
    }

    #[test]
    fn split_and_reglue() {
        let t = tree("1 2\n1 3\n1 5\n5 6\n5 7");
        let s = split_at_edge(&t, "5", "1").unwrap();
        assert_eq!(edges(&s.left), ["{1,1#5}", "{1,2}", "{1,3}"]);
        assert_eq!(edges(&s.right), ["{5,5#1}", "{5,6}", "{5,7}"]);
        let (g, _) = glue(&s.left, &s.left_edge, &s.right, &s.right_edge).unwrap();
        assert_eq!(g, t);
        assert!(matches!(split_at_edge(&t, "1", "2"), Err(Error::NotInternalEdge(..))));
    }

    #[test]
    fn decompose_two_stars() {
        let t = tree("1 2\n1 3\n1 5\n5 6\n5 7");
        let pieces = star_decomposition(&t).unwrap();
        assert_eq!(pieces.len(), 2);
        assert_eq!(edges(&pieces[0].star), ["{1,1#5}", "{1,2}", "{1,3}"]);
        assert_eq!(edges(&pieces[1].star), ["{5,5#1}", "{5,6}", "{5,7}"]);
        assert_eq!(refold(&pieces).unwrap(), t);
    }

    #[test]
    fn decompose_single_star() {
        let t = tree("0 1\n0 2\n0 3\n0 4\n0 5");
        let pieces = star_decomposition(&t).unwrap();
        assert_eq!(pieces.len(), 1);
        assert!(pieces[0].glue.is_none());
        assert_eq!(pieces[0].star, t);
    }

    #[test]
    fn decompose_spider() {
        // internal path a - b - c with degrees 3, 4, 3
        let t = tree("a b\nb c\na a1\na a2\nb b1\nb b2\nc c1\nc c2");
        let pieces = star_decomposition(&t).unwrap();
        let degrees: Vec<usize> = pieces.iter().map(|p| p.star.edge_count()).collect();
        assert_eq!(degrees, [3, 4, 3]);
        assert_eq!(pieces.iter().filter(|p| p.glue.is_some()).count(), 2);
        assert_eq!(refold(&pieces).unwrap(), t);
    }

    #[test]
    fn decompose_errors() {
        assert!(matches!(star_decomposition(&tree("1 2")), Err(Error::NoInternalNode)));
        assert!(matches!(star_decomposition(&tree("a b\nb c")), Err(Error::HasDegreeTwoInternal(_))));
    }
}
