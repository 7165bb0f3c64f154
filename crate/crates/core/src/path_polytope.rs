//! Path polytopes of trees: vertices, closed-form halfspace descriptions and
//! facet descriptors.

use num::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polytope::{canonicalize, Basis, ConstraintKind, HRep, LinearConstraint, RationalVector, VRep};
use crate::tree::{contract_degree2, Edge, NodeId, Tree};

/// Indicator vector of the path between the leaves `i` and `j`.
pub fn path_vertex(t: &Tree, i: &str, j: &str) -> Result<RationalVector> {
    for v in [i, j] {
        if !t.contains_node(v) {
            return Err(Error::UnknownNode(v.to_string()));
        }
        if !t.is_leaf(v) {
            return Err(Error::NotALeaf(v.to_string()));
        }
    }
    let mut x = vec![0i64; t.edge_count()];
    for k in t.path_edge_indices(i, j)? {
        x[k] = 1;
    }
    Ok(RationalVector::from_integers(&x))
}

/// All path vertices, one per leaf pair in lexicographic pair order.
pub fn vrep(t: &Tree) -> VRep {
    let points: Vec<RationalVector> =
        t.leaf_pairs().par_iter().map(|(i, j)| path_vertex(t, i.as_str(), j.as_str()).expect("leaf pair")).collect();
    VRep::new(t.basis(), points).expect("path vertices match the edge basis")
}

/// Which rule of the closed form produced a constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstraintOrigin {
    /// `x_e >= 0`.
    EdgeNonnegative(Edge),
    /// `-x_{u,v} + sum_{w != v} x_{u,w} >= 0` at the internal node `u`.
    Star { center: NodeId, toward: NodeId },
    /// Sum of the leaf-edge coordinates equals 2.
    LeafSum,
    /// `x_{u,v} - x_{u,w} = 0` at an internal node of degree 2.
    DegreeTwo { node: NodeId },
    /// `x_e = 1` on the single-edge tree.
    SingleEdge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledConstraint {
    pub origin: ConstraintOrigin,
    pub constraint: LinearConstraint,
}

fn row(n: usize, entries: impl IntoIterator<Item = (usize, i64)>) -> Vec<BigInt> {
    let mut r = vec![BigInt::from(0); n];
    for (k, c) in entries {
        r[k] += c;
    }
    r
}

fn check_main_hypotheses(t: &Tree) -> Result<()> {
    if t.node_count() <= 3 {
        return Err(Error::TooSmall { nodes: t.node_count() });
    }
    if let Some(u) = t.degree_two_nodes().first() {
        return Err(Error::HasDegreeTwoInternal(u.to_string()));
    }
    Ok(())
}

fn leaf_sum(t: &Tree) -> LabeledConstraint {
    let n = t.edge_count();
    let coeffs = row(n, t.leaf_edge_indices().into_iter().map(|k| (k, 1)));
    LabeledConstraint {
        origin: ConstraintOrigin::LeafSum,
        constraint: LinearConstraint::new(coeffs, BigInt::from(2), ConstraintKind::Equality).unwrap(),
    }
}

fn degree(t: &Tree, v: &NodeId) -> usize {
    t.degree(v.as_str()).unwrap()
}

/// Inequality `-x_{u,v} + sum_{w in N(u) \ v} x_{u,w} >= 0` with the edge
/// `{u,w}` placed at coordinate `index(w)`.
fn star_coeffs(t: &Tree, u: &NodeId, v: &NodeId, n: usize, index: impl Fn(&NodeId) -> usize) -> Vec<BigInt> {
    row(n, t.neighbors(u.as_str()).unwrap().iter().map(|w| (index(w), if w == v { -1 } else { 1 })))
}

/// Closed-form constraints for a tree with more than three nodes and no
/// internal node of degree 2, in the order: edge nonnegativity by edge, star
/// inequalities by center and then by neighbour, leaf sum.
pub fn theorem_constraints(t: &Tree) -> Result<Vec<LabeledConstraint>> {
    check_main_hypotheses(t)?;
    let n = t.edge_count();
    let mut out = Vec::new();
    for (k, e) in t.edges().iter().enumerate() {
        if degree(t, e.a()) != 3 && degree(t, e.b()) != 3 {
            out.push(LabeledConstraint {
                origin: ConstraintOrigin::EdgeNonnegative(e.clone()),
                constraint: LinearConstraint::new(row(n, [(k, 1)]), BigInt::from(0), ConstraintKind::Inequality)?,
            });
        }
    }
    for u in t.internal_nodes() {
        for v in t.neighbors(u.as_str())? {
            let coeffs = star_coeffs(t, &u, v, n, |w| t.edge_between(u.as_str(), w.as_str()).unwrap());
            out.push(LabeledConstraint {
                origin: ConstraintOrigin::Star { center: u.clone(), toward: v.clone() },
                constraint: LinearConstraint::new(coeffs, BigInt::from(0), ConstraintKind::Inequality)?,
            });
        }
    }
    out.push(leaf_sum(t));
    Ok(out)
}

fn to_hrep(basis: Basis, cons: Vec<LabeledConstraint>) -> HRep {
    HRep::new(basis, cons.into_iter().map(|c| c.constraint).collect()).expect("constraints match the edge basis")
}

/// The minimal halfspace description of the path polytope. Requires more
/// than three nodes and no internal node of degree 2.
pub fn hrep_theorem_main(t: &Tree) -> Result<HRep> {
    Ok(to_hrep(t.basis(), theorem_constraints(t)?))
}

/// Closed-form constraints for any tree.
///
/// Internal nodes of degree 2 are suppressed, the closed form is computed on
/// the contracted tree and pulled back: a nonnegativity constraint on a
/// merged edge becomes one constraint per original edge in its chain, and a
/// star inequality at `u` uses, for each merged edge, the original edge that
/// touches `u`. Each degree-2 node adds an equality between its two edges.
/// The result describes the path polytope but is not minimal when degree-2
/// nodes are present.
pub fn general_constraints(t: &Tree) -> Vec<LabeledConstraint> {
    let n = t.edge_count();
    if n == 1 {
        return vec![LabeledConstraint {
            origin: ConstraintOrigin::SingleEdge,
            constraint: LinearConstraint::new(row(1, [(0, 1)]), BigInt::from(1), ConstraintKind::Equality).unwrap(),
        }];
    }
    let c = contract_degree2(t);
    let tc = &c.tree;
    let mut out = Vec::new();
    if tc.edge_count() >= 3 {
        for (f, e) in tc.edges().iter().enumerate() {
            if degree(tc, e.a()) != 3 && degree(tc, e.b()) != 3 {
                for &k in &c.chains[f] {
                    out.push(LabeledConstraint {
                        origin: ConstraintOrigin::EdgeNonnegative(t.edges()[k].clone()),
                        constraint: LinearConstraint::new(
                            row(n, [(k, 1)]),
                            BigInt::from(0),
                            ConstraintKind::Inequality,
                        )
                        .unwrap(),
                    });
                }
            }
        }
        for u in tc.internal_nodes() {
            for v in tc.neighbors(u.as_str()).unwrap() {
                let coeffs = star_coeffs(tc, &u, v, n, |w| {
                    let f = tc.edge_between(u.as_str(), w.as_str()).unwrap();
                    c.chain_edge_at(f, u.as_str())
                });
                // the original neighbour along the chain names the direction
                let k = c.chain_edge_at(tc.edge_between(u.as_str(), v.as_str()).unwrap(), u.as_str());
                let toward = t.edges()[k].other(u.as_str()).unwrap().clone();
                out.push(LabeledConstraint {
                    origin: ConstraintOrigin::Star { center: u.clone(), toward },
                    constraint: LinearConstraint::new(coeffs, BigInt::from(0), ConstraintKind::Inequality).unwrap(),
                });
            }
        }
    }
    out.push(leaf_sum(t));
    for u in t.degree_two_nodes() {
        let nb = t.neighbors(u.as_str()).unwrap();
        let kv = t.edge_between(u.as_str(), nb[0].as_str()).unwrap();
        let kw = t.edge_between(u.as_str(), nb[1].as_str()).unwrap();
        out.push(LabeledConstraint {
            origin: ConstraintOrigin::DegreeTwo { node: u.clone() },
            constraint: LinearConstraint::new(row(n, [(kv, 1), (kw, -1)]), BigInt::from(0), ConstraintKind::Equality)
                .unwrap(),
        });
    }
    out
}

/// Halfspace description valid for every tree; see [`general_constraints`].
pub fn hrep_general(t: &Tree) -> HRep {
    to_hrep(t.basis(), general_constraints(t))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FacetKind {
    /// Paths avoiding the edge.
    F { edge: Edge },
    /// Paths through `{center, toward}` or avoiding every edge at `center`.
    G { center: NodeId, toward: NodeId },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetDescriptor {
    pub kind: FacetKind,
    pub constraint: LinearConstraint,
    /// Leaf pairs whose path vertex lies on the facet, computed from the
    /// combinatorial description.
    pub incident: Vec<(NodeId, NodeId)>,
}

/// One descriptor per facet of the path polytope, in the order of
/// [`theorem_constraints`].
pub fn facet_descriptors(t: &Tree) -> Result<Vec<FacetDescriptor>> {
    let cons = theorem_constraints(t)?;
    let pairs: Vec<((NodeId, NodeId), Vec<usize>)> = t
        .leaf_pairs()
        .into_iter()
        .map(|(i, j)| {
            let p = t.path_edge_indices(i.as_str(), j.as_str()).unwrap();
            ((i, j), p)
        })
        .collect();
    let select = |keep: &dyn Fn(&[usize]) -> bool| -> Vec<(NodeId, NodeId)> {
        pairs.iter().filter(|(_, p)| keep(p)).map(|(ij, _)| ij.clone()).collect()
    };
    let mut out = Vec::new();
    for c in cons {
        let (kind, incident) = match c.origin {
            ConstraintOrigin::EdgeNonnegative(e) => {
                let k = t.edge_index(&e).unwrap();
                (FacetKind::F { edge: e }, select(&|p| !p.contains(&k)))
            }
            ConstraintOrigin::Star { center, toward } => {
                let uv = t.edge_between(center.as_str(), toward.as_str())?;
                let at_u: Vec<usize> = t
                    .neighbors(center.as_str())?
                    .iter()
                    .map(|w| t.edge_between(center.as_str(), w.as_str()).unwrap())
                    .collect();
                let incident = select(&|p| p.contains(&uv) || at_u.iter().all(|k| !p.contains(k)));
                (FacetKind::G { center, toward }, incident)
            }
            _ => continue,
        };
        out.push(FacetDescriptor { kind, constraint: c.constraint, incident });
    }
    Ok(out)
}

fn check_hypersimplex(n: usize, k: usize) -> Result<()> {
    if k < 1 || k >= n {
        return Err(Error::BadParameters { n, k });
    }
    Ok(())
}

/// The 0/1 vectors of length `n` with exactly `k` ones, ordered
/// lexicographically by their support.
pub fn hypersimplex_vrep(n: usize, k: usize) -> Result<VRep> {
    check_hypersimplex(n, k)?;
    let mut points = Vec::new();
    let mut support: Vec<usize> = (0..k).collect();
    loop {
        let mut x = vec![0i64; n];
        for &i in &support {
            x[i] = 1;
        }
        points.push(RationalVector::from_integers(&x));
        let Some(p) = (0..k).rev().find(|&p| support[p] < n - k + p) else {
            break;
        };
        support[p] += 1;
        for q in p + 1..k {
            support[q] = support[q - 1] + 1;
        }
    }
    VRep::new(Basis::indexed(n), points)
}

/// `sum x_i = k` and `0 <= x_i <= 1`, canonicalized.
pub fn hypersimplex_hrep(n: usize, k: usize) -> Result<HRep> {
    check_hypersimplex(n, k)?;
    let mut cons =
        vec![LinearConstraint::new(row(n, (0..n).map(|i| (i, 1))), BigInt::from(k), ConstraintKind::Equality)?];
    for i in 0..n {
        cons.push(LinearConstraint::new(row(n, [(i, 1)]), BigInt::from(0), ConstraintKind::Inequality)?);
        cons.push(LinearConstraint::new(row(n, [(i, -1)]), BigInt::from(-1), ConstraintKind::Inequality)?);
    }
    canonicalize(&HRep::new(Basis::indexed(n), cons)?)
}
