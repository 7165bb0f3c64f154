//! End-to-end certification of the closed forms against the oracle.

use std::collections::BTreeSet;

use num::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::oracle::{assert_extremal, compare_hreps, minimal_hrep_with_cap, Comparison, OracleCap};
use crate::path_polytope::{facet_descriptors, hrep_general, hrep_theorem_main, path_vertex, vrep};
use crate::polytope::{affine_dimension, is_facet, vertices_on_hyperplane, HRep, LinearConstraint};
use crate::tfp::{reconstruct, GluingSpec};
use crate::tree::{split_at_edge, trees_up_to_edges, Tree};

/// Largest edge count accepted by [`certify_all`].
pub const MAX_EXHAUSTIVE_EDGES: usize = 8;

#[derive(Clone, Copy, Debug, Default)]
pub struct CertifyOptions {
    pub cap: OracleCap,
    /// Corrupt the closed-form description before comparing it with the
    /// oracle. Used to exercise the failure path.
    pub inject_fault: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: Option<String>,
}

impl Check {
    fn pass(name: &'static str) -> Self {
        Check { name, passed: true, detail: None }
    }

    fn fail(name: &'static str, detail: impl Into<String>) -> Self {
        Check { name, passed: false, detail: Some(detail.into()) }
    }

    fn from(name: &'static str, ok: bool, detail: impl FnOnce() -> String) -> Self {
        if ok {
            Self::pass(name)
        } else {
            Self::fail(name, detail())
        }
    }
}

#[derive(Clone, Debug)]
pub struct TreeCertificate {
    pub tree: Tree,
    pub vertices: usize,
    pub dim: usize,
    pub facets: usize,
    pub checks: Vec<Check>,
}

impl TreeCertificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn main_theorem_applies(t: &Tree) -> bool {
    t.node_count() > 3 && t.degree_two_nodes().is_empty()
}

fn corrupt(h: &HRep) -> HRep {
    let mut cons: Vec<LinearConstraint> = h.constraints().cloned().collect();
    let k = cons.iter().position(|c| !c.is_equality()).unwrap_or(0);
    let c = &cons[k];
    cons[k] = LinearConstraint::new(c.coeffs().to_vec(), c.rhs() + BigInt::from(1), c.kind()).unwrap();
    HRep::new(h.basis().clone(), cons).unwrap()
}

/// Splits of `t` at internal edges where both halves have at least three
/// leaves, so that both gluing projections hit every vertex of the triangle.
pub fn admissible_splits(t: &Tree) -> Result<Vec<GluingSpec>> {
    let mut out = Vec::new();
    for e in t.edges() {
        if t.is_leaf_edge(e) {
            continue;
        }
        let split = split_at_edge(t, e.a().as_str(), e.b().as_str())?;
        if split.left.leaves().len() >= 3 && split.right.leaves().len() >= 3 {
            out.push(GluingSpec::from_split(split)?);
        }
    }
    Ok(out)
}

/// Runs every check on one tree.
pub fn certify_tree(t: &Tree, opts: &CertifyOptions) -> Result<TreeCertificate> {
    let v = vrep(t);
    let oracle = minimal_hrep_with_cap(&v, opts.cap)?;
    let dim = affine_dimension(&v)?;
    let mut checks = Vec::new();

    checks.push(Check::from("vertices are extremal", assert_extremal(&v), || "a path vector is not a vertex".into()));

    if t.node_count() > 2 {
        let expected = t.edge_count() - t.degree_two_nodes().len() - 1;
        checks.push(Check::from("dimension law", dim == expected, || format!("dimension {dim}, expected {expected}")));
    }

    let main = main_theorem_applies(t);
    let mut closed = if main { hrep_theorem_main(t)? } else { hrep_general(t) };
    if opts.inject_fault {
        closed = corrupt(&closed);
    }
    let name = if main { "closed form equals oracle" } else { "general form matches oracle" };
    let cmp = compare_hreps(&closed, &oracle.hrep())?;
    checks.push(match cmp {
        Comparison::Equal => Check::pass(name),
        Comparison::Equivalent if !main => Check::pass(name),
        Comparison::Equivalent => Check::fail(name, "same polytope but different canonical constraints"),
        Comparison::Different { witness, in_first } => Check::fail(
            name,
            format!(
                "witness {witness} lies in the {} description only",
                if in_first { "closed-form" } else { "oracle" }
            ),
        ),
    });

    if main {
        let mut bad = Vec::new();
        for d in facet_descriptors(t)? {
            let face = vertices_on_hyperplane(&v, &d.constraint)?;
            let expected: BTreeSet<_> =
                d.incident.iter().map(|(i, j)| path_vertex(t, i.as_str(), j.as_str())).collect::<Result<_>>()?;
            let found: BTreeSet<_> = face.vertices().iter().cloned().collect();
            if found != expected || !is_facet(&v, &d.constraint)? {
                bad.push(d.constraint.display_with(&t.basis()));
            }
        }
        checks.push(Check::from("facet incidence", bad.is_empty(), || format!("mismatched: {}", bad.join("; "))));
    }

    let splits = admissible_splits(t)?;
    let mut bad = Vec::new();
    for spec in &splits {
        let r = reconstruct(spec)?;
        let d1 = affine_dimension(&vrep(&spec.t1))?;
        let d2 = affine_dimension(&vrep(&spec.t2))?;
        let dt = affine_dimension(&r.trace.product)?;
        if !r.image.same_vertex_set(&v) || dt != d1 + d2 {
            bad.push(spec.e1.edge().to_string());
        }
    }
    if !splits.is_empty() {
        checks.push(Check::from("toric fiber product reconstruction", bad.is_empty(), || {
            format!("failed splits: {}", bad.join(", "))
        }));
    }

    Ok(TreeCertificate { tree: t.clone(), vertices: v.len(), dim, facets: oracle.facets.len(), checks })
}

/// Certifies every tree with at most `max_edges` edges, in enumeration
/// order. Trees are checked in parallel.
pub fn certify_all(max_edges: usize, opts: &CertifyOptions) -> Result<Vec<TreeCertificate>> {
    if max_edges > MAX_EXHAUSTIVE_EDGES {
        return Err(Error::CapExceeded { what: "edges", actual: max_edges, limit: MAX_EXHAUSTIVE_EDGES });
    }
    trees_up_to_edges(max_edges).par_iter().map(|t| certify_tree(t, opts)).collect()
}
