//! JSON shapes. Numbers are exact rationals written as strings.

use pathpoly_core::certify::TreeCertificate;
use pathpoly_core::path_polytope::ConstraintOrigin;
use pathpoly_core::{Basis, LinearConstraint, RationalVector, Tree};
use serde::Serialize;

use crate::cdd::format_rational;

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DescriptorJson {
    F { edge: [String; 2] },
    G { center: String, toward: String },
    LeafSum,
    DegreeTwo { node: String },
    SingleEdge,
}

impl From<&ConstraintOrigin> for DescriptorJson {
    fn from(o: &ConstraintOrigin) -> Self {
        match o {
            ConstraintOrigin::EdgeNonnegative(e) => DescriptorJson::F { edge: [e.a().to_string(), e.b().to_string()] },
            ConstraintOrigin::Star { center, toward } => {
                DescriptorJson::G { center: center.to_string(), toward: toward.to_string() }
            }
            ConstraintOrigin::LeafSum => DescriptorJson::LeafSum,
            ConstraintOrigin::DegreeTwo { node } => DescriptorJson::DegreeTwo { node: node.to_string() },
            ConstraintOrigin::SingleEdge => DescriptorJson::SingleEdge,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ConstraintJson {
    pub kind: &'static str,
    pub coefficients: Vec<String>,
    pub rhs: String,
    pub text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub descriptors: Option<Vec<DescriptorJson>>,
}

impl ConstraintJson {
    pub fn new(c: &LinearConstraint, basis: &Basis) -> Self {
        ConstraintJson {
            kind: if c.is_equality() { "equality" } else { "inequality" },
            coefficients: c.coeffs().iter().map(ToString::to_string).collect(),
            rhs: c.rhs().to_string(),
            text: c.display_with(basis),
            descriptors: None,
        }
    }

    pub fn with_descriptors(mut self, d: Vec<DescriptorJson>) -> Self {
        self.descriptors = Some(d);
        self
    }
}

pub fn point_json(p: &RationalVector) -> Vec<String> {
    p.coords().iter().map(format_rational).collect()
}

pub fn edges_json(t: &Tree) -> Vec<[String; 2]> {
    t.edges().iter().map(|e| [e.a().to_string(), e.b().to_string()]).collect()
}

#[derive(Debug, Serialize)]
pub struct VertexJson {
    pub pair: [String; 2],
    pub point: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct VrepJson {
    pub edges: Vec<[String; 2]>,
    pub coordinates: Vec<String>,
    pub vertices: Vec<VertexJson>,
}

#[derive(Debug, Serialize)]
pub struct HrepJson {
    pub edges: Vec<[String; 2]>,
    pub mode: &'static str,
    pub coordinates: Vec<String>,
    pub equalities: Vec<ConstraintJson>,
    pub inequalities: Vec<ConstraintJson>,
}

#[derive(Debug, Serialize)]
pub struct MemberJson {
    pub point: Vec<String>,
    pub inside: bool,
    pub relative_interior: bool,
    pub violated: Option<ConstraintJson>,
    pub tight: Vec<ConstraintJson>,
}

#[derive(Debug, Serialize)]
pub struct CheckJson {
    pub name: &'static str,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct TreeJson {
    pub edges: Vec<[String; 2]>,
    pub leaves: usize,
    pub vertices: usize,
    pub dim: usize,
    pub facets: usize,
    pub passed: bool,
    pub checks: Vec<CheckJson>,
}

impl From<&TreeCertificate> for TreeJson {
    fn from(c: &TreeCertificate) -> Self {
        TreeJson {
            edges: edges_json(&c.tree),
            leaves: c.tree.leaves().len(),
            vertices: c.vertices,
            dim: c.dim,
            facets: c.facets,
            passed: c.passed(),
            checks: c
                .checks
                .iter()
                .map(|k| CheckJson { name: k.name, passed: k.passed, detail: k.detail.clone() })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CertifyJson {
    pub trees: Vec<TreeJson>,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Serialize)]
pub struct OracleJson {
    pub coordinates: Vec<String>,
    pub input_vertices: usize,
    pub dimension: usize,
    pub equalities: Vec<ConstraintJson>,
    pub facets: Vec<ConstraintJson>,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}
