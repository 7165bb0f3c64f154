//! Free joins with the origin, gluing projections onto the triangle and toric
//! fiber products of path polytopes.

use std::fmt;

use num::Zero;

use crate::error::{Error, Result};
use crate::linalg::{ratio, rational, Rational};
use crate::path_polytope::vrep;
use crate::polytope::{affine_dimension, AffineMap, Basis, RationalVector, VRep};
use crate::tree::{glue, EdgeOrigin, EdgeSplit, LeafEdge, Tree};

/// `V` together with the origin, which must lie outside `aff(V)`.
pub fn free_join_with_origin(v: &VRep) -> Result<VRep> {
    let origin = RationalVector::zeros(v.dim());
    let mut points = v.vertices().to_vec();
    points.push(origin);
    let joined = VRep::new(v.basis().clone(), points)?;
    if joined.len() == v.len() || affine_dimension(&joined)? != affine_dimension(v)? + 1 {
        return Err(Error::OriginInAffineHull);
    }
    Ok(joined)
}

/// Two trees and the leaf edges along which they are glued.
#[derive(Clone, Debug)]
pub struct GluingSpec {
    pub t1: Tree,
    pub e1: LeafEdge,
    pub t2: Tree,
    pub e2: LeafEdge,
}

impl GluingSpec {
    /// Validates the spec. Both trees need at least two edges so that every
    /// leaf edge has an internal endpoint.
    pub fn new(t1: Tree, e1: LeafEdge, t2: Tree, e2: LeafEdge) -> Result<Self> {
        for (t, side) in [(&t1, "first"), (&t2, "second")] {
            if t.edge_count() < 2 {
                return Err(Error::InvalidSpec(format!("the {side} tree has a single edge")));
            }
        }
        glue(&t1, &e1, &t2, &e2)?;
        Ok(GluingSpec { t1, e1, t2, e2 })
    }

    pub fn from_split(split: EdgeSplit) -> Result<Self> {
        Self::new(split.left, split.left_edge, split.right, split.right_edge)
    }

    pub fn glued(&self) -> (Tree, Vec<EdgeOrigin>) {
        glue(&self.t1, &self.e1, &self.t2, &self.e2).expect("validated on construction")
    }

    fn e1_index(&self) -> usize {
        self.t1.edge_index(&self.e1.edge()).unwrap()
    }

    fn e2_index(&self) -> usize {
        self.t2.edge_index(&self.e2.edge()).unwrap()
    }

    /// Coordinates of the product: edges of `t1`, then edges of `t2`.
    pub fn product_basis(&self) -> Basis {
        self.t1.basis().concat(&self.t2.basis())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A vertex of the triangle `conv{(1,0,0), (0,1,0), (0,0,1)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Delta3 {
    E1,
    E2,
    E3,
}

impl Delta3 {
    pub const ALL: [Delta3; 3] = [Delta3::E1, Delta3::E2, Delta3::E3];

    pub fn point(self) -> RationalVector {
        match self {
            Delta3::E1 => RationalVector::from_integers(&[1, 0, 0]),
            Delta3::E2 => RationalVector::from_integers(&[0, 1, 0]),
            Delta3::E3 => RationalVector::from_integers(&[0, 0, 1]),
        }
    }

    pub fn classify(p: &RationalVector) -> Option<Delta3> {
        Delta3::ALL.into_iter().find(|d| d.point() == *p)
    }
}

impl fmt::Display for Delta3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Delta3::E1 => "(1,0,0)",
            Delta3::E2 => "(0,1,0)",
            Delta3::E3 => "(0,0,1)",
        })
    }
}

fn delta3_basis() -> Basis {
    Basis::new(["d1", "d2", "d3"])
}

/// Affine map from the edge space of one factor onto the triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralProjection {
    pub side: Side,
    pub map: AffineMap,
}

impl IntegralProjection {
    pub fn apply(&self, x: &RationalVector) -> Result<RationalVector> {
        self.map.apply(x)
    }
}

/// The gluing projections of a spec.
///
/// With `l(e)` the indicator of leaf edges, the left map sends the basis
/// vector of `e` to `(l(e)/2 - [e = e1], [e = e1], -l(e)/2)` and the origin
/// to `(0,0,1)`; the right map sends it to `(-l(e)/2, [e = e2],
/// l(e)/2 - [e = e2])` and the origin to `(1,0,0)`.
pub fn gluing_projections(spec: &GluingSpec) -> Result<(IntegralProjection, IntegralProjection)> {
    let half = ratio(1, 2);
    let build = |t: &Tree, glued: usize, side: Side| {
        let leaf: Vec<bool> = t.edges().iter().map(|e| t.is_leaf_edge(e)).collect();
        let mut m = vec![vec![Rational::zero(); t.edge_count()]; 3];
        for (k, &is_leaf) in leaf.iter().enumerate() {
            let l = if is_leaf { half.clone() } else { Rational::zero() };
            let g = if k == glued { rational(1) } else { Rational::zero() };
            let col = match side {
                Side::Left => [&l - &g, g.clone(), -l.clone()],
                Side::Right => [-l.clone(), g.clone(), &l - &g],
            };
            for (r, c) in col.into_iter().enumerate() {
                m[r][k] = c;
            }
        }
        let offset = match side {
            Side::Left => vec![rational(0), rational(0), rational(1)],
            Side::Right => vec![rational(1), rational(0), rational(0)],
        };
        IntegralProjection { side, map: AffineMap::new(t.basis(), delta3_basis(), m, offset) }
    };
    if spec.t1.edge_count() < 2 || spec.t2.edge_count() < 2 {
        return Err(Error::InvalidSpec("both trees need at least two edges".into()));
    }
    Ok((build(&spec.t1, spec.e1_index(), Side::Left), build(&spec.t2, spec.e2_index(), Side::Right)))
}

/// A pair of factor vertices with the same image in the triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatchedPair {
    pub left: usize,
    pub right: usize,
    pub class: Delta3,
}

/// Everything computed on the way to a toric fiber product.
#[derive(Clone, Debug)]
pub struct TfpTrace {
    pub left_classes: Vec<Delta3>,
    pub right_classes: Vec<Delta3>,
    pub pairs: Vec<MatchedPair>,
    pub product: VRep,
}

fn classes(v: &VRep, p: &IntegralProjection) -> Result<Vec<Delta3>> {
    let mut out = Vec::with_capacity(v.len());
    for (i, x) in v.vertices().iter().enumerate() {
        let y = p.apply(x)?;
        let c = Delta3::classify(&y).ok_or_else(|| {
            Error::ProjectionImageMismatch(format!(
                "{:?} vertex #{i} maps to {y}, not a vertex of the triangle",
                p.side
            ))
        })?;
        out.push(c);
    }
    for d in Delta3::ALL {
        if !out.contains(&d) {
            return Err(Error::ProjectionImageMismatch(format!("{:?} image misses {d}", p.side)));
        }
    }
    Ok(out)
}

/// Toric fiber product with the full matching trace. Pairs are listed in
/// lexicographic order of (left index, right index).
pub fn toric_fiber_product_traced(
    v1: &VRep,
    v2: &VRep,
    p1: &IntegralProjection,
    p2: &IntegralProjection,
) -> Result<TfpTrace> {
    let left_classes = classes(v1, p1)?;
    let right_classes = classes(v2, p2)?;
    let mut pairs = Vec::new();
    let mut points = Vec::new();
    for (i, &a) in left_classes.iter().enumerate() {
        for (j, &b) in right_classes.iter().enumerate() {
            if a == b {
                pairs.push(MatchedPair { left: i, right: j, class: a });
                points.push(v1.vertices()[i].concat(&v2.vertices()[j]));
            }
        }
    }
    let product = VRep::new(v1.basis().concat(v2.basis()), points)?;
    Ok(TfpTrace { left_classes, right_classes, pairs, product })
}

pub fn toric_fiber_product(v1: &VRep, v2: &VRep, p1: &IntegralProjection, p2: &IntegralProjection) -> Result<VRep> {
    Ok(toric_fiber_product_traced(v1, v2, p1, p2)?.product)
}

/// The map from the product coordinates to the edge space of the glued tree:
/// both glued leaf edges go to half the merged edge, every other edge to
/// itself.
pub fn tfp_isomorphism(spec: &GluingSpec) -> Result<AffineMap> {
    if spec.t1.edge_count() < 2 || spec.t2.edge_count() < 2 {
        return Err(Error::InvalidSpec("both trees need at least two edges".into()));
    }
    let (glued, origins) = spec.glued();
    let n1 = spec.t1.edge_count();
    let width = n1 + spec.t2.edge_count();
    let mut m = vec![vec![Rational::zero(); width]; glued.edge_count()];
    for (row, origin) in m.iter_mut().zip(&origins) {
        match origin {
            EdgeOrigin::Left(e) => row[spec.t1.edge_index(e).unwrap()] = rational(1),
            EdgeOrigin::Right(e) => row[n1 + spec.t2.edge_index(e).unwrap()] = rational(1),
            EdgeOrigin::Merged { .. } => {
                row[spec.e1_index()] = ratio(1, 2);
                row[n1 + spec.e2_index()] = ratio(1, 2);
            }
        }
    }
    Ok(AffineMap::linear(spec.product_basis(), glued.basis(), m))
}

/// The factor polytopes, their product and its image in the glued tree.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub left: VRep,
    pub right: VRep,
    pub trace: TfpTrace,
    pub image: VRep,
    pub glued: Tree,
}

/// Builds the path polytope of the glued tree from its two factors.
pub fn reconstruct(spec: &GluingSpec) -> Result<Reconstruction> {
    let left = free_join_with_origin(&vrep(&spec.t1))?;
    let right = free_join_with_origin(&vrep(&spec.t2))?;
    let (p1, p2) = gluing_projections(spec)?;
    let trace = toric_fiber_product_traced(&left, &right, &p1, &p2)?;
    let phi = tfp_isomorphism(spec)?;
    let image = phi.apply_all(&trace.product)?;
    Ok(Reconstruction { left, right, trace, image, glued: spec.glued().0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::NodeId;

    fn leaf_edge(attach: &str, leaf: &str) -> LeafEdge {
        LeafEdge { attach: NodeId::new(attach).unwrap(), leaf: NodeId::new(leaf).unwrap() }
    }

    fn example() -> GluingSpec {
        GluingSpec::new(
            Tree::parse_edge_list("1 2\n1 3\n1 4").unwrap(),
            leaf_edge("1", "4"),
            Tree::parse_edge_list("5 6\n5 7\n5 8").unwrap(),
            leaf_edge("5", "8"),
        )
        .unwrap()
    }

    fn v(x: &[i64]) -> RationalVector {
        RationalVector::from_integers(x)
    }

    #[test]
    fn free_join_raises_dimension() {
        let star = vrep(&Tree::parse_edge_list("1 2\n1 3\n1 4").unwrap());
        let j = free_join_with_origin(&star).unwrap();
        assert_eq!((j.len(), affine_dimension(&j).unwrap()), (4, 3));
        let path = vrep(&Tree::parse_edge_list("a b\nb c").unwrap());
        assert_eq!(affine_dimension(&free_join_with_origin(&path).unwrap()).unwrap(), 1);
        let through_origin = VRep::new(Basis::indexed(2), vec![v(&[1, 1]), v(&[-1, -1])]).unwrap();
        assert_eq!(free_join_with_origin(&through_origin), Err(Error::OriginInAffineHull));
    }

    #[test]
    fn projections_on_the_example() {
        let (p1, p2) = gluing_projections(&example()).unwrap();
        // T1 edges [{1,2},{1,3},{1,4}], T2 edges [{5,6},{5,7},{5,8}]
        assert_eq!(p1.apply(&v(&[1, 1, 0])).unwrap(), v(&[1, 0, 0]));
        assert_eq!(p1.apply(&v(&[1, 0, 1])).unwrap(), v(&[0, 1, 0]));
        assert_eq!(p1.apply(&v(&[0, 0, 0])).unwrap(), v(&[0, 0, 1]));
        assert_eq!(p2.apply(&v(&[1, 1, 0])).unwrap(), v(&[0, 0, 1]));
        assert_eq!(p2.apply(&v(&[1, 0, 1])).unwrap(), v(&[0, 1, 0]));
        assert_eq!(p2.apply(&v(&[0, 0, 0])).unwrap(), v(&[1, 0, 0]));
    }

    #[test]
    fn product_of_the_example() {
        let r = reconstruct(&example()).unwrap();
        assert_eq!(r.trace.product.len(), 6);
        assert!(r.trace.product.vertices().contains(&v(&[1, 0, 1, 1, 0, 1])));
        assert!(r.trace.product.vertices().contains(&v(&[1, 1, 0, 0, 0, 0])));
        assert!(r.image.same_vertex_set(&vrep(&r.glued)));
        let phi = tfp_isomorphism(&example()).unwrap();
        assert_eq!(phi.apply(&v(&[1, 0, 1, 1, 0, 1])).unwrap(), v(&[1, 0, 1, 1, 0]));
        assert_eq!(phi.apply(&v(&[1, 1, 0, 0, 0, 0])).unwrap(), v(&[1, 1, 0, 0, 0]));
    }

    #[test]
    fn matched_pair_counts_by_class() {
        let r = reconstruct(&example()).unwrap();
        let count = |c| r.trace.pairs.iter().filter(|p| p.class == c).count();
        // (L1-1)(L2-1), C(L1-1,2), C(L2-1,2) with L1 = L2 = 3
        assert_eq!((count(Delta3::E2), count(Delta3::E1), count(Delta3::E3)), (4, 1, 1));
    }

    #[test]
    fn image_mismatch_is_reported() {
        let spec = example();
        let (p1, p2) = gluing_projections(&spec).unwrap();
        let no_origin = vrep(&spec.t1);
        let right = free_join_with_origin(&vrep(&spec.t2)).unwrap();
        assert!(matches!(toric_fiber_product(&no_origin, &right, &p1, &p2), Err(Error::ProjectionImageMismatch(_))));
    }

    #[test]
    fn spec_validation() {
        let single = Tree::parse_edge_list("a k").unwrap();
        let star = Tree::parse_edge_list("5 6\n5 7\n5 8").unwrap();
        assert!(matches!(
            GluingSpec::new(single, leaf_edge("a", "k"), star.clone(), leaf_edge("5", "8")),
            Err(Error::InvalidSpec(_))
        ));
        let other = Tree::parse_edge_list("5 1\n5 2\n5 3").unwrap();
        assert!(matches!(
            GluingSpec::new(other, leaf_edge("5", "1"), star, leaf_edge("5", "8")),
            Err(Error::LabelCollision(_))
        ));
    }
}
