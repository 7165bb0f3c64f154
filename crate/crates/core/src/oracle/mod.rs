//! Brute-force facet enumeration, used to certify the closed forms.
//!
//! Nothing here looks at trees. The oracle sees a point cloud, finds its
//! affine hull by linear algebra and its facets by running the double
//! description method on the cone of valid inequalities.

mod dd;

use std::time::{Duration, Instant};

use num::{BigInt, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Rational};
use crate::polytope::{canonicalize, Basis, ConstraintKind, HRep, LinearConstraint, RationalVector, VRep};

/// Environment variable overriding [`OracleCap::default`]. Accepts `C` or
/// `C,V` with `C` the coordinate limit and `V` the vertex limit.
pub const CAP_ENV: &str = "PATHPOLY_ORACLE_CAP";

/// Largest inputs the oracle agrees to work on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleCap {
    pub coords: usize,
    pub vertices: usize,
}

impl Default for OracleCap {
    fn default() -> Self {
        OracleCap { coords: 12, vertices: 100 }
    }
}

impl OracleCap {
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidOracleCap(s.to_string());
        let mut parts = s.trim().split(',');
        let coords = parts.next().unwrap().trim().parse().map_err(|_| bad())?;
        let vertices = match parts.next() {
            Some(v) => v.trim().parse().map_err(|_| bad())?,
            None => OracleCap::default().vertices,
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(OracleCap { coords, vertices })
    }

    /// The default cap, or the value of [`CAP_ENV`] when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(CAP_ENV) {
            Ok(s) => Self::parse(&s),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn check(&self, v: &VRep) -> Result<()> {
        if v.dim() > self.coords {
            return Err(Error::CapExceeded { what: "coordinates", actual: v.dim(), limit: self.coords });
        }
        if v.len() > self.vertices {
            return Err(Error::CapExceeded { what: "vertices", actual: v.len(), limit: self.vertices });
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub basis: Basis,
    pub input_vertex_count: usize,
    pub affine_dim: usize,
    /// Canonical facet inequalities.
    pub facets: Vec<LinearConstraint>,
    /// Canonical equalities spanning the affine hull.
    pub equalities: Vec<LinearConstraint>,
    pub elapsed: Duration,
}

impl OracleReport {
    pub fn hrep(&self) -> HRep {
        HRep::new(self.basis.clone(), self.equalities.iter().chain(&self.facets).cloned().collect())
            .expect("oracle output matches its basis")
    }
}

/// Affine hull and facets of a point cloud, with the facets written in the
/// free coordinates of the hull.
struct Hull {
    equalities: Vec<LinearConstraint>,
    free: Vec<usize>,
    /// `(a, b)` meaning `a · x_free + b >= 0`.
    facets: Vec<(Vec<BigInt>, BigInt)>,
}

fn hull(v: &VRep) -> Result<Hull> {
    if v.is_empty() {
        return Err(Error::EmptyVRep);
    }
    let n = v.dim();
    let lifted: Vec<Vec<Rational>> = v
        .vertices()
        .iter()
        .map(|p| p.coords().iter().cloned().chain([-Rational::from_integer(1.into())]).collect())
        .collect();
    let mut eqs = Vec::new();
    for z in linalg::nullspace(&lifted, n + 1) {
        eqs.push(LinearConstraint::from_rationals(&z[..n], &z[n], ConstraintKind::Equality)?);
    }
    let eq_hrep = canonicalize(&HRep::new(v.basis().clone(), eqs)?)?;
    let equalities = eq_hrep.equalities().to_vec();
    let pivots: Vec<usize> = equalities.iter().map(|c| c.coeffs().iter().position(|x| !x.is_zero()).unwrap()).collect();
    let free: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
    let d = free.len();
    if d == 0 {
        return Ok(Hull { equalities, free, facets: Vec::new() });
    }

    let rows: Vec<Vec<BigInt>> = v
        .vertices()
        .iter()
        .map(|p| {
            let r: Vec<Rational> =
                free.iter().map(|&i| p.coords()[i].clone()).chain([Rational::from_integer(1.into())]).collect();
            linalg::clear_denominators(&r)
        })
        .collect();
    let facets = dd::extreme_rays(&rows, d + 1)
        .into_iter()
        .map(|mut r| {
            let b = r.pop().unwrap();
            (r, b)
        })
        .collect();
    Ok(Hull { equalities, free, facets })
}

/// Minimal H-representation of `conv(v)`, refusing inputs beyond the cap
/// given by [`OracleCap::from_env`].
pub fn minimal_hrep(v: &VRep) -> Result<OracleReport> {
    minimal_hrep_with_cap(v, OracleCap::from_env()?)
}

pub fn minimal_hrep_with_cap(v: &VRep, cap: OracleCap) -> Result<OracleReport> {
    cap.check(v)?;
    let start = Instant::now();
    let h = hull(v)?;
    let n = v.dim();
    let mut cons = h.equalities.clone();
    for (a, b) in &h.facets {
        let mut coeffs = vec![BigInt::zero(); n];
        for (&i, c) in h.free.iter().zip(a) {
            coeffs[i] = c.clone();
        }
        cons.push(LinearConstraint::new(coeffs, -b, ConstraintKind::Inequality)?);
    }
    let canon = canonicalize(&HRep::new(v.basis().clone(), cons)?)?;
    Ok(OracleReport {
        basis: v.basis().clone(),
        input_vertex_count: v.len(),
        affine_dim: h.free.len(),
        facets: canon.inequalities().to_vec(),
        equalities: canon.equalities().to_vec(),
        elapsed: start.elapsed(),
    })
}

/// Whether every listed point is a vertex of the convex hull of the list.
pub fn assert_extremal(v: &VRep) -> bool {
    let Ok(h) = hull(v) else {
        return true;
    };
    let d = h.free.len();
    if d == 0 {
        return v.len() == 1;
    }
    v.vertices().iter().all(|p| {
        let x: Vec<Rational> = h.free.iter().map(|&i| p.coords()[i].clone()).collect();
        let mut tight: Vec<Vec<BigInt>> = h
            .facets
            .iter()
            .filter(|(a, b)| (linalg::dot_rational(a, &x) + Rational::from_integer(b.clone())).is_zero())
            .map(|(a, _)| a.clone())
            .collect();
        linalg::integer_rank(&mut tight) == d
    })
}

/// Indices of inequalities of `h` that a minimal description of `conv(v)`
/// would omit: those that do not define a facet, and those defining the same
/// facet as an earlier inequality.
pub fn redundant_inequalities(h: &HRep, v: &VRep) -> Result<Vec<usize>> {
    let mut faces: Vec<Vec<bool>> = Vec::new();
    let mut out = Vec::new();
    for (k, c) in h.inequalities().iter().enumerate() {
        if !crate::polytope::is_facet(v, c)? {
            out.push(k);
            continue;
        }
        let face: Vec<bool> = v.vertices().iter().map(|p| c.is_tight_at(p)).collect();
        if faces.contains(&face) {
            out.push(k);
        } else {
            faces.push(face);
        }
    }
    Ok(out)
}

/// Vertices and recession directions of an H-polyhedron. `None` when empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generators {
    pub vertices: Vec<RationalVector>,
    /// Extreme rays of the recession cone, with each lineality direction
    /// listed in both signs.
    pub rays: Vec<RationalVector>,
}

fn rational_row(c: &LinearConstraint) -> Vec<Rational> {
    c.coeffs()
        .iter()
        .map(|x| Rational::from_integer(x.clone()))
        .chain([-Rational::from_integer(c.rhs().clone())])
        .collect()
}

fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter().map(|r| r.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b)).collect()
}

/// Generators of `{x : h}` via the homogenized cone in `(x, t)`.
pub fn polyhedron_generators(h: &HRep) -> Option<Generators> {
    let n = h.basis().len();
    let eq_rows: Vec<Vec<Rational>> = h.equalities().iter().map(rational_row).collect();
    let mut ineq_rows: Vec<Vec<Rational>> = h.inequalities().iter().map(rational_row).collect();
    let mut t_row = vec![Rational::zero(); n + 1];
    t_row[n] = Rational::from_integer(1.into());
    ineq_rows.push(t_row);

    // columns of `param` span the solutions of the equalities
    let null = linalg::nullspace(&eq_rows, n + 1);
    if null.is_empty() {
        return None;
    }
    let to_z = |y: &[Rational]| -> Vec<Rational> {
        (0..n + 1).map(|i| null.iter().zip(y).fold(Rational::zero(), |acc, (col, c)| acc + &col[i] * c)).collect()
    };
    let g: Vec<Vec<Rational>> = ineq_rows
        .iter()
        .map(|r| null.iter().map(|col| r.iter().zip(col).fold(Rational::zero(), |a, (x, y)| a + x * y)).collect())
        .collect();
    let m = null.len();

    let lineality = linalg::nullspace(&g, m);
    let rowspace = linalg::rref(&g, m).rows;

    let mut cone_rays: Vec<Vec<Rational>> = Vec::new();
    for l in &lineality {
        cone_rays.push(to_z(l));
        cone_rays.push(to_z(&l.iter().map(|x| -x.clone()).collect::<Vec<_>>()));
    }
    if !rowspace.is_empty() {
        let r = rowspace.len();
        // y = rowspaceᵀ u
        let q_t: Vec<Vec<Rational>> = (0..m).map(|i| rowspace.iter().map(|q| q[i].clone()).collect()).collect();
        let rows: Vec<Vec<BigInt>> = g
            .iter()
            .map(|gr| {
                let row: Vec<Rational> =
                    (0..r).map(|k| gr.iter().zip(&q_t).fold(Rational::zero(), |a, (x, qi)| a + x * &qi[k])).collect();
                linalg::clear_denominators(&row)
            })
            .collect();
        for u in dd::extreme_rays(&rows, r) {
            let u: Vec<Rational> = u.into_iter().map(Rational::from_integer).collect();
            cone_rays.push(to_z(&mat_vec(&q_t, &u)));
        }
    }

    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for z in cone_rays {
        let t = z[n].clone();
        if t.is_positive() {
            vertices.push(RationalVector::new(z[..n].iter().map(|x| x / &t).collect()));
        } else {
            rays.push(RationalVector::new(z[..n].to_vec()));
        }
    }
    if vertices.is_empty() {
        return None;
    }
    vertices.sort();
    vertices.dedup();
    Some(Generators { vertices, rays })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    /// Identical canonical constraint systems.
    Equal,
    /// Different systems describing the same set.
    Equivalent,
    /// A point in exactly one of the two sets; `in_first` tells which.
    Different { witness: RationalVector, in_first: bool },
}

fn homogeneous_ok(c: &LinearConstraint, r: &RationalVector) -> bool {
    let s = linalg::dot_rational(c.coeffs(), r.coords());
    match c.kind() {
        ConstraintKind::Inequality => !s.is_negative(),
        ConstraintKind::Equality => s.is_zero(),
    }
}

/// A point of `g` outside `other`, if there is one.
fn escape(g: &Generators, other: &HRep) -> Option<RationalVector> {
    if let Some(v) = g.vertices.iter().find(|v| other.first_violated(v).unwrap().is_some()) {
        return Some(v.clone());
    }
    let v0 = &g.vertices[0];
    for r in &g.rays {
        if let Some(c) = other.constraints().find(|c| !homogeneous_ok(c, r)) {
            let slope = linalg::dot_rational(c.coeffs(), r.coords()).abs();
            let lambda = c.slack(v0).abs() / slope + Rational::from_integer(1.into());
            let w = v0.coords().iter().zip(r.coords()).map(|(a, b)| a + &lambda * b).collect();
            return Some(RationalVector::new(w));
        }
    }
    None
}

/// Compares two H-representations as constraint systems and as sets.
pub fn compare_hreps(a: &HRep, b: &HRep) -> Result<Comparison> {
    if a.basis().len() != b.basis().len() {
        return Err(Error::BasisMismatch { expected: a.basis().len(), found: b.basis().len() });
    }
    let ca = canonicalize(a).ok();
    let cb = canonicalize(b).ok();
    if let (Some(x), Some(y)) = (&ca, &cb) {
        if x.equalities() == y.equalities() && x.inequalities() == y.inequalities() {
            return Ok(Comparison::Equal);
        }
    }
    let ga = ca.as_ref().and_then(polyhedron_generators);
    let gb = cb.as_ref().and_then(polyhedron_generators);
    match (ga, gb) {
        (None, None) => Ok(Comparison::Equivalent),
        (Some(g), None) => Ok(Comparison::Different { witness: g.vertices[0].clone(), in_first: true }),
        (None, Some(g)) => Ok(Comparison::Different { witness: g.vertices[0].clone(), in_first: false }),
        (Some(ga), Some(gb)) => {
            if let Some(w) = escape(&ga, b) {
                return Ok(Comparison::Different { witness: w, in_first: true });
            }
            if let Some(w) = escape(&gb, a) {
                return Ok(Comparison::Different { witness: w, in_first: false });
            }
            Ok(Comparison::Equivalent)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ratio, rational};

    fn vrep(points: &[&[i64]]) -> VRep {
        VRep::new(Basis::indexed(points[0].len()), points.iter().map(|p| RationalVector::from_integers(p)).collect())
            .unwrap()
    }

    fn tri() -> VRep {
        vrep(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]])
    }

    fn delta42() -> VRep {
        vrep(&[&[1, 1, 0, 0], &[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1], &[0, 0, 1, 1]])
    }

    fn hrep(n: usize, cons: Vec<LinearConstraint>) -> HRep {
        HRep::new(Basis::indexed(n), cons).unwrap()
    }

    #[test]
    fn triangle() {
        let r = minimal_hrep(&tri()).unwrap();
        assert_eq!(r.affine_dim, 2);
        assert_eq!(r.equalities, vec![LinearConstraint::eq(&[1, 1, 1], 2).unwrap()]);
        assert_eq!(r.facets.len(), 3);
        let g_form = hrep(
            3,
            vec![
                LinearConstraint::eq(&[1, 1, 1], 2).unwrap(),
                LinearConstraint::ge(&[-1, 1, 1], 0).unwrap(),
                LinearConstraint::ge(&[1, -1, 1], 0).unwrap(),
                LinearConstraint::ge(&[1, 1, -1], 0).unwrap(),
            ],
        );
        assert_eq!(compare_hreps(&r.hrep(), &g_form).unwrap(), Comparison::Equal);
    }

    #[test]
    fn second_hypersimplex_in_four_coordinates() {
        let r = minimal_hrep(&delta42()).unwrap();
        assert_eq!((r.equalities.len(), r.facets.len(), r.affine_dim), (1, 8, 3));
    }

    #[test]
    fn single_point_and_segment() {
        let r = minimal_hrep(&vrep(&[&[1, 1]])).unwrap();
        assert_eq!((r.equalities.len(), r.facets.len(), r.affine_dim), (2, 0, 0));
        let r = minimal_hrep(&vrep(&[&[0, 0], &[1, 1]])).unwrap();
        assert_eq!(r.equalities, vec![LinearConstraint::eq(&[1, -1], 0).unwrap()]);
        assert_eq!(r.facets.len(), 2);
    }

    #[test]
    fn empty_input_and_cap() {
        let empty = VRep::new(Basis::indexed(2), vec![]).unwrap();
        assert!(matches!(minimal_hrep(&empty), Err(Error::EmptyVRep)));
        let cap = OracleCap { coords: 3, vertices: 100 };
        assert_eq!(
            minimal_hrep_with_cap(&delta42(), cap).unwrap_err(),
            Error::CapExceeded { what: "coordinates", actual: 4, limit: 3 }
        );
        let cap = OracleCap { coords: 12, vertices: 5 };
        assert!(matches!(minimal_hrep_with_cap(&delta42(), cap), Err(Error::CapExceeded { what: "vertices", .. })));
    }

    #[test]
    fn cap_parsing() {
        assert_eq!(OracleCap::parse("14").unwrap(), OracleCap { coords: 14, vertices: 100 });
        assert_eq!(OracleCap::parse("14,300").unwrap(), OracleCap { coords: 14, vertices: 300 });
        assert!(OracleCap::parse("x").is_err());
        assert!(OracleCap::parse("1,2,3").is_err());
    }

    #[test]
    fn extremality() {
        assert!(assert_extremal(&delta42()));
        let mut pts = tri().vertices().to_vec();
        pts.push(RationalVector::new(vec![ratio(2, 3), ratio(2, 3), ratio(2, 3)]));
        assert!(!assert_extremal(&VRep::new(Basis::indexed(3), pts).unwrap()));
        // midpoint of an edge
        let mut pts = tri().vertices().to_vec();
        pts.push(RationalVector::new(vec![rational(1), ratio(1, 2), ratio(1, 2)]));
        assert!(!assert_extremal(&VRep::new(Basis::indexed(3), pts).unwrap()));
        assert!(assert_extremal(&vrep(&[&[5, 5]])));
    }

    #[test]
    fn box_form_is_equivalent_to_g_form() {
        let mut boxed = vec![LinearConstraint::eq(&[1, 1, 1], 2).unwrap()];
        for i in 0..3 {
            let mut e = [0i64; 3];
            e[i] = 1;
            boxed.push(LinearConstraint::ge(&e, 0).unwrap());
            e[i] = -1;
            boxed.push(LinearConstraint::ge(&e, -1).unwrap());
        }
        let oracle = minimal_hrep(&tri()).unwrap().hrep();
        assert_eq!(compare_hreps(&hrep(3, boxed), &oracle).unwrap(), Comparison::Equivalent);
    }

    #[test]
    fn different_dimensions_give_a_witness() {
        let a = minimal_hrep(&delta42()).unwrap().hrep();
        let padded = vrep(&[&[1, 1, 0, 0], &[1, 0, 1, 0], &[0, 1, 1, 0]]);
        let b = minimal_hrep(&padded).unwrap().hrep();
        match compare_hreps(&a, &b).unwrap() {
            Comparison::Different { witness, in_first } => {
                let (inside, outside) = if in_first { (&a, &b) } else { (&b, &a) };
                assert!(inside.first_violated(&witness).unwrap().is_none());
                assert!(outside.first_violated(&witness).unwrap().is_some());
            }
            other => panic!("expected a difference, got {other:?}"),
        }
        let c = minimal_hrep(&tri()).unwrap().hrep();
        assert!(matches!(compare_hreps(&a, &c), Err(Error::BasisMismatch { .. })));
    }

    #[test]
    fn unbounded_difference_uses_a_ray() {
        // x >= 0 versus 0 <= x <= 1
        let a = hrep(1, vec![LinearConstraint::ge(&[1], 0).unwrap()]);
        let b = hrep(1, vec![LinearConstraint::ge(&[1], 0).unwrap(), LinearConstraint::ge(&[-1], -1).unwrap()]);
        match compare_hreps(&a, &b).unwrap() {
            Comparison::Different { witness, in_first: true } => {
                assert!(b.first_violated(&witness).unwrap().is_some());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn generators_with_lineality() {
        // x1 + x2 = 2 in the plane: a line
        let h = hrep(2, vec![LinearConstraint::eq(&[1, 1], 2).unwrap()]);
        let g = polyhedron_generators(&h).unwrap();
        assert_eq!(g.vertices.len(), 1);
        assert_eq!(g.rays.len(), 2);
        let infeasible = hrep(1, vec![LinearConstraint::ge(&[1], 1).unwrap(), LinearConstraint::ge(&[-1], 0).unwrap()]);
        assert!(polyhedron_generators(&infeasible).is_none());
    }

    #[test]
    fn redundancy_detection() {
        let h = hrep(
            3,
            vec![
                LinearConstraint::eq(&[1, 1, 1], 2).unwrap(),
                LinearConstraint::ge(&[1, 0, 0], 0).unwrap(),
                LinearConstraint::ge(&[-1, 1, 1], 0).unwrap(),
                LinearConstraint::ge(&[1, -1, 1], 0).unwrap(),
                LinearConstraint::ge(&[1, 1, -1], 0).unwrap(),
                LinearConstraint::ge(&[-2, 2, 2], 0).unwrap(),
            ],
        );
        // x1 >= 0 is not a facet; the last row repeats a facet
        assert_eq!(redundant_inequalities(&h, &tri()).unwrap(), vec![0, 4]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn cloud() -> impl Strategy<Value = VRep> {
            (1usize..=4).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-2i64..=2, n), 1..8)).prop_map(
                |pts| {
                    let n = pts[0].len();
                    VRep::new(Basis::indexed(n), pts.iter().map(|p| RationalVector::from_integers(p)).collect())
                        .unwrap()
                },
            )
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn output_is_sound_and_minimal(v in cloud()) {
                let r = minimal_hrep(&v).unwrap();
                let h = r.hrep();
                for p in v.vertices() {
                    prop_assert!(h.first_violated(p).unwrap().is_none());
                }
                prop_assert_eq!(r.affine_dim, crate::polytope::affine_dimension(&v).unwrap());
                for f in &r.facets {
                    prop_assert!(crate::polytope::is_facet(&v, f).unwrap());
                }
                prop_assert!(redundant_inequalities(&h, &v).unwrap().is_empty());
            }

            #[test]
            fn output_is_deterministic(v in cloud()) {
                let a = minimal_hrep(&v).unwrap();
                let mut pts = v.vertices().to_vec();
                pts.reverse();
                let b = minimal_hrep(&VRep::new(v.basis().clone(), pts).unwrap()).unwrap();
                prop_assert_eq!(a.hrep(), b.hrep());
            }

            #[test]
            fn generators_recover_the_hull(v in cloud()) {
                let h = minimal_hrep(&v).unwrap().hrep();
                let g = polyhedron_generators(&h).unwrap();
                prop_assert!(g.rays.is_empty());
                for p in &g.vertices {
                    prop_assert!(v.vertices().contains(p));
                }
                let verts = VRep::new(v.basis().clone(), g.vertices.clone()).unwrap();
                prop_assert_eq!(minimal_hrep(&verts).unwrap().hrep(), h);
            }

            #[test]
            fn compare_is_reflexive(v in cloud()) {
                let h = minimal_hrep(&v).unwrap().hrep();
                prop_assert_eq!(compare_hreps(&h, &h).unwrap(), Comparison::Equal);
            }
        }
    }
}
