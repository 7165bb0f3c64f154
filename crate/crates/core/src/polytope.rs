//! Exact V- and H-representations.
//!
//! Inequalities are always stored as `coeffs · x >= rhs` with primitive
//! integer data. Equalities are stored the same way with `=` and with a
//! positive leading coefficient.

use std::fmt;
use std::sync::Arc;

use num::{BigInt, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Rational};

/// Names of the coordinates of an ambient space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Basis(Arc<Vec<String>>);

impl Basis {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Basis(Arc::new(names.into_iter().map(Into::into).collect()))
    }

    /// Coordinates named `1, ..., n`.
    pub fn indexed(n: usize) -> Self {
        Basis::new((1..=n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    /// Coordinates of `self` followed by those of `other`.
    pub fn concat(&self, other: &Basis) -> Basis {
        Basis::new(self.0.iter().chain(other.0.iter()).cloned())
    }

    fn check(&self, len: usize) -> Result<()> {
        if len != self.len() {
            return Err(Error::BasisMismatch { expected: self.len(), found: len });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        RationalVector(coords)
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        RationalVector(coords.iter().map(|&c| linalg::rational(c)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        RationalVector(vec![Rational::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn concat(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().chain(other.0.iter()).cloned().collect())
    }

    /// Exact average of a nonempty list of points.
    pub fn barycenter(points: &[RationalVector]) -> Option<RationalVector> {
        let first = points.first()?;
        let mut sum = vec![Rational::zero(); first.len()];
        for p in points {
            for (s, c) in sum.iter_mut().zip(&p.0) {
                *s += c;
            }
        }
        let n = linalg::rational(points.len() as i64);
        Some(RationalVector(sum.into_iter().map(|s| s / &n).collect()))
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A finite point set spanning a polytope. Points are deduplicated on
/// construction, keeping first occurrences in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VRep {
    basis: Basis,
    vertices: Vec<RationalVector>,
}

impl VRep {
    pub fn new(basis: Basis, points: Vec<RationalVector>) -> Result<Self> {
        let mut vertices: Vec<RationalVector> = Vec::with_capacity(points.len());
        let mut seen = std::collections::HashSet::new();
        for p in points {
            basis.check(p.len())?;
            if seen.insert(p.clone()) {
                vertices.push(p);
            }
        }
        Ok(VRep { basis, vertices })
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn vertices(&self) -> &[RationalVector] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Vertex sets compared as sets.
    pub fn same_vertex_set(&self, other: &VRep) -> bool {
        let a: std::collections::BTreeSet<_> = self.vertices.iter().collect();
        let b: std::collections::BTreeSet<_> = other.vertices.iter().collect();
        self.dim() == other.dim() && a == b
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstraintKind {
    Inequality,
    Equality,
}

/// `coeffs · x >= rhs` or `coeffs · x = rhs`, primitive over the integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearConstraint {
    coeffs: Vec<BigInt>,
    rhs: BigInt,
    kind: ConstraintKind,
}

impl LinearConstraint {
    pub fn new(coeffs: Vec<BigInt>, rhs: BigInt, kind: ConstraintKind) -> Result<Self> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::ZeroConstraint);
        }
        let mut row = coeffs;
        row.push(rhs);
        let mut row = linalg::primitive(row);
        if kind == ConstraintKind::Equality && linalg::first_nonzero_is_negative(&row) {
            for x in &mut row {
                *x = -x.clone();
            }
        }
        let rhs = row.pop().unwrap();
        Ok(LinearConstraint { coeffs: row, rhs, kind })
    }

    pub fn from_rationals(coeffs: &[Rational], rhs: &Rational, kind: ConstraintKind) -> Result<Self> {
        let mut row = coeffs.to_vec();
        row.push(rhs.clone());
        let mut ints = linalg::clear_denominators(&row);
        let rhs = ints.pop().unwrap();
        Self::new(ints, rhs, kind)
    }

    pub fn ge(coeffs: &[i64], rhs: i64) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), BigInt::from(rhs), ConstraintKind::Inequality)
    }

    pub fn eq(coeffs: &[i64], rhs: i64) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), BigInt::from(rhs), ConstraintKind::Equality)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn rhs(&self) -> &BigInt {
        &self.rhs
    }

    pub fn kind(&self) -> ConstraintKind {
        self.kind
    }

    pub fn is_equality(&self) -> bool {
        self.kind == ConstraintKind::Equality
    }

    /// `coeffs · x - rhs`.
    pub fn slack(&self, x: &RationalVector) -> Rational {
        linalg::dot_rational(&self.coeffs, x.coords()) - Rational::from_integer(self.rhs.clone())
    }

    pub fn is_satisfied_by(&self, x: &RationalVector) -> bool {
        let s = self.slack(x);
        match self.kind {
            ConstraintKind::Inequality => !s.is_negative(),
            ConstraintKind::Equality => s.is_zero(),
        }
    }

    pub fn is_tight_at(&self, x: &RationalVector) -> bool {
        self.slack(x).is_zero()
    }

    /// Renders the constraint with coordinate names, e.g.
    /// `-x{1,5} + x{1,2} + x{1,3} >= 0`.
    pub fn display_with(&self, basis: &Basis) -> String {
        let mut s = String::new();
        for (c, name) in self.coeffs.iter().zip(basis.names()) {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                s.push_str(&format!("{mag}*"));
            }
            s.push('x');
            s.push_str(name);
        }
        let op = if self.is_equality() { "=" } else { ">=" };
        format!("{s} {op} {}", self.rhs)
    }
}

/// An intersection of halfspaces and hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    basis: Basis,
    inequalities: Vec<LinearConstraint>,
    equalities: Vec<LinearConstraint>,
}

impl HRep {
    pub fn new(basis: Basis, constraints: Vec<LinearConstraint>) -> Result<Self> {
        let mut inequalities = Vec::new();
        let mut equalities = Vec::new();
        for c in constraints {
            basis.check(c.coeffs.len())?;
            match c.kind {
                ConstraintKind::Inequality => inequalities.push(c),
                ConstraintKind::Equality => equalities.push(c),
            }
        }
        Ok(HRep { basis, inequalities, equalities })
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn inequalities(&self) -> &[LinearConstraint] {
        &self.inequalities
    }

    pub fn equalities(&self) -> &[LinearConstraint] {
        &self.equalities
    }

    pub fn constraints(&self) -> impl Iterator<Item = &LinearConstraint> {
        self.equalities.iter().chain(&self.inequalities)
    }

    /// First constraint violated by `x`, equalities first.
    pub fn first_violated(&self, x: &RationalVector) -> Result<Option<&LinearConstraint>> {
        self.basis.check(x.len())?;
        Ok(self.constraints().find(|c| !c.is_satisfied_by(x)))
    }
}

/// Dimension of the affine hull of the vertex set.
pub fn affine_dimension(v: &VRep) -> Result<usize> {
    affine_dimension_of(v.vertices())
}

pub(crate) fn affine_dimension_of(points: &[RationalVector]) -> Result<usize> {
    let (first, rest) = points.split_first().ok_or(Error::EmptyVRep)?;
    let diffs: Vec<Vec<Rational>> =
        rest.iter().map(|p| p.coords().iter().zip(first.coords()).map(|(a, b)| a - b).collect()).collect();
    Ok(linalg::rank(&diffs))
}

/// Exact membership test.
pub fn contains(h: &HRep, x: &RationalVector) -> Result<bool> {
    Ok(h.first_violated(x)?.is_none())
}

/// The vertices of `v` on which `c` is tight. Every vertex must satisfy
/// `coeffs · x >= rhs`; the constraint kind is ignored.
pub fn vertices_on_hyperplane(v: &VRep, c: &LinearConstraint) -> Result<VRep> {
    v.basis.check(c.coeffs.len())?;
    let mut tight = Vec::new();
    for (i, p) in v.vertices.iter().enumerate() {
        let s = c.slack(p);
        if s.is_negative() {
            return Err(Error::NotValidInequality { vertex: i });
        }
        if s.is_zero() {
            tight.push(p.clone());
        }
    }
    VRep::new(v.basis.clone(), tight)
}

/// Whether `c` cuts out a facet of `conv(v)`.
pub fn is_facet(v: &VRep, c: &LinearConstraint) -> Result<bool> {
    let face = vertices_on_hyperplane(v, c)?;
    if face.is_empty() {
        return Ok(false);
    }
    Ok(affine_dimension(&face)? + 1 == affine_dimension(v)?)
}

/// Canonical form of an H-representation.
///
/// Equalities are replaced by the reduced row echelon basis of their span,
/// each row made primitive. Inequalities are reduced modulo that span so their
/// coefficients vanish on the pivot columns, made primitive, deduplicated and
/// sorted. Two systems with the same equality span and the same facet-defining
/// inequalities therefore canonicalize identically even when the polytope is
/// not full-dimensional. Inequalities that reduce to `0 >= b` with `b <= 0`
/// are dropped.
pub fn canonicalize(h: &HRep) -> Result<HRep> {
    let n = h.basis.len();
    let eq_rows: Vec<Vec<Rational>> = h
        .equalities
        .iter()
        .map(|c| c.coeffs.iter().chain(std::iter::once(&c.rhs)).map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    let red = linalg::rref(&eq_rows, n + 1);
    if red.pivots.last() == Some(&n) {
        return Err(Error::Infeasible);
    }
    let mut equalities = Vec::new();
    for row in &red.rows {
        equalities.push(LinearConstraint::from_rationals(&row[..n], &row[n], ConstraintKind::Equality)?);
    }

    let mut inequalities = Vec::new();
    for c in &h.inequalities {
        let mut row: Vec<Rational> =
            c.coeffs.iter().chain(std::iter::once(&c.rhs)).map(|x| Rational::from_integer(x.clone())).collect();
        for (eq, &p) in red.rows.iter().zip(&red.pivots) {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, e) in row.iter_mut().zip(eq) {
                *x -= &f * e;
            }
        }
        if row[..n].iter().all(Zero::is_zero) {
            if row[n].is_positive() {
                return Err(Error::Infeasible);
            }
            continue;
        }
        inequalities.push(LinearConstraint::from_rationals(&row[..n], &row[n], ConstraintKind::Inequality)?);
    }
    equalities.sort();
    inequalities.sort();
    inequalities.dedup();
    Ok(HRep { basis: h.basis.clone(), inequalities, equalities })
}

/// An affine map `x -> linear · x + offset` between named coordinate spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    source: Basis,
    target: Basis,
    /// `target.len()` rows, `source.len()` columns.
    linear: Vec<Vec<Rational>>,
    offset: Vec<Rational>,
}

impl AffineMap {
    pub fn new(source: Basis, target: Basis, linear: Vec<Vec<Rational>>, offset: Vec<Rational>) -> Self {
        assert_eq!(linear.len(), target.len());
        assert!(linear.iter().all(|r| r.len() == source.len()));
        assert_eq!(offset.len(), target.len());
        AffineMap { source, target, linear, offset }
    }

    pub fn linear(source: Basis, target: Basis, linear: Vec<Vec<Rational>>) -> Self {
        let offset = vec![Rational::zero(); target.len()];
        Self::new(source, target, linear, offset)
    }

    pub fn source(&self) -> &Basis {
        &self.source
    }

    pub fn target(&self) -> &Basis {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.linear
    }

    pub fn offset(&self) -> &[Rational] {
        &self.offset
    }

    pub fn apply(&self, x: &RationalVector) -> Result<RationalVector> {
        self.source.check(x.len())?;
        Ok(RationalVector::new(
            self.linear
                .iter()
                .zip(&self.offset)
                .map(|(row, b)| row.iter().zip(x.coords()).fold(b.clone(), |acc, (a, c)| acc + a * c))
                .collect(),
        ))
    }

    pub fn apply_all(&self, v: &VRep) -> Result<VRep> {
        let images = v.vertices().iter().map(|p| self.apply(p)).collect::<Result<Vec<_>>>()?;
        VRep::new(self.target.clone(), images)
    }

    pub fn is_injective(&self) -> bool {
        linalg::rank(&self.linear) == self.source.len()
    }
}
