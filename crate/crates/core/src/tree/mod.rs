//! Labeled unrooted trees.
//!
//! A [`Tree`] keeps its edges sorted lexicographically by their (sorted)
//! endpoint labels. That order is the coordinate order of every edge vector
//! built downstream, so it must never change after construction.

mod enumerate;
mod newick;
mod ops;

use std::borrow::Borrow;
use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::polytope::Basis;

pub use enumerate::{free_trees, trees_up_to_edges};
pub use ops::{
    contract_degree2, glue, refold, split_at_edge, star_decomposition, Contraction, EdgeOrigin, EdgeSplit,
    GluingInstruction, StarPiece,
};

/// A node label. Ordered by byte-wise string comparison.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if label.is_empty() || label.chars().any(char::is_whitespace) {
            return Err(Error::InvalidLabel(label));
        }
        Ok(NodeId(label))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for NodeId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl PartialEq<str> for NodeId {
    fn eq(&self, other: &str) -> bool {
        self.0 == other
    }
}

impl PartialEq<&str> for NodeId {
    fn eq(&self, other: &&str) -> bool {
        self.0 == *other
    }
}

/// An undirected edge with endpoints stored in sorted order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    a: NodeId,
    b: NodeId,
}

impl Edge {
    /// Returns `None` for a self loop.
    pub fn new(x: NodeId, y: NodeId) -> Option<Self> {
        match x.cmp(&y) {
            std::cmp::Ordering::Less => Some(Edge { a: x, b: y }),
            std::cmp::Ordering::Greater => Some(Edge { a: y, b: x }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn a(&self) -> &NodeId {
        &self.a
    }

    pub fn b(&self) -> &NodeId {
        &self.b
    }

    pub fn has_endpoint(&self, v: &str) -> bool {
        self.a == v || self.b == v
    }

    /// The endpoint that is not `v`.
    pub fn other(&self, v: &str) -> Option<&NodeId> {
        if self.a == v {
            Some(&self.b)
        } else if self.b == v {
            Some(&self.a)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.a, self.b)
    }
}

/// A leaf edge with a designated leaf endpoint.
///
/// A single-edge tree has two leaves, so gluing needs to be told which
/// endpoint disappears.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeafEdge {
    pub attach: NodeId,
    pub leaf: NodeId,
}

impl LeafEdge {
    pub fn edge(&self) -> Edge {
        Edge::new(self.attach.clone(), self.leaf.clone()).expect("leaf edge endpoints differ")
    }
}

impl fmt::Display for LeafEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.attach, self.leaf)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    edges: Vec<Edge>,
    adjacency: BTreeMap<NodeId, Vec<NodeId>>,
}

impl Tree {
    /// Builds a tree from label pairs. The pair index (1-based) is used as the
    /// line number in error messages.
    pub fn from_edges<I, S>(pairs: I) -> Result<Tree>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let numbered =
            pairs.into_iter().enumerate().map(|(i, (x, y))| (i + 1, x.as_ref().to_string(), y.as_ref().to_string()));
        Self::from_numbered_edges(numbered)
    }

    fn from_numbered_edges(pairs: impl Iterator<Item = (usize, String, String)>) -> Result<Tree> {
        let mut edges = Vec::new();
        let mut seen = HashSet::new();
        let mut index: BTreeMap<NodeId, usize> = BTreeMap::new();
        let mut parent: Vec<usize> = Vec::new();

        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }

        for (line, x, y) in pairs {
            let x = NodeId::new(x)?;
            let y = NodeId::new(y)?;
            let Some(edge) = Edge::new(x.clone(), y.clone()) else {
                return Err(Error::SelfLoop { line, label: x.0 });
            };
            if !seen.insert(edge.clone()) {
                return Err(Error::DuplicateEdge { line, a: edge.a.0, b: edge.b.0 });
            }
            let mut slot = |n: &NodeId| {
                let next = index.len();
                *index.entry(n.clone()).or_insert_with(|| {
                    parent.push(next);
                    next
                })
            };
            let (ix, iy) = (slot(&x), slot(&y));
            let (rx, ry) = (find(&mut parent, ix), find(&mut parent, iy));
            if rx == ry {
                return Err(Error::HasCycle { line, a: edge.a.0, b: edge.b.0 });
            }
            parent[rx] = ry;
            edges.push(edge);
        }

        if index.len() < 2 {
            return Err(Error::TooFewNodes(index.len()));
        }
        let components = index.len() - edges.len();
        if components != 1 {
            return Err(Error::Disconnected { components });
        }

        edges.sort();
        let mut adjacency: BTreeMap<NodeId, Vec<NodeId>> = index.into_keys().map(|n| (n, Vec::new())).collect();
        for e in &edges {
            adjacency.get_mut(&e.a).unwrap().push(e.b.clone());
            adjacency.get_mut(&e.b).unwrap().push(e.a.clone());
        }
        for nbrs in adjacency.values_mut() {
            nbrs.sort();
        }
        Ok(Tree { edges, adjacency })
    }

    /// Parses the edge-list format: one edge per line as two
    /// whitespace-separated labels. Blank lines and lines starting with `#`
    /// are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Tree> {
        let mut pairs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(Error::MalformedLine { line: i + 1, content: raw.to_string() });
            }
            pairs.push((i + 1, tokens[0].to_string(), tokens[1].to_string()));
        }
        Self::from_numbered_edges(pairs.into_iter())
    }

    /// Parses a Newick topology. See the module documentation of the parser
    /// for the accepted subset.
    pub fn parse_newick(text: &str) -> Result<Tree> {
        newick::parse(text)
    }

    /// Picks the parser from the content: Newick when the first significant
    /// character is `(`, edge list otherwise.
    pub fn parse_auto(text: &str) -> Result<Tree> {
        let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
        match first {
            Some(l) if l.starts_with('(') => Self::parse_newick(text),
            _ => Self::parse_edge_list(text),
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = &NodeId> {
        self.adjacency.keys()
    }

    /// Edges in canonical (coordinate) order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains_node(&self, v: &str) -> bool {
        self.node(v).is_some()
    }

    fn node(&self, v: &str) -> Option<&NodeId> {
        self.adjacency.get_key_value(v).map(|(k, _)| k)
    }

    pub fn neighbors(&self, v: &str) -> Result<&[NodeId]> {
        self.adjacency.get(v).map(Vec::as_slice).ok_or_else(|| Error::UnknownNode(v.to_string()))
    }

    pub fn degree(&self, v: &str) -> Result<usize> {
        self.neighbors(v).map(<[NodeId]>::len)
    }

    pub fn is_leaf(&self, v: &str) -> bool {
        matches!(self.degree(v), Ok(1))
    }

    /// Degree-1 nodes in label order.
    pub fn leaves(&self) -> Vec<NodeId> {
        self.adjacency.iter().filter(|(_, n)| n.len() == 1).map(|(k, _)| k.clone()).collect()
    }

    pub fn internal_nodes(&self) -> Vec<NodeId> {
        self.adjacency.iter().filter(|(_, n)| n.len() > 1).map(|(k, _)| k.clone()).collect()
    }

    /// Internal nodes of degree exactly two.
    pub fn degree_two_nodes(&self) -> Vec<NodeId> {
        self.adjacency.iter().filter(|(_, n)| n.len() == 2).map(|(k, _)| k.clone()).collect()
    }

    pub fn is_leaf_edge(&self, e: &Edge) -> bool {
        self.is_leaf(e.a.as_str()) || self.is_leaf(e.b.as_str())
    }

    /// Indices of the edges with a leaf endpoint.
    pub fn leaf_edge_indices(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.is_leaf_edge(&self.edges[i])).collect()
    }

    pub fn edge_index(&self, e: &Edge) -> Option<usize> {
        self.edges.binary_search(e).ok()
    }

    /// Index of the edge joining `x` and `y`.
    pub fn edge_between(&self, x: &str, y: &str) -> Result<usize> {
        let missing = || Error::UnknownEdge(x.to_string(), y.to_string());
        let (nx, ny) = (self.node(x).ok_or_else(missing)?, self.node(y).ok_or_else(missing)?);
        let e = Edge::new(nx.clone(), ny.clone()).ok_or_else(missing)?;
        self.edge_index(&e).ok_or_else(missing)
    }

    /// Resolves `{x, y}` as a leaf edge. `y` is taken as the leaf when it is
    /// one; otherwise `x` must be.
    pub fn leaf_edge(&self, x: &str, y: &str) -> Result<LeafEdge> {
        let i = self.edge_between(x, y)?;
        let e = &self.edges[i];
        let (nx, ny) = if e.a == x { (&e.a, &e.b) } else { (&e.b, &e.a) };
        if self.is_leaf(y) {
            Ok(LeafEdge { attach: nx.clone(), leaf: ny.clone() })
        } else if self.is_leaf(x) {
            Ok(LeafEdge { attach: ny.clone(), leaf: nx.clone() })
        } else {
            Err(Error::NotLeafEdge(x.to_string(), y.to_string()))
        }
    }

    /// Edges on the unique path between `i` and `j`, in canonical order.
    pub fn path_edges(&self, i: &str, j: &str) -> Result<Vec<Edge>> {
        Ok(self.path_edge_indices(i, j)?.into_iter().map(|k| self.edges[k].clone()).collect())
    }

    /// Same as [`Tree::path_edges`] but returns sorted edge indices.
    pub fn path_edge_indices(&self, i: &str, j: &str) -> Result<Vec<usize>> {
        let start = self.node(i).ok_or_else(|| Error::UnknownNode(i.to_string()))?;
        let goal = self.node(j).ok_or_else(|| Error::UnknownNode(j.to_string()))?;
        if start == goal {
            return Err(Error::EqualEndpoints(i.to_string()));
        }
        let mut parent: BTreeMap<&NodeId, &NodeId> = BTreeMap::new();
        let mut queue = VecDeque::from([start]);
        parent.insert(start, start);
        while let Some(v) = queue.pop_front() {
            if v == goal {
                break;
            }
            for w in &self.adjacency[v] {
                if !parent.contains_key(w) {
                    parent.insert(w, v);
                    queue.push_back(w);
                }
            }
        }
        let mut out = Vec::new();
        let mut v = goal;
        while v != start {
            let p = parent[v];
            let e = Edge::new(v.clone(), p.clone()).unwrap();
            out.push(self.edge_index(&e).unwrap());
            v = p;
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Unordered leaf pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn leaf_pairs(&self) -> Vec<(NodeId, NodeId)> {
        let leaves = self.leaves();
        let mut out = Vec::new();
        for (p, i) in leaves.iter().enumerate() {
            for j in &leaves[p + 1..] {
                out.push((i.clone(), j.clone()));
            }
        }
        out
    }

    /// Coordinate basis of the edge space, named `{a,b}` per edge.
    pub fn basis(&self) -> Basis {
        Basis::new(self.edges.iter().map(Edge::to_string))
    }

    /// Writes the tree in edge-list format.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for e in &self.edges {
            s.push_str(e.a.as_str());
            s.push(' ');
            s.push_str(e.b.as_str());
            s.push('\n');
        }
        s
    }
}
