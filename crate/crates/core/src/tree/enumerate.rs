//! Exhaustive enumeration of unlabeled trees.
//!
//! Trees on `n + 1` nodes are grown from trees on `n` nodes by attaching a
//! leaf anywhere, and isomorphic copies are merged by a canonical code: the
//! smallest AHU parenthesis string over all choices of root. The code also
//! fixes the labeling: nodes are numbered in preorder of the minimizing
//! rooted layout, children sorted by their codes. Isomorphic trees therefore
//! always come out with identical labels.

use std::collections::BTreeMap;

use super::Tree;

type Adjacency = Vec<Vec<usize>>;

fn rooted_code(adj: &Adjacency, v: usize, parent: usize) -> String {
    let mut children: Vec<String> = adj[v].iter().filter(|&&w| w != parent).map(|&w| rooted_code(adj, w, v)).collect();
    children.sort();
    let mut s = String::from("(");
    for c in children {
        s.push_str(&c);
    }
    s.push(')');
    s
}

fn canonical_code(adj: &Adjacency) -> String {
    (0..adj.len()).map(|r| rooted_code(adj, r, usize::MAX)).min().unwrap()
}

/// Rebuilds the labeled tree encoded by a rooted AHU string.
fn decode(code: &str) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut next = 0;
    for c in code.chars() {
        if c == '(' {
            if let Some(&p) = stack.last() {
                edges.push((p, next));
            }
            stack.push(next);
            next += 1;
        } else {
            stack.pop();
        }
    }
    edges
}

fn label(i: usize, width: usize) -> String {
    format!("{:0width$}", i + 1)
}

fn to_tree(code: &str) -> Tree {
    let edges = decode(code);
    let width = (edges.len() + 1).to_string().len();
    Tree::from_edges(edges.iter().map(|&(a, b)| (label(a, width), label(b, width)))).expect("decoded code is a tree")
}

fn grow(codes: &[String]) -> Vec<String> {
    let mut out = std::collections::BTreeSet::new();
    for code in codes {
        let edges = decode(code);
        let n = edges.len() + 1;
        let mut adj: Adjacency = vec![Vec::new(); n];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for v in 0..n {
            let mut bigger = adj.clone();
            bigger.push(vec![v]);
            bigger[v].push(n);
            out.insert(canonical_code(&bigger));
        }
    }
    out.into_iter().collect()
}

/// All trees on `nodes` nodes up to isomorphism, canonically labeled
/// `1..=nodes` (zero-padded so that label order is numeric order).
pub fn free_trees(nodes: usize) -> Vec<Tree> {
    codes_by_size(nodes).remove(&nodes).unwrap_or_default().iter().map(|c| to_tree(c)).collect()
}

fn codes_by_size(max_nodes: usize) -> BTreeMap<usize, Vec<String>> {
    let mut by_size = BTreeMap::new();
    if max_nodes < 2 {
        return by_size;
    }
    let mut current = vec!["(())".to_string()];
    by_size.insert(2, current.clone());
    for n in 3..=max_nodes {
        current = grow(&current);
        by_size.insert(n, current.clone());
    }
    by_size
}

/// All trees with between 1 and `max_edges` edges, up to isomorphism, ordered
/// by size and then by canonical code.
pub fn trees_up_to_edges(max_edges: usize) -> Vec<Tree> {
    codes_by_size(max_edges + 1).values().flatten().map(|c| to_tree(c)).collect()
}
