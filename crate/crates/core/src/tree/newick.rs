//! Topology-only Newick reader.
//!
//! Accepted grammar:
//!
//! ```text
//! tree    := subtree ';'
//! subtree := '(' subtree (',' subtree)+ ')' [label] [':' length]
//!          | label [':' length]
//! ```
//!
//! Branch lengths are parsed as numbers and discarded. Groups with a single
//! child, such as `(b)`, are rejected. Unlabeled nodes get `_1`, `_2`, ... in
//! preorder. An unlabeled root with exactly two children is suppressed and its
//! children are joined by one edge; a labeled root is kept as a real node.

use super::Tree;
use crate::error::{Error, Result};

struct Raw {
    label: Option<String>,
    children: Vec<Raw>,
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

const DELIMITERS: &[char] = &['(', ')', ',', ':', ';'];

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::MalformedNewick { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.text[self.pos..].chars().next() {
            self.pos += c.len_utf8();
        }
    }

    fn token(&mut self) -> &'a str {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let end = rest.find(|c: char| c.is_whitespace() || DELIMITERS.contains(&c)).unwrap_or(rest.len());
        self.pos += end;
        &rest[..end]
    }

    fn subtree(&mut self) -> Result<Raw> {
        let mut children = Vec::new();
        if self.peek() == Some('(') {
            self.bump();
            loop {
                children.push(self.subtree()?);
                match self.peek() {
                    Some(',') => self.bump(),
                    Some(')') => {
                        self.bump();
                        break;
                    }
                    _ => return self.err("expected ',' or ')'"),
                }
            }
            if children.len() == 1 {
                return self.err("group with a single child");
            }
        }
        let label = self.token();
        let label = (!label.is_empty()).then(|| label.to_string());
        if self.peek() == Some(':') {
            self.bump();
            let len = self.token();
            if len.parse::<f64>().is_err() {
                return self.err(format!("invalid branch length {len:?}"));
            }
        }
        Ok(Raw { label, children })
    }
}

pub(super) fn parse(text: &str) -> Result<Tree> {
    let mut p = Parser { text, pos: 0 };
    let root = p.subtree()?;
    if p.peek() != Some(';') {
        return p.err("expected ';'");
    }
    p.bump();
    if p.peek().is_some() {
        return p.err("trailing characters after ';'");
    }

    let suppress_root = root.label.is_none() && root.children.len() == 2;
    let mut names = Vec::new();
    let mut edges = Vec::new();

    fn name(node: &Raw, names: &mut Vec<String>, auto: &mut usize) -> String {
        let n = node.label.clone().unwrap_or_else(|| {
            *auto += 1;
            format!("_{auto}")
        });
        names.push(n.clone());
        n
    }

    fn walk(node: &Raw, me: &str, names: &mut Vec<String>, auto: &mut usize, edges: &mut Vec<(String, String)>) {
        for child in &node.children {
            let c = name(child, names, auto);
            edges.push((me.to_string(), c.clone()));
            walk(child, &c, names, auto, edges);
        }
    }

    let mut auto = 0;
    if suppress_root {
        let left = name(&root.children[0], &mut names, &mut auto);
        walk(&root.children[0], &left, &mut names, &mut auto, &mut edges);
        let right = name(&root.children[1], &mut names, &mut auto);
        walk(&root.children[1], &right, &mut names, &mut auto, &mut edges);
        edges.push((left, right));
    } else {
        let me = name(&root, &mut names, &mut auto);
        walk(&root, &me, &mut names, &mut auto, &mut edges);
    }

    let mut seen = std::collections::HashSet::new();
    for l in &names {
        if !seen.insert(l) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    if edges.is_empty() {
        return Err(Error::TooFewNodes(1));
    }
    Tree::from_edges(edges)
}
