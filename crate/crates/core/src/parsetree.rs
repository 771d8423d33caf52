//! Penn-Treebank bracketed constituency trees and lexicalized
//! production-rule features.
//!
//! Trees arrive as bracketed strings from any external constituency parser
//! (the corpus stores one per sentence). Each terminal yields one feature
//! `<grandparent>^<parent>-><child>` where `parent` is the preterminal tag,
//! `grandparent` the preterminal's parent (the sentinel `TOP` when the
//! preterminal is the root), and `child` the lowercased terminal.

use std::fmt;

use crate::error::{Error, Result};

/// A constituency tree: internal nodes carry a label, leaves a terminal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseTree {
    Node { label: String, children: Vec<ParseTree> },
    Leaf(String),
}

impl ParseTree {
    pub fn label(&self) -> &str {
        match self {
            ParseTree::Node { label, .. } => label,
            ParseTree::Leaf(terminal) => terminal,
        }
    }

    /// Terminals in left-to-right order.
    pub fn terminals(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_terminals(&mut out);
        out
    }

    fn collect_terminals<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            ParseTree::Leaf(terminal) => out.push(terminal),
            ParseTree::Node { children, .. } => {
                for child in children {
                    child.collect_terminals(out);
                }
            }
        }
    }

    /// Bracketed serialization, the inverse of [`parse_ptb`].
    pub fn to_bracketed(&self) -> String {
        let mut s = String::new();
        self.write_bracketed(&mut s);
        s
    }

    fn write_bracketed(&self, out: &mut String) {
        match self {
            ParseTree::Leaf(terminal) => out.push_str(terminal),
            ParseTree::Node { label, children } => {
                out.push('(');
                out.push_str(label);
                for child in children {
                    out.push(' ');
                    child.write_bracketed(out);
                }
                out.push(')');
            }
        }
    }
}

/// Sentinel grandparent for preterminals at the tree root.
pub const TOP: &str = "TOP";

/// A lexicalized production rule.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleFeature {
    pub grandparent: String,
    pub parent: String,
    pub child: String,
}

impl fmt::Display for RuleFeature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}->{}", self.grandparent, self.parent, self.child)
    }
}

/// Parse a bracketed tree. An outer `(ROOT ...)` wrapper, or an anonymous
/// `( ... )` wrapper with a single child, is unwrapped.
pub fn parse_ptb(s: &str) -> Result<ParseTree> {
    let bytes: Vec<(usize, char)> = s.char_indices().collect();
    let mut pos = 0usize;
    skip_ws(&bytes, &mut pos);
    if pos >= bytes.len() {
        return Err(Error::Tree { pos: s.len(), msg: "empty input".into() });
    }
    let tree = parse_node(s, &bytes, &mut pos)?;
    skip_ws(&bytes, &mut pos);
    if pos < bytes.len() {
        return Err(Error::Tree {
            pos: bytes[pos].0,
            msg: "trailing content after tree".into(),
        });
    }
    match tree {
        ParseTree::Node { ref label, ref children }
            if (label == "ROOT" || label.is_empty()) && children.len() == 1 =>
        {
            Ok(children[0].clone())
        }
        ParseTree::Node { label, children } if label.is_empty() => Err(Error::Tree {
            pos: 0,
            msg: format!("anonymous node with {} children", children.len()),
        }),
        other => Ok(other),
    }
}

fn skip_ws(bytes: &[(usize, char)], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].1.is_whitespace() {
        *pos += 1;
    }
}

fn parse_node(src: &str, bytes: &[(usize, char)], pos: &mut usize) -> Result<ParseTree> {
    debug_assert_eq!(bytes[*pos].1, '(');
    let open_at = bytes[*pos].0;
    *pos += 1;
    skip_ws(bytes, pos);
    let label = parse_atom(src, bytes, pos);
    let mut children = Vec::new();
    loop {
        skip_ws(bytes, pos);
        if *pos >= bytes.len() {
            return Err(Error::Tree {
                pos: open_at,
                msg: "unbalanced parentheses: constituent never closed".into(),
            });
        }
        match bytes[*pos].1 {
            ')' => {
                *pos += 1;
                break;
            }
            '(' => children.push(parse_node(src, bytes, pos)?),
            _ => {
                let at = bytes[*pos].0;
                let atom = parse_atom(src, bytes, pos);
                if atom.is_empty() {
                    return Err(Error::Tree { pos: at, msg: "unexpected character".into() });
                }
                children.push(ParseTree::Leaf(atom));
            }
        }
    }
    if label.is_empty() && children.is_empty() {
        return Err(Error::Tree { pos: open_at, msg: "empty constituent ()".into() });
    }
    if children.is_empty() {
        return Err(Error::Tree {
            pos: open_at,
            msg: format!("constituent {label:?} has no children"),
        });
    }
    Ok(ParseTree::Node { label, children })
}

fn parse_atom(src: &str, bytes: &[(usize, char)], pos: &mut usize) -> String {
    let start = bytes[*pos].0;
    let mut end = start;
    while *pos < bytes.len() {
        let (at, c) = bytes[*pos];
        if c == '(' || c == ')' || c.is_whitespace() {
            break;
        }
        end = at + c.len_utf8();
        *pos += 1;
    }
    src[start..end].to_string()
}

/// One rule feature per terminal of the tree.
pub fn production_rule_features(tree: &ParseTree) -> Vec<RuleFeature> {
    let mut out = Vec::new();
    collect_rules(tree, None, &mut out);
    out
}

fn collect_rules(node: &ParseTree, parent_label: Option<&str>, out: &mut Vec<RuleFeature>) {
    if let ParseTree::Node { label, children } = node {
        for child in children {
            match child {
                ParseTree::Leaf(terminal) => out.push(RuleFeature {
                    grandparent: parent_label.unwrap_or(TOP).to_string(),
                    parent: label.clone(),
                    child: terminal.to_lowercase(),
                }),
                inner @ ParseTree::Node { .. } => collect_rules(inner, Some(label), out),
            }
        }
    }
}
