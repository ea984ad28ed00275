//! Output formats shared by the library and the CLI.
//!
//! * canonical JSON: the `Serialize` impl of [`NumericalSemigroup`];
//! * JSON lines: one canonical semigroup per line, tree nodes adding
//!   `depth` and `removed`;
//! * DOT: one node per semigroup labelled `⟨n₁,…,nₑ⟩`, edges from child to
//!   parent labelled with the removed element;
//! * a fixed-width table of invariants.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::semigroup::NumericalSemigroup;
use crate::trees::TreeNode;

#[derive(Serialize)]
struct NodeLine<'a> {
    #[serde(flatten)]
    semigroup: &'a NumericalSemigroup,
    depth: u32,
    removed: Option<u32>,
}

pub fn node_json(node: &TreeNode) -> String {
    serde_json::to_string(&NodeLine {
        semigroup: &node.semigroup,
        depth: node.depth,
        removed: node.removed,
    })
    .expect("tree nodes always serialize")
}

pub fn tree_jsonl(nodes: &[TreeNode]) -> String {
    nodes.iter().map(|n| node_json(n) + "\n").collect()
}

pub fn semigroups_jsonl(semigroups: &[NumericalSemigroup]) -> String {
    semigroups
        .iter()
        .map(|s| serde_json::to_string(s).expect("semigroups always serialize") + "\n")
        .collect()
}

/// DOT digraph of a tree. Nodes are numbered in the given order; the
/// parent of each non-root node is found by restoring its removed element.
pub fn tree_dot(name: &str, nodes: &[TreeNode]) -> String {
    let index: HashMap<&NumericalSemigroup, usize> = nodes
        .iter()
        .enumerate()
        .map(|(i, n)| (&n.semigroup, i))
        .collect();
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", name.replace('"', "'")).unwrap();
    out.push_str("  rankdir=BT;\n");
    for (i, node) in nodes.iter().enumerate() {
        writeln!(out, "  n{i} [label=\"{}\"];", node.semigroup).unwrap();
    }
    for (i, node) in nodes.iter().enumerate() {
        let (Some(x), Some(parent)) = (node.removed, node.parent()) else {
            continue;
        };
        if let Some(&p) = index.get(&parent) {
            writeln!(out, "  n{i} -> n{p} [label=\"{x}\"];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

const HEADER: [&str; 7] = ["semigroup", "m", "F", "g", "e", "C", "n"];

/// Fixed-width table with one row per semigroup.
pub fn semigroup_table(semigroups: &[NumericalSemigroup]) -> String {
    let rows: Vec<[String; 7]> = semigroups
        .iter()
        .map(|s| {
            [
                s.to_string(),
                s.multiplicity().to_string(),
                s.frobenius().to_string(),
                s.genus().to_string(),
                s.embedding_dimension().to_string(),
                s.concentration().to_string(),
                s.n_count().to_string(),
            ]
        })
        .collect();
    render_table(&HEADER.map(String::from), &rows)
}

/// Tree nodes as a table, with depth and edge label columns appended.
pub fn tree_table(nodes: &[TreeNode]) -> String {
    let header = [
        "depth".to_string(),
        "removed".to_string(),
        "semigroup".to_string(),
        "F".to_string(),
        "g".to_string(),
    ];
    let rows: Vec<[String; 5]> = nodes
        .iter()
        .map(|n| {
            [
                n.depth.to_string(),
                n.removed.map_or("-".to_string(), |x| x.to_string()),
                format!("{}{}", "  ".repeat(n.depth as usize), n.semigroup),
                n.semigroup.frobenius().to_string(),
                n.semigroup.genus().to_string(),
            ]
        })
        .collect();
    render_table(&header, &rows)
}

pub fn render_table<const N: usize>(header: &[String; N], rows: &[[String; N]]) -> String {
    let mut widths = header.each_ref().map(|h| h.chars().count());
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String; N]| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            s.push_str(cell);
            if i + 1 < N {
                s.extend(std::iter::repeat_n(' ', w - cell.chars().count()));
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(header);
    for row in rows {
        out.push_str(&line(row));
    }
    out
}
