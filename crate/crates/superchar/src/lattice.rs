//! The refinement order on a set of theories, exported as a DOT digraph.

use std::fmt::Write;

use superchar_core::enumerate::TheoryRecord;
use superchar_core::theory::refines;

/// Covering pairs `(i, j)`: record `i` strictly refines `j` with nothing in
/// between. Only theories of the same group are compared.
pub fn covering_edges(records: &[TheoryRecord]) -> Vec<(usize, usize)> {
    let n = records.len();
    let below: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    i != j
                        && records[i].theory.group() == records[j].theory.group()
                        && records[i].theory.classes() != records[j].theory.classes()
                        && refines(&records[i].theory, &records[j].theory)
                })
                .collect()
        })
        .collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if below[i][j] && !(0..n).any(|m| below[i][m] && below[m][j]) {
                edges.push((i, j));
            }
        }
    }
    edges
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Nodes carry the theory key, its number of superclasses and its tags.
/// Edges point from the finer theory to the coarser one.
pub fn to_dot(records: &[TheoryRecord]) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, r) in records.iter().enumerate() {
        let tags: Vec<&str> = r.tags.iter().map(|t| t.name()).collect();
        let key = r.key();
        let label = format!("{}\\n[{}]", key.as_str().replace('"', "\\\""), tags.join(" "));
        writeln!(
            out,
            "  n{i} [label=\"{label}\", key={}, dimension={}, tags={}];",
            quote(key.as_str()),
            r.theory.dimension(),
            quote(&tags.join(","))
        )
        .unwrap();
    }
    for (i, j) in covering_edges(records) {
        writeln!(out, "  n{i} -> n{j};").unwrap();
    }
    out.push_str("}\n");
    out
}
