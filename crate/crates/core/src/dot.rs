//! Graphviz output for ranked Hasse diagrams.

use std::fmt::Write;

use crate::poset::{NodeKey, RankedHasse};
use crate::signs::SignAssignment;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Top rank first, one `rank=same` group per rank, arrows from upper to
/// lower node. Edges with sign `-1` are dotted.
pub fn to_dot<K: NodeKey>(h: &RankedHasse<K>, signs: Option<&SignAssignment>, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=TB;").unwrap();
    writeln!(out, "  node [shape=plaintext];").unwrap();
    let max = h.max_rank();
    for r in (0..=max).rev() {
        let members: Vec<String> = (0..h.len())
            .filter(|&v| h.rank(v) == r)
            .map(|v| quote(&h.key(v).to_string()))
            .collect();
        if members.is_empty() {
            continue;
        }
        writeln!(out, "  {{ rank=same; {}; }}", members.join("; ")).unwrap();
    }
    let mut edges: Vec<(usize, usize, usize)> = h
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(lo, hi))| (hi, lo, e))
        .collect();
    edges.sort_by_key(|&(hi, lo, _)| (std::cmp::Reverse(h.rank(hi)), hi, lo));
    for (hi, lo, e) in edges {
        let style = match signs {
            Some(a) if a.sign(e) < 0 => " [style=dotted]",
            _ => "",
        };
        writeln!(
            out,
            "  {} -> {}{};",
            quote(&h.key(hi).to_string()),
            quote(&h.key(lo).to_string()),
            style
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
