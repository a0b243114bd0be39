//! Hasse diagrams in Graphviz DOT.

use std::fmt::Write as _;

use cpokit_core::FinPoset;

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One node per element, one edge per cover, drawn bottom to top.
pub fn to_dot(p: &FinPoset) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quoted(p.name()));
    out.push_str("  rankdir=BT;\n");
    for i in 0..p.len() {
        let _ = writeln!(out, "  n{i} [label={}];", quoted(p.label(i)));
    }
    for (a, b) in p.order().covers() {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}
