use std::fmt::Write;

use posetlab_core::Poset;

fn quote(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram in DOT, drawn bottom to top. Edges are exactly the covers.
pub fn to_dot(p: &Poset) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=circle];\n");
    for label in p.labels() {
        let _ = writeln!(out, "  {};", quote(label));
    }
    for (a, b) in p.covers() {
        let _ = writeln!(out, "  {} -> {};", quote(p.label(a)), quote(p.label(b)));
    }
    out.push_str("}\n");
    out
}
