use std::fmt::Write;

use semidef::circuit::Circuit;
use semidef::order::Poset;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram, one edge per cover, drawn bottom to top.
pub fn hasse_dot(p: &Poset) -> (String, usize, usize) {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for i in 0..p.len() {
        let _ = writeln!(out, "  e{i} [label={}];", quote(p.label(i)));
    }
    let covers = p.covers();
    for &(a, b) in &covers {
        let _ = writeln!(out, "  e{a} -> e{b} [arrowhead=none];");
    }
    out.push_str("}\n");
    (out, p.len(), covers.len())
}

/// Nodes as ellipses, gates as boxes with edges in1 → gate, in2 → gate and
/// gate → out.
pub fn circuit_dot(c: &Circuit) -> (String, usize, usize) {
    let mut out = String::from("digraph circuit {\n  rankdir=LR;\n");
    for (i, label) in c.nodes().iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label={}, shape=ellipse];", quote(label));
    }
    let mut edges = 0;
    for (g, &[x, y, z]) in c.gates().iter().enumerate() {
        let _ = writeln!(out, "  g{g} [label=\"&\", shape=box];");
        let _ = writeln!(out, "  n{x} -> g{g} [label=\"in1\"];");
        let _ = writeln!(out, "  n{y} -> g{g} [label=\"in2\"];");
        let _ = writeln!(out, "  g{g} -> n{z} [label=\"out\"];");
        edges += 3;
    }
    out.push_str("}\n");
    (out, c.node_count() + c.gates().len(), edges)
}
