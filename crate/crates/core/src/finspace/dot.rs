use std::fmt::Write;

use super::DiscreteSpace;

/// DOT rendering of the specialization preorder: an arrow `y -> x` whenever
/// `y ∈ min_open(x)` with `y ≠ x` (so `x` lies in the closure of `y`).
pub fn specialization_dot(s: &DiscreteSpace) -> String {
    let mut out = String::from("digraph space {\n  rankdir=BT;\n");
    for c in s.cells() {
        let label = c.tag.clone().unwrap_or_else(|| c.id.to_string());
        let shape = if c.dim == 0 { "circle" } else { "box" };
        let _ = writeln!(out, "  c{} [label=\"{}\", shape={}];", c.id, label.replace('"', "\\\""), shape);
    }
    for x in 0..s.len() {
        for y in s.min_open(x).ones().filter(|&y| y != x) {
            let _ = writeln!(out, "  c{y} -> c{x};");
        }
    }
    out.push_str("}\n");
    out
}
