//! DOT exporters for AR quivers, quotient quivers and triangles.

use tricat::subcat::Quiver;
use tricat::tricat::{TriCat, Triangle};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

/// AR quiver of the whole category. Vertices are pinned at the mesh position
/// of their cover coordinate; `encircled` vertices are drawn as circles and `grayed`
/// ones in gray.
pub fn ar_quiver(cat: &TriCat, name: &str, encircled: &[usize], grayed: &[usize]) -> String {
    let ar = cat.ar_quiver();
    let mut s = format!("digraph {} {{\n  node [shape=plaintext];\n", quote(name));
    for (v, l) in ar.labels.iter().enumerate() {
        let mut attrs = Vec::new();
        if encircled.contains(&v) {
            attrs.push("shape=circle".to_string());
        }
        if grayed.contains(&v) {
            attrs.push("fontcolor=gray".to_string());
            attrs.push("color=gray".to_string());
        }
        if let Some((p, i)) = cat.cover[v] {
            attrs.push(format!("pos=\"{},{}!\"", 2 * p + i, i));
        }
        s.push_str(&format!("  {} [{}];\n", quote(l), attrs.join(", ")));
    }
    for a in &ar.arrows {
        for _ in 0..a.multiplicity {
            s.push_str(&format!("  {} -> {};\n", quote(&ar.labels[a.from]), quote(&ar.labels[a.to])));
        }
    }
    for (v, l) in ar.labels.iter().enumerate() {
        s.push_str(&format!("  {} -> {} [style=dotted, arrowhead=none];\n", quote(l), quote(&ar.labels[ar.tau[v]])));
    }
    s.push_str("}\n");
    s
}

/// A quiver with encircled vertices given by label.
pub fn quiver(q: &Quiver, name: &str, encircled: &[String]) -> String {
    q.to_dot(name, encircled)
}

/// `X → Y → Z → ΣX` with objects written as sums of labels.
pub fn triangle(cat: &TriCat, name: &str, t: &Triangle) -> String {
    let objs = [cat.label_obj(&t.x), cat.label_obj(&t.y), cat.label_obj(&t.z), cat.label_obj(&cat.sigma_obj(&t.x))];
    let ids = ["X", "Y", "Z", "SX"];
    let mut s = format!("digraph {} {{\n  rankdir=LR;\n  node [shape=plaintext];\n", quote(name));
    for (id, o) in ids.iter().zip(&objs) {
        s.push_str(&format!("  {id} [label={}];\n", quote(o)));
    }
    s.push_str("  X -> Y [label=\"f\"];\n  Y -> Z [label=\"g\"];\n  Z -> SX [label=\"h\"];\n}\n");
    s
}
