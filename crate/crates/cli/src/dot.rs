use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use lodha_moore::lodha_moore::NormalForm;

fn node(side: &str, w: &[u8]) -> String {
    let tag: String = w.iter().map(|c| format!("_{c}")).collect();
    format!("{side}{tag}")
}

/// One tree as a cluster. `extra` holds words whose carets must be drawn
/// even though they lie below a leaf; `marks` decorates nodes with circles.
fn tree(
    out: &mut String,
    side: &str,
    n: usize,
    leaves: &[&[u8]],
    extra: &[&[u8]],
    marks: &BTreeMap<Vec<u8>, i64>,
) {
    let mut internal = BTreeSet::new();
    for w in leaves.iter().chain(extra) {
        for k in 0..w.len() {
            internal.insert(w[..k].to_vec());
        }
    }
    let _ = writeln!(out, "  subgraph cluster_{side} {{");
    let _ = writeln!(out, "    label=\"{}\";", if side == "d" { "domain" } else { "range" });
    let _ = writeln!(out, "    {} [shape=point];", node(side, &[]));
    for v in &internal {
        for c in 0..n as u8 {
            let mut child = v.clone();
            child.push(c);
            if !internal.contains(&child) {
                let _ = writeln!(out, "    {} [shape=point];", node(side, &child));
            }
            let _ = writeln!(out, "    {} -> {} [label=\"{c}\"];", node(side, v), node(side, &child));
        }
    }
    for (i, l) in leaves.iter().enumerate() {
        let _ = writeln!(out, "    {} [shape=point, xlabel=\"{i}\"];", node(side, l));
    }
    for (s, &t) in marks {
        let fill = if t > 0 { "black" } else { "white" };
        let label = if t.abs() > 1 { t.abs().to_string() } else { String::new() };
        let _ = writeln!(
            out,
            "    {} [shape=circle, style=filled, fillcolor={fill}, width=0.15, fixedsize=true, label=\"\", xlabel=\"{label}\"];",
            node(side, s)
        );
    }
    let _ = writeln!(out, "  }}");
}

/// Tree pair of `f` with each factor `y_s^t` drawn as a black (t > 0) or
/// white (t < 0) circle at `s` in the range tree.
pub fn draw(g: &NormalForm) -> String {
    let n = g.alphabet().arity();
    let dom: Vec<&[u8]> = g.f().domain_leaves().collect();
    let ran: Vec<&[u8]> = g.f().range_leaves().collect();
    let idx: Vec<&[u8]> = g.ys().iter().map(|y| y.index().letters()).collect();
    let marks: BTreeMap<Vec<u8>, i64> = g
        .ys()
        .iter()
        .map(|y| (y.index().letters().to_vec(), y.exponent()))
        .collect();
    let mut out = String::new();
    let _ = writeln!(out, "digraph g {{");
    let _ = writeln!(out, "  label=\"{g}\";");
    tree(&mut out, "d", n, &dom, &[], &BTreeMap::new());
    tree(&mut out, "r", n, &ran, &idx, &marks);
    let _ = writeln!(out, "}}");
    out
}
