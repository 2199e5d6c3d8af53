//! Graphviz output. Tree vertices are filled by floret label set, so vertices
//! in one stage share a colour; leaves stay white.

use std::collections::BTreeMap;
use std::fmt::Write;

use staged_core::analyze::SimplicialComplex;
use staged_core::poly::Indeterminate;
use staged_core::EventTree;

const PALETTE: [&str; 12] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#ffff33", "#a65628", "#f781bf",
    "#66c2a5", "#fc8d62", "#8da0cb", "#e78ac3",
];

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Colours are assigned to floret label sets in sorted order, cycling
/// through a fixed palette.
pub fn tree_to_dot(t: &EventTree, name: &str) -> String {
    let mut sets: BTreeMap<Vec<Indeterminate>, usize> = BTreeMap::new();
    for v in t.preorder() {
        if !t.node(v).is_leaf() {
            sets.insert(t.floret_labels(v), 0);
        }
    }
    for (k, slot) in sets.values_mut().enumerate() {
        *slot = k;
    }

    let order = t.preorder();
    let id: BTreeMap<usize, usize> = order.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(
        out,
        "  node [shape=circle, style=filled, label=\"\", width=0.25];"
    )
    .unwrap();
    for &v in &order {
        let fill = if t.node(v).is_leaf() {
            "white"
        } else {
            PALETTE[sets[&t.floret_labels(v)] % PALETTE.len()]
        };
        writeln!(out, "  v{} [fillcolor=\"{fill}\"];", id[&v]).unwrap();
    }
    for &v in &order {
        for e in t.node(v).edges() {
            writeln!(
                out,
                "  v{} -> v{} [label={}];",
                id[&v],
                id[&e.child],
                quote(e.label.name())
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// Vertices of the complex joined when they share a facet.
pub fn complex_to_dot(sc: &SimplicialComplex) -> String {
    let mut out = String::from("graph complex {\n");
    for (x, d) in sc.degrees() {
        writeln!(
            out,
            "  {} [label={}];",
            quote(x.name()),
            quote(&format!("{} ({d})", x.name()))
        )
        .unwrap();
    }
    for (a, b) in sc.edges() {
        writeln!(out, "  {} -- {};", quote(a.name()), quote(b.name())).unwrap();
    }
    out.push_str("}\n");
    out
}
