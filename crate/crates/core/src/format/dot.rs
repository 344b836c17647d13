//! Graphviz output. Vertices and edges are drawn directly; each 2-cell
//! becomes a comment naming its boundary edges and a shaded cluster
//! `cluster_<name>`. Cells of dimension 3 and up appear only as comments.

use std::fmt::Write;

use crate::hda::Hda;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn write_dot(name: &str, x: &Hda) -> String {
    let mut s = String::new();
    writeln!(s, "digraph {} {{", quote(name)).unwrap();
    s.push_str("  rankdir=LR;\n  node [shape=circle];\n");
    for (id, c) in x.cells().iter().enumerate() {
        let n = quote(&c.name);
        let start = x.start().contains(&id);
        let accept = x.accept().contains(&id);
        match c.dim() {
            0 => {
                let shape = if accept { ", shape=doublecircle" } else { "" };
                writeln!(s, "  {n} [label={n}{shape}];").unwrap();
                if start {
                    let init = quote(&format!("start_{}", c.name));
                    writeln!(s, "  {init} [shape=point];\n  {init} -> {n};").unwrap();
                }
            }
            1 => {
                let label = quote(&format!("{}:{}", c.name, c.loset.labels()[0]));
                let mut attrs = format!("label={label}, id={n}");
                if start {
                    attrs.push_str(", arrowtail=dot, dir=both");
                }
                if accept {
                    attrs.push_str(", penwidth=2");
                }
                writeln!(s, "  {} -> {} [{attrs}];", quote(x.name(c.lower[0])), quote(x.name(c.upper[0])))
                    .unwrap();
            }
            d => {
                let faces: Vec<String> = (0..d)
                    .map(|i| format!("d0({0})={1} d1({0})={2}", i + 1, x.name(c.lower[i]), x.name(c.upper[i])))
                    .collect();
                writeln!(s, "  // {} {}: {}", c.name, c.loset, faces.join(" ")).unwrap();
                if d == 2 {
                    let mut label = format!("{} {}", c.name, c.loset);
                    if start {
                        label.push_str(" start");
                    }
                    if accept {
                        label.push_str(" accept");
                    }
                    writeln!(s, "  subgraph {} {{", quote(&format!("cluster_{}", c.name))).unwrap();
                    s.push_str("    style=filled; fillcolor=gray85; color=gray60;\n");
                    writeln!(s, "    label={};", quote(&label)).unwrap();
                    writeln!(s, "    {n} [shape=box, style=filled, fillcolor=gray70, label={n}];").unwrap();
                    s.push_str("  }\n");
                }
            }
        }
    }
    s.push_str("}\n");
    s
}
