//! Hasse diagrams in DOT: cover edges only, drawn bottom to top.

use std::fmt::Write;

use latgen_core::{FiniteLattice, FiniteStructure, GeneratorReport};

use crate::Highlight;

const FILL: &str = "#f4a261";

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Nodes in index order, edges in cover order, so output is deterministic.
pub fn render(l: &FiniteLattice, report: Option<&GeneratorReport>, highlight: Highlight) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=circle, style=filled, fillcolor=white];\n");
    for i in 0..l.size() {
        let mut attrs = vec![format!("label={}", quote(&l.label(i)))];
        if let Some(r) = report {
            match highlight {
                Highlight::Gamma if r.gamma.contains(i) => {
                    attrs.push(format!("fillcolor={}", quote(FILL)));
                    attrs.push("class=\"gamma\"".into());
                }
                Highlight::Phi if r.phi.contains(i) => {
                    attrs.push(format!("fillcolor={}", quote(FILL)));
                    attrs.push("class=\"phi\"".into());
                }
                Highlight::Maximal => {
                    let tags: Vec<String> = r
                        .maximal_substructures
                        .iter()
                        .enumerate()
                        .filter(|(_, m)| m.contains(i))
                        .map(|(k, _)| format!("M{k}"))
                        .collect();
                    if !tags.is_empty() {
                        attrs.push(format!("xlabel={}", quote(&tags.join(" "))));
                    }
                }
                _ => {}
            }
        }
        let _ = writeln!(out, "  n{i} [{}];", attrs.join(", "));
    }
    for (lo, hi) in l.covers() {
        let _ = writeln!(out, "  n{lo} -> n{hi};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use latgen_core::{analyze, chain, product, ClosureConfig};

    #[test]
    fn chain_is_a_path() {
        let l = chain(3).unwrap();
        let dot = render(&l, None, Highlight::None);
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains("n0 -> n1;") && dot.contains("n1 -> n2;"));
        assert!(dot.contains("rankdir=BT"));
    }

    #[test]
    fn diamond_highlights_the_extremes() {
        let l = product(&chain(2).unwrap(), &chain(2).unwrap()).unwrap();
        let r = analyze(&l, &ClosureConfig::lattice()).unwrap();
        let dot = render(&l, Some(&r), Highlight::Gamma);
        let marked: Vec<&str> = dot.lines().filter(|s| s.contains("class=\"gamma\"")).collect();
        assert_eq!(marked.len(), 2);
        assert!(marked[0].starts_with("  n0 ") && marked[1].starts_with("  n3 "));
    }

    #[test]
    fn maximal_tags() {
        let l = chain(3).unwrap();
        let r = analyze(&l, &ClosureConfig::lattice()).unwrap();
        let dot = render(&l, Some(&r), Highlight::Maximal);
        assert!(dot.contains("n0 [label=\"0\", xlabel=\"M0\"]"));
        assert!(dot.contains("n1 [label=\"1\"]"));
    }
}
