//! Graphviz output for lattices and Kripke frames.

use std::fmt::Write;

use manymodal::semantics::Frame;
use manymodal::FiniteLattice;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram drawn bottom-up. Complement pairs become dashed red edges;
/// a symmetric pair is drawn once with arrows at both ends and fixed points
/// of the complement are drawn with a double border.
pub fn lattice_dot(l: &FiniteLattice) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(l.name())).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for x in l.elements() {
        let fixed = l.complement_opt(x) == Some(x);
        let extra = if fixed { " peripheries=2" } else { "" };
        writeln!(out, "  {} [label={}{extra}];", quote(l.name_of(x)), quote(l.name_of(x))).unwrap();
    }
    for (a, b) in l.covers() {
        writeln!(out, "  {} -> {};", quote(l.name_of(a)), quote(l.name_of(b))).unwrap();
    }
    for (a, b) in l.complement_pairs() {
        if a == b {
            continue;
        }
        let symmetric = l.complement_opt(b) == Some(a);
        if symmetric && b < a {
            continue;
        }
        let dir = if symmetric { " dir=both" } else { "" };
        writeln!(
            out,
            "  {} -> {} [style=dashed color=red constraint=false{dir}];",
            quote(l.name_of(a)),
            quote(l.name_of(b))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// Worlds labelled `id : universe`, one edge per accessibility pair.
pub fn frame_dot(f: &Frame) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(f.name())).unwrap();
    for w in f.worlds() {
        let label = format!("{} : {}", w.id, w.universe.name());
        writeln!(out, "  {} [label={}];", quote(&w.id), quote(&label)).unwrap();
    }
    for (a, b) in f.edges() {
        writeln!(out, "  {} -> {};", quote(&f.worlds()[a].id), quote(&f.worlds()[b].id)).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use manymodal::LatticeBuilder;

    fn count(dot: &str, pat: &str) -> usize {
        dot.lines().filter(|l| l.contains(pat)).count()
    }

    #[test]
    fn diamond() {
        let l = LatticeBuilder::new("D")
            .elements(["0", "a", "b", "1"])
            .order([("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
            .complements([("0", "1"), ("1", "0"), ("a", "b"), ("b", "a")])
            .build()
            .unwrap();
        let dot = lattice_dot(&l);
        assert_eq!(count(&dot, "[label="), 4);
        assert_eq!(count(&dot, "->"), 6);
        assert_eq!(count(&dot, "style=dashed"), 2);
        assert_eq!(dot, lattice_dot(&l));
    }

    #[test]
    fn one_point() {
        let l = LatticeBuilder::new("P")
            .element("0")
            .complement("0", "0")
            .build()
            .unwrap();
        let dot = lattice_dot(&l);
        assert_eq!(count(&dot, "[label="), 1);
        assert_eq!(count(&dot, "->"), 0);
    }
}
