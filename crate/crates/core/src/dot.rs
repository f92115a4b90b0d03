//! Graphviz export: Hasse diagrams of lattices and the specialization order
//! of finite topologies.

use std::fmt::Write;

use crate::lattice::FiniteLattice;
use crate::topology::FiniteTopology;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn graph(name: &str, labels: &[String], edges: &[(usize, usize)]) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=plaintext];").unwrap();
    for (i, l) in labels.iter().enumerate() {
        writeln!(out, "  n{i} [label={}];", quote(l)).unwrap();
    }
    for &(a, b) in edges {
        writeln!(out, "  n{a} -> n{b} [arrowhead=none];").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram: one edge per covering pair, drawn bottom to top.
pub fn lattice_dot(name: &str, lattice: &FiniteLattice, labels: &[String]) -> String {
    graph(name, labels, &lattice.covers())
}

/// The specialization order, reduced to covers: an edge from `y` up to `x`
/// when `y` is a specialization of `x` (`y ∈ cl{x}`) with nothing in between.
pub fn topology_dot(name: &str, t: &FiniteTopology) -> String {
    let spec = t.specialization_edges();
    let below = |x: usize, y: usize| spec.contains(&(x, y));
    let edges: Vec<(usize, usize)> = spec
        .iter()
        .copied()
        .filter(|&(x, y)| !below(y, x) && !(0..t.len()).any(|z| z != x && z != y && below(x, z) && below(z, y)))
        .map(|(x, y)| (y, x))
        .collect();
    graph(name, t.labels(), &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_node() {
        let l = FiniteLattice::chain(1);
        let dot = lattice_dot("one", &l, &["0".into()]);
        assert_eq!(dot.matches("[label=").count(), 1);
        assert!(!dot.contains("->"));
    }

    #[test]
    fn square_has_four_covers() {
        let c2 = FiniteLattice::chain(2);
        let sq = c2.product(&c2);
        let labels: Vec<String> = (0..4).map(|i| i.to_string()).collect();
        assert_eq!(lattice_dot("sq", &sq, &labels).matches("->").count(), 4);
    }

    #[test]
    fn sierpinski_space_has_one_edge() {
        let t = FiniteTopology::generated(vec!["a".into(), "b".into()], &[0b01], vec![0b01]).unwrap();
        let dot = topology_dot("s", &t);
        assert_eq!(dot.matches("->").count(), 1);
        // b is closed and lies in the closure of the open point a
        assert!(dot.contains("n1 -> n0"));
    }
}
