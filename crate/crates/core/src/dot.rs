//! DOT export of lattice Hasse diagrams.
//!
//! Ideals and filters are both ordered by reverse inclusion of cores, so
//! both diagrams have the member lattice's shape: the zero ideal (core `X`)
//! at the bottom, the improper ideal (core `∅`) at the top. A node is named
//! by its core's label set; an edge goes to the cover obtained by removing
//! one atom from the core. Output is deterministic: nodes in canonical
//! member order, edges in (source, target) order.

use std::fmt::Write;

use crate::space::{SigmaAlgebra, SubsetOfX};

fn node_name(space: &SigmaAlgebra, core: &SubsetOfX) -> String {
    format!("{{{}}}", space.subset_labels(core).join(","))
}

/// Hasse edges of the core order: `to` is `from` minus one atom.
fn cover_edges(space: &SigmaAlgebra) -> Vec<(SubsetOfX, SubsetOfX)> {
    let mut edges = Vec::new();
    for from in space.members() {
        let inside = space.atoms_inside(from);
        for k in inside {
            let to = from.minus(&space.atoms()[k]);
            edges.push((*from, to));
        }
    }
    edges.sort_by_key(|(a, b)| (a.canonical_key(), b.canonical_key()));
    edges
}

fn lattice_dot(space: &SigmaAlgebra, graph_name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {graph_name} {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    let mut members: Vec<SubsetOfX> = space.members().to_vec();
    // bottom of the diagram is the largest core (X), so order by reversed key
    members.sort_by_key(|m| std::cmp::Reverse(m.canonical_key()));
    for m in &members {
        writeln!(out, "  \"{}\";", node_name(space, m)).unwrap();
    }
    for (from, to) in cover_edges(space) {
        writeln!(
            out,
            "  \"{}\" -> \"{}\";",
            node_name(space, &from),
            node_name(space, &to)
        )
        .unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

/// The ideal lattice as a DOT digraph (nodes named by ideal cores).
pub fn ideal_lattice_dot(space: &SigmaAlgebra) -> String {
    lattice_dot(space, "ideal_lattice")
}

/// The Z-filter lattice as a DOT digraph (nodes named by filter cores).
pub fn filter_lattice_dot(space: &SigmaAlgebra) -> String {
    lattice_dot(space, "filter_lattice")
}

/// The structure space as a DOT digraph: one node per point (a maximal
/// congruence, labeled by its atom) and one box node per basic closed set,
/// with edges to the points it contains.
pub fn structure_space_dot(space: &crate::space::SpaceRef) -> String {
    let st = crate::structure::StructureSpace::build(space);
    let mut out = String::new();
    writeln!(out, "digraph structure_space {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for (i, label) in st.point_labels().iter().enumerate() {
        writeln!(out, "  \"rho{i}\" [label=\"{label}\"];").unwrap();
    }
    for member in space.members() {
        let mask = st.basic_closed_index()[&member.bits()];
        let name = node_name(space, member);
        writeln!(out, "  \"m{name}\" [shape=box, label=\"m{name}\"];").unwrap();
        for i in 0..st.point_count() {
            if mask & (1 << i) != 0 {
                writeln!(out, "  \"m{name}\" -> \"rho{i}\";").unwrap();
            }
        }
    }
    writeln!(out, "}}").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_power_set_is_a_diamond() {
        let space = SigmaAlgebra::power_set(vec!["a".into(), "b".into()]).unwrap();
        let dot = ideal_lattice_dot(&space);
        assert_eq!(dot.matches(" -> ").count(), 4);
        assert!(dot.contains("\"{a,b}\" -> \"{a}\""));
        assert!(dot.contains("\"{a,b}\" -> \"{b}\""));
        assert!(dot.contains("\"{a}\" -> \"{}\""));
        assert!(dot.contains("\"{b}\" -> \"{}\""));
        // deterministic output
        assert_eq!(dot, ideal_lattice_dot(&space));
        assert_eq!(
            filter_lattice_dot(&space).replace("filter_lattice", "ideal_lattice"),
            dot
        );
    }

    #[test]
    fn node_count_matches_member_count() {
        let space =
            SigmaAlgebra::power_set(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let dot = ideal_lattice_dot(&space);
        assert_eq!(dot.matches(";\n").count() - 1, 8 + 12); // rankdir + 8 nodes + 12 edges
    }
}
