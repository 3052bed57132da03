//! Bundled curve descriptions, available by label for the CLI and as
//! regression inputs.

use crate::dual_graph::DualGraph;
use crate::parse::{parse_graph, ParseError};

pub const LABELS: &[&str] = &[
    "P1", "P2", "cl3no", "cl2no", "cl3n", "cl5no", "Pr", "Pr2", "ctcc", "ct2", "ct2b",
    "ct2c", "binary6",
];

/// The raw curve-description text for a bundled label.
pub fn source(label: &str) -> Option<&'static str> {
    Some(match label {
        "P1" => include_str!("../corpus/P1.curve"),
        "P2" => include_str!("../corpus/P2.curve"),
        "cl3no" => include_str!("../corpus/cl3no.curve"),
        "cl2no" => include_str!("../corpus/cl2no.curve"),
        "cl3n" => include_str!("../corpus/cl3n.curve"),
        "cl5no" => include_str!("../corpus/cl5no.curve"),
        "Pr" => include_str!("../corpus/Pr.curve"),
        "Pr2" => include_str!("../corpus/Pr2.curve"),
        "ctcc" => include_str!("../corpus/ctcc.curve"),
        "ct2" => include_str!("../corpus/ct2.curve"),
        "ct2b" => include_str!("../corpus/ct2b.curve"),
        "ct2c" => include_str!("../corpus/ct2c.curve"),
        "binary6" => include_str!("../corpus/binary6.curve"),
        _ => return None,
    })
}

/// Parses a bundled label into its dual graph.
pub fn graph(label: &str) -> Option<Result<DualGraph, ParseError>> {
    source(label).map(parse_graph)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_label_parses() {
        for &label in LABELS {
            let graph = graph(label).unwrap().unwrap();
            assert!(graph.vertex_count() >= 1, "{label}");
        }
    }

    #[test]
    fn unknown_label_is_none() {
        assert!(source("nonesuch").is_none());
    }

    #[test]
    fn bundled_graphs_match_the_programmatic_suite() {
        use crate::theorem_lab::example_suite;
        for ex in example_suite().unwrap() {
            let bundled = graph(ex.label).unwrap().unwrap();
            let built = ex.curve.graph();
            assert_eq!(bundled.vertex_count(), built.vertex_count(), "{}", ex.label);
            assert_eq!(bundled.edges().len(), built.edges().len(), "{}", ex.label);
            assert_eq!(
                bundled.arithmetic_genus(),
                built.arithmetic_genus(),
                "{}",
                ex.label
            );
        }
    }

    #[test]
    fn hub_of_the_first_example_is_a_separating_line() {
        let graph = graph("P1").unwrap().unwrap();
        assert!(graph.separating_lines().contains(&0));
    }
}
