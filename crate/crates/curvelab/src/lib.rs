//! Combinatorics of line bundles on semistable nodal curves.
//!
//! The crate models a nodal curve by its dual graph (components as
//! genus-weighted vertices, nodes as edges), implements the balanced
//! multidegree inequality and its enumeration, and provides an exact
//! global-sections oracle on graph curves — curves all of whose
//! components are projective lines, so that sections are polynomials
//! matched across nodes and `h0` is a kernel dimension over the
//! rationals. On top of the oracle sit executable checks for the
//! Riemann- and Clifford-type statements the machinery is known to
//! satisfy, together with the classical counterexample configurations.

pub mod balance;
pub mod dual_graph;
pub mod examples;
pub mod generator;
pub mod graph_curve;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod report;
pub mod theorem_lab;

/// Default cap on the component count for operations that enumerate all
/// connected subcurves (exponentially many).
pub const DEFAULT_SUBCURVE_CAP: usize = 12;

/// Default cap on the number of cells of the box scanned by balanced
/// multidegree enumeration.
pub const DEFAULT_BOX_CAP: u64 = 10_000_000;
