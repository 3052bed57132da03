//! Balanced multidegrees.
//!
//! A multidegree `d` of total degree `|d|` on a semistable curve is
//! balanced when every connected subcurve `Z` satisfies the basic
//! inequality
//!
//! ```text
//!     |d| * w_Z / w  -  delta_Z / 2   <=   d_Z   <=   |d| * w_Z / w  +  delta_Z / 2
//! ```
//!
//! and `d_E = 1` on every exceptional component. All comparisons are
//! exact: the inequality is cross-multiplied by `2w > 0` and checked in
//! integers, so boundary cases (equality) are decided correctly.

use num::rational::Ratio;
use thiserror::Error;

use crate::dual_graph::{DualGraph, GraphError, Subcurve};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BalanceError {
    #[error("multidegree has {got} entries, curve has {want} components")]
    LengthMismatch { got: usize, want: usize },
    #[error("curve is not semistable")]
    NotSemistable,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("enumeration box has {cells} cells, above the cap {cap}")]
    BoxTooLarge { cells: u128, cap: u64 },
    #[error("multidegree is not balanced")]
    NotBalanced,
    #[error("total degree {got} exceeds 2g-2 = {limit}")]
    DegreeTooLarge { got: i64, limit: i64 },
}

/// An integer degree vector indexed by the components of a fixed curve.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multidegree {
    pub entries: Vec<i64>,
}

impl Multidegree {
    pub fn new(entries: Vec<i64>) -> Self {
        Multidegree { entries }
    }

    pub fn zero(n: usize) -> Self {
        Multidegree {
            entries: vec![0; n],
        }
    }

    pub fn total(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// Sum of the entries over the members of a subcurve.
    pub fn on(&self, z: &Subcurve<'_>) -> i64 {
        z.members().iter().map(|&i| self.entries[i]).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|&d| d >= 0)
    }

    fn check_len(&self, graph: &DualGraph) -> Result<(), BalanceError> {
        if self.entries.len() != graph.vertex_count() {
            return Err(BalanceError::LengthMismatch {
                got: self.entries.len(),
                want: graph.vertex_count(),
            });
        }
        Ok(())
    }
}

impl std::fmt::Display for Multidegree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, d) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// Outcome of the balanced test: either balanced, or a witness for the
/// failing clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BalanceVerdict {
    Balanced,
    /// The basic inequality fails on this connected subcurve (sorted
    /// member indices).
    InequalityViolation { members: Vec<usize> },
    /// An exceptional component carries degree != 1.
    ExceptionalViolation { component: usize },
}

impl BalanceVerdict {
    pub fn is_balanced(&self) -> bool {
        matches!(self, BalanceVerdict::Balanced)
    }
}

/// The set of balanced multidegrees of a fixed total degree, in
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct BalancedSet {
    pub degree: i64,
    pub members: Vec<Multidegree>,
}

fn require_semistable(graph: &DualGraph, cap: usize) -> Result<(), BalanceError> {
    if !graph.classify_stability(cap)?.is_semistable() {
        return Err(BalanceError::NotSemistable);
    }
    Ok(())
}

/// Tests the basic inequality on every connected subcurve, plus degree 1
/// on exceptional components. Requires a semistable curve of genus >= 2.
pub fn is_balanced(
    graph: &DualGraph,
    d: &Multidegree,
    cap: usize,
) -> Result<BalanceVerdict, BalanceError> {
    d.check_len(graph)?;
    require_semistable(graph, cap)?;
    for i in 0..graph.vertex_count() {
        if graph.is_exceptional(i) && d.entries[i] != 1 {
            return Ok(BalanceVerdict::ExceptionalViolation { component: i });
        }
    }
    let w = graph.total_canonical_degree();
    debug_assert!(w > 0);
    let total = d.total();
    for z in graph.connected_subcurves(cap)? {
        let inv = z.invariants();
        let dz = d.on(&z);
        // |d|*w_Z/w - delta_Z/2 <= d_Z <= |d|*w_Z/w + delta_Z/2,
        // multiplied through by 2w.
        let lhs = 2 * total as i128 * inv.canonical_weight as i128
            - inv.boundary_nodes as i128 * w as i128;
        let mid = 2 * dz as i128 * w as i128;
        let rhs = 2 * total as i128 * inv.canonical_weight as i128
            + inv.boundary_nodes as i128 * w as i128;
        if !(lhs <= mid && mid <= rhs) {
            return Ok(BalanceVerdict::InequalityViolation {
                members: z.members().to_vec(),
            });
        }
    }
    Ok(BalanceVerdict::Balanced)
}

/// Enumerates the balanced multidegrees of total degree `d` exactly:
/// per-component bounds from the basic inequality on single components
/// cut out a finite box, which is scanned and filtered through the full
/// test. Errors when the box exceeds `box_cap` cells.
pub fn enumerate_balanced(
    graph: &DualGraph,
    d: i64,
    subcurve_cap: usize,
    box_cap: u64,
) -> Result<BalancedSet, BalanceError> {
    require_semistable(graph, subcurve_cap)?;
    let w = graph.total_canonical_degree();
    let n = graph.vertex_count();
    // Bounds for d_i from the single-component inequality:
    // ceil(d*w_i/w - delta_i/2) <= d_i <= floor(d*w_i/w + delta_i/2),
    // with the hard constraint d_i = 1 on exceptional components.
    let mut lo = vec![0i64; n];
    let mut hi = vec![0i64; n];
    let mut cells: u128 = 1;
    for i in 0..n {
        if graph.is_exceptional(i) {
            lo[i] = 1;
            hi[i] = 1;
        } else {
            let wi = graph.canonical_degree(i);
            let di = graph.nonloop_degree(i) as i64;
            let center = Ratio::new(d as i128 * wi as i128, w as i128);
            let half = Ratio::new(di as i128, 2);
            lo[i] = (center - half).ceil().to_integer() as i64;
            hi[i] = (center + half).floor().to_integer() as i64;
        }
        if hi[i] < lo[i] {
            return Ok(BalancedSet {
                degree: d,
                members: Vec::new(),
            });
        }
        cells = cells.saturating_mul((hi[i] - lo[i] + 1) as u128);
    }
    if cells > box_cap as u128 {
        return Err(BalanceError::BoxTooLarge {
            cells,
            cap: box_cap,
        });
    }
    let mut members = Vec::new();
    let mut current = lo.clone();
    'scan: loop {
        if current.iter().sum::<i64>() == d {
            let md = Multidegree::new(current.clone());
            if is_balanced(graph, &md, subcurve_cap)?.is_balanced() {
                members.push(md);
            }
        }
        // Odometer step: advance the last coordinate that has room.
        for i in (0..n).rev() {
            if current[i] < hi[i] {
                current[i] += 1;
                for j in i + 1..n {
                    current[j] = lo[j];
                }
                continue 'scan;
            }
        }
        break;
    }
    members.sort();
    Ok(BalancedSet { degree: d, members })
}

/// The multidegree of the dualizing sheaf minus `d`; an involution with
/// total `2g - 2 - |d|`.
pub fn residual_multidegree(graph: &DualGraph, d: &Multidegree) -> Multidegree {
    let omega = graph.canonical_multidegree();
    Multidegree::new(
        omega
            .iter()
            .zip(&d.entries)
            .map(|(&w, &di)| w - di)
            .collect(),
    )
}

/// Excess of a subcurve against the halving bound used in the low-degree
/// analysis: writes `d_Z = 2 g_Z + delta_Z - 1 + a_Z` and checks
/// `a_Z <= delta_Z/2 - 1` (even `delta_Z`) or `(delta_Z - 1)/2 - 1`
/// (odd). Requires `d` balanced of total degree at most `2g - 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcessCheck {
    pub excess: i64,
    pub bound: Ratio<i64>,
    pub holds: bool,
}

pub fn excess_bound_check(
    graph: &DualGraph,
    d: &Multidegree,
    z: &Subcurve<'_>,
    cap: usize,
) -> Result<ExcessCheck, BalanceError> {
    if !is_balanced(graph, d, cap)?.is_balanced() {
        return Err(BalanceError::NotBalanced);
    }
    let limit = graph.total_canonical_degree();
    if d.total() > limit {
        return Err(BalanceError::DegreeTooLarge {
            got: d.total(),
            limit,
        });
    }
    let inv = z.invariants();
    let excess = d.on(z) - (2 * inv.genus + inv.boundary_nodes - 1);
    let bound = if inv.boundary_nodes % 2 == 0 {
        Ratio::new(inv.boundary_nodes, 2) - Ratio::from_integer(1)
    } else {
        Ratio::new(inv.boundary_nodes - 1, 2) - Ratio::from_integer(1)
    };
    Ok(ExcessCheck {
        excess,
        bound,
        holds: Ratio::from_integer(excess) <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual_graph::{DualGraph, Edge};

    fn graph(weights: Vec<u32>, edges: Vec<(usize, usize)>) -> DualGraph {
        DualGraph::new(
            weights,
            edges
                .into_iter()
                .enumerate()
                .map(|(k, (u, v))| Edge {
                    u,
                    v,
                    label: format!("e{k}"),
                })
                .collect(),
        )
        .unwrap()
    }

    fn binary(n: usize) -> DualGraph {
        graph(vec![0, 0], vec![(0, 1); n])
    }

    fn two_components(g1: u32, g2: u32, delta: usize) -> DualGraph {
        graph(vec![g1, g2], vec![(0, 1); delta])
    }

    fn d(entries: &[i64]) -> Multidegree {
        Multidegree::new(entries.to_vec())
    }

    #[test]
    fn compact_type_degree_two_split_15() {
        // g = (1,5), one node, total degree 2: only (0,2) is balanced.
        let g = two_components(1, 5, 1);
        let sets = enumerate_balanced(&g, 2, 12, 1000).unwrap();
        assert_eq!(sets.members, vec![d(&[0, 2])]);
    }

    #[test]
    fn compact_type_degree_two_split_12() {
        let g = two_components(1, 2, 1);
        let sets = enumerate_balanced(&g, 2, 12, 1000).unwrap();
        assert_eq!(sets.members, vec![d(&[0, 2]), d(&[1, 1])]);
    }

    #[test]
    fn compact_type_degree_two_split_23() {
        let g = two_components(2, 3, 1);
        let sets = enumerate_balanced(&g, 2, 12, 1000).unwrap();
        assert_eq!(sets.members, vec![d(&[1, 1])]);
    }

    /// Hub with four genus-3 neighbors, two nodes each (the h = 0
    /// sharpness configuration).
    fn double_star() -> DualGraph {
        let mut edges = Vec::new();
        for i in 1..=4 {
            edges.push((0, i));
            edges.push((0, i));
            edges.push((i, i));
            edges.push((i, i));
            edges.push((i, i));
        }
        graph(vec![0; 5], edges)
    }

    #[test]
    fn double_star_multidegree_is_balanced() {
        let g = double_star();
        assert_eq!(
            is_balanced(&g, &d(&[-3, 2, 2, 2, 2]), 12).unwrap(),
            BalanceVerdict::Balanced
        );
    }

    #[test]
    fn canonical_multidegree_is_balanced() {
        for g in crate::generator::semistable_curves(4, 6) {
            let omega = Multidegree::new(g.canonical_multidegree());
            if g.edges().iter().any(|e| !e.is_loop()) {
                // With an exceptional component the canonical degree there
                // is 0, so omega can only be balanced if none exists.
                if (0..g.vertex_count()).any(|i| g.is_exceptional(i)) {
                    continue;
                }
            }
            assert_eq!(
                is_balanced(&g, &omega, 12).unwrap(),
                BalanceVerdict::Balanced,
                "omega on {g:?}"
            );
        }
    }

    #[test]
    fn chain_bundle_is_balanced_on_p2_graph() {
        let g = graph(vec![1, 1, 4], vec![(0, 1), (0, 1), (1, 2)]);
        assert_eq!(
            is_balanced(&g, &d(&[1, -1, 1]), 12).unwrap(),
            BalanceVerdict::Balanced
        );
    }

    #[test]
    fn alternating_cycle_multidegree_is_balanced() {
        let g = graph(
            vec![0; 6],
            vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 1), (3, 3), (5, 5)],
        );
        assert_eq!(
            is_balanced(&g, &d(&[1, 0, 1, 0, 1, 0]), 12).unwrap(),
            BalanceVerdict::Balanced
        );
        // Exceptional components must carry degree exactly 1.
        assert_eq!(
            is_balanced(&g, &d(&[0, 1, 1, 0, 1, 0]), 12).unwrap(),
            BalanceVerdict::ExceptionalViolation { component: 0 }
        );
    }

    #[test]
    fn lopsided_binary_multidegree_is_rejected() {
        let g = binary(7);
        // Each side has w_Z = 5 and delta = 7, so the degree-5 window per
        // side is [-1, 6]; degree 7 on one side breaks it.
        match is_balanced(&g, &d(&[7, -2]), 12).unwrap() {
            BalanceVerdict::InequalityViolation { members } => {
                assert!(members == vec![0] || members == vec![1]);
            }
            v => panic!("want inequality violation, got {v:?}"),
        }
    }

    #[test]
    fn residual_swaps_binary_degrees() {
        let g = binary(7);
        // omega = (5, 5); residual of (2, 3) is (3, 2).
        assert_eq!(residual_multidegree(&g, &d(&[2, 3])), d(&[3, 2]));
    }

    #[test]
    fn residual_is_an_involution() {
        for g in crate::generator::semistable_curves(4, 6) {
            let sample = d(&(0..g.vertex_count() as i64).collect::<Vec<_>>());
            let twice = residual_multidegree(&g, &residual_multidegree(&g, &sample));
            assert_eq!(twice, sample);
        }
    }

    #[test]
    fn balance_is_residual_symmetric() {
        for g in crate::generator::semistable_curves(4, 5) {
            let genus = g.arithmetic_genus();
            let total = 2 * genus - 2 - 1;
            for set in enumerate_balanced(&g, total, 12, 100_000).unwrap().members {
                let res = residual_multidegree(&g, &set);
                // Residual symmetry holds away from exceptional pinning.
                if (0..g.vertex_count()).any(|i| g.is_exceptional(i)) {
                    continue;
                }
                assert_eq!(
                    is_balanced(&g, &res, 12).unwrap(),
                    BalanceVerdict::Balanced,
                    "residual of {set} on {g:?}"
                );
            }
        }
    }

    #[test]
    fn high_degree_balanced_sets_are_nonnegative() {
        for g in crate::generator::semistable_curves(3, 5) {
            let genus = g.arithmetic_genus();
            for set in enumerate_balanced(&g, 2 * genus - 1, 12, 100_000).unwrap().members {
                for z in g.connected_subcurves(12).unwrap() {
                    let inv = z.invariants();
                    assert!(
                        set.on(&z) >= 2 * inv.genus - 1,
                        "{set} on {:?} of {g:?}",
                        z.members()
                    );
                }
            }
        }
    }

    #[test]
    fn box_cap_is_enforced() {
        let g = binary(7);
        match enumerate_balanced(&g, 1000, 12, 10) {
            Err(BalanceError::BoxTooLarge { cells, cap }) => {
                assert!(cells > u128::from(cap) && cap == 10);
            }
            other => panic!("want box cap error, got {other:?}"),
        }
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let g = binary(3);
        assert!(matches!(
            is_balanced(&g, &d(&[1]), 12),
            Err(BalanceError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn multidegree_display() {
        assert_eq!(d(&[2, 3, -1]).to_string(), "(2,3,-1)");
    }

    #[test]
    fn excess_bound_on_binary_side() {
        let g = binary(7);
        let z = g.subcurve([0]).unwrap();
        let check = excess_bound_check(&g, &d(&[2, 3]), &z, 12).unwrap();
        // a_Z = 2 - (2*0 + 7 - 1) = -4, bound (7-1)/2 - 1 = 2.
        assert_eq!(check.excess, -4);
        assert_eq!(check.bound, num::rational::Ratio::new(2, 1));
        assert!(check.holds);
    }

    #[test]
    fn excess_bound_holds_on_balanced_sets() {
        for g in crate::generator::semistable_curves(3, 5) {
            let genus = g.arithmetic_genus();
            for set in enumerate_balanced(&g, 2 * genus - 2, 12, 100_000).unwrap().members {
                for z in g.connected_subcurves(12).unwrap() {
                    if !z.is_proper() {
                        continue;
                    }
                    assert!(
                        excess_bound_check(&g, &set, &z, 12).unwrap().holds,
                        "{set} on {:?} of {g:?}",
                        z.members()
                    );
                }
            }
        }
    }
}
