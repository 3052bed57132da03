//! Deterministic enumeration of small weight-0 multigraphs and their
//! graph-curve realizations.
//!
//! Curves are enumerated up to isomorphism: a labeled candidate is kept
//! only when its encoding (loop vector plus upper-triangular nonloop
//! multiplicity matrix) is lexicographically minimal over all vertex
//! permutations. Branch coordinates for realizations are consecutive
//! integers per component, which is as generic as it needs to be: the
//! theorems under test hold for every realization.

use std::sync::Arc;

use num::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dual_graph::{DualGraph, Edge};
use crate::graph_curve::GraphCurve;
use crate::poly::Q;

/// The seeded generator used by every randomized check.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Labeled multigraph candidate during enumeration.
#[derive(Clone)]
struct Candidate {
    n: usize,
    loops: Vec<u32>,
    /// Multiplicity per vertex pair (i, j), i < j, in lexicographic pair
    /// order.
    mult: Vec<u32>,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    // Position of (i, j) in the lexicographic list of pairs.
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl Candidate {
    fn encoding(&self, perm: &[usize]) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.loops.len() + self.mult.len());
        for &p in perm {
            out.push(self.loops[p]);
        }
        for i in 0..self.n {
            for j in i + 1..self.n {
                let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
                out.push(self.mult[pair_index(self.n, a, b)]);
            }
        }
        out
    }

    fn is_canonical(&self, perms: &[Vec<usize>]) -> bool {
        let own = self.encoding(&(0..self.n).collect::<Vec<_>>());
        perms.iter().all(|p| self.encoding(p) >= own)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..self.n {
                if j == i || seen[j] {
                    continue;
                }
                let (a, b) = (i.min(j), i.max(j));
                if self.mult[pair_index(self.n, a, b)] > 0 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    fn genus(&self) -> i64 {
        let loops: i64 = self.loops.iter().map(|&l| l as i64).sum();
        let nonloop: i64 = self.mult.iter().map(|&m| m as i64).sum();
        loops + nonloop - self.n as i64 + 1
    }

    fn to_graph(&self) -> DualGraph {
        let mut edges = Vec::new();
        for (v, &l) in self.loops.iter().enumerate() {
            for _ in 0..l {
                edges.push(Edge {
                    u: v,
                    v,
                    label: format!("e{}", edges.len()),
                });
            }
        }
        for i in 0..self.n {
            for j in i + 1..self.n {
                for _ in 0..self.mult[pair_index(self.n, i, j)] {
                    edges.push(Edge {
                        u: i,
                        v: j,
                        label: format!("e{}", edges.len()),
                    });
                }
            }
        }
        DualGraph::new(vec![0; self.n], edges).expect("candidate is connected")
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    permute(&mut items, 0, &mut out);
    out
}

fn permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

/// Every connected weight-0 multigraph with `gamma` components, up to
/// isomorphism, whose total edge count is at most `max_edges`, passed
/// through `accept`.
fn enumerate_gamma(
    gamma: usize,
    max_edges: u32,
    accept: &mut impl FnMut(&Candidate) -> bool,
    out: &mut Vec<DualGraph>,
) {
    let pairs = gamma * (gamma - 1) / 2;
    let perms = permutations(gamma);
    let mut cand = Candidate {
        n: gamma,
        loops: vec![0; gamma],
        mult: vec![0; pairs],
    };
    fill_slots(&mut cand, 0, max_edges, &perms, accept, out);
}

fn fill_slots(
    cand: &mut Candidate,
    slot: usize,
    budget: u32,
    perms: &[Vec<usize>],
    accept: &mut impl FnMut(&Candidate) -> bool,
    out: &mut Vec<DualGraph>,
) {
    let total_slots = cand.loops.len() + cand.mult.len();
    if slot == total_slots {
        if cand.is_connected() && accept(cand) && cand.is_canonical(perms) {
            out.push(cand.to_graph());
        }
        return;
    }
    for v in 0..=budget {
        if slot < cand.loops.len() {
            cand.loops[slot] = v;
        } else {
            cand.mult[slot - cand.loops.len()] = v;
        }
        fill_slots(cand, slot + 1, budget - v, perms, accept, out);
    }
    if slot < cand.loops.len() {
        cand.loops[slot] = 0;
    } else {
        cand.mult[slot - cand.loops.len()] = 0;
    }
}

/// All connected weight-0 multigraphs up to isomorphism with at most
/// `max_gamma` vertices and `max_edges` edges (loops included in the
/// count). No stability filter.
pub fn connected_multigraphs(max_gamma: usize, max_edges: u32) -> Vec<DualGraph> {
    let mut out = Vec::new();
    for gamma in 1..=max_gamma {
        enumerate_gamma(gamma, max_edges, &mut |_| true, &mut out);
    }
    out
}

/// All semistable weight-0 multigraphs up to isomorphism with at most
/// `max_gamma` vertices and genus in `[2, max_genus]`. Semistability is
/// the local criterion (every loopless vertex meets at least two
/// nonloop edges), which for weight-0 graphs matches the subcurve
/// definition.
pub fn semistable_curves(max_gamma: usize, max_genus: i64) -> Vec<DualGraph> {
    let mut out = Vec::new();
    for gamma in 1..=max_gamma {
        // genus = loops + nonloop - gamma + 1 <= max_genus
        let max_edges = (max_genus + gamma as i64 - 1) as u32;
        enumerate_gamma(
            gamma,
            max_edges,
            &mut |cand| {
                let g = cand.genus();
                if !(2..=max_genus).contains(&g) {
                    return false;
                }
                (0..cand.n).all(|i| {
                    cand.loops[i] > 0 || {
                        let deg: u32 = (0..cand.n)
                            .filter(|&j| j != i)
                            .map(|j| cand.mult[pair_index(cand.n, i.min(j), i.max(j))])
                            .sum();
                        deg >= 2
                    }
                })
            },
            &mut out,
        );
    }
    out
}

/// Stable weight-0 multigraphs without separating nodes, the hypothesis
/// family of the low-degree statements.
pub fn stable_bridgeless_curves(max_gamma: usize, max_genus: i64) -> Vec<DualGraph> {
    semistable_curves(max_gamma, max_genus)
        .into_iter()
        .filter(|g| {
            g.classify_stability(max_gamma).map_or(false, |s| s.is_stable())
                && g.separating_nodes().is_empty()
        })
        .collect()
}

/// Deterministic thinning: every `stride`-th curve so that at most
/// `budget` survive, always keeping the first of each vertex count.
pub fn thin(curves: Vec<DualGraph>, budget: usize) -> Vec<DualGraph> {
    if curves.len() <= budget {
        return curves;
    }
    let stride = curves.len().div_ceil(budget);
    curves
        .into_iter()
        .enumerate()
        .filter(|(k, _)| k % stride == 0)
        .map(|(_, g)| g)
        .collect()
}

/// Realizes a weight-0 dual graph with integer branch coordinates,
/// consecutive per component.
pub fn realize(graph: &DualGraph) -> Arc<GraphCurve> {
    let mut next = vec![0i64; graph.vertex_count()];
    let mut take = |comp: usize| {
        let c = next[comp];
        next[comp] += 1;
        Q::from_integer(BigInt::from(c))
    };
    let branches = graph
        .edges()
        .iter()
        .map(|e| [take(e.u), take(e.v)])
        .collect();
    GraphCurve::new(graph.clone(), branches).expect("integer coordinates are distinct")
}
