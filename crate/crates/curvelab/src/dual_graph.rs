//! Dual graphs of nodal curves.
//!
//! A curve is encoded by its dual graph: one vertex per irreducible
//! component, carrying the geometric genus of that component's
//! normalization, one edge per node. A node internal to a single component
//! is a loop. All invariants here (arithmetic genus, subcurve genus,
//! node counts, stability) are purely combinatorial.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("edge {label:?} references missing vertex index {index}")]
    DanglingEdge { label: String, index: usize },
    #[error("graph is not connected: vertex {0} unreachable from vertex 0")]
    Disconnected(usize),
    #[error("subcurve member {0} out of range")]
    BadMember(usize),
    #[error("subcurve must be nonempty")]
    EmptySubcurve,
    #[error("arithmetic genus {0} is below 2; stability is only defined for genus >= 2")]
    GenusTooSmall(i64),
    #[error("component count {count} exceeds subcurve enumeration cap {cap}")]
    TooManyComponents { count: usize, cap: usize },
    #[error("trivial order: the graph has a single vertex")]
    TrivialOrder,
    #[error("curve is not stable")]
    NotStable,
    #[error("separating nodes present")]
    SeparatingNodesPresent,
}

/// An edge of the dual graph, i.e. a node of the curve. Loops (`u == v`)
/// are nodes internal to one component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub label: String,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// Whether the edge meets vertex `i`, counted with multiplicity
    /// (a loop meets its vertex twice).
    pub fn incidence(&self, i: usize) -> usize {
        (self.u == i) as usize + (self.v == i) as usize
    }
}

/// The dual graph of a connected nodal curve (or, for derived views such
/// as partial normalizations and complements, a possibly disconnected one).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    weights: Vec<u32>,
    names: Vec<String>,
    edges: Vec<Edge>,
}

impl DualGraph {
    /// Builds a connected dual graph. `weights[i]` is the geometric genus
    /// of component `i`.
    pub fn new(weights: Vec<u32>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let names = (0..weights.len()).map(|i| format!("C{i}")).collect();
        Self::with_names(weights, names, edges)
    }

    pub fn with_names(
        weights: Vec<u32>,
        names: Vec<String>,
        edges: Vec<Edge>,
    ) -> Result<Self, GraphError> {
        let g = Self::unchecked(weights, names, edges)?;
        if let Some(stray) = g.first_unreachable() {
            return Err(GraphError::Disconnected(stray));
        }
        Ok(g)
    }

    /// Builds a dual graph that is allowed to be disconnected. Used for
    /// derived curves: complements of subcurves and partial normalizations.
    pub fn new_possibly_disconnected(
        weights: Vec<u32>,
        names: Vec<String>,
        edges: Vec<Edge>,
    ) -> Result<Self, GraphError> {
        Self::unchecked(weights, names, edges)
    }

    fn unchecked(
        weights: Vec<u32>,
        names: Vec<String>,
        edges: Vec<Edge>,
    ) -> Result<Self, GraphError> {
        if weights.is_empty() {
            return Err(GraphError::Empty);
        }
        assert_eq!(weights.len(), names.len());
        for e in &edges {
            for idx in [e.u, e.v] {
                if idx >= weights.len() {
                    return Err(GraphError::DanglingEdge {
                        label: e.label.clone(),
                        index: idx,
                    });
                }
            }
        }
        Ok(DualGraph {
            weights,
            names,
            edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Loops at vertex `i` (nodes internal to that component).
    pub fn loops_at(&self, i: usize) -> usize {
        self.edges.iter().filter(|e| e.is_loop() && e.u == i).count()
    }

    /// Edge degree of vertex `i`, loops counted twice.
    pub fn degree(&self, i: usize) -> usize {
        self.edges.iter().map(|e| e.incidence(i)).sum()
    }

    fn first_unreachable(&self) -> Option<usize> {
        let seen = self.reach_from(0);
        (0..self.vertex_count()).find(|&i| !seen[i])
    }

    pub fn is_connected(&self) -> bool {
        self.first_unreachable().is_none()
    }

    fn reach_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(i) = stack.pop() {
            for e in &self.edges {
                for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                    if a == i && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen
    }

    /// Vertex sets of the connected components, each sorted, the list
    /// sorted by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.vertex_count()];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..self.vertex_count() {
            if comp[start] != usize::MAX {
                continue;
            }
            let seen = self.reach_from(start);
            let members: Vec<usize> = (0..self.vertex_count())
                .filter(|&i| seen[i] && comp[i] == usize::MAX)
                .collect();
            for &m in &members {
                comp[m] = out.len();
            }
            out.push(members);
        }
        out
    }

    /// Arithmetic genus: sum of component genera (geometric weight plus
    /// internal nodes) plus the number of independent cycles formed by the
    /// non-loop nodes. The formula `sum(weights) + loops + nonloop - n + 1`
    /// is valid for disconnected graphs as well, where it computes the
    /// genus of the disjoint union, `sum(g_i) - (#components - 1)`, since
    /// `g - 1` is additive.
    pub fn arithmetic_genus(&self) -> i64 {
        let weights: i64 = self.weights.iter().map(|&w| w as i64).sum();
        let loops = self.edges.iter().filter(|e| e.is_loop()).count() as i64;
        let nonloop = self.edges.len() as i64 - loops;
        weights + loops + nonloop - self.vertex_count() as i64 + 1
    }

    /// Total canonical degree `2g - 2`.
    pub fn total_canonical_degree(&self) -> i64 {
        2 * self.arithmetic_genus() - 2
    }

    /// Degree of the dualizing sheaf on component `i`:
    /// `2 g_i - 2 + delta_i` where `g_i = weight_i + loops_i`.
    pub fn canonical_degree(&self, i: usize) -> i64 {
        let gi = self.weights[i] as i64 + self.loops_at(i) as i64;
        2 * gi - 2 + self.nonloop_degree(i) as i64
    }

    pub fn canonical_multidegree(&self) -> Vec<i64> {
        (0..self.vertex_count())
            .map(|i| self.canonical_degree(i))
            .collect()
    }

    /// Non-loop edge degree of vertex `i` (the nodes joining component
    /// `i` to the rest of the curve).
    pub fn nonloop_degree(&self, i: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| !e.is_loop())
            .map(|e| e.incidence(i))
            .sum()
    }

    /// Whether component `i` is exceptional: a weight-0, loop-free
    /// component meeting the rest of the curve in exactly two nodes.
    pub fn is_exceptional(&self, i: usize) -> bool {
        self.weights[i] == 0 && self.loops_at(i) == 0 && self.nonloop_degree(i) == 2
    }

    pub fn subcurve(&self, members: impl IntoIterator<Item = usize>) -> Result<Subcurve<'_>, GraphError> {
        Subcurve::new(self, members)
    }

    pub fn full_subcurve(&self) -> Subcurve<'_> {
        Subcurve::new(self, 0..self.vertex_count()).unwrap()
    }

    /// The induced graph on a vertex subset, possibly disconnected, with
    /// a map from old vertex indices to new ones.
    pub fn induced(&self, members: &BTreeSet<usize>) -> (DualGraph, Vec<Option<usize>>) {
        let mut map = vec![None; self.vertex_count()];
        let mut weights = Vec::new();
        let mut names = Vec::new();
        for &m in members {
            map[m] = Some(weights.len());
            weights.push(self.weights[m]);
            names.push(self.names[m].clone());
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|e| {
                Some(Edge {
                    u: map[e.u]?,
                    v: map[e.v]?,
                    label: e.label.clone(),
                })
            })
            .collect();
        (
            DualGraph::unchecked(weights, names, edges).expect("induced subgraph is well formed"),
            map,
        )
    }

    /// All nonempty connected subcurves, as sorted member lists in
    /// lexicographic order. Refuses graphs above the cap: the enumeration
    /// is exponential in the component count.
    pub fn connected_subcurves(&self, cap: usize) -> Result<Vec<Subcurve<'_>>, GraphError> {
        let n = self.vertex_count();
        if n > cap {
            return Err(GraphError::TooManyComponents { count: n, cap });
        }
        let mut out: Vec<Vec<usize>> = Vec::new();
        for mask in 1u64..(1u64 << n) {
            let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if self.subset_connected(&members) {
                out.push(members);
            }
        }
        out.sort();
        Ok(out
            .into_iter()
            .map(|m| Subcurve::new(self, m).unwrap())
            .collect())
    }

    fn subset_connected(&self, members: &[usize]) -> bool {
        let inset: BTreeSet<usize> = members.iter().copied().collect();
        let mut seen = BTreeSet::new();
        let mut stack = vec![members[0]];
        seen.insert(members[0]);
        while let Some(i) = stack.pop() {
            for e in &self.edges {
                for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                    if a == i && inset.contains(&b) && seen.insert(b) {
                        stack.push(b);
                    }
                }
            }
        }
        seen.len() == members.len()
    }

    /// Stability of the curve, determined by the canonical weights
    /// `w_Z = 2 g_Z - 2 + delta_Z` of proper connected subcurves:
    /// stable iff `0 < w_Z < w` always, semistable iff `0 <= w_Z <= w`
    /// with `w_Z = 0` only on exceptional components.
    ///
    /// Only defined for arithmetic genus at least 2. The subcurve sweep is
    /// cross-checked against the local criterion on weight-0 loop-free
    /// vertices (stable iff every such vertex meets at least 3 nodes,
    /// semistable iff at least 2).
    pub fn classify_stability(&self, cap: usize) -> Result<Stability, GraphError> {
        let g = self.arithmetic_genus();
        if g < 2 {
            return Err(GraphError::GenusTooSmall(g));
        }
        let w = self.total_canonical_degree();
        let mut verdict = Stability::Stable;
        for z in self.connected_subcurves(cap)? {
            if z.members().len() == self.vertex_count() {
                continue;
            }
            let inv = z.invariants();
            if inv.canonical_weight < 0 || inv.canonical_weight > w {
                verdict = Stability::Unstable {
                    witness: z.members().to_vec(),
                };
                break;
            }
            if inv.canonical_weight == 0 {
                // `w_Z = 0` forces Z to be a chain of weight-0 loop-free
                // components with delta_Z = 2; semistable only when they
                // are all exceptional single components, i.e. the chain
                // has length 1. Longer chains mean a non-exceptional
                // destabilizing configuration only at the level of
                // exceptional unions, which remains semistable.
                let all_rational = z
                    .members()
                    .iter()
                    .all(|&i| self.weight(i) == 0 && self.loops_at(i) == 0);
                if !all_rational {
                    verdict = Stability::Unstable {
                        witness: z.members().to_vec(),
                    };
                    break;
                }
                if matches!(verdict, Stability::Stable) {
                    verdict = Stability::StrictlySemistable {
                        witness: z.members().to_vec(),
                    };
                }
            }
        }
        // Local cross-check: a weight-0 loop-free vertex destabilizes iff
        // it meets fewer than 2 nodes, and precludes stability iff fewer
        // than 3. Vertices with weight or loops never destabilize on
        // their own.
        let local = self.local_stability();
        debug_assert_eq!(
            std::mem::discriminant(&verdict),
            std::mem::discriminant(&local),
            "subcurve sweep and local criterion disagree: {verdict:?} vs {local:?}"
        );
        Ok(verdict)
    }

    fn local_stability(&self) -> Stability {
        let mut verdict = Stability::Stable;
        for i in 0..self.vertex_count() {
            if self.weight(i) == 0 && self.loops_at(i) == 0 {
                let deg = self.nonloop_degree(i);
                if deg < 2 {
                    return Stability::Unstable { witness: vec![i] };
                }
                if deg == 2 && matches!(verdict, Stability::Stable) {
                    verdict = Stability::StrictlySemistable { witness: vec![i] };
                }
            }
        }
        verdict
    }

    /// Indices of separating nodes: non-loop edges whose removal
    /// disconnects the graph (bridges).
    pub fn separating_nodes(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&k| {
                !self.edges[k].is_loop() && {
                    let mut g = self.clone();
                    g.edges.remove(k);
                    g.connected_components().len() > self.connected_components().len()
                }
            })
            .collect()
    }

    /// Tails: for each separating node, the two connected subcurves it
    /// cuts the curve into. Each tail meets its complement in exactly
    /// one node.
    pub fn tails(&self) -> Vec<Tail> {
        let mut out = Vec::new();
        for k in self.separating_nodes() {
            let mut g = self.clone();
            let edge = g.edges.remove(k);
            let comps = g.connected_components();
            for side in [edge.u, edge.v] {
                let members = comps
                    .iter()
                    .find(|c| c.contains(&side))
                    .expect("bridge endpoint lies in some component")
                    .clone();
                out.push(Tail { node: k, members });
            }
        }
        out
    }

    /// Separating lines: weight-0, loop-free components every node of
    /// which is separating. On a disconnected graph the condition is
    /// checked inside the component containing the vertex; an isolated
    /// weight-0 vertex (a smooth line) counts.
    pub fn separating_lines(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&i| self.is_separating_line(i))
            .collect()
    }

    pub fn is_separating_line(&self, i: usize) -> bool {
        if self.weight(i) != 0 || self.loops_at(i) > 0 {
            return false;
        }
        // Removing the vertex must split its connected component into
        // deg(i) pieces, i.e. every incident edge is a bridge and no two
        // incident edges are parallel.
        let home: BTreeSet<usize> = self
            .connected_components()
            .into_iter()
            .find(|c| c.contains(&i))
            .unwrap()
            .into_iter()
            .collect();
        let deg = self.nonloop_degree(i);
        if deg == 0 {
            return true;
        }
        let rest: BTreeSet<usize> = home.iter().copied().filter(|&j| j != i).collect();
        if rest.is_empty() {
            return false; // deg > 0 but no neighbors is impossible anyway
        }
        let (induced, _) = self.induced(&rest);
        induced.connected_components().len() == deg
    }

    /// An ordering of the components such that every component except the
    /// last meets some later one, together with a non-disconnecting
    /// component (one whose complement is connected). Built greedily: at
    /// each step remove a vertex whose removal keeps the remaining
    /// induced graph connected — such a vertex always meets the
    /// connected remainder, so the order has the required property, and
    /// the first vertex removed is non-disconnecting. Tie-break: prefer
    /// vertices that are non-disconnecting in the original graph, then
    /// smallest index, so disconnecting components sink to the end of
    /// the order. Errors on a single vertex.
    pub fn non_disconnecting_order(&self) -> Result<(Vec<usize>, usize), GraphError> {
        if self.vertex_count() == 1 {
            return Err(GraphError::TrivialOrder);
        }
        let all: BTreeSet<usize> = (0..self.vertex_count()).collect();
        let globally_removable: Vec<bool> = (0..self.vertex_count())
            .map(|i| {
                let rest: BTreeSet<usize> = all.iter().copied().filter(|&j| j != i).collect();
                self.induced(&rest).0.connected_components().len() == 1
            })
            .collect();
        let mut remaining = all;
        let mut order = Vec::new();
        while remaining.len() > 1 {
            let pick = remaining
                .iter()
                .copied()
                .filter(|&i| {
                    let rest: BTreeSet<usize> =
                        remaining.iter().copied().filter(|&j| j != i).collect();
                    let (g, _) = self.induced(&rest);
                    g.connected_components().len() == 1
                })
                .min_by_key(|&i| (!globally_removable[i], i))
                .expect("a connected graph always has a removable vertex");
            remaining.remove(&pick);
            order.push(pick);
        }
        order.extend(remaining);
        let non_disconnecting = order[0];
        Ok((order, non_disconnecting))
    }

    /// Pairs of components (C, D) such that C is a separating line of the
    /// complement of D and vice versa. Only defined on curves without
    /// separating nodes. On stable curves each component belongs to at
    /// most one pair; this is asserted (the uniqueness can fail on merely
    /// semistable curves, e.g. a triangle of weight-0 components).
    pub fn b_pairs(&self) -> Result<Vec<(usize, usize)>, GraphError> {
        if !self.separating_nodes().is_empty() {
            return Err(GraphError::SeparatingNodesPresent);
        }
        let n = self.vertex_count();
        let mut pairs = Vec::new();
        for c in 0..n {
            for d in c + 1..n {
                if self.is_sepline_of_complement(c, d) && self.is_sepline_of_complement(d, c) {
                    pairs.push((c, d));
                }
            }
        }
        let mut seen = BTreeSet::new();
        let duplicated = pairs
            .iter()
            .any(|&(c, d)| !seen.insert(c) || !seen.insert(d));
        if duplicated {
            let stable = self
                .classify_stability(self.vertex_count())
                .map(|s| s.is_stable())
                .unwrap_or(false);
            assert!(!stable, "component in two pairs on a stable curve");
        }
        Ok(pairs)
    }

    /// Whether component `line` is a separating line of the complement of
    /// component `removed`.
    fn is_sepline_of_complement(&self, line: usize, removed: usize) -> bool {
        let rest: BTreeSet<usize> = (0..self.vertex_count()).filter(|&i| i != removed).collect();
        let (g, map) = self.induced(&rest);
        g.is_separating_line(map[line].unwrap())
    }

    /// Decomposition induced by the pairs: each pair `(C, D)` contributes
    /// the block `{C, D}`, and every unpaired component is its own block.
    /// Unique as a set of blocks. Requires a stable curve without
    /// separating nodes.
    pub fn b_decomposition(&self, cap: usize) -> Result<Vec<Vec<usize>>, GraphError> {
        if !self.classify_stability(cap)?.is_stable() {
            return Err(GraphError::NotStable);
        }
        let pairs = self.b_pairs()?;
        let paired: BTreeSet<usize> = pairs.iter().flat_map(|&(c, d)| [c, d]).collect();
        let mut blocks: Vec<Vec<usize>> = pairs.iter().map(|&(c, d)| vec![c, d]).collect();
        blocks.extend((0..self.vertex_count()).filter(|i| !paired.contains(i)).map(|i| vec![i]));
        blocks.sort();
        Ok(blocks)
    }
}

/// Invariants of a subcurve: its arithmetic genus, the number of nodes
/// joining it to the complement, and its canonical weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubcurveInvariants {
    pub genus: i64,
    pub boundary_nodes: i64,
    pub canonical_weight: i64,
}

/// A sub(multi)curve: a set of components of a fixed dual graph, together
/// with all nodes internal to the set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subcurve<'a> {
    graph: &'a DualGraph,
    members: Vec<usize>,
}

impl<'a> Subcurve<'a> {
    pub fn new(
        graph: &'a DualGraph,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Self, GraphError> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        if set.is_empty() {
            return Err(GraphError::EmptySubcurve);
        }
        for &m in &set {
            if m >= graph.vertex_count() {
                return Err(GraphError::BadMember(m));
            }
        }
        Ok(Subcurve {
            graph,
            members: set.into_iter().collect(),
        })
    }

    pub fn graph(&self) -> &'a DualGraph {
        self.graph
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn is_proper(&self) -> bool {
        self.members.len() < self.graph.vertex_count()
    }

    /// The complement subcurve, if nonempty.
    pub fn complement(&self) -> Option<Subcurve<'a>> {
        let rest: Vec<usize> = (0..self.graph.vertex_count())
            .filter(|i| !self.contains(*i))
            .collect();
        if rest.is_empty() {
            None
        } else {
            Some(Subcurve::new(self.graph, rest).unwrap())
        }
    }

    /// Number of nodes joining this subcurve to its complement: non-loop
    /// edges with exactly one endpoint inside.
    pub fn boundary_nodes(&self) -> i64 {
        self.graph
            .edges()
            .iter()
            .filter(|e| self.contains(e.u) != self.contains(e.v))
            .count() as i64
    }

    pub fn induced(&self) -> (DualGraph, Vec<Option<usize>>) {
        let set: BTreeSet<usize> = self.members.iter().copied().collect();
        self.graph.induced(&set)
    }

    pub fn genus(&self) -> i64 {
        self.induced().0.arithmetic_genus()
    }

    pub fn invariants(&self) -> SubcurveInvariants {
        let genus = self.genus();
        let boundary_nodes = self.boundary_nodes();
        SubcurveInvariants {
            genus,
            boundary_nodes,
            canonical_weight: 2 * genus - 2 + boundary_nodes,
        }
    }

    /// Whether every member is an exceptional component of the ambient
    /// curve.
    pub fn all_exceptional(&self) -> bool {
        self.members.iter().all(|&i| self.graph.is_exceptional(i))
    }

    pub fn is_connected(&self) -> bool {
        self.induced().0.connected_components().len() == 1
    }
}

impl fmt::Display for Subcurve<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, &m) in self.members.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.graph.name(m))?;
        }
        write!(f, "}}")
    }
}

/// Stability classification with a destabilizing / strictly semistable
/// witness subcurve where applicable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stability {
    Stable,
    StrictlySemistable { witness: Vec<usize> },
    Unstable { witness: Vec<usize> },
}

impl Stability {
    pub fn is_semistable(&self) -> bool {
        !matches!(self, Stability::Unstable { .. })
    }

    pub fn is_stable(&self) -> bool {
        matches!(self, Stability::Stable)
    }
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stability::Stable => write!(f, "stable"),
            Stability::StrictlySemistable { witness } => {
                write!(f, "strictly semistable (witness {witness:?})")
            }
            Stability::Unstable { witness } => write!(f, "unstable (witness {witness:?})"),
        }
    }
}

/// One side of a separating node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tail {
    /// Index of the separating node in the edge list.
    pub node: usize,
    /// Sorted component indices of the tail.
    pub members: Vec<usize>,
}

/// Aggregate structural summary of a dual graph, for reporting.
#[derive(Debug, Clone)]
pub struct StructureReport {
    pub genus: i64,
    pub stability: Option<Stability>,
    pub separating_nodes: Vec<usize>,
    pub tails: Vec<Tail>,
    pub separating_lines: Vec<usize>,
    pub exceptional_components: Vec<usize>,
    pub non_disconnecting_order: Option<(Vec<usize>, usize)>,
    pub pairs: Option<Vec<(usize, usize)>>,
    pub decomposition: Option<Vec<Vec<usize>>>,
}

impl DualGraph {
    pub fn structure_report(&self, cap: usize) -> Result<StructureReport, GraphError> {
        let separating_nodes = self.separating_nodes();
        let stability = self.classify_stability(cap).ok();
        let pairs = if separating_nodes.is_empty() {
            Some(self.b_pairs()?)
        } else {
            None
        };
        let decomposition = if separating_nodes.is_empty()
            && matches!(stability, Some(Stability::Stable))
        {
            Some(self.b_decomposition(cap)?)
        } else {
            None
        };
        Ok(StructureReport {
            genus: self.arithmetic_genus(),
            stability,
            tails: self.tails(),
            separating_lines: self.separating_lines(),
            exceptional_components: (0..self.vertex_count())
                .filter(|&i| self.is_exceptional(i))
                .collect(),
            non_disconnecting_order: self.non_disconnecting_order().ok(),
            pairs,
            decomposition,
            separating_nodes,
        })
    }
}
