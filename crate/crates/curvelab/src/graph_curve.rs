//! Graph curves and the exact global-sections oracle.
//!
//! A graph curve realizes a weight-0 dual graph concretely: every
//! component is a projective line, every edge end carries a finite
//! rational branch coordinate on its component, and all branch
//! coordinates on one component are pairwise distinct. A line bundle is
//! a multidegree plus one nonzero gluing constant per node, in the
//! polynomial trivialization: a global section is a polynomial
//! `f_i` of degree at most `d_i` on each component (the zero function
//! when `d_i < 0`), subject to one linear matching condition per node,
//!
//! ```text
//!     f_u(a) = lambda_e * f_v(b)
//! ```
//!
//! where `a`, `b` are the branch coordinates of edge `e` on components
//! `u`, `v`. So `h0` is the kernel dimension of an exact rational
//! linear system, and everything downstream (base points, twists,
//! neutral pairs, triviality, the dualizing sheaf) reduces to kernel
//! computations and polynomial gcds.

use std::sync::Arc;

use num::{BigInt, One, Zero};
use thiserror::Error;

use crate::dual_graph::{DualGraph, Edge, GraphError};
use crate::linalg::Matrix;
use crate::poly::{Poly, Q};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CurveError {
    #[error("component {0} has positive weight; graph curves carry genus in loops and cycles only")]
    PositiveWeight(usize),
    #[error("edge {edge} end {end} is missing a branch coordinate")]
    MissingBranch { edge: usize, end: usize },
    #[error("branch coordinates collide on component {component} at {coord}")]
    BranchCollision { component: usize, coord: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("gluing constant on edge {0} is zero")]
    ZeroGlue(usize),
    #[error("bundle does not live on this curve")]
    CurveMismatch,
    #[error("divisor hits node")]
    DivisorHitsNode,
    #[error("divisor is not effective")]
    NotEffective,
    #[error("divisor component {0} out of range")]
    BadComponent(usize),
    #[error("no sections")]
    NoSections,
    #[error("multidegree is nonzero")]
    NonzeroMultidegree,
    #[error("curve is not connected")]
    NotConnected,
    #[error("unknown edge {0}")]
    UnknownEdge(usize),
}

/// One end of an edge: 0 = the `u` endpoint, 1 = the `v` endpoint.
pub type BranchPair = [Q; 2];

/// A dual graph realized with rational branch coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphCurve {
    graph: DualGraph,
    /// Per edge, the branch coordinates at its two ends.
    branches: Vec<BranchPair>,
}

impl GraphCurve {
    pub fn new(graph: DualGraph, branches: Vec<BranchPair>) -> Result<Arc<Self>, CurveError> {
        assert_eq!(graph.edges().len(), branches.len());
        for i in 0..graph.vertex_count() {
            if graph.weight(i) != 0 {
                return Err(CurveError::PositiveWeight(i));
            }
        }
        let curve = GraphCurve { graph, branches };
        for i in 0..curve.graph.vertex_count() {
            let coords = curve.branch_coords(i);
            for a in 0..coords.len() {
                for b in a + 1..coords.len() {
                    if coords[a] == coords[b] {
                        return Err(CurveError::BranchCollision {
                            component: i,
                            coord: coords[a].to_string(),
                        });
                    }
                }
            }
        }
        Ok(Arc::new(curve))
    }

    pub fn graph(&self) -> &DualGraph {
        &self.graph
    }

    pub fn branches(&self) -> &[BranchPair] {
        &self.branches
    }

    pub fn genus(&self) -> i64 {
        self.graph.arithmetic_genus()
    }

    pub fn component_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// All branch coordinates lying on component `i` (loops contribute
    /// both ends).
    pub fn branch_coords(&self, i: usize) -> Vec<&Q> {
        let mut out = Vec::new();
        for (e, pair) in self.graph.edges().iter().zip(&self.branches) {
            if e.u == i {
                out.push(&pair[0]);
            }
            if e.v == i {
                out.push(&pair[1]);
            }
        }
        out
    }

    pub fn is_branch_coord(&self, component: usize, x: &Q) -> bool {
        self.branch_coords(component).into_iter().any(|c| c == x)
    }

    /// The trivial bundle: multidegree zero, all gluing constants 1.
    pub fn trivial_bundle(self: &Arc<Self>) -> LineBundle {
        LineBundle::new(
            self.clone(),
            vec![0; self.component_count()],
            vec![Q::one(); self.branches.len()],
        )
        .unwrap()
    }
}

/// A line bundle in the polynomial trivialization.
#[derive(Debug, Clone, PartialEq)]
pub struct LineBundle {
    curve: Arc<GraphCurve>,
    multidegree: Vec<i64>,
    glue: Vec<Q>,
}

impl LineBundle {
    pub fn new(
        curve: Arc<GraphCurve>,
        multidegree: Vec<i64>,
        glue: Vec<Q>,
    ) -> Result<Self, CurveError> {
        if multidegree.len() != curve.component_count() || glue.len() != curve.branches.len() {
            return Err(CurveError::CurveMismatch);
        }
        if let Some(e) = glue.iter().position(Zero::is_zero) {
            return Err(CurveError::ZeroGlue(e));
        }
        Ok(LineBundle {
            curve,
            multidegree,
            glue,
        })
    }

    pub fn curve(&self) -> &Arc<GraphCurve> {
        &self.curve
    }

    pub fn multidegree(&self) -> &[i64] {
        &self.multidegree
    }

    pub fn glue(&self) -> &[Q] {
        &self.glue
    }

    pub fn degree(&self) -> i64 {
        self.multidegree.iter().sum()
    }

    fn same_curve(&self, other: &LineBundle) -> Result<(), CurveError> {
        if Arc::ptr_eq(&self.curve, &other.curve) || self.curve == other.curve {
            Ok(())
        } else {
            Err(CurveError::CurveMismatch)
        }
    }

    /// Tensor product: multidegrees add, gluing constants multiply.
    pub fn tensor(&self, other: &LineBundle) -> Result<LineBundle, CurveError> {
        self.same_curve(other)?;
        LineBundle::new(
            self.curve.clone(),
            self.multidegree
                .iter()
                .zip(&other.multidegree)
                .map(|(a, b)| a + b)
                .collect(),
            self.glue
                .iter()
                .zip(&other.glue)
                .map(|(a, b)| a * b)
                .collect(),
        )
    }

    pub fn inverse(&self) -> LineBundle {
        LineBundle {
            curve: self.curve.clone(),
            multidegree: self.multidegree.iter().map(|d| -d).collect(),
            glue: self.glue.iter().map(|l| l.recip()).collect(),
        }
    }
}

/// A divisor supported at nonsingular points: (component, coordinate,
/// multiplicity) triples. Signed multiplicities are allowed except where
/// an operation requires effectivity.
#[derive(Debug, Clone, PartialEq)]
pub struct PointDivisor {
    pub points: Vec<(usize, Q, i64)>,
}

impl PointDivisor {
    pub fn empty() -> Self {
        PointDivisor { points: vec![] }
    }

    pub fn single(component: usize, coord: Q) -> Self {
        PointDivisor {
            points: vec![(component, coord, 1)],
        }
    }

    pub fn plus(mut self, component: usize, coord: Q, mult: i64) -> Self {
        self.points.push((component, coord, mult));
        self
    }

    pub fn is_effective(&self) -> bool {
        self.points.iter().all(|&(_, _, m)| m > 0)
    }

    fn validate(&self, curve: &GraphCurve) -> Result<(), CurveError> {
        for (c, x, _) in &self.points {
            if *c >= curve.component_count() {
                return Err(CurveError::BadComponent(*c));
            }
            if curve.is_branch_coord(*c, x) {
                return Err(CurveError::DivisorHitsNode);
            }
        }
        Ok(())
    }

    /// Degree on each component.
    fn multidegree(&self, n: usize) -> Vec<i64> {
        let mut out = vec![0; n];
        for &(c, _, m) in &self.points {
            out[c] += m;
        }
        out
    }

    /// Value at `x` of the pole-collecting rational function
    /// `prod (x - x_m)^{m_m}` over the points on `component`.
    fn pole_value(&self, component: usize, x: &Q) -> Q {
        let mut acc = Q::one();
        for (c, coord, m) in &self.points {
            if *c != component {
                continue;
            }
            let base = x - coord;
            let p = if *m >= 0 {
                num::pow::pow(base, *m as usize)
            } else {
                num::pow::pow(base.recip(), (-m) as usize)
            };
            acc *= p;
        }
        acc
    }
}

/// Coefficient layout of the section system: one block of `d_i + 1`
/// unknowns per component with `d_i >= 0`.
struct Layout {
    offsets: Vec<usize>,
    widths: Vec<usize>,
    total: usize,
}

impl Layout {
    fn new(multidegree: &[i64]) -> Self {
        let mut offsets = Vec::with_capacity(multidegree.len());
        let mut widths = Vec::with_capacity(multidegree.len());
        let mut total = 0;
        for &d in multidegree {
            offsets.push(total);
            let w = if d >= 0 { d as usize + 1 } else { 0 };
            widths.push(w);
            total += w;
        }
        Layout {
            offsets,
            widths,
            total,
        }
    }
}

/// Builds the homogeneous section system for `bundle` with the extra
/// vanishing conditions of `constraints` (effective part): rows are node
/// matchings plus prescribed derivative vanishings.
fn section_matrix(bundle: &LineBundle, constraints: &PointDivisor) -> (Matrix, Layout) {
    let curve = &bundle.curve;
    let layout = Layout::new(&bundle.multidegree);
    let n_rows = curve.branches.len()
        + constraints
            .points
            .iter()
            .map(|&(_, _, m)| m.max(0) as usize)
            .sum::<usize>();
    let mut m = Matrix::zero(n_rows, layout.total);
    let mut row = 0;
    for (k, (e, pair)) in curve.graph.edges().iter().zip(&curve.branches).enumerate() {
        // f_u(a) - lambda * f_v(b) = 0
        add_eval_row(&mut m, row, &layout, e.u, &pair[0], &Q::one(), 0);
        let neg = -bundle.glue[k].clone();
        add_eval_row(&mut m, row, &layout, e.v, &pair[1], &neg, 0);
        row += 1;
    }
    for (c, x, mult) in &constraints.points {
        for k in 0..mult.max(&0).to_owned() as usize {
            add_eval_row(&mut m, row, &layout, *c, x, &Q::one(), k);
            row += 1;
        }
    }
    (m, layout)
}

/// Adds `factor * (k-th derivative of f_c at x)` to row `row`: the
/// coefficient of the monomial x^j is `factor * j!/(j-k)! * x^(j-k)`.
fn add_eval_row(
    m: &mut Matrix,
    row: usize,
    layout: &Layout,
    component: usize,
    x: &Q,
    factor: &Q,
    k: usize,
) {
    let off = layout.offsets[component];
    let width = layout.widths[component];
    for j in k..width {
        let mut fall = BigInt::one();
        for t in 0..k {
            fall *= BigInt::from(j - t);
        }
        let coeff = factor
            * Q::from_integer(fall)
            * num::pow::pow(x.clone(), j - k);
        let prev = m.at(row, off + j).clone();
        m.set(row, off + j, prev + coeff);
    }
}

/// A basis of global sections, one polynomial per component per basis
/// vector.
pub fn sections_basis(bundle: &LineBundle) -> Vec<Vec<Poly>> {
    sections_basis_vanishing(bundle, &PointDivisor::empty()).unwrap()
}

pub fn sections_basis_vanishing(
    bundle: &LineBundle,
    constraints: &PointDivisor,
) -> Result<Vec<Vec<Poly>>, CurveError> {
    if !constraints.is_effective() {
        return Err(CurveError::NotEffective);
    }
    constraints.validate(&bundle.curve)?;
    let (m, layout) = section_matrix(bundle, constraints);
    let kernel = m.kernel_basis();
    Ok(kernel
        .into_iter()
        .map(|vec| {
            (0..bundle.curve.component_count())
                .map(|i| {
                    Poly::from_coeffs(
                        vec[layout.offsets[i]..layout.offsets[i] + layout.widths[i]].to_vec(),
                    )
                })
                .collect()
        })
        .collect())
}

/// Dimension of the space of global sections.
pub fn h0(bundle: &LineBundle) -> usize {
    let (m, layout) = section_matrix(bundle, &PointDivisor::empty());
    layout.total - m.rank()
}

/// Dimension of sections vanishing on the effective divisor `d` to the
/// prescribed multiplicities; equals `h0` of the twist down by `d`.
pub fn h0_vanishing(bundle: &LineBundle, d: &PointDivisor) -> Result<usize, CurveError> {
    if !d.is_effective() {
        return Err(CurveError::NotEffective);
    }
    d.validate(&bundle.curve)?;
    let (m, layout) = section_matrix(bundle, d);
    Ok(layout.total - m.rank())
}

/// Whether `p` and `q` impose the same single condition jointly as each
/// does alone: `h0(M-p) = h0(M-q) = h0(M-p-q)`.
pub fn neutral_pair(
    bundle: &LineBundle,
    p: &PointDivisor,
    q: &PointDivisor,
) -> Result<bool, CurveError> {
    let hp = h0_vanishing(bundle, p)?;
    let hq = h0_vanishing(bundle, q)?;
    let mut both = p.clone();
    both.points.extend(q.points.iter().cloned());
    let hpq = h0_vanishing(bundle, &both)?;
    Ok(hp == hq && hq == hpq)
}

/// The bundle of a signed divisor supported away from the nodes:
/// multidegree is the per-component degree of the divisor, and the
/// gluing constant of edge `e` is `P_u(a) / P_v(b)` where `P_k` collects
/// the divisor's factors on component `k` — so that the polynomial
/// sections `f` correspond to rational functions `f / P` with matching
/// values at the nodes.
pub fn bundle_from_divisor(
    curve: &Arc<GraphCurve>,
    d: &PointDivisor,
) -> Result<LineBundle, CurveError> {
    d.validate(curve)?;
    let multidegree = d.multidegree(curve.component_count());
    let glue = curve
        .graph
        .edges()
        .iter()
        .zip(&curve.branches)
        .map(|(e, pair)| d.pole_value(e.u, &pair[0]) / d.pole_value(e.v, &pair[1]))
        .collect();
    LineBundle::new(curve.clone(), multidegree, glue)
}

/// The dualizing sheaf. Sections over component `i` are differentials
/// `f dz / prod(z - a_k)` with simple poles at the branch coordinates;
/// the residue matching condition at each node turns, after clearing the
/// product, into the standard node matching with gluing constant
/// `-prod_{l != a}(a - a_l) / prod_{l != b}(b - b_l)`, products over the
/// other branch coordinates of the respective components. Multidegree:
/// `(#branch coordinates on i) - 2`. Satisfies `h0 = g`.
pub fn canonical_bundle(curve: &Arc<GraphCurve>) -> LineBundle {
    let multidegree = (0..curve.component_count())
        .map(|i| curve.branch_coords(i).len() as i64 - 2)
        .collect();
    let glue = curve
        .graph
        .edges()
        .iter()
        .zip(&curve.branches)
        .map(|(e, pair)| {
            let num = prod_other(curve, e.u, &pair[0]);
            let den = prod_other(curve, e.v, &pair[1]);
            -num / den
        })
        .collect();
    LineBundle::new(curve.clone(), multidegree, glue).expect("canonical glue is nonzero")
}

/// prod over branch coordinates c != x on `component` of (x - c).
fn prod_other(curve: &GraphCurve, component: usize, x: &Q) -> Q {
    let mut acc = Q::one();
    let mut skipped = false;
    for c in curve.branch_coords(component) {
        if !skipped && c == x {
            skipped = true;
            continue;
        }
        acc *= x - c;
    }
    acc
}

/// `h1` via Riemann-Roch: `h1 = h0 - deg + g - 1`. (Serre duality,
/// `h1(L) = h0(omega tensor L^{-1})`, is enforced as a test property.)
pub fn h1(bundle: &LineBundle) -> i64 {
    h0(bundle) as i64 - bundle.degree() + bundle.curve.genus() - 1
}

/// `h1` computed the dual way, for cross-checks.
pub fn h1_serre(bundle: &LineBundle) -> i64 {
    let omega = canonical_bundle(&bundle.curve);
    h0(&omega.tensor(&bundle.inverse()).expect("same curve")) as i64
}

/// Partial normalization at a set of edges: the edges disappear, their
/// branch coordinates become marked points, and bundles pull back by
/// dropping the corresponding gluing constants.
pub struct Normalization {
    pub curve: Arc<GraphCurve>,
    /// For each removed edge (in input order), its two freed points.
    pub freed: Vec<[(usize, Q); 2]>,
    /// Old indices of the surviving edges, in order.
    pub kept: Vec<usize>,
}

impl Normalization {
    pub fn pullback(&self, bundle: &LineBundle) -> LineBundle {
        LineBundle::new(
            self.curve.clone(),
            bundle.multidegree.to_vec(),
            self.kept.iter().map(|&k| bundle.glue[k].clone()).collect(),
        )
        .expect("pullback glue stays nonzero")
    }
}

pub fn normalize_at(curve: &Arc<GraphCurve>, edges: &[usize]) -> Result<Normalization, CurveError> {
    for &e in edges {
        if e >= curve.graph.edges().len() {
            return Err(CurveError::UnknownEdge(e));
        }
    }
    let mut freed = Vec::new();
    let mut kept = Vec::new();
    let mut new_edges: Vec<Edge> = Vec::new();
    let mut new_branches = Vec::new();
    for (k, (e, pair)) in curve.graph.edges().iter().zip(&curve.branches).enumerate() {
        if edges.contains(&k) {
            freed.push([(e.u, pair[0].clone()), (e.v, pair[1].clone())]);
        } else {
            kept.push(k);
            new_edges.push(e.clone());
            new_branches.push(pair.clone());
        }
    }
    let graph = DualGraph::new_possibly_disconnected(
        curve.graph.weights().to_vec(),
        curve.graph.names().to_vec(),
        new_edges,
    )?;
    Ok(Normalization {
        curve: GraphCurve::new(graph, new_branches)?,
        freed,
        kept,
    })
}

/// The realized subcurve on a set of components: loops and internal
/// edges survive with their branch coordinates, edges to the complement
/// are cut. The result may be disconnected.
pub struct Restriction {
    pub curve: Arc<GraphCurve>,
    /// Old indices of the surviving edges, in order.
    pub kept: Vec<usize>,
    /// Old component index -> new component index.
    pub component_map: Vec<Option<usize>>,
}

impl Restriction {
    /// Restricts a bundle on the ambient curve by keeping the surviving
    /// multidegree entries and gluing constants.
    pub fn restrict(&self, bundle: &LineBundle) -> LineBundle {
        let multidegree = self
            .component_map
            .iter()
            .enumerate()
            .filter_map(|(old, new)| new.map(|_| bundle.multidegree[old]))
            .collect();
        let glue = self.kept.iter().map(|&k| bundle.glue[k].clone()).collect();
        LineBundle::new(self.curve.clone(), multidegree, glue)
            .expect("restricted glue stays nonzero")
    }
}

pub fn restrict_to(
    curve: &Arc<GraphCurve>,
    members: &std::collections::BTreeSet<usize>,
) -> Result<Restriction, CurveError> {
    let (graph, component_map) = curve.graph().induced(members);
    let mut kept = Vec::new();
    let mut branches = Vec::new();
    for (k, (e, pair)) in curve.graph.edges().iter().zip(&curve.branches).enumerate() {
        if component_map[e.u].is_some() && component_map[e.v].is_some() {
            kept.push(k);
            branches.push(pair.clone());
        }
    }
    Ok(Restriction {
        curve: GraphCurve::new(graph, branches)?,
        kept,
        component_map,
    })
}

/// Triviality test for a multidegree-0 bundle on a connected curve.
/// Two independent routes, asserted to agree: `h0 = 1`, and consistency
/// of the gluing constants around every cycle (a vertex potential
/// `c_i` with `c_u = lambda_e * c_v` exists).
pub fn is_trivial(bundle: &LineBundle) -> Result<bool, CurveError> {
    if bundle.multidegree.iter().any(|&d| d != 0) {
        return Err(CurveError::NonzeroMultidegree);
    }
    let graph = bundle.curve.graph();
    if !graph.is_connected() {
        return Err(CurveError::NotConnected);
    }
    let by_sections = h0(bundle) == 1;

    // Potential route: propagate c over a spanning tree, then check the
    // remaining edges (including loops).
    let n = graph.vertex_count();
    let mut potential: Vec<Option<Q>> = vec![None; n];
    potential[0] = Some(Q::one());
    let mut used = vec![false; graph.edges().len()];
    let mut progress = true;
    while progress {
        progress = false;
        for (k, e) in graph.edges().iter().enumerate() {
            if used[k] || e.is_loop() {
                continue;
            }
            match (potential[e.u].clone(), potential[e.v].clone()) {
                (Some(cu), None) => {
                    potential[e.v] = Some(cu / &bundle.glue[k]);
                    used[k] = true;
                    progress = true;
                }
                (None, Some(cv)) => {
                    potential[e.u] = Some(cv * &bundle.glue[k]);
                    used[k] = true;
                    progress = true;
                }
                _ => {}
            }
        }
    }
    let by_cycles = graph.edges().iter().enumerate().all(|(k, e)| {
        if used[k] {
            return true;
        }
        let cu = potential[e.u].as_ref().expect("connected: all reached");
        let cv = potential[e.v].as_ref().expect("connected: all reached");
        cu == &(&bundle.glue[k] * cv)
    });
    assert_eq!(
        by_sections, by_cycles,
        "section and cycle-product triviality tests disagree"
    );
    Ok(by_sections)
}

/// Where the base locus of a bundle sits. Finite nonsingular base points
/// with rational coordinates are listed exactly; a nonzero
/// `irrational_degree` certifies further base points with irrational
/// coordinates (the gcd of the section polynomials has a nontrivial
/// factor without rational roots).
#[derive(Debug, Clone, PartialEq)]
pub struct BasePoints {
    /// Components contained entirely in the base locus.
    pub whole_components: Vec<usize>,
    /// Edge indices of nodes where every section vanishes.
    pub nodes: Vec<usize>,
    /// (component, coordinate) of finite nonsingular base points.
    pub finite: Vec<(usize, Q)>,
    /// Components with a base point at infinity (all sections drop
    /// degree below the bundle degree).
    pub at_infinity: Vec<usize>,
    /// (component, degree) of the rational-root-free part of the section
    /// gcd; positive degree means irrational base points exist there.
    pub irrational_degree: Vec<(usize, usize)>,
}

impl BasePoints {
    pub fn is_empty(&self) -> bool {
        self.whole_components.is_empty()
            && self.nodes.is_empty()
            && self.finite.is_empty()
            && self.at_infinity.is_empty()
            && self.irrational_degree.is_empty()
    }
}

pub fn base_points(bundle: &LineBundle) -> Result<BasePoints, CurveError> {
    let basis = sections_basis(bundle);
    if basis.is_empty() {
        return Err(CurveError::NoSections);
    }
    let curve = &bundle.curve;
    let n = curve.component_count();
    let mut report = BasePoints {
        whole_components: vec![],
        nodes: vec![],
        finite: vec![],
        at_infinity: vec![],
        irrational_degree: vec![],
    };
    let mut whole = vec![false; n];
    for i in 0..n {
        if basis.iter().all(|sec| sec[i].is_zero()) {
            whole[i] = true;
            report.whole_components.push(i);
        }
    }
    // Nodes: every section vanishes at the node (one branch value
    // suffices, the gluing constant transports zero to zero).
    for (k, (e, pair)) in curve.graph.edges().iter().zip(&curve.branches).enumerate() {
        if whole[e.u] && whole[e.v] {
            continue; // subsumed by whole-component entries
        }
        if basis.iter().all(|sec| sec[e.u].eval(&pair[0]).is_zero()) {
            report.nodes.push(k);
        }
    }
    for i in 0..n {
        if whole[i] {
            continue;
        }
        let d = bundle.multidegree[i];
        debug_assert!(d >= 0, "negative degree forces a whole base component");
        // Finite points: common roots of the section polynomials, i.e.
        // roots of their gcd, excluding branch coordinates (those are
        // nodes and are reported above).
        let mut g = Poly::zero();
        for sec in &basis {
            g = if g.is_zero() {
                sec[i].clone()
            } else {
                g.gcd(&sec[i])
            };
            if g.degree() == Some(0) {
                break; // coprime already: no common finite root
            }
        }
        if g.degree().is_some_and(|deg| deg > 0) {
            let (roots, leftover) = g.rational_roots();
            for (root, _) in roots {
                if !curve.is_branch_coord(i, &root) {
                    report.finite.push((i, root));
                }
            }
            if leftover > 0 {
                report.irrational_degree.push((i, leftover));
            }
        }
        // Infinity: all sections have degree < d_i.
        if basis
            .iter()
            .all(|sec| sec[i].degree().map_or(true, |deg| (deg as i64) < d))
        {
            report.at_infinity.push(i);
        }
    }
    Ok(report)
}

/// Seeded random nonzero rational with numerator and denominator bounded
/// by `bound` in absolute value.
pub fn random_glue(rng: &mut impl rand::Rng, bound: i64) -> Q {
    loop {
        let num = rng.gen_range(-bound..=bound);
        if num == 0 {
            continue;
        }
        let den = rng.gen_range(1..=bound);
        return Q::new(BigInt::from(num), BigInt::from(den));
    }
}

/// A bundle with the given multidegree and seeded random gluing
/// constants (numerators/denominators up to 10^4).
pub fn random_bundle(
    curve: &Arc<GraphCurve>,
    multidegree: Vec<i64>,
    rng: &mut impl rand::Rng,
) -> LineBundle {
    let glue = (0..curve.branches().len())
        .map(|_| random_glue(rng, 50))
        .collect();
    LineBundle::new(curve.clone(), multidegree, glue).expect("nonzero glue by construction")
}

impl std::fmt::Display for BasePoints {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return write!(f, "none");
        }
        let mut parts: Vec<String> = Vec::new();
        for c in &self.whole_components {
            parts.push(format!("component {c}"));
        }
        for e in &self.nodes {
            parts.push(format!("node {e}"));
        }
        for (c, x) in &self.finite {
            parts.push(format!("point {x} on {c}"));
        }
        for c in &self.at_infinity {
            parts.push(format!("infinity on {c}"));
        }
        for (c, d) in &self.irrational_degree {
            parts.push(format!("irrational locus of degree {d} on {c}"));
        }
        write!(f, "{}", parts.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual_graph::{DualGraph, Edge};

    fn q(n: i64, d: i64) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }

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

    fn line() -> Arc<GraphCurve> {
        GraphCurve::new(graph(vec![0], vec![]), vec![]).unwrap()
    }

    /// One rational component glued to itself at 0 and 1 (arithmetic
    /// genus 1).
    fn nodal_cubic() -> Arc<GraphCurve> {
        GraphCurve::new(graph(vec![0], vec![(0, 0)]), vec![[q(0, 1), q(1, 1)]]).unwrap()
    }

    /// Two rational components meeting in `n` nodes.
    fn binary_curve(n: usize) -> Arc<GraphCurve> {
        let branches = (0..n).map(|k| [q(k as i64, 1), q(k as i64, 1)]).collect();
        GraphCurve::new(graph(vec![0, 0], vec![(0, 1); n]), branches).unwrap()
    }

    fn bundle(curve: &Arc<GraphCurve>, multidegree: Vec<i64>, glue: Vec<Q>) -> LineBundle {
        LineBundle::new(curve.clone(), multidegree, glue).unwrap()
    }

    #[test]
    fn sections_on_a_line() {
        let c = line();
        assert_eq!(h0(&bundle(&c, vec![3], vec![])), 4);
        assert_eq!(h0(&bundle(&c, vec![0], vec![])), 1);
        assert_eq!(h0(&bundle(&c, vec![-1], vec![])), 0);
    }

    #[test]
    fn triviality_on_the_nodal_cubic_depends_on_glue() {
        let c = nodal_cubic();
        assert_eq!(h0(&bundle(&c, vec![0], vec![q(1, 1)])), 1);
        assert_eq!(h0(&bundle(&c, vec![0], vec![q(2, 1)])), 0);
        assert!(is_trivial(&bundle(&c, vec![0], vec![q(1, 1)])).unwrap());
        assert!(!is_trivial(&bundle(&c, vec![0], vec![q(2, 1)])).unwrap());
    }

    #[test]
    fn triviality_needs_degree_zero() {
        let c = nodal_cubic();
        assert_eq!(
            is_trivial(&bundle(&c, vec![1], vec![q(1, 1)])),
            Err(CurveError::NonzeroMultidegree)
        );
    }

    #[test]
    fn trees_have_only_trivial_degree_zero_bundles() {
        let c = GraphCurve::new(
            graph(vec![0, 0], vec![(0, 1)]),
            vec![[q(0, 1), q(0, 1)]],
        )
        .unwrap();
        assert!(is_trivial(&bundle(&c, vec![0, 0], vec![q(7, 3)])).unwrap());
    }

    #[test]
    fn riemann_roch_on_the_nodal_cubic() {
        let c = nodal_cubic();
        let mut rng = crate::generator::seeded_rng(11);
        let l = random_bundle(&c, vec![3], &mut rng);
        assert_eq!(h0(&l), 3); // d - g + 1 with d = 3, g = 1
    }

    #[test]
    fn divisor_bundle_on_the_nodal_cubic() {
        let c = nodal_cubic();
        let d = PointDivisor::single(0, q(2, 1));
        let l = bundle_from_divisor(&c, &d).unwrap();
        // P(z) = z - 2; glue = P(0)/P(1) = 2.
        assert_eq!(l.glue(), &[q(2, 1)]);
        assert_eq!(h0(&l), 1);
        let base = base_points(&l).unwrap();
        assert_eq!(base.finite, vec![(0, q(2, 1))]);
    }

    #[test]
    fn divisor_bundles_multiply() {
        let c = nodal_cubic();
        let p = PointDivisor::single(0, q(2, 1));
        let pq = PointDivisor::single(0, q(2, 1)).plus(0, q(3, 1), 1);
        let lp = bundle_from_divisor(&c, &p).unwrap();
        let lq = bundle_from_divisor(&c, &PointDivisor::single(0, q(3, 1))).unwrap();
        let lpq = bundle_from_divisor(&c, &pq).unwrap();
        assert_eq!(lp.tensor(&lq).unwrap(), lpq);
    }

    #[test]
    fn divisors_keep_off_the_nodes() {
        let c = nodal_cubic();
        let d = PointDivisor::single(0, q(0, 1));
        assert_eq!(
            bundle_from_divisor(&c, &d),
            Err(CurveError::DivisorHitsNode)
        );
    }

    #[test]
    fn canonical_sections_count_the_genus() {
        let cubic = nodal_cubic();
        assert_eq!(h0(&canonical_bundle(&cubic)), 1);

        let two_cycle = binary_curve(2);
        let omega = canonical_bundle(&two_cycle);
        assert_eq!(omega.multidegree(), &[0, 0]);
        assert_eq!(h0(&omega), 1);

        let binary6 = binary_curve(7);
        let omega = canonical_bundle(&binary6);
        assert_eq!(omega.multidegree(), &[5, 5]);
        assert_eq!(h0(&omega), 6);
    }

    #[test]
    fn canonical_sections_count_the_genus_on_generated_curves() {
        for g in crate::generator::semistable_curves(3, 5) {
            let c = crate::generator::realize(&g);
            assert_eq!(
                h0(&canonical_bundle(&c)) as i64,
                c.genus(),
                "canonical h0 on {g:?}"
            );
        }
    }

    #[test]
    fn first_cohomology() {
        let c = nodal_cubic();
        assert_eq!(h1(&c.trivial_bundle()), 1); // = g
        assert_eq!(h1(&canonical_bundle(&c)), 1); // = h0(O)
        let p = bundle_from_divisor(&c, &PointDivisor::single(0, q(2, 1))).unwrap();
        assert_eq!(h1(&p), 0);
    }

    #[test]
    fn serre_duality_agrees_with_riemann_roch() {
        let mut rng = crate::generator::seeded_rng(23);
        for g in crate::generator::semistable_curves(3, 4) {
            let c = crate::generator::realize(&g);
            for d in [-1i64, 0, 1, 2] {
                let mut multi = vec![0i64; c.component_count()];
                multi[0] = d;
                let l = random_bundle(&c, multi, &mut rng);
                assert_eq!(h1(&l), h1_serre(&l), "duality on {g:?} degree {d}");
            }
        }
    }

    #[test]
    fn vanishing_conditions_on_a_line() {
        let c = line();
        let l = bundle(&c, vec![3], vec![]);
        let p = PointDivisor::single(0, q(5, 1));
        assert_eq!(h0_vanishing(&l, &p).unwrap(), 3);
        let double = PointDivisor {
            points: vec![(0, q(5, 1), 2)],
        };
        assert_eq!(h0_vanishing(&l, &double).unwrap(), 2);
    }

    #[test]
    fn neutral_pairs() {
        let c = nodal_cubic();
        let triv = bundle(&c, vec![0], vec![q(1, 1)]);
        let p = PointDivisor::single(0, q(2, 1));
        let r = PointDivisor::single(0, q(3, 1));
        // The only sections are constants, so any two points impose the
        // same (annihilating) condition.
        assert!(neutral_pair(&triv, &p, &r).unwrap());

        let l = bundle(&line(), vec![2], vec![]);
        let p = PointDivisor::single(0, q(0, 1));
        let r = PointDivisor::single(0, q(1, 1));
        assert!(!neutral_pair(&l, &p, &r).unwrap());
    }

    #[test]
    fn negative_degree_forces_a_base_component() {
        let c = binary_curve(1);
        let l = bundle(&c, vec![-1, 2], vec![q(1, 1)]);
        assert_eq!(h0(&l), 2);
        let base = base_points(&l).unwrap();
        assert_eq!(base.whole_components, vec![0]);
        assert_eq!(base.nodes, vec![0]);
    }

    #[test]
    fn base_point_free_bundles_report_empty() {
        let l = bundle(&line(), vec![2], vec![]);
        assert!(base_points(&l).unwrap().is_empty());
    }

    #[test]
    fn base_points_require_sections() {
        let c = nodal_cubic();
        let l = bundle(&c, vec![0], vec![q(2, 1)]);
        assert_eq!(base_points(&l), Err(CurveError::NoSections));
    }

    #[test]
    fn normalizing_the_cubic_gives_a_line() {
        let c = nodal_cubic();
        let nu = normalize_at(&c, &[0]).unwrap();
        assert_eq!(nu.curve.genus(), 0);
        let l = bundle(&c, vec![0], vec![q(2, 1)]);
        // Pulled back, the twist disappears and a section reappears.
        assert_eq!(h0(&nu.pullback(&l)), 1);
        assert_eq!(nu.freed, vec![[(0, q(0, 1)), (0, q(1, 1))]]);
    }

    #[test]
    fn normalization_raises_sections_by_at_most_the_nodes() {
        let mut rng = crate::generator::seeded_rng(5);
        let c = binary_curve(3);
        let l = random_bundle(&c, vec![1, 1], &mut rng);
        let h = h0(&l);
        let nu = normalize_at(&c, &[0, 2]).unwrap();
        let hn = h0(&nu.pullback(&l));
        assert!(hn >= h && hn <= h + 2);
    }

    #[test]
    fn unknown_edges_are_rejected() {
        let c = nodal_cubic();
        assert!(matches!(
            normalize_at(&c, &[4]),
            Err(CurveError::UnknownEdge(4))
        ));
    }

    #[test]
    fn sections_are_coordinate_free() {
        // Moving the branch coordinates by an affine map z -> 2z + 3
        // must not change h0: sections transport through composition.
        let before = nodal_cubic();
        let after = GraphCurve::new(
            graph(vec![0], vec![(0, 0)]),
            vec![[q(3, 1), q(5, 1)]],
        )
        .unwrap();
        for glue in [q(1, 1), q(2, 1), q(-3, 7)] {
            for d in [0i64, 1, 3] {
                assert_eq!(
                    h0(&bundle(&before, vec![d], vec![glue.clone()])),
                    h0(&bundle(&after, vec![d], vec![glue.clone()]))
                );
            }
        }
    }

    #[test]
    fn positive_weights_are_not_realizable() {
        assert_eq!(
            GraphCurve::new(graph(vec![1], vec![]), vec![]),
            Err(CurveError::PositiveWeight(0))
        );
    }

    #[test]
    fn colliding_branches_are_rejected() {
        let g = graph(vec![0], vec![(0, 0)]);
        assert!(matches!(
            GraphCurve::new(g, vec![[q(0, 1), q(0, 1)]]),
            Err(CurveError::BranchCollision { .. })
        ));
    }

    #[test]
    fn zero_glue_is_rejected() {
        let c = nodal_cubic();
        assert_eq!(
            LineBundle::new(c, vec![0], vec![q(0, 1)]),
            Err(CurveError::ZeroGlue(0))
        );
    }
}
