//! Simple graphs, voltage assignments, and explicit construction of graph
//! bundles, coverings and Cartesian products.
//!
//! Vertices are `0..n`. In a bundle over a base with `n` vertices, the vertex
//! `(u_i, v_k)` has index `k * n + i`, so the fiber coordinate is the major
//! one and Kronecker-product identities hold entrywise.

use std::collections::BTreeSet;
use std::fmt;

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::group::{AbelianGroup, Element, VoltageGroup};

/// Undirected finite simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    /// Canonical pairs `(i, j)` with `i < j`, sorted.
    edges: Vec<(usize, usize)>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Rejects loops, repeated edges and out-of-range endpoints.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge {a}-{b} has an endpoint outside 0..{vertex_count}"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidGraph(format!("repeated edge {a}-{b}")));
            }
        }
        Ok(Graph {
            vertex_count,
            edges: set.into_iter().collect(),
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.vertex_count {
            return Err(Error::InvalidGraph(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// `ν_G`
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// `ε_G`
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    /// Both orientations of every edge, sorted.
    pub fn arcs(&self) -> ArcSet {
        ArcSet {
            vertex_count: self.vertex_count,
            arcs: self
                .edges
                .iter()
                .flat_map(|&(a, b)| [(a, b), (b, a)])
                .collect(),
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Disjoint union; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.vertex_count;
        Graph::new(
            n + other.vertex_count,
            self.edges
                .iter()
                .copied()
                .chain(other.edges.iter().map(|&(a, b)| (a + n, b + n))),
        )
        .expect("disjoint union of simple graphs is simple")
    }

    /// Whether the vertex map `sigma` preserves adjacency.
    pub fn is_automorphism(&self, sigma: impl Fn(usize) -> usize) -> bool {
        let mut image = BTreeSet::new();
        for &(a, b) in &self.edges {
            let (x, y) = (sigma(a), sigma(b));
            if x >= self.vertex_count || y >= self.vertex_count || x == y {
                return false;
            }
            image.insert((x.min(y), x.max(y)));
        }
        image.len() == self.edges.len() && image.iter().all(|&(x, y)| self.has_edge(x, y))
    }

    // Named families.

    /// `K̄_n`, no edges.
    pub fn empty(n: usize) -> Graph {
        Graph::new(n, []).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    /// `C_n` on `0-1-...-(n-1)-0`, `n >= 3`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a simple cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    /// `P_n`, the path on `n` vertices.
    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    /// `K_{s,t}`, parts `0..s` and `s..s+t`.
    pub fn complete_bipartite(s: usize, t: usize) -> Graph {
        Graph::new(s + t, (0..s).flat_map(|i| (s..s + t).map(move |j| (i, j)))).unwrap()
    }

    /// `K_{1,m}` with the hub at vertex 0.
    pub fn star(m: usize) -> Graph {
        Self::complete_bipartite(1, m)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "v {}", self.vertex_count)?;
        for (a, b) in &self.edges {
            writeln!(f, "e {a} {b}")?;
        }
        Ok(())
    }
}

/// A set of directed arcs over `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcSet {
    vertex_count: usize,
    arcs: BTreeSet<(usize, usize)>,
}

impl ArcSet {
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn contains(&self, from: usize, to: usize) -> bool {
        self.arcs.contains(&(from, to))
    }

    pub fn to_matrix(&self) -> Array2<i64> {
        let mut m = Array2::zeros((self.vertex_count, self.vertex_count));
        for &(a, b) in &self.arcs {
            m[[a, b]] = 1;
        }
        m
    }
}

pub fn adjacency_matrix(g: &Graph) -> Array2<i64> {
    g.arcs().to_matrix()
}

pub fn degree_matrix(g: &Graph) -> Array2<i64> {
    let mut m = Array2::zeros((g.vertex_count, g.vertex_count));
    for (i, d) in g.degrees().into_iter().enumerate() {
        m[[i, i]] = d as i64;
    }
    m
}

/// A voltage assignment `φ` on the arcs of a base graph.
///
/// One value is stored per edge, on the arc from the lower to the higher
/// endpoint; the reverse arc carries the inverse, so `φ(e⁻¹) = φ(e)⁻¹` holds
/// by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoltageAssignment<G: VoltageGroup> {
    group: G,
    base: Graph,
    values: Vec<G::Elem>,
}

impl<G: VoltageGroup> VoltageAssignment<G> {
    /// Arcs not mentioned carry the identity. An arc may be given in either
    /// orientation; each edge may be assigned at most once.
    pub fn new(
        base: &Graph,
        group: G,
        assignment: impl IntoIterator<Item = ((usize, usize), G::Elem)>,
    ) -> Result<Self> {
        let mut values = vec![group.identity(); base.edge_count()];
        let mut assigned = vec![false; base.edge_count()];
        for ((a, b), g) in assignment {
            let key = (a.min(b), a.max(b));
            let idx = base.edges.binary_search(&key).map_err(|_| {
                Error::InvalidVoltage(format!("{a}->{b} is not an arc of the base graph"))
            })?;
            if !group.contains(&g) {
                return Err(Error::NotInGroup {
                    element: g.to_string(),
                    group: group.describe(),
                });
            }
            if std::mem::replace(&mut assigned[idx], true) {
                return Err(Error::InvalidVoltage(format!("edge {a}-{b} assigned twice")));
            }
            values[idx] = if a < b { g } else { group.inverse(&g) };
        }
        Ok(VoltageAssignment {
            group,
            base: base.clone(),
            values,
        })
    }

    pub fn trivial(base: &Graph, group: G) -> Self {
        Self::new(base, group, []).expect("identity voltages are always valid")
    }

    /// Assigns `f(i, j)` to each canonical arc `i -> j`, `i < j`.
    pub fn from_fn(base: &Graph, group: G, f: impl Fn(usize, usize) -> G::Elem) -> Result<Self> {
        let pairs: Vec<_> = base.edges.iter().map(|&(a, b)| ((a, b), f(a, b))).collect();
        Self::new(base, group, pairs)
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    /// Voltage on the arc `from -> to`, if it is an arc of the base.
    pub fn get(&self, from: usize, to: usize) -> Option<G::Elem> {
        let idx = self
            .base
            .edges
            .binary_search(&(from.min(to), from.max(to)))
            .ok()?;
        let g = &self.values[idx];
        Some(if from < to {
            g.clone()
        } else {
            self.group.inverse(g)
        })
    }

    /// Every arc of the base with its voltage, both orientations.
    pub fn arcs(&self) -> impl Iterator<Item = ((usize, usize), G::Elem)> + '_ {
        self.base.edges.iter().zip(&self.values).flat_map(move |(&(a, b), g)| {
            [((a, b), g.clone()), ((b, a), self.group.inverse(g))]
        })
    }

    /// Values on canonical arcs, in edge order.
    pub fn canonical_values(&self) -> impl Iterator<Item = ((usize, usize), &G::Elem)> {
        self.base.edges.iter().copied().zip(&self.values)
    }

    pub fn is_trivial(&self) -> bool {
        let id = self.group.identity();
        self.values.iter().all(|g| *g == id)
    }

    /// The arcs carrying voltage `gamma`.
    pub fn arcs_with(&self, gamma: &G::Elem) -> Result<ArcSet> {
        if !self.group.contains(gamma) {
            return Err(Error::NotInGroup {
                element: gamma.to_string(),
                group: self.group.describe(),
            });
        }
        Ok(ArcSet {
            vertex_count: self.base.vertex_count,
            arcs: self
                .arcs()
                .filter(|(_, g)| g == gamma)
                .map(|(arc, _)| arc)
                .collect(),
        })
    }

    fn check_base(&self, base: &Graph) -> Result<()> {
        if self.base.vertex_count != base.vertex_count || self.base.edges != base.edges {
            return Err(Error::InvalidVoltage(
                "voltage assignment was built for a different base graph".into(),
            ));
        }
        Ok(())
    }
}

/// `A(G⃗_(φ,γ))`: the 0/1 matrix of arcs carrying voltage `gamma`.
pub fn arc_partition<G: VoltageGroup>(
    base: &Graph,
    phi: &VoltageAssignment<G>,
    gamma: &G::Elem,
) -> Result<Array2<i64>> {
    phi.check_base(base)?;
    Ok(phi.arcs_with(gamma)?.to_matrix())
}

/// A Cayley graph fiber `Cay(A, S)`; `S = ∅` gives the edgeless fiber of a covering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyFiber {
    group: AbelianGroup,
    connecting: Vec<Element>,
}

impl CayleyFiber {
    /// Requires `id ∉ S` and `S = -S`; duplicates are removed.
    pub fn new(group: AbelianGroup, connecting: impl IntoIterator<Item = Element>) -> Result<Self> {
        let set: BTreeSet<Element> = connecting.into_iter().collect();
        for s in &set {
            group.check(s)?;
            if *s == group.identity() {
                return Err(Error::InvalidFiber(
                    "connecting set contains the identity".into(),
                ));
            }
            if !set.contains(&group.neg(s)) {
                return Err(Error::InvalidFiber(format!(
                    "connecting set is not closed under inverses: {s} lacks {}",
                    group.neg(s)
                )));
            }
        }
        let mut connecting: Vec<Element> = set.into_iter().collect();
        connecting.sort_by_key(|s| group.index_of(s));
        Ok(CayleyFiber { group, connecting })
    }

    /// `K̄_n` as `Cay(A, ∅)`.
    pub fn edgeless(group: AbelianGroup) -> Self {
        CayleyFiber {
            group,
            connecting: Vec::new(),
        }
    }

    /// `K_n` as `Cay(A, A \ {id})`.
    pub fn complete(group: AbelianGroup) -> Self {
        let connecting = group.non_identity();
        CayleyFiber { group, connecting }
    }

    /// `C_n` as `Cay(Z_n, {1, -1})`, `n >= 3`.
    pub fn cycle(n: u64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidFiber("a cycle fiber needs n >= 3".into()));
        }
        let group = AbelianGroup::cyclic(n)?;
        let s = [group.element(&[1])?, group.element(&[-1])?];
        Self::new(group, s)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn connecting_set(&self) -> &[Element] {
        &self.connecting
    }

    /// The fiber graph: `{g, g + s}` for `s ∈ S`, vertex `i` being `element_at(i)`.
    pub fn graph(&self) -> Graph {
        let mut edges = BTreeSet::new();
        for g in self.group.elements() {
            let a = self.group.index_of(&g);
            for s in &self.connecting {
                let b = self.group.index_of(&self.group.add(&g, s));
                edges.insert((a.min(b), a.max(b)));
            }
        }
        Graph::new(self.group.order(), edges).expect("Cayley graphs are simple")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiberSpec {
    Cayley(CayleyFiber),
    /// An arbitrary fiber graph; voltages act on its vertices and must be automorphisms.
    Explicit(Graph),
}

impl FiberSpec {
    pub fn graph(&self) -> Graph {
        match self {
            FiberSpec::Cayley(c) => c.graph(),
            FiberSpec::Explicit(g) => g.clone(),
        }
    }
}

/// The bundle `G ×^φ F`: `(u1, v1) ~ (u2, v2)` iff `u1 -> u2` is an arc and
/// `v2 = φ(u1 u2)·v1`, or `u1 = u2` and `v1 ~ v2` in the fiber.
pub fn build_bundle<G: VoltageGroup>(
    base: &Graph,
    fiber: &FiberSpec,
    phi: &VoltageAssignment<G>,
) -> Result<Graph> {
    phi.check_base(base)?;
    let fiber = fiber.graph();
    let nf = fiber.vertex_count();
    if phi.group().degree() != nf {
        return Err(Error::InvalidFiber(format!(
            "voltage group {} acts on {} points but the fiber has {} vertices",
            phi.group().describe(),
            phi.group().degree(),
            nf
        )));
    }
    let distinct: BTreeSet<&G::Elem> = phi.values.iter().collect();
    for g in distinct {
        if !fiber.is_automorphism(|v| phi.group().act(g, v)) {
            return Err(Error::InvalidFiber(format!(
                "voltage {g} is not an automorphism of the fiber"
            )));
        }
    }
    let nb = base.vertex_count();
    let idx = |u: usize, v: usize| v * nb + u;
    let mut edges = BTreeSet::new();
    for ((u1, u2), g) in phi.arcs() {
        for v in 0..nf {
            let (a, b) = (idx(u1, v), idx(u2, phi.group().act(&g, v)));
            edges.insert((a.min(b), a.max(b)));
        }
    }
    for &(v1, v2) in fiber.edges() {
        for u in 0..nb {
            edges.insert((idx(u, v1), idx(u, v2)));
        }
    }
    Graph::new(nb * nf, edges)
}

/// `G × F`, the bundle with trivial voltage.
pub fn cartesian_product(g: &Graph, f: &Graph) -> Graph {
    let nb = g.vertex_count();
    let mut edges = Vec::new();
    for v in 0..f.vertex_count() {
        edges.extend(g.edges().iter().map(|&(a, b)| (v * nb + a, v * nb + b)));
    }
    for &(v1, v2) in f.edges() {
        edges.extend((0..nb).map(|u| (v1 * nb + u, v2 * nb + u)));
    }
    Graph::new(nb * f.vertex_count(), edges).expect("Cartesian product of simple graphs is simple")
}
