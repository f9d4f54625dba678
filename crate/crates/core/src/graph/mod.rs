//! Graphs given by vertices, half-edges, an edge pairing, and an incidence
//! map from half-edges to vertices. Loops and parallel edges are allowed.

mod json;
mod walk;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub use json::{EdgeJson, GraphJson};
pub use walk::{
    forget_orientation, is_closed_walk, ClosedWalk, Cycle, DirectedTransition, ForgetOrientation, OrientedCircuit,
    OrientedCycle, SingleTransition, UnorientedCircuit, UnorientedWalk,
};

/// An undirected graph in half-edge form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfEdgeGraph {
    vertices: BTreeSet<String>,
    edges: BTreeMap<String, [String; 2]>,
    incidence: BTreeMap<String, String>,
    edge_of: BTreeMap<String, String>,
    at_vertex: BTreeMap<String, Vec<String>>,
}

/// One structural problem found by [`validate_graph`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    DuplicateVertex {
        vertex: String,
    },
    DuplicateEdge {
        edge: String,
    },
    /// A half-edge listed in more than one edge, or twice in the same edge.
    HalfEdgeReused {
        half_edge: String,
    },
    /// A half-edge with an incidence but no edge.
    UnpairedHalfEdge {
        half_edge: String,
    },
    /// A half-edge of some edge with no incidence.
    MissingIncidence {
        half_edge: String,
    },
    UnknownVertex {
        half_edge: String,
        vertex: String,
    },
    NotFourRegular {
        vertex: String,
        degree: usize,
    },
    BadOrientation {
        edge: String,
    },
}

/// All violations of a graph description; empty iff valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "no violations");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| format!("{v:?}")).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks every structural invariant of a graph description. With
/// `require_four_regular`, vertices without exactly four half-edges are
/// reported too.
pub fn validate_graph(spec: &GraphJson, require_four_regular: bool) -> ValidationReport {
    let mut violations = Vec::new();

    let mut vertices = BTreeSet::new();
    for v in &spec.vertices {
        if !vertices.insert(v.as_str()) {
            violations.push(Violation::DuplicateVertex { vertex: v.clone() });
        }
    }

    let mut edge_ids = BTreeSet::new();
    let mut paired: BTreeMap<&str, &str> = BTreeMap::new();
    for e in &spec.edges {
        if !edge_ids.insert(e.id.as_str()) {
            violations.push(Violation::DuplicateEdge { edge: e.id.clone() });
        }
        for h in &e.half_edges {
            if paired.insert(h.as_str(), e.id.as_str()).is_some() {
                violations.push(Violation::HalfEdgeReused { half_edge: h.clone() });
            }
        }
    }

    for (h, v) in &spec.incidence {
        if !paired.contains_key(h.as_str()) {
            violations.push(Violation::UnpairedHalfEdge { half_edge: h.clone() });
        }
        if !vertices.contains(v.as_str()) {
            violations.push(Violation::UnknownVertex {
                half_edge: h.clone(),
                vertex: v.clone(),
            });
        }
    }
    for h in paired.keys() {
        if !spec.incidence.contains_key(*h) {
            violations.push(Violation::MissingIncidence {
                half_edge: h.to_string(),
            });
        }
    }

    if require_four_regular {
        let mut degree: BTreeMap<&str, usize> = vertices.iter().map(|v| (*v, 0)).collect();
        for v in spec.incidence.values() {
            if let Some(d) = degree.get_mut(v.as_str()) {
                *d += 1;
            }
        }
        for (v, d) in degree {
            if d != 4 {
                violations.push(Violation::NotFourRegular {
                    vertex: v.to_string(),
                    degree: d,
                });
            }
        }
    }

    if let Some(orientation) = &spec.orientation {
        for e in &spec.edges {
            let ok = match orientation.get(&e.id) {
                Some([t, h]) => {
                    let [a, b] = &e.half_edges;
                    (t == a && h == b) || (t == b && h == a)
                }
                None => false,
            };
            if !ok {
                violations.push(Violation::BadOrientation { edge: e.id.clone() });
            }
        }
        for id in orientation.keys() {
            if !edge_ids.contains(id.as_str()) {
                violations.push(Violation::BadOrientation { edge: id.clone() });
            }
        }
    }

    ValidationReport { violations }
}

impl HalfEdgeGraph {
    /// Builds a graph, rejecting any structural violation.
    pub fn new<V, E, I>(vertices: V, edges: E, incidence: I) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, [String; 2])>,
        I: IntoIterator<Item = (String, String)>,
    {
        let spec = GraphJson {
            vertices: vertices.into_iter().map(Into::into).collect(),
            edges: edges
                .into_iter()
                .map(|(id, half_edges)| EdgeJson { id, half_edges })
                .collect(),
            incidence: incidence.into_iter().collect(),
            orientation: None,
        };
        Self::from_json(&spec)
    }

    /// Builds a graph from its JSON description, ignoring any orientation.
    pub fn from_json(spec: &GraphJson) -> Result<Self> {
        let mut report = validate_graph(spec, false);
        report
            .violations
            .retain(|v| !matches!(v, Violation::BadOrientation { .. }));
        if !report.is_valid() {
            return Err(Error::InvalidGraph(report));
        }
        let vertices: BTreeSet<String> = spec.vertices.iter().cloned().collect();
        let edges: BTreeMap<String, [String; 2]> = spec
            .edges
            .iter()
            .map(|e| (e.id.clone(), e.half_edges.clone()))
            .collect();
        let incidence = spec.incidence.clone();
        let mut edge_of = BTreeMap::new();
        for (id, [a, b]) in &edges {
            edge_of.insert(a.clone(), id.clone());
            edge_of.insert(b.clone(), id.clone());
        }
        let mut at_vertex: BTreeMap<String, Vec<String>> = vertices.iter().map(|v| (v.clone(), Vec::new())).collect();
        for (h, v) in &incidence {
            at_vertex.get_mut(v).expect("validated").push(h.clone());
        }
        Ok(Self {
            vertices,
            edges,
            incidence,
            edge_of,
            at_vertex,
        })
    }

    pub fn empty() -> Self {
        Self {
            vertices: BTreeSet::new(),
            edges: BTreeMap::new(),
            incidence: BTreeMap::new(),
            edge_of: BTreeMap::new(),
            at_vertex: BTreeMap::new(),
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = &str> + '_ {
        self.vertices.iter().map(String::as_str)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertices.contains(v)
    }

    /// Edge ids with their two half-edges, in lexicographic id order.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &[String; 2])> + '_ {
        self.edges.iter().map(|(id, h)| (id.as_str(), h))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = &str> + '_ {
        self.edges.keys().map(String::as_str)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn half_edges(&self) -> impl Iterator<Item = &str> + '_ {
        self.incidence.keys().map(String::as_str)
    }

    pub fn half_edge_count(&self) -> usize {
        self.incidence.len()
    }

    pub fn has_half_edge(&self, h: &str) -> bool {
        self.incidence.contains_key(h)
    }

    pub fn has_edge(&self, e: &str) -> bool {
        self.edges.contains_key(e)
    }

    /// The two half-edges of an edge.
    pub fn half_edges_of(&self, e: &str) -> Result<&[String; 2]> {
        self.edges.get(e).ok_or_else(|| Error::unknown("edge", e))
    }

    /// The vertex a half-edge is incident to.
    pub fn vertex_of(&self, h: &str) -> Result<&str> {
        self.incidence
            .get(h)
            .map(String::as_str)
            .ok_or_else(|| Error::unknown("half-edge", h))
    }

    /// The edge containing a half-edge.
    pub fn edge_of(&self, h: &str) -> Result<&str> {
        self.edge_of
            .get(h)
            .map(String::as_str)
            .ok_or_else(|| Error::unknown("half-edge", h))
    }

    /// The other half-edge of the edge containing `h`.
    pub fn mate(&self, h: &str) -> Result<&str> {
        let [a, b] = self.half_edges_of(self.edge_of(h)?)?;
        Ok(if a == h { b } else { a })
    }

    /// Half-edges incident to `v`, sorted.
    pub fn half_edges_at(&self, v: &str) -> Result<&[String]> {
        self.at_vertex
            .get(v)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::unknown("vertex", v))
    }

    pub fn degree(&self, v: &str) -> Result<usize> {
        Ok(self.half_edges_at(v)?.len())
    }

    pub fn endpoints(&self, e: &str) -> Result<(&str, &str)> {
        let [a, b] = self.half_edges_of(e)?;
        Ok((self.vertex_of(a)?, self.vertex_of(b)?))
    }

    pub fn is_loop(&self, e: &str) -> Result<bool> {
        let (u, v) = self.endpoints(e)?;
        Ok(u == v)
    }

    pub fn is_four_regular(&self) -> bool {
        self.at_vertex.values().all(|hs| hs.len() == 4)
    }

    /// Errors unless every vertex has exactly four half-edges.
    pub fn require_four_regular(&self) -> Result<()> {
        for (v, hs) in &self.at_vertex {
            if hs.len() != 4 {
                return Err(Error::NotFourRegular {
                    vertex: v.clone(),
                    degree: hs.len(),
                });
            }
        }
        Ok(())
    }

    /// Connected components as vertex sets, ordered by least vertex.
    /// Isolated vertices form singleton components.
    pub fn connected_components(&self) -> Vec<BTreeSet<String>> {
        let index: BTreeMap<&str, usize> = self.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut dsu = DisjointSets::new(self.vertices.len());
        for [a, b] in self.edges.values() {
            dsu.union(index[self.incidence[a].as_str()], index[self.incidence[b].as_str()]);
        }
        let mut groups: BTreeMap<usize, BTreeSet<String>> = BTreeMap::new();
        for (v, &i) in &index {
            groups.entry(dsu.find(i)).or_default().insert(v.to_string());
        }
        let mut comps: Vec<BTreeSet<String>> = groups.into_values().collect();
        comps.sort();
        comps
    }

    /// `c(G)`.
    pub fn component_count(&self) -> usize {
        self.connected_components().len()
    }

    /// The graph with the given edges and their half-edges removed; all
    /// vertices are kept.
    pub fn without_edges<S: AsRef<str>>(&self, removed: &[S]) -> Result<Self> {
        let removed: BTreeSet<&str> = removed.iter().map(AsRef::as_ref).collect();
        for e in &removed {
            if !self.edges.contains_key(*e) {
                return Err(Error::unknown("edge", *e));
            }
        }
        let mut spec = self.to_json();
        spec.edges.retain(|e| !removed.contains(e.id.as_str()));
        let kept: BTreeSet<String> = spec.edges.iter().flat_map(|e| e.half_edges.iter().cloned()).collect();
        spec.incidence.retain(|h, _| kept.contains(h));
        Self::from_json(&spec)
    }

    /// Disjoint union; ids of `other` get `suffix` appended.
    pub fn disjoint_union(&self, other: &Self, suffix: &str) -> Result<Self> {
        let mut spec = self.to_json();
        let o = other.to_json();
        spec.vertices.extend(o.vertices.iter().map(|v| format!("{v}{suffix}")));
        spec.edges.extend(o.edges.iter().map(|e| EdgeJson {
            id: format!("{}{suffix}", e.id),
            half_edges: [
                format!("{}{suffix}", e.half_edges[0]),
                format!("{}{suffix}", e.half_edges[1]),
            ],
        }));
        spec.incidence.extend(
            o.incidence
                .iter()
                .map(|(h, v)| (format!("{h}{suffix}"), format!("{v}{suffix}"))),
        );
        Self::from_json(&spec)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.vertices.iter().cloned().collect(),
            edges: self
                .edges
                .iter()
                .map(|(id, h)| EdgeJson {
                    id: id.clone(),
                    half_edges: h.clone(),
                })
                .collect(),
            incidence: self.incidence.clone(),
            orientation: None,
        }
    }
}

/// Connected components of a graph: the vertex partition and `c(G)`.
pub fn connected_components(g: &HalfEdgeGraph) -> (Vec<BTreeSet<String>>, usize) {
    let comps = g.connected_components();
    let c = comps.len();
    (comps, c)
}

/// A directed version of a [`HalfEdgeGraph`]: every edge gets one of its two
/// orderings (tail, head).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    graph: HalfEdgeGraph,
    orientation: BTreeMap<String, [String; 2]>,
}

impl DirectedGraph {
    /// Orientation map must give each edge one ordering of its half-edges.
    pub fn new(graph: HalfEdgeGraph, orientation: BTreeMap<String, [String; 2]>) -> Result<Self> {
        for (e, [a, b]) in graph.edges() {
            match orientation.get(e) {
                Some([t, h]) if (t == a && h == b) || (t == b && h == a) => {}
                Some(_) => {
                    return Err(Error::Contract(format!(
                        "orientation of `{e}` is not an ordering of its half-edges"
                    )))
                }
                None => return Err(Error::Contract(format!("edge `{e}` has no orientation"))),
            }
        }
        if let Some(extra) = orientation.keys().find(|e| !graph.has_edge(e)) {
            return Err(Error::unknown("edge", extra.clone()));
        }
        Ok(Self { graph, orientation })
    }

    /// Each edge directed from its first listed half-edge to its second.
    pub fn listed(graph: HalfEdgeGraph) -> Self {
        let orientation = graph.edges().map(|(e, h)| (e.to_string(), h.clone())).collect();
        Self { graph, orientation }
    }

    /// Edges traversed by `walks` are directed along their first traversal;
    /// the rest keep their listed order.
    pub fn along_walks<'a>(graph: HalfEdgeGraph, walks: impl IntoIterator<Item = &'a ClosedWalk>) -> Result<Self> {
        let mut orientation: BTreeMap<String, [String; 2]> = BTreeMap::new();
        for w in walks {
            for (from, to) in w.traversals() {
                let e = graph.edge_of(&from)?.to_string();
                orientation.entry(e).or_insert_with(|| [from.clone(), to.clone()]);
            }
        }
        for (e, h) in graph.edges() {
            orientation.entry(e.to_string()).or_insert_with(|| h.clone());
        }
        Self::new(graph, orientation)
    }

    pub fn underlying(&self) -> &HalfEdgeGraph {
        &self.graph
    }

    pub fn tail(&self, e: &str) -> Result<&str> {
        self.orientation
            .get(e)
            .map(|o| o[0].as_str())
            .ok_or_else(|| Error::unknown("edge", e))
    }

    pub fn head(&self, e: &str) -> Result<&str> {
        self.orientation
            .get(e)
            .map(|o| o[1].as_str())
            .ok_or_else(|| Error::unknown("edge", e))
    }

    /// True if `h` is the tail half-edge of its edge.
    pub fn is_tail(&self, h: &str) -> Result<bool> {
        let e = self.graph.edge_of(h)?;
        Ok(self.tail(e)? == h)
    }

    pub fn orientation(&self) -> &BTreeMap<String, [String; 2]> {
        &self.orientation
    }

    /// The same graph with `e` reversed.
    pub fn with_reversed(&self, e: &str) -> Result<Self> {
        let mut next = self.clone();
        let o = next.orientation.get_mut(e).ok_or_else(|| Error::unknown("edge", e))?;
        o.swap(0, 1);
        Ok(next)
    }

    pub fn to_json(&self) -> GraphJson {
        let mut spec = self.graph.to_json();
        spec.orientation = Some(self.orientation.clone());
        spec
    }
}

/// Union-find with path halving.
#[derive(Debug, Clone)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn running_example_is_valid_and_four_regular() {
        let spec = fixtures::running_example_json();
        assert!(validate_graph(&spec, true).is_valid());
        let g = HalfEdgeGraph::from_json(&spec).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 8);
        assert_eq!(g.half_edge_count(), 16);
        assert_eq!(g.component_count(), 1);
    }

    #[test]
    fn unpaired_half_edge_is_reported() {
        let mut spec = fixtures::running_example_json();
        spec.incidence.insert("h_stray".into(), "a".into());
        let report = validate_graph(&spec, false);
        assert_eq!(
            report.violations,
            vec![Violation::UnpairedHalfEdge {
                half_edge: "h_stray".into()
            }]
        );
        // The stray half-edge also breaks 4-regularity at `a`.
        let report = validate_graph(&spec, true);
        assert!(report.violations.contains(&Violation::NotFourRegular {
            vertex: "a".into(),
            degree: 5
        }));
        assert!(matches!(HalfEdgeGraph::from_json(&spec), Err(Error::InvalidGraph(_))));
    }

    #[test]
    fn reused_and_missing_half_edges() {
        let spec = GraphJson {
            vertices: vec!["v".into(), "v".into()],
            edges: vec![
                EdgeJson {
                    id: "e".into(),
                    half_edges: ["x".into(), "x".into()],
                },
                EdgeJson {
                    id: "e".into(),
                    half_edges: ["y".into(), "z".into()],
                },
            ],
            incidence: [("x".to_string(), "v".to_string()), ("y".into(), "w".into())]
                .into_iter()
                .collect(),
            orientation: None,
        };
        let kinds: Vec<_> = validate_graph(&spec, false).violations;
        assert!(kinds.contains(&Violation::DuplicateVertex { vertex: "v".into() }));
        assert!(kinds.contains(&Violation::DuplicateEdge { edge: "e".into() }));
        assert!(kinds.contains(&Violation::HalfEdgeReused { half_edge: "x".into() }));
        assert!(kinds.contains(&Violation::MissingIncidence { half_edge: "z".into() }));
        assert!(kinds.contains(&Violation::UnknownVertex {
            half_edge: "y".into(),
            vertex: "w".into()
        }));
    }

    #[test]
    fn one_vertex_two_loops() {
        let g = fixtures::one_vertex_two_loops();
        assert!(g.is_four_regular());
        assert!(g.is_loop("l1").unwrap());
        assert_eq!(g.component_count(), 1);
    }

    #[test]
    fn components() {
        assert_eq!(HalfEdgeGraph::empty().component_count(), 0);
        let f = fixtures::running_example().graph;
        let doubled = f.disjoint_union(&f, "'").unwrap();
        let (comps, c) = connected_components(&doubled);
        assert_eq!(c, 2);
        assert_eq!(comps[0].len(), 4);
        let isolated = HalfEdgeGraph::new(["p", "q"], [], []).unwrap();
        assert_eq!(isolated.component_count(), 2);
    }

    #[test]
    fn four_regular_counts() {
        let f = fixtures::running_example().graph;
        assert_eq!(f.half_edge_count(), 4 * f.vertex_count());
        assert_eq!(f.edge_count(), 2 * f.vertex_count());
    }

    #[test]
    fn reversal_swaps_tail_and_head() {
        let d = fixtures::running_example().directed;
        let r = d.with_reversed("e1").unwrap();
        assert_eq!(d.tail("e1").unwrap(), r.head("e1").unwrap());
        assert_eq!(d.tail("e2").unwrap(), r.tail("e2").unwrap());
    }
}
