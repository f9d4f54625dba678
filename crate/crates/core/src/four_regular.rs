//! Transitions of 4-regular graphs, circuit partitions and their
//! touch-graphs, transitional orientations, the edge-transition incidence
//! matrix `Θ(D, o)` and the projection `π_P` of closed walks onto touch-graphs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{is_closed_walk, ClosedWalk, DirectedGraph, DirectedTransition, HalfEdgeGraph, SingleTransition};
use crate::linalg::LabeledMatrix;
use crate::scalar::Scalar;

/// A pairing of the four half-edges at a vertex into two single
/// transitions, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    vertex: String,
    pairs: [SingleTransition; 2],
}

impl Transition {
    pub fn new(vertex: impl Into<String>, a: SingleTransition, b: SingleTransition) -> Self {
        let pairs = if a <= b { [a, b] } else { [b, a] };
        Self {
            vertex: vertex.into(),
            pairs,
        }
    }

    pub fn vertex(&self) -> &str {
        &self.vertex
    }

    pub fn pairs(&self) -> &[SingleTransition; 2] {
        &self.pairs
    }

    pub fn contains(&self, s: &SingleTransition) -> bool {
        self.pairs.contains(s)
    }

    /// The single transition of `self` other than `s`.
    pub fn other(&self, s: &SingleTransition) -> Option<&SingleTransition> {
        match &self.pairs {
            [a, b] if a == s => Some(b),
            [a, b] if b == s => Some(a),
            _ => None,
        }
    }

    /// The single transition containing half-edge `h`.
    pub fn pair_of(&self, h: &str) -> Option<&SingleTransition> {
        self.pairs.iter().find(|s| s.contains(h))
    }

    /// Canonical label `{a,b}|{c,d}`; stable across runs.
    pub fn label(&self) -> String {
        format!("{}|{}", self.pairs[0], self.pairs[1])
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// All transitions of a 4-regular graph, three per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionSystem {
    by_vertex: BTreeMap<String, [Transition; 3]>,
    by_label: BTreeMap<String, Transition>,
}

/// The three pairings of the half-edges at each vertex. The `i`-th pairing
/// at `v` joins the least half-edge at `v` to the `(i + 1)`-th least.
pub fn all_transitions(f: &HalfEdgeGraph) -> Result<TransitionSystem> {
    f.require_four_regular()?;
    let mut by_vertex = BTreeMap::new();
    let mut by_label = BTreeMap::new();
    for v in f.vertices() {
        let mut hs: Vec<&String> = f.half_edges_at(v)?.iter().collect();
        hs.sort();
        let t = |i: usize, j: usize, k: usize, l: usize| {
            Transition::new(
                v,
                SingleTransition::new(hs[i].as_str(), hs[j].as_str()),
                SingleTransition::new(hs[k].as_str(), hs[l].as_str()),
            )
        };
        let ts = [t(0, 1, 2, 3), t(0, 2, 1, 3), t(0, 3, 1, 2)];
        for t in &ts {
            by_label.insert(t.label(), t.clone());
        }
        by_vertex.insert(v.to_string(), ts);
    }
    Ok(TransitionSystem { by_vertex, by_label })
}

impl TransitionSystem {
    pub fn len(&self) -> usize {
        self.by_label.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_label.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &str> + '_ {
        self.by_vertex.keys().map(String::as_str)
    }

    pub fn at(&self, v: &str) -> Result<&[Transition; 3]> {
        self.by_vertex.get(v).ok_or_else(|| Error::unknown("vertex", v))
    }

    /// Transitions grouped by vertex, vertices in order.
    pub fn iter(&self) -> impl Iterator<Item = &Transition> + '_ {
        self.by_vertex.values().flatten()
    }

    pub fn labels(&self) -> Vec<String> {
        self.iter().map(Transition::label).collect()
    }

    pub fn get(&self, label: &str) -> Result<&Transition> {
        self.by_label
            .get(label)
            .ok_or_else(|| Error::unknown("transition", label))
    }

    /// The transition at `v` containing single transition `s`.
    pub fn containing(&self, v: &str, s: &SingleTransition) -> Result<&Transition> {
        self.at(v)?
            .iter()
            .find(|t| t.contains(s))
            .ok_or_else(|| Error::Contract(format!("`{s}` is not a single transition at `{v}`")))
    }
}

/// One transition per vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transversal {
    chosen: BTreeMap<String, Transition>,
}

/// JSON form `{vertex: [[h, h], [h, h]]}`.
pub type TransversalJson = BTreeMap<String, [SingleTransition; 2]>;

impl Transversal {
    /// Checks that exactly one transition of each vertex is chosen.
    pub fn new(system: &TransitionSystem, chosen: impl IntoIterator<Item = Transition>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for t in chosen {
            if !system.by_label.contains_key(&t.label()) {
                return Err(Error::InvalidTransversal(format!("`{t}` is not a transition")));
            }
            if let Some(prev) = map.insert(t.vertex.clone(), t) {
                return Err(Error::InvalidTransversal(format!(
                    "two transitions chosen at `{}`",
                    prev.vertex
                )));
            }
        }
        if let Some(v) = system.vertices().find(|v| !map.contains_key(*v)) {
            return Err(Error::InvalidTransversal(format!("no transition chosen at `{v}`")));
        }
        Ok(Self { chosen: map })
    }

    pub fn from_json(system: &TransitionSystem, spec: &TransversalJson) -> Result<Self> {
        let ts = spec
            .iter()
            .map(|(v, [a, b])| {
                let t = Transition::new(v.as_str(), a.clone(), b.clone());
                system
                    .get(&t.label())
                    .ok()
                    .filter(|known| known.vertex == *v)
                    .cloned()
                    .ok_or_else(|| Error::InvalidTransversal(format!("`{t}` is not a transition at `{v}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(system, ts)
    }

    pub fn to_json(&self) -> TransversalJson {
        self.chosen.iter().map(|(v, t)| (v.clone(), t.pairs.clone())).collect()
    }

    pub fn get(&self, v: &str) -> Result<&Transition> {
        self.chosen.get(v).ok_or_else(|| Error::unknown("vertex", v))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Transition> + '_ {
        self.chosen.values()
    }

    pub fn labels(&self) -> Vec<String> {
        self.iter().map(Transition::label).collect()
    }

    pub fn len(&self) -> usize {
        self.chosen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chosen.is_empty()
    }
}

/// Every transversal, in lexicographic order of per-vertex indices.
pub fn all_transversals(system: &TransitionSystem) -> Vec<Transversal> {
    let mut out = vec![BTreeMap::new()];
    for (v, ts) in &system.by_vertex {
        out = out
            .into_iter()
            .flat_map(|m: BTreeMap<String, Transition>| {
                ts.iter().map(move |t| {
                    let mut m = m.clone();
                    m.insert(v.clone(), t.clone());
                    m
                })
            })
            .collect();
    }
    out.into_iter().map(|chosen| Transversal { chosen }).collect()
}

/// A circuit of a partition: its single transitions and one orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionCircuit {
    id: String,
    walk: ClosedWalk,
    transitions: BTreeSet<SingleTransition>,
}

impl PartitionCircuit {
    /// Least half-edge the circuit contains.
    pub fn id(&self) -> &str {
        &self.id
    }

    /// The circuit oriented to start by entering through its least half-edge.
    pub fn walk(&self) -> &ClosedWalk {
        &self.walk
    }

    pub fn single_transitions(&self) -> &BTreeSet<SingleTransition> {
        &self.transitions
    }
}

/// Edge-disjoint circuits covering every half-edge exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitPartition {
    circuits: Vec<PartitionCircuit>,
    circuit_of: BTreeMap<String, usize>,
    transversal: Transversal,
}

/// Traces the circuits determined by choosing transition `t(v)` at every
/// vertex.
pub fn partition_from_transversal(f: &HalfEdgeGraph, t: &Transversal) -> Result<CircuitPartition> {
    let mut partner: BTreeMap<&str, &str> = BTreeMap::new();
    for v in f.vertices() {
        let tr = t
            .chosen
            .get(v)
            .ok_or_else(|| Error::InvalidTransversal(format!("no transition chosen at `{v}`")))?;
        for s in &tr.pairs {
            let [a, b] = s.half_edges();
            partner.insert(a, b);
            partner.insert(b, a);
        }
    }
    let mut walks = Vec::new();
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    for h0 in f.half_edges() {
        if seen.contains(h0) {
            continue;
        }
        let mut steps = Vec::new();
        let mut inbound = h0;
        loop {
            let out = partner[inbound];
            seen.insert(inbound);
            seen.insert(out);
            steps.push(DirectedTransition::new(inbound, out));
            inbound = f.mate(out)?;
            if inbound == h0 {
                break;
            }
        }
        walks.push(ClosedWalk::new(steps));
    }
    CircuitPartition::from_walks(f, walks)
}

impl CircuitPartition {
    /// Validates that `walks` are closed, and together use every half-edge
    /// exactly once.
    pub fn from_walks(f: &HalfEdgeGraph, walks: Vec<ClosedWalk>) -> Result<Self> {
        let system = all_transitions(f)?;
        let mut circuit_of = BTreeMap::new();
        let mut circuits = Vec::new();
        for w in walks {
            if w.is_empty() || !is_closed_walk(f, &w)? {
                return Err(Error::InvalidWalk("partition member is not a closed walk".into()));
            }
            let transitions: BTreeSet<SingleTransition> =
                w.steps().iter().map(DirectedTransition::unoriented).collect();
            for h in w.half_edges() {
                if circuit_of.insert(h.to_string(), circuits.len()).is_some() {
                    return Err(Error::InvalidWalk(format!("half-edge `{h}` covered twice")));
                }
            }
            let id = w.half_edges().min().expect("nonempty").to_string();
            let start = w.steps().iter().position(|s| s.0 == id);
            let walk = match start {
                Some(k) => w.rotated(k),
                None => {
                    let r = w.reversed();
                    let k = r.steps().iter().position(|s| s.0 == id).expect("id in walk");
                    r.rotated(k)
                }
            };
            circuits.push(PartitionCircuit { id, walk, transitions });
        }
        if let Some(h) = f.half_edges().find(|h| !circuit_of.contains_key(*h)) {
            return Err(Error::InvalidWalk(format!("half-edge `{h}` not covered")));
        }
        let mut order: Vec<usize> = (0..circuits.len()).collect();
        order.sort_by(|&a, &b| circuits[a].id.cmp(&circuits[b].id));
        let rank: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let mut sorted: Vec<Option<PartitionCircuit>> = circuits.into_iter().map(Some).collect();
        let circuits: Vec<PartitionCircuit> = order.iter().map(|&o| sorted[o].take().expect("once")).collect();
        for idx in circuit_of.values_mut() {
            *idx = rank[idx];
        }
        let mut chosen = Vec::new();
        for v in f.vertices() {
            let at: Vec<&SingleTransition> = circuits
                .iter()
                .flat_map(|c| c.transitions.iter())
                .filter(|s| f.vertex_of(&s.half_edges()[0]).map(|u| u == v).unwrap_or(false))
                .collect();
            let [a, b] = at[..] else {
                return Err(Error::InvalidWalk(format!("vertex `{v}` is not passed exactly twice")));
            };
            chosen.push(system.containing(v, a)?.clone());
            debug_assert!(chosen.last().expect("pushed").contains(b));
        }
        let transversal = Transversal::new(&system, chosen)?;
        Ok(Self {
            circuits,
            circuit_of,
            transversal,
        })
    }

    pub fn circuits(&self) -> &[PartitionCircuit] {
        &self.circuits
    }

    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }

    /// `τ(P)`: the transition taken at each vertex.
    pub fn transversal(&self) -> &Transversal {
        &self.transversal
    }

    /// Id of the circuit containing half-edge `h`.
    pub fn circuit_of(&self, h: &str) -> Result<&str> {
        self.circuit_of
            .get(h)
            .map(|&i| self.circuits[i].id.as_str())
            .ok_or_else(|| Error::unknown("half-edge", h))
    }

    /// The single transition of `P` containing `h`.
    pub fn single_transition_of(&self, f: &HalfEdgeGraph, h: &str) -> Result<SingleTransition> {
        let v = f.vertex_of(h)?;
        Ok(self
            .transversal
            .get(v)?
            .pair_of(h)
            .expect("transition covers its vertex")
            .clone())
    }
}

/// `Tch(P)`: vertices are circuit ids, half-edges are single-transition
/// labels `{a,b}`, edges are transition labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TouchGraph {
    graph: HalfEdgeGraph,
}

impl TouchGraph {
    pub fn graph(&self) -> &HalfEdgeGraph {
        &self.graph
    }
}

pub fn touch_graph(p: &CircuitPartition) -> TouchGraph {
    let vertices: Vec<String> = p.circuits.iter().map(|c| c.id.clone()).collect();
    let edges: Vec<(String, [String; 2])> = p
        .transversal
        .iter()
        .map(|t| (t.label(), [t.pairs[0].label(), t.pairs[1].label()]))
        .collect();
    let incidence: Vec<(String, String)> = p
        .circuits
        .iter()
        .flat_map(|c| c.transitions.iter().map(|s| (s.label(), c.id.clone())))
        .collect();
    TouchGraph {
        graph: HalfEdgeGraph::new(vertices, edges, incidence).expect("touch-graph is well formed"),
    }
}

/// A choice `o(t) ∈ t` for every transition `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionalOrientation {
    choice: BTreeMap<String, SingleTransition>,
}

/// JSON form `{transition_label: [h, h]}`.
pub type OrientationJson = BTreeMap<String, SingleTransition>;

impl TransitionalOrientation {
    pub fn from_fn(system: &TransitionSystem, mut pick: impl FnMut(&Transition) -> SingleTransition) -> Result<Self> {
        let mut choice = BTreeMap::new();
        for t in system.iter() {
            let s = pick(t);
            if !t.contains(&s) {
                return Err(Error::InvalidOrientation(format!("`{s}` is not in `{t}`")));
            }
            choice.insert(t.label(), s);
        }
        Ok(Self { choice })
    }

    /// At each vertex `v`, the single transitions not containing `avoid[v]`.
    pub fn avoiding(system: &TransitionSystem, avoid: &BTreeMap<String, String>) -> Result<Self> {
        for v in system.vertices() {
            if !avoid.contains_key(v) {
                return Err(Error::InvalidOrientation(format!("no half-edge given at `{v}`")));
            }
        }
        Self::from_fn(system, |t| {
            let h = &avoid[t.vertex()];
            t.pairs.iter().find(|s| !s.contains(h)).unwrap_or(&t.pairs[0]).clone()
        })
    }

    /// At each vertex `v`, the single transitions containing `keep[v]`.
    pub fn containing(system: &TransitionSystem, keep: &BTreeMap<String, String>) -> Result<Self> {
        for v in system.vertices() {
            if !keep.contains_key(v) {
                return Err(Error::InvalidOrientation(format!("no half-edge given at `{v}`")));
            }
        }
        Self::from_fn(system, |t| {
            let h = &keep[t.vertex()];
            t.pairs.iter().find(|s| s.contains(h)).unwrap_or(&t.pairs[0]).clone()
        })
    }

    pub fn from_json(system: &TransitionSystem, spec: &OrientationJson) -> Result<Self> {
        if let Some(l) = spec.keys().find(|l| system.get(l).is_err()) {
            return Err(Error::InvalidOrientation(format!("unknown transition `{l}`")));
        }
        let mut missing = None;
        let o = Self::from_fn(system, |t| match spec.get(&t.label()) {
            Some(s) => s.clone(),
            None => {
                missing.get_or_insert_with(|| t.label());
                t.pairs[0].clone()
            }
        })?;
        match missing {
            Some(l) => Err(Error::InvalidOrientation(format!("no choice for `{l}`"))),
            None => Ok(o),
        }
    }

    pub fn to_json(&self) -> OrientationJson {
        self.choice.clone()
    }

    pub fn get(&self, t: &Transition) -> Result<&SingleTransition> {
        self.get_label(&t.label())
    }

    pub fn get_label(&self, label: &str) -> Result<&SingleTransition> {
        self.choice
            .get(label)
            .ok_or_else(|| Error::unknown("transition", label))
    }

    /// The same orientation with the choice at `t` switched.
    pub fn flipped(&self, t: &Transition) -> Result<Self> {
        let cur = self.get(t)?.clone();
        let mut next = self.clone();
        next.choice
            .insert(t.label(), t.other(&cur).expect("choice lies in t").clone());
        Ok(next)
    }
}

/// `Θ(D, o)`: rows are edges, columns transition labels. Entry `(e, t)` is
/// `+1` (`-1`) if `e ∩ o(t)` is the tail (head) of `e` alone, else `0`.
pub fn edge_transition_incidence<T: Scalar>(
    d: &DirectedGraph,
    system: &TransitionSystem,
    o: &TransitionalOrientation,
) -> Result<LabeledMatrix<T>> {
    let g = d.underlying();
    let mut m = LabeledMatrix::zeros(g.edge_ids(), system.labels())?;
    for t in system.iter() {
        let s = o.get(t)?;
        let [a, b] = s.half_edges();
        let (ea, eb) = (g.edge_of(a)?, g.edge_of(b)?);
        if ea == eb {
            continue;
        }
        for (h, e) in [(a, ea), (b, eb)] {
            let v = if d.is_tail(h)? { 1 } else { -1 };
            m.set(e, &t.label(), T::from_i64(v))?;
        }
    }
    Ok(m)
}

/// `σ(D, W)` as signed traversal counts per edge (all edges present).
pub fn incidence_counts(d: &DirectedGraph, w: &ClosedWalk) -> Result<BTreeMap<String, i64>> {
    let g = d.underlying();
    if !is_closed_walk(g, w)? {
        return Err(Error::InvalidWalk("not a closed walk".into()));
    }
    let mut counts: BTreeMap<String, i64> = g.edge_ids().map(|e| (e.to_string(), 0)).collect();
    for (from, _) in w.traversals() {
        let e = g.edge_of(&from)?;
        *counts.get_mut(e).expect("edge") += if d.is_tail(&from)? { 1 } else { -1 };
    }
    Ok(counts)
}

/// `σ(D, W)` as a `1 x E` matrix with row label `row`.
pub fn incidence_vector<T: Scalar>(d: &DirectedGraph, w: &ClosedWalk, row: &str) -> Result<LabeledMatrix<T>> {
    let counts = incidence_counts(d, w)?;
    let mut m = LabeledMatrix::zeros([row], counts.keys())?;
    for (e, c) in &counts {
        m.set(row, e, T::from_i64(*c))?;
    }
    Ok(m)
}

/// `π_P(W)` as a closed walk of `Tch(P)`. Each step `(h, h')` of `W`
/// becomes the touch-graph traversal `(s(h), s(h'))` along the edge of the
/// transition `P` takes there; steps with `s(h) = s(h')` are dropped.
/// Circuits of `P` project to the empty walk.
pub fn project_walk(f: &HalfEdgeGraph, p: &CircuitPartition, w: &ClosedWalk) -> Result<ClosedWalk> {
    if !is_closed_walk(f, w)? {
        return Err(Error::InvalidWalk("not a closed walk".into()));
    }
    let mut kept: Vec<(String, String)> = Vec::new();
    for s in w.steps() {
        let a = p.single_transition_of(f, &s.0)?;
        let b = p.single_transition_of(f, &s.1)?;
        if a != b {
            kept.push((a.label(), b.label()));
        }
    }
    let n = kept.len();
    let steps = (0..n)
        .map(|i| DirectedTransition::new(kept[i].1.clone(), kept[(i + 1) % n].0.clone()))
        .collect();
    Ok(ClosedWalk::new(steps))
}

/// `dTch(P, o)`: the edge of `t` runs from the single transition of `t`
/// other than `o(t)` to `o(t)`.
pub fn directed_touch_graph(p: &CircuitPartition, o: &TransitionalOrientation) -> Result<DirectedGraph> {
    let tch = touch_graph(p);
    let mut orientation = BTreeMap::new();
    for t in p.transversal.iter() {
        let head = o.get(t)?;
        let tail = t.other(head).expect("choice lies in t");
        orientation.insert(t.label(), [tail.label(), head.label()]);
    }
    DirectedGraph::new(tch.graph, orientation)
}
