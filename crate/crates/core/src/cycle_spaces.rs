//! Incidence and cycle matrices, maximal forests, strictly fundamental and
//! integral cycle bases, cycle-vector decomposition, and the circuits an
//! Euler system induces at each vertex.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_rational::BigRational;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::euler::EulerSystem;
use crate::four_regular::{incidence_counts, project_walk, CircuitPartition};
use crate::graph::{
    ClosedWalk, DirectedGraph, DirectedTransition, DisjointSets, HalfEdgeGraph, OrientedCircuit, OrientedCycle,
};
use crate::linalg::LabeledMatrix;
use crate::scalar::Scalar;
use crate::Matrix;

/// `V x E` incidence matrix: `1` at the tail's vertex, `-1` at the head's,
/// loop columns zero.
pub fn incidence_matrix<T: Scalar>(d: &DirectedGraph) -> Result<LabeledMatrix<T>> {
    let g = d.underlying();
    let mut m = LabeledMatrix::zeros(g.vertices(), g.edge_ids())?;
    for e in g.edge_ids() {
        if g.is_loop(e)? {
            continue;
        }
        m.set(g.vertex_of(d.tail(e)?)?, e, T::one())?;
        m.set(g.vertex_of(d.head(e)?)?, e, -T::one())?;
    }
    Ok(m)
}

/// Closed walks under distinct provenance keys, in insertion order. Keys
/// rather than walk values index cycle-matrix rows, so equal walks stay
/// distinct rows.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct WalkFamily {
    walks: Vec<(String, ClosedWalk)>,
}

impl WalkFamily {
    pub fn new(walks: Vec<(String, ClosedWalk)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (k, _) in &walks {
            if !seen.insert(k.as_str()) {
                return Err(Error::DuplicateLabel {
                    kind: "walk key",
                    label: k.clone(),
                });
            }
        }
        Ok(Self { walks })
    }

    pub fn len(&self) -> usize {
        self.walks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walks.is_empty()
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> + '_ {
        self.walks.iter().map(|(k, _)| k.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &ClosedWalk)> + '_ {
        self.walks.iter().map(|(k, w)| (k.as_str(), w))
    }

    pub fn get(&self, key: &str) -> Result<&ClosedWalk> {
        self.walks
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, w)| w)
            .ok_or_else(|| Error::unknown("walk key", key))
    }

    /// The members whose keys are not in `drop`.
    pub fn without<S: AsRef<str>>(&self, drop: &[S]) -> Self {
        Self {
            walks: self
                .walks
                .iter()
                .filter(|(k, _)| !drop.iter().any(|d| d.as_ref() == k))
                .cloned()
                .collect(),
        }
    }

    /// The same family with one member reversed.
    pub fn with_reversed(&self, key: &str) -> Result<Self> {
        let mut next = self.clone();
        let w = next
            .walks
            .iter_mut()
            .find(|(k, _)| k == key)
            .ok_or_else(|| Error::unknown("walk key", key))?;
        w.1 = w.1.reversed();
        Ok(next)
    }

    /// `π_P` applied member-wise; keys are kept, so the result is a multiset.
    pub fn project(&self, f: &HalfEdgeGraph, p: &CircuitPartition) -> Result<Self> {
        Ok(Self {
            walks: self
                .walks
                .iter()
                .map(|(k, w)| Ok((k.clone(), project_walk(f, p, w)?)))
                .collect::<Result<_>>()?,
        })
    }
}

/// Stacked incidence vectors of a walk family.
#[derive(Debug, Clone)]
pub struct CycleMatrix<T> {
    pub matrix: LabeledMatrix<T>,
    pub walks: WalkFamily,
}

/// `CM(G, Γ, D)`: the row of key `k` is `σ(D, walks[k])`.
pub fn cycle_matrix<T: Scalar>(d: &DirectedGraph, walks: &WalkFamily) -> Result<CycleMatrix<T>> {
    let g = d.underlying();
    let mut m = LabeledMatrix::zeros(walks.keys(), g.edge_ids())?;
    for (k, w) in walks.iter() {
        for (e, c) in incidence_counts(d, w)? {
            if c != 0 {
                m.set(k, &e, T::from_i64(c))?;
            }
        }
    }
    Ok(CycleMatrix {
        matrix: m,
        walks: walks.clone(),
    })
}

/// An acyclic edge set spanning every component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct MaximalForest {
    edges: BTreeSet<String>,
}

impl MaximalForest {
    /// Checks acyclicity and maximality.
    pub fn new(g: &HalfEdgeGraph, edges: impl IntoIterator<Item = String>) -> Result<Self> {
        let edges: BTreeSet<String> = edges.into_iter().collect();
        let idx: BTreeMap<&str, usize> = g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
        let mut ds = DisjointSets::new(idx.len());
        for e in &edges {
            let (u, v) = g.endpoints(e)?;
            if !ds.union(idx[u], idx[v]) {
                return Err(Error::Contract(format!("forest edges contain a cycle through `{e}`")));
            }
        }
        if edges.len() != g.vertex_count() - g.component_count() {
            return Err(Error::Contract("forest does not span every component".into()));
        }
        Ok(Self { edges })
    }

    pub fn edges(&self) -> &BTreeSet<String> {
        &self.edges
    }

    pub fn contains(&self, e: &str) -> bool {
        self.edges.contains(e)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Greedy maximal forest taking edges in label order.
pub fn maximal_forest(g: &HalfEdgeGraph) -> MaximalForest {
    let order: Vec<&str> = g.edge_ids().collect();
    maximal_forest_with_order(g, &order).expect("edge ids are known")
}

/// Greedy maximal forest taking edges in the given order; edges not listed
/// are considered afterwards in label order.
pub fn maximal_forest_with_order<S: AsRef<str>>(g: &HalfEdgeGraph, order: &[S]) -> Result<MaximalForest> {
    let idx: BTreeMap<&str, usize> = g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let mut ds = DisjointSets::new(idx.len());
    let mut edges = BTreeSet::new();
    let candidates = order.iter().map(AsRef::as_ref).chain(g.edge_ids());
    for e in candidates {
        if !g.has_edge(e) {
            return Err(Error::unknown("edge", e));
        }
        let (u, v) = g.endpoints(e)?;
        if ds.union(idx[u], idx[v]) {
            edges.insert(e.to_string());
        }
    }
    Ok(MaximalForest { edges })
}

/// Half-edge path `[(leave, arrive), ...]` inside the forest from `from` to
/// `to`.
fn forest_path(g: &HalfEdgeGraph, t: &MaximalForest, from: &str, to: &str) -> Result<Vec<(String, String)>> {
    let mut back: BTreeMap<String, (String, String, String)> = BTreeMap::new();
    let mut queue = VecDeque::from([from.to_string()]);
    let mut seen = BTreeSet::from([from.to_string()]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        let mut hs: Vec<&String> = g.half_edges_at(&v)?.iter().collect();
        hs.sort();
        for h in hs {
            if !t.contains(g.edge_of(h)?) {
                continue;
            }
            let m = g.mate(h)?;
            let u = g.vertex_of(m)?.to_string();
            if seen.insert(u.clone()) {
                back.insert(u.clone(), (v.clone(), h.clone(), m.to_string()));
                queue.push_back(u);
            }
        }
    }
    if !seen.contains(to) {
        return Err(Error::Contract(format!(
            "`{from}` and `{to}` are not joined by the forest"
        )));
    }
    let mut path = Vec::new();
    let mut cur = to.to_string();
    while cur != from {
        let (prev, h, m) = back[&cur].clone();
        path.push((h, m));
        cur = prev;
    }
    path.reverse();
    Ok(path)
}

/// The fundamental circuit of non-forest edge `e`, traversing `e` from its
/// tail to its head in `d`.
pub fn fundamental_circuit(d: &DirectedGraph, t: &MaximalForest, e: &str) -> Result<ClosedWalk> {
    let g = d.underlying();
    if t.contains(e) {
        return Err(Error::Contract(format!("`{e}` is a forest edge")));
    }
    let (tail, head) = (d.tail(e)?.to_string(), d.head(e)?.to_string());
    let path = forest_path(g, t, g.vertex_of(&head)?, g.vertex_of(&tail)?)?;
    let mut steps = Vec::new();
    let mut inbound = head;
    for (leave, arrive) in path {
        steps.push(DirectedTransition::new(inbound, leave));
        inbound = arrive;
    }
    steps.push(DirectedTransition::new(inbound, tail));
    Ok(ClosedWalk::new(steps))
}

/// Fundamental circuits `C_{e}` of the non-forest edges, each traversing
/// `e` along `d`.
pub fn strictly_fundamental_basis(d: &DirectedGraph, t: &MaximalForest) -> Result<WalkFamily> {
    strictly_fundamental_basis_with(d, t, &BTreeSet::new())
}

/// As [`strictly_fundamental_basis`], with the circuits of the edges in
/// `reversed` oriented against their edge instead.
pub fn strictly_fundamental_basis_with(
    d: &DirectedGraph,
    t: &MaximalForest,
    reversed: &BTreeSet<String>,
) -> Result<WalkFamily> {
    let g = d.underlying();
    let walks = g
        .edge_ids()
        .filter(|e| !t.contains(e))
        .map(|e| {
            let w = fundamental_circuit(d, t, e)?;
            let w = if reversed.contains(e) { w.reversed() } else { w };
            Ok((format!("C_{e}"), w))
        })
        .collect::<Result<Vec<_>>>()?;
    WalkFamily::new(walks)
}

/// Why a vector is not the incidence vector of an oriented cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum CycleVectorRejection {
    UnknownEdge { edge: String },
    EntryOutOfRange { edge: String, value: String },
    NotInCycleSpace { vertex: String },
}

impl fmt::Display for CycleVectorRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UnknownEdge { edge } => write!(f, "unknown edge `{edge}`"),
            Self::EntryOutOfRange { edge, value } => {
                write!(f, "entry {value} at `{edge}` is not in {{-1, 0, 1}}")
            }
            Self::NotInCycleSpace { vertex } => {
                write!(f, "net flow at `{vertex}` is not zero")
            }
        }
    }
}

/// An oriented cycle `C` with `σ(D, C) = s`, built by tracing edges in the
/// direction their entry prescribes and closing a circuit whenever the trace
/// returns to its start vertex.
pub fn decompose_cycle_vector<T: Scalar>(
    d: &DirectedGraph,
    s: &BTreeMap<String, T>,
) -> std::result::Result<OrientedCycle, CycleVectorRejection> {
    let g = d.underlying();
    // Effective traversal (leave, arrive) for every edge in the support.
    let mut leave_at: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut flow: BTreeMap<String, i64> = g.vertices().map(|v| (v.to_string(), 0)).collect();
    for (e, v) in s {
        if !g.has_edge(e) {
            return Err(CycleVectorRejection::UnknownEdge { edge: e.clone() });
        }
        if v.is_zero() {
            continue;
        }
        let (tail, head) = (d.tail(e).expect("edge"), d.head(e).expect("edge"));
        let (from, to) = if *v == T::one() {
            (tail, head)
        } else if *v == -T::one() {
            (head, tail)
        } else {
            return Err(CycleVectorRejection::EntryOutOfRange {
                edge: e.clone(),
                value: v.to_string(),
            });
        };
        let (vf, vt) = (g.vertex_of(from).expect("known"), g.vertex_of(to).expect("known"));
        *flow.get_mut(vf).expect("vertex") += 1;
        *flow.get_mut(vt).expect("vertex") -= 1;
        leave_at.entry(vf.to_string()).or_default().insert(from.to_string());
    }
    if let Some((v, _)) = flow.iter().find(|(_, &f)| f != 0) {
        return Err(CycleVectorRejection::NotInCycleSpace { vertex: v.clone() });
    }
    let mut circuits = Vec::new();
    while let Some(start_v) = leave_at.iter().find(|(_, hs)| !hs.is_empty()).map(|(v, _)| v.clone()) {
        let first = leave_at
            .get_mut(&start_v)
            .expect("present")
            .pop_first()
            .expect("nonempty");
        let mut steps = Vec::new();
        let mut out = first.clone();
        loop {
            let arrive = g.mate(&out).expect("known").to_string();
            let v = g.vertex_of(&arrive).expect("known").to_string();
            if v == start_v {
                steps.push(DirectedTransition::new(arrive, first.clone()));
                break;
            }
            let next = leave_at
                .get_mut(&v)
                .and_then(BTreeSet::pop_first)
                .expect("balanced flow leaves every entered vertex");
            steps.push(DirectedTransition::new(arrive, next.clone()));
            out = next;
        }
        circuits.push(OrientedCircuit::new(g, ClosedWalk::new(steps)).expect("trail is a circuit"));
    }
    Ok(OrientedCycle::new(g, circuits).expect("circuits use disjoint edges"))
}

/// `σ(D, C)` of an oriented cycle, as counts per edge.
pub fn cycle_incidence(d: &DirectedGraph, c: &OrientedCycle) -> Result<BTreeMap<String, i64>> {
    let mut total: BTreeMap<String, i64> = d.underlying().edge_ids().map(|e| (e.to_string(), 0)).collect();
    for circuit in c.circuits() {
        for (e, v) in incidence_counts(d, circuit.walk())? {
            *total.get_mut(&e).expect("edge") += v;
        }
    }
    Ok(total)
}

fn check_cycle_basis(d: &DirectedGraph, basis: &WalkFamily) -> Result<Matrix> {
    let g = d.underlying();
    let cm = cycle_matrix::<BigRational>(d, basis)?.matrix;
    let dim = g.edge_count() + g.component_count() - g.vertex_count();
    if basis.len() != dim {
        return Err(Error::NotCycleBasis(format!(
            "{} walks, cycle space has dimension {dim}",
            basis.len()
        )));
    }
    if cm.rank() != dim {
        return Err(Error::NotCycleBasis("incidence vectors are dependent".into()));
    }
    Ok(cm)
}

/// True iff removing the columns of a maximal forest from the cycle matrix
/// leaves a unimodular matrix.
pub fn is_integral_cycle_basis(d: &DirectedGraph, basis: &WalkFamily) -> Result<bool> {
    let g = d.underlying();
    let cm = check_cycle_basis(d, basis)?;
    let t = maximal_forest(g);
    let cols: Vec<&str> = g.edge_ids().filter(|e| !t.contains(e)).collect();
    cm.restrict_columns(&cols)?.is_unimodular()
}

/// Definitional check: every fundamental-circuit vector (for the greedy
/// forest) is an integer combination of the basis vectors.
pub fn spans_fundamental_circuits_integrally(d: &DirectedGraph, basis: &WalkFamily) -> Result<bool> {
    let cm = check_cycle_basis(d, basis)?;
    let t = maximal_forest(d.underlying());
    let fund = strictly_fundamental_basis(d, &t)?;
    for (_, w) in fund.iter() {
        let target: BTreeMap<String, BigRational> = incidence_counts(d, w)?
            .into_iter()
            .map(|(e, c)| (e, BigRational::from_i64(c)))
            .collect();
        match cm.solve_left(&target)? {
            Some(lambda) if lambda.values().all(|x| x.is_integer()) => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// True iff `e_base` has exactly one edge in every component.
pub fn is_based(g: &HalfEdgeGraph, e_base: &BTreeSet<String>) -> Result<bool> {
    let comps = g.connected_components();
    let mut hits = vec![0usize; comps.len()];
    for e in e_base {
        let (u, _) = g.endpoints(e)?;
        let i = comps.iter().position(|c| c.contains(u)).expect("vertex in a component");
        hits[i] += 1;
    }
    Ok(hits.iter().all(|&h| h == 1))
}

/// The least edge of every component.
pub fn default_e_base(g: &HalfEdgeGraph) -> BTreeSet<String> {
    g.connected_components()
        .iter()
        .filter_map(|c| {
            g.edge_ids()
                .find(|e| c.contains(g.endpoints(e).expect("edge").0))
                .map(str::to_string)
        })
        .collect()
}

/// Maximal forest obtained by removing the based edges and, per vertex `v`,
/// the edge `R(v)` through which the Euler circuit arrives at `v` for the
/// second time when started in the middle of the based edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BestForest {
    pub forest: MaximalForest,
    /// Vertex to second-arrival edge.
    pub second_arrival_edge: BTreeMap<String, String>,
    /// Vertex to the half-edge of its second-arrival edge at that vertex.
    pub second_arrival_half_edge: BTreeMap<String, String>,
}

/// Each circuit rotated to start with the step entered through its based
/// edge, in circuit direction.
fn rotated_at_base(f: &HalfEdgeGraph, c: &EulerSystem, e_base: &BTreeSet<String>) -> Result<Vec<ClosedWalk>> {
    if !is_based(f, e_base)? {
        return Err(Error::NotBased(format!(
            "{{{}}}",
            e_base.iter().cloned().collect::<Vec<_>>().join(", ")
        )));
    }
    c.circuits()
        .iter()
        .map(|w| {
            let k = w
                .steps()
                .iter()
                .position(|s| f.edge_of(&s.0).map(|e| e_base.contains(e)).unwrap_or(false))
                .ok_or_else(|| Error::NotBased("circuit avoids every based edge".into()))?;
            Ok(w.rotated(k))
        })
        .collect()
}

pub fn best_spanning_forest(f: &HalfEdgeGraph, c: &EulerSystem, e_base: &BTreeSet<String>) -> Result<BestForest> {
    let mut r = BTreeMap::new();
    let mut h = BTreeMap::new();
    for w in rotated_at_base(f, c, e_base)? {
        let mut seen = BTreeSet::new();
        for s in w.steps() {
            let v = f.vertex_of(&s.0)?.to_string();
            if !seen.insert(v.clone()) {
                r.insert(v.clone(), f.edge_of(&s.0)?.to_string());
                h.insert(v, s.0.clone());
            }
        }
    }
    let removed: BTreeSet<&String> = r.values().chain(e_base.iter()).collect();
    let forest = MaximalForest::new(
        f,
        f.edge_ids()
            .filter(|e| !removed.contains(&e.to_string()))
            .map(str::to_string),
    )?;
    Ok(BestForest {
        forest,
        second_arrival_edge: r,
        second_arrival_half_edge: h,
    })
}

/// `Γ_{E,C}`: for each vertex `v`, the circuit `C_{v}` that follows the Euler
/// circuit (started in the middle of the based edge) from its first visit of
/// `v` to its second and closes at `v`.
pub fn induced_circuits(f: &HalfEdgeGraph, c: &EulerSystem, e_base: &BTreeSet<String>) -> Result<WalkFamily> {
    let mut out = Vec::new();
    for w in rotated_at_base(f, c, e_base)? {
        let steps = w.steps();
        let mut first: BTreeMap<String, usize> = BTreeMap::new();
        for (j, s) in steps.iter().enumerate() {
            let v = f.vertex_of(&s.0)?.to_string();
            match first.get(&v) {
                None => {
                    first.insert(v, j);
                }
                Some(&i) => {
                    let mut seg = vec![DirectedTransition::new(steps[j].0.clone(), steps[i].1.clone())];
                    seg.extend(steps[i + 1..j].iter().cloned());
                    out.push((format!("C_{v}"), ClosedWalk::new(seg)));
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    WalkFamily::new(out)
}

/// A cycle on the same edges as `c` whose projection onto `Tch(P)` is a
/// cycle: at every vertex where `c` uses all four half-edges it is rerouted
/// along the transition of `P`. Circuits of the result start at their least
/// half-edge and follow its edge's first traversal by `c`.
pub fn align_cycle_to_partition(f: &HalfEdgeGraph, p: &CircuitPartition, c: &OrientedCycle) -> Result<OrientedCycle> {
    let mut partner: BTreeMap<String, String> = BTreeMap::new();
    let mut uses: BTreeMap<String, usize> = BTreeMap::new();
    let mut direction: BTreeMap<String, String> = BTreeMap::new();
    for circuit in c.circuits() {
        for s in circuit.walk().steps() {
            partner.insert(s.0.clone(), s.1.clone());
            partner.insert(s.1.clone(), s.0.clone());
            *uses.entry(f.vertex_of(&s.0)?.to_string()).or_default() += 2;
        }
        for (from, _) in circuit.walk().traversals() {
            direction.insert(f.edge_of(&from)?.to_string(), from);
        }
    }
    for (v, n) in &uses {
        if *n == 4 {
            for s in p.transversal().get(v)?.pairs() {
                let [a, b] = s.half_edges();
                partner.insert(a.clone(), b.clone());
                partner.insert(b.clone(), a.clone());
            }
        }
    }
    let mut circuits = Vec::new();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let heads: Vec<String> = partner.keys().cloned().collect();
    for h0 in heads {
        if seen.contains(&h0) {
            continue;
        }
        // Leave through `h0` if that is how `c` first traverses its edge.
        let e = f.edge_of(&h0)?.to_string();
        let leave_first = direction.get(&e) == Some(&h0);
        let start_out = if leave_first { h0.clone() } else { partner[&h0].clone() };
        let mut steps = Vec::new();
        let mut out = start_out.clone();
        loop {
            let arrive = f.mate(&out)?.to_string();
            let next = partner[&arrive].clone();
            seen.insert(arrive.clone());
            seen.insert(next.clone());
            steps.push(DirectedTransition::new(arrive, next.clone()));
            if next == start_out {
                break;
            }
            out = next;
        }
        circuits.push(OrientedCircuit::new(f, ClosedWalk::new(steps))?);
    }
    OrientedCycle::new(f, circuits)
}

/// Per-edge traversal multiplicity of a walk family member, ignoring
/// direction.
pub fn edge_multiset(g: &HalfEdgeGraph, w: &ClosedWalk) -> Result<BTreeMap<String, usize>> {
    let mut m = BTreeMap::new();
    for (from, _) in w.traversals() {
        *m.entry(g.edge_of(&from)?.to_string()).or_default() += 1;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::four_regular::partition_from_transversal;
    use crate::{Matrix, Rational};

    #[test]
    fn incidence_matrix_matches_printed_transpose() {
        let f = fixtures::running_example();
        let m: Matrix = incidence_matrix(&f.directed).unwrap();
        assert_eq!(m.transpose(), fixtures::incidence_transpose().to_matrix());
    }

    #[test]
    fn loop_columns_are_zero() {
        let d = fixtures::one_vertex_directed();
        let m: Matrix = incidence_matrix(&d).unwrap();
        assert!(m.is_zero());
    }

    #[test]
    fn greedy_forest_of_running_example() {
        let f = fixtures::running_example();
        let t = maximal_forest(&f.graph);
        assert_eq!(
            t.edges().iter().map(String::as_str).collect::<Vec<_>>(),
            ["e1", "e2", "e3"]
        );
    }

    #[test]
    fn strictly_fundamental_basis_matches_print() {
        let f = fixtures::running_example();
        let t = maximal_forest(&f.graph);
        let b = strictly_fundamental_basis(&f.directed, &t).unwrap();
        assert_eq!(b.len(), 5);
        let cm: Matrix = cycle_matrix(&f.directed, &b).unwrap().matrix;
        assert_eq!(cm, fixtures::fundamental_cycle_matrix().to_matrix());
        assert_eq!(cm.rank(), 5);
        assert!(is_integral_cycle_basis(&f.directed, &b).unwrap());
        assert!(spans_fundamental_circuits_integrally(&f.directed, &b).unwrap());
    }

    #[test]
    fn cycle_rows_lie_in_incidence_nullspace() {
        let f = fixtures::running_example();
        let b = strictly_fundamental_basis(&f.directed, &maximal_forest(&f.graph)).unwrap();
        let cm: Matrix = cycle_matrix(&f.directed, &b).unwrap().matrix;
        let inc: Matrix = incidence_matrix(&f.directed).unwrap();
        assert!(inc.multiply(&cm.transpose()).unwrap().is_zero());
    }

    #[test]
    fn scaled_row_is_not_integral() {
        let f = fixtures::parallel_edges();
        let t = maximal_forest(&f.graph);
        let b = strictly_fundamental_basis(&f.directed, &t).unwrap();
        let (k, w) = b.iter().next().map(|(k, w)| (k.to_string(), w.clone())).unwrap();
        let doubled = ClosedWalk::new(w.steps().iter().chain(w.steps()).cloned().collect());
        let mut walks: Vec<(String, ClosedWalk)> = b.iter().map(|(k, w)| (k.to_string(), w.clone())).collect();
        walks[0] = (k, doubled);
        let b2 = WalkFamily::new(walks).unwrap();
        assert!(!is_integral_cycle_basis(&f.directed, &b2).unwrap());
        assert!(!spans_fundamental_circuits_integrally(&f.directed, &b2).unwrap());
    }

    #[test]
    fn decomposition_round_trip_and_rejection() {
        let q = |m: &BTreeMap<String, i64>| -> BTreeMap<String, Rational> {
            m.iter().map(|(e, v)| (e.clone(), Rational::from_i64(*v))).collect()
        };
        let f = fixtures::running_example();
        let w = fixtures::triangle_walk();
        let s = incidence_counts(&f.directed, &w).unwrap();
        let c = decompose_cycle_vector(&f.directed, &q(&s)).unwrap();
        assert_eq!(cycle_incidence(&f.directed, &c).unwrap(), s);
        let zero: BTreeMap<String, Rational> = BTreeMap::new();
        assert!(decompose_cycle_vector(&f.directed, &zero).unwrap().is_empty());
        let doubled: BTreeMap<String, i64> = s.iter().map(|(e, v)| (e.clone(), 2 * v)).collect();
        assert!(matches!(
            decompose_cycle_vector(&f.directed, &q(&doubled)),
            Err(CycleVectorRejection::EntryOutOfRange { .. })
        ));
        let one: BTreeMap<String, i64> = [("e1".to_string(), 1)].into();
        assert!(matches!(
            decompose_cycle_vector(&f.directed, &q(&one)),
            Err(CycleVectorRejection::NotInCycleSpace { .. })
        ));
    }

    #[test]
    fn best_forest_of_running_example() {
        let f = fixtures::running_example();
        let e: BTreeSet<String> = ["e8".to_string()].into();
        let best = best_spanning_forest(&f.graph, &f.euler, &e).unwrap();
        let r: Vec<(&str, &str)> = best
            .second_arrival_edge
            .iter()
            .map(|(v, e)| (v.as_str(), e.as_str()))
            .collect();
        assert_eq!(r, [("a", "e5"), ("b", "e4"), ("c", "e6"), ("d", "e7")]);
        assert_eq!(best.forest.edges().len(), 3);
        assert!(best_spanning_forest(&f.graph, &f.euler, &BTreeSet::new()).is_err());
    }

    #[test]
    fn single_vertex_best_forest_is_empty() {
        let g = fixtures::one_vertex_two_loops();
        let c = crate::euler::euler_system(&g, None).unwrap();
        let best = best_spanning_forest(&g, &c, &["l1".to_string()].into()).unwrap();
        assert!(best.forest.is_empty());
    }

    #[test]
    fn induced_circuits_match_print_and_span_integrally() {
        let f = fixtures::running_example();
        let e: BTreeSet<String> = ["e8".to_string()].into();
        let gamma = induced_circuits(&f.graph, &f.euler, &e).unwrap();
        let cm: Matrix = cycle_matrix(&f.directed, &gamma).unwrap().matrix;
        assert_eq!(cm, fixtures::induced_cycle_matrix().to_matrix());
        let minus = f.graph.without_edges(&["e8"]).unwrap();
        let d = DirectedGraph::new(
            minus.clone(),
            f.directed
                .orientation()
                .iter()
                .filter(|(e, _)| *e != "e8")
                .map(|(e, o)| (e.clone(), o.clone()))
                .collect(),
        )
        .unwrap();
        assert!(is_integral_cycle_basis(&d, &gamma).unwrap());
    }

    #[test]
    fn aligned_euler_circuit_projects_to_a_cycle() {
        let f = fixtures::running_example();
        let sys = crate::four_regular::all_transitions(&f.graph).unwrap();
        for t in crate::four_regular::all_transversals(&sys) {
            let p = partition_from_transversal(&f.graph, &t).unwrap();
            let c = OrientedCycle::new(
                &f.graph,
                vec![OrientedCircuit::new(&f.graph, f.euler.circuits()[0].clone()).unwrap()],
            )
            .unwrap();
            let aligned = align_cycle_to_partition(&f.graph, &p, &c).unwrap();
            let tch = crate::four_regular::touch_graph(&p);
            let mut edges = BTreeMap::new();
            let mut tch_edges = BTreeMap::new();
            for circuit in aligned.circuits() {
                for (e, n) in edge_multiset(&f.graph, circuit.walk()).unwrap() {
                    *edges.entry(e).or_insert(0) += n;
                }
                let proj = project_walk(&f.graph, &p, circuit.walk()).unwrap();
                for (e, n) in edge_multiset(tch.graph(), &proj).unwrap() {
                    *tch_edges.entry(e).or_insert(0) += n;
                }
            }
            assert_eq!(edges.len(), 8);
            assert!(edges.values().all(|&n| n == 1));
            assert!(tch_edges.values().all(|&n| n == 1));
        }
    }
}
