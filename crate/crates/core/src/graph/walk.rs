//! Closed walks as cyclic sequences of directed single transitions, and the
//! circuits and cycles built from them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use super::HalfEdgeGraph;
use crate::error::{Error, Result};

/// An unordered pair of half-edges at a common vertex, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SingleTransition([String; 2]);

impl SingleTransition {
    pub fn new(a: impl Into<String>, b: impl Into<String>) -> Self {
        let (a, b) = (a.into(), b.into());
        if a <= b {
            Self([a, b])
        } else {
            Self([b, a])
        }
    }

    pub fn half_edges(&self) -> &[String; 2] {
        &self.0
    }

    pub fn contains(&self, h: &str) -> bool {
        self.0[0] == h || self.0[1] == h
    }

    /// The other half-edge of the pair.
    pub fn partner(&self, h: &str) -> Option<&str> {
        if self.0[0] == h {
            Some(&self.0[1])
        } else if self.0[1] == h {
            Some(&self.0[0])
        } else {
            None
        }
    }

    /// Label used as a touch-graph half-edge id.
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for SingleTransition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0[0], self.0[1])
    }
}

impl Serialize for SingleTransition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SingleTransition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[String; 2]>::deserialize(d)?;
        Ok(Self::new(a, b))
    }
}

/// A pass through a vertex: arrive via the first half-edge, leave via the
/// second. Both may coincide (the walk turns back along the same edge).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DirectedTransition(pub String, pub String);

impl DirectedTransition {
    pub fn new(inbound: impl Into<String>, outbound: impl Into<String>) -> Self {
        Self(inbound.into(), outbound.into())
    }

    pub fn inbound(&self) -> &str {
        &self.0
    }

    pub fn outbound(&self) -> &str {
        &self.1
    }

    pub fn reversed(&self) -> Self {
        Self(self.1.clone(), self.0.clone())
    }

    pub fn unoriented(&self) -> SingleTransition {
        SingleTransition::new(self.0.clone(), self.1.clone())
    }
}

/// A closed walk with no distinguished start: equality and hashing are
/// modulo cyclic shift of the steps.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClosedWalk {
    steps: Vec<DirectedTransition>,
}

impl ClosedWalk {
    pub fn new(steps: Vec<DirectedTransition>) -> Self {
        Self { steps }
    }

    pub fn from_pairs<S: AsRef<str>>(pairs: &[(S, S)]) -> Self {
        Self::new(
            pairs
                .iter()
                .map(|(a, b)| DirectedTransition::new(a.as_ref(), b.as_ref()))
                .collect(),
        )
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn steps(&self) -> &[DirectedTransition] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Edge traversals `(from, to)`: leave via the outbound half-edge of a
    /// step, arrive via the inbound half-edge of the next one.
    pub fn traversals(&self) -> Vec<(String, String)> {
        let n = self.steps.len();
        (0..n)
            .map(|i| (self.steps[i].1.clone(), self.steps[(i + 1) % n].0.clone()))
            .collect()
    }

    /// The walk in the opposite direction.
    pub fn reversed(&self) -> Self {
        Self::new(self.steps.iter().rev().map(DirectedTransition::reversed).collect())
    }

    /// The same walk started at step `k`.
    pub fn rotated(&self, k: usize) -> Self {
        let mut steps = self.steps.clone();
        if !steps.is_empty() {
            let k = k % steps.len();
            steps.rotate_left(k);
        }
        Self::new(steps)
    }

    /// Lexicographically least rotation of the steps.
    pub fn canonical_steps(&self) -> Vec<DirectedTransition> {
        least_rotation(&self.steps)
    }

    /// All half-edges, in order of appearance.
    pub fn half_edges(&self) -> impl Iterator<Item = &str> + '_ {
        self.steps.iter().flat_map(|s| [s.0.as_str(), s.1.as_str()])
    }
}

impl PartialEq for ClosedWalk {
    fn eq(&self, other: &Self) -> bool {
        self.steps.len() == other.steps.len() && self.canonical_steps() == other.canonical_steps()
    }
}

impl Eq for ClosedWalk {}

impl Hash for ClosedWalk {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical_steps().hash(state);
    }
}

fn least_rotation<T: Ord + Clone>(items: &[T]) -> Vec<T> {
    let n = items.len();
    (0..n.max(1))
        .map(|k| {
            let mut v = items.to_vec();
            if n > 0 {
                v.rotate_left(k);
            }
            v
        })
        .min()
        .unwrap_or_default()
}

/// True iff `w` alternates single transitions and edges cyclically in `g`.
/// The empty walk is closed. Errors on half-edges unknown to `g`.
pub fn is_closed_walk(g: &HalfEdgeGraph, w: &ClosedWalk) -> Result<bool> {
    for h in w.half_edges() {
        if !g.has_half_edge(h) {
            return Err(Error::unknown("half-edge", h));
        }
    }
    for s in w.steps() {
        if g.vertex_of(&s.0)? != g.vertex_of(&s.1)? {
            return Ok(false);
        }
    }
    for (from, to) in w.traversals() {
        if from == to || g.mate(&from)? != to {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A nonempty closed walk using each half-edge at most once.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrientedCircuit(ClosedWalk);

impl OrientedCircuit {
    pub fn new(g: &HalfEdgeGraph, walk: ClosedWalk) -> Result<Self> {
        if walk.is_empty() {
            return Err(Error::InvalidWalk("an oriented circuit is nonempty".into()));
        }
        if !is_closed_walk(g, &walk)? {
            return Err(Error::InvalidWalk("not a closed walk".into()));
        }
        let mut seen = BTreeSet::new();
        for h in walk.half_edges() {
            if !seen.insert(h) {
                return Err(Error::InvalidWalk(format!("half-edge `{h}` used twice")));
            }
        }
        Ok(Self(walk))
    }

    pub fn walk(&self) -> &ClosedWalk {
        &self.0
    }

    pub fn into_walk(self) -> ClosedWalk {
        self.0
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.reversed())
    }
}

/// Oriented circuits traversing pairwise disjoint edge sets.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrientedCycle {
    circuits: Vec<OrientedCircuit>,
}

impl OrientedCycle {
    pub fn new(g: &HalfEdgeGraph, circuits: Vec<OrientedCircuit>) -> Result<Self> {
        let mut used: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, c) in circuits.iter().enumerate() {
            for h in c.walk().half_edges() {
                let e = g.edge_of(h)?;
                if let Some(&j) = used.get(e) {
                    if j != i {
                        return Err(Error::InvalidWalk(format!("edge `{e}` traversed by two circuits")));
                    }
                }
                used.insert(e, i);
            }
        }
        Ok(Self { circuits })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn circuits(&self) -> &[OrientedCircuit] {
        &self.circuits
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }
}

/// A closed walk with orientation forgotten: equal modulo rotation and
/// reflection.
#[derive(Debug, Clone, Eq)]
pub struct UnorientedWalk {
    steps: Vec<SingleTransition>,
}

impl UnorientedWalk {
    pub fn steps(&self) -> &[SingleTransition] {
        &self.steps
    }

    fn canonical(&self) -> Vec<SingleTransition> {
        let forward = least_rotation(&self.steps);
        let mut rev = self.steps.clone();
        rev.reverse();
        forward.min(least_rotation(&rev))
    }
}

impl PartialEq for UnorientedWalk {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl Hash for UnorientedWalk {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical().hash(state);
    }
}

/// A circuit: the set of its single transitions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnorientedCircuit(pub BTreeSet<SingleTransition>);

/// A cycle: a set of circuits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle(pub BTreeSet<UnorientedCircuit>);

/// Replacing every directed single transition by its unordered pair.
pub trait ForgetOrientation {
    type Output;
    fn forget_orientation(&self) -> Self::Output;
}

impl ForgetOrientation for DirectedTransition {
    type Output = SingleTransition;
    fn forget_orientation(&self) -> SingleTransition {
        self.unoriented()
    }
}

impl ForgetOrientation for ClosedWalk {
    type Output = UnorientedWalk;
    fn forget_orientation(&self) -> UnorientedWalk {
        UnorientedWalk {
            steps: self.steps.iter().map(DirectedTransition::unoriented).collect(),
        }
    }
}

impl ForgetOrientation for OrientedCircuit {
    type Output = UnorientedCircuit;
    fn forget_orientation(&self) -> UnorientedCircuit {
        UnorientedCircuit(self.0.steps.iter().map(DirectedTransition::unoriented).collect())
    }
}

impl ForgetOrientation for OrientedCycle {
    type Output = Cycle;
    fn forget_orientation(&self) -> Cycle {
        Cycle(self.circuits.iter().map(|c| c.forget_orientation()).collect())
    }
}

pub fn forget_orientation<W: ForgetOrientation>(w: &W) -> W::Output {
    w.forget_orientation()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    fn one_vertex_walk() -> ClosedWalk {
        ClosedWalk::from_pairs(&[("h1", "h2"), ("h3", "h4")])
    }

    #[test]
    fn one_vertex_walk_is_closed() {
        let g = fixtures::one_vertex_two_loops();
        assert!(is_closed_walk(&g, &one_vertex_walk()).unwrap());
        assert!(is_closed_walk(&g, &ClosedWalk::empty()).unwrap());
        // h2 and h4 are not an edge.
        let broken = ClosedWalk::from_pairs(&[("h1", "h2"), ("h4", "h3")]);
        assert!(!is_closed_walk(&g, &broken).unwrap());
        let unknown = ClosedWalk::from_pairs(&[("h1", "zz")]);
        assert!(is_closed_walk(&g, &unknown).is_err());
    }

    #[test]
    fn running_example_walk_is_closed() {
        let f = fixtures::running_example().graph;
        assert!(is_closed_walk(&f, &fixtures::triangle_walk()).unwrap());
    }

    #[test]
    fn forgetting_orientation() {
        let s = DirectedTransition::new("h1", "h2");
        assert_eq!(forget_orientation(&s), SingleTransition::new("h2", "h1"));
        let w = one_vertex_walk();
        assert_eq!(w.forget_orientation(), w.reversed().forget_orientation());
        let g = fixtures::one_vertex_two_loops();
        let c = OrientedCircuit::new(&g, w).unwrap();
        assert_eq!(c.forget_orientation(), c.reversed().forget_orientation());
    }

    #[test]
    fn circuit_rejects_repeats() {
        let g = fixtures::one_vertex_two_loops();
        let twice = ClosedWalk::from_pairs(&[("h1", "h2"), ("h3", "h4"), ("h1", "h2"), ("h3", "h4")]);
        assert!(is_closed_walk(&g, &twice).unwrap());
        assert!(OrientedCircuit::new(&g, twice).is_err());
        assert!(OrientedCircuit::new(&g, ClosedWalk::empty()).is_err());
    }

    #[test]
    fn cycle_rejects_shared_edges() {
        let g = fixtures::one_vertex_two_loops();
        // The loop {h2, h3} entered at h3 and left at h2 is a one-step circuit.
        let a = OrientedCircuit::new(&g, ClosedWalk::from_pairs(&[("h3", "h2")])).unwrap();
        let b = OrientedCircuit::new(&g, ClosedWalk::from_pairs(&[("h1", "h4")])).unwrap();
        assert!(OrientedCycle::new(&g, vec![a.clone(), b]).is_ok());
        assert!(OrientedCycle::new(&g, vec![a.clone(), a]).is_err());
    }

    proptest! {
        #[test]
        fn rotation_preserves_equality(steps in prop::collection::vec((0u8..6, 0u8..6), 0..7), k in 0usize..10) {
            let w = ClosedWalk::new(steps.iter().map(|(a, b)| DirectedTransition::new(a.to_string(), b.to_string())).collect());
            let r = w.rotated(k);
            prop_assert_eq!(&w, &r);
            let mut hasher_a = std::collections::hash_map::DefaultHasher::new();
            let mut hasher_b = std::collections::hash_map::DefaultHasher::new();
            w.hash(&mut hasher_a);
            r.hash(&mut hasher_b);
            prop_assert_eq!(hasher_a.finish(), hasher_b.finish());
            prop_assert_eq!(w.forget_orientation(), r.reversed().forget_orientation());
        }
    }
}
