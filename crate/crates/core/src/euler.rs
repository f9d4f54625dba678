//! Euler systems of 4-regular graphs and the classification of transitions
//! as `φ`, `χ`, `ψ` relative to them.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::four_regular::{Transition, TransitionSystem};
use crate::graph::{ClosedWalk, DirectedGraph, DirectedTransition, HalfEdgeGraph, OrientedCircuit, SingleTransition};

/// How a transition at `v` relates to the Euler circuit through `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// The transition the circuit takes.
    Phi,
    /// Pairs the entry of one visit with the exit of the other.
    Chi,
    /// Pairs the two entries and the two exits.
    Psi,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::Phi, Kind::Chi, Kind::Psi];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Phi => "phi",
            Kind::Chi => "chi",
            Kind::Psi => "psi",
        }
    }
}

/// One oriented Eulerian circuit per connected component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct EulerSystem {
    circuits: Vec<ClosedWalk>,
}

impl EulerSystem {
    /// Checks that each walk is an oriented circuit covering exactly the
    /// half-edges of one component, one walk per component.
    pub fn new(g: &HalfEdgeGraph, circuits: Vec<ClosedWalk>) -> Result<Self> {
        g.require_four_regular()?;
        let comps = g.connected_components();
        let comp_of: BTreeMap<&str, usize> = comps
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().map(move |v| (v.as_str(), i)))
            .collect();
        let mut covered = vec![false; comps.len()];
        for w in &circuits {
            let c = OrientedCircuit::new(g, w.clone())?;
            let first = g.vertex_of(c.walk().steps()[0].inbound())?;
            let i = comp_of[first];
            if covered[i] {
                return Err(Error::InvalidWalk("two circuits for one component".into()));
            }
            covered[i] = true;
            let size: usize = comps[i].iter().map(|v| g.degree(v).expect("vertex")).sum();
            if c.walk().len() * 2 != size {
                return Err(Error::InvalidWalk("circuit is not Eulerian".into()));
            }
        }
        if covered.iter().any(|c| !c) {
            return Err(Error::InvalidWalk("component without an Euler circuit".into()));
        }
        Ok(Self { circuits })
    }

    pub fn circuits(&self) -> &[ClosedWalk] {
        &self.circuits
    }

    pub fn reversed(&self) -> Self {
        Self {
            circuits: self.circuits.iter().map(ClosedWalk::reversed).collect(),
        }
    }

    /// Edges directed along the circuits.
    pub fn directed_version(&self, g: &HalfEdgeGraph) -> Result<DirectedGraph> {
        DirectedGraph::along_walks(g.clone(), &self.circuits)
    }

    /// The two steps `(h1, h2)`, `(h1', h2')` through `v`, in circuit order.
    pub fn visits(&self, g: &HalfEdgeGraph, v: &str) -> Result<[DirectedTransition; 2]> {
        for w in &self.circuits {
            let at: Vec<&DirectedTransition> = w
                .steps()
                .iter()
                .filter(|s| g.vertex_of(&s.0).map(|u| u == v).unwrap_or(false))
                .collect();
            if let [a, b] = at[..] {
                return Ok([a.clone(), b.clone()]);
            }
        }
        Err(Error::unknown("vertex", v))
    }

    /// `(φ_C(v), χ_C(v), ψ_C(v))`.
    pub fn phi_chi_psi(&self, g: &HalfEdgeGraph, v: &str) -> Result<(Transition, Transition, Transition)> {
        let [DirectedTransition(h1, h2), DirectedTransition(k1, k2)] = self.visits(g, v)?;
        let phi = Transition::new(
            v,
            SingleTransition::new(h1.as_str(), h2.as_str()),
            SingleTransition::new(k1.as_str(), k2.as_str()),
        );
        let chi = Transition::new(
            v,
            SingleTransition::new(h1.as_str(), k2.as_str()),
            SingleTransition::new(k1.as_str(), h2.as_str()),
        );
        let psi = Transition::new(
            v,
            SingleTransition::new(h1.as_str(), k1.as_str()),
            SingleTransition::new(h2.as_str(), k2.as_str()),
        );
        Ok((phi, chi, psi))
    }

    /// Kind of every transition, keyed by transition label.
    pub fn classification(&self, g: &HalfEdgeGraph) -> Result<BTreeMap<String, (String, Kind)>> {
        let mut out = BTreeMap::new();
        for v in g.vertices() {
            let (phi, chi, psi) = self.phi_chi_psi(g, v)?;
            out.insert(phi.label(), (v.to_string(), Kind::Phi));
            out.insert(chi.label(), (v.to_string(), Kind::Chi));
            out.insert(psi.label(), (v.to_string(), Kind::Psi));
        }
        Ok(out)
    }

    /// Transition label to readable name `phi(v)`, `chi(v)`, `psi(v)`.
    pub fn names(&self, g: &HalfEdgeGraph) -> Result<BTreeMap<String, String>> {
        Ok(self
            .classification(g)?
            .into_iter()
            .map(|(l, (v, k))| (l, format!("{}({v})", k.name())))
            .collect())
    }

    /// Transitions ordered kind-major (`φ`, then `χ`, then `ψ`), vertices in
    /// label order within each kind.
    pub fn ordered_transitions(&self, g: &HalfEdgeGraph) -> Result<Vec<Transition>> {
        let mut by_kind: BTreeMap<(Kind, String), Transition> = BTreeMap::new();
        for v in g.vertices() {
            let (phi, chi, psi) = self.phi_chi_psi(g, v)?;
            by_kind.insert((Kind::Phi, v.to_string()), phi);
            by_kind.insert((Kind::Chi, v.to_string()), chi);
            by_kind.insert((Kind::Psi, v.to_string()), psi);
        }
        Ok(by_kind.into_values().collect())
    }

    /// Vertices at the successive steps of each circuit.
    pub fn vertex_words(&self, g: &HalfEdgeGraph) -> Result<Vec<Vec<String>>> {
        self.circuits
            .iter()
            .map(|w| {
                w.steps()
                    .iter()
                    .map(|s| g.vertex_of(&s.0).map(str::to_string))
                    .collect()
            })
            .collect()
    }

    /// Skew classes `[φ, χ, ψ]` of every vertex, as transitions of `system`.
    pub fn classes(&self, g: &HalfEdgeGraph, system: &TransitionSystem) -> Result<Vec<[Transition; 3]>> {
        system
            .vertices()
            .map(|v| {
                let (phi, chi, psi) = self.phi_chi_psi(g, v)?;
                Ok([phi, chi, psi])
            })
            .collect()
    }
}

/// An Euler system by greedy trail splicing. The trail of each component
/// starts by leaving through `seed` (if it lies in that component) or the
/// least half-edge of the component, always leaves a vertex through its least
/// unused half-edge, and splices each closed subtrail in at the first step
/// of the current trail whose vertex still has unused half-edges.
///
/// With the default seed the running example yields the circuit
/// e1, e2, ..., e8.
pub fn euler_system(f: &HalfEdgeGraph, seed: Option<&str>) -> Result<EulerSystem> {
    f.require_four_regular()?;
    if let Some(s) = seed {
        if !f.has_half_edge(s) {
            return Err(Error::unknown("half-edge", s));
        }
    }
    let mut used: BTreeSet<String> = BTreeSet::new();
    let mut circuits = Vec::new();
    for comp in f.connected_components() {
        let mut hs: Vec<&str> = comp
            .iter()
            .flat_map(|v| f.half_edges_at(v).expect("vertex").iter().map(String::as_str))
            .collect();
        hs.sort();
        if hs.is_empty() {
            continue;
        }
        let start = seed.filter(|s| hs.binary_search(s).is_ok()).unwrap_or(hs[0]);
        let mut steps = trail_from(f, start, &mut used)?;
        loop {
            let next = steps.iter().enumerate().find_map(|(i, s)| {
                let v = f.vertex_of(&s.0).expect("known");
                least_unused(f, v, &used).map(|h| (i, h.to_string()))
            });
            let Some((i, h)) = next else { break };
            let sub = trail_from(f, &h, &mut used)?;
            let DirectedTransition(a, b) = steps[i].clone();
            let last = sub.last().expect("nonempty").0.clone();
            let mut spliced = vec![DirectedTransition::new(a, h.clone())];
            spliced.extend(sub[..sub.len() - 1].iter().cloned());
            spliced.push(DirectedTransition::new(last, b));
            steps.splice(i..=i, spliced);
        }
        circuits.push(ClosedWalk::new(steps));
    }
    EulerSystem::new(f, circuits)
}

fn least_unused<'a>(f: &'a HalfEdgeGraph, v: &str, used: &BTreeSet<String>) -> Option<&'a str> {
    f.half_edges_at(v)
        .ok()?
        .iter()
        .filter(|h| !used.contains(*h))
        .min()
        .map(String::as_str)
}

/// Closed trail leaving through `start`; the final step `(last, start)`
/// closes it.
fn trail_from(f: &HalfEdgeGraph, start: &str, used: &mut BTreeSet<String>) -> Result<Vec<DirectedTransition>> {
    let mut steps = Vec::new();
    let mut out = start.to_string();
    used.insert(out.clone());
    loop {
        let arrive = f.mate(&out)?.to_string();
        used.insert(arrive.clone());
        let v = f.vertex_of(&arrive)?;
        match least_unused(f, v, used) {
            Some(h) => {
                let h = h.to_string();
                used.insert(h.clone());
                steps.push(DirectedTransition::new(arrive, h.clone()));
                out = h;
            }
            None => {
                if v != f.vertex_of(start)? {
                    return Err(Error::Contract("trail stuck away from its start".into()));
                }
                steps.push(DirectedTransition::new(arrive, start));
                return Ok(steps);
            }
        }
    }
}

/// The 4-regular graph and Euler circuit read off a double occurrence word.
/// Edge `e{i}` runs from position `i` to position `i + 1` (cyclically), with
/// tail half-edge `e{i}+` and head half-edge `e{i}-`.
pub fn from_word<S: AsRef<str>>(word: &[S]) -> Result<(HalfEdgeGraph, EulerSystem)> {
    let n = word.len();
    if n == 0 {
        return Ok((HalfEdgeGraph::empty(), EulerSystem { circuits: Vec::new() }));
    }
    let mut count: BTreeMap<&str, usize> = BTreeMap::new();
    for w in word {
        *count.entry(w.as_ref()).or_default() += 1;
    }
    if let Some((v, c)) = count.iter().find(|(_, &c)| c != 2) {
        return Err(Error::Contract(format!("`{v}` occurs {c} times in the word")));
    }
    let edges: Vec<(String, [String; 2])> = (0..n)
        .map(|i| (format!("e{i}"), [format!("e{i}+"), format!("e{i}-")]))
        .collect();
    let mut incidence = Vec::new();
    for i in 0..n {
        incidence.push((format!("e{i}+"), word[i].as_ref().to_string()));
        incidence.push((format!("e{i}-"), word[(i + 1) % n].as_ref().to_string()));
    }
    let g = HalfEdgeGraph::new(count.keys().copied(), edges, incidence)?;
    let steps = (0..n)
        .map(|i| DirectedTransition::new(format!("e{}-", (i + n - 1) % n), format!("e{i}+")))
        .collect();
    let c = EulerSystem::new(&g, vec![ClosedWalk::new(steps)])?;
    Ok((g, c))
}
