//! The Eulerian 3-matroid `Q(F)` of a 4-regular graph, interlacement graphs
//! and the comparison of `Z3` of an interlacement graph with `Q(F)`.
//!
//! For a transversal `T` with circuit partition `P`, `Q(F)[T]` is the
//! cographic matroid of the touch-graph `Tch(P)`, whose edges are the
//! transitions of `T`. A subset `X ⊆ T` therefore has rank
//! `|X| + c(F) - c(Tch(P) - X)`. A subtransversal is ranked inside the
//! transversal obtained by completing it with the least label of each
//! missing class; [`EulerianQ::extension_mismatch`] checks that the choice of
//! completion does not matter.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::z3::{ias_label, z3, LoopedSimpleGraph, BLOCKS};
use super::{Multimatroid, SkewPartition};
use crate::error::{Error, Result};
use crate::euler::{EulerSystem, Kind};
use crate::four_regular::{all_transitions, Transition};
use crate::graph::{DisjointSets, HalfEdgeGraph};

#[derive(Debug, Clone)]
pub struct EulerianQ {
    partition: SkewPartition,
    transitions: Vec<Vec<Transition>>,
    /// `pairs[class][element]`: the two single transitions as half-edge
    /// indices.
    pairs: Vec<Vec<[(usize, usize); 2]>>,
    mate: Vec<usize>,
    components: usize,
    completion: Vec<usize>,
}

/// `Q(F)` with transition labels as ground set, classes in vertex order.
pub fn q_f(f: &HalfEdgeGraph) -> Result<EulerianQ> {
    let system = all_transitions(f)?;
    let classes = system
        .vertices()
        .map(|v| {
            let ts = system.at(v).expect("vertex").to_vec();
            (ts.iter().map(Transition::label).collect(), ts)
        })
        .collect();
    EulerianQ::from_classes(f, classes)
}

/// `Q(F)` labeled `phi(v)`, `chi(v)`, `psi(v)` relative to `c`, each class
/// ordered `φ, χ, ψ`.
pub fn q_f_named(f: &HalfEdgeGraph, c: &EulerSystem) -> Result<EulerianQ> {
    f.require_four_regular()?;
    let classes = f
        .vertices()
        .map(|v| {
            let (phi, chi, psi) = c.phi_chi_psi(f, v)?;
            let labels = Kind::ALL.iter().map(|k| format!("{}({v})", k.name())).collect();
            Ok((labels, vec![phi, chi, psi]))
        })
        .collect::<Result<Vec<_>>>()?;
    EulerianQ::from_classes(f, classes)
}

/// An input completion that disagrees with the default one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionMismatch {
    pub subtransversal: Vec<String>,
    pub completion: Vec<String>,
    pub rank: usize,
    pub default_rank: usize,
}

impl EulerianQ {
    /// One class per vertex: labels and the three transitions there.
    pub fn from_classes(f: &HalfEdgeGraph, classes: Vec<(Vec<String>, Vec<Transition>)>) -> Result<Self> {
        f.require_four_regular()?;
        let halves: Vec<&str> = f.half_edges().collect();
        let index: BTreeMap<&str, usize> = halves.iter().enumerate().map(|(i, h)| (*h, i)).collect();
        let mate = halves.iter().map(|h| index[f.mate(h).expect("half-edge")]).collect();
        let mut seen = BTreeSet::new();
        let mut labels = Vec::new();
        let mut transitions = Vec::new();
        let mut pairs = Vec::new();
        for (ls, ts) in classes {
            if ls.len() != 3 || ts.len() != 3 {
                return Err(Error::Contract("each class needs three transitions".into()));
            }
            let v = ts[0].vertex().to_string();
            if !seen.insert(v.clone()) || ts.iter().any(|t| t.vertex() != v) {
                return Err(Error::Contract(format!("classes at vertex `{v}` are inconsistent")));
            }
            let at: BTreeSet<&str> = f.half_edges_at(&v)?.iter().map(String::as_str).collect();
            let mut ps = Vec::new();
            for t in &ts {
                let [a, b] = t.pairs();
                for h in a.half_edges().iter().chain(b.half_edges()) {
                    if !at.contains(h.as_str()) {
                        return Err(Error::Contract(format!("transition {t} is not at `{v}`")));
                    }
                }
                let ix = |s: &crate::graph::SingleTransition| {
                    let [x, y] = s.half_edges();
                    (index[x.as_str()], index[y.as_str()])
                };
                ps.push([ix(a), ix(b)]);
            }
            labels.push(ls);
            transitions.push(ts);
            pairs.push(ps);
        }
        if seen.len() != f.vertex_count() {
            return Err(Error::Contract("not every vertex has a class".into()));
        }
        let partition = SkewPartition::new(labels)?;
        let completion = partition
            .classes()
            .iter()
            .map(|c| (0..c.len()).min_by(|&a, &b| c[a].cmp(&c[b])).expect("nonempty"))
            .collect();
        Ok(Self {
            partition,
            transitions,
            pairs,
            mate,
            components: f.component_count(),
            completion,
        })
    }

    pub fn transition(&self, label: &str) -> Result<&Transition> {
        let (i, j) = self.partition.locate(label)?;
        Ok(&self.transitions[i][j])
    }

    /// Label of a transition, by its pairing.
    pub fn label_of(&self, t: &Transition) -> Result<&str> {
        for (i, ts) in self.transitions.iter().enumerate() {
            if let Some(j) = ts.iter().position(|x| x == t) {
                return Ok(&self.partition.classes()[i][j]);
            }
        }
        Err(Error::unknown("transition", t.label()))
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    /// Number of circuits of the partition a transversal induces.
    pub fn circuit_count(&self, t: &[usize]) -> usize {
        self.circuit_sets(t).1
    }

    fn circuit_sets(&self, t: &[usize]) -> (DisjointSets, usize) {
        let n = self.mate.len();
        let mut uf = DisjointSets::new(n);
        let mut count = n;
        for h in 0..n {
            if uf.union(h, self.mate[h]) {
                count -= 1;
            }
        }
        for (i, &j) in t.iter().enumerate() {
            for &(a, b) in &self.pairs[i][j] {
                if uf.union(a, b) {
                    count -= 1;
                }
            }
        }
        (uf, count)
    }

    /// Rank of `choice` inside the transversal `completion ⊇ choice`.
    pub fn rank_via(&self, choice: &[Option<usize>], completion: &[usize]) -> usize {
        let t: Vec<usize> = choice.iter().zip(completion).map(|(c, &d)| c.unwrap_or(d)).collect();
        let (mut uf, circuits) = self.circuit_sets(&t);
        let mut joined = 0;
        for (i, c) in choice.iter().enumerate() {
            if c.is_none() {
                let [(a, _), (c0, _)] = self.pairs[i][t[i]];
                if uf.union(a, c0) {
                    joined += 1;
                }
            }
        }
        let size = choice.iter().filter(|c| c.is_some()).count();
        size + self.components - (circuits - joined)
    }

    /// First subtransversal whose rank depends on the completing
    /// transversal, over every completion.
    pub fn extension_mismatch(&self) -> Result<Option<ExtensionMismatch>> {
        let p = &self.partition;
        p.require_enumerable("extension check")?;
        for choice in p.subtransversals() {
            let default_rank = self.rank(&choice);
            let free: Vec<usize> = (0..choice.len()).filter(|&i| choice[i].is_none()).collect();
            let mut completion = self.completion.clone();
            let mut digits = vec![0usize; free.len()];
            loop {
                for (d, &i) in digits.iter().zip(&free) {
                    completion[i] = *d;
                }
                let rank = self.rank_via(&choice, &completion);
                if rank != default_rank {
                    let full: Vec<Option<usize>> = completion.iter().map(|&j| Some(j)).collect();
                    return Ok(Some(ExtensionMismatch {
                        subtransversal: p.labels_of(&choice),
                        completion: p.labels_of(&full),
                        rank,
                        default_rank,
                    }));
                }
                let Some(k) = (0..free.len()).find(|&k| digits[k] + 1 < p.classes()[free[k]].len()) else {
                    break;
                };
                digits[k] += 1;
                for d in &mut digits[..k] {
                    *d = 0;
                }
            }
        }
        Ok(None)
    }
}

impl Multimatroid for EulerianQ {
    fn partition(&self) -> &SkewPartition {
        &self.partition
    }

    fn rank(&self, choice: &[Option<usize>]) -> usize {
        self.rank_via(choice, &self.completion)
    }
}

/// Vertices `u`, `v` are adjacent iff they lie on one circuit of `c` and
/// occur there in the order `u v u v` up to rotation.
pub fn interlacement_graph(f: &HalfEdgeGraph, c: &EulerSystem) -> Result<LoopedSimpleGraph> {
    let mut edges = Vec::new();
    for word in c.vertex_words(f)? {
        edges.extend(interlaced_pairs(&word));
    }
    LoopedSimpleGraph::new(f.vertices().map(str::to_string), edges, Vec::<String>::new())
}

pub(crate) fn interlaced_pairs(word: &[String]) -> Vec<(String, String)> {
    let mut pos: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, v) in word.iter().enumerate() {
        pos.entry(v.as_str()).or_default().push(i);
    }
    let keys: Vec<&str> = pos.keys().copied().collect();
    let mut out = Vec::new();
    for (a, u) in keys.iter().enumerate() {
        let (lo, hi) = (pos[u][0], pos[u][1]);
        for v in &keys[a + 1..] {
            let inside = pos[v].iter().filter(|&&p| lo < p && p < hi).count();
            if inside == 1 {
                out.push((u.to_string(), v.to_string()));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankCounterexample {
    /// In `Q(F)` labels.
    pub subtransversal: Vec<String>,
    pub qf_rank: usize,
    /// `None` when the image is not a subtransversal of `Z3(G)`.
    pub z3_rank: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Z3QfReport {
    pub equal: bool,
    /// `Q(F)` transition label to `IAS(G)` column label.
    pub bijection: BTreeMap<String, String>,
    pub counterexample: Option<RankCounterexample>,
    pub subtransversals_checked: u128,
}

/// The relabeling `φ_C(v) -> v:I`, `χ_C(v) -> v:A`, `ψ_C(v) -> v:I+A`,
/// keyed by transition label.
pub fn standard_bijection(f: &HalfEdgeGraph, c: &EulerSystem) -> Result<BTreeMap<String, String>> {
    Ok(c.classification(f)?
        .into_iter()
        .map(|(label, (v, k))| {
            let block = match k {
                Kind::Phi => BLOCKS[0],
                Kind::Chi => BLOCKS[1],
                Kind::Psi => BLOCKS[2],
            };
            (label, ias_label(&v, block))
        })
        .collect())
}

/// Compares every subtransversal rank of `Q(F)` with `Z3(G)` under the
/// standard relabeling.
pub fn z3_equals_qf(g: &LoopedSimpleGraph, f: &HalfEdgeGraph, c: &EulerSystem) -> Result<Z3QfReport> {
    z3_equals_qf_with(g, f, &standard_bijection(f, c)?)
}

pub fn z3_equals_qf_with(
    g: &LoopedSimpleGraph,
    f: &HalfEdgeGraph,
    bijection: &BTreeMap<String, String>,
) -> Result<Z3QfReport> {
    let q = q_f(f)?;
    let z = z3(g)?;
    let qp = q.partition();
    let zp = z.partition();
    let image: BTreeSet<&String> = bijection.values().collect();
    let domain: BTreeSet<&str> = bijection.keys().map(String::as_str).collect();
    let ground: BTreeSet<&str> = qp.ground().collect();
    if domain != ground
        || image.len() != bijection.len()
        || image.iter().any(|x| !zp.contains(x))
        || image.len() != zp.ground_size()
    {
        return Err(Error::Contract(
            "relabeling is not a bijection between the ground sets".into(),
        ));
    }
    qp.require_enumerable("Z3 / Q(F) comparison")?;
    let mut checked = 0;
    for choice in qp.subtransversals() {
        checked += 1;
        let labels = qp.labels_of(&choice);
        let qr = q.rank(&choice);
        let mapped: Vec<&str> = labels.iter().map(|l| bijection[l].as_str()).collect();
        let zr = zp.choice_of(&mapped).ok().map(|c| z.rank(&c));
        if zr != Some(qr) {
            return Ok(Z3QfReport {
                equal: false,
                bijection: bijection.clone(),
                counterexample: Some(RankCounterexample {
                    subtransversal: labels,
                    qf_rank: qr,
                    z3_rank: zr,
                }),
                subtransversals_checked: checked,
            });
        }
    }
    Ok(Z3QfReport {
        equal: true,
        bijection: bijection.clone(),
        counterexample: None,
        subtransversals_checked: checked,
    })
}
