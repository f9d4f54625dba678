#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use ttu_core::euler::{from_word, EulerSystem};
use ttu_core::graph::HalfEdgeGraph;

/// Double occurrence words on symbols `0..n` whose symbols first appear in
/// increasing order.
pub fn words(n: usize) -> Vec<Vec<usize>> {
    fn go(w: &mut Vec<Option<usize>>, next: usize, out: &mut Vec<Vec<usize>>) {
        let Some(p) = w.iter().position(Option::is_none) else {
            out.push(w.iter().map(|s| s.unwrap()).collect());
            return;
        };
        for q in p + 1..w.len() {
            if w[q].is_none() {
                w[p] = Some(next);
                w[q] = Some(next);
                go(w, next + 1, out);
                w[p] = None;
                w[q] = None;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![None; 2 * n], 0, &mut out);
    out
}

/// Multiplicity matrix under the least relabeling of the vertices.
fn canonical_form(g: &HalfEdgeGraph) -> Vec<Vec<usize>> {
    let vs: Vec<&str> = g.vertices().collect();
    let idx = |v: &str| vs.iter().position(|x| *x == v).unwrap();
    let n = vs.len();
    let mut m = vec![vec![0; n]; n];
    for e in g.edge_ids() {
        let (a, b) = g.endpoints(e).unwrap();
        let (i, j) = (idx(a), idx(b));
        m[i][j] += 1;
        if i != j {
            m[j][i] += 1;
        }
    }
    (0..n)
        .permutations(n)
        .map(|p| (0..n).map(|i| (0..n).map(|j| m[p[i]][p[j]]).collect()).collect())
        .min()
        .unwrap_or_default()
}

pub fn symbol(s: usize) -> String {
    ["a", "b", "c", "d", "e", "f", "g"][s].to_string()
}

/// Every connected 4-regular multigraph on at most `max_vertices` vertices,
/// one per isomorphism class, with the Euler circuit of the first word that
/// produced it.
pub fn catalog(max_vertices: usize) -> Vec<(String, HalfEdgeGraph, EulerSystem)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        for w in words(n) {
            let word: Vec<String> = w.iter().map(|&s| symbol(s)).collect();
            let (f, c) = from_word(&word).unwrap();
            if seen.insert(canonical_form(&f)) {
                out.push((word.concat(), f, c));
            }
        }
    }
    out
}

pub fn has_loop(g: &HalfEdgeGraph) -> bool {
    g.edge_ids().any(|e| g.is_loop(e).unwrap())
}

pub fn has_multi_edge(g: &HalfEdgeGraph) -> bool {
    let ends: Vec<(String, String)> = g
        .edge_ids()
        .map(|e| {
            let (a, b) = g.endpoints(e).unwrap();
            if a <= b {
                (a.to_string(), b.to_string())
            } else {
                (b.to_string(), a.to_string())
            }
        })
        .collect();
    ends.iter().duplicates().any(|(a, b)| a != b)
}

use rand::seq::SliceRandom;
use rand::Rng;
use ttu_core::four_regular::{all_transitions, TransitionalOrientation, Transversal};
use ttu_core::graph::{ClosedWalk, DirectedGraph};

/// A connected 4-regular graph read off a random double occurrence word on
/// `1..=max_vertices` symbols.
pub fn random_graph(rng: &mut impl Rng, max_vertices: usize) -> (HalfEdgeGraph, EulerSystem) {
    let n = rng.gen_range(1..=max_vertices);
    let mut w: Vec<String> = (0..n).flat_map(|s| [symbol(s), symbol(s)]).collect();
    w.shuffle(rng);
    from_word(&w).unwrap()
}

/// A closed walk that may repeat vertices and edges: a random trail of
/// steps, closed the first time it can re-enter its starting half-edge after
/// a coin flip succeeds.
pub fn random_closed_walk(f: &HalfEdgeGraph, rng: &mut impl Rng) -> ClosedWalk {
    let hs: Vec<&str> = f.half_edges().collect();
    loop {
        let h0 = *hs.choose(rng).unwrap();
        let start = f.vertex_of(h0).unwrap();
        let mut steps: Vec<(String, String)> = Vec::new();
        let mut out = h0.to_string();
        for _ in 0..60 {
            let inb = f.mate(&out).unwrap().to_string();
            let v = f.vertex_of(&inb).unwrap();
            if v == start && inb != h0 && rng.gen_bool(0.5) {
                steps.push((inb, h0.to_string()));
                return ClosedWalk::from_pairs(&steps);
            }
            let options: Vec<&String> = f.half_edges_at(v).unwrap().iter().filter(|h| **h != inb).collect();
            out = options.choose(rng).unwrap().to_string();
            steps.push((inb, out.clone()));
        }
    }
}

pub fn random_transversal(f: &HalfEdgeGraph, rng: &mut impl Rng) -> Transversal {
    let sys = all_transitions(f).unwrap();
    let chosen: Vec<_> = sys
        .vertices()
        .map(|v| sys.at(v).unwrap()[rng.gen_range(0..3)].clone())
        .collect();
    Transversal::new(&sys, chosen).unwrap()
}

pub fn random_orientation(f: &HalfEdgeGraph, rng: &mut impl Rng) -> TransitionalOrientation {
    let sys = all_transitions(f).unwrap();
    TransitionalOrientation::from_fn(&sys, |t| t.pairs()[rng.gen_range(0..2)].clone()).unwrap()
}

/// The directed version along `c` with each edge reversed by a coin flip.
pub fn random_directed(f: &HalfEdgeGraph, c: &EulerSystem, rng: &mut impl Rng) -> DirectedGraph {
    let mut d = c.directed_version(f).unwrap();
    for e in f.edge_ids() {
        if rng.gen_bool(0.5) {
            d = d.with_reversed(e).unwrap();
        }
    }
    d
}
