//! Embedded reference data: the running 4-regular example `F` on vertices
//! a, b, c, d with edges e1..e8, the two-vertex graph with four parallel
//! edges, the one-vertex graph with two loops, and the printed matrices they
//! are known to produce.
//!
//! Half-edges of loop-free fixtures are named `h_{edge}_{vertex}`.
//! Transition columns use `phi(v)`, `chi(v)`, `psi(v)` relative to the
//! fixture's Euler system.

use std::collections::BTreeMap;

use crate::euler::EulerSystem;
use crate::four_regular::{all_transitions, Transition, Transversal};
use crate::graph::{ClosedWalk, DirectedGraph, GraphJson, HalfEdgeGraph, SingleTransition};
use crate::linalg::LabeledMatrix;
use crate::scalar::Scalar;

pub const RUNNING_EXAMPLE_JSON: &str = include_str!("../fixtures/running_example.json");
pub const PARALLEL_EDGES_JSON: &str = include_str!("../fixtures/parallel_edges.json");

/// A graph with its reference directed version and Euler system.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub graph: HalfEdgeGraph,
    pub directed: DirectedGraph,
    pub euler: EulerSystem,
}

pub fn running_example_json() -> GraphJson {
    GraphJson::parse(RUNNING_EXAMPLE_JSON).expect("fixture parses")
}

/// The running example: the Euler circuit traverses e1, ..., e8 in order and
/// `D` directs every edge along it.
pub fn running_example() -> Fixture {
    let spec = running_example_json();
    let directed = spec.directed().expect("fixture valid").expect("fixture oriented");
    let graph = directed.underlying().clone();
    let circuit = ClosedWalk::from_pairs(&[
        ("h_e1_b", "h_e2_b"),
        ("h_e2_c", "h_e3_c"),
        ("h_e3_d", "h_e4_d"),
        ("h_e4_b", "h_e5_b"),
        ("h_e5_a", "h_e6_a"),
        ("h_e6_c", "h_e7_c"),
        ("h_e7_d", "h_e8_d"),
        ("h_e8_a", "h_e1_a"),
    ]);
    let euler = EulerSystem::new(&graph, vec![circuit]).expect("fixture euler circuit");
    Fixture { graph, directed, euler }
}

/// The closed walk e1 (along), e4 (against), e8 (along) of the running
/// example.
pub fn triangle_walk() -> ClosedWalk {
    ClosedWalk::from_pairs(&[("h_e1_b", "h_e4_b"), ("h_e4_d", "h_e8_d"), ("h_e8_a", "h_e1_a")])
}

/// Transversal of the two-circuit partition of the running example.
pub fn running_transversal() -> Transversal {
    let f = running_example();
    let sys = all_transitions(&f.graph).expect("4-regular");
    let st = |a: &str, b: &str| SingleTransition::new(a, b);
    let pick = [
        ("a", st("h_e8_a", "h_e5_a"), st("h_e1_a", "h_e6_a")),
        ("b", st("h_e1_b", "h_e2_b"), st("h_e4_b", "h_e5_b")),
        ("c", st("h_e2_c", "h_e3_c"), st("h_e6_c", "h_e7_c")),
        ("d", st("h_e3_d", "h_e7_d"), st("h_e4_d", "h_e8_d")),
    ];
    Transversal::new(&sys, pick.into_iter().map(|(v, a, b)| Transition::new(v, a, b))).expect("fixture transversal")
}

/// Two vertices joined by four parallel edges; `D` gives each vertex two
/// incoming and two outgoing edges and the Euler circuit is (e1, e2, e3, e4)
/// along `D`.
pub fn parallel_edges() -> Fixture {
    let spec = GraphJson::parse(PARALLEL_EDGES_JSON).expect("fixture parses");
    let directed = spec.directed().expect("fixture valid").expect("fixture oriented");
    let graph = directed.underlying().clone();
    let circuit = ClosedWalk::from_pairs(&[
        ("h_e1_v1", "h_e2_v1"),
        ("h_e2_v2", "h_e3_v2"),
        ("h_e3_v1", "h_e4_v1"),
        ("h_e4_v2", "h_e1_v2"),
    ]);
    let euler = EulerSystem::new(&graph, vec![circuit]).expect("fixture euler circuit");
    Fixture { graph, directed, euler }
}

/// One vertex `v` with loops `l1 = {h1, h4}` and `l2 = {h2, h3}`.
pub fn one_vertex_two_loops() -> HalfEdgeGraph {
    HalfEdgeGraph::new(
        ["v"],
        [
            ("l1".to_string(), ["h1".to_string(), "h4".to_string()]),
            ("l2".to_string(), ["h2".to_string(), "h3".to_string()]),
        ],
        ["h1", "h2", "h3", "h4"].map(|h| (h.to_string(), "v".to_string())),
    )
    .expect("fixture valid")
}

/// The one-vertex graph directed consistently with the walk
/// ((h1, h2), (h3, h4)): `l1` from h4 to h1, `l2` from h2 to h3.
pub fn one_vertex_directed() -> DirectedGraph {
    let orientation: BTreeMap<String, [String; 2]> = [
        ("l1".to_string(), ["h4".to_string(), "h1".to_string()]),
        ("l2".to_string(), ["h2".to_string(), "h3".to_string()]),
    ]
    .into_iter()
    .collect();
    DirectedGraph::new(one_vertex_two_loops(), orientation).expect("fixture valid")
}

/// A printed integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Golden {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<Vec<i64>>,
}

impl Golden {
    fn new(rows: &[&str], cols: &[&str], entries: &[&[i64]]) -> Self {
        Self {
            rows: rows.iter().map(|s| s.to_string()).collect(),
            cols: cols.iter().map(|s| s.to_string()).collect(),
            entries: entries.iter().map(|r| r.to_vec()).collect(),
        }
    }

    pub fn to_matrix<T: Scalar>(&self) -> LabeledMatrix<T> {
        LabeledMatrix::from_i64_rows(&self.rows, &self.cols, &self.entries).expect("golden matrices are well formed")
    }
}

pub const TRANSITION_COLUMNS: [&str; 12] = [
    "phi(a)", "phi(b)", "phi(c)", "phi(d)", "chi(a)", "chi(b)", "chi(c)", "chi(d)", "psi(a)", "psi(b)", "psi(c)",
    "psi(d)",
];

const EDGES: [&str; 8] = ["e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8"];

/// Transpose of the incidence matrix of `D` for the running example.
pub fn incidence_transpose() -> Golden {
    Golden::new(
        &EDGES,
        &["a", "b", "c", "d"],
        &[
            &[1, -1, 0, 0],
            &[0, 1, -1, 0],
            &[0, 0, 1, -1],
            &[0, -1, 0, 1],
            &[-1, 1, 0, 0],
            &[1, 0, -1, 0],
            &[0, 0, 1, -1],
            &[-1, 0, 0, 1],
        ],
    )
}

/// Edge-transition incidence matrix of the running example under the
/// orientation avoiding the heads of e5, e4, e6, e7 at a, b, c, d.
pub fn theta() -> Golden {
    Golden::new(
        &EDGES,
        &TRANSITION_COLUMNS,
        &[
            &[1, -1, 0, 0, 0, -1, 0, 0, 1, 0, 0, 0],
            &[0, 1, -1, 0, 0, 0, -1, 0, 0, 1, 0, 0],
            &[0, 0, 1, -1, 0, 0, 0, -1, 0, 0, 1, 0],
            &[0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1],
            &[0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0],
            &[0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0],
            &[0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0],
            &[-1, 0, 0, 0, -1, 0, 0, 1, 0, 0, 0, 1],
        ],
    )
}

/// Edge-transition matrix of the one-vertex graph; `t_i` is the transition
/// whose chosen single transition is {h1, h(i+1)}.
pub fn one_vertex_theta() -> Golden {
    Golden::new(&["l1", "l2"], &["t1", "t2", "t3"], &[&[-1, -1, 0], &[1, -1, 0]])
}

/// Incidence vector of [`triangle_walk`].
pub fn triangle_incidence() -> Golden {
    Golden::new(&["W"], &EDGES, &[&[1, 0, 0, -1, 0, 0, 0, 1]])
}

/// [`triangle_incidence`] times [`theta`].
pub fn triangle_times_theta() -> Golden {
    Golden::new(
        &["W"],
        &TRANSITION_COLUMNS,
        &[&[0, -1, 0, -1, -1, -1, 0, 1, 1, 0, 0, 0]],
    )
}

/// Incidence vector of the projected triangle walk in the directed
/// touch-graph of the partition {psi(a), phi(b), phi(c), psi(d)}.
pub fn triangle_projection() -> Golden {
    Golden::new(&["W"], &["psi(a)", "phi(b)", "phi(c)", "psi(d)"], &[&[1, -1, 0, 0]])
}

/// Cycle matrix of the strictly fundamental basis for the tree {e1, e2, e3}.
pub fn fundamental_cycle_matrix() -> Golden {
    Golden::new(
        &["C_e4", "C_e5", "C_e6", "C_e7", "C_e8"],
        &EDGES,
        &[
            &[0, 1, 1, 1, 0, 0, 0, 0],
            &[1, 0, 0, 0, 1, 0, 0, 0],
            &[-1, -1, 0, 0, 0, 1, 0, 0],
            &[0, 0, -1, 0, 0, 0, 1, 0],
            &[1, 1, 1, 0, 0, 0, 0, 1],
        ],
    )
}

/// [`fundamental_cycle_matrix`] times [`theta`].
pub fn fundamental_product() -> Golden {
    Golden::new(
        &["C_e4", "C_e5", "C_e6", "C_e7", "C_e8"],
        &TRANSITION_COLUMNS,
        &[
            &[0, 1, 0, 0, 0, 0, -1, -1, 0, 1, 1, 1],
            &[1, -1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0],
            &[-1, 0, 1, 0, 1, 1, 1, 0, 0, -1, 0, 0],
            &[0, 0, -1, 1, 0, 0, 1, 1, 0, 0, 0, 0],
            &[0, 0, 0, -1, -1, -1, -1, 0, 1, 1, 1, 1],
        ],
    )
}

pub const PARALLEL_COLUMNS: [&str; 6] = ["phi(v1)", "phi(v2)", "chi(v1)", "chi(v2)", "psi(v1)", "psi(v2)"];

const PARALLEL_EDGES: [&str; 4] = ["e1", "e2", "e3", "e4"];

/// Cycle matrix of the basis {(e1, e2), (e2, e3), (e3, e4)}.
pub fn parallel_basis_b() -> Golden {
    Golden::new(
        &["C1B", "C2B", "C3B"],
        &PARALLEL_EDGES,
        &[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1]],
    )
}

/// Cycle matrix of the strictly fundamental basis for the tree {e1}, every
/// circuit traversing e1 along `D`.
pub fn parallel_basis_b_prime() -> Golden {
    Golden::new(
        &["C1B'", "C2B'", "C3B'"],
        &PARALLEL_EDGES,
        &[&[1, 1, 0, 0], &[1, 0, -1, 0], &[1, 0, 0, 1]],
    )
}

/// Edge-transition matrix of the parallel-edge graph; each chosen single
/// transition contains the half-edge first reached from the middle of e1.
pub fn parallel_theta() -> Golden {
    Golden::new(
        &PARALLEL_EDGES,
        &PARALLEL_COLUMNS,
        &[
            &[-1, 0, -1, 1, -1, 0],
            &[1, -1, 0, -1, 0, -1],
            &[0, 1, 0, 0, -1, 0],
            &[0, 0, 1, 0, 0, -1],
        ],
    )
}

/// [`parallel_basis_b`] times [`parallel_theta`].
pub fn parallel_product_a() -> Golden {
    Golden::new(
        &["C1B", "C2B", "C3B"],
        &PARALLEL_COLUMNS,
        &[&[0, -1, -1, 0, -1, -1], &[1, 0, 0, -1, -1, -1], &[0, 1, 1, 0, -1, -1]],
    )
}

/// [`parallel_basis_b_prime`] times [`parallel_theta`].
pub fn parallel_product_a_prime() -> Golden {
    Golden::new(
        &["C1B'", "C2B'", "C3B'"],
        &PARALLEL_COLUMNS,
        &[&[0, -1, -1, 0, -1, -1], &[-1, -1, -1, 1, 0, 0], &[-1, 0, 0, 1, -1, -1]],
    )
}

/// Cycle matrix of the circuits induced by the running Euler circuit, based
/// at {e8}.
pub fn induced_cycle_matrix() -> Golden {
    Golden::new(
        &["C_a", "C_b", "C_c", "C_d"],
        &EDGES,
        &[
            &[1, 1, 1, 1, 1, 0, 0, 0],
            &[0, 1, 1, 1, 0, 0, 0, 0],
            &[0, 0, 1, 1, 1, 1, 0, 0],
            &[0, 0, 0, 1, 1, 1, 1, 0],
        ],
    )
}

/// [`induced_cycle_matrix`] times [`theta`].
pub fn euler_ias() -> Golden {
    Golden::new(
        &["C_a", "C_b", "C_c", "C_d"],
        &TRANSITION_COLUMNS,
        &[
            &[1, 0, 0, 0, 0, 0, -1, -1, 1, 2, 1, 1],
            &[0, 1, 0, 0, 0, 0, -1, -1, 0, 1, 1, 1],
            &[0, 0, 1, 0, 1, 1, 0, -1, 1, 1, 1, 1],
            &[0, 0, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1],
        ],
    )
}
