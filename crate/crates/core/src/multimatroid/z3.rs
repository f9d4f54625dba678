//! Looped simple graphs, `IAS(G) = (I | A(G) | I + A(G))` and the isotropic
//! 3-matroid `Z3(G)` given by GF(2) ranks of its columns.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{Multimatroid, SkewPartition};
use crate::error::{Error, Result};
use crate::IntMatrix;

/// Names of the three column blocks, in display order.
pub const BLOCKS: [&str; 3] = ["I", "A", "I+A"];

/// Column label of vertex `v` in block `block`.
pub fn ias_label(v: &str, block: &str) -> String {
    format!("{v}:{block}")
}

/// On-disk form: `{"vertices": [...], "adjacency": [[u, v], ...], "loops": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdjacencyJson {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub adjacency: Vec<[String; 2]>,
    #[serde(default)]
    pub loops: Vec<String>,
}

/// A simple graph in which vertices may carry a loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopedSimpleGraph {
    vertices: Vec<String>,
    edges: BTreeSet<(String, String)>,
    loops: BTreeSet<String>,
}

impl LoopedSimpleGraph {
    /// Vertices are kept sorted; edges are unordered pairs of distinct
    /// vertices.
    pub fn new<V, E, L>(vertices: V, edges: E, loops: L) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String)>,
        L: IntoIterator,
        L::Item: Into<String>,
    {
        let mut vs: Vec<String> = vertices.into_iter().map(Into::into).collect();
        vs.sort();
        if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel {
                kind: "vertex",
                label: w[0].clone(),
            });
        }
        let known: BTreeSet<&String> = vs.iter().collect();
        let mut es = BTreeSet::new();
        for (u, v) in edges {
            for x in [&u, &v] {
                if !known.contains(x) {
                    return Err(Error::unknown("vertex", x.as_str()));
                }
            }
            if u == v {
                return Err(Error::Contract(format!(
                    "adjacency pair ({u}, {v}) is a loop; list it under loops"
                )));
            }
            es.insert(if u < v { (u, v) } else { (v, u) });
        }
        let mut ls = BTreeSet::new();
        for l in loops {
            let l: String = l.into();
            if !known.contains(&l) {
                return Err(Error::unknown("vertex", l));
            }
            ls.insert(l);
        }
        Ok(Self {
            vertices: vs,
            edges: es,
            loops: ls,
        })
    }

    /// From a square 0/1 matrix; the diagonal gives the loops.
    pub fn from_adjacency_matrix<S: AsRef<str>>(vertices: &[S], a: &[Vec<u8>]) -> Result<Self> {
        let n = vertices.len();
        if a.len() != n || a.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch(format!("adjacency matrix is not {n} x {n}")));
        }
        let mut edges = Vec::new();
        let mut loops = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if a[i][j] > 1 {
                    return Err(Error::Contract(format!("adjacency entry ({i}, {j}) is {}", a[i][j])));
                }
                if a[i][j] != a[j][i] {
                    return Err(Error::Contract(format!(
                        "adjacency matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
            if a[i][i] == 1 {
                loops.push(vertices[i].as_ref().to_string());
            }
            for j in i + 1..n {
                if a[i][j] == 1 {
                    edges.push((vertices[i].as_ref().to_string(), vertices[j].as_ref().to_string()));
                }
            }
        }
        Self::new(vertices.iter().map(|v| v.as_ref().to_string()), edges, loops)
    }

    pub fn from_json(spec: &AdjacencyJson) -> Result<Self> {
        Self::new(
            spec.vertices.iter().cloned(),
            spec.adjacency.iter().map(|[u, v]| (u.clone(), v.clone())),
            spec.loops.iter().cloned(),
        )
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> AdjacencyJson {
        AdjacencyJson {
            vertices: self.vertices.clone(),
            adjacency: self.edges.iter().map(|(u, v)| [u.clone(), v.clone()]).collect(),
            loops: self.loops.iter().cloned().collect(),
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges.iter().map(|(u, v)| (u.as_str(), v.as_str()))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn loops(&self) -> &BTreeSet<String> {
        &self.loops
    }

    pub fn has_loops(&self) -> bool {
        !self.loops.is_empty()
    }

    pub fn adjacent(&self, u: &str, v: &str) -> bool {
        let key = if u < v {
            (u.to_string(), v.to_string())
        } else {
            (v.to_string(), u.to_string())
        };
        self.edges.contains(&key)
    }

    /// `A(G)` in vertex order, loops on the diagonal.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u8>> {
        self.vertices
            .iter()
            .map(|u| {
                self.vertices
                    .iter()
                    .map(|v| {
                        let on = if u == v {
                            self.loops.contains(u)
                        } else {
                            self.adjacent(u, v)
                        };
                        u8::from(on)
                    })
                    .collect()
            })
            .collect()
    }

    pub fn degree(&self, v: &str) -> usize {
        self.edges.iter().filter(|(a, b)| a == v || b == v).count()
    }

    pub fn complete(n: usize) -> Self {
        let vs = numbered(n);
        let edges = pairs(&vs).collect::<Vec<_>>();
        Self::new(vs, edges, Vec::<String>::new()).expect("valid")
    }

    /// The cycle `v1 v2 ... vn v1`.
    pub fn cycle(n: usize) -> Self {
        let vs = numbered(n);
        let edges: Vec<(String, String)> = (0..n).map(|i| (vs[i].clone(), vs[(i + 1) % n].clone())).collect();
        Self::new(vs, edges, Vec::<String>::new()).expect("valid")
    }

    /// Hub `h` joined to every vertex of the cycle on `v1..vn`.
    pub fn wheel(n: usize) -> Self {
        let c = Self::cycle(n);
        let mut vs = c.vertices.clone();
        vs.push("h".into());
        let mut edges: Vec<(String, String)> = c.edges.iter().cloned().collect();
        edges.extend(c.vertices.iter().map(|v| ("h".to_string(), v.clone())));
        Self::new(vs, edges, Vec::<String>::new()).expect("valid")
    }

    /// Every labeled loopless simple graph on `v1..vn`.
    pub fn all_simple(n: usize) -> Vec<Self> {
        let vs = numbered(n);
        let all: Vec<(String, String)> = pairs(&vs).collect();
        (0u64..1 << all.len())
            .map(|mask| {
                let edges = all
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .map(|(_, e)| e.clone());
                Self::new(vs.clone(), edges, Vec::<String>::new()).expect("valid")
            })
            .collect()
    }
}

fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

fn pairs(vs: &[String]) -> impl Iterator<Item = (String, String)> + '_ {
    vs.iter()
        .enumerate()
        .flat_map(move |(i, u)| vs[i + 1..].iter().map(move |v| (u.clone(), v.clone())))
}

/// `IAS(G)` with its vertex triples.
#[derive(Debug, Clone, PartialEq)]
pub struct IsotropicMatrix {
    pub matrix: IntMatrix,
    /// `(v, [v:I, v:A, v:I+A])` per vertex.
    pub triples: Vec<(String, [String; 3])>,
}

impl IsotropicMatrix {
    pub fn skew_partition(&self) -> SkewPartition {
        SkewPartition::new(self.triples.iter().map(|(_, t)| t.to_vec()).collect()).expect("distinct labels")
    }
}

/// Rows are vertices; columns come block by block (`I`, `A`, `I+A`), each
/// block in vertex order. `I + A` is reduced mod 2.
pub fn ias_matrix(g: &LoopedSimpleGraph) -> IsotropicMatrix {
    let vs = g.vertices();
    let a = g.adjacency_matrix();
    let cols: Vec<String> = BLOCKS
        .iter()
        .flat_map(|b| vs.iter().map(move |v| ias_label(v, b)))
        .collect();
    let n = vs.len();
    let entries: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let id = (0..n).map(|j| u8::from(i == j));
            let adj = (0..n).map(|j| a[i][j]);
            let sum = (0..n).map(|j| (u8::from(i == j) + a[i][j]) % 2);
            id.chain(adj).chain(sum).map(BigInt::from).collect()
        })
        .collect();
    let matrix = IntMatrix::from_rows(vs.iter().cloned(), cols, entries).expect("distinct labels");
    let triples = vs
        .iter()
        .map(|v| (v.clone(), BLOCKS.map(|b| ias_label(v, b))))
        .collect();
    IsotropicMatrix { matrix, triples }
}

/// `Z3(G)`: rank of a subtransversal is the GF(2) rank of its `IAS(G)`
/// columns.
#[derive(Debug, Clone)]
pub struct Z3 {
    partition: SkewPartition,
    /// Column bitsets over the rows, `columns[class][element]`.
    columns: Vec<[u64; 3]>,
    vertices: Vec<String>,
}

pub fn z3(g: &LoopedSimpleGraph) -> Result<Z3> {
    let n = g.vertex_count();
    if n > 64 {
        return Err(Error::SizeCap {
            what: "Z3 column bitsets",
            required: n as u128,
            cap: 64,
        });
    }
    let ias = ias_matrix(g);
    let a = g.adjacency_matrix();
    let index: BTreeMap<&str, usize> = g.vertices().iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let columns = g
        .vertices()
        .iter()
        .map(|v| {
            let j = index[v.as_str()];
            let id = 1u64 << j;
            let adj = (0..n).filter(|&i| a[i][j] == 1).fold(0u64, |acc, i| acc | 1 << i);
            [id, adj, id ^ adj]
        })
        .collect();
    Ok(Z3 {
        partition: ias.skew_partition(),
        columns,
        vertices: g.vertices().to_vec(),
    })
}

impl Z3 {
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }
}

fn gf2_rank(mut vs: Vec<u64>) -> usize {
    let mut rank = 0;
    for bit in 0..64 {
        let mask = 1u64 << bit;
        let Some(p) = (rank..vs.len()).find(|&i| vs[i] & mask != 0) else {
            continue;
        };
        vs.swap(rank, p);
        let pivot = vs[rank];
        for (i, v) in vs.iter_mut().enumerate() {
            if i != rank && *v & mask != 0 {
                *v ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

impl Multimatroid for Z3 {
    fn partition(&self) -> &SkewPartition {
        &self.partition
    }

    fn rank(&self, choice: &[Option<usize>]) -> usize {
        gf2_rank(
            choice
                .iter()
                .zip(&self.columns)
                .filter_map(|(c, cols)| c.map(|j| cols[j]))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank_gf2_rows;
    use crate::multimatroid::verify_multimatroid_axioms;

    fn single(looped: bool) -> LoopedSimpleGraph {
        let loops: Vec<String> = if looped { vec!["v".into()] } else { vec![] };
        LoopedSimpleGraph::new(["v"], Vec::new(), loops).unwrap()
    }

    fn row(m: &IntMatrix, r: &str) -> Vec<i64> {
        m.row(r).unwrap().iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn single_vertex_blocks() {
        assert_eq!(row(&ias_matrix(&single(true)).matrix, "v"), vec![1, 1, 0]);
        assert_eq!(row(&ias_matrix(&single(false)).matrix, "v"), vec![1, 0, 1]);
    }

    #[test]
    fn single_vertex_ranks() {
        let z = z3(&single(false)).unwrap();
        assert_eq!(z.rank_of(&["v:A"]).unwrap(), 0);
        assert_eq!(z.rank_of(&["v:I"]).unwrap(), 1);
        assert_eq!(z.rank_of(&["v:I+A"]).unwrap(), 1);
        assert_eq!(z.rank_of::<&str>(&[]).unwrap(), 0);
    }

    /// The seven nonzero vectors of GF(2)^3 all occur among the columns.
    #[test]
    fn k3_contains_fano_columns() {
        let m = ias_matrix(&LoopedSimpleGraph::complete(3)).matrix;
        let cols: BTreeSet<Vec<i64>> = m
            .col_labels()
            .iter()
            .map(|c| m.col(c).unwrap().iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect();
        let nonzero: BTreeSet<Vec<i64>> = (1..8).map(|b: i64| (0..3).map(|i| b >> i & 1).collect()).collect();
        assert!(nonzero.is_subset(&cols));
    }

    #[test]
    fn k3_adjacency_transversal_rank() {
        let z = z3(&LoopedSimpleGraph::complete(3)).unwrap();
        let rows: Vec<Vec<bool>> = LoopedSimpleGraph::complete(3)
            .adjacency_matrix()
            .iter()
            .map(|r| r.iter().map(|&x| x == 1).collect())
            .collect();
        assert_eq!(rank_gf2_rows(&rows), 2);
        assert_eq!(z.rank_of(&["v1:A", "v2:A", "v3:A"]).unwrap(), 2);
    }

    #[test]
    fn z3_ranks_match_matrix_rank() {
        let g = LoopedSimpleGraph::cycle(4);
        let z = z3(&g).unwrap();
        let m = ias_matrix(&g).matrix;
        for choice in z.partition().subtransversals() {
            let labels = z.partition().labels_of(&choice);
            let sub = m.restrict_columns(&labels).unwrap();
            assert_eq!(z.rank(&choice), sub.rank_gf2().unwrap());
        }
    }

    #[test]
    fn k3_axioms() {
        assert!(
            verify_multimatroid_axioms(&z3(&LoopedSimpleGraph::complete(3)).unwrap())
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn asymmetric_adjacency_is_rejected() {
        let err = LoopedSimpleGraph::from_adjacency_matrix(&["a", "b"], &[vec![0, 1], vec![0, 0]]).unwrap_err();
        assert!(matches!(err, Error::Contract(_)));
        let ok = LoopedSimpleGraph::from_adjacency_matrix(&["a", "b"], &[vec![1, 1], vec![1, 0]]).unwrap();
        assert!(ok.adjacent("a", "b"));
        assert!(ok.loops().contains("a"));
    }

    #[test]
    fn json_round_trip() {
        let g = LoopedSimpleGraph::wheel(5);
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 10);
        let text = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(LoopedSimpleGraph::parse(&text).unwrap(), g);
        assert!(LoopedSimpleGraph::parse(r#"{"vertices":["a"],"adjacency":[["a","b"]]}"#).is_err());
    }
}
