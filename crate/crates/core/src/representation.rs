//! Matrix representations of multimatroids: the products
//! `CM(F, Γ, D) · Θ(D, o)` representing `Q(F)`, `IAS(F, C, E)`, and
//! exhaustive sheltering, strictness and total transversal unimodularity
//! checks. Also the certificate flow for circle graphs.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::cycle_spaces::{
    best_spanning_forest, cycle_matrix, default_e_base, induced_circuits, maximal_forest, strictly_fundamental_basis,
    WalkFamily,
};
use crate::error::{Error, Result};
use crate::euler::{euler_system, from_word, EulerSystem};
use crate::four_regular::{all_transitions, edge_transition_incidence, OrientationJson, TransitionalOrientation};
use crate::graph::{ClosedWalk, DirectedGraph, GraphJson, HalfEdgeGraph};
use crate::linalg::{det_bigint, det_small, rank_small, LabeledMatrix, MatrixJson, TuWitness, TU_CAP};
use crate::multimatroid::eulerian::standard_bijection;
use crate::multimatroid::z3::{AdjacencyJson, LoopedSimpleGraph};
use crate::multimatroid::{is_circle_graph_bruteforce, max_rank, q_f, q_f_named, z3, Multimatroid, SkewPartition};
use crate::scalar::Scalar;
use crate::Rational;

/// How a representation was built.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Provenance {
    pub construction: String,
    /// The directed version used for the cycle and incidence matrices.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub directed: Option<GraphJson>,
    pub walks: BTreeMap<String, ClosedWalk>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orientation: Option<OrientationJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e_base: Option<BTreeSet<String>>,
}

/// A matrix whose columns are the ground set of `target`.
#[derive(Clone)]
pub struct Representation<T> {
    pub matrix: LabeledMatrix<T>,
    target: Arc<dyn Multimatroid>,
    pub provenance: Provenance,
}

impl<T: Scalar> std::fmt::Debug for Representation<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Representation")
            .field("matrix", &self.matrix)
            .field("provenance", &self.provenance)
            .finish_non_exhaustive()
    }
}

impl<T: Scalar> Representation<T> {
    pub fn new(matrix: LabeledMatrix<T>, target: Arc<dyn Multimatroid>, provenance: Provenance) -> Result<Self> {
        let cols: BTreeSet<&str> = matrix.col_labels().iter().map(String::as_str).collect();
        let ground: BTreeSet<&str> = target.partition().ground().collect();
        if cols != ground {
            return Err(Error::Contract(
                "matrix columns differ from the ground set of the target".into(),
            ));
        }
        Ok(Self {
            matrix,
            target,
            provenance,
        })
    }

    pub fn target(&self) -> &dyn Multimatroid {
        self.target.as_ref()
    }

    pub fn partition(&self) -> &SkewPartition {
        self.target.partition()
    }

    /// The same matrix with some rows removed; the target is unchanged.
    pub fn without_rows<S: AsRef<str>>(&self, drop: &[S]) -> Result<Self> {
        let keep: Vec<&String> = self
            .matrix
            .row_labels()
            .iter()
            .filter(|r| !drop.iter().any(|d| d.as_ref() == r.as_str()))
            .collect();
        let mut provenance = self.provenance.clone();
        provenance.walks.retain(|k, _| keep.contains(&k));
        Ok(Self {
            matrix: self.matrix.restrict_rows(&keep)?,
            target: self.target.clone(),
            provenance,
        })
    }

    /// Columns renamed through `names` against a new target on the renamed
    /// ground set.
    pub fn relabeled(&self, names: &BTreeMap<String, String>, target: Arc<dyn Multimatroid>) -> Result<Self> {
        let m = self
            .matrix
            .relabel_cols(|c| names.get(c).cloned().unwrap_or_else(|| c.to_string()))?;
        Self::new(m, target, self.provenance.clone())
    }
}

/// `CM(F, Γ, D) · Θ(D, o)` against `Q(F)`, columns labeled by transition.
/// When `Γ` is a cycle spanning set of `F - E` with at most one edge of `E`
/// per component this represents `Q(F)`; that is the caller's claim and is
/// checked by [`is_sheltering`].
pub fn representation_matrix(
    f: &HalfEdgeGraph,
    walks: &WalkFamily,
    d: &DirectedGraph,
    o: &TransitionalOrientation,
) -> Result<Representation<Rational>> {
    if d.underlying() != f {
        return Err(Error::Contract("directed version is not over the given graph".into()));
    }
    let system = all_transitions(f)?;
    let cm = cycle_matrix::<Rational>(d, walks)?.matrix;
    let theta = edge_transition_incidence::<Rational>(d, &system, o)?;
    let product = cm.multiply(&theta)?;
    let provenance = Provenance {
        construction: "cycle matrix times edge-transition incidence".into(),
        directed: Some(d.to_json()),
        walks: walks.iter().map(|(k, w)| (k.to_string(), w.clone())).collect(),
        orientation: Some(o.to_json()),
        e_base: None,
    };
    Representation::new(product, Arc::new(q_f(f)?), provenance)
}

/// Columns renamed `phi(v)`, `chi(v)`, `psi(v)` relative to `c`, ordered
/// kind-major as in the printed matrices.
pub fn named(rep: &Representation<Rational>, f: &HalfEdgeGraph, c: &EulerSystem) -> Result<Representation<Rational>> {
    let names = c.names(f)?;
    let r = rep.relabeled(&names, Arc::new(q_f_named(f, c)?))?;
    let order: Vec<String> = c
        .ordered_transitions(f)?
        .iter()
        .map(|t| names[&t.label()].clone())
        .collect();
    let rows = r.matrix.row_labels().to_vec();
    Ok(Representation {
        matrix: r.matrix.submatrix(&rows, &order)?,
        ..r
    })
}

/// Strictly fundamental basis of `F - E` for a maximal forest of `F - E`,
/// oriented along `d`. Rows are keyed `C_{e}`.
pub fn fundamental_basis_avoiding(d: &DirectedGraph, e_base: &BTreeSet<String>) -> Result<WalkFamily> {
    let f = d.underlying();
    let removed: Vec<&String> = e_base.iter().collect();
    let sub = f.without_edges(&removed)?;
    let orientation = d
        .orientation()
        .iter()
        .filter(|(e, _)| !e_base.contains(*e))
        .map(|(e, o)| (e.clone(), o.clone()))
        .collect();
    let dsub = DirectedGraph::new(sub.clone(), orientation)?;
    strictly_fundamental_basis(&dsub, &maximal_forest(&sub))
}

/// `CM(F, B, D) · Θ(D, o)` for `B` strictly fundamental in `F - E`. Strict
/// when `E` holds exactly one edge per component, and totally transversally
/// unimodular as a row subset of the matrix for a basis of `F`.
pub fn fundamental_representation(
    f: &HalfEdgeGraph,
    d: &DirectedGraph,
    o: &TransitionalOrientation,
    e_base: &BTreeSet<String>,
) -> Result<Representation<Rational>> {
    let b = fundamental_basis_avoiding(d, e_base)?;
    let mut rep = representation_matrix(f, &b, d, o)?;
    rep.provenance.construction = "strictly fundamental basis of F - E".into();
    rep.provenance.e_base = Some(e_base.clone());
    Ok(rep)
}

/// [`fundamental_representation`] with the least edge of each component as
/// `E`.
pub fn strict_ttu_representation(
    f: &HalfEdgeGraph,
    d: &DirectedGraph,
    o: &TransitionalOrientation,
) -> Result<Representation<Rational>> {
    fundamental_representation(f, d, o, &default_e_base(f))
}

/// The orientation choosing, at every vertex, the single transitions that
/// avoid the second-arrival half-edge `H_{C,E}(v)`.
pub fn h_avoiding_orientation(
    f: &HalfEdgeGraph,
    c: &EulerSystem,
    e_base: &BTreeSet<String>,
) -> Result<TransitionalOrientation> {
    let best = best_spanning_forest(f, c, e_base)?;
    TransitionalOrientation::avoiding(&all_transitions(f)?, &best.second_arrival_half_edge)
}

/// `IAS(F, C, E) = CM(F, Γ_{E,C}, D) · Θ(D, o)` with `o` avoiding the
/// second-arrival half-edges and `D` directed along `c`. Columns are named
/// relative to `c`.
pub fn ias_from_euler(
    f: &HalfEdgeGraph,
    c: &EulerSystem,
    e_base: &BTreeSet<String>,
) -> Result<Representation<Rational>> {
    ias_from_euler_with(f, c, e_base, &c.directed_version(f)?)
}

/// [`ias_from_euler`] with an arbitrary directed version `d`; the result does
/// not depend on `d`.
pub fn ias_from_euler_with(
    f: &HalfEdgeGraph,
    c: &EulerSystem,
    e_base: &BTreeSet<String>,
    d: &DirectedGraph,
) -> Result<Representation<Rational>> {
    let gamma = induced_circuits(f, c, e_base)?;
    let o = h_avoiding_orientation(f, c, e_base)?;
    let mut rep = named(&representation_matrix(f, &gamma, d, &o)?, f, c)?;
    rep.provenance.construction = "circuits induced by an Euler system".into();
    rep.provenance.e_base = Some(e_base.clone());
    Ok(rep)
}

/// Column vectors of the chosen ground elements, as `i64` when possible.
struct Columns {
    index: Vec<Vec<usize>>,
    small: Option<Vec<Vec<i64>>>,
}

impl Columns {
    fn new<T: Scalar>(m: &LabeledMatrix<T>, p: &SkewPartition) -> Result<Self> {
        let pos: BTreeMap<&str, usize> = m
            .col_labels()
            .iter()
            .enumerate()
            .map(|(j, c)| (c.as_str(), j))
            .collect();
        let index = p
            .classes()
            .iter()
            .map(|c| {
                c.iter()
                    .map(|x| {
                        pos.get(x.as_str())
                            .copied()
                            .ok_or_else(|| Error::unknown("column", x.as_str()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let small = m.integer_entries().ok().and_then(|ints| {
            (0..m.ncols())
                .map(|j| {
                    ints.iter()
                        .map(|r| i64::try_from(&r[j]).ok())
                        .collect::<Option<Vec<i64>>>()
                })
                .collect::<Option<Vec<_>>>()
        });
        Ok(Self { index, small })
    }

    fn rank<T: Scalar>(&self, m: &LabeledMatrix<T>, choice: &[Option<usize>]) -> usize {
        let js: Vec<usize> = choice
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.map(|j| self.index[i][j]))
            .collect();
        if let Some(small) = &self.small {
            let rows: Vec<Vec<i64>> = js.iter().map(|&j| small[j].clone()).collect();
            if let Some(r) = rank_small(&rows) {
                return r;
            }
        }
        let cols: Vec<String> = js.iter().map(|&j| m.col_labels()[j].clone()).collect();
        m.restrict_columns(&cols).expect("known columns").rank()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankMismatch {
    pub subtransversal: Vec<String>,
    pub matrix_rank: usize,
    pub target_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShelterReport {
    pub sheltering: bool,
    pub counterexample: Option<RankMismatch>,
    pub subtransversals_checked: u128,
}

/// Compares the column rank of every subtransversal with the target rank.
pub fn is_sheltering<T: Scalar>(rep: &Representation<T>) -> Result<ShelterReport> {
    let p = rep.partition();
    p.require_enumerable("sheltering check")?;
    let cols = Columns::new(&rep.matrix, p)?;
    let mut checked = 0;
    for choice in p.subtransversals() {
        checked += 1;
        let matrix_rank = cols.rank(&rep.matrix, &choice);
        let target_rank = rep.target().rank(&choice);
        if matrix_rank != target_rank {
            return Ok(ShelterReport {
                sheltering: false,
                counterexample: Some(RankMismatch {
                    subtransversal: p.labels_of(&choice),
                    matrix_rank,
                    target_rank,
                }),
                subtransversals_checked: checked,
            });
        }
    }
    Ok(ShelterReport {
        sheltering: true,
        counterexample: None,
        subtransversals_checked: checked,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrictReport {
    pub strict: bool,
    pub matrix_rank: usize,
    pub max_target_rank: usize,
}

/// Full matrix rank against the largest subtransversal rank of the target.
pub fn is_strict<T: Scalar>(rep: &Representation<T>) -> Result<StrictReport> {
    let matrix_rank = rep.matrix.rank();
    let max_target_rank = max_rank(rep.target())?;
    Ok(StrictReport {
        strict: matrix_rank == max_target_rank,
        matrix_rank,
        max_target_rank,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TtuMode {
    /// Every subtransversal-indexed square submatrix.
    All,
    /// Only column sets that are whole transversals.
    TransversalOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TtuReport {
    pub ttu: bool,
    pub mode: TtuMode,
    pub witness: Option<TuWitness>,
    pub submatrices_checked: u128,
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// Number of (row set, subtransversal) pairs of each size.
fn ttu_count(p: &SkewPartition, rows: usize, mode: TtuMode) -> u128 {
    // Elementary symmetric sums of the class sizes.
    let mut e = vec![0u128; p.class_count() + 1];
    e[0] = 1;
    for c in p.classes() {
        for k in (1..e.len()).rev() {
            e[k] = e[k].saturating_add(e[k - 1].saturating_mul(c.len() as u128));
        }
    }
    let sizes: Vec<usize> = match mode {
        TtuMode::All => (1..=p.class_count().min(rows)).collect(),
        TtuMode::TransversalOnly => vec![p.class_count()],
    };
    sizes
        .into_iter()
        .map(|k| e[k].saturating_mul(binom(rows, k)))
        .fold(0u128, u128::saturating_add)
}

/// Every square submatrix whose columns form a subtransversal of `p` has
/// determinant in {-1, 0, 1}. Subtransversals are visited by increasing
/// size, class sets and element choices in partition order, then row sets
/// in matrix order; the first failure is the witness, its columns in
/// partition order.
pub fn ttu_check<T: Scalar>(m: &LabeledMatrix<T>, p: &SkewPartition, mode: TtuMode) -> Result<TtuReport> {
    let required = ttu_count(p, m.nrows(), mode);
    if required > TU_CAP {
        return Err(Error::SizeCap {
            what: "transversal unimodularity check",
            required,
            cap: TU_CAP,
        });
    }
    let ints = m.integer_entries()?;
    let cols = Columns::new(m, p)?;
    let det_of = |rs: &[usize], js: &[usize]| -> BigInt {
        if let Some(small) = &cols.small {
            let sub: Vec<Vec<i64>> = rs.iter().map(|&r| js.iter().map(|&j| small[j][r]).collect()).collect();
            if let Some(d) = det_small(&sub) {
                return BigInt::from(d);
            }
        }
        det_bigint(
            rs.iter()
                .map(|&r| js.iter().map(|&j| ints[r][j].clone()).collect())
                .collect(),
        )
    };
    let n = p.class_count();
    let sizes: Vec<usize> = match mode {
        TtuMode::All => (1..=n.min(m.nrows())).collect(),
        TtuMode::TransversalOnly if n <= m.nrows() => vec![n],
        TtuMode::TransversalOnly => vec![],
    };
    let mut checked = 0u128;
    for k in sizes {
        for classes in (0..n).combinations(k) {
            for pick in classes
                .iter()
                .map(|&i| 0..cols.index[i].len())
                .multi_cartesian_product()
            {
                let js: Vec<usize> = classes.iter().zip(&pick).map(|(&i, &x)| cols.index[i][x]).collect();
                for rs in (0..m.nrows()).combinations(k) {
                    checked += 1;
                    let det = det_of(&rs, &js);
                    if det.magnitude() > &BigUint::from(1u8) {
                        return Ok(TtuReport {
                            ttu: false,
                            mode,
                            witness: Some(TuWitness {
                                rows: rs.iter().map(|&r| m.row_labels()[r].clone()).collect(),
                                cols: js.iter().map(|&j| m.col_labels()[j].clone()).collect(),
                                det,
                            }),
                            submatrices_checked: checked,
                        });
                    }
                }
            }
        }
    }
    Ok(TtuReport {
        ttu: true,
        mode,
        witness: None,
        submatrices_checked: checked,
    })
}

pub fn is_ttu<T: Scalar>(rep: &Representation<T>, mode: TtuMode) -> Result<TtuReport> {
    ttu_check(&rep.matrix, rep.partition(), mode)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateChecks {
    pub sheltering: bool,
    pub strict: bool,
    pub ttu: bool,
}

/// Replayable record of a representation of `Z3(G)` for a circle graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub graph: AdjacencyJson,
    pub word: Vec<String>,
    pub four_regular: GraphJson,
    pub euler_system: EulerSystem,
    pub e_base: Vec<String>,
    pub orientation: OrientationJson,
    pub matrix: MatrixJson,
    pub checks: CertificateChecks,
    pub basis: BTreeMap<String, ClosedWalk>,
}

impl Certificate {
    pub fn verified(&self) -> bool {
        self.checks.sheltering && self.checks.strict && self.checks.ttu
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum CertificateOutcome {
    Certificate(Box<Certificate>),
    Refusal { reason: String, words_examined: u64 },
}

/// For a circle graph `G`: find a realizing word, build `F` and its Euler
/// circuit from it, take the strict fundamental representation of `Q(F)`
/// with `E` the least edge, rename columns into `IAS(G)` labels and check it
/// against `Z3(G)`. Non-circle graphs are refused.
pub fn ttu_certificate_for_circle_graph(g: &LoopedSimpleGraph) -> Result<CertificateOutcome> {
    let check = is_circle_graph_bruteforce(g)?;
    let Some(word) = check.word else {
        return Ok(CertificateOutcome::Refusal {
            reason: "not a circle graph: no double occurrence word has it as interlacement graph".into(),
            words_examined: check.words_examined,
        });
    };
    let (f, c) = if word.is_empty() {
        (HalfEdgeGraph::empty(), euler_system(&HalfEdgeGraph::empty(), None)?)
    } else {
        from_word(&word)?
    };
    let d = c.directed_version(&f)?;
    let system = all_transitions(&f)?;
    // Keep, at every vertex, the single transitions through its least
    // half-edge.
    let least: BTreeMap<String, String> = f
        .vertices()
        .map(|v| Ok((v.to_string(), f.half_edges_at(v)?[0].clone())))
        .collect::<Result<_>>()?;
    let o = TransitionalOrientation::containing(&system, &least)?;
    let e_base = default_e_base(&f);
    let rep = fundamental_representation(&f, &d, &o, &e_base)?;
    let bijection = standard_bijection(&f, &c)?;
    let rep = rep.relabeled(&bijection, Arc::new(z3(g)?))?;
    let ias_order: Vec<String> = crate::multimatroid::ias_matrix(g).matrix.col_labels().to_vec();
    let rows = rep.matrix.row_labels().to_vec();
    let rep = Representation {
        matrix: rep.matrix.submatrix(&rows, &ias_order)?,
        ..rep
    };
    let checks = CertificateChecks {
        sheltering: is_sheltering(&rep)?.sheltering,
        strict: is_strict(&rep)?.strict,
        ttu: is_ttu(&rep, TtuMode::All)?.ttu,
    };
    let mut matrix = rep.matrix.to_json();
    matrix.skew_classes = Some(rep.partition().classes().to_vec());
    Ok(CertificateOutcome::Certificate(Box::new(Certificate {
        graph: g.to_json(),
        word,
        four_regular: f.to_json(),
        euler_system: c,
        e_base: e_base.into_iter().collect(),
        orientation: o.to_json(),
        matrix,
        checks,
        basis: rep.provenance.walks.clone(),
    })))
}
