//! Multimatroids given by rank oracles on subtransversals, with exhaustive
//! axiom verification, transverse matroids and minors.
//!
//! A subtransversal is passed to an oracle as a *choice*: one entry per skew
//! class, `None` when the class is not represented and `Some(j)` for the
//! `j`-th element of the class.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};

pub mod circle;
pub mod eulerian;
pub mod z3;

pub use circle::{is_circle_graph_bruteforce, CircleCheck, CIRCLE_MAX_VERTICES};
pub use eulerian::{interlacement_graph, q_f, q_f_named, z3_equals_qf, z3_equals_qf_with, EulerianQ, Z3QfReport};
pub use z3::{ias_matrix, z3, IsotropicMatrix, LoopedSimpleGraph, Z3};

/// Largest number of subtransversals (including the empty one) that the
/// exhaustive routines will enumerate.
pub const SUBTRANSVERSAL_CAP: u128 = 1 << 20;

/// A ground set partitioned into ordered skew classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkewPartition {
    classes: Vec<Vec<String>>,
    #[serde(skip)]
    index: BTreeMap<String, (usize, usize)>,
}

impl SkewPartition {
    pub fn new(classes: Vec<Vec<String>>) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::Contract(format!("skew class {i} is empty")));
            }
            for (j, x) in class.iter().enumerate() {
                if index.insert(x.clone(), (i, j)).is_some() {
                    return Err(Error::DuplicateLabel {
                        kind: "ground element",
                        label: x.clone(),
                    });
                }
            }
        }
        Ok(Self { classes, index })
    }

    pub fn classes(&self) -> &[Vec<String>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn ground(&self) -> impl Iterator<Item = &str> + '_ {
        self.classes.iter().flatten().map(String::as_str)
    }

    pub fn ground_size(&self) -> usize {
        self.index.len()
    }

    pub fn contains(&self, x: &str) -> bool {
        self.index.contains_key(x)
    }

    /// `(class, position)` of an element.
    pub fn locate(&self, x: &str) -> Result<(usize, usize)> {
        self.index
            .get(x)
            .copied()
            .ok_or_else(|| Error::unknown("ground element", x))
    }

    /// Arity when every class has the same size.
    pub fn arity(&self) -> Option<usize> {
        let k = self.classes.first()?.len();
        self.classes.iter().all(|c| c.len() == k).then_some(k)
    }

    /// The choice vector of a set of labels; fails unless they form a
    /// subtransversal.
    pub fn choice_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<Option<usize>>> {
        let mut choice = vec![None; self.classes.len()];
        for l in labels {
            let (i, j) = self.locate(l.as_ref())?;
            if choice[i].is_some() {
                return Err(Error::InvalidTransversal(format!(
                    "two elements of skew class {i} in subtransversal"
                )));
            }
            choice[i] = Some(j);
        }
        Ok(choice)
    }

    pub fn labels_of(&self, choice: &[Option<usize>]) -> Vec<String> {
        choice
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.map(|j| self.classes[i][j].clone()))
            .collect()
    }

    /// Number of subtransversals, the empty one included.
    pub fn subtransversal_count(&self) -> u128 {
        self.classes
            .iter()
            .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128 + 1))
    }

    pub fn transversal_count(&self) -> u128 {
        self.classes
            .iter()
            .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128))
    }

    pub(crate) fn require_enumerable(&self, what: &'static str) -> Result<()> {
        let required = self.subtransversal_count();
        if required > SUBTRANSVERSAL_CAP {
            return Err(Error::SizeCap {
                what,
                required,
                cap: SUBTRANSVERSAL_CAP,
            });
        }
        Ok(())
    }

    /// Mixed-radix code of a choice; digit `0` means absent.
    pub(crate) fn code(&self, choice: &[Option<usize>]) -> usize {
        let mut code = 0;
        let mut weight = 1;
        for (c, class) in choice.iter().zip(&self.classes) {
            code += weight * c.map_or(0, |j| j + 1);
            weight *= class.len() + 1;
        }
        code
    }

    pub(crate) fn weights(&self) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.classes.len());
        let mut acc = 1;
        for class in &self.classes {
            w.push(acc);
            acc *= class.len() + 1;
        }
        w
    }

    /// Every subtransversal, in code order.
    pub fn subtransversals(&self) -> Subtransversals<'_> {
        Subtransversals {
            partition: self,
            next: Some(vec![None; self.classes.len()]),
        }
    }

    /// Every transversal, odometer order with the first class fastest.
    pub fn transversals(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.subtransversals()
            .filter(|c| c.iter().all(Option::is_some))
            .map(|c| c.into_iter().map(|x| x.expect("full")).collect())
    }
}

pub struct Subtransversals<'a> {
    partition: &'a SkewPartition,
    next: Option<Vec<Option<usize>>>,
}

impl Iterator for Subtransversals<'_> {
    type Item = Vec<Option<usize>>;

    fn next(&mut self) -> Option<Self::Item> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = 0;
        loop {
            if i == succ.len() {
                break;
            }
            let k = self.partition.classes[i].len();
            match succ[i] {
                None => {
                    succ[i] = Some(0);
                    self.next = Some(succ);
                    break;
                }
                Some(j) if j + 1 < k => {
                    succ[i] = Some(j + 1);
                    self.next = Some(succ);
                    break;
                }
                Some(_) => {
                    succ[i] = None;
                    i += 1;
                }
            }
        }
        Some(current)
    }
}

/// A multimatroid as a rank oracle on subtransversals.
pub trait Multimatroid: Send + Sync {
    fn partition(&self) -> &SkewPartition;

    /// Rank of the subtransversal described by `choice`.
    fn rank(&self, choice: &[Option<usize>]) -> usize;

    fn rank_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<usize>
    where
        Self: Sized,
    {
        Ok(self.rank(&self.partition().choice_of(labels)?))
    }
}

impl<M: Multimatroid + ?Sized> Multimatroid for &M {
    fn partition(&self) -> &SkewPartition {
        (**self).partition()
    }

    fn rank(&self, choice: &[Option<usize>]) -> usize {
        (**self).rank(choice)
    }
}

impl<M: Multimatroid + ?Sized> Multimatroid for Box<M> {
    fn partition(&self) -> &SkewPartition {
        (**self).partition()
    }

    fn rank(&self, choice: &[Option<usize>]) -> usize {
        (**self).rank(choice)
    }
}

/// Ranks of every subtransversal, stored by mixed-radix code.
#[derive(Debug, Clone)]
pub struct TableMultimatroid {
    partition: SkewPartition,
    ranks: Vec<usize>,
}

impl TableMultimatroid {
    pub fn tabulate<M: Multimatroid + ?Sized>(z: &M) -> Result<Self> {
        let partition = z.partition().clone();
        partition.require_enumerable("rank table")?;
        let ranks = partition.subtransversals().map(|c| z.rank(&c)).collect();
        Ok(Self { partition, ranks })
    }

    pub fn set_rank<S: AsRef<str>>(&mut self, labels: &[S], rank: usize) -> Result<()> {
        let code = self.partition.code(&self.partition.choice_of(labels)?);
        self.ranks[code] = rank;
        Ok(())
    }

    pub(crate) fn by_code(&self, code: usize) -> usize {
        self.ranks[code]
    }
}

impl Multimatroid for TableMultimatroid {
    fn partition(&self) -> &SkewPartition {
        &self.partition
    }

    fn rank(&self, choice: &[Option<usize>]) -> usize {
        self.ranks[self.partition.code(choice)]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Normalization,
    UnitIncrease,
    Submodularity,
    SkewClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness_subtransversal: Vec<String>,
    pub details: String,
}

/// Checks the rank axioms on every subtransversal: `r(∅) = 0`, unit
/// increase, local submodularity `r(S+x) + r(S+y) >= r(S+x+y) + r(S)` for
/// elements of distinct classes missed by `S`, and the skew condition
/// `max(r(S+x), r(S+y)) > r(S)` for distinct `x`, `y` of one class missed by
/// `S`. Unit increase, local submodularity and normalization together make
/// `r` a matroid rank function on `2^T` for every transversal `T`.
pub fn verify_multimatroid_axioms<M: Multimatroid + ?Sized>(z: &M) -> Result<Vec<AxiomViolation>> {
    let table = TableMultimatroid::tabulate(z)?;
    let p = &table.partition;
    let w = p.weights();
    let mut out = Vec::new();
    let with = |code: usize, i: usize, j: usize| code + w[i] * (j + 1);
    for choice in p.subtransversals() {
        let code = p.code(&choice);
        let r = table.by_code(code);
        let labels = || p.labels_of(&choice);
        if choice.iter().all(Option::is_none) && r != 0 {
            out.push(AxiomViolation {
                axiom: Axiom::Normalization,
                witness_subtransversal: vec![],
                details: format!("rank of the empty set is {r}"),
            });
        }
        let missing: Vec<usize> = (0..choice.len()).filter(|&i| choice[i].is_none()).collect();
        for &i in &missing {
            let k = p.classes[i].len();
            for x in 0..k {
                let rx = table.by_code(with(code, i, x));
                if rx < r || rx > r + 1 {
                    out.push(AxiomViolation {
                        axiom: Axiom::UnitIncrease,
                        witness_subtransversal: labels(),
                        details: format!("adding {} changes rank {r} to {rx}", p.classes[i][x]),
                    });
                }
                for y in x + 1..k {
                    let ry = table.by_code(with(code, i, y));
                    if rx.max(ry) <= r {
                        out.push(AxiomViolation {
                            axiom: Axiom::SkewClass,
                            witness_subtransversal: labels(),
                            details: format!("neither {} nor {} raises rank {r}", p.classes[i][x], p.classes[i][y]),
                        });
                    }
                }
            }
        }
        for (a, &i) in missing.iter().enumerate() {
            for &l in &missing[a + 1..] {
                for x in 0..p.classes[i].len() {
                    for y in 0..p.classes[l].len() {
                        let rx = table.by_code(with(code, i, x));
                        let ry = table.by_code(with(code, l, y));
                        let rxy = table.by_code(with(with(code, i, x), l, y));
                        if rx + ry < rxy + r {
                            out.push(AxiomViolation {
                                axiom: Axiom::Submodularity,
                                witness_subtransversal: labels(),
                                details: format!(
                                    "x = {}, y = {}: {rx} + {ry} < {rxy} + {r}",
                                    p.classes[i][x], p.classes[l][y]
                                ),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `Z[T]`: the matroid on a transversal `T` given by restricting the rank.
pub struct TransverseMatroid<'a, M: Multimatroid + ?Sized> {
    z: &'a M,
    transversal: Vec<usize>,
}

pub fn transverse_matroid<'a, M: Multimatroid + ?Sized>(z: &'a M, t: &[usize]) -> Result<TransverseMatroid<'a, M>> {
    let p = z.partition();
    if t.len() != p.class_count() || t.iter().zip(p.classes()).any(|(&j, c)| j >= c.len()) {
        return Err(Error::InvalidTransversal("choice does not fit the skew classes".into()));
    }
    Ok(TransverseMatroid {
        z,
        transversal: t.to_vec(),
    })
}

impl<M: Multimatroid + ?Sized> TransverseMatroid<'_, M> {
    pub fn elements(&self) -> Vec<String> {
        let p = self.z.partition();
        self.transversal
            .iter()
            .enumerate()
            .map(|(i, &j)| p.classes()[i][j].clone())
            .collect()
    }

    /// Rank of the elements whose class indices have `member[i]` set.
    pub fn rank(&self, member: &[bool]) -> usize {
        let choice: Vec<Option<usize>> = self
            .transversal
            .iter()
            .zip(member)
            .map(|(&j, &m)| m.then_some(j))
            .collect();
        self.z.rank(&choice)
    }

    pub fn rank_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<usize> {
        let mut member = vec![false; self.transversal.len()];
        for l in labels {
            let (i, j) = self.z.partition().locate(l.as_ref())?;
            if self.transversal[i] != j {
                return Err(Error::unknown("transversal element", l.as_ref()));
            }
            member[i] = true;
        }
        Ok(self.rank(&member))
    }
}

/// `Z - T`: drop one element from every skew class.
pub struct Minor<M> {
    parent: M,
    partition: SkewPartition,
    removed: Vec<usize>,
}

pub fn minor_remove_transversal<M: Multimatroid>(z: M, t: &[usize]) -> Result<Minor<M>> {
    let p = z.partition();
    if t.len() != p.class_count() || t.iter().zip(p.classes()).any(|(&j, c)| j >= c.len()) {
        return Err(Error::InvalidTransversal("choice does not fit the skew classes".into()));
    }
    if let Some(c) = p.classes().iter().find(|c| c.len() < 2) {
        return Err(Error::Contract(format!("skew class {{{}}} is a singleton", c[0])));
    }
    let classes = p
        .classes()
        .iter()
        .zip(t)
        .map(|(c, &j)| {
            c.iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect();
    let partition = SkewPartition::new(classes)?;
    Ok(Minor {
        parent: z,
        partition,
        removed: t.to_vec(),
    })
}

impl<M: Multimatroid> Multimatroid for Minor<M> {
    fn partition(&self) -> &SkewPartition {
        &self.partition
    }

    fn rank(&self, choice: &[Option<usize>]) -> usize {
        let lifted: Vec<Option<usize>> = choice
            .iter()
            .zip(&self.removed)
            .map(|(c, &r)| c.map(|j| if j >= r { j + 1 } else { j }))
            .collect();
        self.parent.rank(&lifted)
    }
}

/// Largest rank over all subtransversals; attained on a transversal.
pub fn max_rank<M: Multimatroid + ?Sized>(z: &M) -> Result<usize> {
    let p = z.partition();
    let required = p.transversal_count();
    if required > SUBTRANSVERSAL_CAP {
        return Err(Error::SizeCap {
            what: "transversal enumeration",
            required,
            cap: SUBTRANSVERSAL_CAP,
        });
    }
    Ok(p.transversals()
        .map(|t| z.rank(&t.into_iter().map(Some).collect::<Vec<_>>()))
        .max()
        .unwrap_or(0))
}

/// Labels of the ground set, for comparisons against a matrix's columns.
pub fn ground_set<M: Multimatroid + ?Sized>(z: &M) -> BTreeSet<String> {
    z.partition().ground().map(str::to_string).collect()
}
