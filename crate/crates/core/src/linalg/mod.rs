//! Exact matrices whose rows and columns are indexed by label sets.
//!
//! Labels keep their insertion order for iteration and emission, but
//! equality, determinants and every other contractual result depend only on
//! the label sets: determinants sort both label sets lexicographically
//! before eliminating.

mod elim;
mod tu;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use elim::{det_bigint, det_small, rank_gf2_rows, rank_small};
pub use tu::{submatrix_count, TuReport, TuWitness, SIGNING_CAP, TU_CAP};

#[derive(Debug, Clone)]
pub struct LabeledMatrix<T> {
    rows: Vec<String>,
    cols: Vec<String>,
    row_index: BTreeMap<String, usize>,
    col_index: BTreeMap<String, usize>,
    data: Vec<T>,
}

fn index_labels(kind: &'static str, labels: &[String]) -> Result<BTreeMap<String, usize>> {
    let mut index = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicateLabel { kind, label: l.clone() });
        }
    }
    Ok(index)
}

fn owned<S: AsRef<str>>(labels: impl IntoIterator<Item = S>) -> Vec<String> {
    labels.into_iter().map(|s| s.as_ref().to_string()).collect()
}

impl<T: Scalar> LabeledMatrix<T> {
    pub fn zeros<R, C>(rows: R, cols: C) -> Result<Self>
    where
        R: IntoIterator,
        R::Item: AsRef<str>,
        C: IntoIterator,
        C::Item: AsRef<str>,
    {
        let rows = owned(rows);
        let cols = owned(cols);
        let row_index = index_labels("row label", &rows)?;
        let col_index = index_labels("column label", &cols)?;
        let data = vec![T::zero(); rows.len() * cols.len()];
        Ok(Self {
            rows,
            cols,
            row_index,
            col_index,
            data,
        })
    }

    /// Builds from row-major entries.
    pub fn from_rows<R, C>(rows: R, cols: C, entries: Vec<Vec<T>>) -> Result<Self>
    where
        R: IntoIterator,
        R::Item: AsRef<str>,
        C: IntoIterator,
        C::Item: AsRef<str>,
    {
        let mut m = Self::zeros(rows, cols)?;
        if entries.len() != m.rows.len() || entries.iter().any(|r| r.len() != m.cols.len()) {
            return Err(Error::ShapeMismatch(format!(
                "expected {} rows of {} entries",
                m.rows.len(),
                m.cols.len()
            )));
        }
        m.data = entries.into_iter().flatten().collect();
        Ok(m)
    }

    pub fn from_i64_rows<R, C, E>(rows: &[R], cols: &[C], entries: &[E]) -> Result<Self>
    where
        R: AsRef<str>,
        C: AsRef<str>,
        E: AsRef<[i64]>,
    {
        let entries = entries
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| T::from_i64(v)).collect())
            .collect();
        Self::from_rows(rows.iter().map(AsRef::as_ref), cols.iter().map(AsRef::as_ref), entries)
    }

    pub fn identity<L>(labels: L) -> Result<Self>
    where
        L: IntoIterator,
        L::Item: AsRef<str>,
    {
        let labels = owned(labels);
        let mut m = Self::zeros(&labels, &labels)?;
        for i in 0..labels.len() {
            *m.at_mut(i, i) = T::one();
        }
        Ok(m)
    }

    pub fn row_labels(&self) -> &[String] {
        &self.rows
    }

    pub fn col_labels(&self) -> &[String] {
        &self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn has_row(&self, r: &str) -> bool {
        self.row_index.contains_key(r)
    }

    pub fn has_col(&self, c: &str) -> bool {
        self.col_index.contains_key(c)
    }

    fn row_pos(&self, r: &str) -> Result<usize> {
        self.row_index
            .get(r)
            .copied()
            .ok_or_else(|| Error::unknown("row label", r))
    }

    fn col_pos(&self, c: &str) -> Result<usize> {
        self.col_index
            .get(c)
            .copied()
            .ok_or_else(|| Error::unknown("column label", c))
    }

    /// Entry by position in label order.
    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols.len() + j]
    }

    fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        let n = self.cols.len();
        &mut self.data[i * n + j]
    }

    pub fn get(&self, r: &str, c: &str) -> Result<&T> {
        Ok(self.at(self.row_pos(r)?, self.col_pos(c)?))
    }

    pub fn set(&mut self, r: &str, c: &str, v: T) -> Result<()> {
        let (i, j) = (self.row_pos(r)?, self.col_pos(c)?);
        *self.at_mut(i, j) = v;
        Ok(())
    }

    /// Adds `v` to the entry at (r, c).
    pub fn add_to(&mut self, r: &str, c: &str, v: T) -> Result<()> {
        let (i, j) = (self.row_pos(r)?, self.col_pos(c)?);
        let e = self.at_mut(i, j);
        *e = e.clone() + v;
        Ok(())
    }

    pub fn row(&self, r: &str) -> Result<Vec<T>> {
        let i = self.row_pos(r)?;
        Ok((0..self.ncols()).map(|j| self.at(i, j).clone()).collect())
    }

    pub fn col(&self, c: &str) -> Result<Vec<T>> {
        let j = self.col_pos(c)?;
        Ok((0..self.nrows()).map(|i| self.at(i, j).clone()).collect())
    }

    pub fn rows_vec(&self) -> Vec<Vec<T>> {
        (0..self.nrows())
            .map(|i| (0..self.ncols()).map(|j| self.at(i, j).clone()).collect())
            .collect()
    }

    /// The restriction to the given rows and columns, in the given order.
    pub fn submatrix<R, C>(&self, rows: &[R], cols: &[C]) -> Result<Self>
    where
        R: AsRef<str>,
        C: AsRef<str>,
    {
        let ri: Vec<usize> = rows.iter().map(|r| self.row_pos(r.as_ref())).collect::<Result<_>>()?;
        let ci: Vec<usize> = cols.iter().map(|c| self.col_pos(c.as_ref())).collect::<Result<_>>()?;
        let mut m = Self::zeros(rows.iter().map(AsRef::as_ref), cols.iter().map(AsRef::as_ref))?;
        for (a, &i) in ri.iter().enumerate() {
            for (b, &j) in ci.iter().enumerate() {
                *m.at_mut(a, b) = self.at(i, j).clone();
            }
        }
        Ok(m)
    }

    pub fn restrict_columns<C: AsRef<str>>(&self, cols: &[C]) -> Result<Self> {
        self.submatrix(&self.rows, cols)
    }

    pub fn restrict_rows<R: AsRef<str>>(&self, rows: &[R]) -> Result<Self> {
        self.submatrix(rows, &self.cols)
    }

    /// Rows and columns re-sorted lexicographically by label.
    pub fn sorted(&self) -> Self {
        let mut rows = self.rows.clone();
        let mut cols = self.cols.clone();
        rows.sort();
        cols.sort();
        self.submatrix(&rows, &cols).expect("own labels")
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(&self.cols, &self.rows).expect("labels already unique");
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                *m.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        m
    }

    /// The product, requiring `self`'s column labels and `other`'s row labels
    /// to be the same set.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        let a: BTreeSet<&String> = self.cols.iter().collect();
        let b: BTreeSet<&String> = other.rows.iter().collect();
        if a != b {
            return Err(Error::ShapeMismatch(
                "column labels of the left factor differ from row labels of the right factor".into(),
            ));
        }
        let inner: Vec<usize> = self.cols.iter().map(|c| other.row_index[c]).collect();
        let mut m = Self::zeros(&self.rows, &other.cols)?;
        for i in 0..self.nrows() {
            for (k, &kk) in inner.iter().enumerate() {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols() {
                    let b = other.at(kk, j);
                    if !b.is_zero() {
                        let e = m.at_mut(i, j);
                        *e = e.clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> LabeledMatrix<U> {
        LabeledMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            row_index: self.row_index.clone(),
            col_index: self.col_index.clone(),
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Renames rows; `f` must stay injective.
    pub fn relabel_rows(&self, f: impl Fn(&str) -> String) -> Result<Self> {
        let rows: Vec<String> = self.rows.iter().map(|r| f(r)).collect();
        let mut m = self.clone();
        m.row_index = index_labels("row label", &rows)?;
        m.rows = rows;
        Ok(m)
    }

    /// Renames columns; `f` must stay injective.
    pub fn relabel_cols(&self, f: impl Fn(&str) -> String) -> Result<Self> {
        let cols: Vec<String> = self.cols.iter().map(|c| f(c)).collect();
        let mut m = self.clone();
        m.col_index = index_labels("column label", &cols)?;
        m.cols = cols;
        Ok(m)
    }

    /// Stacks `other` below `self`; column label sets must agree.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if other.ncols() != self.ncols() {
            return Err(Error::ShapeMismatch("column label sets differ".into()));
        }
        let other = other.restrict_columns(&self.cols)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        let mut m = Self::zeros(&rows, &self.cols)?;
        m.data = self.data.iter().chain(&other.data).cloned().collect();
        Ok(m)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(Scalar::is_integral)
    }

    /// Entries as integers, row-major, or the first non-integral position.
    pub fn integer_entries(&self) -> Result<Vec<Vec<BigInt>>> {
        (0..self.nrows())
            .map(|i| {
                (0..self.ncols())
                    .map(|j| {
                        self.at(i, j).to_bigint().ok_or_else(|| Error::NonIntegral {
                            row: self.rows[i].clone(),
                            col: self.cols[j].clone(),
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// Determinant with rows and columns sorted lexicographically by label.
    pub fn det(&self) -> Result<T> {
        if self.nrows() != self.ncols() {
            return Err(Error::NotSquare {
                rows: self.nrows(),
                cols: self.ncols(),
            });
        }
        let s = self.sorted();
        Ok(elim::det_generic(s.rows_vec()))
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        elim::rank_generic(self.rows_vec())
    }

    /// Rank of the entrywise reduction mod 2. Errors on non-integral entries.
    pub fn rank_gf2(&self) -> Result<usize> {
        let ints = self.integer_entries()?;
        let bits: Vec<Vec<bool>> = ints
            .iter()
            .map(|r| r.iter().map(|v| v % 2u8 != BigInt::zero()).collect())
            .collect();
        Ok(rank_gf2_rows(&bits))
    }

    /// True iff square and `|det| = 1`.
    pub fn is_unimodular(&self) -> Result<bool> {
        let d = self.det()?;
        Ok(d.abs().is_one() && self.is_integral())
    }

    /// Rows and columns in label order; entries as integers or `p/q`.
    pub fn to_text(&self) -> String {
        let mut rows = self.rows.clone();
        let mut cols = self.cols.clone();
        rows.sort();
        cols.sort();
        self.to_text_ordered(&rows, &cols)
    }

    /// Text emission with explicit row and column order.
    pub fn to_text_ordered<R: AsRef<str>, C: AsRef<str>>(&self, rows: &[R], cols: &[C]) -> String {
        let cells: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                cols.iter()
                    .map(|c| {
                        self.get(r.as_ref(), c.as_ref())
                            .map(|v| v.to_string())
                            .unwrap_or_default()
                    })
                    .collect()
            })
            .collect();
        let label_w = rows.iter().map(|r| r.as_ref().len()).max().unwrap_or(0);
        let widths: Vec<usize> = cols
            .iter()
            .enumerate()
            .map(|(j, c)| {
                cells
                    .iter()
                    .map(|row| row[j].len())
                    .chain([c.as_ref().len()])
                    .max()
                    .unwrap_or(1)
            })
            .collect();
        let mut out = String::new();
        out.push_str(&" ".repeat(label_w));
        for (c, w) in cols.iter().zip(&widths) {
            out.push_str(&format!("  {:>w$}", c.as_ref(), w = w));
        }
        out.push('\n');
        for (r, row) in rows.iter().zip(&cells) {
            out.push_str(&format!("{:<w$}", r.as_ref(), w = label_w));
            for (v, w) in row.iter().zip(&widths) {
                out.push_str(&format!("  {:>w$}", v, w = w));
            }
            out.push('\n');
        }
        out
    }

    /// JSON form listing only nonzero entries, in label order.
    pub fn to_json(&self) -> MatrixJson {
        let mut entries = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            for (j, c) in self.cols.iter().enumerate() {
                let v = self.at(i, j);
                if !v.is_zero() {
                    entries.push((r.clone(), c.clone(), v.to_string()));
                }
            }
        }
        MatrixJson {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries,
            skew_classes: None,
        }
    }
}

impl<T: Scalar + FromStr> LabeledMatrix<T> {
    pub fn from_json(spec: &MatrixJson) -> Result<Self> {
        let mut m = Self::zeros(&spec.rows, &spec.cols)?;
        for (r, c, v) in &spec.entries {
            let x = T::from_str(v.trim())
                .map_err(|_| Error::Contract(format!("entry `{v}` at ({r}, {c}) is not a number")))?;
            m.set(r, c, x)?;
        }
        Ok(m)
    }
}

impl LabeledMatrix<num_rational::BigRational> {
    /// Some `λ` (indexed by row label) with `λ · self = target`, where
    /// `target` maps column labels to values (absent means zero). `None` if
    /// `target` is outside the row space.
    pub fn solve_left(
        &self,
        target: &BTreeMap<String, num_rational::BigRational>,
    ) -> Result<Option<BTreeMap<String, num_rational::BigRational>>> {
        use num_rational::BigRational as Q;
        if let Some(c) = target.keys().find(|c| !self.has_col(c)) {
            return Err(Error::unknown("column label", c.clone()));
        }
        // Solve selfᵀ λ = target by Gauss-Jordan on the augmented transpose.
        let (m, n) = (self.ncols(), self.nrows());
        let mut a: Vec<Vec<Q>> = (0..m)
            .map(|j| {
                let mut row: Vec<Q> = (0..n).map(|i| self.at(i, j).clone()).collect();
                row.push(target.get(&self.cols[j]).cloned().unwrap_or_else(Q::zero));
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(p, r);
            let inv = Q::one() / a[r][c].clone();
            for x in a[r].iter_mut() {
                *x = x.clone() * inv.clone();
            }
            for i in 0..m {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for k in 0..=n {
                        let v = a[r][k].clone() * f.clone();
                        a[i][k] = a[i][k].clone() - v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if a[r..].iter().any(|row| !row[n].is_zero()) {
            return Ok(None);
        }
        let mut lambda: BTreeMap<String, Q> = self.rows.iter().map(|l| (l.clone(), Q::zero())).collect();
        for (i, &c) in pivots.iter().enumerate() {
            lambda.insert(self.rows[c].clone(), a[i][n].clone());
        }
        Ok(Some(lambda))
    }
}

impl<T: Scalar> PartialEq for LabeledMatrix<T> {
    fn eq(&self, other: &Self) -> bool {
        if self.row_index.len() != other.row_index.len()
            || self.col_index.len() != other.col_index.len()
            || !self.row_index.keys().eq(other.row_index.keys())
            || !self.col_index.keys().eq(other.col_index.keys())
        {
            return false;
        }
        self.row_index.iter().all(|(r, &i)| {
            self.col_index
                .iter()
                .all(|(c, &j)| self.at(i, j) == other.at(other.row_index[r], other.col_index[c]))
        })
    }
}

impl<T: Scalar> fmt::Display for LabeledMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `{rows, cols, entries: [[r, c, "p/q"]]}`; absent entries are zero.
/// `skew_classes` optionally groups column labels into skew classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skew_classes: Option<Vec<Vec<String>>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{IntMatrix, Matrix};
    use num_rational::BigRational;

    fn m(rows: &[&str], cols: &[&str], e: &[&[i64]]) -> Matrix {
        Matrix::from_i64_rows(rows, cols, e).unwrap()
    }

    #[test]
    fn equality_ignores_label_order() {
        let a = m(&["r", "s"], &["x", "y"], &[&[1, 2], &[3, 4]]);
        let b = m(&["s", "r"], &["y", "x"], &[&[4, 3], &[2, 1]]);
        assert_eq!(a, b);
        assert_ne!(a, m(&["r", "s"], &["x", "y"], &[&[1, 2], &[3, 5]]));
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(Matrix::zeros(["a", "a"], ["x"]).is_err());
    }

    #[test]
    fn submatrix_and_unknown_label() {
        let a = m(&["r", "s"], &["x", "y"], &[&[1, 2], &[3, 4]]);
        let s = a.submatrix(&["s"], &["x"]).unwrap();
        assert_eq!(s.get("s", "x").unwrap(), &BigRational::from_i64(3));
        assert!(a.submatrix(&["q"], &["x"]).is_err());
        let empty = a.restrict_columns::<&str>(&[]).unwrap();
        assert_eq!((empty.nrows(), empty.ncols(), empty.rank()), (2, 0, 0));
    }

    #[test]
    fn det_and_rank_basics() {
        assert_eq!(
            Matrix::identity(["a", "b", "c"]).unwrap().det().unwrap(),
            BigRational::one()
        );
        let ones = m(&["r", "s"], &["x", "y"], &[&[1, 1], &[1, 1]]);
        assert!(!ones.is_unimodular().unwrap());
        assert_eq!(ones.rank(), 1);
        assert!(m(&["r"], &["x", "y"], &[&[1, 0]]).det().is_err());
        assert_eq!(Matrix::zeros(["a", "b"], ["x"]).unwrap().rank(), 0);
    }

    #[test]
    fn gf2_rank_of_k2_ias() {
        let ias = m(
            &["u", "v"],
            &["u:I", "v:I", "u:A", "v:A", "u:I+A", "v:I+A"],
            &[&[1, 0, 0, 1, 1, 1], &[0, 1, 1, 0, 1, 1]],
        );
        assert_eq!(ias.rank_gf2().unwrap(), 2);
        let half = Matrix::from_rows(["r"], ["c"], vec![vec![BigRational::new(1.into(), 2.into())]]).unwrap();
        assert!(matches!(half.rank_gf2(), Err(Error::NonIntegral { .. })));
    }

    #[test]
    fn multiply_matches_labels_not_positions() {
        let a = m(&["r"], &["x", "y"], &[&[1, 2]]);
        let b = m(&["y", "x"], &["c"], &[&[10], &[100]]);
        let p = a.multiply(&b).unwrap();
        assert_eq!(p.get("r", "c").unwrap(), &BigRational::from_i64(120));
        assert!(a.multiply(&m(&["x"], &["c"], &[&[1]])).is_err());
        let id = Matrix::identity(["x", "y"]).unwrap();
        assert_eq!(a.multiply(&id).unwrap(), a);
    }

    #[test]
    fn json_round_trip_keeps_fractions() {
        let mut a = m(&["r", "s"], &["x", "y"], &[&[0, -2], &[3, 0]]);
        a.set("r", "x", BigRational::new((-1).into(), 3.into())).unwrap();
        let j = a.to_json();
        assert_eq!(j.entries.len(), 3);
        assert!(j.entries.contains(&("r".into(), "x".into(), "-1/3".into())));
        let text = serde_json::to_string(&j).unwrap();
        let back = Matrix::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn text_sorts_labels() {
        let a = m(&["s", "r"], &["y", "x"], &[&[4, 3], &[2, -1]]);
        assert_eq!(a.to_text(), "    x  y\nr  -1  2\ns   3  4\n");
    }

    #[test]
    fn integer_matrix_alias_works() {
        let a = IntMatrix::from_i64_rows(&["r", "s"], &["x", "y"], &[[2, 1], [1, 1]]).unwrap();
        assert!(a.is_unimodular().unwrap());
        assert_eq!(a.det().unwrap(), BigInt::from(1));
    }
}
