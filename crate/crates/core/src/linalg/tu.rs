//! Total unimodularity by exhaustive minor enumeration, with the row-signing
//! characterization as an independent second checker.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Serialize, Serializer};

use super::elim::det_small;
use super::LabeledMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest number of square submatrices the exhaustive check will visit.
pub const TU_CAP: u128 = 10_000_000;

/// Largest number of (row subset, sign vector) pairs the signing check will
/// visit.
pub const SIGNING_CAP: u128 = 10_000_000;

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Number of nonempty square submatrices of an `r x c` matrix,
/// `sum_k C(r, k) C(c, k) = C(r + c, r) - 1`.
pub fn submatrix_count(r: usize, c: usize) -> u128 {
    binomial((r + c) as u128, r as u128).saturating_sub(1)
}

pub(crate) fn serialize_bigint<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// A square submatrix with determinant outside {-1, 0, 1}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TuWitness {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    #[serde(serialize_with = "serialize_bigint")]
    pub det: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TuReport {
    pub totally_unimodular: bool,
    pub witness: Option<TuWitness>,
    pub submatrices_checked: u128,
}

fn small_entries(ints: &[Vec<BigInt>]) -> Option<Vec<Vec<i64>>> {
    ints.iter()
        .map(|r| r.iter().map(ToPrimitive::to_i64).collect())
        .collect()
}

impl<T: Scalar> LabeledMatrix<T> {
    /// Exhaustive check that every square submatrix has determinant in
    /// {-1, 0, 1}. Submatrices are visited by increasing size, row and column
    /// subsets in label order; the first failure is returned, its
    /// determinant taken with labels sorted.
    pub fn is_totally_unimodular(&self) -> Result<TuReport> {
        let ints = self.integer_entries()?;
        let (r, c) = (self.nrows(), self.ncols());
        for (i, row) in ints.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if v.abs() > BigInt::one() {
                    return Ok(TuReport {
                        totally_unimodular: false,
                        witness: Some(TuWitness {
                            rows: vec![self.rows[i].clone()],
                            cols: vec![self.cols[j].clone()],
                            det: v.clone(),
                        }),
                        submatrices_checked: (i * c + j + 1) as u128,
                    });
                }
            }
        }
        let required = submatrix_count(r, c);
        if required > TU_CAP {
            return Err(Error::SizeCap {
                what: "total unimodularity check",
                required,
                cap: TU_CAP,
            });
        }
        let small = small_entries(&ints).expect("entries bounded by 1");
        let mut checked = (r * c) as u128;
        for k in 2..=r.min(c) {
            for rs in (0..r).combinations(k) {
                for cs in (0..c).combinations(k) {
                    checked += 1;
                    let sub: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| small[i][j]).collect()).collect();
                    let bad = match det_small(&sub) {
                        Some(d) => d.abs() > 1,
                        None => true,
                    };
                    if bad {
                        let rows: Vec<String> = rs.iter().map(|&i| self.rows[i].clone()).collect();
                        let cols: Vec<String> = cs.iter().map(|&j| self.cols[j].clone()).collect();
                        let det = self.submatrix(&rows, &cols)?.det()?.to_bigint().expect("integral");
                        return Ok(TuReport {
                            totally_unimodular: false,
                            witness: Some(TuWitness { rows, cols, det }),
                            submatrices_checked: checked,
                        });
                    }
                }
            }
        }
        Ok(TuReport {
            totally_unimodular: true,
            witness: None,
            submatrices_checked: checked,
        })
    }

    /// Row-signing characterization: for every set `Z` of rows there are
    /// signs making the signed row sum a {-1, 0, 1} vector. Runs on the
    /// transpose when that has fewer rows. Returns a failing row set (of the
    /// matrix actually examined) if any.
    pub fn row_signing_failure(&self) -> Result<Option<Vec<String>>> {
        if self.ncols() < self.nrows() {
            return self.transpose().row_signing_failure();
        }
        let ints = self.integer_entries()?;
        let r = self.nrows();
        let required = 3u128.saturating_pow(r as u32);
        if required > SIGNING_CAP {
            return Err(Error::SizeCap {
                what: "row-signing check",
                required,
                cap: SIGNING_CAP,
            });
        }
        let Some(small) = small_entries(&ints) else {
            return Ok(Some(self.rows.clone()));
        };
        let c = self.ncols();
        for mask in 1u64..(1u64 << r) {
            let z: Vec<usize> = (0..r).filter(|&i| mask >> i & 1 == 1).collect();
            // Fixing the first sign to +1 loses nothing: negating all signs
            // negates the sum.
            let found = (0u64..(1u64 << (z.len() - 1))).any(|signs| {
                (0..c).all(|j| {
                    let s: i64 = z
                        .iter()
                        .enumerate()
                        .map(|(k, &i)| {
                            let neg = k > 0 && signs >> (k - 1) & 1 == 1;
                            if neg {
                                -small[i][j]
                            } else {
                                small[i][j]
                            }
                        })
                        .sum();
                    (-1..=1).contains(&s)
                })
            });
            if !found {
                return Ok(Some(z.iter().map(|&i| self.rows[i].clone()).collect()));
            }
        }
        Ok(None)
    }

    pub fn is_totally_unimodular_by_signing(&self) -> Result<bool> {
        Ok(self.row_signing_failure()?.is_none())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::Matrix;
    use proptest::prelude::*;

    #[test]
    fn counts() {
        assert_eq!(submatrix_count(2, 2), 5);
        assert_eq!(submatrix_count(3, 0), 0);
        assert_eq!(binomial(5, 2), 10);
    }

    #[test]
    fn identity_is_tu() {
        let id = Matrix::identity(["a", "b", "c"]).unwrap();
        assert!(id.is_totally_unimodular().unwrap().totally_unimodular);
        assert!(id.is_totally_unimodular_by_signing().unwrap());
    }

    #[test]
    fn fundamental_cycle_matrix_is_tu() {
        let cm: Matrix = fixtures::fundamental_cycle_matrix().to_matrix();
        assert!(cm.is_totally_unimodular().unwrap().totally_unimodular);
        assert!(cm.is_totally_unimodular_by_signing().unwrap());
    }

    #[test]
    fn large_entry_is_immediate_witness() {
        let a = Matrix::from_i64_rows(&["r"], &["x", "y"], &[[1, 2]]).unwrap();
        let rep = a.is_totally_unimodular().unwrap();
        let w = rep.witness.unwrap();
        assert_eq!(
            (w.rows, w.cols, w.det),
            (vec!["r".to_string()], vec!["y".to_string()], BigInt::from(2))
        );
    }

    #[test]
    fn two_by_two_witness() {
        let a = Matrix::from_i64_rows(&["r", "s"], &["x", "y"], &[[1, 1], [-1, 1]]).unwrap();
        let rep = a.is_totally_unimodular().unwrap();
        assert!(!rep.totally_unimodular);
        assert_eq!(rep.witness.unwrap().det.abs(), BigInt::from(2));
        assert!(a.row_signing_failure().unwrap().is_some());
    }

    #[test]
    fn cap_is_enforced() {
        let a = Matrix::zeros((0..20).map(|i| format!("r{i}")), (0..20).map(|i| format!("c{i}"))).unwrap();
        assert!(a.is_totally_unimodular().unwrap_err().is_size_cap());
    }

    proptest! {
        #[test]
        fn checkers_agree(entries in prop::collection::vec(prop::collection::vec(-1i64..=1, 5), 1..=6)) {
            let rows: Vec<String> = (0..entries.len()).map(|i| format!("r{i}")).collect();
            let cols: Vec<String> = (0..5).map(|j| format!("c{j}")).collect();
            let a = Matrix::from_i64_rows(&rows, &cols, &entries).unwrap();
            let exhaustive = a.is_totally_unimodular().unwrap().totally_unimodular;
            prop_assert_eq!(exhaustive, a.is_totally_unimodular_by_signing().unwrap());
        }
    }
}
