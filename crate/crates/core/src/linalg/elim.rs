//! Fraction-free elimination kernels.

use num_bigint::BigInt;

use crate::scalar::Scalar;

/// Bareiss determinant of a square row-major matrix.
pub(crate) fn det_generic<T: Scalar>(mut a: Vec<Vec<T>>) -> T {
    let n = a.len();
    if n == 0 {
        return T::one();
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone()) / prev.clone();
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Rank by fraction-free row echelon form.
pub(crate) fn rank_generic<T: Scalar>(mut a: Vec<Vec<T>>) -> usize {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut r = 0;
    let mut prev = T::one();
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..m {
            for j in c + 1..n {
                let v = (a[i][j].clone() * a[r][c].clone() - a[i][c].clone() * a[r][j].clone()) / prev.clone();
                a[i][j] = v;
            }
            a[i][c] = T::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Bareiss determinant in `i128`; `None` on overflow.
pub fn det_small(a: &[Vec<i64>]) -> Option<i128> {
    let n = a.len();
    if n == 0 {
        return Some(1);
    }
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let mut negate = false;
    let mut prev: i128 = 1;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return Some(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = m[i][j].checked_mul(m[k][k])?;
                let y = m[i][k].checked_mul(m[k][j])?;
                m[i][j] = x.checked_sub(y)? / prev;
            }
        }
        prev = m[k][k];
    }
    let d = m[n - 1][n - 1];
    Some(if negate { -d } else { d })
}

/// Rank by Bareiss elimination in `i128`; `None` on overflow.
pub fn rank_small(a: &[Vec<i64>]) -> Option<usize> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut w: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let mut r = 0;
    let mut prev: i128 = 1;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| w[i][c] != 0) else {
            continue;
        };
        w.swap(p, r);
        for i in r + 1..m {
            for j in c + 1..n {
                let x = w[i][j].checked_mul(w[r][c])?;
                let y = w[i][c].checked_mul(w[r][j])?;
                w[i][j] = x.checked_sub(y)? / prev;
            }
            w[i][c] = 0;
        }
        prev = w[r][c];
        r += 1;
    }
    Some(r)
}

pub fn det_bigint(a: Vec<Vec<BigInt>>) -> BigInt {
    det_generic(a)
}

/// Rank over GF(2) of 0/1 rows.
pub fn rank_gf2_rows(rows: &[Vec<bool>]) -> usize {
    let n = rows.first().map_or(0, Vec::len);
    let words = n.div_ceil(64);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            let mut w = vec![0u64; words];
            for (j, &b) in r.iter().enumerate() {
                if b {
                    w[j / 64] |= 1 << (j % 64);
                }
            }
            w
        })
        .collect();
    let mut rank = 0;
    for c in 0..n {
        let (word, bit) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (rank..m.len()).find(|&i| m[i][word] & bit != 0) else {
            continue;
        };
        m.swap(p, rank);
        let pivot = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && row[word] & bit != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Cofactor expansion along the first row; test oracle only.
#[cfg(test)]
pub(crate) fn det_cofactor(a: &[Vec<i64>]) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut total = 0i128;
    for j in 0..n {
        if a[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = a[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect())
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total += sign * a[0][j] as i128 * det_cofactor(&minor);
    }
    total
}
