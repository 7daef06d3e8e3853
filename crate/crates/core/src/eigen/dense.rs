//! Small dense helpers: complex determinants and numerical rank.

use std::collections::BTreeMap;

use ndarray::Array2;
use num_complex::Complex;

use crate::scalar::Real;

/// Determinant by LU factorization with partial pivoting.
pub fn determinant<T: Real>(a: &Array2<Complex<T>>) -> Complex<T> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "determinant needs a square matrix");
    let mut lu: Vec<Complex<T>> = a.iter().copied().collect();
    let mut det = Complex::new(T::one(), T::zero());
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| lu[i * n + col].norm().total_cmp(&lu[j * n + col].norm()))
            .unwrap_or(col);
        let p = lu[pivot * n + col];
        if p.norm() == T::zero() {
            return Complex::new(T::zero(), T::zero());
        }
        if pivot != col {
            for j in 0..n {
                lu.swap(pivot * n + j, col * n + j);
            }
            det = -det;
        }
        det = det * p;
        for i in col + 1..n {
            let factor = lu[i * n + col] / p;
            if factor.norm() == T::zero() {
                continue;
            }
            for j in col + 1..n {
                let v = lu[col * n + j];
                lu[i * n + j] = lu[i * n + j] - factor * v;
            }
        }
    }
    det
}

/// Numerical rank by row-echelon elimination with partial pivoting.
///
/// A pivot counts when its magnitude exceeds `rel_tol · max|a_ij|`.
pub fn numerical_rank<T: Real>(a: &Array2<T>, rel_tol: T) -> usize {
    let rows = a
        .rows()
        .into_iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, v)| **v != T::zero())
                .map(|(j, &v)| (j, v))
                .collect()
        })
        .collect();
    sparse_rank(rows, a.ncols(), rel_tol)
}

/// [`numerical_rank`] for a matrix given as sparse rows of `(column, value)`.
///
/// Only rows holding the current pivot column are touched, so incidence-like
/// systems with thousands of rows stay cheap.
pub fn sparse_rank<T: Real>(rows: Vec<Vec<(usize, T)>>, n_cols: usize, rel_tol: T) -> usize {
    let scale = rows
        .iter()
        .flatten()
        .fold(T::zero(), |m, (_, v)| m.max(v.abs()));
    if scale == T::zero() {
        return 0;
    }
    let tol = rel_tol * scale;
    let mut rows: Vec<BTreeMap<usize, T>> = rows
        .into_iter()
        .map(|r| {
            let mut map = BTreeMap::new();
            for (j, v) in r {
                assert!(j < n_cols, "column {j} out of range");
                let slot = map.entry(j).or_insert_with(T::zero);
                *slot = *slot + v;
            }
            map
        })
        .collect();
    // candidate rows per column; entries may go stale and are re-checked
    let mut by_col: Vec<Vec<usize>> = vec![Vec::new(); n_cols];
    for (r, row) in rows.iter().enumerate() {
        for &j in row.keys() {
            by_col[j].push(r);
        }
    }
    let mut used = vec![false; rows.len()];
    let mut rank = 0;
    for col in 0..n_cols {
        let mut candidates = std::mem::take(&mut by_col[col]);
        candidates.sort_unstable();
        candidates.dedup();
        let value = |rows: &[BTreeMap<usize, T>], r: usize| rows[r].get(&col).copied().unwrap_or_else(T::zero);
        let mut pivot = None;
        let mut best = tol;
        for &r in &candidates {
            let v = value(&rows, r).abs();
            if !used[r] && v > best {
                best = v;
                pivot = Some(r);
            }
        }
        let Some(p) = pivot else { continue };
        used[p] = true;
        rank += 1;
        let pivot_row: Vec<(usize, T)> = rows[p].range(col + 1..).map(|(&j, &v)| (j, v)).collect();
        let pivot_value = rows[p][&col];
        for &r in &candidates {
            if used[r] {
                continue;
            }
            let Some(v) = rows[r].remove(&col) else { continue };
            let factor = v / pivot_value;
            for &(j, pv) in &pivot_row {
                let slot = rows[r].entry(j).or_insert_with(|| {
                    by_col[j].push(r);
                    T::zero()
                });
                *slot = *slot - factor * pv;
            }
        }
    }
    rank
}
