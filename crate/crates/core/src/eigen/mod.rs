//! Dense eigensolvers for real symmetric, Hermitian and generalized
//! symmetric-definite problems.
//!
//! Symmetric matrices are reduced to tridiagonal form (Householder, or Givens
//! bulge chasing when the matrix is narrowly banded) and then diagonalized by
//! implicit-shift QL. Everything is sequential, so repeated calls on the same
//! input are bit-identical.

mod dense;
mod tridiag;

use ndarray::Array2;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

pub use dense::{determinant, numerical_rank, sparse_rank};

/// What a list of eigenvalues measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpectrumKind {
    /// Plain eigenvalues with no model attached.
    Raw,
    /// Hückel adjacency eigenvalues `λ`.
    HmoLambda,
    /// Generalized eigenvalues `μ̃ = cos √μ` of `Cu = μ̃Vu`.
    FeMuTilde,
    /// Free-electron eigenvalues `μ` (unit bond length).
    FeMu,
    /// Energies in eV.
    ElectronVolt,
}

/// A group of (numerically) equal eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Multiplet<T> {
    pub value: T,
    pub multiplicity: usize,
}

/// Ascending multiset of real eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    values: Vec<T>,
    multiplicity_tolerance: T,
    kind: SpectrumKind,
}

impl<T: Real> Spectrum<T> {
    /// Sorts `values` ascending. Fails on non-finite entries.
    pub fn new(mut values: Vec<T>, kind: SpectrumKind) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row: i, col: i });
        }
        values.sort_by(|a, b| a.total_cmp(b));
        Ok(Self {
            values,
            multiplicity_tolerance: T::lit(T::MULTIPLICITY_TOL),
            kind,
        })
    }

    pub fn with_tolerance(mut self, tolerance: T) -> Self {
        assert!(tolerance > T::zero(), "multiplicity tolerance must be positive");
        self.multiplicity_tolerance = tolerance;
        self
    }

    pub fn with_kind(mut self, kind: SpectrumKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    pub fn tolerance(&self) -> T {
        self.multiplicity_tolerance
    }

    /// Values in descending order.
    pub fn descending(&self) -> Vec<T> {
        self.values.iter().rev().copied().collect()
    }

    /// Consecutive values closer than the tolerance are chained into one multiplet.
    pub fn multiplets(&self) -> Vec<Multiplet<T>> {
        let mut out: Vec<Multiplet<T>> = Vec::new();
        let mut last: Option<T> = None;
        for &v in &self.values {
            match (last, out.last_mut()) {
                (Some(prev), Some(group)) if v - prev <= self.multiplicity_tolerance => {
                    group.multiplicity += 1;
                }
                _ => out.push(Multiplet { value: v, multiplicity: 1 }),
            }
            last = Some(v);
        }
        out
    }

    /// Number of values within the tolerance of `x`.
    pub fn multiplicity_of(&self, x: T) -> usize {
        self.values
            .iter()
            .filter(|&&v| (v - x).abs() <= self.multiplicity_tolerance)
            .count()
    }

    /// Number of values strictly below `x`.
    pub fn count_below(&self, x: T) -> usize {
        self.values.partition_point(|&v| v < x)
    }

    pub fn sum(&self) -> T {
        self.values.iter().copied().sum()
    }
}

fn matrix_scale<T: Real>(a: &Array2<T>) -> T {
    a.iter().fold(T::zero(), |m, x| m.max(x.abs()))
}

fn check_symmetric<T: Real>(a: &Array2<T>) -> Result<()> {
    let (rows, cols) = a.dim();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    for ((i, j), v) in a.indexed_iter() {
        if !v.is_finite() {
            return Err(Error::NonFinite { row: i, col: j });
        }
    }
    let tol = T::lit(1e-12) * matrix_scale(a).max(T::one());
    for i in 0..rows {
        for j in 0..i {
            let dev = (a[[i, j]] - a[[j, i]]).abs();
            if dev > tol {
                return Err(Error::NotSymmetric {
                    row: i,
                    col: j,
                    deviation: dev.as_f64(),
                });
            }
        }
    }
    Ok(())
}

fn bandwidth<T: Real>(a: &Array2<T>) -> usize {
    a.indexed_iter()
        .filter(|(_, v)| **v != T::zero())
        .map(|((i, j), _)| i.abs_diff(j))
        .max()
        .unwrap_or(0)
}

/// Eigenvalues of a real symmetric matrix, ascending.
pub fn eig_symmetric<T: Real>(a: &Array2<T>) -> Result<Spectrum<T>> {
    check_symmetric(a)?;
    let n = a.nrows();
    let bw = bandwidth(a);
    let tri = if n > 24 && bw * 6 <= n {
        let row_major: Vec<T> = a.iter().copied().collect();
        tridiag::band_reduce(row_major, n, bw)
    } else {
        tridiag::householder(column_major(a), n, false).0
    };
    let values = tridiag::ql_implicit(tri, None)?;
    Spectrum::new(values, SpectrumKind::Raw)
}

/// Eigenvalues and orthonormal eigenvectors (columns) of a real symmetric
/// matrix, ascending.
pub fn eig_symmetric_vectors<T: Real>(a: &Array2<T>) -> Result<(Spectrum<T>, Array2<T>)> {
    check_symmetric(a)?;
    let n = a.nrows();
    let (tri, q) = tridiag::householder(column_major(a), n, true);
    let mut q = q.expect("accumulated transform");
    let values = tridiag::ql_implicit(tri, Some(&mut q))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut vectors = Array2::zeros((n, n));
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors[[r, dst]] = q[r + src * n];
        }
    }
    let sorted = order.iter().map(|&i| values[i]).collect();
    Ok((Spectrum::new(sorted, SpectrumKind::Raw)?, vectors))
}

fn column_major<T: Real>(a: &Array2<T>) -> Vec<T> {
    a.t().iter().copied().collect()
}

/// Real symmetric `2n × 2n` embedding `[[Re, -Im], [Im, Re]]` of a Hermitian
/// matrix. Its spectrum is the Hermitian spectrum with every value doubled.
pub fn hermitian_embedding<T: Real>(a: &Array2<Complex<T>>) -> Array2<T> {
    let n = a.nrows();
    let mut out = Array2::zeros((2 * n, 2 * n));
    for ((i, j), z) in a.indexed_iter() {
        out[[i, j]] = z.re;
        out[[i + n, j + n]] = z.re;
        out[[i, j + n]] = -z.im;
        out[[i + n, j]] = z.im;
    }
    out
}

fn check_hermitian<T: Real>(a: &Array2<Complex<T>>) -> Result<()> {
    let (rows, cols) = a.dim();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    let mut scale = T::one();
    for ((i, j), z) in a.indexed_iter() {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite { row: i, col: j });
        }
        scale = scale.max(z.norm());
    }
    let tol = T::lit(1e-12) * scale;
    for i in 0..rows {
        for j in 0..=i {
            let dev = (a[[i, j]] - a[[j, i]].conj()).norm();
            if dev > tol {
                return Err(Error::NotHermitian {
                    row: i,
                    col: j,
                    deviation: dev.as_f64(),
                });
            }
        }
    }
    Ok(())
}

/// Eigenvalues of a complex Hermitian matrix, ascending.
pub fn eig_hermitian<T: Real>(a: &Array2<Complex<T>>) -> Result<Spectrum<T>> {
    check_hermitian(a)?;
    let doubled = eig_symmetric(&hermitian_embedding(a))?;
    // sorted doubled spectrum pairs up as (v0, v0, v1, v1, ...)
    let values = doubled.values().chunks(2).map(|p| (p[0] + p[1]) / T::lit(2.0)).collect();
    Spectrum::new(values, SpectrumKind::Raw)
}

fn inverse_sqrt_valency<T: Real>(valency: &[T], n: usize) -> Result<Vec<T>> {
    if valency.len() != n {
        return Err(Error::InvalidArgument(format!(
            "valency has {} entries for a {n}x{n} matrix",
            valency.len()
        )));
    }
    valency
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            if v > T::zero() && v.is_finite() {
                Ok(T::one() / v.sqrt())
            } else {
                Err(Error::NonPositiveValency { index: i })
            }
        })
        .collect()
}

/// Eigenvalues of `Cu = μ̃Vu` for symmetric `C` and positive diagonal `V`
/// (given by its diagonal), through the similarity `V^{-1/2} C V^{-1/2}`.
pub fn eig_generalized<T: Real>(c: &Array2<T>, valency: &[T]) -> Result<Spectrum<T>> {
    check_symmetric(c)?;
    let w = inverse_sqrt_valency(valency, c.nrows())?;
    let scaled = Array2::from_shape_fn(c.dim(), |(i, j)| c[[i, j]] * w[i] * w[j]);
    Ok(eig_symmetric(&scaled)?.with_kind(SpectrumKind::FeMuTilde))
}

/// Hermitian counterpart of [`eig_generalized`].
pub fn eig_generalized_hermitian<T: Real>(c: &Array2<Complex<T>>, valency: &[T]) -> Result<Spectrum<T>> {
    check_hermitian(c)?;
    let w = inverse_sqrt_valency(valency, c.nrows())?;
    let scaled = Array2::from_shape_fn(c.dim(), |(i, j)| c[[i, j]] * (w[i] * w[j]));
    Ok(eig_hermitian(&scaled)?.with_kind(SpectrumKind::FeMuTilde))
}
