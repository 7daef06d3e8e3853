//! Orthogonal reduction to tridiagonal form and the implicit-shift QL sweep.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Tridiagonal matrix: `diag[i]`, and `off[i]` coupling rows `i - 1` and `i`
/// (`off[0]` unused).
pub(crate) struct Tridiagonal<T> {
    pub diag: Vec<T>,
    pub off: Vec<T>,
}

/// Householder reduction of a dense symmetric matrix given in column-major
/// order (only the lower triangle is read). With `accumulate`, returns the
/// orthogonal transform in column-major order as well.
pub(crate) fn householder<T: Real>(mut v: Vec<T>, n: usize, accumulate: bool) -> (Tridiagonal<T>, Option<Vec<T>>) {
    // v[r + c * n] holds entry (r, c)
    let ix = |r: usize, c: usize| r + c * n;
    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];
    if n == 0 {
        return (Tridiagonal { diag: d, off: e }, accumulate.then(Vec::new));
    }
    for j in 0..n {
        d[j] = v[ix(n - 1, j)];
    }

    for i in (1..n).rev() {
        let mut scale = T::zero();
        let mut h = T::zero();
        for dk in &d[..i] {
            scale = scale + dk.abs();
        }
        if scale == T::zero() {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[ix(i - 1, j)];
                v[ix(i, j)] = T::zero();
                v[ix(j, i)] = T::zero();
            }
        } else {
            for dk in &mut d[..i] {
                *dk = *dk / scale;
                h = h + *dk * *dk;
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > T::zero() {
                g = -g;
            }
            e[i] = scale * g;
            h = h - f * g;
            d[i - 1] = f - g;
            for ej in &mut e[..i] {
                *ej = T::zero();
            }
            for j in 0..i {
                let f = d[j];
                v[ix(j, i)] = f;
                let mut g = e[j] + v[ix(j, j)] * f;
                for k in j + 1..i {
                    let vkj = v[ix(k, j)];
                    g = g + vkj * d[k];
                    e[k] = e[k] + vkj * f;
                }
                e[j] = g;
            }
            let mut f = T::zero();
            for j in 0..i {
                e[j] = e[j] / h;
                f = f + e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] = e[j] - hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                for k in j..i {
                    v[ix(k, j)] = v[ix(k, j)] - (f * e[k] + g * d[k]);
                }
                d[j] = v[ix(i - 1, j)];
                v[ix(i, j)] = T::zero();
            }
        }
        d[i] = h;
    }

    if !accumulate {
        for (i, di) in d.iter_mut().enumerate() {
            *di = v[ix(i, i)];
        }
        e[0] = T::zero();
        return (Tridiagonal { diag: d, off: e }, None);
    }

    for i in 0..n - 1 {
        v[ix(n - 1, i)] = v[ix(i, i)];
        v[ix(i, i)] = T::one();
        let h = d[i + 1];
        if h != T::zero() {
            for k in 0..=i {
                d[k] = v[ix(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = T::zero();
                for k in 0..=i {
                    g = g + v[ix(k, i + 1)] * v[ix(k, j)];
                }
                for k in 0..=i {
                    v[ix(k, j)] = v[ix(k, j)] - g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[ix(k, i + 1)] = T::zero();
        }
    }
    for j in 0..n {
        d[j] = v[ix(n - 1, j)];
        v[ix(n - 1, j)] = T::zero();
    }
    v[ix(n - 1, n - 1)] = T::one();
    e[0] = T::zero();
    (Tridiagonal { diag: d, off: e }, Some(v))
}

/// Givens band-to-tridiagonal reduction with bulge chasing.
///
/// `a` is a dense symmetric matrix in row-major order whose entries vanish
/// outside `|i - j| <= bandwidth`. Costs O(n² · bandwidth).
pub(crate) fn band_reduce<T: Real>(mut a: Vec<T>, n: usize, bandwidth: usize) -> Tridiagonal<T> {
    let bw = bandwidth;
    if bw >= 2 {
        for k in 0..n.saturating_sub(2) {
            for l in (2..=bw.min(n - 1 - k)).rev() {
                let i = k + l;
                annihilate(&mut a, n, bw, i - 1, i, k);
                let mut j = i;
                while j + bw < n {
                    let q = j + bw;
                    if a[q * n + j - 1] == T::zero() {
                        break;
                    }
                    annihilate(&mut a, n, bw, q - 1, q, j - 1);
                    j = q;
                }
            }
        }
    }
    let diag = (0..n).map(|i| a[i * n + i]).collect();
    let off = (0..n).map(|i| if i == 0 { T::zero() } else { a[i * n + i - 1] }).collect();
    Tridiagonal { diag, off }
}

// Rotates rows/columns (p, q = p + 1) so that entry (q, col) vanishes.
fn annihilate<T: Real>(a: &mut [T], n: usize, bw: usize, p: usize, q: usize, col: usize) {
    let x = a[p * n + col];
    let y = a[q * n + col];
    if y == T::zero() {
        return;
    }
    let r = x.hypot(y);
    let (c, s) = (x / r, y / r);
    let lo = p.saturating_sub(bw + 1);
    let hi = (q + bw + 2).min(n);
    for j in lo..hi {
        let (ap, aq) = (a[p * n + j], a[q * n + j]);
        a[p * n + j] = c * ap + s * aq;
        a[q * n + j] = c * aq - s * ap;
    }
    for i in lo..hi {
        let (ap, aq) = (a[i * n + p], a[i * n + q]);
        a[i * n + p] = c * ap + s * aq;
        a[i * n + q] = c * aq - s * ap;
    }
    a[q * n + col] = T::zero();
    a[col * n + q] = T::zero();
}

/// Implicit QL iteration with Wilkinson-type shifts. When `vectors` is given
/// (column-major n×n), the rotations are accumulated into it.
/// Eigenvalues are returned unsorted.
pub(crate) fn ql_implicit<T: Real>(tri: Tridiagonal<T>, mut vectors: Option<&mut [T]>) -> Result<Vec<T>> {
    let Tridiagonal { diag: mut d, off: mut e } = tri;
    let n = d.len();
    if n == 0 {
        return Ok(d);
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = T::zero();

    let eps = T::epsilon();
    let two = T::lit(2.0);
    let mut f = T::zero();
    let mut tst1 = T::zero();
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iterations = 0;
            loop {
                iterations += 1;
                if iterations > 60 {
                    return Err(Error::NoConvergence);
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let h = g - d[l];
                for di in &mut d[l + 2..] {
                    *di = *di - h;
                }
                f = f + h;

                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    let h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if let Some(z) = vectors.as_deref_mut() {
                        let (left, right) = z.split_at_mut((i + 1) * n);
                        let zi = &mut left[i * n..];
                        let zi1 = &mut right[..n];
                        for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                            let h = *b;
                            *b = s * *a + c * h;
                            *a = c * *a - s * h;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] = d[l] + f;
        e[l] = T::zero();
    }
    Ok(d)
}
