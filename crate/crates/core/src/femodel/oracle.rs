//! Finite-difference brute force for the free-electron spectrum.
//!
//! Each bond carries `P` interior grid points with spacing `h = 1/(P+1)`.
//! Vertex values are shared by all incident bonds, and the vertex row is the
//! flux balance `Σ (u_v − u_next)/h = μ (deg·h/2) u_v`. The result is the
//! symmetric pencil `K u = μ M u` with `K` the grid Laplacian over `h` and `M`
//! the lumped mass. Eigenvalues are located by bisection on the inertia of
//! `K − σM`, with the bond interiors condensed onto the vertices.

use super::{check_metric_graph, LevelOrigin, MetricSpectrum};
use crate::eigen::eig_symmetric;
use crate::error::{Error, Result};
use crate::graph::OligomerGraph;
use crate::scalar::Real;
use ndarray::Array2;

const MIN_POINTS: usize = 8;
const MAX_BISECTIONS: usize = 200;

struct Pencil<'a> {
    g: &'a OligomerGraph,
    p: usize,
    h: f64,
}

/// Inverse corner entries of the `q × q` bond block `J = tridiag(−1, 2c, −1)`
/// from its Chebyshev determinants `U_q(c)`: returns the number of negative
/// eigenvalues of `J`, `(J⁻¹)₀₀ = U_{q−1}/U_q` and `(J⁻¹)₀,q−1 = 1/U_q`.
/// `None` when `J` is singular.
fn bond_block(q: usize, c: f64) -> Option<(usize, f64, f64)> {
    let qf = q as f64;
    if c <= -1.0 {
        let (_, r, f) = bond_block(q, -c)?;
        let sign = if q.is_multiple_of(2) { 1.0 } else { -1.0 };
        return Some((q, -r, sign * f));
    }
    if c == 1.0 {
        return Some((0, qf / (qf + 1.0), 1.0 / (qf + 1.0)));
    }
    if c > 1.0 {
        let e = (-c.acosh()).exp();
        let denom = 1.0 - e.powf(2.0 * qf + 2.0);
        let r = e * (1.0 - e.powf(2.0 * qf)) / denom;
        let f = (1.0 - e * e) * e.powf(qf) / denom;
        return Some((0, r, f));
    }
    let theta = c.acos();
    let top = ((qf + 1.0) * theta).sin();
    if top == 0.0 {
        return None;
    }
    let t = theta * (qf + 1.0) / std::f64::consts::PI;
    let negatives = (t.ceil() as usize).saturating_sub(1).min(q);
    Some((negatives, (qf * theta).sin() / top, theta.sin() / top))
}

impl Pencil<'_> {
    /// Number of eigenvalues strictly below `sigma`.
    ///
    /// Bond interiors are condensed onto the vertices. Close to a pole of the
    /// full bond block the last interior point of every bond is kept instead;
    /// the poles of the two block sizes interlace, so one of them is always
    /// well separated.
    fn count_below(&self, sigma: f64) -> Result<usize> {
        let mut shift = sigma;
        let mut nudge = f64::EPSILON * sigma.abs().max(1.0);
        loop {
            if let Some(count) = self.try_count(shift)? {
                return Ok(count);
            }
            shift -= nudge;
            nudge *= 2.0;
        }
    }

    fn try_count(&self, sigma: f64) -> Result<Option<usize>> {
        let (h, p) = (self.h, self.p);
        let c = 1.0 - sigma * h * h / 2.0;
        let keep_last = c.abs() < 1.0 && {
            let theta = c.acos();
            ((p as f64 + 1.0) * theta).sin().abs() < (p as f64 * theta).sin().abs()
        };
        let q = if keep_last { p - 1 } else { p };
        let Some((neg_block, corner, far)) = bond_block(q, c) else {
            return Ok(None);
        };
        let nv = self.g.n_vertices();
        let n = if keep_last { nv + self.g.n_edges() } else { nv };
        let mut schur = Array2::<f64>::zeros((n, n));
        for (v, &deg) in self.g.valency().iter().enumerate() {
            let deg = deg as f64;
            schur[[v, v]] = deg / h - sigma * deg * h / 2.0;
        }
        for (e, &(a, b)) in self.g.edges().iter().enumerate() {
            if keep_last {
                let k = nv + e;
                schur[[a, a]] -= corner / h;
                schur[[k, k]] = 2.0 / h - sigma * h - corner / h;
                schur[[a, k]] -= far / h;
                schur[[k, a]] -= far / h;
                schur[[k, b]] -= 1.0 / h;
                schur[[b, k]] -= 1.0 / h;
            } else {
                schur[[a, a]] -= corner / h;
                schur[[b, b]] -= corner / h;
                schur[[a, b]] -= far / h;
                schur[[b, a]] -= far / h;
            }
        }
        let condensed = eig_symmetric(&schur)?.count_below(0.0);
        Ok(Some(self.g.n_edges() * neg_block + condensed))
    }
}

/// The lowest `count` eigenvalues of the finite-difference free-electron
/// problem with `points_per_bond` interior points on each bond.
pub fn fe_oracle_discretized<T: Real>(
    g: &OligomerGraph,
    points_per_bond: usize,
    count: usize,
) -> Result<MetricSpectrum<T>> {
    check_metric_graph(g)?;
    if points_per_bond < MIN_POINTS {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_POINTS} points per bond, got {points_per_bond}"
        )));
    }
    let unknowns = g.n_vertices() + g.n_edges() * points_per_bond;
    if count == 0 || count > unknowns {
        return Err(Error::InvalidArgument(format!(
            "level count must lie in 1..={unknowns}, got {count}"
        )));
    }
    let pencil = Pencil {
        g,
        p: points_per_bond,
        h: 1.0 / (points_per_bond as f64 + 1.0),
    };
    let mut hi = 1.0;
    while pencil.count_below(hi)? < count {
        hi *= 2.0;
    }
    let mut levels = Vec::with_capacity(count);
    let mut lo_floor = -1.0;
    for index in 0..count {
        let (mut lo, mut up) = (lo_floor, hi);
        for _ in 0..MAX_BISECTIONS {
            let mid = 0.5 * (lo + up);
            if mid <= lo || mid >= up || up - lo <= 1e-14 * up.abs().max(1.0) {
                break;
            }
            if pencil.count_below(mid)? > index {
                up = mid;
            } else {
                lo = mid;
            }
        }
        let mu = 0.5 * (lo + up);
        lo_floor = lo;
        levels.push((T::lit(mu), LevelOrigin::Discretized));
    }
    Ok(MetricSpectrum::from_levels(levels, count))
}
