//! Multiplicities at the exceptional wavenumbers `k = nπ`.
//!
//! On a unit bond the eigenfunctions at `k = nπ` are `a·sin(nπx) + b·cos(nπx)`
//! (`a·x + b` for `n = 0`). Continuity at both bond ends and the Kirchhoff
//! flux balance at every vertex form a homogeneous linear system in the
//! vertex values `ψ` and the coefficients `(a, b)`; its nullity is the
//! multiplicity of `μ = (nπ)²`. For `n ≥ 1` the entries depend on `n` only
//! through `(−1)ⁿ` once the common factor `nπ` of the derivatives is dropped.

use crate::eigen::sparse_rank;
use crate::error::Result;
use crate::graph::OligomerGraph;
use num_complex::Complex64;

pub(crate) const RANK_TOLERANCE: f64 = 1e-9;

/// Bloch phase used to probe states present at every quasi-momentum. Its
/// argument is not a rational multiple of π.
const GENERIC_PHASE: f64 = 1.0;

/// A bond whose far end sits in the cell shifted by Bloch phase `phase`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PhasedBond {
    pub from: usize,
    pub to: usize,
    pub phase: Complex64,
}

struct EndValues {
    // (sin-like, cos-like) values and outgoing-direction derivatives at x = 0 and x = 1
    start: (f64, f64),
    end: (f64, f64),
    start_slope: (f64, f64),
    end_slope: (f64, f64),
}

fn end_values(n: usize) -> EndValues {
    if n == 0 {
        EndValues {
            start: (0.0, 1.0),
            end: (1.0, 1.0),
            start_slope: (1.0, 0.0),
            end_slope: (1.0, 0.0),
        }
    } else {
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        EndValues {
            start: (0.0, 1.0),
            end: (0.0, sign),
            start_slope: (1.0, 0.0),
            end_slope: (sign, 0.0),
        }
    }
}

/// Nullity of the exceptional-point system. With `vertex_vanishing`, the
/// vertex values are pinned to zero (only states supported inside bonds).
///
/// Continuity at the far end reads `φ(1) = z·ψ_to`, and the far-end flux
/// enters the Kirchhoff row of `to` scaled by `1/z`. Complex rows are ranked
/// through their real embedding, which doubles the rank.
pub(crate) fn exceptional_nullity(
    n_vertices: usize,
    bonds: &[PhasedBond],
    n: usize,
    vertex_vanishing: bool,
) -> usize {
    let ev = end_values(n);
    let n_psi = if vertex_vanishing { 0 } else { n_vertices };
    let a_col = |e: usize| n_psi + 2 * e;
    let b_col = |e: usize| n_psi + 2 * e + 1;
    let n_cols = n_psi + 2 * bonds.len();
    let real = |x: f64| Complex64::new(x, 0.0);

    let mut rows: Vec<Vec<(usize, Complex64)>> = Vec::with_capacity(2 * bonds.len() + n_vertices);
    let mut kirchhoff: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); n_vertices];
    for (e, bond) in bonds.iter().enumerate() {
        let inverse = bond.phase.inv();
        let mut start = vec![(a_col(e), real(ev.start.0)), (b_col(e), real(ev.start.1))];
        let mut end = vec![(a_col(e), real(ev.end.0)), (b_col(e), real(ev.end.1))];
        if !vertex_vanishing {
            start.push((bond.from, real(-1.0)));
            end.push((bond.to, -bond.phase));
        }
        rows.push(start);
        rows.push(end);
        kirchhoff[bond.from].push((a_col(e), real(ev.start_slope.0)));
        kirchhoff[bond.from].push((b_col(e), real(ev.start_slope.1)));
        // outgoing derivative at the far end points backwards along the bond
        kirchhoff[bond.to].push((a_col(e), -inverse * ev.end_slope.0));
        kirchhoff[bond.to].push((b_col(e), -inverse * ev.end_slope.1));
    }
    rows.extend(kirchhoff);

    let mut embedded = Vec::with_capacity(2 * rows.len());
    for row in rows {
        let mut re_row = Vec::with_capacity(2 * row.len());
        let mut im_row = Vec::with_capacity(2 * row.len());
        for (col, z) in row {
            re_row.extend([(2 * col, z.re), (2 * col + 1, -z.im)]);
            im_row.extend([(2 * col, z.im), (2 * col + 1, z.re)]);
        }
        embedded.push(re_row);
        embedded.push(im_row);
    }
    let rank = sparse_rank(embedded, 2 * n_cols, RANK_TOLERANCE);
    n_cols - rank / 2
}

/// Multiplicity of the free-electron eigenvalue `μ = (nπ)²` on `g`.
pub fn fe_exceptional_multiplicity(g: &OligomerGraph, n: usize) -> Result<usize> {
    g.ensure_equilateral()?;
    let bonds: Vec<PhasedBond> = g
        .edges()
        .iter()
        .map(|&(from, to)| PhasedBond {
            from,
            to,
            phase: Complex64::new(1.0, 0.0),
        })
        .collect();
    Ok(exceptional_nullity(g.n_vertices(), &bonds, n, false))
}

/// States at `k = nπ` vanishing at every vertex that exist for every Bloch
/// phase of the periodic chain, per cell. `crossing` bonds lead from a vertex
/// of one cell to a vertex of the next. These states form flat bands.
pub(crate) fn flat_exceptional_density(
    n_vertices: usize,
    intra: &[(usize, usize)],
    crossing: &[(usize, usize)],
    n: usize,
) -> usize {
    let bond = |&(from, to): &(usize, usize), phase: Complex64| PhasedBond { from, to, phase };
    let bonds: Vec<PhasedBond> = intra
        .iter()
        .map(|b| bond(b, Complex64::new(1.0, 0.0)))
        .chain(crossing.iter().map(|b| bond(b, Complex64::from_polar(1.0, GENERIC_PHASE))))
        .collect();
    exceptional_nullity(n_vertices, &bonds, n, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_oligomer, catalog, catalog_entry, OligomerGraph};

    fn ring(n: usize) -> OligomerGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        OligomerGraph::from_edges(n, &edges).unwrap()
    }

    // Independent count: cycle rank plus vertex-value modes. For n even the
    // vertex values are constant on the (connected) graph; for n odd they
    // alternate in sign, which needs a bipartite graph. The bond amplitudes
    // form the kernel of a (signed) incidence matrix.
    fn combinatorial_count(g: &OligomerGraph, n: usize) -> usize {
        let (v, e) = (g.n_vertices(), g.n_edges());
        let bip = usize::from(is_bipartite(g));
        match n {
            0 => 1,
            _ if n.is_multiple_of(2) => 1 + (e + 1 - v),
            _ => bip + (e + bip - v),
        }
    }

    fn is_bipartite(g: &OligomerGraph) -> bool {
        let mut color = vec![None; g.n_vertices()];
        color[0] = Some(false);
        let mut changed = true;
        while changed {
            changed = false;
            for &(i, j) in g.edges() {
                match (color[i], color[j]) {
                    (Some(a), Some(b)) if a == b => return false,
                    (Some(a), None) => {
                        color[j] = Some(!a);
                        changed = true;
                    }
                    (None, Some(b)) => {
                        color[i] = Some(!b);
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
        true
    }

    #[test]
    fn constant_state_at_zero() {
        for spec in catalog() {
            let g = build_oligomer(&spec, 3, true).unwrap();
            assert_eq!(fe_exceptional_multiplicity(&g, 0).unwrap(), 1, "{}", spec.name());
        }
    }

    #[test]
    fn benzene_is_doubly_degenerate() {
        assert_eq!(fe_exceptional_multiplicity(&ring(6), 2).unwrap(), 2);
        assert_eq!(fe_exceptional_multiplicity(&ring(6), 1).unwrap(), 2);
        // odd ring: sign-alternating vertex values impossible
        assert_eq!(fe_exceptional_multiplicity(&ring(5), 1).unwrap(), 0);
        assert_eq!(fe_exceptional_multiplicity(&ring(5), 2).unwrap(), 2);
    }

    #[test]
    fn matches_combinatorial_count() {
        for spec in catalog() {
            for m in 1..=5 {
                let g = build_oligomer(&spec, m, true).unwrap();
                for n in 0..=5 {
                    assert_eq!(
                        fe_exceptional_multiplicity(&g, n).unwrap(),
                        combinatorial_count(&g, n),
                        "{} m={m} n={n}",
                        spec.name()
                    );
                }
            }
        }
    }

    #[test]
    fn capped_chain_levels_are_simple() {
        let pa = catalog_entry("PA").unwrap();
        for m in 1..=10 {
            let g = build_oligomer(&pa, m, true).unwrap();
            for n in 0..=6 {
                assert_eq!(fe_exceptional_multiplicity(&g, n).unwrap(), 1);
            }
        }
    }

    #[test]
    fn flat_density_of_a_chain_of_rings() {
        // benzene cells linked para: one loop state per ring at every k = nπ
        let ppp = catalog_entry("PPP").unwrap();
        let wrap = [(ppp.link_b(), ppp.link_e())];
        for n in 1..=4 {
            assert_eq!(flat_exceptional_density(6, ppp.bonds(), &wrap, n), 1, "n = {n}");
        }
        assert_eq!(flat_exceptional_density(6, ppp.bonds(), &wrap, 0), 0);
        // a bare chain of single bonds has no vertex-free states at generic phase
        assert_eq!(flat_exceptional_density(1, &[], &[(0, 0)], 1), 0);
        let pa = catalog_entry("PA").unwrap();
        for n in 0..=4 {
            assert_eq!(flat_exceptional_density(2, pa.bonds(), &[(1, 0)], n), 0);
        }
    }

    #[test]
    fn bloch_phase_real_cases_match_finite_rings() {
        // a ring of 4 bonds seen as one bond with phase ±1 closing a cell
        // of 4 vertices: phase +1 reproduces the 4-cycle, phase −1 the
        // antiperiodic ring, whose k = π states vanish identically at n even.
        let cell: Vec<PhasedBond> = (0..4)
            .map(|i| PhasedBond {
                from: i,
                to: (i + 1) % 4,
                phase: Complex64::new(1.0, 0.0),
            })
            .collect();
        let r4 = fe_exceptional_multiplicity(&ring(4), 2).unwrap();
        assert_eq!(exceptional_nullity(4, &cell, 2, false), r4);
        let mut anti = cell.clone();
        anti[3].phase = Complex64::new(-1.0, 0.0);
        // antiperiodic loop of length 4: sin/cos(2πx) pick up no sign, so no states
        assert_eq!(exceptional_nullity(4, &anti, 2, false), 0);
        // n odd, length 4: cos/sin(πs) periodic over 4, again no antiperiodic states
        assert_eq!(exceptional_nullity(4, &anti, 1, false), 0);
    }
}
