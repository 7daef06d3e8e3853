//! Free-electron model on the equilateral metric graph.
//!
//! With unit bonds, every eigenvalue `μ = k²` with `sin k ≠ 0` corresponds to
//! a generalized eigenvalue `μ̃ = cos k` of `Cu = μ̃Vu` with the same
//! multiplicity. Each `μ̃ ∈ (−1, 1)` therefore yields the wavenumbers
//! `2πn ± arccos μ̃`; the points `k = nπ` are counted separately by the exact
//! nullity construction in [`fe_exceptional_multiplicity`].

mod exceptional;
mod oracle;

use crate::eigen::{eig_generalized, Spectrum, SpectrumKind};
use crate::error::{Error, Result};
use crate::graph::{build_oligomer, ModelConstants, MonomerSpec, OligomerGraph};
use crate::hmo::{fill_orbitals, OrbitalFilling};
use crate::scalar::Real;

pub use exceptional::fe_exceptional_multiplicity;
pub(crate) use exceptional::flat_exceptional_density;
pub use oracle::fe_oracle_discretized;

/// Where a free-electron level came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelOrigin {
    /// `k = 2πn ± arccos μ̃` for a generalized eigenvalue `μ̃ ∈ (−1, 1)`.
    Branch,
    /// `k = nπ`.
    Exceptional { n: usize },
    /// Eigenvalue of the finite-difference discretization.
    Discretized,
}

/// Lowest free-electron eigenvalues `μ = k²` (unit bond length), ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSpectrum<T> {
    mu: Vec<T>,
    origin: Vec<LevelOrigin>,
    count_requested: usize,
}

impl<T: Real> MetricSpectrum<T> {
    pub(crate) fn from_levels(mut levels: Vec<(T, LevelOrigin)>, count: usize) -> Self {
        levels.sort_by(|a, b| a.0.total_cmp(&b.0));
        levels.truncate(count);
        let (mu, origin) = levels.into_iter().unzip();
        Self {
            mu,
            origin,
            count_requested: count,
        }
    }

    pub fn mu_values(&self) -> &[T] {
        &self.mu
    }

    pub fn origins(&self) -> &[LevelOrigin] {
        &self.origin
    }

    pub fn count_requested(&self) -> usize {
        self.count_requested
    }

    /// Wavenumbers `k = √μ`.
    pub fn wavenumbers(&self) -> Vec<T> {
        self.mu.iter().map(|m| m.max(T::zero()).sqrt()).collect()
    }

    pub fn to_spectrum(&self) -> Spectrum<T> {
        Spectrum::new(self.mu.clone(), SpectrumKind::FeMu).expect("levels are finite")
    }
}

fn check_metric_graph(g: &OligomerGraph) -> Result<()> {
    g.ensure_equilateral()?;
    if g.n_edges() == 0 {
        return Err(Error::InvalidArgument("metric graph has no bonds".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Wavenumber of the branch in window `[nπ, (n+1)π]` for `μ̃ = cos k`.
/// Values within rounding of `±1` are snapped, since `arccos` amplifies their
/// error to its square root.
pub(crate) fn branch_wavenumber<T: Real>(mu_tilde: T, window: usize) -> T {
    let snap = T::one() - T::lit(1e3) * T::epsilon();
    let clamped = if mu_tilde >= snap {
        T::one()
    } else if mu_tilde <= -snap {
        -T::one()
    } else {
        mu_tilde
    };
    let theta = clamped.acos();
    if window.is_multiple_of(2) {
        T::from_count(window) * T::PI() + theta
    } else {
        T::from_count(window + 1) * T::PI() - theta
    }
}

/// The lowest `count` free-electron eigenvalues of `g`.
pub fn fe_levels<T: Real>(g: &OligomerGraph, count: usize) -> Result<MetricSpectrum<T>> {
    check_metric_graph(g)?;
    if count == 0 {
        return Err(Error::InvalidArgument("level count must be positive".into()));
    }
    let generalized = eig_generalized(&g.connectivity::<T>(), &g.valency_diagonal::<T>())?;
    let edge = T::one() - T::lit(T::MULTIPLICITY_TOL);
    let interior: Vec<T> = generalized
        .values()
        .iter()
        .copied()
        .filter(|v| v.abs() < edge)
        .collect();
    let exceptional = [
        fe_exceptional_multiplicity(g, 0)?,
        fe_exceptional_multiplicity(g, 1)?,
        fe_exceptional_multiplicity(g, 2)?,
    ];
    let multiplicity_at = |n: usize| match n {
        0 => exceptional[0],
        _ if n % 2 == 1 => exceptional[1],
        _ => exceptional[2],
    };

    // Every level in window n lies in [(nπ)², ((n+1)π)²], so once the
    // exceptional level closing a window fills the budget nothing below it
    // can still be missing.
    let mut levels: Vec<(T, LevelOrigin)> = Vec::new();
    for n in 0.. {
        let k = T::from_count(n) * T::PI();
        let mult = multiplicity_at(n);
        levels.extend(std::iter::repeat_n((k * k, LevelOrigin::Exceptional { n }), mult));
        if levels.len() >= count {
            break;
        }
        if interior.is_empty() && mult == 0 && n > 2 {
            return Err(Error::InvalidArgument("graph has no free-electron spectrum".into()));
        }
        for &mt in &interior {
            let k = branch_wavenumber(mt, n);
            levels.push((k * k, LevelOrigin::Branch));
        }
    }
    Ok(MetricSpectrum::from_levels(levels, count))
}

/// Occupation of the free-electron `m`-oligomer (dangling bonds per `spec`)
/// with `M = N·m` electron pairs, energies `ε·μ` in eV.
///
/// Below `k = π` the graph carries about one level per vertex, the constant
/// state `μ = 0` included. Dangling bonds add vertices that hold no electron
/// pair, and a symmetric pair of them adds one level on each side of the
/// Fermi level. The lowest level per pair of dangling ends is therefore left
/// out of the occupation count; without dangling bonds `μ = 0` is the first
/// occupied orbital.
pub fn fe_filling<T: Real>(spec: &MonomerSpec, m: usize, consts: &ModelConstants<T>) -> Result<OrbitalFilling<T>> {
    let g = build_oligomer(spec, m, true)?;
    let pairs = spec.electron_pairs(m);
    let skipped = g.pendant_vertices().len() / 2;
    let levels = fe_levels::<T>(&g, 2 * pairs + skipped + 3)?;
    let energies: Vec<T> = levels.mu_values()[skipped..]
        .iter()
        .map(|&mu| consts.epsilon_ev * mu)
        .collect();
    let spectrum = Spectrum::new(energies, SpectrumKind::ElectronVolt)?
        .with_tolerance(consts.epsilon_ev * T::lit(T::MULTIPLICITY_TOL));
    fill_orbitals(&spectrum, pairs)
}

/// Free-electron HOMO–LUMO gap of the `m`-oligomer in eV.
pub fn fe_gap<T: Real>(spec: &MonomerSpec, m: usize, consts: &ModelConstants<T>) -> Result<T> {
    Ok(fe_filling(spec, m, consts)?.gap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{catalog, catalog_entry};
    use std::f64::consts::PI;

    fn ring(n: usize) -> OligomerGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        OligomerGraph::from_edges(n, &edges).unwrap()
    }

    fn pa() -> MonomerSpec {
        catalog_entry("PA").unwrap()
    }

    #[test]
    fn capped_chain_levels() {
        for m in 1..=100 {
            let g = build_oligomer(&pa(), m, true).unwrap();
            let levels = fe_levels::<f64>(&g, 3 * m + 5).unwrap();
            let l = (2 * m + 1) as f64;
            for (n, mu) in levels.mu_values().iter().enumerate() {
                let want = (n as f64 * PI / l).powi(2);
                assert!((mu - want).abs() <= 1e-12 * want.max(1.0), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn open_chain_levels() {
        let bare = pa().with_dangling(&[]).unwrap();
        for m in 1..=100 {
            let g = build_oligomer(&bare, m, true).unwrap();
            let levels = fe_levels::<f64>(&g, 2 * m + 4).unwrap();
            let l = (2 * m - 1) as f64;
            for (n, mu) in levels.mu_values().iter().enumerate() {
                let want = (n as f64 * PI / l).powi(2);
                assert!((mu - want).abs() <= 1e-12 * want.max(1.0), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn ring_levels_are_doubly_degenerate() {
        for m in 2..=100 {
            let levels = fe_levels::<f64>(&ring(2 * m), 4 * m + 1).unwrap();
            let mu = levels.mu_values();
            assert_eq!(mu[0], 0.0);
            for j in 1..=2 * m {
                let want = (j as f64 * PI / m as f64).powi(2);
                for v in [mu[2 * j - 1], mu[2 * j]] {
                    assert!((v - want).abs() <= 1e-12 * want.max(1.0), "m={m} j={j}: {v} vs {want}");
                }
            }
        }
    }

    #[test]
    fn ground_state_is_simple_and_levels_nonnegative() {
        for spec in catalog() {
            let g = build_oligomer(&spec, 4, true).unwrap();
            let levels = fe_levels::<f64>(&g, 60).unwrap();
            let mu = levels.mu_values();
            assert_eq!(mu.len(), 60);
            assert_eq!(mu[0], 0.0);
            assert!(mu[1] > 1e-6);
            assert!(mu.windows(2).all(|w| w[0] <= w[1]));
            assert_eq!(levels.origins()[0], LevelOrigin::Exceptional { n: 0 });
        }
    }

    #[test]
    fn weyl_law() {
        for spec in catalog() {
            let g = build_oligomer(&spec, 3, true).unwrap();
            let length = g.total_length();
            let kmax = 20.0 * PI;
            let budget = (length * kmax / PI) as usize + 4 * (g.n_vertices() + g.n_edges());
            let levels = fe_levels::<f64>(&g, budget).unwrap();
            for step in 1..=20 {
                let k = step as f64 * PI;
                let counted = levels.mu_values().iter().filter(|&&mu| mu <= k * k * (1.0 + 1e-12)).count() as f64;
                let weyl = length * k / PI;
                assert!(
                    (counted - weyl).abs() <= (g.n_vertices() + g.n_edges()) as f64,
                    "{}: N({k}) = {counted}, Weyl {weyl}",
                    spec.name()
                );
            }
        }
    }

    #[test]
    fn capped_chain_gaps() {
        let c = ModelConstants::<f64>::default();
        let third = 1.95 * PI * PI / 3.0;
        assert!((fe_gap(&pa(), 1, &c).unwrap() - third).abs() < 1e-9);
        assert!((third - 6.416).abs() < 1e-3);
        let g50 = fe_gap(&pa(), 50, &c).unwrap();
        assert!((g50 - 1.95 * PI * PI / 101.0).abs() < 1e-9);
        assert!((g50 - 0.1905).abs() < 1e-4);
        // without dangling bonds μ = 0 is occupied: HOMO (π/3)², LUMO (2π/3)²
        let bare = pa().with_dangling(&[]).unwrap();
        let g2 = fe_gap(&bare, 2, &c).unwrap();
        assert!((g2 - 1.95 * PI * PI / 3.0).abs() < 1e-9);
    }

    #[test]
    fn ring_polymer_gaps_stay_open() {
        // rings carry no dangling bonds; the constant state is the lowest orbital
        let c = ModelConstants::<f64>::default();
        let ppp = catalog_entry("PPP").unwrap();
        let g = build_oligomer(&ppp, 1, true).unwrap();
        let mu = fe_levels::<f64>(&g, 5).unwrap();
        let filling = fe_filling(&ppp, 1, &c).unwrap();
        assert!((filling.homo() - 1.95 * mu.mu_values()[2]).abs() < 1e-12);
        assert!((filling.lumo() - 1.95 * mu.mu_values()[3]).abs() < 1e-12);
        let gaps: Vec<f64> = (1..=6).map(|m| fe_gap(&ppp, m, &c).unwrap()).collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]));
        assert!(gaps[5] > 2.0);
    }

    #[test]
    fn rejects_bad_graphs() {
        let disconnected = OligomerGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(fe_levels::<f64>(&disconnected, 3), Err(Error::Disconnected)));
        let stretched = ring(4).with_bond_length(0, 1, 2.0).unwrap();
        assert!(matches!(fe_levels::<f64>(&stretched, 3), Err(Error::NonEquilateral(..))));
        assert!(fe_levels::<f64>(&ring(4), 0).is_err());
    }

    #[test]
    fn single_precision_chain() {
        let g = build_oligomer(&pa(), 3, true).unwrap();
        let levels = fe_levels::<f32>(&g, 6).unwrap();
        for (n, mu) in levels.mu_values().iter().enumerate() {
            let want = (n as f32 * std::f32::consts::PI / 7.0).powi(2);
            assert!((mu - want).abs() < 1e-4);
        }
    }
}
