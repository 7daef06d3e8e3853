//! Hückel molecular orbital model.
//!
//! Energies are `E = α − β·λ` with `β = |β| > 0`, so orbitals fill in
//! descending order of the adjacency eigenvalue `λ` and the HOMO–LUMO gap is
//! `β·(λ_(M) − λ_(M+1))` with `λ` sorted descending.

use crate::eigen::{eig_symmetric, Spectrum, SpectrumKind};
use crate::error::{Error, Result};
use crate::graph::{build_oligomer, ModelConstants, MonomerSpec, OligomerGraph};
use crate::scalar::Real;

/// Ground-state occupation of a level scheme by `2M` electrons.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitalFilling<T> {
    /// Energies in eV, ascending (the occupation order).
    pub levels: Spectrum<T>,
    pub n_electrons: usize,
    /// 1-based position of the HOMO in `levels` (equals `M`).
    pub homo_index: usize,
    pub lumo_index: usize,
    /// Size of the multiplet containing the HOMO.
    pub homo_degeneracy: usize,
    /// The HOMO multiplet is only partly filled.
    pub somo: bool,
}

impl<T: Real> OrbitalFilling<T> {
    pub fn homo(&self) -> T {
        self.levels.values()[self.homo_index - 1]
    }

    pub fn lumo(&self) -> T {
        self.levels.values()[self.lumo_index - 1]
    }

    /// `E_LUMO − E_HOMO`, exactly zero for a degenerate HOMO/LUMO pair.
    pub fn gap(&self) -> T {
        let gap = self.lumo() - self.homo();
        if gap <= self.levels.tolerance() {
            T::zero()
        } else {
            gap
        }
    }
}

/// Places `pairs` electron pairs into the lowest levels of `levels` (ascending).
pub fn fill_orbitals<T: Real>(levels: &Spectrum<T>, pairs: usize) -> Result<OrbitalFilling<T>> {
    if pairs == 0 || pairs + 1 > levels.len() {
        return Err(Error::InvalidArgument(format!(
            "{pairs} electron pairs need at least {} levels, got {}",
            pairs + 1,
            levels.len()
        )));
    }
    let homo = levels.values()[pairs - 1];
    let tol = levels.tolerance();
    let degeneracy = levels.multiplicity_of(homo);
    let at_or_below = levels.values().iter().filter(|&&e| e <= homo + tol).count();
    Ok(OrbitalFilling {
        levels: levels.clone(),
        n_electrons: 2 * pairs,
        homo_index: pairs,
        lumo_index: pairs + 1,
        homo_degeneracy: degeneracy,
        somo: at_or_below > pairs,
    })
}

fn carbon_skeleton(g: &OligomerGraph) -> Result<()> {
    g.ensure_equilateral()?;
    if !g.pendant_vertices().is_empty() {
        return Err(Error::InvalidArgument(
            "Hückel levels act on carbon atoms only; build the oligomer without dangling bonds".into(),
        ));
    }
    Ok(())
}

/// Adjacency eigenvalues `λ`, ascending.
pub fn hmo_lambda<T: Real>(g: &OligomerGraph) -> Result<Spectrum<T>> {
    carbon_skeleton(g)?;
    Ok(eig_symmetric(&g.connectivity::<T>())?.with_kind(SpectrumKind::HmoLambda))
}

/// Orbital energies `α − β·λ` in eV, ascending.
pub fn hmo_levels<T: Real>(g: &OligomerGraph, consts: &ModelConstants<T>) -> Result<Spectrum<T>> {
    let lambda = hmo_lambda::<T>(g)?;
    let energies = lambda
        .values()
        .iter()
        .map(|&l| consts.alpha_ev - consts.beta_ev * l)
        .collect();
    Spectrum::new(energies, SpectrumKind::ElectronVolt)
}

/// Occupation of the `m`-oligomer with `M = N·m` electron pairs.
pub fn hmo_filling<T: Real>(spec: &MonomerSpec, m: usize, consts: &ModelConstants<T>) -> Result<OrbitalFilling<T>> {
    let g = build_oligomer(spec, m, false)?;
    fill_orbitals(&hmo_levels(&g, consts)?, spec.electron_pairs(m))
}

/// HOMO–LUMO gap of the `m`-oligomer in eV.
pub fn hmo_gap<T: Real>(spec: &MonomerSpec, m: usize, consts: &ModelConstants<T>) -> Result<T> {
    let g = build_oligomer(spec, m, false)?;
    let lambda = hmo_lambda::<T>(&g)?;
    let pairs = spec.electron_pairs(m);
    if pairs + 1 > lambda.len() {
        return Err(Error::InvalidArgument(format!(
            "oligomer with {} atoms cannot hold {pairs} electron pairs plus a LUMO",
            lambda.len()
        )));
    }
    let desc = lambda.descending();
    let dl = desc[pairs - 1] - desc[pairs];
    Ok(if dl <= lambda.tolerance() {
        T::zero()
    } else {
        consts.beta_ev * dl
    })
}

fn cos_levels<T: Real>(count: usize, denominator: usize, kind: SpectrumKind) -> Spectrum<T> {
    let values = (1..=count)
        .map(|n| T::lit(2.0) * (T::PI() * T::from_count(n) / T::from_count(denominator)).cos())
        .collect();
    Spectrum::new(values, kind).expect("cosines are finite")
}

/// `λ_n = 2cos(nπ/m)`, `n = 1..2m`: the ring of `2m` atoms. `m = 1` would be
/// a doubled bond and is rejected.
pub fn ring_spectrum_closed_form<T: Real>(m: usize) -> Result<Spectrum<T>> {
    if m < 2 {
        return Err(Error::InvalidArgument("a ring needs m >= 2 (2m >= 4 atoms)".into()));
    }
    Ok(cos_levels(2 * m, m, SpectrumKind::HmoLambda))
}

/// `λ_n = 2cos(nπ/(2m+1))`, `n = 1..2m`: the open chain of `2m` atoms.
pub fn chain_spectrum_closed_form<T: Real>(m: usize) -> Spectrum<T> {
    cos_levels(2 * m, 2 * m + 1, SpectrumKind::HmoLambda)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    /// HOMO multiplet completely filled.
    Stable,
    /// HOMO multiplet partly filled (SOMO present).
    Reactive,
}

/// Hückel's rule for the ring `C_{2m}H_{2m}`, read off the actual filling.
pub fn huckel_rule(m: usize) -> Result<Stability> {
    let lambda = ring_spectrum_closed_form::<f64>(m)?;
    let energies: Vec<f64> = lambda.values().iter().map(|l| -l).collect();
    let levels = Spectrum::new(energies, SpectrumKind::HmoLambda)?;
    let filling = fill_orbitals(&levels, m)?;
    Ok(if filling.somo {
        Stability::Reactive
    } else {
        Stability::Stable
    })
}

/// Number of zero eigenvalues of `C` (within the multiplicity tolerance).
pub fn zero_modes<T: Real>(g: &OligomerGraph) -> Result<usize> {
    let lambda = eig_symmetric(&g.connectivity::<T>())?;
    Ok(lambda.multiplicity_of(T::zero()))
}
