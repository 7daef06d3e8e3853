//! Floquet-Bloch analysis of the infinite polymer.
//!
//! Monomer copies are joined by a single bond from `link_b` of one copy to
//! `link_e` of the next, so the Bloch matrix is `C + F(k)` with
//! `F_{e,b} = e^{ik}` and `F_{b,e} = e^{−ik}`. Both `C + F(k)` and `C + F(−k)`
//! have the same spectrum, so bands are sampled on `k ∈ [0, π]`.

use ndarray::Array2;
use num_complex::Complex;
use rayon::prelude::*;

use crate::eigen::{determinant, eig_generalized_hermitian, eig_hermitian, eig_symmetric, Multiplet, SpectrumKind};
use crate::error::{Error, Result};
use crate::femodel::{branch_wavenumber, flat_exceptional_density};
use crate::graph::{ModelConstants, MonomerSpec};
use crate::scalar::Real;

/// Number of quasi-momenta used by [`polymer_gap`].
pub const DEFAULT_K_SAMPLES: usize = 721;

/// Quasi-momenta besides `0` and `π` at which candidate flat levels are
/// verified. They are not rational multiples of `π`.
const PROBE_K: [f64; 3] = [0.7, 1.9, 2.6];

/// The two spectral models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    Hmo,
    Fe,
}

/// `C + F(k)` for one quasi-momentum.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochMatrix<T> {
    k: T,
    matrix: Array2<Complex<T>>,
}

impl<T: Real> BlochMatrix<T> {
    pub fn k(&self) -> T {
        self.k
    }

    pub fn matrix(&self) -> &Array2<Complex<T>> {
        &self.matrix
    }

    /// Eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<T>> {
        Ok(eig_hermitian(&self.matrix)?.into_values())
    }
}

/// Bloch matrix of `spec` at quasi-momentum `k ∈ [−π, π]`.
pub fn bloch_matrix<T: Real>(spec: &MonomerSpec, k: T) -> Result<BlochMatrix<T>> {
    if !k.is_finite() || k.abs() > T::PI() * (T::one() + T::epsilon()) {
        return Err(Error::InvalidArgument(format!("quasi-momentum {k} outside [-π, π]")));
    }
    let mut matrix = spec.connectivity::<T>().mapv(|c| Complex::new(c, T::zero()));
    let (b, e) = (spec.link_b(), spec.link_e());
    let phase = Complex::new(k.cos(), k.sin());
    matrix[[e, b]] = matrix[[e, b]] + phase;
    matrix[[b, e]] = matrix[[b, e]] + phase.conj();
    Ok(BlochMatrix { k, matrix })
}

fn real_spectrum<T: Real>(spec: &MonomerSpec, k: T) -> Result<Vec<T>> {
    let m = bloch_matrix(spec, k)?.matrix.mapv(|z| z.re);
    Ok(eig_symmetric(&m)?.into_values())
}

/// Union of the spectra of `C + F(0)` and `C + F(π)`, ascending. Every band
/// extremum is one of these values.
pub fn band_edges<T: Real>(spec: &MonomerSpec) -> Result<Vec<T>> {
    let mut edges = real_spectrum(spec, T::zero())?;
    edges.extend(real_spectrum(spec, T::PI())?);
    edges.sort_by(|a, b| a.total_cmp(b));
    Ok(edges)
}

/// One band `[lo, hi]` of the infinite polymer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Band<T> {
    pub lo: T,
    pub hi: T,
    /// `hi − lo` is below the flatness threshold.
    pub flat: bool,
    /// States per monomer carried by the band.
    pub weight: usize,
}

impl<T: Real> Band<T> {
    pub fn width(&self) -> T {
        self.hi - self.lo
    }
}

/// Band structure of the polymer in the model's dimensionless unit
/// (`λ` for Hückel, `μ` for the free-electron model).
#[derive(Debug, Clone, PartialEq)]
pub struct BandStructure<T> {
    kind: SpectrumKind,
    bands: Vec<Band<T>>,
    k_grid: Vec<T>,
    dispersion: Vec<Vec<T>>,
    flat_levels: Vec<Multiplet<T>>,
    valence: usize,
    conduction: usize,
    gap: T,
}

impl<T: Real> BandStructure<T> {
    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    /// Bands ordered by lower edge.
    pub fn bands(&self) -> &[Band<T>] {
        &self.bands
    }

    pub fn k_grid(&self) -> &[T] {
        &self.k_grid
    }

    /// `dispersion()[j][r]` is band `r` at `k_grid()[j]`.
    pub fn dispersion(&self) -> &[Vec<T>] {
        &self.dispersion
    }

    /// Levels that are eigenvalues at every quasi-momentum, with their
    /// number of states per monomer. These can hide inside touching bands.
    pub fn flat_levels(&self) -> &[Multiplet<T>] {
        &self.flat_levels
    }

    /// 0-based index of the highest occupied band.
    pub fn valence_index(&self) -> usize {
        self.valence
    }

    /// 0-based index of the lowest unoccupied band.
    pub fn conduction_index(&self) -> usize {
        self.conduction
    }

    pub fn valence(&self) -> &Band<T> {
        &self.bands[self.valence]
    }

    pub fn conduction(&self) -> &Band<T> {
        &self.bands[self.conduction]
    }

    /// Separation between occupied and empty bands in the model unit, zero
    /// when they touch or overlap.
    pub fn gap(&self) -> T {
        self.gap
    }
}

fn k_grid<T: Real>(k_samples: usize) -> Result<Vec<T>> {
    if k_samples < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 k samples, got {k_samples}")));
    }
    let last = T::from_count(k_samples - 1);
    Ok((0..k_samples)
        .map(|j| if j + 1 == k_samples { T::PI() } else { T::PI() * T::from_count(j) / last })
        .collect())
}

fn flat_tolerance<T: Real>() -> T {
    T::lit(10.0) * T::lit(T::MULTIPLICITY_TOL)
}

fn count_near<T: Real>(values: &[T], x: T, tol: T) -> usize {
    values.iter().filter(|&&v| (v - x).abs() <= tol).count()
}

/// Eigenvalues of `C + F(0)` that persist at `k = π` and at generic `k`.
///
/// `ξ(k, λ)` is affine in `cos k`, so a root shared by two values of `cos k`
/// is a root for all `k`. The multiplicity is the smallest count seen.
fn detect_flat_levels<T: Real>(spec: &MonomerSpec) -> Result<Vec<Multiplet<T>>> {
    let tol = flat_tolerance::<T>();
    let at_zero = real_spectrum(spec, T::zero())?;
    let mut probes = vec![real_spectrum(spec, T::PI())?];
    for k in PROBE_K {
        probes.push(bloch_matrix(spec, T::lit(k))?.eigenvalues()?);
    }
    let mut levels: Vec<Multiplet<T>> = Vec::new();
    for &value in &at_zero {
        if levels.iter().any(|l| (l.value - value).abs() <= tol) {
            continue;
        }
        let multiplicity = probes
            .iter()
            .map(|p| count_near(p, value, tol))
            .min()
            .unwrap_or(0)
            .min(count_near(&at_zero, value, tol));
        if multiplicity > 0 {
            levels.push(Multiplet { value, multiplicity });
        }
    }
    Ok(levels)
}

/// `(lowest edge of the filled bands) − (highest edge of the empty ones)`
/// when filling from the top, clamped at zero.
fn separation<T: Real>(filled: &[Band<T>], empty: &[Band<T>], filled_above: bool) -> T {
    let lo = |bands: &[Band<T>]| bands.iter().map(|b| b.lo).fold(T::infinity(), T::min);
    let hi = |bands: &[Band<T>]| bands.iter().map(|b| b.hi).fold(T::neg_infinity(), T::max);
    let gap = if filled_above {
        lo(filled) - hi(empty)
    } else {
        lo(empty) - hi(filled)
    };
    if gap <= flat_tolerance::<T>() {
        T::zero()
    } else {
        gap
    }
}

/// Hückel band structure sampled on `k_samples` uniform points of `[0, π]`.
///
/// Band `r` is the range of the `r`-th smallest eigenvalue. With `E = α − βλ`
/// the `N` topmost bands are occupied, so the valence band is the `N`-th band
/// from the top in `λ`.
pub fn band_structure<T: Real>(spec: &MonomerSpec, k_samples: usize) -> Result<BandStructure<T>> {
    let k_grid = k_grid::<T>(k_samples)?;
    let dispersion: Vec<Vec<T>> = k_grid
        .par_iter()
        .map(|&k| bloch_matrix(spec, k)?.eigenvalues())
        .collect::<Result<_>>()?;
    let n_c = spec.n_atoms();
    let tol = flat_tolerance::<T>();
    let bands: Vec<Band<T>> = (0..n_c)
        .map(|r| {
            let column = dispersion.iter().map(|row| row[r]);
            let lo = column.clone().fold(T::infinity(), T::min);
            let hi = column.fold(T::neg_infinity(), T::max);
            Band {
                lo,
                hi,
                flat: hi - lo <= tol,
                weight: 1,
            }
        })
        .collect();
    let n = spec.n_double_bonds();
    if n >= n_c {
        return Err(Error::InvalidArgument("no empty band".into()));
    }
    let valence = n_c - n;
    let conduction = valence - 1;
    let gap = separation(&bands[valence..], &bands[..valence], true);
    Ok(BandStructure {
        kind: SpectrumKind::HmoLambda,
        bands,
        k_grid,
        dispersion,
        flat_levels: detect_flat_levels(spec)?,
        valence,
        conduction,
        gap,
    })
}

/// Valency of every monomer atom inside the polymer, counting the link bond.
fn polymer_valency<T: Real>(spec: &MonomerSpec) -> Vec<T> {
    let mut deg = vec![0usize; spec.n_atoms()];
    for &(i, j) in spec.bonds() {
        deg[i] += 1;
        deg[j] += 1;
    }
    deg[spec.link_b()] += 1;
    deg[spec.link_e()] += 1;
    deg.into_iter().map(T::from_count).collect()
}

/// Free-electron band structure in `μ` covering `√μ ≤ windows·π`.
///
/// The generalized Bloch problem `(C + F(k))u = μ̃Vu` gives `N_C` bands in
/// `μ̃`; each maps monotonically onto one band per window
/// `√μ ∈ [nπ, (n+1)π]`. States vanishing at every vertex add flat bands at
/// `μ = (nπ)²`. Bands are filled from below with `N` pairs per monomer.
pub fn fe_band_structure<T: Real>(spec: &MonomerSpec, k_samples: usize, windows: usize) -> Result<BandStructure<T>> {
    if windows == 0 {
        return Err(Error::InvalidArgument("need at least one window".into()));
    }
    let k_grid = k_grid::<T>(k_samples)?;
    let valency = polymer_valency::<T>(spec);
    let tilde: Vec<Vec<T>> = k_grid
        .par_iter()
        .map(|&k| Ok(eig_generalized_hermitian(bloch_matrix(spec, k)?.matrix(), &valency)?.into_values()))
        .collect::<Result<_>>()?;

    let n_c = spec.n_atoms();
    let tol = flat_tolerance::<T>();
    let mut columns: Vec<(Band<T>, Vec<T>)> = Vec::new();
    for window in 0..windows {
        for r in 0..n_c {
            let mu: Vec<T> = tilde
                .iter()
                .map(|row| branch_wavenumber(row[r], window).powi(2))
                .collect();
            let lo = mu.iter().copied().fold(T::infinity(), T::min);
            let hi = mu.iter().copied().fold(T::neg_infinity(), T::max);
            let band = Band {
                lo,
                hi,
                flat: hi - lo <= tol,
                weight: 1,
            };
            columns.push((band, mu));
        }
    }
    let mut flat_levels = Vec::new();
    for n in 1..windows {
        let density = flat_exceptional_density(spec.n_atoms(), spec.bonds(), &[(spec.link_b(), spec.link_e())], n);
        if density > 0 {
            let mu = (T::from_count(n) * T::PI()).powi(2);
            let band = Band {
                lo: mu,
                hi: mu,
                flat: true,
                weight: density,
            };
            columns.push((band, vec![mu; k_grid.len()]));
            flat_levels.push(Multiplet {
                value: mu,
                multiplicity: density,
            });
        }
    }
    columns.sort_by(|a, b| a.0.lo.total_cmp(&b.0.lo).then(a.0.hi.total_cmp(&b.0.hi)));

    let pairs = spec.n_double_bonds();
    let mut filled = 0;
    let valence = columns
        .iter()
        .position(|(band, _)| {
            filled += band.weight;
            filled >= pairs
        })
        .filter(|&v| v + 1 < columns.len())
        .ok_or_else(|| Error::InvalidArgument(format!("{windows} windows hold too few bands")))?;
    let bands: Vec<Band<T>> = columns.iter().map(|(b, _)| *b).collect();
    let gap = if filled > pairs {
        T::zero()
    } else {
        separation(&bands[..=valence], &bands[valence + 1..], false)
    };
    let dispersion = (0..k_grid.len())
        .map(|j| columns.iter().map(|(_, mu)| mu[j]).collect())
        .collect();
    Ok(BandStructure {
        kind: SpectrumKind::FeMu,
        bands,
        k_grid,
        dispersion,
        flat_levels,
        valence,
        conduction: valence + 1,
        gap,
    })
}

/// Band gap of the infinite polymer in eV.
pub fn polymer_gap<T: Real>(spec: &MonomerSpec, model: Model, consts: &ModelConstants<T>) -> Result<T> {
    match model {
        Model::Hmo => Ok(consts.beta_ev * band_structure::<T>(spec, DEFAULT_K_SAMPLES)?.gap()),
        Model::Fe => {
            let windows = 2 + spec.n_double_bonds() / spec.n_atoms().max(1);
            Ok(consts.epsilon_ev * fe_band_structure::<T>(spec, DEFAULT_K_SAMPLES, windows)?.gap())
        }
    }
}

/// `ξ(k, λ) = det(C + F(k) − λI)`.
pub fn xi<T: Real>(spec: &MonomerSpec, k: T, lambda: T) -> Result<Complex<T>> {
    let mut m = bloch_matrix(spec, k)?.matrix;
    for i in 0..m.nrows() {
        m[[i, i]] = m[[i, i]] - lambda;
    }
    Ok(determinant(&m))
}

/// Coefficients of `ξ(k, λ) = p₀(λ)·cos k + p₁(λ)`.
pub fn xi_decomposition<T: Real>(spec: &MonomerSpec, lambda: T) -> Result<(T, T)> {
    let at_zero = xi(spec, T::zero(), lambda)?.re;
    let at_pi = xi(spec, T::PI(), lambda)?.re;
    let two = T::lit(2.0);
    Ok(((at_zero - at_pi) / two, (at_zero + at_pi) / two))
}
