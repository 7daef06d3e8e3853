//! Oligomer series: counting functions, gap sweeps, band widths and the
//! approach to the polymer limit.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::femodel::{fe_gap, fe_levels};
use crate::floquet::{band_structure, fe_band_structure, polymer_gap, BandStructure, Model, DEFAULT_K_SAMPLES};
use crate::graph::{build_oligomer, ModelConstants, MonomerSpec};
use crate::hmo::{hmo_gap, hmo_lambda};
use crate::scalar::Real;

/// Free-electron levels per monomer used for counting functions.
pub const FE_LEVEL_MARGIN: f64 = 1.2;

/// `σ^m(x)`: eigenvalues strictly below `x`, per monomer.
///
/// Hückel spectra are in `λ`, free-electron spectra in `μ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CountingFunction<T> {
    model: Model,
    m: usize,
    breakpoints: Vec<T>,
    samples: Vec<(T, T)>,
}

impl<T: Real> CountingFunction<T> {
    pub fn model(&self) -> Model {
        self.model
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Eigenvalues, ascending, with multiplicity.
    pub fn breakpoints(&self) -> &[T] {
        &self.breakpoints
    }

    /// `(x, σ^m(x))` on the requested grid.
    pub fn samples(&self) -> &[(T, T)] {
        &self.samples
    }

    pub fn eval(&self, x: T) -> T {
        let below = self.breakpoints.partition_point(|&v| v < x);
        T::from_count(below) / T::from_count(self.m)
    }

    /// Height of the step across `[x − tol, x + tol]`.
    pub fn jump(&self, x: T, tol: T) -> T {
        let below = self.breakpoints.partition_point(|&v| v < x - tol);
        let through = self.breakpoints.partition_point(|&v| v <= x + tol);
        T::from_count(through - below) / T::from_count(self.m)
    }

    /// `σ^m` beyond the last breakpoint.
    pub fn total(&self) -> T {
        T::from_count(self.breakpoints.len()) / T::from_count(self.m)
    }
}

fn oligomer_spectrum<T: Real>(spec: &MonomerSpec, m: usize, model: Model) -> Result<Vec<T>> {
    match model {
        Model::Hmo => {
            let g = build_oligomer(spec, m, false)?;
            Ok(hmo_lambda::<T>(&g)?.into_values())
        }
        Model::Fe => {
            let g = build_oligomer(spec, m, true)?;
            let budget = (FE_LEVEL_MARGIN * (spec.n_atoms() * m) as f64).ceil() as usize;
            Ok(fe_levels::<T>(&g, budget)?.mu_values().to_vec())
        }
    }
}

/// Counting function of the `m`-oligomer sampled on `x_grid`.
pub fn counting_function<T: Real>(spec: &MonomerSpec, m: usize, model: Model, x_grid: &[T]) -> Result<CountingFunction<T>> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    let mut cf = CountingFunction {
        model,
        m,
        breakpoints: oligomer_spectrum(spec, m, model)?,
        samples: Vec::new(),
    };
    cf.samples = x_grid.iter().map(|&x| (x, cf.eval(x))).collect();
    Ok(cf)
}

/// Gaps of an oligomer series and their polymer limit.
#[derive(Debug, Clone, PartialEq)]
pub struct GapSeries<T> {
    pub model: Model,
    pub monomer: MonomerSpec,
    /// `(m, ΔE(m))` in eV, ascending in `m`.
    pub entries: Vec<(usize, T)>,
    /// `ΔE(∞)` in eV.
    pub polymer_limit: T,
    /// Least-squares `(slope, intercept)` of `ΔE` against `1/m` on the
    /// larger-`m` half of the entries.
    pub fit: Option<(T, T)>,
}

fn least_squares<T: Real>(points: &[(T, T)]) -> Option<(T, T)> {
    if points.len() < 2 {
        return None;
    }
    let n = T::from_count(points.len());
    let mean_x = points.iter().map(|p| p.0).sum::<T>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<T>() / n;
    let sxx: T = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if sxx == T::zero() {
        return None;
    }
    let sxy: T = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    Some((slope, mean_y - slope * mean_x))
}

/// Oligomer gaps for every `m` in `m_list` (ascending) and the polymer gap.
pub fn gap_sweep<T: Real>(spec: &MonomerSpec, m_list: &[usize], model: Model, consts: &ModelConstants<T>) -> Result<GapSeries<T>> {
    if m_list.is_empty() || m_list.windows(2).any(|w| w[0] >= w[1]) || m_list[0] == 0 {
        return Err(Error::InvalidArgument("m list must be nonempty, positive and strictly ascending".into()));
    }
    let entries: Vec<(usize, T)> = m_list
        .par_iter()
        .map(|&m| {
            let gap = match model {
                Model::Hmo => hmo_gap(spec, m, consts)?,
                Model::Fe => fe_gap(spec, m, consts)?,
            };
            Ok((m, gap))
        })
        .collect::<Result<_>>()?;
    let half = &entries[entries.len() / 2..];
    let points: Vec<(T, T)> = half.iter().map(|&(m, g)| (T::one() / T::from_count(m), g)).collect();
    Ok(GapSeries {
        model,
        monomer: spec.clone(),
        fit: least_squares(&points),
        polymer_limit: polymer_gap(spec, model, consts)?,
        entries,
    })
}

/// Band structure used for polymer comparisons: Hückel bands, or the
/// free-electron bands covering the first `2 + N/N_C` windows.
pub fn polymer_bands<T: Real>(spec: &MonomerSpec, model: Model) -> Result<BandStructure<T>> {
    match model {
        Model::Hmo => band_structure(spec, DEFAULT_K_SAMPLES),
        Model::Fe => {
            let windows = 2 + spec.n_double_bonds() / spec.n_atoms().max(1);
            fe_band_structure(spec, DEFAULT_K_SAMPLES, windows)
        }
    }
}

/// `(valence, conduction)` band widths of the polymer in eV.
pub fn band_widths<T: Real>(spec: &MonomerSpec, model: Model, consts: &ModelConstants<T>) -> Result<(T, T)> {
    let bands = polymer_bands::<T>(spec, model)?;
    let scale = match model {
        Model::Hmo => consts.beta_ev,
        Model::Fe => consts.epsilon_ev,
    };
    Ok((scale * bands.valence().width(), scale * bands.conduction().width()))
}

/// Points outside all bands, with the polymer count `σ^∞` there.
fn gap_probes<T: Real>(bands: &BandStructure<T>, max_count: usize) -> Vec<(T, usize)> {
    let mut sorted: Vec<_> = bands.bands().to_vec();
    sorted.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let mut probes = Vec::new();
    if let Some(first) = sorted.first() {
        probes.push((first.lo - T::one(), 0));
    }
    let mut below = 0;
    let mut top = T::neg_infinity();
    for (i, band) in sorted.iter().enumerate() {
        below += band.weight;
        top = top.max(band.hi);
        if below > max_count {
            break;
        }
        match sorted.get(i + 1) {
            Some(next) if next.lo > top => probes.push(((top + next.lo) / T::lit(2.0), below)),
            None => probes.push((top + T::one(), below)),
            _ => {}
        }
    }
    probes
}

/// `sup |σ^m − σ^∞|` over points in the polymer gaps, for each `m`.
///
/// For the free-electron model only gaps below `N_C` states per monomer are
/// probed, which the oligomer level budget covers.
pub fn counting_convergence<T: Real>(spec: &MonomerSpec, model: Model, m_list: &[usize]) -> Result<Vec<(usize, T)>> {
    let bands = polymer_bands::<T>(spec, model)?;
    let max_count = match model {
        Model::Hmo => usize::MAX,
        Model::Fe => spec.n_atoms(),
    };
    let probes = gap_probes(&bands, max_count);
    let xs: Vec<T> = probes.iter().map(|p| p.0).collect();
    m_list
        .par_iter()
        .map(|&m| {
            let cf = counting_function(spec, m, model, &xs)?;
            let dev = probes
                .iter()
                .zip(cf.samples())
                .map(|(&(_, polymer), &(_, sigma))| (sigma - T::from_count(polymer)).abs())
                .fold(T::zero(), T::max);
            Ok((m, dev))
        })
        .collect()
}
