//! Command execution: library calls in, tables (or plots) out.

use std::io::Write;
use std::path::Path;

use polyband::{
    band_structure, band_widths, counting_function, fe_band_structure, gap_sweep, polymer_bands, BandStructure64, Model,
    MonomerSpec,
};

use crate::config::{model_name, CommandKind, Format, RunConfig};
use crate::error::CliError;
use crate::monomers::{all_monomers, resolve};
use crate::svg::{render_svg_with_ticks, PlotKind};
use crate::table::{fmt_f64, Table};

fn write_out(path: Option<&Path>, content: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, content).map_err(|e| CliError::io(p, e)),
        None => stdout
            .write_all(content.as_bytes())
            .and_then(|_| stdout.flush())
            .map_err(|e| CliError::io("<stdout>", e)),
    }
}

fn emit(cfg: &RunConfig, table: &Table, kind: PlotKind, ticks: &[f64], stdout: &mut dyn Write) -> Result<(), CliError> {
    let csv = table.to_csv();
    let content = match cfg.format {
        Format::Csv => csv,
        Format::Svg => render_svg_with_ticks(&csv, kind, ticks)?,
    };
    write_out(cfg.output.as_deref(), &content, stdout)
}

fn labels(list: &[usize]) -> String {
    list.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn catalog_table(cfg: &RunConfig) -> Result<Table, CliError> {
    let mut t = Table::new(&["name", "n_atoms", "n_double_bonds", "link_b", "link_e", "dangling", "trim_last", "source"]);
    for e in all_monomers(cfg.catalog_dir.as_deref())? {
        let s = &e.spec;
        t.push(vec![
            s.name().into(),
            s.n_atoms().to_string(),
            s.n_double_bonds().to_string(),
            (s.link_b() + 1).to_string(),
            (s.link_e() + 1).to_string(),
            labels(s.dangling()),
            labels(s.trim_last()),
            e.source.map_or_else(|| "builtin".into(), |p| p.display().to_string()),
        ]);
    }
    Ok(t)
}

fn gap_table(cfg: &RunConfig, spec: &MonomerSpec, with_limit: bool) -> Result<Table, CliError> {
    let models = cfg.model.models();
    let series = models
        .iter()
        .map(|&model| gap_sweep(spec, &cfg.m, model, &cfg.constants))
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(&["model", "monomer", "m", "inv_m", "gap_eV"]);
    for i in 0..cfg.m.len() {
        for s in &series {
            let (m, gap) = s.entries[i];
            t.push(vec![
                model_name(s.model).into(),
                spec.name().into(),
                m.to_string(),
                fmt_f64(1.0 / m as f64),
                fmt_f64(gap),
            ]);
        }
    }
    if with_limit {
        for s in &series {
            t.push(vec![model_name(s.model).into(), spec.name().into(), "inf".into(), "0".into(), fmt_f64(s.polymer_limit)]);
            match s.fit {
                Some((slope, intercept)) => eprintln!(
                    "{} {}: limit {:.6} eV, fit gap = {:.6} + {:.6}/m",
                    spec.name(),
                    model_name(s.model),
                    s.polymer_limit,
                    intercept,
                    slope
                ),
                None => eprintln!("{} {}: limit {:.6} eV", spec.name(), model_name(s.model), s.polymer_limit),
            }
        }
    }
    Ok(t)
}

fn bands_for(cfg: &RunConfig, spec: &MonomerSpec, model: Model) -> Result<BandStructure64, CliError> {
    Ok(match (model, cfg.windows) {
        (Model::Hmo, _) => band_structure(spec, cfg.k_samples)?,
        (Model::Fe, Some(w)) => fe_band_structure(spec, cfg.k_samples, w)?,
        (Model::Fe, None) if cfg.k_samples == polyband::floquet::DEFAULT_K_SAMPLES => polymer_bands(spec, Model::Fe)?,
        (Model::Fe, None) => {
            let windows = 2 + spec.n_double_bonds() / spec.n_atoms().max(1);
            fe_band_structure(spec, cfg.k_samples, windows)?
        }
    })
}

fn band_tables(cfg: &RunConfig, spec: &MonomerSpec) -> Result<(Table, Table), CliError> {
    let all: Vec<(Model, BandStructure64)> = cfg
        .model
        .models()
        .into_iter()
        .map(|m| Ok((m, bands_for(cfg, spec, m)?)))
        .collect::<Result<_, CliError>>()?;
    let mut bands = Table::new(&["model", "band_index", "lo", "hi", "flat_flag"]);
    let width = all.iter().map(|(_, b)| b.dispersion().first().map_or(0, Vec::len)).max().unwrap_or(0);
    let mut header = vec!["model".to_string(), "k".to_string()];
    header.extend((1..=width).map(|r| format!("band_{r}")));
    let mut dispersion = Table { header, rows: Vec::new() };
    for (model, bs) in &all {
        for (i, b) in bs.bands().iter().enumerate() {
            bands.push(vec![
                model_name(*model).into(),
                (i + 1).to_string(),
                edge(b.lo),
                edge(b.hi),
                u8::from(b.flat).to_string(),
            ]);
        }
        for (k, row) in bs.k_grid().iter().zip(bs.dispersion()) {
            let mut cells = vec![model_name(*model).to_string(), fmt_f64(*k)];
            cells.extend(row.iter().map(|&v| fmt_f64(v)));
            cells.resize(width + 2, String::new());
            dispersion.push(cells);
        }
    }
    Ok((bands, dispersion))
}

/// Band edges at round-off distance from zero are written as zero.
fn edge(v: f64) -> String {
    fmt_f64(if v.abs() < 1e-12 { 0.0 } else { v })
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 }).collect()
}

fn count_table(cfg: &RunConfig, spec: &MonomerSpec) -> Result<(Table, Vec<f64>), CliError> {
    let mut t = Table::new(&["model", "m", "x", "sigma"]);
    let mut x_span = (f64::INFINITY, f64::NEG_INFINITY);
    for &m in &cfg.m {
        for model in cfg.model.models() {
            let cf = counting_function::<f64>(spec, m, model, &[])?;
            let bp = cf.breakpoints();
            let (lo, hi) = cfg.x_range.unwrap_or_else(|| {
                let top = match model {
                    Model::Hmo => bp[bp.len() - 1],
                    Model::Fe => bp[(spec.n_atoms() * m).min(bp.len()) - 1],
                };
                let pad = 0.05 * (top - bp[0]).max(1.0);
                (bp[0] - pad, top + pad)
            });
            x_span = (x_span.0.min(lo), x_span.1.max(hi));
            for x in linspace(lo, hi, cfg.points) {
                t.push(vec![model_name(model).into(), m.to_string(), fmt_f64(x), fmt_f64(cf.eval(x))]);
            }
        }
    }
    let mut edges = Vec::new();
    if let Some(&first) = cfg.model.models().first() {
        for b in bands_for(cfg, spec, first)?.bands() {
            edges.extend([b.lo, b.hi].into_iter().filter(|e| (x_span.0..=x_span.1).contains(e)));
        }
    }
    Ok((t, edges))
}

fn monomer(cfg: &RunConfig) -> Result<MonomerSpec, CliError> {
    let name = cfg.monomer.as_deref().ok_or_else(|| CliError::Usage("a monomer is required".into()))?;
    resolve(name, cfg.catalog_dir.as_deref())
}

/// Executes one command, writing to `cfg.output` or `stdout`.
pub fn run(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cfg.command {
        CommandKind::Catalog => {
            if cfg.format == Format::Svg {
                return Err(CliError::Usage("the catalog has no plot".into()));
            }
            write_out(cfg.output.as_deref(), &catalog_table(cfg)?.to_csv(), stdout)
        }
        CommandKind::Gap => {
            let spec = monomer(cfg)?;
            emit(cfg, &gap_table(cfg, &spec, false)?, PlotKind::GapVsInvM, &[], stdout)
        }
        CommandKind::Sweep => {
            let spec = monomer(cfg)?;
            let table = gap_table(cfg, &spec, true)?;
            if let Some(path) = &cfg.widths {
                let mut w = Table::new(&["monomer", "model", "valence_eV", "conduction_eV"]);
                for model in cfg.model.models() {
                    let (v, c) = band_widths(&spec, model, &cfg.constants)?;
                    w.push(vec![spec.name().into(), model_name(model).into(), fmt_f64(v), fmt_f64(c)]);
                }
                write_out(Some(path), &w.to_csv(), stdout)?;
            }
            emit(cfg, &table, PlotKind::GapVsInvM, &[], stdout)
        }
        CommandKind::Bands => {
            let spec = monomer(cfg)?;
            let (bands, dispersion) = band_tables(cfg, &spec)?;
            if let Some(path) = &cfg.dispersion {
                write_out(Some(path), &dispersion.to_csv(), stdout)?;
            }
            emit(cfg, &bands, PlotKind::Bands, &[], stdout)
        }
        CommandKind::Count => {
            let spec = monomer(cfg)?;
            let (table, edges) = count_table(cfg, &spec)?;
            emit(cfg, &table, PlotKind::Counting, &edges, stdout)
        }
    }
}
