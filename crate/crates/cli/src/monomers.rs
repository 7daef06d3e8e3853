//! Built-in monomers plus JSON files from `$POLYBAND_CATALOG_DIR`.

use std::fs;
use std::path::{Path, PathBuf};

use polyband::{catalog, parse_monomer, MonomerSpec};

use crate::error::CliError;

pub const CATALOG_ENV: &str = "POLYBAND_CATALOG_DIR";

/// A monomer and where it came from (`None` for built-ins).
#[derive(Debug, Clone)]
pub struct Entry {
    pub spec: MonomerSpec,
    pub source: Option<PathBuf>,
}

fn read_monomer(path: &Path) -> Result<MonomerSpec, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_monomer(&text).map_err(|source| CliError::BadMonomerFile { path: path.into(), source })
}

/// JSON monomers of `dir`, sorted by file name.
pub fn user_monomers(dir: &Path) -> Result<Vec<Entry>, CliError> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| CliError::io(dir, e))?
        .map(|e| e.map(|e| e.path()).map_err(|e| CliError::io(dir, e)))
        .collect::<Result<_, _>>()?;
    paths.retain(|p| p.extension().is_some_and(|x| x == "json"));
    paths.sort();
    paths
        .into_iter()
        .map(|p| Ok(Entry { spec: read_monomer(&p)?, source: Some(p) }))
        .collect()
}

/// Built-ins followed by the user directory, if any.
pub fn all_monomers(user_dir: Option<&Path>) -> Result<Vec<Entry>, CliError> {
    let mut entries: Vec<Entry> = catalog().into_iter().map(|spec| Entry { spec, source: None }).collect();
    if let Some(dir) = user_dir {
        entries.extend(user_monomers(dir)?);
    }
    Ok(entries)
}

/// `$POLYBAND_CATALOG_DIR`, when set and nonempty.
pub fn env_catalog_dir() -> Option<PathBuf> {
    std::env::var_os(CATALOG_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

/// Looks `name` up among the known monomers (case-insensitively), then as a
/// file path.
pub fn resolve(name: &str, user_dir: Option<&Path>) -> Result<MonomerSpec, CliError> {
    let entries = all_monomers(user_dir)?;
    if let Some(e) = entries.iter().find(|e| e.spec.name() == name) {
        return Ok(e.spec.clone());
    }
    if let Some(e) = entries.iter().find(|e| e.spec.name().eq_ignore_ascii_case(name)) {
        return Ok(e.spec.clone());
    }
    let path = Path::new(name);
    if path.is_file() {
        return read_monomer(path);
    }
    Err(CliError::UnknownMonomer(name.into()))
}
