//! Monomer and oligomer graphs.
//!
//! Vertex indices are 0-based in memory. Files and every external listing use
//! 1-based labels, matching the usual chemistry drawings.

mod catalog;
mod format;

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::scalar::Real;

pub use catalog::{catalog, catalog_entry};
pub use format::{parse_monomer, serialize_monomer};

/// A monomer graph with its two link atoms.
///
/// Consecutive monomers are joined by one bond from `link_b` of copy `a` to
/// `link_e` of copy `a + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomerSpec {
    name: String,
    n_atoms: usize,
    bonds: Vec<(usize, usize)>,
    link_b: usize,
    link_e: usize,
    dangling: Vec<usize>,
    n_double_bonds: usize,
    trim_last: Vec<usize>,
}

impl MonomerSpec {
    /// Builds and validates a spec from 1-based labels.
    pub fn from_labels(
        name: &str,
        n_atoms: usize,
        bonds: &[[usize; 2]],
        link_b: usize,
        link_e: usize,
        dangling: &[usize],
        n_double_bonds: usize,
    ) -> Result<Self> {
        let invalid = |field: String, message: String| Error::InvalidMonomer { field, message };

        if name.trim().is_empty() {
            return Err(invalid("name".into(), "must be a non-empty string".into()));
        }
        if n_atoms == 0 {
            return Err(invalid("n_atoms".into(), "must be positive".into()));
        }
        let check_label = |field: String, v: usize| -> Result<usize> {
            if v == 0 || v > n_atoms {
                Err(invalid(
                    field,
                    format!("vertex index {v} out of range 1..={n_atoms}"),
                ))
            } else {
                Ok(v - 1)
            }
        };

        let mut seen = BTreeSet::new();
        for (k, &[i, j]) in bonds.iter().enumerate() {
            let field = format!("bonds[{k}]");
            let a = check_label(field.clone(), i)?;
            let b = check_label(field.clone(), j)?;
            if a == b {
                return Err(invalid(field, format!("self-loop at vertex {i}")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(invalid(field, format!("duplicate bond {{{i},{j}}}")));
            }
        }
        let bonds: Vec<(usize, usize)> = seen.into_iter().collect();

        let link_b0 = check_label("link_b".into(), link_b)?;
        let link_e0 = check_label("link_e".into(), link_e)?;
        if link_b0 == link_e0 && n_atoms > 1 {
            return Err(invalid(
                "link_e".into(),
                "link_b and link_e must differ unless the monomer is a single atom".into(),
            ));
        }

        let mut dangling0 = Vec::with_capacity(dangling.len());
        for (k, &v) in dangling.iter().enumerate() {
            let field = format!("dangling[{k}]");
            let d = check_label(field.clone(), v)?;
            if d != link_b0 && d != link_e0 {
                return Err(invalid(
                    field,
                    format!("dangling vertex {v} must be a link vertex (caps a chain end)"),
                ));
            }
            if dangling0.contains(&d) {
                return Err(invalid(field, format!("vertex {v} listed twice")));
            }
            dangling0.push(d);
        }
        dangling0.sort_unstable();

        if n_double_bonds == 0 {
            return Err(invalid("n_double_bonds".into(), "must be positive".into()));
        }
        if n_double_bonds > n_atoms.div_ceil(2) {
            return Err(invalid(
                "n_double_bonds".into(),
                format!("{n_double_bonds} exceeds ceil(n_atoms/2) = {}", n_atoms.div_ceil(2)),
            ));
        }

        if !is_connected(n_atoms, &bonds) {
            return Err(invalid("bonds".into(), "monomer graph is disconnected".into()));
        }

        Ok(Self {
            name: name.trim().to_string(),
            n_atoms,
            bonds,
            link_b: link_b0,
            link_e: link_e0,
            dangling: dangling0,
            n_double_bonds,
            trim_last: Vec::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of carbon atoms (vertices) in one monomer.
    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    /// Bonds as sorted 0-based pairs `(i, j)` with `i < j`.
    pub fn bonds(&self) -> &[(usize, usize)] {
        &self.bonds
    }

    /// 0-based atom the bond to the next monomer leaves from.
    pub fn link_b(&self) -> usize {
        self.link_b
    }

    /// 0-based atom the bond from the previous monomer arrives at.
    pub fn link_e(&self) -> usize {
        self.link_e
    }

    /// 0-based atoms that receive a free-end bond at the chain ends (FE only).
    pub fn dangling(&self) -> &[usize] {
        &self.dangling
    }

    /// Double bonds per monomer, i.e. electron pairs per monomer.
    pub fn n_double_bonds(&self) -> usize {
        self.n_double_bonds
    }

    /// 0-based atoms left out of the last copy of every oligomer.
    pub fn trim_last(&self) -> &[usize] {
        &self.trim_last
    }

    /// Electron pairs `M` of the `m`-oligomer: `N·m` less one pair per two
    /// trimmed atoms.
    pub fn electron_pairs(&self, m: usize) -> usize {
        self.n_double_bonds * m - self.trim_last.len() / 2
    }

    /// The same monomer with a different dangling list (1-based labels).
    pub fn with_dangling(&self, dangling: &[usize]) -> Result<Self> {
        let bonds: Vec<[usize; 2]> = self.bonds.iter().map(|&(i, j)| [i + 1, j + 1]).collect();
        let trim: Vec<usize> = self.trim_last.iter().map(|&t| t + 1).collect();
        Self::from_labels(
            &self.name,
            self.n_atoms,
            &bonds,
            self.link_b + 1,
            self.link_e + 1,
            dangling,
            self.n_double_bonds,
        )?
        .with_trim_last(&trim)
    }

    /// The same monomer whose last copy in an oligomer omits the atoms
    /// `labels` (1-based), e.g. a terminal linker group. The omitted atoms
    /// must come in bonded pairs' worth (an even count), must not include
    /// `link_e`, and the remaining atoms must stay connected.
    pub fn with_trim_last(&self, labels: &[usize]) -> Result<Self> {
        let invalid = |field: String, message: String| Error::InvalidMonomer { field, message };
        let mut trim = Vec::with_capacity(labels.len());
        for (k, &v) in labels.iter().enumerate() {
            let field = format!("trim_last[{k}]");
            if v == 0 || v > self.n_atoms {
                return Err(invalid(field, format!("vertex index {v} out of range 1..={}", self.n_atoms)));
            }
            let t = v - 1;
            if t == self.link_e {
                return Err(invalid(field, "link_e cannot be trimmed".into()));
            }
            if t == self.link_b && self.dangling.contains(&t) {
                return Err(invalid(field, "a dangling link cannot be trimmed".into()));
            }
            if trim.contains(&t) {
                return Err(invalid(field, format!("vertex {v} listed twice")));
            }
            trim.push(t);
        }
        trim.sort_unstable();
        if trim.len() % 2 != 0 {
            return Err(invalid("trim_last".into(), "must list an even number of atoms".into()));
        }
        if trim.len() / 2 >= self.n_double_bonds {
            return Err(invalid("trim_last".into(), "would remove every double bond".into()));
        }
        let kept: Vec<usize> = (0..self.n_atoms).filter(|a| !trim.contains(a)).collect();
        let index = |a: usize| kept.iter().position(|&k| k == a);
        let kept_bonds: Vec<(usize, usize)> = self
            .bonds
            .iter()
            .filter_map(|&(i, j)| Some((index(i)?, index(j)?)))
            .collect();
        if !is_connected(kept.len(), &kept_bonds) {
            return Err(invalid("trim_last".into(), "remaining atoms are disconnected".into()));
        }
        Ok(Self {
            trim_last: trim,
            ..self.clone()
        })
    }

    /// Monomer connectivity matrix `C`.
    pub fn connectivity<T: Real>(&self) -> Array2<T> {
        let mut c = Array2::zeros((self.n_atoms, self.n_atoms));
        for &(i, j) in &self.bonds {
            c[[i, j]] = T::one();
            c[[j, i]] = T::one();
        }
        c
    }
}

/// Physical scale constants of both models, in eV and Å.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelConstants<T> {
    /// Magnitude of the Hückel resonance integral `|β|`.
    pub beta_ev: T,
    /// Hückel Coulomb shift `α`; a constant offset for hydrocarbons.
    pub alpha_ev: T,
    /// Free-electron energy unit `ħ²/(2 mₑ L²)`.
    pub epsilon_ev: T,
    pub bond_length_angstrom: T,
}

impl<T: Real> Default for ModelConstants<T> {
    fn default() -> Self {
        Self {
            beta_ev: T::lit(3.05),
            alpha_ev: T::zero(),
            epsilon_ev: T::lit(1.95),
            bond_length_angstrom: T::lit(1.4),
        }
    }
}

impl<T: Real> ModelConstants<T> {
    pub fn new(beta_ev: T, alpha_ev: T, epsilon_ev: T, bond_length_angstrom: T) -> Result<Self> {
        let positive = |name: &str, v: T| {
            if v.is_finite() && v > T::zero() {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!("{name} must be strictly positive, got {v}")))
            }
        };
        positive("beta_ev", beta_ev)?;
        positive("epsilon_ev", epsilon_ev)?;
        positive("bond_length_angstrom", bond_length_angstrom)?;
        if !alpha_ev.is_finite() {
            return Err(Error::InvalidArgument("alpha_ev must be finite".into()));
        }
        Ok(Self {
            beta_ev,
            alpha_ev,
            epsilon_ev,
            bond_length_angstrom,
        })
    }
}

/// The graph `G^m` of an oligomer (or any metric graph used by the models).
#[derive(Debug, Clone)]
pub struct OligomerGraph {
    n_vertices: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Array2<u8>,
    bond_lengths: Array2<f64>,
    valency: Vec<usize>,
    monomer_count: usize,
    source: Option<Arc<MonomerSpec>>,
    // index of atom 0 of copy 0; 1 when a dangling vertex precedes the chain
    copy_offset: usize,
    pendant: Vec<usize>,
}

impl OligomerGraph {
    /// Equilateral graph from an explicit 0-based edge list.
    pub fn from_edges(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n_vertices == 0 {
            return Err(Error::InvalidArgument("graph needs at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for &(i, j) in edges {
            if i >= n_vertices || j >= n_vertices {
                return Err(Error::InvalidArgument(format!(
                    "edge ({i}, {j}) out of range for {n_vertices} vertices"
                )));
            }
            if i == j {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {i}")));
            }
            if !set.insert((i.min(j), i.max(j))) {
                return Err(Error::InvalidArgument(format!("duplicate edge ({i}, {j})")));
            }
        }
        Ok(Self::assemble(n_vertices, set.into_iter().collect(), 1, None, 0, Vec::new()))
    }

    fn assemble(
        n_vertices: usize,
        edges: Vec<(usize, usize)>,
        monomer_count: usize,
        source: Option<Arc<MonomerSpec>>,
        copy_offset: usize,
        pendant: Vec<usize>,
    ) -> Self {
        let mut adjacency = Array2::zeros((n_vertices, n_vertices));
        let mut bond_lengths = Array2::zeros((n_vertices, n_vertices));
        let mut valency = vec![0; n_vertices];
        for &(i, j) in &edges {
            adjacency[[i, j]] = 1;
            adjacency[[j, i]] = 1;
            bond_lengths[[i, j]] = 1.0;
            bond_lengths[[j, i]] = 1.0;
            valency[i] += 1;
            valency[j] += 1;
        }
        Self {
            n_vertices,
            edges,
            adjacency,
            bond_lengths,
            valency,
            monomer_count,
            source,
            copy_offset,
            pendant,
        }
    }

    /// Returns a copy with the length of bond `(i, j)` changed.
    ///
    /// Every model here rejects such graphs; the general `B` matrix exists so
    /// callers can represent them.
    pub fn with_bond_length(mut self, i: usize, j: usize, length: f64) -> Result<Self> {
        if i >= self.n_vertices || j >= self.n_vertices || self.adjacency[[i, j]] == 0 {
            return Err(Error::InvalidArgument(format!("({i}, {j}) is not a bond")));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidArgument(format!("bond length {length} must be positive")));
        }
        self.bond_lengths[[i, j]] = length;
        self.bond_lengths[[j, i]] = length;
        Ok(self)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Edges as sorted 0-based pairs `(i, j)`, `i < j`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// 0/1 connectivity matrix `C`.
    pub fn adjacency(&self) -> &Array2<u8> {
        &self.adjacency
    }

    /// Bond-length matrix `B`, in units of the C–C bond length.
    pub fn bond_lengths(&self) -> &Array2<f64> {
        &self.bond_lengths
    }

    /// Vertex degrees, the diagonal of `V`.
    pub fn valency(&self) -> &[usize] {
        &self.valency
    }

    pub fn monomer_count(&self) -> usize {
        self.monomer_count
    }

    pub fn source(&self) -> Option<&MonomerSpec> {
        self.source.as_deref()
    }

    /// Dangling (pendant) vertices added for the FE model.
    pub fn pendant_vertices(&self) -> &[usize] {
        &self.pendant
    }

    /// Index of atom `atom` (0-based) of copy `copy` (0-based).
    pub fn vertex(&self, copy: usize, atom: usize) -> Option<usize> {
        let spec = self.source.as_ref()?;
        if copy >= self.monomer_count || atom >= spec.n_atoms {
            return None;
        }
        let base = self.copy_offset + copy * spec.n_atoms;
        if copy + 1 < self.monomer_count {
            return Some(base + atom);
        }
        if spec.trim_last.contains(&atom) {
            return None;
        }
        Some(base + atom - spec.trim_last.iter().filter(|&&t| t < atom).count())
    }

    /// `C` as a floating-point matrix.
    pub fn connectivity<T: Real>(&self) -> Array2<T> {
        self.adjacency.mapv(|x| if x == 0 { T::zero() } else { T::one() })
    }

    /// Diagonal of `V` as floating-point values.
    pub fn valency_diagonal<T: Real>(&self) -> Vec<T> {
        self.valency.iter().map(|&d| T::from_count(d)).collect()
    }

    pub fn valency_matrix<T: Real>(&self) -> Array2<T> {
        let mut v = Array2::zeros((self.n_vertices, self.n_vertices));
        for (i, &d) in self.valency.iter().enumerate() {
            v[[i, i]] = T::from_count(d);
        }
        v
    }

    pub fn is_connected(&self) -> bool {
        is_connected(self.n_vertices, &self.edges)
    }

    pub fn ensure_equilateral(&self) -> Result<()> {
        for &(i, j) in &self.edges {
            let len = self.bond_lengths[[i, j]];
            if len != 1.0 {
                return Err(Error::NonEquilateral(i + 1, j + 1, len));
            }
        }
        Ok(())
    }

    /// Total metric length (sum of bond lengths).
    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|&(i, j)| self.bond_lengths[[i, j]]).sum()
    }
}

/// Chains `m` copies of `spec` into `G^m`; the last copy omits the atoms in
/// [`MonomerSpec::trim_last`].
///
/// With `include_dangling`, every dangling atom that is a free link at a chain
/// end gets a pendant unit bond: `link_e` on the first copy, `link_b` on the last.
/// Vertex order is `[pendant at link_e] copy 1 .. copy m [pendant at link_b]`,
/// which keeps the matrices banded.
pub fn build_oligomer(spec: &MonomerSpec, m: usize, include_dangling: bool) -> Result<OligomerGraph> {
    if m == 0 {
        return Err(Error::InvalidArgument("monomer count m must be at least 1".into()));
    }
    let n = spec.n_atoms;
    let cap_e = include_dangling && spec.dangling.contains(&spec.link_e);
    let cap_b = include_dangling && spec.dangling.contains(&spec.link_b);
    let offset = usize::from(cap_e);
    let at = |copy: usize, atom: usize| offset + copy * n + atom;

    let mut edges = Vec::with_capacity(m * (spec.bonds.len() + 1) + 2);
    for copy in 0..m {
        edges.extend(spec.bonds.iter().map(|&(i, j)| (at(copy, i), at(copy, j))));
    }
    for copy in 0..m - 1 {
        let (u, v) = (at(copy, spec.link_b), at(copy + 1, spec.link_e));
        edges.push((u.min(v), u.max(v)));
    }
    let mut n_vertices = offset + m * n;
    let mut pendant = Vec::new();
    if cap_e {
        edges.push((0, at(0, spec.link_e)));
        pendant.push(0);
    }
    if cap_b {
        edges.push((at(m - 1, spec.link_b), n_vertices));
        pendant.push(n_vertices);
        n_vertices += 1;
    }
    if !spec.trim_last.is_empty() {
        let removed: Vec<usize> = spec.trim_last.iter().map(|&t| at(m - 1, t)).collect();
        let shift = |v: usize| v - removed.iter().filter(|&&r| r < v).count();
        edges.retain(|(i, j)| !removed.contains(i) && !removed.contains(j));
        for e in &mut edges {
            *e = (shift(e.0), shift(e.1));
        }
        for p in &mut pendant {
            *p = shift(*p);
        }
        n_vertices -= removed.len();
    }
    edges.sort_unstable();
    Ok(OligomerGraph::assemble(
        n_vertices,
        edges,
        m,
        Some(Arc::new(spec.clone())),
        offset,
        pendant,
    ))
}

fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return false;
    }
    let mut adj = vec![Vec::new(); n];
    for &(i, j) in edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                queue.push_back(v);
            }
        }
    }
    count == n
}
