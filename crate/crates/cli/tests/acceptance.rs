//! Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned
//! below. Exits nonzero if any criterion fails.

use std::f64::consts::PI;
use std::time::Instant;

use polyband::floquet::xi;
use polyband::{
    band_structure, band_widths, bloch_matrix, build_oligomer, catalog, catalog_entry, counting_function, eig_generalized,
    fe_exceptional_multiplicity, fe_gap, fe_oracle_discretized, gap_sweep, hmo_gap, polymer_gap, Model, ModelConstants64,
    MonomerSpec, OligomerGraph,
};
use polyband_cli::{main_with, Table};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PPF_EDGES: [f64; 12] = [-2.34, -2.0, -1.56, -1.41, -0.47, 0.0, 0.0, 1.0, 1.0, 1.41, 1.81, 2.56];
const PPF_EDGE_TOL: f64 = 0.01;
const PPF_EDGE_SECONDS: f64 = 1.0;

const COUNTING_M: usize = 200;
const FLAT_JUMP: f64 = 1.0;
const FLAT_JUMP_TOL: f64 = 0.02;
const NO_JUMP_MAX: f64 = 2.0 / 200.0;
const JUMP_WINDOW: f64 = 1e-8;
const COUNTING_SECONDS: f64 = 10.0;

const PA_MAX_M: usize = 100;
const PA_HMO_TOL: f64 = 1e-10;
const PA_FE_TOL: f64 = 1e-9;
const PA_SECONDS: f64 = 30.0;

const ORACLE_M: usize = 3;
const ORACLE_LEVELS: usize = 20;
const ORACLE_MIN_SIN: f64 = 0.1;
const ORACLE_COARSE_P: usize = 200;
const ORACLE_FINE_P: usize = 400;
const ORACLE_COARSE_TOL: f64 = 5e-3;
const ORACLE_TIGHTENING: f64 = 4.0;
const ORACLE_SECONDS: f64 = 60.0;

const EXCEPTIONAL_MAX_N: usize = 6;
const PA_CHAIN_LENGTHS: [usize; 6] = [1, 2, 3, 5, 8, 13];

const PARA_DROP: (f64, f64) = (1.3, 2.2);
const META_DROP: (f64, f64) = (0.25, 0.8);

const RANDOM_MONOMERS: usize = 50;
const RANDOM_MAX_ATOMS: usize = 8;
const K_SAMPLES: usize = 721;
const EDGE_TOL: f64 = 1e-8;
const XI_POINTS: usize = 20;
const XI_REL_TOL: f64 = 1e-9;

const REFERENCE_TOL: f64 = 1.2;
const MONOTONE_MAX_M: usize = 100;
const MONOTONE_SLACK: f64 = 1e-9;

type Check = Result<(bool, String), String>;

fn spec(name: &str) -> MonomerSpec {
    catalog_entry(name).unwrap()
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn criterion(id: usize, title: &str, seconds: Option<f64>, body: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed().as_secs_f64();
    let (mut pass, mut detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
    match seconds {
        Some(limit) => {
            detail.push_str(&format!("; {elapsed:.2} s (limit {limit} s)"));
            pass &= elapsed < limit;
        }
        None => detail.push_str(&format!("; {elapsed:.2} s")),
    }
    println!("{} [{id}] {title}: {detail}", if pass { "PASS" } else { "FAIL" });
    pass
}

fn ppf_band_edges() -> Check {
    let mut out = Vec::new();
    let code = main_with(["polyband", "bands", "PPf", "--model", "hmo"], &mut out);
    if code != 0 {
        return Err(format!("exit status {code}"));
    }
    let table = Table::from_csv(std::str::from_utf8(&out).map_err(fail)?).map_err(fail)?;
    let mut edges: Vec<f64> = table.numbers("lo").map_err(fail)?;
    edges.extend(table.numbers("hi").map_err(fail)?);
    edges.sort_by(f64::total_cmp);
    if edges.len() != PPF_EDGES.len() {
        return Ok((false, format!("{} edges, expected {}", edges.len(), PPF_EDGES.len())));
    }
    let dev = edges.iter().zip(PPF_EDGES).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    Ok((dev <= PPF_EDGE_TOL, format!("max |edge - reference| = {dev:.2e} (tol {PPF_EDGE_TOL})")))
}

fn ppf_flat_band() -> Check {
    let cf = counting_function::<f64>(&spec("PPf"), COUNTING_M, Model::Hmo, &[]).map_err(fail)?;
    let at_one = cf.jump(1.0, JUMP_WINDOW);
    let at_zero = cf.jump(0.0, JUMP_WINDOW);
    let pass = (at_one - FLAT_JUMP).abs() <= FLAT_JUMP_TOL && at_zero <= NO_JUMP_MAX;
    Ok((pass, format!("jump at 1 = {at_one} (want {FLAT_JUMP} ± {FLAT_JUMP_TOL}), jump at 0 = {at_zero} (max {NO_JUMP_MAX})")))
}

fn pa_closed_forms() -> Check {
    let consts = ModelConstants64::default();
    let pa = spec("PA");
    let mut hmo_dev: f64 = 0.0;
    let mut fe_dev: f64 = 0.0;
    for m in 1..=PA_MAX_M {
        let x = (2 * m + 1) as f64;
        let hmo_want = 4.0 * consts.beta_ev * (PI / (2.0 * x)).sin();
        let fe_want = consts.epsilon_ev * PI * PI / x;
        hmo_dev = hmo_dev.max((hmo_gap(&pa, m, &consts).map_err(fail)? - hmo_want).abs());
        fe_dev = fe_dev.max((fe_gap(&pa, m, &consts).map_err(fail)? - fe_want).abs());
    }
    Ok((
        hmo_dev <= PA_HMO_TOL && fe_dev <= PA_FE_TOL,
        format!("m <= {PA_MAX_M}: max HMO dev {hmo_dev:.2e} (tol {PA_HMO_TOL:e}), max FE dev {fe_dev:.2e} (tol {PA_FE_TOL:e})"),
    ))
}

/// Largest `|cos√μ − nearest eigenvalue of (C, V)|` over the discretized
/// levels away from `sin√μ = 0`.
fn identity_error(g: &OligomerGraph, generalized: &[f64], points: usize) -> Result<(f64, usize), String> {
    let levels = fe_oracle_discretized::<f64>(g, points, ORACLE_LEVELS).map_err(fail)?;
    let mut worst: f64 = 0.0;
    let mut used = 0;
    for &mu in levels.mu_values() {
        let root = mu.max(0.0).sqrt();
        if root.sin().abs() <= ORACLE_MIN_SIN {
            continue;
        }
        used += 1;
        let c = root.cos();
        let nearest = generalized.iter().map(|v| (v - c).abs()).fold(f64::INFINITY, f64::min);
        worst = worst.max(nearest);
    }
    Ok((worst, used))
}

fn fe_identity_cross_check() -> Check {
    let fine_tol = ORACLE_COARSE_TOL / ORACLE_TIGHTENING;
    let mut pass = true;
    let mut parts = Vec::new();
    for s in catalog() {
        let g = build_oligomer(&s, ORACLE_M, true).map_err(fail)?;
        let generalized = eig_generalized(&g.connectivity::<f64>(), &g.valency_diagonal::<f64>())
            .map_err(fail)?
            .into_values();
        let (coarse, used) = identity_error(&g, &generalized, ORACLE_COARSE_P)?;
        let (fine, _) = identity_error(&g, &generalized, ORACLE_FINE_P)?;
        pass &= used > 0 && coarse <= ORACLE_COARSE_TOL && fine <= fine_tol;
        parts.push(format!("{} {coarse:.1e}/{fine:.1e} ({used} levels)", s.name()));
    }
    Ok((
        pass,
        format!(
            "max error at P={ORACLE_COARSE_P}/P={ORACLE_FINE_P} (tol {ORACLE_COARSE_TOL:e}/{fine_tol:e}): {}",
            parts.join(", ")
        ),
    ))
}

/// Multiplicity of `(nπ)²` on a circle of length `L`: its levels are
/// `(2πj/L)²`, simple for `j = 0` and double otherwise, so `j = nL/2`.
fn circle_count(len: usize, n: usize) -> usize {
    match (n, (n * len) % 2) {
        (0, _) => 1,
        (_, 0) => 2,
        _ => 0,
    }
}

/// Multiplicity of `(nπ)²` on a Neumann interval of integer length: its
/// levels `(jπ/L)²` are all simple and `j = nL` is always one of them.
const INTERVAL_COUNT: usize = 1;

fn exceptional_multiplicities() -> Check {
    let benzene = OligomerGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).map_err(fail)?;
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for n in 0..=EXCEPTIONAL_MAX_N {
        let got = fe_exceptional_multiplicity(&benzene, n).map_err(fail)?;
        checked += 1;
        if got != circle_count(6, n) {
            mismatches.push(format!("benzene n={n}: {got} vs {}", circle_count(6, n)));
        }
    }
    for m in PA_CHAIN_LENGTHS {
        let g = build_oligomer(&spec("PA"), m, true).map_err(fail)?;
        for n in 0..=EXCEPTIONAL_MAX_N {
            let got = fe_exceptional_multiplicity(&g, n).map_err(fail)?;
            checked += 1;
            if got != INTERVAL_COUNT {
                mismatches.push(format!("PA m={m} n={n}: {got} vs {}", INTERVAL_COUNT));
            }
        }
    }
    Ok((
        mismatches.is_empty(),
        if mismatches.is_empty() {
            format!("{checked} multiplicities (benzene and PA m in {PA_CHAIN_LENGTHS:?}, n <= {EXCEPTIONAL_MAX_N}) exact")
        } else {
            mismatches.join("; ")
        },
    ))
}

fn para_meta_trends() -> Check {
    let consts = ModelConstants64::default();
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, (lo, hi)) in [("PPP", PARA_DROP), ("PPV", PARA_DROP), ("PMP", META_DROP), ("PmPV", META_DROP)] {
        let s = spec(name);
        let drop = hmo_gap(&s, 2, &consts).map_err(fail)? - polymer_gap(&s, Model::Hmo, &consts).map_err(fail)?;
        pass &= (lo..=hi).contains(&drop);
        parts.push(format!("{name} {drop:.3} in [{lo}, {hi}]"));
    }
    for (para, meta) in [("PPP", "PMP"), ("PPV", "PmPV")] {
        let (pv, pc) = band_widths(&spec(para), Model::Hmo, &consts).map_err(fail)?;
        let (mv, mc) = band_widths(&spec(meta), Model::Hmo, &consts).map_err(fail)?;
        pass &= pv > mv && pc > mc;
        parts.push(format!("widths {para} {pv:.2}/{pc:.2} vs {meta} {mv:.2}/{mc:.2} eV"));
    }
    Ok((pass, format!("HMO gap drop m=2 to polymer: {}", parts.join(", "))))
}

/// Connected monomer with at most `max_atoms` atoms and two distinct links.
fn random_monomer(rng: &mut ChaCha8Rng, index: usize, max_atoms: usize) -> MonomerSpec {
    loop {
        let n = rng.gen_range(2..=max_atoms);
        let mut bonds: Vec<[usize; 2]> = (2..=n).map(|v| [rng.gen_range(1..v), v]).collect();
        let extra = rng.gen_range(0..=n);
        for _ in 0..extra {
            let (a, b) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
            let bond = [a.min(b), a.max(b)];
            if a != b && !bonds.iter().any(|x| [x[0].min(x[1]), x[0].max(x[1])] == bond) {
                bonds.push(bond);
            }
        }
        let link_b = rng.gen_range(1..=n);
        let link_e = rng.gen_range(1..=n);
        if let Ok(s) = MonomerSpec::from_labels(&format!("random{index}"), n, &bonds, link_b, link_e, &[], n / 2) {
            return s;
        }
    }
}

fn band_edge_theorem() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut specs = catalog();
    specs.extend((0..RANDOM_MONOMERS).map(|i| random_monomer(&mut rng, i, RANDOM_MAX_ATOMS)));
    let mut edge_dev: f64 = 0.0;
    let mut xi_dev: f64 = 0.0;
    for s in &specs {
        let bs = band_structure::<f64>(s, K_SAMPLES).map_err(fail)?;
        let mut ends = bloch_matrix(s, 0.0).map_err(fail)?.eigenvalues().map_err(fail)?;
        ends.extend(bloch_matrix(s, PI).map_err(fail)?.eigenvalues().map_err(fail)?);
        let bands = bs.dispersion()[0].len();
        for r in 0..bands {
            let column = bs.dispersion().iter().map(|row| row[r]);
            let (lo, hi) = column.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
            for x in [lo, hi] {
                let d = ends.iter().map(|e| (e - x).abs()).fold(f64::INFINITY, f64::min);
                edge_dev = edge_dev.max(d);
            }
        }
        for _ in 0..XI_POINTS {
            let k = rng.gen_range(-PI..=PI);
            let lambda = rng.gen_range(-3.5..=3.5);
            let (p0, p1) = polyband::xi_decomposition(s, lambda).map_err(fail)?;
            let z = xi(s, k, lambda).map_err(fail)?;
            let scale = p0.abs() + p1.abs();
            let dev = (z - (p0 * k.cos() + p1)).norm() / scale.max(f64::MIN_POSITIVE);
            xi_dev = xi_dev.max(dev);
        }
    }
    Ok((
        edge_dev <= EDGE_TOL && xi_dev <= XI_REL_TOL,
        format!(
            "{} monomers: max band-extremum distance to spec(C+F(0)) u spec(C+F(pi)) {edge_dev:.1e} (tol {EDGE_TOL:e}), \
             max relative xi residual {xi_dev:.1e} (tol {XI_REL_TOL:e})",
            specs.len()
        ),
    ))
}

fn reference_gaps() -> Result<Vec<(String, usize, f64)>, String> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/reference_gaps.csv");
    let table = Table::from_csv(&std::fs::read_to_string(path).map_err(fail)?).map_err(fail)?;
    let (mono, m) = (table.column("monomer").ok_or("monomer column")?, table.column("m").ok_or("m column")?);
    let gaps = table.numbers("gap_eV").map_err(fail)?;
    table
        .rows
        .iter()
        .zip(gaps)
        .map(|(r, g)| Ok((r[mono].clone(), r[m].parse().map_err(fail)?, g)))
        .collect()
}

fn magnitudes_and_monotonicity() -> Check {
    let consts = ModelConstants64::default();
    let reference = reference_gaps()?;
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, m) in [("PPP", 3), ("PPV", 3)] {
        let want = reference
            .iter()
            .find(|r| r.0 == name && r.1 == m)
            .ok_or_else(|| format!("no reference for {name}{m}"))?
            .2;
        let s = spec(name);
        let hmo = hmo_gap(&s, m, &consts).map_err(fail)?;
        let fe = fe_gap(&s, m, &consts).map_err(fail)?;
        pass &= (hmo - want).abs() <= REFERENCE_TOL && (fe - want).abs() <= REFERENCE_TOL;
        parts.push(format!("{name}{m} HMO {hmo:.2} FE {fe:.2} vs {want} eV"));
    }
    let m_list: Vec<usize> = (1..=MONOTONE_MAX_M).collect();
    let mut violations = Vec::new();
    for s in catalog() {
        for model in [Model::Hmo, Model::Fe] {
            let series = gap_sweep(&s, &m_list, model, &consts).map_err(fail)?;
            for w in series.entries.windows(2) {
                if w[1].1 > w[0].1 + MONOTONE_SLACK {
                    violations.push(format!("{} {model:?} m={}", s.name(), w[1].0));
                }
            }
        }
    }
    pass &= violations.is_empty();
    parts.push(if violations.is_empty() {
        format!("all catalog gap series nonincreasing for m <= {MONOTONE_MAX_M} (both models)")
    } else {
        format!("increases at {}", violations.join(", "))
    });
    Ok((pass, format!("within {REFERENCE_TOL} eV: {}", parts.join("; "))))
}

fn main() {
    let results = [
        criterion(1, "PPf band edges", Some(PPF_EDGE_SECONDS), ppf_band_edges),
        criterion(2, "PPf flat band and touching bands", Some(COUNTING_SECONDS), ppf_flat_band),
        criterion(3, "PA closed forms", Some(PA_SECONDS), pa_closed_forms),
        criterion(4, "FE identity cross-check", Some(ORACLE_SECONDS), fe_identity_cross_check),
        criterion(5, "exceptional multiplicities", None, exceptional_multiplicities),
        criterion(6, "para/meta trends", None, para_meta_trends),
        criterion(7, "band-edge theorem property suite", None, band_edge_theorem),
        criterion(8, "reference magnitudes and monotone gaps", None, magnitudes_and_monotonicity),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
